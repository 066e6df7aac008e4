//! Almost-convexity profiles, fellow-traveller searches and the parallel
//! stable-letter check, all driven by a prebuilt [`Ball`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::base_groups::BaseGroup;
use crate::cayley::{distance, Ball, GroupOracle};
use crate::error::{Error, Result};
use crate::hnn::{HnnGroup, NormalForm};
use crate::words::{enumerate_words, Alphabet, Letter, Word};

const NONE: u32 = u32::MAX;
const BATCH: usize = 1 << 14;
const MAX_LISTED: usize = 64;

/// Synchronous fellow-travelling distance: `max_t d(w1(t), w2(t))`, each path
/// resting at its endpoint once exhausted.
pub fn fellow_distance<G: GroupOracle>(oracle: &G, ball: &Ball<G::Key>, w1: &Word, w2: &Word) -> Result<u32> {
    let n = w1.len().max(w2.len());
    let (mut p1, mut p2) = (oracle.identity(), oracle.identity());
    let mut best = 0;
    for t in 0..=n {
        if t > 0 {
            if let Some(&l) = w1.letters().get(t - 1) {
                p1 = oracle.mul_letter(&p1, l);
            }
            if let Some(&l) = w2.letters().get(t - 1) {
                p2 = oracle.mul_letter(&p2, l);
            }
        }
        best = best.max(distance(oracle, ball, &p1, &p2)?);
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// almost convexity

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcWitness {
    pub g: String,
    pub g_prime: String,
    /// Short word with `g · gamma = g′`.
    pub gamma: String,
    /// Shortest path from `g` to `g′` inside `B(N)`.
    pub path: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcRecord {
    pub n: u32,
    pub sphere_size: usize,
    /// Unordered pairs in `S(N)` at distance at most 2.
    pub pairs: u64,
    pub c: u32,
    pub witness: Option<AcWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcReport {
    pub n_max: u32,
    pub records: Vec<AcRecord>,
    pub max_c: u32,
}

struct BfsScratch {
    stamp: Vec<u32>,
    depth: Vec<u32>,
    parent: Vec<(u32, Letter)>,
    generation: u32,
    queue: Vec<u32>,
}

impl BfsScratch {
    fn new(n: usize) -> Self {
        BfsScratch {
            stamp: vec![0; n],
            depth: vec![0; n],
            parent: vec![(NONE, Letter::from_code(0)); n],
            generation: 0,
            queue: Vec::new(),
        }
    }

    /// Breadth-first search from `from` over ids `< limit` until every target
    /// is reached. Depths are left in `self.depth`.
    fn search<K: Clone + Eq + std::hash::Hash>(
        &mut self,
        ball: &Ball<K>,
        from: usize,
        limit: usize,
        targets: &[usize],
    ) {
        self.generation += 1;
        let generation = self.generation;
        self.queue.clear();
        self.queue.push(from as u32);
        self.stamp[from] = generation;
        self.depth[from] = 0;
        let mut missing = targets.len();
        let mut head = 0;
        while head < self.queue.len() && missing > 0 {
            let v = self.queue[head] as usize;
            head += 1;
            for code in 0..ball.num_letters() {
                let l = Letter::from_code(code);
                let Some(u) = ball.neighbor(v, l) else { continue };
                if u >= limit || self.stamp[u] == generation {
                    continue;
                }
                self.stamp[u] = generation;
                self.depth[u] = self.depth[v] + 1;
                self.parent[u] = (v as u32, l);
                self.queue.push(u as u32);
                if targets.contains(&u) {
                    missing -= 1;
                }
            }
        }
        debug_assert_eq!(missing, 0, "sphere elements connect through the identity");
    }

    fn path_to(&self, from: usize, to: usize) -> Word {
        let mut letters = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, l) = self.parent[cur];
            letters.push(l);
            cur = p as usize;
        }
        letters.reverse();
        Word::from_letters(letters)
    }
}

/// Worst pair for one `g ∈ S(N)`: `(value, g′, gamma, pair count)` with the
/// count covering only partners `g′ > g`.
fn ac_at<K: Clone + Eq + std::hash::Hash>(
    ball: &Ball<K>,
    g: usize,
    n: u32,
    scratch: &mut BfsScratch,
) -> (u32, usize, Word, u64) {
    let inner = ball.ball_len(n);
    let sphere = ball.sphere(n);
    let nl = ball.num_letters();
    // (g′, in-ball value if ≤ 2 found directly, gamma)
    let mut found: Vec<(usize, Option<u32>, Word)> = Vec::new();
    let note = |found: &mut Vec<(usize, Option<u32>, Word)>, gp: usize, value: Option<u32>, gamma: Word| match found
        .iter_mut()
        .find(|e| e.0 == gp)
    {
        Some(e) => {
            if value.is_some() && (e.1.is_none() || value < e.1) {
                e.1 = value;
                e.2 = gamma;
            }
        }
        None => found.push((gp, value, gamma)),
    };
    for cx in 0..nl {
        let x = Letter::from_code(cx);
        let Some(m) = ball.neighbor(g, x) else { continue };
        if sphere.contains(&m) {
            note(&mut found, m, Some(1), Word::from_letters(vec![x]));
        }
        for cy in 0..nl {
            let y = Letter::from_code(cy);
            let Some(gp) = ball.neighbor(m, y) else { continue };
            if gp == g || !sphere.contains(&gp) {
                continue;
            }
            let value = (m < inner).then_some(2);
            note(&mut found, gp, value, Word::from_letters(vec![x, y]));
        }
    }
    let hard: Vec<usize> = found.iter().filter(|e| e.1.is_none()).map(|e| e.0).collect();
    if !hard.is_empty() {
        scratch.search(ball, g, inner, &hard);
        for e in found.iter_mut().filter(|e| e.1.is_none()) {
            e.1 = Some(scratch.depth[e.0]);
        }
    }
    let pairs = found.iter().filter(|e| e.0 > g).count() as u64;
    let mut best: Option<(u32, usize, Word)> = None;
    for (gp, value, gamma) in found {
        let value = value.expect("all targets resolved");
        let better = match &best {
            None => true,
            Some((bv, bgp, _)) => value > *bv || (value == *bv && gp < *bgp),
        };
        if better {
            best = Some((value, gp, gamma));
        }
    }
    match best {
        Some((v, gp, gamma)) => (v, gp, gamma, pairs),
        None => (0, usize::MAX, Word::empty(), 0),
    }
}

/// `C(N)` for `1 ≤ N ≤ n_max`: the longest shortest path inside `B(N)`
/// between elements of `S(N)` at distance at most 2.
pub fn ac_profile<G: GroupOracle>(oracle: &G, ball: &Ball<G::Key>, n_max: u32) -> Result<AcReport> {
    if ball.radius() < n_max + 1 {
        return Err(Error::RadiusTooSmall { needed: n_max + 1, have: ball.radius() });
    }
    let alphabet = oracle.alphabet();
    let mut records = Vec::new();
    for n in 1..=n_max {
        let inner = ball.ball_len(n);
        let results: Vec<(u32, usize, Word, u64)> =
            ball.sphere(n).into_par_iter().map_init(|| BfsScratch::new(inner), |s, g| ac_at(ball, g, n, s)).collect();
        let mut c = 0;
        let mut pairs = 0;
        let mut arg: Option<(usize, usize, Word)> = None;
        for (offset, (v, gp, gamma, p)) in results.into_iter().enumerate() {
            pairs += p;
            if gp != usize::MAX && (arg.is_none() || v > c) {
                c = v;
                arg = Some((ball.sphere(n).start + offset, gp, gamma));
            }
        }
        let witness = arg.map(|(g, gp, gamma)| {
            let mut s = BfsScratch::new(inner);
            s.search(ball, g, inner, &[gp]);
            let path = s.path_to(g, gp);
            debug_assert_eq!(path.len() as u32, c);
            AcWitness {
                g: alphabet.format(&ball.geodesic(g)),
                g_prime: alphabet.format(&ball.geodesic(gp)),
                gamma: alphabet.format(&gamma),
                path: alphabet.format(&path),
            }
        });
        records.push(AcRecord { n, sphere_size: ball.sphere(n).len(), pairs, c, witness });
    }
    let max_c = records.iter().map(|r| r.c).max().unwrap_or(0);
    Ok(AcReport { n_max, records, max_c })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub label: String,
    pub value: u32,
    pub holds: bool,
}

impl BoundCheck {
    fn new(label: &str, value: u32, max_c: u32) -> Self {
        BoundCheck { label: label.to_string(), value, holds: max_c <= value }
    }
}

/// `C ≤ 3k` for a group whose fellow-traveller constant is `k`.
pub fn fftp_bound(k: u32, max_c: u32) -> BoundCheck {
    BoundCheck::new("3k", 3 * k, max_c)
}

/// Candidate constants for an isometric extension over a base with
/// fellow-traveller constant `k`, where `max_u` is the longest associated
/// generator. The first entry is the conservative one that is tested.
pub fn hnn_bounds(k: u32, max_u: u32, max_c: u32) -> Vec<BoundCheck> {
    let core = 6 * k + 2;
    vec![
        BoundCheck::new("max{6k+2, 4max|u|}", core.max(4 * max_u), max_c),
        BoundCheck::new("max{6k+2, 2max|u|}", core.max(2 * max_u), max_c),
        BoundCheck::new("max{6k+2, max|u|}", core.max(max_u), max_c),
    ]
}

// ---------------------------------------------------------------------------
// fellow-traveller search

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WordSet {
    /// Every word over the signed generators.
    All,
    /// Freely reduced words only.
    Reduced,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FftpWitness {
    pub word: String,
    pub companion: String,
    pub distance: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Falsifier {
    /// This word is not `k`-fellow travelled by any shorter word.
    pub k: u32,
    pub word: String,
    pub minimum: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FftpReport {
    pub max_len: usize,
    pub k_cap: u32,
    pub mode: SearchMode,
    pub words: WordSet,
    pub tested: u64,
    pub non_geodesic: u64,
    /// Largest per-word minimum over verified words (0 if none).
    pub k_min: u32,
    /// `histogram[k]` counts non-geodesic words whose best companion is at distance `k`.
    pub histogram: Vec<u64>,
    /// First word (in test order) attaining each per-word minimum.
    pub exemplars: Vec<FftpWitness>,
    pub falsifiers: Vec<Falsifier>,
    pub unverified_count: u64,
    pub unverified: Vec<String>,
    /// Every tested non-geodesic word with its companion, when requested.
    pub pairs: Option<Vec<FftpWitness>>,
}

impl FftpReport {
    pub fn verified(&self) -> bool {
        self.unverified_count == 0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FftpOptions {
    pub max_len: usize,
    pub k_cap: u32,
    pub mode: SearchMode,
    pub words: WordSet,
    pub keep_pairs: bool,
}

impl FftpOptions {
    pub fn exhaustive(max_len: usize, k_cap: u32) -> Self {
        FftpOptions { max_len, k_cap, mode: SearchMode::Exhaustive, words: WordSet::All, keep_pairs: false }
    }

    pub fn required_radius(&self) -> u32 {
        (self.max_len as u32).max(self.k_cap + 1)
    }
}

enum Outcome {
    Geodesic,
    Found { k: u32, companion: Word },
    Unverified,
}

struct FftpTables {
    nl: usize,
    /// `left[c · len + q]` is the id of `letter(c) · q`.
    left: Vec<u32>,
    len: usize,
    /// `|B(k)|` for `k ≤ k_cap`.
    limits: Vec<usize>,
}

impl FftpTables {
    fn new<G: GroupOracle>(oracle: &G, ball: &Ball<G::Key>, k_cap: u32) -> Self {
        let nl = ball.num_letters();
        let len = ball.len();
        let letter_keys: Vec<G::Key> = (0..nl).map(|c| oracle.letter_key(Letter::from_code(c))).collect();
        let rows: Vec<Vec<u32>> = (0..nl)
            .into_par_iter()
            .map(|c| {
                (0..len)
                    .map(|q| {
                        let key = oracle.multiply(&letter_keys[c], ball.key(q));
                        ball.id_of(&key).map_or(NONE, |j| j as u32)
                    })
                    .collect()
            })
            .collect();
        let limits = (0..=k_cap).map(|k| ball.ball_len(k)).collect();
        FftpTables { nl, left: rows.concat(), len, limits }
    }

    #[inline]
    fn left(&self, l: Letter, q: usize) -> u32 {
        self.left[l.code() * self.len + q]
    }
}

struct DpScratch {
    /// Per layer: stamps and parent links indexed by state id.
    stamp: Vec<Vec<u32>>,
    parent: Vec<Vec<(u32, Letter)>>,
    layers: Vec<Vec<u32>>,
    generation: u32,
}

impl DpScratch {
    fn new(layers: usize, states: usize) -> Self {
        DpScratch {
            stamp: vec![vec![0; states]; layers],
            parent: vec![vec![(NONE, Letter::from_code(0)); states]; layers],
            layers: vec![Vec::new(); layers],
            generation: 0,
        }
    }
}

/// Is some shorter word with the same endpoint synchronously `k`-fellow
/// travelling with `w`? States are `w(t)⁻¹ v(t)`; `suffix[m] = w(m)⁻¹ w̄`.
fn companion_within<K: Clone + Eq + std::hash::Hash>(
    ball: &Ball<K>,
    tables: &FftpTables,
    w: &Word,
    suffix: &[u32],
    tail_max: &[u32],
    k: u32,
    s: &mut DpScratch,
) -> Option<Word> {
    let n = w.len();
    let limit = tables.limits[k as usize];
    s.generation += 1;
    let generation = s.generation;
    s.layers[0].clear();
    s.layers[0].push(0);
    s.stamp[0][0] = generation;
    for t in 0..n {
        // v of length t ends here
        let target = suffix[t] as usize;
        if tail_max[t] <= k && target < limit && s.stamp[t][target] == generation {
            let mut letters = Vec::with_capacity(t);
            let mut q = target;
            for layer in (1..=t).rev() {
                let (p, l) = s.parent[layer][q];
                letters.push(l);
                q = p as usize;
            }
            letters.reverse();
            return Some(Word::from_letters(letters));
        }
        if t + 1 == n {
            break;
        }
        let a_inv = w.letters()[t].inverse();
        let (before, after) = s.layers.split_at_mut(t + 1);
        let (cur, next) = (&before[t], &mut after[0]);
        next.clear();
        for &q in cur.iter() {
            for code in 0..tables.nl {
                let x = Letter::from_code(code);
                let Some(y) = ball.neighbor(q as usize, x) else { continue };
                let z = tables.left(a_inv, y);
                if z == NONE || z as usize >= limit || s.stamp[t + 1][z as usize] == generation {
                    continue;
                }
                s.stamp[t + 1][z as usize] = generation;
                s.parent[t + 1][z as usize] = (q, x);
                next.push(z);
            }
        }
        if next.is_empty() {
            return None;
        }
    }
    None
}

fn classify<K: Clone + Eq + std::hash::Hash>(
    ball: &Ball<K>,
    tables: &FftpTables,
    w: &Word,
    k_cap: u32,
    s: &mut DpScratch,
) -> Outcome {
    let n = w.len();
    let end = ball.walk_from(0, w).expect("ball covers max_len");
    if ball.dist(end) as usize == n {
        return Outcome::Geodesic;
    }
    let mut suffix = vec![0u32; n + 1];
    for m in (0..n).rev() {
        suffix[m] = tables.left(w.letters()[m], suffix[m + 1] as usize);
        debug_assert_ne!(suffix[m], NONE);
    }
    let mut tail_max = vec![0u32; n + 1];
    for m in (0..n).rev() {
        tail_max[m] = tail_max[m + 1].max(ball.dist(suffix[m] as usize));
    }
    for k in 0..=k_cap {
        if let Some(companion) = companion_within(ball, tables, w, &suffix, &tail_max, k, s) {
            return Outcome::Found { k, companion };
        }
    }
    Outcome::Unverified
}

fn sample_words(nl: usize, max_len: usize, count: usize, seed: u64, reduced: bool) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len.max(1));
            let mut letters: Vec<Letter> = Vec::with_capacity(len);
            while letters.len() < len {
                let l = Letter::from_code(rng.gen_range(0..nl));
                if reduced && letters.last() == Some(&l.inverse()) {
                    continue;
                }
                letters.push(l);
            }
            Word::from_letters(letters)
        })
        .collect()
}

/// Searches for the smallest `k` such that every tested non-geodesic word of
/// length at most `max_len` is synchronously `k`-fellow travelled by a
/// shorter word with the same endpoint.
pub fn fftp_search<G: GroupOracle>(oracle: &G, ball: &Ball<G::Key>, opts: &FftpOptions) -> Result<FftpReport> {
    let needed = opts.required_radius();
    if ball.radius() < needed {
        return Err(Error::RadiusTooSmall { needed, have: ball.radius() });
    }
    let alphabet = oracle.alphabet();
    let tables = FftpTables::new(oracle, ball, opts.k_cap);
    let states = tables.limits[opts.k_cap as usize];
    let reduced = opts.words == WordSet::Reduced;

    let mut report = FftpReport {
        max_len: opts.max_len,
        k_cap: opts.k_cap,
        mode: opts.mode,
        words: opts.words,
        tested: 0,
        non_geodesic: 0,
        k_min: 0,
        histogram: vec![0; opts.k_cap as usize + 1],
        exemplars: Vec::new(),
        falsifiers: Vec::new(),
        unverified_count: 0,
        unverified: Vec::new(),
        pairs: opts.keep_pairs.then(Vec::new),
    };
    let mut first_of: Vec<Option<FftpWitness>> = vec![None; opts.k_cap as usize + 1];

    let mut process = |batch: &[Word]| {
        let outcomes: Vec<Outcome> = batch
            .par_iter()
            .map_init(|| DpScratch::new(opts.max_len + 1, states), |s, w| classify(ball, &tables, w, opts.k_cap, s))
            .collect();
        for (w, outcome) in batch.iter().zip(outcomes) {
            report.tested += 1;
            match outcome {
                Outcome::Geodesic => {}
                Outcome::Found { k, companion } => {
                    report.non_geodesic += 1;
                    report.histogram[k as usize] += 1;
                    report.k_min = report.k_min.max(k);
                    let witness =
                        FftpWitness { word: alphabet.format(w), companion: alphabet.format(&companion), distance: k };
                    if let Some(pairs) = report.pairs.as_mut() {
                        pairs.push(witness.clone());
                    }
                    first_of[k as usize].get_or_insert(witness);
                }
                Outcome::Unverified => {
                    report.non_geodesic += 1;
                    report.unverified_count += 1;
                    if report.unverified.len() < MAX_LISTED {
                        report.unverified.push(alphabet.format(w));
                    }
                }
            }
        }
    };

    match opts.mode {
        SearchMode::Exhaustive => {
            let mut words = enumerate_words(alphabet.len(), opts.max_len, reduced);
            loop {
                let batch: Vec<Word> = words.by_ref().take(BATCH).collect();
                if batch.is_empty() {
                    break;
                }
                process(&batch);
            }
        }
        SearchMode::Sampled { count, seed } => {
            let words = sample_words(alphabet.num_letters(), opts.max_len, count, seed, reduced);
            for batch in words.chunks(BATCH) {
                process(batch);
            }
        }
    }

    report.exemplars = first_of.iter().flatten().cloned().collect();
    for k in 0..report.k_min {
        // first exemplar whose minimum exceeds k
        if let Some(e) = report.exemplars.iter().find(|e| e.distance > k) {
            report.falsifiers.push(Falsifier { k, word: e.word.clone(), minimum: e.distance });
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// parallel stable-letter structure

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureViolation {
    pub element: String,
    pub geodesic: String,
    pub signature: String,
    pub other_geodesic: String,
    pub other_signature: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureReport {
    pub radius: u32,
    pub elements: usize,
    pub links_checked: u64,
    pub violation_count: u64,
    pub violations: Vec<SignatureViolation>,
    /// Elements whose normal-form signature differs from that of their geodesics.
    pub normal_form_mismatches: u64,
}

impl SignatureReport {
    pub fn pass(&self) -> bool {
        self.violation_count == 0 && self.normal_form_mismatches == 0
    }
}

fn signature_of(alphabet: &Alphabet, w: &Word) -> Word {
    Word::from_letters(w.letters().iter().copied().filter(|&l| alphabet.is_stable(l)).collect())
}

/// Checks that every geodesic word of every element in the ball carries the
/// same sequence of stable letters, and that it matches the normal form.
/// Links checked, first violating link, normal-form mismatch.
type LinkCheck = (u64, Option<(usize, usize, Letter)>, bool);

pub fn verify_parallel_signatures<B: BaseGroup>(
    group: &HnnGroup<B>,
    ball: &Ball<NormalForm<B::Key>>,
) -> SignatureReport {
    let alphabet = group.alphabet();
    // signature trie: node 0 is the empty signature
    let mut nodes: Vec<(u32, Letter)> = vec![(NONE, Letter::from_code(0))];
    let mut children: FxHashMap<(u32, Letter), u32> = FxHashMap::default();
    let mut sig = vec![0u32; ball.len()];
    for id in 1..ball.len() {
        let (p, l) = ball.geodesic_parent(id).expect("non-identity has a parent");
        sig[id] = if alphabet.is_stable(l) {
            let next = nodes.len() as u32;
            *children.entry((sig[p], l)).or_insert_with(|| {
                nodes.push((sig[p], l));
                next
            })
        } else {
            sig[p]
        };
    }
    let materialize = |mut node: u32| {
        let mut letters = Vec::new();
        while node != 0 {
            let (p, l) = nodes[node as usize];
            letters.push(l);
            node = p;
        }
        letters.reverse();
        letters
    };

    let checks: Vec<LinkCheck> = (0..ball.len())
        .into_par_iter()
        .map(|id| {
            let mut links = 0;
            let mut bad = None;
            for (p, l) in ball.predecessors(id) {
                links += 1;
                let via = if alphabet.is_stable(l) { children.get(&(sig[p], l)).copied() } else { Some(sig[p]) };
                if via != Some(sig[id]) && bad.is_none() {
                    bad = Some((id, p, l));
                }
            }
            let nf_ok = ball.key(id).stable_letter_signature() == materialize(sig[id]).as_slice();
            (links, bad, nf_ok)
        })
        .collect();

    let mut report = SignatureReport {
        radius: ball.radius(),
        elements: ball.len(),
        links_checked: 0,
        violation_count: 0,
        violations: Vec::new(),
        normal_form_mismatches: 0,
    };
    for (links, bad, nf_ok) in checks {
        report.links_checked += links;
        report.normal_form_mismatches += u64::from(!nf_ok);
        if let Some((id, p, l)) = bad {
            report.violation_count += 1;
            if report.violations.len() < MAX_LISTED {
                let g = ball.geodesic(id);
                let other = ball.geodesic(p).push(l);
                report.violations.push(SignatureViolation {
                    element: group.format_key(ball.key(id)),
                    geodesic: alphabet.format(&g),
                    signature: alphabet.format(&signature_of(alphabet, &g)),
                    other_geodesic: alphabet.format(&other),
                    other_signature: alphabet.format(&signature_of(alphabet, &other)),
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_groups::{AbelianGroup, FreeGroup};
    use crate::cayley::build_ball;

    fn z2(names: &[&str], relators: &[&str]) -> AbelianGroup {
        let al = Alphabet::base(names).unwrap();
        let rels = relators.iter().map(|r| al.parse(r).unwrap()).collect();
        AbelianGroup::from_presentation(al, rels).unwrap()
    }

    fn z2_ab() -> AbelianGroup {
        z2(&["a", "b"], &[])
    }

    fn z2_abcd() -> AbelianGroup {
        z2(&["a", "b", "c", "d"], &["abc'", "bac'", "ccd'"])
    }

    #[test]
    fn fellow_distance_examples() {
        let g = z2_ab();
        let ball = build_ball(&g, 4, 1 << 20).unwrap();
        let w = |s| g.alphabet().parse(s).unwrap();
        assert_eq!(fellow_distance(&g, &ball, &w("ab"), &w("ab")).unwrap(), 0);
        assert_eq!(fellow_distance(&g, &ball, &w("ab"), &w("ba")).unwrap(), 2);
        assert_eq!(fellow_distance(&g, &ball, &w("aab"), &w("b")).unwrap(), 3);
        let h = z2_abcd();
        let ball = build_ball(&h, 4, 1 << 20).unwrap();
        let w = |s| h.alphabet().parse(s).unwrap();
        // a⁻¹b = (−1, 1) has length 2 with {a, b, c, d} as well
        assert_eq!(fellow_distance(&h, &ball, &w("ab"), &w("ba")).unwrap(), 2);
        assert_eq!(fellow_distance(&h, &ball, &w("ab"), &w("c")).unwrap(), 1);
    }

    #[test]
    fn fellow_distance_out_of_ball() {
        let g = z2_ab();
        let ball = build_ball(&g, 1, 1 << 20).unwrap();
        let w = |s| g.alphabet().parse(s).unwrap();
        assert!(matches!(fellow_distance(&g, &ball, &w("aaa"), &w("a'a'a'")), Err(Error::OutOfBall { .. })));
    }

    /// In-ball distance between sphere elements by plain BFS over all pairs.
    fn brute_c<K: Clone + Eq + std::hash::Hash>(ball: &Ball<K>, n: u32) -> u32 {
        let inner = ball.ball_len(n);
        let mut c = 0;
        for g in ball.sphere(n) {
            // BFS in the whole ball radius n+1 for Cayley distance, and in B(n)
            let bfs = |limit: usize| {
                let mut d = vec![u32::MAX; ball.len()];
                d[g] = 0;
                let mut q = std::collections::VecDeque::from([g]);
                while let Some(v) = q.pop_front() {
                    for code in 0..ball.num_letters() {
                        if let Some(u) = ball.neighbor(v, Letter::from_code(code)) {
                            if u < limit && d[u] == u32::MAX {
                                d[u] = d[v] + 1;
                                q.push_back(u);
                            }
                        }
                    }
                }
                d
            };
            let full = bfs(ball.len());
            let inside = bfs(inner);
            for gp in ball.sphere(n) {
                if gp != g && full[gp] <= 2 {
                    c = c.max(inside[gp]);
                }
            }
        }
        c
    }

    #[test]
    fn ac_profile_matches_brute_force() {
        let g = z2_ab();
        let ball = build_ball(&g, 6, 1 << 20).unwrap();
        let r = ac_profile(&g, &ball, 5).unwrap();
        for rec in &r.records {
            assert_eq!(rec.c, brute_c(&ball, rec.n), "N={}", rec.n);
            assert!(rec.c <= 2 * rec.n);
        }
        let f = FreeGroup::new(Alphabet::base(&["a", "b"]).unwrap());
        let ball = build_ball(&f, 5, 1 << 20).unwrap();
        let r = ac_profile(&f, &ball, 4).unwrap();
        for rec in &r.records {
            assert_eq!(rec.c, brute_c(&ball, rec.n), "N={}", rec.n);
        }
    }

    #[test]
    fn ac_witness_paths_stay_in_ball() {
        let g = z2_abcd();
        let ball = build_ball(&g, 6, 1 << 20).unwrap();
        let r = ac_profile(&g, &ball, 5).unwrap();
        assert!(r.records[0].c <= 2);
        for rec in &r.records {
            let Some(w) = &rec.witness else { continue };
            let al = g.alphabet();
            let start = ball.walk_from(0, &al.parse(&w.g).unwrap()).unwrap();
            let path = al.parse(&w.path).unwrap();
            assert_eq!(path.len() as u32, rec.c);
            let mut cur = start;
            for &l in path.letters() {
                cur = ball.neighbor(cur, l).unwrap();
                assert!(ball.dist(cur) <= rec.n);
            }
            assert_eq!(cur, ball.walk_from(0, &al.parse(&w.g_prime).unwrap()).unwrap());
        }
    }

    #[test]
    fn bounds() {
        assert!(fftp_bound(1, 3).holds);
        assert!(!fftp_bound(1, 4).holds);
        let b = hnn_bounds(1, 3, 10);
        assert_eq!(b.iter().map(|x| x.value).collect::<Vec<_>>(), [12, 8, 8]);
        assert_eq!(b.iter().map(|x| x.holds).collect::<Vec<_>>(), [true, false, false]);
    }

    #[test]
    fn ac_needs_larger_ball() {
        let g = z2_ab();
        let ball = build_ball(&g, 3, 1 << 20).unwrap();
        assert_eq!(ac_profile(&g, &ball, 3), Err(Error::RadiusTooSmall { needed: 4, have: 3 }));
    }

    /// Per-word minimum by enumerating every shorter word with the same endpoint.
    fn brute_min<G: GroupOracle>(g: &G, ball: &Ball<G::Key>, w: &Word) -> Option<u32> {
        let target = g.evaluate(w);
        enumerate_words(g.alphabet().len(), w.len() - 1, false)
            .filter(|v| g.evaluate(v) == target)
            .filter_map(|v| fellow_distance(g, ball, w, &v).ok())
            .min()
    }

    fn check_against_brute_force<G: GroupOracle>(g: &G, max_len: usize, k_cap: u32) {
        let ball = build_ball(g, max_len as u32 + k_cap + 1, 1 << 22).unwrap();
        let opts = FftpOptions { keep_pairs: true, ..FftpOptions::exhaustive(max_len, k_cap) };
        let report = fftp_search(g, &ball, &opts).unwrap();
        let pairs = report.pairs.as_ref().unwrap();
        let mut expected_max = 0;
        let mut non_geodesic = 0;
        for w in enumerate_words(g.alphabet().len(), max_len, false) {
            if ball.distance_of(&g.evaluate(&w)).unwrap() as usize == w.len() {
                continue;
            }
            non_geodesic += 1;
            let m = brute_min(g, &ball, &w).unwrap();
            expected_max = expected_max.max(m);
            let s = g.alphabet().format(&w);
            let rec = pairs.iter().find(|p| p.word == s).unwrap();
            assert_eq!(rec.distance, m, "{s}");
        }
        assert_eq!(report.non_geodesic, non_geodesic);
        assert_eq!(report.k_min, expected_max);
        assert!(report.verified());
        for p in pairs {
            let w = g.alphabet().parse(&p.word).unwrap();
            let v = g.alphabet().parse(&p.companion).unwrap();
            assert!(v.len() < w.len());
            assert_eq!(g.evaluate(&v), g.evaluate(&w));
            assert_eq!(fellow_distance(g, &ball, &w, &v).unwrap(), p.distance);
        }
    }

    #[test]
    fn fftp_matches_brute_force() {
        check_against_brute_force(&z2_ab(), 4, 4);
        check_against_brute_force(&z2_abcd(), 3, 4);
        check_against_brute_force(&FreeGroup::new(Alphabet::base(&["a", "b"]).unwrap()), 4, 4);
    }

    #[test]
    fn fftp_reduced_words_in_free_group_are_vacuous() {
        let f = FreeGroup::new(Alphabet::base(&["a", "b"]).unwrap());
        let ball = build_ball(&f, 6, 1 << 20).unwrap();
        let opts = FftpOptions { words: WordSet::Reduced, ..FftpOptions::exhaustive(5, 4) };
        let r = fftp_search(&f, &ball, &opts).unwrap();
        assert_eq!((r.non_geodesic, r.k_min), (0, 0));
        assert!(r.exemplars.is_empty() && r.falsifiers.is_empty());
    }

    #[test]
    fn fftp_falsifiers_and_unverified() {
        let g = z2_ab();
        let ball = build_ball(&g, 6, 1 << 20).unwrap();
        let r = fftp_search(&g, &ball, &FftpOptions::exhaustive(5, 4)).unwrap();
        assert!(r.k_min >= 1);
        assert_eq!(r.falsifiers.len() as u32, r.k_min);
        for f in &r.falsifiers {
            assert!(f.minimum > f.k);
        }
        // with too small a cap some words go unverified
        let r = fftp_search(&g, &ball, &FftpOptions::exhaustive(5, 0)).unwrap();
        assert!(!r.verified());
        assert_eq!(r.unverified_count, r.non_geodesic);
    }

    #[test]
    fn fftp_sampled_is_reproducible() {
        let g = z2_abcd();
        let ball = build_ball(&g, 6, 1 << 20).unwrap();
        let opts = FftpOptions { mode: SearchMode::Sampled { count: 500, seed: 9 }, ..FftpOptions::exhaustive(6, 4) };
        let a = fftp_search(&g, &ball, &opts).unwrap();
        let b = fftp_search(&g, &ball, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.tested, 500);
        assert_eq!(
            fftp_search(&g, &ball, &FftpOptions::exhaustive(7, 4)),
            Err(Error::RadiusTooSmall { needed: 7, have: 6 })
        );
    }
}
