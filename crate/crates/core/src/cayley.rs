//! Breadth-first balls in Cayley graphs.
//!
//! A [`Ball`] stores every element of `B(N)` keyed by its canonical key,
//! together with the full induced adjacency (one slot per signed letter).
//! Element ids follow discovery order; because each frontier is expanded in
//! id order and letters in shortlex order, ids within a sphere are sorted by
//! the shortlex-minimal geodesic of the element, and the first discoverer of
//! an element is its shortlex-minimal predecessor.

use std::fmt::{self, Debug, Write as _};
use std::hash::Hash;
use std::sync::{Arc, RwLock};

use indexmap::IndexSet;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub const DEFAULT_ELEMENT_CAP: usize = 20_000_000;

const NONE: u32 = u32::MAX;
const CHUNK: usize = 1 << 15;

/// A group presented by generators, with canonical hashable element keys.
pub trait GroupOracle: Send + Sync {
    type Key: Clone + Eq + Hash + Debug + Send + Sync;

    fn alphabet(&self) -> &Alphabet;
    fn identity(&self) -> Self::Key;
    fn mul_letter(&self, x: &Self::Key, letter: Letter) -> Self::Key;
    fn multiply(&self, x: &Self::Key, y: &Self::Key) -> Self::Key;
    fn inverse(&self, x: &Self::Key) -> Self::Key;
    /// A stable, human-readable rendering of the key (used in exports).
    fn format_key(&self, x: &Self::Key) -> String;

    fn letter_key(&self, letter: Letter) -> Self::Key {
        self.mul_letter(&self.identity(), letter)
    }

    fn evaluate(&self, w: &Word) -> Self::Key {
        w.letters().iter().fold(self.identity(), |acc, &l| self.mul_letter(&acc, l))
    }
}

pub struct Ball<K> {
    radius: u32,
    num_letters: usize,
    keys: IndexSet<K, FxBuildHasher>,
    dist: Vec<u32>,
    parent: Vec<(u32, Letter)>,
    adj: Vec<u32>,
    sphere_sizes: Vec<usize>,
}

impl<K> Debug for Ball<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ball").field("radius", &self.radius).field("sphere_sizes", &self.sphere_sizes).finish()
    }
}

/// Builds `B(radius)` by frontier-by-frontier expansion from the identity.
///
/// Neighbour keys are computed in parallel; they are merged into the index in
/// frontier order, so the result does not depend on the thread count.
pub fn build_ball<G: GroupOracle>(oracle: &G, radius: u32, element_cap: usize) -> Result<Ball<G::Key>> {
    let letters = oracle.alphabet().letters();
    let nl = letters.len();
    let mut keys: IndexSet<G::Key, FxBuildHasher> = IndexSet::with_hasher(FxBuildHasher);
    keys.insert(oracle.identity());
    let mut dist = vec![0u32];
    let mut parent = vec![(NONE, Letter::from_code(0))];
    let mut adj = vec![NONE; nl];
    let mut sphere_sizes = vec![1usize];

    let (mut start, mut end) = (0usize, 1usize);
    for d in 0..radius {
        let mut chunk_start = start;
        while chunk_start < end {
            let chunk_end = (chunk_start + CHUNK).min(end);
            let computed: Vec<Vec<Option<G::Key>>> = (chunk_start..chunk_end)
                .into_par_iter()
                .map(|id| {
                    let x = keys.get_index(id).expect("id in range");
                    letters
                        .iter()
                        .map(|&l| (adj[id * nl + l.code()] == NONE).then(|| oracle.mul_letter(x, l)))
                        .collect()
                })
                .collect();
            for (offset, row) in computed.into_iter().enumerate() {
                let id = chunk_start + offset;
                for (code, key) in row.into_iter().enumerate() {
                    let Some(key) = key else { continue };
                    if adj[id * nl + code] != NONE {
                        continue;
                    }
                    let j = match keys.get_index_of(&key) {
                        Some(j) => j,
                        None => {
                            if keys.len() >= element_cap {
                                return Err(Error::MemoryCap { cap: element_cap, radius_reached: d });
                            }
                            keys.insert(key);
                            dist.push(d + 1);
                            parent.push((id as u32, Letter::from_code(code)));
                            adj.extend(std::iter::repeat_n(NONE, nl));
                            keys.len() - 1
                        }
                    };
                    adj[id * nl + code] = j as u32;
                    adj[j * nl + (code ^ 1)] = id as u32;
                }
            }
            chunk_start = chunk_end;
        }
        sphere_sizes.push(keys.len() - end);
        start = end;
        end = keys.len();
    }

    // edges inside the outer sphere
    let found: Vec<(usize, usize, usize)> = (start..end)
        .into_par_iter()
        .flat_map_iter(|id| {
            let x = keys.get_index(id).expect("id in range");
            let keys = &keys;
            let adj = &adj;
            letters.iter().filter_map(move |&l| {
                if adj[id * nl + l.code()] != NONE {
                    return None;
                }
                keys.get_index_of(&oracle.mul_letter(x, l)).map(|j| (id, l.code(), j))
            })
        })
        .collect();
    for (id, code, j) in found {
        adj[id * nl + code] = j as u32;
        adj[j * nl + (code ^ 1)] = id as u32;
    }

    Ok(Ball { radius, num_letters: nl, keys, dist, parent, adj, sphere_sizes })
}

impl<K: Clone + Eq + Hash> Ball<K> {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn num_letters(&self) -> usize {
        self.num_letters
    }

    pub fn sphere_sizes(&self) -> &[usize] {
        &self.sphere_sizes
    }

    /// Ids of `S(d)`, a contiguous range.
    pub fn sphere(&self, d: u32) -> std::ops::Range<usize> {
        let start: usize = self.sphere_sizes[..d as usize].iter().sum();
        start..start + self.sphere_sizes[d as usize]
    }

    /// Number of elements in `B(d)`; ids `0..ball_len(d)` are exactly `B(d)`.
    pub fn ball_len(&self, d: u32) -> usize {
        self.sphere_sizes[..=(d.min(self.radius)) as usize].iter().sum()
    }

    pub fn id_of(&self, key: &K) -> Option<usize> {
        self.keys.get_index_of(key)
    }

    pub fn key(&self, id: usize) -> &K {
        self.keys.get_index(id).expect("id in range")
    }

    pub fn distance_of(&self, key: &K) -> Option<u32> {
        self.id_of(key).map(|id| self.dist[id])
    }

    #[inline]
    pub fn dist(&self, id: usize) -> u32 {
        self.dist[id]
    }

    /// The element `id · letter`, if it lies in the ball.
    #[inline]
    pub fn neighbor(&self, id: usize, letter: Letter) -> Option<usize> {
        let j = self.adj[id * self.num_letters + letter.code()];
        (j != NONE).then_some(j as usize)
    }

    /// Walks a word from `start` along ball edges.
    pub fn walk_from(&self, start: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(start, |id, &l| self.neighbor(id, l))
    }

    /// Predecessor links of `id`: pairs `(p, x)` with `dist(p) = dist(id) − 1`
    /// and `p · x = id`.
    pub fn predecessors(&self, id: usize) -> impl Iterator<Item = (usize, Letter)> + '_ {
        let d = self.dist[id];
        (0..self.num_letters).filter_map(move |code| {
            let p = self.adj[id * self.num_letters + code];
            (d > 0 && p != NONE && self.dist[p as usize] + 1 == d)
                .then(|| (p as usize, Letter::from_code(code).inverse()))
        })
    }

    /// The shortlex-minimal predecessor link used to reach `id` first.
    pub fn geodesic_parent(&self, id: usize) -> Option<(usize, Letter)> {
        let (p, l) = self.parent[id];
        (p != NONE).then_some((p as usize, l))
    }

    /// Shortlex-minimal geodesic word for `id`.
    pub fn geodesic(&self, id: usize) -> Word {
        let mut letters = Vec::with_capacity(self.dist[id] as usize);
        let mut cur = id;
        while let Some((p, l)) = self.geodesic_parent(cur) {
            letters.push(l);
            cur = p;
        }
        letters.reverse();
        Word::from_letters(letters)
    }

    /// Every geodesic word for `id`, in shortlex order.
    pub fn geodesics_of(&self, id: usize) -> Vec<Word> {
        fn rec<K: Clone + Eq + Hash>(ball: &Ball<K>, id: usize, suffix: &mut Vec<Letter>, out: &mut Vec<Word>) {
            if ball.dist[id] == 0 {
                out.push(Word::from_letters(suffix.iter().rev().copied().collect()));
                return;
            }
            for (p, l) in ball.predecessors(id) {
                suffix.push(l);
                rec(ball, p, suffix, out);
                suffix.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, id, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Number of geodesic words for every element (saturating).
    pub fn geodesic_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.len()];
        counts[0] = 1;
        for id in 1..self.len() {
            counts[id] = self.predecessors(id).fold(0u64, |acc, (p, _)| acc.saturating_add(counts[p]));
        }
        counts
    }

    /// Directed edges `(from, letter, to)` of the induced subgraph, in id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        (0..self.len()).flat_map(move |id| {
            (0..self.num_letters).filter_map(move |code| {
                let j = self.adj[id * self.num_letters + code];
                (j != NONE).then_some((id, Letter::from_code(code), j as usize))
            })
        })
    }
}

/// `d(x, y) = |x⁻¹ y|`, looked up in the ball.
pub fn distance<G: GroupOracle>(oracle: &G, ball: &Ball<G::Key>, x: &G::Key, y: &G::Key) -> Result<u32> {
    let diff = oracle.multiply(&oracle.inverse(x), y);
    ball.distance_of(&diff).ok_or(Error::OutOfBall { radius: ball.radius(), required: ball.radius() + 1 })
}

/// Whether `w` is geodesic; decidable when `|w| ≤ radius` or the element is found.
pub fn is_geodesic<G: GroupOracle>(oracle: &G, ball: &Ball<G::Key>, w: &Word) -> Result<bool> {
    match ball.distance_of(&oracle.evaluate(w)) {
        Some(d) => Ok(d as usize == w.len()),
        None => Err(Error::OutOfBall { radius: ball.radius(), required: w.len() as u32 }),
    }
}

/// All geodesic words for the element `key`, in shortlex order.
pub fn geodesics_of<G: GroupOracle>(ball: &Ball<G::Key>, key: &G::Key) -> Result<Vec<Word>> {
    ball.id_of(key)
        .map(|id| ball.geodesics_of(id))
        .ok_or(Error::OutOfBall { radius: ball.radius(), required: ball.radius() + 1 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Serializes a ball. Output depends only on the ball's contents.
pub fn export_ball<G: GroupOracle>(oracle: &G, ball: &Ball<G::Key>, format: ExportFormat) -> String {
    let al = oracle.alphabet();
    let counts = ball.geodesic_counts();
    let mut out = String::new();
    match format {
        ExportFormat::Dot => {
            out.push_str("digraph cayley {\n");
            for id in 0..ball.len() {
                let label = al.format(&ball.geodesic(id));
                let label = if label.is_empty() { "1".to_string() } else { label };
                writeln!(out, "  n{id} [label=\"{label}\", distance={}];", ball.dist(id)).unwrap();
            }
            for (from, l, to) in ball.edges() {
                writeln!(out, "  n{from} -> n{to} [label=\"{}\"];", al.letter_str(l)).unwrap();
            }
            out.push_str("}\n");
        }
        ExportFormat::Json => {
            for (id, count) in counts.iter().enumerate() {
                let row = serde_json::json!({
                    "key": oracle.format_key(ball.key(id)),
                    "distance": ball.dist(id),
                    "geodesic": al.format(&ball.geodesic(id)),
                    "count": count,
                });
                writeln!(out, "{row}").unwrap();
            }
        }
        ExportFormat::Csv => {
            out.push_str("key,distance,geodesic,count\n");
            for (id, count) in counts.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{}",
                    csv_field(&oracle.format_key(ball.key(id))),
                    ball.dist(id),
                    csv_field(&al.format(&ball.geodesic(id))),
                    count
                )
                .unwrap();
            }
        }
    }
    out
}

/// A lazily grown ball shared between readers, used for base-group geodesic
/// queries. Growth is serialized behind the write lock; readers see either
/// the old or the new ball.
pub struct GeodesicCache<K> {
    ball: RwLock<Option<Arc<Ball<K>>>>,
    cap: usize,
}

impl<K> GeodesicCache<K> {
    pub fn new(cap: usize) -> Self {
        GeodesicCache { ball: RwLock::new(None), cap }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
}

impl<K: Clone + Eq + Hash + Debug + Send + Sync> GeodesicCache<K> {
    /// A ball of radius at least `radius`, doubling the cached radius as needed.
    pub fn covering<G: GroupOracle<Key = K>>(&self, oracle: &G, radius: u32) -> Result<Arc<Ball<K>>> {
        if let Some(ball) = self.ball.read().expect("cache lock").as_ref() {
            if ball.radius() >= radius {
                return Ok(Arc::clone(ball));
            }
        }
        let mut guard = self.ball.write().expect("cache lock");
        let current = guard.as_ref().map_or(0, |b| b.radius());
        if let Some(ball) = guard.as_ref().filter(|_| current >= radius) {
            return Ok(Arc::clone(ball));
        }
        let target = radius.max(current.saturating_mul(2)).max(4);
        let ball = match build_ball(oracle, target, self.cap) {
            Ok(b) => b,
            // doubling overshot the cap; retry at exactly the requested radius
            Err(Error::MemoryCap { .. }) if target > radius => build_ball(oracle, radius, self.cap)?,
            Err(e) => return Err(e),
        };
        let ball = Arc::new(ball);
        *guard = Some(Arc::clone(&ball));
        Ok(ball)
    }

    /// Grows until `key` is found or the cap is hit.
    pub fn locate<G: GroupOracle<Key = K>>(&self, oracle: &G, key: &K) -> Result<(Arc<Ball<K>>, usize)> {
        let mut radius = self.ball.read().expect("cache lock").as_ref().map_or(4, |b| b.radius());
        loop {
            let ball = self.covering(oracle, radius)?;
            if let Some(id) = ball.id_of(key) {
                return Ok((ball, id));
            }
            if ball.sphere_sizes().last() == Some(&0) {
                // finite group, exhausted
                return Err(Error::OutOfBall { radius: ball.radius(), required: ball.radius() + 1 });
            }
            radius = ball.radius() + 1;
        }
    }
}
