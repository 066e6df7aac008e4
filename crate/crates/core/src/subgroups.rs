//! Associated-subgroup oracles: membership with a rewrite into the subgroup
//! generators, and canonical right-coset representatives.

use std::collections::VecDeque;
use std::fmt;

use crate::base_groups::{AbelianElement, AbelianGroup};
use crate::cayley::GroupOracle;
use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// A word in the subgroup generators: letter `j` stands for generator word `j`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct SubgroupWord(pub Word);

impl SubgroupWord {
    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    /// Replaces each letter by its generator word (inverted for negative letters).
    pub fn expand(&self, generator_words: &[Word]) -> Word {
        let mut out = Vec::new();
        for l in self.letters() {
            let g = &generator_words[l.generator()];
            if l.is_inverse() {
                out.extend(g.invert().letters());
            } else {
                out.extend(g.letters());
            }
        }
        Word::from_letters(out)
    }
}

impl fmt::Debug for SubgroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters()
            .iter()
            .map(|l| format!("u{}{}", l.generator(), if l.is_inverse() { "'" } else { "" }))
            .collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

pub trait SubgroupOracle<E>: Send + Sync {
    fn generator_words(&self) -> &[Word];

    /// `Some(rewrite)` iff `g` lies in the subgroup.
    fn rewrite(&self, g: &E) -> Option<SubgroupWord>;

    /// Canonical representative of the right coset `H·g`; the identity for
    /// members of `H`.
    fn coset_rep(&self, g: &E) -> E;

    fn contains(&self, g: &E) -> bool {
        self.rewrite(g).is_some()
    }
}

/// `⟨u⟩` inside a finitely generated abelian group, `u` of infinite order.
#[derive(Debug, Clone)]
pub struct CyclicSubgroup {
    words: Vec<Word>,
    generator: AbelianElement,
    pivot: usize,
    rank: usize,
    moduli: Vec<i64>,
}

impl CyclicSubgroup {
    pub fn new(group: &AbelianGroup, word: Word) -> Result<Self> {
        group.alphabet().check(&word)?;
        let generator = group.evaluate(&word);
        let name = group.alphabet().format(&word);
        if generator == group.identity() {
            return Err(Error::TrivialSubgroupGenerator(name));
        }
        // free coordinates come first, so the first nonzero one is free unless
        // the whole free part vanishes
        let pivot = generator.coords().iter().position(|&c| c != 0).expect("nonzero generator");
        if pivot >= group.rank() {
            return Err(Error::TorsionSubgroup(name));
        }
        Ok(CyclicSubgroup {
            words: vec![word],
            generator,
            pivot,
            rank: group.rank(),
            moduli: group.torsion_moduli().to_vec(),
        })
    }

    pub fn generator(&self) -> &AbelianElement {
        &self.generator
    }

    fn minus_multiple(&self, g: &AbelianElement, n: i64) -> AbelianElement {
        let mut c = g.0.clone();
        for (i, v) in c.iter_mut().enumerate() {
            *v -= n * self.generator.0[i];
            if i >= self.rank {
                *v = v.rem_euclid(self.moduli[i - self.rank]);
            }
        }
        AbelianElement(c)
    }

    /// `n` with `g = n·u`, if any.
    pub fn multiple_of(&self, g: &AbelianElement) -> Option<i64> {
        let p = self.generator.0[self.pivot];
        let x = g.0[self.pivot];
        if x % p != 0 {
            return None;
        }
        let n = x / p;
        self.minus_multiple(g, n).0.iter().all(|&v| v == 0).then_some(n)
    }
}

impl SubgroupOracle<AbelianElement> for CyclicSubgroup {
    fn generator_words(&self) -> &[Word] {
        &self.words
    }

    fn rewrite(&self, g: &AbelianElement) -> Option<SubgroupWord> {
        self.multiple_of(g).map(|n| {
            let l = Letter::new(0, n < 0);
            SubgroupWord(Word::from_letters(vec![l; n.unsigned_abs() as usize]))
        })
    }

    /// Subtracts the multiple of the generator that brings the pivot
    /// coordinate into `[0, |pivot value|)`.
    fn coset_rep(&self, g: &AbelianElement) -> AbelianElement {
        let p = self.generator.0[self.pivot];
        let x = g.0[self.pivot];
        let r = x.rem_euclid(p.abs());
        self.minus_multiple(g, (x - r) / p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    src: usize,
    label: usize,
    dst: usize,
    /// Reading of the edge in the free group on the subgroup generators.
    ann: Word,
}

/// A folded Stallings graph. Edges are labelled by positive base generators;
/// vertex 0 is the base vertex.
#[derive(Debug, Clone)]
pub struct StallingsAutomaton {
    num_vertices: usize,
    num_labels: usize,
    edges: Vec<Edge>,
    out: Vec<Option<usize>>,
    inc: Vec<Option<usize>>,
}

fn gauge(edges: &mut [Edge], vertex: usize, h: &Word) {
    let h_inv = h.invert();
    for e in edges.iter_mut() {
        if e.src == vertex && e.dst == vertex {
            e.ann = h.concat(&e.ann).concat(&h_inv).free_reduce();
        } else if e.src == vertex {
            e.ann = h.concat(&e.ann).free_reduce();
        } else if e.dst == vertex {
            e.ann = e.ann.concat(&h_inv).free_reduce();
        }
    }
}

impl StallingsAutomaton {
    /// Wedge of one subdivided loop per generator word, folded. Each edge
    /// carries the subgroup word it reads, maintained through every fold by
    /// re-gauging the vertex that disappears.
    pub fn fold(generator_words: &[Word]) -> Self {
        let num_labels = generator_words.iter().flat_map(|w| w.letters()).map(|l| l.generator() + 1).max().unwrap_or(0);
        let mut edges = Vec::new();
        let mut next_vertex = 1;
        for (j, w) in generator_words.iter().enumerate() {
            let n = w.len();
            let mut prev = 0;
            for (i, &l) in w.letters().iter().enumerate() {
                let cur = if i + 1 == n {
                    0
                } else {
                    next_vertex += 1;
                    next_vertex - 1
                };
                let ann = if i + 1 == n {
                    let u = Word::from_letters(vec![Letter::pos(j)]);
                    if l.is_inverse() {
                        u.invert()
                    } else {
                        u
                    }
                } else {
                    Word::empty()
                };
                let (src, dst) = if l.is_inverse() { (cur, prev) } else { (prev, cur) };
                edges.push(Edge { src, label: l.generator(), dst, ann });
                prev = cur;
            }
        }

        while let Some((keep_edge, gone_edge, keep, gone, outgoing)) = find_conflict(&edges) {
            if keep != gone {
                let (a_keep, a_gone) = (&edges[keep_edge].ann, &edges[gone_edge].ann);
                let h = if outgoing {
                    a_keep.invert().concat(a_gone).free_reduce()
                } else {
                    a_keep.concat(&a_gone.invert()).free_reduce()
                };
                gauge(&mut edges, gone, &h);
                for e in edges.iter_mut() {
                    if e.src == gone {
                        e.src = keep;
                    }
                    if e.dst == gone {
                        e.dst = keep;
                    }
                }
            }
            // the two edges now coincide (up to a relation among the generators)
            edges.remove(gone_edge);
        }

        // compact vertex ids, base stays 0
        let mut remap = vec![usize::MAX; next_vertex];
        remap[0] = 0;
        let mut count = 1;
        for e in &edges {
            for v in [e.src, e.dst] {
                if remap[v] == usize::MAX {
                    remap[v] = count;
                    count += 1;
                }
            }
        }
        for e in edges.iter_mut() {
            e.src = remap[e.src];
            e.dst = remap[e.dst];
        }
        let mut out = vec![None; count * num_labels];
        let mut inc = vec![None; count * num_labels];
        for (i, e) in edges.iter().enumerate() {
            out[e.src * num_labels + e.label] = Some(i);
            inc[e.dst * num_labels + e.label] = Some(i);
        }
        StallingsAutomaton { num_vertices: count, num_labels, edges, out, inc }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// No vertex has two outgoing, or two incoming, edges with the same label.
    pub fn is_folded(&self) -> bool {
        find_conflict(&self.edges).is_none()
    }

    /// Follows one letter: the next vertex and the subgroup word read.
    fn step(&self, v: usize, l: Letter) -> Option<(usize, Word)> {
        if l.generator() >= self.num_labels {
            return None;
        }
        let slot = v * self.num_labels + l.generator();
        if l.is_inverse() {
            self.inc[slot].map(|i| (self.edges[i].src, self.edges[i].ann.invert()))
        } else {
            self.out[slot].map(|i| (self.edges[i].dst, self.edges[i].ann.clone()))
        }
    }

    /// Reads `w` from the base vertex as far as possible: the vertex reached,
    /// the number of letters consumed, and the subgroup word read.
    fn read(&self, w: &Word) -> (usize, usize, Vec<Letter>) {
        let mut v = 0;
        let mut trace = Vec::new();
        for (i, &l) in w.letters().iter().enumerate() {
            match self.step(v, l) {
                Some((next, ann)) => {
                    trace.extend(ann.letters());
                    v = next;
                }
                None => return (v, i, trace),
            }
        }
        (v, w.len(), trace)
    }

    /// Shortlex-minimal word from the base vertex to every vertex.
    fn shortlex_paths(&self) -> Vec<Word> {
        let mut paths: Vec<Option<Word>> = vec![None; self.num_vertices];
        paths[0] = Some(Word::empty());
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let base = paths[v].clone().expect("visited");
            for code in 0..2 * self.num_labels {
                let l = Letter::from_code(code);
                if let Some((next, _)) = self.step(v, l) {
                    if paths[next].is_none() {
                        paths[next] = Some(base.push(l));
                        queue.push_back(next);
                    }
                }
            }
        }
        paths.into_iter().map(|p| p.expect("folded graph is connected")).collect()
    }
}

/// First pair of edges violating foldedness, as
/// `(keep_edge, gone_edge, keep_vertex, gone_vertex, outgoing)`.
/// The vertex that disappears is never the base vertex.
fn find_conflict(edges: &[Edge]) -> Option<(usize, usize, usize, usize, bool)> {
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (e, f) = (&edges[i], &edges[j]);
            if e.label != f.label {
                continue;
            }
            if e.src == f.src {
                return Some(if f.dst == 0 { (j, i, f.dst, e.dst, true) } else { (i, j, e.dst, f.dst, true) });
            }
            if e.dst == f.dst {
                return Some(if f.src == 0 { (j, i, f.src, e.src, false) } else { (i, j, e.src, f.src, false) });
            }
        }
    }
    None
}

/// A finitely generated subgroup of a free group, via Stallings foldings.
#[derive(Debug, Clone)]
pub struct StallingsSubgroup {
    words: Vec<Word>,
    automaton: StallingsAutomaton,
    paths: Vec<Word>,
}

impl StallingsSubgroup {
    pub fn new(words: Vec<Word>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::Spec("a subgroup needs at least one generator".into()));
        }
        for w in &words {
            if w.is_empty() || !w.is_freely_reduced() {
                return Err(Error::Spec("subgroup generator words must be nonempty and freely reduced".into()));
            }
        }
        let automaton = StallingsAutomaton::fold(&words);
        let paths = automaton.shortlex_paths();
        Ok(StallingsSubgroup { words, automaton, paths })
    }

    pub fn automaton(&self) -> &StallingsAutomaton {
        &self.automaton
    }
}

impl SubgroupOracle<Word> for StallingsSubgroup {
    fn generator_words(&self) -> &[Word] {
        &self.words
    }

    fn rewrite(&self, g: &Word) -> Option<SubgroupWord> {
        let (v, consumed, trace) = self.automaton.read(g);
        (v == 0 && consumed == g.len()).then(|| SubgroupWord(Word::from_letters(trace).free_reduce()))
    }

    /// The shortlex-minimal word reaching the coset's vertex of the Schreier
    /// graph: the core path to where `g` leaves the folded graph, followed by
    /// the unread remainder of `g` (which runs out along a hanging tree).
    fn coset_rep(&self, g: &Word) -> Word {
        let (v, consumed, _) = self.automaton.read(g);
        self.paths[v].concat(&g.subword(consumed, g.len())).free_reduce()
    }
}
