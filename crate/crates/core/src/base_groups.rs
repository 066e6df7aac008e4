//! Base-group oracles: finitely generated abelian groups (exact coordinates
//! via Smith normal form) and free groups (freely reduced words).

use std::fmt;

use smallvec::SmallVec;

use crate::cayley::{GeodesicCache, GroupOracle, DEFAULT_ELEMENT_CAP};
use crate::error::{Error, Result};
use crate::smith::smith;
use crate::subgroups::{CyclicSubgroup, StallingsSubgroup, SubgroupOracle};
use crate::words::{Alphabet, Letter, Word};

/// A base group `(A, X)` that can host associated subgroups of an HNN extension.
pub trait BaseGroup: GroupOracle + Sized {
    type Subgroup: SubgroupOracle<Self::Key>;

    fn subgroup(&self, generator_words: &[Word]) -> Result<Self::Subgroup>;

    /// A complete set of defining relators (commutators included for
    /// abelian groups).
    fn relators(&self) -> &[Word];

    fn geodesic_cache(&self) -> &GeodesicCache<Self::Key>;

    /// Word length of the element of `w`, by breadth-first search in the
    /// base Cayley graph. The cached ball only needs radius `|w|`.
    fn geodesic_length(&self, w: &Word) -> Result<u32> {
        let ball = self.geodesic_cache().covering(self, w.len() as u32)?;
        Ok(ball.distance_of(&self.evaluate(w)).expect("an element is within |w| of the identity"))
    }

    fn element_length(&self, e: &Self::Key) -> Result<u32> {
        let (ball, id) = self.geodesic_cache().locate(self, e)?;
        Ok(ball.dist(id))
    }

    /// The shortlex-minimal geodesic word for `e`.
    fn geodesic_word(&self, e: &Self::Key) -> Result<Word> {
        let (ball, id) = self.geodesic_cache().locate(self, e)?;
        Ok(ball.geodesic(id))
    }
}

/// Coordinates in `Z^rank ⊕ Z/m₁ ⊕ … ⊕ Z/m_k`; free part first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianElement(pub SmallVec<[i64; 4]>);

impl AbelianElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl fmt::Debug for AbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

pub struct AbelianGroup {
    alphabet: Alphabet,
    declared: Vec<Word>,
    relators: Vec<Word>,
    rank: usize,
    moduli: Vec<i64>,
    images: Vec<AbelianElement>,
    cache: GeodesicCache<AbelianElement>,
}

impl fmt::Debug for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AbelianGroup")
            .field("rank", &self.rank)
            .field("moduli", &self.moduli)
            .field("images", &self.images)
            .finish()
    }
}

/// Column-style Hermite normalisation of the free-part images: walks the
/// generators in declaration order and puts their image rows in echelon form,
/// so that e.g. `a, b` become the standard basis whenever they are one.
fn hermite_columns(rows: &mut [Vec<i128>], ncols: usize) {
    let mut pivot = 0;
    for r in 0..rows.len() {
        if pivot == ncols {
            break;
        }
        loop {
            // move the smallest nonzero entry of row r (cols ≥ pivot) into the pivot column
            let best = (pivot..ncols).filter(|&j| rows[r][j] != 0).min_by_key(|&j| rows[r][j].abs());
            let Some(j) = best else { break };
            for row in rows.iter_mut() {
                row.swap(pivot, j);
            }
            let p = rows[r][pivot];
            let mut done = true;
            for j in pivot + 1..ncols {
                let k = rows[r][j].div_euclid(p);
                for row in rows.iter_mut() {
                    row[j] -= k * row[pivot];
                }
                done &= rows[r][j] == 0;
            }
            if done {
                break;
            }
        }
        if rows[r][pivot] == 0 {
            continue;
        }
        if rows[r][pivot] < 0 {
            for row in rows.iter_mut() {
                row[pivot] = -row[pivot];
            }
        }
        let p = rows[r][pivot];
        for q in 0..pivot {
            let k = rows[r][q].div_euclid(p);
            for row in rows.iter_mut() {
                row[q] -= k * row[pivot];
            }
        }
        pivot += 1;
    }
}

impl AbelianGroup {
    /// The abelian group generated by `alphabet` subject to `relators`
    /// (commutativity is implied).
    pub fn from_presentation(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            alphabet.check(r)?;
        }
        let n = alphabet.len();
        let matrix: Vec<Vec<i128>> = relators
            .iter()
            .map(|r| {
                let mut row = vec![0i128; n];
                for l in r.letters() {
                    row[l.generator()] += l.sign() as i128;
                }
                row
            })
            .collect();
        let snf = smith(&matrix, n);
        let k = snf.diagonal.len();
        let torsion: Vec<(usize, i128)> =
            snf.diagonal.iter().enumerate().filter(|(_, &d)| d > 1).map(|(i, &d)| (i, d)).collect();
        let rank = n - k;
        let mut free_rows: Vec<Vec<i128>> = snf.q.iter().map(|row| row[k..].to_vec()).collect();
        hermite_columns(&mut free_rows, rank);
        let moduli: Vec<i64> = torsion.iter().map(|&(_, d)| d as i64).collect();
        let images = (0..n)
            .map(|g| {
                let mut c: SmallVec<[i64; 4]> = free_rows[g].iter().map(|&x| x as i64).collect();
                c.extend(torsion.iter().map(|&(i, d)| snf.q[g][i].rem_euclid(d) as i64));
                AbelianElement(c)
            })
            .collect();
        let declared = relators;
        let mut relators = declared.clone();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (Letter::pos(i), Letter::pos(j));
                relators.push(Word::from_letters(vec![x, y, x.inverse(), y.inverse()]));
            }
        }
        Ok(AbelianGroup {
            alphabet,
            declared,
            relators,
            rank,
            moduli,
            images,
            cache: GeodesicCache::new(DEFAULT_ELEMENT_CAP),
        })
    }

    pub fn with_cache_cap(mut self, cap: usize) -> Self {
        self.cache = GeodesicCache::new(cap);
        self
    }

    /// The relators as given, without the implied commutators.
    pub fn declared_relators(&self) -> &[Word] {
        &self.declared
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion_moduli(&self) -> &[i64] {
        &self.moduli
    }

    pub fn image(&self, generator: usize) -> &AbelianElement {
        &self.images[generator]
    }

    pub fn element(&self, free: &[i64], torsion: &[i64]) -> AbelianElement {
        assert_eq!(free.len(), self.rank);
        assert_eq!(torsion.len(), self.moduli.len());
        let mut c: SmallVec<[i64; 4]> = free.iter().copied().collect();
        c.extend(torsion.iter().zip(&self.moduli).map(|(t, m)| t.rem_euclid(*m)));
        AbelianElement(c)
    }

    /// `x + n·y`, torsion reduced.
    pub fn add_multiple(&self, x: &AbelianElement, y: &AbelianElement, n: i64) -> AbelianElement {
        let mut c = x.0.clone();
        for (i, v) in c.iter_mut().enumerate() {
            *v += n * y.0[i];
            if i >= self.rank {
                *v = v.rem_euclid(self.moduli[i - self.rank]);
            }
        }
        AbelianElement(c)
    }
}

impl GroupOracle for AbelianGroup {
    type Key = AbelianElement;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> AbelianElement {
        AbelianElement(SmallVec::from_elem(0, self.rank + self.moduli.len()))
    }

    fn mul_letter(&self, x: &AbelianElement, letter: Letter) -> AbelianElement {
        self.add_multiple(x, &self.images[letter.generator()], letter.sign())
    }

    fn multiply(&self, x: &AbelianElement, y: &AbelianElement) -> AbelianElement {
        self.add_multiple(x, y, 1)
    }

    fn inverse(&self, x: &AbelianElement) -> AbelianElement {
        self.add_multiple(&self.identity(), x, -1)
    }

    /// `(x,y)`, or `(x,y;t)` with torsion coordinates after the semicolon.
    fn format_key(&self, x: &AbelianElement) -> String {
        let free: Vec<String> = x.0[..self.rank].iter().map(|v| v.to_string()).collect();
        let tors: Vec<String> = x.0[self.rank..].iter().map(|v| v.to_string()).collect();
        if tors.is_empty() {
            format!("({})", free.join(","))
        } else {
            format!("({};{})", free.join(","), tors.join(","))
        }
    }
}

impl BaseGroup for AbelianGroup {
    type Subgroup = CyclicSubgroup;

    fn subgroup(&self, generator_words: &[Word]) -> Result<CyclicSubgroup> {
        match generator_words {
            [w] => CyclicSubgroup::new(self, w.clone()),
            other => Err(Error::NonCyclicSubgroup(other.len())),
        }
    }

    fn relators(&self) -> &[Word] {
        &self.relators
    }

    fn geodesic_cache(&self) -> &GeodesicCache<AbelianElement> {
        &self.cache
    }
}

/// The free group on an alphabet; elements are freely reduced words.
pub struct FreeGroup {
    alphabet: Alphabet,
    cache: GeodesicCache<Word>,
}

impl fmt::Debug for FreeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FreeGroup").field("alphabet", &self.alphabet).finish()
    }
}

impl FreeGroup {
    pub fn new(alphabet: Alphabet) -> Self {
        FreeGroup { alphabet, cache: GeodesicCache::new(DEFAULT_ELEMENT_CAP) }
    }

    pub fn with_cache_cap(mut self, cap: usize) -> Self {
        self.cache = GeodesicCache::new(cap);
        self
    }
}

impl GroupOracle for FreeGroup {
    type Key = Word;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> Word {
        Word::empty()
    }

    fn mul_letter(&self, x: &Word, letter: Letter) -> Word {
        let mut letters = x.letters().to_vec();
        if letters.last() == Some(&letter.inverse()) {
            letters.pop();
        } else {
            letters.push(letter);
        }
        Word::from_letters(letters)
    }

    fn multiply(&self, x: &Word, y: &Word) -> Word {
        let (xs, ys) = (x.letters(), y.letters());
        let mut cancel = 0;
        while cancel < xs.len().min(ys.len()) && xs[xs.len() - 1 - cancel] == ys[cancel].inverse() {
            cancel += 1;
        }
        let mut letters = xs[..xs.len() - cancel].to_vec();
        letters.extend_from_slice(&ys[cancel..]);
        Word::from_letters(letters)
    }

    fn inverse(&self, x: &Word) -> Word {
        x.invert()
    }

    fn format_key(&self, x: &Word) -> String {
        self.alphabet.format(x)
    }

    fn evaluate(&self, w: &Word) -> Word {
        w.free_reduce()
    }
}

impl BaseGroup for FreeGroup {
    type Subgroup = StallingsSubgroup;

    fn subgroup(&self, generator_words: &[Word]) -> Result<StallingsSubgroup> {
        StallingsSubgroup::new(generator_words.to_vec())
    }

    fn relators(&self) -> &[Word] {
        &[]
    }

    fn geodesic_cache(&self) -> &GeodesicCache<Word> {
        &self.cache
    }

    /// Reduced words are the unique geodesics of a free group.
    fn geodesic_word(&self, e: &Word) -> Result<Word> {
        Ok(e.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_ball;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn wise_base() -> AbelianGroup {
        let al = Alphabet::base(&["a", "b", "c", "d"]).unwrap();
        let rel = ["abc'", "bac'", "ccd'"].map(|s| al.parse(s).unwrap()).to_vec();
        AbelianGroup::from_presentation(al, rel).unwrap()
    }

    #[test]
    fn wise_base_images_are_forced() {
        let g = wise_base();
        assert_eq!(g.rank(), 2);
        assert!(g.torsion_moduli().is_empty());
        let imgs: Vec<&[i64]> = (0..4).map(|i| g.image(i).coords()).collect();
        assert_eq!(imgs, vec![&[1, 0][..], &[0, 1], &[1, 1], &[2, 2]]);
        let w = g.alphabet().parse("abc'").unwrap();
        assert_eq!(g.evaluate(&w), g.identity());
        for r in g.relators() {
            assert_eq!(g.evaluate(r), g.identity());
        }
    }

    #[test]
    fn cyclic_torsion_group() {
        let al = Alphabet::base(&["a"]).unwrap();
        let rel = vec![al.parse("aaa").unwrap()];
        let g = AbelianGroup::from_presentation(al, rel).unwrap();
        assert_eq!(g.rank(), 0);
        assert_eq!(g.torsion_moduli(), &[3]);
        assert_eq!(g.image(0).coords(), &[1]);
        let ball = build_ball(&g, 5, 100).unwrap();
        assert_eq!(ball.sphere_sizes(), &[1, 2, 0, 0, 0, 0]);
    }

    #[test]
    fn relator_outside_alphabet_is_rejected() {
        let al = Alphabet::base(&["a"]).unwrap();
        let bad = Word::from_letters(vec![Letter::pos(3)]);
        assert!(matches!(AbelianGroup::from_presentation(al, vec![bad]), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn free_oracle_examples() {
        let al = Alphabet::base(&["a", "b"]).unwrap();
        let f = FreeGroup::new(al.clone());
        let w = |s| al.parse(s).unwrap();
        assert_eq!(f.evaluate(&w("aa'")), f.identity());
        assert_eq!(f.multiply(&w("ab"), &w("b'a")), w("aa"));
        assert_eq!(f.geodesic_length(&w("abab")).unwrap(), 4);
        assert_eq!(f.geodesic_length(&w("abb'a'b")).unwrap(), 1);
    }

    #[test]
    fn wise_base_geodesic_lengths() {
        let g = wise_base();
        let w = |s| g.alphabet().parse(s).unwrap();
        assert_eq!(g.geodesic_length(&w("d")).unwrap(), 1);
        // (2,2) is realised by d
        assert_eq!(g.geodesic_length(&w("aabb")).unwrap(), 1);
        assert_eq!(g.geodesic_word(&g.evaluate(&w("aabb"))).unwrap(), w("d"));
        for k in 1..=6 {
            assert_eq!(g.geodesic_length(&w("a").power(k)).unwrap(), k as u32);
        }
    }

    /// Independent oracle: brute-force minimum over all words up to length 4.
    #[test]
    fn geodesic_length_matches_word_enumeration() {
        let g = wise_base();
        let mut best = std::collections::HashMap::new();
        for w in crate::words::enumerate_words(4, 4, false) {
            best.entry(g.evaluate(&w)).or_insert(w.len() as u32);
        }
        for (e, len) in &best {
            assert_eq!(g.element_length(e).unwrap(), *len, "{e:?}");
        }
    }

    #[test]
    fn geodesic_length_properties() {
        let g = wise_base();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let random_word = |rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(0..6);
            Word::from_letters((0..n).map(|_| Letter::from_code(rng.gen_range(0..8))).collect())
        };
        for _ in 0..200 {
            let u = random_word(&mut rng);
            let v = random_word(&mut rng);
            let lu = g.geodesic_length(&u).unwrap() as i64;
            let lv = g.geodesic_length(&v).unwrap() as i64;
            let luv = g.geodesic_length(&u.concat(&v)).unwrap() as i64;
            assert_eq!(lu, g.geodesic_length(&u.invert()).unwrap() as i64);
            assert!((luv - lu).abs() <= lv);
            assert_eq!(g.evaluate(&u.concat(&v)), g.evaluate(&v.concat(&u)));
        }
    }
}
