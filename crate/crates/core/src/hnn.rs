//! Multiple HNN extensions `⟨X, s₁…sₙ | R, sᵢ⁻¹ uᵢⱼ sᵢ = vᵢⱼ⟩`.
//!
//! Elements are represented by [`NormalForm`]s: a pinch-free alternating
//! sequence `g₀ s^ε₁ g₁ … s^εₗ gₗ` where every `gⱼ` before a stable letter is
//! the canonical representative of its left coset modulo the subgroup that
//! can be pushed across that letter (`Uᵢ` before `sᵢ`, `Vᵢ` before `sᵢ⁻¹`).
//! With fixed transversals this representative is unique, so the normal form
//! doubles as the element's hash key.

use std::fmt;

use serde::Serialize;

use crate::base_groups::BaseGroup;
use crate::cayley::GroupOracle;
use crate::error::{Error, Result};
use crate::subgroups::{SubgroupOracle, SubgroupWord};
use crate::words::{enumerate_words, Alphabet, GeneratorKind, Letter, Word};

/// One stable letter with its associated subgroups `U = ⟨uⱼ⟩`, `V = ⟨vⱼ⟩`
/// and the isomorphism `uⱼ ↦ vⱼ`.
pub struct StablePair<B: BaseGroup> {
    pub generator: usize,
    pub u: B::Subgroup,
    pub v: B::Subgroup,
    u_elements: Vec<B::Key>,
    v_elements: Vec<B::Key>,
}

impl<B: BaseGroup> StablePair<B> {
    pub fn u_words(&self) -> &[Word] {
        self.u.generator_words()
    }

    pub fn v_words(&self) -> &[Word] {
        self.v.generator_words()
    }
}

pub struct HnnGroup<B: BaseGroup> {
    base: B,
    alphabet: Alphabet,
    pairs: Vec<StablePair<B>>,
}

impl<B: BaseGroup> fmt::Debug for HnnGroup<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HnnGroup").field("alphabet", &self.alphabet).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NormalForm<E> {
    segments: Vec<E>,
    stable: Vec<Letter>,
}

impl<E> NormalForm<E> {
    pub fn segments(&self) -> &[E] {
        &self.segments
    }

    /// The sequence of stable letters, ignoring base-group segments.
    pub fn stable_letter_signature(&self) -> &[Letter] {
        &self.stable
    }
}

impl<E: fmt::Debug> fmt::Debug for NormalForm<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.segments[0])?;
        for (l, g) in self.stable.iter().zip(&self.segments[1..]) {
            write!(f, " {l:?} {g:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PinchKind {
    /// `sᵢ⁻¹ u sᵢ` with `u ∈ Uᵢ`
    Lower,
    /// `sᵢ v sᵢ⁻¹` with `v ∈ Vᵢ`
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pinch {
    /// Positions of the two stable letters (inclusive).
    pub start: usize,
    pub end: usize,
    pub pair: usize,
    pub kind: PinchKind,
    pub rewrite: SubgroupWord,
}

impl<B: BaseGroup> HnnGroup<B> {
    /// `stable` lists `(name, u words, v words)` per stable letter; words are
    /// over the base alphabet.
    pub fn new(base: B, stable: Vec<(String, Vec<Word>, Vec<Word>)>) -> Result<Self> {
        let mut names: Vec<(String, GeneratorKind)> =
            base.alphabet().generators().iter().map(|g| (g.name.clone(), GeneratorKind::Base)).collect();
        names.extend(stable.iter().map(|(n, _, _)| (n.clone(), GeneratorKind::Stable)));
        let alphabet = Alphabet::new(&names)?;
        let nb = base.alphabet().len();
        let mut pairs = Vec::with_capacity(stable.len());
        for (i, (name, u, v)) in stable.into_iter().enumerate() {
            if u.is_empty() || u.len() != v.len() {
                return Err(Error::Spec(format!(
                    "stable letter `{name}` needs equally many u and v words (got {} and {})",
                    u.len(),
                    v.len()
                )));
            }
            for w in u.iter().chain(&v) {
                base.alphabet().check(w)?;
            }
            let u_elements = u.iter().map(|w| base.evaluate(w)).collect();
            let v_elements = v.iter().map(|w| base.evaluate(w)).collect();
            pairs.push(StablePair {
                generator: nb + i,
                u: base.subgroup(&u)?,
                v: base.subgroup(&v)?,
                u_elements,
                v_elements,
            });
        }
        Ok(HnnGroup { base, alphabet, pairs })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn pairs(&self) -> &[StablePair<B>] {
        &self.pairs
    }

    fn pair_of(&self, l: Letter) -> &StablePair<B> {
        &self.pairs[l.generator() - self.base.alphabet().len()]
    }

    fn is_stable(&self, l: Letter) -> bool {
        l.generator() >= self.base.alphabet().len()
    }

    /// The subgroup that can be pushed rightwards across `l`.
    fn pushable(&self, l: Letter) -> &B::Subgroup {
        let p = self.pair_of(l);
        if l.is_inverse() {
            &p.v
        } else {
            &p.u
        }
    }

    /// `l⁻¹ · h · l` for `h` given by its rewrite in the pushable subgroup of `l`.
    fn transfer(&self, l: Letter, rw: &SubgroupWord) -> B::Key {
        let p = self.pair_of(l);
        let images = if l.is_inverse() { &p.u_elements } else { &p.v_elements };
        rw.letters().iter().fold(self.base.identity(), |acc, x| {
            let e = &images[x.generator()];
            if x.is_inverse() {
                self.base.multiply(&acc, &self.base.inverse(e))
            } else {
                self.base.multiply(&acc, e)
            }
        })
    }

    /// Word form of [`Self::transfer`].
    fn transfer_word(&self, l: Letter, rw: &SubgroupWord) -> Word {
        let p = self.pair_of(l);
        rw.expand(if l.is_inverse() { p.u_words() } else { p.v_words() })
    }

    /// Splits `g = r·h` with `r` the left-coset representative and `h` in the
    /// pushable subgroup of `l`; returns `r` and `l⁻¹ h l`.
    fn push_across(&self, g: &B::Key, l: Letter) -> (B::Key, B::Key) {
        let h_sub = self.pushable(l);
        let r = self.base.inverse(&h_sub.coset_rep(&self.base.inverse(g)));
        let h = self.base.multiply(&self.base.inverse(&r), g);
        let rw = h_sub.rewrite(&h).expect("coset decomposition lands in the subgroup");
        (r, self.transfer(l, &rw))
    }

    /// Leftmost pinch of a freely reduced word.
    pub fn find_pinch(&self, w: &Word) -> Option<Pinch> {
        let stable: Vec<usize> = (0..w.len()).filter(|&i| self.is_stable(w.letters()[i])).collect();
        for p in stable.windows(2) {
            let (i, j) = (p[0], p[1]);
            let (x, y) = (w.letters()[i], w.letters()[j]);
            if x != y.inverse() {
                continue;
            }
            let g = self.base.evaluate(&w.subword(i + 1, j));
            // x = y⁻¹, so the enclosed segment must lie in the pushable subgroup of y
            if let Some(rewrite) = self.pushable(y).rewrite(&g) {
                return Some(Pinch {
                    start: i,
                    end: j,
                    pair: y.generator() - self.base.alphabet().len(),
                    kind: if x.is_inverse() { PinchKind::Lower } else { PinchKind::Upper },
                    rewrite,
                });
            }
        }
        None
    }

    /// Free reduction plus repeated leftmost pinch removal.
    pub fn britton_reduce(&self, w: &Word) -> Word {
        let mut w = w.free_reduce();
        while let Some(p) = self.find_pinch(&w) {
            let y = w.letters()[p.end];
            let mid = self.transfer_word(y, &p.rewrite);
            w = w.subword(0, p.start).concat(&mid).concat(&w.subword(p.end + 1, w.len())).free_reduce();
        }
        w
    }

    /// Britton reduction followed by a left-to-right coset sweep.
    pub fn normal_form(&self, w: &Word) -> NormalForm<B::Key> {
        let reduced = self.britton_reduce(w);
        let mut segments = Vec::new();
        let mut stable = Vec::new();
        let mut carry = self.base.identity();
        let mut seg_start = 0;
        for (i, &l) in reduced.letters().iter().enumerate() {
            if !self.is_stable(l) {
                continue;
            }
            let seg = self.base.evaluate(&reduced.subword(seg_start, i));
            let g = self.base.multiply(&carry, &seg);
            let (r, image) = self.push_across(&g, l);
            segments.push(r);
            stable.push(l);
            carry = image;
            seg_start = i + 1;
        }
        let last = self.base.evaluate(&reduced.subword(seg_start, reduced.len()));
        segments.push(self.base.multiply(&carry, &last));
        NormalForm { segments, stable }
    }

    fn mul_base(&self, x: &mut NormalForm<B::Key>, h: &B::Key) {
        let last = x.segments.last_mut().expect("nonempty");
        *last = self.base.multiply(last, h);
    }

    fn mul_stable(&self, x: &mut NormalForm<B::Key>, l: Letter) {
        let g = x.segments.last().expect("nonempty").clone();
        if x.stable.last() == Some(&l.inverse()) {
            if let Some(rw) = self.pushable(l).rewrite(&g) {
                let image = self.transfer(l, &rw);
                x.segments.pop();
                x.stable.pop();
                self.mul_base(x, &image);
                return;
            }
        }
        let (r, image) = self.push_across(&g, l);
        *x.segments.last_mut().expect("nonempty") = r;
        x.stable.push(l);
        x.segments.push(image);
    }

    pub fn multiply_nf(&self, x: &NormalForm<B::Key>, y: &NormalForm<B::Key>) -> NormalForm<B::Key> {
        let mut out = x.clone();
        for (g, &l) in y.segments.iter().zip(&y.stable) {
            self.mul_base(&mut out, g);
            self.mul_stable(&mut out, l);
        }
        self.mul_base(&mut out, y.segments.last().expect("nonempty"));
        out
    }

    pub fn invert_nf(&self, x: &NormalForm<B::Key>) -> NormalForm<B::Key> {
        let mut out = self.identity();
        let n = x.stable.len();
        for j in (0..n).rev() {
            self.mul_base(&mut out, &self.base.inverse(&x.segments[j + 1]));
            self.mul_stable(&mut out, x.stable[j].inverse());
        }
        self.mul_base(&mut out, &self.base.inverse(&x.segments[0]));
        out
    }

    /// A word for the normal form, with base segments written as their
    /// shortlex-minimal base geodesics.
    pub fn nf_word(&self, x: &NormalForm<B::Key>) -> Result<Word> {
        let mut letters = Vec::new();
        for (j, g) in x.segments.iter().enumerate() {
            letters.extend(self.base.geodesic_word(g)?.letters());
            if let Some(&l) = x.stable.get(j) {
                letters.push(l);
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// Base relators (including implied commutators) and the stable relators
    /// `sᵢ⁻¹ uᵢⱼ sᵢ vᵢⱼ⁻¹`, as words over the full alphabet.
    pub fn defining_relators(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self.base.relators().to_vec();
        for p in &self.pairs {
            let s = Word::from_letters(vec![Letter::pos(p.generator)]);
            for (u, v) in p.u_words().iter().zip(p.v_words()) {
                out.push(s.invert().concat(u).concat(&s).concat(&v.invert()));
            }
        }
        out
    }

    /// Checks strip equidistance and (total) geodesicity of the associated
    /// subgroups against base balls of radius `max_len`.
    pub fn verify_isometric(&self, max_len: usize) -> IsometricReport {
        let mut report = IsometricReport {
            max_len,
            lengths: Vec::new(),
            strip_equidistant: Check::default(),
            geodesic: Check::default(),
            totally_geodesic: Check::default(),
            complete: true,
            error: None,
        };
        let balphabet = self.base.alphabet();
        let fmt = |w: &Word| balphabet.format(w);
        let stable_name = |p: &StablePair<B>| self.alphabet.generators()[p.generator].name.clone();

        // strip equidistance
        for p in &self.pairs {
            for (j, (u, v)) in p.u_words().iter().zip(p.v_words()).enumerate() {
                match (self.base.geodesic_length(u), self.base.geodesic_length(v)) {
                    (Ok(lu), Ok(lv)) => {
                        report.lengths.push(GeneratorLengths {
                            stable: stable_name(p),
                            index: j,
                            u: fmt(u),
                            v: fmt(v),
                            u_length: lu,
                            v_length: lv,
                        });
                        if lu != lv {
                            report.strip_equidistant.fail(Witness {
                                stable: stable_name(p),
                                side: "u/v".into(),
                                element: format!("{}={}", fmt(u), fmt(v)),
                                word: format!("|{}|={} vs |{}|={}", fmt(u), lu, fmt(v), lv),
                            });
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => return report.incomplete(e),
                }
            }
        }

        let ball = match self.base.geodesic_cache().covering(&self.base, max_len as u32) {
            Ok(b) => b,
            Err(e) => return report.incomplete(e),
        };
        for p in &self.pairs {
            for (side, sub) in [("u", &p.u), ("v", &p.v)] {
                let gens = sub.generator_words();
                // geodesic: reduced subgroup words expand to geodesics
                for sw in enumerate_words(gens.len(), max_len, true) {
                    let exp = SubgroupWord(sw).expand(gens);
                    if exp.len() > max_len {
                        continue;
                    }
                    report.geodesic.checked += 1;
                    let len = ball.distance_of(&self.base.evaluate(&exp)).expect("within radius");
                    if len as usize != exp.len() {
                        report.geodesic.fail(Witness {
                            stable: stable_name(p),
                            side: side.into(),
                            element: self.base.format_key(&self.base.evaluate(&exp)),
                            word: fmt(&exp),
                        });
                    }
                }
                // totally geodesic: every geodesic of a member is a generator word
                for id in 0..ball.len() {
                    let e = ball.key(id);
                    if !sub.contains(e) {
                        continue;
                    }
                    for w in ball.geodesics_of(id) {
                        report.totally_geodesic.checked += 1;
                        if !in_generator_language(&w, gens) {
                            report.totally_geodesic.fail(Witness {
                                stable: stable_name(p),
                                side: side.into(),
                                element: self.base.format_key(e),
                                word: fmt(&w),
                            });
                        }
                    }
                }
            }
        }
        report
    }
}

/// Whether `w` is a concatenation of the words `gens[j]^{±1}`.
pub fn in_generator_language(w: &Word, gens: &[Word]) -> bool {
    let inverses: Vec<Word> = gens.iter().map(Word::invert).collect();
    let n = w.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 0..n {
        if !reach[i] {
            continue;
        }
        for g in gens.iter().chain(&inverses) {
            if !g.is_empty() && w.letters()[i..].starts_with(g.letters()) {
                reach[i + g.len()] = true;
            }
        }
    }
    reach[n]
}

impl<B: BaseGroup> GroupOracle for HnnGroup<B> {
    type Key = NormalForm<B::Key>;

    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn identity(&self) -> Self::Key {
        NormalForm { segments: vec![self.base.identity()], stable: Vec::new() }
    }

    fn mul_letter(&self, x: &Self::Key, letter: Letter) -> Self::Key {
        let mut out = x.clone();
        if self.is_stable(letter) {
            self.mul_stable(&mut out, letter);
        } else {
            self.mul_base(&mut out, &self.base.letter_key(letter));
        }
        out
    }

    fn multiply(&self, x: &Self::Key, y: &Self::Key) -> Self::Key {
        self.multiply_nf(x, y)
    }

    fn inverse(&self, x: &Self::Key) -> Self::Key {
        self.invert_nf(x)
    }

    fn format_key(&self, x: &Self::Key) -> String {
        let seg = |g: &B::Key| {
            let s = self.base.format_key(g);
            if s.is_empty() {
                "1".to_string()
            } else {
                s
            }
        };
        let mut out = seg(&x.segments[0]);
        for (l, g) in x.stable.iter().zip(&x.segments[1..]) {
            out.push(' ');
            out.push_str(&self.alphabet.letter_str(*l));
            out.push(' ');
            out.push_str(&seg(g));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorLengths {
    pub stable: String,
    pub index: usize,
    pub u: String,
    pub v: String,
    pub u_length: u32,
    pub v_length: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub stable: String,
    pub side: String,
    pub element: String,
    pub word: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Check {
    pub checked: usize,
    pub failures: usize,
    /// First few failing instances.
    pub witnesses: Vec<Witness>,
}

impl Check {
    const MAX_WITNESSES: usize = 16;

    pub fn pass(&self) -> bool {
        self.failures == 0
    }

    fn fail(&mut self, w: Witness) {
        self.failures += 1;
        if self.witnesses.len() < Self::MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsometricReport {
    pub max_len: usize,
    pub lengths: Vec<GeneratorLengths>,
    pub strip_equidistant: Check,
    pub geodesic: Check,
    pub totally_geodesic: Check,
    pub complete: bool,
    pub error: Option<String>,
}

impl IsometricReport {
    fn incomplete(mut self, e: Error) -> Self {
        self.complete = false;
        self.error = Some(e.to_string());
        self
    }

    pub fn pass(&self) -> bool {
        self.complete && self.strip_equidistant.pass() && self.geodesic.pass() && self.totally_geodesic.pass()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base_groups::{AbelianGroup, FreeGroup};

    fn wise() -> HnnGroup<AbelianGroup> {
        let al = Alphabet::base(&["a", "b", "c", "d"]).unwrap();
        let w = |s| al.parse(s).unwrap();
        let base = AbelianGroup::from_presentation(al.clone(), vec![w("abc'"), w("bac'"), w("ccd'")]).unwrap();
        HnnGroup::new(base, vec![("s".into(), vec![w("a")], vec![w("d")]), ("t".into(), vec![w("b")], vec![w("d")])])
            .unwrap()
    }

    fn g2() -> HnnGroup<FreeGroup> {
        let al = Alphabet::base(&["a", "b"]).unwrap();
        let w = |s| al.parse(s).unwrap();
        HnnGroup::new(FreeGroup::new(al.clone()), vec![("s".into(), vec![w("aa"), w("bbb")], vec![w("bb"), w("aba")])])
            .unwrap()
    }

    #[test]
    fn pinch_examples() {
        let g = wise();
        let w = |s| g.alphabet().parse(s).unwrap();
        let p = g.find_pinch(&w("s'as")).unwrap();
        assert_eq!((p.start, p.end, p.pair, p.kind), (0, 2, 0, PinchKind::Lower));
        assert_eq!(p.rewrite.0, Word::from_letters(vec![Letter::pos(0)]));
        assert!(g.find_pinch(&w("sas'")).is_none());
        let p = g.find_pinch(&w("t'bbt")).unwrap();
        assert_eq!(p.rewrite.0.len(), 2);
        assert!(g.find_pinch(&w("abcd")).is_none());
    }

    #[test]
    fn britton_examples() {
        let g = wise();
        let w = |s| g.alphabet().parse(s).unwrap();
        assert_eq!(g.britton_reduce(&w("s'as")), w("d"));
        assert_eq!(g.britton_reduce(&w("t'bt")), w("d"));
        let h = g2();
        let w = |s| h.alphabet().parse(s).unwrap();
        assert_eq!(h.britton_reduce(&w("s'aas")), w("bb"));
        assert_eq!(h.britton_reduce(&w("s'bbbs")), w("aba"));
        assert_eq!(h.britton_reduce(&w("sbbs'")), w("aa"));
        // nested pinches
        assert_eq!(h.britton_reduce(&w("s's'aass'aass'aass")), w("abaaba"));
        assert_eq!(h.britton_reduce(&w("s's'aass")), w("s'bbs"));
    }

    #[test]
    fn normal_form_examples() {
        let g = wise();
        let w = |s| g.alphabet().parse(s).unwrap();
        for r in ["c'ab", "c'ba", "d'cc", "s'asd'", "t'btd'"] {
            assert_eq!(g.normal_form(&w(r)), g.identity(), "{r}");
        }
        assert_eq!(g.normal_form(&w("as")), g.normal_form(&w("sd")));
        assert_eq!(g.multiply(&g.normal_form(&w("s")), &g.normal_form(&w("d"))), g.normal_form(&w("as")));
        let h = g2();
        let w = |s| h.alphabet().parse(s).unwrap();
        assert_ne!(h.normal_form(&w("as")), h.normal_form(&w("sa")));
    }

    #[test]
    fn signature_examples() {
        let g = wise();
        let w = |s| g.alphabet().parse(s).unwrap();
        let sig = g.normal_form(&w("ast'b"));
        assert_eq!(sig.stable_letter_signature(), &[Letter::pos(4), Letter::neg(5)]);
        assert!(g.identity().stable_letter_signature().is_empty());
        assert!(g.normal_form(&w("s'as")).stable_letter_signature().is_empty());
    }

    #[test]
    fn normal_form_words() {
        let g = wise();
        let w = |s| g.alphabet().parse(s).unwrap();
        assert_eq!(g.nf_word(&g.normal_form(&w("s'as"))).unwrap(), w("d"));
        let h = g2();
        let w = |s| h.alphabet().parse(s).unwrap();
        assert_eq!(h.nf_word(&h.normal_form(&w("s'bbbs"))).unwrap(), w("aba"));
    }

    #[test]
    fn mismatched_pairs_are_rejected() {
        let al = Alphabet::base(&["a", "b"]).unwrap();
        let w = |s| al.parse(s).unwrap();
        let r = HnnGroup::new(FreeGroup::new(al.clone()), vec![("s".into(), vec![w("a")], vec![])]);
        assert!(matches!(r, Err(Error::Spec(_))));
        let r = HnnGroup::new(FreeGroup::new(al.clone()), vec![("a".into(), vec![w("a")], vec![w("b")])]);
        assert!(matches!(r, Err(Error::Alphabet(_))));
    }

    #[test]
    fn generator_language() {
        let al = Alphabet::base(&["a", "b"]).unwrap();
        let w = |s| al.parse(s).unwrap();
        let gens = [w("bb"), w("aba")];
        assert!(in_generator_language(&w("ababb"), &gens));
        assert!(in_generator_language(&w("a'b'a'b'b'"), &gens));
        assert!(in_generator_language(&Word::empty(), &gens));
        assert!(!in_generator_language(&w("b"), &gens));
        assert!(!in_generator_language(&w("abab"), &gens));
    }

    #[test]
    fn isometric_checks() {
        let r = wise().verify_isometric(6);
        assert!(r.pass(), "{r:?}");
        assert!(r.lengths.iter().all(|l| l.u_length == 1 && l.v_length == 1));
        let r = g2().verify_isometric(6);
        assert!(r.pass(), "{r:?}");
        let lens: Vec<(u32, u32)> = r.lengths.iter().map(|l| (l.u_length, l.v_length)).collect();
        assert_eq!(lens, vec![(2, 2), (3, 3)]);
    }

    #[test]
    fn broken_spec_reports_witnesses() {
        let al = Alphabet::base(&["a", "b", "c", "d"]).unwrap();
        let w = |s| al.parse(s).unwrap();
        let base = AbelianGroup::from_presentation(al.clone(), vec![w("abc'"), w("bac'"), w("ccd'")]).unwrap();
        let g = HnnGroup::new(base, vec![("s".into(), vec![w("a")], vec![w("c")])]).unwrap();
        let r = g.verify_isometric(4);
        assert!(r.strip_equidistant.pass());
        assert!(!r.geodesic.pass());
        assert!(!r.totally_geodesic.pass());
        assert!(r.totally_geodesic.witnesses.iter().any(|x| x.word == "d" && x.side == "v"));
        assert!(r.geodesic.witnesses.iter().any(|x| x.word == "cc"));
        assert!(!r.pass());
    }
}
