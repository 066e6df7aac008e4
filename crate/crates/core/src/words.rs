//! Alphabets of signed generators, words, free reduction and shortlex order.
//!
//! A [`Letter`] packs a generator index and a sign into one `u32` so that the
//! derived ordering is exactly the shortlex letter order: generators in
//! declaration order, and for each generator the positive letter before its
//! inverse.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Base,
    Stable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    pub index: usize,
}

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    /// Rebuilds a letter from its position in [`Alphabet::letters`].
    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    /// Position of this letter in [`Alphabet::letters`].
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g{}{}", self.generator(), if self.is_inverse() { "'" } else { "" })
    }
}

/// A finite sequence of letters. Operations return new words.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&self, letter: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn power(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// Cancels adjacent letter–inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn invert(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Named generators in a fixed total order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    generators: Vec<Generator>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !matches!(c, '\'' | '[' | ']' | '"' | ',' | '=' | '{' | '}' | '#'))
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[(S, GeneratorKind)]) -> Result<Self> {
        let mut generators: Vec<Generator> = Vec::with_capacity(names.len());
        for (index, (name, kind)) in names.iter().enumerate() {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(Error::Alphabet(format!("invalid generator name `{name}`")));
            }
            if generators.iter().any(|g| g.name == name) {
                return Err(Error::Alphabet(format!("duplicate generator name `{name}`")));
            }
            generators.push(Generator { name: name.to_string(), kind: *kind, index });
        }
        Ok(Alphabet { generators })
    }

    /// An alphabet of base generators only.
    pub fn base<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let named: Vec<(&str, GeneratorKind)> = names.iter().map(|n| (n.as_ref(), GeneratorKind::Base)).collect();
        Alphabet::new(&named)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn num_letters(&self) -> usize {
        2 * self.generators.len()
    }

    /// All signed letters in shortlex order; `letters()[l.code()] == l`.
    pub fn letters(&self) -> Vec<Letter> {
        (0..self.num_letters()).map(Letter::from_code).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn is_stable(&self, letter: Letter) -> bool {
        self.generators[letter.generator()].kind == GeneratorKind::Stable
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.letters().iter().find(|l| l.generator() >= self.len()) {
            Some(l) => Err(Error::AlphabetMismatch { index: l.generator(), size: self.len() }),
            None => Ok(()),
        }
    }

    /// Shortlex comparison; errors when either word is not over this alphabet.
    pub fn shortlex_compare(&self, w1: &Word, w2: &Word) -> Result<Ordering> {
        self.check(w1)?;
        self.check(w2)?;
        Ok(w1.cmp(w2))
    }

    pub fn letter_str(&self, l: Letter) -> String {
        let name = &self.generators[l.generator()].name;
        let mut s = if name.chars().count() == 1 { name.clone() } else { format!("[{name}]") };
        if l.is_inverse() {
            s.push('\'');
        }
        s
    }

    /// Prints a word in the compact syntax, e.g. `ab'sa` or `[s1]a'`.
    pub fn format(&self, w: &Word) -> String {
        w.letters().iter().map(|&l| self.letter_str(l)).collect()
    }

    /// Parses the compact word syntax. Whitespace between letters is ignored.
    pub fn parse(&self, s: &str) -> Result<Word> {
        let chars: Vec<(usize, char)> = s.char_indices().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let (pos, c) = chars[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let (name, next) = if c == '[' {
                let close = chars[i + 1..]
                    .iter()
                    .position(|&(_, c)| c == ']')
                    .ok_or_else(|| Error::Parse { pos, msg: "unclosed `[`".into() })?;
                let name: String = chars[i + 1..i + 1 + close].iter().map(|&(_, c)| c).collect();
                (name, i + close + 2)
            } else if c == '\'' {
                return Err(Error::Parse { pos, msg: "inverse mark without a generator".into() });
            } else {
                (c.to_string(), i + 1)
            };
            let generator =
                self.index_of(&name).ok_or_else(|| Error::Parse { pos, msg: format!("unknown generator `{name}`") })?;
            i = next;
            let inverse = i < chars.len() && chars[i].1 == '\'';
            if inverse {
                i += 1;
            }
            letters.push(Letter::new(generator, inverse));
        }
        Ok(Word(letters))
    }
}

/// Every word of length at most `max_len` over `num_generators` generators,
/// in shortlex order; optionally only freely reduced words.
pub fn enumerate_words(num_generators: usize, max_len: usize, freely_reduced_only: bool) -> WordEnumerator {
    WordEnumerator {
        num_letters: 2 * num_generators,
        max_len,
        reduced: freely_reduced_only,
        current: None,
        done: false,
    }
}

pub struct WordEnumerator {
    num_letters: usize,
    max_len: usize,
    reduced: bool,
    current: Option<Vec<usize>>,
    done: bool,
}

impl WordEnumerator {
    fn smallest_after(&self, prev: Option<usize>, from: usize) -> Option<usize> {
        (from..self.num_letters).find(|&c| !(self.reduced && prev == Some(c ^ 1)))
    }

    /// Fills `codes[start..]` with the smallest admissible suffix.
    fn fill_min(&self, codes: &mut [usize], start: usize) -> bool {
        for i in start..codes.len() {
            let prev = if i == 0 { None } else { Some(codes[i - 1]) };
            match self.smallest_after(prev, 0) {
                Some(c) => codes[i] = c,
                None => return false,
            }
        }
        true
    }

    fn first_of_length(&self, len: usize) -> Option<Vec<usize>> {
        let mut codes = vec![0; len];
        self.fill_min(&mut codes, 0).then_some(codes)
    }

    fn advance(&self, codes: &mut [usize]) -> bool {
        for i in (0..codes.len()).rev() {
            let prev = if i == 0 { None } else { Some(codes[i - 1]) };
            if let Some(c) = self.smallest_after(prev, codes[i] + 1) {
                codes[i] = c;
                if self.fill_min(codes, i + 1) {
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for WordEnumerator {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let next = match self.current.take() {
            None => Some(Vec::new()),
            Some(mut codes) => {
                if self.advance(&mut codes) {
                    Some(codes)
                } else {
                    let mut len = codes.len() + 1;
                    loop {
                        if len > self.max_len {
                            break None;
                        }
                        if let Some(c) = self.first_of_length(len) {
                            break Some(c);
                        }
                        len += 1;
                    }
                }
            }
        };
        match next {
            Some(codes) => {
                let word = Word(codes.iter().map(|&c| Letter::from_code(c)).collect());
                self.current = Some(codes);
                Some(word)
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abs() -> Alphabet {
        Alphabet::new(&[("a", GeneratorKind::Base), ("b", GeneratorKind::Base), ("s", GeneratorKind::Stable)]).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let al = abs();
        let w = |s| al.parse(s).unwrap();
        assert_eq!(w("aa'").free_reduce(), Word::empty());
        assert_eq!(w("abb'a").free_reduce(), w("aa"));
        assert_eq!(w("s'as").free_reduce(), w("s'as"));
    }

    #[test]
    fn invert_examples() {
        let al = abs();
        let w = |s| al.parse(s).unwrap();
        assert_eq!(w("ab").invert(), w("b'a'"));
        assert_eq!(Word::empty().invert(), Word::empty());
        assert_eq!(w("s'as").invert(), w("s'a's"));
    }

    #[test]
    fn shortlex_examples() {
        let al = abs();
        let w = |s| al.parse(s).unwrap();
        assert_eq!(al.shortlex_compare(&w("a"), &w("b")).unwrap(), Ordering::Less);
        assert_eq!(al.shortlex_compare(&w("ab"), &w("a")).unwrap(), Ordering::Greater);
        assert_eq!(al.shortlex_compare(&w("a"), &w("a'")).unwrap(), Ordering::Less);
        let small = Alphabet::base(&["a"]).unwrap();
        assert!(matches!(small.shortlex_compare(&w("a"), &w("b")), Err(Error::AlphabetMismatch { index: 1, size: 1 })));
    }

    #[test]
    fn enumeration_examples() {
        let words: Vec<Word> = enumerate_words(1, 1, true).collect();
        assert_eq!(words, vec![Word::empty(), Word(vec![Letter::pos(0)]), Word(vec![Letter::neg(0)])]);
        assert_eq!(enumerate_words(2, 2, false).count(), 21);
        assert_eq!(enumerate_words(2, 2, true).count(), 17);
        assert_eq!(enumerate_words(2, 0, true).count(), 1);
    }

    #[test]
    fn enumeration_is_strictly_increasing_with_geometric_counts() {
        for reduced in [false, true] {
            let words: Vec<Word> = enumerate_words(3, 4, reduced).collect();
            assert!(words.windows(2).all(|p| p[0] < p[1]));
            let expected: usize = (0..=4u32)
                .map(|n| match (reduced, n) {
                    (_, 0) => 1,
                    (false, n) => 6usize.pow(n),
                    (true, n) => 6 * 5usize.pow(n - 1),
                })
                .sum();
            assert_eq!(words.len(), expected);
            if reduced {
                assert!(words.iter().all(Word::is_freely_reduced));
            }
        }
    }

    #[test]
    fn parse_and_format() {
        let al = Alphabet::new(&[("a", GeneratorKind::Base), ("s1", GeneratorKind::Stable)]).unwrap();
        let w = al.parse("a[s1]'a'").unwrap();
        assert_eq!(w.letters(), &[Letter::pos(0), Letter::neg(1), Letter::neg(0)]);
        assert_eq!(al.format(&w), "a[s1]'a'");
        assert_eq!(al.parse("s1").unwrap_err(), Error::Parse { pos: 0, msg: "unknown generator `s`".into() });
        assert!(matches!(al.parse("a'[s1"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(al.parse("'a"), Err(Error::Parse { pos: 0, .. })));
        assert_eq!(al.parse("  ").unwrap(), Word::empty());
    }

    #[test]
    fn alphabet_rejects_duplicates_and_bad_names() {
        assert!(Alphabet::base(&["a", "a"]).is_err());
        assert!(Alphabet::base(&["a'"]).is_err());
        assert!(Alphabet::base(&[""]).is_err());
    }

    fn arb_word(gens: usize, max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, any::<bool>()), 0..max)
            .prop_map(|v| Word(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()))
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent(w in arb_word(3, 24)) {
            let r = w.free_reduce();
            prop_assert!(r.is_freely_reduced());
            prop_assert!(r.len() <= w.len());
            prop_assert_eq!(r.free_reduce(), r);
        }

        #[test]
        fn word_times_inverse_reduces_to_empty(w in arb_word(3, 24)) {
            prop_assert!(w.concat(&w.invert()).free_reduce().is_empty());
            prop_assert_eq!(w.invert().invert(), w);
        }

        #[test]
        fn shortlex_is_a_total_order(a in arb_word(2, 5), b in arb_word(2, 5), c in arb_word(2, 5)) {
            prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
            prop_assert_eq!(a.cmp(&b) == Ordering::Equal, a == b);
        }

        #[test]
        fn format_parse_round_trip(w in arb_word(3, 16)) {
            let al = Alphabet::new(&[("a", GeneratorKind::Base), ("bb", GeneratorKind::Base), ("s", GeneratorKind::Stable)]).unwrap();
            prop_assert_eq!(al.parse(&al.format(&w)).unwrap(), w);
        }
    }
}
