//! Text format for group specifications.
//!
//! ```text
//! # comments run to the end of the line
//! base {
//!   kind = abelian            # or `free`
//!   generators = [a, b, c, d]
//!   relators = ["c = ab", "c = ba", "d = cc"]
//! }
//! stable s { u = [a]  v = [d] }
//! stable t { u = [b]  v = [d] }
//! ```
//!
//! Words use the usual syntax (`'` for inverses, `[name]` for long names);
//! anything other than letters, digits, `_` and `'` must be quoted. A relator
//! is either a single word (equal to the identity) or `lhs = rhs`.

use std::fmt::Write as _;

use crate::base_groups::{AbelianGroup, FreeGroup};
use crate::error::{Error, Result};
use crate::hnn::HnnGroup;
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseKind {
    Abelian,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub lhs: Word,
    pub rhs: Option<Word>,
}

impl Relator {
    /// `lhs · rhs⁻¹`
    pub fn word(&self) -> Word {
        match &self.rhs {
            Some(r) => self.lhs.concat(&r.invert()),
            None => self.lhs.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableSpec {
    pub name: String,
    pub u: Vec<Word>,
    pub v: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: BaseKind,
    pub generators: Vec<String>,
    pub relators: Vec<Relator>,
    pub stable: Vec<StableSpec>,
}

/// A constructed group of one of the supported shapes.
pub enum AnyGroup {
    Abelian(AbelianGroup),
    Free(FreeGroup),
    HnnAbelian(HnnGroup<AbelianGroup>),
    HnnFree(HnnGroup<FreeGroup>),
}

/// Runs `$body` with `$g` bound to the concrete group inside an [`AnyGroup`].
#[macro_export]
macro_rules! with_group {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            $crate::specfile::AnyGroup::Abelian($g) => $body,
            $crate::specfile::AnyGroup::Free($g) => $body,
            $crate::specfile::AnyGroup::HnnAbelian($g) => $body,
            $crate::specfile::AnyGroup::HnnFree($g) => $body,
        }
    };
}

impl AnyGroup {
    pub fn is_hnn(&self) -> bool {
        matches!(self, AnyGroup::HnnAbelian(_) | AnyGroup::HnnFree(_))
    }
}

impl GroupSpec {
    pub fn base_alphabet(&self) -> Result<Alphabet> {
        Alphabet::base(&self.generators)
    }

    /// This group specification without its stable letters.
    pub fn base_spec(&self) -> GroupSpec {
        GroupSpec { stable: Vec::new(), ..self.clone() }
    }

    /// Constructs the group; `element_cap` bounds the base geodesic cache.
    pub fn build(&self, element_cap: usize) -> Result<AnyGroup> {
        let alphabet = self.base_alphabet()?;
        let stable: Vec<(String, Vec<Word>, Vec<Word>)> =
            self.stable.iter().map(|s| (s.name.clone(), s.u.clone(), s.v.clone())).collect();
        Ok(match self.kind {
            BaseKind::Abelian => {
                let rels = self.relators.iter().map(Relator::word).collect();
                let base = AbelianGroup::from_presentation(alphabet, rels)?.with_cache_cap(element_cap);
                if stable.is_empty() {
                    AnyGroup::Abelian(base)
                } else {
                    AnyGroup::HnnAbelian(HnnGroup::new(base, stable)?)
                }
            }
            BaseKind::Free => {
                if !self.relators.is_empty() {
                    return Err(Error::Spec("a free base takes no relators".into()));
                }
                let base = FreeGroup::new(alphabet).with_cache_cap(element_cap);
                if stable.is_empty() {
                    AnyGroup::Free(base)
                } else {
                    AnyGroup::HnnFree(HnnGroup::new(base, stable)?)
                }
            }
        })
    }

    pub fn parse(src: &str) -> Result<GroupSpec> {
        Parser::new(src)?.file()
    }

    pub fn to_text(&self) -> String {
        let alphabet = self.base_alphabet().expect("validated on parse");
        let word = |w: &Word| quote(&alphabet.format(w));
        let list = |ws: &[Word]| ws.iter().map(word).collect::<Vec<_>>().join(", ");
        let mut out = String::new();
        let kind = match self.kind {
            BaseKind::Abelian => "abelian",
            BaseKind::Free => "free",
        };
        let _ = writeln!(out, "base {{\n  kind = {kind}");
        let gens: Vec<String> = self.generators.iter().map(|g| quote(g)).collect();
        let _ = writeln!(out, "  generators = [{}]", gens.join(", "));
        if !self.relators.is_empty() {
            let rels: Vec<String> = self
                .relators
                .iter()
                .map(|r| {
                    let text = match &r.rhs {
                        Some(rhs) => format!("{} = {}", alphabet.format(&r.lhs), alphabet.format(rhs)),
                        None => alphabet.format(&r.lhs),
                    };
                    format!("\"{text}\"")
                })
                .collect();
            let _ = writeln!(out, "  relators = [{}]", rels.join(", "));
        }
        out.push_str("}\n");
        for s in &self.stable {
            let _ = writeln!(out, "stable {} {{\n  u = [{}]\n  v = [{}]\n}}", quote(&s.name), list(&s.u), list(&s.v));
        }
        out
    }
}

fn is_bare(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn quote(s: &str) -> String {
    if !s.is_empty() && s.chars().all(is_bare) {
        s.to_string()
    } else {
        format!("\"{s}\"")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Sym(char),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    lines: Vec<usize>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        let lines: Vec<usize> = std::iter::once(0).chain(src.match_indices('\n').map(|(i, _)| i + 1)).collect();
        let mut toks = Vec::new();
        let mut chars = src.char_indices().peekable();
        let mut p = Parser { toks: Vec::new(), lines, pos: 0, end: src.len() };
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c == '#' {
                while chars.peek().is_some_and(|&(_, c)| c != '\n') {
                    chars.next();
                }
            } else if "{}[]=,".contains(c) {
                toks.push((Tok::Sym(c), i));
                chars.next();
            } else if c == '"' {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some((_, '"')) => break,
                        Some((_, '\n')) | None => return Err(p.error(i, "unterminated string")),
                        Some((_, c)) => s.push(c),
                    }
                }
                toks.push((Tok::Str(s), i));
            } else if is_bare(c) {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek().filter(|&&(_, c)| is_bare(c)) {
                    s.push(c);
                    chars.next();
                }
                toks.push((Tok::Ident(s), i));
            } else {
                return Err(p.error(i, &format!("unexpected character `{c}`")));
            }
        }
        p.toks = toks;
        Ok(p)
    }

    fn error(&self, offset: usize, msg: &str) -> Error {
        let line = self.lines.partition_point(|&s| s <= offset);
        let col = offset - self.lines[line - 1] + 1;
        Error::Spec(format!("line {line}, column {col}: {msg}"))
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        let at = self.here();
        match self.next() {
            Some(Tok::Sym(d)) if d == c => Ok(()),
            _ => Err(self.error(at, &format!("expected `{c}`"))),
        }
    }

    fn name(&mut self) -> Result<String> {
        let at = self.here();
        match self.next() {
            Some(Tok::Ident(s)) | Some(Tok::Str(s)) => Ok(s),
            _ => Err(self.error(at, "expected a name")),
        }
    }

    /// `key = value` pairs up to the closing brace; list values only.
    fn block(&mut self) -> Result<Fields> {
        self.expect_sym('{')?;
        let mut out = Vec::new();
        loop {
            if self.peek() == Some(&Tok::Sym('}')) {
                self.pos += 1;
                return Ok(out);
            }
            let at = self.here();
            let key = self.name()?;
            self.expect_sym('=')?;
            let vat = self.here();
            let value = match self.next() {
                Some(Tok::Ident(s)) | Some(Tok::Str(s)) => Value::Scalar(s),
                Some(Tok::Sym('[')) => {
                    let mut items = Vec::new();
                    loop {
                        let iat = self.here();
                        match self.next() {
                            Some(Tok::Sym(']')) => break,
                            Some(Tok::Ident(s)) | Some(Tok::Str(s)) => items.push((s, iat)),
                            _ => return Err(self.error(iat, "expected a list item or `]`")),
                        }
                        match self.peek() {
                            Some(Tok::Sym(',')) => self.pos += 1,
                            Some(Tok::Sym(']')) => {}
                            _ => return Err(self.error(self.here(), "expected `,` or `]`")),
                        }
                    }
                    Value::List(items)
                }
                _ => return Err(self.error(vat, "expected a value")),
            };
            if out.iter().any(|(k, _, _)| *k == key) {
                return Err(self.error(at, &format!("duplicate key `{key}`")));
            }
            out.push((key, at, value));
            if self.peek() == Some(&Tok::Sym(',')) {
                self.pos += 1;
            }
        }
    }

    fn file(&mut self) -> Result<GroupSpec> {
        let mut base: Option<(usize, Fields)> = None;
        let mut stable_raw: Vec<(String, usize, Fields)> = Vec::new();
        while self.pos < self.toks.len() {
            let at = self.here();
            match self.next() {
                Some(Tok::Ident(k)) if k == "base" => {
                    if base.is_some() {
                        return Err(self.error(at, "more than one base block"));
                    }
                    base = Some((at, self.block()?));
                }
                Some(Tok::Ident(k)) if k == "stable" => {
                    let name = self.name()?;
                    stable_raw.push((name, at, self.block()?));
                }
                _ => return Err(self.error(at, "expected `base` or `stable`")),
            }
        }
        let Some((base_at, fields)) = base else {
            return Err(self.error(0, "missing base block"));
        };
        let mut kind = None;
        let mut generators = None;
        let mut relator_src = Vec::new();
        for (key, at, value) in fields {
            match (key.as_str(), value) {
                ("kind", Value::Scalar(s)) => {
                    kind = Some(match s.as_str() {
                        "abelian" => BaseKind::Abelian,
                        "free" => BaseKind::Free,
                        _ => return Err(self.error(at, "kind must be `abelian` or `free`")),
                    })
                }
                ("generators", Value::List(items)) => {
                    generators = Some(items.into_iter().map(|(s, _)| s).collect::<Vec<_>>())
                }
                ("relators", Value::List(items)) => relator_src = items,
                _ => return Err(self.error(at, &format!("unexpected base field `{key}`"))),
            }
        }
        let kind = kind.ok_or_else(|| self.error(base_at, "base block needs `kind`"))?;
        let generators = generators.ok_or_else(|| self.error(base_at, "base block needs `generators`"))?;
        let alphabet = Alphabet::base(&generators).map_err(|e| self.error(base_at, &e.to_string()))?;
        let word = |s: &str, at: usize| alphabet.parse(s).map_err(|e| self.error(at, &e.to_string()));
        let mut relators = Vec::new();
        for (src, at) in relator_src {
            let mut parts = src.split('=');
            let lhs = word(parts.next().unwrap_or(""), at)?;
            let rhs = parts.next().map(|r| word(r, at)).transpose()?;
            if parts.next().is_some() {
                return Err(self.error(at, "a relator has at most one `=`"));
            }
            relators.push(Relator { lhs, rhs });
        }
        let mut stable = Vec::new();
        for (name, at, fields) in stable_raw {
            let (mut u, mut v) = (None, None);
            for (key, kat, value) in fields {
                let Value::List(items) = value else {
                    return Err(self.error(kat, &format!("`{key}` must be a list")));
                };
                let words = items.iter().map(|(s, iat)| word(s, *iat)).collect::<Result<Vec<_>>>()?;
                match key.as_str() {
                    "u" => u = Some(words),
                    "v" => v = Some(words),
                    _ => return Err(self.error(kat, &format!("unexpected stable field `{key}`"))),
                }
            }
            let (Some(u), Some(v)) = (u, v) else {
                return Err(self.error(at, &format!("stable letter `{name}` needs both `u` and `v`")));
            };
            stable.push(StableSpec { name, u, v });
        }
        Ok(GroupSpec { kind, generators, relators, stable })
    }
}

enum Value {
    Scalar(String),
    List(Vec<(String, usize)>),
}

/// Key, offset and value of each field in a block.
type Fields = Vec<(String, usize, Value)>;
