//! Textual group descriptions.
//!
//! ```text
//! spec    := name "(" args ")"
//! cyclic(p, r)        C_{p^r}
//! dihedral(n)         dihedral group of order n = 2^k >= 8
//! dp(spec, spec)      direct product
//! wr(spec, p)         spec ≀ C_p
//! iwr(p, n)           C_p ≀ ... ≀ C_p, n factors
//! sylsym(n, p)        Sylow p-subgroup of S_n
//! ut(n, q)            unitriangular n×n matrices over F_q
//! sylgl(n, q, p)      Sylow p-subgroup of GL_n(F_q), p odd, p ∤ q
//! jordan(p, n)        C_p^n ⋊ C_p by one Jordan block
//! file(path)          JSON group file; path bare or "quoted"
//! catalog(id)         bundled catalog entry such as 8#3
//! trivial(p)          the trivial p-group
//! ```
//!
//! Whitespace between tokens is ignored. Errors carry the byte offset of the
//! offending token.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::construct::{
    cyclic, cyclic_structure, dihedral, direct_product, iterated_wreath_structure, jordan_extension, realize,
    sylow_gl_structure, sylow_symmetric_structure, trivial, unitriangular, wreath_cp, Structure,
};
use crate::error::{Error, Result};
use crate::field::prime_power;
use crate::group::FiniteGroup;
use crate::io::{catalog_entry, read_group};
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic { p: u32, r: u32 },
    Dihedral { order: usize },
    Dp(Box<GroupSpec>, Box<GroupSpec>),
    Wr(Box<GroupSpec>, u32),
    Iwr { p: u32, n: u32 },
    Sylsym { n: u64, p: u32 },
    Ut { n: usize, q: u32 },
    Sylgl { n: u64, q: u64, p: u32 },
    Jordan { p: u32, n: usize },
    File(String),
    Catalog(String),
    Trivial { p: u32 },
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax { position, message: message.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += self.text[self.pos..].chars().next().map_or(0, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(syntax(self.pos, format!("expected '{c}', found '{d}'"))),
            None => Err(syntax(self.pos, format!("expected '{c}', found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..].find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(self.text.len() - start);
        if len == 0 || !self.text[start..].starts_with(|c: char| c.is_ascii_alphabetic()) {
            return Err(syntax(start, "expected a constructor name"));
        }
        self.pos += len;
        Ok((start, &self.text[start..start + len]))
    }

    fn number<T: FromStr>(&mut self) -> Result<T> {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..].find(|c: char| !c.is_ascii_digit()).unwrap_or(self.text.len() - start);
        if len == 0 {
            return Err(syntax(start, "expected a number"));
        }
        self.pos += len;
        self.text[start..start + len].parse().map_err(|_| syntax(start, "number out of range"))
    }

    /// A quoted string, or raw text up to the closing parenthesis.
    fn text_arg(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if self.text[start..].starts_with('"') {
            let end = self.text[start + 1..].find('"').ok_or_else(|| syntax(start, "unterminated string"))?;
            self.pos = start + end + 2;
            return Ok(self.text[start + 1..start + 1 + end].to_string());
        }
        let len = self.text[start..].find(')').unwrap_or(self.text.len() - start);
        let s = self.text[start..start + len].trim_end();
        if s.is_empty() {
            return Err(syntax(start, "expected a path or identifier"));
        }
        self.pos = start + s.len();
        Ok(s.to_string())
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let (at, name) = self.ident()?;
        self.expect('(')?;
        let spec = match name {
            "cyclic" => {
                let p = self.number()?;
                self.expect(',')?;
                GroupSpec::Cyclic { p, r: self.number()? }
            }
            "dihedral" => GroupSpec::Dihedral { order: self.number()? },
            "dp" => {
                let a = self.spec()?;
                self.expect(',')?;
                GroupSpec::Dp(Box::new(a), Box::new(self.spec()?))
            }
            "wr" => {
                let a = self.spec()?;
                self.expect(',')?;
                GroupSpec::Wr(Box::new(a), self.number()?)
            }
            "iwr" => {
                let p = self.number()?;
                self.expect(',')?;
                GroupSpec::Iwr { p, n: self.number()? }
            }
            "sylsym" => {
                let n = self.number()?;
                self.expect(',')?;
                GroupSpec::Sylsym { n, p: self.number()? }
            }
            "ut" => {
                let n = self.number()?;
                self.expect(',')?;
                GroupSpec::Ut { n, q: self.number()? }
            }
            "sylgl" => {
                let n = self.number()?;
                self.expect(',')?;
                let q = self.number()?;
                self.expect(',')?;
                GroupSpec::Sylgl { n, q, p: self.number()? }
            }
            "jordan" => {
                let p = self.number()?;
                self.expect(',')?;
                GroupSpec::Jordan { p, n: self.number()? }
            }
            "file" => GroupSpec::File(self.text_arg()?),
            "catalog" => GroupSpec::Catalog(self.text_arg()?),
            "trivial" => GroupSpec::Trivial { p: self.number()? },
            other => return Err(syntax(at, format!("unknown constructor {other:?}"))),
        };
        self.expect(')')?;
        Ok(spec)
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let mut parser = Parser { text, pos: 0 };
    let spec = parser.spec()?;
    if parser.peek().is_some() {
        return Err(syntax(parser.pos, "trailing input"));
    }
    Ok(spec)
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        parse_spec(s)
    }
}

fn text_arg(s: &str) -> String {
    if s.contains([')', '"']) || s.trim() != s || s.is_empty() {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { p, r } => write!(f, "cyclic({p},{r})"),
            GroupSpec::Dihedral { order } => write!(f, "dihedral({order})"),
            GroupSpec::Dp(a, b) => write!(f, "dp({a},{b})"),
            GroupSpec::Wr(a, p) => write!(f, "wr({a},{p})"),
            GroupSpec::Iwr { p, n } => write!(f, "iwr({p},{n})"),
            GroupSpec::Sylsym { n, p } => write!(f, "sylsym({n},{p})"),
            GroupSpec::Ut { n, q } => write!(f, "ut({n},{q})"),
            GroupSpec::Sylgl { n, q, p } => write!(f, "sylgl({n},{q},{p})"),
            GroupSpec::Jordan { p, n } => write!(f, "jordan({p},{n})"),
            GroupSpec::File(path) => write!(f, "file({})", text_arg(path)),
            GroupSpec::Catalog(id) => write!(f, "catalog({})", text_arg(id)),
            GroupSpec::Trivial { p } => write!(f, "trivial({p})"),
        }
    }
}

impl GroupSpec {
    /// The prime, where it is visible without building anything.
    pub fn prime(&self) -> Option<u32> {
        match self {
            GroupSpec::Cyclic { p, .. }
            | GroupSpec::Iwr { p, .. }
            | GroupSpec::Sylsym { p, .. }
            | GroupSpec::Sylgl { p, .. }
            | GroupSpec::Jordan { p, .. }
            | GroupSpec::Trivial { p }
            | GroupSpec::Wr(_, p) => Some(*p),
            GroupSpec::Dihedral { .. } => Some(2),
            GroupSpec::Ut { q, .. } => prime_power(*q as u64).map(|(p, _)| p as u32),
            GroupSpec::Dp(a, _) => a.prime(),
            GroupSpec::Catalog(id) => catalog_entry(id).ok().map(|e| e.group.p),
            GroupSpec::File(_) => None,
        }
    }

    /// Permutation structure tree, when it can be written down without
    /// enumerating any group.
    pub fn structure(&self) -> Option<Structure> {
        Some(match self {
            GroupSpec::Cyclic { p, r } => cyclic_structure(*p, *r).ok()?,
            GroupSpec::Iwr { p, n } if *n >= 1 => iterated_wreath_structure(*p, n - 1, 1).ok()?,
            GroupSpec::Sylsym { n, p } => sylow_symmetric_structure(*n, *p).ok()?,
            GroupSpec::Sylgl { n, q, p } => sylow_gl_structure(*n, *q, *p).ok()?,
            GroupSpec::Wr(a, p) if a.prime() == Some(*p) => Structure::Wreath { inner: Arc::new(a.structure()?), p: *p },
            GroupSpec::Dp(a, b) if a.prime() == b.prime() => {
                let mut factors = Vec::new();
                for s in [a.structure()?, b.structure()?] {
                    match s {
                        Structure::Direct { factors: fs } => factors.extend(fs),
                        other => factors.push(Arc::new(other)),
                    }
                }
                Structure::Direct { factors }
            }
            _ => return None,
        })
    }

    pub fn build(&self, cap: usize) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { p, r } => cyclic(*p, *r, cap),
            GroupSpec::Dihedral { order } => dihedral(*order, cap),
            GroupSpec::Dp(a, b) => direct_product(&a.build(cap)?, &b.build(cap)?, cap),
            GroupSpec::Wr(a, p) => wreath_cp(&a.build(cap)?, *p, cap),
            GroupSpec::Iwr { .. } | GroupSpec::Sylsym { .. } | GroupSpec::Sylgl { .. } => {
                let p = self.prime().expect("prime is explicit");
                let s = match self {
                    GroupSpec::Iwr { p, n } => {
                        if *n == 0 {
                            return Err(Error::InvalidParameter("iterated wreath needs at least one level".into()));
                        }
                        iterated_wreath_structure(*p, n - 1, 1)?
                    }
                    GroupSpec::Sylsym { n, p } => sylow_symmetric_structure(*n, *p)?,
                    GroupSpec::Sylgl { n, q, p } => sylow_gl_structure(*n, *q, *p)?,
                    _ => unreachable!(),
                };
                realize(p, s, cap)
            }
            GroupSpec::Ut { n, q } => unitriangular(*n, *q, cap),
            GroupSpec::Jordan { p, n } => jordan_extension(*p, *n, cap),
            GroupSpec::File(path) => read_group(path, cap),
            GroupSpec::Catalog(id) => catalog_entry(id)?.build(cap),
            GroupSpec::Trivial { p } => trivial(*p),
        }
    }

    /// For `dp(A, B)` built by [`GroupSpec::build`]: the subgroups generated by
    /// the generators coming from `A` and from `B`.
    pub fn split(&self, g: &FiniteGroup, cap: usize) -> Result<Option<(Subgroup, Subgroup)>> {
        let GroupSpec::Dp(a, _) = self else { return Ok(None) };
        let k = match a.structure() {
            Some(s) => s.generator_count(),
            None => a.build(cap)?.generators().len(),
        };
        let gens = g.generators();
        Ok(Some((g.closure(&gens[..k]), g.closure(&gens[k..]))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ELEMENT_CAP as CAP;

    #[test]
    fn parses_and_prints() {
        let s = parse_spec("wr(cyclic(3,1),3)").unwrap();
        assert_eq!(s, GroupSpec::Wr(Box::new(GroupSpec::Cyclic { p: 3, r: 1 }), 3));
        assert_eq!(parse_spec(" sylsym( 27 , 3 ) ").unwrap(), GroupSpec::Sylsym { n: 27, p: 3 });
        for text in ["dp(ut(3,3),jordan(3,2))", "file(\"a b).json\")", "file(x.json)", "catalog(8#3)", "sylgl(4,2,3)"] {
            let s = parse_spec(text).unwrap();
            assert_eq!(parse_spec(&s.to_string()).unwrap(), s);
        }
    }

    #[test]
    fn errors_cite_offsets() {
        let at = |t: &str| match parse_spec(t) {
            Err(Error::Syntax { position, .. }) => position,
            other => panic!("{t}: {other:?}"),
        };
        assert_eq!(at("jordan(5,)"), 9);
        assert_eq!(at("jordan(5,3"), 10);
        assert_eq!(at("foo(1)"), 0);
        assert_eq!(at("ut(3,3) x"), 8);
        assert_eq!(at("dp(ut(3,3),)"), 11);
    }

    #[test]
    fn builds_and_splits() {
        let s = parse_spec("dp(cyclic(3,1),ut(3,3))").unwrap();
        let g = s.build(CAP).unwrap();
        assert_eq!(g.order(), 81);
        let (h, p) = s.split(&g, CAP).unwrap().unwrap();
        assert_eq!((h.order(), p.order()), (3, 27));
        let s = parse_spec("wr(cyclic(3,1),3)").unwrap();
        assert_eq!(s.structure().unwrap().log_order(), 4);
        assert_eq!(s.build(CAP).unwrap().order(), 81);
        assert!(parse_spec("ut(3,4)").unwrap().structure().is_none());
        assert_eq!(parse_spec("catalog(27#3)").unwrap().prime(), Some(3));
    }
}
