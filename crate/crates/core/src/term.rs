//! Group term syntax.
//!
//! ```text
//! term    := factor ('x' factor)*
//! factor  := 'Z' | 'Z^' k | 'Z/' m | 'F_' k | 'H3' | '(' term ')'
//!          | 'quot(' term ';' 'mask=' bits ';' 'm=[' entry (',' entry)* '])'
//! entry   := '_' | m
//! ```
//!
//! Whitespace is ignored. `Display` on [`Term`] emits the canonical form.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::group::{Group, Term};
use crate::quotient::{central_quotient, ModuliMask};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::FreeAbelian(1) => f.write_str("Z"),
            Term::FreeAbelian(k) => write!(f, "Z^{k}"),
            Term::Cyclic(m) => write!(f, "Z/{m}"),
            Term::Free(k) => write!(f, "F_{k}"),
            Term::Heisenberg => f.write_str("H3"),
            Term::Product(ts) => {
                for (i, t) in ts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    t.fmt(f)?;
                }
                Ok(())
            }
            Term::Quotient(base, mask) => write!(f, "quot({base}; {mask})"),
        }
    }
}

impl fmt::Display for ModuliMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("mask=")?;
        for e in self.entries() {
            f.write_str(if e.is_some() { "1" } else { "0" })?;
        }
        f.write_str("; m=[")?;
        for (i, e) in self.entries().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match e {
                Some(m) => write!(f, "{m}")?,
                None => f.write_str("_")?,
            }
        }
        f.write_str("]")
    }
}

impl core::str::FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Group::parse(s)
    }
}

impl Group {
    /// Parses a group term.
    pub fn parse(input: &str) -> Result<Group> {
        let compact: Vec<u8> = input.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut p = Parser {
            s: &compact,
            pos: 0,
        };
        let g = p.term()?;
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(g)
    }
}

/// Parses a mask given as bits plus aligned moduli, e.g. `("101", "3,_,5")`.
pub fn parse_mask(bits: &str, moduli: &str) -> Result<ModuliMask> {
    let text = format!("mask={bits};m=[{moduli}]");
    let compact: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let mut p = Parser {
        s: &compact,
        pos: 0,
    };
    let mask = p.mask()?;
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(mask)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{lit}`")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        core::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "number too large".to_string(),
            })
    }

    fn small(&mut self) -> Result<u32> {
        let pos = self.pos;
        u32::try_from(self.number()?).map_err(|_| Error::Parse {
            pos,
            msg: "rank too large".to_string(),
        })
    }

    fn term(&mut self) -> Result<Group> {
        let mut factors = Vec::new();
        factors.push(self.factor()?);
        while self.eat("x") {
            factors.push(self.factor()?);
        }
        Group::product(factors)
    }

    fn factor(&mut self) -> Result<Group> {
        let at = self.pos;
        let located = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                pos: at,
                msg: other.to_string(),
            },
        };
        if self.eat("quot(") {
            let base = self.term()?;
            self.expect(";")?;
            let mask = self.mask()?;
            self.expect(")")?;
            central_quotient(&base, &mask).map_err(located)
        } else if self.eat("(") {
            let g = self.term()?;
            self.expect(")")?;
            Ok(g)
        } else if self.eat("Z/") {
            let m = self.number()?;
            Group::cyclic(m).map_err(located)
        } else if self.eat("Z^") {
            let k = self.small()?;
            Group::free_abelian(k).map_err(located)
        } else if self.eat("Z") {
            Group::free_abelian(1)
        } else if self.eat("F_") {
            let k = self.small()?;
            Group::free(k).map_err(located)
        } else if self.eat("H3") {
            Ok(Group::heisenberg())
        } else {
            Err(self.err("expected a group factor"))
        }
    }

    fn mask(&mut self) -> Result<ModuliMask> {
        self.expect("mask=")?;
        let mut bits = Vec::new();
        while let Some(b @ (b'0' | b'1')) = self.peek() {
            bits.push(b == b'1');
            self.pos += 1;
        }
        self.expect(";")?;
        self.expect("m=[")?;
        let mut entries: Vec<Option<u64>> = Vec::new();
        loop {
            if self.eat("_") {
                entries.push(None);
            } else {
                entries.push(Some(self.number()?));
            }
            if !self.eat(",") {
                break;
            }
        }
        self.expect("]")?;
        if bits.len() != entries.len() {
            return Err(self.err("mask bits and moduli list differ in length"));
        }
        if bits.iter().zip(&entries).any(|(b, e)| *b != e.is_some()) {
            return Err(self.err("moduli must be given exactly where the mask is 1"));
        }
        ModuliMask::new(entries).map_err(|e| Error::Parse {
            pos: self.pos,
            msg: e.to_string(),
        })
    }
}
