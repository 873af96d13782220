//! Exact computable groups: descriptors, normal forms, generating sets.
//!
//! Every group is a direct product of *factors*, each of which is a copy of
//! `Z` (possibly reduced modulo `m`), a discrete Heisenberg group (centre
//! possibly reduced modulo `m`), or a free group. Central quotients only ever
//! reduce coordinates modulo an integer, so a normal form is simply a tuple of
//! per-factor coordinates.
//!
//! Heisenberg convention: `(x, y, z)` stands for the upper-triangular matrix
//! `[[1, x, z], [0, 1, y], [0, 0, 1]]`, hence
//! `(x, y, z) * (x', y', z') = (x + x', y + y', z + z' + x * y')`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::quotient::ModuliMask;

/// Closed term describing a group construction.
///
/// Terms are kept canonical by the smart constructors on [`Group`]: products
/// are flat with at least two factors, quotients never nest and carry a
/// non-empty trimmed mask.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    FreeAbelian(u32),
    Cyclic(u64),
    Free(u32),
    Heisenberg,
    Product(Vec<Term>),
    Quotient(Box<Term>, ModuliMask),
}

/// One direct factor of the flattened group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// A copy of `Z`, or of `Z/m` when `modulus` is set.
    Line { modulus: Option<u64> },
    /// `H3(Z)`, with the centre reduced modulo `center_modulus` when set.
    Heisenberg { center_modulus: Option<u64> },
    /// Free group on `rank` letters.
    Free { rank: u32 },
}

/// Coordinates of one factor of an element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Int(i64),
    Heis([i64; 3]),
    /// Freely reduced word; letter `k > 0` is generator `k`, `-k` its inverse.
    Word(Vec<i32>),
}

/// Normal form of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub parts: Vec<Part>,
}

impl Element {
    pub fn new(parts: Vec<Part>) -> Self {
        Element { parts }
    }

    /// Element made only of integer parts, e.g. a vector of `Z^k`.
    pub fn ints(coords: &[i64]) -> Self {
        Element {
            parts: coords.iter().map(|&c| Part::Int(c)).collect(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match p {
                Part::Int(v) => write!(f, "{v}")?,
                Part::Heis([x, y, z]) => write!(f, "[{x},{y},{z}]")?,
                Part::Word(w) if w.is_empty() => f.write_str("e")?,
                Part::Word(w) => {
                    for &l in w {
                        let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
                        if l > 0 {
                            write!(f, "{c}")?;
                        } else {
                            write!(f, "{}", c.to_ascii_uppercase())?;
                        }
                    }
                }
            }
        }
        f.write_str(")")
    }
}

/// The flattened structure a term compiles to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub factors: Vec<Factor>,
    /// Factor index of each designated central generator `g_i`.
    pub central: Vec<usize>,
    /// Factor index of the distinguished `Z` direct factor, if any.
    pub line: Option<usize>,
}

impl Layout {
    fn compile(term: &Term) -> Layout {
        match term {
            Term::FreeAbelian(k) => Layout {
                factors: vec![Factor::Line { modulus: None }; *k as usize],
                central: (0..*k as usize).collect(),
                line: None,
            },
            Term::Cyclic(m) => Layout {
                factors: vec![Factor::Line { modulus: Some(*m) }],
                central: Vec::new(),
                line: None,
            },
            Term::Free(k) => Layout {
                factors: vec![Factor::Free { rank: *k }],
                central: Vec::new(),
                line: None,
            },
            Term::Heisenberg => Layout {
                factors: vec![Factor::Heisenberg {
                    center_modulus: None,
                }],
                central: vec![0],
                line: None,
            },
            Term::Product(terms) => {
                let mut out = Layout {
                    factors: Vec::new(),
                    central: Vec::new(),
                    line: None,
                };
                let last = terms.len() - 1;
                for (i, t) in terms.iter().enumerate() {
                    let sub = Layout::compile(t);
                    let offset = out.factors.len();
                    if i == last && *t == Term::FreeAbelian(1) {
                        out.line = Some(offset);
                    } else {
                        out.central.extend(sub.central.iter().map(|c| c + offset));
                    }
                    out.factors.extend(sub.factors);
                }
                out
            }
            Term::Quotient(base, mask) => {
                let mut out = Layout::compile(base);
                for (i, m) in mask.moduli() {
                    match &mut out.factors[out.central[i]] {
                        Factor::Line { modulus } => *modulus = Some(m),
                        Factor::Heisenberg { center_modulus } => *center_modulus = Some(m),
                        Factor::Free { .. } => {
                            unreachable!("free factors carry no central coordinate")
                        }
                    }
                }
                out
            }
        }
    }

    pub fn identity(&self) -> Element {
        Element {
            parts: self
                .factors
                .iter()
                .map(|f| match f {
                    Factor::Line { .. } => Part::Int(0),
                    Factor::Heisenberg { .. } => Part::Heis([0; 3]),
                    Factor::Free { .. } => Part::Word(Vec::new()),
                })
                .collect(),
        }
    }

    /// Checks that `e` is a normal form for this layout.
    pub fn validate(&self, e: &Element) -> Result<()> {
        if e.parts.len() != self.factors.len() {
            return Err(Error::MalformedElement(format!(
                "{e} has {} parts, expected {}",
                e.parts.len(),
                self.factors.len()
            )));
        }
        for (f, p) in self.factors.iter().zip(&e.parts) {
            let ok = match (f, p) {
                (Factor::Line { modulus: None }, Part::Int(_)) => true,
                (Factor::Line { modulus: Some(m) }, Part::Int(v)) => *v >= 0 && (*v as u64) < *m,
                (Factor::Heisenberg { center_modulus }, Part::Heis([_, _, z])) => {
                    center_modulus.is_none_or(|m| *z >= 0 && (*z as u64) < m)
                }
                (Factor::Free { rank }, Part::Word(w)) => {
                    w.iter().all(|&l| l != 0 && l.unsigned_abs() <= *rank)
                        && w.windows(2).all(|p| p[0] != -p[1])
                }
                _ => false,
            };
            if !ok {
                return Err(Error::MalformedElement(format!("{e} does not match {f:?}")));
            }
        }
        Ok(())
    }

    /// Product `a * b`. Both arguments must be valid normal forms.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let parts = self
            .factors
            .iter()
            .zip(a.parts.iter().zip(&b.parts))
            .map(|(f, (p, q))| match (f, p, q) {
                (Factor::Line { modulus }, Part::Int(x), Part::Int(y)) => {
                    Part::Int(reduce(x + y, *modulus))
                }
                (
                    Factor::Heisenberg { center_modulus },
                    Part::Heis([x1, y1, z1]),
                    Part::Heis([x2, y2, z2]),
                ) => Part::Heis([x1 + x2, y1 + y2, reduce(z1 + z2 + x1 * y2, *center_modulus)]),
                (Factor::Free { .. }, Part::Word(u), Part::Word(v)) => {
                    Part::Word(free_concat(u, v))
                }
                _ => unreachable!("element does not match layout"),
            })
            .collect();
        Element { parts }
    }

    pub fn inv(&self, a: &Element) -> Element {
        let parts = self
            .factors
            .iter()
            .zip(&a.parts)
            .map(|(f, p)| match (f, p) {
                (Factor::Line { modulus }, Part::Int(x)) => Part::Int(reduce(-x, *modulus)),
                (Factor::Heisenberg { center_modulus }, Part::Heis([x, y, z])) => {
                    Part::Heis([-x, -y, reduce(-z + x * y, *center_modulus)])
                }
                (Factor::Free { .. }, Part::Word(w)) => {
                    Part::Word(w.iter().rev().map(|l| -l).collect())
                }
                _ => unreachable!("element does not match layout"),
            })
            .collect();
        Element { parts }
    }

    /// The standard generators: unit vectors of lines, `x` and `y` of each
    /// Heisenberg factor, the letters of each free factor.
    pub fn standard_generators(&self) -> Vec<Element> {
        let id = self.identity();
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            let units: Vec<Part> = match f {
                Factor::Line { .. } => vec![Part::Int(1)],
                Factor::Heisenberg { .. } => vec![Part::Heis([1, 0, 0]), Part::Heis([0, 1, 0])],
                Factor::Free { rank } => (1..=*rank as i32).map(|l| Part::Word(vec![l])).collect(),
            };
            for u in units {
                let mut g = id.clone();
                g.parts[i] = u;
                out.push(g);
            }
        }
        out
    }

    /// The element of the central coordinate `i` raised to `power`.
    pub fn central_power(&self, i: usize, power: i64) -> Element {
        let mut e = self.identity();
        let fi = self.central[i];
        e.parts[fi] = match self.factors[fi] {
            Factor::Line { modulus } => Part::Int(reduce(power, modulus)),
            Factor::Heisenberg { center_modulus } => {
                Part::Heis([0, 0, reduce(power, center_modulus)])
            }
            Factor::Free { .. } => unreachable!(),
        };
        e
    }

    /// Value of central coordinate `i` of `e` (a residue when reduced).
    pub fn central_value(&self, e: &Element, i: usize) -> i64 {
        match &e.parts[self.central[i]] {
            Part::Int(v) => *v,
            Part::Heis([_, _, z]) => *z,
            Part::Word(_) => unreachable!(),
        }
    }

    /// Modulus applied to central coordinate `i`, if any.
    pub fn central_modulus(&self, i: usize) -> Option<u64> {
        match self.factors[self.central[i]] {
            Factor::Line { modulus } => modulus,
            Factor::Heisenberg { center_modulus } => center_modulus,
            Factor::Free { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.factors
            .iter()
            .all(|f| matches!(f, Factor::Line { modulus: Some(_) }))
    }
}

fn reduce(v: i64, modulus: Option<u64>) -> i64 {
    match modulus {
        Some(m) => v.rem_euclid(m as i64),
        None => v,
    }
}

fn free_concat(u: &[i32], v: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(u.len() + v.len());
    out.extend_from_slice(u);
    for &l in v {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A group descriptor: a canonical term together with its compiled layout.
///
/// Equality and hashing go through the term, whose `Display` is the
/// canonical serialization.
#[derive(Debug, Clone)]
pub struct Group {
    term: Term,
    layout: Layout,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.term == other.term
    }
}

impl Eq for Group {}

impl core::hash::Hash for Group {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.term.hash(state)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.term.fmt(f)
    }
}

impl Group {
    pub(crate) fn from_term(term: Term) -> Self {
        let layout = Layout::compile(&term);
        Group { term, layout }
    }

    /// `Z^k`, `k >= 1`.
    pub fn free_abelian(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "Z^0 is the trivial group".to_string(),
            ));
        }
        Ok(Self::from_term(Term::FreeAbelian(k)))
    }

    pub fn cyclic(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Self::from_term(Term::Cyclic(m)))
    }

    pub fn free(k: u32) -> Result<Self> {
        if k == 0 || k > 26 {
            return Err(Error::InvalidParameter(format!(
                "free group rank {k} outside 1..=26"
            )));
        }
        Ok(Self::from_term(Term::Free(k)))
    }

    pub fn heisenberg() -> Self {
        Self::from_term(Term::Heisenberg)
    }

    /// Direct product; nested products are flattened.
    pub fn product(factors: Vec<Group>) -> Result<Self> {
        let mut terms = Vec::new();
        for g in factors {
            match g.term {
                Term::Product(ts) => terms.extend(ts),
                t => terms.push(t),
            }
        }
        match terms.len() {
            0 => Err(Error::InvalidParameter("empty product".to_string())),
            1 => Ok(Self::from_term(terms.pop().unwrap())),
            _ => Ok(Self::from_term(Term::Product(terms))),
        }
    }

    pub fn term(&self) -> &Term {
        &self.term
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    /// Canonical serialization, also used as cache key.
    pub fn key(&self) -> String {
        self.term.to_string()
    }

    pub fn identity(&self) -> Element {
        self.layout.identity()
    }

    pub fn validate(&self, e: &Element) -> Result<()> {
        self.layout.validate(e)
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.layout.mul(a, b))
    }

    pub fn inverse(&self, a: &Element) -> Result<Element> {
        self.validate(a)?;
        Ok(self.layout.inv(a))
    }

    /// Rank of the designated central free-abelian basis `(g_0, ..., g_{K-1})`.
    pub fn central_rank(&self) -> usize {
        self.layout.central.len()
    }

    pub fn central_basis(&self) -> Vec<Element> {
        (0..self.central_rank())
            .map(|i| self.layout.central_power(i, 1))
            .collect()
    }

    pub fn line_generator(&self) -> Option<Element> {
        self.layout.line.map(|fi| {
            let mut e = self.identity();
            e.parts[fi] = Part::Int(1);
            e
        })
    }

    pub fn standard_generators(&self) -> Vec<Element> {
        self.layout.standard_generators()
    }

    pub fn is_finite(&self) -> bool {
        self.layout.is_finite()
    }

    /// Underlying group and mask when this is a central quotient.
    pub fn quotient_parts(&self) -> Option<(Group, &ModuliMask)> {
        match &self.term {
            Term::Quotient(base, mask) => Some((Group::from_term((**base).clone()), mask)),
            _ => None,
        }
    }

    /// Image of an element of the unquotiented base under the quotient map.
    pub fn project(&self, e: &Element) -> Element {
        let parts = self
            .layout
            .factors
            .iter()
            .zip(&e.parts)
            .map(|(f, p)| match (f, p) {
                (Factor::Line { modulus }, Part::Int(v)) => Part::Int(reduce(*v, *modulus)),
                (Factor::Heisenberg { center_modulus }, Part::Heis([x, y, z])) => {
                    Part::Heis([*x, *y, reduce(*z, *center_modulus)])
                }
                (_, p) => p.clone(),
            })
            .collect();
        Element { parts }
    }
}

/// A finite generating set and its symmetric closure `S ∪ S^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    pub generators: Vec<Element>,
    /// `S ∪ S^-1` minus the identity, sorted by canonical serialization.
    pub closure: Vec<Element>,
    /// Label of each closure element: `s{i}` or `s{i}^-1`.
    pub labels: Vec<String>,
}

impl GeneratingSet {
    pub fn degree(&self) -> usize {
        self.closure.len()
    }
}

/// Builds `S ∪ S^-1` with the identity and duplicates removed.
pub fn symmetric_closure(group: &Group, generators: &[Element]) -> Result<GeneratingSet> {
    if generators.is_empty() {
        return Err(Error::EmptyGeneratingSet);
    }
    let layout = group.layout();
    let id = layout.identity();
    let mut labeled: Vec<(String, Element)> = Vec::new();
    for s in generators {
        layout.validate(s)?;
        for e in [s.clone(), layout.inv(s)] {
            if e != id {
                labeled.push((e.to_string(), e));
            }
        }
    }
    labeled.sort();
    labeled.dedup_by(|a, b| a.1 == b.1);
    let labels = labeled
        .iter()
        .map(|(_, e)| {
            if let Some(i) = generators.iter().position(|g| g == e) {
                format!("s{i}")
            } else {
                let i = generators
                    .iter()
                    .position(|g| layout.inv(g) == *e)
                    .expect("closure element comes from a generator");
                format!("s{i}^-1")
            }
        })
        .collect();
    Ok(GeneratingSet {
        generators: generators.to_vec(),
        closure: labeled.into_iter().map(|(_, e)| e).collect(),
        labels,
    })
}

/// Which group `H` the construction group `G = H x <a>` is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HVariant {
    /// `H = Z^K`, all of it central.
    FreeAbelian,
    /// `H = H3(Z)`, whose centre gives a single central generator.
    Heisenberg,
}

/// `G = H x <a>` with `S = S_H x {1} ∪ {(1, a)}`.
pub fn make_construction_group(k: usize, variant: HVariant) -> Result<(Group, GeneratingSet)> {
    let h = match variant {
        HVariant::FreeAbelian => {
            if k == 0 {
                return Err(Error::NoCentralGenerator);
            }
            Group::free_abelian(k as u32)?
        }
        HVariant::Heisenberg => {
            if k != 1 {
                return Err(Error::InvalidParameter(format!(
                    "the Heisenberg variant has exactly one central generator, got K = {k}"
                )));
            }
            Group::heisenberg()
        }
    };
    let g = Group::product(vec![h, Group::free_abelian(1)?])?;
    let s = symmetric_closure(&g, &g.standard_generators())?;
    Ok((g, s))
}
