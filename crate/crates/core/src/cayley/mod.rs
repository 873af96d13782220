//! Implicit Cayley graphs, rooted balls and local convergence.

mod ball;
mod iso;

use alloc::vec::Vec;

pub use ball::{ball, ball_with_limit, RootedBall, DEFAULT_BALL_LIMIT};
pub use iso::{labeled_canonical_form, rooted_isomorphic, rooted_isomorphic_exact};

use crate::error::{Error, Result};
use crate::group::{symmetric_closure, Element, GeneratingSet, Group, Part};
use crate::quotient::{central_quotient, ModuliMask};

/// `Cay(G, S)`: vertices are group elements, `g ~ h` iff `g^-1 h ∈ S ∪ S^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    pub group: Group,
    pub gens: GeneratingSet,
    pub root: Element,
}

impl CayleyGraph {
    pub fn new(group: Group, generators: &[Element]) -> Result<Self> {
        let gens = symmetric_closure(&group, generators)?;
        let root = group.identity();
        Ok(CayleyGraph { group, gens, root })
    }

    /// Cayley graph for the standard generators of `group`.
    pub fn standard(group: Group) -> Result<Self> {
        let gens = group.standard_generators();
        Self::new(group, &gens)
    }

    pub fn parse(term: &str) -> Result<Self> {
        Self::standard(Group::parse(term)?)
    }

    /// Same graph rooted at `root`.
    pub fn rooted_at(&self, root: Element) -> Result<Self> {
        self.group.validate(&root)?;
        Ok(CayleyGraph {
            root,
            ..self.clone()
        })
    }

    pub fn degree(&self) -> usize {
        self.gens.degree()
    }

    /// Canonical key: group term, plus the generators when they are not the
    /// standard ones.
    pub fn key(&self) -> alloc::string::String {
        let mut key = self.group.key();
        if self.gens.generators != self.group.standard_generators() {
            key.push_str(" gens=");
            for (i, g) in self.gens.generators.iter().enumerate() {
                if i > 0 {
                    key.push(';');
                }
                key.push_str(&alloc::format!("{g}"));
            }
        }
        if self.root != self.group.identity() {
            key.push_str(&alloc::format!(" root={}", self.root));
        }
        key
    }

    /// `{v s : s ∈ S ∪ S^-1}` in the order of the symmetric closure.
    pub fn neighbors(&self, v: &Element) -> Result<Vec<Element>> {
        self.group.validate(v)?;
        let layout = self.group.layout();
        let mut out: Vec<Element> = Vec::with_capacity(self.degree());
        for s in &self.gens.closure {
            let w = layout.mul(v, s);
            if !out.contains(&w) {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// `Cay(G / <m_i g_i>, S̄)` with the images of this graph's generators.
    pub fn quotient(&self, mask: &ModuliMask) -> Result<Self> {
        let group = central_quotient(&self.group, mask)?;
        let images: Vec<Element> = self
            .gens
            .generators
            .iter()
            .map(|g| group.project(g))
            .collect();
        let root = group.project(&self.root);
        let gens = symmetric_closure(&group, &images)?;
        Ok(CayleyGraph { group, gens, root })
    }
}

/// Cartesian product with `Cay(Z, {1})`: the group `G x Z` generated by the
/// lifted generators of `g` and the new line.
pub fn product_with_line(g: &CayleyGraph) -> Result<CayleyGraph> {
    let group = Group::product(alloc::vec![g.group.clone(), Group::free_abelian(1)?])?;
    let lift = |e: &Element, a: i64| {
        let mut parts = e.parts.clone();
        parts.push(Part::Int(a));
        Element::new(parts)
    };
    let mut generators: Vec<Element> = g.gens.generators.iter().map(|e| lift(e, 0)).collect();
    generators.push(lift(&g.group.identity(), 1));
    let gens = symmetric_closure(&group, &generators)?;
    Ok(CayleyGraph {
        root: lift(&g.root, 0),
        group,
        gens,
    })
}

/// Least `n0` such that `B_n(r) ≅ B_inf(r)` for every `n` in `n0..=horizon`,
/// where `indices = first..=horizon`.
pub fn local_convergence_radius<F>(
    family: F,
    indices: core::ops::RangeInclusive<usize>,
    limit: &CayleyGraph,
    r: usize,
) -> Result<usize>
where
    F: Fn(usize) -> Result<CayleyGraph>,
{
    let horizon = *indices.end();
    let target = ball(limit, r)?;
    let mut n0 = None;
    for n in indices.rev() {
        if rooted_isomorphic(&ball(&family(n)?, r)?, &target) {
            n0 = Some(n);
        } else {
            break;
        }
    }
    n0.ok_or(Error::NoStabilization { horizon })
}
