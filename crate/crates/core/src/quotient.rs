//! Central quotients `G / <m_i g_i : i in mask>` and membership in central
//! subgroups of that shape.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{Element, GeneratingSet, Group, Term};

/// Moduli aligned with the central basis; `None` leaves `g_i` alone.
///
/// Trailing `None` entries are trimmed so that equal masks compare equal.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuliMask {
    entries: Vec<Option<u64>>,
}

impl ModuliMask {
    pub fn new(mut entries: Vec<Option<u64>>) -> Result<Self> {
        if let Some(m) = entries.iter().flatten().find(|&&m| m < 2) {
            return Err(Error::InvalidModulus(*m));
        }
        while entries.last() == Some(&None) {
            entries.pop();
        }
        Ok(ModuliMask { entries })
    }

    pub fn empty() -> Self {
        ModuliMask::default()
    }

    /// Mask reducing only `g_index` modulo `modulus`.
    pub fn single(index: usize, modulus: u64) -> Result<Self> {
        let mut entries = alloc::vec![None; index + 1];
        entries[index] = Some(modulus);
        ModuliMask::new(entries)
    }

    pub fn entries(&self) -> &[Option<u64>] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<u64> {
        self.entries.get(i).copied().flatten()
    }

    /// `(index, modulus)` for every masked index, in increasing order.
    pub fn moduli(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.map(|m| (i, m)))
    }

    /// The mask word over `{0,1}`.
    pub fn word(&self) -> Vec<bool> {
        self.entries.iter().map(Option::is_some).collect()
    }

    /// Union of two masks on disjoint indices.
    pub fn union(&self, other: &ModuliMask) -> Result<ModuliMask> {
        let len = self.entries.len().max(other.entries.len());
        let mut entries = alloc::vec![None; len];
        for (i, m) in self.moduli().chain(other.moduli()) {
            if entries[i].is_some() {
                return Err(Error::AlreadyQuotiented(i));
            }
            entries[i] = Some(m);
        }
        ModuliMask::new(entries)
    }

    /// Entries of `self` not present in `base`, if `base` is a sub-mask.
    pub fn difference(&self, base: &ModuliMask) -> Option<ModuliMask> {
        let mut entries = self.entries.clone();
        for (i, m) in base.moduli() {
            if self.get(i) != Some(m) {
                return None;
            }
            entries[i] = None;
        }
        ModuliMask::new(entries).ok()
    }
}

/// Quotients `group` by `<m_i g_i>` for every masked index `i`.
///
/// Quotienting a quotient merges the masks, so `quot(quot(G; A); B)` and
/// `quot(G; A ∪ B)` are the same descriptor.
pub fn central_quotient(group: &Group, mask: &ModuliMask) -> Result<Group> {
    let rank = group.central_rank();
    if let Some((index, _)) = mask.moduli().find(|(i, _)| *i >= rank) {
        return Err(Error::MaskIndexOutOfRange { index, rank });
    }
    if mask.is_empty() {
        return Ok(group.clone());
    }
    let (base, merged) = match group.term() {
        Term::Quotient(base, old) => ((**base).clone(), old.union(mask)?),
        t => (t.clone(), mask.clone()),
    };
    Ok(Group::from_term(Term::Quotient(
        alloc::boxed::Box::new(base),
        merged,
    )))
}

/// A central subgroup `<m_i g_i : (i, m_i) in generators>` of `group`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSubgroupSpec {
    pub group: Group,
    pub generators: Vec<(usize, u64)>,
}

impl CentralSubgroupSpec {
    pub fn new(group: Group, generators: Vec<(usize, u64)>) -> Result<Self> {
        let rank = group.central_rank();
        if let Some(&(index, _)) = generators.iter().find(|(i, _)| *i >= rank) {
            return Err(Error::MaskIndexOutOfRange { index, rank });
        }
        Ok(CentralSubgroupSpec { group, generators })
    }

    /// The subgroup `N` whose quotient `mask` describes.
    pub fn from_mask(group: Group, mask: &ModuliMask) -> Result<Self> {
        Self::new(group, mask.moduli().collect())
    }

    /// The trivial subgroup.
    pub fn trivial(group: Group) -> Self {
        CentralSubgroupSpec {
            group,
            generators: Vec::new(),
        }
    }

    /// Generator of the cyclic group `<g_i>` contained in this subgroup,
    /// as `gcd` of the multiples (0 when `g_i` contributes nothing).
    fn step(&self, i: usize) -> u64 {
        self.generators
            .iter()
            .filter(|(j, _)| *j == i)
            .fold(0u64, |acc, (_, m)| acc.gcd(m))
    }

    pub fn is_trivial(&self) -> bool {
        let layout = self.group.layout();
        self.generators
            .iter()
            .all(|&(i, m)| match layout.central_modulus(i) {
                None => m == 0,
                Some(modulus) => m % modulus == 0,
            })
    }
}

/// Whether `g` lies in the central subgroup described by `spec`.
///
/// `g` must be `∏ g_i^{a_i}` with `m_i | a_i` on the subgroup's indices and
/// `a_i = 0` elsewhere; on a coordinate already reduced modulo `M` the
/// condition becomes `gcd(m_i, M) | a_i`.
pub fn subgroup_member(g: &Element, spec: &CentralSubgroupSpec) -> bool {
    let layout = spec.group.layout();
    if layout.validate(g).is_err() {
        return false;
    }
    let central: BTreeSet<usize> = layout.central.iter().copied().collect();
    let id = layout.identity();
    let noncentral_ok = g
        .parts
        .iter()
        .zip(&id.parts)
        .enumerate()
        .all(|(fi, (p, e))| {
            if central.contains(&fi) {
                // Heisenberg factors must still have x = y = 0.
                match (p, e) {
                    (crate::group::Part::Heis([x, y, _]), _) => *x == 0 && *y == 0,
                    _ => true,
                }
            } else {
                p == e
            }
        });
    if !noncentral_ok {
        return false;
    }
    (0..layout.central.len()).all(|i| {
        let a = layout.central_value(g, i);
        let step = spec.step(i);
        let step = match layout.central_modulus(i) {
            Some(modulus) => step.gcd(&modulus),
            None => step,
        };
        if step == 0 {
            a == 0
        } else {
            a.rem_euclid(step as i64) == 0
        }
    })
}

/// Outcome of [`stabilization_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizationReport {
    /// Least `n0` with `N_n ∩ F = N_inf ∩ F` for every sampled `n0 <= n <= horizon`.
    pub n0: usize,
    /// The window is finite: stabilization is only verified up to here.
    pub horizon: usize,
    pub limit_intersection: Vec<Element>,
    /// `(n, N_n ∩ F)` for every sampled `n` whose intersection differs.
    pub mismatches: Vec<(usize, Vec<Element>)>,
}

/// Finds where `N_n ∩ F` settles on `N_inf ∩ F`, for `n` in `0..=horizon`.
pub fn stabilization_check<Fam>(
    family: Fam,
    limit: &CentralSubgroupSpec,
    set: &[Element],
    horizon: usize,
) -> Result<StabilizationReport>
where
    Fam: Fn(usize) -> Result<CentralSubgroupSpec>,
{
    let hits = |spec: &CentralSubgroupSpec| -> Vec<Element> {
        set.iter()
            .filter(|e| subgroup_member(e, spec))
            .cloned()
            .collect()
    };
    let limit_intersection = hits(limit);
    let mut mismatches = Vec::new();
    for n in 0..=horizon {
        let h = hits(&family(n)?);
        if h != limit_intersection {
            mismatches.push((n, h));
        }
    }
    let n0 = match mismatches.last() {
        None => 0,
        Some((n, _)) if *n == horizon => return Err(Error::NoStabilization { horizon }),
        Some((n, _)) => n + 1,
    };
    Ok(StabilizationReport {
        n0,
        horizon,
        limit_intersection,
        mismatches,
    })
}

/// `Z_F = { j : g_i^j ∈ F }` and the bound `max |j| + 1` past which
/// `<k g_i> ∩ F ⊆ {1}`.
pub fn central_line_hits(group: &Group, i: usize, set: &[Element]) -> (Vec<i64>, u64) {
    let layout = group.layout();
    let mut hits: Vec<i64> = Vec::new();
    for e in set {
        let pure = layout.central_power(i, layout.central_value(e, i)) == *e;
        if pure && layout.central_modulus(i).is_none() {
            hits.push(layout.central_value(e, i));
        }
    }
    hits.sort_unstable();
    let bound = hits.iter().map(|j| j.unsigned_abs()).max().unwrap_or(0) + 1;
    (hits, bound)
}

/// Elements of the ball of radius 2 around the identity.
pub(crate) fn ball_two(group: &Group, gens: &GeneratingSet) -> Vec<Element> {
    let layout = group.layout();
    let mut ball = BTreeSet::new();
    ball.insert(layout.identity());
    for s in &gens.closure {
        ball.insert(s.clone());
        for t in &gens.closure {
            ball.insert(layout.mul(s, t));
        }
    }
    ball.into_iter().collect()
}

/// Whether `B(2) ∩ N = {1}` in `Cay(group, gens)`.
pub fn si_hypothesis_check(
    group: &Group,
    gens: &GeneratingSet,
    spec: &CentralSubgroupSpec,
) -> Result<bool> {
    if spec.is_trivial() {
        return Err(Error::TrivialSubgroup);
    }
    let id = group.identity();
    Ok(ball_two(group, gens)
        .iter()
        .filter(|e| **e != id)
        .all(|e| !subgroup_member(e, spec)))
}
