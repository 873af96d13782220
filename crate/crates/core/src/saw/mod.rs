//! Exact self-avoiding walk counts `c_n` and what they certify.

mod engine;
mod estimate;
mod oracle;

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use engine::{Budget, Engine, Plan, Prefix};
pub use estimate::{mu_bounds, Decimal, MuEstimate, DEFAULT_DIGITS};
pub use oracle::{naive_count_oracle, ORACLE_MAX_N};

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::quotient::{si_hypothesis_check, CentralSubgroupSpec, ModuliMask};

/// Exact counts `c_0 ..= c_N` for one rooted graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SawCountTable {
    pub graph_key: String,
    pub counts: Vec<BigUint>,
    /// The length that was asked for; `counts` is shorter when truncated.
    pub requested_n_max: usize,
}

impl SawCountTable {
    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn truncated(&self) -> bool {
        self.n_max() < self.requested_n_max
    }

    /// `c_0 = 1`, `c_1 = d`, `c_2 = d (d - 1)` for a simple `d`-regular graph.
    pub fn check_low_order(&self, degree: usize) -> core::result::Result<(), String> {
        let expected = [
            BigUint::one(),
            BigUint::from(degree),
            BigUint::from(degree * degree.saturating_sub(1)),
        ];
        for (n, want) in expected.iter().enumerate() {
            if let Some(c) = self.counts.get(n) {
                if c != want {
                    return Err(alloc::format!("c_{n} = {c}, expected {want}"));
                }
            }
        }
        Ok(())
    }
}

/// Something that produces count tables: sequential here, parallel and
/// cached in the std companion crate.
pub trait SawCounter {
    fn count(&self, g: &CayleyGraph, n_max: usize) -> Result<SawCountTable>;
}

/// Single-threaded counter.
#[derive(Debug, Clone, Default)]
pub struct Sequential {
    pub budget: Budget,
}

impl SawCounter for Sequential {
    fn count(&self, g: &CayleyGraph, n_max: usize) -> Result<SawCountTable> {
        count_saws(g, n_max, &self.budget)
    }
}

/// Exact `c_0 ..= c_{n_max}`, run sequentially.
pub fn count_saws(g: &CayleyGraph, n_max: usize, budget: &Budget) -> Result<SawCountTable> {
    count_saws_with(g, n_max, budget, |engine, tasks| {
        let mut total = alloc::vec![0u64; engine.n_max() + 1];
        for t in tasks {
            for (acc, c) in total.iter_mut().zip(engine.run(t)?) {
                *acc += c;
            }
        }
        Ok(total)
    })
}

/// Exact counts with a caller-supplied task runner. The runner returns the
/// per-length sums over all tasks; summation is exact so any schedule gives
/// the same table.
///
/// When the budget interrupts the enumeration, shorter lengths are retried
/// and the returned table is truncated.
pub fn count_saws_with<R>(
    g: &CayleyGraph,
    n_max: usize,
    budget: &Budget,
    runner: R,
) -> Result<SawCountTable>
where
    R: Fn(&Engine, &[Prefix]) -> Result<Vec<u64>>,
{
    if n_max == 0 {
        return Err(Error::InvalidParameter(
            "n_max must be at least 1".to_string(),
        ));
    }
    let mut n = n_max;
    loop {
        let engine = Engine::new(g, n, budget);
        let plan = engine.plan(budget.prefix_depth.max(1));
        let tail = if budget.stopped() {
            Err(Error::Interrupted)
        } else {
            runner(&engine, &plan.tasks)
        };
        match tail {
            Ok(tail) => {
                let mut counts: Vec<BigUint> = tail.iter().map(|&c| BigUint::from(c)).collect();
                for (i, &h) in plan.head_counts.iter().enumerate() {
                    counts[i] += h;
                }
                return Ok(SawCountTable {
                    graph_key: g.key(),
                    counts,
                    requested_n_max: n_max,
                });
            }
            Err(Error::Interrupted) if budget.stopped() || n < plan.head_counts.len() => {
                // only the split prefix enumeration finished
                let counts = plan.head_counts.iter().map(|&c| BigUint::from(c)).collect();
                return Ok(SawCountTable {
                    graph_key: g.key(),
                    counts,
                    requested_n_max: n_max,
                });
            }
            Err(Error::Interrupted) => n -= 1,
            Err(e) => return Err(e),
        }
    }
}

/// Result of [`fekete_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeketeReport {
    pub pairs_checked: usize,
    /// Pairs `(m, n)`, `1 <= m <= n`, with `c_{m+n} > c_m c_n`.
    pub violations: Vec<(usize, usize)>,
}

impl FeketeReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks submultiplicativity `c_{m+n} <= c_m c_n` over the whole table.
pub fn fekete_check(table: &SawCountTable) -> FeketeReport {
    let c = &table.counts;
    let top = table.n_max();
    let mut report = FeketeReport {
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for m in 1..=top {
        for n in m..=top - m {
            report.pairs_checked += 1;
            if c[m + n] > &c[m] * &c[n] {
                report.violations.push((m, n));
            }
        }
    }
    report
}

/// First length where the quotient has strictly fewer SAWs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictnessWitness {
    pub n: usize,
    pub base_count: BigUint,
    pub quotient_count: BigUint,
}

/// The extra mask that turns `base` into `quotient`, checking that the
/// quotient graph carries the images of the base generators.
pub fn quotient_mask(base: &CayleyGraph, quotient: &CayleyGraph) -> Result<ModuliMask> {
    let not_quotient = || Error::NotAQuotient {
        base: base.key(),
        quotient: quotient.key(),
    };
    let (base_group, base_mask) = match base.group.quotient_parts() {
        Some((g, m)) => (g, m.clone()),
        None => (base.group.clone(), ModuliMask::empty()),
    };
    let (q_group, q_mask) = match quotient.group.quotient_parts() {
        Some((g, m)) => (g, m.clone()),
        None => (quotient.group.clone(), ModuliMask::empty()),
    };
    if base_group != q_group {
        return Err(not_quotient());
    }
    let extra = q_mask.difference(&base_mask).ok_or_else(not_quotient)?;
    let images: Vec<_> = base
        .gens
        .generators
        .iter()
        .map(|g| quotient.group.project(g))
        .collect();
    if images != quotient.gens.generators {
        return Err(not_quotient());
    }
    Ok(extra)
}

/// Least `n <= n_max` with `c_n(quotient) < c_n(base)`, or `None` when the
/// counts agree up to `n_max` (inconclusive, not a refutation).
///
/// Requires `quotient = base / N` with `N` central, nontrivial and meeting
/// `B(2)` only at the identity.
pub fn strictness_witness(
    counter: &dyn SawCounter,
    base: &CayleyGraph,
    quotient: &CayleyGraph,
    n_max: usize,
) -> Result<Option<StrictnessWitness>> {
    let extra = quotient_mask(base, quotient)?;
    let spec = CentralSubgroupSpec::from_mask(base.group.clone(), &extra)?;
    if !si_hypothesis_check(&base.group, &base.gens, &spec)? {
        return Err(Error::RadiusTwoViolated);
    }
    let b = counter.count(base, n_max)?;
    let q = counter.count(quotient, n_max)?;
    Ok(first_strict_drop(&b, &q))
}

/// First index where `quotient` counts fall below `base` counts.
pub fn first_strict_drop(
    base: &SawCountTable,
    quotient: &SawCountTable,
) -> Option<StrictnessWitness> {
    base.counts
        .iter()
        .zip(&quotient.counts)
        .enumerate()
        .find(|(_, (b, q))| q < b)
        .map(|(n, (b, q))| StrictnessWitness {
            n,
            base_count: b.clone(),
            quotient_count: q.clone(),
        })
}

/// Lengths `n` where `c_n(quotient) > c_n(base)`; must be empty.
pub fn domination_violations(base: &SawCountTable, quotient: &SawCountTable) -> Vec<usize> {
    base.counts
        .iter()
        .zip(&quotient.counts)
        .enumerate()
        .filter(|(_, (b, q))| q > b)
        .map(|(n, _)| n)
        .collect()
}

/// `true` when no count is zero, i.e. walks of every computed length exist.
pub fn all_positive(table: &SawCountTable) -> bool {
    table.counts.iter().all(|c| !c.is_zero())
}
