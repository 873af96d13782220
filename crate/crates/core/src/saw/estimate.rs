//! Fekete upper bounds `c_n^{1/n}` and ratio estimates, in exact decimal
//! arithmetic.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Zero};

use super::SawCountTable;
use crate::error::{Error, Result};

pub const DEFAULT_DIGITS: u32 = 12;

/// Nonnegative decimal `units / 10^digits`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decimal {
    pub units: BigUint,
    pub digits: u32,
}

impl Decimal {
    /// `x^{1/n}` rounded to nearest at `digits` decimals (ties away from zero).
    pub fn nth_root(x: &BigUint, n: u32, digits: u32) -> Decimal {
        let scale = BigUint::from(10u32).pow(digits * n);
        let target = x * &scale;
        let floor = target.nth_root(n);
        // round up iff (floor + 1/2)^n <= target, i.e. (2 floor + 1)^n <= 2^n target
        let twice = &floor * 2u32 + 1u32;
        let up = Pow::pow(&twice, n) <= target << n as usize;
        Decimal {
            units: if up { floor + 1u32 } else { floor },
            digits,
        }
    }

    /// `num / den` rounded to nearest at `digits` decimals.
    pub fn ratio(num: &BigUint, den: &BigUint, digits: u32) -> Decimal {
        let scaled = num * BigUint::from(10u32).pow(digits);
        let (q, r) = scaled.div_rem(den);
        let up = r * 2u32 >= *den;
        Decimal {
            units: if up { q + 1u32 } else { q },
            digits,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.units.clone()),
            BigInt::from(BigUint::from(10u32).pow(self.digits)),
        )
    }

    /// Approximate `f64`, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        let s = alloc::format!("{self}");
        s.parse().unwrap_or(f64::NAN)
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_rational().cmp(&other.to_rational())
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.units.to_str_radix(10);
        let d = self.digits as usize;
        if d == 0 {
            return f.write_str(&s);
        }
        let padded = if s.len() <= d {
            let mut p = alloc::string::String::from("0").repeat(d + 1 - s.len());
            p.push_str(&s);
            p
        } else {
            s
        };
        let (int, frac) = padded.split_at(padded.len() - d);
        write!(f, "{int}.{frac}")
    }
}

/// Upper bounds for the connective constant from one count table.
///
/// `upper_bounds[k]` and `running_min[k]` refer to `n = k + 1`;
/// `ratio_estimates[k]` is `c_{k+1} / c_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuEstimate {
    pub digits: u32,
    pub n_max: usize,
    /// `c_n^{1/n}`: each is a rigorous upper bound (up to rounding).
    pub upper_bounds: Vec<Decimal>,
    /// `min_{k <= n} c_k^{1/k}`, selected exactly before rounding.
    pub running_min: Vec<Decimal>,
    /// Length achieving each running minimum.
    pub running_min_at: Vec<usize>,
    /// `c_{n+1} / c_n`: heuristic point estimates, never bounds.
    pub ratio_estimates: Vec<Decimal>,
}

impl MuEstimate {
    /// The best rigorous bound, `min_{n <= N} c_n^{1/n}`.
    pub fn best(&self) -> &Decimal {
        self.running_min.last().expect("n_max >= 1")
    }

    pub fn running_min_is_monotone(&self) -> bool {
        self.running_min.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Computes `c_n^{1/n}`, its running minimum and the ratios `c_{n+1}/c_n`.
pub fn mu_bounds(table: &SawCountTable, digits: u32) -> Result<MuEstimate> {
    let c = &table.counts;
    if c.len() < 2 {
        return Err(Error::InvalidParameter("table needs n_max >= 1".into()));
    }
    if let Some(n) = c.iter().position(Zero::is_zero) {
        return Err(Error::FiniteGraph { n });
    }
    let n_max = c.len() - 1;
    let mut upper_bounds = Vec::with_capacity(n_max);
    let mut running_min = Vec::with_capacity(n_max);
    let mut running_min_at = Vec::with_capacity(n_max);
    let mut best = 1usize;
    for n in 1..=n_max {
        upper_bounds.push(Decimal::nth_root(&c[n], n as u32, digits));
        // c_n^{1/n} < c_b^{1/b}  <=>  c_n^b < c_b^n
        if n > 1 && Pow::pow(&c[n], best as u32) < Pow::pow(&c[best], n as u32) {
            best = n;
        }
        running_min_at.push(best);
        running_min.push(upper_bounds[best - 1].clone());
    }
    let ratio_estimates = (0..n_max)
        .map(|n| Decimal::ratio(&c[n + 1], &c[n], digits))
        .collect();
    Ok(MuEstimate {
        digits,
        n_max,
        upper_bounds,
        running_min,
        running_min_at,
        ratio_estimates,
    })
}
