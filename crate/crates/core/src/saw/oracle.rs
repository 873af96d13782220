//! Brute-force reference count, kept deliberately naive: explicit element
//! paths, linear-scan self-avoidance, validated group multiplication.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::group::{Element, Group};

/// Largest length the oracle accepts.
pub const ORACLE_MAX_N: usize = 16;

/// `c_n` by direct recursion over explicit walks.
pub fn naive_count_oracle(g: &CayleyGraph, n: usize) -> Result<BigUint> {
    if n > ORACLE_MAX_N {
        return Err(Error::OracleTooLarge {
            n,
            limit: ORACLE_MAX_N,
        });
    }
    let mut steps = Vec::new();
    for s in &g.gens.generators {
        for t in [s.clone(), g.group.inverse(s)?] {
            if t != g.group.identity() && !steps.contains(&t) {
                steps.push(t);
            }
        }
    }
    let mut path = alloc::vec![g.root.clone()];
    Ok(BigUint::from(extend(&g.group, &steps, &mut path, n)?))
}

fn extend(
    group: &Group,
    steps: &[Element],
    path: &mut Vec<Element>,
    remaining: usize,
) -> Result<u64> {
    if remaining == 0 {
        return Ok(1);
    }
    let mut total = 0;
    for s in steps {
        let next = group.multiply(path.last().unwrap(), s)?;
        if path.contains(&next) {
            continue;
        }
        path.push(next);
        total += extend(group, steps, path, remaining - 1)?;
        path.pop();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_checked_values() {
        let z2 = CayleyGraph::parse("Z^2").unwrap();
        assert_eq!(naive_count_oracle(&z2, 3).unwrap(), BigUint::from(36u32));
        for term in ["Z^2", "F_2", "H3 x Z", "Z/2 x Z"] {
            let g = CayleyGraph::parse(term).unwrap();
            assert_eq!(
                naive_count_oracle(&g, 1).unwrap(),
                BigUint::from(g.degree())
            );
        }
        let cylinder = CayleyGraph::parse("Z/3 x Z").unwrap();
        assert_eq!(
            naive_count_oracle(&cylinder, 3).unwrap(),
            BigUint::from(34u32)
        );
        assert!(matches!(
            naive_count_oracle(&z2, 17),
            Err(Error::OracleTooLarge { .. })
        ));
    }
}
