use num_bigint::BigUint;
use proptest::prelude::*;
use sawcantor_core::quotient::{
    central_quotient, subgroup_member, CentralSubgroupSpec, ModuliMask,
};
use sawcantor_core::{count_saws, product_with_line, Budget, CayleyGraph, Element, Group};

const GROUPS: &[&str] = &[
    "Z^2 x Z",
    "H3 x Z",
    "F_2",
    "Z/3 x Z",
    "quot(H3 x Z; mask=1; m=[4])",
    "Z^3",
    "F_2 x Z/2 x Z",
];

fn group(i: usize) -> Group {
    Group::parse(GROUPS[i]).unwrap()
}

/// A product of at most 12 generators or their inverses.
fn word_element(g: &Group, letters: &[(usize, bool)]) -> Element {
    let gens = g.standard_generators();
    letters.iter().fold(g.identity(), |acc, &(i, inv)| {
        let s = &gens[i % gens.len()];
        let s = if inv {
            g.inverse(s).unwrap()
        } else {
            s.clone()
        };
        g.multiply(&acc, &s).unwrap()
    })
}

fn letters() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..8, any::<bool>()), 0..12)
}

fn term() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("Z".to_string()),
        (2u32..5).prop_map(|k| format!("Z^{k}")),
        (2u64..9).prop_map(|m| format!("Z/{m}")),
        (1u32..4).prop_map(|k| format!("F_{k}")),
        Just("H3".to_string()),
    ];
    prop::collection::vec(leaf, 1..4).prop_map(|fs| fs.join(" x "))
}

proptest! {
    #[test]
    fn group_laws(gi in 0..GROUPS.len(), a in letters(), b in letters(), c in letters()) {
        let g = group(gi);
        let (a, b, c) = (word_element(&g, &a), word_element(&g, &b), word_element(&g, &c));
        let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(g.multiply(&a, &g.identity()).unwrap(), a.clone());
        prop_assert_eq!(g.multiply(&g.identity(), &a).unwrap(), a.clone());
        prop_assert_eq!(g.multiply(&a, &g.inverse(&a).unwrap()).unwrap(), g.identity());
        prop_assert_eq!(g.multiply(&g.inverse(&a).unwrap(), &a).unwrap(), g.identity());
    }

    #[test]
    fn central_basis_commutes(gi in 0..GROUPS.len(), a in letters(), p in -6i64..6) {
        let g = group(gi);
        let a = word_element(&g, &a);
        for z in g.central_basis() {
            let zp = (0..p.unsigned_abs()).fold(g.identity(), |acc, _| {
                let s = if p < 0 { g.inverse(&z).unwrap() } else { z.clone() };
                g.multiply(&acc, &s).unwrap()
            });
            prop_assert_eq!(g.multiply(&a, &zp).unwrap(), g.multiply(&zp, &a).unwrap());
        }
    }

    #[test]
    fn exponent_vectors_are_injective(
        a in prop::collection::vec(-5i64..=5, 3),
        b in prop::collection::vec(-5i64..=5, 3),
    ) {
        for term in ["Z^3", "Z^3 x Z", "Z^2 x H3 x Z"] {
            let g = Group::parse(term).unwrap();
            let k = g.central_rank();
            let basis = g.central_basis();
            let power = |v: &[i64]| {
                v.iter().take(k).zip(&basis).fold(g.identity(), |acc, (&e, z)| {
                    (0..e.unsigned_abs()).fold(acc, |acc, _| {
                        let s = if e < 0 { g.inverse(z).unwrap() } else { z.clone() };
                        g.multiply(&acc, &s).unwrap()
                    })
                })
            };
            prop_assert_eq!(power(&a) == power(&b), a[..k] == b[..k]);
        }
    }

    #[test]
    fn terms_round_trip(t in term()) {
        let g = Group::parse(&t).unwrap();
        let again = Group::parse(&g.key()).unwrap();
        prop_assert_eq!(&again, &g);
        prop_assert_eq!(again.key(), g.key());
        let spaced: String = t.chars().flat_map(|c| [c, ' ']).collect();
        prop_assert_eq!(Group::parse(&spaced).unwrap(), g);
    }

    #[test]
    fn membership_matches_enumeration(
        m0 in 2u64..6, m1 in 2u64..6, use0 in any::<bool>(), use1 in any::<bool>(),
        a in prop::collection::vec(-12i64..=12, 3), x in -1i64..=1,
    ) {
        // Z^2 x Z: central coordinates 0 and 1, the last Z is the line.
        let g = Group::parse("Z^2 x Z").unwrap();
        let mut gens = vec![];
        if use0 { gens.push((0usize, m0)); }
        if use1 { gens.push((1usize, m1)); }
        let spec = CentralSubgroupSpec::new(g.clone(), gens.clone()).unwrap();
        let e = Element::ints(&[a[0], a[1], a[2] * x.abs()]);
        // all sums j_0 m_0 g_0 + j_1 m_1 g_1 with |j| <= 12
        let mut brute = false;
        for j0 in -12i64..=12 {
            for j1 in -12i64..=12 {
                let v0 = if use0 { j0 * m0 as i64 } else { 0 };
                let v1 = if use1 { j1 * m1 as i64 } else { 0 };
                if (j0 != 0 && !use0) || (j1 != 0 && !use1) { continue; }
                brute |= Element::ints(&[v0, v1, 0]) == e;
            }
        }
        prop_assert_eq!(subgroup_member(&e, &spec), brute);
    }

    #[test]
    fn membership_in_reduced_coordinates(big in 2u64..9, m in 2u64..9, a in 0i64..9) {
        // <m g_0> inside Z/big: the subgroup generated by gcd(m, big).
        let base = Group::parse("Z x Z").unwrap();
        let q = central_quotient(&base, &ModuliMask::single(0, big).unwrap()).unwrap();
        let a = a.rem_euclid(big as i64);
        let spec = CentralSubgroupSpec::new(q.clone(), vec![(0, m)]).unwrap();
        let brute = (0..big as i64).any(|j| (j * m as i64).rem_euclid(big as i64) == a);
        prop_assert_eq!(subgroup_member(&Element::ints(&[a, 0]), &spec), brute);
    }

    #[test]
    fn quotients_commute(m0 in 2u64..8, m1 in 2u64..8, m2 in 2u64..8) {
        let g = Group::parse("Z^2 x H3 x Z").unwrap();
        let a = ModuliMask::new(vec![Some(m0), None, Some(m2)]).unwrap();
        let b = ModuliMask::single(1, m1).unwrap();
        let ab = central_quotient(&central_quotient(&g, &a).unwrap(), &b).unwrap();
        let ba = central_quotient(&central_quotient(&g, &b).unwrap(), &a).unwrap();
        let once = central_quotient(&g, &a.union(&b).unwrap()).unwrap();
        prop_assert_eq!(&ab, &once);
        prop_assert_eq!(&ba, &once);
        prop_assert!(central_quotient(&once, &b).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counts_do_not_depend_on_the_root(gi in 0..GROUPS.len(), a in letters()) {
        let g = CayleyGraph::standard(group(gi)).unwrap();
        let root = word_element(&g.group, &a);
        let moved = g.rooted_at(root).unwrap();
        let b = Budget::default();
        prop_assert_eq!(count_saws(&g, 5, &b).unwrap().counts, count_saws(&moved, 5, &b).unwrap().counts);
    }
}

fn counts(g: &CayleyGraph, n: usize) -> Vec<BigUint> {
    count_saws(g, n, &Budget::default()).unwrap().counts
}

#[test]
fn product_with_the_line_dominates() {
    for term in GROUPS.iter().chain(&["Z", "Z/2", "Z/3", "Z/5 x Z^2"]) {
        let g = CayleyGraph::parse(term).unwrap();
        let n = if g.degree() > 5 { 5 } else { 7 };
        let base = counts(&g, n);
        let prod = counts(&product_with_line(&g).unwrap(), n);
        for k in 0..=n {
            assert!(prod[k] >= base[k], "{term} at {k}");
        }
        assert!(prod[1] > base[1]);
    }
}

#[test]
fn quotients_never_have_more_walks() {
    let pairs: &[(&str, &[Option<u64>])] = &[
        ("Z^2", &[Some(2)]),
        ("Z^2", &[Some(3)]),
        ("Z^2", &[None, Some(4)]),
        ("Z^3", &[Some(3), Some(5)]),
        ("Z^2 x Z", &[Some(3), Some(4)]),
        ("H3 x Z", &[Some(2)]),
        ("H3 x Z", &[Some(5)]),
        ("Z/3 x Z^2", &[Some(3)]),
    ];
    for (term, mask) in pairs {
        let base = CayleyGraph::parse(term).unwrap();
        let q = base
            .quotient(&ModuliMask::new(mask.to_vec()).unwrap())
            .unwrap();
        let (cb, cq) = (counts(&base, 7), counts(&q, 7));
        for n in 0..=7 {
            assert!(
                cq[n] <= cb[n],
                "{term} {mask:?} at {n}: {} > {}",
                cq[n],
                cb[n]
            );
        }
    }
}
