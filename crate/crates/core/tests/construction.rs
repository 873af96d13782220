use num_rational::BigRational;
use sawcantor_core::driver::{
    audit, build, evaluate_word, injectivity_witness, order_check, BinaryWord, DriverConfig,
    InfiniteWordSpec,
};
use sawcantor_core::quotient::{si_hypothesis_check, CentralSubgroupSpec, ModuliMask};
use sawcantor_core::{count_saws, mu_bounds, Budget, HVariant, Sequential};

fn word(s: &str) -> BinaryWord {
    s.parse().unwrap()
}

#[test]
fn depth_two_over_z3() {
    let counter = Sequential::default();
    let cfg = DriverConfig::new(2, HVariant::FreeAbelian, 7);
    let s = build(cfg.clone(), 2, &counter).unwrap();
    assert_eq!(s.nodes.len(), 7);
    assert_eq!(s.separators.len(), 3);
    assert!(audit(&s).passed(), "{:?}", audit(&s));
    let order = order_check(&s);
    assert!(order.passed(), "{:?}", order.violations);
    assert_eq!(order.entries.len(), 7);
    assert_eq!(order.pairs_checked, 21);

    // every smaller modulus fails (a), (b) or (c) when recomputed from scratch
    let b = Budget::default();
    for (level, &m_n) in s.moduli.iter().enumerate() {
        for m in 2..m_n {
            let mut some_fails = false;
            for w in BinaryWord::all_of_length(level) {
                let parent = &s.nodes[&w];
                let spec =
                    CentralSubgroupSpec::new(parent.graph.group.clone(), vec![(level, m)]).unwrap();
                if !si_hypothesis_check(&parent.graph.group, &parent.graph.gens, &spec).unwrap() {
                    some_fails = true;
                    break;
                }
                let child = parent
                    .graph
                    .quotient(&ModuliMask::single(level, m).unwrap())
                    .unwrap();
                let t = count_saws(&child, cfg.n_max, &b).unwrap();
                let x = mu_bounds(&t, cfg.digits).unwrap().best().to_rational();
                let strict = t
                    .counts
                    .iter()
                    .zip(&parent.table.counts)
                    .any(|(q, p)| q < p);
                let below = x < parent.statistic().to_rational() - &cfg.margin;
                let above = (0..level)
                    .filter(|&j| w.letter(j) == Some(false))
                    .all(|j| x > s.separators[&w.prefix(j)].to_rational() + &cfg.margin);
                if !(strict && below && above) {
                    some_fails = true;
                    break;
                }
            }
            assert!(some_fails, "m = {m} would have worked at level {level}");
        }
    }

    // G_{ω0} = G_ω and the masks grow along 1-edges
    for w in ["", "0", "1"] {
        let w = word(w);
        assert_eq!(s.nodes[&w.child(false)].graph, s.nodes[&w].graph);
    }
    assert_eq!(
        s.nodes[&word("11")].mask(),
        ModuliMask::new(vec![Some(s.moduli[0]), Some(s.moduli[1])]).unwrap()
    );

    let words: Vec<InfiniteWordSpec> = ["(0)", "1", "01", "11", "(1)", "1(0)", "0(1)"]
        .iter()
        .map(|w| w.parse().unwrap())
        .collect();
    for w in &words {
        let e = evaluate_word(&s, w, 2).unwrap();
        assert!(e.estimates.windows(2).all(|p| p[1] <= p[0]));
        for v in &words {
            let r = injectivity_witness(&s, w, v, 2);
            if w.truncate(2) == v.truncate(2) {
                assert!(r.is_err());
            } else {
                let r = r.unwrap();
                assert!(r.passed(), "{w} vs {v}: {r:?}");
            }
        }
    }
    // disagreement at the last constructed index: a single separator between them
    let r = injectivity_witness(&s, &words[0], &words[2], 2).unwrap();
    assert_eq!(r.first_disagreement, 1);
    assert_eq!(r.links.len(), 4);
}

#[test]
fn heisenberg_variant_single_level() {
    let counter = Sequential::default();
    let s = build(DriverConfig::new(1, HVariant::Heisenberg, 6), 1, &counter).unwrap();
    assert!(audit(&s).passed());
    assert!(order_check(&s).passed());
    // z = [x, y] has word length 4, so no power of z lies in B(2)
    assert_eq!(s.moduli, vec![2]);
}

#[test]
fn larger_margins_push_moduli_or_fail() {
    let counter = Sequential::default();
    let mut cfg = DriverConfig::new(1, HVariant::FreeAbelian, 6);
    cfg.margin = BigRational::from_integer(1.into());
    assert!(matches!(
        build(cfg, 1, &counter),
        Err(sawcantor_core::Error::LevelConstructionFailure { .. })
    ));
}
