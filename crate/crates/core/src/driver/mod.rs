//! The tree of quotients `G_ω`, the moduli `m_n` and the separators
//! `b_{ω⋆}`, built level by level and checked at estimate level.
//!
//! Every comparison uses one statistic: the running minimum of
//! `c_n^{1/n}` up to the configured `n_max`, computed for the graph `𝒢_ω`
//! itself. The same statistic for `𝒢_ω x 𝒵` is recorded alongside.

mod word;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use word::{BinaryWord, InfiniteWordSpec, Symbol, Tail};

use crate::cayley::{product_with_line, CayleyGraph};
use crate::error::{Error, Result};
use crate::group::{make_construction_group, HVariant};
use crate::quotient::{si_hypothesis_check, CentralSubgroupSpec, ModuliMask};
use crate::saw::{
    domination_violations, first_strict_drop, mu_bounds, Decimal, MuEstimate, SawCountTable,
    SawCounter, StrictnessWitness, DEFAULT_DIGITS,
};

pub const DEFAULT_M_LIMIT: u64 = 64;

/// `10^-3`.
pub fn default_margin() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(1000))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DriverConfig {
    /// Number of central generators available, hence the maximal depth.
    pub k: usize,
    pub variant: HVariant,
    pub n_max: usize,
    pub margin: BigRational,
    pub digits: u32,
    pub m_limit: u64,
}

impl DriverConfig {
    pub fn new(k: usize, variant: HVariant, n_max: usize) -> Self {
        DriverConfig {
            k,
            variant,
            n_max,
            margin: default_margin(),
            digits: DEFAULT_DIGITS,
            m_limit: DEFAULT_M_LIMIT,
        }
    }
}

/// Counts and estimates for one `G_ω`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub graph: CayleyGraph,
    pub table: SawCountTable,
    pub estimate: MuEstimate,
    pub product_table: SawCountTable,
    pub product_estimate: MuEstimate,
    /// For a node ending in `1`: where its counts first drop below its parent's.
    pub witness: Option<StrictnessWitness>,
}

impl Node {
    /// The comparison statistic.
    pub fn statistic(&self) -> &Decimal {
        self.estimate.best()
    }

    pub fn mask(&self) -> ModuliMask {
        self.graph
            .group
            .quotient_parts()
            .map_or_else(ModuliMask::empty, |(_, m)| m.clone())
    }
}

/// One candidate modulus tried at some level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attempt {
    pub m: u64,
    /// Empty iff the modulus was accepted.
    pub failures: Vec<String>,
}

impl Attempt {
    pub fn accepted(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The induction hypothesis at rank `depth()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionState {
    pub config: DriverConfig,
    pub base: CayleyGraph,
    pub moduli: Vec<u64>,
    /// Every word of length `<= depth`.
    pub nodes: BTreeMap<BinaryWord, Node>,
    /// `b_{ω⋆}` for every word of length `< depth`.
    pub separators: BTreeMap<BinaryWord, Decimal>,
    /// Candidates tried at each level, in order.
    pub attempts: Vec<Vec<Attempt>>,
}

impl ConstructionState {
    pub fn depth(&self) -> usize {
        self.moduli.len()
    }

    pub fn node(&self, w: &BinaryWord) -> Result<&Node> {
        self.nodes
            .get(w)
            .ok_or_else(|| Error::UnknownWord(format!("{w}")))
    }

    pub fn separator(&self, w: &BinaryWord) -> Result<&Decimal> {
        self.separators
            .get(w)
            .ok_or_else(|| Error::UnknownWord(format!("{w}*")))
    }

    pub fn leaves(&self) -> impl Iterator<Item = (&BinaryWord, &Node)> {
        let d = self.depth();
        self.nodes.iter().filter(move |(w, _)| w.len() == d)
    }
}

fn tabulate(
    counter: &dyn SawCounter,
    g: &CayleyGraph,
    config: &DriverConfig,
) -> Result<(SawCountTable, MuEstimate)> {
    let table = counter.count(g, config.n_max)?;
    if table.truncated() {
        return Err(Error::Interrupted);
    }
    let estimate = mu_bounds(&table, config.digits)?;
    Ok((table, estimate))
}

fn finish_node(
    counter: &dyn SawCounter,
    graph: CayleyGraph,
    table: SawCountTable,
    estimate: MuEstimate,
    witness: Option<StrictnessWitness>,
    config: &DriverConfig,
) -> Result<Node> {
    let product = product_with_line(&graph)?;
    let (product_table, product_estimate) = tabulate(counter, &product, config)?;
    Ok(Node {
        graph,
        table,
        estimate,
        product_table,
        product_estimate,
        witness,
    })
}

/// Exact midpoint of two decimals with the same number of digits.
fn midpoint(a: &Decimal, b: &Decimal) -> Decimal {
    Decimal {
        units: (&a.units + &b.units) * 5u32,
        digits: a.digits + 1,
    }
}

/// Rank-0 state: only `G` itself.
pub fn init_state(config: DriverConfig, counter: &dyn SawCounter) -> Result<ConstructionState> {
    if config.margin <= BigRational::from_integer(0.into()) {
        return Err(Error::InvalidParameter("margin must be positive".into()));
    }
    if config.n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    if config.m_limit < 2 {
        return Err(Error::InvalidParameter("m_limit must be at least 2".into()));
    }
    let (group, gens) = make_construction_group(config.k, config.variant)?;
    let base = CayleyGraph::new(group, &gens.generators)?;
    let (table, estimate) = tabulate(counter, &base, &config)?;
    let root = finish_node(counter, base.clone(), table, estimate, None, &config)?;
    let mut nodes = BTreeMap::new();
    nodes.insert(BinaryWord::empty(), root);
    Ok(ConstructionState {
        config,
        base,
        moduli: Vec::new(),
        nodes,
        separators: BTreeMap::new(),
        attempts: Vec::new(),
    })
}

/// Largest separator the subtree of `ω` must stay above: `b_{α⋆}` over the
/// strict prefixes `α` after which `ω` continues with a 0.
fn lower_separator<'a>(
    state: &'a ConstructionState,
    w: &BinaryWord,
) -> Option<(BinaryWord, &'a Decimal)> {
    (0..w.len())
        .filter(|&j| w.letter(j) == Some(false))
        .map(|j| {
            let alpha = w.prefix(j);
            let b = &state.separators[&alpha];
            (alpha, b)
        })
        .max_by(|x, y| x.1.cmp(y.1))
}

struct Candidate {
    word: BinaryWord,
    graph: CayleyGraph,
    table: SawCountTable,
    estimate: MuEstimate,
    witness: StrictnessWitness,
}

/// Checks one modulus against every leaf; stops at the first failure.
fn try_modulus(
    state: &ConstructionState,
    m: u64,
    counter: &dyn SawCounter,
) -> Result<core::result::Result<Vec<Candidate>, String>> {
    let n = state.depth();
    let cfg = &state.config;
    let margin = &cfg.margin;
    let mut out = Vec::new();
    for (w, parent) in state.leaves() {
        let spec = CentralSubgroupSpec::new(parent.graph.group.clone(), vec![(n, m)])?;
        if spec.is_trivial() {
            return Ok(Err(format!("<{m} g_{n}> is trivial in G_{w}")));
        }
        if !si_hypothesis_check(&parent.graph.group, &parent.graph.gens, &spec)? {
            return Ok(Err(format!(
                "radius-2 condition violated at m={m} for G_{w}"
            )));
        }
        let child = parent.graph.quotient(&ModuliMask::single(n, m)?)?;
        let (table, estimate) = tabulate(counter, &child, cfg)?;
        let bad = domination_violations(&parent.table, &table);
        if !bad.is_empty() {
            return Err(Error::InvariantViolation(format!(
                "c_n({}) > c_n({}) at n = {bad:?}",
                child.key(),
                parent.graph.key()
            )));
        }
        let Some(witness) = first_strict_drop(&parent.table, &table) else {
            return Ok(Err(format!(
                "no strict decrease up to n_max={} at m={m} for G_{w}",
                cfg.n_max
            )));
        };
        let x = estimate.best().to_rational();
        if x >= parent.statistic().to_rational() - margin {
            return Ok(Err(format!(
                "estimate {} for G_{w}1 is not below {} minus the margin at m={m}",
                estimate.best(),
                parent.statistic()
            )));
        }
        if let Some((alpha, b)) = lower_separator(state, w) {
            if x <= b.to_rational() + margin {
                return Ok(Err(format!(
                    "estimate {} for G_{w}1 is not above separator b_{alpha}* = {b} plus the margin at m={m}",
                    estimate.best()
                )));
            }
        }
        out.push(Candidate {
            word: w.clone(),
            graph: child,
            table,
            estimate,
            witness,
        });
    }
    Ok(Ok(out))
}

/// Rank `n` to rank `n + 1` with the least admissible modulus `m_n`.
pub fn extend_level(
    state: &ConstructionState,
    counter: &dyn SawCounter,
) -> Result<ConstructionState> {
    let n = state.depth();
    if n >= state.config.k {
        return Err(Error::DepthExceeded {
            depth: n + 1,
            rank: state.config.k,
        });
    }
    let mut attempts = Vec::new();
    for m in 2..=state.config.m_limit {
        let candidates = match try_modulus(state, m, counter)? {
            Ok(c) => c,
            Err(reason) => {
                attempts.push(Attempt {
                    m,
                    failures: vec![reason],
                });
                continue;
            }
        };
        attempts.push(Attempt {
            m,
            failures: Vec::new(),
        });
        let mut next = state.clone();
        next.moduli.push(m);
        next.attempts.push(attempts);
        for c in candidates {
            let parent = &state.nodes[&c.word];
            next.separators.insert(
                c.word.clone(),
                midpoint(parent.statistic(), c.estimate.best()),
            );
            next.nodes.insert(c.word.child(false), parent.clone());
            let node = finish_node(
                counter,
                c.graph,
                c.table,
                c.estimate,
                Some(c.witness),
                &state.config,
            )?;
            next.nodes.insert(c.word.child(true), node);
        }
        return Ok(next);
    }
    Err(Error::LevelConstructionFailure {
        level: n,
        m_limit: state.config.m_limit,
        diagnostics: attempts.into_iter().flat_map(|a| a.failures).collect(),
    })
}

/// `init_state` followed by `depth` calls to `extend_level`.
pub fn build(
    config: DriverConfig,
    depth: usize,
    counter: &dyn SawCounter,
) -> Result<ConstructionState> {
    if depth > config.k {
        return Err(Error::DepthExceeded {
            depth,
            rank: config.k,
        });
    }
    let mut state = init_state(config, counter)?;
    while state.depth() < depth {
        state = extend_level(&state, counter)?;
    }
    Ok(state)
}

/// One element of `𝒮_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderEntry {
    pub key: Vec<Symbol>,
    pub value: Decimal,
    pub is_separator: bool,
}

impl OrderEntry {
    pub fn label(&self) -> String {
        if self.key.is_empty() {
            return "ε".into();
        }
        self.key.iter().map(|s| format!("{s}")).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderViolation {
    /// Lexicographically smaller entry, which must carry the larger value.
    pub left: String,
    pub right: String,
    pub left_value: Decimal,
    pub right_value: Decimal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    /// `𝒮_n` in lexicographic order; values should decrease.
    pub entries: Vec<OrderEntry>,
    pub pairs_checked: usize,
    pub violations: Vec<OrderViolation>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `η < η'  ⇔  x > x'` on `𝒮_n`, with a gap of at least the margin between
/// two leaves and half the margin when a separator is involved.
pub fn order_check(state: &ConstructionState) -> OrderReport {
    let mut entries: Vec<OrderEntry> = state
        .leaves()
        .map(|(w, node)| OrderEntry {
            key: w.key(false),
            value: node.statistic().clone(),
            is_separator: false,
        })
        .chain(state.separators.iter().map(|(w, b)| OrderEntry {
            key: w.key(true),
            value: b.clone(),
            is_separator: true,
        }))
        .collect();
    entries.sort_by(|a, b| a.key.cmp(&b.key));
    let margin = &state.config.margin;
    let half = margin / BigInt::from(2);
    let values: Vec<BigRational> = entries.iter().map(|e| e.value.to_rational()).collect();
    let mut report = OrderReport {
        entries: Vec::new(),
        pairs_checked: 0,
        violations: Vec::new(),
    };
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            report.pairs_checked += 1;
            let gap = if entries[i].is_separator || entries[j].is_separator {
                &half
            } else {
                margin
            };
            if &values[i] - &values[j] <= *gap {
                report.violations.push(OrderViolation {
                    left: entries[i].label(),
                    right: entries[j].label(),
                    left_value: entries[i].value.clone(),
                    right_value: entries[j].value.clone(),
                });
            }
        }
    }
    report.entries = entries;
    report
}

/// Structural invariants of a state, all exact.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AuditReport {
    pub problems: Vec<String>,
    pub edges_checked: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Tree consistency, mask monotonicity, count domination and strictness
/// along `1`-edges, separator exactness, and minimality of each `m_n`.
pub fn audit(state: &ConstructionState) -> AuditReport {
    let mut report = AuditReport::default();
    for (w, node) in &state.nodes {
        if w.is_empty() {
            if node.graph != state.base {
                report
                    .problems
                    .push("root node is not the base graph".into());
            }
            continue;
        }
        report.edges_checked += 1;
        let parent_word = w.prefix(w.len() - 1);
        let Some(parent) = state.nodes.get(&parent_word) else {
            report.problems.push(format!("node {w} has no parent"));
            continue;
        };
        let i = w.len() - 1;
        if w.letter(i) == Some(false) {
            if node.graph.key() != parent.graph.key() || node.table != parent.table {
                report
                    .problems
                    .push(format!("G_{w} differs from G_{parent_word}"));
            }
            continue;
        }
        let expected = ModuliMask::single(i, state.moduli[i]).and_then(|s| parent.mask().union(&s));
        if expected.as_ref() != Ok(&node.mask()) {
            report.problems.push(format!(
                "mask of G_{w} is not the mask of G_{parent_word} plus index {i}"
            ));
        }
        let bad = domination_violations(&parent.table, &node.table);
        if !bad.is_empty() {
            report
                .problems
                .push(format!("c_n(G_{w}) > c_n(G_{parent_word}) at n = {bad:?}"));
        }
        let product_bad = domination_violations(&node.product_table, &node.table);
        if !product_bad.is_empty() {
            report.problems.push(format!(
                "c_n(G_{w}) exceeds its product with the line at n = {product_bad:?}"
            ));
        }
        match (&node.witness, first_strict_drop(&parent.table, &node.table)) {
            (Some(recorded), Some(found)) if *recorded == found => {}
            _ => report.problems.push(format!(
                "strictness witness of G_{w} does not match its counts"
            )),
        }
    }
    for (w, b) in &state.separators {
        match (
            state.nodes.get(&w.child(false)),
            state.nodes.get(&w.child(true)),
        ) {
            (Some(a), Some(c)) if midpoint(a.statistic(), c.statistic()) == *b => {}
            _ => report
                .problems
                .push(format!("b_{w}* is not the midpoint of its children")),
        }
    }
    for (level, tries) in state.attempts.iter().enumerate() {
        let accepted: Vec<u64> = tries.iter().filter(|a| a.accepted()).map(|a| a.m).collect();
        let ordered = tries.iter().enumerate().all(|(j, a)| a.m == j as u64 + 2);
        if accepted != [state.moduli[level]]
            || !ordered
            || tries.last().map(|a| a.m) != Some(state.moduli[level])
        {
            report
                .problems
                .push(format!("m_{level} is not the least admissible modulus"));
        }
    }
    report
}

/// Estimates along the prefixes of an infinite word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordEvaluation {
    pub word: InfiniteWordSpec,
    pub prefixes: Vec<BinaryWord>,
    /// Statistic of `𝒢_{w_j}` for `j = 0..=d`. The true values converge to
    /// `μ(𝒢_w)`; these are finite-length upper-bound envelopes.
    pub estimates: Vec<Decimal>,
    /// The same for `𝒢_{w_j} x 𝒵`.
    pub product_estimates: Vec<Decimal>,
    /// Canonical term of `G_{w_d}`.
    pub descriptor: String,
    /// Whether `w` has a 1 beyond the constructed depth, so that `G_w` is a
    /// proper quotient of `G_{w_d}`.
    pub support_beyond_depth: bool,
}

pub fn evaluate_word(
    state: &ConstructionState,
    w: &InfiniteWordSpec,
    d: usize,
) -> Result<WordEvaluation> {
    if d > state.depth() {
        return Err(Error::DepthExceeded {
            depth: d,
            rank: state.depth(),
        });
    }
    let prefixes: Vec<BinaryWord> = (0..=d).map(|j| w.truncate(j)).collect();
    let nodes = prefixes
        .iter()
        .map(|p| state.node(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(WordEvaluation {
        word: w.clone(),
        estimates: nodes.iter().map(|n| n.statistic().clone()).collect(),
        product_estimates: nodes
            .iter()
            .map(|n| n.product_estimate.best().clone())
            .collect(),
        descriptor: nodes[d].graph.key(),
        support_beyond_depth: w.has_one_from(state.depth()),
        prefixes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
}

/// One inequality of the chain separating `f(w')` from `f(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub left: String,
    pub relation: Relation,
    pub right: String,
    pub left_value: Decimal,
    pub right_value: Decimal,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InjectivityReport {
    /// Least index where the words differ.
    pub first_disagreement: usize,
    /// Whether the inputs were exchanged so that `w(i) = 0` and `w'(i) = 1`.
    pub swapped: bool,
    pub links: Vec<Link>,
    /// Lengths where `c_n(G_{w'_d}) > c_n(G_{w_i})`; must be empty.
    pub count_violations: Vec<usize>,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.count_violations.is_empty() && self.links.iter().all(|l| l.holds)
    }
}

/// With `i` the first disagreement, `w(i) = 0` and `w'(i) = 1`, checks
///
/// `est(w'_d) <= est(w'_{i+1}) < b_{w_i⋆} < est(w_j)` for `i < j <= d`,
/// `est(w'_d) <= est(w_i)`, and `c_n(G_{w'_d}) <= c_n(G_{w_i})` exactly.
pub fn injectivity_witness(
    state: &ConstructionState,
    w: &InfiniteWordSpec,
    w2: &InfiniteWordSpec,
    d: usize,
) -> Result<InjectivityReport> {
    if d > state.depth() {
        return Err(Error::DepthExceeded {
            depth: d,
            rank: state.depth(),
        });
    }
    let i = (0..d)
        .find(|&i| w.letter(i) != w2.letter(i))
        .ok_or(Error::NoDisagreement(d))?;
    let swapped = w.letter(i);
    let (hi, lo) = if swapped { (w2, w) } else { (w, w2) };
    let node = |x: &BinaryWord| {
        state
            .node(x)
            .map(|n| (format!("est(G_{x})"), n.statistic().clone()))
    };
    let link = |(ln, lv): (String, Decimal), relation, (rn, rv): (String, Decimal)| {
        let holds = match relation {
            Relation::Le => lv <= rv,
            Relation::Lt => lv < rv,
        };
        Link {
            left: ln,
            relation,
            right: rn,
            left_value: lv,
            right_value: rv,
            holds,
        }
    };
    let wi = hi.truncate(i);
    let sep = (format!("b_{wi}*"), state.separator(&wi)?.clone());
    let low_d = node(&lo.truncate(d))?;
    let low_next = node(&lo.truncate(i + 1))?;
    let mut links = vec![
        link(low_d.clone(), Relation::Le, node(&wi)?),
        link(low_d, Relation::Le, low_next.clone()),
        link(low_next, Relation::Lt, sep.clone()),
    ];
    for j in i + 1..=d {
        links.push(link(sep.clone(), Relation::Lt, node(&hi.truncate(j))?));
    }
    let count_violations =
        domination_violations(&state.node(&wi)?.table, &state.node(&lo.truncate(d))?.table);
    Ok(InjectivityReport {
        first_disagreement: i,
        swapped,
        links,
        count_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saw::Sequential;
    use alloc::string::ToString;

    fn config(k: usize, n_max: usize) -> DriverConfig {
        DriverConfig::new(k, HVariant::FreeAbelian, n_max)
    }

    fn word(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn initial_states() {
        let c = Sequential::default();
        let s = init_state(config(2, 5), &c).unwrap();
        assert_eq!(s.depth(), 0);
        assert_eq!(s.nodes.len(), 1);
        assert_eq!(s.base.group.key(), "Z^2 x Z");
        assert!(order_check(&s).passed());
        assert!(audit(&s).passed());
        let h = init_state(DriverConfig::new(1, HVariant::Heisenberg, 4), &c).unwrap();
        assert_eq!(h.base.group.key(), "H3 x Z");
        assert_eq!(init_state(config(0, 5), &c), Err(Error::NoCentralGenerator));
        let mut bad = config(1, 5);
        bad.margin = BigRational::from_integer(0.into());
        assert!(matches!(
            init_state(bad, &c),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn first_level_over_the_plane() {
        let c = Sequential::default();
        let s0 = init_state(config(1, 10), &c).unwrap();
        let s1 = extend_level(&s0, &c).unwrap();
        // 2 g_0 lies in B(2), 3 g_0 does not
        assert_eq!(s1.moduli, vec![3]);
        assert_eq!(s1.attempts[0].len(), 2);
        assert!(s1.attempts[0][0].failures[0].contains("radius-2 condition violated at m=2"));
        assert_eq!(
            s1.nodes[&word("1")].graph.group.key(),
            "quot(Z x Z; mask=1; m=[3])"
        );
        let w = s1.nodes[&word("1")].witness.clone().unwrap();
        assert_eq!(
            (w.n, w.base_count.to_string(), w.quotient_count.to_string()),
            (3, "36".into(), "34".into())
        );
        let report = order_check(&s1);
        assert!(report.passed());
        let labels: Vec<String> = report.entries.iter().map(OrderEntry::label).collect();
        assert_eq!(labels, ["0", "*", "1"]);
        assert!(audit(&s1).passed(), "{:?}", audit(&s1));
        assert_eq!(
            extend_level(&s1, &c),
            Err(Error::DepthExceeded { depth: 2, rank: 1 })
        );
    }

    #[test]
    fn m_limit_failure_reports_each_candidate() {
        let c = Sequential::default();
        let mut cfg = config(1, 6);
        cfg.m_limit = 2;
        let s0 = init_state(cfg, &c).unwrap();
        match extend_level(&s0, &c) {
            Err(Error::LevelConstructionFailure {
                level: 0,
                m_limit: 2,
                diagnostics,
            }) => {
                assert_eq!(diagnostics.len(), 1);
                assert!(diagnostics[0].contains("radius-2 condition violated at m=2"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lower_separators_follow_zero_letters() {
        let c = Sequential::default();
        let s1 = build(config(1, 8), 1, &c).unwrap();
        assert!(lower_separator(&s1, &word("1")).is_none());
        assert_eq!(
            lower_separator(&s1, &word("0")).unwrap().0,
            BinaryWord::empty()
        );
    }

    #[test]
    fn words_and_injectivity() {
        let c = Sequential::default();
        let s = build(config(1, 8), 1, &c).unwrap();
        let zero: InfiniteWordSpec = "(0)".parse().unwrap();
        let one: InfiniteWordSpec = "1".parse().unwrap();
        let e = evaluate_word(&s, &zero, 1).unwrap();
        assert_eq!(e.estimates[0], e.estimates[1]);
        assert_eq!(e.descriptor, "Z x Z");
        let e1 = evaluate_word(&s, &one, 1).unwrap();
        assert!(e1.estimates[1] < e1.estimates[0]);
        assert!(!e1.support_beyond_depth);
        assert!(
            evaluate_word(&s, &"(1)".parse().unwrap(), 1)
                .unwrap()
                .support_beyond_depth
        );
        assert!(matches!(
            evaluate_word(&s, &zero, 2),
            Err(Error::DepthExceeded { .. })
        ));

        let r = injectivity_witness(&s, &one, &zero, 1).unwrap();
        assert_eq!(r.first_disagreement, 0);
        assert!(r.swapped);
        assert!(r.passed(), "{r:?}");
        assert_eq!(
            injectivity_witness(&s, &zero, &zero, 1),
            Err(Error::NoDisagreement(1))
        );
    }

    #[test]
    fn separators_are_exact_midpoints() {
        let a = Decimal {
            units: 2913u32.into(),
            digits: 3,
        };
        let b = Decimal {
            units: 2900u32.into(),
            digits: 3,
        };
        let m = midpoint(&a, &b);
        assert_eq!(m.to_string(), "2.9065");
        assert_eq!(
            m.to_rational() * BigInt::from(2),
            a.to_rational() + b.to_rational()
        );
    }
}
