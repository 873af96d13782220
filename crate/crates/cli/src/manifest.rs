//! JSON manifests of a construction run, and their replay.

use anyhow::{bail, Context};
use num_bigint::BigInt;
use num_rational::BigRational;
use sawcantor_core::driver::{
    audit, build, order_check, AuditReport, ConstructionState, DriverConfig, OrderReport,
};
use sawcantor_core::saw::SawCounter;
use sawcantor_core::HVariant;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::report::{CountsJson, EstimateJson};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigJson {
    pub k: usize,
    /// `"Z^K x Z"` or `"H3 x Z"`.
    pub family: String,
    pub depth: usize,
    pub n_max: usize,
    /// Exact rational, `p/q` or an integer.
    pub margin: String,
    pub digits: u32,
    pub m_limit: u64,
}

impl ConfigJson {
    pub fn new(cfg: &DriverConfig, depth: usize) -> Self {
        ConfigJson {
            k: cfg.k,
            family: family_name(cfg.variant).into(),
            depth,
            n_max: cfg.n_max,
            margin: cfg.margin.to_string(),
            digits: cfg.digits,
            m_limit: cfg.m_limit,
        }
    }

    pub fn driver_config(&self) -> anyhow::Result<DriverConfig> {
        Ok(DriverConfig {
            k: self.k,
            variant: parse_family(&self.family)?,
            n_max: self.n_max,
            margin: parse_rational(&self.margin)?,
            digits: self.digits,
            m_limit: self.m_limit,
        })
    }
}

pub fn family_name(v: HVariant) -> &'static str {
    match v {
        HVariant::FreeAbelian => "Z^K x Z",
        HVariant::Heisenberg => "H3 x Z",
    }
}

pub fn parse_family(s: &str) -> anyhow::Result<HVariant> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    match compact.as_str() {
        "Z^KxZ" => Ok(HVariant::FreeAbelian),
        "H3xZ" => Ok(HVariant::Heisenberg),
        _ => bail!("unknown group family {s:?}; expected \"Z^K x Z\" or \"H3 x Z\""),
    }
}

/// Accepts `p/q`, integers and plain decimals such as `0.001`.
pub fn parse_rational(s: &str) -> anyhow::Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let (p, q): (BigInt, BigInt) = (p.trim().parse()?, q.trim().parse()?);
        if q == BigInt::from(0) {
            bail!("zero denominator in {s:?}");
        }
        return Ok(BigRational::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.chars().any(|c| !c.is_ascii_digit()) || frac.len() > 30 {
        bail!("not a decimal: {s:?}");
    }
    let digits = format!("{int}{frac}");
    let units: BigInt = digits
        .parse()
        .with_context(|| format!("not a number: {s:?}"))?;
    Ok(BigRational::new(
        units,
        BigInt::from(10).pow(frac.len() as u32),
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub n: usize,
    pub parent_count: String,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeJson {
    /// `""` for the empty word.
    pub word: String,
    pub descriptor: String,
    pub statistic: String,
    pub product_statistic: String,
    pub counts: CountsJson,
    pub estimate: EstimateJson,
    pub product_counts: CountsJson,
    pub product_estimate: EstimateJson,
    pub witness: Option<WitnessJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorJson {
    pub word: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttemptJson {
    pub level: usize,
    pub m: u64,
    pub accepted: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub depth: usize,
    pub passed: bool,
    /// `𝒮_n` in lexicographic order, as `[label, value]`.
    pub entries: Vec<(String, String)>,
    pub pairs_checked: usize,
    pub violations: Vec<String>,
}

impl OrderJson {
    pub fn new(depth: usize, r: &OrderReport) -> Self {
        OrderJson {
            depth,
            passed: r.passed(),
            entries: r
                .entries
                .iter()
                .map(|e| (e.label(), e.value.to_string()))
                .collect(),
            pairs_checked: r.pairs_checked,
            violations: r
                .violations
                .iter()
                .map(|v| {
                    format!(
                        "{} ({}) vs {} ({})",
                        v.left, v.left_value, v.right, v.right_value
                    )
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditJson {
    pub passed: bool,
    pub edges_checked: usize,
    pub problems: Vec<String>,
}

impl From<&AuditReport> for AuditJson {
    fn from(a: &AuditReport) -> Self {
        AuditJson {
            passed: a.passed(),
            edges_checked: a.edges_checked,
            problems: a.problems.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestTimings {
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub config: ConfigJson,
    pub base_group: String,
    pub moduli: Vec<u64>,
    pub nodes: Vec<NodeJson>,
    pub separators: Vec<SeparatorJson>,
    pub attempts: Vec<AttemptJson>,
    /// `order_check` at every depth from 0 to the final one.
    pub order_checks: Vec<OrderJson>,
    pub audit: AuditJson,
    pub timings: ManifestTimings,
}

fn word_label(w: &sawcantor_core::BinaryWord) -> String {
    if w.is_empty() {
        String::new()
    } else {
        w.to_string()
    }
}

impl Manifest {
    /// `orders[d]` is the order check of the state at depth `d`.
    pub fn new(state: &ConstructionState, orders: &[OrderReport], wall_seconds: f64) -> Self {
        let nodes = state
            .nodes
            .iter()
            .map(|(w, n)| NodeJson {
                word: word_label(w),
                descriptor: n.graph.key(),
                statistic: n.statistic().to_string(),
                product_statistic: n.product_estimate.best().to_string(),
                counts: CountsJson::from_table(&n.table),
                estimate: EstimateJson::from_estimate(&n.estimate),
                product_counts: CountsJson::from_table(&n.product_table),
                product_estimate: EstimateJson::from_estimate(&n.product_estimate),
                witness: n.witness.as_ref().map(|x| WitnessJson {
                    n: x.n,
                    parent_count: x.base_count.to_string(),
                    count: x.quotient_count.to_string(),
                }),
            })
            .collect();
        let attempts = state
            .attempts
            .iter()
            .enumerate()
            .flat_map(|(level, tries)| {
                tries.iter().map(move |a| AttemptJson {
                    level,
                    m: a.m,
                    accepted: a.accepted(),
                    failures: a.failures.clone(),
                })
            })
            .collect();
        Manifest {
            schema_version: SCHEMA_VERSION,
            config: ConfigJson::new(&state.config, state.depth()),
            base_group: state.base.group.key(),
            moduli: state.moduli.clone(),
            nodes,
            separators: state
                .separators
                .iter()
                .map(|(w, b)| SeparatorJson {
                    word: word_label(w),
                    value: b.to_string(),
                })
                .collect(),
            attempts,
            order_checks: orders
                .iter()
                .enumerate()
                .map(|(d, r)| OrderJson::new(d, r))
                .collect(),
            audit: (&audit(state)).into(),
            timings: ManifestTimings { wall_seconds },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes") + "\n"
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        let m: Manifest = serde_json::from_str(text).context("reading manifest")?;
        if m.schema_version != SCHEMA_VERSION {
            bail!("unsupported manifest schema version {}", m.schema_version);
        }
        Ok(m)
    }

    pub fn passed(&self) -> bool {
        self.audit.passed && self.order_checks.iter().all(|o| o.passed)
    }
}

/// Builds to `depth`, running the order check at every depth.
pub fn run_construction(
    cfg: DriverConfig,
    depth: usize,
    counter: &dyn SawCounter,
) -> sawcantor_core::Result<(ConstructionState, Vec<OrderReport>)> {
    let mut state = build(cfg, 0, counter)?;
    let mut orders = vec![order_check(&state)];
    while state.depth() < depth {
        state = sawcantor_core::extend_level(&state, counter)?;
        orders.push(order_check(&state));
    }
    Ok((state, orders))
}

/// JSON text with the `timings` keys removed at every level.
pub fn without_timings(json: &str) -> anyhow::Result<String> {
    fn strip(v: &mut Value) {
        match v {
            Value::Object(map) => {
                map.remove("timings");
                map.values_mut().for_each(strip);
            }
            Value::Array(items) => items.iter_mut().for_each(strip),
            _ => {}
        }
    }
    let mut v: Value = serde_json::from_str(json)?;
    strip(&mut v);
    Ok(serde_json::to_string_pretty(&v)?)
}

/// Outcome of re-running a manifest's configuration.
pub struct Replay {
    pub manifest: Manifest,
    pub identical: bool,
    /// First differing line of the timing-free JSON, if any.
    pub first_difference: Option<(usize, String, String)>,
}

pub fn replay(original: &str, counter: &dyn SawCounter) -> anyhow::Result<Replay> {
    let m = Manifest::from_json(original)?;
    let cfg = m.config.driver_config()?;
    let start = std::time::Instant::now();
    let (state, orders) = run_construction(cfg, m.config.depth, counter)?;
    let again = Manifest::new(&state, &orders, start.elapsed().as_secs_f64());
    let (a, b) = (
        without_timings(original)?,
        without_timings(&again.to_json())?,
    );
    let first_difference = a
        .lines()
        .zip(b.lines())
        .enumerate()
        .find(|(_, (x, y))| x != y)
        .map(|(i, (x, y))| (i + 1, x.to_string(), y.to_string()))
        .or_else(|| {
            (a.lines().count() != b.lines().count()).then(|| {
                (
                    a.lines().count().min(b.lines().count()) + 1,
                    String::new(),
                    String::new(),
                )
            })
        });
    Ok(Replay {
        manifest: again,
        identical: first_difference.is_none(),
        first_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sawcantor_core::saw::Sequential;

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("0.001").unwrap(),
            BigRational::new(1.into(), 1000.into())
        );
        assert_eq!(
            parse_rational("1/1000").unwrap(),
            parse_rational("0.0010").unwrap()
        );
        assert_eq!(
            parse_rational("2").unwrap(),
            BigRational::from_integer(2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("0.1e3").is_err());
    }

    #[test]
    fn families() {
        assert_eq!(parse_family("Z^K x Z").unwrap(), HVariant::FreeAbelian);
        assert_eq!(parse_family("H3xZ").unwrap(), HVariant::Heisenberg);
        assert!(parse_family("F_2").is_err());
    }

    #[test]
    fn manifest_round_trip_and_replay() {
        let c = Sequential::default();
        let cfg = DriverConfig::new(1, HVariant::FreeAbelian, 6);
        let (s, orders) = run_construction(cfg.clone(), 1, &c).unwrap();
        let m = Manifest::new(&s, &orders, 1.25);
        let text = m.to_json();
        assert_eq!(Manifest::from_json(&text).unwrap(), m);
        assert!(m.passed());
        assert_eq!(m.config.driver_config().unwrap(), cfg);
        assert_eq!(m.nodes.len(), 3);
        assert_eq!(m.nodes[0].word, "");
        let r = replay(&text, &c).unwrap();
        assert!(r.identical, "{:?}", r.first_difference);
        let tampered = text.replacen("\"moduli\": [\n    3", "\"moduli\": [\n    4", 1);
        assert_ne!(tampered, text);
        assert!(!replay(&tampered, &c).unwrap().identical);
        let future = text.replacen("\"schema_version\": 1", "\"schema_version\": 9", 1);
        assert!(Manifest::from_json(&future).is_err());
    }

    #[test]
    fn timings_are_stripped_everywhere() {
        let a = r#"{"x": 1, "timings": {"w": 2}, "y": [{"timings": 3, "z": 4}]}"#;
        assert_eq!(
            without_timings(a).unwrap(),
            without_timings(r#"{"y":[{"z":4}],"x":1}"#).unwrap()
        );
    }
}
