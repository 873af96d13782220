//! Serialized forms of count tables, estimates and balls.

use std::fmt::Write as _;

use anyhow::{bail, Context};
use num_bigint::BigUint;
use sawcantor_core::saw::{FeketeReport, MuEstimate, SawCountTable};
use sawcantor_core::RootedBall;
use serde::{Deserialize, Serialize};

/// A count table; counts are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsJson {
    pub graph_key: String,
    pub counts: Vec<String>,
    pub n_max: usize,
    pub requested_n_max: usize,
    pub truncated: bool,
}

impl CountsJson {
    pub fn from_table(t: &SawCountTable) -> Self {
        CountsJson {
            graph_key: t.graph_key.clone(),
            counts: t.counts.iter().map(ToString::to_string).collect(),
            n_max: t.n_max(),
            requested_n_max: t.requested_n_max,
            truncated: t.truncated(),
        }
    }

    pub fn to_table(&self) -> anyhow::Result<SawCountTable> {
        if self.counts.len() != self.n_max + 1 {
            bail!("{} counts for n_max = {}", self.counts.len(), self.n_max);
        }
        let counts = self
            .counts
            .iter()
            .map(|c| {
                c.parse::<BigUint>()
                    .with_context(|| format!("bad count {c:?}"))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        let table = SawCountTable {
            graph_key: self.graph_key.clone(),
            counts,
            requested_n_max: self.requested_n_max,
        };
        if table.truncated() != self.truncated {
            bail!("truncation flag disagrees with the counts");
        }
        Ok(table)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateJson {
    pub digits: u32,
    pub n_max: usize,
    /// `min_{n <= n_max} c_n^{1/n}`, an upper bound on the connective constant.
    pub best_upper_bound: String,
    pub best_at: usize,
    pub upper_bounds: Vec<String>,
    pub running_min: Vec<String>,
    pub running_min_at: Vec<usize>,
    /// `c_{n+1} / c_n`: point estimates only, never bounds.
    pub ratio_estimates: Vec<String>,
}

impl EstimateJson {
    pub fn from_estimate(e: &MuEstimate) -> Self {
        let s = |v: &[sawcantor_core::saw::Decimal]| v.iter().map(ToString::to_string).collect();
        EstimateJson {
            digits: e.digits,
            n_max: e.n_max,
            best_upper_bound: e.best().to_string(),
            best_at: *e.running_min_at.last().unwrap(),
            upper_bounds: s(&e.upper_bounds),
            running_min: s(&e.running_min),
            running_min_at: e.running_min_at.clone(),
            ratio_estimates: s(&e.ratio_estimates),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeketeJson {
    pub pairs_checked: usize,
    pub violations: Vec<(usize, usize)>,
}

impl From<&FeketeReport> for FeketeJson {
    fn from(r: &FeketeReport) -> Self {
        FeketeJson {
            pairs_checked: r.pairs_checked,
            violations: r.violations.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub wall_seconds: f64,
}

/// Output of `saw-count`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableReport {
    pub graph_key: String,
    pub counts: Vec<String>,
    pub n_max: usize,
    pub requested_n_max: usize,
    pub truncated: bool,
    pub estimate: EstimateJson,
    pub fekete: FeketeJson,
    pub timings: Timings,
}

impl TableReport {
    pub fn new(t: &SawCountTable, e: &MuEstimate, f: &FeketeReport, wall_seconds: f64) -> Self {
        let c = CountsJson::from_table(t);
        TableReport {
            graph_key: c.graph_key,
            counts: c.counts,
            n_max: c.n_max,
            requested_n_max: c.requested_n_max,
            truncated: c.truncated,
            estimate: EstimateJson::from_estimate(e),
            fekete: f.into(),
            timings: Timings { wall_seconds },
        }
    }
}

/// Columns `n,count,upper_bound,ratio`; the last two are empty at `n = 0`.
pub fn table_csv(t: &SawCountTable, e: &MuEstimate) -> String {
    let mut out = String::from("n,count,upper_bound,ratio\n");
    for (n, c) in t.counts.iter().enumerate() {
        if n == 0 {
            writeln!(out, "0,{c},,").unwrap();
        } else {
            writeln!(
                out,
                "{n},{c},{},{}",
                e.upper_bounds[n - 1],
                e.ratio_estimates[n - 1]
            )
            .unwrap();
        }
    }
    out
}

pub fn table_text(t: &SawCountTable, e: &MuEstimate) -> String {
    let mut out = format!("{}\n", t.graph_key);
    let width = t.counts.last().map_or(1, |c| c.to_string().len()).max(5);
    writeln!(
        out,
        "{:>3}  {:>width$}  {:>18}  {:>18}",
        "n", "c_n", "c_n^(1/n)", "c_n/c_(n-1)"
    )
    .unwrap();
    for (n, c) in t.counts.iter().enumerate().skip(1) {
        writeln!(
            out,
            "{n:>3}  {c:>width$}  {:>18}  {:>18}",
            e.upper_bounds[n - 1].to_string(),
            e.ratio_estimates[n - 1].to_string()
        )
        .unwrap();
    }
    writeln!(
        out,
        "mu <= {} (n = {}); ratios are estimates, not bounds",
        e.best(),
        e.running_min_at.last().unwrap()
    )
    .unwrap();
    if t.truncated() {
        writeln!(out, "TRUNCATED: requested n_max = {}", t.requested_n_max).unwrap();
    }
    out
}

/// A rooted ball; the root is vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallJson {
    pub radius: usize,
    pub root: u32,
    pub vertices: Vec<String>,
    pub distances: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
}

impl From<&RootedBall> for BallJson {
    fn from(b: &RootedBall) -> Self {
        BallJson {
            radius: b.radius,
            root: 0,
            vertices: b.vertices.iter().map(ToString::to_string).collect(),
            distances: b.distances.clone(),
            edges: b.edges(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sawcantor_core::saw::{count_saws, fekete_check, mu_bounds, Budget};
    use sawcantor_core::{ball, CayleyGraph};

    fn z2(n: usize) -> (SawCountTable, MuEstimate) {
        let t = count_saws(&CayleyGraph::parse("Z^2").unwrap(), n, &Budget::default()).unwrap();
        let e = mu_bounds(&t, 12).unwrap();
        (t, e)
    }

    #[test]
    fn counts_survive_json() {
        let (t, e) = z2(6);
        let j = serde_json::to_string(&CountsJson::from_table(&t)).unwrap();
        let back: CountsJson = serde_json::from_str(&j).unwrap();
        assert_eq!(back.to_table().unwrap(), t);
        let r = TableReport::new(&t, &e, &fekete_check(&t), 0.5);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["counts"][2], "12");
        assert_eq!(v["timings"]["wall_seconds"], 0.5);
        let mut bad = back.clone();
        bad.counts[1] = "x".into();
        assert!(bad.to_table().is_err());
    }

    #[test]
    fn csv_layout() {
        let (t, e) = z2(2);
        assert_eq!(
            table_csv(&t, &e),
            "n,count,upper_bound,ratio\n0,1,,\n1,4,4.000000000000,4.000000000000\n2,12,3.464101615138,3.000000000000\n"
        );
        assert!(table_text(&t, &e).contains("mu <= 3.464101615138"));
    }

    #[test]
    fn ball_json() {
        let b = ball(&CayleyGraph::parse("Z^2").unwrap(), 1).unwrap();
        let j = BallJson::from(&b);
        assert_eq!(j.vertices.len(), 5);
        assert_eq!(j.edges.len(), 4);
        assert!(j.edges.iter().all(|&(u, _)| u == 0));
        assert_eq!(j.vertices[0], "(0,0)");
    }
}
