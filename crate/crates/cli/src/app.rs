//! Command-line definitions and the commands themselves.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use sawcantor_core::cayley::local_convergence_radius;
use sawcantor_core::driver::{evaluate_word, injectivity_witness, DriverConfig};
use sawcantor_core::quotient::{
    si_hypothesis_check, stabilization_check, CentralSubgroupSpec, ModuliMask,
};
use sawcantor_core::saw::{
    domination_violations, fekete_check, mu_bounds, strictness_witness, Budget, SawCounter,
};
use sawcantor_core::term::parse_mask;
use sawcantor_core::{ball, CayleyGraph, Error, Group, InfiniteWordSpec};
use serde::Serialize;

use crate::cache::{default_cache_dir, Cached, CACHE_DIR_ENV};
use crate::counter::{max_workers, Parallel};
use crate::diagram;
use crate::exit::Failure;
use crate::manifest::{parse_family, parse_rational, replay, run_construction, Manifest};
use crate::report::{table_csv, table_text, BallJson, CountsJson, TableReport, Timings};

#[derive(Debug, Parser)]
#[command(
    name = "sawcantor",
    version,
    about = "Self-avoiding walk counts on Cayley graphs of central quotients"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunConfig,
}

/// Options shared by every command.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Worker threads for SAW enumeration.
    #[arg(long, global = true, default_value_t = max_workers())]
    pub workers: usize,
    /// Decimal digits for roots and ratios.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=60))]
    pub precision: u32,
    #[arg(long, global = true, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Stop after this many walk extensions.
    #[arg(long, global = true)]
    pub max_steps: Option<u64>,
    /// Stop after this much wall time.
    #[arg(long, global = true)]
    pub max_seconds: Option<f64>,
    /// Depth at which walks are split into parallel tasks.
    #[arg(long, global = true, default_value_t = 4)]
    pub prefix_depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramFormat {
    Ascii,
    Svg,
    None,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact c_0..c_N and upper bounds c_n^(1/n).
    SawCount {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
    },
    /// The rooted ball B(r) as JSON.
    Ball {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Count-level domination, the radius-2 hypothesis, a strictness
    /// witness, and stabilization for a central quotient.
    VerifyFacts {
        #[arg(long)]
        group: String,
        /// Which central generators are quotiented, e.g. `101`.
        #[arg(long, default_value = "")]
        mask: String,
        /// Moduli aligned with the mask, e.g. `3,_,5`.
        #[arg(long, default_value = "")]
        moduli: String,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 64)]
        horizon: usize,
        /// Radius of the ball used as the finite set F.
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Build the tree of quotients G_ω to some depth.
    CantorBuild {
        #[arg(long, default_value = "Z^K x Z")]
        group_family: String,
        #[arg(long = "K", short = 'K')]
        k: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value = "0.001")]
        margin: String,
        #[arg(long, default_value_t = 64)]
        m_limit: u64,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Ascii)]
        diagram: DiagramFormat,
        /// Write the diagram here instead of stderr.
        #[arg(long)]
        diagram_out: Option<PathBuf>,
    },
    /// Re-run a manifest and compare everything except timings.
    CantorReplay {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Estimates along an infinite word, and optionally the chain
    /// separating it from a second word.
    CantorEval {
        #[arg(long)]
        manifest: PathBuf,
        /// E.g. `01(0)` or `1(01)`; without parentheses the tail is zeros.
        #[arg(long)]
        word: String,
        #[arg(long)]
        against: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
    },
}

/// Where a command writes: its main output and its diagnostics.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

fn emit(run: &RunConfig, io: &mut Io, text: &str) -> Result<(), Failure> {
    match &run.output {
        Some(path) => crate::cache::write_atomic(path, text.as_bytes())?,
        None => io.out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn parse_group(term: &str) -> Result<Group, Failure> {
    Group::parse(term).map_err(|e| Failure::Usage(format!("bad group term {term:?}: {e}")))
}

/// The counter a command uses, with its cache if any.
pub struct Counters {
    cached: Option<Cached<Parallel>>,
    plain: Option<Parallel>,
}

impl Counters {
    pub fn new(run: &RunConfig) -> Result<Self, Failure> {
        let stop = run.max_seconds.map(|secs| {
            let flag = Arc::new(AtomicBool::new(false));
            let f = flag.clone();
            std::thread::spawn(move || {
                std::thread::sleep(Duration::from_secs_f64(secs.max(0.0)));
                f.store(true, Ordering::Relaxed);
            });
            flag
        });
        let budget = Budget {
            max_steps: run.max_steps,
            prefix_depth: run.prefix_depth.max(1),
            stop,
            ..Budget::default()
        };
        if run.workers == 0 {
            return Err(Failure::Usage("--workers must be at least 1".into()));
        }
        let parallel =
            Parallel::new(run.workers, budget).map_err(|e| Failure::Usage(e.to_string()))?;
        if run.no_cache {
            return Ok(Counters {
                cached: None,
                plain: Some(parallel),
            });
        }
        let dir = run.cache_dir.clone().unwrap_or_else(default_cache_dir);
        Ok(Counters {
            cached: Some(Cached::new(parallel, dir)),
            plain: None,
        })
    }

    pub fn counter(&self) -> &dyn SawCounter {
        match (&self.cached, &self.plain) {
            (Some(c), _) => c,
            (None, Some(p)) => p,
            (None, None) => unreachable!(),
        }
    }

    pub fn hits(&self) -> usize {
        self.cached.as_ref().map_or(0, Cached::hits)
    }

    fn flush_log(&self, err: &mut dyn Write) {
        if let Some(c) = &self.cached {
            for line in c.drain_log() {
                let _ = writeln!(err, "{line}");
            }
        }
    }
}

/// Runs one command. `Ok` means exit status 0.
pub fn run(cli: Cli, io: &mut Io) -> Result<(), Failure> {
    let counters = Counters::new(&cli.run)?;
    let result = dispatch(&cli, &counters, io);
    counters.flush_log(io.err);
    result
}

fn dispatch(cli: &Cli, counters: &Counters, io: &mut Io) -> Result<(), Failure> {
    let run = &cli.run;
    match &cli.command {
        Command::SawCount { group, n_max } => saw_count(run, counters, io, group, *n_max),
        Command::Ball { group, radius } => {
            let g = CayleyGraph::standard(parse_group(group)?)?;
            let b = ball(&g, *radius)?;
            emit(run, io, &json(&BallJson::from(&b)))
        }
        Command::VerifyFacts {
            group,
            mask,
            moduli,
            n_max,
            horizon,
            radius,
        } => verify_facts(
            run, counters, io, group, mask, moduli, *n_max, *horizon, *radius,
        ),
        Command::CantorBuild {
            group_family,
            k,
            depth,
            n_max,
            margin,
            m_limit,
            diagram,
            diagram_out,
        } => {
            let cfg = DriverConfig {
                k: *k,
                variant: parse_family(group_family)?,
                n_max: *n_max,
                margin: parse_rational(margin)?,
                digits: run.precision,
                m_limit: *m_limit,
            };
            cantor_build(
                run,
                counters,
                io,
                cfg,
                *depth,
                *diagram,
                diagram_out.as_deref(),
            )
        }
        Command::CantorReplay { manifest } => {
            let text = std::fs::read_to_string(manifest)?;
            let r = replay(&text, counters.counter())?;
            match r.first_difference {
                None => {
                    emit(run, io, "identical\n")?;
                    Ok(())
                }
                Some((line, a, b)) => Err(Failure::Invariant(format!(
                    "replay differs at line {line}:\n  recorded: {a}\n  replayed: {b}"
                ))),
            }
        }
        Command::CantorEval {
            manifest,
            word,
            against,
            depth,
        } => cantor_eval(
            run,
            counters,
            io,
            manifest,
            word,
            against.as_deref(),
            *depth,
        ),
    }
}

fn saw_count(
    run: &RunConfig,
    counters: &Counters,
    io: &mut Io,
    term: &str,
    n_max: usize,
) -> Result<(), Failure> {
    let group = parse_group(term)?;
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    if group.is_finite() {
        return Err(Failure::Domain(format!(
            "{} is finite: SAW counts vanish eventually and the connective constant is undefined",
            group.key()
        )));
    }
    let g = CayleyGraph::standard(group)?;
    let start = Instant::now();
    let table = counters.counter().count(&g, n_max)?;
    let wall = start.elapsed().as_secs_f64();
    if let Err(e) = table.check_low_order(g.degree()) {
        return Err(Failure::Invariant(e));
    }
    let fekete = fekete_check(&table);
    if !fekete.passed() {
        return Err(Failure::Invariant(format!(
            "submultiplicativity fails at {:?}",
            fekete.violations
        )));
    }
    let estimate = mu_bounds(&table, run.precision)?;
    let text = match run.format {
        Format::Json => json(&TableReport::new(&table, &estimate, &fekete, wall)),
        Format::Csv => table_csv(&table, &estimate),
        Format::Text => table_text(&table, &estimate),
    };
    emit(run, io, &text)?;
    if table.truncated() {
        return Err(Failure::Budget(format!(
            "counts stop at n = {} of the requested {}",
            table.n_max(),
            table.requested_n_max
        )));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct WitnessOut {
    n: usize,
    base_count: String,
    quotient_count: String,
}

#[derive(Debug, Serialize)]
struct StabilizationOut {
    /// Finite set `F = B(radius)` of the base graph.
    radius: usize,
    set_size: usize,
    /// `N_k = <k m_i g_i>` for `k = 0..=horizon`, against `N_inf = {1}`.
    family: String,
    n0: usize,
    horizon: usize,
    /// Least `k0` with `B_k(radius) ≅ B_inf(radius)` for `k0 <= k <= horizon`.
    local_convergence_n0: usize,
}

#[derive(Debug, Serialize)]
struct FactsReport {
    base: String,
    quotient: String,
    n_max: usize,
    base_counts: CountsJson,
    quotient_counts: CountsJson,
    fact_i_passed: bool,
    si_hypothesis_passed: bool,
    witness_status: String,
    witness: Option<WitnessOut>,
    stabilization: StabilizationOut,
    timings: Timings,
}

#[allow(clippy::too_many_arguments)]
fn verify_facts(
    run: &RunConfig,
    counters: &Counters,
    io: &mut Io,
    term: &str,
    bits: &str,
    moduli: &str,
    n_max: usize,
    horizon: usize,
    radius: usize,
) -> Result<(), Failure> {
    let start = Instant::now();
    let group = parse_group(term)?;
    if bits.trim().is_empty() {
        return Err(Error::TrivialSubgroup.into());
    }
    let mask = parse_mask(bits, moduli)?;
    if mask.is_empty() {
        return Err(Error::TrivialSubgroup.into());
    }
    let base = CayleyGraph::standard(group.clone())?;
    let quotient = base.quotient(&mask)?;
    let spec = CentralSubgroupSpec::from_mask(group.clone(), &mask)?;
    if spec.is_trivial() {
        return Err(Error::TrivialSubgroup.into());
    }
    let counter = counters.counter();
    let base_table = counter.count(&base, n_max)?;
    let q_table = counter.count(&quotient, n_max)?;
    let bad = domination_violations(&base_table, &q_table);
    if !bad.is_empty() {
        return Err(Failure::Invariant(format!(
            "c_n({}) > c_n({}) at n = {bad:?}",
            quotient.key(),
            base.key()
        )));
    }
    let si = si_hypothesis_check(&group, &base.gens, &spec)?;
    let (status, witness) = if si {
        match strictness_witness(counter, &base, &quotient, n_max)? {
            Some(w) => (
                "found".to_string(),
                Some(WitnessOut {
                    n: w.n,
                    base_count: w.base_count.to_string(),
                    quotient_count: w.quotient_count.to_string(),
                }),
            ),
            None => (format!("inconclusive up to n = {n_max}"), None),
        }
    } else {
        let _ = writeln!(
            io.err,
            "warning: the radius-2 condition fails: B(2) meets N outside the identity; no strict inequality is claimed"
        );
        ("skipped: radius-2 condition violated".to_string(), None)
    };

    let set = ball(&base, radius)?.vertices;
    let scaled =
        |k: usize| -> Vec<(usize, u64)> { mask.moduli().map(|(i, m)| (i, m * k as u64)).collect() };
    let family = |k: usize| CentralSubgroupSpec::new(group.clone(), scaled(k));
    let report = stabilization_check(
        family,
        &CentralSubgroupSpec::trivial(group.clone()),
        &set,
        horizon,
    )?;
    let graphs = |k: usize| base.quotient(&ModuliMask::new(mask_entries(&mask, k))?);
    let local = local_convergence_radius(graphs, 1..=horizon.max(1), &base, radius)?;

    let out = FactsReport {
        base: base.key(),
        quotient: quotient.key(),
        n_max,
        base_counts: CountsJson::from_table(&base_table),
        quotient_counts: CountsJson::from_table(&q_table),
        fact_i_passed: true,
        si_hypothesis_passed: si,
        witness_status: status,
        witness,
        stabilization: StabilizationOut {
            radius,
            set_size: set.len(),
            family: format!("<k m_i g_i>, mask {}", mask),
            n0: report.n0,
            horizon,
            local_convergence_n0: local,
        },
        timings: Timings {
            wall_seconds: start.elapsed().as_secs_f64(),
        },
    };
    let text = match run.format {
        Format::Json => json(&out),
        Format::Csv | Format::Text => facts_text(&out),
    };
    emit(run, io, &text)
}

fn mask_entries(mask: &ModuliMask, k: usize) -> Vec<Option<u64>> {
    mask.entries()
        .iter()
        .map(|e| e.map(|m| m * k as u64))
        .collect()
}

fn facts_text(r: &FactsReport) -> String {
    let pass = |b: bool| if b { "pass" } else { "fail" };
    let mut s = format!("{} -> {}\n", r.base, r.quotient);
    s += &format!(
        "fact I (c_n(quotient) <= c_n(base), n <= {}): {}\n",
        r.n_max,
        pass(r.fact_i_passed)
    );
    s += &format!("radius-2 hypothesis: {}\n", pass(r.si_hypothesis_passed));
    match &r.witness {
        Some(w) => {
            s += &format!(
                "strictness witness: n = {} ({} vs {})\n",
                w.n, w.base_count, w.quotient_count
            )
        }
        None => s += &format!("strictness witness: {}\n", r.witness_status),
    }
    s += &format!(
        "stabilization on B({}): n0 = {}; local convergence at r = {}: n0 = {} (horizon {})\n",
        r.stabilization.radius,
        r.stabilization.n0,
        r.stabilization.radius,
        r.stabilization.local_convergence_n0,
        r.stabilization.horizon
    );
    s
}

fn cantor_build(
    run: &RunConfig,
    counters: &Counters,
    io: &mut Io,
    cfg: DriverConfig,
    depth: usize,
    diagram_format: DiagramFormat,
    diagram_out: Option<&Path>,
) -> Result<(), Failure> {
    if depth > cfg.k {
        return Err(Error::DepthExceeded { depth, rank: cfg.k }.into());
    }
    let start = Instant::now();
    let (state, orders) = run_construction(cfg, depth, counters.counter())?;
    let manifest = Manifest::new(&state, &orders, start.elapsed().as_secs_f64());
    let picture = match diagram_format {
        DiagramFormat::Ascii => Some(diagram::ascii(&manifest)),
        DiagramFormat::Svg => Some(diagram::svg(&manifest)),
        DiagramFormat::None => None,
    };
    match (&picture, diagram_out) {
        (Some(p), Some(path)) => crate::cache::write_atomic(path, p.as_bytes())?,
        (Some(p), None) if run.format != Format::Text => io.err.write_all(p.as_bytes())?,
        _ => {}
    }
    let text = match run.format {
        Format::Json | Format::Csv => manifest.to_json(),
        Format::Text => {
            let mut s = format!("moduli: {:?}\n", manifest.moduli);
            if diagram_out.is_none() {
                s += picture.as_deref().unwrap_or("");
            }
            s
        }
    };
    emit(run, io, &text)?;
    if !manifest.passed() {
        return Err(Failure::Invariant(format!(
            "order or tree invariants fail: {:?} {:?}",
            manifest.audit.problems,
            manifest
                .order_checks
                .iter()
                .flat_map(|o| o.violations.clone())
                .collect::<Vec<_>>()
        )));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct EvalOut {
    word: String,
    depth: usize,
    prefixes: Vec<String>,
    estimates: Vec<String>,
    product_estimates: Vec<String>,
    descriptor: String,
    support_beyond_depth: bool,
    note: &'static str,
    injectivity: Option<InjectivityOut>,
}

#[derive(Debug, Serialize)]
struct InjectivityOut {
    against: String,
    first_disagreement: usize,
    swapped: bool,
    passed: bool,
    chain: Vec<String>,
    count_violations: Vec<usize>,
}

fn cantor_eval(
    run: &RunConfig,
    counters: &Counters,
    io: &mut Io,
    manifest: &Path,
    word: &str,
    against: Option<&str>,
    depth: Option<usize>,
) -> Result<(), Failure> {
    let m = Manifest::from_json(&std::fs::read_to_string(manifest)?)?;
    let (state, _) = run_construction(
        m.config.driver_config()?,
        m.config.depth,
        counters.counter(),
    )?;
    if state.moduli != m.moduli {
        return Err(Failure::Invariant(format!(
            "manifest moduli {:?} do not replay (got {:?})",
            m.moduli, state.moduli
        )));
    }
    let w: InfiniteWordSpec = word.parse()?;
    let d = depth.unwrap_or(state.depth());
    let e = evaluate_word(&state, &w, d)?;
    let injectivity = match against {
        None => None,
        Some(other) => {
            let v: InfiniteWordSpec = other.parse()?;
            let r = injectivity_witness(&state, &w, &v, d)?;
            Some(InjectivityOut {
                against: v.to_string(),
                first_disagreement: r.first_disagreement,
                swapped: r.swapped,
                passed: r.passed(),
                chain: r
                    .links
                    .iter()
                    .map(|l| {
                        let rel = match l.relation {
                            sawcantor_core::driver::Relation::Le => "<=",
                            sawcantor_core::driver::Relation::Lt => "<",
                        };
                        format!(
                            "{} = {} {rel} {} = {}: {}",
                            l.left,
                            l.left_value,
                            l.right,
                            l.right_value,
                            if l.holds { "holds" } else { "FAILS" }
                        )
                    })
                    .collect(),
                count_violations: r.count_violations,
            })
        }
    };
    let failed = injectivity.as_ref().is_some_and(|i| !i.passed);
    let out = EvalOut {
        word: w.to_string(),
        depth: d,
        prefixes: e.prefixes.iter().map(ToString::to_string).collect(),
        estimates: e.estimates.iter().map(ToString::to_string).collect(),
        product_estimates: e
            .product_estimates
            .iter()
            .map(ToString::to_string)
            .collect(),
        descriptor: e.descriptor,
        support_beyond_depth: e.support_beyond_depth,
        note: "finite-length upper-bound envelopes; the true values converge but are not computed",
        injectivity,
    };
    emit(run, io, &json(&out))?;
    if failed {
        return Err(Failure::Invariant(
            "the separating chain does not hold".into(),
        ));
    }
    Ok(())
}
