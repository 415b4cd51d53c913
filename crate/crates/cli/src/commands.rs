//! The five subcommands as pure functions from arguments to reports.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use rips_morse::complex::{rips_complex, Graph};
use rips_morse::covering::{helly_crosscheck, min_enclosing_lattice_ball, r_t, verify_covering_hypothesis};
use rips_morse::homology::{contractibility_verdict, reduced_betti, Witness};
use rips_morse::morse::{analyze_descending_link, filtration_check, FILTRATION_SPACE_CAP};
use rips_morse::rational::to_fraction_string;
use rips_morse::{Lattice, LatticePoint, LinkConfig, Rational, VerdictStatus, VertexSet, Window};

use crate::canonical::enumerate_canonical_sets;
use crate::error::CliError;
use crate::input::{parse_window, SpaceSource};
use crate::report::{Format, Report, Table};
use crate::sampling::{sample_sets, SampleSpec};

#[derive(Parser, Debug)]
#[command(name = "rips-morse", version, about = "Verification campaigns for Morse-theoretic contractibility of Rips complexes of Z^n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the ball-covering hypothesis on lattice sets of diameter t.
    VerifyCovering {
        #[command(flatten)]
        campaign: CampaignArgs,
        /// Also run the exact Helly cross-check on sets with more than n+1 points.
        #[arg(long)]
        helly: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Certify descending links of lattice sets of diameter t.
    VerifyLinks {
        #[command(flatten)]
        campaign: CampaignArgs,
        /// Run the direct coface computation after nerve certificates as well.
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reduced Betti numbers and a contractibility verdict for one Rips complex.
    RipsBetti {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        t: u64,
        /// Skeleton cap; defaults to the largest clique, which is exact.
        #[arg(long)]
        max_dim: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare Rips_s and Rips_t against the descending links in between.
    FiltrationCheck {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 6)]
        coface_cap: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Observational scan of descending-link verdicts below the proven range.
    ConjectureScan {
        #[arg(long)]
        n: usize,
        /// Inclusive range of scales, `a..b`.
        #[arg(long)]
        t_range: String,
        /// Diameters t+1 ..= t+bands are scanned for each t.
        #[arg(long, default_value_t = 1)]
        bands: u64,
        #[command(flatten)]
        sets: SetArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    #[arg(long, default_value_t = 4)]
    pub max_size: usize,
    #[arg(long, default_value_t = 1)]
    pub min_size: usize,
    /// Box `"x0,y0:x1,y1"`; defaults to `[0,t]^n`.
    #[arg(long)]
    pub window: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    pub mode: Mode,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Required in random mode.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 6)]
    pub coface_cap: usize,
}

#[derive(Args, Debug, Clone)]
pub struct CampaignArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub t: u64,
    #[command(flatten)]
    pub sets: SetArgs,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SpaceArgs {
    /// CSV distance matrix.
    #[arg(long)]
    pub matrix: Option<String>,
    /// JSON array of lattice points (inline or a file) with the ℓ¹ metric.
    #[arg(long)]
    pub points: Option<String>,
    /// Path graph metric on this many points.
    #[arg(long)]
    pub path: Option<usize>,
    /// Cycle graph metric on this many points.
    #[arg(long)]
    pub cycle: Option<usize>,
}

impl SpaceArgs {
    pub fn source(&self) -> SpaceSource {
        match (&self.matrix, &self.points, self.path, self.cycle) {
            (Some(m), ..) => SpaceSource::Matrix(m.clone()),
            (_, Some(p), ..) => SpaceSource::Points(p.clone()),
            (_, _, Some(m), _) => SpaceSource::Path(m),
            (.., Some(m)) => SpaceSource::Cycle(m),
            _ => unreachable!("clap requires one space source"),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Report file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// A finished run: the report, and whether it records a property violation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub failed: bool,
    pub warnings: Vec<String>,
}

pub fn execute(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::VerifyCovering { campaign, helly, .. } => verify_covering(campaign, *helly),
        Command::VerifyLinks { campaign, cross_check, .. } => verify_links(campaign, *cross_check),
        Command::RipsBetti { space, t, max_dim, .. } => rips_betti(&space.source(), *t, *max_dim),
        Command::FiltrationCheck { space, s, t, coface_cap, .. } => {
            filtration(&space.source(), *s, *t, *coface_cap)
        }
        Command::ConjectureScan { n, t_range, bands, sets, .. } => conjecture_scan(*n, t_range, *bands, sets),
    }
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::VerifyCovering { output, .. }
            | Command::VerifyLinks { output, .. }
            | Command::RipsBetti { output, .. }
            | Command::FiltrationCheck { output, .. }
            | Command::ConjectureScan { output, .. } => output,
        }
    }

    pub fn default_format(&self) -> Format {
        match self {
            Command::ConjectureScan { .. } => Format::Csv,
            _ => Format::Json,
        }
    }
}

/// Runs `f` on a pool sized by `RIPS_MORSE_THREADS` when it is set.
pub fn with_thread_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("RIPS_MORSE_THREADS") {
        let k: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| CliError::Usage(format!("RIPS_MORSE_THREADS must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(k);
    }
    let pool = builder.build().map_err(CliError::input)?;
    Ok(pool.install(f))
}

fn window_for(sets: &SetArgs, n: usize, t: u64) -> Result<Window, CliError> {
    let window = match &sets.window {
        Some(w) => parse_window(w)?,
        None => Window::cube(n, 0, t as i64).map_err(|e| CliError::Usage(e.to_string()))?,
    };
    if window.dim() != n {
        return Err(CliError::Usage(format!("window has dimension {}, expected n = {n}", window.dim())));
    }
    Ok(window)
}

/// The campaign's sets: canonical orbit representatives in key order, or
/// seeded random draws in draw order.
pub fn campaign_sets(n: usize, t: u64, sets: &SetArgs) -> Result<Vec<VertexSet<LatticePoint>>, CliError> {
    if n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    if t == 0 {
        return Err(CliError::Usage("t must be positive".into()));
    }
    let window = window_for(sets, n, t)?;
    match sets.mode {
        Mode::Exhaustive => Ok(enumerate_canonical_sets(n, t, sets.max_size, &window)
            .map_err(|e| CliError::Usage(e.to_string()))?
            .into_iter()
            .filter(|s| s.len() >= sets.min_size)
            .collect()),
        Mode::Random => {
            let seed = sets
                .seed
                .ok_or_else(|| CliError::Usage("random mode needs --seed".into()))?;
            let spec = SampleSpec {
                n,
                t,
                min_size: sets.min_size.max(2),
                max_size: sets.max_size,
                samples: sets.samples,
                seed,
            };
            sample_sets(&spec, &window)
        }
    }
}

fn campaign_config(command: &str, n: usize, t: u64, sets: &SetArgs) -> Value {
    json!({
        "command": command,
        "n": n,
        "t": t,
        "max_size": sets.max_size,
        "min_size": sets.min_size,
        "window": sets.window,
        "mode": sets.mode,
        "samples": (sets.mode == Mode::Random).then_some(sets.samples),
        "seed": sets.seed,
        "coface_cap": sets.coface_cap,
    })
}

fn points_json(s: &VertexSet<LatticePoint>) -> String {
    serde_json::to_string(s).expect("point sets serialize")
}

fn frac(r: &Rational) -> String {
    to_fraction_string(r)
}

pub fn verify_covering(args: &CampaignArgs, helly: bool) -> Result<Outcome, CliError> {
    let (n, t) = (args.n, args.t);
    let threshold = (n * n + n) as u64;
    if n == 0 || t < threshold {
        return Err(CliError::Usage(format!("verify-covering needs t >= n^2+n = {threshold}, got t = {t}")));
    }
    let lattice = Lattice::new(n).map_err(CliError::input)?;
    let sets = campaign_sets(n, t, &args.sets)?;
    let bound = r_t(n, t).map_err(CliError::input)?;

    let results = with_thread_pool(|| {
        sets.par_iter()
            .map(|s| -> Result<(Value, Vec<String>, Rational, usize), CliError> {
                let rep = verify_covering_hypothesis(s, &lattice).map_err(CliError::input)?;
                let ball = min_enclosing_lattice_ball(s);
                let mut violations = rep.violations.clone();
                if ball.radius > bound {
                    violations.push(format!("minimal lattice ball radius {} exceeds r_t", frac(&ball.radius)));
                }
                let mut item = serde_json::to_value(&rep).expect("reports serialize");
                item["min_lattice_radius"] = json!(frac(&ball.radius));
                if helly && s.len() > n + 1 {
                    let h = helly_crosscheck(s, &lattice).map_err(CliError::input)?;
                    if !h.hypothesis_ok {
                        violations.push(format!("{} (n+1)-subsets exceed the Helly radius", h.failing_subsets.len()));
                    }
                    if !h.conclusion_ok {
                        violations.push(format!("Chebyshev radius {} exceeds the Helly radius", frac(&h.full_radius)));
                    }
                    item["helly"] = json!({
                        "bound": frac(&h.bound),
                        "subsets_checked": h.subsets_checked,
                        "max_subset_radius": frac(&h.max_subset_radius),
                        "full_radius": frac(&h.full_radius),
                        "hypothesis_ok": h.hypothesis_ok,
                        "conclusion_ok": h.conclusion_ok,
                    });
                }
                item["violations"] = json!(violations);
                Ok((item, violations, ball.radius, rep.y_size))
            })
            .collect::<Result<Vec<_>, CliError>>()
    })??;

    let mut table = Table {
        header: vec!["S", "y0", "Y_size", "min_lattice_radius", "proximity_ok", "violations"],
        rows: Vec::new(),
    };
    let mut items = Vec::new();
    let mut violations = Vec::new();
    let mut max_radius: Option<Rational> = None;
    let mut helly_checked = 0;
    for (s, (item, v, radius, y_size)) in sets.iter().zip(results) {
        table.rows.push(vec![
            points_json(s),
            item["y0"].to_string(),
            y_size.to_string(),
            frac(&radius),
            item["proximity_ok"].to_string(),
            v.len().to_string(),
        ]);
        if !v.is_empty() {
            violations.push(json!({ "S": s, "violations": v }));
        }
        if item.get("helly").is_some() {
            helly_checked += 1;
        }
        if max_radius.as_ref().is_none_or(|m| radius > *m) {
            max_radius = Some(radius);
        }
        items.push(item);
    }
    let mut config = campaign_config("verify-covering", n, t, &args.sets);
    config["helly"] = json!(helly);
    let summary = json!({
        "sets": sets.len(),
        "violating_sets": violations.len(),
        "r_t": frac(&bound),
        "max_min_lattice_radius": max_radius.as_ref().map(frac),
        "helly_checked": helly_checked,
    });
    Ok(Outcome {
        failed: !violations.is_empty(),
        report: Report { config, summary, items, violations, table },
        warnings: Vec::new(),
    })
}

fn status_name(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::ContractibleCertified => "ContractibleCertified",
        VerdictStatus::NotContractible => "NotContractible",
        VerdictStatus::Unknown => "Unknown",
    }
}

/// Compact per-set link outcome; errors from resource caps count as Unknown.
struct LinkItem {
    item: Value,
    status: VerdictStatus,
    violations: Vec<String>,
}

fn link_item(lattice: &Lattice, s: &VertexSet<LatticePoint>, config: &LinkConfig) -> LinkItem {
    match analyze_descending_link(lattice, s, None, config) {
        Ok(rep) => {
            let status = rep.joined_verdict.status;
            let item = json!({
                "S": s,
                "diam": rep.diam,
                "h": rep.morse_value,
                "method": rep.method,
                "face": status_name(rep.face_link_verdict.status),
                "face_witness": rep.face_link_verdict.witness_kind(),
                "coface": status_name(rep.coface_link_verdict.status),
                "coface_witness": rep.coface_link_verdict.witness_kind(),
                "joined": status_name(status),
                "closure_checked": rep.closure_checked,
                "nerve_size": rep.nerve_size,
                "coface_candidates": rep.coface_candidates,
                "direct_coface": rep.direct_coface_status.map(status_name),
                "notes": rep.notes,
                "violations": rep.violations,
            });
            LinkItem { item, status, violations: rep.violations }
        }
        Err(e) => LinkItem {
            item: json!({ "S": s, "diam": s.diam(), "joined": "Unknown", "error": e.to_string() }),
            status: VerdictStatus::Unknown,
            violations: Vec::new(),
        },
    }
}

#[derive(Default, Serialize)]
struct Counts {
    certified: usize,
    not_contractible: usize,
    unknown: usize,
}

impl Counts {
    fn add(&mut self, s: VerdictStatus) {
        match s {
            VerdictStatus::ContractibleCertified => self.certified += 1,
            VerdictStatus::NotContractible => self.not_contractible += 1,
            VerdictStatus::Unknown => self.unknown += 1,
        }
    }
}

fn link_config(sets: &SetArgs, cross_check: bool) -> LinkConfig {
    LinkConfig { coface_cap: sets.coface_cap, cross_check, ..LinkConfig::default() }
}

pub fn verify_links(args: &CampaignArgs, cross_check: bool) -> Result<Outcome, CliError> {
    let (n, t) = (args.n, args.t);
    let lattice = Lattice::new(n).map_err(|e| CliError::Usage(e.to_string()))?;
    let sets = campaign_sets(n, t, &args.sets)?;
    let config = link_config(&args.sets, cross_check);
    let proven = t >= (n * n + n) as u64;

    let results = with_thread_pool(|| sets.par_iter().map(|s| link_item(&lattice, s, &config)).collect::<Vec<_>>())?;

    let mut counts = Counts::default();
    let mut items = Vec::new();
    let mut violations = Vec::new();
    let mut table = Table {
        header: vec!["S", "h", "method", "face", "coface", "joined"],
        rows: Vec::new(),
    };
    for (s, r) in sets.iter().zip(results) {
        counts.add(r.status);
        let mut v = r.violations;
        if proven && r.status == VerdictStatus::NotContractible {
            v.push("descending link is not contractible in the proven range".into());
        }
        if !v.is_empty() {
            violations.push(json!({ "S": s, "violations": v }));
        }
        let field = |k: &str| r.item.get(k).map_or(String::new(), |v| v.as_str().unwrap_or_default().to_string());
        table.rows.push(vec![
            points_json(s),
            field("h"),
            field("method"),
            field("face"),
            field("coface"),
            field("joined"),
        ]);
        items.push(r.item);
    }
    let mut warnings = Vec::new();
    if counts.unknown > 0 {
        warnings.push(format!("{} descending links without a certificate", counts.unknown));
    }
    let mut config_json = campaign_config("verify-links", n, t, &args.sets);
    config_json["cross_check"] = json!(cross_check);
    let summary = json!({
        "sets": sets.len(),
        "proven_range": proven,
        "certified": counts.certified,
        "not_contractible": counts.not_contractible,
        "unknown": counts.unknown,
    });
    Ok(Outcome {
        failed: !violations.is_empty(),
        report: Report { config: config_json, summary, items, violations, table },
        warnings,
    })
}

pub fn rips_betti(source: &SpaceSource, t: u64, max_dim: Option<usize>) -> Result<Outcome, CliError> {
    let space = source.load()?;
    let points: Vec<usize> = space.points().collect();
    let max_dim = match max_dim {
        Some(d) => d,
        None => {
            let graph = Graph::from_fn(points.clone(), |a, b| space.matrix()[*a][*b] <= t).map_err(CliError::input)?;
            graph.maximal_cliques().iter().map(Vec::len).max().unwrap_or(1) - 1
        }
    };
    let k = rips_complex(&space, &points, t, Some(max_dim)).map_err(CliError::input)?;
    let verdict = contractibility_verdict(&k);
    let betti = reduced_betti(&k).ok();
    let apex = match &verdict.witness {
        Witness::Apex { vertex } => Some(*vertex),
        _ => None,
    };
    let summary = json!({
        "vertices": k.vertex_count(),
        "f_vector": k.f_vector(),
        "reduced_betti": betti.as_ref().map(|b| &b.0),
        "verdict": status_name(verdict.status),
        "witness": verdict.witness_kind(),
        "apex": apex,
    });
    let table = Table {
        header: vec!["t", "vertices", "f_vector", "reduced_betti", "verdict", "witness"],
        rows: vec![vec![
            t.to_string(),
            k.vertex_count().to_string(),
            serde_json::to_string(&k.f_vector()).expect("vectors serialize"),
            serde_json::to_string(&betti.as_ref().map(|b| &b.0)).expect("vectors serialize"),
            status_name(verdict.status).to_string(),
            verdict.witness_kind().to_string(),
        ]],
    };
    Ok(Outcome {
        report: Report {
            config: json!({ "command": "rips-betti", "space": source.describe(), "t": t, "max_dim": max_dim }),
            summary,
            items: Vec::new(),
            violations: Vec::new(),
            table,
        },
        failed: false,
        warnings: Vec::new(),
    })
}

pub fn filtration(source: &SpaceSource, s: u64, t: u64, coface_cap: usize) -> Result<Outcome, CliError> {
    let space = source.load()?;
    let config = LinkConfig { coface_cap, ..LinkConfig::default() };
    let rep = filtration_check(&space, s, t, FILTRATION_SPACE_CAP, &config).map_err(|e| CliError::Usage(e.to_string()))?;
    let table = Table {
        header: vec!["subject", "h", "method", "face", "coface", "joined", "witness"],
        rows: rep
            .links
            .iter()
            .map(|l| {
                vec![
                    serde_json::to_string(&l.subject).expect("indices serialize"),
                    l.h.to_string(),
                    l.method.as_str().to_string(),
                    status_name(l.face).to_string(),
                    status_name(l.coface).to_string(),
                    status_name(l.joined).to_string(),
                    l.witness.to_string(),
                ]
            })
            .collect(),
    };
    let summary = json!({
        "space_size": rep.space_size,
        "band_size": rep.band_size,
        "certified": rep.certified,
        "not_contractible": rep.not_contractible,
        "unknown": rep.unknown,
        "all_certified": rep.all_certified,
        "betti_s": rep.betti_s.0,
        "betti_t": rep.betti_t.0,
        "betti_equal": rep.betti_equal,
    });
    let items = rep.links.iter().map(|l| serde_json::to_value(l).expect("links serialize")).collect();
    let violations: Vec<Value> = rep.violations.iter().map(|v| json!(v)).collect();
    Ok(Outcome {
        failed: !violations.is_empty(),
        report: Report {
            config: json!({
                "command": "filtration-check",
                "space": source.describe(),
                "s": s,
                "t": t,
                "coface_cap": coface_cap,
            }),
            summary,
            items,
            violations,
            table,
        },
        warnings: Vec::new(),
    })
}

pub fn parse_t_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("t range {s:?} is not of the form \"a..b\" with 1 <= a <= b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn conjecture_scan(n: usize, t_range: &str, bands: u64, sets: &SetArgs) -> Result<Outcome, CliError> {
    let (lo, hi) = parse_t_range(t_range)?;
    if bands == 0 {
        return Err(CliError::Usage("--bands must be positive".into()));
    }
    let lattice = Lattice::new(n).map_err(|e| CliError::Usage(e.to_string()))?;
    let config = link_config(sets, false);
    let mut table = Table {
        header: vec!["t", "diam", "sets", "certified", "not_contractible", "unknown", "max_min_enclosing_radius"],
        rows: Vec::new(),
    };
    let mut items = Vec::new();
    for t in lo..=hi {
        for diam in t + 1..=t + bands {
            let mut scale_sets = sets.clone();
            scale_sets.seed = sets.seed.map(|seed| seed.wrapping_add(diam));
            let family = campaign_sets(n, diam, &scale_sets)?;
            let results = with_thread_pool(|| {
                family
                    .par_iter()
                    .map(|s| (link_item(&lattice, s, &config).status, min_enclosing_lattice_ball(s).radius))
                    .collect::<Vec<_>>()
            })?;
            let mut counts = Counts::default();
            let mut max_radius: Option<Rational> = None;
            for (status, radius) in results {
                counts.add(status);
                if max_radius.as_ref().is_none_or(|m| radius > *m) {
                    max_radius = Some(radius);
                }
            }
            let radius = max_radius.as_ref().map(frac).unwrap_or_default();
            table.rows.push(vec![
                t.to_string(),
                diam.to_string(),
                family.len().to_string(),
                counts.certified.to_string(),
                counts.not_contractible.to_string(),
                counts.unknown.to_string(),
                radius.clone(),
            ]);
            items.push(json!({
                "t": t,
                "diam": diam,
                "sets": family.len(),
                "certified": counts.certified,
                "not_contractible": counts.not_contractible,
                "unknown": counts.unknown,
                "max_min_enclosing_radius": max_radius.as_ref().map(frac),
            }));
        }
    }
    let mut config_json = campaign_config("conjecture-scan", n, lo, sets);
    config_json["t"] = json!(null);
    config_json["t_range"] = json!([lo, hi]);
    config_json["bands"] = json!(bands);
    Ok(Outcome {
        report: Report {
            config: config_json,
            summary: json!({ "rows": items.len() }),
            items,
            violations: Vec::new(),
            table,
        },
        failed: false,
        warnings: Vec::new(),
    })
}
