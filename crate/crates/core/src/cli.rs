//! Batch driver behind the `rwhopf` binary. Every subcommand is a thin call
//! into the library; [`run`] returns the exit code and the report text so the
//! same path is exercised by tests.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bar_tor::{analytic_tor, tor_dims_capped, BarError, PresentedAlgebra, TorTable};
use crate::divided_power::{a1_verschiebung_report, make_a1, make_an};
use crate::hopf::{check_axioms, verschiebung, verschiebung_hopf_map_check, HopfError, StructuredHopf};
use crate::rw_model::{self, RWModel, RwError, DEFAULT_BAR_CAP};
use crate::series::{partition_generating_series, partitions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILURE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_RESOURCE_CAP: i32 = 3;

pub const SCHEMA_VERSION: u32 = 1;

/// Inclusive integer range written `a..b`; a single value `a` means `a..a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn values(&self) -> Vec<i64> {
        (self.lo..=self.hi).collect()
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |x: &str| {
            x.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad integer {x:?}: {e}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(IntRange { lo, hi })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TorMethod {
    Bar,
    Analytic,
    /// Both, failing on any disagreement.
    Compare,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "rwhopf", version, about = "Exact F2 Hopf algebra and Tor bookkeeping")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Worker threads for grid commands.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// The partition number p(n).
    Partitions {
        #[arg(long)]
        n: usize,
    },
    /// R′, H_*(MU)′ and K series of the model for each k.
    Series {
        #[arg(long, allow_hyphen_values = true)]
        k: IntRange,
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
    /// Hopf axioms of a JSON model, or of A^n(k) when no model is given.
    HopfCheck {
        #[arg(long)]
        model: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 1)]
        weight: usize,
        #[arg(long, default_value_t = 1)]
        factors: usize,
        #[arg(long, default_value_t = 16)]
        trunc: usize,
    },
    /// The Verschiebung of a JSON model, or of A^1(k).
    Verschiebung {
        #[arg(long)]
        model: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 1)]
        weight: usize,
        #[arg(long, default_value_t = 24)]
        trunc: usize,
    },
    /// Tor table of a free algebra (`--gens`) or of the model for `--k`.
    Tor {
        #[arg(long, value_delimiter = ',')]
        gens: Vec<usize>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
        #[arg(long, default_value_t = 0)]
        torus: usize,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
        #[arg(long, default_value_t = 12)]
        trunc: usize,
        #[arg(long, value_enum, default_value_t = TorMethod::Bar)]
        method: TorMethod,
        /// Largest bar complex, in words, that will be built.
        #[arg(long, default_value_t = 2_000_000)]
        cap: u128,
    },
    /// Injectivity of Q_ℓ → Tor_{1,ℓ} for the model for `--k`.
    Edge {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 2000)]
        cap: u128,
    },
    /// K · H_*(MU)′ = R′ for each k.
    VerifyEq46 {
        #[arg(long, allow_hyphen_values = true)]
        k: IntRange,
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
    /// Total-degree Tor over R^{2k} equals K^{2(k+1)} for each k.
    VerifyTorK {
        #[arg(long, allow_hyphen_values = true)]
        k: IntRange,
        #[arg(long, default_value_t = 16)]
        trunc: usize,
    },
    /// The induction consistency grid over m = ℓ−k+1, −2 ≤ k ≤ m+1.
    VerifyInduction {
        #[arg(long)]
        m: IntRange,
        #[arg(long, default_value_t = 16)]
        trunc: usize,
        /// Largest bar complex used to confirm a cell; 0 disables bar homology.
        #[arg(long, default_value_t = DEFAULT_BAR_CAP)]
        bar_cap: u128,
    },
    /// Every verification at its default scale.
    ReportAll,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Partitions { .. } => "partitions",
            Command::Series { .. } => "series",
            Command::HopfCheck { .. } => "hopf-check",
            Command::Verschiebung { .. } => "verschiebung",
            Command::Tor { .. } => "tor",
            Command::Edge { .. } => "edge",
            Command::VerifyEq46 { .. } => "verify-eq46",
            Command::VerifyTorK { .. } => "verify-tor-k",
            Command::VerifyInduction { .. } => "verify-induction",
            Command::ReportAll => "report-all",
        }
    }

    /// Path of the JSON model file, if the command takes one.
    pub fn model_path(&self) -> Option<&std::path::Path> {
        match self {
            Command::HopfCheck { model, .. } | Command::Verschiebung { model, .. } => model.as_deref(),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
enum RunError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource cap: {0}")]
    Cap(String),
    #[error(transparent)]
    Hopf(#[from] HopfError),
}

impl From<BarError> for RunError {
    fn from(e: BarError) -> Self {
        match e {
            BarError::SizeCap { .. } => RunError::Cap(e.to_string()),
            other => RunError::Input(other.to_string()),
        }
    }
}

impl From<RwError> for RunError {
    fn from(e: RwError) -> Self {
        match e {
            RwError::SizeCap { .. } => RunError::Cap(e.to_string()),
            RwError::Bar(b) => b.into(),
            other => RunError::Input(other.to_string()),
        }
    }
}

/// Exit code plus what goes to stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A finished report: JSON payload, text rendering, and whether every
/// checked identity held.
struct Report {
    holds: bool,
    json: Value,
    text: String,
}

/// Runs one command. `model_input` is the text of the `--model` file when the
/// command was given one.
pub fn run(config: &RunConfig, model_input: Option<&str>) -> RunOutcome {
    let fail = |code, msg: String| RunOutcome {
        exit_code: code,
        stdout: String::new(),
        stderr: msg + "\n",
    };
    if config.jobs == 0 {
        return fail(EXIT_INPUT_ERROR, "input error: --jobs must be at least 1".into());
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build() {
        Ok(p) => p,
        Err(e) => return fail(EXIT_INPUT_ERROR, format!("input error: {e}")),
    };
    match pool.install(|| dispatch(&config.command, model_input)) {
        Ok(report) => {
            let stdout = match config.output {
                OutputFormat::Text => report.text,
                OutputFormat::Json => {
                    let mut v = json!({
                        "schema": SCHEMA_VERSION,
                        "command": config.command.name(),
                        "holds": report.holds,
                    });
                    v["result"] = report.json;
                    serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
                }
            };
            RunOutcome {
                exit_code: if report.holds { EXIT_OK } else { EXIT_IDENTITY_FAILURE },
                stdout,
                stderr: String::new(),
            }
        }
        Err(e @ RunError::Cap(_)) => fail(EXIT_RESOURCE_CAP, e.to_string()),
        Err(e @ (RunError::Input(_) | RunError::Hopf(_))) => fail(EXIT_INPUT_ERROR, e.to_string()),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn require_trunc(trunc: usize) -> Result<(), RunError> {
    if trunc == 0 {
        return Err(RunError::Input("--trunc must be at least 1".into()));
    }
    Ok(())
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn dispatch(command: &Command, model_input: Option<&str>) -> Result<Report, RunError> {
    match command {
        &Command::Partitions { n } => Ok(partitions_report(n)),
        &Command::Series { k, trunc } => {
            require_trunc(trunc)?;
            Ok(series_report(k, trunc))
        }
        &Command::HopfCheck {
            weight,
            factors,
            trunc,
            ..
        } => {
            let h = load_or_build(model_input, || {
                if weight == 0 || factors == 0 {
                    return Err(RunError::Input("--weight and --factors must be positive".into()));
                }
                require_trunc(trunc)?;
                Ok(make_an(weight, factors, trunc))
            })?;
            Ok(hopf_check_report(&h))
        }
        &Command::Verschiebung { weight, trunc, .. } => match model_input {
            Some(text) => verschiebung_model_report(&StructuredHopf::from_json(text)?),
            None => {
                if weight == 0 {
                    return Err(RunError::Input("--weight must be positive".into()));
                }
                require_trunc(trunc)?;
                let r = a1_verschiebung_report(weight, trunc)?;
                let text = format!(
                    "A^1({weight}) to degree {trunc}\n  v(b2n) = bn: {}\n  v(b2n+1) = 0: {}\n  surjective: {}\n  target is A^1({}): {}\n  bialgebra violations: {}\n",
                    mark(r.even_halving),
                    mark(r.odd_vanishing),
                    mark(r.surjective),
                    2 * weight,
                    mark(r.target_is_a1_double),
                    r.bialgebra_violations
                );
                Ok(Report {
                    holds: r.holds(),
                    json: to_value(&r),
                    text,
                })
            }
        },
        Command::Tor {
            gens,
            k,
            torus,
            s_max,
            trunc,
            method,
            cap,
        } => {
            require_trunc(*trunc)?;
            let algebra = match k {
                Some(k) => {
                    if !gens.is_empty() || *torus != 0 {
                        return Err(RunError::Input("--k excludes --gens and --torus".into()));
                    }
                    RWModel::new(*k, *trunc).algebra()
                }
                None => PresentedAlgebra::new(gens.clone(), *torus, *trunc)?,
            };
            tor_report(&algebra, *s_max, *trunc, *method, *cap)
        }
        &Command::Edge { k, ell, cap } => {
            let e = rw_model::edge_map(k, ell, cap)?;
            let injective = e.is_injective();
            let text = format!(
                "k={k} ell={ell}: dim Q = {}, dim Tor_1 = {}, rank = {}, injective: {}\n",
                e.q_dim,
                e.tor1_dim,
                e.rank(),
                mark(injective)
            );
            Ok(Report {
                holds: injective,
                json: json!({"k": k, "ell": ell, "q_dim": e.q_dim, "tor1_dim": e.tor1_dim, "rank": e.rank(), "injective": injective}),
                text,
            })
        }
        &Command::VerifyEq46 { k, trunc } => {
            require_trunc(trunc)?;
            Ok(series_grid_report("eq46", &rw_model::eq46_grid(&k.values(), trunc), trunc))
        }
        &Command::VerifyTorK { k, trunc } => {
            require_trunc(trunc)?;
            Ok(series_grid_report("tor_k", &rw_model::prop39_4_grid(&k.values(), trunc), trunc))
        }
        &Command::VerifyInduction { m, trunc, bar_cap } => {
            require_trunc(trunc)?;
            induction_report(m, trunc, (bar_cap > 0).then_some(bar_cap))
        }
        Command::ReportAll => report_all(),
    }
}

fn load_or_build(
    model_input: Option<&str>,
    build: impl FnOnce() -> Result<StructuredHopf, RunError>,
) -> Result<StructuredHopf, RunError> {
    match model_input {
        Some(text) => Ok(StructuredHopf::from_json(text)?),
        None => build(),
    }
}

fn partitions_report(n: usize) -> Report {
    let p = partitions(n);
    Report {
        holds: true,
        json: json!({"n": n, "value": crate::series::bigint_to_json(&p)}),
        text: format!("{p}\n"),
    }
}

fn series_report(k: IntRange, trunc: usize) -> Report {
    let mut text = String::new();
    let mut cells = Vec::new();
    for k in k.values() {
        let r = rw_model::r_prime_series(k, trunc);
        let h = rw_model::hmu_prime_series(k, trunc);
        let kk = rw_model::k_series(k, trunc);
        let _ = writeln!(text, "k = {k}\n  R'    = {r}\n  HMU'  = {h}\n  K     = {kk}");
        cells.push(json!({"k": k, "r_prime": r, "hmu_prime": h, "k_series": kk}));
    }
    Report {
        holds: true,
        json: json!({"trunc": trunc, "cells": cells}),
        text,
    }
}

fn hopf_check_report(h: &StructuredHopf) -> Report {
    let r = check_axioms(h);
    let mut text = String::new();
    if r.is_ok() {
        let _ = writeln!(text, "all axioms hold ({} basis elements)", h.basis_len());
    }
    for v in &r.violations {
        let _ = writeln!(text, "FAIL {}: {}", v.axiom, v.witnesses.join(", "));
    }
    Report {
        holds: r.is_ok(),
        json: json!({
            "basis_len": h.basis_len(),
            "failed_axioms": r.failed_axioms().iter().map(|a| a.name()).collect::<Vec<_>>(),
            "violations": r.violations,
        }),
        text,
    }
}

fn verschiebung_model_report(h: &StructuredHopf) -> Result<Report, RunError> {
    let v = verschiebung(h)?;
    let violations = verschiebung_hopf_map_check(h)?;
    let mut text = String::new();
    let mut images = Vec::new();
    for x in 0..h.basis_len() {
        let img = crate::hopf::verschiebung_element(h, &[x].into())?;
        let shown = if h.degree(x) % 2 == 1 { "0".to_string() } else { h.describe(&img) };
        let _ = writeln!(text, "v({}) = {shown}", h.label(x));
        images.push(json!({"basis": h.label(x), "image": shown}));
    }
    let ranks: Vec<usize> = (0..=h.trunc_degree())
        .map(|d| v.rank(d as i64))
        .collect::<Result<_, _>>()
        .map_err(HopfError::from)?;
    let _ = writeln!(text, "ranks by source degree: {ranks:?}");
    for viol in &violations {
        let _ = writeln!(text, "FAIL {}: {}", viol.axiom, viol.witnesses.join(", "));
    }
    Ok(Report {
        holds: violations.is_empty(),
        json: json!({"images": images, "ranks": ranks, "violations": violations}),
        text,
    })
}

fn tor_report(
    algebra: &PresentedAlgebra,
    s_max: usize,
    trunc: usize,
    method: TorMethod,
    cap: u128,
) -> Result<Report, RunError> {
    let analytic = || analytic_tor(algebra, s_max, trunc);
    let computed = || tor_dims_capped(algebra, s_max, trunc, cap);
    let (table, holds): (TorTable, bool) = match method {
        TorMethod::Analytic => (analytic(), true),
        TorMethod::Bar => (computed()?, true),
        TorMethod::Compare => {
            let c = computed()?;
            let a = analytic();
            let same = (0..=s_max).all(|s| (0..=trunc).all(|t| c.get(s, t) == a.get(s, t)));
            (c, same)
        }
    };
    let mut text = table.to_text_grid();
    if method == TorMethod::Compare {
        let _ = writeln!(text, "bar homology agrees with the exterior algebra formula: {}", mark(holds));
    }
    Ok(Report {
        holds,
        json: to_value(&table),
        text,
    })
}

fn series_grid_report(name: &str, cells: &[rw_model::SeriesCell], trunc: usize) -> Report {
    let holds = cells.iter().all(|c| c.holds);
    let mut text = String::new();
    for c in cells {
        let _ = writeln!(text, "{name} k={:>3} N={trunc}: {}", c.k, mark(c.holds));
    }
    let _ = writeln!(text, "{} cells, {} failing", cells.len(), cells.iter().filter(|c| !c.holds).count());
    Report {
        holds,
        json: json!({"trunc": trunc, "cells": cells}),
        text,
    }
}

fn induction_report(m: IntRange, trunc: usize, bar_cap: Option<u128>) -> Result<Report, RunError> {
    let cells = rw_model::induction_region(m.lo, m.hi);
    let reports = rw_model::induction_grid(&cells, trunc, bar_cap)?;
    let holds = reports.iter().all(|r| r.consistent);
    let mut text = rw_model::induction_text_table(&reports);
    for r in reports.iter().filter(|r| !r.consistent) {
        let _ = writeln!(
            text,
            "FAIL m={} k={} ell={}: tor1={} k_next={} higher={} offending={:?} bar_mismatch={:?}",
            r.m, r.k, r.ell, r.tor1_dim, r.k_next_dim, r.higher_tor_sum, r.offending, r.bar_mismatch
        );
    }
    let _ = writeln!(text, "{} cells, {} inconsistent", reports.len(), reports.iter().filter(|r| !r.consistent).count());
    Ok(Report {
        holds,
        json: json!({"trunc": trunc, "cells": reports}),
        text,
    })
}

/// Free algebras whose bar homology is compared with the formula in
/// `report-all`.
const REPORT_BAR_CASES: &[&[usize]] = &[&[1], &[2], &[3], &[1, 1], &[1, 2], &[2, 3], &[1, 1, 2], &[1, 2, 3, 4]];

fn report_all() -> Result<Report, RunError> {
    let mut sections = serde_json::Map::new();
    let mut text = String::new();
    let mut holds = true;
    let mut add = |name: &str, ok: bool, value: Value, text: &mut String| {
        holds &= ok;
        let _ = writeln!(text, "{name:<24} {}", mark(ok));
        sections.insert(name.to_string(), json!({"holds": ok, "detail": value}));
    };

    let gen = partition_generating_series(30);
    let values: Vec<Value> = (0..=30).map(|n| Value::Number(crate::series::bigint_to_json(&partitions(n)))).collect();
    let ok = (0..=30).all(|n| partitions(n) == gen.coeff(n));
    add("partitions", ok, json!(values), &mut text);

    let ks: Vec<i64> = (-4..=8).collect();
    let cells = rw_model::eq46_grid(&ks, 20);
    add("eq46", cells.iter().all(|c| c.holds), to_value(&cells), &mut text);

    let ks: Vec<i64> = (-3..=6).collect();
    let cells = rw_model::prop39_4_grid(&ks, 16);
    add("tor_k", cells.iter().all(|c| c.holds), to_value(&cells), &mut text);

    let shadow: Vec<Value> = (-4..=8)
        .map(|k| json!({"k": k, "holds": rw_model::verschiebung_shadow_check(k, 20)}))
        .collect();
    let ok = shadow.iter().all(|c| c["holds"] == json!(true));
    add("verschiebung_shadow", ok, json!(shadow), &mut text);

    let stable: Vec<_> = (-2..=4).map(|k| rw_model::stable_range_report(k, 10)).collect();
    add("stable_range", true, to_value(&stable), &mut text);

    let mut vs = Vec::new();
    for k in 1..=3 {
        vs.push(a1_verschiebung_report(k, 24)?);
    }
    add("verschiebung_a1", vs.iter().all(|r| r.holds()), to_value(&vs), &mut text);

    let mut axioms = Vec::new();
    for k in 1..=3 {
        for n in 1..=2 {
            let h = if n == 1 { make_a1(k, 16).into_hopf() } else { make_an(k, n, 16) };
            axioms.push(json!({"weight": k, "factors": n, "holds": check_axioms(&h).is_ok()}));
        }
    }
    let ok = axioms.iter().all(|c| c["holds"] == json!(true));
    add("hopf_axioms", ok, json!(axioms), &mut text);

    let mut bar = Vec::new();
    for gens in REPORT_BAR_CASES {
        let a = PresentedAlgebra::new(gens.to_vec(), 0, 10)?;
        let c = crate::bar_tor::tor_dims(&a, 4, 10)?;
        let same = c.to_json().replace("computed", "analytic") == analytic_tor(&a, 4, 10).to_json();
        bar.push(json!({"generators": gens, "holds": same}));
    }
    let ok = bar.iter().all(|c| c["holds"] == json!(true));
    add("bar_oracle", ok, json!(bar), &mut text);

    let cells = rw_model::induction_region(1, 6);
    let reports = rw_model::induction_grid(&cells, 16, Some(DEFAULT_BAR_CAP))?;
    add("induction", reports.iter().all(|r| r.consistent), to_value(&reports), &mut text);

    let mut edges = Vec::new();
    for k in 1..=3 {
        for ell in 1..=6 {
            let cell = match rw_model::edge_injectivity_check(k, ell, 2000) {
                Ok(b) => json!({"k": k, "ell": ell, "injective": b}),
                Err(RwError::SizeCap { .. }) => json!({"k": k, "ell": ell, "injective": null}),
                Err(e) => return Err(e.into()),
            };
            edges.push(cell);
        }
    }
    let ok = edges.iter().all(|c| c["injective"] != json!(false));
    add("edge", ok, json!(edges), &mut text);

    Ok(Report {
        holds,
        json: Value::Object(sections),
        text,
    })
}
