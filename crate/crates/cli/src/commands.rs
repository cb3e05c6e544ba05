//! Executes parsed commands and builds their JSON reports.

use std::path::Path;

use outerspace_core::asymptotics::{growth_fit, power_stretch_sequence_with, PowerOptions, PowerValue, StretchMode};
use outerspace_core::currents::{counting_current, j_constant, j_current_weight, intersection_form, uniform_current, JCurrent};
use outerspace_core::entropy::volume_entropy;
use outerspace_core::lipschitz::{candidates, lambda_distortion, lipschitz_distance};
use outerspace_core::rational::format_q;
use outerspace_core::stretch::{mc_trial, substitution_stretch_capped, summarize, DriftMethod, DriftResult, Substitution};
use outerspace_core::{Automorphism, Current, EdgePath, Letter, MarkedGraph, NielsenMove, WeightValue};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cli::*;
use crate::error::{CliError, Result};
use crate::experiments::{emit, run_inverse_scan, run_ratio_histogram, run_rho_scan, ExperimentConfig, ExperimentKind, OutputPaths};
use crate::graph_json::{load_graph, load_graph_json, GraphJson};
use crate::report::envelope;
use crate::suite::{format_line, run_suite};
use crate::svg;
use crate::text::{format_automorphism, format_endomorphism, format_letter, format_word, parse_automorphism, parse_word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// a checked property failed (exit code 3)
    CheckFailed,
}

#[derive(Debug)]
pub struct Output {
    pub report: Value,
    pub status: Status,
}

impl Output {
    fn ok(report: Value) -> Self {
        Output { report, status: Status::Ok }
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Stretch(StretchCommand::Exact { target, cylinder_cap }) => {
            let s = substitution(target)?;
            let r = substitution_stretch_capped(&s, *cylinder_cap)?;
            Ok(Output::ok(envelope("stretch exact", &cli.command, drift_json(&r))))
        }
        Command::Stretch(StretchCommand::Mc { target, steps, trials, seed }) => {
            if *steps == 0 || *trials == 0 {
                return Err(CliError::input("steps and trials must be positive"));
            }
            let s = substitution(target)?;
            let samples: Vec<f64> = (0..*trials as u64).into_par_iter().map(|t| mc_trial(&s, *steps, *seed, t)).collect();
            let e = summarize(&samples, *steps);
            let body = json!({"estimate": e.mean, "stderr": e.stderr, "steps": steps, "trials": trials, "seed": seed});
            Ok(Output::ok(envelope("stretch mc", &cli.command, body)))
        }
        Command::Lipschitz(a) => {
            let (t, s) = (load_graph(&a.from)?, load_graph(&a.to)?);
            let d = lambda_distortion(&t, &s)?;
            let (dl, _) = lipschitz_distance(&t.normalize_volume(), &s.normalize_volume())?;
            let body = json!({"lambda": format_q(&d.lambda), "witness": format_word(&d.witness), "dL": dl});
            Ok(Output::ok(envelope("lipschitz", &cli.command, body)))
        }
        Command::Candidates(a) => {
            let t = load_graph(&a.tree)?;
            let set = candidates(&t);
            let loops: Vec<Value> = set
                .loops
                .iter()
                .map(|c| json!({"word": format_word(&c.word), "length": format_q(&c.length), "circuit": circuit_json(&c.circuit)}))
                .collect();
            Ok(Output::ok(envelope("candidates", &cli.command, json!({"count": loops.len(), "candidates": loops}))))
        }
        Command::Current(c) => current(cli, c),
        Command::Entropy(a) => {
            let t = load_graph(&a.tree)?;
            Ok(Output::ok(envelope("entropy", &cli.command, json!({"entropy": volume_entropy(&t)}))))
        }
        Command::Growth(a) => growth(cli, a),
        Command::Experiment(e) => experiment(cli, e),
        Command::Collapse(a) => {
            let spec = load_graph_json(&a.graph)?.to_spec()?.collapse_degree_two()?;
            let g = MarkedGraph::new(&spec)?;
            Ok(Output::ok(serde_json::to_value(GraphJson::from_graph(&g))?))
        }
        Command::Certify(a) => {
            let phi = parse_automorphism(&a.aut)?;
            let body = json!({
                "automorphism": format_automorphism(&phi),
                "inverse": format_endomorphism(phi.inverse_map()),
                "certificate": phi.certificate().iter().map(|&m| format_move(m)).collect::<Vec<_>>(),
                "permutational": phi.is_permutational(),
            });
            Ok(Output::ok(envelope("certify", &cli.command, body)))
        }
    }
}

fn substitution(t: &Target) -> Result<Substitution> {
    match (&t.aut, &t.tree) {
        (Some(a), None) => Ok(Substitution::for_automorphism(&parse_automorphism(a)?)),
        (None, Some(g)) => Ok(Substitution::for_graph(&load_graph(g)?)?),
        _ => Err(CliError::input("give exactly one of --aut and --tree")),
    }
}

fn drift_json(r: &DriftResult) -> Value {
    match &r.method {
        DriftMethod::Machine { states, window, terminal_classes, steps } => json!({
            "lambda": format_q(&r.value),
            "states": states,
            "K": window,
            "method": "machine",
            "terminal_classes": terminal_classes,
            "stationary_after": steps,
        }),
        DriftMethod::Cylinders { nodes, bound } => json!({
            "lambda": format_q(&r.value),
            "method": "cylinders",
            "nodes": nodes,
            "cancellation_bound": format_q(bound),
        }),
    }
}

/// Oriented edges as `"3"` (forward) or `"3'"` (reversed).
fn circuit_json(c: &EdgePath) -> Vec<String> {
    c.edges.iter().map(|&s| if s & 1 == 0 { format!("{}", s >> 1) } else { format!("{}'", s >> 1) }).collect()
}

fn format_move(m: NielsenMove) -> String {
    let g = |i: usize| format_letter(Letter::generator(i));
    let signed = |j: usize, inv: bool| {
        let l = Letter::generator(j);
        format_letter(if inv { l.inverse() } else { l })
    };
    match m {
        NielsenMove::Right { i, j, inverse } => format!("{}->{}{}", g(i), g(i), signed(j, inverse)),
        NielsenMove::Left { i, j, inverse } => format!("{}->{}{}", g(i), signed(j, inverse), g(i)),
        NielsenMove::Invert { i } => format!("{}->{}", g(i), signed(i, true)),
        NielsenMove::Swap { i, j } => format!("{}<->{}", g(i), g(j)),
    }
}

fn weight_json(x: &WeightValue) -> Value {
    match x {
        WeightValue::Exact(q) => json!(format_q(q)),
        WeightValue::Approx { value, tail } => json!({"value": value, "tail": tail}),
    }
}

/// `uniform:<N>`, `word:<w>` (rank from `rank` or inferred) or `j:<graph>`.
fn parse_current(spec: &str, rank: Option<usize>, depth: usize, eps: f64) -> Result<Current> {
    let (kind, arg) = spec.split_once(':').ok_or_else(|| CliError::input(format!("current {spec:?} needs a kind prefix")))?;
    match kind {
        "uniform" => {
            let n: usize = arg.trim().parse().map_err(|_| CliError::input(format!("bad rank {arg:?}")))?;
            Ok(uniform_current(n)?)
        }
        "word" => Ok(counting_current(&parse_word(arg, rank)?)?),
        "j" => Ok(Current::TruncatedJ(JCurrent::new(&load_graph(arg)?, depth, eps)?)),
        _ => Err(CliError::input(format!("unknown current kind {kind:?}"))),
    }
}

fn current(cli: &Cli, c: &CurrentCommand) -> Result<Output> {
    match c {
        CurrentCommand::Weights { current, depth, eps } => {
            if *depth == 0 {
                return Err(CliError::input("depth must be at least 1"));
            }
            let mu = parse_current(current, None, *depth, *eps)?;
            let table = mu.weight_table(*depth)?;
            let weights: Vec<Value> =
                table.entries.iter().map(|(v, x)| json!({"word": format_word(v), "weight": weight_json(x)})).collect();
            let level_sums: Vec<Value> = (1..=*depth).map(|k| weight_json(&table.level_sum(k))).collect();
            let body = json!({
                "current": current,
                "rank": table.rank,
                "depth": depth,
                "weights": weights,
                "level_sums": level_sums,
                "flip_invariant": table.flip_holds(),
                "switch_consistent": table.switch_holds(),
            });
            Ok(Output::ok(envelope("current weights", &cli.command, body)))
        }
        CurrentCommand::JWeight { tree, word, eps } => {
            let t = load_graph(tree)?;
            let v = parse_word(word, Some(t.rank()))?;
            let (value, tail) = j_current_weight(&t, &v, *eps)?;
            let body = json!({"word": format_word(&v), "value": value, "tail": tail, "C": j_constant(&t)?});
            Ok(Output::ok(envelope("current j-weight", &cli.command, body)))
        }
        CurrentCommand::Intersect { tree, current, eps } => {
            let t = load_graph(tree)?;
            let mu = parse_current(current, Some(t.rank()), 1, *eps)?;
            let x = intersection_form(&t, &mu)?;
            Ok(Output::ok(envelope("current intersect", &cli.command, json!({"value": weight_json(&x)}))))
        }
    }
}

fn growth(cli: &Cli, a: &GrowthArgs) -> Result<Output> {
    let phi: Automorphism = parse_automorphism(&a.aut)?;
    let mode = match a.mode {
        Mode::Generic => StretchMode::Generic,
        Mode::Extremal => StretchMode::Extremal,
    };
    let opts = PowerOptions { mc_steps: a.mc_steps, mc_trials: a.mc_trials, seed: a.seed, ..PowerOptions::default() };
    let seq = power_stretch_sequence_with(&phi, a.nmax, mode, &opts)?;
    let values: Vec<Value> = seq
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            PowerValue::Exact(x) => json!({"n": i + 1, "value": format_q(x), "approx": v.value(), "exact": true}),
            PowerValue::Estimate(e) => json!({"n": i + 1, "value": e.mean, "stderr": e.stderr, "exact": false}),
        })
        .collect();
    let mut body = json!({"mode": a.mode, "values": values, "truncated": seq.truncated});
    if a.fit || a.svg.is_some() {
        let floats = seq.floats();
        let f = growth_fit(&floats, 0..=a.m_max)?;
        body["fit"] = json!({
            "lambda": f.lambda, "m": f.m, "c1": f.c1, "c2": f.c2, "spread": f.spread(), "flagged": f.flagged,
            "label": "numerical estimate from finitely many powers",
        });
        if let Some(path) = &a.svg {
            let doc = svg::normalized_growth(&format!("{} stretch of powers", mode_name(a.mode)), &floats, f.lambda, f.m, f.c1, f.c2);
            emit(&OutputPaths { svg: Some(path.clone()), ..OutputPaths::default() }, &Value::Null, "", Some(&doc))?;
        }
    }
    Ok(Output::ok(envelope("growth", &cli.command, body)))
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Generic => "generic",
        Mode::Extremal => "extremal",
    }
}

fn experiment_config(kind: ExperimentKind, a: &ExperimentArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &a.config {
        Some(p) => {
            let c = ExperimentConfig::load(p)?;
            if c.kind != kind {
                return Err(CliError::input(format!("{} holds a {:?} config", p.display(), c.kind)));
            }
            c
        }
        None => ExperimentConfig {
            kind,
            rank: a.rank.ok_or_else(|| CliError::input("--rank is required without --config"))?,
            samples: a.samples.ok_or_else(|| CliError::input("--samples is required without --config"))?,
            seed: None,
            word_count: crate::experiments::default_word_count(),
            output: OutputPaths::default(),
        },
    };
    if let Some(r) = a.rank {
        cfg.rank = r;
    }
    if let Some(s) = a.samples {
        cfg.samples = s;
    }
    if a.seed.is_some() {
        cfg.seed = a.seed;
    }
    if let Some(k) = a.word_count {
        cfg.word_count = k;
    }
    if let Some(dir) = &a.out_dir {
        cfg.output = outputs_in(dir, kind_name(kind));
    }
    Ok(cfg)
}

fn kind_name(kind: ExperimentKind) -> &'static str {
    match kind {
        ExperimentKind::RhoScan => "rho_scan",
        ExperimentKind::InverseScan => "inverse_scan",
        ExperimentKind::RatioHistogram => "ratio_histogram",
        ExperimentKind::PaperSuite => "paper_suite",
    }
}

fn outputs_in(dir: &Path, stem: &str) -> OutputPaths {
    OutputPaths {
        json: Some(dir.join(format!("{stem}.json"))),
        csv: Some(dir.join(format!("{stem}.csv"))),
        svg: Some(dir.join(format!("{stem}.svg"))),
    }
}

fn experiment(cli: &Cli, e: &ExperimentCommand) -> Result<Output> {
    match e {
        ExperimentCommand::RhoScan(a) => Ok(Output::ok(run_rho_scan(&experiment_config(ExperimentKind::RhoScan, a)?)?)),
        ExperimentCommand::RatioHistogram(a) => {
            Ok(Output::ok(run_ratio_histogram(&experiment_config(ExperimentKind::RatioHistogram, a)?)?))
        }
        ExperimentCommand::InverseScan(a) => {
            let scan = run_inverse_scan(&experiment_config(ExperimentKind::InverseScan, a)?)?;
            let status = if scan.zero_sets_match { Status::Ok } else { Status::CheckFailed };
            Ok(Output { report: scan.report, status })
        }
        ExperimentCommand::PaperSuite(a) => {
            let results = run_suite(&a.only)?;
            for r in &results {
                eprintln!("{}", format_line(r));
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            let body = json!({"kind": "paper_suite", "passed": results.len() - failed, "failed": failed, "criteria": results});
            let report = envelope("experiment paper-suite", &cli.command, body);
            if let Some(dir) = &a.out_dir {
                let mut csv = String::from("criterion,name,passed,detail\n");
                for r in &results {
                    csv += &format!("{},\"{}\",{},\"{}\"\n", r.id, r.name, r.passed, r.detail.replace('"', "'"));
                }
                let paths = OutputPaths { svg: None, ..outputs_in(dir, "paper_suite") };
                emit(&paths, &report, &csv, None)?;
            }
            let status = if failed == 0 { Status::Ok } else { Status::CheckFailed };
            Ok(Output { report, status })
        }
    }
}
