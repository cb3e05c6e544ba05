//! Sampling experiments over random automorphisms.
//!
//! Every item is an independent unit run on the worker pool; results are
//! collected in item order, so a report depends only on its configuration.

use std::path::{Path, PathBuf};

use outerspace_core::automorphisms::{phi_family, random_automorphism};
use outerspace_core::lipschitz::extremal_stretch;
use outerspace_core::rational::{format_q, ln_q, q, to_f64};
use outerspace_core::stretch::{substitution_stretch_capped, Substitution};
use outerspace_core::{Automorphism, Error, Q};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{io_error, CliError, Result};
use crate::report::envelope;
use crate::svg;
use crate::text::format_automorphism;

/// Cylinder budget for one exact generic stretch inside a scan.
pub const SCAN_CYLINDER_CAP: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    RhoScan,
    InverseScan,
    RatioHistogram,
    PaperSuite,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    #[serde(alias = "N")]
    pub rank: usize,
    pub samples: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    /// generators multiplied per random automorphism
    #[serde(default = "default_word_count")]
    pub word_count: usize,
    #[serde(default)]
    pub output: OutputPaths,
}

pub fn default_word_count() -> usize {
    8
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(CliError::input("sample count must be at least 1"));
        }
        if self.rank < 2 {
            return Err(CliError::input("rank must be at least 2"));
        }
        if self.kind != ExperimentKind::PaperSuite && self.seed.is_none() {
            return Err(CliError::input("randomized experiments need a seed"));
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(io_error(path))?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Seed of item `i`; distinct items get decorrelated streams.
pub fn item_seed(seed: u64, i: usize) -> u64 {
    let mut z = seed.wrapping_add((i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn sample_automorphisms(rank: usize, word_count: usize, seed: u64, count: usize) -> Result<Vec<Automorphism>> {
    (0..count).into_par_iter().map(|i| Ok(random_automorphism(rank, word_count, item_seed(seed, i))?)).collect()
}

/// Exact `λ_A(φ)`, with `None` when the exact solvers run out of budget.
pub fn generic_or_cap(phi: &Automorphism, cap: usize) -> Result<Option<Q>> {
    match substitution_stretch_capped(&Substitution::for_automorphism(phi), cap) {
        Ok(r) => Ok(Some(r.value)),
        Err(Error::CapExceeded { .. } | Error::WindowExceeded { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io_error(dir))?;
    }
    std::fs::write(path, contents).map_err(io_error(path))
}

/// Writes whichever of the configured outputs are present.
pub fn emit(paths: &OutputPaths, report: &Value, csv: &str, svg: Option<&str>) -> Result<()> {
    if let Some(p) = &paths.json {
        write_file(p, &(serde_json::to_string_pretty(report)? + "\n"))?;
    }
    if let Some(p) = &paths.csv {
        write_file(p, csv)?;
    }
    if let (Some(p), Some(doc)) = (&paths.svg, svg) {
        write_file(p, doc)?;
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioSample {
    pub index: usize,
    pub automorphism: String,
    pub generic: Option<String>,
    pub extremal: String,
    pub ratio: Option<String>,
    #[serde(skip)]
    ratio_q: Option<Q>,
}

fn ratio_samples(cfg: &ExperimentConfig) -> Result<Vec<RatioSample>> {
    let seed = cfg.seed.expect("validated");
    let phis = sample_automorphisms(cfg.rank, cfg.word_count, seed, cfg.samples)?;
    phis.par_iter()
        .enumerate()
        .map(|(index, phi)| {
            let lambda = generic_or_cap(phi, SCAN_CYLINDER_CAP)?;
            let big = extremal_stretch(phi)?;
            let ratio_q = lambda.as_ref().map(|l| l / &big);
            Ok(RatioSample {
                index,
                automorphism: format_automorphism(phi),
                generic: lambda.as_ref().map(format_q),
                extremal: format_q(&big),
                ratio: ratio_q.as_ref().map(format_q),
                ratio_q,
            })
        })
        .collect()
}

fn ratio_csv(samples: &[RatioSample]) -> String {
    let mut s = String::from("index,automorphism,generic,extremal,ratio\n");
    for r in samples {
        s += &format!(
            "{},\"{}\",{},{},{}\n",
            r.index,
            r.automorphism,
            r.generic.as_deref().unwrap_or(""),
            r.extremal,
            r.ratio.as_deref().unwrap_or("")
        );
    }
    s
}

/// Random `λ_A/Λ_A` ratios plus `φ_{N,N}`; the least ratio seen is an
/// upper bound on `ρ_N`.
pub fn run_rho_scan(cfg: &ExperimentConfig) -> Result<Value> {
    cfg.validate()?;
    let samples = ratio_samples(cfg)?;
    let n = cfg.rank;
    let family = phi_family(n, n)?;
    let fam_generic = generic_or_cap(&family, SCAN_CYLINDER_CAP)?
        .ok_or(CliError::Core(Error::CapExceeded { what: "family drift", cap: SCAN_CYLINDER_CAP }))?;
    let fam_extremal = extremal_stretch(&family)?;
    let fam_ratio = &fam_generic / &fam_extremal;
    let target = q(2, n as i64 + 1);
    let mut bound = fam_ratio.clone();
    let mut witness = format_automorphism(&family);
    for s in &samples {
        if let Some(r) = &s.ratio_q {
            if *r < bound {
                bound = r.clone();
                witness = s.automorphism.clone();
            }
        }
    }
    let skipped = samples.iter().filter(|s| s.ratio.is_none()).count();
    let body = json!({
        "kind": "rho_scan",
        "rank": n,
        "rho_upper_bound": format_q(&bound),
        "rho_upper_bound_f64": to_f64(&bound),
        "bound_witness": witness,
        "label": "evidence: least observed ratio, an upper bound on rho_N",
        "family": {
            "automorphism": format_automorphism(&family),
            "m": n,
            "generic": format_q(&fam_generic),
            "extremal": format_q(&fam_extremal),
            "ratio": format_q(&fam_ratio),
            "target": format_q(&target),
            "within_target": fam_ratio <= target,
        },
        "skipped_over_budget": skipped,
        "samples": samples,
    });
    let report = envelope("experiment rho-scan", cfg, body);
    let ratios: Vec<f64> = samples.iter().filter_map(|s| s.ratio_q.as_ref().map(to_f64)).collect();
    let doc = svg::histogram(
        &format!("generic / extremal stretch, N = {n}"),
        "ratio",
        &ratios,
        20,
        Some((to_f64(&target), &format!("2/(N+1) = {}", format_q(&target)))),
    );
    emit(&cfg.output, &report, &ratio_csv(&samples), Some(&doc))?;
    Ok(report)
}

/// Histogram of `λ_A/Λ_A` over random automorphisms.
pub fn run_ratio_histogram(cfg: &ExperimentConfig) -> Result<Value> {
    cfg.validate()?;
    let samples = ratio_samples(cfg)?;
    let ratios: Vec<f64> = samples.iter().filter_map(|s| s.ratio_q.as_ref().map(to_f64)).collect();
    let bins = svg::bin(&ratios, 20);
    let mut csv = String::from("lower,upper,count\n");
    for (a, b, c) in &bins {
        csv += &format!("{a},{b},{c}\n");
    }
    let body = json!({
        "kind": "ratio_histogram",
        "rank": cfg.rank,
        "bins": bins.iter().map(|(a, b, c)| json!({"lower": a, "upper": b, "count": c})).collect::<Vec<_>>(),
        "skipped_over_budget": samples.len() - ratios.len(),
        "samples": samples,
    });
    let report = envelope("experiment ratio-histogram", cfg, body);
    let doc = svg::histogram(&format!("generic / extremal stretch, N = {}", cfg.rank), "ratio", &ratios, 20, None);
    emit(&cfg.output, &report, &csv, Some(&doc))?;
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct InversePoint {
    pub index: usize,
    pub automorphism: String,
    pub generic: String,
    pub generic_inverse: String,
    pub log_generic: f64,
    pub log_generic_inverse: f64,
}

/// Outcome of an inverse scan; `zero_sets_match` is false when some sample
/// has exactly one of `λ_A(φ)`, `λ_A(φ⁻¹)` equal to one.
#[derive(Clone, Debug)]
pub struct InverseScan {
    pub report: Value,
    pub zero_sets_match: bool,
}

/// `(log λ_A(φ), log λ_A(φ⁻¹))` per sample. The largest ratio of the two
/// logarithms over non-permutational samples is a lower bound for any
/// constant comparing them.
pub fn run_inverse_scan(cfg: &ExperimentConfig) -> Result<InverseScan> {
    cfg.validate()?;
    let seed = cfg.seed.expect("validated");
    let phis = sample_automorphisms(cfg.rank, cfg.word_count, seed, cfg.samples)?;
    let rows: Vec<Option<InversePoint>> = phis
        .par_iter()
        .enumerate()
        .map(|(index, phi)| {
            let (Some(a), Some(b)) = (generic_or_cap(phi, SCAN_CYLINDER_CAP)?, generic_or_cap(&phi.inverse(), SCAN_CYLINDER_CAP)?)
            else {
                return Ok(None);
            };
            Ok(Some(InversePoint {
                index,
                automorphism: format_automorphism(phi),
                generic: format_q(&a),
                generic_inverse: format_q(&b),
                log_generic: ln_q(&a),
                log_generic_inverse: ln_q(&b),
            }))
        })
        .collect::<Result<_>>()?;
    let skipped = rows.iter().filter(|r| r.is_none()).count();
    let points: Vec<InversePoint> = rows.into_iter().flatten().collect();
    let one = |s: &str| s == "1";
    let zero_sets_match = points.iter().all(|p| one(&p.generic) == one(&p.generic_inverse));
    let mut worst: Option<(f64, usize)> = None;
    for p in points.iter().filter(|p| !one(&p.generic) && !one(&p.generic_inverse)) {
        let r = (p.log_generic / p.log_generic_inverse).max(p.log_generic_inverse / p.log_generic);
        if worst.is_none_or(|(w, _)| r > w) {
            worst = Some((r, p.index));
        }
    }
    let body = json!({
        "kind": "inverse_scan",
        "rank": cfg.rank,
        "log_ratio_max": worst.map(|w| w.0),
        "log_ratio_witness": worst.map(|w| w.1),
        "label": "evidence: largest observed log ratio, a lower bound on any valid comparison constant",
        "permutational": points.iter().filter(|p| one(&p.generic)).count(),
        "zero_sets_match": zero_sets_match,
        "skipped_over_budget": skipped,
        "samples": points,
    });
    let report = envelope("experiment inverse-scan", cfg, body);
    let mut csv = String::from("index,automorphism,generic,generic_inverse,log_generic,log_generic_inverse\n");
    for p in &points {
        csv += &format!(
            "{},\"{}\",{},{},{},{}\n",
            p.index, p.automorphism, p.generic, p.generic_inverse, p.log_generic, p.log_generic_inverse
        );
    }
    let xy: Vec<(f64, f64)> = points.iter().map(|p| (p.log_generic, p.log_generic_inverse)).collect();
    let doc = svg::scatter(&format!("generic stretch of φ and φ⁻¹, N = {}", cfg.rank), "log λ(φ)", "log λ(φ⁻¹)", &xy, true);
    emit(&cfg.output, &report, &csv, Some(&doc))?;
    Ok(InverseScan { report, zero_sets_match })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(kind: ExperimentKind, rank: usize, samples: usize) -> ExperimentConfig {
        ExperimentConfig { kind, rank, samples, seed: Some(11), word_count: 6, output: OutputPaths::default() }
    }

    #[test]
    fn config_validation() {
        assert!(cfg(ExperimentKind::RhoScan, 2, 0).validate().is_err());
        assert!(cfg(ExperimentKind::RhoScan, 1, 3).validate().is_err());
        let mut c = cfg(ExperimentKind::InverseScan, 2, 3);
        c.seed = None;
        assert!(c.validate().is_err());
        c.kind = ExperimentKind::PaperSuite;
        assert!(c.validate().is_ok());
        let parsed: ExperimentConfig =
            serde_json::from_str(r#"{"kind": "rho_scan", "N": 3, "samples": 4, "seed": 1, "output": {"csv": "r.csv"}}"#).unwrap();
        assert_eq!(parsed.rank, 3);
        assert_eq!(parsed.word_count, default_word_count());
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"kind": "rho_scan", "N": 3, "samples": 4, "extra": 1}"#).is_err());
    }

    #[test]
    fn rho_scan_meets_family_bound() {
        for (n, target) in [(2, "2/3"), (3, "1/2")] {
            let r = run_rho_scan(&cfg(ExperimentKind::RhoScan, n, 5)).unwrap();
            assert_eq!(r["family"]["target"], target);
            assert_eq!(r["family"]["within_target"], true);
            let bound: Q = outerspace_core::rational::parse_q(r["rho_upper_bound"].as_str().unwrap()).unwrap();
            assert!(bound <= outerspace_core::rational::parse_q(target).unwrap());
        }
    }

    #[test]
    fn single_sample_is_deterministic() {
        let c = cfg(ExperimentKind::RhoScan, 2, 1);
        assert_eq!(run_rho_scan(&c).unwrap(), run_rho_scan(&c).unwrap());
        let c = cfg(ExperimentKind::InverseScan, 2, 1);
        assert_eq!(run_inverse_scan(&c).unwrap().report, run_inverse_scan(&c).unwrap().report);
    }

    #[test]
    fn inverse_scan_excludes_permutational_points() {
        let r = run_inverse_scan(&cfg(ExperimentKind::InverseScan, 2, 30)).unwrap();
        assert!(r.zero_sets_match);
        let body = &r.report;
        let samples = body["samples"].as_array().unwrap();
        let perm = samples.iter().filter(|s| s["generic"] == "1").count();
        assert_eq!(body["permutational"], perm);
        assert!(samples.iter().all(|s| (s["generic"] == "1") == (s["generic_inverse"] == "1")));
        if let Some(r) = body["log_ratio_max"].as_f64() {
            assert!(r.is_finite() && r >= 1.0);
        }
    }
}
