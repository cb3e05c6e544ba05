//! The fourteen acceptance checks, runnable one by one or as a matrix.
//!
//! Sample sizes, seeds, tolerances and runtime limits are fixed here; a
//! check passes only if its property holds on every sample and it finishes
//! within its limit.

use std::time::{Duration, Instant};

use outerspace_core::asymptotics::{growth_fit, power_stretch_sequence, StretchMode};
use outerspace_core::automorphisms::{phi_family, random_automorphism, whitehead_and_nielsen_generators};
use outerspace_core::currents::{counting_current, counting_weights, intersection_form, j_constant, uniform_current, uniform_weight, JCurrent};
use outerspace_core::entropy::volume_entropy;
use outerspace_core::enumerate::{cyclic_words, reduced_words};
use outerspace_core::graph::random_marked_graph;
use outerspace_core::lipschitz::{extremal_stretch, lambda_distortion};
use outerspace_core::rational::{denominator_divides_power_of, format_q, ln_q, q, qi, to_f64};
use outerspace_core::stretch::{
    generic_stretch, generic_stretch_graph, mc_trial, random_walk, summarize, symmetrized_i, trial_rng, Substitution,
};
use outerspace_core::{Automorphism, CyclicWord, MarkedGraph, Word, Q};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::experiments::item_seed;
use crate::text::{format_word, parse_automorphism};

/// The rank-four automorphism whose generic and extremal stretch both grow
/// like `n φⁿ` (golden ratio `φ`): `a -> ab, b -> a, c -> cda, d -> c`.
pub const GOLDEN_EXAMPLE: &str = "a->ab; b->a; c->cda; d->c";
/// The same map with `c -> cba`, which does not generate `F_4`.
pub const GOLDEN_EXAMPLE_AS_PRINTED: &str = "a->ab; b->a; c->cba; d->c";
pub const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_limit_s: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub limit: Option<Duration>,
    run: fn() -> Result<Outcome>,
}

pub const CRITERIA: [Criterion; 14] = [
    Criterion { id: 1, name: "Nielsen drift is 7/6, Monte Carlo agrees", limit: Some(Duration::from_secs(10)), run: nielsen_drift },
    Criterion { id: 2, name: "2N·λ_A has denominator a power of 2N-1", limit: Some(Duration::from_secs(120)), run: denominator_law },
    Criterion { id: 3, name: "generic stretch bounded by extremal stretch", limit: None, run: ratio_bounds },
    Criterion { id: 4, name: "φ_{N,m} family values and the 2/(N+1) bound", limit: Some(Duration::from_secs(60)), run: family },
    Criterion { id: 5, name: "short-word formula equals candidate maximum", limit: None, run: extremal_formula },
    Criterion { id: 6, name: "candidates reach the brute-force maximum", limit: None, run: candidate_soundness },
    Criterion { id: 7, name: "intersection form", limit: None, run: intersection },
    Criterion { id: 8, name: "equivariance under the action", limit: None, run: equivariance },
    Criterion { id: 9, name: "volume entropy", limit: Some(Duration::from_secs(30)), run: entropy },
    Criterion { id: 10, name: "golden-ratio example grows like n·φⁿ", limit: Some(Duration::from_secs(300)), run: golden_growth },
    Criterion { id: 11, name: "λ_A(φ) = 1 iff λ_A(φ⁻¹) = 1", limit: None, run: inverse_comparison },
    Criterion { id: 12, name: "λ_A(φ)·λ_A(φ⁻¹) ≥ 1", limit: None, run: symmetrized },
    Criterion { id: 13, name: "J-current tails, support and separation", limit: Some(Duration::from_secs(120)), run: j_current },
    Criterion { id: 14, name: "walk counting currents approach ν_A", limit: None, run: weak_star },
];

pub fn run_criterion(c: &Criterion) -> CheckResult {
    let start = Instant::now();
    let out = (c.run)().unwrap_or_else(|e| Outcome { passed: false, detail: format!("error: {e}") });
    let elapsed = start.elapsed();
    let mut passed = out.passed;
    let mut detail = out.detail;
    if let Some(limit) = c.limit {
        if elapsed > limit {
            passed = false;
            detail += &format!("; exceeded runtime limit of {} s", limit.as_secs());
        }
    }
    CheckResult { id: c.id, name: c.name, passed, detail, runtime_limit_s: c.limit.map(|l| l.as_secs()), elapsed }
}

/// Runs the selected criteria (all when `ids` is empty) in order.
pub fn run_suite(ids: &[u8]) -> Result<Vec<CheckResult>> {
    if let Some(bad) = ids.iter().find(|&&i| !(1..=CRITERIA.len() as u8).contains(&i)) {
        return Err(CliError::input(format!("no acceptance criterion {bad}")));
    }
    Ok(CRITERIA.iter().filter(|c| ids.is_empty() || ids.contains(&c.id)).map(run_criterion).collect())
}

pub fn format_line(r: &CheckResult) -> String {
    format!(
        "criterion {:>2} {}  {} ({:.2} s): {}",
        r.id,
        if r.passed { "PASS" } else { "FAIL" },
        r.name,
        r.elapsed.as_secs_f64(),
        r.detail
    )
}

fn sample(rank: usize, k: usize, seed: u64, i: usize) -> Result<Automorphism> {
    Ok(random_automorphism(rank, k, item_seed(seed, i))?)
}

fn random_word(rank: usize, max_len: usize, seed: u64, i: usize) -> Word {
    let mut rng = trial_rng(seed, i as u64);
    let len = 1 + (item_seed(seed, i) % max_len as u64) as usize;
    Word::from_letters(rank, random_walk(rank, len, &mut rng))
}

fn all_ok<T: Sync>(items: Vec<T>, f: impl Fn(&T) -> Result<Option<String>> + Sync) -> Result<Option<String>> {
    let found: Vec<Option<String>> = items.par_iter().map(&f).collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().next())
}

fn nielsen_drift() -> Result<Outcome> {
    let phi = parse_automorphism("a->ab; b->b")?;
    let exact = generic_stretch(&phi)?.value;
    let (steps, trials, seed) = (1_000_000, 10u64, 7);
    let s = Substitution::for_automorphism(&phi);
    let samples: Vec<f64> = (0..trials).into_par_iter().map(|t| mc_trial(&s, steps, seed, t)).collect();
    let mc = summarize(&samples, steps);
    let gap = (mc.mean - to_f64(&exact)).abs();
    let passed = exact == q(7, 6) && mc.stderr > 0.0 && gap <= 4.0 * mc.stderr;
    outcome(passed, format!("exact {}, mc {:.6} ± {:.2e} (gap {:.1} stderr)", format_q(&exact), mc.mean, mc.stderr, gap / mc.stderr))
}

fn denominator_law() -> Result<Outcome> {
    let mut checked = 0;
    for (rank, count) in [(2usize, 100usize), (3, 50)] {
        let base = 2 * rank as u64 - 1;
        let bad = all_ok((0..count).collect(), |&i| {
            let phi = sample(rank, 8, 2, i)?;
            let x = generic_stretch(&phi)?.value * qi(2 * rank as i64);
            Ok((!denominator_divides_power_of(&x, base)).then(|| format!("N={rank} sample {i}: 2N·λ = {}", format_q(&x))))
        })?;
        if let Some(b) = bad {
            return outcome(false, b);
        }
        checked += count;
    }
    outcome(true, format!("{checked} automorphisms"))
}

fn ratio_bounds() -> Result<Outcome> {
    let bad = all_ok((0..500).collect(), |&i| {
        let phi = sample(2, 8, 3, i)?;
        let small = generic_stretch(&phi)?.value;
        let big = extremal_stretch(&phi)?;
        Ok((small <= qi(0) || small > big).then(|| format!("sample {i}: λ = {}, Λ = {}", format_q(&small), format_q(&big))))
    })?;
    if let Some(b) = bad {
        return outcome(false, b);
    }
    let bad = all_ok((0..100).collect(), |&i| {
        let rank = 2 + i % 2;
        let s = random_marked_graph(rank, item_seed(4, i))?;
        let rose = MarkedGraph::rose(rank, &vec![q(1, rank as i64); rank])?;
        let small = generic_stretch_graph(&s)?.value;
        let bound = lambda_distortion(&rose, &s)?.lambda / qi(rank as i64);
        Ok((small <= qi(0) || small > bound).then(|| format!("graph {i}: λ = {}, Λ/N = {}", format_q(&small), format_q(&bound))))
    })?;
    match bad {
        Some(b) => outcome(false, b),
        None => outcome(true, "500 automorphisms, 100 graphs"),
    }
}

fn family() -> Result<Outcome> {
    let mut bounds = Vec::new();
    for rank in 2..=4usize {
        for m in 1..=5usize {
            let phi = phi_family(rank, m)?;
            let big = extremal_stretch(&phi)?;
            let small = generic_stretch(&phi)?.value;
            let cap = qi(1) + q(m as i64, rank as i64);
            if big != qi(m as i64 + 1) || small > cap {
                return outcome(false, format!("N={rank} m={m}: λ = {}, Λ = {}", format_q(&small), format_q(&big)));
            }
            if m == rank {
                let ratio = &small / &big;
                let target = q(2, rank as i64 + 1);
                if ratio > target {
                    return outcome(false, format!("N={rank}: ratio {} above {}", format_q(&ratio), format_q(&target)));
                }
                bounds.push(format!("ρ_{rank} ≤ {}", format_q(&ratio)));
            }
        }
    }
    outcome(true, bounds.join(", "))
}

fn extremal_formula() -> Result<Outcome> {
    let bad = all_ok((0..200).collect(), |&i| {
        let rank = 2 + i % 2;
        let phi = sample(rank, 8, 5, i)?;
        let rose = MarkedGraph::unit_rose(rank)?;
        let a = extremal_stretch(&phi)?;
        let b = lambda_distortion(&rose, &rose.act(&phi)?)?.lambda;
        Ok((a != b).then(|| format!("sample {i}: {} vs {}", format_q(&a), format_q(&b))))
    })?;
    match bad {
        Some(b) => outcome(false, b),
        None => outcome(true, "200 automorphisms"),
    }
}

fn candidate_soundness() -> Result<Outcome> {
    let bad = all_ok((0..50).collect(), |&i| {
        let rank = 2 + i % 2;
        let t = random_marked_graph(rank, item_seed(6, 2 * i))?;
        let s = random_marked_graph(rank, item_seed(6, 2 * i + 1))?.act(&sample(rank, 6, 6, i)?)?;
        let via = lambda_distortion(&t, &s)?.lambda;
        let mut brute = qi(0);
        for c in cyclic_words(rank, 6) {
            let w = c.to_word();
            let r = s.translation_length(&w)? / t.translation_length(&w)?;
            if r > brute {
                brute = r;
            }
        }
        Ok((via != brute).then(|| format!("pair {i}: candidates {} vs brute force {}", format_q(&via), format_q(&brute))))
    })?;
    match bad {
        Some(b) => outcome(false, b),
        None => outcome(true, "50 pairs, all cyclic words of length ≤ 6"),
    }
}

/// `||w||_T` as a pairing of `η_w` with a function of words of length at
/// most two: half the loop lengths of letters minus the backtracking
/// between consecutive letter loops. Valid when every letter loop crosses
/// exactly one edge outside the spanning tree.
fn cylinder_pairing(t: &MarkedGraph, w: &Word) -> Q {
    let weights = counting_weights(&CyclicWord::of(w), 2);
    let mut total = qi(0);
    for (v, &count) in &weights {
        if count == 0 {
            continue;
        }
        let l = v.letters();
        let value = if l.len() == 1 {
            t.path_length(t.letter_path(l[0])) / qi(2)
        } else {
            let (x, y) = (t.letter_path(l[0]), t.letter_path(l[1]));
            let c = x.iter().rev().zip(y).take_while(|(a, b)| **a == **b ^ 1).count();
            -t.path_length(&y[..c])
        };
        total += value * qi(count as i64);
    }
    total
}

fn intersection() -> Result<Outcome> {
    let bad = all_ok((0..100).collect(), |&i| {
        let rank = 2 + i % 2;
        let t = random_marked_graph(rank, item_seed(7, i))?;
        let w = random_word(rank, 12, 7, i);
        let pairing = intersection_form(&t, &counting_current(&w)?)?;
        let length = t.translation_length(&w)?;
        let cylinders = cylinder_pairing(&t, &w);
        let ok = pairing.exact() == Some(&length) && cylinders == length;
        Ok((!ok).then(|| format!("sample {i}: w = {}, ||w|| = {}, cylinder pairing {}", format_word(&w), format_q(&length), format_q(&cylinders))))
    })?;
    if let Some(b) = bad {
        return outcome(false, b);
    }
    for rank in 2..=5 {
        let v = intersection_form(&MarkedGraph::unit_rose(rank)?, &uniform_current(rank)?)?;
        if v.exact() != Some(&qi(1)) {
            return outcome(false, format!("<unit rose, ν_A> = {v:?} at N = {rank}"));
        }
    }
    for rank in 2..=3 {
        let table = uniform_current(rank)?.weight_table(6)?;
        for k in 1..=6 {
            let s = table.level_sum(k);
            if s.exact() != Some(&qi(2)) {
                return outcome(false, format!("uniform level sum {s:?} at N = {rank}, length {k}"));
            }
        }
    }
    outcome(true, "100 pairs by two routes; <unit rose, ν_A> = 1 for N ≤ 5; level sums 2 to length 6")
}

fn equivariance() -> Result<Outcome> {
    let bad = all_ok((0..200).collect(), |&i| {
        let rank = 2 + i % 2;
        let t = random_marked_graph(rank, item_seed(8, 2 * i))?;
        let s = random_marked_graph(rank, item_seed(8, 2 * i + 1))?;
        let phi = sample(rank, 6, 8, i)?;
        let inv = phi.inverse();
        let w = random_word(rank, 10, 8, i);
        let left = intersection_form(&t.act(&phi)?, &counting_current(&w)?)?;
        let right = intersection_form(&t, &counting_current(&phi.apply(&w)?)?)?;
        let base = lambda_distortion(&t, &s)?.lambda;
        let by_inv = lambda_distortion(&t.act(&inv)?, &s.act(&inv)?)?.lambda;
        let by_phi = lambda_distortion(&t.act(&phi)?, &s.act(&phi)?)?.lambda;
        let ok = left == right && base == by_inv && base == by_phi;
        Ok((!ok).then(|| format!("triple {i}: Λ = {}, {}, {}", format_q(&base), format_q(&by_inv), format_q(&by_phi))))
    })?;
    match bad {
        Some(b) => outcome(false, b),
        None => outcome(true, "200 triples"),
    }
}

fn entropy() -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for rank in 2..=5 {
        let h = volume_entropy(&MarkedGraph::unit_rose(rank)?);
        worst = worst.max((h - ((2 * rank - 1) as f64).ln()).abs());
    }
    if worst > 1e-10 {
        return outcome(false, format!("rose entropy off by {worst:e}"));
    }
    let mut scale_worst: f64 = 0.0;
    for i in 0..20 {
        let t = random_marked_graph(2 + i % 3, item_seed(9, i))?;
        let h = volume_entropy(&t);
        let h2 = volume_entropy(&t.scale(&qi(2))?);
        scale_worst = scale_worst.max((h2 - h / 2.0).abs());
    }
    outcome(scale_worst <= 1e-9, format!("roses within {worst:.1e}, scaling within {scale_worst:.1e}"))
}

fn golden_growth() -> Result<Outcome> {
    let printed_rejected = parse_automorphism(GOLDEN_EXAMPLE_AS_PRINTED).is_err();
    let phi = parse_automorphism(GOLDEN_EXAMPLE)?;
    let generic = power_stretch_sequence(&phi, 6, StretchMode::Generic)?;
    let extremal = power_stretch_sequence(&phi, 12, StretchMode::Extremal)?;
    if generic.truncated || extremal.truncated {
        return outcome(false, "sequence truncated by the length cap");
    }
    let g = growth_fit(&generic.floats(), 0..=4)?;
    let e = growth_fit(&extremal.floats(), 0..=4)?;
    let close = |l: f64| (l - GOLDEN_RATIO).abs() <= 0.03 * GOLDEN_RATIO;
    let exact = generic.values.iter().filter(|v| v.exact().is_some()).count();
    let passed = close(g.lambda) && g.m == 1 && g.spread() < 10.0 && close(e.lambda) && e.m == 1;
    outcome(
        passed,
        format!(
            "generic λ = {:.4}, m = {}, spread {:.2} ({exact} of 6 exact); extremal λ = {:.4}, m = {}, spread {:.2}; c -> cba {}",
            g.lambda,
            g.m,
            g.spread(),
            e.lambda,
            e.m,
            e.spread(),
            if printed_rejected { "rejected as not invertible" } else { "accepted" }
        ),
    )
}

fn inverse_comparison() -> Result<Outcome> {
    let mut phis: Vec<Automorphism> = Vec::new();
    for rank in 2..=3 {
        phis.extend(whitehead_and_nielsen_generators(rank)?);
    }
    let generators = phis.len();
    for i in 0..200 {
        phis.push(sample(2 + i % 2, 8, 11, i)?);
    }
    let rows: Vec<(bool, bool, bool, f64, f64)> = phis
        .par_iter()
        .map(|phi| {
            let a = generic_stretch(phi)?.value;
            let b = generic_stretch(&phi.inverse())?.value;
            Ok((a == qi(1), b == qi(1), phi.is_permutational(), ln_q(&a), ln_q(&b)))
        })
        .collect::<Result<_>>()?;
    if let Some(i) = rows.iter().position(|r| r.0 != r.1 || r.0 != r.2) {
        return outcome(false, format!("item {i}: λ(φ) = 1 is {}, λ(φ⁻¹) = 1 is {}, permutational {}", rows[i].0, rows[i].1, rows[i].2));
    }
    let ratio = rows.iter().filter(|r| !r.0).map(|r| (r.3 / r.4).max(r.4 / r.3)).fold(1.0f64, f64::max);
    let perm = rows.iter().filter(|r| r.0).count();
    outcome(
        ratio.is_finite(),
        format!("{generators} generators + 200 random, {perm} permutational; max log ratio {ratio:.4}"),
    )
}

fn symmetrized() -> Result<Outcome> {
    let nielsen = symmetrized_i(&parse_automorphism("a->ab; b->b")?)?;
    if nielsen != q(49, 36) {
        return outcome(false, format!("Nielsen I = {}", format_q(&nielsen)));
    }
    let bad = all_ok((0..200).collect(), |&i| {
        let phi = sample(2 + i % 2, 8, 12, i)?;
        let v = symmetrized_i(&phi)?;
        let ok = v >= qi(1) && ((v == qi(1)) == phi.is_permutational());
        Ok((!ok).then(|| format!("sample {i}: I = {}", format_q(&v))))
    })?;
    match bad {
        Some(b) => outcome(false, b),
        None => outcome(true, "Nielsen I = 49/36; 200 automorphisms"),
    }
}

fn j_current() -> Result<Outcome> {
    let (depth, eps) = (3, 1e-6);
    let a = MarkedGraph::rose(2, &[qi(1), qi(1)])?;
    let b = MarkedGraph::rose(2, &[q(1, 2), q(3, 2)])?;
    let mut tables = Vec::new();
    let mut notes = Vec::new();
    for (name, t) in [("rose(1,1)", &a), ("rose(1/2,3/2)", &b)] {
        let c = j_constant(t)?;
        if c > 4 {
            return outcome(false, format!("{name}: C = {c}"));
        }
        let j = JCurrent::new(t, depth, eps)?;
        let mut weights = Vec::new();
        for k in 1..=depth {
            for v in reduced_words(2, k) {
                let w = j.weight(&v)?;
                if !(w.value() > 0.0) || w.tail() >= eps {
                    return outcome(false, format!("{name}: weight of {} is {w:?}", format_word(&v)));
                }
                weights.push((v, w));
            }
        }
        notes.push(format!("{name}: C = {c}"));
        tables.push(weights);
    }
    let separated = tables[0].iter().zip(&tables[1]).filter(|(x, y)| x.1.separated_from(&y.1)).count();
    outcome(separated > 0, format!("{}; tails < {eps:e}; {separated} of {} weights separate", notes.join(", "), tables[0].len()))
}

fn weak_star() -> Result<Outcome> {
    let rank = 2;
    let words: Vec<Word> = (1..=3).flat_map(|k| reduced_words(rank, k)).collect();
    let runs: Vec<(u64, usize)> = (0..5u64).flat_map(|s| [10_000usize, 100_000, 1_000_000].map(|n| (s, n))).collect();
    let worst: Vec<(f64, f64)> = runs
        .par_iter()
        .map(|&(seed, n)| {
            let mut rng = trial_rng(seed, n as u64);
            let walk = CyclicWord::of(&Word::from_letters(rank, random_walk(rank, n, &mut rng)));
            let counts = counting_weights(&walk, 3);
            let dev = words
                .iter()
                .map(|v| (counts[v] as f64 / n as f64 - to_f64(&uniform_weight(rank, v.len()))).abs())
                .fold(0.0, f64::max);
            (dev, 5.0 / (n as f64).sqrt())
        })
        .collect();
    let passed = worst.iter().all(|(d, tol)| d <= tol);
    let ratio = worst.iter().map(|(d, tol)| d / tol).fold(0.0, f64::max);
    outcome(passed, format!("5 seeds × 3 lengths; largest deviation {ratio:.3} of the 5/√n tolerance"))
}
