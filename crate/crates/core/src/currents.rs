//! Geodesic currents in the rose chart, given by their weights on reduced
//! words, and the intersection form.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::enumerate::{for_each_root_free_class, reduced_word_count, reduced_words};
use crate::graph::MarkedGraph;
use crate::lipschitz::lambda_distortion;
use crate::rational::{q, to_f64, Q};
use crate::words::{occurrences, CyclicWord, Letter, Word};
use crate::{Error, Result};

/// A weight, exact or with a certified absolute error bound.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightValue {
    Exact(Q),
    Approx { value: f64, tail: f64 },
}

impl WeightValue {
    pub fn value(&self) -> f64 {
        match self {
            WeightValue::Exact(x) => to_f64(x),
            WeightValue::Approx { value, .. } => *value,
        }
    }

    /// Absolute error bound (zero when exact).
    pub fn tail(&self) -> f64 {
        match self {
            WeightValue::Exact(_) => 0.0,
            WeightValue::Approx { tail, .. } => *tail,
        }
    }

    pub fn exact(&self) -> Option<&Q> {
        match self {
            WeightValue::Exact(x) => Some(x),
            WeightValue::Approx { .. } => None,
        }
    }

    fn scale(&self, c: &Q) -> WeightValue {
        match self {
            WeightValue::Exact(x) => WeightValue::Exact(x * c),
            WeightValue::Approx { value, tail } => {
                let f = to_f64(c);
                WeightValue::Approx { value: value * f, tail: tail * f.abs() }
            }
        }
    }

    fn add(self, other: WeightValue) -> WeightValue {
        match (self, other) {
            (WeightValue::Exact(a), WeightValue::Exact(b)) => WeightValue::Exact(a + b),
            (a, b) => WeightValue::Approx { value: a.value() + b.value(), tail: a.tail() + b.tail() },
        }
    }

    /// `|self - other|` exceeds the combined error bound.
    pub fn separated_from(&self, other: &WeightValue) -> bool {
        match (self, other) {
            (WeightValue::Exact(a), WeightValue::Exact(b)) => a != b,
            _ => (self.value() - other.value()).abs() > self.tail() + other.tail(),
        }
    }

    /// Equal as exact values, or within the combined error bound.
    pub fn consistent_with(&self, other: &WeightValue) -> bool {
        !self.separated_from(other)
    }
}

/// A current, queried through its weights `⟨v, μ⟩` on reduced words.
#[derive(Clone, Debug)]
pub enum Current {
    Counting(CyclicWord),
    Uniform(usize),
    Linear(Vec<(Q, Current)>),
    TruncatedJ(JCurrent),
}

/// `η_w`, the counting current of the conjugacy class of `w`.
pub fn counting_current(w: &Word) -> Result<Current> {
    if w.is_empty() {
        return Err(Error::TrivialWord);
    }
    Ok(Current::Counting(CyclicWord::of(w)))
}

/// `ν_A`, with weights `1 / (N (2N-1)^{|v|-1})`.
pub fn uniform_current(rank: usize) -> Result<Current> {
    if rank < 2 {
        return Err(Error::RankTooSmall { rank, min: 2 });
    }
    Ok(Current::Uniform(rank))
}

pub fn uniform_weight(rank: usize, len: usize) -> Q {
    let d = Q::from_integer((2 * rank as i64 - 1).into());
    Q::one() / (Q::from_integer((rank as i64).into()) * num_traits::pow(d, len - 1))
}

impl Current {
    pub fn rank(&self) -> Option<usize> {
        match self {
            Current::Counting(w) => Some(w.rank()),
            Current::Uniform(n) => Some(*n),
            Current::Linear(terms) => terms.iter().find_map(|(_, c)| c.rank()),
            Current::TruncatedJ(j) => Some(j.rank),
        }
    }

    /// `⟨v, μ⟩` for a non-trivial reduced `v`.
    pub fn weight(&self, v: &Word) -> Result<WeightValue> {
        if v.is_empty() {
            return Err(Error::EmptyWord);
        }
        match self {
            Current::Counting(w) => {
                let k = occurrences(v, w)?;
                Ok(WeightValue::Exact(Q::from_integer(k.into())))
            }
            Current::Uniform(n) => {
                v.check_rank(*n)?;
                Ok(WeightValue::Exact(uniform_weight(*n, v.len())))
            }
            Current::Linear(terms) => {
                let mut acc = WeightValue::Exact(Q::zero());
                for (c, mu) in terms {
                    if c.is_negative() {
                        return Err(Error::InvalidInput("linear combinations need nonnegative coefficients".into()));
                    }
                    acc = acc.add(mu.weight(v)?.scale(c));
                }
                Ok(acc)
            }
            Current::TruncatedJ(j) => j.weight(v),
        }
    }

    /// Weights of all reduced words of length `1..=depth`.
    pub fn weight_table(&self, depth: usize) -> Result<WeightTable> {
        let rank = self.rank().ok_or(Error::InvalidInput("empty linear combination".into()))?;
        let mut entries = BTreeMap::new();
        for k in 1..=depth {
            for v in reduced_words(rank, k) {
                let x = self.weight(&v)?;
                entries.insert(v, x);
            }
        }
        Ok(WeightTable { rank, depth, entries })
    }
}

/// Weights up to a fixed word length.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightTable {
    pub rank: usize,
    pub depth: usize,
    pub entries: BTreeMap<Word, WeightValue>,
}

impl WeightTable {
    pub fn get(&self, v: &Word) -> Option<&WeightValue> {
        self.entries.get(v)
    }

    /// `⟨v, μ⟩ = ⟨v⁻¹, μ⟩` for every entry.
    pub fn flip_holds(&self) -> bool {
        self.entries.iter().all(|(v, x)| self.entries[&v.inverse()].consistent_with(x))
    }

    /// Kolmogorov consistency on both sides, for words shorter than the depth.
    pub fn switch_holds(&self) -> bool {
        for (v, x) in &self.entries {
            if v.len() >= self.depth {
                continue;
            }
            for right in [true, false] {
                let mut sum = WeightValue::Exact(Q::zero());
                for idx in 0..2 * self.rank as u32 {
                    let l = Letter::from_index(idx);
                    let ext = if right {
                        if v.letters().last() == Some(&l.inverse()) {
                            continue;
                        }
                        let mut e = v.letters().to_vec();
                        e.push(l);
                        e
                    } else {
                        if v.letters().first() == Some(&l.inverse()) {
                            continue;
                        }
                        let mut e = alloc::vec![l];
                        e.extend_from_slice(v.letters());
                        e
                    };
                    sum = sum.add(self.entries[&Word::from_letters(self.rank, ext)].clone());
                }
                if !sum.consistent_with(x) {
                    return false;
                }
            }
        }
        true
    }

    /// Sum of weights over words of length `k`.
    pub fn level_sum(&self, k: usize) -> WeightValue {
        self.entries
            .iter()
            .filter(|(v, _)| v.len() == k)
            .fold(WeightValue::Exact(Q::zero()), |acc, (_, x)| acc.add(x.clone()))
    }
}

/// `⟨T, μ⟩`.
///
/// Counting currents pair with any graph through translation length. Weight
/// currents need the standard rose chart and use
/// `(1/2) Σ_{oriented e} L(e) ⟨g_e, μ⟩`.
pub fn intersection_form(t: &MarkedGraph, mu: &Current) -> Result<WeightValue> {
    match mu {
        Current::Counting(w) => {
            if w.rank() != t.rank() {
                return Err(Error::RankMismatch { expected: t.rank(), found: w.rank() });
            }
            Ok(WeightValue::Exact(t.translation_length(&w.to_word())?))
        }
        Current::Linear(terms) => {
            let mut acc = WeightValue::Exact(Q::zero());
            for (c, m) in terms {
                acc = acc.add(intersection_form(t, m)?.scale(c));
            }
            Ok(acc)
        }
        Current::Uniform(_) | Current::TruncatedJ(_) => {
            if mu.rank() != Some(t.rank()) {
                return Err(Error::RankMismatch { expected: t.rank(), found: mu.rank().unwrap_or(0) });
            }
            if !t.is_standard_rose_chart() {
                return Err(Error::Unsupported("weight currents pair only with roses labelled by single letters"));
            }
            let labels = t.marking().forward().images();
            let mut acc = WeightValue::Exact(Q::zero());
            for (e, g) in labels.iter().enumerate() {
                // both orientations, halved
                acc = acc.add(mu.weight(g)?.scale(t.length(e)));
            }
            Ok(acc)
        }
    }
}

/// The filling current `Σ_{[w] root-free} e^{-e^{||w||_T}} η_w`, truncated
/// at `||w||_A ≤ max_len` with a certified bound on the discarded part.
#[derive(Clone, Debug)]
pub struct JCurrent {
    rank: usize,
    depth: usize,
    pub max_len: usize,
    pub tail: f64,
    /// Integer constant with `||w||_T ≥ ||w||_A / C`.
    pub c_const: u64,
    pub classes: u64,
    forward: HashMap<(u8, u64), f64>,
}

/// Default limit on the number of reduced words of the largest enumerated length.
pub const DEFAULT_J_ENUMERATION_CAP: u128 = 100_000_000;

fn ln_term(rank: usize, c: f64, m: usize) -> f64 {
    let n = rank as f64;
    libm::log(4.0 * n) + (m as f64 - 1.0) * libm::log(2.0 * n - 1.0) - libm::exp(m as f64 / c)
}

/// Bound on `Σ_{[w]: ||w||_A > L} e^{-e^{||w||_T}} occ(v, w)` valid for all `v`,
/// given `||w||_T ≥ ||w||_A / C`.
///
/// A root-free class of length `m` has `m` distinct cyclically reduced
/// rotations and `occ(v, w) ≤ 2m`, so length `m` contributes at most
/// `2 · 2N(2N-1)^{m-1} e^{-e^{m/C}}`. The term ratio decreases in `m`, so
/// once it drops below one the rest is dominated by a geometric series.
pub fn j_tail_bound(rank: usize, c: u64, max_len: usize) -> f64 {
    let c = c as f64;
    let mut sum = 0.0;
    let mut m = max_len + 1;
    loop {
        let lf = ln_term(rank, c, m);
        let r = libm::exp(ln_term(rank, c, m + 1) - lf);
        let f = libm::exp(lf);
        sum += f;
        if r <= 0.5 {
            // terms below the smallest normal double are not represented
            return (sum + f * r / (1.0 - r)).max(f64::MIN_POSITIVE);
        }
        m += 1;
    }
}

fn code(letters: &[Letter], base: u64) -> u64 {
    letters.iter().fold(0u64, |acc, l| acc * base + l.index() as u64)
}

impl JCurrent {
    /// Builds weights for all `|v| ≤ depth` with tail below `eps`.
    pub fn new(t: &MarkedGraph, depth: usize, eps: f64) -> Result<Self> {
        JCurrent::with_cap(t, depth, eps, DEFAULT_J_ENUMERATION_CAP)
    }

    pub fn with_cap(t: &MarkedGraph, depth: usize, eps: f64, cap: u128) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        let rank = t.rank();
        if depth == 0 || (2 * rank as u64).pow(depth as u32) > 1 << 40 {
            return Err(Error::InvalidInput("weight depth out of range".into()));
        }
        let c_const = j_constant(t)?;
        // every reduced v with |v| ≤ depth is a cyclic subword of some class
        // of length ≤ depth + 1
        let mut max_len = depth + 1;
        loop {
            if j_tail_bound(rank, c_const, max_len) < eps {
                break;
            }
            if reduced_word_count(rank, max_len + 1) > cap {
                return Err(Error::TailNotAchievable {
                    requested: eps,
                    achievable: j_tail_bound(rank, c_const, max_len),
                });
            }
            max_len += 1;
        }
        let tail = j_tail_bound(rank, c_const, max_len);
        let lens: Vec<f64> = (0..t.edge_count()).map(|e| to_f64(t.length(e))).collect();
        let base = 2 * rank as u64;
        let mut forward: HashMap<(u8, u64), f64> = HashMap::new();
        let mut classes = 0u64;
        let mut path: Vec<u32> = Vec::new();
        for_each_root_free_class(rank, max_len, |w| {
            classes += 1;
            path.clear();
            for &l in w {
                for &s in t.letter_path(l) {
                    crate::words::push_reduced(&mut path, s);
                }
            }
            let k = crate::words::cyclic_core_offset(&path);
            let len: f64 = path[k..path.len() - k].iter().map(|&s| lens[(s >> 1) as usize]).sum();
            let coeff = libm::exp(-libm::exp(len));
            if coeff == 0.0 {
                return;
            }
            let n = w.len();
            let mut buf: Vec<Letter> = Vec::with_capacity(depth);
            for i in 0..n {
                buf.clear();
                for d in 0..depth {
                    buf.push(w[(i + d) % n]);
                    *forward.entry((d as u8 + 1, code(&buf, base))).or_insert(0.0) += coeff;
                }
            }
        });
        Ok(JCurrent { rank, depth, max_len, tail, c_const, classes, forward })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn weight(&self, v: &Word) -> Result<WeightValue> {
        v.check_rank(self.rank)?;
        if v.is_empty() {
            return Err(Error::EmptyWord);
        }
        if v.len() > self.depth {
            return Err(Error::Unsupported("word longer than the J-current table depth"));
        }
        let base = 2 * self.rank as u64;
        let k = v.len() as u8;
        let get = |w: &Word| self.forward.get(&(k, code(w.letters(), base))).copied().unwrap_or(0.0);
        let value = get(v) + get(&v.inverse());
        // rounding in the partial sums
        let tail = self.tail + value * 1e-12;
        Ok(WeightValue::Approx { value, tail })
    }
}

/// `C = ⌈max(N Λ(T, T_A), Λ(T_A, T) / N)⌉` with `T_A` the rose with edges `1/N`.
/// The first term gives `||w||_T ≥ ||w||_A / C`.
pub fn j_constant(t: &MarkedGraph) -> Result<u64> {
    let n = t.rank();
    let ta = MarkedGraph::rose(n, &alloc::vec![q(1, n as i64); n])?;
    let nq = Q::from_integer((n as i64).into());
    let a = lambda_distortion(t, &ta)?.lambda * &nq;
    let b = lambda_distortion(&ta, t)?.lambda / &nq;
    let c = if a > b { a } else { b };
    c.ceil().to_integer().to_u64().ok_or(Error::CapExceeded { what: "J-current constant", cap: u64::MAX as usize })
}

/// `(value, certified tail)` of `⟨v, J(T)⟩`.
pub fn j_current_weight(t: &MarkedGraph, v: &Word, eps: f64) -> Result<(f64, f64)> {
    if v.is_empty() {
        return Err(Error::EmptyWord);
    }
    let j = JCurrent::new(t, v.len(), eps)?;
    let x = j.weight(v)?;
    Ok((x.value(), x.tail()))
}

/// Forward subword counts of a cyclic word, `v` and `v⁻¹` combined, for
/// `1 ≤ |v| ≤ depth`: the weights of `η_w`.
pub fn counting_weights(w: &CyclicWord, depth: usize) -> BTreeMap<Word, u64> {
    let n = w.len();
    let l = w.letters();
    let rank = w.rank();
    let mut fwd: BTreeMap<Vec<Letter>, u64> = BTreeMap::new();
    if n > 0 {
        let mut buf = Vec::with_capacity(depth);
        for i in 0..n {
            buf.clear();
            for d in 0..depth {
                buf.push(l[(i + d) % n]);
                *fwd.entry(buf.clone()).or_insert(0) += 1;
            }
        }
    }
    let mut out = BTreeMap::new();
    for k in 1..=depth {
        for v in reduced_words(rank, k) {
            let inv = v.inverse();
            let c = fwd.get(v.letters()).copied().unwrap_or(0) + fwd.get(inv.letters()).copied().unwrap_or(0);
            out.insert(v, c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphisms::random_automorphism;
    use crate::graph::tests::random_graph;
    use crate::rational::qi;
    use crate::testutil::w;
    use proptest::prelude::*;

    fn exact(x: WeightValue) -> Q {
        x.exact().cloned().unwrap()
    }

    #[test]
    fn counting_examples() {
        let eta = counting_current(&w("abaB")).unwrap();
        assert_eq!(exact(eta.weight(&w("a")).unwrap()), qi(2));
        assert_eq!(exact(eta.weight(&w("ab")).unwrap()), qi(1));
        assert_eq!(counting_current(&Word::empty(2)).unwrap_err(), Error::TrivialWord);
        let x = w("abbAbaB");
        let t1 = counting_current(&x).unwrap().weight_table(6).unwrap();
        let t2 = counting_current(&x.inverse()).unwrap().weight_table(6).unwrap();
        assert_eq!(t1, t2);
        let t3 = counting_current(&x.pow(2)).unwrap().weight_table(6).unwrap();
        for (v, val) in &t1.entries {
            assert_eq!(exact(t3.entries[v].clone()), exact(val.clone()) * qi(2));
        }
        assert!(t1.flip_holds() && t1.switch_holds());
        let fast = counting_weights(&CyclicWord::of(&x), 4);
        for (v, c) in fast {
            assert_eq!(exact(t1.entries[&v].clone()), qi(c as i64));
        }
    }

    #[test]
    fn uniform_examples() {
        let nu = uniform_current(2).unwrap();
        assert_eq!(exact(nu.weight(&w("ab")).unwrap()), q(1, 6));
        assert_eq!(exact(nu.weight(&w("a")).unwrap()), q(1, 2));
        for rank in 2..=3 {
            let table = uniform_current(rank).unwrap().weight_table(if rank == 2 { 6 } else { 4 }).unwrap();
            for k in 1..=table.depth {
                assert_eq!(table.level_sum(k), WeightValue::Exact(qi(2)));
            }
            assert!(table.flip_holds() && table.switch_holds());
        }
    }

    #[test]
    fn intersection_examples() {
        let nu = uniform_current(3).unwrap();
        assert_eq!(exact(intersection_form(&MarkedGraph::unit_rose(3).unwrap(), &nu).unwrap()), qi(1));
        let half = MarkedGraph::rose(2, &[q(1, 2), q(1, 2)]).unwrap();
        assert_eq!(exact(intersection_form(&half, &uniform_current(2).unwrap()).unwrap()), q(1, 2));
        let theta = crate::graph::tests::theta();
        assert!(matches!(intersection_form(&theta, &uniform_current(2).unwrap()), Err(Error::Unsupported(_))));
        let mix = Current::Linear(alloc::vec![
            (q(1, 3), counting_current(&w("ab")).unwrap()),
            (qi(2), uniform_current(2).unwrap()),
        ]);
        assert_eq!(exact(intersection_form(&half, &mix).unwrap()), q(1, 3) + qi(1));
    }

    #[test]
    fn tail_bound_is_decreasing() {
        let mut prev = f64::INFINITY;
        for l in 1..20 {
            let t = j_tail_bound(2, 4, l);
            assert!(t < prev && t > 0.0);
            prev = t;
        }
        assert!(j_tail_bound(2, 4, 15) < 1e-6);
        assert!(j_tail_bound(2, 2, 8) < 1e-6);
    }

    #[test]
    fn j_current_examples() {
        let t = MarkedGraph::unit_rose(2).unwrap();
        let (val, tail) = j_current_weight(&t, &w("a"), 1e-6).unwrap();
        assert!(tail < 1e-6);
        assert!(val >= libm::exp(-core::f64::consts::E));
        let j = JCurrent::new(&t, 3, 1e-6).unwrap();
        let table = Current::TruncatedJ(j).weight_table(3).unwrap();
        assert!(table.flip_holds() && table.switch_holds());
        // partial sums of positive terms are lower bounds
        assert!(table.entries.values().all(|x| x.value() > 0.0));
        let s = MarkedGraph::rose(2, &[q(1, 2), q(3, 2)]).unwrap();
        let other = Current::TruncatedJ(JCurrent::new(&s, 2, 1e-6).unwrap()).weight_table(2).unwrap();
        assert!(other.entries.iter().any(|(v, x)| x.separated_from(&table.entries[v])));
    }

    #[test]
    fn j_cap_reports_achievable_tail() {
        // a short petal forces a large constant C
        let t = MarkedGraph::rose(2, &[q(1, 10), qi(1)]).unwrap();
        assert_eq!(j_constant(&t).unwrap(), 10);
        match JCurrent::new(&t, 1, 1e-6) {
            Err(Error::TailNotAchievable { achievable, .. }) => assert!(achievable > 1e-6),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn pairing_with_counting_currents(seed in any::<u64>(), s2 in any::<u64>(), k in 1usize..8) {
            let t = random_graph(2 + (seed % 2) as usize, seed);
            let x = random_automorphism(t.rank(), k, s2).unwrap().apply(&Word::generator(t.rank(), 0)).unwrap();
            let eta = counting_current(&x).unwrap();
            prop_assert_eq!(exact(intersection_form(&t, &eta).unwrap()), t.translation_length(&x).unwrap());
            let phi = random_automorphism(t.rank(), 4, s2 ^ 77).unwrap();
            let lhs = exact(intersection_form(&t.act(&phi).unwrap(), &eta).unwrap());
            let rhs = exact(intersection_form(&t, &counting_current(&phi.apply(&x).unwrap()).unwrap()).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn unit_rose_pairing_is_cyclic_length() {
        let r = MarkedGraph::unit_rose(2).unwrap();
        let x = w("abbAbaB");
        let eta = counting_current(&x).unwrap();
        let sum = eta.weight(&w("a")).unwrap().value() + eta.weight(&w("b")).unwrap().value();
        assert_eq!(sum, 7.0);
        assert_eq!(exact(intersection_form(&r, &eta).unwrap()), qi(7));
    }
}
