//! Oscillation and crossing diagnostics behind S- and M1-compactness.
//!
//! All suprema over time points reduce to the finite sequence of piece
//! values: two time points in one piece carry the same value, so only the
//! order in which pieces are visited matters. Comparisons are strict and
//! exact (no tolerance); ties at exactly `eta` do not count.

use super::StepPath;
use crate::error::{domain, Error, Result};
use crate::exact::ExactSum;

/// Distance from `b` to the closed interval with endpoints `a` and `c`.
pub fn h_dist(a: f64, b: f64, c: f64) -> f64 {
    let lo = a.min(c);
    let hi = a.max(c);
    (lo - lo.min(b)).max(hi.max(b) - hi)
}

/// `sup H(v[p], v[q], v[r])` over `p < q < r`.
pub(crate) fn middle_excursion(vals: &[f64]) -> f64 {
    let m = vals.len();
    if m < 3 {
        return 0.0;
    }
    let mut suf_min = vec![0.0; m];
    let mut suf_max = vec![0.0; m];
    suf_min[m - 1] = vals[m - 1];
    suf_max[m - 1] = vals[m - 1];
    for i in (0..m - 1).rev() {
        suf_min[i] = suf_min[i + 1].min(vals[i]);
        suf_max[i] = suf_max[i + 1].max(vals[i]);
    }
    let mut pre_min = vals[0];
    let mut pre_max = vals[0];
    let mut best: f64 = 0.0;
    for q in 1..m - 1 {
        let v = vals[q];
        best = best.max(v - pre_min.max(suf_min[q + 1]));
        best = best.max(pre_max.min(suf_max[q + 1]) - v);
        pre_min = pre_min.min(v);
        pre_max = pre_max.max(v);
    }
    best
}

/// Greedy earliest-completion scan; optimal because consecutive pairs may
/// share an endpoint piece.
pub(crate) fn oscillation_count_seq(vals: &[f64], eta: f64) -> usize {
    let mut count = 0;
    let Some(&first) = vals.first() else { return 0 };
    let (mut lo, mut hi) = (first, first);
    for &v in &vals[1..] {
        if v - lo > eta || hi - v > eta {
            count += 1;
            lo = v;
            hi = v;
        } else {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    count
}

pub(crate) fn upcrossing_count_seq(vals: &[f64], a: f64, b: f64) -> usize {
    let mut count = 0;
    let mut below = false;
    for &v in vals {
        if !below {
            below = v < a;
        } else if v > b {
            count += 1;
            below = false;
        }
    }
    count
}

/// The M1 oscillation function `w(x, delta)`: the largest `H(x(t1), x(t2), x(t3))`
/// over `t1 < t2 < t3` with `t2 - delta <= t1` and `t3 <= t2 + delta`.
///
/// For each middle piece `q` and farthest right piece `r`, the middle time
/// is placed as early as `r` allows, `t2 = max(t_q, t_r - delta)`, which
/// makes the set of reachable left pieces as large as possible.
pub fn oscillation(x: &StepPath, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return domain(format!("window must be positive, got {delta}"));
    }
    let t = &x.times;
    let v = &x.values;
    let m = v.len();
    let mut best: f64 = 0.0;
    let mut left_min = Vec::new();
    let mut left_max = Vec::new();
    for q in 1..m.saturating_sub(1) {
        let next = t[q + 1];
        // left pieces reachable with the earliest middle time t_q, nearest first
        left_min.clear();
        left_max.clear();
        let (mut lmin, mut lmax) = (f64::INFINITY, f64::NEG_INFINITY);
        for p in (0..q).rev() {
            if !(t[p + 1] > t[q] - delta) {
                break;
            }
            lmin = lmin.min(v[p]);
            lmax = lmax.max(v[p]);
            left_min.push(lmin);
            left_max.push(lmax);
        }
        if left_min.is_empty() {
            continue;
        }
        let (mut rmin, mut rmax) = (f64::INFINITY, f64::NEG_INFINITY);
        let mut reach = left_min.len();
        for r in q + 1..m {
            let t2 = t[q].max(t[r] - delta);
            if !(t2 < next) {
                break;
            }
            rmin = rmin.min(v[r]);
            rmax = rmax.max(v[r]);
            // left piece q-1-k stays reachable while t_{q-k} > t2 - delta
            while reach > 0 && !(t[q - reach + 1] > t2 - delta) {
                reach -= 1;
            }
            if reach == 0 {
                break;
            }
            let (a, b) = (left_min[reach - 1], left_max[reach - 1]);
            best = best.max(v[q] - a.max(rmin)).max(b.min(rmax) - v[q]);
        }
    }
    Ok(best)
}

/// Largest `N` with `s <= t1 < t2 <= t3 < ... < t_{2N} <= t` and
/// `|x(t_{2k}) - x(t_{2k-1})| > eta`.
pub fn count_oscillations(x: &StepPath, eta: f64, s: f64, t: f64) -> Result<usize> {
    check_interval(s, t)?;
    if !(eta > 0.0) {
        return domain(format!("eta must be positive, got {eta}"));
    }
    Ok(oscillation_count_seq(&x.values[x.pieces_in(s, t)], eta))
}

/// Number of upcrossings of `[a, b]` over `[0, 1]`.
pub fn count_upcrossings(x: &StepPath, a: f64, b: f64) -> Result<usize> {
    if !(a < b) {
        return domain(format!("upcrossing band needs a < b, got [{a}, {b}]"));
    }
    Ok(upcrossing_count_seq(&x.values, a, b))
}

fn check_interval(s: f64, t: f64) -> Result<()> {
    if !(0.0 <= s && s < t && t <= 1.0) {
        return domain(format!("need 0 <= s < t <= 1, got s={s}, t={t}"));
    }
    Ok(())
}

/// Adds `|p - q|` exactly.
fn add_abs_diff(acc: &mut ExactSum, p: f64, q: f64, scale: f64) {
    let (hi, lo) = if p >= q { (p, q) } else { (q, p) };
    acc.add(scale * hi);
    acc.add(-scale * lo);
}

/// Adds `H(a, b, c)` exactly.
fn add_h(acc: &mut ExactSum, a: f64, b: f64, c: f64) {
    let lo = a.min(c);
    let hi = a.max(c);
    if b < lo {
        add_abs_diff(acc, lo, b, 1.0);
    } else if b > hi {
        add_abs_diff(acc, b, hi, 1.0);
    }
}

/// Right side minus left side of
/// `|x(u) - x(v)| <= 2|x(s) - x(t)| + H(x(s), x(u), x(t)) + H(x(s), x(v), x(t))`,
/// evaluated exactly and rounded once, so a true inequality never shows a
/// negative gap.
pub fn lemma_a1_gap(x: &StepPath, s: f64, u: f64, v: f64, t: f64) -> Result<f64> {
    if !(0.0 <= s && s <= u && u < v && v <= t && t <= 1.0) {
        return domain(format!(
            "need 0 <= s <= u < v <= t <= 1, got {s}, {u}, {v}, {t}"
        ));
    }
    let (xs, xu, xv, xt) = (x.eval(s)?, x.eval(u)?, x.eval(v)?, x.eval(t)?);
    let mut acc = ExactSum::new();
    add_abs_diff(&mut acc, xs, xt, 2.0);
    add_h(&mut acc, xs, xu, xt);
    add_h(&mut acc, xs, xv, xt);
    add_abs_diff(&mut acc, xu, xv, -1.0);
    Ok(acc.value())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaA2Record {
    pub count: usize,
    pub bound: f64,
    pub beta_local: f64,
}

/// Oscillation count on `[s, t]` next to the bound
/// `(2|x(t) - x(s)| + beta) / (eta - beta)`, where `beta` is the largest
/// middle excursion inside `[s, t]`. Requires `eta > 2 beta`.
pub fn lemma_a2_bound(x: &StepPath, eta: f64, s: f64, t: f64) -> Result<LemmaA2Record> {
    check_interval(s, t)?;
    if !(eta > 0.0) {
        return domain(format!("eta must be positive, got {eta}"));
    }
    let vals = &x.values[x.pieces_in(s, t)];
    let beta = middle_excursion(vals);
    if !(eta > 2.0 * beta) {
        return Err(Error::PreconditionNotMet(format!(
            "eta = {eta} does not exceed 2 beta = {}",
            2.0 * beta
        )));
    }
    let jump = (x.eval(t)? - x.eval(s)?).abs();
    Ok(LemmaA2Record {
        count: oscillation_count_seq(vals, eta),
        bound: (2.0 * jump + beta) / (eta - beta),
        beta_local: beta,
    })
}

/// Family-wise maxima for the two compactness conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactnessReport {
    pub sup_norm_max: f64,
    /// `(eta, max N_eta)` sorted by `eta`.
    pub osc_counts: Vec<(f64, usize)>,
    /// `((a, b), max N^{a,b})` in input order.
    pub upcross_counts: Vec<((f64, f64), usize)>,
}

pub fn compactness_report(
    family: &[StepPath],
    etas: &[f64],
    bands: &[(f64, f64)],
) -> Result<CompactnessReport> {
    if family.is_empty() {
        return domain("compactness report needs at least one path");
    }
    if let Some(e) = etas.iter().find(|e| !(**e > 0.0)) {
        return domain(format!("eta must be positive, got {e}"));
    }
    if let Some(b) = bands.iter().find(|b| !(b.0 < b.1)) {
        return domain(format!("band needs a < b, got [{}, {}]", b.0, b.1));
    }
    let mut etas = etas.to_vec();
    etas.sort_by(f64::total_cmp);
    let sup_norm_max = family.iter().map(StepPath::sup_norm).fold(0.0, f64::max);
    let osc_counts = etas
        .iter()
        .map(|&e| {
            (
                e,
                family
                    .iter()
                    .map(|x| oscillation_count_seq(&x.values, e))
                    .max()
                    .unwrap(),
            )
        })
        .collect();
    let upcross_counts = bands
        .iter()
        .map(|&(a, b)| {
            (
                (a, b),
                family
                    .iter()
                    .map(|x| upcrossing_count_seq(&x.values, a, b))
                    .max()
                    .unwrap(),
            )
        })
        .collect();
    Ok(CompactnessReport {
        sup_norm_max,
        osc_counts,
        upcross_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stairs(k: usize) -> StepPath {
        StepPath::on_uniform_grid((0..=k).map(|v| v as f64).collect()).unwrap()
    }

    /// Exhaustive maximum over point systems `p1 < q1 <= p2 < q2 <= ...`.
    fn brute_osc(vals: &[f64], eta: f64) -> usize {
        fn rec(vals: &[f64], start: usize, eta: f64) -> usize {
            let mut best = 0;
            for p in start..vals.len() {
                for q in p + 1..vals.len() {
                    if (vals[q] - vals[p]).abs() > eta {
                        best = best.max(1 + rec(vals, q, eta));
                    }
                }
            }
            best
        }
        rec(vals, 0, eta)
    }

    #[test]
    fn h_dist_examples() {
        assert_eq!(h_dist(0.0, 0.5, 1.0), 0.0);
        assert_eq!(h_dist(0.0, 2.0, 1.0), 1.0);
        assert_eq!(h_dist(1.0, 0.0, 2.0), 1.0);
        assert_eq!(h_dist(1.0, 5.0, -1.0), h_dist(-1.0, 5.0, 1.0));
    }

    #[test]
    fn oscillation_examples() {
        let s = stairs(3);
        for d in [0.01, 0.3, 1.0] {
            assert_eq!(oscillation(&s, d).unwrap(), 0.0);
        }
        for n in [4u32, 8, 16, 64] {
            let p = StepPath::pulse(n).unwrap();
            assert_eq!(oscillation(&p, 2.0 / f64::from(n)).unwrap(), 1.0);
            assert_eq!(oscillation(&p, 1.0).unwrap(), 1.0);
        }
        // window too narrow to straddle the pulse
        assert_eq!(oscillation(&StepPath::pulse(4).unwrap(), 0.2).unwrap(), 0.0);
        assert!(oscillation(&s, 0.0).is_err());
    }

    #[test]
    fn oscillation_count_examples() {
        let s = stairs(3);
        assert_eq!(count_oscillations(&s, 0.5, 0.0, 1.0).unwrap(), 3);
        assert_eq!(count_oscillations(&s, 1.5, 0.0, 1.0).unwrap(), 1);
        assert_eq!(brute_osc(s.values(), 0.5), 3);
        assert_eq!(brute_osc(s.values(), 1.5), 1);
        let p = StepPath::pulse(10).unwrap();
        assert_eq!(count_oscillations(&p, 0.5, 0.0, 1.0).unwrap(), 2);
        assert_eq!(brute_osc(p.values(), 0.5), 2);
        // restricted to the rising edge only
        assert_eq!(count_oscillations(&p, 0.5, 0.0, 0.45).unwrap(), 1);
        assert!(count_oscillations(&s, 0.5, 0.5, 0.5).is_err());
        assert!(count_oscillations(&s, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn ties_do_not_count() {
        let s = stairs(3);
        assert_eq!(count_oscillations(&s, 1.0, 0.0, 1.0).unwrap(), 1);
        assert_eq!(count_upcrossings(&s, 0.0, 3.0).unwrap(), 0);
    }

    #[test]
    fn upcrossing_examples() {
        let p = StepPath::pulse(10).unwrap();
        assert_eq!(count_upcrossings(&p, 0.25, 0.75).unwrap(), 1);
        assert_eq!(count_upcrossings(&stairs(3), 0.5, 2.5).unwrap(), 1);
        assert!(count_upcrossings(&p, 1.0, 1.0).is_err());
    }

    #[test]
    fn lemma_a1_examples() {
        let c = StepPath::constant(2.5).unwrap();
        assert_eq!(lemma_a1_gap(&c, 0.0, 0.2, 0.6, 1.0).unwrap(), 0.0);
        let s = stairs(4);
        let g = lemma_a1_gap(&s, 0.0, 0.3, 0.6, 1.0).unwrap();
        let expect = 2.0 * 4.0 - (s.eval(0.6).unwrap() - s.eval(0.3).unwrap());
        assert_eq!(g, expect);
        assert!(g >= 4.0);
        assert!(lemma_a1_gap(&s, 0.5, 0.4, 0.6, 1.0).is_err());
        assert!(lemma_a1_gap(&s, 0.0, 0.6, 0.6, 1.0).is_err());
    }

    #[test]
    fn lemma_a1_tight_case_is_not_negative() {
        let x = StepPath::new(vec![0.0, 0.2, 0.4, 0.6], vec![0.1, -0.7, 0.3, 0.1]).unwrap();
        let g = lemma_a1_gap(&x, 0.0, 0.2, 0.4, 0.6).unwrap();
        assert_eq!(g, 0.0);
    }

    #[test]
    fn lemma_a2_examples() {
        let r = lemma_a2_bound(&stairs(3), 0.5, 0.0, 1.0).unwrap();
        assert_eq!(
            r,
            LemmaA2Record {
                count: 3,
                bound: 12.0,
                beta_local: 0.0
            }
        );
        let r = lemma_a2_bound(&StepPath::constant(1.0).unwrap(), 0.3, 0.0, 1.0).unwrap();
        assert_eq!((r.count, r.bound), (0, 0.0));
        let p = StepPath::pulse(8).unwrap();
        assert!(matches!(
            lemma_a2_bound(&p, 1.5, 0.0, 1.0),
            Err(Error::PreconditionNotMet(_))
        ));
        assert!(matches!(
            lemma_a2_bound(&p, 0.5, 1.0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn middle_excursion_matches_triples() {
        let vals = [0.0, 3.0, 1.0, -2.0, 2.5, 0.5];
        let mut best: f64 = 0.0;
        for p in 0..vals.len() {
            for q in p + 1..vals.len() {
                for r in q + 1..vals.len() {
                    best = best.max(h_dist(vals[p], vals[q], vals[r]));
                }
            }
        }
        assert_eq!(middle_excursion(&vals), best);
    }

    #[test]
    fn compactness_examples() {
        let pulses: Vec<_> = [4u32, 8, 16, 64]
            .iter()
            .map(|&n| StepPath::pulse(n).unwrap())
            .collect();
        let r = compactness_report(&pulses, &[0.5], &[(0.25, 0.75)]).unwrap();
        assert_eq!(r.sup_norm_max, 1.0);
        assert_eq!(r.osc_counts, vec![(0.5, 2)]);
        assert_eq!(r.upcross_counts, vec![((0.25, 0.75), 1)]);

        let r = compactness_report(
            &[StepPath::constant(4.0).unwrap()],
            &[0.1, 1.0],
            &[(0.0, 1.0)],
        )
        .unwrap();
        assert!(r.osc_counts.iter().all(|c| c.1 == 0));
        assert!(r.upcross_counts.iter().all(|c| c.1 == 0));

        let family: Vec<_> = (1..=10).map(stairs).collect();
        let r = compactness_report(&family, &[0.5], &[]).unwrap();
        assert_eq!(r.osc_counts, vec![(0.5, 10)]);

        assert!(compactness_report(&[], &[0.5], &[]).is_err());
    }
}
