use proptest::prelude::*;

use linproc::cadlag::{
    count_oscillations, count_upcrossings, h_dist, oscillation, parse_csv, plot_affine, plot_auto,
    to_csv, StepPath,
};
use linproc::coeffs::CoefficientScheme;
use linproc::innovations::InnovationModel;
use linproc::limits::{lfsm_kernel, lfsm_path, LimitSpec};
use linproc::rng::StreamKey;

/// Step path on a dyadic grid so that window edges hit breakpoints exactly.
fn grid_path() -> impl Strategy<Value = StepPath> {
    prop::collection::vec((any::<bool>(), -4i32..=4), 1..24).prop_map(|cells| {
        let mut times = vec![0.0];
        let mut values = vec![f64::from(cells[0].1) * 0.5];
        for (k, &(cut, v)) in cells.iter().enumerate().skip(1) {
            if cut {
                times.push(k as f64 / 32.0);
                values.push(f64::from(v) * 0.5);
            }
        }
        StepPath::new(times, values).unwrap()
    })
}

fn float_path() -> impl Strategy<Value = StepPath> {
    prop::collection::vec((0.0..1.0f64, -5.0..5.0f64), 0..30).prop_flat_map(|pts| {
        (-5.0..5.0f64).prop_map(move |v0| {
            let mut pts = pts.clone();
            pts.retain(|p| p.0 > 0.0);
            pts.sort_by(|a, b| a.0.total_cmp(&b.0));
            pts.dedup_by(|a, b| a.0 == b.0);
            let mut times = vec![0.0];
            let mut values = vec![v0];
            for (t, v) in pts {
                times.push(t);
                values.push(v);
            }
            StepPath::new(times, values).unwrap()
        })
    })
}

/// Every feasible piece triple, with the window inequalities written the
/// same way as in the library.
fn brute_oscillation(x: &StepPath, delta: f64) -> f64 {
    let t = x.breakpoints();
    let v = x.values();
    let m = v.len();
    let mut best: f64 = 0.0;
    for q in 1..m.saturating_sub(1) {
        for r in q + 1..m {
            let t2 = t[q].max(t[r] - delta);
            if t2 >= t[q + 1] {
                continue;
            }
            for p in 0..q {
                if t[p + 1] > t2 - delta {
                    best = best.max(h_dist(v[p], v[q], v[r]));
                }
            }
        }
    }
    best
}

proptest! {
    #[test]
    fn inv_cdf_is_odd(k in 1u64..(1u64 << 53), alpha in 0.3..=2.0f64) {
        // u on the 2^-53 grid, where 1 - u is exact, like the generator's output
        let u = k as f64 / (1u64 << 53) as f64;
        let m = InnovationModel::new(alpha).unwrap();
        let a = m.inv_cdf(u).unwrap();
        let b = m.inv_cdf(1.0 - u).unwrap();
        // the closed branch sends u = 1/2 to -1 from both sides
        if u != 0.5 {
            prop_assert!((a + b).abs() <= 1e-12 * a.abs(), "{} vs {}", a, b);
        }
    }

    #[test]
    fn h_dist_symmetric(a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64) {
        prop_assert_eq!(h_dist(a, b, c), h_dist(c, b, a));
        prop_assert_eq!(h_dist(a, b, c) == 0.0, a.min(c) <= b && b <= a.max(c));
    }

    #[test]
    fn oscillation_count_monotone(x in float_path(), e1 in 0.01..3.0f64, e2 in 0.01..3.0f64,
                                  s in 0.0..0.5f64, t in 0.5..=1.0f64) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let n_lo = count_oscillations(&x, lo, 0.0, 1.0).unwrap();
        let n_hi = count_oscillations(&x, hi, 0.0, 1.0).unwrap();
        prop_assert!(n_hi <= n_lo);
        if s < t {
            let inner = count_oscillations(&x, lo, s, t).unwrap();
            prop_assert!(inner <= n_lo);
        }
    }

    #[test]
    fn upcrossings_below_oscillations(x in float_path(), a in -5.0..5.0f64, w in 0.01..5.0f64) {
        let b = a + w;
        let up = count_upcrossings(&x, a, b).unwrap();
        prop_assert!(up <= count_oscillations(&x, b - a, 0.0, 1.0).unwrap());
    }

    #[test]
    fn oscillation_matches_triples(x in grid_path(), k in 1u32..40) {
        let delta = f64::from(k) / 64.0;
        prop_assert_eq!(oscillation(&x, delta).unwrap(), brute_oscillation(&x, delta));
    }

    #[test]
    fn oscillation_matches_triples_float(x in float_path(), delta in 0.001..1.2f64) {
        prop_assert_eq!(oscillation(&x, delta).unwrap(), brute_oscillation(&x, delta));
    }

    #[test]
    fn oscillation_monotone_in_window(x in float_path(), d1 in 0.001..1.0f64, d2 in 0.001..1.0f64) {
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        prop_assert!(oscillation(&x, lo).unwrap() <= oscillation(&x, hi).unwrap());
    }

    #[test]
    fn csv_roundtrip(x in float_path()) {
        prop_assert_eq!(parse_csv(&to_csv(&x)).unwrap(), x);
    }

    #[test]
    fn plots(x in float_path(), a in -5.0..5.0f64, w in 0.1..5.0f64) {
        let once = plot_affine(&x, a, a + w).unwrap();
        prop_assert_eq!(plot_affine(&once, 0.0, 1.0).unwrap(), once);
        if let Ok(p) = plot_auto(&x) {
            let lo = p.values().iter().copied().fold(f64::INFINITY, f64::min);
            let hi = p.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
            prop_assert_eq!((lo, hi), (0.0, 1.0));
            let twice = plot_auto(&p).unwrap();
            for (u, v) in twice.values().iter().zip(p.values()) {
                prop_assert!((u - v).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn recomposition(j in -10_000i64..=10_000, g in 1.01..5.0f64, k1 in 0.1..4.0f64, k2 in 0.1..4.0f64) {
        let schemes = [
            CoefficientScheme::one_sided(g).unwrap(),
            CoefficientScheme::alternating(k1, k2, g).unwrap(),
            CoefficientScheme::DifferencePair,
            CoefficientScheme::finite(vec![(-3, 1.5), (0, -2.0), (j, k1)]).unwrap_or(CoefficientScheme::zero()),
        ];
        for s in &schemes {
            let (pos, neg) = s.decompose();
            prop_assert_eq!(s.coefficient(j), pos.coefficient(j) - neg.coefficient(j));
            prop_assert!(pos.coefficient(j) >= 0.0 && neg.coefficient(j) >= 0.0);
        }
    }

    #[test]
    fn one_sided_kernel_vanishes_after_t(t in 0.0..=1.0f64, du in 1e-9..5.0f64, h in 0.7..0.99f64) {
        let s = LimitSpec::new(1.5, h, 1.3, 0.0).unwrap();
        prop_assert_eq!(lfsm_kernel(&s, t, t + du), 0.0);
    }
}

#[test]
fn pareto_tail_law() {
    for alpha in [0.8, 1.5, 2.0] {
        let m = InnovationModel::new(alpha).unwrap();
        let xs = m.sample_range(StreamKey::new(11, 0), 0, 1_000_000);
        for x in [2.0f64, 4.0, 8.0, 16.0] {
            let p = x.powf(-alpha);
            let hits = xs.iter().filter(|v| v.abs() > x).count() as f64 / xs.len() as f64;
            let se = (p * (1.0 - p) / xs.len() as f64).sqrt();
            assert!(
                (hits - p).abs() <= 3.0 * se,
                "alpha {alpha}, x {x}: {hits} vs {p}"
            );
        }
    }
}

#[test]
fn gaussian_root_is_larger_and_increasing() {
    let m = InnovationModel::new(2.0).unwrap();
    let mut prev = 0.0;
    for n in [3u64, 4, 10, 100, 1000, 10_000, 1_000_000] {
        let a = m.norm_constant_a(n).unwrap();
        // right of the minimum of x^2 - 2n ln x, which sits at sqrt(n)
        assert!(a > (n as f64).sqrt(), "n = {n}: {a}");
        // a > sqrt(2n) iff a > e, true from n = 4 on
        if n >= 4 {
            assert!(a > (2.0 * n as f64).sqrt(), "n = {n}: {a}");
        }
        assert!((a * a - 2.0 * n as f64 * a.ln()).abs() <= 1e-9 * a * a);
        assert!(a > prev);
        prev = a;
    }
}

#[test]
fn lfsm_is_linear_in_weights() {
    let m = InnovationModel::new(1.5).unwrap();
    let h = 0.85;
    for seed in 0..4 {
        let p1 = lfsm_path(
            &LimitSpec::new(1.5, h, 1.0, 0.5).unwrap(),
            &m,
            200,
            3.0,
            seed,
            2,
        )
        .unwrap();
        let p2 = lfsm_path(
            &LimitSpec::new(1.5, h, -0.25, 2.0).unwrap(),
            &m,
            200,
            3.0,
            seed,
            2,
        )
        .unwrap();
        let p3 = lfsm_path(
            &LimitSpec::new(1.5, h, 0.75, 2.5).unwrap(),
            &m,
            200,
            3.0,
            seed,
            2,
        )
        .unwrap();
        let scale = p3.sup_norm().max(1.0);
        for ((a, b), c) in p1.values().iter().zip(p2.values()).zip(p3.values()) {
            assert!((a + b - c).abs() <= 1e-12 * scale, "{a} + {b} vs {c}");
        }
    }
}
