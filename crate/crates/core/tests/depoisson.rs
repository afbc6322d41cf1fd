use involis::circle::Family;
use involis::depoisson::{bracket_involution, bracket_one, correction, evaluation_points, mu_nu, Slack};
use involis::tableaux::{exact_cdf, Side};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn exact(family: Family, n: usize, m: usize, l: usize) -> f64 {
    let side = if family == Family::Square { Side::Row } else { Side::Column };
    exact_cdf(n, m, side, 1, l).unwrap().to_f64().unwrap()
}

#[test]
fn tail_slack_contains_small_cases() {
    let mut cases = 0;
    for size in 0..=10 {
        for n in 0..=size / 2 {
            let m = size - 2 * n;
            for family in [Family::Square, Family::Diamond] {
                for l in 0..=size {
                    if family == Family::Diamond && l >= 2 && l % 2 == 0 {
                        // no product formula at general β
                        assert!(bracket_involution(family, l, n, m, 2.0, Slack::PoissonTail).is_err() || m == 0 || n == 0);
                        continue;
                    }
                    let b = bracket_involution(family, l, n, m, 2.0, Slack::PoissonTail).unwrap();
                    let q = exact(family, n, m, l);
                    assert!(b.lower - 1e-12 <= q && q <= b.upper + 1e-12, "{family:?} n={n} m={m} l={l}: {q} not in [{}, {}]", b.lower, b.upper);
                    cases += 1;
                }
            }
        }
    }
    assert_eq!(cases, 432);
}

#[test]
fn zero_slack_brackets_are_ordered() {
    for (n, m, l) in [(3, 2, 3), (10, 4, 6), (20, 0, 8)] {
        let b = bracket_involution(Family::Square, l, n, m, 2.0, Slack::None).unwrap();
        assert!(b.lower <= b.upper);
        assert!(b.slack_note.contains("omitted"));
    }
}

#[test]
fn constant_slack_widens() {
    let phi = |lambda: f64| Ok((-lambda / 50.0).exp());
    let tight = bracket_one(phi, 30, 1.0, Slack::None).unwrap();
    let wide = bracket_one(phi, 30, 1.0, Slack::Constant(2.0)).unwrap();
    assert!(wide.lower <= tight.lower && wide.upper >= tight.upper);
    assert!((tight.lower - wide.lower - 2.0 / 30.0).abs() < 1e-12);
}

#[test]
fn non_monotone_phi_is_reported() {
    let phi = |lambda: f64| Ok(lambda / 1000.0);
    assert!(bracket_one(phi, 50, 1.0, Slack::None).is_err());
}

#[test]
fn small_n_points() {
    let (mu, nu) = evaluation_points(1, 2.0).unwrap();
    assert!((mu - 1.0 - correction(2, 2.0)).abs() < 1e-12);
    assert_eq!(nu, 0.0);
    assert!(evaluation_points(5, -1.0).is_err());
}

proptest! {
    #[test]
    fn shifts_are_symmetric(n in 2usize..1_000_000, d in 0.01f64..10.0) {
        let (mu, nu) = mu_nu(n, d).unwrap();
        // exact up to the rounding of n ± c
        prop_assert!(((mu - n as f64) - (n as f64 - nu)).abs() <= 4.0 * f64::EPSILON * n as f64);
        prop_assert!(mu > n as f64);
    }

    #[test]
    fn correction_grows_with_d(n in 2usize..100_000, d in 0.01f64..10.0) {
        prop_assert!(correction(n, d + 0.5) > correction(n, d));
    }
}

#[test]
fn width_shrinks_with_size() {
    // l at the edge center 2√(2n+m), m = ⌊√(2n)/2⌋
    let widths: Vec<f64> = [100usize, 1000, 10_000]
        .iter()
        .map(|&n| {
            let m = ((2.0 * n as f64).sqrt() * 0.5) as usize;
            let l = (2.0 * ((2 * n + m) as f64).sqrt()) as usize;
            let b = bracket_involution(Family::Square, l, n, m, 1.0, Slack::None).unwrap();
            b.upper - b.lower
        })
        .collect();
    assert!(widths.windows(2).all(|w| w[1] < w[0]), "{widths:?}");
    assert!(widths[2] < 0.9, "{widths:?}");
}
