//! Oracles shared by the integration tests. Nothing here calls into the
//! special-function code under test.
#![allow(dead_code)]

use std::sync::OnceLock;

use involis::painleve2::{solve_hastings_mcleod, BvpConfig, PiiGrid};

pub fn grid() -> &'static PiiGrid {
    static GRID: OnceLock<PiiGrid> = OnceLock::new();
    GRID.get_or_init(|| solve_hastings_mcleod(&BvpConfig::default()).expect("default solve"))
}

/// Gauss–Legendre nodes and weights on [a, b] by Newton on P_n.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let mut xs = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        xs.push(0.5 * (a + b) + 0.5 * (b - a) * z);
        ws.push((b - a) / ((1.0 - z * z) * dp * dp));
    }
    (xs, ws)
}

/// Ai and Ai' from the large-x asymptotic series (good to ~1e-15 for x ≥ 12).
fn airy_asymptotic(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (mut u, mut su, mut sv) = (1.0, 1.0, 1.0);
    for k in 1..30 {
        let kf = k as f64;
        u *= (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0) / ((2.0 * kf - 1.0) * 216.0 * kf);
        let v = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let z = zeta.powi(k);
        su += sign * u / z;
        sv += sign * v / z;
    }
    let pre = (-zeta).exp() / (2.0 * std::f64::consts::PI.sqrt());
    (pre * su / x.powf(0.25), -pre * x.powf(0.25) * sv)
}

fn rk4(x: f64, y: [f64; 2], h: f64) -> [f64; 2] {
    let f = |x: f64, y: [f64; 2]| [y[1], x * y[0]];
    let k1 = f(x, y);
    let k2 = f(x + h / 2.0, [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]]);
    let k3 = f(x + h / 2.0, [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]]);
    let k4 = f(x + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Ai by backward RK4 from x = 12, where Ai is the dominant solution.
pub struct AiryOracle {
    nodes: Vec<[f64; 2]>,
}

const AIRY_START: f64 = 12.0;
const AIRY_STEP: f64 = 1e-3;

impl AiryOracle {
    pub fn new(x_min: f64) -> Self {
        let steps = ((AIRY_START - x_min) / AIRY_STEP).ceil() as usize + 1;
        let (a, ap) = airy_asymptotic(AIRY_START);
        let mut nodes = vec![[a, ap]];
        for i in 0..steps {
            let x = AIRY_START - i as f64 * AIRY_STEP;
            nodes.push(rk4(x, nodes[i], -AIRY_STEP));
        }
        AiryOracle { nodes }
    }

    pub fn eval(&self, x: f64) -> (f64, f64) {
        if x >= AIRY_START {
            return airy_asymptotic(x);
        }
        let i = ((AIRY_START - x) / AIRY_STEP).floor() as usize;
        let x0 = AIRY_START - i as f64 * AIRY_STEP;
        let y = rk4(x0, self.nodes[i], x - x0);
        (y[0], y[1])
    }
}

fn det(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut d = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    d
}

/// F₂(s) = det(I − K_Ai) on [s, ∞), Nyström with 40 Gauss–Legendre points on [s, s+16].
pub fn fredholm_f2(airy: &AiryOracle, s: f64) -> f64 {
    fredholm_f2_nodes(airy, s, 40)
}

pub fn fredholm_f2_nodes(airy: &AiryOracle, s: f64, nodes: usize) -> f64 {
    let (xs, ws) = gauss_legendre(nodes, s, s + 16.0);
    let vals: Vec<(f64, f64)> = xs.iter().map(|&x| airy.eval(x)).collect();
    let n = xs.len();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (ai, api) = vals[i];
            let (aj, apj) = vals[j];
            let k = if i == j {
                api * api - xs[i] * ai * ai
            } else {
                (ai * apj - api * aj) / (xs[i] - xs[j])
            };
            a[i][j] = (i == j) as u8 as f64 - ws[i].sqrt() * k * ws[j].sqrt();
        }
    }
    det(a)
}

/// u(s) from u² = −(log F₂)'' by a Richardson-extrapolated second difference;
/// the Hastings–McLeod solution is negative.
pub fn u_from_fredholm(s: f64) -> f64 {
    let airy = AiryOracle::new(s - 1.0);
    let lf = |x: f64| fredholm_f2(&airy, x).ln();
    let d2 = |h: f64| (lf(s + h) - 2.0 * lf(s) + lf(s - h)) / (h * h);
    let d = (4.0 * d2(0.025) - d2(0.05)) / 3.0;
    -(-d).sqrt()
}

pub struct Series {
    pub value: f64,
    /// Poisson mass of the sizes that were summed.
    pub mass: f64,
}

fn pmf(lambda: f64, k: usize) -> f64 {
    // direct product form, independent of the library's log-gamma version
    (1..=k).fold((-lambda).exp(), |acc, j| acc * lambda / j as f64)
}

/// Σ pmf(a, m) pmf(t²/2, n) P(λ_1 ≤ l) (rows) or P(λᵗ_1 ≤ l) (columns) over 2n + m ≤ max_size.
pub fn involution_series(side: involis::tableaux::Side, l: usize, t: f64, a: f64, max_size: usize) -> Series {
    use num_traits::ToPrimitive;
    let (mut value, mut mass) = (0.0, 0.0);
    for size in 0..=max_size {
        for n in 0..=size / 2 {
            let m = size - 2 * n;
            let w = pmf(a * t, m) * pmf(t * t / 2.0, n);
            let p = involis::tableaux::exact_cdf(n, m, side, 1, l).unwrap().to_f64().unwrap();
            value += w * p;
            mass += w;
        }
    }
    Series { value, mass }
}

/// Signed analogue by brute force over signed involutions of up to `max_n` pairs ±x:
/// weights pmf(αt, m₊) pmf(βt, m₋) pmf(t², n) on the class with n two-cycle pairs.
pub fn signed_series(l: usize, t: f64, alpha: f64, beta: f64, max_n: usize) -> Series {
    use std::collections::HashMap;
    let (mut value, mut mass) = (0.0, 0.0);
    for big_n in 0..=max_n {
        let mut classes: HashMap<(usize, usize, usize), (u64, u64)> = HashMap::new();
        involis::montecarlo::for_each_signed_involution(big_n, |perm, pairs, mp, mm| {
            let e = classes.entry((pairs, mp, mm)).or_default();
            e.0 += 1;
            e.1 += (independent_lis(perm) <= l) as u64;
        });
        for ((n, mp, mm), (count, good)) in classes {
            let w = pmf(alpha * t, mp) * pmf(beta * t, mm) * pmf(t * t, n);
            value += w * good as f64 / count as f64;
            mass += w;
        }
    }
    Series { value, mass }
}

/// O(n²) dynamic-programming LIS, kept apart from the patience-sorting version.
pub fn independent_lis(p: &[usize]) -> usize {
    let mut best = vec![1usize; p.len()];
    for i in 0..p.len() {
        for j in 0..i {
            if p[j] < p[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}
