//! Airy function Ai and its derivative on the real line.
//!
//! Three regimes: Maclaurin series on [-8, 3], a Laplace-type integral for
//! 3 < x < 8 (the series cancels badly there), and the standard asymptotic
//! expansions for |x| >= 8.

use crate::quad::Composite;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

const AI0: f64 = 0.355_028_053_887_817_24;
const AIP0: f64 = -0.258_819_403_792_806_8;

/// Returns (Ai(x), Ai'(x)).
pub fn airy(x: f64) -> (f64, f64) {
    if x >= 8.0 {
        asymptotic_pos(x)
    } else if x > 3.0 {
        laplace(x)
    } else if x >= -8.0 {
        maclaurin(x)
    } else {
        asymptotic_neg(-x)
    }
}

pub fn ai(x: f64) -> f64 {
    airy(x).0
}

fn maclaurin(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    // f = sum a_k x^{3k}, g = sum b_k x^{3k+1}
    let (mut f, mut g, mut fp, mut gp) = (1.0, x, 0.0, 1.0);
    let (mut a, mut b) = (1.0, 1.0);
    let mut xp = 1.0; // x^{3k}
    for k in 1..200 {
        let kf = k as f64;
        a /= (3.0 * kf - 1.0) * (3.0 * kf);
        b /= (3.0 * kf) * (3.0 * kf + 1.0);
        xp *= x3;
        let tf = a * xp;
        let tg = b * xp * x;
        f += tf;
        g += tg;
        fp += a * 3.0 * kf * xp / x;
        gp += b * (3.0 * kf + 1.0) * xp;
        if tf.abs() < 1e-18 * f.abs() && tg.abs() < 1e-18 * g.abs().max(1e-300) {
            break;
        }
    }
    if x == 0.0 {
        fp = 0.0;
    }
    (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp)
}

// Ai(x) = e^{-zeta}/pi * int_0^inf exp(-sqrt(x) t^2) cos(t^3/3) dt, x > 0.
fn laplace(x: f64) -> (f64, f64) {
    let s = x.sqrt();
    let zeta = 2.0 / 3.0 * x * s;
    let upper = (46.0 / s).sqrt();
    let rule = Composite::new(0.0, upper, 24, 12);
    let (mut i0, mut i2) = (0.0, 0.0);
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = (-s * t * t).exp() * (t * t * t / 3.0).cos() * w;
        i0 += v;
        i2 += v * t * t;
    }
    let e = (-zeta).exp() / PI;
    (e * i0, e * (-s * i0 - i2 / (2.0 * s)))
}

fn u_coeffs(n: usize) -> ([f64; 40], [f64; 40]) {
    let mut u = [0.0; 40];
    let mut v = [0.0; 40];
    u[0] = 1.0;
    v[0] = 1.0;
    for k in 1..n.min(40) {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
        v[k] = -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u[k];
    }
    (u, v)
}

fn asymptotic_pos(x: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    let (u, v) = u_coeffs(40);
    let (mut su, mut sv) = (0.0, 0.0);
    let mut zp = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..40 {
        let tu = u[k] / zp;
        if tu > last {
            break;
        }
        last = tu;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        su += sign * tu;
        sv += sign * v[k] / zp;
        if tu < 1e-17 {
            break;
        }
        zp *= zeta;
    }
    let e = (-zeta).exp() / (2.0 * PI.sqrt());
    let q = x.powf(0.25);
    (e / q * su, -e * q * sv)
}

fn asymptotic_neg(y: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * y.powf(1.5);
    let (u, v) = u_coeffs(40);
    let (mut pe, mut po, mut qe, mut qo) = (0.0, 0.0, 0.0, 0.0);
    let mut zp = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..40 {
        let tu = u[k] / zp;
        if tu > last {
            break;
        }
        last = tu;
        // (-1)^{floor(k/2)}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pe += sign * tu;
            qe += sign * v[k] / zp;
        } else {
            po += sign * tu;
            qo += sign * v[k] / zp;
        }
        if tu < 1e-17 {
            break;
        }
        zp *= zeta;
    }
    let ph = zeta - PI / 4.0;
    let (sn, cs) = ph.sin_cos();
    let q = y.powf(0.25);
    let c = 1.0 / PI.sqrt();
    (c / q * (cs * pe + sn * po), c * q * (sn * qe - cs * qo))
}

/// ∫_x^∞ Ai(s) ds for x >= 0.
pub fn ai_tail_integral(x: f64) -> f64 {
    let len = 46.0 / x.max(1.0).sqrt();
    let rule = Composite::new(x, x + len, 16, 12);
    rule.integrate(ai)
}

/// ∫_x^∞ Ai(s)^2 ds = Ai'(x)^2 - x Ai(x)^2.
pub fn ai_sq_tail(x: f64) -> f64 {
    let (a, ap) = airy(x);
    ap * ap - x * a * a
}

/// ∫_x^∞ (s - x) Ai(s)^2 ds = (2x²Ai² − 2xAi'² − AiAi')/3.
pub fn ai_sq_moment_tail(x: f64) -> f64 {
    let (a, ap) = airy(x);
    (2.0 * x * x * a * a - 2.0 * x * ap * ap - a * ap) / 3.0
}
