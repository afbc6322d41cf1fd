//! Hastings–McLeod solution of Painlevé II and the Tracy–Widom laws.
//!
//! u'' = 2u³ + xu with u ~ −Ai(x) at +∞ and u ~ −√(−x/2) at −∞, solved on a
//! uniform grid by damped Newton on the fourth-order Numerov scheme.

use crate::airy;
use crate::error::{Error, Result};
use crate::quad::Composite;
use alloc::format;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BvpConfig {
    pub x_left: f64,
    pub x_right: f64,
    pub node_count: usize,
    pub newton_tolerance: f64,
    pub max_newton_iters: usize,
}

impl Default for BvpConfig {
    fn default() -> Self {
        BvpConfig {
            x_left: -10.0,
            x_right: 8.0,
            node_count: 2001,
            newton_tolerance: 1e-10,
            max_newton_iters: 60,
        }
    }
}

impl BvpConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_left < -5.0 && self.x_right > 5.0) {
            return Err(Error::InvalidConfig(format!(
                "interval [{}, {}] must contain [-5, 5]",
                self.x_left, self.x_right
            )));
        }
        if self.node_count < 100 {
            return Err(Error::InvalidConfig(format!("node_count {} < 100", self.node_count)));
        }
        if !(self.newton_tolerance > 0.0) || self.max_newton_iters == 0 {
            return Err(Error::InvalidConfig("tolerance and iteration cap must be positive".into()));
        }
        Ok(())
    }
}

/// Tracy–Widom ensemble index β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ensemble {
    Goe = 1,
    Gue = 2,
    Gse = 4,
}

impl Ensemble {
    pub fn from_beta(beta: u32) -> Result<Self> {
        match beta {
            1 => Ok(Ensemble::Goe),
            2 => Ok(Ensemble::Gue),
            4 => Ok(Ensemble::Gse),
            _ => Err(Error::InvalidArgument(format!("ensemble must be 1, 2 or 4, got {beta}"))),
        }
    }
}

/// Tabulated Hastings–McLeod solution with tail extensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PiiGrid {
    pub x_nodes: Vec<f64>,
    pub u_vals: Vec<f64>,
    pub du_vals: Vec<f64>,
    pub v_vals: Vec<f64>,
    pub log_e_vals: Vec<f64>,
    pub log_f_vals: Vec<f64>,
    pub tolerance: f64,
    h: f64,
}

fn rhs(x: f64, u: f64) -> f64 {
    2.0 * u * u * u + x * u
}

fn left_asymptote(x: f64) -> (f64, f64) {
    // u = -sqrt(-x/2) (1 + 1/(8x^3)), and its derivative
    let s = (-x / 2.0).sqrt();
    let c = 1.0 + 1.0 / (8.0 * x * x * x);
    let ds = -1.0 / (4.0 * s);
    let dc = -3.0 / (8.0 * x * x * x * x);
    (-s * c, -(ds * c + s * dc))
}

// Numerov residual scaled by 1/h^2 at interior node i.
fn numerov_residual(x: &[f64], u: &[f64], h: f64, i: usize) -> f64 {
    let f = |j: usize| rhs(x[j], u[j]);
    (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h) - (f(i - 1) + 10.0 * f(i) + f(i + 1)) / 12.0
}

fn max_residual(x: &[f64], u: &[f64], h: f64) -> f64 {
    (1..x.len() - 1).map(|i| numerov_residual(x, u, h, i).abs()).fold(0.0, f64::max)
}

/// Solves the Hastings–McLeod boundary value problem.
pub fn solve_hastings_mcleod(cfg: &BvpConfig) -> Result<PiiGrid> {
    cfg.validate()?;
    let n = cfg.node_count;
    let h = (cfg.x_right - cfg.x_left) / (n - 1) as f64;
    let x: Vec<f64> = (0..n).map(|i| cfg.x_left + i as f64 * h).collect();
    let u_right = -airy::ai(cfg.x_right);
    let u_left = left_asymptote(cfg.x_left).0;
    let mut u: Vec<f64> = x
        .iter()
        .map(|&xi| u_left + (u_right - u_left) * (xi - cfg.x_left) / (cfg.x_right - cfg.x_left))
        .collect();

    let m = n - 2;
    let h12 = h * h / 12.0;
    let mut sub = alloc::vec![0.0; m];
    let mut diag = alloc::vec![0.0; m];
    let mut sup = alloc::vec![0.0; m];
    let mut res = alloc::vec![0.0; m];
    let mut converged = false;
    for _ in 0..cfg.max_newton_iters {
        for k in 0..m {
            let i = k + 1;
            res[k] = numerov_residual(&x, &u, h, i) * h * h;
            let fp = |j: usize| 6.0 * u[j] * u[j] + x[j];
            sub[k] = 1.0 - h12 * fp(i - 1);
            diag[k] = -2.0 - 10.0 * h12 * fp(i);
            sup[k] = 1.0 - h12 * fp(i + 1);
        }
        let r0 = res.iter().fold(0.0f64, |a, &b| a.max(b.abs())) / (h * h);
        if r0 <= 0.05 * cfg.newton_tolerance {
            converged = true;
            break;
        }
        let delta = thomas(&sub, &diag, &sup, &res);
        // damped step: accept the largest of 1, 1/2, ... that reduces the residual
        let mut lambda = 1.0;
        loop {
            let mut trial = u.clone();
            for k in 0..m {
                trial[k + 1] -= lambda * delta[k];
            }
            let r1 = max_residual(&x, &trial, h);
            if r1 < r0 || lambda < 1e-4 {
                u = trial;
                break;
            }
            lambda *= 0.5;
        }
        let step = delta.iter().fold(0.0f64, |a, &b| a.max(b.abs())) * lambda;
        if step < 1e-15 {
            converged = max_residual(&x, &u, h) <= cfg.newton_tolerance;
            break;
        }
    }
    if !converged {
        let r = max_residual(&x, &u, h);
        if r > cfg.newton_tolerance {
            return Err(Error::NonConvergence(format!(
                "residual {r:e} after {} iterations",
                cfg.max_newton_iters
            )));
        }
    }
    Ok(assemble(x, u, h, cfg.newton_tolerance))
}

fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let m = diag.len();
    let mut c = alloc::vec![0.0; m];
    let mut d = alloc::vec![0.0; m];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..m {
        let den = diag[i] - sub[i] * c[i - 1];
        c[i] = sup[i] / den;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / den;
    }
    for i in (0..m - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    d
}

fn assemble(x: Vec<f64>, u: Vec<f64>, h: f64, tolerance: f64) -> PiiGrid {
    let n = x.len();
    let f: Vec<f64> = (0..n).map(|i| rhs(x[i], u[i])).collect();
    let mut du = alloc::vec![0.0; n];
    for i in 1..n - 1 {
        du[i] = (u[i + 1] - u[i - 1]) / (2.0 * h) - h * (f[i + 1] - f[i - 1]) / 12.0;
    }
    du[0] = (u[1] - u[0]) / h - h * (2.0 * f[0] + f[1]) / 6.0 + h * (f[2] - 2.0 * f[1] + f[0]) / 24.0;
    du[n - 1] = (u[n - 1] - u[n - 2]) / h + h * (2.0 * f[n - 1] + f[n - 2]) / 6.0
        - h * (f[n - 1] - 2.0 * f[n - 2] + f[n - 3]) / 24.0;

    let xr = x[n - 1];
    let mut v = alloc::vec![0.0; n];
    let mut log_e = alloc::vec![0.0; n];
    let mut log_f = alloc::vec![0.0; n];
    v[n - 1] = -airy::ai_sq_tail(xr);
    log_e[n - 1] = -0.5 * airy::ai_tail_integral(xr);
    log_f[n - 1] = -0.5 * airy::ai_sq_moment_tail(xr);
    let (gx, gw) = crate::quad::gauss_legendre(4);
    for i in (0..n - 1).rev() {
        // ∫ u² over [x_i, x_{i+1}] with the quintic Hermite interpolant of u
        let mut int_u2 = 0.0;
        for (t, w) in gx.iter().zip(&gw) {
            let s = 0.5 * (t + 1.0);
            let ui = hermite5(s, h, [u[i], du[i], f[i]], [u[i + 1], du[i + 1], f[i + 1]]).0;
            int_u2 += 0.5 * w * h * ui * ui;
        }
        v[i] = v[i + 1] - int_u2;
        // exact integral of the cubic Hermite interpolant, corrected with u''
        let int_u = h * (u[i] + u[i + 1]) / 2.0 + h * h * (du[i] - du[i + 1]) / 10.0
            + h * h * h * (f[i] + f[i + 1]) / 120.0;
        log_e[i] = log_e[i + 1] + 0.5 * int_u;
        let dv = |j: usize| u[j] * u[j];
        let ddv = |j: usize| 2.0 * u[j] * du[j];
        let int_v = h * (v[i] + v[i + 1]) / 2.0 + h * h * (dv(i) - dv(i + 1)) / 10.0
            + h * h * h * (ddv(i) + ddv(i + 1)) / 120.0;
        log_f[i] = log_f[i + 1] + 0.5 * int_v;
    }
    PiiGrid { x_nodes: x, u_vals: u, du_vals: du, v_vals: v, log_e_vals: log_e, log_f_vals: log_f, tolerance, h }
}

/// Quintic Hermite interpolant on [0, h] at s ∈ [0, 1] from (p, p', p'') at
/// both ends. Returns (value, derivative).
fn hermite5(s: f64, h: f64, a: [f64; 3], b: [f64; 3]) -> (f64, f64) {
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    let s5 = s4 * s;
    let h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    let h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    let h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
    let h3 = 0.5 * s3 - s4 + 0.5 * s5;
    let h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
    let h5 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    let d0 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
    let d1 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
    let d2 = s - 4.5 * s2 + 6.0 * s3 - 2.5 * s4;
    let d3 = 1.5 * s2 - 4.0 * s3 + 2.5 * s4;
    let d4 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
    let d5 = 30.0 * s2 - 60.0 * s3 + 30.0 * s4;
    let val = a[0] * h0 + h * a[1] * h1 + h * h * a[2] * h2 + h * h * b[2] * h3 + h * b[1] * h4 + b[0] * h5;
    let der = (a[0] * d0 + b[0] * d5) / h + a[1] * d1 + b[1] * d4 + h * (a[2] * d2 + b[2] * d3);
    (val, der)
}

/// Point values of the solution and its integrals at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiiPoint {
    pub u: f64,
    pub du: f64,
    pub v: f64,
    pub log_e: f64,
    pub log_f: f64,
}

impl PiiGrid {
    /// Rebuilds a grid from tabulated columns (e.g. an imported CSV).
    pub fn from_columns(
        x_nodes: Vec<f64>,
        u_vals: Vec<f64>,
        du_vals: Vec<f64>,
        v_vals: Vec<f64>,
        log_e_vals: Vec<f64>,
        log_f_vals: Vec<f64>,
        tolerance: f64,
    ) -> Result<Self> {
        let n = x_nodes.len();
        if n < 4 || [&u_vals, &du_vals, &v_vals, &log_e_vals, &log_f_vals].iter().any(|c| c.len() != n) {
            return Err(Error::InvalidConfig("ragged or too short grid columns".into()));
        }
        let h = (x_nodes[n - 1] - x_nodes[0]) / (n - 1) as f64;
        for (i, &xi) in x_nodes.iter().enumerate() {
            if (xi - (x_nodes[0] + i as f64 * h)).abs() > 1e-9 * h {
                return Err(Error::InvalidConfig(format!("grid not uniform at node {i}")));
            }
        }
        Ok(PiiGrid { x_nodes, u_vals, du_vals, v_vals, log_e_vals, log_f_vals, tolerance, h })
    }

    pub fn x_left(&self) -> f64 {
        self.x_nodes[0]
    }

    pub fn x_right(&self) -> f64 {
        self.x_nodes[self.x_nodes.len() - 1]
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    /// Max Numerov residual |δ²u/h² − (f₋ + 10f + f₊)/12| over interior nodes.
    pub fn residual(&self) -> f64 {
        max_residual(&self.x_nodes, &self.u_vals, self.h)
    }

    pub fn at(&self, x: f64) -> PiiPoint {
        let (xl, xr) = (self.x_left(), self.x_right());
        if x > xr {
            let (a, ap) = airy::airy(x);
            return PiiPoint {
                u: -a,
                du: -ap,
                v: -airy::ai_sq_tail(x),
                log_e: -0.5 * airy::ai_tail_integral(x),
                log_f: -0.5 * airy::ai_sq_moment_tail(x),
            };
        }
        if x < xl {
            let (u, du) = left_asymptote(x);
            let vl = self.v_vals[0];
            let v = vl - (x * x - xl * xl) / 4.0;
            let log_e = self.log_e_vals[0]
                - 0.5 * (2.0f64.sqrt() / 3.0) * ((-x).powf(1.5) - (-xl).powf(1.5));
            let int_v = (vl + xl * xl / 4.0) * (xl - x) - (xl * xl * xl - x * x * x) / 12.0;
            let log_f = self.log_f_vals[0] + 0.5 * int_v;
            return PiiPoint { u, du, v, log_e, log_f };
        }
        let n = self.x_nodes.len();
        let i = (((x - xl) / self.h).floor() as usize).min(n - 2);
        let s = (x - self.x_nodes[i]) / self.h;
        let (u, du, v, le, lf) = (&self.u_vals, &self.du_vals, &self.v_vals, &self.log_e_vals, &self.log_f_vals);
        let f = |j: usize| rhs(self.x_nodes[j], u[j]);
        let (uu, duu) = hermite5(s, self.h, [u[i], du[i], f(i)], [u[i + 1], du[i + 1], f(i + 1)]);
        let vv = hermite5(
            s,
            self.h,
            [v[i], u[i] * u[i], 2.0 * u[i] * du[i]],
            [v[i + 1], u[i + 1] * u[i + 1], 2.0 * u[i + 1] * du[i + 1]],
        )
        .0;
        let ee = hermite5(
            s,
            self.h,
            [le[i], -0.5 * u[i], -0.5 * du[i]],
            [le[i + 1], -0.5 * u[i + 1], -0.5 * du[i + 1]],
        )
        .0;
        let ff = hermite5(
            s,
            self.h,
            [lf[i], -0.5 * v[i], -0.5 * u[i] * u[i]],
            [lf[i + 1], -0.5 * v[i + 1], -0.5 * u[i + 1] * u[i + 1]],
        )
        .0;
        PiiPoint { u: uu, du: duu, v: vv, log_e: ee, log_f: ff }
    }

    pub fn u(&self, x: f64) -> f64 {
        let (xl, xr) = (self.x_left(), self.x_right());
        if x > xr {
            return -airy::ai(x);
        }
        if x < xl {
            return left_asymptote(x).0;
        }
        let n = self.x_nodes.len();
        let i = (((x - xl) / self.h).floor() as usize).min(n - 2);
        let s = (x - self.x_nodes[i]) / self.h;
        let (u, du) = (&self.u_vals, &self.du_vals);
        let f = |j: usize| rhs(self.x_nodes[j], u[j]);
        hermite5(s, self.h, [u[i], du[i], f(i)], [u[i + 1], du[i + 1], f(i + 1)]).0
    }

    /// F_β(x), clamped to [0, 1].
    pub fn eval_tw(&self, x: f64, ensemble: Ensemble) -> f64 {
        let p = self.at(x);
        let val = match ensemble {
            Ensemble::Gue => (2.0 * p.log_f).exp(),
            Ensemble::Goe => (p.log_f + p.log_e).exp(),
            Ensemble::Gse => 0.5 * ((p.log_f + p.log_e).exp() + (p.log_f - p.log_e).exp()),
        };
        val.clamp(0.0, 1.0)
    }

    /// Density dF_β/dx from the analytic derivatives of log F and log E.
    pub fn tw_density(&self, x: f64, ensemble: Ensemble) -> f64 {
        let p = self.at(x);
        match ensemble {
            Ensemble::Gue => (2.0 * p.log_f).exp() * (-p.v),
            Ensemble::Goe => (p.log_f + p.log_e).exp() * (-0.5 * p.v - 0.5 * p.u),
            Ensemble::Gse => {
                0.5 * ((p.log_f + p.log_e).exp() * (-0.5 * p.v - 0.5 * p.u)
                    + (p.log_f - p.log_e).exp() * (-0.5 * p.v + 0.5 * p.u))
            }
        }
    }

    /// ∫ x^p dF_β(x), p ≤ 6.
    pub fn tw_moment(&self, ensemble: Ensemble, p: u32) -> Result<f64> {
        if p > 6 {
            return Err(Error::InvalidArgument(format!("moment order {p} > 6")));
        }
        let rule = Composite::new(-16.0, 12.0, 280, 8);
        Ok(rule.integrate(|x| x.powi(p as i32) * self.tw_density(x, ensemble)))
    }

    /// Mean and variance of F_β.
    pub fn tw_mean_var(&self, ensemble: Ensemble) -> (f64, f64) {
        let rule = Composite::new(-16.0, 12.0, 280, 8);
        let (mut m0, mut m1, mut m2) = (0.0, 0.0, 0.0);
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let d = w * self.tw_density(x, ensemble);
            m0 += d;
            m1 += d * x;
            m2 += d * x * x;
        }
        let mean = m1 / m0;
        (mean, m2 / m0 - mean * mean)
    }
}
