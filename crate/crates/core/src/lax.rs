//! The 2×2 Lax matrix m(−iw; x) of the Painlevé II Riemann–Hilbert problem
//! and the interpolating distributions F^□(x; w), F^◇(x; w).
//!
//! m is obtained column by column. Each column solves a linear 2×2 system
//! (in w at fixed x, or in x at fixed w) and is carried as a unit direction
//! plus a log-scale, so that the exponential factors e^{±(8w³/3 − 2xw)}
//! never need to be formed explicitly. A column whose wanted solution is
//! subdominant in the direction of integration is integrated from the side
//! where it dominates and then normalized against exact data.

use crate::error::{Error, Result};
use crate::ode::{self, Tolerance};
use crate::painleve2::{Ensemble, PiiGrid, PiiPoint};
use alloc::format;
#[allow(unused_imports)]
use num_traits::Float;

/// Largest |w| accepted by [`m_at`].
pub const W_BOX: f64 = 6.0;
/// Below −W_COMPUTE the distributions use the x-route.
pub const W_COMPUTE: f64 = 12.0;
/// Above this w the distributions use the first-order large-w expansion,
/// whose O(w⁻²) error is below 2e-5 there.
pub const W_EXPANSION: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    W,
    X,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaxRouteConfig {
    pub route: Route,
    pub ode_tolerance: f64,
    pub x_start_for_x_route: f64,
}

impl Default for LaxRouteConfig {
    fn default() -> Self {
        LaxRouteConfig { route: Route::W, ode_tolerance: 1e-12, x_start_for_x_route: 8.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaxMatrix {
    pub w: f64,
    pub x: f64,
    pub m: [[f64; 2]; 2],
    /// Max entrywise w-route/x-route difference when both routes ran.
    pub route_discrepancy: Option<f64>,
}

impl LaxMatrix {
    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }
}

/// A vector `dir · e^{log}` with `dir` of unit Euclidean norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Column {
    pub dir: [f64; 2],
    pub log: f64,
}

impl Column {
    fn new(v: [f64; 2]) -> Self {
        let n = v[0].hypot(v[1]);
        Column { dir: [v[0] / n, v[1] / n], log: n.ln() }
    }

    pub fn get(&self, i: usize) -> f64 {
        self.dir[i] * self.log.exp()
    }

    /// Returns `self` scaled by the least-squares factor mapping `at_match` onto `reference`.
    fn matched(&self, at_match: &Column, reference: &Column) -> Self {
        let dot = at_match.dir[0] * reference.dir[0] + at_match.dir[1] * reference.dir[1];
        let sign = dot.signum();
        Column {
            dir: [self.dir[0] * sign, self.dir[1] * sign],
            log: self.log + reference.log - at_match.log + dot.abs().ln(),
        }
    }
}

fn integrate_linear(
    a: impl Fn(f64) -> [[f64; 2]; 2],
    t0: f64,
    y0: Column,
    t1: f64,
    tol: f64,
) -> Result<Column> {
    integrate_linear_scaled(a, t0, y0, t1, tol, 1.0)
}

/// As `integrate_linear`, with absolute tolerance `tol * atol_factor`; a small
/// factor keeps relative accuracy in a decaying component.
fn integrate_linear_scaled(
    a: impl Fn(f64) -> [[f64; 2]; 2],
    t0: f64,
    y0: Column,
    t1: f64,
    tol: f64,
    atol_factor: f64,
) -> Result<Column> {
    let mut log = y0.log;
    let f = |t: f64, y: &[f64; 2]| {
        let m = a(t);
        [m[0][0] * y[0] + m[0][1] * y[1], m[1][0] * y[0] + m[1][1] * y[1]]
    };
    let renorm = |_: f64, y: &mut [f64; 2]| {
        let n = y[0].hypot(y[1]);
        if !(0.5..=2.0).contains(&n) {
            y[0] /= n;
            y[1] /= n;
            log += n.ln();
        }
    };
    let y = ode::integrate(f, t0, y0.dir, t1, Tolerance { rtol: tol, atol: tol * atol_factor }, renorm)?;
    let mut c = Column::new(y);
    c.log += log;
    Ok(c)
}

// w-ODE coefficient matrices at fixed x.
// (a, c): first column; (b, d): second column; (â, ĉ) = e^{g}(a, −c), g = 8w³/3 − 2xw.
fn w_mat_col1(x: f64, u: f64, du: f64, w: f64) -> [[f64; 2]; 2] {
    [[-2.0 * u * u, -4.0 * w * u + 2.0 * du], [-4.0 * w * u - 2.0 * du, -8.0 * w * w + 2.0 * x + 2.0 * u * u]]
}

fn w_mat_col2(x: f64, u: f64, du: f64, w: f64) -> [[f64; 2]; 2] {
    [[8.0 * w * w - 2.0 * x - 2.0 * u * u, -4.0 * w * u + 2.0 * du], [-4.0 * w * u - 2.0 * du, 2.0 * u * u]]
}

fn w_mat_col1_scaled(x: f64, u: f64, du: f64, w: f64) -> [[f64; 2]; 2] {
    [[8.0 * w * w - 2.0 * x - 2.0 * u * u, 4.0 * w * u - 2.0 * du], [4.0 * w * u + 2.0 * du, 2.0 * u * u]]
}

/// g(w, x) = 8w³/3 − 2xw.
pub fn growth_exponent(w: f64, x: f64) -> f64 {
    8.0 * w * w * w / 3.0 - 2.0 * x * w
}

/// The column feeding the distributions: (b, d) for w > 0, (â, ĉ) for w < 0.
fn w_route_main(p: &PiiPoint, x: f64, w: f64, tol: f64) -> Result<Column> {
    let (u, du, v) = (p.u, p.du, p.v);
    let e2 = (2.0 * p.log_e).exp();
    let sigma = w.signum();
    let mat = |t: f64| {
        if sigma > 0.0 {
            w_mat_col2(x, u, du, t)
        } else {
            w_mat_col1_scaled(x, u, du, t)
        }
    };
    let exact0 = Column::new(if sigma > 0.0 { [-e2, e2] } else { [e2, e2] });
    let w1 = if x > 0.0 { sigma * x.sqrt() / 2.0 } else { 0.0 };
    if w.abs() <= w1.abs() {
        return integrate_linear(mat, 0.0, exact0, w, tol);
    }
    let at_w1 = integrate_linear(mat, 0.0, exact0, w1, tol)?;
    let far = sigma * (w.abs() + 3.0);
    let start = Column::new(if sigma > 0.0 {
        [u / (2.0 * far), 1.0 + v / (2.0 * far)]
    } else {
        [1.0 - v / (2.0 * far), u / (2.0 * far)]
    });
    let at_w = integrate_linear(mat, far, start, w, tol)?;
    let back = integrate_linear(mat, w, at_w, w1, tol)?;
    Ok(at_w.matched(&back, &at_w1))
}

/// The other column: (a, c) for w > 0, (b, d) for w < 0, integrated from w = 0.
fn w_route_other(p: &PiiPoint, x: f64, w: f64, tol: f64) -> Result<Column> {
    let (u, du) = (p.u, p.du);
    let e2 = (2.0 * p.log_e).exp();
    let inv = 1.0 / e2;
    if w > 0.0 {
        let start = Column::new([0.5 * (e2 + inv), 0.5 * (inv - e2)]);
        integrate_linear(|t| w_mat_col1(x, u, du, t), 0.0, start, w, tol)
    } else {
        let start = Column::new([0.5 * (inv - e2), 0.5 * (e2 + inv)]);
        integrate_linear(|t| w_mat_col2(x, u, du, t), 0.0, start, w, tol)
    }
}

fn x_mat_col1(w: f64, u: f64) -> [[f64; 2]; 2] {
    [[0.0, u], [u, 2.0 * w]]
}

fn x_mat_col2(w: f64, u: f64) -> [[f64; 2]; 2] {
    [[-2.0 * w, u], [u, 0.0]]
}

fn x_route_limits(grid: &PiiGrid, x: f64, w: f64, cfg: &LaxRouteConfig) -> (f64, f64) {
    let xs = cfg.x_start_for_x_route.max(4.0 * w * w + 12.0).max(x + 1.0);
    let xl = x.min(grid.x_left()) - 6.0;
    (xl, xs)
}

/// x-route columns (a, c) and (b, d), unscaled.
fn x_route_columns(grid: &PiiGrid, x: f64, w: f64, cfg: &LaxRouteConfig) -> Result<(Column, Column)> {
    let tol = cfg.ode_tolerance;
    let (xl, xs) = x_route_limits(grid, x, w, cfg);
    if w > 0.0 {
        let c1 = integrate_linear(|t| x_mat_col1(w, grid.u(t)), xs, Column::new([1.0, 0.0]), x, tol)?;
        let up = integrate_linear(|t| x_mat_col2(w, grid.u(t)), xl, Column::new([-1.0, 1.0]), x, tol)?;
        let end = integrate_linear(|t| x_mat_col2(w, grid.u(t)), x, up, xs, tol)?;
        let c2 = rescale_by(&up, &end, 1);
        Ok((c1, c2))
    } else {
        let c2 = integrate_linear(|t| x_mat_col2(w, grid.u(t)), xs, Column::new([0.0, 1.0]), x, tol)?;
        let up = integrate_linear_scaled(|t| x_mat_col1(w, grid.u(t)), xl, Column::new([1.0, -1.0]), x, tol, 1e-30)?;
        let end = integrate_linear(|t| x_mat_col1(w, grid.u(t)), x, up, xs, tol)?;
        let c1 = rescale_by(&up, &end, 0);
        Ok((c1, c2))
    }
}

/// Scales `col` by the factor that makes component `i` of `end` equal 1.
fn rescale_by(col: &Column, end: &Column, i: usize) -> Column {
    let sign = end.dir[i].signum();
    Column { dir: [col.dir[0] * sign, col.dir[1] * sign], log: col.log - end.log - end.dir[i].abs().ln() }
}

fn closed_form(p: &PiiPoint, w: f64) -> [[f64; 2]; 2] {
    let e2 = (2.0 * p.log_e).exp();
    let inv = 1.0 / e2;
    let c = [[0.5 * (e2 + inv), -e2], [0.5 * (inv - e2), e2]];
    if w >= 0.0 {
        c
    } else {
        [[c[1][1], c[1][0]], [c[0][1], c[0][0]]]
    }
}

fn assemble(c1: &Column, c2: &Column) -> [[f64; 2]; 2] {
    [[c1.get(0), c2.get(0)], [c1.get(1), c2.get(1)]]
}

fn w_route_matrix(p: &PiiPoint, x: f64, w: f64, tol: f64) -> Result<[[f64; 2]; 2]> {
    if w == 0.0 {
        return Ok(closed_form(p, w));
    }
    let main = w_route_main(p, x, w, tol)?;
    let other = w_route_other(p, x, w, tol)?;
    Ok(if w > 0.0 {
        assemble(&other, &main)
    } else {
        // (a, c) = e^{−g}(â, −ĉ)
        let g = growth_exponent(w, x);
        let c1 = Column { dir: [main.dir[0], -main.dir[1]], log: main.log - g };
        assemble(&c1, &other)
    })
}

fn x_route_matrix(grid: &PiiGrid, x: f64, w: f64, cfg: &LaxRouteConfig) -> Result<[[f64; 2]; 2]> {
    if w == 0.0 {
        return Ok(closed_form(&grid.at(x), w));
    }
    let (c1, c2) = x_route_columns(grid, x, w, cfg)?;
    Ok(assemble(&c1, &c2))
}

fn check_box(grid: &PiiGrid, x: f64, w: f64) -> Result<()> {
    if !(w.abs() <= W_BOX) || !(x >= grid.x_left() + 1.0 && x <= grid.x_right()) {
        return Err(Error::OutOfDomain(format!(
            "(w={w}, x={x}) outside |w| <= {W_BOX}, x in [{}, {}]",
            grid.x_left() + 1.0,
            grid.x_right()
        )));
    }
    Ok(())
}

/// m(−iw; x) by the configured route.
pub fn m_at(grid: &PiiGrid, w: f64, x: f64, cfg: &LaxRouteConfig) -> Result<LaxMatrix> {
    check_box(grid, x, w)?;
    let finite = |m: [[f64; 2]; 2]| {
        if m.iter().flatten().all(|e| e.is_finite()) {
            Ok(m)
        } else {
            Err(Error::OutOfDomain(format!("entries overflow at (w={w}, x={x})")))
        }
    };
    let (m, disc) = match cfg.route {
        Route::W => (finite(w_route_matrix(&grid.at(x), x, w, cfg.ode_tolerance)?)?, None),
        Route::X => (finite(x_route_matrix(grid, x, w, cfg)?)?, None),
        Route::Both => {
            let a = finite(w_route_matrix(&grid.at(x), x, w, cfg.ode_tolerance)?)?;
            let b = finite(x_route_matrix(grid, x, w, cfg)?)?;
            let d = (0..4).map(|k| (a[k / 2][k % 2] - b[k / 2][k % 2]).abs()).fold(0.0, f64::max);
            (a, Some(d))
        }
    };
    Ok(LaxMatrix { w, x, m, route_discrepancy: disc })
}

/// Scaled distribution data: for w > 0 the column (b, d) = (m12, m22); for
/// w < 0 the column (e^{g}m11, −e^{g}m21).
fn main_column(grid: &PiiGrid, x: f64, w: f64, route: Route, cfg: &LaxRouteConfig) -> Result<Column> {
    match route {
        Route::X => {
            let (c1, c2) = x_route_columns(grid, x, w, cfg)?;
            Ok(if w > 0.0 {
                c2
            } else {
                Column { dir: [c1.dir[0], -c1.dir[1]], log: c1.log + growth_exponent(w, x) }
            })
        }
        _ => w_route_main(&grid.at(x), x, w, cfg.ode_tolerance),
    }
}

#[derive(Clone, Copy)]
enum Family {
    Square,
    Diamond,
}

fn interp(grid: &PiiGrid, x: f64, w: f64, family: Family, cfg: &LaxRouteConfig) -> Result<f64> {
    let p = grid.at(x);
    if w == 0.0 {
        let f1 = grid.eval_tw(x, Ensemble::Goe);
        return Ok(match family {
            Family::Square => f1,
            Family::Diamond => f1 * f1,
        });
    }
    if x < grid.x_left() + 1.0 {
        // F^□ ≤ F₄ and F^◇ ≤ F₂ there, both below 1e-9.
        return Ok(0.0);
    }
    if w > W_EXPANSION {
        // m ≈ I + m₁/(−iw): m22 ≈ 1 + v/(2w), m12 ≈ u/(2w)
        return Ok(combine(&p, w, family, [p.u / (2.0 * w), 1.0 + p.v / (2.0 * w)], 0.0));
    }
    let route = if x > grid.x_right() || w < -W_COMPUTE { Route::X } else { cfg.route };
    let col = main_column(grid, x, w, route, cfg)?;
    Ok(combine(&p, w, family, col.dir, col.log))
}

fn combine(p: &PiiPoint, w: f64, family: Family, dir: [f64; 2], log: f64) -> f64 {
    let (le, lf) = (p.log_e, p.log_f);
    // E^{-1} + E and E^{-1} - E without cancellation
    let sum = 2.0 * le.cosh();
    let diff = -2.0 * le.sinh();
    let val = match (family, w > 0.0) {
        (Family::Square, true) => (lf + log).exp() * (dir[1] * sum - dir[0] * diff) / 2.0,
        (Family::Square, false) => (lf + log).exp() * (dir[0] * diff + dir[1] * sum) / 2.0,
        (Family::Diamond, true) => (2.0 * lf + log).exp() * dir[1],
        (Family::Diamond, false) => (2.0 * lf + log).exp() * dir[1],
    };
    if val.is_nan() {
        0.0
    } else {
        val.clamp(0.0, 1.0)
    }
}

/// F^□(x; w): interpolates F₄ (w → +∞), F₁ (w = 0) and 0 (w → −∞).
pub fn f_square(grid: &PiiGrid, x: f64, w: f64) -> Result<f64> {
    interp(grid, x, w, Family::Square, &LaxRouteConfig::default())
}

/// F^◇(x; w): interpolates F₂ (w → +∞), F₁² (w = 0) and 0 (w → −∞).
pub fn f_diamond(grid: &PiiGrid, x: f64, w: f64) -> Result<f64> {
    interp(grid, x, w, Family::Diamond, &LaxRouteConfig::default())
}

pub fn f_square_with(grid: &PiiGrid, x: f64, w: f64, cfg: &LaxRouteConfig) -> Result<f64> {
    interp(grid, x, w, Family::Square, cfg)
}

pub fn f_diamond_with(grid: &PiiGrid, x: f64, w: f64, cfg: &LaxRouteConfig) -> Result<f64> {
    interp(grid, x, w, Family::Diamond, cfg)
}
