//! De-Poissonization: bracket a fixed-size probability q_n between values of
//! its Poisson generating function φ(λ) = Σ e^{-λ} λⁿ/n! q_n at shifted
//! parameters.
//!
//! The additive C·n^{-d} slack of the underlying lemmas has no explicit
//! constant, so brackets default to zero slack and say so in `slack_note`.

use alloc::format;
use alloc::string::String;

#[allow(unused_imports)]
use num_traits::Float;

use crate::circle::{poisson_pmf, q_two, Family};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub lower: f64,
    pub upper: f64,
    pub slack_note: String,
}

/// (2√(d+1)+1)·√(n log n).
pub fn correction(n: usize, d: f64) -> f64 {
    let n = n as f64;
    (2.0 * (d + 1.0).sqrt() + 1.0) * (n * n.ln()).sqrt()
}

/// Shifted Poisson parameters μ = n + c, ν = n − c. Requires n ≥ 2 and d > 0.
pub fn mu_nu(n: usize, d: f64) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("mu_nu needs n >= 2, got {n}")));
    }
    check_d(d)?;
    let c = correction(n, d);
    Ok((n as f64 + c, n as f64 - c))
}

fn check_d(d: f64) -> Result<()> {
    if d.is_finite() && d > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("d must be positive, got {d}")))
    }
}

/// Evaluation points actually fed to φ. Below n = 2 the correction is taken at
/// n = 2 (the bracket only widens), and ν is clamped to the domain λ ≥ 0.
pub fn evaluation_points(n: usize, d: f64) -> Result<(f64, f64)> {
    check_d(d)?;
    let c = correction(n.max(2), d);
    Ok((n as f64 + c, (n as f64 - c).max(0.0)))
}

/// How the additive error term of the bracketing inequalities is handled.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Slack {
    /// Omit it; the bracket can then miss q_n by up to that term.
    None,
    /// C·n^{-d} per index with a caller-supplied C.
    Constant(f64),
    /// The Poisson tail mass the C·n^{-d} term stands for: P(N_μ < n) below
    /// and P(N_ν > n) above. Rigorous for monotone q.
    PoissonTail,
}

impl Slack {
    fn note(self, terms: &str) -> String {
        match self {
            Slack::None => format!("slack omitted: the additive C*({terms}) term has an unspecified constant C"),
            Slack::Constant(c) => format!("slack C*({terms}) included with user-supplied C = {c}"),
            Slack::PoissonTail => "slack set to the exact Poisson tail masses P(N_mu < n) and P(N_nu > n)".into(),
        }
    }

    fn amounts(self, n: usize, d: f64, mu: f64, nu: f64) -> (f64, f64) {
        match self {
            Slack::None => (0.0, 0.0),
            Slack::Constant(c) => {
                let s = c * (n.max(1) as f64).powf(-d);
                (s, s)
            }
            Slack::PoissonTail => (poisson_below(mu, n), 1.0 - poisson_below(nu, n + 1)),
        }
    }
}

/// P(N < n) for N ~ Poisson(λ).
fn poisson_below(lambda: f64, n: usize) -> f64 {
    (0..n).map(|k| poisson_pmf(lambda, k)).sum::<f64>().min(1.0)
}

fn finish(lower: f64, upper: f64, slack: (f64, f64), note: String) -> Result<Bracket> {
    if !(lower.is_finite() && upper.is_finite()) {
        return Err(Error::NonConvergence("generating function returned a non-finite value".into()));
    }
    let lower = (lower - slack.0).clamp(0.0, 1.0);
    let upper = (upper + slack.1).clamp(0.0, 1.0);
    if lower > upper + 1e-9 {
        return Err(Error::InvalidArgument(format!("phi is not monotone: lower {lower} exceeds upper {upper}")));
    }
    Ok(Bracket { lower: lower.min(upper), upper, slack_note: note })
}

/// Bracket for q_n from a φ that is non-increasing in λ, as is the case
/// for q_n non-increasing in n.
pub fn bracket_one<F>(mut phi: F, n: usize, d: f64, slack: Slack) -> Result<Bracket>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mu, nu) = evaluation_points(n, d)?;
    let lower = phi(mu)?;
    let upper = phi(nu)?;
    finish(lower, upper, slack.amounts(n, d, mu, nu), slack.note("n^-d"))
}

/// Two-index analogue: φ₂(λ₁, λ₂) evaluated at (μ_{n₁}, μ_{n₂}) and
/// (ν_{n₁}, ν_{n₂}).
pub fn bracket_two<F>(mut phi2: F, n1: usize, n2: usize, d: f64, slack: Slack) -> Result<Bracket>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    let (mu1, nu1) = evaluation_points(n1, d)?;
    let (mu2, nu2) = evaluation_points(n2, d)?;
    let lower = phi2(mu1, mu2)?;
    let upper = phi2(nu1, nu2)?;
    let a = slack.amounts(n1, d, mu1, nu1);
    let b = slack.amounts(n2, d, mu2, nu2);
    finish(lower, upper, (a.0 + b.0, a.1 + b.1), slack.note("n1^-d + n2^-d"))
}

/// Bracket for P(L ≤ l) over involutions with `m` fixed points and `n`
/// two-cycles, using the generating function Q_l(λ₁, λ₂) where λ₁ counts
/// fixed points and λ₂ counts two-cycles.
pub fn bracket_involution(family: Family, l: usize, n: usize, m: usize, d: f64, slack: Slack) -> Result<Bracket> {
    bracket_two(|l1, l2| q_two(family, l, l1, l2), m, n, d, slack)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pinned_correction() {
        let c = correction(10000, 1.0);
        let direct = (2.0 * 2f64.sqrt() + 1.0) * (10000.0 * 10000f64.ln()).sqrt();
        assert_eq!(c, direct);
        assert!((c - 1161.871_836_392_768).abs() < 1e-9, "{c}");
    }

    #[test]
    fn symmetric_shift() {
        let (mu, nu) = mu_nu(50, 2.0).unwrap();
        assert_eq!(mu - 50.0, 50.0 - nu);
        assert!(mu_nu(1, 2.0).is_err());
        assert!(mu_nu(5, 0.0).is_err());
    }

    #[test]
    fn constant_phi() {
        let b = bracket_one(|_| Ok(1.0), 40, 1.0, Slack::None).unwrap();
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
        assert!(b.slack_note.contains("unspecified"));
        let b = bracket_two(|_, _| Ok(1.0), 3, 7, 2.0, Slack::None).unwrap();
        assert_eq!((b.lower, b.upper), (1.0, 1.0));
        // the constant slack widens the lower end by C·(3⁻² + 7⁻²)
        let b = bracket_two(|_, _| Ok(1.0), 3, 7, 2.0, Slack::Constant(0.5)).unwrap();
        assert!((b.lower - (1.0 - 0.5 / 9.0 - 0.5 / 49.0)).abs() < 1e-15, "{}", b.lower);
        assert_eq!(b.upper, 1.0);
    }
}
