//! Orthogonal polynomials on the unit circle for the weight e^{t(z+1/z)},
//! the infinite products for the Toeplitz/Hankel determinants, and the
//! Poisson generating functions built from them.
//!
//! All recursion runs in binary arbitrary precision. The Levinson
//! recursion loses roughly 1.75·t decimal digits, so the working precision
//! grows linearly with t.

use crate::error::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
#[allow(unused_imports)]
use num_traits::Float;

pub type Real = FBig<HalfEven, 2>;

/// Default upper limit on working precision, in decimal digits.
pub const DEFAULT_DIGIT_CAP: u32 = 5000;
/// Decimal digits lost per unit of t in the Levinson recursion.
pub const LEVINSON_LOSS_PER_T: f64 = 1.75;

const LOG2_10: f64 = 3.321928094887362;

fn bits(digits: u32) -> usize {
    (digits as f64 * LOG2_10).ceil() as usize + 16
}

fn real(x: f64, prec: usize) -> Real {
    Real::try_from(x).expect("finite f64").with_precision(prec).value()
}

fn int(n: usize, prec: usize) -> Real {
    Real::from(n as u64).with_precision(prec).value()
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

/// log10 |x|, or −∞ for zero.
pub fn log10_abs(x: &Real) -> f64 {
    if *x == Real::ZERO {
        return f64::NEG_INFINITY;
    }
    let (lo, hi) = dashu_float::ops::EstimatedLog2::log2_bounds(x);
    (0.5 * (lo as f64 + hi as f64)) / LOG2_10
}

/// Working precision used when none is requested: at least 60 digits, plus
/// the Levinson loss.
pub fn default_digits(t: f64) -> u32 {
    (30.0 + (LEVINSON_LOSS_PER_T * t).ceil()).max(60.0) as u32
}

fn check_digits(digits: u32, cap: u32) -> Result<()> {
    if digits > cap {
        return Err(Error::PrecisionUnachievable { requested: digits, cap });
    }
    if digits < 30 {
        return Err(Error::InvalidArgument(format!("precision {digits} below 30 digits")));
    }
    Ok(())
}

/// I_ν(x) by its power series Σ (x/2)^{2j+ν}/(j!(j+ν)!).
pub fn bessel_i(nu: usize, arg: f64, digits: u32) -> Result<Real> {
    check_digits(digits, DEFAULT_DIGIT_CAP)?;
    if !(arg >= 0.0) || !arg.is_finite() {
        return Err(Error::InvalidArgument(format!("bessel argument {arg} must be finite and >= 0")));
    }
    Ok(bessel_series(nu, &real(arg / 2.0, bits(digits)), bits(digits)))
}

fn bessel_series(nu: usize, half: &Real, prec: usize) -> Real {
    if *half == Real::ZERO {
        return if nu == 0 { int(1, prec) } else { Real::ZERO.with_precision(prec).value() };
    }
    let mut term = int(1, prec);
    for k in 1..=nu {
        term = term * half / int(k, prec);
    }
    let sq = half * half;
    let mut sum = term.clone();
    let mut j = 0usize;
    loop {
        j += 1;
        term = term * &sq / int(j * (j + nu), prec);
        sum += &term;
        if term.log2_est_f64() < sum.log2_est_f64() - prec as f64 - 4.0 {
            break;
        }
    }
    sum
}

trait Log2Est {
    fn log2_est_f64(&self) -> f64;
}

impl Log2Est for Real {
    fn log2_est_f64(&self) -> f64 {
        if *self == Real::ZERO {
            return f64::NEG_INFINITY;
        }
        dashu_float::ops::EstimatedLog2::log2_est(self) as f64
    }
}

/// I_ν(2t) for ν = 0..=nu_max: series at the two top orders, then the
/// downward recurrence I_{ν−1} = I_{ν+1} + (ν/t)·I_ν.
pub fn bessel_moments(t: f64, nu_max: usize, digits: u32) -> Result<Vec<Real>> {
    check_digits(digits, DEFAULT_DIGIT_CAP)?;
    let prec = bits(digits);
    let tr = real(t, prec);
    if t == 0.0 {
        let mut v = vec![Real::ZERO.with_precision(prec).value(); nu_max + 1];
        v[0] = int(1, prec);
        return Ok(v);
    }
    let mut out = vec![Real::ZERO; nu_max + 2];
    out[nu_max + 1] = bessel_series(nu_max + 1, &tr, prec);
    out[nu_max] = bessel_series(nu_max, &tr, prec);
    for nu in (1..=nu_max).rev() {
        out[nu - 1] = &out[nu + 1] + int(nu, prec) * &out[nu] / &tr;
    }
    out.truncate(nu_max + 1);
    Ok(out)
}

/// Monic orthogonal polynomials π_k(z; t) for the weight e^{t(z+1/z)} on the
/// unit circle, stored through their norms N_k and values π_k(0).
#[derive(Debug, Clone)]
pub struct OrthoSequence {
    t: f64,
    digits: u32,
    norms: Vec<Real>,
    reflection: Vec<Real>,
}

impl OrthoSequence {
    /// Levinson recursion on the moments I_ν(2t), up to degree k_max.
    pub fn new(t: f64, k_max: usize, digits: u32) -> Result<Self> {
        Self::with_cap(t, k_max, digits, DEFAULT_DIGIT_CAP)
    }

    pub fn with_cap(t: f64, k_max: usize, digits: u32, cap: u32) -> Result<Self> {
        if !(0.0..=500.0).contains(&t) {
            return Err(Error::InvalidArgument(format!("t={t} outside [0, 500]")));
        }
        if k_max > 2000 {
            return Err(Error::InvalidArgument(format!("k_max={k_max} above 2000")));
        }
        check_digits(digits, cap)?;
        let prec = bits(digits);
        let c = bessel_moments(t, k_max + 1, digits)?;
        let mut norms = Vec::with_capacity(k_max + 1);
        let mut reflection = Vec::with_capacity(k_max + 1);
        norms.push(c[0].clone());
        reflection.push(int(1, prec));
        let mut a: Vec<Real> = vec![int(1, prec)];
        for k in 0..k_max {
            let mut s = Real::ZERO.with_precision(prec).value();
            for (j, aj) in a.iter().enumerate() {
                s += aj * &c[j + 1];
            }
            let r = -s / &norms[k];
            let mut next = Vec::with_capacity(k + 2);
            for j in 0..=k + 1 {
                let mut v = if j >= 1 { a[j - 1].clone() } else { Real::ZERO.with_precision(prec).value() };
                if j <= k {
                    v += &r * &a[k - j];
                }
                next.push(v);
            }
            a = next;
            let one = int(1, prec);
            norms.push(&norms[k] * (one - &r * &r));
            reflection.push(r);
        }
        let seq = OrthoSequence { t, digits, norms, reflection };
        seq.check_recurrence()?;
        Ok(seq)
    }

    /// The reflection coefficients satisfy the discrete Painlevé II equation
    /// −(k/t)·x_k/(1 − x_k²) = x_{k+1} + x_{k−1}; precision collapse breaks it.
    fn check_recurrence(&self) -> Result<()> {
        if self.t == 0.0 {
            return Ok(());
        }
        let prec = bits(self.digits);
        let tr = real(self.t, prec);
        let x = &self.reflection;
        let one = int(1, prec);
        for k in 1..x.len().saturating_sub(1) {
            let lhs = -(int(k, prec) / &tr) * &x[k] / (&one - &x[k] * &x[k]);
            let rhs = &x[k + 1] + &x[k - 1];
            let res = (&lhs - &rhs).log2_est_f64();
            if res > -60.0 {
                return Err(Error::PrecisionLoss(format!(
                    "recurrence residual at k={k} for t={} with {} digits",
                    self.t, self.digits
                )));
            }
        }
        if x.iter().skip(1).any(|r| r.log2_est_f64() >= 0.0) {
            return Err(Error::PrecisionLoss(format!("|π_k(0)| >= 1 at t={}", self.t)));
        }
        Ok(())
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn k_max(&self) -> usize {
        self.norms.len() - 1
    }

    pub fn norm(&self, k: usize) -> &Real {
        &self.norms[k]
    }

    /// π_k(0; t); equals 1 at k = 0.
    pub fn pi0(&self, k: usize) -> &Real {
        &self.reflection[k]
    }

    pub fn norm_f64(&self, k: usize) -> f64 {
        to_f64(&self.norms[k])
    }

    pub fn pi0_f64(&self, k: usize) -> f64 {
        to_f64(&self.reflection[k])
    }

    /// (π_k(z), π*_k(z)) by the Szegő recurrence.
    pub fn pi_eval(&self, k: usize, z: f64) -> Result<(Real, Real)> {
        if k > self.k_max() {
            return Err(Error::InvalidArgument(format!("degree {k} above k_max {}", self.k_max())));
        }
        let prec = bits(self.digits);
        let zr = real(z, prec);
        let mut p = int(1, prec);
        let mut q = int(1, prec);
        for j in 1..=k {
            let zp = &zr * &p;
            let r = &self.reflection[j];
            let np = &zp + r * &q;
            q = &q + r * &zp;
            p = np;
        }
        Ok((p, q))
    }
}

/// The five infinite products of the determinant formulas, truncated at
/// index `j_max`.
#[derive(Debug, Clone)]
pub struct DetProducts {
    pub l: usize,
    /// e^{−t²}D_l = ∏_{j≥l} N_j⁻¹
    pub d: Real,
    /// e^{−t²/2}D_l^{−−} = ∏_{j≥l} N_{2j}⁻¹(1 + π_{2j}(0)) for l ≥ 1, and e^{−t²/2} at l = 0
    pub mm: Real,
    /// e^{−t²/2}D_l^{++} = ∏_{j≥l} N_{2j+2}⁻¹(1 − π_{2j+2}(0))
    pub pp: Real,
    /// e^{−t²/2+t}D_l^{+−} = ∏_{j≥l} N_{2j+1}⁻¹(1 − π_{2j+1}(0))
    pub pm: Real,
    /// e^{−t²/2−t}D_l^{−+} = ∏_{j≥l} N_{2j+1}⁻¹(1 + π_{2j+1}(0))
    pub mp: Real,
    pub j_max: usize,
    /// Bound on |log| of every omitted tail product.
    pub tail_bound: f64,
}

impl DetProducts {
    pub fn values_f64(&self) -> [f64; 5] {
        [to_f64(&self.d), to_f64(&self.mm), to_f64(&self.pp), to_f64(&self.pm), to_f64(&self.mp)]
    }
}

/// The truncation rule j_max = max(2l, ⌈2t⌉ + 12·(2t)^{1/3}).
pub fn auto_j_max(l: usize, t: f64) -> usize {
    let airy = (2.0 * t).ceil() + (12.0 * (2.0 * t).cbrt()).ceil();
    (2 * l).max(airy as usize).max(l + 2).max(4)
}

/// Tail envelope beyond `j_max`: |π_k(0)| decays like t^k/k!, so the omitted
/// log-products are bounded by a geometric series in ρ = t/(j_max+1).
fn tail_envelope(seq: &OrthoSequence, j_max: usize) -> Result<f64> {
    let rho = seq.t / (j_max as f64 + 1.0);
    if rho >= 0.5 {
        return Err(Error::TruncationUncertified(format!(
            "j_max={j_max} is inside the Airy window for t={}",
            seq.t
        )));
    }
    let r = seq.pi0_f64(j_max).abs();
    Ok(4.0 * r * rho / (1.0 - rho))
}

pub fn det_products(seq: &OrthoSequence, l: usize, j_max: usize) -> Result<DetProducts> {
    if j_max > seq.k_max() || j_max < l {
        return Err(Error::InvalidArgument(format!(
            "j_max={j_max} must lie in [l={l}, k_max={}]",
            seq.k_max()
        )));
    }
    let prec = bits(seq.digits);
    let one = int(1, prec);
    let mut d = one.clone();
    let (mut mm, mut pp, mut pm, mut mp) = (one.clone(), one.clone(), one.clone(), one.clone());
    for k in l..=j_max {
        d = d / seq.norm(k);
    }
    for k in (2 * l).max(1)..=j_max {
        let inv = &one / seq.norm(k);
        let r = seq.pi0(k);
        if k % 2 == 0 {
            mm = mm * (&inv * (&one + r));
            if k > 2 * l {
                pp = pp * (&inv * (&one - r));
            }
        } else {
            pm = pm * (&inv * (&one - r));
            mp = mp * (&inv * (&one + r));
        }
    }
    if l == 0 {
        mm = (-real(seq.t * seq.t / 2.0, prec)).exp();
    }
    let tail_bound = tail_envelope(seq, j_max)?;
    Ok(DetProducts { l, d, mm, pp, pm, mp, j_max, tail_bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Square,
    Diamond,
    Signed,
    SquareRow2,
    DiamondRow2,
    SignedRow2,
}

impl Family {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "square" => Family::Square,
            "diamond" => Family::Diamond,
            "signed" => Family::Signed,
            "square_row2" => Family::SquareRow2,
            "diamond_row2" => Family::DiamondRow2,
            "signed_row2" => Family::SignedRow2,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Square => "square",
            Family::Diamond => "diamond",
            Family::Signed => "signed",
            Family::SquareRow2 => "square_row2",
            Family::DiamondRow2 => "diamond_row2",
            Family::SignedRow2 => "signed_row2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenFnRequest {
    pub family: Family,
    pub l: usize,
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
    /// None selects [`auto_j_max`].
    pub truncation_j_max: Option<usize>,
    /// None selects [`default_digits`], raised automatically on cancellation.
    pub digits: Option<u32>,
    pub digit_cap: u32,
}

impl GenFnRequest {
    pub fn new(family: Family, l: usize, t: f64, alpha: f64, beta: f64) -> Self {
        GenFnRequest { family, l, t, alpha, beta, truncation_j_max: None, digits: None, digit_cap: DEFAULT_DIGIT_CAP }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenFnValue {
    pub value: f64,
    pub truncation_j_max: usize,
    pub certified_tail_bound: f64,
    pub digits: u32,
}

/// One term c·P of a generating-function formula, P a determinant product.
struct Assembly {
    terms: Vec<Real>,
    tail: f64,
}

impl Assembly {
    fn total(&self, prec: usize) -> Real {
        self.terms.iter().fold(Real::ZERO.with_precision(prec).value(), |a, b| a + b)
    }

    /// Absolute error bound from the truncated products.
    fn tail_error(&self) -> f64 {
        let max = self.terms.iter().map(|x| to_f64(x).abs()).fold(0.0, f64::max);
        self.terms.len() as f64 * max * self.tail.exp_m1()
    }
}

fn admissible(req: &GenFnRequest) -> Result<()> {
    let ok = |x: f64| x.is_finite() && x >= 0.0;
    if !ok(req.t) || !ok(req.alpha) || !ok(req.beta) {
        return Err(Error::InvalidArgument(format!(
            "t, alpha, beta must be finite and >= 0 (t={}, alpha={}, beta={})",
            req.t, req.alpha, req.beta
        )));
    }
    Ok(())
}

/// Poisson generating function P_l(t; α[, β]) of the requested family.
pub fn pgen(req: &GenFnRequest) -> Result<GenFnValue> {
    admissible(req)?;
    match req.family {
        Family::SquareRow2 => return pgen(&GenFnRequest { family: Family::Square, alpha: 0.0, ..*req }),
        Family::DiamondRow2 => {
            if req.l % 2 == 0 {
                return Err(Error::InvalidArgument("diamond_row2 is available for odd l only".into()));
            }
            return pgen(&GenFnRequest { family: Family::Square, l: req.l - 1, alpha: 0.0, ..*req });
        }
        Family::SignedRow2 => {
            if req.l % 2 == 0 {
                return Err(Error::InvalidArgument("signed_row2 is available for odd l only".into()));
            }
            return pgen(&GenFnRequest { family: Family::Signed, l: req.l - 1, alpha: 0.0, beta: 0.0, ..*req });
        }
        _ => {}
    }
    if req.t == 0.0 {
        return Ok(GenFnValue { value: 1.0, truncation_j_max: 0, certified_tail_bound: 0.0, digits: 0 });
    }
    let j_max = req.truncation_j_max.unwrap_or_else(|| auto_j_max(req.l, req.t));
    let mut digits = req.digits.unwrap_or_else(|| default_digits(req.t));
    let mut retried = false;
    loop {
        check_digits(digits, req.digit_cap)?;
        let prec = bits(digits);
        let seq = OrthoSequence::with_cap(req.t, j_max, digits, req.digit_cap)?;
        let asm = assemble(req, &seq, j_max, prec)?;
        let total = asm.total(prec);
        let max_log = asm.terms.iter().map(log10_abs).fold(f64::NEG_INFINITY, f64::max);
        let effective = digits as f64 - LEVINSON_LOSS_PER_T * req.t;
        if max_log - effective > -20.0 && req.digits.is_none() && !retried {
            digits = (LEVINSON_LOSS_PER_T * req.t + max_log.max(0.0) + 40.0).ceil() as u32;
            retried = true;
            continue;
        }
        if max_log - effective > -12.0 {
            return Err(Error::PrecisionLoss(format!(
                "cancellation of 1e{max_log:.0} terms at {digits} digits"
            )));
        }
        let value = to_f64(&total).clamp(0.0, 1.0);
        return Ok(GenFnValue { value, truncation_j_max: j_max, certified_tail_bound: asm.tail_error(), digits });
    }
}

fn assemble(req: &GenFnRequest, seq: &OrthoSequence, j_max: usize, prec: usize) -> Result<Assembly> {
    let t = req.t;
    let l = req.l;
    let exp_neg = |x: f64| (-real(x, prec)).exp();
    let single = |v: Real, tail: f64| Assembly { terms: vec![v], tail };
    match req.family {
        Family::Square => {
            let a = req.alpha;
            if l == 0 {
                return Ok(single(exp_neg(a * t + t * t / 2.0), 0.0));
            }
            let ar = real(a, prec);
            let pre = exp_neg(a * t) / int(2, prec);
            if l % 2 == 0 {
                let big_l = l / 2;
                let (p, q) = seq.pi_eval(l - 1, -a)?;
                let lo = det_products(seq, big_l, j_max)?;
                let hi = det_products(seq, big_l - 1, j_max)?;
                let tail = lo.tail_bound.max(hi.tail_bound);
                let t1 = &pre * (&q - &ar * &p) * &lo.mm;
                let t2 = &pre * (&q + &ar * &p) * &hi.pp;
                Ok(Assembly { terms: vec![t1, t2], tail })
            } else {
                let big_l = (l - 1) / 2;
                let (p, q) = seq.pi_eval(l - 1, -a)?;
                let dp = det_products(seq, big_l, j_max)?;
                let t1 = &pre * (&q + &ar * &p) * &dp.pm;
                let t2 = &pre * (&q - &ar * &p) * &dp.mp;
                Ok(Assembly { terms: vec![t1, t2], tail: dp.tail_bound })
            }
        }
        Family::Diamond => {
            let b = req.beta;
            if l == 0 {
                return Ok(single(exp_neg(b * t + t * t / 2.0), 0.0));
            }
            if l % 2 == 1 {
                let dp = det_products(seq, (l - 1) / 2, j_max)?;
                return Ok(single(dp.pp.clone(), dp.tail_bound));
            }
            let dp = det_products(seq, l / 2, j_max)?;
            if b == 0.0 {
                Ok(single(dp.pp.clone(), dp.tail_bound))
            } else if b == 1.0 {
                Ok(single(dp.mp.clone(), dp.tail_bound))
            } else {
                Err(Error::InvalidArgument(format!("diamond with even l={l} needs beta in {{0, 1}}, got {b}")))
            }
        }
        Family::Signed => {
            let (a, b) = (req.alpha, req.beta);
            if l == 0 {
                return Ok(single(exp_neg(a * t + b * t + t * t), 0.0));
            }
            if l % 2 == 1 {
                let big_l = (l - 1) / 2;
                let (_, q) = seq.pi_eval(big_l, -a)?;
                let dp = det_products(seq, big_l, j_max)?;
                return Ok(single(exp_neg(a * t) * q * &dp.d, dp.tail_bound));
            }
            if a == 0.0 && b == 0.0 {
                let dp = det_products(seq, l / 2, j_max)?;
                Ok(single(dp.d.clone(), dp.tail_bound))
            } else {
                Err(Error::InvalidArgument(format!("signed with even l={l} needs alpha = beta = 0")))
            }
        }
        _ => unreachable!("row-2 families are delegated"),
    }
}

/// Poisson probability e^{−λ}λⁿ/n! computed in logs.
pub fn poisson_pmf(lambda: f64, n: usize) -> f64 {
    if lambda == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    (n as f64 * lambda.ln() - lambda - libm::lgamma(n as f64 + 1.0)).exp()
}

/// Q_l(λ₁, λ₂) = P_l(t; λ₁/t) with t = √(2λ₂), for the square and diamond
/// families; at λ₂ = 0 only identity permutations remain.
pub fn q_two(family: Family, l: usize, lambda1: f64, lambda2: f64) -> Result<f64> {
    if lambda2 == 0.0 {
        return Ok(match family {
            Family::Square => (0..=l).map(|k| poisson_pmf(lambda1, k)).sum::<f64>().min(1.0),
            Family::Diamond => {
                if l >= 1 {
                    1.0
                } else {
                    (-lambda1).exp()
                }
            }
            _ => return Err(Error::InvalidArgument(format!("q_two is defined for square and diamond, not {}", family.name()))),
        });
    }
    let t = (2.0 * lambda2).sqrt();
    let p = lambda1 / t;
    let req = match family {
        Family::Square => GenFnRequest::new(Family::Square, l, t, p, 0.0),
        Family::Diamond => GenFnRequest::new(Family::Diamond, l, t, 0.0, p),
        _ => return Err(Error::InvalidArgument(format!("q_two is defined for square and diamond, not {}", family.name()))),
    };
    Ok(pgen(&req)?.value)
}

/// Which limit a Poissonized sequence is compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitCase {
    /// P^□_l(t; α) with fixed α: F₄ for α < 1, F₁ at α = 1.
    Square { alpha: f64 },
    /// P^□_l(t; α) with α = 1 − 2^{4/3}w·l^{−1/3}: F^□(x; w).
    SquareW { w: f64 },
    /// P^◇_l(t; β): F₁.
    Diamond { beta: f64 },
    /// e^{−t²}D_l: F(x)² = F₂.
    Toeplitz,
    /// P^▿_l(t; α, β) under 4t = l − x(2l)^{1/3}: F₂ for α < 1, F₁² at α = 1.
    Signed { alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitPoint {
    pub l: usize,
    pub t: f64,
    pub value: f64,
    pub target: f64,
    pub distance: f64,
}

/// t along the scaling 2t = l − x(l/2)^{1/3}, or 4t = l − x(2l)^{1/3} for signed.
pub fn scaling_t(case: &LimitCase, l: usize, x: f64) -> f64 {
    let lf = l as f64;
    match case {
        LimitCase::Signed { .. } => (lf - x * (2.0 * lf).cbrt()) / 4.0,
        _ => (lf - x * (lf / 2.0).cbrt()) / 2.0,
    }
}

/// Evaluates the generating function along the Airy scaling for each l and
/// compares with `target` (the limiting law evaluated at x).
pub fn poissonized_limit_check(case: LimitCase, x: f64, l_list: &[usize], target: f64) -> Result<Vec<LimitPoint>> {
    let mut out = Vec::with_capacity(l_list.len());
    for &l in l_list {
        let t = scaling_t(&case, l, x);
        if t <= 0.0 {
            return Err(Error::InvalidArgument(format!("scaling gives t={t} <= 0 at l={l}, x={x}")));
        }
        let value = match case {
            LimitCase::Square { alpha } => pgen(&GenFnRequest::new(Family::Square, l, t, alpha, 0.0))?.value,
            LimitCase::SquareW { w } => {
                let alpha = 1.0 - 2f64.powf(4.0 / 3.0) * w / (l as f64).cbrt();
                pgen(&GenFnRequest::new(Family::Square, l, t, alpha.max(0.0), 0.0))?.value
            }
            LimitCase::Diamond { beta } => pgen(&GenFnRequest::new(Family::Diamond, l, t, 0.0, beta))?.value,
            LimitCase::Toeplitz => {
                let j_max = auto_j_max(l, t);
                let seq = OrthoSequence::new(t, j_max, default_digits(t))?;
                to_f64(&det_products(&seq, l, j_max)?.d)
            }
            LimitCase::Signed { alpha, beta } => pgen(&GenFnRequest::new(Family::Signed, l, t, alpha, beta))?.value,
        };
        out.push(LimitPoint { l, t, value, target, distance: (value - target).abs() });
    }
    Ok(out)
}

/// P(L^□(t; α) ≤ (α+1/α)t + x√((α−1/α)t)) − Φ(x), evaluated with pgen.
pub fn gaussian_poisson_check(alpha: f64, t: f64, x: f64) -> Result<f64> {
    if alpha < 1.2 || t < 50.0 {
        return Err(Error::InvalidArgument(format!("needs alpha >= 1.2 and t >= 50, got alpha={alpha}, t={t}")));
    }
    let center = (alpha + 1.0 / alpha) * t;
    let spread = ((alpha - 1.0 / alpha) * t).sqrt();
    let l = (center + x * spread).floor();
    if l < 0.0 {
        return Ok(normal_cdf(x));
    }
    let v = pgen(&GenFnRequest::new(Family::Square, l as usize, t, alpha, 0.0))?.value;
    Ok(v - normal_cdf(x))
}

pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / core::f64::consts::SQRT_2)
}
