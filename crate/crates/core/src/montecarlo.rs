//! Samplers for random (signed) involutions, longest monotone subsequences,
//! the two-row RSK statistic, scaled variables and Kolmogorov-Smirnov fits.
//!
//! Randomness comes from ChaCha8 with one stream per shard of
//! [`SHARD_SIZE`] samples, so a run is reproducible from its seed no matter
//! how shards are scheduled.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::circle::normal_cdf;
use crate::lax;
use crate::painleve2::{Ensemble, PiiGrid};
use crate::tableaux::Side;

pub const SHARD_SIZE: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnsembleKind {
    InvolutionFixedM,
    SignedInvolution,
    UniformInvolution,
    /// All signed involutions of ±1..±n with no constraint on fixed or
    /// negated points.
    UniformSignedInvolution,
    UniformPermutation,
    PointProcessTriangle,
}

impl EnsembleKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "involution_fixed_m" | "involution" => EnsembleKind::InvolutionFixedM,
            "signed_involution" | "signed" => EnsembleKind::SignedInvolution,
            "uniform_involution" => EnsembleKind::UniformInvolution,
            "uniform_signed_involution" => EnsembleKind::UniformSignedInvolution,
            "uniform_permutation" => EnsembleKind::UniformPermutation,
            "point_process_triangle" | "point_process" => EnsembleKind::PointProcessTriangle,
            _ => return Err(Error::InvalidArgument(format!("unknown ensemble {s:?}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::InvolutionFixedM => "involution_fixed_m",
            EnsembleKind::SignedInvolution => "signed_involution",
            EnsembleKind::UniformInvolution => "uniform_involution",
            EnsembleKind::UniformSignedInvolution => "uniform_signed_involution",
            EnsembleKind::UniformPermutation => "uniform_permutation",
            EnsembleKind::PointProcessTriangle => "point_process_triangle",
        }
    }
}

/// How a count of special points is derived from the size parameter.
/// `Alpha` and `W` use √(2n) for involutions and √n for signed involutions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MRule {
    Explicit(usize),
    Alpha(f64),
    W(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scaling {
    /// 2√N centering with N^{1/6} fluctuations (and the 2^{2/3} factor for
    /// signed ensembles).
    Edge,
    /// α > 1: center (α+1/α)t and scale √((1/α−1/α³)t) with t = √(2n).
    Gaussian,
    /// α > 1: center (α+1/α)√(2n+m) and scale √(1/α−1/α³)(2n+m)^{1/4}.
    GaussianBySize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub n: usize,
    pub m_rule: MRule,
    pub m_plus_rule: MRule,
    pub m_minus_rule: MRule,
    /// Row statistics (increasing) or column statistics (decreasing).
    pub side: Side,
    pub scaling: Scaling,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, n: usize, seed: u64) -> Self {
        EnsembleSpec {
            kind,
            n,
            m_rule: MRule::Explicit(0),
            m_plus_rule: MRule::Explicit(0),
            m_minus_rule: MRule::Explicit(0),
            side: Side::Row,
            scaling: Scaling::Edge,
            seed,
        }
    }

    pub fn involution(n: usize, m_rule: MRule, seed: u64) -> Self {
        EnsembleSpec { m_rule, ..Self::new(EnsembleKind::InvolutionFixedM, n, seed) }
    }

    pub fn signed(n: usize, m_plus_rule: MRule, m_minus_rule: MRule, seed: u64) -> Self {
        EnsembleSpec { m_plus_rule, m_minus_rule, ..Self::new(EnsembleKind::SignedInvolution, n, seed) }
    }

    pub fn with_side(self, side: Side) -> Self {
        EnsembleSpec { side, ..self }
    }

    pub fn with_scaling(self, scaling: Scaling) -> Self {
        EnsembleSpec { scaling, ..self }
    }

    /// Derived (m, m₊, m₋); unused entries are 0.
    pub fn resolve(&self) -> Result<Resolved> {
        let n = self.n as f64;
        match self.kind {
            EnsembleKind::InvolutionFixedM | EnsembleKind::PointProcessTriangle => {
                let r = (2.0 * n).sqrt();
                let m = apply_rule(self.m_rule, r, (2.0 * n).cbrt(), "m")?;
                Ok(Resolved { n: self.n, m, m_plus: 0, m_minus: 0 })
            }
            EnsembleKind::SignedInvolution => {
                let r = n.sqrt();
                let m_plus = apply_rule(self.m_plus_rule, r, n.cbrt(), "m_plus")?;
                let m_minus = match self.m_minus_rule {
                    MRule::W(_) => return Err(Error::InvalidConfig("m_minus takes an explicit count or beta scaling".into())),
                    rule => apply_rule(rule, r, n.cbrt(), "m_minus")?,
                };
                Ok(Resolved { n: self.n, m: 0, m_plus, m_minus })
            }
            _ => Ok(Resolved { n: self.n, m: 0, m_plus: 0, m_minus: 0 }),
        }
    }

    /// Number of letters the sampled permutation acts on.
    pub fn letters(&self) -> Result<usize> {
        let r = self.resolve()?;
        Ok(match self.kind {
            EnsembleKind::InvolutionFixedM | EnsembleKind::PointProcessTriangle => 2 * r.n + r.m,
            EnsembleKind::SignedInvolution => 2 * (2 * r.n + r.m_plus + r.m_minus),
            EnsembleKind::UniformSignedInvolution => 2 * r.n,
            EnsembleKind::UniformInvolution | EnsembleKind::UniformPermutation => r.n,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Resolved {
    pub n: usize,
    pub m: usize,
    pub m_plus: usize,
    pub m_minus: usize,
}

/// floor of the rule: `Alpha(a)` gives [a·r], `W(w)` gives [r − 2w·s].
fn apply_rule(rule: MRule, r: f64, s: f64, what: &str) -> Result<usize> {
    let v = match rule {
        MRule::Explicit(m) => return Ok(m),
        MRule::Alpha(a) => a * r,
        MRule::W(w) => r - 2.0 * w * s,
    };
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidConfig(format!("derived {what} = {v} is negative or not finite")));
    }
    Ok(v.floor() as usize)
}

/// Uniform involution on 2n+m letters with exactly m fixed points.
pub fn sample_involution<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Vec<usize> {
    let size = 2 * n + m;
    let mut letters: Vec<usize> = (0..size).collect();
    letters.shuffle(rng);
    let mut perm = vec![0; size];
    for &x in &letters[..m] {
        perm[x] = x;
    }
    for pair in letters[m..].chunks_exact(2) {
        perm[pair[0]] = pair[1];
        perm[pair[1]] = pair[0];
    }
    perm
}

/// Position of the signed letter x ∈ {−N..−1, 1..N} in the order
/// −N < … < −1 < 1 < … < N.
pub fn signed_index(x: i64, big_n: usize) -> usize {
    let big_n = big_n as i64;
    (if x < 0 { big_n + x } else { big_n + x - 1 }) as usize
}

fn realize_signed(images: &[i64]) -> Vec<usize> {
    // images[k] = π(k+1)
    let big_n = images.len();
    let mut perm = vec![0; 2 * big_n];
    for (k, &y) in images.iter().enumerate() {
        let x = k as i64 + 1;
        perm[signed_index(x, big_n)] = signed_index(y, big_n);
        perm[signed_index(-x, big_n)] = signed_index(-y, big_n);
    }
    perm
}

/// Uniform signed involution with 2m₊ fixed points, 2m₋ negated points and
/// n pairs, realized on 2N letters, N = 2n+m₊+m₋.
pub fn sample_signed_involution<R: Rng + ?Sized>(n: usize, m_plus: usize, m_minus: usize, rng: &mut R) -> Vec<usize> {
    let big_n = 2 * n + m_plus + m_minus;
    let mut letters: Vec<i64> = (1..=big_n as i64).collect();
    letters.shuffle(rng);
    let mut images = vec![0i64; big_n];
    for &x in &letters[..m_plus] {
        images[x as usize - 1] = x;
    }
    for &x in &letters[m_plus..m_plus + m_minus] {
        images[x as usize - 1] = -x;
    }
    for pair in letters[m_plus + m_minus..].chunks_exact(2) {
        let s = if rng.gen::<bool>() { 1 } else { -1 };
        images[pair[0] as usize - 1] = s * pair[1];
        images[pair[1] as usize - 1] = s * pair[0];
    }
    realize_signed(&images)
}

/// Ratios I(k−1)/I(k) for k = 1..=size, from I(k) = a·I(k−1) + b(k−1)·I(k−2).
fn chain_ratios(size: usize, a: f64, b: f64) -> Vec<f64> {
    let mut rho = vec![0.0; size + 1];
    for k in 1..=size {
        let prev = if k >= 2 { rho[k - 1] } else { 0.0 };
        rho[k] = 1.0 / (a + b * (k - 1) as f64 * prev);
    }
    rho
}

/// Uniform over all involutions of `size` letters: the last remaining letter
/// is fixed with probability I(k−1)/I(k), otherwise paired uniformly.
pub fn sample_uniform_involution<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Vec<usize> {
    let rho = chain_ratios(size, 1.0, 1.0);
    let mut perm = vec![0; size];
    let mut left: Vec<usize> = (0..size).collect();
    while let Some(x) = left.pop() {
        let k = left.len() + 1;
        if rng.gen::<f64>() < rho[k] {
            perm[x] = x;
        } else {
            let j = rng.gen_range(0..left.len());
            let y = left.swap_remove(j);
            perm[x] = y;
            perm[y] = x;
        }
    }
    perm
}

/// Uniform over all signed involutions of ±1..±n; T(k) = 2T(k−1) + 2(k−1)T(k−2).
pub fn sample_uniform_signed_involution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let rho = chain_ratios(n, 2.0, 2.0);
    let mut images = vec![0i64; n];
    let mut left: Vec<i64> = (1..=n as i64).collect();
    while let Some(x) = left.pop() {
        let k = left.len() + 1;
        let u = rng.gen::<f64>();
        if u < rho[k] {
            images[x as usize - 1] = x;
        } else if u < 2.0 * rho[k] {
            images[x as usize - 1] = -x;
        } else {
            let j = rng.gen_range(0..left.len());
            let y = left.swap_remove(j);
            let s = if rng.gen::<bool>() { 1 } else { -1 };
            images[x as usize - 1] = s * y;
            images[y as usize - 1] = s * x;
        }
    }
    realize_signed(&images)
}

pub fn sample_uniform_permutation<R: Rng + ?Sized>(size: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..size).collect();
    perm.shuffle(rng);
    perm
}

/// n uniform points in the triangle x < y, their mirror images, and m uniform
/// points on the diagonal; the permutation lists y-ranks in x order.
pub fn sample_point_process<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Vec<usize> {
    loop {
        let mut pts: Vec<(f64, f64)> = Vec::with_capacity(2 * n + m);
        for _ in 0..n {
            let (a, b): (f64, f64) = (rng.gen(), rng.gen());
            let (x, y) = if a < b { (a, b) } else { (b, a) };
            pts.push((x, y));
            pts.push((y, x));
        }
        for _ in 0..m {
            let u: f64 = rng.gen();
            pts.push((u, u));
        }
        pts.sort_by(|p, q| p.0.total_cmp(&q.0));
        if pts.windows(2).any(|w| w[0].0 == w[1].0 && w[0].1 != w[1].1) {
            continue;
        }
        let mut ys: Vec<(f64, usize)> = pts.iter().enumerate().map(|(i, p)| (p.1, i)).collect();
        ys.sort_by(|p, q| p.0.total_cmp(&q.0));
        if ys.windows(2).any(|w| w[0].0 == w[1].0) {
            continue;
        }
        let mut perm = vec![0; pts.len()];
        for (rank, &(_, i)) in ys.iter().enumerate() {
            perm[i] = rank;
        }
        return perm;
    }
}

/// Longest increasing subsequence by patience sorting.
pub fn lis(perm: &[usize]) -> usize {
    let mut tops: Vec<usize> = Vec::new();
    for &x in perm {
        let i = tops.partition_point(|&t| t < x);
        if i == tops.len() {
            tops.push(x);
        } else {
            tops[i] = x;
        }
    }
    tops.len()
}

pub fn lds(perm: &[usize]) -> usize {
    let rev: Vec<usize> = perm.iter().rev().copied().collect();
    lis(&rev)
}

fn bump(row: &mut Vec<usize>, x: usize) -> Option<usize> {
    let i = row.partition_point(|&t| t < x);
    if i == row.len() {
        row.push(x);
        None
    } else {
        Some(core::mem::replace(&mut row[i], x))
    }
}

/// Lengths of the first two rows of the RSK shape; rows below the second
/// never influence them, so only two rows are kept.
pub fn first_two_rows(perm: &[usize]) -> (usize, usize) {
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    for &x in perm {
        if let Some(y) = bump(&mut r1, x) {
            bump(&mut r2, y);
        }
    }
    (r1.len(), r2.len())
}

/// First two columns: reversing the word transposes the shape.
pub fn first_two_columns(perm: &[usize]) -> (usize, usize) {
    let rev: Vec<usize> = perm.iter().rev().copied().collect();
    first_two_rows(&rev)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledSample {
    pub lambda1: usize,
    pub lambda2: usize,
    pub chi1: f64,
    pub chi2: f64,
    /// The centering/scaling formula used, in words.
    pub formula: &'static str,
}

/// Centering and divisor of the scaled statistic for `spec`.
pub fn scaling_constants(spec: &EnsembleSpec) -> Result<(f64, f64, &'static str)> {
    let r = spec.resolve()?;
    let n = r.n as f64;
    match (spec.kind, spec.scaling) {
        (EnsembleKind::InvolutionFixedM | EnsembleKind::PointProcessTriangle, Scaling::Edge) => {
            let size = (2 * r.n + r.m) as f64;
            Ok((2.0 * size.sqrt(), size.powf(1.0 / 6.0), "(L - 2 sqrt(2n+m)) / (2n+m)^(1/6)"))
        }
        (EnsembleKind::InvolutionFixedM | EnsembleKind::PointProcessTriangle, s) => {
            let alpha = match spec.m_rule {
                MRule::Alpha(a) if a > 1.0 => a,
                _ => return Err(Error::UnsupportedScaling("gaussian scaling needs an alpha rule with alpha > 1".into())),
            };
            let q = 1.0 / alpha - 1.0 / (alpha * alpha * alpha);
            if s == Scaling::Gaussian {
                let t = (2.0 * n).sqrt();
                Ok(((alpha + 1.0 / alpha) * t, (q * t).sqrt(), "(L - (a+1/a) t) / sqrt((1/a-1/a^3) t), t = sqrt(2n)"))
            } else {
                let size = (2 * r.n + r.m) as f64;
                Ok((
                    (alpha + 1.0 / alpha) * size.sqrt(),
                    q.sqrt() * size.powf(0.25),
                    "(L - (a+1/a) sqrt(2n+m)) / (sqrt(1/a-1/a^3) (2n+m)^(1/4))",
                ))
            }
        }
        (EnsembleKind::SignedInvolution, Scaling::Edge) => {
            let size = (4 * r.n + 2 * r.m_plus + 2 * r.m_minus) as f64;
            Ok((2.0 * size.sqrt(), 2f64.powf(2.0 / 3.0) * size.powf(1.0 / 6.0), "(L - 2 sqrt(4n+2m+ +2m-)) / (2^(2/3) (4n+2m+ +2m-)^(1/6))"))
        }
        (EnsembleKind::UniformSignedInvolution, Scaling::Edge) => {
            Ok((2.0 * (2.0 * n).sqrt(), 2f64.powf(2.0 / 3.0) * (2.0 * n).powf(1.0 / 6.0), "(L - 2 sqrt(2n)) / (2^(2/3) (2n)^(1/6))"))
        }
        (EnsembleKind::UniformInvolution | EnsembleKind::UniformPermutation, Scaling::Edge) => {
            Ok((2.0 * n.sqrt(), n.powf(1.0 / 6.0), "(L - 2 sqrt(n)) / n^(1/6)"))
        }
        (kind, _) => Err(Error::UnsupportedScaling(format!("gaussian scaling is not defined for {}", kind.name()))),
    }
}

pub fn scale(lambda1: usize, lambda2: usize, spec: &EnsembleSpec) -> Result<ScaledSample> {
    let (c, s, formula) = scaling_constants(spec)?;
    if !(s > 0.0) {
        return Err(Error::UnsupportedScaling("scaling divisor vanishes for this size".into()));
    }
    Ok(ScaledSample { lambda1, lambda2, chi1: (lambda1 as f64 - c) / s, chi2: (lambda2 as f64 - c) / s, formula })
}

pub fn sample_permutation<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<Vec<usize>> {
    let r = spec.resolve()?;
    Ok(match spec.kind {
        EnsembleKind::InvolutionFixedM => sample_involution(r.n, r.m, rng),
        EnsembleKind::PointProcessTriangle => sample_point_process(r.n, r.m, rng),
        EnsembleKind::SignedInvolution => sample_signed_involution(r.n, r.m_plus, r.m_minus, rng),
        EnsembleKind::UniformInvolution => sample_uniform_involution(r.n, rng),
        EnsembleKind::UniformSignedInvolution => sample_uniform_signed_involution(r.n, rng),
        EnsembleKind::UniformPermutation => sample_uniform_permutation(r.n, rng),
    })
}

pub fn sample_scaled<R: Rng + ?Sized>(spec: &EnsembleSpec, rng: &mut R) -> Result<ScaledSample> {
    let perm = sample_permutation(spec, rng)?;
    let (l1, l2) = match spec.side {
        Side::Row => first_two_rows(&perm),
        Side::Column => first_two_columns(&perm),
    };
    scale(l1, l2, spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    Chi1,
    Chi2,
}

/// Generator for shard `index` of a run seeded with `seed`.
pub fn shard_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Samples of shard `index`; shard k covers samples k·SHARD_SIZE onwards.
pub fn run_shard(spec: &EnsembleSpec, index: usize, count: usize) -> Result<Vec<ScaledSample>> {
    let mut rng = shard_rng(spec.seed, index as u64);
    (0..count).map(|_| sample_scaled(spec, &mut rng)).collect()
}

/// Shard sizes for `samples` draws.
pub fn shard_plan(samples: usize) -> Vec<usize> {
    let mut plan = vec![SHARD_SIZE; samples / SHARD_SIZE];
    if samples % SHARD_SIZE != 0 {
        plan.push(samples % SHARD_SIZE);
    }
    plan
}

pub fn check_samples(samples: usize) -> Result<()> {
    if samples < 100 {
        return Err(Error::InvalidArgument(format!("need at least 100 samples, got {samples}")));
    }
    Ok(())
}

/// All scaled samples of a run, in shard order.
pub fn run_samples(spec: &EnsembleSpec, samples: usize) -> Result<Vec<ScaledSample>> {
    check_samples(samples)?;
    let mut out = Vec::with_capacity(samples);
    for (k, count) in shard_plan(samples).into_iter().enumerate() {
        out.extend(run_shard(spec, k, count)?);
    }
    Ok(out)
}

pub fn run_experiment(spec: &EnsembleSpec, statistic: Statistic, samples: usize) -> Result<EmpiricalCdf> {
    let v = run_samples(spec, samples)?;
    Ok(EmpiricalCdf::new(v.iter().map(|s| pick(s, statistic)).collect()))
}

pub fn pick(s: &ScaledSample, statistic: Statistic) -> f64 {
    match statistic {
        Statistic::Chi1 => s.chi1,
        Statistic::Chi2 => s.chi2,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalCdf {
    values: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        EmpiricalCdf { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sample_count(&self) -> usize {
        self.values.len()
    }

    /// Fraction of samples ≤ x.
    pub fn eval(&self, x: f64) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        self.values.partition_point(|&v| v <= x) as f64 / self.values.len() as f64
    }

    pub fn merge(&self, other: &EmpiricalCdf) -> EmpiricalCdf {
        let mut v = self.values.clone();
        v.extend_from_slice(&other.values);
        EmpiricalCdf::new(v)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        let n = self.values.len() as f64;
        let mu = self.mean();
        self.values.iter().map(|v| (v - mu) * (v - mu)).sum::<f64>() / (n - 1.0)
    }
}

/// max |F_n(x) − F(x)| over the distinct sample values x. The statistics
/// live on a lattice, so the comparison is made where the law is observed.
pub fn ks_distance<F: FnMut(f64) -> f64>(ecdf: &EmpiricalCdf, mut cdf: F) -> f64 {
    let v = &ecdf.values;
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        d = d.max((j as f64 / n - cdf(v[i])).abs());
        i = j;
    }
    d
}

/// Limit laws the scaled statistics are compared with.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Limit {
    F1,
    F2,
    F4,
    F1Squared,
    Square(f64),
    Diamond(f64),
    Normal,
}

impl Limit {
    pub fn parse(s: &str) -> Result<Self> {
        let w = |t: &str| t.parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad w in limit {s:?}")));
        Ok(match s {
            "F1" => Limit::F1,
            "F2" => Limit::F2,
            "F4" => Limit::F4,
            "F1sq" => Limit::F1Squared,
            "normal" => Limit::Normal,
            _ if s.starts_with("Fsq:") => Limit::Square(w(&s[4..])?),
            _ if s.starts_with("Fdia:") => Limit::Diamond(w(&s[5..])?),
            _ => return Err(Error::InvalidArgument(format!("unknown limit {s:?}"))),
        })
    }

    pub fn cdf(self, grid: &PiiGrid, x: f64) -> Result<f64> {
        Ok(match self {
            Limit::F1 => grid.eval_tw(x, Ensemble::Goe),
            Limit::F2 => grid.eval_tw(x, Ensemble::Gue),
            Limit::F4 => grid.eval_tw(x, Ensemble::Gse),
            Limit::F1Squared => grid.eval_tw(x, Ensemble::Goe).powi(2),
            Limit::Square(w) => lax::f_square(grid, x, w)?,
            Limit::Diamond(w) => lax::f_diamond(grid, x, w)?,
            Limit::Normal => normal_cdf(x),
        })
    }

    /// Mean and variance, from E X = ∫₀^∞ (1−F) − ∫_{−∞}^0 F and the
    /// matching second-moment integral, by Simpson's rule on [−12, 10].
    pub fn mean_var(self, grid: &PiiGrid) -> Result<(f64, f64)> {
        match self {
            Limit::Normal => return Ok((0.0, 1.0)),
            Limit::F1 => return Ok(grid.tw_mean_var(Ensemble::Goe)),
            Limit::F2 => return Ok(grid.tw_mean_var(Ensemble::Gue)),
            Limit::F4 => return Ok(grid.tw_mean_var(Ensemble::Gse)),
            _ => {}
        }
        // the first integrand jumps by 1 at x = 0, so each half-line gets its own rule
        let per_unit = if matches!(self, Limit::F1Squared) { 100 } else { 10 };
        let (mut m1, mut m2) = (0.0, 0.0);
        for (a, b) in [(-12.0, 0.0), (0.0, 10.0)] {
            let steps = 2 * ((b - a) as usize * per_unit / 2);
            let h = (b - a) / steps as f64;
            for k in 0..=steps {
                let x = a + k as f64 * h;
                let f = self.cdf(grid, x)?;
                let wgt = if k == 0 || k == steps { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
                let (g1, g2) = if a >= 0.0 { (1.0 - f, 2.0 * x * (1.0 - f)) } else { (-f, -2.0 * x * f) };
                m1 += wgt * g1 * h / 3.0;
                m2 += wgt * g2 * h / 3.0;
            }
        }
        Ok((m1, m2 - m1 * m1))
    }
}

/// Calls `f` on every signed involution of ±1..±big_n, realized on 2·big_n
/// letters, together with its counts (pairs, m₊, m₋).
pub fn for_each_signed_involution(big_n: usize, mut f: impl FnMut(&[usize], usize, usize, usize)) {
    let mut images = vec![0i64; big_n];
    walk_signed(&mut images, (0, 0, 0), &mut f);
}

fn walk_signed(images: &mut [i64], counts: (usize, usize, usize), f: &mut impl FnMut(&[usize], usize, usize, usize)) {
    let Some(a) = images.iter().position(|&y| y == 0) else {
        f(&realize_signed(images), counts.0, counts.1, counts.2);
        return;
    };
    let x = a as i64 + 1;
    images[a] = x;
    walk_signed(images, (counts.0, counts.1 + 1, counts.2), f);
    images[a] = -x;
    walk_signed(images, (counts.0, counts.1, counts.2 + 1), f);
    for b in a + 1..images.len() {
        if images[b] != 0 {
            continue;
        }
        let y = b as i64 + 1;
        for s in [1, -1] {
            images[a] = s * y;
            images[b] = s * x;
            walk_signed(images, (counts.0 + 1, counts.1, counts.2), f);
        }
        images[b] = 0;
    }
    images[a] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(lis(&[0, 1, 2, 3]), 4);
        assert_eq!(lds(&[0, 1, 2, 3]), 1);
        assert_eq!((lis(&[1, 0]), lds(&[1, 0])), (1, 2));
        let mut rng = shard_rng(1, 0);
        assert_eq!(sample_involution(0, 5, &mut rng), vec![0, 1, 2, 3, 4]);
        assert_eq!(sample_point_process(0, 3, &mut rng), vec![0, 1, 2]);
        assert_eq!(sample_signed_involution(0, 3, 0, &mut rng), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(sample_uniform_involution(1, &mut rng), vec![0]);
    }

    #[test]
    fn signed_enumeration_counts() {
        // T(k) = 2T(k−1) + 2(k−1)T(k−2)
        let expect = [1usize, 2, 6, 20, 76, 312];
        for (k, &e) in expect.iter().enumerate() {
            let mut c = 0;
            for_each_signed_involution(k, |p, _, _, _| {
                assert!(p.iter().enumerate().all(|(i, &j)| p[j] == i));
                c += 1;
            });
            assert_eq!(c, e, "k={k}");
        }
    }

    #[test]
    fn rules_floor() {
        let s = EnsembleSpec::involution(2000, MRule::Alpha(1.0), 0);
        assert_eq!(s.resolve().unwrap().m, 63);
        let s = EnsembleSpec::involution(2000, MRule::W(0.5), 0);
        assert_eq!(s.resolve().unwrap().m, (63.245_553_203_367_59f64 - 4000f64.cbrt()).floor() as usize);
        assert!(EnsembleSpec::involution(8, MRule::W(5.0), 0).resolve().is_err());
    }
}
