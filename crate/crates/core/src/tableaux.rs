//! Partitions, standard Young tableaux counts and exact finite-size laws of
//! the rows and columns of random involutions.

use crate::error::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Largest 2n + m handled by exact enumeration.
pub const SIZE_CAP: usize = 40;
/// Largest 2n + m handled by brute-force involution enumeration.
pub const BRUTE_FORCE_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!("not a partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// λ_k with 1-based k; zero beyond the last row.
    pub fn row(&self, k: usize) -> usize {
        self.parts.get(k.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// λᵗ_k with 1-based k.
    pub fn column(&self, k: usize) -> usize {
        if k == 0 {
            return 0;
        }
        self.parts.iter().take_while(|&&p| p >= k).count()
    }

    /// λ₁ − λ₂ + λ₃ − ⋯, the number of fixed points of any involution of this shape.
    pub fn alternating_sum(&self) -> usize {
        let (odd, even) = self.parts.iter().enumerate().fold((0, 0), |(o, e), (i, &p)| {
            if i % 2 == 0 {
                (o + p, e)
            } else {
                (o, e + p)
            }
        });
        odd - even
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.row(1);
        Partition { parts: (1..=width).map(|k| self.column(k)).collect() }
    }
}

/// d_λ by the hook-length formula.
pub fn syt_count(p: &Partition) -> BigUint {
    let conj = p.conjugate();
    let mut hooks = BigUint::one();
    for (i, &row) in p.parts().iter().enumerate() {
        for j in 0..row {
            let hook = row - j + conj.parts()[j] - i - 1;
            hooks *= hook;
        }
    }
    factorial(p.size()) / hooks
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// All partitions of `n` with largest part at most `max_part`, in
/// lexicographically decreasing order.
pub fn partitions_bounded(n: usize, max_part: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, max_part.min(n), &mut cur, &mut out);
    out
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

pub fn partitions(n: usize) -> Vec<Partition> {
    partitions_bounded(n, n)
}

/// Y_{n,m}: partitions of 2n + m whose alternating sum is m.
pub fn enumerate_y(n: usize, m: usize) -> Vec<Partition> {
    partitions(2 * n + m).into_iter().filter(|p| p.alternating_sum() == m).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Row,
    Column,
}

impl Side {
    fn statistic(self, p: &Partition, k: usize) -> usize {
        match self {
            Side::Row => p.row(k),
            Side::Column => p.column(k),
        }
    }
}

/// Exact law of λ_k or λᵗ_k, as the CDF l ↦ P(· ≤ l) for l = 0..=size.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactCdf {
    pub n: usize,
    pub m: usize,
    pub side: Side,
    pub k: usize,
    pub values: Vec<BigRational>,
}

impl ExactCdf {
    pub fn at(&self, l: usize) -> BigRational {
        self.values.get(l).cloned().unwrap_or_else(BigRational::one)
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 1 || k == 2 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("row/column index k={k} must be 1 or 2")))
    }
}

fn check_size(size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::TooLarge { size, cap })
    } else {
        Ok(())
    }
}

fn weighted_cdf(shapes: &[Partition], weights: &[BigUint], side: Side, k: usize, size: usize) -> Vec<BigRational> {
    let mut hist = vec![BigUint::zero(); size + 1];
    for (p, w) in shapes.iter().zip(weights) {
        hist[side.statistic(p, k)] += w;
    }
    let total: BigUint = hist.iter().sum();
    let total = BigInt::from(total);
    let mut acc = BigUint::zero();
    hist.into_iter()
        .map(|h| {
            acc += h;
            BigRational::new(BigInt::from(acc.clone()), total.clone())
        })
        .collect()
}

/// Full CDF table of the k-th row (or column) of a uniform element of S_{n,m}.
pub fn exact_cdf_table(n: usize, m: usize, side: Side, k: usize) -> Result<ExactCdf> {
    check_k(k)?;
    let size = 2 * n + m;
    check_size(size, SIZE_CAP)?;
    let shapes = enumerate_y(n, m);
    let weights: Vec<BigUint> = shapes.iter().map(syt_count).collect();
    let values = weighted_cdf(&shapes, &weights, side, k, size);
    Ok(ExactCdf { n, m, side, k, values })
}

/// P(λ_k ≤ l) (row) or P(λᵗ_k ≤ l) (column) for a uniform involution in S_{n,m}.
pub fn exact_cdf(n: usize, m: usize, side: Side, k: usize, l: usize) -> Result<BigRational> {
    Ok(exact_cdf_table(n, m, side, k)?.at(l))
}

/// P(λ_k ≤ l) under the 1-Plancherel measure on partitions of n.
pub fn plancherel_beta1_cdf(n: usize, k: usize, l: usize) -> Result<BigRational> {
    check_k(k)?;
    check_size(n, SIZE_CAP)?;
    let shapes = partitions(n);
    let weights: Vec<BigUint> = shapes.iter().map(syt_count).collect();
    let values = weighted_cdf(&shapes, &weights, Side::Row, k, n);
    Ok(values.get(l).cloned().unwrap_or_else(BigRational::one))
}

/// RSK insertion tableau shape of a permutation given by its 0-based images.
pub fn rsk_shape(perm: &[usize]) -> Result<Partition> {
    check_permutation(perm)?;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for &x in perm {
        let mut x = x;
        let mut r = 0;
        loop {
            if r == rows.len() {
                rows.push(vec![x]);
                break;
            }
            let row = &mut rows[r];
            let pos = row.partition_point(|&y| y < x);
            if pos == row.len() {
                row.push(x);
                break;
            }
            x = core::mem::replace(&mut row[pos], x);
            r += 1;
        }
    }
    Ok(Partition { parts: rows.iter().map(Vec::len).collect() })
}

pub fn check_permutation(perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; perm.len()];
    for &x in perm {
        if x >= perm.len() || seen[x] {
            return Err(Error::MalformedPermutation(format!("{perm:?} is not a bijection on 0..{}", perm.len())));
        }
        seen[x] = true;
    }
    Ok(())
}

/// Calls `f` on every involution of `size` letters with exactly `m` fixed points.
pub fn for_each_involution(size: usize, m: usize, mut f: impl FnMut(&[usize])) {
    if m > size || (size - m) % 2 != 0 {
        return;
    }
    let mut perm = vec![usize::MAX; size];
    walk(&mut perm, 0, m, &mut f);
}

fn walk(perm: &mut [usize], start: usize, fixed_left: usize, f: &mut impl FnMut(&[usize])) {
    let Some(i) = (start..perm.len()).find(|&i| perm[i] == usize::MAX) else {
        if fixed_left == 0 {
            f(perm);
        }
        return;
    };
    let free = perm[i..].iter().filter(|&&x| x == usize::MAX).count();
    if fixed_left > 0 {
        perm[i] = i;
        walk(perm, i + 1, fixed_left - 1, f);
        perm[i] = usize::MAX;
    }
    if free > fixed_left {
        for j in i + 1..perm.len() {
            if perm[j] == usize::MAX {
                perm[i] = j;
                perm[j] = i;
                walk(perm, i + 1, fixed_left, f);
                perm[j] = usize::MAX;
                perm[i] = usize::MAX;
            }
        }
    }
}

/// Exact CDF by enumerating S_{n,m} and reading shapes off RSK.
pub fn brute_force_cdf(n: usize, m: usize, side: Side, k: usize, l: usize) -> Result<BigRational> {
    check_k(k)?;
    let size = 2 * n + m;
    check_size(size, BRUTE_FORCE_CAP)?;
    let (mut hit, mut total) = (0u64, 0u64);
    for_each_involution(size, m, |perm| {
        let shape = rsk_shape(perm).expect("involution is a permutation");
        total += 1;
        if side.statistic(&shape, k) <= l {
            hit += 1;
        }
    });
    Ok(BigRational::new(hit.into(), total.into()))
}

/// |S_{n,m}| = (2n+m)!/(n! m! 2ⁿ).
pub fn involution_class_count(n: usize, m: usize) -> BigUint {
    factorial(2 * n + m) / (factorial(n) * factorial(m) * (BigUint::one() << n))
}

/// Number of involutions of N letters (telephone numbers).
pub fn count_involutions(big_n: usize) -> BigUint {
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    for k in 2..=big_n {
        let next = &cur + &prev * (k - 1);
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(part(&[4, 3, 1]).conjugate(), part(&[3, 2, 2, 1]));
        assert_eq!(part(&[5]).conjugate(), part(&[1, 1, 1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn syt_examples() {
        assert_eq!(syt_count(&part(&[4, 3, 1])), BigUint::from(70u32));
        assert_eq!(syt_count(&part(&[6])), BigUint::one());
        assert_eq!(syt_count(&part(&[1, 1, 1, 1])), BigUint::one());
        assert_eq!(syt_count(&Partition::empty()), BigUint::one());
    }

    #[test]
    fn rejects_bad_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn y_examples() {
        assert_eq!(enumerate_y(1, 1), vec![part(&[2, 1]), part(&[1, 1, 1])]);
        assert_eq!(enumerate_y(0, 0), vec![Partition::empty()]);
        assert_eq!(enumerate_y(1, 0), vec![part(&[1, 1])]);
    }

    #[test]
    fn exact_cdf_examples() {
        assert_eq!(exact_cdf(1, 1, Side::Row, 1, 1).unwrap(), q(1, 3));
        assert_eq!(exact_cdf(1, 1, Side::Row, 1, 3).unwrap(), q(1, 1));
        assert!(matches!(exact_cdf(20, 1, Side::Row, 1, 3), Err(Error::TooLarge { size: 41, cap: 40 })));
        assert!(exact_cdf(1, 1, Side::Row, 3, 1).is_err());
    }

    #[test]
    fn plancherel_examples() {
        assert_eq!(plancherel_beta1_cdf(3, 1, 1).unwrap(), q(1, 4));
        assert_eq!(plancherel_beta1_cdf(1, 1, 1).unwrap(), q(1, 1));
        assert_eq!(plancherel_beta1_cdf(3, 2, 0).unwrap(), q(1, 4));
    }

    #[test]
    fn rsk_examples() {
        assert_eq!(rsk_shape(&[0, 1, 2, 3, 4]).unwrap(), part(&[5]));
        assert_eq!(rsk_shape(&[4, 3, 2, 1, 0]).unwrap(), part(&[1, 1, 1, 1, 1]));
        assert_eq!(rsk_shape(&[0, 2, 1]).unwrap(), part(&[2, 1]));
        assert!(matches!(rsk_shape(&[0, 0]), Err(Error::MalformedPermutation(_))));
    }

    #[test]
    fn brute_force_examples() {
        let mut count = 0;
        for_each_involution(3, 1, |_| count += 1);
        assert_eq!(count, 3);
        assert_eq!(involution_class_count(1, 1), BigUint::from(3u32));
        assert_eq!(brute_force_cdf(1, 1, Side::Row, 1, 1).unwrap(), q(1, 3));
        for l in 0..7 {
            let expect = if l >= 6 { 1 } else { 0 };
            assert_eq!(brute_force_cdf(0, 6, Side::Row, 1, l).unwrap(), q(expect, 1));
        }
    }

    #[test]
    fn involution_counts() {
        assert_eq!(count_involutions(3), BigUint::from(4u32));
        assert_eq!(count_involutions(0), BigUint::one());
        let by_class: BigUint = (0..=5).map(|k| involution_class_count(k, 10 - 2 * k)).sum();
        assert_eq!(count_involutions(10), by_class);
    }
}
