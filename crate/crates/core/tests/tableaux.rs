use involis::montecarlo::{lds, lis, sample_involution, shard_rng};
use involis::tableaux::{
    brute_force_cdf, count_involutions, enumerate_y, exact_cdf_table, factorial, involution_class_count, partitions,
    plancherel_beta1_cdf, rsk_shape, syt_count, Side,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn hook_length_matches_brute_force() {
    let mut checked = 0;
    for size in 0..=10 {
        for n in 0..=size / 2 {
            let m = size - 2 * n;
            for side in [Side::Row, Side::Column] {
                for k in [1, 2] {
                    let table = exact_cdf_table(n, m, side, k).unwrap();
                    for l in 0..=size + 1 {
                        let brute = brute_force_cdf(n, m, side, k, l).unwrap();
                        assert_eq!(table.at(l), brute, "n={n} m={m} {side:?} k={k} l={l}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn class_sizes_from_dimensions() {
    for size in 0..=20 {
        for n in 0..=size / 2 {
            let m = size - 2 * n;
            let total: BigUint = enumerate_y(n, m).iter().map(syt_count).sum();
            let expect = factorial(size) / (factorial(n) * factorial(m) * (BigUint::one() << n));
            assert_eq!(total, expect, "n={n} m={m}");
            assert_eq!(total, involution_class_count(n, m));
        }
    }
}

#[test]
fn dimensions_square_sum_to_factorial() {
    for size in 0..=14 {
        let s: BigUint = partitions(size).iter().map(|p| syt_count(p).pow(2)).sum();
        assert_eq!(s, factorial(size));
        let t: BigUint = partitions(size).iter().map(syt_count).sum();
        assert_eq!(t, count_involutions(size));
    }
}

#[test]
fn fixed_point_free_rows_pair_up() {
    // all columns are even when m = 0, so λ₁ = λ₂
    for n in 1..=6 {
        for p in enumerate_y(n, 0) {
            assert_eq!(p.row(1), p.row(2), "{p:?}");
        }
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (0..=12).map(|n| partitions(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
}

#[test]
fn exact_table_is_a_cdf() {
    for (n, m) in [(5, 3), (8, 0), (3, 10), (10, 4)] {
        for side in [Side::Row, Side::Column] {
            for k in [1, 2] {
                let t = exact_cdf_table(n, m, side, k).unwrap();
                assert!(t.values.windows(2).all(|w| w[0] <= w[1]));
                assert!(t.values[0] >= BigRational::zero());
                assert_eq!(t.at(2 * n + m), BigRational::one());
            }
        }
    }
}

#[test]
fn plancherel_is_class_mixture() {
    // the β = 1 measure on partitions of N is uniform involutions of N letters
    let big_n = 9;
    for l in 0..=big_n {
        let mut num = BigRational::zero();
        for n in 0..=big_n / 2 {
            let m = big_n - 2 * n;
            let w = BigRational::from_integer(involution_class_count(n, m).into());
            num += w * exact_cdf_table(n, m, Side::Row, 1).unwrap().at(l);
        }
        let mix = num / BigRational::from_integer(count_involutions(big_n).into());
        assert_eq!(mix, plancherel_beta1_cdf(big_n, 1, l).unwrap(), "l={l}");
    }
}

fn permutation(max: usize) -> impl Strategy<Value = Vec<usize>> {
    (0..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn rsk_first_row_and_column(p in permutation(40)) {
        let shape = rsk_shape(&p).unwrap();
        prop_assert_eq!(shape.size(), p.len());
        prop_assert_eq!(shape.row(1), lis(&p));
        prop_assert_eq!(shape.column(1), lds(&p));
    }

    #[test]
    fn rsk_shape_of_inverse(p in permutation(30)) {
        let mut inv = vec![0; p.len()];
        for (i, &x) in p.iter().enumerate() {
            inv[x] = i;
        }
        prop_assert_eq!(rsk_shape(&p).unwrap(), rsk_shape(&inv).unwrap());
    }

    #[test]
    fn involution_shapes_count_fixed_points(n in 0usize..15, m in 0usize..15, seed in any::<u64>()) {
        let perm = sample_involution(n, m, &mut shard_rng(seed, 0));
        let shape = rsk_shape(&perm).unwrap();
        prop_assert_eq!(shape.alternating_sum(), m);
        prop_assert_eq!(shape.conjugate().conjugate(), shape);
    }

    #[test]
    fn conjugate_swaps_rows_and_columns(p in permutation(25)) {
        let shape = rsk_shape(&p).unwrap();
        let rev: Vec<usize> = p.iter().rev().copied().collect();
        prop_assert_eq!(rsk_shape(&rev).unwrap(), shape.conjugate());
    }
}
