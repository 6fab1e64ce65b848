//! Independent brute-force oracles checked against the library.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::Ratio;
use symrep::characters::{character_table, fixed_point_character, mn_character};
use symrep::markov::{compose, fourier_scalar, lane_rng, sample_class, ClassMeasure};
use symrep::partitions::{class_size, cycle_type_of, enumerate_partitions, fixed_points, syt_count, truncate};
use symrep::seqcomb::binomial;
use symrep::tensor::{a_multiplicity, b_multiplicity, closed_form_bound, oracle_multiplicity, RepKind};
use symrep::Partition;

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in all_perms(n - 1) {
        for pos in 0..n {
            let mut v = perm.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Every multiset of positive integers summing to `n`, by unrestricted
/// compositions filtered through a set.
fn brute_partitions(n: usize) -> BTreeSet<Vec<usize>> {
    fn compositions(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    compositions(n)
        .into_iter()
        .map(|mut c| {
            c.sort_unstable_by(|a, b| b.cmp(a));
            c
        })
        .collect()
}

/// p(n) from Euler's pentagonal recurrence.
fn euler_partition_count(n: usize) -> i64 {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[m] += sign * p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                p[m] += sign * p[m - g2];
            }
            k += 1;
        }
    }
    p[n]
}

/// Counts standard fillings by placing n, n-1, ... into removable corners.
fn brute_syt(shape: &[usize]) -> u64 {
    if shape.iter().all(|&x| x == 0) {
        return 1;
    }
    let mut total = 0;
    for i in 0..shape.len() {
        let is_corner = shape[i] > 0 && (i + 1 == shape.len() || shape[i + 1] < shape[i]);
        if is_corner {
            let mut s = shape.to_vec();
            s[i] -= 1;
            total += brute_syt(&s);
        }
    }
    total
}

#[test]
fn partitions_match_brute_force() {
    for n in 0..=12 {
        let got: Vec<Vec<usize>> = enumerate_partitions(n).iter().map(|l| l.parts().to_vec()).collect();
        let unique: BTreeSet<_> = got.iter().cloned().collect();
        assert_eq!(unique.len(), got.len(), "duplicates at n={n}");
        assert_eq!(unique, brute_partitions(n), "n={n}");
        assert_eq!(got.len() as i64, euler_partition_count(n));
    }
    assert_eq!(enumerate_partitions(8).len(), 22);
}

#[test]
fn hook_lengths_match_filling_count() {
    for n in 0..=9 {
        for lambda in enumerate_partitions(n) {
            assert_eq!(syt_count::<i64>(&lambda) as u64, brute_syt(lambda.parts()), "{lambda}");
        }
    }
    assert_eq!(brute_syt(&[3, 2]), 5);
}

#[test]
fn sum_of_squared_degrees_and_class_sizes_is_group_order() {
    for n in 0..=10 {
        let order: BigInt = (1..=n).map(BigInt::from).product();
        let sq: BigInt = enumerate_partitions(n)
            .iter()
            .map(|l| {
                let f = syt_count::<BigInt>(l);
                &f * &f
            })
            .sum();
        let classes: BigInt = enumerate_partitions(n).iter().map(class_size::<BigInt>).sum();
        assert_eq!(sq, order, "RSK n={n}");
        assert_eq!(classes, order, "classes n={n}");
    }
}

#[test]
fn class_sizes_match_enumeration() {
    for n in 1..=7 {
        let mut counts: HashMap<Partition, i64> = HashMap::new();
        for perm in all_perms(n) {
            *counts.entry(cycle_type_of(&perm)).or_default() += 1;
        }
        for mu in enumerate_partitions(n) {
            assert_eq!(class_size::<i64>(&mu), counts[&mu], "{mu}");
        }
    }
}

#[test]
fn characters_match_permutation_matrix_traces() {
    for n in 2..=5 {
        let std = Partition::standard(n);
        for perm in all_perms(n) {
            // Permutation matrix: entry (i, j) = 1 iff perm(j) = i.
            let trace: i64 = (0..n).map(|i| i64::from(perm[i] == i)).sum();
            let mu = cycle_type_of(&perm);
            assert_eq!(fixed_point_character::<i64>(&mu), trace);
            assert_eq!(mn_character::<i64>(&std, &mu).unwrap(), trace - 1);
        }
    }
}

#[test]
fn defining_rep_decomposes_as_trivial_plus_standard() {
    // Character of the tensor square through explicit Kronecker traces:
    // tr(P ⊗ P) = tr(P)^2. Inner products with the table give multiplicities.
    for n in 2..=5 {
        let t = character_table::<i64>(n).unwrap();
        let perms = all_perms(n);
        let order = perms.len() as i64;
        for lambda in t.shapes() {
            let mut acc1 = 0i64;
            let mut acc2 = 0i64;
            for perm in &perms {
                let mu = cycle_type_of(perm);
                let tr = fixed_points(&mu) as i64;
                let chi = *t.value(lambda, &mu).unwrap();
                acc1 += tr * chi;
                acc2 += tr * tr * chi;
            }
            let expect1 = i64::from(lambda == &Partition::row(n) || lambda == &Partition::standard(n));
            assert_eq!(acc1 / order, expect1);
            assert_eq!(acc2 % order, 0);
            assert_eq!(
                acc2 / order,
                oracle_multiplicity::<i64>(lambda, 2, RepKind::Defining).unwrap()
            );
        }
    }
    assert_eq!(mn_character::<i64>(&p(&[2, 2]), &p(&[2, 1, 1])).unwrap(), 0);
}

#[test]
fn binomial_transform_links_a_and_b() {
    for n in 1..=7 {
        for lambda in enumerate_partitions(n) {
            let a: Vec<BigInt> = (0..=n)
                .map(|s| oracle_multiplicity::<BigInt>(&lambda, s, RepKind::Defining).unwrap())
                .collect();
            for r in 1..=closed_form_bound(&lambda) {
                let transformed: BigInt = (0..=r)
                    .map(|s| {
                        let term = binomial::<BigInt>(r, s) * &a[s];
                        if (r - s) % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum();
                assert_eq!(
                    b_multiplicity::<BigInt>(&lambda, r).unwrap(),
                    transformed,
                    "{lambda} r={r}"
                );
                assert_eq!(
                    oracle_multiplicity::<BigInt>(&lambda, r, RepKind::Standard).unwrap(),
                    transformed
                );
            }
        }
    }
}

#[test]
fn multiplicities_vanish_below_truncated_weight() {
    for n in 1..=8 {
        for lambda in enumerate_partitions(n) {
            let m = truncate(&lambda).weight();
            for r in 0..m {
                assert_eq!(oracle_multiplicity::<i64>(&lambda, r, RepKind::Defining).unwrap(), 0);
                assert_eq!(oracle_multiplicity::<i64>(&lambda, r, RepKind::Standard).unwrap(), 0);
                if r >= 1 && r <= closed_form_bound(&lambda) {
                    assert_eq!(a_multiplicity::<i64>(&lambda, r).unwrap(), 0);
                    assert_eq!(b_multiplicity::<i64>(&lambda, r).unwrap(), 0);
                }
            }
        }
    }
}

#[test]
fn fourier_scalar_matches_explicit_standard_matrices() {
    // Average of the permutation matrices over all transpositions of S_4,
    // restricted to the sum-zero subspace spanned by e_i - e_3.
    let n = 4;
    let transpositions: Vec<Vec<usize>> = all_perms(n)
        .into_iter()
        .filter(|q| cycle_type_of(q) == p(&[2, 1, 1]))
        .collect();
    assert_eq!(transpositions.len(), 6);
    let count = Ratio::from_integer(transpositions.len() as i64);
    let mut m = vec![vec![Ratio::from_integer(0i64); n]; n];
    for t in &transpositions {
        for j in 0..n {
            m[t[j]][j] += Ratio::from_integer(1) / count;
        }
    }
    let scalar = fourier_scalar(&ClassMeasure::<i64>::point_mass(p(&[2, 1, 1])), &p(&[3, 1]))
        .unwrap()
        .value;
    assert_eq!(scalar, Ratio::new(1, 3));
    for i in 0..n - 1 {
        let v: Vec<Ratio<i64>> = (0..n)
            .map(|k| Ratio::from_integer(i64::from(k == i) - i64::from(k == n - 1)))
            .collect();
        let mv: Vec<Ratio<i64>> = (0..n).map(|r| (0..n).map(|c| m[r][c] * v[c]).sum()).collect();
        let sv: Vec<Ratio<i64>> = v.iter().map(|x| x * scalar).collect();
        assert_eq!(mv, sv);
    }
}

#[test]
fn sample_class_is_uniform_on_its_class() {
    // 10^5 draws of cycle type (3,2) in S_5: 20 elements, chi-square with 19
    // degrees of freedom. The 4σ band on the statistic: mean 19, sd sqrt(38).
    let mu = p(&[3, 2]);
    let mut rng = lane_rng(2024, 0);
    let draws = 100_000;
    let mut freq: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for _ in 0..draws {
        let perm = sample_class(&mu, &mut rng);
        assert_eq!(cycle_type_of(&perm), mu);
        *freq.entry(perm).or_default() += 1;
    }
    assert_eq!(freq.len(), 20);
    let expected = draws as f64 / 20.0;
    let chi2: f64 = freq.values().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    assert!(chi2 <= 19.0 + 4.0 * 38f64.sqrt(), "chi2 = {chi2}");
}

#[test]
fn left_multiplication_convention() {
    let tau = vec![1, 0, 2];
    let x = vec![0, 2, 1];
    // (τx)(i) = τ(x(i))
    assert_eq!(compose(&tau, &x), vec![1, 2, 0]);
}
