//! Brute-force oracles shared by the property tests and the acceptance run.
//!
//! None of these call into the library's reduction algorithms; they work on
//! small `i64` matrices by enumeration.

#![allow(dead_code)]

use std::collections::HashSet;

use kcontact_core::lattice::IntegerMatrix;
use num_bigint::BigInt;
use rand::Rng;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn to_matrix(rows: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_rows(rows).expect("rectangular")
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|x| BigInt::from(*x)).collect()
}

pub fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("fits in i64")).collect()
}

/// Laplace expansion along the first row.
pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// `dₖ` = gcd of all `k × k` minors, for `k = 1..=min(rows, cols)`.
pub fn determinantal_divisors(a: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    (1..=r.min(c))
        .map(|k| {
            let mut g = 0;
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                    g = gcd(g, det(&sub));
                }
            }
            g
        })
        .collect()
}

/// Invariant factors `sₖ = dₖ / dₖ₋₁` up to the rank.
pub fn invariant_factors_by_minors(a: &[Vec<i64>]) -> Vec<i64> {
    let d = determinantal_divisors(a);
    let mut out = Vec::new();
    let mut prev = 1;
    for dk in d {
        if dk == 0 {
            break;
        }
        out.push(dk / prev);
        prev = dk;
    }
    out
}

/// Subgroup of `⊕ ℤ/mᵢ` generated by `gens`, by breadth-first closure.
pub fn generated_subgroup(gens: &[Vec<i64>], moduli: &[i64]) -> HashSet<Vec<i64>> {
    let zero = vec![0; moduli.len()];
    let mut seen = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y: Vec<i64> = x
                .iter()
                .zip(g)
                .zip(moduli)
                .map(|((a, b), m)| (a + b).rem_euclid(*m))
                .collect();
            if seen.insert(y.clone()) {
                queue.push(y);
            }
        }
    }
    seen
}

/// Is `x ↦ (x·A_{·i} mod mᵢ)` onto? The image is generated by the rows of `A`.
pub fn surjects_by_enumeration(a: &[Vec<i64>], moduli: &[i64]) -> bool {
    let order: i64 = moduli.iter().product();
    generated_subgroup(a, moduli).len() as i64 == order
}

/// Finite cokernel `ℤⁿ / A·ℤᶜ` described by `k ↦ |{x : kx = 0}|` for every
/// `k | N`, where `N` is the gcd of the maximal minors, so that `N·ℤⁿ ⊂ A·ℤᶜ`.
/// Cosets are enumerated inside `(ℤ/N)ⁿ`. Returns `None` when the cokernel is
/// infinite or `Nⁿ` exceeds `limit`.
pub fn cokernel_torsion_profile(a: &[Vec<i64>], limit: usize) -> Option<Vec<(i64, usize)>> {
    let n = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if n > cols {
        return None;
    }
    let big_n = *determinantal_divisors(a).get(n - 1)?;
    if big_n == 0 {
        return None;
    }
    let space = (big_n as usize).checked_pow(n as u32).filter(|s| *s <= limit)?;
    let moduli = vec![big_n; n];
    let columns: Vec<Vec<i64>> = (0..cols).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    let lattice = generated_subgroup(&columns, &moduli);
    let mut profile = Vec::new();
    for k in (1..=big_n).filter(|k| big_n % k == 0) {
        let mut count = 0;
        for code in 0..space {
            let mut c = code;
            let x: Vec<i64> = (0..n)
                .map(|_| {
                    let d = c % big_n as usize;
                    c /= big_n as usize;
                    d as i64
                })
                .collect();
            let kx: Vec<i64> = x.iter().map(|v| (k * v).rem_euclid(big_n)).collect();
            if lattice.contains(&kx) {
                count += 1;
            }
        }
        profile.push((k, count / lattice.len()));
    }
    Some(profile)
}

/// The same profile predicted from a list of cyclic orders.
pub fn profile_of(torsion: &[i64], big_n: i64) -> Vec<(i64, usize)> {
    (1..=big_n)
        .filter(|k| big_n % k == 0)
        .map(|k| (k, torsion.iter().map(|t| gcd(k, *t) as usize).product()))
        .collect()
}

/// Counts of positive, zero and negative eigenvalues in floating point.
pub fn eigen_inertia(g: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = g.len();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| g[i][j] as f64);
    let eig = nalgebra::SymmetricEigen::new(m).eigenvalues;
    let tol = 1e-9;
    (
        eig.iter().filter(|x| **x > tol).count(),
        eig.iter().filter(|x| x.abs() <= tol).count(),
        eig.iter().filter(|x| **x < -tol).count(),
    )
}

pub fn random_matrix<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let r = rng.random_range(1..=max_dim);
    let c = rng.random_range(1..=max_dim);
    (0..r)
        .map(|_| (0..c).map(|_| rng.random_range(-bound..=bound)).collect())
        .collect()
}

pub fn random_symmetric<R: Rng>(rng: &mut R, max_dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let n = rng.random_range(1..=max_dim);
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.random_range(-bound..=bound);
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    g
}

/// Product of random elementary matrices, so `det = ±1`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut p: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        if i == j {
            for row in p.iter_mut() {
                row[i] = -row[i];
            }
        } else {
            let k = rng.random_range(-2..=2);
            for row in p.iter_mut() {
                row[j] += k * row[i];
            }
        }
    }
    p
}

pub fn congruent(g: &[Vec<i64>], p: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = g.len();
    let mut out = vec![vec![0; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .map(|(a, b)| p[a][i] * g[a][b] * p[b][j])
                .sum();
        }
    }
    out
}

/// Random `rows × k` matrix and moduli `≥ 2` with `∏ mᵢ ≤ max_order`.
pub fn random_surjection_case<R: Rng>(rng: &mut R, max_order: i64) -> (Vec<Vec<i64>>, Vec<i64>) {
    let k = rng.random_range(1..=4);
    let mut moduli = Vec::new();
    let mut order = 1;
    for _ in 0..k {
        let cap = max_order / order;
        if cap < 2 {
            break;
        }
        let m = rng.random_range(2..=cap.min(60));
        moduli.push(m);
        order *= m;
    }
    let rows = rng.random_range(1..=4);
    let a = (0..rows)
        .map(|_| moduli.iter().map(|_| rng.random_range(-9..=9)).collect())
        .collect();
    (a, moduli)
}

/// `m₁² − (4g₁ + 6)m₁ + 4(g₁ − 1)²`.
pub fn quadratic_value(g1: i64, m1: i64) -> i64 {
    m1 * m1 - (4 * g1 + 6) * m1 + 4 * (g1 - 1) * (g1 - 1)
}

/// Genus vector of the constructed 36-surface manifold.
pub fn x_genera() -> Vec<u32> {
    let mut g = Vec::new();
    for _ in 0..3 {
        g.extend([1; 9]);
        g.push(3);
    }
    g.extend([1, 1, 2, 1, 1, 2]);
    g
}
