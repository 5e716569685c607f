use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntegerMatrix, LatticeError};

/// Inertia of a symmetric form: counts of positive, zero and negative directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignatureTriple {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
}

impl SignatureTriple {
    pub fn new(positive: usize, zero: usize, negative: usize) -> Self {
        Self {
            positive,
            zero,
            negative,
        }
    }

    pub fn dimension(&self) -> usize {
        self.positive + self.zero + self.negative
    }

    /// `positive − negative`, the topologist's signature.
    pub fn index(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Exact inertia by symmetric Gaussian elimination over ℚ.
///
/// A zero diagonal with a nonzero off-diagonal entry `gᵢⱼ` is repaired by the
/// congruence `eᵢ ↦ eᵢ + eⱼ`, which turns the diagonal entry into `2gᵢⱼ`.
pub fn signature(g: &IntegerMatrix) -> Result<SignatureTriple, LatticeError> {
    if !g.is_symmetric() {
        return Err(LatticeError::NotSymmetric);
    }
    let n = g.rows();
    let mut a: Vec<Vec<BigRational>> = g
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut sig = SignatureTriple::new(0, 0, 0);

    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                add_symmetric(&mut a, k, j);
            } else if let Some((i, j)) = off_diagonal_in_block(&a, k) {
                // Row k is zero inside the block; bring a live pair forward.
                add_symmetric(&mut a, i, j);
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else {
                sig.zero += n - k;
                return Ok(sig);
            }
        }
        let pivot = a[k][k].clone();
        debug_assert!(!pivot.is_zero());
        if pivot.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        for i in k + 1..n {
            a[k][i] = BigRational::zero();
            a[i][k] = BigRational::zero();
        }
    }
    Ok(sig)
}

// eᵢ ↦ eᵢ + eⱼ applied on both sides.
fn add_symmetric(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let v = a[j][c].clone();
        a[i][c] += v;
    }
    for r in 0..n {
        let v = a[r][j].clone();
        a[r][i] += v;
    }
}

fn off_diagonal_in_block(a: &[Vec<BigRational>], k: usize) -> Option<(usize, usize)> {
    let n = a.len();
    (k..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !a[i][j].is_zero())
}

/// Signature of a diagonal form can be read off directly; used as a cheap
/// cross-check in reports.
pub fn diagonal_signature(diag: &[BigInt]) -> SignatureTriple {
    let mut s = SignatureTriple::new(0, 0, 0);
    for d in diag {
        if d.is_positive() {
            s.positive += 1;
        } else if d.is_negative() {
            s.negative += 1;
        } else {
            s.zero += 1;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn diagonal_cases() {
        assert_eq!(
            signature(&IntegerMatrix::diagonal(&[1, -1, -1])).unwrap(),
            SignatureTriple::new(1, 0, 2)
        );
        assert_eq!(
            signature(&IntegerMatrix::zeros(2, 2)).unwrap(),
            SignatureTriple::new(0, 2, 0)
        );
    }

    #[test]
    fn hyperbolic_plane_needs_the_congruence() {
        let h = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(signature(&h).unwrap(), SignatureTriple::new(1, 0, 1));
        let three_h = m(&[
            vec![0, 0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0, 1],
            vec![0, 1, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
        ]);
        assert_eq!(signature(&three_h).unwrap(), SignatureTriple::new(3, 0, 3));
    }

    #[test]
    fn zero_leading_row_with_live_block() {
        let g = m(&[vec![0, 0, 0], vec![0, 0, 2], vec![0, 2, 0]]);
        assert_eq!(signature(&g).unwrap(), SignatureTriple::new(1, 1, 1));
    }

    #[test]
    fn e1_lattice() {
        // ⟨1⟩ ⊕ 9⟨−1⟩
        let mut d = vec![1i64];
        d.extend([-1; 9]);
        assert_eq!(
            signature(&IntegerMatrix::diagonal(&d)).unwrap(),
            SignatureTriple::new(1, 0, 9)
        );
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(matches!(
            signature(&m(&[vec![1, 2], vec![3, 4]])),
            Err(LatticeError::NotSymmetric)
        ));
    }
}
