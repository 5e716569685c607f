//! Smith normal form with unimodular transforms.
//!
//! Pivoting picks the smallest nonzero absolute entry of the remaining block.
//! Row operations are mirrored into `U`, column operations into `V`, so the
//! result always satisfies `U · A · V = D` exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries `d₁ | d₂ | …`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d
            .diagonal_entries()
            .into_iter()
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Structure of `ℤ^rows / A·ℤ^cols`.
    pub fn cokernel(&self) -> Cokernel {
        let factors = self.invariant_factors();
        let free_rank = self.d.rows() - factors.len();
        Cokernel {
            free_rank,
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }
}

/// A finitely generated abelian group `ℤ^free_rank ⊕ ⊕ ℤ/tᵢ`, with `t₁ | t₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl Cokernel {
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            // Pivot must divide the rest of the block; otherwise fold the
            // offending row in and reduce again.
            let pivot = d[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => {
                    if pivot.is_negative() {
                        d.negate_row(t);
                        u.negate_row(t);
                    }
                    break;
                }
            }
        }
    }
    finish(u, d, v)
}

fn finish(u: IntegerMatrix, d: IntegerMatrix, v: IntegerMatrix) -> SmithDecomposition {
    SmithDecomposition { u, d, v }
}

fn smallest_nonzero(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d[(i, j)].abs();
            if x.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, b)| x < *b) {
                best = Some(((i, j), x));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Convenience: the cokernel of `A` as an abstract group.
pub fn cokernel(a: &IntegerMatrix) -> Cokernel {
    smith_normal_form(a).cokernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn check(a: &IntegerMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        let prod = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.d);
        assert!(s.d.is_diagonal());
        assert!(s.u.determinant().unwrap().abs().is_one());
        assert!(s.v.determinant().unwrap().abs().is_one());
        let diag = s.d.diagonal_entries();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntegerMatrix::identity(3));
        assert_eq!(s.d, IntegerMatrix::identity(3));
        assert_eq!(s.u, IntegerMatrix::identity(3));
        assert_eq!(s.v, IntegerMatrix::identity(3));
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.d, IntegerMatrix::diagonal(&[2, 4]));
    }

    #[test]
    fn unimodular_diagonal_normalizes_signs() {
        let s = check(&IntegerMatrix::diagonal(&[-1, -1, 1]));
        assert_eq!(s.d, IntegerMatrix::identity(3));
    }

    #[test]
    fn rectangular_and_zero_inputs() {
        let s = check(&m(&[vec![0, 0, 0], vec![0, 0, 0]]));
        assert_eq!(s.rank(), 0);
        assert_eq!(s.cokernel().free_rank, 2);

        let s = check(&m(&[vec![2, 0, 0], vec![0, 3, 0]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(1), BigInt::from(6)]);

        let s = check(&m(&[vec![4], vec![6], vec![10]]));
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2)]);
        let c = s.cokernel();
        assert_eq!(c.free_rank, 2);
        assert_eq!(c.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn divisibility_fix_up_is_exercised() {
        // diag(2,3) is diagonal but not in normal form.
        let s = check(&IntegerMatrix::diagonal(&[2, 3]));
        assert_eq!(s.d, IntegerMatrix::diagonal(&[1, 6]));
    }
}
