use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntegerMatrix, LatticeError};

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

pub fn lcm_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

/// A nonzero integer vector is primitive when its entries have gcd 1.
pub fn is_primitive(v: &[BigInt]) -> Result<bool, LatticeError> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(LatticeError::IndeterminatePrimitivity);
    }
    Ok(g.is_one())
}

/// Inverse of `j` modulo `m`, normalized into `0 < b < m`.
pub fn mod_inverse(j: &BigInt, m: &BigInt) -> Result<BigInt, LatticeError> {
    if *m < BigInt::from(2) {
        return Err(LatticeError::BadModulus(m.clone()));
    }
    let e = j.extended_gcd(m);
    if !e.gcd.is_one() {
        return Err(LatticeError::NotCoprime {
            value: j.clone(),
            modulus: m.clone(),
        });
    }
    Ok(e.x.mod_floor(m))
}

/// Decides whether `ℤ^rows → ⊕ᵢ ℤ/mᵢ`, `x ↦ (x·Aᵢ mod mᵢ)ᵢ` is onto, where
/// column `i` of `A` holds the values the basis pairs to against target `i`.
///
/// The map is onto exactly when the columns of `[Aᵀ | diag(m)]` generate
/// `ℤ^n`, i.e. when every invariant factor of that block is 1.
pub fn surjects_onto_cyclic_sum(a: &IntegerMatrix, moduli: &[BigInt]) -> Result<bool, LatticeError> {
    if a.cols() != moduli.len() {
        return Err(LatticeError::Shape(format!(
            "{} columns but {} moduli",
            a.cols(),
            moduli.len()
        )));
    }
    if let Some(bad) = moduli.iter().find(|m| **m < BigInt::from(2)) {
        return Err(LatticeError::BadModulus(bad.clone()));
    }
    let n = moduli.len();
    if n == 0 {
        return Ok(true);
    }
    let block = a.transpose().hstack(&IntegerMatrix::diagonal(moduli))?;
    let factors = smith_normal_form(&block).invariant_factors();
    Ok(factors.len() == n && factors.iter().all(|d| d.abs().is_one()))
}

/// Integer square root, `⌊√n⌋` for `n ≥ 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative number");
    n.sqrt()
}

/// Returns `(p, e)` when `n = pᵉ` for a prime `p` and `e ≥ 1`.
pub fn prime_power(n: &BigInt) -> Option<(BigInt, u32)> {
    if *n < BigInt::from(2) {
        return None;
    }
    let p = smallest_prime_factor(n);
    let mut rest = n.clone();
    let mut e = 0;
    while rest.is_multiple_of(&p) {
        rest /= &p;
        e += 1;
    }
    rest.is_one().then_some((p, e))
}

fn smallest_prime_factor(n: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    if n.is_even() {
        return two;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            return d;
        }
        d += &two;
    }
    n.clone()
}

pub fn is_prime(n: &BigInt) -> bool {
    *n >= BigInt::from(2) && smallest_prime_factor(n) == *n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&v(&[1, 0, 0])).unwrap());
        assert!(!is_primitive(&v(&[2, 4, 6])).unwrap());
        // gcd(6,10) = 2, gcd(2,15) = 1
        assert!(is_primitive(&v(&[6, 10, 15])).unwrap());
        assert!(matches!(
            is_primitive(&v(&[0, 0])),
            Err(LatticeError::IndeterminatePrimitivity)
        ));
    }

    #[test]
    fn inverses() {
        for m in 2..20 {
            assert_eq!(
                mod_inverse(&BigInt::from(1), &BigInt::from(m)).unwrap(),
                BigInt::from(1)
            );
        }
        assert_eq!(
            mod_inverse(&BigInt::from(3), &BigInt::from(7)).unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            mod_inverse(&BigInt::from(5), &BigInt::from(8)).unwrap(),
            BigInt::from(5)
        );
        assert_eq!(
            mod_inverse(&BigInt::from(-2), &BigInt::from(7)).unwrap(),
            BigInt::from(3)
        );
        assert!(matches!(
            mod_inverse(&BigInt::from(4), &BigInt::from(6)),
            Err(LatticeError::NotCoprime { .. })
        ));
        assert!(mod_inverse(&BigInt::from(1), &BigInt::from(1)).is_err());
    }

    #[test]
    fn surjectivity_small() {
        let one = IntegerMatrix::from_rows(&[vec![1]]).unwrap();
        let two = IntegerMatrix::from_rows(&[vec![2]]).unwrap();
        assert!(surjects_onto_cyclic_sum(&one, &v(&[2])).unwrap());
        assert!(!surjects_onto_cyclic_sum(&two, &v(&[2])).unwrap());
        assert!(surjects_onto_cyclic_sum(&two, &v(&[3])).unwrap());
        assert!(surjects_onto_cyclic_sum(&one, &v(&[1])).is_err());
        assert!(surjects_onto_cyclic_sum(&one, &v(&[2, 3])).is_err());
        // One generator onto ℤ/2 ⊕ ℤ/3 ≅ ℤ/6 works, onto ℤ/2 ⊕ ℤ/2 cannot.
        let row = IntegerMatrix::from_rows(&[vec![1, 1]]).unwrap();
        assert!(surjects_onto_cyclic_sum(&row, &v(&[2, 3])).unwrap());
        assert!(!surjects_onto_cyclic_sum(&row, &v(&[2, 2])).unwrap());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(&BigInt::from(32)), Some((BigInt::from(2), 5)));
        assert_eq!(prime_power(&BigInt::from(7)), Some((BigInt::from(7), 1)));
        assert_eq!(prime_power(&BigInt::from(12)), None);
        assert_eq!(prime_power(&BigInt::from(1)), None);
        let big = BigInt::from(5).pow(36);
        assert_eq!(prime_power(&big), Some((BigInt::from(5), 36)));
        assert!(is_prime(&BigInt::from(97)));
        assert!(!is_prime(&BigInt::from(91)));
    }
}
