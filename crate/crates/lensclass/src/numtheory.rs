//! Exact modular arithmetic: gcd, totient, inverses and representative
//! shifting. These are the only number-theoretic primitives the rest of the
//! crate is allowed to use.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("{0} is not a unit modulo {1}")]
    NonUnit(i128, u64),
    #[error("modulus {0} must be at least 2")]
    BadModulus(u64),
}

/// Greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A residue class together with its fixed representative in `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `x` into `[0, modulus)`. `modulus` must be positive.
    pub fn new(x: i128, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Residue {
            value: rep_half_open(x, modulus),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// The unique `x` with `1 <= x <= n-1` and `a*x = 1 (mod n)`.
pub fn mod_inverse(a: i128, n: u64) -> Result<u64, NumTheoryError> {
    if n < 2 {
        return Err(NumTheoryError::BadModulus(n));
    }
    let a_red = rep_half_open(a, n) as i128;
    // extended Euclid on (a_red, n)
    let (mut old_r, mut r) = (a_red, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let t = old_r - q * r;
        old_r = r;
        r = t;
        let t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if old_r != 1 {
        return Err(NumTheoryError::NonUnit(a, n));
    }
    Ok(rep_half_open(old_s, n))
}

/// Number of units in `Z_n`; `euler_phi(1) = 1`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "totient of nonpositive argument");
    let mut phi = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            phi -= phi / p;
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Shifts `x` by a multiple of `modulus` into `[lo, lo + modulus)`.
///
/// Returns `(k, value)` with `value = x + k*modulus`. This is the single
/// primitive behind all per-formula representative conventions; the wrappers
/// below fix the window each convention asks for.
pub fn shift_into_range(x: i128, modulus: u64, lo: i128) -> (i128, i128) {
    assert!(modulus >= 1, "modulus must be positive");
    let m = modulus as i128;
    let k = (lo - x).div_euclid(m) + if (lo - x).rem_euclid(m) == 0 { 0 } else { 1 };
    let value = x + k * m;
    debug_assert!(lo <= value && value < lo + m);
    (k, value)
}

/// Representative of `x` in `[0, modulus)`.
pub fn rep_half_open(x: i128, modulus: u64) -> u64 {
    assert!(modulus >= 1, "modulus must be positive");
    x.rem_euclid(modulus as i128) as u64
}

/// Representative of `x` in `(0, modulus]`: the class of `0` maps to `modulus`.
pub fn rep_positive(x: i128, modulus: u64) -> u64 {
    let v = rep_half_open(x, modulus);
    if v == 0 {
        modulus
    } else {
        v
    }
}

/// Representative of `x` in the open window `(0, modulus)`, or `None` when
/// `x` is divisible by `modulus` (no such representative exists).
pub fn rep_strictly_inside(x: i128, modulus: u64) -> Option<u64> {
    let v = rep_half_open(x, modulus);
    if v == 0 {
        None
    } else {
        Some(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(4, 6), 2);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(7, 0), 7);
        assert_eq!(gcd(12, 18), 6);
    }

    #[test]
    fn inverse_of_identity() {
        assert_eq!(mod_inverse(1, 5), Ok(1));
    }

    #[test]
    fn inverse_matches_exhaustive_search() {
        // brute-force oracle: the unique x in 1..n with a*x = 1 (mod n)
        let oracle = |a: u64, n: u64| (1..n).find(|x| (a * x) % n == 1);
        assert_eq!(oracle(3, 7), Some(5));
        assert_eq!(mod_inverse(3, 7), Ok(5));
        for n in 2..60u64 {
            for a in 0..n {
                match oracle(a, n) {
                    Some(x) => assert_eq!(mod_inverse(a as i128, n), Ok(x)),
                    None => assert!(mod_inverse(a as i128, n).is_err()),
                }
            }
        }
    }

    #[test]
    fn inverse_rejects_non_units_and_bad_moduli() {
        assert_eq!(mod_inverse(2, 4), Err(NumTheoryError::NonUnit(2, 4)));
        assert_eq!(mod_inverse(3, 1), Err(NumTheoryError::BadModulus(1)));
        assert_eq!(mod_inverse(3, 0), Err(NumTheoryError::BadModulus(0)));
    }

    #[test]
    fn totient_matches_unit_count() {
        // brute-force oracle: count units of Z_n
        let oracle = |n: u64| (1..=n).filter(|k| gcd(*k, n) == 1).count() as u64;
        assert_eq!(euler_phi(1), 1);
        assert_eq!(oracle(6), 2);
        assert_eq!(euler_phi(6), 2);
        assert_eq!(oracle(12), 4);
        assert_eq!(euler_phi(12), 4);
        for n in 1..=10_000u64 {
            assert_eq!(euler_phi(n), oracle(n), "phi({n})");
        }
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_into_range(7, 3, 0), (-2, 1));
        assert_eq!(shift_into_range(-1, 4, 0), (1, 3));
        // a*t - 1 with a = 2, t = 2 shifted into [0, 3)
        assert_eq!(shift_into_range(2 * 2 - 1, 3, 0), (-1, 0));
    }

    proptest! {
        #[test]
        fn shift_is_idempotent(x in -10_000i128..10_000, m in 1u64..500, lo in -100i128..100) {
            let (_, v) = shift_into_range(x, m, lo);
            let (k2, v2) = shift_into_range(v, m, lo);
            prop_assert_eq!(k2, 0);
            prop_assert_eq!(v2, v);
        }

        #[test]
        fn inverse_law(a in 1u64..2000, n in 2u64..2000) {
            prop_assume!(gcd(a, n) == 1);
            let x = mod_inverse(a as i128, n).unwrap();
            prop_assert!(1 <= x && x <= n - 1);
            prop_assert_eq!((a as u128 * x as u128) % n as u128, 1);
        }

        #[test]
        fn representative_windows(x in -10_000i128..10_000, m in 1u64..300) {
            let h = rep_half_open(x, m);
            prop_assert!(h < m);
            prop_assert_eq!((x - h as i128).rem_euclid(m as i128), 0);
            let p = rep_positive(x, m);
            prop_assert!(1 <= p && p <= m);
            prop_assert_eq!((x - p as i128).rem_euclid(m as i128), 0);
        }
    }
}
