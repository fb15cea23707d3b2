//! Fixed prime field used by the randomized verification fallback.
//!
//! The modulus is the first prime above 2^61 that is 17 mod 24 with 2 a
//! fourth-power residue. These congruences make every root the cusp
//! parameter sampler needs constructible:
//!   - p = 1 (mod 8), so eighth roots of -1 exist (q-th roots of -1 for
//!     even q in the sweep) and 2 is a quadratic residue;
//!   - p = 2 (mod 3), so cube roots are unique and obtained by an
//!     exponent inverse;
//!   - 2^((p-1)/4) = 1 (mod p), so 1/2 has a fourth root.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Coeff;

/// 2^61 + 57; `p - 1 = 2^3 * 7589 * 1061881 * 35766739`.
pub const SAMPLE_PRIME: u64 = 2_305_843_009_213_694_009;

/// Element of the prime field with modulus [`SAMPLE_PRIME`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Fp {
        Fp(v % SAMPLE_PRIME)
    }

    pub fn from_i64(v: i64) -> Fp {
        let m = v.rem_euclid(SAMPLE_PRIME as i64) as u64;
        Fp(m)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; zero maps to `None`.
    pub fn try_inv(self) -> Option<Fp> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(SAMPLE_PRIME - 2))
        }
    }

    /// `self^e` for signed exponents; negative exponents require `self != 0`.
    pub fn pow_i64(self, e: i64) -> Option<Fp> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.try_inv().map(|i| i.pow(e.unsigned_abs()))
        }
    }

    pub fn is_quadratic_residue(self) -> bool {
        self.0 == 0 || self.pow((SAMPLE_PRIME - 1) / 2) == Fp(1)
    }

    /// Tonelli-Shanks square root.
    pub fn sqrt(self) -> Option<Fp> {
        if self.0 == 0 {
            return Some(Fp(0));
        }
        if !self.is_quadratic_residue() {
            return None;
        }
        // p - 1 = 2^s * t with t odd; s = 3 for this modulus.
        let mut s = 0u32;
        let mut t = SAMPLE_PRIME - 1;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = non_residue();
        let mut m = s;
        let mut c = z.pow(t);
        let mut u = self.pow(t);
        let mut r = self.pow((t + 1) / 2);
        while u != Fp(1) {
            let mut i = 0u32;
            let mut probe = u;
            while probe != Fp(1) {
                probe = probe * probe;
                i += 1;
            }
            let b = c.pow(1u64 << (m - i - 1));
            m = i;
            c = b * b;
            u = u * c;
            r = r * b;
        }
        Some(r)
    }

    /// Fourth root, when one exists.
    pub fn fourth_root(self) -> Option<Fp> {
        let s = self.sqrt()?;
        // -1 is a square here (p = 1 mod 4), so s and -s share residuosity;
        // if the fourth root exists at all, s itself is a square.
        s.sqrt().or_else(|| (-s).sqrt())
    }

    /// Cube root; unique because 3 does not divide p - 1.
    pub fn cbrt(self) -> Fp {
        // inverse of 3 modulo p - 1
        let e = mod_inverse(3, SAMPLE_PRIME - 1).expect("3 coprime to p-1");
        self.pow(e)
    }

    /// k-th root by factoring k into square, cube and coprime parts.
    pub fn kth_root(self, k: u32) -> Option<Fp> {
        if k == 0 {
            return None;
        }
        if k == 1 {
            return Some(self);
        }
        if k % 2 == 0 {
            let s = self.sqrt()?;
            return s.kth_root(k / 2).or_else(|| (-s).kth_root(k / 2));
        }
        if k % 3 == 0 {
            return self.cbrt().kth_root(k / 3);
        }
        let g = gcd(k as u64, SAMPLE_PRIME - 1);
        if g == 1 {
            let e = mod_inverse(k as u64, SAMPLE_PRIME - 1)?;
            Some(self.pow(e))
        } else {
            None
        }
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest quadratic non-residue for the fixed modulus (3, checked by test).
pub fn non_residue() -> Fp {
    Fp(3)
}

/// A primitive eighth root of unity composed with -1: returns `w` with
/// `w^4 = -1`.
pub fn eighth_root_of_minus_one() -> Fp {
    non_residue().pow((SAMPLE_PRIME - 1) / 8)
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 as u128 + rhs.0 as u128;
        Fp((s % SAMPLE_PRIME as u128) as u64)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(SAMPLE_PRIME - self.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp(((self.0 as u128 * rhs.0 as u128) % SAMPLE_PRIME as u128) as u64)
    }
}

impl Div for Fp {
    type Output = Fp;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.try_inv().expect("division by zero in Fp")
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp(1)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Coeff for Fp {
    fn from_i64(n: i64) -> Self {
        Fp::from_i64(n)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Fp::from_i64(numer) / Fp::from_i64(denom)
    }

    fn inv(&self) -> Option<Self> {
        self.try_inv()
    }
}

/// Deterministic Miller-Rabin for u64 (the listed bases are exhaustive in
/// this range).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    // the modulus must stay at least 2^61 - 1 by policy
    const _: () = assert!(SAMPLE_PRIME >= (1u64 << 61) - 1);

    #[test]
    fn modulus_is_prime_with_advertised_structure() {
        assert!(is_prime_u64(SAMPLE_PRIME));
        assert_eq!(SAMPLE_PRIME % 24, 17);
        assert_eq!((SAMPLE_PRIME - 1) % 8, 0);
        assert_eq!(SAMPLE_PRIME % 3, 2);
        // 2 is a fourth-power residue
        assert_eq!(Fp::new(2).pow((SAMPLE_PRIME - 1) / 4), Fp::new(1));
    }

    #[test]
    fn declared_non_residue_is_the_smallest() {
        assert!(!non_residue().is_quadratic_residue());
        assert!(Fp::new(1).is_quadratic_residue());
        assert!(Fp::new(2).is_quadratic_residue());
    }

    #[test]
    fn root_extraction() {
        let w = eighth_root_of_minus_one();
        assert_eq!(w.pow(4), -Fp::new(1));

        let half = Fp::new(2).try_inv().unwrap();
        let s = half.sqrt().expect("1/2 is a square");
        assert_eq!(s * s, half);

        let f = half.fourth_root().expect("1/2 is a fourth power");
        assert_eq!(f.pow(4), half);

        let c = half.cbrt();
        assert_eq!(c.pow(3), half);

        assert!(non_residue().sqrt().is_none());
    }

    #[test]
    fn field_axioms_spot_checks() {
        let a = Fp::new(123456789123456789);
        let b = Fp::new(987654321987654321);
        assert_eq!(a * b / b, a);
        assert_eq!(a + b - b, a);
        assert_eq!(a.pow_i64(-3).unwrap() * a.pow(3), Fp::new(1));
        assert_eq!(Fp::new(0).pow_i64(-1), None);
    }
}
