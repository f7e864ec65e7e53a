//! Arithmetic in prime fields `Z/pZ`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default characteristic for all computations.
pub const DEFAULT_PRIME: u32 = 65521;
/// Characteristic used for the reproducibility re-run.
pub const SECOND_PRIME: u32 = 1_000_003;

/// Upper limit on the modulus. Keeps `p^2` below `2^42` so the lazy
/// reduction in the elimination kernels cannot overflow a `u64`.
pub const MAX_PRIME: u32 = 1 << 21;
/// Lower limit on the modulus.
pub const MIN_PRIME: u32 = 1 << 15;

/// A prime field context. Elements are stored as bare residues `< p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(MIN_PRIME..MAX_PRIME).contains(&p) {
            return Err(Error::InvalidPrime(p));
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.p as u64) as u32
    }

    /// Embeds a signed integer.
    pub fn from_i64(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i64) as u32)
    }

    pub fn element(self, value: u64) -> Fp {
        Fp {
            value: self.reduce(value),
            modulus: self.p,
        }
    }
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A standalone field element carrying its modulus.
///
/// Mixing moduli in one operation is a programming error and panics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn field(self) -> PrimeField {
        PrimeField { p: self.modulus }
    }

    pub fn inv(self) -> Option<Fp> {
        self.field().inv(self.value).map(|value| Fp { value, ..self })
    }

    pub fn pow(self, e: u64) -> Fp {
        Fp {
            value: self.field().pow(self.value, e),
            ..self
        }
    }

    fn check(self, other: Fp) {
        assert_eq!(self.modulus, other.modulus, "mixed prime field moduli");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.field().add(self.value, rhs.value),
            ..self
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.field().sub(self.value, rhs.value),
            ..self
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp {
            value: self.field().mul(self.value, rhs.value),
            ..self
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: self.field().neg(self.value),
            ..self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn default_primes_are_accepted() {
        assert!(PrimeField::new(DEFAULT_PRIME).is_ok());
        assert!(PrimeField::new(SECOND_PRIME).is_ok());
        assert!(PrimeField::new(65520).is_err());
        assert!(PrimeField::new(7).is_err());
    }

    #[test]
    fn miller_rabin_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(!is_prime(65535));
        assert!(is_prime(65521));
    }

    #[test]
    fn inverse_of_zero_is_none() {
        let f = PrimeField::new(DEFAULT_PRIME).unwrap();
        assert_eq!(f.inv(0), None);
        assert_eq!(f.inv(1), Some(1));
        assert_eq!(f.mul(f.inv(2).unwrap(), 2), 1);
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u64..65521, b in 0u64..65521, c in 0u64..65521) {
            let f = PrimeField::new(DEFAULT_PRIME).unwrap();
            let (a, b, c) = (f.element(a), f.element(b), f.element(c));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a - a, f.element(0));
            prop_assert_eq!(a + (-a), f.element(0));
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), f.element(1));
            }
        }

        #[test]
        fn inverses_at_second_prime(a in 1u64..1_000_003) {
            let f = PrimeField::new(SECOND_PRIME).unwrap();
            let x = f.element(a);
            prop_assert_eq!((x * x.inv().unwrap()).value(), 1);
        }
    }
}
