//! Exponent vectors and the two monomial orders used throughout.
//!
//! Index 0..3 are the plane variables `x0 > x1 > x2`. Index 3 is the
//! auxiliary variable `t` of the elimination ring; it is always zero in
//! the plane ring.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

pub const MAX_VARS: usize = 4;
pub const VAR_NAMES: [&str; MAX_VARS] = ["x0", "x1", "x2", "t"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn new(exps: [u16; MAX_VARS]) -> Self {
        Monomial(exps)
    }

    pub fn plane(a: u16, b: u16, c: u16) -> Self {
        Monomial([a, b, c, 0])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_VARS];
        e[i] = 1;
        Monomial(e)
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    /// Degree in the plane variables only (ignores `t`).
    #[inline]
    pub fn plane_degree(&self) -> u32 {
        self.0[0] as u32 + self.0[1] as u32 + self.0[2] as u32
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = (*a).max(b);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// All plane monomials of total degree `t`, in decreasing grevlex order.
    pub fn plane_basis(t: u32) -> Vec<Monomial> {
        let t = t as u16;
        let mut out = Vec::with_capacity(((t as usize + 1) * (t as usize + 2)) / 2);
        // decreasing grevlex: smallest x2 exponent first, then smallest x1
        for c in 0..=t {
            for b in 0..=(t - c) {
                out.push(Monomial::plane(t - b - c, b, c));
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", VAR_NAMES[i])?;
            } else {
                write!(f, "{}^{}", VAR_NAMES[i], e)?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    /// Graded reverse lexicographic with `x0 > x1 > x2 (> t)`.
    Grevlex,
    /// `t` is compared first; ties broken by grevlex on the plane variables.
    /// Any monomial containing `t` exceeds every `t`-free monomial.
    BlockEliminateT,
}

impl MonomialOrder {
    /// Packs a monomial into a `u64` whose integer order equals the
    /// monomial order. Exponents must stay below `2^16`.
    #[inline]
    pub fn key(self, m: &Monomial) -> u64 {
        let e = m.0;
        let inv = |x: u16| (u16::MAX - x) as u64;
        match self {
            MonomialOrder::Grevlex => {
                (m.degree() as u64) << 48 | inv(e[3]) << 32 | inv(e[2]) << 16 | inv(e[1])
            }
            MonomialOrder::BlockEliminateT => {
                (e[3] as u64) << 48
                    | (m.plane_degree() as u64) << 32
                    | inv(e[2]) << 16
                    | inv(e[1])
            }
        }
    }

    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}
