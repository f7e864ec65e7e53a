//! Sparse polynomials over a prime field.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};

/// A polynomial ring context: field, number of variables, monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    nvars: usize,
    order: MonomialOrder,
}

impl Ring {
    /// `F_p[x0, x1, x2]` with grevlex.
    pub fn plane(field: PrimeField) -> Self {
        Ring {
            field,
            nvars: 3,
            order: MonomialOrder::Grevlex,
        }
    }

    /// `F_p[x0, x1, x2, t]` with the block order eliminating `t`.
    pub fn elimination(field: PrimeField) -> Self {
        Ring {
            field,
            nvars: 4,
            order: MonomialOrder::BlockEliminateT,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_plane(&self) -> bool {
        self.nvars == 3
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: *self,
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.monomial(Monomial::ONE, 1)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars, "variable index out of range");
        self.monomial(Monomial::var(i), 1)
    }

    pub fn monomial(&self, m: Monomial, c: u32) -> Polynomial {
        let c = c % self.field.modulus();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: *self, terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unreduced) terms.
    pub fn from_terms<I>(&self, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, u32)>,
    {
        let mut acc: BTreeMap<u64, (Monomial, u32)> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert!(self.nvars == 4 || m.0[3] == 0);
            let c = c % self.field.modulus();
            if c == 0 {
                continue;
            }
            let e = acc.entry(self.order.key(&m)).or_insert((m, 0));
            e.1 = self.field.add(e.1, c);
        }
        let terms = acc.into_values().rev().filter(|&(_, c)| c != 0).collect();
        Polynomial { ring: *self, terms }
    }

    /// Wraps terms already sorted by decreasing order with nonzero coefficients.
    pub(crate) fn from_sorted_terms(&self, terms: Vec<(Monomial, u32)>) -> Polynomial {
        debug_assert!(terms
            .windows(2)
            .all(|w| self.order.key(&w[0].0) > self.order.key(&w[1].0)));
        debug_assert!(terms.iter().all(|&(_, c)| c != 0));
        Polynomial { ring: *self, terms }
    }

    /// A linear form `a x0 + b x1 + c x2`.
    pub fn linear(&self, coeffs: [u32; 3]) -> Polynomial {
        self.from_terms((0..3).map(|i| (Monomial::var(i), coeffs[i])))
    }
}

/// Terms are kept sorted by decreasing monomial order, without zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|&(_, c)| c)
    }

    /// Total degree of the leading term (all terms for homogeneous input).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(n, _)| n.degree() == d)
            }
        }
    }

    /// Whether `t` occurs in any term.
    pub fn involves_t(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.0[3] != 0)
    }

    fn same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        Ok(self.merge(other, 1))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        Ok(self.merge(other, self.ring.field.neg(1)))
    }

    /// `self + scale * other` by a linear merge of sorted term lists.
    pub(crate) fn merge(&self, other: &Polynomial, scale: u32) -> Polynomial {
        let f = self.ring.field;
        let o = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = self.terms[i];
            let (mb, cb) = other.terms[j];
            match o.key(&ma).cmp(&o.key(&mb)) {
                std::cmp::Ordering::Greater => {
                    out.push((ma, ca));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = f.mul(cb, scale);
                    if c != 0 {
                        out.push((mb, c));
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(ca, f.mul(cb, scale));
                    if c != 0 {
                        out.push((ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for &(m, c) in &other.terms[j..] {
            let c = f.mul(c, scale);
            if c != 0 {
                out.push((m, c));
            }
        }
        Polynomial {
            ring: self.ring,
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(self.ring.field.neg(1))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        let c = c % f.modulus();
        if c == 0 {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    /// Multiplies by `c * m`. Order is preserved since monomial orders are
    /// multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        if c % f.modulus() == 0 {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|&(n, a)| (n.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        if self.ring.is_plane() && self.is_homogeneous() && other.is_homogeneous() {
            return Ok(self.mul_homogeneous(other));
        }
        let f = self.ring.field;
        let o = self.ring.order;
        // accumulate with lazy reduction: p^2 < 2^42, so up to 2^22 products fit
        let mut acc: BTreeMap<u64, (Monomial, u64)> = BTreeMap::new();
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        for &(ma, ca) in &small.terms {
            for &(mb, cb) in &large.terms {
                let m = ma.mul(&mb);
                let e = acc.entry(o.key(&m)).or_insert((m, 0));
                e.1 += ca as u64 * cb as u64;
                if e.1 >= 1 << 62 {
                    e.1 %= f.modulus() as u64;
                }
            }
        }
        let terms = acc
            .into_values()
            .rev()
            .map(|(m, c)| (m, f.reduce(c)))
            .filter(|&(_, c)| c != 0)
            .collect();
        Ok(Polynomial {
            ring: self.ring,
            terms,
        })
    }

    /// Dense product for homogeneous plane polynomials, indexed by the
    /// exponents of `x1` and `x2`.
    fn mul_homogeneous(&self, other: &Polynomial) -> Polynomial {
        let f = self.ring.field;
        let o = self.ring.order;
        let deg = (self.terms[0].0.degree() + other.terms[0].0.degree()) as usize;
        let width = deg + 1;
        let mut acc = vec![0u64; width * width];
        let mut pending = 0u64;
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let idx = (ma.0[1] + mb.0[1]) as usize * width + (ma.0[2] + mb.0[2]) as usize;
                acc[idx] += ca as u64 * cb as u64;
            }
            pending += 1;
            if pending == 1 << 20 {
                acc.iter_mut().for_each(|c| *c %= f.modulus() as u64);
                pending = 0;
            }
        }
        let mut terms: Vec<(Monomial, u32)> = Vec::new();
        for b in 0..width {
            for c in 0..(width - b) {
                let v = f.reduce(acc[b * width + c]);
                if v != 0 {
                    terms.push((Monomial::plane((deg - b - c) as u16, b as u16, c as u16), v));
                }
            }
        }
        terms.sort_by_key(|(m, _)| std::cmp::Reverse(o.key(m)));
        Polynomial {
            ring: self.ring,
            terms,
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    pub fn product<'a, I>(ring: &Ring, factors: I) -> Result<Polynomial>
    where
        I: IntoIterator<Item = &'a Polynomial>,
    {
        let mut acc = ring.one();
        for g in factors {
            acc = acc.mul(g)?;
        }
        Ok(acc)
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(1) => self.clone(),
            Some(c) => {
                let inv = self.ring.field.inv(c).expect("nonzero leading coefficient");
                self.scale(inv)
            }
        }
    }

    /// Evaluates at a point given by plane coordinates.
    pub fn evaluate(&self, point: &[u32; 3]) -> u32 {
        let f = self.ring.field;
        let mut acc = 0u32;
        for (m, c) in &self.terms {
            let mut v = *c;
            for i in 0..3 {
                if m.0[i] > 0 {
                    v = f.mul(v, f.pow(point[i], m.0[i] as u64));
                }
            }
            if m.0[3] > 0 {
                v = 0;
            }
            acc = f.add(acc, v);
        }
        acc
    }

    /// Moves a `t`-free polynomial between the plane and elimination rings.
    pub fn to_ring(&self, target: &Ring) -> Result<Polynomial> {
        if self.ring.field != target.field {
            return Err(Error::RingMismatch);
        }
        if !target.is_plane() || !self.involves_t() {
            return Ok(target.from_terms(self.terms.iter().copied()));
        }
        Err(Error::RingMismatch)
    }

    /// Coefficient of a monomial (0 if absent).
    pub fn coefficient(&self, m: &Monomial) -> u32 {
        let key = self.ring.order.key(m);
        self.terms
            .binary_search_by(|(n, _)| key.cmp(&self.ring.order.key(n)))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Canonical text form, e.g. `3*x0^2*x1 + 1*x2^3`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.canonical())
    }
}
