//! Homogeneous ideals of the plane ring with a write-once Gröbner cache.

use std::fmt;
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::groebner::{self, Budget};
use crate::linalg::EchelonBasis;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

/// Position of a degree-`t` plane monomial in [`Monomial::plane_basis`].
pub fn plane_index(t: u32, m: &Monomial) -> usize {
    let (b, c) = (m.0[1] as usize, m.0[2] as usize);
    let t = t as usize;
    c * (t + 1) - c * c.saturating_sub(1) / 2 + b
}

pub fn plane_dim(t: u32) -> usize {
    let t = t as usize;
    (t + 1) * (t + 2) / 2
}

/// Coefficient vector of a homogeneous plane polynomial of degree `t`.
pub fn coefficient_vector(f: &Polynomial, t: u32) -> Vec<u32> {
    let mut v = vec![0u32; plane_dim(t)];
    for (m, c) in f.terms() {
        debug_assert_eq!(m.degree(), t);
        v[plane_index(t, m)] = *c;
    }
    v
}

/// Inverse of [`coefficient_vector`].
pub fn from_coefficient_vector(ring: &Ring, t: u32, v: &[u32]) -> Polynomial {
    let basis = Monomial::plane_basis(t);
    ring.from_terms(basis.into_iter().zip(v.iter().copied()))
}

#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal {
            ring: self.ring,
            generators: self.generators.clone(),
            gb,
        }
    }
}

/// Outcome of a containment test `I ⊆ J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    pub holds: bool,
    /// A generator of `I` outside `J` when the containment fails.
    pub witness: Option<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; the remaining ones must be homogeneous
    /// of positive degree in the plane ring.
    pub fn new(ring: Ring, generators: Vec<Polynomial>) -> Result<Self> {
        if !ring.is_plane() {
            return Err(Error::RingMismatch);
        }
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        for g in &generators {
            if g.ring() != &ring {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if g.degree() == Some(0) {
                return Err(Error::UnitIdeal);
            }
        }
        Ok(Ideal {
            ring,
            generators,
            gb: OnceLock::new(),
        })
    }

    /// An ideal whose generators are already known to be its reduced basis.
    fn with_basis(ring: Ring, gb: Vec<Polynomial>) -> Result<Self> {
        let ideal = Ideal::new(ring, gb.clone())?;
        let _ = ideal.gb.set(gb);
        Ok(ideal)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced Gröbner basis, computed at most once.
    pub fn groebner(&self) -> &[Polynomial] {
        self.try_groebner(&Budget::unlimited())
            .expect("unbudgeted Gröbner computation of a homogeneous ideal")
    }

    pub fn try_groebner(&self, budget: &Budget) -> Result<&[Polynomial]> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = groebner::groebner_basis(&self.ring, &self.generators, budget)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    pub fn has_groebner(&self) -> bool {
        self.gb.get().is_some()
    }

    fn check_ring(&self, f: &Polynomial) -> Result<()> {
        if f.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_ring(f)?;
        let gb: Vec<&Polynomial> = self.groebner().iter().collect();
        Ok(groebner::reduce(f, &gb))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Tests `self ⊆ other` generator by generator.
    pub fn is_subideal(&self, other: &Ideal) -> Result<Containment> {
        self.is_subideal_with(other, &Budget::unlimited())
    }

    pub fn is_subideal_with(&self, other: &Ideal, budget: &Budget) -> Result<Containment> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let gb: Vec<&Polynomial> = other.try_groebner(budget)?.iter().collect();
        for g in self.generators() {
            budget.check(0)?;
            if !groebner::reduce(g, &gb).is_zero() {
                return Ok(Containment {
                    holds: false,
                    witness: Some(g.clone()),
                });
            }
        }
        Ok(Containment {
            holds: true,
            witness: None,
        })
    }

    /// Equality of ideals, decided by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.groebner() == other.groebner()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(self.ring, gens)
    }

    /// Products of generator pairs, thinned to a minimal generating subset.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for f in &self.generators {
            for g in &other.generators {
                gens.push(f.mul(g)?);
            }
        }
        Ideal::new(self.ring, minimal_generating_subset(&self.ring, gens))
    }

    pub fn power(&self, m: u32) -> Result<Ideal> {
        if m == 0 {
            return Err(Error::InvalidParameter("ideal power exponent must be >= 1".into()));
        }
        let base = Ideal::new(self.ring, minimal_generating_subset(&self.ring, self.generators.clone()))?;
        let mut acc = base.clone();
        for _ in 1..m {
            acc = acc.product(&base)?;
        }
        Ok(acc)
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.intersection_with(other, &Budget::unlimited())
    }

    /// `I ∩ J` as the `t`-free part of `t·I + (1 - t)·J` under the block
    /// order eliminating `t`.
    pub fn intersection_with(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let elim = Ring::elimination(self.ring.field());
        let t = elim.var(3);
        let pick = |i: &Ideal| -> Vec<Polynomial> {
            match i.gb.get() {
                Some(gb) => gb.clone(),
                None => i.generators.clone(),
            }
        };
        let mut gens = Vec::new();
        for f in pick(self) {
            gens.push(f.to_ring(&elim)?.mul(&t)?);
        }
        for g in pick(other) {
            let lifted = g.to_ring(&elim)?;
            gens.push(lifted.sub(&lifted.mul(&t)?)?);
        }
        let gb = groebner::groebner_basis(&elim, &gens, budget)?;
        let plane: Vec<Polynomial> = gb
            .iter()
            .filter(|g| !g.involves_t())
            .map(|g| g.to_ring(&self.ring))
            .collect::<Result<_>>()?;
        let reduced = groebner::interreduce(&self.ring, plane);
        Ideal::with_basis(self.ring, reduced)
    }

    /// Stable digest of ring, order and generators.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("p={};order={:?};", self.ring.field().modulus(), self.ring.order()));
        for g in &self.generators {
            h.update(g.canonical().as_bytes());
            h.update(b";");
        }
        hex::encode(h.finalize())
    }

    /// Distinct generator degrees, ascending.
    pub fn generator_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.generators.iter().filter_map(|g| g.degree()).collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Keeps, in order, each homogeneous generator that is not in the span of
/// the previously kept ones in its degree (including multiples of kept
/// lower-degree generators).
pub fn minimal_generating_subset(ring: &Ring, mut gens: Vec<Polynomial>) -> Vec<Polynomial> {
    gens.retain(|g| !g.is_zero());
    gens.sort_by_key(|g| g.degree().unwrap());
    let mut kept: Vec<Polynomial> = Vec::new();
    let field = ring.field();
    let mut i = 0;
    while i < gens.len() {
        let t = gens[i].degree().unwrap();
        let mut span = EchelonBasis::new(field, plane_dim(t));
        for g in &kept {
            let dg = g.degree().unwrap();
            for m in Monomial::plane_basis(t - dg) {
                span.insert(&coefficient_vector(&g.mul_term(&m, 1), t));
            }
        }
        while i < gens.len() && gens[i].degree().unwrap() == t {
            if span.insert(&coefficient_vector(&gens[i], t)) {
                kept.push(gens[i].clone());
            }
            i += 1;
        }
    }
    kept
}
