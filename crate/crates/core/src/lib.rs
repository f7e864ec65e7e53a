//! Exact computations with point configurations in the projective plane:
//! star and quasi star configurations, symbolic and ordinary powers of
//! their ideals, graded Betti numbers, Waldschmidt constants, containment
//! tables and resurgence intervals.
//!
//! All arithmetic is over a prime field `F_p` (default `p = 65521`), with
//! rational invariants carried as exact big rationals.

pub mod error;
pub mod field;
pub mod geometry;
pub mod groebner;
pub mod ideal;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Fp, PrimeField, DEFAULT_PRIME, SECOND_PRIME};
pub use groebner::Budget;
pub use ideal::{Containment, Ideal};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Polynomial, Ring};
