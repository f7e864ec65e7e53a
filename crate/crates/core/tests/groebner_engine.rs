mod common;

use proptest::prelude::*;
use quasistar::groebner;
use quasistar::{Ideal, Monomial, Polynomial, PrimeField, Ring, DEFAULT_PRIME};

const P: u64 = DEFAULT_PRIME as u64;

fn ring() -> Ring {
    Ring::plane(PrimeField::new(DEFAULT_PRIME).unwrap())
}

/// Homogeneous forms of degree 1..=3 with a handful of terms.
fn form() -> impl Strategy<Value = Polynomial> {
    (1u16..=3, prop::collection::vec((0u16..=3, 0u16..=3, 1u32..DEFAULT_PRIME), 1..5)).prop_map(|(d, ts)| {
        ring().from_terms(ts.into_iter().map(|(a, b, c)| {
            let a = a.min(d);
            let b = b.min(d - a);
            (Monomial::plane(a, b, d - a - b), c)
        }))
    })
}

fn ideal() -> impl Strategy<Value = Ideal> {
    prop::collection::vec(form(), 1..4)
        .prop_filter_map("zero generators", |g| {
            let g: Vec<Polynomial> = g.into_iter().filter(|f| !f.is_zero()).collect();
            Ideal::new(ring(), g).ok()
        })
}

fn gens_of(i: &Ideal) -> common::Gens {
    common::Gens(
        i.generators()
            .iter()
            .map(|g| (g.degree().unwrap(), common::vector(g, g.degree().unwrap())))
            .collect(),
    )
}

/// `dim R_t - H(R/I, t)` from the basis.
fn dim_slice(i: &Ideal, t: u32) -> usize {
    common::monomials(t).len() - quasistar::invariants::hilbert_function(i, t) as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_is_groebner_and_contains_generators(i in ideal()) {
        prop_assert!(groebner::is_groebner_basis(i.groebner()));
        for g in i.generators() {
            prop_assert!(i.contains(g).unwrap());
        }
        prop_assert!(i.groebner().iter().all(|g| g.leading_coefficient() == Some(1)));
    }

    #[test]
    fn bases_are_deterministic(gens in prop::collection::vec(form(), 1..4)) {
        let gens: Vec<Polynomial> = gens.into_iter().filter(|f| !f.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let a = Ideal::new(ring(), gens.clone()).unwrap();
        let b = Ideal::new(ring(), gens).unwrap();
        let show = |i: &Ideal| i.groebner().iter().map(|g| g.canonical()).collect::<Vec<_>>();
        prop_assert_eq!(show(&a), show(&b));
    }

    #[test]
    fn normal_form_is_linear(i in ideal(), f in form(), g in form()) {
        let sum = f.add(&g).unwrap();
        let lhs = i.normal_form(&sum).unwrap();
        let rhs = i.normal_form(&f).unwrap().add(&i.normal_form(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn intersection_matches_slices(i in ideal(), j in ideal()) {
        let k = i.intersection(&j).unwrap();
        let (gi, gj) = (gens_of(&i), gens_of(&j));
        for t in 0..=6 {
            let (si, sj) = (gi.slice(P, t), gj.slice(P, t));
            let mut both = si.clone();
            both.extend(sj.iter().cloned());
            let sum = if both.is_empty() { 0 } else { common::rank(P, both) };
            // dim (I_t ∩ J_t) = dim I_t + dim J_t - dim (I_t + J_t)
            prop_assert_eq!(dim_slice(&k, t), si.len() + sj.len() - sum, "t = {}", t);
        }
    }

    #[test]
    fn powers_descend(i in ideal()) {
        let mut prev = i.power(1).unwrap();
        for m in 2..=3 {
            let next = i.power(m).unwrap();
            prop_assert!(next.is_subideal(&prev).unwrap().holds);
            prev = next;
        }
    }
}

#[test]
fn two_quadrics() {
    let r = ring();
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let q1 = x.pow(2).sub(&y.mul(&z).unwrap()).unwrap();
    let q2 = x.mul(&y).unwrap().add(&z.pow(2)).unwrap();
    let i = Ideal::new(r, vec![q1, q2]).unwrap();
    assert!(groebner::is_groebner_basis(i.groebner()));
    let gens = gens_of(&i);
    for t in 0..=8 {
        let by_rank = common::monomials(t).len() - gens.slice(P, t).len();
        assert_eq!(quasistar::invariants::hilbert_function(&i, t), by_rank as u64);
    }
    // a complete intersection of two quadrics: 4 points
    assert_eq!(quasistar::invariants::hilbert_function(&i, 5), 4);
}
