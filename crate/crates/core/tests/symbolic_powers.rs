mod common;

use num::BigRational;
use proptest::prelude::*;
use quasistar::geometry::{generic_points, quasi_star, star_configuration, Configuration, LinearForm, ProjectivePoint};
use quasistar::invariants::{alpha, regularity};
use quasistar::symbolic::{
    self, alpha_fat_points, at_least_sqrt_bound, containment_table, isqrt, ratio, symbolic_power,
    symbolic_power_with, vanishing_order, CellBudget, SymbolicMethod,
};
use quasistar::{Budget, Polynomial, PrimeField, Ring, DEFAULT_PRIME};

const P: u64 = DEFAULT_PRIME as u64;

fn field() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn points(max: usize) -> impl Strategy<Value = Configuration> {
    prop::collection::vec([1..DEFAULT_PRIME, 0..DEFAULT_PRIME, 0..DEFAULT_PRIME], 1..=max).prop_filter_map(
        "repeated point",
        |cs| {
            let pts = cs.into_iter().map(|c| (ProjectivePoint::new(field(), c).unwrap(), 1)).collect();
            Configuration::custom(field(), pts).ok()
        },
    )
}

#[test]
fn symbolic_chain() {
    let b = Budget::unlimited();
    for cfg in [quasi_star(field(), 3, 1).unwrap(), star_configuration(field(), 4, 1).unwrap()] {
        let i = symbolic::configuration_ideal(&cfg, &b).unwrap();
        let mut prev = symbolic_power(&cfg, 1, &b).unwrap().ideal;
        assert!(prev.same_ideal(&i));
        for m in 2..=4 {
            let cur = symbolic_power(&cfg, m, &b).unwrap().ideal;
            assert!(cur.is_subideal(&prev).unwrap().holds, "I^({m}) in I^({})", m - 1);
            assert!(i.power(m).unwrap().is_subideal(&cur).unwrap().holds, "I^{m} in I^({m})");
            prev = cur;
        }
    }
}

#[test]
fn waldschmidt_sandwich_and_subadditivity() {
    let cfg = quasi_star(field(), 3, 1).unwrap();
    let w = symbolic::waldschmidt_estimate(&cfg, 8, &[], None).unwrap();
    assert!(w.lower_bound <= w.upper_bound);
    let a = &w.alpha_values;
    for (&m, &v) in a {
        assert!(ratio(v as i64, m as i64 + 1) <= w.upper_bound && w.lower_bound <= ratio(v as i64, m as i64));
        for (&n, &u) in a {
            if let Some(&s) = a.get(&(m + n)) {
                assert!(s <= v + u, "alpha({}) > alpha({m}) + alpha({n})", m + n);
            }
        }
    }
    let pts = common::coords(&cfg.point_list());
    for m in 1..=5u32 {
        let fat: Vec<([u32; 3], u32)> = pts.iter().map(|q| (*q, m)).collect();
        assert_eq!(a[&m], common::alpha(P, &fat));
    }
}

#[test]
fn certificates_are_sound() {
    for d in 4..=6 {
        let cfg = quasi_star(field(), d, 2).unwrap();
        let c = symbolic::waldschmidt_certificate(&cfg, 1).unwrap();
        assert_eq!(c.bound_implied, ratio(c.degree as i64, c.symbolic_order as i64));
        for q in common::coords(&cfg.point_list()) {
            assert!(common::vanishes_to_order(P, &c.element, &q, c.symbolic_order));
        }
        let s = symbolic_power(&cfg, c.symbolic_order, &Budget::unlimited()).unwrap();
        assert!(s.ideal.contains(&c.element).unwrap());
        let w = symbolic::waldschmidt_estimate(&cfg, 2, std::slice::from_ref(&c), None).unwrap();
        assert!(w.upper_bound <= c.bound_implied);
    }
}

#[test]
fn star_four_cells() {
    let cfg = star_configuration(field(), 4, 1).unwrap();
    let rep = containment_table(&cfg, 4, 3, CellBudget::default(), SymbolicMethod::Intersection).unwrap();
    let pts = common::coords(&cfg.point_list());
    assert_eq!(rep.cell(1, 1).unwrap().holds(), Some(true));
    // I^(3) ⊆ I^2 for six points on four general lines; the first failure is
    // I^(4) ⊄ I^3
    assert_eq!(rep.cell(3, 2).unwrap().holds(), Some(true));
    assert!(common::containment(P, &pts, 3, 2));
    assert_eq!(rep.cell(4, 3).unwrap().holds(), Some(false));
    assert!(!common::containment(P, &pts, 4, 3));
    assert_eq!(rep.max_failing_ratio, Some(ratio(4, 3)));
    assert!(rep.laws.iter().all(|l| l.holds == Some(true)));
}

#[test]
fn z3_grid_and_witnesses() {
    let cfg = quasi_star(field(), 3, 1).unwrap();
    let b = Budget::unlimited();
    let rep = containment_table(&cfg, 6, 4, CellBudget::default(), SymbolicMethod::Intersection).unwrap();
    assert!(rep.is_complete());
    let i = symbolic::configuration_ideal(&cfg, &b).unwrap();
    for row in &rep.rows {
        if row.m >= 2 * row.r {
            assert_eq!(row.holds(), Some(true));
        }
        if let symbolic::CellStatus::Fails { witness } = &row.status {
            let sm = symbolic_power(&cfg, row.m, &b).unwrap().ideal;
            assert!(sm.contains(witness).unwrap());
            assert!(!i.power(row.r).unwrap().contains(witness).unwrap());
        }
    }
    let csv = rep.to_csv();
    assert_eq!(csv.lines().count(), 1 + rep.rows.len());
}

#[test]
fn resurgence_bounds_are_ordered() {
    let f = field();
    for (cfg, m_max) in [
        (quasi_star(f, 3, 1).unwrap(), 6),
        (star_configuration(f, 4, 1).unwrap(), 4),
        (generic_points(f, 6, 1).unwrap(), 8),
    ] {
        let i = symbolic::configuration_ideal(&cfg, &Budget::unlimited()).unwrap();
        let w = symbolic::waldschmidt_estimate(&cfg, m_max, &[], None).unwrap();
        let grid = containment_table(&cfg, 4, 3, CellBudget::default(), SymbolicMethod::Intersection).unwrap();
        let rho = symbolic::resurgence_bounds(alpha(&i), regularity(&i, None).unwrap(), &w, Some(&grid)).unwrap();
        assert!(ratio(1, 1) <= rho.lower && rho.lower <= rho.upper && rho.upper < ratio(2, 1));
        if let (Some(lo), Some(hi)) = (&rho.exact_form_lower, &rho.exact_form_upper) {
            // the combined interval refines [α/α̂_upper, α/α̂_lower]
            assert!(lo <= hi && *lo <= rho.lower && rho.upper <= *hi);
        }
    }
}

fn line_through(ring: &Ring, p: &[u32; 3], dir: u32) -> Polynomial {
    // a line through p: coefficients orthogonal to p
    let f = ring.field();
    let l = if p[2] != 0 {
        let c = f.mul(f.neg(f.add(p[0], f.mul(dir, p[1]))), f.inv(p[2]).unwrap());
        [1, dir, c]
    } else if p[1] != 0 {
        [dir, f.mul(f.neg(f.mul(dir, p[0])), f.inv(p[1]).unwrap()), 1]
    } else {
        [0, 1, dir]
    };
    LinearForm::new(f, l).unwrap().to_poly(ring)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn methods_and_alpha_agree(cfg in points(4), m in 1u32..=3) {
        let b = Budget::unlimited();
        let by_gb = symbolic_power_with(&cfg, m, &b, SymbolicMethod::Intersection).unwrap().ideal;
        let by_rank = symbolic_power_with(&cfg, m, &b, SymbolicMethod::Interpolation).unwrap().ideal;
        prop_assert!(by_gb.same_ideal(&by_rank));
        let ring = cfg.ring().unwrap();
        let (a, f) = alpha_fat_points(&ring, &cfg.point_list(), m, 20).unwrap();
        prop_assert_eq!(a, alpha(&by_gb));
        prop_assert!(by_gb.contains(&f).unwrap());
        let fat: Vec<([u32; 3], u32)> = common::coords(&cfg.point_list()).iter().map(|q| (*q, m)).collect();
        prop_assert_eq!(a, common::alpha(P, &fat));
    }

    #[test]
    fn vanishing_orders_agree(c in [1..DEFAULT_PRIME, 0..DEFAULT_PRIME, 0..DEFAULT_PRIME], k in 0u32..5, extra in 0u32..3, dirs in prop::collection::vec(1..DEFAULT_PRIME, 8)) {
        let ring = Ring::plane(field());
        let p = ProjectivePoint::new(field(), c).unwrap();
        let q = *p.coords();
        // k lines through p times `extra` lines in general position
        let mut f = ring.one();
        for i in 0..k as usize {
            f = f.mul(&line_through(&ring, &q, dirs[i])).unwrap();
        }
        for i in 0..extra as usize {
            f = f.mul(&ring.linear([dirs[4 + i], 1, 1 + i as u32])).unwrap();
        }
        prop_assume!(!f.is_zero() && f.degree().unwrap() > 0);
        let v = vanishing_order(&f, &p, 10);
        prop_assert!(v >= k);
        prop_assert!(common::vanishes_to_order(P, &f, &q, v));
        prop_assert!(!common::vanishes_to_order(P, &f, &q, v + 1));
    }

    #[test]
    fn sqrt_comparison(n in 1i64..10_000, den in 1i64..10_000, d in 1u64..10_000) {
        let q: BigRational = ratio(n, den);
        let x = n as f64 / den as f64;
        let exact = at_least_sqrt_bound(&q, d);
        let approx = x - (2.0 - 2.0 / ((d as f64).sqrt() + 1.0));
        if approx.abs() > 1e-9 {
            prop_assert_eq!(exact, approx > 0.0);
        }
        let r = isqrt(d);
        prop_assert!(r * r <= d && (r + 1) * (r + 1) > d);
    }
}
