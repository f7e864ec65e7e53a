//! Buchberger's algorithm with sugar pair selection and the
//! Gebauer–Möller installation of both Buchberger criteria.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

/// Limits for a single computation. `Budget::default()` is unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    /// Largest S-pair degree (in the plane variables) that may be processed.
    pub max_degree: Option<u32>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn check(&self, degree: u32) -> Result<()> {
        if let Some(md) = self.max_degree {
            if degree > md {
                return Err(Error::BudgetExceeded(format!(
                    "S-pair of degree {degree} exceeds degree budget {md}"
                )));
            }
        }
        if let Some(dl) = self.deadline {
            if Instant::now() > dl {
                return Err(Error::BudgetExceeded("wall-clock deadline reached".into()));
            }
        }
        Ok(())
    }
}

/// Full reduction of `f` by `basis` (all basis elements must be monic).
/// The result has no term divisible by a leading monomial of `basis`.
pub fn reduce(f: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
    let ring = *f.ring();
    let field = ring.field();
    let order = ring.order();
    if f.is_zero() || basis.is_empty() {
        return f.clone();
    }
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| *g.leading_monomial().expect("nonzero basis element"))
        .collect();
    let mut work: BTreeMap<u64, (Monomial, u32)> = f
        .terms()
        .iter()
        .map(|&(m, c)| (order.key(&m), (m, c)))
        .collect();
    let mut rem = Vec::new();
    while let Some((_, (m, c))) = work.pop_last() {
        let reducer = leads.iter().position(|l| l.divides(&m));
        match reducer {
            None => rem.push((m, c)),
            Some(k) => {
                let q = leads[k].quotient_of(&m).expect("divides");
                let factor = field.neg(c);
                for &(n, a) in &basis[k].terms()[1..] {
                    let mm = n.mul(&q);
                    let key = order.key(&mm);
                    let add = field.mul(a, factor);
                    match work.get_mut(&key) {
                        Some(e) => {
                            e.1 = field.add(e.1, add);
                            if e.1 == 0 {
                                work.remove(&key);
                            }
                        }
                        None => {
                            work.insert(key, (mm, add));
                        }
                    }
                }
            }
        }
    }
    ring.from_sorted_terms(rem)
}

/// Leading-term-only reduction is not used: every intermediate
/// remainder is fully reduced so the final interreduction is cheap.
fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().expect("nonzero");
    let lg = g.leading_monomial().expect("nonzero");
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l).expect("lcm"), 1);
    let b = g.mul_term(&lg.quotient_of(&l).expect("lcm"), 1);
    a.sub(&b).expect("same ring")
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

fn sugar_of(p: &Polynomial) -> u32 {
    p.terms().iter().map(|(m, _)| m.plane_degree()).max().unwrap_or(0)
}

/// Computes the reduced Gröbner basis (monic, interreduced, sorted by
/// decreasing leading monomial) of the ideal generated by `gens`.
pub fn groebner_basis(ring: &Ring, gens: &[Polynomial], budget: &Budget) -> Result<Vec<Polynomial>> {
    let order = ring.order();
    let mut polys: Vec<Polynomial> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // feed input in increasing sugar so low degree elements reduce the rest
    let mut input: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            if g.ring() != ring {
                Err(Error::RingMismatch)
            } else {
                Ok(g.monic())
            }
        })
        .collect::<Result<_>>()?;
    input.sort_by_key(|g| (sugar_of(g), std::cmp::Reverse(order.key(g.leading_monomial().unwrap()))));
    let mut pending: std::collections::VecDeque<(Polynomial, u32)> =
        input.into_iter().map(|g| { let s = sugar_of(&g); (g, s) }).collect();

    loop {
        // choose next work item: pending input or the lowest-sugar pair
        let next_pair = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.sugar, order.key(&p.lcm), p.i, p.j))
            .map(|(k, p)| (k, p.sugar));
        let take_input = match (pending.front(), next_pair) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some((_, s)), Some((_, ps))) => *s <= ps,
        };
        let (h, sugar) = if take_input {
            let (g, s) = pending.pop_front().unwrap();
            budget.check(s)?;
            let refs: Vec<&Polynomial> = basis.iter().map(|&k| &polys[k]).collect();
            (reduce(&g, &refs), s)
        } else {
            let (k, s) = next_pair.unwrap();
            let pair = pairs.swap_remove(k);
            budget.check(s)?;
            let sp = s_polynomial(&polys[pair.i], &polys[pair.j]);
            let refs: Vec<&Polynomial> = basis.iter().map(|&k| &polys[k]).collect();
            (reduce(&sp, &refs), s)
        };
        if h.is_zero() {
            continue;
        }
        if h.degree() == Some(0) && !h.involves_t() {
            return Err(Error::UnitIdeal);
        }
        let h = h.monic();
        let hi = polys.len();
        let hs = sugar.max(sugar_of(&h));
        polys.push(h);
        sugars.push(hs);
        update(&polys, &sugars, &mut basis, &mut pairs, hi);
    }

    Ok(interreduce(ring, basis.into_iter().map(|k| polys[k].clone()).collect()))
}

/// Gebauer–Möller update for a new element `h = polys[hi]`.
fn update(polys: &[Polynomial], sugars: &[u32], basis: &mut Vec<usize>, pairs: &mut Vec<Pair>, hi: usize) {
    let lh = *polys[hi].leading_monomial().unwrap();
    let sugar_pair = |i: usize, lcm: &Monomial| {
        let (li, lh) = (polys[i].leading_monomial().unwrap(), &lh);
        let si = sugars[i] + lcm.plane_degree() - li.plane_degree();
        let sh = sugars[hi] + lcm.plane_degree() - lh.plane_degree();
        si.max(sh)
    };
    let candidates: Vec<(usize, Monomial)> = basis
        .iter()
        .map(|&g| (g, polys[g].leading_monomial().unwrap().lcm(&lh)))
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    for (idx, (g, l)) in candidates.iter().enumerate() {
        let lg = polys[*g].leading_monomial().unwrap();
        let coprime = lg.is_coprime(&lh);
        let dominated = candidates[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
            || kept.iter().any(|(_, l2)| l2.divides(l));
        if coprime || !dominated {
            kept.push((*g, *l));
        }
    }
    // product criterion
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|(g, _)| !polys[*g].leading_monomial().unwrap().is_coprime(&lh))
        .map(|(g, l)| Pair {
            i: g,
            j: hi,
            lcm: l,
            sugar: sugar_pair(g, &l),
        })
        .collect();

    // drop old pairs made redundant by h
    pairs.retain(|p| {
        if !lh.divides(&p.lcm) {
            return true;
        }
        let li = polys[p.i].leading_monomial().unwrap().lcm(&lh);
        let lj = polys[p.j].leading_monomial().unwrap().lcm(&lh);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(new_pairs);

    basis.retain(|&g| !lh.divides(polys[g].leading_monomial().unwrap()));
    basis.push(hi);
}

/// Minimalizes, tail-reduces, normalizes and sorts a Gröbner basis.
pub fn interreduce(ring: &Ring, gb: Vec<Polynomial>) -> Vec<Polynomial> {
    let order = ring.order();
    let mut gb: Vec<Polynomial> = gb.into_iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    gb.sort_by_key(|g| order.key(g.leading_monomial().unwrap()));
    gb.dedup_by(|a, b| a.leading_monomial() == b.leading_monomial());
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in gb {
        let lg = g.leading_monomial().unwrap();
        if !minimal.iter().any(|m| m.leading_monomial().unwrap().divides(lg)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g)
            .collect();
        // leading term cannot be reduced by a minimal basis
        let g = &minimal[i];
        let tail = ring.from_sorted_terms(g.terms()[1..].to_vec());
        let red = reduce(&tail, &others);
        let lead = ring.monomial(*g.leading_monomial().unwrap(), 1);
        out.push(lead.add(&red).expect("same ring"));
    }
    out.sort_by_key(|g| std::cmp::Reverse(order.key(g.leading_monomial().unwrap())));
    out
}

/// Checks the S-pair criterion: every S-polynomial of `gb` reduces to 0.
pub fn is_groebner_basis(gb: &[Polynomial]) -> bool {
    let refs: Vec<&Polynomial> = gb.iter().collect();
    for i in 0..gb.len() {
        for j in (i + 1)..gb.len() {
            if !reduce(&s_polynomial(&gb[i], &gb[j]), &refs).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, DEFAULT_PRIME};

    fn ring() -> Ring {
        Ring::plane(PrimeField::new(DEFAULT_PRIME).unwrap())
    }

    #[test]
    fn linear_generators() {
        let r = ring();
        let (x0, x1) = (r.var(0), r.var(1));
        let gb = groebner_basis(&r, &[x0.clone(), x0.add(&x1).unwrap()], &Budget::default()).unwrap();
        let s: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
        assert_eq!(s, ["1*x0", "1*x1"]);
    }

    #[test]
    fn single_generator() {
        let r = ring();
        let gb = groebner_basis(&r, &[r.var(2).scale(5)], &Budget::default()).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(gb[0].to_string(), "1*x2");
    }

    #[test]
    fn two_quadrics() {
        let r = ring();
        let q1 = r.var(0).pow(2).sub(&r.var(1).mul(&r.var(2)).unwrap()).unwrap();
        let q2 = r
            .var(1)
            .pow(2)
            .add(&r.var(0).mul(&r.var(2)).unwrap().scale(3))
            .unwrap()
            .sub(&r.var(2).pow(2))
            .unwrap();
        let gb = groebner_basis(&r, &[q1.clone(), q2.clone()], &Budget::default()).unwrap();
        assert!(is_groebner_basis(&gb));
        let refs: Vec<&Polynomial> = gb.iter().collect();
        assert!(reduce(&q1, &refs).is_zero());
        assert!(reduce(&q2, &refs).is_zero());
        for g in &gb {
            assert_eq!(g.leading_coefficient(), Some(1));
        }
    }

    #[test]
    fn unit_ideal_is_rejected() {
        let r = ring();
        let f = r.var(0).sub(&r.one()).unwrap();
        let gb = groebner_basis(&r, &[r.var(0), f], &Budget::default());
        assert!(matches!(gb, Err(Error::UnitIdeal)));
    }

    #[test]
    fn degree_budget_is_enforced() {
        let r = ring();
        let q1 = r.var(0).pow(3).sub(&r.var(1).pow(2).mul(&r.var(2)).unwrap()).unwrap();
        let q2 = r.var(0).pow(2).mul(&r.var(1)).unwrap().sub(&r.var(2).pow(3)).unwrap();
        let b = Budget {
            max_degree: Some(3),
            deadline: None,
        };
        assert!(matches!(
            groebner_basis(&r, &[q1, q2], &b),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
