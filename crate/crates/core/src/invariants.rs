//! Graded invariants: Hilbert functions, initial degree, minimal generator
//! degrees, Betti numbers from Koszul homology, regularity.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Configuration;
use crate::groebner::{self, Budget};
use crate::ideal::{coefficient_vector, plane_dim, Ideal};
use crate::linalg::{self, EchelonBasis};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};
use crate::symbolic;

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn leading_monomials(ideal: &Ideal) -> Vec<Monomial> {
    ideal
        .groebner()
        .iter()
        .map(|g| *g.leading_monomial().expect("nonzero basis element"))
        .collect()
}

fn is_standard(leads: &[Monomial], m: &Monomial) -> bool {
    !leads.iter().any(|l| l.divides(m))
}

fn standard_monomials(leads: &[Monomial], t: u32) -> Vec<Monomial> {
    Monomial::plane_basis(t)
        .into_iter()
        .filter(|m| is_standard(leads, m))
        .collect()
}

/// `dim (R/I)_t`, counted as standard monomials of the reduced basis.
pub fn hilbert_function(ideal: &Ideal, t: u32) -> u64 {
    standard_monomials(&leading_monomials(ideal), t).len() as u64
}

/// `dim (R/I)_t` as `binom(t+2,2)` minus the rank of all monomial multiples
/// of the generators in degree `t`. Independent of Gröbner bases.
pub fn hilbert_function_by_rank(ideal: &Ideal, t: u32) -> u64 {
    let mut rows = Vec::new();
    for g in ideal.generators() {
        let dg = g.degree().unwrap();
        if dg > t {
            continue;
        }
        for m in Monomial::plane_basis(t - dg) {
            rows.push(coefficient_vector(&g.mul_term(&m, 1), t));
        }
    }
    let n = plane_dim(t);
    (n - linalg::rank(ideal.ring().field(), rows, n)) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile {
    pub values: BTreeMap<u32, u64>,
    pub stabilized_at: Option<u32>,
    pub stable_value: Option<u64>,
}

impl HilbertProfile {
    pub fn value(&self, t: u32) -> Option<u64> {
        match self.values.get(&t) {
            Some(v) => Some(*v),
            None => match (self.stabilized_at, self.stable_value) {
                (Some(s), Some(v)) if t >= s => Some(v),
                _ => None,
            },
        }
    }

    /// `H(t) = min(binom(t+2,2), e)` on every listed degree.
    pub fn is_generic(&self) -> bool {
        let Some(e) = self.stable_value else { return false };
        self.values
            .iter()
            .all(|(&t, &v)| v == (plane_dim(t) as u64).min(e))
    }
}

/// The full Hilbert function of a zero-dimensional scheme.
///
/// When the leading-term ideal contains pure powers of two variables `u, w`
/// (with `z` the third), a pair of exponents `(i,j)` on `u, w` contributes in
/// degree `t` iff `t - i - j < e(i,j)`, where `e(i,j)` is the least
/// `z`-exponent of a leading monomial dividing `u^i w^j z^∞`; only pairs
/// inside the box of the pure powers can have `e(i,j) > 0`, which bounds the
/// degree after which the function is constant. Otherwise the lcm bound of
/// the leading monomials is used.
pub fn hilbert_profile(ideal: &Ideal) -> Result<HilbertProfile> {
    let leads = leading_monomials(ideal);
    let max_lead = leads.iter().map(|l| l.degree()).max().unwrap_or(0);
    let pure = |k: usize| {
        leads
            .iter()
            .filter(|l| (0..3).all(|v| v == k || l.0[v] == 0))
            .map(|l| l.0[k] as u32)
            .min()
    };
    let powers: Vec<Option<u32>> = (0..3).map(pure).collect();
    let z = (0..3).rev().find(|&k| powers[k].is_none()).unwrap_or(2);
    let uv: Vec<usize> = (0..3).filter(|&k| k != z).collect();
    let bound = match (powers[uv[0]], powers[uv[1]]) {
        (Some(a), Some(b)) => {
            let mut bound = max_lead;
            for i in 0..a {
                for j in 0..b {
                    let e = leads
                        .iter()
                        .filter(|l| l.0[uv[0]] as u32 <= i && l.0[uv[1]] as u32 <= j)
                        .map(|l| l.0[z] as u32)
                        .min();
                    bound = bound.max(i + j + e.unwrap_or(0));
                }
            }
            bound
        }
        // Past the lcm bound the function is a polynomial of degree <= 2,
        // constant iff it takes one value three times in a row.
        _ => {
            let l = lcm_bound(&leads);
            let h: Vec<usize> = (l..=l + 2).map(|t| standard_monomials(&leads, t).len()).collect();
            if h[0] != h[1] || h[1] != h[2] {
                return Err(Error::NotZeroDimensional(max_lead));
            }
            l
        }
    };
    let mut values = BTreeMap::new();
    for t in 0..=bound {
        values.insert(t, standard_monomials(&leads, t).len() as u64);
    }
    let stable = values[&bound];
    let mut stabilized_at = bound;
    while stabilized_at > 0 && values[&(stabilized_at - 1)] == stable {
        stabilized_at -= 1;
    }
    Ok(HilbertProfile {
        values,
        stabilized_at: Some(stabilized_at),
        stable_value: Some(stable),
    })
}

/// Largest degree of an lcm of leading monomials; in three variables an lcm
/// of any subset is already an lcm of at most three of them.
fn lcm_bound(l: &[Monomial]) -> u32 {
    let mut best = l.iter().map(|m| m.degree()).max().unwrap_or(0);
    for a in 0..l.len() {
        for b in (a + 1)..l.len() {
            let ab = l[a].lcm(&l[b]);
            best = best.max(ab.degree());
            for c in l.iter().skip(b + 1) {
                best = best.max(ab.lcm(c).degree());
            }
        }
    }
    best
}

/// Least degree of a nonzero form in the ideal.
pub fn alpha(ideal: &Ideal) -> u32 {
    ideal.generators().iter().filter_map(|g| g.degree()).min().expect("nonzero ideal")
}

/// The stable value of the Hilbert function (degree of the scheme).
pub fn multiplicity(ideal: &Ideal) -> Result<u64> {
    Ok(hilbert_profile(ideal)?.stable_value.expect("zero-dimensional profile"))
}

/// Basis of `I_t`: `u - NF(u)` for the non-standard monomials `u` of degree `t`.
fn graded_piece(ideal: &Ideal, leads: &[Monomial], t: u32) -> Vec<Polynomial> {
    let ring = *ideal.ring();
    let gb: Vec<&Polynomial> = ideal.groebner().iter().collect();
    Monomial::plane_basis(t)
        .into_iter()
        .filter(|m| !is_standard(leads, m))
        .map(|m| {
            let u = ring.monomial(m, 1);
            u.sub(&groebner::reduce(&u, &gb)).expect("same ring")
        })
        .collect()
}

/// Degrees of a minimal generating set, ascending with multiplicity:
/// in each degree `j`, `dim I_j - dim (R_1 I_{j-1})`.
pub fn minimal_generator_degrees(ideal: &Ideal) -> Vec<u32> {
    let field = ideal.ring().field();
    let leads = leading_monomials(ideal);
    let top = leads.iter().map(|l| l.degree()).max().unwrap_or(0);
    let mut out = Vec::new();
    let mut prev: Vec<Polynomial> = Vec::new();
    for j in 0..=top {
        let piece = graded_piece(ideal, &leads, j);
        let mut span = EchelonBasis::new(field, plane_dim(j));
        for f in &prev {
            for k in 0..3 {
                span.insert(&coefficient_vector(&f.mul_term(&Monomial::var(k), 1), j));
            }
        }
        let count = piece.len() - span.dim();
        out.extend(std::iter::repeat(j).take(count));
        prev = piece;
    }
    out
}

const SUBSETS: [&[&[usize]]; 4] = [
    &[&[]],
    &[&[0], &[1], &[2]],
    &[&[0, 1], &[0, 2], &[1, 2]],
    &[&[0, 1, 2]],
];

fn subset_index(i: usize, s: &[usize]) -> usize {
    SUBSETS[i].iter().position(|x| *x == s).expect("subset")
}

/// Multiplication maps on the standard-monomial bases of `R/I`.
struct Quotient<'a> {
    ring: Ring,
    gb: Vec<&'a Polynomial>,
    leads: Vec<Monomial>,
    std: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
    nf: HashMap<Monomial, Vec<(usize, u32)>>,
}

impl<'a> Quotient<'a> {
    fn new(ideal: &'a Ideal) -> Self {
        Quotient {
            ring: *ideal.ring(),
            gb: ideal.groebner().iter().collect(),
            leads: leading_monomials(ideal),
            std: Vec::new(),
            index: Vec::new(),
            nf: HashMap::new(),
        }
    }

    fn ensure(&mut self, t: u32) {
        while self.std.len() <= t as usize {
            let d = self.std.len() as u32;
            let s = standard_monomials(&self.leads, d);
            self.index.push(s.iter().enumerate().map(|(i, m)| (*m, i)).collect());
            self.std.push(s);
        }
    }

    fn dim(&mut self, t: i64) -> usize {
        if t < 0 {
            return 0;
        }
        self.ensure(t as u32);
        self.std[t as usize].len()
    }

    /// Coordinates of `NF(m)` in the standard basis of its degree.
    fn normal_form(&mut self, m: Monomial) -> Vec<(usize, u32)> {
        let t = m.degree();
        self.ensure(t);
        if let Some(&i) = self.index[t as usize].get(&m) {
            return vec![(i, 1)];
        }
        if let Some(v) = self.nf.get(&m) {
            return v.clone();
        }
        let r = groebner::reduce(&self.ring.monomial(m, 1), &self.gb);
        let v: Vec<(usize, u32)> = r
            .terms()
            .iter()
            .map(|(u, c)| (self.index[t as usize][u], *c))
            .collect();
        self.nf.insert(m, v.clone());
        v
    }

    /// Rank of the Koszul differential `d_i` in internal degree `j`.
    fn koszul_rank(&mut self, i: usize, j: u32) -> usize {
        if i == 0 || i > 3 || (j as i64) < i as i64 {
            return 0;
        }
        let src_t = j - i as u32;
        let src = self.dim(src_t as i64);
        let tgt = self.dim(src_t as i64 + 1);
        if src == 0 || tgt == 0 {
            return 0;
        }
        let field = self.ring.field();
        let ncols = SUBSETS[i - 1].len() * tgt;
        let mut rows = Vec::with_capacity(SUBSETS[i].len() * src);
        for s_set in SUBSETS[i] {
            for si in 0..src {
                let s = self.std[src_t as usize][si];
                let mut row = vec![0u32; ncols];
                for (pos, &k) in s_set.iter().enumerate() {
                    let rest: Vec<usize> = s_set.iter().copied().filter(|&x| x != k).collect();
                    let block = subset_index(i - 1, &rest) * tgt;
                    let nf = self.normal_form(s.mul(&Monomial::var(k)));
                    for (col, c) in nf {
                        let c = if pos % 2 == 1 { field.neg(c) } else { c };
                        row[block + col] = field.add(row[block + col], c);
                    }
                }
                rows.push(row);
            }
        }
        linalg::rank(field, rows, ncols)
    }

    /// `β_{i,j}(R/I)` for `i = 0..=3`.
    fn betti_slice(&mut self, j: u32) -> [u64; 4] {
        let ranks: Vec<usize> = (0..=4).map(|i| self.koszul_rank(i, j)).collect();
        let mut out = [0u64; 4];
        for (i, o) in out.iter_mut().enumerate() {
            let dim = SUBSETS[i].len() * self.dim(j as i64 - i as i64);
            *o = (dim - ranks[i] - ranks[i + 1]) as u64;
        }
        out
    }

    /// Degree beyond which every Betti number of `R/in(I)` vanishes: the
    /// largest degree of an lcm of at most three leading monomials (Taylor
    /// resolution), which bounds the Betti numbers of `R/I` as well.
    fn taylor_bound(&self) -> u32 {
        lcm_bound(&self.leads)
    }
}

/// Graded Betti numbers of an ideal, `β_{i,j}(I) = β_{i+1,j}(R/I)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    /// Nonzero `(i, j) -> β_{i,j}(I)`.
    #[serde(with = "betti_entries")]
    pub entries: BTreeMap<(u32, u32), u64>,
    /// Entries are exact for all internal degrees `j <= truncation_degree`.
    pub truncation_degree: u32,
    /// Two consecutive all-zero degrees follow the last nonzero entry.
    pub complete: bool,
    /// Degree past which vanishing is guaranteed by the leading-term ideal;
    /// the table is provably complete when `truncation_degree` reaches it.
    pub proven_bound: u32,
}

mod betti_entries {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        i: u32,
        j: u32,
        beta: u64,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<(u32, u32), u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m.iter().map(|(&(i, j), &beta)| Entry { i, j, beta }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BTreeMap<(u32, u32), u64>, D::Error> {
        let v: Vec<Entry> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|e| ((e.i, e.j), e.beta)).collect())
    }
}

impl BettiTable {
    pub fn get(&self, i: u32, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_proven(&self) -> bool {
        self.truncation_degree >= self.proven_bound
    }

    /// `max { j - i : β_{i,j} ≠ 0 }`.
    pub fn regularity(&self) -> Option<u32> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    /// Betti numbers of `R/I`, including `β_{0,0} = 1`.
    pub fn quotient_entries(&self) -> BTreeMap<(u32, u32), u64> {
        let mut m: BTreeMap<(u32, u32), u64> = self.entries.iter().map(|(&(i, j), &b)| ((i + 1, j), b)).collect();
        m.insert((0, 0), 1);
        m
    }

    /// The triangular layout: rows `j - i`, columns `i`.
    pub fn to_text(&self) -> String {
        let maxi = self.entries.keys().map(|k| k.0).max().unwrap_or(0);
        let rows: Vec<u32> = {
            let mut r: Vec<u32> = self.entries.keys().map(|&(i, j)| j - i).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let w = 6;
        let mut s = String::new();
        let _ = write!(s, "{:>7}", "");
        for i in 0..=maxi {
            let _ = write!(s, "{i:>w$}");
        }
        s.push('\n');
        let _ = write!(s, "{:>7}", "total:");
        for i in 0..=maxi {
            let tot: u64 = self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum();
            let _ = write!(s, "{tot:>w$}");
        }
        s.push('\n');
        for r in rows {
            let _ = write!(s, "{:>7}", format!("{r}:"));
            for i in 0..=maxi {
                let b = self.get(i, i + r);
                if b == 0 {
                    let _ = write!(s, "{:>w$}", ".");
                } else {
                    let _ = write!(s, "{b:>w$}");
                }
            }
            s.push('\n');
        }
        s
    }
}

fn finish_table(q: &Quotient, slices: &[[u64; 4]]) -> BettiTable {
    let mut entries = BTreeMap::new();
    let mut last = 0;
    for (j, sl) in slices.iter().enumerate() {
        for i in 1..4 {
            if sl[i] != 0 {
                entries.insert((i as u32 - 1, j as u32), sl[i]);
                last = j;
            }
        }
    }
    let truncation_degree = slices.len() as u32 - 1;
    BettiTable {
        entries,
        truncation_degree,
        complete: truncation_degree as usize >= last + 2,
        proven_bound: q.taylor_bound(),
    }
}

/// Betti numbers of `I` for all internal degrees up to `degree_bound`.
pub fn graded_betti(ideal: &Ideal, degree_bound: u32) -> BettiTable {
    let mut q = Quotient::new(ideal);
    let slices: Vec<[u64; 4]> = (0..=degree_bound).map(|j| q.betti_slice(j)).collect();
    finish_table(&q, &slices)
}

/// Betti table grown degree by degree until it is complete and covers all
/// generator degrees. It continues to the proven bound unless that lies
/// beyond `max_degree`; failing completeness within `max_degree` is an error.
pub fn betti_until_complete(ideal: &Ideal, max_degree: Option<u32>) -> Result<BettiTable> {
    let mut q = Quotient::new(ideal);
    let top = q.leads.iter().map(|l| l.degree()).max().unwrap_or(0);
    let proven = q.taylor_bound();
    let mut slices = Vec::new();
    let mut last = 0usize;
    let mut j = 0u32;
    loop {
        if let Some(md) = max_degree {
            if j > md {
                return Err(Error::BudgetExceeded(format!(
                    "Betti table not complete within degree {md}"
                )));
            }
        }
        let sl = q.betti_slice(j);
        if sl[1..].iter().any(|&b| b != 0) {
            last = j as usize;
        }
        slices.push(sl);
        let complete = j >= top + 2 && j as usize >= last + 2;
        if complete && (j >= proven || max_degree == Some(j)) {
            return Ok(finish_table(&q, &slices));
        }
        j += 1;
    }
}

/// Castelnuovo–Mumford regularity read off a complete Betti table.
pub fn regularity(ideal: &Ideal, max_degree: Option<u32>) -> Result<u32> {
    Ok(betti_until_complete(ideal, max_degree)?
        .regularity()
        .expect("nonzero ideal has generators"))
}

/// For a saturated ideal of points: one more than the degree where the
/// Hilbert function reaches its stable value.
pub fn regularity_from_hilbert(profile: &HilbertProfile) -> Option<u32> {
    profile.stabilized_at.map(|s| s + 1)
}

/// Checks `Σ_i (-1)^i β_{i,j}(R/I) = [t^j] (1-t)^3 Σ_k H(k) t^k` for every
/// `j` up to the truncation degree.
pub fn hilbert_series_identity(ideal: &Ideal, table: &BettiTable) -> bool {
    let q = table.quotient_entries();
    let b = table.truncation_degree;
    let leads = leading_monomials(ideal);
    let h: Vec<i64> = (0..=b).map(|t| standard_monomials(&leads, t).len() as i64).collect();
    (0..=b).all(|j| {
        let lhs: i64 = (0..4u32)
            .map(|i| {
                let v = q.get(&(i, j)).copied().unwrap_or(0) as i64;
                if i % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum();
        let rhs: i64 = (0..=3u32.min(j))
            .map(|k| {
                let c = binom(3, k as u64) as i64 * h[(j - k) as usize];
                if k % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .sum();
        lhs == rhs
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub alpha: u32,
    pub points: usize,
    /// Conditions (i) through (vii), in order.
    pub conditions: [bool; 7],
    pub details: Vec<String>,
}

impl EquivalenceReport {
    pub fn all_true(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }

    pub fn all_false(&self) -> bool {
        self.conditions.iter().all(|&c| !c)
    }

    /// A mixed vector contradicts the equivalence of the seven conditions.
    pub fn is_falsification(&self) -> bool {
        !self.all_true() && !self.all_false()
    }
}

fn single_degree_betti(table: &BettiTable, expected: &[((u32, u32), u64)]) -> bool {
    table.complete
        && table.entries.len() == expected.len()
        && expected.iter().all(|&((i, j), b)| table.get(i, j) == b)
}

/// Evaluates each of the seven conditions independently for a reduced
/// point configuration.
pub fn verify_equivalences(cfg: &Configuration, budget: &Budget) -> Result<EquivalenceReport> {
    if !cfg.is_reduced() {
        return Err(Error::InvalidParameter("equivalences need a reduced configuration".into()));
    }
    let ideal = symbolic::configuration_ideal(cfg, budget)?;
    let a = alpha(&ideal);
    let n = cfg.len();
    let a64 = a as u64;
    let mut details = Vec::new();
    let cap = budget.max_degree;

    let gens = minimal_generator_degrees(&ideal);
    let c1 = gens.len() as u64 == a64 + 1 && gens.iter().all(|&g| g == a);
    details.push(format!("(i) minimal generator degrees {gens:?}"));

    let profile = hilbert_profile(&ideal)?;
    let c2 = profile.is_generic() && n as u64 == binom(a64 + 1, 2);
    details.push(format!(
        "(ii) generic Hilbert function: {}, |X| = {n}, binom(alpha+1,2) = {}",
        profile.is_generic(),
        binom(a64 + 1, 2)
    ));

    let t1 = betti_until_complete(&ideal, cap)?;
    let c3 = single_degree_betti(&t1, &[((0, a), a64 + 1), ((1, a + 1), a64)]);
    details.push(format!("(iii) Betti entries {:?}", t1.entries));

    let reg1 = t1.regularity().unwrap();
    let c4 = reg1 == a;
    details.push(format!("(iv) reg = {reg1}, alpha = {a}"));

    let mut c5 = true;
    let mut regs = vec![reg1];
    let mut sq_table = None;
    let mut sq_gens = Vec::new();
    for m in 2..=3u32 {
        let pm = ideal.power(m)?;
        let tm = betti_until_complete(&pm, cap.map(|c| c.max(m * (reg1 + 2))))?;
        let r = tm.regularity().unwrap();
        regs.push(r);
        if m == 2 {
            sq_gens = minimal_generator_degrees(&pm);
            sq_table = Some(tm);
        }
    }
    for (k, r) in regs.iter().enumerate() {
        c5 &= *r == (k as u32 + 1) * a;
    }
    details.push(format!("(v) reg(I^m) for m = 1..3: {regs:?}"));

    let c6 = sq_gens.len() as u64 == binom(a64 + 2, 2) && sq_gens.iter().all(|&g| g == 2 * a);
    details.push(format!("(vi) minimal generator degrees of I^2: {sq_gens:?}"));

    let t2 = sq_table.unwrap();
    let c7 = single_degree_betti(
        &t2,
        &[
            ((0, 2 * a), binom(a64 + 2, 2)),
            ((1, 2 * a + 1), 2 * binom(a64 + 1, 2)),
            ((2, 2 * a + 2), binom(a64, 2)),
        ],
    );
    details.push(format!("(vii) Betti entries of I^2 {:?}", t2.entries));

    Ok(EquivalenceReport {
        alpha: a,
        points: n,
        conditions: [c1, c2, c3, c4, c5, c6, c7],
        details,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub config_hash: String,
    pub alpha: u32,
    pub regularity: u32,
    pub minimal_generator_degrees: Vec<u32>,
    pub multiplicity: u64,
    pub hilbert: HilbertProfile,
    pub betti: BettiTable,
}

/// All invariants of the ideal of a configuration. For reduced points the
/// regularity is cross-checked against the Hilbert function.
pub fn invariant_report(cfg: &Configuration, budget: &Budget) -> Result<InvariantReport> {
    let ideal = symbolic::configuration_ideal(cfg, budget)?;
    let hilbert = hilbert_profile(&ideal)?;
    let betti = betti_until_complete(&ideal, budget.max_degree)?;
    let reg = betti.regularity().unwrap();
    if cfg.is_reduced() && regularity_from_hilbert(&hilbert) != Some(reg) {
        return Err(Error::Falsification(format!(
            "Koszul regularity {reg} disagrees with Hilbert stabilization {:?}",
            hilbert.stabilized_at
        )));
    }
    Ok(InvariantReport {
        config_hash: cfg.content_hash(),
        alpha: alpha(&ideal),
        regularity: reg,
        minimal_generator_degrees: minimal_generator_degrees(&ideal),
        multiplicity: hilbert.stable_value.unwrap(),
        hilbert,
        betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, DEFAULT_PRIME};
    use crate::geometry::{point_ideal, ProjectivePoint};

    fn ring() -> Ring {
        Ring::plane(PrimeField::new(DEFAULT_PRIME).unwrap())
    }

    fn mono(r: &Ring, a: u16, b: u16, c: u16) -> Polynomial {
        r.monomial(Monomial::plane(a, b, c), 1)
    }

    #[test]
    fn principal_ideal_betti() {
        let r = ring();
        let i = Ideal::new(r, vec![r.var(0)]).unwrap();
        let t = graded_betti(&i, 6);
        assert_eq!(t.entries, BTreeMap::from([((0, 1), 1)]));
        assert!(t.complete && t.is_proven());
        assert!(hilbert_series_identity(&i, &t));
        assert!(matches!(hilbert_profile(&i), Err(Error::NotZeroDimensional(_))));
    }

    #[test]
    fn point_invariants() {
        let r = ring();
        let f = r.field();
        let p = ProjectivePoint::new(f, [1, 0, 0]).unwrap();
        let i = point_ideal(&r, &p);
        for t in 0..6 {
            assert_eq!(hilbert_function(&i, t), 1);
        }
        assert_eq!(alpha(&i), 1);
        assert_eq!(regularity(&i, None).unwrap(), 1);
        assert_eq!(multiplicity(&i).unwrap(), 1);
        let sq = i.power(2).unwrap();
        assert_eq!(hilbert_function(&sq, 2), 3);
        assert_eq!(hilbert_function(&sq, 5), 3);
        assert_eq!(multiplicity(&sq).unwrap(), 3);
        let t = graded_betti(&i, 5);
        assert_eq!(t.entries, BTreeMap::from([((0, 1), 2), ((1, 2), 1)]));
    }

    #[test]
    fn generator_degrees_of_monomial_ideal() {
        let r = ring();
        let i = Ideal::new(r, vec![r.var(0), mono(&r, 0, 2, 0)]).unwrap();
        assert_eq!(minimal_generator_degrees(&i), vec![1, 2]);
        // (x0, x1^5): the Betti table has a gap of three zero degrees
        let i = Ideal::new(r, vec![r.var(0), mono(&r, 0, 5, 0)]).unwrap();
        let t = graded_betti(&i, 8);
        assert_eq!(t.entries, BTreeMap::from([((0, 1), 1), ((0, 5), 1), ((1, 6), 1)]));
        assert_eq!(t.proven_bound, 6);
    }

    #[test]
    fn hilbert_rank_oracle_on_small_ideals() {
        let r = ring();
        let i = Ideal::new(r, vec![mono(&r, 2, 0, 0), mono(&r, 1, 1, 1), r.var(1).pow(3).sub(&mono(&r, 0, 0, 3)).unwrap()]).unwrap();
        for t in 0..10 {
            assert_eq!(hilbert_function(&i, t), hilbert_function_by_rank(&i, t), "t={t}");
        }
    }

    #[test]
    fn koszul_on_complete_intersection() {
        // two general conics: β(I) = {(0,2):2, (1,4):1}
        let r = ring();
        let q1 = mono(&r, 2, 0, 0).add(&mono(&r, 0, 1, 1)).unwrap();
        let q2 = mono(&r, 0, 2, 0).add(&mono(&r, 1, 0, 1)).unwrap().add(&mono(&r, 0, 0, 2)).unwrap();
        let i = Ideal::new(r, vec![q1, q2]).unwrap();
        let t = betti_until_complete(&i, Some(12)).unwrap();
        assert_eq!(t.entries, BTreeMap::from([((0, 2), 2), ((1, 4), 1)]));
        assert_eq!(multiplicity(&i).unwrap(), 4);
        assert!(hilbert_series_identity(&i, &t));
    }
}
