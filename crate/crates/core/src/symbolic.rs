//! Symbolic powers of point configurations, initial degrees of fat points,
//! Waldschmidt constant intervals, containment sweeps and resurgence bounds.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::geometry::{point_ideal, Configuration, ConfigurationKind, ProjectivePoint};
use crate::groebner::Budget;
use crate::ideal::{from_coefficient_vector, minimal_generating_subset, plane_dim, Ideal};
use crate::linalg;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact rationals serialize as `"p/q"` (or `"p"` for integers).
pub mod rational_serde {
    use super::*;
    use serde::{Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        BigRational::from_str(&s).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&r.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<BigRational>, D::Error> {
            let s: Option<String> = Option::deserialize(d)?;
            s.map(|s| BigRational::from_str(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `q >= 2 - 2/(√d + 1)`, decided exactly.
pub fn at_least_sqrt_bound(q: &BigRational, d: u64) -> bool {
    let two = ratio(2, 1);
    if *q >= two {
        return true;
    }
    if q.is_negative() {
        return false;
    }
    // q >= 2 - 2/(√d+1)  <=>  √d <= q/(2-q)
    let s = q / (&two - q);
    &s * &s >= ratio(d as i64, 1)
}

/// Binomial coefficients mod p up to row `n`.
fn pascal(field: PrimeField, n: usize) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![1u32; i + 1];
        for k in 1..i {
            row[k] = field.add(rows[i - 1][k - 1], rows[i - 1][k]);
        }
        rows.push(row);
    }
    rows
}

fn powers(field: PrimeField, x: u32, n: usize) -> Vec<u32> {
    let mut v = Vec::with_capacity(n + 1);
    let mut acc = 1u32;
    for _ in 0..=n {
        v.push(acc);
        acc = field.mul(acc, x);
    }
    v
}

/// Affine chart of a point: `(k, a, b)` with `x_k = 1` and local coordinates
/// `x_a, x_b`.
fn chart(p: &ProjectivePoint) -> (usize, usize, usize) {
    let k = p.chart();
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    (k, others[0], others[1])
}

/// Rows expressing "all Hasse derivatives of order `< m` vanish at `p`" on
/// the coefficients of a degree-`t` form: `binom(m+1,2)` rows.
pub fn fat_point_conditions(field: PrimeField, p: &ProjectivePoint, m: u32, t: u32) -> Vec<Vec<u32>> {
    assert!(m < field.modulus(), "multiplicity must stay below the characteristic");
    let (_, a, b) = chart(p);
    let (pu, pv) = (p.coords()[a], p.coords()[b]);
    let n = t as usize;
    let binom = pascal(field, n);
    let (powu, powv) = (powers(field, pu, n), powers(field, pv, n));
    let basis = Monomial::plane_basis(t);
    let mut rows = Vec::new();
    for total in 0..m as usize {
        for al in 0..=total {
            let be = total - al;
            let row: Vec<u32> = basis
                .iter()
                .map(|e| {
                    let (eu, ev) = (e.0[a] as usize, e.0[b] as usize);
                    if eu < al || ev < be {
                        return 0;
                    }
                    let x = field.mul(binom[eu][al], powu[eu - al]);
                    field.mul(x, field.mul(binom[ev][be], powv[ev - be]))
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// A fat point scheme: points with multiplicities.
pub type Scheme = [(ProjectivePoint, u32)];

pub fn scheme_of(cfg: &Configuration) -> Vec<(ProjectivePoint, u32)> {
    cfg.points.iter().map(|p| (p.point, p.multiplicity)).collect()
}

pub fn scheme_degree(scheme: &Scheme) -> u64 {
    scheme.iter().map(|(_, m)| *m as u64 * (*m as u64 + 1) / 2).sum()
}

fn conditions(field: PrimeField, scheme: &Scheme, t: u32) -> Vec<Vec<u32>> {
    scheme
        .iter()
        .flat_map(|(p, m)| fat_point_conditions(field, p, *m, t))
        .collect()
}

/// `dim (R/I_X)_t` for the fat point scheme `X`: the rank of its conditions.
pub fn hilbert_by_interpolation(field: PrimeField, scheme: &Scheme, t: u32) -> u64 {
    linalg::rank(field, conditions(field, scheme, t), plane_dim(t)) as u64
}

/// Forms of degree `t` in `I_X`, as a basis of the kernel.
fn interpolation_kernel(ring: &Ring, scheme: &Scheme, t: u32) -> Vec<Polynomial> {
    let field = ring.field();
    let e = linalg::echelon(field, conditions(field, scheme, t), plane_dim(t));
    e.kernel_basis(field)
        .into_iter()
        .map(|v| from_coefficient_vector(ring, t, &v))
        .collect()
}

fn interpolant(ring: &Ring, scheme: &Scheme, t: u32) -> Option<Polynomial> {
    let field = ring.field();
    let e = linalg::echelon(field, conditions(field, scheme, t), plane_dim(t));
    e.free_columns()
        .first()
        .map(|&c| from_coefficient_vector(ring, t, &e.kernel_vector_at(field, c)).monic())
}

/// Order of vanishing of `f` at `p`, capped at `cap`: the least `α+β` with
/// a nonzero coefficient of `s^α w^β` in `f(p + (s, w))` on the chart of `p`.
pub fn vanishing_order(f: &Polynomial, p: &ProjectivePoint, cap: u32) -> u32 {
    let field = f.ring().field();
    let Some(deg) = f.degree() else { return cap };
    let (_, a, b) = chart(p);
    let (pu, pv) = (p.coords()[a], p.coords()[b]);
    let n = deg as usize;
    let cap_us = cap as usize;
    let binom = pascal(field, n);
    let (powu, powv) = (powers(field, pu, n), powers(field, pv, n));
    // coefficients of u^i v^j after setting x_k = 1
    let mut g = vec![vec![0u32; n + 1]; n + 1];
    for (m, c) in f.terms() {
        let (i, j) = (m.0[a] as usize, m.0[b] as usize);
        g[j][i] = field.add(g[j][i], *c);
    }
    // shift u: A[al][j] = Σ_i g[j][i] C(i,al) pu^{i-al}
    let mut shifted = vec![vec![0u32; n + 1]; cap_us.min(n + 1)];
    for (j, row) in g.iter().enumerate() {
        for (i, &c) in row.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (al, srow) in shifted.iter_mut().enumerate().take(i + 1) {
                let x = field.mul(c, field.mul(binom[i][al], powu[i - al]));
                srow[j] = field.add(srow[j], x);
            }
        }
    }
    let mut order = cap;
    for (al, srow) in shifted.iter().enumerate() {
        for be in 0..cap_us.saturating_sub(al) {
            if al + be >= order as usize {
                break;
            }
            let mut acc = 0u32;
            for (j, &c) in srow.iter().enumerate().skip(be) {
                if c != 0 {
                    acc = field.add(acc, field.mul(c, field.mul(binom[j][be], powv[j - be])));
                }
            }
            if acc != 0 {
                order = order.min((al + be) as u32);
                break;
            }
        }
    }
    order
}

/// Least `t <= t_max` with a nonzero degree-`t` form vanishing to the
/// scheme's orders, and such a form. `lower_hint` is verified, not trusted.
pub fn alpha_of_scheme(ring: &Ring, scheme: &Scheme, lower_hint: u32, upper_hint: Option<u32>, t_max: u32) -> Result<(u32, Polynomial)> {
    let field = ring.field();
    let solvable = |t: u32| hilbert_by_interpolation(field, scheme, t) < plane_dim(t) as u64;
    let mut lo = lower_hint.min(t_max);
    if lo > 0 && solvable(lo - 1) {
        lo = 0;
    }
    // smallest degree where the parameter count forces a solution
    let total = scheme_degree(scheme);
    let mut forced = 0;
    while (plane_dim(forced) as u64) <= total {
        forced += 1;
    }
    let mut hi = upper_hint.unwrap_or(forced).min(forced).min(t_max).max(lo);
    if !solvable(hi) {
        if hi == t_max || hi >= forced {
            return Err(Error::NoSolution(t_max));
        }
        lo = hi + 1;
        hi = forced.min(t_max);
        if !solvable(hi) {
            return Err(Error::NoSolution(t_max));
        }
    }
    // invariant: nothing below lo, solvable at hi
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if solvable(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let f = interpolant(ring, scheme, hi).expect("solvable degree has a kernel");
    Ok((hi, f))
}

/// `α` of the points with uniform multiplicity `m`, with a witnessing form.
pub fn alpha_fat_points(ring: &Ring, points: &[ProjectivePoint], m: u32, t_max: u32) -> Result<(u32, Polynomial)> {
    let scheme: Vec<(ProjectivePoint, u32)> = points.iter().map(|p| (*p, m)).collect();
    alpha_of_scheme(ring, &scheme, m, None, t_max)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymbolicMethod {
    /// Folded intersection of powers of point ideals (elimination).
    #[default]
    Intersection,
    /// Degree-by-degree kernels of the fat point conditions.
    Interpolation,
}

#[derive(Clone, Debug)]
pub struct SymbolicPower {
    pub m: u32,
    pub config_hash: String,
    pub ideal: Ideal,
}

/// `I^(m) = ⋂ I(p)^(m·mult(p))`.
pub fn symbolic_power(cfg: &Configuration, m: u32, budget: &Budget) -> Result<SymbolicPower> {
    symbolic_power_with(cfg, m, budget, SymbolicMethod::Intersection)
}

pub fn symbolic_power_with(cfg: &Configuration, m: u32, budget: &Budget, method: SymbolicMethod) -> Result<SymbolicPower> {
    if m == 0 {
        return Err(Error::InvalidParameter("symbolic power exponent must be >= 1".into()));
    }
    let ring = cfg.ring()?;
    let scheme: Vec<(ProjectivePoint, u32)> = cfg.points.iter().map(|p| (p.point, p.multiplicity * m)).collect();
    let ideal = match method {
        SymbolicMethod::Intersection => fat_points_by_intersection(&ring, &scheme, budget)?,
        SymbolicMethod::Interpolation => fat_points_by_interpolation(&ring, &scheme, budget)?,
    };
    Ok(SymbolicPower {
        m,
        config_hash: cfg.content_hash(),
        ideal,
    })
}

/// The radical ideal of a configuration's support with its multiplicities.
pub fn configuration_ideal(cfg: &Configuration, budget: &Budget) -> Result<Ideal> {
    Ok(symbolic_power(cfg, 1, budget)?.ideal)
}

pub fn fat_points_by_intersection(ring: &Ring, scheme: &Scheme, budget: &Budget) -> Result<Ideal> {
    let mut acc: Option<Ideal> = None;
    for (i, (p, m)) in scheme.iter().enumerate() {
        let q = point_ideal(ring, p).power(*m)?;
        acc = Some(match acc {
            None => q,
            Some(a) => a.intersection_with(&q, budget).map_err(|e| match e {
                Error::BudgetExceeded(s) => {
                    Error::BudgetExceeded(format!("{s} (after intersecting {i} of {} points)", scheme.len()))
                }
                e => e,
            })?,
        });
    }
    acc.ok_or_else(|| Error::InvalidParameter("empty scheme".into()))
}

/// Generators from the kernels in degrees up to one past the degree where
/// the Hilbert function reaches the scheme degree (the regularity of a
/// saturated zero-dimensional ideal bounds its generator degrees).
pub fn fat_points_by_interpolation(ring: &Ring, scheme: &Scheme, budget: &Budget) -> Result<Ideal> {
    let field = ring.field();
    let total = scheme_degree(scheme);
    let mut t = 0;
    loop {
        budget.check(t)?;
        if hilbert_by_interpolation(field, scheme, t) == total {
            break;
        }
        t += 1;
    }
    let mut gens = Vec::new();
    for s in 0..=t + 1 {
        gens.extend(interpolation_kernel(ring, scheme, s));
    }
    Ideal::new(*ring, minimal_generating_subset(ring, gens))
}

/// The `c_d = a/b` values for `4 <= d <= 9`.
pub fn c_d(d: usize) -> Option<(u32, u32)> {
    match d {
        4 => Some((2, 1)),
        5 => Some((2, 1)),
        6 => Some((12, 5)),
        7 => Some((21, 8)),
        8 => Some((48, 17)),
        9 => Some((3, 1)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRecord {
    pub element: Polynomial,
    /// The element lies in `I^(symbolic_order)`.
    pub symbolic_order: u32,
    pub degree: u32,
    #[serde(with = "rational_serde")]
    pub bound_implied: BigRational,
    /// Degree of the interpolating factor `F` on the extra points.
    pub factor_degree: u32,
    /// Largest degree allowed for `F` by the construction.
    pub factor_degree_target: u32,
    /// Configuration points at which the vanishing order was verified.
    pub orders_checked: usize,
}

/// An element `F·D` of `I^(2bm)` bounding `α̂(I(Z_d))` from above, with
/// `D = (L_1⋯L_d)^{bm}` and `F` vanishing to order `bm` on the `q_i`.
/// For `d <= 9`, `(a, b)` come from `c_d`; otherwise `b = 1` and `F` has
/// degree at most `⌊(m+1)√d⌋`.
pub fn waldschmidt_certificate(cfg: &Configuration, m: u32) -> Result<CertificateRecord> {
    let ConfigurationKind::QuasiStar { d } = cfg.kind else {
        return Err(Error::InvalidParameter("certificates need a quasi star configuration".into()));
    };
    if d < 4 || m == 0 {
        return Err(Error::InvalidParameter(format!("certificate needs d >= 4 and m >= 1, got d={d}, m={m}")));
    }
    let ring = cfg.ring()?;
    let (order, target) = match c_d(d) {
        Some((a, b)) => (b * m, a * m),
        // ⌊(m+1)√d⌋
        None => (m, isqrt((m as u64 + 1).pow(2) * d as u64) as u32),
    };
    let tail = cfg.tail_points();
    let (deg_f, f) = alpha_fat_points(&ring, &tail, order, target)?;
    let lines: Vec<Polynomial> = cfg.lines.iter().map(|l| l.to_poly(&ring)).collect();
    let d_poly = Polynomial::product(&ring, &lines)?.pow(order);
    let element = f.mul(&d_poly)?;
    let symbolic_order = 2 * order;
    for wp in &cfg.points {
        let need = symbolic_order * wp.multiplicity;
        let got = vanishing_order(&element, &wp.point, need);
        if got < need {
            return Err(Error::Falsification(format!(
                "certificate vanishes to order {got} < {need} at {:?}",
                wp.point.coords()
            )));
        }
    }
    let degree = element.degree().unwrap();
    Ok(CertificateRecord {
        element,
        symbolic_order,
        degree,
        bound_implied: ratio(degree as i64, symbolic_order as i64),
        factor_degree: deg_f,
        factor_degree_target: target,
        orders_checked: cfg.points.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaldschmidtEstimate {
    /// `m -> α(I^(m))`.
    pub alpha_values: BTreeMap<u32, u32>,
    #[serde(with = "rational_serde")]
    pub lower_bound: BigRational,
    #[serde(with = "rational_serde")]
    pub upper_bound: BigRational,
    pub lower_source: String,
    pub upper_source: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub certificates: Vec<CertificateSummary>,
    /// Set when a budget stopped the sweep before `m_max`.
    #[serde(default)]
    pub truncated_at: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub symbolic_order: u32,
    pub degree: u32,
    #[serde(with = "rational_serde")]
    pub bound_implied: BigRational,
}

impl From<&CertificateRecord> for CertificateSummary {
    fn from(c: &CertificateRecord) -> Self {
        CertificateSummary {
            symbolic_order: c.symbolic_order,
            degree: c.degree,
            bound_implied: c.bound_implied.clone(),
        }
    }
}

impl WaldschmidtEstimate {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower_bound <= x && x <= &self.upper_bound
    }
}

/// `α(I^(m))` for `m = 1..=m_max` by interpolation, combined into the
/// tightest interval from `α(I^(m))/(m+1) <= α̂ <= α(I^(m))/m`, the bound
/// `α̂ >= (α+1)/2` for reduced plane points, and the given certificates.
pub fn waldschmidt_estimate(cfg: &Configuration, m_max: u32, certificates: &[CertificateRecord], deadline: Option<Instant>) -> Result<WaldschmidtEstimate> {
    if m_max == 0 {
        return Err(Error::InvalidParameter("mMax must be >= 1".into()));
    }
    let ring = cfg.ring()?;
    let mut alpha_values = BTreeMap::new();
    let mut truncated_at = None;
    let mut prev: Option<u32> = None;
    let mut a1 = None;
    for m in 1..=m_max {
        if let Some(dl) = deadline {
            if Instant::now() > dl && m > 1 {
                truncated_at = Some(m - 1);
                break;
            }
        }
        let scheme: Vec<(ProjectivePoint, u32)> = cfg.points.iter().map(|p| (p.point, p.multiplicity * m)).collect();
        let lo = prev.map_or(m, |a| a + 1);
        let hi = match (prev, a1) {
            (Some(p), Some(a)) => Some(p + a),
            _ => None,
        };
        let (a, _) = alpha_of_scheme(&ring, &scheme, lo, hi, u32::MAX / 4)?;
        if m == 1 {
            a1 = Some(a);
        }
        alpha_values.insert(m, a);
        prev = Some(a);
    }
    let mut lower = BigRational::zero();
    let mut lower_source = String::new();
    let mut upper: Option<BigRational> = None;
    let mut upper_source = String::new();
    for (&m, &a) in &alpha_values {
        let lo = ratio(a as i64, m as i64 + 1);
        if lo > lower {
            lower = lo;
            lower_source = format!("alpha(I^({m}))/({m}+1)");
        }
        let up = ratio(a as i64, m as i64);
        if upper.as_ref().is_none_or(|u| up < *u) {
            upper = Some(up);
            upper_source = format!("alpha(I^({m}))/{m}");
        }
    }
    if cfg.is_reduced() {
        let a = alpha_values[&1];
        let ch = ratio(a as i64 + 1, 2);
        if ch > lower {
            lower = ch;
            lower_source = "(alpha+1)/2 for reduced plane points".into();
        }
    }
    for c in certificates {
        if upper.as_ref().is_none_or(|u| c.bound_implied < *u) {
            upper = Some(c.bound_implied.clone());
            upper_source = format!("certificate of degree {} in I^({})", c.degree, c.symbolic_order);
        }
    }
    let upper = upper.expect("at least one m");
    if lower > upper {
        return Err(Error::Falsification(format!(
            "empty Waldschmidt interval [{lower}, {upper}]"
        )));
    }
    Ok(WaldschmidtEstimate {
        alpha_values,
        lower_bound: lower,
        upper_bound: upper,
        lower_source,
        upper_source,
        certificates: certificates.iter().map(CertificateSummary::from).collect(),
        truncated_at,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CellStatus {
    Holds,
    Fails { witness: Polynomial },
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentRow {
    pub m: u32,
    pub r: u32,
    #[serde(flatten)]
    pub status: CellStatus,
}

impl ContainmentRow {
    pub fn holds(&self) -> Option<bool> {
        self.status.holds()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawCheck {
    pub description: String,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub m_max: u32,
    pub r_max: u32,
    pub rows: Vec<ContainmentRow>,
    #[serde(with = "rational_serde::option")]
    pub max_failing_ratio: Option<BigRational>,
    /// `I^m ⊆ I^(m)` and `I^(m+1) ⊆ I^(m)` on the computed range.
    pub laws: Vec<LawCheck>,
}

impl ContainmentReport {
    pub fn cell(&self, m: u32, r: u32) -> Option<&ContainmentRow> {
        self.rows.iter().find(|c| c.m == m && c.r == r)
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|c| c.holds().is_some()) && self.laws.iter().all(|l| l.holds.is_some())
    }

    /// Rows `m`, columns `r`; `⊆`, `⊄` or `?`.
    pub fn to_text(&self) -> String {
        let mut s = String::from("m\\r");
        for r in 1..=self.r_max {
            let _ = write!(s, "{r:>4}");
        }
        s.push('\n');
        for m in 1..=self.m_max {
            let _ = write!(s, "{m:>3}");
            for r in 1..=self.r_max {
                let sym = match self.cell(m, r).and_then(|c| c.holds()) {
                    Some(true) => "⊆",
                    Some(false) => "⊄",
                    None => "?",
                };
                let _ = write!(s, "{sym:>4}");
            }
            s.push('\n');
        }
        if let Some(q) = &self.max_failing_ratio {
            let _ = writeln!(s, "max failing m/r: {q}");
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("m,r,status,witness_degree\n");
        for c in &self.rows {
            let (st, wd) = match &c.status {
                CellStatus::Holds => ("holds", String::new()),
                CellStatus::Fails { witness } => ("fails", witness.degree().unwrap_or(0).to_string()),
                CellStatus::Unknown { .. } => ("unknown", String::new()),
            };
            let _ = writeln!(s, "{},{},{},{}", c.m, c.r, st, wd);
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CellBudget {
    pub max_degree: Option<u32>,
    pub seconds: Option<f64>,
}

impl CellBudget {
    fn start(&self) -> Budget {
        Budget {
            max_degree: self.max_degree,
            deadline: self.seconds.map(|s| Instant::now() + Duration::from_secs_f64(s)),
        }
    }
}

fn cell_result(r: Result<crate::ideal::Containment>) -> Result<CellStatus> {
    match r {
        Ok(c) if c.holds => Ok(CellStatus::Holds),
        Ok(c) => Ok(CellStatus::Fails {
            witness: c.witness.expect("failing containment has a witness"),
        }),
        Err(Error::BudgetExceeded(s)) => Ok(CellStatus::Unknown { reason: s }),
        Err(e) => Err(e),
    }
}

/// Decides `I^(m) ⊆ I^r` on the grid `1..=m_max × 1..=r_max`. Cells beyond
/// the per-cell budget are reported unknown. A failure with `m >= 2r`
/// aborts with a falsification error.
pub fn containment_table(cfg: &Configuration, m_max: u32, r_max: u32, cell: CellBudget, method: SymbolicMethod) -> Result<ContainmentReport> {
    if m_max == 0 || r_max == 0 {
        return Err(Error::InvalidParameter("grid bounds must be >= 1".into()));
    }
    let base = configuration_ideal(cfg, &Budget::unlimited())?;
    let mut symbolic: Vec<Option<Ideal>> = Vec::new();
    for m in 1..=m_max.max(r_max) {
        let s = if m == 1 {
            Some(base.clone())
        } else {
            match symbolic_power_with(cfg, m, &cell.start(), method) {
                Ok(s) => s.ideal.try_groebner(&cell.start()).is_ok().then_some(s.ideal),
                Err(Error::BudgetExceeded(_)) => None,
                Err(e) => return Err(e),
            }
        };
        symbolic.push(s);
    }
    let mut ordinary: Vec<Option<Ideal>> = Vec::new();
    for r in 1..=r_max.max(m_max) {
        let o = if r == 1 { Some(base.clone()) } else { base.power(r).ok() };
        let o = o.filter(|i| i.try_groebner(&cell.start()).is_ok());
        ordinary.push(o);
    }
    let mut rows = Vec::new();
    let mut max_failing: Option<BigRational> = None;
    for m in 1..=m_max {
        for r in 1..=r_max {
            let status = match (&symbolic[m as usize - 1], &ordinary[r as usize - 1]) {
                (Some(s), Some(o)) => cell_result(s.is_subideal_with(o, &cell.start()))?,
                (None, _) => CellStatus::Unknown {
                    reason: format!("I^({m}) not computed within budget"),
                },
                (_, None) => CellStatus::Unknown {
                    reason: format!("I^{r} not computed within budget"),
                },
            };
            if let CellStatus::Fails { .. } = status {
                if m >= 2 * r {
                    return Err(Error::Falsification(format!(
                        "I^({m}) is not contained in I^{r} although m >= 2r"
                    )));
                }
                let q = ratio(m as i64, r as i64);
                if max_failing.as_ref().is_none_or(|x| q > *x) {
                    max_failing = Some(q);
                }
            }
            rows.push(ContainmentRow { m, r, status });
        }
    }
    let mut laws = Vec::new();
    for m in 1..=m_max {
        let sm = &symbolic[m as usize - 1];
        let om = &ordinary[m as usize - 1];
        let holds = match (om, sm) {
            (Some(o), Some(s)) => cell_result(o.is_subideal_with(s, &cell.start()))?.holds(),
            _ => None,
        };
        laws.push(LawCheck {
            description: format!("I^{m} ⊆ I^({m})"),
            holds,
        });
        if m < m_max {
            let holds = match (&symbolic[m as usize], sm) {
                (Some(next), Some(s)) => cell_result(next.is_subideal_with(s, &cell.start()))?.holds(),
                _ => None,
            };
            laws.push(LawCheck {
                description: format!("I^({}) ⊆ I^({m})", m + 1),
                holds,
            });
        }
    }
    Ok(ContainmentReport {
        m_max,
        r_max,
        rows,
        max_failing_ratio: max_failing,
        laws,
    })
}

impl CellStatus {
    pub fn holds(&self) -> Option<bool> {
        match self {
            CellStatus::Holds => Some(true),
            CellStatus::Fails { .. } => Some(false),
            CellStatus::Unknown { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundSource {
    #[serde(with = "rational_serde")]
    pub value: BigRational,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResurgenceBounds {
    #[serde(with = "rational_serde")]
    pub lower: BigRational,
    #[serde(with = "rational_serde")]
    pub upper: BigRational,
    pub lower_candidates: Vec<BoundSource>,
    pub upper_candidates: Vec<BoundSource>,
    /// When `reg = α`, `ρ = α/α̂` lies in `[α/α̂_upper, α/α̂_lower]`.
    #[serde(with = "rational_serde::option", default)]
    pub exact_form_lower: Option<BigRational>,
    #[serde(with = "rational_serde::option", default)]
    pub exact_form_upper: Option<BigRational>,
}

impl ResurgenceBounds {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }
}

/// Combines `α/α̂ <= ρ <= reg/α̂`, failing containments, `ρ >= 1` and the
/// `m >= 2r` containment (`ρ <= 2`) into one exact interval.
pub fn resurgence_bounds(alpha: u32, reg: u32, w: &WaldschmidtEstimate, containment: Option<&ContainmentReport>) -> Result<ResurgenceBounds> {
    let a = ratio(alpha as i64, 1);
    let mut lower_candidates = vec![
        BoundSource {
            value: BigRational::one(),
            source: "rho >= 1".into(),
        },
        BoundSource {
            value: &a / &w.upper_bound,
            source: format!("alpha / alpha-hat upper bound ({})", w.upper_source),
        },
    ];
    if let Some(q) = containment.and_then(|c| c.max_failing_ratio.clone()) {
        lower_candidates.push(BoundSource {
            value: q,
            source: "largest m/r with I^(m) not in I^r".into(),
        });
    }
    let upper_candidates = vec![
        BoundSource {
            value: ratio(2, 1),
            source: "I^(m) in I^r for m >= 2r".into(),
        },
        BoundSource {
            value: ratio(reg as i64, 1) / &w.lower_bound,
            source: format!("reg / alpha-hat lower bound ({})", w.lower_source),
        },
    ];
    let lower = lower_candidates.iter().map(|b| b.value.clone()).max().unwrap();
    let upper = upper_candidates.iter().map(|b| b.value.clone()).min().unwrap();
    if lower > upper {
        return Err(Error::Falsification(format!("empty resurgence interval [{lower}, {upper}]")));
    }
    let (exact_form_lower, exact_form_upper) = if reg == alpha {
        (Some(&a / &w.upper_bound), Some(&a / &w.lower_bound))
    } else {
        (None, None)
    };
    Ok(ResurgenceBounds {
        lower,
        upper,
        lower_candidates,
        upper_candidates,
        exact_form_lower,
        exact_form_upper,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum CorollaryMode {
    Epsilon {
        #[serde(with = "rational_serde")]
        epsilon: BigRational,
    },
    FailureOrder {
        r: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryPrediction {
    pub d: u64,
    /// Predicted interval `[lower, 2)` for `ρ(I(Z_d))`.
    #[serde(with = "rational_serde")]
    pub lower: BigRational,
    /// The bound from the quasi star interval at this `d`, when rational:
    /// `2 - 2c_d/(d+c_d)` for `d <= 9`, `2 - 2/(√d+1)` for square `d >= 10`.
    #[serde(with = "rational_serde::option")]
    pub quasi_star_lower: Option<BigRational>,
}

/// Lower bound on `ρ(I(Z_d))` from the quasi star interval, when rational.
pub fn quasi_star_rho_lower(d: u64) -> Option<BigRational> {
    if let Some((a, b)) = c_d(d as usize) {
        let c = ratio(a as i64, b as i64);
        let two = ratio(2, 1);
        let dd = ratio(d as i64, 1);
        return Some(&two - &two * &c / (dd + &c));
    }
    if d >= 10 {
        let s = isqrt(d);
        if s * s == d {
            return Some(ratio(2, 1) - ratio(2, s as i64 + 1));
        }
    }
    None
}

/// Smallest admissible `d` for the requested resurgence guarantee.
pub fn corollary_parameters(mode: &CorollaryMode) -> Result<CorollaryPrediction> {
    let (d, lower) = match mode {
        CorollaryMode::Epsilon { epsilon } => {
            if !epsilon.is_positive() || *epsilon >= ratio(1, 2) {
                return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1/2), got {epsilon}")));
            }
            let x = ratio(2, 1) / epsilon - BigRational::one();
            let sq = &x * &x;
            let d = sq.ceil().to_integer().to_u64().ok_or_else(|| Error::InvalidParameter("epsilon too small".into()))?;
            (d, ratio(2, 1) - epsilon)
        }
        CorollaryMode::FailureOrder { r } => {
            if *r < 2 {
                return Err(Error::InvalidParameter(format!("r must be >= 2, got {r}")));
            }
            let k = 2 * *r as u64 - 1;
            (k * k, ratio(k as i64, *r as i64))
        }
    };
    Ok(CorollaryPrediction {
        d,
        lower,
        quasi_star_lower: quasi_star_rho_lower(d),
    })
}
