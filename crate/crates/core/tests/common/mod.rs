//! Independent oracles: plain Gaussian elimination over F_p and
//! classical derivative conditions, sharing no code with the library's
//! linear algebra, Gröbner bases or Hasse-derivative interpolation.
#![allow(dead_code)]

use std::collections::BTreeMap;

use quasistar::geometry::ProjectivePoint;
use quasistar::Polynomial;

pub fn monomials(t: u32) -> Vec<[u32; 3]> {
    let mut v = Vec::new();
    for a in (0..=t).rev() {
        for b in (0..=t - a).rev() {
            v.push([a, b, t - a - b]);
        }
    }
    v
}

fn pow(p: u64, mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row echelon form; returns the reduced nonzero rows.
pub fn eliminate(p: u64, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow(p, rows[rank][c], p - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pr = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] % p != 0 {
                let f = row[c] % p;
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

pub fn rank(p: u64, rows: Vec<Vec<u64>>) -> usize {
    eliminate(p, rows).len()
}

/// Kernel basis of the matrix with the given rows and column count.
pub fn kernel(p: u64, rows: Vec<Vec<u64>>, ncols: usize) -> Vec<Vec<u64>> {
    let red = eliminate(p, rows);
    let pivots: Vec<usize> = red.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (r, &pc) in red.iter().zip(&pivots) {
                v[pc] = (p - r[free]) % p;
            }
            v
        })
        .collect()
}

fn falling(p: u64, n: u32, k: u32) -> u64 {
    (0..k).fold(1, |acc, i| acc * ((n - i) as u64 % p) % p)
}

/// Rows saying that all partial derivatives of order `m - 1` of a degree-`t`
/// form vanish at `q`; for `m - 1 <= t < p` this is vanishing to order `m`.
pub fn order_conditions(p: u64, q: &[u32; 3], m: u32, t: u32) -> Vec<Vec<u64>> {
    assert!(t + 1 >= m);
    let basis = monomials(t);
    monomials(m - 1)
        .into_iter()
        .map(|g| {
            basis
                .iter()
                .map(|e| {
                    if (0..3).any(|i| e[i] < g[i]) {
                        return 0;
                    }
                    (0..3).fold(1, |acc, i| {
                        acc * falling(p, e[i], g[i]) % p * pow(p, q[i] as u64, (e[i] - g[i]) as u64) % p
                    })
                })
                .collect()
        })
        .collect()
}

pub fn coords(pts: &[ProjectivePoint]) -> Vec<[u32; 3]> {
    pts.iter().map(|q| *q.coords()).collect()
}

/// Rows of all fat point conditions of `(point, multiplicity)` pairs.
pub fn scheme_conditions(p: u64, scheme: &[([u32; 3], u32)], t: u32) -> Vec<Vec<u64>> {
    scheme
        .iter()
        .filter(|(_, m)| *m > 0)
        .flat_map(|(q, m)| order_conditions(p, q, *m, t))
        .collect()
}

/// `dim (I_X)_t` for the fat point scheme; zero below the largest multiplicity
/// unless the scheme is empty there.
pub fn symbolic_dim(p: u64, scheme: &[([u32; 3], u32)], t: u32) -> usize {
    let mmax = scheme.iter().map(|s| s.1).max().unwrap_or(0);
    if t + 1 < mmax {
        return 0;
    }
    let n = monomials(t).len();
    n - rank(p, scheme_conditions(p, scheme, t))
}

pub fn symbolic_basis(p: u64, scheme: &[([u32; 3], u32)], t: u32) -> Vec<Vec<u64>> {
    let mmax = scheme.iter().map(|s| s.1).max().unwrap_or(0);
    if t + 1 < mmax {
        return Vec::new();
    }
    kernel(p, scheme_conditions(p, scheme, t), monomials(t).len())
}

pub fn alpha(p: u64, scheme: &[([u32; 3], u32)]) -> u32 {
    (0..).find(|&t| symbolic_dim(p, scheme, t) > 0).unwrap()
}

/// Regularity of a fat point scheme: one past the first degree where its
/// conditions become independent.
pub fn regularity(p: u64, scheme: &[([u32; 3], u32)]) -> u32 {
    let deg: usize = scheme.iter().map(|(_, m)| (m * (m + 1) / 2) as usize).sum();
    (0..).find(|&t| monomials(t).len() - symbolic_dim(p, scheme, t) == deg).unwrap() + 1
}

/// Dense vector of a homogeneous polynomial in [`monomials`] order.
pub fn vector(f: &Polynomial, t: u32) -> Vec<u64> {
    let idx: BTreeMap<[u32; 3], usize> = monomials(t).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![0; idx.len()];
    for (m, c) in f.terms() {
        let e = m.exps();
        v[idx[&[e[0] as u32, e[1] as u32, e[2] as u32]]] = *c as u64;
    }
    v
}

fn mul_vec(p: u64, a: &[u64], da: u32, b: &[u64], db: u32) -> Vec<u64> {
    let idx: BTreeMap<[u32; 3], usize> = monomials(da + db).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    let (ma, mb) = (monomials(da), monomials(db));
    let mut out = vec![0; idx.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                let k = idx[&[ma[i][0] + mb[j][0], ma[i][1] + mb[j][1], ma[i][2] + mb[j][2]]];
                out[k] = (out[k] + x * y) % p;
            }
        }
    }
    out
}

/// Homogeneous generators `(degree, vector)` of an ideal; spans of
/// `(I)_t` are built from them by multiplying with monomials.
#[derive(Clone)]
pub struct Gens(pub Vec<(u32, Vec<u64>)>);

impl Gens {
    /// Degree-`t` slice of the ideal they generate, as a reduced row space.
    pub fn slice(&self, p: u64, t: u32) -> Vec<Vec<u64>> {
        let mut rows = Vec::new();
        for (d, g) in &self.0 {
            if *d > t {
                continue;
            }
            let k = t - d;
            for mono in monomials(k) {
                let mut e = vec![0; monomials(k).len()];
                e[monomials(k).iter().position(|x| *x == mono).unwrap()] = 1;
                rows.push(mul_vec(p, &e, k, g, *d));
            }
        }
        if rows.is_empty() {
            return rows;
        }
        eliminate(p, rows)
    }

    pub fn product(&self, p: u64, other: &Gens) -> Gens {
        let mut out = Vec::new();
        for (da, a) in &self.0 {
            for (db, b) in &other.0 {
                out.push((da + db, mul_vec(p, a, *da, b, *db)));
            }
        }
        // keep a spanning set per degree only
        let mut by_deg: BTreeMap<u32, Vec<Vec<u64>>> = BTreeMap::new();
        for (d, v) in out {
            by_deg.entry(d).or_default().push(v);
        }
        Gens(by_deg.into_iter().flat_map(|(d, vs)| eliminate(p, vs).into_iter().map(move |v| (d, v))).collect())
    }

    pub fn power(&self, p: u64, r: u32) -> Gens {
        let mut acc = self.clone();
        for _ in 1..r {
            acc = acc.product(p, self);
        }
        acc
    }
}

/// Generators of the ideal of a fat point scheme: its slices from `α` up to
/// the regularity.
pub fn scheme_generators(p: u64, scheme: &[([u32; 3], u32)]) -> Gens {
    let reg = regularity(p, scheme);
    let mut out = Vec::new();
    for t in alpha(p, scheme)..=reg {
        out.extend(symbolic_basis(p, scheme, t).into_iter().map(|v| (t, v)));
    }
    Gens(out)
}

/// `I^(m) ⊆ I^r` by comparing slices up to the generating degree of
/// `I^(m)`.
pub fn containment(p: u64, pts: &[[u32; 3]], m: u32, r: u32) -> bool {
    let fat: Vec<([u32; 3], u32)> = pts.iter().map(|q| (*q, m)).collect();
    let reduced: Vec<([u32; 3], u32)> = pts.iter().map(|q| (*q, 1)).collect();
    let pw = scheme_generators(p, &reduced).power(p, r);
    let top = regularity(p, &fat);
    (alpha(p, &fat)..=top).all(|t| {
        let small = symbolic_dim(p, &fat, t);
        if small == 0 {
            return true;
        }
        let big = pw.slice(p, t);
        let mut rows = big.clone();
        rows.extend(symbolic_basis(p, &fat, t));
        rank(p, rows) == big.len()
    })
}

/// `H_{R/I}(t)` implied by the Betti table of `I`.
pub fn hilbert_from_betti(entries: &BTreeMap<(u32, u32), u64>, t: u32) -> i64 {
    let c2 = |n: i64| if n < 0 { 0 } else { (n + 2) * (n + 1) / 2 };
    let mut h = c2(t as i64);
    for (&(i, j), &b) in entries {
        let sign = if i % 2 == 0 { -1 } else { 1 };
        h += sign * b as i64 * c2(t as i64 - j as i64);
    }
    h
}

/// Hilbert function of reduced points by evaluation rank.
pub fn points_hilbert(p: u64, pts: &[[u32; 3]], t: u32) -> usize {
    let reduced: Vec<([u32; 3], u32)> = pts.iter().map(|q| (*q, 1)).collect();
    monomials(t).len() - symbolic_dim(p, &reduced, t)
}

/// All partial derivatives of order `k - 1` of `f` vanish at `q`; by
/// Euler's formula this means `f` vanishes to order `>= k` there.
pub fn vanishes_to_order(p: u64, f: &Polynomial, q: &[u32; 3], k: u32) -> bool {
    if k == 0 || f.is_zero() {
        return true;
    }
    if f.degree().unwrap() + 1 < k {
        return false;
    }
    let t = f.degree().unwrap() as usize;
    // falling[e][g] = e (e-1) ... (e-g+1), powers[i][n] = q_i^n
    let falling: Vec<Vec<u64>> = (0..=t)
        .map(|e| (0..k as usize).map(|g| if g <= e { self::falling(p, e as u32, g as u32) } else { 0 }).collect())
        .collect();
    let powers: Vec<Vec<u64>> = (0..3)
        .map(|i| (0..=t).scan(1u64, |acc, _| { let v = *acc; *acc = *acc * q[i] as u64 % p; Some(v) }).collect())
        .collect();
    let terms: Vec<([usize; 3], u64)> = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let e = m.exps();
            ([e[0] as usize, e[1] as usize, e[2] as usize], *c as u64)
        })
        .collect();
    monomials(k - 1).into_iter().all(|g| {
        let g = [g[0] as usize, g[1] as usize, g[2] as usize];
        terms.iter().fold(0u64, |acc, (e, c)| {
            if (0..3).any(|i| e[i] < g[i]) {
                return acc;
            }
            let mut v = *c;
            for i in 0..3 {
                v = v * falling[e[i]][g[i]] % p * powers[i][e[i] - g[i]] % p;
            }
            (acc + v) % p
        }) == 0
    })
}
