//! Dense Gaussian elimination over `F_p`.
//!
//! Rows are held as `u64` and reduced lazily: an elimination step adds at
//! most `p^2 < 2^42` to an entry, so entries stay far below `2^64` for any
//! matrix with fewer than `2^21` pivots. Only pivot entries and pivot rows
//! are reduced eagerly.

use crate::field::PrimeField;

/// Row echelon form: pivot rows are normalized (pivot entry 1) and fully
/// reduced modulo `p` to the right of the pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// The kernel vector with `x[free] = 1` and every other free variable 0.
    pub fn kernel_vector_at(&self, field: PrimeField, free: usize) -> Vec<u32> {
        let mut x = vec![0u32; self.ncols];
        x[free] = 1;
        for (row, &pc) in self.rows.iter().zip(&self.pivots).rev() {
            let mut s = 0u64;
            for j in (pc + 1)..self.ncols {
                if x[j] != 0 && row[j] != 0 {
                    s = (s + row[j] as u64 * x[j] as u64) % field.modulus() as u64;
                }
            }
            x[pc] = field.neg(s as u32);
        }
        x
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn kernel_basis(&self, field: PrimeField) -> Vec<Vec<u32>> {
        self.free_columns()
            .into_iter()
            .map(|c| self.kernel_vector_at(field, c))
            .collect()
    }
}

pub fn echelon(field: PrimeField, rows: Vec<Vec<u32>>, ncols: usize) -> Echelon {
    let p = field.modulus() as u64;
    let mut work: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            r.into_iter().map(|x| x as u64).collect()
        })
        .collect();
    let nrows = work.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let mut found = None;
        for (i, row) in work.iter_mut().enumerate().skip(r) {
            row[col] %= p;
            if row[col] != 0 {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else { continue };
        work.swap(r, i);
        let inv = field.inv(work[r][col] as u32).expect("nonzero pivot") as u64;
        {
            let piv = &mut work[r];
            for v in piv[..col].iter_mut() {
                *v = 0;
            }
            for v in piv[col..].iter_mut() {
                *v = (*v % p) * inv % p;
            }
        }
        let (top, bottom) = work.split_at_mut(r + 1);
        let piv = &top[r][col..];
        for row in bottom.iter_mut() {
            let c = row[col] % p;
            if c == 0 {
                row[col] = 0;
                continue;
            }
            let factor = p - c;
            for (v, &q) in row[col..].iter_mut().zip(piv) {
                *v += factor * q;
            }
        }
        pivots.push(col);
        r += 1;
    }
    work.truncate(r);
    let rows = work
        .into_iter()
        .map(|row| row.into_iter().map(|v| (v % p) as u32).collect())
        .collect();
    Echelon {
        rows,
        pivots,
        ncols,
    }
}

pub fn rank(field: PrimeField, rows: Vec<Vec<u32>>, ncols: usize) -> usize {
    echelon(field, rows, ncols).rank()
}

/// Reduced row echelon form (zeros above every pivot as well).
pub fn rref(field: PrimeField, rows: Vec<Vec<u32>>, ncols: usize) -> Echelon {
    let mut e = echelon(field, rows, ncols);
    for k in (0..e.rows.len()).rev() {
        let pc = e.pivots[k];
        let (above, rest) = e.rows.split_at_mut(k);
        let piv = &rest[0];
        for row in above.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            let factor = field.neg(c);
            for j in pc..ncols {
                if piv[j] != 0 {
                    row[j] = field.add(row[j], field.mul(factor, piv[j]));
                }
            }
        }
    }
    e
}

/// An incrementally built echelon basis of a subspace of `F_p^n`.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: PrimeField,
    ncols: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        EchelonBasis {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u32]) {
        let f = self.field;
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c == 0 {
                continue;
            }
            let factor = f.neg(c);
            for (x, &q) in v[*pc..].iter_mut().zip(&row[*pc..]) {
                if q != 0 {
                    *x = f.add(*x, f.mul(factor, q));
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[pc]).expect("nonzero");
        for x in w[pc..].iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        // keep existing rows reduced against the new pivot
        let f = self.field;
        for (_, row) in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let factor = f.neg(c);
                for (x, &q) in row[pc..].iter_mut().zip(&w[pc..]) {
                    if q != 0 {
                        *x = f.add(*x, f.mul(factor, q));
                    }
                }
            }
        }
        self.rows.push((pc, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::DEFAULT_PRIME;
    use proptest::prelude::*;

    fn fld() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn mat_vec(f: PrimeField, rows: &[Vec<u32>], x: &[u32]) -> Vec<u32> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        let f = fld();
        assert_eq!(rank(f, vec![vec![1, 2], vec![2, 4]], 2), 1);
        assert_eq!(rank(f, vec![vec![1, 2], vec![3, 4]], 2), 2);
        assert_eq!(rank(f, vec![], 3), 0);
        assert_eq!(rank(f, vec![vec![0, 0, 0]], 3), 0);
    }

    #[test]
    fn rref_clears_above_pivots() {
        let f = fld();
        let e = rref(f, vec![vec![1, 1, 0], vec![0, 1, 1]], 3);
        assert_eq!(e.rows, vec![vec![1, 0, f.neg(1)], vec![0, 1, 1]]);
    }

    #[test]
    fn incremental_basis_detects_dependence() {
        let f = fld();
        let mut b = EchelonBasis::new(f, 3);
        assert!(b.insert(&[1, 2, 3]));
        assert!(b.insert(&[0, 1, 1]));
        assert!(!b.insert(&[1, 3, 4]));
        assert!(b.contains(&[2, 5, 7]));
        assert_eq!(b.dim(), 2);
    }

    /// Rank by brute-force column-span enumeration over a tiny prime would
    /// need another field; instead compare against the determinant
    /// expansion for square 3x3 inputs.
    fn det3(f: PrimeField, m: &[Vec<u32>]) -> u32 {
        let t = |a: u32, b: u32, c: u32| f.mul(a, f.mul(b, c));
        let pos = f.add(
            f.add(t(m[0][0], m[1][1], m[2][2]), t(m[0][1], m[1][2], m[2][0])),
            t(m[0][2], m[1][0], m[2][1]),
        );
        let neg = f.add(
            f.add(t(m[0][2], m[1][1], m[2][0]), t(m[0][0], m[1][2], m[2][1])),
            t(m[0][1], m[1][0], m[2][2]),
        );
        f.sub(pos, neg)
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_in_the_kernel(
            rows in prop::collection::vec(prop::collection::vec(0u32..7, 6), 1..6)
        ) {
            let f = fld();
            let e = echelon(f, rows.clone(), 6);
            let basis = e.kernel_basis(f);
            prop_assert_eq!(basis.len() + e.rank(), 6);
            for v in basis {
                prop_assert!(v.iter().any(|&x| x != 0));
                prop_assert!(mat_vec(f, &rows, &v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn full_rank_iff_nonzero_determinant(
            rows in prop::collection::vec(prop::collection::vec(0u32..5, 3), 3)
        ) {
            let f = fld();
            let r = rank(f, rows.clone(), 3);
            prop_assert_eq!(r == 3, det3(f, &rows) != 0);
        }
    }
}
