//! Subspaces of the n x n matrix space in reduced row-echelon form.
//!
//! Coordinates follow a fixed enumeration of matrix positions: the upper
//! triangle (diagonal included) row by row, then the strictly lower triangle
//! row by row. Two subspaces are equal exactly when their echelon bases are.

use alloc::vec::Vec;

use crate::matrix::Matrix;
use crate::scalar::{Domain, Scalar};

/// Positions of an `n x n` matrix in coordinate order.
pub fn position_order(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in i..n {
            out.push((i, j));
        }
    }
    for i in 0..n {
        for j in 0..i {
            out.push((i, j));
        }
    }
    out
}

/// Coordinate index of position `(i, j)` in [`position_order`].
pub fn position_index(n: usize, i: usize, j: usize) -> usize {
    if i <= j {
        i * n - i * i.saturating_sub(1) / 2 + (j - i)
    } else {
        n * (n + 1) / 2 + i * (i - 1) / 2 + j
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    n: usize,
    domain: Domain,
    /// Echelon rows sorted by pivot; each pivot entry is one and the pivot
    /// column is zero in every other row.
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize, domain: Domain) -> Self {
        Subspace { n, domain, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn span_of<'a>(n: usize, domain: Domain, ms: impl IntoIterator<Item = &'a Matrix>) -> Self {
        let mut s = Self::zero(n, domain);
        for m in ms {
            s.insert(m);
        }
        s
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn coords(&self, m: &Matrix) -> Vec<Scalar> {
        debug_assert_eq!(m.size(), self.n);
        position_order(self.n).into_iter().map(|(i, j)| m.get(i, j).clone()).collect()
    }

    pub fn matrix_of(&self, v: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.domain);
        for (k, (i, j)) in position_order(self.n).into_iter().enumerate() {
            m.set(i, j, v[k].clone());
        }
        m
    }

    fn reduce(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
    }

    /// Add a vector; returns true when the dimension grew.
    pub fn insert_coords(&mut self, mut v: Vec<Scalar>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn insert(&mut self, m: &Matrix) -> bool {
        self.insert_coords(self.coords(m))
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        let mut v = self.coords(m);
        self.reduce(&mut v);
        v.iter().all(Scalar::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis().iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for b in other.basis() {
            s.insert(&b);
        }
        s
    }

    /// Intersection via the kernel of `[A | -B]`.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let a = self.basis();
        let b = other.basis();
        let cols: Vec<Vec<Scalar>> = a
            .iter()
            .map(|m| self.coords(m))
            .chain(b.iter().map(|m| self.coords(&m.scale(&-Scalar::one(self.domain)))))
            .collect();
        let mut out = Subspace::zero(self.n, self.domain);
        for k in kernel(&cols, self.n * self.n, self.domain) {
            let mut m = Matrix::zeros(self.n, self.domain);
            for (c, bm) in k.iter().zip(&a) {
                if !c.is_zero() {
                    m = m.add(&bm.scale(c));
                }
            }
            out.insert(&m);
        }
        out
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.rows.iter().map(|r| self.matrix_of(r)).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `sum c_k b_k` over the echelon basis.
    pub fn combination(&self, coeffs: &[Scalar]) -> Matrix {
        let mut v = alloc::vec![Scalar::zero(self.domain); self.n * self.n];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x + &(c * r);
                }
            }
        }
        self.matrix_of(&v)
    }
}

/// Find `c` with `sum c_k columns[k] = rhs`, or `None` when `rhs` is not in the column span.
pub fn solve(columns: &[Vec<Scalar>], rhs: &[Scalar], domain: Domain) -> Option<Vec<Scalar>> {
    let rows = rhs.len();
    let k = columns.len();
    // augmented row-major system
    let mut a: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Scalar> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=k {
                    let t = &a[rank][c] * &f;
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    if a[rank..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = alloc::vec![Scalar::zero(domain); k];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[r][k].clone();
    }
    Some(x)
}

/// Basis of `{c : sum c_k columns[k] = 0}`, each column of length `len`.
pub fn kernel(columns: &[Vec<Scalar>], len: usize, domain: Domain) -> Vec<Vec<Scalar>> {
    let k = columns.len();
    let mut a: Vec<Vec<Scalar>> = (0..len).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let Some(p) = (rank..len).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..len {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..k {
                    let t = &a[rank][c] * &f;
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = alloc::vec![Scalar::zero(domain); k];
            v[fc] = Scalar::one(domain);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -&a[r][fc];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const GF7: Domain = Domain::Prime(7);

    fn e(n: usize, i: usize, j: usize) -> Matrix {
        Matrix::unit(n, GF7, i - 1, j - 1)
    }

    #[test]
    fn position_index_matches_order() {
        for n in 1..6 {
            for (k, (i, j)) in position_order(n).into_iter().enumerate() {
                assert_eq!(position_index(n, i, j), k, "n={n} ({i},{j})");
            }
        }
    }

    #[test]
    fn span_and_membership() {
        let two = Scalar::from_i64(GF7, 2);
        let s = Subspace::span_of(3, GF7, &[e(3, 1, 2), e(3, 1, 2).scale(&two)]);
        assert_eq!(s.dim(), 1);
        let j2 = Subspace::span_of(3, GF7, &[e(3, 1, 3)]);
        assert!(j2.contains(&e(3, 1, 3)));
        assert!(!j2.contains(&e(3, 2, 3)));
        let a = Subspace::span_of(2, GF7, &[e(2, 1, 1).add(&e(2, 2, 2))]);
        let b = Subspace::span_of(2, GF7, &[Matrix::identity(2, GF7).scale(&two)]);
        assert_eq!(a, b);
    }

    #[test]
    fn echelon_form_is_canonical() {
        let m1 = e(2, 1, 1).add(&e(2, 1, 2));
        let m2 = e(2, 1, 2).sub(&e(2, 2, 2));
        let s = Subspace::span_of(2, GF7, &[m1.clone(), m2.clone()]);
        let t = Subspace::span_of(2, GF7, &[m1.add(&m2), m2.scale(&Scalar::from_i64(GF7, 3))]);
        assert_eq!(s, t);
        assert_eq!(s.sum(&t), s);
        let u = Subspace::span_of(2, GF7, &[e(2, 1, 2)]);
        assert_eq!(s.intersection(&u).dim(), 0);
        let v = Subspace::span_of(2, GF7, &[e(2, 1, 1), e(2, 2, 2)]);
        assert_eq!(s.intersection(&v), Subspace::span_of(2, GF7, &[e(2, 1, 1).add(&e(2, 2, 2))]));
    }

    #[test]
    fn solve_and_kernel() {
        let d = GF7;
        let c = |xs: &[i64]| xs.iter().map(|&x| Scalar::from_i64(d, x)).collect::<Vec<_>>();
        let cols = [c(&[1, 0, 1]), c(&[0, 1, 1]), c(&[1, 1, 2])];
        let x = solve(&cols, &c(&[2, 3, 5]), d).unwrap();
        let back: Vec<Scalar> = (0..3)
            .map(|r| (0..3).fold(Scalar::zero(d), |acc, k| &acc + &(&x[k] * &cols[k][r])))
            .collect();
        assert_eq!(back, c(&[2, 3, 5]));
        assert!(solve(&cols, &c(&[1, 0, 0]), d).is_none());
        let ker = kernel(&cols, 3, d);
        assert_eq!(ker, vec![c(&[-1, -1, 1])]);
    }
}
