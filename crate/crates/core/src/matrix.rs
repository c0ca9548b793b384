//! Dense square matrices over exact scalars or commutative polynomials.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::MultiPoly;
use crate::scalar::{Domain, Scalar, ScalarError};

/// Ring elements that can fill a matrix.
pub trait Entry: Clone + PartialEq + fmt::Debug {
    fn zero_in(domain: Domain) -> Self;
    fn one_in(domain: Domain) -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn domain_of(&self) -> Domain;
    fn is_zero_entry(&self) -> bool;
    fn add_entry(&self, other: &Self) -> Self;
    fn sub_entry(&self, other: &Self) -> Self;
    fn mul_entry(&self, other: &Self) -> Self;
    fn scale_entry(&self, s: &Scalar) -> Self;
}

impl Entry for Scalar {
    fn zero_in(domain: Domain) -> Self {
        Scalar::zero(domain)
    }
    fn one_in(domain: Domain) -> Self {
        Scalar::one(domain)
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn domain_of(&self) -> Domain {
        self.domain()
    }
    #[inline]
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    #[inline]
    fn add_entry(&self, other: &Self) -> Self {
        self + other
    }
    #[inline]
    fn sub_entry(&self, other: &Self) -> Self {
        self - other
    }
    #[inline]
    fn mul_entry(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_entry(&self, s: &Scalar) -> Self {
        self * s
    }
}

impl Entry for MultiPoly {
    fn zero_in(domain: Domain) -> Self {
        MultiPoly::zero(domain)
    }
    fn one_in(domain: Domain) -> Self {
        MultiPoly::one(domain)
    }
    fn from_scalar(s: &Scalar) -> Self {
        MultiPoly::constant(s.clone())
    }
    fn domain_of(&self) -> Domain {
        self.domain()
    }
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
    fn add_entry(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn sub_entry(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn mul_entry(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn scale_entry(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
}

/// Which bilinear product an algebra uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProductKind {
    Assoc,
    /// `a o b = ab + ba`
    Jordan,
    /// `[a, b] = ab - ba`
    Lie,
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Assoc => "assoc",
            ProductKind::Jordan => "jordan",
            ProductKind::Lie => "lie",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("matrix sizes differ ({0} and {1})")]
    Shape(usize, usize),
    #[error("the Jordan product needs characteristic different from 2")]
    CharTwoJordan,
    #[error("matrix is singular")]
    Singular,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T = Scalar> {
    n: usize,
    domain: Domain,
    entries: Vec<T>,
}

impl<T: Entry> Matrix<T> {
    pub fn zeros(n: usize, domain: Domain) -> Self {
        Matrix { n, domain, entries: alloc::vec![T::zero_in(domain); n * n] }
    }

    pub fn identity(n: usize, domain: Domain) -> Self {
        let mut m = Self::zeros(n, domain);
        for i in 0..n {
            m.entries[i * n + i] = T::one_in(domain);
        }
        m
    }

    /// Matrix unit `e_{i+1, j+1}` (indices are zero-based).
    pub fn unit(n: usize, domain: Domain, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, domain);
        m.entries[i * n + j] = T::one_in(domain);
        m
    }

    /// Build from row-major entries; panics when the length is not a square.
    pub fn from_rows(domain: Domain, entries: Vec<T>) -> Self {
        let n = (0..=entries.len()).find(|k| k * k >= entries.len()).unwrap_or(0);
        assert_eq!(n * n, entries.len(), "entry count must be a perfect square");
        Matrix { n, domain, entries }
    }

    pub fn diagonal(domain: Domain, diag: Vec<T>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, domain);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero_entry)
    }

    fn compatible(&self, other: &Self) -> Result<(), MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::Shape(self.n, other.n));
        }
        if self.domain != other.domain {
            return Err(ScalarError::MixedDomain(self.domain, other.domain).into());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        Matrix {
            n: self.n,
            domain: self.domain,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add_entry(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Matrix {
            n: self.n,
            domain: self.domain,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub_entry(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Matrix {
            n: self.n,
            domain: self.domain,
            entries: self.entries.iter().map(|a| a.scale_entry(s)).collect(),
        }
    }

    /// Ordinary matrix product; skips zero entries of the left factor.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n, self.domain);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero_entry() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if b.is_zero_entry() {
                        continue;
                    }
                    let t = a.mul_entry(b);
                    let slot = &mut out.entries[i * n + j];
                    *slot = slot.add_entry(&t);
                }
            }
        }
        out
    }

    /// Product of the requested kind. Unchecked: callers guarantee matching shapes and domains.
    pub fn product_unchecked(&self, other: &Self, kind: ProductKind) -> Self {
        match kind {
            ProductKind::Assoc => self.mul(other),
            ProductKind::Jordan => self.mul(other).add(&other.mul(self)),
            ProductKind::Lie => self.mul(other).sub(&other.mul(self)),
        }
    }

    pub fn product(&self, other: &Self, kind: ProductKind) -> Result<Self, MatrixError> {
        self.compatible(other)?;
        if kind == ProductKind::Jordan && self.domain.characteristic() == 2 {
            return Err(MatrixError::CharTwoJordan);
        }
        Ok(self.product_unchecked(other, kind))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero_in(self.domain), |acc, i| acc.add_entry(self.get(i, i)))
    }

    pub fn map<U: Entry>(&self, domain: Domain, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, domain, entries: self.entries.iter().map(f).collect() }
    }
}

impl Matrix<Scalar> {
    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i).is_zero())
    }

    /// True for `c * I` (including zero).
    pub fn is_scalar(&self) -> bool {
        let c = self.get(0, 0);
        (0..self.n).all(|i| (0..self.n).all(|j| if i == j { self.get(i, j) == c } else { self.get(i, j).is_zero() }))
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        let n = self.n;
        let d = self.domain;
        let mut a = self.clone();
        let mut inv = Self::identity(n, d);
        for col in 0..n {
            let piv = (col..n).find(|&r| !a.get(r, col).is_zero()).ok_or(MatrixError::Singular)?;
            if piv != col {
                for j in 0..n {
                    a.entries.swap(piv * n + j, col * n + j);
                    inv.entries.swap(piv * n + j, col * n + j);
                }
            }
            let s = a.get(col, col).inv()?;
            for j in 0..n {
                a.entries[col * n + j] = &a.entries[col * n + j] * &s;
                inv.entries[col * n + j] = &inv.entries[col * n + j] * &s;
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let t = &a.entries[col * n + j] * &f;
                    a.entries[r * n + j] = &a.entries[r * n + j] - &t;
                    let t = &inv.entries[col * n + j] * &f;
                    inv.entries[r * n + j] = &inv.entries[r * n + j] - &t;
                }
            }
        }
        Ok(inv)
    }

    pub fn determinant(&self) -> Scalar {
        let n = self.n;
        let mut a = self.clone();
        let mut det = Scalar::one(self.domain);
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Scalar::zero(self.domain);
            };
            if piv != col {
                for j in 0..n {
                    a.entries.swap(piv * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a.get(col, col).clone();
            det = &det * &p;
            let pinv = p.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col) * &pinv;
                for j in col..n {
                    let t = &a.entries[col * n + j] * &f;
                    a.entries[r * n + j] = &a.entries[r * n + j] - &t;
                }
            }
        }
        det
    }

    /// Entry syntax, e.g. `e(1,3)+2*e(2,3)`; the zero matrix prints as `0`.
    pub fn to_entry_syntax(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let c = self.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let neg = c.is_negative();
                let mag = if neg { -c } else { c.clone() };
                if out.is_empty() {
                    if neg {
                        out.push('-');
                    }
                } else {
                    out.push(if neg { '-' } else { '+' });
                }
                if !mag.is_one() {
                    out.push_str(&alloc::format!("{mag}*"));
                }
                out.push_str(&alloc::format!("e({},{})", i + 1, j + 1));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parse entry syntax for an `n x n` matrix over `domain`.
    pub fn parse_entry_syntax(n: usize, domain: Domain, s: &str) -> Result<Self, MatrixError> {
        let bad = || MatrixError::Scalar(ScalarError::BadScalar(s.into()));
        let mut m = Self::zeros(n, domain);
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(m);
        }
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let epos = body.find("e(").ok_or_else(bad)?;
            let coef = body[..epos].trim_end_matches('*');
            let close = body[epos..].find(')').ok_or_else(bad)? + epos;
            let (i, j) = body[epos + 2..close].split_once(',').ok_or_else(bad)?;
            let i: usize = i.parse().map_err(|_| bad())?;
            let j: usize = j.parse().map_err(|_| bad())?;
            if i == 0 || j == 0 || i > n || j > n {
                return Err(bad());
            }
            let mut c = if coef.is_empty() { Scalar::one(domain) } else { Scalar::parse_in(domain, coef)? };
            if neg {
                c = -c;
            }
            let cur = m.get(i - 1, j - 1) + &c;
            m.set(i - 1, j - 1, cur);
            rest = &body[close + 1..];
        }
        Ok(m)
    }
}

impl<T: Entry> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Display for Matrix<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_entry_syntax())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GF7: Domain = Domain::Prime(7);

    fn e(i: usize, j: usize) -> Matrix {
        Matrix::unit(3, GF7, i - 1, j - 1)
    }

    #[test]
    fn unit_products() {
        assert_eq!(e(1, 1).product(&e(1, 2), ProductKind::Jordan).unwrap(), e(1, 2));
        assert_eq!(e(1, 1).product(&e(1, 2), ProductKind::Lie).unwrap(), e(1, 2));
        assert_eq!(e(1, 2).product(&e(2, 3), ProductKind::Assoc).unwrap(), e(1, 3));
        let g2 = Domain::Prime(2);
        let a = Matrix::<Scalar>::unit(2, g2, 0, 0);
        assert_eq!(a.product(&a, ProductKind::Jordan), Err(MatrixError::CharTwoJordan));
        let b = Matrix::<Scalar>::unit(2, Domain::Prime(5), 0, 0);
        assert!(matches!(a.product(&b, ProductKind::Assoc), Err(MatrixError::Scalar(_))));
    }

    #[test]
    fn inverse_and_determinant() {
        let d = GF7;
        let m = Matrix::from_rows(d, [1, 1, 1, -1].iter().map(|&x| Scalar::from_i64(d, x)).collect());
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2, d));
        assert_eq!(m.determinant(), Scalar::from_i64(d, -2));
        let s = Matrix::from_rows(d, [1, 2, 2, 4].iter().map(|&x| Scalar::from_i64(d, x)).collect());
        assert_eq!(s.inverse(), Err(MatrixError::Singular));
        assert!(s.determinant().is_zero());
    }

    #[test]
    fn entry_syntax_round_trip() {
        let m = e(1, 3).add(&e(2, 3).scale(&Scalar::from_i64(GF7, 2))).sub(&e(3, 3));
        let s = m.to_entry_syntax();
        assert_eq!(s, "e(1,3)+2*e(2,3)-e(3,3)");
        assert_eq!(Matrix::parse_entry_syntax(3, GF7, &s).unwrap(), m);
        assert_eq!(Matrix::<Scalar>::zeros(2, GF7).to_entry_syntax(), "0");
        assert!(Matrix::parse_entry_syntax(3, GF7, "e(4,1)").is_err());
    }
}
