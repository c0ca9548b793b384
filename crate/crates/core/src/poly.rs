//! Sparse commutative polynomials over a [`Domain`], used as generic matrix entries.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Domain, Scalar, ScalarError};

/// Exhaustive sweeps are used when the finite search space has at most this many points.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
const RANDOM_SAMPLES: usize = 1000;
const SWEEP_POINTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("variable w{0} has no assigned value")]
    UnassignedVariable(u32),
    #[error("input polynomial #{0} is identically zero")]
    ZeroPolynomialInput(usize),
    #[error("no common nonzero point exists")]
    NotFound,
    #[error("search budget exhausted without finding a common nonzero point")]
    BudgetExhausted,
}

/// Exponent vector stored sparsely as `(variable, exponent)` pairs sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponents(Vec<(u32, u32)>);

impl Exponents {
    pub fn one() -> Self {
        Exponents(Vec::new())
    }

    pub fn var(v: u32) -> Self {
        Exponents(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut m: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *m.entry(v).or_default() += e;
        }
        Exponents(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: u32) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Exponents(out)
    }

    /// Graded-lexicographic comparison: higher total degree first, then larger exponent of
    /// the smallest variable first.
    pub fn grlex_cmp(&self, other: &Self) -> Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then_with(|| {
                for (x, y) in self.0.iter().zip(other.0.iter()) {
                    let o = x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1));
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                other.0.len().cmp(&self.0.len())
            })
    }
}

/// A polynomial in commuting variables `w1, w2, ...`; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    domain: Domain,
    terms: BTreeMap<Exponents, Scalar>,
}

pub type Assignment = BTreeMap<u32, Scalar>;

impl MultiPoly {
    pub fn zero(domain: Domain) -> Self {
        MultiPoly { domain, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        let domain = c.domain();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Exponents::one(), c);
        }
        MultiPoly { domain, terms }
    }

    pub fn one(domain: Domain) -> Self {
        Self::constant(Scalar::one(domain))
    }

    pub fn var(domain: Domain, v: u32) -> Self {
        Self::term(Scalar::one(domain), Exponents::var(v))
    }

    pub fn term(c: Scalar, e: Exponents) -> Self {
        let domain = c.domain();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MultiPoly { domain, terms }
    }

    pub fn from_terms(domain: Domain, terms: impl IntoIterator<Item = (Exponents, Scalar)>) -> Result<Self, PolyError> {
        let mut p = MultiPoly::zero(domain);
        for (e, c) in terms {
            if c.domain() != domain {
                return Err(ScalarError::MixedDomain(domain, c.domain()).into());
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|e| e.pairs().iter().map(|&(v, _)| v)).collect()
    }

    pub fn degree_in(&self, v: u32) -> u32 {
        self.terms.keys().map(|e| e.degree_in(v)).max().unwrap_or(0)
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.domain == other.domain {
            Ok(())
        } else {
            Err(ScalarError::MixedDomain(self.domain, other.domain).into())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            domain: self.domain,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiPoly::zero(self.domain);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.mul(e2), &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(self.domain);
        }
        MultiPoly {
            domain: self.domain,
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect(),
        }
    }

    /// Coefficient of the constant term.
    pub fn constant_term(&self) -> Scalar {
        self.terms.get(&Exponents::one()).cloned().unwrap_or_else(|| Scalar::zero(self.domain))
    }

    pub fn eval(&self, point: &Assignment) -> Result<Scalar, PolyError> {
        let mut acc = Scalar::zero(self.domain);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for &(v, k) in e.pairs() {
                let x = point.get(&v).ok_or(PolyError::UnassignedVariable(v))?;
                if x.domain() != self.domain {
                    return Err(ScalarError::MixedDomain(self.domain, x.domain()).into());
                }
                t = &t * &x.pow(k);
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Terms in graded-lexicographic order (the serialization order).
    pub fn grlex_terms(&self) -> Vec<(&Exponents, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.grlex_cmp(b.0));
        v
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (e, c)) in self.grlex_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || e.pairs().is_empty() {
                factors.push(alloc::format!("{mag}"));
            }
            for &(v, k) in e.pairs() {
                if k == 1 {
                    factors.push(alloc::format!("w{v}"));
                } else {
                    factors.push(alloc::format!("w{v}^{k}"));
                }
            }
            out.push_str(&factors.join("*"));
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let _ = write!(s, "{self} over {}", self.domain);
        f.write_str(&s)
    }
}

/// Find a point where every polynomial in `fs` is nonzero.
///
/// Finite search spaces of at most [`EXHAUSTIVE_LIMIT`] points are swept exhaustively in
/// lexicographic order, so `NotFound` is a proof of nonexistence. Otherwise 1000 seeded random
/// samples are tried, then the first 100 lexicographic points; failing that the result is
/// `BudgetExhausted`.
pub fn nonzero_point(fs: &[MultiPoly], domain: Domain, seed: u64) -> Result<Assignment, PolyError> {
    for (i, f) in fs.iter().enumerate() {
        if f.domain() != domain {
            return Err(ScalarError::MixedDomain(domain, f.domain()).into());
        }
        if f.is_zero() {
            return Err(PolyError::ZeroPolynomialInput(i));
        }
    }
    let vars: Vec<u32> = fs.iter().flat_map(|f| f.variables()).collect::<BTreeSet<_>>().into_iter().collect();
    let all_nonzero = |pt: &Assignment| -> Result<bool, PolyError> {
        for f in fs {
            if f.eval(pt)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let space = domain.cardinality().and_then(|p| {
        let mut total: u64 = 1;
        for _ in &vars {
            total = total.checked_mul(p)?;
            if total > EXHAUSTIVE_LIMIT {
                return None;
            }
        }
        Some(total)
    });
    let values = lex_values(domain);

    if let Some(total) = space {
        let mut sweep = LexSweep::new(&vars, &values);
        for _ in 0..total {
            let pt = sweep.point(domain);
            if all_nonzero(&pt)? {
                return Ok(pt);
            }
            sweep.advance();
        }
        return Err(PolyError::NotFound);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_SAMPLES {
        let pt: Assignment = vars.iter().map(|&v| (v, random_scalar(&mut rng, domain))).collect();
        if all_nonzero(&pt)? {
            return Ok(pt);
        }
    }
    let mut sweep = LexSweep::new(&vars, &values);
    for _ in 0..SWEEP_POINTS {
        let pt = sweep.point(domain);
        if all_nonzero(&pt)? {
            return Ok(pt);
        }
        if !sweep.advance() {
            break;
        }
    }
    Err(PolyError::BudgetExhausted)
}

/// Uniform residue over GF(p); a small signed integer over the rationals.
pub fn random_scalar<R: Rng>(rng: &mut R, domain: Domain) -> Scalar {
    match domain {
        Domain::Prime(p) => Scalar::Fp { p, v: rng.random_range(0..p) },
        Domain::Rationals => Scalar::from_i64(domain, rng.random_range(-50i64..=50)),
    }
}

/// Value order for lexicographic sweeps: `0, 1, ..., p-1` or `0, 1, -1, 2, -2, ...`.
fn lex_values(domain: Domain) -> Vec<i64> {
    match domain {
        Domain::Prime(p) => (0..p.min(EXHAUSTIVE_LIMIT) as i64).collect(),
        Domain::Rationals => {
            let mut v = vec![0];
            for k in 1..=50 {
                v.push(k);
                v.push(-k);
            }
            v
        }
    }
}

struct LexSweep<'a> {
    vars: &'a [u32],
    values: &'a [i64],
    digits: Vec<usize>,
}

impl<'a> LexSweep<'a> {
    fn new(vars: &'a [u32], values: &'a [i64]) -> Self {
        LexSweep { vars, values, digits: vec![0; vars.len()] }
    }

    fn point(&self, domain: Domain) -> Assignment {
        self.vars
            .iter()
            .zip(&self.digits)
            .map(|(&v, &d)| (v, Scalar::from_i64(domain, self.values[d])))
            .collect()
    }

    /// Odometer step with the last variable fastest; false after wrapping around.
    fn advance(&mut self) -> bool {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.values.len() {
                return true;
            }
            *d = 0;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(d: Domain, v: u32) -> MultiPoly {
        MultiPoly::var(d, v)
    }

    fn c(d: Domain, x: i64) -> MultiPoly {
        MultiPoly::constant(Scalar::from_i64(d, x))
    }

    const Q: Domain = Domain::Rationals;

    #[test]
    fn addition_cancels_and_merges() {
        assert!(w(Q, 1).add(&w(Q, 1).neg()).is_zero());
        let p = w(Q, 1).mul(&w(Q, 2)).add(&w(Q, 3));
        assert_eq!(p.to_string(), "w1*w2 + w3");
        let g3 = Domain::Prime(3);
        let two = c(g3, 2).mul(&w(g3, 1));
        assert_eq!(two.add(&two), w(g3, 1));
        assert!(matches!(w(Q, 1).try_add(&w(g3, 1)), Err(PolyError::Scalar(ScalarError::MixedDomain(..)))));
    }

    #[test]
    fn multiplication() {
        assert!(w(Q, 1).mul(&MultiPoly::zero(Q)).is_zero());
        let a = w(Q, 1).add(&w(Q, 2));
        let b = w(Q, 1).sub(&w(Q, 2));
        assert_eq!(a.mul(&b), w(Q, 1).mul(&w(Q, 1)).sub(&w(Q, 2).mul(&w(Q, 2))));
        assert_eq!(a.mul(&b).to_string(), "w1^2 - w2^2");
        let g2 = Domain::Prime(2);
        let s = w(g2, 1).add(&c(g2, 1));
        assert_eq!(s.mul(&s).to_string(), "w1^2 + 1");
    }

    #[test]
    fn evaluation() {
        let p = w(Q, 1).mul(&w(Q, 2)).add(&w(Q, 3));
        let pt: Assignment = (1..=3).map(|v| (v, Scalar::one(Q))).collect();
        assert_eq!(p.eval(&pt).unwrap(), Scalar::from_i64(Q, 2));
        let g2 = Domain::Prime(2);
        let p2 = w(g2, 1).mul(&w(g2, 2)).add(&w(g2, 3));
        let pt2: Assignment = (1..=3).map(|v| (v, Scalar::one(g2))).collect();
        assert!(p2.eval(&pt2).unwrap().is_zero());
        assert!(MultiPoly::zero(Q).eval(&Assignment::new()).unwrap().is_zero());
        // Frobenius: w^2 + w vanishes on all of GF(2).
        let f = w(g2, 1).mul(&w(g2, 1)).add(&w(g2, 1));
        for x in 0..2 {
            let pt: Assignment = [(1, Scalar::from_i64(g2, x))].into_iter().collect();
            assert!(f.eval(&pt).unwrap().is_zero());
        }
        assert_eq!(w(Q, 4).eval(&Assignment::new()), Err(PolyError::UnassignedVariable(4)));
    }

    #[test]
    fn nonzero_point_cases() {
        let g2 = Domain::Prime(2);
        let pt = nonzero_point(&[w(g2, 1)], g2, 0).unwrap();
        assert!(pt[&1].is_one());
        let r = nonzero_point(&[w(g2, 1), w(g2, 1).add(&c(g2, 1))], g2, 0);
        assert_eq!(r, Err(PolyError::NotFound));
        let g7 = Domain::Prime(7);
        let f1 = w(g7, 1).mul(&w(g7, 2)).add(&w(g7, 3));
        let f2 = w(g7, 1).add(&c(g7, 1));
        let pt = nonzero_point(&[f1.clone(), f2.clone()], g7, 0).unwrap();
        assert!(!f1.eval(&pt).unwrap().is_zero() && !f2.eval(&pt).unwrap().is_zero());
        assert_eq!(nonzero_point(&[MultiPoly::zero(g7)], g7, 0), Err(PolyError::ZeroPolynomialInput(0)));
    }

    #[test]
    fn nonzero_point_over_rationals() {
        // (w1 - w2) * w3 over QQ: random sampling succeeds.
        let f = w(Q, 1).sub(&w(Q, 2)).mul(&w(Q, 3));
        let pt = nonzero_point(&[f.clone()], Q, 3).unwrap();
        assert!(!f.eval(&pt).unwrap().is_zero());
    }

    #[test]
    fn grlex_display_order() {
        let d = Q;
        let p = w(d, 2).add(&c(d, 3).mul(&w(d, 1)).mul(&w(d, 1)).mul(&w(d, 5)));
        assert_eq!(p.to_string(), "3*w1^2*w5 + w2");
        let p = w(d, 2).neg().add(&c(d, 3).mul(&w(d, 1)).mul(&w(d, 1)).mul(&w(d, 5)));
        assert_eq!(p.to_string(), "3*w1^2*w5 - w2");
    }
}
