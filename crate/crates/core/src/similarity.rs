//! Conjugating a traceless non-scalar matrix to one with zero diagonal.

use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::Matrix;
use crate::poly::random_scalar;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimilarityError {
    #[error("matrix is scalar; no conjugate has zero diagonal unless it is zero")]
    CentralInput,
    #[error("matrix trace is nonzero")]
    NotTraceless,
    #[error("no zero-diagonal conjugate found within the retry budget")]
    Exhausted,
}

const RANDOM_RETRIES: usize = 200;

fn column(a: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    let n = a.size();
    (0..n)
        .map(|i| (0..n).fold(Scalar::zero(a.domain()), |acc, k| &acc + &(a.get(i, k) * &v[k])))
        .collect()
}

fn independent(v: &[Scalar], w: &[Scalar]) -> bool {
    // rank of the 2 x n matrix [v; w] is 2 iff some 2 x 2 minor is nonzero
    let n = v.len();
    (0..n).any(|i| (i + 1..n).any(|j| !(&(&v[i] * &w[j]) - &(&v[j] * &w[i])).is_zero()))
}

/// Matrix whose columns are `cols`, completed by standard vectors to a basis.
fn complete_basis(n: usize, cols: Vec<Vec<Scalar>>, like: &Matrix) -> Matrix {
    let d = like.domain();
    let mut chosen = cols;
    for k in 0..n {
        if chosen.len() == n {
            break;
        }
        let mut e = alloc::vec![Scalar::zero(d); n];
        e[k] = Scalar::one(d);
        let mut trial = chosen.clone();
        trial.push(e);
        let q = from_columns(n, &trial, like);
        if rank(&q) == trial.len() {
            chosen = trial;
        }
    }
    from_columns(n, &chosen, like)
}

fn from_columns(n: usize, cols: &[Vec<Scalar>], like: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(n, like.domain());
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    m
}

fn rank(m: &Matrix) -> usize {
    let n = m.size();
    let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot");
        for i in r + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let t = &a[r][j] * &f;
                a[i][j] = &a[i][j] - &t;
            }
        }
        r += 1;
    }
    r
}

fn trailing_block(a: &Matrix) -> Matrix {
    let n = a.size();
    let mut b = Matrix::zeros(n - 1, a.domain());
    for i in 1..n {
        for j in 1..n {
            b.set(i - 1, j - 1, a.get(i, j).clone());
        }
    }
    b
}

fn embed_lower(p: &Matrix) -> Matrix {
    let n = p.size() + 1;
    let mut m = Matrix::identity(n, p.domain());
    for i in 1..n {
        for j in 1..n {
            m.set(i, j, p.get(i - 1, j - 1).clone());
        }
    }
    m
}

fn candidates(n: usize, like: &Matrix) -> Vec<Vec<Scalar>> {
    let d = like.domain();
    let unit = |k: usize| {
        let mut e = alloc::vec![Scalar::zero(d); n];
        e[k] = Scalar::one(d);
        e
    };
    let mut out: Vec<Vec<Scalar>> = (0..n).map(unit).collect();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit(i);
            v[j] = Scalar::one(d);
            out.push(v);
        }
    }
    out
}

/// Deterministic recursive reduction; `None` when every candidate leads to a nonzero scalar block.
fn reduce(a: &Matrix) -> Option<Matrix> {
    let n = a.size();
    if a.has_zero_diagonal() {
        return Some(Matrix::identity(n, a.domain()));
    }
    if n == 1 || a.is_scalar() {
        return None;
    }
    for v in candidates(n, a) {
        let av = column(a, &v);
        if !independent(&v, &av) {
            continue;
        }
        let q = complete_basis(n, alloc::vec![v, av], a);
        let qinv = q.inverse().expect("basis matrix is invertible");
        let conj = qinv.mul(a).mul(&q);
        debug_assert!(conj.get(0, 0).is_zero());
        let b = trailing_block(&conj);
        if let Some(pb) = reduce(&b) {
            return Some(embed_lower(&pb).mul(&qinv));
        }
    }
    None
}

/// Invertible `P` with `diag(P A P^-1) = 0`, for traceless non-scalar `A`.
pub fn zero_diagonal_conjugate(a: &Matrix) -> Result<Matrix, SimilarityError> {
    let n = a.size();
    let d = a.domain();
    if a.has_zero_diagonal() {
        return Ok(Matrix::identity(n, d));
    }
    if a.is_scalar() {
        return Err(SimilarityError::CentralInput);
    }
    if !a.trace().is_zero() {
        return Err(SimilarityError::NotTraceless);
    }
    let p = match reduce(a) {
        Some(p) => p,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0d1a);
            let mut found = None;
            for _ in 0..RANDOM_RETRIES {
                let s = Matrix::from_rows(d, (0..n * n).map(|_| random_scalar(&mut rng, d)).collect());
                let Ok(sinv) = s.inverse() else { continue };
                if let Some(p) = reduce(&s.mul(a).mul(&sinv)) {
                    found = Some(p.mul(&s));
                    break;
                }
            }
            found.ok_or(SimilarityError::Exhausted)?
        }
    };
    let pinv = p.inverse().expect("conjugating matrix is invertible");
    assert!(p.mul(a).mul(&pinv).has_zero_diagonal(), "zero-diagonal postcondition failed");
    Ok(p)
}
