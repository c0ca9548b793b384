//! Seeded polynomial corpora.

use graded_image_core::algebra::GradedAlgebra;
use graded_image_core::group::GroupElement;
use graded_image_core::matrix::ProductKind;
use graded_image_core::multilinear::{random_commutator_poly, random_poly, Monomial, MultilinearPoly, RandomSpec};
use graded_image_core::scalar::{Domain, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn permutations(m: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, m);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Every ungraded associative multilinear polynomial of degree `1..=max_degree` with
/// coefficients in `{-1, 0, 1}`, one per line through the origin: the first nonzero
/// coefficient is `1`.
pub fn exhaustive_corpus(domain: Domain, max_degree: u32) -> Vec<MultilinearPoly> {
    let mut out = Vec::new();
    for m in 1..=max_degree {
        let words = permutations(m);
        let total = 3usize.pow(words.len() as u32);
        for code in 1..total {
            let mut digits = Vec::with_capacity(words.len());
            let mut c = code;
            for _ in 0..words.len() {
                digits.push((c % 3) as i64 - 1);
                c /= 3;
            }
            if digits.iter().find(|&&d| d != 0) != Some(&1) {
                continue;
            }
            let raw = words
                .iter()
                .zip(&digits)
                .filter(|(_, &d)| d != 0)
                .map(|(w, &d)| (Monomial::Word(w.clone()), Scalar::from_i64(domain, d)));
            out.push(MultilinearPoly::ungraded(ProductKind::Assoc, domain, m, raw).expect("distinct words"));
        }
    }
    out
}

/// Recipe for a random corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub kind: ProductKind,
    /// Degrees variables are drawn from; the group is taken from the algebra.
    pub degrees: Vec<GroupElement>,
    pub min_vars: usize,
    pub max_vars: usize,
    /// Draw every other associative polynomial from commutator blocks.
    pub commutator_blocks: bool,
}

impl CorpusSpec {
    /// Degrees from the support of `alg`, its own product, up to `max_vars` variables.
    pub fn for_algebra(alg: &GradedAlgebra, max_vars: usize) -> Self {
        CorpusSpec {
            kind: alg.kind(),
            degrees: alg.components().iter().map(|c| c.degree.clone()).collect(),
            min_vars: 1,
            max_vars,
            commutator_blocks: alg.kind() == ProductKind::Assoc,
        }
    }
}

/// `count` polynomials for `alg`, all drawn from one generator seeded with `seed`.
pub fn random_corpus(seed: u64, count: usize, alg: &GradedAlgebra, spec: &CorpusSpec) -> Vec<MultilinearPoly> {
    assert!(spec.min_vars >= 1 && spec.min_vars <= spec.max_vars, "bad variable range");
    assert!(!spec.degrees.is_empty(), "no degrees to draw from");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let m = rng.random_range(spec.min_vars..=spec.max_vars);
            let degrees: Vec<GroupElement> = (0..m).map(|_| spec.degrees[rng.random_range(0..spec.degrees.len())].clone()).collect();
            let rs = RandomSpec { kind: spec.kind, group: alg.group().clone(), degrees, pool: vec![-2, -1, 1, 2], max_terms: 4 };
            let sub = rng.random::<u64>();
            if spec.commutator_blocks && spec.kind == ProductKind::Assoc && k % 2 == 1 {
                random_commutator_poly(sub, &rs, alg.domain())
            } else {
                random_poly(sub, &rs, alg.domain())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use graded_image_core::algebra::{Grading, Species};

    #[test]
    fn exhaustive_counts() {
        let d = Domain::Prime(7);
        let c = exhaustive_corpus(d, 3);
        // 1 + (3^2 - 1)/2 + (3^6 - 1)/2
        assert_eq!(c.len(), 1 + 4 + 364);
        let lines: std::collections::BTreeSet<String> = c.iter().map(|f| f.to_line()).collect();
        assert_eq!(lines.len(), c.len());
        for f in &c {
            assert!(!lines.contains(&f.scale(&Scalar::from_i64(d, -1)).to_line()));
        }
    }

    #[test]
    fn corpus_is_reproducible_and_respects_the_pool() {
        let alg = GradedAlgebra::new(Species::UT(4), Grading::step(4, 2), Domain::Prime(11)).unwrap();
        let spec = CorpusSpec::for_algebra(&alg, 4);
        let a = random_corpus(5, 30, &alg, &spec);
        assert_eq!(a, random_corpus(5, 30, &alg, &spec));
        assert_ne!(a, random_corpus(6, 30, &alg, &spec));
        for f in &a {
            assert!(f.vars().iter().all(|v| spec.degrees.contains(&v.degree)));
            assert!((1..=4).contains(&f.var_count()));
        }
    }
}
