//! The acceptance suite: eleven criteria, each a seeded, exact check.
//!
//! Every criterion counts the objects it checked and collects failures. A criterion
//! passes when the failure count does not exceed [`MAX_FAILURES`], which is zero: all
//! comparisons are exact equalities of subspaces, matrices or verdicts.

use graded_image_core::algebra::{GradedAlgebra, Grading, MirrorCase, Named, Species};
use graded_image_core::analysis::{
    analyze, assign_degrees, central_check, classify_ut3_grading, commutator_degree, is_graded_identity, span_of_image,
    traceless_condition, verify_image, verify_traceless, AnalysisError, CentralVerdict, PredictedName, TracelessVerdict,
    Ut3Case, VerifyOptions,
};
use graded_image_core::group::{Group, GroupElement};
use graded_image_core::matrix::{Matrix, ProductKind};
use graded_image_core::multilinear::{random_poly, MultilinearPoly, RandomSpec};
use graded_image_core::poly::random_scalar;
use graded_image_core::scalar::{Domain, Scalar};
use graded_image_core::similarity::zero_diagonal_conjugate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{exhaustive_corpus, random_corpus, CorpusSpec};

pub const DEFAULT_SEED: u64 = crate::config::DEFAULT_SEED;

/// Failures tolerated per criterion.
pub const MAX_FAILURES: usize = 0;

/// Wall-clock budget per criterion in seconds, indexed by criterion number minus one.
pub const TIME_BUDGET_SECS: [u64; 11] = [300, 60, 600, 180, 300, 300, 120, 300, 300, 600, 120];

pub const CRITERIA: [&str; 11] = [
    "trivially graded UT_n: image is J^r for the commutator degree r",
    "step grading identities on UT_3..UT_5",
    "step grading on UT_4: named image equals the span, verified",
    "natural Z_n grading: nonzero image is the full component",
    "no graded central polynomials on UT_2..UT_4",
    "traceless matrices are values on M_3 over GF(7)",
    "traceless non-scalar matrices are similar to zero-diagonal ones",
    "the seven gradings of UT_3: verified homogeneous images",
    "UJ_2 under five gradings: Jacobson identity and verified images",
    "UJ_3 natural Z_3 over GF(101): identities and full components",
    "cross-checks: traceless condition and coefficient sums",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    /// Replace the Jordan product by `ab - ba` in the basis-tuple Jacobson check.
    pub inject_jordan_bug: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: DEFAULT_SEED, inject_jordan_bug: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.len() <= MAX_FAILURES
    }

    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("[{status}] {:>2} {} ({} checked, {} failed)", self.id, self.name, self.checked, self.failures.len());
        if let Some(first) = self.failures.first() {
            s.push_str(&format!(": {first}"));
        }
        s
    }
}

struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { checked: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.checked += 1;
        self.failures.push(what);
    }

    fn finish(self, id: usize) -> Outcome {
        Outcome { id, name: CRITERIA[id - 1], checked: self.checked, failures: self.failures }
    }
}

fn sub_seed(seed: u64, salt: u64) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt.wrapping_mul(0xbf58_476d_1ce4_e5b9)
}

fn verify_options(seed: u64) -> VerifyOptions {
    VerifyOptions { seed, ..VerifyOptions::default() }
}

fn algebra(species: Species, grading: Grading, d: Domain) -> GradedAlgebra {
    GradedAlgebra::new(species, grading, d).expect("acceptance algebras are well formed")
}

fn graded_poly(text: &str, kind: ProductKind, d: Domain, g: &Group, degs: &[(u32, i64)]) -> MultilinearPoly {
    let degs: Vec<(u32, GroupElement)> = degs.iter().map(|&(v, k)| (v, g.of(k))).collect();
    MultilinearPoly::parse(text, kind, d, g.clone(), &degs).expect("acceptance polynomials parse")
}

pub fn run(id: usize, opts: &Options) -> Outcome {
    let tally = match id {
        1 => trivial_grading(opts),
        2 => step_identities(),
        3 => step_images(opts),
        4 => natural_components(opts),
        5 => no_central(opts),
        6 => traceless(opts),
        7 => zero_diagonal(opts),
        8 => ut3_cases(opts),
        9 => jordan_uj2(opts),
        10 => jordan_uj3(opts),
        11 => cross_checks(opts),
        _ => panic!("no criterion {id}"),
    };
    tally.finish(id)
}

pub fn run_all(opts: &Options) -> Vec<Outcome> {
    (1..=CRITERIA.len()).map(|id| run(id, opts)).collect()
}

fn trivial_grading(opts: &Options) -> Tally {
    let d = Domain::Prime(7);
    let corpus = exhaustive_corpus(d, 3);
    let mut t = Tally::new();
    for n in 2..=4 {
        let alg = algebra(Species::UT(n), Grading::Trivial, d);
        for (k, f) in corpus.iter().enumerate() {
            let r = match commutator_degree(f) {
                Ok(r) => r,
                Err(e) => {
                    t.fail(format!("{} : {e}", f.to_line()));
                    continue;
                }
            };
            let target = alg.named_subspace(&Named::Jpow(r)).expect("J^r exists");
            match span_of_image(f, &alg) {
                Ok(span) => t.check(span == target, || format!("UT_{n}: {} spans dim {} not J^{r}", f.to_line(), span.dim())),
                Err(e) => t.fail(format!("UT_{n}: {}: {e}", f.to_line())),
            }
            match verify_image(f, &alg, &target, &verify_options(sub_seed(opts.seed, k as u64))) {
                Ok((v, _)) => t.check(v.is_verified(), || format!("UT_{n}: {} {}", f.to_line(), v.label())),
                Err(e) => t.fail(format!("UT_{n}: {}: {e}", f.to_line())),
            }
        }
    }
    t
}

fn identity_holds(t: &mut Tally, f: &MultilinearPoly, alg: &GradedAlgebra, expect: bool) {
    match is_graded_identity(f, alg) {
        Ok(c) => t.check(c.identity == expect, || format!("{} on {alg}: identity = {}", f.to_line(), c.identity)),
        Err(e) => t.fail(format!("{} on {alg}: {e}", f.to_line())),
    }
}

fn step_identities() -> Tally {
    let d = Domain::Prime(11);
    let mut t = Tally::new();
    for n in 3..=5usize {
        for q in 2..=n as u64 {
            let alg = algebra(Species::UT(n), Grading::step(n, q), d);
            let g = Group::cyclic(q);
            for k in 1..q as i64 {
                identity_holds(&mut t, &graded_poly("[y1,y2]*z3", ProductKind::Assoc, d, &g, &[(1, 0), (2, 0), (3, k)]), &alg, true);
                identity_holds(&mut t, &graded_poly("z1*z2", ProductKind::Assoc, d, &g, &[(1, k), (2, q as i64 - k)]), &alg, true);
            }
            let c = n - q as usize + 1;
            let text: Vec<String> = (0..c).map(|i| format!("[y{},y{}]", 2 * i + 1, 2 * i + 2)).collect();
            let degs: Vec<(u32, i64)> = (1..=2 * c as u32).map(|v| (v, 0)).collect();
            identity_holds(&mut t, &graded_poly(&text.join("*"), ProductKind::Assoc, d, &g, &degs), &alg, true);
        }
    }
    t
}

/// Name of a step-grading image in the `Zero / J^r / B_l,r / A_l` vocabulary. On the
/// natural grading (`q = n`) the dispatcher reports the component of `deg f`, which
/// is `J^0` for the neutral degree and `A_l` otherwise.
fn step_name(name: &PredictedName, alg: &GradedAlgebra) -> Option<Named> {
    match name {
        PredictedName::Named(n @ (Named::Zero | Named::Jpow(_) | Named::Blr(..) | Named::Alcomp(_))) => Some(n.clone()),
        PredictedName::Named(Named::Component(g)) if alg.step_q() == Some(alg.size() as u64) => {
            let l = g.coords()[0] as u64;
            Some(if l == 0 { Named::Jpow(0) } else { Named::Alcomp(l) })
        }
        _ => None,
    }
}

fn step_images(opts: &Options) -> Tally {
    let d = Domain::Prime(11);
    let mut t = Tally::new();
    for q in 2..=4u64 {
        let alg = algebra(Species::UT(4), Grading::step(4, q), d);
        let g = alg.group().clone();
        let spec = CorpusSpec { degrees: vec![g.identity(), g.of(1)], ..CorpusSpec::for_algebra(&alg, 4) };
        let corpus = random_corpus(sub_seed(opts.seed, 300 + q), 200, &alg, &spec);
        for (k, f) in corpus.iter().enumerate() {
            match analyze(f, &alg, &verify_options(sub_seed(opts.seed, k as u64))) {
                Ok(rep) => {
                    let name = step_name(&rep.prediction.name, &alg);
                    t.check(name.is_some(), || format!("q={q}: {} named {}", f.to_line(), rep.prediction.name));
                    if let Some(name) = name {
                        let by_name = alg.named_subspace(&name).expect("named subspace exists");
                        t.check(by_name == rep.span, || format!("q={q}: {} is not {name}", f.to_line()));
                    }
                    t.check(rep.prediction.subspace == rep.span, || format!("q={q}: {} predicted != span", f.to_line()));
                    t.check(rep.verdict.is_verified(), || format!("q={q}: {} {}", f.to_line(), rep.verdict.label()));
                }
                Err(e) => t.fail(format!("q={q}: {}: {e}", f.to_line())),
            }
        }
    }
    t
}

/// Nonzero image equals the full component of `deg f`, backed by witnesses.
fn full_component(t: &mut Tally, f: &MultilinearPoly, alg: &GradedAlgebra, seed: u64) {
    let span = match span_of_image(f, alg) {
        Ok(s) => s,
        Err(e) => return t.fail(format!("{} on {alg}: {e}", f.to_line())),
    };
    if span.is_zero() {
        t.checked += 1;
        return;
    }
    let target = alg.component_span(&f.degree());
    t.check(span == target, || format!("{} on {alg}: span dim {} vs component dim {}", f.to_line(), span.dim(), target.dim()));
    match verify_image(f, alg, &target, &verify_options(seed)) {
        Ok((v, _)) => t.check(v.is_verified(), || format!("{} on {alg}: {}", f.to_line(), v.label())),
        Err(e) => t.fail(format!("{} on {alg}: {e}", f.to_line())),
    }
}

fn natural_components(opts: &Options) -> Tally {
    let d = Domain::Prime(7);
    let mut t = Tally::new();
    for n in 2..=4usize {
        let alg = algebra(Species::UT(n), Grading::natural_cyclic(n, n as u64), d);
        let spec = CorpusSpec::for_algebra(&alg, 4);
        for (k, f) in random_corpus(sub_seed(opts.seed, 400 + n as u64), 300, &alg, &spec).iter().enumerate() {
            full_component(&mut t, f, &alg, sub_seed(opts.seed, k as u64));
        }
    }
    t
}

fn no_central(opts: &Options) -> Tally {
    let d = Domain::Prime(7);
    let mut t = Tally::new();
    for n in 2..=4usize {
        let gradings = [Grading::Trivial, Grading::step(n, 2), Grading::natural_cyclic(n, n as u64)];
        for (gi, grading) in gradings.into_iter().enumerate() {
            let alg = algebra(Species::UT(n), grading, d);
            let spec = CorpusSpec::for_algebra(&alg, 4);
            for f in random_corpus(sub_seed(opts.seed, 500 + 10 * n as u64 + gi as u64), 1000, &alg, &spec) {
                match central_check(&f, &alg) {
                    Ok(v) => t.check(
                        matches!(v, CentralVerdict::Identity | CentralVerdict::Proper { .. }),
                        || format!("{} on {alg}: {v:?}", f.to_line()),
                    ),
                    Err(e) => t.fail(format!("{} on {alg}: {e}", f.to_line())),
                }
            }
        }
    }
    t
}

fn traceless(opts: &Options) -> Tally {
    let d = Domain::Prime(7);
    let n = 3;
    let m3 = algebra(Species::M(n), Grading::Trivial, d);
    let mut t = Tally::new();
    for (k, text) in ["x1*x2", "[x1,x2]", "x1*x2*x3"].into_iter().enumerate() {
        let f = MultilinearPoly::parse(text, ProductKind::Assoc, d, Group::trivial(), &[]).expect("parses");
        let z = f.vars().last().expect("has variables").index;
        match traceless_condition(&f, z) {
            Ok(c) => t.check(c.holds, || format!("{text}: condition fails")),
            Err(e) => t.fail(format!("{text}: {e}")),
        }
        match verify_traceless(&f, z, n, d, 100, sub_seed(opts.seed, 600 + k as u64)) {
            Ok(TracelessVerdict::Verified { samples, .. }) => {
                t.check(samples.len() == 100, || format!("{text}: {} samples", samples.len()));
                for s in samples {
                    let trace = (0..n).fold(Scalar::zero(d), |acc, i| &acc + s.target.get(i, i));
                    t.check(trace.is_zero() && !s.target.is_scalar(), || format!("{text}: sample {} is not traceless non-scalar", s.target));
                    match f.evaluate(&s.args, &m3) {
                        Ok(v) => t.check(v == s.target, || format!("{text}: witness gives {v}, wanted {}", s.target)),
                        Err(e) => t.fail(format!("{text}: {e}")),
                    }
                }
            }
            Ok(TracelessVerdict::Inconclusive(why)) => t.fail(format!("{text}: inconclusive: {why}")),
            Err(e) => t.fail(format!("{text}: {e}")),
        }
    }
    let bad = MultilinearPoly::parse("[[x1,x2],x3]", ProductKind::Assoc, d, Group::trivial(), &[]).expect("parses");
    let rejected = matches!(verify_traceless(&bad, 3, n, d, 100, opts.seed), Err(AnalysisError::HypothesisViolation(_)));
    t.check(rejected, || "[[x1,x2],x3] was not rejected".into());
    t
}

fn zero_diagonal(opts: &Options) -> Tally {
    let mut t = Tally::new();
    for n in 2..=4usize {
        for p in [5u64, 7, 11] {
            let d = Domain::Prime(p);
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(opts.seed, 700 + 10 * n as u64 + p));
            let mut done = 0;
            while done < 500 {
                let mut a = Matrix::from_rows(d, (0..n * n).map(|_| random_scalar(&mut rng, d)).collect());
                let rest = (0..n - 1).fold(Scalar::zero(d), |acc, k| &acc + a.get(k, k));
                a.set(n - 1, n - 1, -rest);
                if a.is_scalar() {
                    continue;
                }
                done += 1;
                match zero_diagonal_conjugate(&a) {
                    Ok(pm) => match pm.inverse() {
                        Ok(inv) => t.check(pm.mul(&a).mul(&inv).has_zero_diagonal(), || format!("n={n} p={p}: {a}")),
                        Err(_) => t.fail(format!("n={n} p={p}: singular conjugator for {a}")),
                    },
                    Err(e) => t.fail(format!("n={n} p={p}: {a}: {e}")),
                }
            }
        }
    }
    t
}

/// One elementary grading of `UT_3` per case, given by the degrees of `e12, e23`.
pub fn ut3_instances() -> Vec<(Ut3Case, Group, [Vec<i64>; 2])> {
    let z2 = Group::cyclic(2);
    let z3 = Group::cyclic(3);
    vec![
        (Ut3Case::Ia, Group::trivial(), [vec![], vec![]]),
        (Ut3Case::Ib, z2.clone(), [vec![0], vec![1]]),
        (Ut3Case::Ic, z2.clone(), [vec![1], vec![0]]),
        (Ut3Case::Id, z2, [vec![1], vec![1]]),
        (Ut3Case::Ie, z3.clone(), [vec![1], vec![2]]),
        (Ut3Case::IIa, Group::product(&[0, 0]), [vec![1, 0], vec![0, 1]]),
        (Ut3Case::IIb, z3, [vec![1], vec![1]]),
    ]
}

fn ut3_cases(opts: &Options) -> Tally {
    let d = Domain::Prime(7);
    let mut t = Tally::new();
    for (ci, (case, group, [a, b])) in ut3_instances().into_iter().enumerate() {
        let (g1, g2) = (group.elem(&a).expect("in group"), group.elem(&b).expect("in group"));
        t.check(classify_ut3_grading(&group, &g1, &g2) == case, || format!("case {case} misclassified"));
        let grading = if group.is_trivial() { Grading::Trivial } else { Grading::Elementary { group, degrees: vec![g1, g2] } };
        let alg = algebra(Species::UT(3), grading, d);
        let spec = CorpusSpec::for_algebra(&alg, 4);
        for (k, f) in random_corpus(sub_seed(opts.seed, 800 + ci as u64), 200, &alg, &spec).iter().enumerate() {
            match analyze(f, &alg, &verify_options(sub_seed(opts.seed, k as u64))) {
                Ok(rep) => {
                    t.check(rep.verdict.is_verified(), || format!("case {case}: {} {}", f.to_line(), rep.verdict.label()));
                    t.check(alg.is_homogeneous_subspace(&rep.span), || format!("case {case}: {} not homogeneous", f.to_line()));
                }
                Err(e) => t.fail(format!("case {case}: {}: {e}", f.to_line())),
            }
        }
    }
    t
}

pub fn jacobson(d: Domain) -> MultilinearPoly {
    MultilinearPoly::parse(
        "((x1 x2) x3) x4 + ((x1 x4) x3) x2 + ((x2 x4) x3) x1 - (x1 x2)(x3 x4) - (x1 x3)(x2 x4) - (x1 x4)(x2 x3)",
        ProductKind::Jordan,
        d,
        Group::trivial(),
        &[],
    )
    .expect("parses")
}

pub fn uj2_gradings() -> Vec<Grading> {
    let z2 = Group::cyclic(2);
    vec![
        Grading::Trivial,
        Grading::Elementary { group: z2.clone(), degrees: vec![z2.of(1)] },
        Grading::Mirror(MirrorCase::IIa),
        Grading::Mirror(MirrorCase::IIb),
        Grading::Mirror(MirrorCase::IIc),
    ]
}

/// Whether the Jacobson polynomial vanishes on every 4-tuple of homogeneous basis
/// elements of `alg`, with `op` as the Jordan product.
pub fn jacobson_on_basis(alg: &GradedAlgebra, op: &dyn Fn(&Matrix, &Matrix) -> Matrix) -> Result<(), String> {
    let f = jacobson(alg.domain());
    let basis: Vec<Matrix> = alg.components().iter().flat_map(|c| c.basis.iter().cloned()).collect();
    let k = basis.len();
    for code in 0..k.pow(4) {
        let args: Vec<&Matrix> = (0..4).map(|s| &basis[(code / k.pow(s)) % k]).collect();
        let v = f.eval_with(&args, op);
        if !v.is_zero() {
            let shown: Vec<String> = args.iter().map(|m| m.to_string()).collect();
            return Err(format!("Jacobson is {v} at ({}) on {alg}", shown.join(", ")));
        }
    }
    Ok(())
}

fn jordan_uj2(opts: &Options) -> Tally {
    let d = Domain::Prime(7);
    let jordan = |a: &Matrix, b: &Matrix| a.mul(b).add(&b.mul(a));
    let broken = |a: &Matrix, b: &Matrix| a.mul(b).sub(&b.mul(a));
    let op: &dyn Fn(&Matrix, &Matrix) -> Matrix = if opts.inject_jordan_bug { &broken } else { &jordan };
    let mut t = Tally::new();
    for (gi, grading) in uj2_gradings().into_iter().enumerate() {
        let alg = algebra(Species::UJ(2), grading, d);
        match jacobson_on_basis(&alg, op) {
            Ok(()) => t.checked += 1,
            Err(e) => t.fail(e),
        }
        let spec = CorpusSpec::for_algebra(&alg, 4);
        for (k, f) in random_corpus(sub_seed(opts.seed, 900 + gi as u64), 200, &alg, &spec).iter().enumerate() {
            match span_of_image(f, &alg) {
                Ok(span) => {
                    t.check(alg.is_homogeneous_subspace(&span), || format!("{} on {alg}: not homogeneous", f.to_line()));
                    match verify_image(f, &alg, &span, &verify_options(sub_seed(opts.seed, k as u64))) {
                        Ok((v, _)) => t.check(v.is_verified(), || format!("{} on {alg}: {}", f.to_line(), v.label())),
                        Err(e) => t.fail(format!("{} on {alg}: {e}", f.to_line())),
                    }
                }
                Err(e) => t.fail(format!("{} on {alg}: {e}", f.to_line())),
            }
        }
    }
    t
}

fn jordan_uj3(opts: &Options) -> Tally {
    let d = Domain::Prime(101);
    let alg = algebra(Species::UJ(3), Grading::natural_cyclic(3, 3), d);
    let z3 = Group::cyclic(3);
    let mut t = Tally::new();
    identity_holds(&mut t, &graded_poly("(y1,y2,y3)", ProductKind::Jordan, d, &z3, &[(1, 0), (2, 0), (3, 0)]), &alg, true);
    for k in 1..3 {
        identity_holds(&mut t, &graded_poly("(y1,z2,y3)", ProductKind::Jordan, d, &z3, &[(1, 0), (2, k), (3, 0)]), &alg, true);
        identity_holds(&mut t, &graded_poly("z1 z2", ProductKind::Jordan, d, &z3, &[(1, k), (2, 3 - k)]), &alg, true);
    }
    let spec = CorpusSpec::for_algebra(&alg, 4);
    for (k, f) in random_corpus(sub_seed(opts.seed, 1000), 150, &alg, &spec).iter().enumerate() {
        full_component(&mut t, f, &alg, sub_seed(opts.seed, k as u64));
    }
    t
}

fn cross_checks(opts: &Options) -> Tally {
    let d = Domain::Prime(7);
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(opts.seed, 1100));
    let ut2 = algebra(Species::UT(2), Grading::natural_integers(2), d);
    let zg = Group::integers();
    for _ in 0..500 {
        let m = rng.random_range(1..=4usize);
        let f = random_poly(rng.random(), &RandomSpec::ungraded(ProductKind::Assoc, m), d);
        let z = rng.random_range(1..=m as u32);
        let by_table = f.z_split_sums(z).map(|tab| tab.values().any(|c| !c.is_zero()));
        let degrees: Vec<GroupElement> = (1..=m as u32).map(|v| if v == z { zg.of(1) } else { zg.identity() }).collect();
        let by_identity = assign_degrees(&f, &zg, &degrees).and_then(|g| is_graded_identity(&g, &ut2)).map(|c| !c.identity);
        match (by_table, by_identity, traceless_condition(&f, z)) {
            (Ok(a), Ok(b), Ok(c)) => t.check(a == b && b == c.holds, || format!("{} z=x{z}: table {a}, identity {b}, combined {}", f.to_line(), c.holds)),
            (a, b, c) => t.fail(format!("{} z=x{z}: {:?} {:?} {:?}", f.to_line(), a.err(), b.err(), c.err())),
        }
    }
    for f in exhaustive_corpus(d, 3) {
        match commutator_degree(&f) {
            Ok(r) => {
                let zero_sum = f.coefficient_sum().is_zero();
                t.check(zero_sum == (r >= 1), || format!("{}: coefficient sum zero = {zero_sum}, r = {r}", f.to_line()));
            }
            Err(e) => t.fail(format!("{}: {e}", f.to_line())),
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn injected_jordan_bug_breaks_jacobson() {
        let alg = algebra(Species::UJ(2), Grading::Trivial, Domain::Prime(7));
        let broken = |a: &Matrix, b: &Matrix| a.mul(b).sub(&b.mul(a));
        let jordan = |a: &Matrix, b: &Matrix| a.mul(b).add(&b.mul(a));
        assert!(jacobson_on_basis(&alg, &jordan).is_ok());
        assert!(jacobson_on_basis(&alg, &broken).is_err());
    }

    #[test]
    fn ut3_instances_cover_every_case() {
        let cases: Vec<Ut3Case> = ut3_instances().into_iter().map(|(c, ..)| c).collect();
        assert_eq!(cases.len(), 7);
        let distinct: std::collections::BTreeSet<_> = cases.iter().collect();
        assert_eq!(distinct.len(), 7);
    }

    #[test]
    fn summary_line() {
        let o = Outcome { id: 3, name: CRITERIA[2], checked: 5, failures: vec!["boom".into()] };
        assert!(!o.passed());
        assert!(o.summary().starts_with("[FAIL]  3 "));
        assert!(o.summary().ends_with(": boom"));
    }
}
