//! Identity testing, image spans, classification and constructive verification.
//!
//! Everything rests on multilinearity: the span of the image of `f` is spanned by
//! its values on tuples of homogeneous basis elements, so exhaustive enumeration
//! of those tuples is exact.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraError, GradedAlgebra, Grading, MirrorCase, Named, Species};
use crate::group::{Group, GroupElement};
use crate::matrix::{Matrix, ProductKind};
use crate::multilinear::{lift_to_unit_degrees, zq_decompose, FreeError, Monomial, MultilinearPoly};
use crate::poly::{nonzero_point, random_scalar, MultiPoly, PolyError};
use crate::scalar::{Domain, Scalar};
use crate::similarity::{zero_diagonal_conjugate, SimilarityError};
use crate::subspace::{solve, Subspace};

/// Default cap on the number of basis tuples an enumeration may visit.
pub const DEFAULT_TUPLE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Similarity(#[from] SimilarityError),
    #[error("{count} basis tuples exceed the cap of {cap}")]
    SearchSpaceTooLarge { count: u128, cap: u64 },
    #[error("the zero polynomial has no commutator degree")]
    ZeroPolynomial,
    #[error("polynomial degrees live in {poly} but the algebra is graded by {algebra}")]
    GroupMismatch { poly: String, algebra: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("internal inconsistency: {0}")]
    MismatchBug(String),
}

type Result<T> = core::result::Result<T, AnalysisError>;

// ---------------------------------------------------------------------------
// Enumeration

/// Homogeneous bases for each variable slot of `f` on `alg`.
#[derive(Debug, Clone)]
pub struct Slots {
    pub degrees: Vec<GroupElement>,
    pub bases: Vec<Vec<Matrix>>,
    /// Matrix-unit positions per slot when every basis is made of units.
    pub units: Option<Vec<Vec<(usize, usize)>>>,
}

impl Slots {
    pub fn of(f: &MultilinearPoly, alg: &GradedAlgebra) -> Result<Self> {
        if f.kind() != alg.kind() {
            return Err(FreeError::KindMismatch { poly: f.kind(), algebra: alg.kind() }.into());
        }
        if !f.group().is_trivial() && f.group() != alg.group() {
            return Err(AnalysisError::GroupMismatch { poly: f.group().to_string(), algebra: alg.group().to_string() });
        }
        let mut degrees = Vec::new();
        let mut bases = Vec::new();
        let mut units = Some(Vec::new());
        for v in f.vars() {
            let g = f.degree_in(alg, v).expect("group checked above");
            let comp = alg.component(&g);
            bases.push(comp.map(|c| c.basis.clone()).unwrap_or_default());
            match (comp.map(|c| c.units.clone()), units.as_mut()) {
                (Some(Some(u)), Some(us)) => us.push(u),
                (None, Some(us)) => us.push(Vec::new()),
                _ => units = None,
            }
            degrees.push(g);
        }
        Ok(Slots { degrees, bases, units })
    }

    /// Some variable's degree has an empty component, so every value is zero.
    pub fn is_vacuous(&self) -> bool {
        self.bases.iter().any(|b| b.is_empty())
    }

    pub fn tuple_count(&self) -> u128 {
        self.bases.iter().map(|b| b.len() as u128).product()
    }

    pub fn args(&self, key: &[usize]) -> Vec<Matrix> {
        key.iter().zip(&self.bases).map(|(&k, b)| b[k].clone()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumStats {
    /// Tuples evaluated: chain-compatible (word, tuple) pairs for unit bases, all tuples otherwise.
    pub tuples: u128,
    pub nonzero: usize,
    pub vacuous: bool,
}

type UnitValues = BTreeMap<Vec<usize>, BTreeMap<(usize, usize), Scalar>>;

struct UnitDfs<'a> {
    /// Per slot, per start row: `(basis index, end column)`.
    by_row: Vec<Vec<Vec<(usize, usize)>>>,
    word: &'a [usize],
    coeff: &'a Scalar,
    choice: Vec<usize>,
    out: &'a mut UnitValues,
    visited: u128,
    cap: u128,
}

impl UnitDfs<'_> {
    fn run(&mut self, k: usize, start: usize, end: usize) {
        if self.visited > self.cap {
            return;
        }
        if k == self.word.len() {
            self.visited += 1;
            let cell = self.out.entry(self.choice.clone()).or_default();
            let slot = cell.entry((start, end)).or_insert_with(|| Scalar::zero(self.coeff.domain()));
            *slot = &*slot + self.coeff;
            return;
        }
        let s = self.word[k];
        let rows: Vec<usize> = if k == 0 { (0..self.by_row[s].len()).collect() } else { vec![end] };
        for row in rows {
            for idx in 0..self.by_row[s][row].len() {
                let (b, e) = self.by_row[s][row][idx];
                self.choice[s] = b;
                self.run(k + 1, if k == 0 { row } else { start }, e);
            }
        }
    }
}

/// Values on chain-compatible unit tuples; other unit tuples give zero for every word.
/// Returns the number of (word, tuple) pairs visited, stopping once it passes `cap`.
fn unit_values(f: &MultilinearPoly, units: &[Vec<(usize, usize)>], n: usize, cap: u128) -> (UnitValues, u128) {
    let assoc = f.to_assoc();
    let pos: BTreeMap<u32, usize> = f.vars().iter().enumerate().map(|(k, v)| (v.index, k)).collect();
    let by_row: Vec<Vec<Vec<(usize, usize)>>> = units
        .iter()
        .map(|us| {
            let mut rows = vec![Vec::new(); n];
            for (b, &(i, j)) in us.iter().enumerate() {
                rows[i].push((b, j));
            }
            rows
        })
        .collect();
    let mut out = UnitValues::new();
    let mut visited = 0;
    for (m, c) in assoc.terms() {
        let Monomial::Word(w) = m else { unreachable!("associative terms are words") };
        let word: Vec<usize> = w.iter().map(|v| pos[v]).collect();
        let mut dfs = UnitDfs {
            by_row: by_row.clone(),
            word: &word,
            coeff: c,
            choice: vec![0; units.len()],
            out: &mut out,
            visited,
            cap,
        };
        dfs.run(0, 0, 0);
        visited = dfs.visited;
        if visited > cap {
            break;
        }
    }
    (out, visited)
}

/// Call `visit` on every basis tuple with a nonzero value, in lexicographic order of
/// basis indices. Tuples with value zero are skipped.
///
/// With matrix-unit bases only tuples whose units chain together are visited, and
/// `cap` bounds those; otherwise it bounds the full cartesian product.
pub fn for_each_value(
    f: &MultilinearPoly,
    alg: &GradedAlgebra,
    cap: u64,
    mut visit: impl FnMut(&[usize], &Matrix) -> ControlFlow<()>,
) -> Result<EnumStats> {
    let slots = Slots::of(f, alg)?;
    let mut stats = EnumStats { tuples: slots.tuple_count(), nonzero: 0, vacuous: slots.is_vacuous() };
    if stats.vacuous || f.is_zero() {
        return Ok(stats);
    }
    let n = alg.size();
    let d = alg.domain();
    if let Some(units) = &slots.units {
        let (values, visited) = unit_values(f, units, n, cap as u128);
        if visited > cap as u128 {
            return Err(AnalysisError::SearchSpaceTooLarge { count: visited, cap });
        }
        stats.tuples = visited;
        for (key, cells) in values {
            let mut m = Matrix::zeros(n, d);
            for ((i, j), c) in cells {
                if !c.is_zero() {
                    m.set(i, j, c);
                }
            }
            if m.is_zero() {
                continue;
            }
            stats.nonzero += 1;
            if visit(&key, &m).is_break() {
                break;
            }
        }
        return Ok(stats);
    }
    if stats.tuples > cap as u128 {
        return Err(AnalysisError::SearchSpaceTooLarge { count: stats.tuples, cap });
    }
    let sizes: Vec<usize> = slots.bases.iter().map(Vec::len).collect();
    let mut key = vec![0usize; sizes.len()];
    loop {
        let args: Vec<&Matrix> = key.iter().zip(&slots.bases).map(|(&k, b)| &b[k]).collect();
        let m = f.eval_refs(&args);
        if !m.is_zero() {
            stats.nonzero += 1;
            if visit(&key, &m).is_break() {
                break;
            }
        }
        // odometer, last slot fastest
        let mut t = sizes.len();
        loop {
            if t == 0 {
                return Ok(stats);
            }
            t -= 1;
            key[t] += 1;
            if key[t] < sizes[t] {
                break;
            }
            key[t] = 0;
        }
    }
    Ok(stats)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: bool,
    /// Some variable degree lies outside the support, making `f` trivially zero.
    pub vacuous: bool,
    /// First basis tuple (in index order) with a nonzero value, and that value.
    pub witness: Option<(Vec<Matrix>, Matrix)>,
}

pub fn is_graded_identity(f: &MultilinearPoly, alg: &GradedAlgebra) -> Result<IdentityCheck> {
    is_graded_identity_with(f, alg, DEFAULT_TUPLE_CAP)
}

pub fn is_graded_identity_with(f: &MultilinearPoly, alg: &GradedAlgebra, cap: u64) -> Result<IdentityCheck> {
    let slots = Slots::of(f, alg)?;
    let mut witness = None;
    let stats = for_each_value(f, alg, cap, |key, m| {
        witness = Some((slots.args(key), m.clone()));
        ControlFlow::Break(())
    })?;
    Ok(IdentityCheck { identity: witness.is_none(), vacuous: stats.vacuous, witness })
}

pub fn span_of_image(f: &MultilinearPoly, alg: &GradedAlgebra) -> Result<Subspace> {
    span_of_image_with(f, alg, DEFAULT_TUPLE_CAP).map(|(s, _)| s)
}

pub fn span_of_image_with(f: &MultilinearPoly, alg: &GradedAlgebra, cap: u64) -> Result<(Subspace, EnumStats)> {
    let mut span = Subspace::zero(alg.size(), alg.domain());
    let full = alg.full().dim();
    let stats = for_each_value(f, alg, cap, |_, m| {
        span.insert(m);
        if span.dim() == full {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok((span, stats))
}

// ---------------------------------------------------------------------------
// Commutator degree

/// Largest `k` such that `f` is an identity of `UT_k`, for associative `f`
/// (Lie input is expanded first). Degrees are ignored.
pub fn commutator_degree(f: &MultilinearPoly) -> Result<usize> {
    let f = match f.kind() {
        ProductKind::Assoc => f.forget_grading(),
        ProductKind::Lie => f.expand_lie()?.forget_grading(),
        ProductKind::Jordan => return Err(FreeError::KindMismatch { poly: f.kind(), algebra: ProductKind::Assoc }.into()),
    };
    if f.is_zero() {
        return Err(AnalysisError::ZeroPolynomial);
    }
    let m = f.var_count();
    let mut r = 0;
    for k in 1..=m / 2 + 1 {
        let ut = GradedAlgebra::trivial(Species::UT(k), f.domain())?;
        if !is_graded_identity(&f, &ut)?.identity {
            break;
        }
        r = k;
    }
    if r > m / 2 {
        return Err(AnalysisError::MismatchBug(alloc::format!("{f} of degree {m} vanishes on UT_{r}")));
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Central polynomials

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralVerdict {
    Identity,
    /// Nonzero image inside the center.
    Central,
    /// A basis tuple whose value is not central.
    Proper { args: Vec<Matrix>, value: Matrix },
    /// `Central` on an algebra where it cannot occur.
    MismatchBug(String),
}

pub fn central_check(f: &MultilinearPoly, alg: &GradedAlgebra) -> Result<CentralVerdict> {
    let slots = Slots::of(f, alg)?;
    let mut center: Option<Subspace> = None;
    let mut nonzero = false;
    let mut proper = None;
    for_each_value(f, alg, DEFAULT_TUPLE_CAP, |key, m| {
        nonzero = true;
        let z = center.get_or_insert_with(|| alg.center());
        if z.contains(m) {
            ControlFlow::Continue(())
        } else {
            proper = Some((slots.args(key), m.clone()));
            ControlFlow::Break(())
        }
    })?;
    Ok(match (nonzero, proper) {
        (false, _) => CentralVerdict::Identity,
        (true, Some((args, value))) => CentralVerdict::Proper { args, value },
        (true, None) => match alg.species() {
            Species::UT(n) if *n > 1 => {
                CentralVerdict::MismatchBug(alloc::format!("{f} has a nonzero central image on {alg}"))
            }
            _ => CentralVerdict::Central,
        },
    })
}

// ---------------------------------------------------------------------------
// Classification

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ut3Case {
    Ia,
    Ib,
    Ic,
    Id,
    Ie,
    IIa,
    IIb,
}

impl fmt::Display for Ut3Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ut3Case::Ia => "Ia",
            Ut3Case::Ib => "Ib",
            Ut3Case::Ic => "Ic",
            Ut3Case::Id => "Id",
            Ut3Case::Ie => "Ie",
            Ut3Case::IIa => "IIa",
            Ut3Case::IIb => "IIb",
        })
    }
}

/// Case of an elementary grading on `UT_3` with `deg e12 = g1`, `deg e23 = g2`.
pub fn classify_ut3_grading(group: &Group, g1: &GroupElement, g2: &GroupElement) -> Ut3Case {
    let g3 = group.op(g1, g2);
    let (t1, t2, t3) = (g1.is_identity(), g2.is_identity(), g3.is_identity());
    if t1 && t2 {
        Ut3Case::Ia
    } else if t1 {
        Ut3Case::Ib
    } else if t2 {
        Ut3Case::Ic
    } else if t3 {
        if g1 == g2 {
            Ut3Case::Id
        } else {
            Ut3Case::Ie
        }
    } else if g1 == g2 {
        Ut3Case::IIb
    } else {
        Ut3Case::IIa
    }
}

/// Which classification result produced a prediction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Theorem {
    /// Trivially graded triangular algebra: `J^r` with `r` the commutator degree.
    CommutatorDegree,
    /// Step grading: canonical form on the odd variables.
    StepGrading,
    /// Natural cyclic or integer grading: zero or the component of `deg f`.
    NaturalGrading,
    Ut2Graded,
    Ut3Case(Ut3Case),
    /// Jordan `UJ_2` under one of its five gradings.
    JordanUj2(&'static str),
    JordanUj3Natural,
    LieUt2Graded,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theorem::CommutatorDegree => f.write_str("commutator-degree"),
            Theorem::StepGrading => f.write_str("step-grading"),
            Theorem::NaturalGrading => f.write_str("natural-grading"),
            Theorem::Ut2Graded => f.write_str("ut2-graded"),
            Theorem::Ut3Case(c) => write!(f, "ut3-case-{c}"),
            Theorem::JordanUj2(c) => write!(f, "uj2-{c}"),
            Theorem::JordanUj3Natural => f.write_str("uj3-natural"),
            Theorem::LieUt2Graded => f.write_str("lie-ut2-graded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredictedName {
    Named(Named),
    /// A homogeneous subspace given by its basis.
    Homogeneous,
}

impl fmt::Display for PredictedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredictedName::Named(n) => write!(f, "{n}"),
            PredictedName::Homogeneous => f.write_str("homogeneous"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub name: PredictedName,
    pub subspace: Subspace,
    pub theorem: Theorem,
    /// Field-size hypotheses that do not hold; the prediction is still checked by witnesses.
    pub warnings: Vec<String>,
}

fn named(alg: &GradedAlgebra, name: Named, theorem: Theorem, warnings: Vec<String>) -> Result<Prediction> {
    let subspace = alg.named_subspace(&name)?;
    Ok(Prediction { name: PredictedName::Named(name), subspace, theorem, warnings })
}

/// Prediction for the cases whose theorems state that the image is a homogeneous subspace.
fn spanned(f: &MultilinearPoly, alg: &GradedAlgebra, theorem: Theorem, warnings: Vec<String>) -> Result<Prediction> {
    let span = span_of_image(f, alg)?;
    let name = if span.is_zero() {
        PredictedName::Named(Named::Zero)
    } else if span == alg.full() {
        PredictedName::Named(Named::Full)
    } else if let Some(c) = alg.components().iter().find(|c| alg.component_span(&c.degree) == span) {
        PredictedName::Named(Named::Component(c.degree.clone()))
    } else {
        PredictedName::Homogeneous
    };
    Ok(Prediction { name, subspace: span, theorem, warnings })
}

fn field_warning(domain: Domain, need: u64, what: &str) -> Vec<String> {
    if domain.has_at_least(need) {
        Vec::new()
    } else {
        vec![alloc::format!("{what} assumes at least {need} field elements; {domain} is smaller")]
    }
}

fn triangle(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

/// Predicted image of `f` on `alg` from the classification results.
pub fn classify_image(f: &MultilinearPoly, alg: &GradedAlgebra) -> Result<Prediction> {
    if f.kind() != alg.kind() {
        return Err(FreeError::KindMismatch { poly: f.kind(), algebra: alg.kind() }.into());
    }
    if !f.group().is_trivial() && f.group() != alg.group() {
        return Err(AnalysisError::GroupMismatch { poly: f.group().to_string(), algebra: alg.group().to_string() });
    }
    let d = alg.domain();
    let species = alg.species().clone();
    let n = alg.size();
    if matches!(species, Species::M(_)) {
        return Err(AnalysisError::Unsupported(alloc::format!("no image classification for {species}")));
    }
    if let Grading::Custom { .. } = alg.grading() {
        return Err(AnalysisError::Unsupported("custom component tables are outside the classification".into()));
    }
    let trivial = alg.is_trivially_graded();
    match species {
        Species::UT(_) | Species::LT(_) | Species::BlockDiag(_) if trivial => {
            let r = commutator_degree(f)?;
            let size = match &species {
                Species::BlockDiag(bs) => bs.iter().copied().max().unwrap_or(0),
                _ => n,
            };
            named(alg, Named::Jpow(r), Theorem::CommutatorDegree, field_warning(d, triangle(size), "the J^r description"))
        }
        Species::UTLie(_) if trivial => {
            let r = commutator_degree(&f.expand_lie()?)?;
            named(alg, Named::Jpow(r), Theorem::CommutatorDegree, field_warning(d, triangle(n), "the J^r description"))
        }
        Species::UT(_) | Species::LT(_) if matches!(alg.natural_order(), Some(q) if q == 0 || q == n as u64) => {
            let warnings = field_warning(d, n as u64, "the natural grading result");
            if is_graded_identity(f, alg)?.identity {
                named(alg, Named::Zero, Theorem::NaturalGrading, warnings)
            } else {
                let deg = if f.group().is_trivial() { alg.group().identity() } else { f.degree() };
                named(alg, Named::Component(deg), Theorem::NaturalGrading, warnings)
            }
        }
        Species::UT(_) if alg.step_q().is_some() => classify_step(f, alg),
        Species::UT(2) => spanned(f, alg, Theorem::Ut2Graded, Vec::new()),
        Species::UT(3) => {
            let Grading::Elementary { group, degrees } = alg.grading() else {
                return Err(AnalysisError::Unsupported(alloc::format!("{alg}")));
            };
            let case = classify_ut3_grading(group, &degrees[0], &degrees[1]);
            spanned(f, alg, Theorem::Ut3Case(case), field_warning(d, 3, "the UT_3 classification"))
        }
        Species::UJ(2) => {
            let tag = match alg.grading() {
                Grading::Trivial => "trivial",
                Grading::Elementary { .. } => "elementary",
                Grading::Mirror(MirrorCase::IIa) => "mirror-IIa",
                Grading::Mirror(MirrorCase::IIb) => "mirror-IIb",
                Grading::Mirror(MirrorCase::IIc) => "mirror-IIc",
                Grading::Custom { .. } => unreachable!("rejected above"),
            };
            spanned(f, alg, Theorem::JordanUj2(tag), Vec::new())
        }
        Species::UJ(3) if alg.natural_order() == Some(3) => spanned(
            f,
            alg,
            Theorem::JordanUj3Natural,
            vec![alloc::format!("the UJ_3 result assumes an infinite field; {d} is a finite proxy")],
        ),
        Species::UTLie(2) => spanned(f, alg, Theorem::LieUt2Graded, Vec::new()),
        _ => Err(AnalysisError::Unsupported(alloc::format!("no classification result covers {alg}"))),
    }
}

fn classify_step(f: &MultilinearPoly, alg: &GradedAlgebra) -> Result<Prediction> {
    let n = alg.size();
    let q = alg.step_q().expect("caller checked the step grading");
    let warnings = field_warning(alg.domain(), triangle(n), "the step-grading classification");
    let neutral_only = f.group().is_trivial() || f.vars().iter().all(|v| v.degree.is_identity());
    if neutral_only {
        let r = commutator_degree(f)?;
        return named(alg, Named::Jpow(r), Theorem::StepGrading, warnings);
    }
    let f = if f.vars().iter().all(|v| v.degree.is_identity() || v.degree == alg.group().of(1)) {
        f.clone()
    } else {
        lift_to_unit_degrees(f)?.0
    };
    let l = f.vars().iter().filter(|v| !v.degree.is_identity()).count() as u64;
    let dec = zq_decompose(&f, alg)?;
    let name = match dec.r {
        _ if l >= q || dec.is_zero => Named::Zero,
        None => Named::Zero,
        Some(0) => Named::Alcomp(l),
        Some(r) if r <= n - q as usize => Named::Blr(l, r),
        Some(_) => Named::Zero,
    };
    named(alg, name, Theorem::StepGrading, warnings)
}

// ---------------------------------------------------------------------------
// Constructive verification

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Random elements of the target checked besides its basis.
    pub random_targets: usize,
    /// Cap on linear-slice attempts across all targets.
    pub max_attempts: usize,
    pub seed: u64,
    pub tuple_cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { random_targets: 4, max_attempts: 2000, seed: 0, tuple_cap: DEFAULT_TUPLE_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub target: Matrix,
    pub args: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Witnesses for the target basis; random targets were also realized and counted.
    Verified { witnesses: Vec<Witness>, random_checked: usize },
    Inconclusive { attempts: usize, reason: String },
    MismatchBug(String),
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::Verified { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Verified { .. } => "verified",
            Verdict::Inconclusive { .. } => "inconclusive",
            Verdict::MismatchBug(_) => "mismatch-bug",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerifyStats {
    pub tuples: u128,
    pub nonzero_values: usize,
    pub attempts: usize,
    pub targets: usize,
    pub vacuous: bool,
}

/// A linear map `b -> f(fixed..., b, ...)` in one slot.
struct Slice {
    slot: usize,
    fixed: Vec<Matrix>,
    columns: Vec<Vec<Scalar>>,
}

fn random_in(rng: &mut ChaCha8Rng, basis: &[Matrix], n: usize, d: Domain) -> Matrix {
    basis.iter().fold(Matrix::zeros(n, d), |acc, b| acc.add(&b.scale(&random_scalar(rng, d))))
}

/// Check that every element of `target` is a value of `f`, by explicit preimages.
pub fn verify_image(f: &MultilinearPoly, alg: &GradedAlgebra, target: &Subspace, opts: &VerifyOptions) -> Result<(Verdict, VerifyStats)> {
    let (span, es) = span_of_image_with(f, alg, opts.tuple_cap)?;
    let mut stats = VerifyStats { tuples: es.tuples, nonzero_values: es.nonzero, vacuous: es.vacuous, ..VerifyStats::default() };
    if let Some(b) = span.basis().into_iter().find(|b| !target.contains(b)) {
        return Ok((Verdict::MismatchBug(alloc::format!("image contains {b}, outside the target")), stats));
    }
    if let Some(b) = target.basis().into_iter().find(|b| !span.contains(b)) {
        return Ok((Verdict::MismatchBug(alloc::format!("target element {b} is outside the image span")), stats));
    }
    let slots = Slots::of(f, alg)?;
    let n = alg.size();
    let d = alg.domain();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let basis = target.basis();
    let mut targets: Vec<(Matrix, bool)> = basis.iter().map(|b| (b.clone(), true)).collect();
    if !basis.is_empty() {
        for _ in 0..opts.random_targets {
            let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| random_scalar(&mut rng, d)).collect();
            targets.push((target.combination(&coeffs), false));
        }
    }
    let m = f.var_count();
    let probe = Subspace::zero(n, d);
    let mut slices: Vec<Slice> = Vec::new();
    let mut witnesses = Vec::new();
    let mut random_checked = 0;
    for (t, is_basis) in targets {
        if t.is_zero() {
            if !is_basis {
                random_checked += 1;
            }
            continue;
        }
        stats.targets += 1;
        let rhs = probe.coords(&t);
        let mut found = None;
        for s in &slices {
            if let Some(c) = solve(&s.columns, &rhs, d) {
                found = Some((s.slot, s.fixed.clone(), c));
                break;
            }
        }
        while found.is_none() {
            if stats.attempts >= opts.max_attempts {
                return Ok((
                    Verdict::Inconclusive { attempts: stats.attempts, reason: alloc::format!("no preimage found for {t}") },
                    stats,
                ));
            }
            let slot = stats.attempts % m;
            stats.attempts += 1;
            let fixed: Vec<Matrix> = (0..m)
                .map(|j| if j == slot { Matrix::zeros(n, d) } else { random_in(&mut rng, &slots.bases[j], n, d) })
                .collect();
            let columns: Vec<Vec<Scalar>> = slots.bases[slot]
                .iter()
                .map(|b| {
                    let mut args: Vec<&Matrix> = fixed.iter().collect();
                    args[slot] = b;
                    probe.coords(&f.eval_refs(&args))
                })
                .collect();
            if let Some(c) = solve(&columns, &rhs, d) {
                found = Some((slot, fixed.clone(), c));
            }
            slices.push(Slice { slot, fixed, columns });
        }
        let (slot, mut args, c) = found.expect("loop exits with a solution");
        args[slot] = slots.bases[slot].iter().zip(&c).fold(Matrix::zeros(n, d), |acc, (b, x)| acc.add(&b.scale(x)));
        let value = f.evaluate(&args, alg)?;
        if value != t {
            return Ok((Verdict::MismatchBug(alloc::format!("witness for {t} re-evaluates to {value}")), stats));
        }
        if is_basis {
            witnesses.push(Witness { target: t, args });
        } else {
            random_checked += 1;
        }
    }
    Ok((Verdict::Verified { witnesses, random_checked }, stats))
}

/// Prediction, exact span and verification of one polynomial on one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageReport {
    pub prediction: Prediction,
    pub span: Subspace,
    pub verdict: Verdict,
    pub stats: VerifyStats,
}

pub fn analyze(f: &MultilinearPoly, alg: &GradedAlgebra, opts: &VerifyOptions) -> Result<ImageReport> {
    let prediction = classify_image(f, alg)?;
    let (span, es) = span_of_image_with(f, alg, opts.tuple_cap)?;
    if span != prediction.subspace {
        let verdict = Verdict::MismatchBug(alloc::format!(
            "predicted {} of dimension {} but the image spans dimension {}",
            prediction.name,
            prediction.subspace.dim(),
            span.dim()
        ));
        let stats = VerifyStats { tuples: es.tuples, nonzero_values: es.nonzero, vacuous: es.vacuous, ..VerifyStats::default() };
        return Ok(ImageReport { prediction, span, verdict, stats });
    }
    let (verdict, stats) = verify_image(f, alg, &prediction.subspace, opts)?;
    Ok(ImageReport { prediction, span, verdict, stats })
}

// ---------------------------------------------------------------------------
// Traceless matrices as values on the full matrix algebra

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracelessCondition {
    pub holds: bool,
    /// `c_S` for every subset `S` of the variables other than `z`.
    pub table: BTreeMap<BTreeSet<u32>, Scalar>,
}

fn as_assoc(f: &MultilinearPoly) -> Result<MultilinearPoly> {
    match f.kind() {
        ProductKind::Assoc => Ok(f.clone()),
        ProductKind::Lie => Ok(f.expand_lie()?),
        ProductKind::Jordan => Err(FreeError::KindMismatch { poly: f.kind(), algebra: ProductKind::Assoc }.into()),
    }
}

/// Whether `f` with `z` odd and the rest neutral escapes the identities of `UT_2`
/// under the natural integer grading. Computed from the `c_S` table and by a graded
/// identity test; the two must agree.
pub fn traceless_condition(f: &MultilinearPoly, z: u32) -> Result<TracelessCondition> {
    let f = as_assoc(f)?;
    let table = f.z_split_sums(z)?;
    let by_table = table.values().any(|c| !c.is_zero());
    let g = Group::integers();
    let degrees: BTreeMap<u32, GroupElement> =
        f.vars().iter().map(|v| (v.index, if v.index == z { g.of(1) } else { g.identity() })).collect();
    let graded = f.with_degrees(g, &degrees)?;
    let ut2 = GradedAlgebra::new(Species::UT(2), Grading::natural_integers(2), f.domain())?;
    let by_identity = !is_graded_identity(&graded, &ut2)?.identity;
    if by_table != by_identity {
        return Err(AnalysisError::MismatchBug(alloc::format!(
            "c_S table says {by_table}, graded identity test says {by_identity} for {f}"
        )));
    }
    Ok(TracelessCondition { holds: by_table, table })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracelessSample {
    pub target: Matrix,
    pub conjugator: Matrix,
    /// Arguments in variable order with `f(args) = target`.
    pub args: Vec<Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TracelessVerdict {
    Verified { diagonal: Vec<Matrix>, samples: Vec<TracelessSample> },
    Inconclusive(String),
}

fn random_traceless(rng: &mut ChaCha8Rng, n: usize, d: Domain) -> Matrix {
    loop {
        let mut a = Matrix::from_rows(d, (0..n * n).map(|_| random_scalar(rng, d)).collect());
        let rest = (0..n - 1).fold(Scalar::zero(d), |acc, k| &acc + a.get(k, k));
        a.set(n - 1, n - 1, -rest);
        if !a.is_scalar() {
            return a;
        }
    }
}

/// Realize random traceless `n x n` matrices as values of `f` with `z` the designated variable.
pub fn verify_traceless(f: &MultilinearPoly, z: u32, n: usize, domain: Domain, samples: usize, seed: u64) -> Result<TracelessVerdict> {
    let f = as_assoc(f)?.forget_grading();
    if f.domain() != domain {
        return Err(AnalysisError::HypothesisViolation(alloc::format!("{f} has coefficients in {} not {domain}", f.domain())));
    }
    let cond = traceless_condition(&f, z)?;
    if !cond.holds {
        return Err(AnalysisError::HypothesisViolation(alloc::format!(
            "{f} with z = x{z} vanishes on UT_2 with z odd; every c_S is zero"
        )));
    }
    if n < 2 {
        return Err(AnalysisError::HypothesisViolation("matrix size must be at least 2".into()));
    }
    if let Domain::Prime(p) = domain {
        let need = ((n - 1) * n + 1) as u64;
        if p < need {
            return Err(AnalysisError::HypothesisViolation(alloc::format!("GF({p}) has fewer than {need} elements")));
        }
        if n as u64 % p == 0 {
            return Err(AnalysisError::HypothesisViolation(alloc::format!("{p} divides {n}")));
        }
    }
    let zpos = f.position_of(z).ok_or_else(|| FreeError::UnknownVariable(alloc::format!("x{z}")))?;
    let others: Vec<u32> = f.vars().iter().map(|v| v.index).filter(|&i| i != z).collect();
    // generic diagonal for the t-th other variable: w_{t,k} has index t * n + k
    let w = |t: usize, k: usize| MultiPoly::var(domain, (t * n + k) as u32);
    let generic: Vec<Matrix<MultiPoly>> =
        (0..others.len()).map(|t| Matrix::diagonal(domain, (0..n).map(|k| w(t, k)).collect())).collect();
    let unit_poly = |i: usize, j: usize| Matrix::<MultiPoly>::unit(n, domain, i, j);
    let eval_poly = |zm: &Matrix<MultiPoly>| {
        let mut args: Vec<&Matrix<MultiPoly>> = generic.iter().collect();
        args.insert(zpos, zm);
        f.eval_refs(&args)
    };
    let expected = |row: usize, col: usize| {
        cond.table.iter().fold(MultiPoly::zero(domain), |acc, (s, c)| {
            let mono = others.iter().enumerate().fold(MultiPoly::constant(c.clone()), |m, (t, v)| {
                m.mul(&if s.contains(v) { w(t, row) } else { w(t, col) })
            });
            acc.add(&mono)
        })
    };
    let mut polys = Vec::new();
    for i in 1..n {
        for k in 0..n - i {
            for (r, c) in [(k, k + i), (k + i, k)] {
                let value = eval_poly(&unit_poly(r, c));
                let entry = value.get(r, c).clone();
                // rows of the preceding variables meet the unit's row, the rest its column
                if entry != expected(r, c) {
                    return Err(AnalysisError::MismatchBug(alloc::format!("entry ({},{}) disagrees with the c_S formula", r + 1, c + 1)));
                }
                polys.push(entry);
            }
        }
    }
    let point = match nonzero_point(&polys, domain, seed) {
        Ok(pt) => pt,
        Err(PolyError::BudgetExhausted) => {
            return Ok(TracelessVerdict::Inconclusive("no diagonal point makes every off-diagonal coefficient nonzero".into()))
        }
        Err(PolyError::NotFound) => {
            return Err(AnalysisError::MismatchBug("the off-diagonal coefficients have no common nonzero point".into()))
        }
        Err(e) => return Err(e.into()),
    };
    let value_of = |v: u32| point.get(&v).cloned().unwrap_or_else(|| Scalar::zero(domain));
    let diagonal: Vec<Matrix> =
        (0..others.len()).map(|t| Matrix::diagonal(domain, (0..n).map(|k| value_of((t * n + k) as u32)).collect())).collect();
    let eval_at = |zm: &Matrix, ds: &[Matrix]| {
        let mut args: Vec<&Matrix> = ds.iter().collect();
        args.insert(zpos, zm);
        f.eval_refs(&args)
    };
    let probe = Subspace::zero(n, domain);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let a = random_traceless(&mut rng, n, domain);
        let p = zero_diagonal_conjugate(&a)?;
        let pinv = p.inverse().map_err(|e| AnalysisError::MismatchBug(e.to_string()))?;
        let conj = p.mul(&a).mul(&pinv);
        let mut zmat = Matrix::zeros(n, domain);
        for i in 1..n as i64 {
            for sign in [1i64, -1] {
                let units: Vec<(usize, usize)> = (0..n)
                    .filter_map(|r| {
                        let c = r as i64 + sign * i;
                        (0..n as i64).contains(&c).then_some((r, c as usize))
                    })
                    .collect();
                let mut part = Matrix::zeros(n, domain);
                for &(r, c) in &units {
                    part.set(r, c, conj.get(r, c).clone());
                }
                if part.is_zero() {
                    continue;
                }
                let columns: Vec<Vec<Scalar>> =
                    units.iter().map(|&(r, c)| probe.coords(&eval_at(&Matrix::unit(n, domain, r, c), &diagonal))).collect();
                let coeffs = solve(&columns, &probe.coords(&part), domain).ok_or_else(|| {
                    AnalysisError::MismatchBug(alloc::format!("component of degree {} is not reached", sign * i))
                })?;
                for ((r, c), x) in units.into_iter().zip(coeffs) {
                    zmat.set(r, c, x);
                }
            }
        }
        let mut args: Vec<Matrix> = diagonal.iter().map(|dm| pinv.mul(dm).mul(&p)).collect();
        args.insert(zpos, pinv.mul(&zmat).mul(&p));
        let refs: Vec<&Matrix> = args.iter().collect();
        let value = f.eval_refs(&refs);
        if value != a {
            return Err(AnalysisError::MismatchBug(alloc::format!("preimage of {a} evaluates to {value}")));
        }
        out.push(TracelessSample { target: a, conjugator: p, args });
    }
    Ok(TracelessVerdict::Verified { diagonal, samples: out })
}

/// Ungraded degree assignment used to view `f` as graded over `group` with given variable degrees.
pub fn assign_degrees(f: &MultilinearPoly, group: &Group, degrees: &[GroupElement]) -> Result<MultilinearPoly> {
    let vars: BTreeMap<u32, GroupElement> = f.vars().iter().map(|v| v.index).zip(degrees.iter().cloned()).collect();
    if vars.len() != f.var_count() {
        return Err(FreeError::Arity { want: f.var_count(), got: degrees.len() }.into());
    }
    Ok(f.with_degrees(group.clone(), &vars)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GF7: Domain = Domain::Prime(7);
    const GF11: Domain = Domain::Prime(11);

    fn e(n: usize, d: Domain, i: usize, j: usize) -> Matrix {
        Matrix::unit(n, d, i - 1, j - 1)
    }

    fn assoc(text: &str, d: Domain) -> MultilinearPoly {
        MultilinearPoly::parse(text, ProductKind::Assoc, d, Group::trivial(), &[]).unwrap()
    }

    fn graded(text: &str, d: Domain, group: &Group, degs: &[(u32, i64)]) -> MultilinearPoly {
        let degs: Vec<(u32, GroupElement)> = degs.iter().map(|&(v, k)| (v, group.of(k))).collect();
        MultilinearPoly::parse(text, ProductKind::Assoc, d, group.clone(), &degs).unwrap()
    }

    fn step(n: usize, q: u64, d: Domain) -> GradedAlgebra {
        GradedAlgebra::new(Species::UT(n), Grading::step(n, q), d).unwrap()
    }

    #[test]
    fn identity_examples() {
        let z3 = Group::cyclic(3);
        let f = graded("[y1,y2]*z3", GF11, &z3, &[(1, 0), (2, 0), (3, 1)]);
        assert!(is_graded_identity(&f, &step(4, 3, GF11)).unwrap().identity);
        let ut2 = GradedAlgebra::trivial(Species::UT(2), GF7).unwrap();
        let check = is_graded_identity(&assoc("[x1,x2]", GF7), &ut2).unwrap();
        assert!(!check.identity);
        let (args, value) = check.witness.unwrap();
        assert_eq!(args, vec![e(2, GF7, 1, 1), e(2, GF7, 1, 2)]);
        assert_eq!(value, e(2, GF7, 1, 2));
        let z2 = Group::cyclic(2);
        let g = graded("[y1,y2]*[y3,y4]*[y5,y6]", GF11, &z2, &[(1, 0), (2, 0), (3, 0), (4, 0), (5, 0), (6, 0)]);
        assert!(is_graded_identity(&g, &step(4, 2, GF11)).unwrap().identity);
    }

    #[test]
    fn vacuous_degrees() {
        let z5 = Group::cyclic(5);
        let f = graded("z1", GF7, &z5, &[(1, 4)]);
        let alg = GradedAlgebra::new(Species::UT(3), Grading::natural_cyclic(3, 5), GF7).unwrap();
        let c = is_graded_identity(&f, &alg).unwrap();
        assert!(c.identity && c.vacuous);
    }

    #[test]
    fn commutator_degree_examples() {
        assert_eq!(commutator_degree(&assoc("x1", Domain::Prime(5))).unwrap(), 0);
        assert_eq!(commutator_degree(&assoc("[x1,x2]", Domain::Prime(5))).unwrap(), 1);
        assert_eq!(commutator_degree(&assoc("[x1,x2]*[x3,x4]", Domain::Prime(5))).unwrap(), 2);
        assert_eq!(commutator_degree(&assoc("x1*x2 - x2*x1 + 0*x1*x2", GF7)).unwrap(), 1);
        let zero = MultilinearPoly::assoc_words(GF7, 2, &[(1, &[1, 2]), (-1, &[1, 2])]).unwrap();
        assert_eq!(commutator_degree(&zero), Err(AnalysisError::ZeroPolynomial));
    }

    #[test]
    fn central_examples() {
        let z2 = Group::cyclic(2);
        let alg = step(2, 2, GF7);
        let x = graded("y1", GF7, &z2, &[(1, 0)]);
        assert!(matches!(central_check(&x, &alg).unwrap(), CentralVerdict::Proper { .. }));
        let comm = graded("[y1,y2]", GF7, &z2, &[(1, 0), (2, 0)]);
        assert_eq!(central_check(&comm, &alg).unwrap(), CentralVerdict::Identity);
        let ut2 = GradedAlgebra::trivial(Species::UT(2), GF7).unwrap();
        match central_check(&assoc("[x1,x2]", GF7), &ut2).unwrap() {
            CentralVerdict::Proper { value, .. } => assert_eq!(value, e(2, GF7, 1, 2)),
            other => panic!("{other:?}"),
        }
        // a central value exists on the commutative UT_1
        let ut1 = GradedAlgebra::trivial(Species::UT(1), GF7).unwrap();
        assert_eq!(central_check(&assoc("x1", GF7), &ut1).unwrap(), CentralVerdict::Central);
    }

    #[test]
    fn span_examples() {
        let ut2 = GradedAlgebra::trivial(Species::UT(2), GF7).unwrap();
        assert_eq!(span_of_image(&assoc("[x1,x2]", GF7), &ut2).unwrap(), Subspace::span_of(2, GF7, &[e(2, GF7, 1, 2)]));
        let uj2 = GradedAlgebra::trivial(Species::UJ(2), GF7).unwrap();
        let j = MultilinearPoly::parse("x1 x2", ProductKind::Jordan, GF7, Group::trivial(), &[]).unwrap();
        assert_eq!(span_of_image(&j, &uj2).unwrap().dim(), 3);
        let mirror = GradedAlgebra::new(Species::UJ(2), Grading::Mirror(MirrorCase::IIa), GF7).unwrap();
        // ungraded variables are neutral, and the neutral component is the scalars
        assert_eq!(span_of_image(&j, &mirror).unwrap().dim(), 1);
    }

    #[test]
    fn classify_examples() {
        let ut3 = GradedAlgebra::trivial(Species::UT(3), GF7).unwrap();
        let p = classify_image(&assoc("[x1,x2]", GF7), &ut3).unwrap();
        assert_eq!(p.name, PredictedName::Named(Named::Jpow(1)));
        let z2 = Group::cyclic(2);
        let alg = step(4, 2, GF11);
        let f = graded("z1*y2*y3 - z1*y3*y2", GF11, &z2, &[(1, 1), (2, 0), (3, 0)]);
        let p = classify_image(&f, &alg).unwrap();
        assert_eq!(p.name, PredictedName::Named(Named::Blr(1, 1)));
        assert_eq!(p.subspace, Subspace::span_of(4, GF11, &[e(4, GF11, 1, 3), e(4, GF11, 1, 4)]));
        assert_eq!(p.subspace, span_of_image(&f, &alg).unwrap());
        let z3 = Group::cyclic(3);
        let nat = GradedAlgebra::new(Species::UT(3), Grading::natural_cyclic(3, 3), GF7).unwrap();
        let g = graded("y1*z2", GF7, &z3, &[(1, 0), (2, 1)]);
        let p = classify_image(&g, &nat).unwrap();
        assert_eq!(p.name, PredictedName::Named(Named::Component(z3.of(1))));
        assert_eq!(p.subspace, Subspace::span_of(3, GF7, &[e(3, GF7, 1, 2), e(3, GF7, 2, 3)]));
        let m = GradedAlgebra::trivial(Species::M(2), GF7).unwrap();
        assert!(matches!(classify_image(&assoc("x1", GF7), &m), Err(AnalysisError::Unsupported(_))));
    }

    #[test]
    fn verify_examples() {
        let ut2 = GradedAlgebra::trivial(Species::UT(2), GF7).unwrap();
        let target = Subspace::span_of(2, GF7, &[e(2, GF7, 1, 2)]);
        let (v, _) = verify_image(&assoc("[x1,x2]", GF7), &ut2, &target, &VerifyOptions::default()).unwrap();
        let Verdict::Verified { witnesses, .. } = v else { panic!("{v:?}") };
        assert_eq!(witnesses.len(), 1);
        let z2 = Group::cyclic(2);
        let f = graded("z1*[y2,y3]", GF11, &z2, &[(1, 1), (2, 0), (3, 0)]);
        let alg = step(4, 2, GF11);
        let blr = alg.named_subspace(&Named::Blr(1, 1)).unwrap();
        let (v, _) = verify_image(&f, &alg, &blr, &VerifyOptions::default()).unwrap();
        let Verdict::Verified { witnesses, .. } = v else { panic!("{v:?}") };
        let targets: Vec<Matrix> = witnesses.iter().map(|w| w.target.clone()).collect();
        assert_eq!(Subspace::span_of(4, GF11, &targets), blr);
        let id = graded("[y1,y2]*z3", GF11, &Group::cyclic(3), &[(1, 0), (2, 0), (3, 1)]);
        let (v, _) = verify_image(&id, &step(4, 3, GF11), &Subspace::zero(4, GF11), &VerifyOptions::default()).unwrap();
        assert!(v.is_verified());
        // a target larger than the image is refuted exactly
        let (v, _) = verify_image(&assoc("[x1,x2]", GF7), &ut2, &ut2.full(), &VerifyOptions::default()).unwrap();
        assert!(matches!(v, Verdict::MismatchBug(_)));
    }

    #[test]
    fn traceless_condition_examples() {
        let set = |xs: &[u32]| xs.iter().copied().collect::<BTreeSet<u32>>();
        let c = traceless_condition(&assoc("x1*x2", GF7), 2).unwrap();
        assert!(c.holds && c.table[&set(&[1])].is_one());
        let c = traceless_condition(&assoc("[x1,x2]", GF7), 2).unwrap();
        assert!(c.holds);
        assert_eq!(c.table[&set(&[])], Scalar::from_i64(GF7, -1));
        assert!(!traceless_condition(&assoc("[[x1,x2],x3]", GF7), 3).unwrap().holds);
    }

    #[test]
    fn traceless_pipeline() {
        let v = verify_traceless(&assoc("[x1,x2]", GF7), 2, 2, GF7, 5, 1).unwrap();
        let TracelessVerdict::Verified { samples, .. } = v else { panic!() };
        for s in &samples {
            let [x, y] = &s.args[..] else { panic!() };
            assert_eq!(x.mul(y).sub(&y.mul(x)), s.target);
        }
        assert!(matches!(verify_traceless(&assoc("x1*x2", GF7), 2, 3, GF7, 20, 3).unwrap(), TracelessVerdict::Verified { .. }));
        assert!(matches!(
            verify_traceless(&assoc("[[x1,x2],x3]", GF7), 3, 3, GF7, 1, 0),
            Err(AnalysisError::HypothesisViolation(_))
        ));
        assert!(matches!(
            verify_traceless(&assoc("x1*x2", Domain::Prime(3)), 2, 3, Domain::Prime(3), 1, 0),
            Err(AnalysisError::HypothesisViolation(_))
        ));
    }

    #[test]
    fn ut3_cases() {
        let g = Group::trivial();
        assert_eq!(classify_ut3_grading(&g, &g.identity(), &g.identity()), Ut3Case::Ia);
        let z2 = Group::cyclic(2);
        assert_eq!(classify_ut3_grading(&z2, &z2.of(1), &z2.of(1)), Ut3Case::Id);
        assert_eq!(classify_ut3_grading(&z2, &z2.of(0), &z2.of(1)), Ut3Case::Ib);
        assert_eq!(classify_ut3_grading(&z2, &z2.of(1), &z2.of(0)), Ut3Case::Ic);
        let z3 = Group::cyclic(3);
        assert_eq!(classify_ut3_grading(&z3, &z3.of(1), &z3.of(1)), Ut3Case::IIb);
        assert_eq!(classify_ut3_grading(&z3, &z3.of(1), &z3.of(2)), Ut3Case::Ie);
        let zz = Group::product(&[0, 0]);
        let a = zz.elem(&[1, 0]).unwrap();
        let b = zz.elem(&[0, 1]).unwrap();
        assert_eq!(classify_ut3_grading(&zz, &a, &b), Ut3Case::IIa);
    }
}
