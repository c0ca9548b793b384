//! Subcommands. Each job resolves its settings, runs, and returns a report with an exit code.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use graded_image_core::algebra::{GradedAlgebra, Species};
use graded_image_core::analysis::{
    analyze, central_check, classify_image, commutator_degree, is_graded_identity_with, span_of_image_with,
    traceless_condition, verify_image, verify_traceless, CentralVerdict, TracelessVerdict, Verdict,
    VerifyOptions,
};
use graded_image_core::matrix::{Matrix, ProductKind};
use graded_image_core::multilinear::MultilinearPoly;
use graded_image_core::scalar::Domain;

use crate::acceptance;
use crate::config::{FileConfig, Overrides, Settings};
use crate::corpus::{random_corpus, CorpusSpec};
use crate::exit;
use crate::formats::{parse_algebra, parse_polys, parse_target, read_source};
use crate::report::*;
use crate::LabError;

const DEFAULT_RANDOM_TARGETS: usize = 4;
const DEFAULT_SCAN: usize = 1000;
const DEFAULT_TRACELESS_SAMPLES: usize = 100;
const DEFAULT_CORPUS: usize = 100;
const SCAN_MAX_VARS: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "graded-image-lab", version, about = "Images of multilinear polynomials on graded triangular matrix algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub job: JobArgs,
}

#[derive(Debug, Clone, Default, Args)]
pub struct JobArgs {
    /// Algebra text, e.g. `UT(4) over GF(11) graded Z2 step`, or a file holding it.
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    /// Polynomial text or a polynomial file (one per line).
    #[arg(long, global = true)]
    pub poly: Option<String>,
    /// Scalar field, `GF(p)` or `QQ`; the algebra text may name its own.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Count of random targets, scanned polynomials, traceless samples or corpus lines.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Attempt cap for preimage searches.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Exit 0 if the polynomial is a graded identity, 1 with a witness otherwise.
    CheckIdentity,
    /// Commutator degree of associative polynomials.
    Degree,
    /// Predicted image, exact span and constructive verification.
    Classify,
    /// Exact span of the image.
    Span,
    /// Constructive check that every element of a target is a value.
    Verify {
        /// Target subspace (`J^2`, `A_1`, `B_1,1`, `component(g)`, `span e(1,2), ...`);
        /// defaults to the predicted image.
        #[arg(long)]
        target: Option<String>,
    },
    /// Look for graded central polynomials among random or given polynomials.
    CentralScan,
    /// Realize traceless matrices as values on the full matrix algebra.
    Traceless {
        /// Matrix size.
        #[arg(long, default_value_t = 3)]
        size: usize,
        /// Index of the designated variable; defaults to the last one.
        #[arg(long)]
        z: Option<u32>,
    },
    /// Emit seeded random polynomials, one per line.
    Corpus {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Run only these criteria.
        #[arg(long)]
        criterion: Vec<usize>,
        #[arg(long, hide = true)]
        inject_jordan_bug: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckIdentity => "check-identity",
            Command::Degree => "degree",
            Command::Classify => "classify",
            Command::Span => "span",
            Command::Verify { .. } => "verify",
            Command::CentralScan => "central-scan",
            Command::Traceless { .. } => "traceless",
            Command::Corpus { .. } => "corpus",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// A finished job.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: u8,
}

struct Job<'a> {
    args: &'a JobArgs,
    settings: Settings,
    command: &'static str,
}

impl Job<'_> {
    fn algebra(&self) -> Result<GradedAlgebra, LabError> {
        let text = self.args.algebra.as_deref().ok_or_else(|| LabError::Usage("--algebra is required".into()))?;
        parse_algebra(&read_source(text)?, self.settings.field)
    }

    fn polys(&self, kind: ProductKind, domain: Domain) -> Result<Vec<MultilinearPoly>, LabError> {
        let text = self.args.poly.as_deref().ok_or_else(|| LabError::Usage("--poly is required".into()))?;
        parse_polys(&read_source(text)?, kind, domain)
    }

    fn header(&self, field: Domain, alg: Option<&GradedAlgebra>) -> Header {
        Header::new(self.command, self.settings.seed, field.to_string(), alg.map(|a| a.to_string()))
    }

    fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            random_targets: self.settings.samples.unwrap_or(DEFAULT_RANDOM_TARGETS),
            max_attempts: self.settings.budget,
            seed: self.settings.seed,
            tuple_cap: self.settings.tuple_cap,
        }
    }

    fn render(&self, r: &impl Render, code: u8) -> Output {
        Output { text: r.render(self.args.pretty), code }
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Verified { .. } => exit::OK,
        Verdict::Inconclusive { .. } => exit::INCONCLUSIVE,
        Verdict::MismatchBug(_) => exit::MISMATCH,
    }
}

/// The most serious of several exit codes.
fn worst(codes: impl IntoIterator<Item = u8>) -> u8 {
    let rank = |c: u8| match c {
        exit::MISMATCH => 5,
        exit::HYPOTHESIS => 4,
        exit::UNSUPPORTED => 3,
        exit::INCONCLUSIVE => 2,
        exit::OK => 0,
        _ => 1,
    };
    codes.into_iter().max_by_key(|&c| rank(c)).unwrap_or(exit::OK)
}

/// Run a parsed command line. Errors carry their own exit codes.
pub fn execute(cli: &Cli) -> Result<Output, LabError> {
    let flags = Overrides {
        field: cli.job.field.clone(),
        seed: cli.job.seed,
        budget: cli.job.budget,
        samples: cli.job.samples,
    };
    let settings = Settings::resolve(&flags, &FileConfig::from_env()?)?;
    let job = Job { args: &cli.job, settings, command: cli.command.name() };
    let result = match &cli.command {
        Command::CheckIdentity => check_identity(&job),
        Command::Degree => degree(&job),
        Command::Classify => classify(&job),
        Command::Span => span(&job),
        Command::Verify { target } => verify(&job, target.as_deref()),
        Command::CentralScan => central_scan(&job),
        Command::Traceless { size, z } => traceless(&job, *size, *z),
        Command::Corpus { max_degree } => corpus(&job, *max_degree),
        Command::Selftest { criterion, inject_jordan_bug } => selftest(&job, criterion, *inject_jordan_bug),
    };
    // these commands promise only 0, 1 and 2
    match (&cli.command, result) {
        (Command::CheckIdentity | Command::Degree | Command::Span | Command::Corpus { .. }, Err(e)) => {
            Err(LabError::Usage(e.to_string()))
        }
        (_, r) => r,
    }
}

/// Run and deliver: the report goes to `--out` or standard output, errors to standard error.
pub fn run(cli: &Cli) -> u8 {
    match execute(cli) {
        Ok(out) => {
            if let Some(path) = &cli.job.out {
                if let Err(source) = std::fs::write(path, &out.text) {
                    let e = LabError::Io { path: path.display().to_string(), source };
                    eprintln!("error: {e}");
                    return e.exit_code();
                }
            } else {
                print!("{}", out.text);
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn check_identity(job: &Job) -> Result<Output, LabError> {
    let alg = job.algebra()?;
    let mut results = Vec::new();
    for f in job.polys(alg.kind(), alg.domain())? {
        let c = is_graded_identity_with(&f, &alg, job.settings.tuple_cap)?;
        results.push(IdentityEntry::new(f.to_line(), &c));
    }
    let code = if results.iter().all(|e| e.identity) { exit::OK } else { exit::NEGATIVE };
    Ok(job.render(&IdentityReport { header: job.header(alg.domain(), Some(&alg)), results }, code))
}

fn degree(job: &Job) -> Result<Output, LabError> {
    let d = job.settings.field;
    let mut results = Vec::new();
    for f in job.polys(ProductKind::Assoc, d)? {
        let r = commutator_degree(&f)?;
        results.push(DegreeEntry { poly: f.to_line(), commutator_degree: r, coefficient_sum: f.coefficient_sum().to_string() });
    }
    Ok(job.render(&DegreeReport { header: job.header(d, None), results }, exit::OK))
}

fn classify(job: &Job) -> Result<Output, LabError> {
    let alg = job.algebra()?;
    let opts = job.verify_options();
    let mut results = Vec::new();
    let mut codes = Vec::new();
    for f in job.polys(alg.kind(), alg.domain())? {
        let r = analyze(&f, &alg, &opts)?;
        codes.push(verdict_code(&r.verdict));
        results.push(ClassifyEntry::new(f.to_line(), &r));
    }
    Ok(job.render(&ClassifyReport { header: job.header(alg.domain(), Some(&alg)), results }, worst(codes)))
}

fn span(job: &Job) -> Result<Output, LabError> {
    let alg = job.algebra()?;
    let mut results = Vec::new();
    for f in job.polys(alg.kind(), alg.domain())? {
        let (s, st) = span_of_image_with(&f, &alg, job.settings.tuple_cap)?;
        results.push(SpanEntry::new(f.to_line(), &s, alg.is_homogeneous_subspace(&s), st.tuples, st.nonzero, st.vacuous));
    }
    Ok(job.render(&SpanReport { header: job.header(alg.domain(), Some(&alg)), results }, exit::OK))
}

fn verify(job: &Job, target: Option<&str>) -> Result<Output, LabError> {
    let alg = job.algebra()?;
    let fixed = target.map(|t| parse_target(t, &alg)).transpose()?;
    let opts = job.verify_options();
    let mut results = Vec::new();
    let mut codes = Vec::new();
    for f in job.polys(alg.kind(), alg.domain())? {
        let (name, space) = match &fixed {
            Some(t) => t.clone(),
            None => {
                let p = classify_image(&f, &alg)?;
                (p.name.to_string(), p.subspace)
            }
        };
        let (v, stats) = verify_image(&f, &alg, &space, &opts)?;
        codes.push(verdict_code(&v));
        results.push(VerifyEntry { poly: f.to_line(), target: name, target_dim: space.dim(), verdict: (&v).into(), stats: (&stats).into() });
    }
    Ok(job.render(&VerifyReport { header: job.header(alg.domain(), Some(&alg)), results }, worst(codes)))
}

fn central_scan(job: &Job) -> Result<Output, LabError> {
    let alg = job.algebra()?;
    let count = job.settings.samples.unwrap_or(DEFAULT_SCAN);
    if count == 0 {
        return Err(LabError::Usage("central-scan needs at least one polynomial (--samples >= 1)".into()));
    }
    let polys = match &job.args.poly {
        Some(_) => job.polys(alg.kind(), alg.domain())?,
        None => random_corpus(job.settings.seed, count, &alg, &CorpusSpec::for_algebra(&alg, SCAN_MAX_VARS)),
    };
    let mut counts = CentralCounts::default();
    let mut results = Vec::new();
    for f in &polys {
        let v = central_check(f, &alg)?;
        match v {
            CentralVerdict::Identity => counts.identity += 1,
            CentralVerdict::Proper { .. } => counts.proper += 1,
            CentralVerdict::Central => counts.central += 1,
            CentralVerdict::MismatchBug(_) => counts.mismatch_bug += 1,
        }
        results.push(CentralEntry::new(f.to_line(), &v));
    }
    let code = if counts.central + counts.mismatch_bug > 0 { exit::MISMATCH } else { exit::OK };
    let r = CentralReport { header: job.header(alg.domain(), Some(&alg)), polynomials: polys.len(), counts, results };
    Ok(job.render(&r, code))
}

fn traceless(job: &Job, size: usize, z: Option<u32>) -> Result<Output, LabError> {
    let d = job.settings.field;
    let polys = job.polys(ProductKind::Assoc, d)?;
    let [f] = polys.as_slice() else {
        return Err(LabError::Usage("traceless takes exactly one polynomial".into()));
    };
    let z = match z {
        Some(z) => z,
        None => f.vars().last().map(|v| v.index).ok_or_else(|| LabError::Usage("polynomial has no variables".into()))?,
    };
    let header = job.header(d, None);
    let cond = traceless_condition(f, z)?;
    let split_sums = cond
        .table
        .iter()
        .map(|(s, c)| SplitSum { left: s.iter().map(|v| f.var_name(*v)).collect(), sum: c.to_string() })
        .collect();
    let samples = job.settings.samples.unwrap_or(DEFAULT_TRACELESS_SAMPLES);
    let mut r = TracelessReport {
        header,
        poly: f.to_line(),
        z: f.var_name(z),
        size,
        split_sums,
        status: "verified",
        reason: None,
        diagonal: Vec::new(),
        samples: Vec::new(),
    };
    let code = match verify_traceless(f, z, size, d, samples, job.settings.seed)? {
        TracelessVerdict::Verified { diagonal, samples } => {
            r.diagonal = diagonal.iter().map(Matrix::to_entry_syntax).collect();
            r.samples = samples
                .iter()
                .map(|s| TracelessSampleJson {
                    target: s.target.to_entry_syntax(),
                    conjugator: s.conjugator.to_entry_syntax(),
                    args: s.args.iter().map(Matrix::to_entry_syntax).collect(),
                })
                .collect();
            exit::OK
        }
        TracelessVerdict::Inconclusive(why) => {
            r.status = "inconclusive";
            r.reason = Some(why);
            exit::INCONCLUSIVE
        }
    };
    Ok(job.render(&r, code))
}

fn corpus(job: &Job, max_degree: usize) -> Result<Output, LabError> {
    if max_degree == 0 {
        return Err(LabError::Usage("--max-degree must be at least 1".into()));
    }
    let alg = match &job.args.algebra {
        Some(_) => job.algebra()?,
        None => GradedAlgebra::trivial(Species::UT(2), job.settings.field).map_err(|e| LabError::Usage(e.to_string()))?,
    };
    let count = job.settings.samples.unwrap_or(DEFAULT_CORPUS);
    let polys = random_corpus(job.settings.seed, count, &alg, &CorpusSpec::for_algebra(&alg, max_degree));
    let mut text = format!("# graded-image-lab corpus | seed {} | {alg}\n", job.settings.seed);
    for f in polys {
        text.push_str(&f.to_line());
        text.push('\n');
    }
    Ok(Output { text, code: exit::OK })
}

fn selftest(job: &Job, only: &[usize], inject_jordan_bug: bool) -> Result<Output, LabError> {
    let ids: Vec<usize> = if only.is_empty() { (1..=acceptance::CRITERIA.len()).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > acceptance::CRITERIA.len()) {
        return Err(LabError::Usage(format!("no criterion {bad}")));
    }
    let opts = acceptance::Options { seed: job.settings.seed, inject_jordan_bug };
    let criteria: Vec<CriterionJson> = ids
        .iter()
        .map(|&id| {
            let o = acceptance::run(id, &opts);
            CriterionJson {
                id,
                name: o.name,
                passed: o.passed(),
                checked: o.checked,
                failed: o.failures.len(),
                first_failure: o.failures.first().cloned(),
            }
        })
        .collect();
    let passed = criteria.iter().all(|c| c.passed);
    let r = SelftestReport { header: job.header(job.settings.field, None), passed, criteria };
    Ok(job.render(&r, if passed { exit::OK } else { exit::NEGATIVE }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_code_wins() {
        assert_eq!(worst([exit::OK, exit::INCONCLUSIVE, exit::OK]), exit::INCONCLUSIVE);
        assert_eq!(worst([exit::INCONCLUSIVE, exit::MISMATCH]), exit::MISMATCH);
        assert_eq!(worst([]), exit::OK);
    }

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from(["graded-image-lab", "traceless", "--poly", "[x1,x2]", "--field", "GF(7)", "--size", "3"]).unwrap();
        assert!(matches!(cli.command, Command::Traceless { size: 3, z: None }));
        assert_eq!(cli.job.field.as_deref(), Some("GF(7)"));
        assert!(Cli::try_parse_from(["graded-image-lab", "frobnicate"]).is_err());
    }
}
