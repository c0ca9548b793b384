//! JSON reports and their `--pretty` tables.
//!
//! Reports hold no timings or other run-dependent data, so equal jobs give equal bytes.

use graded_image_core::analysis::{CentralVerdict, ImageReport, IdentityCheck, Prediction, Verdict, VerifyStats};
use graded_image_core::matrix::Matrix;
use graded_image_core::subspace::Subspace;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
}

impl Header {
    pub fn new(command: &'static str, seed: u64, field: String, algebra: Option<String>) -> Self {
        Header { tool: "graded-image-lab", version: env!("CARGO_PKG_VERSION"), command, seed, field, algebra }
    }

    fn pretty(&self) -> String {
        let mut s = format!("{} {} | seed {} | field {}", self.tool, self.command, self.seed, self.field);
        if let Some(a) = &self.algebra {
            s.push_str(&format!(" | {a}"));
        }
        s.push('\n');
        s
    }
}

fn matrices(ms: &[Matrix]) -> Vec<String> {
    ms.iter().map(Matrix::to_entry_syntax).collect()
}

fn saturate(x: u128) -> u64 {
    u64::try_from(x).unwrap_or(u64::MAX)
}

/// Left-aligned text table.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(String::as_str).collect()));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

pub trait Render: Serialize {
    fn pretty(&self) -> String;

    fn render(&self, pretty: bool) -> String {
        if pretty {
            self.pretty()
        } else {
            serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValueWitness {
    pub args: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityEntry {
    pub poly: String,
    pub identity: bool,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ValueWitness>,
}

impl IdentityEntry {
    pub fn new(poly: String, c: &IdentityCheck) -> Self {
        let witness = c.witness.as_ref().map(|(args, value)| ValueWitness { args: matrices(args), value: value.to_entry_syntax() });
        IdentityEntry { poly, identity: c.identity, vacuous: c.vacuous, witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub header: Header,
    pub results: Vec<IdentityEntry>,
}

impl Render for IdentityReport {
    fn pretty(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .results
            .iter()
            .map(|e| {
                let w = e.witness.as_ref().map(|w| format!("({}) -> {}", w.args.join(", "), w.value)).unwrap_or_default();
                vec![e.poly.clone(), e.identity.to_string(), e.vacuous.to_string(), w]
            })
            .collect();
        self.header.pretty() + &table(&["polynomial", "identity", "vacuous", "witness"], &rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeEntry {
    pub poly: String,
    pub commutator_degree: usize,
    pub coefficient_sum: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub header: Header,
    pub results: Vec<DegreeEntry>,
}

impl Render for DegreeReport {
    fn pretty(&self) -> String {
        let rows: Vec<Vec<String>> =
            self.results.iter().map(|e| vec![e.poly.clone(), e.commutator_degree.to_string(), e.coefficient_sum.clone()]).collect();
        self.header.pretty() + &table(&["polynomial", "commutator degree", "coefficient sum"], &rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanJson {
    pub dim: usize,
    pub basis: Vec<String>,
}

impl From<&Subspace> for SpanJson {
    fn from(s: &Subspace) -> Self {
        SpanJson { dim: s.dim(), basis: matrices(&s.basis()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictionJson {
    pub name: String,
    pub theorem: String,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl From<&Prediction> for PredictionJson {
    fn from(p: &Prediction) -> Self {
        PredictionJson {
            name: p.name.to_string(),
            theorem: p.theorem.to_string(),
            dim: p.subspace.dim(),
            basis: matrices(&p.subspace.basis()),
            warnings: p.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub target: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictJson {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random_checked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attempts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl From<&Verdict> for VerdictJson {
    fn from(v: &Verdict) -> Self {
        let mut out = VerdictJson { status: v.label(), witnesses: Vec::new(), random_checked: None, attempts: None, reason: None };
        match v {
            Verdict::Verified { witnesses, random_checked } => {
                out.witnesses =
                    witnesses.iter().map(|w| WitnessJson { target: w.target.to_entry_syntax(), args: matrices(&w.args) }).collect();
                out.random_checked = Some(*random_checked);
            }
            Verdict::Inconclusive { attempts, reason } => {
                out.attempts = Some(*attempts);
                out.reason = Some(reason.clone());
            }
            Verdict::MismatchBug(why) => out.reason = Some(why.clone()),
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatsJson {
    pub tuples: u64,
    pub nonzero_values: usize,
    pub attempts: usize,
    pub targets: usize,
    pub vacuous: bool,
}

impl From<&VerifyStats> for StatsJson {
    fn from(s: &VerifyStats) -> Self {
        StatsJson { tuples: saturate(s.tuples), nonzero_values: s.nonzero_values, attempts: s.attempts, targets: s.targets, vacuous: s.vacuous }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyEntry {
    pub poly: String,
    pub predicted: PredictionJson,
    pub span: SpanJson,
    pub verdict: VerdictJson,
    pub stats: StatsJson,
}

impl ClassifyEntry {
    pub fn new(poly: String, r: &ImageReport) -> Self {
        ClassifyEntry {
            poly,
            predicted: (&r.prediction).into(),
            span: (&r.span).into(),
            verdict: (&r.verdict).into(),
            stats: (&r.stats).into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub header: Header,
    pub results: Vec<ClassifyEntry>,
}

impl Render for ClassifyReport {
    fn pretty(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .results
            .iter()
            .map(|e| {
                vec![
                    e.poly.clone(),
                    e.predicted.name.clone(),
                    e.predicted.theorem.clone(),
                    e.span.dim.to_string(),
                    e.verdict.status.to_string(),
                ]
            })
            .collect();
        let mut out = self.header.pretty() + &table(&["polynomial", "predicted", "theorem", "dim", "verdict"], &rows);
        for e in &self.results {
            for w in &e.predicted.warnings {
                out.push_str(&format!("warning: {w}\n"));
            }
            if let Some(r) = &e.verdict.reason {
                out.push_str(&format!("{}: {r}\n", e.verdict.status));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanEntry {
    pub poly: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub homogeneous: bool,
    pub tuples: u64,
    pub nonzero_values: usize,
    pub vacuous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub header: Header,
    pub results: Vec<SpanEntry>,
}

impl SpanEntry {
    pub fn new(poly: String, span: &Subspace, homogeneous: bool, tuples: u128, nonzero_values: usize, vacuous: bool) -> Self {
        SpanEntry { poly, dim: span.dim(), basis: matrices(&span.basis()), homogeneous, tuples: saturate(tuples), nonzero_values, vacuous }
    }
}

impl Render for SpanReport {
    fn pretty(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .results
            .iter()
            .map(|e| vec![e.poly.clone(), e.dim.to_string(), e.homogeneous.to_string(), e.basis.join(", ")])
            .collect();
        self.header.pretty() + &table(&["polynomial", "dim", "homogeneous", "basis"], &rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyEntry {
    pub poly: String,
    pub target: String,
    pub target_dim: usize,
    pub verdict: VerdictJson,
    pub stats: StatsJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub header: Header,
    pub results: Vec<VerifyEntry>,
}

impl Render for VerifyReport {
    fn pretty(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .results
            .iter()
            .map(|e| vec![e.poly.clone(), e.target.clone(), e.target_dim.to_string(), e.verdict.status.to_string(), e.stats.attempts.to_string()])
            .collect();
        let mut out = self.header.pretty() + &table(&["polynomial", "target", "dim", "verdict", "attempts"], &rows);
        for e in &self.results {
            if let Some(r) = &e.verdict.reason {
                out.push_str(&format!("{}: {r}\n", e.verdict.status));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralEntry {
    pub poly: String,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ValueWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl CentralEntry {
    pub fn new(poly: String, v: &CentralVerdict) -> Self {
        let (verdict, witness, reason) = match v {
            CentralVerdict::Identity => ("identity", None, None),
            CentralVerdict::Central => ("central", None, None),
            CentralVerdict::Proper { args, value } => {
                ("proper", Some(ValueWitness { args: matrices(args), value: value.to_entry_syntax() }), None)
            }
            CentralVerdict::MismatchBug(why) => ("mismatch-bug", None, Some(why.clone())),
        };
        CentralEntry { poly, verdict, witness, reason }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct CentralCounts {
    pub identity: usize,
    pub proper: usize,
    pub central: usize,
    pub mismatch_bug: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralReport {
    pub header: Header,
    pub polynomials: usize,
    pub counts: CentralCounts,
    pub results: Vec<CentralEntry>,
}

impl Render for CentralReport {
    fn pretty(&self) -> String {
        let c = &self.counts;
        let rows = vec![vec![
            self.polynomials.to_string(),
            c.identity.to_string(),
            c.proper.to_string(),
            c.central.to_string(),
            c.mismatch_bug.to_string(),
        ]];
        let mut out = self.header.pretty() + &table(&["polynomials", "identity", "proper", "central", "mismatch-bug"], &rows);
        for e in self.results.iter().filter(|e| e.verdict == "central" || e.verdict == "mismatch-bug") {
            out.push_str(&format!("{}: {}\n", e.verdict, e.poly));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitSum {
    /// Variables other than `z` that stand left of it.
    pub left: Vec<String>,
    pub sum: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TracelessSampleJson {
    pub target: String,
    pub conjugator: String,
    pub args: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TracelessReport {
    pub header: Header,
    pub poly: String,
    pub z: String,
    pub size: usize,
    pub split_sums: Vec<SplitSum>,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub diagonal: Vec<String>,
    pub samples: Vec<TracelessSampleJson>,
}

impl Render for TracelessReport {
    fn pretty(&self) -> String {
        let mut out = self.header.pretty();
        out.push_str(&format!("f = {}, z = {}, n = {}: {}\n", self.poly, self.z, self.size, self.status));
        if let Some(r) = &self.reason {
            out.push_str(&format!("reason: {r}\n"));
        }
        let sums: Vec<Vec<String>> = self.split_sums.iter().map(|s| vec![format!("{{{}}}", s.left.join(", ")), s.sum.clone()]).collect();
        out.push_str(&table(&["left of z", "coefficient sum"], &sums));
        for (k, d) in self.diagonal.iter().enumerate() {
            out.push_str(&format!("diagonal value {}: {d}\n", k + 1));
        }
        let rows: Vec<Vec<String>> =
            self.samples.iter().enumerate().map(|(k, s)| vec![(k + 1).to_string(), s.target.clone(), s.args.join(", ")]).collect();
        out + &table(&["sample", "target", "arguments"], &rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionJson {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub header: Header,
    pub passed: bool,
    pub criteria: Vec<CriterionJson>,
}

impl Render for SelftestReport {
    fn pretty(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .criteria
            .iter()
            .map(|c| {
                vec![
                    c.id.to_string(),
                    if c.passed { "pass" } else { "FAIL" }.to_string(),
                    c.checked.to_string(),
                    c.failed.to_string(),
                    c.name.to_string(),
                ]
            })
            .collect();
        let mut out = self.header.pretty() + &table(&["#", "result", "checked", "failed", "criterion"], &rows);
        for c in &self.criteria {
            if let Some(f) = &c.first_failure {
                out.push_str(&format!("criterion {}: {f}\n", c.id));
            }
        }
        out.push_str(if self.passed { "all criteria passed\n" } else { "some criteria failed\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_align() {
        let t = table(&["a", "bb"], &[vec!["xxx".into(), "y".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxxx  y\n");
    }

    #[test]
    fn header_carries_the_seed() {
        let h = Header::new("classify", 42, "GF(7)".into(), None);
        let r = DegreeReport { header: h, results: vec![] };
        let json = r.render(false);
        assert!(json.contains("\"seed\": 42"));
        assert!(!json.contains("algebra"));
        assert!(r.render(true).starts_with("graded-image-lab classify | seed 42 | field GF(7)\n"));
    }
}
