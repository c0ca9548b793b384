//! Text formats for algebras, polynomial files and subspace targets.
//!
//! Algebra text is a header line, e.g. `UT(4) over GF(11) graded Z3 by [1,2,2]`, where
//! the `over` clause may be left out to use the job field. A header ending in
//! `custom <group>` is followed by component lines `component <g>: <matrix>, ...`,
//! on separate lines or separated by `;`.
//!
//! Polynomial files hold one polynomial per line in the `kind=...; deg ...; f = ...`
//! form. Blank lines and `#` comments are skipped. A bare polynomial body is accepted
//! too, and a missing `kind` clause defaults to the product of the algebra.

use std::path::Path;

use graded_image_core::algebra::{AlgebraError, GradedAlgebra, Grading, Named};
use graded_image_core::group::Group;
use graded_image_core::matrix::{Matrix, ProductKind};
use graded_image_core::multilinear::MultilinearPoly;
use graded_image_core::scalar::Domain;
use graded_image_core::subspace::Subspace;

use crate::LabError;

/// The contents of `arg` if it names a readable file, otherwise `arg` itself.
pub fn read_source(arg: &str) -> Result<String, LabError> {
    let p = Path::new(arg);
    if p.is_file() {
        std::fs::read_to_string(p).map_err(|e| LabError::Usage(format!("cannot read {arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty())
}

fn algebra_error(e: AlgebraError) -> LabError {
    match e {
        AlgebraError::BadGrading(_) | AlgebraError::GradingViolation { .. } => LabError::Grading(e.to_string()),
        other => LabError::Usage(other.to_string()),
    }
}

fn with_field(header: &str, field: Domain) -> String {
    if header.contains(" over ") {
        return header.to_string();
    }
    match header.find(')') {
        Some(k) => format!("{} over {field}{}", &header[..=k], &header[k + 1..]),
        None => header.to_string(),
    }
}

/// Split at commas outside parentheses.
fn split_outer(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (k, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..k].trim());
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.into_iter().filter(|p| !p.is_empty()).collect()
}

pub fn parse_algebra(text: &str, field: Domain) -> Result<GradedAlgebra, LabError> {
    let mut lines: Vec<&str> = Vec::new();
    for l in content_lines(text) {
        lines.extend(l.split(';').map(str::trim).filter(|s| !s.is_empty()));
    }
    let Some((&header, rest)) = lines.split_first() else {
        return Err(LabError::Usage("empty algebra description".into()));
    };
    let header = with_field(header, field);
    let Some((base, group_txt)) = header.split_once(" custom ") else {
        if !rest.is_empty() {
            return Err(LabError::Usage(format!("unexpected text after algebra header: `{}`", rest[0])));
        }
        return header.parse().map_err(algebra_error);
    };
    let plain: GradedAlgebra = base.parse().map_err(algebra_error)?;
    let group: Group = group_txt.trim().parse().map_err(|e| LabError::Usage(format!("bad group `{group_txt}`: {e}")))?;
    let n = plain.size();
    let mut components = Vec::new();
    for line in rest {
        let body = line
            .strip_prefix("component")
            .ok_or_else(|| LabError::Usage(format!("expected `component <g>: ...`, got `{line}`")))?;
        let (g, mats) = body.split_once(':').ok_or_else(|| LabError::Usage(format!("missing `:` in `{line}`")))?;
        let g = group.parse_elem(g.trim()).map_err(|e| LabError::Usage(format!("bad degree in `{line}`: {e}")))?;
        let basis = split_outer(mats)
            .into_iter()
            .map(|m| Matrix::parse_entry_syntax(n, plain.domain(), m).map_err(|e| LabError::Usage(format!("bad matrix `{m}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        components.push((g, basis));
    }
    GradedAlgebra::new(plain.species().clone(), Grading::Custom { group, components }, plain.domain()).map_err(algebra_error)
}

fn normalize_line(line: &str, kind: ProductKind) -> String {
    let parts: Vec<&str> = line.split(';').map(str::trim).filter(|p| !p.is_empty()).collect();
    let is_body = |p: &str| p.strip_prefix('f').is_some_and(|r| r.trim_start().starts_with('='));
    let mut out = String::new();
    if !parts.iter().any(|p| p.starts_with("kind")) {
        out.push_str(&format!("kind={kind}; "));
    }
    if parts.iter().any(|p| is_body(p)) {
        out.push_str(line);
    } else if parts.len() == 1 {
        out.push_str(&format!("f = {}", parts[0]));
    } else {
        out.push_str(line);
    }
    out
}

/// Parse every polynomial in `text` over `domain`.
pub fn parse_polys(text: &str, kind: ProductKind, domain: Domain) -> Result<Vec<MultilinearPoly>, LabError> {
    let polys = content_lines(text)
        .enumerate()
        .map(|(k, l)| {
            MultilinearPoly::parse_line(&normalize_line(l, kind), domain)
                .map_err(|e| LabError::Usage(format!("polynomial {}: {e}", k + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if polys.is_empty() {
        return Err(LabError::Usage("no polynomial given".into()));
    }
    Ok(polys)
}

/// Parse a subspace target: a name as printed in reports (`J^2`, `A_1`, `B_1,1`, `sl_n`,
/// `scalars`, `zero-diagonal`, `component(g)`, `full`, `zero`) or `span <m>, <m>, ...`.
pub fn parse_target(text: &str, alg: &GradedAlgebra) -> Result<(String, Subspace), LabError> {
    let t = text.trim();
    let bad = || LabError::Usage(format!("bad target `{t}`"));
    if let Some(list) = t.strip_prefix("span") {
        let n = alg.size();
        let ms = split_outer(list)
            .into_iter()
            .map(|m| Matrix::parse_entry_syntax(n, alg.domain(), m).map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok((t.to_string(), Subspace::span_of(n, alg.domain(), &ms)));
    }
    let name = if let Some(r) = t.strip_prefix("J^") {
        Named::Jpow(r.parse().map_err(|_| bad())?)
    } else if let Some(l) = t.strip_prefix("A_") {
        Named::Alcomp(l.parse().map_err(|_| bad())?)
    } else if let Some(lr) = t.strip_prefix("B_") {
        let (l, r) = lr.split_once(',').ok_or_else(bad)?;
        Named::Blr(l.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?)
    } else if let Some(g) = t.strip_prefix("component(").and_then(|r| r.strip_suffix(')')) {
        Named::Component(alg.group().parse_elem(g).map_err(|_| bad())?)
    } else {
        match t {
            "sl_n" => Named::SLn,
            "scalars" => Named::Scalars,
            "zero-diagonal" => Named::ZeroDiag,
            "full" => Named::Full,
            "zero" => Named::Zero,
            _ => return Err(bad()),
        }
    };
    let s = alg.named_subspace(&name).map_err(|e| LabError::Usage(format!("target `{t}`: {e}")))?;
    Ok((name.to_string(), s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use graded_image_core::algebra::Species;

    const GF7: Domain = Domain::Prime(7);

    #[test]
    fn algebra_header_takes_the_job_field() {
        let a = parse_algebra("UT(3) graded Z2 step", GF7).unwrap();
        assert_eq!(a.domain(), GF7);
        assert_eq!(a.step_q(), Some(2));
        let b = parse_algebra("# comment\nUT(3) over GF(5)\n", GF7).unwrap();
        assert_eq!(b.domain(), Domain::Prime(5));
    }

    #[test]
    fn custom_tables() {
        let ok = parse_algebra("UT(2) over GF(7) custom Z2; component 0: e(1,1), e(2,2); component 1: e(1,2)", GF7).unwrap();
        assert_eq!(ok.species(), &Species::UT(2));
        assert_eq!(ok.components().len(), 2);
        let corrupt = parse_algebra("UT(2) over GF(7) custom Z2; component 1: e(1,1), e(2,2); component 0: e(1,2)", GF7);
        assert!(matches!(corrupt, Err(LabError::Grading(_))));
        let short = parse_algebra("UT(3) over GF(7) graded Z2 by [1]", GF7);
        assert!(matches!(short, Err(LabError::Grading(_))));
        assert!(matches!(parse_algebra("UT(3) over GF(7) graded", GF7), Err(LabError::Usage(_))));
    }

    #[test]
    fn poly_lines() {
        let fs = parse_polys("[x1,x2]\n\n# skip\nkind=assoc; f = x1*x2\n", ProductKind::Lie, GF7).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].kind(), ProductKind::Lie);
        assert_eq!(fs[1].kind(), ProductKind::Assoc);
        let g = parse_polys("deg x1=0, x2=1 in Z2; f = x1*x2", ProductKind::Assoc, GF7).unwrap();
        assert!(g[0].is_graded());
        assert!(parse_polys("x1*x1", ProductKind::Assoc, GF7).is_err());
        assert!(parse_polys("  # nothing\n", ProductKind::Assoc, GF7).is_err());
    }

    #[test]
    fn targets() {
        let a = parse_algebra("UT(4) over GF(11) graded Z2 step", GF7).unwrap();
        let (name, b) = parse_target("B_1,1", &a).unwrap();
        assert_eq!(name, "B_1,1");
        assert_eq!(b.dim(), 2);
        let (_, s) = parse_target("span e(1,3), e(1,4)", &a).unwrap();
        assert_eq!(s, b);
        assert_eq!(parse_target("J^1", &a).unwrap().0, "J^1");
        assert!(parse_target("K^1", &a).is_err());
    }
}
