//! Matrix algebra species, gradings and their homogeneous components.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::group::{Group, GroupElement, GroupError};
use crate::matrix::{Matrix, ProductKind};
use crate::scalar::{Domain, ScalarError};
use crate::subspace::{position_order, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Species {
    UT(usize),
    LT(usize),
    M(usize),
    /// Block-diagonal algebra of upper triangular blocks of the given sizes.
    BlockDiag(Vec<usize>),
    /// Upper triangular matrices under the Jordan product.
    UJ(usize),
    /// Upper triangular matrices under the Lie bracket.
    UTLie(usize),
}

impl Species {
    pub fn size(&self) -> usize {
        match self {
            Species::UT(n) | Species::LT(n) | Species::M(n) | Species::UJ(n) | Species::UTLie(n) => *n,
            Species::BlockDiag(ds) => ds.iter().sum(),
        }
    }

    pub fn product_kind(&self) -> ProductKind {
        match self {
            Species::UJ(_) => ProductKind::Jordan,
            Species::UTLie(_) => ProductKind::Lie,
            _ => ProductKind::Assoc,
        }
    }

    fn block_of(ds: &[usize], i: usize) -> usize {
        let mut acc = 0;
        for (b, d) in ds.iter().enumerate() {
            acc += d;
            if i < acc {
                return b;
            }
        }
        ds.len()
    }

    /// Whether position `(i, j)` (zero-based) may be nonzero.
    pub fn in_support(&self, i: usize, j: usize) -> bool {
        match self {
            Species::UT(_) | Species::UJ(_) | Species::UTLie(_) => i <= j,
            Species::LT(_) => i >= j,
            Species::M(_) => true,
            Species::BlockDiag(ds) => i <= j && Self::block_of(ds, i) == Self::block_of(ds, j),
        }
    }

    /// Support positions in subspace coordinate order.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        position_order(self.size()).into_iter().filter(|&(i, j)| self.in_support(i, j)).collect()
    }

    pub fn dim(&self) -> usize {
        self.positions().len()
    }

    /// The underlying associative algebra is contained in the upper triangle.
    pub fn is_upper(&self) -> bool {
        !matches!(self, Species::LT(_) | Species::M(_))
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Species::UT(n) => write!(f, "UT({n})"),
            Species::LT(n) => write!(f, "LT({n})"),
            Species::M(n) => write!(f, "M({n})"),
            Species::UJ(n) => write!(f, "UJ({n})"),
            Species::UTLie(n) => write!(f, "UTLie({n})"),
            Species::BlockDiag(ds) => {
                let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "BlockDiag({})", parts.join(","))
            }
        }
    }
}

/// The three mirror-type gradings of the 2 x 2 Jordan algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MirrorCase {
    /// Neutral: scalars; odd: `e11 - e22` and `e12`.
    IIa,
    /// Neutral: scalars and `e12`; odd: `e11 - e22`.
    IIb,
    /// Over `Z2 x Z2`: `e11 - e22` in `(1,0)`, `e12` in `(0,1)`.
    IIc,
}

impl fmt::Display for MirrorCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MirrorCase::IIa => "IIa",
            MirrorCase::IIb => "IIb",
            MirrorCase::IIc => "IIc",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Grading {
    Trivial,
    /// Degrees of `e12, e23, ..., e_{n-1,n}`.
    Elementary { group: Group, degrees: Vec<GroupElement> },
    Mirror(MirrorCase),
    /// Explicit component table; no theorem covers it, but enumeration works.
    Custom { group: Group, components: Vec<(GroupElement, Vec<Matrix>)> },
}

impl Grading {
    /// Natural `Z_q` grading on `n x n` matrices: `deg e_ij = j - i mod q`.
    pub fn natural_cyclic(n: usize, q: u64) -> Self {
        let group = Group::cyclic(q);
        let degrees = (1..n).map(|_| group.of(1)).collect();
        Grading::Elementary { group, degrees }
    }

    pub fn natural_integers(n: usize) -> Self {
        Self::natural_cyclic(n, 0)
    }

    /// The `Z_q` grading given by the vertex sequence `(0, 1, ..., q-2, q-1, ..., q-1)`.
    pub fn step(n: usize, q: u64) -> Self {
        let group = Group::cyclic(q);
        let degrees = (1..n).map(|k| group.of(if (k as u64) < q { 1 } else { 0 })).collect();
        Grading::Elementary { group, degrees }
    }

    /// Elementary grading from vertex degrees `g_1, ..., g_n` (`deg e_ij = g_j - g_i`).
    pub fn from_vertices(group: Group, vertices: &[GroupElement]) -> Self {
        let degrees = vertices.windows(2).map(|w| group.op(&w[1], &group.inverse(&w[0]))).collect();
        Grading::Elementary { group, degrees }
    }

    pub fn group(&self) -> Group {
        match self {
            Grading::Trivial => Group::trivial(),
            Grading::Elementary { group, .. } | Grading::Custom { group, .. } => group.clone(),
            Grading::Mirror(MirrorCase::IIc) => Group::product(&[2, 2]),
            Grading::Mirror(_) => Group::cyclic(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("the Jordan product needs characteristic different from 2")]
    CharTwoJordan,
    #[error("{0}")]
    BadGrading(String),
    #[error("grading violated: {left} * {right} = {product} leaves the component of degree {degree}")]
    GradingViolation { left: String, right: String, product: String, degree: String },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("cannot parse algebra `{0}`")]
    Parse(String),
}

/// A nonzero homogeneous component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Component {
    pub degree: GroupElement,
    pub basis: Vec<Matrix>,
    /// Positions when every basis element is a matrix unit.
    pub units: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedAlgebra {
    species: Species,
    grading: Grading,
    domain: Domain,
    group: Group,
    components: Vec<Component>,
}

/// Named subspaces used as classification targets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Named {
    /// Power of the radical of the neutral component; power 0 is the neutral component.
    Jpow(usize),
    /// Component of degree `l` for a cyclic grading group.
    Alcomp(u64),
    /// `span{e_{q-l,j} : j = q+r..n}` for the step grading.
    Blr(u64, usize),
    SLn,
    Scalars,
    ZeroDiag,
    Component(GroupElement),
    Full,
    Zero,
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Named::Jpow(r) => write!(f, "J^{r}"),
            Named::Alcomp(l) => write!(f, "A_{l}"),
            Named::Blr(l, r) => write!(f, "B_{l},{r}"),
            Named::SLn => f.write_str("sl_n"),
            Named::Scalars => f.write_str("scalars"),
            Named::ZeroDiag => f.write_str("zero-diagonal"),
            Named::Component(g) => write!(f, "component({g})"),
            Named::Full => f.write_str("full"),
            Named::Zero => f.write_str("zero"),
        }
    }
}

fn mirror_components(domain: Domain, case: MirrorCase) -> Vec<(GroupElement, Vec<Matrix>)> {
    let id = Matrix::identity(2, domain);
    let h = Matrix::unit(2, domain, 0, 0).sub(&Matrix::unit(2, domain, 1, 1));
    let e12 = Matrix::unit(2, domain, 0, 1);
    let el = |c: &[i64]| GroupElement::from_coords(c);
    match case {
        MirrorCase::IIa => alloc::vec![(el(&[0]), alloc::vec![id]), (el(&[1]), alloc::vec![h, e12])],
        MirrorCase::IIb => alloc::vec![(el(&[0]), alloc::vec![id, e12]), (el(&[1]), alloc::vec![h])],
        MirrorCase::IIc => alloc::vec![
            (el(&[0, 0]), alloc::vec![id]),
            (el(&[0, 1]), alloc::vec![e12]),
            (el(&[1, 0]), alloc::vec![h]),
        ],
    }
}

fn unit_positions(basis: &[Matrix]) -> Option<Vec<(usize, usize)>> {
    basis
        .iter()
        .map(|b| {
            let n = b.size();
            let mut found = None;
            for i in 0..n {
                for j in 0..n {
                    let v = b.get(i, j);
                    if v.is_zero() {
                        continue;
                    }
                    if !v.is_one() || found.is_some() {
                        return None;
                    }
                    found = Some((i, j));
                }
            }
            found
        })
        .collect()
}

/// Certify `A_g * A_h ⊆ A_{gh}` on all basis pairs.
pub fn check_grading(
    group: &Group,
    kind: ProductKind,
    components: &[(GroupElement, Vec<Matrix>)],
) -> Result<(), AlgebraError> {
    let Some(n) = components.iter().flat_map(|c| c.1.iter()).map(Matrix::size).next() else {
        return Ok(());
    };
    let domain = components.iter().flat_map(|c| c.1.iter()).map(Matrix::domain).next().expect("nonempty");
    let spans: Vec<(GroupElement, Subspace)> =
        components.iter().map(|(g, b)| (g.clone(), Subspace::span_of(n, domain, b))).collect();
    let zero = Subspace::zero(n, domain);
    for (g, bg) in components {
        for (h, bh) in components {
            let gh = group.op(g, h);
            let target = spans.iter().find(|(d, _)| *d == gh).map(|(_, s)| s).unwrap_or(&zero);
            for a in bg {
                for b in bh {
                    let p = a.product(b, kind).map_err(|_| AlgebraError::CharTwoJordan)?;
                    if !target.contains(&p) {
                        return Err(AlgebraError::GradingViolation {
                            left: a.to_string(),
                            right: b.to_string(),
                            product: p.to_string(),
                            degree: gh.to_string(),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

impl GradedAlgebra {
    pub fn new(species: Species, grading: Grading, domain: Domain) -> Result<Self, AlgebraError> {
        let n = species.size();
        let kind = species.product_kind();
        if n == 0 {
            return Err(AlgebraError::OutOfRange("matrix size must be positive".into()));
        }
        if kind == ProductKind::Jordan && domain.characteristic() == 2 {
            return Err(AlgebraError::CharTwoJordan);
        }
        let group = grading.group();
        let table: Vec<(GroupElement, Vec<Matrix>)> = match &grading {
            Grading::Trivial => alloc::vec![(
                group.identity(),
                species.positions().into_iter().map(|(i, j)| Matrix::unit(n, domain, i, j)).collect(),
            )],
            Grading::Elementary { group, degrees } => {
                if degrees.len() + 1 != n {
                    return Err(AlgebraError::BadGrading(alloc::format!(
                        "expected {} degrees for {species}, got {}",
                        n - 1,
                        degrees.len()
                    )));
                }
                if let Some(d) = degrees.iter().find(|d| !group.contains(d)) {
                    return Err(AlgebraError::BadGrading(alloc::format!("degree {d} is not an element of {group}")));
                }
                let mut table: Vec<(GroupElement, Vec<Matrix>)> = Vec::new();
                for (i, j) in species.positions() {
                    let d = elementary_degree(group, degrees, i, j);
                    let u = Matrix::unit(n, domain, i, j);
                    match table.iter_mut().find(|(g, _)| *g == d) {
                        Some((_, b)) => b.push(u),
                        None => table.push((d, alloc::vec![u])),
                    }
                }
                table
            }
            Grading::Mirror(case) => {
                if species != Species::UJ(2) {
                    return Err(AlgebraError::BadGrading(alloc::format!("mirror gradings are implemented for UJ(2), not {species}")));
                }
                mirror_components(domain, *case)
            }
            Grading::Custom { group, components } => {
                let mut all = Subspace::zero(n, domain);
                let mut count = 0;
                for (g, b) in components {
                    if !group.contains(g) {
                        return Err(AlgebraError::BadGrading(alloc::format!("degree {g} is not an element of {group}")));
                    }
                    for m in b {
                        if m.size() != n || m.domain() != domain {
                            return Err(AlgebraError::BadGrading("component matrix has the wrong shape".into()));
                        }
                        if (0..n).any(|i| (0..n).any(|j| !species.in_support(i, j) && !m.get(i, j).is_zero())) {
                            return Err(AlgebraError::BadGrading(alloc::format!("{m} is not an element of {species}")));
                        }
                        all.insert(m);
                        count += 1;
                    }
                }
                if count != species.dim() || all.dim() != count {
                    return Err(AlgebraError::BadGrading("components do not form a basis of the algebra".into()));
                }
                components.clone()
            }
        };
        check_grading(&group, kind, &table)?;
        let mut components: Vec<Component> = table
            .into_iter()
            .filter(|(_, b)| !b.is_empty())
            .map(|(degree, basis)| {
                let units = unit_positions(&basis);
                Component { degree, basis, units }
            })
            .collect();
        components.sort_by(|a, b| a.degree.cmp(&b.degree));
        Ok(GradedAlgebra { species, grading, domain, group, components })
    }

    pub fn trivial(species: Species, domain: Domain) -> Result<Self, AlgebraError> {
        Self::new(species, Grading::Trivial, domain)
    }

    pub fn species(&self) -> &Species {
        &self.species
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.species.size()
    }

    pub fn dim(&self) -> usize {
        self.species.dim()
    }

    pub fn kind(&self) -> ProductKind {
        self.species.product_kind()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component(&self, g: &GroupElement) -> Option<&Component> {
        self.components.iter().find(|c| c.degree == *g)
    }

    /// Basis of `A_g`; empty when `g` is outside the support.
    pub fn homogeneous_basis(&self, g: &GroupElement) -> Vec<Matrix> {
        self.component(g).map(|c| c.basis.clone()).unwrap_or_default()
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.components.len() == 1 && self.components[0].degree.is_identity()
    }

    /// Degree of the matrix unit at `(i, j)` under an elementary or trivial grading.
    pub fn unit_degree(&self, i: usize, j: usize) -> Option<GroupElement> {
        match &self.grading {
            Grading::Trivial => Some(self.group.identity()),
            Grading::Elementary { group, degrees } => Some(elementary_degree(group, degrees, i, j)),
            _ => None,
        }
    }

    /// `Some(q)` for the `Z_q` step grading on `UT(n)` with `2 <= q <= n`.
    pub fn step_q(&self) -> Option<u64> {
        let Species::UT(n) = self.species else { return None };
        let Grading::Elementary { group, degrees } = &self.grading else { return None };
        let q = group.cyclic_order()?;
        if q < 2 || q as usize > n {
            return None;
        }
        let expect = (1..n).map(|k| group.of(if (k as u64) < q { 1 } else { 0 }));
        expect.eq(degrees.iter().cloned()).then_some(q)
    }

    /// Natural `Z_q` grading (`deg e_ij = j - i mod q`); `Some(0)` for the natural `Z` grading.
    pub fn natural_order(&self) -> Option<u64> {
        let Grading::Elementary { group, degrees } = &self.grading else { return None };
        let q = group.cyclic_order()?;
        degrees.iter().all(|d| *d == group.of(1)).then_some(q)
    }

    pub fn full(&self) -> Subspace {
        let n = self.size();
        let units: Vec<Matrix> = self.species.positions().into_iter().map(|(i, j)| Matrix::unit(n, self.domain, i, j)).collect();
        Subspace::span_of(n, self.domain, &units)
    }

    pub fn component_span(&self, g: &GroupElement) -> Subspace {
        Subspace::span_of(self.size(), self.domain, &self.homogeneous_basis(g))
    }

    pub fn neutral(&self) -> Subspace {
        self.component_span(&self.group.identity())
    }

    /// Whether `m` is an element of the algebra.
    pub fn contains(&self, m: &Matrix) -> bool {
        let n = self.size();
        m.size() == n
            && m.domain() == self.domain
            && (0..n).all(|i| (0..n).all(|j| self.species.in_support(i, j) || m.get(i, j).is_zero()))
    }

    /// Homogeneous components of `m`, nonzero ones only, in component order.
    pub fn decompose(&self, m: &Matrix) -> Vec<(GroupElement, Matrix)> {
        let n = self.size();
        let mut out = Vec::new();
        if self.components.iter().all(|c| c.units.is_some()) {
            for c in &self.components {
                let mut part = Matrix::zeros(n, self.domain);
                for &(i, j) in c.units.as_ref().expect("unit basis") {
                    part.set(i, j, m.get(i, j).clone());
                }
                if !part.is_zero() {
                    out.push((c.degree.clone(), part));
                }
            }
            return out;
        }
        let all: Vec<&Matrix> = self.components.iter().flat_map(|c| c.basis.iter()).collect();
        let probe = Subspace::zero(n, self.domain);
        let cols: Vec<_> = all.iter().map(|b| probe.coords(b)).collect();
        let coeffs = crate::subspace::solve(&cols, &probe.coords(m), self.domain).expect("element of the algebra");
        let mut k = 0;
        for c in &self.components {
            let mut part = Matrix::zeros(n, self.domain);
            for b in &c.basis {
                if !coeffs[k].is_zero() {
                    part = part.add(&b.scale(&coeffs[k]));
                }
                k += 1;
            }
            if !part.is_zero() {
                out.push((c.degree.clone(), part));
            }
        }
        out
    }

    /// A subspace is homogeneous when it contains every homogeneous component of each of its elements.
    pub fn is_homogeneous_subspace(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|b| self.decompose(b).iter().all(|(_, part)| s.contains(part)))
    }

    /// Radical of the neutral component: its strictly triangular part.
    pub fn neutral_radical(&self) -> Result<Subspace, AlgebraError> {
        if matches!(self.species, Species::M(_)) || !self.components.iter().all(|c| c.units.is_some()) {
            return Err(AlgebraError::OutOfRange(alloc::format!("no radical power is defined for {self}")));
        }
        let n = self.size();
        let units: Vec<Matrix> = self
            .component(&self.group.identity())
            .and_then(|c| c.units.clone())
            .unwrap_or_default()
            .into_iter()
            .filter(|(i, j)| i != j)
            .map(|(i, j)| Matrix::unit(n, self.domain, i, j))
            .collect();
        Ok(Subspace::span_of(n, self.domain, &units))
    }

    pub fn named_subspace(&self, name: &Named) -> Result<Subspace, AlgebraError> {
        let n = self.size();
        let d = self.domain;
        let unit = |i: usize, j: usize| Matrix::unit(n, d, i, j);
        match name {
            Named::Zero => Ok(Subspace::zero(n, d)),
            Named::Full => Ok(self.full()),
            Named::Component(g) => {
                if !self.group.contains(g) {
                    return Err(AlgebraError::OutOfRange(alloc::format!("{g} is not an element of {}", self.group)));
                }
                Ok(self.component_span(g))
            }
            Named::Alcomp(l) => {
                let q = self.group.cyclic_order().ok_or_else(|| AlgebraError::OutOfRange("A_l needs a cyclic group".into()))?;
                if q != 0 && *l >= q {
                    return Err(AlgebraError::OutOfRange(alloc::format!("l = {l} must be below {q}")));
                }
                Ok(self.component_span(&self.group.of(*l as i64)))
            }
            Named::Blr(l, r) => {
                let q = self.step_q().ok_or_else(|| AlgebraError::OutOfRange("B_l,r needs the step grading".into()))? as usize;
                let l = *l as usize;
                if l < 1 || l >= q || *r < 1 || *r > n - q {
                    return Err(AlgebraError::OutOfRange(alloc::format!("B_{l},{r} needs 1 <= l < {q} and 1 <= r <= {}", n - q)));
                }
                // rows and columns are one-based in the definition
                let row = q - l - 1;
                let ms: Vec<Matrix> = (q + r..=n).map(|j| unit(row, j - 1)).collect();
                Ok(Subspace::span_of(n, d, &ms))
            }
            Named::Jpow(r) => {
                if *r == 0 {
                    return Ok(self.neutral());
                }
                let j = self.neutral_radical()?;
                let jb = j.basis();
                let mut cur = j.clone();
                for _ in 1..*r {
                    let mut next = Subspace::zero(n, d);
                    for a in cur.basis() {
                        for b in &jb {
                            next.insert(&a.mul(b));
                        }
                    }
                    cur = next;
                }
                Ok(cur)
            }
            Named::SLn => {
                let mut ms: Vec<Matrix> =
                    self.species.positions().into_iter().filter(|(i, j)| i != j).map(|(i, j)| unit(i, j)).collect();
                for i in 0..n.saturating_sub(1) {
                    ms.push(unit(i, i).sub(&unit(i + 1, i + 1)));
                }
                Ok(Subspace::span_of(n, d, &ms))
            }
            Named::Scalars => Ok(Subspace::span_of(n, d, &[Matrix::identity(n, d)])),
            Named::ZeroDiag => {
                let ms: Vec<Matrix> =
                    self.species.positions().into_iter().filter(|(i, j)| i != j).map(|(i, j)| unit(i, j)).collect();
                Ok(Subspace::span_of(n, d, &ms))
            }
        }
    }

    /// Elements commuting with every basis element (under the associative product).
    pub fn center(&self) -> Subspace {
        let n = self.size();
        let basis: Vec<Matrix> = self.components.iter().flat_map(|c| c.basis.iter().cloned()).collect();
        let probe = Subspace::zero(n, self.domain);
        // column k: the stacked commutators [b_k, b_t] over all t
        let cols: Vec<Vec<_>> = basis
            .iter()
            .map(|bk| basis.iter().flat_map(|bt| probe.coords(&bk.mul(bt).sub(&bt.mul(bk)))).collect())
            .collect();
        let len = basis.len() * n * n;
        let mut out = Subspace::zero(n, self.domain);
        for k in crate::subspace::kernel(&cols, len, self.domain) {
            let mut m = Matrix::zeros(n, self.domain);
            for (c, b) in k.iter().zip(&basis) {
                if !c.is_zero() {
                    m = m.add(&b.scale(c));
                }
            }
            out.insert(&m);
        }
        out
    }
}

fn elementary_degree(group: &Group, degrees: &[GroupElement], i: usize, j: usize) -> GroupElement {
    if i <= j {
        group.sum(&degrees[i..j])
    } else {
        group.inverse(&group.sum(&degrees[j..i]))
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.species, self.domain)?;
        match &self.grading {
            Grading::Trivial => Ok(()),
            Grading::Elementary { group, degrees } => {
                let parts: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                write!(f, " graded {group} by [{}]", parts.join(","))
            }
            Grading::Mirror(case) => write!(f, " mirror {case}"),
            Grading::Custom { group, .. } => write!(f, " graded {group} custom"),
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}

fn parse_species(s: &str) -> Option<Species> {
    let (name, rest) = s.split_once('(')?;
    let args = rest.strip_suffix(')')?;
    let nums: Vec<usize> = args.split(',').map(|a| a.trim().parse().ok()).collect::<Option<_>>()?;
    let one = || if nums.len() == 1 && nums[0] > 0 { Some(nums[0]) } else { None };
    Some(match name.trim() {
        "UT" => Species::UT(one()?),
        "LT" => Species::LT(one()?),
        "M" => Species::M(one()?),
        "UJ" => Species::UJ(one()?),
        "UTLie" => Species::UTLie(one()?),
        "BlockDiag" if !nums.is_empty() && nums.iter().all(|&d| d > 0) => Species::BlockDiag(nums),
        _ => return None,
    })
}

impl FromStr for GradedAlgebra {
    type Err = AlgebraError;

    /// `UT(4) over GF(11) graded Z3 by [1,2,2]`, `... graded Z3 seq [0,1,2,2]`,
    /// `... graded Z2 step`, `... graded Z natural`, `UJ(2) over GF(7) mirror IIa`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlgebraError::Parse(s.trim().to_string());
        let (species_txt, rest) = s.trim().split_once(" over ").ok_or_else(bad)?;
        let species = parse_species(species_txt.trim()).ok_or_else(bad)?;
        let rest = rest.trim();
        let (field_txt, grading_txt) = match rest.find(char::is_whitespace) {
            Some(k) => (&rest[..k], rest[k..].trim()),
            None => (rest, ""),
        };
        let domain: Domain = field_txt.parse()?;
        let n = species.size();
        let grading = if grading_txt.is_empty() {
            Grading::Trivial
        } else if let Some(case) = grading_txt.strip_prefix("mirror") {
            Grading::Mirror(match case.trim() {
                "IIa" => MirrorCase::IIa,
                "IIb" => MirrorCase::IIb,
                "IIc" => MirrorCase::IIc,
                _ => return Err(bad()),
            })
        } else if let Some(g) = grading_txt.strip_prefix("graded") {
            let g = g.trim();
            let (group_txt, how) = g.split_once(char::is_whitespace).ok_or_else(bad)?;
            let group: Group = group_txt.parse()?;
            let how = how.trim();
            let list = |body: &str| -> Result<Vec<GroupElement>, AlgebraError> {
                let inner = body.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
                split_top_level(inner).into_iter().map(|p| group.parse_elem(p).map_err(Into::into)).collect()
            };
            if how == "natural" {
                let q = group.cyclic_order().ok_or_else(bad)?;
                Grading::natural_cyclic(n, q)
            } else if how == "step" {
                let q = group.cyclic_order().filter(|&q| q >= 2).ok_or_else(bad)?;
                if q as usize > n {
                    return Err(AlgebraError::OutOfRange(alloc::format!("step grading needs q <= {n}")));
                }
                Grading::step(n, q)
            } else if let Some(body) = how.strip_prefix("by") {
                Grading::Elementary { degrees: list(body)?, group }
            } else if let Some(body) = how.strip_prefix("seq") {
                let vertices = list(body)?;
                if vertices.len() != n {
                    return Err(AlgebraError::BadGrading(alloc::format!("expected {n} vertex degrees")));
                }
                Grading::from_vertices(group, &vertices)
            } else {
                return Err(bad());
            }
        } else {
            return Err(bad());
        };
        GradedAlgebra::new(species, grading, domain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GF7: Domain = Domain::Prime(7);
    const GF11: Domain = Domain::Prime(11);

    fn e(n: usize, d: Domain, i: usize, j: usize) -> Matrix {
        Matrix::unit(n, d, i - 1, j - 1)
    }

    #[test]
    fn natural_z3_components() {
        let a = GradedAlgebra::new(Species::UT(3), Grading::natural_cyclic(3, 3), GF7).unwrap();
        let g = a.group().of(1);
        assert_eq!(a.homogeneous_basis(&g), vec![e(3, GF7, 1, 2), e(3, GF7, 2, 3)]);
        assert_eq!(a.natural_order(), Some(3));
        assert_eq!(a.step_q(), Some(3));
    }

    #[test]
    fn step_grading_components() {
        let a = GradedAlgebra::new(Species::UT(4), Grading::step(4, 2), GF11).unwrap();
        let one = a.group().of(1);
        assert_eq!(a.homogeneous_basis(&one), vec![e(4, GF11, 1, 2), e(4, GF11, 1, 3), e(4, GF11, 1, 4)]);
        assert_eq!(a.step_q(), Some(2));
        let b = a.named_subspace(&Named::Blr(1, 1)).unwrap();
        assert_eq!(b, Subspace::span_of(4, GF11, &[e(4, GF11, 1, 3), e(4, GF11, 1, 4)]));
        assert!(a.named_subspace(&Named::Blr(1, 3)).is_err());
        let other = Group::product(&[5]);
        assert!(a.homogeneous_basis(&other.of(3)).is_empty());
    }

    #[test]
    fn step_dimensions() {
        for n in 2..=6usize {
            for q in 2..=n {
                let a = GradedAlgebra::new(Species::UT(n), Grading::step(n, q as u64), GF11).unwrap();
                let z = a.group().identity();
                assert_eq!(a.component_span(&z).dim(), (q - 1) + (n - q + 1) * (n - q + 2) / 2);
                for l in 1..q {
                    assert_eq!(a.component_span(&a.group().of(l as i64)).dim(), (q - l) + (n - q), "n={n} q={q} l={l}");
                }
            }
        }
    }

    #[test]
    fn radical_powers() {
        let a = GradedAlgebra::trivial(Species::UT(3), GF7).unwrap();
        let j1 = a.named_subspace(&Named::Jpow(1)).unwrap();
        assert_eq!(j1, Subspace::span_of(3, GF7, &[e(3, GF7, 1, 2), e(3, GF7, 1, 3), e(3, GF7, 2, 3)]));
        let j2 = a.named_subspace(&Named::Jpow(2)).unwrap();
        assert!(j2.contains(&e(3, GF7, 1, 3)));
        assert_eq!(j2.dim(), 1);
        assert!(a.named_subspace(&Named::Jpow(3)).unwrap().is_zero());
        let t = GradedAlgebra::trivial(Species::BlockDiag(vec![2, 2]), GF7).unwrap();
        assert_eq!(t.named_subspace(&Named::Jpow(1)).unwrap().dim(), 2);
        assert!(t.named_subspace(&Named::Jpow(2)).unwrap().is_zero());
    }

    #[test]
    fn sl_and_scalars() {
        let m = GradedAlgebra::trivial(Species::M(3), GF7).unwrap();
        assert_eq!(m.named_subspace(&Named::SLn).unwrap().dim(), 8);
        let u = GradedAlgebra::trivial(Species::UT(2), GF7).unwrap();
        let s = Subspace::span_of(2, GF7, &[e(2, GF7, 1, 1).add(&e(2, GF7, 2, 2))]);
        assert_eq!(u.named_subspace(&Named::Scalars).unwrap(), s);
        assert_eq!(u.center(), s);
        assert_eq!(m.center().dim(), 1);
    }

    #[test]
    fn mirror_gradings_are_valid() {
        for case in [MirrorCase::IIa, MirrorCase::IIb, MirrorCase::IIc] {
            let a = GradedAlgebra::new(Species::UJ(2), Grading::Mirror(case), GF7).unwrap();
            assert_eq!(a.components().iter().map(|c| c.basis.len()).sum::<usize>(), 3);
            let m = e(2, GF7, 1, 1).scale(&crate::scalar::Scalar::from_i64(GF7, 3)).add(&e(2, GF7, 1, 2));
            let parts = a.decompose(&m);
            let back = parts.iter().fold(Matrix::zeros(2, GF7), |acc, (_, p)| acc.add(p));
            assert_eq!(back, m);
        }
        assert!(GradedAlgebra::new(Species::UT(2), Grading::Mirror(MirrorCase::IIa), GF7).is_err());
        assert_eq!(
            GradedAlgebra::new(Species::UJ(2), Grading::Trivial, Domain::Prime(2)),
            Err(AlgebraError::CharTwoJordan)
        );
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let z2 = Group::cyclic(2);
        let grading = Grading::Custom {
            group: z2.clone(),
            components: vec![
                (z2.of(0), vec![e(2, GF7, 2, 2), e(2, GF7, 1, 2)]),
                (z2.of(1), vec![e(2, GF7, 1, 1)]),
            ],
        };
        match GradedAlgebra::new(Species::UT(2), grading, GF7) {
            Err(AlgebraError::GradingViolation { left, right, .. }) => {
                assert!(left == "e(1,1)" || right == "e(1,1)", "{left} {right}");
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn parse_and_display() {
        let a: GradedAlgebra = "UT(4) over GF(11) graded Z3 by [1,2,2]".parse().unwrap();
        assert_eq!(a.to_string(), "UT(4) over GF(11) graded Z3 by [1,2,2]");
        let b: GradedAlgebra = "UT(4) over GF(11) graded Z2 step".parse().unwrap();
        assert_eq!(b.step_q(), Some(2));
        let c: GradedAlgebra = "UT(4) over GF(11) graded Z2 seq [0,1,1,1]".parse().unwrap();
        assert_eq!(b, c);
        let d: GradedAlgebra = "UJ(2) over GF(7) mirror IIa".parse().unwrap();
        assert_eq!(d.to_string(), "UJ(2) over GF(7) mirror IIa");
        let m: GradedAlgebra = "M(3) over GF(7) graded Z natural".parse().unwrap();
        assert_eq!(m.natural_order(), Some(0));
        assert_eq!(m.homogeneous_basis(&m.group().of(-2)), vec![e(3, GF7, 3, 1)]);
        let p: GradedAlgebra = "UT(3) over GF(7) graded ZxZ by [(1,0),(0,1)]".parse().unwrap();
        assert_eq!(p.components().len(), 4);
        let t: GradedAlgebra = "BlockDiag(2,1) over QQ".parse().unwrap();
        assert!(t.is_trivially_graded());
        assert!("UT(3) over GF(6)".parse::<GradedAlgebra>().is_err());
        assert!("UT(3) over GF(7) graded Z3 by [1]".parse::<GradedAlgebra>().is_err());
    }
}
