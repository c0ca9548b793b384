//! Multilinear graded polynomials in associative, Jordan and Lie flavors.
//!
//! Associative monomials are words (permutations of the variables). Jordan and
//! Lie monomials are binary trees whose leaves are a permutation of the
//! variables; Jordan trees are stored modulo commutativity and Lie trees modulo
//! anticommutativity, with children in a fixed canonical order.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebra;
use crate::group::{Group, GroupElement};
use crate::matrix::{Entry, Matrix, ProductKind};
use crate::scalar::{Domain, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("not multilinear: {0}")]
    NotMultilinear(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("bad bracketing: {0}")]
    BadBracketing(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("argument for {var} is not homogeneous of degree {degree}")]
    DegreeMismatch { var: String, degree: String },
    #[error("{poly} polynomial cannot be evaluated on an algebra with the {algebra} product")]
    KindMismatch { poly: ProductKind, algebra: ProductKind },
    #[error("expected {want} arguments, got {got}")]
    Arity { want: usize, got: usize },
    #[error("wrong shape: {0}")]
    WrongShape(String),
}

/// A variable with its homogeneous degree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarDecl {
    pub index: u32,
    pub degree: GroupElement,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(u32),
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn node(a: Tree, b: Tree) -> Tree {
        Tree::Node(Box::new(a), Box::new(b))
    }

    pub fn size(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(a, b) => a.size() + b.size(),
        }
    }

    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Tree::Leaf(v) => out.push(*v),
            Tree::Node(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Order used for children: size first, then leaf sequence.
    pub fn canonical_cmp(&self, other: &Tree) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.leaves().cmp(&other.leaves()))
    }

    /// Order children canonically; returns the sign picked up (`-1` per Lie swap).
    fn canonicalize(self, anti: bool) -> (Tree, bool) {
        match self {
            Tree::Leaf(v) => (Tree::Leaf(v), false),
            Tree::Node(a, b) => {
                let (a, na) = a.canonicalize(anti);
                let (b, nb) = b.canonicalize(anti);
                let mut neg = na ^ nb;
                if a.canonical_cmp(&b) == Ordering::Greater {
                    if anti {
                        neg = !neg;
                    }
                    (Tree::node(b, a), neg)
                } else {
                    (Tree::node(a, b), neg)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial {
    Word(Vec<u32>),
    Tree(Tree),
}

impl Monomial {
    pub fn variables(&self) -> Vec<u32> {
        match self {
            Monomial::Word(w) => w.clone(),
            Monomial::Tree(t) => t.leaves(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    kind: ProductKind,
    domain: Domain,
    group: Group,
    /// Sorted by index.
    vars: Vec<VarDecl>,
    terms: BTreeMap<Monomial, Scalar>,
}

fn push_term(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(x) => {
            *x = &*x + &c;
            if x.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c);
        }
    }
}

impl MultilinearPoly {
    /// Build from raw terms, canonicalizing trees and checking multilinearity.
    pub fn new(
        kind: ProductKind,
        domain: Domain,
        group: Group,
        mut vars: Vec<VarDecl>,
        raw: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, FreeError> {
        vars.sort();
        let indices: Vec<u32> = vars.iter().map(|v| v.index).collect();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(FreeError::NotMultilinear("variable declared twice".into()));
        }
        if let Some(v) = vars.iter().find(|v| !group.contains(&v.degree)) {
            return Err(FreeError::DegreeMismatch { var: alloc::format!("x{}", v.index), degree: v.degree.to_string() });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in raw {
            if c.domain() != domain {
                return Err(ScalarError::MixedDomain(domain, c.domain()).into());
            }
            let mut leaves = m.variables();
            leaves.sort_unstable();
            if leaves != indices {
                return Err(FreeError::NotMultilinear(alloc::format!(
                    "monomial uses variables {:?}, expected each of {:?} exactly once",
                    m.variables(),
                    indices
                )));
            }
            let (m, c) = match (kind, m) {
                (ProductKind::Assoc, Monomial::Word(w)) => (Monomial::Word(w), c),
                (ProductKind::Assoc, Monomial::Tree(_)) => {
                    return Err(FreeError::WrongShape("associative terms are words".into()));
                }
                (_, Monomial::Word(w)) if w.len() == 1 => (Monomial::Tree(Tree::Leaf(w[0])), c),
                (_, Monomial::Word(_)) => return Err(FreeError::WrongShape("Jordan and Lie terms are trees".into())),
                (k, Monomial::Tree(t)) => {
                    let (t, neg) = t.canonicalize(k == ProductKind::Lie);
                    (Monomial::Tree(t), if neg { -c } else { c })
                }
            };
            push_term(&mut terms, m, c);
        }
        Ok(MultilinearPoly { kind, domain, group, vars, terms })
    }

    /// Ungraded polynomial in `x1..xm`.
    pub fn ungraded(kind: ProductKind, domain: Domain, m: u32, raw: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self, FreeError> {
        let g = Group::trivial();
        let vars = (1..=m).map(|i| VarDecl { index: i, degree: g.identity() }).collect();
        Self::new(kind, domain, g, vars, raw)
    }

    /// Ungraded associative polynomial from integer-coefficient words.
    pub fn assoc_words(domain: Domain, m: u32, words: &[(i64, &[u32])]) -> Result<Self, FreeError> {
        Self::ungraded(
            ProductKind::Assoc,
            domain,
            m,
            words.iter().map(|(c, w)| (Monomial::Word(w.to_vec()), Scalar::from_i64(domain, *c))),
        )
    }

    pub fn kind(&self) -> ProductKind {
        self.kind
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn vars(&self) -> &[VarDecl] {
        &self.vars
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn position_of(&self, index: u32) -> Option<usize> {
        self.vars.iter().position(|v| v.index == index)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_graded(&self) -> bool {
        !self.group.is_trivial()
    }

    /// Product of the variable degrees.
    pub fn degree(&self) -> GroupElement {
        self.group.sum(self.vars.iter().map(|v| &v.degree))
    }

    pub fn coefficient_sum(&self) -> Scalar {
        self.terms.values().fold(Scalar::zero(self.domain), |acc, c| &acc + c)
    }

    /// Same terms, new variable degrees (keyed by variable index).
    pub fn with_degrees(&self, group: Group, degrees: &BTreeMap<u32, GroupElement>) -> Result<Self, FreeError> {
        let vars = self
            .vars
            .iter()
            .map(|v| {
                degrees
                    .get(&v.index)
                    .map(|d| VarDecl { index: v.index, degree: d.clone() })
                    .ok_or_else(|| FreeError::UnknownVariable(alloc::format!("x{}", v.index)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.kind, self.domain, group, vars, self.terms.clone())
    }

    /// The same polynomial with all variables neutral in the trivial group.
    pub fn forget_grading(&self) -> Self {
        let g = Group::trivial();
        let vars = self.vars.iter().map(|v| VarDecl { index: v.index, degree: g.identity() }).collect();
        MultilinearPoly { kind: self.kind, domain: self.domain, group: g, vars, terms: self.terms.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        out.terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect();
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, FreeError> {
        if self.kind != other.kind || self.vars != other.vars || self.group != other.group {
            return Err(FreeError::WrongShape("summands must share kind and variables".into()));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            push_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Associative polynomial with the same evaluations: Lie brackets become `ab - ba`,
    /// Jordan products `ab + ba`.
    pub fn to_assoc(&self) -> Self {
        if self.kind == ProductKind::Assoc {
            return self.clone();
        }
        let sign = if self.kind == ProductKind::Lie { -1 } else { 1 };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let Monomial::Tree(t) = m else { unreachable!("non-associative terms are trees") };
            for (w, s) in expand_tree(t, sign) {
                push_term(&mut terms, Monomial::Word(w), if s < 0 { -c } else { c.clone() });
            }
        }
        MultilinearPoly { kind: ProductKind::Assoc, domain: self.domain, group: self.group.clone(), vars: self.vars.clone(), terms }
    }

    /// Expansion of a Lie polynomial into the associative one with the same evaluations.
    pub fn expand_lie(&self) -> Result<Self, FreeError> {
        if self.kind != ProductKind::Lie {
            return Err(FreeError::KindMismatch { poly: self.kind, algebra: ProductKind::Lie });
        }
        Ok(self.to_assoc())
    }

    /// Evaluate with arguments in variable order, each checked against its component.
    pub fn evaluate(&self, args: &[Matrix], alg: &GradedAlgebra) -> Result<Matrix, FreeError> {
        if self.kind != alg.kind() {
            return Err(FreeError::KindMismatch { poly: self.kind, algebra: alg.kind() });
        }
        if args.len() != self.vars.len() {
            return Err(FreeError::Arity { want: self.vars.len(), got: args.len() });
        }
        for (v, a) in self.vars.iter().zip(args) {
            let degree = self.degree_in(alg, v);
            let ok = alg.contains(a)
                && match &degree {
                    Some(g) => alg.component_span(g).contains(a),
                    None => a.is_zero(),
                };
            if !ok {
                return Err(FreeError::DegreeMismatch {
                    var: self.var_name(v.index),
                    degree: degree.map(|g| g.to_string()).unwrap_or_else(|| v.degree.to_string()),
                });
            }
        }
        let refs: Vec<&Matrix> = args.iter().collect();
        Ok(self.eval_refs(&refs))
    }

    /// Degree of a variable inside the algebra's group; ungraded polynomials are neutral.
    pub fn degree_in(&self, alg: &GradedAlgebra, v: &VarDecl) -> Option<GroupElement> {
        if self.group.is_trivial() {
            Some(alg.group().identity())
        } else if self.group == *alg.group() {
            Some(v.degree.clone())
        } else {
            None
        }
    }

    /// Unchecked evaluation with the polynomial's own product.
    pub fn eval_refs<T: Entry>(&self, args: &[&Matrix<T>]) -> Matrix<T> {
        let kind = self.kind;
        self.eval_with(args, &|a: &Matrix<T>, b: &Matrix<T>| a.product_unchecked(b, kind))
    }

    /// Evaluation with a caller-supplied binary product. Words multiply left to right;
    /// trees apply the product at every node.
    pub fn eval_with<T: Entry>(&self, args: &[&Matrix<T>], op: &dyn Fn(&Matrix<T>, &Matrix<T>) -> Matrix<T>) -> Matrix<T> {
        assert_eq!(args.len(), self.vars.len(), "one argument per variable");
        let n = args.first().map(|a| a.size()).unwrap_or(0);
        let d = self.domain;
        let pos: BTreeMap<u32, usize> = self.vars.iter().enumerate().map(|(k, v)| (v.index, k)).collect();
        let mut acc = Matrix::<T>::zeros(n, d);
        for (m, c) in &self.terms {
            let val = match m {
                Monomial::Word(w) => {
                    let mut it = w.iter().map(|v| args[pos[v]]);
                    match it.next() {
                        Some(first) => it.fold(first.clone(), |p, x| op(&p, x)),
                        None => Matrix::identity(n, d),
                    }
                }
                Monomial::Tree(t) => eval_tree(t, args, &pos, op),
            };
            acc = acc.add(&val.scale(c));
        }
        acc
    }

    /// `c_S` for every subset `S` of the other variables: the coefficient sum over monomials
    /// whose variables before `z` are exactly `S`.
    pub fn z_split_sums(&self, z: u32) -> Result<BTreeMap<BTreeSet<u32>, Scalar>, FreeError> {
        if self.kind != ProductKind::Assoc {
            return Err(FreeError::KindMismatch { poly: self.kind, algebra: ProductKind::Assoc });
        }
        if self.position_of(z).is_none() {
            return Err(FreeError::UnknownVariable(alloc::format!("x{z}")));
        }
        let others: Vec<u32> = self.vars.iter().map(|v| v.index).filter(|&i| i != z).collect();
        let mut table: BTreeMap<BTreeSet<u32>, Scalar> = BTreeMap::new();
        for mask in 0u64..(1u64 << others.len()) {
            let s = others.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect();
            table.insert(s, Scalar::zero(self.domain));
        }
        for (m, c) in &self.terms {
            let Monomial::Word(w) = m else { unreachable!() };
            let at = w.iter().position(|&v| v == z).expect("z occurs once");
            let s: BTreeSet<u32> = w[..at].iter().copied().collect();
            let slot = table.get_mut(&s).expect("all subsets present");
            *slot = &*slot + c;
        }
        Ok(table)
    }

    pub fn var_name(&self, index: u32) -> String {
        match self.vars.iter().find(|v| v.index == index) {
            Some(v) if self.is_graded() && !v.degree.is_identity() => alloc::format!("z{index}"),
            Some(_) if self.is_graded() => alloc::format!("y{index}"),
            _ => alloc::format!("x{index}"),
        }
    }

    fn fmt_tree(&self, t: &Tree, out: &mut String) {
        match t {
            Tree::Leaf(v) => out.push_str(&self.var_name(*v)),
            Tree::Node(a, b) => {
                let lie = self.kind == ProductKind::Lie;
                out.push(if lie { '[' } else { '(' });
                self.fmt_tree(a, out);
                out.push_str(if lie { "," } else { " " });
                self.fmt_tree(b, out);
                out.push(if lie { ']' } else { ')' });
            }
        }
    }

    /// Polynomial file line: `kind=assoc; deg x1=0, x2=1 in Z3; f = ...`.
    pub fn to_line(&self) -> String {
        let mut s = alloc::format!("kind={}; ", self.kind);
        if self.is_graded() {
            let decls: Vec<String> = self.vars.iter().map(|v| alloc::format!("x{}={}", v.index, v.degree)).collect();
            s.push_str(&alloc::format!("deg {} in {}; ", decls.join(", "), self.group));
        }
        s.push_str(&alloc::format!("f = {self}"));
        s
    }
}

fn expand_tree(t: &Tree, sign: i64) -> Vec<(Vec<u32>, i64)> {
    match t {
        Tree::Leaf(v) => vec![(vec![*v], 1)],
        Tree::Node(a, b) => {
            let ea = expand_tree(a, sign);
            let eb = expand_tree(b, sign);
            let mut out = Vec::with_capacity(2 * ea.len() * eb.len());
            for (wa, sa) in &ea {
                for (wb, sb) in &eb {
                    let mut ab = wa.clone();
                    ab.extend_from_slice(wb);
                    out.push((ab, sa * sb));
                    let mut ba = wb.clone();
                    ba.extend_from_slice(wa);
                    out.push((ba, sa * sb * sign));
                }
            }
            out
        }
    }
}

fn eval_tree<T: Entry>(
    t: &Tree,
    args: &[&Matrix<T>],
    pos: &BTreeMap<u32, usize>,
    op: &dyn Fn(&Matrix<T>, &Matrix<T>) -> Matrix<T>,
) -> Matrix<T> {
    match t {
        Tree::Leaf(v) => args[pos[v]].clone(),
        Tree::Node(a, b) => op(&eval_tree(a, args, pos, op), &eval_tree(b, args, pos, op)),
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&alloc::format!("{mag}*"));
            }
            match m {
                Monomial::Word(w) => {
                    let names: Vec<String> = w.iter().map(|&v| self.var_name(v)).collect();
                    out.push_str(&names.join("*"));
                }
                Monomial::Tree(t) => self.fmt_tree(t, &mut out),
            }
        }
        f.write_str(&out)
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Var(u32),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(Tok, bool)>, FreeError> {
    // each token carries whether whitespace preceded it
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    let mut space = false;
    while k < cs.len() {
        let c = cs[k];
        if c.is_whitespace() {
            space = true;
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let st = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            out.push((Tok::Num(cs[st..k].iter().collect()), space));
        } else if matches!(c, 'x' | 'y' | 'z') {
            k += 1;
            let st = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            let idx: u32 = cs[st..k]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| FreeError::Parse(alloc::format!("variable name at `{}`", cs[st - 1..].iter().collect::<String>())))?;
            if idx == 0 {
                return Err(FreeError::Parse("variable indices start at 1".into()));
            }
            out.push((Tok::Var(idx), space));
        } else if "+-*/()[],".contains(c) {
            out.push((Tok::Sym(c), space));
            k += 1;
        } else {
            return Err(FreeError::Parse(alloc::format!("unexpected character `{c}`")));
        }
        space = false;
    }
    Ok(out)
}

/// Intermediate value: scalar part is the `None` key.
type Lin = BTreeMap<Option<Monomial>, Scalar>;

struct Parser<'a> {
    toks: Vec<(Tok, bool)>,
    at: usize,
    kind: ProductKind,
    domain: Domain,
    seen: &'a mut BTreeSet<u32>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FreeError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(FreeError::BadBracketing(alloc::format!("expected `{c}`")))
        }
    }

    fn sum(&mut self) -> Result<Lin, FreeError> {
        let mut acc = Lin::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.product()?;
            for (m, c) in t {
                add_lin(&mut acc, m, if sign < 0 { -c } else { c });
            }
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('[')))
    }

    fn product(&mut self) -> Result<Lin, FreeError> {
        let mut acc = self.atom()?;
        loop {
            if self.eat('*') {
                let rhs = self.atom()?;
                acc = self.mul(&acc, &rhs, true)?;
            } else if self.starts_atom() {
                let rhs = self.atom()?;
                acc = self.mul(&acc, &rhs, true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn atom(&mut self) -> Result<Lin, FreeError> {
        let Some((tok, _)) = self.toks.get(self.at).cloned() else {
            return Err(FreeError::Parse("unexpected end of input".into()));
        };
        self.at += 1;
        match tok {
            Tok::Num(a) => {
                let text = if self.eat('/') {
                    match self.toks.get(self.at).cloned() {
                        Some((Tok::Num(b), _)) => {
                            self.at += 1;
                            alloc::format!("{a}/{b}")
                        }
                        _ => return Err(FreeError::Parse("expected denominator".into())),
                    }
                } else {
                    a
                };
                let mut l = Lin::new();
                add_lin(&mut l, None, Scalar::parse_in(self.domain, &text)?);
                Ok(l)
            }
            Tok::Var(v) => {
                self.seen.insert(v);
                let m = match self.kind {
                    ProductKind::Assoc => Monomial::Word(vec![v]),
                    _ => Monomial::Tree(Tree::Leaf(v)),
                };
                let mut l = Lin::new();
                add_lin(&mut l, Some(m), Scalar::one(self.domain));
                Ok(l)
            }
            Tok::Sym('(') => {
                let first = self.sum()?;
                if self.eat(',') {
                    let second = self.sum()?;
                    self.expect(',')?;
                    let third = self.sum()?;
                    self.expect(')')?;
                    // associator (a,b,c) = (ab)c - a(bc)
                    let left = self.mul(&self.mul(&first, &second, false)?, &third, false)?;
                    let right = self.mul(&first, &self.mul(&second, &third, false)?, false)?;
                    let mut out = left;
                    for (m, c) in right {
                        add_lin(&mut out, m, -c);
                    }
                    Ok(out)
                } else {
                    self.expect(')')?;
                    Ok(first)
                }
            }
            Tok::Sym('[') => {
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect(']')?;
                self.bracket(&a, &b)
            }
            Tok::Sym(c) => Err(FreeError::Parse(alloc::format!("unexpected `{c}`"))),
        }
    }

    fn bracket(&self, a: &Lin, b: &Lin) -> Result<Lin, FreeError> {
        match self.kind {
            ProductKind::Jordan => Err(FreeError::BadBracketing("commutator brackets are not Jordan syntax".into())),
            ProductKind::Assoc => {
                let mut out = self.mul(a, b, false)?;
                for (m, c) in self.mul(b, a, false)? {
                    add_lin(&mut out, m, -c);
                }
                Ok(out)
            }
            ProductKind::Lie => {
                let mut out = Lin::new();
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        let c = ca * cb;
                        match (ma, mb) {
                            (Some(Monomial::Tree(ta)), Some(Monomial::Tree(tb))) => {
                                check_disjoint(&ta.leaves(), &tb.leaves())?;
                                add_lin(&mut out, Some(Monomial::Tree(Tree::node(ta.clone(), tb.clone()))), c);
                            }
                            // brackets with scalars vanish
                            _ => {}
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Product of two values; `explicit` marks `*` or juxtaposition (not allowed between Lie elements).
    fn mul(&self, a: &Lin, b: &Lin, explicit: bool) -> Result<Lin, FreeError> {
        let mut out = Lin::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                let c = ca * cb;
                let m = match (ma, mb) {
                    (None, m) | (m, None) => m.clone(),
                    (Some(Monomial::Word(wa)), Some(Monomial::Word(wb))) => {
                        check_disjoint(wa, wb)?;
                        let mut w = wa.clone();
                        w.extend_from_slice(wb);
                        Some(Monomial::Word(w))
                    }
                    (Some(Monomial::Tree(ta)), Some(Monomial::Tree(tb))) => {
                        if self.kind == ProductKind::Lie && explicit {
                            return Err(FreeError::BadBracketing("Lie polynomials multiply only through [a,b]".into()));
                        }
                        if self.kind == ProductKind::Lie {
                            return Err(FreeError::BadBracketing("associators are not Lie syntax".into()));
                        }
                        check_disjoint(&ta.leaves(), &tb.leaves())?;
                        Some(Monomial::Tree(Tree::node(ta.clone(), tb.clone())))
                    }
                    _ => unreachable!("one monomial shape per kind"),
                };
                add_lin(&mut out, m, c);
            }
        }
        Ok(out)
    }
}

fn check_disjoint(a: &[u32], b: &[u32]) -> Result<(), FreeError> {
    if let Some(v) = a.iter().find(|v| b.contains(v)) {
        return Err(FreeError::NotMultilinear(alloc::format!("variable x{v} repeats in a monomial")));
    }
    Ok(())
}

fn add_lin(l: &mut Lin, m: Option<Monomial>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match l.get_mut(&m) {
        Some(x) => {
            *x = &*x + &c;
            if x.is_zero() {
                l.remove(&m);
            }
        }
        None => {
            l.insert(m, c);
        }
    }
}

impl MultilinearPoly {
    /// Parse polynomial text. `degrees` lists declared variable degrees; when empty the
    /// polynomial is ungraded and every variable is neutral.
    pub fn parse(
        text: &str,
        kind: ProductKind,
        domain: Domain,
        group: Group,
        degrees: &[(u32, GroupElement)],
    ) -> Result<Self, FreeError> {
        let toks = tokenize(text)?;
        if toks.is_empty() {
            return Err(FreeError::Parse("empty polynomial".into()));
        }
        let mut seen = BTreeSet::new();
        let lin = {
            let mut p = Parser { toks, at: 0, kind, domain, seen: &mut seen };
            let lin = p.sum()?;
            if p.at != p.toks.len() {
                return Err(FreeError::Parse(alloc::format!("trailing input at token {}", p.at + 1)));
            }
            lin
        };
        let mut raw = Vec::new();
        for (m, c) in lin {
            match m {
                Some(m) => raw.push((m, c)),
                None => return Err(FreeError::NotMultilinear("constant term".into())),
            }
        }
        let vars: Vec<VarDecl> = if degrees.is_empty() {
            seen.iter().map(|&i| VarDecl { index: i, degree: group.identity() }).collect()
        } else {
            if let Some(v) = seen.iter().find(|v| !degrees.iter().any(|(i, _)| i == *v)) {
                return Err(FreeError::UnknownVariable(alloc::format!("x{v}")));
            }
            degrees.iter().map(|(i, g)| VarDecl { index: *i, degree: g.clone() }).collect()
        };
        Self::new(kind, domain, group, vars, raw)
    }

    /// Parse a polynomial file line `kind=assoc; deg x1=0, x2=1 in Z3; f = x1*x2 - x2*x1`.
    /// The `kind` and `deg` clauses are optional (defaults: associative, ungraded).
    pub fn parse_line(line: &str, domain: Domain) -> Result<Self, FreeError> {
        let mut kind = ProductKind::Assoc;
        let mut group = Group::trivial();
        let mut decls: Vec<(u32, String)> = Vec::new();
        let mut body = None;
        for part in line.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            if let Some(k) = part.strip_prefix("kind") {
                kind = match k.trim().trim_start_matches('=').trim() {
                    "assoc" => ProductKind::Assoc,
                    "jordan" => ProductKind::Jordan,
                    "lie" => ProductKind::Lie,
                    other => return Err(FreeError::Parse(alloc::format!("unknown kind `{other}`"))),
                };
            } else if let Some(d) = part.strip_prefix("deg ") {
                let (list, g) = d.rsplit_once(" in ").ok_or_else(|| FreeError::Parse("deg clause needs `in <group>`".into()))?;
                group = g.trim().parse().map_err(|_| FreeError::Parse(alloc::format!("bad group `{}`", g.trim())))?;
                for item in split_decls(list) {
                    let (v, deg) = item.split_once('=').ok_or_else(|| FreeError::Parse(alloc::format!("bad declaration `{item}`")))?;
                    let v = v.trim();
                    let idx: u32 = v
                        .strip_prefix(['x', 'y', 'z'])
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| FreeError::Parse(alloc::format!("bad variable `{v}`")))?;
                    decls.push((idx, deg.trim().to_string()));
                }
            } else if let Some(f) = part.strip_prefix("f") {
                let f = f.trim_start();
                body = Some(f.strip_prefix('=').ok_or_else(|| FreeError::Parse("expected `f = ...`".into()))?.trim());
            } else {
                return Err(FreeError::Parse(alloc::format!("unknown clause `{part}`")));
            }
        }
        let body = body.ok_or_else(|| FreeError::Parse("missing `f = ...` clause".into()))?;
        let degrees = decls
            .into_iter()
            .map(|(i, d)| group.parse_elem(&d).map(|g| (i, g)).map_err(|_| FreeError::Parse(alloc::format!("bad degree `{d}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::parse(body, kind, domain, group, &degrees)
    }
}

fn split_decls(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
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

// ---------------------------------------------------------------------------
// Canonical decomposition for the step grading

/// One trailing polynomial: the neutral prefixes before each odd variable (sorted)
/// and the combination of trailing neutral words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrailingPart {
    pub odd_order: Vec<u32>,
    pub prefixes: Vec<Vec<u32>>,
    /// Ungraded associative polynomial in the trailing variables.
    pub g: MultilinearPoly,
    pub commutator_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZqDecomposition {
    /// Number of odd variables after replacing degree `k` variables by `k` degree-one ones.
    pub odd_count: usize,
    /// Reduced form (prefixes sorted, vanishing terms dropped), over the lifted variables.
    pub reduced: MultilinearPoly,
    pub parts: Vec<TrailingPart>,
    /// Least commutator degree over the nonzero trailing polynomials.
    pub r: Option<usize>,
    pub is_zero: bool,
}

/// Replace each variable of degree `k` in `Z_q` (`k > 1`) by a product of `k` fresh
/// degree-one variables. Returns the lifted polynomial and the fresh indices per variable.
pub fn lift_to_unit_degrees(f: &MultilinearPoly) -> Result<(MultilinearPoly, BTreeMap<u32, Vec<u32>>), FreeError> {
    let q = f.group().cyclic_order().filter(|&q| q >= 2).ok_or_else(|| FreeError::WrongShape("needs a finite cyclic group".into()))?;
    let f = f.to_assoc();
    let g = f.group().clone();
    let mut next = f.vars().iter().map(|v| v.index).max().unwrap_or(0) + 1;
    let mut subst: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    let mut vars = Vec::new();
    for v in f.vars() {
        let k = v.degree.coords()[0] as u64;
        if k <= 1 {
            subst.insert(v.index, vec![v.index]);
            vars.push(v.clone());
        } else {
            let mut fresh = vec![v.index];
            vars.push(VarDecl { index: v.index, degree: g.of(1) });
            for _ in 1..k {
                fresh.push(next);
                vars.push(VarDecl { index: next, degree: g.of(1) });
                next += 1;
            }
            subst.insert(v.index, fresh);
        }
    }
    let _ = q;
    let terms = f.terms().map(|(m, c)| {
        let Monomial::Word(w) = m else { unreachable!() };
        (Monomial::Word(w.iter().flat_map(|v| subst[v].iter().copied()).collect()), c.clone())
    });
    Ok((MultilinearPoly::new(ProductKind::Assoc, f.domain(), g, vars, terms.collect::<Vec<_>>())?, subst))
}

/// Rewrite `f` modulo `[y1,y2] z = 0` and `z1 z2 = 0` (degrees summing to zero) and
/// extract the trailing polynomials of every odd ordering and prefix split.
///
/// Variables must have degree `0` or `1` in `Z_q` with `q` the grading order of `alg`.
pub fn zq_decompose(f: &MultilinearPoly, alg: &GradedAlgebra) -> Result<ZqDecomposition, FreeError> {
    let q = alg.step_q().ok_or_else(|| FreeError::WrongShape(alloc::format!("{alg} does not carry the step grading")))?;
    if f.kind() != ProductKind::Assoc {
        return Err(FreeError::KindMismatch { poly: f.kind(), algebra: ProductKind::Assoc });
    }
    let group = alg.group().clone();
    let ungraded = f.group().is_trivial();
    if !ungraded && *f.group() != group {
        return Err(FreeError::WrongShape(alloc::format!("variable degrees live in {}, the algebra in {group}", f.group())));
    }
    let is_odd = |v: &VarDecl| !ungraded && !v.degree.is_identity();
    if let Some(v) = f.vars().iter().find(|v| is_odd(v) && v.degree != group.of(1)) {
        return Err(FreeError::WrongShape(alloc::format!("variable x{} has degree {}, expected 0 or 1", v.index, v.degree)));
    }
    let odd: BTreeSet<u32> = f.vars().iter().filter(|v| is_odd(v)).map(|v| v.index).collect();
    let l = odd.len();
    let d = f.domain();
    let mut reduced_terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
    // (odd order, prefixes) -> trailing words
    let mut groups: BTreeMap<(Vec<u32>, Vec<Vec<u32>>), BTreeMap<Vec<u32>, Scalar>> = BTreeMap::new();
    // l odd degree-one factors cannot multiply to a nonzero element once l >= q
    let vanishes = l as u64 >= q;
    if !vanishes {
        for (m, c) in f.terms() {
            let Monomial::Word(w) = m else { unreachable!() };
            let mut prefixes = Vec::with_capacity(l);
            let mut order = Vec::with_capacity(l);
            let mut cur = Vec::new();
            for &v in w {
                if odd.contains(&v) {
                    cur.sort_unstable();
                    prefixes.push(core::mem::take(&mut cur));
                    order.push(v);
                } else {
                    cur.push(v);
                }
            }
            let trailing = cur;
            let mut word = Vec::with_capacity(w.len());
            for (p, z) in prefixes.iter().zip(&order) {
                word.extend_from_slice(p);
                word.push(*z);
            }
            word.extend_from_slice(&trailing);
            push_term(&mut reduced_terms, Monomial::Word(word), c.clone());
            let slot = groups.entry((order, prefixes)).or_default();
            match slot.get_mut(&trailing) {
                Some(x) => *x = &*x + c,
                None => {
                    slot.insert(trailing, c.clone());
                }
            }
        }
    }
    let reduced = MultilinearPoly::new(ProductKind::Assoc, d, f.group().clone(), f.vars().to_vec(), reduced_terms)?;
    let mut parts = Vec::new();
    for ((odd_order, prefixes), words) in groups {
        let words: Vec<(Vec<u32>, Scalar)> = words.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        if words.is_empty() {
            continue;
        }
        let trailing_vars: Vec<u32> = {
            let mut t = words[0].0.clone();
            t.sort_unstable();
            t
        };
        let tg = Group::trivial();
        let g = MultilinearPoly::new(
            ProductKind::Assoc,
            d,
            tg.clone(),
            trailing_vars.iter().map(|&i| VarDecl { index: i, degree: tg.identity() }).collect(),
            words.into_iter().map(|(w, c)| (Monomial::Word(w), c)),
        )?;
        let commutator_degree = if g.var_count() == 0 {
            0
        } else {
            crate::analysis::commutator_degree(&g).map_err(|e| FreeError::WrongShape(e.to_string()))?
        };
        parts.push(TrailingPart { odd_order, prefixes, g, commutator_degree });
    }
    let r = parts.iter().map(|p| p.commutator_degree).min();
    let is_zero = reduced.is_zero();
    Ok(ZqDecomposition { odd_count: l, reduced, parts, r, is_zero })
}

// ---------------------------------------------------------------------------
// Random generation

/// Parameters for seeded random polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpec {
    pub kind: ProductKind,
    pub group: Group,
    /// Degree of each variable `x1..xm`.
    pub degrees: Vec<GroupElement>,
    /// Nonzero coefficients to draw from.
    pub pool: Vec<i64>,
    pub max_terms: usize,
}

impl RandomSpec {
    pub fn ungraded(kind: ProductKind, m: usize) -> Self {
        RandomSpec {
            kind,
            group: Group::trivial(),
            degrees: vec![Group::trivial().identity(); m],
            pool: vec![-2, -1, 1, 2],
            max_terms: 4,
        }
    }

    fn vars(&self) -> Vec<VarDecl> {
        self.degrees.iter().enumerate().map(|(k, d)| VarDecl { index: k as u32 + 1, degree: d.clone() }).collect()
    }
}

fn random_tree<R: Rng>(rng: &mut R, leaves: &[u32]) -> Tree {
    if leaves.len() == 1 {
        return Tree::Leaf(leaves[0]);
    }
    let cut = rng.random_range(1..leaves.len());
    Tree::node(random_tree(rng, &leaves[..cut]), random_tree(rng, &leaves[cut..]))
}

fn random_monomial<R: Rng>(rng: &mut R, kind: ProductKind, m: usize) -> Monomial {
    let mut perm: Vec<u32> = (1..=m as u32).collect();
    perm.shuffle(rng);
    match kind {
        ProductKind::Assoc => Monomial::Word(perm),
        _ => Monomial::Tree(random_tree(rng, &perm)),
    }
}

/// Deterministic pseudorandom nonzero multilinear polynomial.
pub fn random_poly(seed: u64, spec: &RandomSpec, domain: Domain) -> MultilinearPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = spec.degrees.len();
    assert!(m >= 1, "at least one variable");
    loop {
        let t = rng.random_range(1..=spec.max_terms.max(1));
        let raw: Vec<(Monomial, Scalar)> = (0..t)
            .map(|_| {
                let mono = random_monomial(&mut rng, spec.kind, m);
                let c = spec.pool[rng.random_range(0..spec.pool.len())];
                (mono, Scalar::from_i64(domain, c))
            })
            .collect();
        let f = MultilinearPoly::new(spec.kind, domain, spec.group.clone(), spec.vars(), raw).expect("well-formed random terms");
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random associative polynomial built from products of blocks, where blocks of two
/// neutral variables are often commutators. Such polynomials hit positive commutator
/// degrees far more often than uniform words.
pub fn random_commutator_poly(seed: u64, spec: &RandomSpec, domain: Domain) -> MultilinearPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x00c0_77a7);
    let m = spec.degrees.len();
    assert!(m >= 1, "at least one variable");
    let neutral: Vec<bool> = spec.degrees.iter().map(|d| d.is_identity()).collect();
    loop {
        let t = rng.random_range(1..=spec.max_terms.clamp(1, 3));
        let mut raw: Vec<(Monomial, Scalar)> = Vec::new();
        for _ in 0..t {
            let c = Scalar::from_i64(domain, spec.pool[rng.random_range(0..spec.pool.len())]);
            let mut perm: Vec<u32> = (1..=m as u32).collect();
            perm.shuffle(&mut rng);
            // blocks: single variables or commutators of two neutral ones
            let mut blocks: Vec<Vec<(Vec<u32>, i64)>> = Vec::new();
            let mut k = 0;
            while k < perm.len() {
                let a = perm[k];
                if k + 1 < perm.len()
                    && neutral[a as usize - 1]
                    && neutral[perm[k + 1] as usize - 1]
                    && rng.random_bool(0.6)
                {
                    let b = perm[k + 1];
                    blocks.push(vec![(vec![a, b], 1), (vec![b, a], -1)]);
                    k += 2;
                } else {
                    blocks.push(vec![(vec![a], 1)]);
                    k += 1;
                }
            }
            let mut words: Vec<(Vec<u32>, i64)> = vec![(Vec::new(), 1)];
            for b in blocks {
                let mut next = Vec::with_capacity(words.len() * b.len());
                for (w, s) in &words {
                    for (bw, bs) in &b {
                        let mut x = w.clone();
                        x.extend_from_slice(bw);
                        next.push((x, s * bs));
                    }
                }
                words = next;
            }
            for (w, s) in words {
                raw.push((Monomial::Word(w), if s < 0 { -&c } else { c.clone() }));
            }
        }
        let f = MultilinearPoly::new(ProductKind::Assoc, domain, spec.group.clone(), spec.vars(), raw).expect("well-formed random terms");
        if !f.is_zero() {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Grading, Species};

    const GF7: Domain = Domain::Prime(7);

    fn assoc(text: &str) -> MultilinearPoly {
        MultilinearPoly::parse(text, ProductKind::Assoc, GF7, Group::trivial(), &[]).unwrap()
    }

    #[test]
    fn parse_assoc_and_round_trip() {
        let f = assoc("x1*x2 - x2*x1");
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.to_string(), "x1*x2 - x2*x1");
        assert_eq!(assoc(&f.to_string()), f);
        assert_eq!(assoc("[x1,x2]"), f);
        let g = assoc("2*x1 x2 x3 - 3 * x3*x2*x1");
        assert_eq!(assoc(&g.to_string()), g);
    }

    #[test]
    fn jordan_associator() {
        let f = MultilinearPoly::parse("(x1 x2) x3 - x1 (x2 x3)", ProductKind::Jordan, GF7, Group::trivial(), &[]).unwrap();
        let g = MultilinearPoly::parse("(x1,x2,x3)", ProductKind::Jordan, GF7, Group::trivial(), &[]).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.num_terms(), 2);
        // left-normed without parentheses and commutativity at storage time
        let h = MultilinearPoly::parse("x1 x2 x3", ProductKind::Jordan, GF7, Group::trivial(), &[]).unwrap();
        let k = MultilinearPoly::parse("x3 (x2 x1)", ProductKind::Jordan, GF7, Group::trivial(), &[]).unwrap();
        assert_eq!(h, k);
        let back = MultilinearPoly::parse(&f.to_string(), ProductKind::Jordan, GF7, Group::trivial(), &[]).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn lie_canonical_sign() {
        let p = |s: &str| MultilinearPoly::parse(s, ProductKind::Lie, GF7, Group::trivial(), &[]).unwrap();
        assert_eq!(p("[x2,x1]"), p("-[x1,x2]"));
        assert!(p("[x1,x2] + [x2,x1]").is_zero());
        let f = p("[[x1,x2],x3]");
        assert_eq!(p(&f.to_string()), f);
        assert!(matches!(
            MultilinearPoly::parse("x1*x2", ProductKind::Lie, GF7, Group::trivial(), &[]),
            Err(FreeError::BadBracketing(_))
        ));
    }

    #[test]
    fn parse_errors() {
        let e = |s: &str| MultilinearPoly::parse(s, ProductKind::Assoc, GF7, Group::trivial(), &[]).unwrap_err();
        assert!(matches!(e("x1*x1"), FreeError::NotMultilinear(_)));
        assert!(matches!(e("x1*x2 + x1"), FreeError::NotMultilinear(_)));
        assert!(matches!(e("x1 + 3"), FreeError::NotMultilinear(_)));
        assert!(matches!(e("[x1,x2"), FreeError::BadBracketing(_)));
        assert!(matches!(e("x1 $ x2"), FreeError::Parse(_)));
        let z3 = Group::cyclic(3);
        let err = MultilinearPoly::parse("x1*x2", ProductKind::Assoc, GF7, z3.clone(), &[(1, z3.of(0))]).unwrap_err();
        assert!(matches!(err, FreeError::UnknownVariable(_)));
    }

    #[test]
    fn file_line_round_trip() {
        let f = MultilinearPoly::parse_line("kind=assoc; deg x1=0, x2=1 in Z3; f = x1*x2 - x2*x1", GF7).unwrap();
        assert_eq!(f.to_string(), "y1*z2 - z2*y1");
        assert_eq!(f.to_line(), "kind=assoc; deg x1=0, x2=1 in Z3; f = y1*z2 - z2*y1");
        assert_eq!(MultilinearPoly::parse_line(&f.to_line(), GF7).unwrap(), f);
        let j = MultilinearPoly::parse_line("kind=jordan; f = ((x1 x2) x3)", GF7).unwrap();
        assert_eq!(j.kind(), ProductKind::Jordan);
        let p = MultilinearPoly::parse_line("kind=assoc; deg x1=(1,0), x2=(0,1) in ZxZ; f = x1 x2", GF7).unwrap();
        assert_eq!(p.degree().coords(), &[1, 1]);
    }

    #[test]
    fn expand_lie_examples() {
        let p = |s: &str| MultilinearPoly::parse(s, ProductKind::Lie, GF7, Group::trivial(), &[]).unwrap();
        assert_eq!(p("[x1,x2]").expand_lie().unwrap(), assoc("x1*x2 - x2*x1"));
        assert_eq!(p("[[x1,x2],x3]").expand_lie().unwrap(), assoc("x1*x2*x3 - x2*x1*x3 - x3*x1*x2 + x3*x2*x1"));
        assert_eq!(p("x1").expand_lie().unwrap(), assoc("x1"));
    }

    #[test]
    fn coefficient_sums() {
        assert!(assoc("[x1,x2]").coefficient_sum().is_zero());
        assert!(assoc("x1*x2").coefficient_sum().is_one());
        assert!(assoc("x1*x2*x3 - x3*x2*x1").coefficient_sum().is_zero());
    }

    #[test]
    fn split_sums() {
        let set = |xs: &[u32]| xs.iter().copied().collect::<BTreeSet<u32>>();
        let t = assoc("x1*x2").z_split_sums(2).unwrap();
        assert!(t[&set(&[1])].is_one());
        assert!(t[&set(&[])].is_zero());
        let t = assoc("[x1,x2]").z_split_sums(2).unwrap();
        assert!(t[&set(&[1])].is_one());
        assert_eq!(t[&set(&[])], Scalar::from_i64(GF7, -1));
        let t = assoc("[[x1,x2],x3]").z_split_sums(3).unwrap();
        assert!(t.values().all(Scalar::is_zero));
    }

    #[test]
    fn evaluation_examples() {
        let d = GF7;
        let e = |n: usize, i: usize, j: usize| Matrix::unit(n, d, i - 1, j - 1);
        let ut2 = GradedAlgebra::trivial(Species::UT(2), d).unwrap();
        assert_eq!(assoc("[x1,x2]").evaluate(&[e(2, 1, 1), e(2, 1, 2)], &ut2).unwrap(), e(2, 1, 2));
        let uj2 = GradedAlgebra::trivial(Species::UJ(2), d).unwrap();
        let j = MultilinearPoly::parse("x1 x2", ProductKind::Jordan, d, Group::trivial(), &[]).unwrap();
        assert_eq!(j.evaluate(&[e(2, 1, 1), e(2, 1, 1)], &uj2).unwrap(), e(2, 1, 1).scale(&Scalar::from_i64(d, 2)));
        let z = Group::integers();
        let nat = GradedAlgebra::new(Species::UT(2), Grading::natural_integers(2), d).unwrap();
        let f = MultilinearPoly::parse("z3*y1*y2 - z3*y2*y1", ProductKind::Assoc, d, z.clone(), &[(1, z.of(0)), (2, z.of(0)), (3, z.of(1))]).unwrap();
        assert!(f.evaluate(&[e(2, 2, 2), e(2, 2, 2), e(2, 1, 2)], &nat).unwrap().is_zero());
        assert!(matches!(f.evaluate(&[e(2, 1, 2), e(2, 2, 2), e(2, 1, 2)], &nat), Err(FreeError::DegreeMismatch { .. })));
        assert!(matches!(j.evaluate(&[e(2, 1, 1), e(2, 1, 1)], &ut2), Err(FreeError::KindMismatch { .. })));
    }

    #[test]
    fn random_is_deterministic() {
        let spec = RandomSpec { pool: vec![-1, 1], max_terms: 2, ..RandomSpec::ungraded(ProductKind::Assoc, 2) };
        let f = random_poly(1, &spec, GF7);
        assert_eq!(f, random_poly(1, &spec, GF7));
        assert!(f.terms().all(|(_, c)| c.is_one() || *c == Scalar::from_i64(GF7, -1)));
        let js = RandomSpec::ungraded(ProductKind::Jordan, 3);
        let j = random_poly(9, &js, GF7);
        assert_eq!(j.kind(), ProductKind::Jordan);
        for (m, _) in j.terms() {
            let mut l = m.variables();
            l.sort();
            assert_eq!(l, vec![1, 2, 3]);
        }
        let c = random_commutator_poly(3, &RandomSpec::ungraded(ProductKind::Assoc, 4), GF7);
        assert_eq!(c, random_commutator_poly(3, &RandomSpec::ungraded(ProductKind::Assoc, 4), GF7));
    }
}
