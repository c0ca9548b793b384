//! Library results checked against a small independent implementation: plain
//! `u64` matrices mod p, hand-built homogeneous bases and naive rank.

use graded_image_core::algebra::{GradedAlgebra, Grading, MirrorCase, Species};
use graded_image_core::analysis::{commutator_degree, is_graded_identity, span_of_image};
use graded_image_core::group::Group;
use graded_image_core::matrix::{Matrix, ProductKind};
use graded_image_core::multilinear::{random_poly, Monomial, MultilinearPoly, RandomSpec, Tree};
use graded_image_core::scalar::{Domain, Scalar};

type M = Vec<Vec<u64>>;

struct Field(u64);

impl Field {
    fn zero(&self, n: usize) -> M {
        vec![vec![0; n]; n]
    }
    fn unit(&self, n: usize, i: usize, j: usize) -> M {
        let mut m = self.zero(n);
        m[i][j] = 1;
        m
    }
    fn add(&self, a: &M, b: &M) -> M {
        a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x + y) % self.0).collect()).collect()
    }
    fn scale(&self, a: &M, c: u64) -> M {
        a.iter().map(|r| r.iter().map(|x| x * c % self.0).collect()).collect()
    }
    fn mul(&self, a: &M, b: &M) -> M {
        let n = a.len();
        let mut out = self.zero(n);
        for i in 0..n {
            for k in 0..n {
                if a[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % self.0;
                }
            }
        }
        out
    }
    fn product(&self, kind: ProductKind, a: &M, b: &M) -> M {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        match kind {
            ProductKind::Assoc => ab,
            ProductKind::Jordan => self.add(&ab, &ba),
            ProductKind::Lie => self.add(&ab, &self.scale(&ba, self.0 - 1)),
        }
    }
    fn inv(&self, x: u64) -> u64 {
        let mut r = 1;
        let mut b = x % self.0;
        let mut e = self.0 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.0;
            }
            b = b * b % self.0;
            e >>= 1;
        }
        r
    }
    fn rank(&self, rows: &[Vec<u64>]) -> usize {
        let mut a: Vec<Vec<u64>> = rows.to_vec();
        let cols = a.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, p);
            let inv = self.inv(a[r][c]);
            for i in 0..a.len() {
                if i != r && a[i][c] != 0 {
                    let f = a[i][c] * inv % self.0;
                    for j in 0..cols {
                        a[i][j] = (a[i][j] + self.0 - f * a[r][j] % self.0) % self.0;
                    }
                }
            }
            r += 1;
        }
        r
    }
}

fn residue(c: &Scalar) -> u64 {
    c.residue().expect("prime field")
}

fn eval_tree(fd: &Field, kind: ProductKind, t: &Tree, args: &dyn Fn(u32) -> M) -> M {
    match t {
        Tree::Leaf(v) => args(*v),
        Tree::Node(a, b) => fd.product(kind, &eval_tree(fd, kind, a, args), &eval_tree(fd, kind, b, args)),
    }
}

fn oracle_eval(fd: &Field, f: &MultilinearPoly, n: usize, args: &[M]) -> M {
    let pos = |v: u32| f.vars().iter().position(|d| d.index == v).unwrap();
    let get = |v: u32| args[pos(v)].clone();
    let mut acc = fd.zero(n);
    for (m, c) in f.terms() {
        let val = match m {
            Monomial::Word(w) => w.iter().skip(1).fold(get(w[0]), |p, &v| fd.mul(&p, &get(v))),
            Monomial::Tree(t) => eval_tree(fd, f.kind(), t, &get),
        };
        acc = fd.add(&acc, &fd.scale(&val, residue(c)));
    }
    acc
}

/// Rank of the values of `f` over the cartesian product of the given slot bases.
fn oracle_values(fd: &Field, f: &MultilinearPoly, n: usize, bases: &[Vec<M>]) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut key = vec![0usize; bases.len()];
    if bases.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let args: Vec<M> = key.iter().zip(bases).map(|(&k, b)| b[k].clone()).collect();
        out.push(oracle_eval(fd, f, n, &args).concat());
        let mut t = key.len();
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            key[t] += 1;
            if key[t] < bases[t].len() {
                break;
            }
            key[t] = 0;
        }
    }
}

fn flatten(m: &Matrix) -> Vec<u64> {
    m.entries().iter().map(residue).collect()
}

/// Span of the library equals the span of the oracle values.
fn assert_same_span(fd: &Field, f: &MultilinearPoly, alg: &GradedAlgebra, bases: &[Vec<M>]) {
    let n = alg.size();
    let ours = oracle_values(fd, f, n, bases);
    let span = span_of_image(f, alg).unwrap();
    let lib: Vec<Vec<u64>> = span.basis().iter().map(flatten).collect();
    let r_ours = fd.rank(&ours);
    assert_eq!(r_ours, span.dim(), "{} on {alg}", f.to_line());
    let mut both = ours;
    both.extend(lib);
    assert_eq!(fd.rank(&both), r_ours, "{} on {alg}", f.to_line());
}

/// Unit bases of an elementary grading given by the degrees of the superdiagonal
/// units in `Z_q` (`q = 0` for the integers).
fn elementary_bases(n: usize, q: i64, edges: &[i64], lower: bool) -> Vec<(i64, Vec<M>)> {
    let fd = Field(2);
    let norm = |x: i64| if q == 0 { x } else { x.rem_euclid(q) };
    let mut out: Vec<(i64, Vec<M>)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if (lower && i < j) || (!lower && i > j) {
                continue;
            }
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            let s: i64 = edges[a..b].iter().sum();
            let g = norm(if i <= j { s } else { -s });
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some((_, v)) => v.push(fd.unit(n, i, j)),
                None => out.push((g, vec![fd.unit(n, i, j)])),
            }
        }
    }
    out
}

fn basis_of(table: &[(i64, Vec<M>)], g: i64) -> Vec<M> {
    table.iter().find(|(h, _)| *h == g).map(|(_, b)| b.clone()).unwrap_or_default()
}

#[test]
fn commutator_degree_against_unit_enumeration() {
    let p = 5;
    let fd = Field(p);
    let d = Domain::Prime(p);
    let cases = [("x1", 0), ("[x1,x2]", 1), ("[x1,x2]*[x3,x4]", 2), ("x1*x2", 0), ("[x1,x2]*x3", 1), ("[[x1,x2],x3]", 1)];
    for (text, want) in cases {
        let f = MultilinearPoly::parse(text, ProductKind::Assoc, d, Group::trivial(), &[]).unwrap();
        // identity of UT_k iff all unit tuples vanish
        let mut r = 0;
        for k in 1..=4 {
            let units = elementary_bases(k, 1, &vec![0; k.saturating_sub(1)], false);
            let bases = vec![basis_of(&units, 0); f.var_count()];
            if oracle_values(&fd, &f, k, &bases).iter().all(|v| v.iter().all(|&x| x == 0)) {
                r = k;
            } else {
                break;
            }
        }
        assert_eq!(r, want, "{text}");
        assert_eq!(commutator_degree(&f).unwrap(), want, "{text}");
    }
}

#[test]
fn trivial_triangular_spans() {
    let p = 7;
    let fd = Field(p);
    let d = Domain::Prime(p);
    for n in 2..=4 {
        let alg = GradedAlgebra::trivial(Species::UT(n), d).unwrap();
        let units = elementary_bases(n, 1, &vec![0; n - 1], false);
        for seed in 0..40 {
            let m = 1 + seed as usize % 3;
            let f = random_poly(seed, &RandomSpec::ungraded(ProductKind::Assoc, m), d);
            assert_same_span(&fd, &f, &alg, &vec![basis_of(&units, 0); m]);
        }
    }
}

#[test]
fn elementary_graded_spans() {
    let p = 11;
    let fd = Field(p);
    let d = Domain::Prime(p);
    let cases: [(usize, i64, &[i64]); 5] =
        [(4, 2, &[1, 0, 0]), (4, 3, &[1, 1, 0]), (4, 3, &[1, 2, 2]), (3, 0, &[1, 1]), (4, 4, &[1, 1, 1])];
    for (n, q, edges) in cases {
        let group = if q == 0 { Group::integers() } else { Group::cyclic(q as u64) };
        let grading = Grading::Elementary { group: group.clone(), degrees: edges.iter().map(|&e| group.of(e)).collect() };
        let alg = GradedAlgebra::new(Species::UT(n), grading, d).unwrap();
        let table = elementary_bases(n, q, edges, false);
        let support: Vec<i64> = table.iter().map(|(g, _)| *g).collect();
        for seed in 0..40u64 {
            let m = 1 + seed as usize % 4;
            let degs: Vec<i64> = (0..m).map(|k| support[(seed as usize + 3 * k) % support.len()]).collect();
            let spec = RandomSpec {
                kind: ProductKind::Assoc,
                group: group.clone(),
                degrees: degs.iter().map(|&g| group.of(g)).collect(),
                pool: vec![-1, 1, 2],
                max_terms: 3,
            };
            let f = random_poly(seed, &spec, d);
            let bases: Vec<Vec<M>> = degs.iter().map(|&g| basis_of(&table, g)).collect();
            assert_same_span(&fd, &f, &alg, &bases);
        }
    }
}

#[test]
fn lower_triangular_spans() {
    let p = 7;
    let fd = Field(p);
    let d = Domain::Prime(p);
    let alg = GradedAlgebra::new(Species::LT(3), Grading::natural_cyclic(3, 3), d).unwrap();
    let table = elementary_bases(3, 3, &[1, 1], true);
    let group = Group::cyclic(3);
    for seed in 0..30u64 {
        let degs: Vec<i64> = (0..3).map(|k| ((seed as i64 + k) % 3) * ((seed as i64 >> 2) & 1)).collect();
        let spec = RandomSpec {
            kind: ProductKind::Assoc,
            group: group.clone(),
            degrees: degs.iter().map(|&g| group.of(g)).collect(),
            pool: vec![-1, 1],
            max_terms: 3,
        };
        let f = random_poly(seed, &spec, d);
        let bases: Vec<Vec<M>> = degs.iter().map(|&g| basis_of(&table, g)).collect();
        assert_same_span(&fd, &f, &alg, &bases);
    }
}

#[test]
fn jordan_mirror_spans() {
    let p = 7;
    let fd = Field(p);
    let d = Domain::Prime(p);
    let id = vec![vec![1, 0], vec![0, 1]];
    let h = vec![vec![1, 0], vec![0, p - 1]];
    let e12 = vec![vec![0, 1], vec![0, 0]];
    let cases: [(MirrorCase, Group, Vec<(Vec<i64>, Vec<M>)>); 3] = [
        (MirrorCase::IIa, Group::cyclic(2), vec![(vec![0], vec![id.clone()]), (vec![1], vec![h.clone(), e12.clone()])]),
        (MirrorCase::IIb, Group::cyclic(2), vec![(vec![0], vec![id.clone(), e12.clone()]), (vec![1], vec![h.clone()])]),
        (
            MirrorCase::IIc,
            Group::product(&[2, 2]),
            vec![(vec![0, 0], vec![id.clone()]), (vec![0, 1], vec![e12.clone()]), (vec![1, 0], vec![h.clone()])],
        ),
    ];
    for (case, group, table) in cases {
        let alg = GradedAlgebra::new(Species::UJ(2), Grading::Mirror(case), d).unwrap();
        for seed in 0..40u64 {
            let m = 1 + seed as usize % 4;
            let picks: Vec<usize> = (0..m).map(|k| (seed as usize * 5 + k * 7) % table.len()).collect();
            let spec = RandomSpec {
                kind: ProductKind::Jordan,
                group: group.clone(),
                degrees: picks.iter().map(|&k| group.elem(&table[k].0).unwrap()).collect(),
                pool: vec![-1, 1, 3],
                max_terms: 3,
            };
            let f = random_poly(seed, &spec, d);
            let bases: Vec<Vec<M>> = picks.iter().map(|&k| table[k].1.clone()).collect();
            assert_same_span(&fd, &f, &alg, &bases);
        }
    }
}

#[test]
fn lie_and_jordan_unit_spans() {
    let p = 101;
    let fd = Field(p);
    let d = Domain::Prime(p);
    let uj3 = GradedAlgebra::new(Species::UJ(3), Grading::natural_cyclic(3, 3), d).unwrap();
    let table = elementary_bases(3, 3, &[1, 1], false);
    let z3 = Group::cyclic(3);
    for seed in 0..30u64 {
        let m = 1 + seed as usize % 4;
        let degs: Vec<i64> = (0..m).map(|k| ((seed as usize + k) % 3) as i64).collect();
        let spec = RandomSpec {
            kind: ProductKind::Jordan,
            group: z3.clone(),
            degrees: degs.iter().map(|&g| z3.of(g)).collect(),
            pool: vec![-1, 1],
            max_terms: 3,
        };
        let f = random_poly(seed, &spec, d);
        let bases: Vec<Vec<M>> = degs.iter().map(|&g| basis_of(&table, g)).collect();
        assert_same_span(&fd, &f, &uj3, &bases);
    }
    let lie = GradedAlgebra::trivial(Species::UTLie(3), d).unwrap();
    let units = elementary_bases(3, 1, &[0, 0], false);
    for seed in 0..30u64 {
        let m = 2 + seed as usize % 3;
        let f = random_poly(seed, &RandomSpec::ungraded(ProductKind::Lie, m), d);
        assert_same_span(&fd, &f, &lie, &vec![basis_of(&units, 0); m]);
    }
}

#[test]
fn identity_witness_is_first_nonzero_tuple() {
    let d = Domain::Prime(7);
    let fd = Field(7);
    let alg = GradedAlgebra::trivial(Species::UT(3), d).unwrap();
    let f = MultilinearPoly::parse("[x1,x2]*x3", ProductKind::Assoc, d, Group::trivial(), &[]).unwrap();
    let (args, value) = is_graded_identity(&f, &alg).unwrap().witness.unwrap();
    let ours: Vec<M> = args.iter().map(|a| (0..3).map(|i| (0..3).map(|j| residue(a.get(i, j))).collect()).collect()).collect();
    assert_eq!(oracle_eval(&fd, &f, 3, &ours).concat(), flatten(&value));
    assert!(!value.is_zero());
}
