//! Basis-independent fingerprints, explicit isomorphism checks and pairwise
//! distinctness reports.
//!
//! Every component is computed from characteristic subspaces: the powers
//! `A^i`, the three annihilators, and `W_k = {x : x∘A + A∘x ⊆ A^k}`. The
//! product table `dim(U∘V)` over those subspaces is what separates `F_n^2`
//! from `F_n^3`; the annihilator dimensions alone do not.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::Algebra;
use num_traits::Zero;

use crate::linalg::{Matrix, Subspace, Q};
use crate::symbolic::template::{first_defect, images_from_generators, small_rational};
use crate::ring::ColMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("algebra `{0}` is not nilpotent")]
    NotNilpotent(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub power_dims: Vec<usize>,
    pub ann_dim: usize,
    pub left_ann_dim: usize,
    pub right_ann_dim: usize,
    /// `dim A^i/A^{i+1}`.
    pub graded_dims: Vec<usize>,
    /// `dim W_k` for `k = 1, …, nilpotency index`.
    pub w_chain_dims: Vec<usize>,
    /// `dim(U∘V)` keyed by `"U∘V"` over the named characteristic subspaces.
    pub char_products: BTreeMap<String, usize>,
    /// Closure of the named subspaces under characteristic operations.
    pub lattice: Lattice,
    pub der_dim: usize,
    /// `dim` of `D^{(1)}, D^{(2)}, …` for `D = Der(A)`.
    pub der_derived: Vec<usize>,
    /// `dim` of `[D, D], [D, [D, D]], …`.
    pub der_lower: Vec<usize>,
    pub der_centre_dim: usize,
    /// `(dim, dim of derived algebra)` of `Der(A)` acting on `A^k/A^{k+1}`.
    pub der_graded: Vec<(usize, usize)>,
}

/// Operations that send characteristic subspaces to characteristic subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// `U∘V`.
    Product,
    /// `span{u∘v + v∘u}`.
    Sym,
    /// `span{u∘v - v∘u}`.
    Anti,
    /// `{x : x∘U ⊆ V}`.
    LeftColon,
    /// `{x : U∘x ⊆ V}`.
    RightColon,
    Sum,
    Meet,
}

const OPS: [Op; 7] = [Op::Product, Op::Sym, Op::Anti, Op::LeftColon, Op::RightColon, Op::Sum, Op::Meet];

/// Subspaces in discovery order with their dimensions, and for each
/// `(op, i, j)` the index of the result. Discovery depends only on the
/// operations and subspace equality, so the whole record is an invariant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Lattice {
    pub dims: Vec<usize>,
    pub table: Vec<(Op, usize, usize, usize)>,
}

/// Seeds plus `rounds` passes of every operation over every ordered pair,
/// stopping early at `cap` subspaces.
pub fn lattice(a: &Algebra, seeds: &[Subspace], rounds: usize, cap: usize) -> Lattice {
    let mut found: Vec<Subspace> = Vec::new();
    let index = |found: &mut Vec<Subspace>, s: Subspace| match found.iter().position(|t| *t == s) {
        Some(i) => i,
        None => {
            found.push(s);
            found.len() - 1
        }
    };
    for s in seeds {
        index(&mut found, s.clone());
    }
    let mut table = Vec::new();
    let mut done = 0;
    for _ in 0..rounds {
        let k = found.len();
        if k == done {
            break;
        }
        'pairs: for i in 0..k {
            for j in 0..k {
                if i < done && j < done {
                    continue;
                }
                for op in OPS {
                    if found.len() >= cap {
                        break 'pairs;
                    }
                    let r = apply(a, op, &found[i], &found[j]);
                    let idx = index(&mut found, r);
                    table.push((op, i, j, idx));
                }
            }
        }
        done = k;
    }
    Lattice { dims: found.iter().map(Subspace::dim).collect(), table }
}

fn apply(a: &Algebra, op: Op, u: &Subspace, v: &Subspace) -> Subspace {
    let n = a.dim();
    let pairs = |sign: i64| {
        let mut vecs = Vec::new();
        for x in u.basis() {
            for y in v.basis() {
                let p = a.product(x, y).expect("ambient");
                let q = a.product(y, x).expect("ambient");
                vecs.push(p.iter().zip(&q).map(|(p, q)| p + q * Q::from_integer(sign.into())).collect::<Vec<Q>>());
            }
        }
        Subspace::span(n, vecs)
    };
    match op {
        Op::Product => a.product_space(u, v),
        Op::Sym => pairs(1),
        Op::Anti => pairs(-1),
        Op::LeftColon | Op::RightColon => colon(a, u, v, op == Op::LeftColon),
        Op::Sum => u.sum(v).expect("ambient"),
        Op::Meet => u.intersect(v).expect("ambient"),
    }
}

/// `{x : x∘U ⊆ S}` (left) or `{x : U∘x ⊆ S}`.
fn colon(a: &Algebra, u: &Subspace, s: &Subspace, left: bool) -> Subspace {
    let n = a.dim();
    let mut rows = Vec::new();
    for f in s.orthogonal().basis() {
        for y in u.basis() {
            let row: Vec<Q> = (0..n)
                .map(|i| {
                    let e = crate::linalg::unit(n, i);
                    let p = if left { a.product(&e, y) } else { a.product(y, &e) }.expect("ambient");
                    crate::ring::dot(f, &p)
                })
                .collect();
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Matrix::from_rows(rows, n).expect("n columns").kernel_basis()
}

/// A basis of `Der(A)`, maps `D` with `D(x∘y) = D(x)∘y + x∘D(y)`, as
/// `n × n` matrices acting on columns.
pub fn derivations(a: &Algebra) -> Vec<Matrix> {
    let n = a.dim();
    let var = |k: usize, i: usize| k * n + i;
    let mut ech = crate::linalg::Echelon::new(n * n);
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                let mut row = vec![Q::zero(); n * n];
                for (k, c) in a.basis_product(i, j) {
                    row[var(m, *k)] += c;
                }
                for k in 0..n {
                    for (t, c) in a.basis_product(k, j) {
                        if *t == m {
                            row[var(k, i)] -= c;
                        }
                    }
                    for (t, c) in a.basis_product(i, k) {
                        if *t == m {
                            row[var(k, j)] -= c;
                        }
                    }
                }
                ech.insert(&row);
            }
        }
    }
    ech.kernel()
        .basis()
        .iter()
        .map(|v| Matrix::from_rows(v.chunks(n).map(<[Q]>::to_vec).collect(), n).expect("n × n"))
        .collect()
}

fn flat(m: &Matrix) -> Vec<Q> {
    m.to_rows().concat()
}

fn bracket(x: &Matrix, y: &Matrix) -> Matrix {
    let a = x.mul(y).expect("square");
    let b = y.mul(x).expect("square");
    let rows = a.to_rows().iter().zip(b.to_rows()).map(|(r, s)| r.iter().zip(&s).map(|(p, q)| p - q).collect()).collect();
    Matrix::from_rows(rows, x.cols()).expect("square")
}

fn span_of(n: usize, ms: &[Matrix]) -> Vec<Matrix> {
    let s = Subspace::span(n * n, ms.iter().map(flat));
    s.basis().iter().map(|v| Matrix::from_rows(v.chunks(n).map(<[Q]>::to_vec).collect(), n).expect("n × n")).collect()
}

fn brackets(n: usize, xs: &[Matrix], ys: &[Matrix]) -> Vec<Matrix> {
    let all: Vec<Matrix> = xs.iter().flat_map(|x| ys.iter().map(move |y| bracket(x, y))).collect();
    span_of(n, &all)
}

/// Dimensions of the Lie algebra `Der(A)`: `(dim, derived series, lower
/// central series, centre)`. The series stop once they stabilise.
pub fn derivation_profile(a: &Algebra) -> (usize, Vec<usize>, Vec<usize>, usize) {
    let n = a.dim();
    let der = derivations(a);
    let mut derived = Vec::new();
    let mut cur = der.clone();
    loop {
        let next = brackets(n, &cur, &cur);
        derived.push(next.len());
        if next.len() == cur.len() || next.is_empty() {
            break;
        }
        cur = next;
    }
    let mut lower = Vec::new();
    let mut cur = der.clone();
    loop {
        let next = brackets(n, &der, &cur);
        lower.push(next.len());
        if next.len() == cur.len() || next.is_empty() {
            break;
        }
        cur = next;
    }
    // Centre: c with [c, d] = 0 for every basis d, solved in coordinates over `der`.
    let k = der.len();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for d in &der {
        let cols: Vec<Vec<Q>> = der.iter().map(|c| flat(&bracket(c, d))).collect();
        for r in 0..n * n {
            rows.push(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    let centre = if k == 0 { 0 } else { Matrix::from_rows(rows, k).expect("k columns").kernel_basis().dim() };
    (k, derived, lower, centre)
}

/// Coordinates of `v` in `T/S` for `S ⊆ T`: reduce by `S`, then read the
/// RREF coordinates over `T` at the pivots of `T` outside those of `S`.
fn quotient_coords(s: &Subspace, t: &Subspace, v: &[Q]) -> Vec<Q> {
    let mut r = v.to_vec();
    for (b, p) in s.basis().iter().zip(s.pivots()) {
        let c = r[p].clone();
        if !c.is_zero() {
            for (x, y) in r.iter_mut().zip(b) {
                *x -= &c * y;
            }
        }
    }
    let sp = s.pivots();
    t.pivots().into_iter().filter(|p| !sp.contains(p)).map(|p| r[p].clone()).collect()
}

/// For each graded piece `A^k/A^{k+1}`, the image of `Der(A)` in its
/// endomorphisms: `(dim image, dim [image, image])`.
pub fn graded_der_action(a: &Algebra) -> Vec<(usize, usize)> {
    let ps = a.power_series();
    let der = derivations(a);
    let mut out = Vec::new();
    for w in ps.chain.windows(2) {
        let (t, s) = (&w[0], &w[1]);
        let d = t.dim() - s.dim();
        if d == 0 {
            break;
        }
        let sp = s.pivots();
        let reps: Vec<Vec<Q>> = t.basis().iter().zip(t.pivots()).filter(|(_, p)| !sp.contains(p)).map(|(b, _)| b.clone()).collect();
        let images: Vec<Matrix> = der
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Q>> = reps.iter().map(|r| quotient_coords(s, t, &m.mul_vec(r).expect("square"))).collect();
                Matrix::from_rows(cols, d).expect("d columns").transpose()
            })
            .collect();
        let img = span_of(d, &images);
        out.push((img.len(), brackets(d, &img, &img).len()));
    }
    out
}

/// `{x : x∘A + A∘x ⊆ S}`.
pub fn w_space(a: &Algebra, s: &Subspace) -> Subspace {
    let n = a.dim();
    let functionals = s.orthogonal();
    let mut rows = Vec::new();
    for f in functionals.basis() {
        for j in 0..n {
            let left: Vec<Q> = (0..n).map(|i| crate::ring::dot(f, &coeffs(a, i, j))).collect();
            let right: Vec<Q> = (0..n).map(|i| crate::ring::dot(f, &coeffs(a, j, i))).collect();
            rows.push(left);
            rows.push(right);
        }
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Matrix::from_rows(rows, n).expect("n columns").kernel_basis()
}

fn coeffs(a: &Algebra, i: usize, j: usize) -> Vec<Q> {
    (0..a.dim()).map(|k| a.coeff(i, j, k)).collect()
}

/// Named characteristic subspaces, in a fixed order.
pub fn characteristic_subspaces(a: &Algebra) -> Result<Vec<(String, Subspace)>, InvariantError> {
    let ps = a.power_series();
    if !ps.nilpotent {
        return Err(InvariantError::NotNilpotent(a.label.clone()));
    }
    let mut out: Vec<(String, Subspace)> = Vec::new();
    for (i, p) in ps.chain.iter().enumerate().skip(1) {
        if !p.is_zero() {
            out.push((format!("A{}", i + 1), p.clone()));
        }
    }
    out.push(("ann".into(), a.annihilator()));
    out.push(("lann".into(), a.left_annihilator()));
    out.push(("rann".into(), a.right_annihilator()));
    for (k, p) in ps.chain.iter().enumerate().skip(1) {
        out.push((format!("W{}", k + 1), w_space(a, p)));
    }
    Ok(out)
}

pub fn fingerprint(a: &Algebra) -> Result<Fingerprint, InvariantError> {
    let ps = a.power_series();
    if !ps.nilpotent {
        return Err(InvariantError::NotNilpotent(a.label.clone()));
    }
    let power_dims = ps.dims();
    let graded_dims = power_dims.windows(2).map(|w| w[0] - w[1]).collect();
    let named = characteristic_subspaces(a)?;
    let w_chain_dims = named.iter().filter(|(k, _)| k.starts_with('W')).map(|(_, s)| s.dim()).collect();
    let seeds: Vec<Subspace> = named.iter().map(|(_, s)| s.clone()).collect();
    let lattice = lattice(a, &seeds, LATTICE_ROUNDS, LATTICE_CAP);
    let (der_dim, der_derived, der_lower, der_centre_dim) = derivation_profile(a);
    let mut char_products = BTreeMap::new();
    for (nu, u) in &named {
        for (nv, v) in &named {
            char_products.insert(format!("{nu}∘{nv}"), a.product_space(u, v).dim());
        }
    }
    Ok(Fingerprint {
        dim: a.dim(),
        power_dims,
        ann_dim: a.annihilator().dim(),
        left_ann_dim: a.left_annihilator().dim(),
        right_ann_dim: a.right_annihilator().dim(),
        graded_dims,
        w_chain_dims,
        char_products,
        lattice,
        der_dim,
        der_derived,
        der_lower,
        der_centre_dim,
        der_graded: graded_der_action(a),
    })
}

pub const LATTICE_ROUNDS: usize = 2;
pub const LATTICE_CAP: usize = 60;

impl Fingerprint {
    /// Name of the first component where the two differ.
    pub fn separating_invariant(&self, other: &Fingerprint) -> Option<String> {
        let simple = [
            ("dim", self.dim == other.dim),
            ("power_dims", self.power_dims == other.power_dims),
            ("ann_dim", self.ann_dim == other.ann_dim),
            ("left_ann_dim", self.left_ann_dim == other.left_ann_dim),
            ("right_ann_dim", self.right_ann_dim == other.right_ann_dim),
            ("graded_dims", self.graded_dims == other.graded_dims),
            ("w_chain_dims", self.w_chain_dims == other.w_chain_dims),
            ("der_dim", self.der_dim == other.der_dim),
            ("der_derived", self.der_derived == other.der_derived),
            ("der_lower", self.der_lower == other.der_lower),
            ("der_centre_dim", self.der_centre_dim == other.der_centre_dim),
            ("der_graded", self.der_graded == other.der_graded),
        ];
        if let Some((name, _)) = simple.iter().find(|(_, eq)| !eq) {
            return Some(name.to_string());
        }
        for (k, v) in &self.char_products {
            if other.char_products.get(k) != Some(v) {
                return Some(format!("dim({k})"));
            }
        }
        if let Some(k) = other.char_products.keys().find(|k| !self.char_products.contains_key(*k)) {
            return Some(format!("dim({k})"));
        }
        (self.lattice != other.lattice).then(|| "subspace lattice".to_string())
    }
}

/// `m` invertible and `m(x∘_a y) = m(x)∘_b m(y)` on basis pairs; columns of
/// `m` are the images of the basis of `a`.
pub fn verify_isomorphism(a: &Algebra, b: &Algebra, m: &Matrix) -> Result<bool, InvariantError> {
    if a.dim() != b.dim() {
        return Err(InvariantError::DimensionMismatch(a.dim(), b.dim()));
    }
    if m.rows() != a.dim() || m.cols() != a.dim() {
        return Err(InvariantError::DimensionMismatch(a.dim(), m.rows()));
    }
    if m.det().map_or(true, |d| num_traits::Zero::is_zero(&d)) {
        return Ok(false);
    }
    Ok(first_defect(a, b, &ColMatrix::from_matrix(m)).is_none())
}

#[derive(Clone, Debug, PartialEq)]
pub enum SweepOutcome {
    Found(Matrix),
    /// Nothing found among `tried` samples; says nothing about isomorphism.
    NoWitnessFound { tried: usize },
}

/// Coordinates of generator images drawn from `p/q` with `|p| ≤ 3`,
/// `1 ≤ q ≤ 3`; each candidate is extended through products and checked.
pub fn generator_sweep(a: &Algebra, b: &Algebra, samples: usize, seed: u64) -> Result<SweepOutcome, InvariantError> {
    if a.dim() != b.dim() {
        return Err(InvariantError::DimensionMismatch(a.dim(), b.dim()));
    }
    let n = a.dim();
    let sq = a.power_series().power(2);
    let gens = sq.complement_coordinates();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let imgs: Vec<Vec<Q>> = gens.iter().map(|_| (0..n).map(|_| small_rational(&mut rng, false)).collect()).collect();
        if let Some(phi) = images_from_generators(a, b, &gens, &imgs) {
            let m = phi.to_matrix();
            if verify_isomorphism(a, b, &m)? {
                return Ok(SweepOutcome::Found(m));
            }
        }
    }
    Ok(SweepOutcome::NoWitnessFound { tried: samples })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distinguished(String),
    Collision,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub a: String,
    pub b: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default)]
pub struct DistinguishReport {
    pub pairs: Vec<PairVerdict>,
}

pub const COLLISION_NOTE: &str = "not separated by implemented invariants";

impl DistinguishReport {
    pub fn collisions(&self) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .filter(|p| p.verdict == Verdict::Collision)
            .map(|p| (p.a.clone(), p.b.clone()))
            .collect()
    }

    pub fn fully_distinguished(&self) -> bool {
        self.pairs.iter().all(|p| p.verdict != Verdict::Collision)
    }

    fn cells(p: &PairVerdict) -> (&str, &str) {
        match &p.verdict {
            Verdict::Distinguished(inv) => ("distinguished", inv),
            Verdict::Collision => ("collision", COLLISION_NOTE),
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| a | b | verdict | separating invariant |\n|---|---|---|---|\n");
        for p in &self.pairs {
            let (v, inv) = Self::cells(p);
            let _ = writeln!(s, "| {} | {} | {v} | {inv} |", p.a, p.b);
        }
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,b,verdict,separating_invariant\n");
        for p in &self.pairs {
            let (v, inv) = Self::cells(p);
            let _ = writeln!(s, "{},{},{v},\"{inv}\"", p.a, p.b);
        }
        s
    }
}

/// Pairwise fingerprint comparison in input order.
pub fn distinguish_report(algebras: &[Algebra]) -> Result<DistinguishReport, InvariantError> {
    let fps: Vec<Fingerprint> = algebras.par_iter().map(fingerprint).collect::<Result<_, _>>()?;
    let mut pairs = Vec::new();
    for i in 0..algebras.len() {
        for j in i + 1..algebras.len() {
            let verdict = match fps[i].separating_invariant(&fps[j]) {
                Some(inv) => Verdict::Distinguished(inv),
                None => Verdict::Collision,
            };
            pairs.push(PairVerdict { a: algebras[i].label.clone(), b: algebras[j].label.clone(), verdict });
        }
    }
    Ok(DistinguishReport { pairs })
}

/// `F_n^1..F_n^3` and `μ_1..μ_16` at `alpha`, plus the parametric `μ`
/// again at `alt_alpha`, compared pairwise.
pub fn catalog_sweep(n: usize, alpha: &Q, alt_alpha: &Q) -> Result<DistinguishReport, InvariantError> {
    use crate::catalog::{all_at, make, Family, FamilyId};
    let mut ids = all_at(n, alpha);
    for k in 1..=16u8 {
        if Family::Mu(k).takes_alpha() {
            ids.push(FamilyId::mu(k, n, Some(alt_alpha.clone())));
        }
    }
    let algs: Vec<Algebra> = ids.iter().map(|id| make(id).expect("catalog dimension")).collect();
    distinguish_report(&algs)
}

/// Collision pairs expected by the catalog sweep, one `a,b` per line.
pub const KNOWN_COLLISIONS: &str = include_str!("../data/collisions.csv");

pub fn known_collisions() -> Vec<(String, String)> {
    KNOWN_COLLISIONS
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once(',').map(|(a, b)| (a.trim().to_string(), b.trim().to_string())))
        .collect()
}

/// Derivations with `D(A^k) ⊆ A^{k+1}` for every `k`; all nilpotent.
pub fn filtration_raising_derivations(a: &Algebra) -> Vec<Matrix> {
    let n = a.dim();
    let der = derivations(a);
    let chain = a.power_series().chain;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for w in chain.windows(2) {
        let functionals = w[1].orthogonal();
        for v in w[0].basis() {
            let images: Vec<Vec<Q>> = der.iter().map(|d| d.mul_vec(v).expect("square")).collect();
            for f in functionals.basis() {
                rows.push(images.iter().map(|img| crate::ring::dot(f, img)).collect());
            }
        }
    }
    if der.is_empty() {
        return der;
    }
    let coeffs = Matrix::from_rows(rows, der.len()).expect("coefficient rows").kernel_basis();
    coeffs
        .basis()
        .iter()
        .map(|c| {
            let mut m = Matrix::zeros(n, n);
            for (ci, d) in c.iter().zip(&der) {
                for i in 0..n {
                    for j in 0..n {
                        let v = m.get(i, j) + ci * d.get(i, j);
                        m.set(i, j, v);
                    }
                }
            }
            m
        })
        .collect()
}

/// `exp(D)` for nilpotent `D`.
pub fn exp_nilpotent(d: &Matrix) -> Matrix {
    let n = d.rows();
    let mut out = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        let inv = Q::new(1.into(), (k as i64).into());
        let next = term.mul(d).expect("square");
        term = Matrix::from_rows(next.to_rows().into_iter().map(|r| r.into_iter().map(|x| x * &inv).collect()).collect(), n)
            .expect("square");
        if term.is_zero() {
            break;
        }
        for i in 0..n {
            for j in 0..n {
                let v = out.get(i, j) + term.get(i, j);
                out.set(i, j, v);
            }
        }
    }
    out
}

/// `exp(D)` for a random combination of the filtration-raising derivations,
/// coefficients from `p/q`, `|p| ≤ 3`, `1 ≤ q ≤ 3`.
pub fn random_unipotent_automorphism(a: &Algebra, rng: &mut ChaCha8Rng) -> Matrix {
    let n = a.dim();
    let mut d = Matrix::zeros(n, n);
    for m in filtration_raising_derivations(a) {
        let c = small_rational(rng, false);
        for i in 0..n {
            for j in 0..n {
                let v = d.get(i, j) + &c * m.get(i, j);
                d.set(i, j, v);
            }
        }
    }
    exp_nilpotent(&d)
}

/// A random basis change with integer entries and determinant `±1`: a
/// permutation followed by `shears` elementary shears `e_j ↦ e_j + c e_i`,
/// `c ∈ [-2, 2]`, and random signs.
pub fn random_unimodular(n: usize, shears: usize, rng: &mut ChaCha8Rng) -> Matrix {
    use rand::seq::SliceRandom;
    use rand::Rng;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, Q::from_integer(if rng.gen_bool(0.5) { 1 } else { -1 }.into()));
    }
    for _ in 0..shears {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j || n < 2 {
            continue;
        }
        let mut e = Matrix::identity(n);
        e.set(i, j, Q::from_integer(rng.gen_range(-2..=2).into()));
        m = m.mul(&e).expect("square");
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make, FamilyId};
    use crate::linalg::q;

    fn fam(k: usize, n: usize) -> Algebra {
        make(&FamilyId::f(k, n)).unwrap()
    }

    #[test]
    fn f5_1_fingerprint() {
        let f = fingerprint(&fam(1, 5)).unwrap();
        assert_eq!(f.ann_dim, 2);
        assert_eq!(f.power_dims, vec![5, 3, 2, 1, 0]);
    }

    #[test]
    fn f2_f3_separated_by_w_products() {
        let (f2, f3) = (fingerprint(&fam(2, 5)).unwrap(), fingerprint(&fam(3, 5)).unwrap());
        assert_eq!((f2.ann_dim, f3.ann_dim), (1, 1));
        assert_eq!(f2.char_products["W4∘W4"], 0);
        assert_eq!(f3.char_products["W4∘W4"], 1);
        let w4 = w_space(&fam(3, 5), &fam(3, 5).power_series().power(4));
        assert_eq!(w4.dim(), 3);
    }

    #[test]
    fn zero_algebra() {
        let f = fingerprint(&Algebra::zero(3, "z")).unwrap();
        assert_eq!(f.ann_dim, 3);
        assert!(f.char_products.values().all(|&d| d == 0));
    }

    #[test]
    fn not_nilpotent() {
        let mut a = Algebra::zero(1, "idem");
        a.add_product(0, 0, 0, q(1));
        assert!(matches!(fingerprint(&a), Err(InvariantError::NotNilpotent(_))));
    }

    #[test]
    fn isomorphism_checks() {
        let a = fam(1, 5);
        assert!(verify_isomorphism(&a, &a, &Matrix::identity(5)).unwrap());
        let mut d = Matrix::identity(5);
        for (i, v) in [2, 4, 8, 16, 1].into_iter().enumerate() {
            d.set(i, i, q(v));
        }
        assert!(verify_isomorphism(&a, &a, &d).unwrap());
        assert!(!verify_isomorphism(&fam(2, 5), &fam(3, 5), &Matrix::identity(5)).unwrap());
        assert_eq!(
            generator_sweep(&fam(2, 5), &fam(3, 5), 200, 3).unwrap(),
            SweepOutcome::NoWitnessFound { tried: 200 }
        );
        assert!(verify_isomorphism(&a, &fam(1, 6), &Matrix::identity(5)).is_err());
    }

    #[test]
    fn reports() {
        let r = distinguish_report(&[fam(1, 6), fam(2, 6), fam(3, 6)]).unwrap();
        assert!(r.fully_distinguished());
        let mu2 = |al: i64| make(&FamilyId::mu(2, 7, Some(q(al)))).unwrap();
        let r = distinguish_report(&[mu2(2), mu2(3)]).unwrap();
        assert_eq!(r.collisions().len(), 1);
        assert!(r.to_markdown().contains(COLLISION_NOTE));
        // α = 1 is a special value: the mixed products become symmetric.
        let r = distinguish_report(&[mu2(1), mu2(2)]).unwrap();
        assert!(r.fully_distinguished());
        assert!(distinguish_report(&[fam(1, 6)]).unwrap().pairs.is_empty());
    }

    #[test]
    fn transport_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for a in [fam(1, 6), fam(3, 6), make(&FamilyId::mu(9, 7, None)).unwrap()] {
            let f = fingerprint(&a).unwrap();
            for _ in 0..5 {
                let m = random_unimodular(a.dim(), 4, &mut rng);
                assert_eq!(fingerprint(&a.transport(&m).unwrap()).unwrap(), f);
            }
        }
    }

    #[test]
    fn unipotent_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for id in [FamilyId::f(2, 6), FamilyId::mu(12, 7, None), FamilyId::mu(10, 8, Some(q(3)))] {
            let a = make(&id).unwrap();
            assert!(!filtration_raising_derivations(&a).is_empty());
            for _ in 0..3 {
                let m = random_unipotent_automorphism(&a, &mut rng);
                assert!(verify_isomorphism(&a, &a, &m).unwrap(), "{}", id.label());
                assert!(a.transport(&m).unwrap().table_eq(&a));
            }
        }
    }

    #[test]
    fn derivations_of_f0() {
        // Der(F_n^0) is spanned by the grading and the maps e_i ↦ e_{i+k}, up to scaling.
        let a = fam(0, 5);
        assert_eq!(derivations(&a).len(), 5);
    }

    #[test]
    fn ann_inside_every_w() {
        let a = make(&FamilyId::mu(14, 8, None)).unwrap();
        let ann = a.annihilator();
        for (name, s) in characteristic_subspaces(&a).unwrap() {
            if name.starts_with('W') {
                assert!(ann.is_subspace_of(&s), "{name}");
            }
        }
    }
}
