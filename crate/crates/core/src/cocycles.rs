//! Bilinear forms, the spaces Z², B², H², and cocycle annihilators.
//!
//! Forms are flattened row-major: `Δ_{i,j}` (1-based) sits at `(i-1)n + (j-1)`.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::algebra::{Algebra, AlgebraError};
use crate::linalg::{fmt_q, parse_q, Echelon, Matrix, Subspace, Q};
use crate::ring::{ColMatrix, Ring};

/// A bilinear form `θ` on an `n`-dimensional space, `m[i][j] = θ(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub m: Matrix,
}

impl BilinearForm {
    pub fn zero(n: usize) -> Self {
        BilinearForm { m: Matrix::zeros(n, n) }
    }

    /// `Δ_{i,j}` with 0-based indices.
    pub fn delta(n: usize, i: usize, j: usize) -> Self {
        let mut f = Self::zero(n);
        f.m.set(i, j, Q::from_integer(1.into()));
        f
    }

    pub fn ambient(&self) -> usize {
        self.m.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        self.m.get(i, j)
    }

    pub fn add_entry(&mut self, i: usize, j: usize, c: &Q) {
        let v = self.m.get(i, j) + c;
        self.m.set(i, j, v);
    }

    pub fn flatten(&self) -> Vec<Q> {
        self.m.to_rows().into_iter().flatten().collect()
    }

    pub fn from_flat(n: usize, v: &[Q]) -> Self {
        let rows = v.chunks(n).map(<[Q]>::to_vec).collect();
        BilinearForm { m: Matrix::from_rows(rows, n).expect("n² entries") }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn scaled(&self, c: &Q) -> Self {
        Self::from_flat(self.ambient(), &self.flatten().iter().map(|x| x * c).collect::<Vec<_>>())
    }

    pub fn plus(&self, other: &BilinearForm) -> Self {
        let v: Vec<Q> = self.flatten().iter().zip(other.flatten()).map(|(a, b)| a + b).collect();
        Self::from_flat(self.ambient(), &v)
    }

    /// `Σ c_k f_k`.
    pub fn combination(n: usize, coeffs: &[Q], forms: &[BilinearForm]) -> Self {
        let mut out = Self::zero(n);
        for (c, f) in coeffs.iter().zip(forms) {
            if !c.is_zero() {
                out = out.plus(&f.scaled(c));
            }
        }
        out
    }

    /// `θ(x, y)` for coordinate vectors in any ring.
    pub fn eval_in<R: Ring>(&self, x: &[R], y: &[R]) -> R {
        let n = self.ambient();
        let mut acc = x[0].zero_like();
        for i in 0..n {
            if x[i].vanishes() {
                continue;
            }
            for j in 0..n {
                let c = self.get(i, j);
                if c.vanishes() || y[j].vanishes() {
                    continue;
                }
                acc = acc.add(&x[i].mul(&y[j]).scale(c));
            }
        }
        acc
    }

    /// Nonzero entries as `(coefficient, i, j)` with 0-based indices.
    pub fn terms(&self) -> Vec<(Q, usize, usize)> {
        let n = self.ambient();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = self.get(i, j);
                if !c.is_zero() {
                    out.push((c.clone(), i, j));
                }
            }
        }
        out
    }

    /// One `form <name> : <p/q> <i> <j> ...` line (1-based indices).
    pub fn to_line(&self, name: &str) -> String {
        let mut s = format!("form {name} :");
        for (c, i, j) in self.terms() {
            write!(s, " {} {} {}", fmt_q(&c), i + 1, j + 1).unwrap();
        }
        s
    }
}

/// `φθ(x, y) = θ(φx, φy)`, i.e. `φᵀ Θ φ`, entrywise in any ring.
pub fn act_in<R: Ring>(theta: &BilinearForm, phi: &ColMatrix<R>) -> Vec<R> {
    let n = theta.ambient();
    assert_eq!(phi.dim(), n, "shape mismatch");
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(theta.eval_in(&phi.cols[i], &phi.cols[j]));
        }
    }
    out
}

/// Exact congruence transform `φᵀ Θ φ`.
pub fn act(theta: &BilinearForm, phi: &Matrix) -> Result<BilinearForm, AlgebraError> {
    let n = theta.ambient();
    if phi.rows() != n || phi.cols() != n {
        return Err(crate::linalg::LinalgError::DimensionMismatch { expected: n, found: phi.rows() }.into());
    }
    let left = phi.transpose().mul(&theta.m)?;
    Ok(BilinearForm { m: left.mul(phi)? })
}

/// Parse a block of `form` lines. Blank lines and `#` comments are skipped.
pub fn parse_forms(text: &str, n: usize) -> Result<Vec<(String, BilinearForm)>, AlgebraError> {
    let err = |line: usize, msg: &str| AlgebraError::Parse { line, msg: msg.to_string() };
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(rest) = line.strip_prefix("form") else {
            return Err(err(ln, "expected `form <name> : ...`"));
        };
        let (name, body) = rest.split_once(':').ok_or_else(|| err(ln, "missing `:`"))?;
        let name = name.trim();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(err(ln, "bad form name"));
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() % 3 != 0 {
            return Err(err(ln, "expected `<p/q> <i> <j>` triples"));
        }
        let mut f = BilinearForm::zero(n);
        for t in toks.chunks(3) {
            let c = parse_q(t[0]).ok_or_else(|| err(ln, "bad rational"))?;
            let idx = |s: &str| -> Result<usize, AlgebraError> {
                let i: usize = s.parse().map_err(|_| err(ln, "bad index"))?;
                if i == 0 || i > n {
                    return Err(err(ln, "index out of range"));
                }
                Ok(i - 1)
            };
            let (i, j) = (idx(t[1])?, idx(t[2])?);
            f.add_entry(i, j, &c);
        }
        out.push((name.to_string(), f));
    }
    Ok(out)
}

fn cocycle_rows(a: &Algebra) -> Echelon {
    // θ(e_i∘e_j, e_k) - θ(e_i, e_j∘e_k) - θ(e_i, e_k∘e_j) = 0 for every basis triple.
    let n = a.dim();
    let mut e = Echelon::new(n * n);
    let mut row = vec![Q::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut touched = Vec::new();
                for (p, c) in a.basis_product(i, j) {
                    row[p * n + k] += c;
                    touched.push(p * n + k);
                }
                for (p, c) in a.basis_product(j, k).iter().chain(a.basis_product(k, j)) {
                    row[i * n + p] -= c;
                    touched.push(i * n + p);
                }
                if touched.iter().any(|&t| !row[t].is_zero()) {
                    e.insert(&row);
                }
                for t in touched {
                    row[t] = Q::zero();
                }
            }
        }
    }
    e
}

/// `Z²(A, ℚ)` as a subspace of flattened forms.
pub fn cocycle_space(a: &Algebra) -> Subspace {
    cocycle_rows(a).kernel()
}

/// Checks `θ(x∘y, z) = θ(x, y∘z + z∘y)` on every basis triple; returns the first failure.
pub fn cocycle_violation(a: &Algebra, theta: &BilinearForm) -> Option<(usize, usize, usize)> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = Q::zero();
                for (p, c) in a.basis_product(i, j) {
                    s += c * theta.get(*p, k);
                }
                for (p, c) in a.basis_product(j, k).iter().chain(a.basis_product(k, j)) {
                    s -= c * theta.get(i, *p);
                }
                if !s.is_zero() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

pub fn is_cocycle(a: &Algebra, theta: &BilinearForm) -> bool {
    theta.ambient() == a.dim() && cocycle_violation(a, theta).is_none()
}

/// `δf(x, y) = f(x∘y)`.
pub fn coboundary_of(a: &Algebra, f: &[Q]) -> BilinearForm {
    let n = a.dim();
    let mut out = BilinearForm::zero(n);
    for i in 0..n {
        for j in 0..n {
            let mut s = Q::zero();
            for (k, c) in a.basis_product(i, j) {
                s += c * &f[*k];
            }
            out.m.set(i, j, s);
        }
    }
    out
}

pub fn coboundary_space(a: &Algebra) -> Subspace {
    let n = a.dim();
    Subspace::span(n * n, (0..n).map(|k| coboundary_of(a, &crate::linalg::unit(n, k)).flatten()))
}

/// Z², B², chosen H² representatives and the projection to H² coordinates.
#[derive(Clone, Debug)]
pub struct CohomologySpaces {
    pub n: usize,
    pub z2: Subspace,
    pub b2: Subspace,
    pub h2_reps: Vec<BilinearForm>,
    /// `h × n²` matrix: coordinates over `h2_reps`, vanishing on B².
    pub projector: Matrix,
    /// Whether the representatives came from the catalog family of the algebra.
    pub catalog_reps: bool,
}

impl CohomologySpaces {
    pub fn h2_dim(&self) -> usize {
        self.h2_reps.len()
    }

    pub fn project(&self, theta: &BilinearForm) -> Vec<Q> {
        self.projector.mul_vec(&theta.flatten()).expect("n² coordinates")
    }

    /// Projection of a flattened form with coordinates in any ring.
    pub fn project_in<R: Ring>(&self, flat: &[R]) -> Vec<R> {
        let like = &flat[0];
        (0..self.projector.rows())
            .map(|r| {
                let mut acc = like.zero_like();
                for (c, x) in self.projector.row(r).iter().zip(flat) {
                    if !c.vanishes() && !x.vanishes() {
                        acc = acc.add(&x.scale(c));
                    }
                }
                acc
            })
            .collect()
    }
}

impl CohomologySpaces {
    /// Flattened indices the projector reads.
    pub fn support(&self) -> Vec<usize> {
        (0..self.projector.cols()).filter(|&c| (0..self.projector.rows()).any(|r| !self.projector.get(r, c).vanishes())).collect()
    }

    /// H² coordinates of `φθ`, evaluating only the entries the projector reads.
    pub fn project_action_in<R: Ring>(&self, theta: &BilinearForm, phi: &ColMatrix<R>) -> Vec<R> {
        let n = self.n;
        let like = phi.entry(0, 0).zero_like();
        let vals: Vec<(usize, R)> =
            self.support().into_iter().map(|f| (f, theta.eval_in(&phi.cols[f / n], &phi.cols[f % n]))).collect();
        (0..self.projector.rows())
            .map(|r| {
                let mut acc = like.clone();
                for (f, v) in &vals {
                    let c = self.projector.get(r, *f);
                    if !c.vanishes() && !v.vanishes() {
                        acc = acc.add(&v.scale(c));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Cohomology with the given representatives if they are a valid complement
/// of B² in Z²; otherwise the canonical complement.
pub fn cohomology_with(a: &Algebra, reps: Option<Vec<BilinearForm>>) -> CohomologySpaces {
    let n = a.dim();
    let z2 = cocycle_space(a);
    let b2 = coboundary_space(a);
    let want = z2.dim() - b2.dim();
    let valid = |r: &Vec<BilinearForm>| {
        r.len() == want
            && r.iter().all(|f| z2.contains(&f.flatten()))
            && Subspace::span(n * n, b2.basis().iter().cloned().chain(r.iter().map(BilinearForm::flatten))).dim()
                == z2.dim()
    };
    let (h2_reps, catalog_reps) = match reps {
        Some(r) if valid(&r) => (r, true),
        _ => {
            let mut e = Echelon::new(n * n);
            for b in b2.basis() {
                e.insert(b);
            }
            let mut chosen = Vec::new();
            for z in z2.basis() {
                if e.insert(z) {
                    chosen.push(BilinearForm::from_flat(n, z));
                }
            }
            (chosen, false)
        }
    };
    let projector = build_projector(n, &b2, &h2_reps);
    CohomologySpaces { n, z2, b2, h2_reps, projector, catalog_reps }
}

/// Cohomology of `a`, preferring catalog representatives when the label names a family.
pub fn cohomology(a: &Algebra) -> CohomologySpaces {
    let reps = crate::catalog::FamilyId::from_label(&a.label)
        .filter(|id| id.n == a.dim())
        .and_then(|id| crate::catalog::nabla_basis(id.family, id.n).ok());
    cohomology_with(a, reps)
}

fn build_projector(n: usize, b2: &Subspace, reps: &[BilinearForm]) -> Matrix {
    // Columns: B² basis then representatives. Pick a set of rows where this
    // n² × d matrix is invertible and read the representative coordinates.
    let cols: Vec<Vec<Q>> = b2.basis().iter().cloned().chain(reps.iter().map(BilinearForm::flatten)).collect();
    let d = cols.len();
    let h = reps.len();
    let mut proj = Matrix::zeros(h, n * n);
    if d == 0 {
        return proj;
    }
    let k = Matrix::from_rows(cols, n * n).expect("flattened forms");
    let (_, rows) = k.rref();
    let mut sq = Matrix::zeros(d, d);
    for (r, &row) in rows.iter().enumerate() {
        for c in 0..d {
            sq.set(r, c, k.get(c, row).clone());
        }
    }
    let inv = sq.inverse().expect("independent columns");
    for t in 0..h {
        for (r, &row) in rows.iter().enumerate() {
            proj.set(t, row, inv.get(d - h + t, r).clone());
        }
    }
    proj
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("form {index} is not a cocycle (fails on basis triple {triple:?}, 1-based)")]
pub struct NotCocycle {
    pub index: usize,
    pub triple: (usize, usize, usize),
}

/// `ann(θ_1) ∩ … ∩ ann(θ_s)` where `ann(θ) = {x : θ(x, A) + θ(A, x) = 0}`.
pub fn cocycle_annihilator(a: &Algebra, thetas: &[BilinearForm]) -> Result<Subspace, NotCocycle> {
    let n = a.dim();
    let mut rows = Vec::new();
    for (idx, t) in thetas.iter().enumerate() {
        if let Some((i, j, k)) = cocycle_violation(a, t) {
            return Err(NotCocycle { index: idx, triple: (i + 1, j + 1, k + 1) });
        }
        for j in 0..n {
            rows.push(t.m.column(j));
            rows.push(t.m.row(j).to_vec());
        }
    }
    Ok(Matrix::from_rows(rows, n).expect("n columns").kernel_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make, FamilyId};
    use crate::linalg::{q, unit};

    #[test]
    fn zero_algebra_cohomology() {
        let z = Algebra::zero(2, "z");
        assert_eq!(cocycle_space(&z).dim(), 4);
        assert_eq!(coboundary_space(&z).dim(), 0);
        let one = cohomology(&Algebra::zero(1, "z"));
        assert_eq!(one.h2_dim(), 1);
    }

    #[test]
    fn coboundary_examples() {
        let f1 = make(&FamilyId::f(1, 5)).unwrap();
        assert_eq!(coboundary_of(&f1, &unit(5, 1)), BilinearForm::delta(5, 0, 0));
        assert!(coboundary_of(&f1, &[q(0), q(0), q(0), q(0), q(0)]).is_zero());
        let d = coboundary_of(&f1, &unit(5, 2));
        let expect = BilinearForm::delta(5, 0, 1).plus(&BilinearForm::delta(5, 1, 0).scaled(&q(2)));
        assert_eq!(d, expect);
    }

    #[test]
    fn annihilator_of_forms() {
        let f1 = make(&FamilyId::f(1, 5)).unwrap();
        let ann = cocycle_annihilator(&f1, &[BilinearForm::delta(5, 0, 4)]).unwrap();
        assert_eq!(ann, Subspace::span(5, [unit(5, 1), unit(5, 2), unit(5, 3)]));
        let all = cocycle_annihilator(&f1, &[BilinearForm::zero(5)]).unwrap();
        assert_eq!(all.dim(), 5);
        let nab4 = crate::catalog::nabla_basis(crate::catalog::Family::F1, 5).unwrap()[3].clone();
        assert_eq!(cocycle_annihilator(&f1, &[nab4]).unwrap(), Subspace::span(5, [unit(5, 4)]));
        let bad = BilinearForm::delta(5, 1, 1);
        assert!(cocycle_annihilator(&f1, &[bad]).is_err());
    }

    #[test]
    fn form_lines_round_trip() {
        let f = BilinearForm::delta(4, 0, 3).plus(&BilinearForm::delta(4, 3, 3).scaled(&crate::linalg::qf(-1, 2)));
        let line = f.to_line("t");
        assert_eq!(line, "form t : 1 1 4 -1/2 4 4");
        let parsed = parse_forms(&line, 4).unwrap();
        assert_eq!(parsed, vec![("t".to_string(), f)]);
        assert!(parse_forms("form t : 1 1 5", 4).is_err());
    }
}
