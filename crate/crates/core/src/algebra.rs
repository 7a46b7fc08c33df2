//! Finite-dimensional algebras given by rational structure constants.
//!
//! Indices are 0-based in the API and 1-based in text formats and reports.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::linalg::{fmt_q, parse_q, unit, LinalgError, Matrix, Subspace, Q};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("subspace is not a two-sided ideal")]
    NotIdeal,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// An algebra with basis `e_1..e_n` and products `e_i∘e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    // Sparse row for every ordered pair (i, j), sorted by target index.
    table: Vec<Vec<(usize, Q)>>,
    pub label: String,
    pub params: Vec<(String, Q)>,
}

/// A basis triple where `(x∘y)∘z = x∘(y∘z) + x∘(z∘y)` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub triple: (usize, usize, usize),
    pub defect: Vec<Q>,
}

/// `chain[i]` is `A^{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub chain: Vec<Subspace>,
    pub nilpotent: bool,
}

impl PowerSeries {
    pub fn dims(&self) -> Vec<usize> {
        self.chain.iter().map(Subspace::dim).collect()
    }

    /// `A^i` (1-based); zero past the end of a nilpotent chain.
    pub fn power(&self, i: usize) -> Subspace {
        let amb = self.chain[0].ambient_dim();
        match self.chain.get(i - 1) {
            Some(s) => s.clone(),
            None if self.nilpotent => Subspace::zero(amb),
            None => self.chain.last().expect("nonempty chain").clone(),
        }
    }
}

impl Algebra {
    /// The zero algebra of dimension `dim`.
    pub fn zero(dim: usize, label: impl Into<String>) -> Self {
        Algebra { dim, table: vec![Vec::new(); dim * dim], label: label.into(), params: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn with_param(mut self, name: &str, value: Q) -> Self {
        self.params.push((name.to_string(), value));
        self
    }

    /// Nonzero terms of `e_i∘e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.table[i * self.dim + j]
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> Q {
        self.basis_product(i, j)
            .iter()
            .find(|(t, _)| *t == k)
            .map_or_else(Q::zero, |(_, c)| c.clone())
    }

    /// Add `c·e_k` to `e_i∘e_j`.
    pub fn add_product(&mut self, i: usize, j: usize, k: usize, c: Q) {
        assert!(i < self.dim && j < self.dim && k < self.dim, "index out of range");
        let row = &mut self.table[i * self.dim + j];
        match row.binary_search_by_key(&k, |(t, _)| *t) {
            Ok(p) => {
                row[p].1 += c;
                if row[p].1.is_zero() {
                    row.remove(p);
                }
            }
            Err(p) => {
                if !c.is_zero() {
                    row.insert(p, (k, c));
                }
            }
        }
    }

    pub fn set_product(&mut self, i: usize, j: usize, terms: Vec<(usize, Q)>) {
        self.table[i * self.dim + j].clear();
        for (k, c) in terms {
            self.add_product(i, j, k, c);
        }
    }

    /// Same structure constants, ignoring label and parameters.
    pub fn table_eq(&self, other: &Algebra) -> bool {
        self.dim == other.dim && self.table == other.table
    }

    /// Number of nonzero basis products.
    pub fn nonzero_products(&self) -> usize {
        self.table.iter().filter(|r| !r.is_empty()).count()
    }

    pub fn product(&self, x: &[Q], y: &[Q]) -> Result<Vec<Q>, AlgebraError> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(LinalgError::DimensionMismatch { expected: self.dim, found: v.len() }.into());
            }
        }
        let mut out = vec![Q::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        Ok(out)
    }

    /// Product of vectors with coordinates in any ring.
    pub fn product_in<R: Ring>(&self, x: &[R], y: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let like = &x[0];
        let mut out = vec![like.zero_like(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.vanishes() {
                    continue;
                }
                let row = self.basis_product(i, j);
                if row.is_empty() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in row {
                    out[*k] = out[*k].add(&ab.scale(c));
                }
            }
        }
        out
    }

    fn sparse_product_left(&self, terms: &[(usize, Q)], j: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, a) in terms {
            for (k, c) in self.basis_product(*i, j) {
                out[*k] += a * c;
            }
        }
        out
    }

    fn sparse_product_right(&self, i: usize, terms: &[(usize, Q)]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (j, a) in terms {
            for (k, c) in self.basis_product(i, *j) {
                out[*k] += a * c;
            }
        }
        out
    }

    /// Basis triples violating `(x∘y)∘z = x∘(y∘z) + x∘(z∘y)`.
    pub fn check_zinbiel(&self) -> Vec<Violation> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.sparse_product_left(self.basis_product(i, j), k);
                    let mut yz: Vec<(usize, Q)> = self.basis_product(j, k).to_vec();
                    yz.extend(self.basis_product(k, j).iter().cloned());
                    let rhs = self.sparse_product_right(i, &yz);
                    let defect: Vec<Q> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                    if defect.iter().any(|x| !x.is_zero()) {
                        out.push(Violation { triple: (i, j, k), defect });
                    }
                }
            }
        }
        out
    }

    /// `span{u∘v : u ∈ U, v ∈ V}`.
    pub fn product_space(&self, u: &Subspace, v: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in u.basis() {
            for b in v.basis() {
                vecs.push(self.product(a, b).expect("ambient matches"));
            }
        }
        Subspace::span(self.dim, vecs)
    }

    /// Powers `A^{i+1} = Σ_{k=1}^{i} A^k A^{i+1-k}`, computed with every splitting.
    pub fn power_series(&self) -> PowerSeries {
        let mut chain = vec![Subspace::full(self.dim)];
        loop {
            let i = chain.len();
            let mut acc = Subspace::zero(self.dim);
            for k in 1..=i {
                let p = self.product_space(&chain[k - 1], &chain[i - k]);
                acc = acc.sum(&p).expect("same ambient");
            }
            let stalled = acc == chain[i - 1];
            let zero = acc.is_zero();
            chain.push(acc);
            if zero {
                return PowerSeries { chain, nilpotent: true };
            }
            if stalled || chain.len() > self.dim + 2 {
                return PowerSeries { chain, nilpotent: false };
            }
        }
    }

    /// Smallest `i` with `A^i = 0`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let ps = self.power_series();
        ps.nilpotent.then(|| ps.chain.len())
    }

    fn left_mult_rows(&self, x_side: bool) -> Vec<Vec<Q>> {
        // Rows of the map x ↦ (x∘e_1, …, x∘e_n) (or e_j∘x), one row per output coordinate.
        let n = self.dim;
        let mut rows = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                let row: Vec<Q> = (0..n)
                    .map(|i| if x_side { self.coeff(i, j, k) } else { self.coeff(j, i, k) })
                    .collect();
                rows.push(row);
            }
        }
        rows
    }

    /// `{x : x∘A = 0}`.
    pub fn left_annihilator(&self) -> Subspace {
        Matrix::from_rows(self.left_mult_rows(true), self.dim).expect("square").kernel_basis()
    }

    /// `{x : A∘x = 0}`.
    pub fn right_annihilator(&self) -> Subspace {
        Matrix::from_rows(self.left_mult_rows(false), self.dim).expect("square").kernel_basis()
    }

    /// `{x : x∘A + A∘x = 0}`.
    pub fn annihilator(&self) -> Subspace {
        let mut rows = self.left_mult_rows(true);
        rows.extend(self.left_mult_rows(false));
        Matrix::from_rows(rows, self.dim).expect("square").kernel_basis()
    }

    pub fn is_null_filiform(&self) -> bool {
        let ps = self.power_series();
        let n = self.dim;
        ps.nilpotent && ps.dims() == (0..=n).rev().collect::<Vec<_>>()
    }

    /// `dim A^i = n - i` for `2 ≤ i ≤ n`.
    pub fn is_filiform(&self) -> bool {
        let ps = self.power_series();
        let n = self.dim;
        if !ps.nilpotent || n < 2 {
            return false;
        }
        (2..=n).all(|i| ps.power(i).dim() == n - i)
    }

    /// Minimal number of generators, `dim A - dim A²` for nilpotent algebras.
    pub fn generator_count(&self) -> Result<usize, AlgebraError> {
        let ps = self.power_series();
        if !ps.nilpotent {
            return Err(AlgebraError::NotNilpotent);
        }
        Ok(self.dim - ps.power(2).dim())
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let full = Subspace::full(self.dim);
        self.product_space(s, &full).is_subspace_of(s) && self.product_space(&full, s).is_subspace_of(s)
    }

    /// Quotient by a two-sided ideal, on the complement spanned by the
    /// standard basis vectors at the ideal's non-pivot coordinates.
    ///
    /// The returned matrix maps `A` coordinates to quotient coordinates.
    pub fn quotient_algebra(&self, ideal: &Subspace) -> Result<(Algebra, Matrix), AlgebraError> {
        if ideal.ambient_dim() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: ideal.ambient_dim() }.into());
        }
        if !self.is_ideal(ideal) {
            return Err(AlgebraError::NotIdeal);
        }
        let comp = ideal.complement_coordinates();
        let m = comp.len();
        let piv = ideal.pivots();
        // Reduce modulo the ideal, then read the complement coordinates.
        let mut proj = Matrix::zeros(m, self.dim);
        for col in 0..self.dim {
            let mut v = unit(self.dim, col);
            for (p, b) in piv.iter().zip(ideal.basis()) {
                if !v[*p].is_zero() {
                    let f = v[*p].clone();
                    for (x, y) in v.iter_mut().zip(b) {
                        *x -= &f * y;
                    }
                }
            }
            for (r, c) in comp.iter().enumerate() {
                proj.set(r, col, v[*c].clone());
            }
        }
        let mut q = Algebra::zero(m, format!("{}/I", self.label));
        for (a, &i) in comp.iter().enumerate() {
            for (b, &j) in comp.iter().enumerate() {
                let prod = self.product(&unit(self.dim, i), &unit(self.dim, j))?;
                let img = proj.mul_vec(&prod)?;
                for (k, c) in img.into_iter().enumerate() {
                    if !c.is_zero() {
                        q.add_product(a, b, k, c);
                    }
                }
            }
        }
        Ok((q, proj))
    }

    /// The algebra `B` for which `m` (columns = images of the basis) is an
    /// isomorphism `A → B`.
    pub fn transport(&self, m: &Matrix) -> Option<Algebra> {
        let inv = m.inverse()?;
        let n = self.dim;
        let pre: Vec<Vec<Q>> = (0..n).map(|j| inv.column(j)).collect();
        let mut b = Algebra::zero(n, self.label.clone());
        b.params = self.params.clone();
        for i in 0..n {
            for j in 0..n {
                let p = self.product(&pre[i], &pre[j]).ok()?;
                for (k, c) in m.mul_vec(&p).ok()?.into_iter().enumerate() {
                    if !c.is_zero() {
                        b.add_product(i, j, k, c);
                    }
                }
            }
        }
        Some(b)
    }

    /// Relabel basis vectors: `e_i` of `self` becomes `e_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Algebra {
        let n = self.dim;
        let mut b = Algebra::zero(n, self.label.clone());
        b.params = self.params.clone();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    b.add_product(perm[i], perm[j], perm[*k], c.clone());
                }
            }
        }
        b
    }

    /// Text in the `zalg 1` format.
    pub fn to_zalg(&self) -> String {
        let mut s = String::new();
        writeln!(s, "zalg 1").unwrap();
        writeln!(s, "dim {}", self.dim).unwrap();
        if !self.label.is_empty() {
            writeln!(s, "label {}", self.label).unwrap();
        }
        for (name, v) in &self.params {
            writeln!(s, "param {} {}", name, fmt_q(v)).unwrap();
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let row = self.basis_product(i, j);
                if row.is_empty() {
                    continue;
                }
                write!(s, "mul {} {} :", i + 1, j + 1).unwrap();
                for (k, c) in row {
                    write!(s, " {} {}", fmt_q(c), k + 1).unwrap();
                }
                s.push('\n');
            }
        }
        s
    }

    pub fn parse_zalg(text: &str) -> Result<Algebra, AlgebraError> {
        let err = |line: usize, msg: &str| AlgebraError::Parse { line, msg: msg.to_string() };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "zalg 1")) => {}
            Some((ln, _)) => return Err(err(ln, "expected header `zalg 1`")),
            None => return Err(err(0, "empty input")),
        }
        let mut alg: Option<Algebra> = None;
        let mut label = String::new();
        let mut params = Vec::new();
        for (ln, line) in lines {
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match kw {
                "dim" => {
                    if alg.is_some() {
                        return Err(err(ln, "duplicate `dim`"));
                    }
                    let n: usize = rest.parse().map_err(|_| err(ln, "bad dimension"))?;
                    alg = Some(Algebra::zero(n, ""));
                }
                "label" => label = rest.to_string(),
                "param" => {
                    let mut it = rest.split_whitespace();
                    let (Some(name), Some(v), None) = (it.next(), it.next(), it.next()) else {
                        return Err(err(ln, "expected `param <name> <p/q>`"));
                    };
                    let v = parse_q(v).ok_or_else(|| err(ln, "bad rational"))?;
                    params.push((name.to_string(), v));
                }
                "mul" => {
                    let a = alg.as_mut().ok_or_else(|| err(ln, "`mul` before `dim`"))?;
                    let (lhs, rhs) = rest.split_once(':').ok_or_else(|| err(ln, "missing `:`"))?;
                    let idx: Vec<&str> = lhs.split_whitespace().collect();
                    if idx.len() != 2 {
                        return Err(err(ln, "expected two factor indices"));
                    }
                    let dim = a.dim;
                    let parse_idx = |s: &str| -> Result<usize, AlgebraError> {
                        let i: usize = s.parse().map_err(|_| err(ln, "bad index"))?;
                        if i == 0 || i > dim {
                            return Err(err(ln, "index out of range"));
                        }
                        Ok(i - 1)
                    };
                    let i = parse_idx(idx[0])?;
                    let j = parse_idx(idx[1])?;
                    let toks: Vec<&str> = rhs.split_whitespace().collect();
                    if toks.is_empty() || toks.len() % 2 != 0 {
                        return Err(err(ln, "expected `<p/q> <k>` pairs"));
                    }
                    for pair in toks.chunks(2) {
                        let c = parse_q(pair[0]).ok_or_else(|| err(ln, "bad rational"))?;
                        let k = parse_idx(pair[1])?;
                        a.add_product(i, j, k, c);
                    }
                }
                _ => return Err(err(ln, &format!("unknown keyword `{kw}`"))),
            }
        }
        let mut a = alg.ok_or_else(|| err(0, "missing `dim`"))?;
        a.label = label;
        a.params = params;
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn f0(n: usize) -> Algebra {
        crate::catalog::make(&crate::catalog::FamilyId::f(0, n)).unwrap()
    }

    #[test]
    fn zero_algebra_basics() {
        let z = Algebra::zero(2, "z");
        assert_eq!(z.power_series().dims(), vec![2, 0]);
        assert_eq!(Algebra::zero(1, "z").nilpotency_index(), Some(2));
        assert_eq!(z.annihilator().dim(), 2);
        assert!(Algebra::zero(1, "z").is_null_filiform());
        assert_eq!(Algebra::zero(3, "z").generator_count(), Ok(3));
    }

    #[test]
    fn tweaked_f0_violates_at_first_triple() {
        let mut a = f0(5);
        a.set_product(1, 0, vec![(2, q(1))]);
        let v = a.check_zinbiel();
        let first = &v[0];
        assert_eq!(first.triple, (0, 0, 0));
        assert_eq!(first.defect[2], q(-1));
    }

    #[test]
    fn quotient_of_f0_by_top() {
        let a = f0(6);
        let top = Subspace::span(6, [unit(6, 5)]);
        let (quo, _) = a.quotient_algebra(&top).unwrap();
        assert!(quo.table_eq(&f0(5)));
        let (same, _) = a.quotient_algebra(&Subspace::zero(6)).unwrap();
        assert!(same.table_eq(&a));
        let not_ideal = Subspace::span(6, [unit(6, 0)]);
        assert_eq!(a.quotient_algebra(&not_ideal).unwrap_err(), AlgebraError::NotIdeal);
    }

    #[test]
    fn zalg_parse_errors_carry_lines() {
        let e = Algebra::parse_zalg("zalg 1\ndim 2\nmul 1 3 : 1 2\n").unwrap_err();
        assert_eq!(e, AlgebraError::Parse { line: 3, msg: "index out of range".into() });
        assert!(Algebra::parse_zalg("zalg 2\n").is_err());
        let ok = Algebra::parse_zalg("# c\nzalg 1\ndim 2 # two\nmul 1 1 : 1/2 2\n").unwrap();
        assert_eq!(ok.coeff(0, 0, 1), crate::linalg::qf(1, 2));
    }
}
