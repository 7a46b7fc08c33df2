//! Exact dense linear algebra over the rationals.
//!
//! Subspaces are stored by their reduced row-echelon basis, so two equal
//! subspaces always compare equal with `==`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `num/den` as a rational.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Print a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `p` or `p/q` (optional leading minus on `p`).
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// Row-major dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Build from a list of equal-length rows. `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: nrows, cols, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_rows(rows, cols).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row-echelon form and the pivot columns in increasing order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if !rv.is_zero() {
                        let v = m.get(i, j) - &f * rv;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i));
        }
        e.rank()
    }

    /// Canonical basis of `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i));
        }
        e.kernel()
    }

    pub fn det(&self) -> Option<Q> {
        if self.rows != self.cols {
            return None;
        }
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return Some(Q::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pv = m.get(c, c).clone();
            det *= &pv;
            for i in c + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &pv;
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Some(det)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_q).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Incremental reduced row-echelon form with sparse rows.
///
/// Used for the large, very sparse systems produced by the cocycle condition.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<Vec<(usize, Q)>>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, rows: Vec::new(), pivot_row: vec![None; cols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current rows; returns the dense remainder.
    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut w = v.to_vec();
        for c in 0..self.cols {
            if w[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let f = w[c].clone();
                for (j, x) in &self.rows[r] {
                    w[*j] -= &f * x;
                }
            }
        }
        w
    }

    /// Add a vector; returns true if it increased the rank.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.cols, "echelon row length");
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        let row: Vec<(usize, Q)> = w
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x * &inv))
            .collect();
        for other in self.rows.iter_mut() {
            let Some(pos) = other.iter().position(|(j, _)| *j == p) else {
                continue;
            };
            let f = other[pos].1.clone();
            let mut dense: Vec<Q> = vec![Q::zero(); self.cols];
            for (j, x) in other.iter() {
                dense[*j] = x.clone();
            }
            for (j, x) in &row {
                dense[*j] -= &f * x;
            }
            *other = dense.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    fn sorted_rows(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::with_capacity(self.rows.len());
        for c in 0..self.cols {
            if let Some(r) = self.pivot_row[c] {
                let mut dense = vec![Q::zero(); self.cols];
                for (j, x) in &self.rows[r] {
                    dense[*j] = x.clone();
                }
                out.push(dense);
            }
        }
        out
    }

    pub fn into_subspace(self) -> Subspace {
        let basis = self.sorted_rows();
        Subspace { ambient: self.cols, basis }
    }

    /// Kernel of the matrix whose rows were inserted.
    pub fn kernel(&self) -> Subspace {
        let mut vecs = Vec::new();
        for f in 0..self.cols {
            if self.pivot_row[f].is_some() {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for c in 0..self.cols {
                if let Some(r) = self.pivot_row[c] {
                    if let Some((_, x)) = self.rows[r].iter().find(|(j, _)| *j == f) {
                        v[c] = -x.clone();
                    }
                }
            }
            vecs.push(v);
        }
        Subspace::span(self.cols, vecs)
    }
}

/// A subspace of `Q^ambient` in canonical RREF form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Matrix::identity(ambient).row_space()
    }

    pub fn span<I>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator,
        I::Item: AsRef<[Q]>,
    {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            e.insert(v.as_ref());
        }
        e.into_subspace()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|b| b.iter().position(|x| !x.is_zero()).expect("zero basis vector"))
            .collect()
    }

    /// Coordinates with respect to the basis, or `None` if `v` is not in the subspace.
    pub fn membership(&self, v: &[Q]) -> Result<Option<Vec<Q>>, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: v.len() });
        }
        let coords: Vec<Q> = self.pivots().into_iter().map(|p| v[p].clone()).collect();
        let mut rebuilt = vec![Q::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in rebuilt.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r += c * x;
                }
            }
        }
        Ok((rebuilt.as_slice() == v).then_some(coords))
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        matches!(self.membership(v), Ok(Some(_)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        Ok(Subspace::span(self.ambient, self.basis.iter().chain(&other.basis)))
    }

    /// Vectors orthogonal (for the standard pairing) to every basis vector.
    pub fn orthogonal(&self) -> Subspace {
        let m = Matrix::from_rows(self.basis.clone(), self.ambient).expect("basis rows");
        m.kernel_basis()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let constraints: Vec<Vec<Q>> =
            self.orthogonal().basis.into_iter().chain(other.orthogonal().basis).collect();
        let m = Matrix::from_rows(constraints, self.ambient)?;
        Ok(m.kernel_basis())
    }

    /// Indices of the standard basis vectors completing this subspace to the whole space.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let piv = self.pivots();
        (0..self.ambient).filter(|i| !piv.contains(i)).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }
}

impl Matrix {
    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.cols, self.to_rows())
    }
}

/// Unit vector `e_i` (0-based) in `Q^n`.
pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let (r, p) = Matrix::zeros(2, 2).rref();
        assert!(r.is_zero());
        assert!(p.is_empty());
        let (r, p) = Matrix::identity(2).rref();
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
        let (r, p) = Matrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(3).kernel_basis().dim(), 0);
        assert_eq!(Matrix::zeros(2, 3).kernel_basis().dim(), 3);
        let k = Matrix::from_i64(&[&[1, 1, 0]]).kernel_basis();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[q(1), q(-1), q(0)]));
    }

    #[test]
    fn membership_examples() {
        let s = Subspace::span(2, [vec![q(1), q(2)]]);
        assert_eq!(s.membership(&[q(0), q(0)]).unwrap(), Some(vec![q(0)]));
        assert_eq!(s.membership(&[q(2), q(4)]).unwrap(), Some(vec![q(2)]));
        let t = Subspace::span(2, [vec![q(0), q(1)]]);
        assert_eq!(t.membership(&[q(1), q(0)]).unwrap(), None);
        assert!(t.membership(&[q(1)]).is_err());
    }

    #[test]
    fn intersect_examples() {
        let a = Subspace::span(2, [vec![q(1), q(0)]]);
        let b = Subspace::span(2, [vec![q(0), q(1)]]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        let full = Subspace::full(2);
        let d = Subspace::span(2, [vec![q(1), q(1)]]);
        assert_eq!(full.intersect(&d).unwrap(), d);
        assert!(a.intersect(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn det_and_inverse() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.det(), Some(q(1)));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_q("-3/6"), Some(qf(-1, 2)));
        assert_eq!(fmt_q(&qf(4, 2)), "2");
        assert_eq!(parse_q("1/0"), None);
    }
}
