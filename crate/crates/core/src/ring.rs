//! Minimal commutative-ring interface shared by the exact, symbolic and
//! numeric code paths.
//!
//! Structure constants are always rational, so the only mixed operation a
//! scalar type needs is multiplication by a rational.

use num_traits::Zero;

use crate::linalg::Q;

pub trait Ring: Clone + std::fmt::Debug {
    /// Zero in the same context as `self` (same precision, same variable set).
    fn zero_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &Q) -> Self;

    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }

    /// The rational `c` embedded in the context of `self`.
    fn constant_like(&self, c: &Q) -> Self;
}

impl Ring for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &Q) -> Self {
        self * c
    }
    fn constant_like(&self, c: &Q) -> Self {
        c.clone()
    }
}

/// `sum_i a_i * b_i`.
pub fn dot<R: Ring>(a: &[R], b: &[R]) -> R {
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        if !x.vanishes() && !y.vanishes() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}

/// Embed a rational vector into the context of `like`.
pub fn embed<R: Ring>(v: &[Q], like: &R) -> Vec<R> {
    v.iter().map(|c| like.constant_like(c)).collect()
}

/// `sum_k coeffs[k] * vecs[k]` with rational coefficients.
pub fn combine<R: Ring>(coeffs: &[Q], vecs: &[Vec<R>], like: &R) -> Vec<R> {
    let n = vecs.first().map_or(0, |v| v.len());
    let mut out = vec![like.zero_like(); n];
    for (c, v) in coeffs.iter().zip(vecs) {
        if Zero::is_zero(c) {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.vanishes() {
                *o = o.add(&x.scale(c));
            }
        }
    }
    out
}

/// A dense matrix over an arbitrary ring, stored as a list of columns.
///
/// Column `j` is the image of the `j`-th basis vector, matching the
/// convention `phi(e_j) = sum_i a_{i,j} e_i`.
#[derive(Clone, Debug)]
pub struct ColMatrix<R> {
    pub cols: Vec<Vec<R>>,
}

impl<R: Ring> ColMatrix<R> {
    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &R {
        &self.cols[j][i]
    }

    pub fn apply(&self, v: &[R]) -> Vec<R> {
        let n = self.cols.first().map_or(0, |c| c.len());
        let like = &self.cols[0][0];
        let mut out = vec![like.zero_like(); n];
        for (c, x) in self.cols.iter().zip(v) {
            if x.vanishes() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(c) {
                if !y.vanishes() {
                    *o = o.add(&y.mul(x));
                }
            }
        }
        out
    }

    /// Image of a rational vector.
    pub fn apply_q(&self, v: &[Q]) -> Vec<R> {
        combine(v, &self.cols, &self.cols[0][0])
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &ColMatrix<R>) -> ColMatrix<R> {
        ColMatrix { cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }
}

impl ColMatrix<Q> {
    pub fn to_matrix(&self) -> crate::linalg::Matrix {
        crate::linalg::Matrix::from_rows(self.cols.clone(), self.cols.len())
            .expect("square")
            .transpose()
    }

    pub fn from_matrix(m: &crate::linalg::Matrix) -> Self {
        ColMatrix { cols: (0..m.cols()).map(|j| m.column(j)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        ColMatrix { cols: (0..n).map(|j| crate::linalg::unit(n, j)).collect() }
    }
}

/// Elements of `Q[t]/(t^m + 1)`, coefficients of `1, t, …, t^{m-1}`.
///
/// With `t` read as `e^{iπ/m}` this holds exact values for witnesses that
/// need a root of `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyc {
    pub c: Vec<Q>,
}

impl Cyc {
    pub fn constant(m: usize, q: Q) -> Cyc {
        let mut c = vec![Q::zero(); m];
        c[0] = q;
        Cyc { c }
    }

    /// `t^k`, reduced with `t^m = -1`.
    pub fn t_pow(m: usize, k: usize) -> Cyc {
        let mut c = vec![Q::zero(); m];
        let sign = if (k / m) % 2 == 0 { 1 } else { -1 };
        c[k % m] = Q::from_integer(sign.into());
        Cyc { c }
    }

    pub fn modulus(&self) -> usize {
        self.c.len()
    }

    /// Nonzero rational multiple of a power of `t`; such elements are units.
    pub fn is_monomial_unit(&self) -> bool {
        self.c.iter().filter(|x| !Zero::is_zero(*x)).count() == 1
    }

    /// `(k, q)` with `self = q t^k`, `q ≠ 0`.
    pub fn monomial(&self) -> Option<(usize, Q)> {
        let mut nz = self.c.iter().enumerate().filter(|(_, x)| !Zero::is_zero(*x));
        let (k, q) = nz.next()?;
        nz.next().is_none().then(|| (k, q.clone()))
    }
}

impl Ring for Cyc {
    fn zero_like(&self) -> Self {
        Cyc { c: vec![Q::zero(); self.c.len()] }
    }
    fn vanishes(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
    fn add(&self, o: &Self) -> Self {
        Cyc { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        Cyc { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let m = self.c.len();
        let mut out = vec![Q::zero(); m];
        for (i, a) in self.c.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if Zero::is_zero(b) {
                    continue;
                }
                let p = a * b;
                if i + j < m {
                    out[i + j] += p;
                } else {
                    out[i + j - m] -= p;
                }
            }
        }
        Cyc { c: out }
    }
    fn scale(&self, k: &Q) -> Self {
        Cyc { c: self.c.iter().map(|a| a * k).collect() }
    }
    fn constant_like(&self, q: &Q) -> Self {
        Cyc::constant(self.c.len(), q.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn cyc_relation() {
        for m in 1..6 {
            let t = Cyc::t_pow(m, 1);
            let mut acc = Cyc::constant(m, q(1));
            for _ in 0..m {
                acc = acc.mul(&t);
            }
            assert_eq!(acc, Cyc::constant(m, q(-1)));
            assert_eq!(Cyc::t_pow(m, 2 * m), Cyc::constant(m, q(1)));
        }
        assert!(Cyc::t_pow(4, 3).is_monomial_unit());
        assert!(!Cyc::constant(3, q(1)).add(&Cyc::t_pow(3, 1)).is_monomial_unit());
    }

    #[test]
    fn colmatrix_compose() {
        let a = ColMatrix::from_matrix(&crate::linalg::Matrix::from_i64(&[&[1, 2], &[0, 1]]));
        let b = ColMatrix::from_matrix(&crate::linalg::Matrix::from_i64(&[&[1, 0], &[3, 1]]));
        let ab = a.compose(&b).to_matrix();
        assert_eq!(ab, a.to_matrix().mul(&b.to_matrix()).unwrap());
        assert_eq!(dot(&[q(1), q(2)], &[q(3), q(4)]), q(11));
    }
}
