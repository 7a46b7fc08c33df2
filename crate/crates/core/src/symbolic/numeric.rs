//! Arbitrary-precision complex numbers on top of MPFR floats.

use std::fmt;

use num_traits::{Signed, Zero};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::linalg::Q;
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

fn float_of_q(q: &Q, prec: u32) -> Float {
    let num = Float::with_val(prec, Float::parse(q.numer().to_string()).expect("integer literal"));
    let den = Float::with_val(prec, Float::parse(q.denom().to_string()).expect("integer literal"));
    num / den
}

impl Cx {
    pub fn zero(prec: u32) -> Cx {
        Cx { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn from_q(q: &Q, prec: u32) -> Cx {
        Cx { re: float_of_q(q, prec), im: Float::new(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Cx {
        Cx { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    /// `e^{iπ p/q}`.
    pub fn root_of_unity(turn: &Q, prec: u32) -> Cx {
        let angle = Float::with_val(prec, Constant::Pi) * float_of_q(turn, prec);
        let (s, c) = angle.sin_cos(Float::new(prec));
        Cx { re: c, im: s }.normalized()
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    fn normalized(mut self) -> Cx {
        // Keep the sign of zero out of printed output and branch decisions.
        if self.im.is_zero() {
            self.im = Float::new(self.prec());
        }
        if self.re.is_zero() {
            self.re = Float::new(self.prec());
        }
        self
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn neg(&self) -> Cx {
        Cx { re: -self.re.clone(), im: -self.im.clone() }.normalized()
    }

    pub fn add(&self, o: &Cx) -> Cx {
        Cx { re: Float::with_val(self.prec(), &self.re + &o.re), im: Float::with_val(self.prec(), &self.im + &o.im) }
            .normalized()
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        Cx { re: Float::with_val(self.prec(), &self.re - &o.re), im: Float::with_val(self.prec(), &self.im - &o.im) }
            .normalized()
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Cx { re, im }.normalized()
    }

    pub fn div(&self, o: &Cx) -> Option<Cx> {
        if o.is_exact_zero() {
            return None;
        }
        let p = self.prec();
        let den = Float::with_val(p, o.re.clone().square() + o.im.clone().square());
        let conj = Cx { re: o.re.clone(), im: -o.im.clone() };
        let num = self.mul(&conj);
        Some(Cx { re: num.re / &den, im: num.im / &den }.normalized())
    }

    /// Principal `c^p = |c|^p e^{i p arg c}`; `None` for `0^p` with `p ≤ 0`.
    pub fn pow_q(&self, p: &Q) -> Option<Cx> {
        let prec = self.prec();
        if self.is_exact_zero() {
            return if p.is_positive() { Some(Cx::zero(prec)) } else if p.is_zero() { Some(Cx::from_q(&Q::from_integer(1.into()), prec)) } else { None };
        }
        if p.is_integer() {
            let mut e: i64 = p.to_integer().try_into().ok()?;
            let mut base = self.clone();
            if e < 0 {
                base = Cx::from_q(&Q::from_integer(1.into()), prec).div(&base)?;
                e = -e;
            }
            let mut acc = Cx::from_q(&Q::from_integer(1.into()), prec);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc.mul(&base);
                }
                base = base.mul(&base);
                e >>= 1;
            }
            return Some(acc);
        }
        let pf = float_of_q(p, prec);
        let r = self.abs().pow(&pf);
        let th = self.arg() * &pf;
        let (s, c) = th.sin_cos(Float::new(prec));
        Some(Cx { re: Float::with_val(prec, &r * &c), im: Float::with_val(prec, &r * &s) }.normalized())
    }

    /// `|self| ≤ tol`.
    pub fn is_small(&self, tol: &Float) -> bool {
        self.abs() <= *tol
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn close_to(&self, re: f64, im: f64, tol: f64) -> bool {
        let (a, b) = self.to_f64();
        (a - re).hypot(b - im) <= tol
    }
}

impl Ring for Cx {
    fn zero_like(&self) -> Self {
        Cx::zero(self.prec())
    }
    fn vanishes(&self) -> bool {
        self.is_exact_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Cx::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Cx::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Cx::mul(self, other)
    }
    fn scale(&self, c: &Q) -> Self {
        let f = float_of_q(c, self.prec());
        Cx { re: Float::with_val(self.prec(), &self.re * &f), im: Float::with_val(self.prec(), &self.im * &f) }.normalized()
    }
    fn neg(&self) -> Self {
        Cx::neg(self)
    }
    fn constant_like(&self, c: &Q) -> Self {
        Cx::from_q(c, self.prec())
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        if im == 0.0 {
            write!(f, "{re:.12}")
        } else {
            write!(f, "{re:.12}{}{:.12}i", if im < 0.0 { "-" } else { "+" }, im.abs())
        }
    }
}

/// Rank of a complex matrix by elimination with partial pivoting; entries
/// below `tol × (largest row norm)` count as zero.
pub fn numeric_rank(rows: &[Vec<Cx>], tol: &Float) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let prec = rows[0].first().map_or(64, Cx::prec);
    let max_norm = rows
        .iter()
        .map(|r| {
            let mut s = Float::new(prec);
            for c in r {
                s += c.abs().square();
            }
            s.sqrt()
        })
        .fold(Float::new(prec), |a, b| if b > a { b } else { a });
    if max_norm.is_zero() {
        return 0;
    }
    let thresh = Float::with_val(prec, tol * &max_norm);
    let mut m: Vec<Vec<Cx>> = rows.to_vec();
    let cols = m[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let mut best: Option<(usize, Float)> = None;
        for (r, row) in m.iter().enumerate().skip(rank) {
            let a = row[col].abs();
            if best.as_ref().is_none_or(|(_, b)| a > *b) {
                best = Some((r, a));
            }
        }
        let Some((pr, pa)) = best else { break };
        if pa <= thresh {
            continue;
        }
        m.swap(rank, pr);
        let piv = m[rank][col].clone();
        for r in rank + 1..m.len() {
            let f = m[r][col].div(&piv).expect("pivot above threshold");
            if f.is_exact_zero() {
                continue;
            }
            for c in col..cols {
                let t = f.mul(&m[rank][c]);
                m[r][c] = m[r][c].sub(&t);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

pub fn tol_float(tol: &Q, prec: u32) -> Float {
    float_of_q(tol, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{q, qf};

    #[test]
    fn principal_roots() {
        let m1 = Cx::from_q(&q(-1), 128);
        let r = m1.pow_q(&qf(1, 2)).unwrap();
        assert!(r.close_to(0.0, 1.0, 1e-30));
        let cube = Cx::from_q(&q(-8), 128).pow_q(&qf(1, 3)).unwrap();
        assert!(cube.close_to(1.0, 3f64.sqrt(), 1e-15));
        assert!(Cx::zero(64).pow_q(&q(-1)).is_none());
        assert_eq!(Cx::from_q(&q(3), 64).pow_q(&q(-2)).unwrap().to_f64().0, 1.0 / 9.0);
    }

    #[test]
    fn high_precision_identity() {
        // (2^{1/7})^7 = 2 to far beyond double precision.
        let r = Cx::from_q(&q(2), 256).pow_q(&qf(1, 7)).unwrap();
        let back = r.pow_q(&q(7)).unwrap().sub(&Cx::from_q(&q(2), 256));
        assert!(back.is_small(&tol_float(&Q::new(1.into(), num_bigint::BigInt::from(10).pow(60u32)), 256)));
    }

    #[test]
    fn rank_threshold_is_relative() {
        let row = |a: f64, b: f64| vec![Cx::from_f64(a, 0.0, 64), Cx::from_f64(b, 0.0, 64)];
        let tol = tol_float(&qf(1, 1_000_000_000), 64);
        assert_eq!(numeric_rank(&[row(1e6, 2e6), row(1.0, 2.0 + 1e-12)], &tol), 1);
        assert_eq!(numeric_rank(&[row(1e-6, 0.0), row(0.0, 1e-6)], &tol), 2);
        assert_eq!(numeric_rank(&[row(0.0, 0.0)], &tol), 0);
        let z = Cx::root_of_unity(&qf(1, 2), 64);
        assert!(z.close_to(0.0, 1.0, 1e-15));
    }
}
