//! Sparse multivariate polynomials with rational coefficients.
//!
//! Each polynomial carries its variable list. Binary operations on
//! polynomials over different lists first merge the lists (left list, then
//! the right list's new names). Terms are ordered graded-lexicographically
//! with respect to the variable list.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::linalg::{fmt_q, Q};
use crate::ring::Ring;

/// Exponent vector, aligned with the owning polynomial's variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { vars: Arc::new(Vec::new()), terms: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> Poly {
        Poly::constant_in(&Arc::new(Vec::new()), c)
    }

    pub fn constant_in(vars: &Arc<Vec<String>>, c: Q) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(vec![0; vars.len()]), c);
        }
        Poly { vars: vars.clone(), terms }
    }

    pub fn var(name: &str) -> Poly {
        Poly::var_in(&Arc::new(vec![name.to_string()]), name)
    }

    /// A variable of an existing list; the list is extended if needed.
    pub fn var_in(vars: &Arc<Vec<String>>, name: &str) -> Poly {
        let (vars, idx) = match vars.iter().position(|v| v == name) {
            Some(i) => (vars.clone(), i),
            None => {
                let mut v = (**vars).clone();
                v.push(name.to_string());
                (Arc::new(v), vars.len())
            }
        };
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        Poly { vars, terms: BTreeMap::from([(Mono(e), Q::one())]) }
    }

    /// Shared variable list for building many polynomials cheaply.
    pub fn context(names: &[&str]) -> Arc<Vec<String>> {
        Arc::new(names.iter().map(|s| s.to_string()).collect())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn with_vars(&self, target: &Arc<Vec<String>>) -> Poly {
        if Arc::ptr_eq(&self.vars, target) || *self.vars == **target {
            return Poly { vars: target.clone(), terms: self.terms.clone() };
        }
        let map: Vec<usize> =
            self.vars.iter().map(|v| target.iter().position(|t| t == v).expect("target contains all variables")).collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] = x;
            }
            terms.insert(Mono(e), c.clone());
        }
        Poly { vars: target.clone(), terms }
    }

    fn aligned(&self, other: &Poly) -> (Poly, Poly) {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            return (self.clone(), other.with_vars(&self.vars));
        }
        let mut merged = (*self.vars).clone();
        for v in other.vars.iter() {
            if !merged.contains(v) {
                merged.push(v.clone());
            }
        }
        let merged = Arc::new(merged);
        (self.with_vars(&merged), other.with_vars(&merged))
    }

    fn add_term(terms: &mut BTreeMap<Mono, Q>, m: Mono, c: Q) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_vars(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        if self.same_vars(other) {
            let mut a = self.clone();
            for (m, c) in &other.terms {
                Self::add_term(&mut a.terms, m.clone(), c.clone());
            }
            return a;
        }
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            Self::add_term(&mut a.terms, m, c);
        }
        a
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if !self.same_vars(other) {
            let (a, b) = self.aligned(other);
            return a.mul(&b);
        }
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                Self::add_term(&mut terms, Mono(e), ca * cb);
            }
        }
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut acc = Poly::constant_in(&self.vars, Q::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Replace variable `name` by `value`.
    pub fn subst(&self, name: &str, value: &Poly) -> Poly {
        let Some(idx) = self.vars.iter().position(|v| v == name) else {
            return self.clone();
        };
        let mut out = Poly::constant_in(&self.vars, Q::zero());
        let mut powers: HashMap<u32, Poly> = HashMap::new();
        for (m, c) in &self.terms {
            let k = m.0[idx];
            let mut rest = m.0.clone();
            rest[idx] = 0;
            let mono = Poly { vars: self.vars.clone(), terms: BTreeMap::from([(Mono(rest), c.clone())]) };
            let p = powers.entry(k).or_insert_with(|| value.pow(k));
            out = out.add(&mono.mul(p));
        }
        out
    }

    /// Rewrite `name^k` as `replacement` until every exponent of `name` is below `k`.
    pub fn reduce_power(&self, name: &str, k: u32, replacement: &Poly) -> Poly {
        let (this, rep) = self.aligned(replacement);
        let Some(idx) = this.vars.iter().position(|v| v == name) else {
            return self.clone();
        };
        let mut out = Poly::constant_in(&this.vars, Q::zero());
        let mut rep_pows: HashMap<u32, Poly> = HashMap::new();
        for (m, c) in &this.terms {
            let e = m.0[idx];
            let (q, r) = (e / k, e % k);
            let mut rest = m.0.clone();
            rest[idx] = r;
            let mono = Poly { vars: this.vars.clone(), terms: BTreeMap::from([(Mono(rest), c.clone())]) };
            if q == 0 {
                out = out.add(&mono);
            } else {
                let p = rep_pows.entry(q).or_insert_with(|| rep.pow(q).reduce_power(name, k, &rep));
                out = out.add(&mono.mul(p));
            }
        }
        out
    }

    pub fn eval(&self, env: &HashMap<String, Q>) -> Option<Q> {
        let vals: Vec<Option<&Q>> = self.vars.iter().map(|v| env.get(v)).collect();
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow::Pow::pow(vals[i]?, e);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Terms keyed by sorted `(name, exponent)` lists with zero exponents
    /// dropped; independent of the variable list.
    fn canonical(&self) -> BTreeMap<Vec<(String, u32)>, Q> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut key: Vec<(String, u32)> =
                    self.vars.iter().zip(&m.0).filter(|(_, &e)| e > 0).map(|(v, &e)| (v.clone(), e)).collect();
                key.sort();
                (key, c.clone())
            })
            .collect()
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.vars, &other.vars) || *self.vars == *other.vars {
            return self.terms == other.terms;
        }
        self.canonical() == other.canonical()
    }
}

impl Eq for Poly {}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::constant_in(&self.vars, Q::zero())
    }
    fn vanishes(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Poly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn scale(&self, c: &Q) -> Self {
        Poly::scale(self, c)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
    fn constant_like(&self, c: &Q) -> Self {
        Poly::constant_in(&self.vars, c.clone())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = self
                .vars
                .iter()
                .zip(&m.0)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.is_empty() {
                f.write_str(&fmt_q(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_q(&abs))?;
                }
                f.write_str(&mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn arithmetic() {
        let x = Poly::var("x");
        let y = Poly::var("y");
        let one = Poly::constant(q(1));
        assert_eq!(x.add(&y).mul(&x.sub(&y)), x.mul(&x).sub(&y.mul(&y)));
        let cube = x.add(&one).pow(3);
        assert_eq!(cube.to_string(), "x^3 + 3*x^2 + 3*x + 1");
        let env = HashMap::from([("x".to_string(), q(2))]);
        assert_eq!(x.pow(2).eval(&env), Some(q(4)));
        assert_eq!(x.pow(2).subst("x", &Poly::constant(q(2))).as_constant(), Some(q(4)));
    }

    #[test]
    fn equality_ignores_variable_order() {
        let a = Poly::var("x").mul(&Poly::var("y"));
        let b = Poly::var("y").mul(&Poly::var("x"));
        assert_eq!(a, b);
        assert_ne!(a, Poly::var("x"));
        assert_eq!(Poly::var("x").sub(&Poly::var("x")), Poly::zero());
    }

    #[test]
    fn power_reduction() {
        let ctx = Poly::context(&["x", "y"]);
        let x = Poly::var_in(&ctx, "x");
        let y = Poly::var_in(&ctx, "y");
        // y^2 = x^3: y^5 = y * x^6.
        let r = y.pow(5).reduce_power("y", 2, &x.pow(3));
        assert_eq!(r, y.mul(&x.pow(6)));
    }
}
