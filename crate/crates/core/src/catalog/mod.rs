//! Named algebras and cocycles: the families `F_n^0..F_n^3`, the sixteen
//! `μ` algebras, the `∇` bases, reduction cases, orbit lists and the
//! extension correspondence.

mod cases;
mod table;

pub use cases::{orbit_lists, reduction_cases, Constraint, OrbitList, ReductionCase};
pub use table::{extension_theorem_table, representative_forms, AlphaRule, ExtensionRow, Witness};
pub(crate) use table::env as table_env;

use std::fmt;

use num_bigint::BigInt;

use crate::algebra::Algebra;
use crate::cocycles::BilinearForm;
use crate::linalg::{fmt_q, parse_q, q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    F0,
    F1,
    F2,
    F3,
    Mu(u8),
}

impl Family {
    /// `F1..F3` as 1..3.
    pub fn filiform_index(self) -> Option<usize> {
        match self {
            Family::F1 => Some(1),
            Family::F2 => Some(2),
            Family::F3 => Some(3),
            _ => None,
        }
    }

    pub fn takes_alpha(self) -> bool {
        matches!(self, Family::Mu(2 | 10 | 11))
    }

    pub fn parse(s: &str) -> Option<Family> {
        let s = s.trim();
        match s.to_ascii_uppercase().as_str() {
            "F0" => Some(Family::F0),
            "F1" => Some(Family::F1),
            "F2" => Some(Family::F2),
            "F3" => Some(Family::F3),
            up => {
                let k: u8 = up.strip_prefix("MU")?.trim_start_matches('_').parse().ok()?;
                (1..=16).contains(&k).then_some(Family::Mu(k))
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::F0 => write!(f, "F0"),
            Family::F1 => write!(f, "F1"),
            Family::F2 => write!(f, "F2"),
            Family::F3 => write!(f, "F3"),
            Family::Mu(k) => write!(f, "MU{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilyId {
    pub family: Family,
    pub n: usize,
    pub alpha: Option<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("{0} takes a parameter α")]
    MissingAlpha(Family),
    #[error("{0} takes no parameter")]
    UnexpectedAlpha(Family),
    #[error("{family} needs n ≥ {min}, got {n}")]
    DimensionTooSmall { family: Family, n: usize, min: usize },
    #[error("no ∇ basis for {0}")]
    NotFiliformFamily(Family),
}

impl FamilyId {
    /// `F_n^k` for `k` in `0..=3`.
    pub fn f(k: usize, n: usize) -> Self {
        let family = match k {
            0 => Family::F0,
            1 => Family::F1,
            2 => Family::F2,
            3 => Family::F3,
            _ => panic!("no family F{k}"),
        };
        FamilyId { family, n, alpha: None }
    }

    pub fn mu(k: u8, n: usize, alpha: Option<Q>) -> Self {
        FamilyId { family: Family::Mu(k), n, alpha }
    }

    pub fn min_dim(&self) -> usize {
        match self.family {
            Family::F0 => 1,
            _ => 5,
        }
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        if self.n < self.min_dim() {
            return Err(CatalogError::DimensionTooSmall { family: self.family, n: self.n, min: self.min_dim() });
        }
        match (self.family.takes_alpha(), &self.alpha) {
            (true, None) => Err(CatalogError::MissingAlpha(self.family)),
            (false, Some(_)) => Err(CatalogError::UnexpectedAlpha(self.family)),
            _ => Ok(()),
        }
    }

    /// `F_5^1`, `mu_2^7(1/2)`.
    pub fn label(&self) -> String {
        let base = match self.family {
            Family::F0 => format!("F_{}^0", self.n),
            Family::F1 => format!("F_{}^1", self.n),
            Family::F2 => format!("F_{}^2", self.n),
            Family::F3 => format!("F_{}^3", self.n),
            Family::Mu(k) => format!("mu_{}^{}", k, self.n),
        };
        match &self.alpha {
            Some(a) => format!("{base}({})", fmt_q(a)),
            None => base,
        }
    }

    pub fn from_label(label: &str) -> Option<FamilyId> {
        let label = label.trim();
        let (head, alpha) = match label.split_once('(') {
            Some((h, rest)) => (h, Some(parse_q(rest.strip_suffix(')')?)?)),
            None => (label, None),
        };
        let (name, sup) = head.split_once('^')?;
        let id = if let Some(k) = name.strip_prefix("mu_") {
            FamilyId::mu(k.parse().ok()?, sup.parse().ok()?, alpha)
        } else {
            let n: usize = name.strip_prefix("F_")?.parse().ok()?;
            let k: usize = sup.parse().ok()?;
            if k > 3 || alpha.is_some() {
                return None;
            }
            FamilyId::f(k, n)
        };
        id.validate().ok().map(|_| id)
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `C_i^j`, zero for `j > i`.
pub fn binomial(i: u64, j: u64) -> Q {
    Q::from_integer(num_integer::binomial(BigInt::from(i), BigInt::from(j)))
}

/// `e_i∘e_j = C_{i+j-1}^j e_{i+j}` for `2 ≤ i+j ≤ top` (1-based).
fn add_core(a: &mut Algebra, top: usize) {
    for i in 1..top {
        for j in 1..=(top - i) {
            a.add_product(i - 1, j - 1, i + j - 1, binomial((i + j - 1) as u64, j as u64));
        }
    }
}

/// Size of the gap below `n` in the core product range of `μ_k`.
fn mu_core_gap(k: u8) -> usize {
    match k {
        5 | 6 | 9 | 10 | 15 | 16 => 3,
        14 => 4,
        _ => 2,
    }
}

pub fn make(id: &FamilyId) -> Result<Algebra, CatalogError> {
    id.validate()?;
    let n = id.n;
    let mut a = Algebra::zero(n, id.label());
    if let Some(al) = &id.alpha {
        a = a.with_param("alpha", al.clone());
    }
    // 1-based helper.
    let put = |a: &mut Algebra, i: usize, j: usize, k: usize, c: Q| a.add_product(i - 1, j - 1, k - 1, c);
    match id.family {
        Family::F0 => add_core(&mut a, n),
        Family::F1 | Family::F2 | Family::F3 => {
            add_core(&mut a, n - 1);
            match id.family {
                Family::F2 => put(&mut a, n, 1, n - 1, q(1)),
                Family::F3 => put(&mut a, n, n, n - 1, q(1)),
                _ => {}
            }
        }
        Family::Mu(k) => {
            add_core(&mut a, n - mu_core_gap(k));
            let al = || id.alpha.clone().expect("validated");
            let one = q(1);
            let inv = |d: usize| Q::new(1.into(), BigInt::from(d));
            match k {
                1 => put(&mut a, 1, n, n - 1, one),
                2 => {
                    put(&mut a, 1, n, n - 1, al());
                    put(&mut a, n, 1, n - 1, one);
                }
                3 => put(&mut a, n, n, n - 1, one),
                4 => {
                    put(&mut a, 1, n, n - 1, one.clone());
                    put(&mut a, n, n, n - 1, one);
                }
                5 => {
                    put(&mut a, 1, n, n - 1, one.clone());
                    put(&mut a, n, 1, n - 2, one);
                }
                6 | 7 => {
                    put(&mut a, 1, n, n - 1, one.clone());
                    put(&mut a, n, n, n - 2, one);
                }
                8 => {
                    put(&mut a, 1, n, n - 1, inv(n - 3));
                    put(&mut a, n, 1, n - 2, one.clone());
                    put(&mut a, n, 1, n - 1, one);
                }
                9 => {
                    put(&mut a, 1, n, n - 2, one.clone());
                    put(&mut a, 1, n, n - 1, one.clone());
                    put(&mut a, n, 1, n - 1, one.clone());
                    put(&mut a, n, n, n - 2, one);
                }
                10 | 11 => {
                    put(&mut a, 1, n, n - 1, al());
                    put(&mut a, n, 1, n - 1, one.clone());
                    put(&mut a, n, n, n - 2, one);
                }
                12 => {
                    put(&mut a, n, 1, n - 2, one.clone());
                    put(&mut a, n, 1, n - 1, one.clone());
                    put(&mut a, n, n, n - 1, one);
                }
                13 => {
                    put(&mut a, n, 1, n - 2, one.clone());
                    put(&mut a, n, n, n - 1, one);
                }
                14 | 15 => {
                    put(&mut a, 1, n, n - 2, one.clone());
                    put(&mut a, n, 1, n - 1, one.clone());
                    put(&mut a, n, n, n - 3, one);
                }
                16 => {
                    put(&mut a, 1, n, n - 1, inv(n - 4));
                    put(&mut a, n, 1, n - 3, one.clone());
                    put(&mut a, n, 1, n - 1, one.clone());
                    put(&mut a, n, n, n - 2, one);
                }
                _ => unreachable!("validated μ index"),
            }
        }
    }
    Ok(a)
}

/// `S_s = Σ_{i=1}^{s-1} C_{s-1}^{i-1} Δ_{i,s-i}` on an `n`-dimensional space.
pub fn s_form(n: usize, s: usize) -> BilinearForm {
    let mut f = BilinearForm::zero(n);
    for i in 1..s {
        f.add_entry(i - 1, s - i - 1, &binomial((s - 1) as u64, (i - 1) as u64));
    }
    f
}

/// `Σ_{i+j=n+1} C_n^j Δ_{i,j}`, the class extending `F_n^0` to `F_{n+1}^0`.
pub fn f0_class(n: usize) -> BilinearForm {
    let mut f = BilinearForm::zero(n);
    for j in 1..=n {
        f.add_entry(n - j, j - 1, &binomial(n as u64, j as u64));
    }
    f
}

/// Representatives `∇_1 = Δ_{1,n}`, `∇_2 = Δ_{n,1}`, `∇_3 = Δ_{n,n}` and,
/// for `F1`, `∇_4 = S_n`.
pub fn nabla_basis(family: Family, n: usize) -> Result<Vec<BilinearForm>, CatalogError> {
    let k = family.filiform_index().ok_or(CatalogError::NotFiliformFamily(family))?;
    if n < 5 {
        return Err(CatalogError::DimensionTooSmall { family, n, min: 5 });
    }
    let mut out = vec![
        BilinearForm::delta(n, 0, n - 1),
        BilinearForm::delta(n, n - 1, 0),
        BilinearForm::delta(n, n - 1, n - 1),
    ];
    if k == 1 {
        out.push(s_form(n, n));
    }
    Ok(out)
}

/// Listed bases of `Z²` and `B²` for `F1..F3`, as forms.
pub fn listed_cocycle_basis(family: Family, n: usize) -> Result<Vec<BilinearForm>, CatalogError> {
    let k = family.filiform_index().ok_or(CatalogError::NotFiliformFamily(family))?;
    let top = if k == 1 { n } else { n - 1 };
    let mut out = vec![
        BilinearForm::delta(n, 0, 0),
        BilinearForm::delta(n, 0, n - 1),
        BilinearForm::delta(n, n - 1, 0),
        BilinearForm::delta(n, n - 1, n - 1),
    ];
    out.extend((3..=top).map(|s| s_form(n, s)));
    Ok(out)
}

pub fn listed_coboundary_basis(family: Family, n: usize) -> Result<Vec<BilinearForm>, CatalogError> {
    let k = family.filiform_index().ok_or(CatalogError::NotFiliformFamily(family))?;
    let mut out = vec![BilinearForm::delta(n, 0, 0)];
    match k {
        1 => out.extend((3..n).map(|s| s_form(n, s))),
        _ => {
            out.extend((3..n - 1).map(|s| s_form(n, s)));
            let extra = if k == 2 { BilinearForm::delta(n, n - 1, 0) } else { BilinearForm::delta(n, n - 1, n - 1) };
            out.push(s_form(n, n - 1).plus(&extra));
        }
    }
    Ok(out)
}

/// Every catalog algebra of dimension `n`, with `μ(α)` instantiated at `alpha`.
pub fn all_at(n: usize, alpha: &Q) -> Vec<FamilyId> {
    let mut ids = vec![FamilyId::f(1, n), FamilyId::f(2, n), FamilyId::f(3, n)];
    for k in 1..=16u8 {
        let a = Family::Mu(k).takes_alpha().then(|| alpha.clone());
        ids.push(FamilyId::mu(k, n, a));
    }
    ids
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), q(6));
        assert_eq!(binomial(0, 0), q(1));
        assert_eq!(binomial(6, 3), q(20));
        assert_eq!(binomial(2, 5), q(0));
    }

    #[test]
    fn f0_products() {
        let a = make(&FamilyId::f(0, 5)).unwrap();
        assert_eq!(a.coeff(0, 0, 1), q(1));
        assert_eq!(a.coeff(1, 0, 2), q(2));
        assert_eq!(a.coeff(1, 1, 3), q(3));
        assert_eq!(a.coeff(2, 0, 3), q(3));
        assert_eq!(a.coeff(0, 3, 4), q(1));
        assert_eq!(a.coeff(3, 0, 4), q(4));
        assert_eq!(a.nonzero_products(), 10);
    }

    #[test]
    fn mu_examples() {
        let a = make(&FamilyId::mu(2, 7, Some(qf(1, 2)))).unwrap();
        assert_eq!(a.coeff(0, 6, 5), qf(1, 2));
        assert_eq!(a.coeff(6, 0, 5), q(1));
        assert_eq!(a.coeff(0, 3, 4), q(1));
        assert_eq!(a.coeff(0, 4, 5), q(0));
        let m = make(&FamilyId::mu(16, 8, None)).unwrap();
        assert_eq!(m.coeff(0, 7, 6), qf(1, 4));
        assert_eq!(m.coeff(7, 0, 4), q(1));
        assert_eq!(m.coeff(7, 0, 6), q(1));
        assert_eq!(m.coeff(7, 7, 5), q(1));
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(make(&FamilyId::mu(2, 7, None)).unwrap_err(), CatalogError::MissingAlpha(Family::Mu(2)));
        assert!(make(&FamilyId::mu(3, 7, Some(q(1)))).is_err());
        assert!(make(&FamilyId::f(1, 4)).is_err());
        assert!(make(&FamilyId::f(0, 1)).is_ok());
    }

    #[test]
    fn labels_round_trip() {
        for id in [FamilyId::f(0, 3), FamilyId::f(3, 9), FamilyId::mu(10, 8, Some(qf(-2, 3))), FamilyId::mu(16, 9, None)] {
            assert_eq!(FamilyId::from_label(&id.label()), Some(id));
        }
        assert_eq!(FamilyId::from_label("mu_2^7"), None);
        assert_eq!(Family::parse("mu16"), Some(Family::Mu(16)));
    }

    #[test]
    fn nabla_lengths() {
        assert_eq!(nabla_basis(Family::F1, 6).unwrap().len(), 4);
        assert_eq!(nabla_basis(Family::F2, 6).unwrap(), vec![
            BilinearForm::delta(6, 0, 5),
            BilinearForm::delta(6, 5, 0),
            BilinearForm::delta(6, 5, 5)
        ]);
        let s = &nabla_basis(Family::F1, 6).unwrap()[3];
        assert_eq!(*s.get(2, 2), binomial(5, 2));
    }
}
