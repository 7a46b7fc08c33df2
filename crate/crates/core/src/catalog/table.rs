//! Which named algebra each orbit representative extends to, with an
//! explicit isomorphism witness per row.
//!
//! A witness gives the images of the generators of the extension (`e_1`,
//! and `e_n` for the filiform families, where `n` is the base dimension)
//! inside the named algebra of dimension `N`. Index expressions may use `n`
//! and `N`; coefficients may use `n` and `al`.

use std::collections::HashMap;

use super::{f0_class, make, nabla_basis, CatalogError, Family, FamilyId};
use crate::algebra::Algebra;
use crate::cocycles::BilinearForm;
use crate::linalg::Q;
use crate::symbolic::expr::{ex, Expr, ExprError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Generator images as `(coefficient, basis index)` terms.
    Linear(Vec<Vec<(Expr, Expr)>>),
    /// `e_1 ↦ ζ e_1`, `e_n ↦ ζ e_N` with `ζ^order = -1`; no rational witness exists.
    RootOfMinusOne { order: Expr },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaRule {
    /// No parameter.
    None,
    /// Any α, optionally excluding the value given by an expression in `n`.
    Free,
    /// The row only applies at this α (an expression in `n`).
    Fixed(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionRow {
    pub base: Family,
    /// Orbit label, e.g. `2k`.
    pub key: String,
    /// H²-coordinate rows over the ∇ basis; for `F0` the single class.
    pub representative: Vec<Vec<Expr>>,
    pub result: Family,
    pub alpha: AlphaRule,
    /// α value excluded from a `Free` row, as an expression in `n`.
    pub excluded_alpha: Option<Expr>,
    pub witness: Witness,
    /// The algebra named in the printed theorem, when it differs from `result`.
    pub stated: Option<Family>,
    pub note: Option<String>,
}

impl ExtensionRow {
    pub fn subspace_dim(&self) -> usize {
        self.representative.len()
    }

    pub fn id(&self) -> String {
        format!("{}/{}", self.base, self.key)
    }

    /// α for this row at base dimension `n`, given a free sample.
    pub fn alpha_at(&self, n: usize, sample: &Q) -> Option<Q> {
        match self.alpha {
            AlphaRule::None => None,
            AlphaRule::Free => Some(sample.clone()),
            AlphaRule::Fixed(e) => Some(ex(e).eval_q(&env(n, n, None)).expect("rational in n")),
        }
    }

    /// Whether a free α sample is admissible at base dimension `n`.
    pub fn admits(&self, n: usize, alpha: &Q) -> bool {
        match &self.excluded_alpha {
            Some(e) => e.eval_q(&env(n, n, None)).map_or(true, |v| v != *alpha),
            None => true,
        }
    }

    /// The named algebra the extension should be isomorphic to.
    pub fn result_id(&self, n: usize, alpha: Option<&Q>) -> FamilyId {
        let big_n = n + self.subspace_dim();
        match self.result {
            Family::Mu(k) => FamilyId::mu(k, big_n, if self.result.takes_alpha() { alpha.cloned() } else { None }),
            f => FamilyId { family: f, n: big_n, alpha: None },
        }
    }

    pub fn base_algebra(&self, n: usize) -> Result<Algebra, CatalogError> {
        match self.base {
            Family::F0 => make(&FamilyId::f(0, n)),
            f => make(&FamilyId { family: f, n, alpha: None }),
        }
    }
}

pub(crate) fn env(n: usize, big_n: usize, alpha: Option<&Q>) -> HashMap<String, Q> {
    let mut e = HashMap::from([("n".to_string(), Q::from_integer(n.into())), ("N".to_string(), Q::from_integer(big_n.into()))]);
    if let Some(a) = alpha {
        e.insert("al".to_string(), a.clone());
    }
    e
}

/// The representative forms `Σ_i c_i ∇_i`, one per row.
pub fn representative_forms(row: &ExtensionRow, n: usize, alpha: Option<&Q>) -> Result<Vec<BilinearForm>, ExprError> {
    if row.base == Family::F0 {
        return Ok(vec![f0_class(n)]);
    }
    let nab = nabla_basis(row.base, n).expect("filiform family");
    let e = env(n, n + row.subspace_dim(), alpha);
    row.representative
        .iter()
        .map(|coords| {
            let c: Vec<Q> = coords.iter().map(|x| x.eval_q(&e)).collect::<Result<_, _>>()?;
            Ok(BilinearForm::combination(n, &c, &nab))
        })
        .collect()
}

fn coords(s: &str) -> Vec<Vec<Expr>> {
    s.split(';').map(|r| r.split(',').map(ex).collect()).collect()
}

fn terms(s: &str) -> Vec<(Expr, Expr)> {
    s.split('+')
        .map(|t| {
            let (c, i) = t.split_once("e:").expect("`coef e:index`");
            (ex(c), ex(i))
        })
        .collect()
}

struct Rows {
    base: Family,
    out: Vec<ExtensionRow>,
}

impl Rows {
    /// Default witness: `e_1 ↦ e_1`, `e_n ↦ e_N`.
    fn row(&mut self, key: &str, rep: &str, result: Family) -> &mut ExtensionRow {
        let default = match self.base {
            Family::F0 => vec![terms("1 e:1")],
            _ => vec![terms("1 e:1"), terms("1 e:N")],
        };
        let alpha = if rep.contains("al") { AlphaRule::Free } else { AlphaRule::None };
        self.out.push(ExtensionRow {
            base: self.base,
            key: key.to_string(),
            representative: coords(rep),
            result,
            alpha,
            excluded_alpha: None,
            witness: Witness::Linear(default),
            stated: None,
            note: None,
        });
        self.out.last_mut().expect("just pushed")
    }
}

impl ExtensionRow {
    /// `u`, `v` as `coef e:index` sums separated by `+`.
    fn images(&mut self, u: &str, v: &str) -> &mut Self {
        self.witness = Witness::Linear(vec![terms(u), terms(v)]);
        self
    }

    fn fixed(&mut self, alpha: &'static str) -> &mut Self {
        self.alpha = AlphaRule::Fixed(alpha);
        self
    }

    fn excluding(&mut self, alpha: &str) -> &mut Self {
        self.excluded_alpha = Some(ex(alpha));
        self
    }

    fn stated(&mut self, f: Family, note: &str) -> &mut Self {
        self.stated = Some(f);
        self.note = Some(note.to_string());
        self
    }

    fn note(&mut self, note: &str) -> &mut Self {
        self.note = Some(note.to_string());
        self
    }
}

fn mu(k: u8) -> Family {
    Family::Mu(k)
}

/// Rows for one base family, in orbit-list order.
pub fn extension_theorem_table(base: Family) -> Vec<ExtensionRow> {
    let mut r = Rows { base, out: Vec::new() };
    match base {
        Family::F0 => {
            r.row("1", "1", Family::F0);
        }
        Family::F1 => {
            r.row("1a", "1,0,0,0", mu(1));
            r.row("1b", "al,1,0,0", mu(2));
            r.row("1c", "0,0,1,0", mu(3));
            r.row("1d", "1,0,1,0", mu(4));
            r.row("1e", "0,0,0,1", Family::F1);
            r.row("1f", "0,1,0,1", Family::F2);
            r.row("1g", "0,0,1,1", Family::F3);
            r.row("2a", "1,0,0,0; 0,1,0,0", mu(5));
            r.row("2b", "1,0,0,0; 0,0,1,0", mu(6));
            r.row("2c", "1,0,0,0; 0,0,1,1", mu(7));
            r.row("2d", "1,0,0,0; 0,0,0,1", mu(1));
            r.row("2e", "1/(n-1),1,0,0; 0,1,0,1", mu(8));
            r.row("2f", "1,1,0,0; 1,0,1,0", mu(9));
            r.row("2g", "al,1,0,0; 0,0,1,0", mu(10));
            r.row("2h", "al,1,0,0; 0,0,1,1", mu(11));
            r.row("2i", "al,1,0,0; 0,0,0,1", mu(2));
            r.row("2j", "0,1,1,0; 0,1,0,1", mu(12));
            r.row("2k", "0,1,1,0; 0,0,0,1", mu(4)).images("-1 e:1 + 1 e:N", "1 e:N");
            r.row("2l", "0,0,1,0; 0,1,0,1", mu(13));
            r.row("2m", "0,0,1,0; 0,0,0,1", mu(3));
            r.row("3a", "1,0,0,0; 0,1,0,0; 0,0,1,0", mu(14));
            r.row("3b", "1,0,0,0; 0,1,0,0; 0,0,1,1", mu(15));
            r.row("3c", "1,0,0,0; 0,1,0,0; 0,0,0,1", mu(5));
            r.row("3d", "1,1,0,0; 1,0,1,0; 0,0,0,1", mu(9));
            r.row("3e", "1/(n-1),1,0,0; 0,0,1,0; 0,1,0,1", mu(16));
            r.row("3f", "al,1,0,0; 0,0,1,0; 0,0,0,1", mu(10));
            r.row("3g", "1,0,0,0; 0,0,1,0; 0,0,0,1", mu(6));
            r.row("4", "1,0,0,0; 0,1,0,0; 0,0,1,0; 0,0,0,1", mu(14));
        }
        Family::F2 => {
            r.row("1a", "1,0,0", mu(1)).images("1 e:1", "1 e:N + 1/(n-2) e:n-2");
            r.row("1b", "al,1,0", mu(2)).images("1 e:1", "1 e:N + al/((n-2)*al-1) e:n-2").excluding("1/(n-2)");
            r.row("1b*", "al,1,0", mu(8)).fixed("1/(n-2)").note("the excluded parameter value of the row above");
            r.row("1c", "0,1,1", mu(12));
            r.row("1d", "0,0,1", mu(13)).stated(mu(16), "the extension table matches μ13 (one-dimensional, e_(n+1)∘e_1 = e_(n-1), e_(n+1)∘e_(n+1) = e_n); μ16 needs three central directions");
            r.row("2a", "1,0,0; 0,1,0", mu(5));
            r.row("2b", "1,0,0; 0,0,1", mu(6)).images("1 e:1", "1 e:N + 1/(n-2) e:n-2");
            r.row("2c", "1,1,0; 1,0,1", mu(9)).images("1 e:1", "1 e:N + 1/(n-3) e:n-2");
            r.row("2d", "al,1,0; 0,0,1", mu(10)).images("1 e:1", "1 e:N + al/((n-2)*al-1) e:n-2").excluding("1/(n-2)");
            r.row("2d*", "al,1,0; 0,0,1", mu(16)).fixed("1/(n-2)").note("the excluded parameter value of the row above");
            r.row("3", "1,0,0; 0,1,0; 0,0,1", mu(14));
        }
        Family::F3 => {
            r.row("1a", "1,0,0", mu(7));
            r.row("1b", "al,1,0", mu(11));
            r.row("1c", "0,1,1", mu(12)).witness = Witness::RootOfMinusOne { order: ex("n-3") };
            r.row("1d", "0,0,1", mu(3));
            r.row("1x", "1,1,1", mu(13)).images("1 e:1 + (n-3) e:N", "(n-3) e:N + -1 e:N-3").note(
                "not in the printed orbit list: with w = 0 forced, ⟨∇1+∇2+∇3⟩ is not in the orbit of ⟨∇2+∇3⟩ or ⟨∇3⟩",
            );
            r.row("2a", "1,0,0; 0,1,0", mu(15));
            r.row("2b", "1,0,0; 0,0,1", mu(6));
            r.row("2c", "1,1,0; 1,0,1", mu(9)).images("1 e:1", "1 e:N + 1/(n-3) e:n-2");
            r.row("2d", "al,1,0; 0,0,1", mu(10));
            r.row("3", "1,0,0; 0,1,0; 0,0,1", mu(14));
        }
        Family::Mu(_) => {}
    }
    r.out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(extension_theorem_table(Family::F1).len(), 28);
        assert_eq!(extension_theorem_table(Family::F2).len(), 11);
        assert_eq!(extension_theorem_table(Family::F3).len(), 10);
        assert_eq!(extension_theorem_table(Family::F0).len(), 1);
    }

    #[test]
    fn alpha_rules() {
        let t = extension_theorem_table(Family::F2);
        let star = t.iter().find(|r| r.key == "1b*").unwrap();
        assert_eq!(star.alpha_at(7, &Q::from_integer(3.into())), Some(Q::new(1.into(), 5.into())));
        let b = t.iter().find(|r| r.key == "1b").unwrap();
        assert!(!b.admits(7, &Q::new(1.into(), 5.into())));
        assert!(b.admits(7, &Q::from_integer(2.into())));
        assert_eq!(b.result_id(7, Some(&Q::from_integer(2.into()))).label(), "mu_2^8(2)");
    }
}
