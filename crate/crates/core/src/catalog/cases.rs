//! Orbit-reduction cases for one-, two-, three- and four-dimensional
//! subspaces of `H²(F_n^k)`, and the resulting orbit lists.
//!
//! Generator coefficients are named `a1..a4` (first generator), `b*`, `c*`
//! and `d*`. Substitutions bind `x = a_{1,1}`, `y = a_{n,n}`,
//! `z = a_{n-1,n}`, `w = a_{n,1}` and the family parameter `al`; `n` is the
//! base dimension. Unbound template parameters default to `x = y = 1`,
//! `z = w = 0`.

use std::fmt;

use super::Family;
use crate::symbolic::expr::{ex, Expr, ExprError};
use crate::linalg::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `var = expr`; samplers assign it in order.
    Eq(String, Expr),
    /// `lhs ≠ rhs`.
    Ne(Expr, Expr),
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Eq(v, e) => write!(f, "{v} = {e}"),
            Constraint::Ne(a, b) => write!(f, "{a} != {b}"),
        }
    }
}

impl std::str::FromStr for Constraint {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Constraint, ExprError> {
        if let Some((l, r)) = s.split_once("!=") {
            return Ok(Constraint::Ne(l.parse()?, r.parse()?));
        }
        let bad = |msg: &str| ExprError::Parse { pos: 0, msg: msg.to_string() };
        let (l, r) = s.split_once('=').ok_or_else(|| bad("expected `=` or `!=`"))?;
        match l.parse()? {
            Expr::Var(v) => Ok(Constraint::Eq(v, r.parse()?)),
            _ => Err(bad("left side of `=` must be a coefficient name")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCase {
    pub family: Family,
    pub subspace_dim: usize,
    /// `F1/2/1a`: family, subspace dimension, case label.
    pub case_id: String,
    pub constraints: Vec<Constraint>,
    /// Substitutions as printed in the case analysis, evaluated in order.
    pub substitutions: Vec<(String, Expr)>,
    /// Replacement substitutions where the printed ones do not reach the target.
    pub corrected: Option<Vec<(String, Expr)>>,
    /// Why the printed substitutions fail, when known.
    pub note: Option<String>,
    /// H²-coordinate rows spanning the representative.
    pub target: Vec<Vec<Expr>>,
}

impl ReductionCase {
    pub fn label(&self) -> &str {
        self.case_id.rsplit('/').next().unwrap_or(&self.case_id)
    }

    /// `F1, 2-dim, case 1a`.
    pub fn anchor(&self) -> String {
        format!("{}, {}-dim, case {}", self.family, self.subspace_dim, self.label())
    }

    /// Number of ∇ coordinates.
    pub fn h2_dim(&self) -> usize {
        if self.family == Family::F1 {
            4
        } else {
            3
        }
    }

    /// Generator coefficient names, row by row.
    pub fn generator_vars(&self) -> Vec<Vec<String>> {
        generator_vars(self.h2_dim(), self.subspace_dim)
    }

    /// Whether a substitution set moves `w`.
    pub fn uses_w(subs: &[(String, Expr)]) -> bool {
        subs.iter().any(|(v, e)| v == "w" && *e != Expr::Num(Q::from_integer(0.into())))
    }

    /// One `zcase` line.
    pub fn to_line(&self) -> String {
        let join_subs = |s: &[(String, Expr)]| s.iter().map(|(v, e)| format!("{v} := {e}")).collect::<Vec<_>>().join("; ");
        let cons = self.constraints.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        let target = self
            .target
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            .collect::<Vec<_>>()
            .join("; ");
        let mut s = format!(
            "case {} {} {} | {} | {} | {}",
            self.family,
            self.case_id,
            self.subspace_dim,
            cons,
            join_subs(&self.substitutions),
            target
        );
        if let Some(c) = &self.corrected {
            s.push_str(&format!(" | fix {}", join_subs(c)));
        }
        s
    }

    /// Parse a line produced by [`ReductionCase::to_line`]; notes are not carried.
    pub fn parse_line(line: &str) -> Result<ReductionCase, ExprError> {
        let bad = |msg: &str| ExprError::Parse { pos: 0, msg: msg.to_string() };
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() < 4 || parts.len() > 5 {
            return Err(bad("expected 4 or 5 `|`-separated fields"));
        }
        let head: Vec<&str> = parts[0].split_whitespace().collect();
        let [kw, fam, id, dim] = head[..] else {
            return Err(bad("expected `case <family> <id> <dim>`"));
        };
        if kw != "case" {
            return Err(bad("expected `case`"));
        }
        let family = Family::parse(fam).ok_or_else(|| bad("unknown family"))?;
        let subspace_dim: usize = dim.parse().map_err(|_| bad("bad dimension"))?;
        let items = |s: &str| s.split(';').map(str::trim).filter(|t| !t.is_empty()).map(str::to_string).collect::<Vec<_>>();
        let subs = |s: &str| -> Result<Vec<(String, Expr)>, ExprError> {
            items(s)
                .iter()
                .map(|t| {
                    let (v, e) = t.split_once(":=").ok_or_else(|| bad("expected `name := expr`"))?;
                    Ok((v.trim().to_string(), e.parse()?))
                })
                .collect()
        };
        let constraints = items(parts[1]).iter().map(|c| c.parse()).collect::<Result<_, _>>()?;
        let target = items(parts[3])
            .iter()
            .map(|r| r.split(',').map(|c| c.parse()).collect::<Result<Vec<Expr>, _>>())
            .collect::<Result<_, _>>()?;
        let corrected = match parts.get(4) {
            Some(f) => Some(subs(f.strip_prefix("fix").ok_or_else(|| bad("expected `fix`"))?)?),
            None => None,
        };
        Ok(ReductionCase {
            family,
            subspace_dim,
            case_id: id.to_string(),
            constraints,
            substitutions: subs(parts[2])?,
            corrected,
            note: None,
            target,
        })
    }
}

/// `a1..a4`, `b1..b4`, … for `dim` generators over `h` coordinates.
pub fn generator_vars(h: usize, dim: usize) -> Vec<Vec<String>> {
    ["a", "b", "c", "d"][..dim].iter().map(|l| (1..=h).map(|i| format!("{l}{i}")).collect()).collect()
}

fn split(s: &str) -> impl Iterator<Item = &str> {
    s.split(';').map(str::trim).filter(|t| !t.is_empty())
}

fn subs_of(s: &str) -> Vec<(String, Expr)> {
    split(s)
        .map(|t| {
            let (v, e) = t.split_once('=').expect("`name = expr`");
            (v.trim().to_string(), ex(e))
        })
        .collect()
}

struct Builder {
    family: Family,
    out: Vec<ReductionCase>,
}

impl Builder {
    fn case(&mut self, dim: usize, label: &str, cons: &str, subs: &str, target: &str) -> &mut ReductionCase {
        let structural = match (self.family, dim) {
            (Family::F1, 2) => "b4 = 0",
            (Family::F1, 3) => "b4 = 0; c3 = 0; c4 = 0",
            (_, 2) => "b3 = 0",
            _ => "",
        };
        let mut constraints: Vec<Constraint> =
            split(structural).chain(split(cons)).map(|c| c.parse().expect("static constraint")).collect();
        constraints.dedup();
        self.out.push(ReductionCase {
            family: self.family,
            subspace_dim: dim,
            case_id: format!("{}/{}/{}", self.family, dim, label),
            constraints,
            substitutions: subs_of(subs),
            corrected: None,
            note: None,
            target: split(target).map(|r| r.split(',').map(ex).collect()).collect(),
        });
        self.out.last_mut().expect("just pushed")
    }
}

impl ReductionCase {
    fn fix(&mut self, subs: &str, note: &str) -> &mut Self {
        self.corrected = Some(subs_of(subs));
        self.note = Some(note.to_string());
        self
    }

    fn note(&mut self, note: &str) -> &mut Self {
        self.note = Some(note.to_string());
        self
    }
}

fn f1_cases() -> Vec<ReductionCase> {
    let mut b = Builder { family: Family::F1, out: Vec::new() };
    // One-dimensional.
    b.case(1, "1", "a2 = 0; a3 = 0; a4 = 0; a1 != 0", "x = 1; y = 1/a1", "1, 0, 0, 0");
    b.case(1, "2", "a3 = 0; a4 = 0; a2 != 0", "x = 1; y = 1/a2; al = a1/a2", "al, 1, 0, 0");
    b.case(1, "3", "a2 = a1; a4 = 0; a3 != 0", "y = 1/root(a3, 2); w = -a2/a3; x = 1", "0, 0, 1, 0");
    b.case(
        1,
        "4",
        "a4 = 0; a1 != a2; a3 != 0",
        "x = root(a3, 2)/(a1 - a2); y = 1/root(a3, 2); w = a2/(root(a3, 2)*(a2 - a1))",
        "1, 0, 1, 0",
    );
    b.case(1, "5", "a2 = (n - 1)*a1; a3 = 0; a4 != 0", "x = 1/root(a4, n); y = 1; z = -a1/a4", "0, 0, 0, 1");
    b.case(
        1,
        "6",
        "a3 = 0; (n - 1)*a1 != a2; a4 != 0",
        "x = 1/root(a4, n); y = root(a4, n)/(a2 - (n - 1)*a1); z = -root(a4, n)/(a2 - (n - 1)*a1)",
        "0, 1, 0, 1",
    )
    .fix(
        "x = 1/root(a4, n); y = root(a4, n)/(a2 - (n - 1)*a1); z = -a1*root(a4, n)/(a4*(a2 - (n - 1)*a1))",
        "the ∇1 coefficient x(a1*y + a4*z) vanishes only for z = -a1*y/a4; the printed z drops the factor a1/a4",
    );
    b.case(
        1,
        "7",
        "a3 != 0; a4 != 0",
        "x = 1/root(a4, n); y = 1/root(a3, 2); z = (a1 - a2)/((n - 2)*root(a3, 2)*a4); w = (a2 - (n - 1)*a1)/((n - 2)*root(a4, n)*a3)",
        "0, 0, 1, 1",
    );
    // Two-dimensional.
    b.case(
        2,
        "1a",
        "a3 = 0; a4 != 0; b3 != 0; (n - 1)*a1 != a2; b1 != b2",
        "x = pow((a2 - (n - 1)*a1)*(b2 - b1)/a4, 1/(n - 2)); y = (b2 - b1)/b3*x; z = a1*(b1 - b2)/(a4*b3)*x; w = -b1*x/b3",
        "0, 1, 1, 0; 0, 1, 0, 1",
    )
    .fix(
        "x = pow((a2 - (n - 1)*a1)*(b2 - b1)/(a4*b3), 1/(n - 2)); y = (b2 - b1)/b3*x; z = a1*(b1 - b2)/(a4*b3)*x; w = -b1*x/b3",
        "matching the ∇2 and ∇4 coefficients forces x^(n-2) = (a2 - (n - 1)*a1)(b2 - b1)/(a4*b3); the printed radicand lacks b3",
    );
    b.case(
        2,
        "1b",
        "a3 = 0; b2 = b1; a4 != 0; b3 != 0; (n - 1)*a1 != a2",
        "x = pow((a2 - (n - 1)*a1)/(a4*root(b3, 2)), 1/(n - 1)); y = 1/root(b3, 2); z = -a1/(a4*root(b3, 2)); w = -b1*x/b3",
        "0, 0, 1, 0; 0, 1, 0, 1",
    );
    b.case(
        2,
        "1c",
        "a3 = 0; a2 = (n - 1)*a1; a4 != 0; b3 != 0; b1 != b2",
        "x = 1/root(a4, n); y = (b2 - b1)/b3*x; z = a1*(b1 - b2)/(a4*b3)*x; w = -b1*x/b3",
        "0, 1, 1, 0; 0, 0, 0, 1",
    );
    b.case(
        2,
        "1d",
        "a3 = 0; a2 = (n - 1)*a1; b2 = b1; a4 != 0; b3 != 0",
        "x = 1/root(a4, n); y = 1/root(b3, 2); z = -a1*y/a4; w = -b1*x/b3",
        "0, 0, 1, 0; 0, 0, 0, 1",
    );
    b.case(
        2,
        "2a",
        "b3 = 0; a2 = 0; a4 != 0; b2 != 0; a3 != 0",
        "x = 1/root(a4, n); y = 1/root(a3, 2); z = a1/((n - 2)*root(a3, 2)*a4); w = -(n - 1)*a1/((n - 2)*root(a4, n)*a3); al = b1/b2",
        "al, 1, 0, 0; 0, 0, 1, 1",
    );
    b.case(
        2,
        "2b",
        "b3 = 0; a2 = 0; a3 = 0; a4 != 0; b2 != 0; (n - 1)*b1 != b2",
        "x = 1/root(a4, n); y = 1; z = -a1*b2/(a4*((n - 1)*b1 - b2)); al = b1/b2",
        "al, 1, 0, 0; 0, 0, 0, 1",
    )
    .fix(
        "x = 1/root(a4, n); y = 1; z = a1*b2/(a4*((n - 1)*b1 - b2)); al = b1/b2",
        "removing the ∇1,∇2 part of the first generator needs z = a1*b2/(a4*((n - 1)*b1 - b2)); the printed sign is reversed",
    );
    b.case(2, "2c", "b3 = 0; a2 = 0; a3 = 0; b2 = (n - 1)*b1; a1 = 0; a4 != 0; b2 != 0", "x = 1/root(a4, n); y = 1; z = 0", "1/(n - 1), 1, 0, 0; 0, 0, 0, 1");
    b.case(
        2,
        "2d",
        "b3 = 0; a2 = 0; a3 = 0; b2 = (n - 1)*b1; a4 != 0; b2 != 0; a1 != 0",
        "x = 1/root(a4, n); y = -root(a4, n)/((n - 1)*a1); z = root(a4, n)/((n - 1)*a4)",
        "1/(n - 1), 1, 0, 0; 0, 1, 0, 1",
    );
    b.case(
        2,
        "3a",
        "b3 = 0; b2 = 0; a4 != 0; b1 != 0; a3 != 0",
        "x = 1/root(a4, n); y = 1/root(a3, 2); z = (a1 - a2)/((n - 2)*root(a3, 2)*a4); w = (a2 - (n - 1)*a1)/((n - 2)*root(a4, n)*a3)",
        "1, 0, 0, 0; 0, 0, 1, 1",
    );
    b.case(2, "3b", "b3 = 0; b2 = 0; a3 = 0; a2 = (n - 1)*a1; a4 != 0; b1 != 0", "x = 1/root(a4, n); y = 1; z = -a1/a4", "1, 0, 0, 0; 0, 0, 0, 1");
    b.case(
        2,
        "4a",
        "a4 = 0; b3 = 0; a2 = a1; a3 != 0; b2 != 0; b1 != b2",
        "y = 1/root(a3, 2); w = -a2/a3; x = 1; al = b1/b2",
        "al, 1, 0, 0; 0, 0, 1, 0",
    );
    b.case(2, "4b", "a4 = 0; b3 = 0; b2 = b1; a2 = a1; a3 != 0; b2 != 0", "", "1, 1, 0, 0; 0, 0, 1, 0");
    b.case(
        2,
        "4c",
        "a4 = 0; b3 = 0; b2 = b1; a3 != 0; b2 != 0; a1 != a2",
        "x = root(a3, 2)/(a1 - a2); y = 1/root(a3, 2); w = a2/(root(a3, 2)*(a2 - a1))",
        "1, 1, 0, 0; 1, 0, 1, 0",
    );
    // The printed "α = β1/β2" has β2 = 0 here and is omitted.
    b.case(2, "5", "a4 = 0; b3 = 0; b2 = 0; a2 = a1; a3 != 0; b1 != 0", "y = 1/root(a3, 2); w = -a2/a3; x = 1", "1, 0, 0, 0; 0, 0, 1, 0");
    b.case(2, "6", "a3 = 0; a4 = 0; b3 = 0; a1*b2 != a2*b1", "", "1, 0, 0, 0; 0, 1, 0, 0");
    // Three-dimensional.
    let c1 = "a2 = 0; a3 = 0; b2 = 0; a4 != 0; b3 != 0; c2 != 0";
    b.case(
        3,
        "1a",
        &format!("{c1}; c1 != c2; (n - 1)*c1 != c2"),
        "x = 1/root(a4, n); y = 1/root(b3, 2); z = a1*c2*y/(a4*((n - 1)*c1 - c2)); w = b1*c2*x/(a4*(c1 - c2)); al = c1/c2",
        "al, 1, 0, 0; 0, 0, 1, 0; 0, 0, 0, 1",
    )
    .fix(
        "x = 1/root(a4, n); y = 1/root(b3, 2); z = a1*c2*y/(a4*((n - 1)*c1 - c2)); w = b1*c2*x/(b3*(c1 - c2)); al = c1/c2",
        "clearing the ∇1,∇2 part of the second generator needs w = b1*c2*x/(b3*(c1 - c2)); the printed denominator has a4 for b3. The parameter α = c1/c2 is implicit",
    );
    b.case(
        3,
        "1b1",
        &format!("{c1}; c1 = c2; b1 != 0"),
        "x = 1/root(a4, n); y = b1*x/b3; z = a1*y/((n - 2)*a4); w = 0",
        "1, 1, 0, 0; 1, 0, 1, 0; 0, 0, 0, 1",
    );
    b.case(
        3,
        "1b2",
        &format!("{c1}; c1 = c2; b1 = 0"),
        "x = 1/root(a4, n); y = 1/root(b3, 2); z = a1*y/((n - 2)*a4); w = 0",
        "1, 1, 0, 0; 0, 0, 1, 0; 0, 0, 0, 1",
    );
    b.case(
        3,
        "1c1",
        &format!("{c1}; c2 = (n - 1)*c1; a1 != 0"),
        "y = 1/root(b3, 2); z = -a1*y/a4; x = root((n - 1)*z, n - 1); w = -(n - 1)*b1*x/((n - 2)*b3)",
        "1/(n - 1), 1, 0, 0; 0, 0, 1, 0; 0, 1, 0, 1",
    );
    b.case(
        3,
        "1c2",
        &format!("{c1}; c2 = (n - 1)*c1; a1 = 0"),
        "x = 1/root(a4, n); y = 1/root(b3, 2); z = 0; w = -(n - 1)*b1*x/((n - 2)*b3)",
        "1/(n - 1), 1, 0, 0; 0, 0, 1, 0; 0, 0, 0, 1",
    );
    b.case(
        3,
        "2",
        "a3 = 0; c2 = 0; a2 = (n - 1)*a1; b2 = b1; a4 != 0; b3 != 0; c1 != 0",
        "x = 1/root(a4, n); y = 1/root(b3, 2); z = -a1*y/a4; w = -b1*x/b3",
        "1, 0, 0, 0; 0, 0, 1, 0; 0, 0, 0, 1",
    );
    b.case(
        3,
        "3a",
        "b3 = 0; c2 = 0; a1 = 0; a2 = 0; b1 = 0; a4 != 0; b2 != 0; c1 != 0; a3 != 0",
        "y = 1/root(a3, 2); x = 1/root(a4, n)",
        "1, 0, 0, 0; 0, 1, 0, 0; 0, 0, 1, 1",
    );
    b.case(3, "3b", "b3 = 0; c2 = 0; a1 = 0; a2 = 0; b1 = 0; a3 = 0; a4 != 0; b2 != 0; c1 != 0", "", "1, 0, 0, 0; 0, 1, 0, 0; 0, 0, 0, 1");
    b.case(3, "4", "a4 = 0; b3 = 0; c2 = 0; a3 != 0; b2 != 0; c1 != 0", "", "1, 0, 0, 0; 0, 1, 0, 0; 0, 0, 1, 0");
    // Four-dimensional.
    b.case(
        4,
        "1",
        "a2 = 0; a3 = 0; a4 = 0; b1 = 0; b3 = 0; b4 = 0; c1 = 0; c2 = 0; c4 = 0; d1 = 0; d2 = 0; d3 = 0; a1 != 0; b2 != 0; c3 != 0; d4 != 0",
        "",
        "1, 0, 0, 0; 0, 1, 0, 0; 0, 0, 1, 0; 0, 0, 0, 1",
    );
    b.out
}

fn f23_cases(family: Family) -> Vec<ReductionCase> {
    let f3 = family == Family::F3;
    // Exponents of the printed substitutions.
    let (e, e2, e3) = if f3 { ("2/(n + 1)", "2/(n - 3)", "2/(n - 3)") } else { ("1/(n - 1)", "1/(n - 3)", "1/(n - 1)") };
    let w_note = "an automorphism of F_n^3 maps e_n∘e_1 = 0 to y*w e_(n-1), so w = a_(n,1) must vanish; this choice of w is not realised by aut(F_n^3)";
    let mut b = Builder { family, out: Vec::new() };
    let sub1a = if f3 { format!("x = pow(a1, -{e})") } else { String::new() };
    b.case(1, "1a", "a3 = 0; a2 = 0; a1 != 0", &sub1a, "1, 0, 0");
    b.case(1, "1b", "a3 = 0; a2 != 0", &format!("x = pow(a2, -{e}); al = a1/a2"), "al, 1, 0");
    let c = b.case(1, "2a", "a3 != 0; a1 != a2", &format!("x = pow((a2 - a1)/a3, {e2}); w = -x*a1/a3"), "0, 1, 1");
    if f3 {
        c.note(w_note);
    }
    let c = b.case(1, "2b", "a2 = a1; a3 != 0", "w = -x*a1/a3", "0, 0, 1");
    if f3 {
        c.note(&format!("{w_note}. For a1 != 0 the extension is not even isomorphic to the one by ∇3 (derivation algebras of different dimension)"));
    }
    let c = b.case(
        2,
        "1a",
        "a2 = a1; a3 != 0; b1 != b2; b2 != 0",
        &format!("x = pow(b2, -{e}); w = -x*a1/a3; al = b1/b2"),
        "al, 1, 0; 0, 0, 1",
    );
    if f3 {
        c.note(w_note);
    }
    let c = b.case(2, "1b", "a2 = a1; b2 = 0; a3 != 0; b1 != 0", &format!("x = pow(b1, -{e}); w = -x*a1/a3"), "1, 0, 0; 0, 0, 1");
    if f3 {
        c.note(w_note);
    }
    let c = b.case(2, "2a", "b2 = b1; a3 != 0; b1 != 0; a1 != a2", &format!("x = pow((a1 - a2)/a3, {e3}); w = -x*a2/a3"), "1, 1, 0; 1, 0, 1");
    if f3 {
        c.fix(&format!("x = pow((a1 - a2)/a3, {e3}); w = 0"), "w = a_(n,1) must vanish in aut(F_n^3); with w = 0 the target is still reached");
    } else {
        c.fix(
            "x = pow((a1 - a2)/a3, 1/(n - 3)); w = -x*a2/a3",
            "the ∇1 and ∇3 coefficients agree only for x^(n-3) = (a1 - a2)/a3; the printed exponent is 1/(n - 1)",
        );
    }
    b.case(2, "2b", "b2 = b1; a2 = a1; a3 != 0; b1 != 0", "", "1, 1, 0; 0, 0, 1");
    b.case(2, "3", "a3 = 0; a1*b2 != a2*b1", "", "1, 0, 0; 0, 1, 0");
    b.case(3, "1", "a2 = 0; a3 = 0; b1 = 0; b3 = 0; c1 = 0; c2 = 0; a1 != 0; b2 != 0; c3 != 0", "", "1, 0, 0; 0, 1, 0; 0, 0, 1");
    b.out
}

/// All cases of a filiform family, in the order of the case analysis.
pub fn reduction_cases(family: Family) -> Vec<ReductionCase> {
    match family {
        Family::F1 => f1_cases(),
        Family::F2 | Family::F3 => f23_cases(family),
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitList {
    pub family: Family,
    pub subspace_dim: usize,
    /// Each representative is a list of H²-coordinate rows; `al` is the family parameter.
    pub representatives: Vec<Vec<Vec<Expr>>>,
}

fn reps(list: &[&str]) -> Vec<Vec<Vec<Expr>>> {
    list.iter().map(|r| split(r).map(|row| row.split(',').map(ex).collect()).collect()).collect()
}

/// The orbit unions `T_s` for `s = 1..4` (`F1`) or `1..3` (`F2`, `F3`).
pub fn orbit_lists(family: Family) -> Vec<OrbitList> {
    let lists: Vec<Vec<&str>> = match family {
        Family::F1 => vec![
            vec!["1,0,0,0", "al,1,0,0", "0,0,1,0", "1,0,1,0", "0,0,0,1", "0,1,0,1", "0,0,1,1"],
            vec![
                "1,0,0,0; 0,1,0,0",
                "1,0,0,0; 0,0,1,0",
                "1,0,0,0; 0,0,1,1",
                "1,0,0,0; 0,0,0,1",
                "1/(n-1),1,0,0; 0,1,0,1",
                "1,1,0,0; 1,0,1,0",
                "al,1,0,0; 0,0,1,0",
                "al,1,0,0; 0,0,1,1",
                "al,1,0,0; 0,0,0,1",
                "0,1,1,0; 0,1,0,1",
                "0,1,1,0; 0,0,0,1",
                "0,0,1,0; 0,1,0,1",
                "0,0,1,0; 0,0,0,1",
            ],
            vec![
                "1,0,0,0; 0,1,0,0; 0,0,1,0",
                "1,0,0,0; 0,1,0,0; 0,0,1,1",
                "1,0,0,0; 0,1,0,0; 0,0,0,1",
                "1,1,0,0; 1,0,1,0; 0,0,0,1",
                "1/(n-1),1,0,0; 0,0,1,0; 0,1,0,1",
                "al,1,0,0; 0,0,1,0; 0,0,0,1",
                "1,0,0,0; 0,0,1,0; 0,0,0,1",
            ],
            vec!["1,0,0,0; 0,1,0,0; 0,0,1,0; 0,0,0,1"],
        ],
        Family::F2 | Family::F3 => vec![
            vec!["1,0,0", "al,1,0", "0,1,1", "0,0,1"],
            vec!["1,0,0; 0,1,0", "1,0,0; 0,0,1", "1,1,0; 1,0,1", "al,1,0; 0,0,1"],
            vec!["1,0,0; 0,1,0; 0,0,1"],
        ],
        _ => Vec::new(),
    };
    lists
        .into_iter()
        .enumerate()
        .map(|(i, l)| OrbitList { family, subspace_dim: i + 1, representatives: reps(&l) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_counts() {
        let count = |f, d| reduction_cases(f).iter().filter(|c| c.subspace_dim == d).count();
        assert_eq!([1, 2, 3, 4].map(|d| count(Family::F1, d)), [7, 15, 9, 1]);
        for f in [Family::F2, Family::F3] {
            assert_eq!([1, 2, 3].map(|d| count(f, d)), [4, 5, 1]);
        }
    }

    #[test]
    fn orbit_counts() {
        let counts = |f| orbit_lists(f).iter().map(|l| l.representatives.len()).collect::<Vec<_>>();
        assert_eq!(counts(Family::F1), vec![7, 13, 7, 1]);
        assert_eq!(counts(Family::F2), vec![4, 4, 1]);
        assert_eq!(counts(Family::F3), vec![4, 4, 1]);
    }

    #[test]
    fn zcase_lines_round_trip() {
        for f in [Family::F1, Family::F2, Family::F3] {
            for c in reduction_cases(f) {
                let line = c.to_line();
                let back = ReductionCase::parse_line(&line).unwrap();
                assert_eq!(ReductionCase { note: c.note.clone(), ..back }, c, "{line}");
            }
        }
    }

    #[test]
    fn substitutions_name_template_parameters() {
        for f in [Family::F1, Family::F2, Family::F3] {
            for c in reduction_cases(f) {
                for (v, _) in c.substitutions.iter().chain(c.corrected.iter().flatten()) {
                    let allowed: &[&str] = if f == Family::F1 { &["x", "y", "z", "w", "al"] } else { &["x", "w", "al"] };
                    assert!(allowed.contains(&v.as_str()), "{} binds {v}", c.case_id);
                }
            }
        }
    }

    #[test]
    fn f2_case_1a_shape() {
        let c = &reduction_cases(Family::F2)[0];
        assert_eq!(c.case_id, "F2/1/1a");
        assert!(c.substitutions.is_empty());
        assert_eq!(c.constraints.len(), 3);
        assert_eq!(c.anchor(), "F2, 1-dim, case 1a");
    }
}
