//! Central extensions `A_θ = A ⊕ V` with `(x + v)∘(y + v') = x∘y + θ(x, y)`,
//! the split / non-split tests, and recovery of `(A/ann, θ)`.

use std::fmt;

use num_traits::Zero;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::Algebra;
use crate::catalog::{make, representative_forms, CatalogError, ExtensionRow, FamilyId, Witness};
use crate::cocycles::{cocycle_annihilator, cocycle_violation, cohomology, parse_forms, BilinearForm};
use crate::linalg::{fmt_q, q, unit, Matrix, Q};
use crate::ring::{ColMatrix, Cyc, Ring};
use crate::symbolic::template::{first_defect, images_from_generators};

#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub base: Algebra,
    pub thetas: Vec<BilinearForm>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error("no cocycles given")]
    Empty,
    #[error("form {index} has dimension {found}, base has {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("form {index} is not a cocycle: identity fails on (e_{}, e_{}, e_{})", triple.0, triple.1, triple.2)]
    NotCocycle { index: usize, triple: (usize, usize, usize) },
    #[error("the annihilator is zero")]
    ZeroAnnihilator,
    #[error("zext: {0}")]
    Parse(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

impl ExtensionSpec {
    pub fn new(base: Algebra, thetas: Vec<BilinearForm>) -> Result<Self, ExtensionError> {
        let spec = ExtensionSpec { base, thetas };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), ExtensionError> {
        if self.thetas.is_empty() {
            return Err(ExtensionError::Empty);
        }
        let n = self.base.dim();
        for (index, t) in self.thetas.iter().enumerate() {
            if t.ambient() != n {
                return Err(ExtensionError::DimensionMismatch { index, expected: n, found: t.ambient() });
            }
            if let Some((i, j, k)) = cocycle_violation(&self.base, t) {
                return Err(ExtensionError::NotCocycle { index, triple: (i + 1, j + 1, k + 1) });
            }
        }
        Ok(())
    }
}

/// `A_θ` on `e_1, …, e_n, e_{n+1}, …, e_{n+s}`, new vectors in θ order.
pub fn extend(spec: &ExtensionSpec) -> Result<Algebra, ExtensionError> {
    spec.validate()?;
    let a = extend_unchecked(&spec.base, &spec.thetas);
    let bad = a.check_zinbiel();
    assert!(bad.is_empty(), "cocycle extension violates the identity at {:?}", bad[0].triple);
    Ok(a)
}

fn extend_unchecked(base: &Algebra, thetas: &[BilinearForm]) -> Algebra {
    let n = base.dim();
    let mut a = Algebra::zero(n + thetas.len(), format!("{}+θ", base.label));
    for i in 0..n {
        for j in 0..n {
            for (k, c) in base.basis_product(i, j) {
                a.add_product(i, j, *k, c.clone());
            }
            for (t, th) in thetas.iter().enumerate() {
                let c = th.get(i, j);
                if !c.is_zero() {
                    a.add_product(i, j, n + t, c.clone());
                }
            }
        }
    }
    a
}

/// Extension without the cocycle precondition; used to show that a
/// non-cocycle breaks the identity.
pub fn extend_any(base: &Algebra, thetas: &[BilinearForm]) -> Algebra {
    extend_unchecked(base, thetas)
}

/// Both readings of "non-split" for one spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonsplitReport {
    /// Rank of the classes `[θ_i]` in H².
    pub class_rank: usize,
    pub s: usize,
    /// `dim(∩ ann(θ_i) ∩ ann(A))`.
    pub ts_intersection_dim: usize,
    /// `ann(A_θ) ⊆ A_θ²`: the extension has no annihilator component.
    pub no_annihilator_component: bool,
}

impl NonsplitReport {
    pub fn classes_independent(&self) -> bool {
        self.class_rank == self.s
    }

    pub fn in_ts(&self) -> bool {
        self.ts_intersection_dim == 0
    }

    /// Independent classes and zero T_s intersection.
    pub fn is_nonsplit(&self) -> bool {
        self.classes_independent() && self.in_ts()
    }

    pub fn diagnostics(&self) -> String {
        let mut out = Vec::new();
        if !self.classes_independent() {
            out.push(format!("classes dependent in H² (rank {} < {})", self.class_rank, self.s));
        }
        if !self.in_ts() {
            out.push(format!("∩ann(θ_i)∩ann(A) has dimension {}", self.ts_intersection_dim));
        }
        if !self.no_annihilator_component {
            out.push("A_θ has an annihilator component".to_string());
        }
        if out.is_empty() {
            "non-split".to_string()
        } else {
            out.join("; ")
        }
    }
}

pub fn nonsplit_report(spec: &ExtensionSpec) -> Result<NonsplitReport, ExtensionError> {
    spec.validate()?;
    let base = &spec.base;
    let spaces = cohomology(base);
    let classes: Vec<Vec<Q>> = spec.thetas.iter().map(|t| spaces.project(t)).collect();
    let class_rank = Matrix::from_rows(classes, spaces.h2_dim()).map_or(0, |m| m.rank());
    let ann_theta = cocycle_annihilator(base, &spec.thetas).map_err(|e| ExtensionError::NotCocycle { index: e.index, triple: e.triple })?;
    let ts = ann_theta.intersect(&base.annihilator()).expect("same ambient");
    let ext = extend_unchecked(base, &spec.thetas);
    let sq = ext.power_series().power(2);
    Ok(NonsplitReport {
        class_rank,
        s: spec.thetas.len(),
        ts_intersection_dim: ts.dim(),
        no_annihilator_component: ext.annihilator().is_subspace_of(&sq),
    })
}

/// True iff the classes are independent in H² and `∩ ann(θ_i) ∩ ann(A) = 0`.
pub fn is_nonsplit(spec: &ExtensionSpec) -> Result<bool, ExtensionError> {
    Ok(nonsplit_report(spec)?.is_nonsplit())
}

/// `a ≅ base_θ` with `base = a/ann(a)`, written in the basis `P`: the
/// standard vectors at the non-pivot coordinates of `ann(a)`, then the
/// canonical basis of `ann(a)`.
#[derive(Clone, Debug)]
pub struct Recovered {
    pub base: Algebra,
    pub thetas: Vec<BilinearForm>,
    /// Columns: the new basis in old coordinates.
    pub basis: Matrix,
}

pub fn recover_extension(a: &Algebra) -> Result<Recovered, ExtensionError> {
    let ann = a.annihilator();
    if ann.is_zero() {
        return Err(ExtensionError::ZeroAnnihilator);
    }
    let n = a.dim();
    let comp = ann.complement_coordinates();
    let m = comp.len();
    let cols: Vec<Vec<Q>> = comp.iter().map(|&c| unit(n, c)).chain(ann.basis().iter().cloned()).collect();
    let basis = Matrix::from_rows(cols, n).expect("n columns").transpose();
    let b = a.transport(&basis.inverse().expect("basis")).expect("invertible");
    let mut base = Algebra::zero(m, format!("{}/ann", a.label));
    let mut thetas = vec![BilinearForm::zero(m); n - m];
    for i in 0..m {
        for j in 0..m {
            for (k, c) in b.basis_product(i, j) {
                if *k < m {
                    base.add_product(i, j, *k, c.clone());
                } else {
                    thetas[*k - m].add_entry(i, j, c);
                }
            }
        }
    }
    Ok(Recovered { base, thetas, basis })
}

/// Outcome of the sampled `F_n^0` extension theorem.
#[derive(Clone, Debug)]
pub struct F0Report {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    /// Draws discarded by the precondition (zero class or nonzero T_1 intersection).
    pub discarded: usize,
    pub null_filiform: usize,
    pub counterexamples: Vec<String>,
}

impl F0Report {
    pub fn ok(&self) -> bool {
        self.null_filiform == self.trials && self.counterexamples.is_empty()
    }
}

/// Random cocycles with integer coordinates in `[-5, 5]` over the canonical
/// Z² basis; those with nonzero class and zero T_1 intersection are extended
/// and tested for null-filiformity.
pub fn check_f0_theorem(n: usize, trials: usize, seed: u64) -> Result<F0Report, ExtensionError> {
    let base = make(&FamilyId::f(0, n))?;
    let spaces = cohomology(&base);
    let z = spaces.z2.basis().to_vec();
    let ann = base.annihilator();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = Vec::new();
    let mut discarded = 0;
    while accepted.len() < trials && discarded < 100 * trials + 100 {
        let coeffs: Vec<Q> = z.iter().map(|_| q(rng.gen_range(-5..=5))).collect();
        let flat = z.iter().zip(&coeffs).fold(vec![Q::zero(); n * n], |mut acc, (v, c)| {
            for (a, b) in acc.iter_mut().zip(v) {
                *a += c * b;
            }
            acc
        });
        let theta = BilinearForm::from_flat(n, &flat);
        let class_zero = spaces.project(&theta).iter().all(Zero::is_zero);
        let ts_zero = cocycle_annihilator(&base, std::slice::from_ref(&theta))
            .ok()
            .and_then(|s| s.intersect(&ann).ok())
            .is_some_and(|s| s.is_zero());
        if class_zero || !ts_zero {
            discarded += 1;
            continue;
        }
        accepted.push(theta);
    }
    let results: Vec<Option<String>> = accepted
        .par_iter()
        .map(|t| {
            let ext = extend(&ExtensionSpec { base: base.clone(), thetas: vec![t.clone()] }).ok()?;
            if ext.is_null_filiform() {
                None
            } else {
                Some(format!("{} gives power dims {:?}", t.to_line("theta"), ext.power_series().dims()))
            }
        })
        .collect();
    let counterexamples: Vec<String> = results.into_iter().flatten().collect();
    Ok(F0Report {
        n,
        seed,
        trials: accepted.len(),
        discarded,
        null_filiform: accepted.len() - counterexamples.len(),
        counterexamples,
    })
}

/// `zext v1`: a catalog base and cocycle lines.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionRecipe {
    pub base: FamilyId,
    pub forms: Vec<(String, BilinearForm)>,
}

impl ExtensionRecipe {
    pub fn to_text(&self) -> String {
        let mut s = format!("zext v1\nbase {}\n", self.base.label());
        for (name, f) in &self.forms {
            s.push_str(&f.to_line(name));
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<ExtensionRecipe, ExtensionError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some("zext v1") {
            return Err(ExtensionError::Parse("expected header `zext v1`".into()));
        }
        let base_line = lines.next().ok_or_else(|| ExtensionError::Parse("missing `base`".into()))?;
        let label = base_line.strip_prefix("base ").ok_or_else(|| ExtensionError::Parse("expected `base <label>`".into()))?;
        let base = FamilyId::from_label(label.trim()).ok_or_else(|| ExtensionError::Parse(format!("unknown algebra `{label}`")))?;
        let rest: Vec<&str> = lines.collect();
        let forms = parse_forms(&rest.join("\n"), base.n).map_err(|e| ExtensionError::Parse(e.to_string()))?;
        Ok(ExtensionRecipe { base, forms })
    }

    pub fn spec(&self) -> Result<ExtensionSpec, ExtensionError> {
        ExtensionSpec::new(make(&self.base)?, self.forms.iter().map(|(_, f)| f.clone()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `e_i ↦ e_{perm[i]}`.
    Permutation(Vec<usize>),
    /// Rational, not a permutation.
    Linear,
    /// Entries in `Q[t]/(t^m + 1)`.
    RootOfMinusOne(usize),
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessKind::Permutation(p) => {
                let s: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "permutation [{}]", s.join(" "))
            }
            WitnessKind::Linear => f.write_str("linear"),
            WitnessKind::RootOfMinusOne(m) => write!(f, "ζ with ζ^{m} = -1"),
        }
    }
}

/// One row of the extension table at one dimension.
#[derive(Clone, Debug)]
pub struct RowCheck {
    pub id: String,
    pub n: usize,
    pub alpha: Option<Q>,
    pub result_label: String,
    pub nonsplit: NonsplitReport,
    /// The witness, when it is an isomorphism onto the named algebra.
    pub witness: Option<WitnessKind>,
    /// Exhaustive search found a permutation isomorphism.
    pub permutation_possible: bool,
    pub detail: String,
}

impl RowCheck {
    /// The witness is an isomorphism onto the named algebra.
    pub fn ok(&self) -> bool {
        self.witness.is_some()
    }

    /// The witness is a basis permutation.
    pub fn by_permutation(&self) -> bool {
        matches!(self.witness, Some(WitnessKind::Permutation(_)))
    }
}

/// Sorted nonzero structure constants; a basis permutation preserves it.
pub fn structure_multiset(a: &Algebra) -> Vec<Q> {
    let n = a.dim();
    let mut v: Vec<Q> = (0..n).flat_map(|i| (0..n).flat_map(move |j| a.basis_product(i, j).iter().map(|(_, c)| c.clone()))).collect();
    v.sort();
    v
}

/// Per-index signature kept by any permutation isomorphism: sorted
/// coefficients with `e_i` as left factor, right factor, and output.
fn index_signature(a: &Algebra, i: usize) -> [Vec<Q>; 3] {
    let n = a.dim();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut out = Vec::new();
    for j in 0..n {
        left.extend(a.basis_product(i, j).iter().map(|(_, c)| c.clone()));
        right.extend(a.basis_product(j, i).iter().map(|(_, c)| c.clone()));
        for k in 0..n {
            out.extend(a.basis_product(j, k).iter().filter(|(t, _)| *t == i).map(|(_, c)| c.clone()));
        }
    }
    for v in [&mut left, &mut right, &mut out] {
        v.sort();
    }
    [left, right, out]
}

/// Some `p` with `e_i ↦ e_{p[i]}` an isomorphism `a → b`, by exhaustive
/// search. `None` certifies that no permutation works.
pub fn find_permutation(a: &Algebra, b: &Algebra) -> Option<Vec<usize>> {
    let n = a.dim();
    if b.dim() != n || structure_multiset(a) != structure_multiset(b) {
        return None;
    }
    let sa: Vec<_> = (0..n).map(|i| index_signature(a, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| index_signature(b, i)).collect();
    let candidates: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| sa[i] == sb[j]).collect()).collect();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(a: &Algebra, b: &Algebra, perm: &[usize], k: usize) -> bool {
        // Products among e_0..e_k whose outputs are also assigned.
        for i in 0..=k {
            for j in 0..=k {
                if i != k && j != k {
                    continue;
                }
                let lhs = a.basis_product(i, j);
                let rhs = b.basis_product(perm[i], perm[j]);
                if lhs.len() != rhs.len() {
                    return false;
                }
                for (t, c) in lhs {
                    if perm[*t] != usize::MAX && b.coeff(perm[i], perm[j], perm[*t]) != *c {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(a: &Algebra, b: &Algebra, cands: &[Vec<usize>], perm: &mut Vec<usize>, used: &mut Vec<bool>, k: usize) -> bool {
        if k == perm.len() {
            return (0..k).all(|i| {
                (0..k).all(|j| {
                    let mut img: Vec<(usize, Q)> = a.basis_product(i, j).iter().map(|(t, c)| (perm[*t], c.clone())).collect();
                    img.sort_by_key(|x| x.0);
                    img == b.basis_product(perm[i], perm[j])
                })
            });
        }
        for &j in &cands[k] {
            if used[j] {
                continue;
            }
            perm[k] = j;
            used[j] = true;
            if consistent(a, b, perm, k) && go(a, b, cands, perm, used, k + 1) {
                return true;
            }
            used[j] = false;
            perm[k] = usize::MAX;
        }
        false
    }
    go(a, b, &candidates, &mut perm, &mut used, 0).then_some(perm)
}

fn as_permutation(phi: &Matrix) -> Option<Vec<usize>> {
    let n = phi.cols();
    let one = q(1);
    (0..n)
        .map(|j| {
            let col = phi.column(j);
            let nz: Vec<usize> = (0..n).filter(|&i| !col[i].is_zero()).collect();
            (nz.len() == 1 && col[nz[0]] == one).then(|| nz[0])
        })
        .collect()
}

/// Build `extend(base, representative)` and check the row's witness against
/// the named algebra.
pub fn verify_table_row(row: &ExtensionRow, n: usize, alpha: Option<&Q>) -> Result<RowCheck, ExtensionError> {
    let base = row.base_algebra(n)?;
    let forms = representative_forms(row, n, alpha).map_err(|e| ExtensionError::Parse(e.to_string()))?;
    let spec = ExtensionSpec::new(base.clone(), forms)?;
    let ext = extend(&spec)?;
    let nonsplit = nonsplit_report(&spec)?;
    let target_id = row.result_id(n, alpha);
    let target = make(&target_id)?;
    let big_n = ext.dim();
    let gens: Vec<usize> = if row.base == crate::catalog::Family::F0 { vec![0] } else { vec![0, n - 1] };
    let found = find_permutation(&ext, &target);
    let mut check = RowCheck {
        id: row.id(),
        n,
        alpha: alpha.cloned(),
        result_label: target_id.label(),
        nonsplit,
        witness: None,
        permutation_possible: found.is_some(),
        detail: String::new(),
    };
    if target.dim() != big_n {
        check.detail = format!("dimension {} vs {}", big_n, target.dim());
        return Ok(check);
    }
    if let Some(p) = found {
        check.witness = Some(WitnessKind::Permutation(p));
        return Ok(check);
    }
    match &row.witness {
        Witness::Linear(images) => {
            let env = crate::catalog::table_env(n, big_n, alpha);
            let mut imgs = Vec::new();
            for terms in images {
                let mut v = vec![Q::zero(); big_n];
                for (c, i) in terms {
                    let c = c.eval_q(&env).map_err(|e| ExtensionError::Parse(e.to_string()))?;
                    let i = i.eval_q(&env).map_err(|e| ExtensionError::Parse(e.to_string()))?;
                    let idx: usize = i.to_integer().try_into().map_err(|_| ExtensionError::Parse("index".into()))?;
                    v[idx - 1] += c;
                }
                imgs.push(v);
            }
            let Some(phi) = images_from_generators(&ext, &target, &gens, &imgs) else {
                check.detail = "generator images do not determine a map".into();
                return Ok(check);
            };
            let m = phi.to_matrix();
            if m.det().map_or(true, |d| d.is_zero()) {
                check.detail = "witness is singular".into();
            } else if let Some((i, j)) = first_defect(&ext, &target, &phi) {
                check.detail = format!("witness breaks e_{}∘e_{}", i + 1, j + 1);
            } else {
                check.witness = Some(match as_permutation(&m) {
                    Some(p) => WitnessKind::Permutation(p),
                    None => WitnessKind::Linear,
                });
            }
        }
        Witness::RootOfMinusOne { order } => {
            let env = crate::catalog::table_env(n, big_n, alpha);
            let m: usize = order
                .eval_q(&env)
                .ok()
                .and_then(|v| v.to_integer().try_into().ok())
                .ok_or_else(|| ExtensionError::Parse("order".into()))?;
            let zeta = Cyc::t_pow(m, 1);
            let zero = zeta.zero_like();
            let mut u = vec![zero.clone(); big_n];
            let mut v = vec![zero; big_n];
            u[0] = zeta.clone();
            v[big_n - 1] = zeta;
            match images_from_generators(&ext, &target, &gens, &[u, v]) {
                None => check.detail = "generator images do not determine a map".into(),
                Some(phi) => {
                    if let Some((i, j)) = first_defect(&ext, &target, &phi) {
                        check.detail = format!("witness breaks e_{}∘e_{}", i + 1, j + 1);
                    } else if !monomial_columns_invertible(&phi) {
                        check.detail = "witness is not bijective".into();
                    } else {
                        check.witness = Some(WitnessKind::RootOfMinusOne(m));
                    }
                }
            }
        }
    }
    Ok(check)
}

/// Every column is `t^k` times a rational vector and those vectors are
/// independent; then the determinant is a unit times a nonzero rational.
fn monomial_columns_invertible(phi: &ColMatrix<Cyc>) -> bool {
    let n = phi.dim();
    let mut rational = Vec::with_capacity(n);
    for col in &phi.cols {
        let mut power = None;
        let mut v = vec![Q::zero(); n];
        for (i, x) in col.iter().enumerate() {
            if x.vanishes() {
                continue;
            }
            let Some((k, c)) = x.monomial() else { return false };
            if *power.get_or_insert(k) != k {
                return false;
            }
            v[i] = c;
        }
        rational.push(v);
    }
    Matrix::from_rows(rational, n).is_ok_and(|m| m.rank() == n)
}

/// Admissible α samples for a row at `n`, from a fixed pool.
pub fn alpha_samples(row: &ExtensionRow, n: usize) -> Vec<Option<Q>> {
    use crate::catalog::AlphaRule;
    match row.alpha {
        AlphaRule::None => vec![None],
        AlphaRule::Fixed(_) => vec![row.alpha_at(n, &Q::zero())],
        AlphaRule::Free => [crate::linalg::qf(3, 7), q(-2), q(0)]
            .into_iter()
            .filter(|a| row.admits(n, a))
            .map(Some)
            .collect(),
    }
}

/// Readable label of an α sample.
pub fn alpha_label(a: Option<&Q>) -> String {
    a.map_or_else(|| "-".to_string(), fmt_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{extension_theorem_table, f0_class, nabla_basis, Family};

    fn fam(k: usize, n: usize) -> Algebra {
        make(&FamilyId::f(k, n)).unwrap()
    }

    #[test]
    fn f0_extension_table_is_next_f0() {
        for n in 2..=8 {
            let e = extend(&ExtensionSpec::new(fam(0, n), vec![f0_class(n)]).unwrap()).unwrap();
            assert!(e.table_eq(&fam(0, n + 1)), "n={n}");
        }
    }

    #[test]
    fn f1_plus_nabla4_is_next_f1_after_swap() {
        let nab = nabla_basis(Family::F1, 6).unwrap();
        let e = extend(&ExtensionSpec::new(fam(1, 6), vec![nab[3].clone()]).unwrap()).unwrap();
        let perm = [0, 1, 2, 3, 4, 6, 5];
        assert!(e.permute(&perm).table_eq(&fam(1, 7)));
    }

    #[test]
    fn split_and_nonsplit() {
        let nab = nabla_basis(Family::F1, 6).unwrap();
        let all = ExtensionSpec::new(fam(1, 6), nab.clone()).unwrap();
        assert!(is_nonsplit(&all).unwrap());
        let d11 = ExtensionSpec::new(fam(1, 6), vec![BilinearForm::delta(6, 0, 0)]).unwrap();
        assert!(!is_nonsplit(&d11).unwrap());
        let dep = ExtensionSpec::new(fam(1, 6), vec![nab[0].clone(), nab[0].scaled(&q(2))]).unwrap();
        let r = nonsplit_report(&dep).unwrap();
        assert!(!r.is_nonsplit() && r.class_rank == 1);
        let zero = ExtensionSpec::new(fam(1, 6), vec![BilinearForm::zero(6)]).unwrap();
        assert!(!nonsplit_report(&zero).unwrap().no_annihilator_component);
    }

    #[test]
    fn non_cocycle_named() {
        let bad = BilinearForm::delta(5, 1, 0);
        match extend(&ExtensionSpec { base: fam(0, 5), thetas: vec![bad.clone()] }) {
            Err(ExtensionError::NotCocycle { index: 0, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(!extend_any(&fam(0, 5), &[bad]).check_zinbiel().is_empty());
    }

    #[test]
    fn recover_inverts_extend() {
        let r = recover_extension(&fam(0, 7)).unwrap();
        assert!(r.base.table_eq(&fam(0, 6)));
        assert_eq!(r.thetas, vec![f0_class(6)]);
        let nab = nabla_basis(Family::F1, 6).unwrap();
        let spec = ExtensionSpec::new(fam(1, 6), vec![nab[0].clone(), nab[3].clone()]).unwrap();
        let e = extend(&spec).unwrap();
        let r = recover_extension(&e).unwrap();
        assert!(r.base.table_eq(&spec.base));
        assert_eq!(r.thetas, spec.thetas);
        assert_eq!(r.basis, Matrix::identity(8));
        assert!(matches!(recover_extension(&fam(0, 1).permute(&[0])).map(|r| r.base.dim()), Ok(0)));
    }

    #[test]
    fn mu3_recovers_a_smaller_base() {
        // ann(μ3^7) = ⟨e_5, e_7⟩, so the quotient is five-dimensional.
        let mu3 = make(&FamilyId::mu(3, 7, None)).unwrap();
        let r = recover_extension(&mu3).unwrap();
        assert_eq!(r.base.dim(), 5);
        assert!(r.base.table_eq(&fam(1, 5)));
        let again = extend(&ExtensionSpec::new(r.base.clone(), r.thetas.clone()).unwrap()).unwrap();
        assert!(mu3.transport(&r.basis.inverse().unwrap()).unwrap().table_eq(&again));
    }

    #[test]
    fn f0_theorem_small() {
        for n in 1..=5 {
            let r = check_f0_theorem(n, 10, 42).unwrap();
            assert!(r.ok() && r.trials == 10, "{r:?}");
        }
    }

    #[test]
    fn permutation_search() {
        let a = fam(1, 6);
        let p = [2, 0, 1, 3, 5, 4];
        let b = a.permute(&p);
        let found = find_permutation(&a, &b).unwrap();
        assert!(a.permute(&found).table_eq(&b));
        assert_eq!(find_permutation(&fam(2, 6), &fam(3, 6)), None);
    }

    #[test]
    fn zext_round_trip() {
        let nab = nabla_basis(Family::F1, 6).unwrap();
        let rec = ExtensionRecipe { base: FamilyId::f(1, 6), forms: vec![("t1".into(), nab[3].clone())] };
        assert_eq!(ExtensionRecipe::parse(&rec.to_text()).unwrap(), rec);
    }

    #[test]
    fn table_rows_small() {
        for f in [Family::F0, Family::F1, Family::F2, Family::F3] {
            for row in extension_theorem_table(f) {
                for a in alpha_samples(&row, 6) {
                    let c = verify_table_row(&row, 6, a.as_ref()).unwrap();
                    assert!(c.ok(), "{} α={:?}: {}", c.id, a, c.detail);
                    // F_7^1 = F_6^0 ⊕ ⟨e_7⟩ has an annihilator component.
                    assert_eq!(c.nonsplit.no_annihilator_component, c.id != "F1/1e", "{}", c.id);
                    assert_eq!(c.by_permutation(), c.permutation_possible, "{}", c.id);
                }
            }
        }
    }
}
