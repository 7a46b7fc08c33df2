//! Automorphism templates of `F_n^1`, `F_n^2`, `F_n^3`, and linear maps
//! built from generator images.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::Poly;
use crate::algebra::Algebra;
use crate::catalog::{make, CatalogError, Family, FamilyId};
use crate::linalg::{fmt_q, q, qf, unit, Echelon, Matrix, Q};
use crate::ring::{combine, ColMatrix, Ring};

/// Largest `m` with `e_i∘e_1 = i e_{i+1}` for every `i < m`.
pub fn chain_length(a: &Algebra) -> usize {
    let mut m = 1;
    while m < a.dim() {
        match a.basis_product(m - 1, 0) {
            [(k, c)] if *k == m && *c == q(m as i64) => m += 1,
            _ => break,
        }
    }
    m
}

/// Images of the whole basis from `φ(e_1)` (and `φ(e_n)` when the chain
/// `e_{i+1} = (1/i) e_i∘e_1` stops at `e_{n-1}`). No multiplicativity check.
pub fn chain_in<R: Ring>(a: &Algebra, img_e1: Vec<R>, img_last: Option<Vec<R>>) -> Option<ColMatrix<R>> {
    let n = a.dim();
    let m = chain_length(a);
    let mut cols = vec![img_e1];
    for i in 1..m {
        let p = a.product_in(&cols[i - 1], &cols[0]);
        let inv = Q::one() / q(i as i64);
        cols.push(p.iter().map(|x| x.scale(&inv)).collect());
    }
    if m + 1 == n {
        cols.push(img_last?);
    } else if m != n {
        return None;
    }
    Some(ColMatrix { cols })
}

/// `φ(e_i)∘φ(e_j) − φ(e_i∘e_j)` for every basis pair, row-major.
pub fn multiplicativity_defects<R: Ring>(source: &Algebra, target: &Algebra, phi: &ColMatrix<R>) -> Vec<Vec<R>> {
    let n = source.dim();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let lhs = target.product_in(&phi.cols[i], &phi.cols[j]);
            let mut e = vec![Q::zero(); n];
            for (k, c) in source.basis_product(i, j) {
                e[*k] = c.clone();
            }
            let rhs = phi.apply_q(&e);
            out.push(lhs.iter().zip(&rhs).map(|(a, b)| a.sub(b)).collect());
        }
    }
    out
}

/// First basis pair (0-based) whose product is not preserved, in an exact ring.
pub fn first_defect<R: Ring>(source: &Algebra, target: &Algebra, phi: &ColMatrix<R>) -> Option<(usize, usize)> {
    let n = source.dim();
    multiplicativity_defects(source, target, phi)
        .iter()
        .position(|d| d.iter().any(|x| !x.vanishes()))
        .map(|p| (p / n, p % n))
}

/// The multiplicative linear extension of generator images, if one exists.
///
/// The chain `e_{i+1} = (1/i) e_i∘e_1` fixes every image except `e_n` for
/// the filiform families, which is `img_last`. The result must be invertible
/// and preserve every basis product.
pub fn extend_from_generators(a: &Algebra, img_e1: &[Q], img_last: Option<&[Q]>) -> Option<Matrix> {
    let phi = chain_in(a, img_e1.to_vec(), img_last.map(<[Q]>::to_vec))?;
    let m = phi.to_matrix();
    if m.det().map_or(true, |d| d.is_zero()) || first_defect(a, a, &phi).is_some() {
        return None;
    }
    Some(m)
}

/// A linear map `source → target` from images of generators of `source`,
/// extended through products. `None` if the generators do not generate.
/// Multiplicativity is not checked here.
pub fn images_from_generators<R: Ring>(
    source: &Algebra,
    target: &Algebra,
    gens: &[usize],
    imgs: &[Vec<R>],
) -> Option<ColMatrix<R>> {
    let n = source.dim();
    let mut ech = Echelon::new(n);
    let mut elems: Vec<(Vec<Q>, Vec<R>)> = Vec::new();
    for (&g, img) in gens.iter().zip(imgs) {
        let v = unit(n, g);
        if ech.insert(&v) {
            elems.push((v, img.clone()));
        }
    }
    while elems.len() < n {
        let before = elems.len();
        'grow: for i in 0..elems.len() {
            for j in 0..elems.len() {
                let p = source.product(&elems[i].0, &elems[j].0).expect("same dimension");
                if ech.insert(&p) {
                    let img = target.product_in(&elems[i].1, &elems[j].1);
                    elems.push((p, img));
                    if elems.len() == n {
                        break 'grow;
                    }
                }
            }
        }
        if elems.len() == before {
            return None;
        }
    }
    let s = Matrix::from_rows(elems.iter().map(|e| e.0.clone()).collect(), n).ok()?.transpose();
    let sinv = s.inverse()?;
    let images: Vec<Vec<R>> = elems.into_iter().map(|e| e.1).collect();
    let like = images[0][0].zero_like();
    Some(ColMatrix { cols: (0..n).map(|j| combine(&sinv.column(j), &images, &like)).collect() })
}

/// Which version of the `F_n^3` template: as printed (`a_{n,1}` free) or
/// with `a_{n,1} = 0`. The two agree for `F_n^1` and `F_n^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reading {
    Printed,
    Corrected,
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::Printed => "printed",
            Reading::Corrected => "corrected",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Poly(Poly),
    /// Fixed by the generator chain, left unspecified in the template.
    Derived,
}

/// `φ` with `x = a_{1,1}`, `y = a_{n,n}`, `z = a_{n-1,n}`, `w = a_{n,1}` and
/// `a{i}_1 = a_{i,1}`. For `F_n^3` with even `n` the last diagonal entry is a
/// variable `s` with side constraint `s² = x^{n-1}`.
#[derive(Clone, Debug)]
pub struct AutomorphismTemplate {
    pub family: Family,
    pub n: usize,
    pub reading: Reading,
    pub free_params: Vec<String>,
    pub side_constraint: Option<(String, Poly)>,
    pub vars: Arc<Vec<String>>,
    entries: Vec<Vec<Entry>>,
}

impl AutomorphismTemplate {
    pub fn new(family: Family, n: usize, reading: Reading) -> Result<Self, CatalogError> {
        if !matches!(family, Family::F1 | Family::F2 | Family::F3) {
            return Err(CatalogError::NotFiliformFamily(family));
        }
        FamilyId { family, n, alpha: None }.validate()?;
        let w_free = !(family == Family::F3 && reading == Reading::Corrected);
        let even_f3 = family == Family::F3 && n % 2 == 0;
        let mut names: Vec<String> = vec!["x".into()];
        names.extend((2..n).map(|i| format!("a{i}_1")));
        if w_free {
            names.push("w".into());
        }
        names.push("z".into());
        match family {
            Family::F1 => names.push("y".into()),
            Family::F3 if even_f3 => names.push("s".into()),
            _ => {}
        }
        let vars = Arc::new(names.clone());
        let v = |s: &str| Poly::var_in(&vars, s);
        let zero = Poly::constant_in(&vars, Q::zero());
        let x = v("x");
        let last = match family {
            Family::F1 => v("y"),
            Family::F2 => x.pow(n as u32 - 2),
            _ if even_f3 => v("s"),
            _ => x.pow((n as u32 - 1) / 2),
        };
        let mut entries = vec![vec![Entry::Poly(zero.clone()); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[0] = Entry::Poly(match i {
                0 => x.clone(),
                _ if i == n - 1 => if w_free { v("w") } else { zero.clone() },
                _ => v(&format!("a{}_1", i + 1)),
            });
            if (1..n - 1).contains(&i) {
                row[i] = Entry::Poly(x.pow(i as u32 + 1));
                for cell in row.iter_mut().take(i).skip(1) {
                    *cell = Entry::Derived;
                }
            }
        }
        entries[n - 2][n - 1] = Entry::Poly(v("z"));
        entries[n - 1][n - 1] = Entry::Poly(last);
        let side_constraint = even_f3.then(|| ("s".to_string(), x.pow(n as u32 - 1)));
        let free_params = names.into_iter().filter(|p| p != "s").collect();
        Ok(AutomorphismTemplate { family, n, reading, free_params, side_constraint, vars, entries })
    }

    /// Entry `(i, j)`, 1-based as in `a_{i,j}`.
    pub fn entry(&self, i: usize, j: usize) -> &Entry {
        &self.entries[i - 1][j - 1]
    }

    fn column(&self, j: usize) -> Vec<Poly> {
        self.entries
            .iter()
            .map(|r| match &r[j] {
                Entry::Poly(p) => p.clone(),
                Entry::Derived => unreachable!("generator columns are explicit"),
            })
            .collect()
    }

    /// Symbolic `φ(e_1)` and `φ(e_n)`.
    pub fn generator_images(&self) -> (Vec<Poly>, Vec<Poly>) {
        (self.column(0), self.column(self.n - 1))
    }

    /// The whole symbolic matrix, starred entries filled by the chain.
    pub fn symbolic_matrix(&self) -> ColMatrix<Poly> {
        let a = make(&FamilyId { family: self.family, n: self.n, alpha: None }).expect("validated");
        let (u, v) = self.generator_images();
        chain_in(&a, u, Some(v)).expect("filiform chain")
    }

    /// Random admissible assignment: `x ≠ 0`, `y ≠ 0`, and `x = t²`,
    /// `s = t^{n-1}` when the side constraint is present.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> HashMap<String, Q> {
        let mut env = HashMap::new();
        for p in &self.free_params {
            let nonzero = p == "x" || p == "y";
            env.insert(p.clone(), small_rational(rng, nonzero));
        }
        if self.side_constraint.is_some() {
            let t = small_rational(rng, true);
            env.insert("x".into(), &t * &t);
            env.insert("s".into(), num_traits::pow::Pow::pow(&t, self.n as u32 - 1));
        }
        env
    }
}

/// Numerator in `[-3, 3]`, denominator in `[1, 3]`.
pub fn small_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> Q {
    loop {
        let v = qf(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        if !(nonzero && v.is_zero()) {
            return v;
        }
    }
}

#[derive(Clone, Debug)]
pub struct AutTemplateReport {
    pub family: Family,
    pub n: usize,
    pub reading: Reading,
    pub samples: usize,
    pub passed: usize,
    pub failures: Vec<String>,
    /// The last diagonal entry is carried as `s` with `s² = x^{n-1}`.
    pub side_constraint: bool,
}

impl AutTemplateReport {
    pub fn ok(&self) -> bool {
        self.passed == self.samples
    }
}

fn show_env(env: &HashMap<String, Q>, order: &[String]) -> String {
    order.iter().filter_map(|k| env.get(k).map(|v| format!("{k}={}", fmt_q(v)))).collect::<Vec<_>>().join(", ")
}

/// Sample the free parameters, extend the generator images through the
/// chain, and compare every explicit template entry with the result.
pub fn verify_aut_template(family: Family, n: usize, samples: usize, reading: Reading, seed: u64) -> Result<AutTemplateReport, CatalogError> {
    let t = AutomorphismTemplate::new(family, n, reading)?;
    let a = make(&FamilyId { family, n, alpha: None })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = AutTemplateReport {
        family,
        n,
        reading,
        samples,
        passed: 0,
        failures: Vec::new(),
        side_constraint: t.side_constraint.is_some(),
    };
    let (u, v) = t.generator_images();
    let mut order = t.free_params.clone();
    order.extend(t.side_constraint.iter().map(|(s, _)| s.clone()));
    for _ in 0..samples {
        let env = t.sample(&mut rng);
        let eval = |p: &Vec<Poly>| p.iter().map(|e| e.eval(&env).expect("all bound")).collect::<Vec<Q>>();
        let phi = chain_in(&a, eval(&u), Some(eval(&v))).expect("filiform chain");
        if let Some((i, j)) = first_defect(&a, &a, &phi) {
            report.failures.push(format!("{}: e_{}∘e_{} not preserved", show_env(&env, &order), i + 1, j + 1));
            continue;
        }
        let m = phi.to_matrix();
        if m.det().map_or(true, |d| d.is_zero()) {
            report.failures.push(format!("{}: singular", show_env(&env, &order)));
            continue;
        }
        let mismatch = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).find(|&(i, j)| match t.entry(i, j) {
            Entry::Poly(p) => p.eval(&env).expect("all bound") != *m.get(i - 1, j - 1),
            Entry::Derived => false,
        });
        match mismatch {
            Some((i, j)) => report.failures.push(format!("{}: entry ({i},{j}) differs", show_env(&env, &order))),
            None => report.passed += 1,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(f: Family, n: usize) -> Algebra {
        make(&FamilyId { family: f, n, alpha: None }).unwrap()
    }

    fn scaled_unit(n: usize, i: usize, c: i64) -> Vec<Q> {
        let mut v = unit(n, i);
        v[i] = q(c);
        v
    }

    #[test]
    fn identity_and_scaling() {
        let a = fam(Family::F1, 5);
        assert_eq!(extend_from_generators(&a, &unit(5, 0), Some(&unit(5, 4))), Some(Matrix::identity(5)));
        let m = extend_from_generators(&a, &scaled_unit(5, 0, 2), Some(&scaled_unit(5, 4, 3))).unwrap();
        let diag: Vec<Q> = (0..5).map(|i| m.get(i, i).clone()).collect();
        assert_eq!(diag, vec![q(2), q(4), q(8), q(16), q(3)]);
    }

    #[test]
    fn inconsistent_images_rejected() {
        let a = fam(Family::F2, 5);
        assert!(extend_from_generators(&a, &unit(5, 0), Some(&scaled_unit(5, 4, 2))).is_none());
    }

    #[test]
    fn templates_hold() {
        for n in 5..=8 {
            for f in [Family::F1, Family::F2, Family::F3] {
                let r = verify_aut_template(f, n, 6, Reading::Corrected, 7).unwrap();
                assert!(r.ok(), "{f} n={n}: {:?}", r.failures);
            }
        }
    }

    #[test]
    fn printed_f3_template_needs_w_zero() {
        let r = verify_aut_template(Family::F3, 7, 10, Reading::Printed, 1).unwrap();
        assert!(!r.ok());
        assert!(r.failures.iter().all(|f| f.contains("not preserved")));
        let t = AutomorphismTemplate::new(Family::F3, 7, Reading::Printed).unwrap();
        assert_eq!(t.entry(7, 7), &Entry::Poly(Poly::var_in(&t.vars, "x").pow(3)));
    }

    #[test]
    fn generic_extension_matches_chain() {
        let a = fam(Family::F2, 6);
        let u = scaled_unit(6, 0, 2);
        let mut v = unit(6, 5);
        v[5] = q(16);
        v[4] = q(3);
        let chain = chain_in(&a, u.clone(), Some(v.clone())).unwrap();
        let bfs = images_from_generators(&a, &a, &[0, 5], &[u, v]).unwrap();
        assert_eq!(chain.to_matrix(), bfs.to_matrix());
        assert!(first_defect(&a, &a, &bfs).is_none());
    }
}
