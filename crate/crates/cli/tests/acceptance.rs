//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Criteria listed in `UNATTAINABLE` fail for mathematical reasons recorded
//! next to them; they still print FAIL. The process fails on any other FAIL,
//! or if an unattainable criterion starts passing.

use std::collections::BTreeSet;
use std::fs;
use std::process::Command;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zinbiel::algebra::Algebra;
use zinbiel::catalog::{
    all_at, extension_theorem_table, listed_coboundary_basis, listed_cocycle_basis, make, nabla_basis, reduction_cases,
    Family, FamilyId,
};
use zinbiel::cocycles::{cohomology, BilinearForm};
use zinbiel::extensions::{alpha_label, alpha_samples, check_f0_theorem, verify_table_row, WitnessKind};
use zinbiel::invariants::{
    catalog_sweep, distinguish_report, fingerprint, known_collisions, random_unimodular, random_unipotent_automorphism,
};
use zinbiel::linalg::{parse_q, q, qf, Subspace, Q};
use zinbiel::symbolic::action::{check_case, verify_action_formula, CaseStatus};
use zinbiel::symbolic::poly::Poly;
use zinbiel::symbolic::template::{extend_from_generators, verify_aut_template, AutomorphismTemplate, Reading};

const SEED: u64 = 42;
const FILIFORM: [Family; 3] = [Family::F1, Family::F2, Family::F3];
const DIMS: std::ops::RangeInclusive<usize> = 5..=10;
const AUT_SAMPLES: usize = 20;
const CASE_SAMPLES: usize = 3;
/// Double-equivalent precision with tolerance 1e-9, and 128 bits with 1e-20.
const PRECISIONS: [(u32, &str); 2] = [(53, "1/1000000000"), (128, "1/100000000000000000000")];
const EXTENSION_DIMS: std::ops::RangeInclusive<usize> = 5..=8;
const F0_DIMS: std::ops::RangeInclusive<usize> = 3..=8;
const F0_TRIALS: usize = 50;
const SWEEP_DIMS: std::ops::RangeInclusive<usize> = 6..=10;
const INVARIANCE_DIM: usize = 6;
const AUTOMORPHISMS_PER_ALGEBRA: usize = 50;
const BASIS_CHANGES_PER_ALGEBRA: usize = 10;

/// Criteria that cannot pass as stated, with the reason.
const UNATTAINABLE: [(usize, &str); 2] = [
    (4, "the printed F_n^3 template leaves a_(n,1) free, but e_n∘e_1 = 0 forces a_(n,1) = 0"),
    (7, "several extension algebras are isomorphic to the named algebra only by non-permutation maps; exhaustive search finds no permutation"),
];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn filiform(f: Family, n: usize) -> Algebra {
    make(&FamilyId { family: f, n, alpha: None }).expect("n ≥ 5")
}

fn identity_alphas(n: usize) -> Vec<Q> {
    let mut v = vec![q(0), q(1), q(-1), q(2), qf(1, 2), qf(1, n as i64 - 3), qf(1, n as i64 - 4)];
    v.sort();
    v.dedup();
    v
}

fn c1_identity() -> Outcome {
    let mut algs: Vec<Algebra> = (1..=10).map(|n| make(&FamilyId::f(0, n)).unwrap()).collect();
    for n in DIMS {
        algs.extend(FILIFORM.iter().map(|f| filiform(*f, n)));
        let mut seen = BTreeSet::new();
        for a in identity_alphas(n) {
            for id in all_at(n, &a).into_iter().skip(3) {
                if seen.insert(id.label()) {
                    algs.push(make(&id).unwrap());
                }
            }
        }
    }
    let bad: Vec<String> = algs.iter().filter(|a| !a.check_zinbiel().is_empty()).map(|a| a.label.clone()).collect();
    outcome(bad.is_empty(), format!("{} algebras, violations in {:?}", algs.len(), bad))
}

fn spans(n: usize, forms: &[BilinearForm]) -> Subspace {
    Subspace::span(n * n, forms.iter().map(BilinearForm::flatten))
}

fn c2_dimensions() -> Outcome {
    let mut bad = Vec::new();
    for n in DIMS {
        for f in FILIFORM {
            let c = cohomology(&filiform(f, n));
            let want = if f == Family::F1 { (n + 2, n - 2, 4) } else { (n + 1, n - 2, 3) };
            let got = (c.z2.dim(), c.b2.dim(), c.h2_dim());
            if got != want {
                bad.push(format!("{f} n={n}: {got:?} vs {want:?}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("18 (family, n) pairs; mismatches {bad:?}"))
}

fn c3_bases() -> Outcome {
    let mut bad = Vec::new();
    for n in DIMS {
        for f in FILIFORM {
            let c = cohomology(&filiform(f, n));
            let z = listed_cocycle_basis(f, n).unwrap();
            let b = listed_coboundary_basis(f, n).unwrap();
            let mut bh = b.clone();
            bh.extend(nabla_basis(f, n).unwrap());
            // Inclusion both ways: the listed span sits inside the computed space and has its dimension.
            let both = |forms: &[BilinearForm], s: &Subspace| {
                let l = spans(n, forms);
                l.dim() == forms.len() && l.is_subspace_of(s) && s.is_subspace_of(&l)
            };
            for (name, ok) in [("Z²", both(&z, &c.z2)), ("B²", both(&b, &c.b2)), ("B²⊕∇", both(&bh, &c.z2))] {
                if !ok {
                    bad.push(format!("{f} n={n} {name}"));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("Z², B², H² listed bases for F1-F3, n=5..10; mismatches {bad:?}"))
}

fn c4_templates() -> Outcome {
    let mut printed_fail = Vec::new();
    let mut corrected_fail = Vec::new();
    for n in DIMS {
        for f in FILIFORM {
            let p = verify_aut_template(f, n, AUT_SAMPLES, Reading::Printed, SEED).unwrap();
            if !p.ok() {
                printed_fail.push(format!("{f} n={n} ({}/{})", p.samples - p.passed, p.samples));
            }
            if !verify_aut_template(f, n, AUT_SAMPLES, Reading::Corrected, SEED).unwrap().ok() {
                corrected_fail.push(format!("{f} n={n}"));
            }
        }
    }
    let detail = format!(
        "printed template fails for {printed_fail:?}; with a_(n,1) = 0 fails for {corrected_fail:?}; derived entries via extend_from_generators"
    );
    outcome(printed_fail.is_empty(), detail)
}

fn c5_action() -> Outcome {
    let mut bad = Vec::new();
    for n in DIMS {
        for f in FILIFORM {
            let r = verify_action_formula(f, n).unwrap();
            if !r.ok() {
                bad.push(format!("{f} n={n} {:?}", r.mismatches()));
            }
        }
    }
    outcome(bad.is_empty(), format!("exact polynomial identity for F1-F3, n=5..10; mismatches {bad:?}"))
}

fn c6_cases() -> Outcome {
    let tols: Vec<(u32, Q)> = PRECISIONS.iter().map(|(p, t)| (*p, parse_q(t).unwrap())).collect();
    let mut counts = [0usize; 3];
    let mut per_family = Vec::new();
    let mut explained = BTreeSet::new();
    let mut unexplained = Vec::new();
    for f in FILIFORM {
        let cases = reduction_cases(f);
        per_family.push(format!("{f}:{}", cases.len()));
        for case in &cases {
            for n in DIMS {
                for (prec, tol) in &tols {
                    let r = check_case(case, n, CASE_SAMPLES, SEED, *prec, tol);
                    let status = if r.samples.len() < CASE_SAMPLES { CaseStatus::Fail } else { r.status() };
                    match status {
                        CaseStatus::Pass => counts[0] += 1,
                        CaseStatus::Explained => {
                            counts[1] += 1;
                            explained.insert(case.case_id.clone());
                        }
                        CaseStatus::Fail => {
                            counts[2] += 1;
                            unexplained.push(format!("{} n={n} prec={prec}: {}", case.case_id, r.failure_summary().unwrap_or_default()));
                        }
                    }
                }
            }
        }
    }
    outcome(
        unexplained.is_empty(),
        format!(
            "cases {}; runs pass {}, explained {}, unexplained {}; explained literal failures {:?}; unexplained {:?}",
            per_family.join(" "),
            counts[0],
            counts[1],
            counts[2],
            explained,
            unexplained
        ),
    )
}

fn c7_extensions() -> Outcome {
    let mut unverified = Vec::new();
    let mut no_permutation = BTreeSet::new();
    let mut rows = 0;
    let mut named = [false, false];
    for n in EXTENSION_DIMS {
        for f in [Family::F0, Family::F1, Family::F2, Family::F3] {
            for row in extension_theorem_table(f) {
                for a in alpha_samples(&row, n) {
                    rows += 1;
                    let c = verify_table_row(&row, n, a.as_ref()).unwrap();
                    match &c.witness {
                        None => unverified.push(format!("{} n={n} α={}: {}", c.id, alpha_label(a.as_ref()), c.detail)),
                        Some(WitnessKind::Permutation(_)) => {
                            named[0] |= c.id == "F1/1e";
                            named[1] |= c.id == "F0/1";
                        }
                        Some(w) => {
                            no_permutation.insert(format!("{} ({})", c.id, if matches!(w, WitnessKind::Linear) { "linear" } else { "ζ" }));
                        }
                    }
                }
            }
        }
    }
    let detail = format!(
        "{rows} row checks; F1+∇4→F1 and F0→F0 by permutation: {}; rows without a verified isomorphism {unverified:?}; isomorphic but no basis permutation exists: {:?}",
        named[0] && named[1],
        no_permutation
    );
    outcome(unverified.is_empty() && no_permutation.is_empty() && named[0] && named[1], detail)
}

fn c8_f0() -> Outcome {
    let mut bad = Vec::new();
    let mut discarded = 0;
    for n in F0_DIMS {
        let r = check_f0_theorem(n, F0_TRIALS, SEED).unwrap();
        discarded += r.discarded;
        if !r.ok() {
            bad.push(format!("n={n}: {}/{}", r.null_filiform, r.trials));
        }
    }
    outcome(bad.is_empty(), format!("{F0_TRIALS} accepted draws per n=3..8, {discarded} discarded by the precondition; failures {bad:?}"))
}

fn random_automorphism(a: &Algebra, id: &FamilyId, rng: &mut ChaCha8Rng) -> zinbiel::linalg::Matrix {
    if id.family.filiform_index().is_some() {
        let t = AutomorphismTemplate::new(id.family, id.n, Reading::Corrected).unwrap();
        let env = t.sample(rng);
        let (u, v) = t.generator_images();
        let ev = |p: &Vec<Poly>| p.iter().map(|e| e.eval(&env).unwrap()).collect::<Vec<Q>>();
        extend_from_generators(a, &ev(&u), Some(&ev(&v))).expect("template sample is an automorphism")
    } else {
        random_unipotent_automorphism(a, rng)
    }
}

fn c9_fingerprints() -> Outcome {
    let mut problems = Vec::new();
    for n in DIMS {
        let fil: Vec<Algebra> = FILIFORM.iter().map(|f| filiform(*f, n)).collect();
        if !distinguish_report(&fil).unwrap().fully_distinguished() {
            problems.push(format!("F1-F3 collide at n={n}"));
        }
    }
    let known: BTreeSet<(String, String)> = known_collisions().into_iter().collect();
    let mut found = BTreeSet::new();
    for n in SWEEP_DIMS {
        for c in catalog_sweep(n, &q(2), &qf(1, 2)).unwrap().collisions() {
            if !known.contains(&c) {
                problems.push(format!("unlisted collision {c:?}"));
            }
            found.insert(c);
        }
    }
    let stale: Vec<_> = known.difference(&found).collect();
    if !stale.is_empty() {
        problems.push(format!("listed but not observed {stale:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut ids = vec![FamilyId::f(0, INVARIANCE_DIM)];
    ids.extend(all_at(INVARIANCE_DIM, &q(2)));
    let mut transports = 0;
    for id in &ids {
        let a = make(id).unwrap();
        let base = fingerprint(&a).unwrap();
        for k in 0..AUTOMORPHISMS_PER_ALGEBRA + BASIS_CHANGES_PER_ALGEBRA {
            let m = if k < AUTOMORPHISMS_PER_ALGEBRA {
                random_automorphism(&a, id, &mut rng)
            } else {
                random_unimodular(a.dim(), 4, &mut rng)
            };
            let b = a.transport(&m).unwrap();
            transports += 1;
            if fingerprint(&b).unwrap() != base {
                problems.push(format!("{} changes under transport {k}", id.label()));
                break;
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "F1-F3 separated n=5..10; catalog sweep n=6..10 α=2,1/2: {} collisions, all listed; {transports} transports of {} algebras ({} automorphisms + {} basis changes each) keep the fingerprint; problems {problems:?}",
            found.len(),
            ids.len(),
            AUTOMORPHISMS_PER_ALGEBRA,
            BASIS_CHANGES_PER_ALGEBRA
        ),
    )
}

fn c10_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let status = Command::new(env!("CARGO_BIN_EXE_zex"))
            .args(["reproduce", "--seed", "42", "--out", out.to_str().unwrap()])
            .env_remove("ZEX_SEED")
            .output()
            .expect("zex runs")
            .status;
        (status.code(), fs::read(out.join("report.csv")).unwrap_or_default())
    };
    let (c1, a) = run("first");
    let (c2, b) = run("second");
    outcome(!a.is_empty() && a == b, format!("two runs, {} bytes of CSV, exit codes {c1:?} {c2:?}", a.len()))
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (1, "identity suite", c1_identity),
        (2, "dimension formulas", c2_dimensions),
        (3, "basis span equality", c3_bases),
        (4, "automorphism templates", c4_templates),
        (5, "action formulas", c5_action),
        (6, "reduction cases", c6_cases),
        (7, "extension theorems up to a basis permutation", c7_extensions),
        (8, "F_n^0 theorem", c8_f0),
        (9, "non-isomorphism by fingerprints", c9_fingerprints),
        (10, "determinism of reproduce", c10_determinism),
    ];
    let mut unexpected = Vec::new();
    for (k, name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let blocked = UNATTAINABLE.iter().find(|(c, _)| *c == k);
        println!("{} criterion {k} ({name}) [{:.1}s]: {}", if o.pass { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64(), o.detail);
        match (o.pass, blocked) {
            (false, Some((_, why))) => println!("    unattainable: {why}"),
            (false, None) => unexpected.push(format!("criterion {k} fails")),
            (true, Some(_)) => unexpected.push(format!("criterion {k} passes but is listed as unattainable")),
            (true, None) => {}
        }
    }
    if !unexpected.is_empty() {
        eprintln!("acceptance: {}", unexpected.join("; "));
        std::process::exit(1);
    }
}
