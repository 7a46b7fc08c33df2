use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zinbiel::algebra::Algebra;
use zinbiel::catalog::{all_at, make, nabla_basis, Family, FamilyId};
use zinbiel::cocycles::{act, coboundary_space, cocycle_space, cohomology, is_cocycle, BilinearForm};
use zinbiel::extensions::{extend, find_permutation, ExtensionSpec};
use zinbiel::invariants::{fingerprint, random_unimodular, random_unipotent_automorphism, w_space};
use zinbiel::linalg::{fmt_q, parse_q, q, qf, Matrix, Q};
use zinbiel::symbolic::template::{extend_from_generators, AutomorphismTemplate, Reading};

fn rational() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=12).prop_map(|(a, b)| qf(a, b))
}

fn sparse_algebra() -> impl Strategy<Value = Algebra> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0..n, rational()), 0..12).prop_map(move |entries| {
            let mut a = Algebra::zero(n, "random");
            for (i, j, k, c) in entries {
                a.add_product(i, j, k, c);
            }
            a
        })
    })
}

fn catalog_id() -> impl Strategy<Value = FamilyId> {
    (5usize..=7, 0usize..19, prop::sample::select(vec![q(2), qf(1, 2), q(-1), q(0)]))
        .prop_map(|(n, k, a)| all_at(n, &a).swap_remove(k))
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(parse_q(&fmt_q(&x)), Some(x));
    }

    #[test]
    fn zalg_round_trip(a in sparse_algebra()) {
        let once = Algebra::parse_zalg(&a.to_zalg()).unwrap();
        let twice = Algebra::parse_zalg(&once.to_zalg()).unwrap();
        prop_assert!(once.table_eq(&a));
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn matrix_inverse_and_rank(rows in prop::collection::vec(prop::collection::vec(rational(), 4), 4)) {
        let m = Matrix::from_rows(rows, 4).unwrap();
        prop_assert_eq!(m.rank() + m.kernel_basis().dim(), 4);
        match m.inverse() {
            Some(inv) => prop_assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(4)),
            None => prop_assert_eq!(m.det(), Some(q(0))),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn catalog_satisfies_identity_in_any_basis(id in catalog_id(), seed in any::<u64>()) {
        let a = make(&id).unwrap();
        let m = random_unimodular(a.dim(), 3, &mut ChaCha8Rng::seed_from_u64(seed));
        let b = a.transport(&m).unwrap();
        prop_assert!(b.check_zinbiel().is_empty(), "{}", id);
    }

    #[test]
    fn coboundaries_are_cocycles(id in catalog_id()) {
        let a = make(&id).unwrap();
        prop_assert!(coboundary_space(&a).is_subspace_of(&cocycle_space(&a)));
    }

    #[test]
    fn cohomology_dims_are_basis_independent(id in catalog_id(), seed in any::<u64>()) {
        let a = make(&id).unwrap();
        let m = random_unimodular(a.dim(), 4, &mut ChaCha8Rng::seed_from_u64(seed));
        let (c, d) = (cohomology(&a), cohomology(&a.transport(&m).unwrap()));
        prop_assert_eq!((c.z2.dim(), c.b2.dim()), (d.z2.dim(), d.b2.dim()));
    }

    #[test]
    fn automorphisms_act_on_cocycles(k in 1usize..=3, n in 5usize..=7, seed in any::<u64>()) {
        let f = [Family::F1, Family::F2, Family::F3][k - 1];
        let a = make(&FamilyId { family: f, n, alpha: None }).unwrap();
        let t = AutomorphismTemplate::new(f, n, Reading::Corrected).unwrap();
        let env = t.sample(&mut ChaCha8Rng::seed_from_u64(seed));
        let (u, v) = t.generator_images();
        let ev = |p: &Vec<zinbiel::symbolic::poly::Poly>| p.iter().map(|e| e.eval(&env).unwrap()).collect::<Vec<Q>>();
        let phi = extend_from_generators(&a, &ev(&u), Some(&ev(&v))).expect("template sample is an automorphism");
        prop_assert!(a.transport(&phi).unwrap().table_eq(&a));
        for theta in nabla_basis(f, n).unwrap() {
            prop_assert!(is_cocycle(&a, &act(&theta, &phi).unwrap()));
        }
    }

    #[test]
    fn extensions_by_cocycles_are_zinbiel(n in 5usize..=7, k in 1usize..=3, coeffs in prop::collection::vec(rational(), 4)) {
        let f = [Family::F1, Family::F2, Family::F3][k - 1];
        let a = make(&FamilyId { family: f, n, alpha: None }).unwrap();
        let nb = nabla_basis(f, n).unwrap();
        let theta = BilinearForm::combination(n, &coeffs[..nb.len()], &nb);
        let e = extend(&ExtensionSpec::new(a, vec![theta]).unwrap()).unwrap();
        prop_assert!(e.check_zinbiel().is_empty());
    }

    #[test]
    fn permuted_tables_are_found(id in catalog_id(), p in (5usize..=7).prop_flat_map(permutation)) {
        let a = make(&FamilyId { n: p.len(), ..id }).unwrap();
        let b = a.permute(&p);
        let found = find_permutation(&a, &b).expect("a permutation exists");
        prop_assert!(a.permute(&found).table_eq(&b));
    }

    #[test]
    fn product_table_is_permutation_invariant(id in catalog_id(), seed in any::<u64>()) {
        let a = make(&id).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = {
            use rand::seq::SliceRandom;
            let mut p: Vec<usize> = (0..a.dim()).collect();
            p.shuffle(&mut rng);
            p
        };
        let (fa, fb) = (fingerprint(&a).unwrap(), fingerprint(&a.permute(&p)).unwrap());
        prop_assert_eq!(fa.char_products, fb.char_products);
    }

    #[test]
    fn annihilator_inside_every_w(id in catalog_id()) {
        let a = make(&id).unwrap();
        let ann = a.annihilator();
        let series = a.power_series();
        for k in 1..series.dims().len() {
            prop_assert!(ann.is_subspace_of(&w_space(&a, &series.power(k))));
        }
    }

    #[test]
    fn unipotent_automorphisms_fix_the_table(id in catalog_id(), seed in any::<u64>()) {
        let a = make(&id).unwrap();
        let m = random_unipotent_automorphism(&a, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(a.transport(&m).unwrap().table_eq(&a));
    }
}
