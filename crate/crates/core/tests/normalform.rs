mod common;

use ccnet_core::liealg::AdOperator;
use ccnet_core::normalform::{
    gamma_matrix, grade_order, homological_solve, normal_form, normal_form_symmetry_check, sn_decompose,
    GradeSpaces, NormalFormOptions, Strategy,
};
use ccnet_core::structure::{dynamical_input_symmetries, invariant_subbasis};
use ccnet_core::unipoly;
use ccnet_core::{FiniteMap, GradedBasis, NetworkSpec, PolyMap, Q};
use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn small_spec(r: &mut ChaCha8Rng) -> NetworkSpec {
    loop {
        let cells = r.gen_range(1..=3);
        let mut ms: Vec<FiniteMap> = (0..r.gen_range(1..=2))
            .map(|_| FiniteMap::new((0..cells).map(|_| r.gen_range(0..cells)).collect()).unwrap())
            .collect();
        ms.sort();
        ms.dedup();
        let s = NetworkSpec::closed(ms, 1).unwrap();
        if s.n() <= 3 {
            return s;
        }
    }
}

fn rand_linear(r: &mut ChaCha8Rng, n: usize) -> PolyMap {
    loop {
        let f = rand_polymap(r, n, 1, 0, 1, 1);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random family with linear part `f0` and no constant term.
fn rand_family(r: &mut ChaCha8Rng, f0: &PolyMap, p: usize) -> PolyMap {
    let n = f0.arity();
    let mut f = rand_polymap(r, n, 1, p, 0, 3).truncate(2, 1);
    f = f.sub(&f.grade(0, 0)).unwrap();
    let one = ccnet_core::Monomial::one(f.nvars());
    let c = f.component(0).coeff(&one);
    let constant = PolyMap::scalar(n, p, ccnet_core::Poly::constant(f.nvars(), c)).unwrap();
    f.sub(&constant).unwrap().add(&f0.extend_params(p).unwrap()).unwrap()
}

#[test]
fn feed_forward_split_with_symbolic_coefficients() {
    // Several (a1, a2, a3): S = a1 X1 + (a2 + a3) X3 and N = a2 (X2 − X3).
    let spec = feed_forward(1);
    for a in [[0i64, 1, 2], [1, 1, 1], [2, -3, 5], [-1, 4, 0]] {
        let lin = |c: [i64; 3]| {
            let poly = (0..3).fold(ccnet_core::Poly::zero(3), |acc, i| acc.add(&x(3, i).scale(&Q::from_integer(c[i].into()))));
            PolyMap::scalar(3, 0, poly).unwrap()
        };
        let s = sn_decompose(&spec, &lin(a)).unwrap();
        assert_eq!(s.f0_s, lin([a[0], 0, a[1] + a[2]]), "a = {a:?}");
        assert_eq!(s.f0_n, lin([0, a[1], -a[1]]), "a = {a:?}");
        assert_eq!(s.witness.first().map(Zero::is_zero), Some(true));
    }
}

#[test]
fn validation_errors() {
    let spec = skew_product(1);
    let zero_linear = PolyMap::scalar(2, 0, x(2, 0).pow(2)).unwrap();
    assert!(normal_form(&spec, &zero_linear, 2, 0, &NormalFormOptions::default()).is_err());
    let constant = PolyMap::scalar(2, 0, x(2, 1).add(&c(2, 1))).unwrap();
    assert!(normal_form(&spec, &constant, 2, 0, &NormalFormOptions::default()).is_err());
    let wrong_arity = PolyMap::scalar(3, 0, x(3, 1)).unwrap();
    assert!(normal_form(&spec, &wrong_arity, 2, 0, &NormalFormOptions::default()).is_err());
}

#[test]
fn grade_order_visits_states_before_parameters() {
    assert_eq!(grade_order(2, 1), vec![(1, 0), (2, 0), (-1, 1), (0, 1), (1, 1), (2, 1)]);
}

#[test]
fn invariant_mode_keeps_invariance() {
    let spec = four_map(1);
    let group = dynamical_input_symmetries(&spec).unwrap();
    let opts = NormalFormOptions { symmetry: Some(group.clone()), ..Default::default() };
    let mut r = rng(7);
    let mut f = PolyMap::zero(4, 1, 1);
    for (k, l) in [(0, 0), (1, 0), (-1, 1), (0, 1), (2, 0)] {
        let basis = GradedBasis::new(k, l, 4, 1, 1).unwrap();
        for v in invariant_subbasis(&spec, &group, k, l, 1).unwrap() {
            f = f.add(&basis.from_coordinates(&v).scale(&rand_nonzero_q(&mut r))).unwrap();
        }
    }
    let res = normal_form(&spec, &f, 2, 1, &opts).unwrap();
    for g in &res.grades {
        let inv = invariant_subbasis(&spec, &group, g.k, g.l, 1).unwrap();
        let basis = GradedBasis::new(g.k, g.l, 4, 1, 1).unwrap();
        let sp = ccnet_core::linalg::Subspace::from_vectors(basis.len(), inv);
        assert!(sp.contains(&basis.coordinates(&g.residual).unwrap()), "grade ({}, {})", g.k, g.l);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sn_split_is_a_jordan_chevalley_split(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = small_spec(&mut r);
        let f0 = rand_linear(&mut r, spec.n());
        let s = sn_decompose(&spec, &f0).unwrap();
        prop_assert_eq!(s.s_matrix.add(&s.n_matrix), s.matrix.clone());
        prop_assert_eq!(gamma_matrix(&spec, &s.f0_s).unwrap(), s.s_matrix.clone());
        prop_assert_eq!(gamma_matrix(&spec, &s.f0_n).unwrap(), s.n_matrix.clone());
        prop_assert!(s.n_matrix.is_nilpotent());
        prop_assert!(s.s_matrix.commutes_with(&s.n_matrix));
        let mu = s.s_matrix.minimal_polynomial();
        prop_assert_eq!(unipoly::degree(&unipoly::gcd(&mu, &unipoly::derivative(&mu))), Some(0));
        // Uniqueness: a semisimple input has no nilpotent part, and reruns agree.
        let again = sn_decompose(&spec, &s.f0_s).unwrap();
        prop_assert!(gamma_matrix(&spec, &again.f0_n).unwrap().is_zero());
        prop_assert_eq!(sn_decompose(&spec, &f0).unwrap(), s);
    }

    #[test]
    fn normal_space_complements_the_image(seed in any::<u64>(), k in -1i32..3, l in 0u32..2, image in any::<bool>()) {
        prop_assume!(!(k == -1 && l == 0));
        let mut r = rng(seed);
        let spec = small_spec(&mut r);
        let f0 = rand_linear(&mut r, spec.n());
        let strategy = if image { Strategy::ImageComplement } else { Strategy::Sn };
        let opts = NormalFormOptions { strategy, ..Default::default() };
        let sp = GradeSpaces::new(&spec, &f0, None, k, l, 1, &opts).unwrap();
        prop_assert_eq!(sp.normal.dim() + sp.image.dim(), sp.kg.quotient_dim());
        prop_assert_eq!(sp.normal.intersect(&sp.image).dim(), 0);
    }

    #[test]
    fn homological_solutions_are_exact(seed in any::<u64>(), k in 0i32..3, l in 0u32..2) {
        let mut r = rng(seed);
        let spec = small_spec(&mut r);
        let f0 = rand_linear(&mut r, spec.n());
        let h = rand_polymap(&mut r, spec.n(), 1, 1, 0, 4).grade(k, l);
        let opts = NormalFormOptions::default();
        let (g, res) = homological_solve(&spec, &f0, k, l, &h, &opts).unwrap();
        let op = AdOperator::new(&spec, &f0).unwrap();
        prop_assert_eq!(h.sub(&op.apply(&g).unwrap()).unwrap(), res.clone());
        let sp = GradeSpaces::new(&spec, &f0, None, k, l, 1, &opts).unwrap();
        prop_assert!(sp.in_normal_space(&res).unwrap());
        prop_assert_eq!(g.grade(k, l), g);
    }

    #[test]
    fn normal_form_pipeline(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = small_spec(&mut r);
        let f0 = rand_linear(&mut r, spec.n());
        let f = rand_family(&mut r, &f0, 1);
        let opts = NormalFormOptions::default();
        let res = normal_form(&spec, &f, 2, 1, &opts).unwrap();
        prop_assert!(res.grades.iter().all(|g| g.in_normal_space));
        for g in &res.generators {
            prop_assert_eq!(g.g.grade(g.k, g.l), g.g.clone());
        }
        prop_assert_eq!(res.fbar.grade(0, 0), f0.extend_params(1).unwrap());
        let split = res.split.as_ref().unwrap();
        prop_assert!(normal_form_symmetry_check(&spec, split, &res.fbar, 2, 1).unwrap());
        // Idempotence.
        let again = normal_form(&spec, &res.fbar, 2, 1, &opts).unwrap();
        prop_assert_eq!(again.fbar, res.fbar);
    }
}
