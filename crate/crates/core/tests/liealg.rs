mod common;

use ccnet_core::liealg::{ad_matrix, kernel_gamma, sigma_bracket, sigma_compose, AdOperator};
use ccnet_core::vfield::VectorField;
use ccnet_core::{FiniteMap, GradedBasis, NetworkSpec, Poly, PolyMap};
use common::*;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn rand_spec(r: &mut ChaCha8Rng, max_cells: usize, dim: usize) -> NetworkSpec {
    let cells = r.gen_range(1..=max_cells);
    let mut ms: Vec<FiniteMap> = (0..r.gen_range(1..=2))
        .map(|_| FiniteMap::new((0..cells).map(|_| r.gen_range(0..cells)).collect()).unwrap())
        .collect();
    ms.sort();
    ms.dedup();
    NetworkSpec::closed(ms, dim).unwrap()
}

/// Draws a spec whose closure stays small enough for symbolic checks.
fn small_spec(r: &mut ChaCha8Rng, dim: usize) -> NetworkSpec {
    loop {
        let s = rand_spec(r, 3, dim);
        if s.n() <= 4 {
            return s;
        }
    }
}

#[test]
fn skew_bracket_of_linear_maps() {
    // [X1, X2]_Σ on the skew product: D_2(X1)=0, D_1(X2)=0, so
    // [f,g] = D_1 f · g − D_2 g · f(A_2 X) = X2 − X2 = 0.
    let spec = skew_product(1);
    let f = PolyMap::scalar(2, 0, x(2, 0)).unwrap();
    let g = PolyMap::scalar(2, 0, x(2, 1)).unwrap();
    assert!(sigma_bracket(&spec, &f, &g).unwrap().is_zero());
    // [X1, X1^2] = 1 · X1^2 − 2 X1 · X1 = −X1^2.
    let h = PolyMap::scalar(2, 0, x(2, 0).pow(2)).unwrap();
    assert_eq!(sigma_bracket(&spec, &f, &h).unwrap(), h.neg());
}

#[test]
fn composition_with_the_identity_projection() {
    // f ∘_Σ X1 reproduces f exactly when σ_1 is the identity.
    let spec = feed_forward(1);
    let mut r = rng(1);
    let f = rand_polymap(&mut r, 3, 1, 0, 0, 3);
    let id = PolyMap::projection(3, 1, 0, 0);
    assert_eq!(sigma_compose(&spec, &f, &id).unwrap(), f);
}

#[test]
fn ad_requires_a_linear_map() {
    let spec = skew_product(1);
    let f = PolyMap::scalar(2, 0, x(2, 0).pow(2)).unwrap();
    assert!(AdOperator::new(&spec, &f).is_err());
}

#[test]
fn vector_field_bracket_matches_oracle() {
    let mut r = rng(2);
    let f: Vec<Poly> = (0..3).map(|_| rand_poly(&mut r, 3, 1, 0, 2, 1, 4)).collect();
    let g: Vec<Poly> = (0..3).map(|_| rand_poly(&mut r, 3, 1, 0, 2, 1, 4)).collect();
    let vf = VectorField::new(3, 1, f.clone()).unwrap();
    let vg = VectorField::new(3, 1, g.clone()).unwrap();
    assert_eq!(vf.bracket(&vg).unwrap().components(), jacobian_bracket(&f, &g).as_slice());
    assert_eq!(vf.compose(&vg).unwrap().components(), compose_fields(&f, &g).as_slice());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homomorphism_on_random_networks(seed in any::<u64>(), dim in 1usize..3) {
        let mut r = rng(seed);
        let spec = small_spec(&mut r, dim);
        let f = rand_polymap(&mut r, spec.n(), dim, 1, 0, 2);
        let g = rand_polymap(&mut r, spec.n(), dim, 1, 0, 2);
        let (gf, gg) = (oracle_gamma_spec(&spec, &f), oracle_gamma_spec(&spec, &g));
        let comp = sigma_compose(&spec, &f, &g).unwrap();
        prop_assert_eq!(oracle_gamma_spec(&spec, &comp), compose_fields(&gf, &gg));
        let br = sigma_bracket(&spec, &f, &g).unwrap();
        prop_assert_eq!(oracle_gamma_spec(&spec, &br), jacobian_bracket(&gf, &gg));
        // The library's own γ agrees with the oracle.
        let lib: Vec<Poly> = spec.gamma_symbolic(&f).unwrap().iter().flat_map(|c| c.components().to_vec()).collect();
        prop_assert_eq!(lib, gf);
    }

    #[test]
    fn bracket_respects_the_grading(seed in any::<u64>(), k1 in -1i32..2, k2 in 0i32..2, l1 in 0u32..2, l2 in 0u32..2) {
        let mut r = rng(seed);
        let spec = feed_forward(1);
        let f = rand_polymap(&mut r, 3, 1, 1, 0, 3).grade(k1, l1);
        let g = rand_polymap(&mut r, 3, 1, 1, 0, 3).grade(k2, l2);
        let b = sigma_bracket(&spec, &f, &g).unwrap();
        prop_assert_eq!(b.grade(k1 + k2, l1 + l2), b);
    }

    #[test]
    fn ad_matrix_columns_are_images(seed in any::<u64>(), k in 0i32..3, l in 0u32..2) {
        let mut r = rng(seed);
        let spec = small_spec(&mut r, 1);
        let f0 = rand_polymap(&mut r, spec.n(), 1, 0, 1, 1);
        prop_assume!(!f0.is_zero());
        let basis = GradedBasis::new(k, l, spec.n(), 1, 1).unwrap();
        let m = ad_matrix(&spec, &f0, k, l, 1).unwrap();
        let op = AdOperator::new(&spec, &f0).unwrap();
        for j in 0..basis.len() {
            let img = op.apply(&basis.entry(j)).unwrap();
            prop_assert_eq!(basis.from_coordinates(&m.column(j)), img);
        }
    }

    #[test]
    fn kernel_gamma_is_annihilated_and_complete(seed in any::<u64>(), k in 0i32..3) {
        let mut r = rng(seed);
        let spec = small_spec(&mut r, 1);
        let kg = kernel_gamma(&spec, k, 0, 0).unwrap();
        for b in kg.polys() {
            prop_assert!(oracle_gamma_spec(&spec, &b).iter().all(Poly::is_zero));
        }
        // Quotient representatives are never annihilated unless zero.
        let v = rand_point(&mut r, kg.quotient_dim());
        let rep = kg.basis.from_coordinates(&kg.lift(&v));
        let zero = oracle_gamma_spec(&spec, &rep).iter().all(Poly::is_zero);
        prop_assert_eq!(zero, v.iter().all(num_traits::Zero::is_zero));
    }

    #[test]
    fn ker_gamma_is_an_ideal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = four_map(1);
        let kg = kernel_gamma(&spec, 1, 0, 0).unwrap();
        let ks = kg.polys();
        let kpoly = &ks[r.gen_range(0..ks.len())];
        let f = rand_polymap(&mut r, 4, 1, 0, 0, 2);
        let b = sigma_bracket(&spec, kpoly, &f).unwrap();
        prop_assert!(oracle_gamma_spec(&spec, &b).iter().all(Poly::is_zero));
        let c = sigma_compose(&spec, kpoly, &f).unwrap();
        prop_assert!(oracle_gamma_spec(&spec, &c).iter().all(Poly::is_zero));
    }
}
