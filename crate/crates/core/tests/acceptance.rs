//! One line per acceptance criterion. Every check is exact.

mod common;

use ccnet_core::colored::{semigroupoid_closure, ColoredNetworkSpec, ColoredPolyFamily};
use ccnet_core::finmap::semigroup_closure;
use ccnet_core::liealg::{kernel_gamma, sigma_bracket, sigma_compose, AdOperator};
use ccnet_core::linalg::Subspace;
use ccnet_core::network::fundamental_network;
use ccnet_core::normalform::{
    normal_form, normal_form_symmetry_check, sn_decompose, GradeSpaces, NormalFormOptions,
};
use ccnet_core::rational::q;
use ccnet_core::structure::{
    balanced_partitions, closure_invariance_report, dynamical_input_symmetries, network_symmetries,
};
use ccnet_core::unipoly;
use ccnet_core::{FiniteMap, Monomial, NetworkSpec, Poly, PolyMap, Q};
use common::*;
use num_traits::{One, Zero};
use rand::Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: core::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Check {
    let t = semigroup_closure(&maps(&[&[1, 2, 3], &[1, 1, 2]])).map_err(err)?;
    let elems: Vec<Vec<usize>> = t.elements().iter().map(FiniteMap::one_based).collect();
    ensure(elems == vec![vec![1, 2, 3], vec![1, 1, 2], vec![1, 1, 1]], format!("elements {elems:?}"))?;
    let tilde: Vec<Vec<usize>> = (0..3).map(|a| t.tilde_map(a).one_based()).collect();
    ensure(tilde == vec![vec![1, 2, 3], vec![2, 3, 3], vec![3, 3, 3]], format!("tilde maps {tilde:?}"))?;
    // Row a of the composition table lists σ_a ∘ σ_b.
    for a in 0..3 {
        for b in 0..3 {
            let prod = t.elements()[a].compose(&t.elements()[b]).map_err(err)?;
            ensure(t.elements()[t.product(a, b)] == prod, "table entry disagrees with composition")?;
        }
    }
    Ok(())
}

fn criterion_2() -> Check {
    let spec = feed_forward(1);
    let a: Vec<Vec<usize>> = (0..3).map(|j| spec.a_map(j).map(|s| s.one_based())).collect::<Result<_, _>>().map_err(err)?;
    ensure(a == vec![vec![1, 2, 3], vec![2, 3, 3], vec![3, 3, 3]], format!("A-maps {a:?}"))
}

/// `g(A X)` for a literal selection `A` (1-based), one-dimensional cells.
fn after(g: &Poly, sel: &[usize]) -> Poly {
    let n = g.nvars();
    let images: Vec<Poly> = sel.iter().map(|&s| x(n, s - 1)).collect();
    g.substitute(&images, n)
}

fn criterion_3() -> Check {
    let spec = feed_forward(1);
    let mut r = rng(3);
    for _ in 0..5 {
        let f = generic_quadratic(&mut r, 3);
        let g = generic_quadratic(&mut r, 3);
        let (fp, gp) = (f.component(0), g.component(0));
        let a = [[1, 2, 3], [2, 3, 3], [3, 3, 3]];
        let mut six = Poly::zero(3);
        for (j, sel) in a.iter().enumerate() {
            six = six.add(&fp.partial(j).mul(&after(gp, sel)));
            six = six.sub(&gp.partial(j).mul(&after(fp, sel)));
        }
        let b = sigma_bracket(&spec, &f, &g).map_err(err)?;
        ensure(*b.component(0) == six, "bracket differs from the six-term formula")?;
        let lhs = oracle_gamma_spec(&spec, &b);
        let rhs = jacobian_bracket(&oracle_gamma_spec(&spec, &f), &oracle_gamma_spec(&spec, &g));
        ensure(lhs == rhs, "γ of the bracket differs from the Jacobian bracket")?;
    }
    Ok(())
}

fn criterion_4() -> Check {
    let specs = [feed_forward(2), skew_product(2), four_map(1)];
    let mut r = rng(4);
    for t in 0..50 {
        let spec = &specs[t % 3];
        let p = r.gen_range(0..=1);
        let (n, m) = (spec.n(), spec.dim());
        let f = rand_polymap(&mut r, n, m, p, 0, 2);
        let g = rand_polymap(&mut r, n, m, p, 0, 2);
        let h = rand_polymap(&mut r, n, m, p, 0, 2);
        let br = |a: &PolyMap, b: &PolyMap| sigma_bracket(spec, a, b).map_err(err);
        let fg = br(&f, &g)?;
        ensure(fg.add(&br(&g, &f)?).map_err(err)?.is_zero(), "antisymmetry fails")?;
        let jac = br(&f, &br(&g, &h)?)?
            .add(&br(&g, &br(&h, &f)?)?)
            .map_err(err)?
            .add(&br(&h, &fg)?)
            .map_err(err)?;
        ensure(jac.is_zero(), format!("Jacobi fails on triple {t}"))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    let specs = [feed_forward(1), feed_forward(2), four_map(1), skew_product(2)];
    let mut r = rng(5);
    for t in 0..20 {
        let spec = &specs[t % specs.len()];
        let p = t % 2;
        let f = rand_polymap(&mut r, spec.n(), spec.dim(), p, 0, 2);
        let g = rand_polymap(&mut r, spec.n(), spec.dim(), p, 0, 2);
        let gf = oracle_gamma_spec(spec, &f);
        let gg = oracle_gamma_spec(spec, &g);
        let comp = sigma_compose(spec, &f, &g).map_err(err)?;
        ensure(oracle_gamma_spec(spec, &comp) == compose_fields(&gf, &gg), format!("composition pair {t}"))?;
        let br = sigma_bracket(spec, &f, &g).map_err(err)?;
        ensure(oracle_gamma_spec(spec, &br) == jacobian_bracket(&gf, &gg), format!("bracket pair {t}"))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let mut r = rng(6);
    for spec in [feed_forward(1), four_map(1), feed_forward(2)] {
        let fun = fundamental_network(&spec).map_err(err)?;
        let (n, m) = (spec.n(), spec.dim());
        let table = spec.table().map_err(err)?;
        for _ in 0..20 {
            let f = rand_polymap(&mut r, n, m, 1, 0, 2);
            let gamma = oracle_gamma_spec(&spec, &f);
            let big: Vec<Poly> = fun
                .spec
                .gamma_symbolic(&f)
                .map_err(err)?
                .iter()
                .flat_map(|c| c.components().to_vec())
                .collect();
            let nv = spec.cells() * m + 1;
            for i in 0..spec.cells() {
                // X_{j,c} = x_{σ_j(i),c}
                let mut images = Vec::new();
                for s in spec.maps() {
                    for c in 0..m {
                        images.push(x(nv, s.apply(i) * m + c));
                    }
                }
                images.push(x(nv, nv - 1));
                let lhs: Vec<Poly> = big.iter().map(|b| b.substitute(&images, nv)).collect();
                let mut rhs = Vec::new();
                for s in spec.maps() {
                    rhs.extend_from_slice(&gamma[s.apply(i) * m..(s.apply(i) + 1) * m]);
                }
                ensure(lhs == rhs, format!("Γ_f∘π_{} differs from π_{}∘γ_f", i + 1, i + 1))?;
            }
            let nvb = n * m + 1;
            for j in 0..n {
                // (A_{σ_j} X)_k = X_{σ̃_k(j)}
                let sel: Vec<usize> = (0..n).map(|k| table.tilde(k)[j]).collect();
                let mut images = Vec::new();
                for &s in &sel {
                    for c in 0..m {
                        images.push(x(nvb, s * m + c));
                    }
                }
                images.push(x(nvb, nvb - 1));
                let lhs: Vec<Poly> = big.iter().map(|b| b.substitute(&images, nvb)).collect();
                let mut rhs = Vec::new();
                for &s in &sel {
                    rhs.extend_from_slice(&big[s * m..(s + 1) * m]);
                }
                ensure(lhs == rhs, format!("Γ_f∘A_σ{} differs from A_σ{}∘Γ_f", j + 1, j + 1))?;
            }
        }
    }
    Ok(())
}

fn scalar(n: usize, p: usize, poly: Poly) -> PolyMap {
    PolyMap::scalar(n, p, poly).unwrap()
}

fn sub_space(sp: &GradeSpaces, polys: &[PolyMap]) -> Result<Subspace, String> {
    let vs = polys.iter().map(|h| sp.quotient_coords(h)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    Ok(Subspace::from_vectors(sp.kg.quotient_dim(), vs))
}

/// `(X1 − X2)^α X2^β λ^l` in two slots with `p` parameters.
fn skew_monomial(alpha: u32, beta: u32, l: u32, p: usize) -> PolyMap {
    let nv = 2 + p;
    let mut poly = x(nv, 0).sub(&x(nv, 1)).pow(alpha).mul(&x(nv, 1).pow(beta));
    if l > 0 {
        poly = poly.mul(&x(nv, 2).pow(l));
    }
    scalar(2, p, poly)
}

fn criterion_7() -> Check {
    let spec = skew_product(1);
    // Part 1: a1 = 1, a2 = −1.
    let (a1, a2) = (q(1), q(-1));
    let f00 = scalar(2, 0, x(2, 0).scale(&a1).add(&x(2, 1).scale(&a2)));
    let ad = AdOperator::new(&spec, &f00).map_err(err)?;
    for k in 0..=3i32 {
        let d = (k + 1) as u32;
        let kg = kernel_gamma(&spec, k, 0, 0).map_err(err)?;
        for alpha in 0..=d {
            let beta = d - alpha;
            let b = skew_monomial(alpha, beta, 0, 0);
            let ev = if alpha >= 1 {
                Q::from_integer((1 - alpha as i64).into()) * &a1 - Q::from_integer((beta as i64).into()) * (&a1 + &a2)
            } else {
                Q::from_integer((1 - beta as i64).into()) * (&a1 + &a2)
            };
            let diff = ad.apply(&b).map_err(err)?.sub(&b.scale(&ev)).map_err(err)?;
            let coords = kg.basis.coordinates(&diff).map_err(err)?;
            ensure(kg.contains(&coords), format!("eigen relation fails for α={alpha}, β={beta}"))?;
        }
    }
    // Part 2: a1 = 0, a2 = 1, one parameter.
    let p = 1;
    let f0 = scalar(2, 0, x(2, 1));
    let split = sn_decompose(&spec, &f0).map_err(err)?;
    {
        let opts = NormalFormOptions::default();
        for l in 0..=2u32 {
            for k in -1..=3i32 {
                if k == -1 && l == 0 {
                    continue;
                }
                let sp = GradeSpaces::new(&spec, &f0, Some(&split), k, l, p, &opts).map_err(err)?;
                let mut expected = Vec::new();
                if k >= 0 {
                    expected.push(skew_monomial((k + 1) as u32, 0, l, p));
                }
                if k == 0 {
                    expected.push(skew_monomial(0, 1, l, p));
                }
                ensure(sp.normal == sub_space(&sp, &expected)?, format!("N^{{{k},{l}}} differs"))?;
            }
        }
    }
    Ok(())
}

fn ff_linear(a: [i64; 3]) -> PolyMap {
    let mut poly = Poly::zero(3);
    for (i, ai) in a.iter().enumerate() {
        poly.add_term(Monomial::var(3, i), q(*ai));
    }
    scalar(3, 0, poly)
}

fn criterion_8() -> Check {
    let spec = feed_forward(1);
    let f0 = ff_linear([0, 1, 2]);
    let s = sn_decompose(&spec, &f0).map_err(err)?;
    ensure(s.f0_s == ff_linear([0, 0, 3]), format!("f0_S = {:?}", s.f0_s.render()))?;
    ensure(s.f0_n == ff_linear([0, 1, -1]), format!("f0_N = {:?}", s.f0_n.render()))?;
    let rows = |m: &ccnet_core::RationalMatrix| m.to_rows();
    let z = Q::zero;
    ensure(rows(&s.matrix) == vec![vec![q(3), z(), z()], vec![q(3), z(), z()], vec![q(2), q(1), z()]], "matrix")?;
    ensure(rows(&s.s_matrix) == vec![vec![q(3), z(), z()], vec![q(3), z(), z()], vec![q(3), z(), z()]], "S")?;
    ensure(rows(&s.n_matrix) == vec![vec![z(), z(), z()], vec![z(), z(), z()], vec![q(-1), q(1), z()]], "N")?;
    let mu = s.s_matrix.minimal_polynomial();
    ensure(unipoly::degree(&unipoly::gcd(&mu, &unipoly::derivative(&mu))) == Some(0), "S is not semisimple")?;
    ensure(s.n_matrix.is_nilpotent(), "N is not nilpotent")?;
    ensure(s.s_matrix.commutes_with(&s.n_matrix), "S and N do not commute")?;
    ensure(sigma_bracket(&spec, &s.f0_s, &s.f0_n).map_err(err)?.is_zero(), "[f0_S, f0_N] ≠ 0")
}

/// `(X1 − X3)^α (X2 − X3)^β X3^γ λ^l` with one parameter.
fn ff_monomial(alpha: u32, beta: u32, gamma: u32, l: u32) -> PolyMap {
    let d = |i: usize| x(4, i).sub(&x(4, 2));
    let poly = d(0).pow(alpha).mul(&d(1).pow(beta)).mul(&x(4, 2).pow(gamma)).mul(&x(4, 3).pow(l));
    scalar(3, 1, poly)
}

fn ff_expected(k: i32, l: u32) -> Vec<PolyMap> {
    match k {
        -1 => vec![],
        0 => vec![ff_monomial(1, 0, 0, l), ff_monomial(0, 1, 0, l), ff_monomial(0, 0, 1, l)],
        k => vec![ff_monomial((k + 1) as u32, 0, 0, l)],
    }
}

fn criterion_9() -> Check {
    let spec = feed_forward(1);
    let f0 = ff_linear([0, 1, 2]);
    let split = sn_decompose(&spec, &f0).map_err(err)?;
    let opts = NormalFormOptions::default();
    for l in 0..=1u32 {
        for k in -1..=2i32 {
            if k == -1 && l == 0 {
                continue;
            }
            let sp = GradeSpaces::new(&spec, &f0, Some(&split), k, l, 1, &opts).map_err(err)?;
            ensure(sp.normal == sub_space(&sp, &ff_expected(k, l))?, format!("N^{{{k},{l}}} differs"))?;
        }
    }
    let mut r = rng(9);
    for _ in 0..3 {
        let mut f = rand_polymap(&mut r, 3, 1, 1, 1, 3).truncate(2, 1);
        f = f.sub(&f.grade(0, 0)).map_err(err)?.add(&ff_linear([0, 1, 2]).extend_params(1).map_err(err)?).map_err(err)?;
        let res = normal_form(&spec, &f, 2, 1, &opts).map_err(err)?;
        for g in &res.grades {
            let sp = GradeSpaces::new(&spec, &f0, Some(&split), g.k, g.l, 1, &opts).map_err(err)?;
            let expected = sub_space(&sp, &ff_expected(g.k, g.l))?;
            ensure(expected.contains(&sp.quotient_coords(&g.residual).map_err(err)?), format!("grade ({}, {})", g.k, g.l))?;
        }
        let s = res.split.as_ref().ok_or("missing split")?;
        ensure(normal_form_symmetry_check(&spec, s, &res.fbar, 2, 1).map_err(err)?, "symmetry check failed")?;
    }
    Ok(())
}

fn criterion_10() -> Check {
    let spec = four_map(1);
    let kg = kernel_gamma(&spec, 1, 0, 0).map_err(err)?;
    let d = |a: usize, b: usize| x(4, a).sub(&x(4, b));
    let quads = [d(0, 3).mul(&d(0, 2)), d(0, 3).mul(&d(1, 3)), d(1, 2).mul(&d(0, 2)), d(1, 2).mul(&d(1, 3))];
    for qd in quads {
        let coords = kg.basis.coordinates(&scalar(4, 0, qd)).map_err(err)?;
        ensure(kg.contains(&coords), "quadratic not in ker γ")?;
    }
    // The four quadratics are independent, but they do not exhaust the
    // degree-two part: X1·X2 − X3·X4 also vanishes on both π-images, and a
    // direct count (10 quadratics, 3 + 3 − 1 restrictions) gives dimension 5.
    let extra = x(4, 0).mul(&x(4, 1)).sub(&x(4, 2).mul(&x(4, 3)));
    ensure(kg.contains(&kg.basis.coordinates(&scalar(4, 0, extra)).map_err(err)?), "X1·X2 − X3·X4 not in ker γ")?;
    ensure(kg.dim() == 5, format!("ker γ ∩ P^1 has dimension {}", kg.dim()))?;
    let mut r = rng(10);
    let mut specs = vec![feed_forward(1), feed_forward(2), skew_product(1), four_map(1), four_map(2)];
    for _ in 0..10 {
        let cells = r.gen_range(1..=4);
        let nm = r.gen_range(1..=3);
        let ms: Vec<FiniteMap> =
            (0..nm).map(|_| FiniteMap::new((0..cells).map(|_| r.gen_range(0..cells)).collect()).unwrap()).collect();
        let mut ms2 = ms.clone();
        ms2.sort();
        ms2.dedup();
        specs.push(NetworkSpec::closed(ms2, r.gen_range(1..=2)).map_err(err)?);
    }
    let mut counterexamples = Vec::new();
    for spec in &specs {
        for l in 0..=1 {
            let kg = kernel_gamma(spec, 0, l, 1).map_err(err)?;
            for b in kg.polys() {
                // Confirm with the oracle that γ really annihilates it.
                ensure(oracle_gamma_spec(spec, &b).iter().all(Poly::is_zero), "kernel element with γ ≠ 0")?;
                let ms: Vec<Vec<usize>> = spec.maps().iter().map(FiniteMap::one_based).collect();
                counterexamples.push(format!("maps {:?}, m = {}: γ_f = 0 for f = {}", ms, spec.dim(), b.render().join(", ")));
            }
        }
    }
    counterexamples.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    counterexamples.dedup();
    match counterexamples.first() {
        None => Ok(()),
        Some(first) => Err(format!(
            "γ is not injective on linear maps: {} kernel elements across the tested specs, e.g. {}",
            counterexamples.len(),
            first
        )),
    }
}

fn criterion_11() -> Check {
    let spec = closed_spec(&[&[1, 2, 3], &[1, 1, 2]], 1);
    let parts: Vec<String> = balanced_partitions(&spec).map_err(err)?.iter().map(|p| p.to_string()).collect();
    ensure(parts == ["{1,2,3}", "{1,2}{3}", "{1}{2}{3}"], format!("partitions {parts:?}"))?;
    let sym = network_symmetries(&spec).map_err(err)?;
    ensure(sym.len() == 1 && sym[0].is_identity(), "symmetry group is not trivial")?;
    let pairs = dynamical_input_symmetries(&four_map(1)).map_err(err)?;
    let want = (vec![2, 1], vec![2, 1, 3, 4]);
    ensure(pairs.iter().any(|pr| (pr.p.one_based(), pr.q.one_based()) == want), "§11 input symmetry missing")?;
    let mut r = rng(11);
    for _ in 0..20 {
        let cells = r.gen_range(1..=5);
        let nm = r.gen_range(1..=3);
        let mut ms: Vec<FiniteMap> =
            (0..nm).map(|_| FiniteMap::new((0..cells).map(|_| r.gen_range(0..cells)).collect()).unwrap()).collect();
        ms.sort();
        ms.dedup();
        let before = NetworkSpec::new(ms.clone(), 1).map_err(err)?;
        let after = NetworkSpec::closed(ms, 1).map_err(err)?;
        closure_invariance_report(&before, &after).map_err(err)?;
    }
    Ok(())
}

fn three_cell() -> ColoredNetworkSpec {
    let raw = ColoredNetworkSpec::new(vec![2, 1], vec![1, 2], vec![((0, 0), vec![1, 1]), ((0, 1), vec![1]), ((1, 0), vec![0, 0])])
        .unwrap();
    semigroupoid_closure(&raw)
}

fn criterion_12() -> Check {
    let mut r = rng(12);
    for spec in [feed_forward(1), feed_forward(2), four_map(1)] {
        let cs = ColoredNetworkSpec::from_homogeneous(&spec);
        for _ in 0..5 {
            let f = rand_polymap(&mut r, spec.n(), spec.dim(), 1, 0, 2);
            let g = rand_polymap(&mut r, spec.n(), spec.dim(), 1, 0, 2);
            let (cf, cg) = (ColoredPolyFamily::from_polymap(&f), ColoredPolyFamily::from_polymap(&g));
            let b = cs.bracket(&cf, &cg).map_err(err)?;
            ensure(b == ColoredPolyFamily::from_polymap(&sigma_bracket(&spec, &f, &g).map_err(err)?), "bracket")?;
            let c = cs.compose(&cf, &cg).map_err(err)?;
            ensure(c == ColoredPolyFamily::from_polymap(&sigma_compose(&spec, &f, &g).map_err(err)?), "compose")?;
            let lhs = cs.gamma_symbolic(&cf).map_err(err)?;
            let rhs: Vec<Poly> = spec.gamma_symbolic(&f).map_err(err)?.iter().flat_map(|c| c.components().to_vec()).collect();
            ensure(lhs.components() == rhs.as_slice(), "γ")?;
        }
    }
    let spec = three_cell();
    ensure(spec.is_semigroupoid(), "closure is not a semigroupoid")?;
    let total = 2 + 2;
    for t in 0..20 {
        let f = rand_family(&mut r, &spec, 1, 0, 2);
        let g = rand_family(&mut r, &spec, 1, 0, 2);
        let b = spec.bracket(&f, &g).map_err(err)?;
        let jac = jacobian_bracket(&oracle_colored_gamma(&spec, &f), &oracle_colored_gamma(&spec, &g));
        let point = rand_point(&mut r, total + 1);
        let lhs = spec.gamma_eval(&b, &point[..total], &point[total..]).map_err(err)?;
        ensure(lhs == eval_all(&jac, &point), format!("colored bracket at point {t}"))?;
    }
    Ok(())
}

fn criterion_13() -> Check {
    let spec = skew_product(1);
    let mut r = rng(13);
    for _ in 0..3 {
        let mut f = rand_polymap(&mut r, 2, 1, 1, 0, 3);
        f = f.sub(&f.grade(0, 0)).map_err(err)?.sub(&f.grade(-1, 0)).map_err(err)?;
        f = f.add(&scalar(2, 1, x(3, 1))).map_err(err)?;
        let res = normal_form(&spec, &f, 3, 2, &NormalFormOptions::default()).map_err(err)?;
        // X1 = u + X2: variables (u, X2, λ).
        let fbar = res.fbar.component(0);
        let sub = fbar.substitute(&[x(3, 0).add(&x(3, 1)), x(3, 1), x(3, 2)], 3);
        let mut a_part = Poly::zero(3);
        let mut u_part = Poly::zero(3);
        for (m, c) in sub.terms() {
            let e = m.exponents();
            if e[1] == 0 && e[0] >= 1 {
                u_part.add_term(m.clone(), c.clone());
            } else if e[1] == 1 && e[0] == 0 {
                a_part.add_term(m.clone(), c.clone());
            } else {
                return Err(format!("term outside u·F(u;λ) + A(λ)X2: {:?}", e));
            }
        }
        let a0 = a_part.coeff(&Monomial::from_exponents(vec![0, 1, 0]));
        ensure(a0.is_one(), "A(0) ≠ a2")?;
        let b0 = u_part.coeff(&Monomial::from_exponents(vec![1, 0, 0]));
        ensure(b0.is_zero(), "B(0) ≠ 0")?;
        // On x1 = 0 the second cell reads f̄(x2, x1) = x2·F(x2;λ), and the first cell is still.
        let gamma = oracle_gamma_spec(&spec, &res.fbar);
        let on_branch: Vec<Poly> = gamma.iter().map(|g| g.substitute(&[Poly::zero(2), x(2, 0), x(2, 1)], 2)).collect();
        ensure(on_branch[0].is_zero(), "x1 = 0 is not invariant")?;
        let uf = u_part.substitute(&[x(2, 0), Poly::zero(2), x(2, 1)], 2);
        ensure(on_branch[1] == uf, "second cell is not x2·F(x2;λ) on x1 = 0")?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("semigroup closure, table and tilde maps of the feed-forward example", criterion_1),
        ("A-maps of the feed-forward example", criterion_2),
        ("six-term bracket formula and Jacobian oracle", criterion_3),
        ("Jacobi identity and antisymmetry on 50 random triples", criterion_4),
        ("composition and bracket homomorphism on 20 random pairs", criterion_5),
        ("fundamental network conjugacies", criterion_6),
        ("skew product: eigenvalues of ad and normal-form spaces", criterion_7),
        ("feed-forward SN-decomposition", criterion_8),
        ("feed-forward normal-form spaces, residuals and symmetry", criterion_9),
        ("ker γ quadratics and injectivity on linear maps", criterion_10),
        ("balanced partitions, symmetries, input symmetries, closure invariance", criterion_11),
        ("colored embedding and colored bracket", criterion_12),
        ("transcritical branch structure of the skew-product normal form", criterion_13),
    ];
    // Criterion 10 asks for γ to be injective on linear maps for every
    // semigroup. That is false: on the four-map network X1 + X2 − X3 − X4
    // vanishes on both π-images. The failure is expected and reported.
    let known_unattainable = [10];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2}: PASS  {}", i + 1, name),
            Err(e) => {
                failed.push(i + 1);
                println!("criterion {:>2}: FAIL  {} ({})", i + 1, name, e);
            }
        }
    }
    assert!(
        failed.iter().all(|c| known_unattainable.contains(c)),
        "unexpected acceptance failures: {failed:?}"
    );
}
