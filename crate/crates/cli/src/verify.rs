//! `verify`: the algebraic identities the library relies on, checked on the
//! network of a document with random exact data.

use ccnet_core::colored::{ColoredNetworkSpec, ColoredPolyFamily};
use ccnet_core::liealg::{kernel_gamma, sigma_bracket, sigma_compose};
use ccnet_core::network::fundamental_network;
use ccnet_core::normalform::{gamma_matrix, sn_decompose};
use ccnet_core::structure::closure_invariance_report;
use ccnet_core::vfield::VectorField;
use ccnet_core::{unipoly, Error, Monomial, NetworkSpec, Poly, PolyMap, Q};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::commands::Report;
use crate::document::{Document, Network};
use crate::error::CliResult;

enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

struct Suite {
    checks: Vec<(&'static str, Outcome)>,
}

impl Suite {
    fn record(&mut self, name: &'static str, r: Result<Option<String>, Error>) {
        let outcome = match r {
            Ok(None) => Outcome::Pass,
            Ok(Some(why)) => Outcome::Fail(why),
            Err(Error::Guard(why)) => Outcome::Skipped(why),
            Err(e) => Outcome::Fail(e.to_string()),
        };
        self.checks.push((name, outcome));
    }
}

fn rand_q(r: &mut ChaCha8Rng) -> Q {
    Q::new(r.gen_range(-5i64..=5).into(), r.gen_range(1i64..=3).into())
}

/// Random polynomial of state degree ≤ 2 and parameter degree ≤ 1.
fn rand_poly(r: &mut ChaCha8Rng, nstate: usize, params: usize) -> Poly {
    let mut p = Poly::zero(nstate + params);
    for _ in 0..4 {
        let mut e = vec![0u32; nstate + params];
        for _ in 0..r.gen_range(0..=2) {
            e[r.gen_range(0..nstate)] += 1;
        }
        if params > 0 && r.gen_bool(0.3) {
            e[nstate + r.gen_range(0..params)] += 1;
        }
        p.add_term(Monomial::from_exponents(e), rand_q(r));
    }
    p
}

fn rand_polymap(r: &mut ChaCha8Rng, spec: &NetworkSpec, params: usize) -> PolyMap {
    let (n, m) = (spec.n(), spec.dim());
    let comps = (0..m).map(|_| rand_poly(r, n * m, params)).collect();
    PolyMap::from_components(n, m, params, comps).expect("shape")
}

fn rand_linear(r: &mut ChaCha8Rng, spec: &NetworkSpec) -> PolyMap {
    let (n, m) = (spec.n(), spec.dim());
    let nv = n * m;
    let comps = (0..m)
        .map(|_| {
            let mut p = Poly::zero(nv);
            for v in 0..nv {
                if r.gen_bool(0.6) {
                    p.add_term(Monomial::var(nv, v), rand_q(r));
                }
            }
            p
        })
        .collect();
    PolyMap::from_components(n, m, 0, comps).expect("shape")
}

fn gamma(spec: &NetworkSpec, f: &PolyMap) -> Result<VectorField, Error> {
    VectorField::from_cells(&spec.gamma_symbolic(f)?)
}

fn fail_if(cond: bool, why: impl FnOnce() -> String) -> Option<String> {
    cond.then(why)
}

pub fn verify(doc: &Document, seed: u64, samples: usize) -> CliResult<(Report, bool)> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite { checks: Vec::new() };
    let mut observations = serde_json::Map::new();
    match &doc.network {
        Network::Homogeneous { original, closed, .. } => {
            homogeneous_checks(&mut suite, &mut r, original, closed, doc.params, samples);
            let k0 = kernel_gamma(closed, 0, 0, 0)?;
            observations.insert("linear_kernel_gamma_dim".into(), json!(k0.dim()));
        }
        Network::Colored { closed, .. } => colored_checks(&mut suite, &mut r, closed, doc.params, samples),
    }
    let passed = suite.checks.iter().all(|(_, o)| !matches!(o, Outcome::Fail(_)));
    let checks: Vec<Value> = suite
        .checks
        .iter()
        .map(|(name, o)| match o {
            Outcome::Pass => json!({"name": name, "status": "pass"}),
            Outcome::Fail(d) => json!({"name": name, "status": "fail", "detail": d}),
            Outcome::Skipped(d) => json!({"name": name, "status": "skipped", "detail": d}),
        })
        .collect();
    let mut text = String::new();
    for (name, o) in &suite.checks {
        match o {
            Outcome::Pass => text += &format!("PASS {name}\n"),
            Outcome::Fail(d) => text += &format!("FAIL {name}: {d}\n"),
            Outcome::Skipped(d) => text += &format!("SKIP {name}: {d}\n"),
        }
    }
    for (k, v) in &observations {
        text += &format!("note {k} = {v}\n");
    }
    let json = json!({
        "command": "verify",
        "seed": seed,
        "samples": samples,
        "checks": checks,
        "observations": observations,
        "passed": passed,
    });
    Ok((Report { json, text }, passed))
}

fn homogeneous_checks(suite: &mut Suite, r: &mut ChaCha8Rng, original: &NetworkSpec, closed: &NetworkSpec, p: usize, samples: usize) {
    suite.record("semigroup_table", (|| {
        let t = closed.table()?;
        let n = t.len();
        for a in 0..n {
            for b in 0..n {
                if t.tilde_map(t.product(a, b)) != t.tilde_map(a).compose(&t.tilde_map(b))? {
                    return Ok(Some(format!("tilde is not a homomorphism at ({}, {})", a + 1, b + 1)));
                }
                for c in 0..n {
                    if t.product(t.product(a, b), c) != t.product(a, t.product(b, c)) {
                        return Ok(Some(format!("not associative at ({}, {}, {})", a + 1, b + 1, c + 1)));
                    }
                }
            }
        }
        Ok(None)
    })());
    suite.record("a_map_representation", (|| {
        let t = closed.table()?;
        for j in 0..closed.n() {
            let a = closed.a_map(j)?;
            for i in 0..closed.cells() {
                if closed.pi(i)?.then(&a)? != closed.pi(closed.maps()[j].apply(i))? {
                    return Ok(Some(format!("A_σ{}∘π{} ≠ π_σ{}({})", j + 1, i + 1, j + 1, i + 1)));
                }
            }
            for b in 0..closed.n() {
                if closed.a_map(b)?.then(&a)? != closed.a_map(t.product(j, b))? {
                    return Ok(Some(format!("A_σ{}∘A_σ{} ≠ A of the product", j + 1, b + 1)));
                }
            }
        }
        Ok(None)
    })());
    let pairs: Vec<(PolyMap, PolyMap, PolyMap)> =
        (0..samples).map(|_| (rand_polymap(r, closed, p), rand_polymap(r, closed, p), rand_polymap(r, closed, p))).collect();
    suite.record("gamma_homomorphism", (|| {
        for (k, (f, g, _)) in pairs.iter().enumerate() {
            let (gf, gg) = (gamma(closed, f)?, gamma(closed, g)?);
            if gamma(closed, &sigma_compose(closed, f, g)?)? != gf.compose(&gg)? {
                return Ok(Some(format!("composition, sample {}", k + 1)));
            }
            if gamma(closed, &sigma_bracket(closed, f, g)?)? != gf.bracket(&gg)? {
                return Ok(Some(format!("bracket, sample {}", k + 1)));
            }
        }
        Ok(None)
    })());
    suite.record("antisymmetry_and_jacobi", (|| {
        for (k, (f, g, h)) in pairs.iter().enumerate() {
            let br = |a: &PolyMap, b: &PolyMap| sigma_bracket(closed, a, b);
            if br(f, g)? != br(g, f)?.neg() {
                return Ok(Some(format!("antisymmetry, sample {}", k + 1)));
            }
            let sum = br(f, &br(g, h)?)?.add(&br(g, &br(h, f)?)?)?.add(&br(h, &br(f, g)?)?)?;
            if !gamma(closed, &sum)?.is_zero() {
                return Ok(Some(format!("Jacobi identity, sample {}", k + 1)));
            }
        }
        Ok(None)
    })());
    suite.record("fundamental_conjugacy", (|| {
        let fun = fundamental_network(closed)?;
        if !fun.faithful {
            return Err(Error::Guard("the fundamental network is not faithful".into()));
        }
        let m = closed.dim();
        for (k, (f, _, _)) in pairs.iter().enumerate() {
            let big = fun.spec.gamma_symbolic(f)?;
            let small = closed.gamma_symbolic(f)?;
            let nv = closed.cells() * m + p;
            for i in 0..closed.cells() {
                // x ↦ π_i x: slot j of the fundamental state reads cell σ_j(i).
                let mut images = Vec::new();
                for s in closed.maps() {
                    images.extend((0..m).map(|c| Poly::var(nv, s.apply(i) * m + c)));
                }
                images.extend((0..p).map(|t| Poly::var(nv, closed.cells() * m + t)));
                for (j, s) in closed.maps().iter().enumerate() {
                    for c in 0..m {
                        let lhs = big[j].component(c).substitute(&images, nv);
                        if lhs != *small[s.apply(i)].component(c) {
                            return Ok(Some(format!("Γ_f∘π{} ≠ π{}∘γ_f, sample {}", i + 1, i + 1, k + 1)));
                        }
                    }
                }
            }
        }
        Ok(None)
    })());
    suite.record("closure_invariance", closure_invariance_report(original, closed).map(|_| None));
    suite.record("sn_decomposition", (|| {
        for k in 0..samples {
            let f0 = rand_linear(r, closed);
            if f0.is_zero() {
                continue;
            }
            let s = sn_decompose(closed, &f0)?;
            let mu = s.s_matrix.minimal_polynomial();
            let ok = s.s_matrix.add(&s.n_matrix) == s.matrix
                && gamma_matrix(closed, &s.f0_s)? == s.s_matrix
                && s.n_matrix.is_nilpotent()
                && s.s_matrix.commutes_with(&s.n_matrix)
                && unipoly::degree(&unipoly::gcd(&mu, &unipoly::derivative(&mu))) == Some(0);
            if !ok {
                return Ok(Some(format!("sample {}", k + 1)));
            }
        }
        Ok(None)
    })());
}

fn rand_family(r: &mut ChaCha8Rng, spec: &ColoredNetworkSpec, p: usize) -> ColoredPolyFamily {
    let funcs = (0..spec.colors())
        .map(|c| {
            let nstate = spec.profile_layout(c).total();
            (0..spec.dims()[c]).map(|_| rand_poly(r, nstate, p)).collect()
        })
        .collect();
    ColoredPolyFamily { params: p, funcs }
}

fn colored_checks(suite: &mut Suite, r: &mut ChaCha8Rng, spec: &ColoredNetworkSpec, p: usize, samples: usize) {
    let k = spec.colors();
    suite.record("semigroupoid", Ok(fail_if(!spec.is_semigroupoid(), || "closure is not composition closed".into())));
    suite.record("a_map_intertwining", (|| {
        for d in 0..k {
            for c in 0..k {
                for j in 0..spec.count(d, c) {
                    let a = spec.a_map(d, c, j)?;
                    let s = spec.map(d, c, j);
                    for i in 0..spec.cell_counts()[c] {
                        if spec.pi(c, i)?.then(&a)? != spec.pi(d, s.images[i])? {
                            return Ok(Some(format!("map {} of type ({},{}) at cell {}", j + 1, d + 1, c + 1, i + 1)));
                        }
                    }
                }
            }
        }
        Ok(None)
    })());
    let triples: Vec<_> = (0..samples).map(|_| (rand_family(r, spec, p), rand_family(r, spec, p), rand_family(r, spec, p))).collect();
    suite.record("gamma_homomorphism", (|| {
        for (n, (f, g, _)) in triples.iter().enumerate() {
            let (gf, gg) = (spec.gamma_symbolic(f)?, spec.gamma_symbolic(g)?);
            if spec.gamma_symbolic(&spec.compose(f, g)?)? != gf.compose(&gg)? {
                return Ok(Some(format!("composition, sample {}", n + 1)));
            }
            if spec.gamma_symbolic(&spec.bracket(f, g)?)? != gf.bracket(&gg)? {
                return Ok(Some(format!("bracket, sample {}", n + 1)));
            }
        }
        Ok(None)
    })());
    suite.record("jacobi", (|| {
        for (n, (f, g, h)) in triples.iter().enumerate() {
            let br = |a: &ColoredPolyFamily, b: &ColoredPolyFamily| spec.bracket(a, b);
            let sum = br(f, &br(g, h)?)?.add(&br(g, &br(h, f)?)?).add(&br(h, &br(f, g)?)?);
            if !spec.gamma_symbolic(&sum)?.is_zero() {
                return Ok(Some(format!("sample {}", n + 1)));
            }
        }
        Ok(None)
    })());
}
