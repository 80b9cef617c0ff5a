//! Oracles shared by the integration tests. Everything here is computed
//! straight from the definitions, without going through the A-maps or the
//! index selections of the library.

#![allow(dead_code)]

use ccnet_core::colored::{ColoredNetworkSpec, ColoredPolyFamily};
use ccnet_core::rational::{q, qf};
use ccnet_core::{FiniteMap, Monomial, NetworkSpec, Poly, PolyMap, Q};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_q(rng: &mut ChaCha8Rng) -> Q {
    let n: i64 = rng.gen_range(-6..=6);
    let d: i64 = rng.gen_range(1..=3);
    qf(n, d)
}

pub fn rand_nonzero_q(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let x = rand_q(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn rand_point(rng: &mut ChaCha8Rng, len: usize) -> Vec<Q> {
    (0..len).map(|_| rand_q(rng)).collect()
}

/// A random polynomial in `nstate + params` variables with state degree in
/// `lo..=hi` and parameter degree at most `pmax`.
pub fn rand_poly(rng: &mut ChaCha8Rng, nstate: usize, params: usize, lo: u32, hi: u32, pmax: u32, terms: usize) -> Poly {
    let nv = nstate + params;
    let mut p = Poly::zero(nv);
    for _ in 0..terms {
        let mut e = vec![0u32; nv];
        let d = rng.gen_range(lo..=hi);
        for _ in 0..d {
            e[rng.gen_range(0..nstate)] += 1;
        }
        if params > 0 {
            let pd = rng.gen_range(0..=pmax);
            for _ in 0..pd {
                e[nstate + rng.gen_range(0..params)] += 1;
            }
        }
        p.add_term(Monomial::from_exponents(e), rand_q(rng));
    }
    p
}

pub fn rand_polymap(rng: &mut ChaCha8Rng, n: usize, m: usize, p: usize, lo: u32, hi: u32) -> PolyMap {
    let comps = (0..m).map(|_| rand_poly(rng, n * m, p, lo, hi, 1, 5)).collect();
    PolyMap::from_components(n, m, p, comps).unwrap()
}

/// Every monomial of state degree exactly `d` in `nv` variables.
pub fn monomials(nv: usize, d: u32) -> Vec<Vec<u32>> {
    if nv == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(nv - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A quadratic with every monomial present and a random nonzero coefficient.
pub fn generic_quadratic(rng: &mut ChaCha8Rng, n: usize) -> PolyMap {
    let mut p = Poly::zero(n);
    for d in 1..=2 {
        for e in monomials(n, d) {
            p.add_term(Monomial::from_exponents(e), rand_nonzero_q(rng));
        }
    }
    PolyMap::scalar(n, 0, p).unwrap()
}

pub fn maps(one_based: &[&[usize]]) -> Vec<FiniteMap> {
    one_based.iter().map(|m| FiniteMap::from_one_based(m).unwrap()).collect()
}

pub fn closed_spec(one_based: &[&[usize]], dim: usize) -> NetworkSpec {
    NetworkSpec::closed(maps(one_based), dim).unwrap()
}

/// Example network: `σ_1 = id`, `σ_2 = (1,1,2)`, closed by `σ_3 = (1,1,1)`.
pub fn feed_forward(dim: usize) -> NetworkSpec {
    closed_spec(&[&[1, 2, 3], &[1, 1, 2]], dim)
}

pub fn skew_product(dim: usize) -> NetworkSpec {
    closed_spec(&[&[1, 2], &[1, 1]], dim)
}

/// The full transformation monoid on two cells.
pub fn four_map(dim: usize) -> NetworkSpec {
    closed_spec(&[&[1, 1], &[2, 2], &[2, 1], &[1, 2]], dim)
}

/// `(γ_f)_i = f(x_{σ_1(i)}, …, x_{σ_n(i)})`, one polynomial per state
/// component, in the variables `x_{i,c}` followed by the parameters.
pub fn oracle_gamma(maps: &[Vec<usize>], cells: usize, f: &PolyMap) -> Vec<Poly> {
    let (n, m, p) = (f.arity(), f.dim(), f.params());
    assert_eq!(maps.len(), n);
    let nv = cells * m + p;
    let mut out = Vec::new();
    for i in 0..cells {
        let mut images = Vec::new();
        for s in maps {
            for c in 0..m {
                images.push(Poly::var(nv, s[i] * m + c));
            }
        }
        for t in 0..p {
            images.push(Poly::var(nv, cells * m + t));
        }
        for comp in f.components() {
            out.push(comp.substitute(&images, nv));
        }
    }
    out
}

pub fn oracle_gamma_spec(spec: &NetworkSpec, f: &PolyMap) -> Vec<Poly> {
    let ms: Vec<Vec<usize>> = spec.maps().iter().map(|s| s.images().to_vec()).collect();
    oracle_gamma(&ms, spec.cells(), f)
}

/// `DF·G − DG·F` for vector fields given by their components; variables
/// beyond `fields.len()` are parameters.
pub fn jacobian_bracket(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let along = |a: &[Poly], b: &[Poly]| -> Vec<Poly> {
        a.iter()
            .map(|ai| {
                let mut acc = Poly::zero(ai.nvars());
                for (v, bv) in b.iter().enumerate() {
                    acc = acc.add(&ai.partial(v).mul(bv));
                }
                acc
            })
            .collect()
    };
    along(f, g).iter().zip(along(g, f)).map(|(x, y)| x.sub(&y)).collect()
}

/// `F(G(x))`, parameters untouched.
pub fn compose_fields(f: &[Poly], g: &[Poly]) -> Vec<Poly> {
    let nv = g[0].nvars();
    let mut images: Vec<Poly> = g.to_vec();
    for v in g.len()..nv {
        images.push(Poly::var(nv, v));
    }
    f.iter().map(|fi| fi.substitute(&images, nv)).collect()
}

pub fn eval_all(fs: &[Poly], point: &[Q]) -> Vec<Q> {
    fs.iter().map(|f| f.evaluate(point)).collect()
}

/// A random family for a colored spec: color `c` reads its profile blocks.
pub fn rand_family(rng: &mut ChaCha8Rng, spec: &ColoredNetworkSpec, params: usize, lo: u32, hi: u32) -> ColoredPolyFamily {
    let funcs = (0..spec.colors())
        .map(|c| {
            let nstate = spec.profile_layout(c).total();
            (0..spec.dims()[c]).map(|_| rand_poly(rng, nstate, params, lo, hi, 1, 5)).collect()
        })
        .collect();
    ColoredPolyFamily { params, funcs }
}

/// Colored admissible map straight from the definition: cell `i` of color
/// `c` reads, for each type `(d, c)` and each map of that type, the cell
/// `σ(i)` of color `d`.
pub fn oracle_colored_gamma(spec: &ColoredNetworkSpec, f: &ColoredPolyFamily) -> Vec<Poly> {
    let colors = spec.colors();
    let mut offsets = Vec::new();
    let mut total = 0;
    for c in 0..colors {
        let mut row = Vec::new();
        for _ in 0..spec.cell_counts()[c] {
            row.push(total);
            total += spec.dims()[c];
        }
        offsets.push(row);
    }
    let nv = total + f.params;
    let mut out = Vec::new();
    for c in 0..colors {
        for i in 0..spec.cell_counts()[c] {
            let mut images = Vec::new();
            for d in 0..colors {
                for s in spec.maps_of_type(d, c) {
                    let base = offsets[d][s[i]];
                    for r in 0..spec.dims()[d] {
                        images.push(Poly::var(nv, base + r));
                    }
                }
            }
            for t in 0..f.params {
                images.push(Poly::var(nv, total + t));
            }
            for comp in &f.funcs[c] {
                out.push(comp.substitute(&images, nv));
            }
        }
    }
    out
}

pub fn x(n: usize, i: usize) -> Poly {
    Poly::var(n, i)
}

pub fn c(n: usize, v: i64) -> Poly {
    Poly::constant(n, q(v))
}
