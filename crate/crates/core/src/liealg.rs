//! The symbolic operations `f ∘_Σ g` and `[f, g]_Σ`, homological operators
//! on graded pieces, and `ker γ`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{bail, Result};
use crate::linalg::{RationalMatrix, Subspace};
use crate::network::NetworkSpec;
use crate::poly::{Monomial, Poly};
use crate::polyspace::{GradedBasis, PolyMap};
use crate::rational::Q;

fn check_pair(spec: &NetworkSpec, f: &PolyMap, g: &PolyMap) -> Result<()> {
    spec.check_function(f)?;
    spec.check_function(g)?;
    if f.params() != g.params() {
        bail!(Domain, "functions have {} and {} parameters", f.params(), g.params());
    }
    spec.table()?;
    Ok(())
}

/// `g ∘ A_{σ_j}` for every map index `j`.
pub fn compose_with_a_maps(spec: &NetworkSpec, g: &PolyMap) -> Result<Vec<PolyMap>> {
    (0..spec.n()).map(|j| g.compose_linear(&spec.a_map(j)?)).collect()
}

/// `f ∘_Σ g = f ∘ ((g∘A_{σ_1}) × … × (g∘A_{σ_n}))`.
pub fn sigma_compose(spec: &NetworkSpec, f: &PolyMap, g: &PolyMap) -> Result<PolyMap> {
    check_pair(spec, f, g)?;
    let ga = compose_with_a_maps(spec, g)?;
    let nv = f.nvars();
    let mut images: Vec<Poly> = Vec::with_capacity(nv);
    for gj in &ga {
        images.extend(gj.components().iter().cloned());
    }
    images.extend((f.nstate()..nv).map(|v| Poly::var(nv, v)));
    Ok(f.map_components(|c| c.substitute(&images, nv)))
}

/// `Σ_j D_j f · (g ∘ A_{σ_j})`, given the precomputed `g ∘ A_{σ_j}`.
fn directional(f: &PolyMap, ga: &[PolyMap]) -> PolyMap {
    let m = f.dim();
    let comps: Vec<Poly> = f
        .components()
        .iter()
        .map(|fc| {
            let mut acc = Poly::zero(f.nvars());
            for (j, gj) in ga.iter().enumerate() {
                for c in 0..m {
                    let d = fc.partial(f.state_var(j, c));
                    if !d.is_zero() && !gj.component(c).is_zero() {
                        acc.add_assign(&d.mul(gj.component(c)));
                    }
                }
            }
            acc
        })
        .collect();
    PolyMap::from_components(f.arity(), m, f.params(), comps).expect("shape is preserved")
}

/// `[f, g]_Σ = Σ_j D_j f·(g∘A_{σ_j}) − D_j g·(f∘A_{σ_j})`.
pub fn sigma_bracket(spec: &NetworkSpec, f: &PolyMap, g: &PolyMap) -> Result<PolyMap> {
    check_pair(spec, f, g)?;
    let fa = compose_with_a_maps(spec, f)?;
    let ga = compose_with_a_maps(spec, g)?;
    directional(f, &ga).sub(&directional(g, &fa))
}

/// Precomputed `ad^Σ_{f0}` for repeated application.
pub struct AdOperator {
    f0: PolyMap,
    f0a: Vec<PolyMap>,
    a_maps: Vec<crate::network::IndexSelection>,
}

impl AdOperator {
    pub fn new(spec: &NetworkSpec, f0: &PolyMap) -> Result<Self> {
        spec.check_function(f0)?;
        if f0.grade(0, 0) != *f0 {
            bail!(Validation, "the operator needs a linear map without parameter terms");
        }
        let a_maps = (0..spec.n()).map(|j| spec.a_map(j)).collect::<Result<Vec<_>>>()?;
        let f0a = a_maps.iter().map(|a| f0.compose_linear(a)).collect::<Result<Vec<_>>>()?;
        Ok(Self { f0: f0.clone(), f0a, a_maps })
    }

    /// `[f0, b]_Σ`; `b` may carry parameters, which `f0` is lifted to.
    pub fn apply(&self, b: &PolyMap) -> Result<PolyMap> {
        let f0 = self.f0.extend_params(b.params())?;
        let f0a = self
            .f0a
            .iter()
            .map(|x| x.extend_params(b.params()))
            .collect::<Result<Vec<_>>>()?;
        let ba = self.a_maps.iter().map(|a| b.compose_linear(a)).collect::<Result<Vec<_>>>()?;
        directional(&f0, &ba).sub(&directional(b, &f0a))
    }

    /// Matrix of `ad^Σ_{f0}` on `basis`; column `i` holds the coordinates of `[f0, b_i]`.
    pub fn matrix(&self, basis: &GradedBasis) -> Result<RationalMatrix> {
        let cols = basis
            .entries()
            .iter()
            .map(|b| basis.coordinates(&self.apply(b)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalMatrix::from_columns(&cols, basis.len()))
    }
}

/// Matrix of `ad^Σ_{f0}` on `P^{k,l}` in the monomial basis.
pub fn ad_matrix(spec: &NetworkSpec, f0: &PolyMap, k: i32, l: u32, p: usize) -> Result<RationalMatrix> {
    let basis = GradedBasis::new(k, l, spec.n(), spec.dim(), p)?;
    AdOperator::new(spec, f0)?.matrix(&basis)
}

/// `ker γ ∩ P^{k,l}` together with the quotient bookkeeping built on it.
///
/// Quotient coordinates are the basis positions that are not pivots of the
/// echelon kernel basis; a vector is reduced by clearing its pivot entries.
#[derive(Clone, Debug)]
pub struct KernelGamma {
    pub basis: GradedBasis,
    pub kernel: Subspace,
    free: Vec<usize>,
}

impl KernelGamma {
    /// A trivial kernel, for computing in the full space.
    pub fn trivial(basis: GradedBasis) -> Self {
        let kernel = Subspace::zero(basis.len());
        let free = (0..basis.len()).collect();
        Self { basis, kernel, free }
    }

    fn from_kernel(basis: GradedBasis, kernel: Subspace) -> Self {
        let mut is_pivot = alloc::vec![false; basis.len()];
        for &p in kernel.pivots() {
            is_pivot[p] = true;
        }
        let free = (0..basis.len()).filter(|&i| !is_pivot[i]).collect();
        Self { basis, kernel, free }
    }

    pub fn polys(&self) -> Vec<PolyMap> {
        self.kernel.basis().iter().map(|v| self.basis.from_coordinates(v)).collect()
    }

    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    pub fn quotient_dim(&self) -> usize {
        self.free.len()
    }

    /// Basis positions that carry the quotient coordinates.
    pub fn free_positions(&self) -> &[usize] {
        &self.free
    }

    pub fn quotient_coords(&self, v: &[Q]) -> Vec<Q> {
        let r = self.kernel.reduce(v);
        self.free.iter().map(|&i| r[i].clone()).collect()
    }

    /// Canonical representative: zero at every kernel pivot.
    pub fn lift(&self, coords: &[Q]) -> Vec<Q> {
        let mut v = alloc::vec![Q::zero(); self.basis.len()];
        for (c, &i) in coords.iter().zip(&self.free) {
            v[i] = c.clone();
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.kernel.contains(v)
    }
}

/// The subspace of `span(basis)` (in coordinates) on which every map in
/// `constraints(b)` vanishes identically, extended linearly.
pub(crate) fn constraint_kernel(
    basis: &GradedBasis,
    constraints: impl Fn(&PolyMap) -> Result<Vec<PolyMap>>,
) -> Result<Subspace> {
    if basis.is_empty() {
        return Ok(Subspace::zero(0));
    }
    let mut rows: BTreeMap<(usize, usize, Monomial), usize> = BTreeMap::new();
    let mut columns: Vec<Vec<(usize, Q)>> = Vec::with_capacity(basis.len());
    for b in basis.entries() {
        let mut col = Vec::new();
        for (i, g) in constraints(&b)?.iter().enumerate() {
            for (c, poly) in g.components().iter().enumerate() {
                for (mono, coef) in poly.terms() {
                    let next = rows.len();
                    let r = *rows.entry((i, c, mono.clone())).or_insert(next);
                    col.push((r, coef.clone()));
                }
            }
        }
        columns.push(col);
    }
    let mut m = RationalMatrix::zeros(rows.len(), basis.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (r, x) in col {
            m.set(r, j, x);
        }
    }
    Ok(Subspace::from_vectors(basis.len(), m.nullspace()))
}

/// Basis of `ker γ ∩ P^{k,l}` for cell functions with `p` parameters.
pub fn kernel_gamma(spec: &NetworkSpec, k: i32, l: u32, p: usize) -> Result<KernelGamma> {
    let basis = GradedBasis::new(k, l, spec.n(), spec.dim(), p)?;
    let pis = (0..spec.cells()).map(|i| spec.pi(i)).collect::<Result<Vec<_>>>()?;
    let kernel = constraint_kernel(&basis, |b| pis.iter().map(|pi| b.compose_linear(pi)).collect())?;
    Ok(KernelGamma::from_kernel(basis, kernel))
}

/// True when every coefficient of `v` vanishes.
pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}
