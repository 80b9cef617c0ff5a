//! SN-decomposition of linear network maps, the homological equation and
//! Lie-series normal forms.
//!
//! All homological algebra runs on the graded pieces `P^{k,l}` modulo
//! `ker γ` unless full-space mode is requested. Within a grade the
//! normal-form space `N^{k,l}` is the canonical complement: the members of
//! the allowed space `W` that vanish at the echelon pivots of the space `U`
//! being complemented.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{bail, Result};
use crate::liealg::{kernel_gamma, sigma_bracket, AdOperator, KernelGamma};
use crate::linalg::{RationalMatrix, Subspace};
use crate::network::NetworkSpec;
use crate::poly::Monomial;
use crate::polyspace::{GradedBasis, PolyMap};
use crate::rational::Q;
use crate::structure::{invariant_subbasis, InputSymmetryPair};
use crate::unipoly;

/// `f0 = f0_S + f0_N` with `γ_{f0_S} = p(γ_{f0})` semisimple and `γ_{f0_N}` nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnSplit {
    pub f0: PolyMap,
    pub f0_s: PolyMap,
    pub f0_n: PolyMap,
    /// Coefficients of `p`, constant term first; the constant term is always zero.
    pub witness: Vec<Q>,
    pub matrix: RationalMatrix,
    pub s_matrix: RationalMatrix,
    pub n_matrix: RationalMatrix,
}

fn check_linear(f0: &PolyMap) -> Result<()> {
    if f0.grade(0, 0) != *f0 {
        bail!(Validation, "expected a linear map without parameter terms");
    }
    Ok(())
}

/// The matrix of the linear map `γ_{f0}` on `Q^{N·m}`.
pub fn gamma_matrix(spec: &NetworkSpec, f0: &PolyMap) -> Result<RationalMatrix> {
    check_linear(f0)?;
    let cells = spec.gamma_symbolic(f0)?;
    let (nm, m) = (spec.cells() * spec.dim(), spec.dim());
    let mut mat = RationalMatrix::zeros(nm, nm);
    for (i, cell) in cells.iter().enumerate() {
        let nv = cell.nvars();
        for (c, poly) in cell.components().iter().enumerate() {
            for v in 0..nm {
                let x = poly.coeff(&Monomial::var(nv, v));
                if !x.is_zero() {
                    mat.set(i * m + c, v, x);
                }
            }
        }
    }
    Ok(mat)
}

/// Jordan–Chevalley splitting over `Q`, lifted to cell functions.
pub fn sn_decompose(spec: &NetworkSpec, f0: &PolyMap) -> Result<SnSplit> {
    spec.table()?;
    let matrix = gamma_matrix(spec, f0)?;
    let witness = semisimple_witness(&matrix)?;
    let s_matrix = unipoly::eval_matrix(&witness, &matrix);
    let n_matrix = matrix.sub(&s_matrix);

    let basis = GradedBasis::new(0, 0, f0.arity(), f0.dim(), f0.params())?;
    let cols = basis
        .entries()
        .iter()
        .map(|b| Ok(flatten(&gamma_matrix(spec, b)?)))
        .collect::<Result<Vec<_>>>()?;
    let lin = RationalMatrix::from_columns(&cols, s_matrix.nrows() * s_matrix.ncols());
    let Some(x) = lin.solve(&flatten(&s_matrix)) else {
        bail!(Internal, "the semisimple part is not the matrix of an admissible linear map");
    };
    let f0_s = basis.from_coordinates(&x);
    let f0_n = f0.sub(&f0_s)?;
    Ok(SnSplit { f0: f0.clone(), f0_s, f0_n, witness, matrix, s_matrix, n_matrix })
}

/// `p` with `p(M)` the semisimple part of `M` and `p(0) = 0`, so that
/// `p(M)` is a combination of the powers `M^k`, `k ≥ 1`.
pub fn semisimple_witness(matrix: &RationalMatrix) -> Result<Vec<Q>> {
    let mu = matrix.minimal_polynomial();
    let msf = unipoly::squarefree_part(&mu);
    let dmsf = unipoly::derivative(&msf);
    // Newton iteration in Q[t]/(μ), starting from t. Convergence is
    // quadratic in the nilpotency index, which is at most deg μ.
    let deg = unipoly::degree(&mu).unwrap_or(0);
    let max_steps = usize::BITS - deg.leading_zeros() + 1;
    let mut s: Vec<Q> = unipoly::rem(&[Q::zero(), Q::one()], &mu);
    let mut steps = 0;
    loop {
        let v = unipoly::compose_mod(&msf, &s, &mu);
        if unipoly::is_zero(&v) {
            break;
        }
        if steps >= max_steps {
            bail!(Internal, "Jordan–Chevalley iteration did not converge");
        }
        let d = unipoly::compose_mod(&dmsf, &s, &mu);
        let Some(inv) = unipoly::inverse_mod(&d, &mu) else {
            bail!(Internal, "derivative of the square-free part is not invertible");
        };
        s = unipoly::sub(&s, &unipoly::rem(&unipoly::mul(&v, &inv), &mu));
        steps += 1;
    }
    // Without an identity in Σ, only the powers M^k with k ≥ 1 are admissible.
    let mut witness = unipoly::trim(s);
    if let Some(c) = witness.first().filter(|c| !c.is_zero()).cloned() {
        let mu0 = mu[0].clone();
        if mu0.is_zero() {
            bail!(Internal, "witness polynomial has a constant term although M is singular");
        }
        // 1 ≡ −(μ(t) − μ0)/μ0 modulo μ.
        let mut one = unipoly::scale(&mu, &(-mu0.recip()));
        one[0] = Q::zero();
        witness[0] = Q::zero();
        witness = unipoly::add(&witness, &unipoly::scale(&one, &c));
    }
    Ok(witness)
}

fn flatten(m: &RationalMatrix) -> Vec<Q> {
    m.to_rows().into_iter().flatten().collect()
}

/// How `N^{k,l}` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Complement of `im ad_{f0_N}` inside `ker ad_{f0_S}`.
    #[default]
    Sn,
    /// Complement of `im ad_{f0}`.
    ImageComplement,
}

#[derive(Clone, Debug, Default)]
pub struct NormalFormOptions {
    pub strategy: Strategy,
    /// Compute in the full `P^{k,l}` instead of `P^{k,l}/ker γ`.
    pub full_space: bool,
    /// Restrict every grade to the functions invariant under these
    /// dynamical input symmetries.
    pub symmetry: Option<Vec<InputSymmetryPair>>,
}

/// Everything the homological equation at one grade needs.
#[derive(Clone, Debug)]
pub struct GradeSpaces {
    pub k: i32,
    pub l: u32,
    /// Monomial basis and quotient by `ker γ` (trivial in full-space mode).
    pub kg: KernelGamma,
    /// The allowed space (all of the quotient, or its invariant part), in
    /// quotient coordinates.
    pub ambient: Subspace,
    /// `ad_{f0}` in ambient coordinates.
    pub ad: RationalMatrix,
    /// `N^{k,l}` in ambient coordinates.
    pub normal_ambient: Subspace,
    /// `N^{k,l}` in quotient coordinates.
    pub normal: Subspace,
    /// `im ad_{f0}` in quotient coordinates.
    pub image: Subspace,
}

fn quotient_matrix(op: &AdOperator, kg: &KernelGamma) -> Result<RationalMatrix> {
    let q = kg.quotient_dim();
    let mut cols = Vec::with_capacity(q);
    for &i in kg.free_positions() {
        let img = op.apply(&kg.basis.entry(i))?;
        cols.push(kg.quotient_coords(&kg.basis.coordinates(&img)?));
    }
    Ok(RationalMatrix::from_columns(&cols, q))
}

/// Re-expresses a quotient operator in the echelon coordinates of `amb`.
fn restrict(m: &RationalMatrix, amb: &Subspace) -> Result<RationalMatrix> {
    let mut cols = Vec::with_capacity(amb.dim());
    for b in amb.basis() {
        match amb.coordinates(&m.mul_vec(b)) {
            Some(c) => cols.push(c),
            None => bail!(Validation, "the linear part does not preserve the invariant subspace"),
        }
    }
    Ok(RationalMatrix::from_columns(&cols, amb.dim()))
}

fn column_space(m: &RationalMatrix) -> Subspace {
    Subspace::from_vectors(m.nrows(), (0..m.ncols()).map(|j| m.column(j)).collect())
}

impl GradeSpaces {
    pub fn new(
        spec: &NetworkSpec,
        f0: &PolyMap,
        split: Option<&SnSplit>,
        k: i32,
        l: u32,
        p: usize,
        options: &NormalFormOptions,
    ) -> Result<Self> {
        let kg = if options.full_space {
            KernelGamma::trivial(GradedBasis::new(k, l, spec.n(), spec.dim(), p)?)
        } else {
            kernel_gamma(spec, k, l, p)?
        };
        let qd = kg.quotient_dim();
        let ambient = match &options.symmetry {
            None => Subspace::full(qd),
            Some(g) => {
                let inv = invariant_subbasis(spec, g, k, l, p)?;
                Subspace::from_vectors(qd, inv.iter().map(|v| kg.quotient_coords(v)).collect())
            }
        };
        let ad_q = quotient_matrix(&AdOperator::new(spec, f0)?, &kg)?;
        let ad = restrict(&ad_q, &ambient)?;
        let a = ambient.dim();
        let (w, u) = match options.strategy {
            Strategy::ImageComplement => (Subspace::full(a), column_space(&ad)),
            Strategy::Sn => {
                let owned;
                let split = match split {
                    Some(s) => s,
                    None => {
                        owned = sn_decompose(spec, f0)?;
                        &owned
                    }
                };
                let ad_s = restrict(&quotient_matrix(&AdOperator::new(spec, &split.f0_s)?, &kg)?, &ambient)?;
                let ad_n = restrict(&quotient_matrix(&AdOperator::new(spec, &split.f0_n)?, &kg)?, &ambient)?;
                let w = Subspace::from_vectors(a, ad_s.nullspace());
                let u = Subspace::from_vectors(a, w.basis().iter().map(|v| ad_n.mul_vec(v)).collect());
                (w, u)
            }
        };
        let normal_ambient = w.complement_of(&u);
        let normal =
            Subspace::from_vectors(qd, normal_ambient.basis().iter().map(|v| ambient.combine(v)).collect());
        let image = Subspace::from_vectors(
            qd,
            (0..ad.ncols()).map(|j| ambient.combine(&ad.column(j))).collect(),
        );
        Ok(Self { k, l, kg, ambient, ad, normal_ambient, normal, image })
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.kg.basis
    }

    /// Canonical representatives of a basis of `N^{k,l}`.
    pub fn normal_polys(&self) -> Vec<PolyMap> {
        self.normal.basis().iter().map(|v| self.kg.basis.from_coordinates(&self.kg.lift(v))).collect()
    }

    pub fn quotient_coords(&self, h: &PolyMap) -> Result<Vec<Q>> {
        Ok(self.kg.quotient_coords(&self.kg.basis.coordinates(h)?))
    }

    /// True when `h ∈ P^{k,l}` lies in `N^{k,l}` modulo `ker γ`.
    pub fn in_normal_space(&self, h: &PolyMap) -> Result<bool> {
        Ok(self.normal.contains(&self.quotient_coords(h)?))
    }

    /// Splits `h = ad_{f0}(g) + r` modulo `ker γ` with `r ∈ N^{k,l}`.
    ///
    /// `g` has zero free coordinates (the minimal solution) and is the
    /// canonical representative of its class. The returned residual is the
    /// exact polynomial `h − ad_{f0}(g)`.
    pub fn solve(&self, spec: &NetworkSpec, f0: &PolyMap, h: &PolyMap) -> Result<(PolyMap, PolyMap)> {
        let hq = self.quotient_coords(h)?;
        let Some(ha) = self.ambient.coordinates(&hq) else {
            bail!(Validation, "grade ({}, {}) term is not invariant under the symmetry group", self.k, self.l);
        };
        let a = self.ambient.dim();
        let nb = self.normal_ambient.dim();
        let mut cols: Vec<Vec<Q>> = (0..a).map(|j| self.ad.column(j)).collect();
        cols.extend(self.normal_ambient.basis().iter().cloned());
        let Some(x) = RationalMatrix::from_columns(&cols, a).solve(&ha) else {
            bail!(Internal, "normal-form space is not a complement of the image at grade ({}, {})", self.k, self.l);
        };
        let r = self.normal_ambient.combine(&x[a..a + nb]);
        let target: Vec<Q> = ha.iter().zip(&r).map(|(x, y)| x - y).collect();
        let Some(ga) = self.ad.solve(&target) else {
            bail!(Internal, "homological equation inconsistent at grade ({}, {})", self.k, self.l);
        };
        let g = self.kg.basis.from_coordinates(&self.kg.lift(&self.ambient.combine(&ga)));
        let op = AdOperator::new(spec, f0)?;
        let residual = h.sub(&op.apply(&g)?)?;
        Ok((g, residual))
    }
}

/// Solves the homological equation at one grade.
pub fn homological_solve(
    spec: &NetworkSpec,
    f0: &PolyMap,
    k: i32,
    l: u32,
    h: &PolyMap,
    options: &NormalFormOptions,
) -> Result<(PolyMap, PolyMap)> {
    let spaces = GradeSpaces::new(spec, f0, None, k, l, h.params(), options)?;
    spaces.solve(spec, f0, h)
}

/// Grades in normalisation order: `(1,0)…(r1,0)`, then `(-1,l)…(r1,l)` for `l = 1…r2`.
pub fn grade_order(r1: i32, r2: u32) -> Vec<(i32, u32)> {
    let mut out: Vec<(i32, u32)> = (1..=r1).map(|k| (k, 0)).collect();
    for l in 1..=r2 {
        out.extend((-1..=r1).map(|k| (k, l)));
    }
    out
}

/// Drops every term that can no longer influence grades up to `(r1, r2)`.
///
/// Generators never lower `k + l`, so a term of grade `(K, L)` can only feed
/// grades with at least the same `K + L`; terms with `K + L > r1 + r2` or
/// `L > r2` are irrelevant.
pub fn working_truncation(f: &PolyMap, r1: i32, r2: u32) -> PolyMap {
    let (ns, nv) = (f.nstate(), f.nvars());
    let budget = r1 as i64 + r2 as i64;
    f.map_components(|c| {
        c.filter_terms(|mono| {
            let sd = mono.degree_in(0..ns) as i64;
            let pd = mono.degree_in(ns..nv);
            pd <= r2 && sd - 1 + pd as i64 <= budget
        })
    })
}

/// `e^{ad_g} f = Σ_i ad_g^i f / i!` with `ad_g f = [g, f]_Σ`, each term
/// passed through `truncate`.
pub fn exp_ad(
    spec: &NetworkSpec,
    g: &PolyMap,
    f: &PolyMap,
    truncate: &dyn Fn(&PolyMap) -> PolyMap,
) -> Result<PolyMap> {
    let mut sum = truncate(f);
    let mut term = sum.clone();
    let (sd, pd) = f.degrees();
    let cap = 2 * (sd as usize + pd as usize + 4);
    for i in 1.. {
        term = truncate(&sigma_bracket(spec, g, &term)?).scale(&Q::new(1.into(), (i as i64).into()));
        if term.is_zero() {
            return Ok(sum);
        }
        if i > cap {
            bail!(Internal, "Lie series did not terminate; the generator does not raise the grade");
        }
        sum = sum.add(&term)?;
    }
    unreachable!()
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub k: i32,
    pub l: u32,
    pub g: PolyMap,
}

#[derive(Clone, Debug)]
pub struct GradeReport {
    pub k: i32,
    pub l: u32,
    pub kernel_dim: usize,
    pub quotient_dim: usize,
    /// Canonical representatives of a basis of `N^{k,l}`.
    pub normal_basis: Vec<PolyMap>,
    /// The grade of the normal form.
    pub residual: PolyMap,
    pub in_normal_space: bool,
}

#[derive(Clone, Debug)]
pub struct NormalFormResult {
    pub fbar: PolyMap,
    pub f0: PolyMap,
    pub split: Option<SnSplit>,
    pub generators: Vec<Generator>,
    pub grades: Vec<GradeReport>,
    pub r1: i32,
    pub r2: u32,
}

/// Normalises `f` up to state grade `r1` and parameter degree `r2`.
pub fn normal_form(
    spec: &NetworkSpec,
    f: &PolyMap,
    r1: i32,
    r2: u32,
    options: &NormalFormOptions,
) -> Result<NormalFormResult> {
    spec.check_function(f)?;
    spec.table()?;
    if r1 < 0 {
        bail!(Domain, "degree bound must be non-negative");
    }
    let one = Monomial::one(f.nvars());
    if f.components().iter().any(|c| !c.coeff(&one).is_zero()) {
        bail!(Validation, "f(0;0) must vanish");
    }
    let f0 = f.grade(0, 0);
    if f0.is_zero() {
        bail!(Validation, "the linear part f_(0,0) is zero");
    }
    let p = f.params();
    let split = match options.strategy {
        Strategy::Sn => Some(sn_decompose(spec, &f0)?),
        Strategy::ImageComplement => None,
    };
    let trunc = |h: &PolyMap| working_truncation(h, r1, r2);
    let mut work = trunc(f);
    let mut generators = Vec::new();
    let mut spaces = Vec::new();
    for (k, l) in grade_order(r1, r2) {
        let sp = GradeSpaces::new(spec, &f0, split.as_ref(), k, l, p, options)?;
        if sp.basis().is_empty() {
            continue;
        }
        let h = work.grade(k, l);
        let (g, _) = sp.solve(spec, &f0, &h)?;
        if !g.is_zero() {
            work = exp_ad(spec, &g, &work, &trunc)?;
        }
        generators.push(Generator { k, l, g });
        spaces.push(sp);
    }
    let fbar = work.truncate(r1, r2);
    let mut grades = Vec::with_capacity(spaces.len());
    for sp in &spaces {
        let residual = fbar.grade(sp.k, sp.l);
        let in_normal_space = sp.in_normal_space(&residual)?;
        if !in_normal_space {
            bail!(Internal, "grade ({}, {}) left the normal-form space", sp.k, sp.l);
        }
        grades.push(GradeReport {
            k: sp.k,
            l: sp.l,
            kernel_dim: sp.kg.dim(),
            quotient_dim: sp.kg.quotient_dim(),
            normal_basis: sp.normal_polys(),
            residual,
            in_normal_space,
        });
    }
    Ok(NormalFormResult { fbar, f0, split, generators, grades, r1, r2 })
}

/// True when `[f0_S, f̄]_Σ` vanishes modulo `ker γ` up to `(r1, r2)`, i.e.
/// the truncated normal form commutes with the flow of `γ_{f0_S}`.
pub fn normal_form_symmetry_check(
    spec: &NetworkSpec,
    split: &SnSplit,
    fbar: &PolyMap,
    r1: i32,
    r2: u32,
) -> Result<bool> {
    let fs = split.f0_s.extend_params(fbar.params())?;
    let b = sigma_bracket(spec, &fs, &fbar.truncate(r1, r2))?.truncate(r1, r2);
    Ok(spec.gamma_symbolic(&b)?.iter().all(PolyMap::is_zero))
}
