//! Colored networks: typed maps `σ_j^{(d,c)}` from color-`c` cells to
//! color-`d` cells, their semigroupoid closure, and the colored composition
//! and bracket.
//!
//! The cell function of color `c` reads, for every color `d` in order, one
//! block of dimension `m_d` per map of type `(d, c)`. Its variables are laid
//! out block after block, parameters last. The global state lists the cells
//! color by color.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{bail, Result};
use crate::finmap::close_by_rounds;
use crate::linalg::RationalMatrix;
use crate::network::{IndexSelection, NetworkSpec};
use crate::poly::{Monomial, Poly};
use crate::polyspace::PolyMap;
use crate::rational::Q;
use crate::normalform::semisimple_witness;
use crate::unipoly;
use crate::vfield::VectorField;

/// A map from the cells of color `source` to the cells of color `target`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct TypedMap {
    pub target: usize,
    pub source: usize,
    pub images: Vec<usize>,
}

impl TypedMap {
    /// `self ∘ other`, when the types fit.
    pub fn compose(&self, other: &Self) -> Option<Self> {
        (self.source == other.target).then(|| Self {
            target: self.target,
            source: other.source,
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }
}

/// Block dimensions and offsets of a variable layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockLayout {
    dims: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl BlockLayout {
    pub fn new(dims: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for d in &dims {
            offsets.push(total);
            total += d;
        }
        Self { dims, offsets, total }
    }

    pub fn blocks(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, b: usize) -> usize {
        self.dims[b]
    }

    pub fn offset(&self, b: usize) -> usize {
        self.offsets[b]
    }

    pub fn total(&self) -> usize {
        self.total
    }
}

/// Renames the variables of `poly`, laid out by `target` (plus `params`),
/// into the layout `source`: block `b` reads source block `sel[b]`.
fn compose_blocks(poly: &Poly, target: &BlockLayout, source: &BlockLayout, sel: &IndexSelection, params: usize) -> Poly {
    let nv2 = source.total() + params;
    let mut map = Vec::with_capacity(target.total() + params);
    for b in 0..target.blocks() {
        let s = sel.selector()[b];
        debug_assert_eq!(target.dim(b), source.dim(s));
        for r in 0..target.dim(b) {
            map.push(source.offset(s) + r);
        }
    }
    map.extend((0..params).map(|t| source.total() + t));
    poly.rename(&map, nv2)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredNetworkSpec {
    cell_counts: Vec<usize>,
    dims: Vec<usize>,
    /// `maps[d][c]` lists the maps of type `(d, c)`.
    maps: Vec<Vec<Vec<Vec<usize>>>>,
    original_counts: Vec<Vec<usize>>,
}

impl ColoredNetworkSpec {
    /// `maps` lists `((d, c), images)` with 0-based colors and cells.
    pub fn new(cell_counts: Vec<usize>, dims: Vec<usize>, maps: Vec<((usize, usize), Vec<usize>)>) -> Result<Self> {
        let colors = cell_counts.len();
        if colors == 0 || dims.len() != colors {
            bail!(Domain, "need one cell count and one dimension per color");
        }
        if cell_counts.contains(&0) || dims.contains(&0) {
            bail!(Domain, "cell counts and dimensions must be positive");
        }
        let mut typed = alloc::vec![alloc::vec![Vec::new(); colors]; colors];
        for ((d, c), images) in maps {
            if d >= colors || c >= colors {
                bail!(Domain, "color out of range in map type ({}, {})", d + 1, c + 1);
            }
            if images.len() != cell_counts[c] {
                bail!(Domain, "map of type ({},{}) must list {} images", d + 1, c + 1, cell_counts[c]);
            }
            if let Some(&bad) = images.iter().find(|&&i| i >= cell_counts[d]) {
                bail!(Domain, "image {} out of range for color {} with {} cells", bad + 1, d + 1, cell_counts[d]);
            }
            let list: &mut Vec<Vec<usize>> = &mut typed[d][c];
            if list.contains(&images) {
                bail!(Validation, "duplicate map of type ({},{})", d + 1, c + 1);
            }
            list.push(images);
        }
        let original_counts = typed.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
        Ok(Self { cell_counts, dims, maps: typed, original_counts })
    }

    /// A homogeneous network as a one-color network.
    pub fn from_homogeneous(spec: &NetworkSpec) -> Self {
        let maps = alloc::vec![alloc::vec![spec.maps().iter().map(|m| m.images().to_vec()).collect()]];
        Self {
            cell_counts: alloc::vec![spec.cells()],
            dims: alloc::vec![spec.dim()],
            maps,
            original_counts: alloc::vec![alloc::vec![spec.original_n()]],
        }
    }

    pub fn colors(&self) -> usize {
        self.cell_counts.len()
    }

    pub fn cell_counts(&self) -> &[usize] {
        &self.cell_counts
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of maps of type `(d, c)`.
    pub fn count(&self, d: usize, c: usize) -> usize {
        self.maps[d][c].len()
    }

    pub fn original_count(&self, d: usize, c: usize) -> usize {
        self.original_counts[d][c]
    }

    pub fn map(&self, d: usize, c: usize, j: usize) -> TypedMap {
        TypedMap { target: d, source: c, images: self.maps[d][c][j].clone() }
    }

    pub fn maps_of_type(&self, d: usize, c: usize) -> &[Vec<usize>] {
        &self.maps[d][c]
    }

    fn all_maps(&self) -> Vec<TypedMap> {
        let mut out = Vec::new();
        for d in 0..self.colors() {
            for c in 0..self.colors() {
                for j in 0..self.count(d, c) {
                    out.push(self.map(d, c, j));
                }
            }
        }
        out
    }

    fn index_of(&self, m: &TypedMap) -> Option<usize> {
        self.maps[m.target][m.source].iter().position(|x| *x == m.images)
    }

    /// Every composable product of listed maps is listed.
    pub fn is_semigroupoid(&self) -> bool {
        let all = self.all_maps();
        all.iter().all(|a| all.iter().all(|b| a.compose(b).is_none_or(|p| self.index_of(&p).is_some())))
    }

    fn require_semigroupoid(&self) -> Result<()> {
        if !self.is_semigroupoid() {
            bail!(State, "the typed maps do not form a semigroupoid; close them first");
        }
        Ok(())
    }

    /// Blocks read by a color-`c` cell: `(d, j)` for every map of type `(d, c)`.
    pub fn profile(&self, c: usize) -> Vec<(usize, usize)> {
        (0..self.colors()).flat_map(|d| (0..self.count(d, c)).map(move |j| (d, j))).collect()
    }

    pub fn profile_layout(&self, c: usize) -> BlockLayout {
        BlockLayout::new(self.profile(c).iter().map(|&(d, _)| self.dims[d]).collect())
    }

    fn profile_slot(&self, c: usize, d: usize, j: usize) -> usize {
        (0..d).map(|e| self.count(e, c)).sum::<usize>() + j
    }

    /// Cells color by color, one block per cell.
    pub fn state_layout(&self) -> BlockLayout {
        BlockLayout::new(
            (0..self.colors()).flat_map(|c| core::iter::repeat_n(self.dims[c], self.cell_counts[c])).collect(),
        )
    }

    pub fn global_cell(&self, c: usize, i: usize) -> usize {
        self.cell_counts[..c].iter().sum::<usize>() + i
    }

    /// `π_i^{(c)}`: slot `(d, j)` reads cell `σ_j^{(d,c)}(i)` of color `d`.
    pub fn pi(&self, c: usize, i: usize) -> Result<IndexSelection> {
        if c >= self.colors() || i >= self.cell_counts[c] {
            bail!(Domain, "cell {} of color {} does not exist", i + 1, c + 1);
        }
        let sel = self
            .profile(c)
            .iter()
            .map(|&(d, j)| self.global_cell(d, self.maps[d][c][j][i]))
            .collect();
        IndexSelection::new(self.state_layout().blocks(), sel)
    }

    /// `A_{σ_j^{(d,c)}}`, from the color-`c` profile to the color-`d` profile:
    /// slot `(e, k)` reads slot `(e, k')` with `σ_{k'}^{(e,c)} = σ_k^{(e,d)} ∘ σ_j^{(d,c)}`.
    pub fn a_map(&self, d: usize, c: usize, j: usize) -> Result<IndexSelection> {
        self.require_semigroupoid()?;
        if d >= self.colors() || c >= self.colors() || j >= self.count(d, c) {
            bail!(Domain, "no map {} of type ({},{})", j + 1, d + 1, c + 1);
        }
        let sj = self.map(d, c, j);
        let mut sel = Vec::new();
        for (e, k) in self.profile(d) {
            let prod = self.map(e, d, k).compose(&sj).expect("types fit");
            let kp = self.index_of(&prod).expect("semigroupoid is closed");
            sel.push(self.profile_slot(c, e, kp));
        }
        IndexSelection::new(self.profile(c).len(), sel)
    }

    /// Checks a family against the profiles.
    pub fn check_family(&self, f: &ColoredPolyFamily) -> Result<()> {
        if f.funcs.len() != self.colors() {
            bail!(Domain, "family has {} colors, the network {}", f.funcs.len(), self.colors());
        }
        for c in 0..self.colors() {
            let nv = self.profile_layout(c).total() + f.params;
            if f.funcs[c].len() != self.dims[c] || f.funcs[c].iter().any(|p| p.nvars() != nv) {
                bail!(Domain, "color {} function does not match its input profile", c + 1);
            }
        }
        Ok(())
    }

    /// `γ_f` as one vector field on the global state.
    pub fn gamma_symbolic(&self, f: &ColoredPolyFamily) -> Result<VectorField> {
        self.check_family(f)?;
        let state = self.state_layout();
        let mut comps = Vec::with_capacity(state.total());
        for c in 0..self.colors() {
            let layout = self.profile_layout(c);
            for i in 0..self.cell_counts[c] {
                let pi = self.pi(c, i)?;
                for poly in &f.funcs[c] {
                    comps.push(compose_blocks(poly, &layout, &state, &pi, f.params));
                }
            }
        }
        VectorField::new(state.total(), f.params, comps)
    }

    pub fn gamma_eval(&self, f: &ColoredPolyFamily, x: &[Q], lambda: &[Q]) -> Result<Vec<Q>> {
        self.gamma_symbolic(f)?.evaluate(x, lambda)
    }

    /// `g^{(d)} ∘ A_{σ_j^{(d,c)}}` for every slot `(d, j)` of color `c`.
    fn compose_with_a_maps(&self, g: &ColoredPolyFamily, c: usize) -> Result<Vec<Vec<Poly>>> {
        let lc = self.profile_layout(c);
        self.profile(c)
            .iter()
            .map(|&(d, j)| {
                let a = self.a_map(d, c, j)?;
                let ld = self.profile_layout(d);
                Ok(g.funcs[d].iter().map(|p| compose_blocks(p, &ld, &lc, &a, g.params)).collect())
            })
            .collect()
    }

    fn check_pair(&self, f: &ColoredPolyFamily, g: &ColoredPolyFamily) -> Result<()> {
        self.check_family(f)?;
        self.check_family(g)?;
        if f.params != g.params {
            bail!(Domain, "families have different parameter counts");
        }
        self.require_semigroupoid()
    }

    /// `(f ∘_Σ g)^{(c)} = f^{(c)}` with slot `(d, j)` replaced by `g^{(d)} ∘ A_{σ_j^{(d,c)}}`.
    pub fn compose(&self, f: &ColoredPolyFamily, g: &ColoredPolyFamily) -> Result<ColoredPolyFamily> {
        self.check_pair(f, g)?;
        let mut funcs = Vec::with_capacity(self.colors());
        for c in 0..self.colors() {
            let ga = self.compose_with_a_maps(g, c)?;
            let nv = self.profile_layout(c).total() + f.params;
            let mut images: Vec<Poly> = ga.into_iter().flatten().collect();
            images.extend((images.len()..nv).map(|v| Poly::var(nv, v)));
            funcs.push(f.funcs[c].iter().map(|p| p.substitute(&images, nv)).collect());
        }
        Ok(ColoredPolyFamily { params: f.params, funcs })
    }

    fn directional(&self, f: &ColoredPolyFamily, ga: &[Vec<Vec<Poly>>]) -> Vec<Vec<Poly>> {
        (0..self.colors())
            .map(|c| {
                let nv = self.profile_layout(c).total() + f.params;
                f.funcs[c]
                    .iter()
                    .map(|fc| {
                        let mut acc = Poly::zero(nv);
                        let mut v = 0;
                        for block in &ga[c] {
                            for comp in block {
                                let d = fc.partial(v);
                                if !d.is_zero() && !comp.is_zero() {
                                    acc.add_assign(&d.mul(comp));
                                }
                                v += 1;
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }

    /// `[f, g]^{(c)} = Σ_{d,j} D_{X_j^{(d)}} f^{(c)}·(g^{(d)}∘A_{σ_j^{(d,c)}}) − (f ↔ g)`.
    pub fn bracket(&self, f: &ColoredPolyFamily, g: &ColoredPolyFamily) -> Result<ColoredPolyFamily> {
        self.check_pair(f, g)?;
        let fa = (0..self.colors()).map(|c| self.compose_with_a_maps(f, c)).collect::<Result<Vec<_>>>()?;
        let ga = (0..self.colors()).map(|c| self.compose_with_a_maps(g, c)).collect::<Result<Vec<_>>>()?;
        let a = self.directional(f, &ga);
        let b = self.directional(g, &fa);
        let funcs = a
            .iter()
            .zip(&b)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.sub(q)).collect())
            .collect();
        Ok(ColoredPolyFamily { params: f.params, funcs })
    }

    /// Conventional variable name in the color-`c` profile: `X2.1` is the
    /// first input of color 2, `X2.1_3` its third component; `l1` is a parameter.
    pub fn var_name(&self, c: usize, v: usize) -> String {
        let layout = self.profile_layout(c);
        if v >= layout.total() {
            return alloc::format!("l{}", v - layout.total() + 1);
        }
        let profile = self.profile(c);
        let b = (0..layout.blocks()).rev().find(|&b| layout.offset(b) <= v).expect("v is in range");
        let (d, j) = profile[b];
        if self.dims[d] == 1 {
            alloc::format!("X{}.{}", d + 1, j + 1)
        } else {
            alloc::format!("X{}.{}_{}", d + 1, j + 1, v - layout.offset(b) + 1)
        }
    }
}

/// The semigroupoid generated by the typed maps. Listed maps keep their
/// positions within their type; new maps are appended in discovery order.
pub fn semigroupoid_closure(spec: &ColoredNetworkSpec) -> ColoredNetworkSpec {
    let (elements, _) = close_by_rounds(spec.all_maps(), |a, b| a.compose(b));
    let colors = spec.colors();
    let mut maps = alloc::vec![alloc::vec![Vec::new(); colors]; colors];
    for m in elements {
        maps[m.target][m.source].push(m.images);
    }
    ColoredNetworkSpec {
        cell_counts: spec.cell_counts.clone(),
        dims: spec.dims.clone(),
        maps,
        original_counts: spec.original_counts.clone(),
    }
}

/// One cell function per color.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredPolyFamily {
    pub params: usize,
    /// `funcs[c]` has one polynomial per component of `V_c`.
    pub funcs: Vec<Vec<Poly>>,
}

impl ColoredPolyFamily {
    pub fn zero(spec: &ColoredNetworkSpec, params: usize) -> Self {
        let funcs = (0..spec.colors())
            .map(|c| {
                let nv = spec.profile_layout(c).total() + params;
                (0..spec.dims()[c]).map(|_| Poly::zero(nv)).collect()
            })
            .collect();
        Self { params, funcs }
    }

    pub fn from_polymap(f: &PolyMap) -> Self {
        Self { params: f.params(), funcs: alloc::vec![f.components().to_vec()] }
    }

    pub fn is_zero(&self) -> bool {
        self.funcs.iter().flatten().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            params: self.params,
            funcs: self.funcs.iter().zip(&other.funcs).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            params: self.params,
            funcs: self.funcs.iter().zip(&other.funcs).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self { params: self.params, funcs: self.funcs.iter().map(|a| a.iter().map(|x| x.scale(c)).collect()).collect() }
    }
}

/// Colored SN-decomposition by flattening the global linear map.
///
/// Experimental: the splitting of `γ_{f0}` is computed exactly as in the
/// homogeneous case, then lifted back by solving for a linear family.
#[derive(Clone, Debug)]
pub struct ColoredSnSplit {
    pub f0_s: ColoredPolyFamily,
    pub f0_n: ColoredPolyFamily,
    pub matrix: RationalMatrix,
    pub s_matrix: RationalMatrix,
}

fn linear_matrix(spec: &ColoredNetworkSpec, f: &ColoredPolyFamily) -> Result<RationalMatrix> {
    let g = spec.gamma_symbolic(f)?;
    let n = g.dim();
    let mut m = RationalMatrix::zeros(n, n);
    for (i, poly) in g.components().iter().enumerate() {
        for (mono, coef) in poly.terms() {
            if mono.degree() != 1 {
                bail!(Validation, "expected a linear family");
            }
            let v = mono.exponents().iter().position(|&e| e == 1).expect("degree one");
            m.set(i, v, coef.clone());
        }
    }
    Ok(m)
}

pub fn colored_sn_decompose(spec: &ColoredNetworkSpec, f0: &ColoredPolyFamily) -> Result<ColoredSnSplit> {
    spec.require_semigroupoid()?;
    if f0.params != 0 {
        bail!(Validation, "expected a linear family without parameters");
    }
    let matrix = linear_matrix(spec, f0)?;
    let s_poly = semisimple_witness(&matrix)?;
    let s_matrix = unipoly::eval_matrix(&s_poly, &matrix);
    // Unknowns: one coefficient per (color, component, profile variable).
    let mut unknowns: Vec<(usize, usize, usize)> = Vec::new();
    for c in 0..spec.colors() {
        let total = spec.profile_layout(c).total();
        for r in 0..spec.dims()[c] {
            for v in 0..total {
                unknowns.push((c, r, v));
            }
        }
    }
    let mut cols = Vec::with_capacity(unknowns.len());
    for &(c, r, v) in &unknowns {
        let mut e = ColoredPolyFamily::zero(spec, 0);
        let nv = spec.profile_layout(c).total();
        e.funcs[c][r] = Poly::var(nv, v);
        cols.push(linear_matrix(spec, &e)?.to_rows().into_iter().flatten().collect::<Vec<Q>>());
    }
    let n2 = matrix.nrows() * matrix.ncols();
    let target: Vec<Q> = s_matrix.to_rows().into_iter().flatten().collect();
    let Some(x) = RationalMatrix::from_columns(&cols, n2).solve(&target) else {
        bail!(Internal, "semisimple part is not admissible for this colored network");
    };
    let mut f0_s = ColoredPolyFamily::zero(spec, 0);
    for (&(c, r, v), coef) in unknowns.iter().zip(&x) {
        if !coef.is_zero() {
            let nv = spec.profile_layout(c).total();
            f0_s.funcs[c][r].add_term(Monomial::var(nv, v), coef.clone());
        }
    }
    let f0_n = f0.sub(&f0_s);
    Ok(ColoredSnSplit { f0_s, f0_n, matrix, s_matrix })
}
