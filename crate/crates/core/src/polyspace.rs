//! Polynomial cell functions `f: V^n × R^p -> V` with `V = Q^m`, and the
//! graded pieces `P^{k,l}` they decompose into.
//!
//! Variables are laid out slot-major: the state variable for component `c`
//! of input slot `j` has index `j*m + c`, and parameter `t` comes after all
//! state variables at index `n*m + t`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{bail, Result};
use crate::network::IndexSelection;
use crate::poly::{Monomial, Poly};
use crate::rational::Q;

/// A polynomial map `V^n × R^p -> V`, one polynomial per component of `V`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    n: usize,
    m: usize,
    p: usize,
    comps: Vec<Poly>,
}

impl PolyMap {
    pub fn zero(n: usize, m: usize, p: usize) -> Self {
        let nv = n * m + p;
        Self { n, m, p, comps: (0..m).map(|_| Poly::zero(nv)).collect() }
    }

    pub fn from_components(n: usize, m: usize, p: usize, comps: Vec<Poly>) -> Result<Self> {
        if comps.len() != m {
            bail!(Domain, "expected {} components, got {}", m, comps.len());
        }
        if let Some(c) = comps.iter().find(|c| c.nvars() != n * m + p) {
            bail!(Domain, "component has {} variables, expected {}", c.nvars(), n * m + p);
        }
        Ok(Self { n, m, p, comps })
    }

    /// A scalar cell function (`m = 1`).
    pub fn scalar(n: usize, p: usize, poly: Poly) -> Result<Self> {
        Self::from_components(n, 1, p, alloc::vec![poly])
    }

    /// The state variable `X_slot` component `comp`, as a scalar polynomial.
    pub fn state_poly(&self, slot: usize, comp: usize) -> Poly {
        Poly::var(self.nvars(), self.state_var(slot, comp))
    }

    /// The projection `X ↦ X_slot` as a cell function.
    pub fn projection(n: usize, m: usize, p: usize, slot: usize) -> Self {
        let nv = n * m + p;
        Self { n, m, p, comps: (0..m).map(|c| Poly::var(nv, slot * m + c)).collect() }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn params(&self) -> usize {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.n * self.m + self.p
    }

    pub fn nstate(&self) -> usize {
        self.n * self.m
    }

    pub fn state_var(&self, slot: usize, comp: usize) -> usize {
        slot * self.m + comp
    }

    pub fn param_var(&self, t: usize) -> usize {
        self.n * self.m + t
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, c: usize) -> &Poly {
        &self.comps[c]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.p == other.p
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if !self.same_shape(other) {
            bail!(
                Domain,
                "shape mismatch: (n,m,p)=({},{},{}) vs ({},{},{})",
                self.n, self.m, self.p, other.n, other.m, other.p
            );
        }
        Ok(())
    }

    pub fn map_components(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self { n: self.n, m: self.m, p: self.p, comps: self.comps.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self {
            n: self.n,
            m: self.m,
            p: self.p,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self {
            n: self.n,
            m: self.m,
            p: self.p,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        assert!(self.same_shape(other), "shape mismatch");
        for (a, b) in self.comps.iter_mut().zip(&other.comps) {
            a.add_scaled(b, c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map_components(|p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map_components(Poly::neg)
    }

    /// Exact value at the state `x ∈ Q^{n·m}` and parameters `lambda ∈ Q^p`.
    pub fn evaluate(&self, x: &[Q], lambda: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.nstate() || lambda.len() != self.p {
            bail!(
                Domain,
                "point of dimension ({}, {}) for a map on ({}, {})",
                x.len(),
                lambda.len(),
                self.nstate(),
                self.p
            );
        }
        let point: Vec<Q> = x.iter().chain(lambda).cloned().collect();
        Ok(self.comps.iter().map(|c| c.evaluate(&point)).collect())
    }

    /// Derivative of every component with respect to component `direction`
    /// of input slot `slot`.
    pub fn partial(&self, slot: usize, direction: usize) -> Result<Self> {
        if slot >= self.n || direction >= self.m {
            bail!(Domain, "derivative slot {} direction {} out of range", slot + 1, direction + 1);
        }
        let v = self.state_var(slot, direction);
        Ok(self.map_components(|p| p.partial(v)))
    }

    /// `f ∘ A` for a block selection `A`: input slot `k` of `f` receives
    /// block `A(k)` of the new argument.
    pub fn compose_linear(&self, sel: &IndexSelection) -> Result<Self> {
        if sel.target_arity() != self.n {
            bail!(
                Domain,
                "selection produces {} blocks but the map takes {}",
                sel.target_arity(),
                self.n
            );
        }
        let n2 = sel.source_arity();
        let nv2 = n2 * self.m + self.p;
        let mut target = Vec::with_capacity(self.nvars());
        for k in 0..self.n {
            for c in 0..self.m {
                target.push(sel.selector()[k] * self.m + c);
            }
        }
        for t in 0..self.p {
            target.push(n2 * self.m + t);
        }
        Ok(Self {
            n: n2,
            m: self.m,
            p: self.p,
            comps: self.comps.iter().map(|c| c.rename(&target, nv2)).collect(),
        })
    }

    /// `f'(X_1..X_n, X_{n+1}..X_{n'}) = f(X_1..X_n)`.
    pub fn extend_arity(&self, new_n: usize) -> Result<Self> {
        if new_n < self.n {
            bail!(Domain, "cannot shrink arity from {} to {}", self.n, new_n);
        }
        let sel = IndexSelection::new(new_n, (0..self.n).collect())?;
        self.compose_linear(&sel)
    }

    /// Re-indexes parameters into a space with `new_p >= p` parameters.
    pub fn extend_params(&self, new_p: usize) -> Result<Self> {
        if new_p < self.p {
            bail!(Domain, "cannot drop parameters");
        }
        let nv2 = self.nstate() + new_p;
        let target: Vec<usize> = (0..self.nvars()).collect();
        Ok(Self {
            n: self.n,
            m: self.m,
            p: new_p,
            comps: self.comps.iter().map(|c| c.rename(&target, nv2)).collect(),
        })
    }

    /// Component of state degree `k+1` and parameter degree `l`.
    pub fn grade(&self, k: i32, l: u32) -> Self {
        let sd = (k + 1).max(0) as u32;
        if k < -1 {
            return Self::zero(self.n, self.m, self.p);
        }
        let (s, pr) = (0..self.nstate(), self.nstate()..self.nvars());
        self.map_components(|c| c.homogeneous_part(s.clone(), pr.clone(), sd, l))
    }

    /// Drops terms of state degree above `r1 + 1` or parameter degree above `r2`.
    pub fn truncate(&self, r1: i32, r2: u32) -> Self {
        let (ns, nv) = (self.nstate(), self.nvars());
        let max_sd = (r1 + 1).max(0) as u32;
        self.map_components(|c| {
            c.filter_terms(|mono| mono.degree_in(0..ns) <= max_sd && mono.degree_in(ns..nv) <= r2)
        })
    }

    /// Largest state degree among the terms, and largest parameter degree.
    pub fn degrees(&self) -> (u32, u32) {
        let (ns, nv) = (self.nstate(), self.nvars());
        let mut sd = 0;
        let mut pd = 0;
        for c in &self.comps {
            for (mono, _) in c.terms() {
                sd = sd.max(mono.degree_in(0..ns));
                pd = pd.max(mono.degree_in(ns..nv));
            }
        }
        (sd, pd)
    }

    /// Conventional variable name: `X2`, `X2_1` for vector cells, `l1` for parameters.
    pub fn var_name(&self, v: usize) -> String {
        var_name(self.n, self.m, v)
    }

    pub fn render(&self) -> Vec<String> {
        let name = |v: usize| var_name(self.n, self.m, v);
        self.comps.iter().map(|c| c.render_with(&name)).collect()
    }
}

/// Name of variable `v` in the layout of an arity `n`, dimension `m` map.
pub fn var_name(n: usize, m: usize, v: usize) -> String {
    if v < n * m {
        let (slot, comp) = (v / m, v % m);
        if m == 1 {
            alloc::format!("X{}", slot + 1)
        } else {
            alloc::format!("X{}_{}", slot + 1, comp + 1)
        }
    } else {
        alloc::format!("l{}", v - n * m + 1)
    }
}

/// All exponent vectors over `nvars` variables with total degree `d`.
pub(crate) fn exponents_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, d, &mut alloc::vec![0; nvars], &mut out);
    out
}

/// The monomial basis of `P^{k,l}`: maps of state degree `k+1` and
/// parameter degree `l`, ordered by target component then monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    k: i32,
    l: u32,
    n: usize,
    m: usize,
    p: usize,
    entries: Vec<(usize, Monomial)>,
    index: BTreeMap<(usize, Monomial), usize>,
}

impl GradedBasis {
    pub fn new(k: i32, l: u32, n: usize, m: usize, p: usize) -> Result<Self> {
        if k < -1 {
            bail!(Domain, "grade k must be at least -1, got {}", k);
        }
        let ns = n * m;
        let mut monos = Vec::new();
        // The constant term f(0;0) is never part of a graded piece.
        if !(k == -1 && l == 0) {
            let states = exponents_of_degree(ns, (k + 1) as u32);
            let params = exponents_of_degree(p, l);
            for s in &states {
                for t in &params {
                    let mut e = s.clone();
                    e.extend_from_slice(t);
                    monos.push(Monomial::from_exponents(e));
                }
            }
        }
        monos.sort();
        let mut entries = Vec::with_capacity(m * monos.len());
        for c in 0..m {
            for mono in &monos {
                entries.push((c, mono.clone()));
            }
        }
        let index = entries.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Self { k, l, n, m, p, entries, index })
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry_key(&self, i: usize) -> &(usize, Monomial) {
        &self.entries[i]
    }

    pub fn entry(&self, i: usize) -> PolyMap {
        let (c, mono) = &self.entries[i];
        let mut f = PolyMap::zero(self.n, self.m, self.p);
        f.comps[*c] = Poly::monomial(mono.clone(), Q::from_integer(1.into()));
        f
    }

    pub fn entries(&self) -> Vec<PolyMap> {
        (0..self.len()).map(|i| self.entry(i)).collect()
    }

    /// Coordinates of `f` in this basis; fails when `f` has terms of another grade.
    pub fn coordinates(&self, f: &PolyMap) -> Result<Vec<Q>> {
        if f.n != self.n || f.m != self.m || f.p != self.p {
            bail!(Domain, "map shape does not match the graded basis");
        }
        let mut v = alloc::vec![Q::zero(); self.len()];
        for (c, poly) in f.comps.iter().enumerate() {
            for (mono, coef) in poly.terms() {
                match self.index.get(&(c, mono.clone())) {
                    Some(&i) => v[i] = coef.clone(),
                    None => bail!(
                        Domain,
                        "term outside grade (k={}, l={}) in component {}",
                        self.k,
                        self.l,
                        c + 1
                    ),
                }
            }
        }
        Ok(v)
    }

    pub fn from_coordinates(&self, v: &[Q]) -> PolyMap {
        assert_eq!(v.len(), self.len(), "coordinate vector has wrong length");
        let mut f = PolyMap::zero(self.n, self.m, self.p);
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                let (c, mono) = &self.entries[i];
                f.comps[*c].add_term(mono.clone(), x.clone());
            }
        }
        f
    }
}

/// Convenience wrapper for [`GradedBasis::new`].
pub fn basis(k: i32, l: u32, n: usize, m: usize, p: usize) -> Result<GradedBasis> {
    GradedBasis::new(k, l, n, m, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_bases() {
        let b = basis(0, 0, 2, 1, 0).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b.entry(0).render(), ["X1"]);
        let b = basis(1, 0, 2, 1, 0).unwrap();
        let r: Vec<String> = b.entries().iter().map(|e| e.render()[0].clone()).collect();
        assert_eq!(r, ["X1^2", "X1*X2", "X2^2"]);
        assert_eq!(basis(1, 0, 2, 2, 0).unwrap().len(), 20);
        assert!(basis(-1, 0, 2, 1, 0).unwrap().is_empty());
        assert_eq!(basis(-1, 2, 2, 1, 1).unwrap().len(), 1);
        assert!(basis(-2, 0, 2, 1, 0).is_err());
    }

    #[test]
    fn basis_sizes_match_stars_and_bars() {
        // Brute-force count: every exponent vector in a bounded box with the right degrees.
        for n in 1..=3usize {
            for m in 1..=2usize {
                for p in 0..=2usize {
                    for k in -1..=2i32 {
                        for l in 0..=2u32 {
                            let b = basis(k, l, n, m, p).unwrap();
                            let nv = n * m + p;
                            let bound = (k + 1).max(l as i32) as u32 + 1;
                            let mut count = 0u64;
                            let total = (bound as u64).pow(nv as u32);
                            for code in 0..total {
                                let mut c = code;
                                let mut e = Vec::new();
                                for _ in 0..nv {
                                    e.push((c % bound as u64) as u32);
                                    c /= bound as u64;
                                }
                                let sd: u32 = e[..n * m].iter().sum();
                                let pd: u32 = e[n * m..].iter().sum();
                                if sd as i32 == k + 1 && pd == l && !(k == -1 && l == 0) {
                                    count += 1;
                                }
                            }
                            assert_eq!(b.len() as u64, m as u64 * count, "n={n} m={m} p={p} k={k} l={l}");
                            if k >= 0 {
                                let formula = m as u64
                                    * binom((n * m) as u64 + k as u64, k as u64 + 1)
                                    * if p == 0 { (l == 0) as u64 } else { binom(p as u64 + l as u64 - 1, l as u64) };
                                assert_eq!(b.len() as u64, formula);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coordinates_round_trip_and_reject_other_grades() {
        let b = basis(1, 1, 2, 1, 1).unwrap();
        let v: Vec<Q> = (0..b.len()).map(|i| q(i as i64 - 1)).collect();
        let f = b.from_coordinates(&v);
        assert_eq!(b.coordinates(&f).unwrap(), v);
        let lin = basis(0, 0, 2, 1, 1).unwrap().entry(0);
        assert!(b.coordinates(&lin).is_err());
    }

    #[test]
    fn partial_and_linear_composition() {
        // f = X1^2 X2
        let nv = 3;
        let x = |i| Poly::var(nv, i);
        let f = PolyMap::scalar(3, 0, x(0).pow(2).mul(&x(1))).unwrap();
        let d = f.partial(0, 0).unwrap();
        assert_eq!(d.component(0), &x(0).mul(&x(1)).scale(&q(2)));
        assert!(f.partial(3, 0).is_err());

        let g = PolyMap::scalar(3, 0, x(0).add(&x(1).mul(&x(2)))).unwrap();
        let sel = IndexSelection::new(3, alloc::vec![1, 2, 2]).unwrap();
        let h = g.compose_linear(&sel).unwrap();
        assert_eq!(h.component(0), &x(1).add(&x(2).pow(2)));
    }

    #[test]
    fn grades_and_truncation() {
        let nv = 3;
        let x = |i| Poly::var(nv, i);
        let poly = x(0).add(&x(1).mul(&x(2))).add(&x(0).pow(3)).add(&x(2));
        let f = PolyMap::scalar(2, 1, poly).unwrap();
        assert_eq!(f.grade(0, 0).component(0), &x(0));
        assert_eq!(f.grade(0, 1).component(0), &x(1).mul(&x(2)));
        assert_eq!(f.grade(-1, 1).component(0), &x(2));
        assert_eq!(f.truncate(1, 0).component(0), &x(0));
        assert_eq!(f.degrees(), (3, 1));
    }
}
