//! Plain polynomial vector fields on `Q^D` (with parameters), used to state
//! the homomorphism identities on the level of the full state space.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::poly::Poly;
use crate::polyspace::PolyMap;
use crate::rational::Q;

/// `F: Q^dim × Q^params -> Q^dim`. Each component lives in `dim + params`
/// variables, state variables first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    dim: usize,
    params: usize,
    comps: Vec<Poly>,
}

impl VectorField {
    pub fn new(dim: usize, params: usize, comps: Vec<Poly>) -> Result<Self> {
        if comps.len() != dim || comps.iter().any(|c| c.nvars() != dim + params) {
            bail!(Domain, "vector field components do not match dimension {} with {} parameters", dim, params);
        }
        Ok(Self { dim, params, comps })
    }

    /// Concatenates the per-cell components of an admissible map.
    pub fn from_cells(cells: &[PolyMap]) -> Result<Self> {
        let Some(first) = cells.first() else {
            bail!(Domain, "no cells");
        };
        let (nstate, p) = (first.nstate(), first.params());
        let comps: Vec<Poly> = cells.iter().flat_map(|c| c.components().iter().cloned()).collect();
        Self::new(nstate, p, comps)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> usize {
        self.params
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.params != other.params {
            bail!(Domain, "vector fields live on different spaces");
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            dim: self.dim,
            params: self.params,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// `DF·G`: the derivative of `self` in the direction of `other`.
    pub fn derivative_along(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let nv = self.dim + self.params;
        let comps = self
            .comps
            .iter()
            .map(|f| {
                let mut acc = Poly::zero(nv);
                for (v, g) in other.comps.iter().enumerate() {
                    let d = f.partial(v);
                    if !d.is_zero() {
                        acc.add_assign(&d.mul(g));
                    }
                }
                acc
            })
            .collect();
        Ok(Self { dim: self.dim, params: self.params, comps })
    }

    /// `[F, G] = DF·G − DG·F`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.derivative_along(other)?.sub(&other.derivative_along(self)?)
    }

    /// `F(G(x, λ), λ)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let nv = self.dim + self.params;
        let mut images = other.comps.clone();
        images.extend((self.dim..nv).map(|v| Poly::var(nv, v)));
        let comps = self.comps.iter().map(|f| f.substitute(&images, nv)).collect();
        Ok(Self { dim: self.dim, params: self.params, comps })
    }

    pub fn evaluate(&self, x: &[Q], lambda: &[Q]) -> Result<Vec<Q>> {
        if x.len() != self.dim || lambda.len() != self.params {
            bail!(Domain, "point has the wrong dimension");
        }
        let point: Vec<Q> = x.iter().chain(lambda).cloned().collect();
        Ok(self.comps.iter().map(|c| c.evaluate(&point)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn bracket_of_linear_fields_is_commutator() {
        // F = A x, G = B x; [F, G] = DF·G − DG·F = (AB − BA) x.
        let x = |i| Poly::var(2, i);
        let f = VectorField::new(2, 0, alloc::vec![x(1), Poly::zero(2)]).unwrap();
        let g = VectorField::new(2, 0, alloc::vec![Poly::zero(2), x(0)]).unwrap();
        let b = f.bracket(&g).unwrap();
        assert_eq!(b.components(), [x(0), x(1).neg()]);
        assert!(f.bracket(&f).unwrap().is_zero());
    }

    #[test]
    fn composition_substitutes() {
        let x = |i| Poly::var(3, i);
        let f = VectorField::new(2, 1, alloc::vec![x(0).mul(&x(1)), x(2)]).unwrap();
        let g = VectorField::new(2, 1, alloc::vec![x(1), x(0).add(&x(2))]).unwrap();
        let h = f.compose(&g).unwrap();
        assert_eq!(h.components()[0], x(1).mul(&x(0).add(&x(2))));
        assert_eq!(h.components()[1], x(2));
        assert_eq!(h.evaluate(&[q(1), q(2)], &[q(3)]).unwrap(), [q(8), q(3)]);
    }
}
