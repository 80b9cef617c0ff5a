//! Network specifications, the input selections `π_i`, the representation
//! `A_{σ_j}` and admissible maps `γ_f`.

use alloc::vec::Vec;

use crate::error::{bail, Result};
use crate::finmap::{is_faithful_tilde, semigroup_closure, FiniteMap, SemigroupTable};
use crate::polyspace::PolyMap;
use crate::rational::Q;

/// A block-level linear map `V^source -> V^target`: target slot `k`
/// receives source block `selector[k]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IndexSelection {
    source_arity: usize,
    selector: Vec<usize>,
}

impl IndexSelection {
    pub fn new(source_arity: usize, selector: Vec<usize>) -> Result<Self> {
        if let Some(&s) = selector.iter().find(|&&s| s >= source_arity) {
            bail!(Domain, "selector entry {} exceeds source arity {}", s + 1, source_arity);
        }
        Ok(Self { source_arity, selector })
    }

    pub fn identity(n: usize) -> Self {
        Self { source_arity: n, selector: (0..n).collect() }
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn target_arity(&self) -> usize {
        self.selector.len()
    }

    pub fn selector(&self) -> &[usize] {
        &self.selector
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.selector.iter().map(|s| s + 1).collect()
    }

    /// Applies the selection to a vector of `m`-blocks.
    pub fn apply<T: Clone>(&self, x: &[T], m: usize) -> Vec<T> {
        assert_eq!(x.len(), self.source_arity * m, "block vector has wrong length");
        self.selector.iter().flat_map(|&s| x[s * m..(s + 1) * m].iter().cloned()).collect()
    }

    /// The selection "`self`, then `next`". Index-wise this is the
    /// contravariant composite `self.selector ∘ next.selector`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if next.source_arity != self.target_arity() {
            bail!(
                Domain,
                "cannot follow a selection into {} blocks by one reading {}",
                self.target_arity(),
                next.source_arity
            );
        }
        Ok(Self {
            source_arity: self.source_arity,
            selector: next.selector.iter().map(|&k| self.selector[k]).collect(),
        })
    }
}

/// The maps `σ_1, …, σ_n` on `N` cells with cells of dimension `m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NetworkSpec {
    cells: usize,
    dim: usize,
    maps: Vec<FiniteMap>,
    table: Option<SemigroupTable>,
    original_n: usize,
}

impl NetworkSpec {
    /// A network exactly as given. It counts as a semigroup only if the
    /// maps happen to be closed under composition.
    pub fn new(maps: Vec<FiniteMap>, dim: usize) -> Result<Self> {
        if dim == 0 {
            bail!(Domain, "cell dimension must be positive");
        }
        let table = match SemigroupTable::from_closed(maps.clone()) {
            Ok(t) => Some(t),
            Err(crate::Error::State(_)) => None,
            Err(e) => return Err(e),
        };
        let cells = maps[0].domain_size();
        let original_n = maps.len();
        Ok(Self { cells, dim, maps, table, original_n })
    }

    /// The semigroup generated by `maps`; generators keep their indices.
    pub fn closed(maps: Vec<FiniteMap>, dim: usize) -> Result<Self> {
        Self::new(maps, dim)?.close()
    }

    pub fn from_table(table: SemigroupTable, dim: usize) -> Result<Self> {
        if dim == 0 {
            bail!(Domain, "cell dimension must be positive");
        }
        Ok(Self {
            cells: table.cells(),
            dim,
            maps: table.elements().to_vec(),
            original_n: table.original_len(),
            table: Some(table),
        })
    }

    /// Builds the closure. On a semigroup this returns an equal spec.
    pub fn close(&self) -> Result<Self> {
        if self.table.is_some() {
            return Ok(self.clone());
        }
        let table = semigroup_closure(&self.maps)?;
        Ok(Self {
            cells: self.cells,
            dim: self.dim,
            maps: table.elements().to_vec(),
            table: Some(table),
            original_n: self.original_n,
        })
    }

    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        if dim == 0 {
            bail!(Domain, "cell dimension must be positive");
        }
        Ok(Self { dim, ..self.clone() })
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of maps, i.e. the arity of cell functions.
    pub fn n(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[FiniteMap] {
        &self.maps
    }

    /// Number of maps supplied before closure.
    pub fn original_n(&self) -> usize {
        self.original_n
    }

    pub fn closure_applied(&self) -> bool {
        self.maps.len() > self.original_n
    }

    pub fn is_semigroup(&self) -> bool {
        self.table.is_some()
    }

    pub fn table(&self) -> Result<&SemigroupTable> {
        match &self.table {
            Some(t) => Ok(t),
            None => bail!(State, "the network maps do not form a semigroup; close them first"),
        }
    }

    /// Extends a cell function on the original maps by ignoring the slots
    /// of maps that closure added.
    pub fn extend_function(&self, f: &PolyMap) -> Result<PolyMap> {
        if f.arity() == self.n() {
            return Ok(f.clone());
        }
        if f.arity() != self.original_n {
            bail!(Domain, "function of arity {} does not fit {} maps", f.arity(), self.n());
        }
        f.extend_arity(self.n())
    }

    pub fn check_function(&self, f: &PolyMap) -> Result<()> {
        if f.arity() != self.n() || f.dim() != self.dim {
            bail!(
                Domain,
                "cell function has arity {} and dimension {}; the network needs {} and {}",
                f.arity(),
                f.dim(),
                self.n(),
                self.dim
            );
        }
        Ok(())
    }

    /// `π_i`: slot `j` reads cell `σ_j(i)`.
    pub fn pi(&self, i: usize) -> Result<IndexSelection> {
        if i >= self.cells {
            bail!(Domain, "cell {} out of range 1..{}", i + 1, self.cells);
        }
        Ok(IndexSelection { source_arity: self.cells, selector: self.maps.iter().map(|s| s.apply(i)).collect() })
    }

    /// `A_{σ_j}`: slot `k` reads slot `σ̃_k(j)`, the index of `σ_k ∘ σ_j`.
    pub fn a_map(&self, j: usize) -> Result<IndexSelection> {
        let t = self.table()?;
        if j >= t.len() {
            bail!(Domain, "map {} out of range 1..{}", j + 1, t.len());
        }
        Ok(IndexSelection { source_arity: t.len(), selector: (0..t.len()).map(|k| t.product(k, j)).collect() })
    }

    pub fn gamma_eval(&self, f: &PolyMap, x: &[Q], lambda: &[Q]) -> Result<Vec<Q>> {
        self.check_function(f)?;
        if x.len() != self.cells * self.dim {
            bail!(Domain, "state has {} entries, expected {}", x.len(), self.cells * self.dim);
        }
        let mut out = Vec::with_capacity(x.len());
        for i in 0..self.cells {
            out.extend(f.evaluate(&self.pi(i)?.apply(x, self.dim), lambda)?);
        }
        Ok(out)
    }

    /// `(f ∘ π_i)_i` as maps in the `N·m` state variables (plus parameters).
    pub fn gamma_symbolic(&self, f: &PolyMap) -> Result<Vec<PolyMap>> {
        self.check_function(f)?;
        (0..self.cells).map(|i| f.compose_linear(&self.pi(i)?)).collect()
    }
}

/// The fundamental network on the `n` map indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalNetwork {
    /// Map `k` is `σ̃_k`. When the representation is not faithful some of
    /// these coincide and the spec is left unclosed.
    pub spec: NetworkSpec,
    pub faithful: bool,
}

pub fn fundamental_network(spec: &NetworkSpec) -> Result<FundamentalNetwork> {
    let t = spec.table()?;
    let faithful = is_faithful_tilde(t);
    let maps: Vec<FiniteMap> = (0..t.len()).map(|k| t.tilde_map(k)).collect();
    let fspec = if faithful {
        NetworkSpec::new(maps, spec.dim)?
    } else {
        NetworkSpec { cells: t.len(), dim: spec.dim, original_n: maps.len(), maps, table: None }
    };
    Ok(FundamentalNetwork { spec: fspec, faithful })
}
