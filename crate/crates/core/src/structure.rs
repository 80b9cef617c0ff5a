//! Network symmetries, balanced partitions and dynamical input symmetries.
//!
//! Everything here is an exhaustive search. Each search has a cell-count
//! guard and refuses with [`Error::Guard`](crate::Error::Guard) beyond it.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail, Result};
use crate::finmap::{FiniteMap, SemigroupTable};
use crate::liealg::constraint_kernel;
use crate::network::{IndexSelection, NetworkSpec};
use crate::polyspace::GradedBasis;
use crate::rational::Q;

pub const SYMMETRY_GUARD: usize = 16;
pub const PARTITION_GUARD: usize = 12;
pub const INPUT_SYMMETRY_GUARD: usize = 10;

fn guard(what: &str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        bail!(Guard, "{} search is limited to {} cells, the network has {}", what, limit, n);
    }
    Ok(())
}

/// A partition of the cells; blocks sorted, ordered by least element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// From a block label per cell.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (cell, &lab) in labels.iter().enumerate() {
            match seen.iter().find(|(l, _)| *l == lab) {
                Some(&(_, b)) => blocks[b].push(cell),
                None => {
                    seen.push((lab, blocks.len()));
                    blocks.push(alloc::vec![cell]);
                }
            }
        }
        Self { blocks }
    }

    pub fn from_blocks(cells: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut labels = alloc::vec![usize::MAX; cells];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                bail!(Domain, "empty block");
            }
            for &c in block {
                if c >= cells || labels[c] != usize::MAX {
                    bail!(Domain, "blocks must cover the cells exactly once");
                }
                labels[c] = b;
            }
        }
        if labels.contains(&usize::MAX) {
            bail!(Domain, "blocks must cover the cells exactly once");
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn singletons(cells: usize) -> Self {
        Self { blocks: (0..cells).map(|c| alloc::vec![c]).collect() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.iter().map(|c| c + 1).collect()).collect()
    }

    pub fn labels(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(Vec::len).sum();
        let mut labels = alloc::vec![0; n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &c in block {
                labels[c] = b;
            }
        }
        labels
    }

    /// Every map sends each block into a single block.
    pub fn is_balanced(&self, maps: &[FiniteMap]) -> bool {
        let labels = self.labels();
        self.blocks.iter().all(|block| {
            maps.iter().all(|s| block.iter().all(|&c| labels[s.apply(c)] == labels[s.apply(block[0])]))
        })
    }

    /// Common refinement.
    pub fn meet(&self, other: &Self) -> Self {
        let (a, b) = (self.labels(), other.labels());
        let pairs: Vec<(usize, usize)> = a.into_iter().zip(b).collect();
        let mut uniq: Vec<(usize, usize)> = pairs.clone();
        uniq.sort();
        uniq.dedup();
        let labels: Vec<usize> = pairs.iter().map(|p| uniq.binary_search(p).unwrap()).collect();
        Self::from_labels(&labels)
    }

    fn sort_key(&self) -> (usize, Vec<Vec<usize>>) {
        (self.blocks.len(), self.blocks.clone())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.one_based() {
            let items: Vec<String> = b.iter().map(|c| alloc::format!("{}", c)).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

/// Permutations `p` of the cells with `p ∘ σ_j = σ_j ∘ p` for every map,
/// in lexicographic order of their image lists.
pub fn network_symmetries(spec: &NetworkSpec) -> Result<Vec<FiniteMap>> {
    let n = spec.cells();
    guard("symmetry", n, SYMMETRY_GUARD)?;
    let maps = spec.maps();
    let mut out = Vec::new();
    let mut p = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];
    fn consistent(p: &[usize], maps: &[FiniteMap]) -> bool {
        maps.iter().all(|s| {
            (0..p.len()).all(|i| {
                let (pi, psi) = (p[i], p[s.apply(i)]);
                pi == usize::MAX || psi == usize::MAX || psi == s.apply(pi)
            })
        })
    }
    fn rec(i: usize, p: &mut Vec<usize>, used: &mut Vec<bool>, maps: &[FiniteMap], out: &mut Vec<FiniteMap>) {
        if i == p.len() {
            out.push(FiniteMap::new(p.clone()).expect("a permutation of the cells"));
            return;
        }
        for v in 0..p.len() {
            if used[v] {
                continue;
            }
            p[i] = v;
            used[v] = true;
            if consistent(p, maps) {
                rec(i + 1, p, used, maps, out);
            }
            used[v] = false;
            p[i] = usize::MAX;
        }
    }
    rec(0, &mut p, &mut used, maps, &mut out);
    Ok(out)
}

/// All balanced partitions, ordered by number of blocks, then lexicographically.
pub fn balanced_partitions(spec: &NetworkSpec) -> Result<Vec<Partition>> {
    let n = spec.cells();
    guard("balanced partition", n, PARTITION_GUARD)?;
    let maps = spec.maps();
    let mut out = Vec::new();
    let mut labels = alloc::vec![usize::MAX; n];
    fn ok(labels: &[usize], maps: &[FiniteMap]) -> bool {
        let n = labels.len();
        for a in 0..n {
            if labels[a] == usize::MAX {
                continue;
            }
            for b in a + 1..n {
                if labels[b] != labels[a] {
                    continue;
                }
                for s in maps {
                    let (x, y) = (labels[s.apply(a)], labels[s.apply(b)]);
                    if x != usize::MAX && y != usize::MAX && x != y {
                        return false;
                    }
                }
            }
        }
        true
    }
    // Restricted growth strings: cell i joins an existing block or opens block `max + 1`.
    fn rec(i: usize, blocks: usize, labels: &mut Vec<usize>, maps: &[FiniteMap], out: &mut Vec<Partition>) {
        if i == labels.len() {
            out.push(Partition::from_labels(labels));
            return;
        }
        for lab in 0..=blocks {
            labels[i] = lab;
            if ok(labels, maps) {
                rec(i + 1, blocks.max(lab + 1), labels, maps, out);
            }
        }
        labels[i] = usize::MAX;
    }
    rec(0, 0, &mut labels, maps, &mut out);
    out.sort_by_key(Partition::sort_key);
    Ok(out)
}

/// Structures that closure must leave unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub symmetries: Vec<FiniteMap>,
    pub partitions: Vec<Partition>,
}

/// Confirms that a network and its closure share symmetries and balanced partitions.
pub fn closure_invariance_report(before: &NetworkSpec, after: &NetworkSpec) -> Result<ClosureReport> {
    let symmetries = network_symmetries(before)?;
    let partitions = balanced_partitions(before)?;
    if symmetries != network_symmetries(after)? {
        bail!(Internal, "closure changed the network symmetry group");
    }
    if partitions != balanced_partitions(after)? {
        bail!(Internal, "closure changed the balanced partitions");
    }
    Ok(ClosureReport { symmetries, partitions })
}

/// A cell permutation `p` and input permutation `q` with `p∘σ_j = σ_{q(j)}∘p`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct InputSymmetryPair {
    pub p: FiniteMap,
    pub q: FiniteMap,
}

impl InputSymmetryPair {
    pub fn holds(&self, maps: &[FiniteMap]) -> bool {
        maps.iter().enumerate().all(|(j, s)| {
            self.p.compose_unchecked(s) == maps[self.q.apply(j)].compose_unchecked(&self.p)
        })
    }

    /// Componentwise composition.
    pub fn compose(&self, other: &Self) -> Self {
        Self { p: self.p.compose_unchecked(&other.p), q: self.q.compose_unchecked(&other.q) }
    }

    /// `λ_q`: slot `j` reads slot `q(j)`.
    pub fn lambda(&self) -> IndexSelection {
        IndexSelection::new(self.q.domain_size(), self.q.images().to_vec()).expect("q is a permutation")
    }
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// All dynamical input symmetries, ordered by `p`.
pub fn dynamical_input_symmetries(spec: &NetworkSpec) -> Result<Vec<InputSymmetryPair>> {
    let n = spec.cells();
    guard("input symmetry", n, INPUT_SYMMETRY_GUARD)?;
    let maps = spec.maps();
    let mut out = Vec::new();
    'perm: for images in permutations(n) {
        let p = FiniteMap::new(images).expect("a permutation of the cells");
        let pinv = p.inverse().expect("permutations are invertible");
        let mut q = Vec::with_capacity(maps.len());
        for s in maps {
            let conj = p.compose_unchecked(s).compose_unchecked(&pinv);
            match maps.iter().position(|m| *m == conj) {
                Some(k) => q.push(k),
                None => continue 'perm,
            }
        }
        let q = FiniteMap::new(q).expect("indices of listed maps");
        out.push(InputSymmetryPair { p, q });
    }
    Ok(out)
}

/// Extends a dynamical input symmetry of the generators to the closure,
/// using `q'(σ̃_a(b)) = σ̃_{q'(a)}(q'(b))`.
pub fn extend_to_closure(table: &SemigroupTable, pair: &InputSymmetryPair) -> Result<InputSymmetryPair> {
    let n0 = pair.q.domain_size();
    if n0 > table.len() || table.original_len() != n0 {
        bail!(Domain, "symmetry acts on {} maps, the closure was generated by {}", n0, table.original_len());
    }
    let mut q: Vec<Option<usize>> = alloc::vec![None; table.len()];
    for j in 0..n0 {
        q[j] = Some(pair.q.apply(j));
    }
    loop {
        let mut changed = false;
        for a in 0..table.len() {
            for b in 0..table.len() {
                let (Some(qa), Some(qb)) = (q[a], q[b]) else { continue };
                let target = table.product(qa, qb);
                let c = table.product(a, b);
                match q[c] {
                    None => {
                        q[c] = Some(target);
                        changed = true;
                    }
                    Some(t) if t != target => bail!(Validation, "the input permutation is not compatible with composition"),
                    Some(_) => {}
                }
            }
        }
        if !changed {
            break;
        }
    }
    let images: Vec<usize> = q.into_iter().map(|x| x.expect("closure is generated by the listed maps")).collect();
    let q = FiniteMap::new(images)?;
    if !q.is_permutation() {
        bail!(Validation, "extension of the input permutation is not a permutation");
    }
    Ok(InputSymmetryPair { p: pair.p.clone(), q })
}

/// Echelon basis (coordinates in the monomial basis of `P^{k,l}`) of the
/// functions `g` with `g∘λ_q∘π_i = g∘π_i` for every pair in `group` and every cell.
pub fn invariant_subbasis(
    spec: &NetworkSpec,
    group: &[InputSymmetryPair],
    k: i32,
    l: u32,
    p: usize,
) -> Result<Vec<Vec<Q>>> {
    let basis = GradedBasis::new(k, l, spec.n(), spec.dim(), p)?;
    for pair in group {
        if pair.q.domain_size() != spec.n() {
            bail!(Domain, "input permutation acts on {} slots, the network has {}", pair.q.domain_size(), spec.n());
        }
    }
    let pis = (0..spec.cells()).map(|i| spec.pi(i)).collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    let lambdas: BTreeSet<Vec<usize>> = group.iter().map(|g| g.q.images().to_vec()).collect();
    for lam in lambdas {
        let lam = IndexSelection::new(spec.n(), lam)?;
        for pi in &pis {
            pairs.push((pi.then(&lam)?, pi.clone()));
        }
    }
    let kernel = constraint_kernel(&basis, |b| {
        pairs
            .iter()
            .map(|(moved, plain)| b.compose_linear(moved)?.sub(&b.compose_linear(plain)?))
            .collect()
    })?;
    Ok(kernel.into_rows())
}
