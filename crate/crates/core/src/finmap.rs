//! Finite transformations of a cell set, their composition, and the
//! closure of a collection of them into a semigroup.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{bail, Result};

/// A map `{1..N} -> {1..N}` stored 0-based: `images[i]` is the image of cell `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FiniteMap {
    images: Vec<usize>,
}

impl FiniteMap {
    /// Builds a map from 0-based images. Fails when an image leaves the domain.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            bail!(Validation, "a finite map needs at least one cell");
        }
        if let Some((i, &v)) = images.iter().enumerate().find(|(_, &v)| v >= n) {
            bail!(Domain, "image of cell {} is {} but there are only {} cells", i + 1, v + 1, n);
        }
        Ok(Self { images })
    }

    /// Builds a map from the 1-based image list used in documents, `(1,1,2)`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut out = Vec::with_capacity(n);
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v > n {
                bail!(Domain, "image of cell {} is {} but cells are numbered 1..{}", i + 1, v, n);
            }
            out.push(v - 1);
        }
        Self::new(out)
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        assert!(value < n);
        Self { images: alloc::vec![value; n] }
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|v| v + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = alloc::vec![false; self.images.len()];
        for &v in &self.images {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    /// Inverse of a permutation.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_permutation() {
            return None;
        }
        let mut inv = alloc::vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Some(Self { images: inv })
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.domain_size() != other.domain_size() {
            bail!(
                Domain,
                "cannot compose maps on {} and {} cells",
                self.domain_size(),
                other.domain_size()
            );
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&j| self.images[j]).collect() }
    }
}

impl fmt::Display for FiniteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str(")")
    }
}

/// `σ_{j1} ∘ σ_{j2}` for a list of maps: compose two indices.
pub fn compose_maps(a: &FiniteMap, b: &FiniteMap) -> Result<FiniteMap> {
    a.compose(b)
}

/// A finite semigroup of maps with its multiplication table.
///
/// `table[a][b]` is the index of `elements[a] ∘ elements[b]`, and
/// `tilde[a]` is row `a` of the table read as a map on element indices
/// (left multiplication by `elements[a]`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemigroupTable {
    elements: Vec<FiniteMap>,
    table: Vec<Vec<usize>>,
    original_len: usize,
}

impl SemigroupTable {
    /// Builds the table of a collection that is already closed; fails if it is not.
    pub fn from_closed(elements: Vec<FiniteMap>) -> Result<Self> {
        validate_generators(&elements)?;
        let index: BTreeMap<&FiniteMap, usize> =
            elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in &elements {
                let c = a.compose_unchecked(b);
                match index.get(&c) {
                    Some(&k) => row.push(k),
                    None => bail!(State, "the maps are not closed under composition: {} ∘ {} = {}", a, b, c),
                }
            }
            table.push(row);
        }
        let original_len = elements.len();
        Ok(Self { elements, table, original_len })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[FiniteMap] {
        &self.elements
    }

    /// Number of leading elements that were supplied as generators.
    pub fn original_len(&self) -> usize {
        self.original_len
    }

    pub fn cells(&self) -> usize {
        self.elements[0].domain_size()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Left multiplication by element `a`, as a map on element indices.
    pub fn tilde(&self, a: usize) -> &[usize] {
        &self.table[a]
    }

    pub fn tilde_map(&self, a: usize) -> FiniteMap {
        FiniteMap { images: self.table[a].clone() }
    }

    pub fn index_of(&self, m: &FiniteMap) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    pub fn identity_index(&self) -> Option<usize> {
        self.elements.iter().position(FiniteMap::is_identity)
    }
}

fn validate_generators(maps: &[FiniteMap]) -> Result<()> {
    let Some(first) = maps.first() else {
        bail!(Validation, "at least one map is required");
    };
    let n = first.domain_size();
    for (j, m) in maps.iter().enumerate() {
        if m.domain_size() != n {
            bail!(Domain, "map {} acts on {} cells, expected {}", j + 1, m.domain_size(), n);
        }
    }
    for a in 0..maps.len() {
        for b in a + 1..maps.len() {
            if maps[a] == maps[b] {
                bail!(Validation, "maps {} and {} coincide: {}", a + 1, b + 1, maps[a]);
            }
        }
    }
    Ok(())
}

/// Closes a list of distinct maps under composition.
///
/// The generators keep their positions; new elements are appended in the
/// order they are discovered. Discovery runs in rounds: each round visits
/// every pair `(a, b)` that involves an element added in the previous round,
/// in lexicographic order of `(a, b)`, and appends unseen products `a ∘ b`.
pub fn semigroup_closure(maps: &[FiniteMap]) -> Result<SemigroupTable> {
    validate_generators(maps)?;
    let (elements, table) = close_by_rounds(maps.to_vec(), |a, b| Some(a.compose_unchecked(b)));
    let table = table
        .into_iter()
        .map(|row| row.into_iter().map(|c| c.expect("products of maps on one set are total")).collect())
        .collect();
    Ok(SemigroupTable { elements, table, original_len: maps.len() })
}

/// Round-based closure shared with the colored semigroupoid.
///
/// `product` returns `None` for pairs that cannot be composed. Returns the
/// element list and the partial table.
pub(crate) fn close_by_rounds<T, F>(mut elements: Vec<T>, product: F) -> (Vec<T>, Vec<Vec<Option<usize>>>)
where
    T: Clone + Ord,
    F: Fn(&T, &T) -> Option<T>,
{
    let mut index: BTreeMap<T, usize> =
        elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut done = 0usize;
    loop {
        let len = elements.len();
        if done == len {
            break;
        }
        for a in 0..len {
            for b in 0..len {
                if a < done && b < done {
                    continue;
                }
                if let Some(c) = product(&elements[a], &elements[b]) {
                    if !index.contains_key(&c) {
                        index.insert(c.clone(), elements.len());
                        elements.push(c);
                    }
                }
            }
        }
        done = len;
    }
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| product(a, b).map(|c| index[&c]))
                .collect()
        })
        .collect();
    (elements, table)
}

/// True when distinct elements have distinct left multiplications.
pub fn is_faithful_tilde(table: &SemigroupTable) -> bool {
    let rows: BTreeMap<&Vec<usize>, usize> =
        table.table.iter().enumerate().map(|(i, r)| (r, i)).collect();
    rows.len() == table.len()
}

/// Outcome of removing slave cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlaveReduction {
    /// The surviving maps on the surviving cells, duplicates merged.
    pub maps: Vec<FiniteMap>,
    /// `kept_cells[i]` is the original (0-based) cell that became cell `i`.
    pub kept_cells: Vec<usize>,
    /// `map_merge[j]` is the index in `maps` that original map `j` became.
    /// A cell function `f` is redefined by feeding input `map_merge[j]` into slot `j`.
    pub map_merge: Vec<usize>,
    /// Number of removal rounds that removed at least one cell.
    pub rounds: usize,
    /// Set when nothing survives (only possible for an empty map list).
    pub degenerate: bool,
}

/// Removes cells that are no input of any cell, repeatedly, then merges
/// maps that became equal. Cell order is preserved.
pub fn slave_reduce(cells: usize, maps: &[FiniteMap]) -> Result<SlaveReduction> {
    for (j, m) in maps.iter().enumerate() {
        if m.domain_size() != cells {
            bail!(Domain, "map {} acts on {} cells, expected {}", j + 1, m.domain_size(), cells);
        }
    }
    let mut alive = alloc::vec![true; cells];
    let mut rounds = 0;
    loop {
        let mut is_input = alloc::vec![false; cells];
        for m in maps {
            for i in (0..cells).filter(|&i| alive[i]) {
                is_input[m.apply(i)] = true;
            }
        }
        let slaves: Vec<usize> = (0..cells).filter(|&i| alive[i] && !is_input[i]).collect();
        if slaves.is_empty() {
            break;
        }
        for i in slaves {
            alive[i] = false;
        }
        rounds += 1;
    }
    let kept_cells: Vec<usize> = (0..cells).filter(|&i| alive[i]).collect();
    if kept_cells.is_empty() {
        return Ok(SlaveReduction {
            maps: Vec::new(),
            kept_cells,
            map_merge: alloc::vec![0; maps.len()],
            rounds,
            degenerate: true,
        });
    }
    let mut relabel = alloc::vec![usize::MAX; cells];
    for (new, &old) in kept_cells.iter().enumerate() {
        relabel[old] = new;
    }
    let mut reduced: Vec<FiniteMap> = Vec::new();
    let mut map_merge = Vec::with_capacity(maps.len());
    for m in maps {
        let images = kept_cells.iter().map(|&i| relabel[m.apply(i)]).collect();
        let r = FiniteMap { images };
        match reduced.iter().position(|x| *x == r) {
            Some(k) => map_merge.push(k),
            None => {
                map_merge.push(reduced.len());
                reduced.push(r);
            }
        }
    }
    Ok(SlaveReduction { maps: reduced, kept_cells, map_merge, rounds, degenerate: false })
}
