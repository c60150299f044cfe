//! Materialized subspace lattice of F_q^n with precomputed relation tables.
//!
//! Ids are contiguous and deterministic: subspaces are ordered by dimension,
//! then lexicographically by the canonical basis matrix read row-major.
//! Id 0 is the zero subspace and the last id is the full space. All of the
//! axiom verifiers run on these ids so their inner loops are table lookups.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::subspace::{enumerate_subspaces, gaussian_binomial, BilinearForm, Subspace};

/// Default cap on the number of subspaces that may be materialized.
pub const DEFAULT_LATTICE_CAP: usize = 1_000_000;

/// Pairwise sum/intersection tables are only precomputed below this size;
/// larger lattices fall back to on-the-fly computation.
const PAIR_TABLE_CAP: usize = 4096;

pub struct Lattice {
    field: Arc<FieldSpec>,
    n: usize,
    spaces: Vec<Subspace>,
    dims: Vec<u8>,
    dim_start: Vec<usize>,
    index: HashMap<Vec<u16>, u32>,
    /// subs[a] = ids of subspaces contained in a
    subs: Vec<IdSet>,
    /// sups[a] = ids of subspaces containing a
    sups: Vec<IdSet>,
    sum: Option<Vec<u32>>,
    inter: Option<Vec<u32>>,
}

impl Lattice {
    pub fn build(field: Arc<FieldSpec>, n: usize) -> Result<Arc<Lattice>> {
        Lattice::build_with_cap(field, n, DEFAULT_LATTICE_CAP)
    }

    pub fn build_with_cap(field: Arc<FieldSpec>, n: usize, cap: usize) -> Result<Arc<Lattice>> {
        let q = field.order() as u64;
        let count: u64 = (0..=n as u64).map(|k| gaussian_binomial(q, n as u64, k)).sum();
        if count as usize > cap {
            return Err(Error::CapExceeded {
                count: count as usize,
                cap,
            });
        }
        let mut spaces = Vec::with_capacity(count as usize);
        let mut dim_start = Vec::with_capacity(n + 2);
        for k in 0..=n {
            dim_start.push(spaces.len());
            spaces.extend(enumerate_subspaces(field.clone(), n, k)?);
        }
        dim_start.push(spaces.len());
        let dims: Vec<u8> = spaces.iter().map(|s| s.dim() as u8).collect();
        let index: HashMap<Vec<u16>, u32> = spaces
            .iter()
            .enumerate()
            .map(|(i, s)| (key_of(s), i as u32))
            .collect();

        let len = spaces.len();
        let mut lat = Lattice {
            field,
            n,
            spaces,
            dims,
            dim_start,
            index,
            subs: Vec::new(),
            sups: Vec::new(),
            sum: None,
            inter: None,
        };

        let mut subs: Vec<IdSet> = (0..len).map(|_| IdSet::new(len)).collect();
        let mut sups: Vec<IdSet> = (0..len).map(|_| IdSet::new(len)).collect();
        if len <= PAIR_TABLE_CAP {
            let mut sum = vec![0u32; len * len];
            let mut inter = vec![0u32; len * len];
            for a in 0..len {
                for b in 0..=a {
                    let s = lat.spaces[a].sum(&lat.spaces[b]).expect("same ambient");
                    let i = lat.spaces[a].intersect(&lat.spaces[b]).expect("same ambient");
                    let sid = lat.index[&key_of(&s)];
                    let iid = lat.index[&key_of(&i)];
                    sum[a * len + b] = sid;
                    sum[b * len + a] = sid;
                    inter[a * len + b] = iid;
                    inter[b * len + a] = iid;
                    if sid as usize == a {
                        // b ⊆ a
                        subs[a].insert(b);
                        sups[b].insert(a);
                    }
                    if sid as usize == b {
                        subs[b].insert(a);
                        sups[a].insert(b);
                    }
                }
            }
            lat.sum = Some(sum);
            lat.inter = Some(inter);
        } else {
            for a in 0..len {
                for b in 0..=a {
                    if lat.spaces[a].contains(&lat.spaces[b]).expect("same ambient") {
                        subs[a].insert(b);
                        sups[b].insert(a);
                    }
                    if lat.spaces[b].contains(&lat.spaces[a]).expect("same ambient") {
                        subs[b].insert(a);
                        sups[a].insert(b);
                    }
                }
            }
        }
        lat.subs = subs;
        lat.sups = sups;
        Ok(Arc::new(lat))
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.spaces.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn space(&self, id: usize) -> &Subspace {
        &self.spaces[id]
    }

    pub fn dim(&self, id: usize) -> usize {
        self.dims[id] as usize
    }

    pub fn id_of(&self, s: &Subspace) -> Result<usize> {
        if s.ambient_dim() != self.n || s.field() != &self.field {
            return Err(Error::AmbientMismatch);
        }
        self.index
            .get(&key_of(s))
            .map(|&i| i as usize)
            .ok_or(Error::NotInLattice)
    }

    pub fn zero_id(&self) -> usize {
        0
    }

    pub fn full_id(&self) -> usize {
        self.spaces.len() - 1
    }

    /// Contiguous id range of the k-dimensional subspaces.
    pub fn ids_of_dim(&self, k: usize) -> Range<usize> {
        if k > self.n {
            return 0..0;
        }
        self.dim_start[k]..self.dim_start[k + 1]
    }

    pub fn one_dims(&self) -> Range<usize> {
        self.ids_of_dim(1)
    }

    pub fn hyperplanes(&self) -> Range<usize> {
        self.ids_of_dim(self.n.saturating_sub(1))
    }

    #[inline]
    pub fn sum_id(&self, a: usize, b: usize) -> usize {
        match &self.sum {
            Some(t) => t[a * self.spaces.len() + b] as usize,
            None => {
                let s = self.spaces[a].sum(&self.spaces[b]).expect("same ambient");
                self.index[&key_of(&s)] as usize
            }
        }
    }

    #[inline]
    pub fn inter_id(&self, a: usize, b: usize) -> usize {
        match &self.inter {
            Some(t) => t[a * self.spaces.len() + b] as usize,
            None => {
                let s = self.spaces[a].intersect(&self.spaces[b]).expect("same ambient");
                self.index[&key_of(&s)] as usize
            }
        }
    }

    /// True iff lattice[b] ⊆ lattice[a].
    #[inline]
    pub fn contains_id(&self, a: usize, b: usize) -> bool {
        self.subs[a].contains(b)
    }

    pub fn subs_set(&self, a: usize) -> &IdSet {
        &self.subs[a]
    }

    pub fn sups_set(&self, a: usize) -> &IdSet {
        &self.sups[a]
    }

    /// Ids of the codimension-1 subspaces of `a`.
    pub fn hyperplanes_of(&self, a: usize) -> Vec<usize> {
        if self.dim(a) == 0 {
            return Vec::new();
        }
        self.ids_of_dim(self.dim(a) - 1)
            .filter(|&h| self.contains_id(a, h))
            .collect()
    }

    /// Ids of the B with a ⊂ B ⊆ within and dim B = dim a + 1.
    pub fn covers_above(&self, a: usize, within: usize) -> Vec<usize> {
        if self.dim(a) >= self.dim(within) {
            return Vec::new();
        }
        self.ids_of_dim(self.dim(a) + 1)
            .filter(|&b| self.contains_id(b, a) && self.contains_id(within, b))
            .collect()
    }

    /// The permutation id ↦ id of the orthogonal complement under `form`.
    pub fn perp_table(&self, form: &BilinearForm) -> Result<Vec<u32>> {
        if form.n() != self.n || form.gram().field() != &self.field {
            return Err(Error::AmbientMismatch);
        }
        let mut out = Vec::with_capacity(self.spaces.len());
        for s in &self.spaces {
            let p = s.perp(form)?;
            out.push(self.index[&key_of(&p)]);
        }
        Ok(out)
    }

    pub fn render(&self, id: usize) -> String {
        self.spaces[id].render()
    }
}

fn key_of(s: &Subspace) -> Vec<u16> {
    s.basis().entries().iter().map(|x| x.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat24() -> Arc<Lattice> {
        Lattice::build(FieldSpec::prime(2).unwrap(), 4).unwrap()
    }

    #[test]
    fn counts_and_layout() {
        let l = lat24();
        assert_eq!(l.len(), 67);
        let by_dim: Vec<usize> = (0..=4).map(|k| l.ids_of_dim(k).len()).collect();
        assert_eq!(by_dim, vec![1, 15, 35, 15, 1]);
        assert_eq!(l.dim(l.zero_id()), 0);
        assert_eq!(l.dim(l.full_id()), 4);

        let l5 = Lattice::build(FieldSpec::prime(2).unwrap(), 5).unwrap();
        assert_eq!(l5.len(), 374);
    }

    #[test]
    fn tables_agree_with_subspace_ops() {
        let l = lat24();
        for a in 0..l.len() {
            for b in 0..l.len() {
                let s = l.space(a).sum(l.space(b)).unwrap();
                assert_eq!(l.space(l.sum_id(a, b)), &s);
                let i = l.space(a).intersect(l.space(b)).unwrap();
                assert_eq!(l.space(l.inter_id(a, b)), &i);
                assert_eq!(l.contains_id(a, b), l.space(a).contains(l.space(b)).unwrap());
            }
        }
    }

    #[test]
    fn perp_table_is_involution() {
        let l = lat24();
        let form = BilinearForm::standard(l.field().clone(), 4);
        let t = l.perp_table(&form).unwrap();
        for id in 0..l.len() {
            assert_eq!(t[t[id] as usize] as usize, id);
            assert_eq!(l.dim(t[id] as usize), 4 - l.dim(id));
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            Lattice::build_with_cap(FieldSpec::prime(2).unwrap(), 4, 10),
            Err(Error::CapExceeded { count: 67, cap: 10 })
        ));
    }

    #[test]
    fn neighbor_queries() {
        let l = lat24();
        assert_eq!(l.covers_above(l.zero_id(), l.full_id()).len(), 15);
        assert_eq!(l.hyperplanes_of(l.full_id()).len(), 15);
        let two = l.ids_of_dim(2).next().unwrap();
        assert_eq!(l.hyperplanes_of(two).len(), 3);
    }
}
