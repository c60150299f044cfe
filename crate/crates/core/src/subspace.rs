//! Canonical subspaces of F_q^n and their lattice operations: span,
//! sum, intersection, orthogonal complement, covers and hyperplanes.
//!
//! Every subspace is stored by its reduced-row-echelon basis with no zero
//! rows, so two values are equal iff they are the same subspace.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::linalg::{MatGf, Rref};

/// A subspace of F_q^n in canonical (reduced-row-echelon) form.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    /// rref basis with no zero rows; empty for the zero subspace
    basis: MatGf,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace<{}>", self.render())
    }
}

impl Subspace {
    /// The canonical subspace spanned by the rows of `vectors`.
    pub fn span(field: Arc<FieldSpec>, n: usize, vectors: &MatGf) -> Result<Subspace> {
        if vectors.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: vectors.cols(),
            });
        }
        if vectors.field() != &field {
            return Err(Error::FieldMismatch);
        }
        let Rref { mat, pivots, rank } = vectors.rref();
        let mut basis = MatGf::zeros(field, rank, n);
        for r in 0..rank {
            for c in 0..n {
                basis.set(r, c, mat.get(r, c));
            }
        }
        Ok(Subspace { n, basis, pivots })
    }

    pub fn from_vectors(field: Arc<FieldSpec>, n: usize, vectors: &[Vec<Fe>]) -> Result<Subspace> {
        let m = MatGf::from_rows(field.clone(), n, vectors)?;
        Subspace::span(field, n, &m)
    }

    pub fn zero(field: Arc<FieldSpec>, n: usize) -> Subspace {
        Subspace {
            n,
            basis: MatGf::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Arc<FieldSpec>, n: usize) -> Subspace {
        Subspace {
            n,
            basis: MatGf::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatGf {
        &self.basis
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.n != other.n || self.field() != other.field() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Subspace::span(self.field().clone(), self.n, &stacked)
    }

    /// Intersection by the Zassenhaus block construction.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let field = self.field().clone();
        let n = self.n;
        let mut block = MatGf::zeros(field.clone(), self.dim() + other.dim(), 2 * n);
        for r in 0..self.dim() {
            for c in 0..n {
                let v = self.basis.get(r, c);
                block.set(r, c, v);
                block.set(r, n + c, v);
            }
        }
        for r in 0..other.dim() {
            for c in 0..n {
                block.set(self.dim() + r, c, other.basis.get(r, c));
            }
        }
        let reduced = block.rref().mat;
        let mut rows: Vec<Vec<Fe>> = Vec::new();
        for r in 0..reduced.rows() {
            let left_zero = (0..n).all(|c| reduced.get(r, c) == Fe::ZERO);
            let right = (n..2 * n).map(|c| reduced.get(r, c)).collect::<Vec<_>>();
            if left_zero && right.iter().any(|&x| x != Fe::ZERO) {
                rows.push(right);
            }
        }
        Subspace::from_vectors(field, n, &rows)
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        for r in 0..other.dim() {
            let residue = self.basis.reduce_row(&self.pivots, other.basis.row(r));
            if residue.iter().any(|&x| x != Fe::ZERO) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_vector(&self, v: &[Fe]) -> bool {
        let residue = self.basis.reduce_row(&self.pivots, v);
        residue.iter().all(|&x| x == Fe::ZERO)
    }

    /// Orthogonal complement under the given form:
    /// {v : b · G · vᵀ = 0 for every basis row b}.
    pub fn perp(&self, form: &BilinearForm) -> Result<Subspace> {
        if form.gram().cols() != self.n || form.gram().field() != self.field() {
            return Err(Error::AmbientMismatch);
        }
        let bg = self.basis.mul(form.gram())?;
        let k = bg.kernel();
        Subspace::span(self.field().clone(), self.n, &k)
    }

    /// All subspaces of codimension 1 inside this space.
    pub fn hyperplanes_inside(&self) -> Vec<Subspace> {
        if self.dim() == 0 {
            return Vec::new();
        }
        // hyperplanes of F_q^dim, pushed through the basis
        let field = self.field().clone();
        let inner = enumerate_subspaces(field.clone(), self.dim(), self.dim() - 1)
            .expect("dim-1 < dim");
        inner
            .into_iter()
            .map(|h| {
                let mapped = h.basis().mul(&self.basis).expect("shapes agree");
                Subspace::span(field.clone(), self.n, &mapped).expect("ambient agrees")
            })
            .collect()
    }

    /// All B with self ⊂ B ⊆ within and dim B = dim self + 1.
    pub fn covers_within(&self, within: &Subspace) -> Result<Vec<Subspace>> {
        self.check_ambient(within)?;
        if !within.contains(self)? {
            return Err(Error::NotContained);
        }
        let mut out = Vec::new();
        for x in one_dim_subspaces(self.field().clone(), self.n) {
            if !within.contains(&x)? || self.contains(&x)? {
                continue;
            }
            let b = self.sum(&x)?;
            if !out.contains(&b) {
                out.push(b);
            }
        }
        out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok(out)
    }

    /// Deterministic ordering key: dimension, then the canonical basis
    /// matrix read row-major.
    pub fn sort_key(&self) -> (usize, Vec<u16>) {
        (self.dim(), self.basis.entries().iter().map(|x| x.0).collect())
    }

    /// Text rendering: one digit string per basis vector, space separated.
    /// The zero subspace renders as `0` and the full space as `E`.
    pub fn render(&self) -> String {
        if self.dim() == 0 {
            return "0".to_string();
        }
        if self.dim() == self.n {
            return "E".to_string();
        }
        (0..self.dim())
            .map(|r| render_vector(self.basis.row(r)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Digit-string rendering of a single vector (one character per coordinate;
/// only supported for q ≤ 9).
pub fn render_vector(v: &[Fe]) -> String {
    v.iter()
        .map(|x| {
            debug_assert!(x.index() <= 9);
            char::from_digit(x.index() as u32, 10).unwrap_or('?')
        })
        .collect()
}

/// A nondegenerate bilinear form given by an invertible Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearForm {
    gram: MatGf,
}

impl BilinearForm {
    pub fn new(gram: MatGf) -> Result<BilinearForm> {
        if gram.rows() != gram.cols() {
            return Err(Error::ShapeMismatch("Gram matrix must be square".into()));
        }
        if gram.rank() != gram.rows() {
            return Err(Error::DegenerateForm);
        }
        Ok(BilinearForm { gram })
    }

    /// The standard dot product.
    pub fn standard(field: Arc<FieldSpec>, n: usize) -> BilinearForm {
        BilinearForm {
            gram: MatGf::identity(field, n),
        }
    }

    pub fn gram(&self) -> &MatGf {
        &self.gram
    }

    pub fn n(&self) -> usize {
        self.gram.rows()
    }
}

/// All k-dimensional subspaces of F_q^n, each exactly once, ordered by the
/// canonical basis matrix read row-major.
pub fn enumerate_subspaces(field: Arc<FieldSpec>, n: usize, k: usize) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::InvalidDimension { k, n });
    }
    let q = field.order();
    let mut out = Vec::new();
    // choose pivot columns, then sweep the free entries: every rref matrix
    // with k pivots arises exactly once
    for pivot_cols in combinations(n, k) {
        let mut free_slots = Vec::new();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            for c in pc + 1..n {
                if !pivot_cols.contains(&c) {
                    free_slots.push((r, c));
                }
            }
        }
        let total: u64 = (q as u64).pow(free_slots.len() as u32);
        for mut code in 0..total {
            let mut m = MatGf::zeros(field.clone(), k, n);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                m.set(r, pc, Fe::ONE);
            }
            for &(r, c) in &free_slots {
                m.set(r, c, Fe((code % q as u64) as u16));
                code /= q as u64;
            }
            out.push(Subspace {
                n,
                basis: m,
                pivots: pivot_cols.clone(),
            });
        }
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

/// All 1-dimensional subspaces, in enumeration order.
pub fn one_dim_subspaces(field: Arc<FieldSpec>, n: usize) -> Vec<Subspace> {
    enumerate_subspaces(field, n, 1).expect("1 <= n")
}

/// Gaussian binomial [n choose k]_q.
pub fn gaussian_binomial(q: u64, n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
