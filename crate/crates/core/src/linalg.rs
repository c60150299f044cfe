//! Exact dense matrices over GF(q): reduced row echelon form, kernels,
//! products. Rows over GF(2) are packed into machine words inside `rref`,
//! since that is the hot path of the axiom verifiers.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};

/// A rows x cols matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct MatGf {
    field: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<Fe>,
}

/// Result of `MatGf::rref`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub mat: MatGf,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl fmt::Debug for MatGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatGf {}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c).index())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl MatGf {
    pub fn zeros(field: Arc<FieldSpec>, rows: usize, cols: usize) -> MatGf {
        MatGf {
            field,
            rows,
            cols,
            entries: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn identity(field: Arc<FieldSpec>, n: usize) -> MatGf {
        let mut m = MatGf::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(field: Arc<FieldSpec>, cols: usize, rows: &[Vec<Fe>]) -> Result<MatGf> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            for &x in row {
                field.check(x)?;
                entries.push(x);
            }
        }
        Ok(MatGf {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatGf {
        let mut t = MatGf::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &MatGf) -> Result<MatGf> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(MatGf {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn mul(&self, other: &MatGf) -> Result<MatGf> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatGf::zeros(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == Fe::ZERO {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// The unique reduced row echelon form: leftmost pivot columns, each
    /// pivot 1 and alone in its column, zero rows at the bottom.
    pub fn rref(&self) -> Rref {
        if self.field.order() == 2 && self.cols <= 64 {
            return self.rref_gf2();
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, col) != Fe::ZERO) else {
                continue;
            };
            if pr != r {
                for c in 0..m.cols {
                    let (a, b) = (m.get(r, c), m.get(pr, c));
                    m.set(r, c, b);
                    m.set(pr, c, a);
                }
            }
            let inv = f.inv(m.get(r, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                m.set(r, c, f.mul(inv, m.get(r, c)));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, col);
                if factor == Fe::ZERO {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(i, c), f.mul(factor, m.get(r, c)));
                    m.set(i, c, v);
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        Rref {
            mat: m,
            rank: pivots.len(),
            pivots,
        }
    }

    fn rref_gf2(&self) -> Rref {
        debug_assert!(self.cols <= 64);
        let mut words: Vec<u64> = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .enumerate()
                    .fold(0u64, |w, (c, &x)| w | ((x.index() as u64 & 1) << c))
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let bit = 1u64 << col;
            let Some(pr) = (r..words.len()).find(|&i| words[i] & bit != 0) else {
                continue;
            };
            words.swap(r, pr);
            let pivot_row = words[r];
            for (i, w) in words.iter_mut().enumerate() {
                if i != r && *w & bit != 0 {
                    *w ^= pivot_row;
                }
            }
            pivots.push(col);
            r += 1;
            if r == words.len() {
                break;
            }
        }
        let mut mat = MatGf::zeros(self.field.clone(), self.rows, self.cols);
        for (i, &w) in words.iter().enumerate() {
            for c in 0..self.cols {
                if w >> c & 1 == 1 {
                    mat.set(i, c, Fe::ONE);
                }
            }
        }
        Rref {
            mat,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// A canonical basis (rows, in reduced echelon form) of the right
    /// kernel {x : M x = 0}.
    pub fn kernel(&self) -> MatGf {
        let Rref { mat, pivots, rank } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = MatGf::zeros(self.field.clone(), free.len(), self.cols);
        for (bi, &fc) in free.iter().enumerate() {
            basis.set(bi, fc, Fe::ONE);
            for (pi, &pc) in pivots.iter().enumerate().take(rank) {
                basis.set(bi, pc, f.neg(mat.get(pi, fc)));
            }
        }
        let reduced = basis.rref();
        let mut out = MatGf::zeros(self.field.clone(), reduced.rank, self.cols);
        for r in 0..reduced.rank {
            for c in 0..self.cols {
                out.set(r, c, reduced.mat.get(r, c));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == Fe::ZERO)
    }

    /// Reduce `v` against the rows of an rref matrix; returns the residue.
    /// The residue is zero iff `v` lies in the row space.
    pub fn reduce_row(&self, pivots: &[usize], v: &[Fe]) -> Vec<Fe> {
        debug_assert_eq!(v.len(), self.cols);
        let f = &self.field;
        let mut v = v.to_vec();
        for (r, &pc) in pivots.iter().enumerate() {
            let factor = v[pc];
            if factor == Fe::ZERO {
                continue;
            }
            for c in 0..self.cols {
                v[c] = f.sub(v[c], f.mul(factor, self.get(r, c)));
            }
        }
        v
    }
}
