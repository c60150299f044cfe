//! Rank-metric codes over an extension field GF(q^m), their rank supports
//! in F_q^n, and the q-matroids they represent via
//! r(X) = dim C − dim C(X^⊥).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::lattice::Lattice;
use crate::linalg::MatGf;
use crate::qmatroid::QMatroid;
use crate::subspace::{BilinearForm, Subspace};

/// The pair GF(q) ⊆ GF(q^m) with coordinate maps over the polynomial basis
/// {1, w, ..., w^{m−1}}. The base field must be prime.
#[derive(Debug, Clone)]
pub struct ExtFieldTower {
    base: Arc<FieldSpec>,
    top: Arc<FieldSpec>,
    m: usize,
}

impl ExtFieldTower {
    pub fn new(p: u16, m: usize) -> Result<ExtFieldTower> {
        Ok(ExtFieldTower {
            base: FieldSpec::prime(p)?,
            top: FieldSpec::extension(p, m)?,
            m,
        })
    }

    pub fn for_base(base: &Arc<FieldSpec>, m: usize) -> Result<ExtFieldTower> {
        if base.degree() != 1 {
            return Err(Error::UnsupportedTower { q: base.order() });
        }
        ExtFieldTower::new(base.p(), m)
    }

    pub fn base(&self) -> &Arc<FieldSpec> {
        &self.base
    }

    pub fn top(&self) -> &Arc<FieldSpec> {
        &self.top
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The base-field coordinates of a over {1, w, ..., w^{m−1}}.
    pub fn expand(&self, a: Fe) -> Vec<Fe> {
        self.top.coeffs(a).into_iter().map(Fe).collect()
    }

    pub fn recombine(&self, coords: &[Fe]) -> Result<Fe> {
        let digits: Vec<u16> = coords.iter().map(|c| c.0).collect();
        self.top.from_coeffs(&digits)
    }

    /// A base-field element viewed inside the extension field.
    pub fn lift(&self, a: Fe) -> Fe {
        a
    }

    pub fn pow(&self, a: Fe, e: usize) -> Fe {
        let mut acc = Fe::ONE;
        let mut sq = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.top.mul(acc, sq);
            }
            sq = self.top.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// The q-power Frobenius a ↦ a^q, q the base-field order.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.base.order())
    }
}

/// A linear rank-metric code: the row space of a full-rank k×n generator
/// matrix over GF(q^m).
#[derive(Debug, Clone)]
pub struct RankMetricCode {
    tower: Arc<ExtFieldTower>,
    gen: MatGf,
}

impl RankMetricCode {
    pub fn new(tower: Arc<ExtFieldTower>, gen: MatGf) -> Result<RankMetricCode> {
        if gen.field() != tower.top() {
            return Err(Error::FieldMismatch);
        }
        if gen.rank() != gen.rows() {
            return Err(Error::NotFullRank);
        }
        Ok(RankMetricCode { tower, gen })
    }

    /// The Gabidulin code of dimension k with evaluation points g: rows
    /// (g_j^{q^i}) for i = 0, ..., k−1. The points must be linearly
    /// independent over the base field.
    pub fn gabidulin(tower: Arc<ExtFieldTower>, g: &[Fe], k: usize) -> Result<RankMetricCode> {
        let n = g.len();
        if k > n || n > tower.m() {
            return Err(Error::InvalidDimension { k, n });
        }
        let coords: Vec<Vec<Fe>> = g.iter().map(|&x| tower.expand(x)).collect();
        let pts = MatGf::from_rows(tower.base().clone(), tower.m(), &coords)?;
        if pts.rank() != n {
            return Err(Error::PreconditionViolated(
                "evaluation points are linearly dependent over the base field".into(),
            ));
        }
        let mut rows = Vec::with_capacity(k);
        let mut cur: Vec<Fe> = g.to_vec();
        for _ in 0..k {
            rows.push(cur.clone());
            for x in cur.iter_mut() {
                *x = tower.frobenius(*x);
            }
        }
        let gen = MatGf::from_rows(tower.top().clone(), n, &rows)?;
        RankMetricCode::new(tower, gen)
    }

    pub fn tower(&self) -> &Arc<ExtFieldTower> {
        &self.tower
    }

    pub fn generator(&self) -> &MatGf {
        &self.gen
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    /// The rank support of a codeword: the F_q-span in F_q^n of the rows of
    /// its m×n coordinate expansion.
    pub fn rank_support(&self, c: &[Fe]) -> Result<Subspace> {
        if c.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: c.len(),
            });
        }
        let m = self.tower.m();
        let expansions: Vec<Vec<Fe>> = c.iter().map(|&x| self.tower.expand(x)).collect();
        let rows: Vec<Vec<Fe>> = (0..m)
            .map(|i| expansions.iter().map(|e| e[i]).collect())
            .collect();
        Subspace::from_vectors(self.tower.base().clone(), self.n(), &rows)
    }

    /// dim over GF(q^m) of the subcode C(J) = {c ∈ C : supp(c) ⊆ J}, for a
    /// subspace J of F_q^n. Solved as a base-field linear system in the
    /// k·m coordinates of the message vector.
    pub fn subcode_dim(&self, j: &Subspace) -> Result<usize> {
        if j.ambient_dim() != self.n() || j.field() != self.tower.base() {
            return Err(Error::AmbientMismatch);
        }
        let (k, n, m) = (self.k(), self.n(), self.tower.m());
        let base = self.tower.base().clone();
        // supp(c) ⊆ J iff every expansion row of c is annihilated by a
        // basis of the standard-dot annihilator of J
        let std = BilinearForm::standard(base.clone(), n);
        let ann = j.perp(&std)?;
        let ann_rows = ann.basis().row_vecs();
        if ann_rows.is_empty() {
            return Ok(k);
        }
        // message basis over the base field: x_{j,t} multiplies w^t e_j
        let mut rows = Vec::with_capacity(ann_rows.len() * m);
        for u in &ann_rows {
            // coeff_i( sum_l u_l c_l ) = 0 for all i
            let mut cons = vec![vec![Fe::ZERO; k * m]; m];
            for jj in 0..k {
                for t in 0..m {
                    // contribution of x_{jj,t}: sum_l u_l (w^t G_{jj,l})
                    let wt = self.tower.pow(Fe(base.p()), t);
                    let mut acc = Fe::ZERO;
                    for (l, &ul) in u.iter().enumerate() {
                        let prod = self.tower.top().mul(wt, self.gen.get(jj, l));
                        let scaled = self.tower.top().mul(self.tower.lift(ul), prod);
                        acc = self.tower.top().add(acc, scaled);
                    }
                    let coords = self.tower.expand(acc);
                    for (i, &ci) in coords.iter().enumerate() {
                        cons[i][jj * m + t] = ci;
                    }
                }
            }
            rows.extend(cons);
        }
        let sys = MatGf::from_rows(base, k * m, &rows)?;
        let sol_dim = k * m - sys.rank();
        if sol_dim % m != 0 {
            return Err(Error::InternalInconsistency(format!(
                "subcode solution dimension {sol_dim} is not a multiple of m = {m}"
            )));
        }
        Ok(sol_dim / m)
    }

    /// The rank function of the represented q-matroid:
    /// r(X) = k − dim C(X^⊥).
    pub fn rank_of(&self, x: &Subspace, form: &BilinearForm) -> Result<usize> {
        Ok(self.k() - self.subcode_dim(&x.perp(form)?)?)
    }

    /// Independent oracle for the rank function: r(X) = rank(G · Aᵀ) over
    /// GF(q^m), where the rows of A are a basis of X lifted entrywise.
    pub fn rank_oracle(&self, x: &Subspace) -> Result<usize> {
        if x.ambient_dim() != self.n() || x.field() != self.tower.base() {
            return Err(Error::AmbientMismatch);
        }
        if x.dim() == 0 {
            return Ok(0);
        }
        let lifted: Vec<Vec<Fe>> = x
            .basis()
            .row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(|e| self.tower.lift(e)).collect())
            .collect();
        let a = MatGf::from_rows(self.tower.top().clone(), self.n(), &lifted)?;
        Ok(self.gen.mul(&a.transpose())?.rank())
    }

    /// The q-matroid represented by the code on the given lattice.
    pub fn qmatroid(&self, lattice: Arc<Lattice>, form: BilinearForm) -> Result<QMatroid> {
        if lattice.n() != self.n() || lattice.field() != self.tower.base() {
            return Err(Error::AmbientMismatch);
        }
        let perp = lattice.perp_table(&form)?;
        let mut rank = Vec::with_capacity(lattice.len());
        for id in 0..lattice.len() {
            let j = lattice.space(perp[id] as usize);
            let r = self.k() - self.subcode_dim(j)?;
            // cross-assert the subcode formula against the product-rank
            // oracle; the two computations are independent
            let oracle = self.rank_oracle(lattice.space(id))?;
            if r != oracle {
                return Err(Error::InternalInconsistency(format!(
                    "rank disagreement at {}: subcode formula {r}, oracle {oracle}",
                    lattice.render(id)
                )));
            }
            rank.push(r as u8);
        }
        QMatroid::new(lattice, rank, form)
    }

    /// The dual code: the kernel of the generator as an (n−k)-dimensional
    /// code under the standard dot product over GF(q^m).
    pub fn dual(&self) -> Result<RankMetricCode> {
        let ker = self.gen.kernel();
        RankMetricCode::new(self.tower.clone(), ker)
    }
}

/// Verify C2 ⊆ C1 as row spaces over GF(q^m).
pub fn check_nested(c1: &RankMetricCode, c2: &RankMetricCode) -> Result<()> {
    if !Arc::ptr_eq(&c1.tower, &c2.tower) && c1.tower.top() != c2.tower.top() {
        return Err(Error::FieldMismatch);
    }
    if c1.n() != c2.n() {
        return Err(Error::LengthMismatch {
            expected: c1.n(),
            got: c2.n(),
        });
    }
    let stacked = c1.gen.vstack(&c2.gen)?;
    if stacked.rank() != c1.k() {
        return Err(Error::NotNested);
    }
    Ok(())
}

/// The q-matroid pair (M1 from C1, M2 from C2) of a nested pair C2 ⊆ C1.
/// The identity map M1 → M2 is a strong map.
pub fn nested_pair(
    c1: &RankMetricCode,
    c2: &RankMetricCode,
    lattice: Arc<Lattice>,
    form: BilinearForm,
) -> Result<(QMatroid, QMatroid)> {
    check_nested(c1, c2)?;
    let m1 = c1.qmatroid(lattice.clone(), form.clone())?;
    let m2 = c2.qmatroid(lattice, form)?;
    Ok((m1, m2))
}
