//! q-Δ-matroids: feasible-space families with exhaustive checks of the
//! exchange axioms (F1)(F2) and the stronger pair (F3)(F4), duality, the
//! upper/lower q-matroids, saturation, the Δ-rank function and the birank.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::qmatroid::QMatroid;
use crate::subspace::BilinearForm;

/// Outcome of a feasibility-axiom check: pass, or the first violation in
/// lattice order over (X, Y, A).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaReport {
    pub verdict: bool,
    pub witness: Option<FeasibilityWitness>,
}

impl DeltaReport {
    fn pass() -> Self {
        DeltaReport {
            verdict: true,
            witness: None,
        }
    }

    fn fail(witness: FeasibilityWitness) -> Self {
        DeltaReport {
            verdict: false,
            witness: Some(witness),
        }
    }
}

/// A triple (X, Y, A) for which neither disjunct of the named axiom holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeasibilityWitness {
    pub axiom: &'static str,
    pub x: usize,
    pub y: usize,
    pub a: usize,
}

impl FeasibilityWitness {
    pub fn render(&self, lattice: &Lattice) -> String {
        format!(
            "X = {}, Y = {}, A = {}",
            lattice.render(self.x),
            lattice.render(self.y),
            lattice.render(self.a)
        )
    }
}

/// A family of feasible subspaces over a materialized lattice. Construction
/// does not validate the exchange axioms; run `check_f1f2` (or `check_f3f4`)
/// explicitly to classify the family.
#[derive(Clone)]
pub struct QDeltaMatroid {
    lattice: Arc<Lattice>,
    feasible: IdSet,
    form: BilinearForm,
    perp: Arc<Vec<u32>>,
}

impl PartialEq for QDeltaMatroid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) && self.feasible == other.feasible
    }
}
impl Eq for QDeltaMatroid {}

impl std::fmt::Debug for QDeltaMatroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "QDeltaMatroid(n={}, q={}, |F|={})",
            self.lattice.n(),
            self.lattice.field().order(),
            self.feasible.count()
        )
    }
}

impl QDeltaMatroid {
    pub fn new(lattice: Arc<Lattice>, feasible: IdSet, form: BilinearForm) -> Result<QDeltaMatroid> {
        if feasible.is_empty() {
            return Err(Error::EmptyFamily);
        }
        if form.n() != lattice.n() || form.gram().field() != lattice.field() {
            return Err(Error::AmbientMismatch);
        }
        let perp = Arc::new(lattice.perp_table(&form)?);
        Ok(QDeltaMatroid {
            lattice,
            feasible,
            form,
            perp,
        })
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn feasible(&self) -> &IdSet {
        &self.feasible
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn is_feasible(&self, id: usize) -> bool {
        self.feasible.contains(id)
    }

    fn perp_id(&self, id: usize) -> usize {
        self.perp[id] as usize
    }

    /// Disjunct (i)/(iii's dual): a hyperplane Z ⊇ A with Y ⊄ Z such that
    /// A + z is feasible for every 1-dim z ⊄ Z.
    fn exchange_up(&self, y: usize, a: usize) -> bool {
        let lat = &self.lattice;
        lat.hyperplanes().any(|z| {
            lat.contains_id(z, a)
                && !lat.contains_id(z, y)
                && lat
                    .one_dims()
                    .filter(|&l| !lat.contains_id(z, l))
                    .all(|l| self.feasible.contains(lat.sum_id(a, l)))
        })
    }

    /// Disjunct (iii): a 1-dim z ⊆ A with z ⊄ Y such that A ∩ Z is feasible
    /// for every hyperplane Z ⊅ z.
    fn exchange_down(&self, y: usize, a: usize) -> bool {
        let lat = &self.lattice;
        lat.one_dims().any(|z| {
            lat.contains_id(a, z)
                && !lat.contains_id(y, z)
                && lat
                    .hyperplanes()
                    .filter(|&h| !lat.contains_id(h, z))
                    .all(|h| self.feasible.contains(lat.inter_id(a, h)))
        })
    }

    /// Disjunct (ii): some hyperplane Z with Z ∩ A feasible. Holds in
    /// particular when A itself is feasible.
    fn removal(&self, a: usize) -> bool {
        let lat = &self.lattice;
        lat.hyperplanes()
            .any(|z| self.feasible.contains(lat.inter_id(z, a)))
    }

    /// Disjunct (iv): some 1-dim z with A + z feasible. Holds in particular
    /// when A itself is feasible.
    fn addition(&self, a: usize) -> bool {
        let lat = &self.lattice;
        lat.one_dims()
            .any(|z| self.feasible.contains(lat.sum_id(a, z)))
    }

    /// Whether (F1) holds at a single triple: A of codimension 1 in some
    /// feasible X, against the feasible space Y.
    pub fn f1_holds(&self, y: usize, a: usize) -> bool {
        self.removal(a) || self.exchange_up(y, a)
    }

    /// Whether (F2) holds at a single triple: A containing some feasible X
    /// of codimension 1, against the feasible space Y.
    pub fn f2_holds(&self, y: usize, a: usize) -> bool {
        self.addition(a) || self.exchange_down(y, a)
    }

    fn check(&self, strong: bool) -> DeltaReport {
        let lat = &self.lattice;
        let members: Vec<usize> = self.feasible.iter().collect();
        // (F1)/(F3): A of codimension 1 in X. The X loop is partitioned
        // across workers; the reduce keeps the minimum (x, y, a) triple so
        // the reported witness is schedule-independent.
        let down = members
            .par_iter()
            .filter_map(|&x| {
                let candidates = lat.hyperplanes_of(x);
                members
                    .iter()
                    .flat_map(|&y| candidates.iter().map(move |&a| (y, a)))
                    .find(|&(y, a)| {
                        let fallback = if strong {
                            self.feasible.contains(a)
                        } else {
                            self.removal(a)
                        };
                        !fallback && !self.exchange_up(y, a)
                    })
                    .map(|(y, a)| (x, y, a))
            })
            .min();
        if let Some((x, y, a)) = down {
            return DeltaReport::fail(FeasibilityWitness {
                axiom: if strong { "F3" } else { "F1" },
                x,
                y,
                a,
            });
        }
        // (F2)/(F4): X of codimension 1 in A
        let up = members
            .par_iter()
            .filter_map(|&x| {
                let candidates = lat.covers_above(x, lat.full_id());
                members
                    .iter()
                    .flat_map(|&y| candidates.iter().map(move |&a| (y, a)))
                    .find(|&(y, a)| {
                        let fallback = if strong {
                            self.feasible.contains(a)
                        } else {
                            self.addition(a)
                        };
                        !fallback && !self.exchange_down(y, a)
                    })
                    .map(|(y, a)| (x, y, a))
            })
            .min();
        if let Some((x, y, a)) = up {
            return DeltaReport::fail(FeasibilityWitness {
                axiom: if strong { "F4" } else { "F2" },
                x,
                y,
                a,
            });
        }
        DeltaReport::pass()
    }

    /// Exhaustive check of the q-Δ-matroid axioms (F1) and (F2) over all
    /// ordered pairs of feasible spaces, including X = Y.
    pub fn check_f1f2(&self) -> DeltaReport {
        self.check(false)
    }

    /// Number of (X, Y, A) triples violating (F1) or (F2); 0 means the
    /// family is a q-Δ-matroid. Used as a hill-climbing objective.
    pub fn violation_count(&self) -> usize {
        let lat = &self.lattice;
        let members: Vec<usize> = self.feasible.iter().collect();
        members
            .par_iter()
            .map(|&x| {
                let mut bad = 0;
                for &y in &members {
                    for a in lat.hyperplanes_of(x) {
                        if !self.f1_holds(y, a) {
                            bad += 1;
                        }
                    }
                    for a in lat.covers_above(x, lat.full_id()) {
                        if !self.f2_holds(y, a) {
                            bad += 1;
                        }
                    }
                }
                bad
            })
            .sum()
    }

    /// Exhaustive check of the stronger axioms (F3) and (F4), whose
    /// fallback disjuncts require A itself to be feasible.
    pub fn check_f3f4(&self) -> DeltaReport {
        self.check(true)
    }

    /// The dual family {F^⊥ : F feasible}, under the same form.
    pub fn dual(&self) -> QDeltaMatroid {
        let feasible = IdSet::from_iter(
            self.lattice.len(),
            self.feasible.iter().map(|f| self.perp_id(f)),
        );
        QDeltaMatroid {
            lattice: self.lattice.clone(),
            feasible,
            form: self.form.clone(),
            perp: self.perp.clone(),
        }
    }

    fn extreme_dims(&self) -> (usize, usize) {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for f in self.feasible.iter() {
            lo = lo.min(self.lattice.dim(f));
            hi = hi.max(self.lattice.dim(f));
        }
        (lo, hi)
    }

    /// The upper and lower q-matroids: the maximal-dimension feasibles and
    /// the minimal-dimension feasibles as basis families.
    pub fn upper_lower(&self) -> Result<(QMatroid, QMatroid)> {
        let (lo, hi) = self.extreme_dims();
        let upper_bases = IdSet::from_iter(
            self.lattice.len(),
            self.feasible.iter().filter(|&f| self.lattice.dim(f) == hi),
        );
        let lower_bases = IdSet::from_iter(
            self.lattice.len(),
            self.feasible.iter().filter(|&f| self.lattice.dim(f) == lo),
        );
        let upper = QMatroid::from_basis_ids(self.lattice.clone(), &upper_bases, self.form.clone())?;
        let lower = QMatroid::from_basis_ids(self.lattice.clone(), &lower_bases, self.form.clone())?;
        Ok((upper, lower))
    }

    /// Saturation: for all feasible Y ⊆ X, every Z with Y ⊆ Z ⊆ X is
    /// feasible. Returns the first missing Z with its bounds.
    pub fn is_saturated(&self) -> Option<(usize, usize, usize)> {
        let lat = &self.lattice;
        let members: Vec<usize> = self.feasible.iter().collect();
        for &x in &members {
            for &y in &members {
                if !lat.contains_id(x, y) {
                    continue;
                }
                for z in 0..lat.len() {
                    if lat.contains_id(x, z)
                        && lat.contains_id(z, y)
                        && !self.feasible.contains(z)
                    {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// The Δ-rank of A: n − min over feasible F of
    /// (dim A + dim F − 2 dim(A ∩ F)).
    pub fn rank_delta(&self, a: usize) -> usize {
        let lat = &self.lattice;
        let n = lat.n();
        let da = lat.dim(a);
        let dist = self
            .feasible
            .iter()
            .map(|f| da + lat.dim(f) - 2 * lat.dim(lat.inter_id(a, f)))
            .min()
            .expect("family is non-empty");
        n - dist
    }

    /// The birank of an orthogonal pair (X, Y) with Y ⊆ X^⊥:
    /// max over feasible F of dim(F ∩ X) + dim(F^⊥ ∩ Y).
    pub fn birank(&self, x: usize, y: usize) -> Result<usize> {
        let lat = &self.lattice;
        if !lat.contains_id(self.perp_id(x), y) {
            return Err(Error::NotOrthogonal);
        }
        Ok(self
            .feasible
            .iter()
            .map(|f| lat.dim(lat.inter_id(f, x)) + lat.dim(lat.inter_id(self.perp_id(f), y)))
            .max()
            .expect("family is non-empty"))
    }
}

/// Build the q-Δ-matroid arising from a q-matroid through one of its
/// cryptomorphic families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FromQMatroid {
    Bases,
    Independents,
    Spanning,
}

pub fn from_qmatroid(m: &QMatroid, kind: FromQMatroid) -> Result<QDeltaMatroid> {
    let d = m.derived();
    let feasible = match kind {
        FromQMatroid::Bases => d.bases,
        FromQMatroid::Independents => d.independents,
        FromQMatroid::Spanning => d.spanning,
    };
    QDeltaMatroid::new(m.lattice().clone(), feasible, m.form().clone())
}

/// Decide whether {0, E} ∪ D, for a family D of 2-dim subspaces of F_q^4,
/// is a q-Δ-matroid: this holds iff every 1-dim subspace is contained in
/// some member of D and every 3-dim subspace contains one.
pub fn dim4_two_dim_criterion(lattice: &Lattice, d: &IdSet) -> Result<bool> {
    if lattice.n() != 4 {
        return Err(Error::UnsupportedAmbient {
            required: 4,
            got: lattice.n(),
        });
    }
    for f in d.iter() {
        if lattice.dim(f) != 2 {
            return Err(Error::WrongDimensions { expected: 2 });
        }
    }
    let covers_points = lattice
        .one_dims()
        .all(|x| d.iter().any(|f| lattice.contains_id(f, x)));
    let meets_hyperplanes = lattice
        .hyperplanes()
        .all(|h| d.iter().any(|f| lattice.contains_id(h, f)));
    Ok(covers_points && meets_hyperplanes)
}
