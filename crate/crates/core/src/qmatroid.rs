//! q-matroids: rank tables over a materialized subspace lattice, axiom
//! validation, cryptomorphic derived families, duality, minors and
//! fundamental circuits.

use std::sync::Arc;

use rayon::prelude::*;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::subspace::{BilinearForm, Subspace};

/// Outcome of a rank-axiom check: pass, or the first violation in
/// deterministic lattice order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub verdict: bool,
    pub witness: Option<RankAxiomWitness>,
}

impl AxiomReport {
    pub fn pass() -> Self {
        AxiomReport {
            verdict: true,
            witness: None,
        }
    }

    pub fn fail(witness: RankAxiomWitness) -> Self {
        AxiomReport {
            verdict: false,
            witness: Some(witness),
        }
    }
}

/// The violating subspace(s) of a failed rank axiom, as lattice ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RankAxiomWitness {
    /// r(a) outside [0, dim a]
    R1 { a: usize },
    /// a ⊆ b but r(a) > r(b)
    R2 { a: usize, b: usize },
    /// r(a+b) + r(a∩b) > r(a) + r(b)
    R3 { a: usize, b: usize },
}

impl RankAxiomWitness {
    pub fn axiom(&self) -> &'static str {
        match self {
            RankAxiomWitness::R1 { .. } => "R1",
            RankAxiomWitness::R2 { .. } => "R2",
            RankAxiomWitness::R3 { .. } => "R3",
        }
    }

    pub fn render(&self, lattice: &Lattice) -> String {
        match *self {
            RankAxiomWitness::R1 { a } => format!("A = {}", lattice.render(a)),
            RankAxiomWitness::R2 { a, b } | RankAxiomWitness::R3 { a, b } => {
                format!("A = {}, B = {}", lattice.render(a), lattice.render(b))
            }
        }
    }
}

/// A q-matroid as an exact rank table over the full subspace lattice.
#[derive(Clone)]
pub struct QMatroid {
    lattice: Arc<Lattice>,
    rank: Vec<u8>,
    form: BilinearForm,
    perp: Arc<Vec<u32>>,
}

impl PartialEq for QMatroid {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.lattice, &other.lattice) && self.rank == other.rank
    }
}
impl Eq for QMatroid {}

impl std::fmt::Debug for QMatroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "QMatroid(n={}, q={}, r(E)={})",
            self.lattice.n(),
            self.lattice.field().order(),
            self.rank_e()
        )
    }
}

impl QMatroid {
    /// Build from a rank table and validate R1–R3; fails with the axiom
    /// witness if the table is not a q-matroid.
    pub fn new(lattice: Arc<Lattice>, rank: Vec<u8>, form: BilinearForm) -> Result<QMatroid> {
        let m = QMatroid::new_unchecked(lattice, rank, form)?;
        let report = m.validate()?;
        match report.witness {
            None => Ok(m),
            Some(w) => Err(Error::NotAQMatroid {
                axiom: w.axiom(),
                witness: w.render(&m.lattice),
            }),
        }
    }

    /// Build without validating; `validate` may then be used to obtain a
    /// full report on an arbitrary table.
    pub fn new_unchecked(
        lattice: Arc<Lattice>,
        rank: Vec<u8>,
        form: BilinearForm,
    ) -> Result<QMatroid> {
        if rank.len() != lattice.len() {
            return Err(Error::IncompleteTable);
        }
        if form.n() != lattice.n() || form.gram().field() != lattice.field() {
            return Err(Error::AmbientMismatch);
        }
        let perp = Arc::new(lattice.perp_table(&form)?);
        Ok(QMatroid {
            lattice,
            rank,
            form,
            perp,
        })
    }

    /// The uniform q-matroid U(k, n): r(A) = min(k, dim A).
    pub fn uniform(lattice: Arc<Lattice>, k: usize) -> Result<QMatroid> {
        Self::uniform_with_form(
            lattice.clone(),
            k,
            BilinearForm::standard(lattice.field().clone(), lattice.n()),
        )
    }

    pub fn uniform_with_form(
        lattice: Arc<Lattice>,
        k: usize,
        form: BilinearForm,
    ) -> Result<QMatroid> {
        if k > lattice.n() {
            return Err(Error::InvalidDimension { k, n: lattice.n() });
        }
        let rank = (0..lattice.len())
            .map(|id| lattice.dim(id).min(k) as u8)
            .collect();
        QMatroid::new(lattice, rank, form)
    }

    /// Reconstruct a q-matroid from a claimed basis family: candidate
    /// independents are all subspaces of members, candidate rank is the
    /// maximal dimension of a contained candidate. The result is returned
    /// only if R1–R3 hold and its bases reproduce the input family.
    pub fn from_bases(
        lattice: Arc<Lattice>,
        bases: &[Subspace],
        form: BilinearForm,
    ) -> Result<QMatroid> {
        let mut ids = IdSet::new(lattice.len());
        for b in bases {
            ids.insert(lattice.id_of(b)?);
        }
        QMatroid::from_basis_ids(lattice, &ids, form)
    }

    pub fn from_basis_ids(
        lattice: Arc<Lattice>,
        bases: &IdSet,
        form: BilinearForm,
    ) -> Result<QMatroid> {
        if bases.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let mut independent = IdSet::new(lattice.len());
        for b in bases.iter() {
            independent.union_with(lattice.subs_set(b));
        }
        let rank: Vec<u8> = (0..lattice.len())
            .map(|a| {
                lattice
                    .subs_set(a)
                    .iter()
                    .filter(|&i| independent.contains(i))
                    .map(|i| lattice.dim(i))
                    .max()
                    .unwrap_or(0) as u8
            })
            .collect();
        let m = QMatroid::new(lattice, rank, form)?;
        if &m.derived().bases != bases {
            return Err(Error::BasisMismatch);
        }
        Ok(m)
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn form(&self) -> &BilinearForm {
        &self.form
    }

    pub fn perp_id(&self, id: usize) -> usize {
        self.perp[id] as usize
    }

    #[inline]
    pub fn rank_id(&self, id: usize) -> usize {
        self.rank[id] as usize
    }

    pub fn rank_table(&self) -> &[u8] {
        &self.rank
    }

    pub fn rank_of(&self, s: &Subspace) -> Result<usize> {
        Ok(self.rank_id(self.lattice.id_of(s)?))
    }

    /// Rank of the ground space.
    pub fn rank_e(&self) -> usize {
        self.rank_id(self.lattice.full_id())
    }

    /// Exhaustive check of (R1) boundedness, (R2) monotonicity and
    /// (R3) submodularity, with the first witness in lattice order.
    pub fn validate(&self) -> Result<AxiomReport> {
        if self.rank.len() != self.lattice.len() {
            return Err(Error::IncompleteTable);
        }
        let lat = &self.lattice;
        for a in 0..lat.len() {
            if self.rank_id(a) > lat.dim(a) {
                return Ok(AxiomReport::fail(RankAxiomWitness::R1 { a }));
            }
        }
        // R2 on covering pairs; monotonicity on chains follows
        for b in 0..lat.len() {
            for a in lat.hyperplanes_of(b) {
                if self.rank_id(a) > self.rank_id(b) {
                    return Ok(AxiomReport::fail(RankAxiomWitness::R2 { a, b }));
                }
            }
        }
        let witness = (0..lat.len())
            .into_par_iter()
            .filter_map(|a| {
                (a..lat.len())
                    .find(|&b| {
                        self.rank_id(lat.sum_id(a, b)) + self.rank_id(lat.inter_id(a, b))
                            > self.rank_id(a) + self.rank_id(b)
                    })
                    .map(|b| (a, b))
            })
            .min();
        Ok(match witness {
            Some((a, b)) => AxiomReport::fail(RankAxiomWitness::R3 { a, b }),
            None => AxiomReport::pass(),
        })
    }

    pub fn is_independent(&self, id: usize) -> bool {
        self.rank_id(id) == self.lattice.dim(id)
    }

    /// All eight cryptomorphic families.
    pub fn derived(&self) -> DerivedFamilies {
        let lat = &self.lattice;
        let len = lat.len();
        let mut independents = IdSet::new(len);
        let mut spanning = IdSet::new(len);
        let mut loops = IdSet::new(len);
        let re = self.rank_e();
        for id in 0..len {
            if self.is_independent(id) {
                independents.insert(id);
            }
            if self.rank_id(id) == re {
                spanning.insert(id);
            }
            if lat.dim(id) == 1 && self.rank_id(id) == 0 {
                loops.insert(id);
            }
        }
        // bases: inclusion-maximal independents
        let mut bases = IdSet::new(len);
        for id in independents.iter() {
            let maximal = !lat
                .covers_above(id, lat.full_id())
                .iter()
                .any(|&b| independents.contains(b));
            if maximal {
                bases.insert(id);
            }
        }
        // circuits: dependent with every hyperplane independent
        let mut circuits = IdSet::new(len);
        for id in 0..len {
            if independents.contains(id) {
                continue;
            }
            if lat
                .hyperplanes_of(id)
                .iter()
                .all(|&h| independents.contains(h))
            {
                circuits.insert(id);
            }
        }
        // flats: every 1-dim extension strictly increases rank
        let mut flats = IdSet::new(len);
        for id in 0..len {
            let is_flat = lat.one_dims().all(|x| {
                lat.contains_id(id, x) || self.rank_id(lat.sum_id(id, x)) > self.rank_id(id)
            });
            if is_flat {
                flats.insert(id);
            }
        }
        // hyperplanes: maximal proper flats
        let mut hyperplanes = IdSet::new(len);
        for id in flats.iter() {
            if id == lat.full_id() {
                continue;
            }
            let maximal = !flats
                .iter()
                .any(|f| f != id && f != lat.full_id() && lat.contains_id(f, id));
            if maximal {
                hyperplanes.insert(id);
            }
        }
        let dual = self.dual();
        let mut coloops = IdSet::new(len);
        for x in lat.one_dims() {
            if dual.rank_id(x) == 0 {
                coloops.insert(x);
            }
        }
        DerivedFamilies {
            independents,
            bases,
            spanning,
            circuits,
            flats,
            hyperplanes,
            loops,
            coloops,
        }
    }

    /// Smallest flat containing the given space: adjoin rank-preserving
    /// 1-dim extensions until stable.
    pub fn closure_id(&self, a: usize) -> usize {
        let lat = &self.lattice;
        let mut cur = a;
        loop {
            let mut next = cur;
            for x in lat.one_dims() {
                if !lat.contains_id(next, x) {
                    let s = lat.sum_id(next, x);
                    if self.rank_id(s) == self.rank_id(cur) {
                        next = s;
                    }
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn closure(&self, a: &Subspace) -> Result<Subspace> {
        Ok(self
            .lattice
            .space(self.closure_id(self.lattice.id_of(a)?))
            .clone())
    }

    /// Dual q-matroid: r*(A) = dim A − r(E) + r(A^⊥).
    pub fn dual(&self) -> QMatroid {
        let lat = &self.lattice;
        let re = self.rank_e();
        let rank: Vec<u8> = (0..lat.len())
            .map(|a| (lat.dim(a) + self.rank_id(self.perp_id(a)) - re) as u8)
            .collect();
        QMatroid {
            lattice: self.lattice.clone(),
            rank,
            form: self.form.clone(),
            perp: self.perp.clone(),
        }
    }

    /// Restriction to `[0, X]` or contraction onto `[X, E]`, kept on the
    /// interval sublattice of the parent so witnesses stay expressed in E.
    pub fn minor(&self, x: &Subspace, kind: MinorKind) -> Result<IntervalQMatroid> {
        let anchor = self.lattice.id_of(x)?;
        let ids: Vec<usize> = match kind {
            MinorKind::Restrict => self.lattice.subs_set(anchor).iter().collect(),
            MinorKind::Contract => self.lattice.sups_set(anchor).iter().collect(),
        };
        let minor = IntervalQMatroid {
            parent: self.clone(),
            anchor,
            kind,
            ids,
        };
        if let Some(w) = minor.validate_interval() {
            return Err(Error::InternalInconsistency(format!(
                "minor violates {} at {}",
                w.axiom(),
                w.render(&self.lattice)
            )));
        }
        Ok(minor)
    }

    /// The unique circuit inside a dependent space A covering an
    /// independent X (fundamental-circuit lemma).
    pub fn fundamental_circuit(&self, x: &Subspace, a: &Subspace) -> Result<Subspace> {
        let lat = &self.lattice;
        let xid = lat.id_of(x)?;
        let aid = lat.id_of(a)?;
        if !self.is_independent(xid) {
            return Err(Error::PreconditionViolated("X is dependent".into()));
        }
        if !lat.contains_id(aid, xid) || lat.dim(aid) != lat.dim(xid) + 1 {
            return Err(Error::PreconditionViolated(
                "X must have codimension 1 in A".into(),
            ));
        }
        if self.is_independent(aid) {
            return Err(Error::PreconditionViolated("A is independent".into()));
        }
        // exhaustive search over circuits within A
        let circuits: Vec<usize> = lat
            .subs_set(aid)
            .iter()
            .filter(|&c| {
                !self.is_independent(c)
                    && lat
                        .hyperplanes_of(c)
                        .iter()
                        .all(|&h| self.is_independent(h))
            })
            .collect();
        match circuits.as_slice() {
            [c] => Ok(lat.space(*c).clone()),
            _ => Err(Error::NonUnique {
                count: circuits.len(),
            }),
        }
    }
}

/// The cryptomorphic families of a q-matroid, as lattice-id sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedFamilies {
    pub independents: IdSet,
    pub bases: IdSet,
    pub spanning: IdSet,
    pub circuits: IdSet,
    pub flats: IdSet,
    pub hyperplanes: IdSet,
    pub loops: IdSet,
    pub coloops: IdSet,
}

impl DerivedFamilies {
    /// Cross-validate the derived families against the independence (nI3),
    /// spanning (nS3) and circuit (C3) axiom systems.
    pub fn verify_axioms(&self, lattice: &Lattice) -> Result<()> {
        if let Some((i, j)) = check_ni3(lattice, &self.independents) {
            return Err(Error::InternalInconsistency(format!(
                "(nI3) fails for I = {}, J = {}",
                lattice.render(i),
                lattice.render(j)
            )));
        }
        if let Some((s1, s2)) = check_ns3(lattice, &self.spanning) {
            return Err(Error::InternalInconsistency(format!(
                "(nS3) fails for S1 = {}, S2 = {}",
                lattice.render(s1),
                lattice.render(s2)
            )));
        }
        if let Some((c1, c2, x)) = check_c3(lattice, &self.circuits) {
            return Err(Error::InternalInconsistency(format!(
                "(C3) fails for C1 = {}, C2 = {}, X = {}",
                lattice.render(c1),
                lattice.render(c2),
                lattice.render(x)
            )));
        }
        Ok(())
    }
}

/// (nI3): for independents I, J with dim I < dim J there is a hyperplane
/// X ⊇ I with J ⊄ X such that I + x is independent for every 1-dim x ⊄ X.
pub fn check_ni3(lattice: &Lattice, independents: &IdSet) -> Option<(usize, usize)> {
    let members: Vec<usize> = independents.iter().collect();
    for &i in &members {
        for &j in &members {
            if lattice.dim(i) >= lattice.dim(j) {
                continue;
            }
            let ok = lattice.hyperplanes().any(|x| {
                lattice.contains_id(x, i)
                    && !lattice.contains_id(x, j)
                    && lattice
                        .one_dims()
                        .filter(|&z| !lattice.contains_id(x, z))
                        .all(|z| independents.contains(lattice.sum_id(i, z)))
            });
            if !ok {
                return Some((i, j));
            }
        }
    }
    None
}

/// (nB3): for bases B1, B2 and each A of codimension 1 in B1 there is a
/// hyperplane X ⊇ A with B2 ⊄ X such that A + x is a basis for every
/// 1-dim x ⊄ X.
pub fn check_nb3(lattice: &Lattice, bases: &IdSet) -> Option<(usize, usize, usize)> {
    let members: Vec<usize> = bases.iter().collect();
    for &b1 in &members {
        for &b2 in &members {
            for a in lattice.hyperplanes_of(b1) {
                let ok = lattice.hyperplanes().any(|x| {
                    lattice.contains_id(x, a)
                        && !lattice.contains_id(x, b2)
                        && lattice
                            .one_dims()
                            .filter(|&z| !lattice.contains_id(x, z))
                            .all(|z| bases.contains(lattice.sum_id(a, z)))
                });
                if !ok {
                    return Some((b1, b2, a));
                }
            }
        }
    }
    None
}

/// (nS3): for spanning S1, S2 with dim S2 < dim S1 there is a 1-dim
/// x ⊆ S1, x ⊄ S2 such that X ∩ S1 is spanning for every hyperplane X ⊅ x.
pub fn check_ns3(lattice: &Lattice, spanning: &IdSet) -> Option<(usize, usize)> {
    let members: Vec<usize> = spanning.iter().collect();
    for &s1 in &members {
        for &s2 in &members {
            if lattice.dim(s2) >= lattice.dim(s1) {
                continue;
            }
            let ok = lattice.one_dims().any(|x| {
                lattice.contains_id(s1, x)
                    && !lattice.contains_id(s2, x)
                    && lattice
                        .hyperplanes()
                        .filter(|&h| !lattice.contains_id(h, x))
                        .all(|h| spanning.contains(lattice.inter_id(h, s1)))
            });
            if !ok {
                return Some((s1, s2));
            }
        }
    }
    None
}

/// (C3): for distinct circuits C1, C2 and any hyperplane X there is a
/// circuit inside (C1 + C2) ∩ X.
pub fn check_c3(lattice: &Lattice, circuits: &IdSet) -> Option<(usize, usize, usize)> {
    let members: Vec<usize> = circuits.iter().collect();
    for &c1 in &members {
        for &c2 in &members {
            if c1 == c2 {
                continue;
            }
            for x in lattice.hyperplanes() {
                let target = lattice.inter_id(lattice.sum_id(c1, c2), x);
                let ok = members
                    .iter()
                    .any(|&c3| lattice.contains_id(target, c3));
                if !ok {
                    return Some((c1, c2, x));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorKind {
    Restrict,
    Contract,
}

/// A restriction M|_X or contraction M/X, carried on the interval
/// sublattice [0, X] resp. [X, E] of the parent lattice.
#[derive(Clone)]
pub struct IntervalQMatroid {
    parent: QMatroid,
    anchor: usize,
    kind: MinorKind,
    ids: Vec<usize>,
}

impl IntervalQMatroid {
    pub fn kind(&self) -> MinorKind {
        self.kind
    }

    pub fn anchor_id(&self) -> usize {
        self.anchor
    }

    pub fn parent(&self) -> &QMatroid {
        &self.parent
    }

    /// Members of the interval, in lattice order.
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// Rank of an interval member; for contractions this is
    /// r(A) − r(X).
    pub fn rank_id(&self, id: usize) -> Result<usize> {
        if !self.member(id) {
            return Err(Error::NotContained);
        }
        Ok(match self.kind {
            MinorKind::Restrict => self.parent.rank_id(id),
            MinorKind::Contract => self.parent.rank_id(id) - self.parent.rank_id(self.anchor),
        })
    }

    /// Dimension of an interval member relative to the interval bottom.
    pub fn relative_dim(&self, id: usize) -> usize {
        match self.kind {
            MinorKind::Restrict => self.parent.lattice.dim(id),
            MinorKind::Contract => self.parent.lattice.dim(id) - self.parent.lattice.dim(self.anchor),
        }
    }

    /// Manual comparison tool: do the rank tables of two minors agree under
    /// a caller-supplied bijection of interval members? No canonical
    /// identification between a contraction interval [X, E] and a
    /// restriction interval [0, X^⊥] exists in general, so the
    /// correspondence must be supplied.
    pub fn ranks_agree_under<F>(&self, other: &IntervalQMatroid, map: F) -> Result<bool>
    where
        F: Fn(usize) -> usize,
    {
        for &id in &self.ids {
            let image = map(id);
            if !other.member(image) {
                return Err(Error::NotContained);
            }
            if self.relative_dim(id) != other.relative_dim(image)
                || self.rank_id(id)? != other.rank_id(image)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn member(&self, id: usize) -> bool {
        let lat = &self.parent.lattice;
        match self.kind {
            MinorKind::Restrict => lat.contains_id(self.anchor, id),
            MinorKind::Contract => lat.contains_id(id, self.anchor),
        }
    }

    /// R1–R3 relative to the interval; `None` means pass.
    fn validate_interval(&self) -> Option<RankAxiomWitness> {
        let lat = &self.parent.lattice;
        for &a in &self.ids {
            let r = self.rank_id(a).expect("member");
            if r > self.relative_dim(a) {
                return Some(RankAxiomWitness::R1 { a });
            }
            for &b in &self.ids {
                if a > b {
                    continue;
                }
                let (ra, rb) = (r, self.rank_id(b).expect("member"));
                if lat.contains_id(b, a) && ra > rb {
                    return Some(RankAxiomWitness::R2 { a, b });
                }
                let s = self.rank_id(lat.sum_id(a, b)).expect("interval closed under sum");
                let i = self.rank_id(lat.inter_id(a, b)).expect("interval closed under meet");
                if s + i > ra + rb {
                    return Some(RankAxiomWitness::R3 { a, b });
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;
    use crate::lattice::Lattice;
    use crate::subspace::Subspace;
    use crate::gf::Fe;

    fn lat24() -> Arc<Lattice> {
        Lattice::build(FieldSpec::prime(2).unwrap(), 4).unwrap()
    }

    fn form(l: &Arc<Lattice>) -> BilinearForm {
        BilinearForm::standard(l.field().clone(), l.n())
    }

    fn sp(l: &Arc<Lattice>, vectors: &[&str]) -> Subspace {
        let rows: Vec<Vec<Fe>> = vectors
            .iter()
            .map(|v| v.chars().map(|c| Fe(c.to_digit(10).unwrap() as u16)).collect())
            .collect();
        Subspace::from_vectors(l.field().clone(), l.n(), &rows).unwrap()
    }

    /// The q-matroid M1 of the weak-but-not-strong construction: bases are
    /// all 3-dim subspaces except <e1,e2,e3>.
    pub(crate) fn m1_bases(l: &Arc<Lattice>) -> IdSet {
        let excluded = l.id_of(&sp(l, &["1000", "0100", "0010"])).unwrap();
        IdSet::from_iter(l.len(), l.ids_of_dim(3).filter(|&id| id != excluded))
    }

    #[test]
    fn uniform_validates() {
        let l = lat24();
        for k in 0..=4 {
            let m = QMatroid::uniform(l.clone(), k).unwrap();
            assert!(m.validate().unwrap().verdict);
        }
        assert!(QMatroid::uniform(l, 5).is_err());
    }

    #[test]
    fn validate_catches_r1() {
        let l = lat24();
        let mut rank: Vec<u8> = (0..l.len()).map(|id| l.dim(id).min(2) as u8).collect();
        rank[l.zero_id()] = 1;
        let m = QMatroid::new_unchecked(l.clone(), rank, form(&l)).unwrap();
        let rep = m.validate().unwrap();
        assert_eq!(rep.witness, Some(RankAxiomWitness::R1 { a: l.zero_id() }));
    }

    #[test]
    fn uniform_bases_and_circuits() {
        let l = lat24();
        let u24 = QMatroid::uniform(l.clone(), 2).unwrap();
        let d = u24.derived();
        // bases = all 35 two-dim subspaces
        assert_eq!(d.bases.count(), 35);
        assert!(l.ids_of_dim(2).all(|id| d.bases.contains(id)));
        // circuits = all 15 three-dim subspaces
        assert_eq!(d.circuits.count(), 15);
        assert!(l.ids_of_dim(3).all(|id| d.circuits.contains(id)));
        d.verify_axioms(&l).unwrap();

        let u04 = QMatroid::uniform(l.clone(), 0).unwrap();
        let d0 = u04.derived();
        assert_eq!(d0.loops.count(), 15);
        assert_eq!(d0.bases.count(), 1);
        assert!(d0.bases.contains(l.zero_id()));
        let u44 = QMatroid::uniform(l.clone(), 4).unwrap();
        assert_eq!(u44.derived().bases.count(), 1);
        assert!(u44.derived().bases.contains(l.full_id()));
    }

    #[test]
    fn from_bases_uniform_roundtrip() {
        let l = lat24();
        let bases = IdSet::from_iter(l.len(), l.ids_of_dim(2));
        let m = QMatroid::from_basis_ids(l.clone(), &bases, form(&l)).unwrap();
        let u24 = QMatroid::uniform(l, 2).unwrap();
        assert_eq!(m, u24);
    }

    #[test]
    fn from_bases_m1_counterexample() {
        let l = lat24();
        let m1 = QMatroid::from_basis_ids(l.clone(), &m1_bases(&l), form(&l)).unwrap();
        // r1(<e1,e2,e3>) = 2 and it is the unique dependent 3-dim space
        let e123 = l.id_of(&sp(&l, &["1000", "0100", "0010"])).unwrap();
        assert_eq!(m1.rank_id(e123), 2);
        let d = m1.derived();
        assert_eq!(d.bases.count(), 14);
        assert!(!d.independents.contains(e123));
        for id in l.ids_of_dim(3) {
            if id != e123 {
                assert!(d.independents.contains(id));
            }
        }
        d.verify_axioms(&l).unwrap();
    }

    #[test]
    fn from_bases_spread_fails() {
        let l = lat24();
        // a spread: 5 pairwise trivially-intersecting 2-dim subspaces
        let spread = [
            sp(&l, &["1000", "0100"]),
            sp(&l, &["0010", "0001"]),
            sp(&l, &["1010", "0101"]),
            sp(&l, &["1001", "0111"]),
            sp(&l, &["1011", "0110"]),
        ];
        // sanity: pairwise trivial intersections
        for i in 0..5 {
            for j in 0..i {
                assert_eq!(spread[i].intersect(&spread[j]).unwrap().dim(), 0);
            }
        }
        let err = QMatroid::from_bases(l, &spread, form(&lat24())).unwrap_err();
        assert!(matches!(err, Error::NotAQMatroid { .. }));
    }

    #[test]
    fn closure_properties() {
        let l = lat24();
        let u24 = QMatroid::uniform(l.clone(), 2).unwrap();
        let d = u24.derived();
        // flats are closure-fixed
        for f in d.flats.iter() {
            assert_eq!(u24.closure_id(f), f);
        }
        // any 3-dim space closes to E in U(2,4)
        for a in l.ids_of_dim(3) {
            assert_eq!(u24.closure_id(a), l.full_id());
        }
        // monotone, rank-preserving
        for a in 0..l.len() {
            assert_eq!(u24.rank_id(u24.closure_id(a)), u24.rank_id(a));
            for b in 0..l.len() {
                if l.contains_id(b, a) {
                    assert!(l.contains_id(u24.closure_id(b), u24.closure_id(a)));
                }
            }
        }
    }

    #[test]
    fn dual_examples() {
        let l = lat24();
        let u24 = QMatroid::uniform(l.clone(), 2).unwrap();
        // U(2,4) is self-dual
        assert_eq!(u24.dual(), u24);
        // dual(U(0,n)) = U(n,n)
        let u04 = QMatroid::uniform(l.clone(), 0).unwrap();
        let u44 = QMatroid::uniform(l.clone(), 4).unwrap();
        assert_eq!(u04.dual(), u44);
        // r*(<e1,e2>) = 2 − 2 + r(<e3,e4>) = 2
        let a = l.id_of(&sp(&l, &["1000", "0100"])).unwrap();
        assert_eq!(u24.dual().rank_id(a), 2);
        // involution and validity
        let m1 = QMatroid::from_basis_ids(l.clone(), &m1_bases(&l), form(&l)).unwrap();
        for m in [&u24, &u04, &m1] {
            assert_eq!(&m.dual().dual(), m);
            assert!(m.dual().validate().unwrap().verdict);
        }
        // derived(dual).bases = perp of bases
        let db = m1.dual().derived().bases;
        let expected = IdSet::from_iter(
            l.len(),
            m1.derived().bases.iter().map(|b| m1.perp_id(b)),
        );
        assert_eq!(db, expected);
    }

    #[test]
    fn minors() {
        let l = lat24();
        let u24 = QMatroid::uniform(l.clone(), 2).unwrap();
        // restriction to a 3-dim space looks like U(2,3)
        let x = sp(&l, &["1000", "0100", "0010"]);
        let r = u24.minor(&x, MinorKind::Restrict).unwrap();
        for &id in r.ids() {
            assert_eq!(r.rank_id(id).unwrap(), l.dim(id).min(2));
        }
        // contraction by {0} is M itself
        let z = Subspace::zero(l.field().clone(), 4);
        let c = u24.minor(&z, MinorKind::Contract).unwrap();
        for &id in c.ids() {
            assert_eq!(c.rank_id(id).unwrap(), u24.rank_id(id));
        }
        // contraction of U(2,4) by a line looks like U(1,3)
        let x1 = sp(&l, &["1000"]);
        let c1 = u24.minor(&x1, MinorKind::Contract).unwrap();
        for &id in c1.ids() {
            assert_eq!(c1.rank_id(id).unwrap(), c1.relative_dim(id).min(1));
        }
        // manual rank-table comparison: M/0 and M|E agree under identity,
        // while M/<e1> and M|<e1>^perp differ (U(1,3) vs U(2,3))
        let full = u24.minor(&l.space(l.full_id()).clone(), MinorKind::Restrict).unwrap();
        assert!(c.ranks_agree_under(&full, |id| id).unwrap());
        let x1perp = sp(&l, &["0100", "0010", "0001"]);
        let rperp = u24.minor(&x1perp, MinorKind::Restrict).unwrap();
        let x1perpid = l.id_of(&x1perp).unwrap();
        assert!(!c1
            .ranks_agree_under(&rperp, |id| l.inter_id(id, x1perpid))
            .unwrap());
    }

    #[test]
    fn fundamental_circuits() {
        let l = lat24();
        let u24 = QMatroid::uniform(l.clone(), 2).unwrap();
        let x = sp(&l, &["1000", "0100"]);
        let a = sp(&l, &["1000", "0100", "0010"]);
        // all 3-dims are circuits of U(2,4): C = A itself
        assert_eq!(u24.fundamental_circuit(&x, &a).unwrap(), a);
        // M1: exactly one circuit inside A
        let m1 = QMatroid::from_basis_ids(l.clone(), &m1_bases(&l), form(&l)).unwrap();
        let c = m1.fundamental_circuit(&x, &a).unwrap();
        assert!(a.contains(&c).unwrap());
        let cid = l.id_of(&c).unwrap();
        assert!(!m1.is_independent(cid));
        // A independent → precondition violated
        let small = sp(&l, &["1000"]);
        assert!(matches!(
            u24.fundamental_circuit(&small, &x),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn no_line_in_every_basis() {
        // unless the only basis is E itself
        let l = lat24();
        let m1 = QMatroid::from_basis_ids(l.clone(), &m1_bases(&l), form(&l)).unwrap();
        for m in [
            QMatroid::uniform(l.clone(), 0).unwrap(),
            QMatroid::uniform(l.clone(), 2).unwrap(),
            QMatroid::uniform(l.clone(), 4).unwrap(),
            m1,
        ] {
            let bases: Vec<usize> = m.derived().bases.iter().collect();
            if bases == vec![l.full_id()] {
                continue;
            }
            for x in l.one_dims() {
                assert!(
                    !bases.iter().all(|&b| l.contains_id(b, x)),
                    "a line is contained in every basis"
                );
            }
        }
    }

    #[test]
    fn cryptomorphism_roundtrip() {
        let l = lat24();
        let m1 = QMatroid::from_basis_ids(l.clone(), &m1_bases(&l), form(&l)).unwrap();
        for m in [QMatroid::uniform(l.clone(), 2).unwrap(), m1] {
            let rebuilt =
                QMatroid::from_basis_ids(l.clone(), &m.derived().bases, form(&l)).unwrap();
            assert_eq!(rebuilt.rank_table(), m.rank_table());
        }
    }

    #[test]
    fn unit_rank_increase() {
        let l = lat24();
        let m1 = QMatroid::from_basis_ids(l.clone(), &m1_bases(&l), form(&l)).unwrap();
        for m in [QMatroid::uniform(l.clone(), 2).unwrap(), m1] {
            for a in 0..l.len() {
                for x in l.one_dims() {
                    let s = l.sum_id(a, x);
                    assert!(m.rank_id(a) <= m.rank_id(s));
                    assert!(m.rank_id(s) <= m.rank_id(a) + 1);
                }
            }
        }
    }
}
