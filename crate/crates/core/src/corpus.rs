//! Named example constructions shared by the test-suite and the CLI.

use std::sync::Arc;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::lattice::Lattice;
use crate::qmatroid::QMatroid;
use crate::subspace::{BilinearForm, Subspace};

fn standard_form(lattice: &Arc<Lattice>) -> BilinearForm {
    BilinearForm::standard(lattice.field().clone(), lattice.n())
}

fn require_ambient(lattice: &Lattice, n: usize) -> Result<()> {
    if lattice.n() != n {
        return Err(Error::UnsupportedAmbient {
            required: n,
            got: lattice.n(),
        });
    }
    Ok(())
}

fn named_space(lattice: &Arc<Lattice>, vectors: &[&[u16]]) -> Subspace {
    let rows: Vec<Vec<Fe>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| Fe(x)).collect())
        .collect();
    Subspace::from_vectors(lattice.field().clone(), lattice.n(), &rows)
        .expect("valid construction vectors")
}

/// A pair (M1, M2) on F_2^4 for which the identity map is weak and satisfies
/// the basis-sandwich condition but is not strong.
///
/// M1 has every 3-dim subspace as a basis except E1' = <e1,e2,e3>;
/// M2 has every 2-dim subspace as a basis except E1 = <e1,e2> and
/// E2 = <e3,e4>.
pub fn weak_not_strong_pair(lattice: &Arc<Lattice>) -> Result<(QMatroid, QMatroid)> {
    require_ambient(lattice, 4)?;
    if lattice.field().order() != 2 {
        return Err(Error::PreconditionViolated(
            "construction is defined over GF(2)".into(),
        ));
    }
    let form = standard_form(lattice);
    let e123 = lattice.id_of(&named_space(
        lattice,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]],
    ))?;
    let b1 = IdSet::from_iter(lattice.len(), lattice.ids_of_dim(3).filter(|&id| id != e123));
    let m1 = QMatroid::from_basis_ids(lattice.clone(), &b1, form.clone())?;

    let e12 = lattice.id_of(&named_space(lattice, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]))?;
    let e34 = lattice.id_of(&named_space(lattice, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]))?;
    let b2 = IdSet::from_iter(
        lattice.len(),
        lattice.ids_of_dim(2).filter(|&id| id != e12 && id != e34),
    );
    let m2 = QMatroid::from_basis_ids(lattice.clone(), &b2, form)?;
    Ok((m1, m2))
}

/// The excluded spaces of `weak_not_strong_pair`, in the order
/// (<e1,e2,e3>, <e1,e2>, <e3,e4>), as lattice ids.
pub fn weak_not_strong_excluded(lattice: &Arc<Lattice>) -> Result<(usize, usize, usize)> {
    require_ambient(lattice, 4)?;
    let e123 = lattice.id_of(&named_space(
        lattice,
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]],
    ))?;
    let e12 = lattice.id_of(&named_space(lattice, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]))?;
    let e34 = lattice.id_of(&named_space(lattice, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]))?;
    Ok((e123, e12, e34))
}

/// A line spread of F_q^4: q^2 + 1 two-dimensional subspaces that pairwise
/// intersect trivially and jointly cover every 1-dim subspace. Built by
/// viewing F_q^4 as F_{q^2}^2 over the basis {1, w} of GF(q^2) and taking
/// the F_{q^2}-lines.
pub fn line_spread(lattice: &Arc<Lattice>) -> Result<Vec<usize>> {
    require_ambient(lattice, 4)?;
    let base = lattice.field();
    if base.degree() != 1 {
        return Err(Error::UnsupportedTower { q: base.order() });
    }
    let p = base.p();
    let top = FieldSpec::extension(p, 2)?;
    // coordinates of a in GF(p^2) over {1, w}
    let coords = |a: Fe| -> (Fe, Fe) { (Fe(a.0 % p), Fe(a.0 / p)) };
    let w = Fe(p);

    let mut lines = Vec::with_capacity(base.order() * base.order() + 1);
    // {(0, a)} : the line at infinity of the slope parametrization
    lines.push(lattice.id_of(&named_space(
        lattice,
        &[&[0, 0, 1, 0], &[0, 0, 0, 1]],
    ))?);
    // {(a, lambda a)} for each slope lambda in GF(q^2)
    for lam_idx in 0..top.order() {
        let lam = Fe(lam_idx as u16);
        let mut rows = Vec::with_capacity(2);
        for a in [Fe::ONE, w] {
            let (x0, x1) = coords(a);
            let (y0, y1) = coords(top.mul(lam, a));
            rows.push(vec![x0, x1, y0, y1]);
        }
        let s = Subspace::from_vectors(base.clone(), 4, &rows)?;
        lines.push(lattice.id_of(&s)?);
    }
    lines.sort_unstable();
    Ok(lines)
}

/// The two candidate restrictions of the spread family {0, E} ∪ S to a
/// hyperplane T, re-expressed on a 3-dimensional ambient lattice:
/// `keep` is {F ∈ 𝓕 : F ⊆ T} and `meet` is {F ∩ T : F ∈ 𝓕}.
pub struct RestrictionCandidates {
    pub sub: Arc<Lattice>,
    pub keep: IdSet,
    pub meet: IdSet,
    /// id of T itself (the full space of the sublattice)
    pub t_id: usize,
    /// id of the unique spread line inside T
    pub s_id: usize,
}

pub fn restriction_candidates(lattice: &Arc<Lattice>) -> Result<RestrictionCandidates> {
    let spread = line_spread(lattice)?;
    // T: the first hyperplane in lattice order; it contains exactly one
    // spread line
    let t = lattice.hyperplanes().next().expect("n = 4 has hyperplanes");
    let t_space = lattice.space(t).clone();
    let pivots: Vec<usize> = t_space
        .basis()
        .row_vecs()
        .iter()
        .map(|row| row.iter().position(|&e| e != Fe::ZERO).expect("no zero rows"))
        .collect();
    let field = lattice.field().clone();
    let sub = Lattice::build(field.clone(), 3)?;
    // coordinates of v ∈ T with respect to T's echelon basis are just its
    // pivot-column entries
    let project = |id: usize| -> Result<usize> {
        let rows: Vec<Vec<Fe>> = lattice
            .space(id)
            .basis()
            .row_vecs()
            .iter()
            .map(|v| pivots.iter().map(|&p| v[p]).collect())
            .collect();
        sub.id_of(&Subspace::from_vectors(field.clone(), 3, &rows)?)
    };

    let mut family = vec![lattice.zero_id(), lattice.full_id()];
    family.extend(&spread);
    let mut keep = IdSet::new(sub.len());
    let mut meet = IdSet::new(sub.len());
    let mut s_id = None;
    for f in family {
        if lattice.contains_id(t, f) {
            let p = project(f)?;
            keep.insert(p);
            if lattice.dim(f) == 2 {
                s_id = Some(p);
            }
        }
        meet.insert(project(lattice.inter_id(f, t))?);
    }
    Ok(RestrictionCandidates {
        t_id: sub.full_id(),
        s_id: s_id.expect("T contains exactly one spread line"),
        sub,
        keep,
        meet,
    })
}

/// The family of all even-dimensional subspaces of F_q^4: {0, E} together
/// with every 2-dim subspace.
pub fn even_dim_family(lattice: &Arc<Lattice>) -> Result<IdSet> {
    require_ambient(lattice, 4)?;
    let mut f = IdSet::new(lattice.len());
    f.insert(lattice.zero_id());
    f.insert(lattice.full_id());
    for id in lattice.ids_of_dim(2) {
        f.insert(id);
    }
    Ok(f)
}
