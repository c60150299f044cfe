//! Weak and strong map checks for the identity map between two q-matroids
//! on the same subspace lattice, with three cryptomorphic strong-map
//! criteria (rank differences, flats, circuits) and the basis-sandwich
//! condition.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::qmatroid::QMatroid;

/// Outcome of a map check: pass, or the first violation in lattice order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapReport {
    pub verdict: bool,
    pub witness: Option<MapWitness>,
}

impl MapReport {
    fn pass() -> Self {
        MapReport {
            verdict: true,
            witness: None,
        }
    }

    fn fail(witness: MapWitness) -> Self {
        MapReport {
            verdict: false,
            witness: Some(witness),
        }
    }
}

/// The violating subspace(s) of a failed map check, as lattice ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapWitness {
    /// r2(x) > r1(x)
    NotWeak { x: usize },
    /// y ⊆ x with r1(x) − r1(y) < r2(x) − r2(y)
    RankDiff { x: usize, y: usize },
    /// a flat of M2 that is not a flat of M1
    Flat { f: usize },
    /// a circuit of M1 that is not a sum of circuits of M2
    Circuit { c: usize },
    /// a basis of M2 contained in no basis of M1
    NoBasisAbove { b2: usize },
    /// a basis of M1 containing no basis of M2
    NoBasisBelow { b1: usize },
}

impl MapWitness {
    pub fn render(&self, lattice: &Lattice) -> String {
        match *self {
            MapWitness::NotWeak { x } => format!("X = {}", lattice.render(x)),
            MapWitness::RankDiff { x, y } => {
                format!("X = {}, Y = {}", lattice.render(x), lattice.render(y))
            }
            MapWitness::Flat { f } => format!("F = {}", lattice.render(f)),
            MapWitness::Circuit { c } => format!("C = {}", lattice.render(c)),
            MapWitness::NoBasisAbove { b2 } => format!("B2 = {}", lattice.render(b2)),
            MapWitness::NoBasisBelow { b1 } => format!("B1 = {}", lattice.render(b1)),
        }
    }
}

fn shared_lattice<'a>(m1: &'a QMatroid, m2: &QMatroid) -> Result<&'a Arc<Lattice>> {
    if !Arc::ptr_eq(m1.lattice(), m2.lattice()) {
        return Err(Error::LatticeMismatch);
    }
    Ok(m1.lattice())
}

/// Id: M1 → M2 is a weak map iff r2(X) ≤ r1(X) for every X.
pub fn is_weak(m1: &QMatroid, m2: &QMatroid) -> Result<MapReport> {
    let lat = shared_lattice(m1, m2)?;
    for x in 0..lat.len() {
        if m2.rank_id(x) > m1.rank_id(x) {
            return Ok(MapReport::fail(MapWitness::NotWeak { x }));
        }
    }
    Ok(MapReport::pass())
}

/// Strong map via rank differences: r1(X) − r1(Y) ≥ r2(X) − r2(Y) for all
/// Y ⊆ X.
pub fn is_strong_rankdiff(m1: &QMatroid, m2: &QMatroid) -> Result<MapReport> {
    let lat = shared_lattice(m1, m2)?;
    for x in 0..lat.len() {
        for y in lat.subs_set(x).iter() {
            if m1.rank_id(x) + m2.rank_id(y) < m2.rank_id(x) + m1.rank_id(y) {
                return Ok(MapReport::fail(MapWitness::RankDiff { x, y }));
            }
        }
    }
    Ok(MapReport::pass())
}

/// Strong map via flats: every flat of M2 is a flat of M1.
pub fn is_strong_flats(m1: &QMatroid, m2: &QMatroid) -> Result<MapReport> {
    shared_lattice(m1, m2)?;
    let f1 = m1.derived().flats;
    let f2 = m2.derived().flats;
    for f in f2.iter() {
        if !f1.contains(f) {
            return Ok(MapReport::fail(MapWitness::Flat { f }));
        }
    }
    Ok(MapReport::pass())
}

/// Strong map via circuits: every circuit of M1 is a sum of circuits of M2.
pub fn is_strong_circuits(m1: &QMatroid, m2: &QMatroid) -> Result<MapReport> {
    let lat = shared_lattice(m1, m2)?;
    let c1 = m1.derived().circuits;
    let c2 = m2.derived().circuits;
    for c in c1.iter() {
        // any sum of circuits equal to c only involves circuits inside c,
        // so it suffices to sum all of them
        let total = c2
            .iter()
            .filter(|&d| lat.contains_id(c, d))
            .fold(lat.zero_id(), |acc, d| lat.sum_id(acc, d));
        if total != c {
            return Ok(MapReport::fail(MapWitness::Circuit { c }));
        }
    }
    Ok(MapReport::pass())
}

/// Basis sandwich: every basis of M2 lies inside some basis of M1 and every
/// basis of M1 contains some basis of M2. Necessary but not sufficient for
/// the identity map to be strong.
pub fn basis_sandwich(m1: &QMatroid, m2: &QMatroid) -> Result<MapReport> {
    let lat = shared_lattice(m1, m2)?;
    let b1 = m1.derived().bases;
    let b2 = m2.derived().bases;
    for b in b2.iter() {
        if !b1.iter().any(|a| lat.contains_id(a, b)) {
            return Ok(MapReport::fail(MapWitness::NoBasisAbove { b2: b }));
        }
    }
    for a in b1.iter() {
        if !b2.iter().any(|b| lat.contains_id(a, b)) {
            return Ok(MapReport::fail(MapWitness::NoBasisBelow { b1: a }));
        }
    }
    Ok(MapReport::pass())
}
