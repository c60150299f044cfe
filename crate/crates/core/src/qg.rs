//! q-g-matroids and weak q-g-matroids: interval families carved out of a
//! pair of q-matroids on the same lattice. A weak pair is certified by the
//! basis-sandwich condition, a strong pair by the strong-map criterion.

use std::sync::Arc;

use crate::bitset::IdSet;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::qdelta::QDeltaMatroid;
use crate::qmatroid::QMatroid;
use crate::strongmap;

fn shared_lattice<'a>(m1: &'a QMatroid, m2: &QMatroid) -> Result<&'a Arc<Lattice>> {
    if !Arc::ptr_eq(m1.lattice(), m2.lattice()) {
        return Err(Error::LatticeMismatch);
    }
    Ok(m1.lattice())
}

/// The interval family of a pair: all F with B2 ⊆ F ⊆ B1 for some basis B2
/// of M2 and some basis B1 of M1. Equivalently, the spaces that are
/// independent in M1 and spanning in M2.
pub fn interval_family(m1: &QMatroid, m2: &QMatroid) -> Result<IdSet> {
    let lat = shared_lattice(m1, m2)?;
    let mut below = IdSet::new(lat.len());
    for b in m1.derived().bases.iter() {
        below.union_with(lat.subs_set(b));
    }
    let mut above = IdSet::new(lat.len());
    for b in m2.derived().bases.iter() {
        above.union_with(lat.sups_set(b));
    }
    below.intersect_with(&above);
    Ok(below)
}

/// A certified pair of q-matroids. `weak` requires the basis-sandwich
/// condition; `strong` requires the identity map M1 → M2 to be strong.
#[derive(Debug, Clone)]
pub struct QGPair {
    m1: QMatroid,
    m2: QMatroid,
    strong: bool,
}

impl QGPair {
    /// Certify a weak pair: every basis of M2 lies in a basis of M1 and
    /// every basis of M1 contains a basis of M2.
    pub fn weak(m1: QMatroid, m2: QMatroid) -> Result<QGPair> {
        let report = strongmap::basis_sandwich(&m1, &m2)?;
        if !report.verdict {
            let w = report.witness.expect("failed report has a witness");
            return Err(Error::CertificateMissing(format!(
                "basis sandwich fails: {}",
                w.render(m1.lattice())
            )));
        }
        Ok(QGPair {
            m1,
            m2,
            strong: false,
        })
    }

    /// Certify a strong pair: the identity map M1 → M2 is a strong map.
    pub fn strong(m1: QMatroid, m2: QMatroid) -> Result<QGPair> {
        let report = strongmap::is_strong_rankdiff(&m1, &m2)?;
        if !report.verdict {
            let w = report.witness.expect("failed report has a witness");
            return Err(Error::CertificateMissing(format!(
                "strong-map criterion fails: {}",
                w.render(m1.lattice())
            )));
        }
        Ok(QGPair {
            m1,
            m2,
            strong: true,
        })
    }

    pub fn m1(&self) -> &QMatroid {
        &self.m1
    }

    pub fn m2(&self) -> &QMatroid {
        &self.m2
    }

    pub fn is_strong(&self) -> bool {
        self.strong
    }

    pub fn family(&self) -> IdSet {
        interval_family(&self.m1, &self.m2).expect("pair shares a lattice")
    }

    /// The family viewed as a candidate q-Δ-matroid.
    pub fn delta(&self) -> Result<QDeltaMatroid> {
        QDeltaMatroid::new(
            self.m1.lattice().clone(),
            self.family(),
            self.m1.form().clone(),
        )
    }

    /// The dual pair (M2*, M1*), which carries the perps of the family.
    pub fn dual(&self) -> QGPair {
        QGPair {
            m1: self.m2.dual(),
            m2: self.m1.dual(),
            strong: self.strong,
        }
    }
}
