//! Seeded randomized searches for counterexamples to two open implications:
//! whether every (F3)(F4) family is the interval family of a strong pair,
//! and whether the identity map from the upper to the lower q-matroid of a
//! q-Δ-matroid is always strong. Finding one is a discovery, not an error.

use std::sync::Arc;

use qmatroids::bitset::IdSet;
use qmatroids::corpus;
use qmatroids::lattice::Lattice;
use qmatroids::qdelta::QDeltaMatroid;
use qmatroids::qg::interval_family;
use qmatroids::randgen;
use qmatroids::strongmap;
use qmatroids::subspace::BilinearForm;
use qmatroids::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Candidates passing (F3)(F4); counterexample = one that is not the
    /// interval family of its own strong (upper, lower) pair.
    F3f4VsQg,
    /// Candidates passing (F1)(F2); counterexample = one whose identity map
    /// upper → lower is not strong.
    UpperLowerStrong,
}

pub struct SearchReport {
    /// Candidates that passed the axiom filter and were tested.
    pub tested: usize,
    /// The feasible family of a discovered counterexample, if any.
    pub counterexample: Option<IdSet>,
}

/// Propose one candidate family per attempt, cycling through the corpus
/// examples (on F_q^4), random family generators, and an occasional
/// hill-climb toward zero axiom violations.
fn propose(
    lattice: &Arc<Lattice>,
    form: &BilinearForm,
    rng: &mut impl rand::Rng,
    attempt: u64,
) -> Result<Option<IdSet>> {
    if lattice.n() == 4 {
        if attempt == 0 {
            let mut f = IdSet::from_iter(lattice.len(), corpus::line_spread(lattice)?);
            f.insert(lattice.zero_id());
            f.insert(lattice.full_id());
            return Ok(Some(f));
        }
        if attempt == 1 {
            return Ok(Some(corpus::even_dim_family(lattice)?));
        }
    }
    Ok(match attempt % 5 {
        0 if lattice.n() == 4 => Some(randgen::random_two_dim_family(lattice, rng)),
        1 => Some(randgen::random_interval_union(lattice, rng)),
        2 => Some(randgen::random_downward_closed(lattice, rng)),
        3 => randgen::hill_climb_qdelta(lattice, form, rng, 60)?
            .map(|d| d.feasible().clone()),
        _ => Some(randgen::random_small_family(lattice, rng)),
    })
}

pub fn run(
    lattice: &Arc<Lattice>,
    form: &BilinearForm,
    target: Target,
    budget: u64,
    seed: u64,
) -> Result<SearchReport> {
    if budget == 0 {
        return Err(Error::BudgetZero);
    }
    let mut rng = randgen::seeded_rng(seed);
    let mut tested = 0;
    for attempt in 0..budget {
        let Some(family) = propose(lattice, form, &mut rng, attempt)? else {
            continue;
        };
        let d = QDeltaMatroid::new(lattice.clone(), family.clone(), form.clone())?;
        let passes_filter = match target {
            Target::F3f4VsQg => d.check_f3f4().verdict,
            Target::UpperLowerStrong => d.check_f1f2().verdict,
        };
        if !passes_filter {
            continue;
        }
        tested += 1;
        let (upper, lower) = d.upper_lower()?;
        let implication = match target {
            Target::UpperLowerStrong => strongmap::is_strong_rankdiff(&upper, &lower)?.verdict,
            Target::F3f4VsQg => {
                strongmap::is_strong_rankdiff(&upper, &lower)?.verdict
                    && interval_family(&upper, &lower)? == family
            }
        };
        if !implication {
            return Ok(SearchReport {
                tested,
                counterexample: Some(family),
            });
        }
    }
    Ok(SearchReport {
        tested,
        counterexample: None,
    })
}
