//! Named reproduction cases with pinned expected outcomes. Each case is
//! self-contained and deterministic; it prints one line per check and
//! reports whether every expectation was observed exactly.

use std::sync::Arc;

use qmatroids::bitset::IdSet;
use qmatroids::corpus;
use qmatroids::gf::FieldSpec;
use qmatroids::lattice::Lattice;
use qmatroids::qdelta::{self, QDeltaMatroid};
use qmatroids::qg::{interval_family, QGPair};
use qmatroids::qmatroid::QMatroid;
use qmatroids::randgen;
use qmatroids::rmcodes::{self, ExtFieldTower, RankMetricCode};
use qmatroids::strongmap;
use qmatroids::subspace::BilinearForm;
use qmatroids::{Error, Result};

pub const CASES: &[&str] = &[
    "prop-weak-not-strong",
    "restriction-fails",
    "qg-is-qdelta",
    "spread",
    "weak-not-qdelta",
    "even-dims-not-weak-qg",
    "dim4",
    "nested-codes",
];

/// Seed for the randomized portion of the dim4 case; fixed so the case is
/// deterministic.
const DIM4_SEED: u64 = 7;
const DIM4_TRIALS: usize = 200;

struct CaseCtx {
    lattice: Arc<Lattice>,
    form: BilinearForm,
    ok: bool,
}

impl CaseCtx {
    fn new() -> Result<CaseCtx> {
        let lattice = Lattice::build(FieldSpec::prime(2)?, 4)?;
        let form = BilinearForm::standard(lattice.field().clone(), 4);
        Ok(CaseCtx {
            lattice,
            form,
            ok: true,
        })
    }

    fn expect(&mut self, what: &str, observed: bool) {
        println!("  {}: {}", what, if observed { "ok" } else { "MISMATCH" });
        self.ok &= observed;
    }

    fn delta(&self, feasible: IdSet) -> Result<QDeltaMatroid> {
        QDeltaMatroid::new(self.lattice.clone(), feasible, self.form.clone())
    }
}

pub fn run_case(id: &str) -> Result<bool> {
    println!("case {id}:");
    let mut ctx = CaseCtx::new()?;
    match id {
        "prop-weak-not-strong" => prop_weak_not_strong(&mut ctx)?,
        "restriction-fails" => restriction_fails(&mut ctx)?,
        "qg-is-qdelta" => qg_is_qdelta(&mut ctx)?,
        "spread" => spread(&mut ctx)?,
        "weak-not-qdelta" => weak_not_qdelta(&mut ctx)?,
        "even-dims-not-weak-qg" => even_dims_not_weak_qg(&mut ctx)?,
        "dim4" => dim4(&mut ctx)?,
        "nested-codes" => nested_codes(&mut ctx)?,
        other => return Err(Error::Parse(format!("unknown case {other:?}"))),
    }
    println!(
        "case {id}: {}",
        if ctx.ok { "PASS" } else { "FAIL" }
    );
    Ok(ctx.ok)
}

/// The pair (M1, M2) satisfies the basis sandwich but the identity map is
/// not strong: the rank differences at (X, Y) = (<e1,e2,e3>, <e1,e2>) are
/// 0 on the left and 1 on the right.
fn prop_weak_not_strong(ctx: &mut CaseCtx) -> Result<()> {
    let (m1, m2) = corpus::weak_not_strong_pair(&ctx.lattice)?;
    let (e123, e12, _) = corpus::weak_not_strong_excluded(&ctx.lattice)?;
    ctx.expect(
        "basis sandwich holds",
        strongmap::basis_sandwich(&m1, &m2)?.verdict,
    );
    ctx.expect(
        "identity map is not strong",
        !strongmap::is_strong_rankdiff(&m1, &m2)?.verdict,
    );
    let left = m1.rank_id(e123) as i64 - m1.rank_id(e12) as i64;
    let right = m2.rank_id(e123) as i64 - m2.rank_id(e12) as i64;
    println!(
        "  named witness X = {}, Y = {}: {left} < {right}",
        ctx.lattice.render(e123),
        ctx.lattice.render(e12)
    );
    ctx.expect("named witness violates the criterion", left < right);
    ctx.expect("with differences exactly 0 < 1", left == 0 && right == 1);
    Ok(())
}

/// Both candidate restrictions of the spread family to a hyperplane T are
/// expected to fail (F2) at A = T. The first candidate does; the second
/// candidate's family contains T itself, so disjunct (iv) holds at A = T
/// and the family passes — the mismatch is reported, not hidden.
fn restriction_fails(ctx: &mut CaseCtx) -> Result<()> {
    let r = corpus::restriction_candidates(&ctx.lattice)?;
    let form = BilinearForm::standard(r.sub.field().clone(), 3);
    for (name, fam) in [("keep-contained", &r.keep), ("intersect-all", &r.meet)] {
        let d = QDeltaMatroid::new(r.sub.clone(), fam.clone(), form.clone())?;
        let rep = d.check_f1f2();
        match &rep.witness {
            Some(w) => println!(
                "  candidate {name}: fails {} at {}",
                w.axiom,
                w.render(&r.sub)
            ),
            None => println!("  candidate {name}: passes (F1)(F2)"),
        }
        let expected = rep
            .witness
            .map_or(false, |w| w.axiom == "F2" && w.a == r.t_id);
        ctx.expect(&format!("candidate {name} fails F2 with A = T"), expected);
    }
    Ok(())
}

/// Interval families of strong pairs satisfy (F3)(F4), hence (F1)(F2).
fn qg_is_qdelta(ctx: &mut CaseCtx) -> Result<()> {
    let l = ctx.lattice.clone();
    let (m1, _) = corpus::weak_not_strong_pair(&l)?;
    let u0 = QMatroid::uniform(l.clone(), 0)?;
    let t = Arc::new(ExtFieldTower::for_base(l.field(), 4)?);
    let points: Vec<_> = (0..4).map(|i| t.pow(qmatroids::gf::Fe(2), i)).collect();
    let c1 = RankMetricCode::gabidulin(t.clone(), &points, 3)?;
    let c2 = RankMetricCode::gabidulin(t.clone(), &points, 2)?;
    let (n1, n2) = rmcodes::nested_pair(&c1, &c2, l.clone(), ctx.form.clone())?;
    let pairs: [(&str, QMatroid, QMatroid); 3] = [
        (
            "uniform",
            QMatroid::uniform(l.clone(), 3)?,
            QMatroid::uniform(l.clone(), 2)?,
        ),
        ("from-bases", m1, u0),
        ("nested-code", n1, n2),
    ];
    for (name, a, b) in pairs {
        let pair = QGPair::strong(a, b)?;
        let d = pair.delta()?;
        ctx.expect(&format!("{name} pair family passes (F3)(F4)"), d.check_f3f4().verdict);
        ctx.expect(&format!("{name} pair family passes (F1)(F2)"), d.check_f1f2().verdict);
    }
    Ok(())
}

/// The spread family {0, E} ∪ S is a q-Δ-matroid that does not come from a
/// q-matroid; its upper and lower q-matroids are U(4,4) and U(0,4).
fn spread(ctx: &mut CaseCtx) -> Result<()> {
    let l = ctx.lattice.clone();
    let mut feasible = IdSet::from_iter(l.len(), corpus::line_spread(&l)?);
    let spread_lines = feasible.clone();
    feasible.insert(l.zero_id());
    feasible.insert(l.full_id());
    let d = ctx.delta(feasible)?;
    ctx.expect("passes (F1)(F2)", d.check_f1f2().verdict);
    let (upper, lower) = d.upper_lower()?;
    ctx.expect("upper = U(4,4)", upper == QMatroid::uniform(l.clone(), 4)?);
    ctx.expect("lower = U(0,4)", lower == QMatroid::uniform(l.clone(), 0)?);
    let not_bases = matches!(
        QMatroid::from_basis_ids(l.clone(), &spread_lines, ctx.form.clone()),
        Err(Error::NotAQMatroid { .. })
    );
    ctx.expect("spread lines are not the bases of a q-matroid", not_bases);
    Ok(())
}

/// The weak pair's interval family fails (F1) at
/// X = <e1,e2,e4>, Y = <e1,e3>, A = <e1,e2>.
fn weak_not_qdelta(ctx: &mut CaseCtx) -> Result<()> {
    let l = ctx.lattice.clone();
    let (m1, m2) = corpus::weak_not_strong_pair(&l)?;
    let pair = QGPair::weak(m1, m2)?;
    let d = pair.delta()?;
    let rep = d.check_f1f2();
    ctx.expect("interval family fails (F1)(F2)", !rep.verdict);
    ctx.expect(
        "at axiom F1",
        rep.witness.map_or(false, |w| w.axiom == "F1"),
    );
    let sub = |rows: &[&[u16]]| -> Result<usize> {
        let vecs: Vec<Vec<qmatroids::gf::Fe>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| qmatroids::gf::Fe(x)).collect())
            .collect();
        l.id_of(&qmatroids::subspace::Subspace::from_vectors(
            l.field().clone(),
            4,
            &vecs,
        )?)
    };
    let x = sub(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]])?;
    let y = sub(&[&[1, 0, 0, 0], &[0, 0, 1, 0]])?;
    let a = sub(&[&[1, 0, 0, 0], &[0, 1, 0, 0]])?;
    println!(
        "  named witness X = {}, Y = {}, A = {}",
        l.render(x),
        l.render(y),
        l.render(a)
    );
    let applicable = d.is_feasible(x)
        && d.is_feasible(y)
        && l.contains_id(x, a)
        && l.dim(a) + 1 == l.dim(x);
    ctx.expect(
        "named witness re-triggers the violation",
        applicable && !d.f1_holds(y, a),
    );
    Ok(())
}

/// The even-dimension family is a q-Δ-matroid but is not the interval
/// family of any pair: its own upper/lower pair generates all subspaces.
fn even_dims_not_weak_qg(ctx: &mut CaseCtx) -> Result<()> {
    let l = ctx.lattice.clone();
    let even = corpus::even_dim_family(&l)?;
    let d = ctx.delta(even.clone())?;
    ctx.expect("passes (F1)(F2)", d.check_f1f2().verdict);
    let (upper, lower) = d.upper_lower()?;
    let generated = interval_family(&upper, &lower)?;
    println!(
        "  interval family of (upper, lower) has {} members vs {}",
        generated.count(),
        even.count()
    );
    ctx.expect(
        "family differs from the interval family of its own pair",
        generated != even,
    );
    ctx.expect(
        "odd-dimension spaces are the difference",
        generated.iter().all(|f| even.contains(f) || l.dim(f) % 2 == 1),
    );
    Ok(())
}

/// The two-dimensional-family characterization on F_2^4 agrees with the
/// exhaustive axiom check on seeded random families, and the spread
/// satisfies it.
fn dim4(ctx: &mut CaseCtx) -> Result<()> {
    let l = ctx.lattice.clone();
    let spread = IdSet::from_iter(l.len(), corpus::line_spread(&l)?);
    ctx.expect(
        "spread satisfies the characterization",
        qdelta::dim4_two_dim_criterion(&l, &spread)?,
    );
    let mut rng = randgen::seeded_rng(DIM4_SEED);
    let mut agreements = 0;
    for _ in 0..DIM4_TRIALS {
        let family = randgen::random_two_dim_family(&l, &mut rng);
        let mut d_only = family.clone();
        d_only.remove(l.zero_id());
        d_only.remove(l.full_id());
        let predicted = qdelta::dim4_two_dim_criterion(&l, &d_only)?;
        let actual = ctx.delta(family)?.check_f1f2().verdict;
        if predicted == actual {
            agreements += 1;
        }
    }
    println!("  {agreements}/{DIM4_TRIALS} random families agree (seed {DIM4_SEED})");
    ctx.expect("characterization agrees on all trials", agreements == DIM4_TRIALS);
    Ok(())
}

/// Nested Gabidulin pairs (k2=1 ⊂ k1=2 and k2=2 ⊂ k1=3) over GF(2^4) give
/// strong pairs whose interval families satisfy all feasibility axioms.
fn nested_codes(ctx: &mut CaseCtx) -> Result<()> {
    let l = ctx.lattice.clone();
    let t = Arc::new(ExtFieldTower::for_base(l.field(), 4)?);
    let points: Vec<_> = (0..4).map(|i| t.pow(qmatroids::gf::Fe(2), i)).collect();
    for (k1, k2) in [(2usize, 1usize), (3, 2)] {
        let c1 = RankMetricCode::gabidulin(t.clone(), &points, k1)?;
        let c2 = RankMetricCode::gabidulin(t.clone(), &points, k2)?;
        rmcodes::check_nested(&c1, &c2)?;
        let (m1, m2) = rmcodes::nested_pair(&c1, &c2, l.clone(), ctx.form.clone())?;
        ctx.expect(
            &format!("k={k1} ⊃ k={k2}: identity map is strong"),
            strongmap::is_strong_rankdiff(&m1, &m2)?.verdict,
        );
        let pair = QGPair::strong(m1, m2)?;
        let d = pair.delta()?;
        ctx.expect(
            &format!("k={k1} ⊃ k={k2}: family passes (F3)(F4) and (F1)(F2)"),
            d.check_f3f4().verdict && d.check_f1f2().verdict,
        );
    }
    Ok(())
}
