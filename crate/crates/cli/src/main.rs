//! Command-line front end: family/code/gram file I/O, exhaustive axiom
//! verification, named reproduction cases, and seeded counterexample
//! searches.
//!
//! Exit codes: 0 = pass, 1 = property fails (witness printed), 2 = input
//! error, 3 = search discovery.

mod cases;
mod search;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use qmatroids::bitset::IdSet;
use qmatroids::gf::FieldSpec;
use qmatroids::io;
use qmatroids::lattice::Lattice;
use qmatroids::qdelta::QDeltaMatroid;
use qmatroids::qg::QGPair;
use qmatroids::qmatroid::QMatroid;
use qmatroids::rmcodes;
use qmatroids::strongmap;
use qmatroids::subspace::BilinearForm;
use qmatroids::{Error, Result};

#[derive(Parser)]
#[command(name = "qmatroids", version, about = "q-matroids, q-Δ-matroids and q-g-matroids over F_q^n")]
struct Cli {
    /// Worker threads for the exhaustive checks (default: all cores).
    /// Verdicts and witnesses are schedule-independent.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the subspaces of F_q^n (optionally of one dimension) in
    /// canonical order.
    Enumerate {
        q: usize,
        n: usize,
        k: Option<usize>,
        /// Print counts instead of subspaces.
        #[arg(long)]
        count: bool,
    },
    /// Check a family file against a set of axioms.
    Verify {
        family: PathBuf,
        #[arg(long, value_enum)]
        axioms: AxiomSet,
        /// Gram matrix file for the bilinear form (default: identity).
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Operations on a q-matroid given by a basis-family file.
    Qmatroid {
        #[command(subcommand)]
        op: QmOp,
    },
    /// Strong-map criteria for the identity map between two q-matroids.
    Strongmap {
        #[command(subcommand)]
        op: SmOp,
    },
    /// Build the interval family of a certified pair of q-matroids.
    Qg {
        #[command(subcommand)]
        op: QgOp,
    },
    /// Operations on a q-Δ-matroid given by a feasible-family file.
    Qdelta {
        #[command(subcommand)]
        op: QdOp,
    },
    /// Rank-metric code operations.
    Codes {
        #[command(subcommand)]
        op: CodesOp,
    },
    /// Run a named reproduction case (or all of them).
    Paper {
        case: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Seeded randomized search for counterexamples to an open implication.
    Search {
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Number of candidate attempts.
        #[arg(long)]
        budget: u64,
        #[arg(long)]
        seed: u64,
        /// Witness file written on discovery.
        #[arg(long, default_value = "counterexample.txt")]
        out: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = 4)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AxiomSet {
    F1f2,
    F3f4,
    Saturated,
    Qmatroid,
}

#[derive(Subcommand)]
enum QmOp {
    /// Reconstruct the q-matroid from its bases and verify R1–R3.
    Validate {
        family: PathBuf,
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Print the rank table: `<id> <dim> <rank> <basis rendering>`.
    Dump {
        family: PathBuf,
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Print the basis family of the dual q-matroid as a family file.
    Dual {
        family: PathBuf,
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Print the derived families (independents, bases, spanning, circuits,
    /// flats, hyperplanes, loops, coloops).
    Derived {
        family: PathBuf,
        #[arg(long)]
        form: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SmOp {
    /// Evaluate strong-map criteria for the identity map M1 → M2, where M1
    /// and M2 are given by basis-family files on the same ambient space.
    Check {
        m1: PathBuf,
        m2: PathBuf,
        #[arg(long, value_enum, default_value_t = Criterion::All)]
        criterion: Criterion,
        #[arg(long)]
        form: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Criterion {
    Rankdiff,
    Flats,
    Circuits,
    All,
}

#[derive(Subcommand)]
enum QgOp {
    /// Certify the pair (upper, lower) and emit its interval family.
    Build {
        #[arg(long)]
        upper: PathBuf,
        #[arg(long)]
        lower: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        form: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Weak,
    Strong,
}

#[derive(Subcommand)]
enum QdOp {
    /// Print the dual feasible family {F^⊥} as a family file.
    Dual {
        family: PathBuf,
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Print the basis families of the upper and lower q-matroids.
    UpperLower {
        family: PathBuf,
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Print the Δ-rank table: `<id> <dim> <rank> <rendering>`.
    Rank {
        family: PathBuf,
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Print the birank of an orthogonal pair (X, Y), given as subspace
    /// lines in the family-file notation.
    Birank {
        family: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        form: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CodesOp {
    /// Print the rank table of the q-matroid induced by a rank-metric code.
    Qmatroid {
        code: PathBuf,
        #[arg(long)]
        form: Option<PathBuf>,
    },
    /// Check a nested pair C2 ⊆ C1: strong map, interval-family axioms, and
    /// optionally whether the pair represents a given family.
    Nested {
        c1: PathBuf,
        c2: PathBuf,
        #[arg(long)]
        family: Option<PathBuf>,
        #[arg(long)]
        form: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    F3f4VsQg,
    UpperLowerStrong,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_form(path: Option<&PathBuf>, lattice: &Arc<Lattice>) -> Result<BilinearForm> {
    match path {
        None => Ok(BilinearForm::standard(lattice.field().clone(), lattice.n())),
        Some(p) => {
            let form = io::parse_gram(&read(p)?)?;
            if form.n() != lattice.n() || form.gram().field() != lattice.field() {
                return Err(Error::AmbientMismatch);
            }
            Ok(form)
        }
    }
}

fn load_family(
    path: &Path,
    form: Option<&PathBuf>,
) -> Result<(Arc<Lattice>, BilinearForm, IdSet)> {
    let ff = io::parse_family(&read(path)?)?;
    let lattice = Lattice::build(ff.field.clone(), ff.n)?;
    let form = load_form(form, &lattice)?;
    let ids = ff.ids(&lattice)?;
    Ok((lattice, form, ids))
}

/// Load two basis families onto one shared lattice.
fn load_pair(
    p1: &Path,
    p2: &Path,
    form: Option<&PathBuf>,
) -> Result<(Arc<Lattice>, QMatroid, QMatroid)> {
    let (lattice, form, b1) = load_family(p1, form)?;
    let f2 = io::parse_family(&read(p2)?)?;
    if f2.n != lattice.n() || f2.field.order() != lattice.field().order() {
        return Err(Error::AmbientMismatch);
    }
    let b2 = f2.ids(&lattice)?;
    let m1 = QMatroid::from_basis_ids(lattice.clone(), &b1, form.clone())?;
    let m2 = QMatroid::from_basis_ids(lattice.clone(), &b2, form)?;
    Ok((lattice, m1, m2))
}

fn build_qmatroid(family: &Path, form: Option<&PathBuf>) -> Result<(Arc<Lattice>, QMatroid)> {
    let (lattice, form, ids) = load_family(family, form)?;
    let m = QMatroid::from_basis_ids(lattice.clone(), &ids, form)?;
    Ok((lattice, m))
}

fn build_delta(family: &Path, form: Option<&PathBuf>) -> Result<(Arc<Lattice>, QDeltaMatroid)> {
    let (lattice, form, ids) = load_family(family, form)?;
    let d = QDeltaMatroid::new(lattice.clone(), ids, form)?;
    Ok((lattice, d))
}

fn print_rank_table(lattice: &Lattice, rank: impl Fn(usize) -> usize) {
    for id in 0..lattice.len() {
        println!("{id} {} {} {}", lattice.dim(id), rank(id), lattice.render(id));
    }
}

fn cmd_enumerate(q: usize, n: usize, k: Option<usize>, count: bool) -> Result<u8> {
    if !(2..=9).contains(&q) {
        return Err(Error::Parse(format!(
            "field order {q} outside the supported digit range 2..=9"
        )));
    }
    let lattice = Lattice::build(FieldSpec::of_order(q)?, n)?;
    match k {
        Some(k) => {
            if k > n {
                return Err(Error::InvalidDimension { k, n });
            }
            if count {
                println!("{}", lattice.ids_of_dim(k).len());
            } else {
                for id in lattice.ids_of_dim(k) {
                    println!("{}", lattice.render(id));
                }
            }
        }
        None => {
            if count {
                let counts: Vec<String> = (0..=n)
                    .map(|d| lattice.ids_of_dim(d).len().to_string())
                    .collect();
                println!("{}", counts.join(" "));
            } else {
                for id in 0..lattice.len() {
                    println!("{}", lattice.render(id));
                }
            }
        }
    }
    Ok(0)
}

fn validate_as_qmatroid(family: &Path, form: Option<&PathBuf>) -> Result<u8> {
    match build_qmatroid(family, form) {
        Ok((_, m)) => {
            println!("PASS q-matroid, r(E) = {}", m.rank_e());
            Ok(0)
        }
        Err(Error::NotAQMatroid { axiom, witness }) => {
            println!("FAIL {axiom} at {witness}");
            Ok(1)
        }
        Err(Error::BasisMismatch) => {
            println!("FAIL reconstructed basis family differs from the input family");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn cmd_verify(family: &Path, axioms: AxiomSet, form: Option<&PathBuf>) -> Result<u8> {
    if matches!(axioms, AxiomSet::Qmatroid) {
        return validate_as_qmatroid(family, form);
    }
    let (lattice, d) = build_delta(family, form)?;
    match axioms {
        AxiomSet::F1f2 | AxiomSet::F3f4 => {
            let (label, report) = match axioms {
                AxiomSet::F1f2 => ("(F1)(F2)", d.check_f1f2()),
                _ => ("(F3)(F4)", d.check_f3f4()),
            };
            if report.verdict {
                println!("PASS {label}");
                Ok(0)
            } else {
                let w = report.witness.expect("failed report has a witness");
                println!("FAIL {} at {}", w.axiom, w.render(&lattice));
                Ok(1)
            }
        }
        AxiomSet::Saturated => match d.is_saturated() {
            None => {
                println!("PASS saturated");
                Ok(0)
            }
            Some((x, y, z)) => {
                println!(
                    "FAIL saturation: Z = {} infeasible between Y = {} and X = {}",
                    lattice.render(z),
                    lattice.render(y),
                    lattice.render(x)
                );
                Ok(1)
            }
        },
        AxiomSet::Qmatroid => unreachable!(),
    }
}

fn cmd_qmatroid(op: &QmOp) -> Result<u8> {
    match op {
        QmOp::Validate { family, form } => validate_as_qmatroid(family, form.as_ref()),
        QmOp::Dump { family, form } => {
            let (lattice, m) = build_qmatroid(family, form.as_ref())?;
            print_rank_table(&lattice, |id| m.rank_id(id));
            Ok(0)
        }
        QmOp::Dual { family, form } => {
            let (lattice, m) = build_qmatroid(family, form.as_ref())?;
            print!("{}", io::write_family(&lattice, &m.dual().derived().bases));
            Ok(0)
        }
        QmOp::Derived { family, form } => {
            let (lattice, m) = build_qmatroid(family, form.as_ref())?;
            let d = m.derived();
            let sections: [(&str, &IdSet); 8] = [
                ("independents", &d.independents),
                ("bases", &d.bases),
                ("spanning", &d.spanning),
                ("circuits", &d.circuits),
                ("flats", &d.flats),
                ("hyperplanes", &d.hyperplanes),
                ("loops", &d.loops),
                ("coloops", &d.coloops),
            ];
            for (name, ids) in sections {
                println!("{name} ({}):", ids.count());
                for id in ids.iter() {
                    println!("  {}", lattice.render(id));
                }
            }
            Ok(0)
        }
    }
}

fn cmd_strongmap(op: &SmOp) -> Result<u8> {
    let SmOp::Check {
        m1,
        m2,
        criterion,
        form,
    } = op;
    let (lattice, m1, m2) = load_pair(m1, m2, form.as_ref())?;
    let selected: Vec<(&str, strongmap::MapReport)> = match criterion {
        Criterion::Rankdiff => vec![("rankdiff", strongmap::is_strong_rankdiff(&m1, &m2)?)],
        Criterion::Flats => vec![("flats", strongmap::is_strong_flats(&m1, &m2)?)],
        Criterion::Circuits => vec![("circuits", strongmap::is_strong_circuits(&m1, &m2)?)],
        Criterion::All => vec![
            ("rankdiff", strongmap::is_strong_rankdiff(&m1, &m2)?),
            ("flats", strongmap::is_strong_flats(&m1, &m2)?),
            ("circuits", strongmap::is_strong_circuits(&m1, &m2)?),
        ],
    };
    let mut ok = true;
    for (name, report) in selected {
        match report.witness {
            None => println!("{name}: PASS"),
            Some(w) => {
                println!("{name}: FAIL {}", w.render(&lattice));
                ok = false;
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_qg(op: &QgOp) -> Result<u8> {
    let QgOp::Build {
        upper,
        lower,
        mode,
        form,
    } = op;
    let (lattice, m1, m2) = load_pair(upper, lower, form.as_ref())?;
    let pair = match mode {
        Mode::Weak => QGPair::weak(m1, m2),
        Mode::Strong => QGPair::strong(m1, m2),
    };
    match pair {
        Ok(pair) => {
            print!("{}", io::write_family(&lattice, &pair.family()));
            Ok(0)
        }
        Err(Error::CertificateMissing(msg)) => {
            println!("FAIL {msg}");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn cmd_qdelta(op: &QdOp) -> Result<u8> {
    match op {
        QdOp::Dual { family, form } => {
            let (lattice, d) = build_delta(family, form.as_ref())?;
            print!("{}", io::write_family(&lattice, d.dual().feasible()));
            Ok(0)
        }
        QdOp::UpperLower { family, form } => {
            let (lattice, d) = build_delta(family, form.as_ref())?;
            let report = d.check_f1f2();
            if let Some(w) = report.witness {
                println!("FAIL {} at {}", w.axiom, w.render(&lattice));
                return Ok(1);
            }
            let (upper, lower) = d.upper_lower()?;
            println!("# upper bases");
            print!("{}", io::write_family(&lattice, &upper.derived().bases));
            println!("# lower bases");
            print!("{}", io::write_family(&lattice, &lower.derived().bases));
            Ok(0)
        }
        QdOp::Rank { family, form } => {
            let (lattice, d) = build_delta(family, form.as_ref())?;
            print_rank_table(&lattice, |id| d.rank_delta(id));
            Ok(0)
        }
        QdOp::Birank { family, x, y, form } => {
            let (lattice, d) = build_delta(family, form.as_ref())?;
            let xs = io::parse_subspace(lattice.field(), lattice.n(), x)?;
            let ys = io::parse_subspace(lattice.field(), lattice.n(), y)?;
            let b = d.birank(lattice.id_of(&xs)?, lattice.id_of(&ys)?)?;
            println!("{b}");
            Ok(0)
        }
    }
}

fn cmd_codes(op: &CodesOp) -> Result<u8> {
    match op {
        CodesOp::Qmatroid { code, form } => {
            let code = io::parse_code(&read(code)?)?;
            let lattice = Lattice::build(code.tower().base().clone(), code.n())?;
            let form = load_form(form.as_ref(), &lattice)?;
            let m = code.qmatroid(lattice.clone(), form)?;
            print_rank_table(&lattice, |id| m.rank_id(id));
            Ok(0)
        }
        CodesOp::Nested {
            c1,
            c2,
            family,
            form,
        } => {
            let c1 = io::parse_code(&read(c1)?)?;
            let c2 = io::parse_code(&read(c2)?)?;
            if let Err(Error::NotNested) = rmcodes::check_nested(&c1, &c2) {
                println!("FAIL C2 is not a subcode of C1");
                return Ok(1);
            }
            println!("nested: PASS");
            let lattice = Lattice::build(c1.tower().base().clone(), c1.n())?;
            let form = load_form(form.as_ref(), &lattice)?;
            let (m1, m2) = rmcodes::nested_pair(&c1, &c2, lattice.clone(), form)?;
            let mut ok = true;
            match strongmap::is_strong_rankdiff(&m1, &m2)?.witness {
                None => println!("strong map: PASS"),
                Some(w) => {
                    println!("strong map: FAIL {}", w.render(&lattice));
                    ok = false;
                }
            }
            if ok {
                let pair = QGPair::strong(m1, m2)?;
                let fam = pair.family();
                let d = pair.delta()?;
                for (label, report) in
                    [("(F3)(F4)", d.check_f3f4()), ("(F1)(F2)", d.check_f1f2())]
                {
                    match report.witness {
                        None => println!("interval family {label}: PASS"),
                        Some(w) => {
                            println!(
                                "interval family {label}: FAIL {} at {}",
                                w.axiom,
                                w.render(&lattice)
                            );
                            ok = false;
                        }
                    }
                }
                if let Some(path) = family {
                    let target = io::parse_family(&read(path)?)?.ids(&lattice)?;
                    if fam == target {
                        println!("represents the family: yes");
                    } else {
                        println!("represents the family: no");
                        ok = false;
                    }
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn cmd_paper(case: Option<&String>, all: bool) -> Result<u8> {
    let mut ok = true;
    if all {
        for id in cases::CASES {
            ok &= cases::run_case(id)?;
        }
    } else {
        let id = case.ok_or_else(|| Error::Parse("expected a case name or --all".into()))?;
        ok = cases::run_case(id)?;
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_search(
    target: TargetArg,
    budget: u64,
    seed: u64,
    out: &Path,
    q: usize,
    n: usize,
) -> Result<u8> {
    if q != 2 || n > 5 {
        return Err(Error::PreconditionViolated(
            "search supports q = 2 and n <= 5".into(),
        ));
    }
    let (target, name) = match target {
        TargetArg::F3f4VsQg => (search::Target::F3f4VsQg, "f3f4-vs-qg"),
        TargetArg::UpperLowerStrong => (search::Target::UpperLowerStrong, "upper-lower-strong"),
    };
    println!("target={name} seed={seed} budget={budget} q={q} n={n}");
    let lattice = Lattice::build(FieldSpec::prime(q as u16)?, n)?;
    let form = BilinearForm::standard(lattice.field().clone(), n);
    let report = search::run(&lattice, &form, target, budget, seed)?;
    match report.counterexample {
        Some(family) => {
            let text = io::write_family(&lattice, &family);
            std::fs::write(out, &text)
                .map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
            println!(
                "counterexample found after testing {} candidates; written to {}",
                report.tested,
                out.display()
            );
            print!("{text}");
            Ok(3)
        }
        None => {
            println!(
                "no counterexample found ({} candidates tested)",
                report.tested
            );
            Ok(0)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.cmd {
        Cmd::Enumerate { q, n, k, count } => cmd_enumerate(*q, *n, *k, *count),
        Cmd::Verify {
            family,
            axioms,
            form,
        } => cmd_verify(family, *axioms, form.as_ref()),
        Cmd::Qmatroid { op } => cmd_qmatroid(op),
        Cmd::Strongmap { op } => cmd_strongmap(op),
        Cmd::Qg { op } => cmd_qg(op),
        Cmd::Qdelta { op } => cmd_qdelta(op),
        Cmd::Codes { op } => cmd_codes(op),
        Cmd::Paper { case, all } => cmd_paper(case.as_ref(), *all),
        Cmd::Search {
            target,
            budget,
            seed,
            out,
            q,
            n,
        } => cmd_search(*target, *budget, *seed, out, *q, *n),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
