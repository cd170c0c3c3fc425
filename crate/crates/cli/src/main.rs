use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conecalc::cone::{
    bipolar_check, closed_cone_rep_2d, contains, dual_cone, evren_check, is_complete, justifiable_k, lemma_witness,
    member_v, union_is_complete,
};
use conecalc::decision::{
    aa_implied, aa_multi_utility, implied, multi_utility, transitivity_certificate, AxiomSet, Ground,
    PreferenceData, TransitivityCertificate,
};
use conecalc::family::{family_member, hat_equal_on_sample, is_trivial, normalize_family, HatComparison, Triviality};
use conecalc::feasibility::strong_separate;
use conecalc::linalg::pairing;
use conecalc::oracle::{oracle_compare, GridSpec, OracleTask};
use conecalc::text::{
    parse_act, parse_cone, parse_family, parse_lottery, parse_relation, parse_system, parse_vector, parse_vector_list,
    write_cone, write_family, ConeFile,
};
use conecalc::{Error, Vector};

#[derive(Parser)]
#[command(name = "conecalc", version, about = "Exact cone duality and preference calculus")]
struct Cli {
    /// Output format; only plain text is supported.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
}

#[derive(Args, Clone, Copy)]
struct Axioms {
    /// Assume transitivity.
    #[arg(long)]
    transitive: bool,
    /// Assume continuity (no effect on finite data; recorded only).
    #[arg(long)]
    continuous: bool,
}

impl From<Axioms> for AxiomSet {
    fn from(a: Axioms) -> Self {
        AxiomSet { transitivity: a.transitive, continuity: a.continuous }
    }
}

#[derive(Args)]
struct Grid {
    /// Largest absolute value of a grid coordinate.
    #[arg(long, default_value_t = 4)]
    nbound: u32,
    /// Comma-separated denominators.
    #[arg(long, value_delimiter = ',', default_values_t = [1u32, 2, 3])]
    dens: Vec<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Task {
    Membership,
    Triviality,
    Feasibility,
    FamilyMembership,
    Implied,
}

#[derive(Subcommand)]
enum Command {
    /// Print the dual cone.
    Dual { cone: String },
    /// Decide membership of a vector in a cone or union of cones.
    Member { cone: String, x: String },
    /// Decide whether the second cone is contained in the first.
    Contains { outer: String, inner: String },
    /// Verify that the double dual equals the cone.
    BipolarCheck { cone: String },
    /// Decide whether C together with -C covers the whole space.
    Complete { cone: String },
    /// Find y with <g, y> >= 0 on the cone and <x0, y> = -1.
    Separate { cone: String, x0: String },
    /// Find y with <c, y> < 0 <= <a, y>, <b, y>.
    LemmaWitness { a: String, b: String, c: String },
    /// Decide whether a finite set pairs nonnegatively with every vector.
    Trivial { set: String },
    /// Decide membership in the cone induced by a family.
    FamilyMember { family: String, x: String },
    /// Drop trivial sets and redundant elements.
    NormalizeFamily { family: String },
    /// Compare the cones induced by two families on sample vectors.
    HatEqual { first: String, second: String, sample: String },
    /// Representing family of a closed planar cone.
    #[command(name = "represent-2d")]
    Represent2d { cone: String },
    /// Single finite set K with x in C iff <x, k> >= 0 for some k in K.
    JustifiableK { cone: String },
    /// Check both sides of the restricted dual-containment equivalence.
    EvrenCheck { a: String, b: String, c: String },
    /// Decide whether p is weakly preferred to q given the data.
    Implied {
        relation: String,
        p: String,
        q: String,
        #[command(flatten)]
        axioms: Axioms,
    },
    /// Utility vectors representing the transitive closure of the data.
    MultiUtility {
        relation: String,
        #[command(flatten)]
        axioms: Axioms,
    },
    /// Decide whether the asserted rays already form a convex cone.
    TransitivityCert { relation: String },
    /// Decide whether act f is weakly preferred to act g.
    AaImplied {
        relation: String,
        f: String,
        g: String,
        #[command(flatten)]
        axioms: Axioms,
    },
    /// State-dependent utilities representing the data over acts.
    AaMultiUtility {
        relation: String,
        #[command(flatten)]
        axioms: Axioms,
    },
    /// Compare a decision procedure against brute force on a grid.
    OracleCompare {
        #[arg(value_enum)]
        task: Task,
        instance: String,
        /// Cone file for family-membership.
        #[arg(long)]
        cone: Option<String>,
        #[command(flatten)]
        grid: Grid,
        #[command(flatten)]
        axioms: Axioms,
    },
}

enum Failure {
    Domain(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Input(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))
}

fn in_file(path: &str, e: Error) -> Failure {
    match e {
        Error::Parse { line, message } => Failure::Input(format!("{path}:{line}: {message}")),
        other => other.into(),
    }
}

fn cone_arg(path: &str) -> Result<ConeFile, Failure> {
    parse_cone(&read(path)?).map_err(|e| in_file(path, e))
}

/// A vector given inline or as a file holding exactly one vector.
fn vector_arg(arg: &str) -> Result<Vector, Failure> {
    if Path::new(arg).is_file() {
        let vs = parse_vector_list(&read(arg)?).map_err(|e| in_file(arg, e))?;
        match vs.as_slice() {
            [v] => Ok(v.clone()),
            _ => Err(Failure::Input(format!("{arg}: expected exactly one vector, found {}", vs.len()))),
        }
    } else {
        parse_vector(arg).map_err(|e| Failure::Input(format!("bad vector {arg:?}: {e}")))
    }
}

fn vectors_arg(arg: &str) -> Result<Vec<Vector>, Failure> {
    if Path::new(arg).is_file() {
        parse_vector_list(&read(arg)?).map_err(|e| in_file(arg, e))
    } else {
        Ok(vec![vector_arg(arg)?])
    }
}

fn family_arg(path: &str) -> Result<conecalc::RepFamily, Failure> {
    parse_family(&read(path)?).map_err(|e| in_file(path, e))
}

fn relation_arg(path: &str) -> Result<PreferenceData, Failure> {
    parse_relation(&read(path)?).map_err(|e| in_file(path, e))
}

fn vector_lines(vs: &[Vector]) -> String {
    vs.iter().map(|v| format!("{v}\n")).collect()
}

fn run(command: Command) -> Outcome {
    Ok(match command {
        Command::Dual { cone } => {
            let c = cone_arg(&cone)?.to_v()?;
            write_cone(&ConeFile::V(dual_cone(&c)))
        }
        Command::Member { cone, x } => {
            let c = cone_arg(&cone)?;
            let x = vector_arg(&x)?;
            let inside = match &c {
                ConeFile::Union(u) => u.contains(&x)?,
                other => member_v(&other.to_v()?, &x)?,
            };
            format!("{inside}\n")
        }
        Command::Contains { outer, inner } => {
            let (c, d) = (cone_arg(&outer)?.to_v()?, cone_arg(&inner)?.to_v()?);
            format!("{}\n", contains(&c, &d)?)
        }
        Command::BipolarCheck { cone } => format!("{}\n", bipolar_check(&cone_arg(&cone)?.to_v()?)),
        Command::Complete { cone } => {
            let complete = match cone_arg(&cone)? {
                ConeFile::Union(u) if u.parts().len() > 1 => union_is_complete(&u),
                other => is_complete(&other.to_h()?),
            };
            format!("{complete}\n")
        }
        Command::Separate { cone, x0 } => {
            let c = cone_arg(&cone)?.to_v()?;
            format!("{}\n", strong_separate(&c, &vector_arg(&x0)?)?)
        }
        Command::LemmaWitness { a, b, c } => {
            let (a, b, c) = (vector_arg(&a)?, vector_arg(&b)?, vector_arg(&c)?);
            let w = lemma_witness(&a, &b, &c)?;
            let mut out = format!("case: {:?}\ny: {}\n", w.case, w.y);
            for (name, v) in [("a", &a), ("b", &b), ("c", &c)] {
                let _ = writeln!(out, "<{name}, y> = {}", pairing(v, &w.y)?);
            }
            out
        }
        Command::Trivial { set } => match is_trivial(&vectors_arg(&set)?)? {
            Triviality::Trivial => "trivial\n".to_string(),
            Triviality::NonTrivial { witness } => format!("nontrivial: witness {witness}\n"),
        },
        Command::FamilyMember { family, x } => {
            format!("{}\n", family_member(&family_arg(&family)?, &vector_arg(&x)?)?)
        }
        Command::NormalizeFamily { family } => write_family(&normalize_family(&family_arg(&family)?)?),
        Command::HatEqual { first, second, sample } => {
            let (f1, f2) = (family_arg(&first)?, family_arg(&second)?);
            match hat_equal_on_sample(&f1, &f2, &vectors_arg(&sample)?)? {
                HatComparison::Equal => "equal on sample\n".to_string(),
                HatComparison::Differ { x } => format!("differ at {x}\n"),
            }
        }
        Command::Represent2d { cone } => write_family(&closed_cone_rep_2d(&cone_arg(&cone)?.to_union()?)?),
        Command::JustifiableK { cone } => vector_lines(&justifiable_k(&cone_arg(&cone)?.to_union()?)?),
        Command::EvrenCheck { a, b, c } => {
            let (a, b, c) = (cone_arg(&a)?.to_v()?, cone_arg(&b)?.to_v()?, cone_arg(&c)?.to_v()?);
            format!("{}\n", evren_check(&a, &b, &c)?)
        }
        Command::Implied { relation, p, q, axioms } => {
            let data = relation_arg(&relation)?;
            let Ground::Lotteries { m } = data.ground() else {
                return Err(Failure::Domain("relation is over acts; use aa-implied".into()));
            };
            let lottery = |s: &str| parse_lottery(s, m).map_err(|e| Failure::Input(format!("bad lottery {s:?}: {e}")));
            format!("{}\n", implied(&data, axioms.into(), &lottery(&p)?, &lottery(&q)?)?)
        }
        Command::MultiUtility { relation, axioms } => {
            vector_lines(&multi_utility(&relation_arg(&relation)?, axioms.into())?)
        }
        Command::TransitivityCert { relation } => match transitivity_certificate(&relation_arg(&relation)?)? {
            TransitivityCertificate::Convex => "convex: the asserted rays already form a convex cone\n".to_string(),
            TransitivityCertificate::Counterexample(nc) => {
                let mut out = format!(
                    "not convex\nrays: {} and {}\ncombination: {} lies on no asserted ray\n",
                    nc.a, nc.b, nc.combination
                );
                for (r, y) in &nc.exclusions {
                    let _ = writeln!(out, "ray {r}: y = {y} gives <ray, y> = {}, <combination, y> = -1", pairing(r, y)?);
                }
                let _ = writeln!(out, "pair cover verified: {}", nc.covered_by_pair);
                out
            }
        },
        Command::AaImplied { relation, f, g, axioms } => {
            let data = relation_arg(&relation)?;
            let Ground::Acts { omega_count, m } = data.ground() else {
                return Err(Failure::Domain("relation is over lotteries; use implied".into()));
            };
            let act = |s: &str| parse_act(s, omega_count, m).map_err(|e| Failure::Input(format!("bad act {s:?}: {e}")));
            format!("{}\n", aa_implied(&data, axioms.into(), &act(&f)?, &act(&g)?)?)
        }
        Command::AaMultiUtility { relation, axioms } => {
            let us = aa_multi_utility(&relation_arg(&relation)?, axioms.into())?;
            let mut out = String::new();
            for u in us {
                let rows: Vec<String> = (0..u.omega_count())
                    .map(|w| Vector::new((0..u.m()).map(|z| u.get(z, w).clone()).collect()).to_string())
                    .collect();
                let _ = writeln!(out, "{}", rows.join("; "));
            }
            out
        }
        Command::OracleCompare { task, instance, cone, grid, axioms } => {
            let text = read(&instance)?;
            let parsed = |e| in_file(&instance, e);
            let report = match task {
                Task::Membership => {
                    let c = parse_cone(&text).map_err(parsed)?;
                    oracle_compare(&OracleTask::Membership(&c), &grid_spec(c.dim(), &grid)?)?
                }
                Task::Triviality => {
                    let k = parse_vector_list(&text).map_err(parsed)?;
                    let dim = k.first().map_or(1, Vector::dim);
                    oracle_compare(&OracleTask::Triviality(&k), &grid_spec(dim, &grid)?)?
                }
                Task::Feasibility => {
                    let sys = parse_system(&text).map_err(parsed)?;
                    oracle_compare(&OracleTask::Feasibility(&sys), &grid_spec(sys.dim(), &grid)?)?
                }
                Task::FamilyMembership => {
                    let family = parse_family(&text).map_err(parsed)?;
                    let cone_path = cone
                        .ok_or_else(|| Failure::Input("family-membership needs --cone <file>".into()))?;
                    let c = cone_arg(&cone_path)?;
                    let task = OracleTask::FamilyMembership { family: &family, cone: &c };
                    oracle_compare(&task, &grid_spec(family.dim(), &grid)?)?
                }
                Task::Implied => {
                    let data = parse_relation(&text).map_err(parsed)?;
                    let task = OracleTask::Implied { data: &data, axioms: axioms.into() };
                    // Only the coordinate values are used to build lotteries.
                    oracle_compare(&task, &grid_spec(1, &grid)?)?
                }
            };
            let out = format!("{report}\n");
            if !report.passed() {
                return Err(Failure::Domain(out));
            }
            out
        }
    })
}

fn grid_spec(dim: usize, grid: &Grid) -> Result<GridSpec, Failure> {
    Ok(GridSpec::new(dim, grid.nbound, grid.dens.clone())?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Text = cli.format;
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {}", msg.trim_end());
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
