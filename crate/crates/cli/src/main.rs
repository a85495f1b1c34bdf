//! `aspsc`: answer sets, super-coherence checks, QBF reductions and embeddings
//! from the command line.
//!
//! Exit codes: 0 yes/ok, 1 no, 2 parse or usage error, 3 enumeration guard.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aspsc_core::embedding::{
    embed_query, shift_embedding, strat_shift_with, strat_transform_with, StratOptions, Transform,
};
use aspsc_core::qbf::{
    encode, parse_qbf, qbf_valid_with, verify_phi_norm_reduction_with, verify_phi_reduction_with,
    Qbf,
};
use aspsc_core::supercoherence::{is_super_coherent_with, projected_uniform_equiv_with};
use aspsc_core::{
    answer_sets_with, classify, parse_program, query_with, render_program, Error, Limits, Program,
    QueryMode,
};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "aspsc",
    version,
    about = "Super-coherence toolkit for propositional ASP"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the atom limit of exhaustive procedures.
    #[arg(long, global = true, value_name = "N")]
    max_atoms: Option<usize>,
    /// Enumerate with N worker threads; output does not depend on N.
    #[arg(long, global = true, value_name = "N")]
    parallel: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// List all answer sets.
    Solve { file: PathBuf },
    /// Report syntactic program classes.
    Classify { file: PathBuf },
    /// Decide super-coherence; exit 0 if it holds, 1 with a minimal witness otherwise.
    CheckSc { file: PathBuf },
    /// Brave or cautious query; exit 0 if true, 1 if false.
    Query {
        file: PathBuf,
        atom: String,
        #[arg(long, default_value = "brave")]
        mode: QueryMode,
    },
    /// Encode a QBF as a program (disjunctive for dnf, normal for cnf).
    Encode {
        file: PathBuf,
        #[arg(short, long, value_name = "OUT")]
        output: Option<PathBuf>,
    },
    /// Decide QBF validity; exit 0 if valid, 1 otherwise.
    QbfValid { file: PathBuf },
    /// Check that a program has the model structure of an encoding of the QBF.
    VerifyReduction { program: PathBuf, qbf: PathBuf },
    /// Apply a super-coherence-preserving transformation.
    Embed {
        file: PathBuf,
        #[arg(long, default_value = "strat")]
        transform: Transform,
        /// Comma-separated atoms to build the scaffold for.
        #[arg(long, value_delimiter = ',')]
        universe: Option<Vec<String>>,
    },
    /// Embed a query so that it can be asked of a super-coherent program.
    EmbedQuery {
        file: PathBuf,
        atom: String,
        #[arg(long, default_value = "brave")]
        mode: QueryMode,
    },
    /// Uniform equivalence relative to context facts, projected onto atoms.
    Equiv {
        lhs: PathBuf,
        rhs: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "")]
        context: Vec<String>,
        #[arg(long = "project", value_delimiter = ',', default_value = "")]
        projection: Vec<String>,
    },
}

/// Verdict of a decision subcommand.
enum Outcome {
    Done,
    Yes,
    No,
}

impl Outcome {
    fn of(holds: bool) -> Self {
        if holds {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }
}

enum Failure {
    Usage(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run = Result<Outcome, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn program(path: &Path) -> Result<Program, Failure> {
    let text = read(path)?;
    parse_program(&text).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))
}

fn qbf(path: &Path) -> Result<Qbf, Failure> {
    let text = read(path)?;
    parse_qbf(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn names(v: &[String]) -> Vec<&str> {
    v.iter()
        .map(String::as_str)
        .filter(|s| !s.is_empty())
        .collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    let limits = Limits {
        max_atoms: g.max_atoms,
        parallel: g.parallel.is_some_and(|n| n > 1),
    };
    match &cli.command {
        Command::Solve { file } => {
            let p = program(file)?;
            let report = answer_sets_with(&p, &limits)?;
            if g.json {
                println!("{}", report.to_json());
            } else {
                for m in &report.answer_sets {
                    println!("{}", m.display(p.atoms()));
                }
                println!("answer sets: {}", report.answer_sets.len());
            }
            Ok(Outcome::Done)
        }
        Command::Classify { file } => {
            let c = classify(&program(file)?);
            if g.json {
                println!("{}", c.to_json());
            } else {
                println!("normal: {}", yes_no(c.is_normal));
                println!("positive: {}", yes_no(c.is_positive));
                println!("definite horn: {}", yes_no(c.is_definite_horn));
                println!("stratified: {}", yes_no(c.is_stratified));
                println!("odd-cycle-free: {}", yes_no(c.is_odd_cycle_free));
                println!("head-cycle-free: {}", yes_no(c.is_head_cycle_free));
            }
            Ok(Outcome::Done)
        }
        Command::CheckSc { file } => {
            let p = program(file)?;
            let v = is_super_coherent_with(&p, &limits)?;
            if g.json {
                println!("{}", v.to_json());
            } else {
                println!("super-coherent: {}", yes_no(v.holds));
                if let Some(w) = &v.witness {
                    println!("witness: {}", w.display(&v.universe));
                }
                println!("fact sets checked: {}", v.facts_checked);
            }
            Ok(Outcome::of(v.holds))
        }
        Command::Query { file, atom, mode } => {
            let p = program(file)?;
            let holds = query_with(&p, atom, *mode, &limits)?;
            if g.json {
                println!(
                    "{}",
                    json!({"atom": atom, "mode": mode.to_string(), "holds": holds})
                );
            } else {
                println!("{mode} {atom}: {}", yes_no(holds));
            }
            Ok(Outcome::of(holds))
        }
        Command::Encode { file, output } => {
            let f = qbf(file)?;
            let text = render_program(&encode(&f)?);
            let kind = match f {
                Qbf::Dnf3(_) => "disjunctive",
                Qbf::Cnf2(_) => "normal",
            };
            match output {
                Some(path) => {
                    fs::write(path, &text)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    if g.json {
                        println!(
                            "{}",
                            json!({"encoding": kind, "output": path.display().to_string()})
                        );
                    }
                }
                None if g.json => println!("{}", json!({"encoding": kind, "program": text})),
                None => print!("{text}"),
            }
            Ok(Outcome::Done)
        }
        Command::QbfValid { file } => {
            let valid = qbf_valid_with(&qbf(file)?, &limits)?;
            if g.json {
                println!("{}", json!({"valid": valid}));
            } else {
                println!("valid: {}", yes_no(valid));
            }
            Ok(Outcome::of(valid))
        }
        Command::VerifyReduction {
            program: prog,
            qbf: formula,
        } => {
            let p = program(prog)?;
            let report = match qbf(formula)? {
                Qbf::Dnf3(f) => verify_phi_reduction_with(&p, &f, &limits)?,
                Qbf::Cnf2(f) => verify_phi_norm_reduction_with(&p, &f, &limits)?,
            };
            if g.json {
                println!("{}", report.to_json());
            } else {
                println!(
                    "reduction: {}",
                    if report.passed { "passed" } else { "failed" }
                );
                for v in &report.violations {
                    let under = v
                        .reduct_of
                        .as_ref()
                        .map(|r| format!(" (reduct of {{{}}})", r.join(", ")))
                        .unwrap_or_default();
                    println!(
                        "item {}: {} {{{}}}{under}",
                        v.item,
                        v.description,
                        v.interpretation.join(", ")
                    );
                }
            }
            Ok(Outcome::of(report.passed))
        }
        Command::Embed {
            file,
            transform,
            universe,
        } => {
            let p = program(file)?;
            let options = StratOptions {
                universe: universe.clone(),
                reject_constraints: false,
            };
            let art = match transform {
                Transform::Strat => strat_transform_with(&p, &options)?,
                Transform::Shift => {
                    if universe.is_some() {
                        return Err(Failure::Usage("--universe does not apply to shift".into()));
                    }
                    shift_embedding(&p)
                }
                Transform::StratShift => strat_shift_with(&p, &options)?,
            };
            for w in &art.warnings {
                eprintln!("warning: {w}");
            }
            if g.json {
                println!("{}", art.to_json());
            } else {
                print!("{}", render_program(&art.program));
            }
            Ok(Outcome::Done)
        }
        Command::EmbedQuery { file, atom, mode } => {
            let art = embed_query(&program(file)?, atom, *mode)?;
            for w in &art.warnings {
                eprintln!("warning: {w}");
            }
            if g.json {
                println!("{}", art.to_json());
            } else {
                print!("{}", render_program(&art.program));
            }
            Ok(Outcome::Done)
        }
        Command::Equiv {
            lhs,
            rhs,
            context,
            projection,
        } => {
            let (p, q) = (program(lhs)?, program(rhs)?);
            let v =
                projected_uniform_equiv_with(&p, &q, &names(context), &names(projection), &limits)?;
            if g.json {
                println!("{}", v.to_json());
            } else {
                println!("equivalent: {}", yes_no(v.holds));
                if let Some(w) = &v.witness {
                    println!("witness: {}", w.display(&v.universe));
                    let show = |family: &Option<Vec<aspsc_core::Interpretation>>| {
                        family
                            .iter()
                            .flatten()
                            .map(|m| m.display(&v.universe))
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    println!("lhs: {}", show(&v.lhs_projection));
                    println!("rhs: {}", show(&v.rhs_projection));
                }
                println!("fact sets checked: {}", v.facts_checked);
            }
            Ok(Outcome::of(v.holds))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match cli.global.parallel {
        Some(0) => Err(Failure::Usage(
            "--parallel needs at least one thread".into(),
        )),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => run(&cli),
    };
    match outcome {
        Ok(Outcome::Done | Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
