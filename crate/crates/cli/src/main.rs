use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use posit_core::gadgets::certify;
use posit_core::games::{solve_game, verify_strategy, Arena, Game};
use posit_core::positionality::{check_positional_with_cap, compare_lassos, DEFAULT_MONOID_CAP};
use posit_core::reduction::reduce_to_positional;
use posit_core::selftest::{selftest, SelftestOptions};
use posit_core::{Dpa, Error, LassoWord, Preorder, Witness};

/// Positionality of ω-regular languages given as deterministic parity automata.
///
/// Exit codes: 0 when the answer is positive, 1 when it is negative,
/// 2 on malformed input or an exceeded limit.
#[derive(Parser)]
#[command(name = "posit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the automaton's language is positional.
    Check {
        dpa: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Membership of a lasso `prefix:period`.
    Member { dpa: PathBuf, lasso: String },
    /// Compare two lassos in the residual preorder.
    Compare { dpa: PathBuf, left: String, right: String },
    /// Inclusion of the residual language of state P in that of state Q.
    Include { dpa: PathBuf, p: String, q: String },
    /// Solve a game and print Eve's winning region.
    Solve { dpa: PathBuf, arena: PathBuf },
    /// Turn a winning strategy on an Eve-only arena into a positional one.
    Reduce { dpa: PathBuf, arena: PathBuf },
    /// Run the end-to-end self check.
    Selftest {
        dpa: PathBuf,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
    },
    /// Print the gadget game of a witness (JSON text or a file holding it).
    Gadget { dpa: PathBuf, witness: String },
}

enum Outcome {
    Holds,
    Refuted,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::IncomparableLassos { .. } | Error::NotEveOnly(_) | Error::MergeBrokeWinning { .. } => 1,
        _ => 2,
    }
}

fn monoid_cap() -> Result<usize, Error> {
    match std::env::var("POSIT_MONOID_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::PreconditionViolated(format!("POSIT_MONOID_CAP must be a number, got `{v}`"))),
        Err(_) => Ok(DEFAULT_MONOID_CAP),
    }
}

fn outcome(holds: bool) -> Outcome {
    if holds {
        Outcome::Holds
    } else {
        Outcome::Refuted
    }
}

fn load_game(dpa: &PathBuf, arena: &PathBuf) -> Result<Game, Error> {
    Game::new(Arena::from_file(arena)?, Dpa::from_file(dpa)?)
}

fn run(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::Check { dpa, json } => {
            let a = Dpa::from_file(&dpa)?;
            let verdict = check_positional_with_cap(&a, monoid_cap()?)?;
            if json {
                println!("{}", verdict.to_json());
            } else if verdict.positional {
                println!("positional");
            } else {
                println!("not positional: property {} fails", verdict.failed_property.unwrap_or(0));
                if let Some(w) = &verdict.witness {
                    println!("witness: {w}");
                    println!("json: {}", w.to_json());
                }
            }
            Ok(outcome(verdict.positional))
        }
        Command::Member { dpa, lasso } => {
            let a = Dpa::from_file(&dpa)?;
            let w = LassoWord::parse(&lasso, a.alphabet())?;
            let m = a.member(&w)?;
            println!("{m}");
            Ok(outcome(m))
        }
        Command::Compare { dpa, left, right } => {
            let a = Dpa::from_file(&dpa)?;
            let w = LassoWord::parse(&left, a.alphabet())?;
            let w2 = LassoWord::parse(&right, a.alphabet())?;
            let rel = compare_lassos(&a, &w, &w2)?;
            println!("{rel}");
            Ok(outcome(!matches!(rel, Preorder::Incomparable { .. })))
        }
        Command::Include { dpa, p, q } => {
            let a = Dpa::from_file(&dpa)?;
            let (p, q) = (a.state_by_name(&p)?, a.state_by_name(&q)?);
            match a.residual_included(p, q) {
                None => {
                    println!("yes");
                    Ok(Outcome::Holds)
                }
                Some(w) => {
                    println!("no; witness {w}");
                    Ok(Outcome::Refuted)
                }
            }
        }
        Command::Solve { dpa, arena } => {
            let game = load_game(&dpa, &arena)?;
            let sol = solve_game(&game)?;
            let (ar, cond) = (game.arena(), game.condition());
            let names: Vec<&str> = sol.region.iter().map(|&v| ar.name(v)).collect();
            println!("region: {}", names.join(" "));
            println!("memory: {}", sol.strategy.memory());
            println!("memory states: {}", sol.strategy.num_states());
            for (m, &(v, q)) in sol.product_states.iter().enumerate() {
                let moves: Vec<String> = sol.strategy.edges(m).iter().map(|(c, t)| format!("{c}->{t}")).collect();
                println!("  {m}: ({}, {}) {}", ar.name(v), cond.state_name(q), moves.join(" "));
            }
            let ok = verify_strategy(&game, &sol.strategy, &sol.initial)?;
            println!("verified: {}", if ok { "yes" } else { "no" });
            Ok(outcome(ok))
        }
        Command::Reduce { dpa, arena } => {
            let game = load_game(&dpa, &arena)?;
            let verdict = check_positional_with_cap(game.condition(), monoid_cap()?)?;
            if !verdict.positional {
                eprintln!(
                    "error: the condition is not positional (property {} fails)",
                    verdict.failed_property.unwrap_or(0)
                );
                return Ok(Outcome::Refuted);
            }
            let sol = solve_game(&game)?;
            let r = reduce_to_positional(&game, &sol.strategy, &sol.initial)?;
            let ar = game.arena();
            for &m in &r.initial {
                let (c, t) = r.strategy.edges(m)[0];
                let v = r.strategy.sigma(m);
                println!("{}: {c} -> {}", ar.name(v), ar.name(r.strategy.sigma(t)));
            }
            println!("merges: {}", r.merges.len());
            let ok = verify_strategy(&game, &r.strategy, &r.initial)?;
            println!("verified: {}", if ok { "yes" } else { "no" });
            Ok(outcome(ok && r.strategy.is_positional()))
        }
        Command::Selftest {
            dpa,
            trials,
            seed,
            max_vertices,
        } => {
            let a = Dpa::from_file(&dpa)?;
            let opts = SelftestOptions {
                trials,
                seed,
                max_vertices,
                monoid_cap: monoid_cap()?,
                ..SelftestOptions::default()
            };
            let report = selftest(&a, &opts)?;
            print!("{}", report.render());
            Ok(outcome(report.passed))
        }
        Command::Gadget { dpa, witness } => {
            let a = Dpa::from_file(&dpa)?;
            let text = if witness.trim_start().starts_with('{') {
                witness
            } else {
                std::fs::read_to_string(&witness).map_err(|e| Error::Io(format!("{witness}: {e}")))?
            };
            let w = Witness::from_json(&text, a.alphabet())?;
            let cert = certify(&a, &w)?;
            print!("{}", cert.gadget);
            println!("# start: {}", cert.gadget.arena.name(cert.gadget.start));
            println!("# eve wins from start: {}", if cert.eve_wins { "yes" } else { "no" });
            println!(
                "# positional winning strategy: {}",
                if cert.positional.is_some() { "found" } else { "none" }
            );
            println!("# certified: {}", if cert.holds() { "yes" } else { "no" });
            Ok(outcome(cert.holds()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Holds) => ExitCode::SUCCESS,
        Ok(Outcome::Refuted) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
