//! The `nanoinv` command line interface.

use std::ffi::OsString;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{orbit_pairing, pairing, subphrases};
use crate::alphabet::Alphabet;
use crate::cyclic::{cyclic_canonical, cyclic_orbit};
use crate::error::{Error, Result};
use crate::finite_type::{check_degree_at_most, class_basis, universal_invariant};
use crate::invariants::{
    apply_move, arnold_invariants, inverse_move_sites, linking_matrix, move_sites,
    spherical_sample, MoveId, MoveSite,
};
use crate::phrase::Phrase;
use crate::verify::run_suite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "nanoinv",
    version,
    about = "Invariants of nanowords and nanophrases: cyclic classes, finite type invariants, linking matrices, Arnold invariants"
)]
struct Cli {
    /// Comma-separated projection symbols, e.g. "+,-" or "a,b,c".
    #[arg(long, global = true, default_value = "+,-")]
    alpha: String,

    /// Involution as comma-separated transpositions, e.g. "+<->-".
    /// Defaults to exchanging + and - for the default alphabet, identity
    /// otherwise; unlisted symbols are fixed.
    #[arg(long, global = true)]
    nu: Option<String>,

    /// Output format (csv applies to `basis` and batch `gamma`).
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Refuse phrase inputs above this rank for enumeration-heavy commands.
    #[arg(long, global = true, default_value_t = 20)]
    max_rank: usize,

    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the rank (number of distinct letters) of a phrase.
    Rank { phrase: String },
    /// Print the canonical form of a phrase (isomorphism class by default).
    Canon {
        phrase: String,
        /// Canonicalize the full cyclic class instead.
        #[arg(long)]
        cyclic: bool,
    },
    /// List every member of the cyclic shift orbit, sorted.
    Orbit { phrase: String },
    /// List all subphrases in enumeration order.
    Subphrases { phrase: String },
    /// Count subphrases of the second phrase isomorphic to the first.
    Pair { w: String, v: String },
    /// Count subphrases of the second phrase cyclically equivalent to the first.
    Pairclass { w: String, v: String },
    /// Evaluate the universal degree-m invariant on one or more phrases.
    Gamma {
        #[arg(short)]
        m: usize,
        #[arg(required = true)]
        phrases: Vec<String>,
    },
    /// List the cyclic classes of rank at most m on n components.
    Basis {
        #[arg(short)]
        m: usize,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    /// Exhaustively check that a named invariant has finite type degree at most m.
    Ftcheck {
        /// One of: rank, gamma, linking, jplus, jminus, st.
        #[arg(long)]
        invariant: String,
        #[arg(short)]
        m: usize,
        /// Total rank bound for the exhaustive search.
        #[arg(short = 'R', long)]
        rank_bound: usize,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    /// Print the linking matrix of a phrase.
    Linking { phrase: String },
    /// Evaluate the Arnold invariants of a signed word.
    Arnold { word: String },
    /// Apply a regular homotopy move to a signed word.
    Move {
        /// Move id: 1 (direct tangency), 2 (inverse tangency), 3 (triple point).
        #[arg(long)]
        id: u8,
        /// Index into the enumerated site list.
        #[arg(long)]
        site: Option<usize>,
        /// Use the inverse direction of the move.
        #[arg(long)]
        inverse: bool,
        /// List the available sites instead of applying one.
        #[arg(long)]
        list: bool,
        word: String,
    },
    /// Sample a spherical signed word by random moves from a standard curve.
    Sample {
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        start: usize,
    },
    /// Run the bundled verification suites.
    Verify {
        /// One of: theta-phi, u-hat, gamma-degree, linking, arnold, moves, all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

/// Runs the CLI against the given arguments. Exit codes: 0 on success, 1 on
/// domain errors or failed checks, 2 on usage errors.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // Clap renders help/version through the same channel.
            let _ = err.print();
            return if err.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn resolve_alphabet(cli: &Cli) -> Result<Arc<Alphabet>> {
    let nu = match (&cli.nu, cli.alpha.as_str()) {
        (Some(nu), _) => Some(nu.clone()),
        (None, "+,-") => Some("+<->-".to_string()),
        (None, _) => None,
    };
    Alphabet::from_parts(&cli.alpha, nu.as_deref())
}

fn parse_phrase(cli: &Cli, alphabet: &Arc<Alphabet>, text: &str) -> Result<Phrase> {
    let p = Phrase::parse(text, alphabet)?;
    if p.rank() > cli.max_rank {
        return Err(Error::Capacity {
            operation: "cli",
            quantity: "input rank",
            actual: p.rank() as u128,
            bound: cli.max_rank as u128,
        });
    }
    Ok(p)
}

fn site_description(site: &MoveSite) -> String {
    match site {
        MoveSite::Insert {
            gap1,
            gap2,
            first_sign,
            ..
        } => format!("insert at gaps ({gap1}, {gap2}) signs ({first_sign}, {})", first_sign.opposite()),
        MoveSite::Remove { pos1, pos2, .. } => {
            format!("remove pairs at positions ({pos1}, {pos2})")
        }
        MoveSite::Triple {
            pos_ab,
            pos_ac,
            pos_bc,
            forward,
        } => format!(
            "swap pairs at positions ({pos_ab}, {pos_ac}, {pos_bc}){}",
            if *forward { "" } else { " (inverse)" }
        ),
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let alphabet = resolve_alphabet(cli)?;
    match &cli.command {
        Command::Rank { phrase } => {
            let p = Phrase::parse(phrase, &alphabet)?;
            println!("{}", p.rank());
            Ok(0)
        }
        Command::Canon { phrase, cyclic } => {
            let p = Phrase::parse(phrase, &alphabet)?;
            let form = if *cyclic {
                cyclic_canonical(&p).representative().clone()
            } else {
                p.canonical_form()
            };
            match cli.format {
                Format::Json => println!("{}", form.to_json(&alphabet)),
                _ => println!("{}", form.to_notation(&alphabet)),
            }
            Ok(0)
        }
        Command::Orbit { phrase } => {
            let p = parse_phrase(cli, &alphabet, phrase)?;
            for form in cyclic_orbit(&p) {
                println!("{}", form.to_notation(&alphabet));
            }
            Ok(0)
        }
        Command::Subphrases { phrase } => {
            let p = parse_phrase(cli, &alphabet, phrase)?;
            for q in subphrases(&p)? {
                println!("{}", q.to_notation());
            }
            Ok(0)
        }
        Command::Pair { w, v } => {
            let w = parse_phrase(cli, &alphabet, w)?;
            let v = parse_phrase(cli, &alphabet, v)?;
            println!("{}", pairing(&w, &v)?);
            Ok(0)
        }
        Command::Pairclass { w, v } => {
            let w = parse_phrase(cli, &alphabet, w)?;
            let v = parse_phrase(cli, &alphabet, v)?;
            println!("{}", orbit_pairing(&w, &v)?);
            Ok(0)
        }
        Command::Gamma { m, phrases } => {
            let parsed: Vec<Phrase> = phrases
                .iter()
                .map(|text| parse_phrase(cli, &alphabet, text))
                .collect::<Result<_>>()?;
            if cli.format == Format::Csv {
                let basis = class_basis(
                    *m,
                    parsed.first().map_or(1, Phrase::component_count),
                    &alphabet,
                )?;
                let header: Vec<String> = std::iter::once("phrase".to_string())
                    .chain(basis.iter().map(|c| c.representative().to_notation(&alphabet)))
                    .collect();
                println!("{}", header.join(","));
                for p in &parsed {
                    let value = universal_invariant(p, *m)?;
                    let row: Vec<String> = std::iter::once(p.to_notation())
                        .chain(basis.iter().map(|c| value.coefficient(c).to_string()))
                        .collect();
                    println!("{}", row.join(","));
                }
            } else {
                for p in &parsed {
                    let value = universal_invariant(p, *m)?;
                    let mut object = serde_json::Map::new();
                    for (class, coefficient) in value.coefficients().iter() {
                        object.insert(
                            class.representative().to_notation(&alphabet),
                            json!(coefficient),
                        );
                    }
                    println!("{}", serde_json::Value::Object(object));
                }
            }
            Ok(0)
        }
        Command::Basis { m, n } => {
            let basis = class_basis(*m, *n, &alphabet)?;
            match cli.format {
                Format::Csv => {
                    println!("class,rank");
                    for class in &basis {
                        println!(
                            "{},{}",
                            class.representative().to_notation(&alphabet),
                            class.rank()
                        );
                    }
                }
                Format::Json => {
                    let items: Vec<serde_json::Value> = basis
                        .iter()
                        .map(|c| c.representative().to_json(&alphabet))
                        .collect();
                    println!("{}", json!(items));
                }
                Format::Text => {
                    for class in &basis {
                        println!("{}", class.representative().to_notation(&alphabet));
                    }
                }
            }
            Ok(0)
        }
        Command::Ftcheck {
            invariant,
            m,
            rank_bound,
            n,
        } => {
            let report = match invariant.as_str() {
                "rank" => check_degree_at_most(
                    |p| Ok(p.rank() as i64),
                    *m,
                    *rank_bound,
                    *n,
                    &alphabet,
                )?,
                "gamma" => {
                    let degree = *m;
                    check_degree_at_most(
                        move |p| universal_invariant(p, degree),
                        *m,
                        *rank_bound,
                        *n,
                        &alphabet,
                    )?
                }
                "linking" => {
                    check_degree_at_most(linking_matrix, *m, *rank_bound, *n, &alphabet)?
                }
                "jplus" => check_degree_at_most(
                    |p| Ok(arnold_invariants(p)?.j_plus),
                    *m,
                    *rank_bound,
                    *n,
                    &alphabet,
                )?,
                "jminus" => check_degree_at_most(
                    |p| Ok(arnold_invariants(p)?.j_minus),
                    *m,
                    *rank_bound,
                    *n,
                    &alphabet,
                )?,
                "st" => check_degree_at_most(
                    |p| Ok(arnold_invariants(p)?.strangeness),
                    *m,
                    *rank_bound,
                    *n,
                    &alphabet,
                )?,
                other => {
                    return Err(Error::UnknownInvariant {
                        operation: "ftcheck",
                        name: other.to_string(),
                    })
                }
            };
            match &report.witness {
                None => {
                    println!("PASS degree <= {m} (exhaustive, rank <= {rank_bound}, n = {n})");
                    Ok(0)
                }
                Some(w) => {
                    println!("FAIL witness: {}", w.to_notation());
                    Ok(1)
                }
            }
        }
        Command::Linking { phrase } => {
            let p = Phrase::parse(phrase, &alphabet)?;
            let matrix = linking_matrix(&p)?;
            match cli.format {
                Format::Text => {
                    for i in 0..matrix.size() {
                        for j in i..matrix.size() {
                            let entry = matrix.entry(i, j);
                            if entry.is_empty() {
                                continue;
                            }
                            let cells: Vec<String> = entry
                                .iter()
                                .map(|(&sym, &c)| format!("{}:{c}", alphabet.symbol(sym)))
                                .collect();
                            println!("l({},{}) = {}", i + 1, j + 1, cells.join(" "));
                        }
                    }
                }
                _ => println!("{}", matrix.to_json(&alphabet)),
            }
            Ok(0)
        }
        Command::Arnold { word } => {
            let w = Phrase::parse(word, &alphabet)?;
            let values = arnold_invariants(&w)?;
            println!(
                "{}",
                json!({
                    "Jplus": values.j_plus.to_string(),
                    "Jminus": values.j_minus.to_string(),
                    "St": values.strangeness.to_string(),
                })
            );
            Ok(0)
        }
        Command::Move {
            id,
            site,
            inverse,
            list,
            word,
        } => {
            let move_id = MoveId::from_number(*id).ok_or(Error::InvalidSite {
                operation: "move",
                message: format!("move id must be 1, 2 or 3, got {id}"),
            })?;
            let w = Phrase::parse(word, &alphabet)?;
            let sites = if *inverse {
                inverse_move_sites(&w, move_id)?
            } else {
                move_sites(&w, move_id)?
            };
            if *list {
                for (index, s) in sites.iter().enumerate() {
                    println!("{index}: {}", site_description(s));
                }
                return Ok(0);
            }
            let index = site.ok_or(Error::InvalidSite {
                operation: "move",
                message: "--site <index> is required unless --list is given".into(),
            })?;
            let chosen = sites.get(index).ok_or(Error::InvalidSite {
                operation: "move",
                message: format!("site index {index} out of range ({} sites)", sites.len()),
            })?;
            println!("{}", apply_move(&w, chosen)?.to_notation());
            Ok(0)
        }
        Command::Sample { steps, start } => {
            let sample = spherical_sample(cli.seed, *steps, *start);
            println!("{}", sample.word.to_notation());
            for (index, step) in sample.trace.iter().enumerate() {
                println!(
                    "step {}: move {} {}",
                    index + 1,
                    step.site.move_id().number(),
                    site_description(&step.site)
                );
            }
            Ok(0)
        }
        Command::Verify { suite } => {
            let reports = run_suite(suite)?;
            let mut all_pass = true;
            if cli.format == Format::Json {
                let items: Vec<serde_json::Value> = reports
                    .iter()
                    .flat_map(|report| {
                        report.checks.iter().map(|check| {
                            json!({
                                "suite": report.suite,
                                "check": check.name,
                                "pass": check.pass,
                                "detail": check.detail,
                            })
                        })
                    })
                    .collect();
                println!("{}", json!(items));
                all_pass = reports.iter().all(SuiteReport::passed);
            } else {
                for report in &reports {
                    for check in &report.checks {
                        let status = if check.pass { "PASS" } else { "FAIL" };
                        println!("{status} {}::{} — {}", report.suite, check.name, check.detail);
                        all_pass &= check.pass;
                    }
                }
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

use crate::verify::SuiteReport;
