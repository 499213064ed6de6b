//! `bohr` command-line interface.
//!
//! Subcommands:
//!
//! * `table [--format json|csv|md] [--n-max N]` constant table,
//! * `bound --quantity bn|kn|ln --domain polydisk|ball|hypercone|monomial|custom --n N
//!   [--beta "b1 b2 …"] [--table FILE]` radius bounds as JSON,
//! * `root --equation 19|21|remark3 [--n N] [--tol T] [--p P]` certified root as JSON;
//!   the equations are also accepted as `self-power` (`Σ x^k/k^k = 1/2`),
//!   `stirling` (`Σ k^k/k! x^k = 1/2` with the Stirling tail) and
//!   `layer-sums` (`Σ T_k(n) x^k = 1/2`, degree `--p`, default 60),
//! * `verify [--seed S] [--budget small|full] [--out FILE]` verification reports,
//! * `expand --family cone|mobius --a A --n N --K K` series in text form.
//!
//! A custom domain table (`--table`) holds one line per multi-index: the `n`
//! index parts separated by spaces followed by `d_α`; `#` starts a comment
//! line.
//!
//! Exit codes: 0 success, 1 a published figure or an expected verdict was not
//! reproduced, 2 usage error.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use bohr_core::bounds::{
    ball_lower, general_lower, hypercone_upper, kn_bounds, l1_bounds, monomial_domain_radius, refined_cone_equation,
    refined_cone_upper, EQUATION_DEGREE,
};
use bohr_core::harness::{build_constant_table, run_verification_suite, Budget, TableFormat};
use bohr_core::rootfind::{bisect_best_effort, bisect_increasing, SeriesEquation, DEFAULT_TOL};
use bohr_core::{json, DomainSpec, Error, MultiIndex, TruncatedSeries};

#[derive(Parser)]
#[command(name = "bohr", version, about = "Certified bounds for multidimensional Bohr radii")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the table of reproduced constants.
    Table {
        #[arg(long, default_value = "md")]
        format: TableFormat,
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: usize,
    },
    /// Radius bounds for one quantity and domain, as JSON.
    Bound {
        #[arg(long)]
        quantity: String,
        #[arg(long)]
        domain: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        table: Option<std::path::PathBuf>,
    },
    /// Certified root of one of the series equations, as JSON.
    Root {
        #[arg(long)]
        equation: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        p: Option<u32>,
    },
    /// Run the verification suite and print the reports as JSON.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "small")]
        budget: Budget,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Expand an extremal family in the series text format.
    Expand {
        #[arg(long)]
        family: String,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long = "K")]
        cap: u32,
    },
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends output quietly.
fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(Failure::Usage(format!("stdout: {e}"))),
    }
}

fn parse_beta(text: &str) -> Result<MultiIndex, Failure> {
    let parts = text
        .split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|e| Failure::Usage(format!("--beta: {t}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultiIndex::new(parts)?)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Table { format, n_max } => {
            let table = build_constant_table(n_max)?;
            let mut text = table.render(format);
            if !text.ends_with('\n') {
                text.push('\n');
            }
            emit(&text)?;
            if !table.all_checks_pass() {
                let failed: Vec<_> = table
                    .rows
                    .iter()
                    .filter(|r| r.check == Some(false))
                    .map(|r| r.id.as_str())
                    .collect();
                return Err(Failure::Mismatch(failed.join(", ")));
            }
        }
        Command::Bound {
            quantity,
            domain,
            n,
            beta,
            table,
        } => {
            let bounds = match (quantity.as_str(), domain.as_str()) {
                ("bn", "polydisk") | ("kn", "polydisk") => {
                    if n == 1 {
                        vec![general_lower(1)?]
                    } else {
                        let (lo, hi) = kn_bounds(n)?;
                        vec![general_lower(n)?, lo, hi]
                    }
                }
                ("bn", "ball") => vec![general_lower(n)?, ball_lower(n)?],
                ("bn", "hypercone") => vec![general_lower(n)?, hypercone_upper(n)?, refined_cone_upper(n, 60)?],
                ("bn", "monomial") => {
                    let beta = beta.ok_or_else(|| Failure::Usage("--beta is required for monomial domains".into()))?;
                    vec![monomial_domain_radius(&parse_beta(&beta)?)?]
                }
                ("bn", "custom") => {
                    let path = table.ok_or_else(|| Failure::Usage("--table is required for custom domains".into()))?;
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    let dom = DomainSpec::custom_from_text(&text)?;
                    let mut b = general_lower(dom.dimension())?;
                    b.domain = "custom";
                    vec![b]
                }
                ("ln", "hypercone") => {
                    let (lo, hi) = l1_bounds()?;
                    vec![lo, hi]
                }
                (q, d) => return Err(Failure::Usage(format!("no bound for quantity `{q}` on domain `{d}`"))),
            };
            emit(&(json::to_string(&bounds) + "\n"))?;
        }
        Command::Root { equation, n, tol, p } => {
            let root = match equation.as_str() {
                "19" | "self-power" => {
                    let eq = SeriesEquation::self_power_reciprocal(0.5);
                    bisect_increasing(&eq, p.unwrap_or(EQUATION_DEGREE), tol).map_err(Error::from)?
                }
                "21" | "stirling" => {
                    let eq = SeriesEquation::stirling_series(0.5);
                    bisect_best_effort(&eq, p.unwrap_or(EQUATION_DEGREE), tol).map_err(Error::from)?
                }
                "remark3" | "layer-sums" => {
                    let cap = p.unwrap_or(60);
                    let eq = refined_cone_equation(n, 2 * cap)?;
                    bisect_increasing(&eq, cap, tol).map_err(Error::from)?
                }
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown equation `{other}` (expected 19|21|remark3 or self-power|stirling|layer-sums)"
                    )))
                }
            };
            emit(&(json::to_string(&root) + "\n"))?;
        }
        Command::Verify { seed, budget, out } => {
            let reports = run_verification_suite(seed, budget)?;
            let text = json::to_string(&reports) + "\n";
            match out {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
                }
                None => emit(&text)?,
            }
            let bad: Vec<_> = reports
                .iter()
                .filter(|r| !r.as_expected())
                .map(|r| r.case_id.as_str())
                .collect();
            if !bad.is_empty() {
                return Err(Failure::Mismatch(bad.join(", ")));
            }
        }
        Command::Expand { family, a, n, cap } => {
            let series = match family.as_str() {
                "cone" => TruncatedSeries::extremal_cone_family(a, n, cap)?,
                "mobius" => {
                    let w = TruncatedSeries::mobius_witness(a, cap)?;
                    if n == 1 {
                        w
                    } else {
                        let mut e1 = vec![Complex64::new(0.0, 0.0); n];
                        e1[0] = Complex64::new(1.0, 0.0);
                        w.compose_linear(&e1)?
                    }
                }
                other => {
                    return Err(Failure::Usage(format!(
                        "unknown family `{other}` (expected cone|mobius)"
                    )))
                }
            };
            emit(&series.to_text())?;
        }
    }
    Ok(())
}
