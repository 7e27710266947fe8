//! `rotalg`: command-line front end for the rotation-algebra toolkit.
//!
//! Exit codes: 0 success, 2 syntax error, 3 domain/precondition error,
//! 4 I/O or malformed input file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use rotalg::bundle::{check_membership, fourier_coefficients, synthesize_section};
use rotalg::format::{
    matrix_to_rows, read_matrix_json, read_section_json, sig17, write_coeff_csv,
    write_section_json,
};
use rotalg::reps::reps_equivalent;
use rotalg::spectral::{
    butterfly, operator_norm_estimate, spectral_decomposition, write_butterfly_csv, TorusGrid,
};
use rotalg::{Error, ModularParams, NCLaurentPoly, RepPoint};

#[derive(Parser)]
#[command(name = "rotalg", version, about = "Computations in rational rotation algebras A_{p/q}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct AlgebraArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
}

impl AlgebraArgs {
    fn params(&self) -> Result<ModularParams, Error> {
        ModularParams::new(self.p, self.q)
    }
}

#[derive(Args)]
struct GridArgs {
    /// Torus lattice as N1xN2.
    #[arg(long, default_value = "64x64", value_parser = parse_grid)]
    grid: (usize, usize),
    /// Golden-section refinement rounds.
    #[arg(long, default_value_t = 3)]
    refine: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Operator norm max over the torus of ‖ρ(a)‖.
    Norm {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        grid: GridArgs,
        /// Write {norm, argmax, grid, refine} as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Band spectra for all coprime (p, q) with q <= qmax.
    Butterfly {
        #[arg(long)]
        qmax: u32,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "64x64", value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Decide whether A_{p/q} and A_{p2/q2} are isomorphic.
    Classify { p: i64, q: i64, p2: i64, q2: i64 },
    /// Decide unitary equivalence of ρ_{z1,z2} and ρ_{z1b,z2b}.
    RepEquiv {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        z1: String,
        z2: String,
        z1b: String,
        z2b: String,
    },
    /// Spectral family of a unitary matrix given as JSON rows of [re, im].
    SpectralDecomp {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier coefficients c(m,n) of a section file.
    Fourier {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        mmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check twisted equivariance of a section file.
    VerifySection {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sample an element on the [0,q)² lattice and write a section file.
    Synthesize {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        expr: String,
        /// Samples per axis (default 8q).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the U^m V^n normal form of an expression.
    NormalForm {
        #[command(flatten)]
        algebra: AlgebraArgs,
        expr: String,
    },
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected N1xN2, got '{s}'"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// A complex scalar written in the expression grammar, e.g. `i`, `-1`, `(0.6+0.8i)`.
fn parse_scalar(s: &str) -> Result<Complex64, Error> {
    let params = ModularParams::new(1, 2)?;
    let poly = NCLaurentPoly::parse(s, params)?;
    if poly.terms().any(|(k, _)| k != (0, 0)) {
        return Err(Error::Syntax {
            position: 0,
            message: format!("'{s}' is not a scalar"),
        });
    }
    Ok(poly.coeff(0, 0))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Norm {
            algebra,
            expr,
            grid,
            out,
        } => {
            let params = algebra.params()?;
            let a = NCLaurentPoly::parse(&expr, params)?;
            let torus = TorusGrid::new(grid.grid.0, grid.grid.1)?;
            let est = operator_norm_estimate(&a, &torus, grid.refine);
            println!("{}", sig17(est.norm));
            if let Some(path) = out {
                let pt = RepPoint::from_angles(est.phi1, est.phi2);
                let doc = json!({
                    "norm": est.norm,
                    "argmax": {
                        "phi1": est.phi1,
                        "phi2": est.phi2,
                        "z1": pair(pt.z1()),
                        "z2": pair(pt.z2()),
                    },
                    "grid": [torus.n1(), torus.n2()],
                    "refine": grid.refine,
                });
                fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")?;
            }
        }
        Command::Butterfly {
            qmax,
            expr,
            grid,
            out,
            format,
        } => {
            let torus = TorusGrid::new(grid.0, grid.1)?;
            let rows = butterfly(qmax, &expr, &torus)?;
            let text = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_butterfly_csv(&rows, &mut buf)?;
                    String::from_utf8(buf).expect("CSV is ASCII")
                }
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            json!({"p": r.p, "q": r.q, "theta": r.theta,
                                   "band_lo": r.band_lo, "band_hi": r.band_hi})
                        })
                        .collect();
                    serde_json::to_string_pretty(&rows)? + "\n"
                }
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Classify { p, q, p2, q2 } => {
            let iso = rotalg::bundle::classify_isomorphic(p, q, p2, q2)?;
            println!("{}", if iso { "isomorphic" } else { "not-isomorphic" });
        }
        Command::RepEquiv {
            q,
            tol,
            z1,
            z2,
            z1b,
            z2b,
        } => {
            if q < 1 {
                return Err(Error::Range { p: 0, q: q as i64 });
            }
            let a = RepPoint::new(parse_scalar(&z1)?, parse_scalar(&z2)?)?;
            let b = RepPoint::new(parse_scalar(&z1b)?, parse_scalar(&z2b)?)?;
            let eq = reps_equivalent(&a, &b, q, tol);
            println!("{}", if eq { "equivalent" } else { "not-equivalent" });
        }
        Command::SpectralDecomp { file, tol, out } => {
            let m = read_matrix_json(&fs::read_to_string(file)?)?;
            let fam = spectral_decomposition(&m, tol)?;
            let doc = json!({
                "phases": fam.phases,
                "projections": fam.projections.iter().map(matrix_to_rows).collect::<Vec<_>>(),
            });
            emit(out.as_deref(), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
        }
        Command::Fourier {
            file,
            mmax,
            out,
            format,
        } => {
            let section = read_section_json(&fs::read_to_string(file)?)?;
            let table = fourier_coefficients(&section, mmax)?;
            let text = match format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_coeff_csv(&table, &mut buf)?;
                    String::from_utf8(buf).expect("CSV is ASCII")
                }
                Format::Json => {
                    let rows: Vec<_> = table
                        .entries
                        .iter()
                        .map(|(&(m, n), c)| json!({"m": m, "n": n, "re": c.re, "im": c.im}))
                        .collect();
                    serde_json::to_string_pretty(&rows)? + "\n"
                }
            };
            emit(out.as_deref(), &text)?;
        }
        Command::VerifySection { file, tol } => {
            let section = read_section_json(&fs::read_to_string(file)?)?;
            let report = check_membership(&section, tol)?;
            println!(
                "{} max_violation={}",
                if report.holds { "member" } else { "not-member" },
                sig17(report.max_violation)
            );
        }
        Command::Synthesize {
            algebra,
            expr,
            n,
            out,
        } => {
            let params = algebra.params()?;
            let a = NCLaurentPoly::parse(&expr, params)?;
            let section = synthesize_section(&a, n.unwrap_or(8 * params.dim()))?;
            emit(out.as_deref(), &(write_section_json(&section)? + "\n"))?;
        }
        Command::NormalForm { algebra, expr } => {
            let params = algebra.params()?;
            println!("{}", NCLaurentPoly::parse(&expr, params)?.render());
        }
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err.root() {
        Error::Syntax { .. } | Error::EmptyExpression => 2,
        Error::Io(_) | Error::Json(_) | Error::Format(_) => 4,
        _ => 3,
    }
}

fn configure_threads() {
    let Ok(value) = std::env::var("ROTALG_THREADS") else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            // Fails only if a pool already exists, which cannot happen this early.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        _ => eprintln!("warning: ignoring invalid ROTALG_THREADS={value}"),
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
