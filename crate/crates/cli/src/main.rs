use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use posetrep::differentiation::{derive_poset_at, diff_space, nu_count, DiffMode, Strategy};
use posetrep::functors::{coinduce, induce, restrict_to};
use posetrep::io::{read_poset, read_ssp, write_poset, write_ssp, AnySpace};
use posetrep::linalg::Field;
use posetrep::oracle::{cross_check_nu, EnumConfig, Oracle};
use posetrep::par::Execution;
use posetrep::poset::Poset;
use posetrep::sspace::{hom_space, SSpace};
use posetrep::verify::{find_check, run_check, run_suite, SuiteReport, DEFAULT_SEED};
use posetrep::{Error, Result};

#[derive(Parser)]
#[command(name = "posetrep", version, about = "Representations of finite posets over exact fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Filter,
    Ideal,
}

impl From<Mode> for DiffMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Filter => DiffMode::Filter,
            Mode::Ideal => DiffMode::Ideal,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    First,
    AllPaths,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctorArg {
    Res,
    Ind,
    Coind,
    Dual,
    #[value(name = "Ep")]
    EQuot,
    #[value(name = "E^p")]
    ESub,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a .poset or .ssp file
    Check { file: PathBuf },
    /// Print the Hasse diagram in DOT
    Dot { file: PathBuf },
    /// Print the derived poset at a point
    Derive {
        file: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Also write the derived poset to this file
        #[arg(long)]
        emit: Option<PathBuf>,
        /// ASCII labels (`a^b`, `avb`); the only rendering
        #[arg(long)]
        ascii: bool,
    },
    /// Differentiate an S-space; writes the result and its derived poset
    Diff {
        file: PathBuf,
        #[arg(long)]
        point: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Output .ssp (a sibling .poset is written too); stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension and basis of Hom(U, V)
    Hom { source: PathBuf, target: PathBuf },
    /// Apply a functor to an S-space
    Apply {
        #[arg(long, value_enum)]
        functor: FunctorArg,
        file: PathBuf,
        /// Target poset for res (a subposet) and ind/coind (a host)
        #[arg(long)]
        to: Option<PathBuf>,
        /// The point p for Ep and E^p
        #[arg(long)]
        point: Option<String>,
        /// Output .ssp (a sibling .poset is written too); stdout if omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count indecomposables by repeated differentiation
    Nu {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "first")]
        strategy: StrategyArg,
        #[arg(long)]
        trace: bool,
    },
    /// Brute-force census over a prime field
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        field: u32,
        #[arg(long, default_value_t = 2)]
        maxdim: usize,
        /// Lift the size guardrails
        #[arg(long)]
        force: bool,
        /// Compare with the recursion value
        #[arg(long)]
        cross_check: bool,
        /// Write indecomposable representatives as .ssp files here
        #[arg(long)]
        reps: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the invariant suite
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Run a single check by name
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        sequential: bool,
    },
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(clap::error::ErrorKind::ArgumentConflict, msg).exit()
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| io_err(path, e))
}

/// Writes `v` to `out` with a sibling `.poset`, or prints it referring to
/// `poset_ref`.
fn emit_space<F: Field>(v: &SSpace<F>, out: Option<&Path>, poset_ref: &str) -> Result<String> {
    match out {
        Some(path) => {
            let poset_path = path.with_extension("poset");
            write_file(&poset_path, &write_poset(v.poset()))?;
            let name = poset_path.file_name().and_then(|n| n.to_str()).unwrap_or("derived.poset");
            write_file(path, &write_ssp(v, name))?;
            Ok(format!("wrote {} and {}\n", path.display(), poset_path.display()))
        }
        None => Ok(write_ssp(v, poset_ref)),
    }
}

macro_rules! on_space {
    ($any:expr, $v:ident => $body:expr) => {
        match $any {
            AnySpace::Rational($v) => $body,
            AnySpace::Prime($v) => $body,
        }
    };
}

fn hom_report<F: Field>(u: &SSpace<F>, v: &SSpace<F>) -> Result<String> {
    let h = hom_space(u, v)?;
    let field = u.field();
    let mut out = format!("dim={}\n", h.dim());
    for (i, m) in h.basis().iter().enumerate() {
        let rows: Vec<String> = (0..m.rows())
            .map(|r| m.row(r).iter().map(|x| field.format_elem(x)).collect::<Vec<_>>().join(","))
            .collect();
        out.push_str(&format!("basis[{i}]: {}\n", rows.join("; ")));
    }
    Ok(out)
}

fn apply_functor<F: Field>(
    v: &SSpace<F>,
    functor: FunctorArg,
    to: Option<&Arc<Poset>>,
    point: Option<&str>,
) -> Result<SSpace<F>> {
    let need_to = || to.unwrap_or_else(|| usage_error("--to is required for res, ind and coind"));
    let need_point = || -> Result<usize> {
        let p = point.unwrap_or_else(|| usage_error("--point is required for Ep and E^p"));
        v.poset().index_of(p)
    };
    match functor {
        FunctorArg::Res => restrict_to(v, need_to()),
        FunctorArg::Ind => induce(v, need_to()),
        FunctorArg::Coind => coinduce(v, need_to()),
        FunctorArg::Dual => Ok(v.dualize()),
        FunctorArg::EQuot => Ok(v.e_quot(need_point()?).0),
        FunctorArg::ESub => Ok(v.e_sub(need_point()?).0),
    }
}

fn run(cmd: Command) -> Result<(String, bool)> {
    match cmd {
        Command::Check { file } => {
            if file.extension().is_some_and(|e| e == "ssp") {
                let (v, _) = read_ssp(&file)?;
                Ok((
                    format!("ok: S-space of dimension {} over a poset of {} elements\n", v.dim(), v.poset().len()),
                    true,
                ))
            } else {
                let p = read_poset(&file)?;
                Ok((
                    format!("ok: {} elements, width {}, hash {}\n", p.len(), p.width(), p.stable_hash()),
                    true,
                ))
            }
        }
        Command::Dot { file } => Ok((read_poset(&file)?.to_dot(), true)),
        Command::Derive {
            file,
            point,
            mode,
            emit,
            ascii: _,
        } => {
            let p = Arc::new(read_poset(&file)?);
            let d = derive_poset_at(&p, &point, mode.into())?;
            let text = write_poset(&d.result);
            if let Some(path) = emit {
                write_file(&path, &text)?;
            }
            Ok((text, true))
        }
        Command::Diff { file, point, mode, out } => {
            let (any, _) = read_ssp(&file)?;
            let d = derive_poset_at(any.poset(), &point, mode.into())?;
            let text = on_space!(&any, v => emit_space(&diff_space(v, &d)?, out.as_deref(), "derived.poset")?);
            Ok((text, true))
        }
        Command::Hom { source, target } => {
            let (u, _) = read_ssp(&source)?;
            let (v, _) = read_ssp(&target)?;
            let text = match (&u, &v) {
                (AnySpace::Rational(a), AnySpace::Rational(b)) => hom_report(a, b)?,
                (AnySpace::Prime(a), AnySpace::Prime(b)) => hom_report(a, b)?,
                _ => return Err(Error::FieldMismatch("Q".into(), "F p".into())),
            };
            Ok((text, true))
        }
        Command::Apply {
            functor,
            file,
            to,
            point,
            out,
        } => {
            let (any, poset_path) = read_ssp(&file)?;
            let target = match &to {
                Some(path) => Some(Arc::new(read_poset(path)?)),
                None => None,
            };
            if matches!(functor, FunctorArg::Dual) && out.is_none() {
                usage_error("dual writes a new poset; give --out");
            }
            let poset_ref = to.as_ref().unwrap_or(&poset_path).display().to_string();
            let text = on_space!(&any, v => {
                let w = apply_functor(v, functor, target.as_ref(), point.as_deref())?;
                emit_space(&w, out.as_deref(), &poset_ref)?
            });
            Ok((text, true))
        }
        Command::Nu { file, strategy, trace } => {
            let p = Arc::new(read_poset(&file)?);
            let all = matches!(strategy, StrategyArg::AllPaths);
            let t = nu_count(&p, if all { Strategy::AllPaths } else { Strategy::First });
            let text = if trace {
                t.to_report(all)
            } else {
                format!("nu={}\n", t.nu)
            };
            Ok((text, true))
        }
        Command::Oracle {
            file,
            field,
            maxdim,
            force,
            cross_check,
            reps,
            seed,
        } => {
            let p = Arc::new(read_poset(&file)?);
            let cfg = EnumConfig {
                force,
                seed,
                ..EnumConfig::new(field, maxdim)
            };
            let census = if cross_check {
                let r = cross_check_nu(p.clone(), cfg)?;
                let report = r.report.clone();
                (r.census, report)
            } else {
                let c = Oracle::new(p.clone(), cfg)?.census()?;
                let mut report = c.table();
                report.push_str(&format!("total indecomposable: {}\n", c.total_indecomposable()));
                (c, report)
            };
            let (census, mut text) = census;
            if let Some(dir) = reps {
                fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
                write_file(&dir.join("poset.poset"), &write_poset(&p))?;
                let mut n = 0;
                for (dim, classes) in census.classes.iter().enumerate() {
                    let indecomposable = classes.iter().filter(|c| c.status == posetrep::oracle::Status::Indecomposable);
                    for (i, c) in indecomposable.enumerate() {
                        write_file(&dir.join(format!("rep_d{dim}_{i}.ssp")), &write_ssp(&c.space, "poset.poset"))?;
                        n += 1;
                    }
                }
                text.push_str(&format!("wrote {n} representatives to {}\n", dir.display()));
            }
            Ok((text, true))
        }
        Command::Verify {
            seed,
            cases,
            check,
            sequential,
        } => {
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let report = match check {
                Some(name) => {
                    let c = find_check(&name).unwrap_or_else(|| usage_error(&format!("unknown check {name:?}")));
                    SuiteReport {
                        seed,
                        checks: vec![run_check(&c, seed, cases, exec)],
                    }
                }
                None => run_suite(seed, cases, exec),
            };
            Ok((report.render(), report.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
