//! The `hstar` command line.
//!
//! Exit codes: 0 on success, 1 when an axiom or structure check fails, 2 on
//! bad usage or unreadable input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algfile::{read_algebra, write_algebra, write_report, Report};
use crate::axioms::{check_axiom, solve_counit, solve_star, AlgebraCandidate, Axiom, Verdict};
use crate::builders::{
    counterexample, disjoint_groups_rel, from_basis_in, group_algebra, parse_group_list, COUNTEREXAMPLES,
};
use crate::enumerate::{catalogue, diff_relations, enumerate_with_progress, relation_bits, Category, EnumSpec};
use crate::error::Error;
use crate::semiring::{Kind, ScalarDomain};
use crate::structure::{copyables_complex_seeded, decompose, hilb_decompose_with, Decomposition};
use crate::DEFAULT_SEED;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hstar",
    version,
    about = "Check and decompose Frobenius and H*-algebras in matrix categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check axioms on an algebra file.
    Check {
        file: PathBuf,
        /// Comma-separated subset of A,C,M,F,Fp,U,H.
        #[arg(long, default_value = "A,C,M,F,Fp,U,H")]
        axioms: String,
        #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
        tolerance: f64,
        /// Also write a JSON report here.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Split an algebra into one-dimensional or group summands.
    Decompose {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
        tolerance: f64,
        /// Seed for the random combination of multiplication operators.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the JSON report here instead of standard output.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Enumerate boolean algebras on a small carrier.
    Enumerate {
        #[arg(long)]
        category: Category,
        #[arg(long)]
        size: usize,
        /// Defaults to A,C,M,F for rel and A,C,M,F,H for pinj.
        #[arg(long)]
        axioms: Option<String>,
        #[arg(long)]
        up_to_iso: bool,
        /// Permit the size-4 search, which takes about a minute.
        #[arg(long)]
        allow_size_4: bool,
    },
    /// Write an algebra file from a builder.
    Build {
        #[arg(long)]
        kind: BuildKind,
        /// Dimension for basis, group such as Z2xZ3 or S3, groups such as
        /// Z2+Z3 for disjoint, a name for counterexample.
        #[arg(long)]
        spec: String,
        #[arg(long, default_value = "complex")]
        semiring: String,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Solve for the star operation of (H).
    Star {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9, allow_negative_numbers = true)]
        tolerance: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BuildKind {
    Basis,
    Group,
    Disjoint,
    Counterexample,
}

impl clap::ValueEnum for Category {
    fn value_variants<'a>() -> &'a [Self] {
        &[Category::Rel, Category::PInj]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Category::Rel => "rel",
            Category::PInj => "pinj",
        }))
    }
}

/// Failure carrying its exit code.
struct Exit(i32, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Exit {
        let code = match e {
            Error::Similarity { .. }
            | Error::NotAGroup { .. }
            | Error::WeightViolation { .. }
            | Error::DegenerateSpectrum { .. } => EXIT_FAIL,
            _ => EXIT_USAGE,
        };
        Exit(code, e.to_string())
    }
}

impl From<std::io::Error> for Exit {
    fn from(e: std::io::Error) -> Exit {
        Exit(EXIT_USAGE, e.to_string())
    }
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn load(path: &Path, tolerance: f64) -> Result<AlgebraCandidate, Exit> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Exit(EXIT_USAGE, format!("tolerance must be positive, got {tolerance}")));
    }
    let cand = read_algebra(path).map_err(|e| Exit(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    Ok(cand.with_tolerance(tolerance))
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    match command {
        Command::Check {
            file,
            axioms,
            tolerance,
            output,
        } => {
            let cand = load(&file, tolerance)?;
            let axioms = Axiom::parse_list(&axioms)?;
            cmd_check(&cand, &axioms, output.as_deref(), out)
        }
        Command::Decompose {
            file,
            tolerance,
            seed,
            output,
        } => {
            let cand = load(&file, tolerance)?;
            cmd_decompose(&cand, seed, output.as_deref(), out)
        }
        Command::Enumerate {
            category,
            size,
            axioms,
            up_to_iso,
            allow_size_4,
        } => {
            if size == 4 && !allow_size_4 {
                return Err(Exit(EXIT_USAGE, "size 4 needs --allow-size-4".into()));
            }
            let mut spec = match category {
                Category::Rel => EnumSpec::rel(size),
                Category::PInj => EnumSpec::pinj(size),
            };
            if let Some(list) = axioms {
                spec.axioms = Axiom::parse_list(&list)?;
            }
            spec.up_to_iso = up_to_iso;
            cmd_enumerate(&spec, out, err)
        }
        Command::Build {
            kind,
            spec,
            semiring,
            output,
        } => {
            let kind_tag = Kind::from_tag(&semiring).ok_or_else(|| {
                Exit(
                    EXIT_USAGE,
                    format!("unknown semiring {semiring:?} (bool, complex, nonneg_real, quantale_ext_nonneg_real)"),
                )
            })?;
            let domain = ScalarDomain::new(kind_tag);
            let cand = match kind {
                BuildKind::Basis => {
                    let n: usize =
                        spec.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| {
                            Exit(EXIT_USAGE, format!("basis needs a positive dimension, got {spec:?}"))
                        })?;
                    from_basis_in(n, domain)
                }
                BuildKind::Group => group_algebra(&spec.parse()?, domain)?,
                BuildKind::Disjoint => {
                    if kind_tag != Kind::Boolean {
                        return Err(Exit(
                            EXIT_USAGE,
                            "disjoint unions of groups are built in bool only".into(),
                        ));
                    }
                    disjoint_groups_rel(&parse_group_list(&spec)?)?
                }
                BuildKind::Counterexample => counterexample(&spec)
                    .map_err(|e| Exit(EXIT_USAGE, format!("{e}; known: {}", COUNTEREXAMPLES.join(", "))))?,
            };
            let text = write_algebra(&cand);
            match output {
                Some(path) => std::fs::write(&path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Star { file, tolerance } => {
            let cand = load(&file, tolerance)?;
            cmd_star(&cand, out)
        }
    }
}

fn cmd_check(
    cand: &AlgebraCandidate,
    axioms: &[Axiom],
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, Exit> {
    let mut verdicts = Vec::new();
    let mut all_pass = true;
    for &ax in axioms {
        let (verdict, line) = match ax {
            Axiom::H => match solve_star(cand) {
                Ok(_) => (pass(ax), format!("{ax} pass")),
                Err(e) => (fail(ax), format!("{ax} fail: {e}")),
            },
            Axiom::U if cand.epsilon().is_none() => match solve_counit(cand) {
                Some(_) => (pass(ax), format!("{ax} pass (counit solved)")),
                None => (fail(ax), format!("{ax} fail: no counit solves (id ⊗ ε) δ = id")),
            },
            _ => {
                let v = check_axiom(cand, ax)?;
                let line = v.to_string();
                (v, line)
            }
        };
        all_pass &= verdict.pass;
        writeln!(out, "{line}")?;
        verdicts.push(verdict);
    }
    if let Some(path) = output {
        std::fs::write(
            path,
            write_report(&Report::Check {
                cand,
                verdicts: &verdicts,
            }),
        )?;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_FAIL })
}

fn pass(axiom: Axiom) -> Verdict {
    Verdict {
        axiom,
        pass: true,
        witness: None,
    }
}

fn fail(axiom: Axiom) -> Verdict {
    Verdict {
        axiom,
        pass: false,
        witness: None,
    }
}

fn cmd_decompose(cand: &AlgebraCandidate, seed: u64, output: Option<&Path>, out: &mut dyn Write) -> Result<i32, Exit> {
    let dec: Decomposition = if cand.domain().kind == Kind::Complex {
        hilb_decompose_with(cand, copyables_complex_seeded(cand, seed)?)
    } else {
        decompose(cand)?
    };
    let report = write_report(&Report::Decomposition {
        cand,
        decomposition: &dec,
    });
    match output {
        Some(path) => {
            std::fs::write(path, &report)?;
            writeln!(out, "summands: {:?}", dec.profile())?;
            writeln!(out, "radical_dim: {}", dec.radical_dim)?;
            if let Some(c) = &dec.copyables {
                writeln!(out, "seed: {:#x}", c.seed)?;
            }
        }
        None => out.write_all(report.as_bytes())?,
    }
    Ok(match dec.anomaly(cand.domain().tolerance) {
        Some(_) => EXIT_FAIL,
        None => EXIT_OK,
    })
}

/// `{a·b=c, ...}` over unordered pairs, the multiplication `∇ = Δ†`.
fn describe(cand: &AlgebraCandidate) -> String {
    let n = cand.n();
    let bits = relation_bits(cand);
    let mut parts = Vec::new();
    for a in 0..n {
        for b in a..n {
            let cs: Vec<String> = (0..n)
                .filter(|&c| bits[(a * n + b) * n + c])
                .map(|c| c.to_string())
                .collect();
            match cs.len() {
                0 => {}
                1 => parts.push(format!("{a}·{b}={}", cs[0])),
                _ => parts.push(format!("{a}·{b}∈{{{}}}", cs.join(","))),
            }
        }
    }
    format!("{{{}}}", parts.join(" "))
}

fn cmd_enumerate(spec: &EnumSpec, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Exit> {
    let progress = |done: usize, total: usize| eprintln!("  {done}/{total} chunks");
    let quiet = |_: usize, _: usize| {};
    let report: &(dyn Fn(usize, usize) + Sync) = if spec.size == 4 { &progress } else { &quiet };
    if spec.size == 4 {
        writeln!(err, "enumerating size 4, this takes a while")?;
    }
    let found = enumerate_with_progress(spec, report)?;
    let tags: Vec<&str> = spec.axioms.iter().map(|a| a.tag()).collect();
    writeln!(
        out,
        "category {} size {} axioms {}{}",
        spec.category,
        spec.size,
        tags.join(","),
        if spec.up_to_iso { " up to isomorphism" } else { "" }
    )?;
    writeln!(out, "survivors: {}", found.len())?;
    for cand in &found {
        writeln!(out, "  {}", describe(cand))?;
    }
    if spec.category == Category::Rel {
        let cat = catalogue(spec.size)?;
        let expected = if spec.up_to_iso {
            cat.iso_representatives()?
        } else {
            cat.relations()
        };
        let diff = diff_relations(&expected, &found);
        let expected = expected.len();
        writeln!(
            out,
            "catalogue: {expected} (missing {}, extra {})",
            diff.missing.len(),
            diff.extra.len()
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_star(cand: &AlgebraCandidate, out: &mut dyn Write) -> Result<i32, Exit> {
    match solve_star(cand) {
        Ok(star) => {
            if cand.domain().kind != Kind::Boolean && cand.domain().kind != Kind::Quantale {
                writeln!(out, "seed: {DEFAULT_SEED:#x}")?;
            }
            for j in 0..star.n() {
                let col: Vec<String> = (0..star.n()).map(|r| star.matrix.get(r, j).to_string()).collect();
                writeln!(out, "star(e{j}) = [{}]", col.join(", "))?;
            }
            Ok(EXIT_OK)
        }
        Err(e) => {
            writeln!(out, "{e}")?;
            Ok(EXIT_FAIL)
        }
    }
}
