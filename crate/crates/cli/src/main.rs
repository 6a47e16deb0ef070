mod formats;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use ugb_core::driver::{
    cached_order_set, compute_ugb_with_orders, universal_order_set, UgbReport, UgbResult,
};
use ugb_core::groebner::{normal_form_table, MonomialOrder};
use ugb_core::ideals::{
    from_lattice, from_points, lattice_minimize, lattice_test_set, LatticeBasis,
    PointConfiguration, TestSet,
};
use ugb_core::oracle::{
    plucker_dual, verify_ugb, VerifyConfig, DEFAULT_MINOR_GUARD, DEFAULT_PAIR_BUDGET,
};
use ugb_core::staircase::{
    enumerate_staircases, format_int_vector, format_set, parse_int_vector, u_set, v_set,
    DEFAULT_STAIRCASE_GUARD,
};
use ugb_core::zonotope::{
    all_chambers, positive_chambers, primitive_differences, DEFAULT_CHAMBER_GUARD,
};
use ugb_core::{DynFp, DynamicModulus, Error, Field, FieldTag, Rational};

use formats::{read_basis, split_basis_file, write_basis};

#[derive(Parser)]
#[command(
    name = "ugb",
    version,
    about = "Universal Groebner bases of zero-dimensional ideals"
)]
struct Cli {
    /// Write the artifact here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Universal basis, initial staircases and state vertices of a reduced basis file.
    Ugb {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Directory holding `orders_{n}_{d}.txt`.
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        no_cache: bool,
        /// Treat the input lines as arbitrary generators.
        #[arg(long)]
        repair: bool,
        #[arg(long, default_value_t = DEFAULT_CHAMBER_GUARD)]
        max_chambers: usize,
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        pair_budget: usize,
    },
    /// All n-staircases in d variables.
    Staircases {
        n: usize,
        d: usize,
        #[arg(long, default_value_t = DEFAULT_STAIRCASE_GUARD)]
        max_staircases: usize,
    },
    /// The sets V, U and the direction set D.
    Vset { n: usize, d: usize },
    /// Chambers of the Hilbert zonotope arrangement.
    Zonotope {
        n: usize,
        d: usize,
        /// All chambers, not only the positive ones.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = DEFAULT_CHAMBER_GUARD)]
        max_chambers: usize,
    },
    /// Computes the witness list and writes it to the cache.
    Orders {
        n: usize,
        d: usize,
        #[arg(long, default_value = ".")]
        cache_dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CHAMBER_GUARD)]
        max_chambers: usize,
    },
    /// Reduced basis of the vanishing ideal of a point file.
    FromPoints {
        input: PathBuf,
        #[arg(long)]
        order: String,
        #[arg(long, default_value = "QQ")]
        field: String,
    },
    /// Reduced basis of a lattice ideal; the file lists one basis column per line.
    FromLattice {
        input: PathBuf,
        #[arg(long)]
        order: String,
        #[arg(long, default_value = "QQ")]
        field: String,
    },
    /// Test set of moves from the JSON result of a lattice ideal.
    Testset { input: PathBuf },
    /// Minimizes `w·x` over the lattice fiber of `x` using a test set.
    Minimize {
        #[arg(long)]
        testset: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
    /// Checks a JSON result against the oracles.
    Verify {
        input: PathBuf,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        pair_budget: usize,
    },
    /// Nonzero maximal minors of the normal-form table of a basis file.
    Plucker {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MINOR_GUARD)]
        max_minors: usize,
    },
}

enum Failure {
    Input(String),
    Guard(String),
    Oracle(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Guard(_) => 2,
            Failure::Oracle(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Guard(m) | Failure::Oracle(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } | Error::Timeout(_) => Failure::Guard(e.to_string()),
            Error::Internal(_) => Failure::Oracle(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Input(format!("stdout: {e}")))
        }
    }
}

fn lines<I: IntoIterator<Item = String>>(it: I) -> String {
    it.into_iter().map(|l| l + "\n").collect()
}

macro_rules! with_field {
    ($tag:expr, $f:ident ( $($arg:expr),* )) => {
        match $tag {
            FieldTag::Rationals => $f::<Rational>($($arg),*),
            FieldTag::PrimeField(p) => {
                DynamicModulus::set(p)?;
                $f::<DynFp>($($arg),*)
            }
        }
    };
}

struct UgbArgs {
    format: Format,
    cache_dir: Option<PathBuf>,
    repair: bool,
    max_chambers: usize,
    pair_budget: usize,
}

fn run_ugb<F: Field>(header: &formats::Header, body: &[&str], a: &UgbArgs) -> Outcome<String> {
    let g = read_basis::<F>(header, body, a.repair, a.pair_budget)?;
    let ws = cached_order_set(a.cache_dir.as_deref(), g.n(), g.dim(), a.max_chambers)?;
    let r = compute_ugb_with_orders(&g, &ws)?;
    Ok(match a.format {
        Format::Json => r.to_json() + "\n",
        Format::Text => r.to_text(),
    })
}

fn points_basis<F: Field>(text: &str, order: &str) -> Outcome<String> {
    let c = PointConfiguration::<F>::parse(text)?;
    let ord = MonomialOrder::parse(order, Some(c.dim()))?;
    Ok(write_basis(&from_points(&c, &ord)?))
}

fn lattice_basis<F: Field>(text: &str, order: &str) -> Outcome<String> {
    let l = LatticeBasis::parse(text)?;
    let ord = MonomialOrder::parse(order, Some(l.dim()))?;
    Ok(write_basis(&from_lattice::<F>(&l, &ord)?))
}

fn report_of(text: &str) -> Outcome<(UgbReport, FieldTag)> {
    let report: UgbReport =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("bad result file: {e}")))?;
    let tag = report.field.parse()?;
    Ok((report, tag))
}

fn test_set_of<F: Field>(report: &UgbReport) -> Outcome<String> {
    let r = UgbResult::<F>::from_report(report)?;
    let t = lattice_test_set(&r.universal_polynomials())?;
    Ok(lines(t.moves.iter().map(|m| format_int_vector(m))))
}

fn verify_report<F: Field>(
    report: &UgbReport,
    cfg: &VerifyConfig,
    out: &Option<PathBuf>,
) -> Outcome {
    let r = UgbResult::<F>::from_report(report)?;
    let checks = verify_ugb(&r, cfg);
    let mut text = String::new();
    for c in &checks {
        match &c.failure {
            None => text.push_str(&format!("PASS {}\n", c.name)),
            Some(why) => text.push_str(&format!("FAIL {}: {why}\n", c.name)),
        }
    }
    emit(out, &text)?;
    if checks.iter().all(|c| c.passed()) {
        Ok(())
    } else {
        Err(Failure::Oracle(format!(
            "{} of {} checks failed",
            checks.iter().filter(|c| !c.passed()).count(),
            checks.len()
        )))
    }
}

fn plucker_of<F: Field>(header: &formats::Header, body: &[&str], guard: usize) -> Outcome<String> {
    let g = read_basis::<F>(header, body, false, DEFAULT_PAIR_BUDGET)?;
    let table = normal_form_table(&g)?;
    let minors = plucker_dual(&table, guard)?;
    Ok(lines(
        minors
            .iter()
            .map(|(mu, v)| format!("{} {v}", format_set(mu.iter()))),
    ))
}

fn run(cli: Cli) -> Outcome {
    let out = &cli.output;
    match cli.command {
        Command::Ugb {
            input,
            format,
            cache_dir,
            no_cache,
            repair,
            max_chambers,
            pair_budget,
        } => {
            let text = read(&input)?;
            let (header, body) = split_basis_file(&text)?;
            let args = UgbArgs {
                format,
                cache_dir: if no_cache { None } else { cache_dir },
                repair,
                max_chambers,
                pair_budget,
            };
            let s = with_field!(header.field, run_ugb(&header, &body, &args))?;
            emit(out, &s)
        }
        Command::Staircases {
            n,
            d,
            max_staircases,
        } => {
            let all = enumerate_staircases(n, d, max_staircases)?;
            emit(out, &lines(all.iter().map(|s| s.to_string())))
        }
        Command::Vset { n, d } => {
            let v = v_set(n, d);
            let u = u_set(n, d);
            let dirs = primitive_differences(n, d);
            let mut text = format!("V {}\nU {}\n", format_set(v.iter()), format_set(u.iter()));
            text.push_str(&format!(
                "D {}\n",
                dirs.generators()
                    .iter()
                    .map(|g| format_int_vector(g))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            emit(out, &text)
        }
        Command::Zonotope {
            n,
            d,
            all,
            max_chambers,
        } => {
            let cs = if all {
                all_chambers(n, d, max_chambers)?
            } else {
                positive_chambers(n, d, max_chambers)?
            };
            emit(out, &lines(cs.iter().map(|c| c.to_string())))
        }
        Command::Orders {
            n,
            d,
            cache_dir,
            max_chambers,
        } => {
            let ws = universal_order_set(n, d, max_chambers)?;
            let path = ugb_core::driver::cache_path(&cache_dir, n, d);
            ugb_core::driver::write_order_cache(&path, n, d, &ws)?;
            eprintln!("wrote {} witnesses to {}", ws.len(), path.display());
            Ok(())
        }
        Command::FromPoints {
            input,
            order,
            field,
        } => {
            let text = read(&input)?;
            let tag: FieldTag = field.parse()?;
            let s = with_field!(tag, points_basis(&text, &order))?;
            emit(out, &s)
        }
        Command::FromLattice {
            input,
            order,
            field,
        } => {
            let text = read(&input)?;
            let tag: FieldTag = field.parse()?;
            let s = with_field!(tag, lattice_basis(&text, &order))?;
            emit(out, &s)
        }
        Command::Testset { input } => {
            let (report, tag) = report_of(&read(&input)?)?;
            let s = with_field!(tag, test_set_of(&report))?;
            emit(out, &s)
        }
        Command::Minimize { testset, x, w } => {
            let moves = read(&testset)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(parse_int_vector)
                .collect::<Result<_, _>>()?;
            let t = TestSet { moves };
            let x = parse_int_vector(&x)?;
            let w: Vec<Rational> = parse_int_vector(&w)?
                .into_iter()
                .map(|c| Rational::from_integer(BigInt::from(c)))
                .collect();
            if w.len() != x.len() || t.moves.iter().any(|m| m.len() != x.len()) {
                return Err(Failure::Input(
                    "x, w and the moves must have the same length".into(),
                ));
            }
            if x.iter().any(|&c| c < 0) {
                return Err(Failure::Input("x must be nonnegative".into()));
            }
            emit(
                out,
                &(format_int_vector(&lattice_minimize(&t, &x, &w)) + "\n"),
            )
        }
        Command::Verify {
            input,
            samples,
            seed,
            pair_budget,
        } => {
            let (report, tag) = report_of(&read(&input)?)?;
            let cfg = VerifyConfig {
                samples,
                seed,
                pair_budget,
                ..VerifyConfig::default()
            };
            with_field!(tag, verify_report(&report, &cfg, out))
        }
        Command::Plucker { input, max_minors } => {
            let text = read(&input)?;
            let (header, body) = split_basis_file(&text)?;
            let s = with_field!(header.field, plucker_of(&header, &body, max_minors))?;
            emit(out, &s)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ugb: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
