//! Command-line driver: validate structure files, print cohomology tables,
//! transgress cocycles, run the property battery, and compute Smith normal
//! forms of matrix files. Exit codes: 0 success, 1 mathematical failure,
//! 2 input error.

use clap::{Parser, Subcommand, ValueEnum};
use groupoidal::cohomology::{cohomology, cohomology_range};
use groupoidal::crossed::{crossed_product, validate_crossed_module};
use groupoidal::format::{load_structure, parse_matrix, LoadedStructure};
use groupoidal::groupoid::validate_groupoid;
use groupoidal::matrix::smith_normal_form;
use groupoidal::nerve::NerveLevel;
use groupoidal::transgression::{
    convention_relation, transgress_class, Convention,
};
use groupoidal::verify::{verify_crossed_module, verify_groupoid, CheckStatus};
use groupoidal::Error;
use num_bigint::BigInt;
use num_traits::Zero;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "groupoidal",
    version,
    about = "Exact computations with finite groupoids: validation, nerve cohomology, and transgression to crossed products"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum ConventionArg {
    #[default]
    Tilde,
    F,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Convention {
        match c {
            ConventionArg::Tilde => Convention::Tilde,
            ConventionArg::F => Convention::F,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a groupoid or crossed-module file and check every axiom
    Validate { path: PathBuf },
    /// Print the integral cohomology table of the nerve, H^0 through H^pmax
    Cohomology {
        path: PathBuf,
        #[arg(long, default_value_t = 4)]
        pmax: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_cells: u64,
    },
    /// Transgress a level-p cocycle on the base to a class on the crossed product
    Transgress {
        path: PathBuf,
        /// Cochain level p of the input cocycle
        #[arg(long)]
        level: usize,
        /// Use generator j of H^p(base) as the input cocycle
        #[arg(long)]
        generator: Option<usize>,
        /// Read the input cocycle from a file of "<cell index> <value>" lines
        #[arg(long)]
        cocycle_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        convention: ConventionArg,
        #[arg(long, default_value_t = 1_000_000)]
        max_cells: u64,
    },
    /// Run the full property battery and print a pass/fail matrix
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = 4)]
        pmax: usize,
        /// Integer window for the twist laws; 0 skips them
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[arg(long, default_value_t = 1_000_000)]
        max_cells: u64,
    },
    /// Smith normal form of an integer matrix file: rank and divisors
    Snf { path: PathBuf },
}

fn main() {
    std::process::exit(run(Cli::parse()));
}

/// 2 for anything that prevents building the requested objects, 1 for a
/// mathematical failure on objects that did build, 0 otherwise.
fn input_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    2
}

fn run(cli: Cli) -> i32 {
    match cli.cmd {
        Cmd::Validate { path } => cmd_validate(&path),
        Cmd::Cohomology { path, pmax, max_cells } => cmd_cohomology(&path, pmax, max_cells),
        Cmd::Transgress { path, level, generator, cocycle_file, convention, max_cells } => {
            cmd_transgress(&path, level, generator, cocycle_file, convention.into(), max_cells)
        }
        Cmd::Verify { path, pmax, window, max_cells } => cmd_verify(&path, pmax, window, max_cells),
        Cmd::Snf { path } => cmd_snf(&path),
    }
}

fn cmd_validate(path: &Path) -> i32 {
    let loaded = match load_structure(path) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    let report = match &loaded {
        LoadedStructure::Groupoid(g) => validate_groupoid(g),
        LoadedStructure::Module(cm) => validate_crossed_module(cm),
    };
    print!("{report}");
    if report.is_valid() {
        0
    } else {
        1
    }
}

fn print_table(label: &str, groups: &[groupoidal::cohomology::CohomologyGroup]) {
    println!("{label}");
    for (p, g) in groups.iter().enumerate() {
        println!("  H^{p} = {g}");
    }
}

fn cmd_cohomology(path: &Path, pmax: usize, max_cells: u64) -> i32 {
    let loaded = match load_structure(path) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    match loaded {
        LoadedStructure::Groupoid(g) => {
            match cohomology_range(&g, pmax, max_cells) {
                Ok(groups) => {
                    for (p, grp) in groups.iter().enumerate() {
                        println!("H^{p} = {grp}");
                    }
                    0
                }
                Err(e) => input_error(&e),
            }
        }
        LoadedStructure::Module(cm) => {
            let cp = crossed_product(&cm);
            let base = match cohomology_range(&cm.base, pmax, max_cells) {
                Ok(t) => t,
                Err(e) => return input_error(&e),
            };
            let prod = match cohomology_range(&cp.groupoid, pmax, max_cells) {
                Ok(t) => t,
                Err(e) => return input_error(&e),
            };
            print_table("base groupoid:", &base);
            print_table("crossed product:", &prod);
            0
        }
    }
}

fn read_sparse_cocycle(path: &Path, cells: usize) -> Result<Vec<BigInt>, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut v = vec![BigInt::zero(); cells];
    let mut seen = vec![false; cells];
    for (ix, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        let line = ix + 1;
        if toks.len() != 2 {
            return Err(Error::Parse {
                line,
                msg: "cocycle lines are: <cell index> <integer value>".to_string(),
            });
        }
        let cell: usize = toks[0].parse().map_err(|_| Error::Parse {
            line,
            msg: format!("not a cell index: '{}'", toks[0]),
        })?;
        if cell >= cells {
            return Err(Error::Parse {
                line,
                msg: format!("cell index {cell} out of range; the level has {cells} cells"),
            });
        }
        if seen[cell] {
            return Err(Error::Parse {
                line,
                msg: format!("cell index {cell} given twice"),
            });
        }
        seen[cell] = true;
        v[cell] = toks[1].parse().map_err(|_| Error::Parse {
            line,
            msg: format!("not an integer: '{}'", toks[1]),
        })?;
    }
    Ok(v)
}

fn print_cochain(label: &str, level: &NerveLevel, g: &groupoidal::groupoid::FiniteGroupoid, v: &[BigInt]) {
    if v.iter().all(|x| x.is_zero()) {
        println!("{label}: zero cochain");
        return;
    }
    println!("{label}:");
    for (ix, val) in v.iter().enumerate() {
        if !val.is_zero() {
            println!("  {} = {val}", level.tuple(ix).display(g));
        }
    }
}

fn cmd_transgress(
    path: &Path,
    level: usize,
    generator: Option<usize>,
    cocycle_file: Option<PathBuf>,
    convention: Convention,
    max_cells: u64,
) -> i32 {
    if level < 1 {
        eprintln!("error: --level must be at least 1; transgression lowers the degree by one");
        return 2;
    }
    let loaded = match load_structure(path) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    let LoadedStructure::Module(cm) = loaded else {
        eprintln!("error: transgress needs a crossed-module file");
        return 2;
    };
    if !validate_crossed_module(&cm).is_valid() {
        eprintln!("error: the crossed module fails its axioms; run validate for the details");
        return 1;
    }
    let cp = crossed_product(&cm);

    let base_space = match cohomology(&cm.base, level, max_cells) {
        Ok(s) => s,
        Err(e) => return input_error(&e),
    };
    let base_level = match NerveLevel::build(&cm.base, level, max_cells) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };

    let cocycle = match (generator, cocycle_file) {
        (Some(j), None) => {
            let available = base_space.group().coords_len();
            if j >= available {
                eprintln!(
                    "error: generator index {j} out of range; H^{level}(base) = {} has {available} generator(s)",
                    base_space.group()
                );
                return 2;
            }
            println!("input: generator {j} of H^{level}(base) = {}", base_space.group());
            base_space.generator_cocycle(j)
        }
        (None, Some(f)) => match read_sparse_cocycle(&f, base_level.len()) {
            Ok(v) => {
                println!("input: cocycle from {}", f.display());
                v
            }
            Err(e) => return input_error(&e),
        },
        _ => {
            eprintln!("error: give exactly one of --generator or --cocycle-file");
            return 2;
        }
    };

    print_cochain("input cocycle", &base_level, &cm.base, &cocycle);
    println!("convention: {convention}");

    let result = match transgress_class(&cm, &cp, level, &cocycle, convention, max_cells) {
        Ok(r) => r,
        Err(e @ Error::NotACocycle(_)) => {
            eprintln!("error: {e}");
            return 1;
        }
        Err(e) => return input_error(&e),
    };
    println!("input cocycle check: passed");

    let prod_level = match NerveLevel::build(&cp.groupoid, level - 1, max_cells) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    print_cochain("T1 image", &prod_level, &cp.groupoid, &result.image);
    println!("image cocycle check: passed");
    println!("H^{}(crossed product) = {}", level - 1, result.group);
    let coords: Vec<String> = result.class_coords.iter().map(|x| x.to_string()).collect();
    println!("class coordinates (torsion first, then free): [{}]", coords.join(", "));

    match convention_relation(&cm, &cp, level, max_cells) {
        Ok(rel) => {
            println!("measured convention relation up to level {level}: {rel}");
            0
        }
        Err(e) => input_error(&e),
    }
}

fn cmd_verify(path: &Path, pmax: usize, window: i64, max_cells: u64) -> i32 {
    let loaded = match load_structure(path) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    let run = match &loaded {
        LoadedStructure::Groupoid(g) => verify_groupoid(g, pmax, max_cells),
        LoadedStructure::Module(cm) => verify_crossed_module(cm, pmax, window, max_cells),
    };
    let run = match run {
        Ok(r) => r,
        Err(e) => return input_error(&e),
    };
    for line in &run.lines {
        match &line.status {
            CheckStatus::Pass => match &line.detail {
                Some(d) => println!("pass: {} ({d})", line.name),
                None => println!("pass: {}", line.name),
            },
            CheckStatus::Skipped(reason) => println!("skipped: {} ({reason})", line.name),
            CheckStatus::Fail(detail) => println!("FAIL: {} ({detail})", line.name),
        }
    }
    if run.all_passed() {
        println!("overall: pass");
        0
    } else {
        println!("overall: FAIL");
        1
    }
}

fn cmd_snf(path: &Path) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return input_error(&e.into()),
    };
    let m = match parse_matrix(&text) {
        Ok(m) => m,
        Err(e) => return input_error(&e),
    };
    let snf = smith_normal_form(&m);
    println!("matrix: {} x {}", m.rows(), m.cols());
    println!("rank: {}", snf.rank);
    let divisors: Vec<String> = snf.divisors.iter().map(|d| d.to_string()).collect();
    println!("divisors: [{}]", divisors.join(", "));
    0
}
