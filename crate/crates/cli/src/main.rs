//! `zex`: Zinbiel algebras, their second cohomology and central extensions.
//!
//! Exit status: 0 success, 1 a mathematical check failed, 2 usage or parse error.

mod input;
mod report;
mod reproduce;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use zinbiel::catalog::{make, reduction_cases};
use zinbiel::cocycles::{cohomology, parse_forms, BilinearForm};
use zinbiel::extensions::{extend, find_permutation, nonsplit_report, ExtensionError, ExtensionSpec};
use zinbiel::invariants::{catalog_sweep, distinguish_report, fingerprint, known_collisions};
use zinbiel::linalg::{fmt_q, parse_q, Q};
use zinbiel::symbolic::action::{check_case, verify_action_formula};
use zinbiel::symbolic::template::{verify_aut_template, Reading};

use crate::report::Status;
use crate::reproduce::{case_status, listed_bases_match, Settings};

#[derive(Parser)]
#[command(name = "zex", version, about = "Exact checks for Zinbiel algebras and their central extensions")]
struct Cli {
    /// Bits of precision for numeric evaluation of radicals.
    #[arg(long, global = true, default_value_t = 128)]
    precision: u32,
    /// Numeric tolerance, as `p/q` or `1e-20`.
    #[arg(long, global = true, default_value = "1e-20")]
    tol: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    #[arg(long, global = true, env = "ZEX_SEED", default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Csv,
}

#[derive(Args)]
struct FamilyArgs {
    /// F1, F2 or F3.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the Zinbiel identity on every basis triple.
    Check {
        /// `zalg 1` file or catalog label.
        file: String,
    },
    /// Z², B² and H² with bases; compares catalog families with the listed bases.
    Cohomology {
        #[arg(long, conflicts_with = "file", requires = "n")]
        family: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        file: Option<String>,
    },
    /// Central extension by a list of cocycles.
    Extend {
        /// `zalg 1` file or catalog label.
        #[arg(long)]
        base: String,
        /// File of `form <name> : <p/q> <i> <j> ...` lines.
        #[arg(long)]
        cocycles: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Search for a basis permutation onto this algebra.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Fingerprints and pairwise separation.
    Invariants {
        /// Files or labels; defaults to the catalog list at `--n`.
        algebras: Vec<String>,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value = "2")]
        alpha: String,
        #[arg(long, default_value = "1/2")]
        alt_alpha: String,
    },
    /// Sample the automorphism template and compare with the chain extension.
    AutVerify {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = ReadingArg::Printed)]
        reading: ReadingArg,
    },
    /// Compare the symbolic action on H² with the closed-form coefficients.
    ActionVerify {
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Run the orbit reduction cases.
    OrbitVerify {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        /// Only this case, e.g. `F1/2/1a`.
        #[arg(long)]
        case: Option<String>,
    },
    /// Every check for `n` in a range, as markdown and CSV.
    Reproduce {
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 12)]
        n_cap: usize,
        /// Directory for `report.md` and `report.csv`; stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Printed,
    Corrected,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn form_lines(prefix: &str, n: usize, vectors: impl IntoIterator<Item = Vec<Q>>) -> String {
    vectors.into_iter().enumerate().map(|(i, v)| BilinearForm::from_flat(n, &v).to_line(&format!("{prefix}{}", i + 1)) + "\n").collect()
}

fn cmd_check(file: &str) -> Result<bool> {
    let a = input::load_algebra(file)?;
    let v = a.check_zinbiel();
    for x in &v {
        let d: Vec<String> = x.defect.iter().map(fmt_q).collect();
        println!("violation at ({}, {}, {}): defect [{}]", x.triple.0 + 1, x.triple.1 + 1, x.triple.2 + 1, d.join(" "));
    }
    println!("{}: dim {}, {} violations", if a.label.is_empty() { file } else { &a.label }, a.dim(), v.len());
    Ok(v.is_empty())
}

fn cmd_cohomology(family: Option<String>, n: Option<usize>, alpha: Option<String>, file: Option<String>) -> Result<bool> {
    let (a, id) = match (family, file) {
        (Some(f), None) => {
            let id = input::family_id(&f, n.ok_or_else(|| anyhow!("--family needs --n"))?, alpha.as_deref())?;
            (make(&id)?, Some(id))
        }
        (None, Some(f)) => (input::load_algebra(&f)?, None),
        _ => bail!("give --family and --n, or --file"),
    };
    let n = a.dim();
    let c = cohomology(&a);
    print!("# Z² basis\n{}", form_lines("z", n, c.z2.basis().iter().cloned()));
    print!("# B² basis\n{}", form_lines("b", n, c.b2.basis().iter().cloned()));
    print!("# H² representatives\n{}", form_lines("h", n, c.h2_reps.iter().map(BilinearForm::flatten)));
    let mut line = format!("dim Z²={}, dim B²={}, dim H²={}", c.z2.dim(), c.b2.dim(), c.h2_dim());
    let mut ok = true;
    if let Some(id) = id.filter(|id| id.family.filiform_index().is_some()) {
        let (z, b, h) = listed_bases_match(id.family, n)?;
        let dims = (c.z2.dim(), c.b2.dim(), c.h2_dim()) == reproduce::cohomology_formula(id.family, n);
        ok = z && b && h && dims;
        line.push_str(&format!(", {}", verdict(ok)));
    }
    println!("{line}");
    Ok(ok)
}

fn cmd_extend(base: &str, cocycles: &PathBuf, out: Option<&PathBuf>, expect: Option<&str>) -> Result<bool> {
    let a = input::load_algebra(base)?;
    let text = fs::read_to_string(cocycles).with_context(|| format!("reading {}", cocycles.display()))?;
    let forms = parse_forms(&text, a.dim()).map_err(|e| anyhow!("{}: {e}", cocycles.display()))?;
    let spec = ExtensionSpec { base: a, thetas: forms.into_iter().map(|(_, f)| f).collect() };
    let ext = match extend(&spec) {
        Ok(e) => e,
        Err(e @ ExtensionError::NotCocycle { .. }) => {
            println!("{e}");
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let report = nonsplit_report(&spec)?;
    match out {
        Some(p) => fs::write(p, ext.to_zalg()).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{}", ext.to_zalg()),
    }
    let word = if report.is_nonsplit() { "non-split" } else { "split" };
    println!("verdict: {word} ({})", report.diagnostics());
    let Some(label) = expect else {
        return Ok(true);
    };
    let target = input::load_algebra(label)?;
    Ok(match find_permutation(&ext, &target) {
        Some(p) => {
            let p: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
            println!("matches {label} by permutation [{}]", p.join(" "));
            true
        }
        None => {
            println!("no basis permutation onto {label}");
            false
        }
    })
}

fn cmd_invariants(cli: &Cli, algebras: &[String], n: usize, alpha: &str, alt: &str) -> Result<bool> {
    let report = if algebras.is_empty() {
        let a = parse_q(alpha).ok_or_else(|| anyhow!("bad α `{alpha}`"))?;
        let b = parse_q(alt).ok_or_else(|| anyhow!("bad α `{alt}`"))?;
        catalog_sweep(n, &a, &b)?
    } else {
        let algs = algebras.iter().map(|s| input::load_algebra(s)).collect::<Result<Vec<_>>>()?;
        for a in &algs {
            let f = fingerprint(a)?;
            eprintln!(
                "{}: powers {:?}, ann {}, Der {}, lattice {} subspaces",
                a.label, f.power_dims, f.ann_dim, f.der_dim, f.lattice.dims.len()
            );
        }
        distinguish_report(&algs)?
    };
    match cli.format {
        Format::Md => print!("{}", report.to_markdown()),
        Format::Csv => print!("{}", report.to_csv()),
    }
    let known = known_collisions();
    Ok(report.collisions().iter().all(|c| known.contains(c)))
}

fn cmd_aut(fam: &FamilyArgs, samples: usize, reading: ReadingArg, seed: u64) -> Result<bool> {
    let f = input::filiform(&fam.family)?;
    let reading = match reading {
        ReadingArg::Printed => Reading::Printed,
        ReadingArg::Corrected => Reading::Corrected,
    };
    let r = verify_aut_template(f, fam.n, samples, reading, seed)?;
    for x in &r.failures {
        println!("{x}");
    }
    println!("{} n={} {reading} template: {}/{} samples, {}", f, fam.n, r.passed, r.samples, verdict(r.ok()));
    Ok(r.ok())
}

fn cmd_action(fam: &FamilyArgs) -> Result<bool> {
    let f = input::filiform(&fam.family)?;
    let r = verify_action_formula(f, fam.n)?;
    for i in r.mismatches() {
        println!("coefficient {}: computed {:?}, closed form {:?}", i + 1, r.computed[i], r.displayed[i]);
    }
    println!("{} n={} action on H²: {}", f, fam.n, verdict(r.ok()));
    Ok(r.ok())
}

fn cmd_orbit(cli: &Cli, fam: &FamilyArgs, samples: usize, only: Option<&str>) -> Result<bool> {
    let f = input::filiform(&fam.family)?;
    let tol = input::parse_tol(&cli.tol)?;
    let cases: Vec<_> = reduction_cases(f).into_iter().filter(|c| only.map_or(true, |id| c.case_id == id)).collect();
    if cases.is_empty() {
        bail!("no case `{}` for {f}", only.unwrap_or_default());
    }
    let mut ok = true;
    let mut out = match cli.format {
        Format::Md => String::from("| case | where | status | detail |\n|---|---|---|---|\n"),
        Format::Csv => String::from("case,anchor,status,detail\n"),
    };
    for c in &cases {
        let r = check_case(c, fam.n, samples, cli.seed, cli.precision, &tol);
        let (status, detail) = case_status(std::slice::from_ref(&r), samples);
        ok &= !matches!(status, Status::Fail | Status::ExplainedFail);
        match cli.format {
            Format::Md => out.push_str(&format!("| {} | {} | {status} | {} |\n", c.case_id, c.anchor(), detail.replace('|', "\\|"))),
            Format::Csv => out.push_str(&format!("{},\"{}\",{status},\"{}\"\n", c.case_id, c.anchor(), detail.replace('"', "\"\""))),
        }
    }
    print!("{out}");
    Ok(ok)
}

fn cmd_reproduce(cli: &Cli, n_min: usize, n_max: usize, n_cap: usize, out: Option<&PathBuf>) -> Result<bool> {
    if !(5 <= n_min && n_min <= n_max && n_max <= n_cap) {
        bail!("need 5 ≤ n-min ≤ n-max ≤ {n_cap}");
    }
    let settings = Settings { n_min, n_max, seed: cli.seed, precision: cli.precision, tol: input::parse_tol(&cli.tol)? };
    let report = reproduce::run(&settings)?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            fs::write(dir.join("report.md"), report.to_markdown())?;
            fs::write(dir.join("report.csv"), report.to_csv())?;
            for r in report.failures() {
                println!("{} {} {} n={} {}: {}", r.status, r.section.title(), r.family, r.n, r.item, r.detail);
            }
            println!(
                "{} rows, {} FAIL, {} FAIL (explained); wrote {}",
                report.rows.len(),
                report.count(Status::Fail),
                report.count(Status::ExplainedFail),
                dir.display()
            );
        }
        None => match cli.format {
            Format::Md => print!("{}", report.to_markdown()),
            Format::Csv => print!("{}", report.to_csv()),
        },
    }
    Ok(report.ok())
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Check { file } => cmd_check(file),
        Cmd::Cohomology { family, n, alpha, file } => cmd_cohomology(family.clone(), *n, alpha.clone(), file.clone()),
        Cmd::Extend { base, cocycles, out, expect } => cmd_extend(base, cocycles, out.as_ref(), expect.as_deref()),
        Cmd::Invariants { algebras, n, alpha, alt_alpha } => cmd_invariants(cli, algebras, *n, alpha, alt_alpha),
        Cmd::AutVerify { fam, samples, reading } => cmd_aut(fam, *samples, *reading, cli.seed),
        Cmd::ActionVerify { fam } => cmd_action(fam),
        Cmd::OrbitVerify { fam, samples, case } => cmd_orbit(cli, fam, *samples, case.as_deref()),
        Cmd::Reproduce { n_min, n_max, n_cap, out } => cmd_reproduce(cli, *n_min, *n_max, *n_cap, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
