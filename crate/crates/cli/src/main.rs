use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use pgrp::checks::{Budgets, Y1Mode};
use pgrp::io::{catalog, parse_catalog};
use pgrp::spec::GroupSpec;
use pgrp::Error;
use pgrp_cli::{
    catalog_verify, error_line, exit_code, parse_lines, run_checks, run_examples, verify_line, write_lines, Line,
    ModuleSpec, Options, Source, CHECKS,
};

#[derive(Parser)]
#[command(name = "pgrp", version, about = "Thompson subgroups, Y-series and quadratic elements of finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Largest group enumerated.
    #[arg(long, global = true, default_value_t = pgrp::group::DEFAULT_ELEMENT_CAP)]
    element_cap: usize,
    /// Largest normal-subgroup lattice built.
    #[arg(long, global = true, default_value_t = pgrp::subgroup::DEFAULT_SUBGROUP_CAP)]
    subgroup_cap: usize,
    /// Budget for elementary abelian searches.
    #[arg(long, global = true, default_value_t = pgrp::elemab::DEFAULT_SCAN_BUDGET)]
    scan_budget: usize,
    /// How y1 is decided.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Direct)]
    mode: Mode,
    /// Write reports here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// One compact JSON object per line.
    #[arg(long, global = true)]
    jsonl: bool,
    /// Record wall-clock time per report (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Direct,
    Certificate,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and print it as a group file.
    Construct {
        #[arg(long)]
        group: String,
    },
    /// Group invariants, plus module invariants when a module is given.
    Analyze {
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: Option<String>,
    },
    /// J, Y and X with their series certificates.
    Series {
        #[arg(long)]
        group: String,
    },
    /// Run one checker.
    Check {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(CHECKS))]
        name: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: Option<String>,
    },
    /// Late and last quadratic elements, with the related checks.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: Option<String>,
    },
    /// Run the bundled fixture suite.
    Examples,
    /// Work with the bundled catalog or a catalog file.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Re-verify the witnesses in a report stream.
    VerifyWitness {
        #[arg(long)]
        reports: PathBuf,
        /// Override the group named in each report.
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        module: Option<String>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List catalog identifiers with their orders.
    List {
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Run a checker over every catalog entry.
    Verify {
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECKS))]
        check: String,
        #[arg(long)]
        module: Option<String>,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn target(text: &str) -> Result<Source, Error> {
    Ok(Source::Spec(text.parse::<GroupSpec>()?))
}

fn module(text: Option<&str>) -> Result<Option<ModuleSpec>, Error> {
    text.map(str::parse).transpose()
}

fn run(cli: &Cli, opts: &Options) -> Result<Vec<Line>, (String, Option<String>, Error)> {
    let fail = |cmd: &str, group: Option<&str>| {
        let (cmd, group) = (cmd.to_string(), group.map(str::to_string));
        move |e| (cmd, group, e)
    };
    Ok(match &cli.command {
        Command::Construct { group } => {
            let s = target(group).map_err(fail("construct", Some(group)))?;
            run_checks("construct", &["construct"], &s, None, opts)
        }
        Command::Analyze { group, module: m } => {
            let s = target(group).map_err(fail("analyze", Some(group)))?;
            let m = module(m.as_deref()).map_err(fail("analyze", Some(group)))?;
            let names: &[&str] = if m.is_some() { &["analyze", "module"] } else { &["analyze"] };
            run_checks("analyze", names, &s, m.as_ref(), opts)
        }
        Command::Series { group } => {
            let s = target(group).map_err(fail("series", Some(group)))?;
            run_checks("series", &["series"], &s, None, opts)
        }
        Command::Check { name, group, module: m } => {
            let cmd = format!("check {name}");
            let s = target(group).map_err(fail(&cmd, Some(group)))?;
            let m = module(m.as_deref()).map_err(fail(&cmd, Some(group)))?;
            run_checks(&cmd, &[name.as_str()], &s, m.as_ref(), opts)
        }
        Command::Classify { group, module: m } => {
            let s = target(group).map_err(fail("classify", Some(group)))?;
            let m = module(m.as_deref()).map_err(fail("classify", Some(group)))?;
            run_checks("classify", &["classify", "lemma83", "lemma84", "thm17"], &s, m.as_ref(), opts)
        }
        Command::Examples => run_examples(opts),
        Command::Catalog { action: CatalogCommand::List { file } } => {
            let entries = load_catalog(file.as_ref()).map_err(fail("catalog list", None))?;
            for e in entries {
                let order = e.group.order.map_or("?".to_string(), |o| o.to_string());
                println!("{}\t{}\t{}", e.id, e.group.p, order);
            }
            Vec::new()
        }
        Command::Catalog { action: CatalogCommand::Verify { file, check, module: m, threads } } => {
            let cmd = format!("catalog verify {check}");
            let sources = match file {
                Some(_) => load_catalog(file.as_ref()).map_err(fail(&cmd, None))?.into_iter().map(Source::Entry).collect(),
                None => catalog().iter().map(|e| Source::Spec(GroupSpec::Catalog(e.id.clone()))).collect::<Vec<_>>(),
            };
            let m = module(m.as_deref()).map_err(fail(&cmd, None))?;
            catalog_verify(&sources, check, m.as_ref(), opts, *threads).map_err(fail(&cmd, None))?
        }
        Command::VerifyWitness { reports, group, module: m } => {
            let cmd = "verify-witness";
            let text = fs::read_to_string(reports)
                .map_err(|e| Error::Input(format!("{}: {e}", reports.display())))
                .map_err(fail(cmd, None))?;
            let lines = parse_lines(&text).map_err(fail(cmd, None))?;
            let g = group.as_deref().map(str::parse::<GroupSpec>).transpose().map_err(fail(cmd, group.as_deref()))?;
            let m = module(m.as_deref()).map_err(fail(cmd, None))?;
            lines.iter().map(|l| verify_line(l, g.as_ref(), m.as_ref(), opts)).collect()
        }
    })
}

fn load_catalog(file: Option<&PathBuf>) -> Result<Vec<pgrp::io::CatalogEntry>, Error> {
    match file {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
            parse_catalog(&text)
        }
        None => Ok(catalog().to_vec()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        budgets: Budgets { element_cap: cli.element_cap, subgroup_cap: cli.subgroup_cap, scan_budget: cli.scan_budget },
        mode: match cli.mode {
            Mode::Direct => Y1Mode::Direct,
            Mode::Certificate => Y1Mode::Certificate,
        },
        timings: cli.timings,
    };
    let lines = run(&cli, &opts).unwrap_or_else(|(cmd, group, e)| vec![error_line(&cmd, group.as_deref(), &e, &opts)]);
    let written = match &cli.out {
        Some(path) => fs::File::create(path).and_then(|mut f| write_lines(&mut f, &lines, cli.jsonl)),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_lines(&mut lock, &lines, cli.jsonl).and_then(|_| lock.flush())
        }
    };
    if let Err(e) = written {
        eprintln!("pgrp: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(exit_code(&lines) as u8)
}
