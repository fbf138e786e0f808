//! Command plumbing behind the `pgrp` binary: module specs, report lines,
//! check dispatch, the fixture suite and catalog sweeps.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use pgrp::checks::{self, Budgets, Y1Mode};
use pgrp::elemab::{maximal_elementary_abelians, thompson_from_catalog};
use pgrp::io::{read_module, CatalogEntry, GroupFile};
use pgrp::quadratic::{best_offenders, quadratic_elements};
use pgrp::rep::Representation;
use pgrp::report::{verify_claim, verify_structural_claim, words, Claim, Report, Verdict};
use pgrp::series::{x_subgroup, y_subgroup, KSeriesCertificate};
use pgrp::spec::GroupSpec;
use pgrp::{Error, FiniteGroup, Realization, Result};

pub const CHECKS: &[&str] = &["y1", "y2", "ghl", "wc", "hyp52", "lemma56", "thm17", "thm19", "thm92", "lemma83", "lemma84", "classify"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Regular,
    Perm,
    Natural,
    File(String),
}

impl FromStr for ModuleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<ModuleSpec> {
        let t = s.trim();
        match t {
            "regular" => Ok(ModuleSpec::Regular),
            "perm" => Ok(ModuleSpec::Perm),
            "natural" => Ok(ModuleSpec::Natural),
            _ => match t.strip_prefix("file(").and_then(|r| r.strip_suffix(')')) {
                Some(path) => Ok(ModuleSpec::File(path.trim().trim_matches('"').to_string())),
                None => Err(Error::Input(format!("unknown module {t:?}; expected regular, perm, natural or file(path)"))),
            },
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Regular => f.write_str("regular"),
            ModuleSpec::Perm => f.write_str("perm"),
            ModuleSpec::Natural => f.write_str("natural"),
            ModuleSpec::File(p) => write!(f, "file({p})"),
        }
    }
}

/// Natural module for matrix groups, permutation module for permutation
/// groups, regular module otherwise.
pub fn default_module(g: &FiniteGroup) -> ModuleSpec {
    match g.realization() {
        Realization::Matrix { .. } => ModuleSpec::Natural,
        Realization::Perm { .. } => ModuleSpec::Perm,
        Realization::Table { .. } => ModuleSpec::Regular,
    }
}

pub fn build_module(g: &FiniteGroup, m: &ModuleSpec) -> Result<Representation> {
    match m {
        ModuleSpec::Regular => Representation::regular(g),
        ModuleSpec::Perm => Representation::permutation(g),
        ModuleSpec::Natural => Representation::natural(g),
        ModuleSpec::File(path) => read_module(path, g),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetEcho {
    pub element_cap: usize,
    pub subgroup_cap: usize,
    pub scan_budget: usize,
}

/// One output object: the command echo, a report, and the budgets used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Line {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(flatten)]
    pub report: Report,
    pub budgets: BudgetEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub budgets: Budgets,
    pub mode: Y1Mode,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { budgets: Budgets::default(), mode: Y1Mode::Direct, timings: false }
    }
}

impl Options {
    fn echo(&self) -> BudgetEcho {
        let b = self.budgets;
        BudgetEcho { element_cap: b.element_cap, subgroup_cap: b.subgroup_cap, scan_budget: b.scan_budget }
    }
}

pub fn error_class(e: &Error) -> &'static str {
    match e {
        Error::CapExceeded(_) | Error::ScanBudgetExceeded(_) => "budget",
        Error::Inconsistent(_) => "inconsistent",
        _ => "input",
    }
}

pub fn error_report(check: &str, e: &Error) -> Report {
    Report::new(check, Verdict::Error, e.to_string()).with("error", error_class(e))
}

/// 1 on any violation or contradiction, else 2 on input errors, else 3 when
/// a budget ran out, else 0.
pub fn exit_code(lines: &[Line]) -> i32 {
    let class = |l: &Line| l.report.data.get("error").and_then(|v| v.as_str()).map(str::to_string);
    if lines.iter().any(|l| l.report.verdict == Verdict::Violation || class(l).as_deref() == Some("inconsistent")) {
        1
    } else if lines.iter().any(|l| class(l).as_deref() == Some("input")) {
        2
    } else if lines.iter().any(|l| class(l).as_deref() == Some("budget")) {
        3
    } else {
        0
    }
}

/// A single error line for a command that failed before any check ran.
pub fn error_line(command: &str, group: Option<&str>, e: &Error, opts: &Options) -> Line {
    Line {
        command: command.into(),
        group: group.map(str::to_string),
        id: None,
        module: None,
        report: error_report(command, e),
        budgets: opts.echo(),
        elapsed_ms: None,
    }
}

/// Where a group comes from: a spec, or an entry of a catalog file.
#[derive(Debug, Clone)]
pub enum Source {
    Spec(GroupSpec),
    Entry(CatalogEntry),
}

impl Source {
    fn build(&self, cap: usize) -> Result<FiniteGroup> {
        match self {
            Source::Spec(s) => s.build(cap),
            Source::Entry(e) => e.build(cap),
        }
    }

    fn group_echo(&self) -> Option<String> {
        match self {
            Source::Spec(s) => Some(s.to_string()),
            Source::Entry(_) => None,
        }
    }

    fn id(&self) -> Option<String> {
        match self {
            Source::Spec(GroupSpec::Catalog(id)) => Some(id.clone()),
            Source::Spec(_) => None,
            Source::Entry(e) => Some(e.id.clone()),
        }
    }

    fn spec(&self) -> Option<&GroupSpec> {
        match self {
            Source::Spec(s) => Some(s),
            Source::Entry(_) => None,
        }
    }
}

pub fn needs_module(check: &str) -> bool {
    matches!(check, "y2" | "ghl" | "wc" | "hyp52" | "thm17" | "thm92" | "lemma83" | "lemma84" | "classify" | "module")
}

/// Lazily built group and module shared by the checks of one command.
struct Session<'a> {
    source: &'a Source,
    module: Option<&'a ModuleSpec>,
    opts: &'a Options,
    group: Option<Result<FiniteGroup>>,
    rep: Option<Result<(Representation, ModuleSpec)>>,
}

impl<'a> Session<'a> {
    fn group(&mut self) -> Result<&FiniteGroup> {
        let cap = self.opts.budgets.element_cap;
        let source = self.source;
        self.group.get_or_insert_with(|| source.build(cap)).as_ref().map_err(Clone::clone)
    }

    fn module(&mut self) -> Result<(&FiniteGroup, &Representation, String)> {
        self.group()?;
        let g = self.group.as_ref().expect("built").as_ref().expect("ok");
        let chosen = self.module.cloned().unwrap_or_else(|| default_module(g));
        let rep = self.rep.get_or_insert_with(|| build_module(g, &chosen).map(|v| (v, chosen)));
        match rep {
            Ok((v, m)) => Ok((g, v, m.to_string())),
            Err(e) => Err(e.clone()),
        }
    }

    /// Certificate mode decides y1 on the assembly tree whenever the spec
    /// has one.
    fn structural(&self) -> Option<(pgrp::construct::Structure, u32)> {
        let spec = self.source.spec()?;
        Some((spec.structure()?, spec.prime()?))
    }

    fn run(&mut self, check: &str) -> (Result<Report>, Option<String>) {
        let b = self.opts.budgets;
        let (source, mode) = (self.source, self.opts.mode);
        if check == "y1" && mode == Y1Mode::Certificate {
            if let Some((st, p)) = self.structural() {
                return (checks::check_y1_structural(&st, p, b), None);
            }
        }
        if needs_module(check) {
            let (g, v, m) = match self.module() {
                Ok(x) => x,
                Err(e) => return (Err(e), self.module.map(|m| m.to_string())),
            };
            let r = match check {
                "y2" => checks::check_y2(g, v, b),
                "ghl" => checks::check_ghl(g, v, b),
                "wc" => checks::check_weak_closure(g, v, b),
                "thm17" => checks::check_thm17(g, v),
                "thm92" => checks::check_thm92(g, v, b),
                "lemma83" => checks::check_lemma83(g, v, b),
                "lemma84" => checks::check_lemma84(g, v, b),
                "classify" => checks::check_classify(g, v, b).map(|r| r.0),
                "module" => module_report(g, v, b),
                "hyp52" => match source.spec().map(|s| s.split(g, b.element_cap)) {
                    Some(Ok(Some((h, p)))) => checks::check_hypothesis(g, &h, &p, v, b),
                    Some(Err(e)) => Err(e),
                    _ => Err(Error::Input("hyp52 needs a group of the form dp(H, P)".into())),
                },
                _ => unreachable!(),
            };
            return (r, Some(m));
        }
        let g = match self.group() {
            Ok(g) => g,
            Err(e) => return (Err(e), None),
        };
        let r = match check {
            "y1" => checks::check_y1(g, mode, b),
            "lemma56" => checks::check_lemma56(g, b),
            "thm19" => checks::check_thm19(g, b),
            "analyze" => analyze_report(g, b),
            "series" => series_report(g, b),
            "construct" => Ok(Report::new("construct", Verdict::Holds, "group built")
                .with("order", g.order())
                .with("group_file", GroupFile::from_group(g))),
            other => Err(Error::Input(format!("unknown check {other:?}"))),
        };
        (r, None)
    }
}

/// Runs checks in order against one group, building it at most once.
pub fn run_checks(command: &str, names: &[&str], source: &Source, module: Option<&ModuleSpec>, opts: &Options) -> Vec<Line> {
    let mut session = Session { source, module, opts, group: None, rep: None };
    names
        .iter()
        .map(|&name| {
            let start = Instant::now();
            let (r, module_echo) = session.run(name);
            let report = r.unwrap_or_else(|e| error_report(name, &e));
            Line {
                command: command.to_string(),
                group: source.group_echo(),
                id: source.id(),
                module: module_echo,
                report,
                budgets: opts.echo(),
                elapsed_ms: opts.timings.then(|| start.elapsed().as_secs_f64() * 1e3),
            }
        })
        .collect()
}

fn analyze_report(g: &FiniteGroup, b: Budgets) -> Result<Report> {
    let census = g.census();
    let cat = maximal_elementary_abelians(g, b.scan_budget)?;
    let j = thompson_from_catalog(g, &cat);
    let normals = g.normal_subgroups(b.subgroup_cap)?;
    let whole = g.whole();
    Ok(Report::new("analyze", Verdict::Holds, "invariants computed")
        .with("order", census.order)
        .with("realization", g.realization().kind())
        .with("generators", g.generators().len())
        .with("class", census.class)
        .with("exponent", census.exponent)
        .with("center", census.center)
        .with("derived", g.derived_subgroup().order())
        .with("abelianization", census.abelianization)
        .with("omega1", g.omega1(&whole).order())
        .with("agemo", g.agemo(&whole).order())
        .with("p_rank", cat.rank)
        .with("maximal_elementary_abelians", cat.maximals.len())
        .with("thompson", j.order())
        .with("powerful", g.is_powerful().ok())
        .with("normal_subgroups", normals.len())
        .with("conjugacy_classes", g.conjugacy_classes().len())
        .with("element_orders", census.order_counts.iter().map(|&(e, n)| ((g.prime() as u64).pow(e), n)).collect::<Vec<_>>()))
}

fn module_report(g: &FiniteGroup, v: &Representation, b: Budgets) -> Result<Report> {
    let mut r = Report::new("module", Verdict::Holds, "module invariants computed")
        .with("dim", v.dim())
        .with("faithful", v.is_faithful())
        .with("fixed_dim", v.fixed_dim(&g.whole()))
        .with("quadratic_elements", quadratic_elements(g, v).len());
    if v.is_faithful() {
        let best = best_offenders(g, v, b.scan_budget)?;
        r = r.with("f_module", best.is_some()).with("e0", best.map(|o| o.exponent));
    }
    Ok(r)
}

fn chain_claim(g: &FiniteGroup, c: &KSeriesCertificate) -> Claim {
    Claim::KSeries { k: c.k, chain: c.chain.iter().map(|s| words(g, s)).collect() }
}

fn series_report(g: &FiniteGroup, b: Budgets) -> Result<Report> {
    let j = pgrp::elemab::thompson_subgroup(g, b.scan_budget)?;
    let y = y_subgroup(g, b.subgroup_cap)?;
    let x = x_subgroup(g, b.subgroup_cap)?;
    let lower: Vec<usize> = g.lower_central_series().iter().map(|s| s.order()).collect();
    let upper: Vec<usize> = g.upper_central_series().iter().map(|s| s.order()).collect();
    let mut r = Report::new("series", Verdict::Holds, "series computed")
        .with("order", g.order())
        .with("j_order", j.order())
        .with("y_order", y.subgroup.order())
        .with("x_order", x.subgroup.order())
        .with("x_k", (g.prime() as usize - 1).max(1))
        .with("lower_central", lower)
        .with("upper_central", upper);
    for s in [&y, &x] {
        if let Some(c) = &s.certificate {
            r = r.witness(chain_claim(g, c));
        }
    }
    Ok(r.witness(Claim::Contained { sub: words(g, &j), sup: words(g, &y.subgroup) }))
}

/// A bundled regression fixture.
pub struct Fixture {
    pub name: &'static str,
    pub group: &'static str,
    pub module: Option<&'static str>,
    pub mode: Y1Mode,
    pub checks: &'static [&'static str],
    /// Expected `(J, 𝒴, 𝔛)` orders, when recorded.
    pub series: Option<(usize, usize, usize)>,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "dihedral8",
        group: "dihedral(8)",
        module: None,
        mode: Y1Mode::Direct,
        checks: &["y1", "lemma56", "thm19"],
        series: Some((8, 8, 2)),
    },
    Fixture {
        name: "jordan5",
        group: "jordan(5,3)",
        module: None,
        mode: Y1Mode::Direct,
        checks: &["y1", "thm19"],
        series: Some((125, 125, 625)),
    },
    Fixture { name: "sylsym9", group: "sylsym(9,3)", module: None, mode: Y1Mode::Direct, checks: &["y1", "lemma56"], series: None },
    Fixture { name: "sylsym27", group: "sylsym(27,3)", module: None, mode: Y1Mode::Certificate, checks: &["y1"], series: None },
    Fixture {
        name: "wreath3",
        group: "wr(cyclic(3,1),3)",
        module: Some("perm"),
        mode: Y1Mode::Direct,
        checks: &["y1", "lemma56", "y2", "classify"],
        series: Some((27, 27, 27)),
    },
    Fixture {
        name: "ut3",
        group: "ut(3,3)",
        module: Some("natural"),
        mode: Y1Mode::Direct,
        checks: &["y1", "y2", "ghl", "wc", "lemma56", "thm17", "thm19", "thm92", "classify", "lemma83", "lemma84"],
        series: Some((27, 27, 27)),
    },
];

/// Runs every fixture, adding a comparison line for recorded series orders.
pub fn run_examples(opts: &Options) -> Vec<Line> {
    let mut out = Vec::new();
    for f in FIXTURES {
        let source = Source::Spec(f.group.parse().expect("fixture specs parse"));
        let module = f.module.map(|m| m.parse().expect("fixture modules parse"));
        let o = Options { mode: f.mode, ..*opts };
        let command = format!("examples {}", f.name);
        out.extend(run_checks(&command, f.checks, &source, module.as_ref(), &o));
        if let Some(expected) = f.series {
            let mut lines = run_checks(&command, &["series"], &source, None, &o);
            let line = &mut lines[0];
            let got = |k: &str| line.report.data.get(k).and_then(|v| v.as_u64()).unwrap_or(0) as usize;
            let actual = (got("j_order"), got("y_order"), got("x_order"));
            if line.report.verdict == Verdict::Holds && actual != expected {
                line.report.verdict = Verdict::Violation;
                line.report.detail = format!("expected (J, Y, X) orders {expected:?}, found {actual:?}");
            }
            out.extend(lines);
        }
    }
    out
}

/// One check over catalog entries, in parallel on `threads` workers (all
/// available when `None`); lines come back in input order.
pub fn catalog_verify(
    sources: &[Source],
    check: &str,
    module: Option<&ModuleSpec>,
    opts: &Options,
    threads: Option<usize>,
) -> Result<Vec<Line>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Input(e.to_string()))?;
    let command = format!("catalog verify {check}");
    Ok(pool.install(|| {
        sources.par_iter().flat_map_iter(|s| run_checks(&command, &[check], s, module, opts)).collect()
    }))
}

/// Recomputes every witness of a report line from its serialized words.
pub fn verify_line(line: &Line, group: Option<&GroupSpec>, module: Option<&ModuleSpec>, opts: &Options) -> Line {
    let name = format!("verify:{}", line.report.check);
    let budgets = opts.budgets;
    let spec = match group.cloned().map(Ok).or_else(|| line.group.as_deref().map(str::parse::<GroupSpec>)) {
        Some(Ok(s)) => s,
        Some(Err(e)) => return wrap(line, error_report(&name, &e), opts),
        None => return wrap(line, error_report(&name, &Error::Input("report names no group".into())), opts),
    };
    let module = match module.cloned().map(Ok).or_else(|| line.module.as_deref().map(str::parse::<ModuleSpec>)) {
        Some(Ok(m)) => Some(m),
        Some(Err(e)) => return wrap(line, error_report(&name, &e), opts),
        None => None,
    };
    let witnesses = &line.report.witnesses;
    if witnesses.is_empty() {
        return wrap(line, Report::new(&name, Verdict::NotApplicable, "no witnesses"), opts);
    }
    let result = (|| -> Result<Vec<bool>> {
        let structural = witnesses.iter().all(|c| matches!(c, Claim::AbelianNormal { .. }))
            && line.report.data.get("structural").and_then(|v| v.as_bool()) == Some(true);
        if structural {
            let st = spec.structure().ok_or_else(|| Error::Input("group has no known structure".into()))?;
            let p = spec.prime().ok_or_else(|| Error::Input("prime unknown".into()))?;
            return witnesses.iter().map(|c| verify_structural_claim(&st, p, c, budgets.element_cap)).collect();
        }
        let g = spec.build(budgets.element_cap)?;
        let v = if witnesses.iter().any(Claim::needs_module) {
            let m = module.clone().unwrap_or_else(|| default_module(&g));
            Some(build_module(&g, &m)?)
        } else {
            None
        };
        witnesses.iter().map(|c| verify_claim(&g, v.as_ref(), c, budgets.scan_budget)).collect()
    })();
    let report = match result {
        Ok(ok) => {
            let failed: Vec<usize> = ok.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i).collect();
            if failed.is_empty() {
                Report::new(&name, Verdict::Holds, format!("{} witnesses re-verified", ok.len()))
            } else {
                Report::new(&name, Verdict::Violation, "witness failed re-verification").with("failed", failed)
            }
        }
        Err(e) => error_report(&name, &e),
    };
    wrap(line, report, opts)
}

fn wrap(line: &Line, report: Report, opts: &Options) -> Line {
    Line {
        command: "verify-witness".into(),
        group: line.group.clone(),
        id: line.id.clone(),
        module: line.module.clone(),
        report,
        budgets: opts.echo(),
        elapsed_ms: None,
    }
}

/// Reads a stream of JSON report objects, compact or pretty.
pub fn parse_lines(text: &str) -> Result<Vec<Line>> {
    serde_json::Deserializer::from_str(text)
        .into_iter::<Line>()
        .map(|l| l.map_err(|e| Error::Input(format!("report stream: {e}"))))
        .collect()
}

pub fn write_lines(out: &mut dyn Write, lines: &[Line], jsonl: bool) -> std::io::Result<()> {
    for l in lines {
        let text = if jsonl { serde_json::to_string(l) } else { serde_json::to_string_pretty(l) };
        writeln!(out, "{}", text.expect("lines serialize"))?;
    }
    Ok(())
}
