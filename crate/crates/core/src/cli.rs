//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cocycles::{
    enumerate_class_reps, schur_closed_form, Certification, CocycleParams, Family, MultiplierDescriptor, CLASS_CAP,
};
use crate::cohomology::{check_cocycle_identity, multiplier_order_capped, CocycleTable, CohomologyReport};
use crate::error::{Error, Result};
use crate::groups::{make_group, make_group_capped, GroupSpec};
use crate::nilrep::{irr_two_step, ExportedMatrix, Representation, RepresentationExport};
use crate::projrep::{
    irr_hath, projreps_abelian, projreps_extraspecial, projreps_h3, projreps_heisenberg_big, ClassifiedTable,
    FiberCheck, ProjRepExport, TableExport,
};

#[derive(Debug, Parser)]
#[command(name = "schurrep", version, about = "Schur multipliers and projective representations of Heisenberg-type groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Largest group the cohomology oracle runs on.
    #[arg(long, default_value_t = 1000, global = true)]
    pub max_order: usize,
    /// Largest group whose elements are enumerated.
    #[arg(long, default_value_t = 59_049, global = true)]
    pub max_group: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// `H^t_{2n+1}(Z/r)`
    H,
    /// `H^t_3(Z/r)`
    H3,
    /// `Z/t + (Z/r)^n`
    Abelian,
    /// `ES_{2n+1}(p^2)`
    Es,
    /// the hat-H group `HatH(r,t)`
    Hath,
    /// `F_n(r,t)`
    F,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    #[arg(long)]
    pub r: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub t: u64,
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form multiplier, optionally checked by the cohomology oracle.
    Schur {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// One or more values, comma separated.
        #[arg(long, value_delimiter = ',')]
        r: Vec<u64>,
        /// One or more values, comma separated; pairs with `t` not dividing `r` are skipped.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        t: Vec<u64>,
        #[arg(long)]
        p: Vec<u64>,
        #[arg(long)]
        oracle: bool,
    },
    /// Representative cocycles, one per class.
    Cocycles {
        #[command(flatten)]
        group: GroupArgs,
        /// Only this class (position in the enumeration).
        #[arg(long)]
        class: Option<usize>,
        /// Include full cocycle tables.
        #[arg(long)]
        tables: bool,
    },
    /// Ordinary irreducible representations.
    Irreps {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Classified projective representations.
    Projreps {
        #[command(flatten)]
        group: GroupArgs,
        /// Cocycle parameters of one class, comma separated.
        #[arg(long, value_delimiter = ',')]
        class: Option<Vec<u64>>,
    },
    /// Built-in consistency checks on every family up to the caps.
    Verify,
}

impl GroupArgs {
    fn r(&self) -> Result<u64> {
        self.r.ok_or_else(|| Error::InvalidParameter("--r is required for this family".into()))
    }

    pub fn spec(&self) -> Result<GroupSpec> {
        let spec = match self.family {
            FamilyArg::H => GroupSpec::Heisenberg { n: self.n, r: self.r()?, t: self.t },
            FamilyArg::H3 => GroupSpec::Heisenberg { n: 1, r: self.r()?, t: self.t },
            FamilyArg::Abelian => {
                let mut invariants = vec![self.t];
                invariants.extend(std::iter::repeat(self.r()?).take(self.n as usize));
                GroupSpec::Abelian { invariants }
            }
            FamilyArg::Es => GroupSpec::ExtraSpecialP2 {
                p: self.p.ok_or_else(|| Error::InvalidParameter("--p is required for es".into()))?,
                n: self.n,
            },
            FamilyArg::Hath => GroupSpec::HatH { r: self.r()?, t: self.t },
            FamilyArg::F => GroupSpec::FGroup { n: self.n, r: self.r()?, t: self.t },
        };
        if let GroupSpec::Abelian { invariants } = &spec {
            let r = invariants.get(1).copied().unwrap_or(self.t);
            if r % self.t != 0 {
                return Err(Error::InvalidParameter(format!("t must divide r, got r = {r}, t = {}", self.t)));
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// One line of a multiplier report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurRow {
    pub family: String,
    pub n: u64,
    pub r: u64,
    pub t: u64,
    pub closed_form: MultiplierDescriptor,
    pub oracle: Option<CohomologyReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleEntry {
    pub index: usize,
    pub params: CocycleParams,
    pub table: Option<CocycleTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub group: GroupSpec,
    pub certification: Certification,
    pub class_count: usize,
    pub classes: Vec<CocycleEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepsReport {
    pub group: String,
    pub order: usize,
    pub reps: Vec<RepresentationExport>,
    pub sum_dim_sq: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflatedClassExport {
    pub cocycle_params: CocycleParams,
    pub source: CocycleParams,
    pub fiber: Option<FiberCheck>,
    pub dims: Vec<usize>,
    pub reps: Vec<ProjRepExport>,
    pub sum_dim_sq: usize,
    pub class_confirmed: Option<bool>,
    pub alpha_identity: String,
    pub pairs_checked: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflatedReport {
    pub group: String,
    pub order: usize,
    pub generators: Vec<Vec<u64>>,
    /// Set when every projective representation is equivalent to an ordinary one.
    pub ordinary: bool,
    pub ordinary_reps: Vec<RepresentationExport>,
    pub classes: Vec<InflatedClassExport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

/// Anything the CLI can print.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    SchurPoint(SchurRow),
    Schur(Vec<SchurRow>),
    Cocycles(CocycleReport),
    Irreps(IrrepsReport),
    Table(TableExport),
    Inflated(InflatedReport),
    Verify(Vec<CheckLine>),
}

fn order_text(order: Option<u128>) -> String {
    order.map_or_else(|| "infinite".into(), |o| o.to_string())
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli).and_then(|(report, failed)| {
        emit(&report, cli.output.format, cli.output.out.as_ref())?;
        Ok(failed)
    }) {
        Ok(None) => 0,
        Ok(Some(msg)) => {
            eprintln!("error: {msg}");
            3
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_validation() {
                2
            } else {
                3
            }
        }
    }
}

/// Builds the report; the second field is a failed-check message. The report is
/// still written in that case so the failure can be inspected.
pub fn execute(cli: &Cli) -> Result<(Report, Option<String>)> {
    let o = &cli.output;
    match &cli.command {
        Command::Schur { family, n, r, t, p, oracle } => schur(*family, *n, r, t, p, oracle.then_some(o.max_order)),
        Command::Cocycles { group, class, tables } => cocycles(group, *class, *tables).map(|r| (r, None)),
        Command::Irreps { group } => irreps(group, o.max_group),
        Command::Projreps { group, class } => projreps(group, class.as_deref(), o.max_group),
        Command::Verify => {
            let lines = verify(o.max_order, o.max_group);
            let failed = lines.iter().filter(|l| !l.passed).map(|l| l.check.clone()).collect::<Vec<_>>();
            let msg = (!failed.is_empty()).then(|| format!("failed checks: {}", failed.join(", ")));
            Ok((Report::Verify(lines), msg))
        }
    }
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::H => "h",
        FamilyArg::H3 => "h3",
        FamilyArg::Abelian => "abelian",
        FamilyArg::Es => "es",
        FamilyArg::Hath => "hath",
        FamilyArg::F => "f",
    }
}

fn schur(family: FamilyArg, n: u64, rs: &[u64], ts: &[u64], ps: &[u64], oracle: Option<usize>) -> Result<(Report, Option<String>)> {
    let (fam, n, points): (Family, u64, Vec<(u64, u64)>) = match family {
        FamilyArg::H | FamilyArg::H3 => {
            let n = if family == FamilyArg::H3 { 1 } else { n };
            let pts = rs.iter().flat_map(|&r| ts.iter().map(move |&t| (r, t))).collect();
            (Family::Heisenberg, n, pts)
        }
        FamilyArg::Abelian => (Family::Abelian, n, rs.iter().flat_map(|&r| ts.iter().map(move |&t| (r, t))).collect()),
        FamilyArg::Es => (Family::ExtraSpecial, n, ps.iter().chain(rs).map(|&p| (p, 1)).collect()),
        FamilyArg::Hath | FamilyArg::F => {
            return Err(Error::InvalidParameter(format!("no closed form for family {}", family_name(family))))
        }
    };
    if points.is_empty() {
        return Err(Error::InvalidParameter("no parameters given".into()));
    }
    let grid = points.len() > 1;
    let mut rows = Vec::new();
    let mut mismatch = Vec::new();
    for (r, t) in points {
        if grid && (t == 0 || (r != 0 && r % t != 0)) {
            continue;
        }
        if fam == Family::ExtraSpecial {
            GroupSpec::ExtraSpecialP2 { p: r, n }.validate()?;
        }
        let closed_form = schur_closed_form(fam, n, r, t)?;
        let oracle = match (oracle, closed_form.group_spec()) {
            (Some(cap), Some(spec)) => {
                let g = make_group(&spec)?;
                let rep = multiplier_order_capped(&g, None, cap)?;
                if closed_form.order != Some(rep.multiplier_order as u128) {
                    mismatch.push(format!("{}: closed form {}, oracle {}", g.label(), order_text(closed_form.order), rep.multiplier_order));
                }
                Some(rep)
            }
            (Some(_), None) => return Err(Error::InvalidParameter("the oracle needs a finite group (r > 0)".into())),
            (None, _) => None,
        };
        rows.push(SchurRow { family: family_name(family).into(), n, r, t, closed_form, oracle });
    }
    let msg = (!mismatch.is_empty()).then(|| mismatch.join("; "));
    let report = match (grid, rows.pop()) {
        (false, Some(row)) => Report::SchurPoint(row),
        (_, last) => Report::Schur(rows.into_iter().chain(last).collect()),
    };
    Ok((report, msg))
}

fn cocycles(group: &GroupArgs, class: Option<usize>, tables: bool) -> Result<Report> {
    let spec = group.spec()?;
    let reps = enumerate_class_reps(&spec, CLASS_CAP)?;
    let class_count = reps.entries.len();
    if let Some(i) = class {
        if i >= class_count {
            return Err(Error::InvalidParameter(format!("class {i} out of range, there are {class_count}")));
        }
    }
    let classes = reps
        .entries
        .into_iter()
        .enumerate()
        .filter(|(i, _)| class.is_none_or(|c| c == *i))
        .map(|(index, (params, table))| CocycleEntry { index, params, table: tables.then_some(table) })
        .collect();
    Ok(Report::Cocycles(CocycleReport { group: spec, certification: reps.certification, class_count, classes }))
}

fn irreps(group: &GroupArgs, max_group: usize) -> Result<(Report, Option<String>)> {
    let spec = group.spec()?;
    let g = make_group_capped(&spec, max_group as u128)?;
    let reps: Vec<Representation> = match spec {
        GroupSpec::HatH { .. } => irr_hath(&g, max_group)?,
        _ => irr_two_step(&g, max_group)?.into_iter().map(|e| e.rep).collect(),
    };
    let sum_dim_sq = reps.iter().map(|r| r.dim * r.dim).sum();
    let msg = (sum_dim_sq != g.order()).then(|| format!("sum of squared dimensions {sum_dim_sq} != {}", g.order()));
    let report = IrrepsReport {
        group: g.label().into(),
        order: g.order(),
        reps: reps.iter().map(|r| r.export(&g)).collect(),
        sum_dim_sq,
    };
    Ok((Report::Irreps(report), msg))
}

fn class_matches(params: &CocycleParams, sel: &[u64]) -> bool {
    match params {
        CocycleParams::H3 { lambda, mu, delta, .. } => sel == [*lambda, *mu, *delta],
        CocycleParams::Abelian { pairs, .. } => sel == pairs.as_slice(),
        CocycleParams::Heisenberg { pairs, linear, .. } => sel.len() == pairs.len() + linear.len() && sel[..pairs.len()] == pairs[..] && sel[pairs.len()..] == linear[..],
        CocycleParams::Trivial { .. } => sel.is_empty(),
    }
}

fn table_report(mut table: ClassifiedTable, spec: &GroupSpec, class: Option<&[u64]>) -> Result<(Report, Option<String>)> {
    if let Some(sel) = class {
        table.classes.retain(|c| c.params.as_ref().is_some_and(|p| class_matches(p, sel)));
        if table.classes.is_empty() {
            return Err(Error::InvalidParameter(format!("no class with parameters {sel:?}")));
        }
    }
    let g = make_group(spec)?;
    let export = table.export(&g)?;
    let msg = (export.checks.alpha_identity != "pass").then(|| "twisted multiplication law failed".to_string());
    Ok((Report::Table(export), msg))
}

fn inflated_class(
    cocycle_params: CocycleParams,
    source: CocycleParams,
    fiber: Option<FiberCheck>,
    reps: &[crate::projrep::ProjectiveRep],
    checks: &[crate::projrep::AlphaCheck],
    gens: &[usize],
    class_confirmed: Option<bool>,
) -> InflatedClassExport {
    let ok = checks.iter().all(|c| c.passed());
    InflatedClassExport {
        cocycle_params,
        source,
        fiber,
        dims: reps.iter().map(|r| r.dim).collect(),
        reps: reps
            .iter()
            .map(|r| ProjRepExport {
                dim: r.dim,
                conductor: r.conductor,
                generator_images: gens.iter().map(|&s| crate::nilrep::export_matrix(&r.images[s])).collect(),
            })
            .collect(),
        sum_dim_sq: reps.iter().map(|r| r.dim * r.dim).sum(),
        class_confirmed,
        alpha_identity: if ok { "pass" } else { "fail" }.into(),
        pairs_checked: checks.iter().map(|c| c.pairs_checked).sum(),
    }
}

fn projreps(group: &GroupArgs, class: Option<&[u64]>, max_group: usize) -> Result<(Report, Option<String>)> {
    let spec = group.spec()?;
    match spec {
        GroupSpec::Heisenberg { n: 1, r, t } => table_report(projreps_h3(r, t, max_group)?, &spec, class),
        GroupSpec::Abelian { ref invariants } => {
            let n = invariants.len() as u64 - 1;
            let r = invariants.get(1).copied().unwrap_or(group.t);
            table_report(projreps_abelian(n, r, group.t, max_group)?, &spec, class)
        }
        GroupSpec::Heisenberg { n, r, t } => {
            let sel = class.ok_or_else(|| Error::InvalidParameter("--class is required for n >= 2".into()))?;
            let dim = 2 * n as usize;
            let np = dim * (dim - 1) / 2;
            if sel.len() != np + dim {
                return Err(Error::DimensionMismatch(format!("{} class parameters, expected {}", sel.len(), np + dim)));
            }
            let params = CocycleParams::Heisenberg { n, r, t, pairs: sel[..np].to_vec(), linear: sel[np..].to_vec() };
            let h = make_group(&spec)?;
            let mut classes = Vec::new();
            let mut failed = None;
            for run in projreps_heisenberg_big(&[params], max_group)? {
                let c = inflated_class(run.params, run.source, Some(run.fiber), &run.reps, &run.checks, h.generators(), run.class_confirmed);
                if c.alpha_identity != "pass" {
                    failed = Some("twisted multiplication law failed".to_string());
                }
                classes.push(c);
            }
            let report = InflatedReport {
                group: h.label().into(),
                order: h.order(),
                generators: h.generators().iter().map(|&s| h.coords(s)).collect(),
                ordinary: false,
                ordinary_reps: vec![],
                classes,
            };
            Ok((Report::Inflated(report), failed))
        }
        GroupSpec::ExtraSpecialP2 { p, n } => {
            let source = match class {
                Some(sel) => Some(CocycleParams::Abelian { k: 2 * n - 1, r: p, t: p, pairs: sel.to_vec() }),
                None if n == 1 => None,
                None => return Err(Error::InvalidParameter("--class is required for n >= 2".into())),
            };
            let es = make_group(&spec)?;
            let rep = projreps_extraspecial(p, n, source.as_ref(), max_group)?;
            let mut classes = Vec::new();
            let mut failed = None;
            if let Some(src) = rep.source.clone() {
                let c = inflated_class(src.clone(), src, None, &rep.inflated, &rep.checks, es.generators(), None);
                if c.alpha_identity != "pass" {
                    failed = Some("twisted multiplication law failed".to_string());
                }
                classes.push(c);
            }
            let report = InflatedReport {
                group: es.label().into(),
                order: es.order(),
                generators: es.generators().iter().map(|&s| es.coords(s)).collect(),
                ordinary: rep.ordinary,
                ordinary_reps: rep.irr.iter().map(|r| r.export(&es)).collect(),
                classes,
            };
            Ok((Report::Inflated(report), failed))
        }
        _ => Err(Error::InvalidParameter(format!("no projective pipeline for {}", spec.label()))),
    }
}

fn line(check: &str, res: Result<(bool, String)>) -> CheckLine {
    match res {
        Ok((passed, detail)) => CheckLine { check: check.into(), passed, detail },
        Err(e) => CheckLine { check: check.into(), passed: false, detail: e.to_string() },
    }
}

/// Oracle against closed forms, cocycle identity on representatives, and the
/// projective pipelines, each skipped when above the caps.
pub fn verify(max_order: usize, max_group: usize) -> Vec<CheckLine> {
    let mut out = Vec::new();
    let points: [(Family, u64, u64, u64); 5] = [
        (Family::Heisenberg, 1, 3, 1),
        (Family::Heisenberg, 1, 3, 3),
        (Family::Heisenberg, 1, 5, 1),
        (Family::Abelian, 2, 3, 3),
        (Family::ExtraSpecial, 1, 3, 1),
    ];
    for (fam, n, r, t) in points {
        let name = format!("multiplier {fam:?} n={n} r={r} t={t}");
        out.push(line(&name, (|| {
            let d = schur_closed_form(fam, n, r, t)?;
            let g = make_group(&d.group_spec().ok_or_else(|| Error::InvalidParameter("infinite".into()))?)?;
            if g.order() > max_order {
                return Ok((true, format!("skipped, order {} above --max-order", g.order())));
            }
            let o = multiplier_order_capped(&g, None, max_order)?.multiplier_order;
            Ok((d.order == Some(o as u128), format!("closed form {}, oracle {o}", order_text(d.order))))
        })()));
    }
    for spec in [
        GroupSpec::Heisenberg { n: 1, r: 3, t: 1 },
        GroupSpec::Heisenberg { n: 1, r: 3, t: 3 },
        GroupSpec::Abelian { invariants: vec![3, 3, 3] },
    ] {
        out.push(line(&format!("cocycle identity {}", spec.label()), (|| {
            let g = make_group(&spec)?;
            let reps = enumerate_class_reps(&spec, CLASS_CAP)?;
            let bad = reps.entries.iter().filter(|(_, a)| !check_cocycle_identity(&g, a, max_order, 10_000).passed()).count();
            Ok((bad == 0, format!("{} representatives, {bad} failing", reps.entries.len())))
        })()));
    }
    out.push(line("projective table H_3(Z/3)", (|| {
        let t = projreps_h3(3, 1, max_group)?;
        let g = make_group(&GroupSpec::Heisenberg { n: 1, r: 3, t: 1 })?;
        let e = t.export(&g)?;
        Ok((e.checks.alpha_identity == "pass" && e.classes.len() == 9, format!("{} classes", e.classes.len())))
    })()));
    out.push(line("projective table Z/3+Z/3", (|| {
        let t = projreps_abelian(1, 3, 3, max_group)?;
        let g = make_group(&GroupSpec::Abelian { invariants: vec![3, 3] })?;
        let e = t.export(&g)?;
        Ok((e.checks.alpha_identity == "pass" && e.classes.len() == 3, format!("{} classes", e.classes.len())))
    })()));
    out
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn entry_text(entry: &[[String; 2]]) -> String {
    entry.iter().map(|[n, d]| if d == "1" { n.clone() } else { format!("{n}/{d}") }).collect::<Vec<_>>().join(" ")
}

fn matrix_rows(
    w: &mut csv::Writer<Vec<u8>>,
    prefix: &[String],
    conductor: u64,
    generator: usize,
    m: &ExportedMatrix,
) -> Result<()> {
    for (i, row) in m.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let mut rec = prefix.to_vec();
            rec.extend([conductor.to_string(), generator.to_string(), i.to_string(), j.to_string(), entry_text(e)]);
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    Ok(())
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// CSV rendering: summaries as one row per item, representations as one row
/// per matrix entry with entries written as coefficient lists in powers of zeta.
pub fn to_csv(report: &Report) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match report {
        Report::SchurPoint(_) | Report::Schur(_) => {
            let rows = match report {
                Report::SchurPoint(row) => std::slice::from_ref(row),
                Report::Schur(rows) => rows.as_slice(),
                _ => unreachable!(),
            };
            w.write_record(["family", "n", "r", "t", "closed_form", "oracle"]).map_err(csv_err)?;
            for row in rows {
                let cf = row.closed_form.order.map(|o| o.to_string()).unwrap_or_else(|| "infinite".into());
                let or = opt(row.oracle.as_ref().map(|o| o.multiplier_order));
                w.write_record([row.family.clone(), row.n.to_string(), row.r.to_string(), row.t.to_string(), cf, or])
                    .map_err(csv_err)?;
            }
        }
        Report::Cocycles(c) => {
            w.write_record(["class", "params", "x", "y", "exponent", "modulus"]).map_err(csv_err)?;
            for e in &c.classes {
                let params = serde_json::to_string(&e.params)?;
                match &e.table {
                    None => w.write_record([e.index.to_string(), params, String::new(), String::new(), String::new(), String::new()]),
                    Some(t) => {
                        for x in 0..t.order {
                            for y in 0..t.order {
                                w.write_record([
                                    e.index.to_string(),
                                    params.clone(),
                                    x.to_string(),
                                    y.to_string(),
                                    t.get(x, y).to_string(),
                                    t.modulus.to_string(),
                                ])
                                .map_err(csv_err)?;
                            }
                        }
                        Ok(())
                    }
                }
                .map_err(csv_err)?;
            }
        }
        Report::Irreps(r) => {
            w.write_record(["rep", "dim", "conductor", "generator", "row", "col", "entry"]).map_err(csv_err)?;
            for (k, rep) in r.reps.iter().enumerate() {
                for (s, m) in rep.generator_images.iter().enumerate() {
                    matrix_rows(&mut w, &[k.to_string(), rep.dim.to_string()], rep.conductor, s, m)?;
                }
            }
        }
        Report::Table(t) => {
            w.write_record(["class_id", "rep", "dim", "conductor", "generator", "row", "col", "entry"]).map_err(csv_err)?;
            for c in &t.classes {
                let id = c.class_id.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                for (k, rep) in c.reps.iter().enumerate() {
                    for (s, m) in rep.generator_images.iter().enumerate() {
                        matrix_rows(&mut w, &[id.clone(), k.to_string(), rep.dim.to_string()], rep.conductor, s, m)?;
                    }
                }
            }
        }
        Report::Inflated(r) => {
            w.write_record(["class", "rep", "dim", "conductor", "generator", "row", "col", "entry"]).map_err(csv_err)?;
            for (ci, c) in r.classes.iter().enumerate() {
                for (k, rep) in c.reps.iter().enumerate() {
                    for (s, m) in rep.generator_images.iter().enumerate() {
                        matrix_rows(&mut w, &[ci.to_string(), k.to_string(), rep.dim.to_string()], rep.conductor, s, m)?;
                    }
                }
            }
        }
        Report::Verify(lines) => {
            w.write_record(["check", "passed", "detail"]).map_err(csv_err)?;
            for l in lines {
                w.write_record([l.check.clone(), l.passed.to_string(), l.detail.clone()]).map_err(csv_err)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
}

/// Writes the report to `out` or stdout.
pub fn emit(report: &Report, format: Format, out: Option<&PathBuf>) -> Result<()> {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv => to_csv(report)?,
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("schurrep").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn abelian_family_maps_to_invariants() {
        let cli = parse(&["irreps", "--family", "abelian", "--n", "2", "--r", "9", "--t", "3"]);
        let Command::Irreps { group } = cli.command else { panic!() };
        assert_eq!(group.spec().unwrap(), GroupSpec::Abelian { invariants: vec![3, 9, 9] });
    }

    #[test]
    fn t_must_divide_r() {
        let cli = parse(&["irreps", "--family", "abelian", "--n", "1", "--r", "3", "--t", "2"]);
        let Command::Irreps { group } = cli.command else { panic!() };
        assert!(group.spec().unwrap_err().is_validation());
    }

    #[test]
    fn schur_csv_header() {
        let (report, msg) = schur(FamilyArg::H, 1, &[3, 5], &[1], &[], None).unwrap();
        assert!(msg.is_none());
        let csv = to_csv(&report).unwrap();
        assert_eq!(csv.lines().next(), Some("family,n,r,t,closed_form,oracle"));
        assert_eq!(csv.lines().nth(2), Some("h,1,5,1,25,"));
    }

    #[test]
    fn grid_skips_non_divisors() {
        let (Report::Schur(rows), _) = schur(FamilyArg::H, 1, &[3, 5], &[1, 3], &[], None).unwrap() else { panic!() };
        let pts: Vec<(u64, u64)> = rows.iter().map(|r| (r.r, r.t)).collect();
        assert_eq!(pts, vec![(3, 1), (3, 3), (5, 1)]);
    }
}
