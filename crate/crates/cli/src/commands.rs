//! Command implementations. Each writes a report and returns an [`Outcome`].

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ihom_core::chains::SheetPairing;
use ihom_core::complex::SimplicialComplex;
use ihom_core::duality::{
    duality_check, ih_isolated_formula, local_check, local_cone, mv_consistency, DualityError,
};
use ihom_core::engine::{
    homology, ih_closed, ih_compact, ih_compact_open, ih_relative_strata, EngineError, IHResult,
};
use ihom_core::perversity::{default_pair, Allowability, LooseMode, LoosePerversity, PerversityError, PerversityPair};
use ihom_core::resolution::{ResolutionDatum, ResolutionError};
use ihom_core::strat::Filtration;
use thiserror::Error;

use crate::corpus;
use crate::scx::{parse_scx, CaseContext, Expect, ScxDocument, ScxError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Scx { path: String, source: ScxError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Perversity(#[from] PerversityError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error("{0}")]
    Usage(String),
}

impl From<ScxError> for CliError {
    fn from(source: ScxError) -> Self {
        CliError::Scx {
            path: String::new(),
            source,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Mismatch,
}

impl Outcome {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Mismatch
        }
    }

    pub fn code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Mismatch => 1,
        }
    }
}

pub const INPUT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ihom", version, about = "Mod 2 intersection homology of simplicial pseudomanifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    /// SCX file, or `corpus:<name>` for a bundled entry
    pub file: String,
    /// Case to use (default: the first case in the file)
    #[arg(long)]
    pub case: Option<String>,
    /// Complex to use instead of a case
    #[arg(long)]
    pub complex: Option<String>,
    #[arg(long)]
    pub filtration: Option<String>,
    #[arg(long)]
    pub pairing: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Perv {
    /// Comma-separated p_0,...,p_n (default: the standard pair)
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Primary)]
    pub loose_mode: ModeArg,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[default]
    Primary,
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SupportsArg {
    Compact,
    Closed,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ordinary mod 2 homology
    Homology {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        tsv: bool,
    },
    /// Allowable (intersection) homology
    Ih {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        perv: Perv,
        #[arg(long, value_enum, default_value_t = SupportsArg::Compact)]
        supports: SupportsArg,
        /// Open set, as `;`-separated simplices whose strata it consists of
        #[arg(long)]
        open: Option<String>,
        /// Print representative cycles
        #[arg(long)]
        reps: bool,
        #[arg(long)]
        tsv: bool,
    },
    /// Strata, frontier condition, and refinement between declared filtrations
    CheckStrat {
        #[command(flatten)]
        target: Target,
    },
    /// Fiber dimensions of a resolution over each stratum
    CheckSmall {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        map: Option<String>,
    },
    /// Strict transform of a declared cycle under a resolution
    StrictTransform {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        cycle: String,
    },
    /// Compare homology of a small resolution with allowable homology
    VerifySmallres {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        perv: Perv,
        #[arg(long)]
        map: Option<String>,
    },
    /// Allowable homology of cone neighborhoods against the link formula
    Local {
        #[command(flatten)]
        target: Target,
        /// Vertex to examine (default: the case's singular vertices)
        #[arg(long)]
        vertex: Vec<String>,
    },
    /// Formulas for isolated singularities against the engine
    Formulas {
        #[command(flatten)]
        target: Target,
    },
    /// Intersection matrices of declared representatives
    Pair {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        perv: Perv,
    },
    /// Duality of dimensions and pairings, plus the Mayer-Vietoris count
    Duality {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        perv: Perv,
    },
    /// Run every expectation in the bundled corpus
    VerifyCorpus {
        /// Only these entries
        #[arg(long)]
        only: Vec<String>,
    },
    /// List corpus entries, or print one as SCX
    Corpus { name: Option<String> },
}

/// Parses the process arguments and runs; returns the exit code.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match run(&cli.command, out) {
        Ok(o) => o.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            INPUT_ERROR
        }
    }
}

fn load(file: &str) -> Result<ScxDocument, CliError> {
    let with_path = |source| CliError::Scx {
        path: file.to_string(),
        source,
    };
    if let Some(name) = file.strip_prefix("corpus:") {
        return corpus::document(name).map_err(with_path);
    }
    let text = std::fs::read_to_string(PathBuf::from(file)).map_err(|source| CliError::Io {
        path: file.to_string(),
        source,
    })?;
    parse_scx(&text).map_err(with_path)
}

/// The complex, filtration and pairing a command works on.
struct Selection {
    doc: ScxDocument,
    complex: String,
    filtration: Filtration,
    pairing: SheetPairing,
    case: Option<CaseContext>,
}

impl Selection {
    fn x(&self) -> &SimplicialComplex {
        self.filtration.complex()
    }

    fn resolution(&self, map: Option<&str>) -> Result<ResolutionDatum, CliError> {
        match (map, &self.case) {
            (Some(m), _) => Ok(self.doc.map(m)?),
            (None, Some(c)) if c.resolution.is_some() => Ok(c.resolution.clone().expect("checked")),
            _ => Err(CliError::Usage("no resolution: pass --map or choose a case with one".into())),
        }
    }
}

fn select(t: &Target) -> Result<Selection, CliError> {
    let doc = load(&t.file)?;
    let case_name = match (&t.case, &t.complex) {
        (Some(c), _) => Some(c.clone()),
        (None, None) => doc.cases.first().map(|c| c.name.clone()),
        (None, Some(_)) => None,
    };
    let (complex, case) = match case_name {
        Some(name) => {
            let ctx = doc.case_context(&name)?;
            (doc.case(&name)?.complex.clone(), Some(ctx))
        }
        None => {
            let name = match &t.complex {
                Some(c) => c.clone(),
                None => doc
                    .complexes
                    .first()
                    .map(|c| c.name.clone())
                    .ok_or_else(|| CliError::Usage("file declares no complex".into()))?,
            };
            (name, None)
        }
    };
    let filtration = match (&t.filtration, &case) {
        (Some(f), _) => doc.filtration(&complex, f)?,
        (None, Some(c)) => c.filtration.clone(),
        (None, None) => doc.filtration_or_default(&complex, None)?,
    };
    let pairing = match (&t.pairing, &case) {
        (Some(p), _) => doc.pairing(&complex, p)?,
        (None, Some(c)) => c.pairing.clone(),
        (None, None) => {
            let first = doc.complex_decl(&complex)?.pairings.first().map(|p| p.name.clone());
            doc.pairing_or_default(&complex, first.as_deref())?
        }
    };
    Ok(Selection {
        doc,
        complex,
        filtration,
        pairing,
        case,
    })
}

fn parse_perversity(s: &str) -> Result<LoosePerversity, CliError> {
    s.split(',')
        .map(|v| v.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map(LoosePerversity)
        .map_err(|_| CliError::Usage(format!("cannot read perversity `{s}`")))
}

fn perversity_pair(perv: &Perv, n: usize) -> Result<PerversityPair, CliError> {
    let d = default_pair(n);
    let p = perv.p.as_deref().map(parse_perversity).transpose()?.unwrap_or(d.p);
    let q = perv.q.as_deref().map(parse_perversity).transpose()?.unwrap_or(d.q);
    let pp = PerversityPair { p, q };
    let bad = ihom_core::perversity::validate_pair(&pp)?;
    if !bad.is_empty() {
        return Err(PerversityError::InvalidPair(bad).into());
    }
    for len in [pp.p.len(), pp.q.len()] {
        if len < n + 1 {
            return Err(PerversityError::TooShort { len, n }.into());
        }
    }
    Ok(pp)
}

fn allowability<'a>(sel: &'a Selection, pp: &'a PerversityPair, perv: &Perv) -> Allowability<'a> {
    let mut a = Allowability::new(&sel.filtration, &sel.pairing, pp);
    a.mode = match perv.loose_mode {
        ModeArg::Primary => LooseMode::Primary,
        ModeArg::Literal => LooseMode::Literal,
    };
    a
}

fn write_dims(out: &mut dyn Write, r: &IHResult, tsv: bool) -> std::io::Result<()> {
    if tsv {
        writeln!(out, "degree\tdim")?;
        for (k, d) in r.dims.iter().enumerate() {
            writeln!(out, "{k}\t{d}")?;
        }
        Ok(())
    } else {
        writeln!(out, "{}", r.summary())
    }
}

fn open_strata(sel: &Selection, spec: Option<&str>) -> Result<Option<BTreeSet<usize>>, CliError> {
    match spec {
        Some(s) => {
            let x = sel.x();
            let simplices = s
                .split(';')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let names: Vec<&str> = t.split(',').collect();
                    x.simplex_from_names(&names)
                        .ok()
                        .filter(|sx| x.contains(sx))
                        .ok_or_else(|| CliError::Usage(format!("`{t}` is not a simplex of {}", sel.complex)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Some(sel.filtration.strata_containing(&simplices)))
        }
        None => Ok(sel.case.as_ref().and_then(|c| c.open.clone())),
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<output>".into(),
        source: e,
    }
}

pub fn run(cmd: &Command, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cmd {
        Command::Homology { target, tsv } => {
            let sel = select(target)?;
            write_dims(out, &homology(sel.x()), *tsv).map_err(io)?;
            Ok(Outcome::Pass)
        }
        Command::Ih {
            target,
            perv,
            supports,
            open,
            reps,
            tsv,
        } => {
            let sel = select(target)?;
            let pp = perversity_pair(perv, sel.filtration.n())?;
            let allow = allowability(&sel, &pp, perv);
            let open = open_strata(&sel, open.as_deref())?;
            let r = match (supports, &open) {
                (SupportsArg::Compact, None) => ih_compact(&allow)?,
                (SupportsArg::Compact, Some(v)) => ih_compact_open(&allow, v)?,
                (SupportsArg::Closed, None) => {
                    let mut r = ih_compact(&allow)?;
                    r.supports = ihom_core::engine::Supports::Closed;
                    r
                }
                (SupportsArg::Closed, Some(v)) => ih_closed(&allow, v)?,
            };
            write_dims(out, &r, *tsv).map_err(io)?;
            if *reps {
                for (k, rk) in r.reps.iter().enumerate() {
                    for c in rk {
                        writeln!(out, "rep {k}: {}", c.display(sel.x())).map_err(io)?;
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Command::CheckStrat { target } => check_strat(target, out),
        Command::CheckSmall { target, map } => {
            let sel = select(target)?;
            let r = sel.resolution(map.as_deref())?;
            let rep = r.check_small(&sel.filtration)?;
            for s in &rep.strata {
                writeln!(
                    out,
                    "stratum {} dim {} codim {}: fiber dim {} {}",
                    s.stratum,
                    s.dim,
                    s.codim,
                    s.fiber_dim,
                    if s.ok { "ok" } else { "too large" }
                )
                .map_err(io)?;
            }
            for l in &rep.loci {
                writeln!(out, "locus fib >= {}: dim {} bound {}", l.i, l.dim, l.bound).map_err(io)?;
            }
            writeln!(out, "small: {}", if rep.small { "yes" } else { "no" }).map_err(io)?;
            Ok(Outcome::Pass)
        }
        Command::StrictTransform { target, map, cycle } => {
            let sel = select(target)?;
            let r = sel.resolution(map.as_deref())?;
            let c = sel.doc.cycle(cycle)?;
            let st = r.strict_transform(&c);
            writeln!(out, "{}", st.display(&r.source)).map_err(io)?;
            let back = r.pushforward(&st);
            let ok = back == c;
            writeln!(out, "pushforward recovers the cycle: {}", if ok { "yes" } else { "no" }).map_err(io)?;
            Ok(Outcome::from_ok(ok))
        }
        Command::VerifySmallres { target, perv, map } => {
            let sel = select(target)?;
            let r = sel.resolution(map.as_deref())?;
            let pp = perversity_pair(perv, sel.filtration.n())?;
            let allow = allowability(&sel, &pp, perv);
            let rep = r.verify_smallres(&allow)?;
            for d in &rep.degrees {
                writeln!(
                    out,
                    "k={}: H={} IH={} generic={} non-generic={} pi-rank={} pi(s)=id:{} s(pi)=id:{} {}",
                    d.k,
                    d.h_dim,
                    d.ih_dim,
                    d.generic_found,
                    d.not_generic,
                    d.pi_rank,
                    d.pi_s_identity,
                    d.s_pi_identity,
                    if d.passed() { "ok" } else { "FAIL" }
                )
                .map_err(io)?;
            }
            Ok(Outcome::from_ok(rep.passed()))
        }
        Command::Local { target, vertex } => {
            let sel = select(target)?;
            let x = sel.x();
            let vs: Vec<u32> = if vertex.is_empty() {
                sel.case.as_ref().map(|c| c.singular.clone()).unwrap_or_default()
            } else {
                vertex
                    .iter()
                    .map(|v| x.vertex_id(v).ok_or_else(|| CliError::Usage(format!("unknown vertex `{v}`"))))
                    .collect::<Result<_, _>>()?
            };
            if vs.is_empty() {
                return Err(CliError::Usage("no vertices: pass --vertex or a case with `singular`".into()));
            }
            let mut ok = true;
            for v in vs {
                let lc = local_cone(x, v)?;
                let (oracle, c, cl) = local_check(&lc.link)?;
                let good = oracle.admits(&c, &cl);
                ok &= good;
                writeln!(
                    out,
                    "{}: compact {:?} closed {:?} expected {:?} / {:?} {}",
                    x.vertex_name(v),
                    c,
                    cl,
                    oracle.compact,
                    oracle.closed,
                    if good { "ok" } else { "MISMATCH" }
                )
                .map_err(io)?;
            }
            Ok(Outcome::from_ok(ok))
        }
        Command::Formulas { target } => {
            let sel = select(target)?;
            let case = sel
                .case
                .as_ref()
                .ok_or_else(|| CliError::Usage("formulas need a case with `singular`".into()))?;
            let predicted = ih_isolated_formula(sel.x(), &case.singular, case.resolution.as_ref())?;
            let pp = default_pair(sel.filtration.n());
            let actual = ih_compact(&Allowability::new(&sel.filtration, &sel.pairing, &pp))?.dims;
            writeln!(out, "formula: {predicted:?}\nengine:  {actual:?}").map_err(io)?;
            Ok(Outcome::from_ok(predicted == actual))
        }
        Command::Pair { target, perv } | Command::Duality { target, perv } => {
            let sel = select(target)?;
            let pp = perversity_pair(perv, sel.filtration.n())?;
            let allow = allowability(&sel, &pp, perv);
            let reps = declared_reps(&sel)?;
            let report = duality_check(&allow, &reps)?;
            let mut ok = true;
            for p in &report.pairings {
                let full = p.rank == report.dims[p.k];
                ok &= full;
                writeln!(out, "k={}: rank {} of {} {}", p.k, p.rank, report.dims[p.k], if full { "ok" } else { "DEGENERATE" })
                    .map_err(io)?;
                for row in &p.matrix {
                    let r: Vec<&str> = row.iter().map(|b| if *b { "1" } else { "0" }).collect();
                    writeln!(out, "  {}", r.join(" ")).map_err(io)?;
                }
            }
            if matches!(cmd, Command::Duality { .. }) {
                for (k, a, b) in &report.degrees {
                    writeln!(out, "IH_{k} = {a}, IH_{} = {b}", report.dims.len() - 1 - k).map_err(io)?;
                }
                ok &= report.dims_match();
                if let Some(case) = &sel.case {
                    if !case.singular.is_empty() {
                        let mv = mv_consistency(&allow, &case.singular)?;
                        writeln!(out, "mayer-vietoris defect: {mv}").map_err(io)?;
                        ok &= mv == 0;
                    }
                }
            }
            Ok(Outcome::from_ok(ok))
        }
        Command::VerifyCorpus { only } => {
            let mut ok = true;
            for e in corpus::entries() {
                if !only.is_empty() && !only.iter().any(|o| o == e.name) {
                    continue;
                }
                let doc = parse_scx(&e.text).map_err(|source| CliError::Scx {
                    path: format!("corpus:{}", e.name),
                    source,
                })?;
                for case in &doc.cases {
                    for check in verify_case(&doc, &case.name)? {
                        ok &= check.ok;
                        writeln!(
                            out,
                            "[{}] {}/{}: {} expected {} got {}",
                            if check.ok { "ok" } else { "FAIL" },
                            e.name,
                            case.name,
                            check.label,
                            check.expected,
                            check.got
                        )
                        .map_err(io)?;
                    }
                }
            }
            Ok(Outcome::from_ok(ok))
        }
        Command::Corpus { name } => {
            match name {
                None => {
                    for e in corpus::entries() {
                        writeln!(out, "{}", e.name).map_err(io)?;
                    }
                }
                Some(n) => {
                    let e = corpus::entry(n).ok_or_else(|| CliError::Usage(format!("no corpus entry `{n}`")))?;
                    write!(out, "{}", e.text).map_err(io)?;
                }
            }
            Ok(Outcome::Pass)
        }
    }
}

fn check_strat(target: &Target, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let sel = select(target)?;
    let f = &sel.filtration;
    let x = sel.x();
    for s in f.strata() {
        let first = s.cells.first().map(|c| x.display(x.simplex(*c))).unwrap_or_default();
        writeln!(out, "stratum {}: dim {} codim {} ({} simplices, e.g. {first})", s.id, s.dim, s.codim, s.cells.len())
            .map_err(io)?;
    }
    let frontier = f.check_frontier();
    for (a, b) in &frontier.violations {
        writeln!(out, "frontier: stratum {a} meets the closure of stratum {b} without lying in it").map_err(io)?;
    }
    writeln!(out, "frontier condition: {}", if frontier.ok { "holds" } else { "fails" }).map_err(io)?;
    let names: Vec<String> = sel.doc.complex_decl(&sel.complex)?.filtrations.iter().map(|f| f.name.clone()).collect();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let fa = sel.doc.filtration(&sel.complex, a)?;
            let fb = sel.doc.filtration(&sel.complex, b)?;
            let common = fa.common_refinement(&fb).map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(
                out,
                "{a} refines {b}: {}; common refinement has {} strata",
                fa.refines(&fb).map_err(|e| CliError::Usage(e.to_string()))?,
                common.strata().len()
            )
            .map_err(io)?;
        }
    }
    Ok(Outcome::from_ok(frontier.ok))
}

type Reps = Vec<(usize, Vec<ihom_core::chains::Chain>, Vec<ihom_core::duality::DualChain>)>;

fn declared_reps(sel: &Selection) -> Result<Reps, CliError> {
    let Some(ctx) = &sel.case else { return Ok(Vec::new()) };
    let case = sel.doc.case(&ctx.name)?;
    case.pairing_reps
        .iter()
        .map(|r| {
            let cycles = r.cycles.iter().map(|c| sel.doc.cycle(c)).collect::<Result<Vec<_>, _>>()?;
            let duals = r.duals.iter().map(|d| sel.doc.dual(d)).collect::<Result<Vec<_>, _>>()?;
            Ok((r.k, cycles, duals))
        })
        .collect()
}

/// One checked expectation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
}

fn check(label: String, expected: impl ToString, got: impl ToString) -> Check {
    let (expected, got) = (expected.to_string(), got.to_string());
    Check {
        ok: expected == got,
        label,
        expected,
        got,
    }
}

/// Evaluates every expectation of a case, plus the resolution comparison and
/// pairing ranks when the case declares them.
pub fn verify_case(doc: &ScxDocument, name: &str) -> Result<Vec<Check>, CliError> {
    let ctx = doc.case_context(name)?;
    let case = doc.case(name)?;
    let f = &ctx.filtration;
    let pp = default_pair(f.n());
    let allow = Allowability::new(f, &ctx.pairing, &pp);
    let mut checks = Vec::new();
    let mut compact: Option<IHResult> = None;
    let mut closed: Option<IHResult> = None;
    let mut plain: Option<IHResult> = None;
    for e in &case.expects {
        match *e {
            Expect::Homology(k, d) => {
                let h = plain.get_or_insert_with(|| homology(f.complex()));
                checks.push(check(format!("H_{k}"), d, h.dim(k)));
            }
            Expect::IhCompact(k, d) => {
                if compact.is_none() {
                    compact = Some(match &ctx.open {
                        Some(v) => ih_compact_open(&allow, v)?,
                        None => ih_compact(&allow)?,
                    });
                }
                checks.push(check(format!("IH^c_{k}"), d, compact.as_ref().expect("set").dim(k)));
            }
            Expect::IhClosed(k, d) => {
                if closed.is_none() {
                    closed = Some(match &ctx.open {
                        Some(v) => ih_closed(&allow, v)?,
                        None => {
                            let all: BTreeSet<usize> = BTreeSet::new();
                            ih_relative_strata(&allow, &all)?
                        }
                    });
                }
                checks.push(check(format!("IH^cl_{k}"), d, closed.as_ref().expect("set").dim(k)));
            }
            Expect::Small(b) => {
                let r = ctx
                    .resolution
                    .as_ref()
                    .ok_or_else(|| CliError::Usage(format!("case `{name}` expects smallness without a resolution")))?;
                let got = match r.check_small(f) {
                    Ok(rep) => rep.small,
                    Err(ResolutionError::NonConstantFiberDim { .. }) => false,
                    Err(e) => return Err(e.into()),
                };
                checks.push(check("small".into(), yes_no(b), yes_no(got)));
                if b && got {
                    let rep = r.verify_smallres(&allow)?;
                    checks.push(check("H(resolution) = IH via pi and strict transform".into(), "pass", pass_fail(rep.passed())));
                }
            }
        }
    }
    if !case.pairing_reps.is_empty() {
        let sel = Selection {
            doc: doc.clone(),
            complex: case.complex.clone(),
            filtration: f.clone(),
            pairing: ctx.pairing.clone(),
            case: Some(ctx.clone()),
        };
        let report = duality_check(&allow, &declared_reps(&sel)?)?;
        for p in &report.pairings {
            checks.push(check(format!("pairing rank in degree {}", p.k), report.dims[p.k], p.rank));
        }
    }
    Ok(checks)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}
