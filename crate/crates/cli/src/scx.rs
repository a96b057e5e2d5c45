//! The SCX text format: complexes, filtrations, sheet pairings, maps, cycles,
//! and expected results, one declaration per line.
//!
//! ```text
//! complex eight dim 1
//! top o,a1
//! skeleton 0 o
//! pairing node
//! pair 1 face o : o,a1|o,b1 o,a2|o,b2
//! case node complex eight pairing node
//! expect ih c 1 = 1
//! ```

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use ihom_core::chains::{Chain, SheetPairing, SimplicialMap};
use ihom_core::complex::{Simplex, SimplicialComplex};
use ihom_core::duality::DualChain;
use ihom_core::resolution::ResolutionDatum;
use ihom_core::strat::{Filtration, StratError};
use thiserror::Error;

/// Name of the filtration declared by `skeleton` lines directly under `complex`.
pub const DEFAULT_FILTRATION: &str = "default";
/// Always available: only the top skeleton.
pub const TRIVIAL_FILTRATION: &str = "trivial";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScxError {
    #[error("empty input")]
    EmptyInput,
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: unknown vertex `{vertex}`")]
    UnknownVertex { line: usize, vertex: String },
    #[error("line {line}: skeleton X_{j} does not contain X_{below}")]
    NonNestedSkeleton { line: usize, j: usize, below: usize },
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
}

fn perr(line: usize, reason: impl Into<String>) -> ScxError {
    ScxError::Parse {
        line,
        reason: reason.into(),
    }
}

type Names = Vec<String>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FiltrationDecl {
    pub name: String,
    pub skeleta: Vec<(usize, Vec<Names>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDecl {
    pub d: usize,
    pub face: Names,
    pub pairs: Vec<(Names, Names)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairingDecl {
    pub name: String,
    pub pairs: Vec<PairDecl>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplexDecl {
    pub name: String,
    pub dim: usize,
    pub tops: Vec<Names>,
    pub filtrations: Vec<FiltrationDecl>,
    pub pairings: Vec<PairingDecl>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapDecl {
    pub name: String,
    pub from: String,
    pub to: String,
    pub assignments: Vec<(String, String)>,
    pub exceptional: Vec<Names>,
    /// `(source pairing, target pairing)` declared compatible with the map.
    pub compatible: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecl {
    pub name: String,
    pub complex: String,
    pub deg: usize,
    pub simplices: Vec<Names>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    IhCompact(usize, usize),
    IhClosed(usize, usize),
    Homology(usize, usize),
    Small(bool),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReps {
    pub k: usize,
    pub cycles: Vec<String>,
    pub duals: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseDecl {
    pub name: String,
    pub complex: String,
    pub filtration: Option<String>,
    pub pairing: Option<String>,
    pub resolution: Option<String>,
    pub singular: Names,
    /// Simplices picking out the strata of an open set.
    pub open: Vec<Names>,
    pub expects: Vec<Expect>,
    pub pairing_reps: Vec<PairingReps>,
}

#[derive(Clone, Debug, Default)]
pub struct ScxDocument {
    pub complexes: Vec<ComplexDecl>,
    pub maps: Vec<MapDecl>,
    pub cycles: Vec<CycleDecl>,
    pub duals: Vec<CycleDecl>,
    pub cases: Vec<CaseDecl>,
    /// Line of each declaration, keyed by `kind:name`; not part of equality.
    lines: HashMap<String, usize>,
}

impl PartialEq for ScxDocument {
    fn eq(&self, other: &Self) -> bool {
        self.complexes == other.complexes
            && self.maps == other.maps
            && self.cycles == other.cycles
            && self.duals == other.duals
            && self.cases == other.cases
    }
}

fn simplex_names(tok: &str, line: usize) -> Result<Names, ScxError> {
    let names: Names = tok.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(String::is_empty) {
        return Err(perr(line, format!("malformed simplex `{tok}`")));
    }
    Ok(names)
}

fn simplex_list(text: &str, line: usize) -> Result<Vec<Names>, ScxError> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| simplex_names(s, line))
        .collect()
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ScxError> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("{what} must be a nonnegative integer")))
}

fn expect_word(tok: Option<&str>, word: &str, line: usize) -> Result<(), ScxError> {
    match tok {
        Some(t) if t == word => Ok(()),
        other => Err(perr(line, format!("expected `{word}`, found `{}`", other.unwrap_or("end of line")))),
    }
}

/// Splits `head : tail`.
fn split_colon(rest: &str, line: usize) -> Result<(&str, &str), ScxError> {
    rest.split_once(':').ok_or_else(|| perr(line, "missing `:`"))
}

pub fn parse_scx(text: &str) -> Result<ScxDocument, ScxError> {
    let mut doc = ScxDocument::default();
    #[derive(PartialEq)]
    enum Ctx {
        None,
        Complex,
        Filtration,
        Pairing,
        Map,
        Case,
    }
    let mut ctx = Ctx::None;
    let mut any = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        any = true;
        let (kw, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        let mut words = rest.split_whitespace();
        match kw {
            "complex" => {
                let name = words.next().ok_or_else(|| perr(line, "missing complex name"))?.to_string();
                expect_word(words.next(), "dim", line)?;
                let dim = number(words.next(), line, "dimension")?;
                doc.lines.insert(format!("complex:{name}"), line);
                doc.complexes.push(ComplexDecl {
                    name,
                    dim,
                    ..Default::default()
                });
                ctx = Ctx::Complex;
            }
            "top" => {
                let cx = doc.complexes.last_mut().filter(|_| ctx != Ctx::None && ctx != Ctx::Map && ctx != Ctx::Case);
                let cx = cx.ok_or_else(|| perr(line, "`top` outside a complex block"))?;
                cx.tops.push(simplex_names(rest, line)?);
            }
            "filtration" => {
                let cx = doc.complexes.last_mut().ok_or_else(|| perr(line, "`filtration` outside a complex block"))?;
                let name = words.next().ok_or_else(|| perr(line, "missing filtration name"))?.to_string();
                doc.lines.insert(format!("filtration:{}:{name}", cx.name), line);
                cx.filtrations.push(FiltrationDecl {
                    name,
                    skeleta: Vec::new(),
                });
                ctx = Ctx::Filtration;
            }
            "skeleton" => {
                let cx = match ctx {
                    Ctx::Complex | Ctx::Filtration => doc.complexes.last_mut().expect("context"),
                    _ => return Err(perr(line, "`skeleton` outside a complex or filtration block")),
                };
                if ctx == Ctx::Complex {
                    doc.lines.insert(format!("filtration:{}:{DEFAULT_FILTRATION}", cx.name), line);
                    cx.filtrations.push(FiltrationDecl {
                        name: DEFAULT_FILTRATION.into(),
                        skeleta: Vec::new(),
                    });
                    ctx = Ctx::Filtration;
                }
                let (jtok, list) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                let j = number(Some(jtok), line, "skeleton index")?;
                let f = cx.filtrations.last_mut().expect("filtration block");
                doc.lines.insert(format!("skeleton:{}:{}:{j}", cx.name, f.name), line);
                f.skeleta.push((j, simplex_list(list, line)?));
            }
            "pairing" => {
                let cx = doc.complexes.last_mut().ok_or_else(|| perr(line, "`pairing` outside a complex block"))?;
                let name = words.next().ok_or_else(|| perr(line, "missing pairing name"))?.to_string();
                doc.lines.insert(format!("pairing:{}:{name}", cx.name), line);
                cx.pairings.push(PairingDecl {
                    name,
                    pairs: Vec::new(),
                });
                ctx = Ctx::Pairing;
            }
            "pair" => {
                if ctx != Ctx::Pairing {
                    return Err(perr(line, "`pair` outside a pairing block"));
                }
                let (head, tail) = split_colon(rest, line)?;
                let mut h = head.split_whitespace();
                let d = number(h.next(), line, "sheet dimension")?;
                expect_word(h.next(), "face", line)?;
                let face = simplex_names(h.next().ok_or_else(|| perr(line, "missing face"))?, line)?;
                let mut pairs = Vec::new();
                for tok in tail.split_whitespace() {
                    let (a, b) = tok.split_once('|').ok_or_else(|| perr(line, format!("malformed pair `{tok}`")))?;
                    pairs.push((simplex_names(a, line)?, simplex_names(b, line)?));
                }
                let cx = doc.complexes.last_mut().expect("pairing context");
                let p = cx.pairings.last_mut().expect("pairing context");
                doc.lines.insert(format!("pair:{}:{}:{}", cx.name, p.name, face.join(",")), line);
                p.pairs.push(PairDecl { d, face, pairs });
            }
            "map" => {
                let (head, tail) = split_colon(rest, line)?;
                let mut h = head.split_whitespace();
                let name = h.next().ok_or_else(|| perr(line, "missing map name"))?.to_string();
                expect_word(h.next(), "from", line)?;
                let from = h.next().ok_or_else(|| perr(line, "missing source"))?.to_string();
                expect_word(h.next(), "to", line)?;
                let to = h.next().ok_or_else(|| perr(line, "missing target"))?.to_string();
                let mut assignments = Vec::new();
                for tok in tail.split_whitespace() {
                    let (a, b) = tok.split_once("->").ok_or_else(|| perr(line, format!("malformed assignment `{tok}`")))?;
                    assignments.push((a.to_string(), b.to_string()));
                }
                doc.lines.insert(format!("map:{name}"), line);
                doc.maps.push(MapDecl {
                    name,
                    from,
                    to,
                    assignments,
                    ..Default::default()
                });
                ctx = Ctx::Map;
            }
            "exceptional" => {
                if ctx != Ctx::Map {
                    return Err(perr(line, "`exceptional` outside a map block"));
                }
                let m = doc.maps.last_mut().expect("map context");
                for tok in rest.split_whitespace() {
                    m.exceptional.push(simplex_names(tok, line)?);
                }
            }
            "compatible" => {
                if ctx != Ctx::Map {
                    return Err(perr(line, "`compatible` outside a map block"));
                }
                let (a, b) = rest.split_once("->").ok_or_else(|| perr(line, "expected `<pairing> -> <pairing>`"))?;
                doc.maps
                    .last_mut()
                    .expect("map context")
                    .compatible
                    .push((a.trim().to_string(), b.trim().to_string()));
            }
            "cycle" | "dual" => {
                let (head, tail) = split_colon(rest, line)?;
                let mut h = head.split_whitespace();
                let name = h.next().ok_or_else(|| perr(line, "missing name"))?.to_string();
                expect_word(h.next(), "in", line)?;
                let complex = h.next().ok_or_else(|| perr(line, "missing complex"))?.to_string();
                expect_word(h.next(), "deg", line)?;
                let deg = number(h.next(), line, "degree")?;
                doc.lines.insert(format!("{kw}:{name}"), line);
                let decl = CycleDecl {
                    name,
                    complex,
                    deg,
                    simplices: simplex_list(tail, line)?,
                };
                if kw == "cycle" {
                    doc.cycles.push(decl);
                } else {
                    doc.duals.push(decl);
                }
                ctx = Ctx::None;
            }
            "case" => {
                let name = words.next().ok_or_else(|| perr(line, "missing case name"))?.to_string();
                let mut case = CaseDecl {
                    name: name.clone(),
                    ..Default::default()
                };
                let mut seen_complex = false;
                while let Some(key) = words.next() {
                    let val = words.next().ok_or_else(|| perr(line, format!("`{key}` needs a value")))?;
                    match key {
                        "complex" => {
                            case.complex = val.to_string();
                            seen_complex = true;
                        }
                        "filtration" => case.filtration = Some(val.to_string()),
                        "pairing" => case.pairing = Some(val.to_string()),
                        "resolution" => case.resolution = Some(val.to_string()),
                        "singular" => case.singular = simplex_names(val, line)?,
                        other => return Err(perr(line, format!("unknown case field `{other}`"))),
                    }
                }
                if !seen_complex {
                    return Err(perr(line, "case needs `complex <name>`"));
                }
                doc.lines.insert(format!("case:{name}"), line);
                doc.cases.push(case);
                ctx = Ctx::Case;
            }
            "open" | "expect" | "pairing-reps" => {
                if ctx != Ctx::Case {
                    return Err(perr(line, format!("`{kw}` outside a case block")));
                }
                let case = doc.cases.last_mut().expect("case context");
                match kw {
                    "open" => case.open.extend(simplex_list(rest, line)?),
                    "expect" => case.expects.push(parse_expect(rest, line)?),
                    _ => {
                        let (head, tail) = split_colon(rest, line)?;
                        let k = number(Some(head.trim()), line, "degree")?;
                        let (c, d) = tail.split_once('|').ok_or_else(|| perr(line, "expected `cycles | duals`"))?;
                        case.pairing_reps.push(PairingReps {
                            k,
                            cycles: c.split_whitespace().map(String::from).collect(),
                            duals: d.split_whitespace().map(String::from).collect(),
                        });
                    }
                }
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    if !any {
        return Err(ScxError::EmptyInput);
    }
    doc.validate()?;
    Ok(doc)
}

fn parse_expect(rest: &str, line: usize) -> Result<Expect, ScxError> {
    let w: Vec<&str> = rest.split_whitespace().collect();
    let bad = || perr(line, format!("malformed expectation `{rest}`"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match w.as_slice() {
        ["ih", "c", k, "=", d] => Ok(Expect::IhCompact(num(k)?, num(d)?)),
        ["ih", "cl", k, "=", d] => Ok(Expect::IhClosed(num(k)?, num(d)?)),
        ["h", k, "=", d] => Ok(Expect::Homology(num(k)?, num(d)?)),
        ["small", "=", "yes"] => Ok(Expect::Small(true)),
        ["small", "=", "no"] => Ok(Expect::Small(false)),
        _ => Err(bad()),
    }
}

impl ScxDocument {
    fn line(&self, key: &str) -> usize {
        self.lines.get(key).copied().unwrap_or(0)
    }

    /// Builds every declared object once so that errors surface at parse time.
    fn validate(&self) -> Result<(), ScxError> {
        for cx in &self.complexes {
            let x = self.complex(&cx.name)?;
            if x.dim() != Some(cx.dim) {
                return Err(perr(
                    self.line(&format!("complex:{}", cx.name)),
                    format!("complex `{}` has dimension {:?}, declared {}", cx.name, x.dim(), cx.dim),
                ));
            }
            for f in &cx.filtrations {
                self.filtration(&cx.name, &f.name)?;
            }
            for p in &cx.pairings {
                self.pairing(&cx.name, &p.name)?;
            }
        }
        for m in &self.maps {
            self.map(&m.name)?;
        }
        for c in &self.cycles {
            self.cycle(&c.name)?;
        }
        for d in &self.duals {
            self.dual(&d.name)?;
        }
        for case in &self.cases {
            self.case_context(&case.name)?;
        }
        Ok(())
    }

    pub fn complex_decl(&self, name: &str) -> Result<&ComplexDecl, ScxError> {
        self.complexes.iter().find(|c| c.name == name).ok_or_else(|| ScxError::UnknownName {
            kind: "complex",
            name: name.into(),
        })
    }

    pub fn complex(&self, name: &str) -> Result<SimplicialComplex, ScxError> {
        let decl = self.complex_decl(name)?;
        let line = self.line(&format!("complex:{name}"));
        let (x, _warnings) = SimplicialComplex::from_maximal(&decl.tops).map_err(|e| perr(line, e.to_string()))?;
        Ok(x)
    }

    fn simplex(&self, x: &SimplicialComplex, names: &Names, line: usize) -> Result<Simplex, ScxError> {
        for n in names {
            if x.vertex_id(n).is_none() {
                return Err(ScxError::UnknownVertex {
                    line,
                    vertex: n.clone(),
                });
            }
        }
        let s = x.simplex_from_names(names).map_err(|e| perr(line, e.to_string()))?;
        if !x.contains(&s) {
            return Err(perr(line, format!("{} is not a simplex", names.join(","))));
        }
        Ok(s)
    }

    pub fn filtration(&self, complex: &str, name: &str) -> Result<Filtration, ScxError> {
        let x = self.complex(complex)?;
        if name == TRIVIAL_FILTRATION {
            return Ok(Filtration::trivial(&x));
        }
        let decl = self
            .complex_decl(complex)?
            .filtrations
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| ScxError::UnknownName {
                kind: "filtration",
                name: name.into(),
            })?;
        let mut sk: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
        for (j, gens) in &decl.skeleta {
            let line = self.line(&format!("skeleton:{complex}:{name}:{j}"));
            let mut v = Vec::new();
            for g in gens {
                let s = self.simplex(&x, g, line)?;
                if s.dim() > *j {
                    return Err(perr(line, format!("{} has dimension above {j}", g.join(","))));
                }
                v.push(s);
            }
            sk.insert(*j, v);
        }
        // nesting, checked here to report the offending line
        let mut below: Option<(usize, SimplicialComplex)> = None;
        for (j, gens) in &sk {
            let here = x.subcomplex(gens.iter().cloned());
            if let Some((bj, b)) = &below {
                if !b.is_subcomplex_of(&here) {
                    return Err(ScxError::NonNestedSkeleton {
                        line: self.line(&format!("skeleton:{complex}:{name}:{j}")),
                        j: *j,
                        below: *bj,
                    });
                }
            }
            below = Some((*j, here));
        }
        let line = self.line(&format!("filtration:{complex}:{name}"));
        Filtration::new(&x, &sk).map_err(|e: StratError| perr(line, e.to_string()))
    }

    pub fn pairing(&self, complex: &str, name: &str) -> Result<SheetPairing, ScxError> {
        let x = self.complex(complex)?;
        let decl = self
            .complex_decl(complex)?
            .pairings
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| ScxError::UnknownName {
                kind: "pairing",
                name: name.into(),
            })?;
        let mut p = SheetPairing::default_for(&x);
        for pd in &decl.pairs {
            let line = self.line(&format!("pair:{complex}:{name}:{}", pd.face.join(",")));
            let face = self.simplex(&x, &pd.face, line)?;
            if face.dim() + 1 != pd.d {
                return Err(perr(line, format!("sheets of dimension {} do not sit on a {}-face", pd.d, face.dim())));
            }
            let pairs = pd
                .pairs
                .iter()
                .map(|(a, b)| Ok((self.simplex(&x, a, line)?, self.simplex(&x, b, line)?)))
                .collect::<Result<Vec<_>, ScxError>>()?;
            p.annotate(&x, &face, &pairs).map_err(|e| perr(line, e.to_string()))?;
        }
        Ok(p)
    }

    pub fn pairing_or_default(&self, complex: &str, name: Option<&str>) -> Result<SheetPairing, ScxError> {
        match name {
            Some(n) => self.pairing(complex, n),
            None => Ok(SheetPairing::default_for(&self.complex(complex)?)),
        }
    }

    /// The named filtration, else `default` if declared, else the trivial one.
    pub fn filtration_or_default(&self, complex: &str, name: Option<&str>) -> Result<Filtration, ScxError> {
        match name {
            Some(n) => self.filtration(complex, n),
            None => {
                let has_default = self.complex_decl(complex)?.filtrations.iter().any(|f| f.name == DEFAULT_FILTRATION);
                self.filtration(complex, if has_default { DEFAULT_FILTRATION } else { TRIVIAL_FILTRATION })
            }
        }
    }

    pub fn map_decl(&self, name: &str) -> Result<&MapDecl, ScxError> {
        self.maps.iter().find(|m| m.name == name).ok_or_else(|| ScxError::UnknownName {
            kind: "map",
            name: name.into(),
        })
    }

    pub fn map(&self, name: &str) -> Result<ResolutionDatum, ScxError> {
        let decl = self.map_decl(name)?;
        let line = self.line(&format!("map:{name}"));
        let src = self.complex(&decl.from)?;
        let tgt = self.complex(&decl.to)?;
        for (a, b) in &decl.assignments {
            if src.vertex_id(a).is_none() {
                return Err(ScxError::UnknownVertex { line, vertex: a.clone() });
            }
            if tgt.vertex_id(b).is_none() {
                return Err(ScxError::UnknownVertex { line, vertex: b.clone() });
            }
        }
        let f = SimplicialMap::from_names(&src, &tgt, &decl.assignments).map_err(|e| perr(line, e.to_string()))?;
        let exceptional = if decl.exceptional.is_empty() {
            None
        } else {
            Some(
                decl.exceptional
                    .iter()
                    .map(|s| self.simplex(&src, s, line))
                    .collect::<Result<Vec<_>, _>>()?,
            )
        };
        for (ps, pt) in &decl.compatible {
            self.pairing(&decl.from, ps)?;
            self.pairing(&decl.to, pt)?;
        }
        ResolutionDatum::new(src, tgt, f, exceptional).map_err(|e| perr(line, e.to_string()))
    }

    fn chain_from(&self, decl: &CycleDecl, kind: &str) -> Result<(SimplicialComplex, Vec<Simplex>), ScxError> {
        let line = self.line(&format!("{kind}:{}", decl.name));
        let x = self.complex(&decl.complex)?;
        let simplices = decl
            .simplices
            .iter()
            .map(|s| self.simplex(&x, s, line))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((x, simplices))
    }

    pub fn cycle(&self, name: &str) -> Result<Chain, ScxError> {
        let decl = self.cycles.iter().find(|c| c.name == name).ok_or_else(|| ScxError::UnknownName {
            kind: "cycle",
            name: name.into(),
        })?;
        let (x, simplices) = self.chain_from(decl, "cycle")?;
        let line = self.line(&format!("cycle:{name}"));
        Chain::new(&x, decl.deg, simplices).map_err(|e| perr(line, e.to_string()))
    }

    /// A dual chain of degree `deg`, listed by the base `(n - deg)`-simplices whose blocks it uses.
    pub fn dual(&self, name: &str) -> Result<DualChain, ScxError> {
        let decl = self.duals.iter().find(|c| c.name == name).ok_or_else(|| ScxError::UnknownName {
            kind: "dual",
            name: name.into(),
        })?;
        let (x, simplices) = self.chain_from(decl, "dual")?;
        let line = self.line(&format!("dual:{name}"));
        let n = x.dim().unwrap_or(0);
        if decl.deg > n {
            return Err(perr(line, format!("degree {} above dimension {n}", decl.deg)));
        }
        let k = n - decl.deg;
        if let Some(s) = simplices.iter().find(|s| s.dim() != k) {
            return Err(perr(line, format!("{} is not a {k}-simplex", x.display(s))));
        }
        Ok(DualChain {
            k,
            simplices: simplices.into_iter().collect(),
        })
    }

    pub fn case(&self, name: &str) -> Result<&CaseDecl, ScxError> {
        self.cases.iter().find(|c| c.name == name).ok_or_else(|| ScxError::UnknownName {
            kind: "case",
            name: name.into(),
        })
    }

    /// Resolves everything a case refers to.
    pub fn case_context(&self, name: &str) -> Result<CaseContext, ScxError> {
        let case = self.case(name)?;
        let line = self.line(&format!("case:{name}"));
        let x = self.complex(&case.complex)?;
        let filtration = self.filtration_or_default(&case.complex, case.filtration.as_deref())?;
        let pairing = self.pairing_or_default(&case.complex, case.pairing.as_deref())?;
        let resolution = match &case.resolution {
            Some(m) => {
                let r = self.map(m)?;
                if self.map_decl(m)?.to != case.complex {
                    return Err(perr(line, format!("map `{m}` does not land in `{}`", case.complex)));
                }
                Some(r)
            }
            None => None,
        };
        let singular = case
            .singular
            .iter()
            .map(|v| x.vertex_id(v).ok_or_else(|| ScxError::UnknownVertex { line, vertex: v.clone() }))
            .collect::<Result<Vec<_>, _>>()?;
        let open = if case.open.is_empty() {
            None
        } else {
            let simplices = case
                .open
                .iter()
                .map(|s| self.simplex(&x, s, line))
                .collect::<Result<Vec<_>, _>>()?;
            Some(filtration.strata_containing(&simplices))
        };
        for reps in &case.pairing_reps {
            for c in &reps.cycles {
                self.cycle(c)?;
            }
            for d in &reps.duals {
                self.dual(d)?;
            }
        }
        Ok(CaseContext {
            name: name.to_string(),
            filtration,
            pairing,
            resolution,
            singular,
            open,
        })
    }

    pub fn emit(&self) -> String {
        let mut out = String::new();
        let join = |v: &[Names]| v.iter().map(|s| s.join(",")).collect::<Vec<_>>().join("; ");
        for cx in &self.complexes {
            let _ = writeln!(out, "complex {} dim {}", cx.name, cx.dim);
            for t in &cx.tops {
                let _ = writeln!(out, "top {}", t.join(","));
            }
            for f in &cx.filtrations {
                let _ = writeln!(out, "filtration {}", f.name);
                for (j, gens) in &f.skeleta {
                    let _ = writeln!(out, "skeleton {j} {}", join(gens));
                }
            }
            for p in &cx.pairings {
                let _ = writeln!(out, "pairing {}", p.name);
                for pd in &p.pairs {
                    let pairs: Vec<String> =
                        pd.pairs.iter().map(|(a, b)| format!("{}|{}", a.join(","), b.join(","))).collect();
                    let _ = writeln!(out, "pair {} face {} : {}", pd.d, pd.face.join(","), pairs.join(" "));
                }
            }
            out.push('\n');
        }
        for m in &self.maps {
            let asg: Vec<String> = m.assignments.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            let _ = writeln!(out, "map {} from {} to {} : {}", m.name, m.from, m.to, asg.join(" "));
            if !m.exceptional.is_empty() {
                let ex: Vec<String> = m.exceptional.iter().map(|s| s.join(",")).collect();
                let _ = writeln!(out, "exceptional {}", ex.join(" "));
            }
            for (a, b) in &m.compatible {
                let _ = writeln!(out, "compatible {a} -> {b}");
            }
        }
        for (kw, list) in [("cycle", &self.cycles), ("dual", &self.duals)] {
            for c in list {
                let _ = writeln!(out, "{kw} {} in {} deg {} : {}", c.name, c.complex, c.deg, join(&c.simplices));
            }
        }
        for case in &self.cases {
            let mut head = format!("case {} complex {}", case.name, case.complex);
            for (k, v) in [
                ("filtration", &case.filtration),
                ("pairing", &case.pairing),
                ("resolution", &case.resolution),
            ] {
                if let Some(v) = v {
                    let _ = write!(head, " {k} {v}");
                }
            }
            if !case.singular.is_empty() {
                let _ = write!(head, " singular {}", case.singular.join(","));
            }
            let _ = writeln!(out, "{head}");
            if !case.open.is_empty() {
                let _ = writeln!(out, "open {}", join(&case.open));
            }
            for e in &case.expects {
                let _ = match e {
                    Expect::IhCompact(k, d) => writeln!(out, "expect ih c {k} = {d}"),
                    Expect::IhClosed(k, d) => writeln!(out, "expect ih cl {k} = {d}"),
                    Expect::Homology(k, d) => writeln!(out, "expect h {k} = {d}"),
                    Expect::Small(b) => writeln!(out, "expect small = {}", if *b { "yes" } else { "no" }),
                };
            }
            for r in &case.pairing_reps {
                let _ = writeln!(out, "pairing-reps {} : {} | {}", r.k, r.cycles.join(" "), r.duals.join(" "));
            }
        }
        out
    }
}

/// A case with its references resolved.
#[derive(Clone, Debug)]
pub struct CaseContext {
    pub name: String,
    pub filtration: Filtration,
    pub pairing: SheetPairing,
    pub resolution: Option<ResolutionDatum>,
    pub singular: Vec<u32>,
    /// Strata of the declared open set.
    pub open: Option<BTreeSet<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    const NODE: &str = "\
# figure-eight
complex eight dim 1
top o,a1
top a1,a2
top a2,o
top o,b1
top b1,b2
top b2,o
skeleton 0 o
pairing node
pair 1 face o : o,a1|o,b1 o,a2|o,b2
case node complex eight pairing node
expect ih c 0 = 1
expect ih c 1 = 1
";

    #[test]
    fn parses_node() {
        let doc = parse_scx(NODE).unwrap();
        assert_eq!(doc.complexes.len(), 1);
        assert_eq!(doc.complexes[0].filtrations.len(), 1);
        assert_eq!(doc.complexes[0].pairings.len(), 1);
        assert_eq!(doc.cases[0].expects, vec![Expect::IhCompact(0, 1), Expect::IhCompact(1, 1)]);
        let f = doc.filtration("eight", DEFAULT_FILTRATION).unwrap();
        assert_eq!(f.strata().len(), 3);
    }

    #[test]
    fn round_trip() {
        let doc = parse_scx(NODE).unwrap();
        assert_eq!(parse_scx(&doc.emit()).unwrap(), doc);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(parse_scx("").unwrap_err(), ScxError::EmptyInput);
        assert_eq!(parse_scx("# only a comment\n").unwrap_err(), ScxError::EmptyInput);
        let edge_in_x0 = "complex c dim 1\ntop a,b\ntop b,c\nskeleton 0 a,b\n";
        assert!(matches!(parse_scx(edge_in_x0), Err(ScxError::Parse { line: 4, .. })));
        let unknown = "complex c dim 1\ntop a,b\nskeleton 0 z\n";
        assert_eq!(
            parse_scx(unknown).unwrap_err(),
            ScxError::UnknownVertex {
                line: 3,
                vertex: "z".into()
            }
        );
        let nested = "complex c dim 2\ntop a,b,c\ntop c,d,e\nskeleton 0 a\nskeleton 1 d,e\n";
        assert_eq!(
            parse_scx(nested).unwrap_err(),
            ScxError::NonNestedSkeleton {
                line: 5,
                j: 1,
                below: 0
            }
        );
        assert!(matches!(parse_scx("bogus line\n"), Err(ScxError::Parse { line: 1, .. })));
        assert!(matches!(parse_scx("top a,b\n"), Err(ScxError::Parse { line: 1, .. })));
    }

    #[test]
    fn order_independent_references() {
        let text = "case c complex k\nexpect h 0 = 1\ncomplex k dim 1\ntop a,b\n";
        let doc = parse_scx(text).unwrap();
        assert!(doc.case_context("c").is_ok());
        assert!(matches!(
            parse_scx("case c complex nope\n"),
            Err(ScxError::UnknownName { kind: "complex", .. })
        ));
    }
}
