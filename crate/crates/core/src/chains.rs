//! Mod 2 chains, boundaries, sheet pairings and the pseudoboundary `Σ`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::complex::{CellRef, Simplex, SimplicialComplex, Subdivision, VertexId};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::strat::Filtration;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    /// The boundary of a 0-chain is zero by convention; callers decide whether to care.
    #[error("degree 0 chains have no boundary faces")]
    DegreeZero,
    #[error("{0} is not a simplex of the complex")]
    NotInComplex(String),
    #[error("expected a {expected}-simplex, got {got}")]
    WrongDegree { expected: usize, got: String },
    #[error("invalid pairing at {face}: {reason}")]
    InvalidPairing { face: String, reason: String },
    #[error("vertex map is not simplicial: {0}")]
    NotSimplicial(String),
}

/// A set of `k`-simplices; addition is symmetric difference.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub k: usize,
    pub simplices: BTreeSet<Simplex>,
}

impl Chain {
    pub fn zero(k: usize) -> Self {
        Chain {
            k,
            simplices: BTreeSet::new(),
        }
    }

    /// Checks membership and degree of every simplex; repeated simplices cancel.
    pub fn new<I: IntoIterator<Item = Simplex>>(
        x: &SimplicialComplex,
        k: usize,
        simplices: I,
    ) -> Result<Self, ChainError> {
        let mut c = Chain::zero(k);
        for s in simplices {
            if s.dim() != k {
                return Err(ChainError::WrongDegree {
                    expected: k,
                    got: x.display(&s),
                });
            }
            if !x.contains(&s) {
                return Err(ChainError::NotInComplex(x.display(&s)));
            }
            if !c.simplices.remove(&s) {
                c.simplices.insert(s);
            }
        }
        Ok(c)
    }

    pub fn from_bitvec(x: &SimplicialComplex, k: usize, v: &BitVec) -> Self {
        Chain {
            k,
            simplices: v.ones().map(|i| x.simplices(k)[i].clone()).collect(),
        }
    }

    pub fn to_bitvec(&self, x: &SimplicialComplex) -> BitVec {
        let mut v = BitVec::zeros(x.count(self.k));
        for s in &self.simplices {
            v.set(x.index_of(s).expect("chain lives in x"), true);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.k, other.k, "adding chains of different degrees");
        Chain {
            k: self.k,
            simplices: self
                .simplices
                .symmetric_difference(&other.simplices)
                .cloned()
                .collect(),
        }
    }

    /// The subcomplex generated by the chain.
    pub fn support(&self, x: &SimplicialComplex) -> SimplicialComplex {
        x.subcomplex(self.simplices.iter().cloned())
    }

    pub fn display(&self, x: &SimplicialComplex) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.simplices
            .iter()
            .map(|s| format!("{{{}}}", x.display(s)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// `D_k`: rows are `(k-1)`-simplices, columns `k`-simplices.
pub fn boundary_matrix(x: &SimplicialComplex, k: usize) -> Gf2Matrix {
    if k == 0 {
        return Gf2Matrix::zeros(0, x.count(0));
    }
    let mut m = Gf2Matrix::zeros(x.count(k - 1), x.count(k));
    for j in 0..x.count(k) {
        for f in x.facet_indices(k, j) {
            m.set(f, j, true);
        }
    }
    m
}

/// `(k-1)`-simplices with an odd number of incident simplices of `c`.
pub fn boundary(c: &Chain) -> Result<Chain, ChainError> {
    if c.k == 0 {
        return Err(ChainError::DegreeZero);
    }
    let mut out = BTreeSet::new();
    for s in &c.simplices {
        for f in s.facets() {
            if !out.remove(&f) {
                out.insert(f);
            }
        }
    }
    Ok(Chain {
        k: c.k - 1,
        simplices: out,
    })
}

/// Boundary computed from link Euler characteristics inside the support of `c`.
pub fn boundary_via_link(x: &SimplicialComplex, c: &Chain) -> Result<Chain, ChainError> {
    if c.k == 0 {
        return Err(ChainError::DegreeZero);
    }
    let support = c.support(x);
    let simplices = support
        .simplices(c.k - 1)
        .iter()
        .filter(|rho| {
            support
                .link(rho)
                .expect("face of the support")
                .euler_char()
                .rem_euclid(2)
                == 1
        })
        .cloned()
        .collect();
    Ok(Chain {
        k: c.k - 1,
        simplices,
    })
}

/// Largest dimension of an open simplex of the stratum that is a face of `c`; `-1` if none.
pub fn support_dim_in(x: &SimplicialComplex, c: &Chain, f: &Filtration, stratum: usize) -> isize {
    let mut best = -1isize;
    for s in &c.simplices {
        for face in s.all_faces() {
            let d = face.dim();
            if let Some(i) = x.index_of(&face) {
                if f.stratum_of((d, i)) == stratum {
                    best = best.max(d as isize);
                }
            }
        }
    }
    best
}

/// For every `(d-1)`-face, a partial matching of its incident `d`-simplices.
///
/// Faces without an annotation get the default: two incident sheets are paired,
/// any other number leaves all of them unmatched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheetPairing {
    /// `pairs[f][i]`: pairs of `(f+1)`-simplex indices at face `(f, i)`.
    pairs: Vec<Vec<Vec<(usize, usize)>>>,
    annotated: BTreeSet<CellRef>,
}

impl SheetPairing {
    pub fn default_for(x: &SimplicialComplex) -> Self {
        let n = x.dim().unwrap_or(0);
        let pairs = (0..n)
            .map(|f| {
                (0..x.count(f))
                    .map(|i| match x.cofaces(f, i) {
                        [a, b] => vec![(*a.min(b), *a.max(b))],
                        _ => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        SheetPairing {
            pairs,
            annotated: BTreeSet::new(),
        }
    }

    /// Replaces the matching at `face` with explicit pairs of incident simplices.
    pub fn annotate(
        &mut self,
        x: &SimplicialComplex,
        face: &Simplex,
        pairs: &[(Simplex, Simplex)],
    ) -> Result<(), ChainError> {
        let bad = |reason: &str| ChainError::InvalidPairing {
            face: x.display(face),
            reason: reason.to_string(),
        };
        let f = face.dim();
        let i = x.index_of(face).ok_or_else(|| ChainError::NotInComplex(x.display(face)))?;
        if f >= self.pairs.len() {
            return Err(bad("no simplices of the next dimension"));
        }
        let mut used = BTreeSet::new();
        let mut resolved = Vec::new();
        for (a, b) in pairs {
            let idx = |s: &Simplex| -> Result<usize, ChainError> {
                if s.dim() != f + 1 || !s.has_face(face) {
                    return Err(bad(&format!("{} is not an incident sheet", x.display(s))));
                }
                x.index_of(s).ok_or_else(|| ChainError::NotInComplex(x.display(s)))
            };
            let (ia, ib) = (idx(a)?, idx(b)?);
            if ia == ib {
                return Err(bad("a sheet cannot be paired with itself"));
            }
            if !used.insert(ia) || !used.insert(ib) {
                return Err(bad("a sheet appears in two pairs"));
            }
            resolved.push((ia.min(ib), ia.max(ib)));
        }
        resolved.sort_unstable();
        self.pairs[f][i] = resolved;
        self.annotated.insert((f, i));
        Ok(())
    }

    /// Pairs of incident `(f+1)`-simplex indices at face `(f, i)`.
    pub fn pairs_at(&self, f: usize, i: usize) -> &[(usize, usize)] {
        self.pairs.get(f).and_then(|l| l.get(i)).map_or(&[], Vec::as_slice)
    }

    pub fn partner(&self, f: usize, i: usize, sheet: usize) -> Option<usize> {
        self.pairs_at(f, i).iter().find_map(|&(a, b)| {
            if a == sheet {
                Some(b)
            } else if b == sheet {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Faces with an explicit annotation.
    pub fn annotated(&self) -> &BTreeSet<CellRef> {
        &self.annotated
    }

    /// Pairing on a barycentric subdivision.
    ///
    /// At a face `ρ'` carried by a simplex `ρ` of the same dimension, the sheets
    /// carried by cofaces of `ρ` inherit the matching of `ρ`. At a face lying in the
    /// interior of a larger simplex `ρ`, the sheets inside `ρ` are paired when there
    /// are exactly two. Every other sheet is unmatched, unless the face has only two
    /// sheets in total, in which case the default applies.
    pub fn subdivide(&self, sub: &Subdivision) -> SheetPairing {
        let x = &sub.complex;
        let n = x.dim().unwrap_or(0);
        let mut pairs: Vec<Vec<Vec<(usize, usize)>>> = Vec::with_capacity(n);
        for f in 0..n {
            let mut level = Vec::with_capacity(x.count(f));
            for i in 0..x.count(f) {
                let sheets = x.cofaces(f, i);
                if let [a, b] = sheets {
                    level.push(vec![(*a.min(b), *a.max(b))]);
                    continue;
                }
                let carrier = sub.carrier_of((f, i));
                let mut here = Vec::new();
                if carrier.0 == f {
                    let by_base: BTreeMap<usize, usize> = sheets
                        .iter()
                        .filter_map(|&t| {
                            let c = sub.carrier_of((f + 1, t));
                            (c.0 == f + 1).then_some((c.1, t))
                        })
                        .collect();
                    for &(a, b) in self.pairs_at(carrier.0, carrier.1) {
                        if let (Some(&ta), Some(&tb)) = (by_base.get(&a), by_base.get(&b)) {
                            here.push((ta.min(tb), ta.max(tb)));
                        }
                    }
                } else {
                    let inside: Vec<usize> = sheets
                        .iter()
                        .copied()
                        .filter(|&t| sub.carrier_of((f + 1, t)) == carrier)
                        .collect();
                    if let [a, b] = inside[..] {
                        here.push((a.min(b), a.max(b)));
                    }
                }
                here.sort_unstable();
                level.push(here);
            }
            pairs.push(level);
        }
        SheetPairing {
            pairs,
            annotated: BTreeSet::new(),
        }
    }
}

/// `(k-1)`-faces of `c` where the incident simplices of `c` are not a union of matched pairs.
pub fn sigma(x: &SimplicialComplex, c: &Chain, p: &SheetPairing) -> Result<Chain, ChainError> {
    if c.k == 0 {
        return Err(ChainError::DegreeZero);
    }
    let k = c.k;
    let members: BTreeSet<usize> = c
        .simplices
        .iter()
        .map(|s| x.index_of(s).expect("chain lives in x"))
        .collect();
    let mut faces: BTreeSet<usize> = BTreeSet::new();
    for &j in &members {
        faces.extend(x.facet_indices(k, j));
    }
    let simplices = faces
        .into_iter()
        .filter(|&r| {
            x.cofaces(k - 1, r)
                .iter()
                .filter(|t| members.contains(t))
                .any(|&t| match p.partner(k - 1, r, t) {
                    Some(u) => !members.contains(&u),
                    None => true,
                })
        })
        .map(|r| x.simplices(k - 1)[r].clone())
        .collect();
    Ok(Chain {
        k: k - 1,
        simplices,
    })
}

/// A vertex map under which every simplex goes to a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    map: Vec<VertexId>,
}

impl SimplicialMap {
    /// `map[v]` is the image of source vertex id `v`; entries for names that are
    /// not vertices of `source` are ignored.
    pub fn new(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        map: Vec<VertexId>,
    ) -> Result<Self, ChainError> {
        if map.len() != source.names().len() {
            return Err(ChainError::NotSimplicial(format!(
                "{} vertices mapped, source table has {}",
                map.len(),
                source.names().len()
            )));
        }
        let f = SimplicialMap { map };
        for s in source.maximal_simplices() {
            if !target.contains(&f.image(&s)) {
                return Err(ChainError::NotSimplicial(format!(
                    "{} goes to a non-simplex",
                    source.display(&s)
                )));
            }
        }
        Ok(f)
    }

    /// Builds the map from vertex names; every source vertex must be mapped.
    pub fn from_names(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        pairs: &[(String, String)],
    ) -> Result<Self, ChainError> {
        let mut map: Vec<Option<VertexId>> = vec![None; source.names().len()];
        for (a, b) in pairs {
            let va = source
                .vertex_id(a)
                .ok_or_else(|| ChainError::NotSimplicial(format!("unknown source vertex `{a}`")))?;
            let vb = target
                .vertex_id(b)
                .ok_or_else(|| ChainError::NotSimplicial(format!("unknown target vertex `{b}`")))?;
            map[va as usize] = Some(vb);
        }
        for v in source.simplices(0) {
            let id = v.vertices()[0];
            if map[id as usize].is_none() {
                return Err(ChainError::NotSimplicial(format!(
                    "vertex `{}` is not mapped",
                    source.vertex_name(id)
                )));
            }
        }
        Self::new(source, target, map.into_iter().map(|m| m.unwrap_or(0)).collect())
    }

    /// Image of a vertex id of the source vertex table.
    pub fn apply(&self, v: VertexId) -> VertexId {
        self.map[v as usize]
    }

    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new({
            let mut v: Vec<_> = s.vertices().iter().map(|&v| self.apply(v)).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .expect("nonempty")
    }

    /// Images of simplices that keep their dimension, counted mod 2.
    pub fn pushforward(&self, c: &Chain) -> Chain {
        let mut out = BTreeSet::new();
        for s in &c.simplices {
            let img = self.image(s);
            if img.dim() == c.k && !out.remove(&img) {
                out.insert(img);
            }
        }
        Chain {
            k: c.k,
            simplices: out,
        }
    }

    /// Subcomplex of the target covered by the images of the closed simplices of `c`.
    pub fn image_of_closure(&self, target: &SimplicialComplex, c: &Chain) -> SimplicialComplex {
        target.subcomplex(c.simplices.iter().map(|s| self.image(s)))
    }

    /// Local sufficient condition for `Σ f_*C ⊆ f(ΣC)`: at every face whose image keeps
    /// its dimension, each matched pair maps to a matched pair, to a single sheet, or
    /// collapses entirely. Returns the offending source faces.
    pub fn check_compatible(
        &self,
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        p_src: &SheetPairing,
        p_tgt: &SheetPairing,
    ) -> Vec<Simplex> {
        let mut bad = Vec::new();
        let n = source.dim().unwrap_or(0);
        for f in 0..n {
            for (i, rho) in source.simplices(f).iter().enumerate() {
                let img = self.image(rho);
                if img.dim() != f {
                    continue;
                }
                let ti = target.index_of(&img).expect("simplicial map");
                let sheet_img = |s: usize| {
                    let im = self.image(&source.simplices(f + 1)[s]);
                    (im.dim() == f + 1).then(|| target.index_of(&im).expect("simplicial map"))
                };
                let mut ok = true;
                for &(a, b) in p_src.pairs_at(f, i) {
                    ok &= match (sheet_img(a), sheet_img(b)) {
                        (None, None) => true,
                        (Some(u), Some(v)) => u == v || p_tgt.partner(f, ti, u) == Some(v),
                        _ => false,
                    };
                }
                // a sheet unmatched upstairs must not land on a matched sheet downstairs
                for &s in source.cofaces(f, i) {
                    if p_src.partner(f, i, s).is_none() {
                        if let Some(u) = sheet_img(s) {
                            ok &= p_tgt.partner(f, ti, u).is_none();
                        }
                    }
                }
                if !ok {
                    bad.push(rho.clone());
                }
            }
        }
        bad
    }
}
