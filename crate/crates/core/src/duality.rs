//! Links and cone neighborhoods of isolated singular points, the formulas for
//! isolated singularities, dual-block intersection numbers and duality checks.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::chains::{Chain, SheetPairing};
use crate::complex::{CellRef, ComplexError, DualBlockDecomposition, Simplex, SimplicialComplex, VertexId};
use crate::engine::{
    homology, ih_compact, ih_compact_masked, ih_compact_open, ih_relative_strata, EngineError,
};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::perversity::{default_pair, Allowability, PerversityPair};
use crate::resolution::ResolutionDatum;
use crate::strat::{Filtration, StratError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("link of {0} is not a manifold")]
    LinkSingular(String),
    #[error("{0} is not an isolated singular point")]
    NotIsolated(String),
    #[error("resolution does not match the singular set: {0}")]
    ResolutionMismatch(String),
    #[error("supports meet outside the top strata at {0}")]
    NotTransverse(String),
    #[error("{0}")]
    NotACycle(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Strat(#[from] StratError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Closed star of a vertex as the cone on its link.
#[derive(Clone, Debug)]
pub struct LocalCone {
    pub x0: VertexId,
    pub link: SimplicialComplex,
    pub star: SimplicialComplex,
}

pub fn local_cone(x: &SimplicialComplex, v: VertexId) -> Result<LocalCone, DualityError> {
    let vs = Simplex::vertex(v);
    Ok(LocalCone {
        x0: v,
        link: x.link(&vs)?,
        star: x.closed_star(&vs)?,
    })
}

/// Pure of dimension `d` with the mod 2 homology of `S^d`.
fn sphere_like(l: &SimplicialComplex, d: usize) -> bool {
    if d == 0 {
        return l.count(0) == 2 && l.dim() == Some(0);
    }
    if l.dim() != Some(d) || !l.is_pure() {
        return false;
    }
    if d == 1 && !(0..l.count(0)).all(|i| l.cofaces(0, i).len() == 2) {
        return false;
    }
    let h = homology(l).dims;
    h.iter().enumerate().all(|(k, &b)| b == usize::from(k == 0 || k == d))
}

/// Every vertex link of `l` is sphere-like (a closed manifold, exactly so when `dim l <= 2`).
pub fn is_closed_manifold(l: &SimplicialComplex) -> bool {
    let Some(d) = l.dim() else { return true };
    if d == 0 {
        return true;
    }
    l.is_pure()
        && l.simplices(0)
            .iter()
            .all(|v| sphere_like(&l.link(v).expect("vertex of l"), d - 1))
}

/// Inclusive ranges `(lo, hi)` per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalOracle {
    pub n: usize,
    pub compact: Vec<(usize, usize)>,
    pub closed: Vec<(usize, usize)>,
}

impl LocalOracle {
    pub fn admits(&self, compact: &[usize], closed: &[usize]) -> bool {
        let within = |r: &[(usize, usize)], d: &[usize]| {
            r.len() == d.len() && r.iter().zip(d).all(|((lo, hi), v)| lo <= v && v <= hi)
        };
        within(&self.compact, compact) && within(&self.closed, closed)
    }
}

/// Allowable homology of an open cone of dimension `n` on a manifold `link`, from
/// the homology of the link (default perversities).
pub fn local_ih_oracle(link: &SimplicialComplex, n: usize) -> Result<LocalOracle, DualityError> {
    if !is_closed_manifold(link) || link.dim().map_or(n != 1 && n != 0, |d| d + 1 != n) {
        return Err(DualityError::LinkSingular("cone point".into()));
    }
    let h = homology(link).dims;
    let hl = |k: usize| h.get(k).copied().unwrap_or(0);
    let m = n / 2;
    let mut compact = Vec::with_capacity(n + 1);
    let mut closed = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if n.is_multiple_of(2) {
            let c = if k < m { hl(k) } else { 0 };
            let cl = if k > m { hl(k - 1) } else { 0 };
            compact.push((c, c));
            closed.push((cl, cl));
        } else {
            compact.push(match k {
                _ if k < m => (hl(k), hl(k)),
                _ if k == m => (0, hl(m)),
                _ => (0, 0),
            });
            closed.push(match k {
                _ if k >= m + 2 => (hl(k - 1), hl(k - 1)),
                _ if k == m + 1 => (0, hl(m)),
                _ => (0, 0),
            });
        }
    }
    Ok(LocalOracle { n, compact, closed })
}

/// `cone(L) ∪ L × [0,1]` with the apex and the outer copy of `L` as singular strata.
#[derive(Clone, Debug)]
pub struct CollaredCone {
    pub filtration: Filtration,
    /// Strata of the outer copy of the link.
    pub rim: BTreeSet<usize>,
}

pub fn collared_cone(link: &SimplicialComplex, apex: &str) -> Result<CollaredCone, DualityError> {
    let outer = |v: &str| format!("{v}'");
    let names = link.names();
    for v in link.simplices(0) {
        let o = outer(link.vertex_name(v.vertices()[0]));
        if names.contains(&o) || o == apex {
            return Err(ComplexError::ApexCollision(o).into());
        }
    }
    if link.vertex_id(apex).is_some() {
        return Err(ComplexError::ApexCollision(apex.into()).into());
    }
    let mut tops: Vec<Vec<String>> = Vec::new();
    for s in link.maximal_simplices() {
        let vs: Vec<&str> = s.vertices().iter().map(|v| link.vertex_name(*v)).collect();
        let mut c: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        c.push(apex.to_string());
        tops.push(c);
        // staircase triangulation of s × [0,1], ordered by vertex id
        for i in 0..vs.len() {
            let mut p: Vec<String> = vs[..=i].iter().map(|v| v.to_string()).collect();
            p.extend(vs[i..].iter().map(|v| outer(v)));
            tops.push(p);
        }
    }
    let (x, _) = SimplicialComplex::from_maximal(&tops)?;
    let n = x.dim().unwrap_or(0);
    let apex_s = x.simplex_from_names(&[apex])?;
    let rim_tops: Vec<Simplex> = link
        .maximal_simplices()
        .iter()
        .map(|s| {
            let vs: Vec<String> = s.vertices().iter().map(|v| outer(link.vertex_name(*v))).collect();
            x.simplex_from_names(&vs)
        })
        .collect::<Result<_, _>>()?;
    let mut sk = BTreeMap::new();
    let rim_level = n - 1;
    let mut low = vec![apex_s.clone()];
    if rim_level == 0 {
        low.extend(rim_tops.iter().cloned());
        sk.insert(0, low);
    } else {
        sk.insert(0, low.clone());
        low.extend(rim_tops.iter().cloned());
        sk.insert(rim_level, low);
    }
    let filtration = Filtration::new(&x, &sk)?;
    let rim = filtration.strata_containing(&rim_tops);
    Ok(CollaredCone { filtration, rim })
}

/// Engine dimensions of `IH^c_*(N)` and `IH^cl_*(N)` for the open cone on `link`.
pub fn local_ih_engine(link: &SimplicialComplex, pp: &PerversityPair) -> Result<(Vec<usize>, Vec<usize>), DualityError> {
    let cc = collared_cone(link, "apex*")?;
    let f = &cc.filtration;
    let pairing = SheetPairing::default_for(f.complex());
    let allow = Allowability::new(f, &pairing, pp);
    let open: BTreeSet<usize> = (0..f.strata().len()).filter(|s| !cc.rim.contains(s)).collect();
    let compact = ih_compact_open(&allow, &open)?.dims;
    let closed = ih_relative_strata(&allow, &cc.rim)?.dims;
    Ok((compact, closed))
}

fn inclusion_rank(sub: &SimplicialComplex, whole: &SimplicialComplex, k: usize) -> usize {
    let hs = homology(sub);
    let hw = homology(whole);
    if k >= hs.dims.len() || k >= hw.dims.len() {
        return 0;
    }
    hs.complex.induced_rank(k, &hw.complex, |v| {
        BitVec::from_indices(
            whole.count(k),
            v.ones().map(|j| whole.index_of(&sub.simplices(k)[j]).expect("subcomplex")),
        )
    })
}

/// Dimensions of allowable homology predicted from ordinary homology when the only
/// singular points are the given vertices.
pub fn ih_isolated_formula(
    x: &SimplicialComplex,
    sing: &[VertexId],
    r: Option<&ResolutionDatum>,
) -> Result<Vec<usize>, DualityError> {
    let n = x.dim().unwrap_or(0);
    for &v in sing {
        let vs = Simplex::vertex(v);
        if !x.contains(&vs) {
            return Err(DualityError::NotIsolated(format!("#{v}")));
        }
        if !is_closed_manifold(&x.link(&vs)?) {
            return Err(DualityError::NotIsolated(x.vertex_name(v).into()));
        }
    }
    let hx = homology(x);
    let away = x.deletion(sing);
    let h_away = homology(&away);
    let h_away_dim = |k: usize| h_away.dims.get(k).copied().unwrap_or(0);
    let m = n / 2;
    let mut out = Vec::with_capacity(n + 1);
    if n.is_multiple_of(2) {
        for k in 0..=n {
            out.push(match k {
                _ if k > m => hx.dim(k),
                _ if k == m => inclusion_rank(&away, x, m),
                _ => h_away_dim(k),
            });
        }
        return Ok(out);
    }
    let r = r.ok_or_else(|| DualityError::ResolutionMismatch("odd dimension needs a resolution".into()))?;
    let y: BTreeSet<VertexId> = r.y.simplices(0).iter().map(|v| v.vertices()[0]).collect();
    let want: BTreeSet<VertexId> = sing.iter().copied().collect();
    if y != want {
        return Err(DualityError::ResolutionMismatch(
            "resolution is not an isomorphism exactly off the singular points".into(),
        ));
    }
    let xt = &r.source;
    let ht = homology(xt);
    // X̃ minus the preimage of the open stars
    let tilde_away = xt.subcomplex(
        xt.all_simplices()
            .filter(|(_, s)| sing.iter().all(|v| !r.map.image(s).contains_vertex(*v)))
            .map(|(_, s)| s.clone()),
    );
    for k in 0..=n {
        out.push(match k {
            _ if k > m + 1 => hx.dim(k),
            _ if k == m + 1 => {
                let p = r.pushforward_matrix(k);
                ht.complex.induced_rank(k, &hx.complex, |v| p.mul_vec(v))
            }
            _ if k == m => inclusion_rank(&tilde_away, xt, m),
            _ => h_away_dim(k),
        });
    }
    Ok(out)
}

/// A sum of dual blocks, named by the base `k`-simplices whose blocks it contains;
/// it has degree `n - k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualChain {
    pub k: usize,
    pub simplices: BTreeSet<Simplex>,
}

impl DualChain {
    pub fn degree(&self, n: usize) -> usize {
        n - self.k
    }

    /// The chain of top cells of the blocks in the subdivision.
    pub fn to_subdivision(&self, d: &DualBlockDecomposition) -> Chain {
        let x = &d.base;
        let y = &d.subdivision.complex;
        let n = x.dim().unwrap_or(0);
        let mut out = Chain::zero(n - self.k);
        for s in &self.simplices {
            let i = x.index_of(s).expect("base simplex");
            for c in d.block_top((self.k, i)) {
                out.simplices.insert(y.simplex(c).clone());
            }
        }
        out
    }
}

/// `|c1 ∩ c2| mod 2`, requiring common simplices to lie in open strata.
pub fn intersection_number(f: &Filtration, c1: &Chain, c2: &DualChain) -> Result<bool, DualityError> {
    let x = f.complex();
    let mut count = 0usize;
    for s in c1.simplices.intersection(&c2.simplices) {
        let i = x.index_of(s).expect("chain of x");
        if f.level((s.dim(), i)) != f.n() {
            return Err(DualityError::NotTransverse(x.display(s)));
        }
        count += 1;
    }
    Ok(count % 2 == 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub k: usize,
    /// `matrix[i][j] = I(cycles[i], duals[j])`.
    pub matrix: Vec<Vec<bool>>,
    pub rank: usize,
}

/// Checks the supplied representatives and computes their intersection matrix.
pub fn pairing_report(
    allow: &Allowability,
    k: usize,
    cycles: &[Chain],
    duals: &[DualChain],
) -> Result<PairingReport, DualityError> {
    let f = allow.filtration;
    let x = f.complex();
    let n = f.n();
    let ih = ih_compact(allow)?;
    for c in cycles {
        if c.k != k || !ih.complex.is_cycle(k, &c.to_bitvec(x)) {
            return Err(DualityError::NotACycle(format!("{} is not an allowable {k}-cycle", c.display(x))));
        }
    }
    if !duals.is_empty() {
        let d = x.dual_blocks()?;
        let sf = f.subdivide(&d.subdivision);
        let sp = allow.pairing.subdivide(&d.subdivision);
        let sallow = Allowability {
            filtration: &sf,
            pairing: &sp,
            pair: allow.pair,
            mode: allow.mode,
            include_sigma: allow.include_sigma,
            active: None,
        };
        let sih = ih_compact(&sallow)?;
        for dc in duals {
            let ch = dc.to_subdivision(&d);
            if dc.k != k || !sih.complex.is_cycle(n - k, &ch.to_bitvec(&d.subdivision.complex)) {
                return Err(DualityError::NotACycle(format!(
                    "dual of {} is not an allowable {}-cycle",
                    dc.simplices.iter().map(|s| x.display(s)).collect::<Vec<_>>().join("; "),
                    n - k
                )));
            }
        }
    }
    let mut matrix = Vec::with_capacity(cycles.len());
    for c in cycles {
        matrix.push(
            duals
                .iter()
                .map(|dc| intersection_number(f, c, dc))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let rows: Vec<BitVec> = matrix.iter().map(|r| BitVec::from_bools(r)).collect();
    let rank = Gf2Matrix::from_rows(duals.len(), rows).rank();
    Ok(PairingReport { k, matrix, rank })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub dims: Vec<usize>,
    /// `(k, dim IH_k, dim IH_{n-k})`; on a compact space closed and compact supports agree.
    pub degrees: Vec<(usize, usize, usize)>,
    pub pairings: Vec<PairingReport>,
}

impl DualityReport {
    pub fn dims_match(&self) -> bool {
        self.degrees.iter().all(|(_, a, b)| a == b)
    }

    pub fn pairings_full(&self) -> bool {
        self.pairings.iter().all(|p| p.rank == self.dims[p.k])
    }
}

pub fn duality_check(
    allow: &Allowability,
    reps: &[(usize, Vec<Chain>, Vec<DualChain>)],
) -> Result<DualityReport, DualityError> {
    let n = allow.filtration.n();
    let dims = ih_compact(allow)?.dims;
    let degrees = (0..=n).map(|k| (k, dims[k], dims[n - k])).collect();
    let pairings = reps
        .iter()
        .map(|(k, c, d)| pairing_report(allow, *k, c, d))
        .collect::<Result<_, _>>()?;
    Ok(DualityReport {
        dims,
        degrees,
        pairings,
    })
}

/// `Σ_k (-1)^k [IH_k(N') - IH_k(X') - IH_k(N) + IH_k(X)]` for the cover of `X` by a
/// neighborhood `N` of the singular vertices and `X' = X \ sing`, computed in the
/// barycentric subdivision.
pub fn mv_consistency(allow: &Allowability, sing: &[VertexId]) -> Result<i64, DualityError> {
    let f = allow.filtration;
    let x = f.complex();
    let sub = x.barycentric();
    let sf = f.subdivide(&sub);
    let sp = allow.pairing.subdivide(&sub);
    let sallow = Allowability {
        filtration: &sf,
        pairing: &sp,
        pair: allow.pair,
        mode: allow.mode,
        include_sigma: allow.include_sigma,
        active: None,
    };
    let y = &sub.complex;
    let n = f.n();
    let point = |c: (usize, usize)| c.0 == 0 && sing.contains(&x.simplex(c).vertices()[0]);
    let near = |c: (usize, usize)| sing.iter().any(|v| x.simplex(c).contains_vertex(*v));
    let mask = |keep: &dyn Fn(&[CellRef]) -> bool| -> Vec<BitVec> {
        (0..=n)
            .map(|k| {
                BitVec::from_indices(
                    y.count(k),
                    y.simplices(k)
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| keep(&sub.flag(s)))
                        .map(|(j, _)| j),
                )
            })
            .collect()
    };
    let all = mask(&|_| true);
    let x_prime = mask(&|fl| fl.iter().all(|c| !point(*c)));
    let nbhd = mask(&|fl| fl.iter().all(|c| near(*c)));
    let n_prime = mask(&|fl| fl.iter().all(|c| near(*c) && !point(*c)));
    let chi = |m: Vec<BitVec>| -> Result<i64, DualityError> {
        let r = ih_compact_masked(&sallow, m)?;
        Ok(r.dims.iter().enumerate().map(|(k, d)| if k % 2 == 0 { *d as i64 } else { -(*d as i64) }).sum())
    };
    Ok(chi(n_prime)? - chi(x_prime)? - chi(nbhd)? + chi(all)?)
}

/// Default-pair convenience for the local oracle comparison.
pub fn local_check(link: &SimplicialComplex) -> Result<(LocalOracle, Vec<usize>, Vec<usize>), DualityError> {
    let n = link.dim().map_or(1, |d| d + 1);
    let oracle = local_ih_oracle(link, n)?;
    let (c, cl) = local_ih_engine(link, &default_pair(n))?;
    Ok((oracle, c, cl))
}
