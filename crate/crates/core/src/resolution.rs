//! Resolutions `π: X̃ → X`, smallness, strict transforms, and the comparison
//! of `H_*(X̃)` with allowable homology of `X`.

use thiserror::Error;

use crate::chains::{boundary_matrix, Chain, ChainError, SimplicialMap};
use crate::complex::{Simplex, SimplicialComplex};
use crate::engine::{homology, ih_compact, EngineError, IHResult};
use crate::gf2::{BitVec, Gf2Matrix};
use crate::perversity::Allowability;
use crate::strat::Filtration;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("invalid resolution: {0}")]
    InvalidResolution(String),
    #[error("fiber dimension is not constant over stratum {stratum}")]
    NonConstantFiberDim { stratum: usize },
    #[error("resolution is not small: {0}")]
    NotSmall(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// A simplicial map that is one-to-one on simplices away from an exceptional set.
///
/// Every simplex of `source` with no vertex in `e` maps, keeping its dimension, to a
/// simplex of `target` with no vertex in `y`, and this is a bijection. `e` is the full
/// preimage of `y`.
#[derive(Clone, Debug)]
pub struct ResolutionDatum {
    pub source: SimplicialComplex,
    pub target: SimplicialComplex,
    pub map: SimplicialMap,
    pub y: SimplicialComplex,
    pub e: SimplicialComplex,
}

impl ResolutionDatum {
    /// With `exceptional = None`, `y` is spanned by the target vertices that do not
    /// have exactly one preimage vertex.
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        map: SimplicialMap,
        exceptional: Option<Vec<Simplex>>,
    ) -> Result<Self, ResolutionError> {
        let y = match exceptional {
            Some(e) => {
                for s in &e {
                    if !source.contains(s) {
                        return Err(ResolutionError::InvalidResolution(format!(
                            "exceptional simplex {} is not in the source",
                            source.display(s)
                        )));
                    }
                }
                target.subcomplex(e.iter().map(|s| map.image(s)))
            }
            None => {
                let mut count = vec![0usize; target.names().len()];
                for v in source.simplices(0) {
                    count[map.apply(v.vertices()[0]) as usize] += 1;
                }
                target.subcomplex(
                    target
                        .simplices(0)
                        .iter()
                        .filter(|v| count[v.vertices()[0] as usize] != 1)
                        .cloned(),
                )
            }
        };
        let e = source.subcomplex(
            source
                .all_simplices()
                .filter(|(_, s)| y.contains(&map.image(s)))
                .map(|(_, s)| s.clone()),
        );
        let r = ResolutionDatum {
            source,
            target,
            map,
            y,
            e,
        };
        r.check_bijection()?;
        Ok(r)
    }

    fn check_bijection(&self) -> Result<(), ResolutionError> {
        let e_vertices: Vec<u32> = self.e.simplices(0).iter().map(|v| v.vertices()[0]).collect();
        let y_vertices: Vec<u32> = self.y.simplices(0).iter().map(|v| v.vertices()[0]).collect();
        let mut hit = std::collections::BTreeMap::new();
        for (_, s) in self.source.all_simplices() {
            if e_vertices.iter().any(|v| s.contains_vertex(*v)) {
                continue;
            }
            let img = self.map.image(s);
            if img.dim() != s.dim() {
                return Err(ResolutionError::InvalidResolution(format!(
                    "{} collapses away from the exceptional set",
                    self.source.display(s)
                )));
            }
            if let Some(prev) = hit.insert(img.clone(), s.clone()) {
                return Err(ResolutionError::InvalidResolution(format!(
                    "{} and {} both map to {}",
                    self.source.display(&prev),
                    self.source.display(s),
                    self.target.display(&img)
                )));
            }
        }
        for (_, t) in self.target.all_simplices() {
            if y_vertices.iter().any(|v| t.contains_vertex(*v)) {
                continue;
            }
            if !hit.contains_key(t) {
                return Err(ResolutionError::InvalidResolution(format!(
                    "{} has no preimage",
                    self.target.display(t)
                )));
            }
        }
        Ok(())
    }

    /// Largest `dim σ̃ - dim τ` over simplices `σ̃` mapping onto `τ`; `None` if `τ` has no preimage.
    pub fn fiber_dim(&self, tau: &Simplex) -> Option<usize> {
        self.source
            .all_simplices()
            .filter(|(_, s)| &self.map.image(s) == tau)
            .map(|(_, s)| s.dim() - tau.dim())
            .max()
    }

    /// `k`-simplices not in `e` whose image keeps its dimension and lies in `c`.
    pub fn strict_transform(&self, c: &Chain) -> Chain {
        Chain {
            k: c.k,
            simplices: self
                .source
                .simplices(c.k)
                .iter()
                .filter(|s| !self.e.contains(s) && c.simplices.contains(&self.map.image(s)))
                .cloned()
                .collect(),
        }
    }

    pub fn pushforward(&self, c: &Chain) -> Chain {
        self.map.pushforward(c)
    }

    /// Matrix of `π_*` on `k`-chains.
    pub fn pushforward_matrix(&self, k: usize) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.target.count(k), self.source.count(k));
        for (j, s) in self.source.simplices(k).iter().enumerate() {
            let img = self.map.image(s);
            if img.dim() == k {
                let i = self.target.index_of(&img).expect("simplicial map");
                m.set(i, j, true);
            }
        }
        m
    }

    /// Fiber dimensions over each stratum and the smallness verdict.
    pub fn check_small(&self, f: &Filtration) -> Result<SmallReport, ResolutionError> {
        let n = f.n();
        let x = f.complex();
        let mut strata = Vec::new();
        let mut small = true;
        for s in f.strata() {
            let mut fib: Option<usize> = None;
            for &c in &s.cells {
                let tau = x.simplex(c);
                let d = if self.y.contains(tau) { self.fiber_dim(tau).unwrap_or(0) } else { 0 };
                match fib {
                    None => fib = Some(d),
                    Some(prev) if prev != d => {
                        return Err(ResolutionError::NonConstantFiberDim { stratum: s.id })
                    }
                    _ => {}
                }
            }
            let fib = fib.unwrap_or(0);
            let ok = s.codim == 0 || 2 * fib < s.codim;
            small &= ok;
            strata.push(StratumFiber {
                stratum: s.id,
                dim: s.dim,
                codim: s.codim,
                fiber_dim: fib,
                ok,
            });
        }
        let top_fib = strata.iter().map(|s| s.fiber_dim).max().unwrap_or(0);
        let loci = (1..=top_fib.max(1))
            .map(|i| {
                let dim = strata
                    .iter()
                    .filter(|s| s.fiber_dim >= i)
                    .map(|s| s.dim as i64)
                    .max()
                    .unwrap_or(-1);
                let bound = n as i64 - 2 * i as i64;
                FiberLocus {
                    i,
                    dim,
                    bound,
                    ok: dim < bound,
                }
            })
            .collect();
        Ok(SmallReport { small, strata, loci })
    }

    /// Compares `H_*(X̃)` with `IH^c_*(X)` through `π_*` and the strict transform.
    pub fn verify_smallres(&self, allow: &Allowability) -> Result<SmallResReport, ResolutionError> {
        let small = self.check_small(allow.filtration)?;
        if !small.small {
            let bad: Vec<String> = small
                .strata
                .iter()
                .filter(|s| !s.ok)
                .map(|s| format!("fiber dimension {} over a codimension {} stratum", s.fiber_dim, s.codim))
                .collect();
            return Err(ResolutionError::NotSmall(bad.join(", ")));
        }
        let h = homology(&self.source);
        let ih = ih_compact(allow)?;
        let n = allow.filtration.n();
        let degrees = (0..=n).map(|k| self.verify_degree(allow, &h, &ih, k)).collect::<Result<_, _>>()?;
        Ok(SmallResReport { small, degrees })
    }

    /// Rows forcing to zero the `k`-simplices whose image may not meet the support
    /// of an allowable `k`-chain. Applied simplex by simplex, so images cancelling
    /// mod 2 or collapsing to lower dimension are still seen.
    fn support_rows(&self, allow: &Allowability, k: usize) -> Gf2Matrix {
        let xt = &self.source;
        let cols = xt.count(k);
        let mut m = Gf2Matrix::zeros(0, cols);
        for (j, s) in xt.simplices(k).iter().enumerate() {
            let img = self.map.image(s);
            if !allow.support_allowed(k, &img) {
                m.push_row(BitVec::from_indices(cols, [j]));
            }
        }
        m
    }

    /// A cycle of `X̃` lifting the cycle `c` of `X`: the simplex-wise strict
    /// transform when it is a cycle pushing forward to `c`, otherwise a solution of
    /// `π_* g = c`, `∂g = 0` supported on simplices mapping into the closure of `c`.
    fn lift_cycle(&self, allow: &Allowability, k: usize, c: &BitVec, p: &Gf2Matrix) -> Option<BitVec> {
        let x = &self.target;
        let xt = &self.source;
        let chain = Chain::from_bitvec(x, k, c);
        let st = self.strict_transform(&chain).to_bitvec(xt);
        let d = boundary_matrix(xt, k);
        if d.mul_vec(&st).is_zero() && &p.mul_vec(&st) == c {
            return Some(st);
        }
        let closure = chain.support(x);
        let candidates: Vec<usize> = (0..xt.count(k))
            .filter(|&j| closure.contains(&self.map.image(&xt.simplices(k)[j])))
            .collect();
        let support = self.support_rows(allow, k);
        let rows = p.nrows() + d.nrows() + support.nrows();
        let mut m = Gf2Matrix::zeros(rows, candidates.len());
        for (col, &j) in candidates.iter().enumerate() {
            let unit = BitVec::from_indices(xt.count(k), [j]);
            let image = p.mul_vec(&unit).ones().collect::<Vec<_>>();
            let bd = d.mul_vec(&unit).ones().collect::<Vec<_>>();
            let col_rows = support.mul_vec(&unit).ones().collect::<Vec<_>>();
            for i in image {
                m.set(i, col, true);
            }
            for i in bd {
                m.set(p.nrows() + i, col, true);
            }
            for i in col_rows {
                m.set(p.nrows() + d.nrows() + i, col, true);
            }
        }
        let mut rhs = BitVec::zeros(rows);
        for i in c.ones() {
            rhs.set(i, true);
        }
        let sol = m.solve(&rhs)?;
        Some(BitVec::from_indices(xt.count(k), sol.ones().map(|col| candidates[col])))
    }

    fn verify_degree(
        &self,
        allow: &Allowability,
        h: &IHResult,
        ih: &IHResult,
        k: usize,
    ) -> Result<DegreeCheck, ResolutionError> {
        let hc = &h.complex;
        let ic = &ih.complex;
        let p = self.pushforward_matrix(k);
        let a = allow.compile(k).map_err(EngineError::from)?;
        // generic representatives: c̃ + b with b a boundary, π_*(c̃ + b) allowable and
        // no simplex landing where the support may not go
        let cond = a.mul(&p).stack(&self.support_rows(allow, k));
        let bounds = hc.boundaries[k].basis();
        let mut cond_b = Gf2Matrix::zeros(cond.nrows(), bounds.len());
        for (j, b) in bounds.iter().enumerate() {
            for i in cond.mul_vec(b).ones() {
                cond_b.set(i, j, true);
            }
        }
        let mut generic = Vec::new();
        let mut not_generic = 0;
        for c in &hc.reps[k] {
            match cond_b.solve(&cond.mul_vec(c)) {
                Some(beta) => {
                    let mut g = c.clone();
                    for j in beta.ones() {
                        g.xor_assign(&bounds[j]);
                    }
                    generic.push(g);
                }
                None => not_generic += 1,
            }
        }
        let pushed: Vec<BitVec> = generic.iter().map(|g| p.mul_vec(g)).collect();
        let pushed_allowable = not_generic == 0 && pushed.iter().all(|v| ic.is_cycle(k, v));
        let pi_rank = if pushed_allowable {
            let coords: Vec<BitVec> = pushed.iter().map(|v| ic.class_coords(k, v).expect("cycle")).collect();
            Gf2Matrix::from_rows(ic.reps[k].len(), coords).rank()
        } else {
            0
        };

        let mut strict_cycles = true;
        let mut pi_s_identity = true;
        for (i, c) in ic.reps[k].iter().enumerate() {
            let Some(sv) = self.lift_cycle(allow, k, c, &p) else {
                strict_cycles = false;
                pi_s_identity = false;
                continue;
            };
            let back = p.mul_vec(&sv);
            pi_s_identity &= ic.class_coords(k, &back) == Some(BitVec::from_indices(ic.reps[k].len(), [i]));
        }
        let mut s_pi_identity = pushed_allowable;
        if pushed_allowable {
            for (g, v) in generic.iter().zip(&pushed) {
                s_pi_identity &= match self.lift_cycle(allow, k, v, &p) {
                    Some(s) => hc.is_boundary(k, &s.xor(g)),
                    None => false,
                };
            }
        }
        Ok(DegreeCheck {
            k,
            h_dim: h.dim(k),
            ih_dim: ih.dim(k),
            generic_found: generic.len(),
            not_generic,
            pushforward_allowable: pushed_allowable,
            pi_rank,
            strict_transform_cycles: strict_cycles,
            pi_s_identity,
            s_pi_identity,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumFiber {
    pub stratum: usize,
    pub dim: usize,
    pub codim: usize,
    pub fiber_dim: usize,
    /// `2 * fiber_dim < codim` (vacuous on open strata).
    pub ok: bool,
}

/// `dim {x : dim π⁻¹(x) ≥ i}` against `n - 2i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberLocus {
    pub i: usize,
    pub dim: i64,
    pub bound: i64,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallReport {
    pub small: bool,
    pub strata: Vec<StratumFiber>,
    pub loci: Vec<FiberLocus>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub k: usize,
    pub h_dim: usize,
    pub ih_dim: usize,
    /// Homology classes of `X̃` with a representative pushing forward to an allowable chain.
    pub generic_found: usize,
    /// Classes where no such representative exists.
    pub not_generic: usize,
    pub pushforward_allowable: bool,
    /// Rank of `π_k` on classes.
    pub pi_rank: usize,
    pub strict_transform_cycles: bool,
    pub pi_s_identity: bool,
    pub s_pi_identity: bool,
}

impl DegreeCheck {
    pub fn passed(&self) -> bool {
        self.h_dim == self.ih_dim
            && self.not_generic == 0
            && self.pushforward_allowable
            && self.pi_rank == self.h_dim
            && self.strict_transform_cycles
            && self.pi_s_identity
            && self.s_pi_identity
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallResReport {
    pub small: SmallReport,
    pub degrees: Vec<DegreeCheck>,
}

impl SmallResReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(DegreeCheck::passed)
    }
}
