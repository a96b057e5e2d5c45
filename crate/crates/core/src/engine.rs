//! Homology of complexes of allowable chains.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::chains::{boundary_matrix, Chain};
use crate::complex::SimplicialComplex;
use crate::gf2::{BitVec, Gf2Matrix, Subspace};
use crate::perversity::{Allowability, PerversityError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error(transparent)]
    Perversity(#[from] PerversityError),
    #[error("subcomplex is not a union of strata")]
    NotUnionOfStrata,
    #[error("union of strata is not closed")]
    NotClosed,
    #[error("complement of the open set is not closed")]
    ComplementNotClosed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Supports {
    /// Plain simplicial homology.
    Ordinary,
    Compact,
    /// Relative to a closed union of strata.
    Relative,
    /// Closed supports in an open union of strata.
    Closed,
    /// Compact supports in an open union of strata.
    CompactOpen,
}

impl Supports {
    pub fn label(&self) -> &'static str {
        match self {
            Supports::Ordinary => "H",
            Supports::Compact => "IH^c",
            Supports::Relative => "IH^rel",
            Supports::Closed => "IH^cl",
            Supports::CompactOpen => "IH^c",
        }
    }
}

/// Cycles and boundaries of a (possibly relative) allowable chain complex.
#[derive(Clone, Debug)]
pub struct AllowableComplex {
    pub x: SimplicialComplex,
    /// `IC_k`: allowable chains whose boundary is allowable.
    pub chains: Vec<Subspace>,
    pub cycles: Vec<Subspace>,
    pub boundaries: Vec<Subspace>,
    /// Reduced representatives, one per basis class.
    pub reps: Vec<Vec<BitVec>>,
}

impl AllowableComplex {
    pub fn top(&self) -> usize {
        self.cycles.len().saturating_sub(1)
    }

    pub fn dim(&self, k: usize) -> usize {
        self.cycles[k].dim() - self.boundaries[k].dim()
    }

    pub fn is_cycle(&self, k: usize, v: &BitVec) -> bool {
        self.cycles.get(k).is_some_and(|z| z.contains(v))
    }

    pub fn is_boundary(&self, k: usize, v: &BitVec) -> bool {
        self.boundaries.get(k).is_some_and(|b| b.contains(v))
    }

    /// Coordinates of the class of `v` in the representative basis; `None` if `v` is not a cycle.
    pub fn class_coords(&self, k: usize, v: &BitVec) -> Option<BitVec> {
        if !self.is_cycle(k, v) {
            return None;
        }
        let reps = &self.reps[k];
        let b = &self.boundaries[k];
        let cols = reps.len() + b.dim();
        // columns: reps, then boundary basis
        let mut m = Gf2Matrix::zeros(self.x.count(k), cols);
        for (j, r) in reps.iter().chain(b.basis()).enumerate() {
            for i in r.ones() {
                m.set(i, j, true);
            }
        }
        let sol = m.solve(v).expect("cycles are spanned by reps and boundaries");
        Some(BitVec::from_indices(reps.len(), sol.ones().filter(|&j| j < reps.len())))
    }

    /// Rank of the map on classes induced by a linear map of chains, where the
    /// image lands in `target`.
    pub fn induced_rank(&self, k: usize, target: &AllowableComplex, map: impl Fn(&BitVec) -> BitVec) -> usize {
        let images: Vec<BitVec> = self.reps[k].iter().map(map).collect();
        let with = Subspace::span(target.x.count(k), {
            let mut v = target.boundaries[k].basis().to_vec();
            v.extend(images);
            v
        });
        with.dim() - target.boundaries[k].dim()
    }
}

#[derive(Clone, Debug)]
pub struct IHResult {
    pub supports: Supports,
    pub dims: Vec<usize>,
    pub reps: Vec<Vec<Chain>>,
    pub complex: AllowableComplex,
}

impl IHResult {
    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// `label: k=0:d0 k=1:d1 ...`
    pub fn summary(&self) -> String {
        let parts: Vec<String> = self.dims.iter().enumerate().map(|(k, d)| format!("k={k}:{d}")).collect();
        format!("{}: {}", self.supports.label(), parts.join(" "))
    }
}

/// What to enforce when assembling the chain complex.
struct Setup<'a, 'b> {
    x: &'a SimplicialComplex,
    allow: Option<&'a Allowability<'b>>,
    /// Per degree, simplices lying in the relative subcomplex.
    relative: Option<Vec<BitVec>>,
    /// Per degree, simplices a chain may use.
    mask: Option<Vec<BitVec>>,
}

fn constraints(s: &Setup, k: usize) -> Result<Gf2Matrix, EngineError> {
    let cols = s.x.count(k);
    let mut m = match s.allow {
        Some(a) => a.compile(k)?,
        None => Gf2Matrix::zeros(0, cols),
    };
    if let Some(mask) = &s.mask {
        for j in 0..cols {
            if !mask[k].get(j) {
                m.push_row(BitVec::from_indices(cols, [j]));
            }
        }
    }
    Ok(m)
}

fn assemble(s: Setup, supports: Supports) -> Result<IHResult, EngineError> {
    let x = s.x;
    let n = x.dim().unwrap_or(0);
    let mut a: Vec<Gf2Matrix> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        a.push(constraints(&s, k)?);
    }
    let d: Vec<Gf2Matrix> = (0..=n + 1).map(|k| boundary_matrix(x, k)).collect();
    let mut chains = Vec::with_capacity(n + 1);
    let mut cycles = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut ic = a[k].clone();
        let mut z = a[k].clone();
        if k > 0 {
            let ad = a[k - 1].mul(&d[k]);
            ic = ic.stack(&ad);
            z = z.stack(&ad);
            match &s.relative {
                Some(rel) => {
                    for r in 0..x.count(k - 1) {
                        if !rel[k - 1].get(r) {
                            z.push_row(d[k].row(r).clone());
                        }
                    }
                }
                None => z = z.stack(&d[k]),
            }
        }
        chains.push(ic.nullspace());
        cycles.push(z.nullspace());
    }
    let mut boundaries = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut gens: Vec<BitVec> = if k < n {
            chains[k + 1].basis().iter().map(|v| d[k + 1].mul_vec(v)).collect()
        } else {
            Vec::new()
        };
        if let Some(rel) = &s.relative {
            gens.extend(rel[k].ones().map(|j| BitVec::from_indices(x.count(k), [j])));
        }
        boundaries.push(Subspace::span(x.count(k), gens));
    }
    let mut reps = Vec::with_capacity(n + 1);
    let mut dims = Vec::with_capacity(n + 1);
    for k in 0..=n {
        debug_assert!(cycles[k].contains_subspace(&boundaries[k]));
        let mut seen = boundaries[k].clone();
        let mut rk = Vec::new();
        for z in cycles[k].basis() {
            if !seen.contains(z) {
                rk.push(boundaries[k].reduce(z));
                seen = seen.sum(&Subspace::span(x.count(k), vec![z.clone()]));
            }
        }
        let by_rank = cycles[k].dim() - boundaries[k].dim();
        assert_eq!(rk.len(), by_rank, "representative count disagrees with rank arithmetic");
        dims.push(by_rank);
        reps.push(rk);
    }
    let chain_reps = reps
        .iter()
        .enumerate()
        .map(|(k, rk)| rk.iter().map(|v| Chain::from_bitvec(x, k, v)).collect())
        .collect();
    Ok(IHResult {
        supports,
        dims,
        reps: chain_reps,
        complex: AllowableComplex {
            x: x.clone(),
            chains,
            cycles,
            boundaries,
            reps,
        },
    })
}

/// Ordinary mod 2 simplicial homology.
pub fn homology(x: &SimplicialComplex) -> IHResult {
    assemble(
        Setup {
            x,
            allow: None,
            relative: None,
            mask: None,
        },
        Supports::Ordinary,
    )
    .expect("no constraints to compile")
}

/// Homology of the complex of allowable chains.
pub fn ih_compact(allow: &Allowability) -> Result<IHResult, EngineError> {
    assemble(
        Setup {
            x: allow.filtration.complex(),
            allow: Some(allow),
            relative: None,
            mask: None,
        },
        Supports::Compact,
    )
}

fn simplices_in_strata(allow: &Allowability, strata: &BTreeSet<usize>) -> Vec<BitVec> {
    let f = allow.filtration;
    let x = f.complex();
    (0..=f.n())
        .map(|k| {
            BitVec::from_indices(
                x.count(k),
                (0..x.count(k)).filter(|&j| strata.contains(&f.stratum_of((k, j)))),
            )
        })
        .collect()
}

/// Allowable homology of `(X, Y)` for a closed union of strata `Y`, enforcing
/// conditions only along strata outside `Y`.
pub fn ih_relative_strata(allow: &Allowability, y: &BTreeSet<usize>) -> Result<IHResult, EngineError> {
    let f = allow.filtration;
    if !f.is_closed_union(y) {
        return Err(EngineError::NotClosed);
    }
    let mut local = allow.clone();
    let outside: BTreeSet<usize> = (0..f.strata().len()).filter(|s| !y.contains(s)).collect();
    local.active = Some(match &allow.active {
        Some(a) => a.intersection(&outside).copied().collect(),
        None => outside,
    });
    assemble(
        Setup {
            x: f.complex(),
            allow: Some(&local),
            relative: Some(simplices_in_strata(allow, y)),
            mask: None,
        },
        Supports::Relative,
    )
}

/// Strata making up a subcomplex, if it is a union of strata.
pub fn strata_of_subcomplex(allow: &Allowability, y: &SimplicialComplex) -> Result<BTreeSet<usize>, EngineError> {
    let f = allow.filtration;
    let x = f.complex();
    let ids: BTreeSet<usize> = y
        .all_simplices()
        .map(|(_, s)| {
            x.index_of(s)
                .map(|i| f.stratum_of((s.dim(), i)))
                .ok_or(EngineError::NotUnionOfStrata)
        })
        .collect::<Result<_, _>>()?;
    for &id in &ids {
        if !f.stratum(id).cells.iter().all(|c| y.contains(x.simplex(*c))) {
            return Err(EngineError::NotUnionOfStrata);
        }
    }
    Ok(ids)
}

pub fn ih_relative(allow: &Allowability, y: &SimplicialComplex) -> Result<IHResult, EngineError> {
    let ids = strata_of_subcomplex(allow, y)?;
    ih_relative_strata(allow, &ids)
}

/// Closed-support allowable homology of an open union of strata `V`, computed as
/// the homology of `(X, X \ V)`. Representatives are closures of chains of `V`.
pub fn ih_closed(allow: &Allowability, v: &BTreeSet<usize>) -> Result<IHResult, EngineError> {
    let f = allow.filtration;
    let complement: BTreeSet<usize> = (0..f.strata().len()).filter(|s| !v.contains(s)).collect();
    if !f.is_closed_union(&complement) {
        return Err(EngineError::ComplementNotClosed);
    }
    let mut r = ih_relative_strata(allow, &complement)?;
    r.supports = Supports::Closed;
    Ok(r)
}

/// Compact-support allowable homology of an open union of strata `V`: chains
/// whose closed simplices lie in `V`.
pub fn ih_compact_open(allow: &Allowability, v: &BTreeSet<usize>) -> Result<IHResult, EngineError> {
    let f = allow.filtration;
    let x = f.complex();
    let complement: BTreeSet<usize> = (0..f.strata().len()).filter(|s| !v.contains(s)).collect();
    if !f.is_closed_union(&complement) {
        return Err(EngineError::ComplementNotClosed);
    }
    let outside: Vec<u32> = x
        .simplices(0)
        .iter()
        .enumerate()
        .filter(|(i, _)| complement.contains(&f.stratum_of((0, *i))))
        .map(|(_, s)| s.vertices()[0])
        .collect();
    let mask = (0..=f.n())
        .map(|k| {
            BitVec::from_indices(
                x.count(k),
                x.simplices(k)
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| outside.iter().all(|v| !s.contains_vertex(*v)))
                    .map(|(j, _)| j),
            )
        })
        .collect();
    ih_compact_masked(allow, mask)
}

/// Allowable homology of the chains supported on the simplices selected by
/// `mask` (one bit vector per degree), which must form a subcomplex.
pub fn ih_compact_masked(allow: &Allowability, mask: Vec<BitVec>) -> Result<IHResult, EngineError> {
    assemble(
        Setup {
            x: allow.filtration.complex(),
            allow: Some(allow),
            relative: None,
            mask: Some(mask),
        },
        Supports::CompactOpen,
    )
}
