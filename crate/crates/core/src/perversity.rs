//! Loose perversities and the linear constraints that define allowable chains.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::chains::{boundary, sigma, Chain, SheetPairing};
use crate::complex::{CellRef, Simplex};
use crate::gf2::{BitVec, Gf2Matrix, Subspace};
use crate::strat::Filtration;

/// Largest nullspace the literal mode will enumerate.
pub const LITERAL_ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PerversityError {
    #[error("perversities of different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("invalid perversity pair: {}", .0.join("; "))]
    InvalidPair(Vec<String>),
    #[error("degree {k} outside 0..={n}")]
    DegreeOutOfRange { k: usize, n: usize },
    #[error("perversity has {len} entries, dimension {n} needs {}", n + 1)]
    TooShort { len: usize, n: usize },
    #[error("literal allowable {k}-chains do not form a subspace")]
    LiteralNonLinear { k: usize },
    #[error("literal mode would enumerate a {dim}-dimensional space in degree {k}")]
    LiteralTooLarge { k: usize, dim: usize },
}

/// `p_0, p_1, ..., p_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoosePerversity(pub Vec<i64>);

impl LoosePerversity {
    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerversityPair {
    pub p: LoosePerversity,
    pub q: LoosePerversity,
}

/// `p_i = max(0, ⌊(i-1)/2⌋)`, `q_i = ⌊i/2⌋` for `i = 0..=n`.
pub fn default_pair(n: usize) -> PerversityPair {
    let p = (0..=n as i64).map(|i| ((i - 1).max(0)) / 2).collect();
    let q = (0..=n as i64).map(|i| i / 2).collect();
    PerversityPair {
        p: LoosePerversity(p),
        q: LoosePerversity(q),
    }
}

/// Returns the list of violated inequalities (empty when the pair is valid).
pub fn validate_pair(pp: &PerversityPair) -> Result<Vec<String>, PerversityError> {
    let (p, q) = (&pp.p.0, &pp.q.0);
    if p.len() != q.len() {
        return Err(PerversityError::LengthMismatch(p.len(), q.len()));
    }
    let mut bad = Vec::new();
    for (name, v) in [("p", p), ("q", q)] {
        if v.first().is_some_and(|&x| x != 0) {
            bad.push(format!("{name}_0 = {} (must be 0)", v[0]));
        }
        for i in 0..v.len().saturating_sub(1) {
            if !(v[i] <= v[i + 1] && v[i + 1] <= v[i] + 1) {
                bad.push(format!(
                    "{name}_{i} = {} and {name}_{} = {} violate {name}_i <= {name}_(i+1) <= {name}_i + 1",
                    v[i],
                    i + 1,
                    v[i + 1]
                ));
            }
        }
    }
    for i in 0..p.len() {
        if !(p[i] <= q[i] && q[i] <= p[i] + 1) {
            bad.push(format!("p_{i} = {} and q_{i} = {} violate p_i <= q_i <= p_i + 1", p[i], q[i]));
        }
    }
    Ok(bad)
}

/// Which reading of the pseudoboundary condition to enforce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LooseMode {
    /// Constrain `C`, `∂C`, `ΣC` and `Σ∂C`.
    #[default]
    Primary,
    /// Constrain `C`, `∂C`, `ΣC` and `∂ΣC`. Not linear in general; enumerated.
    Literal,
}

#[derive(Clone, Debug)]
pub struct Allowability<'a> {
    pub filtration: &'a Filtration,
    pub pairing: &'a SheetPairing,
    pub pair: &'a PerversityPair,
    pub mode: LooseMode,
    /// Enforce the pseudoboundary conditions (C) and (D).
    pub include_sigma: bool,
    /// Strata whose conditions are enforced; `None` means all of them.
    pub active: Option<BTreeSet<usize>>,
}

impl<'a> Allowability<'a> {
    pub fn new(filtration: &'a Filtration, pairing: &'a SheetPairing, pair: &'a PerversityPair) -> Self {
        Allowability {
            filtration,
            pairing,
            pair,
            mode: LooseMode::Primary,
            include_sigma: true,
            active: None,
        }
    }

    fn check(&self, k: usize) -> Result<(), PerversityError> {
        let n = self.filtration.n();
        if k > n {
            return Err(PerversityError::DegreeOutOfRange { k, n });
        }
        for len in [self.pair.p.len(), self.pair.q.len()] {
            if len < n + 1 {
                return Err(PerversityError::TooShort { len, n });
            }
        }
        let bad = validate_pair(self.pair)?;
        if !bad.is_empty() {
            return Err(PerversityError::InvalidPair(bad));
        }
        Ok(())
    }

    /// Whether `s` has a face in an enforced singular stratum of codim `i`
    /// whose dimension exceeds `bound(i)`.
    fn violates(&self, s: &Simplex, bound: impl Fn(usize) -> i64) -> bool {
        let f = self.filtration;
        let x = f.complex();
        let n = f.n();
        x.face_cells(s).into_iter().any(|c: CellRef| {
            let i = n - f.level(c);
            if i == 0 {
                return false;
            }
            if let Some(active) = &self.active {
                if !active.contains(&f.stratum_of(c)) {
                    return false;
                }
            }
            c.0 as i64 > bound(i)
        })
    }

    /// Whether a simplex (of any dimension) may lie in the support of an
    /// allowable `k`-chain under condition (A).
    pub fn support_allowed(&self, k: usize, s: &Simplex) -> bool {
        let p = &self.pair.p;
        !self.violates(s, |i| k as i64 - i as i64 + p.get(i))
    }

    /// A matrix over the `k`-simplex coordinates whose nullspace is the space of
    /// allowable `k`-chains (conditions on `C`, `∂C`, `ΣC`, `Σ∂C`).
    pub fn compile(&self, k: usize) -> Result<Gf2Matrix, PerversityError> {
        self.check(k)?;
        let lin = self.compile_linear(k);
        match self.mode {
            LooseMode::Primary => Ok(lin),
            LooseMode::Literal => self.compile_literal(k, lin),
        }
    }

    fn compile_linear(&self, k: usize) -> Gf2Matrix {
        let x = self.filtration.complex();
        let (p, q) = (&self.pair.p, &self.pair.q);
        let k_i = k as i64;
        let cols = x.count(k);
        let mut m = Gf2Matrix::zeros(0, cols);
        let unit = |j: usize| BitVec::from_indices(cols, [j]);
        // coefficient of a (k-1)-simplex in ∂C, as a form on k-chains
        let coboundary = |r: usize| BitVec::from_indices(cols, x.cofaces(k - 1, r).iter().copied());

        // (A)
        for (j, s) in x.simplices(k).iter().enumerate() {
            if self.violates(s, |i| k_i - i as i64 + p.get(i)) {
                m.push_row(unit(j));
            }
        }
        if k == 0 {
            return m;
        }
        // (B) and (C)
        for (r, rho) in x.simplices(k - 1).iter().enumerate() {
            if self.violates(rho, |i| k_i - 1 - i as i64 + p.get(i)) {
                m.push_row(coboundary(r));
            }
            if self.include_sigma && self.violates(rho, |i| k_i - 1 - i as i64 + q.get(i)) {
                for &(a, b) in self.pairing.pairs_at(k - 1, r) {
                    m.push_row(BitVec::from_indices(cols, [a, b]));
                }
                for &c in x.cofaces(k - 1, r) {
                    if self.pairing.partner(k - 1, r, c).is_none() {
                        m.push_row(unit(c));
                    }
                }
            }
        }
        // (D)
        if k >= 2 && self.include_sigma && self.mode == LooseMode::Primary {
            for (v, nu) in x.simplices(k - 2).iter().enumerate() {
                if self.violates(nu, |i| k_i - 2 - i as i64 + q.get(i)) {
                    for &(a, b) in self.pairing.pairs_at(k - 2, v) {
                        m.push_row(coboundary(a).xor(&coboundary(b)));
                    }
                    for &c in x.cofaces(k - 2, v) {
                        if self.pairing.partner(k - 2, v, c).is_none() {
                            m.push_row(coboundary(c));
                        }
                    }
                }
            }
        }
        m
    }

    /// Adds the `∂ΣC` condition by enumerating the space cut out by (A)-(C).
    fn compile_literal(&self, k: usize, lin: Gf2Matrix) -> Result<Gf2Matrix, PerversityError> {
        if k < 2 || !self.include_sigma {
            return Ok(lin);
        }
        let x = self.filtration.complex();
        let q = &self.pair.q;
        let base = lin.nullspace();
        let dim = base.dim();
        if dim > LITERAL_ENUMERATION_LIMIT {
            return Err(PerversityError::LiteralTooLarge { k, dim });
        }
        let k_i = k as i64;
        let mut passing: Vec<BitVec> = Vec::new();
        for mask in 0u64..(1u64 << dim) {
            let mut v = BitVec::zeros(x.count(k));
            for (b, gen) in base.basis().iter().enumerate() {
                if mask >> b & 1 == 1 {
                    v.xor_assign(gen);
                }
            }
            let c = Chain::from_bitvec(x, k, &v);
            let sc = sigma(x, &c, self.pairing).expect("k >= 2");
            let dsc = boundary(&sc).expect("k >= 2");
            let ok = dsc
                .simplices
                .iter()
                .all(|nu| !self.violates(nu, |i| k_i - 2 - i as i64 + q.get(i)));
            if ok {
                passing.push(v);
            }
        }
        let span = Subspace::span(x.count(k), passing.clone());
        if (span.dim() as u32) >= 64 || (1usize << span.dim()) != passing.len() {
            return Err(PerversityError::LiteralNonLinear { k });
        }
        Ok(span.annihilator())
    }

    pub fn is_allowable(&self, c: &Chain) -> Result<bool, PerversityError> {
        let m = self.compile(c.k)?;
        Ok(m.mul_vec(&c.to_bitvec(self.filtration.complex())).is_zero())
    }
}

/// Convenience wrapper over [`Allowability::compile`] with all strata enforced.
pub fn compile_constraints(
    f: &Filtration,
    pairing: &SheetPairing,
    pp: &PerversityPair,
    k: usize,
) -> Result<Gf2Matrix, PerversityError> {
    Allowability::new(f, pairing, pp).compile(k)
}

pub fn is_allowable(
    f: &Filtration,
    pairing: &SheetPairing,
    pp: &PerversityPair,
    c: &Chain,
) -> Result<bool, PerversityError> {
    Allowability::new(f, pairing, pp).is_allowable(c)
}
