//! Intersection homology with mod 2 coefficients for finite simplicial
//! pseudomanifolds, computed from pseudoboundary-allowability conditions.

pub mod chains;
pub mod complex;
pub mod duality;
pub mod engine;
pub mod gf2;
pub mod perversity;
pub mod resolution;
pub mod strat;

pub use chains::{Chain, SheetPairing, SimplicialMap};
pub use complex::{Simplex, SimplicialComplex, VertexId};
pub use duality::DualChain;
pub use engine::{IHResult, Supports};
pub use gf2::{BitVec, Gf2Matrix, Subspace};
pub use perversity::{default_pair, Allowability, LooseMode, LoosePerversity, PerversityPair};
pub use resolution::ResolutionDatum;
pub use strat::Filtration;
