//! Finite abstract simplicial complexes.
//!
//! Vertices carry opaque string names; internally they are dense `u32` ids and a
//! simplex is the sorted list of its vertex ids. Complexes derived from one
//! another (links, stars, skeleta, cones) share the vertex table of their parent,
//! so simplices can be compared across them directly.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

pub type VertexId = u32;

/// Index of a simplex inside a complex: `(dimension, position)`.
pub type CellRef = (usize, usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("no simplices given")]
    EmptyInput,
    #[error("simplex {0} is not in the complex")]
    NotASimplex(String),
    #[error("apex `{0}` is already a vertex")]
    ApexCollision(String),
    #[error("complex is not pure: {0}")]
    NotPure(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("repeated vertex in simplex {0}")]
    RepeatedVertex(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexWarning {
    /// A listed maximal simplex is a face of another listed simplex.
    RedundantFace(Vec<String>),
    Duplicate(Vec<String>),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Sorts the vertices. Returns `None` if a vertex repeats or the list is empty.
    pub fn new(mut vertices: Vec<VertexId>) -> Option<Self> {
        if vertices.is_empty() {
            return None;
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Simplex(vertices))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `other ⊆ self`.
    pub fn has_face(&self, other: &Simplex) -> bool {
        other.0.iter().all(|v| self.contains_vertex(*v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        other.0.iter().all(|v| !self.contains_vertex(*v))
    }

    pub fn union(&self, other: &Simplex) -> Option<Simplex> {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        Some(Simplex(v))
    }

    /// Codimension-one faces, in the order obtained by dropping vertex 0, 1, ...
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() < 2 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, v)| *v)
                        .collect(),
                )
            })
            .collect()
    }

    /// Every nonempty face, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u32..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    names: Vec<String>,
    lookup: HashMap<String, VertexId>,
    cells: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    cofaces: Vec<Vec<Vec<usize>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.cells == other.cells
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Downward closure of the listed maximal simplices, given by vertex names.
    pub fn from_maximal<S: AsRef<str>>(
        maximal: &[Vec<S>],
    ) -> Result<(Self, Vec<ComplexWarning>), ComplexError> {
        if maximal.is_empty() {
            return Err(ComplexError::EmptyInput);
        }
        let mut names: Vec<String> = Vec::new();
        let mut lookup: HashMap<String, VertexId> = HashMap::new();
        let mut simplices = Vec::new();
        for s in maximal {
            let ids: Vec<VertexId> = s
                .iter()
                .map(|name| {
                    let name = name.as_ref();
                    *lookup.entry(name.to_string()).or_insert_with(|| {
                        names.push(name.to_string());
                        (names.len() - 1) as VertexId
                    })
                })
                .collect();
            let display = s.iter().map(|n| n.as_ref().to_string()).collect::<Vec<_>>();
            let simplex = Simplex::new(ids)
                .ok_or_else(|| ComplexError::RepeatedVertex(display.join(",")))?;
            simplices.push((simplex, display));
        }
        let mut warnings = Vec::new();
        let mut seen = BTreeSet::new();
        for (i, (s, display)) in simplices.iter().enumerate() {
            if !seen.insert(s.clone()) {
                warnings.push(ComplexWarning::Duplicate(display.clone()));
                continue;
            }
            let redundant = simplices
                .iter()
                .enumerate()
                .any(|(j, (t, _))| i != j && t != s && t.has_face(s));
            if redundant {
                warnings.push(ComplexWarning::RedundantFace(display.clone()));
            }
        }
        let cx = Self::from_simplices(names, simplices.into_iter().map(|(s, _)| s));
        Ok((cx, warnings))
    }

    /// Downward closure of `simplices` over an existing vertex table.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(names: Vec<String>, simplices: I) -> Self {
        let mut all: BTreeSet<Simplex> = BTreeSet::new();
        for s in simplices {
            if all.contains(&s) {
                continue;
            }
            for f in s.all_faces() {
                all.insert(f);
            }
        }
        let top = all.iter().map(Simplex::dim).max();
        let mut cells: Vec<Vec<Simplex>> = vec![Vec::new(); top.map_or(0, |d| d + 1)];
        for s in all {
            cells[s.dim()].push(s);
        }
        for level in &mut cells {
            level.sort();
        }
        Self::from_cells(names, cells)
    }

    fn from_cells(names: Vec<String>, cells: Vec<Vec<Simplex>>) -> Self {
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i as VertexId))
            .collect();
        let index: Vec<HashMap<Simplex, usize>> = cells
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        let mut cofaces: Vec<Vec<Vec<usize>>> = cells.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for d in 1..cells.len() {
            for (j, s) in cells[d].iter().enumerate() {
                for f in s.facets() {
                    let i = index[d - 1][&f];
                    cofaces[d - 1][i].push(j);
                }
            }
        }
        SimplicialComplex {
            names,
            lookup,
            cells,
            index,
            cofaces,
        }
    }

    /// Empty complex over the same vertex table.
    pub fn empty_like(&self) -> Self {
        Self::from_cells(self.names.clone(), Vec::new())
    }

    /// Subcomplex generated by `simplices`, sharing this complex's vertex table.
    pub fn subcomplex<I: IntoIterator<Item = Simplex>>(&self, simplices: I) -> Self {
        Self::from_simplices(self.names.clone(), simplices)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.lookup.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v as usize]
    }

    /// Parses names into a simplex of this complex's vertex table (not necessarily a member).
    pub fn simplex_from_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Simplex, ComplexError> {
        let ids = names
            .iter()
            .map(|n| {
                self.vertex_id(n.as_ref())
                    .ok_or_else(|| ComplexError::UnknownVertex(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let display = names.iter().map(|n| n.as_ref()).collect::<Vec<_>>().join(",");
        Simplex::new(ids).ok_or(ComplexError::RepeatedVertex(display))
    }

    pub fn simplex_names(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|v| self.names[*v as usize].clone()).collect()
    }

    pub fn display(&self, s: &Simplex) -> String {
        self.simplex_names(s).join(",")
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().rposition(|l| !l.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.dim().is_none()
    }

    pub fn count(&self, d: usize) -> usize {
        self.cells.get(d).map_or(0, Vec::len)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, cell: CellRef) -> &Simplex {
        &self.cells[cell.0][cell.1]
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = (CellRef, &Simplex)> {
        self.cells
            .iter()
            .enumerate()
            .flat_map(|(d, l)| l.iter().enumerate().map(move |(i, s)| ((d, i), s)))
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Indices of the `(d+1)`-simplices having simplex `(d, i)` as a facet.
    pub fn cofaces(&self, d: usize, i: usize) -> &[usize] {
        self.cofaces
            .get(d)
            .and_then(|l| l.get(i))
            .map_or(&[], Vec::as_slice)
    }

    /// Indices of the facets of simplex `(d, i)`.
    pub fn facet_indices(&self, d: usize, i: usize) -> Vec<usize> {
        self.cells[d][i]
            .facets()
            .iter()
            .map(|f| self.index[d - 1][f])
            .collect()
    }

    /// All faces of a member simplex (itself included) as cell references.
    pub fn face_cells(&self, s: &Simplex) -> Vec<CellRef> {
        s.all_faces()
            .into_iter()
            .map(|f| {
                let d = f.dim();
                (d, self.index[d][&f])
            })
            .collect()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.all_simplices().all(|(_, s)| other.contains(s))
    }

    /// `{τ : τ ∩ s = ∅, τ ∪ s ∈ self}`.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::NotASimplex(self.display_raw(s)));
        }
        let members: Vec<Simplex> = self
            .all_simplices()
            .filter(|(_, t)| t.has_face(s) && t.dim() > s.dim())
            .map(|(_, t)| {
                Simplex(
                    t.vertices()
                        .iter()
                        .copied()
                        .filter(|v| !s.contains_vertex(*v))
                        .collect(),
                )
            })
            .collect();
        Ok(self.subcomplex(members))
    }

    /// Closed star: every simplex containing `s` together with all its faces.
    pub fn closed_star(&self, s: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains(s) {
            return Err(ComplexError::NotASimplex(self.display_raw(s)));
        }
        Ok(self.subcomplex(
            self.all_simplices()
                .filter(|(_, t)| t.has_face(s))
                .map(|(_, t)| t.clone()),
        ))
    }

    /// Subcomplex of simplices with no vertex in `removed`.
    pub fn deletion(&self, removed: &[VertexId]) -> SimplicialComplex {
        self.subcomplex(
            self.all_simplices()
                .filter(|(_, t)| removed.iter().all(|v| !t.contains_vertex(*v)))
                .map(|(_, t)| t.clone()),
        )
    }

    pub fn euler_char(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// Every simplex is a face of some top-dimensional simplex.
    pub fn is_pure(&self) -> bool {
        let Some(n) = self.dim() else { return true };
        (0..n).all(|d| (0..self.count(d)).all(|i| !self.cofaces(d, i).is_empty()))
    }

    /// Simplices with no cofaces.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        self.all_simplices()
            .filter(|((d, i), _)| self.cofaces(*d, *i).is_empty())
            .map(|(_, s)| s.clone())
            .collect()
    }

    /// `x ∪ {s ∪ {apex}} ∪ {apex}`.
    pub fn cone(&self, apex: &str) -> Result<SimplicialComplex, ComplexError> {
        if self.lookup.contains_key(apex) {
            return Err(ComplexError::ApexCollision(apex.to_string()));
        }
        let mut names = self.names.clone();
        names.push(apex.to_string());
        let a = (names.len() - 1) as VertexId;
        let mut members: Vec<Simplex> = self.maximal_simplices();
        members.extend(self.maximal_simplices().into_iter().map(|s| {
            let mut v = s.0.clone();
            v.push(a);
            Simplex(v)
        }));
        members.push(Simplex::vertex(a));
        Ok(Self::from_simplices(names, members))
    }

    /// Two cones with distinct apexes glued along `self`.
    pub fn suspension(&self, north: &str, south: &str) -> Result<SimplicialComplex, ComplexError> {
        if north == south {
            return Err(ComplexError::ApexCollision(south.to_string()));
        }
        let upper = self.cone(north)?;
        let both = upper.cone(south)?;
        let n = upper.vertex_id(north).expect("apex present");
        let members: Vec<Simplex> = both
            .maximal_simplices()
            .into_iter()
            .flat_map(|s| {
                if s.contains_vertex(n) && s.dim() > 0 {
                    // s = t * north * south: split into t * north and t * south
                    let south_id = both.vertex_id(south).expect("apex present");
                    let without_s: Vec<_> = s.0.iter().copied().filter(|v| *v != south_id).collect();
                    let without_n: Vec<_> = s.0.iter().copied().filter(|v| *v != n).collect();
                    vec![Simplex(without_s), Simplex(without_n)]
                } else {
                    vec![s]
                }
            })
            .collect();
        Ok(Self::from_simplices(both.names.clone(), members))
    }

    /// First barycentric subdivision.
    pub fn barycentric(&self) -> Subdivision {
        let mut bary: Vec<CellRef> = Vec::new();
        let mut id_of: HashMap<CellRef, VertexId> = HashMap::new();
        let mut names = Vec::new();
        for (cell, s) in self.all_simplices() {
            id_of.insert(cell, bary.len() as VertexId);
            bary.push(cell);
            let mut vn = self.simplex_names(s);
            vn.sort();
            names.push(format!("[{}]", vn.join(",")));
        }
        let mut members = Vec::new();
        for top in self.maximal_simplices() {
            // every ordering of the vertices gives one maximal flag
            for perm in permutations(top.vertices()) {
                let mut flag = Vec::with_capacity(perm.len());
                for len in 1..=perm.len() {
                    let face = Simplex::new(perm[..len].to_vec()).expect("distinct vertices");
                    let d = face.dim();
                    flag.push(id_of[&(d, self.index[d][&face])]);
                }
                members.push(Simplex::new(flag).expect("distinct barycenters"));
            }
        }
        let complex = Self::from_simplices(names, members);
        let carrier = complex
            .cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|s| {
                        s.vertices()
                            .iter()
                            .map(|v| bary[*v as usize])
                            .max_by_key(|c| c.0)
                            .expect("nonempty simplex")
                    })
                    .collect()
            })
            .collect();
        Subdivision {
            complex,
            bary,
            carrier,
        }
    }

    /// Open dual cells of a pure complex inside its barycentric subdivision.
    pub fn dual_blocks(&self) -> Result<DualBlockDecomposition, ComplexError> {
        if !self.is_pure() {
            return Err(ComplexError::NotPure(format!(
                "dimension {:?} complex has a maximal simplex of lower dimension",
                self.dim()
            )));
        }
        let sub = self.barycentric();
        let mut block_of: Vec<Vec<Vec<CellRef>>> =
            self.cells.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for (cell, s) in sub.complex.all_simplices() {
            let lowest = s
                .vertices()
                .iter()
                .map(|v| sub.bary[*v as usize])
                .min_by_key(|c| c.0)
                .expect("nonempty simplex");
            block_of[lowest.0][lowest.1].push(cell);
        }
        Ok(DualBlockDecomposition {
            base: self.clone(),
            subdivision: sub,
            block_of,
        })
    }

    fn display_raw(&self, s: &Simplex) -> String {
        s.vertices()
            .iter()
            .map(|v| self.names.get(*v as usize).cloned().unwrap_or_else(|| format!("#{v}")))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// A barycentric subdivision with its bookkeeping back to the base complex.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// Base simplex whose barycenter is subdivision vertex `v`.
    pub bary: Vec<CellRef>,
    /// Smallest base simplex containing each subdivision simplex, indexed like `complex`.
    pub carrier: Vec<Vec<CellRef>>,
}

impl Subdivision {
    pub fn carrier_of(&self, cell: CellRef) -> CellRef {
        self.carrier[cell.0][cell.1]
    }

    /// Base simplices whose barycenters span subdivision simplex `s`, lowest dimension first.
    pub fn flag(&self, s: &Simplex) -> Vec<CellRef> {
        let mut f: Vec<CellRef> = s.vertices().iter().map(|v| self.bary[*v as usize]).collect();
        f.sort_by_key(|c| c.0);
        f
    }
}

#[derive(Clone, Debug)]
pub struct DualBlockDecomposition {
    pub base: SimplicialComplex,
    pub subdivision: Subdivision,
    /// Subdivision simplices whose lowest flag element is the given base simplex.
    pub block_of: Vec<Vec<Vec<CellRef>>>,
}

impl DualBlockDecomposition {
    pub fn block(&self, cell: CellRef) -> &[CellRef] {
        &self.block_of[cell.0][cell.1]
    }

    /// Top-dimensional subdivision simplices of the dual block of `cell`.
    pub fn block_top(&self, cell: CellRef) -> Vec<CellRef> {
        let n = self.base.dim().unwrap_or(0);
        self.block(cell)
            .iter()
            .copied()
            .filter(|c| c.0 == n - cell.0)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(tops: &[&str]) -> SimplicialComplex {
        let maximal: Vec<Vec<&str>> = tops.iter().map(|t| t.split(',').collect()).collect();
        SimplicialComplex::from_maximal(&maximal).unwrap().0
    }

    pub(crate) fn octahedron() -> SimplicialComplex {
        let mut tops = Vec::new();
        for x in ["x+", "x-"] {
            for y in ["y+", "y-"] {
                for z in ["z+", "z-"] {
                    tops.push(format!("{x},{y},{z}"));
                }
            }
        }
        let refs: Vec<&str> = tops.iter().map(String::as_str).collect();
        cx(&refs)
    }

    #[test]
    fn from_maximal_examples() {
        let t = cx(&["1,2,3"]);
        assert_eq!((t.count(0), t.count(1), t.count(2)), (3, 3, 1));
        let circle = cx(&["1,2", "2,3", "1,3"]);
        assert_eq!((circle.count(0), circle.count(1), circle.count(2)), (3, 3, 0));
        let (c, warnings) =
            SimplicialComplex::from_maximal(&[vec!["1", "2"], vec!["1", "2", "3"]]).unwrap();
        assert_eq!(c, t);
        assert_eq!(warnings, vec![ComplexWarning::RedundantFace(vec!["1".into(), "2".into()])]);
        let empty: Vec<Vec<&str>> = Vec::new();
        assert_eq!(
            SimplicialComplex::from_maximal(&empty).unwrap_err(),
            ComplexError::EmptyInput
        );
    }

    #[test]
    fn link_examples() {
        let circle = cx(&["1,2", "2,3", "1,3"]);
        let v = circle.simplex_from_names(&["1"]).unwrap();
        let l = circle.link(&v).unwrap();
        assert_eq!((l.count(0), l.count(1)), (2, 0));

        let t = cx(&["1,2,3"]);
        let e = t.simplex_from_names(&["1", "2"]).unwrap();
        assert_eq!(t.link(&e).unwrap().count(0), 1);

        let oct = octahedron();
        let v = oct.simplex_from_names(&["x+"]).unwrap();
        let l = oct.link(&v).unwrap();
        // a square: 4 vertices, 4 edges, each vertex of degree 2
        assert_eq!((l.count(0), l.count(1), l.dim()), (4, 4, Some(1)));
        assert!((0..4).all(|i| l.cofaces(0, i).len() == 2));

        let outside = Simplex::new(vec![0, 1, 2]).unwrap();
        assert!(matches!(circle.link(&outside), Err(ComplexError::NotASimplex(_))));
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(cx(&["p"]).euler_char(), 1);
        assert_eq!(cx(&["1,2", "2,3", "1,3"]).euler_char(), 0);
        // 6 - 12 + 8
        assert_eq!(octahedron().euler_char(), 2);
    }

    #[test]
    fn barycentric_examples() {
        let e = cx(&["a,b"]).barycentric();
        assert_eq!((e.complex.count(0), e.complex.count(1)), (3, 2));
        let t = cx(&["a,b,c"]).barycentric();
        assert_eq!(t.complex.count(2), 6);
        let hex = cx(&["1,2", "2,3", "1,3"]).barycentric();
        assert_eq!((hex.complex.count(0), hex.complex.count(1)), (6, 6));
        let oct = octahedron();
        assert_eq!(oct.barycentric().complex.euler_char(), oct.euler_char());
    }

    #[test]
    fn carrier_is_the_top_of_the_flag() {
        let t = cx(&["a,b,c"]);
        let sub = t.barycentric();
        for (cell, s) in sub.complex.all_simplices() {
            let carrier = sub.carrier_of(cell);
            let base = t.simplex(carrier);
            for c in sub.flag(s) {
                assert!(base.has_face(t.simplex(c)));
            }
        }
    }

    #[test]
    fn cone_examples() {
        let two = cx(&["p", "q"]);
        let c = two.cone("a").unwrap();
        assert_eq!((c.count(0), c.count(1)), (3, 2));
        let disk = cx(&["1,2", "2,3", "1,3"]).cone("a").unwrap();
        assert_eq!(disk.count(2), 3);
        assert!(matches!(two.cone("p"), Err(ComplexError::ApexCollision(_))));
    }

    #[test]
    fn suspension_of_circle_is_sphere() {
        let s = cx(&["1,2", "2,3", "1,3"]).suspension("n", "s").unwrap();
        assert_eq!((s.count(0), s.count(1), s.count(2)), (5, 9, 6));
        assert_eq!(s.euler_char(), 2);
    }

    #[test]
    fn dual_block_examples() {
        let oct = octahedron();
        let d = oct.dual_blocks().unwrap();
        // triangle -> its barycenter
        let tri = d.block((2, 0));
        assert_eq!(tri.len(), 1);
        assert_eq!(tri[0].0, 0);
        // interior edge with two cofaces -> a path of 2 subdivision edges (+ 1 vertex)
        let edge = d.block((1, 0));
        assert_eq!(edge.iter().filter(|c| c.0 == 1).count(), 2);
        assert_eq!(edge.iter().filter(|c| c.0 == 0).count(), 1);
        // blocks partition the subdivision
        let total: usize = d.block_of.iter().flatten().map(Vec::len).sum();
        let sub_total: usize = (0..=2).map(|k| d.subdivision.complex.count(k)).sum();
        assert_eq!(total, sub_total);
        let mut seen = BTreeSet::new();
        for c in d.block_of.iter().flatten().flatten() {
            assert!(seen.insert(*c));
        }
        // vertex blocks are pure of dimension 2
        assert_eq!(d.block_top((0, 0)).len(), 8);

        let not_pure = cx(&["a,b,c", "c,d"]);
        assert!(matches!(not_pure.dual_blocks(), Err(ComplexError::NotPure(_))));
    }

    #[test]
    fn downward_closure_holds() {
        let c = octahedron().cone("apex").unwrap();
        for (_, s) in c.all_simplices() {
            for f in s.all_faces() {
                assert!(c.contains(&f));
            }
        }
        assert_eq!(c.euler_char(), 1);
    }

    #[test]
    fn surface_vertex_links_are_cycles() {
        let oct = octahedron();
        for v in 0..oct.count(0) {
            let l = oct.link(&oct.simplices(0)[v]).unwrap();
            assert_eq!(l.euler_char(), 0);
            assert!((0..l.count(0)).all(|i| l.cofaces(0, i).len() == 2));
        }
    }
}
