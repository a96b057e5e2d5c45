//! Filtrations of a complex by subcomplexes and the strata they cut out.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::complex::{CellRef, Simplex, SimplicialComplex, Subdivision};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StratError {
    #[error("malformed filtration: {0}")]
    MalformedFiltration(String),
    #[error("filtrations live on different complexes")]
    MismatchedComplex,
}

/// One connected component of `X_j \ X_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub id: usize,
    pub dim: usize,
    pub codim: usize,
    /// Open simplices of the component, sorted.
    pub cells: Vec<CellRef>,
}

/// `X = X_n ⊇ X_{n-1} ⊇ ... ⊇ X_0`, stored as the lowest level of each simplex.
#[derive(Clone, Debug)]
pub struct Filtration {
    x: SimplicialComplex,
    n: usize,
    level: Vec<Vec<usize>>,
    strata: Vec<Stratum>,
    stratum_of: Vec<Vec<usize>>,
}

impl PartialEq for Filtration {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.level == other.level
    }
}

impl Filtration {
    /// Only `X_n = X`; every lower skeleton is empty.
    pub fn trivial(x: &SimplicialComplex) -> Self {
        let n = x.dim().unwrap_or(0);
        let level = (0..=n).map(|d| vec![n; x.count(d)]).collect();
        Self::from_levels(x.clone(), level).expect("trivial filtration is well formed")
    }

    /// Builds the filtration from generators of some skeleta. `skeleta[j]` generates
    /// `X_j`; a skeleton that is not listed equals the one below it (or is empty).
    pub fn new(
        x: &SimplicialComplex,
        skeleta: &BTreeMap<usize, Vec<Simplex>>,
    ) -> Result<Self, StratError> {
        let n = x.dim().unwrap_or(0);
        let mut current: Option<SimplicialComplex> = None;
        let mut level: Vec<Vec<usize>> = (0..=n).map(|d| vec![n; x.count(d)]).collect();
        for j in 0..n {
            if let Some(gens) = skeleta.get(&j) {
                for g in gens {
                    if !x.contains(g) {
                        return Err(StratError::MalformedFiltration(format!(
                            "X_{j} lists {} which is not a simplex",
                            x.display(g)
                        )));
                    }
                }
                let sk = x.subcomplex(gens.iter().cloned());
                if let Some(prev) = &current {
                    if !prev.is_subcomplex_of(&sk) {
                        return Err(StratError::MalformedFiltration(format!(
                            "X_{} is not contained in X_{j}",
                            j - 1
                        )));
                    }
                }
                current = Some(sk);
            }
            if let Some(sk) = &current {
                for (_, s) in sk.all_simplices() {
                    let d = s.dim();
                    let i = x.index_of(s).expect("checked above");
                    level[d][i] = level[d][i].min(j);
                }
            }
        }
        if let Some(&j) = skeleta.keys().find(|j| **j > n) {
            return Err(StratError::MalformedFiltration(format!(
                "skeleton X_{j} above the dimension {n}"
            )));
        }
        Self::from_levels(x.clone(), level)
    }

    /// Builds from explicit per-simplex levels, validating the filtration shape.
    pub fn from_levels(x: SimplicialComplex, level: Vec<Vec<usize>>) -> Result<Self, StratError> {
        let n = x.dim().unwrap_or(0);
        let mut has_top = vec![false; n + 1];
        for (d, lv) in level.iter().enumerate() {
            for (i, &l) in lv.iter().enumerate() {
                if l < d {
                    return Err(StratError::MalformedFiltration(format!(
                        "X_{l} contains the {d}-simplex {}",
                        x.display(&x.simplices(d)[i])
                    )));
                }
                if l > n {
                    return Err(StratError::MalformedFiltration(format!("level {l} above {n}")));
                }
                if d > 0 {
                    for f in x.facet_indices(d, i) {
                        if level[d - 1][f] > l {
                            return Err(StratError::MalformedFiltration(format!(
                                "X_{l} is not a subcomplex at {}",
                                x.display(&x.simplices(d)[i])
                            )));
                        }
                    }
                }
                if l == d {
                    has_top[l] = true;
                }
            }
        }
        for (j, &top) in has_top.iter().enumerate().take(n) {
            let grows = level.iter().flatten().any(|&l| l == j);
            if grows && !top {
                return Err(StratError::MalformedFiltration(format!(
                    "X_{j} differs from X_{} but has dimension below {j}",
                    j.saturating_sub(1)
                )));
            }
        }
        let (strata, stratum_of) = components(&x, n, &level);
        Ok(Filtration {
            x,
            n,
            level,
            strata,
            stratum_of,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.x
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Lowest `j` with the simplex in `X_j`.
    pub fn level(&self, cell: CellRef) -> usize {
        self.level[cell.0][cell.1]
    }

    pub fn levels(&self) -> &[Vec<usize>] {
        &self.level
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, id: usize) -> &Stratum {
        &self.strata[id]
    }

    pub fn stratum_of(&self, cell: CellRef) -> usize {
        self.stratum_of[cell.0][cell.1]
    }

    /// The subcomplex `X_j`.
    pub fn skeleton(&self, j: usize) -> SimplicialComplex {
        self.x.subcomplex(
            self.x
                .all_simplices()
                .filter(|(c, _)| self.level(*c) <= j)
                .map(|(_, s)| s.clone()),
        )
    }

    /// Cells of the closure of a stratum.
    pub fn closure(&self, id: usize) -> BTreeSet<CellRef> {
        let mut out = BTreeSet::new();
        for &c in &self.strata[id].cells {
            out.extend(self.x.face_cells(self.x.simplex(c)));
        }
        out
    }

    /// Whether the union of the given strata is a closed set.
    pub fn is_closed_union(&self, ids: &BTreeSet<usize>) -> bool {
        ids.iter()
            .all(|&id| self.closure(id).iter().all(|c| ids.contains(&self.stratum_of(*c))))
    }

    /// Strata having one of the given simplices among their open simplices.
    pub fn strata_containing(&self, simplices: &[Simplex]) -> BTreeSet<usize> {
        simplices
            .iter()
            .filter_map(|s| self.x.index_of(s).map(|i| self.stratum_of((s.dim(), i))))
            .collect()
    }

    /// Checks that a stratum meeting the closure of another lies inside it.
    pub fn check_frontier(&self) -> FrontierReport {
        let closures: Vec<BTreeSet<CellRef>> = (0..self.strata.len()).map(|i| self.closure(i)).collect();
        let mut violations = Vec::new();
        for s1 in &self.strata {
            for (s2, cl) in closures.iter().enumerate() {
                if s1.id == s2 {
                    continue;
                }
                let meets = s1.cells.iter().any(|c| cl.contains(c));
                let inside = s1.cells.iter().all(|c| cl.contains(c));
                if meets && !inside {
                    violations.push((s1.id, s2));
                }
            }
        }
        FrontierReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    /// A filtration whose strata each lie in one stratum of `self` and one of `other`.
    pub fn common_refinement(&self, other: &Filtration) -> Result<Filtration, StratError> {
        if self.x != other.x {
            return Err(StratError::MismatchedComplex);
        }
        let n = self.n;
        // dim(X_a ∩ X'_b) for every pair of levels
        let mut inter_dim: HashMap<(usize, usize), usize> = HashMap::new();
        for (c, _) in self.x.all_simplices() {
            let (a, b) = (self.level(c), other.level(c));
            for a2 in a..=n {
                for b2 in b..=n {
                    let e = inter_dim.entry((a2, b2)).or_insert(0);
                    *e = (*e).max(c.0);
                }
            }
        }
        let key = |c: CellRef| (self.level(c), other.level(c));
        let mut level: Vec<Vec<usize>> = (0..=n)
            .map(|d| (0..self.x.count(d)).map(|i| inter_dim[&key((d, i))]).collect())
            .collect();
        loop {
            let mut changed = false;
            // split components whose simplices disagree on the pair of input levels
            for d in 1..=n {
                for i in 0..self.x.count(d) {
                    let l = level[d][i];
                    for f in self.x.facet_indices(d, i) {
                        if level[d - 1][f] == l && key((d - 1, f)) != key((d, i)) {
                            lower(&self.x, &mut level, (d - 1, f), l - 1);
                            changed = true;
                        }
                    }
                }
            }
            // a skeleton that grows must grow in its own dimension
            for j in (1..n).rev() {
                let grows = level.iter().flatten().any(|&l| l == j);
                let has_top = level.get(j).is_some_and(|lv| lv.contains(&j));
                if grows && !has_top {
                    for lv in level.iter_mut() {
                        for l in lv.iter_mut() {
                            if *l == j {
                                *l = j - 1;
                            }
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Filtration::from_levels(self.x.clone(), level)
    }

    /// Every stratum of `self` lies inside a stratum of `other`.
    pub fn refines(&self, other: &Filtration) -> Result<bool, StratError> {
        if self.x != other.x {
            return Err(StratError::MismatchedComplex);
        }
        Ok(self.strata.iter().all(|s| {
            let first = other.stratum_of(s.cells[0]);
            s.cells.iter().all(|c| other.stratum_of(*c) == first)
        }))
    }

    /// The induced filtration `sd(X_j)` of a barycentric subdivision.
    pub fn subdivide(&self, sub: &Subdivision) -> Filtration {
        let level = (0..=self.n)
            .map(|d| {
                (0..sub.complex.count(d))
                    .map(|i| self.level(sub.carrier_of((d, i))))
                    .collect()
            })
            .collect();
        Filtration::from_levels(sub.complex.clone(), level).expect("subdivided filtration is well formed")
    }
}

fn lower(x: &SimplicialComplex, level: &mut [Vec<usize>], cell: CellRef, to: usize) {
    for (d, i) in x.face_cells(x.simplex(cell)) {
        level[d][i] = level[d][i].min(to);
    }
}

fn components(
    x: &SimplicialComplex,
    n: usize,
    level: &[Vec<usize>],
) -> (Vec<Stratum>, Vec<Vec<usize>>) {
    let offsets: Vec<usize> = (0..=n)
        .scan(0, |acc, d| {
            let o = *acc;
            *acc += x.count(d);
            Some(o)
        })
        .collect();
    let total: usize = (0..=n).map(|d| x.count(d)).sum();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for d in 1..=n.min(level.len().saturating_sub(1)) {
        for i in 0..x.count(d) {
            for f in x.facet_indices(d, i) {
                if level[d - 1][f] == level[d][i] {
                    let (a, b) = (find(&mut parent, offsets[d] + i), find(&mut parent, offsets[d - 1] + f));
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: BTreeMap<(usize, usize), Vec<CellRef>> = BTreeMap::new();
    let mut root_min: HashMap<usize, (usize, usize)> = HashMap::new();
    for d in 0..=n {
        for (i, &l) in level[d].iter().enumerate() {
            let r = find(&mut parent, offsets[d] + i);
            // order strata by level, then by their first cell
            let k = *root_min.entry(r).or_insert((l, offsets[d] + i));
            groups.entry(k).or_default().push((d, i));
        }
    }
    let mut stratum_of: Vec<Vec<usize>> = (0..=n).map(|d| vec![0; x.count(d)]).collect();
    let strata = groups
        .into_iter()
        .enumerate()
        .map(|(id, ((j, _), mut cells))| {
            cells.sort();
            for &(d, i) in &cells {
                stratum_of[d][i] = id;
            }
            Stratum {
                id,
                dim: j,
                codim: n - j,
                cells,
            }
        })
        .collect();
    (strata, stratum_of)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontierReport {
    pub ok: bool,
    /// Pairs `(s1, s2)` where `s1` meets but is not contained in the closure of `s2`.
    pub violations: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(tops: &[&str]) -> SimplicialComplex {
        let maximal: Vec<Vec<&str>> = tops.iter().map(|t| t.split(',').collect()).collect();
        SimplicialComplex::from_maximal(&maximal).unwrap().0
    }

    fn filt(x: &SimplicialComplex, sk: &[(usize, &[&str])]) -> Result<Filtration, StratError> {
        let mut map = BTreeMap::new();
        for (j, gens) in sk {
            let v = gens
                .iter()
                .map(|g| x.simplex_from_names(&g.split(',').collect::<Vec<_>>()).unwrap())
                .collect();
            map.insert(*j, v);
        }
        Filtration::new(x, &map)
    }

    fn eight() -> SimplicialComplex {
        cx(&["o,a1", "a1,a2", "a2,o", "o,b1", "b1,b2", "b2,o"])
    }

    #[test]
    fn figure_eight_strata() {
        let x = eight();
        let f = filt(&x, &[(0, &["o"])]).unwrap();
        let s = f.strata();
        assert_eq!(s.len(), 3);
        assert_eq!((s[0].dim, s[0].codim, s[0].cells.len()), (0, 1, 1));
        // each petal: 2 vertices and 3 edges
        assert_eq!(s[1].cells.len(), 5);
        assert_eq!(s[2].cells.len(), 5);
    }

    #[test]
    fn trivial_filtration_one_stratum_per_component() {
        let x = cx(&["a,b", "c,d", "d,e"]);
        let f = Filtration::trivial(&x);
        assert_eq!(f.strata().len(), 2);
        assert!(f.strata().iter().all(|s| s.codim == 0));
    }

    #[test]
    fn cone_on_circle_strata() {
        let x = cx(&["1,2", "2,3", "1,3"]).cone("c").unwrap();
        let f = filt(&x, &[(0, &["c"])]).unwrap();
        assert_eq!(f.strata().len(), 2);
        assert_eq!(f.strata()[0].codim, 2);
        assert!(f.check_frontier().ok);
    }

    #[test]
    fn malformed_filtrations_rejected() {
        let x = cx(&["a,b,c"]);
        // X_1 = X_0 plus an isolated point: grows without a 1-simplex
        assert!(matches!(
            filt(&x, &[(0, &["a"]), (1, &["a", "b"])]),
            Err(StratError::MalformedFiltration(_))
        ));
        // X_0 not contained in X_1
        assert!(matches!(
            filt(&x, &[(0, &["c"]), (1, &["a,b"])]),
            Err(StratError::MalformedFiltration(_))
        ));
        // an edge inside X_0
        assert!(matches!(filt(&x, &[(0, &["a,b"])]), Err(StratError::MalformedFiltration(_))));
    }

    #[test]
    fn frontier_examples() {
        let x = cx(&["a,b", "b,c"]);
        let p = filt(&x, &[(0, &["b"])]).unwrap();
        assert!(p.check_frontier().ok);
        let far = cx(&["p", "q,r"]);
        let f = filt(&far, &[(0, &["p"])]).unwrap();
        assert!(f.check_frontier().ok);
        // a hanging edge in X_1 whose endpoint touches the 2-stratum
        let x = cx(&["a,b,c", "c,d"]);
        let f = filt(&x, &[(1, &["c,d"])]).unwrap();
        let report = f.check_frontier();
        assert!(!report.ok);
        let hanging = f.stratum_of((1, x.index_of(&x.simplex_from_names(&["c", "d"]).unwrap()).unwrap()));
        let top = f.stratum_of((2, 0));
        assert_eq!(report.violations, vec![(hanging, top)]);
    }

    #[test]
    fn common_refinement_examples() {
        let x = cx(&["1,2", "2,3", "1,3"]);
        let f1 = filt(&x, &[(0, &["1"])]).unwrap();
        let f2 = filt(&x, &[(0, &["2"])]).unwrap();
        let triv = Filtration::trivial(&x);
        assert_eq!(f1.common_refinement(&f1).unwrap(), f1);
        assert_eq!(triv.common_refinement(&f1).unwrap(), f1);
        let r = f1.common_refinement(&f2).unwrap();
        assert_eq!(r, filt(&x, &[(0, &["1", "2"])]).unwrap());
        assert!(r.refines(&f1).unwrap() && r.refines(&f2).unwrap());
        assert!(f1.refines(&f1).unwrap());
        assert!(f1.refines(&triv).unwrap());
        assert!(!triv.refines(&f1).unwrap());
        let other = cx(&["1,2"]);
        assert_eq!(
            f1.refines(&Filtration::trivial(&other)).unwrap_err(),
            StratError::MismatchedComplex
        );
    }

    #[test]
    fn refinement_of_overlapping_curves() {
        // two curves in a disk sharing the edge b,c and then diverging
        let x = cx(&["a,b,e", "b,c,e", "c,d,e", "b,c,f"]);
        let f1 = filt(&x, &[(1, &["a,b", "b,c", "c,d"])]).unwrap();
        let f2 = filt(&x, &[(1, &["b,c", "c,f"])]).unwrap();
        let r = f1.common_refinement(&f2).unwrap();
        assert!(r.refines(&f1).unwrap());
        assert!(r.refines(&f2).unwrap());
        let r2 = f2.common_refinement(&f1).unwrap();
        assert!(r2.refines(&f1).unwrap() && r2.refines(&f2).unwrap());
    }

    #[test]
    fn subdivided_filtration_keeps_strata_count() {
        let x = eight();
        let f = filt(&x, &[(0, &["o"])]).unwrap();
        let sub = x.barycentric();
        let g = f.subdivide(&sub);
        assert_eq!(g.strata().len(), f.strata().len());
    }

    #[test]
    fn closed_unions() {
        let x = eight();
        let f = filt(&x, &[(0, &["o"])]).unwrap();
        assert!(f.is_closed_union(&BTreeSet::from([0])));
        assert!(!f.is_closed_union(&BTreeSet::from([1])));
        assert!(f.is_closed_union(&BTreeSet::from([0, 1])));
    }
}
