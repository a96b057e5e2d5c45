//! Acceptance criteria, one line each. Dimensions are exact over GF(2), so every
//! comparison has zero tolerance.

use std::collections::{BTreeMap, BTreeSet};

use ihom_cli::commands::verify_case;
use ihom_cli::corpus;
use ihom_cli::scx::ScxDocument;
use ihom_core::chains::{boundary, boundary_via_link, sigma, Chain, SheetPairing};
use ihom_core::complex::{Simplex, SimplicialComplex};
use ihom_core::duality::{duality_check, ih_isolated_formula, local_ih_oracle, mv_consistency};
use ihom_core::engine::{homology, ih_closed, ih_compact, ih_compact_open};
use ihom_core::perversity::{default_pair, validate_pair, Allowability, LoosePerversity, PerversityPair};
use ihom_core::strat::Filtration;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Criterion = (&'static str, &'static str, fn() -> (bool, String));

const BRUTE_FORCE_LIMIT: usize = 14;
const RANDOM_CHAINS: usize = 1000;

fn doc(name: &str) -> ScxDocument {
    corpus::document(name).unwrap()
}

struct Case {
    filtration: Filtration,
    pairing: SheetPairing,
    singular: Vec<u32>,
    open: Option<BTreeSet<usize>>,
}

fn case(entry: &str, name: &str) -> Case {
    let ctx = doc(entry).case_context(name).unwrap();
    Case {
        filtration: ctx.filtration,
        pairing: ctx.pairing,
        singular: ctx.singular,
        open: ctx.open,
    }
}

fn ih_dims(c: &Case) -> Vec<usize> {
    let pp = default_pair(c.filtration.n());
    ih_compact(&Allowability::new(&c.filtration, &c.pairing, &pp)).unwrap().dims
}

/// Compact fixtures whose only singular points are isolated vertices.
const ISOLATED: &[(&str, &str)] = &[
    ("node", "node"),
    ("tacnode", "tacnode"),
    ("suspension", "sphere-poles"),
    ("suspended-torus", "suspended-torus"),
];

fn ac1() -> (bool, String) {
    let node = ih_dims(&case("node", "node"));
    let tac = ih_dims(&case("tacnode", "tacnode"));
    let same_complex = doc("node").complex("eight").unwrap() == doc("tacnode").complex("eight").unwrap();
    (
        node == vec![1, 1] && tac == vec![2, 2] && same_complex,
        format!("node {node:?}, tacnode {tac:?}"),
    )
}

fn ac2() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (entry, name) in [("node", "node"), ("tacnode", "tacnode"), ("suspended-torus", "suspended-torus")] {
        let ctx = doc(entry).case_context(name).unwrap();
        let pp = default_pair(ctx.filtration.n());
        let allow = Allowability::new(&ctx.filtration, &ctx.pairing, &pp);
        let report = ctx.resolution.as_ref().unwrap().verify_smallres(&allow).unwrap();
        let dims_equal = report.degrees.iter().all(|d| d.h_dim == d.ih_dim);
        ok &= report.passed() && dims_equal && report.small.small;
        detail.push(format!("{name}: {}", if report.passed() { "pass" } else { "fail" }));
    }
    (ok, detail.join(", "))
}

fn ac3() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (entry, name) in [
        ("circle", "circle"),
        ("torus", "torus"),
        ("rp2", "rp2"),
        ("octahedron", "octahedron"),
        ("suspension", "sphere"),
        ("torus", "torus-marked"),
    ] {
        let c = case(entry, name);
        let h = homology(c.filtration.complex()).dims;
        let ih = ih_dims(&c);
        ok &= h == ih;
        detail.push(format!("{name} {ih:?}"));
    }
    (ok, detail.join(", "))
}

fn ac4() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (entry, polygons) in [("cone-hexagon", vec![6]), ("cone-two-circles", vec![3, 3])] {
        let c = case(entry, entry);
        let pp = default_pair(2);
        let allow = Allowability::new(&c.filtration, &c.pairing, &pp);
        let open = c.open.as_ref().unwrap();
        let compact = ih_compact_open(&allow, open).unwrap().dims;
        let closed = ih_closed(&allow, open).unwrap().dims;
        let link = polygon_link(&polygons);
        let oracle = local_ih_oracle(&link, 2).unwrap();
        let exact = |r: &[(usize, usize)]| r.iter().map(|(lo, hi)| (lo == hi).then_some(*lo)).collect::<Option<Vec<_>>>();
        ok &= exact(&oracle.compact) == Some(compact.clone()) && exact(&oracle.closed) == Some(closed.clone());
        detail.push(format!("{entry}: c {compact:?} cl {closed:?}"));
    }
    let hex = case("cone-hexagon", "cone-hexagon");
    let pp = default_pair(2);
    let allow = Allowability::new(&hex.filtration, &hex.pairing, &pp);
    let open = hex.open.as_ref().unwrap();
    ok &= ih_compact_open(&allow, open).unwrap().dims == vec![1, 0, 0];
    ok &= ih_closed(&allow, open).unwrap().dims == vec![0, 0, 1];
    (ok, detail.join(", "))
}

fn polygon_link(polygons: &[usize]) -> SimplicialComplex {
    let mut tops = Vec::new();
    for (p, &len) in polygons.iter().enumerate() {
        for i in 0..len {
            tops.push(vec![format!("p{p}_{i}"), format!("p{p}_{}", (i + 1) % len)]);
        }
    }
    SimplicialComplex::from_maximal(&tops).unwrap().0
}

fn ac5() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (entry, name) in ISOLATED {
        let ctx = doc(entry).case_context(name).unwrap();
        let formula = ih_isolated_formula(ctx.filtration.complex(), &ctx.singular, ctx.resolution.as_ref()).unwrap();
        let pp = default_pair(ctx.filtration.n());
        let engine = ih_compact(&Allowability::new(&ctx.filtration, &ctx.pairing, &pp)).unwrap().dims;
        ok &= formula == engine;
        detail.push(format!("{name} {engine:?}"));
    }
    (ok, detail.join(", "))
}

fn ac6() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (entry, name) in ISOLATED {
        let d = doc(entry);
        let ctx = d.case_context(name).unwrap();
        let pp = default_pair(ctx.filtration.n());
        let allow = Allowability::new(&ctx.filtration, &ctx.pairing, &pp);
        let reps: Vec<_> = d
            .case(name)
            .unwrap()
            .pairing_reps
            .iter()
            .map(|r| {
                let cycles: Vec<Chain> = r.cycles.iter().map(|c| d.cycle(c).unwrap()).collect();
                let duals = r.duals.iter().map(|c| d.dual(c).unwrap()).collect();
                (r.k, cycles, duals)
            })
            .collect();
        let report = duality_check(&allow, &reps).unwrap();
        // compact spaces: closed supports coincide with compact ones
        let all: BTreeSet<usize> = (0..ctx.filtration.strata().len()).collect();
        let closed = ih_closed(&allow, &all).unwrap().dims;
        let n = report.dims.len() - 1;
        ok &= (0..=n).all(|k| report.dims[k] == closed[n - k]);
        ok &= report.dims_match() && report.pairings_full();
        let ranks: Vec<String> = report.pairings.iter().map(|p| format!("k={} rank {}", p.k, p.rank)).collect();
        detail.push(format!("{name} [{}]", ranks.join(" ")));
    }
    let rank = |entry: &str, name: &str, k: usize| -> usize {
        let d = doc(entry);
        let ctx = d.case_context(name).unwrap();
        let pp = default_pair(ctx.filtration.n());
        let allow = Allowability::new(&ctx.filtration, &ctx.pairing, &pp);
        let r = d.case(name).unwrap().pairing_reps.iter().find(|r| r.k == k).unwrap();
        let cycles: Vec<Chain> = r.cycles.iter().map(|c| d.cycle(c).unwrap()).collect();
        let duals: Vec<_> = r.duals.iter().map(|c| d.dual(c).unwrap()).collect();
        duality_check(&allow, &[(k, cycles, duals)]).unwrap().pairings[0].rank
    };
    ok &= rank("node", "node", 1) == 1 && rank("tacnode", "tacnode", 1) == 2;
    ok &= rank("suspension", "sphere-poles", 0) == 1 && rank("suspension", "sphere-poles", 2) == 1;
    (ok, detail.join(", "))
}

fn random_chain(rng: &mut StdRng, x: &SimplicialComplex, k: usize) -> Chain {
    Chain {
        k,
        simplices: x.simplices(k).iter().filter(|_| rng.gen_bool(0.4)).cloned().collect(),
    }
}

fn ac7() -> (bool, String) {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let pools: Vec<Case> = [
        ("node", "node"),
        ("tacnode", "tacnode"),
        ("quadrant", "quadrant"),
        ("torus", "torus"),
        ("suspension", "sphere-poles"),
        ("suspended-torus", "suspended-torus"),
    ]
    .iter()
    .map(|(e, n)| case(e, n))
    .collect();
    let mut checked = 0;
    let mut failures = 0;
    while checked < RANDOM_CHAINS {
        for c in &pools {
            let x = c.filtration.complex();
            let n = c.filtration.n();
            let k = rng.gen_range(1..=n);
            let a = random_chain(&mut rng, x, k);
            let b = random_chain(&mut rng, x, k);
            let da = boundary(&a).unwrap();
            let sa = sigma(x, &a, &c.pairing).unwrap();
            let sb = sigma(x, &b, &c.pairing).unwrap();
            let sab = sigma(x, &a.add(&b), &c.pairing).unwrap();
            let mut ok = da.simplices.is_subset(&sa.simplices);
            ok &= sab.simplices.iter().all(|s| sa.simplices.contains(s) || sb.simplices.contains(s));
            ok &= k < 2 || boundary(&da).unwrap().is_zero();
            ok &= boundary_via_link(x, &a).unwrap() == da;
            failures += usize::from(!ok);
            checked += 1;
        }
    }
    // Σ(f_* C) ⊆ f(ΣC) for maps whose pairings are compatible
    let mut mapped = 0;
    for (entry, name) in [("node", "node"), ("tacnode", "tacnode")] {
        let ctx = doc(entry).case_context(name).unwrap();
        let r = ctx.resolution.unwrap();
        let src_pairing = SheetPairing::default_for(&r.source);
        assert!(r.map.check_compatible(&r.source, &r.target, &src_pairing, &ctx.pairing).is_empty());
        for _ in 0..RANDOM_CHAINS / 2 {
            let c = random_chain(&mut rng, &r.source, 1);
            let image_of_sigma: BTreeSet<Simplex> =
                sigma(&r.source, &c, &src_pairing).unwrap().simplices.iter().map(|s| r.map.image(s)).collect();
            let pushed = r.map.pushforward(&c);
            let s = sigma(&r.target, &pushed, &ctx.pairing).unwrap();
            failures += usize::from(!s.simplices.is_subset(&image_of_sigma));
            mapped += 1;
        }
    }
    (failures == 0, format!("{checked} chains, {mapped} mapped chains, {failures} violations"))
}

/// Allowability straight from the support conditions, without the compiled matrices.
struct Oracle<'a> {
    f: &'a Filtration,
    pairing: &'a SheetPairing,
    pp: PerversityPair,
}

impl Oracle<'_> {
    fn x(&self) -> &SimplicialComplex {
        self.f.complex()
    }

    /// Largest dimension of a face of `set` lying in a stratum of codim `i`, per `i`.
    fn fits(&self, set: &BTreeSet<Simplex>, bound: impl Fn(usize) -> i64) -> bool {
        let n = self.f.n();
        for s in set {
            for face in s.all_faces() {
                let idx = self.x().index_of(&face).unwrap();
                let i = n - self.f.level((face.dim(), idx));
                if i > 0 && face.dim() as i64 > bound(i) {
                    return false;
                }
            }
        }
        true
    }

    fn bd(&self, c: &BTreeSet<Simplex>) -> BTreeSet<Simplex> {
        let mut count: BTreeMap<Simplex, usize> = BTreeMap::new();
        for s in c {
            if s.dim() == 0 {
                continue;
            }
            for f in s.facets() {
                *count.entry(f).or_default() += 1;
            }
        }
        count.into_iter().filter(|(_, c)| c % 2 == 1).map(|(s, _)| s).collect()
    }

    /// Faces where the sheets of `c` do not split into declared pairs.
    fn sig(&self, c: &BTreeSet<Simplex>, k: usize) -> BTreeSet<Simplex> {
        let x = self.x();
        let mut out = BTreeSet::new();
        if k == 0 {
            return out;
        }
        for s in c {
            for rho in s.facets() {
                let r = x.index_of(&rho).unwrap();
                let sheet = x.index_of(s).unwrap();
                let paired = match self.pairing.partner(k - 1, r, sheet) {
                    Some(u) => c.contains(&x.simplices(k)[u]),
                    None => false,
                };
                if !paired {
                    out.insert(rho);
                }
            }
        }
        out
    }

    fn allowable(&self, c: &BTreeSet<Simplex>, k: usize) -> bool {
        let (p, q) = (&self.pp.p, &self.pp.q);
        let k = k as i64;
        let d = self.bd(c);
        let s = self.sig(c, k as usize);
        let sd = if k >= 2 { self.sig(&d, k as usize - 1) } else { BTreeSet::new() };
        self.fits(c, |i| k - i as i64 + p.get(i))
            && self.fits(&d, |i| k - 1 - i as i64 + p.get(i))
            && self.fits(&s, |i| k - 1 - i as i64 + q.get(i))
            && self.fits(&sd, |i| k - 2 - i as i64 + q.get(i))
    }

    fn in_ic(&self, c: &BTreeSet<Simplex>, k: usize) -> bool {
        self.allowable(c, k) && (k == 0 || self.allowable(&self.bd(c), k - 1))
    }

    fn subsets(&self, k: usize) -> Vec<BTreeSet<Simplex>> {
        let simplices = self.x().simplices(k);
        (0u32..(1 << simplices.len()))
            .map(|mask| {
                simplices
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, s)| s.clone())
                    .collect()
            })
            .collect()
    }

    fn dims(&self) -> Vec<usize> {
        let n = self.f.n();
        let ic: Vec<Vec<BTreeSet<Simplex>>> =
            (0..=n).map(|k| self.subsets(k).into_iter().filter(|c| self.in_ic(c, k)).collect()).collect();
        (0..=n)
            .map(|k| {
                let cycles = ic[k].iter().filter(|c| k == 0 || self.bd(c).is_empty()).count();
                let boundaries: BTreeSet<BTreeSet<Simplex>> =
                    if k < n { ic[k + 1].iter().map(|c| self.bd(c)).collect() } else { BTreeSet::from([BTreeSet::new()]) };
                assert!(cycles.is_power_of_two() && boundaries.len().is_power_of_two());
                (cycles.trailing_zeros() - boundaries.len().trailing_zeros()) as usize
            })
            .collect()
    }
}

fn ac8() -> (bool, String) {
    let mut ok = true;
    let mut covered = Vec::new();
    for e in corpus::entries() {
        let d = doc(e.name);
        for cd in &d.cases {
            if cd.open.iter().len() > 0 {
                continue;
            }
            let c = case(e.name, &cd.name);
            let x = c.filtration.complex();
            let n = c.filtration.n();
            if (0..=n).any(|k| x.count(k) > BRUTE_FORCE_LIMIT) {
                continue;
            }
            let oracle = Oracle {
                f: &c.filtration,
                pairing: &c.pairing,
                pp: default_pair(n),
            };
            let brute = oracle.dims();
            let engine = ih_dims(&c);
            ok &= brute == engine;
            covered.push(format!("{} {brute:?}", cd.name));
        }
    }
    ok &= covered.len() >= 5;
    (ok, covered.join(", "))
}

fn valid_by_definition(p: &[i64], q: &[i64]) -> bool {
    let steps = |v: &[i64]| v[0] == 0 && v.windows(2).all(|w| w[0] <= w[1] && w[1] <= w[0] + 1);
    steps(p) && steps(q) && p.iter().zip(q).all(|(a, b)| a <= b && *b <= a + 1)
}

fn ac9() -> (bool, String) {
    let mut ok = validate_pair(&default_pair(8)).unwrap().is_empty();
    let base = default_pair(6);
    let (mut rejected, mut tried) = (0, 0);
    for which in 0..2 {
        for i in 0..base.p.len() {
            for delta in [-2i64, -1, 1, 2] {
                let (mut p, mut q) = (base.p.0.clone(), base.q.0.clone());
                if which == 0 {
                    p[i] += delta;
                } else {
                    q[i] += delta;
                }
                let expected = valid_by_definition(&p, &q);
                let pair = PerversityPair {
                    p: LoosePerversity(p),
                    q: LoosePerversity(q),
                };
                let accepted = validate_pair(&pair).unwrap().is_empty();
                ok &= accepted == expected;
                rejected += usize::from(!accepted);
                tried += 1;
            }
        }
    }
    // only even-codimension strata: the Σ conditions change nothing
    let mut spaces = 0;
    for (entry, name) in [("suspension", "sphere-poles"), ("torus", "torus-marked"), ("quadrant", "quadrant")] {
        let c = case(entry, name);
        let pp = default_pair(c.filtration.n());
        let with = Allowability::new(&c.filtration, &c.pairing, &pp);
        let mut without = with.clone();
        without.include_sigma = false;
        for k in 0..=c.filtration.n() {
            ok &= with.compile(k).unwrap().nullspace() == without.compile(k).unwrap().nullspace();
            spaces += 1;
        }
    }
    (ok, format!("{rejected} of {tried} mutations rejected, {spaces} nullspaces compared"))
}

fn ac10() -> (bool, String) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (entry, name) in ISOLATED {
        let c = case(entry, name);
        let pp = default_pair(c.filtration.n());
        let mv = mv_consistency(&Allowability::new(&c.filtration, &c.pairing, &pp), &c.singular).unwrap();
        ok &= mv == 0;
        detail.push(format!("{name} {mv}"));
    }
    (ok, detail.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("AC1", "node vs tacnode", ac1),
        ("AC2", "small resolutions", ac2),
        ("AC3", "nonsingular IH = H", ac3),
        ("AC4", "cone formulas", ac4),
        ("AC5", "isolated-singularity formulas", ac5),
        ("AC6", "duality", ac6),
        ("AC7", "pseudoboundary laws", ac7),
        ("AC8", "brute-force oracle", ac8),
        ("AC9", "perversity hygiene", ac9),
        ("AC10", "Mayer-Vietoris", ac10),
    ];
    let mut failed = Vec::new();
    for (id, title, run) in criteria {
        let (ok, detail) = run();
        println!("[{}] {id} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}

#[test]
fn corpus_expectations_hold() {
    for e in corpus::entries() {
        let d = doc(e.name);
        for c in &d.cases {
            for check in verify_case(&d, &c.name).unwrap() {
                assert!(check.ok, "{}/{}: {} expected {} got {}", e.name, c.name, check.label, check.expected, check.got);
            }
        }
    }
}
