//! The bundled corpus: fixture files plus a few generated complexes.

use std::fmt::Write as _;

use crate::scx::{parse_scx, ScxDocument, ScxError};

pub struct Entry {
    pub name: &'static str,
    pub text: String,
}

const FIXTURES: &[(&str, &str)] = &[
    ("node", include_str!("../fixtures/node.scx")),
    ("tacnode", include_str!("../fixtures/tacnode.scx")),
    ("segment", include_str!("../fixtures/segment.scx")),
    ("quadrant", include_str!("../fixtures/quadrant.scx")),
    ("circle", include_str!("../fixtures/circle.scx")),
    ("torus", include_str!("../fixtures/torus.scx")),
    ("rp2", include_str!("../fixtures/rp2.scx")),
    ("octahedron", include_str!("../fixtures/octahedron.scx")),
    ("suspension", include_str!("../fixtures/suspension.scx")),
];

pub fn entries() -> Vec<Entry> {
    let mut out: Vec<Entry> = FIXTURES
        .iter()
        .map(|(name, text)| Entry {
            name,
            text: text.to_string(),
        })
        .collect();
    out.push(Entry {
        name: "cone-hexagon",
        text: collared_cone("cone-hexagon", &[6]),
    });
    out.push(Entry {
        name: "cone-two-circles",
        text: collared_cone("cone-two-circles", &[3, 3]),
    });
    out.push(Entry {
        name: "suspended-torus",
        text: suspended_torus(),
    });
    out
}

pub fn entry(name: &str) -> Option<Entry> {
    entries().into_iter().find(|e| e.name == name)
}

pub fn document(name: &str) -> Result<ScxDocument, ScxError> {
    let e = entry(name).ok_or_else(|| ScxError::UnknownName {
        kind: "corpus entry",
        name: name.into(),
    })?;
    parse_scx(&e.text)
}

/// Cone on a disjoint union of polygons with a collar `L × [0,1]` attached, so the
/// rim is a closed stratum whose complement is the open cone.
pub fn collared_cone(name: &str, polygons: &[usize]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "complex {name} dim 2");
    let mut rim = Vec::new();
    let mut open = vec!["c".to_string()];
    for (p, &len) in polygons.iter().enumerate() {
        let u = |i: usize| format!("u{p}_{}", i % len);
        let w = |i: usize| format!("w{p}_{}", i % len);
        for i in 0..len {
            let _ = writeln!(s, "top c,{},{}", u(i), u(i + 1));
            let _ = writeln!(s, "top {},{},{}", u(i), u(i + 1), w(i + 1));
            let _ = writeln!(s, "top {},{},{}", u(i), w(i), w(i + 1));
            rim.push(format!("{},{}", w(i), w(i + 1)));
        }
        open.push(u(0));
    }
    let _ = writeln!(s, "skeleton 0 c");
    let _ = writeln!(s, "skeleton 1 c; {}", rim.join("; "));
    let _ = writeln!(s, "case {name} complex {name} singular c");
    let _ = writeln!(s, "open {}", open.join("; "));
    let components = polygons.len();
    for (k, d) in [components, 0, 0].iter().enumerate() {
        let _ = writeln!(s, "expect ih c {k} = {d}");
    }
    for (k, d) in [0, 0, components].iter().enumerate() {
        let _ = writeln!(s, "expect ih cl {k} = {d}");
    }
    s
}

/// Suspension of a 3 × 3 torus, and its small resolution `S¹ × S²`: two solid
/// tori glued along the torus, each core collapsing to a suspension point.
///
/// Each solid torus is three slabs `D × I`, where `D` is the cone on the
/// meridian triangle, triangulated as staircase prisms in the vertex order
/// core, 0, 1, 2. The torus is the boundary of that triangulation.
pub fn suspended_torus() -> String {
    let t = |i: usize, j: usize| format!("t{}{}", i % 3, j % 3);
    // D's vertices: None is the core, Some(j) the meridian vertex j
    let disk: [[Option<usize>; 3]; 3] = [[None, Some(0), Some(1)], [None, Some(0), Some(2)], [None, Some(1), Some(2)]];
    let meridian = [[0, 1], [0, 2], [1, 2]];
    let mut torus = Vec::new();
    for i in 0..3 {
        for [a, b] in meridian {
            torus.push([t(i, a), t(i + 1, a), t(i + 1, b)]);
            torus.push([t(i, a), t(i, b), t(i + 1, b)]);
        }
    }
    let mut s = String::from("# suspension of a torus; each suspension point has a torus link\n");
    s.push_str("complex suspended-torus dim 3\n");
    for tri in &torus {
        for pole in ["N", "S"] {
            let _ = writeln!(s, "top {pole},{}", tri.join(","));
        }
    }
    s.push_str("skeleton 0 N; S\n");
    // chains near a pole may only run along the meridian direction
    s.push_str("pairing meridians\n");
    for pole in ["N", "S"] {
        for i in 0..3 {
            for j in 0..3 {
                let _ = writeln!(
                    s,
                    "pair 2 face {pole},{} : {pole},{},{}|{pole},{},{}",
                    t(i, j),
                    t(i, j),
                    t(i, j + 1),
                    t(i, j),
                    t(i, j + 2)
                );
            }
        }
    }
    s.push_str("\n# S^1 x S^2\ncomplex solid-tori dim 3\n");
    for core in ["c", "d"] {
        for i in 0..3 {
            let at = |v: Option<usize>, level: usize| match v {
                None => format!("{core}{}", level % 3),
                Some(j) => t(level, j),
            };
            for [v0, v1, v2] in disk {
                let (l0, l1) = (i, i + 1);
                for tet in [
                    [at(v0, l0), at(v0, l1), at(v1, l1), at(v2, l1)],
                    [at(v0, l0), at(v1, l0), at(v1, l1), at(v2, l1)],
                    [at(v0, l0), at(v1, l0), at(v2, l0), at(v2, l1)],
                ] {
                    let _ = writeln!(s, "top {}", tet.join(","));
                }
            }
        }
    }
    let mut assign: Vec<String> = Vec::new();
    for i in 0..3 {
        assign.push(format!("c{i}->N"));
        assign.push(format!("d{i}->S"));
        for j in 0..3 {
            assign.push(format!("{}->{}", t(i, j), t(i, j)));
        }
    }
    let _ = writeln!(s, "map collapse from solid-tori to suspended-torus : {}", assign.join(" "));
    s.push_str("\ncase suspended-torus complex suspended-torus pairing meridians resolution collapse singular N,S\n");
    for k in 0..=3 {
        let _ = writeln!(s, "expect ih c {k} = 1");
    }
    s.push_str("expect small = yes\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses() {
        for e in entries() {
            let doc = parse_scx(&e.text).unwrap_or_else(|err| panic!("{}: {err}", e.name));
            assert!(!doc.cases.is_empty(), "{}", e.name);
        }
    }

    #[test]
    fn generated_shapes() {
        let doc = document("suspended-torus").unwrap();
        let x = doc.complex("suspended-torus").unwrap();
        assert_eq!((x.count(0), x.count(3)), (11, 36));
        assert_eq!(x.euler_char(), 2);
        let y = doc.complex("solid-tori").unwrap();
        assert_eq!(y.count(3), 54);
        assert_eq!(y.euler_char(), 0);
        let doc = document("cone-hexagon").unwrap();
        assert_eq!(doc.complex("cone-hexagon").unwrap().count(2), 18);
    }
}
