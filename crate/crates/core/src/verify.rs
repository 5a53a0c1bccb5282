//! Named verification suites, as run by `abck verify`.

use std::fmt;
use std::str::FromStr;

use crate::d6::{h3_embedding_check, inflate_pair, verify_catalog, PairM};
use crate::error::{Error, Result};
use crate::golden::Golden;
use crate::h3::{verify_coxeter_relations, verify_orbits};
use crate::lift::verify_lifts;
use crate::polyhedra::{abck_polyhedron, triacontahedron, PolyMesh};
use crate::report::Report;
use crate::substitution::{inflate_n, predicted_counts, verify_rules};
use crate::tiles::{verify_tiles, TileKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Orbits,
    Rules,
    Lifts,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["relations", "orbits", "rules", "lifts", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "relations" => Ok(Suite::Relations),
            "orbits" => Ok(Suite::Orbits),
            "rules" => Ok(Suite::Rules),
            "lifts" => Ok(Suite::Lifts),
            "all" => Ok(Suite::All),
            _ => Err(Error::Unknown { what: "suite", name: s.to_string() }),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::Relations, Suite::Orbits, Suite::Rules, Suite::Lifts, Suite::All]
            .iter()
            .position(|s| s == self)
            .unwrap_or(0);
        f.write_str(Suite::NAMES[i])
    }
}

/// The pairs every scale-dependent check runs over.
pub fn standard_pairs() -> Vec<PairM> {
    [(1, 1), (2, 0), (3, 1)].iter().map(|&(a, b)| PairM::new(a, b).expect("even sums")).collect()
}

fn verify_inflation_pairs() -> Report {
    let mut rep = Report::new("pair inflation");
    let mut p = PairM::new(2, 0).expect("even");
    let trace = [(1, 1), (3, 1), (4, 2)];
    for want in trace {
        let next = inflate_pair(p, 1);
        rep.expect_eq(format!("inflate {p}"), &(next.m1(), next.m2()), &want);
        rep.check(format!("c ratio at {p}"), next.c_golden() == &p.c_golden() * &Golden::tau(), "");
        p = next;
    }
    for p in standard_pairs() {
        for (m, n) in [(1, 2), (-1, 3), (2, -2)] {
            let lhs = inflate_pair(inflate_pair(p, m), n);
            rep.check(format!("semigroup {p} {m}+{n}"), lhs == inflate_pair(p, m + n), "");
        }
    }
    rep
}

fn verify_surface(rep: &mut Report, name: &str, m: &PolyMesh, counts: (usize, usize, usize)) {
    rep.expect_eq(format!("{name} (V, E, F)"), &m.counts(), &counts);
    rep.expect_eq(format!("{name} Euler characteristic"), &m.euler_characteristic(), &2);
    rep.check(format!("{name} closed and oriented"), m.is_closed_oriented(), "");
}

pub fn verify_polyhedra() -> Report {
    let mut rep = Report::new("tile-union polyhedra");
    let tri = triacontahedron();
    verify_surface(&mut rep, "triacontahedron", &tri, (32, 60, 30));
    rep.check("triacontahedron faces are rhombi", tri.faces.iter().all(|f| f.len() == 4), "");
    match abck_polyhedron(TileKind::K) {
        Ok(m) => rep.check("K-union equals triacontahedron", m == tri, ""),
        Err(e) => rep.check("K-union equals triacontahedron", false, e.to_string()),
    };
    for kind in [TileKind::B, TileKind::C] {
        let name = format!("{kind}-polyhedron");
        match abck_polyhedron(kind) {
            Ok(m) => {
                verify_surface(&mut rep, &name, &m, (62, 180, 120));
                let mut classes: Vec<usize> = m.radius_classes().values().copied().collect();
                classes.sort();
                rep.expect_eq(format!("{name} vertex classes"), &classes, &vec![12, 20, 30]);
                if kind == TileKind::C {
                    let f0 = m.face_edge_norms(0);
                    let same = (0..m.faces.len()).all(|f| m.face_edge_norms(f) == f0);
                    rep.check(format!("{name} has one face type"), same, "");
                }
            }
            Err(e) => {
                rep.check(name, false, e.to_string());
            }
        }
    }
    rep
}

pub fn verify_growth(max_depth: u32) -> Report {
    let mut rep = Report::new("patch growth");
    let tau3 = Golden::tau_pow(3);
    for n in 0..=max_depth {
        let p = inflate_n(TileKind::K, n);
        rep.expect_eq(format!("counts at depth {n}"), &p.counts(), &predicted_counts(TileKind::K, n));
        let want = &tau3.pow(n) * &Golden::frac(1, 48, 0, 1);
        rep.check(format!("volume at depth {n}"), p.total_volume() == want, "");
    }
    rep
}

fn combined(title: &str, parts: Vec<Report>) -> Report {
    let mut rep = Report::new(title);
    for p in parts {
        rep.merge(p);
    }
    rep
}

pub fn run_suite(s: Suite) -> Report {
    match s {
        Suite::Relations => combined("relations", vec![verify_coxeter_relations(), h3_embedding_check()]),
        Suite::Orbits => combined(
            "orbits",
            vec![verify_orbits(), verify_catalog(&standard_pairs()), verify_inflation_pairs(), verify_polyhedra()],
        ),
        Suite::Rules => combined("rules", vec![verify_tiles(), verify_rules(), verify_growth(4)]),
        Suite::Lifts => combined("lifts", vec![verify_lifts(&standard_pairs())]),
        Suite::All => combined(
            "all",
            [Suite::Relations, Suite::Orbits, Suite::Rules, Suite::Lifts].into_iter().map(run_suite).collect(),
        ),
    }
}
