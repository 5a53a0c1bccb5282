//! Acceptance criteria. Each prints one PASS/FAIL line; the test fails if
//! any criterion does.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use abck::d6::{
    basis_is_orthonormal, h3_embedding_check, inflate_pair, par_hat, verify_catalog, weights, PairM, PolyhedronRow,
};
use abck::export::read_off;
use abck::h3::{coxeter_char_poly, verify_coxeter_relations, verify_orbits, IcosahedralGroup};
use abck::lift::{discover_convention, lift_table, verify_lift_translation, verify_lifts, LiftEntry};
use abck::polyhedra::orbit_polyhedron;
use abck::substitution::{inflate_n, rule, verify_rule};
use abck::tiles::{canonical_tile, tile_volume};
use abck::verify::verify_polyhedra;
use abck::{D6Vector, GVec3, Golden, TileKind};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn pairs() -> Vec<PairM> {
    [(1, 1), (2, 0), (3, 1)].iter().map(|&(a, b)| PairM::new(a, b).unwrap()).collect()
}

fn coxeter() -> Outcome {
    let start = Instant::now();
    let rep = verify_coxeter_relations();
    let grp = IcosahedralGroup::get();
    let elapsed = start.elapsed();
    let ok = rep.passed() && grp.len() == 120 && grp.rotations().count() == 60 && elapsed < Duration::from_secs(1);
    outcome(ok, format!("{} checks, group order {}, {:?}", rep.checks.len(), grp.len(), elapsed))
}

fn orbits() -> Outcome {
    let rep = verify_orbits();
    outcome(rep.passed(), format!("{} checks, sizes 12/30/20", rep.checks.len()))
}

fn spectrum() -> Outcome {
    let s = Golden::sigma();
    let got = coxeter_char_poly();
    let ok = got == [Golden::one(), s.clone(), s, Golden::one()];
    outcome(ok, format!("coefficients {got:?}"))
}

fn projection_basis() -> Outcome {
    let rep = h3_embedding_check();
    let ok = basis_is_orthonormal() && rep.passed();
    outcome(ok, format!("B·Bᵀ = I, {} Gram checks", rep.checks.len()))
}

fn catalog() -> Outcome {
    let want = [12, 20, 30, 60, 60, 60, 120];
    let mut ok = true;
    let ps = [PairM::new(2, 0).unwrap(), PairM::new(1, 1).unwrap()];
    for p in ps {
        for (row, n) in PolyhedronRow::ALL.iter().zip(want) {
            let m = orbit_polyhedron(*row, p);
            ok &= m.is_ok_and(|m| m.vertices.len() == n);
            ok &= row.l_form(p) == row.omega_form(p);
            ok &= par_hat(&row.l_form(p)) == row.seed().scale(&p.c_golden());
        }
    }
    ok &= verify_catalog(&ps).passed();
    outcome(ok, "7 rows at (2,0) and (1,1)")
}

fn fibonacci_inflation() -> Outcome {
    let w = weights();
    let expected = [
        w[0].scale_int(2),
        w[4].scale_int(2),
        &w[0].scale_int(2) + &w[4].scale_int(2),
        &w[0].scale_int(2) + &w[4].scale_int(4),
    ];
    let start = PairM::new(2, 0).unwrap();
    let trace: Vec<PairM> = (0..4).map(|n| inflate_pair(start, n)).collect();
    let mut ok = trace.iter().map(|p| (p.m1(), p.m2())).eq([(2, 0), (1, 1), (3, 1), (4, 2)]);
    let vs: Vec<D6Vector> = trace.iter().map(|&p| PolyhedronRow::Icosahedron.l_form(p)).collect();
    ok &= vs == expected;
    let tau2 = Golden::tau_pow(2);
    for k in 1..4 {
        ok &= par_hat(&vs[k]).norm2() == &par_hat(&vs[k - 1]).norm2() * &tau2;
    }
    for p in pairs() {
        for n in -6..=6 {
            let q = inflate_pair(p, n);
            ok &= (q.m1() + q.m2()) % 2 == 0;
            ok &= (-6..=6).all(|m| inflate_pair(q, m) == inflate_pair(p, n + m));
        }
    }
    outcome(ok, "(2,0) -> (1,1) -> (3,1) -> (4,2), radius ratio τ")
}

fn float_volume(t: &[GVec3; 4]) -> f64 {
    let p: Vec<[f64; 3]> = t.iter().map(|v| v.to_f64()).collect();
    let r: Vec<[f64; 3]> = (1..4).map(|i| std::array::from_fn(|k| p[i][k] - p[0][k])).collect();
    (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))
        .abs()
        / 6.0
}

fn volumes() -> Outcome {
    let want = [
        (TileKind::K, Golden::frac(1, 48, 0, 1)),
        (TileKind::B, Golden::frac(0, 1, 1, 24)),
        (TileKind::C, Golden::frac(0, 1, 1, 24)),
        (TileKind::A, Golden::frac(1, 24, 1, 24)),
    ];
    let mut ok = true;
    for (k, v) in &want {
        ok &= tile_volume(*k) == *v;
        ok &= (float_volume(canonical_tile(*k)) - v.to_f64()).abs() < 1e-12;
    }
    let tau3 = Golden::tau_pow(3);
    for k in TileKind::ALL {
        let sum: Golden = rule(k).children.iter().map(|c| tile_volume(c.kind)).sum();
        ok &= sum == &tau3 * &tile_volume(k);
    }
    outcome(ok, "K 1/48, B τ/24, C τ/24, A τ²/24; four identities")
}

fn substitution_rules() -> Outcome {
    let heading = [
        (TileKind::A, [0, 3, 2, 6]),
        (TileKind::B, [0, 2, 1, 4]),
        (TileKind::C, [1, 0, 2, 2]),
        (TileKind::K, [0, 1, 0, 1]),
    ];
    let mut ok = true;
    let mut fails = Vec::new();
    for (k, counts) in heading {
        let rep = verify_rule(k);
        if !rep.passed() {
            fails.push(k.to_string());
        }
        ok &= rep.passed() && rule(k).counts() == counts;
    }
    outcome(ok, if fails.is_empty() { "all four rules".to_string() } else { format!("failing: {fails:?}") })
}

fn patch_growth() -> Outcome {
    // rows: child kind A, B, C, K; columns: parent kind
    const M: [[u64; 4]; 4] = [[0, 0, 1, 0], [3, 2, 0, 1], [2, 1, 2, 0], [6, 4, 2, 1]];
    let mut want = [0u64, 0, 0, 1];
    let mut ok = true;
    let tau3 = Golden::tau_pow(3);
    for n in 0..6u32 {
        let p = inflate_n(TileKind::K, n);
        ok &= p.counts() == want;
        ok &= p.total_volume() == &tau3.pow(n) * &Golden::frac(1, 48, 0, 1);
        want = std::array::from_fn(|i| (0..4).map(|j| M[i][j] * want[j]).sum());
    }
    let start = Instant::now();
    let p6 = inflate_n(TileKind::K, 6);
    let elapsed = start.elapsed();
    ok &= p6.counts() == want && elapsed < Duration::from_secs(10);
    ok &= p6.total_volume() == &tau3.pow(6) * &Golden::frac(1, 48, 0, 1);
    outcome(ok, format!("depth 6: {} tiles in {:?}", p6.tiles.len(), elapsed))
}

fn tile_polyhedra() -> Outcome {
    let rep = verify_polyhedra();
    let detail = match rep.failures().next() {
        Some(c) => format!("{}: {}", c.name, c.detail),
        None => "(32,60,30), (62,180,120) x2, 12+20+30".to_string(),
    };
    outcome(rep.passed(), detail)
}

fn lifts() -> Outcome {
    let rep = verify_lifts(&pairs());
    let conv = discover_convention();
    let mut ok = rep.passed() && conv.is_some();
    for e in lift_table() {
        if let LiftEntry::Translation(t) = e {
            ok &= pairs().into_iter().all(|p| verify_lift_translation(&t, p));
        }
    }
    let detail = match conv {
        Some(c) => format!("{} checks, convention: {c}", rep.checks.len()),
        None => "no single convention".to_string(),
    };
    outcome(ok, detail)
}

fn run_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_abck")).args(args).output().expect("binary runs")
}

fn determinism() -> Outcome {
    let a = run_bin(&["inflate", "--seed", "A", "--depth", "4"]);
    let b = run_bin(&["inflate", "--seed", "A", "--depth", "4"]);
    let mut ok = a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    let mut meshes = 0;
    for row in ["icosahedron", "great-rhombicosidodecahedron"] {
        let out = run_bin(&["polyhedron", "--row", row, "--m1", "2", "--m2", "0", "--format", "off"]);
        ok &= out.status.success();
        ok &= read_off(&String::from_utf8_lossy(&out.stdout))
            .is_ok_and(|m| m.edge_count() == m.header_edges && m.vertices.len() as i64 - m.header_edges as i64 + m.faces.len() as i64 == 2);
        meshes += 1;
    }
    for kind in ["B", "C", "K"] {
        let out = run_bin(&["abck-poly", "--kind", kind]);
        ok &= out.status.success();
        ok &= read_off(&String::from_utf8_lossy(&out.stdout)).is_ok_and(|m| m.edge_count() == m.header_edges);
        meshes += 1;
    }
    outcome(ok, format!("{} JSON bytes identical, {meshes} OFF round trips", a.stdout.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("Coxeter relations", coxeter),
        ("orbit structure", orbits),
        ("spectrum", spectrum),
        ("projection basis", projection_basis),
        ("catalog", catalog),
        ("Fibonacci inflation", fibonacci_inflation),
        ("tile volumes", volumes),
        ("substitution rules", substitution_rules),
        ("patch growth", patch_growth),
        ("tile-union polyhedra", tile_polyhedra),
        ("D6 lifts", lifts),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        // written straight to stderr so the lines survive output capture
        let line = format!("{} {:>2} {name}: {}\n", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
        std::io::stderr().write_all(line.as_bytes()).unwrap();
        if !o.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
