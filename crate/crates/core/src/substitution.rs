//! τ-inflation rules for the ABCK tiles and patch generation.
//!
//! The rules are first written in the frames in which their placements are
//! naturally expressed (the inflated parent sitting at some rigid image of
//! `τ·tile`). At build time each parent frame is solved from its corner
//! points, the children are pulled back into the canonical frame, and every
//! rule is verified exactly before use.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{point_in_tetra, tetra_interiors_disjoint, GMat3, GVec3, Motion};
use crate::golden::Golden;
use crate::h3::{generators, IcosahedralGroup};
use crate::report::Report;
use crate::tiles::{canonical_tile, congruent_to, half_mat, k_pyramid_motions, tile_volume, Tile, TileKind};

fn g(a: i64, b: i64) -> Golden {
    Golden::int(a, b)
}

/// `½(x, y, z)` with entries `(a, b) ↦ a + bτ`.
fn hv(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> GVec3 {
    GVec3::half(g(x.0, x.1), g(y.0, y.1), g(z.0, z.1))
}

fn motion(rot: GMat3, tr: GVec3) -> Motion {
    Motion::new(rot, tr).expect("rule rotations are orthogonal")
}

const T: (i64, i64) = (0, 1);
const MT: (i64, i64) = (0, -1);
const S: (i64, i64) = (1, -1);
const MS: (i64, i64) = (-1, 1);
const ONE: (i64, i64) = (1, 0);
const MONE: (i64, i64) = (-1, 0);
const Z: (i64, i64) = (0, 0);
const T2: (i64, i64) = (1, 1);
const T3: (i64, i64) = (1, 2);

/// Rotations and translations of the rules, by label.
pub mod data {
    use super::*;

    pub fn g_k() -> GMat3 {
        GMat3::ints([[0, -1, 0], [0, 0, -1], [1, 0, 0]])
    }
    pub fn t_k() -> GVec3 {
        hv(T, T2, Z)
    }
    pub fn g_b() -> GMat3 {
        half_mat([[MS, T, MONE], [MT, ONE, MS], [ONE, MS, T]])
    }
    pub fn g_4k() -> GMat3 {
        generators()[1].clone()
    }
    pub fn t_4k() -> GVec3 {
        hv(T, Z, ONE)
    }
    pub fn g_b1() -> GMat3 {
        half_mat([[S, MT, ONE], [MT, ONE, MS], [MONE, S, MT]])
    }
    pub fn g_b2() -> GMat3 {
        half_mat([[MS, MT, ONE], [T, ONE, MS], [ONE, S, MT]])
    }
    pub fn t_b() -> GVec3 {
        hv(T3, Z, T2)
    }
    pub fn g_k1_c() -> GMat3 {
        half_mat([[MS, T, MONE], [MT, ONE, MS], [ONE, MS, T]])
    }
    pub fn g_k2_c() -> GMat3 {
        half_mat([[MS, MT, MONE], [MT, MONE, MS], [ONE, S, T]])
    }
    pub fn t_k2_c() -> GVec3 {
        hv(T2, T, ONE)
    }
    pub fn g_c1() -> GMat3 {
        half_mat([[S, T, ONE], [T, ONE, S], [ONE, S, T]])
    }
    pub fn g_c2() -> GMat3 {
        half_mat([[ONE, MS, MT], [MS, T, ONE], [T, MONE, MS]])
    }
    /// Relates the canonical C to the C used by the τC construction.
    pub fn g_c() -> GMat3 {
        half_mat([[MONE, S, MT], [S, MT, ONE], [MT, ONE, MS]])
    }
    pub fn t_c_pre() -> GVec3 {
        -hv(T, T, T)
    }
    pub fn t_c_post() -> GVec3 {
        hv(T2, T2, T2)
    }
    pub fn g_a() -> GMat3 {
        crate::tiles::g_a()
    }
    pub fn t_a() -> GVec3 {
        crate::tiles::t_a()
    }
    pub fn g_k1_a() -> GMat3 {
        half_mat([[S, T, MONE], [T, ONE, MS], [ONE, S, MT]])
    }
    pub fn g_k2_a() -> GMat3 {
        half_mat([[S, T, ONE], [T, ONE, S], [ONE, S, T]])
    }
    pub fn t_k_a() -> GVec3 {
        hv(T, Z, ONE)
    }
    pub fn g_b_a() -> GMat3 {
        half_mat([[MT, MONE, S], [MONE, MS, T], [MS, MT, ONE]])
    }
}

/// A child placement in the frame of its construction.
#[derive(Clone, Debug)]
pub struct FrameChild {
    pub label: &'static str,
    pub kind: TileKind,
    pub place: Motion,
}

/// A rule as constructed: the inflated parent's corners and the children,
/// both in the same (construction) frame.
#[derive(Clone, Debug)]
pub struct FrameRule {
    pub parent: TileKind,
    pub corners: [GVec3; 4],
    pub children: Vec<FrameChild>,
}

fn child(label: &'static str, kind: TileKind, place: Motion) -> FrameChild {
    FrameChild { label, kind, place }
}

/// The unique group placement carrying canonical `kind` onto `pts`.
fn solve_placement(kind: TileKind, pts: &[GVec3; 4], scale: &Golden) -> Result<Motion> {
    let src: Vec<GVec3> = canonical_tile(kind).iter().map(|p| p.scale(scale)).collect();
    let found = IcosahedralGroup::get().placements(&src, pts);
    match found.len() {
        1 => Ok(found.into_iter().next().expect("one")),
        n => Err(Error::Construction(format!("{n} placements of {kind} onto {pts:?}"))),
    }
}

fn tau_b_children() -> Result<Vec<FrameChild>> {
    use data::*;
    let c_cell = [GVec3::zero(), hv(T, Z, ONE), hv(T, T, T), hv(T2, T, ONE)];
    let c = solve_placement(TileKind::C, &c_cell, &Golden::one())?;
    let pyramid = motion(g_4k(), t_4k());
    let labels = ["4K.1", "4K.2", "4K.3", "4K.4"];
    let mut out = vec![child("C", TileKind::C, c)];
    for (m, label) in k_pyramid_motions()[2].iter().zip(labels) {
        out.push(child(label, TileKind::K, pyramid.compose(m)));
    }
    out.push(child("B1", TileKind::B, motion(g_b1(), t_b())));
    out.push(child("B2", TileKind::B, motion(g_b2(), t_b())));
    Ok(out)
}

/// The four rules in their construction frames.
pub fn frame_rules() -> Result<[FrameRule; 4]> {
    use data::*;
    let tau = Golden::tau();
    let scaled = |k: TileKind| canonical_tile(k).clone().map(|p| p.scale(&tau));

    let rk = FrameRule {
        parent: TileKind::K,
        corners: scaled(TileKind::K),
        children: vec![
            child("B", TileKind::B, Motion::identity()),
            child("K", TileKind::K, motion(g_k(), t_k())),
        ],
    };

    let gb = g_b();
    let rb = FrameRule { parent: TileKind::B, corners: scaled(TileKind::B).map(|p| gb.mul_vec(&p)), children: tau_b_children()? };

    let c_fig = motion(g_c().transpose(), -t_c_pre());
    let c_child = |gc: GMat3| motion(gc, t_c_post()).compose(&Motion::translation(t_c_pre())).compose(&c_fig);
    let rc = FrameRule {
        parent: TileKind::C,
        corners: [GVec3::zero(), hv(T2, Z, T), hv(T2, T2, T2), hv(T3, T2, T)],
        children: vec![
            child("K1", TileKind::K, motion(g_k1_c(), GVec3::zero())),
            child("K2", TileKind::K, motion(g_k2_c(), t_k2_c())),
            child("C1", TileKind::C, c_child(g_c1())),
            child("C2", TileKind::C, c_child(g_c2())),
            child("A", TileKind::A, motion(g_a(), t_a())),
        ],
    };

    let mut a_children = vec![
        child("C", TileKind::C, Motion::identity()),
        child("K1", TileKind::K, motion(g_k1_a(), t_k_a())),
        child("K2", TileKind::K, motion(g_k2_a(), t_k_a())),
        child("B", TileKind::B, motion(g_b_a(), t_b())),
    ];
    a_children.extend(tau_b_children()?.into_iter().map(|mut c| {
        c.label = match c.label {
            "C" => "tauB.C",
            "B1" => "tauB.B1",
            "B2" => "tauB.B2",
            "4K.1" => "tauB.4K.1",
            "4K.2" => "tauB.4K.2",
            "4K.3" => "tauB.4K.3",
            _ => "tauB.4K.4",
        };
        c
    }));
    let ra = FrameRule {
        parent: TileKind::A,
        corners: [GVec3::zero(), hv(T2, ONE, Z), hv(T2, T2, T2), hv(T3, Z, T2)],
        children: a_children,
    };
    Ok([ra, rb, rc, rk])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleChild {
    pub kind: TileKind,
    pub place: Motion,
}

/// Children of `τ·parent` in the canonical frame.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubstitutionRule {
    pub parent: TileKind,
    pub children: Vec<RuleChild>,
    /// Where the construction frame's parent sits relative to `τ·canonical`.
    #[serde(skip)]
    pub frame: Motion,
}

impl SubstitutionRule {
    pub fn counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for ch in &self.children {
            c[ch.kind.index()] += 1;
        }
        c
    }
}

fn canonicalize(fr: &FrameRule) -> Result<SubstitutionRule> {
    let frame = solve_placement(fr.parent, &fr.corners, &Golden::tau())?;
    let back = frame.inverse();
    let children = fr.children.iter().map(|c| RuleChild { kind: c.kind, place: back.compose(&c.place) }).collect();
    Ok(SubstitutionRule { parent: fr.parent, children, frame })
}

/// Builds and verifies all rules. Any failed check is an error.
pub fn build_rules() -> Result<[SubstitutionRule; 4]> {
    let frs = frame_rules()?;
    let rules: Vec<SubstitutionRule> = frs.iter().map(canonicalize).collect::<Result<_>>()?;
    for r in &rules {
        let rep = verify_children(r.parent, &r.children);
        if !rep.passed() {
            return Err(Error::Construction(rep.to_string()));
        }
    }
    Ok(rules.try_into().expect("four rules"))
}

/// Shared verified rules, indexed by [`TileKind::index`].
pub fn rules() -> &'static [SubstitutionRule; 4] {
    static RULES: OnceLock<[SubstitutionRule; 4]> = OnceLock::new();
    RULES.get_or_init(|| build_rules().expect("substitution rules verify"))
}

pub fn rule(kind: TileKind) -> &'static SubstitutionRule {
    &rules()[kind.index()]
}

/// `M[child][parent]`: number of children of each kind per parent.
pub fn count_matrix() -> [[u64; 4]; 4] {
    let mut m = [[0u64; 4]; 4];
    for r in rules() {
        for (c, n) in r.counts().iter().enumerate() {
            m[c][r.parent.index()] = *n as u64;
        }
    }
    m
}

/// Exact checks that `children` tile `τ·parent`: volume balance,
/// containment, pairwise interior disjointness and congruence.
pub fn verify_children(parent: TileKind, children: &[RuleChild]) -> Report {
    let mut rep = Report::new(format!("tau{parent} rule"));
    let tau = Golden::tau();
    let cell = canonical_tile(parent).clone().map(|p| p.scale(&tau));
    let verts: Vec<[GVec3; 4]> =
        children.iter().map(|c| canonical_tile(c.kind).clone().map(|p| c.place.apply(&p))).collect();

    let total: Golden = children.iter().map(|c| tile_volume(c.kind)).sum();
    let want = Golden::tau_pow(3) * tile_volume(parent);
    rep.check("volume balance", total == want, format!("sum {total}, tau^3 vol {want}"));

    let mut outside = Vec::new();
    for (i, v) in verts.iter().enumerate() {
        for p in v {
            if !point_in_tetra(p, &cell) {
                outside.push(format!("child {i} vertex {p}"));
            }
        }
    }
    rep.check("containment", outside.is_empty(), outside.join("; "));

    let pairs: Vec<(usize, usize)> =
        (0..verts.len()).flat_map(|i| (i + 1..verts.len()).map(move |j| (i, j))).collect();
    let overlaps: Vec<String> = pairs
        .par_iter()
        .filter(|(i, j)| !tetra_interiors_disjoint(&verts[*i], &verts[*j]))
        .map(|(i, j)| format!("({i}, {j})"))
        .collect();
    rep.check("interiors disjoint", overlaps.is_empty(), overlaps.join(" "));

    let bad: Vec<String> = verts
        .iter()
        .zip(children)
        .enumerate()
        .filter(|(_, (v, c))| !congruent_to(v, c.kind))
        .map(|(i, (_, c))| format!("child {i} ({})", c.kind))
        .collect();
    rep.check("children congruent to canonical tiles", bad.is_empty(), bad.join(", "));

    let grp = IcosahedralGroup::get();
    rep.check("rotations in H3", children.iter().all(|c| grp.contains(c.place.rot())), "");
    rep
}

/// [`verify_children`] for the built rule of `kind`, plus its child counts.
pub fn verify_rule(kind: TileKind) -> Report {
    let r = rule(kind);
    let mut rep = verify_children(kind, &r.children);
    let want = match kind {
        TileKind::K => [0, 1, 0, 1],
        TileKind::B => [0, 2, 1, 4],
        TileKind::C => [1, 0, 2, 2],
        TileKind::A => [0, 3, 2, 6],
    };
    rep.expect_eq("child counts [A, B, C, K]", &r.counts(), &want);
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Patch {
    pub tiles: Vec<Tile>,
    pub scale_exponent: u32,
}

impl Patch {
    pub fn seed(kind: TileKind) -> Self {
        Patch { tiles: vec![Tile::canonical(kind)], scale_exponent: 0 }
    }

    pub fn counts(&self) -> [u64; 4] {
        let mut c = [0; 4];
        for t in &self.tiles {
            c[t.kind.index()] += 1;
        }
        c
    }

    pub fn total_volume(&self) -> Golden {
        self.tiles.iter().map(|t| tile_volume(t.kind)).sum()
    }

    /// Tiles sorted by (kind, placement).
    pub fn sorted(mut self) -> Self {
        self.tiles.sort();
        self
    }
}

/// Children of one placed tile.
pub fn inflate_tile(t: &Tile) -> Vec<Tile> {
    let tau = Golden::tau();
    let (m, tr) = (t.place.rot(), t.place.tr());
    rule(t.kind)
        .children
        .iter()
        .map(|c| {
            let rot = m * c.place.rot();
            let shift = &tr.scale(&tau) + &m.mul_vec(c.place.tr());
            Tile { kind: c.kind, place: Motion::new(rot, shift).expect("product of orthogonal"), depth: t.depth + 1 }
        })
        .collect()
}

/// One inflation step; tile order follows parent order.
pub fn inflate(p: &Patch) -> Patch {
    let tiles: Vec<Tile> = p.tiles.par_iter().flat_map_iter(inflate_tile).collect();
    Patch { tiles, scale_exponent: p.scale_exponent + 1 }
}

pub fn inflate_n(seed: TileKind, n: u32) -> Patch {
    (0..n).fold(Patch::seed(seed), |p, _| inflate(&p))
}

/// Counts of `inflate_n` predicted by the count matrix alone.
pub fn predicted_counts(seed: TileKind, n: u32) -> [u64; 4] {
    let m = count_matrix();
    let mut v = [0u64; 4];
    v[seed.index()] = 1;
    for _ in 0..n {
        v = std::array::from_fn(|i| (0..4).map(|j| m[i][j] * v[j]).sum());
    }
    v
}

/// Per-kind counts as `"A:0 B:3 C:1 K:5"`.
pub fn format_counts(c: &[u64; 4]) -> String {
    TileKind::ALL.iter().map(|k| format!("{k}:{}", c[k.index()])).collect::<Vec<_>>().join(" ")
}

pub fn verify_rules() -> Report {
    let mut rep = Report::new("substitution rules");
    match build_rules() {
        Ok(_) => {
            rep.check("rules build", true, "");
        }
        Err(e) => {
            rep.check("rules build", false, e.to_string());
            return rep;
        }
    }
    for k in TileKind::ALL {
        rep.merge(verify_rule(k));
    }
    let m = count_matrix();
    for p in TileKind::ALL {
        let lhs: Golden = TileKind::ALL.iter().map(|c| Golden::from(m[c.index()][p.index()] as i64) * tile_volume(*c)).sum();
        rep.expect_eq(format!("column {p} volume balance"), &lhs, &(Golden::tau_pow(3) * tile_volume(p)));
    }
    rep
}

/// The labelled children of a construction-frame rule, by label.
pub fn frame_children(kind: TileKind) -> Result<BTreeMap<&'static str, FrameChild>> {
    let frs = frame_rules()?;
    Ok(frs[kind.index()].children.iter().map(|c| (c.label, c.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn all_rules_verify() {
        for k in TileKind::ALL {
            let r = verify_rule(k);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn frames() {
        let r = rules();
        assert!(r[TileKind::K.index()].frame.is_identity());
        assert_eq!(r[TileKind::B.index()].frame, Motion::linear(data::g_b()).unwrap());
        assert!(r[TileKind::C.index()].frame.is_mirror());
        assert!(r[TileKind::A.index()].frame.is_mirror());
    }

    #[test]
    fn placed_k2_in_tau_c() {
        let k2 = &frame_children(TileKind::C).unwrap()["K2"];
        let v: BTreeSet<GVec3> = canonical_tile(TileKind::K).iter().map(|p| k2.place.apply(p)).collect();
        let q = Golden::frac(1, 4, 0, 1);
        let want: BTreeSet<GVec3> = [
            GVec3::half(1.into(), 1.into(), 1.into()),
            hv(T, Z, ONE),
            GVec3::new(g(1, 1) * &q, g(0, 1) * &q, q.clone()),
            hv(T2, T, ONE),
        ]
        .into_iter()
        .collect();
        assert_eq!(v, want);
    }

    #[test]
    fn tau_k_children() {
        let p = inflate(&Patch::seed(TileKind::K));
        assert_eq!(p.counts(), [0, 1, 0, 1]);
        let k = p.tiles.iter().find(|t| t.kind == TileKind::K).unwrap();
        assert_eq!(k.place, Motion::new(data::g_k(), data::t_k()).unwrap());
    }

    #[test]
    fn counts_and_volume() {
        assert_eq!(format_counts(&inflate_n(TileKind::K, 2).counts()), "A:0 B:3 C:1 K:5");
        assert_eq!(inflate_n(TileKind::A, 1).counts(), [0, 3, 2, 6]);
        assert_eq!(inflate_n(TileKind::K, 0).tiles.len(), 1);
        for n in 0..4 {
            let p = inflate_n(TileKind::C, n);
            assert_eq!(p.counts(), predicted_counts(TileKind::C, n));
            assert_eq!(p.total_volume(), Golden::tau_pow(3 * n as i64) * tile_volume(TileKind::C));
        }
    }

    #[test]
    fn mirrored_seed() {
        let r1 = generators()[0].clone();
        let seed = Patch { tiles: vec![Tile::new(TileKind::B, Motion::linear(r1).unwrap())], scale_exponent: 0 };
        let p = inflate(&seed);
        assert_eq!(p.counts(), [0, 2, 1, 4]);
        let direct = inflate(&Patch::seed(TileKind::B));
        for (a, b) in p.tiles.iter().zip(&direct.tiles) {
            assert_ne!(a.is_mirror(), b.is_mirror());
        }
    }

    #[test]
    fn perturbed_translation_fails() {
        let mut ch = rule(TileKind::C).children.clone();
        let p = ch[1].place.clone();
        ch[1].place = Motion::new(p.rot().clone(), p.tr() + &GVec3::half(1.into(), 0.into(), 0.into())).unwrap();
        let r = verify_children(TileKind::C, &ch);
        assert!(!r.passed());
        assert!(r.failures().any(|c| c.name == "containment"));
    }
}
