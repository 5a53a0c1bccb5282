//! The Danzer ABCK tetrahedra, their octahedra and the 4K pyramids.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    tetra_interiors_disjoint, tetra_volume, GMat3, GVec3, Motion, TETRA_EDGES, TETRA_FACES,
};
use crate::golden::Golden;
use crate::h3::{generators, IcosahedralGroup};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileKind {
    A,
    B,
    C,
    K,
}

impl TileKind {
    pub const ALL: [TileKind; 4] = [TileKind::A, TileKind::B, TileKind::C, TileKind::K];

    pub fn index(&self) -> usize {
        *self as usize
    }

    pub fn name(&self) -> &'static str {
        match self {
            TileKind::A => "A",
            TileKind::B => "B",
            TileKind::C => "C",
            TileKind::K => "K",
        }
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TileKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(TileKind::A),
            "B" | "b" => Ok(TileKind::B),
            "C" | "c" => Ok(TileKind::C),
            "K" | "k" => Ok(TileKind::K),
            _ => Err(Error::Unknown { what: "tile kind", name: s.to_string() }),
        }
    }
}

fn half(x: Golden, y: Golden, z: Golden) -> GVec3 {
    GVec3::half(x, y, z)
}

fn t() -> Golden {
    Golden::tau()
}

fn g(a: i64, b: i64) -> Golden {
    Golden::int(a, b)
}

/// `½ · rows` for integer-pair entries `(a, b) ↦ a + bτ`.
pub(crate) fn half_mat(rows: [[(i64, i64); 3]; 3]) -> GMat3 {
    GMat3::from_rows(rows.map(|r| r.map(|(a, b)| g(a, b) * Golden::half())))
}

/// The rotation that places A inside the inflated C.
pub(crate) fn g_a() -> GMat3 {
    generators()[1].clone()
}

pub(crate) fn t_a() -> GVec3 {
    half(g(1, 1), g(0, 0), g(0, 1))
}

/// The four vertices of A as they sit inside the inflated C.
pub(crate) fn placed_a_in_tau_c() -> [GVec3; 4] {
    [half(g(1, 1), t(), 1.into()), t_a(), half(g(1, 1), g(1, 1), g(1, 1)), half(g(1, 2), g(1, 1), t())]
}

/// Origin first, positive orientation.
fn normalize(mut v: [GVec3; 4]) -> [GVec3; 4] {
    if let Some(i) = v.iter().position(GVec3::is_zero) {
        v.swap(0, i);
    }
    if tetra_volume(&v).is_negative() {
        v.swap(2, 3);
    }
    v
}

fn build_canonical() -> [[GVec3; 4]; 4] {
    let k = [GVec3::zero(), half(1.into(), t(), 0.into()), half(0.into(), t(), 0.into()), half(0.into(), t(), -Golden::sigma())];
    let c = [GVec3::zero(), half(t(), 0.into(), 1.into()), half(g(1, 1), 1.into(), 0.into()), half(g(1, 1), t(), 1.into())];
    let b = normalize([GVec3::zero(), k[1].scale(&t()), k[3].scale(&t()), GVec3::unit(1)]);
    let gt = g_a().transpose();
    let a = normalize(placed_a_in_tau_c().map(|p| gt.mul_vec(&(&p - &t_a()))));
    [a, b, normalize(c), normalize(k)]
}

/// Vertices of the canonical (positively oriented, origin-first) tile.
pub fn canonical_tile(kind: TileKind) -> &'static [GVec3; 4] {
    static TILES: OnceLock<[[GVec3; 4]; 4]> = OnceLock::new();
    &TILES.get_or_init(build_canonical)[kind.index()]
}

/// `a² = (2+τ)/4`.
pub fn a2() -> Golden {
    Golden::frac(1, 2, 1, 4)
}

/// `b² = 3/4`.
pub fn b2() -> Golden {
    Golden::frac(3, 4, 0, 1)
}

pub fn edge_norms(v: &[GVec3; 4]) -> Vec<Golden> {
    let mut e: Vec<Golden> = TETRA_EDGES.iter().map(|[i, j]| (&v[*j] - &v[*i]).norm2()).collect();
    e.sort();
    e
}

/// Sorted squared edge lengths.
pub fn tile_edge_norms(kind: TileKind) -> Vec<Golden> {
    edge_norms(canonical_tile(kind))
}

pub fn tile_volume(kind: TileKind) -> Golden {
    tetra_volume(canonical_tile(kind)).abs()
}

/// A placed tile; `depth` counts the inflations that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub kind: TileKind,
    pub place: Motion,
    pub depth: u32,
}

impl Tile {
    pub fn new(kind: TileKind, place: Motion) -> Self {
        Tile { kind, place, depth: 0 }
    }

    pub fn canonical(kind: TileKind) -> Self {
        Tile::new(kind, Motion::identity())
    }

    pub fn vertices(&self) -> [GVec3; 4] {
        canonical_tile(self.kind).clone().map(|p| self.place.apply(&p))
    }

    pub fn is_mirror(&self) -> bool {
        self.place.is_mirror()
    }

    pub fn signed_volume(&self) -> Golden {
        tetra_volume(&self.vertices())
    }

    /// Triangular faces as vertex triples.
    pub fn faces(&self) -> [[GVec3; 3]; 4] {
        let v = self.vertices();
        TETRA_FACES.map(|f| f.map(|i| v[i].clone()))
    }
}

/// True when `v` is a congruent copy of the canonical `kind`.
pub fn congruent_to(v: &[GVec3; 4], kind: TileKind) -> bool {
    edge_norms(v) == tile_edge_norms(kind) && tetra_volume(v).abs() == tile_volume(kind)
}

/// The affine reflection in the plane `y = τ/2` of the golden rhombus face.
pub fn r0() -> Motion {
    Motion::new(GMat3::diag(1, -1, 1), GVec3::new(0.into(), t(), 0.into())).expect("orthogonal")
}

/// The rhombus spanned by `D̂₁`, `D̂₃` and their mirror images.
pub fn golden_rhombus() -> [GVec3; 4] {
    let [r1, _, r3] = generators();
    let k = canonical_tile(TileKind::K);
    let (d1, d3) = (half(1.into(), t(), 0.into()), half(0.into(), t(), -Golden::sigma()));
    assert!(k.contains(&d1) && k.contains(&d3));
    [d1.clone(), d3.clone(), r1.mul_vec(&d1), r3.mul_vec(&d3)]
}

fn lin(m: GMat3) -> Motion {
    Motion::linear(m).expect("orthogonal")
}

fn klein(p: GMat3, q: GMat3) -> [Motion; 4] {
    let pq = &p * &q;
    [Motion::identity(), lin(p), lin(q), lin(pq)]
}

/// Placements of the octahedron's copies of `kind`.
pub fn octahedron_motions(kind: TileKind) -> Vec<Motion> {
    let [r1, _, r3] = generators();
    let base = klein(r1, r3);
    match kind {
        TileKind::K => {
            let r0 = r0();
            let mut v = base.to_vec();
            v.extend(base.iter().map(|m| r0.compose(m)));
            v
        }
        TileKind::B => base.to_vec(),
        TileKind::C => klein(
            half_mat([[(0, 1), (1, 0), (1, -1)], [(1, 0), (1, -1), (0, 1)], [(1, -1), (0, 1), (1, 0)]]),
            half_mat([[(1, 0), (-1, 1), (0, 1)], [(-1, 1), (0, 1), (-1, 0)], [(0, 1), (-1, 0), (1, -1)]]),
        )
        .to_vec(),
        TileKind::A => {
            let pre = Motion::new(GMat3::diag(-1, -1, -1), GVec3::half(1.into(), 1.into(), 1.into())).expect("orthogonal");
            klein(
                half_mat([[(1, -1), (0, 1), (1, 0)], [(0, 1), (1, 0), (1, -1)], [(1, 0), (1, -1), (0, 1)]]),
                half_mat([[(1, 0), (1, -1), (0, -1)], [(1, -1), (0, 1), (-1, 0)], [(0, -1), (-1, 0), (1, -1)]]),
            )
            .iter()
            .map(|m| m.compose(&pre))
            .collect()
        }
    }
}

pub fn octahedron_tiles(kind: TileKind) -> Vec<Tile> {
    octahedron_motions(kind).into_iter().map(|m| Tile::new(kind, m)).collect()
}

/// Corner set of the octahedron `⟨kind⟩` (6 points in every case). For
/// `⟨K⟩` the rhombus centre shared by all eight copies is interior.
pub fn octahedron(kind: TileKind) -> Vec<GVec3> {
    let mesh = crate::polyhedra::octahedron_mesh(kind).expect("octahedron copies are disjoint");
    mesh.vertices
}

/// The octahedron vertex lists as written out explicitly, for cross-checks.
pub fn expected_octahedron(kind: TileKind) -> BTreeSet<GVec3> {
    let s = Golden::sigma;
    let z = || Golden::zero();
    let o = || Golden::one();
    let pts = match kind {
        TileKind::K => {
            let mut v = golden_rhombus().to_vec();
            v.push(GVec3::zero());
            v.push(GVec3::new(z(), t(), z()));
            v
        }
        TileKind::B => {
            let [r1, _, r3] = generators();
            let (d1, d3) = (half(o(), t(), z()).scale(&t()), half(z(), t(), -s()).scale(&t()));
            vec![d1.clone(), r1.mul_vec(&d1), d3.clone(), r3.mul_vec(&d3), GVec3::unit(1), GVec3::zero()]
        }
        TileKind::C => vec![
            half(t(), z(), o()),
            half(t(), t(), t()),
            half(o(), t(), z()),
            half(g(1, 1), o(), z()),
            half(g(1, 1), t(), o()),
            GVec3::zero(),
        ],
        TileKind::A => vec![
            half(-t(), z(), o()),
            half(o(), -t(), z()),
            half(o(), o(), o()),
            half(s(), z(), -t()),
            half(s(), -t(), o()),
            GVec3::zero(),
        ],
    };
    pts.into_iter().collect()
}

/// The three 4K pyramids dissecting `⟨K⟩`, as motions of K: bases with
/// edge (height) `τ⁻¹a (τ/2)`, `a (τ⁻¹/2)`, `b (½)`.
pub fn k_pyramid_motions() -> [[Motion; 4]; 3] {
    let [r1, _, r3] = generators();
    let r0 = r0();
    [
        klein(r1.clone(), r3.clone()),
        [Motion::identity(), lin(r1.clone()), r0.clone(), r0.compose(&lin(r1))],
        [Motion::identity(), lin(r3.clone()), r0.clone(), r0.compose(&lin(r3))],
    ]
}

pub fn k_pyramids() -> [Vec<Tile>; 3] {
    k_pyramid_motions().map(|ms| ms.into_iter().map(|m| Tile::new(TileKind::K, m)).collect())
}

/// Apex and base of a pyramid made of four K tiles: the base is the set of
/// vertices used by exactly two tiles.
pub fn pyramid_apex_base(tiles: &[Tile]) -> Option<(GVec3, Vec<GVec3>)> {
    let mut count = std::collections::BTreeMap::<GVec3, usize>::new();
    for t in tiles {
        for v in t.vertices() {
            *count.entry(v).or_default() += 1;
        }
    }
    let apex: Vec<_> = count.iter().filter(|(_, c)| **c == 4).map(|(v, _)| v.clone()).collect();
    let base: Vec<_> = count.iter().filter(|(_, c)| **c == 2).map(|(v, _)| v.clone()).collect();
    if base.len() != 4 {
        return None;
    }
    // the shared centre of the base lies in all four tiles as well
    let centre = (&(&base[0] + &base[1]) + &(&base[2] + &base[3])).scale(&Golden::frac(1, 4, 0, 1));
    let apex = apex.into_iter().find(|a| *a != centre)?;
    Some((apex, base))
}

/// Squared edge length and squared height of a rhombic pyramid.
pub fn pyramid_measures(apex: &GVec3, base: &[GVec3]) -> Option<(Golden, Golden)> {
    let mut e: Vec<Golden> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            e.push((&base[j] - &base[i]).norm2());
        }
    }
    // four equal sides, two diagonals
    let side = e.iter().find(|x| e.iter().filter(|y| y == x).count() >= 4)?.clone();
    let centre = (&(&base[0] + &base[1]) + &(&base[2] + &base[3])).scale(&Golden::frac(1, 4, 0, 1));
    Some((side, (apex - &centre).norm2()))
}

/// The 30 two-fold directions, normalized as in `½(0, 1, 0)`'s orbit.
pub fn two_fold_axes() -> Vec<GVec3> {
    IcosahedralGroup::get().orbit(&half(0.into(), 1.into(), 0.into()))
}

/// True when every face normal of `v` is parallel to a two-fold axis.
pub fn faces_on_two_fold_planes(v: &[GVec3; 4], axes: &[GVec3]) -> bool {
    TETRA_FACES.iter().all(|f| {
        let n = (&v[f[1]] - &v[f[0]]).cross(&(&v[f[2]] - &v[f[0]]));
        axes.iter().any(|a| a.is_parallel(&n))
    })
}

fn tiles_disjoint(ts: &[Tile]) -> bool {
    let vs: Vec<[GVec3; 4]> = ts.iter().map(Tile::vertices).collect();
    (0..vs.len()).all(|i| (i + 1..vs.len()).all(|j| tetra_interiors_disjoint(&vs[i], &vs[j])))
}

/// Consistency checks of the canonical tiles against the octahedra, the
/// edge system, volumes and face orientations.
pub fn verify_tiles() -> Report {
    let mut rep = Report::new("tiles");
    let vols = [
        (TileKind::K, Golden::frac(1, 48, 0, 1)),
        (TileKind::B, Golden::frac(0, 1, 1, 24)),
        (TileKind::C, Golden::frac(0, 1, 1, 24)),
        (TileKind::A, Golden::frac(1, 24, 1, 24)),
    ];
    for (k, v) in &vols {
        rep.expect_eq(format!("vol({k})"), &tile_volume(*k), v);
        rep.check(format!("{k} positively oriented"), tetra_volume(canonical_tile(*k)).is_positive(), "");
    }
    let tau3 = Golden::tau_pow(3);
    let vol = |k| tile_volume(k);
    use TileKind::*;
    let identities = [
        ("tau^3 K = B + K", &tau3 * vol(K), vol(B) + vol(K)),
        ("tau^3 B = C + 4K + 2B", &tau3 * vol(B), vol(C) + Golden::from(4) * vol(K) + Golden::from(2) * vol(B)),
        ("tau^3 C = A + 2C + 2K", &tau3 * vol(C), vol(A) + Golden::from(2) * vol(C) + Golden::from(2) * vol(K)),
        (
            "tau^3 A = 3B + 2C + 6K",
            &tau3 * vol(A),
            Golden::from(3) * vol(B) + Golden::from(2) * vol(C) + Golden::from(6) * vol(K),
        ),
    ];
    for (name, l, r) in identities {
        rep.expect_eq(name, &l, &r);
    }

    let axes = two_fold_axes();
    for k in TileKind::ALL {
        rep.check(format!("{k} faces orthogonal to 2-fold axes"), faces_on_two_fold_planes(canonical_tile(k), &axes), "");
        let oct: BTreeSet<GVec3> = octahedron(k).into_iter().collect();
        rep.check(format!("<{k}> vertex set"), oct == expected_octahedron(k), format!("{} vertices", oct.len()));
        let ts = octahedron_tiles(k);
        rep.check(format!("<{k}> copies interior-disjoint"), tiles_disjoint(&ts), "");
        let grp = IcosahedralGroup::get();
        let in_group = octahedron_motions(k).iter().all(|m| grp.contains(m.rot()));
        rep.check(format!("<{k}> linear parts are symmetries"), in_group, "");
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_vertices() {
        let k = canonical_tile(TileKind::K);
        assert!(k.contains(&half(0.into(), t(), -Golden::sigma())));
        let c = canonical_tile(TileKind::C);
        assert!(c.contains(&half(g(1, 1), t(), 1.into())));
        let a = canonical_tile(TileKind::A);
        let want: BTreeSet<GVec3> = [
            GVec3::zero(),
            half(1.into(), 1.into(), 1.into()),
            half(0.into(), g(1, 1), 1.into()),
            half(t(), g(1, 1), 0.into()),
        ]
        .into_iter()
        .collect();
        assert_eq!(a.iter().cloned().collect::<BTreeSet<_>>(), want);
        for kind in TileKind::ALL {
            assert!(canonical_tile(kind)[0].is_zero());
        }
    }

    #[test]
    fn volumes() {
        assert_eq!(tile_volume(TileKind::K), Golden::frac(1, 48, 0, 1));
        assert_eq!(tile_volume(TileKind::B), Golden::frac(0, 1, 1, 24));
        assert_eq!(tile_volume(TileKind::A), Golden::frac(1, 24, 1, 24));
    }

    #[test]
    fn edge_systems() {
        let ti2 = Golden::tau_pow(-2);
        let tt = Golden::tau_pow(2);
        let q = Golden::frac(1, 4, 0, 1);
        let mut k = vec![&ti2 * &q, q.clone(), &ti2 * a2(), &tt * &q, b2(), a2()];
        k.sort();
        assert_eq!(tile_edge_norms(TileKind::K), k);
        let mut b = vec![&tt * a2(), &tt * b2(), Golden::one(), a2(), b2(), &ti2 * a2()];
        b.sort();
        assert_eq!(tile_edge_norms(TileKind::B), b);
        let mut a = vec![b2(), a2(), a2(), Golden::one(), &tt * b2(), &tt * a2()];
        a.sort();
        assert_eq!(tile_edge_norms(TileKind::A), a);
    }

    #[test]
    fn octahedra() {
        let r = verify_tiles();
        assert!(r.passed(), "{r}");
        assert!(octahedron(TileKind::B).contains(&GVec3::unit(1)));
        assert!(octahedron(TileKind::K).contains(&GVec3::new(0.into(), t(), 0.into())));
    }

    #[test]
    fn r0_fixes_rhombus() {
        for p in golden_rhombus() {
            assert_eq!(r0().apply(&p), p);
        }
        assert_eq!(r0().apply(&GVec3::zero()), GVec3::new(0.into(), t(), 0.into()));
    }

    #[test]
    fn pyramids() {
        let want = [
            (Golden::tau_pow(-2) * a2(), Golden::tau_pow(2) * Golden::frac(1, 4, 0, 1)),
            (a2(), Golden::tau_pow(-2) * Golden::frac(1, 4, 0, 1)),
            (b2(), Golden::frac(1, 4, 0, 1)),
        ];
        for (p, w) in k_pyramids().iter().zip(want) {
            let vol: Golden = p.iter().map(|t| t.signed_volume().abs()).sum();
            assert_eq!(vol, Golden::frac(1, 12, 0, 1));
            assert!(tiles_disjoint(p));
            let (apex, base) = pyramid_apex_base(p).unwrap();
            assert_eq!(pyramid_measures(&apex, &base), Some(w));
        }
    }

    #[test]
    fn parse_kind() {
        assert_eq!("K".parse::<TileKind>().unwrap(), TileKind::K);
        assert!("Q".parse::<TileKind>().is_err());
    }
}
