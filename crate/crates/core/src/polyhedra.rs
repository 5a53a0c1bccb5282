//! Polyhedral meshes: convex orbit polyhedra, the rhombic triacontahedron,
//! and boundary surfaces of tile unions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::d6::{PairM, PolyhedronRow};
use crate::error::{Error, Result};
use crate::geometry::{GVec3, Motion};
use crate::golden::Golden;
use crate::h3::{IcosahedralGroup, WeightTriple};
use crate::tiles::{canonical_tile, Tile, TileKind};

/// A closed polygonal surface. Faces are vertex-index cycles,
/// counter-clockwise seen from outside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolyMesh {
    pub vertices: Vec<GVec3>,
    pub faces: Vec<Vec<usize>>,
}

pub type Triangle = [GVec3; 3];

impl PolyMesh {
    /// Undirected edges as sorted index pairs.
    pub fn edges(&self) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for f in &self.faces {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                out.insert((a.min(b), a.max(b)));
            }
        }
        out
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges().len(), self.faces.len())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let (v, e, f) = self.counts();
        v as i64 - e as i64 + f as i64
    }

    pub fn degree_sum(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    /// Every directed edge occurs once and its reverse once, so each
    /// undirected edge borders exactly two consistently oriented faces.
    pub fn is_closed_oriented(&self) -> bool {
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &self.faces {
            for i in 0..f.len() {
                *directed.entry((f[i], f[(i + 1) % f.len()])).or_default() += 1;
            }
        }
        directed.iter().all(|(&(a, b), &n)| n == 1 && directed.get(&(b, a)) == Some(&1))
    }

    /// Squared distances from the origin, with multiplicities.
    pub fn radius_classes(&self) -> BTreeMap<Golden, usize> {
        let mut m = BTreeMap::new();
        for v in &self.vertices {
            *m.entry(v.norm2()).or_default() += 1;
        }
        m
    }

    /// Sorted squared edge lengths of a face.
    pub fn face_edge_norms(&self, f: usize) -> Vec<Golden> {
        let face = &self.faces[f];
        let mut e: Vec<Golden> = (0..face.len())
            .map(|i| (&self.vertices[face[(i + 1) % face.len()]] - &self.vertices[face[i]]).norm2())
            .collect();
        e.sort();
        e
    }

    /// Outward normal (unnormalized) of face `f`, from its first three vertices.
    pub fn face_normal(&self, f: usize) -> GVec3 {
        let face = &self.faces[f];
        let p = |i: usize| &self.vertices[face[i]];
        (p(1) - p(0)).cross(&(p(2) - p(0)))
    }

    /// Vertices as `f64` triples.
    pub fn vertices_f64(&self) -> Vec<[f64; 3]> {
        self.vertices.iter().map(GVec3::to_f64).collect()
    }

    /// True when the vertex set is mapped onto itself by every group element.
    pub fn is_symmetric(&self) -> bool {
        let set: BTreeSet<&GVec3> = self.vertices.iter().collect();
        IcosahedralGroup::get().matrices().all(|g| self.vertices.iter().all(|v| set.contains(&g.mul_vec(v))))
    }
}

/// Sort points lying in a plane with normal `n` counter-clockwise about
/// their centroid, exactly.
fn sort_ccw(points: &mut [GVec3], n: &GVec3) {
    let k = Golden::from(points.len() as i64).inv().expect("nonempty");
    let centre = points.iter().fold(GVec3::zero(), |acc, p| &acc + p).scale(&k);
    let u = &points[0] - &centre;
    let w = n.cross(&u);
    let coords = |p: &GVec3| {
        let d = p - &centre;
        (d.dot(&u), d.dot(&w))
    };
    let upper = |x: &Golden, y: &Golden| y.is_positive() || (y.is_zero() && !x.is_negative());
    points.sort_by(|a, b| {
        let (ax, ay) = coords(a);
        let (bx, by) = coords(b);
        match (upper(&ax, &ay), upper(&bx, &by)) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => {
                let cross = &ax * &by - &ay * &bx;
                (Golden::zero()).cmp(&cross)
            }
        }
    });
}

/// Rotate a cycle so its smallest index comes first.
fn canonical_cycle(mut f: Vec<usize>) -> Vec<usize> {
    if let Some((pos, _)) = f.iter().enumerate().min_by_key(|(_, v)| **v) {
        f.rotate_left(pos);
    }
    f
}

fn finish_mesh(vertices: Vec<GVec3>, mut faces: Vec<Vec<usize>>) -> PolyMesh {
    faces = faces.into_iter().map(canonical_cycle).collect();
    faces.sort();
    PolyMesh { vertices, faces }
}

/// Convex hull of a symmetric point set whose facets are orthogonal to the
/// 5-, 3- and 2-fold axes: for each axis, the points maximizing the exact
/// dot product form a facet when there are at least three of them.
pub fn convex_from_axes(points: Vec<GVec3>) -> PolyMesh {
    let grp = IcosahedralGroup::get();
    let w = WeightTriple::new();
    let mut normals = Vec::new();
    for seed in [&w.v1, &w.v2, &w.v3] {
        normals.extend(grp.orbit(seed));
    }
    let index: BTreeMap<&GVec3, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let faces: Vec<Vec<usize>> = normals
        .par_iter()
        .filter_map(|n| {
            let dots: Vec<Golden> = points.iter().map(|p| p.dot(n)).collect();
            let max = dots.iter().max()?.clone();
            let mut face: Vec<GVec3> =
                points.iter().zip(&dots).filter(|(_, d)| **d == max).map(|(p, _)| p.clone()).collect();
            if face.len() < 3 {
                return None;
            }
            sort_ccw(&mut face, n);
            Some(face.iter().map(|p| index[p]).collect())
        })
        .collect();
    finish_mesh(points, faces)
}

/// The polyhedron of a catalog row at the scale of pair `p`.
pub fn orbit_polyhedron(row: PolyhedronRow, p: PairM) -> Result<PolyMesh> {
    let c = p.c_golden();
    if c.is_zero() {
        return Err(Error::ZeroPair);
    }
    let seed = row.seed().scale(&c);
    Ok(convex_from_axes(IcosahedralGroup::get().orbit(&seed)))
}

/// The rhombic triacontahedron with vertices `½(1, τ, 0)` and `½(0, τ, −σ)`
/// orbits (in-radius `τ/2`).
pub fn triacontahedron() -> PolyMesh {
    let grp = IcosahedralGroup::get();
    let w = WeightTriple::new();
    let mut pts: BTreeSet<GVec3> = grp.orbit(&w.v1).into_iter().collect();
    pts.extend(grp.orbit(&w.v3));
    convex_from_axes(pts.into_iter().collect())
}

fn tri_key(t: &Triangle) -> [GVec3; 3] {
    let mut k = t.clone();
    k.sort();
    k
}

/// Rotate a triangle so its smallest vertex comes first, keeping orientation.
fn canonical_triangle(t: Triangle) -> Triangle {
    let [a, b, c] = t;
    if a <= b && a <= c {
        [a, b, c]
    } else if b <= a && b <= c {
        [b, c, a]
    } else {
        [c, a, b]
    }
}

/// Outward-oriented faces of a placed tile.
fn oriented_faces(t: &Tile) -> [Triangle; 4] {
    let mirror = t.signed_volume().is_negative();
    t.faces().map(|[a, b, c]| if mirror { [a, c, b] } else { [a, b, c] })
}

/// Faces occurring exactly once among all tile faces, outward oriented and
/// in a canonical order. A face shared by more than two tiles is an error.
pub fn boundary_extract(tiles: &[Tile]) -> Result<Vec<Triangle>> {
    let mut seen: BTreeMap<[GVec3; 3], (usize, Triangle)> = BTreeMap::new();
    let faces: Vec<[Triangle; 4]> = tiles.par_iter().map(oriented_faces).collect();
    for f in faces.into_iter().flatten() {
        let e = seen.entry(tri_key(&f)).or_insert((0, f.clone()));
        e.0 += 1;
    }
    let mut out = Vec::new();
    for (_, (n, f)) in seen {
        match n {
            1 => out.push(canonical_triangle(f)),
            2 => {}
            n => return Err(Error::Overlap(n)),
        }
    }
    out.sort();
    Ok(out)
}

/// Index a triangle soup into a mesh (vertices in sorted order).
pub fn mesh_from_triangles(tris: &[Triangle]) -> PolyMesh {
    let verts: BTreeSet<GVec3> = tris.iter().flatten().cloned().collect();
    let vertices: Vec<GVec3> = verts.into_iter().collect();
    let index: BTreeMap<&GVec3, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let faces = tris.iter().map(|t| t.iter().map(|v| index[v]).collect()).collect();
    finish_mesh(vertices.clone(), faces)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// The plane of a face as (primitive normal direction, offset) so that
/// coplanar, equally oriented faces compare equal.
fn plane_of(m: &PolyMesh, f: usize) -> (GVec3, Golden) {
    let n = m.face_normal(f);
    // scale so the first nonzero coordinate is 1
    let lead = n.0.iter().find(|c| !c.is_zero()).expect("nondegenerate face").abs();
    let n = n.scale(&lead.inv().expect("nonzero"));
    let d = n.dot(&m.vertices[m.faces[f][0]]);
    (n, d)
}

/// Merge edge-adjacent coplanar faces into single polygons; vertices that
/// end up strictly inside a merged polygon are dropped from the mesh.
pub fn coplanar_merge(mesh: &PolyMesh) -> Result<PolyMesh> {
    let nf = mesh.faces.len();
    let planes: Vec<(GVec3, Golden)> = (0..nf).into_par_iter().map(|f| plane_of(mesh, f)).collect();
    let mut edge_face: HashMap<(usize, usize), usize> = HashMap::new();
    for (fi, f) in mesh.faces.iter().enumerate() {
        for i in 0..f.len() {
            let e = (f[i], f[(i + 1) % f.len()]);
            if edge_face.insert(e, fi).is_some() {
                return Err(Error::NonManifold(format!("directed edge {e:?} used twice")));
            }
        }
    }
    let mut parent: Vec<usize> = (0..nf).collect();
    for (&(a, b), &fi) in &edge_face {
        let Some(&fj) = edge_face.get(&(b, a)) else {
            return Err(Error::NonManifold(format!("edge ({a}, {b}) has one side")));
        };
        if planes[fi] == planes[fj] {
            let (x, y) = (find(&mut parent, fi), find(&mut parent, fj));
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for f in 0..nf {
        let r = find(&mut parent, f);
        groups.entry(r).or_default().push(f);
    }
    let mut polys: Vec<Vec<usize>> = Vec::new();
    for faces in groups.values() {
        if faces.len() == 1 {
            polys.push(mesh.faces[faces[0]].clone());
            continue;
        }
        let members: BTreeSet<usize> = faces.iter().copied().collect();
        // boundary edges of the group: directed edges whose reverse lies outside it
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for &f in faces {
            let c = &mesh.faces[f];
            for i in 0..c.len() {
                let (a, b) = (c[i], c[(i + 1) % c.len()]);
                if !members.contains(&edge_face[&(b, a)]) && next.insert(a, b).is_some() {
                    return Err(Error::NonManifold(format!("merged face pinches at vertex {a}")));
                }
            }
        }
        let start = *next.keys().next().expect("group has a boundary");
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            cycle.push(cur);
            cur = *next.get(&cur).ok_or_else(|| Error::NonManifold("open boundary".into()))?;
            if cycle.len() > next.len() {
                return Err(Error::NonManifold("boundary does not close".into()));
            }
        }
        if cycle.len() != next.len() {
            return Err(Error::NonManifold("merged face has a hole".into()));
        }
        polys.push(cycle);
    }
    // drop unused vertices and reindex in sorted order
    let used: BTreeSet<usize> = polys.iter().flatten().copied().collect();
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let vertices = used.iter().map(|&i| mesh.vertices[i].clone()).collect();
    let faces = polys.into_iter().map(|f| f.into_iter().map(|i| remap[&i]).collect()).collect();
    Ok(finish_mesh(vertices, faces))
}

/// The full-group orbit of a canonical tile (60 direct + 60 mirror copies).
pub fn tile_orbit(kind: TileKind) -> Vec<Tile> {
    IcosahedralGroup::get()
        .matrices()
        .map(|g| Tile::new(kind, Motion::linear(g.clone()).expect("orthogonal")))
        .collect()
}

/// Boundary of the tile orbit: the triacontahedron for K, the B- and
/// C-polyhedra otherwise.
pub fn abck_polyhedron(kind: TileKind) -> Result<PolyMesh> {
    let tris = boundary_extract(&tile_orbit(kind))?;
    coplanar_merge(&mesh_from_triangles(&tris))
}

/// Canonical tile as a closed mesh.
pub fn tile_mesh(kind: TileKind) -> PolyMesh {
    let tris = boundary_extract(&[Tile::canonical(kind)]).expect("single tile");
    let m = mesh_from_triangles(&tris);
    debug_assert_eq!(m.vertices.len(), canonical_tile(kind).len());
    m
}

/// Octahedron `⟨kind⟩` as a merged mesh.
pub fn octahedron_mesh(kind: TileKind) -> Result<PolyMesh> {
    let tris = boundary_extract(&crate::tiles::octahedron_tiles(kind))?;
    coplanar_merge(&mesh_from_triangles(&tris))
}
