//! Mesh and patch serialization: OFF and OBJ for viewing, exact JSON for
//! archiving and re-checking.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{GMat3, GVec3, Motion};
use crate::polyhedra::PolyMesh;
use crate::substitution::Patch;
use crate::tiles::{Tile, TileKind};

pub const DEFAULT_PRECISION: usize = 12;

/// `x` with `sig` significant digits in plain decimal notation.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { format!("{x}") };
    }
    let sig = sig.max(1) as i32;
    let mag = x.abs().log10().floor() as i32;
    let decimals = (sig - 1 - mag).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s = s.trim_end_matches('0').trim_end_matches('.').to_string();
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn vertex_line(out: &mut String, prefix: &str, v: &GVec3, sig: usize) {
    let [x, y, z] = v.to_f64();
    let _ = writeln!(out, "{prefix}{} {} {}", format_sig(x, sig), format_sig(y, sig), format_sig(z, sig));
}

pub fn write_off(mesh: &PolyMesh, sig: usize) -> String {
    let (v, e, f) = mesh.counts();
    let mut out = format!("OFF\n{v} {f} {e}\n");
    for p in &mesh.vertices {
        vertex_line(&mut out, "", p, sig);
    }
    for face in &mesh.faces {
        let idx: Vec<String> = face.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{} {}", face.len(), idx.join(" "));
    }
    out
}

/// Polygons are fan-triangulated from their first vertex.
pub fn write_obj(mesh: &PolyMesh, sig: usize) -> String {
    let mut out = String::new();
    for p in &mesh.vertices {
        vertex_line(&mut out, "v ", p, sig);
    }
    for face in &mesh.faces {
        for k in 1..face.len().saturating_sub(1) {
            let _ = writeln!(out, "f {} {} {}", face[0] + 1, face[k] + 1, face[k + 1] + 1);
        }
    }
    out
}

/// A mesh read back from OFF text.
#[derive(Clone, Debug, PartialEq)]
pub struct OffMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<usize>>,
    pub header_edges: usize,
}

impl OffMesh {
    /// Distinct undirected edges of the faces.
    pub fn edge_count(&self) -> usize {
        let mut edges = std::collections::BTreeSet::new();
        for f in &self.faces {
            for k in 0..f.len() {
                let (a, b) = (f[k], f[(k + 1) % f.len()]);
                edges.insert((a.min(b), a.max(b)));
            }
        }
        edges.len()
    }
}

pub fn read_off(text: &str) -> Result<OffMesh> {
    let bad = |m: &str| Error::Parse(format!("OFF: {m}"));
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    if lines.next() != Some("OFF") {
        return Err(bad("missing header"));
    }
    let counts: Vec<usize> = lines
        .next()
        .ok_or_else(|| bad("missing counts"))?
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| bad("bad count")))
        .collect::<Result<_>>()?;
    let [nv, nf, ne] = counts[..] else { return Err(bad("expected three counts")) };
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let xs: Vec<f64> = lines
            .next()
            .ok_or_else(|| bad("truncated vertices"))?
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| bad("bad coordinate")))
            .collect::<Result<_>>()?;
        let [x, y, z] = xs[..] else { return Err(bad("vertex needs three coordinates")) };
        vertices.push([x, y, z]);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let xs: Vec<usize> = lines
            .next()
            .ok_or_else(|| bad("truncated faces"))?
            .split_whitespace()
            .map(|x| x.parse().map_err(|_| bad("bad index")))
            .collect::<Result<_>>()?;
        let (&k, idx) = xs.split_first().ok_or_else(|| bad("empty face"))?;
        if idx.len() != k || idx.iter().any(|&i| i >= nv) {
            return Err(bad("face length or index out of range"));
        }
        faces.push(idx.to_vec());
    }
    if lines.next().is_some() {
        return Err(bad("trailing data"));
    }
    Ok(OffMesh { vertices, faces, header_edges: ne })
}

pub fn mesh_json(mesh: &PolyMesh) -> String {
    serde_json::to_string(mesh).expect("mesh serializes")
}

#[derive(Serialize, Deserialize)]
struct TileJson {
    kind: TileKind,
    rot: GMat3,
    tr: GVec3,
    depth: u32,
}

#[derive(Serialize, Deserialize)]
struct PatchJson {
    scale_exponent: u32,
    tiles: Vec<TileJson>,
}

fn tile_json(t: &Tile) -> TileJson {
    TileJson { kind: t.kind, rot: t.place.rot().clone(), tr: t.place.tr().clone(), depth: t.depth }
}

pub fn patch_json(p: &Patch) -> String {
    let doc = PatchJson { scale_exponent: p.scale_exponent, tiles: p.tiles.iter().map(tile_json).collect() };
    serde_json::to_string(&doc).expect("patch serializes")
}

pub fn patch_from_json(text: &str) -> Result<Patch> {
    let doc: PatchJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let tiles = doc
        .tiles
        .into_iter()
        .map(|t| Ok(Tile { kind: t.kind, place: Motion::new(t.rot, t.tr)?, depth: t.depth }))
        .collect::<Result<_>>()?;
    Ok(Patch { tiles, scale_exponent: doc.scale_exponent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::tile_mesh;
    use crate::substitution::inflate_n;

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(1.0, 12), "1");
        assert_eq!(format_sig(-0.5, 12), "-0.5");
        assert_eq!(format_sig(1.618033988749895, 12), "1.61803398875");
        assert_eq!(format_sig(1234.5678, 3), "1235");
        assert_eq!(format_sig(0.000123456, 2), "0.00012");
        assert_eq!(format_sig(-1e-3, 3), "-0.001");
    }

    #[test]
    fn off_round_trip() {
        let m = tile_mesh(TileKind::K);
        let back = read_off(&write_off(&m, 12)).unwrap();
        assert_eq!(back.vertices.len(), 4);
        assert_eq!(back.faces, m.faces);
        assert_eq!(back.edge_count(), back.header_edges);
        for (a, b) in back.vertices.iter().zip(m.vertices_f64()) {
            for k in 0..3 {
                assert!((a[k] - b[k]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn off_reader_rejects_garbage() {
        assert!(read_off("OFF\n1 0 0\n").is_err());
        assert!(read_off("OFF\n1 1 0\n0 0 0\n3 0 1 2\n").is_err());
        assert!(read_off("PLY\n").is_err());
    }

    #[test]
    fn obj_fans() {
        let m = PolyMesh { vertices: (0..4).map(|i| GVec3::ints(i, 0, 0)).collect(), faces: vec![vec![0, 1, 2, 3]] };
        let s = write_obj(&m, 6);
        assert_eq!(s.lines().filter(|l| l.starts_with("f ")).collect::<Vec<_>>(), ["f 1 2 3", "f 1 3 4"]);
    }

    #[test]
    fn patch_json_round_trip() {
        let p = inflate_n(TileKind::B, 2).sorted();
        let s = patch_json(&p);
        assert!(s.starts_with(r#"{"scale_exponent":2,"tiles":[{"kind":"#));
        assert_eq!(patch_from_json(&s).unwrap(), p);
        assert_eq!(patch_json(&p), s);
    }
}
