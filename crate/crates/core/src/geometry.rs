//! Exact 3D linear algebra over the golden field.
//!
//! Points are stored in the halved-coordinate frame where the rhombic
//! triacontahedron's 5-fold vertex is `½(1, τ, 0)`; irrational lengths are
//! only ever handled through their squares.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golden::Golden;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GVec3(pub [Golden; 3]);

impl GVec3 {
    pub fn new(x: Golden, y: Golden, z: Golden) -> Self {
        GVec3([x, y, z])
    }

    pub fn zero() -> Self {
        GVec3::default()
    }

    /// Integer vector.
    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        GVec3::new(x.into(), y.into(), z.into())
    }

    /// `½(x, y, z)`, the form most tile vertices are written in.
    pub fn half(x: Golden, y: Golden, z: Golden) -> Self {
        GVec3::new(x, y, z).scale(&Golden::half())
    }

    pub fn unit(axis: usize) -> Self {
        let mut v = GVec3::zero();
        v.0[axis] = Golden::one();
        v
    }

    pub fn x(&self) -> &Golden {
        &self.0[0]
    }

    pub fn y(&self) -> &Golden {
        &self.0[1]
    }

    pub fn z(&self) -> &Golden {
        &self.0[2]
    }

    pub fn dot(&self, o: &GVec3) -> Golden {
        &self.0[0] * &o.0[0] + &self.0[1] * &o.0[1] + &self.0[2] * &o.0[2]
    }

    pub fn cross(&self, o: &GVec3) -> GVec3 {
        let [a, b, c] = &self.0;
        let [d, e, f] = &o.0;
        GVec3::new(b * f - c * e, c * d - a * f, a * e - b * d)
    }

    pub fn norm2(&self) -> Golden {
        self.dot(self)
    }

    pub fn scale(&self, k: &Golden) -> GVec3 {
        GVec3(self.0.clone().map(|c| &c * k))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Golden::is_zero)
    }

    /// True when `self` and `o` are parallel (or either is zero).
    pub fn is_parallel(&self, o: &GVec3) -> bool {
        self.cross(o).is_zero()
    }

    pub fn conj(&self) -> GVec3 {
        GVec3(self.0.clone().map(|c| c.conj()))
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.0[0].to_f64(), self.0[1].to_f64(), self.0[2].to_f64()]
    }
}

impl fmt::Debug for GVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for GVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Add<&GVec3> for &GVec3 {
    type Output = GVec3;
    fn add(self, o: &GVec3) -> GVec3 {
        GVec3::new(&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2])
    }
}

impl Add for GVec3 {
    type Output = GVec3;
    fn add(self, o: GVec3) -> GVec3 {
        &self + &o
    }
}

impl Sub<&GVec3> for &GVec3 {
    type Output = GVec3;
    fn sub(self, o: &GVec3) -> GVec3 {
        GVec3::new(&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2])
    }
}

impl Sub for GVec3 {
    type Output = GVec3;
    fn sub(self, o: GVec3) -> GVec3 {
        &self - &o
    }
}

impl Neg for &GVec3 {
    type Output = GVec3;
    fn neg(self) -> GVec3 {
        GVec3(self.0.clone().map(|c| -c))
    }
}

impl Neg for GVec3 {
    type Output = GVec3;
    fn neg(self) -> GVec3 {
        -&self
    }
}

/// Row-major 3×3 matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GMat3(pub [[Golden; 3]; 3]);

impl GMat3 {
    pub fn from_rows(rows: [[Golden; 3]; 3]) -> Self {
        GMat3(rows)
    }

    /// Integer entries.
    pub fn ints(rows: [[i64; 3]; 3]) -> Self {
        GMat3(rows.map(|r| r.map(Golden::from)))
    }

    pub fn identity() -> Self {
        GMat3::diag(1, 1, 1)
    }

    pub fn diag(a: i64, b: i64, c: i64) -> Self {
        GMat3::ints([[a, 0, 0], [0, b, 0], [0, 0, c]])
    }

    pub fn row(&self, i: usize) -> GVec3 {
        GVec3(self.0[i].clone())
    }

    pub fn col(&self, j: usize) -> GVec3 {
        GVec3::new(self.0[0][j].clone(), self.0[1][j].clone(), self.0[2][j].clone())
    }

    pub fn mul_vec(&self, v: &GVec3) -> GVec3 {
        GVec3::new(self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v))
    }

    pub fn transpose(&self) -> GMat3 {
        GMat3(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn scale(&self, k: &Golden) -> GMat3 {
        GMat3(self.0.clone().map(|r| r.map(|c| &c * k)))
    }

    pub fn det(&self) -> Golden {
        self.row(0).dot(&self.row(1).cross(&self.row(2)))
    }

    pub fn trace(&self) -> Golden {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    /// `MᵀM = I`, exactly.
    pub fn is_orthogonal(&self) -> bool {
        (&self.transpose() * self) == GMat3::identity()
    }

    pub fn is_identity(&self) -> bool {
        *self == GMat3::identity()
    }

    pub fn pow(&self, n: u32) -> GMat3 {
        let mut acc = GMat3::identity();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients `[1, c₂, c₁, c₀]` of the monic characteristic polynomial
    /// `det(λI − M) = λ³ + c₂λ² + c₁λ + c₀`.
    pub fn char_poly(&self) -> [Golden; 4] {
        let m = &self.0;
        let minors = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0] + &m[0][0] * &m[2][2]
            - &m[0][2] * &m[2][0]
            + &m[1][1] * &m[2][2]
            - &m[1][2] * &m[2][1];
        [Golden::one(), -self.trace(), minors, -self.det()]
    }

    /// Galois conjugate of every entry.
    pub fn conj(&self) -> GMat3 {
        GMat3(self.0.clone().map(|r| r.map(|c| c.conj())))
    }
}

impl Mul<&GMat3> for &GMat3 {
    type Output = GMat3;
    fn mul(self, o: &GMat3) -> GMat3 {
        GMat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &self.0[i][0] * &o.0[0][j] + &self.0[i][1] * &o.0[1][j] + &self.0[i][2] * &o.0[2][j])
        }))
    }
}

impl Mul for GMat3 {
    type Output = GMat3;
    fn mul(self, o: GMat3) -> GMat3 {
        &self * &o
    }
}

impl fmt::Debug for GMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}, {}, {}", r[0], r[1], r[2])?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for GMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A rigid placement `p ↦ rot·p + tr` with orthogonal `rot`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Motion {
    rot: GMat3,
    tr: GVec3,
}

impl Motion {
    pub fn new(rot: GMat3, tr: GVec3) -> Result<Self> {
        if !rot.is_orthogonal() {
            return Err(Error::NotOrthogonal(rot.to_string()));
        }
        Ok(Motion { rot, tr })
    }

    pub fn identity() -> Self {
        Motion { rot: GMat3::identity(), tr: GVec3::zero() }
    }

    pub fn linear(rot: GMat3) -> Result<Self> {
        Motion::new(rot, GVec3::zero())
    }

    pub fn translation(tr: GVec3) -> Self {
        Motion { rot: GMat3::identity(), tr }
    }

    pub fn rot(&self) -> &GMat3 {
        &self.rot
    }

    pub fn tr(&self) -> &GVec3 {
        &self.tr
    }

    pub fn det(&self) -> Golden {
        self.rot.det()
    }

    /// `det(rot) = −1`.
    pub fn is_mirror(&self) -> bool {
        self.det().is_negative()
    }

    pub fn apply(&self, p: &GVec3) -> GVec3 {
        &self.rot.mul_vec(p) + &self.tr
    }

    /// `self ∘ inner`: applies `inner` first.
    pub fn compose(&self, inner: &Motion) -> Motion {
        Motion { rot: &self.rot * &inner.rot, tr: &self.rot.mul_vec(&inner.tr) + &self.tr }
    }

    pub fn inverse(&self) -> Motion {
        let rt = self.rot.transpose();
        let tr = -rt.mul_vec(&self.tr);
        Motion { rot: rt, tr }
    }

    /// The same motion viewed after scaling space by `k`: `x ↦ rot·x + k·tr`.
    pub fn scale_translation(&self, k: &Golden) -> Motion {
        Motion { rot: self.rot.clone(), tr: self.tr.scale(k) }
    }

    pub fn is_identity(&self) -> bool {
        self.rot.is_identity() && self.tr.is_zero()
    }
}

/// `(1/6)·det(p1−p0, p2−p0, p3−p0)`.
pub fn tetra_signed_volume(p0: &GVec3, p1: &GVec3, p2: &GVec3, p3: &GVec3) -> Golden {
    let m = GMat3::from_rows([(p1 - p0).0, (p2 - p0).0, (p3 - p0).0]);
    m.det() * Golden::frac(1, 6, 0, 1)
}

pub fn tetra_volume(t: &[GVec3; 4]) -> Golden {
    tetra_signed_volume(&t[0], &t[1], &t[2], &t[3])
}

/// Barycentric coordinates of `p` in `t` from volume ratios; `None` if `t` is flat.
pub fn barycentric(p: &GVec3, t: &[GVec3; 4]) -> Option<[Golden; 4]> {
    let total = tetra_volume(t);
    let inv = total.inv()?;
    Some(std::array::from_fn(|i| {
        let mut q = t.clone();
        q[i] = p.clone();
        tetra_volume(&q) * &inv
    }))
}

/// Closed containment: boundary points count as inside.
pub fn point_in_tetra(p: &GVec3, t: &[GVec3; 4]) -> bool {
    match barycentric(p, t) {
        Some(w) => w.iter().all(|c| !c.is_negative()),
        None => false,
    }
}

/// Face index triples, each face opposite one vertex.
pub const TETRA_FACES: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

pub const TETRA_EDGES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

fn face_normal(t: &[GVec3; 4], f: &[usize; 3]) -> GVec3 {
    (&t[f[1]] - &t[f[0]]).cross(&(&t[f[2]] - &t[f[0]]))
}

fn separated_along(axis: &GVec3, p: &[GVec3; 4], q: &[GVec3; 4]) -> bool {
    let pa: Vec<Golden> = p.iter().map(|v| axis.dot(v)).collect();
    let qa: Vec<Golden> = q.iter().map(|v| axis.dot(v)).collect();
    let (pmin, pmax) = (pa.iter().min().unwrap(), pa.iter().max().unwrap());
    let (qmin, qmax) = (qa.iter().min().unwrap(), qa.iter().max().unwrap());
    pmax <= qmin || qmax <= pmin
}

/// Exact separating-axis test for two tetrahedra: true when their interiors
/// do not meet (touching along faces, edges or vertices is allowed).
///
/// Candidate axes are the eight face normals and the 36 edge-edge cross
/// products, which is complete for convex polytopes.
pub fn tetra_interiors_disjoint(p: &[GVec3; 4], q: &[GVec3; 4]) -> bool {
    for t in [p, q] {
        for f in &TETRA_FACES {
            let n = face_normal(t, f);
            if !n.is_zero() && separated_along(&n, p, q) {
                return true;
            }
        }
    }
    for e in &TETRA_EDGES {
        let d1 = &p[e[1]] - &p[e[0]];
        for g in &TETRA_EDGES {
            let d2 = &q[g[1]] - &q[g[0]];
            let n = d1.cross(&d2);
            if !n.is_zero() && separated_along(&n, p, q) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Golden {
        Golden::tau()
    }

    fn g_k() -> GMat3 {
        GMat3::ints([[0, -1, 0], [0, 0, -1], [1, 0, 0]])
    }

    #[test]
    fn vector_examples() {
        let d1 = GVec3::half(1.into(), t(), 0.into());
        assert_eq!(d1.norm2(), Golden::frac(2, 4, 1, 4));
        let d2 = GVec3::half(0.into(), t(), 0.into());
        assert_eq!(d1.dot(&d2), Golden::frac(1, 4, 1, 4));
        assert_eq!(GVec3::unit(0).cross(&GVec3::unit(1)), GVec3::unit(2));
    }

    #[test]
    fn volume_examples() {
        let o = GVec3::zero();
        let (e1, e2, e3) = (GVec3::unit(0), GVec3::unit(1), GVec3::unit(2));
        assert_eq!(tetra_signed_volume(&o, &e1, &e2, &e3), Golden::frac(1, 6, 0, 1));
        let flat = GVec3::ints(1, 1, 0);
        assert!(tetra_signed_volume(&o, &e1, &e2, &flat).is_zero());
    }

    #[test]
    fn motion_examples() {
        let p = GVec3::half(1.into(), t(), 0.into());
        assert_eq!(Motion::identity().apply(&p), p);
        let m = Motion::new(g_k(), GVec3::half(t(), t() * t(), 0.into())).unwrap();
        assert!(m.compose(&m.inverse()).is_identity());
        assert!(m.inverse().compose(&m).is_identity());
        let rot_only = Motion::linear(g_k()).unwrap();
        assert_eq!(rot_only.apply(&p), GVec3::half(-t(), 0.into(), 1.into()));
    }

    #[test]
    fn compose_applies_inner_first() {
        let a = Motion::new(g_k(), GVec3::ints(1, 0, 0)).unwrap();
        let b = Motion::new(GMat3::diag(-1, 1, 1), GVec3::ints(0, 2, 0)).unwrap();
        let p = GVec3::ints(1, 2, 3);
        assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
    }

    #[test]
    fn non_orthogonal_rejected() {
        let m = GMat3::ints([[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
        assert!(matches!(Motion::linear(m), Err(Error::NotOrthogonal(_))));
    }

    #[test]
    fn char_poly_of_diagonal() {
        let d = GMat3::diag(1, 2, 3);
        // (λ−1)(λ−2)(λ−3) = λ³ − 6λ² + 11λ − 6
        let c = d.char_poly();
        assert_eq!(c, [1.into(), (-6).into(), 11.into(), (-6).into()]);
    }

    #[test]
    fn containment_is_closed() {
        let t0 = [GVec3::zero(), GVec3::unit(0), GVec3::unit(1), GVec3::unit(2)];
        assert!(point_in_tetra(&GVec3::zero(), &t0));
        assert!(point_in_tetra(&GVec3::half(1.into(), 0.into(), 0.into()), &t0));
        assert!(!point_in_tetra(&GVec3::ints(1, 1, 0), &t0));
        let w = barycentric(&GVec3::half(0.into(), 1.into(), 0.into()), &t0).unwrap();
        assert_eq!(w.iter().sum::<Golden>(), Golden::one());
    }

    #[test]
    fn disjointness() {
        let a = [GVec3::zero(), GVec3::unit(0), GVec3::unit(1), GVec3::unit(2)];
        // reflected copy shares the face in the x = 0 plane
        let b = [GVec3::zero(), -GVec3::unit(0), GVec3::unit(1), GVec3::unit(2)];
        assert!(tetra_interiors_disjoint(&a, &b));
        let shifted = a.clone().map(|p| &p + &GVec3::half(0.into(), 0.into(), Golden::frac(1, 2, 0, 1)));
        assert!(!tetra_interiors_disjoint(&a, &shifted));
        assert!(!tetra_interiors_disjoint(&a, &a));
        // vertex contact only
        let far = a.clone().map(|p| &p + &GVec3::unit(0));
        assert!(tetra_interiors_disjoint(&a, &far));
    }
}
