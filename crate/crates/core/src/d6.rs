//! The D₆ root lattice, its split into two icosahedral 3-spaces, and the
//! integer-pair parametrization of projected polyhedra.
//!
//! With the orthonormal basis `lᵢ = Lᵢ/√(2(2+τ))`, where the rows `Lᵢ` below
//! are Golden, the E∥ image of `Σ mᵢlᵢ` is `√(2/(2+τ)) · ½Σ mᵢLᵢ∥`. The
//! Golden vector `½Σ mᵢLᵢ∥` is what [`par_hat`] returns; it is the point in
//! the same halved frame the tiles live in.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::GVec3;
use crate::golden::{fibonacci, Golden};
use crate::report::Report;

/// A vector `Σ mᵢlᵢ` with rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct D6Vector {
    pub m: [BigRational; 6],
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl D6Vector {
    pub fn from_ints(m: [i64; 6]) -> Self {
        D6Vector { m: m.map(q) }
    }

    /// `½(m₁, …, m₆)`.
    pub fn halves(m: [i64; 6]) -> Self {
        D6Vector { m: m.map(|x| BigRational::new(x.into(), 2.into())) }
    }

    pub fn zero() -> Self {
        D6Vector::default()
    }

    /// The basis vector `lᵢ`, 1-based.
    pub fn l(i: usize) -> Self {
        let mut v = D6Vector::zero();
        v.m[i - 1] = BigRational::one();
        v
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        D6Vector { m: self.m.clone().map(|x| x * k) }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&q(k))
    }

    pub fn dot(&self, o: &D6Vector) -> BigRational {
        self.m.iter().zip(&o.m).map(|(a, b)| a * b).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.m.iter().all(|x| x.is_integer())
    }

    /// Integer coordinates with even sum.
    pub fn in_root_lattice(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        let s: BigInt = self.m.iter().map(|x| x.to_integer()).sum();
        (s % BigInt::from(2)).is_zero()
    }

    /// Root lattice or one of its cosets `ω₁`, `ω₅`, `ω₆` (all coordinates
    /// integers or all half-odd).
    pub fn in_weight_lattice(&self) -> bool {
        let doubled = self.scale_int(2);
        if !doubled.is_integral() {
            return false;
        }
        let odd = doubled.m.iter().filter(|x| !(x.to_integer() % BigInt::from(2)).is_zero()).count();
        odd == 0 || odd == 6
    }
}

impl Add<&D6Vector> for &D6Vector {
    type Output = D6Vector;
    fn add(self, o: &D6Vector) -> D6Vector {
        D6Vector { m: std::array::from_fn(|i| &self.m[i] + &o.m[i]) }
    }
}

impl Add for D6Vector {
    type Output = D6Vector;
    fn add(self, o: D6Vector) -> D6Vector {
        &self + &o
    }
}

impl Sub<&D6Vector> for &D6Vector {
    type Output = D6Vector;
    fn sub(self, o: &D6Vector) -> D6Vector {
        D6Vector { m: std::array::from_fn(|i| &self.m[i] - &o.m[i]) }
    }
}

impl Sub for D6Vector {
    type Output = D6Vector;
    fn sub(self, o: D6Vector) -> D6Vector {
        &self - &o
    }
}

impl Neg for D6Vector {
    type Output = D6Vector;
    fn neg(self) -> D6Vector {
        D6Vector { m: self.m.map(|x| -x) }
    }
}

impl fmt::Display for D6Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.m.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sign}l{}", i + 1)?;
            } else {
                write!(f, "{sign}{mag}l{}", i + 1)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for D6Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Simple roots `α₁…α₆`: `αᵢ = lᵢ − lᵢ₊₁`, `α₆ = l₅ + l₆`.
pub fn simple_roots() -> [D6Vector; 6] {
    std::array::from_fn(|i| match i {
        5 => &D6Vector::l(5) + &D6Vector::l(6),
        _ => &D6Vector::l(i + 1) - &D6Vector::l(i + 2),
    })
}

/// Fundamental weights `ω₁…ω₆`.
pub fn weights() -> [D6Vector; 6] {
    [
        D6Vector::from_ints([1, 0, 0, 0, 0, 0]),
        D6Vector::from_ints([1, 1, 0, 0, 0, 0]),
        D6Vector::from_ints([1, 1, 1, 0, 0, 0]),
        D6Vector::from_ints([1, 1, 1, 1, 0, 0]),
        D6Vector::halves([1, 1, 1, 1, 1, -1]),
        D6Vector::halves([1, 1, 1, 1, 1, 1]),
    ]
}

/// The D₆ Cartan matrix in the node order of the simple roots above.
pub fn cartan_matrix() -> [[i64; 6]; 6] {
    [
        [2, -1, 0, 0, 0, 0],
        [-1, 2, -1, 0, 0, 0],
        [0, -1, 2, -1, 0, 0],
        [0, 0, -1, 2, -1, -1],
        [0, 0, 0, -1, 2, 0],
        [0, 0, 0, -1, 0, 2],
    ]
}

pub fn gram(vs: &[D6Vector]) -> Vec<Vec<BigRational>> {
    vs.iter().map(|a| vs.iter().map(|b| a.dot(b)).collect()).collect()
}

/// The unnormalized rows `Lᵢ = (E∥ | E⊥)`; `lᵢ = Lᵢ / √(2(2+τ))`.
pub fn basis_rows() -> [[Golden; 6]; 6] {
    let t = Golden::tau;
    let z = Golden::zero;
    let o = Golden::one;
    let mo = || Golden::from(-1);
    [
        [o(), t(), z(), t(), mo(), z()],
        [mo(), t(), z(), -t(), mo(), z()],
        [z(), o(), t(), z(), t(), mo()],
        [z(), o(), -t(), z(), t(), o()],
        [t(), z(), o(), mo(), z(), t()],
        [-t(), z(), o(), o(), z(), t()],
    ]
}

/// The squared normalization `1/(2(2+τ))` of the basis rows.
pub fn basis_norm_sq() -> Golden {
    Golden::int(4, 2).inv().expect("nonzero")
}

/// `lᵢ` restricted to E∥ (unnormalized), 0-based index.
pub fn l_par(i: usize) -> GVec3 {
    let r = &basis_rows()[i];
    GVec3::new(r[0].clone(), r[1].clone(), r[2].clone())
}

pub fn l_perp(i: usize) -> GVec3 {
    let r = &basis_rows()[i];
    GVec3::new(r[3].clone(), r[4].clone(), r[5].clone())
}

fn combine(v: &D6Vector, rows: impl Fn(usize) -> GVec3) -> GVec3 {
    let mut acc = GVec3::zero();
    for (i, c) in v.m.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &rows(i).scale(&Golden::rational(c.clone()));
        }
    }
    acc.scale(&Golden::half())
}

/// `½Σ mᵢLᵢ∥`; the true projection is `√(2/(2+τ))` times this.
pub fn par_hat(v: &D6Vector) -> GVec3 {
    combine(v, l_par)
}

/// `½Σ mᵢLᵢ⊥`, with the same prefactor convention as [`par_hat`].
pub fn perp_hat(v: &D6Vector) -> GVec3 {
    combine(v, l_perp)
}

/// The square of the common projection prefactor, `2/(2+τ)`.
pub fn projection_prefactor_sq() -> Golden {
    Golden::from(2) * Golden::int(2, 1).inv().expect("nonzero")
}

/// Both projections of `v`.
pub fn project(v: &D6Vector) -> (GVec3, GVec3) {
    (par_hat(v), perp_hat(v))
}

/// Checks that the normalized basis is orthonormal: `Lᵢ·Lⱼ = 2(2+τ)δᵢⱼ`.
pub fn basis_is_orthonormal() -> bool {
    let rows = basis_rows();
    let n = basis_norm_sq();
    (0..6).all(|i| {
        (0..6).all(|j| {
            let d: Golden = (0..6).map(|k| &rows[i][k] * &rows[j][k]).sum();
            let want = if i == j { Golden::one() } else { Golden::zero() };
            d * &n == want
        })
    })
}

/// Coefficients of `v` on the weights `v₁, v₂, v₃` (E∥) and on their E⊥
/// partners, up to the common factor `1/√(2+τ)` (resp. `1/√(2+σ)`).
pub fn decompose(v: &D6Vector) -> ([Golden; 3], [Golden; 3]) {
    let m: Vec<Golden> = v.m.iter().map(|x| Golden::rational(x.clone())).collect();
    let t = Golden::tau();
    let c = [
        &m[0] - &m[1] + &t * (&m[4] - &m[5]),
        &m[1] - &m[2] + &t * (&m[3] - &m[4]),
        &m[4] + &m[5] + &t * (&m[2] - &m[3]),
    ];
    let hat = c.clone().map(|x| x.conj());
    (c, hat)
}

/// Index pairs `(a, b)` with `vᵢ ∝ ωₐ + τω_b`.
const WEIGHT_PAIRS: [(usize, usize); 3] = [(0, 4), (1, 3), (5, 2)];

/// The D₆ numerator of `vᵢ` (or of `v́ᵢ` when `conj`) as Golden l-coordinates:
/// `ωₐ + τω_b` (resp. `ωₐ + σω_b`).
fn weight_numerator(i: usize, conj: bool) -> [Golden; 6] {
    let w = weights();
    let (a, b) = WEIGHT_PAIRS[i];
    let k = if conj { Golden::sigma() } else { Golden::tau() };
    std::array::from_fn(|j| Golden::rational(w[a].m[j].clone()) + &k * Golden::rational(w[b].m[j].clone()))
}

/// Inverse of [`decompose`]: rebuilds `v` from both coefficient triples.
/// Returns `None` if the result is not rational.
pub fn reassemble(c: &[Golden; 3], hat: &[Golden; 3]) -> Option<D6Vector> {
    let inv_t = Golden::int(2, 1).inv()?;
    let inv_s = Golden::int(3, -1).inv()?;
    let mut acc: [Golden; 6] = Default::default();
    for i in 0..3 {
        let wp = weight_numerator(i, false);
        let ws = weight_numerator(i, true);
        for j in 0..6 {
            acc[j] += &c[i] * &wp[j] * &inv_t + &hat[i] * &ws[j] * &inv_s;
        }
    }
    if !acc.iter().all(Golden::is_rational) {
        return None;
    }
    Some(D6Vector { m: acc.map(|g| g.a().clone()) })
}

/// `par_hat` expressed through the weight coefficients of [`decompose`]: `c₁·½(1,τ,0) +
/// c₂·(0,τ,0) + c₃·½(0,τ²,1)`, the halved images of `v₁, v₂, v₃`.
pub fn par_hat_from_coefficients(c: &[Golden; 3]) -> GVec3 {
    let t = Golden::tau();
    let v1 = GVec3::half(1.into(), t.clone(), 0.into());
    let v2 = GVec3::new(0.into(), t.clone(), 0.into());
    let v3 = GVec3::half(0.into(), &t * &t, 1.into());
    &(&v1.scale(&c[0]) + &v2.scale(&c[1])) + &v3.scale(&c[2])
}

/// Roots `βᵢ` (or `β̂ᵢ`) as Golden l-coordinates, without the `1/√(2+τ)`.
pub fn h3_root_numerators(conj: bool) -> [[Golden; 6]; 3] {
    let a = simple_roots();
    let k = if conj { Golden::sigma() } else { Golden::tau() };
    let pairs = [(0usize, 4usize), (1, 3), (5, 2)];
    pairs.map(|(x, y)| std::array::from_fn(|j| Golden::rational(a[x].m[j].clone()) + &k * Golden::rational(a[y].m[j].clone())))
}

fn golden_dot6(a: &[Golden; 6], b: &[Golden; 6]) -> Golden {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn golden_project(v: &[Golden; 6], par: bool) -> GVec3 {
    let mut acc = GVec3::zero();
    for (i, c) in v.iter().enumerate() {
        let row = if par { l_par(i) } else { l_perp(i) };
        acc = &acc + &row.scale(c);
    }
    acc.scale(&Golden::half())
}

/// Checks the H₃ root/weight embedding: Gram blocks, that the roots live
/// in exactly one of the two 3-spaces, and that the E∥ roots are the
/// reflection vectors of the three generators.
pub fn h3_embedding_check() -> Report {
    let mut rep = Report::new("H3 embedding in D6");
    rep.check("basis rows orthonormal", basis_is_orthonormal(), "L L^T = 2(2+tau) I");
    let cartan = cartan_matrix();
    let g = gram(&simple_roots());
    let ok = (0..6).all(|i| (0..6).all(|j| g[i][j] == q(cartan[i][j])));
    rep.check("Gram(alpha) = Cartan", ok, "");

    let t = Golden::tau();
    let s = Golden::sigma();
    for (conj, k, label) in [(false, t.clone(), "tau"), (true, s.clone(), "sigma")] {
        let b = h3_root_numerators(conj);
        let norm = if conj { Golden::int(3, -1) } else { Golden::int(2, 1) }.inv().unwrap();
        let gm: Vec<Vec<Golden>> = (0..3).map(|i| (0..3).map(|j| golden_dot6(&b[i], &b[j]) * &norm).collect()).collect();
        let want = vec![
            vec![2.into(), (-1).into(), 0.into()],
            vec![(-1).into(), 2.into(), -k.clone()],
            vec![0.into(), -k.clone(), 2.into()],
        ];
        rep.expect_eq(format!("{label}-block Gram"), &gm, &want);
        // E∥ roots have no E⊥ component and vice versa
        let vanish = b.iter().all(|r| golden_project(r, conj).is_zero());
        rep.check(format!("{label}-roots lie in one subspace"), vanish, "");
    }

    let gens = crate::h3::generators();
    let b = h3_root_numerators(false);
    for i in 0..3 {
        let r = golden_project(&b[i], true);
        let rr = r.norm2();
        let refl_ok = (0..3).all(|c| {
            let e = GVec3::unit(c);
            let k = Golden::from(2) * e.dot(&r) * rr.inv().unwrap();
            gens[i].mul_vec(&e) == &e - &r.scale(&k)
        });
        rep.check(format!("beta{} is the root of R{}", i + 1, i + 1), refl_ok, format!("direction {r}"));
    }
    // the weights vᵢ lie along the 5-, 2-, 3-fold axes
    let w = crate::h3::WeightTriple::new();
    let axes = [w.v1, w.v2, w.v3];
    for (i, axis) in axes.iter().enumerate() {
        let p = golden_project(&weight_numerator(i, false), true);
        rep.check(format!("v{} direction", i + 1), p.is_parallel(axis) && !p.is_zero(), format!("{p}"));
        let perp = golden_project(&weight_numerator(i, false), false);
        rep.check(format!("v{} has no E-perp part", i + 1), perp.is_zero(), "");
    }
    rep
}

/// A pair `(m₁, m₂)` with `m₁ + m₂` even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairM {
    m1: i64,
    m2: i64,
}

impl PairM {
    pub fn new(m1: i64, m2: i64) -> Result<Self> {
        if (m1 + m2).rem_euclid(2) != 0 {
            return Err(Error::Parity(m1, m2));
        }
        Ok(PairM { m1, m2 })
    }

    /// Like [`PairM::new`] but also rejects `(0, 0)`.
    pub fn nonzero(m1: i64, m2: i64) -> Result<Self> {
        if m1 == 0 && m2 == 0 {
            return Err(Error::ZeroPair);
        }
        PairM::new(m1, m2)
    }

    pub fn m1(&self) -> i64 {
        self.m1
    }

    pub fn m2(&self) -> i64 {
        self.m2
    }

    pub fn both_odd(&self) -> bool {
        self.m1.rem_euclid(2) == 1
    }

    /// Golden part `m₁ − m₂ + 2m₂τ` of the scale factor.
    pub fn c_golden(&self) -> Golden {
        Golden::int(self.m1 - self.m2, 2 * self.m2)
    }

    pub fn scale_factor(&self) -> ScaleFactor {
        ScaleFactor { golden: self.c_golden(), prefactor_sq: projection_prefactor_sq() }
    }
}

impl fmt::Display for PairM {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m1, self.m2)
    }
}

/// `c = √prefactor_sq · golden`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaleFactor {
    pub golden: Golden,
    pub prefactor_sq: Golden,
}

impl ScaleFactor {
    pub fn squared(&self) -> Golden {
        &self.golden * &self.golden * &self.prefactor_sq
    }
}

/// `(m₁, m₂) ↦ (m₁F_{n−1} + ½(m₁+5m₂)F_n, m₂F_{n−1} + ½(m₁+m₂)F_n)`,
/// which multiplies the scale factor by `τⁿ`.
pub fn inflate_pair(p: PairM, n: i64) -> PairM {
    let (m1, m2) = (BigInt::from(p.m1), BigInt::from(p.m2));
    let (f0, f1) = (fibonacci(n - 1), fibonacci(n));
    let two = BigInt::from(2);
    let n1 = &m1 * &f0 + (&m1 + BigInt::from(5) * &m2) / &two * &f1;
    let n2 = &m2 * &f0 + (&m1 + &m2) / &two * &f1;
    let conv = |x: BigInt| -> i64 { i64::try_from(x).expect("inflated pair exceeds i64") };
    PairM::new(conv(n1), conv(n2)).expect("inflation preserves parity")
}

/// The seven icosahedral polyhedra obtained as projected orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyhedronRow {
    Icosahedron,
    Dodecahedron,
    Icosidodecahedron,
    TruncatedIcosahedron,
    SmallRhombicosidodecahedron,
    TruncatedDodecahedron,
    GreatRhombicosidodecahedron,
}

impl PolyhedronRow {
    pub const ALL: [PolyhedronRow; 7] = [
        PolyhedronRow::Icosahedron,
        PolyhedronRow::Dodecahedron,
        PolyhedronRow::Icosidodecahedron,
        PolyhedronRow::TruncatedIcosahedron,
        PolyhedronRow::SmallRhombicosidodecahedron,
        PolyhedronRow::TruncatedDodecahedron,
        PolyhedronRow::GreatRhombicosidodecahedron,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PolyhedronRow::Icosahedron => "icosahedron",
            PolyhedronRow::Dodecahedron => "dodecahedron",
            PolyhedronRow::Icosidodecahedron => "icosidodecahedron",
            PolyhedronRow::TruncatedIcosahedron => "truncated-icosahedron",
            PolyhedronRow::SmallRhombicosidodecahedron => "small-rhombicosidodecahedron",
            PolyhedronRow::TruncatedDodecahedron => "truncated-dodecahedron",
            PolyhedronRow::GreatRhombicosidodecahedron => "great-rhombicosidodecahedron",
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            PolyhedronRow::Icosahedron => 12,
            PolyhedronRow::Dodecahedron => 20,
            PolyhedronRow::Icosidodecahedron => 30,
            PolyhedronRow::GreatRhombicosidodecahedron => 120,
            _ => 60,
        }
    }

    /// Vertex seed for `c = 1` in halved coordinates.
    pub fn seed(&self) -> GVec3 {
        let g = Golden::int;
        match self {
            PolyhedronRow::Icosahedron => GVec3::half(g(1, 0), g(0, 1), g(0, 0)),
            PolyhedronRow::Dodecahedron => GVec3::half(g(0, 0), g(1, 1), g(1, 0)),
            PolyhedronRow::Icosidodecahedron => GVec3::new(g(0, 0), g(0, 1), g(0, 0)),
            PolyhedronRow::TruncatedIcosahedron => GVec3::half(g(1, 0), g(0, 3), g(0, 0)),
            PolyhedronRow::SmallRhombicosidodecahedron => GVec3::half(g(1, 0), g(1, 2), g(1, 0)),
            PolyhedronRow::TruncatedDodecahedron => GVec3::half(g(0, 0), g(1, 3), g(1, 0)),
            PolyhedronRow::GreatRhombicosidodecahedron => GVec3::half(g(1, 0), g(1, 4), g(1, 0)),
        }
    }

    /// The lattice vector in the l-basis.
    pub fn l_form(&self, p: PairM) -> D6Vector {
        let (a, b) = (p.m1, p.m2);
        match self {
            PolyhedronRow::Icosahedron => D6Vector::from_ints([a, b, b, b, b, -b]),
            PolyhedronRow::Dodecahedron => {
                let (x, y) = (a + 3 * b, a - b);
                D6Vector::halves([x, x, x, y, y, y])
            }
            PolyhedronRow::Icosidodecahedron => D6Vector::from_ints([a + b, a + b, 2 * b, 2 * b, 0, 0]),
            PolyhedronRow::TruncatedIcosahedron => D6Vector::from_ints([2 * a + b, a + 2 * b, 3 * b, 3 * b, b, -b]),
            PolyhedronRow::SmallRhombicosidodecahedron => {
                D6Vector::halves([3 * a + 3 * b, a + 5 * b, a + 5 * b, a + b, a + b, a - 3 * b])
            }
            PolyhedronRow::TruncatedDodecahedron => {
                D6Vector::halves([3 * a + 5 * b, 3 * a + 5 * b, a + 7 * b, a + 3 * b, a - b, a - b])
            }
            PolyhedronRow::GreatRhombicosidodecahedron => {
                D6Vector::halves([5 * (a + b), 3 * a + 7 * b, a + 9 * b, a + 5 * b, a + b, a - 3 * b])
            }
        }
    }

    /// Weight indices (1-based) `(X, Y)` such that the vector is
    /// `(m₁ − m₂)ΣX ω + 2m₂ΣY ω`.
    pub fn omega_indices(&self) -> (&'static [usize], &'static [usize]) {
        match self {
            PolyhedronRow::Icosahedron => (&[1], &[5]),
            PolyhedronRow::Dodecahedron => (&[6], &[3]),
            PolyhedronRow::Icosidodecahedron => (&[2], &[4]),
            PolyhedronRow::TruncatedIcosahedron => (&[1, 2], &[4, 5]),
            PolyhedronRow::SmallRhombicosidodecahedron => (&[1, 6], &[3, 5]),
            PolyhedronRow::TruncatedDodecahedron => (&[2, 6], &[3, 4]),
            PolyhedronRow::GreatRhombicosidodecahedron => (&[1, 2, 6], &[3, 4, 5]),
        }
    }

    pub fn omega_form(&self, p: PairM) -> D6Vector {
        let w = weights();
        let (xs, ys) = self.omega_indices();
        let sum = |ix: &[usize]| ix.iter().fold(D6Vector::zero(), |acc, &i| &acc + &w[i - 1]);
        &sum(xs).scale_int(p.m1 - p.m2) + &sum(ys).scale_int(2 * p.m2)
    }

    /// Lattice vector for this row; rejects odd-sum pairs via [`PairM`].
    pub fn pair_vector(&self, p: PairM) -> D6Vector {
        self.l_form(p)
    }
}

impl fmt::Display for PolyhedronRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolyhedronRow {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['_', ' '], "-");
        PolyhedronRow::ALL
            .into_iter()
            .find(|r| r.name() == key)
            .ok_or_else(|| Error::Unknown { what: "polyhedron row", name: s.to_string() })
    }
}

/// The lattice images of the K-tile vertices `D₁, D₂, D₃` for a pair.
pub fn k_vertex_images(p: PairM) -> [D6Vector; 3] {
    let (a, b) = (p.m1, p.m2);
    [
        D6Vector::from_ints([a, b, b, b, b, -b]),
        D6Vector::halves([a + b, a + b, 2 * b, 2 * b, 0, 0]),
        D6Vector::halves([a + b, a + b, a + b, 3 * b - a, 3 * b - a, 3 * b - a]),
    ]
}

/// `D̂₁, D̂₂, D̂₃` (halved coordinates, `c = 1`).
pub fn k_vertex_hats() -> [GVec3; 3] {
    let w = crate::h3::WeightTriple::new();
    [w.v1, w.v2, w.v3]
}

pub fn verify_catalog(pairs: &[PairM]) -> Report {
    let mut rep = Report::new("polyhedron catalog");
    for &p in pairs {
        for row in PolyhedronRow::ALL {
            let l = row.l_form(p);
            rep.check(format!("{row} {p}: l-form = omega-form"), l == row.omega_form(p), format!("{l}"));
            rep.check(format!("{row} {p}: in root lattice"), l.in_root_lattice(), "");
            let got = par_hat(&l);
            let want = row.seed().scale(&p.c_golden());
            rep.check(format!("{row} {p}: projection = c * seed"), got == want, format!("{got}"));
        }
        let hats = k_vertex_hats();
        for (i, d) in k_vertex_images(p).iter().enumerate() {
            let ok = par_hat(d) == hats[i].scale(&p.c_golden());
            rep.check(format!("D{} {p}: projection = c * D-hat", i + 1), ok, format!("{d}"));
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_roots() {
        let w = weights();
        assert_eq!(w[1], &D6Vector::l(1) + &D6Vector::l(2));
        assert_eq!(w[5], D6Vector::halves([1, 1, 1, 1, 1, 1]));
        assert_eq!(simple_roots()[5], &D6Vector::l(5) + &D6Vector::l(6));
        // weights are dual to roots
        let a = simple_roots();
        for (i, ai) in a.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                let want = if i == j { q(1) } else { q(0) };
                assert_eq!(ai.dot(wj), want);
            }
        }
    }

    #[test]
    fn orthonormal_rows() {
        assert!(basis_is_orthonormal());
        let r = basis_rows();
        let l1l1: Golden = (0..6).map(|k| &r[0][k] * &r[0][k]).sum();
        assert_eq!(l1l1 * basis_norm_sq(), Golden::one());
    }

    #[test]
    fn project_two_omega1() {
        let v = weights()[0].scale_int(2);
        let (par, _) = project(&v);
        assert_eq!(par, GVec3::new(1.into(), Golden::tau(), 0.into()));
        assert_eq!(project(&D6Vector::zero()), (GVec3::zero(), GVec3::zero()));
    }

    #[test]
    fn decompose_examples() {
        let (c, hat) = decompose(&D6Vector::l(1));
        assert_eq!(c, [1.into(), 0.into(), 0.into()]);
        assert_eq!(hat, c);
        let (c, _) = decompose(&D6Vector::l(3));
        assert_eq!(c, [0.into(), (-1).into(), Golden::tau()]);
    }

    #[test]
    fn decompose_round_trip() {
        for i in 1..=6 {
            let v = D6Vector::l(i);
            let (c, hat) = decompose(&v);
            assert_eq!(reassemble(&c, &hat), Some(v.clone()));
            assert_eq!(par_hat_from_coefficients(&c), par_hat(&v));
        }
    }

    #[test]
    fn embedding() {
        let r = h3_embedding_check();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn scale_factor_examples() {
        assert_eq!(PairM::new(2, 0).unwrap().c_golden(), Golden::from(2));
        assert_eq!(PairM::new(1, 1).unwrap().c_golden(), Golden::int(0, 2));
        let ratio = PairM::new(1, 1).unwrap().c_golden() / PairM::new(2, 0).unwrap().c_golden();
        assert_eq!(ratio, Golden::tau());
        assert_eq!(PairM::new(2, 1), Err(Error::Parity(2, 1)));
        assert_eq!(PairM::nonzero(0, 0), Err(Error::ZeroPair));
    }

    #[test]
    fn pair_vector_examples() {
        let p11 = PairM::new(1, 1).unwrap();
        let v = PolyhedronRow::Icosahedron.pair_vector(p11);
        assert_eq!(v, D6Vector::from_ints([1, 1, 1, 1, 1, -1]));
        assert_eq!(v, weights()[4].scale_int(2));
        let p20 = PairM::new(2, 0).unwrap();
        assert_eq!(PolyhedronRow::Icosidodecahedron.pair_vector(p20), weights()[1].scale_int(2));
    }

    #[test]
    fn inflate_pair_chain() {
        let mut p = PairM::new(2, 0).unwrap();
        let want = [(1, 1), (3, 1), (4, 2)];
        for (m1, m2) in want {
            p = inflate_pair(p, 1);
            assert_eq!((p.m1(), p.m2()), (m1, m2));
        }
        assert_eq!(inflate_pair(PairM::new(2, 0).unwrap(), 3), p);
    }

    #[test]
    fn catalog() {
        let pairs = [PairM::new(2, 0).unwrap(), PairM::new(1, 1).unwrap(), PairM::new(3, -1).unwrap()];
        let r = verify_catalog(&pairs);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn row_names_parse() {
        for r in PolyhedronRow::ALL {
            assert_eq!(r.name().parse::<PolyhedronRow>().unwrap(), r);
        }
        assert!("cube".parse::<PolyhedronRow>().is_err());
    }
}
