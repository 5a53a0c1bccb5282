//! The icosahedral Coxeter group H₃ generated by three reflections.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::geometry::{GMat3, GVec3, Motion};
use crate::golden::Golden;
use crate::report::Report;

fn h(a: Golden) -> Golden {
    a * Golden::half()
}

/// The three generating reflections `[R₁, R₂, R₃]`.
pub fn generators() -> [GMat3; 3] {
    let t = Golden::tau;
    let s = Golden::sigma;
    let one = Golden::one;
    let r2 = GMat3::from_rows([
        [h(one()), h(-s()), h(-t())],
        [h(-s()), h(t()), h(one())],
        [h(-t()), h(one()), h(s())],
    ]);
    [GMat3::diag(-1, 1, 1), r2, GMat3::diag(1, 1, -1)]
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub mat: GMat3,
    /// Generator indices (0-based) whose product in order gives `mat`.
    pub word: Vec<u8>,
}

pub struct IcosahedralGroup {
    elements: Vec<GroupElement>,
    index: HashMap<GMat3, usize>,
}

impl IcosahedralGroup {
    /// Breadth-first closure of the generators under right multiplication.
    pub fn generate() -> Self {
        let gens = generators();
        let id = GroupElement { mat: GMat3::identity(), word: Vec::new() };
        let mut index = HashMap::new();
        index.insert(id.mat.clone(), 0);
        let mut elements = vec![id];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &i in &frontier {
                for (k, g) in gens.iter().enumerate() {
                    let m = &elements[i].mat * g;
                    if index.contains_key(&m) {
                        continue;
                    }
                    let mut word = elements[i].word.clone();
                    word.push(k as u8);
                    index.insert(m.clone(), elements.len());
                    next.push(elements.len());
                    elements.push(GroupElement { mat: m, word });
                }
            }
            frontier = next;
        }
        IcosahedralGroup { elements, index }
    }

    /// Shared instance, built on first use.
    pub fn get() -> &'static IcosahedralGroup {
        static GROUP: OnceLock<IcosahedralGroup> = OnceLock::new();
        GROUP.get_or_init(IcosahedralGroup::generate)
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn matrices(&self) -> impl Iterator<Item = &GMat3> {
        self.elements.iter().map(|e| &e.mat)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, m: &GMat3) -> bool {
        self.index.contains_key(m)
    }

    pub fn rotations(&self) -> impl Iterator<Item = &GMat3> {
        self.matrices().filter(|m| m.det().is_positive())
    }

    /// Deduplicated orbit `{g·p}` in a deterministic (sorted) order.
    pub fn orbit(&self, p: &GVec3) -> Vec<GVec3> {
        let set: BTreeSet<GVec3> = self.elements.par_iter().map(|e| e.mat.mul_vec(p)).collect();
        set.into_iter().collect()
    }

    pub fn stabilizer_order(&self, p: &GVec3) -> usize {
        self.matrices().filter(|m| m.mul_vec(p) == *p).count()
    }

    /// All motions `x ↦ g·x + t` with `g` in the group that carry the point
    /// set `src` onto the point set `dst` (as sets).
    pub fn placements(&self, src: &[GVec3], dst: &[GVec3]) -> Vec<Motion> {
        if src.len() != dst.len() || src.is_empty() {
            return Vec::new();
        }
        let target: HashSet<&GVec3> = dst.iter().collect();
        let mut out = Vec::new();
        for g in self.matrices() {
            let img: Vec<GVec3> = src.iter().map(|p| g.mul_vec(p)).collect();
            for anchor in dst {
                let t = anchor - &img[0];
                if img.iter().all(|p| target.contains(&(p + &t))) {
                    out.push(Motion::new(g.clone(), t).expect("group elements are orthogonal"));
                }
            }
        }
        out
    }
}

/// Halved-coordinate representatives of the three fundamental weights.
#[derive(Clone, Debug)]
pub struct WeightTriple {
    /// 5-fold axis, `½(1, τ, 0)`.
    pub v1: GVec3,
    /// 2-fold axis, `½(0, τ, 0)`.
    pub v2: GVec3,
    /// 3-fold axis, `½(0, τ, −σ)`.
    pub v3: GVec3,
}

impl WeightTriple {
    pub fn new() -> Self {
        let t = Golden::tau();
        WeightTriple {
            v1: GVec3::half(1.into(), t.clone(), 0.into()),
            v2: GVec3::half(0.into(), t.clone(), 0.into()),
            v3: GVec3::half(0.into(), t, -Golden::sigma()),
        }
    }
}

impl Default for WeightTriple {
    fn default() -> Self {
        Self::new()
    }
}

/// Coefficients `[1, c₂, c₁, c₀]` of the characteristic polynomial of `R₁R₂R₃`.
pub fn coxeter_char_poly() -> [Golden; 4] {
    let [r1, r2, r3] = generators();
    (&(&r1 * &r2) * &r3).char_poly()
}

pub fn coxeter_element() -> GMat3 {
    let [r1, r2, r3] = generators();
    &(&r1 * &r2) * &r3
}

type HalfIntMat = [[(i64, i64); 3]; 3];

/// `2g` as integer pairs `(a, b)` standing for `a + bτ`, if every entry of
/// `g` lies in `½ℤ[τ]`.
fn doubled(g: &GMat3) -> Option<HalfIntMat> {
    let two = BigRational::from_integer(2.into());
    let int = |x: &BigRational| -> Option<i64> {
        let y = x * &two;
        if y.is_integer() {
            y.to_integer().to_i64()
        } else {
            None
        }
    };
    let mut out = [[(0, 0); 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let x = &g.0[i][j];
            *e = (int(x.a())?, int(x.b())?);
        }
    }
    Some(out)
}

/// `(2a)(2b)/2`, the doubled product; `None` if an entry is odd.
fn doubled_product(x: &HalfIntMat, y: &HalfIntMat) -> Option<HalfIntMat> {
    let mut out = [[(0, 0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (mut a, mut b) = (0i64, 0i64);
            for k in 0..3 {
                let ((a1, b1), (a2, b2)) = (x[i][k], y[k][j]);
                a += a1 * a2 + b1 * b2;
                b += a1 * b2 + a2 * b1 + b1 * b2;
            }
            if a % 2 != 0 || b % 2 != 0 {
                return None;
            }
            out[i][j] = (a / 2, b / 2);
        }
    }
    Some(out)
}

/// True when every product of two elements is again an element. Entries of
/// H₃ matrices lie in `½ℤ[τ]`, so the check runs on doubled integer matrices
/// and falls back to exact golden arithmetic otherwise.
fn closed_under_products(grp: &IcosahedralGroup) -> bool {
    let ints: Option<Vec<HalfIntMat>> = grp.matrices().map(doubled).collect();
    match ints {
        Some(ms) => {
            let set: HashSet<&HalfIntMat> = ms.iter().collect();
            ms.iter().all(|a| ms.iter().all(|b| doubled_product(a, b).is_some_and(|p| set.contains(&p))))
        }
        None => grp.matrices().all(|a| grp.matrices().all(|b| grp.contains(&(a * b)))),
    }
}

/// Checks the defining relations, exact orders of the products, and group order.
pub fn verify_coxeter_relations() -> Report {
    let [r1, r2, r3] = generators();
    let mut rep = Report::new("coxeter relations");
    let rels: [(&str, GMat3, u32); 6] = [
        ("R1^2", r1.clone(), 2),
        ("R2^2", r2.clone(), 2),
        ("R3^2", r3.clone(), 2),
        ("(R1R3)^2", &r1 * &r3, 2),
        ("(R1R2)^3", &r1 * &r2, 3),
        ("(R2R3)^5", &r2 * &r3, 5),
    ];
    for (name, m, n) in &rels {
        let p = m.pow(*n);
        let exact_order = (1..*n).all(|k| !m.pow(k).is_identity());
        rep.check(
            *name,
            p.is_identity() && exact_order,
            if p.is_identity() { format!("identity, order exactly {n}") } else { format!("product = {p}") },
        );
    }
    for (i, g) in [&r1, &r2, &r3].iter().enumerate() {
        rep.check(format!("R{} orthogonal, det -1", i + 1), g.is_orthogonal() && g.det() == Golden::from(-1), "");
    }
    let grp = IcosahedralGroup::get();
    rep.expect_eq("group order", &grp.len(), &120);
    rep.expect_eq("rotation subgroup order", &grp.rotations().count(), &60);
    rep.check("identity in group", grp.contains(&GMat3::identity()), "");
    let all_orth = grp.matrices().all(|m| m.is_orthogonal());
    rep.check("every element orthogonal", all_orth, "");
    rep.check("closed under products", closed_under_products(grp), "");
    let s = Golden::sigma();
    rep.expect_eq("char poly of R1R2R3", &coxeter_char_poly().to_vec(), &vec![Golden::one(), s.clone(), s, Golden::one()]);
    rep
}

/// The explicit weight orbits in halved coordinates: icosahedron
/// `½(±1, ±τ, 0)`, icosidodecahedron `½(±1,0,0)…, ¼(±1, ±σ, ±τ)…`, dodecahedron
/// `½(±1, ±1, ±1), ½(0, ±τ, ±σ)…` (all cyclic).
pub fn explicit_weight_orbits() -> [BTreeSet<GVec3>; 3] {
    let t = Golden::tau();
    let s = Golden::sigma();
    let signed = |base: [Golden; 3], scale: Golden| -> BTreeSet<GVec3> {
        let mut out = BTreeSet::new();
        for signs in 0..8u8 {
            let v: [Golden; 3] = std::array::from_fn(|i| {
                let c = &base[i] * &scale;
                if signs >> i & 1 == 1 {
                    -c
                } else {
                    c
                }
            });
            for shift in 0..3 {
                out.insert(GVec3(std::array::from_fn(|i| v[(i + shift) % 3].clone())));
            }
        }
        out
    };
    let half = Golden::half();
    let quarter = Golden::frac(1, 4, 0, 1);
    let ico = signed([1.into(), t.clone(), 0.into()], half.clone());
    let mut icosid = signed([1.into(), 0.into(), 0.into()], half.clone());
    icosid.extend(signed([1.into(), s.clone(), t.clone()], quarter));
    let mut dodec = signed([1.into(), 1.into(), 1.into()], half.clone());
    dodec.extend(signed([0.into(), t, s], half));
    [ico, icosid, dodec]
}

pub fn verify_orbits() -> Report {
    let grp = IcosahedralGroup::get();
    let w = WeightTriple::new();
    let mut rep = Report::new("weight orbits");
    // the middle set is the orbit of τ⁻¹·v₂-representative = ½(0, 1, 0)
    let seeds = [w.v1.clone(), w.v2.scale(&Golden::tau_pow(-1)), w.v3.clone()];
    let expected = explicit_weight_orbits();
    let names = ["v1", "v2", "v3"];
    let sizes = [12usize, 30, 20];
    let stabs = [10usize, 4, 6];
    for i in 0..3 {
        let orb: BTreeSet<GVec3> = grp.orbit(&seeds[i]).into_iter().collect();
        rep.expect_eq(format!("|orbit {}|", names[i]), &orb.len(), &sizes[i]);
        rep.check(format!("orbit {} equals explicit list", names[i]), orb == expected[i], "");
        rep.expect_eq(format!("stabilizer {}", names[i]), &grp.stabilizer_order(&seeds[i]), &stabs[i]);
        let perm = grp.matrices().all(|g| orb.iter().all(|p| orb.contains(&g.mul_vec(p))));
        rep.check(format!("group permutes orbit {}", names[i]), perm, "");
    }
    rep.expect_eq("orbit of origin", &grp.orbit(&GVec3::zero()).len(), &1);
    rep
}
