//! Lifting the rule rotations and translations to the D₆ lattice.
//!
//! Rotations lift to signed permutations of the `lᵢ`; translations lift to
//! lattice vectors linear in the pair `(m₁, m₂)`. Both sides are compared
//! exactly through the E∥ projection.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::d6::{inflate_pair, l_par, l_perp, par_hat, D6Vector, PairM};
use crate::error::{Error, Result};
use crate::geometry::{GMat3, GVec3};
use crate::report::Report;
use crate::substitution::data;

/// `lᵢ ↦ sᵢ·l_{π(i)}`; `images[i] = (π(i), sᵢ)` with 0-based `π`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPermutation {
    images: [(u8, i8); 6],
}

/// How a signed cycle `(x₁ x₂ …)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BarConvention {
    /// The cycle lists basis images: `±l_{x_k} ↦ ±l_{x_{k+1}}`.
    BasisImages,
    /// The cycle lists where coefficients move, i.e. the inverse basis map.
    CoefficientMoves,
}

impl BarConvention {
    pub const ALL: [BarConvention; 2] = [BarConvention::BasisImages, BarConvention::CoefficientMoves];
}

impl fmt::Display for BarConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BarConvention::BasisImages => write!(f, "basis images"),
            BarConvention::CoefficientMoves => write!(f, "coefficient moves"),
        }
    }
}

impl SignedPermutation {
    pub fn identity() -> Self {
        SignedPermutation { images: std::array::from_fn(|i| (i as u8, 1)) }
    }

    pub fn from_images(images: [(u8, i8); 6]) -> Result<Self> {
        let mut seen = [false; 6];
        for &(j, s) in &images {
            if j > 5 || s.abs() != 1 || seen[j as usize] {
                return Err(Error::Permutation(format!("{images:?}"), "not a signed bijection".into()));
            }
            seen[j as usize] = true;
        }
        Ok(SignedPermutation { images })
    }

    /// Parse signed cycle notation such as `(1 -3 6)(2 4 -5)`; `-k` stands
    /// for a barred index. Fixed indices may be omitted.
    pub fn parse(text: &str, conv: BarConvention) -> Result<Self> {
        let err = |m: &str| Error::Permutation(text.to_string(), m.to_string());
        let mut map: [Option<(u8, i8)>; 6] = [None; 6];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body_start = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = body_start.find(')').ok_or_else(|| err("unbalanced parenthesis"))?;
            let body = &body_start[..close];
            if body.contains('(') {
                return Err(err("unbalanced parenthesis"));
            }
            let xs: Vec<i64> =
                body.split_whitespace().map(|x| x.parse::<i64>().map_err(|_| err("bad index"))).collect::<Result<_>>()?;
            if xs.is_empty() || xs.iter().any(|x| *x == 0 || x.abs() > 6) {
                return Err(err("indices must be 1..6"));
            }
            for k in 0..xs.len() {
                let (a, b) = (xs[k], xs[(k + 1) % xs.len()]);
                let i = (a.unsigned_abs() - 1) as usize;
                let img = ((b.unsigned_abs() - 1) as u8, (a.signum() * b.signum()) as i8);
                match map[i] {
                    Some(prev) if prev != img => return Err(err("contradictory images")),
                    _ => map[i] = Some(img),
                }
            }
            rest = body_start[close + 1..].trim_start().trim_start_matches(',').trim_start();
        }
        let images = std::array::from_fn(|i| map[i].unwrap_or((i as u8, 1)));
        let p = SignedPermutation::from_images(images).map_err(|_| err("not a bijection"))?;
        Ok(match conv {
            BarConvention::BasisImages => p,
            BarConvention::CoefficientMoves => p.inverse(),
        })
    }

    pub fn images(&self) -> &[(u8, i8); 6] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut out = [(0u8, 1i8); 6];
        for (i, &(j, s)) in self.images.iter().enumerate() {
            out[j as usize] = (i as u8, s);
        }
        SignedPermutation { images: out }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> Self {
        SignedPermutation {
            images: std::array::from_fn(|i| {
                let (j, s) = other.images[i];
                let (k, t) = self.images[j as usize];
                (k, s * t)
            }),
        }
    }

    pub fn apply(&self, v: &D6Vector) -> D6Vector {
        let mut out = D6Vector::zero();
        for (i, &(j, s)) in self.images.iter().enumerate() {
            let c = &v.m[i];
            out.m[j as usize] = if s > 0 { c.clone() } else { -c.clone() };
        }
        out
    }

    /// The 6×6 matrix whose column `i` is the image of `lᵢ`.
    pub fn matrix(&self) -> [[i8; 6]; 6] {
        let mut m = [[0i8; 6]; 6];
        for (i, &(j, s)) in self.images.iter().enumerate() {
            m[j as usize][i] = s;
        }
        m
    }

    /// Signed permutations with an even number of sign changes form the
    /// D₆ Weyl group.
    pub fn in_d6_weyl_group(&self) -> bool {
        self.images.iter().filter(|(_, s)| *s < 0).count() % 2 == 0
    }

    /// The signed permutation `P` with `P(lᵢ)∥ = g·lᵢ∥`, if one exists.
    pub fn from_rotation(g: &GMat3) -> Option<Self> {
        let mut images = [(0u8, 1i8); 6];
        for (i, img) in images.iter_mut().enumerate() {
            let target = g.mul_vec(&l_par(i));
            *img = (0..6).find_map(|j| {
                let lj = l_par(j);
                if lj == target {
                    Some((j as u8, 1))
                } else if -lj == target {
                    Some((j as u8, -1))
                } else {
                    None
                }
            })?;
        }
        SignedPermutation::from_images(images).ok()
    }

    /// `P(lᵢ)∥ = g·lᵢ∥` for all `i`.
    pub fn commutes_par(&self, g: &GMat3) -> bool {
        self.commutes(g, l_par)
    }

    /// `P(lᵢ)⊥ = ḡ·lᵢ⊥`, `ḡ` the Galois conjugate of `g`.
    pub fn commutes_perp(&self, g: &GMat3) -> bool {
        self.commutes(&g.conj(), l_perp)
    }

    fn commutes(&self, g: &GMat3, rows: fn(usize) -> GVec3) -> bool {
        self.images.iter().enumerate().all(|(i, &(j, s))| {
            let lhs = if s > 0 { rows(j as usize) } else { -rows(j as usize) };
            lhs == g.mul_vec(&rows(i))
        })
    }

    /// Cycle notation of the basis map, barred indices written `-k`.
    pub fn to_cycles(&self) -> String {
        let mut done = [false; 6];
        let mut out = String::new();
        for start in 0..6 {
            if done[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let (mut cur, mut sign) = (start, 1i8);
            loop {
                cyc.push((cur, sign));
                done[cur] = true;
                let (j, s) = self.images[cur];
                cur = j as usize;
                sign *= s;
                if cur == start && sign == 1 {
                    break;
                }
            }
            out.push('(');
            let parts: Vec<String> =
                cyc.iter().map(|(i, s)| if *s > 0 { format!("{}", i + 1) } else { format!("-{}", i + 1) }).collect();
            out.push_str(&parts.join(" "));
            out.push(')');
        }
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycles())
    }
}

/// A lattice vector `m₁·u + m₂·w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTemplate {
    pub u: D6Vector,
    pub w: D6Vector,
    /// Human-readable form in the `lᵢ` basis.
    pub text: &'static str,
}

impl PairTemplate {
    fn halves(u: [i64; 6], w: [i64; 6], text: &'static str) -> Self {
        PairTemplate { u: D6Vector::halves(u), w: D6Vector::halves(w), text }
    }

    pub fn eval(&self, p: PairM) -> D6Vector {
        &self.u.scale_int(p.m1()) + &self.w.scale_int(p.m2())
    }
}

#[derive(Clone, Debug)]
pub struct RotationLift {
    pub label: &'static str,
    pub rot: GMat3,
    /// Cycle string as printed in the source table.
    pub printed: &'static str,
    /// Cycle string after correcting transcription slips.
    pub resolved: &'static str,
}

#[derive(Clone, Debug)]
pub struct TranslationLift {
    pub label: &'static str,
    pub tr: GVec3,
    pub template: PairTemplate,
}

#[derive(Clone, Debug)]
pub enum LiftEntry {
    Rotation(RotationLift),
    Translation(TranslationLift),
}

impl LiftEntry {
    pub fn label(&self) -> &'static str {
        match self {
            LiftEntry::Rotation(r) => r.label,
            LiftEntry::Translation(t) => t.label,
        }
    }
}

fn rot(label: &'static str, rot: GMat3, printed: &'static str, resolved: &'static str) -> LiftEntry {
    LiftEntry::Rotation(RotationLift { label, rot, printed, resolved })
}

fn tr(label: &'static str, tr: GVec3, template: PairTemplate) -> LiftEntry {
    LiftEntry::Translation(TranslationLift { label, tr, template })
}

fn t_k_template() -> PairTemplate {
    PairTemplate::halves([1, 1, 1, 1, 1, -1], [5, 1, 1, 1, 1, -1], "1/2[(m1+5m2)l1 + (m1+m2)(l2+l3+l4+l5-l6)]")
}

fn t_4k_template() -> PairTemplate {
    PairTemplate::halves([0, 0, 0, 0, 2, 0], [2, -2, 2, -2, 0, -2], "m1 l5 + m2(l1-l2+l3-l4-l6)")
}

fn t_b_template() -> PairTemplate {
    PairTemplate::halves([1, -1, 1, -1, 3, -1], [3, -3, 3, -3, 5, -3], "1/2[(3m1+5m2)l5 + (m1+3m2)(l1-l2+l3-l4-l6)]")
}

fn t_c_pre_template() -> PairTemplate {
    PairTemplate::halves([-1, -1, -1, 1, -1, 1], [-3, 1, -3, -1, -3, -1], "-1/2[(m1+3m2)(l1+l3+l5) + (m1-m2)(l2-l4-l6)]")
}

/// The lift table: every rule rotation with its signed permutation and
/// every rule translation with its pair template.
pub fn lift_table() -> Vec<LiftEntry> {
    use data::*;
    vec![
        rot("tauK.g_K", g_k(), "(1 -3 6)(2 4 -5)", "(1 -3 6)(2 4 -5)"),
        tr("tauK.t_K", t_k(), t_k_template()),
        rot("tauB.g_B", g_b(), "(3)(1 2 6 -4 5)", "(3)(1 2 6 -4 5)"),
        rot("tauB.g_4K", g_4k(), "(1)(2 3)(4 5)(6)", "(1)(2 3)(4 5)(6)"),
        tr("tauB.t_4K", t_4k(), t_4k_template()),
        rot("tauB.g_B1", g_b1(), "(1 6 4 3 -5)(2)", "(1 6 4 3 -5)(2)"),
        rot("tauB.g_B2", g_b2(), "(1 5 -2 1 -5 2), (3 -6 4 -3 6 4)", "(1 5 -2 -1 -5 2)(3 -6 -4 -3 6 4)"),
        tr("tauB.t_B", t_b(), t_b_template()),
        rot("tauC.g_K1", g_k1_c(), "(5 -4 6 2 1)(3)", "(1 2 6 -4 5)(3)"),
        rot("tauC.g_K2", g_k2_c(), "(1 -1)(6 3 -4 5 -2 -6 -3 4 -5 2)", "(1 -1)(6 3 -4 5 -2 -6 -3 4 -5 2)"),
        tr(
            "tauC.t_K",
            t_k2_c(),
            PairTemplate::halves([2, 0, 0, 0, 2, 0], [2, 0, 4, 0, 2, -4], "(m1+m2)(l1+l5) + 2m2(l3-l6)"),
        ),
        tr("tauC.t_C.pre", t_c_pre(), t_c_pre_template()),
        rot("tauC.g_C1", g_c1(), "(1)(4)(2 -6)(3 5)", "(1)(4)(2 -6)(3 5)"),
        rot("tauC.g_C2", g_c2(), "(1)(3 5 -6 4 2)", "(1)(3 5 -6 4 2)"),
        tr(
            "tauC.t_C.post",
            t_c_post(),
            PairTemplate::halves([2, 0, 2, 0, 2, 0], [4, 2, 4, -2, 4, -2], "(m1+2m2)(l1+l3+l5) + m2(l2-l4-l6)"),
        ),
        rot("tauC.g_A", g_a(), "(1)(6)(2 3)(4 5)", "(1)(6)(2 3)(4 5)"),
        tr(
            "tauC.t_A",
            t_a(),
            PairTemplate::halves([1, -1, 1, -1, 1, -1], [1, -1, 1, -1, 5, -1], "1/2[(m1+5m2)l5 + (m1+m2)(l1-l2+l3-l4-l6)]"),
        ),
        tr("tauA.t_C", t_c_pre(), t_c_pre_template()),
        rot("tauA.g_C", g_c(), "(1 -1 (2 -4)(3 6)(5 -5))", "(1 -1)(2 -4)(3 6)(5 -5)"),
        rot("tauA.g_K1", g_k1_a(), "(1) (2 5 4 3 -6)", "(1)(2 5 4 3 -6)"),
        rot("tauA.g_K2", g_k2_a(), "(1)(4) (2 -6)(3 5)", "(1)(4)(2 -6)(3 5)"),
        tr("tauA.t_K", t_k_a(), t_4k_template()),
        rot("tauA.g_B", g_b_a(), "(6 5 -1 -6 -5 1), (4 -2 -3 4 2 3)", "(6 5 -1 -6 -5 1)(-4 -2 -3 4 2 3)"),
        tr("tauA.t_B", t_b(), t_b_template()),
    ]
}

/// Outcome of checking one rotation entry under one reading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RotationCheck {
    Commutes,
    Unparsable(String),
    Fails,
}

pub fn check_rotation(text: &str, g: &GMat3, conv: BarConvention) -> RotationCheck {
    match SignedPermutation::parse(text, conv) {
        Err(e) => RotationCheck::Unparsable(e.to_string()),
        Ok(p) if p.commutes_par(g) && p.commutes_perp(g) => RotationCheck::Commutes,
        Ok(_) => RotationCheck::Fails,
    }
}

/// True iff the resolved cycle string, read with `conv`, commutes with
/// projection in both subspaces.
pub fn verify_lift_rotation(entry: &RotationLift, conv: BarConvention) -> bool {
    check_rotation(entry.resolved, &entry.rot, conv) == RotationCheck::Commutes
}

/// True iff the template projects to `c(m₁, m₂)·t`.
pub fn verify_lift_translation(entry: &TranslationLift, p: PairM) -> bool {
    par_hat(&entry.template.eval(p)) == entry.tr.scale(&p.c_golden())
}

/// The single reading under which every resolved rotation commutes.
pub fn discover_convention() -> Option<BarConvention> {
    let table = lift_table();
    let ok: Vec<BarConvention> = BarConvention::ALL
        .into_iter()
        .filter(|&c| {
            table.iter().all(|e| match e {
                LiftEntry::Rotation(r) => verify_lift_rotation(r, c),
                LiftEntry::Translation(_) => true,
            })
        })
        .collect();
    match ok.as_slice() {
        [c] => Some(*c),
        _ => None,
    }
}

/// Lifted form of the τK rule applied twice projects to the composed
/// 3D motion: rotation `P²` and translation `t(m') + P·t(m)` with `m'` the
/// once-inflated pair.
pub fn tau_k_twice_consistent(p: PairM, conv: BarConvention) -> bool {
    let table = lift_table();
    let (LiftEntry::Rotation(r), LiftEntry::Translation(t)) = (&table[0], &table[1]) else {
        return false;
    };
    let Ok(perm) = SignedPermutation::parse(r.resolved, conv) else {
        return false;
    };
    let g = &r.rot;
    let rot_ok = perm.compose(&perm).commutes_par(&(g * g));
    let lifted = &t.template.eval(inflate_pair(p, 1)) + &perm.apply(&t.template.eval(p));
    let tau = crate::golden::Golden::tau();
    let want = (&t.tr.scale(&tau) + &g.mul_vec(&t.tr)).scale(&p.c_golden());
    rot_ok && par_hat(&lifted) == want
}

/// Full lift verification over the given pairs.
pub fn verify_lifts(pairs: &[PairM]) -> Report {
    let mut rep = Report::new("D6 lifts");
    let table = lift_table();
    let conv = discover_convention();
    rep.check("one bar convention fits every entry", conv.is_some(), conv.map(|c| c.to_string()).unwrap_or_default());
    let Some(conv) = conv else { return rep };
    for e in &table {
        match e {
            LiftEntry::Rotation(r) => {
                let ok = verify_lift_rotation(r, conv);
                let p = SignedPermutation::parse(r.resolved, conv).ok();
                let derived = SignedPermutation::from_rotation(&r.rot);
                rep.check(format!("{} commutes", r.label), ok, r.resolved.to_string());
                rep.check(format!("{} matches derived lift", r.label), p.is_some() && p == derived, "");
                rep.check(format!("{} in W(D6)", r.label), p.is_some_and(|p| p.in_d6_weyl_group()), "");
            }
            LiftEntry::Translation(t) => {
                for &p in pairs {
                    rep.check(format!("{} at {p}", t.label), verify_lift_translation(t, p), t.template.text);
                    let v = t.template.eval(p);
                    rep.check(format!("{} at {p} in root lattice", t.label), v.in_root_lattice(), format!("{v}"));
                }
            }
        }
    }
    for &p in pairs {
        rep.check(format!("tauK twice at {p}"), tau_k_twice_consistent(p, conv), "");
    }
    rep
}

/// Drops separators between cycles so layout differences do not count.
fn squeeze(s: &str) -> String {
    s.replace(", ", "").replace(") (", ")(")
}

/// Per-entry record of how the printed cycle strings fare.
pub fn printed_vs_resolved() -> BTreeMap<&'static str, (RotationCheck, RotationCheck)> {
    let conv = discover_convention().unwrap_or(BarConvention::CoefficientMoves);
    lift_table()
        .iter()
        .filter_map(|e| match e {
            LiftEntry::Rotation(r) if squeeze(r.printed) != squeeze(r.resolved) => {
                Some((r.label, (check_rotation(r.printed, &r.rot, conv), check_rotation(r.resolved, &r.rot, conv))))
            }
            _ => None,
        })
        .collect()
}

/// Printable table with both forms of every entry.
pub fn format_table(pairs: &[PairM]) -> String {
    let conv = discover_convention();
    let mut out = String::new();
    out.push_str(&format!(
        "bar convention: {}\n",
        conv.map(|c| c.to_string()).unwrap_or_else(|| "none fits".into())
    ));
    for e in lift_table() {
        match e {
            LiftEntry::Rotation(r) => {
                let ok = conv.is_some_and(|c| verify_lift_rotation(&r, c));
                out.push_str(&format!(
                    "{:<16} rotation     {}  <->  {}  [{}]\n",
                    r.label,
                    r.rot,
                    r.resolved,
                    if ok { "ok" } else { "FAIL" }
                ));
            }
            LiftEntry::Translation(t) => {
                let ok = pairs.iter().all(|&p| verify_lift_translation(&t, p));
                out.push_str(&format!(
                    "{:<16} translation  c*{}  <->  {}  [{}]\n",
                    t.label,
                    t.tr,
                    t.template.text,
                    if ok { "ok" } else { "FAIL" }
                ));
            }
        }
    }
    out
}
