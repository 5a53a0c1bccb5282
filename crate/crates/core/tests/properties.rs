use abck::d6::{decompose, inflate_pair, par_hat, reassemble, PairM, PolyhedronRow};
use abck::geometry::{barycentric, tetra_volume};
use abck::h3::IcosahedralGroup;
use abck::tiles::canonical_tile;
use abck::{D6Vector, GMat3, GVec3, Golden, Motion, TileKind};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn golden() -> impl Strategy<Value = Golden> {
    (-200i64..200, 1i64..12, -200i64..200, 1i64..12).prop_map(|(a, da, b, db)| Golden::frac(a, da, b, db))
}

fn pair() -> impl Strategy<Value = PairM> {
    (-6i64..6, -6i64..6).prop_map(|(a, b)| PairM::new(a, b + (a + b).rem_euclid(2)).unwrap())
}

fn group_element() -> impl Strategy<Value = GMat3> {
    (0usize..120).prop_map(|i| IcosahedralGroup::get().matrices().nth(i).unwrap().clone())
}

fn gvec() -> impl Strategy<Value = GVec3> {
    (golden(), golden(), golden()).prop_map(|(x, y, z)| GVec3::new(x, y, z))
}

/// Sign of `a + bτ` from a 40-digit fixed-point value of √5.
fn sign_oracle(a: &BigRational, b: &BigRational) -> i8 {
    let scale = BigInt::from(10).pow(40);
    let sqrt5 = (BigInt::from(5) * &scale * &scale).sqrt();
    // 2(a + bτ) = 2a + b + b√5, cleared of denominators
    let (an, bn) = (a.numer() * b.denom(), b.numer() * a.denom());
    let val = (BigInt::from(2) * &an + &bn) * &scale + &bn * &sqrt5;
    if val.is_positive() {
        1
    } else if val.is_negative() {
        -1
    } else {
        0
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(x in golden(), y in golden(), z in golden()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, Golden::zero());
        prop_assert_eq!(&x * &Golden::one(), x.clone());
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.inv().unwrap(), Golden::one());
        }
    }

    #[test]
    fn conjugation_is_a_homomorphism(x in golden(), y in golden()) {
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(Golden::rational(x.norm()), &x * &x.conj());
    }

    #[test]
    fn order_is_compatible(x in golden(), y in golden(), z in golden()) {
        if x < y {
            prop_assert!(&x + &z < &y + &z);
        }
        prop_assert_eq!((&x * &y).signum(), x.signum() * y.signum());
    }

    #[test]
    fn tau_pow_semigroup(m in -20i64..=20, n in -20i64..=20) {
        prop_assert_eq!(&Golden::tau_pow(m) * &Golden::tau_pow(n), Golden::tau_pow(m + n));
    }

    #[test]
    fn inflate_pair_semigroup(p in pair(), m in -8i64..=8, n in -8i64..=8) {
        prop_assert_eq!(inflate_pair(inflate_pair(p, m), n), inflate_pair(p, m + n));
        prop_assert_eq!(inflate_pair(p, n).c_golden(), &p.c_golden() * &Golden::tau_pow(n));
        let q = inflate_pair(p, n);
        prop_assert_eq!((q.m1() + q.m2()).rem_euclid(2), 0);
    }

    #[test]
    fn volume_is_invariant_under_motions(g in group_element(), t in gvec(), k in 0usize..4) {
        let kind = TileKind::ALL[k];
        let m = Motion::new(g.clone(), t).unwrap();
        let moved = canonical_tile(kind).clone().map(|p| m.apply(&p));
        let v0 = tetra_volume(canonical_tile(kind));
        let v1 = tetra_volume(&moved);
        prop_assert_eq!(v1.abs(), v0.abs());
        prop_assert_eq!(v1.signum() * v0.signum(), g.det().signum());
    }

    #[test]
    fn barycentric_weights_sum_to_one(p in gvec(), k in 0usize..4) {
        let w = barycentric(&p, canonical_tile(TileKind::ALL[k])).unwrap();
        prop_assert_eq!(w.iter().sum::<Golden>(), Golden::one());
    }

    #[test]
    fn decompose_reassemble(m in prop::array::uniform6(-30i64..30)) {
        let v = D6Vector::from_ints(m);
        let (c, hat) = decompose(&v);
        prop_assert_eq!(reassemble(&c, &hat), Some(v));
    }

    #[test]
    fn projection_is_linear(a in prop::array::uniform6(-9i64..9), b in prop::array::uniform6(-9i64..9), k in -5i64..5) {
        let (u, v) = (D6Vector::from_ints(a), D6Vector::from_ints(b));
        prop_assert_eq!(par_hat(&(&u + &v.scale_int(k))), &par_hat(&u) + &par_hat(&v).scale(&Golden::from(k)));
    }
}

#[test]
fn sign_matches_fixed_point_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10_000 {
        let (a, b) = (rng.gen_range(-1_000_000i64..1_000_000), rng.gen_range(-1_000_000i64..1_000_000));
        let (da, db) = (rng.gen_range(1i64..50), rng.gen_range(1i64..50));
        let x = Golden::frac(a, da, b, db);
        assert_eq!(x.signum(), sign_oracle(x.a(), x.b()), "{x}");
    }
    // values close to zero: Fibonacci convergents of τ
    for n in 2..40 {
        let x = Golden::tau_pow(-n);
        assert_eq!(x.signum(), sign_oracle(x.a(), x.b()));
        assert_eq!((-x.clone()).signum(), -1);
    }
}

#[test]
fn l_form_matches_omega_form_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let m1 = rng.gen_range(-20i64..20);
        let m2 = rng.gen_range(-10i64..10) * 2 + m1.rem_euclid(2);
        let p = PairM::new(m1, m2).unwrap();
        for row in PolyhedronRow::ALL {
            assert_eq!(row.l_form(p), row.omega_form(p), "{row} {p}");
            assert_eq!(par_hat(&row.l_form(p)), row.seed().scale(&p.c_golden()), "{row} {p}");
        }
    }
}
