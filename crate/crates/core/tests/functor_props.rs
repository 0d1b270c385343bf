use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetrep::functors::{coinduce, induce, phi, psi, restrict_to};
use posetrep::linalg::{Matrix, PrimeField, Rationals, Subspace};
use posetrep::poset::Poset;
use posetrep::random::{random_morphism, random_poset, random_sspace};
use posetrep::sspace::{hom_space, SMorphism, SSpace};
use posetrep::verify::right_minimal_by_search;

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn poset(rng: &mut ChaCha8Rng, max: usize) -> Arc<Poset> {
    let n = rng.gen_range(1..=max);
    let d = rng.gen_range(0.1..0.6);
    Arc::new(random_poset(rng, n, d))
}

fn sub_of(rng: &mut ChaCha8Rng, s: &Poset) -> Arc<Poset> {
    let idx: Vec<usize> = s.elements().filter(|_| rng.gen_bool(0.6)).collect();
    Arc::new(s.restrict(&idx).unwrap())
}

fn maps_into(m: &Matrix<PrimeField>, from: &Subspace<PrimeField>, to: &Subspace<PrimeField>) -> bool {
    from.basis_vectors().iter().all(|u| to.contains(&m.apply(u)))
}

/// `|Hom(U, V)|` over F2 by enumerating every matrix.
fn hom_count_f2(u: &SSpace<PrimeField>, v: &SSpace<PrimeField>) -> u64 {
    let (rows, cols) = (v.dim(), u.dim());
    let f = f2();
    (0u64..1 << (rows * cols))
        .filter(|mask| {
            let m = Matrix::from_fn(&f, rows, cols, |i, j| (mask >> (i * cols + j) & 1) as u32);
            u.poset().elements().all(|s| maps_into(&m, u.space(s), v.space(s)))
        })
        .count() as u64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hom_solver_matches_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = poset(&mut r, 5);
        let (a, b) = (r.gen_range(0..=3), r.gen_range(0..=3));
        let u = random_sspace(&mut r, s.clone(), f2(), a);
        let v = random_sspace(&mut r, s, f2(), b);
        prop_assert_eq!(1u64 << hom_space(&u, &v).unwrap().dim(), hom_count_f2(&u, &v));
    }

    #[test]
    fn adjunctions_by_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = poset(&mut r, 5);
        let sub = sub_of(&mut r, &s);
        let (a, b) = (r.gen_range(0..=3), r.gen_range(0..=3));
        let u = random_sspace(&mut r, sub.clone(), f2(), a);
        let w = random_sspace(&mut r, s.clone(), f2(), b);
        let res_w = restrict_to(&w, &sub).unwrap();
        prop_assert_eq!(hom_count_f2(&induce(&u, &s).unwrap(), &w), hom_count_f2(&u, &res_w));
        prop_assert_eq!(hom_count_f2(&w, &coinduce(&u, &s).unwrap()), hom_count_f2(&res_w, &u));
    }

    #[test]
    fn duality_is_involutive_and_reverses_hom(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = poset(&mut r, 6);
        let (a, b) = (r.gen_range(0..=4), r.gen_range(0..=4));
        let u = random_sspace(&mut r, s.clone(), Rationals, a);
        let v = random_sspace(&mut r, s, Rationals, b);
        prop_assert_eq!(u.dualize().dualize(), u.clone());
        let h = hom_space(&u, &v).unwrap().dim();
        prop_assert_eq!(hom_space(&v.dualize(), &u.dualize()).unwrap().dim(), h);
        let f = random_morphism(&mut r, &u, &v).unwrap();
        prop_assert_eq!(f.dualize().dualize(), f);
    }

    #[test]
    fn e_functors_full_and_trivial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = poset(&mut r, 6);
        let d = r.gen_range(0..=4);
        let v = random_sspace(&mut r, s.clone(), Rationals, d);
        for p in s.elements() {
            let (sub, inc) = v.e_sub(p);
            let (quot, proj) = v.e_quot(p);
            prop_assert!(sub.is_full_at(p) && inc.is_mono() && inc.is_proper());
            prop_assert!(quot.is_trivial_at(p) && proj.is_epi() && proj.is_proper());
            prop_assert_eq!(sub.dim() + quot.dim(), v.dim());
        }
    }

    #[test]
    fn minimality_agrees_with_search(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = poset(&mut r, 5);
        let (a, b) = (r.gen_range(0..=3), r.gen_range(0..=3));
        let u = random_sspace(&mut r, s.clone(), f2(), a);
        let v = random_sspace(&mut r, s, f2(), b);
        let f = random_morphism(&mut r, &u, &v).unwrap();
        if let Some(verdict) = right_minimal_by_search(&f, seed).unwrap() {
            prop_assert_eq!(f.is_right_minimal(), verdict);
        }
        if let Some(verdict) = right_minimal_by_search(&f.dualize(), seed).unwrap() {
            prop_assert_eq!(f.is_left_minimal(), verdict);
        }
    }

    #[test]
    fn psi_phi_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = poset(&mut r, 6);
        let d = r.gen_range(0..=4);
        let v = random_sspace(&mut r, s, Rationals, d);
        let m = psi(&v);
        prop_assert!(m.is_socle_projective());
        prop_assert_eq!(phi(&m).unwrap(), v);
    }
}

#[test]
fn sum_with_idempotent_is_not_right_minimal() {
    // id ⊕ 0 : K ⊕ K -> K ⊕ 0 factors with the idempotent e = id ⊕ 0
    let s = Arc::new(Poset::chain(&["s"]).unwrap());
    let k = SSpace::simple_lower(s.clone(), f2(), &[0]).unwrap();
    let kk = k.direct_sum(&k).unwrap();
    let f = SMorphism::new(kk, k, Matrix::from_i64(&f2(), &[&[1, 0]])).unwrap();
    assert!(!f.is_right_minimal());
    assert_eq!(right_minimal_by_search(&f, 0).unwrap(), Some(false));
}
