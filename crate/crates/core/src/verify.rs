//! The randomized invariant suite behind `posetrep verify`.
//!
//! Every check draws a fresh seeded instance per case. Cases alternate
//! between `F_5` and `Q` unless the check is tied to a field.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::differentiation::{
    applicable, derive_poset, diff_morphism, diff_morphism_composite, diff_space, diff_space_composite,
    dual_correspondence, nu_count, phi_iso, quotient_hom_dim, DerivedPoset, DiffMode, Strategy,
};
use crate::error::{Error, Result};
use crate::functors::{
    coinduce, colift_along_filter, decompose_injective, decompose_projective, induce, injective_envelope,
    lift_along_ideal, phi, projective_cover, psi, restrict, restrict_to, semisimple_decompose,
    semisimple_decompose_flags, IncidenceRep,
};
use crate::linalg::{Field, Matrix, PrimeField, Rationals};
use crate::oracle::{decompose, EnumConfig, Oracle, DEFAULT_END_CAP};
use crate::par::Execution;
use crate::poset::{Poset, SemilatticeMode};
use crate::random::{random_morphism, random_poset, random_poset_of_width, random_sspace, small_scalar};
use crate::search_budget;
use crate::sspace::{are_isomorphic, hom_space, IsoOutcome, SMorphism, SSpace};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_517;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(Error::Mismatch(format!($($msg)+)));
        }
    };
}

type Rng8 = ChaCha8Rng;

/// A named property checked on one random instance per case.
#[derive(Clone, Copy)]
pub struct Check {
    pub name: &'static str,
    pub run: fn(&mut Rng8, usize) -> Result<()>,
}

macro_rules! by_field {
    ($f:ident) => {
        |rng: &mut Rng8, case: usize| {
            if case % 2 == 0 {
                $f(rng, PrimeField::new(5).expect("5 is prime"))
            } else {
                $f(rng, Rationals)
            }
        }
    };
}

fn subset(rng: &mut Rng8, items: &[usize], p: f64) -> Vec<usize> {
    items.iter().copied().filter(|_| rng.gen_bool(p)).collect()
}

fn any_poset(rng: &mut Rng8) -> Arc<Poset> {
    let n = rng.gen_range(1..=6);
    let density = rng.gen_range(0.15..0.6);
    Arc::new(random_poset(rng, n, density))
}

fn any_dim(rng: &mut Rng8) -> usize {
    rng.gen_range(0..=4)
}

fn any_space<F: Field>(rng: &mut Rng8, s: Arc<Poset>, field: F) -> SSpace<F> {
    let dim = any_dim(rng);
    random_sspace(rng, s, field, dim)
}

/// A random poset with an applicable point in the requested mode (or any
/// mode when `None`), and that derivation.
pub fn applicable_instance(rng: &mut Rng8, mode: Option<DiffMode>) -> DerivedPoset {
    loop {
        let s = any_poset(rng);
        let mut opts: Vec<(usize, DiffMode)> = s
            .elements()
            .flat_map(|p| [(p, DiffMode::Filter), (p, DiffMode::Ideal)])
            .filter(|&(p, m)| mode.is_none_or(|want| want == m) && applicable(&s, p, m).is_ok())
            .collect();
        opts.shuffle(rng);
        if let Some(&(p, m)) = opts.first() {
            return derive_poset(&s, p, m).expect("applicable");
        }
    }
}

fn res_ind_identity<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let all: Vec<usize> = s.elements().collect();
    let r = Arc::new(s.restrict(&subset(rng, &all, 0.6))?);
    let u = any_space(rng, r.clone(), field);
    ensure!(restrict_to(&induce(&u, &s)?, &r)? == u, "res ind U != U");
    ensure!(restrict_to(&coinduce(&u, &s)?, &r)? == u, "res coind U != U");
    Ok(())
}

fn res_composition<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let all: Vec<usize> = s.elements().collect();
    let t_idx = subset(rng, &all, 0.7);
    let r_idx = subset(rng, &t_idx, 0.6);
    let t = Arc::new(s.restrict(&t_idx)?);
    let r = Arc::new(s.restrict(&r_idx)?);
    let v = any_space(rng, s.clone(), field);
    ensure!(restrict_to(&restrict_to(&v, &t)?, &r)? == restrict_to(&v, &r)?, "res_R res_T != res_R");
    ensure!(restrict(&v, &all)? == v, "res_S != id");
    Ok(())
}

/// `(S∖T) ∪ â(T)` and the indices of `â(T)` inside it.
fn carrier_over(s: &Poset, t_idx: &[usize]) -> Result<(Arc<Poset>, Arc<Poset>)> {
    let rest = s.complement(t_idx);
    let carrier = s.derived_carrier(&rest, SemilatticeMode::Meet)?;
    let inside: Vec<usize> = carrier
        .origin
        .iter()
        .enumerate()
        .filter(|(_, d)| d.members().iter().all(|m| t_idx.contains(m)))
        .map(|(i, _)| i)
        .collect();
    let sub = Arc::new(carrier.poset.restrict(&inside)?);
    Ok((Arc::new(carrier.poset), sub))
}

fn carrier_composite<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let all: Vec<usize> = s.elements().collect();
    let t_idx = subset(rng, &all, 0.6);
    let t = Arc::new(s.restrict(&t_idx)?);
    let (carrier, sub) = carrier_over(&s, &t_idx)?;
    let a_t = Arc::new(t.antichain_semilattice(SemilatticeMode::Meet, true).poset);
    let v = any_space(rng, s.clone(), field);
    let left = restrict_to(&coinduce(&v, &carrier)?, &sub)?;
    let right = coinduce(&restrict_to(&v, &t)?, &a_t)?;
    ensure!(left.transport(a_t.clone())? == right, "res coind on the carrier differs from coind res");
    Ok(())
}

fn same_hom<F: Field>(a: (&SSpace<F>, &SSpace<F>), b: (&SSpace<F>, &SSpace<F>)) -> Result<()> {
    let ha = hom_space(a.0, a.1)?;
    let hb = hom_space(b.0, b.1)?;
    ensure!(ha.dim() == hb.dim(), "Hom dimensions {} and {}", ha.dim(), hb.dim());
    for m in ha.basis() {
        ensure!(SMorphism::new(b.0.clone(), b.1.clone(), m.clone()).is_ok(), "matrix valid on one side only");
    }
    Ok(())
}

fn adjunction<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let all: Vec<usize> = s.elements().collect();
    let r = Arc::new(s.restrict(&subset(rng, &all, 0.6))?);
    let u = any_space(rng, r.clone(), field.clone());
    let w = any_space(rng, s.clone(), field);
    let res_w = restrict_to(&w, &r)?;
    same_hom((&induce(&u, &s)?, &w), (&u, &res_w))?;
    same_hom((&w, &coinduce(&u, &s)?), (&res_w, &u))?;
    Ok(())
}

fn fully_faithful<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let all: Vec<usize> = s.elements().collect();
    let r = Arc::new(s.restrict(&subset(rng, &all, 0.6))?);
    let u = any_space(rng, r.clone(), field.clone());
    let v = any_space(rng, r.clone(), field);
    let d = hom_space(&u, &v)?.dim();
    ensure!(hom_space(&induce(&u, &s)?, &induce(&v, &s)?)?.dim() == d, "ind is not fully faithful");
    ensure!(hom_space(&coinduce(&u, &s)?, &coinduce(&v, &s)?)?.dim() == d, "coind is not fully faithful");
    Ok(())
}

fn duality_squares<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let all: Vec<usize> = s.elements().collect();
    let r = Arc::new(s.restrict(&subset(rng, &all, 0.6))?);
    let s_op = Arc::new(s.opposite());
    let r_op = Arc::new(r.opposite());
    let v = any_space(rng, s.clone(), field.clone());
    ensure!(
        restrict_to(&v, &r)?.dualize_over(r_op.clone()) == restrict_to(&v.dualize_over(s_op.clone()), &r_op)?,
        "D res != res D"
    );
    let u = any_space(rng, r.clone(), field);
    let du = u.dualize_over(r_op);
    ensure!(induce(&u, &s)?.dualize_over(s_op.clone()) == coinduce(&du, &s_op)?, "D ind != coind D");
    ensure!(coinduce(&u, &s)?.dualize_over(s_op.clone()) == induce(&du, &s_op)?, "D coind != ind D");
    Ok(())
}

fn diff_dual_implementation<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let d = applicable_instance(rng, None);
    let u = any_space(rng, d.base.clone(), field.clone());
    let v = any_space(rng, d.base.clone(), field);
    ensure!(diff_space(&u, &d)? == diff_space_composite(&u, &d)?, "direct and composite differ ({} mode)", d.mode);
    let f = random_morphism(rng, &u, &v)?;
    let a = diff_morphism(&f, &d)?;
    let b = diff_morphism_composite(&f, &d)?;
    ensure!(a == b, "direct and composite differ on a morphism ({} mode)", d.mode);
    Ok(())
}

fn hom_quotient_law<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let d = applicable_instance(rng, None);
    let u = any_space(rng, d.base.clone(), field.clone());
    let v = any_space(rng, d.base.clone(), field);
    let lhs = hom_space(&diff_space(&u, &d)?, &diff_space(&v, &d)?)?.dim();
    let rhs = quotient_hom_dim(&u, &v, &d)?;
    ensure!(lhs == rhs, "dim Hom(FU, FV) = {lhs}, quotient = {rhs} ({} mode)", d.mode);
    Ok(())
}

fn phi_naturality<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let op = Arc::new(s.opposite());
    let p = rng.gen_range(0..s.len());
    let u = any_space(rng, s.clone(), field.clone());
    let v = any_space(rng, s.clone(), field);
    let phi_u = phi_iso(&u, p, &op)?;
    let phi_v = phi_iso(&v, p, &op)?;
    ensure!(phi_u.is_iso() && phi_v.is_iso(), "phi is not an isomorphism");
    let f = random_morphism(rng, &u, &v)?;
    let d_ep = f.e_quot(p).dualize_over(op.clone());
    let ep_d = f.dualize_over(op).e_sub(p);
    ensure!(phi_u.compose(&d_ep)? == ep_d.compose(&phi_v)?, "naturality square fails");
    Ok(())
}

fn minmax<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let d = applicable_instance(rng, Some(DiffMode::Filter));
    let op = Arc::new(d.base.opposite());
    let e = derive_poset(&op, d.point, DiffMode::Ideal)?;
    let map = dual_correspondence(&d, &e)?;
    for i in e.result.elements() {
        for j in e.result.elements() {
            ensure!(e.result.leq(i, j) == d.result.leq(map[j], map[i]), "derived posets are not opposite");
        }
    }
    let v = any_space(rng, d.base.clone(), field);
    let left = diff_space(&v, &d)?.dualize().reindexed(e.result.clone(), &map)?;
    let right = diff_space(&v.dualize_over(op), &e)?;
    match are_isomorphic(&left, &right, rng.gen())? {
        IsoOutcome::Isomorphic(_) => Ok(()),
        other => Err(Error::Mismatch(format!("D F V and F' D V: {other:?}"))),
    }
}

fn additivity<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let d = applicable_instance(rng, None);
    let u = any_space(rng, d.base.clone(), field.clone());
    let v = any_space(rng, d.base.clone(), field);
    let lhs = diff_space(&u.direct_sum(&v)?, &d)?;
    let rhs = diff_space(&u, &d)?.direct_sum(&diff_space(&v, &d)?)?;
    ensure!(lhs == rhs, "F(U+V) != FU + FV");
    Ok(())
}

fn projectivization<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let n = rng.gen_range(1..=6);
    let density = rng.gen_range(0.2..0.6);
    let s = Arc::new(random_poset_of_width(rng, n, 2, density));
    let a = Arc::new(s.antichain_semilattice(SemilatticeMode::Meet, true).poset);
    let v = any_space(rng, s.clone(), field);
    let w = coinduce(&v, &a)?;
    ensure!(decompose_projective(&w)?.is_some(), "coind V is not projective over the antichain semilattice");
    ensure!(coinduce(&restrict_to(&w, &s)?, &a)? == w, "W != coind res W");
    Ok(())
}

fn pr3_fixed_points<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let all: Vec<usize> = s.elements().collect();
    let t_idx = loop {
        let t = subset(rng, &all, 0.6);
        if s.width_of(&t) <= 2 {
            break t;
        }
    };
    let t = Arc::new(s.restrict(&t_idx)?);
    let (carrier, sub) = carrier_over(&s, &t_idx)?;
    let v = any_space(rng, s.clone(), field);
    let w = restrict_to(&coinduce(&v, &carrier)?, &sub)?;
    ensure!(decompose_projective(&w)?.is_some(), "res coind V is not projective");
    ensure!(coinduce(&restrict_to(&w, &t)?, &sub)? == w, "coind res W != W");
    Ok(())
}

fn psi_phi<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let v = any_space(rng, s.clone(), field.clone());
    let m = psi(&v);
    ensure!(m.is_socle_projective(), "psi V is not socle-projective");
    ensure!(phi(&m)? == v, "phi psi V != V");
    // a module with a nonzero M_t killed on the way to ω
    let top = m.poset().clone();
    let n = top.len();
    let t = s.maximal(&s.elements().collect::<Vec<_>>())[0];
    let omega = n - 1;
    let wdim = rng.gen_range(0..=2);
    let dims: Vec<usize> = (0..n).map(|x| if x == t { 1 } else if x == omega { wdim } else { 0 }).collect();
    let maps = (0..n * n)
        .map(|k| {
            let (a, b) = (k / n, k % n);
            top.leq(a, b).then(|| {
                if a == b {
                    Matrix::identity(&field, dims[a])
                } else {
                    Matrix::zeros(&field, dims[b], dims[a])
                }
            })
        })
        .collect();
    let bad = IncidenceRep::new(top, field, dims, maps)?;
    ensure!(!bad.is_socle_projective(), "a module with M_t -> M_omega zero passed");
    Ok(())
}

/// Budgeted check of right minimality: every `h` with `f h = f` must be
/// invertible. `Some` is a verdict, `None` means the budget ran out.
pub fn right_minimal_by_search<F: Field>(f: &SMorphism<F>, seed: u64) -> Result<Option<bool>> {
    let u = f.source();
    let n = u.dim();
    let field = u.field();
    let end = hom_space(u, u)?;
    // coefficients c with f * Σ c_i B_i = 0
    let cols: Vec<Vec<F::Elem>> = end.basis().iter().map(|b| f.matrix().mul(b).map(|m| m.entries().to_vec())).collect::<Result<_>>()?;
    let rows = f.target().dim() * n;
    let a = Matrix::from_fn(field, rows, cols.len(), |i, j| cols[j][i].clone());
    let ker = a.kernel().basis_vectors();
    let ideal: Vec<Matrix<F>> = ker.iter().map(|c| end.combination(c)).collect();
    let k = ideal.len();
    let id = Matrix::identity(field, n);
    let candidate = |c: &[F::Elem]| {
        let mut h = id.clone();
        for (ci, m) in c.iter().zip(&ideal) {
            h = h.add(&m.scale(ci)).expect("square");
        }
        h
    };
    if let Some(q) = field.size() {
        if let Some(total) = q.checked_pow(k as u32).filter(|&t| t <= search_budget()) {
            for mut idx in 0..total {
                let c: Vec<F::Elem> = (0..k)
                    .map(|_| {
                        let e = field.nth_elem(idx % q);
                        idx /= q;
                        e
                    })
                    .collect();
                if !candidate(&c).is_invertible() {
                    return Ok(Some(false));
                }
            }
            return Ok(Some(true));
        }
    }
    let mut rng = Rng8::seed_from_u64(seed);
    for _ in 0..200 {
        let c: Vec<F::Elem> = (0..k).map(|_| small_scalar(field, &mut rng)).collect();
        if !candidate(&c).is_invertible() {
            return Ok(Some(false));
        }
    }
    Ok(None)
}

fn cover_and_envelope<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let dim = rng.gen_range(0..=3);
    let v = random_sspace(rng, s, field, dim);
    let (p, f) = projective_cover(&v)?;
    ensure!(f.is_epi() && f.is_proper(), "cover is not a proper epi");
    ensure!(f.is_right_minimal(), "cover is not right minimal");
    ensure!(decompose_projective(&p)?.is_some(), "cover source is not projective");
    if let Some(verdict) = right_minimal_by_search(&f, rng.gen())? {
        ensure!(verdict, "search found a non-invertible h with f h = f");
    }
    let (i, g) = injective_envelope(&v)?;
    ensure!(g.is_mono() && g.is_proper() && g.is_left_minimal(), "envelope is not a left minimal proper mono");
    ensure!(decompose_injective(&i)?.is_some(), "envelope target is not injective");
    Ok(())
}

fn semisimple_width_two<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let n = rng.gen_range(1..=6);
    let density = rng.gen_range(0.2..0.6);
    let s = Arc::new(random_poset_of_width(rng, n, 2, density));
    let v = any_space(rng, s, field);
    let a = semisimple_decompose(&v)?.ok_or_else(|| Error::Mismatch("width-two space not semisimple".into()))?;
    let b = semisimple_decompose_flags(&v)?;
    ensure!(a.multiplicities == b.multiplicities, "greedy and two-flag decompositions disagree");
    ensure!(a.multiplicities.iter().map(|(_, k)| k).sum::<usize>() == v.dim(), "multiplicities do not add up");
    Ok(())
}

fn simple_restriction<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let all: Vec<usize> = s.elements().collect();
    let antichains = s.antichains(false);
    let a = antichains.choose(rng).expect("the empty antichain exists");
    let r_idx = subset(rng, &all, 0.6);
    let r = Arc::new(s.restrict(&r_idx)?);
    let k = SSpace::simple_lower(s.clone(), field.clone(), a.members())?;
    let up = s.generated_filter(a.members())?;
    let within: Vec<usize> = r_idx.iter().copied().filter(|x| up.contains(x)).collect();
    let min: Vec<usize> = s.minimal(&within).iter().map(|&x| r_idx.iter().position(|&y| y == x).expect("in R")).collect();
    ensure!(restrict_to(&k, &r)? == SSpace::simple_lower(r, field, &min)?, "res k_A != k_min");
    Ok(())
}

fn lift_and_colift<F: Field>(rng: &mut Rng8, field: F) -> Result<()> {
    let s = any_poset(rng);
    let all: Vec<usize> = s.elements().collect();
    let seed_set = subset(rng, &all, 0.4);
    let v = any_space(rng, s.clone(), field.clone());

    let r_idx = s.generated_ideal(&seed_set)?;
    let r = Arc::new(s.restrict(&r_idx)?);
    let u = any_space(rng, r.clone(), field.clone());
    let f = random_morphism(rng, &u, &restrict_to(&v, &r)?)?;
    let (x, fh) = lift_along_ideal(&f, &v)?;
    ensure!(restrict_to(&x, &r)? == u, "res U_f != U");
    ensure!(f.is_proper() == fh.is_proper(), "properness does not transfer to the lift");
    ensure!(f.is_iso() == fh.is_iso(), "isomorphism does not transfer to the lift");
    ensure!(f.is_right_minimal() == fh.is_right_minimal(), "right minimality does not transfer to the lift");

    let j_idx = s.generated_filter(&seed_set)?;
    let j = Arc::new(s.restrict(&j_idx)?);
    let w = any_space(rng, j.clone(), field);
    let g = random_morphism(rng, &restrict_to(&v, &j)?, &w)?;
    let (y, gc) = colift_along_filter(&g, &v)?;
    ensure!(restrict_to(&y, &j)? == w, "res V^g != W");
    ensure!(g.is_proper() == gc.is_proper(), "properness does not transfer to the colift");
    ensure!(g.is_iso() == gc.is_iso(), "isomorphism does not transfer to the colift");
    ensure!(g.is_left_minimal() == gc.is_left_minimal(), "left minimality does not transfer to the colift");
    Ok(())
}

fn krull_schmidt(rng: &mut Rng8, _case: usize) -> Result<()> {
    let n = rng.gen_range(1..=4);
    let s = Arc::new(random_poset(rng, n, 0.4));
    let dim = rng.gen_range(1..=3);
    let f2 = PrimeField::new(2)?;
    let v = random_sspace(rng, s.clone(), f2, dim);
    let oracle = Oracle::new(s.clone(), EnumConfig::new(2, dim))?;
    let keys = |parts: &[SSpace<PrimeField>]| -> Result<Vec<(usize, Vec<u32>)>> {
        let mut k: Vec<(usize, Vec<u32>)> = parts.iter().map(|w| Ok((w.dim(), oracle.canonical_key(w)?))).collect::<Result<_>>()?;
        k.sort();
        Ok(k)
    };
    let a = decompose(&v, DEFAULT_END_CAP, rng.gen())?;
    let b = decompose(&v, DEFAULT_END_CAP, rng.gen())?;
    ensure!(keys(&a)? == keys(&b)?, "summand multisets depend on the splitting order");
    let sum = SSpace::direct_sum_all(s, f2, &a)?;
    ensure!(oracle.canonical_key(&sum)? == oracle.canonical_key(&v)?, "sum of summands is not isomorphic to V");
    Ok(())
}

fn path_independence(rng: &mut Rng8, _case: usize) -> Result<()> {
    let n = rng.gen_range(3..=6);
    let density = rng.gen_range(0.1..0.4);
    let s = Arc::new(random_poset(rng, n, density));
    let t = nu_count(&s, Strategy::AllPaths);
    ensure!(t.is_path_independent(), "terminating paths disagree: {:?}", t.path_values);
    Ok(())
}

/// All checks in suite order.
pub fn checks() -> Vec<Check> {
    vec![
        Check { name: "res-ind-coind-identity", run: by_field!(res_ind_identity) },
        Check { name: "res-composition", run: by_field!(res_composition) },
        Check { name: "carrier-composite", run: by_field!(carrier_composite) },
        Check { name: "adjunction-hom", run: by_field!(adjunction) },
        Check { name: "fully-faithful", run: by_field!(fully_faithful) },
        Check { name: "duality-squares", run: by_field!(duality_squares) },
        Check { name: "diff-direct-vs-composite", run: by_field!(diff_dual_implementation) },
        Check { name: "hom-quotient-law", run: by_field!(hom_quotient_law) },
        Check { name: "phi-naturality", run: by_field!(phi_naturality) },
        Check { name: "minmax-duality", run: by_field!(minmax) },
        Check { name: "diff-additivity", run: by_field!(additivity) },
        Check { name: "projectivization", run: by_field!(projectivization) },
        Check { name: "pr3-fixed-points", run: by_field!(pr3_fixed_points) },
        Check { name: "psi-phi", run: by_field!(psi_phi) },
        Check { name: "cover-envelope", run: by_field!(cover_and_envelope) },
        Check { name: "semisimple-width2", run: by_field!(semisimple_width_two) },
        Check { name: "simple-restriction", run: by_field!(simple_restriction) },
        Check { name: "lift-colift", run: by_field!(lift_and_colift) },
        Check { name: "krull-schmidt", run: krull_schmidt },
        Check { name: "path-independence", run: path_independence },
    ]
}

pub fn find_check(name: &str) -> Option<Check> {
    checks().into_iter().find(|c| c.name == name)
}

fn case_seed(seed: u64, check: &str, case: usize) -> u64 {
    let mut h: u64 = seed ^ 0x9e37_79b9_7f4a_7c15;
    for b in check.bytes().chain((case as u64).to_le_bytes()) {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Outcome of one check over all cases.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    /// `(case, message)` of each failing case.
    pub failures: Vec<(usize, String)>,
}

/// Runs `check` on `cases` instances derived from `seed`.
pub fn run_check(check: &Check, seed: u64, cases: usize, execution: Execution) -> CheckReport {
    let idx: Vec<usize> = (0..cases).collect();
    let results = execution.map(&idx, |&i| {
        let mut rng = Rng8::seed_from_u64(case_seed(seed, check.name, i));
        (check.run)(&mut rng, i)
    });
    let failures = results
        .into_iter()
        .enumerate()
        .filter_map(|(i, r)| r.err().map(|e| (i, e.to_string())))
        .collect();
    CheckReport {
        name: check.name,
        cases,
        failures,
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }

    /// One line per check, failing cases indented beneath it (at most five
    /// per check), then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed={}", self.seed);
        let mut failed: BTreeMap<&str, usize> = BTreeMap::new();
        for c in &self.checks {
            let ok = c.cases - c.failures.len();
            let _ = writeln!(out, "{}: {ok}/{} passed", c.name, c.cases);
            for (i, m) in c.failures.iter().take(5) {
                let _ = writeln!(out, "  case {i}: {m}");
            }
            if !c.failures.is_empty() {
                failed.insert(c.name, c.failures.len());
            }
        }
        if failed.is_empty() {
            let _ = writeln!(out, "verify: all {} checks passed", self.checks.len());
        } else {
            let _ = writeln!(out, "verify: {} checks failed", failed.len());
        }
        out
    }
}

/// The whole suite.
pub fn run_suite(seed: u64, cases: usize, execution: Execution) -> SuiteReport {
    SuiteReport {
        seed,
        checks: checks().iter().map(|c| run_check(c, seed, cases, execution)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes_a_few_cases() {
        let r = run_suite(DEFAULT_SEED, 6, Execution::Parallel);
        assert!(r.passed(), "{}", r.render());
    }

    #[test]
    fn suite_is_deterministic() {
        let a = run_suite(5, 3, Execution::Parallel).render();
        let b = run_suite(5, 3, Execution::Sequential).render();
        assert_eq!(a, b);
    }
}
