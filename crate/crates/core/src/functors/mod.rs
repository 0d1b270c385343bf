//! Restriction, induction and coinduction between posets, the lifting
//! constructions along ideals and filters, the bridge to incidence-algebra
//! modules, and projective/semisimple decompositions.

mod incidence;
mod projective;
mod semisimple;

use std::sync::Arc;

pub use incidence::{phi, psi, IncidenceRep};
pub use projective::{
    decompose_injective, decompose_projective, injective_envelope, projective_cover, ProjectiveDecomposition,
};
pub use semisimple::{semisimple_decompose, semisimple_decompose_flags, SemisimpleDecomposition};

use crate::error::{Error, Result};
use crate::linalg::{Field, Subspace};
use crate::poset::Poset;
use crate::sspace::{SMorphism, SSpace};

/// `res^S_R V` for `R` given as a subposet (matched by label).
pub fn restrict_to<F: Field>(v: &SSpace<F>, sub: &Arc<Poset>) -> Result<SSpace<F>> {
    let map = sub.embedding_into(v.poset())?;
    let spaces = map.iter().map(|&i| v.space(i).clone()).collect();
    SSpace::new(sub.clone(), v.field().clone(), v.dim(), spaces)
}

/// `res^S_R V` for `R` given as element indices of `S`.
pub fn restrict<F: Field>(v: &SSpace<F>, r: &[usize]) -> Result<SSpace<F>> {
    let sub = Arc::new(v.poset().restrict(r)?);
    restrict_to(v, &sub)
}

/// `ind^S_R V`: `X(s) = Σ_{r∈R, r≤s} V(r)`.
pub fn induce<F: Field>(v: &SSpace<F>, host: &Arc<Poset>) -> Result<SSpace<F>> {
    let map = v.poset().embedding_into(host)?;
    SSpace::from_fn(host.clone(), v.field().clone(), v.dim(), |s| {
        let below: Vec<usize> = map.iter().enumerate().filter(|&(_, &h)| host.leq(h, s)).map(|(r, _)| r).collect();
        v.join_space(&below)
    })
}

/// `coind^S_R V`: `X(s) = ∩_{r∈R, s≤r} V(r)`, the whole space when empty.
pub fn coinduce<F: Field>(v: &SSpace<F>, host: &Arc<Poset>) -> Result<SSpace<F>> {
    let map = v.poset().embedding_into(host)?;
    SSpace::from_fn(host.clone(), v.field().clone(), v.dim(), |s| {
        let above: Vec<usize> = map.iter().enumerate().filter(|&(_, &h)| host.leq(s, h)).map(|(r, _)| r).collect();
        v.meet_space(&above)
    })
}

pub fn restrict_morphism<F: Field>(f: &SMorphism<F>, sub: &Arc<Poset>) -> Result<SMorphism<F>> {
    SMorphism::new(restrict_to(f.source(), sub)?, restrict_to(f.target(), sub)?, f.matrix().clone())
}

pub fn induce_morphism<F: Field>(f: &SMorphism<F>, host: &Arc<Poset>) -> Result<SMorphism<F>> {
    SMorphism::new(induce(f.source(), host)?, induce(f.target(), host)?, f.matrix().clone())
}

pub fn coinduce_morphism<F: Field>(f: &SMorphism<F>, host: &Arc<Poset>) -> Result<SMorphism<F>> {
    SMorphism::new(coinduce(f.source(), host)?, coinduce(f.target(), host)?, f.matrix().clone())
}

/// Given `f: U -> res_R V` with `R` an ideal of the poset of `V`, builds
/// `U_f` with `X(t) = f^{-1}(V(t))` off `R` and the morphism `f̂: U_f -> V`.
pub fn lift_along_ideal<F: Field>(f: &SMorphism<F>, v: &SSpace<F>) -> Result<(SSpace<F>, SMorphism<F>)> {
    let host = v.poset();
    let map = f.source().poset().embedding_into(host)?;
    if !host.is_ideal(&map) {
        return Err(Error::NotAnIdeal(f.source().poset().labels().join(" ")));
    }
    if *f.target() != restrict_to(v, f.target().poset())? {
        return Err(Error::Mismatch("target of f is not the restriction of V".into()));
    }
    let u = f.source();
    let x = SSpace::from_fn(host.clone(), u.field().clone(), u.dim(), |t| match map.iter().position(|&h| h == t) {
        Some(r) => u.space(r).clone(),
        None => v.space(t).preimage(f.matrix()),
    })?;
    let lifted = SMorphism::new(x.clone(), v.clone(), f.matrix().clone())?;
    Ok((x, lifted))
}

/// Given `g: res_R U -> W` with `R` a filter of the poset of `U`, builds
/// `V^g` with `Y(t) = g(U(t))` off `R` and the morphism `ǧ: U -> V^g`.
pub fn colift_along_filter<F: Field>(g: &SMorphism<F>, u: &SSpace<F>) -> Result<(SSpace<F>, SMorphism<F>)> {
    let host = u.poset();
    let map = g.target().poset().embedding_into(host)?;
    if !host.is_filter(&map) {
        return Err(Error::NotAFilter(g.target().poset().labels().join(" ")));
    }
    if *g.source() != restrict_to(u, g.source().poset())? {
        return Err(Error::Mismatch("source of g is not the restriction of U".into()));
    }
    let w = g.target();
    let y = SSpace::from_fn(host.clone(), w.field().clone(), w.dim(), |t| match map.iter().position(|&h| h == t) {
        Some(r) => w.space(r).clone(),
        None => u.space(t).image(g.matrix()),
    })?;
    let colifted = SMorphism::new(u.clone(), y.clone(), g.matrix().clone())?;
    Ok((y, colifted))
}

/// `Σ_{s ∈ set} V(s)` helper used by several constructions.
pub(crate) fn sum_over<F: Field>(v: &SSpace<F>, set: impl IntoIterator<Item = usize>) -> Subspace<F> {
    let set: Vec<usize> = set.into_iter().collect();
    v.join_space(&set)
}
