//! Differentiation with respect to a principal filter or a principal ideal:
//! derived posets, the differentiation functors, Hom bookkeeping for the
//! ideals of maps factoring through spaces full or trivial at a point, and
//! the counting recursion.

mod nu;

use std::fmt;
use std::sync::Arc;

pub use nu::{nu_count, nu_count_with, NuConfig, NuValue, ReductionTrace, Strategy, TraceStep};

use crate::error::{Error, Result};
use crate::functors::{coinduce, induce, restrict_to};
use crate::linalg::{Field, Matrix};
use crate::poset::{Carrier, DerivedLabel, Poset, SemilatticeMode};
use crate::sspace::{hom_space, hom_space_with, HomConstraint, SMorphism, SSpace};

/// Which principal set a differentiation removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiffMode {
    /// By the principal filter `⟨p⟩`; target `S_p`.
    Filter,
    /// By the principal ideal `(p)`; target `S^p`.
    Ideal,
}

impl fmt::Display for DiffMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiffMode::Filter => "filter",
            DiffMode::Ideal => "ideal",
        })
    }
}

impl std::str::FromStr for DiffMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "filter" => Ok(DiffMode::Filter),
            "ideal" => Ok(DiffMode::Ideal),
            _ => Err(Error::Parse {
                line: 0,
                message: format!("mode must be filter or ideal, got {s:?}"),
            }),
        }
    }
}

impl DiffMode {
    pub fn dual(self) -> Self {
        match self {
            DiffMode::Filter => DiffMode::Ideal,
            DiffMode::Ideal => DiffMode::Filter,
        }
    }
}

/// `S_p` or `S^p` together with where its elements come from.
#[derive(Debug, Clone)]
pub struct DerivedPoset {
    pub base: Arc<Poset>,
    pub point: usize,
    pub mode: DiffMode,
    /// `S_{⟨p⟩}` (filter) or `S^{(p)}` (ideal).
    pub carrier: Arc<Poset>,
    pub carrier_origin: Vec<DerivedLabel>,
    pub result: Arc<Poset>,
    /// Origin of each result element, as a label over `base`.
    pub label_map: Vec<DerivedLabel>,
}

impl DerivedPoset {
    /// The set whose width decides applicability: `S∖⟨p⟩` or `S∖(p)`.
    pub fn complement_set(base: &Poset, p: usize, mode: DiffMode) -> Vec<usize> {
        match mode {
            DiffMode::Filter => base.complement(&base.principal_filter(p)),
            DiffMode::Ideal => base.complement(&base.principal_ideal(p)),
        }
    }

    /// `|a(S∖⟨p⟩)|` or `|a(S∖(p))|`.
    pub fn antichain_count(&self) -> usize {
        let rest = Self::complement_set(&self.base, self.point, self.mode);
        self.base.antichains_within(&rest, true).len()
    }
}

/// Applicability check: width of `S∖⟨p⟩` (filter) or `S∖(p)` (ideal).
pub fn applicable(base: &Poset, p: usize, mode: DiffMode) -> std::result::Result<(), usize> {
    let width = base.width_of(&DerivedPoset::complement_set(base, p, mode));
    if width <= 2 {
        Ok(())
    } else {
        Err(width)
    }
}

/// Builds `S_p = S_{⟨p⟩} ∖ (p)` or `S^p = S^{(p)} ∖ ǎ(⟨p⟩)`.
pub fn derive_poset(base: &Arc<Poset>, p: usize, mode: DiffMode) -> Result<DerivedPoset> {
    if p >= base.len() {
        return Err(Error::UnknownLabel(format!("#{p}")));
    }
    if let Err(width) = applicable(base, p, mode) {
        return Err(Error::NotApplicable {
            point: base.label(p).to_string(),
            width,
        });
    }
    let carrier: Carrier = match mode {
        DiffMode::Filter => base.derived_carrier(&base.principal_filter(p), SemilatticeMode::Meet)?,
        DiffMode::Ideal => base.derived_carrier(&base.principal_ideal(p), SemilatticeMode::Join)?,
    };
    let cp = carrier.original(p).expect("p is an original element");
    let keep: Vec<usize> = carrier
        .poset
        .elements()
        .filter(|&x| match mode {
            DiffMode::Filter => !carrier.poset.leq(x, cp),
            DiffMode::Ideal => !carrier.poset.leq(cp, x),
        })
        .collect();
    let result = carrier.poset.restrict(&keep)?;
    let label_map = keep.iter().map(|&x| carrier.origin[x].clone()).collect();
    Ok(DerivedPoset {
        base: base.clone(),
        point: p,
        mode,
        carrier: Arc::new(carrier.poset),
        carrier_origin: carrier.origin,
        result: Arc::new(result),
        label_map,
    })
}

/// Label-based convenience wrapper.
pub fn derive_poset_at(base: &Arc<Poset>, point: &str, mode: DiffMode) -> Result<DerivedPoset> {
    derive_poset(base, base.index_of(point)?, mode)
}

fn check_base<F: Field>(v: &SSpace<F>, d: &DerivedPoset) -> Result<()> {
    if **v.poset() == *d.base {
        Ok(())
    } else {
        Err(Error::PosetMismatch("space is not over the base of the derived poset".into()))
    }
}

/// The differentiation functor on objects, by the direct formulas:
/// filter mode `X(A) = (V(A) + V(p))/V(p)` on `V/V(p)`, ideal mode
/// `X(B) = V(B) ∩ V(p)` on `V(p)`.
pub fn diff_space<F: Field>(v: &SSpace<F>, d: &DerivedPoset) -> Result<SSpace<F>> {
    check_base(v, d)?;
    let vp = v.space(d.point);
    match d.mode {
        DiffMode::Filter => {
            let q = vp.quotient_map();
            let spaces = d.label_map.iter().map(|l| q.map_subspace(&v.meet_space(&l.members()))).collect();
            SSpace::new(d.result.clone(), v.field().clone(), q.quotient_dim(), spaces)
        }
        DiffMode::Ideal => {
            let spaces = d
                .label_map
                .iter()
                .map(|l| vp.relative(&v.join_space(&l.members()).intersect(vp).expect("same ambient")))
                .collect();
            SSpace::new(d.result.clone(), v.field().clone(), vp.dim(), spaces)
        }
    }
}

/// The same functor as the composite `res ∘ E_p ∘ coind` (filter) or
/// `res ∘ E^p ∘ ind` (ideal) through the carrier.
pub fn diff_space_composite<F: Field>(v: &SSpace<F>, d: &DerivedPoset) -> Result<SSpace<F>> {
    check_base(v, d)?;
    let cp = d.carrier.index_of(d.base.label(d.point))?;
    let (e, _) = match d.mode {
        DiffMode::Filter => coinduce(v, &d.carrier)?.e_quot(cp),
        DiffMode::Ideal => induce(v, &d.carrier)?.e_sub(cp),
    };
    restrict_to(&e, &d.result)
}

/// The differentiation functor on morphisms: the induced map
/// `U/U(p) -> V/V(p)` (filter) or the restriction `U(p) -> V(p)` (ideal).
pub fn diff_morphism<F: Field>(f: &SMorphism<F>, d: &DerivedPoset) -> Result<SMorphism<F>> {
    let (u, v) = (f.source(), f.target());
    let du = diff_space(u, d)?;
    let dv = diff_space(v, d)?;
    let p = d.point;
    let m = match d.mode {
        DiffMode::Filter => v
            .space(p)
            .quotient_map()
            .projection
            .mul(f.matrix())?
            .mul(&u.space(p).quotient_map().section)?,
        DiffMode::Ideal => v.space(p).coordinate_map().mul(f.matrix())?.mul(&u.space(p).inclusion())?,
    };
    SMorphism::new(du, dv, m)
}

/// Composite route on morphisms, for cross-checking `diff_morphism`.
pub fn diff_morphism_composite<F: Field>(f: &SMorphism<F>, d: &DerivedPoset) -> Result<SMorphism<F>> {
    let cp = d.carrier.index_of(d.base.label(d.point))?;
    let lifted = match d.mode {
        DiffMode::Filter => crate::functors::coinduce_morphism(f, &d.carrier)?.e_quot(cp),
        DiffMode::Ideal => crate::functors::induce_morphism(f, &d.carrier)?.e_sub(cp),
    };
    crate::functors::restrict_morphism(&lifted, &d.result)
}

/// Which ideal of maps a factor dimension counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorMode {
    /// Maps factoring through a space full at `p`: `f(U) ⊆ V(p)`.
    Full,
    /// Maps factoring through a space trivial at `p`: `U(p) ⊆ ker f`.
    Trivial,
}

pub fn factor_ideal_dim<F: Field>(u: &SSpace<F>, v: &SSpace<F>, p: usize, mode: FactorMode) -> Result<usize> {
    let c = match mode {
        FactorMode::Full => HomConstraint::ImageInside(p),
        FactorMode::Trivial => HomConstraint::KillsAt(p),
    };
    Ok(hom_space_with(u, v, c)?.dim())
}

/// `dim Hom_S(U, V) - dim 𝔉(U, V)` (filter) or `- dim 𝔗(U, V)` (ideal).
pub fn quotient_hom_dim<F: Field>(u: &SSpace<F>, v: &SSpace<F>, d: &DerivedPoset) -> Result<usize> {
    let mode = match d.mode {
        DiffMode::Filter => FactorMode::Full,
        DiffMode::Ideal => FactorMode::Trivial,
    };
    Ok(hom_space(u, v)?.dim() - factor_ideal_dim(u, v, d.point, mode)?)
}

/// The isomorphism `φ(V): D E_p V -> E^p D V`, `f ↦ f ∘ π_p`, over the
/// given copy of `S^op`.
pub fn phi_iso<F: Field>(v: &SSpace<F>, p: usize, op: &Arc<Poset>) -> Result<SMorphism<F>> {
    let (quot, _) = v.e_quot(p);
    let source = quot.dualize_over(op.clone());
    let dv = v.dualize_over(op.clone());
    let (target, _) = dv.e_sub(p);
    let q = v.space(p).quotient_map().projection;
    // a functional f on V/V(p) is the row f; f∘π is the row f·q, which lies in
    // V(p)^⊥ and is then written in the coordinates of V(p)^⊥
    let m: Matrix<F> = dv.space(p).coordinate_map().mul(&q.transpose())?;
    SMorphism::new(source, target, m)
}

/// For the filter derivation `d` of `S` at `p` and the ideal derivation
/// `e` of `S^op` at `p`, the index in `d.result` matching each element of
/// `e.result` (the same antichain of the common carrier set).
pub fn dual_correspondence(d: &DerivedPoset, e: &DerivedPoset) -> Result<Vec<usize>> {
    e.label_map
        .iter()
        .map(|l| {
            d.label_map
                .iter()
                .position(|k| k.members() == l.members())
                .ok_or_else(|| Error::Mismatch("derived posets do not correspond".into()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::sspace::tests::three_subspace_space;

    pub(crate) fn example() -> Arc<Poset> {
        Arc::new(
            Poset::new(
                &["a", "b", "c", "d", "e", "f", "g", "p"],
                &[("p", "a"), ("p", "b"), ("p", "c"), ("e", "p"), ("e", "d"), ("g", "e"), ("g", "f")],
            )
            .unwrap(),
        )
    }

    #[test]
    fn example_filter_derivation() {
        let s = example();
        let d = derive_poset_at(&s, "p", DiffMode::Filter).unwrap();
        let mut labels = d.result.labels().to_vec();
        labels.sort();
        assert_eq!(labels, ["a", "b", "c", "d", "d^f", "f"]);
        let covers: Vec<(String, String)> = d
            .result
            .covers()
            .into_iter()
            .map(|(x, y)| (d.result.label(x).to_string(), d.result.label(y).to_string()))
            .collect();
        assert_eq!(covers, [("d^f".to_string(), "d".to_string()), ("d^f".to_string(), "f".to_string())]);
        assert_eq!(d.antichain_count(), 6);
    }

    #[test]
    fn chain_and_antichain_derivations() {
        let chain = Arc::new(Poset::chain(&["p", "a"]).unwrap());
        let d = derive_poset_at(&chain, "p", DiffMode::Filter).unwrap();
        assert_eq!(d.result.labels(), ["a"]);

        let three = Arc::new(Poset::antichain_of(&["x", "y", "z"]).unwrap());
        let d = derive_poset_at(&three, "x", DiffMode::Filter).unwrap();
        let mut labels = d.result.labels().to_vec();
        labels.sort();
        assert_eq!(labels, ["y", "y^z", "z"]);

        let four = Arc::new(Poset::antichain_of(&["w", "x", "y", "z"]).unwrap());
        let err = derive_poset_at(&four, "x", DiffMode::Filter).unwrap_err();
        assert_eq!(err, Error::NotApplicable { point: "x".into(), width: 3 });
    }

    #[test]
    fn three_subspace_differentiation() {
        let v = three_subspace_space();
        let d = derive_poset_at(v.poset(), "x", DiffMode::Filter).unwrap();
        let x = diff_space(&v, &d).unwrap();
        assert_eq!(x.dim(), 1);
        assert!(x.is_full_at(x.poset().index_of("y").unwrap()));
        assert!(x.is_full_at(x.poset().index_of("z").unwrap()));
        assert!(x.is_trivial_at(x.poset().index_of("y^z").unwrap()));
        assert_eq!(diff_space_composite(&v, &d).unwrap(), x);
    }

    #[test]
    fn ideal_mode_matches_composite() {
        let v = three_subspace_space();
        let d = derive_poset_at(v.poset(), "x", DiffMode::Ideal).unwrap();
        assert_eq!(diff_space(&v, &d).unwrap(), diff_space_composite(&v, &d).unwrap());
    }

    #[test]
    fn phi_is_an_isomorphism() {
        let v = three_subspace_space();
        let op = Arc::new(v.poset().opposite());
        let f = phi_iso(&v, 0, &op).unwrap();
        assert!(f.is_iso());
    }

    #[test]
    fn identity_and_full_space() {
        let v = three_subspace_space();
        let d = derive_poset_at(v.poset(), "x", DiffMode::Filter).unwrap();
        let id = diff_morphism(&SMorphism::identity(&v), &d).unwrap();
        assert!(id.matrix().is_identity());
        let full = SSpace::simple_lower(v.poset().clone(), Rationals, &[0]).unwrap();
        assert_eq!(diff_space(&full, &d).unwrap().dim(), 0);
    }
}
