//! S-spaces over a poset: a vector space with a monotone family of
//! subspaces, their morphisms, and the standard constructions on them.

mod hom;
mod iso;
mod morphism;

use std::fmt;
use std::sync::Arc;

pub use hom::{hom_space, hom_space_with, HomConstraint, HomSpace};
pub use iso::{are_isomorphic, IsoOutcome};
pub use morphism::SMorphism;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};
use crate::poset::Poset;

/// An ambient space `k^dim` with one subspace per poset element.
#[derive(Clone, PartialEq, Eq)]
pub struct SSpace<F: Field> {
    poset: Arc<Poset>,
    field: F,
    dim: usize,
    spaces: Vec<Subspace<F>>,
}

impl<F: Field> fmt::Debug for SSpace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SSpace[{} over {}](", self.dim, self.field.kind())?;
        for (i, s) in self.spaces.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {:?}", self.poset.label(i), s.basis())?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_same_poset(a: &Arc<Poset>, b: &Arc<Poset>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::PosetMismatch(format!("{a:?} vs {b:?}")))
    }
}

impl<F: Field> SSpace<F> {
    /// Validating constructor; `spaces[i]` is the subspace at element `i`.
    pub fn new(poset: Arc<Poset>, field: F, dim: usize, spaces: Vec<Subspace<F>>) -> Result<Self> {
        if spaces.len() != poset.len() {
            return Err(Error::DimensionMismatch {
                expected: poset.len(),
                found: spaces.len(),
            });
        }
        for s in &spaces {
            field.check_same(s.field())?;
            if s.ambient() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: s.ambient(),
                });
            }
        }
        let v = SSpace {
            poset,
            field,
            dim,
            spaces,
        };
        v.validate()?;
        Ok(v)
    }

    pub(crate) fn new_unchecked(poset: Arc<Poset>, field: F, dim: usize, spaces: Vec<Subspace<F>>) -> Self {
        debug_assert!(SSpace::new(poset.clone(), field.clone(), dim, spaces.clone()).is_ok());
        SSpace {
            poset,
            field,
            dim,
            spaces,
        }
    }

    pub fn from_fn(poset: Arc<Poset>, field: F, dim: usize, f: impl FnMut(usize) -> Subspace<F>) -> Result<Self> {
        let spaces = poset.elements().map(f).collect();
        Self::new(poset, field, dim, spaces)
    }

    /// Spaces spanned by integer vectors, keyed by label; missing labels get
    /// the zero subspace.
    pub fn from_i64(poset: Arc<Poset>, field: F, dim: usize, spans: &[(&str, &[&[i64]])]) -> Result<Self> {
        let mut spaces = vec![Subspace::zero(&field, dim); poset.len()];
        for (label, vecs) in spans {
            let i = poset.index_of(label)?;
            let rows = vecs.iter().map(|v| v.iter().map(|&x| field.from_i64(x)).collect()).collect();
            spaces[i] = Subspace::from_vectors(&field, dim, rows)?;
        }
        Self::new(poset, field, dim, spaces)
    }

    /// The zero object: ambient dimension zero.
    pub fn zero(poset: Arc<Poset>, field: F) -> Self {
        let spaces = vec![Subspace::zero(&field, 0); poset.len()];
        SSpace {
            poset,
            field,
            dim: 0,
            spaces,
        }
    }

    /// Checks `s <= t  =>  V(s) ⊆ V(t)`, reporting the first violating pair.
    pub fn validate(&self) -> Result<()> {
        for s in self.poset.elements() {
            for t in self.poset.elements() {
                if self.poset.lt(s, t) && !self.spaces[s].is_subspace_of(&self.spaces[t]) {
                    return Err(Error::MonotonicityViolation(
                        self.poset.label(s).to_string(),
                        self.poset.label(t).to_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn space(&self, i: usize) -> &Subspace<F> {
        &self.spaces[i]
    }
    pub fn spaces(&self) -> &[Subspace<F>] {
        &self.spaces
    }
    pub fn space_of(&self, label: &str) -> Result<&Subspace<F>> {
        Ok(&self.spaces[self.poset.index_of(label)?])
    }
    pub fn ambient(&self) -> Subspace<F> {
        Subspace::full(&self.field, self.dim)
    }
    pub fn is_full_at(&self, p: usize) -> bool {
        self.spaces[p].dim() == self.dim
    }
    pub fn is_trivial_at(&self, p: usize) -> bool {
        self.spaces[p].is_zero()
    }

    /// `V(A) = ∩_{a∈A} V(a)`; the whole ambient space for `A = ∅`.
    pub fn meet_space(&self, members: &[usize]) -> Subspace<F> {
        members.iter().fold(self.ambient(), |acc, &a| acc.intersect(&self.spaces[a]).expect("same ambient"))
    }

    /// `V(B) = Σ_{b∈B} V(b)`; zero for `B = ∅`.
    pub fn join_space(&self, members: &[usize]) -> Subspace<F> {
        members
            .iter()
            .fold(Subspace::zero(&self.field, self.dim), |acc, &b| acc.sum(&self.spaces[b]).expect("same ambient"))
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        check_same_poset(&self.poset, &other.poset)?;
        self.field.check_same(&other.field)
    }

    /// `U ⊕ V` with `U` in the first coordinates.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.dim + other.dim;
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(a, b)| a.embed_block(0, n).sum(&b.embed_block(self.dim, n)).expect("same ambient"))
            .collect();
        Ok(SSpace::new_unchecked(self.poset.clone(), self.field.clone(), n, spaces))
    }

    pub fn direct_sum_all<'a>(poset: Arc<Poset>, field: F, parts: impl IntoIterator<Item = &'a SSpace<F>>) -> Result<Self> {
        let mut acc = SSpace::zero(poset, field);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// `V^n`.
    pub fn power(&self, n: usize) -> Self {
        let mut acc = SSpace::zero(self.poset.clone(), self.field.clone());
        for _ in 0..n {
            acc = acc.direct_sum(self).expect("same poset");
        }
        acc
    }

    /// The unique structure on a subspace `W` making the inclusion proper:
    /// `X(s) = V(s) ∩ W`, in the coordinates of `W`.
    pub fn substructure(&self, w: &Subspace<F>) -> Result<(Self, SMorphism<F>)> {
        if w.ambient() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: w.ambient(),
            });
        }
        let spaces = self.spaces.iter().map(|s| w.relative(&s.intersect(w).expect("same ambient"))).collect();
        let x = SSpace::new_unchecked(self.poset.clone(), self.field.clone(), w.dim(), spaces);
        let inc = SMorphism::new_unchecked(x.clone(), self.clone(), w.inclusion());
        Ok((x, inc))
    }

    /// The unique structure on `V/W` making the projection proper:
    /// `Y(s) = (V(s) + W)/W`.
    pub fn quotient_structure(&self, w: &Subspace<F>) -> Result<(Self, SMorphism<F>)> {
        if w.ambient() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: w.ambient(),
            });
        }
        let q = w.quotient_map();
        let spaces = self.spaces.iter().map(|s| q.map_subspace(s)).collect();
        let y = SSpace::new_unchecked(self.poset.clone(), self.field.clone(), q.quotient_dim(), spaces);
        let proj = SMorphism::new_unchecked(self.clone(), y.clone(), q.projection);
        Ok((y, proj))
    }

    /// `E^p V` on `V(p)` with the proper mono `κ_p`.
    pub fn e_sub(&self, p: usize) -> (Self, SMorphism<F>) {
        self.substructure(&self.spaces[p]).expect("own subspace")
    }

    /// `E_p V` on `V/V(p)` with the proper epi `π_p`.
    pub fn e_quot(&self, p: usize) -> (Self, SMorphism<F>) {
        self.quotient_structure(&self.spaces[p]).expect("own subspace")
    }

    /// `D V` over `S^op`: the dual ambient space with `X(s) = V(s)^⊥`.
    pub fn dualize(&self) -> Self {
        let op = Arc::new(self.poset.opposite());
        self.dualize_over(op)
    }

    /// `D V` over a given copy of `S^op`.
    pub fn dualize_over(&self, op: Arc<Poset>) -> Self {
        let spaces = self.spaces.iter().map(|s| s.annihilator()).collect();
        SSpace::new_unchecked(op, self.field.clone(), self.dim, spaces)
    }

    /// The same assignment read over another poset with the same labels and
    /// the same order.
    pub fn transport(&self, target: Arc<Poset>) -> Result<Self> {
        let map = target.embedding_into(&self.poset)?;
        if target.len() != self.poset.len() {
            return Err(Error::PosetMismatch("different number of elements".into()));
        }
        let spaces = map.iter().map(|&i| self.spaces[i].clone()).collect();
        Ok(SSpace::new_unchecked(target, self.field.clone(), self.dim, spaces))
    }

    /// The space over `target` whose subspace at `i` is this space's
    /// subspace at `map[i]`; monotonicity is revalidated.
    pub fn reindexed(&self, target: Arc<Poset>, map: &[usize]) -> Result<Self> {
        if map.len() != target.len() || map.iter().any(|&i| i >= self.poset.len()) {
            return Err(Error::PosetMismatch("index map does not fit the posets".into()));
        }
        let spaces = map.iter().map(|&i| self.spaces[i].clone()).collect();
        SSpace::new(target, self.field.clone(), self.dim, spaces)
    }

    /// `f(V)` with `X(s) = f(V(s))` for an invertible `f`.
    pub fn base_change(&self, f: &Matrix<F>) -> Result<Self> {
        if !(f.is_invertible() && f.cols() == self.dim) {
            return Err(Error::Mismatch("base change must be an invertible square matrix of the ambient size".into()));
        }
        let spaces = self.spaces.iter().map(|s| s.image(f)).collect();
        Ok(SSpace::new_unchecked(self.poset.clone(), self.field.clone(), self.dim, spaces))
    }

    /// `k_A`: ambient `k`, full exactly on `⟨A⟩`.
    pub fn simple_lower(poset: Arc<Poset>, field: F, antichain: &[usize]) -> Result<Self> {
        Self::check_antichain(&poset, antichain)?;
        let up = poset.generated_filter(antichain)?;
        Ok(Self::one_dim(poset, field, |s| up.contains(&s)))
    }

    /// `k^A`: ambient `k`, trivial exactly on `(A)`.
    pub fn simple_upper(poset: Arc<Poset>, field: F, antichain: &[usize]) -> Result<Self> {
        Self::check_antichain(&poset, antichain)?;
        let down = poset.generated_ideal(antichain)?;
        Ok(Self::one_dim(poset, field, |s| !down.contains(&s)))
    }

    /// `P_t` for `t ∈ S`, or `P_ω` when `t` is `None`.
    pub fn projective(poset: Arc<Poset>, field: F, t: Option<usize>) -> Result<Self> {
        match t {
            Some(t) => {
                let up = poset.generated_filter(&[t])?;
                Ok(Self::one_dim(poset, field, |s| up.contains(&s)))
            }
            None => Ok(Self::one_dim(poset, field, |_| false)),
        }
    }

    /// `I_t` for `t ∈ S`, or `I_0` when `t` is `None`.
    pub fn injective(poset: Arc<Poset>, field: F, t: Option<usize>) -> Result<Self> {
        match t {
            Some(t) => {
                let down = poset.generated_ideal(&[t])?;
                Ok(Self::one_dim(poset, field, |s| !down.contains(&s)))
            }
            None => Ok(Self::one_dim(poset, field, |_| true)),
        }
    }

    fn check_antichain(poset: &Poset, a: &[usize]) -> Result<()> {
        if let Some(&bad) = a.iter().find(|&&i| i >= poset.len()) {
            return Err(Error::UnknownLabel(format!("#{bad}")));
        }
        if poset.is_antichain(a) {
            Ok(())
        } else {
            let names: Vec<&str> = a.iter().map(|&i| poset.label(i)).collect();
            Err(Error::NotAnAntichain(names.join(" ")))
        }
    }

    fn one_dim(poset: Arc<Poset>, field: F, full: impl Fn(usize) -> bool) -> Self {
        let spaces = poset
            .elements()
            .map(|s| {
                if full(s) {
                    Subspace::full(&field, 1)
                } else {
                    Subspace::zero(&field, 1)
                }
            })
            .collect();
        SSpace::new_unchecked(poset, field, 1, spaces)
    }

    /// Antichain type of a one-dimensional space: the minimal elements where
    /// it is full.
    pub fn simple_type(&self) -> Option<Vec<usize>> {
        if self.dim != 1 {
            return None;
        }
        let full: Vec<usize> = self.poset.elements().filter(|&s| self.is_full_at(s)).collect();
        Some(self.poset.minimal(&full))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    pub(crate) fn three_antichain() -> Arc<Poset> {
        Arc::new(Poset::antichain_of(&["x", "y", "z"]).unwrap())
    }

    pub(crate) fn three_subspace_space() -> SSpace<Rationals> {
        SSpace::from_i64(
            three_antichain(),
            Rationals,
            2,
            &[("x", &[&[1, 0]]), ("y", &[&[0, 1]]), ("z", &[&[1, 1]])],
        )
        .unwrap()
    }

    #[test]
    fn monotonicity_violation() {
        let p = Arc::new(Poset::chain(&["s", "t"]).unwrap());
        let err = SSpace::from_i64(p, Rationals, 2, &[("s", &[&[1, 0], &[0, 1]])]).unwrap_err();
        assert_eq!(err, Error::MonotonicityViolation("s".into(), "t".into()));
    }

    #[test]
    fn simples_and_standard_spaces() {
        let p = Arc::new(Poset::chain(&["s", "t"]).unwrap());
        let f = PrimeField::new(2).unwrap();
        let k_empty = SSpace::simple_lower(p.clone(), f, &[]).unwrap();
        assert!(k_empty.spaces().iter().all(|s| s.is_zero()));
        assert_eq!(k_empty, SSpace::projective(p.clone(), f, None).unwrap());
        let k_s = SSpace::simple_lower(p.clone(), f, &[0]).unwrap();
        assert!(k_s.is_full_at(0) && k_s.is_full_at(1));
        let k_t = SSpace::simple_lower(p.clone(), f, &[1]).unwrap();
        assert!(k_t.is_trivial_at(0) && k_t.is_full_at(1));
        assert!(SSpace::simple_lower(p.clone(), f, &[0, 1]).is_err());
        assert_eq!(k_t.simple_type(), Some(vec![1]));
    }

    #[test]
    fn sub_and_quotient_functors() {
        let s = Arc::new(Poset::antichain_of(&["p", "a"]).unwrap());
        let v = SSpace::from_i64(s, Rationals, 2, &[("p", &[&[1, 0]]), ("a", &[&[1, 1]])]).unwrap();
        let (sub, kappa) = v.e_sub(0);
        assert_eq!(sub.dim(), 1);
        assert!(sub.is_trivial_at(1));
        assert!(kappa.is_proper());
        let (quot, pi) = v.e_quot(0);
        assert_eq!(quot.dim(), 1);
        assert!(quot.is_full_at(1));
        assert!(pi.is_proper());
    }

    #[test]
    fn duality_is_involutive() {
        let v = three_subspace_space();
        let dd = v.dualize().dualize();
        assert_eq!(dd, v);
    }

    #[test]
    fn direct_sum_dims_add() {
        let v = three_subspace_space();
        let w = v.direct_sum(&v).unwrap();
        assert_eq!(w.dim(), 4);
        assert!((0..3).all(|i| w.space(i).dim() == 2));
        let z = SSpace::zero(v.poset().clone(), Rationals);
        assert_eq!(v.direct_sum(&z).unwrap(), v);
    }
}
