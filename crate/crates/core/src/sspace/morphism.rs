use std::fmt;

use super::{hom_space, SSpace};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};

/// A matrix `f: U -> V` between ambient spaces with `f(U(s)) ⊆ V(s)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SMorphism<F: Field> {
    source: SSpace<F>,
    target: SSpace<F>,
    map: Matrix<F>,
}

impl<F: Field> fmt::Debug for SMorphism<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SMorphism({:?})", self.map)
    }
}

/// `Σ c_i M_i` for matrices of one shape.
pub(crate) fn combine<F: Field>(field: &F, rows: usize, cols: usize, mats: &[Matrix<F>], coeffs: &[F::Elem]) -> Matrix<F> {
    let mut acc = Matrix::zeros(field, rows, cols);
    for (m, c) in mats.iter().zip(coeffs) {
        if !field.is_zero(c) {
            acc = acc.add(&m.scale(c)).expect("same shape");
        }
    }
    acc
}

/// A basis of the span of the given same-shape matrices.
pub(crate) fn matrix_span<F: Field>(field: &F, rows: usize, cols: usize, mats: &[Matrix<F>]) -> Vec<Matrix<F>> {
    let vecs = mats.iter().map(|m| m.entries().to_vec()).collect();
    let span = Subspace::from_vectors(field, rows * cols, vecs).expect("flattened length");
    span.basis_vectors()
        .into_iter()
        .map(|v| Matrix::from_rows(field, cols, v.chunks(cols.max(1)).map(|c| c.to_vec()).collect()).expect("shape"))
        .collect()
}

/// Whether the algebra-closed span of `mats` (n×n) is nilpotent.
fn span_is_nilpotent<F: Field>(field: &F, n: usize, mats: &[Matrix<F>]) -> bool {
    let base = matrix_span(field, n, n, mats);
    let mut power = base.clone();
    for _ in 0..=n {
        if power.is_empty() {
            return true;
        }
        let products: Vec<Matrix<F>> = power
            .iter()
            .flat_map(|p| base.iter().map(move |h| p.mul_unchecked(h)))
            .collect();
        power = matrix_span(field, n, n, &products);
    }
    power.is_empty()
}

impl<F: Field> SMorphism<F> {
    pub fn new(source: SSpace<F>, target: SSpace<F>, map: Matrix<F>) -> Result<Self> {
        source.check_compatible(&target)?;
        source.field().check_same(map.field())?;
        if map.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: source.dim(),
                found: map.cols(),
            });
        }
        if map.rows() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: map.rows(),
            });
        }
        for s in source.poset().elements() {
            if !source.space(s).image(&map).is_subspace_of(target.space(s)) {
                return Err(Error::NotAMorphism(source.poset().label(s).to_string()));
            }
        }
        Ok(SMorphism { source, target, map })
    }

    pub(crate) fn new_unchecked(source: SSpace<F>, target: SSpace<F>, map: Matrix<F>) -> Self {
        debug_assert!(SMorphism::new(source.clone(), target.clone(), map.clone()).is_ok());
        SMorphism { source, target, map }
    }

    pub fn identity(v: &SSpace<F>) -> Self {
        SMorphism::new_unchecked(v.clone(), v.clone(), Matrix::identity(v.field(), v.dim()))
    }

    pub fn zero(source: &SSpace<F>, target: &SSpace<F>) -> Self {
        SMorphism::new_unchecked(source.clone(), target.clone(), Matrix::zeros(source.field(), target.dim(), source.dim()))
    }

    pub fn source(&self) -> &SSpace<F> {
        &self.source
    }
    pub fn target(&self) -> &SSpace<F> {
        &self.target
    }
    pub fn matrix(&self) -> &Matrix<F> {
        &self.map
    }
    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SMorphism<F>) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::Mismatch("composition: target of the inner map is not the source of the outer map".into()));
        }
        Ok(SMorphism::new_unchecked(inner.source.clone(), self.target.clone(), self.map.mul(&inner.map)?))
    }

    pub fn add(&self, other: &SMorphism<F>) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Mismatch("sum of morphisms with different endpoints".into()));
        }
        Ok(SMorphism::new_unchecked(self.source.clone(), self.target.clone(), self.map.add(&other.map)?))
    }

    pub fn is_mono(&self) -> bool {
        self.map.is_injective()
    }
    pub fn is_epi(&self) -> bool {
        self.map.is_surjective()
    }

    /// An isomorphism: invertible with `f(U(s)) = V(s)` everywhere.
    pub fn is_iso(&self) -> bool {
        self.map.is_invertible()
            && self
                .source
                .poset()
                .elements()
                .all(|s| self.source.space(s).image(&self.map) == *self.target.space(s))
    }

    /// `f(U(s)) = V(s) ∩ f(U)` for every `s`.
    pub fn is_proper(&self) -> bool {
        let im = self.map.image();
        self.source
            .poset()
            .elements()
            .all(|s| self.source.space(s).image(&self.map) == self.target.space(s).intersect(&im).expect("same ambient"))
    }

    /// Kernel object with its proper mono into the source.
    pub fn kernel(&self) -> (SSpace<F>, SMorphism<F>) {
        self.source.substructure(&self.map.kernel()).expect("kernel lives in the source")
    }

    /// Cokernel object with its proper epi from the target.
    pub fn cokernel(&self) -> (SSpace<F>, SMorphism<F>) {
        self.target.quotient_structure(&self.map.image()).expect("image lives in the target")
    }

    /// `D f: D V -> D U`, the transpose.
    pub fn dualize(&self) -> Self {
        let op = std::sync::Arc::new(self.source.poset().opposite());
        self.dualize_over(op)
    }

    pub fn dualize_over(&self, op: std::sync::Arc<crate::poset::Poset>) -> Self {
        SMorphism::new_unchecked(
            self.target.dualize_over(op.clone()),
            self.source.dualize_over(op),
            self.map.transpose(),
        )
    }

    /// `E^p f = f|U(p): E^p U -> E^p V`.
    pub fn e_sub(&self, p: usize) -> Self {
        let (su, _) = self.source.e_sub(p);
        let (sv, _) = self.target.e_sub(p);
        let m = self
            .target
            .space(p)
            .coordinate_map()
            .mul_unchecked(&self.map)
            .mul_unchecked(&self.source.space(p).inclusion());
        SMorphism::new_unchecked(su, sv, m)
    }

    /// `E_p f = f̄: U/U(p) -> V/V(p)`.
    pub fn e_quot(&self, p: usize) -> Self {
        let (qu, _) = self.source.e_quot(p);
        let (qv, _) = self.target.e_quot(p);
        let m = self
            .target
            .space(p)
            .quotient_map()
            .projection
            .mul_unchecked(&self.map)
            .mul_unchecked(&self.source.space(p).quotient_map().section);
        SMorphism::new_unchecked(qu, qv, m)
    }

    /// Every `h ∈ End U` with `f h = f` is invertible. Decided exactly: the
    /// right ideal `{h : f h = 0}` must be nilpotent.
    pub fn is_right_minimal(&self) -> bool {
        let f = self.source.field();
        let n = self.source.dim();
        let end = hom_space(&self.source, &self.source).expect("same space");
        let ideal = end.annihilated_by(|h| self.map.mul_unchecked(h), self.target.dim(), n);
        span_is_nilpotent(f, n, &ideal)
    }

    /// Every `g ∈ End V` with `g f = f` is invertible; dual criterion.
    pub fn is_left_minimal(&self) -> bool {
        let f = self.source.field();
        let m = self.target.dim();
        let end = hom_space(&self.target, &self.target).expect("same space");
        let ideal = end.annihilated_by(|g| g.mul_unchecked(&self.map), m, self.source.dim());
        span_is_nilpotent(f, m, &ideal)
    }
}
