use std::cmp::Ordering;
use std::fmt;

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A linear subspace of `k^n`, stored as the reduced row echelon form of a
/// spanning set. Two subspaces are equal exactly when their stored forms are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}: {:?})", self.dim(), self.ambient, self.basis)
    }
}

/// The projection `k^n -> k^n / U` in the coordinates given by the non-pivot
/// columns of `U`, together with a linear section of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap<F: Field> {
    pub projection: Matrix<F>,
    pub section: Matrix<F>,
}

impl<F: Field> QuotientMap<F> {
    /// The subspace rule `W -> (W + U) / U`.
    pub fn map_subspace(&self, w: &Subspace<F>) -> Subspace<F> {
        w.image(&self.projection)
    }

    pub fn quotient_dim(&self) -> usize {
        self.projection.rows()
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix<F>) -> Self {
        let (basis, pivots) = m.rref();
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn from_vectors(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Result<Self> {
        Ok(Self::from_matrix(&Matrix::from_rows(field, ambient, vectors)?))
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.field().check_same(other.field())?;
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// `v` minus its component along the pivot rows; zero iff `v` lies in the
    /// subspace.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !f.is_zero(b) {
                    out[j] = f.sub(&out[j], &f.mul(&c, b));
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let f = self.field();
        self.reduce(v).iter().all(|x| f.is_zero(x))
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.dim() <= other.dim()
            && (0..self.dim()).all(|i| other.contains(self.basis.row(i)))
    }

    /// Coordinates of `v` (assumed to lie in the subspace) in the stored basis.
    pub fn coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&pc| v[pc].clone()).collect()
    }

    /// The inclusion `k^dim -> k^ambient` sending the i-th coordinate vector to
    /// the i-th basis row.
    pub fn inclusion(&self) -> Matrix<F> {
        self.basis.transpose()
    }

    /// Matrix sending ambient vectors that lie in the subspace to their
    /// coordinates. Only meaningful on the subspace.
    pub fn coordinate_map(&self) -> Matrix<F> {
        let f = self.field();
        Matrix::from_fn(f, self.dim(), self.ambient, |i, j| {
            if self.pivots[i] == j {
                f.one()
            } else {
                f.zero()
            }
        })
    }

    /// `sub`, a subspace of `self`, expressed in the coordinates of `self`.
    pub fn relative(&self, sub: &Self) -> Self {
        debug_assert!(sub.is_subspace_of(self));
        let vecs = sub.basis_vectors().iter().map(|v| self.coordinates(v)).collect();
        Self::from_vectors(self.field(), self.dim(), vecs).expect("coordinates have subspace length")
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection by the Zassenhaus algorithm: reduce `[[A, A], [B, 0]]` and
    /// keep the right halves of rows whose left half vanishes.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field();
        let n = self.ambient;
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&Matrix::zeros(f, other.dim(), n))?;
        let (r, pivots) = top.vstack(&bottom)?.rref();
        let rows: Vec<Vec<F::Elem>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &pc)| pc >= n)
            .map(|(i, _)| r.row(i)[n..].to_vec())
            .collect();
        Self::from_vectors(f, n, rows)
    }

    /// `f(self)` for a map `f: k^ambient -> k^m`.
    pub fn image(&self, map: &Matrix<F>) -> Self {
        assert_eq!(map.cols(), self.ambient, "map domain must be the ambient space");
        Self::from_matrix(&self.basis.mul_unchecked(&map.transpose()))
    }

    /// `{u : f(u) in self}` for a map `f: k^n -> k^ambient`.
    pub fn preimage(&self, map: &Matrix<F>) -> Self {
        assert_eq!(map.rows(), self.ambient, "map codomain must be the ambient space");
        let ann = self.annihilator();
        if ann.dim() == 0 {
            return Self::full(self.field(), map.cols());
        }
        ann.basis.mul_unchecked(map).kernel()
    }

    /// `{g in (k^n)* : g(self) = 0}` in the standard dual coordinates.
    pub fn annihilator(&self) -> Self {
        if self.dim() == 0 {
            return Self::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    /// Projection onto `k^ambient / self` and a section of it.
    pub fn quotient_map(&self) -> QuotientMap<F> {
        let f = self.field();
        let free: Vec<usize> = (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect();
        let mut projection = Matrix::zeros(f, free.len(), self.ambient);
        for j in 0..self.ambient {
            let mut e = vec![f.zero(); self.ambient];
            e[j] = f.one();
            let r = self.reduce(&e);
            for (k, &fc) in free.iter().enumerate() {
                projection.set(k, j, r[fc].clone());
            }
        }
        let section = Matrix::from_fn(f, self.ambient, free.len(), |i, k| {
            if free[k] == i {
                f.one()
            } else {
                f.zero()
            }
        });
        QuotientMap { projection, section }
    }

    /// Vectors of `self`'s basis, chosen greedily, that extend a basis of
    /// `sub` to a basis of `self`. `sub` must be contained in `self`.
    pub fn complement_in(&self, sub: &Self) -> Vec<Vec<F::Elem>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for v in self.basis_vectors() {
            if !acc.contains(&v) {
                acc = acc.sum(&Self::from_vectors(self.field(), self.ambient, vec![v.clone()]).unwrap()).unwrap();
                out.push(v);
            }
        }
        out
    }

    /// Image under the coordinate extension `k^n -> k^(n+m)` (first block) or
    /// `k^m -> k^(n+m)` (second block).
    pub fn embed_block(&self, offset: usize, total: usize) -> Self {
        let f = self.field();
        let vecs = self
            .basis_vectors()
            .into_iter()
            .map(|v| {
                let mut w = vec![f.zero(); total];
                for (j, x) in v.into_iter().enumerate() {
                    w[offset + j] = x;
                }
                w
            })
            .collect();
        Self::from_vectors(f, total, vecs).expect("block embedding fits in total")
    }

    /// Total order used for deterministic enumeration: by dimension, then by
    /// basis entries.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        (self.ambient, self.dim())
            .cmp(&(other.ambient, other.dim()))
            .then_with(|| self.basis.entries().cmp(other.basis.entries()))
    }
}

/// Solution space of the homogeneous system whose rows are `constraints`,
/// over `vars` unknowns.
pub fn solve_linear<F: Field>(field: &F, vars: usize, constraints: &Matrix<F>) -> Result<Subspace<F>> {
    field.check_same(constraints.field())?;
    if constraints.cols() != vars {
        return Err(Error::DimensionMismatch {
            expected: vars,
            found: constraints.cols(),
        });
    }
    if constraints.rows() == 0 {
        return Ok(Subspace::full(field, vars));
    }
    Ok(constraints.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    fn span(f: &Rationals, n: usize, vs: &[&[i64]]) -> Subspace<Rationals> {
        Subspace::from_vectors(f, n, vs.iter().map(|v| v.iter().map(|&x| f.from_i64(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn intersect_and_sum_of_two_lines() {
        let q = Rationals;
        let a = span(&q, 2, &[&[1, 0]]);
        let b = span(&q, 2, &[&[1, 1]]);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert!(a.sum(&b).unwrap().is_full());
    }

    #[test]
    fn annihilator_of_first_axis() {
        let q = Rationals;
        let a = span(&q, 2, &[&[1, 0]]);
        assert_eq!(a.annihilator(), span(&q, 2, &[&[0, 1]]));
        assert_eq!(a.annihilator().annihilator(), a);
        assert!(Subspace::zero(&q, 3).annihilator().is_full());
        assert!(Subspace::full(&q, 3).annihilator().is_zero());
    }

    #[test]
    fn solve_over_f2() {
        let f = PrimeField::new(2).unwrap();
        let sys = Matrix::from_i64(&f, &[&[1, 1]]);
        let sol = solve_linear(&f, 2, &sys).unwrap();
        assert_eq!(sol, Subspace::from_vectors(&f, 2, vec![vec![1, 1]]).unwrap());
        let empty = Matrix::zeros(&f, 0, 4);
        assert_eq!(solve_linear(&f, 4, &empty).unwrap().dim(), 4);
        assert!(solve_linear(&f, 3, &sys).is_err());
    }

    #[test]
    fn quotient_map_kills_the_subspace() {
        let q = Rationals;
        let u = span(&q, 3, &[&[1, 2, 0], &[0, 0, 1]]);
        let qm = u.quotient_map();
        assert_eq!(qm.quotient_dim(), 1);
        for v in u.basis_vectors() {
            assert!(qm.projection.apply(&v).iter().all(|x| x == &q.zero()));
        }
        assert!(qm.projection.mul(&qm.section).unwrap().is_identity());
        let w = span(&q, 3, &[&[0, 1, 0]]);
        assert!(qm.map_subspace(&w).is_full());
    }

    #[test]
    fn mismatched_ambients_are_rejected() {
        let q = Rationals;
        let a = span(&q, 2, &[&[1, 0]]);
        let b = span(&q, 3, &[&[1, 0, 0]]);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(a.intersect(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn coordinates_and_relative() {
        let q = Rationals;
        let v = span(&q, 3, &[&[1, 0, 1], &[0, 1, 1]]);
        let w = span(&q, 3, &[&[1, 1, 2]]);
        let rel = v.relative(&w);
        assert_eq!(rel, span(&q, 2, &[&[1, 1]]));
        let back = rel.image(&v.inclusion());
        assert_eq!(back, w);
    }
}
