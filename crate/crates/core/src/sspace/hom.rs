use super::{SMorphism, SSpace};
use crate::error::Result;
use crate::linalg::{solve_linear, Field, Matrix};

use super::morphism::combine;

/// Extra linear conditions cutting ideals out of `Hom(U, V)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomConstraint {
    None,
    /// `f(U) ⊆ V(p)`: the morphisms factoring through a space full at `p`.
    ImageInside(usize),
    /// `U(p) ⊆ ker f`: the morphisms factoring through a space trivial at `p`.
    KillsAt(usize),
}

/// A basis of `Hom(U, V)` (or of one of its constrained subspaces).
#[derive(Debug, Clone)]
pub struct HomSpace<F: Field> {
    source: SSpace<F>,
    target: SSpace<F>,
    basis: Vec<Matrix<F>>,
}

pub fn hom_space<F: Field>(u: &SSpace<F>, v: &SSpace<F>) -> Result<HomSpace<F>> {
    hom_space_with(u, v, HomConstraint::None)
}

/// Solves `g · f · u = 0` for every `u` in a basis of `U(s)` and every `g`
/// in a basis of `V(s)^⊥`, plus the requested extra conditions. The unknown
/// `f_ij` sits at position `i * dim U + j`.
pub fn hom_space_with<F: Field>(u: &SSpace<F>, v: &SSpace<F>, extra: HomConstraint) -> Result<HomSpace<F>> {
    u.check_compatible(v)?;
    let field = u.field();
    let (n, m) = (u.dim(), v.dim());
    let vars = m * n;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    let mut push = |gs: &[Vec<F::Elem>], us: &[Vec<F::Elem>]| {
        for g in gs {
            for x in us {
                let mut row = vec![field.zero(); vars];
                for (i, gi) in g.iter().enumerate() {
                    if field.is_zero(gi) {
                        continue;
                    }
                    for (j, xj) in x.iter().enumerate() {
                        row[i * n + j] = field.mul(gi, xj);
                    }
                }
                rows.push(row);
            }
        }
    };
    for s in u.poset().elements() {
        let us = u.space(s).basis_vectors();
        if us.is_empty() {
            continue;
        }
        push(&v.space(s).annihilator().basis_vectors(), &us);
    }
    match extra {
        HomConstraint::None => {}
        HomConstraint::ImageInside(p) => {
            push(&v.space(p).annihilator().basis_vectors(), &u.ambient().basis_vectors());
        }
        HomConstraint::KillsAt(p) => {
            push(&v.ambient().basis_vectors(), &u.space(p).basis_vectors());
        }
    }
    let constraints = Matrix::from_rows(field, vars, rows)?;
    let sol = solve_linear(field, vars, &constraints)?;
    let basis = sol
        .basis_vectors()
        .into_iter()
        .map(|x| Matrix::from_fn(field, m, n, |i, j| x[i * n + j].clone()))
        .collect();
    Ok(HomSpace {
        source: u.clone(),
        target: v.clone(),
        basis,
    })
}

impl<F: Field> HomSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }
    pub fn source(&self) -> &SSpace<F> {
        &self.source
    }
    pub fn target(&self) -> &SSpace<F> {
        &self.target
    }

    pub fn morphism(&self, i: usize) -> SMorphism<F> {
        SMorphism::new_unchecked(self.source.clone(), self.target.clone(), self.basis[i].clone())
    }

    pub fn morphisms(&self) -> Vec<SMorphism<F>> {
        (0..self.dim()).map(|i| self.morphism(i)).collect()
    }

    /// `Σ c_i B_i`.
    pub fn combination(&self, coeffs: &[F::Elem]) -> Matrix<F> {
        combine(self.source.field(), self.target.dim(), self.source.dim(), &self.basis, coeffs)
    }

    /// A basis of `{h ∈ span : op(h) = 0}` for a linear `op` into
    /// `rows × cols` matrices.
    pub(crate) fn annihilated_by(&self, op: impl Fn(&Matrix<F>) -> Matrix<F>, rows: usize, cols: usize) -> Vec<Matrix<F>> {
        let field = self.source.field();
        let d = self.dim();
        if d == 0 {
            return Vec::new();
        }
        let images: Vec<Matrix<F>> = self.basis.iter().map(&op).collect();
        // column k of the system is the flattened image of basis element k
        let sys = Matrix::from_fn(field, rows * cols, d, |r, k| images[k].entries()[r].clone());
        sys.kernel()
            .basis_vectors()
            .into_iter()
            .map(|c| self.combination(&c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::poset::{Poset, SemilatticeMode};
    use crate::sspace::tests::three_subspace_space;
    use std::sync::Arc;

    #[test]
    fn hom_between_simples_follows_the_antichain_order() {
        let p = Arc::new(Poset::chain(&["s", "t"]).unwrap());
        let f = PrimeField::new(3).unwrap();
        let hat = p.antichain_semilattice(SemilatticeMode::Meet, false);
        for (a, da) in hat.origin.iter().enumerate() {
            for (b, db) in hat.origin.iter().enumerate() {
                let ka = SSpace::simple_lower(p.clone(), f, &da.members()).unwrap();
                let kb = SSpace::simple_lower(p.clone(), f, &db.members()).unwrap();
                let expect = usize::from(hat.poset.leq(b, a));
                assert_eq!(hom_space(&ka, &kb).unwrap().dim(), expect);
            }
        }
    }

    #[test]
    fn end_of_the_three_subspace_space_is_the_field() {
        let v = three_subspace_space();
        let end = hom_space(&v, &v).unwrap();
        assert_eq!(end.dim(), 1);
        let b = &end.basis()[0];
        let c = Rationals.inv(b.get(0, 0)).unwrap();
        assert!(b.scale(&c).is_identity());
    }

    #[test]
    fn constrained_hom_spaces() {
        let v = three_subspace_space();
        let x = 0;
        // only zero maps into V(x) or vanishing on V(x)
        assert_eq!(hom_space_with(&v, &v, HomConstraint::ImageInside(x)).unwrap().dim(), 0);
        assert_eq!(hom_space_with(&v, &v, HomConstraint::KillsAt(x)).unwrap().dim(), 0);
        let p = v.poset().clone();
        let k_empty = SSpace::simple_lower(p, Rationals, &[]).unwrap();
        let h = hom_space_with(&k_empty, &v, HomConstraint::ImageInside(x)).unwrap();
        assert_eq!(h.dim(), 1);
    }
}
