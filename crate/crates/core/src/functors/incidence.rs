use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};
use crate::poset::Poset;
use crate::sspace::SSpace;

/// A module over the incidence algebra of a poset with a unique maximal
/// element: a space `M_t` per element and a map `M_s -> M_t` per `s <= t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceRep<F: Field> {
    poset: Arc<Poset>,
    field: F,
    dims: Vec<usize>,
    // maps[s * n + t] is present iff s <= t
    maps: Vec<Option<Matrix<F>>>,
}

fn unique_top(p: &Poset) -> Result<usize> {
    let tops = p.maximal(&p.elements().collect::<Vec<_>>());
    match tops.as_slice() {
        [w] => Ok(*w),
        _ => Err(Error::NoUniqueTop(format!("{} maximal elements", tops.len()))),
    }
}

impl<F: Field> IncidenceRep<F> {
    /// Validating constructor: maps must exist exactly on related pairs,
    /// have the right shapes, be identities on the diagonal and compose.
    pub fn new(poset: Arc<Poset>, field: F, dims: Vec<usize>, maps: Vec<Option<Matrix<F>>>) -> Result<Self> {
        let n = poset.len();
        unique_top(&poset)?;
        if dims.len() != n || maps.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: dims.len(),
            });
        }
        for s in 0..n {
            for t in 0..n {
                match (&maps[s * n + t], poset.leq(s, t)) {
                    (None, false) => {}
                    (Some(m), true) => {
                        if m.rows() != dims[t] || m.cols() != dims[s] {
                            return Err(Error::DimensionMismatch {
                                expected: dims[t],
                                found: m.rows(),
                            });
                        }
                        if s == t && !m.is_identity() {
                            return Err(Error::Mismatch(format!("map at {} is not the identity", poset.label(s))));
                        }
                    }
                    _ => return Err(Error::Mismatch(format!("map presence wrong for {} <= {}", poset.label(s), poset.label(t)))),
                }
            }
        }
        let rep = IncidenceRep { poset, field, dims, maps };
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if rep.poset.leq(s, t) && rep.poset.leq(t, u) && rep.map(t, u).mul_unchecked(rep.map(s, t)) != *rep.map(s, u) {
                        return Err(Error::Mismatch(format!(
                            "maps do not compose along {} <= {} <= {}",
                            rep.poset.label(s),
                            rep.poset.label(t),
                            rep.poset.label(u)
                        )));
                    }
                }
            }
        }
        Ok(rep)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    /// The structure map `M_s -> M_t` for `s <= t`.
    pub fn map(&self, s: usize, t: usize) -> &Matrix<F> {
        self.maps[s * self.poset.len() + t].as_ref().expect("s <= t")
    }

    pub fn top(&self) -> usize {
        unique_top(&self.poset).expect("validated")
    }

    /// Every `M_t -> M_ω` is injective.
    pub fn is_socle_projective(&self) -> bool {
        let w = self.top();
        self.poset.elements().all(|t| self.map(t, w).is_injective())
    }

    /// `(rad M)_t = Σ_{s<t} image(M_s -> M_t)`; the top has dimension
    /// `dim M_t - dim (rad M)_t`.
    pub fn top_dims(&self) -> Vec<usize> {
        self.poset
            .elements()
            .map(|t| {
                let rad = self
                    .poset
                    .elements()
                    .filter(|&s| self.poset.lt(s, t))
                    .fold(Subspace::zero(&self.field, self.dims[t]), |acc, s| {
                        acc.sum(&self.map(s, t).image()).expect("same ambient")
                    });
                self.dims[t] - rad.dim()
            })
            .collect()
    }
}

/// `Ψ V = ⊕_{t∈S^ω} V(t)` with inclusions as structure maps; the poset is
/// `S^ω` with `ω` appended last.
pub fn psi<F: Field>(v: &SSpace<F>) -> IncidenceRep<F> {
    let sw = Arc::new(v.poset().adjoin_top());
    let n = sw.len();
    let w = n - 1;
    let field = v.field().clone();
    let space = |t: usize| -> Subspace<F> {
        if t == w {
            v.ambient()
        } else {
            v.space(t).clone()
        }
    };
    let dims = (0..n).map(|t| space(t).dim()).collect();
    let mut maps = vec![None; n * n];
    for s in 0..n {
        for t in 0..n {
            if sw.leq(s, t) {
                let (vs, vt) = (space(s), space(t));
                maps[s * n + t] = Some(vt.coordinate_map().mul_unchecked(&vs.inclusion()));
            }
        }
    }
    IncidenceRep {
        poset: sw,
        field,
        dims,
        maps,
    }
}

/// `Φ M`: ambient `M_ω`, `V(s)` the image of `M_s -> M_ω`, over the poset
/// with `ω` removed.
pub fn phi<F: Field>(m: &IncidenceRep<F>) -> Result<SSpace<F>> {
    let w = m.top();
    let rest: Vec<usize> = m.poset.elements().filter(|&s| s != w).collect();
    let s = Arc::new(m.poset.restrict(&rest)?);
    let spaces = rest.iter().map(|&t| m.map(t, w).image()).collect();
    SSpace::new(s, m.field.clone(), m.dims[w], spaces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::sspace::tests::three_subspace_space;

    #[test]
    fn psi_of_the_empty_simple() {
        let p = Arc::new(Poset::chain(&["s", "t"]).unwrap());
        let k0 = SSpace::simple_lower(p, PrimeField::new(2).unwrap(), &[]).unwrap();
        let m = psi(&k0);
        assert_eq!(m.dims(), &[0, 0, 1]);
        assert!(m.is_socle_projective());
    }

    #[test]
    fn phi_inverts_psi() {
        let v = three_subspace_space();
        let m = psi(&v);
        let m2 = IncidenceRep::new(m.poset().clone(), *m.field(), m.dims.clone(), m.maps.clone()).unwrap();
        assert_eq!(phi(&m2).unwrap(), v);
    }

    #[test]
    fn non_injective_structure_map_fails_socle_projectivity() {
        let f = PrimeField::new(2).unwrap();
        let p = Arc::new(Poset::chain(&["s", "w"]).unwrap());
        let maps = vec![
            Some(Matrix::identity(&f, 1)),
            Some(Matrix::zeros(&f, 1, 1)),
            None,
            Some(Matrix::identity(&f, 1)),
        ];
        let m = IncidenceRep::new(p, f, vec![1, 1], maps).unwrap();
        assert!(!m.is_socle_projective());
    }

    #[test]
    fn requires_unique_top() {
        let f = PrimeField::new(2).unwrap();
        let p = Arc::new(Poset::antichain_of(&["a", "b"]).unwrap());
        let maps = vec![Some(Matrix::identity(&f, 0)), None, None, Some(Matrix::identity(&f, 0))];
        assert!(matches!(IncidenceRep::new(p, f, vec![0, 0], maps), Err(Error::NoUniqueTop(_))));
    }
}
