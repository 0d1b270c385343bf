use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_space, SSpace};
use crate::error::Result;
use crate::linalg::{Field, Matrix};

/// Result of an isomorphism search. A witness is always a verified
/// isomorphism `U -> V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome<F: Field> {
    Isomorphic(Matrix<F>),
    NotIsomorphic,
    Undecided,
}

impl<F: Field> IsoOutcome<F> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
    pub fn witness(&self) -> Option<&Matrix<F>> {
        match self {
            IsoOutcome::Isomorphic(m) => Some(m),
            _ => None,
        }
    }
}

fn invariants_agree<F: Field>(u: &SSpace<F>, v: &SSpace<F>) -> bool {
    if u.dim() != v.dim() {
        return false;
    }
    let p = u.poset();
    p.antichains(true)
        .iter()
        .all(|a| u.meet_space(a.members()).dim() == v.meet_space(a.members()).dim() && u.join_space(a.members()).dim() == v.join_space(a.members()).dim())
}

/// Decides `U ≅ V`.
///
/// Once all subspace dimensions agree, any invertible element of
/// `Hom(U, V)` is an isomorphism. `det(Σ c_i B_i)` has degree at most `n` in
/// each `c_i`, so it vanishes on the grid `{0..n}^d` only if it vanishes
/// identically; over `F_p` with `p <= n + 1` the grid is all of `F_p^d`.
/// Either way, scanning the grid is exact and is done when it fits the
/// search budget. Otherwise seeded random combinations are tried and
/// failure is `Undecided`.
pub fn are_isomorphic<F: Field>(u: &SSpace<F>, v: &SSpace<F>, seed: u64) -> Result<IsoOutcome<F>> {
    u.check_compatible(v)?;
    if !invariants_agree(u, v) {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let n = u.dim();
    if n == 0 {
        return Ok(IsoOutcome::Isomorphic(Matrix::zeros(u.field(), 0, 0)));
    }
    let huv = hom_space(u, v)?;
    if huv.dim() != hom_space(v, u)?.dim() || huv.dim() != hom_space(u, u)?.dim() || huv.dim() != hom_space(v, v)?.dim() {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    if u == v {
        return Ok(IsoOutcome::Isomorphic(Matrix::identity(u.field(), n)));
    }
    let field = u.field();
    let d = huv.dim();
    if d == 0 {
        return Ok(IsoOutcome::NotIsomorphic);
    }
    let found = |m: Matrix<F>| -> Option<IsoOutcome<F>> {
        if m.is_invertible() {
            debug_assert!((0..u.poset().len()).all(|s| u.space(s).image(&m) == *v.space(s)));
            Some(IsoOutcome::Isomorphic(m))
        } else {
            None
        }
    };

    // cheap structured trials first
    for b in huv.basis() {
        if let Some(r) = found(b.clone()) {
            return Ok(r);
        }
    }
    let ones = vec![field.one(); d];
    if let Some(r) = found(huv.combination(&ones)) {
        return Ok(r);
    }

    let grid: Vec<F::Elem> = match field.size() {
        Some(q) if q <= n as u64 + 1 => (0..q).map(|i| field.nth_elem(i)).collect(),
        _ => (0..=n as i64).map(|i| field.from_i64(i)).collect(),
    };
    let budget = crate::search_budget();
    let total = (grid.len() as f64).powi(d as i32);
    if total <= budget as f64 {
        let g = grid.len();
        let mut digits = vec![0usize; d];
        loop {
            let coeffs: Vec<F::Elem> = digits.iter().map(|&i| grid[i].clone()).collect();
            if let Some(r) = found(huv.combination(&coeffs)) {
                return Ok(r);
            }
            let mut k = 0;
            while k < d {
                digits[k] += 1;
                if digits[k] < g {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == d {
                return Ok(IsoOutcome::NotIsomorphic);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = if field.size().is_some() { 200 } else { 20 };
    for _ in 0..trials {
        let coeffs: Vec<F::Elem> = (0..d)
            .map(|_| match field.size() {
                Some(q) => field.nth_elem(rng.gen_range(0..q)),
                None => field.from_i64(rng.gen_range(-50..=50)),
            })
            .collect();
        if let Some(r) = found(huv.combination(&coeffs)) {
            return Ok(r);
        }
    }
    Ok(IsoOutcome::Undecided)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::poset::Poset;
    use crate::sspace::tests::three_subspace_space;
    use std::sync::Arc;

    #[test]
    fn self_isomorphic_with_identity() {
        let v = three_subspace_space();
        let r = are_isomorphic(&v, &v, 1).unwrap();
        assert!(r.witness().unwrap().is_identity());
    }

    #[test]
    fn distinct_simples_are_not_isomorphic() {
        let p = Arc::new(Poset::chain(&["s", "t"]).unwrap());
        let f = PrimeField::new(2).unwrap();
        let simples: Vec<_> = [vec![], vec![0], vec![1]]
            .iter()
            .map(|a| SSpace::simple_lower(p.clone(), f, a).unwrap())
            .collect();
        for (i, a) in simples.iter().enumerate() {
            for (j, b) in simples.iter().enumerate() {
                assert_eq!(are_isomorphic(a, b, 0).unwrap().is_isomorphic(), i == j);
            }
        }
    }

    #[test]
    fn base_change_is_detected() {
        let v = three_subspace_space();
        let g = Matrix::from_i64(&Rationals, &[&[2, 1], &[1, 1]]);
        let w = v.base_change(&g).unwrap();
        assert_ne!(v, w);
        let r = are_isomorphic(&v, &w, 7).unwrap();
        let m = r.witness().unwrap();
        assert!((0..3).all(|s| v.space(s).image(m) == *w.space(s)));
    }

    #[test]
    fn different_dims_are_not_isomorphic() {
        let v = three_subspace_space();
        let k0 = SSpace::simple_lower(v.poset().clone(), Rationals, &[]).unwrap();
        let w = v.direct_sum(&k0).unwrap();
        assert_eq!(are_isomorphic(&v, &w, 0).unwrap(), IsoOutcome::NotIsomorphic);
    }
}
