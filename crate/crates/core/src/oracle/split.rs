//! Indecomposability certificates and Krull–Schmidt splitting.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::random::small_scalar;
use crate::search_budget;
use crate::sspace::{hom_space, SSpace};

/// Default cap on `dim End(V)` for the exhaustive search.
pub const DEFAULT_END_CAP: usize = 14;
const RANDOM_TRIALS: usize = 200;

/// Outcome of the search for a splitting endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Splitting<F: Field> {
    /// `End(V)` is local.
    Local,
    /// `h` with `h^n` neither zero nor invertible, `n = dim V`; then
    /// `V = ker h^n ⊕ im h^n` (Fitting).
    Splits(Matrix<F>),
    /// Budget exhausted without a verdict.
    Undecided,
    /// `V = 0`, which is not indecomposable.
    Zero,
}

fn power<F: Field>(h: &Matrix<F>, n: usize) -> Matrix<F> {
    let mut acc = h.clone();
    for _ in 1..n {
        acc = acc.mul(h).expect("square");
    }
    acc
}

fn is_fitting_witness<F: Field>(h: &Matrix<F>, n: usize) -> Option<Matrix<F>> {
    let hn = power(h, n);
    (!hn.is_zero() && !hn.is_invertible()).then_some(hn)
}

/// Searches `End(V)` for an element that is neither nilpotent nor
/// invertible. None exists iff `End(V)` is local iff `V` has no nontrivial
/// idempotent, so the exhaustive scan (over a finite field with
/// `q^dim End` within budget and `dim End <= end_cap`) certifies
/// indecomposability. `seed` fixes the scan order and the random trials.
pub fn find_splitting<F: Field>(v: &SSpace<F>, end_cap: usize, seed: u64) -> Result<Splitting<F>> {
    let n = v.dim();
    if n == 0 {
        return Ok(Splitting::Zero);
    }
    let end = hom_space(v, v)?;
    let d = end.dim();
    if d == 1 {
        return Ok(Splitting::Local);
    }
    let field = v.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut basis: Vec<Matrix<F>> = end.basis().to_vec();
    basis.shuffle(&mut rng);
    let combine = |c: &[F::Elem]| {
        let mut m = Matrix::zeros(field, n, n);
        for (ci, b) in c.iter().zip(&basis) {
            if !field.is_zero(ci) {
                m = m.add(&b.scale(ci)).expect("same shape");
            }
        }
        m
    };
    let total = field
        .size()
        .and_then(|q| (d <= end_cap).then(|| q.checked_pow(d as u32)).flatten())
        .filter(|&t| t <= search_budget());
    if let (Some(total), Some(q)) = (total, field.size()) {
        let offset = rng.gen_range(0..total);
        for k in 0..total {
            let mut idx = (k + offset) % total;
            let c: Vec<F::Elem> = (0..d)
                .map(|_| {
                    let e = field.nth_elem(idx % q);
                    idx /= q;
                    e
                })
                .collect();
            let h = combine(&c);
            if is_fitting_witness(&h, n).is_some() {
                return Ok(Splitting::Splits(h));
            }
        }
        return Ok(Splitting::Local);
    }
    for _ in 0..RANDOM_TRIALS {
        let c: Vec<F::Elem> = (0..d).map(|_| small_scalar(field, &mut rng)).collect();
        let h = combine(&c);
        if is_fitting_witness(&h, n).is_some() {
            return Ok(Splitting::Splits(h));
        }
    }
    Ok(Splitting::Undecided)
}

/// Certified indecomposability; `BudgetExceeded` when undecided.
pub fn is_indecomposable<F: Field>(v: &SSpace<F>) -> Result<bool> {
    match find_splitting(v, DEFAULT_END_CAP, 0)? {
        Splitting::Local => Ok(true),
        Splitting::Splits(_) | Splitting::Zero => Ok(false),
        Splitting::Undecided => Err(Error::BudgetExceeded(format!(
            "no verdict on a space of dimension {} (End too large for exhaustive search)",
            v.dim()
        ))),
    }
}

/// The Fitting decomposition `V = ker h^n ⊕ im h^n` as two substructures.
pub fn fitting_split<F: Field>(v: &SSpace<F>, h: &Matrix<F>) -> Result<(SSpace<F>, SSpace<F>)> {
    let hn = power(h, v.dim());
    let (k, _) = v.substructure(&hn.kernel())?;
    let (i, _) = v.substructure(&hn.image())?;
    Ok((k, i))
}

/// Splits `V` into indecomposable summands. Different seeds give different
/// splitting orders; the multiset of summands is the same up to isomorphism.
pub fn decompose<F: Field>(v: &SSpace<F>, end_cap: usize, seed: u64) -> Result<Vec<SSpace<F>>> {
    let mut out = Vec::new();
    let mut stack = vec![v.clone()];
    let mut round = seed;
    while let Some(w) = stack.pop() {
        round = round.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        match find_splitting(&w, end_cap, round)? {
            Splitting::Zero => {}
            Splitting::Local => out.push(w),
            Splitting::Splits(h) => {
                let (a, b) = fitting_split(&w, &h)?;
                stack.push(a);
                stack.push(b);
            }
            Splitting::Undecided => {
                return Err(Error::BudgetExceeded(format!(
                    "could not split a summand of dimension {}",
                    w.dim()
                )))
            }
        }
    }
    Ok(out)
}
