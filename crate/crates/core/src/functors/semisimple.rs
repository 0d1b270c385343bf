use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};
use crate::sspace::{SMorphism, SSpace};

/// `V ≅ ⊕ k_A^{m_A}` with a verified isomorphism from the direct sum.
#[derive(Debug, Clone)]
pub struct SemisimpleDecomposition<F: Field> {
    /// Antichains (sorted indices) with multiplicities, sorted.
    pub multiplicities: Vec<(Vec<usize>, usize)>,
    pub sum: SSpace<F>,
    pub iso: SMorphism<F>,
}

fn assemble<F: Field>(v: &SSpace<F>, mut typed: Vec<(Vec<usize>, Vec<F::Elem>)>) -> Result<SemisimpleDecomposition<F>> {
    typed.sort_by(|a, b| a.0.cmp(&b.0));
    let field = v.field();
    let parts: Vec<SSpace<F>> = typed
        .iter()
        .map(|(a, _)| SSpace::simple_lower(v.poset().clone(), field.clone(), a))
        .collect::<Result<_>>()?;
    let sum = SSpace::direct_sum_all(v.poset().clone(), field.clone(), &parts)?;
    let m = Matrix::from_fn(field, v.dim(), typed.len(), |i, j| typed[j].1[i].clone());
    let iso = SMorphism::new(sum.clone(), v.clone(), m)?;
    if !iso.is_iso() {
        return Err(Error::Mismatch("assembled semisimple decomposition is not an isomorphism".into()));
    }
    let mut multiplicities: Vec<(Vec<usize>, usize)> = Vec::new();
    for (a, _) in typed {
        match multiplicities.last_mut() {
            Some((b, k)) if *b == a => *k += 1,
            _ => multiplicities.push((a, 1)),
        }
    }
    Ok(SemisimpleDecomposition {
        multiplicities,
        sum,
        iso,
    })
}

/// Exact semisimplicity test by splitting off simple summands.
///
/// `k_A` is a summand of `V` iff `V(A) ⊄ W_A = Σ_{s∉⟨A⟩} V(s)`: pick
/// `v ∈ V(A) ∖ W_A` and a functional `g` vanishing on `W_A` with `g(v) = 1`;
/// then `V = kv ⊕ ker g` as S-spaces. A nonzero semisimple space always has a
/// simple summand, so by Krull–Schmidt the greedy split never fails on one.
pub fn semisimple_decompose<F: Field>(v: &SSpace<F>) -> Result<Option<SemisimpleDecomposition<F>>> {
    let p = v.poset().clone();
    let field = v.field().clone();
    let antichains = p.antichains(false);
    let mut typed: Vec<(Vec<usize>, Vec<F::Elem>)> = Vec::new();
    // the remaining summand, as a substructure with its inclusion into V
    let mut cur = v.clone();
    let mut incl = Matrix::identity(&field, v.dim());
    'outer: while cur.dim() > 0 {
        for a in &antichains {
            let up = p.generated_filter(a.members())?;
            let va = cur.meet_space(a.members());
            let wa = cur.join_space(&p.complement(&up));
            if va.is_subspace_of(&wa) {
                continue;
            }
            let x = va.complement_in(&wa).into_iter().next().expect("V(A) not inside W_A");
            // functional vanishing on W_A, nonzero on x
            let ann = wa.annihilator();
            let g = ann
                .basis_vectors()
                .into_iter()
                .find(|g| !field.is_zero(&dot(&field, g, &x)))
                .expect("x outside W_A");
            let hyper = Matrix::from_rows(&field, cur.dim(), vec![g])?.kernel();
            typed.push((a.members().to_vec(), incl.apply(&x)));
            let (rest, inc) = cur.substructure(&hyper)?;
            incl = incl.mul(inc.matrix())?;
            cur = rest;
            continue 'outer;
        }
        return Ok(None);
    }
    Ok(Some(assemble(v, typed)?))
}

fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

/// Decomposition for posets of width at most two via a basis adapted to two
/// flags at once.
///
/// The chain cover turns the subspaces into flags `A_0 ⊆ … ⊆ A_a` and
/// `B_0 ⊆ … ⊆ B_b` (with `0` and `V` at the ends). Complements of
/// `A_{i-1}∩B_j + A_i∩B_{j-1}` in `A_i∩B_j` over all `(i, j)` form a common
/// adapted basis, and each basis vector spans a simple summand.
pub fn semisimple_decompose_flags<F: Field>(v: &SSpace<F>) -> Result<SemisimpleDecomposition<F>> {
    let p = v.poset();
    let cover = p.chain_cover();
    if cover.len() > 2 {
        return Err(Error::NotApplicable {
            point: String::new(),
            width: cover.len(),
        });
    }
    let field = v.field();
    let flag = |chain: Option<&Vec<usize>>| -> Vec<Subspace<F>> {
        let mut f = vec![Subspace::zero(field, v.dim())];
        if let Some(c) = chain {
            f.extend(c.iter().map(|&s| v.space(s).clone()));
        }
        f.push(v.ambient());
        f
    };
    let a = flag(cover.first());
    let b = flag(cover.get(1));
    let mut basis: Vec<Vec<F::Elem>> = Vec::new();
    for i in 1..a.len() {
        for j in 1..b.len() {
            let w = a[i].intersect(&b[j])?;
            let lower = a[i - 1].intersect(&b[j])?.sum(&a[i].intersect(&b[j - 1])?)?;
            basis.extend(w.complement_in(&lower));
        }
    }
    if basis.len() != v.dim() {
        return Err(Error::Mismatch("two-flag basis has the wrong size".into()));
    }
    let typed = basis
        .into_iter()
        .map(|x| {
            let holds: Vec<usize> = p.elements().filter(|&s| v.space(s).contains(&x)).collect();
            (p.minimal(&holds), x)
        })
        .collect();
    assemble(v, typed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::poset::Poset;
    use crate::sspace::tests::three_subspace_space;
    use std::sync::Arc;

    #[test]
    fn power_of_a_simple() {
        let p = Arc::new(Poset::chain(&["s", "t"]).unwrap());
        let k = SSpace::simple_lower(p, PrimeField::new(5).unwrap(), &[1]).unwrap();
        let v = k.power(3);
        let d = semisimple_decompose(&v).unwrap().unwrap();
        assert_eq!(d.multiplicities, vec![(vec![1], 3)]);
        let d2 = semisimple_decompose_flags(&v).unwrap();
        assert_eq!(d2.multiplicities, d.multiplicities);
    }

    #[test]
    fn three_subspaces_are_not_semisimple() {
        let v = three_subspace_space();
        assert!(semisimple_decompose(&v).unwrap().is_none());
        assert!(semisimple_decompose_flags(&v).is_err());
    }

    #[test]
    fn two_subspaces_in_general_position() {
        let p = Arc::new(Poset::antichain_of(&["a", "b"]).unwrap());
        let v = SSpace::from_i64(p, Rationals, 3, &[("a", &[&[1, 0, 0], &[0, 1, 0]]), ("b", &[&[0, 1, 1]])]).unwrap();
        let d = semisimple_decompose(&v).unwrap().unwrap();
        let f = semisimple_decompose_flags(&v).unwrap();
        assert_eq!(d.multiplicities, f.multiplicities);
        let total: usize = d.multiplicities.iter().map(|(_, k)| k).sum();
        assert_eq!(total, 3);
    }
}
