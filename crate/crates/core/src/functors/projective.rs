use std::sync::Arc;

use super::sum_over;
use crate::error::Result;
use crate::linalg::{Field, Matrix};
use crate::sspace::{SMorphism, SSpace};

/// `V ≅ ⊕_t P_t^{n_t}` (or the injective counterpart), with a verified
/// isomorphism from the direct sum.
#[derive(Debug, Clone)]
pub struct ProjectiveDecomposition<F: Field> {
    /// `(t, n_t)` with `t = None` standing for `ω` (resp. `0`); zero
    /// multiplicities are omitted.
    pub multiplicities: Vec<(Option<usize>, usize)>,
    pub sum: SSpace<F>,
    pub iso: SMorphism<F>,
}

// (t, n_t) as in `ProjectiveDecomposition::multiplicities`
type Summand = (Option<usize>, usize);
type Block<F> = (Option<usize>, Vec<Vec<<F as Field>::Elem>>);

struct Generators<F: Field> {
    // (t, complement vectors of Σ_{s<t} V(s) in V(t)); ω last
    blocks: Vec<Block<F>>,
}

fn generators<F: Field>(v: &SSpace<F>) -> Generators<F> {
    let p = v.poset();
    let mut blocks = Vec::new();
    for t in p.elements() {
        let rad = sum_over(v, p.elements().filter(|&s| p.lt(s, t)));
        blocks.push((Some(t), v.space(t).complement_in(&rad)));
    }
    let all = sum_over(v, p.elements());
    blocks.push((None, v.ambient().complement_in(&all)));
    Generators { blocks }
}

/// `⊕ P_t^{n_t}` and the map sending the generators to the chosen vectors.
fn cover_from<F: Field>(v: &SSpace<F>, g: &Generators<F>) -> Result<(Vec<Summand>, SSpace<F>, Matrix<F>)> {
    let field = v.field();
    let mut parts = Vec::new();
    let mut cols: Vec<Vec<F::Elem>> = Vec::new();
    let mut mult = Vec::new();
    for (t, vecs) in &g.blocks {
        if vecs.is_empty() {
            continue;
        }
        mult.push((*t, vecs.len()));
        let pt = SSpace::projective(v.poset().clone(), field.clone(), *t)?;
        for c in vecs {
            parts.push(pt.clone());
            cols.push(c.clone());
        }
    }
    let sum = SSpace::direct_sum_all(v.poset().clone(), field.clone(), &parts)?;
    let m = Matrix::from_fn(field, v.dim(), cols.len(), |i, j| cols[j][i].clone());
    Ok((mult, sum, m))
}

/// Decides projectivity: `V` is projective iff the generators chosen as
/// complements of the radicals give an isomorphism from `⊕ P_t^{n_t}`.
pub fn decompose_projective<F: Field>(v: &SSpace<F>) -> Result<Option<ProjectiveDecomposition<F>>> {
    let g = generators(v);
    let (multiplicities, sum, m) = cover_from(v, &g)?;
    if sum.dim() != v.dim() {
        return Ok(None);
    }
    let f = SMorphism::new(sum.clone(), v.clone(), m)?;
    if !f.is_iso() {
        return Ok(None);
    }
    Ok(Some(ProjectiveDecomposition {
        multiplicities,
        sum,
        iso: f,
    }))
}

/// Projective cover `P -> V`: a proper, right minimal epimorphism.
pub fn projective_cover<F: Field>(v: &SSpace<F>) -> Result<(SSpace<F>, SMorphism<F>)> {
    let g = generators(v);
    let (_, sum, m) = cover_from(v, &g)?;
    let f = SMorphism::new(sum.clone(), v.clone(), m)?;
    Ok((sum, f))
}

/// Injective envelope `V -> I`, obtained by dualizing the projective cover
/// of `D V` over `S^op`.
pub fn injective_envelope<F: Field>(v: &SSpace<F>) -> Result<(SSpace<F>, SMorphism<F>)> {
    let op = Arc::new(v.poset().opposite());
    let dv = v.dualize_over(op);
    let (_, cover) = projective_cover(&dv)?;
    let mono = cover.dualize_over(v.poset().clone());
    Ok((mono.target().clone(), mono))
}

/// Decides injectivity through the dual: `V` is injective iff `D V` is
/// projective over `S^op`; multiplicities refer to `I_t` (`None` is `I_0`).
pub fn decompose_injective<F: Field>(v: &SSpace<F>) -> Result<Option<ProjectiveDecomposition<F>>> {
    let op = Arc::new(v.poset().opposite());
    let dv = v.dualize_over(op);
    let Some(d) = decompose_projective(&dv)? else {
        return Ok(None);
    };
    let iso = d.iso.dualize_over(v.poset().clone());
    // D(iso): V -> D(⊕P_t); invert to present V as a sum of injectives
    let inv = iso.matrix().inverse().expect("isomorphism");
    let sum = iso.target().clone();
    let back = SMorphism::new(sum.clone(), v.clone(), inv)?;
    Ok(Some(ProjectiveDecomposition {
        multiplicities: d.multiplicities,
        sum,
        iso: back,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::poset::Poset;
    use crate::sspace::tests::three_subspace_space;

    #[test]
    fn sum_of_projectives_decomposes() {
        let p = Arc::new(Poset::chain(&["s", "t"]).unwrap());
        let ps = SSpace::projective(p.clone(), Rationals, Some(0)).unwrap();
        let pw = SSpace::projective(p.clone(), Rationals, None).unwrap();
        let v = ps.direct_sum(&pw.power(2)).unwrap();
        let d = decompose_projective(&v).unwrap().unwrap();
        assert_eq!(d.multiplicities, vec![(Some(0), 1), (None, 2)]);
        assert!(d.iso.is_iso());
    }

    #[test]
    fn three_subspaces_are_not_projective() {
        let v = three_subspace_space();
        assert!(decompose_projective(&v).unwrap().is_none());
        let (p, f) = projective_cover(&v).unwrap();
        assert_eq!(p.dim(), 3);
        assert!(f.is_epi() && f.is_proper() && f.is_right_minimal());
    }

    #[test]
    fn cover_of_projective_is_iso() {
        let p = Arc::new(Poset::chain(&["s", "t"]).unwrap());
        let k0 = SSpace::simple_lower(p, Rationals, &[]).unwrap();
        let (c, f) = projective_cover(&k0).unwrap();
        assert_eq!(c, k0);
        assert!(f.is_iso());
    }

    #[test]
    fn injective_envelope_is_proper_mono() {
        let v = three_subspace_space();
        let (i, f) = injective_envelope(&v).unwrap();
        assert!(f.is_mono() && f.is_proper() && f.is_left_minimal());
        assert!(decompose_injective(&i).unwrap().is_some());
        assert!(decompose_injective(&v).unwrap().is_none());
    }
}
