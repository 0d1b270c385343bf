//! Seeded generators for posets, S-spaces and morphisms.

use std::sync::Arc;

use rand::Rng;

use crate::error::Result;
use crate::linalg::{Field, Subspace};
use crate::poset::Poset;
use crate::sspace::{hom_space, SMorphism, SSpace};

/// A uniform element of a finite field; small integers and halves over `Q`.
pub fn small_scalar<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R) -> F::Elem {
    match field.size() {
        Some(q) => field.nth_elem(rng.gen_range(0..q)),
        None => {
            let a = field.from_i64(rng.gen_range(-3..=3));
            if rng.gen_bool(0.2) {
                field.mul(&a, &field.inv(&field.from_i64(2)).expect("2 is invertible"))
            } else {
                a
            }
        }
    }
}

pub fn random_vector<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R, n: usize) -> Vec<F::Elem> {
    (0..n).map(|_| small_scalar(field, rng)).collect()
}

/// A poset on `s0 .. s{n-1}` where each `si < sj` (`i < j`) is added with
/// probability `density` before closing.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rels.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    Poset::new(&labels, &rels).expect("relations go up in index")
}

/// A random poset of width at most `w`, built as a union of `w` chains with
/// random cross relations.
pub fn random_poset_of_width<R: Rng + ?Sized>(rng: &mut R, n: usize, w: usize, density: f64) -> Poset {
    loop {
        let p = random_poset(rng, n, density);
        if p.width() <= w {
            return p;
        }
    }
}

/// Spans of `0..=max_gens` random vectors.
pub fn random_subspace<F: Field, R: Rng + ?Sized>(field: &F, rng: &mut R, ambient: usize, max_gens: usize) -> Subspace<F> {
    let k = rng.gen_range(0..=max_gens);
    let vecs = (0..k).map(|_| random_vector(field, rng, ambient)).collect();
    Subspace::from_vectors(field, ambient, vecs).expect("vectors have the ambient length")
}

/// A random S-space: along a linear extension each `V(s)` is the sum of the
/// spaces below plus a few random vectors.
pub fn random_sspace<F: Field, R: Rng + ?Sized>(rng: &mut R, poset: Arc<Poset>, field: F, dim: usize) -> SSpace<F> {
    let mut spaces = vec![Subspace::zero(&field, dim); poset.len()];
    for s in poset.linear_extension() {
        let mut w = random_subspace(&field, rng, dim, 2.min(dim));
        if rng.gen_bool(0.1) {
            w = Subspace::full(&field, dim);
        }
        for r in poset.elements().filter(|&r| poset.lt(r, s)) {
            w = w.sum(&spaces[r]).expect("same ambient");
        }
        spaces[s] = w;
    }
    SSpace::new(poset, field, dim, spaces).expect("monotone by construction")
}

/// A random element of `Hom(U, V)`.
pub fn random_morphism<F: Field, R: Rng + ?Sized>(rng: &mut R, u: &SSpace<F>, v: &SSpace<F>) -> Result<SMorphism<F>> {
    let h = hom_space(u, v)?;
    let coeffs: Vec<F::Elem> = (0..h.dim()).map(|_| small_scalar(u.field(), rng)).collect();
    SMorphism::new(u.clone(), v.clone(), h.combination(&coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_valid_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let p = Arc::new(random_poset(&mut a, 5, 0.4));
        assert_eq!(*p, random_poset(&mut b, 5, 0.4));
        let u = random_sspace(&mut a, p.clone(), PrimeField::new(5).unwrap(), 3);
        u.validate().unwrap();
        let v = random_sspace(&mut a, p.clone(), PrimeField::new(5).unwrap(), 2);
        let f = random_morphism(&mut a, &u, &v).unwrap();
        assert_eq!(f.matrix().rows(), 2);
        let w = random_sspace(&mut a, p, Rationals, 4);
        w.validate().unwrap();
        assert!(random_poset_of_width(&mut a, 6, 2, 0.3).width() <= 2);
    }
}
