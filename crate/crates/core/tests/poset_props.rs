use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use posetrep::io::{parse_poset, write_poset};
use posetrep::poset::{Poset, SemilatticeMode};
use posetrep::random::random_poset;

fn any_poset() -> impl Strategy<Value = Poset> {
    (any::<u64>(), 0usize..=7, 0.0f64..0.7).prop_map(|(seed, n, d)| random_poset(&mut ChaCha8Rng::seed_from_u64(seed), n, d))
}

fn brute_width(p: &Poset) -> usize {
    let n = p.len();
    (0u32..1 << n)
        .filter(|&m| (0..n).all(|a| (0..n).all(|b| a == b || m >> a & 1 == 0 || m >> b & 1 == 0 || !p.comparable(a, b))))
        .map(u32::count_ones)
        .max()
        .unwrap_or(0) as usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_axioms(p in any_poset()) {
        for a in p.elements() {
            prop_assert!(p.leq(a, a));
            for b in p.elements() {
                if a != b && p.leq(a, b) {
                    prop_assert!(!p.leq(b, a));
                }
                for c in p.elements() {
                    if p.leq(a, b) && p.leq(b, c) {
                        prop_assert!(p.leq(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn covers_generate_the_order(p in any_poset()) {
        let covers = p.covers();
        let labels = p.labels().to_vec();
        let rel: Vec<(String, String)> = covers.iter().map(|&(a, b)| (labels[a].clone(), labels[b].clone())).collect();
        let q = Poset::new(&labels, &rel).unwrap();
        prop_assert_eq!(&q, &p);
        // no cover is implied by others
        for &(a, b) in &covers {
            prop_assert!(!p.elements().any(|c| c != a && c != b && p.lt(a, c) && p.lt(c, b)));
        }
    }

    #[test]
    fn width_and_chain_cover(p in any_poset()) {
        let w = brute_width(&p);
        prop_assert_eq!(p.width(), w);
        let chains = p.chain_cover();
        prop_assert_eq!(chains.len(), w);
        let mut seen: Vec<usize> = chains.iter().flatten().copied().collect();
        seen.sort();
        prop_assert_eq!(seen, p.elements().collect::<Vec<_>>());
        for c in &chains {
            for x in c {
                for y in c {
                    prop_assert!(p.comparable(*x, *y));
                }
            }
        }
    }

    #[test]
    fn linear_extension_respects_order(p in any_poset()) {
        let ext = p.linear_extension();
        let pos = |x: usize| ext.iter().position(|&y| y == x).unwrap();
        for a in p.elements() {
            for b in p.elements() {
                if p.lt(a, b) {
                    prop_assert!(pos(a) < pos(b));
                }
            }
        }
    }

    #[test]
    fn opposite_is_an_involution(p in any_poset()) {
        let op = p.opposite();
        prop_assert_eq!(op.opposite(), p.clone());
        for a in p.elements() {
            for b in p.elements() {
                prop_assert_eq!(p.leq(a, b), op.leq(b, a));
            }
        }
        prop_assert_eq!(op.width(), p.width());
    }

    #[test]
    fn filters_and_ideals_are_complementary(p in any_poset(), mask in any::<u8>()) {
        let set: Vec<usize> = p.elements().filter(|&i| mask >> (i % 8) & 1 == 1).collect();
        let f = p.generated_filter(&set).unwrap();
        prop_assert!(p.is_filter(&f));
        prop_assert!(p.is_ideal(&p.complement(&f)));
        let i = p.generated_ideal(&set).unwrap();
        prop_assert!(p.is_ideal(&i));
        prop_assert!(set.iter().all(|x| f.contains(x) && i.contains(x)));
        prop_assert!(p.is_antichain(&p.minimal(&set)));
    }

    #[test]
    fn antichain_count_matches_filter_count(p in any_poset()) {
        let n = p.len();
        let filters = (0u32..1 << n)
            .filter(|&m| (0..n).all(|a| m >> a & 1 == 0 || (0..n).all(|b| !p.leq(a, b) || m >> b & 1 == 1)))
            .count();
        prop_assert_eq!(p.antichains(false).len(), filters);
        let semi = p.antichain_semilattice(SemilatticeMode::Meet, false);
        prop_assert_eq!(semi.poset.len(), filters);
    }

    #[test]
    fn text_round_trip(p in any_poset()) {
        let q = parse_poset(&write_poset(&p)).unwrap();
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.stable_hash(), p.stable_hash());
    }

    #[test]
    fn hash_is_relabel_sensitive_but_order_insensitive(p in any_poset()) {
        let q = p.relabel(|l| format!("{l}_")).unwrap();
        if !p.is_empty() {
            prop_assert_ne!(q.stable_hash(), p.stable_hash());
        }
        prop_assert_eq!(p.normalized().stable_hash(), p.stable_hash());
    }
}

#[test]
fn dot_lists_covers() {
    let p = parse_poset("elements: a b c d e f g p\nrelations: p<a p<b p<c e<p e<d g<e g<f\n").unwrap();
    let dot = p.to_dot();
    assert_eq!(dot.matches("->").count(), 7);
    assert!(dot.contains("\"e\" -> \"p\""));
}
