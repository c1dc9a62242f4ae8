//! Properties of Weyl groups: parabolic decompositions, minimal
//! representatives, the stabilizers W_u and three independent counts of
//! double cosets.

mod common;

use std::collections::BTreeSet;

use hsheaf::{Kind, Scalar, SimpleSubset, WeylElement};
use proptest::prelude::*;

use common::{group, random_element, rng};

const TYPES: [(Kind, usize); 9] = [
    (Kind::A, 1),
    (Kind::A, 2),
    (Kind::A, 3),
    (Kind::A, 4),
    (Kind::B, 2),
    (Kind::B, 3),
    (Kind::C, 3),
    (Kind::D, 4),
    (Kind::G, 2),
];

#[test]
fn project_min_is_the_unique_shortest_coset_element() {
    for (k, r) in TYPES {
        let g = group(k, r);
        for p in SimpleSubset::all_subsets(r) {
            let wp = g.parabolic_elements(p);
            for x in g.elements() {
                let coset: Vec<WeylElement> = wp.iter().map(|&v| g.mul(x, v)).collect();
                let min = coset.iter().map(|&y| g.length(y)).min().unwrap();
                let shortest: Vec<WeylElement> = coset.iter().copied().filter(|&y| g.length(y) == min).collect();
                assert_eq!(shortest, vec![g.project_min(x, p)], "{k}{r} p={p}");
            }
        }
    }
}

#[test]
fn double_decomposition_round_trip() {
    for (k, r) in TYPES {
        let g = group(k, r);
        for q in SimpleSubset::all_subsets(r) {
            for p in SimpleSubset::all_subsets(r) {
                let table = g.double_coset_table(q, p);
                for y in g.elements() {
                    let (w, u, v) = g.double_parabolic_decompose(y, q, p);
                    assert_eq!(g.mul(g.mul(w, u), v), y);
                    assert_eq!(g.length(w) + g.length(u) + g.length(v), g.length(y));
                    assert!(g.in_parabolic(w, q) && g.in_parabolic(v, p));
                    assert_eq!(table.project(y), u);
                }
            }
        }
    }
}

#[test]
fn stabilizer_of_a_representative_is_the_intersection() {
    for (k, r) in TYPES {
        let g = group(k, r);
        for q in SimpleSubset::all_subsets(r) {
            for p in SimpleSubset::all_subsets(r) {
                let table = g.double_coset_table(q, p);
                for (u, d) in table.reps.iter().zip(&table.data) {
                    let expected: Vec<WeylElement> = g
                        .parabolic_elements(q)
                        .into_iter()
                        .filter(|&w| g.in_parabolic(g.mul(g.mul(g.inv(*u), w), *u), p))
                        .collect();
                    assert_eq!(d.w_u, expected, "{k}{r} q={q} p={p} u={}", g.word_string(*u));
                    assert_eq!(g.parabolic_elements(d.theta_u), expected);
                }
            }
        }
    }
}

/// `(μ, α) ≥ 0` for every simple root of Θ_Q.
fn q_dominant(g: &hsheaf::WeylGroup, mu: &[Scalar], q: SimpleSubset) -> bool {
    let rs = g.root_system();
    q.iter().all(|i| rs.inner(mu, rs.root(rs.simple(i))).signum() >= 0)
}

#[test]
fn three_counts_of_double_cosets_agree() {
    for (k, r) in TYPES {
        let g = group(k, r);
        for q in SimpleSubset::all_subsets(r) {
            let wq = g.parabolic_elements(q);
            for p in SimpleSubset::all_subsets(r) {
                let reps = g.double_coset_table(q, p).len();
                let cosets = g.coset_table(p);
                let orbits: BTreeSet<BTreeSet<WeylElement>> = cosets
                    .reps
                    .iter()
                    .map(|&v| wq.iter().map(|&w| g.act_on_coset(w, v, p)).collect())
                    .collect();
                let theta = g.root_system().dominant_weight(p);
                let weights: BTreeSet<Vec<Scalar>> = g.elements().map(|w| g.act_vector(w, &theta)).collect();
                let dominant = weights.iter().filter(|mu| q_dominant(&g, mu, q)).count();
                assert_eq!((orbits.len(), dominant), (reps, reps), "{k}{r} q={q} p={p}");
            }
        }
    }
}

proptest! {
    #![proptest_config(common::proptest_config(64))]

    #[test]
    fn group_laws(t in 0..TYPES.len(), seed in any::<u64>()) {
        let (k, r) = TYPES[t];
        let g = group(k, r);
        let mut rng = rng(seed);
        let (a, b, c) = (random_element(&g, &mut rng), random_element(&g, &mut rng), random_element(&g, &mut rng));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), WeylElement::IDENTITY);
        prop_assert_eq!(g.length(a), g.length(g.inv(a)));
        prop_assert_eq!(g.from_word(&g.word(a).iter().map(|&i| i as usize).collect::<Vec<_>>()), a);
    }

    #[test]
    fn reflections_act_on_roots(t in 0..TYPES.len(), seed in any::<u64>(), a in 0usize..64) {
        let (k, r) = TYPES[t];
        let g = group(k, r);
        let rs = g.root_system();
        let a = a % rs.num_roots();
        let w = random_element(&g, &mut rng(seed));
        // w s_α w⁻¹ = s_{w(α)}.
        let conj = g.mul(g.mul(w, g.reflection(rs.positive_of(a))), g.inv(w));
        prop_assert_eq!(conj, g.reflection(rs.positive_of(g.act_root(w, a))));
    }
}
