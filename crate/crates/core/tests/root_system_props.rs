//! Properties of root systems: reflections are isometries, dominant weights
//! have the expected stabilizers, and type C is dual to type B.

mod common;

use hsheaf::{Kind, RootSystem, Scalar, SimpleSubset};
use proptest::prelude::*;

use common::group;

const TYPES: [(Kind, usize); 10] = [
    (Kind::A, 1),
    (Kind::A, 2),
    (Kind::A, 3),
    (Kind::A, 4),
    (Kind::B, 2),
    (Kind::B, 3),
    (Kind::C, 3),
    (Kind::C, 4),
    (Kind::D, 4),
    (Kind::G, 2),
];

#[test]
fn reflections_are_isometries() {
    for (k, r) in TYPES {
        let rs = RootSystem::new(k, r).unwrap();
        let d = rs.ambient_dim();
        let basis: Vec<Vec<Scalar>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        for a in 0..rs.num_roots() {
            for u in &basis {
                for v in &basis {
                    assert_eq!(rs.inner(&rs.reflect(a, u), &rs.reflect(a, v)), rs.inner(u, v), "{k}{r}");
                }
            }
        }
    }
}

#[test]
fn dominant_weight_stabilizer_is_parabolic() {
    for (k, r) in TYPES {
        let g = group(k, r);
        for p in SimpleSubset::all_subsets(r) {
            let theta = g.root_system().dominant_weight(p);
            let stab: Vec<_> = g.elements().filter(|&w| g.act_vector(w, &theta) == theta).collect();
            assert_eq!(stab, g.parabolic_elements(p), "{k}{r} p={p}");
        }
    }
}

#[test]
fn type_c_is_dual_to_type_b() {
    for n in 2..=4 {
        let b = RootSystem::new(Kind::B, n).unwrap();
        let c = RootSystem::new(Kind::C, n).unwrap();
        let mut dual: Vec<Vec<Scalar>> = b
            .roots()
            .iter()
            .map(|a| {
                let s = Scalar::int(2) * b.inner(a, a).recip();
                a.iter().map(|x| s.clone() * x.clone()).collect()
            })
            .collect();
        let mut croots = c.roots().to_vec();
        dual.sort();
        croots.sort();
        assert_eq!(dual, croots, "C{n}");
        let gb = group(Kind::B, n);
        let gc = group(Kind::C, n);
        for i in 0..n {
            assert_eq!(gb.matrix(gb.simple_reflection(i)), gc.matrix(gc.simple_reflection(i)));
        }
    }
}

proptest! {
    #![proptest_config(common::proptest_config(64))]

    #[test]
    fn reflection_is_an_involution(t in 0..TYPES.len(), a in 0usize..64, b in 0usize..64) {
        let (k, r) = TYPES[t];
        let rs = RootSystem::new(k, r).unwrap();
        let a = a % rs.num_roots();
        let b = b % rs.num_roots();
        let beta = rs.root(b).to_vec();
        prop_assert_eq!(rs.reflect(a, &rs.reflect(a, &beta)), beta);
        prop_assert_eq!(rs.reflect_root(a, rs.reflect_root(a, b)), b);
        prop_assert_eq!(rs.reflect_root(a, a), rs.neg(a));
    }
}
