//! Properties of formal group laws and formal group algebras: group law
//! axioms, Chern classes of sums, the Weyl action, division by Chern classes
//! and arithmetic in the localization.

mod common;

use hsheaf::fga::{Law, Lattice, QElement};
use hsheaf::{Fga, Kind, Rational};
use proptest::prelude::*;
use rand::Rng;

use common::{group, random_element, rng};

const TYPES: [(Kind, usize); 4] = [(Kind::A, 2), (Kind::B, 2), (Kind::G, 2), (Kind::A, 3)];

fn context(t: usize, law: usize) -> Fga {
    let (k, r) = TYPES[t];
    match law {
        0 => Fga::additive(group(k, r)),
        1 => Fga::multiplicative(group(k, r)),
        _ => Fga::new(group(k, r), Law::truncated_multiplicative(Rational::from_int(1), 6), Lattice::Weight).unwrap(),
    }
}

fn random_weight<R: Rng>(rng: &mut R, rank: usize) -> Vec<i64> {
    (0..rank).map(|_| rng.gen_range(-2..=2)).collect()
}

proptest! {
    #![proptest_config(common::proptest_config(48))]

    #[test]
    fn group_law_axioms(t in 0..TYPES.len(), law in 0usize..3, seed in any::<u64>()) {
        let f = context(t, law);
        let mut rng = rng(seed);
        let n = f.group().root_system().rank();
        let [x, y, z] = [0, 1, 2].map(|_| f.chern_class(&random_weight(&mut rng, n)));
        let sum = |a: &hsheaf::SElement, b: &hsheaf::SElement| f.formal_sum(a, b).unwrap();
        prop_assert_eq!(sum(&x, &y), sum(&y, &x));
        prop_assert_eq!(sum(&x, &f.zero()), x.clone());
        prop_assert_eq!(sum(&sum(&x, &y), &z), sum(&x, &sum(&y, &z)));
    }

    #[test]
    fn chern_class_of_a_sum(t in 0..TYPES.len(), law in 0usize..3, seed in any::<u64>()) {
        let f = context(t, law);
        let mut rng = rng(seed);
        let n = f.group().root_system().rank();
        let (l, m) = (random_weight(&mut rng, n), random_weight(&mut rng, n));
        let lm: Vec<i64> = l.iter().zip(&m).map(|(a, b)| a + b).collect();
        prop_assert_eq!(f.chern_class(&lm), f.formal_sum(&f.chern_class(&l), &f.chern_class(&m)).unwrap());
    }

    #[test]
    fn weyl_action_is_a_ring_automorphism(t in 0..TYPES.len(), law in 0usize..2, seed in any::<u64>()) {
        let f = context(t, law);
        let mut rng = rng(seed);
        let g = f.group();
        let (w, v) = (random_element(g, &mut rng), random_element(g, &mut rng));
        let a = f.random_element(&mut rng, 2, 3);
        let b = f.random_element(&mut rng, 2, 3);
        prop_assert_eq!(f.weyl_act(w, &(&a * &b)), &f.weyl_act(w, &a) * &f.weyl_act(w, &b));
        prop_assert_eq!(f.weyl_act(w, &(&a + &b)), &f.weyl_act(w, &a) + &f.weyl_act(w, &b));
        prop_assert_eq!(f.weyl_act(g.mul(w, v), &a), f.weyl_act(w, &f.weyl_act(v, &a)));
        let rs = g.root_system();
        let alpha = rng.gen_range(0..rs.num_roots());
        prop_assert_eq!(&f.weyl_act(w, f.x_root(alpha)), f.x_root(g.act_root(w, alpha)));
    }

    #[test]
    fn division_by_chern_classes_inverts_multiplication(t in 0..TYPES.len(), law in 0usize..2, seed in any::<u64>()) {
        let f = context(t, law);
        let mut rng = rng(seed);
        let rs = f.group().root_system();
        let alpha = rng.gen_range(0..rs.num_roots());
        let s = f.random_element(&mut rng, 2, 3);
        prop_assert_eq!(f.divide_by_chern(&(f.x_root(alpha) * &s), alpha), Some(s.clone()));
    }

    #[test]
    fn reflection_differences_are_divisible(t in 0..TYPES.len(), law in 0usize..2, seed in any::<u64>()) {
        let f = context(t, law);
        let mut rng = rng(seed);
        let g = f.group();
        let rs = g.root_system();
        let alpha = rs.positive_ids()[rng.gen_range(0..rs.num_positive())];
        let s = f.random_element(&mut rng, 2, 3);
        prop_assert!(f.divisible(&(&s - &f.weyl_act(g.reflection(alpha), &s)), alpha));
    }

    #[test]
    fn localization_arithmetic(t in 0..TYPES.len(), law in 0usize..2, seed in any::<u64>()) {
        let f = context(t, law);
        let mut rng = rng(seed);
        let g = f.group();
        let rs = g.root_system();
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| {
            let a = rng.gen_range(0..rs.num_roots());
            f.q_mul(&QElement::from_s(f.random_element(rng, 1, 2)), &f.inv_chern(a))
        };
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        prop_assert!(f.q_eq(&f.q_mul(&a, &b), &f.q_mul(&b, &a)));
        prop_assert!(f.q_eq(&f.q_mul(&f.q_mul(&a, &b), &c), &f.q_mul(&a, &f.q_mul(&b, &c))));
        prop_assert!(f.q_eq(&f.q_mul(&a, &f.q_add(&b, &c)), &f.q_add(&f.q_mul(&a, &b), &f.q_mul(&a, &c))));
        prop_assert!(f.q_eq(&f.q_sub(&a, &a), &QElement::zero()));
        let alpha = rng.gen_range(0..rs.num_roots());
        let x = QElement::from_s(f.x_root(alpha).clone());
        prop_assert!(f.q_eq(&f.q_mul(&f.inv_chern(alpha), &x), &QElement::one()));
        let w = random_element(g, &mut rng);
        prop_assert!(f.q_eq(&f.q_act(w, &f.q_mul(&a, &b)), &f.q_mul(&f.q_act(w, &a), &f.q_act(w, &b))));
    }
}
