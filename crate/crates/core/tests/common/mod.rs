//! Helpers shared by the integration tests: contexts, seeded sampling and
//! independent reference computations.

#![allow(dead_code)]

use std::sync::Arc;

use hsheaf::demazure::{push_pull, twisted_mul};
use hsheaf::fga::QElement;
use hsheaf::sections::{perturb, sample_qap_member, SectionTuple};
use hsheaf::{Cofunction, Fga, Kind, RootSystem, SElement, SimpleSubset, TwistedElement, WeylElement, WeylGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The Weyl group of a root system.
pub fn group(kind: Kind, rank: usize) -> Arc<WeylGroup> {
    Arc::new(WeylGroup::new(RootSystem::new(kind, rank).unwrap()).unwrap())
}

/// Additive context over the rationals.
pub fn additive(kind: Kind, rank: usize) -> Fga {
    Fga::additive(group(kind, rank))
}

/// Multiplicative context over the rationals.
pub fn multiplicative(kind: Kind, rank: usize) -> Fga {
    Fga::multiplicative(group(kind, rank))
}

/// A subset from 1-based indices.
pub fn sub(ix: &[usize]) -> SimpleSubset {
    SimpleSubset::from_one_based(ix)
}

/// `x_α` for the root with the given simple-root coordinates.
pub fn root(f: &Fga, coords: &[i64]) -> SElement {
    f.x_root(f.group().root_system().find_by_simple_coords(coords).unwrap()).clone()
}

/// A deterministic generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A seed derived from a label and a pair of subsets.
pub fn pair_seed(tag: u64, q: SimpleSubset, p: SimpleSubset) -> u64 {
    let enc = |s: SimpleSubset| s.iter().fold(0u64, |acc, i| acc | (1 << i));
    tag.wrapping_mul(1_000_003) ^ (enc(q) << 16) ^ enc(p)
}

/// Every ordered pair of subsets of the simple roots.
pub fn all_pairs(rank: usize) -> Vec<(SimpleSubset, SimpleSubset)> {
    SimpleSubset::all_subsets(rank)
        .flat_map(|q| SimpleSubset::all_subsets(rank).map(move |p| (q, p)))
        .collect()
}

/// `n` tuples over `^QW^P`: members of `^QA^P`, products of two members and
/// perturbations of members, in the proportions 2 : 1 : 2.
pub fn qap_samples<R: Rng>(f: &Fga, rng: &mut R, q: SimpleSubset, p: SimpleSubset, n: usize) -> Vec<SectionTuple> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let a = sample_qap_member(f, rng, q, p, 2, 1);
        match out.len() % 5 {
            0 | 1 => out.push(a),
            2 => {
                let b = sample_qap_member(f, rng, q, p, 1, 1);
                out.push(a.mul(&b));
            }
            _ => out.push(perturb(f, rng, &a, 1)),
        }
    }
    out
}

/// A uniformly random group element.
pub fn random_element<R: Rng>(g: &WeylGroup, rng: &mut R) -> WeylElement {
    WeylElement(rng.gen_range(0..g.order()))
}

/// A random element of Q_W: two polynomial multiples of group elements plus a
/// polynomial multiple of a push-pull element.
pub fn random_twisted<R: Rng>(f: &Fga, rng: &mut R) -> TwistedElement {
    let g = f.group();
    let mut z = TwistedElement::zero();
    for _ in 0..2 {
        let c = QElement::from_s(f.random_element(rng, 1, 2));
        z = z.add(f, &TwistedElement::monomial(c, random_element(g, rng)));
    }
    let i = rng.gen_range(0..g.root_system().rank());
    let c = TwistedElement::scalar(QElement::from_s(f.random_element(rng, 1, 2)));
    z.add(f, &twisted_mul(f, &c, &push_pull(f, i)))
}

/// A random cofunction over `W^P` with polynomial values.
pub fn random_cofunction<R: Rng>(f: &Fga, rng: &mut R, p: SimpleSubset) -> Cofunction {
    let n = f.group().coset_table(p).len();
    Cofunction::from_s(p, (0..n).map(|_| f.random_element(rng, 1, 2)).collect())
}

/// The characteristic map over W for an element of the localization:
/// `Σ_x x(q) f_x`, computed directly from the group action.
pub fn char_full(f: &Fga, q: &QElement) -> Cofunction {
    let g = f.group();
    Cofunction { theta_p: SimpleSubset::empty(), values: g.elements().map(|x| f.q_act(x, q)).collect() }
}

/// Values of a section tuple as a cofunction over `W^P`.
pub fn as_cofunction(t: &SectionTuple) -> Cofunction {
    Cofunction::from_s(t.theta_p, t.values.clone())
}

/// A tuple with polynomial values over `W^P` from a cofunction.
pub fn as_tuple(f: &Fga, c: &Cofunction) -> Option<SectionTuple> {
    Some(SectionTuple::new(SimpleSubset::empty(), c.theta_p, c.to_s(f)?))
}

/// Proptest settings with `cases` cases and no failure persistence files.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, failure_persistence: None, ..Default::default() }
}
