//! Properties of parabolic and double moment graphs: independence of
//! closedness from the label choice, the description of the edges of G^P
//! through W_Q-orbits, and closedness computed on weight vectors.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use hsheaf::moment_graph::{
    build_double_graph, build_parabolic_graph, check_mge, is_closed_brute, is_closed_by_closure, label_choices,
    with_labels, wq_closure,
};
use hsheaf::{Kind, LabelPolicy, Scalar, SimpleSubset, WeylElement, WeylGroup};

use common::{all_pairs, group};

const TYPES: [(Kind, usize); 7] =
    [(Kind::A, 2), (Kind::A, 3), (Kind::B, 2), (Kind::B, 3), (Kind::C, 2), (Kind::C, 3), (Kind::G, 2)];

#[test]
fn closedness_does_not_depend_on_the_label_choice() {
    for (k, r) in TYPES {
        let g = group(k, r);
        for (q, p) in all_pairs(r) {
            let dg = build_double_graph(&g, q, p, LabelPolicy::AllCandidates);
            let brute = is_closed_brute(&g, q, p);
            let choices = label_choices(&dg);
            let step = choices.len().div_ceil(256);
            for choice in choices.iter().step_by(step) {
                let labelled = with_labels(&dg, choice);
                assert_eq!(is_closed_by_closure(&g, &labelled), brute, "{k}{r} q={q} p={p} {choice:?}");
            }
        }
    }
}

#[test]
fn closures_satisfy_mge_for_w_q() {
    for (k, r) in TYPES {
        let g = group(k, r);
        for (q, p) in all_pairs(r) {
            let dg = build_double_graph(&g, q, p, LabelPolicy::MinLabel);
            assert!(check_mge(&g, &wq_closure(&g, &dg), q), "{k}{r} q={q} p={p}");
            assert!(build_parabolic_graph(&g, p).check_axioms(&g));
        }
    }
}

/// The edge `x → y` labelled `l` moved by `w`, oriented by length.
fn moved(g: &WeylGroup, p: SimpleSubset, w: WeylElement, x: WeylElement, y: WeylElement, l: usize) -> (WeylElement, WeylElement, usize) {
    let rs = g.root_system();
    let (a, b) = (g.act_on_coset(w, x, p), g.act_on_coset(w, y, p));
    let l = rs.positive_of(g.act_root(w, l));
    if g.length(a) < g.length(b) {
        (a, b, l)
    } else {
        (b, a, l)
    }
}

#[test]
fn edges_of_g_p_are_intra_orbit_or_transported() {
    for (k, r) in TYPES {
        let g = group(k, r);
        let rs = g.root_system();
        for (q, p) in all_pairs(r) {
            let gp = build_parabolic_graph(&g, p).edge_triples();
            let dtable = g.double_coset_table(q, p);
            let mut reached = BTreeSet::new();
            for &u in &dtable.reps {
                for a in rs.positive_ids() {
                    let y = g.project_min(g.mul(g.reflection(a), u), p);
                    if y == u {
                        continue;
                    }
                    for w in g.parabolic_elements(q) {
                        let t = moved(&g, p, w, u, y, a);
                        assert!(gp.contains(&t), "{k}{r} q={q} p={p}: transport leaves G^P");
                        reached.insert(t);
                    }
                }
            }
            for t in &gp {
                let intra = dtable.project(t.0) == dtable.project(t.1);
                assert!(intra || reached.contains(t), "{k}{r} q={q} p={p}: edge {t:?}");
            }
        }
    }
}

fn q_dominant_rep(g: &WeylGroup, mu: &[Scalar], q: SimpleSubset) -> Vec<Scalar> {
    let rs = g.root_system();
    let mut v = mu.to_vec();
    'outer: loop {
        for i in q.iter() {
            let a = rs.simple(i);
            if rs.inner(&v, rs.root(a)).signum() < 0 {
                v = rs.reflect(a, &v);
                continue 'outer;
            }
        }
        return v;
    }
}

/// The multi-label criterion evaluated on the orbit `Wθ`: vertices are the
/// Q-dominant weights, an edge `μ → ν` exists for each positive α with
/// `(μ, α) > 0`, and ν is the Q-dominant weight in `W_Q s_α μ`.
fn closed_on_vectors(g: &WeylGroup, q: SimpleSubset, p: SimpleSubset) -> bool {
    let rs = g.root_system();
    let theta = rs.dominant_weight(p);
    let orbit: BTreeSet<Vec<Scalar>> = g.elements().map(|w| g.act_vector(w, &theta)).collect();
    let wq = g.parabolic_elements(q);
    for mu in orbit.iter().filter(|mu| q_dominant_rep(g, mu, q) == **mu) {
        let stab: Vec<WeylElement> = wq.iter().copied().filter(|&w| g.act_vector(w, mu) == *mu).collect();
        let mut groups: BTreeMap<Vec<Scalar>, Vec<usize>> = BTreeMap::new();
        for a in rs.positive_ids() {
            if rs.inner(mu, rs.root(a)).signum() <= 0 {
                continue;
            }
            let nu = q_dominant_rep(g, &rs.reflect(a, mu), q);
            if nu != *mu {
                groups.entry(nu).or_default().push(a);
            }
        }
        for roots in groups.values() {
            for &a in roots {
                for &b in roots {
                    if a != b && !stab.iter().any(|&w| rs.positive_of(g.act_root(w, a)) == b) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn closedness_on_weight_vectors_agrees_with_representatives() {
    for (k, r) in TYPES.into_iter().chain([(Kind::D, 4)]) {
        let g = group(k, r);
        for (q, p) in all_pairs(r) {
            assert_eq!(closed_on_vectors(&g, q, p), is_closed_brute(&g, q, p), "{k}{r} q={q} p={p}");
        }
    }
}
