//! Parabolic and double moment graphs, W_Q-closures and closedness.
//!
//! All graphs live inside the parabolic moment graph G^P: vertices are minimal
//! left coset representatives `W^P`, and an element `w` of W acts on a vertex
//! `v` by `v ↦ proj(w·v)`.

pub mod typeb;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::{Kind, SimpleSubset};
use crate::weyl::{WeylElement, WeylGroup};

/// How to pick the label of a double-graph edge among its candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelPolicy {
    /// Smallest candidate in the root order.
    MinLabel,
    /// Keep every candidate; the recorded label is still the smallest one.
    AllCandidates,
}

/// A labelled directed edge between vertex positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    /// Source vertex position.
    pub src: usize,
    /// Target vertex position.
    pub dst: usize,
    /// Chosen label (positive root id).
    pub label: usize,
    /// Every positive root producing this edge, in root order.
    pub candidates: Vec<usize>,
}

/// A moment graph whose vertices are coset representatives in `W^P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentGraph {
    /// Left parabolic subset (empty for parabolic graphs).
    pub theta_q: SimpleSubset,
    /// Right parabolic subset.
    pub theta_p: SimpleSubset,
    /// Vertices in element order.
    pub vertices: Vec<WeylElement>,
    /// Edges sorted by (source, target).
    pub edges: Vec<Edge>,
}

impl MomentGraph {
    /// Position of a vertex.
    pub fn vertex_pos(&self, v: WeylElement) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Edges as (source element, target element, label).
    pub fn edge_triples(&self) -> BTreeSet<(WeylElement, WeylElement, usize)> {
        self.edges
            .iter()
            .map(|e| (self.vertices[e.src], self.vertices[e.dst], e.label))
            .collect()
    }

    fn from_parts(
        theta_q: SimpleSubset,
        theta_p: SimpleSubset,
        vertices: BTreeSet<WeylElement>,
        edges: BTreeMap<(WeylElement, WeylElement), Vec<usize>>,
    ) -> Self {
        let vertices: Vec<WeylElement> = vertices.into_iter().collect();
        let pos = |v: WeylElement| vertices.binary_search(&v).expect("edge endpoint is a vertex");
        let mut out: Vec<Edge> = edges
            .into_iter()
            .map(|((s, d), mut c)| {
                c.sort_unstable();
                c.dedup();
                Edge { src: pos(s), dst: pos(d), label: c[0], candidates: c }
            })
            .collect();
        out.sort();
        MomentGraph { theta_q, theta_p, vertices, edges: out }
    }

    /// Checks the moment graph axioms: edges go up in Bruhat order, no loops
    /// or multi-edges, and the label is one of the candidates.
    pub fn check_axioms(&self, g: &WeylGroup) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().all(|e| {
            e.src != e.dst
                && seen.insert((e.src, e.dst))
                && e.candidates.contains(&e.label)
                && g.bruhat_leq(self.vertices[e.src], self.vertices[e.dst])
        })
    }

    /// JSON export `{vertices:[{id,word,length}], edges:[{src,dst,label_root,candidates}]}`.
    pub fn to_json(&self, g: &WeylGroup) -> serde_json::Value {
        #[derive(Serialize)]
        struct V {
            id: usize,
            word: String,
            length: usize,
        }
        #[derive(Serialize)]
        struct E {
            src: usize,
            dst: usize,
            label_root: Vec<i64>,
            candidates: Vec<Vec<i64>>,
        }
        #[derive(Serialize)]
        struct G {
            vertices: Vec<V>,
            edges: Vec<E>,
        }
        let rs = g.root_system();
        let graph = G {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, &v)| V { id: i, word: g.word_string(v), length: g.length(v) })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| E {
                    src: e.src,
                    dst: e.dst,
                    label_root: rs.simple_coords(e.label).to_vec(),
                    candidates: e.candidates.iter().map(|&c| rs.simple_coords(c).to_vec()).collect(),
                })
                .collect(),
        };
        serde_json::to_value(graph).expect("serializable graph")
    }

    /// Graphviz DOT export with vertices named by reduced words.
    pub fn to_dot(&self, g: &WeylGroup, name: &str) -> String {
        let rs = g.root_system();
        let mut s = format!("digraph \"{name}\" {{\n");
        for (i, &v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  v{i} [label=\"{}\"];\n", g.word_string(v)));
        }
        for e in &self.edges {
            s.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", e.src, e.dst, rs.root_label(e.label)));
        }
        s.push_str("}\n");
        s
    }
}

/// The parabolic moment graph G^P.
pub fn build_parabolic_graph(g: &WeylGroup, theta_p: SimpleSubset) -> MomentGraph {
    let table = g.coset_table(theta_p);
    let pos = g.root_system().positive_ids();
    let mut edges: BTreeMap<(WeylElement, WeylElement), Vec<usize>> = BTreeMap::new();
    for &w in &table.reps {
        for &a in &pos {
            let y = g.mul(g.reflection(a), w);
            if g.length(y) < g.length(w) {
                continue;
            }
            let t = table.project(y);
            if t != w {
                edges.entry((w, t)).or_default().push(a);
            }
        }
    }
    for (k, c) in &edges {
        assert_eq!(c.len(), 1, "parabolic edge {k:?} has a unique label");
    }
    MomentGraph::from_parts(SimpleSubset::empty(), theta_p, table.reps.iter().copied().collect(), edges)
}

/// The (Q, P) double moment graph on `^QW^P`.
///
/// Both policies record every candidate label; the chosen label is the
/// smallest candidate in the root order.
pub fn build_double_graph(
    g: &WeylGroup,
    theta_q: SimpleSubset,
    theta_p: SimpleSubset,
    _policy: LabelPolicy,
) -> MomentGraph {
    let table = g.double_coset_table(theta_q, theta_p);
    let pos = g.root_system().positive_ids();
    let mut edges: BTreeMap<(WeylElement, WeylElement), Vec<usize>> = BTreeMap::new();
    for &u in &table.reps {
        for &a in &pos {
            let y = g.mul(g.reflection(a), u);
            if g.length(y) < g.length(u) {
                continue;
            }
            let t = table.project(y);
            if t != u {
                edges.entry((u, t)).or_default().push(a);
            }
        }
    }
    MomentGraph::from_parts(theta_q, theta_p, table.reps.iter().copied().collect(), edges)
}

/// Returns a copy of `graph` with the labels replaced by `choice[i]` on edge `i`.
pub fn with_labels(graph: &MomentGraph, choice: &[usize]) -> MomentGraph {
    let mut out = graph.clone();
    for (e, &l) in out.edges.iter_mut().zip(choice) {
        assert!(e.candidates.contains(&l), "label must be a candidate");
        e.label = l;
    }
    out
}

/// Transport of the labelled edge `x → y` by `w`. Labels are taken up to sign
/// and the image is oriented upwards in the Bruhat order.
fn transport(
    g: &WeylGroup,
    theta_p: SimpleSubset,
    w: WeylElement,
    x: WeylElement,
    y: WeylElement,
    label: usize,
) -> (WeylElement, WeylElement, usize) {
    let rs = g.root_system();
    let xs = g.act_on_coset(w, x, theta_p);
    let ys = g.act_on_coset(w, y, theta_p);
    let l = rs.positive_of(g.act_root(w, label));
    if g.length(xs) < g.length(ys) {
        (xs, ys, l)
    } else {
        (ys, xs, l)
    }
}

/// Checks the (MGE) condition for the subgroup W_H acting on a graph inside G^P:
/// every transported edge must be an edge with the transported label.
pub fn check_mge(g: &WeylGroup, graph: &MomentGraph, h: SimpleSubset) -> bool {
    let triples = graph.edge_triples();
    let verts: HashSet<WeylElement> = graph.vertices.iter().copied().collect();
    for w in g.parabolic_elements(h) {
        for &v in &graph.vertices {
            if !verts.contains(&g.act_on_coset(w, v, graph.theta_p)) {
                return false;
            }
        }
        for &(x, y, l) in &triples {
            if !triples.contains(&transport(g, graph.theta_p, w, x, y, l)) {
                return false;
            }
        }
    }
    true
}

/// The W_Q-closure of a double graph inside G^P: orbit vertices, the edges of
/// G^P joining vertices of one orbit, and all W_Q-transports of the edges
/// `u → proj(s_α u)` of G^P carrying the chosen labels α.
pub fn wq_closure(g: &WeylGroup, double_graph: &MomentGraph) -> MomentGraph {
    let theta_q = double_graph.theta_q;
    let theta_p = double_graph.theta_p;
    let parabolic = build_parabolic_graph(g, theta_p);
    let dtable = g.double_coset_table(theta_q, theta_p);
    let wq = g.parabolic_elements(theta_q);
    let base: HashSet<WeylElement> = double_graph.vertices.iter().copied().collect();

    let mut vertices = BTreeSet::new();
    for &x in &double_graph.vertices {
        for &w in &wq {
            vertices.insert(g.act_on_coset(w, x, theta_p));
        }
    }
    let mut edges: BTreeMap<(WeylElement, WeylElement), Vec<usize>> = BTreeMap::new();
    for (x, y, l) in parabolic.edge_triples() {
        let hx = dtable.project(x);
        if hx == dtable.project(y) && base.contains(&hx) {
            edges.entry((x, y)).or_default().push(l);
        }
    }
    let gp = parabolic.edge_triples();
    for (x, _, l) in double_graph.edge_triples() {
        // The labelled edge seen inside G^P ends at the coset of s_l x.
        let y = g.project_min(g.mul(g.reflection(l), x), theta_p);
        for &w in &wq {
            let t = transport(g, theta_p, w, x, y, l);
            debug_assert!(gp.contains(&t), "transported edge lies in G^P");
            edges.entry((t.0, t.1)).or_default().push(t.2);
        }
    }
    MomentGraph::from_parts(theta_q, theta_p, vertices, edges)
}

/// Closedness decided by comparing the W_Q-closure with G^P.
pub fn is_closed_by_closure(g: &WeylGroup, double_graph: &MomentGraph) -> bool {
    let closure = wq_closure(g, double_graph);
    let parabolic = build_parabolic_graph(g, double_graph.theta_p);
    closure.vertices == parabolic.vertices && closure.edge_triples() == parabolic.edge_triples()
}

/// Closedness by the multi-label criterion: whenever two positive roots α, β
/// give the same edge `u → ŝ_α u = ŝ_β u` out of `u ∈ ^QW^P`, some `w ∈ W_Q`
/// fixing the coset `u W_P` carries α to ±β.
pub fn is_closed_brute(g: &WeylGroup, theta_q: SimpleSubset, theta_p: SimpleSubset) -> bool {
    let dtable = g.double_coset_table(theta_q, theta_p);
    let wq = g.parabolic_elements(theta_q);
    let rs = g.root_system();
    let pos = rs.positive_ids();
    for &u in &dtable.reps {
        let stab: Vec<WeylElement> =
            wq.iter().copied().filter(|&w| g.project_min(g.mul(w, u), theta_p) == u).collect();
        let mut groups: BTreeMap<WeylElement, Vec<usize>> = BTreeMap::new();
        for &a in &pos {
            let y = g.mul(g.reflection(a), u);
            if g.length(y) < g.length(u) {
                continue;
            }
            let t = dtable.project(y);
            if t != u {
                groups.entry(t).or_default().push(a);
            }
        }
        for roots in groups.values() {
            for &a in roots {
                for &b in roots {
                    if a == b {
                        continue;
                    }
                    let ok = stab.iter().any(|&w| rs.positive_of(g.act_root(w, a)) == b);
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_suffix(theta: SimpleSubset, n: usize, min_start: usize) -> bool {
    // {α_s, …, α_n} for some s ≤ n − min_start (1-based s), nonempty.
    (1..=n - min_start).any(|s| theta == SimpleSubset::from_indices(s - 1..n))
}

/// Closedness from the type-by-type classification.
pub fn is_closed_classified(
    kind: Kind,
    rank: usize,
    theta_q: SimpleSubset,
    theta_p: SimpleSubset,
) -> Result<bool> {
    let n = rank;
    let full = SimpleSubset::full(n);
    let trivial = |t: SimpleSubset| t.is_empty() || t == full;
    match kind {
        Kind::A => Ok(true),
        Kind::B | Kind::C => {
            let last = n - 1;
            Ok((is_suffix(theta_p, n, 0) && is_suffix(theta_q, n, 0))
                || (!theta_p.contains(last) && !theta_q.contains(last))
                || trivial(theta_p)
                || trivial(theta_q))
        }
        Kind::D => {
            let bad = |t: SimpleSubset| {
                t.contains(n - 2) && t.contains(n - 1) && !is_suffix(t, n, 1)
            };
            Ok(!(bad(theta_p) && bad(theta_q)))
        }
        Kind::G => Ok(trivial(theta_p) || trivial(theta_q)),
        Kind::E | Kind::F => Err(Error::UnclassifiedType(kind.to_string())),
    }
}

/// One row of a closedness sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    /// 1-based indices of Θ_Q.
    pub q: Vec<usize>,
    /// 1-based indices of Θ_P.
    pub p: Vec<usize>,
    /// Verdict of the multi-label criterion.
    pub brute: bool,
    /// Verdict of the classification, when the type is classified.
    pub classified: Option<bool>,
}

impl SweepRow {
    /// False only when both verdicts exist and differ.
    pub fn agrees(&self) -> bool {
        self.classified.is_none_or(|c| c == self.brute)
    }
}

/// Closedness verdicts for every pair `(Θ_Q, Θ_P)`, in subset order.
pub fn closedness_sweep(g: &WeylGroup) -> Vec<SweepRow> {
    use rayon::prelude::*;
    let rs = g.root_system();
    let n = rs.rank();
    let pairs: Vec<(SimpleSubset, SimpleSubset)> = SimpleSubset::all_subsets(n)
        .flat_map(|q| SimpleSubset::all_subsets(n).map(move |p| (q, p)))
        .collect();
    pairs
        .par_iter()
        .map(|&(q, p)| SweepRow {
            q: q.one_based(),
            p: p.one_based(),
            brute: is_closed_brute(g, q, p),
            classified: is_closed_classified(rs.kind(), n, q, p).ok(),
        })
        .collect()
}

/// Every choice of labels of a double graph (product of candidate sets).
pub fn label_choices(graph: &MomentGraph) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for e in &graph.edges {
        let mut next = Vec::new();
        for prefix in &out {
            for &c in &e.candidates {
                let mut p = prefix.clone();
                p.push(c);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::RootSystem;

    fn group(kind: Kind, rank: usize) -> WeylGroup {
        WeylGroup::new(RootSystem::new(kind, rank).unwrap()).unwrap()
    }

    fn sub(ix: &[usize]) -> SimpleSubset {
        SimpleSubset::from_one_based(ix)
    }

    #[test]
    fn parabolic_graph_a2() {
        let g = group(Kind::A, 2);
        let rs = g.root_system();
        let gp = build_parabolic_graph(&g, sub(&[1]));
        let words: Vec<String> = gp.vertices.iter().map(|&v| g.word_string(v)).collect();
        assert_eq!(words, vec!["e", "s2", "s1s2"]);
        let edges: Vec<(String, String, String)> = gp
            .edges
            .iter()
            .map(|e| (words[e.src].clone(), words[e.dst].clone(), rs.root_label(e.label)))
            .collect();
        assert_eq!(
            edges,
            vec![
                ("e".into(), "s2".into(), "a2".into()),
                ("e".into(), "s1s2".into(), "a1+a2".into()),
                ("s2".into(), "s1s2".into(), "a1".into()),
            ]
        );
        assert_eq!(build_parabolic_graph(&g, SimpleSubset::empty()).edges.len(), 9);
        let one = build_parabolic_graph(&g, SimpleSubset::full(2));
        assert_eq!((one.vertices.len(), one.edges.len()), (1, 0));
        assert!(gp.check_axioms(&g));
    }

    #[test]
    fn double_graph_a2() {
        let g = group(Kind::A, 2);
        let rs = g.root_system();
        let dg = build_double_graph(&g, sub(&[1]), sub(&[1]), LabelPolicy::AllCandidates);
        assert_eq!(dg.edges.len(), 1);
        let e = &dg.edges[0];
        assert_eq!(g.word_string(dg.vertices[e.dst]), "s2");
        let c: Vec<String> = e.candidates.iter().map(|&c| rs.root_label(c)).collect();
        assert_eq!(c, vec!["a2", "a1+a2"]);
        assert_eq!(rs.root_label(e.label), "a2");
        let dg2 = build_double_graph(&g, sub(&[2]), sub(&[1]), LabelPolicy::MinLabel);
        assert_eq!(dg2.edges.len(), 1);
        assert_eq!(g.word_string(dg2.vertices[dg2.edges[0].dst]), "s1s2");
        assert_eq!(rs.root_label(dg2.edges[0].label), "a1+a2");
    }

    #[test]
    fn empty_q_gives_parabolic_graph() {
        let g = group(Kind::B, 3);
        for p in SimpleSubset::all_subsets(3) {
            let a = build_parabolic_graph(&g, p);
            let b = build_double_graph(&g, SimpleSubset::empty(), p, LabelPolicy::MinLabel);
            assert_eq!(a, b);
            assert_eq!(wq_closure(&g, &b).edge_triples(), a.edge_triples());
        }
    }

    #[test]
    fn mge_examples() {
        let g = group(Kind::A, 2);
        let gp = build_parabolic_graph(&g, sub(&[1]));
        assert!(check_mge(&g, &gp, SimpleSubset::full(2)));
        let dg = build_double_graph(&g, sub(&[1]), sub(&[1]), LabelPolicy::MinLabel);
        assert!(!check_mge(&g, &dg, sub(&[1])));
        let closure = wq_closure(&g, &dg);
        assert!(check_mge(&g, &closure, sub(&[1])));
        assert_eq!(closure.edge_triples(), gp.edge_triples());
    }

    #[test]
    fn closedness_examples() {
        let g2 = group(Kind::G, 2);
        assert!(!is_closed_brute(&g2, sub(&[1]), sub(&[2])));
        let d4 = group(Kind::D, 4);
        assert!(is_closed_brute(&d4, sub(&[3, 4]), sub(&[3, 4])));
        assert!(is_closed_classified(Kind::B, 3, sub(&[2, 3]), sub(&[3])).unwrap());
        assert!(!is_closed_classified(Kind::B, 2, sub(&[1]), sub(&[2])).unwrap());
        assert!(is_closed_classified(Kind::D, 4, sub(&[2, 3, 4]), sub(&[2, 3, 4])).unwrap());
        assert!(is_closed_classified(Kind::E, 6, sub(&[]), sub(&[])).is_err());
        let b2 = group(Kind::B, 2);
        let dg = build_double_graph(&b2, sub(&[1]), sub(&[2]), LabelPolicy::MinLabel);
        assert!(!is_closed_by_closure(&b2, &dg));
    }
}
