//! Structure sheaves on parabolic and double moment graphs, local and global
//! sections, the invariant models `^{W_Q}R_{W_P}` and `^QA^P`, and the map ψ
//! between them.

pub mod graded;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fga::poly::MonomialEntry;
use crate::fga::{Fga, SElement};
use crate::moment_graph::{build_double_graph, build_parabolic_graph, LabelPolicy, MomentGraph};
use crate::root_system::SimpleSubset;
use crate::weyl::{WeylElement, WeylGroup};

/// Values at the representatives `^QW^P` (or `W^P` when `Θ_Q = ∅`), in the
/// order of the representative table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionTuple {
    /// Left parabolic subset.
    pub theta_q: SimpleSubset,
    /// Right parabolic subset.
    pub theta_p: SimpleSubset,
    /// One value per representative.
    pub values: Vec<SElement>,
}

/// JSON form of a section tuple: vertex id to monomial list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SectionTupleJson {
    /// 1-based indices of Θ_Q.
    pub q: Vec<usize>,
    /// 1-based indices of Θ_P.
    pub p: Vec<usize>,
    /// Values in representative order.
    pub values: Vec<Vec<MonomialEntry>>,
}

impl SectionTuple {
    /// A tuple with the given values.
    pub fn new(theta_q: SimpleSubset, theta_p: SimpleSubset, values: Vec<SElement>) -> Self {
        SectionTuple { theta_q, theta_p, values }
    }

    /// The constant tuple with value `s` everywhere.
    pub fn constant(g: &WeylGroup, theta_q: SimpleSubset, theta_p: SimpleSubset, s: &SElement) -> Self {
        let n = g.double_coset_table(theta_q, theta_p).len();
        SectionTuple { theta_q, theta_p, values: vec![s.clone(); n] }
    }

    /// Coordinate-wise product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.values.len(), other.values.len(), "tuple lengths");
        SectionTuple {
            theta_q: self.theta_q,
            theta_p: self.theta_p,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        }
    }

    /// Coordinate-wise sum.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.values.len(), other.values.len(), "tuple lengths");
        SectionTuple {
            theta_q: self.theta_q,
            theta_p: self.theta_p,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    /// Multiplication of every value by `s`.
    pub fn scale(&self, s: &SElement) -> Self {
        SectionTuple {
            theta_q: self.theta_q,
            theta_p: self.theta_p,
            values: self.values.iter().map(|v| s * v).collect(),
        }
    }

    /// JSON representation.
    pub fn to_json(&self, fga: &Fga) -> SectionTupleJson {
        SectionTupleJson {
            q: self.theta_q.one_based(),
            p: self.theta_p.one_based(),
            values: self.values.iter().map(|v| v.to_monomials(fga.nvars())).collect(),
        }
    }

    /// Parses the JSON representation, validating the subsets against `rank`.
    pub fn from_json(j: &SectionTupleJson, fga: &Fga) -> Result<Self> {
        let rank = fga.group().root_system().rank();
        let sub = |ix: &[usize]| -> Result<SimpleSubset> {
            if ix.iter().any(|&i| i == 0 || i > rank) {
                return Err(Error::InvalidSubset(format!("{ix:?}")));
            }
            Ok(SimpleSubset::from_one_based(ix))
        };
        let values = j
            .values
            .iter()
            .map(|m| SElement::from_monomials(m, fga.truncation()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SectionTuple { theta_q: sub(&j.q)?, theta_p: sub(&j.p)?, values })
    }
}

/// An edge of a structure sheaf with its label and the twist of the
/// restriction map at the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafEdge {
    /// Source vertex position.
    pub src: usize,
    /// Target vertex position.
    pub dst: usize,
    /// Label (positive root id); the edge module is `S / x_label S`.
    pub label: usize,
    /// The element `w` with `s_label·src = w·dst·v`, `v ∈ W_P`; the target
    /// restriction is `s ↦ w(s)` followed by the quotient.
    pub twist: WeylElement,
}

/// A structure sheaf on a (double) moment graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sheaf {
    /// Underlying graph.
    pub graph: MomentGraph,
    /// Vertex modules `S^{W_u}` given by `Θ_u` (empty for the full ring S).
    pub vertex_theta: Vec<SimpleSubset>,
    /// Edges with restriction data.
    pub edges: Vec<SheafEdge>,
}

/// The parabolic structure sheaf on G^P: S at every vertex and plain quotients.
pub fn structure_sheaf_parabolic(g: &WeylGroup, theta_p: SimpleSubset) -> Sheaf {
    let graph = build_parabolic_graph(g, theta_p);
    let edges = graph
        .edges
        .iter()
        .map(|e| SheafEdge { src: e.src, dst: e.dst, label: e.label, twist: WeylElement::IDENTITY })
        .collect();
    Sheaf { vertex_theta: vec![SimpleSubset::empty(); graph.vertices.len()], graph, edges }
}

/// The double structure sheaf on ^QG^P: `S^{W_u}` at `u` and twisted
/// restriction maps at the targets.
pub fn structure_sheaf_double(
    g: &WeylGroup,
    theta_q: SimpleSubset,
    theta_p: SimpleSubset,
    policy: LabelPolicy,
) -> Sheaf {
    let graph = build_double_graph(g, theta_q, theta_p, policy);
    sheaf_on_double_graph(g, graph)
}

/// The double structure sheaf on a double graph with already chosen labels.
pub fn sheaf_on_double_graph(g: &WeylGroup, graph: MomentGraph) -> Sheaf {
    let table = g.double_coset_table(graph.theta_q, graph.theta_p);
    assert_eq!(table.reps, graph.vertices, "graph vertices follow the table order");
    let edges = graph
        .edges
        .iter()
        .map(|e| {
            let u = graph.vertices[e.src];
            let y = g.mul(g.reflection(e.label), u);
            let (w, u2, _) = g.double_parabolic_decompose(y, graph.theta_q, graph.theta_p);
            assert_eq!(u2, graph.vertices[e.dst], "edge target is the double coset of s_α u");
            SheafEdge { src: e.src, dst: e.dst, label: e.label, twist: w }
        })
        .collect();
    let vertex_theta = table.data.iter().map(|d| d.theta_u).collect();
    Sheaf { graph, vertex_theta, edges }
}

/// A failed edge condition, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Source vertex position.
    pub src: usize,
    /// Target vertex position.
    pub dst: usize,
    /// Edge label.
    pub label: usize,
}

/// The first edge inside `subset` (all vertices when `None`) whose
/// restrictions disagree, or `None` if `t` is a local section there.
pub fn first_violation(
    fga: &Fga,
    t: &SectionTuple,
    sh: &Sheaf,
    subset: Option<&[usize]>,
) -> Result<Option<Violation>> {
    if t.values.len() != sh.vertex_theta.len() {
        return Err(Error::IndexMismatch(format!(
            "{} values for {} vertices",
            t.values.len(),
            sh.vertex_theta.len()
        )));
    }
    let all: Vec<usize> = (0..t.values.len()).collect();
    let idx = subset.unwrap_or(&all);
    for &i in idx {
        if !fga.is_invariant(&t.values[i], sh.vertex_theta[i]) {
            return Err(Error::VertexModuleViolation(fga.group().word_string(sh.graph.vertices[i])));
        }
    }
    let inside = |i: usize| idx.contains(&i);
    for e in &sh.edges {
        if !inside(e.src) || !inside(e.dst) {
            continue;
        }
        let d = &t.values[e.src] - &fga.weyl_act(e.twist, &t.values[e.dst]);
        if !fga.divisible(&d, e.label) {
            return Ok(Some(Violation { src: e.src, dst: e.dst, label: e.label }));
        }
    }
    Ok(None)
}

/// Whether `t` is a section of `sh` over `subset` (all vertices when `None`).
pub fn is_section(fga: &Fga, t: &SectionTuple, sh: &Sheaf, subset: Option<&[usize]>) -> Result<bool> {
    Ok(first_violation(fga, t, sh, subset)?.is_none())
}

/// Membership in `^{W_Q}R_{W_P}` for a tuple over `W^P`: (i) divisibility
/// `b_v − b_{proj(s_β v)} ∈ x_β S` for every reflection, and (ii)
/// `b_{proj(s_α v)} = s_α(b_v)` for every reflection of W_Q.
pub fn membership_rwq_wp(fga: &Fga, b: &SectionTuple, theta_q: SimpleSubset) -> bool {
    assert!(b.theta_q.is_empty(), "tuple is indexed by W^P");
    let g = fga.group();
    let rs = g.root_system();
    let table = g.coset_table(b.theta_p);
    if b.values.len() != table.len() {
        return false;
    }
    for (i, &v) in table.reps.iter().enumerate() {
        for beta in rs.positive_ids() {
            let s = g.reflection(beta);
            let y = table.pos_of(table.project(g.mul(s, v)));
            if rs.in_subsystem(beta, theta_q) && b.values[y] != fga.weyl_act(s, &b.values[i]) {
                return false;
            }
            if y > i && !fga.divisible(&(&b.values[i] - &b.values[y]), beta) {
                return false;
            }
        }
    }
    true
}

/// Membership in `^QA^P`: every `u ∈ ^QW^P` value lies in `S^{W_u}` and
/// `c_u − w(c_{u′}) ∈ x_α S` whenever `u ∈ s_α w u′ W_P`, `α ∈ Σ⁺`, `w ∈ W_Q`.
pub fn membership_qap(fga: &Fga, c: &SectionTuple) -> bool {
    qap_first_violation(fga, c).is_none()
}

/// The first failing `(u, u′, w, α)` of the `^QA^P` conditions, as
/// representative positions, group element and root id.
pub fn qap_first_violation(fga: &Fga, c: &SectionTuple) -> Option<(usize, usize, WeylElement, usize)> {
    let g = fga.group();
    let rs = g.root_system();
    let table = g.double_coset_table(c.theta_q, c.theta_p);
    if c.values.len() != table.len() {
        return Some((0, 0, WeylElement::IDENTITY, 0));
    }
    for (i, d) in table.data.iter().enumerate() {
        if !fga.is_invariant(&c.values[i], d.theta_u) {
            return Some((i, i, WeylElement::IDENTITY, 0));
        }
    }
    let wq = g.parabolic_elements(c.theta_q);
    let pos = rs.positive_ids();
    for (j, &u2) in table.reps.iter().enumerate() {
        for &w in &wq {
            let wu2 = g.mul(w, u2);
            let moved = fga.weyl_act(w, &c.values[j]);
            for &a in &pos {
                let x = g.project_min(g.mul(g.reflection(a), wu2), c.theta_p);
                let Some(i) = table.position(x) else { continue };
                if !fga.divisible(&(&c.values[i] - &moved), a) {
                    return Some((i, j, w, a));
                }
            }
        }
    }
    None
}

/// The per-edge conditions of a double graph: `c_u − w(c_{u′}) ∈ x_α S` for
/// each edge `u → u′` labelled α with its twist `w`.
pub fn edge_conditions_hold(fga: &Fga, c: &SectionTuple, sh: &Sheaf) -> bool {
    sh.edges.iter().all(|e| {
        let d = &c.values[e.src] - &fga.weyl_act(e.twist, &c.values[e.dst]);
        fga.divisible(&d, e.label)
    })
}

/// ψ: expands a tuple over `^QW^P` to `W^P` by `b_{wu} = w(c_u)`.
pub fn psi(fga: &Fga, c: &SectionTuple) -> SectionTuple {
    let g = fga.group();
    let dtable = g.double_coset_table(c.theta_q, c.theta_p);
    let table = g.coset_table(c.theta_p);
    let values = table
        .reps
        .iter()
        .map(|&v| {
            let (w, u, _) = g.double_parabolic_decompose(v, c.theta_q, c.theta_p);
            fga.weyl_act(w, &c.values[dtable.pos_of(u)])
        })
        .collect();
    SectionTuple { theta_q: SimpleSubset::empty(), theta_p: c.theta_p, values }
}

/// Restriction of a tuple over `W^P` to the positions `^QW^P`.
pub fn project_hat(fga: &Fga, b: &SectionTuple, theta_q: SimpleSubset) -> SectionTuple {
    let g = fga.group();
    let dtable = g.double_coset_table(theta_q, b.theta_p);
    let table = g.coset_table(b.theta_p);
    let values = dtable.reps.iter().map(|&u| b.values[table.pos_of(u)].clone()).collect();
    SectionTuple { theta_q, theta_p: b.theta_p, values }
}

/// A random member of `^{W_Q}R_{W_P}` over `W^P`: a sum of Borel images
/// `s · c(s′)` with `s ∈ S^{W_Q}` and `s′ ∈ S^{W_P}`.
pub fn sample_rwq_member<R: Rng>(
    fga: &Fga,
    rng: &mut R,
    theta_q: SimpleSubset,
    theta_p: SimpleSubset,
    summands: usize,
    max_deg: u32,
) -> SectionTuple {
    let g = fga.group();
    let table = g.coset_table(theta_p);
    let mut values = vec![fga.zero(); table.len()];
    for _ in 0..summands {
        let s = fga.symmetrize(&fga.random_element(rng, max_deg, 2), theta_q);
        let s2 = fga.symmetrize(&fga.random_element(rng, max_deg, 2), theta_p);
        for (k, &v) in table.reps.iter().enumerate() {
            values[k] = &values[k] + &(&s * &fga.weyl_act(v, &s2));
        }
    }
    SectionTuple { theta_q: SimpleSubset::empty(), theta_p, values }
}

/// A random member of `^QA^P`, the restriction of [`sample_rwq_member`].
pub fn sample_qap_member<R: Rng>(
    fga: &Fga,
    rng: &mut R,
    theta_q: SimpleSubset,
    theta_p: SimpleSubset,
    summands: usize,
    max_deg: u32,
) -> SectionTuple {
    project_hat(fga, &sample_rwq_member(fga, rng, theta_q, theta_p, summands, max_deg), theta_q)
}

/// Adds to one random value of a tuple over `^QW^P` a random element of its
/// vertex module; the result usually leaves `^QA^P`.
pub fn perturb<R: Rng>(fga: &Fga, rng: &mut R, c: &SectionTuple, max_deg: u32) -> SectionTuple {
    let table = fga.group().double_coset_table(c.theta_q, c.theta_p);
    let mut out = c.clone();
    let i = rng.gen_range(0..out.values.len());
    let extra = fga.symmetrize(&fga.random_element(rng, max_deg, 2), table.data[i].theta_u);
    out.values[i] = &out.values[i] + &extra;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{Kind, RootSystem};
    use std::sync::Arc;

    fn fga(kind: Kind, rank: usize) -> Fga {
        Fga::additive(Arc::new(WeylGroup::new(RootSystem::new(kind, rank).unwrap()).unwrap()))
    }

    fn sub(ix: &[usize]) -> SimpleSubset {
        SimpleSubset::from_one_based(ix)
    }

    fn root(f: &Fga, c: &[i64]) -> SElement {
        f.x_root(f.group().root_system().find_by_simple_coords(c).unwrap()).clone()
    }

    #[test]
    fn sl3_double_sheaf() {
        let f = fga(Kind::A, 2);
        let g = f.group();
        let sh = structure_sheaf_double(g, sub(&[1]), sub(&[1]), LabelPolicy::MinLabel);
        assert_eq!(sh.vertex_theta, vec![sub(&[1]), sub(&[])]);
        assert_eq!(sh.edges.len(), 1);
        assert_eq!(sh.edges[0].twist, WeylElement::IDENTITY);
        let a2 = root(&f, &[0, 1]);
        let t = SectionTuple::new(sub(&[1]), sub(&[1]), vec![f.zero(), a2.clone()]);
        assert!(is_section(&f, &t, &sh, None).unwrap());
        let t1 = SectionTuple::new(sub(&[1]), sub(&[1]), vec![f.zero(), f.one()]);
        assert!(!is_section(&f, &t1, &sh, None).unwrap());
        let bad = SectionTuple::new(sub(&[1]), sub(&[1]), vec![root(&f, &[1, 0]), f.one()]);
        assert!(matches!(is_section(&f, &bad, &sh, None), Err(Error::VertexModuleViolation(_))));
    }

    #[test]
    fn empty_q_sheaf_is_parabolic() {
        let f = fga(Kind::B, 2);
        for p in SimpleSubset::all_subsets(2) {
            assert_eq!(
                structure_sheaf_double(f.group(), sub(&[]), p, LabelPolicy::MinLabel),
                structure_sheaf_parabolic(f.group(), p)
            );
        }
    }

    #[test]
    fn sl3_memberships_and_psi() {
        let f = fga(Kind::A, 2);
        let (q, p) = (sub(&[1]), sub(&[1]));
        let a2 = root(&f, &[0, 1]);
        let a12 = root(&f, &[1, 1]);
        let one = SectionTuple::new(q, p, vec![f.one(), f.one()]);
        let c2 = SectionTuple::new(q, p, vec![&a2 * &a12, f.zero()]);
        let c3 = SectionTuple::new(q, p, vec![f.zero(), a2.clone()]);
        for c in [&one, &c2, &c3] {
            assert!(membership_qap(&f, c));
            assert!(membership_rwq_wp(&f, &psi(&f, c), q));
            assert_eq!(&project_hat(&f, &psi(&f, c), q), c);
        }
        assert_eq!(psi(&f, &c3).values, vec![f.zero(), a2.clone(), a12.clone()]);
        assert_eq!(psi(&f, &c2).values, vec![&a2 * &a12, f.zero(), f.zero()]);
        let x1 = root(&f, &[1, 0]);
        let bad = SectionTuple::new(sub(&[]), p, vec![x1, f.zero(), f.zero()]);
        assert!(!membership_rwq_wp(&f, &bad, q));
    }
}
