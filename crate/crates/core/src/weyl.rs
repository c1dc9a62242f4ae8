//! Weyl group enumeration, Bruhat order, minimal coset representatives and the
//! double parabolic decomposition.
//!
//! Elements are enumerated once and referred to by [`WeylElement`] handles.
//! Each element carries its exact action matrix on the ambient space, the
//! permutation it induces on roots, its length and its lexicographically
//! smallest reduced word. Handles are numbered in the order
//! (length, smallest reduced word), so the identity is element 0.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::root_system::{RootSystem, SimpleSubset};
use crate::scalar::Scalar;

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// Handle of an element of a [`WeylGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement(pub usize);

impl WeylElement {
    /// The identity element.
    pub const IDENTITY: WeylElement = WeylElement(0);

    /// Index into the group's element list.
    pub fn index(self) -> usize {
        self.0
    }
}

/// Exact square matrix over Q(√3), row-major.
pub type Matrix = Vec<Vec<Scalar>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Scalar::zero(), |acc, k| &acc + &(&a[i][k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// The finite Weyl group of a realized root system.
#[derive(Debug)]
pub struct WeylGroup {
    rs: RootSystem,
    perms: Vec<Vec<u16>>,
    matrices: Vec<Matrix>,
    lengths: Vec<usize>,
    words: Vec<Vec<u8>>,
    perm_index: HashMap<Vec<u16>, usize>,
    mult: Option<Vec<u32>>,
    inverse: Vec<usize>,
    reflections: Vec<usize>,
    simple_refl: Vec<usize>,
    bruhat: OnceLock<Vec<Vec<u64>>>,
}

impl WeylGroup {
    /// Enumerates the group with the default size cap.
    pub fn new(rs: RootSystem) -> Result<Self> {
        Self::with_cap(rs, DEFAULT_GROUP_CAP)
    }

    /// Enumerates the group, failing with [`Error::GroupTooLarge`] past `cap`.
    pub fn with_cap(rs: RootSystem, cap: usize) -> Result<Self> {
        let nroots = rs.num_roots();
        let rank = rs.rank();
        let simple_perm: Vec<Vec<u16>> = (0..rank)
            .map(|i| (0..nroots).map(|r| rs.reflect_root(rs.simple(i), r) as u16).collect())
            .collect();
        let compose = |a: &[u16], b: &[u16]| -> Vec<u16> { b.iter().map(|&r| a[r as usize]).collect() };

        // Level-by-level search from the identity, right-multiplying by simple
        // reflections; keeps the lexicographically smallest reduced word.
        let identity: Vec<u16> = (0..nroots as u16).collect();
        let mut found: HashMap<Vec<u16>, (usize, Vec<u8>)> = HashMap::new();
        found.insert(identity.clone(), (0, vec![]));
        let mut level = vec![identity];
        let mut len = 0;
        while !level.is_empty() {
            let mut next: Vec<Vec<u16>> = Vec::new();
            for p in &level {
                let word = found[p].1.clone();
                for i in 0..rank {
                    // w s_i is longer iff w(α_i) is positive.
                    if !rs.is_positive(p[rs.simple(i)] as usize) {
                        continue;
                    }
                    let q = compose(p, &simple_perm[i]);
                    let mut cand = word.clone();
                    cand.push(i as u8);
                    match found.get_mut(&q) {
                        Some(entry) => {
                            if cand < entry.1 {
                                entry.1 = cand;
                            }
                        }
                        None => {
                            found.insert(q.clone(), (len + 1, cand));
                            next.push(q);
                            if found.len() > cap {
                                return Err(Error::GroupTooLarge { cap });
                            }
                        }
                    }
                }
            }
            level = next;
            len += 1;
        }

        let mut elems: Vec<(Vec<u16>, usize, Vec<u8>)> =
            found.into_iter().map(|(p, (l, w))| (p, l, w)).collect();
        elems.sort_by(|a, b| (a.1, &a.2).cmp(&(b.1, &b.2)));
        let n = elems.len();
        let perm_index: HashMap<Vec<u16>, usize> =
            elems.iter().enumerate().map(|(i, e)| (e.0.clone(), i)).collect();
        let perms: Vec<Vec<u16>> = elems.iter().map(|e| e.0.clone()).collect();
        let lengths: Vec<usize> = elems.iter().map(|e| e.1).collect();
        let words: Vec<Vec<u8>> = elems.iter().map(|e| e.2.clone()).collect();

        for (i, p) in perms.iter().enumerate() {
            let inv = rs.positive_ids().into_iter().filter(|&a| !rs.is_positive(p[a] as usize)).count();
            assert_eq!(inv, lengths[i], "length must equal the number of inversions");
        }

        // Action matrices, built along reduced words.
        let dim = rs.ambient_dim();
        let simple_mat: Vec<Matrix> = (0..rank)
            .map(|i| {
                let cols: Vec<Vec<Scalar>> = (0..dim)
                    .map(|k| {
                        let e: Vec<Scalar> =
                            (0..dim).map(|j| if j == k { Scalar::one() } else { Scalar::zero() }).collect();
                        rs.reflect(rs.simple(i), &e)
                    })
                    .collect();
                (0..dim).map(|r| (0..dim).map(|c| cols[c][r].clone()).collect()).collect()
            })
            .collect();
        let mut matrices: Vec<Matrix> = Vec::with_capacity(n);
        for i in 0..n {
            if words[i].is_empty() {
                matrices.push(
                    (0..dim)
                        .map(|r| (0..dim).map(|c| if r == c { Scalar::one() } else { Scalar::zero() }).collect())
                        .collect(),
                );
                continue;
            }
            let last = *words[i].last().unwrap() as usize;
            let prefix = compose(&perms[i], &simple_perm[last]);
            let pi = perm_index[&prefix];
            matrices.push(mat_mul(&matrices[pi], &simple_mat[last]));
        }

        let mult = if n <= 4096 {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = perm_index[&compose(&perms[a], &perms[b])] as u32;
                }
            }
            Some(t)
        } else {
            None
        };
        let inverse: Vec<usize> = perms
            .iter()
            .map(|p| {
                let mut q = vec![0u16; p.len()];
                for (r, &img) in p.iter().enumerate() {
                    q[img as usize] = r as u16;
                }
                perm_index[&q]
            })
            .collect();
        let reflections: Vec<usize> = (0..nroots)
            .map(|a| {
                let p: Vec<u16> = (0..nroots).map(|r| rs.reflect_root(a, r) as u16).collect();
                perm_index[&p]
            })
            .collect();
        let simple_refl = (0..rank).map(|i| reflections[rs.simple(i)]).collect();

        Ok(WeylGroup {
            rs,
            perms,
            matrices,
            lengths,
            words,
            perm_index,
            mult,
            inverse,
            reflections,
            simple_refl,
            bruhat: OnceLock::new(),
        })
    }

    /// The underlying root system.
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Group order.
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    /// All elements in (length, word) order.
    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        (0..self.perms.len()).map(WeylElement)
    }

    /// Length of `w`.
    pub fn length(&self, w: WeylElement) -> usize {
        self.lengths[w.0]
    }

    /// Lexicographically smallest reduced word of `w` (0-based simple indices).
    pub fn word(&self, w: WeylElement) -> &[u8] {
        &self.words[w.0]
    }

    /// Reduced word written as `s1s2…`, or `e` for the identity.
    pub fn word_string(&self, w: WeylElement) -> String {
        if self.words[w.0].is_empty() {
            "e".to_string()
        } else {
            self.words[w.0].iter().map(|i| format!("s{}", i + 1)).collect()
        }
    }

    /// Element with reduced or unreduced word given by 0-based simple indices.
    pub fn from_word(&self, word: &[usize]) -> WeylElement {
        word.iter()
            .fold(WeylElement::IDENTITY, |acc, &i| self.mul(acc, self.simple_reflection(i)))
    }

    /// Parses `e` or `s1s2…` (1-based letters).
    pub fn parse_word(&self, s: &str) -> Result<WeylElement> {
        let t = s.trim();
        if t == "e" || t.is_empty() {
            return Ok(WeylElement::IDENTITY);
        }
        let mut word = Vec::new();
        for part in t.split('s').filter(|p| !p.is_empty()) {
            let i: usize = part.parse().map_err(|_| Error::Parse(format!("bad word `{s}`")))?;
            if i == 0 || i > self.rs.rank() {
                return Err(Error::Parse(format!("bad letter in `{s}`")));
            }
            word.push(i - 1);
        }
        Ok(self.from_word(&word))
    }

    /// Exact action matrix on the ambient space.
    pub fn matrix(&self, w: WeylElement) -> &Matrix {
        &self.matrices[w.0]
    }

    /// Image of root `r` under `w`.
    pub fn act_root(&self, w: WeylElement, r: usize) -> usize {
        self.perms[w.0][r] as usize
    }

    /// Image of an ambient vector under `w`.
    pub fn act_vector(&self, w: WeylElement, v: &[Scalar]) -> Vec<Scalar> {
        self.matrices[w.0]
            .iter()
            .map(|row| row.iter().zip(v).fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }

    /// Product `a·b` (apply `b` first).
    pub fn mul(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        let n = self.perms.len();
        match &self.mult {
            Some(t) => WeylElement(t[a.0 * n + b.0] as usize),
            None => {
                let p: Vec<u16> = self.perms[b.0].iter().map(|&r| self.perms[a.0][r as usize]).collect();
                WeylElement(self.perm_index[&p])
            }
        }
    }

    /// Inverse of `w`.
    pub fn inv(&self, w: WeylElement) -> WeylElement {
        WeylElement(self.inverse[w.0])
    }

    /// Reflection `s_α` for the root id `alpha`.
    pub fn reflection(&self, alpha: usize) -> WeylElement {
        WeylElement(self.reflections[alpha])
    }

    /// Simple reflection `s_i` (0-based `i`).
    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement(self.simple_refl[i])
    }

    /// True if `w` lies in the parabolic subgroup generated by `theta`.
    pub fn in_parabolic(&self, w: WeylElement, theta: SimpleSubset) -> bool {
        self.words[w.0].iter().all(|&i| theta.contains(i as usize))
    }

    /// Elements of the parabolic subgroup W_Θ in element order.
    pub fn parabolic_elements(&self, theta: SimpleSubset) -> Vec<WeylElement> {
        self.elements().filter(|&w| self.in_parabolic(w, theta)).collect()
    }

    /// True if `w` has no right descent in `theta`, i.e. `w ∈ W^Θ`.
    pub fn is_min_right(&self, w: WeylElement, theta: SimpleSubset) -> bool {
        theta.iter().all(|i| self.rs.is_positive(self.act_root(w, self.rs.simple(i))))
    }

    /// True if `w` has no left descent in `theta`.
    pub fn is_min_left(&self, w: WeylElement, theta: SimpleSubset) -> bool {
        self.is_min_right(self.inv(w), theta)
    }

    /// Minimal-length element of the left coset `w·W_P`.
    pub fn project_min(&self, mut w: WeylElement, theta_p: SimpleSubset) -> WeylElement {
        'outer: loop {
            for i in theta_p.iter() {
                if !self.rs.is_positive(self.act_root(w, self.rs.simple(i))) {
                    w = self.mul(w, self.simple_reflection(i));
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// Minimal-length element of the double coset `W_Q·w·W_P`.
    pub fn project_min_double(
        &self,
        mut w: WeylElement,
        theta_q: SimpleSubset,
        theta_p: SimpleSubset,
    ) -> WeylElement {
        'outer: loop {
            for i in theta_q.iter() {
                if !self.rs.is_positive(self.act_root(self.inv(w), self.rs.simple(i))) {
                    w = self.mul(self.simple_reflection(i), w);
                    continue 'outer;
                }
            }
            for i in theta_p.iter() {
                if !self.rs.is_positive(self.act_root(w, self.rs.simple(i))) {
                    w = self.mul(w, self.simple_reflection(i));
                    continue 'outer;
                }
            }
            return w;
        }
    }

    fn bruhat_table(&self) -> &Vec<Vec<u64>> {
        self.bruhat.get_or_init(|| {
            let n = self.order();
            let words = n.div_ceil(64);
            let mut above: Vec<Vec<u64>> = vec![vec![0; words]; n];
            let pos = self.rs.positive_ids();
            // Elements are sorted by length, so walk them from the top down.
            for x in (0..n).rev() {
                let mut row = vec![0u64; words];
                row[x / 64] |= 1 << (x % 64);
                for &a in &pos {
                    let y = self.mul(self.reflection(a), WeylElement(x)).0;
                    if self.lengths[y] > self.lengths[x] {
                        for (r, o) in row.iter_mut().zip(&above[y]) {
                            *r |= o;
                        }
                    }
                }
                above[x] = row;
            }
            above
        })
    }

    /// Bruhat order `u ≤ v`.
    pub fn bruhat_leq(&self, u: WeylElement, v: WeylElement) -> bool {
        self.bruhat_table()[u.0][v.0 / 64] >> (v.0 % 64) & 1 == 1
    }

    /// Table of minimal left coset representatives W^P.
    pub fn coset_table(&self, theta_p: SimpleSubset) -> CosetTable {
        let reps: Vec<WeylElement> = self.elements().filter(|&w| self.is_min_right(w, theta_p)).collect();
        let mut pos = vec![usize::MAX; self.order()];
        for (k, r) in reps.iter().enumerate() {
            pos[r.0] = k;
        }
        let proj: Vec<usize> = self.elements().map(|w| pos[self.project_min(w, theta_p).0]).collect();
        CosetTable { theta_p, reps, proj }
    }

    /// Table of minimal double coset representatives ^QW^P.
    pub fn double_coset_table(&self, theta_q: SimpleSubset, theta_p: SimpleSubset) -> DoubleCosetTable {
        let reps: Vec<WeylElement> = self
            .elements()
            .filter(|&w| self.is_min_right(w, theta_p) && self.is_min_left(w, theta_q))
            .collect();
        let mut pos = vec![usize::MAX; self.order()];
        for (k, r) in reps.iter().enumerate() {
            pos[r.0] = k;
        }
        let proj: Vec<usize> = self
            .elements()
            .map(|w| pos[self.project_min_double(w, theta_q, theta_p).0])
            .collect();
        let wq = self.parabolic_elements(theta_q);
        let data = reps
            .iter()
            .map(|&u| {
                let u_inv = self.inv(u);
                let theta_u = SimpleSubset::from_indices(theta_q.iter().filter(|&i| {
                    let r = self.act_root(u_inv, self.rs.simple(i));
                    self.rs.is_positive(r) && self.rs.in_subsystem(r, theta_p)
                }));
                let w_u = self.parabolic_elements(theta_u);
                let min_reps = wq.iter().copied().filter(|&w| self.is_min_right(w, theta_u)).collect();
                RepData { theta_u, w_u, min_reps }
            })
            .collect();
        DoubleCosetTable { theta_q, theta_p, reps, proj, data }
    }

    /// Double parabolic decomposition `y = w·u·v` with `u ∈ ^QW^P`,
    /// `w ∈ W_Q^u` and `v ∈ W_P`; lengths add.
    pub fn double_parabolic_decompose(
        &self,
        y: WeylElement,
        theta_q: SimpleSubset,
        theta_p: SimpleSubset,
    ) -> (WeylElement, WeylElement, WeylElement) {
        let u = self.project_min_double(y, theta_q, theta_p);
        let x = self.project_min(y, theta_p);
        let w = self.mul(x, self.inv(u));
        let v = self.mul(self.inv(x), y);
        (w, u, v)
    }

    /// `w ↦ proj(w·v)` action of `w` on a coset representative `v ∈ W^P`.
    pub fn act_on_coset(&self, w: WeylElement, v: WeylElement, theta_p: SimpleSubset) -> WeylElement {
        self.project_min(self.mul(w, v), theta_p)
    }
}

/// Minimal left coset representatives W^P with the projection map.
#[derive(Debug, Clone)]
pub struct CosetTable {
    /// The parabolic subset Θ_P.
    pub theta_p: SimpleSubset,
    /// Representatives W^P in element order.
    pub reps: Vec<WeylElement>,
    /// Position in `reps` of the representative of each group element.
    pub proj: Vec<usize>,
}

impl CosetTable {
    /// Number of cosets.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    /// True if there are no cosets (never happens for a group).
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Position of the representative of `w`.
    pub fn pos_of(&self, w: WeylElement) -> usize {
        self.proj[w.0]
    }

    /// Representative of `w`.
    pub fn project(&self, w: WeylElement) -> WeylElement {
        self.reps[self.proj[w.0]]
    }

    /// Position of a representative, if `v` is one.
    pub fn position(&self, v: WeylElement) -> Option<usize> {
        let p = self.proj[v.0];
        (self.reps[p] == v).then_some(p)
    }
}

/// Per-representative data of a double coset table.
#[derive(Debug, Clone)]
pub struct RepData {
    /// Θ_u = Θ_Q ∩ u(Σ⁺_P).
    pub theta_u: SimpleSubset,
    /// Elements of W_u.
    pub w_u: Vec<WeylElement>,
    /// Minimal representatives W_Q^u of W_Q / W_u.
    pub min_reps: Vec<WeylElement>,
}

/// Minimal double coset representatives ^QW^P with per-representative data.
#[derive(Debug, Clone)]
pub struct DoubleCosetTable {
    /// Θ_Q.
    pub theta_q: SimpleSubset,
    /// Θ_P.
    pub theta_p: SimpleSubset,
    /// Representatives ^QW^P in element order.
    pub reps: Vec<WeylElement>,
    /// Position in `reps` of the representative of each group element.
    pub proj: Vec<usize>,
    /// Data per representative, aligned with `reps`.
    pub data: Vec<RepData>,
}

impl DoubleCosetTable {
    /// Number of double cosets.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    /// True if empty (never happens for a group).
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Representative of the double coset of `w`.
    pub fn project(&self, w: WeylElement) -> WeylElement {
        self.reps[self.proj[w.0]]
    }

    /// Position of the representative of `w`.
    pub fn pos_of(&self, w: WeylElement) -> usize {
        self.proj[w.0]
    }

    /// Position of a representative, if `u` is one.
    pub fn position(&self, u: WeylElement) -> Option<usize> {
        let p = self.proj[u.0];
        (self.reps[p] == u).then_some(p)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::Kind;

    fn group(kind: Kind, rank: usize) -> WeylGroup {
        WeylGroup::new(RootSystem::new(kind, rank).unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group(Kind::A, 2).order(), 6);
        assert_eq!(group(Kind::B, 2).order(), 8);
        assert_eq!(group(Kind::G, 2).order(), 12);
        assert_eq!(group(Kind::D, 4).order(), 192);
    }

    #[test]
    fn cap_is_enforced() {
        let rs = RootSystem::new(Kind::B, 3).unwrap();
        assert_eq!(WeylGroup::with_cap(rs, 10).unwrap_err(), Error::GroupTooLarge { cap: 10 });
    }

    #[test]
    fn bruhat_examples() {
        let g = group(Kind::A, 2);
        let s1 = g.from_word(&[0]);
        let s2 = g.from_word(&[1]);
        let s2s1 = g.from_word(&[1, 0]);
        let s1s2s1 = g.from_word(&[0, 1, 0]);
        assert!(g.bruhat_leq(WeylElement::IDENTITY, s1s2s1));
        assert!(g.bruhat_leq(s2s1, s1s2s1));
        assert!(!g.bruhat_leq(s1, s2));
        assert!(!g.bruhat_leq(s2, s1));
    }

    #[test]
    fn double_cosets_b2() {
        let g = group(Kind::B, 2);
        let q = SimpleSubset::from_one_based(&[1]);
        let p = SimpleSubset::from_one_based(&[2]);
        let t = g.double_coset_table(q, p);
        let words: Vec<String> = t.reps.iter().map(|&u| g.word_string(u)).collect();
        assert_eq!(words, vec!["e", "s2s1"]);
        let s1s2s1 = g.from_word(&[0, 1, 0]);
        assert_eq!(g.word_string(t.project(s1s2s1)), "s2s1");
        let (w, u, v) = g.double_parabolic_decompose(s1s2s1, q, p);
        assert_eq!((g.word_string(w).as_str(), g.word_string(u).as_str(), g.word_string(v).as_str()), ("s1", "s2s1", "e"));
    }

    #[test]
    fn double_cosets_a2() {
        let g = group(Kind::A, 2);
        let q = SimpleSubset::from_one_based(&[1]);
        let t = g.double_coset_table(q, q);
        let words: Vec<String> = t.reps.iter().map(|&u| g.word_string(u)).collect();
        assert_eq!(words, vec!["e", "s2"]);
        let (w, u, v) = g.double_parabolic_decompose(g.from_word(&[0, 1]), q, q);
        assert_eq!((g.word_string(w).as_str(), g.word_string(u).as_str(), g.word_string(v).as_str()), ("s1", "s2", "e"));
    }
}
