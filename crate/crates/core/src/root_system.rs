//! Exact realizations of the root systems A_n, B_n, C_n, D_n and G2.
//!
//! Roots are stored as ambient vectors over Q(√3) and are sorted by height,
//! then lexicographically by coordinates. Root ids index into that order.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::scalar::{dot, Scalar};

/// Cartan type of an irreducible root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    /// A_n, n ≥ 1.
    A,
    /// B_n, n ≥ 2.
    B,
    /// C_n, n ≥ 2.
    C,
    /// D_n, n ≥ 4.
    D,
    /// E_n (no realization provided).
    E,
    /// F_4 (no realization provided).
    F,
    /// G_2.
    G,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::A => "A",
            Kind::B => "B",
            Kind::C => "C",
            Kind::D => "D",
            Kind::E => "E",
            Kind::F => "F",
            Kind::G => "G",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Kind::A),
            "B" => Ok(Kind::B),
            "C" => Ok(Kind::C),
            "D" => Ok(Kind::D),
            "E" => Ok(Kind::E),
            "F" => Ok(Kind::F),
            "G" | "G2" => Ok(Kind::G),
            other => Err(Error::Parse(format!("unknown type `{other}`"))),
        }
    }
}

/// A set of simple roots, stored as a bitmask over simple indices `0..rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct SimpleSubset(pub u32);

impl SimpleSubset {
    /// The empty subset.
    pub fn empty() -> Self {
        SimpleSubset(0)
    }

    /// All simple roots of a rank-`rank` system.
    pub fn full(rank: usize) -> Self {
        SimpleSubset(((1u64 << rank) - 1) as u32)
    }

    /// Subset from 0-based simple indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        SimpleSubset(it.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    /// Subset from 1-based simple indices, as used in the user-facing notation.
    pub fn from_one_based(ix: &[usize]) -> Self {
        Self::from_indices(ix.iter().map(|i| i - 1))
    }

    /// Membership of the 0-based simple index `i`.
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// 0-based indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Number of simple roots in the subset.
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// True for the empty subset.
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Set inclusion.
    pub fn is_subset(self, other: SimpleSubset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Every subset of a rank-`rank` system, in increasing bitmask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = SimpleSubset> {
        (0..(1u32 << rank)).map(SimpleSubset)
    }

    /// Parses `""` (empty), `"all"` (every simple root) or a comma separated
    /// list of 1-based indices.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "-" || t.eq_ignore_ascii_case("none") {
            return Ok(Self::empty());
        }
        if t.eq_ignore_ascii_case("all") {
            return Ok(Self::full(rank));
        }
        let mut out = Self::empty();
        for part in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()) {
            let i: usize = part
                .parse()
                .map_err(|_| Error::InvalidSubset(format!("`{part}` is not an index")))?;
            if i == 0 || i > rank {
                return Err(Error::InvalidSubset(format!("index {i} outside 1..={rank}")));
            }
            out.0 |= 1 << (i - 1);
        }
        Ok(out)
    }

    /// 1-based indices.
    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A realized root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    kind: Kind,
    rank: usize,
    ambient_dim: usize,
    roots: Vec<Vec<Scalar>>,
    simple_coords: Vec<Vec<i64>>,
    simple_indices: Vec<usize>,
    negation: Vec<usize>,
    cartan: Vec<Vec<i64>>,
    lookup: HashMap<Vec<Scalar>, usize>,
}

fn unit(dim: usize, i: usize) -> Vec<Scalar> {
    (0..dim).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
}

fn sub_vec(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

fn add_vec(u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

fn scale_vec(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// `2(u,v)/(v,v)` for ambient vectors.
pub fn pairing(u: &[Scalar], v: &[Scalar]) -> Scalar {
    let num = &dot(u, v) * &Scalar::int(2);
    &num / &dot(v, v)
}

impl RootSystem {
    /// Builds the standard realization of type `kind` and rank `rank`.
    pub fn new(kind: Kind, rank: usize) -> Result<Self> {
        let bad = || Error::InvalidRank { kind: kind.to_string(), rank };
        let (dim, simple): (usize, Vec<Vec<Scalar>>) = match kind {
            Kind::A => {
                if rank < 1 {
                    return Err(bad());
                }
                let d = rank + 1;
                (d, (0..rank).map(|i| sub_vec(&unit(d, i), &unit(d, i + 1))).collect())
            }
            Kind::B | Kind::C | Kind::D => {
                let min = if kind == Kind::D { 4 } else { 2 };
                if rank < min {
                    return Err(bad());
                }
                let d = rank;
                let mut s: Vec<Vec<Scalar>> =
                    (0..rank - 1).map(|i| sub_vec(&unit(d, i), &unit(d, i + 1))).collect();
                s.push(match kind {
                    Kind::B => unit(d, d - 1),
                    Kind::C => scale_vec(&Scalar::int(2), &unit(d, d - 1)),
                    _ => add_vec(&unit(d, d - 2), &unit(d, d - 1)),
                });
                (d, s)
            }
            Kind::G => {
                if rank != 2 {
                    return Err(bad());
                }
                // α1 short of length 1, α2 long of length √3 at angle 5π/6.
                let a1 = vec![Scalar::int(1), Scalar::int(0)];
                let a2 = vec![
                    Scalar::rational(Rational::new(-3, 2)),
                    Scalar::new(Rational::zero(), Rational::new(1, 2)),
                ];
                (2, vec![a1, a2])
            }
            Kind::E | Kind::F => return Err(Error::UnsupportedType(kind.to_string())),
        };
        Ok(Self::from_simple_roots(kind, dim, simple))
    }

    fn from_simple_roots(kind: Kind, dim: usize, simple: Vec<Vec<Scalar>>) -> Self {
        let rank = simple.len();
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let c = pairing(&simple[i], &simple[j]);
                        c.as_rational().and_then(|r| r.to_i64()).expect("integral Cartan entry")
                    })
                    .collect()
            })
            .collect();

        // Closure of the simple roots under simple reflections, tracking
        // coefficients in the simple-root basis.
        let mut found: HashMap<Vec<Scalar>, Vec<i64>> = HashMap::new();
        let mut queue: Vec<(Vec<Scalar>, Vec<i64>)> = Vec::new();
        for (i, s) in simple.iter().enumerate() {
            let mut c = vec![0; rank];
            c[i] = 1;
            found.insert(s.clone(), c.clone());
            queue.push((s.clone(), c));
        }
        while let Some((v, c)) = queue.pop() {
            for (i, s) in simple.iter().enumerate() {
                let k = pairing(&v, s);
                let k = k.as_rational().and_then(|r| r.to_i64()).expect("integral pairing");
                if k == 0 {
                    continue;
                }
                let w = sub_vec(&v, &scale_vec(&Scalar::int(k), s));
                if !found.contains_key(&w) {
                    let mut cw = c.clone();
                    cw[i] -= k;
                    found.insert(w.clone(), cw.clone());
                    queue.push((w, cw));
                }
            }
        }
        let mut all: Vec<(Vec<Scalar>, Vec<i64>)> = found.into_iter().collect();
        all.sort_by(|(va, ca), (vb, cb)| {
            let ha: i64 = ca.iter().sum();
            let hb: i64 = cb.iter().sum();
            ha.cmp(&hb).then_with(|| va.cmp(vb))
        });
        let roots: Vec<Vec<Scalar>> = all.iter().map(|(v, _)| v.clone()).collect();
        let simple_coords: Vec<Vec<i64>> = all.iter().map(|(_, c)| c.clone()).collect();
        let lookup: HashMap<Vec<Scalar>, usize> =
            roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let negation = roots
            .iter()
            .map(|v| {
                let n: Vec<Scalar> = v.iter().map(|x| -x).collect();
                lookup[&n]
            })
            .collect();
        let simple_indices = simple.iter().map(|s| lookup[s]).collect();
        RootSystem {
            kind,
            rank,
            ambient_dim: dim,
            roots,
            simple_coords,
            simple_indices,
            negation,
            cartan,
            lookup,
        }
    }

    /// Cartan type.
    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Rank (number of simple roots).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Short label such as `B3`.
    pub fn name(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    /// Total number of roots.
    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Ambient coordinates of root `id`.
    pub fn root(&self, id: usize) -> &[Scalar] {
        &self.roots[id]
    }

    /// All roots in id order.
    pub fn roots(&self) -> &[Vec<Scalar>] {
        &self.roots
    }

    /// Coefficients of root `id` in the simple-root basis.
    pub fn simple_coords(&self, id: usize) -> &[i64] {
        &self.simple_coords[id]
    }

    /// Height of root `id` (sum of simple-root coefficients).
    pub fn height(&self, id: usize) -> i64 {
        self.simple_coords[id].iter().sum()
    }

    /// True if root `id` is positive.
    pub fn is_positive(&self, id: usize) -> bool {
        self.height(id) > 0
    }

    /// Ids of the positive roots, in root order.
    pub fn positive_ids(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.is_positive(i)).collect()
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    /// Root id of the simple root α_i (0-based `i`).
    pub fn simple(&self, i: usize) -> usize {
        self.simple_indices[i]
    }

    /// Root ids of the simple roots, indexed by simple index.
    pub fn simple_indices(&self) -> &[usize] {
        &self.simple_indices
    }

    /// Id of `-α`.
    pub fn neg(&self, id: usize) -> usize {
        self.negation[id]
    }

    /// Id of the positive root among `±α`.
    pub fn positive_of(&self, id: usize) -> usize {
        if self.is_positive(id) {
            id
        } else {
            self.negation[id]
        }
    }

    /// Id of an ambient vector if it is a root.
    pub fn find(&self, v: &[Scalar]) -> Option<usize> {
        self.lookup.get(v).copied()
    }

    /// Id of the root with the given simple-root coefficients.
    pub fn find_by_simple_coords(&self, c: &[i64]) -> Option<usize> {
        self.simple_coords.iter().position(|x| x == c)
    }

    /// Cartan matrix `A[i][j] = ⟨α_i, α_j^∨⟩`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// True if every simple root in the support of `id` lies in `theta`.
    pub fn in_subsystem(&self, id: usize, theta: SimpleSubset) -> bool {
        self.simple_coords[id]
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || theta.contains(i))
    }

    /// Reflection `v − 2(v,α)/(α,α)·α` in root `alpha`.
    pub fn reflect(&self, alpha: usize, v: &[Scalar]) -> Vec<Scalar> {
        let a = &self.roots[alpha];
        let k = pairing(v, a);
        sub_vec(v, &scale_vec(&k, a))
    }

    /// Image of root `beta` under the reflection in root `alpha`, as a root id.
    pub fn reflect_root(&self, alpha: usize, beta: usize) -> usize {
        self.lookup[&self.reflect(alpha, &self.roots[beta])]
    }

    /// Inner product in the realization.
    pub fn inner(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(u, v)
    }

    /// Fundamental weights ω_i in ambient coordinates, determined by
    /// `2(ω_i, α_j)/(α_j, α_j) = δ_ij` inside the span of the roots.
    pub fn fundamental_weights(&self) -> Vec<Vec<Scalar>> {
        let inv = invert_integer_matrix(&self.cartan);
        (0..self.rank)
            .map(|i| {
                let mut w = vec![Scalar::zero(); self.ambient_dim];
                for k in 0..self.rank {
                    let c = Scalar::rational(inv[i][k].clone());
                    w = add_vec(&w, &scale_vec(&c, &self.roots[self.simple_indices[k]]));
                }
                w
            })
            .collect()
    }

    /// The dominant vector `Σ_{α_i ∉ Θ_P} ω_i`, scaled to the smallest
    /// integral multiple. Its stabilizer in W is exactly W_P.
    pub fn dominant_weight(&self, theta_p: SimpleSubset) -> Vec<Scalar> {
        let om = self.fundamental_weights();
        let mut v = vec![Scalar::zero(); self.ambient_dim];
        for i in 0..self.rank {
            if !theta_p.contains(i) {
                v = add_vec(&v, &om[i]);
            }
        }
        clear_denominators(&v)
    }

    /// JSON description of the realization.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": self.kind.to_string(),
            "rank": self.rank,
            "ambient_dim": self.ambient_dim,
            "roots": self.roots.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "simple_indices": self.simple_indices,
        })
    }

    /// The simple-root coefficient vector of a root, written as e.g. `a1+2a2`.
    pub fn root_label(&self, id: usize) -> String {
        let c = &self.simple_coords[id];
        let mut s = String::new();
        for (i, &k) in c.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if k < 0 {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if k.abs() != 1 {
                s.push_str(&k.abs().to_string());
            }
            s.push_str(&format!("a{}", i + 1));
        }
        s
    }
}

/// Smallest positive integral multiple of a vector over Q(√3), in the sense
/// that all rational and √3 components become coprime integers.
pub fn clear_denominators(v: &[Scalar]) -> Vec<Scalar> {
    use num_bigint::BigInt;
    let parts: Vec<&Rational> = v.iter().flat_map(|x| [&x.a, &x.b]).collect();
    if parts.iter().all(|p| p.is_zero()) {
        return v.to_vec();
    }
    let mut l = BigInt::one();
    for p in &parts {
        l = l.lcm(&p.denom_big());
    }
    let mut g = BigInt::zero();
    for p in &parts {
        let n = p.numer_big() * (&l / p.denom_big());
        g = g.gcd(&n);
    }
    let g = g.abs();
    let scale: Rational = format!("{}/{}", l, g).parse().expect("valid rational");
    v.iter()
        .map(|x| Scalar::new(&x.a * &scale, &x.b * &scale))
        .collect()
}

/// Inverse of an invertible integer matrix over the rationals.
pub fn invert_integer_matrix(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_int(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible matrix");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = &f * &a[col][c];
                    a[r][c] = &a[r][c] - &t;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    #[test]
    fn root_counts() {
        let a2 = RootSystem::new(Kind::A, 2).unwrap();
        assert_eq!(a2.num_roots(), 6);
        assert_eq!(a2.positive_ids().len(), 3);
        let b2 = RootSystem::new(Kind::B, 2).unwrap();
        assert_eq!(b2.num_roots(), 8);
        assert_eq!(b2.root(b2.simple(0)), &ints(&[1, -1])[..]);
        assert_eq!(b2.root(b2.simple(1)), &ints(&[0, 1])[..]);
        let g2 = RootSystem::new(Kind::G, 2).unwrap();
        assert_eq!(g2.num_roots(), 12);
        let long = g2
            .roots()
            .iter()
            .filter(|r| dot(r, r) == Scalar::int(3))
            .count();
        assert_eq!(long, 6);
        assert_eq!(RootSystem::new(Kind::D, 4).unwrap().num_roots(), 24);
    }

    #[test]
    fn invalid_ranks() {
        assert!(RootSystem::new(Kind::A, 0).is_err());
        assert!(RootSystem::new(Kind::B, 1).is_err());
        assert!(RootSystem::new(Kind::D, 3).is_err());
        assert!(RootSystem::new(Kind::G, 3).is_err());
        assert!(RootSystem::new(Kind::E, 6).is_err());
    }

    #[test]
    fn reflection_examples() {
        let b2 = RootSystem::new(Kind::B, 2).unwrap();
        let e1 = b2.find(&ints(&[1, 0])).unwrap();
        let e1pe2 = b2.find(&ints(&[1, 1])).unwrap();
        assert_eq!(b2.reflect(e1, &ints(&[1, 0])), ints(&[-1, 0]));
        assert_eq!(b2.reflect(e1pe2, &ints(&[1, 0])), ints(&[0, -1]));
    }

    #[test]
    fn dominant_weight_examples() {
        let b2 = RootSystem::new(Kind::B, 2).unwrap();
        assert_eq!(b2.dominant_weight(SimpleSubset::from_one_based(&[2])), ints(&[1, 0]));
        assert_eq!(b2.dominant_weight(SimpleSubset::full(2)), ints(&[0, 0]));
        let a2 = RootSystem::new(Kind::A, 2).unwrap();
        assert_eq!(a2.dominant_weight(SimpleSubset::empty()), ints(&[1, 0, -1]));
        let b3 = RootSystem::new(Kind::B, 3).unwrap();
        assert_eq!(b3.dominant_weight(SimpleSubset::from_one_based(&[2, 3])), ints(&[1, 0, 0]));
    }

    #[test]
    fn subset_parsing() {
        assert_eq!(SimpleSubset::parse("", 3).unwrap(), SimpleSubset::empty());
        assert_eq!(SimpleSubset::parse("all", 3).unwrap(), SimpleSubset::full(3));
        assert_eq!(SimpleSubset::parse("1,3", 3).unwrap(), SimpleSubset(0b101));
        assert!(SimpleSubset::parse("4", 3).is_err());
        assert_eq!(SimpleSubset(0b101).to_string(), "{1,3}");
    }
}
