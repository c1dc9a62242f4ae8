//! Type B_n: orbit invariants of W_Q on weights.
//!
//! With simple roots `α_i = e_i − e_{i+1}` and `α_n = e_n`, the group W_Q
//! permutes coordinates inside maximal blocks of consecutive indices and, when
//! `α_n ∈ Θ_Q`, also changes signs inside the last block `τ`. An orbit is
//! determined by the multiset of values in each block (absolute values in `τ`).

use std::collections::BTreeMap;

use crate::root_system::SimpleSubset;

/// Key `(block, value)` of a count table.
pub type Key = (usize, i64);

/// The invariant description of a weight under W_Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantDescription {
    /// Block boundaries `0 = k_0 < k_1 < … < k_{r+1} = n`.
    pub boundaries: Vec<usize>,
    /// Whether the last block admits sign changes.
    pub last_is_tau: bool,
    /// Nonzero counts `d(m, a)`.
    pub counts: BTreeMap<Key, i64>,
}

/// Block boundaries for `Θ_Q` in rank `n`.
pub fn boundaries(n: usize, theta_q: SimpleSubset) -> Vec<usize> {
    let mut b = vec![0];
    b.extend((1..n).filter(|&i| !theta_q.contains(i - 1)));
    b.push(n);
    b
}

/// Block index (0-based) of the 0-based coordinate `i`.
pub fn block_of(bounds: &[usize], i: usize) -> usize {
    bounds.windows(2).position(|w| w[0] <= i && i < w[1]).expect("coordinate in range")
}

impl InvariantDescription {
    /// The description of `mu` under W_Q in type B_n.
    pub fn new(mu: &[i64], theta_q: SimpleSubset) -> Self {
        let n = mu.len();
        let bounds = boundaries(n, theta_q);
        let last_is_tau = theta_q.contains(n - 1);
        let last = bounds.len() - 2;
        let mut counts = BTreeMap::new();
        for (i, &x) in mu.iter().enumerate() {
            let m = block_of(&bounds, i);
            let a = if last_is_tau && m == last { x.abs() } else { x };
            *counts.entry((m, a)).or_insert(0) += 1;
        }
        InvariantDescription { boundaries: bounds, last_is_tau, counts }
    }

    /// `d(m, a)`, zero when absent.
    pub fn count(&self, m: usize, a: i64) -> i64 {
        self.counts.get(&(m, a)).copied().unwrap_or(0)
    }

    /// Whether block `m` is the sign-changing block `τ`.
    pub fn is_tau(&self, m: usize) -> bool {
        self.last_is_tau && m == self.boundaries.len() - 2
    }

    /// The difference `other − self` as a sparse table.
    pub fn difference(&self, other: &Self) -> BTreeMap<Key, i64> {
        let mut out: BTreeMap<Key, i64> = BTreeMap::new();
        for (&k, &v) in &other.counts {
            *out.entry(k).or_insert(0) += v;
        }
        for (&k, &v) in &self.counts {
            *out.entry(k).or_insert(0) -= v;
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// Orbit equality through the invariant descriptions.
pub fn orbit_equal(mu: &[i64], nu: &[i64], theta_q: SimpleSubset) -> bool {
    InvariantDescription::new(mu, theta_q) == InvariantDescription::new(nu, theta_q)
}

/// A positive root of B_n in coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BRoot {
    /// `e_i − e_j`, `i < j` (0-based).
    Transposition(usize, usize),
    /// `e_i + e_j`, `i < j`.
    SignedTransposition(usize, usize),
    /// `e_i`.
    Short(usize),
}

impl BRoot {
    /// Classifies a positive root given by integer coordinates.
    pub fn from_coords(v: &[i64]) -> Option<Self> {
        let nz: Vec<(usize, i64)> = v.iter().copied().enumerate().filter(|p| p.1 != 0).collect();
        match nz.as_slice() {
            [(i, 1)] => Some(BRoot::Short(*i)),
            [(i, 1), (j, -1)] => Some(BRoot::Transposition(*i, *j)),
            [(i, 1), (j, 1)] => Some(BRoot::SignedTransposition(*i, *j)),
            _ => None,
        }
    }

    /// The reflection applied to `mu`.
    pub fn reflect(self, mu: &[i64]) -> Vec<i64> {
        let mut out = mu.to_vec();
        match self {
            BRoot::Transposition(i, j) => out.swap(i, j),
            BRoot::SignedTransposition(i, j) => {
                out[i] = -mu[j];
                out[j] = -mu[i];
            }
            BRoot::Short(i) => out[i] = -mu[i],
        }
        out
    }
}

fn table(entries: &[(Key, i64)]) -> BTreeMap<Key, i64> {
    let mut out: BTreeMap<Key, i64> = BTreeMap::new();
    for &(k, v) in entries {
        *out.entry(k).or_insert(0) += v;
    }
    out.retain(|_, v| *v != 0);
    out
}

/// The case-by-case table of `f = d_{s_α μ} − d_μ`, for `s_α μ ∉ W_Q μ`.
///
/// Returns `None` when `s_α μ` lies in the W_Q-orbit of `μ`, where the table
/// does not apply.
pub fn explicit_difference(mu: &[i64], alpha: BRoot, theta_q: SimpleSubset) -> Option<BTreeMap<Key, i64>> {
    let n = mu.len();
    let bounds = boundaries(n, theta_q);
    let tau = theta_q.contains(n - 1);
    let last = bounds.len() - 2;
    let in_tau = |m: usize| tau && m == last;
    match alpha {
        BRoot::Transposition(i, j) => {
            let (p, q) = (block_of(&bounds, i), block_of(&bounds, j));
            let (xi, xj) = (mu[i], mu[j]);
            if p == q || xi == xj {
                return None;
            }
            if !in_tau(q) {
                Some(table(&[((p, xj), 1), ((q, xi), 1), ((p, xi), -1), ((q, xj), -1)]))
            } else if xi != -xj {
                Some(table(&[((p, xj), 1), ((q, xi.abs()), 1), ((p, xi), -1), ((q, xj.abs()), -1)]))
            } else {
                Some(table(&[((p, xj), 1), ((p, xi), -1)]))
            }
        }
        BRoot::SignedTransposition(i, j) => {
            let (p, q) = (block_of(&bounds, i), block_of(&bounds, j));
            let (xi, xj) = (mu[i], mu[j]);
            if xi == -xj || (p == q && in_tau(p)) {
                return None;
            }
            if p != q && !in_tau(q) {
                Some(table(&[((p, -xj), 1), ((q, -xi), 1), ((p, xi), -1), ((q, xj), -1)]))
            } else if p != q {
                if xi != xj {
                    Some(table(&[((p, -xj), 1), ((q, xi.abs()), 1), ((p, xi), -1), ((q, xj.abs()), -1)]))
                } else {
                    Some(table(&[((p, -xj), 1), ((p, xi), -1)]))
                }
            } else if xi == xj {
                Some(table(&[((p, -xi), 2), ((p, xi), -2)]))
            } else if xi == 0 {
                Some(table(&[((p, -xj), 1), ((p, xj), -1)]))
            } else if xj == 0 {
                Some(table(&[((p, -xi), 1), ((p, xi), -1)]))
            } else {
                Some(table(&[((p, -xj), 1), ((p, -xi), 1), ((p, xi), -1), ((p, xj), -1)]))
            }
        }
        BRoot::Short(i) => {
            let p = block_of(&bounds, i);
            if mu[i] == 0 || in_tau(p) {
                return None;
            }
            Some(table(&[((p, -mu[i]), 1), ((p, mu[i]), -1)]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn description_example() {
        let d = InvariantDescription::new(&[1, 0], SimpleSubset::from_one_based(&[1]));
        assert_eq!(d.boundaries, vec![0, 2]);
        assert!(!d.last_is_tau);
        assert_eq!(d.count(0, 1), 1);
        assert_eq!(d.count(0, 0), 1);
        assert_eq!(d.counts.len(), 2);
    }

    #[test]
    fn tau_uses_absolute_values() {
        let q = SimpleSubset::from_one_based(&[2, 3]);
        assert!(orbit_equal(&[1, -2, 0], &[1, 0, 2], q));
        assert!(!orbit_equal(&[1, -2, 0], &[-1, 0, 2], q));
        let d = InvariantDescription::new(&[1, -2, 0], q);
        assert!(d.is_tau(1));
        assert_eq!(d.count(1, -2), 0);
        assert_eq!(d.count(1, 2), 1);
    }

    #[test]
    fn root_classification() {
        assert_eq!(BRoot::from_coords(&[1, -1, 0]), Some(BRoot::Transposition(0, 1)));
        assert_eq!(BRoot::from_coords(&[0, 1, 1]), Some(BRoot::SignedTransposition(1, 2)));
        assert_eq!(BRoot::from_coords(&[0, 0, 1]), Some(BRoot::Short(2)));
        assert_eq!(BRoot::SignedTransposition(0, 1).reflect(&[3, 1]), vec![-1, -3]);
    }
}
