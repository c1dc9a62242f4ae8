//! Exact linear algebra over the rationals: incremental row echelon forms and
//! null spaces.

use crate::rational::Rational;

/// A reduced row echelon basis of a subspace of `Q^n`, grown one vector at a time.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    /// Rows with a leading one at `pivots[i]`; pivot columns are zero in other rows.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    /// The zero subspace of `Q^ncols`.
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Dimension of the subspace.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Ambient dimension.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
    }

    /// True if `v` lies in the subspace.
    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Rational::is_zero)
    }

    /// Adds `v`; returns false if it was already in the subspace.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x -= &(&c * r);
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    /// A basis of the solution space `{x : r·x = 0 for every row r}`.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Rational::zero(); self.ncols];
            x[free] = Rational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[free].is_zero() {
                    x[p] = -&row[free];
                }
            }
            out.push(x);
        }
        out
    }
}

use num_traits::{One, Zero};

/// A basis of the null space of the matrix with the given rows.
pub fn null_space(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.null_space()
}

/// Rank of the matrix with the given rows.
pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn rank_and_null_space() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3), 2);
        let ns = null_space(&rows, 3);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            let dot = r.iter().zip(&ns[0]).fold(Rational::zero(), |a, (x, y)| &a + &(x * y));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[1, 1, 0])));
        assert!(!e.insert(&v(&[2, 2, 0])));
        assert!(e.contains(&v(&[3, 3, 0])));
        assert!(!e.contains(&v(&[0, 0, 1])));
    }
}
