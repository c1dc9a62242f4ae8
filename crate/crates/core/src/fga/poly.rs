//! Sparse (Laurent) polynomials with exact rational coefficients.
//!
//! An [`SElement`] stores a sorted list of monomials with nonzero
//! coefficients. A monomial carries an exponent vector over the lattice
//! coordinates and an exponent of the symbol β. Polynomial laws use
//! nonnegative exponents and β⁰; the multiplicative law uses arbitrary
//! integer exponents, read as characters `e^λ`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Maximal number of lattice coordinates.
pub const MAX_VARS: usize = 8;

/// A monomial: exponent vector plus the exponent of β.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono {
    /// Exponents of the lattice coordinates.
    pub e: [i16; MAX_VARS],
    /// Exponent of β.
    pub beta: i16,
}

impl Mono {
    /// The constant monomial.
    pub const ONE: Mono = Mono { e: [0; MAX_VARS], beta: 0 };

    /// Monomial from an exponent slice and a β exponent.
    pub fn new(exps: &[i64], beta: i64) -> Self {
        let mut e = [0i16; MAX_VARS];
        for (k, &x) in exps.iter().enumerate() {
            e[k] = x as i16;
        }
        Mono { e, beta: beta as i16 }
    }

    /// Sum of the exponents of the lattice coordinates.
    pub fn degree(&self) -> i64 {
        self.e.iter().map(|&x| x as i64).sum()
    }

    /// Product of monomials.
    pub fn mul(&self, o: &Mono) -> Mono {
        let mut e = self.e;
        for k in 0..MAX_VARS {
            e[k] += o.e[k];
        }
        Mono { e, beta: self.beta + o.beta }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    /// Graded lexicographic order, then by the β exponent.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.e.cmp(&other.e))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

/// An element of the formal group algebra in normal form.
///
/// `trunc` is the truncation degree of truncated power series laws; terms of
/// total degree above it are dropped by every operation.
#[derive(Clone, Debug, Default)]
pub struct SElement {
    terms: Vec<(Mono, Rational)>,
    trunc: Option<u32>,
}

impl PartialEq for SElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for SElement {}

impl std::hash::Hash for SElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl SElement {
    /// Zero.
    pub fn zero() -> Self {
        SElement { terms: vec![], trunc: None }
    }

    /// The constant `c`.
    pub fn constant(c: Rational) -> Self {
        Self::from_terms(vec![(Mono::ONE, c)], None)
    }

    /// One.
    pub fn one() -> Self {
        Self::constant(Rational::from_int(1))
    }

    /// A single term.
    pub fn term(m: Mono, c: Rational) -> Self {
        Self::from_terms(vec![(m, c)], None)
    }

    /// Builds the normal form from arbitrary terms, combining duplicates and
    /// dropping zeros and terms above the truncation degree.
    pub fn from_terms(terms: Vec<(Mono, Rational)>, trunc: Option<u32>) -> Self {
        let mut map: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (m, c) in terms {
            if let Some(n) = trunc {
                if m.degree() > n as i64 {
                    continue;
                }
            }
            let entry = map.entry(m).or_insert_with(|| Rational::from_int(0));
            *entry += &c;
        }
        SElement { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(), trunc }
    }

    /// Same element, tagged with a truncation degree (dropping higher terms).
    pub fn with_trunc(mut self, trunc: Option<u32>) -> Self {
        if let Some(n) = trunc {
            self.terms.retain(|(m, _)| m.degree() <= n as i64);
        }
        self.trunc = trunc;
        self
    }

    /// Truncation degree, if any.
    pub fn trunc(&self) -> Option<u32> {
        self.trunc
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> &[(Mono, Rational)] {
        &self.terms
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True for zero.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &Mono) -> Rational {
        match self.terms.binary_search_by(|(x, _)| x.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::from_int(0),
        }
    }

    /// Largest total degree among the terms.
    pub fn max_degree(&self) -> Option<i64> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    /// Smallest total degree among the terms.
    pub fn min_degree(&self) -> Option<i64> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous(&self, d: i64) -> SElement {
        SElement {
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
            trunc: self.trunc,
        }
    }

    /// True if all terms share one total degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        self.min_degree() == self.max_degree()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Rational) -> SElement {
        if c.is_zero() {
            return SElement { terms: vec![], trunc: self.trunc };
        }
        SElement {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplies by a monomial.
    pub fn mul_mono(&self, mono: &Mono, c: &Rational) -> SElement {
        Self::from_terms(self.terms.iter().map(|(m, x)| (m.mul(mono), x * c)).collect(), self.trunc)
    }

    /// Integer power.
    pub fn pow(&self, k: u32) -> SElement {
        let mut acc = SElement::one().with_trunc(self.trunc);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn merge(&self, o: &SElement, sign: bool) -> SElement {
        let trunc = match (self.trunc, o.trunc) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Greater
            } else if j == o.terms.len() {
                Ordering::Less
            } else {
                self.terms[i].0.cmp(&o.terms[j].0)
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &o.terms[j];
                    out.push((*m, if sign { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { &self.terms[i].1 - &o.terms[j].1 } else { &self.terms[i].1 + &o.terms[j].1 };
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SElement { terms: out, trunc }.with_trunc(trunc)
    }

    /// Serializable monomial list.
    pub fn to_monomials(&self, nvars: usize) -> Vec<MonomialEntry> {
        self.terms
            .iter()
            .map(|(m, c)| MonomialEntry(c.clone(), m.e[..nvars].iter().map(|&x| x as i64).collect(), m.beta as i64))
            .collect()
    }

    /// Inverse of [`SElement::to_monomials`].
    pub fn from_monomials(list: &[MonomialEntry], trunc: Option<u32>) -> Result<Self> {
        let mut terms = Vec::with_capacity(list.len());
        for MonomialEntry(c, e, b) in list {
            if e.len() > MAX_VARS {
                return Err(Error::Parse("too many exponents".into()));
            }
            terms.push((Mono::new(e, *b), c.clone()));
        }
        Ok(Self::from_terms(terms, trunc))
    }

    /// Renders with the given variable names, e.g. `2*w1^2*w2 - 1/2*w2`.
    /// Negative exponents are kept as `^-k`; β is written `b`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate().rev() {
            let mut factors: Vec<String> = Vec::new();
            if m.beta != 0 {
                factors.push(if m.beta == 1 { "b".into() } else { format!("b^{}", m.beta) });
            }
            for (k, name) in names.iter().enumerate() {
                match m.e[k] {
                    0 => {}
                    1 => factors.push(name.clone()),
                    x => factors.push(format!("{name}^{x}")),
                }
            }
            let neg = c.signum() < 0;
            let a = c.abs();
            let body = if factors.is_empty() {
                a.to_string()
            } else if a.is_one() {
                factors.join("*")
            } else {
                format!("{}*{}", a, factors.join("*"))
            };
            if idx + 1 == self.terms.len() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

/// One serialized monomial: `[coefficient, exponents, beta exponent]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialEntry(pub Rational, pub Vec<i64>, pub i64);

impl Add for &SElement {
    type Output = SElement;
    fn add(self, o: &SElement) -> SElement {
        self.merge(o, false)
    }
}

impl Sub for &SElement {
    type Output = SElement;
    fn sub(self, o: &SElement) -> SElement {
        self.merge(o, true)
    }
}

impl Neg for &SElement {
    type Output = SElement;
    fn neg(self) -> SElement {
        SElement { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(), trunc: self.trunc }
    }
}

impl Mul for &SElement {
    type Output = SElement;
    fn mul(self, o: &SElement) -> SElement {
        let trunc = match (self.trunc, o.trunc) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if self.is_zero() || o.is_zero() {
            return SElement { terms: vec![], trunc };
        }
        let mut map: BTreeMap<Mono, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                if let Some(n) = trunc {
                    if m.degree() > n as i64 {
                        continue;
                    }
                }
                let c = ca * cb;
                match map.get_mut(&m) {
                    Some(x) => *x += &c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        SElement { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(), trunc }
    }
}

impl Add for SElement {
    type Output = SElement;
    fn add(self, o: SElement) -> SElement {
        &self + &o
    }
}

impl Sub for SElement {
    type Output = SElement;
    fn sub(self, o: SElement) -> SElement {
        &self - &o
    }
}

impl Mul for SElement {
    type Output = SElement;
    fn mul(self, o: SElement) -> SElement {
        &self * &o
    }
}

impl Neg for SElement {
    type Output = SElement;
    fn neg(self) -> SElement {
        -&self
    }
}

impl fmt::Display for SElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=MAX_VARS).map(|i| format!("t{i}")).collect();
        f.write_str(&self.render(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(k: usize) -> SElement {
        let mut e = [0i64; 2];
        e[k] = 1;
        SElement::term(Mono::new(&e, 0), Rational::from_int(1))
    }

    #[test]
    fn ring_operations() {
        let x = var(0);
        let y = var(1);
        let s = &x + &y;
        let d = &x - &y;
        let p = &s * &d;
        assert_eq!(p, &(&x * &x) - &(&y * &y));
        assert!((&s - &s).is_zero());
    }

    #[test]
    fn truncation_drops_high_degree() {
        let x = var(0).with_trunc(Some(2));
        assert!(x.pow(3).is_zero());
        assert_eq!(x.pow(2).len(), 1);
    }

    #[test]
    fn monomial_round_trip() {
        let x = var(0);
        let y = var(1);
        let f = &(&x * &y).scale(&Rational::new(-3, 2)) + &SElement::one();
        let list = f.to_monomials(2);
        assert_eq!(SElement::from_monomials(&list, None).unwrap(), f);
        assert_eq!(serde_json::to_string(&list).unwrap(), r#"[["1",[0,0],0],["-3/2",[1,1],0]]"#);
    }
}
