//! The twisted group algebra Q_W, push-pull elements, the Hecke `•` and
//! `⊙` actions on cofunctions, characteristic and Borel maps, point classes,
//! the correspondence product and the Hom-membership test.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fga::{Fga, QElement, SElement};
use crate::root_system::SimpleSubset;
use crate::weyl::WeylElement;

/// An element `Σ q_w δ_w` of the twisted group algebra Q_W.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwistedElement {
    terms: BTreeMap<WeylElement, QElement>,
}

impl TwistedElement {
    /// The zero element.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `q δ_w`.
    pub fn monomial(q: QElement, w: WeylElement) -> Self {
        let mut t = Self::zero();
        if !q.is_zero() {
            t.terms.insert(w, q);
        }
        t
    }

    /// `δ_w`.
    pub fn delta(w: WeylElement) -> Self {
        Self::monomial(QElement::one(), w)
    }

    /// `q δ_e`.
    pub fn scalar(q: QElement) -> Self {
        Self::monomial(q, WeylElement::IDENTITY)
    }

    /// Nonzero coefficients by group element.
    pub fn terms(&self) -> &BTreeMap<WeylElement, QElement> {
        &self.terms
    }

    /// Coefficient of `δ_w`.
    pub fn coeff(&self, w: WeylElement) -> QElement {
        self.terms.get(&w).cloned().unwrap_or_else(QElement::zero)
    }

    /// Sum.
    pub fn add(&self, fga: &Fga, other: &Self) -> Self {
        let mut out = self.clone();
        for (&w, q) in &other.terms {
            let c = fga.q_add(&out.coeff(w), q);
            if c.is_zero() {
                out.terms.remove(&w);
            } else {
                out.terms.insert(w, c);
            }
        }
        out
    }

    /// Equality of all coefficients as fractions.
    pub fn eq_in(&self, fga: &Fga, other: &Self) -> bool {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        keys.into_iter().all(|w| fga.q_eq(&self.coeff(w), &other.coeff(w)))
    }

    /// The action `z·s = Σ q_w w(s)` on the localization.
    pub fn act_on(&self, fga: &Fga, s: &QElement) -> QElement {
        let mut acc = QElement::zero();
        for (&w, q) in &self.terms {
            acc = fga.q_add(&acc, &fga.q_mul(q, &fga.q_act(w, s)));
        }
        acc
    }
}

/// Product in Q_W: `(p δ_w)(q δ_v) = p w(q) δ_{wv}`.
pub fn twisted_mul(fga: &Fga, a: &TwistedElement, b: &TwistedElement) -> TwistedElement {
    let g = fga.group();
    let mut out = TwistedElement::zero();
    for (&w, p) in &a.terms {
        for (&v, q) in &b.terms {
            let c = fga.q_mul(p, &fga.q_act(w, q));
            out = out.add(fga, &TwistedElement::monomial(c, g.mul(w, v)));
        }
    }
    out
}

/// The push-pull element `Y_i = 1/x_{−α_i} + (1/x_{α_i}) δ_{s_i}` (0-based `i`).
pub fn push_pull(fga: &Fga, i: usize) -> TwistedElement {
    let g = fga.group();
    let rs = g.root_system();
    let a = rs.simple(i);
    TwistedElement::scalar(fga.inv_chern(rs.neg(a)))
        .add(fga, &TwistedElement::monomial(fga.inv_chern(a), g.simple_reflection(i)))
}

/// A cofunction `Σ q_v f_v` over the coset representatives `W^P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cofunction {
    /// The parabolic subset indexing the cosets.
    pub theta_p: SimpleSubset,
    /// Coefficients in the order of the coset table representatives.
    pub values: Vec<QElement>,
}

impl Cofunction {
    /// The zero cofunction over `W^P`.
    pub fn zero(fga: &Fga, theta_p: SimpleSubset) -> Self {
        let n = fga.group().coset_table(theta_p).len();
        Cofunction { theta_p, values: vec![QElement::zero(); n] }
    }

    /// A cofunction with polynomial coefficients.
    pub fn from_s(theta_p: SimpleSubset, values: Vec<SElement>) -> Self {
        Cofunction { theta_p, values: values.into_iter().map(QElement::from_s).collect() }
    }

    /// The fundamental class `Σ f_v`.
    pub fn one(fga: &Fga, theta_p: SimpleSubset) -> Self {
        let n = fga.group().coset_table(theta_p).len();
        Cofunction { theta_p, values: vec![QElement::one(); n] }
    }

    /// `f_v` for the representative `v`.
    pub fn basis(fga: &Fga, theta_p: SimpleSubset, v: WeylElement) -> Self {
        let mut f = Self::zero(fga, theta_p);
        let pos = fga.group().coset_table(theta_p).pos_of(v);
        f.values[pos] = QElement::one();
        f
    }

    /// Sum.
    pub fn add(&self, fga: &Fga, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Cofunction {
            theta_p: self.theta_p,
            values: self.values.iter().zip(&other.values).map(|(a, b)| fga.q_add(a, b)).collect(),
        })
    }

    /// Pointwise product.
    pub fn mul(&self, fga: &Fga, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Cofunction {
            theta_p: self.theta_p,
            values: self.values.iter().zip(&other.values).map(|(a, b)| fga.q_mul(a, b)).collect(),
        })
    }

    /// Multiplication of every coefficient by `q`.
    pub fn scale(&self, fga: &Fga, q: &QElement) -> Self {
        Cofunction { theta_p: self.theta_p, values: self.values.iter().map(|v| fga.q_mul(q, v)).collect() }
    }

    /// Equality of all coefficients as fractions.
    pub fn eq_in(&self, fga: &Fga, other: &Self) -> bool {
        self.theta_p == other.theta_p
            && self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| fga.q_eq(a, b))
    }

    /// The coefficients as polynomials, if all of them lie in S.
    pub fn to_s(&self, fga: &Fga) -> Option<Vec<SElement>> {
        self.values.iter().map(|q| fga.q_reduce(q).as_s().cloned()).collect()
    }

    /// The pull-back to W: the coefficient at `x` is the one at `proj(x)`.
    pub fn lift(&self, fga: &Fga) -> Self {
        if self.theta_p.is_empty() {
            return self.clone();
        }
        let g = fga.group();
        let table = g.coset_table(self.theta_p);
        Cofunction {
            theta_p: SimpleSubset::empty(),
            values: g.elements().map(|x| self.values[table.pos_of(table.project(x))].clone()).collect(),
        }
    }

    /// The restriction of a cofunction on W that is constant on the cosets
    /// `x W_P` to `W^P`; `None` if it is not constant on cosets.
    pub fn descend(&self, fga: &Fga, theta_p: SimpleSubset) -> Option<Self> {
        assert!(self.theta_p.is_empty(), "descend expects a cofunction on W");
        let g = fga.group();
        let table = g.coset_table(theta_p);
        for x in g.elements() {
            let rep = table.project(x);
            if !fga.q_eq(&self.values[x.index()], &self.values[rep.index()]) {
                return None;
            }
        }
        Some(Cofunction {
            theta_p,
            values: table.reps.iter().map(|v| self.values[v.index()].clone()).collect(),
        })
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.theta_p != other.theta_p || self.values.len() != other.values.len() {
            return Err(Error::IndexMismatch(format!(
                "cofunctions over {} and {}",
                self.theta_p, other.theta_p
            )));
        }
        Ok(())
    }
}

/// The Hecke action `q δ_w • p f_v = p · vw⁻¹(q) f_{vw⁻¹}`.
///
/// Parabolic cofunctions are first pulled back to W, so the result is always
/// a cofunction on W; use [`Cofunction::descend`] to return to `W^P`.
pub fn bullet(fga: &Fga, a: &TwistedElement, f: &Cofunction) -> Cofunction {
    let g = fga.group();
    let full = f.lift(fga);
    let mut out = vec![QElement::zero(); g.order()];
    for (&w, q) in a.terms() {
        let winv = g.inv(w);
        for v in g.elements() {
            let p = &full.values[v.index()];
            if p.is_zero() {
                continue;
            }
            let t = g.mul(v, winv);
            let c = fga.q_mul(p, &fga.q_act(t, q));
            out[t.index()] = fga.q_add(&out[t.index()], &c);
        }
    }
    Cofunction { theta_p: SimpleSubset::empty(), values: out }
}

/// The action `(p δ_w) ⊙ (q f_v) = p w(q) f_{proj(wv)}`.
pub fn odot(fga: &Fga, a: &TwistedElement, f: &Cofunction) -> Cofunction {
    let g = fga.group();
    let table = g.coset_table(f.theta_p);
    let mut out = vec![QElement::zero(); table.len()];
    for (&w, p) in a.terms() {
        for (i, q) in f.values.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let t = table.pos_of(table.project(g.mul(w, table.reps[i])));
            let c = fga.q_mul(p, &fga.q_act(w, q));
            out[t] = fga.q_add(&out[t], &c);
        }
    }
    Cofunction { theta_p: f.theta_p, values: out }
}

/// The characteristic map `c(q) = Σ_v v(q) f_v` over `W^P`.
pub fn char_map(fga: &Fga, q: &SElement, theta_p: SimpleSubset) -> Result<Cofunction> {
    if !fga.is_invariant(q, theta_p) {
        return Err(Error::NotParabolicInvariant(theta_p.to_string()));
    }
    let table = fga.group().coset_table(theta_p);
    Ok(Cofunction::from_s(theta_p, table.reps.iter().map(|&v| fga.weyl_act(v, q)).collect()))
}

/// The Borel map `(s, s′) ↦ s · c(s′)`.
pub fn borel_pair(fga: &Fga, s: &SElement, s2: &SElement, theta_p: SimpleSubset) -> Result<Cofunction> {
    Ok(char_map(fga, s2, theta_p)?.scale(fga, &QElement::from_s(s.clone())))
}

/// `x_Q = Π x_α` over the negative roots outside Σ_Q.
pub fn x_q(fga: &Fga, theta_q: SimpleSubset) -> SElement {
    let rs = fga.group().root_system();
    let mut acc = fga.one();
    for a in 0..rs.num_roots() {
        if !rs.is_positive(a) && !rs.in_subsystem(a, theta_q) {
            acc = &acc * fga.x_root(a);
        }
    }
    acc
}

/// The class of a point `x_Q f_e` over `W^Q`.
pub fn point_class(fga: &Fga, theta_q: SimpleSubset) -> Cofunction {
    let mut f = Cofunction::zero(fga, theta_q);
    f.values[0] = QElement::from_s(x_q(fga, theta_q));
    f
}

/// The correspondence product `a_w = Σ_{proj(vu)=w} b_v v(c_u)`, with `b`
/// over `W^P` and `c` over `W^H`; the result is over `W^H`.
pub fn correspondence_product(fga: &Fga, c: &Cofunction, b: &Cofunction) -> Result<Cofunction> {
    let g = fga.group();
    let tp = g.coset_table(b.theta_p);
    let th = g.coset_table(c.theta_p);
    if tp.len() != b.values.len() || th.len() != c.values.len() {
        return Err(Error::IndexMismatch(format!(
            "expected {} and {} values, got {} and {}",
            tp.len(),
            th.len(),
            b.values.len(),
            c.values.len()
        )));
    }
    let mut out = vec![QElement::zero(); th.len()];
    for (i, bv) in b.values.iter().enumerate() {
        if bv.is_zero() {
            continue;
        }
        let v = tp.reps[i];
        for (j, cu) in c.values.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            let w = th.pos_of(th.project(g.mul(v, th.reps[j])));
            let t = fga.q_mul(bv, &fga.q_act(v, cu));
            out[w] = fga.q_add(&out[w], &t);
        }
    }
    Ok(Cofunction { theta_p: c.theta_p, values: out })
}

/// The identity morphism: `f_e` over `W^P`.
pub fn identity_tuple(fga: &Fga, theta_p: SimpleSubset) -> Cofunction {
    Cofunction::basis(fga, theta_p, WeylElement::IDENTITY)
}

/// Whether `b` over `W^P` comes from a morphism of Demazure modules from the
/// Q-side: `b′ = x_Q b` has coefficients in S and
/// `x_{v(α)} | b′_v − b′_{proj(s_{v(α)} v)}` for all `v` and all `α ∉ Σ_P`.
pub fn hom_membership(fga: &Fga, b: &Cofunction, theta_q: SimpleSubset) -> bool {
    let g = fga.group();
    let rs = g.root_system();
    let table = g.coset_table(b.theta_p);
    let xq = x_q(fga, theta_q);
    let Some(scaled) = b.scale(fga, &QElement::from_s(xq)).to_s(fga) else {
        return false;
    };
    for (i, &v) in table.reps.iter().enumerate() {
        for a in rs.positive_ids() {
            if rs.in_subsystem(a, b.theta_p) {
                continue;
            }
            let beta = rs.positive_of(g.act_root(v, a));
            let y = table.pos_of(table.project(g.mul(g.reflection(beta), v)));
            if !fga.divisible(&(&scaled[i] - &scaled[y]), beta) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{Kind, RootSystem};
    use crate::weyl::WeylGroup;
    use std::sync::Arc;

    fn fga(kind: Kind, rank: usize) -> Fga {
        let g = WeylGroup::new(RootSystem::new(kind, rank).unwrap()).unwrap();
        Fga::additive(Arc::new(g))
    }

    #[test]
    fn twisted_rule() {
        let f = fga(Kind::A, 1);
        let s = f.group().simple_reflection(0);
        let x = QElement::from_s(f.x_root(f.group().root_system().simple(0)).clone());
        let lhs = twisted_mul(&f, &TwistedElement::delta(s), &TwistedElement::scalar(x.clone()));
        let rhs = TwistedElement::monomial(f.q_neg(&x), s);
        assert!(lhs.eq_in(&f, &rhs));
    }

    #[test]
    fn delta_times_push_pull() {
        for (k, r) in [(Kind::A, 2), (Kind::B, 2), (Kind::G, 2)] {
            let f = fga(k, r);
            for i in 0..r {
                let y = push_pull(&f, i);
                let lhs = twisted_mul(&f, &TwistedElement::delta(f.group().simple_reflection(i)), &y);
                assert!(lhs.eq_in(&f, &y));
            }
        }
    }

    #[test]
    fn a1_push_pull_on_point() {
        let f = fga(Kind::A, 1);
        let rs = f.group().root_system();
        let y = push_pull(&f, 0);
        let xneg = f.x_root(rs.neg(rs.simple(0))).clone();
        let p = Cofunction::from_s(SimpleSubset::empty(), vec![xneg, f.zero()]);
        let out = bullet(&f, &y, &p);
        assert!(out.eq_in(&f, &Cofunction::one(&f, SimpleSubset::empty())));
    }

    #[test]
    fn char_map_examples() {
        let f = fga(Kind::A, 1);
        let x = f.x_root(f.group().root_system().simple(0)).clone();
        let c = char_map(&f, &x, SimpleSubset::empty()).unwrap();
        assert_eq!(c.to_s(&f).unwrap(), vec![x.clone(), -&x]);
        assert!(matches!(char_map(&f, &x, SimpleSubset::full(1)), Err(Error::NotParabolicInvariant(_))));
        let one = char_map(&f, &f.one(), SimpleSubset::empty()).unwrap();
        assert!(one.eq_in(&f, &Cofunction::one(&f, SimpleSubset::empty())));
        let b = borel_pair(&f, &x, &f.one(), SimpleSubset::empty()).unwrap();
        assert_eq!(b.to_s(&f).unwrap(), vec![x.clone(), x]);
    }

    #[test]
    fn odot_on_sl3_parabolic() {
        let f = fga(Kind::A, 2);
        let g = f.group();
        let p = SimpleSubset::from_one_based(&[1]);
        let z: Vec<SElement> = (0..3)
            .map(|k| f.chern_class(&[k as i64 + 1, 2 - k as i64]))
            .collect();
        let cf = Cofunction::from_s(p, z.clone());
        let s1 = g.simple_reflection(0);
        let s2 = g.simple_reflection(1);
        let out1 = odot(&f, &TwistedElement::delta(s1), &cf).to_s(&f).unwrap();
        assert_eq!(out1, vec![f.weyl_act(s1, &z[0]), f.weyl_act(s1, &z[2]), f.weyl_act(s1, &z[1])]);
        let out2 = odot(&f, &TwistedElement::delta(s2), &cf).to_s(&f).unwrap();
        assert_eq!(out2, vec![f.weyl_act(s2, &z[1]), f.weyl_act(s2, &z[0]), f.weyl_act(s2, &z[2])]);
    }

    #[test]
    fn point_class_examples() {
        let f = fga(Kind::A, 2);
        let rs = f.group().root_system();
        assert_eq!(point_class(&f, SimpleSubset::full(2)).to_s(&f).unwrap(), vec![f.one()]);
        let pc = point_class(&f, SimpleSubset::from_one_based(&[1])).to_s(&f).unwrap();
        let a2 = rs.find_by_simple_coords(&[0, -1]).unwrap();
        let a12 = rs.find_by_simple_coords(&[-1, -1]).unwrap();
        assert_eq!(pc[0], f.x_root(a2) * f.x_root(a12));
        assert!(pc[1].is_zero() && pc[2].is_zero());
    }

    #[test]
    fn correspondence_examples() {
        let f = fga(Kind::A, 1);
        let e = SimpleSubset::empty();
        let x = f.x_root(f.group().root_system().simple(0)).clone();
        let b = Cofunction::from_s(e, vec![f.zero(), x.clone()]);
        let c = Cofunction::one(&f, e);
        let a = correspondence_product(&f, &c, &b).unwrap();
        assert_eq!(a.to_s(&f).unwrap(), vec![x.clone(), x.clone()]);
        let id = identity_tuple(&f, e);
        assert!(correspondence_product(&f, &b, &id).unwrap().eq_in(&f, &b));
        let wrong = Cofunction::from_s(e, vec![f.one()]);
        assert!(matches!(correspondence_product(&f, &wrong, &b), Err(Error::IndexMismatch(_))));
    }

    #[test]
    fn hom_membership_examples() {
        let f = fga(Kind::A, 1);
        let e = SimpleSubset::empty();
        let a = f.group().root_system().simple(0);
        let b = Cofunction { theta_p: e, values: vec![f.inv_chern(a), QElement::zero()] };
        assert!(!hom_membership(&f, &b, e));
        assert!(hom_membership(&f, &Cofunction::zero(&f, e), e));
        // b = 1/x_Q at e: x_Q b = (1, 0) and 1 − 0 is not divisible by x_α.
        let neg = f.group().root_system().neg(a);
        let inv_q = Cofunction { theta_p: e, values: vec![f.inv_chern(neg), QElement::zero()] };
        assert!(!hom_membership(&f, &inv_q, e));
        assert!(hom_membership(&f, &identity_tuple(&f, e), e));
    }
}
