//! The formal group algebra S of a formal group law, its localization at the
//! Chern classes of roots, and the Weyl group action.
//!
//! Three laws are supported:
//!
//! * additive `x + y`: S is the polynomial ring in the lattice coordinates,
//!   `x_λ` is the linear form λ;
//! * multiplicative `x + y − βxy`: S is the group ring of the lattice over
//!   `Q[β, β⁻¹]` and `x_λ = β⁻¹(1 − e^{−λ})`;
//! * a truncated law `x + y + Σ a_ij x^i y^j` with numeric coefficients:
//!   S is the power series ring in `t_k = x_{b_k}` modulo total degree above
//!   `N`, where `b_k` is the lattice basis. Equalities hold modulo degree `N`.

pub mod poly;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::root_system::SimpleSubset;
use crate::weyl::{WeylElement, WeylGroup};

pub use poly::{Mono, MonomialEntry, SElement, MAX_VARS};

/// Default truncation degree of truncated laws.
pub const DEFAULT_TRUNCATION: u32 = 8;

/// A formal group law.
#[derive(Debug, Clone, PartialEq)]
pub enum Law {
    /// `F(x, y) = x + y`.
    Additive,
    /// `F(x, y) = x + y − βxy` with β an invertible symbol.
    Multiplicative,
    /// `F(x, y) = x + y + Σ a_ij x^i y^j` modulo total degree above `n`.
    Truncated {
        /// Coefficients `a_ij` keyed by `(i, j)` with `i, j ≥ 1`.
        coeffs: BTreeMap<(u32, u32), Rational>,
        /// Truncation degree.
        n: u32,
    },
}

impl Law {
    /// The multiplicative law with numeric `β = b`, as a truncated law.
    pub fn truncated_multiplicative(b: Rational, n: u32) -> Law {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 1), -b);
        Law::Truncated { coeffs, n }
    }
}

/// Character lattice used for coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// Weight lattice, basis the fundamental weights.
    Weight,
    /// Root lattice, basis the simple roots.
    Root,
}

/// Localized element `numerator / Π x_α^{k_α}` over positive roots α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QElement {
    /// Numerator.
    pub num: SElement,
    /// Multiplicity of `x_α` in the denominator, keyed by positive root id.
    pub den: BTreeMap<usize, u32>,
}

impl QElement {
    /// An element of S viewed in the localization.
    pub fn from_s(s: SElement) -> Self {
        QElement { num: s, den: BTreeMap::new() }
    }

    /// Zero.
    pub fn zero() -> Self {
        Self::from_s(SElement::zero())
    }

    /// One.
    pub fn one() -> Self {
        Self::from_s(SElement::one())
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The element of S if the denominator is trivial.
    pub fn as_s(&self) -> Option<&SElement> {
        self.den.is_empty().then_some(&self.num)
    }
}

/// Context for computations in S and its localization.
#[derive(Debug)]
pub struct Fga {
    group: Arc<WeylGroup>,
    law: Law,
    lattice: Lattice,
    n: usize,
    trunc: Option<u32>,
    root_lat: Vec<Vec<i64>>,
    elem_lat: Vec<Vec<Vec<i64>>>,
    basis_images: Vec<OnceLock<Vec<SElement>>>,
    root_chern: Vec<SElement>,
    unit_inv: Vec<SElement>,
    neg_series: Option<SElement>,
}

fn mat_mul_i(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn mat_vec_i(a: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

impl Fga {
    /// Builds a context over the given group.
    pub fn new(group: Arc<WeylGroup>, law: Law, lattice: Lattice) -> Result<Self> {
        let rs = group.root_system();
        let n = rs.rank();
        if n > MAX_VARS {
            return Err(Error::InvalidRank { kind: rs.kind().to_string(), rank: n });
        }
        let a = rs.cartan();
        let root_lat: Vec<Vec<i64>> = (0..rs.num_roots())
            .map(|id| {
                let c = rs.simple_coords(id);
                match lattice {
                    Lattice::Root => c.to_vec(),
                    Lattice::Weight => (0..n).map(|k| (0..n).map(|j| c[j] * a[j][k]).sum()).collect(),
                }
            })
            .collect();
        // Matrices of simple reflections on lattice coordinates; column j is
        // the image of the basis vector b_j.
        let simple_mats: Vec<Vec<Vec<i64>>> = (0..n)
            .map(|i| {
                let mut m = vec![vec![0i64; n]; n];
                for j in 0..n {
                    m[j][j] = 1;
                }
                match lattice {
                    Lattice::Weight => {
                        // s_i(ω_i) = ω_i − α_i, other ω_j fixed.
                        for k in 0..n {
                            m[k][i] -= a[i][k];
                        }
                    }
                    Lattice::Root => {
                        // s_i(α_j) = α_j − ⟨α_j, α_i^∨⟩ α_i.
                        for j in 0..n {
                            m[i][j] -= a[j][i];
                        }
                    }
                }
                m
            })
            .collect();
        let mut elem_lat: Vec<Vec<Vec<i64>>> = Vec::with_capacity(group.order());
        for w in group.elements() {
            let mut m: Vec<Vec<i64>> = (0..n).map(|r| (0..n).map(|c| (r == c) as i64).collect()).collect();
            for &i in group.word(w) {
                m = mat_mul_i(&m, &simple_mats[i as usize]);
            }
            elem_lat.push(m);
        }
        let trunc = match &law {
            Law::Truncated { n, .. } => Some(*n),
            _ => None,
        };
        let mut ctx = Fga {
            basis_images: (0..group.order()).map(|_| OnceLock::new()).collect(),
            group,
            law,
            lattice,
            n,
            trunc,
            root_lat,
            elem_lat,
            root_chern: vec![],
            unit_inv: vec![],
            neg_series: None,
        };
        if trunc.is_some() {
            ctx.neg_series = Some(ctx.inverse_series());
        }
        ctx.root_chern = (0..ctx.root_lat.len()).map(|id| ctx.chern_class(&ctx.root_lat[id].clone())).collect();
        let rs = ctx.group.root_system();
        let mut unit_inv = vec![SElement::zero(); rs.num_roots()];
        for b in rs.positive_ids() {
            let u = ctx
                .divide_by_chern(&ctx.root_chern[rs.neg(b)], b)
                .expect("x_{-β} is divisible by x_β");
            let inv = ctx.unit_inverse(&u).expect("x_{-β}/x_β is a unit");
            debug_assert_eq!(&ctx.root_chern[b] * &u, ctx.root_chern[rs.neg(b)]);
            unit_inv[b] = inv;
        }
        ctx.unit_inv = unit_inv;
        Ok(ctx)
    }

    /// Additive law on the weight lattice.
    pub fn additive(group: Arc<WeylGroup>) -> Self {
        Self::new(group, Law::Additive, Lattice::Weight).expect("supported rank")
    }

    /// Multiplicative law on the weight lattice.
    pub fn multiplicative(group: Arc<WeylGroup>) -> Self {
        Self::new(group, Law::Multiplicative, Lattice::Weight).expect("supported rank")
    }

    /// The Weyl group.
    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    /// Shared handle to the Weyl group.
    pub fn group_arc(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    /// The formal group law.
    pub fn law(&self) -> &Law {
        &self.law
    }

    /// The lattice.
    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    /// Number of lattice coordinates.
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// Truncation degree for truncated laws.
    pub fn truncation(&self) -> Option<u32> {
        self.trunc
    }

    /// True for the additive law.
    pub fn is_additive(&self) -> bool {
        self.law == Law::Additive
    }

    /// Variable names used when rendering elements.
    pub fn var_names(&self) -> Vec<String> {
        let p = match (&self.law, self.lattice) {
            (Law::Multiplicative, _) => "e",
            (_, Lattice::Weight) => "w",
            (_, Lattice::Root) => "a",
        };
        (1..=self.n).map(|i| format!("{p}{i}")).collect()
    }

    /// Human readable rendering of an element.
    pub fn render(&self, s: &SElement) -> String {
        s.render(&self.var_names())
    }

    /// Human readable rendering of a localized element.
    pub fn render_q(&self, q: &QElement) -> String {
        if q.den.is_empty() {
            return self.render(&q.num);
        }
        let rs = self.group.root_system();
        let den: Vec<String> = q
            .den
            .iter()
            .map(|(&r, &k)| {
                let base = format!("x({})", rs.root_label(r));
                if k == 1 {
                    base
                } else {
                    format!("{base}^{k}")
                }
            })
            .collect();
        format!("({}) / ({})", self.render(&q.num), den.join("*"))
    }

    /// Lattice coordinates of root `id`.
    pub fn root_coords(&self, id: usize) -> &[i64] {
        &self.root_lat[id]
    }

    /// Integer matrix of `w` acting on lattice coordinates.
    pub fn lattice_matrix(&self, w: WeylElement) -> &[Vec<i64>] {
        &self.elem_lat[w.index()]
    }

    /// Image of a lattice vector under `w`.
    pub fn act_lattice(&self, w: WeylElement, v: &[i64]) -> Vec<i64> {
        mat_vec_i(&self.elem_lat[w.index()], v)
    }

    fn tag(&self, s: SElement) -> SElement {
        s.with_trunc(self.trunc)
    }

    /// The constant `c`.
    pub fn constant(&self, c: Rational) -> SElement {
        self.tag(SElement::constant(c))
    }

    /// One.
    pub fn one(&self) -> SElement {
        self.tag(SElement::one())
    }

    /// Zero.
    pub fn zero(&self) -> SElement {
        self.tag(SElement::zero())
    }

    /// The coordinate variable `t_k` (only for polynomial laws).
    fn var(&self, k: usize) -> SElement {
        let mut e = vec![0i64; self.n];
        e[k] = 1;
        self.tag(SElement::term(Mono::new(&e, 0), Rational::from_int(1)))
    }

    fn beta_pow(&self, k: i64) -> SElement {
        SElement::term(Mono::new(&[], k), Rational::from_int(1))
    }

    /// The character `e^λ` (multiplicative law).
    pub fn character(&self, lambda: &[i64]) -> SElement {
        SElement::term(Mono::new(lambda, 0), Rational::from_int(1))
    }

    /// The first Chern class `x_λ` of a lattice vector.
    pub fn chern_class(&self, lambda: &[i64]) -> SElement {
        match &self.law {
            Law::Additive => {
                let mut acc = SElement::zero();
                for (k, &c) in lambda.iter().enumerate() {
                    if c != 0 {
                        acc = &acc + &self.var(k).scale(&Rational::from_int(c));
                    }
                }
                acc
            }
            Law::Multiplicative => {
                let neg: Vec<i64> = lambda.iter().map(|x| -x).collect();
                let one = SElement::term(Mono::new(&[], -1), Rational::from_int(1));
                let e = SElement::term(Mono::new(&neg, -1), Rational::from_int(-1));
                &one + &e
            }
            Law::Truncated { .. } => {
                let mut acc = self.zero();
                for (k, &c) in lambda.iter().enumerate() {
                    if c != 0 {
                        let m = self.formal_multiple(c, &self.var(k));
                        acc = self.formal_sum_raw(&acc, &m);
                    }
                }
                acc
            }
        }
    }

    /// Chern class `x_α` of root `id` (precomputed).
    pub fn x_root(&self, id: usize) -> &SElement {
        &self.root_chern[id]
    }

    /// `[m]_F(x)`, the `m`-fold formal sum.
    fn formal_multiple(&self, m: i64, x: &SElement) -> SElement {
        let mut acc = self.zero();
        for _ in 0..m.abs() {
            acc = self.formal_sum_raw(&acc, x);
        }
        if m < 0 {
            self.apply_inverse_series(&acc)
        } else {
            acc
        }
    }

    fn formal_sum_raw(&self, x: &SElement, y: &SElement) -> SElement {
        match &self.law {
            Law::Additive => x + y,
            Law::Multiplicative => &(x + y) - &(&self.beta_pow(1) * &(x * y)),
            Law::Truncated { coeffs, n } => {
                let mut acc = x + y;
                let mut xp: Vec<SElement> = vec![self.one()];
                let mut yp: Vec<SElement> = vec![self.one()];
                for _ in 0..*n {
                    xp.push(&xp[xp.len() - 1] * x);
                    yp.push(&yp[yp.len() - 1] * y);
                }
                for (&(i, j), a) in coeffs {
                    if i as usize >= xp.len() || j as usize >= yp.len() {
                        continue;
                    }
                    acc = &acc + &(&xp[i as usize] * &yp[j as usize]).scale(a);
                }
                acc
            }
        }
    }

    /// Formal sum `x +_F y`.
    pub fn formal_sum(&self, x: &SElement, y: &SElement) -> Result<SElement> {
        if let Some(n) = self.trunc {
            for s in [x, y] {
                if s.max_degree().is_some_and(|d| d > n as i64) {
                    return Err(Error::TruncationExceeded(n));
                }
            }
        }
        Ok(self.formal_sum_raw(x, y))
    }

    /// Formal inverse `−_F x`.
    pub fn formal_neg(&self, x: &SElement) -> Result<SElement> {
        match &self.law {
            Law::Additive => Ok(-x),
            Law::Multiplicative => {
                // −_F x = x / (βx − 1), defined when βx − 1 is a unit.
                let d = &(&self.beta_pow(1) * x) - &SElement::one();
                let inv = self.unit_inverse(&d).ok_or_else(|| {
                    Error::Parse("βx − 1 is not invertible in the group ring".into())
                })?;
                Ok(x * &inv)
            }
            Law::Truncated { n, .. } => {
                if x.max_degree().is_some_and(|d| d > *n as i64) {
                    return Err(Error::TruncationExceeded(*n));
                }
                Ok(self.apply_inverse_series(x))
            }
        }
    }

    /// One-variable series `ι(z)` with `F(z, ι(z)) = 0`, in the variable `t_1`.
    fn inverse_series(&self) -> SElement {
        let n = self.trunc.unwrap_or(DEFAULT_TRUNCATION);
        let z = self.var(0);
        let mut iota = -&z;
        for _ in 0..n {
            let f = self.formal_sum_raw(&z, &iota);
            iota = &iota - &f;
        }
        iota
    }

    fn apply_inverse_series(&self, x: &SElement) -> SElement {
        match &self.neg_series {
            Some(series) => self.substitute_one(series, x),
            None => -x,
        }
    }

    /// Substitutes `x` for `t_1` in a series in `t_1` alone.
    fn substitute_one(&self, series: &SElement, x: &SElement) -> SElement {
        let mut acc = self.zero();
        let mut pw = self.one();
        let mut k = 0i16;
        for (m, c) in series.terms() {
            while k < m.e[0] {
                pw = &pw * x;
                k += 1;
            }
            acc = &acc + &pw.scale(c);
        }
        acc
    }

    /// Inverse of a unit of S, when recognizable: a single invertible term, or
    /// a power series with nonzero constant term for truncated laws.
    pub fn unit_inverse(&self, u: &SElement) -> Option<SElement> {
        if u.len() == 1 {
            let (m, c) = &u.terms()[0];
            let laurent = self.law == Law::Multiplicative;
            if m.degree() == 0 && m.e.iter().all(|&x| x == 0) || laurent {
                let mut inv = *m;
                for x in inv.e.iter_mut() {
                    *x = -*x;
                }
                inv.beta = -inv.beta;
                return Some(self.tag(SElement::term(inv, c.recip())));
            }
        }
        let n = self.trunc?;
        let c0 = u.coeff(&Mono::ONE);
        if c0.is_zero() {
            return None;
        }
        let mut v = self.constant(c0.recip());
        let two = self.constant(Rational::from_int(2));
        for _ in 0..=n {
            v = &v * &(&two - &(u * &v));
        }
        Some(v)
    }

    fn images(&self, w: WeylElement) -> &Vec<SElement> {
        self.basis_images[w.index()].get_or_init(|| {
            let m = &self.elem_lat[w.index()];
            (0..self.n)
                .map(|j| {
                    let col: Vec<i64> = (0..self.n).map(|k| m[k][j]).collect();
                    self.chern_class(&col)
                })
                .collect()
        })
    }

    /// Ring automorphism of S induced by `λ ↦ w(λ)`.
    pub fn weyl_act(&self, w: WeylElement, s: &SElement) -> SElement {
        if w == WeylElement::IDENTITY || s.is_zero() {
            return s.clone();
        }
        match &self.law {
            Law::Multiplicative => {
                let m = &self.elem_lat[w.index()];
                let terms = s
                    .terms()
                    .iter()
                    .map(|(mono, c)| {
                        let e: Vec<i64> = mono.e[..self.n].iter().map(|&x| x as i64).collect();
                        (Mono::new(&mat_vec_i(m, &e), mono.beta as i64), c.clone())
                    })
                    .collect();
                SElement::from_terms(terms, None)
            }
            _ => {
                let imgs = self.images(w);
                let maxdeg: Vec<usize> = (0..self.n)
                    .map(|k| s.terms().iter().map(|(m, _)| m.e[k] as usize).max().unwrap_or(0))
                    .collect();
                let powers: Vec<Vec<SElement>> = (0..self.n)
                    .map(|k| {
                        let mut v = vec![self.one()];
                        for _ in 0..maxdeg[k] {
                            let next = &v[v.len() - 1] * &imgs[k];
                            v.push(next);
                        }
                        v
                    })
                    .collect();
                let mut acc = self.zero();
                for (mono, c) in s.terms() {
                    let mut t = self.constant(c.clone());
                    for k in 0..self.n {
                        if mono.e[k] > 0 {
                            t = &t * &powers[k][mono.e[k] as usize];
                        }
                    }
                    acc = &acc + &t;
                }
                acc
            }
        }
    }

    /// True if `s` is fixed by every simple reflection in `theta`.
    pub fn is_invariant(&self, s: &SElement, theta: SimpleSubset) -> bool {
        theta
            .iter()
            .all(|i| &self.weyl_act(self.group.simple_reflection(i), s) == s)
    }

    /// Quotient `s / x_α` if `x_α` divides `s` in S, for any root `α`.
    pub fn divide_by_chern(&self, s: &SElement, alpha: usize) -> Option<SElement> {
        if s.is_zero() {
            return Some(s.clone());
        }
        match &self.law {
            Law::Additive => divide_linear(s, &self.root_chern[alpha], self.n),
            Law::Multiplicative => {
                let a = &self.root_lat[alpha];
                let q = divide_one_minus_char(s, a, self.n)?;
                Some(&q * &self.beta_pow(1))
            }
            Law::Truncated { n, .. } => self.divide_series(s, &self.root_chern[alpha], *n),
        }
    }

    /// True if `x_α` divides `s`.
    pub fn divisible(&self, s: &SElement, alpha: usize) -> bool {
        self.divide_by_chern(s, alpha).is_some()
    }

    fn divide_series(&self, f: &SElement, x: &SElement, n: u32) -> Option<SElement> {
        if !f.coeff(&Mono::ONE).is_zero() {
            return None;
        }
        let lin = x.homogeneous(1).with_trunc(None);
        let mut q = self.zero();
        let mut qparts: Vec<SElement> = Vec::new();
        for d in 1..=n as i64 {
            // f_d = ℓ q_{d−1} + Σ_{k≥2} x_k q_{d−k}.
            let mut rem = f.homogeneous(d).with_trunc(None);
            for k in 2..=d {
                let xk = x.homogeneous(k).with_trunc(None);
                if let Some(qp) = qparts.get((d - k) as usize) {
                    rem = &rem - &(&xk * qp);
                }
            }
            let qd = divide_linear(&rem, &lin, self.n)?;
            q = &q + &qd;
            qparts.push(qd);
        }
        Some(self.tag(q))
    }

    /// Random element: a random polynomial with small integer coefficients in
    /// the Chern classes of the lattice basis, of degree at most `max_deg`.
    pub fn random_element<R: Rng>(&self, rng: &mut R, max_deg: u32, nterms: usize) -> SElement {
        let gens: Vec<SElement> = (0..self.n)
            .map(|k| {
                let mut e = vec![0i64; self.n];
                e[k] = 1;
                self.chern_class(&e)
            })
            .collect();
        let mut acc = self.zero();
        for _ in 0..nterms {
            let deg = rng.gen_range(0..=max_deg);
            let mut t = self.constant(Rational::from_int(rng.gen_range(-3..=3)));
            for _ in 0..deg {
                t = &t * &gens[rng.gen_range(0..self.n)];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Sum over a parabolic subgroup of the images of `s`; invariant under it.
    pub fn symmetrize(&self, s: &SElement, theta: SimpleSubset) -> SElement {
        let mut acc = self.zero();
        for w in self.group.parabolic_elements(theta) {
            acc = &acc + &self.weyl_act(w, s);
        }
        acc
    }

    // ---------------------------------------------------------------
    // Localized elements
    // ---------------------------------------------------------------

    /// `1 / x_α` for any root α.
    pub fn inv_chern(&self, alpha: usize) -> QElement {
        let rs = self.group.root_system();
        let p = rs.positive_of(alpha);
        let num = if p == alpha { self.one() } else { self.unit_inv[p].clone() };
        let mut den = BTreeMap::new();
        den.insert(p, 1);
        QElement { num, den }
    }

    /// Multiplies out the denominator factors of `q` beyond `target` so that
    /// the result has denominator exactly `target` (which must dominate).
    fn lift_numerator(&self, q: &QElement, target: &BTreeMap<usize, u32>) -> SElement {
        let mut num = q.num.clone();
        for (&r, &k) in target {
            let have = q.den.get(&r).copied().unwrap_or(0);
            for _ in have..k {
                num = &num * &self.root_chern[r];
            }
        }
        num
    }

    fn common_den(a: &QElement, b: &QElement) -> BTreeMap<usize, u32> {
        let mut d = a.den.clone();
        for (&r, &k) in &b.den {
            let e = d.entry(r).or_insert(0);
            *e = (*e).max(k);
        }
        d
    }

    /// Cancels denominator factors dividing the numerator, greedily.
    pub fn q_reduce(&self, q: &QElement) -> QElement {
        if q.num.is_zero() {
            return QElement::from_s(self.zero());
        }
        let mut num = q.num.clone();
        let mut den = BTreeMap::new();
        for (&r, &k) in &q.den {
            let mut left = k;
            while left > 0 {
                match self.divide_by_chern(&num, r) {
                    Some(x) => {
                        num = x;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.insert(r, left);
            }
        }
        QElement { num, den }
    }

    /// Sum.
    pub fn q_add(&self, a: &QElement, b: &QElement) -> QElement {
        if a.den == b.den {
            return self.q_reduce(&QElement { num: &a.num + &b.num, den: a.den.clone() });
        }
        let d = Self::common_den(a, b);
        let num = &self.lift_numerator(a, &d) + &self.lift_numerator(b, &d);
        self.q_reduce(&QElement { num, den: d })
    }

    /// Difference.
    pub fn q_sub(&self, a: &QElement, b: &QElement) -> QElement {
        self.q_add(a, &self.q_neg(b))
    }

    /// Negation.
    pub fn q_neg(&self, a: &QElement) -> QElement {
        QElement { num: -&a.num, den: a.den.clone() }
    }

    /// Product.
    pub fn q_mul(&self, a: &QElement, b: &QElement) -> QElement {
        let mut den = a.den.clone();
        for (&r, &k) in &b.den {
            *den.entry(r).or_insert(0) += k;
        }
        self.q_reduce(&QElement { num: &a.num * &b.num, den })
    }

    /// Product with an element of S.
    pub fn q_mul_s(&self, a: &QElement, s: &SElement) -> QElement {
        self.q_reduce(&QElement { num: &a.num * s, den: a.den.clone() })
    }

    /// Equality by cross multiplication.
    pub fn q_eq(&self, a: &QElement, b: &QElement) -> bool {
        let d = Self::common_den(a, b);
        self.lift_numerator(a, &d) == self.lift_numerator(b, &d)
    }

    /// Weyl action on the localization.
    pub fn q_act(&self, w: WeylElement, q: &QElement) -> QElement {
        if w == WeylElement::IDENTITY {
            return q.clone();
        }
        let rs = self.group.root_system();
        let mut num = self.weyl_act(w, &q.num);
        let mut den = BTreeMap::new();
        for (&r, &k) in &q.den {
            let img = self.group.act_root(w, r);
            let p = rs.positive_of(img);
            if p != img {
                for _ in 0..k {
                    num = &num * &self.unit_inv[p];
                }
            }
            *den.entry(p).or_insert(0) += k;
        }
        QElement { num, den }
    }
}

/// Division by a nonzero linear form `ℓ` in the polynomial ring in `n`
/// variables; returns `None` if `ℓ` does not divide `f`.
pub fn divide_linear(f: &SElement, l: &SElement, n: usize) -> Option<SElement> {
    if f.is_zero() {
        return Some(f.clone());
    }
    // Pivot on the last variable occurring in ℓ: ℓ = c·t_j + r.
    let j = (0..n).rev().find(|&k| l.terms().iter().any(|(m, _)| m.e[k] != 0))?;
    let mut c = Rational::from_int(0);
    let mut r_terms = Vec::new();
    for (m, x) in l.terms() {
        if m.e[j] == 1 {
            c = x.clone();
        } else {
            r_terms.push((*m, x.clone()));
        }
    }
    let r = SElement::from_terms(r_terms, None);
    let cinv = c.recip();
    // Split f by the exponent of t_j.
    let mut parts: BTreeMap<i16, Vec<(Mono, Rational)>> = BTreeMap::new();
    for (m, x) in f.terms() {
        let mut mm = *m;
        let d = mm.e[j];
        mm.e[j] = 0;
        parts.entry(d).or_default().push((mm, x.clone()));
    }
    let top = *parts.keys().next_back().unwrap();
    let mut fparts: Vec<SElement> = (0..=top)
        .map(|d| SElement::from_terms(parts.remove(&d).unwrap_or_default(), None))
        .collect();
    let mut q_terms: Vec<(Mono, Rational)> = Vec::new();
    // f_d = c·q_{d−1} + r·q_d, solved from the top degree down.
    for d in (1..=top as usize).rev() {
        let qd1 = fparts[d].scale(&cinv);
        if !qd1.is_zero() {
            let sub = &r * &qd1;
            fparts[d - 1] = &fparts[d - 1] - &sub;
            for (m, x) in qd1.terms() {
                let mut mm = *m;
                mm.e[j] = (d - 1) as i16;
                q_terms.push((mm, x.clone()));
            }
        }
    }
    if !fparts[0].is_zero() {
        return None;
    }
    Some(SElement::from_terms(q_terms, f.trunc()))
}

/// Division by `1 − e^{−a}` in the group ring of `Z^n` with `Q[β^±]`
/// coefficients; returns `None` if it does not divide.
pub fn divide_one_minus_char(f: &SElement, a: &[i64], n: usize) -> Option<SElement> {
    let i = a.iter().position(|&x| x != 0)?;
    // Group terms by (coset of the exponent modulo Z·a, β exponent); within a
    // coset, e^λ = e^{rep}·y^m with y = e^{−a}.
    let mut groups: BTreeMap<(Vec<i64>, i16), BTreeMap<i64, Rational>> = BTreeMap::new();
    for (mono, c) in f.terms() {
        let lam: Vec<i64> = mono.e[..n].iter().map(|&x| x as i64).collect();
        let m = if a[i] > 0 { -(lam[i].div_euclid(a[i])) } else { lam[i].div_euclid(-a[i]) };
        let rep: Vec<i64> = lam.iter().zip(a).map(|(l, x)| l + m * x).collect();
        let g = groups.entry((rep, mono.beta)).or_default();
        let e = g.entry(m).or_insert_with(|| Rational::from_int(0));
        *e += c;
    }
    let mut out = Vec::new();
    for ((rep, beta), coeffs) in groups {
        // g(y)/(1 − y) has coefficients given by prefix sums; divisibility
        // means the total sum vanishes.
        let mut acc = Rational::from_int(0);
        let mut last = None;
        for (&m, c) in &coeffs {
            if let Some(prev) = last {
                for k in prev..m {
                    if !acc.is_zero() {
                        let e: Vec<i64> = rep.iter().zip(a).map(|(r, x)| r - k * x).collect();
                        out.push((Mono::new(&e, beta as i64), acc.clone()));
                    }
                }
            }
            acc += c;
            last = Some(m);
        }
        if !acc.is_zero() {
            return None;
        }
    }
    Some(SElement::from_terms(out, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{Kind, RootSystem};

    fn ctx(kind: Kind, rank: usize, law: Law) -> Fga {
        let g = Arc::new(WeylGroup::new(RootSystem::new(kind, rank).unwrap()).unwrap());
        Fga::new(g, law, Lattice::Weight).unwrap()
    }

    #[test]
    fn additive_examples() {
        let c = ctx(Kind::A, 2, Law::Additive);
        let rs = c.group().root_system();
        let a1 = rs.simple(0);
        let a2 = rs.simple(1);
        let a12 = rs.find_by_simple_coords(&[1, 1]).unwrap();
        assert!(c.chern_class(&[0, 0]).is_zero());
        assert_eq!(c.x_root(a12), &(c.x_root(a1) + c.x_root(a2)));
        let s1 = c.group().simple_reflection(0);
        assert_eq!(c.weyl_act(s1, c.x_root(a1)), -c.x_root(a1));
        assert_eq!(c.weyl_act(s1, c.x_root(a2)), c.x_root(a12).clone());
        let p = c.x_root(a2) * c.x_root(a12);
        assert_eq!(c.weyl_act(s1, &p), p);
        assert_eq!(c.divide_by_chern(&p, a2).unwrap(), c.x_root(a12).clone());
        assert!(c.divide_by_chern(c.x_root(a1), a2).is_none());
        assert!(c.is_invariant(&p, SimpleSubset::from_one_based(&[1])));
        assert!(!c.is_invariant(c.x_root(a1), SimpleSubset::from_one_based(&[1])));
    }

    #[test]
    fn multiplicative_examples() {
        let c = ctx(Kind::A, 1, Law::Multiplicative);
        // x_ω = β⁻¹(1 − t⁻¹).
        let x = c.chern_class(&[1]);
        let expect = &SElement::term(Mono::new(&[0], -1), Rational::from_int(1))
            - &SElement::term(Mono::new(&[-1], -1), Rational::from_int(1));
        assert_eq!(x, expect);
        let a = c.group().root_system().simple(0);
        assert_eq!(c.divide_by_chern(c.x_root(a), a).unwrap(), c.one());
        // Formal inverse matches x_{−ω}.
        assert_eq!(c.formal_neg(&x).unwrap(), c.chern_class(&[-1]));
        // x + y − βxy on Chern classes.
        assert_eq!(c.formal_sum(&x, &x).unwrap(), c.chern_class(&[2]));
    }

    #[test]
    fn truncated_law_matches_multiplicative_shape() {
        let c = ctx(Kind::A, 1, Law::truncated_multiplicative(Rational::from_int(1), 6));
        let x = c.chern_class(&[1]);
        let nx = c.formal_neg(&x).unwrap();
        assert!(c.formal_sum(&x, &nx).unwrap().is_zero());
        // x/(x − 1) = −x − x² − … for β = 1.
        for d in 1..=6 {
            let mut e = [0i64; 1];
            e[0] = d;
            assert_eq!(nx.coeff(&Mono::new(&e, 0)), Rational::from_int(-1));
        }
    }
}
