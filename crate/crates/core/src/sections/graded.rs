//! Graded linear algebra for modules of sections under the additive law.
//!
//! A module is described by vertex invariance subsets and linear conditions
//! `t_x − w(t_y) ∈ x_α S`. In each degree the homogeneous solutions form a
//! finite-dimensional space `V_d`; the generators in degree `d` complement the
//! span of `R_k · V_{d−k}` (`k ≥ 1`) in `V_d`, where `R = S^{W_R}` is the
//! coefficient ring of the module.

use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fga::poly::Mono;
use crate::fga::{Fga, SElement};
use crate::linalg::Echelon;
use crate::rational::Rational;
use crate::root_system::SimpleSubset;
use crate::weyl::WeylElement;

use super::{Sheaf, SectionTuple};

/// A condition `t_x − w(t_y) ∈ x_α S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearCondition {
    /// Position of `x`.
    pub x: usize,
    /// Position of `y`.
    pub y: usize,
    /// Twist applied to `t_y`.
    pub twist: WeylElement,
    /// Positive root id α.
    pub alpha: usize,
}

/// A graded module of tuples cut out by invariance and divisibility.
#[derive(Debug, Clone)]
pub struct GradedProblem {
    /// Left parabolic subset of the tuples produced.
    pub theta_q: SimpleSubset,
    /// Right parabolic subset of the tuples produced.
    pub theta_p: SimpleSubset,
    /// Invariance subset per position.
    pub vertex_theta: Vec<SimpleSubset>,
    /// Divisibility conditions.
    pub conditions: Vec<LinearCondition>,
    /// The coefficient ring is `S^{W_ring}`.
    pub ring: SimpleSubset,
}

/// Generators and ranks of a graded module up to a maximal degree.
#[derive(Debug, Clone)]
pub struct GradedBasis {
    /// Maximal degree computed.
    pub max_degree: u32,
    /// Dimension of the homogeneous solutions in each degree.
    pub dims: Vec<usize>,
    /// Number of new generators in each degree.
    pub ranks: Vec<usize>,
    /// Generators in each degree.
    pub generators: Vec<Vec<SectionTuple>>,
}

impl GradedBasis {
    /// Total number of generators found.
    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }
}

/// Exponent vectors of all monomials of degree `d` in `n` variables, in a
/// fixed order.
pub fn monomials(n: usize, d: u32) -> Vec<Mono> {
    fn rec(n: usize, k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Mono>) {
        if k + 1 == n {
            cur.push(left);
            out.push(Mono::new(cur, 0));
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(n, k + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Mono::ONE);
        }
        return out;
    }
    rec(n, 0, d as i64, &mut Vec::new(), &mut out);
    out
}

/// Homogeneous degree-`d` machinery shared by one solve.
struct Degree {
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl Degree {
    fn new(n: usize, d: u32) -> Self {
        let monos = monomials(n, d);
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Degree { monos, index }
    }

    fn len(&self) -> usize {
        self.monos.len()
    }

    fn to_vec(&self, s: &SElement) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.len()];
        for (m, c) in s.terms() {
            let i = *self.index.get(m).expect("homogeneous of the expected degree");
            v[i] = c.clone();
        }
        v
    }

    fn to_element(&self, v: &[Rational]) -> SElement {
        let terms = self
            .monos
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        SElement::from_terms(terms, None)
    }
}

struct Solver<'a> {
    fga: &'a Fga,
    linear: Vec<SElement>,
}

impl<'a> Solver<'a> {
    fn new(fga: &'a Fga) -> Result<Self> {
        if !fga.is_additive() {
            return Err(Error::UnsupportedLaw);
        }
        let n = fga.nvars();
        let linear = (0..n)
            .map(|k| {
                let mut e = vec![0i64; n];
                e[k] = 1;
                SElement::term(Mono::new(&e, 0), Rational::from_int(1))
            })
            .collect();
        Ok(Solver { fga, linear })
    }

    fn mono_element(&self, m: &Mono) -> SElement {
        SElement::term(*m, Rational::from_int(1))
    }

    /// Images of the degree-`d` monomials under restriction to `ℓ = 0`.
    fn restriction(&self, deg: &Degree, l: &SElement) -> Vec<Vec<Rational>> {
        let n = self.fga.nvars();
        let coeffs: Vec<Rational> = (0..n).map(|k| l.coeff(&self.linear[k].terms()[0].0)).collect();
        let j = (0..n).rev().find(|&k| !coeffs[k].is_zero()).expect("nonzero linear form");
        // x_j = −(1/ℓ_j) Σ_{k≠j} ℓ_k x_k.
        let inv = -coeffs[j].recip();
        let mut sub = SElement::zero();
        for k in (0..n).filter(|&k| k != j) {
            sub = &sub + &self.linear[k].scale(&(&coeffs[k] * &inv));
        }
        let vars: Vec<SElement> =
            (0..n).map(|k| if k == j { sub.clone() } else { self.linear[k].clone() }).collect();
        deg.monos
            .iter()
            .map(|m| {
                let mut img = SElement::one();
                for (k, var) in vars.iter().enumerate() {
                    if m.e[k] > 0 {
                        img = &img * &var.pow(m.e[k] as u32);
                    }
                }
                deg.to_vec(&img)
            })
            .collect()
    }

    fn action(&self, deg: &Degree, w: WeylElement) -> Vec<Vec<Rational>> {
        deg.monos.iter().map(|m| deg.to_vec(&self.fga.weyl_act(w, &self.mono_element(m)))).collect()
    }

    /// Basis of the homogeneous degree-`d` solutions, as flat vectors.
    fn solve_degree(&self, p: &GradedProblem, d: u32) -> (Degree, Vec<Vec<Rational>>) {
        let deg = Degree::new(self.fga.nvars(), d);
        let m = deg.len();
        let nv = p.vertex_theta.len();
        let ncols = m * nv;
        let mut rows = Echelon::new(ncols);
        let g = self.fga.group();
        let mut actions: HashMap<WeylElement, Vec<Vec<Rational>>> = HashMap::new();
        let mut act = |w: WeylElement| actions.entry(w).or_insert_with(|| self.action(&deg, w)).clone();
        for (u, theta) in p.vertex_theta.iter().enumerate() {
            for i in theta.iter() {
                let a = act(g.simple_reflection(i));
                for out in 0..m {
                    let mut row = vec![Rational::zero(); ncols];
                    for col in 0..m {
                        let mut c = a[col][out].clone();
                        if col == out {
                            c -= &Rational::from_int(1);
                        }
                        row[u * m + col] = c;
                    }
                    rows.insert(&row);
                }
            }
        }
        let mut restrictions: HashMap<usize, Vec<Vec<Rational>>> = HashMap::new();
        for c in &p.conditions {
            let res = restrictions
                .entry(c.alpha)
                .or_insert_with(|| self.restriction(&deg, self.fga.x_root(c.alpha)))
                .clone();
            let tw = act(c.twist);
            for out in 0..m {
                let mut row = vec![Rational::zero(); ncols];
                for col in 0..m {
                    row[c.x * m + col] += &res[col][out];
                }
                // Restriction of w(t_y): column `col` of t_y maps to Σ_k tw[col][k] res[k][out].
                for col in 0..m {
                    let mut acc = Rational::zero();
                    for k in 0..m {
                        if !tw[col][k].is_zero() && !res[k][out].is_zero() {
                            acc += &(&tw[col][k] * &res[k][out]);
                        }
                    }
                    row[c.y * m + col] -= &acc;
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.insert(&row);
                }
            }
        }
        (deg, rows.null_space())
    }

    fn to_tuple(&self, p: &GradedProblem, deg: &Degree, v: &[Rational]) -> SectionTuple {
        let m = deg.len();
        let values = (0..p.vertex_theta.len()).map(|u| deg.to_element(&v[u * m..(u + 1) * m])).collect();
        SectionTuple::new(p.theta_q, p.theta_p, values)
    }

    fn ring_basis(&self, ring: SimpleSubset, k: u32) -> Vec<SElement> {
        let p = GradedProblem {
            theta_q: SimpleSubset::empty(),
            theta_p: SimpleSubset::empty(),
            vertex_theta: vec![ring],
            conditions: vec![],
            ring,
        };
        let (deg, sols) = self.solve_degree(&p, k);
        sols.iter().map(|v| deg.to_element(v)).collect()
    }

    fn flatten(&self, deg: &Degree, t: &SectionTuple) -> Vec<Rational> {
        t.values.iter().flat_map(|v| deg.to_vec(v)).collect()
    }
}

/// Solves a graded problem up to `max_deg`, returning dimensions and generators.
pub fn solve(fga: &Fga, p: &GradedProblem, max_deg: u32) -> Result<GradedBasis> {
    let solver = Solver::new(fga)?;
    let mut spaces: Vec<Vec<SectionTuple>> = Vec::new();
    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    let mut generators = Vec::new();
    for d in 0..=max_deg {
        let (deg, sols) = solver.solve_degree(p, d);
        let basis: Vec<SectionTuple> = sols.iter().map(|v| solver.to_tuple(p, &deg, v)).collect();
        let mut span = Echelon::new(deg.len() * p.vertex_theta.len());
        for k in 1..=d {
            let lower = &spaces[(d - k) as usize];
            if lower.is_empty() {
                continue;
            }
            for r in solver.ring_basis(p.ring, k) {
                for t in lower {
                    span.insert(&solver.flatten(&deg, &t.scale(&r)));
                }
            }
        }
        let mut gens = Vec::new();
        for t in &basis {
            if span.insert(&solver.flatten(&deg, t)) {
                gens.push(t.clone());
            }
        }
        dims.push(basis.len());
        ranks.push(gens.len());
        generators.push(gens);
        spaces.push(basis);
    }
    Ok(GradedBasis { max_degree: max_deg, dims, ranks, generators })
}

/// Whether the `R`-multiples of homogeneous `tuples` span the solution space
/// of `p` in every degree up to `max_deg`.
pub fn spans(fga: &Fga, p: &GradedProblem, tuples: &[SectionTuple], max_deg: u32) -> Result<bool> {
    let solver = Solver::new(fga)?;
    for d in 0..=max_deg {
        let (deg, sols) = solver.solve_degree(p, d);
        let mut span = Echelon::new(deg.len() * p.vertex_theta.len());
        for t in tuples {
            let td = t.values.iter().filter_map(|v| v.max_degree()).max().unwrap_or(0);
            if td as u32 > d {
                continue;
            }
            for r in solver.ring_basis(p.ring, d - td as u32) {
                span.insert(&solver.flatten(&deg, &t.scale(&r)));
            }
        }
        let mut all = span.clone();
        for v in &sols {
            all.insert(v);
        }
        if all.rank() != span.rank() || span.rank() != sols.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The graded problem of the global sections of a structure sheaf, as a
/// module over `S^{W_Q}`.
pub fn sheaf_problem(sh: &Sheaf) -> GradedProblem {
    GradedProblem {
        theta_q: sh.graph.theta_q,
        theta_p: sh.graph.theta_p,
        vertex_theta: sh.vertex_theta.clone(),
        conditions: sh
            .edges
            .iter()
            .map(|e| LinearCondition { x: e.src, y: e.dst, twist: e.twist, alpha: e.label })
            .collect(),
        ring: sh.graph.theta_q,
    }
}

/// The graded problem of `^QA^P` with the full set of conditions, as a module
/// over `S^{W_ring}`.
pub fn qap_problem(fga: &Fga, theta_q: SimpleSubset, theta_p: SimpleSubset, ring: SimpleSubset) -> GradedProblem {
    let g = fga.group();
    let table = g.double_coset_table(theta_q, theta_p);
    let mut conditions = std::collections::BTreeSet::new();
    for (j, &u2) in table.reps.iter().enumerate() {
        for w in g.parabolic_elements(theta_q) {
            let wu2 = g.mul(w, u2);
            for a in g.root_system().positive_ids() {
                let x = g.project_min(g.mul(g.reflection(a), wu2), theta_p);
                if let Some(i) = table.position(x) {
                    conditions.insert((i, j, w, a));
                }
            }
        }
    }
    GradedProblem {
        theta_q,
        theta_p,
        vertex_theta: table.data.iter().map(|d| d.theta_u).collect(),
        conditions: conditions
            .into_iter()
            .map(|(x, y, twist, alpha)| LinearCondition { x, y, twist, alpha })
            .collect(),
        ring,
    }
}

/// Graded generators of the global sections of a structure sheaf.
pub fn gamma_basis_graded(fga: &Fga, sh: &Sheaf, max_deg: u32) -> Result<GradedBasis> {
    solve(fga, &sheaf_problem(sh), max_deg)
}
