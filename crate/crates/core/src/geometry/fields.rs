//! Polynomial fields on the ambient space and composite spinor fields built
//! from them by Clifford multiplication, covariant and Lie derivatives.
//!
//! Composite fields are evaluated over [`Jet`]s so that every derivative they
//! need is exact.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::jet::{fresh_index, Jet};
use super::{mu_apply, rho_at};
use crate::clifford::CliffordAlgebra;
use crate::error::{ensure_dim, Result};
use crate::exact::{Field, SparseMatrix};
use crate::Rational;

/// Exponent vector of a monomial in the ambient coordinates.
pub type Monomial = Vec<u32>;

fn monomial_value<T: Field>(m: &[u32], x: &[T]) -> T {
    m.iter().zip(x).fold(T::one(), |acc, (&e, xi)| {
        (0..e).fold(acc, |a, _| a * xi.clone())
    })
}

/// `∂/∂x_var` of a monomial: `(coefficient, monomial)` or `None` if it vanishes.
fn monomial_partial(m: &[u32], var: usize) -> Option<(u32, Monomial)> {
    if m[var] == 0 {
        return None;
    }
    let mut d = m.to_vec();
    d[var] -= 1;
    Some((m[var], d))
}

fn unit_monomial(nvars: usize, var: Option<usize>) -> Monomial {
    let mut m = vec![0; nvars];
    if let Some(v) = var {
        m[v] = 1;
    }
    m
}

/// A scalar polynomial with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl ScalarPoly {
    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(unit_monomial(nvars, None), c);
        }
        Self { nvars, terms }
    }

    /// `c + Σ l_i x_i`.
    pub fn affine(c: Rational, linear: &[Rational]) -> Self {
        let nvars = linear.len();
        let mut p = Self::constant(nvars, c);
        for (i, l) in linear.iter().enumerate() {
            if !l.is_zero() {
                p.terms.insert(unit_monomial(nvars, Some(i)), l.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn eval<T: Field + From<Rational>>(&self, x: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            acc + T::from(c.clone()) * monomial_value(m, x)
        })
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            if let Some((e, d)) = monomial_partial(m, var) {
                *terms.entry(d).or_insert_with(Rational::zero) += c * Rational::from_integer(e.into());
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self {
            nvars: self.nvars,
            terms,
        }
    }

    /// `Σ_i v_i ∂_i p (x)`.
    pub fn directional_derivative<T: Field + From<Rational>>(&self, x: &[T], v: &[T]) -> T {
        (0..self.nvars).fold(T::zero(), |acc, i| {
            if v[i].is_zero() {
                acc
            } else {
                acc + v[i].clone() * self.partial(i).eval(x)
            }
        })
    }
}

/// A spinor-valued polynomial `x ↦ Σ_m x^m ψ_m` on the ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySpinorField {
    nvars: usize,
    dim: usize,
    terms: BTreeMap<Monomial, Vec<Rational>>,
}

impl PolySpinorField {
    pub fn constant(nvars: usize, psi: Vec<Rational>) -> Self {
        let dim = psi.len();
        let mut terms = BTreeMap::new();
        terms.insert(unit_monomial(nvars, None), psi);
        Self { nvars, dim, terms }
    }

    /// `ψ₀ + Σ_i x_i ψ_i`.
    pub fn affine(psi0: Vec<Rational>, linear: Vec<Vec<Rational>>) -> Result<Self> {
        let nvars = linear.len();
        let mut f = Self::constant(nvars, psi0);
        for (i, psi) in linear.into_iter().enumerate() {
            ensure_dim(f.dim, psi.len())?;
            f.terms.insert(unit_monomial(nvars, Some(i)), psi);
        }
        Ok(f)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval<T: Field + From<Rational>>(&self, x: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for (m, psi) in &self.terms {
            let w = monomial_value(m, x);
            for (o, p) in out.iter_mut().zip(psi) {
                if !p.is_zero() {
                    *o = o.clone() + w.clone() * T::from(p.clone());
                }
            }
        }
        out
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut terms: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (m, psi) in &self.terms {
            if let Some((e, d)) = monomial_partial(m, var) {
                let e = Rational::from_integer(e.into());
                let acc = terms
                    .entry(d)
                    .or_insert_with(|| vec![Rational::zero(); self.dim]);
                for (a, p) in acc.iter_mut().zip(psi) {
                    *a += p * &e;
                }
            }
        }
        Self {
            nvars: self.nvars,
            dim: self.dim,
            terms,
        }
    }

    /// Exact `∂_v` of the polynomial at `x`.
    pub fn directional_derivative<T: Field + From<Rational>>(&self, x: &[T], v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for (i, vi) in v.iter().enumerate().take(self.nvars) {
            if vi.is_zero() {
                continue;
            }
            for (o, d) in out.iter_mut().zip(self.partial(i).eval(x)) {
                *o = o.clone() + vi.clone() * d;
            }
        }
        out
    }

    /// The product `f · self`.
    pub fn scaled(&self, f: &ScalarPoly) -> Result<Self> {
        ensure_dim(self.nvars, f.nvars)?;
        let mut terms: BTreeMap<Monomial, Vec<Rational>> = BTreeMap::new();
        for (m1, c) in &f.terms {
            for (m2, psi) in &self.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let acc = terms
                    .entry(m)
                    .or_insert_with(|| vec![Rational::zero(); self.dim]);
                for (a, p) in acc.iter_mut().zip(psi) {
                    *a += c * p;
                }
            }
        }
        Ok(Self {
            nvars: self.nvars,
            dim: self.dim,
            terms,
        })
    }
}

/// Exact directional derivative `D f(x)[v]` of a jet-evaluated map.
pub(crate) fn directional(x: &[Jet], v: &[Jet], f: impl Fn(&[Jet]) -> Vec<Jet>) -> Vec<Jet> {
    let k = fresh_index(x.iter().chain(v));
    let eps = Jet::variable(Rational::zero(), k, Rational::one());
    let shifted: Vec<Jet> = x
        .iter()
        .zip(v)
        .map(|(xi, vi)| xi.clone() + eps.clone() * vi.clone())
        .collect();
    f(&shifted).iter().map(|y| y.derivative(k)).collect()
}

pub(crate) fn project<T: Field>(x: &[T], u: &[T]) -> Vec<T> {
    let xu = crate::exact::dot(x, u);
    u.iter()
        .zip(x)
        .map(|(ui, xi)| ui.clone() - xu.clone() * xi.clone())
        .collect()
}

pub(crate) fn lift(v: &[Rational]) -> Vec<Jet> {
    v.iter().cloned().map(Jet::from).collect()
}

/// A polynomial vector field on the ambient space, tangent to the sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum VectorField {
    /// `x ↦ a x`.
    Linear(SparseMatrix<Rational>),
    /// `x ↦ P_x c = c - ⟨x, c⟩ x`.
    Projected(Vec<Rational>),
    /// The vector-field bracket `[X, Y] = D Y · X - D X · Y`.
    Bracket(Box<VectorField>, Box<VectorField>),
}

impl VectorField {
    pub fn bracket(x: VectorField, y: VectorField) -> Self {
        Self::Bracket(Box::new(x), Box::new(y))
    }

    pub fn eval(&self, x: &[Jet]) -> Vec<Jet> {
        match self {
            Self::Linear(a) => (0..a.nrows())
                .map(|r| {
                    a.row(r).iter().fold(Jet::zero(), |acc, (c, q)| {
                        acc + Jet::from(q.clone()) * x[*c].clone()
                    })
                })
                .collect(),
            Self::Projected(c) => project(x, &lift(c)),
            Self::Bracket(p, q) => {
                let px = p.eval(x);
                let qx = q.eval(x);
                let dq = directional(x, &px, |y| q.eval(y));
                let dp = directional(x, &qx, |y| p.eval(y));
                dq.into_iter().zip(dp).map(|(a, b)| a - b).collect()
            }
        }
    }

    /// `A_X u = -P_x (D X(x)[P_x u])`, i.e. `-∇_{P_x u} X`.
    pub fn a_endomorphism_columns(&self, x: &[Jet]) -> Vec<Vec<Jet>> {
        (0..x.len())
            .map(|k| {
                let mut u = vec![Jet::zero(); x.len()];
                u[k] = Jet::one();
                let pu = project(x, &u);
                let d = directional(x, &pu, |y| self.eval(y));
                project(x, &d).into_iter().map(|c| -c).collect()
            })
            .collect()
    }
}

/// A spinor field on the sphere, given in the trivialization by constant
/// spinors of the Clifford module.
#[derive(Clone, Debug, PartialEq)]
pub enum SpinorField {
    Poly(PolySpinorField),
    /// `f φ`.
    Scaled(ScalarPoly, Box<SpinorField>),
    /// `c(Z) φ = μ(Z(x), x) φ`.
    Clifford(VectorField, Box<SpinorField>),
    /// `∇_Y φ = ∂_Y φ + ½ μ(Y, x) φ`.
    Covariant(VectorField, Box<SpinorField>),
    /// `L_X φ = ∇_X φ + ρ(A_X) φ`.
    Lie(VectorField, Box<SpinorField>),
    Sum(Vec<(Rational, SpinorField)>),
}

impl SpinorField {
    pub fn constant(nvars: usize, psi: Vec<Rational>) -> Self {
        Self::Poly(PolySpinorField::constant(nvars, psi))
    }

    pub fn scaled(self, f: ScalarPoly) -> Self {
        Self::Scaled(f, Box::new(self))
    }

    pub fn clifford(self, z: VectorField) -> Self {
        Self::Clifford(z, Box::new(self))
    }

    pub fn covariant(self, y: VectorField) -> Self {
        Self::Covariant(y, Box::new(self))
    }

    pub fn lie(self, x: VectorField) -> Self {
        Self::Lie(x, Box::new(self))
    }

    pub fn minus(self, other: SpinorField) -> Self {
        Self::Sum(vec![(Rational::one(), self), (-Rational::one(), other)])
    }

    pub fn eval(&self, ca: &CliffordAlgebra, x: &[Jet]) -> Vec<Jet> {
        match self {
            Self::Poly(p) => p.eval(x),
            Self::Scaled(f, phi) => {
                let w = f.eval(x);
                phi.eval(ca, x).into_iter().map(|c| w.clone() * c).collect()
            }
            Self::Clifford(z, phi) => mu_apply(ca, &z.eval(x), x, &phi.eval(ca, x)),
            Self::Covariant(y, phi) => covariant_jet(ca, y, phi, x, &phi.eval(ca, x)),
            Self::Lie(v, phi) => {
                let value = phi.eval(ca, x);
                let nabla = covariant_jet(ca, v, phi, x, &value);
                let a = v.a_endomorphism_columns(x);
                let r = rho_at(ca, x, &a, &value);
                nabla.into_iter().zip(r).map(|(p, q)| p + q).collect()
            }
            Self::Sum(parts) => {
                let mut out = vec![Jet::zero(); ca.module_dim()];
                for (c, phi) in parts {
                    let c = Jet::from(c.clone());
                    for (o, v) in out.iter_mut().zip(phi.eval(ca, x)) {
                        *o = o.clone() + c.clone() * v;
                    }
                }
                out
            }
        }
    }

    /// The value at a rational point.
    pub fn value_at(&self, ca: &CliffordAlgebra, x: &[Rational]) -> Vec<Rational> {
        self.eval(ca, &lift(x)).iter().map(Jet::value).collect()
    }
}

fn covariant_jet(
    ca: &CliffordAlgebra,
    y: &VectorField,
    phi: &SpinorField,
    x: &[Jet],
    value: &[Jet],
) -> Vec<Jet> {
    let yx = y.eval(x);
    let d = directional(x, &yx, |p| phi.eval(ca, p));
    let half = Jet::from(Rational::new(1.into(), 2.into()));
    let c = mu_apply(ca, &yx, x, value);
    d.into_iter()
        .zip(c)
        .map(|(a, b)| a + half.clone() * b)
        .collect()
}
