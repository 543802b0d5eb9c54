//! Killing spinors on the round spheres `S^7`, `S^8`, `S^15`, checked at
//! rational points.
//!
//! Spinor fields are written in the trivialization coming from the flat
//! ambient space: a Killing spinor is a constant spinor `ψ` of the `Cl_n`
//! module, the connection is `∇_X = ∂_X + ½ μ(X, x)` and Clifford
//! multiplication at `x` is `c_x(X) = μ(X, x)`, where `μ(v, w)` is the image of
//! the `Cl_{n+1}` product `v w` under the even-subalgebra isomorphism
//! `Cl_{n+1}^0 ≅ Cl_n`.

mod check;
mod fields;
mod jet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::CliffordAlgebra;
use crate::error::{ensure_dim, Error, Result};
use crate::exact::{dot, rank, solve, Field, SparseMatrix};
use crate::spin::{SoElement, EMBEDDING_SIGN};
use crate::Rational;

pub use check::{check_geometry, GeometryConstants, GeometryProperties, GeometryReport};
pub use fields::{Monomial, PolySpinorField, ScalarPoly, SpinorField, VectorField};
pub use jet::{fresh_index, Jet};

/// A rational point of the unit sphere `S^n ⊂ ℝ^{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpherePoint {
    x: Vec<Rational>,
}

impl SpherePoint {
    pub fn new(x: Vec<Rational>) -> Result<Self> {
        if dot(&x, &x) == Rational::from_integer(1.into()) {
            Ok(Self { x })
        } else {
            Err(Error::NotOnSphere)
        }
    }

    /// `e_{n+1}`.
    pub fn pole(n: usize) -> Self {
        let mut x = vec![Rational::from_integer(0.into()); n + 1];
        x[n] = Rational::from_integer(1.into());
        Self { x }
    }

    /// Inverse stereographic projection `(2a, 1 - |a|²) / (1 + |a|²)`.
    pub fn stereographic(a: &[Rational]) -> Self {
        let one = Rational::from_integer(1.into());
        let norm = dot(a, a);
        let denom = &one + &norm;
        let mut x: Vec<Rational> = a.iter().map(|ai| ai * Rational::from_integer(2.into()) / &denom).collect();
        x.push((one - norm) / denom);
        Self { x }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.x
    }

    /// The sphere dimension `n`.
    pub fn n(&self) -> usize {
        self.x.len() - 1
    }

    /// `P_x u = u - ⟨x, u⟩ x`.
    pub fn project(&self, u: &[Rational]) -> Result<TangentVector> {
        ensure_dim(self.x.len(), u.len())?;
        Ok(TangentVector {
            v: fields::project(&self.x, u),
            base: self.clone(),
        })
    }

    pub fn tangent(&self, v: Vec<Rational>) -> Result<TangentVector> {
        TangentVector::new(self.clone(), v)
    }
}

/// A vector tangent to the sphere at `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentVector {
    v: Vec<Rational>,
    base: SpherePoint,
}

impl TangentVector {
    pub fn new(base: SpherePoint, v: Vec<Rational>) -> Result<Self> {
        ensure_dim(base.x.len(), v.len())?;
        if dot(&base.x, &v) == Rational::from_integer(0.into()) {
            Ok(Self { v, base })
        } else {
            Err(Error::NotTangent)
        }
    }

    pub fn vector(&self) -> &[Rational] {
        &self.v
    }

    pub fn base(&self) -> &SpherePoint {
        &self.base
    }
}

/// The Killing spinor field determined by a constant spinor of the module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingSpinorField {
    psi: Vec<Rational>,
}

impl KillingSpinorField {
    pub fn new(psi: Vec<Rational>) -> Self {
        Self { psi }
    }

    pub fn psi(&self) -> &[Rational] {
        &self.psi
    }

    /// The Killing constant.
    pub fn lambda(&self) -> Rational {
        Rational::new(1.into(), 2.into())
    }

    /// Value at any point in the trivialization.
    pub fn eval(&self, _x: &SpherePoint) -> Vec<Rational> {
        self.psi.clone()
    }

    pub fn as_field(&self, n: usize) -> SpinorField {
        SpinorField::constant(n + 1, self.psi.clone())
    }
}

/// The Killing vector field `x ↦ a x` for antisymmetric `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearKillingField {
    a: SoElement<Rational>,
}

impl LinearKillingField {
    pub fn new(a: SoElement<Rational>) -> Self {
        Self { a }
    }

    pub fn element(&self) -> &SoElement<Rational> {
        &self.a
    }

    pub fn eval(&self, x: &SpherePoint) -> Result<TangentVector> {
        let v = self.a.apply(&x.x)?;
        TangentVector::new(x.clone(), v)
    }

    pub fn as_field(&self) -> VectorField {
        VectorField::Linear(self.a.matrix().clone())
    }
}

/// Seeded rational points `stereographic(a)` with `a_i = p / q`,
/// `|p| <= 4`, `1 <= q <= 3`.
pub fn sample_sphere_points(n: usize, count: usize, seed: u64) -> Vec<SpherePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a: Vec<Rational> = (0..n)
                .map(|_| Rational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into()))
                .collect();
            SpherePoint::stereographic(&a)
        })
        .collect()
}

/// `Σ_{j<n} v_j γ_j φ`, skipping zero entries.
fn gamma_combination<T: Field>(ca: &CliffordAlgebra, v: &[T], phi: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); phi.len()];
    for (j, vj) in v.iter().take(ca.n()).enumerate() {
        if vj.is_zero() {
            continue;
        }
        let g = ca.gamma(j);
        for (c, p) in phi.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let (r, s) = g.column(c);
            let t = vj.clone() * p.clone();
            let cur = std::mem::replace(&mut out[r], T::zero());
            out[r] = if s > 0 { cur + t } else { cur - t };
        }
    }
    out
}

fn axpy<T: Field>(a: &T, x: &[T], y: &[T]) -> Vec<T> {
    x.iter()
        .zip(y)
        .map(|(xi, yi)| a.clone() * xi.clone() + yi.clone())
        .collect()
}

fn sigma<T: Field>() -> T {
    T::from_i64(EMBEDDING_SIGN.into())
}

/// `(α, β) = (g(w)φ + σ w_n φ, σ g(w)φ + w_n φ)`, so that
/// `μ(v, w)φ = g(v)α - v_n β` with `g(v) = Σ_{j<n} v_j γ_j`.
fn mu_right<T: Field>(ca: &CliffordAlgebra, w: &[T], phi: &[T]) -> (Vec<T>, Vec<T>) {
    let n = ca.n();
    let gw = gamma_combination(ca, w, phi);
    let alpha = axpy(&(sigma::<T>() * w[n].clone()), phi, &gw);
    let sgw: Vec<T> = gw.iter().map(|g| sigma::<T>() * g.clone()).collect();
    let beta = axpy(&w[n], phi, &sgw);
    (alpha, beta)
}

/// `μ(v, w) φ` without forming the matrix.
pub fn mu_apply<T: Field>(ca: &CliffordAlgebra, v: &[T], w: &[T], phi: &[T]) -> Vec<T> {
    let n = ca.n();
    let (alpha, beta) = mu_right(ca, w, phi);
    let gv = gamma_combination(ca, v, &alpha);
    axpy(&-v[n].clone(), &beta, &gv)
}

/// `μ(v, w)` as a module endomorphism.
pub fn mu(ca: &CliffordAlgebra, v: &[Rational], w: &[Rational]) -> Result<SparseMatrix<Rational>> {
    ensure_dim(ca.n() + 1, v.len())?;
    ensure_dim(ca.n() + 1, w.len())?;
    let dim = ca.module_dim();
    let cols: Vec<Vec<Rational>> = (0..dim)
        .map(|c| {
            let mut e = vec![Rational::from_integer(0.into()); dim];
            e[c] = Rational::from_integer(1.into());
            mu_apply(ca, v, w, &e)
        })
        .collect();
    Ok(SparseMatrix::from_columns(dim, &cols))
}

fn check_sphere(ca: &CliffordAlgebra, x: &SpherePoint) -> Result<()> {
    ensure_dim(ca.n(), x.n())
}

/// Clifford multiplication `c_x(X) s = μ(X, x) s` on the fiber at `x`.
pub fn clifford_action_at(ca: &CliffordAlgebra, x: &TangentVector, s: &[Rational]) -> Result<Vec<Rational>> {
    check_sphere(ca, &x.base)?;
    ensure_dim(ca.module_dim(), s.len())?;
    Ok(mu_apply(ca, &x.v, &x.base.x, s))
}

/// `∇_X φ = ∂_X φ + ½ μ(X, x) φ(x)` for a polynomial spinor field.
pub fn covariant_derivative(ca: &CliffordAlgebra, field: &PolySpinorField, x: &TangentVector) -> Result<Vec<Rational>> {
    check_sphere(ca, &x.base)?;
    ensure_dim(ca.n() + 1, field.nvars())?;
    ensure_dim(ca.module_dim(), field.dim())?;
    let p = &x.base.x;
    let d = field.directional_derivative(p, &x.v);
    let c = mu_apply(ca, &x.v, p, &field.eval(p));
    let half = Rational::new(1.into(), 2.into());
    Ok(axpy(&half, &c, &d))
}

/// Whether `∇_X ε = ½ c_x(X) ε` holds at the base point of `x`.
pub fn killing_equation_holds(ca: &CliffordAlgebra, eps: &KillingSpinorField, x: &TangentVector) -> Result<bool> {
    let field = PolySpinorField::constant(ca.n() + 1, eps.psi.clone());
    let lhs = covariant_derivative(ca, &field, x)?;
    let c = clifford_action_at(ca, x, &eps.psi)?;
    let half = Rational::new(1.into(), 2.into());
    Ok(lhs.into_iter().zip(c).all(|(l, r)| l == &half * r))
}

/// The vector `V(x)` with `⟨V(x), Y⟩ = (ε₁, c_x(P_x Y) ε₂)` for all ambient `Y`.
///
/// With `d_j = (ψ₁, μ(e_j, x) ψ₂)` this is `V(x) = P_x d`.
pub fn squaring_vector_at<T: Field>(ca: &CliffordAlgebra, x: &[T], psi1: &[T], psi2: &[T]) -> Vec<T> {
    let n = ca.n();
    let (alpha, beta) = mu_right(ca, x, psi2);
    let mut d: Vec<T> = (0..n)
        .map(|j| dot(psi1, &ca.gamma(j).apply(&alpha)))
        .collect();
    d.push(-dot(psi1, &beta));
    fields::project(x, &d)
}

/// Certifies that the spinor square of two Killing spinors is a linear
/// Killing field `x ↦ a x` and returns it.
///
/// `V` is evaluated at every given point and `a` is solved for exactly; the
/// points must contain `n + 1` linearly independent ones.
pub fn spinor_squaring_field(
    ca: &CliffordAlgebra,
    eps1: &KillingSpinorField,
    eps2: &KillingSpinorField,
    points: &[SpherePoint],
) -> Result<LinearKillingField> {
    let dim = ca.n() + 1;
    ensure_dim(ca.module_dim(), eps1.psi.len())?;
    ensure_dim(ca.module_dim(), eps2.psi.len())?;
    for p in points {
        check_sphere(ca, p)?;
    }
    let rows: Vec<Vec<Rational>> = points.iter().map(|p| p.x.clone()).collect();
    let xm = SparseMatrix::from_dense(&rows);
    if rows.is_empty() || rank(&xm) < dim {
        return Err(Error::Certificate(format!(
            "squaring needs {dim} independent points"
        )));
    }
    let values: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| squaring_vector_at(ca, &p.x, &eps1.psi, &eps2.psi))
        .collect();
    let mut a_rows = Vec::with_capacity(dim);
    for k in 0..dim {
        let rhs: Vec<Rational> = values.iter().map(|v| v[k].clone()).collect();
        match solve(&xm, &rhs)? {
            Some(row) => a_rows.push(row),
            None => return Err(Error::Certificate("squaring field is not linear".into())),
        }
    }
    let a = SparseMatrix::from_dense(&a_rows);
    if !a.is_antisymmetric() {
        return Err(Error::Certificate("squaring field is not a Killing field".into()));
    }
    Ok(LinearKillingField::new(SoElement::new(a)?))
}

/// `ρ_x(B) φ = ¼ Σ_k c_x(P_x u_k) c_x(B u_k) φ`, with `b_cols[k] = B u_k`
/// already tangent.
pub(crate) fn rho_at<T: Field>(ca: &CliffordAlgebra, x: &[T], b_cols: &[Vec<T>], phi: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); phi.len()];
    for (k, bk) in b_cols.iter().enumerate() {
        if bk.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut u = vec![T::zero(); x.len()];
        u[k] = T::one();
        let pu = fields::project(x, &u);
        let inner = mu_apply(ca, bk, x, phi);
        let term = mu_apply(ca, &pu, x, &inner);
        out = out.into_iter().zip(term).map(|(o, t)| o + t).collect();
    }
    let quarter = T::half() * T::half();
    out.into_iter().map(|o| quarter.clone() * o).collect()
}

/// `L_X ε` at `x` for `X = a x` and constant `ε = ψ`:
/// `½ μ(a x, x) ψ + ρ_x(A_X) ψ` with `A_X = -P_x a P_x`.
pub fn lie_derivative_at<T: Field + From<Rational>>(
    ca: &CliffordAlgebra,
    a: &SparseMatrix<Rational>,
    x: &[T],
    psi: &[T],
) -> Vec<T> {
    let am: SparseMatrix<T> = a.map(|q| T::from(q.clone()));
    let ax = am.mul_vec(x).expect("dimension checked by caller");
    let cols: Vec<Vec<T>> = (0..x.len())
        .map(|k| {
            let mut u = vec![T::zero(); x.len()];
            u[k] = T::one();
            let pu = fields::project(x, &u);
            let apu = am.mul_vec(&pu).expect("dimension checked by caller");
            fields::project(x, &apu).into_iter().map(|c| -c).collect()
        })
        .collect();
    let nabla = mu_apply(ca, &ax, x, psi);
    let r = rho_at(ca, x, &cols, psi);
    axpy(&T::half(), &nabla, &r)
}

/// The spinorial Lie derivative of a Killing spinor along a linear Killing
/// field, certified to be the constant spinor field `ψ'` at every given point.
pub fn lie_derivative(
    ca: &CliffordAlgebra,
    field: &LinearKillingField,
    eps: &KillingSpinorField,
    points: &[SpherePoint],
) -> Result<KillingSpinorField> {
    ensure_dim(ca.n() + 1, field.a.dim())?;
    ensure_dim(ca.module_dim(), eps.psi.len())?;
    let mut result: Option<Vec<Rational>> = None;
    for p in points {
        check_sphere(ca, p)?;
        let v = lie_derivative_at(ca, field.a.matrix(), &p.x, &eps.psi);
        match &result {
            None => result = Some(v),
            Some(r) if *r == v => {}
            Some(_) => {
                return Err(Error::Certificate(
                    "Lie derivative is not constant in the trivialization".into(),
                ))
            }
        }
    }
    result
        .map(KillingSpinorField::new)
        .ok_or_else(|| Error::Certificate("no points supplied".into()))
}

#[cfg(test)]
mod tests;
