//! Parallel sums, shorts and the Lebesgue-type and short-type decompositions.
//!
//! The almost dominated part `D_w t = sup_n (t : n·w)` is computed in closed
//! form as the short of `t` to `ker w` (a Schur complement). The monotone
//! limit that defines it is kept as an independent check in
//! [`lebesgue_limit_oracle`].

use crate::error::{Error, Result};
use crate::form::{domination_constant, same_dim, Form};
use crate::linalg::{
    hermitian_part, hermitian_norm, leading_left_singular, orthonormal_span, pinv, svd, ComplexMatrix,
    ComplexVector, HermitianPsd, Subspace,
};

/// `t = regular + singular_part` with `regular = D_w t`.
#[derive(Debug, Clone)]
pub struct LebesgueDecomposition {
    pub regular: Form,
    pub singular_part: Form,
    pub unique: bool,
}

/// `t = ac_part + singular_part` with `ac_part = t_{ker w}`.
#[derive(Debug, Clone)]
pub struct ShortDecomposition {
    pub ac_part: Form,
    pub singular_part: Form,
    pub unique: bool,
}

fn stack(top: &ComplexMatrix, bottom: &ComplexMatrix) -> ComplexMatrix {
    let n = top.ncols();
    let mut out = ComplexMatrix::zeros(top.nrows() + bottom.nrows(), n);
    out.rows_mut(0, top.nrows()).copy_from(top);
    out.rows_mut(top.nrows(), bottom.nrows()).copy_from(bottom);
    out
}

/// `(t:w)[x] = inf_y { t[x-y] + w[y] }`.
///
/// With `T = F^H F` and `W = G^H G`, the infimum is a least-squares residual:
/// `(t:w)[x] = |(I - P)[F x; 0]|²` where `P` projects onto the range of
/// `[F; -G]`. This equals `T - T(T+W)^+T` but stays accurate when `t` and
/// `w` differ in scale by many orders of magnitude, as they do in the limit
/// `t : n·w`.
pub fn parallel_sum(t: &Form, w: &Form) -> Result<Form> {
    same_dim(t, w)?;
    let tol = t.tolerances();
    let f = t.psd().factor(tol.rank);
    let g = w.psd().factor(tol.rank);
    if f.nrows() == 0 || g.nrows() == 0 {
        return Ok(t.zero_like());
    }
    // Rank of the stack is scale-free, so decide it on unit-normalised blocks.
    let normalized = stack(&f.unscale(t.norm().sqrt()), &g.unscale(w.norm().sqrt()));
    let rank = orthonormal_span(&normalized, tol.rank)?.ncols();
    let u = leading_left_singular(&stack(&f, &(-&g)), rank)?;
    let lifted = stack(&f, &ComplexMatrix::zeros(g.nrows(), f.ncols()));
    let residual = &lifted - &u * (u.adjoint() * &lifted);
    t.with_matrix(hermitian_part(&(residual.adjoint() * residual)))
}

/// Direct evaluation of `inf_y { t[x-y] + w[y] }` through the stationarity
/// system `(T+W) y = T x`, solved with the pseudo-inverse.
pub fn parallel_sum_oracle(t: &Form, w: &Form, x: &ComplexVector) -> Result<f64> {
    same_dim(t, w)?;
    let sum = t.psd().add(w.psd())?;
    let y = pinv(&sum, t.tolerances().rank).matrix() * (t.matrix() * x);
    Ok(t.quad(&(x - &y)) + w.quad(&y))
}

/// `t_M[x] = inf_{y ∈ M} t[x - y]`, via the Schur complement
/// `T11 - T12 T22^+ T21` in a basis adapted to `(M^⊥, M)`.
pub fn short_to_subspace(t: &Form, m: &Subspace) -> Result<Form> {
    if m.ambient_dim() != t.dim() {
        return Err(Error::DimensionMismatch(t.dim(), m.ambient_dim()));
    }
    if m.dim() == 0 {
        return Ok(t.clone());
    }
    let complement = m.complement()?;
    if complement.dim() == 0 {
        return Ok(t.zero_like());
    }
    let tol = t.tolerances();
    let b1 = complement.basis();
    let b2 = m.basis();
    let tm = t.matrix();
    let t11 = b1.adjoint() * tm * b1;
    let t12 = b1.adjoint() * tm * b2;
    let t22 = HermitianPsd::new(hermitian_part(&(b2.adjoint() * tm * b2)), tol)?;
    // the support of T22 is judged against the scale of T, not of T22
    let t22_pinv = t22.pinv_at(tol.rank, t.norm());
    let schur = t11 - &t12 * t22_pinv.matrix() * t12.adjoint();
    t.with_matrix(hermitian_part(&(b1 * schur * b1.adjoint())))
}

/// `D_w t`, the largest `w`-almost-dominated form below `t`. On `C^n`
/// almost domination is absolute continuity, so this is `t_{ker w}`.
pub fn lebesgue_ac_part(t: &Form, w: &Form) -> Result<Form> {
    same_dim(t, w)?;
    short_to_subspace(t, &w.kernel())
}

pub fn short_decompose(t: &Form, w: &Form) -> Result<ShortDecomposition> {
    same_dim(t, w)?;
    let ac_part = short_to_subspace(t, &w.kernel())?;
    let singular_part = t.sub(&ac_part)?;
    let unique = domination_constant(&ac_part, w)?.is_some();
    Ok(ShortDecomposition {
        ac_part,
        singular_part,
        unique,
    })
}

pub fn lebesgue_decompose(t: &Form, w: &Form) -> Result<LebesgueDecomposition> {
    let regular = lebesgue_ac_part(t, w)?;
    let singular_part = t.sub(&regular)?;
    let unique = domination_constant(&regular, w)?.is_some();
    Ok(LebesgueDecomposition {
        regular,
        singular_part,
        unique,
    })
}

/// Outcome of iterating `t : (n·w)` over `n = 1, 2, 4, …`.
#[derive(Debug, Clone)]
pub struct LimitReport {
    /// Scales `n` at which the parallel sum was evaluated.
    pub scales: Vec<u64>,
    pub last: Form,
    /// Largest eigenvalue magnitude of the difference between the final two iterates.
    pub gap: f64,
    /// Every iterate is `≤` its successor within the PSD tolerance.
    pub monotone: bool,
}

pub fn lebesgue_limit_oracle(t: &Form, w: &Form, n_max: u64) -> Result<LimitReport> {
    same_dim(t, w)?;
    if n_max < 2 {
        return Err(Error::InvalidArgument(format!("n_max must be at least 2, got {n_max}")));
    }
    let mut scales = Vec::new();
    let mut n = 1u64;
    while n <= n_max {
        scales.push(n);
        n = match n.checked_mul(2) {
            Some(next) => next,
            None => break,
        };
    }
    if *scales.last().unwrap() != n_max {
        scales.push(n_max);
    }

    let mut monotone = true;
    let mut previous: Option<Form> = None;
    let mut gap = 0.0;
    for &n in &scales {
        let current = parallel_sum(t, &w.scale(n as f64)?)?;
        if let Some(prev) = &previous {
            monotone &= crate::form::leq(prev, &current)?;
            gap = hermitian_norm(&(current.matrix() - prev.matrix()))?;
        }
        previous = Some(current);
    }
    Ok(LimitReport {
        scales,
        last: previous.expect("at least two scales"),
        gap,
        monotone,
    })
}

/// `t` is the supremum of an increasing sequence of `w`-dominated forms,
/// i.e. `D_w t = t`.
pub fn almost_dominated(t: &Form, w: &Form) -> Result<bool> {
    Ok(lebesgue_ac_part(t, w)?.approx_eq(t, t.tolerances().recon))
}

/// Minimiser `y* ∈ ker w` of `t[x - y]`, found by least squares on the
/// factor of `T` restricted to `ker w`.
pub fn ac_part_minimizer(t: &Form, w: &Form, x: &ComplexVector) -> Result<ComplexVector> {
    same_dim(t, w)?;
    let ker = w.kernel();
    let tol = t.tolerances();
    let f = t.psd().factor(tol.rank);
    if ker.dim() == 0 || f.nrows() == 0 {
        return Ok(ComplexVector::zeros(t.dim()));
    }
    let fb = &f * ker.basis();
    let rhs = &f * x;
    let (u, sigma, v) = svd(&fb)?;
    let smax = sigma.first().copied().unwrap_or(0.0);
    let keep = sigma.iter().filter(|&&s| s * s > tol.rank * smax * smax).count();
    let mut coeffs = u.columns(0, keep).adjoint() * rhs;
    for (c, s) in coeffs.iter_mut().zip(&sigma) {
        *c /= *s;
    }
    Ok(ker.basis() * (v.columns(0, keep) * coeffs))
}

/// Value of the constant minimising sequence `x_n = y*` in the variational
/// formulas for `D_w t`: returns `t[x - y*]`, which equals `(D_w t)[x]`.
pub fn ac_part_variational_check(t: &Form, w: &Form, x: &ComplexVector) -> Result<f64> {
    let y = ac_part_minimizer(t, w, x)?;
    Ok(t.quad(&(x - y)))
}

/// `D_w t ≪_ad D_t w` and `D_t w ≪_ad D_w t`; holds for every pair.
pub fn mutual_ad_check(t: &Form, w: &Form) -> Result<bool> {
    let a = lebesgue_ac_part(t, w)?;
    let b = lebesgue_ac_part(w, t)?;
    Ok(almost_dominated(&a, &b)? && almost_dominated(&b, &a)?)
}
