//! Representing vectors for dominated forms and representing sequences for
//! almost dominated forms.

use crate::decomposition::almost_dominated;
use crate::error::{Error, Result};
use crate::form::{domination_constant, quotient_space, same_dim, Form, QuotientSpace};
use crate::linalg::{pinv, ComplexVector};

/// `ξ_y` in `X / ker w`, with `t(x, y) = (x + ker w | ξ_y)_w` for every `x`.
#[derive(Debug, Clone)]
pub struct RnRepresentative {
    pub y: ComplexVector,
    /// Coordinates of `ξ_y` with respect to the coset basis of `w`'s quotient.
    pub xi: ComplexVector,
    pub quotient: QuotientSpace,
}

impl RnRepresentative {
    /// `ξ_y` as an ambient vector in `(ker w)^⊥`.
    pub fn ambient(&self) -> ComplexVector {
        self.quotient.coset_basis().basis() * &self.xi
    }

    /// `‖ξ_y‖_w`.
    pub fn norm(&self) -> f64 {
        self.quotient.norm(&self.xi)
    }
}

/// Requires `t ≤ c·w`. Then `W ξ = T y` is solvable on `ran W` and
/// `ξ = W^+ T y`; the returned coordinates are `B^H W^+ T y`.
pub fn rn_representative(t: &Form, w: &Form, y: &ComplexVector) -> Result<RnRepresentative> {
    same_dim(t, w)?;
    if y.len() != t.dim() {
        return Err(Error::DimensionMismatch(t.dim(), y.len()));
    }
    if domination_constant(t, w)?.is_none() {
        return Err(Error::NotDominated);
    }
    let quotient = quotient_space(w);
    let ambient = pinv(w.psd(), w.tolerances().rank).matrix() * (t.matrix() * y);
    let xi = quotient.coordinates(&ambient);
    Ok(RnRepresentative {
        y: y.clone(),
        xi,
        quotient,
    })
}

/// Sequence `(y_n)` with `t(x, y) = lim w(x, y_n)`.
///
/// On `C^n` the density step is vacuous: `ran T ⊆ ran W` under almost
/// domination, so the constant sequence `y_n = W^+ T y` already satisfies
/// `t(x, y) = w(x, y_n)` exactly.
pub fn rn_sequence(t: &Form, w: &Form, y: &ComplexVector, n_terms: usize) -> Result<Vec<ComplexVector>> {
    same_dim(t, w)?;
    if y.len() != t.dim() {
        return Err(Error::DimensionMismatch(t.dim(), y.len()));
    }
    if !almost_dominated(t, w)? {
        return Err(Error::NotAlmostDominated);
    }
    let limit = pinv(w.psd(), w.tolerances().rank).matrix() * (t.matrix() * y);
    Ok(vec![limit; n_terms])
}
