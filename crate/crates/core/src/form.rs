//! Nonnegative sesquilinear forms on `C^n` and the binary relations between them.
//!
//! A form `t` is stored as a Hermitian PSD matrix `T` with
//! `t(x, y) = y^H T x`: linear in the first argument, antilinear in the
//! second. The quadratic form is `t[x] = x^H T x`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    eigh, kernel_subspace, max_abs, max_abs_diff, pinv, range_intersection_rank,
    range_subspace, sqrt_psd, ComplexMatrix, ComplexVector, HermitianPsd, Subspace, Tolerances,
};

#[derive(Debug, Clone)]
pub struct Form {
    psd: HermitianPsd,
}

impl Form {
    /// Form with the default tolerance policy.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        Form::with_tolerances(matrix, Tolerances::default())
    }

    pub fn with_tolerances(matrix: ComplexMatrix, tol: Tolerances) -> Result<Self> {
        if matrix.nrows() == 0 {
            return Err(Error::Empty);
        }
        Ok(Form {
            psd: HermitianPsd::new(matrix, tol)?,
        })
    }

    pub fn from_psd(psd: HermitianPsd) -> Result<Self> {
        if psd.dim() == 0 {
            return Err(Error::Empty);
        }
        Ok(Form { psd })
    }

    /// Real diagonal form.
    pub fn diag(values: &[f64]) -> Result<Self> {
        let n = values.len();
        Form::new(ComplexMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(values[r], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    /// Form from a real row-major square matrix.
    pub fn real(n: usize, data: &[f64]) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(n * n, data.len()));
        }
        Form::new(ComplexMatrix::from_row_iterator(
            n,
            n,
            data.iter().map(|&x| Complex64::new(x, 0.0)),
        ))
    }

    pub fn zero(n: usize) -> Self {
        Form {
            psd: HermitianPsd::zeros(n, Tolerances::default()),
        }
    }

    pub fn identity(n: usize) -> Self {
        Form {
            psd: HermitianPsd::identity(n, Tolerances::default()),
        }
    }

    /// Zero form of the same dimension and tolerance policy.
    pub fn zero_like(&self) -> Form {
        Form {
            psd: HermitianPsd::zeros(self.dim(), self.tolerances()),
        }
    }

    pub fn dim(&self) -> usize {
        self.psd.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.psd.matrix()
    }

    pub fn psd(&self) -> &HermitianPsd {
        &self.psd
    }

    pub fn tolerances(&self) -> Tolerances {
        self.psd.tolerances()
    }

    /// Same matrix, different tolerance policy.
    pub fn retolerance(&self, tol: Tolerances) -> Result<Self> {
        Form::with_tolerances(self.matrix().clone(), tol)
    }

    /// `t(x, y) = y^H T x`.
    pub fn eval(&self, x: &ComplexVector, y: &ComplexVector) -> Complex64 {
        (y.adjoint() * self.matrix() * x)[(0, 0)]
    }

    /// `t[x] = x^H T x`.
    pub fn quad(&self, x: &ComplexVector) -> f64 {
        self.eval(x, x).re
    }

    pub fn rank(&self) -> usize {
        self.psd.rank(self.tolerances().rank)
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    /// Largest eigenvalue.
    pub fn norm(&self) -> f64 {
        self.psd.lambda_max()
    }

    pub fn kernel(&self) -> Subspace {
        kernel_subspace(&self.psd, self.tolerances().rank)
    }

    pub fn range(&self) -> Subspace {
        range_subspace(&self.psd, self.tolerances().rank)
    }

    pub fn scale(&self, c: f64) -> Result<Form> {
        if !(c >= 0.0 && c.is_finite()) {
            return Err(Error::NegativeScale(c));
        }
        self.with_matrix(self.matrix().scale(c))
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        same_dim(self, other)?;
        self.with_matrix(self.matrix() + other.matrix())
    }

    /// `self - other`; fails unless the difference is PSD within tolerance.
    pub fn sub(&self, other: &Form) -> Result<Form> {
        same_dim(self, other)?;
        self.with_matrix(self.matrix() - other.matrix())
    }

    /// New form sharing this form's tolerance policy.
    pub fn with_matrix(&self, matrix: ComplexMatrix) -> Result<Form> {
        Form::with_tolerances(matrix, self.tolerances())
    }

    /// Entrywise equality within `tol * (1 + max(|T|, |W|))`.
    pub fn approx_eq(&self, other: &Form, tol: f64) -> bool {
        self.dim() == other.dim()
            && max_abs_diff(self.matrix(), other.matrix())
                <= tol * (1.0 + max_abs(self.matrix()).max(max_abs(other.matrix())))
    }
}

pub(crate) fn same_dim(t: &Form, w: &Form) -> Result<()> {
    if t.dim() != w.dim() {
        return Err(Error::DimensionMismatch(t.dim(), w.dim()));
    }
    Ok(())
}

/// Smallest eigenvalue of `W - T` compared against the PSD threshold scaled
/// by the larger operand.
pub fn leq(t: &Form, w: &Form) -> Result<bool> {
    same_dim(t, w)?;
    let (values, _) = eigh(&(w.matrix() - t.matrix()))?;
    let lmin = values.last().copied().unwrap_or(0.0);
    let scale = 1.0 + t.norm().max(w.norm());
    Ok(lmin >= -t.tolerances().psd * scale)
}

/// Least `c ≥ 0` with `t ≤ c·w`, or `None` when no such constant exists.
pub fn domination_constant(t: &Form, w: &Form) -> Result<Option<f64>> {
    if !absolutely_continuous(t, w)? {
        return Ok(None);
    }
    let tol = t.tolerances();
    let inv_root = pinv(&sqrt_psd(w.psd()), tol.rank);
    let sandwich = inv_root.matrix() * t.matrix() * inv_root.matrix();
    let (values, _) = eigh(&sandwich)?;
    Ok(Some(values.first().copied().unwrap_or(0.0).max(0.0)))
}

/// `w[x] = 0 ⟹ t[x] = 0`, i.e. `ker W ⊆ ker T`.
pub fn absolutely_continuous(t: &Form, w: &Form) -> Result<bool> {
    same_dim(t, w)?;
    let ker = w.kernel();
    let bound = t.tolerances().recon * (1.0 + t.norm());
    Ok(ker.basis().column_iter().all(|b| {
        let b = b.into_owned();
        t.quad(&b) <= bound
    }))
}

/// Closability of `t` with respect to `w`. On a finite-dimensional space
/// every canonical embedding is bounded, so this coincides with
/// [`absolutely_continuous`].
pub fn strongly_absolutely_continuous(t: &Form, w: &Form) -> Result<bool> {
    absolutely_continuous(t, w)
}

/// `t ⊥ w`: the only form below both is zero, i.e. `ran T ∩ ran W = {0}`.
pub fn singular(t: &Form, w: &Form) -> Result<bool> {
    same_dim(t, w)?;
    Ok(range_intersection_rank(t.psd(), w.psd(), t.tolerances().rank)? == 0)
}

/// A nonzero form whose lower bounds are all scalar multiples of itself.
/// For matrices this is exactly rank one.
pub fn is_minimal(t: &Form) -> bool {
    t.rank() == 1
}

/// `X / ker t` with the inner product induced by `t`.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    form: Form,
    coset_basis: Subspace,
    gram: HermitianPsd,
}

impl QuotientSpace {
    pub fn source_dim(&self) -> usize {
        self.form.dim()
    }

    pub fn dim(&self) -> usize {
        self.coset_basis.dim()
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn coset_basis(&self) -> &Subspace {
        &self.coset_basis
    }

    pub fn gram(&self) -> &HermitianPsd {
        &self.gram
    }

    /// Coordinates of the coset `x + ker t`.
    pub fn coordinates(&self, x: &ComplexVector) -> ComplexVector {
        self.coset_basis.basis().adjoint() * x
    }

    /// `(a | b)_t` for quotient coordinates `a`, `b`.
    pub fn inner(&self, a: &ComplexVector, b: &ComplexVector) -> Complex64 {
        (b.adjoint() * self.gram.matrix() * a)[(0, 0)]
    }

    pub fn norm(&self, a: &ComplexVector) -> f64 {
        self.inner(a, a).re.max(0.0).sqrt()
    }
}

pub fn quotient_space(t: &Form) -> QuotientSpace {
    let coset_basis = t.range();
    let r = coset_basis.dim();
    // B consists of eigenvectors of T, so B^H T B is the diagonal of the support eigenvalues.
    let values = t.psd().eigenvalues()[..r].to_vec();
    let gram = HermitianPsd::from_spectrum(values, ComplexMatrix::identity(r, r), t.tolerances());
    QuotientSpace {
        form: t.clone(),
        coset_basis,
        gram,
    }
}
