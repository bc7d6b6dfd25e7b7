//! Dense complex Hermitian linear algebra with an explicit tolerance policy.
//!
//! Every form and kernel in the crate is ultimately a [`HermitianPsd`]: a
//! Hermitian positive-semidefinite matrix whose eigendecomposition is computed
//! once, at construction, and cached. Eigenvalues that fall below the PSD
//! threshold `tol.psd * (1 + λ_max)` are clamped to zero there, so downstream
//! rank decisions never see rounding noise as signal.
//!
//! Rank decisions use a relative threshold: an eigenvalue `λ` counts as
//! nonzero iff `λ > rank_tol * scale`, where `scale` is usually `λ_max` of
//! the matrix itself. Ties round down.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

const MAX_ITERATIONS: usize = 10_000;

/// Numerical tolerance policy shared by every operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed Hermitian defect, relative to `1 + max |entry|`.
    pub sym: f64,
    /// PSD threshold, relative to `1 + λ_max`.
    pub psd: f64,
    /// Reconstruction / equality tolerance.
    pub recon: f64,
    /// Relative eigenvalue threshold for rank decisions.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sym: 1e-10,
            psd: 1e-10,
            recon: 1e-8,
            rank: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("tol_sym", self.sym),
            ("tol_psd", self.psd),
            ("tol_recon", self.recon),
            ("rank_tol", self.rank),
        ] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }
}

pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

/// `(m + m^H) / 2`.
pub fn hermitian_part(m: &ComplexMatrix) -> ComplexMatrix {
    (m + m.adjoint()).scale(0.5)
}

pub fn max_abs(m: &ComplexMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

fn hermitian_defect(m: &ComplexMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn check_finite(m: &ComplexMatrix) -> Result<()> {
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let z = m[(r, c)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row: r, col: c });
            }
        }
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix (only its Hermitian part is
/// used). Eigenvalues are returned in nonincreasing order with matching
/// eigenvector columns.
pub fn eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::NotSquare {
            rows: n,
            cols: m.ncols(),
        });
    }
    if n == 0 {
        return Ok((Vec::new(), ComplexMatrix::zeros(0, 0)));
    }
    let eig = SymmetricEigen::try_new(hermitian_part(m), f64::EPSILON, MAX_ITERATIONS)
        .ok_or(Error::NoConvergence(MAX_ITERATIONS))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Largest eigenvalue magnitude of a Hermitian matrix.
pub fn hermitian_norm(m: &ComplexMatrix) -> Result<f64> {
    let (values, _) = eigh(m)?;
    Ok(values.iter().fold(0.0f64, |acc, v| acc.max(v.abs())))
}

/// Thin singular value decomposition `m = U diag(σ) V^H`, with `σ`
/// nonincreasing.
pub fn svd(m: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>, ComplexMatrix)> {
    let (rows, cols) = m.shape();
    let k = rows.min(cols);
    if k == 0 {
        return Ok((ComplexMatrix::zeros(rows, 0), Vec::new(), ComplexMatrix::zeros(cols, 0)));
    }
    check_finite(m)?;
    let a = faer::Mat::<faer::c64>::from_fn(rows, cols, |i, j| {
        let z = m[(i, j)];
        faer::c64::new(z.re, z.im)
    });
    let dec = a.thin_svd().map_err(|_| Error::NoConvergence(MAX_ITERATIONS))?;
    let s = dec.S().column_vector();
    let sigma: Vec<f64> = (0..k).map(|i| s[i].re).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| sigma[b].total_cmp(&sigma[a]));
    let (u, v) = (dec.U(), dec.V());
    let to_nalgebra = |z: faer::c64| Complex64::new(z.re, z.im);
    let u = ComplexMatrix::from_fn(rows, k, |r, c| to_nalgebra(u[(r, order[c])]));
    let v = ComplexMatrix::from_fn(cols, k, |r, c| to_nalgebra(v[(r, order[c])]));
    Ok((u, order.iter().map(|&i| sigma[i]).collect(), v))
}

/// Orthonormal basis of the column span of `m`, with singular values
/// counted as nonzero when `σ² > rank_tol · σ_max²`.
pub fn orthonormal_span(m: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix> {
    let n = m.nrows();
    if m.ncols() == 0 || n == 0 || max_abs(m) == 0.0 {
        return Ok(ComplexMatrix::zeros(n, 0));
    }
    let (u, sigma, _) = svd(m)?;
    let smax = sigma[0];
    let keep = sigma.iter().filter(|&&s| s * s > rank_tol * smax * smax).count();
    Ok(u.columns(0, keep).into_owned())
}

/// Left singular vectors for the `k` largest singular values of `m`.
pub(crate) fn leading_left_singular(m: &ComplexMatrix, k: usize) -> Result<ComplexMatrix> {
    let (u, _, _) = svd(m)?;
    let k = k.min(u.ncols());
    Ok(u.columns(0, k).into_owned())
}

/// A Hermitian positive-semidefinite matrix together with its cached
/// eigendecomposition.
#[derive(Debug, Clone)]
pub struct HermitianPsd {
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
    tol: Tolerances,
}

impl HermitianPsd {
    /// Validates and stores `matrix`. The matrix must be square, finite,
    /// Hermitian within `tol.sym` and have no eigenvalue below
    /// `-tol.psd * (1 + λ_max)`.
    pub fn new(matrix: ComplexMatrix, tol: Tolerances) -> Result<Self> {
        tol.validate()?;
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        check_finite(&matrix)?;
        let defect = hermitian_defect(&matrix);
        if defect > tol.sym * (1.0 + max_abs(&matrix)) {
            return Err(Error::NotHermitian(defect));
        }
        let sym = hermitian_part(&matrix);
        let (values, vectors) = eigh(&sym)?;
        let lmax = values.first().copied().unwrap_or(0.0).max(0.0);
        let threshold = tol.psd * (1.0 + lmax);
        if let Some(&lmin) = values.last() {
            if lmin < -threshold {
                return Err(Error::NotPositiveDefinite(lmin));
            }
        }
        if values.iter().any(|&v| v < threshold && v != 0.0) {
            let clamped: Vec<f64> = values
                .iter()
                .map(|&v| if v < threshold { 0.0 } else { v })
                .collect();
            return Ok(Self::from_spectrum(clamped, vectors, tol));
        }
        Ok(HermitianPsd {
            matrix: sym,
            eigenvalues: values,
            eigenvectors: vectors,
            tol,
        })
    }

    /// Builds `V diag(values) V^H` from a known nonnegative spectrum sorted
    /// in nonincreasing order.
    pub(crate) fn from_spectrum(values: Vec<f64>, vectors: ComplexMatrix, tol: Tolerances) -> Self {
        debug_assert!(values.iter().all(|&v| v >= 0.0));
        let n = vectors.nrows();
        let mut scaled = vectors.clone();
        for (c, &v) in values.iter().enumerate() {
            scaled.column_mut(c).scale_mut(v);
        }
        let matrix = if n == 0 {
            ComplexMatrix::zeros(0, 0)
        } else {
            hermitian_part(&(scaled * vectors.adjoint()))
        };
        HermitianPsd {
            matrix,
            eigenvalues: values,
            eigenvectors: vectors,
            tol,
        }
    }

    pub fn zeros(n: usize, tol: Tolerances) -> Self {
        HermitianPsd::from_spectrum(vec![0.0; n], ComplexMatrix::identity(n, n), tol)
    }

    pub fn identity(n: usize, tol: Tolerances) -> Self {
        HermitianPsd::from_spectrum(vec![1.0; n], ComplexMatrix::identity(n, n), tol)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0).max(0.0)
    }

    /// Number of eigenvalues above `rank_tol * scale`.
    pub fn rank_at(&self, rank_tol: f64, scale: f64) -> usize {
        let threshold = rank_tol * scale;
        self.eigenvalues.iter().filter(|&&v| v > threshold).count()
    }

    pub fn rank(&self, rank_tol: f64) -> usize {
        self.rank_at(rank_tol, self.lambda_max())
    }

    /// `(values, vectors)` of the support: eigenpairs above `rank_tol * scale`.
    fn support(&self, rank_tol: f64, scale: f64) -> (Vec<f64>, ComplexMatrix) {
        let r = self.rank_at(rank_tol, scale);
        (
            self.eigenvalues[..r].to_vec(),
            self.eigenvectors.columns(0, r).into_owned(),
        )
    }

    /// Rows `sqrt(λ_i) v_i^H` over the support, so that `F^H F` equals the
    /// matrix up to the rank cut.
    pub fn factor(&self, rank_tol: f64) -> ComplexMatrix {
        let (values, vectors) = self.support(rank_tol, self.lambda_max());
        let mut f = vectors.adjoint();
        for (r, &v) in values.iter().enumerate() {
            f.row_mut(r).scale_mut(v.sqrt());
        }
        f
    }

    /// Applies `g` to the support eigenvalues and zeroes the rest.
    fn spectral_map(&self, rank_tol: f64, scale: f64, g: impl Fn(f64) -> f64) -> HermitianPsd {
        let r = self.rank_at(rank_tol, scale);
        let values = self
            .eigenvalues
            .iter()
            .enumerate()
            .map(|(i, &v)| if i < r { g(v) } else { 0.0 })
            .collect::<Vec<_>>();
        // keep the nonincreasing order required by the cache
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
        let sorted = order.iter().map(|&i| values[i]).collect();
        let n = self.dim();
        let vectors = ComplexMatrix::from_fn(n, n, |row, c| self.eigenvectors[(row, order[c])]);
        HermitianPsd::from_spectrum(sorted, vectors, self.tol)
    }

    /// Moore–Penrose pseudo-inverse with the support decided relative to an
    /// explicit scale instead of this matrix's own `λ_max`.
    pub fn pinv_at(&self, rank_tol: f64, scale: f64) -> HermitianPsd {
        self.spectral_map(rank_tol, scale, |v| 1.0 / v)
    }

    pub fn add(&self, other: &HermitianPsd) -> Result<HermitianPsd> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        HermitianPsd::new(&self.matrix + &other.matrix, self.tol)
    }
}

/// Eigenvalues (nonincreasing) and unitary eigenvectors.
pub fn eig_hermitian(m: &HermitianPsd) -> (Vec<f64>, ComplexMatrix) {
    (m.eigenvalues.clone(), m.eigenvectors.clone())
}

/// Moore–Penrose pseudo-inverse; eigenvalues `≤ rank_tol · λ_max` are treated as zero.
pub fn pinv(m: &HermitianPsd, rank_tol: f64) -> HermitianPsd {
    m.pinv_at(rank_tol, m.lambda_max())
}

/// PSD square root.
pub fn sqrt_psd(m: &HermitianPsd) -> HermitianPsd {
    m.spectral_map(0.0, 0.0, f64::sqrt)
}

/// Orthonormal basis of the eigenspace for eigenvalues `≤ rank_tol · λ_max`.
pub fn kernel_subspace(m: &HermitianPsd, rank_tol: f64) -> Subspace {
    let r = m.rank(rank_tol);
    let n = m.dim();
    Subspace {
        ambient_dim: n,
        basis: m.eigenvectors.columns(r, n - r).into_owned(),
    }
}

/// Orthonormal basis of the range (orthogonal complement of [`kernel_subspace`]).
pub fn range_subspace(m: &HermitianPsd, rank_tol: f64) -> Subspace {
    let r = m.rank(rank_tol);
    Subspace {
        ambient_dim: m.dim(),
        basis: m.eigenvectors.columns(0, r).into_owned(),
    }
}

/// `rank(a) + rank(b) - rank(a + b)`, which is `dim(ran a ∩ ran b)` for PSD summands.
pub fn range_intersection_rank(a: &HermitianPsd, b: &HermitianPsd, rank_tol: f64) -> Result<usize> {
    let sum = a.add(b)?;
    Ok((a.rank(rank_tol) + b.rank(rank_tol)).saturating_sub(sum.rank(rank_tol)))
}

/// A linear subspace of `C^n` held as a matrix with orthonormal columns.
#[derive(Debug, Clone)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ComplexMatrix,
}

impl Subspace {
    /// Wraps `basis` after checking `basis^H basis = I` within `tol.sym`.
    pub fn new(basis: ComplexMatrix, tol: Tolerances) -> Result<Self> {
        check_finite(&basis)?;
        let k = basis.ncols();
        if k > basis.nrows() {
            return Err(Error::NotOrthonormal(f64::INFINITY));
        }
        let gram = basis.adjoint() * &basis;
        let deviation = max_abs_diff(&gram, &ComplexMatrix::identity(k, k));
        if deviation > tol.sym {
            return Err(Error::NotOrthonormal(deviation));
        }
        Ok(Subspace {
            ambient_dim: basis.nrows(),
            basis,
        })
    }

    /// Orthonormalized column span of `vectors`.
    pub fn span(vectors: &ComplexMatrix, rank_tol: f64) -> Result<Self> {
        Ok(Subspace {
            ambient_dim: vectors.nrows(),
            basis: orthonormal_span(vectors, rank_tol)?,
        })
    }

    pub fn zero(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: ComplexMatrix::zeros(n, 0),
        }
    }

    pub fn full(n: usize) -> Self {
        Subspace {
            ambient_dim: n,
            basis: ComplexMatrix::identity(n, n),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    /// Orthogonal projection `B B^H`.
    pub fn projector(&self) -> ComplexMatrix {
        &self.basis * self.basis.adjoint()
    }

    pub fn complement(&self) -> Result<Subspace> {
        let n = self.ambient_dim;
        if self.dim() == 0 {
            return Ok(Subspace::full(n));
        }
        let (values, vectors) = eigh(&(ComplexMatrix::identity(n, n) - self.projector()))?;
        let k = values.iter().filter(|&&v| v > 0.5).count();
        Ok(Subspace {
            ambient_dim: n,
            basis: vectors.columns(0, k).into_owned(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_form, seeded};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn real(rows: usize, cols: usize, data: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| c(x)))
    }

    fn psd(rows: usize, data: &[f64]) -> HermitianPsd {
        HermitianPsd::new(real(rows, rows, data), Tolerances::default()).unwrap()
    }

    const TOL: f64 = 1e-12;

    #[test]
    fn eig_of_identity_and_diagonal() {
        let (l, v) = eig_hermitian(&psd(3, &[1., 0., 0., 0., 1., 0., 0., 0., 1.]));
        assert_eq!(l, vec![1.0, 1.0, 1.0]);
        assert!(max_abs_diff(&(v.adjoint() * &v), &ComplexMatrix::identity(3, 3)) < TOL);

        let (l, v) = eig_hermitian(&psd(3, &[1., 0., 0., 0., 2., 0., 0., 0., 0.]));
        assert_eq!(l, vec![2.0, 1.0, 0.0]);
        // permutation of the standard basis, up to phase
        for (col, row) in [(0, 1), (1, 0), (2, 2)] {
            assert!((v[(row, col)].norm() - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn eig_of_rank_one_projection() {
        let (l, v) = eig_hermitian(&psd(2, &[0.5, 0.5, 0.5, 0.5]));
        assert!((l[0] - 1.0).abs() < TOL && l[1].abs() < TOL);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let top = v.column(0);
        let overlap = top[0] * s + top[1] * s;
        assert!((overlap.norm() - 1.0).abs() < TOL);
    }

    #[test]
    fn pinv_examples() {
        let tol = Tolerances::default();
        let p = pinv(&psd(2, &[2., 0., 0., 0.]), tol.rank);
        assert!(max_abs_diff(p.matrix(), &real(2, 2, &[0.5, 0., 0., 0.])) < TOL);
        let p = pinv(&psd(3, &[1., 0., 0., 0., 1., 0., 0., 0., 1.]), tol.rank);
        assert!(max_abs_diff(p.matrix(), &ComplexMatrix::identity(3, 3)) < TOL);
        let proj = psd(2, &[0.5, 0.5, 0.5, 0.5]);
        assert!(max_abs_diff(pinv(&proj, tol.rank).matrix(), proj.matrix()) < TOL);
    }

    #[test]
    fn sqrt_examples() {
        let s = sqrt_psd(&psd(2, &[4., 0., 0., 0.]));
        assert!(max_abs_diff(s.matrix(), &real(2, 2, &[2., 0., 0., 0.])) < TOL);
        let s = sqrt_psd(&psd(2, &[1., 0., 0., 1.]));
        assert!(max_abs_diff(s.matrix(), &ComplexMatrix::identity(2, 2)) < TOL);
        let proj = psd(2, &[0.5, 0.5, 0.5, 0.5]);
        assert!(max_abs_diff(sqrt_psd(&proj).matrix(), proj.matrix()) < TOL);
    }

    #[test]
    fn kernel_subspace_examples() {
        let rt = Tolerances::default().rank;
        let k = kernel_subspace(&psd(2, &[1., 0., 0., 0.]), rt);
        assert_eq!(k.dim(), 1);
        assert!((k.basis()[(1, 0)].norm() - 1.0).abs() < TOL);

        assert_eq!(kernel_subspace(&psd(2, &[1., 0., 0., 1.]), rt).dim(), 0);

        let k = kernel_subspace(&psd(2, &[1., 1., 1., 1.]), rt);
        assert_eq!(k.dim(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let b = k.basis().column(0);
        assert!(((b[0] * s - b[1] * s).norm() - 1.0).abs() < TOL);
    }

    #[test]
    fn range_intersection_examples() {
        let rt = Tolerances::default().rank;
        let r = range_intersection_rank(&psd(2, &[1., 0., 0., 0.]), &psd(2, &[0., 0., 0., 1.]), rt);
        assert_eq!(r.unwrap(), 0);
        let id = psd(3, &[1., 0., 0., 0., 1., 0., 0., 0., 1.]);
        assert_eq!(range_intersection_rank(&id, &id, rt).unwrap(), 3);
        let a = psd(3, &[1., 0., 0., 0., 0., 0., 0., 0., 0.]);
        let b = psd(3, &[1., 0., 0., 0., 1., 0., 0., 0., 0.]);
        assert_eq!(range_intersection_rank(&a, &b, rt).unwrap(), 1);
    }

    #[test]
    fn construction_rejects_bad_input() {
        let tol = Tolerances::default();
        let e = HermitianPsd::new(real(2, 2, &[1., 2., 0., 1.]), tol).unwrap_err();
        assert!(matches!(e, Error::NotHermitian(_)));
        let e = HermitianPsd::new(real(2, 2, &[1., 0., 0., -1.]), tol).unwrap_err();
        assert!(matches!(e, Error::NotPositiveDefinite(_)));
        let e = HermitianPsd::new(real(2, 2, &[1., 0., 0., f64::NAN]), tol).unwrap_err();
        assert!(matches!(e, Error::NonFinite { row: 1, col: 1 }));
        let e = HermitianPsd::new(real(2, 3, &[0.; 6]), tol).unwrap_err();
        assert!(matches!(e, Error::NotSquare { .. }));
    }

    #[test]
    fn tiny_negative_eigenvalues_are_clamped() {
        let m = HermitianPsd::new(real(2, 2, &[1., 0., 0., -1e-13]), Tolerances::default()).unwrap();
        assert_eq!(m.eigenvalues(), &[1.0, 0.0]);
        assert_eq!(m.rank(1e-10), 1);
    }

    #[test]
    fn random_projector_and_root_properties() {
        let tol = Tolerances::default();
        let mut rng = seeded(7);
        for i in 0..200 {
            let n = 2 + i % 7;
            let rank = i % (n + 1);
            let m = random_form(n, rank, &mut rng).psd().clone();
            let scale = 1.0 + m.lambda_max();

            let proj = m.matrix() * pinv(&m, tol.rank).matrix();
            assert!(max_abs_diff(&(&proj * &proj), &proj) < tol.recon);
            assert!(max_abs_diff(&proj, &proj.adjoint()) < tol.recon);
            assert!(max_abs_diff(&(&proj * m.matrix()), m.matrix()) < tol.recon * scale);

            let r = sqrt_psd(&m);
            assert!(max_abs_diff(&(r.matrix() * r.matrix()), m.matrix()) < tol.recon * scale);

            let k = kernel_subspace(&m, tol.rank);
            assert_eq!(k.dim(), n - rank);
            assert!(max_abs(&(k.basis().adjoint() * m.matrix())) < tol.recon * scale);
        }
    }

    #[test]
    fn subspace_complement_and_validation() {
        let tol = Tolerances::default();
        let s = Subspace::span(&real(3, 1, &[1., 1., 0.]), tol.rank).unwrap();
        let c = s.complement().unwrap();
        assert_eq!(c.dim(), 2);
        assert!(max_abs(&(s.basis().adjoint() * c.basis())) < TOL);
        assert!(Subspace::new(real(2, 1, &[1., 1.]), tol).is_err());
        assert_eq!(Subspace::zero(3).complement().unwrap().dim(), 3);
    }
}
