//! Seeded generators for random forms, subspaces and test vectors.
//!
//! Nonzero eigenvalues of generated forms lie in `[0.25, 4]`, so rank
//! decisions are never borderline and limits converge at a predictable rate.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::form::Form;
use crate::linalg::{sqrt_psd, ComplexMatrix, ComplexVector, Subspace, Tolerances};

pub type TestRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    DMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

pub fn random_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexVector {
    ComplexVector::from_fn(n, |_, _| gaussian(rng))
}

/// Haar-distributed unitary matrix (QR of a complex Gaussian with phase fix).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let qr = random_matrix(n, n, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        let d = r[(c, c)];
        if d.norm() > 0.0 {
            let col = q.column(c) * (d / d.norm());
            q.set_column(c, &col);
        }
    }
    q
}

fn eigenvalue<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.25..4.0)
}

/// `B U diag(λ) U^H B^H` with `rank` eigenvalues drawn from `[0.25, 4]` and
/// range inside the column span of `basis` (orthonormal columns).
pub fn random_form_on<R: Rng + ?Sized>(basis: &ComplexMatrix, rank: usize, rng: &mut R) -> Form {
    let n = basis.nrows();
    let k = basis.ncols();
    let rank = rank.min(k);
    if rank == 0 {
        return Form::zero(n);
    }
    let u = random_unitary(k, rng);
    let mut cols = basis * u.columns(0, rank);
    let factors = cols.clone();
    for c in 0..rank {
        let s = eigenvalue(rng);
        cols.column_mut(c).scale_mut(s);
    }
    Form::new(cols * factors.adjoint()).expect("generated form is PSD")
}

pub fn random_form<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Form {
    random_form_on(&ComplexMatrix::identity(n, n), rank, rng)
}

/// Random form whose range lies inside `ran W`.
pub fn random_form_below_support<R: Rng + ?Sized>(w: &Form, rng: &mut R) -> Form {
    let range = w.range();
    let rank = rng.random_range(0..=range.dim());
    random_form_on(range.basis(), rank, rng)
}

pub fn random_subspace<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Subspace {
    Subspace::span(&random_matrix(n, k, rng), Tolerances::default().rank)
        .expect("Gaussian span")
}

/// Random PSD contraction `0 ≤ K ≤ I`.
pub fn random_contraction<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let u = random_unitary(n, rng);
    let mut scaled = u.clone();
    for c in 0..n {
        let s = match rng.random_range(0..4) {
            0 => 0.0,
            1 => 1.0,
            _ => rng.random_range(0.0..1.0),
        };
        scaled.column_mut(c).scale_mut(s);
    }
    scaled * u.adjoint()
}

/// Random lower bound `V^{1/2} K V^{1/2}` of `v`, with `0 ≤ K ≤ I`.
pub fn random_lower_bound<R: Rng + ?Sized>(v: &Form, rng: &mut R) -> Form {
    let root = sqrt_psd(v.psd());
    let k = random_contraction(v.dim(), rng);
    v.with_matrix(root.matrix() * k * root.matrix())
        .expect("compression of a PSD matrix is PSD")
}

/// Triple `a ≤ b ≤ c` built by adding random PSD increments.
pub fn random_comparable_triple<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Form, Form, Form) {
    let a = random_form(n, rng.random_range(0..=n), rng);
    let b = a.add(&random_form(n, rng.random_range(0..=n), rng)).unwrap();
    let c = b.add(&random_form(n, rng.random_range(0..=n), rng)).unwrap();
    (a, b, c)
}

/// A pair of forms on `C^n` drawn from a mixture of relative positions:
/// independent ranks, nested supports, trivially intersecting ranges,
/// partially shared ranges, comparable pairs and full-rank pairs.
pub fn random_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (Form, Form) {
    match rng.random_range(0..6) {
        0 => (
            random_form(n, rng.random_range(0..=n), rng),
            random_form(n, rng.random_range(0..=n), rng),
        ),
        1 => {
            let w = random_form(n, rng.random_range(1..=n), rng);
            (random_form_below_support(&w, rng), w)
        }
        2 => {
            // ranges spanned by disjoint parts of a generic (non-orthogonal) basis
            let basis = random_matrix(n, n, rng);
            let k = rng.random_range(0..=n);
            let a = Subspace::span(&basis.columns(0, k).into_owned(), 1e-10).unwrap();
            let b = Subspace::span(&basis.columns(k, n - k).into_owned(), 1e-10).unwrap();
            let ra = a.dim();
            let rb = b.dim();
            (random_form_on(a.basis(), ra, rng), random_form_on(b.basis(), rb, rng))
        }
        3 => {
            let shared = random_form(n, rng.random_range(1..=n.div_ceil(2)), rng);
            let t = shared.add(&random_form(n, rng.random_range(0..=n / 2), rng)).unwrap();
            let w = shared.add(&random_form(n, rng.random_range(0..=n / 2), rng)).unwrap();
            (t, w)
        }
        4 => {
            let (a, b, _) = random_comparable_triple(n, rng);
            if rng.random_bool(0.5) {
                (a, b)
            } else {
                (b, a)
            }
        }
        _ => (random_form(n, n, rng), random_form(n, n, rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = seeded(1);
        for n in 1..8 {
            let u = random_unitary(n, &mut rng);
            assert!(max_abs_diff(&(u.adjoint() * &u), &ComplexMatrix::identity(n, n)) < 1e-12);
        }
    }

    #[test]
    fn generated_ranks_are_exact() {
        let mut rng = seeded(2);
        for n in 1..8 {
            for r in 0..=n {
                assert_eq!(random_form(n, r, &mut rng).rank(), r);
            }
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let a = random_form(4, 2, &mut seeded(9));
        let b = random_form(4, 2, &mut seeded(9));
        assert_eq!(a.matrix(), b.matrix());
    }
}
