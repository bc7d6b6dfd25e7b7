//! Positive definite operator functions on a finite set and their dictionary
//! with forms.
//!
//! A kernel on `S = {0, …, m-1}` with values in `d × d` blocks acts on
//! `E`-valued functions `f: S → C^d`. Such an `f` is stored as the
//! concatenation `(f(0), f(1), …, f(m-1))` in `C^{m·d}`, so `f(s)_i` sits at
//! index `s·d + i`. The pairing `⟨x, z⟩ = z^H x` is linear in its first
//! argument, and the associated form is
//!
//! ```text
//! w_K(f, g) = Σ_{s,t} ⟨f(t), K(s,t) g(s)⟩ = g^H M f,   M_(s,t) = K(s,t)^H.
//! ```

use num_complex::Complex64;

use crate::decomposition::{lebesgue_decompose, short_decompose};
use crate::error::{Error, Result};
use crate::form::{absolutely_continuous, leq, quotient_space, Form};
use crate::linalg::{sqrt_psd, ComplexMatrix, ComplexVector, Tolerances};
use crate::order::{infimum, is_extreme_in_interval, InfimumWitness};
use crate::radon_nikodym::rn_sequence;

#[derive(Debug, Clone)]
pub struct Kernel {
    set_size: usize,
    block_dim: usize,
    /// `blocks[s * set_size + t] = K(s, t)`.
    blocks: Vec<ComplexMatrix>,
    labels: Option<Vec<String>>,
    form: Form,
}

fn check_shape(set_size: usize, block_dim: usize, blocks: &[ComplexMatrix]) -> Result<()> {
    if set_size == 0 || block_dim == 0 {
        return Err(Error::ShapeMismatch("set_size and block_dim must be positive".into()));
    }
    if blocks.len() != set_size * set_size {
        return Err(Error::ShapeMismatch(format!(
            "expected {} blocks, got {}",
            set_size * set_size,
            blocks.len()
        )));
    }
    for (k, b) in blocks.iter().enumerate() {
        if b.shape() != (block_dim, block_dim) {
            return Err(Error::ShapeMismatch(format!(
                "block ({}, {}) is {}x{}, expected {block_dim}x{block_dim}",
                k / set_size,
                k % set_size,
                b.nrows(),
                b.ncols()
            )));
        }
    }
    Ok(())
}

/// Matrix of `w_K` on `C^{m·d}`: block `(s, t)` is `K(s, t)^H`.
fn associated_matrix(set_size: usize, block_dim: usize, blocks: &[ComplexMatrix]) -> ComplexMatrix {
    let n = set_size * block_dim;
    let mut m = ComplexMatrix::zeros(n, n);
    for s in 0..set_size {
        for t in 0..set_size {
            m.view_mut((s * block_dim, t * block_dim), (block_dim, block_dim))
                .copy_from(&blocks[s * set_size + t].adjoint());
        }
    }
    m
}

/// `h_{s,x}`: the function equal to `x` at `s` and zero elsewhere.
pub fn dirac(set_size: usize, block_dim: usize, s: usize, x: &ComplexVector) -> ComplexVector {
    let mut f = ComplexVector::zeros(set_size * block_dim);
    f.rows_mut(s * block_dim, block_dim).copy_from(x);
    f
}

fn unit(d: usize, i: usize) -> ComplexVector {
    let mut v = ComplexVector::zeros(d);
    v[i] = Complex64::new(1.0, 0.0);
    v
}

impl Kernel {
    pub fn new(set_size: usize, block_dim: usize, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        Kernel::with_tolerances(set_size, block_dim, blocks, Tolerances::default())
    }

    /// Validates shapes and positive definiteness of the associated form.
    pub fn with_tolerances(
        set_size: usize,
        block_dim: usize,
        blocks: Vec<ComplexMatrix>,
        tol: Tolerances,
    ) -> Result<Self> {
        check_shape(set_size, block_dim, &blocks)?;
        for b in &blocks {
            crate::linalg::check_finite(b)?;
        }
        let form = Form::with_tolerances(associated_matrix(set_size, block_dim, &blocks), tol)?;
        Ok(Kernel {
            set_size,
            block_dim,
            blocks,
            labels: None,
            form,
        })
    }

    /// Attaches display labels for the points of `S`.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.set_size {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for a set of size {}",
                labels.len(),
                self.set_size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn identity(set_size: usize, block_dim: usize) -> Self {
        kernel_of_form(&Form::identity(set_size * block_dim), set_size, block_dim)
            .expect("identity has matching shape")
    }

    pub fn zero(set_size: usize, block_dim: usize) -> Self {
        kernel_of_form(&Form::zero(set_size * block_dim), set_size, block_dim)
            .expect("zero has matching shape")
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn block_dim(&self) -> usize {
        self.block_dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn block(&self, s: usize, t: usize) -> &ComplexMatrix {
        &self.blocks[s * self.set_size + t]
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn tolerances(&self) -> Tolerances {
        self.form.tolerances()
    }

    /// `⟨y, K(s,t) x⟩ = (K(s,t) x)^H y`.
    pub fn pairing(&self, s: usize, t: usize, x: &ComplexVector, y: &ComplexVector) -> Complex64 {
        ((self.block(s, t) * x).adjoint() * y)[(0, 0)]
    }

    pub fn scale(&self, c: f64) -> Result<Kernel> {
        derived(&self.form.scale(c)?, self)
    }

    pub fn add(&self, other: &Kernel) -> Result<Kernel> {
        same_shape(self, other)?;
        derived(&self.form.add(&other.form)?, self)
    }

    /// Largest entrywise difference over all blocks.
    pub fn max_block_diff(&self, other: &Kernel) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .fold(0.0, |acc, (a, b)| acc.max(crate::linalg::max_abs_diff(a, b)))
    }
}

/// `kernel_of_form` carrying over the labels of `like`.
fn derived(w: &Form, like: &Kernel) -> Result<Kernel> {
    let mut k = kernel_of_form(w, like.set_size, like.block_dim)?;
    k.labels = like.labels.clone();
    Ok(k)
}

fn same_shape(k: &Kernel, l: &Kernel) -> Result<()> {
    if (k.set_size, k.block_dim) != (l.set_size, l.block_dim) {
        return Err(Error::ShapeMismatch(format!(
            "kernels on {}x{} and {}x{}",
            k.set_size, k.block_dim, l.set_size, l.block_dim
        )));
    }
    Ok(())
}

/// The associated form `w_K`.
pub fn form_of_kernel(k: &Kernel) -> Result<Form> {
    Ok(k.form.clone())
}

/// The unique kernel `L` with `w_L = w`, read off Dirac functions:
/// `⟨x, L(s,t) y⟩ = w(h_{t,x}, h_{s,y})`.
pub fn kernel_of_form(w: &Form, set_size: usize, block_dim: usize) -> Result<Kernel> {
    if set_size * block_dim != w.dim() || set_size == 0 || block_dim == 0 {
        return Err(Error::DimensionMismatch(w.dim(), set_size * block_dim));
    }
    let d = block_dim;
    let mut blocks = Vec::with_capacity(set_size * set_size);
    for s in 0..set_size {
        for t in 0..set_size {
            // ⟨e_i, L e_j⟩ = conj(L_ij)
            let block = ComplexMatrix::from_fn(d, d, |i, j| {
                let hx = dirac(set_size, d, t, &unit(d, i));
                let hy = dirac(set_size, d, s, &unit(d, j));
                let z = w.eval(&hx, &hy).conj();
                // canonical zero sign, so documents do not carry -0.0
                Complex64::new(z.re + 0.0, z.im + 0.0)
            });
            blocks.push(block);
        }
    }
    Ok(Kernel {
        set_size,
        block_dim,
        blocks,
        labels: None,
        form: w.clone(),
    })
}

/// `K ≺ L` iff `w_K ≤ w_L`.
pub fn kernel_leq(k: &Kernel, l: &Kernel) -> Result<bool> {
    same_shape(k, l)?;
    leq(&k.form, &l.form)
}

#[derive(Debug, Clone)]
pub struct KernelDecomposition {
    pub regular: Kernel,
    pub singular: Kernel,
    pub unique: bool,
}

/// `K = D_L K + (K - D_L K)` with `w_{D_L K} = D_{w_L} w_K`.
pub fn kernel_lebesgue(k: &Kernel, l: &Kernel) -> Result<KernelDecomposition> {
    same_shape(k, l)?;
    let dec = lebesgue_decompose(&k.form, &l.form)?;
    Ok(KernelDecomposition {
        regular: derived(&dec.regular, k)?,
        singular: derived(&dec.singular_part, k)?,
        unique: dec.unique,
    })
}

/// `K = K_{ac,L} + K_{s,L}`, where `w_{K_{ac,L}}[f] = inf_{g ∈ ker w_L} w_K[f - g]`.
pub fn kernel_short(k: &Kernel, l: &Kernel) -> Result<KernelDecomposition> {
    same_shape(k, l)?;
    let dec = short_decompose(&k.form, &l.form)?;
    Ok(KernelDecomposition {
        regular: derived(&dec.ac_part, k)?,
        singular: derived(&dec.singular_part, k)?,
        unique: dec.unique,
    })
}

/// Functions `g_n` with `Σ⟨f(t), K(s,t) g(s)⟩ = lim Σ⟨f(t), L(s,t) g_n(s)⟩`.
pub fn kernel_rn_sequence(
    k: &Kernel,
    l: &Kernel,
    g: &ComplexVector,
    n_terms: usize,
) -> Result<Vec<ComplexVector>> {
    same_shape(k, l)?;
    rn_sequence(&k.form, &l.form, g, n_terms)
}

#[derive(Debug, Clone)]
pub struct KernelInfimum {
    pub exists: bool,
    pub value: Option<Kernel>,
    pub witness: InfimumWitness,
}

pub fn kernel_infimum(k: &Kernel, l: &Kernel) -> Result<KernelInfimum> {
    same_shape(k, l)?;
    let r = infimum(&k.form, &l.form)?;
    let value = match &r.value {
        Some(v) => Some(derived(v, k)?),
        None => None,
    };
    Ok(KernelInfimum {
        exists: r.exists,
        value,
        witness: r.witness,
    })
}

/// `J` is an extreme point of `[0, K]`. Extreme kernels also get their
/// dilation with respect to `K` built and checked for closedness.
pub fn kernel_extreme_check(j: &Kernel, k: &Kernel) -> Result<bool> {
    same_shape(j, k)?;
    if !kernel_leq(j, k)? {
        return Err(Error::NotBelow);
    }
    let extreme = is_extreme_in_interval(&j.form, &k.form)?;
    if extreme && !dilate(j, k)?.closed {
        return Err(Error::Inconsistent("extreme kernel without closed dilation".into()));
    }
    Ok(extreme)
}

/// A Gram factorisation of `K` through `X / ker w_L`.
#[derive(Debug, Clone)]
pub struct DilationResult {
    pub dilation_space_dim: usize,
    /// Sends quotient coordinates of `X / ker w_L` into the dilation space.
    pub map: ComplexMatrix,
    /// Coset basis of `X / ker w_L` (columns in `C^{m·d}`).
    pub source_basis: ComplexMatrix,
    /// Always true: every linear map between finite-dimensional spaces is closed.
    pub closed: bool,
}

impl DilationResult {
    /// `T(f + ker w_L)`.
    pub fn apply(&self, f: &ComplexVector) -> ComplexVector {
        &self.map * (self.source_basis.adjoint() * f)
    }

    /// `max |⟨y, K(s,t) x⟩ - (T h_{t,y} | T h_{s,x})|` over all points and
    /// standard basis vectors.
    pub fn max_reproduction_error(&self, k: &Kernel) -> f64 {
        let (m, d) = (k.set_size, k.block_dim);
        let mut worst = 0.0f64;
        for s in 0..m {
            for t in 0..m {
                for i in 0..d {
                    for j in 0..d {
                        let (x, y) = (unit(d, i), unit(d, j));
                        let lhs = k.pairing(s, t, &x, &y);
                        let u = self.apply(&dirac(m, d, t, &y));
                        let v = self.apply(&dirac(m, d, s, &x));
                        let rhs = (v.adjoint() * u)[(0, 0)];
                        worst = worst.max((lhs - rhs).norm());
                    }
                }
            }
        }
        worst
    }
}

/// Dilation of `K` with respect to `L`: the canonical map
/// `X / ker w_L → X / ker w_K` followed by the square root of the Gram
/// matrix of `w_K` on its quotient. Requires `ker w_L ⊆ ker w_K`.
pub fn dilate(k: &Kernel, l: &Kernel) -> Result<DilationResult> {
    same_shape(k, l)?;
    if !absolutely_continuous(&k.form, &l.form)? {
        return Err(Error::NoDilation);
    }
    let target = quotient_space(&k.form);
    let source = quotient_space(&l.form);
    let canonical = target.coset_basis().basis().adjoint() * source.coset_basis().basis();
    let map = sqrt_psd(target.gram()).matrix() * canonical;
    Ok(DilationResult {
        dilation_space_dim: target.dim(),
        map,
        source_basis: source.coset_basis().basis().clone(),
        closed: true,
    })
}
