//! Order structure of forms: infima, extreme points of intervals `[0, t]`
//! and the translation theorem for segments.

use rand::Rng;

use crate::decomposition::{lebesgue_ac_part, parallel_sum};
use crate::error::{Error, Result};
use crate::form::{is_minimal, leq, same_dim, singular, Form};
use crate::linalg::{
    eigh, hermitian_part, kernel_subspace, orthonormal_span, pinv, sqrt_psd, ComplexMatrix,
    ComplexVector, HermitianPsd, Subspace,
};
use crate::random::{random_form, random_lower_bound, random_subspace};

/// Which branch of the existence criterion produced the infimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfimumWitness {
    /// `D_w t ≤ w`; the infimum is `D_w t`.
    RegularLeqW,
    /// `D_t w ≤ t`; the infimum is `D_t w`.
    RegularLeqTReversed,
    /// `D_w t` and `D_t w` are not comparable; no infimum.
    NotComparable,
}

#[derive(Debug, Clone)]
pub struct InfimumResult {
    pub exists: bool,
    pub value: Option<Form>,
    pub witness: InfimumWitness,
}

/// Greatest lower bound `t ∧ w`, when it exists.
///
/// Lower bounds of `{t, w}` are exactly the lower bounds of
/// `{D_w t, D_t w}`, so the infimum exists iff those two parts are
/// comparable, and then it is the smaller one.
pub fn infimum(t: &Form, w: &Form) -> Result<InfimumResult> {
    same_dim(t, w)?;
    let regular_t = lebesgue_ac_part(t, w)?;
    let regular_w = lebesgue_ac_part(w, t)?;
    let comparable = leq(&regular_w, &regular_t)? || leq(&regular_t, &regular_w)?;
    if !comparable {
        return Ok(InfimumResult {
            exists: false,
            value: None,
            witness: InfimumWitness::NotComparable,
        });
    }
    let t_branch = leq(&regular_t, w)?;
    let w_branch = leq(&regular_w, t)?;
    if t_branch && w_branch && !regular_t.approx_eq(&regular_w, t.tolerances().recon) {
        return Err(Error::Inconsistent(
            "both infimum candidates are common lower bounds but differ".into(),
        ));
    }
    let (value, witness) = if t_branch {
        (regular_t, InfimumWitness::RegularLeqW)
    } else if w_branch {
        (regular_w, InfimumWitness::RegularLeqTReversed)
    } else {
        return Err(Error::Inconsistent(
            "regular parts are comparable but neither is a common lower bound".into(),
        ));
    };
    Ok(InfimumResult {
        exists: true,
        value: Some(value),
        witness,
    })
}

/// Rank-one common lower bound `c·v v^H` of `t` and `w` with the largest
/// admissible `c`; `None` unless `v ∈ ran T ∩ ran W`.
pub fn rank_one_lower_bound(t: &Form, w: &Form, v: &ComplexVector) -> Result<Option<Form>> {
    same_dim(t, w)?;
    let tol = t.tolerances();
    let mut worst = 0.0f64;
    for f in [t, w] {
        let range = f.range();
        let proj = range.projector();
        let residual = v - &proj * v;
        if residual.norm() > tol.recon.sqrt() * v.norm() {
            return Ok(None);
        }
        let inv = pinv(f.psd(), tol.rank);
        worst = worst.max((v.adjoint() * inv.matrix() * v)[(0, 0)].re);
    }
    if worst == 0.0 {
        return Ok(None);
    }
    let m = (v * v.adjoint()).unscale(worst);
    Ok(Some(t.with_matrix(hermitian_part(&m))?))
}

/// Samples common lower bounds of `t` and `w`: compressions of the
/// candidate `value` and of `t:w`, convex combinations, and maximal
/// rank-one bounds along random directions in `ran T ∩ ran W`.
pub fn sample_common_lower_bound<R: Rng + ?Sized>(
    t: &Form,
    w: &Form,
    value: &Form,
    rng: &mut R,
) -> Result<Form> {
    let n = t.dim();
    match rng.random_range(0..4) {
        0 => Ok(random_lower_bound(value, rng)),
        1 => Ok(random_lower_bound(&parallel_sum(t, w)?, rng)),
        2 => {
            let a = random_lower_bound(value, rng);
            let b = random_lower_bound(&parallel_sum(t, w)?, rng);
            let s: f64 = rng.random_range(0.0..1.0);
            a.scale(s)?.add(&b.scale(1.0 - s)?)
        }
        _ => {
            let common = parallel_sum(t, w)?.range();
            if common.dim() == 0 {
                return Ok(t.zero_like());
            }
            let coeffs = crate::random::random_vector(common.dim(), rng);
            let v = common.basis() * coeffs;
            Ok(rank_one_lower_bound(t, w, &v)?.unwrap_or_else(|| Form::zero(n)))
        }
    }
}

/// Checks that `value` is a common lower bound of `t` and `w` that
/// dominates `samples` sampled common lower bounds.
pub fn verify_infimum<R: Rng + ?Sized>(
    t: &Form,
    w: &Form,
    value: &Form,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    if !(leq(value, t)? && leq(value, w)?) {
        return Ok(false);
    }
    for _ in 0..samples {
        let s = sample_common_lower_bound(t, w, value, rng)?;
        if !(leq(&s, t)? && leq(&s, w)?) {
            return Err(Error::Inconsistent("sampled form is not a common lower bound".into()));
        }
        if !leq(&s, value)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Certificate that `t ∧ w` does not exist: a maximal common lower bound
/// together with another common lower bound that it does not dominate.
#[derive(Debug, Clone)]
pub struct InfimumObstruction {
    pub maximal: Form,
    pub other: Form,
}

/// Builds an [`InfimumObstruction`] when the regular parts `a = D_w t`,
/// `b = D_t w` are incomparable.
///
/// On the common support, congruence by `a^{-1/2}` turns the pair into
/// `(I, diag(d))`. Then `diag(min(1, d_i))` is a maximal common lower
/// bound, and for `d_i < 1 < d_j` the rank-one bound along `e_i + e_j` is
/// not below it.
pub fn infimum_obstruction(t: &Form, w: &Form) -> Result<Option<InfimumObstruction>> {
    same_dim(t, w)?;
    let tol = t.tolerances();
    let a = lebesgue_ac_part(t, w)?;
    let b = lebesgue_ac_part(w, t)?;
    let support = a.range();
    let r = support.dim();
    if r == 0 {
        return Ok(None);
    }
    let q = support.basis();
    let a_red = HermitianPsd::new(hermitian_part(&(q.adjoint() * a.matrix() * q)), tol)?;
    let b_red = hermitian_part(&(q.adjoint() * b.matrix() * q));
    let a_root = sqrt_psd(&a_red);
    let a_inv_root = pinv(&a_root, tol.rank);
    let pencil = a_inv_root.matrix() * &b_red * a_inv_root.matrix();
    let (d, u) = eigh(&pencil)?;
    let margin = 1e3 * tol.psd * (1.0 + a.norm().max(b.norm()));
    let (Some(i), Some(j)) = (
        (0..r).rev().find(|&k| d[k] < 1.0 - margin),
        (0..r).find(|&k| d[k] > 1.0 + margin),
    ) else {
        return Ok(None);
    };
    // columns a^{1/2} u_k realise the diagonalising coordinates
    let lift = q * a_root.matrix() * &u;
    let mut scaled = lift.clone();
    for (k, &dk) in d.iter().enumerate() {
        scaled.column_mut(k).scale_mut(dk.clamp(0.0, 1.0));
    }
    let maximal = t.with_matrix(hermitian_part(&(scaled * lift.adjoint())))?;
    let direction = lift.column(i) + lift.column(j);
    let c = 1.0 / f64::max(2.0, 1.0 / d[i] + 1.0 / d[j]);
    let other = t.with_matrix(hermitian_part(&((&direction * direction.adjoint()).scale(c))))?;
    Ok(Some(InfimumObstruction { maximal, other }))
}

/// Verifies an obstruction: both forms are common lower bounds of `t, w`,
/// `maximal` is maximal among common lower bounds of the regular parts
/// (`ker(a - m) + ker(b - m)` spans the space), and `other ≰ maximal`.
pub fn verify_obstruction(t: &Form, w: &Form, ob: &InfimumObstruction) -> Result<bool> {
    let tol = t.tolerances();
    let a = lebesgue_ac_part(t, w)?;
    let b = lebesgue_ac_part(w, t)?;
    for f in [&ob.maximal, &ob.other] {
        if !(leq(f, t)? && leq(f, w)? && leq(f, &a)? && leq(f, &b)?) {
            return Ok(false);
        }
    }
    let ka = kernel_subspace(a.sub(&ob.maximal)?.psd(), tol.rank);
    let kb = kernel_subspace(b.sub(&ob.maximal)?.psd(), tol.rank);
    let n = t.dim();
    let mut joined = ComplexMatrix::zeros(n, ka.dim() + kb.dim());
    joined.columns_mut(0, ka.dim()).copy_from(ka.basis());
    joined.columns_mut(ka.dim(), kb.dim()).copy_from(kb.basis());
    let spans = orthonormal_span(&joined, tol.rank)?.ncols() == n;
    Ok(spans && !leq(&ob.other, &ob.maximal)?)
}

/// For minimal `t`, checks that `t ∧ w` exists for `samples` random `w`.
pub fn infimum_always_exists_minimal<R: Rng + ?Sized>(
    t: &Form,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    if !is_minimal(t) {
        return Err(Error::NotMinimal);
    }
    let n = t.dim();
    for _ in 0..samples {
        let w = random_form(n, rng.random_range(0..=n), rng);
        if !infimum(t, &w)?.exists {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `u` is an extreme point of `[0, t]`. Computes both `u ⊥ t - u` and
/// `D_u t = u`, which must agree, and returns their common value.
pub fn is_extreme_in_interval(u: &Form, t: &Form) -> Result<bool> {
    same_dim(u, t)?;
    if !leq(u, t)? {
        return Err(Error::NotBelow);
    }
    let rest = t.sub(u)?;
    let disjoint = singular(u, &rest)?;
    let fixed = lebesgue_ac_part(t, u)?.approx_eq(u, t.tolerances().recon);
    if disjoint != fixed {
        return Err(Error::Inconsistent(format!(
            "u ⊥ t-u is {disjoint} but D_u t = u is {fixed}"
        )));
    }
    Ok(disjoint)
}

/// For `u` not extreme in `[0, t]`, returns `(a, b)` in `[0, t]` with
/// `a ≠ b` and `u = (a + b) / 2`.
///
/// Uses a vector `v ∈ ran u ∩ ran(t - u)` and the rank-one form
/// `d = c·v v^H` with `d ≤ u` and `d ≤ t - u` (halved for margin), so that
/// `a = u - d` and `b = u + d`.
pub fn midpoint_witness(u: &Form, t: &Form) -> Result<Option<(Form, Form)>> {
    same_dim(u, t)?;
    if !leq(u, t)? {
        return Err(Error::NotBelow);
    }
    let tol = t.tolerances();
    let rest = t.sub(u)?;
    let ru = u.range();
    let rr = rest.range();
    if ru.dim() == 0 || rr.dim() == 0 {
        return Ok(None);
    }
    // (α, β) with U α = R β  ⟺  [U, -R] (α; β) = 0
    let n = t.dim();
    let mut joined = ComplexMatrix::zeros(n, ru.dim() + rr.dim());
    joined.columns_mut(0, ru.dim()).copy_from(ru.basis());
    joined.columns_mut(ru.dim(), rr.dim()).copy_from(&(-rr.basis()));
    let gram = HermitianPsd::new(hermitian_part(&(joined.adjoint() * &joined)), tol)?;
    let null = kernel_subspace(&gram, tol.rank);
    if null.dim() == 0 {
        return Ok(None);
    }
    let alpha = null.basis().column(0).rows(0, ru.dim()).into_owned();
    let v = ru.basis() * alpha;
    let Some(below_u) = rank_one_lower_bound(u, &rest, &v)? else {
        return Ok(None);
    };
    let d = below_u.scale(0.5)?;
    let a = u.sub(&d)?;
    let b = u.add(&d)?;
    Ok(Some((a, b)))
}

/// `W^{1/2} P W^{1/2}`, where `P` projects onto the part of `p` inside
/// `ran W` (the orthonormalised projection of `p` onto `ran W`). Every
/// such form is an extreme point of `[0, w]`.
pub fn extreme_generator(w: &Form, p: &Subspace) -> Result<Form> {
    if p.ambient_dim() != w.dim() {
        return Err(Error::DimensionMismatch(w.dim(), p.ambient_dim()));
    }
    let tol = w.tolerances();
    let range = w.range();
    let projected = range.projector() * p.basis();
    let inside = Subspace::span(&projected, tol.rank)?;
    let root = sqrt_psd(w.psd());
    w.with_matrix(hermitian_part(&(root.matrix() * inside.projector() * root.matrix())))
}

/// Checks `t ∈ ex[0, t+w] ⟺ ex[t, t+w] ⊆ ex[0, t+w]` by sampling extreme
/// points of `[t, t+w] = t + [0, w]`. The endpoints `t` and `t + w` are
/// always included.
pub fn segment_extremes_check<R: Rng + ?Sized>(
    t: &Form,
    w: &Form,
    samples: usize,
    rng: &mut R,
) -> Result<bool> {
    same_dim(t, w)?;
    let top = t.add(w)?;
    let lhs = is_extreme_in_interval(t, &top)?;
    let n = t.dim();
    let mut all_extreme = true;
    for k in 0..samples.max(2) {
        let v = match k {
            0 => w.zero_like(),
            1 => w.clone(),
            _ => {
                let dim = rng.random_range(0..=n);
                extreme_generator(w, &random_subspace(n, dim, rng))?
            }
        };
        let point = t.add(&v)?;
        if !is_extreme_in_interval(&point, &top)? {
            all_extreme = false;
            break;
        }
    }
    Ok(lhs == all_extreme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, ComplexMatrix};
    use crate::random::{random_pair, seeded};
    use num_complex::Complex64;

    fn d(values: &[f64]) -> Form {
        Form::diag(values).unwrap()
    }

    fn half_ones() -> Form {
        Form::real(2, &[0.5, 0.5, 0.5, 0.5]).unwrap()
    }

    #[test]
    fn infimum_examples() {
        let r = infimum(&d(&[2., 1.]), &d(&[1., 2.])).unwrap();
        assert!(!r.exists && r.value.is_none());
        assert_eq!(r.witness, InfimumWitness::NotComparable);

        let r = infimum(&Form::identity(2), &d(&[2., 2.])).unwrap();
        assert!(r.exists);
        assert!(r.value.unwrap().approx_eq(&Form::identity(2), 1e-14));

        let r = infimum(&d(&[1., 0.]), &d(&[0., 1.])).unwrap();
        assert!(r.exists && r.value.unwrap().is_zero());
    }

    #[test]
    fn obstruction_for_diagonal_pair() {
        let (t, w) = (d(&[2., 1.]), d(&[1., 2.]));
        let ob = infimum_obstruction(&t, &w).unwrap().expect("incomparable");
        assert!(ob.maximal.approx_eq(&Form::identity(2), 1e-12));
        assert!(verify_obstruction(&t, &w, &ob).unwrap());
        assert!(infimum_obstruction(&Form::identity(2), &d(&[2., 2.])).unwrap().is_none());
    }

    #[test]
    fn minimal_corollary_examples() {
        let mut rng = seeded(1);
        assert!(infimum_always_exists_minimal(&half_ones(), 100, &mut rng).unwrap());

        let r = infimum(&d(&[1., 0.]), &d(&[0., 5.])).unwrap();
        assert!(r.exists && r.value.unwrap().is_zero());

        let t = random_form(3, 1, &mut rng);
        let r = infimum(&t, &t.scale(3.0).unwrap()).unwrap();
        assert!(r.value.unwrap().approx_eq(&t, 1e-12));

        let e = infimum_always_exists_minimal(&Form::identity(2), 5, &mut rng).unwrap_err();
        assert_eq!(e.to_string(), "form not minimal");
    }

    #[test]
    fn extreme_examples() {
        let id = Form::identity(2);
        assert!(is_extreme_in_interval(&d(&[1., 0.]), &id).unwrap());
        assert!(!is_extreme_in_interval(&d(&[0.5, 0.5]), &id).unwrap());
        assert!(is_extreme_in_interval(&Form::zero(2), &id).unwrap());
        assert!(is_extreme_in_interval(&id, &id).unwrap());
        let e = is_extreme_in_interval(&d(&[2., 0.]), &id).unwrap_err();
        assert_eq!(e.to_string(), "u not below t");
    }

    #[test]
    fn midpoint_witness_for_half() {
        let id = Form::identity(2);
        let u = d(&[0.5, 0.5]);
        let (a, b) = midpoint_witness(&u, &id).unwrap().unwrap();
        assert!(leq(&a, &id).unwrap() && leq(&b, &id).unwrap());
        assert!(!a.approx_eq(&b, 1e-6));
        assert!(a.add(&b).unwrap().scale(0.5).unwrap().approx_eq(&u, 1e-12));
        assert!(midpoint_witness(&d(&[1., 0.]), &id).unwrap().is_none());
    }

    #[test]
    fn generator_examples() {
        let id = Form::identity(2);
        let e1 = Subspace::span(&d(&[1., 0.]).matrix().clone(), 1e-10).unwrap();
        assert!(extreme_generator(&id, &e1).unwrap().approx_eq(&d(&[1., 0.]), 1e-14));

        let w = random_form(3, 2, &mut seeded(2));
        assert!(extreme_generator(&w, &Subspace::full(3)).unwrap().approx_eq(&w, 1e-12));

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = Subspace::span(
            &ComplexMatrix::from_column_slice(2, 1, &[Complex64::new(s, 0.), Complex64::new(s, 0.)]),
            1e-10,
        )
        .unwrap();
        let g = extreme_generator(&d(&[4., 1.]), &p).unwrap();
        let expected = ComplexMatrix::from_row_slice(
            2,
            2,
            &[2.0, 1.0, 1.0, 0.5].map(|x| Complex64::new(x, 0.0)),
        );
        assert!(max_abs_diff(g.matrix(), &expected) < 1e-12);
        assert!(is_extreme_in_interval(&g, &d(&[4., 1.])).unwrap());
    }

    #[test]
    fn generator_handles_directions_outside_the_range() {
        // plain W^{1/2} P W^{1/2} would give diag(1/2, 0), the midpoint of [0, w]
        let w = d(&[1., 0.]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = Subspace::span(
            &ComplexMatrix::from_column_slice(2, 1, &[Complex64::new(s, 0.), Complex64::new(s, 0.)]),
            1e-10,
        )
        .unwrap();
        let g = extreme_generator(&w, &p).unwrap();
        assert!(g.approx_eq(&w, 1e-12));
        assert!(is_extreme_in_interval(&g, &w).unwrap());
    }

    #[test]
    fn generator_output_is_extreme() {
        let mut rng = seeded(3);
        for k in 0..500 {
            let n = 2 + k % 6;
            let w = random_form(n, rng.random_range(0..=n), &mut rng);
            let p = random_subspace(n, rng.random_range(0..=n), &mut rng);
            let g = extreme_generator(&w, &p).unwrap();
            assert!(leq(&g, &w).unwrap());
            assert!(is_extreme_in_interval(&g, &w).unwrap(), "instance {k}");
        }
    }

    #[test]
    fn segment_examples() {
        let mut rng = seeded(4);
        assert!(segment_extremes_check(&d(&[1., 0.]), &d(&[0., 1.]), 20, &mut rng).unwrap());
        let id = Form::identity(2);
        assert!(!is_extreme_in_interval(&id, &id.add(&id).unwrap()).unwrap());
        assert!(segment_extremes_check(&id, &id, 20, &mut rng).unwrap());
        let t = random_form(3, 2, &mut rng);
        assert!(is_extreme_in_interval(&t, &t).unwrap());
        assert!(segment_extremes_check(&t, &Form::zero(3), 10, &mut rng).unwrap());
    }

    #[test]
    fn segment_theorem_on_random_pairs() {
        let mut rng = seeded(5);
        for k in 0..100 {
            let (t, w) = random_pair(2 + k % 4, &mut rng);
            assert!(segment_extremes_check(&t, &w, 10, &mut rng).unwrap(), "pair {k}");
        }
    }

    #[test]
    fn infimum_conditions_agree() {
        let mut rng = seeded(6);
        let mut exists = 0;
        for k in 0..150 {
            let (t, w) = random_pair(2 + k % 4, &mut rng);
            let r = infimum(&t, &w).unwrap();
            let ob = infimum_obstruction(&t, &w).unwrap();
            match (&r.value, &ob) {
                (Some(v), None) => {
                    exists += 1;
                    assert!(verify_infimum(&t, &w, v, 50, &mut rng).unwrap(), "pair {k}");
                }
                (None, Some(o)) => assert!(verify_obstruction(&t, &w, o).unwrap(), "pair {k}"),
                _ => panic!("pair {k}: routes disagree"),
            }
        }
        assert!(exists > 20 && exists < 150, "{exists}");
    }
}
