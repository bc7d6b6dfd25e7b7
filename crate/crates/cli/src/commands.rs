use std::path::Path;

use serde::Serialize;

use sesqui::decomposition::{
    lebesgue_decompose, mutual_ad_check, parallel_sum, short_decompose, short_to_subspace,
};
use sesqui::form::domination_constant;
use sesqui::kernel::{dilate, kernel_infimum, kernel_lebesgue, kernel_short};
use sesqui::order::{
    infimum, infimum_obstruction, is_extreme_in_interval, midpoint_witness, segment_extremes_check,
    InfimumWitness,
};
use sesqui::radon_nikodym::rn_representative;
use sesqui::random::{random_pair, seeded};
use sesqui::{ComplexVector, Form, Tolerances};

use crate::io::{
    form_doc, kernel_doc, matrix_doc, read_form, read_kernel, read_vector, vector_doc, ComplexDoc,
    FormDoc, KernelDoc, MatrixDoc,
};
use crate::CliError;

#[derive(Serialize)]
pub struct ParallelSumDoc {
    pub parallel_sum: FormDoc,
}

#[derive(Serialize)]
pub struct ShortDoc {
    pub short: FormDoc,
}

#[derive(Serialize)]
pub struct LebesgueDoc {
    pub regular: FormDoc,
    pub singular: FormDoc,
    pub unique: bool,
}

#[derive(Serialize)]
pub struct ShortDecompositionDoc {
    pub ac: FormDoc,
    pub singular: FormDoc,
    pub unique: bool,
}

#[derive(Serialize)]
pub struct ObstructionDoc {
    pub maximal: FormDoc,
    pub other: FormDoc,
}

#[derive(Serialize)]
pub struct InfimumDoc<V: Serialize> {
    pub exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<V>,
    pub witness: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionDoc>,
}

#[derive(Serialize)]
pub struct MidpointDoc {
    pub a: FormDoc,
    pub b: FormDoc,
}

#[derive(Serialize)]
pub struct ExtremeDoc {
    pub extreme: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MidpointDoc>,
}

#[derive(Serialize)]
pub struct RepresentativeDoc {
    pub y: Vec<ComplexDoc>,
    pub xi: Vec<ComplexDoc>,
    pub ambient: Vec<ComplexDoc>,
    pub norm_w: f64,
}

#[derive(Serialize)]
pub struct RnDoc {
    pub domination_constant: f64,
    pub representatives: Vec<RepresentativeDoc>,
}

#[derive(Serialize)]
pub struct KernelLebesgueDoc {
    pub regular: KernelDoc,
    pub singular: KernelDoc,
    pub unique: bool,
}

#[derive(Serialize)]
pub struct KernelShortDoc {
    pub ac: KernelDoc,
    pub singular: KernelDoc,
    pub unique: bool,
}

#[derive(Serialize)]
pub struct DilationDoc {
    pub dilation_space_dim: usize,
    pub map: MatrixDoc,
    pub source_basis: MatrixDoc,
    pub closed: bool,
    pub max_reproduction_error: f64,
}

#[derive(Serialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
}

#[derive(Serialize)]
pub struct TheoremsDoc {
    pub seed: u64,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub mutual_ad: Tally,
    pub segment_extremes: Tally,
}

fn witness_name(w: InfimumWitness) -> &'static str {
    match w {
        InfimumWitness::RegularLeqW => "regular_leq_w",
        InfimumWitness::RegularLeqTReversed => "regular_leq_t_reversed",
        InfimumWitness::NotComparable => "not_comparable",
    }
}

fn pair(t: &Path, w: &Path, tol: Tolerances) -> Result<(Form, Form), CliError> {
    Ok((read_form(t, tol)?, read_form(w, tol)?))
}

pub fn parallel_sum_cmd(t: &Path, w: &Path, tol: Tolerances) -> Result<ParallelSumDoc, CliError> {
    let (t, w) = pair(t, w, tol)?;
    Ok(ParallelSumDoc {
        parallel_sum: form_doc(&parallel_sum(&t, &w)?),
    })
}

pub fn short_cmd(t: &Path, w: &Path, tol: Tolerances) -> Result<ShortDoc, CliError> {
    let (t, w) = pair(t, w, tol)?;
    if t.dim() != w.dim() {
        return Err(sesqui::Error::DimensionMismatch(t.dim(), w.dim()).into());
    }
    Ok(ShortDoc {
        short: form_doc(&short_to_subspace(&t, &w.kernel())?),
    })
}

pub fn decompose_lebesgue_cmd(t: &Path, w: &Path, tol: Tolerances) -> Result<LebesgueDoc, CliError> {
    let (t, w) = pair(t, w, tol)?;
    let d = lebesgue_decompose(&t, &w)?;
    Ok(LebesgueDoc {
        regular: form_doc(&d.regular),
        singular: form_doc(&d.singular_part),
        unique: d.unique,
    })
}

pub fn decompose_short_cmd(t: &Path, w: &Path, tol: Tolerances) -> Result<ShortDecompositionDoc, CliError> {
    let (t, w) = pair(t, w, tol)?;
    let d = short_decompose(&t, &w)?;
    Ok(ShortDecompositionDoc {
        ac: form_doc(&d.ac_part),
        singular: form_doc(&d.singular_part),
        unique: d.unique,
    })
}

pub fn infimum_cmd(t: &Path, w: &Path, tol: Tolerances) -> Result<InfimumDoc<FormDoc>, CliError> {
    let (t, w) = pair(t, w, tol)?;
    let r = infimum(&t, &w)?;
    let obstruction = if r.exists {
        None
    } else {
        infimum_obstruction(&t, &w)?.map(|ob| ObstructionDoc {
            maximal: form_doc(&ob.maximal),
            other: form_doc(&ob.other),
        })
    };
    Ok(InfimumDoc {
        exists: r.exists,
        value: r.value.as_ref().map(form_doc),
        witness: witness_name(r.witness),
        obstruction,
    })
}

pub fn extreme_check_cmd(u: &Path, t: &Path, tol: Tolerances) -> Result<ExtremeDoc, CliError> {
    let (u, t) = pair(u, t, tol)?;
    let extreme = is_extreme_in_interval(&u, &t)?;
    let witness = midpoint_witness(&u, &t)?.map(|(a, b)| MidpointDoc {
        a: form_doc(&a),
        b: form_doc(&b),
    });
    Ok(ExtremeDoc { extreme, witness })
}

pub fn rn_cmd(t: &Path, w: &Path, vector: Option<&Path>, tol: Tolerances) -> Result<RnDoc, CliError> {
    let (t, w) = pair(t, w, tol)?;
    if t.dim() != w.dim() {
        return Err(sesqui::Error::DimensionMismatch(t.dim(), w.dim()).into());
    }
    let n = t.dim();
    let ys: Vec<ComplexVector> = match vector {
        Some(path) => vec![read_vector(path, n)?],
        None => (0..n)
            .map(|i| {
                let mut e = ComplexVector::zeros(n);
                e[i] = 1.0.into();
                e
            })
            .collect(),
    };
    let c = domination_constant(&t, &w)?.ok_or(sesqui::Error::NotDominated)?;
    let representatives = ys
        .iter()
        .map(|y| {
            let r = rn_representative(&t, &w, y)?;
            Ok(RepresentativeDoc {
                y: vector_doc(y),
                xi: vector_doc(&r.xi),
                ambient: vector_doc(&r.ambient()),
                norm_w: r.norm(),
            })
        })
        .collect::<Result<_, sesqui::Error>>()?;
    Ok(RnDoc {
        domination_constant: c,
        representatives,
    })
}

pub fn kernel_lebesgue_cmd(k: &Path, l: &Path, tol: Tolerances) -> Result<KernelLebesgueDoc, CliError> {
    let d = kernel_lebesgue(&read_kernel(k, tol)?, &read_kernel(l, tol)?)?;
    Ok(KernelLebesgueDoc {
        regular: kernel_doc(&d.regular),
        singular: kernel_doc(&d.singular),
        unique: d.unique,
    })
}

pub fn kernel_short_cmd(k: &Path, l: &Path, tol: Tolerances) -> Result<KernelShortDoc, CliError> {
    let d = kernel_short(&read_kernel(k, tol)?, &read_kernel(l, tol)?)?;
    Ok(KernelShortDoc {
        ac: kernel_doc(&d.regular),
        singular: kernel_doc(&d.singular),
        unique: d.unique,
    })
}

pub fn kernel_infimum_cmd(k: &Path, l: &Path, tol: Tolerances) -> Result<InfimumDoc<KernelDoc>, CliError> {
    let r = kernel_infimum(&read_kernel(k, tol)?, &read_kernel(l, tol)?)?;
    Ok(InfimumDoc {
        exists: r.exists,
        value: r.value.as_ref().map(kernel_doc),
        witness: witness_name(r.witness),
        obstruction: None,
    })
}

pub fn dilate_cmd(k: &Path, l: &Path, tol: Tolerances) -> Result<DilationDoc, CliError> {
    let k = read_kernel(k, tol)?;
    let d = dilate(&k, &read_kernel(l, tol)?)?;
    Ok(DilationDoc {
        dilation_space_dim: d.dilation_space_dim,
        map: matrix_doc(&d.map),
        source_basis: matrix_doc(&d.source_basis),
        closed: d.closed,
        max_reproduction_error: d.max_reproduction_error(&k),
    })
}

const SEGMENT_SAMPLES: usize = 20;

pub fn check_theorems_cmd(
    files: Option<(&Path, &Path)>,
    samples: usize,
    seed: u64,
    dim: usize,
    tol: Tolerances,
) -> Result<TheoremsDoc, CliError> {
    let mut rng = seeded(seed);
    let mut mutual_ad = Tally { checked: 0, failed: 0 };
    let mut segment_extremes = Tally { checked: 0, failed: 0 };
    let mut run = |t: &Form, w: &Form, segment_samples: usize| -> Result<(), CliError> {
        mutual_ad.checked += 1;
        mutual_ad.failed += usize::from(!mutual_ad_check(t, w)?);
        segment_extremes.checked += 1;
        segment_extremes.failed += usize::from(!segment_extremes_check(t, w, segment_samples, &mut rng)?);
        Ok(())
    };
    match files {
        Some((t, w)) => {
            let (t, w) = pair(t, w, tol)?;
            if t.dim() != w.dim() {
                return Err(sesqui::Error::DimensionMismatch(t.dim(), w.dim()).into());
            }
            run(&t, &w, samples)?;
        }
        None => {
            if dim == 0 {
                return Err(CliError::Validation("--dim must be positive".into()));
            }
            let mut pair_rng = seeded(seed ^ 0x9e37_79b9_7f4a_7c15);
            for _ in 0..samples {
                let (t, w) = random_pair(dim, &mut pair_rng);
                let (t, w) = (t.retolerance(tol)?, w.retolerance(tol)?);
                run(&t, &w, SEGMENT_SAMPLES)?;
            }
        }
    }
    Ok(TheoremsDoc {
        seed,
        samples,
        dim: files.is_none().then_some(dim),
        mutual_ad,
        segment_extremes,
    })
}
