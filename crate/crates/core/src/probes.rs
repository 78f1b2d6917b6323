//! Defect functionals on compressions: evidence for or against normality,
//! quasinormality, hyponormality, self-adjointness and unitarity.
//!
//! A compression of a positive operator is positive, so a self-commutator
//! eigenvalue below `-(tail_bound + tol)` certifies that the operator is not
//! hyponormal. A nonnegative value is only evidence.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, hermitian_norm, hermitian_part, spectral_norm, CMatrix};
use crate::opmat::{
    adjoint_block, build_block, gram_blocks, operator_norm_estimate, word_block, Letter, OperatorSpec,
    OperatorWord,
};
use crate::series::{sequence_tail, AnalyticExpr};
use crate::space::SpaceSpec;

/// Default truncation order for kernel-condition series.
pub const KERNEL_PROBE_ORDER: usize = 1024;

/// Minimum headroom `M - 2N` for the quasinormality defect.
pub const QUASINORMAL_HEADROOM: usize = 16;

/// `P_N (A*A - AA*) P_N`, symmetrized.
#[derive(Clone, Debug)]
pub struct SelfCommutator {
    pub matrix: CMatrix,
    pub tail_bound: f64,
    pub tail_flag: bool,
}

pub fn self_commutator(op: &OperatorSpec, space: &SpaceSpec, n: usize, m: usize) -> Result<SelfCommutator> {
    let g = gram_blocks(op, space, n, m)?;
    Ok(SelfCommutator { matrix: hermitian_part(&(&g.g1 - &g.g2)), tail_bound: g.tail_bound, tail_flag: g.tail_flag })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyponormalityEvidence {
    pub min_eig: f64,
    #[serde(with = "crate::serde_ext")]
    pub tail_bound: f64,
    /// `min_eig < -(tail_bound + tol)`: the operator is not hyponormal.
    pub certificate: bool,
}

pub fn hyponormality_probe(
    op: &OperatorSpec,
    space: &SpaceSpec,
    n: usize,
    m: usize,
    tol: f64,
) -> Result<HyponormalityEvidence> {
    let h = self_commutator(op, space, n, m)?;
    let min_eig = hermitian_eigenvalues(&h.matrix)[0];
    Ok(HyponormalityEvidence { min_eig, tail_bound: h.tail_bound, certificate: min_eig < -(h.tail_bound + tol) })
}

/// A computed quantity with an estimate of its truncation error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    #[serde(with = "crate::serde_ext")]
    pub tail: f64,
}

fn commutator_norm(a: &CMatrix, g: &CMatrix, n: usize, inner: usize) -> f64 {
    let a_rows = a.view((0, 0), (n + 1, inner + 1));
    let a_cols = a.view((0, 0), (inner + 1, n + 1));
    let g_rows = g.view((0, 0), (n + 1, inner + 1));
    let g_cols = g.view((0, 0), (inner + 1, n + 1));
    spectral_norm(&(a_rows * g_cols - g_rows * a_cols))
}

/// `‖P_N (A·A*A - A*A·A) P_N‖`. The products run over an inner index
/// `L = M/2`; `A*A` on that range comes from the `(M+1) x (L+1)` column
/// block. The tail is the change when the inner range is halved toward `N`
/// plus the discarded rows of the first `N+1` columns, scaled by `‖A‖`.
pub fn quasinormality_defect(op: &OperatorSpec, space: &SpaceSpec, n: usize, m: usize) -> Result<Estimate> {
    let required = 2 * n + QUASINORMAL_HEADROOM;
    if m < required {
        return Err(Error::OrderPolicy { n, m, required });
    }
    let l = m / 2;
    let b = build_block(op, space, l, m)?;
    let g = b.entries.ad_mul(&b.entries);
    let a = b.leading(l);
    let value = commutator_norm(&a, &g, n, l);
    let coarse = commutator_norm(&a, &g, n, n + (l - n) / 2);
    let col_tail = (0..=n)
        .map(|j| sequence_tail(&b.entries.column(j).iter().copied().collect::<Vec<_>>()).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(Estimate { value, tail: (value - coarse).abs() + 2.0 * col_tail * spectral_norm(&a) })
}

pub fn normality_defect(op: &OperatorSpec, space: &SpaceSpec, n: usize, m: usize) -> Result<Estimate> {
    let h = self_commutator(op, space, n, m)?;
    Ok(Estimate { value: hermitian_norm(&h.matrix), tail: h.tail_bound })
}

/// `‖P_N (A - A*) P_N‖`, exact up to rounding.
pub fn selfadjoint_defect(op: &OperatorSpec, space: &SpaceSpec, n: usize) -> Result<f64> {
    let a = build_block(op, space, n, n)?.square();
    Ok(spectral_norm(&(&a - a.adjoint())))
}

/// `max(‖P_N A*A P_N - I‖, ‖P_N AA* P_N - I‖)`.
pub fn unitary_defect(op: &OperatorSpec, space: &SpaceSpec, n: usize, m: usize) -> Result<Estimate> {
    let g = gram_blocks(op, space, n, m)?;
    let id = CMatrix::identity(n + 1, n + 1);
    let value = hermitian_norm(&(&g.g1 - &id)).max(hermitian_norm(&(&g.g2 - &id)));
    Ok(Estimate { value, tail: g.tail_bound })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub min_eig_selfcomm: f64,
    pub norm_selfcomm: f64,
    pub quasinormal_defect: f64,
    pub selfadjoint_defect: f64,
    pub unitary_defect: f64,
    pub n: usize,
    pub m: usize,
    #[serde(with = "crate::serde_ext")]
    pub tail_bound: f64,
    pub flags: Vec<String>,
}

/// All defects at once; needs `M >= 2N + 16`.
pub fn defect_report(op: &OperatorSpec, space: &SpaceSpec, n: usize, m: usize, tol: f64) -> Result<DefectReport> {
    let qn = quasinormality_defect(op, space, n, m)?;
    let g = gram_blocks(op, space, n, m)?;
    let h = hermitian_part(&(&g.g1 - &g.g2));
    let ev = hermitian_eigenvalues(&h);
    let id = CMatrix::identity(n + 1, n + 1);
    let unitary = hermitian_norm(&(&g.g1 - &id)).max(hermitian_norm(&(&g.g2 - &id)));
    let tail_bound = g.tail_bound.max(qn.tail);
    let mut flags = Vec::new();
    if g.tail_flag {
        flags.push("tail_flag".to_string());
    }
    if !tail_bound.is_finite() {
        flags.push("unbounded_tail".to_string());
    }
    if ev[0] < -(g.tail_bound + tol) {
        flags.push("non_hyponormal_certificate".to_string());
    }
    Ok(DefectReport {
        min_eig_selfcomm: ev[0],
        norm_selfcomm: ev.iter().fold(0.0, |acc, x| acc.max(x.abs())),
        quasinormal_defect: qn.value,
        selfadjoint_defect: selfadjoint_defect(op, space, n)?,
        unitary_defect: unitary,
        n,
        m,
        tail_bound,
        flags,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DouglasWitness {
    /// Norm of the compression of the candidate contraction.
    pub norm_c: f64,
    /// `‖P_N C A P_N - P_N A* P_N‖`.
    pub residual: f64,
    #[serde(with = "crate::serde_ext")]
    pub tail_estimate: f64,
}

pub fn douglas_witness(
    c: &OperatorWord,
    a: &OperatorSpec,
    space: &SpaceSpec,
    n: usize,
    m: usize,
) -> Result<DouglasWitness> {
    let cb = word_block(c, space, n, m)?;
    let ca = word_block(&c.clone().push(Letter::Plain(a.clone())), space, n, m)?;
    let a_star = adjoint_block(&build_block(a, space, n, n)?);
    Ok(DouglasWitness {
        norm_c: operator_norm_estimate(&cb),
        residual: spectral_norm(&(&ca.entries - &a_star.entries)),
        tail_estimate: cb.tail_estimate.max(ca.tail_estimate),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelCondition {
    pub w: Complex64,
    /// `‖A K_w‖² - ‖A* K_w‖²`, the first term truncated.
    pub chi: f64,
    /// Estimated squared norm of the discarded part of `A K_w`.
    #[serde(with = "crate::serde_ext")]
    pub tail: f64,
    /// `chi + tail < -tol`.
    pub certificate: bool,
}

/// 8 radii x 16 angles.
pub fn default_kernel_grid() -> Vec<Complex64> {
    const RADII: [f64; 8] = [0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 0.95];
    let mut out = Vec::with_capacity(RADII.len() * 16);
    for r in RADII {
        for k in 0..16 {
            out.push(Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / 16.0));
        }
    }
    out
}

/// `A K_w = ψ · K_w∘φ` against `A* K_w = conj(ψ(w)) K_{φ(w)}` on a grid.
pub fn kernel_condition_probe(
    op: &OperatorSpec,
    space: &SpaceSpec,
    grid: &[Complex64],
    order: usize,
    tol: f64,
) -> Result<Vec<KernelCondition>> {
    let phi = op.symbol_or_identity();
    let b = space.basis_norms(order);
    grid.par_iter()
        .map(|&w| {
            let image = AnalyticExpr::product(vec![
                op.weight.clone(),
                AnalyticExpr::precompose(space.kernel_expr(w)?, phi),
            ]);
            let s = image.taylor(order)?;
            let scaled: Vec<Complex64> = s.coeffs().iter().enumerate().map(|(n, c)| c * b.norm(n)).collect();
            let head: f64 = scaled.iter().map(|c| c.norm_sqr()).sum();
            let tail = sequence_tail(&scaled).powi(2);
            let pw = phi.eval(w).ok_or(Error::Pole(w))?;
            let chi = head - op.weight.eval(w).norm_sqr() * space.kernel_norm_sq(pw)?;
            Ok(KernelCondition { w, chi, tail, certificate: chi + tail < -tol })
        })
        .collect()
}
