//! Spectral computations: finite-section eigenvalues, the spiral spectrum of
//! parabolic composition operators and its explicit eigenfunctions, rotation
//! spectra and Gelfand sequences.
//!
//! Eigenvalues of finite sections of non-normal operators are diagnostics
//! only; they can sit far from the true spectrum.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, sort_by_modulus_desc, spectral_norm, CMatrix};
use crate::mobius::MoebiusMap;
use crate::opmat::{block_entries, OperatorSpec, TruncatedBlock};
use crate::series::{fmt_sig, AnalyticExpr};
use crate::space::SpaceSpec;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// β values of the eigen-residual sweep.
pub const RESIDUAL_BETAS: [f64; 6] = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0];

/// Translation numbers of the eigen-residual sweep.
pub fn residual_translations() -> Vec<Complex64> {
    vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 0.5),
        Complex64::new(0.3, 2.0),
    ]
}

/// Boundary fixed points of the eigen-residual sweep.
pub fn residual_zetas() -> Vec<Complex64> {
    vec![ONE, Complex64::new(0.0, 1.0), Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_3)]
}

/// `{0} ∪ {2^-2, ..., 2^4}`.
pub fn default_beta_grid() -> Vec<f64> {
    std::iter::once(0.0).chain((-2..=4).map(|k| 2f64.powi(k))).collect()
}

pub const DEFAULT_K_MAX: usize = 24;

/// Eigenvalues of the leading square block, by modulus descending.
pub fn truncation_eigenvalues(b: &TruncatedBlock) -> Vec<Complex64> {
    eigenvalues(&b.square())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpiralCurve {
    pub t: Complex64,
    pub betas: Vec<f64>,
    /// `e^{-βt}` for each β.
    pub samples: Vec<Complex64>,
    /// 0 belongs to the spectrum as the limit of the curve.
    pub includes_zero: bool,
}

impl SpiralCurve {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["beta", "re", "im"])?;
        for (b, z) in self.betas.iter().zip(&self.samples) {
            wtr.write_record([fmt_sig(*b), fmt_sig(z.re), fmt_sig(z.im)])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// `{e^{-βt} : 0 <= β <= beta_max}` sampled on a uniform grid.
pub fn spiral_curve(t: Complex64, beta_max: f64, samples: usize) -> Result<SpiralCurve> {
    if !(t.re > 0.0) {
        return Err(Error::InvalidTranslation(t));
    }
    if samples < 2 || !(beta_max > 0.0) || !beta_max.is_finite() {
        return Err(Error::InvalidArgument("spiral needs beta_max > 0 and at least 2 samples".into()));
    }
    let betas: Vec<f64> = (0..samples).map(|k| beta_max * k as f64 / (samples - 1) as f64).collect();
    let samples = betas.iter().map(|&b| (-t * b).exp()).collect();
    Ok(SpiralCurve { t, betas, samples, includes_zero: true })
}

/// `f_β = exp(-β τ)`, `τ(z) = (1 + ζ̄z)/(1 - ζ̄z)`, with `f_β ∘ φ = e^{-βt} f_β`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenPair {
    pub zeta: Complex64,
    pub t: Complex64,
    pub beta: f64,
    pub eigenvalue: Complex64,
    pub eigenfunction: AnalyticExpr,
}

/// Half-plane coordinate `τ(z) = (1 + ζ̄z)/(1 - ζ̄z)`.
pub fn half_plane_map(zeta: Complex64) -> Result<AnalyticExpr> {
    let zc = zeta.conj();
    AnalyticExpr::rational(vec![ONE, zc], vec![ONE, -zc])
}

pub fn parabolic_eigenpair(zeta: Complex64, t: Complex64, beta: f64) -> Result<EigenPair> {
    if !(t.re > 0.0) {
        return Err(Error::InvalidTranslation(t));
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::InvalidArgument(format!("beta must be finite and >= 0, got {beta}")));
    }
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("|zeta| = {} is not 1", zeta.norm())));
    }
    let eigenfunction = AnalyticExpr::exp(AnalyticExpr::scale(Complex64::new(-beta, 0.0), half_plane_map(zeta)?));
    Ok(EigenPair { zeta, t, beta, eigenvalue: (-t * beta).exp(), eigenfunction })
}

/// `max_n |c_n(f_β∘φ) - e^{-βt} c_n(f_β)| / max_n |c_n(f_β)|` for
/// `φ = parabolic_from(ζ, t)`.
pub fn eigen_residual(zeta: Complex64, t: Complex64, beta: f64, order: usize) -> Result<f64> {
    let pair = parabolic_eigenpair(zeta, t, beta)?;
    let phi = MoebiusMap::parabolic_from(zeta, t)?;
    let lhs = AnalyticExpr::precompose(pair.eigenfunction.clone(), phi).taylor(order)?;
    let rhs = pair.eigenfunction.taylor(order)?.scale(pair.eigenvalue);
    let scale = rhs.max_abs().max(lhs.max_abs());
    let diff = (&lhs - &rhs).max_abs();
    Ok(if scale == 0.0 { 0.0 } else { diff / scale })
}

/// Closure of `{λ^n : n >= 0}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RotationSpectrum {
    /// `λ` a root of unity: the cyclic group it generates.
    Cyclic { points: Vec<Complex64> },
    /// `|λ| = 1`, not a root of unity: the whole unit circle.
    Circle,
    /// `|λ| < 1`: `{λ^n} ∪ {0}`; `leading` lists the first powers.
    Geometric { lambda: Complex64, leading: Vec<Complex64> },
}

/// Largest cyclic order tested before a unimodular `λ` is declared irrational.
pub const MAX_CYCLIC_ORDER: usize = 4096;

pub fn rotation_spectrum(lambda: Complex64, tol: f64) -> Result<RotationSpectrum> {
    let r = lambda.norm();
    if r > 1.0 + tol {
        return Err(Error::InvalidArgument(format!("|lambda| = {r} exceeds 1")));
    }
    if r < 1.0 - tol {
        let leading = (0..16).map(|n| lambda.powu(n)).collect();
        return Ok(RotationSpectrum::Geometric { lambda, leading });
    }
    let unit = lambda / r;
    let mut p = unit;
    for order in 1..=MAX_CYCLIC_ORDER {
        if (p - ONE).norm() <= tol * order as f64 {
            let mut points: Vec<Complex64> = (0..order).map(|k| unit.powu(k as u32)).collect();
            sort_by_modulus_desc(&mut points);
            return Ok(RotationSpectrum::Cyclic { points });
        }
        p *= unit;
    }
    Ok(RotationSpectrum::Circle)
}

/// Gelfand sequence `‖P_N A^k P_N‖^{1/k}`, `k = 1..=k_max`, with the powers
/// formed from the `(M+1)`-compression.
pub fn spectral_radius_estimate(
    op: &OperatorSpec,
    space: &SpaceSpec,
    n: usize,
    m: usize,
    k_max: usize,
) -> Result<Vec<f64>> {
    if m < 2 * n {
        return Err(Error::OrderPolicy { n, m, required: 2 * n });
    }
    let a = block_entries(op, space, m, m)?;
    let mut x = CMatrix::from_fn(m + 1, n + 1, |i, j| if i == j { ONE } else { Complex64::new(0.0, 0.0) });
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        x = &a * &x;
        let s = spectral_norm(&x.rows(0, n + 1).into_owned());
        out.push(s.powf(1.0 / k as f64));
    }
    Ok(out)
}

/// Max `|cos|` between eigenvectors of a lower-triangular square block that
/// belong to distinct diagonal entries. `None` when fewer than two eigenvalues
/// are separated by more than `gap`.
pub fn triangular_eigvec_cosine(block: &CMatrix, gap: f64) -> Option<f64> {
    let n = block.nrows().min(block.ncols());
    let diag: Vec<Complex64> = (0..n).map(|i| block[(i, i)]).collect();
    let mut vecs: Vec<Vec<Complex64>> = Vec::new();
    for k in 0..n {
        let lam = diag[k];
        if diag[..k].iter().any(|d| (d - lam).norm() <= gap) {
            continue;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k] = ONE;
        let mut ok = true;
        for i in k + 1..n {
            let denom = lam - diag[i];
            if denom.norm() <= gap {
                ok = false;
                break;
            }
            let acc: Complex64 = (k..i).map(|j| block[(i, j)] * v[j]).sum();
            v[i] = acc / denom;
        }
        if ok && v.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            vecs.push(v);
        }
    }
    if vecs.len() < 2 {
        return None;
    }
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut best: f64 = 0.0;
    for p in 0..vecs.len() {
        for q in p + 1..vecs.len() {
            let inner: Complex64 = vecs[p].iter().zip(&vecs[q]).map(|(a, b)| a * b.conj()).sum();
            best = best.max(inner.norm() / (norm(&vecs[p]) * norm(&vecs[q])));
        }
    }
    Some(best)
}

/// Writes `re,im` rows with a header.
pub fn write_points_csv<W: Write>(points: &[Complex64], w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["re", "im"])?;
    for z in points {
        wtr.write_record([fmt_sig(z.re), fmt_sig(z.im)])?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opmat::build_block;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn comp(m: MoebiusMap) -> OperatorSpec {
        OperatorSpec::composition(m).unwrap()
    }

    #[test]
    fn truncation_eigenvalue_examples() {
        let h = SpaceSpec::Hardy;
        let ci = comp(MoebiusMap::rotation(c(0.0, 1.0)).unwrap());
        let ev = truncation_eigenvalues(&build_block(&ci, &h, 7, 7).unwrap());
        assert_eq!(ev.len(), 8);
        for p in [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)] {
            assert_eq!(ev.iter().filter(|z| (*z - p).norm() < 1e-12).count(), 2);
        }
        let half = comp(MoebiusMap::rotation(c(0.5, 0.0)).unwrap());
        let ev = truncation_eigenvalues(&build_block(&half, &h, 9, 9).unwrap());
        for (k, z) in ev.iter().enumerate() {
            assert!((z - c(0.5f64.powi(k as i32), 0.0)).norm() < 1e-14);
        }
        let phi = comp(MoebiusMap::from_real(1.0, 0.0, -1.0, 2.0).unwrap());
        let ev = truncation_eigenvalues(&build_block(&phi, &h, 20, 20).unwrap());
        assert!((ev[0] - c(1.0, 0.0)).norm() < 1e-9);
        assert!(ev.iter().any(|z| (z - c(0.5f64.powi(6), 0.0)).norm() < 1e-9));
    }

    #[test]
    fn spiral_examples() {
        let s = spiral_curve(c(1.0, 0.0), 4.0, 64).unwrap();
        assert_eq!(s.samples[0], c(1.0, 0.0));
        for (b, z) in s.betas.iter().zip(&s.samples) {
            assert!((z - c((-b).exp(), 0.0)).norm() < 1e-15 && z.norm() <= 1.0);
        }
        let s = spiral_curve(c(1.0, 1.0), std::f64::consts::PI, 2).unwrap();
        let expect = c(-(-std::f64::consts::PI).exp(), 0.0);
        assert!((s.samples[1] - expect).norm() < 1e-15);
        assert!(spiral_curve(c(0.0, 1.0), 1.0, 10).is_err());
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("beta,re,im\n"));
    }

    #[test]
    fn eigenpair_examples() {
        let p = parabolic_eigenpair(c(1.0, 0.0), c(1.0, 0.0), 0.0).unwrap();
        assert_eq!(p.eigenvalue, c(1.0, 0.0));
        let s = p.eigenfunction.taylor(5).unwrap();
        assert!((s[0] - c(1.0, 0.0)).norm() < 1e-15 && s[3].norm() < 1e-15);
        let p = parabolic_eigenpair(c(1.0, 0.0), c(1.0, 0.0), 1.0).unwrap();
        assert!((p.eigenvalue.re - 0.367879441171442).abs() < 1e-14);
        let p = parabolic_eigenpair(c(1.0, 0.0), c(1.0, 0.5), 2.0).unwrap();
        let expect = (-2f64).exp() * c(1f64.cos(), -1f64.sin());
        assert!((p.eigenvalue - expect).norm() < 1e-15);
        assert!(parabolic_eigenpair(c(1.0, 0.0), c(1.0, 0.0), -1.0).is_err());
        assert!(parabolic_eigenpair(c(1.0, 0.0), c(0.0, 1.0), 1.0).is_err());
        // eigenvalues lie on the spiral
        let t = c(0.3, 2.0);
        for b in RESIDUAL_BETAS {
            let e = parabolic_eigenpair(c(0.0, 1.0), t, b).unwrap().eigenvalue;
            assert!((e - (-t * b).exp()).norm() <= 1e-12);
        }
    }

    #[test]
    fn eigen_residual_grid() {
        assert_eq!(eigen_residual(c(1.0, 0.0), c(1.0, 0.0), 0.0, 100).unwrap(), 0.0);
        let mut worst: f64 = 0.0;
        for zeta in residual_zetas() {
            for t in residual_translations() {
                for b in RESIDUAL_BETAS {
                    worst = worst.max(eigen_residual(zeta, t, b, 400).unwrap());
                }
            }
        }
        assert!(worst <= 1e-10, "{worst:e}");
    }

    #[test]
    fn rotation_spectrum_examples() {
        match rotation_spectrum(c(0.0, 1.0), 1e-10).unwrap() {
            RotationSpectrum::Cyclic { points } => assert_eq!(points.len(), 4),
            other => panic!("{other:?}"),
        }
        match rotation_spectrum(c(0.5, 0.0), 1e-10).unwrap() {
            RotationSpectrum::Geometric { leading, .. } => assert!((leading[3] - c(0.125, 0.0)).norm() < 1e-15),
            other => panic!("{other:?}"),
        }
        let irr = Complex64::from_polar(1.0, std::f64::consts::PI * 2f64.sqrt());
        assert_eq!(rotation_spectrum(irr, 1e-10).unwrap(), RotationSpectrum::Circle);
        assert!(rotation_spectrum(c(1.5, 0.0), 1e-10).is_err());
    }

    #[test]
    fn gelfand_sequences() {
        let h = SpaceSpec::Hardy;
        let rot = comp(MoebiusMap::rotation(c(0.6, 0.8)).unwrap());
        for v in spectral_radius_estimate(&rot, &h, 8, 16, 6).unwrap() {
            assert!((v - 1.0).abs() < 1e-14);
        }
        let half = comp(MoebiusMap::rotation(c(0.5, 0.0)).unwrap());
        for v in spectral_radius_estimate(&half, &h, 8, 16, 6).unwrap() {
            assert!((v - 1.0).abs() < 1e-14);
        }
        // powers of a composition operator are compositions with iterates
        let phi = MoebiusMap::parabolic_from(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let op = comp(phi);
        let seq = spectral_radius_estimate(&op, &h, 16, 320, 6).unwrap();
        let exact = build_block(&op.power(6).unwrap(), &h, 16, 16).unwrap().square();
        assert!((spectral_norm(&exact).powf(1.0 / 6.0) - seq[5]).abs() < 1e-10);
    }

    #[test]
    fn hyperbolic_type_eigenvectors_are_not_orthogonal() {
        let phi = comp(MoebiusMap::from_real(1.0, 0.0, -1.0, 2.0).unwrap());
        let b = build_block(&phi, &SpaceSpec::Hardy, 12, 12).unwrap().square();
        let cos = triangular_eigvec_cosine(&b, 1e-12).unwrap();
        assert!(cos > 0.0 && cos <= 1.0 + 1e-12);
        let diag = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(0.5, 0.0)]));
        assert_eq!(triangular_eigvec_cosine(&diag, 1e-12), Some(0.0));
    }
}
