use std::io::Write;
use std::ops::{Add, Index, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::MoebiusMap;
use crate::space::SpaceSpec;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative size at which a decaying sequence is indistinguishable from
/// accumulated rounding.
const NOISE_FLOOR: f64 = 1e-13;

/// Ratio above which a coefficient sequence is treated as boundary-singular.
pub const SLOW_DECAY_RATIO: f64 = 0.95;

/// Taylor polynomial `c_0 + c_1 z + ... + c_M z^M` of a germ at 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<Complex64>,
}

/// Decay diagnostics for a truncated coefficient sequence.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailDiagnostics {
    /// Empirical per-index decay ratio.
    pub ratio: f64,
    /// Geometric extrapolation of the l2 norm of the discarded coefficients;
    /// infinite when the sequence does not decay.
    #[serde(with = "crate::serde_ext")]
    pub tail_bound: f64,
    pub slow_decay: bool,
}

impl PowerSeries {
    /// Series with the given coefficients; an empty list means the zero series
    /// of order 0.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        PowerSeries { coeffs }
    }

    pub fn zeros(order: usize) -> Self {
        PowerSeries { coeffs: vec![ZERO; order + 1] }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = c;
        s
    }

    /// Pads with zeros or truncates a coefficient list to exactly `order + 1` terms.
    pub fn from_slice(coeffs: &[Complex64], order: usize) -> Self {
        let mut out = Self::zeros(order);
        for (dst, src) in out.coeffs.iter_mut().zip(coeffs) {
            *dst = *src;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn truncated(&self, order: usize) -> Self {
        Self::from_slice(&self.coeffs, order)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Cauchy product truncated to the smaller of the two orders.
    pub fn mul(&self, other: &PowerSeries) -> Self {
        let order = self.order().min(other.order());
        let x = &self.coeffs;
        let y = &other.coeffs;
        let coeffs = (0..=order)
            .map(|n| (0..=n).map(|k| x[k] * y[n - k]).sum())
            .collect();
        PowerSeries { coeffs }
    }

    /// Multiplication by `z`, keeping the order.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        PowerSeries { coeffs }
    }

    /// Product with the Taylor series of `(az + b)/(cz + d)`, from
    /// `(cz + d) y = (az + b) x`. Linear time; stable for self-maps since
    /// `|c| < |d|`.
    pub fn mul_moebius(&self, m: &MoebiusMap) -> Result<Self> {
        if m.d.norm() <= 1e-300 {
            return Err(Error::Pole(ZERO));
        }
        let x = &self.coeffs;
        let mut y = Vec::with_capacity(x.len());
        let mut prev_x = ZERO;
        let mut prev_y = ZERO;
        for &xn in x {
            let yn = (m.b * xn + m.a * prev_x - m.c * prev_y) / m.d;
            y.push(yn);
            prev_x = xn;
            prev_y = yn;
        }
        Ok(PowerSeries { coeffs: y })
    }

    /// Horner evaluation of the Taylor polynomial.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Partial norm `sqrt(sum |c_n|^2 b_n^2)` in `space`.
    pub fn norm_in(&self, space: &SpaceSpec) -> f64 {
        let b = space.basis_norms(self.order());
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm_sqr() * b.norm_sq(n))
            .sum::<f64>()
            .sqrt()
    }

    pub fn tail_ratio(&self) -> Result<TailDiagnostics> {
        if self.order() < 16 {
            return Err(Error::InvalidArgument(format!(
                "tail diagnostics need order >= 16, got {}",
                self.order()
            )));
        }
        Ok(tail_diagnostics(&self.coeffs))
    }

    /// Writes `index,re,im` rows with a header.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["index", "re", "im"])?;
        for (n, c) in self.coeffs.iter().enumerate() {
            wtr.write_record([n.to_string(), fmt_sig(c.re), fmt_sig(c.im)])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Twelve significant digits, the fixed precision of all text output.
pub fn fmt_sig(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

/// Decay ratio `(|back half| / |front half|)^(1/len(back))` and a geometric
/// estimate of the norm of everything beyond the last entry.
pub fn tail_diagnostics(values: &[Complex64]) -> TailDiagnostics {
    let half = values.len() / 2;
    let front = l2(&values[..half]);
    let back = l2(&values[half..]);
    let steps = (values.len() - half) as f64;
    if back == 0.0 {
        return TailDiagnostics { ratio: 0.0, tail_bound: 0.0, slow_decay: false };
    }
    if front == 0.0 {
        return TailDiagnostics { ratio: 1.0, tail_bound: f64::INFINITY, slow_decay: true };
    }
    let ratio = (back / front).powf(1.0 / steps);
    let tail_bound = sequence_tail(values);
    TailDiagnostics { ratio, tail_bound, slow_decay: ratio > SLOW_DECAY_RATIO }
}

/// Extrapolated l2 norm of the continuation of `values` past its end, from the
/// norms of the last two quarters treated as a geometric progression.
pub fn sequence_tail(values: &[Complex64]) -> f64 {
    let n = values.len();
    let q = (n / 4).max(1);
    if n < 2 * q {
        return l2(values);
    }
    let last = l2(&values[n - q..]);
    let before = l2(&values[n - 2 * q..n - q]);
    if last == 0.0 {
        return 0.0;
    }
    // Decay has hit rounding level; what follows is noise of the same size.
    if last <= NOISE_FLOOR * l2(values) {
        return last;
    }
    if before == 0.0 {
        return f64::INFINITY;
    }
    let rho = (last / before).powi(2);
    if rho >= 1.0 {
        f64::INFINITY
    } else {
        last * (rho / (1.0 - rho)).sqrt()
    }
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

impl Index<usize> for PowerSeries {
    type Output = Complex64;

    fn index(&self, n: usize) -> &Complex64 {
        &self.coeffs[n]
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=order).map(|n| self.coeffs[n] + rhs.coeffs[n]).collect() }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        PowerSeries { coeffs: (0..=order).map(|n| self.coeffs[n] - rhs.coeffs[n]).collect() }
    }
}

/// Series of `m^0, m^1, ..., m^n`, each to order `order`.
pub fn moebius_powers(m: &MoebiusMap, n: usize, order: usize) -> Result<Vec<PowerSeries>> {
    if m.d.norm() <= 1e-300 {
        return Err(Error::Pole(ZERO));
    }
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = PowerSeries::constant(Complex64::new(1.0, 0.0), order);
    for _ in 0..n {
        let next = cur.mul_moebius(m)?;
        out.push(cur);
        cur = next;
    }
    out.push(cur);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn brute_convolution(x: &[Complex64], y: &[Complex64], order: usize) -> Vec<Complex64> {
        let mut out = vec![ZERO; order + 1];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                if i + j <= order {
                    out[i + j] += a * b;
                }
            }
        }
        out
    }

    #[test]
    fn moebius_power_examples() {
        let lam = Complex64::new(0.3, 0.4);
        let pw = moebius_powers(&MoebiusMap::rotation(lam).unwrap(), 4, 6).unwrap();
        for (j, s) in pw.iter().enumerate() {
            for n in 0..=6 {
                let expect = if n == j { lam.powu(j as u32) } else { ZERO };
                assert!((s[n] - expect).norm() < 1e-15);
            }
        }
        let m = MoebiusMap::from_real(1.0, 0.0, -1.0, 2.0).unwrap();
        let pw = moebius_powers(&m, 2, 3).unwrap();
        let expect1 = [0.0, 0.5, 0.25, 0.125];
        let expect2 = [0.0, 0.0, 0.25, 0.25];
        for n in 0..=3 {
            assert!((pw[1][n] - c(expect1[n])).norm() < 1e-15);
            assert!((pw[2][n] - c(expect2[n])).norm() < 1e-15);
        }
        let pole = MoebiusMap::from_real(1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(matches!(moebius_powers(&pole, 2, 3), Err(Error::Pole(_))));
    }

    #[test]
    fn moebius_powers_match_cauchy_products() {
        let m = MoebiusMap::from_real(2.0, 1.0, 1.0, 3.0).unwrap();
        let pw = moebius_powers(&m, 6, 40).unwrap();
        let base = pw[1].clone();
        let mut acc = PowerSeries::constant(c(1.0), 40);
        for s in &pw {
            for n in 0..=40 {
                assert!((s[n] - acc[n]).norm() < 1e-14);
            }
            acc = acc.mul(&base);
        }
    }

    #[test]
    fn norm_examples() {
        let s = PowerSeries::new(vec![c(1.0), c(1.0), c(0.0)]);
        assert!((s.norm_in(&SpaceSpec::Hardy) - 2f64.sqrt()).abs() < 1e-15);
        let berg = SpaceSpec::bergman(0.0).unwrap();
        assert!((s.norm_in(&berg) - 1.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn tail_ratio_examples() {
        let geo = PowerSeries::new((0..64).map(|n| c(0.5f64.powi(n))).collect());
        let d = geo.tail_ratio().unwrap();
        assert!((d.ratio - 0.5).abs() < 1e-3);
        assert!(!d.slow_decay);
        let poly = PowerSeries::from_slice(&[c(1.0), c(2.0), c(3.0)], 40);
        let d = poly.tail_ratio().unwrap();
        assert_eq!(d.ratio, 0.0);
        assert_eq!(d.tail_bound, 0.0);
        assert!(PowerSeries::zeros(10).tail_ratio().is_err());
        assert_eq!(PowerSeries::zeros(20).tail_ratio().unwrap().ratio, 0.0);
    }

    #[test]
    fn tail_at_rounding_plateau_is_finite() {
        let mut v: Vec<Complex64> = (0..60).map(|n| c(0.5f64.powi(n))).collect();
        v.extend((0..100).map(|k| c(if k % 2 == 0 { 1e-17 } else { -1e-17 })));
        let t = sequence_tail(&v);
        assert!(t.is_finite() && t < 1e-15);
        let flat = vec![c(1.0); 40];
        assert!(sequence_tail(&flat).is_infinite());
    }

    #[test]
    fn csv_export() {
        let s = PowerSeries::new(vec![c(1.0), Complex64::new(0.5, -0.25)]);
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "index,re,im");
        assert_eq!(lines[2], "1,5.00000000000e-1,-2.50000000000e-1");
    }

    fn small_poly() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..12)
            .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
    }

    proptest! {
        #[test]
        fn cauchy_product_matches_convolution(x in small_poly(), y in small_poly()) {
            let order = 14;
            let px = PowerSeries::from_slice(&x, order);
            let py = PowerSeries::from_slice(&y, order);
            let prod = px.mul(&py);
            let brute = brute_convolution(&x, &y, order);
            for n in 0..=order {
                prop_assert!((prod[n] - brute[n]).norm() < 1e-12);
            }
        }

        #[test]
        fn products_are_bilinear(x in small_poly(), y in small_poly(), z in small_poly(), k in -3.0f64..3.0) {
            let order = 12;
            let (px, py, pz) = (
                PowerSeries::from_slice(&x, order),
                PowerSeries::from_slice(&y, order),
                PowerSeries::from_slice(&z, order),
            );
            let lhs = (&px.scale(c(k)) + &py).mul(&pz);
            let rhs = &px.mul(&pz).scale(c(k)) + &py.mul(&pz);
            for n in 0..=order {
                prop_assert!((lhs[n] - rhs[n]).norm() < 1e-11);
            }
        }
    }
}
