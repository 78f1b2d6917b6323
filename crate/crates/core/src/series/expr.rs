use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::power_series::PowerSeries;
use crate::error::{Error, Result};
use crate::mobius::MoebiusMap;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Closed-form analytic function on the disk, the source of every Taylor
/// coefficient used by the operator blocks.
///
/// JSON form is internally tagged by `kind`, e.g.
/// `{"kind":"rational","num":[[1,0]],"den":[[1,0],[-0.5,0]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnalyticExpr {
    Poly {
        coeffs: Vec<Complex64>,
    },
    /// `num/den` with `den(0) != 0`.
    Rational {
        num: Vec<Complex64>,
        den: Vec<Complex64>,
    },
    /// Principal branch of `base^exponent`; `base(0)` must be nonzero and, for
    /// non-integer exponents, off the closed negative real axis.
    Power {
        base: Box<AnalyticExpr>,
        exponent: f64,
    },
    Exp {
        arg: Box<AnalyticExpr>,
    },
    Sum {
        terms: Vec<AnalyticExpr>,
    },
    Product {
        factors: Vec<AnalyticExpr>,
    },
    Scale {
        factor: Complex64,
        expr: Box<AnalyticExpr>,
    },
    /// `expr ∘ map`.
    Precompose {
        expr: Box<AnalyticExpr>,
        map: MoebiusMap,
    },
}

fn is_integer(x: f64) -> bool {
    x.fract() == 0.0 && x.abs() < i32::MAX as f64
}

fn poly_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    p.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

fn poly_mul(p: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn poly_pow(p: &[Complex64], k: usize) -> Vec<Complex64> {
    (0..k).fold(vec![ONE], |acc, _| poly_mul(&acc, p))
}

fn degree(p: &[Complex64]) -> usize {
    p.iter().rposition(|c| *c != ZERO).unwrap_or(0)
}

/// Numerator of `p(m(z)) (cz + d)^n`, `n >= deg p`.
fn homogenize(p: &[Complex64], m: &MoebiusMap, n: usize) -> Vec<Complex64> {
    let top = [m.b, m.a];
    let bottom = [m.d, m.c];
    let mut out = vec![ZERO; n + 1];
    for (k, pk) in p.iter().enumerate().take(degree(p) + 1) {
        if *pk == ZERO {
            continue;
        }
        let term = poly_mul(&poly_pow(&top, k), &poly_pow(&bottom, n - k));
        for (o, t) in out.iter_mut().zip(term) {
            *o += pk * t;
        }
    }
    out
}

fn check_denominator(den: &[Complex64]) -> Result<()> {
    let scale = den.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let d0 = den.first().copied().unwrap_or(ZERO);
    if scale == 0.0 || d0.norm() <= 1e-14 * scale {
        return Err(Error::Series("denominator vanishes at 0".into()));
    }
    Ok(())
}

fn check_power_base(b0: Complex64, exponent: f64) -> Result<()> {
    if b0.norm() == 0.0 {
        return Err(Error::Series("power base vanishes at 0".into()));
    }
    if !is_integer(exponent) && b0.re <= 0.0 && b0.im.abs() <= 1e-14 * b0.norm() {
        return Err(Error::Series(format!(
            "power base value {b0} at 0 lies on the branch cut for exponent {exponent}"
        )));
    }
    Ok(())
}

fn principal_pow(b: Complex64, exponent: f64) -> Complex64 {
    if is_integer(exponent) {
        b.powi(exponent as i32)
    } else {
        b.powf(exponent)
    }
}

impl AnalyticExpr {
    pub fn poly(coeffs: Vec<Complex64>) -> Self {
        AnalyticExpr::Poly { coeffs }
    }

    pub fn poly_real(coeffs: &[f64]) -> Self {
        AnalyticExpr::Poly { coeffs: coeffs.iter().map(|&c| c.into()).collect() }
    }

    pub fn constant(c: Complex64) -> Self {
        AnalyticExpr::Poly { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    /// The identity function `z`.
    pub fn z() -> Self {
        AnalyticExpr::Poly { coeffs: vec![ZERO, ONE] }
    }

    pub fn rational(num: Vec<Complex64>, den: Vec<Complex64>) -> Result<Self> {
        check_denominator(&den)?;
        Ok(AnalyticExpr::Rational { num, den })
    }

    pub fn rational_real(num: &[f64], den: &[f64]) -> Result<Self> {
        Self::rational(
            num.iter().map(|&c| c.into()).collect(),
            den.iter().map(|&c| c.into()).collect(),
        )
    }

    /// The Möbius map itself as a rational function.
    pub fn moebius(m: &MoebiusMap) -> Result<Self> {
        Self::rational(vec![m.b, m.a], vec![m.d, m.c])
    }

    pub fn power(base: AnalyticExpr, exponent: f64) -> Result<Self> {
        check_power_base(base.eval(ZERO), exponent)?;
        Ok(AnalyticExpr::Power { base: Box::new(base), exponent })
    }

    pub fn exp(arg: AnalyticExpr) -> Self {
        AnalyticExpr::Exp { arg: Box::new(arg) }
    }

    pub fn sum(terms: Vec<AnalyticExpr>) -> Self {
        AnalyticExpr::Sum { terms }
    }

    pub fn product(factors: Vec<AnalyticExpr>) -> Self {
        AnalyticExpr::Product { factors }
    }

    pub fn scale(factor: Complex64, expr: AnalyticExpr) -> Self {
        AnalyticExpr::Scale { factor, expr: Box::new(expr) }
    }

    pub fn precompose(expr: AnalyticExpr, map: MoebiusMap) -> Self {
        AnalyticExpr::Precompose { expr: Box::new(expr), map }
    }

    /// Closed-form value at `z`. Powers use the principal branch pointwise,
    /// which can differ by a phase from the analytic continuation of the
    /// series, but never in modulus for real exponents.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            AnalyticExpr::Poly { coeffs } => poly_eval(coeffs, z),
            AnalyticExpr::Rational { num, den } => poly_eval(num, z) / poly_eval(den, z),
            AnalyticExpr::Power { base, exponent } => principal_pow(base.eval(z), *exponent),
            AnalyticExpr::Exp { arg } => arg.eval(z).exp(),
            AnalyticExpr::Sum { terms } => terms.iter().map(|t| t.eval(z)).sum(),
            AnalyticExpr::Product { factors } => factors.iter().map(|t| t.eval(z)).product(),
            AnalyticExpr::Scale { factor, expr } => factor * expr.eval(z),
            AnalyticExpr::Precompose { expr, map } => match map.eval(z) {
                Some(w) => expr.eval(w),
                None => Complex64::new(f64::NAN, f64::NAN),
            },
        }
    }

    /// Rewrites `self ∘ m` into a Möbius-free expression; rational leaves
    /// absorb the map.
    pub fn compose_with(&self, m: &MoebiusMap) -> Result<AnalyticExpr> {
        Ok(match self {
            AnalyticExpr::Poly { coeffs } => {
                let n = degree(coeffs);
                if n == 0 {
                    AnalyticExpr::Poly { coeffs: coeffs.clone() }
                } else {
                    let num = homogenize(coeffs, m, n);
                    let den = poly_pow(&[m.d, m.c], n);
                    AnalyticExpr::rational(num, den)?
                }
            }
            AnalyticExpr::Rational { num, den } => {
                let n = degree(num).max(degree(den));
                AnalyticExpr::rational(homogenize(num, m, n), homogenize(den, m, n))?
            }
            AnalyticExpr::Power { base, exponent } => AnalyticExpr::Power {
                base: Box::new(base.compose_with(m)?),
                exponent: *exponent,
            },
            AnalyticExpr::Exp { arg } => AnalyticExpr::Exp { arg: Box::new(arg.compose_with(m)?) },
            AnalyticExpr::Sum { terms } => AnalyticExpr::Sum {
                terms: terms.iter().map(|t| t.compose_with(m)).collect::<Result<_>>()?,
            },
            AnalyticExpr::Product { factors } => AnalyticExpr::Product {
                factors: factors.iter().map(|t| t.compose_with(m)).collect::<Result<_>>()?,
            },
            AnalyticExpr::Scale { factor, expr } => AnalyticExpr::Scale {
                factor: *factor,
                expr: Box::new(expr.compose_with(m)?),
            },
            AnalyticExpr::Precompose { expr, map } => expr.compose_with(&map.compose(m))?,
        })
    }

    /// Equivalent expression with every `Precompose` node eliminated.
    pub fn normalize(&self) -> Result<AnalyticExpr> {
        Ok(match self {
            AnalyticExpr::Precompose { expr, map } => expr.compose_with(map)?,
            AnalyticExpr::Power { base, exponent } => AnalyticExpr::Power {
                base: Box::new(base.normalize()?),
                exponent: *exponent,
            },
            AnalyticExpr::Exp { arg } => AnalyticExpr::Exp { arg: Box::new(arg.normalize()?) },
            AnalyticExpr::Sum { terms } => AnalyticExpr::Sum {
                terms: terms.iter().map(|t| t.normalize()).collect::<Result<_>>()?,
            },
            AnalyticExpr::Product { factors } => AnalyticExpr::Product {
                factors: factors.iter().map(|t| t.normalize()).collect::<Result<_>>()?,
            },
            AnalyticExpr::Scale { factor, expr } => AnalyticExpr::Scale {
                factor: *factor,
                expr: Box::new(expr.normalize()?),
            },
            leaf => leaf.clone(),
        })
    }

    pub fn is_moebius_free(&self) -> bool {
        match self {
            AnalyticExpr::Precompose { .. } => false,
            AnalyticExpr::Poly { .. } | AnalyticExpr::Rational { .. } => true,
            AnalyticExpr::Power { base, .. } => base.is_moebius_free(),
            AnalyticExpr::Exp { arg } => arg.is_moebius_free(),
            AnalyticExpr::Sum { terms } => terms.iter().all(Self::is_moebius_free),
            AnalyticExpr::Product { factors } => factors.iter().all(Self::is_moebius_free),
            AnalyticExpr::Scale { expr, .. } => expr.is_moebius_free(),
        }
    }

    /// Taylor coefficients `c_0..c_order`.
    pub fn taylor(&self, order: usize) -> Result<PowerSeries> {
        self.normalize()?.taylor_normalized(order)
    }

    fn taylor_normalized(&self, order: usize) -> Result<PowerSeries> {
        match self {
            AnalyticExpr::Poly { coeffs } => Ok(PowerSeries::from_slice(coeffs, order)),
            AnalyticExpr::Rational { num, den } => {
                check_denominator(den)?;
                Ok(divide(&PowerSeries::from_slice(num, order), &PowerSeries::from_slice(den, order)))
            }
            AnalyticExpr::Power { base, exponent } => {
                let b = base.taylor_normalized(order)?;
                check_power_base(b[0], *exponent)?;
                Ok(power_series_pow(&b, *exponent))
            }
            AnalyticExpr::Exp { arg } => Ok(power_series_exp(&arg.taylor_normalized(order)?)),
            AnalyticExpr::Sum { terms } => terms.iter().try_fold(PowerSeries::zeros(order), |acc, t| {
                Ok(&acc + &t.taylor_normalized(order)?)
            }),
            AnalyticExpr::Product { factors } => {
                factors.iter().try_fold(PowerSeries::constant(ONE, order), |acc, t| {
                    Ok(acc.mul(&t.taylor_normalized(order)?))
                })
            }
            AnalyticExpr::Scale { factor, expr } => Ok(expr.taylor_normalized(order)?.scale(*factor)),
            AnalyticExpr::Precompose { .. } => self.normalize()?.taylor_normalized(order),
        }
    }
}

/// Long division `num/den`, `den[0] != 0`.
fn divide(num: &PowerSeries, den: &PowerSeries) -> PowerSeries {
    let order = num.order().min(den.order());
    let d = den.coeffs();
    let mut q: Vec<Complex64> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut acc = num[n];
        for k in 1..=n {
            acc -= d[k] * q[n - k];
        }
        q.push(acc / d[0]);
    }
    PowerSeries::new(q)
}

/// `exp(s)` from `n e_n = sum_{k=1}^n k s_k e_{n-k}`.
fn power_series_exp(s: &PowerSeries) -> PowerSeries {
    let order = s.order();
    let sc = s.coeffs();
    let mut e: Vec<Complex64> = Vec::with_capacity(order + 1);
    e.push(sc[0].exp());
    for n in 1..=order {
        let mut acc = ZERO;
        for k in 1..=n {
            acc += sc[k] * e[n - k] * k as f64;
        }
        e.push(acc / n as f64);
    }
    PowerSeries::new(e)
}

/// `b^gamma` from `P' B = gamma B' P`:
/// `n b_0 p_n = sum_{k=1}^n (gamma k - (n - k)) b_k p_{n-k}`.
fn power_series_pow(b: &PowerSeries, gamma: f64) -> PowerSeries {
    let order = b.order();
    let bc = b.coeffs();
    let mut p: Vec<Complex64> = Vec::with_capacity(order + 1);
    p.push(principal_pow(bc[0], gamma));
    for n in 1..=order {
        let mut acc = ZERO;
        for k in 1..=n {
            acc += bc[k] * p[n - k] * (gamma * k as f64 - (n - k) as f64);
        }
        p.push(acc / (bc[0] * n as f64));
    }
    PowerSeries::new(p)
}
