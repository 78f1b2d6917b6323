//! The Hardy space and the weighted Bergman spaces as sequence spaces over the
//! monomials.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::AnalyticExpr;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "RawSpace")]
pub enum SpaceSpec {
    Hardy,
    /// `A²_α`, `α > -1`.
    Bergman { alpha: f64 },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawSpace {
    Hardy,
    Bergman { alpha: f64 },
}

impl TryFrom<RawSpace> for SpaceSpec {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        match raw {
            RawSpace::Hardy => Ok(SpaceSpec::Hardy),
            RawSpace::Bergman { alpha } => SpaceSpec::bergman(alpha),
        }
    }
}

/// `b_n = ‖z^n‖` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisNorms {
    sq: Vec<f64>,
}

impl BasisNorms {
    pub fn norm_sq(&self, n: usize) -> f64 {
        self.sq[n]
    }

    pub fn norm(&self, n: usize) -> f64 {
        self.sq[n].sqrt()
    }

    pub fn len(&self) -> usize {
        self.sq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sq.is_empty()
    }

    pub fn norms(&self) -> Vec<f64> {
        self.sq.iter().map(|s| s.sqrt()).collect()
    }
}

impl SpaceSpec {
    pub fn bergman(alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!("Bergman weight must satisfy alpha > -1, got {alpha}")));
        }
        Ok(SpaceSpec::Bergman { alpha })
    }

    /// Kernel exponent: `K_w = (1 - w̄z)^(-γ)`.
    pub fn gamma(&self) -> f64 {
        match self {
            SpaceSpec::Hardy => 1.0,
            SpaceSpec::Bergman { alpha } => alpha + 2.0,
        }
    }

    pub fn basis_norm_sq(&self, n: usize) -> f64 {
        self.basis_norms(n).norm_sq(n)
    }

    /// Squared norms by the ratio `b_{n+1}²/b_n² = (n+1)/(n+α+2)`.
    pub fn basis_norms(&self, n_max: usize) -> BasisNorms {
        let mut sq = Vec::with_capacity(n_max + 1);
        sq.push(1.0);
        match self {
            SpaceSpec::Hardy => sq.resize(n_max + 1, 1.0),
            SpaceSpec::Bergman { alpha } => {
                for n in 0..n_max {
                    let r = (n as f64 + 1.0) / (n as f64 + alpha + 2.0);
                    sq.push(sq[n] * r);
                }
            }
        }
        BasisNorms { sq }
    }

    pub fn kernel_expr(&self, w: Complex64) -> Result<AnalyticExpr> {
        check_inside(w)?;
        let base = AnalyticExpr::poly(vec![Complex64::new(1.0, 0.0), -w.conj()]);
        AnalyticExpr::power(base, -self.gamma())
    }

    /// `‖K_w‖² = K_w(w) = (1 - |w|²)^(-γ)`.
    pub fn kernel_norm_sq(&self, w: Complex64) -> Result<f64> {
        check_inside(w)?;
        Ok((1.0 - w.norm_sqr()).powf(-self.gamma()))
    }
}

fn check_inside(w: Complex64) -> Result<()> {
    if w.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisk(w))
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceSpec::Hardy => write!(f, "hardy"),
            SpaceSpec::Bergman { alpha } => write!(f, "bergman:{alpha}"),
        }
    }
}

impl FromStr for SpaceSpec {
    type Err = Error;

    /// `hardy` or `bergman:<alpha>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("hardy") {
            return Ok(SpaceSpec::Hardy);
        }
        match s.split_once(':') {
            Some((kind, alpha)) if kind.eq_ignore_ascii_case("bergman") => {
                let alpha: f64 = alpha
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad Bergman weight in {s:?}")))?;
                SpaceSpec::bergman(alpha)
            }
            _ => Err(Error::InvalidArgument(format!("unknown space {s:?}; use hardy or bergman:<alpha>"))),
        }
    }
}
