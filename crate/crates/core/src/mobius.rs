//! Linear fractional self-maps of the unit disk.
//!
//! A [`MoebiusMap`] stores the four coefficients of `z -> (az + b)/(cz + d)`
//! without normalization. Every decision that involves a tolerance is taken on
//! the projectively normalized coefficients (unit Euclidean norm), so results do
//! not depend on how a map was scaled.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for boundary and containment decisions.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Discriminants below this size are treated as exact double roots without
/// raising the borderline flag.
const ROUNDING_DISC: f64 = 1e-14;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A point of the extended complex plane. Serializes as `[re, im]` or the
/// string `"infinity"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ext {
    Finite(Complex64),
    Infinity,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ExtRepr {
    Finite(Complex64),
    Named(String),
}

impl Serialize for Ext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Ext::Finite(z) => ExtRepr::Finite(z).serialize(s),
            Ext::Infinity => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match ExtRepr::deserialize(d)? {
            ExtRepr::Finite(z) => Ok(Ext::Finite(z)),
            ExtRepr::Named(n) if n == "infinity" => Ok(Ext::Infinity),
            ExtRepr::Named(n) => Err(serde::de::Error::custom(format!("unknown point {n:?}"))),
        }
    }
}

impl Ext {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Ext::Finite(z) => Some(z),
            Ext::Infinity => None,
        }
    }
}

impl From<Complex64> for Ext {
    fn from(z: Complex64) -> Self {
        Ext::Finite(z)
    }
}

/// `z -> (az + b)/(cz + d)` with `ad - bc != 0`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawMap")]
pub struct MoebiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

#[derive(Deserialize)]
struct RawMap {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
}

impl TryFrom<RawMap> for MoebiusMap {
    type Error = Error;

    fn try_from(r: RawMap) -> Result<Self> {
        MoebiusMap::new(r.a, r.b, r.c, r.d)
    }
}

/// Image of the unit circle when it is a genuine circle (`|d| != |c|`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImageCircle {
    pub center: Complex64,
    pub radius: f64,
    /// True when the pole lies outside the closed disk, so the open disk maps
    /// onto the interior of the circle.
    pub bounded: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPoint {
    pub location: Ext,
    pub multiplicity: u8,
    /// Planar derivative `(ad - bc)/(cz + d)^2`; `None` at infinity.
    pub derivative: Option<Complex64>,
}

/// Fixed points on the extended plane, counted with multiplicity (always two
/// in total for a non-identity map).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedPointData {
    pub points: Vec<FixedPoint>,
    /// Set when a double root was declared from a discriminant that is small
    /// but above rounding level.
    pub borderline: bool,
}

impl FixedPointData {
    pub fn total_multiplicity(&self) -> u32 {
        self.points.iter().map(|p| p.multiplicity as u32).sum()
    }

    pub fn finite(&self) -> impl Iterator<Item = &FixedPoint> {
        self.points.iter().filter(|p| matches!(p.location, Ext::Finite(_)))
    }
}

/// Attracting fixed point in the closed disk.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DWPoint {
    pub location: Complex64,
    pub derivative: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapClass {
    Identity,
    EllipticAutomorphism,
    HyperbolicAutomorphism,
    ParabolicAutomorphism,
    ParabolicNonAutomorphism,
    /// Boundary Denjoy-Wolff point with derivative strictly below 1.
    HyperbolicTypeNonAutomorphism,
    InteriorDWNoBoundaryFixedPoint,
    InteriorDWWithBoundaryFixedPoint,
}

impl MapClass {
    pub fn is_automorphism(self) -> bool {
        matches!(
            self,
            MapClass::Identity
                | MapClass::EllipticAutomorphism
                | MapClass::HyperbolicAutomorphism
                | MapClass::ParabolicAutomorphism
        )
    }

    pub fn is_parabolic(self) -> bool {
        matches!(self, MapClass::ParabolicAutomorphism | MapClass::ParabolicNonAutomorphism)
    }

    /// Attracting fixed point on the unit circle: parabolic and hyperbolic
    /// types. Operator blocks for these symbols need extra internal order.
    pub fn has_boundary_dw(self) -> bool {
        matches!(
            self,
            MapClass::HyperbolicAutomorphism
                | MapClass::ParabolicAutomorphism
                | MapClass::ParabolicNonAutomorphism
                | MapClass::HyperbolicTypeNonAutomorphism
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: MapClass,
    /// The decision fell within `tol` of a class boundary and was resolved by
    /// policy (toward the parabolic class).
    pub borderline: bool,
}

/// Everything the `classify` front end reports about a map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapReport {
    pub map: MoebiusMap,
    pub class: MapClass,
    pub borderline: bool,
    pub fixed_points: Option<FixedPointData>,
    pub denjoy_wolff: Option<DWPoint>,
    pub boundary_fixed_points: Vec<Complex64>,
    pub translation_number: Option<Complex64>,
}

impl MoebiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let m = MoebiusMap { a, b, c, d };
        let scale = m.coefficient_norm_sq();
        let det = m.det().norm();
        if !scale.is_finite() || scale == 0.0 || !(det > 1e-14 * scale) {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        MoebiusMap { a: ONE, b: ZERO, c: ZERO, d: ONE }
    }

    /// `z -> lambda z`.
    pub fn rotation(lambda: Complex64) -> Result<Self> {
        Self::new(lambda, ZERO, ZERO, ONE)
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    fn coefficient_norm_sq(&self) -> f64 {
        self.coefficients().iter().map(|z| z.norm_sqr()).sum()
    }

    /// Same map with unit coefficient norm.
    pub fn normalized(&self) -> Self {
        let s = self.coefficient_norm_sq().sqrt();
        MoebiusMap { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }
    }

    /// Distance between the coefficient rays, `min_θ ‖u - e^{iθ}v‖` for the
    /// unit-normalized coefficient vectors. Zero iff the maps coincide.
    pub fn projective_distance(&self, other: &MoebiusMap) -> f64 {
        let u = self.normalized().coefficients();
        let v = other.normalized().coefficients();
        let inner: Complex64 = u.iter().zip(v.iter()).map(|(x, y)| x * y.conj()).sum();
        let phase = if inner.norm() > 0.0 { inner / inner.norm() } else { ONE };
        // ‖u - e^{iθ}v‖ directly; the closed form loses half the digits
        u.iter().zip(v.iter()).map(|(x, y)| (x - phase * y).norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn apply(&self, z: Ext) -> Ext {
        match z {
            Ext::Infinity => {
                if self.c == ZERO {
                    Ext::Infinity
                } else {
                    Ext::Finite(self.a / self.c)
                }
            }
            Ext::Finite(z) => {
                let den = self.c * z + self.d;
                if den == ZERO {
                    Ext::Infinity
                } else {
                    Ext::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Finite evaluation; `None` at the pole.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        self.apply(Ext::Finite(z)).finite()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * inner.a + self.b * inner.c,
            b: self.a * inner.b + self.b * inner.d,
            c: self.c * inner.a + self.d * inner.c,
            d: self.c * inner.b + self.d * inner.d,
        }
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// The n-th iterate; `iterate(0)` is the identity.
    pub fn iterate(&self, n: usize) -> MoebiusMap {
        let base = self.normalized();
        let mut out = MoebiusMap::identity();
        for _ in 0..n {
            out = base.compose(&out).normalized();
        }
        out
    }

    pub fn derivative_at(&self, z: Complex64) -> Result<Complex64> {
        let den = self.c * z + self.d;
        if den.norm() <= 1e-300 {
            return Err(Error::Pole(z));
        }
        Ok(self.det() / (den * den))
    }

    pub fn image_circle(&self) -> Option<ImageCircle> {
        let m = self.normalized();
        let den = m.d.norm_sqr() - m.c.norm_sqr();
        if den.abs() <= 1e-15 {
            return None;
        }
        Some(ImageCircle {
            center: (m.b * m.d.conj() - m.a * m.c.conj()) / den,
            radius: m.det().norm() / den.abs(),
            bounded: den > 0.0,
        })
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        let m = self.normalized();
        m.b.norm() <= tol && m.c.norm() <= tol && (m.a - m.d).norm() <= tol
    }

    pub fn is_self_map(&self, tol: f64) -> bool {
        match self.image_circle() {
            Some(ic) => ic.bounded && ic.center.norm() + ic.radius <= 1.0 + tol,
            None => false,
        }
    }

    pub fn is_automorphism(&self, tol: f64) -> bool {
        if !self.is_self_map(tol) {
            return false;
        }
        let ic = self.image_circle().expect("self-maps have a bounded image circle");
        ic.center.norm() <= tol && (ic.radius - 1.0).abs() <= tol
    }

    pub fn fixed_points(&self) -> Result<FixedPointData> {
        self.fixed_points_tol(DEFAULT_TOL)
    }

    /// Roots of `cz^2 + (d - a)z - b = 0` on the extended plane. A discriminant
    /// of modulus at most `tol` (normalized coefficients) is a double root.
    pub fn fixed_points_tol(&self, tol: f64) -> Result<FixedPointData> {
        if self.is_identity(tol) {
            return Err(Error::IdentityMap);
        }
        let m = self.normalized();
        let point = |z: Complex64, multiplicity: u8| FixedPoint {
            location: Ext::Finite(z),
            multiplicity,
            derivative: m.derivative_at(z).ok(),
        };
        let infinity = |multiplicity: u8| FixedPoint {
            location: Ext::Infinity,
            multiplicity,
            derivative: None,
        };
        let shift = m.d - m.a;
        if m.c.norm() <= ROUNDING_DISC {
            // affine: infinity is always fixed
            if shift.norm() <= tol {
                let borderline = shift.norm() > ROUNDING_DISC;
                return Ok(FixedPointData { points: vec![infinity(2)], borderline });
            }
            return Ok(FixedPointData {
                points: vec![point(m.b / shift, 1), infinity(1)],
                borderline: false,
            });
        }
        let disc = shift * shift + 4.0 * m.b * m.c;
        if disc.norm() <= tol {
            let z = -shift / (2.0 * m.c);
            return Ok(FixedPointData {
                points: vec![point(z, 2)],
                borderline: disc.norm() > ROUNDING_DISC,
            });
        }
        let mut s = disc.sqrt();
        if (shift.conj() * s).re < 0.0 {
            s = -s;
        }
        let q = -0.5 * (shift + s);
        let r1 = q / m.c;
        let r2 = -m.b / q;
        let mut points = vec![point(r1, 1), point(r2, 1)];
        points.sort_by(|x, y| {
            let nx = x.location.finite().map_or(f64::INFINITY, |z| z.norm());
            let ny = y.location.finite().map_or(f64::INFINITY, |z| z.norm());
            nx.total_cmp(&ny)
        });
        Ok(FixedPointData { points, borderline: false })
    }

    /// The attracting fixed point in the closed disk.
    pub fn denjoy_wolff(&self, tol: f64) -> Result<DWPoint> {
        if !self.is_self_map(tol) {
            return Err(Error::NotSelfMap);
        }
        if self.is_identity(tol) {
            return Err(Error::NoDenjoyWolffPoint);
        }
        let fp = self.fixed_points_tol(tol)?;
        let in_closed_disk: Vec<(Complex64, Complex64)> = fp
            .finite()
            .filter_map(|p| Some((p.location.finite()?, p.derivative?)))
            .filter(|(z, _)| z.norm() <= 1.0 + tol)
            .collect();
        if let Some(&(z, dz)) = in_closed_disk.iter().find(|(z, _)| z.norm() < 1.0 - tol) {
            if self.is_automorphism(tol) {
                return Err(Error::NoDenjoyWolffPoint);
            }
            return Ok(DWPoint { location: z, derivative: dz });
        }
        in_closed_disk
            .iter()
            .filter(|(_, dz)| dz.norm() <= 1.0 + tol.sqrt())
            .min_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
            .map(|&(z, dz)| DWPoint { location: z, derivative: dz })
            .ok_or(Error::NoDenjoyWolffPoint)
    }

    pub fn classify(&self, tol: f64) -> Result<Classification> {
        if !self.is_self_map(tol) {
            return Err(Error::NotSelfMap);
        }
        if self.is_identity(tol) {
            return Ok(Classification { class: MapClass::Identity, borderline: false });
        }
        let fp = self.fixed_points_tol(tol)?;
        let on_circle = |z: Complex64| (z.norm() - 1.0).abs() <= tol;
        if self.is_automorphism(tol) {
            let interior = fp.finite().filter_map(|p| p.location.finite()).any(|z| z.norm() < 1.0 - tol);
            if interior {
                return Ok(Classification { class: MapClass::EllipticAutomorphism, borderline: false });
            }
            let double = fp.points.iter().any(|p| p.multiplicity == 2);
            let class = if double {
                MapClass::ParabolicAutomorphism
            } else {
                MapClass::HyperbolicAutomorphism
            };
            return Ok(Classification { class, borderline: double && fp.borderline });
        }
        let dw = self.denjoy_wolff(tol)?;
        if on_circle(dw.location) {
            let gap = (dw.derivative - ONE).norm();
            let double = fp.points.iter().any(|p| p.multiplicity == 2);
            if double || gap <= tol {
                let borderline = (double && fp.borderline) || (!double && gap > ROUNDING_DISC);
                return Ok(Classification { class: MapClass::ParabolicNonAutomorphism, borderline });
            }
            return Ok(Classification {
                class: MapClass::HyperbolicTypeNonAutomorphism,
                borderline: false,
            });
        }
        let boundary_fixed = fp
            .finite()
            .filter_map(|p| p.location.finite())
            .any(on_circle);
        let class = if boundary_fixed {
            MapClass::InteriorDWWithBoundaryFixedPoint
        } else {
            MapClass::InteriorDWNoBoundaryFixedPoint
        };
        Ok(Classification { class, borderline: false })
    }

    /// Translation number `t = tau(m(0)) - 1`, `tau(z) = (1 + conj(zeta) z)/(1 - conj(zeta) z)`.
    pub fn translation_number(&self, zeta: Complex64, tol: f64) -> Result<Complex64> {
        if (zeta.norm() - 1.0).abs() > tol {
            return Err(Error::NotParabolic);
        }
        let class = self.classify(tol)?;
        if !class.class.is_parabolic() {
            return Err(Error::NotParabolic);
        }
        let fp = self.fixed_points_tol(tol)?;
        let at_zeta = fp
            .finite()
            .filter_map(|p| p.location.finite())
            .any(|z| (z - zeta).norm() <= tol.sqrt());
        if !at_zeta {
            return Err(Error::NotParabolic);
        }
        let w = self.eval(ZERO).ok_or(Error::NotSelfMap)?;
        let zc = zeta.conj();
        Ok((ONE + zc * w) / (ONE - zc * w) - ONE)
    }

    /// Parabolic map fixing `zeta` with translation number `t`:
    /// `((2 - t)z + t zeta)/(2 + t - t conj(zeta) z)`.
    pub fn parabolic_from(zeta: Complex64, t: Complex64) -> Result<MoebiusMap> {
        if (zeta.norm() - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::InvalidArgument(format!("|zeta| = {} is not 1", zeta.norm())));
        }
        if t.re < 0.0 || t.norm() == 0.0 || !t.re.is_finite() || !t.im.is_finite() {
            return Err(Error::InvalidTranslation(t));
        }
        let two = Complex64::new(2.0, 0.0);
        MoebiusMap::new(two - t, t * zeta, -t * zeta.conj(), two + t)
    }

    /// Krein adjoint `(conj(a) z - conj(c))/(-conj(b) z + conj(d))`.
    pub fn krein_adjoint(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.a.conj(),
            b: -self.c.conj(),
            c: -self.b.conj(),
            d: self.d.conj(),
        }
    }

    /// `sup_{z in D} |m(z) - p|`, read off the image circle.
    pub fn sup_distance_from(&self, p: Complex64) -> Option<f64> {
        let ic = self.image_circle()?;
        ic.bounded.then(|| (ic.center - p).norm() + ic.radius)
    }

    pub fn report(&self, tol: f64) -> Result<MapReport> {
        let cls = self.classify(tol)?;
        let fixed_points = self.fixed_points_tol(tol).ok();
        let denjoy_wolff = self.denjoy_wolff(tol).ok();
        let boundary_fixed_points: Vec<Complex64> = fixed_points
            .iter()
            .flat_map(|fp| fp.finite().filter_map(|p| p.location.finite()))
            .filter(|z| (z.norm() - 1.0).abs() <= tol)
            .collect();
        let translation_number = if cls.class.is_parabolic() {
            boundary_fixed_points
                .first()
                .and_then(|&zeta| self.translation_number(zeta, tol).ok())
        } else {
            None
        };
        Ok(MapReport {
            map: *self,
            class: cls.class,
            borderline: cls.borderline,
            fixed_points,
            denjoy_wolff,
            boundary_fixed_points,
            translation_number,
        })
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} z + {})/({} z + {})", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn z_over_2_minus_z() -> MoebiusMap {
        MoebiusMap::from_real(1.0, 0.0, -1.0, 2.0).unwrap()
    }

    fn parabolic_t1() -> MoebiusMap {
        MoebiusMap::from_real(1.0, 1.0, -1.0, 3.0).unwrap()
    }

    #[test]
    fn apply_examples() {
        let m = z_over_2_minus_z();
        assert_eq!(m.apply(Ext::Finite(c(0.0, 0.0))), Ext::Finite(c(0.0, 0.0)));
        assert_eq!(m.apply(Ext::Finite(c(1.0, 0.0))), Ext::Finite(c(1.0, 0.0)));
        assert_eq!(m.apply(Ext::Finite(c(2.0, 0.0))), Ext::Infinity);
        assert_eq!(m.apply(Ext::Infinity), Ext::Finite(c(-1.0, 0.0)));
        let p = parabolic_t1();
        assert!(close(p.eval(c(0.0, 0.0)).unwrap(), c(1.0 / 3.0, 0.0), 1e-15));
    }

    #[test]
    fn compose_examples() {
        let m = z_over_2_minus_z();
        let id = MoebiusMap::identity();
        assert!(m.compose(&id).projective_distance(&m) < 1e-15);
        let r = MoebiusMap::rotation(c(0.0, 1.0)).unwrap();
        let s = MoebiusMap::rotation(c(0.5, 0.0)).unwrap();
        let rs = MoebiusMap::rotation(c(0.0, 0.5)).unwrap();
        assert!(r.compose(&s).projective_distance(&rs) < 1e-15);
        let sq = m.compose(&m);
        let expect = MoebiusMap::from_real(1.0, 0.0, -3.0, 4.0).unwrap();
        assert!(sq.projective_distance(&expect) < 1e-15);
    }

    #[test]
    fn inverse_examples() {
        let sigma = MoebiusMap::from_real(0.5, 0.5, 0.0, 1.0).unwrap();
        let expect = MoebiusMap::from_real(2.0, -1.0, 0.0, 1.0).unwrap();
        assert!(sigma.inverse().projective_distance(&expect) < 1e-15);
        let lam = c(0.6, 0.8);
        let r = MoebiusMap::rotation(lam).unwrap();
        assert!(r.inverse().projective_distance(&MoebiusMap::rotation(lam.conj()).unwrap()) < 1e-15);
        assert!(MoebiusMap::identity().inverse().is_identity(0.0));
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(MoebiusMap::from_real(1.0, 2.0, 2.0, 4.0), Err(Error::DegenerateMap)));
        let json = r#"{"a":[1,0],"b":[2,0],"c":[2,0],"d":[4,0]}"#;
        assert!(serde_json::from_str::<MoebiusMap>(json).is_err());
    }

    #[test]
    fn self_map_examples() {
        let m = z_over_2_minus_z();
        let ic = m.image_circle().unwrap();
        assert!(close(ic.center, c(1.0 / 3.0, 0.0), 1e-15));
        assert!((ic.radius - 2.0 / 3.0).abs() < 1e-15);
        assert!(m.is_self_map(DEFAULT_TOL));
        assert!(!MoebiusMap::rotation(c(2.0, 0.0)).unwrap().is_self_map(DEFAULT_TOL));
        let half = MoebiusMap::from_real(1.0, 1.0, 0.0, 2.0).unwrap();
        let ic = half.image_circle().unwrap();
        assert!(close(ic.center, c(0.5, 0.0), 1e-15) && (ic.radius - 0.5).abs() < 1e-15);
        assert!(half.is_self_map(DEFAULT_TOL));
        // pole inside the disk: the disk maps to the exterior of a small circle
        let inv = MoebiusMap::from_real(0.0, 1.0, 2.0, 0.0).unwrap();
        assert!(!inv.is_self_map(DEFAULT_TOL));
    }

    #[test]
    fn automorphism_examples() {
        assert!(MoebiusMap::rotation(c(0.0, 1.0)).unwrap().is_automorphism(DEFAULT_TOL));
        assert!(!z_over_2_minus_z().is_automorphism(DEFAULT_TOL));
        let h = MoebiusMap::from_real(1.0, 0.5, 0.5, 1.0).unwrap();
        assert!(h.is_automorphism(DEFAULT_TOL));
        for z in [c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)] {
            assert!((h.eval(z).unwrap().norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn fixed_point_examples() {
        let fp = z_over_2_minus_z().fixed_points().unwrap();
        assert_eq!(fp.total_multiplicity(), 2);
        let p0 = fp.points[0];
        let p1 = fp.points[1];
        assert!(close(p0.location.finite().unwrap(), c(0.0, 0.0), 1e-15));
        assert!(close(p0.derivative.unwrap(), c(0.5, 0.0), 1e-15));
        assert!(close(p1.location.finite().unwrap(), c(1.0, 0.0), 1e-15));
        assert!(close(p1.derivative.unwrap(), c(2.0, 0.0), 1e-15));

        let fp = parabolic_t1().fixed_points().unwrap();
        assert_eq!(fp.points.len(), 1);
        assert_eq!(fp.points[0].multiplicity, 2);
        assert!(close(fp.points[0].location.finite().unwrap(), c(1.0, 0.0), 1e-15));
        assert!(close(fp.points[0].derivative.unwrap(), c(1.0, 0.0), 1e-15));

        let fp = MoebiusMap::rotation(c(0.0, 1.0)).unwrap().fixed_points().unwrap();
        assert_eq!(fp.points[0].location, Ext::Finite(c(0.0, 0.0)));
        assert_eq!(fp.points[1].location, Ext::Infinity);

        let translate = MoebiusMap::from_real(1.0, 1.0, 0.0, 1.0).unwrap();
        let fp = translate.fixed_points().unwrap();
        assert_eq!(fp.points, vec![FixedPoint { location: Ext::Infinity, multiplicity: 2, derivative: None }]);

        assert!(matches!(MoebiusMap::identity().fixed_points(), Err(Error::IdentityMap)));
    }

    #[test]
    fn denjoy_wolff_examples() {
        let dw = z_over_2_minus_z().denjoy_wolff(DEFAULT_TOL).unwrap();
        assert!(close(dw.location, c(0.0, 0.0), 1e-15));
        assert!(close(dw.derivative, c(0.5, 0.0), 1e-15));
        let dw = parabolic_t1().denjoy_wolff(DEFAULT_TOL).unwrap();
        assert!(close(dw.location, c(1.0, 0.0), 1e-12));
        assert!(close(dw.derivative, c(1.0, 0.0), 1e-12));
        let dw = MoebiusMap::from_real(1.0, 1.0, 0.0, 2.0).unwrap().denjoy_wolff(DEFAULT_TOL).unwrap();
        assert!(close(dw.location, c(1.0, 0.0), 1e-15));
        assert!(close(dw.derivative, c(0.5, 0.0), 1e-15));
        let elliptic = MoebiusMap::rotation(c(0.0, 1.0)).unwrap();
        assert!(matches!(elliptic.denjoy_wolff(DEFAULT_TOL), Err(Error::NoDenjoyWolffPoint)));
        assert!(matches!(MoebiusMap::identity().denjoy_wolff(DEFAULT_TOL), Err(Error::NoDenjoyWolffPoint)));
    }

    #[test]
    fn classify_examples() {
        let cl = |m: MoebiusMap| m.classify(DEFAULT_TOL).unwrap().class;
        assert_eq!(cl(parabolic_t1()), MapClass::ParabolicNonAutomorphism);
        assert_eq!(cl(z_over_2_minus_z()), MapClass::InteriorDWWithBoundaryFixedPoint);
        assert_eq!(cl(MoebiusMap::from_real(1.0, 0.5, 0.5, 1.0).unwrap()), MapClass::HyperbolicAutomorphism);
        assert_eq!(cl(MoebiusMap::from_real(1.0, 1.0, 0.0, 2.0).unwrap()), MapClass::HyperbolicTypeNonAutomorphism);
        assert_eq!(cl(MoebiusMap::rotation(c(0.0, 1.0)).unwrap()), MapClass::EllipticAutomorphism);
        assert_eq!(cl(MoebiusMap::rotation(c(0.5, 0.0)).unwrap()), MapClass::InteriorDWNoBoundaryFixedPoint);
        assert_eq!(cl(MoebiusMap::identity()), MapClass::Identity);
        let pa = MoebiusMap::parabolic_from(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert_eq!(cl(pa), MapClass::ParabolicAutomorphism);
        assert!(matches!(
            MoebiusMap::rotation(c(2.0, 0.0)).unwrap().classify(DEFAULT_TOL),
            Err(Error::NotSelfMap)
        ));
    }

    #[test]
    fn translation_number_examples() {
        let t = parabolic_t1().translation_number(c(1.0, 0.0), DEFAULT_TOL).unwrap();
        assert!(close(t, c(1.0, 0.0), 1e-14));
        let pa = MoebiusMap::parabolic_from(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        let t = pa.translation_number(c(1.0, 0.0), DEFAULT_TOL).unwrap();
        assert!(close(t, c(0.0, 1.0), 1e-14));
        assert!(pa.is_automorphism(DEFAULT_TOL));
        let m = MoebiusMap::parabolic_from(c(-1.0, 0.0), c(2.0, 1.0)).unwrap();
        let t = m.translation_number(c(-1.0, 0.0), DEFAULT_TOL).unwrap();
        assert!(close(t, c(2.0, 1.0), 1e-13));
        assert!(matches!(
            z_over_2_minus_z().translation_number(c(1.0, 0.0), DEFAULT_TOL),
            Err(Error::NotParabolic)
        ));
    }

    #[test]
    fn parabolic_from_examples() {
        let m = MoebiusMap::parabolic_from(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(m.projective_distance(&parabolic_t1()) < 1e-15);
        let m = MoebiusMap::parabolic_from(c(1.0, 0.0), c(0.0, 2.0)).unwrap();
        assert!(m.is_automorphism(DEFAULT_TOL));
        assert!(matches!(
            MoebiusMap::parabolic_from(c(1.0, 0.0), c(0.0, 0.0)),
            Err(Error::InvalidTranslation(_))
        ));
        assert!(matches!(
            MoebiusMap::parabolic_from(c(1.0, 0.0), c(-0.5, 0.0)),
            Err(Error::InvalidTranslation(_))
        ));
    }

    #[test]
    fn krein_adjoint_examples() {
        let sigma = z_over_2_minus_z().krein_adjoint();
        assert!(sigma.projective_distance(&MoebiusMap::from_real(0.5, 0.5, 0.0, 1.0).unwrap()) < 1e-15);
        let s = 0.25;
        let phi = MoebiusMap::from_real(s, 0.0, -(1.0 - s), 1.0).unwrap();
        let expect = MoebiusMap::from_real(s, 1.0 - s, 0.0, 1.0).unwrap();
        assert!(phi.krein_adjoint().projective_distance(&expect) < 1e-15);
        let lam = c(0.3, 0.4);
        let r = MoebiusMap::rotation(lam).unwrap().krein_adjoint();
        assert!(r.projective_distance(&MoebiusMap::rotation(lam.conj()).unwrap()) < 1e-15);
        assert!(sigma.is_self_map(DEFAULT_TOL));
    }

    #[test]
    fn derivative_examples() {
        let m = z_over_2_minus_z();
        assert!(close(m.derivative_at(c(1.0, 0.0)).unwrap(), c(2.0, 0.0), 1e-15));
        assert!(close(parabolic_t1().derivative_at(c(1.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-15));
        let lam = c(0.2, -0.7);
        let r = MoebiusMap::rotation(lam).unwrap();
        assert!(close(r.derivative_at(c(0.3, 0.9)).unwrap(), lam, 1e-15));
        assert!(matches!(m.derivative_at(c(2.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn json_shape() {
        let m = z_over_2_minus_z();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"a":[1.0,0.0],"b":[0.0,0.0],"c":[-1.0,0.0],"d":[2.0,0.0]}"#);
        let back: MoebiusMap = serde_json::from_str(&s).unwrap();
        assert_eq!(back.coefficients(), m.coefficients());
    }

    #[test]
    fn parabolic_iterates_contract_on_whole_disk() {
        for t in [c(1.0, 0.0), c(1.0, 1.0)] {
            let m = MoebiusMap::parabolic_from(c(1.0, 0.0), t).unwrap();
            let mut prev = f64::INFINITY;
            for n in 1..=20 {
                let d = m.iterate(n).sup_distance_from(c(1.0, 0.0)).unwrap();
                // horodisk of diameter 2/(1 + n Re t)
                assert!((d - 2.0 / (1.0 + n as f64 * t.re)).abs() < 1e-12);
                assert!(d < prev);
                prev = d;
            }
        }
    }
}
