use num_complex::Complex64;
use proptest::prelude::*;

use lftlab_core::linalg::spectral_norm;
use lftlab_core::opmat::adjoint_block;
use lftlab_core::probes::hyponormality_probe;
use lftlab_core::{build_block, AnalyticExpr, MoebiusMap, OperatorSpec, SpaceSpec};

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0..0.9f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

/// Self-maps `λ (z - a)/(1 - ā z) * s + p` shrunk into the disk.
fn self_map() -> impl Strategy<Value = MoebiusMap> {
    (disk_point(), 0.0..std::f64::consts::TAU, 0.1..0.6f64, disk_point()).prop_map(|(a, th, s, p)| {
        let lam = Complex64::from_polar(1.0, th);
        let auto = MoebiusMap::new(lam, -lam * a, -a.conj(), Complex64::new(1.0, 0.0)).unwrap();
        let shrink = MoebiusMap::new(Complex64::new(s, 0.0), p * (1.0 - s) * 0.5, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)).unwrap();
        shrink.compose(&auto)
    })
}

fn space() -> impl Strategy<Value = SpaceSpec> {
    prop_oneof![Just(SpaceSpec::Hardy), (0.0..2.0f64).prop_map(|alpha| SpaceSpec::Bergman { alpha })]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compose_then_inverse_is_identity(m in self_map()) {
        prop_assert!(m.compose(&m.inverse()).is_identity(1e-9));
    }

    #[test]
    fn eval_respects_composition(m in self_map(), k in self_map(), z in disk_point()) {
        let direct = m.eval(k.eval(z).unwrap()).unwrap();
        let composed = m.compose(&k).eval(z).unwrap();
        prop_assert!((direct - composed).norm() < 1e-10);
    }

    #[test]
    fn self_maps_stay_in_disk(m in self_map(), z in disk_point()) {
        prop_assert!(m.is_self_map(1e-12));
        prop_assert!(m.eval(z).unwrap().norm() < 1.0);
    }

    #[test]
    fn taylor_matches_eval(m in self_map(), z in (0.0..0.4f64, 0.0..6.3f64)) {
        let w = Complex64::from_polar(z.0, z.1);
        let f = AnalyticExpr::product(vec![AnalyticExpr::moebius(&m).unwrap(), AnalyticExpr::exp(AnalyticExpr::z())]);
        let s = f.taylor(80).unwrap();
        prop_assert!((s.eval(w) - f.eval(w)).norm() < 1e-10);
    }

    #[test]
    fn adjoint_is_involutive(m in self_map(), sp in space()) {
        let b = build_block(&OperatorSpec::composition(m).unwrap(), &sp, 8, 8).unwrap();
        let back = adjoint_block(&adjoint_block(&b));
        prop_assert!(spectral_norm(&(&back.entries - &b.entries)) < 1e-14);
    }

    #[test]
    fn self_commutator_scales_quadratically(m in self_map(), sp in space(), c in 0.2..3.0f64) {
        let op = OperatorSpec::composition(m).unwrap();
        let a = hyponormality_probe(&op, &sp, 8, 96, 1e-10).unwrap().min_eig;
        let b = hyponormality_probe(&op.scaled(Complex64::new(0.0, c)), &sp, 8, 96, 1e-10).unwrap().min_eig;
        prop_assert!((b - c * c * a).abs() <= 1e-9 * (1.0 + (c * c * a).abs()));
    }
}
