//! Named operators and words used by the scenario suite.

use num_complex::Complex64;

use crate::error::Result;
use crate::mobius::MoebiusMap;
use crate::opmat::{Letter, OperatorSpec, OperatorWord};
use crate::series::AnalyticExpr;
use crate::space::SpaceSpec;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `φ(z) = sz/(1 - (1-s)z)`, `0 < s < 1`.
pub fn family_symbol(s: f64) -> Result<MoebiusMap> {
    MoebiusMap::from_real(s, 0.0, -(1.0 - s), 1.0)
}

/// `ψ(z) = 1/(1 - (1-s)z)`.
pub fn family_weight(s: f64) -> Result<AnalyticExpr> {
    AnalyticExpr::rational_real(&[1.0], &[1.0, -(1.0 - s)])
}

/// `T_ψ C_φ`.
pub fn family_operator(s: f64) -> Result<OperatorSpec> {
    OperatorSpec::weighted(family_weight(s)?, Some(family_symbol(s)?))
}

/// `τ = φ^{-1} ∘ σ`, so that `φ ∘ τ = σ`.
pub fn family_tau(s: f64) -> Result<MoebiusMap> {
    let phi = family_symbol(s)?;
    Ok(phi.inverse().compose(&phi.krein_adjoint()).normalized())
}

/// `η = 1/(ψ ∘ τ)`, so that `T_η C_τ T_ψ C_φ = C_σ`.
pub fn family_eta(s: f64) -> Result<AnalyticExpr> {
    let inner = AnalyticExpr::precompose(family_weight(s)?, family_tau(s)?).normalize()?;
    AnalyticExpr::power(inner, -1.0)
}

/// `T_η C_τ`.
pub fn family_contraction(s: f64) -> Result<OperatorWord> {
    OperatorWord::new(vec![
        Letter::Plain(OperatorSpec::toeplitz(family_eta(s)?)?),
        Letter::Plain(OperatorSpec::composition(family_tau(s)?)?),
    ])
}

/// `T_η C_τ T_ψ C_φ`.
pub fn family_factorization(s: f64) -> Result<OperatorWord> {
    Ok(family_contraction(s)?.push(Letter::Plain(family_operator(s)?)))
}

/// `g = (-b̄z + d̄)^{-γ}`.
pub fn adjoint_g(phi: &MoebiusMap, space: &SpaceSpec) -> Result<AnalyticExpr> {
    AnalyticExpr::power(AnalyticExpr::poly(vec![phi.d.conj(), -phi.b.conj()]), -space.gamma())
}

/// `h = (cz + d)^γ`.
pub fn adjoint_h(phi: &MoebiusMap, space: &SpaceSpec) -> Result<AnalyticExpr> {
    AnalyticExpr::power(AnalyticExpr::poly(vec![phi.d, phi.c]), space.gamma())
}

/// `T_g C_σ T_h*`, which equals `C_φ*`.
pub fn adjoint_word(phi: &MoebiusMap, space: &SpaceSpec) -> Result<OperatorWord> {
    OperatorWord::new(vec![
        Letter::Plain(OperatorSpec::toeplitz(adjoint_g(phi, space)?)?),
        Letter::Plain(OperatorSpec::composition(phi.krein_adjoint())?),
        Letter::Adjoint(OperatorSpec::toeplitz(adjoint_h(phi, space)?)?),
    ])
}

/// `K_{σ(0)}` for the Krein adjoint `σ` of `phi`.
pub fn kernel_weight(phi: &MoebiusMap, space: &SpaceSpec) -> Result<AnalyticExpr> {
    let s0 = phi.krein_adjoint().eval(c(0.0)).unwrap_or(c(0.0));
    space.kernel_expr(s0)
}

/// `(1 - |σ(0)|²)^{γ/2} K_{σ(0)}`; makes `W_{w,φ}` unitary for an automorphism.
pub fn unitary_weight(phi: &MoebiusMap, space: &SpaceSpec) -> Result<AnalyticExpr> {
    let s0 = phi.krein_adjoint().eval(c(0.0)).unwrap_or(c(0.0));
    let k = space.kernel_expr(s0)?;
    Ok(AnalyticExpr::scale(c((1.0 - s0.norm_sqr()).powf(space.gamma() / 2.0)), k))
}

/// `f ∘ σ^{-1}` for the `s = 1/2` example.
pub fn transfer_g(f: &AnalyticExpr) -> Result<AnalyticExpr> {
    let sigma = family_symbol(0.5)?.krein_adjoint();
    AnalyticExpr::precompose(f.clone(), sigma.inverse()).normalize()
}

/// `W_{fψ,φ}` with the `s = 1/2` pair.
pub fn transfer_operator(f: &AnalyticExpr) -> Result<OperatorSpec> {
    let w = AnalyticExpr::product(vec![f.clone(), family_weight(0.5)?]);
    OperatorSpec::weighted(w, Some(family_symbol(0.5)?))
}

/// `T_η C_τ T_g* T_{1/f}`.
pub fn transfer_contraction(f: &AnalyticExpr, g: &AnalyticExpr) -> Result<OperatorWord> {
    Ok(family_contraction(0.5)?
        .push(Letter::Adjoint(OperatorSpec::toeplitz(g.clone())?))
        .push(Letter::Plain(OperatorSpec::toeplitz(AnalyticExpr::power(f.clone(), -1.0)?)?)))
}

/// `2 + z` and `e^z`, labelled.
pub fn transfer_factors() -> Vec<(&'static str, AnalyticExpr)> {
    vec![
        ("2+z", AnalyticExpr::poly_real(&[2.0, 1.0])),
        ("e^z", AnalyticExpr::exp(AnalyticExpr::z())),
    ]
}

/// Example weight `2 e^z/(2 - z)`.
pub fn exp_weight_operator() -> Result<OperatorSpec> {
    transfer_operator(&AnalyticExpr::exp(AnalyticExpr::z()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_auxiliaries_at_one_half() {
        let tau = family_tau(0.5).unwrap();
        let expect = MoebiusMap::from_real(2.0, 2.0, 1.0, 3.0).unwrap();
        assert!(tau.projective_distance(&expect) < 1e-14);
        let eta = family_eta(0.5).unwrap().taylor(6).unwrap();
        let direct = AnalyticExpr::rational_real(&[2.0], &[3.0, 1.0]).unwrap().taylor(6).unwrap();
        for n in 0..=6 {
            assert!((eta[n] - direct[n]).norm() < 1e-15);
        }
    }

    #[test]
    fn transfer_g_values() {
        let g = transfer_g(&AnalyticExpr::poly_real(&[2.0, 1.0])).unwrap().taylor(4).unwrap();
        assert!((g[0] - c(1.0)).norm() < 1e-15 && (g[1] - c(2.0)).norm() < 1e-15 && g[2].norm() < 1e-15);
        let g = transfer_g(&AnalyticExpr::exp(AnalyticExpr::z())).unwrap();
        let z = Complex64::new(0.3, -0.2);
        assert!((g.eval(z) - (z * 2.0 - 1.0).exp()).norm() < 1e-14);
    }

    #[test]
    fn unitary_weight_shape() {
        let phi = MoebiusMap::from_real(1.0, 0.5, 0.5, 1.0).unwrap();
        let w = unitary_weight(&phi, &SpaceSpec::Hardy).unwrap();
        let z = Complex64::new(0.1, 0.4);
        let expect = 0.75f64.sqrt() / (1.0 + z / 2.0);
        assert!((w.eval(z) - expect).norm() < 1e-14);
    }
}
