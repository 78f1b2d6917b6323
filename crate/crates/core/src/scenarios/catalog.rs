use num_complex::Complex64;

use super::fixtures::*;
use super::oracle;
use super::{CheckResult, Comparator, Ctx, Entry, ThresholdSource};
use crate::error::Result;
use crate::mobius::MoebiusMap;
use crate::opmat::{adjoint_block, build_block, default_internal_order, word_block, OperatorSpec};
use crate::probes::{
    default_kernel_grid, douglas_witness, hyponormality_probe, kernel_condition_probe, normality_defect,
    quasinormality_defect, selfadjoint_defect, unitary_defect, KERNEL_PROBE_ORDER, QUASINORMAL_HEADROOM,
};
use crate::linalg::spectral_norm;
use crate::series::AnalyticExpr;
use crate::space::SpaceSpec;
use crate::spectra::{
    eigen_residual, parabolic_eigenpair, residual_translations, residual_zetas, spectral_radius_estimate,
    RESIDUAL_BETAS,
};

use Comparator::*;
use ThresholdSource::*;

pub(super) const ENTRIES: &[Entry] = &[
    Entry {
        id: "S1-cowen-adjoint",
        claim: "C_phi* equals the word T_g C_sigma T_h* for linear fractional self-maps phi",
        exploratory: false,
        run: s1_adjoint_word,
    },
    Entry {
        id: "S2-parabolic-eigen",
        claim: "exp(-beta tau) is an eigenfunction of C_phi with eigenvalue exp(-beta t) for parabolic phi; spectral radius 1",
        exploratory: false,
        run: s2_parabolic_eigen,
    },
    Entry {
        id: "S3-uniform-iteration",
        claim: "iterates of a parabolic non-automorphism converge to its fixed point uniformly on the disk",
        exploratory: false,
        run: s3_uniform_iteration,
    },
    Entry {
        id: "S4-nonparabolic-defect",
        claim: "quasinormal weighted composition operators need a parabolic symbol; (z+1)/2 gives a positive defect",
        exploratory: false,
        run: s4_nonparabolic_defect,
    },
    Entry {
        id: "S5-rotation-quasinormal",
        claim: "C_phi is quasinormal exactly for rotations-dilations phi = lambda z",
        exploratory: false,
        run: s5_rotation_quasinormal,
    },
    Entry {
        id: "S6-unitary-weight",
        claim: "a normalized kernel weight K_sigma(0) makes W unitary for an automorphic symbol",
        exploratory: false,
        run: s6_unitary_weight,
    },
    Entry {
        id: "S7-sadraoui",
        claim: "T_psi C_phi with phi = z/(2-z) is hyponormal: (T_psi C_phi)* = C_sigma = T_eta C_tau T_psi C_phi with a contraction T_eta C_tau",
        exploratory: false,
        run: s7_factorization,
    },
    Entry {
        id: "S8-thm38",
        claim: "multiplying the weight by f with f = g o sigma, |g| <= |f|, keeps hyponormality but breaks quasinormality",
        exploratory: false,
        run: s8_weight_transfer,
    },
    Entry {
        id: "S9-zorboska",
        claim: "a hyponormal composition operator has phi(0) = 0; phi(0) != 0 yields a negativity certificate",
        exploratory: false,
        run: s9_certificate,
    },
    Entry {
        id: "S10-hyperbolic-nonauto",
        claim: "no weight makes W hyponormal for the hyperbolic-type symbol (z+1)/2",
        exploratory: false,
        run: s10_hyperbolic_nonauto,
    },
    Entry {
        id: "S11-parabolic-kernel-weight",
        claim: "normality and self-adjointness trends of W with weight K_sigma(0) and parabolic symbol",
        exploratory: true,
        run: s11_parabolic_kernel_weight,
    },
];

struct Check {
    name: String,
    space: Option<SpaceSpec>,
    n: Option<usize>,
    m: Option<usize>,
}

fn check(name: impl Into<String>) -> Check {
    Check { name: name.into(), space: None, n: None, m: None }
}

impl Check {
    fn on(mut self, space: SpaceSpec) -> Self {
        self.space = Some(space);
        self
    }

    fn orders(mut self, n: usize, m: usize) -> Self {
        self.n = Some(n);
        self.m = Some(m);
        self
    }

    fn order(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    fn cmp(self, value: f64, comparator: Comparator, threshold: f64, source: ThresholdSource) -> CheckResult {
        CheckResult {
            name: self.name,
            space: self.space,
            value,
            comparator,
            threshold,
            source,
            passed: comparator.holds(value, threshold),
            n: self.n,
            m: self.m,
        }
    }
}

fn spaces() -> [SpaceSpec; 3] {
    [SpaceSpec::Hardy, SpaceSpec::Bergman { alpha: 0.0 }, SpaceSpec::Bergman { alpha: 1.0 }]
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn half_shift() -> Result<MoebiusMap> {
    MoebiusMap::from_real(1.0, 1.0, 0.0, 2.0)
}

fn mixed_symbol() -> Result<MoebiusMap> {
    MoebiusMap::from_real(2.0, 1.0, 1.0, 3.0)
}

fn floor(key: String) -> Result<f64> {
    Ok(oracle::entry(&key)?.floor)
}

fn s1_adjoint_word(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let symbols = [
        ("z/(2-z)", family_symbol(0.5)?, 160),
        ("z/(4-3z)", family_symbol(0.25)?, 160),
        ("(z+1)/(3-z)", MoebiusMap::parabolic_from(c(1.0), c(1.0))?, 320),
    ];
    let mut out = Vec::new();
    for (label, phi, base_m) in symbols {
        for sp in spaces() {
            let n = ctx.n(24);
            let m = ctx.m(base_m, 2 * n);
            let lhs = adjoint_block(&build_block(&OperatorSpec::composition(phi)?, &sp, n, n)?);
            let rhs = word_block(&adjoint_word(&phi, &sp)?, &sp, n, m)?;
            let residual = spectral_norm(&(&lhs.entries - &rhs.entries));
            out.push(check(format!("adjoint word residual phi={label}")).on(sp).orders(n, m).cmp(residual, Le, 1e-6, Proven));
        }
    }
    Ok(out)
}

fn s2_parabolic_eigen(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let order = 400 * ctx.n(24) / 24;
    let mut worst: f64 = 0.0;
    let mut spiral_gap: f64 = 0.0;
    for zeta in residual_zetas() {
        for t in residual_translations() {
            for beta in RESIDUAL_BETAS {
                worst = worst.max(eigen_residual(zeta, t, beta, order)?);
                let pair = parabolic_eigenpair(zeta, t, beta)?;
                spiral_gap = spiral_gap.max((pair.eigenvalue - (-t * beta).exp()).norm());
            }
        }
    }
    let mut out = vec![
        check("max eigen residual over (beta, t, zeta) grid").order(order).cmp(worst, Le, 1e-9, Proven),
        check("eigenvalues on the spiral").cmp(spiral_gap, Le, 1e-12, Exact),
    ];
    let op = OperatorSpec::composition(MoebiusMap::parabolic_from(c(1.0), c(1.0))?)?;
    for sp in [SpaceSpec::Hardy, SpaceSpec::Bergman { alpha: 0.0 }] {
        let n = ctx.n(48);
        let m = ctx.m(default_internal_order(48, true), 2 * n);
        let seq = spectral_radius_estimate(&op, &sp, n, m, 24)?;
        let rho = seq[23];
        out.push(check("gelfand |rho_24 - 1|, t = 1").on(sp).orders(n, m).cmp((rho - 1.0).abs(), Le, 0.1, Oracle));
        if n == 48 {
            let key = format!("gelfand/parabolic-t1/{sp}/N48/k24");
            let pinned = oracle::entry(&key)?.value;
            out.push(check("gelfand agreement with oracle").on(sp).orders(n, m).cmp((rho - pinned).abs(), Le, 1e-6, Oracle));
        }
    }
    Ok(out)
}

fn s3_uniform_iteration(_ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (label, t) in [("1", c(1.0)), ("1+i", Complex64::new(1.0, 1.0))] {
        let phi = MoebiusMap::parabolic_from(c(1.0), t)?;
        let dist: Vec<f64> = (1..=20)
            .map(|n| phi.iterate(n).sup_distance_from(c(1.0)).unwrap_or(f64::INFINITY))
            .collect();
        let violations = dist.windows(2).filter(|w| !(w[1] < w[0])).count();
        let closed_form = dist
            .iter()
            .enumerate()
            .map(|(k, d)| (d - 2.0 / (1.0 + (k + 1) as f64 * t.re)).abs())
            .fold(0.0, f64::max);
        out.push(check(format!("strict decrease violations n=1..20, t={label}")).cmp(violations as f64, Le, 0.0, Proven));
        out.push(check(format!("sup |phi_20 - 1|, t={label}")).cmp(dist[19], Lt, 0.2, Oracle));
        out.push(check(format!("horodisk diameter 2/(1+n Re t), t={label}")).cmp(closed_form, Le, 1e-12, Exact));
    }
    Ok(out)
}

fn s4_nonparabolic_defect(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let phi = half_shift()?;
    let mut out = Vec::new();
    for sp in spaces() {
        let weights = [("1", AnalyticExpr::one()), ("K_sigma(0)", kernel_weight(&phi, &sp)?)];
        for (label, w) in weights {
            let op = OperatorSpec::weighted(w, Some(phi))?;
            let n = ctx.n(24);
            let m = ctx.m(320, 2 * n + QUASINORMAL_HEADROOM);
            let q = quasinormality_defect(&op, &sp, n, m)?;
            let key = format!("quasinormal/C[(z+1)/2]/{sp}/N24");
            out.push(check(format!("quasinormal defect psi={label}")).on(sp).orders(n, m).cmp(q.value, Ge, floor(key)?, Oracle));
        }
    }
    Ok(out)
}

fn s5_rotation_quasinormal(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let lambdas = [
        ("i", Complex64::new(0.0, 1.0)),
        ("1/2", c(0.5)),
        ("e^(i pi sqrt2)", Complex64::from_polar(1.0, std::f64::consts::PI * 2f64.sqrt())),
    ];
    let mut out = Vec::new();
    for sp in spaces() {
        for (label, lam) in lambdas {
            let op = OperatorSpec::composition(MoebiusMap::rotation(lam)?)?;
            let n = ctx.n(24);
            let m = ctx.m(160, 2 * n + QUASINORMAL_HEADROOM);
            let h = hyponormality_probe(&op, &sp, n, m, ctx.tol)?;
            let nd = normality_defect(&op, &sp, n, m)?;
            let q = quasinormality_defect(&op, &sp, n, m)?;
            out.push(check(format!("|min eig| lambda={label}")).on(sp).orders(n, m).cmp(h.min_eig.abs(), Le, 1e-12, Exact));
            out.push(check(format!("normality defect lambda={label}")).on(sp).orders(n, m).cmp(nd.value, Le, 1e-12, Exact));
            out.push(check(format!("quasinormal defect lambda={label}")).on(sp).orders(n, m).cmp(q.value, Le, 1e-12, Exact));
        }
        let op = OperatorSpec::composition(family_symbol(0.5)?)?;
        let n = ctx.n(24);
        let m = ctx.m(320, 2 * n + QUASINORMAL_HEADROOM);
        let q = quasinormality_defect(&op, &sp, n, m)?;
        let key = format!("quasinormal/C[z/(2-z)]/{sp}/N24");
        out.push(check("quasinormal defect phi=z/(2-z)").on(sp).orders(n, m).cmp(q.value, Ge, floor(key)?, Oracle));
    }
    Ok(out)
}

fn s6_unitary_weight(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let phi = MoebiusMap::from_real(1.0, 0.5, 0.5, 1.0)?;
    let mut out = Vec::new();
    for sp in spaces() {
        let op = OperatorSpec::weighted(unitary_weight(&phi, &sp)?, Some(phi))?;
        let n = ctx.n(24);
        let m = ctx.m(200, 2 * n);
        let u = unitary_defect(&op, &sp, n, m)?;
        let nd = normality_defect(&op, &sp, n, m)?;
        out.push(check("unitary defect").on(sp).orders(n, m).cmp(u.value, Le, 1e-6, Proven));
        out.push(check("normality defect").on(sp).orders(n, m).cmp(nd.value, Le, 1e-6, Proven));
    }
    Ok(out)
}

fn s7_factorization(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let sp = SpaceSpec::Hardy;
    let a = family_operator(0.5)?;
    let sigma = OperatorSpec::composition(family_symbol(0.5)?.krein_adjoint())?;
    let mut out = Vec::new();

    let n = ctx.n(24);
    let m = ctx.m(160, 2 * n);
    let lhs = build_block(&sigma, &sp, n, n)?;
    let rhs = word_block(&family_factorization(0.5)?, &sp, n, m)?;
    let res = spectral_norm(&(&lhs.entries - &rhs.entries));
    out.push(check("factorization residual C_sigma vs T_eta C_tau T_psi C_phi").on(sp).orders(n, m).cmp(res, Le, 1e-6, Proven));
    let adj = adjoint_block(&build_block(&a, &sp, n, n)?);
    let res = spectral_norm(&(&adj.entries - &lhs.entries));
    out.push(check("adjoint residual (T_psi C_phi)* vs C_sigma").on(sp).order(n).cmp(res, Le, 1e-9, Proven));

    let contraction = family_contraction(0.5)?;
    let mut norms = Vec::new();
    for n in ctx.sweep(&[8, 16, 32]) {
        let m = ctx.m(default_internal_order(n, false), 2 * n);
        norms.push((n, m, spectral_norm(&word_block(&contraction, &sp, n, m)?.entries)));
    }
    let &(n_top, m_top, top) = norms.last().expect("nonempty sweep");
    out.push(check("norm T_eta C_tau lower").on(sp).orders(n_top, m_top).cmp(top, Ge, 0.9, Proven));
    out.push(check("norm T_eta C_tau upper").on(sp).orders(n_top, m_top).cmp(top, Le, 1.0 + 1e-8, Proven));
    let drop = norms.windows(2).map(|w| w[0].2 - w[1].2).fold(f64::NEG_INFINITY, f64::max);
    out.push(check("norm T_eta C_tau max decrease over N").on(sp).cmp(drop, Le, 1e-12, Exact));

    let n = ctx.n(16);
    let m = ctx.m(160, 2 * n);
    let h = hyponormality_probe(&a, &sp, n, m, ctx.tol)?;
    out.push(check("min eig self-commutator").on(sp).orders(n, m).cmp(h.min_eig, Ge, -1e-6, Proven));

    let n = ctx.n(24);
    let m = ctx.m(160, 2 * n);
    let d = douglas_witness(&contraction, &a, &sp, n, m)?;
    out.push(check("douglas residual").on(sp).orders(n, m).cmp(d.residual, Le, 1e-6, Proven));
    out.push(check("douglas contraction norm").on(sp).orders(n, m).cmp(d.norm_c, Le, 1.0 + 1e-8, Proven));

    let grid = default_kernel_grid();
    let chi = kernel_condition_probe(&a, &sp, &grid, KERNEL_PROBE_ORDER, ctx.tol)?;
    let min_chi = chi.iter().map(|k| k.chi).fold(f64::INFINITY, f64::min);
    out.push(check("min kernel condition chi(w)").on(sp).order(KERNEL_PROBE_ORDER).cmp(min_chi, Ge, -1e-8, Proven));
    Ok(out)
}

fn s8_weight_transfer(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let sp = SpaceSpec::Hardy;
    let sigma = family_symbol(0.5)?.krein_adjoint();
    let mut out = Vec::new();
    for (label, f) in transfer_factors() {
        let g = transfer_g(&f)?;
        let gs = AnalyticExpr::precompose(g.clone(), sigma).taylor(64)?;
        let fs = f.taylor(64)?;
        out.push(check(format!("g o sigma = f, f={label}")).order(64).cmp((&gs - &fs).max_abs(), Le, 1e-12, Exact));
        let excess = (0..512)
            .map(|k| {
                let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 512.0);
                g.eval(w).norm() - f.eval(w).norm()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        out.push(check(format!("max (|g| - |f|) on circle, f={label}")).cmp(excess, Le, 1e-12, Proven));

        let op = transfer_operator(&f)?;
        let n = ctx.n(16);
        let m = ctx.m(160, 2 * n);
        let h = hyponormality_probe(&op, &sp, n, m, ctx.tol)?;
        out.push(check(format!("min eig self-commutator, f={label}")).on(sp).orders(n, m).cmp(h.min_eig, Ge, -1e-6, Proven));

        let n = ctx.n(24);
        let m = ctx.m(320, 2 * n + QUASINORMAL_HEADROOM);
        let q = quasinormality_defect(&op, &sp, n, m)?;
        let key = if label == "e^z" { "exp-weight" } else { "linear-weight" };
        let floor_val = floor(format!("quasinormal/{key}/hardy/N24"))?;
        out.push(check(format!("quasinormal defect, f={label}")).on(sp).orders(n, m).cmp(q.value, Ge, floor_val, Oracle));
        if label == "e^z" {
            let mut vals = Vec::new();
            for n in ctx.sweep(&[12, 16, 20]) {
                let m = ctx.m(320, 2 * n + QUASINORMAL_HEADROOM);
                vals.push(quasinormality_defect(&op, &sp, n, m)?.value);
            }
            let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().copied().fold(0.0, f64::max);
            out.push(check("quasinormal defect spread over N=12,16,20").on(sp).cmp(hi / lo - 1.0, Le, 0.1, Oracle));
        }

        let n = ctx.n(24);
        let m = ctx.m(160, 2 * n);
        let d = douglas_witness(&transfer_contraction(&f, &g)?, &op, &sp, n, m)?;
        out.push(check(format!("douglas residual, f={label}")).on(sp).orders(n, m).cmp(d.residual, Le, 1e-6, Proven));
        out.push(check(format!("douglas contraction norm, f={label}")).on(sp).orders(n, m).cmp(d.norm_c, Le, 1.0 + 1e-8, Proven));
    }
    Ok(out)
}

fn s9_certificate(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let symbols = [("(z+1)/2", half_shift()?), ("(2z+1)/(z+3)", mixed_symbol()?)];
    let mut out = Vec::new();
    let grid = default_kernel_grid();
    for sp in spaces() {
        for (label, phi) in symbols {
            let op = OperatorSpec::composition(phi)?;
            let n = ctx.n(16);
            let m = ctx.m(160, 2 * n);
            let h = hyponormality_probe(&op, &sp, n, m, ctx.tol)?;
            let key = format!("min_eig/C[{label}]/{sp}/N16");
            out.push(check(format!("min eig phi={label}")).on(sp).orders(n, m).cmp(h.min_eig, Le, floor(key)?, Oracle));
            out.push(
                check(format!("certificate margin min_eig + tail, phi={label}"))
                    .on(sp)
                    .orders(n, m)
                    .cmp(h.min_eig + h.tail_bound, Lt, -ctx.tol, Proven),
            );
        }
        let op = OperatorSpec::composition(half_shift()?)?;
        let chi = kernel_condition_probe(&op, &sp, &grid, KERNEL_PROBE_ORDER, ctx.tol)?;
        let best = chi.iter().map(|k| k.chi + k.tail).fold(f64::INFINITY, f64::min);
        out.push(check("kernel witness min chi(w) + tail, phi=(z+1)/2").on(sp).order(KERNEL_PROBE_ORDER).cmp(best, Lt, -1e-8, Proven));
    }
    Ok(out)
}

fn s10_hyperbolic_nonauto(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let phi = half_shift()?;
    let grid = default_kernel_grid();
    let mut out = Vec::new();
    for sp in spaces() {
        let weights = [
            ("1", AnalyticExpr::one(), "C[(z+1)/2]"),
            ("1-z", AnalyticExpr::poly_real(&[1.0, -1.0]), "W[1-z,(z+1)/2]"),
            ("K_sigma(0)", kernel_weight(&phi, &sp)?, "C[(z+1)/2]"),
        ];
        for (label, w, key) in weights {
            let op = OperatorSpec::weighted(w, Some(phi))?;
            let n = ctx.n(16);
            let m = ctx.m(160, 2 * n);
            let h = hyponormality_probe(&op, &sp, n, m, ctx.tol)?;
            let chi = kernel_condition_probe(&op, &sp, &grid, KERNEL_PROBE_ORDER, ctx.tol)?;
            let certificates = chi.iter().filter(|k| k.certificate).count() + usize::from(h.certificate);
            out.push(check(format!("negative certificates psi={label}")).on(sp).orders(n, m).cmp(certificates as f64, Ge, 1.0, Proven));
            let f = floor(format!("min_eig/{key}/{sp}/N16"))?;
            out.push(check(format!("min eig psi={label}")).on(sp).orders(n, m).cmp(h.min_eig, Le, f, Oracle));
        }
    }
    Ok(out)
}

fn s11_parabolic_kernel_weight(ctx: &Ctx) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for sp in spaces() {
        for (label, t) in [("1", 1.0), ("2", 2.0)] {
            let phi = MoebiusMap::parabolic_from(c(1.0), c(t))?;
            let op = OperatorSpec::weighted(kernel_weight(&phi, &sp)?, Some(phi))?;
            for n in ctx.sweep(&[8, 16, 24]) {
                let m = ctx.m(default_internal_order(n, true), 2 * n);
                let sa = selfadjoint_defect(&op, &sp, n)?;
                let nd = normality_defect(&op, &sp, n, m)?;
                out.push(check(format!("selfadjoint defect t={label}")).on(sp).order(n).cmp(sa, Report, 0.0, Exact));
                out.push(check(format!("normality defect t={label}")).on(sp).orders(n, m).cmp(nd.value, Report, 0.0, Exact));
            }
        }
    }
    Ok(out)
}
