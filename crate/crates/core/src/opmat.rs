//! Truncated matrices of weighted composition operators `W f = ψ · (f ∘ φ)`
//! in the orthonormal monomial basis `e_n = z^n / b_n`.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{spectral_norm, CMatrix};
use crate::mobius::{MoebiusMap, DEFAULT_TOL};
use crate::series::{fmt_sig, sequence_tail, tail_diagnostics, AnalyticExpr, PowerSeries};
use crate::space::SpaceSpec;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Radius and size of the grid used to spot-check that a weight is bounded.
pub const WEIGHT_GRID_RADIUS: f64 = 0.999;
pub const WEIGHT_GRID_POINTS: usize = 512;

/// `W_{ψ,φ}`; a missing symbol means the identity map, so `(f, None)` is the
/// analytic Toeplitz operator `T_f`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawOperator")]
pub struct OperatorSpec {
    pub weight: AnalyticExpr,
    pub symbol: Option<MoebiusMap>,
}

#[derive(Deserialize)]
struct RawOperator {
    weight: AnalyticExpr,
    #[serde(default)]
    symbol: Option<MoebiusMap>,
}

impl TryFrom<RawOperator> for OperatorSpec {
    type Error = Error;

    fn try_from(raw: RawOperator) -> Result<Self> {
        OperatorSpec::weighted(raw.weight, raw.symbol)
    }
}

/// Max of `|f|` on the circle of radius `r`.
pub fn max_modulus_on_circle(f: &AnalyticExpr, r: f64, points: usize) -> f64 {
    (0..points)
        .map(|k| {
            let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / points as f64);
            f.eval(z).norm()
        })
        .fold(0.0, |acc, v| if v.is_nan() { f64::INFINITY } else { acc.max(v) })
}

impl OperatorSpec {
    /// Validated constructor: the symbol must map the disk into itself and
    /// the weight must look bounded near the circle.
    pub fn weighted(weight: AnalyticExpr, symbol: Option<MoebiusMap>) -> Result<Self> {
        if let Some(m) = &symbol {
            if !m.is_self_map(DEFAULT_TOL) {
                return Err(Error::NotSelfMap);
            }
        }
        let weight = weight.normalize()?;
        weight.taylor(0)?;
        let outer = max_modulus_on_circle(&weight, WEIGHT_GRID_RADIUS, WEIGHT_GRID_POINTS);
        let inner = max_modulus_on_circle(&weight, 0.99, WEIGHT_GRID_POINTS);
        // a pole on the circle shows up as growth between the two radii
        if !outer.is_finite() || outer > 2.0 * inner + 1e-12 {
            return Err(Error::UnboundedWeight(outer));
        }
        Ok(OperatorSpec { weight, symbol })
    }

    pub fn composition(symbol: MoebiusMap) -> Result<Self> {
        Self::weighted(AnalyticExpr::one(), Some(symbol))
    }

    pub fn toeplitz(weight: AnalyticExpr) -> Result<Self> {
        Self::weighted(weight, None)
    }

    /// The symbol, with the identity standing in for Toeplitz operators.
    pub fn symbol_or_identity(&self) -> MoebiusMap {
        self.symbol.unwrap_or_else(MoebiusMap::identity)
    }

    /// Whether the symbol's attracting point lies on the unit circle.
    pub fn boundary_symbol(&self) -> bool {
        self.symbol
            .and_then(|m| m.classify(DEFAULT_TOL).ok())
            .is_some_and(|c| c.class.has_boundary_dw())
    }

    /// `c·W`.
    pub fn scaled(&self, c: Complex64) -> OperatorSpec {
        OperatorSpec { weight: AnalyticExpr::scale(c, self.weight.clone()), symbol: self.symbol }
    }

    /// `W^k = W_{Π ψ∘φ_m, φ_k}`, `m < k`.
    pub fn power(&self, k: usize) -> Result<OperatorSpec> {
        let phi = self.symbol_or_identity();
        let mut factors = Vec::with_capacity(k);
        let mut iter = MoebiusMap::identity();
        for _ in 0..k {
            factors.push(AnalyticExpr::precompose(self.weight.clone(), iter));
            iter = phi.compose(&iter).normalized();
        }
        let symbol = self.symbol.map(|_| iter);
        OperatorSpec::weighted(AnalyticExpr::product(factors), symbol)
    }
}

/// Default internal order for compressions of order `n`: `max(8n, 160)`,
/// doubled for symbols with a boundary attracting point.
pub fn default_internal_order(n: usize, boundary: bool) -> usize {
    let m = (8 * n).max(160);
    if boundary {
        2 * m
    } else {
        m
    }
}

/// Series `ψ φ^j` for `j = 0..=cols`, each to order `rows`.
fn column_series(op: &OperatorSpec, rows: usize, cols: usize) -> Result<Vec<PowerSeries>> {
    let mut cur = op.weight.taylor(rows)?;
    let mut out = Vec::with_capacity(cols + 1);
    for _ in 0..cols {
        let next = match &op.symbol {
            Some(m) => cur.mul_moebius(m)?,
            None => cur.shift(),
        };
        out.push(cur);
        cur = next;
    }
    out.push(cur);
    Ok(out)
}

/// Raw entries `⟨A e_j, e_i⟩` for `i <= rows`, `j <= cols`.
pub fn block_entries(op: &OperatorSpec, space: &SpaceSpec, rows: usize, cols: usize) -> Result<CMatrix> {
    let cols_series = column_series(op, rows, cols)?;
    let b = space.basis_norms(rows.max(cols)).norms();
    Ok(CMatrix::from_fn(rows + 1, cols + 1, |i, j| cols_series[j][i] * (b[i] / b[j])))
}

/// A materialized `(M+1) x (N+1)` block with truncation diagnostics.
/// Serializes entries row by row as `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "RawBlock", try_from = "RawBlock")]
pub struct TruncatedBlock {
    pub entries: CMatrix,
    pub space: SpaceSpec,
    pub row_order: usize,
    pub col_order: usize,
    /// Slow coefficient decay or a boundary-touching symbol.
    pub tail_flag: bool,
    /// Estimated norm of what the truncation discards.
    pub tail_estimate: f64,
}

#[derive(Serialize, Deserialize)]
struct RawBlock {
    space: SpaceSpec,
    row_order: usize,
    col_order: usize,
    tail_flag: bool,
    #[serde(with = "crate::serde_ext")]
    tail_estimate: f64,
    entries: Vec<Vec<Complex64>>,
}

impl From<TruncatedBlock> for RawBlock {
    fn from(b: TruncatedBlock) -> Self {
        let entries = b.entries.row_iter().map(|r| r.iter().copied().collect()).collect();
        RawBlock {
            space: b.space,
            row_order: b.row_order,
            col_order: b.col_order,
            tail_flag: b.tail_flag,
            tail_estimate: b.tail_estimate,
            entries,
        }
    }
}

impl TryFrom<RawBlock> for TruncatedBlock {
    type Error = Error;

    fn try_from(r: RawBlock) -> Result<Self> {
        let (rows, cols) = (r.row_order + 1, r.col_order + 1);
        if r.entries.len() != rows || r.entries.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidArgument(format!("block entries do not form a {rows} x {cols} array")));
        }
        Ok(TruncatedBlock {
            entries: CMatrix::from_fn(rows, cols, |i, j| r.entries[i][j]),
            space: r.space,
            row_order: r.row_order,
            col_order: r.col_order,
            tail_flag: r.tail_flag,
            tail_estimate: r.tail_estimate,
        })
    }
}

/// Metadata written next to an exported block.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockHeader {
    pub n: usize,
    pub m: usize,
    pub space: SpaceSpec,
    pub tail_flag: bool,
    #[serde(with = "crate::serde_ext")]
    pub tail_estimate: f64,
}

impl TruncatedBlock {
    /// Leading `(k+1) x (k+1)` compression, `k <= min(row_order, col_order)`.
    pub fn leading(&self, k: usize) -> CMatrix {
        self.entries.view((0, 0), (k + 1, k + 1)).into_owned()
    }

    pub fn square(&self) -> CMatrix {
        self.leading(self.row_order.min(self.col_order))
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn header(&self) -> BlockHeader {
        BlockHeader {
            n: self.col_order,
            m: self.row_order,
            space: self.space,
            tail_flag: self.tail_flag,
            tail_estimate: self.tail_estimate,
        }
    }

    /// Dense CSV: `i, re_0, im_0, re_1, im_1, ...`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec!["i".to_string()];
        for j in 0..=self.col_order {
            header.push(format!("re_{j}"));
            header.push(format!("im_{j}"));
        }
        wtr.write_record(&header)?;
        for i in 0..=self.row_order {
            let mut row = vec![i.to_string()];
            for j in 0..=self.col_order {
                let z = self.entries[(i, j)];
                row.push(fmt_sig(z.re));
                row.push(fmt_sig(z.im));
            }
            wtr.write_record(&row)?;
        }
        wtr.flush()?;
        Ok(())
    }
}

pub fn build_block(op: &OperatorSpec, space: &SpaceSpec, n: usize, m: usize) -> Result<TruncatedBlock> {
    if m < n {
        return Err(Error::OrderPolicy { n, m, required: n });
    }
    let entries = block_entries(op, space, m, n)?;
    let mut tail_sq = 0.0;
    let mut slow = false;
    if m >= 16 {
        for j in 0..=n {
            let col: Vec<Complex64> = entries.column(j).iter().copied().collect();
            let d = tail_diagnostics(&col);
            slow |= d.slow_decay;
            tail_sq += d.tail_bound * d.tail_bound;
        }
    }
    Ok(TruncatedBlock {
        entries,
        space: *space,
        row_order: m,
        col_order: n,
        tail_flag: slow || op.boundary_symbol(),
        tail_estimate: tail_sq.sqrt(),
    })
}

/// `P_N A* P_M = (P_M A P_N)*`, exact.
pub fn adjoint_block(b: &TruncatedBlock) -> TruncatedBlock {
    TruncatedBlock {
        entries: b.entries.adjoint(),
        space: b.space,
        row_order: b.col_order,
        col_order: b.row_order,
        tail_flag: b.tail_flag,
        tail_estimate: b.tail_estimate,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "op", rename_all = "snake_case")]
pub enum Letter {
    Plain(OperatorSpec),
    Adjoint(OperatorSpec),
}

impl Letter {
    pub fn op(&self) -> &OperatorSpec {
        match self {
            Letter::Plain(op) | Letter::Adjoint(op) => op,
        }
    }
}

/// Product `L_1 L_2 ... L_k` of operators and adjoints.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Letter>", into = "Vec<Letter>")]
pub struct OperatorWord {
    letters: Vec<Letter>,
}

impl TryFrom<Vec<Letter>> for OperatorWord {
    type Error = Error;

    fn try_from(letters: Vec<Letter>) -> Result<Self> {
        OperatorWord::new(letters)
    }
}

impl From<OperatorWord> for Vec<Letter> {
    fn from(w: OperatorWord) -> Self {
        w.letters
    }
}

impl OperatorWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidArgument("operator word must be nonempty".into()));
        }
        Ok(OperatorWord { letters })
    }

    pub fn plain(op: OperatorSpec) -> Self {
        OperatorWord { letters: vec![Letter::Plain(op)] }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// `self · other`.
    pub fn then(&self, other: &OperatorWord) -> OperatorWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        OperatorWord { letters }
    }

    pub fn push(mut self, letter: Letter) -> Self {
        self.letters.push(letter);
        self
    }
}

/// `P_N L_1 P_M L_2 ... P_M L_k P_N`, assembled right to left.
fn word_product(wd: &OperatorWord, space: &SpaceSpec, n: usize, m: usize) -> Result<CMatrix> {
    let mut x = CMatrix::from_fn(m + 1, n + 1, |i, j| if i == j { ONE } else { ZERO });
    for letter in wd.letters.iter().rev() {
        let full = block_entries(letter.op(), space, m, m)?;
        x = match letter {
            Letter::Plain(_) => &full * &x,
            Letter::Adjoint(_) => full.ad_mul(&x),
        };
    }
    Ok(x.rows(0, n + 1).into_owned())
}

/// Square `(N+1) x (N+1)` compression of a word, with intermediate products
/// held at internal order `M >= 2N`. The tail estimate is the change against
/// internal order `M/2`.
pub fn word_block(wd: &OperatorWord, space: &SpaceSpec, n: usize, m: usize) -> Result<TruncatedBlock> {
    if m < 2 * n {
        return Err(Error::OrderPolicy { n, m, required: 2 * n });
    }
    let fine = word_product(wd, space, n, m)?;
    let tail_estimate = if wd.letters.len() > 1 {
        let coarse = word_product(wd, space, n, (m / 2).max(n))?;
        spectral_norm(&(&fine - &coarse))
    } else {
        0.0
    };
    Ok(TruncatedBlock {
        entries: fine,
        space: *space,
        row_order: n,
        col_order: n,
        tail_flag: wd.letters.iter().any(|l| l.op().boundary_symbol()),
        tail_estimate,
    })
}

/// `P_N A*A P_N` and `P_N A A* P_N` with a bound on the truncation error of
/// either, in spectral norm.
#[derive(Clone, Debug)]
pub struct GramBlocks {
    pub g1: CMatrix,
    pub g2: CMatrix,
    /// `(M+1) x (N+1)` column block `P_M A P_N`.
    pub columns: CMatrix,
    /// `(N+1) x (M+1)` row block `P_N A P_M`.
    pub rows: CMatrix,
    pub column_tail_sq: f64,
    pub row_tail_sq: f64,
    pub tail_bound: f64,
    pub tail_flag: bool,
}

pub fn gram_blocks(op: &OperatorSpec, space: &SpaceSpec, n: usize, m: usize) -> Result<GramBlocks> {
    if m < 2 * n {
        return Err(Error::OrderPolicy { n, m, required: 2 * n });
    }
    let columns = block_entries(op, space, m, n)?;
    let rows = block_entries(op, space, n, m)?;
    let g1 = columns.ad_mul(&columns);
    let g2 = &rows * rows.adjoint();
    let tail_of = |v: Vec<Complex64>| {
        let t = sequence_tail(&v);
        t * t
    };
    let column_tail_sq: f64 = (0..=n).map(|j| tail_of(columns.column(j).iter().copied().collect())).sum();
    let row_tail_sq: f64 = (0..=n).map(|i| tail_of(rows.row(i).iter().copied().collect())).sum();
    let scale = spectral_norm(&g1).max(spectral_norm(&g2)).max(1.0);
    let rounding = 64.0 * f64::EPSILON * (m as f64 + 1.0) * scale;
    let slow = (0..=n).any(|j| {
        let col: Vec<Complex64> = columns.column(j).iter().copied().collect();
        tail_diagnostics(&col).slow_decay
    });
    Ok(GramBlocks {
        g1,
        g2,
        columns,
        rows,
        column_tail_sq,
        row_tail_sq,
        tail_bound: column_tail_sq + row_tail_sq + rounding,
        tail_flag: slow || op.boundary_symbol(),
    })
}

/// Largest singular value of the leading square block: a lower bound for
/// the operator norm, nondecreasing in the block size.
pub fn operator_norm_estimate(b: &TruncatedBlock) -> f64 {
    spectral_norm(&b.square())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_norm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn family() -> (OperatorSpec, MoebiusMap) {
        let phi = MoebiusMap::from_real(1.0, 0.0, -1.0, 2.0).unwrap();
        let psi = AnalyticExpr::rational_real(&[2.0], &[2.0, -1.0]).unwrap();
        (OperatorSpec::weighted(psi, Some(phi)).unwrap(), phi)
    }

    #[test]
    fn single_letter_examples() {
        let lam = c(0.6, 0.8);
        let rot = OperatorSpec::composition(MoebiusMap::rotation(lam).unwrap()).unwrap();
        let b = build_block(&rot, &SpaceSpec::Hardy, 5, 8).unwrap();
        for i in 0..=8 {
            for j in 0..=5 {
                let expect = if i == j { lam.powu(j as u32) } else { ZERO };
                assert!((b.entry(i, j) - expect).norm() < 1e-15);
            }
        }
        let t = OperatorSpec::toeplitz(AnalyticExpr::poly_real(&[2.0, 1.0])).unwrap();
        let b = build_block(&t, &SpaceSpec::Hardy, 4, 6).unwrap();
        for i in 0..=6 {
            for j in 0..=4 {
                let expect = if i == j { 2.0 } else if i == j + 1 { 1.0 } else { 0.0 };
                assert_eq!(b.entry(i, j), c(expect, 0.0));
            }
        }
        let adj = adjoint_block(&b);
        assert_eq!(adj.entry(0, 1), c(1.0, 0.0));
        assert_eq!(adjoint_block(&adj).entries, b.entries);
        let berg = SpaceSpec::bergman(0.0).unwrap();
        let b = build_block(&t, &berg, 4, 6).unwrap();
        assert!((b.entry(1, 0).re - 0.5f64.sqrt()).abs() < 1e-15);
        let (w, _) = family();
        let b = build_block(&w, &SpaceSpec::Hardy, 4, 10).unwrap();
        for i in 0..=10 {
            assert!((b.entry(i, 0).re - 0.5f64.powi(i as i32)).abs() < 1e-15);
        }
        let ci = OperatorSpec::composition(MoebiusMap::rotation(c(0.0, 1.0)).unwrap()).unwrap();
        let adj = adjoint_block(&build_block(&ci, &SpaceSpec::Hardy, 3, 3).unwrap());
        let expect = [c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)];
        for (k, e) in expect.iter().enumerate() {
            assert!((adj.entry(k, k) - e).norm() < 1e-15);
        }
    }

    #[test]
    fn order_policy() {
        let (w, _) = family();
        assert!(matches!(build_block(&w, &SpaceSpec::Hardy, 8, 4), Err(Error::OrderPolicy { .. })));
        let wd = OperatorWord::plain(w.clone());
        assert!(matches!(word_block(&wd, &SpaceSpec::Hardy, 8, 15), Err(Error::OrderPolicy { .. })));
        assert!(gram_blocks(&w, &SpaceSpec::Hardy, 8, 15).is_err());
        assert!(OperatorWord::new(vec![]).is_err());
    }

    #[test]
    fn rejects_bad_operators() {
        let out = MoebiusMap::from_real(2.0, 0.0, 0.0, 1.0).unwrap();
        assert!(matches!(OperatorSpec::composition(out), Err(Error::NotSelfMap)));
        let pole = AnalyticExpr::rational_real(&[1.0], &[1.0, -1.0]).unwrap();
        assert!(matches!(OperatorSpec::toeplitz(pole), Err(Error::UnboundedWeight(_))));
        let bounded = AnalyticExpr::exp(AnalyticExpr::z());
        assert!(OperatorSpec::toeplitz(bounded).is_ok());
    }

    #[test]
    fn single_letter_word_is_the_block() {
        let (w, _) = family();
        let wb = word_block(&OperatorWord::plain(w.clone()), &SpaceSpec::Hardy, 6, 12).unwrap();
        let b = build_block(&w, &SpaceSpec::Hardy, 6, 12).unwrap();
        assert!((&wb.entries - b.leading(6)).norm() < 1e-15);
    }

    #[test]
    fn gram_examples() {
        let h = SpaceSpec::Hardy;
        let lam = c(0.3, -0.4);
        let rot = OperatorSpec::composition(MoebiusMap::rotation(lam).unwrap()).unwrap();
        let g = gram_blocks(&rot, &h, 6, 12).unwrap();
        for k in 0..=6 {
            let e = lam.norm_sqr().powi(k as i32);
            assert!((g.g1[(k, k)].re - e).abs() < 1e-15 && (g.g2[(k, k)].re - e).abs() < 1e-15);
        }
        let shift = OperatorSpec::toeplitz(AnalyticExpr::z()).unwrap();
        let g = gram_blocks(&shift, &h, 6, 12).unwrap();
        assert!((&g.g1 - CMatrix::identity(7, 7)).norm() < 1e-15);
        assert_eq!(g.g2[(0, 0)], ZERO);
        assert_eq!(g.g2[(3, 3)], ONE);
        let g = gram_blocks(&shift, &SpaceSpec::bergman(0.0).unwrap(), 6, 12).unwrap();
        for k in 0..=6 {
            assert!((g.g1[(k, k)].re - (k as f64 + 1.0) / (k as f64 + 2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn gram_dominates_square_compression() {
        let (w, phi) = family();
        let ops = [
            w,
            OperatorSpec::composition(MoebiusMap::from_real(1.0, 1.0, 0.0, 2.0).unwrap()).unwrap(),
            OperatorSpec::weighted(AnalyticExpr::exp(AnalyticExpr::z()), Some(phi)).unwrap(),
        ];
        for op in &ops {
            for sp in [SpaceSpec::Hardy, SpaceSpec::bergman(1.0).unwrap()] {
                let g = gram_blocks(op, &sp, 10, 80).unwrap();
                let bn = build_block(op, &sp, 10, 10).unwrap().square();
                let diff = &g.g1 - bn.ad_mul(&bn);
                let ev = crate::linalg::hermitian_eigenvalues(&diff);
                assert!(ev[0] >= -1e-12, "{}", ev[0]);
            }
        }
    }

    #[test]
    fn adjoint_word_matches_adjoint() {
        let phi = MoebiusMap::from_real(1.0, 0.0, -1.0, 2.0).unwrap();
        for sp in [SpaceSpec::Hardy, SpaceSpec::bergman(0.5).unwrap()] {
            let gamma = sp.gamma();
            let sigma = phi.krein_adjoint();
            let g = AnalyticExpr::power(AnalyticExpr::poly(vec![phi.d.conj(), -phi.b.conj()]), -gamma).unwrap();
            let h = AnalyticExpr::power(AnalyticExpr::poly(vec![phi.d, phi.c]), gamma).unwrap();
            let wd = OperatorWord::new(vec![
                Letter::Plain(OperatorSpec::toeplitz(g).unwrap()),
                Letter::Plain(OperatorSpec::composition(sigma).unwrap()),
                Letter::Adjoint(OperatorSpec::toeplitz(h).unwrap()),
            ])
            .unwrap();
            let lhs = adjoint_block(&build_block(&OperatorSpec::composition(phi).unwrap(), &sp, 24, 24).unwrap());
            let rhs = word_block(&wd, &sp, 24, 160).unwrap();
            assert!(spectral_norm(&(&lhs.entries - &rhs.entries)) < 1e-9);
        }
    }

    #[test]
    fn norm_estimate_of_toeplitz_grows_to_sup_norm() {
        let t = OperatorSpec::toeplitz(AnalyticExpr::poly_real(&[2.0, 1.0])).unwrap();
        let mut prev = 0.0;
        for n in [4, 8, 16, 32, 64] {
            let v = operator_norm_estimate(&build_block(&t, &SpaceSpec::Hardy, n, n).unwrap());
            assert!(v >= prev - 1e-14 && v <= 3.0);
            prev = v;
        }
        assert!(prev > 2.99);
        let id = OperatorSpec::composition(MoebiusMap::identity()).unwrap();
        let v = operator_norm_estimate(&build_block(&id, &SpaceSpec::Hardy, 5, 5).unwrap());
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn powers_match_word_products() {
        let (w, _) = family();
        let sp = SpaceSpec::bergman(0.0).unwrap();
        let w3 = w.power(3).unwrap();
        let exact = build_block(&w3, &sp, 8, 8).unwrap().square();
        let wd = OperatorWord::new(vec![Letter::Plain(w.clone()), Letter::Plain(w.clone()), Letter::Plain(w)]).unwrap();
        let prod = word_block(&wd, &sp, 8, 64).unwrap();
        assert!((&exact - &prod.entries).norm() < 1e-12);
        let _ = hermitian_norm(&exact.ad_mul(&exact));
    }

    #[test]
    fn csv_and_header() {
        let t = OperatorSpec::toeplitz(AnalyticExpr::poly_real(&[2.0, 1.0])).unwrap();
        let b = build_block(&t, &SpaceSpec::Hardy, 1, 2).unwrap();
        let mut buf = Vec::new();
        b.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "i,re_0,im_0,re_1,im_1");
        assert_eq!(lines.len(), 4);
        let h = serde_json::to_value(b.header()).unwrap();
        assert_eq!(h["n"], 1);
        assert_eq!(h["space"]["kind"], "hardy");
    }

    #[test]
    fn operator_json_round_trip() {
        let (w, _) = family();
        let text = serde_json::to_string(&w).unwrap();
        let back: OperatorSpec = serde_json::from_str(&text).unwrap();
        let a = build_block(&w, &SpaceSpec::Hardy, 5, 5).unwrap();
        let b = build_block(&back, &SpaceSpec::Hardy, 5, 5).unwrap();
        assert_eq!(a.entries, b.entries);
        let bad = r#"{"weight":{"kind":"poly","coeffs":[[1,0]]},"symbol":{"a":[2,0],"b":[0,0],"c":[0,0],"d":[1,0]}}"#;
        assert!(serde_json::from_str::<OperatorSpec>(bad).is_err());
        let wd = OperatorWord::new(vec![Letter::Adjoint(w)]).unwrap();
        let text = serde_json::to_string(&wd).unwrap();
        assert!(text.starts_with(r#"[{"kind":"adjoint""#));
        assert!(serde_json::from_str::<OperatorWord>("[]").is_err());
    }
}
