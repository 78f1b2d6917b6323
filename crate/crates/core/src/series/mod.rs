//! Power series arithmetic and the closed-form expression tree that feeds it.

mod expr;
mod power_series;

pub use expr::AnalyticExpr;
pub use power_series::{
    fmt_sig, moebius_powers, sequence_tail, tail_diagnostics, PowerSeries, TailDiagnostics,
    SLOW_DECAY_RATIO,
};
