//! Criterion benchmarks for lftlab live under `benches/`.
