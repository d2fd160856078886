//! Criterion benchmarks for the polynomial and operator kernels; see `benches/`.
