//! Criterion benchmarks for the decision procedures live in `benches/`.
