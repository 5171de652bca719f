//! Criterion benchmarks for normal-form computation live in `benches/`.
