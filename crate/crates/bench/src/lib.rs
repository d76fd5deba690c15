//! Criterion benchmarks for the `cyclicbent` crate live in `benches/`.
