//! Benchmarks for `uqint-core` live in `benches/`.
