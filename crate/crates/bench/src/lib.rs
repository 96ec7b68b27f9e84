//! Criterion benchmarks for `holembed`; see `benches/`.
