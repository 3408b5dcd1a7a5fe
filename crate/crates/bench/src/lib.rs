//! Criterion benchmarks for bethe-core; see `benches/bethe.rs`.
