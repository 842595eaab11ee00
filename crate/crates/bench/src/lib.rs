//! Criterion benchmarks for `kgo-core`; see `benches/`.
