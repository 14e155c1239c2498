//! Criterion benchmarks for the census and counting paths; see `benches/`.
