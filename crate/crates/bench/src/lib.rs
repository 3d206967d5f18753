//! Criterion benchmarks for `hscp-core`; see `benches/`. Run with
//! `cargo bench -p hscp-bench`.
