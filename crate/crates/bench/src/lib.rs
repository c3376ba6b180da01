//! Benchmark-only crate; see `benches/searches.rs`.
