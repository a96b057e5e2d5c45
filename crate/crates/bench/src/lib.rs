//! Benchmarks for the intersection homology engine live under `benches/`.
