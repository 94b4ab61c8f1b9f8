//! Criterion benchmarks for the `cechsnap` kernels live in `benches/`.
