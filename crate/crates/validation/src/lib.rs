//! Acceptance checks for `hypercoarsen` live in `tests/acceptance.rs`.
//!
//! Run them with `cargo test -p hypercoarsen-validation -- --nocapture`.
//! Each criterion writes one `PASS`/`FAIL` line to stderr.
