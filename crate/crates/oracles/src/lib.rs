//! Brute-force reference computations for tests.
pub fn placeholder() {}
