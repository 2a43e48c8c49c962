//! Shared fixtures for the kernel benchmarks.

use zetakit::Complex;

/// Ordinate of the first critical-line zero, for strip-point fixtures.
pub const FIRST_ZERO_T: f64 = 14.134725141734695;

/// A representative critical-line point with nontrivial height.
pub fn critical_point() -> Complex {
    Complex::new(0.5, FIRST_ZERO_T)
}

/// A point just inside the Dirichlet regime where the tail completion
/// carries the work.
pub fn near_one_point() -> Complex {
    Complex::new(1.2, 2.0 * FIRST_ZERO_T)
}
