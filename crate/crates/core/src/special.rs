//! Complex elementary and special functions.
//!
//! The zeta reflection formula needs a complex sine and Γ(1−s); the Hardy Z
//! rotation needs the imaginary part of log Γ along a vertical line, which
//! must be branch-continuous. The sine carries an explicit overflow guard
//! instead of silently returning infinities.

use crate::error::{MathError, Result};
use num_complex::Complex64 as Complex;
use std::f64::consts::PI;

/// Overflow guard for the hyperbolic factors of the complex sine.
const SIN_IM_GUARD: f64 = 700.0;

/// Complex sine via sin(x)cosh(y) + i·cos(x)sinh(y).
///
/// Refuses |Im z| > 700, where cosh/sinh leave the f64 range.
pub fn c_sin(z: Complex) -> Result<Complex> {
    if !(z.im.abs() <= SIN_IM_GUARD) {
        return Err(MathError::Range(format!(
            "|Im z| = {} exceeds the complex-sine overflow guard {SIN_IM_GUARD}",
            z.im.abs()
        )));
    }
    Ok(Complex::new(
        z.re.sin() * z.im.cosh(),
        z.re.cos() * z.im.sinh(),
    ))
}

// Lanczos g = 7 coefficient set (9 terms), as tabulated in the GNU
// Scientific Library and reproduced in the usual references; accurate to
// roughly 13 significant digits in double precision.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Partial-fraction series A(z) with the argument already shifted by −1.
fn lanczos_series(zm1: Complex) -> Complex {
    let mut acc = Complex::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    acc
}

/// Nearest non-positive integer if z lies within `tol` of one.
fn near_nonpositive_integer(z: Complex, tol: f64) -> Option<i64> {
    let k = z.re.round();
    if k <= 0.0 && (z - Complex::new(k, 0.0)).norm() <= tol {
        Some(k as i64)
    } else {
        None
    }
}

/// Complex gamma via the Lanczos approximation, with the reflection formula
/// for Re z < 0.5. Poles at the non-positive integers are reported as
/// errors carrying the integer.
pub fn c_gamma(z: Complex) -> Result<Complex> {
    if let Some(n) = near_nonpositive_integer(z, 1e-12) {
        return Err(MathError::GammaPole { n });
    }
    if z.re < 0.5 {
        // Γ(z) Γ(1−z) sin(πz) = π
        let s = c_sin(z * PI)?;
        let g = c_gamma(Complex::new(1.0, 0.0) - z)?;
        return Ok(Complex::new(PI, 0.0) / (s * g));
    }
    let zm1 = z - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    let sqrt_two_pi = (2.0 * PI).sqrt();
    Ok(sqrt_two_pi * t.powc(zm1 + 0.5) * (-t).exp() * lanczos_series(zm1))
}

/// Principal-branch log-gamma for Re z > 0.
///
/// Computed in log form (not as log ∘ gamma) so the imaginary part is
/// continuous along vertical lines: the argument is shifted into Re ≥ 1.5
/// by the recurrence log Γ(z) = log Γ(z+1) − log z, and every logarithm
/// taken has its argument in the right half-plane.
pub fn c_log_gamma(z: Complex) -> Result<Complex> {
    if !(z.re > 0.0) {
        return Err(MathError::Domain(format!(
            "log-gamma requires Re z > 0, got Re z = {}",
            z.re
        )));
    }
    let mut shift = Complex::new(0.0, 0.0);
    let mut w = z;
    while w.re < 1.5 {
        shift += w.ln();
        w += 1.0;
    }
    let zm1 = w - 1.0;
    let t = zm1 + LANCZOS_G + 0.5;
    let half_log_two_pi = 0.5 * (2.0 * PI).ln();
    let lg = half_log_two_pi + (zm1 + 0.5) * t.ln() - t + lanczos_series(zm1).ln();
    Ok(lg - shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn sine_examples() {
        assert_eq!(c_sin(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let v = c_sin(c(PI / 2.0, 0.0)).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        let v = c_sin(c(0.0, 1.0)).unwrap();
        assert!((v - c(0.0, 1.0f64.sinh())).norm() < 1e-15);
    }

    #[test]
    fn sine_guard() {
        assert!(matches!(c_sin(c(0.0, 701.0)), Err(MathError::Range(_))));
        assert!(matches!(c_sin(c(0.0, -701.0)), Err(MathError::Range(_))));
        assert!(c_sin(c(0.0, 699.0)).is_ok());
    }

    #[test]
    fn gamma_examples() {
        assert!((c_gamma(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-13);
        assert!((c_gamma(c(5.0, 0.0)).unwrap() - c(24.0, 0.0)).norm() < 1e-10);
        let sqrt_pi = PI.sqrt();
        assert!((c_gamma(c(0.5, 0.0)).unwrap() - c(sqrt_pi, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn gamma_complex_reference_points() {
        // reference values computed with 30-digit arithmetic
        let cases = [
            (
                c(0.5, 3.0),
                c(
                    0.0214456705524306460595528022516,
                    0.00686536483726167791423849381986,
                ),
            ),
            (
                c(2.5, -7.0),
                c(
                    -0.00210860083542321665380073088519,
                    0.0001303601054139139489321941317,
                ),
            ),
            (
                c(5.0, 30.0),
                c(
                    -3.76800885485472302499161205827e-14,
                    -8.81464770589551592356455926936e-15,
                ),
            ),
        ];
        for (z, want) in cases {
            let got = c_gamma(z).unwrap();
            assert!(
                (got - want).norm() / want.norm() < 1e-10,
                "Γ({z}): got {got}, want {want}"
            );
        }
    }

    #[test]
    fn gamma_poles_carry_integer() {
        assert_eq!(c_gamma(c(0.0, 0.0)), Err(MathError::GammaPole { n: 0 }));
        assert_eq!(c_gamma(c(-3.0, 0.0)), Err(MathError::GammaPole { n: -3 }));
        assert_eq!(
            c_gamma(c(-7.0 + 1e-13, 0.0)),
            Err(MathError::GammaPole { n: -7 })
        );
        // near but not at a pole is fine
        assert!(c_gamma(c(-3.0 + 1e-6, 0.0)).is_ok());
    }

    #[test]
    fn log_gamma_examples() {
        assert!(c_log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-13);
        assert!(c_log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-13);
        let want = 362_880f64.ln(); // log Γ(10) = log 9!
        assert!((c_log_gamma(c(10.0, 0.0)).unwrap().re - want).abs() < 1e-11);
    }

    #[test]
    fn log_gamma_complex_reference_points() {
        let cases = [
            (
                c(0.5, 3.0),
                c(
                    -3.79345045043622317335070779111,
                    0.309819271086439166056006685144,
                ),
            ),
            (
                c(2.5, -7.0),
                c(
                    -6.15982326154129586908932686503,
                    -9.4865224125738955893677537208,
                ),
            ),
            (
                c(5.0, 30.0),
                c(
                    -30.8830045413850863913635925657,
                    78.7696176953086649984760050286,
                ),
            ),
            (
                c(0.25, 7.067),
                c(
                    -10.6705811992551267212778747212,
                    6.36084198456499377226409717502,
                ),
            ),
        ];
        for (z, want) in cases {
            let got = c_log_gamma(z).unwrap();
            assert!(
                (got - want).norm() < 1e-9,
                "logΓ({z}): got {got}, want {want}"
            );
        }
    }

    #[test]
    fn log_gamma_domain() {
        assert!(matches!(
            c_log_gamma(c(0.0, 5.0)),
            Err(MathError::Domain(_))
        ));
        assert!(matches!(
            c_log_gamma(c(-1.0, 0.5)),
            Err(MathError::Domain(_))
        ));
    }

    #[test]
    fn recurrence_on_grid() {
        // Γ(z+1) = z·Γ(z) to relative 1e-9 on Re ∈ [0.1, 5], Im ∈ [−30, 30]
        let mut worst = 0.0f64;
        for i in 0..=24 {
            let re = 0.1 + i as f64 * 0.2;
            for j in -30..=30 {
                let z = c(re, j as f64);
                let lhs = c_gamma(z + 1.0).unwrap();
                let rhs = z * c_gamma(z).unwrap();
                worst = worst.max((lhs - rhs).norm() / rhs.norm());
            }
        }
        assert!(worst < 1e-9, "worst relative recurrence error {worst}");
    }

    #[test]
    fn reflection_on_grid() {
        // Γ(z)Γ(1−z)sin(πz)/π = 1 to relative 1e-8, away from sine zeros
        let mut worst = 0.0f64;
        for i in 1..20 {
            let re = i as f64 / 20.0;
            for j in -30..=30 {
                let z = c(re, j as f64);
                let s = c_sin(z * PI).unwrap();
                if s.norm() < 1e-6 {
                    continue;
                }
                let prod = c_gamma(z).unwrap() * c_gamma(c(1.0, 0.0) - z).unwrap() * s / PI;
                worst = worst.max((prod - c(1.0, 0.0)).norm());
            }
        }
        assert!(worst < 1e-8, "worst reflection error {worst}");
    }

    #[test]
    fn exp_log_gamma_matches_gamma() {
        let mut worst = 0.0f64;
        for i in 0..=19 {
            let re = 0.5 + i as f64 * 0.5;
            for j in -50..=50 {
                let z = c(re, j as f64);
                let lhs = c_log_gamma(z).unwrap().exp();
                let rhs = c_gamma(z).unwrap();
                worst = worst.max((lhs - rhs).norm() / rhs.norm());
            }
        }
        assert!(worst < 1e-9, "worst exp∘logΓ error {worst}");
    }

    #[test]
    fn log_gamma_continuous_along_vertical_line() {
        // the Hardy rotation uses Im log Γ(1/4 + it/2); no branch jumps allowed
        let mut prev = c_log_gamma(c(0.25, 0.0)).unwrap().im;
        let mut t = 0.05f64;
        while t <= 120.0 {
            let cur = c_log_gamma(c(0.25, t / 2.0)).unwrap().im;
            assert!((cur - prev).abs() < 0.5, "jump at t = {t}: {prev} -> {cur}");
            prev = cur;
            t += 0.05;
        }
    }
}
