//! ζ(s) across the complex plane, and critical-line zero location.
//!
//! Three evaluation regimes, dispatched on Re s:
//!
//! * **dirichlet** (Re s > 1.001): the plain sum Σ n^(−s). When the integral
//!   tail bound reaches the tolerance within the term cap the sum is simply
//!   truncated; otherwise the head is summed directly and the tail is
//!   completed with an Euler–Maclaurin correction, which is what makes the
//!   regime usable arbitrarily close to Re s = 1.
//! * **eta** (0 < Re s ≤ 1.001): the alternating series Σ (−1)^(n+1) n^(−s)
//!   under Cohen–Rodriguez Villegas–Zagier acceleration, divided by the
//!   prefactor 1 − 2^(1−s). Refuses points too close to s = 1 (pole) or to
//!   the prefactor zeros 1 + 2πik/ln 2.
//! * **functional** (Re s ≤ 0): 2^s π^(s−1) sin(πs/2) Γ(1−s) ζ(1−s), with
//!   exact zeros returned at the negative even integers where the sine
//!   factor vanishes identically.
//!
//! Zeros on the critical line are located by scanning the Hardy Z function
//! for sign changes and bisecting each bracket.
//!
//! Every reported `est_error` is an empirical tail estimate, not a proven
//! bound. Nothing here certifies the classical zero-free property of the
//! line Re s = 1: that is not checkable by finite computation, and the
//! line is simply served by the eta regime like the rest of the strip's
//! closure.

use crate::error::{MathError, Result};
use crate::special::{c_gamma, c_log_gamma, c_sin};
use num_complex::Complex64 as Complex;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

/// Default cap on series terms and acceleration order.
pub const DEFAULT_MAX_TERMS: usize = 2000;

/// Smallest supported tolerance; below this f64 rounding dominates.
pub const MIN_TOL: f64 = 1e-12;

/// Acceleration order beyond which the (3+√8)^n weights leave f64 range.
const CVZ_CAP: usize = 300;

const ONE: Complex = Complex::new(1.0, 0.0);

/// Which evaluation path produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Dirichlet,
    Eta,
    Functional,
}

/// A ζ evaluation together with its truncation bookkeeping.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalResult {
    #[serde(with = "crate::complex_fields")]
    pub value: Complex,
    pub terms_used: usize,
    /// Empirical tail estimate; 0 only for exact trivial zeros.
    pub est_error: f64,
    pub regime: Regime,
}

/// A located critical-line zero: 1-based index in increasing-t order,
/// the ordinate t, and the residual |ζ(1/2 + it)| at the refined point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub index: usize,
    pub t: f64,
    pub residual: f64,
}

fn check_tol(tol: f64) -> Result<f64> {
    if tol >= MIN_TOL {
        Ok(tol)
    } else {
        Err(MathError::Domain(format!(
            "tolerance must be at least {MIN_TOL}, got {tol}"
        )))
    }
}

/// Compensated (Neumaier) accumulator for long real sums.
#[derive(Default, Clone, Copy)]
pub(crate) struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

// ---------------------------------------------------------------------------
// alternating-series acceleration
// ---------------------------------------------------------------------------

/// Accelerated value of Σ_{k≥0} (−1)^k a(k) with n Chebyshev-derived weights.
pub(crate) fn cvz_alternating<F: Fn(usize) -> Complex>(a: F, n: usize) -> Complex {
    let n = n.clamp(4, CVZ_CAP);
    let mut d = (3.0 + 8.0f64.sqrt()).powi(n as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0f64;
    let mut c = -d;
    let mut s = Complex::new(0.0, 0.0);
    let nf = n as f64;
    for k in 0..n {
        c = b - c;
        s += c * a(k);
        let kf = k as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

pub(crate) fn cvz_alternating_real<F: Fn(usize) -> f64>(a: F, n: usize) -> f64 {
    cvz_alternating(|k| Complex::new(a(k), 0.0), n).re
}

/// Acceleration order for a requested tolerance at height |t|: the weight
/// count grows as 1.31 per digit, and the digits needed grow linearly in
/// |t| because the terms n^(−s) oscillate with amplitude ~e^(π|t|/2).
/// Two digits of headroom keep the empirical estimate inside `tol`.
pub(crate) fn cvz_terms(tol: f64, t_abs: f64, max_terms: usize) -> usize {
    let digits = (-tol.log10()).clamp(1.0, 17.0) + 2.0;
    let penalty = PI / (2.0 * std::f64::consts::LN_10) * t_abs + (1.0 + 2.0 * t_abs).log10();
    let n = (1.31 * (digits + penalty)).ceil() as usize;
    n.clamp(8, max_terms.clamp(8, CVZ_CAP))
}

/// One acceleration step shrinks the error by 3 + √8; six steps separate
/// the two evaluations used for the empirical remainder estimate.
pub(crate) const CVZ_STEP_CONTRACTION: f64 = 2.551e-5; // (3+√8)^(−6)

// ---------------------------------------------------------------------------
// Euler–Maclaurin tail
// ---------------------------------------------------------------------------

const BERNOULLI_2K: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Euler–Maclaurin completion of Σ_{n>N} n^(−w) for Re w > 1:
///
/// ```text
/// N^(1−w)/(w−1) − N^(−w)/2 + Σ_k B_2k/(2k)! · w(w+1)…(w+2k−2) · N^(−w−2k+1)
/// ```
///
/// Returns the tail and an empirical remainder estimate (the magnitude of
/// the last correction kept, or of the first omitted one if the asymptotic
/// series started growing).
pub(crate) fn em_tail(w: Complex, n: usize) -> (Complex, f64) {
    let nf = n as f64;
    let n_minus_w = (-w * nf.ln()).exp();
    let mut tail = n_minus_w * nf / (w - 1.0) - 0.5 * n_minus_w;
    let mut rising = w;
    let mut pw = n_minus_w / nf;
    let mut fact = 2.0;
    let mut prev_mag = f64::INFINITY;
    let mut rem = f64::INFINITY;
    for (k, &b2k) in BERNOULLI_2K.iter().enumerate() {
        let term = rising * (b2k / fact) * pw;
        let mag = term.norm();
        if mag >= prev_mag {
            rem = mag;
            break;
        }
        tail += term;
        rem = mag;
        prev_mag = mag;
        let j = 2.0 * (k + 1) as f64;
        rising = rising * (w + (j - 1.0)) * (w + j);
        fact *= (j + 1.0) * (j + 2.0);
        pw /= nf * nf;
    }
    (tail, rem)
}

/// Head-plus-tail evaluation of Σ n^(−w), doubling the head length until
/// the Euler–Maclaurin remainder estimate is comfortably inside `tol`.
fn dirichlet_head_plus_tail(w: Complex, tol: f64) -> (Complex, usize, f64) {
    let mut n = (24.0f64.max(0.9 * w.im.abs() + 16.0)).ceil() as usize;
    loop {
        let mut re_acc = Accumulator::default();
        let mut im_acc = Accumulator::default();
        for k in 1..=n {
            let term = (-w * (k as f64).ln()).exp();
            re_acc.add(term.re);
            im_acc.add(term.im);
        }
        let head = Complex::new(re_acc.total(), im_acc.total());
        let (tail, rem) = em_tail(w, n);
        let value = head + tail;
        let est = rem.max(f64::EPSILON * value.norm());
        if rem <= tol * 0.25 || n >= (1 << 20) {
            return (value, n, est);
        }
        n *= 2;
    }
}

// ---------------------------------------------------------------------------
// regimes
// ---------------------------------------------------------------------------

/// ζ(s) by the Dirichlet series, for Re s ≥ 1.001.
pub fn zeta_dirichlet(s: Complex, tol: f64) -> Result<EvalResult> {
    zeta_dirichlet_with(s, tol, DEFAULT_MAX_TERMS)
}

pub fn zeta_dirichlet_with(s: Complex, tol: f64, max_terms: usize) -> Result<EvalResult> {
    let tol = check_tol(tol)?;
    let sigma = s.re;
    if !(sigma >= 1.0 + 1e-3) {
        return Err(MathError::Regime(format!(
            "the Dirichlet sum needs Re s ≥ 1.001 (got {sigma}); use the eta regime"
        )));
    }
    // plain truncation when the integral tail bound N^(1−σ)/(σ−1) hits tol
    // within the term cap
    let needed = (tol * (sigma - 1.0)).powf(-1.0 / (sigma - 1.0));
    if needed.is_finite() && needed <= max_terms as f64 {
        let n = (needed.ceil() as usize).max(1);
        let mut value = Complex::new(0.0, 0.0);
        for k in 1..=n {
            value += (-s * (k as f64).ln()).exp();
        }
        let bound = (n as f64).powf(1.0 - sigma) / (sigma - 1.0);
        return Ok(EvalResult {
            value,
            terms_used: n,
            est_error: bound,
            regime: Regime::Dirichlet,
        });
    }
    let (value, terms_used, est_error) = dirichlet_head_plus_tail(s, tol);
    Ok(EvalResult {
        value,
        terms_used,
        est_error,
        regime: Regime::Dirichlet,
    })
}

/// ζ(s) through the eta (alternating) series, for Re s > 0.
pub fn zeta_eta(s: Complex, tol: f64) -> Result<EvalResult> {
    zeta_eta_with(s, tol, DEFAULT_MAX_TERMS)
}

pub fn zeta_eta_with(s: Complex, tol: f64, max_terms: usize) -> Result<EvalResult> {
    let tol = check_tol(tol)?;
    if !(s.re > 0.0) {
        return Err(MathError::Regime(format!(
            "the eta series needs Re s > 0, got {}",
            s.re
        )));
    }
    if (s - ONE).norm() < 1e-8 {
        return Err(MathError::Undefined { re: s.re, im: s.im });
    }
    // prefactor zeros: 1 − 2^(1−s) = 0 at s = 1 + 2πik/ln 2, k ≠ 0
    if (s.re - 1.0).abs() < 1e-6 {
        let k = (s.im * LN_2 / (2.0 * PI)).round();
        if k != 0.0 {
            let zero = Complex::new(1.0, 2.0 * PI * k / LN_2);
            if (s - zero).norm() < 1e-6 {
                return Err(MathError::Conditioning(format!(
                    "s is within 1e-6 of the prefactor zero 1 + {k}·2πi/ln 2; \
                     evaluate at a shifted point instead"
                )));
            }
        }
    }
    let n = cvz_terms(tol, s.im.abs(), max_terms);
    let term = |k: usize| (-s * ((k + 1) as f64).ln()).exp();
    let hi = cvz_alternating(term, n);
    let lo = cvz_alternating(term, n.saturating_sub(6).max(4));
    // |hi − lo| estimates the error of the coarser sum; the finer one is a
    // further six contraction steps ahead, plus an f64 rounding floor
    let eta_est = (hi - lo).norm() * CVZ_STEP_CONTRACTION + f64::EPSILON * hi.norm() * n as f64;
    let denom = ONE - ((ONE - s) * LN_2).exp();
    let value = hi / denom;
    let est_error = eta_est / denom.norm() + f64::EPSILON * value.norm();
    Ok(EvalResult {
        value,
        terms_used: n,
        est_error,
        regime: Regime::Eta,
    })
}

/// ζ(s) by reflection, for Re s ≤ 0 and s ≠ 0.
pub fn zeta_functional(s: Complex, tol: f64) -> Result<EvalResult> {
    zeta_functional_with(s, tol, DEFAULT_MAX_TERMS)
}

pub fn zeta_functional_with(s: Complex, tol: f64, max_terms: usize) -> Result<EvalResult> {
    let tol = check_tol(tol)?;
    if !(s.re <= 0.0) {
        return Err(MathError::Regime(format!(
            "the reflection formula is used for Re s ≤ 0, got {}",
            s.re
        )));
    }
    if s.norm() <= 1e-12 {
        return Err(MathError::Undefined { re: s.re, im: s.im });
    }
    // the sine factor vanishes identically at the negative even integers;
    // return an exact zero instead of ~1e-16 rounding noise
    let k = (s.re / 2.0).round();
    if k <= -1.0 && (s - Complex::new(2.0 * k, 0.0)).norm() <= 1e-12 {
        return Ok(EvalResult {
            value: Complex::new(0.0, 0.0),
            terms_used: 0,
            est_error: 0.0,
            regime: Regime::Functional,
        });
    }
    let one_minus_s = ONE - s;
    let inner = if one_minus_s.re >= 1.0 + 1e-3 {
        zeta_dirichlet_with(one_minus_s, tol, max_terms)?
    } else {
        zeta_eta_with(one_minus_s, tol, max_terms)?
    };
    let sin_term = c_sin(s * (PI / 2.0))?;
    let gamma_term = c_gamma(one_minus_s)?;
    let prefix = (s * LN_2).exp() * ((s - 1.0) * PI.ln()).exp(); // 2^s π^(s−1)
    let value = prefix * sin_term * gamma_term * inner.value;
    let rel = inner.est_error / inner.value.norm().max(f64::MIN_POSITIVE) + 8.0 * f64::EPSILON;
    Ok(EvalResult {
        value,
        terms_used: inner.terms_used,
        est_error: value.norm() * rel,
        regime: Regime::Functional,
    })
}

/// ζ(s) anywhere it is defined, dispatching on Re s.
pub fn zeta(s: Complex, tol: f64) -> Result<EvalResult> {
    zeta_with(s, tol, DEFAULT_MAX_TERMS)
}

pub fn zeta_with(s: Complex, tol: f64, max_terms: usize) -> Result<EvalResult> {
    let tol = check_tol(tol)?;
    if s.norm() < 1e-8 {
        return Err(MathError::Undefined { re: s.re, im: s.im });
    }
    if (s - ONE).norm() < 1e-8 {
        return Err(MathError::Undefined { re: s.re, im: s.im });
    }
    if s.re > 1.0 + 1e-3 {
        zeta_dirichlet_with(s, tol, max_terms)
    } else if s.re > 0.0 {
        zeta_eta_with(s, tol, max_terms)
    } else {
        zeta_functional_with(s, tol, max_terms)
    }
}

// ---------------------------------------------------------------------------
// Euler product
// ---------------------------------------------------------------------------

/// Partial Euler product Π_{p ≤ prime_limit} 1/(1 − p^(−s)), Re s > 1.
pub fn euler_product(s: Complex, prime_limit: u64) -> Result<Complex> {
    if !(s.re > 1.0) {
        return Err(MathError::Regime(format!(
            "the Euler product converges only for Re s > 1, got {}",
            s.re
        )));
    }
    if prime_limit < 2 {
        return Err(MathError::Domain(format!(
            "prime_limit must be at least 2, got {prime_limit}"
        )));
    }
    if prime_limit > 100_000_000 {
        return Err(MathError::Domain(
            "prime_limit above 1e8 is not supported".into(),
        ));
    }
    let limit = prime_limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut product = ONE;
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        let mut m = p * p;
        while m <= limit {
            composite[m] = true;
            m += p;
        }
        let p_pow = (-s * (p as f64).ln()).exp();
        product /= ONE - p_pow;
    }
    Ok(product)
}

// ---------------------------------------------------------------------------
// Hardy Z and zero scanning
// ---------------------------------------------------------------------------

/// The rotation phase θ(t) = Im log Γ(1/4 + it/2) − (t/2)·ln π.
pub fn riemann_siegel_theta(t: f64) -> Result<f64> {
    let lg = c_log_gamma(Complex::new(0.25, t / 2.0))?;
    Ok(lg.im - (t / 2.0) * PI.ln())
}

/// Hardy's real-valued rotation Z(t) = e^(iθ(t)) ζ(1/2 + it), whose sign
/// changes mark critical-line zeros.
pub fn hardy_z(t: f64, tol: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(MathError::Domain(format!("hardy_z needs t ≥ 0, got {t}")));
    }
    let tol = check_tol(tol)?;
    let z = zeta_eta(Complex::new(0.5, t), tol)?;
    let theta = riemann_siegel_theta(t)?;
    let rotated = Complex::from_polar(1.0, theta) * z.value;
    debug_assert!(
        rotated.im.abs() <= 10.0 * tol + 1e3 * f64::EPSILON * rotated.norm().max(1.0),
        "rotation left imaginary residue {} at t = {t}",
        rotated.im
    );
    Ok(rotated.re)
}

/// Scan [t_min, t_max] for sign changes of Z on a grid of the given step,
/// bisect each bracket below width 1e-10, and report the zeros in t-order.
///
/// A step too coarse to isolate consecutive zeros is not detected; the
/// default 0.1 is comfortable for t ≤ 100. Results are deterministic for
/// fixed inputs regardless of how the grid evaluation is scheduled.
pub fn find_zeros(t_min: f64, t_max: f64, step: f64, tol: f64) -> Result<Vec<ZeroRecord>> {
    if !(t_min >= 0.0 && t_min < t_max) {
        return Err(MathError::Domain(format!(
            "need 0 ≤ t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    if !(step > 0.0 && step <= 0.5) {
        return Err(MathError::Domain(format!(
            "need 0 < step ≤ 0.5, got {step}"
        )));
    }
    let tol = check_tol(tol)?;
    let n_steps = ((t_max - t_min) / step).ceil() as usize;
    let mut grid: Vec<f64> = (0..=n_steps)
        .map(|i| (t_min + i as f64 * step).min(t_max))
        .collect();
    grid.dedup();
    let values: Vec<f64> = grid
        .par_iter()
        .map(|&t| hardy_z(t, tol))
        .collect::<Result<_>>()?;

    let mut brackets: Vec<(f64, f64, f64)> = Vec::new();
    for i in 0..grid.len() - 1 {
        if values[i] == 0.0 {
            brackets.push((grid[i], grid[i], 0.0));
        } else if values[i].signum() != values[i + 1].signum() && values[i + 1] != 0.0 {
            brackets.push((grid[i], grid[i + 1], values[i]));
        }
    }
    if let Some(&last) = values.last() {
        if last == 0.0 {
            brackets.push((*grid.last().unwrap(), *grid.last().unwrap(), 0.0));
        }
    }

    let refined: Vec<(f64, f64)> = brackets
        .par_iter()
        .map(|&(mut lo, mut hi, mut f_lo)| -> Result<(f64, f64)> {
            while hi - lo > 1e-10 {
                let mid = 0.5 * (lo + hi);
                let f_mid = hardy_z(mid, tol)?;
                if f_mid == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if f_mid.signum() == f_lo.signum() {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            let t0 = 0.5 * (lo + hi);
            let residual = zeta_eta(Complex::new(0.5, t0), tol)?.value.norm();
            Ok((t0, residual))
        })
        .collect::<Result<_>>()?;

    Ok(refined
        .into_iter()
        .enumerate()
        .map(|(i, (t, residual))| ZeroRecord {
            index: i + 1,
            t,
            residual,
        })
        .collect())
}
