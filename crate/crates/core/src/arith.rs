//! Exact integer arithmetic on 64-bit naturals.
//!
//! Everything here is pure integer computation: prime-power factorization,
//! the with-multiplicity prime count Ω, the Liouville sign (−1)^Ω, divisor
//! enumeration, and the divisor-sum function
//!
//! ```text
//! β(n) = Σ_{m|n} (−1)^(n/m + 1) · (−1)^Ω(m)
//! ```
//!
//! together with its closed form (1 on squares, −2 on twice-squares, 0
//! otherwise). Zero is rejected everywhere: the functions are defined on
//! naturals starting at 1. Overflow of an intermediate product is an
//! explicit error, never a wraparound.
//!
//! For bulk sweeps there is a smallest-prime-factor sieve ([`SpfSieve`])
//! and an additive Ω table ([`omega_table`]) whose construction does not
//! go through [`factorize`], so the two can cross-check each other.

use crate::error::{MathError, Result};
use serde::Serialize;

/// Prime-power decomposition of a natural number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: u64,
    /// `(prime, exponent)` pairs with strictly increasing primes and
    /// exponents ≥ 1; empty exactly when `n == 1`.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Number of prime factors counted with multiplicity (Ω).
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Recompute `n` from the factor list; `None` on overflow.
    pub fn product(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            (0..e).try_fold(acc, |a, _| a.checked_mul(p))
        })
    }
}

/// How `n` falls in the β closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaClass {
    Square,
    TwiceSquare,
    Other,
}

impl std::fmt::Display for BetaClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BetaClass::Square => write!(f, "square"),
            BetaClass::TwiceSquare => write!(f, "twice-square"),
            BetaClass::Other => write!(f, "other"),
        }
    }
}

/// β(n) by the closed form, with the classification that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BetaValue {
    pub n: u64,
    pub value: i64,
    pub classification: BetaClass,
}

fn require_natural(n: u64) -> Result<()> {
    if n == 0 {
        Err(MathError::Domain(
            "0 is not a natural number here; arguments start at 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// Trial-division factorization of `n ≥ 1`.
///
/// `factorize(1)` has an empty factor list. Intended for desk-scale inputs;
/// for bulk ranges build an [`SpfSieve`] instead.
pub fn factorize(n: u64) -> Result<Factorization> {
    require_natural(n)?;
    let mut rem = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3] {
        let mut e = 0;
        while rem % p == 0 {
            rem /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    let mut d = 5u64;
    while d <= rem / d {
        for p in [d, d + 2] {
            if rem % p == 0 {
                let mut e = 0;
                while rem % p == 0 {
                    rem /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
        }
        d += 6;
    }
    if rem > 1 {
        factors.push((rem, 1));
    }
    Ok(Factorization { n, factors })
}

/// Ω(n): the exponent sum of the factorization of `n ≥ 1`; Ω(1) = 0.
pub fn big_omega(n: u64) -> Result<u32> {
    Ok(factorize(n)?.big_omega())
}

/// The Liouville sign (−1)^Ω(n) ∈ {−1, +1}.
pub fn liouville(n: u64) -> Result<i32> {
    Ok(if big_omega(n)? % 2 == 0 { 1 } else { -1 })
}

/// All divisors of `n ≥ 1` in increasing order, including 1 and n.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    let f = factorize(n)?;
    let mut divs = vec![1u64];
    for &(p, e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &d in &divs {
            let mut dp = d;
            for k in 0..=e {
                next.push(dp);
                if k < e {
                    dp *= p; // divides n, cannot overflow
                }
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Walk the divisors of a factorization together with their Ω values.
pub(crate) fn divisors_with_omega(f: &Factorization) -> Vec<(u64, u32)> {
    let mut divs: Vec<(u64, u32)> = vec![(1, 0)];
    for &(p, e) in &f.factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for &(d, om) in &divs {
            let mut dp = d;
            for k in 0..=e {
                next.push((dp, om + k));
                if k < e {
                    dp *= p;
                }
            }
        }
        divs = next;
    }
    divs
}

fn beta_of_factorization(f: &Factorization) -> i64 {
    let mut sum = 0i64;
    for (m, om) in divisors_with_omega(f) {
        let cofactor = f.n / m;
        let sign_cof = if cofactor % 2 == 1 { 1i64 } else { -1 };
        let sign_om = if om % 2 == 0 { 1i64 } else { -1 };
        sum += sign_cof * sign_om;
    }
    sum
}

/// β(n) computed term by term over the divisors of `n`, in exact integer
/// arithmetic.
pub fn beta_divisor_sum(n: u64) -> Result<i64> {
    Ok(beta_of_factorization(&factorize(n)?))
}

/// Exact perfect-square test via integer square root; no floating point.
pub fn is_perfect_square(n: u64) -> bool {
    let r = n.isqrt();
    r * r == n
}

/// β(n) by the closed form: 1 on squares, −2 on twice-squares, 0 otherwise.
pub fn beta_closed_form(n: u64) -> Result<BetaValue> {
    require_natural(n)?;
    Ok(if is_perfect_square(n) {
        BetaValue {
            n,
            value: 1,
            classification: BetaClass::Square,
        }
    } else if n % 2 == 0 && is_perfect_square(n / 2) {
        BetaValue {
            n,
            value: -2,
            classification: BetaClass::TwiceSquare,
        }
    } else {
        BetaValue {
            n,
            value: 0,
            classification: BetaClass::Other,
        }
    })
}

/// Deterministic Miller–Rabin primality test for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    let mul_mod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow_mod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_mod(acc, base);
            }
            base = mul_mod(base, base);
            exp >>= 1;
        }
        acc
    };
    // This witness set is known to decide primality for all u64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest-prime-factor sieve for bulk factorization of `n ≤ limit`.
///
/// Built once, read-only afterwards; safe to share across threads.
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    /// Sieve all n ≤ `limit`. Memory is 4 bytes per integer, so keep the
    /// limit at or below about 10^7 unless you mean it.
    pub fn new(limit: u32) -> Self {
        let mut spf: Vec<u32> = (0..=limit).collect();
        let mut p = 2u64;
        while p * p <= limit as u64 {
            if spf[p as usize] == p as u32 {
                let mut m = p * p;
                while m <= limit as u64 {
                    if spf[m as usize] == m as u32 {
                        spf[m as usize] = p as u32;
                    }
                    m += p;
                }
            }
            p += 1;
        }
        Self { spf }
    }

    pub fn limit(&self) -> u32 {
        (self.spf.len() - 1) as u32
    }

    /// Factorize `1 ≤ n ≤ limit` by walking smallest prime factors.
    pub fn factorize(&self, n: u32) -> Result<Factorization> {
        require_natural(n as u64)?;
        if n > self.limit() {
            return Err(MathError::Domain(format!(
                "{n} exceeds the sieve limit {}",
                self.limit()
            )));
        }
        let mut rem = n;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while rem > 1 {
            let p = self.spf[rem as usize];
            let mut e = 0;
            while rem % p == 0 {
                rem /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        Ok(Factorization {
            n: n as u64,
            factors,
        })
    }

    pub fn big_omega(&self, n: u32) -> Result<u32> {
        Ok(self.factorize(n)?.big_omega())
    }

    /// β(n) by divisor sum, sieve-backed.
    pub fn beta_divisor_sum(&self, n: u32) -> Result<i64> {
        Ok(beta_of_factorization(&self.factorize(n)?))
    }
}

/// Table of Ω(n) for all n ≤ `limit`, built by an additive increment sieve:
/// every prime power q = p^k ≤ limit adds 1 to each of its multiples.
///
/// The construction shares no code with [`factorize`], which makes the table
/// an independent route for checking the additivity of Ω.
pub fn omega_table(limit: usize) -> Vec<u8> {
    let mut om = vec![0u8; limit + 1];
    for p in 2..=limit {
        // When we reach p, every smaller prime has already marked its
        // multiples, so om[p] == 0 exactly when p is prime.
        if om[p] == 0 {
            let mut q = p;
            loop {
                let mut m = q;
                while m <= limit {
                    om[m] += 1;
                    m += q;
                }
                match q.checked_mul(p) {
                    Some(next) if next <= limit => q = next,
                    _ => break,
                }
            }
        }
    }
    om
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap().factors, vec![]);
        assert_eq!(factorize(12).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97).unwrap().factors, vec![(97, 1)]);
        assert_eq!(
            factorize(2u64.pow(62)).unwrap().factors,
            vec![(2, 62)],
            "large power of two"
        );
    }

    #[test]
    fn factorize_rejects_zero() {
        assert!(matches!(factorize(0), Err(MathError::Domain(_))));
        assert!(matches!(big_omega(0), Err(MathError::Domain(_))));
        assert!(matches!(liouville(0), Err(MathError::Domain(_))));
        assert!(matches!(divisors(0), Err(MathError::Domain(_))));
        assert!(matches!(beta_divisor_sum(0), Err(MathError::Domain(_))));
        assert!(matches!(beta_closed_form(0), Err(MathError::Domain(_))));
    }

    #[test]
    fn big_omega_examples() {
        assert_eq!(big_omega(1).unwrap(), 0);
        assert_eq!(big_omega(12).unwrap(), 3);
        assert_eq!(big_omega(7).unwrap(), 1);
    }

    #[test]
    fn liouville_examples() {
        assert_eq!(liouville(1).unwrap(), 1);
        assert_eq!(liouville(2).unwrap(), -1);
        assert_eq!(liouville(4).unwrap(), 1);
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(7).unwrap(), vec![1, 7]);
    }

    #[test]
    fn beta_divisor_sum_examples() {
        assert_eq!(beta_divisor_sum(2).unwrap(), -2);
        assert_eq!(beta_divisor_sum(3).unwrap(), 0);
        assert_eq!(beta_divisor_sum(4).unwrap(), 1);
    }

    #[test]
    fn beta_first_ten() {
        let expected = [1i64, -2, 0, 1, 0, 0, 0, -2, 1, 0];
        for (i, &want) in expected.iter().enumerate() {
            let n = i as u64 + 1;
            assert_eq!(beta_divisor_sum(n).unwrap(), want, "β({n})");
            assert_eq!(beta_closed_form(n).unwrap().value, want, "closed β({n})");
        }
    }

    #[test]
    fn beta_closed_form_examples() {
        let v = beta_closed_form(9).unwrap();
        assert_eq!((v.value, v.classification), (1, BetaClass::Square));
        let v = beta_closed_form(8).unwrap();
        assert_eq!((v.value, v.classification), (-2, BetaClass::TwiceSquare));
        let v = beta_closed_form(6).unwrap();
        assert_eq!((v.value, v.classification), (0, BetaClass::Other));
    }

    #[test]
    fn beta_oracle_equivalence_small() {
        let sieve = SpfSieve::new(10_000);
        for n in 1..=10_000u32 {
            assert_eq!(
                sieve.beta_divisor_sum(n).unwrap(),
                beta_closed_form(n as u64).unwrap().value,
                "β disagreement at n = {n}"
            );
        }
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieve = SpfSieve::new(20_000);
        for n in 1..=20_000u32 {
            assert_eq!(sieve.factorize(n).unwrap(), factorize(n as u64).unwrap());
        }
    }

    #[test]
    fn omega_table_matches_factorize() {
        let table = omega_table(50_000);
        for n in 1..=50_000u64 {
            assert_eq!(
                u32::from(table[n as usize]),
                big_omega(n).unwrap(),
                "Ω({n})"
            );
        }
    }

    #[test]
    fn perfect_square_edges() {
        assert!(is_perfect_square(1));
        assert!(is_perfect_square(4));
        assert!(!is_perfect_square(2));
        // near 2^63: (3037000499)^2 is the largest square below 2^63
        let r = 3_037_000_499u64;
        assert!(is_perfect_square(r * r));
        assert!(!is_perfect_square(r * r - 1));
        assert!(!is_perfect_square(r * r + 1));
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..2_000u64 {
            let by_trial = n >= 2 && factorize(n.max(1)).unwrap().factors == vec![(n, 1)];
            assert_eq!(is_prime(n), by_trial, "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
    }

    proptest! {
        #[test]
        fn factorization_reconstructs_n(n in 1u64..5_000_000) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.product(), Some(n));
            for w in f.factors.windows(2) {
                prop_assert!(w[0].0 < w[1].0, "primes strictly increasing");
            }
            for &(p, e) in &f.factors {
                prop_assert!(is_prime(p), "{p} must be prime");
                prop_assert!(e >= 1);
            }
            prop_assert_eq!(f.factors.is_empty(), n == 1);
        }

        #[test]
        fn omega_fully_additive(a in 1u64..100_000, b in 1u64..100_000) {
            let lhs = big_omega(a * b).unwrap();
            prop_assert_eq!(lhs, big_omega(a).unwrap() + big_omega(b).unwrap());
        }

        #[test]
        fn liouville_completely_multiplicative(a in 1u64..50_000, b in 1u64..50_000) {
            let l = liouville(a * b).unwrap();
            prop_assert_eq!(l, liouville(a).unwrap() * liouville(b).unwrap());
            prop_assert!(l == 1 || l == -1);
        }

        #[test]
        fn divisor_list_is_complete(n in 1u64..200_000) {
            let divs = divisors(n).unwrap();
            prop_assert!(divs.contains(&1) && divs.contains(&n));
            for w in divs.windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            for &d in &divs {
                prop_assert_eq!(n % d, 0);
            }
            let tau: usize = factorize(n).unwrap().factors.iter()
                .map(|&(_, e)| e as usize + 1)
                .product();
            prop_assert_eq!(divs.len(), tau);
        }

        #[test]
        fn closed_form_matches_divisor_sum(n in 1u64..300_000) {
            prop_assert_eq!(beta_divisor_sum(n).unwrap(), beta_closed_form(n).unwrap().value);
        }
    }
}
