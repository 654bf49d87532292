//! Exact 64-bit integer arithmetic: primality, factorization, Euler's totient,
//! square-freeness, Korselt's criterion and the Lehmer condition.
//!
//! Everything here is integer-only. Modular products go through `u128`.

use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cannot factor zero")]
    Zero,
    #[error("{op} is defined for n >= {min}, got {n}")]
    Domain { op: &'static str, min: u64, n: u64 },
}

/// An integer together with its prime factorization.
///
/// Primes are strictly increasing and every multiplicity is at least one;
/// `1` has an empty factor list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Multiply the prime powers back together. `None` on overflow, which
    /// cannot happen for a factorization built by [`factorize`].
    pub fn reconstruct(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| p.checked_pow(e).and_then(|pe| acc.checked_mul(pe)))
    }

    /// `∏ p^(e-1) (p-1)`.
    pub fn totient(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

const TRIAL_LIMIT: u32 = 1 << 10;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

/// Primes `<= limit` by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u32);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// The first twelve primes are a strong-probable-prime witness set for every
// n < 3.3 * 10^24, which covers all of u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's cycle-finding variant of Pollard's rho with batched gcds.
/// Returns a nontrivial divisor or `None` if this polynomial failed.
fn brent_rho(n: u64, c: u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut x = y;
    let mut ys = y;
    let mut q = 1u64;
    let mut r = 1u64;
    let mut g = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r <<= 1;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == n {
        // batch overshot; step back one at a time
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn find_divisor(n: u64) -> u64 {
    for c in 1..64 {
        if let Some(d) = brent_rho(n, c) {
            return d;
        }
    }
    // Deterministic fallback. Unreachable in practice, but guarantees
    // termination for every composite input.
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = find_divisor(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Factor `n`, rejecting zero. The result is checked by reconstruction.
pub fn factorize(n: u64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::Zero);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        let bound = TRIAL_LIMIT as u64;
        if rest < bound * bound || is_prime(rest) {
            factors.push((rest, 1));
        } else {
            let mut big = Vec::new();
            split_into(rest, &mut big);
            big.sort_unstable();
            for p in big {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    let f = Factorization { value: n, factors };
    assert_eq!(f.reconstruct(), Some(n), "factorization does not reconstruct {n}");
    Ok(f)
}

/// Euler's totient. `euler_phi(0)` is 0 by convention.
pub fn euler_phi(n: u64) -> u64 {
    match factorize(n) {
        Ok(f) => f.totient(),
        Err(_) => 0,
    }
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).map(|f| f.is_squarefree()).unwrap_or(false)
}

/// Korselt's criterion: composite, squarefree, and `p - 1 | n - 1` for
/// every prime `p | n`.
pub fn is_carmichael(n: u64) -> bool {
    if n < 2 || is_prime(n) {
        return false;
    }
    let f = match factorize(n) {
        Ok(f) => f,
        Err(_) => return false,
    };
    f.is_squarefree() && f.primes().all(|p| (n - 1).is_multiple_of(p - 1))
}

/// Composite `n` with `φ(n) | n - 1`. Only defined for `n >= 2`.
pub fn is_lehmer(n: u64) -> Result<bool, ArithError> {
    if n < 2 {
        return Err(ArithError::Domain { op: "is_lehmer", min: 2, n });
    }
    if is_prime(n) {
        return Ok(false);
    }
    Ok((n - 1).is_multiple_of(euler_phi(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gcd_count(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(561));
        assert!(is_prime(u64::MAX - 58)); // largest 64-bit prime
        assert!(!is_prime(u64::MAX));
        // strong pseudoprime to bases 2..=37 would be > 2^64; these fool fewer bases
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn primality_matches_sieve() {
        let primes = primes_up_to(100_000);
        let mut it = primes.iter().peekable();
        for n in 0..=100_000u64 {
            let expected = it.peek().map(|&&p| p as u64 == n).unwrap_or(false);
            if expected {
                it.next();
            }
            assert_eq!(is_prime(n), expected, "n = {n}");
        }
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(0), Err(ArithError::Zero));
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(1024).unwrap().factors(), &[(2, 10)]);
        assert_eq!(factorize(561).unwrap().factors(), &[(3, 1), (11, 1), (17, 1)]);
        // two ~32-bit primes, forces the rho path
        let n = 4_294_967_291u64 * 4_294_967_279;
        assert_eq!(factorize(n).unwrap().factors(), &[(4_294_967_279, 1), (4_294_967_291, 1)]);
        assert_eq!(factorize(u64::MAX).unwrap().to_string(), "3 * 5 * 17 * 257 * 641 * 65537 * 6700417");
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(7), 6);
        assert_eq!(euler_phi(561), gcd_count(561));
        assert_eq!(euler_phi(561), 320);
    }

    #[test]
    fn phi_matches_gcd_count() {
        for n in 1..=2_000 {
            assert_eq!(euler_phi(n), gcd_count(n), "n = {n}");
        }
    }

    #[test]
    fn squarefree_and_carmichael_examples() {
        assert!(is_squarefree(30));
        assert!(!is_squarefree(9));
        assert!(is_squarefree(561));
        assert!(is_carmichael(561));
        assert!(!is_carmichael(9));
        assert!(!is_carmichael(7));
        assert!(!is_carmichael(1));
        let fermat = (1..561u64).all(|b| pow_mod(b, 561, 561) == b);
        assert!(fermat);
    }

    #[test]
    fn lehmer_examples() {
        assert_eq!(is_lehmer(561), Ok(false));
        assert_eq!(is_lehmer(13), Ok(false));
        assert_eq!(is_lehmer(15), Ok(false));
        assert!(is_lehmer(1).is_err());
        assert!(is_lehmer(0).is_err());
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in 1u64..) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(f.reconstruct(), Some(n));
            prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(f.primes().all(is_prime));
        }

        #[test]
        fn phi_multiplicative(a in 1u64..=10_000, b in 1u64..=10_000) {
            prop_assume!(a.gcd(&b) == 1);
            prop_assert_eq!(euler_phi(a * b), euler_phi(a) * euler_phi(b));
        }
    }
}
