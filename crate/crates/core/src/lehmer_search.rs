//! Segmented totient sieve and the range scanner for Lehmer's condition
//! `φ(n) | n - 1` over composite `n`.
//!
//! A segment `[lo, hi]` is sieved with every base prime `p <= √hi`: each
//! multiple of `p` has its totient scaled by `(p - 1) / p` and `p` divided out
//! of a residual cofactor. Whatever cofactor survives is a single prime above
//! `√hi` and is corrected for in a final pass. Along the way the sieve records
//! square-freeness and Korselt's divisibility test so Carmichael numbers come
//! for free.
//!
//! Segments are independent and are handed out to a rayon pool; their
//! partial reports are merged in ascending order, so the output does not
//! depend on the number of workers or the segment length.

use std::collections::TryReserveError;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith;

pub const DEFAULT_SEGMENT_LENGTH: u64 = 1 << 20;
pub const MAX_SCAN_BOUND: u64 = i64::MAX as u64;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid range [{lo}, {hi}]: {reason}")]
    Range { lo: u64, hi: u64, reason: &'static str },
    #[error("invalid configuration: {0}")]
    Config(&'static str),
    #[error("could not allocate sieve buffers")]
    Resource(#[from] TryReserveError),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    /// A candidate the sieve flagged failed an independent re-check. This is
    /// an implementation bug, never a mathematical finding.
    #[error("internal inconsistency at n = {n}: {what}")]
    Inconsistent { n: u64, what: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub lo: u64,
    pub hi: u64,
    pub segment_length: u64,
    pub worker_count: usize,
    pub collect_carmichael: bool,
}

impl ScanConfig {
    pub fn new(lo: u64, hi: u64) -> Self {
        ScanConfig { lo, hi, segment_length: DEFAULT_SEGMENT_LENGTH, worker_count: 1, collect_carmichael: false }
    }

    pub fn segment_length(mut self, len: u64) -> Self {
        self.segment_length = len;
        self
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.worker_count = n;
        self
    }

    pub fn carmichael(mut self, yes: bool) -> Self {
        self.collect_carmichael = yes;
        self
    }

    pub fn validate(&self) -> Result<(), ScanError> {
        check_range(self.lo, self.hi)?;
        if self.segment_length < 2 {
            return Err(ScanError::Config("segment_length must be at least 2"));
        }
        if self.worker_count == 0 {
            return Err(ScanError::Config("worker_count must be positive"));
        }
        Ok(())
    }
}

fn check_range(lo: u64, hi: u64) -> Result<(), ScanError> {
    let reason = if lo < 2 {
        "lower bound must be at least 2"
    } else if hi < lo {
        "upper bound below lower bound"
    } else if hi > MAX_SCAN_BOUND {
        "upper bound exceeds 2^63 - 1"
    } else {
        return Ok(());
    };
    Err(ScanError::Range { lo, hi, reason })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub lo: u64,
    pub hi: u64,
    pub lehmer_candidates: Vec<u64>,
    /// Present only when the scan was asked to collect them.
    pub carmichael_found: Option<Vec<u64>>,
    pub composites_tested: u64,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// Known necessary conditions on a Lehmer number: odd and squarefree.
///
/// Used as a sanity filter on scanner output, never as the test itself.
pub fn known_constraint_filter(n: u64) -> bool {
    n % 2 == 1 && arith::is_squarefree(n)
}

/// Integer square root, floor.
pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// Primes up to a limit, produced block by block so memory stays at
/// `O(√limit)` no matter how far the stream runs.
pub(crate) struct PrimeStream {
    limit: u64,
    sievers: Vec<u32>,
    block_lo: u64,
    block: Vec<bool>,
    pos: usize,
}

const PRIME_BLOCK: u64 = 1 << 16;

impl PrimeStream {
    pub(crate) fn new(limit: u64) -> PrimeStream {
        let root = isqrt(limit);
        PrimeStream {
            limit,
            sievers: arith::primes_up_to(u32::try_from(root).unwrap_or(u32::MAX)),
            block_lo: 2,
            block: Vec::new(),
            pos: 0,
        }
    }

    fn fill(&mut self) -> bool {
        if self.block_lo > self.limit {
            return false;
        }
        let lo = self.block_lo;
        let hi = (lo + PRIME_BLOCK - 1).min(self.limit);
        self.block.clear();
        self.block.resize((hi - lo + 1) as usize, true);
        for &p in &self.sievers {
            let p = p as u64;
            if p * p > hi {
                break;
            }
            let mut m = (p * p).max(lo.div_ceil(p) * p);
            while m <= hi {
                self.block[(m - lo) as usize] = false;
                m += p;
            }
        }
        self.pos = 0;
        self.block_lo = hi + 1;
        true
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            while self.pos < self.block.len() {
                let i = self.pos;
                self.pos += 1;
                if self.block[i] {
                    return Some(self.block_lo - self.block.len() as u64 + i as u64);
                }
            }
            if !self.fill() {
                return None;
            }
        }
    }
}

// Above this √hi the base-prime table is not materialized and
// every segment streams its own base primes instead.
const BASE_TABLE_LIMIT: u64 = 1 << 28;

enum BasePrimes {
    Table(Vec<u32>),
    Streamed(u64),
}

impl BasePrimes {
    fn for_range(hi: u64) -> Result<BasePrimes, ScanError> {
        let root = isqrt(hi);
        if root > BASE_TABLE_LIMIT {
            return Ok(BasePrimes::Streamed(root));
        }
        let mut table = Vec::new();
        // π(x) < 1.26 x / ln x
        let estimate = (1.26 * root as f64 / (root.max(3) as f64).ln()) as usize + 16;
        table.try_reserve(estimate)?;
        table.extend(PrimeStream::new(root).map(|p| p as u32));
        Ok(BasePrimes::Table(table))
    }

    fn iter(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        match self {
            BasePrimes::Table(t) => Box::new(t.iter().map(|&p| p as u64)),
            BasePrimes::Streamed(root) => Box::new(PrimeStream::new(*root)),
        }
    }
}

/// Sieve state for one segment.
struct Segment {
    lo: u64,
    phi: Vec<u64>,
    // squarefree and Korselt-compatible so far
    korselt: Vec<bool>,
}

impl Segment {
    fn sieve(lo: u64, hi: u64, primes: impl Iterator<Item = u64>, track_korselt: bool) -> Result<Segment, ScanError> {
        let len = (hi - lo + 1) as usize;
        let mut phi = Vec::new();
        phi.try_reserve_exact(len)?;
        phi.extend(lo..=hi);
        let mut rest = Vec::new();
        rest.try_reserve_exact(len)?;
        rest.extend(lo..=hi);
        let mut korselt = Vec::new();
        if track_korselt {
            korselt.try_reserve_exact(len)?;
            korselt.resize(len, true);
        }

        for p in primes {
            if p * p > hi {
                break;
            }
            let first = lo.div_ceil(p) * p;
            let mut n = first;
            while n <= hi {
                let i = (n - lo) as usize;
                phi[i] -= phi[i] / p;
                let mut r = rest[i] / p;
                if r % p == 0 {
                    if track_korselt {
                        korselt[i] = false;
                    }
                    while r % p == 0 {
                        r /= p;
                    }
                }
                rest[i] = r;
                if track_korselt && (n - 1) % (p - 1) != 0 {
                    korselt[i] = false;
                }
                n += p;
            }
        }
        for i in 0..len {
            let q = rest[i];
            if q > 1 {
                phi[i] -= phi[i] / q;
                if track_korselt && !(lo + i as u64 - 1).is_multiple_of(q - 1) {
                    korselt[i] = false;
                }
            }
        }
        Ok(Segment { lo, phi, korselt })
    }

    fn values(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.phi.iter().enumerate().map(|(i, &phi)| (self.lo + i as u64, phi))
    }
}

/// Totients of every `n` in `[lo, hi]` from one sieved segment.
///
/// The range may not exceed [`DEFAULT_SEGMENT_LENGTH`] values.
pub fn sieve_phi_segment(lo: u64, hi: u64) -> Result<Vec<(u64, u64)>, ScanError> {
    check_range(lo, hi)?;
    if hi - lo >= DEFAULT_SEGMENT_LENGTH {
        return Err(ScanError::Range { lo, hi, reason: "range longer than one segment" });
    }
    let primes = BasePrimes::for_range(hi)?;
    let seg = Segment::sieve(lo, hi, primes.iter(), false)?;
    Ok(seg.values().collect())
}

#[derive(Debug, Default)]
struct Partial {
    candidates: Vec<u64>,
    carmichael: Vec<u64>,
    composites: u64,
}

fn scan_segment(lo: u64, hi: u64, primes: &BasePrimes, carmichael: bool) -> Result<Partial, ScanError> {
    let seg = Segment::sieve(lo, hi, primes.iter(), carmichael)?;
    let mut out = Partial::default();
    for (i, (n, phi)) in seg.values().enumerate() {
        // φ(n) = n - 1 exactly when n is prime
        if phi == n - 1 {
            continue;
        }
        out.composites += 1;
        if (n - 1) % phi == 0 {
            out.candidates.push(n);
        }
        if carmichael && seg.korselt[i] {
            out.carmichael.push(n);
        }
    }
    Ok(out)
}

/// Test Lehmer's condition on every composite in the configured range.
///
/// Every candidate the sieve reports is re-verified with [`arith::is_lehmer`]
/// and must pass [`known_constraint_filter`]; a failure of either is
/// returned as [`ScanError::Inconsistent`].
pub fn scan_range(config: &ScanConfig) -> Result<ScanReport, ScanError> {
    config.validate()?;
    let start = Instant::now();
    let primes = BasePrimes::for_range(config.hi)?;

    let span = config.hi - config.lo + 1;
    let segments = span.div_ceil(config.segment_length);
    let bounds = |k: u64| {
        let lo = config.lo + k * config.segment_length;
        let hi = lo.saturating_add(config.segment_length - 1).min(config.hi);
        (lo, hi)
    };

    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.worker_count).build()?;
    let partials: Vec<Partial> = pool.install(|| {
        (0..segments)
            .into_par_iter()
            .map(|k| {
                let (lo, hi) = bounds(k);
                scan_segment(lo, hi, &primes, config.collect_carmichael)
            })
            .collect::<Result<_, _>>()
    })?;

    let mut report = ScanReport {
        lo: config.lo,
        hi: config.hi,
        lehmer_candidates: Vec::new(),
        carmichael_found: config.collect_carmichael.then(Vec::new),
        composites_tested: 0,
        elapsed_ms: 0,
    };
    for part in partials {
        report.composites_tested += part.composites;
        report.lehmer_candidates.extend(part.candidates);
        if let Some(found) = report.carmichael_found.as_mut() {
            found.extend(part.carmichael);
        }
    }

    for &n in &report.lehmer_candidates {
        if arith::is_lehmer(n) != Ok(true) {
            return Err(ScanError::Inconsistent { n, what: "sieve candidate fails arith::is_lehmer" });
        }
        if !known_constraint_filter(n) {
            return Err(ScanError::Inconsistent { n, what: "candidate is even or not squarefree" });
        }
    }
    if let Some(found) = &report.carmichael_found {
        if let Some(&n) = found.iter().find(|&&n| !arith::is_carmichael(n)) {
            return Err(ScanError::Inconsistent { n, what: "sieve Carmichael fails Korselt re-check" });
        }
    }

    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn gcd_count(n: u64) -> u64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn small_segment_against_gcd_count() {
        let got = sieve_phi_segment(2, 10).unwrap();
        let expected: Vec<_> = (2..=10).map(|n| (n, gcd_count(n))).collect();
        assert_eq!(got, expected);
        assert_eq!(got.iter().map(|&(_, p)| p).collect::<Vec<_>>(), [1, 2, 2, 4, 2, 6, 4, 6, 4]);
    }

    #[test]
    fn singleton_segments() {
        assert_eq!(sieve_phi_segment(7919, 7919).unwrap(), [(7919, 7918)]);
        assert_eq!(sieve_phi_segment(561, 561).unwrap(), [(561, 320)]);
        let big_prime = 35_184_372_088_891; // 2^45 + 59
        assert_eq!(sieve_phi_segment(big_prime, big_prime).unwrap(), [(big_prime, big_prime - 1)]);
    }

    #[test]
    fn rejects_bad_ranges() {
        assert!(matches!(sieve_phi_segment(10, 2), Err(ScanError::Range { .. })));
        assert!(matches!(sieve_phi_segment(0, 5), Err(ScanError::Range { .. })));
        assert!(matches!(sieve_phi_segment(2, 2 + DEFAULT_SEGMENT_LENGTH), Err(ScanError::Range { .. })));
        assert!(matches!(sieve_phi_segment(2, u64::MAX), Err(ScanError::Range { .. })));
        assert!(ScanConfig::new(2, 10).segment_length(1).validate().is_err());
        assert!(ScanConfig::new(2, 10).workers(0).validate().is_err());
    }

    #[test]
    fn scan_small_ranges() {
        let r = scan_range(&ScanConfig::new(2, 2)).unwrap();
        assert!(r.lehmer_candidates.is_empty());
        assert_eq!(r.composites_tested, 0);

        let r = scan_range(&ScanConfig::new(2, 1000).carmichael(true)).unwrap();
        assert_eq!(r.carmichael_found, Some(vec![561]));
        assert!(r.lehmer_candidates.is_empty());
        // 1000 - 1 integers minus 168 primes
        assert_eq!(r.composites_tested, 999 - 168);
    }

    #[test]
    fn scan_matches_per_n_oracle() {
        let r = scan_range(&ScanConfig::new(2, 10_000).segment_length(97).carmichael(true)).unwrap();
        let mut carm = Vec::new();
        let mut composites = 0;
        for n in 2..=10_000u64 {
            if arith::is_prime(n) {
                continue;
            }
            composites += 1;
            assert_eq!(arith::is_lehmer(n), Ok(false));
            if arith::is_carmichael(n) {
                carm.push(n);
            }
        }
        assert!(r.lehmer_candidates.is_empty());
        assert_eq!(r.composites_tested, composites);
        assert_eq!(r.carmichael_found, Some(carm));
        assert_eq!(r.carmichael_found.unwrap(), [561, 1105, 1729, 2465, 2821, 6601, 8911]);
    }

    #[test]
    fn constraint_filter_examples() {
        assert!(known_constraint_filter(15));
        assert!(known_constraint_filter(21));
        assert!(!known_constraint_filter(50));
        assert!(!known_constraint_filter(45));
    }

    #[test]
    fn prime_stream_matches_table() {
        let streamed: Vec<u64> = PrimeStream::new(300_000).collect();
        let table: Vec<u64> = arith::primes_up_to(300_000).into_iter().map(u64::from).collect();
        assert_eq!(streamed, table);
        assert_eq!(PrimeStream::new(1).count(), 0);
        assert_eq!(PrimeStream::new(2).collect::<Vec<_>>(), [2]);
    }

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
        assert_eq!(isqrt(u64::MAX), u32::MAX as u64);
        assert_eq!(isqrt(MAX_SCAN_BOUND), 3_037_000_499);
    }

    proptest! {
        #[test]
        fn segment_matches_euler_phi(lo in 2u64..1u64 << 40, len in 1u64..300) {
            let hi = lo + len - 1;
            for (n, phi) in sieve_phi_segment(lo, hi).unwrap() {
                prop_assert_eq!(phi, arith::euler_phi(n));
            }
        }
    }
}
