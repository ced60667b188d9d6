use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

/// Canonical prime-power decomposition `n = p_1^e_1 ... p_t^e_t`, primes
/// strictly increasing, every exponent at least one. `1` is the empty list.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization { pairs: Vec::new() }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking the
    /// ordering invariant. Primality of the entries is the caller's business.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Self {
        assert!(
            pairs.windows(2).all(|w| w[0].0 < w[1].0),
            "primes must be strictly increasing"
        );
        assert!(pairs.iter().all(|&(p, e)| p >= 2 && e >= 1));
        Factorization { pairs }
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Number of distinct primes.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `v_p(n)`, zero when `p` does not divide `n`.
    pub fn valuation(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn value(&self) -> u64 {
        self.pairs.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.pairs {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Debug for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.pairs.iter()).finish()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
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

/// Smallest-prime-factor table for every `n <= limit`.
///
/// Read-only after construction, so one table can be shared by any number of
/// threads.
#[derive(Clone)]
pub struct SpfSieve {
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfSieve {
    /// Largest limit a table can be built for (entries are stored as `u32`).
    pub const CAPACITY: u64 = u32::MAX as u64 - 1;

    pub fn new(limit: u64) -> Result<Self> {
        if limit > Self::CAPACITY {
            return Err(Error::SieveCapacity {
                requested: limit,
                capacity: Self::CAPACITY,
            });
        }
        let limit = limit.max(2) as usize;
        let mut spf: Vec<u32> = Vec::new();
        spf.try_reserve_exact(limit + 1)
            .map_err(|_| Error::MemoryBudget {
                limit: limit as u64,
            })?;
        spf.resize(limit + 1, 0);
        let mut primes = Vec::new();
        // Linear sieve: every composite is struck exactly once by its spf.
        for i in 2..=limit {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                if p > si {
                    break;
                }
                let m = i * p as usize;
                if m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        Ok(SpfSieve { spf, primes })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn covers(&self, n: u64) -> bool {
        n <= self.limit()
    }

    /// Smallest prime factor of `2 <= n <= limit`.
    pub fn spf(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf(n) == n
    }

    /// Factorization in `O(log n)` steps; `n` must be covered by the table.
    pub fn factorize(&self, n: u64) -> Factorization {
        assert!(n >= 1 && self.covers(n), "{n} not covered by the table");
        let mut pairs = Vec::new();
        let mut m = n;
        while m > 1 {
            let p = self.spf(m);
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
        Factorization { pairs }
    }
}

const SHARED_LIMIT: u64 = 1 << 20;

/// Process-wide table used by [`factorize`] for small arguments and as the
/// prime list for trial division above it.
pub fn shared_sieve() -> &'static SpfSieve {
    static TABLE: OnceLock<SpfSieve> = OnceLock::new();
    TABLE.get_or_init(|| SpfSieve::new(SHARED_LIMIT).expect("small sieve fits in memory"))
}

/// Canonical factorization of `n >= 1`.
///
/// Uses the shared spf table when it covers `n`, otherwise trial division by
/// primes up to `sqrt(n)`.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize(0) is undefined");
    let table = shared_sieve();
    if table.covers(n) {
        table.factorize(n)
    } else {
        trial_division(n)
    }
}

/// Trial division by primes `<= sqrt(n)`; independent of any table lookups
/// for `n` itself.
pub fn trial_division(n: u64) -> Factorization {
    assert!(n >= 1);
    let mut pairs = Vec::new();
    let mut m = n;
    let mut push = |m: &mut u64, p: u64| {
        let mut e = 0;
        while *m % p == 0 {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            pairs.push((p, e));
        }
    };
    let table = shared_sieve();
    let mut exhausted = true;
    for &p in table.primes() {
        let p = p as u64;
        if p * p > m {
            exhausted = false;
            break;
        }
        push(&mut m, p);
    }
    if exhausted {
        // Beyond the table: fall back to odd candidates.
        let mut d = *table.primes().last().unwrap() as u64 + 2;
        while d * d <= m {
            push(&mut m, d);
            d += 2;
        }
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Factorization { pairs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        assert!(factorize(1).is_one());
        assert_eq!(factorize(12).pairs(), &[(2, 2), (3, 1)]);
        assert_eq!(
            factorize(30030).pairs(),
            &[(2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1)]
        );
    }

    #[test]
    fn sieve_small_values() {
        let s = SpfSieve::new(10).unwrap();
        assert_eq!(s.spf(9), 3);
        assert_eq!(s.factorize(9).pairs(), &[(3, 2)]);
        assert_eq!(s.spf(2), 2);
        assert_eq!(s.primes(), &[2, 3, 5, 7]);
    }

    #[test]
    fn sieve_agrees_with_trial_division_on_random_arguments() {
        use rand::{Rng, SeedableRng};
        let sieve = shared_sieve();
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=sieve.limit());
            let f = sieve.factorize(n);
            assert_eq!(f, trial_division(n), "n = {n}");
            assert_eq!(f.value(), n);
        }
    }

    #[test]
    fn large_argument_uses_trial_division() {
        let n = 58_260_766u64;
        let f = factorize(n);
        assert_eq!(f.value(), n);
        assert_eq!(f, trial_division(n));
        // A prime just above 2^40 takes the odd-candidate loop.
        let big = 1_099_511_627_791u64;
        assert_eq!(trial_division(big).pairs(), &[(big, 1)]);
        let sq = 1_048_583u64 * 1_048_583;
        assert_eq!(trial_division(sq).pairs(), &[(1_048_583, 2)]);
    }

    #[test]
    fn capacity_is_reported() {
        match SpfSieve::new(u64::MAX) {
            Err(Error::SieveCapacity { requested, .. }) => assert_eq!(requested, u64::MAX),
            other => panic!("unexpected {:?}", other.map(|s| s.limit())),
        }
    }

    #[test]
    fn divisors_sorted() {
        assert_eq!(factorize(12).divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(factorize(1).divisors(), vec![1]);
    }
}
