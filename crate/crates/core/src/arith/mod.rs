//! Integer and rational kernels shared by the dimension formulas.
//!
//! Everything here is exact. The only floating-point value in the crate is
//! [`RealBound`], which reports (but never decides) analytic bounds.

mod factor;
mod modular;
mod rat;
mod roots;

pub use factor::{factorize, shared_sieve, trial_division, Factorization, SpfSieve};
pub use modular::{
    conrey_generator, crt_pair, inv_mod, legendre, mul_mod, pow_mod, reduce, sqrt_mod_prime,
    sqrt_mod_prime_power,
};
pub use rat::Rat;
pub use roots::{
    congruence_roots, congruence_roots_bruteforce, congruence_roots_crt, CongruenceKind,
    DEFAULT_BRUTE_FORCE_CAP,
};

use num_bigint::BigUint;
use num_integer::{Integer, Roots};

use crate::error::{Error, Result};

/// A floating-point approximation together with the direction it was rounded.
/// Display only: thresholds are decided by exact comparisons.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct RealBound {
    pub value: f64,
    pub rounding: Rounding,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    Nearest,
    Up,
    Down,
}

impl Factorization {
    /// `psi(n) = n prod (1 + 1/p)`, the index of `Gamma_0(n)`.
    pub fn psi(&self) -> u64 {
        self.iter().map(|(p, e)| p.pow(e - 1) * (p + 1)).product()
    }

    pub fn euler_phi(&self) -> u64 {
        self.iter().map(|(p, e)| p.pow(e - 1) * (p - 1)).product()
    }

    pub fn mobius(&self) -> i64 {
        if self.iter().any(|(_, e)| e > 1) {
            0
        } else if self.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn omega(&self) -> u32 {
        self.len() as u32
    }

    pub fn two_pow_omega(&self) -> u64 {
        1 << self.len()
    }

    /// Number of divisors.
    pub fn tau(&self) -> u64 {
        self.iter().map(|(_, e)| e as u64 + 1).product()
    }

    /// `nu(n) = prod_{p | n} nu_p` with `nu_2 = 4` and `nu_p = 1 + 2/(p - 2)`.
    pub fn nu(&self) -> Rat {
        self.primes()
            .map(|p| {
                if p == 2 {
                    Rat::int(4)
                } else {
                    Rat::new(p as i128, p as i128 - 2)
                }
            })
            .product()
    }

    /// The cofactor `n / d` as a factorization, for `d | n`.
    pub fn quotient(&self, d: &Factorization) -> Option<Factorization> {
        let mut pairs = Vec::with_capacity(self.len());
        let mut j = 0;
        for (p, e) in self.iter() {
            let mut f = 0;
            if j < d.len() && d.pairs()[j].0 == p {
                f = d.pairs()[j].1;
                j += 1;
            }
            if f > e {
                return None;
            }
            if e > f {
                pairs.push((p, e - f));
            }
        }
        (j == d.len()).then(|| Factorization::from_pairs(pairs))
    }
}

pub fn psi(n: u64) -> u64 {
    factorize(n).psi()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).euler_phi()
}

pub fn mobius(n: u64) -> i64 {
    factorize(n).mobius()
}

pub fn omega(n: u64) -> u32 {
    factorize(n).omega()
}

pub fn two_pow_omega(n: u64) -> u64 {
    factorize(n).two_pow_omega()
}

pub fn nu(n: u64) -> Rat {
    factorize(n).nu()
}

/// `c3(k) = (k - 1)/3 - floor(k/3)`.
pub fn c3(k: u64) -> Rat {
    Rat::new(k as i128 - 1, 3) - Rat::int((k / 3) as i128)
}

/// `c4(k) = (k - 1)/4 - floor(k/4)`.
pub fn c4(k: u64) -> Rat {
    Rat::new(k as i128 - 1, 4) - Rat::int((k / 4) as i128)
}

/// `sum phi(gcd(d, n/d))` over divisors `d` of `n` with `gcd(d, n/d) | n/f`,
/// summed literally.
pub fn gcd_phi_sum(n: u64, f: u64) -> Result<u64> {
    if f == 0 || n % f != 0 {
        return Err(Error::NotADivisor { divisor: f, n });
    }
    let m = n / f;
    Ok(factorize(n)
        .divisors()
        .into_iter()
        .map(|d| d.gcd(&(n / d)))
        .filter(|g| m % g == 0)
        .map(euler_phi)
        .sum())
}

/// `gcd_phi_sum(n, 1) <= 2^omega(n) sqrt(n)`, compared after squaring.
pub fn gcd_phi_bound_holds(n: u64) -> bool {
    let s = gcd_phi_sum(n, 1).expect("1 divides n") as u128;
    let w = two_pow_omega(n) as u128;
    s * s <= w * w * n as u128
}

/// `2^omega(n) <= 4.862 n^(1/4)`, as `(1000 2^omega)^4 <= 4862^4 n`.
pub fn two_pow_omega_bound_holds(n: u64) -> bool {
    let lhs = BigUint::from(1000 * two_pow_omega(n)).pow(4);
    let rhs = BigUint::from(4862u32).pow(4) * n;
    lhs <= rhs
}

/// `nu(n) <= 21.234 n^(1/16)`. With `nu = a/b` this is
/// `(1000 a)^16 <= 21234^16 b^16 n`.
pub fn nu_bound_holds(n: u64) -> bool {
    let v = nu(n);
    let a = BigUint::from(v.numer() as u128 * 1000);
    let b = BigUint::from(v.denom() as u128);
    a.pow(16) <= BigUint::from(21234u32).pow(16) * b.pow(16) * n
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    n.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_values() {
        assert_eq!(psi(1), 1);
        assert_eq!(psi(12), 24);
        assert_eq!(psi(11), 12);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(two_pow_omega(30030), 64);
        assert_eq!(nu(1), Rat::ONE);
        assert_eq!(nu(2), Rat::int(4));
        assert_eq!(nu(15), Rat::int(5));
    }

    #[test]
    fn weight_constants() {
        assert_eq!(c3(2), Rat::new(1, 3));
        assert_eq!(c3(4), Rat::ZERO);
        assert_eq!(c4(2), Rat::new(1, 4));
        assert_eq!(c4(3), Rat::new(1, 2));
        for k in 2..60 {
            assert!([Rat::new(-1, 3), Rat::ZERO, Rat::new(1, 3)].contains(&c3(k)));
            assert!([Rat::new(-1, 4), Rat::ZERO, Rat::new(1, 4), Rat::new(1, 2)].contains(&c4(k)));
            assert_eq!(c3(k), c3(k + 3));
            assert_eq!(c4(k), c4(k + 4));
        }
    }

    #[test]
    fn gcd_phi_examples() {
        assert_eq!(gcd_phi_sum(4, 1).unwrap(), 3);
        for p in [2u64, 3, 5, 7, 97] {
            assert_eq!(gcd_phi_sum(p, 1).unwrap(), 2);
        }
        for n in 1..200u64 {
            let unitary = factorize(n)
                .divisors()
                .into_iter()
                .filter(|&d| d.gcd(&(n / d)) == 1)
                .count() as u64;
            assert_eq!(gcd_phi_sum(n, n).unwrap(), unitary);
        }
        assert!(matches!(gcd_phi_sum(10, 3), Err(Error::NotADivisor { .. })));
    }

    #[test]
    fn quotient_of_factorizations() {
        let n = factorize(360);
        assert_eq!(n.quotient(&factorize(12)).unwrap().value(), 30);
        assert_eq!(n.quotient(&factorize(7)), None);
        assert_eq!(n.quotient(&factorize(16)), None);
        assert!(n.quotient(&n).unwrap().is_one());
    }

    #[test]
    fn bounds_at_extremes() {
        // 2^omega / n^(1/4) peaks at primorial-like n.
        assert!(two_pow_omega_bound_holds(30030));
        assert!(nu_bound_holds(2 * 3 * 5 * 7));
        assert!(gcd_phi_bound_holds(1));
    }

    /// Pairs `(m, n)` with `m, n <= 300` coprime.
    fn coprime_pairs() -> impl Iterator<Item = (u64, u64)> {
        (1..=300u64).flat_map(|m| {
            (1..=300u64)
                .filter(move |n| m.gcd(n) == 1)
                .map(move |n| (m, n))
        })
    }

    #[test]
    fn multiplicative_on_coprime_pairs() {
        for (m, n) in coprime_pairs() {
            assert_eq!(psi(m * n), psi(m) * psi(n));
            assert_eq!(euler_phi(m * n), euler_phi(m) * euler_phi(n));
            assert_eq!(mobius(m * n), mobius(m) * mobius(n));
            assert_eq!(two_pow_omega(m * n), two_pow_omega(m) * two_pow_omega(n));
            assert_eq!(nu(m * n), nu(m) * nu(n));
            assert_eq!(
                gcd_phi_sum(m * n, 1).unwrap(),
                gcd_phi_sum(m, 1).unwrap() * gcd_phi_sum(n, 1).unwrap()
            );
        }
    }
}
