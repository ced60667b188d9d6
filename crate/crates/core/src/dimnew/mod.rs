//! `dim S_k^new(Gamma_0(N), chi)`.
//!
//! The explicit path multiplies closed-form local factors over the primes of
//! `N`. The convolution path sums `beta(N/M) dim S_k(Gamma_0(M), chi)` over
//! `f | M | N` and serves as an independent oracle; it is never used by the
//! searches.

pub mod convolution;
pub mod tables;

use serde::Serialize;

use crate::arith::{c3, c4, factorize, Factorization, Rat};
use crate::characters::{CharSignature, DirichletCharacter};
use crate::dimfull::{check_level, check_weight, dim_full_sig, rho_local, rho_prime_local};
use crate::error::{Error, Result};

pub use convolution::{
    beta_convolve, partial_convolution, partial_convolution_literal, BetaConvolved, BetaFn,
    Multiplicative, One, Psi, RhoFn, RhoPrimeFn, Shifted, SigmaFn,
};

/// The five products of the explicit formula and their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewDimTerms {
    /// `(k - 1)/12 psi(f) (beta * psi_f)(N/f)`.
    pub main_psi: Rat,
    /// `c3(k) rho(f) (beta * rho_f)(N/f)`.
    pub term_rho: Rat,
    /// `c4(k) rho'(f) (beta * rho'_f)(N/f)`.
    pub term_rho_prime: Rat,
    /// `2^omega(f) (beta * sigma_f)(N/f) / 2`.
    pub term_sigma: Rat,
    /// `c0(k, chi) mu(N/f)`.
    pub term_mu: Rat,
    pub total: i64,
}

impl NewDimTerms {
    pub fn sum(&self) -> Rat {
        self.main_psi - self.term_rho - self.term_rho_prime - self.term_sigma + self.term_mu
    }
}

/// Weight-independent products of the explicit formula at one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NewDimParts {
    /// `psi(f) (beta * psi_f)(N/f)`.
    pub psi: i64,
    /// `rho(f) (beta * rho_f)(N/f)`, zero when `rho(f) = 0`.
    pub rho: i64,
    pub rho_prime: i64,
    /// `2^omega(f) (beta * sigma_f)(N/f)`.
    pub sigma: i64,
    /// `mu(N/f)` for the trivial character, else zero.
    pub mu: i64,
}

impl NewDimParts {
    /// `12 dim` at weight `k`.
    pub fn twelfths(&self, k: u64) -> i128 {
        let k = k as i128;
        let c3_12 = 4 * (k - 1) - 12 * (k / 3);
        let c4_12 = 3 * (k - 1) - 12 * (k / 4);
        let c0 = (k == 2) as i128;
        (k - 1) * self.psi as i128
            - c3_12 * self.rho as i128
            - c4_12 * self.rho_prime as i128
            - 6 * self.sigma as i128
            + 12 * c0 * self.mu as i128
    }

    pub fn terms(&self, k: u64) -> NewDimTerms {
        let mut terms = NewDimTerms {
            main_psi: Rat::new((k as i128 - 1) * self.psi as i128, 12),
            term_rho: c3(k) * Rat::int(self.rho as i128),
            term_rho_prime: c4(k) * Rat::int(self.rho_prime as i128),
            term_sigma: Rat::new(self.sigma as i128, 2),
            term_mu: Rat::int(((k == 2) as i64 * self.mu) as i128),
            total: 0,
        };
        let twelfths = self.twelfths(k);
        debug_assert_eq!(terms.sum(), Rat::from_twelfths(twelfths));
        assert!(
            twelfths % 12 == 0,
            "non-integral newspace dimension {twelfths}/12 at weight {k}"
        );
        terms.total = (twelfths / 12) as i64;
        terms
    }
}

/// The weight-independent products at `level` for a character with the
/// given signature; the conductor must divide the level.
pub fn new_parts(level: &Factorization, sig: &CharSignature) -> NewDimParts {
    let mut psi = 1i64;
    let mut rho = 1i64;
    let mut rho_prime = 1i64;
    let mut sigma = 1i64;
    let mut mu = sig.is_trivial() as i64;
    for (p, r) in level.iter() {
        let t = sig.at(p);
        let a = t.alpha;
        let s = r - a;
        let pw = p.pow(a) as i64;
        // Factor at f: psi(p^a), rho(p^a), rho'(p^a), sigma(p^a) = 2.
        if a > 0 {
            psi *= pw + pw / p as i64;
            rho *= rho_local(p, a, &t);
            rho_prime *= rho_prime_local(p, a, &t);
            sigma *= 2;
        }
        if s > 0 {
            psi *= tables::beta_psi_f(p, s, a);
            rho *= tables::beta_rho_f(p, s, a);
            rho_prime *= tables::beta_rho_prime_f(p, s, a);
            sigma *= tables::beta_sigma_f(p, s, a);
            mu *= tables::beta_one_f(s);
        }
    }
    NewDimParts {
        psi,
        rho,
        rho_prime,
        sigma,
        mu,
    }
}

/// `dim S_k^new(Gamma_0(N), chi)` from the explicit formula.
pub fn dim_new_explicit(level: u64, k: u64, chi: &DirichletCharacter) -> Result<NewDimTerms> {
    if level == 0 {
        return Err(Error::ZeroModulus);
    }
    dim_new_sig(&factorize(level), k, &chi.signature())
}

pub fn dim_new_sig(level: &Factorization, k: u64, sig: &CharSignature) -> Result<NewDimTerms> {
    check_weight(k, sig.parity)?;
    check_level(level, sig.conductor)?;
    Ok(new_parts(level, sig).terms(k))
}

/// `sum_{f | M | N} beta(N/M) dim S_k(Gamma_0(M), chi)`, summed literally.
pub fn dim_new_convolution(level: u64, k: u64, chi: &DirichletCharacter) -> Result<i64> {
    let sig = chi.signature();
    let n = factorize(level);
    check_weight(k, sig.parity)?;
    check_level(&n, sig.conductor)?;
    let f = sig.conductor;
    let mut total = 0i64;
    for l in factorize(level / f).divisors() {
        let m = f * l;
        let beta = BetaFn.eval(&factorize(level / m));
        if !beta.is_zero() {
            let d = dim_full_sig(&factorize(m), k, &sig)?.total;
            total += beta.to_integer().expect("beta is integral") as i64 * d;
        }
    }
    Ok(total)
}

/// `sum_{f | M | N} tau(N/M) dim S_k^new(Gamma_0(M), chi)`, which recovers
/// the full-space dimension.
pub fn oldspace_reconstruct(level: u64, k: u64, chi: &DirichletCharacter) -> Result<i64> {
    let sig = chi.signature();
    let n = factorize(level);
    check_weight(k, sig.parity)?;
    check_level(&n, sig.conductor)?;
    let f = sig.conductor;
    factorize(level / f)
        .divisors()
        .into_iter()
        .map(|l| {
            let m = f * l;
            let new = dim_new_sig(&factorize(m), k, &sig)?.total;
            Ok(factorize(level / m).tau() as i64 * new)
        })
        .sum()
}

#[cfg(test)]
mod tests;
