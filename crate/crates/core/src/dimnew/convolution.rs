//! Multiplicative functions, `beta`-convolution and partial convolutions
//! `sum_{f | M | N} beta(N/M) theta(M)`.

use crate::arith::{Factorization, Rat};
use crate::characters::CharSignature;
use crate::dimfull::{rho_local, rho_prime_local, sigma_local};
use crate::error::{Error, Result};

/// A multiplicative function, given by its values on prime powers `p^r`,
/// `r >= 1`.
pub trait Multiplicative {
    fn local(&self, p: u64, r: u32) -> Rat;

    fn eval(&self, n: &Factorization) -> Rat {
        n.iter().map(|(p, r)| self.local(p, r)).product()
    }
}

impl<T: Multiplicative + ?Sized> Multiplicative for &T {
    fn local(&self, p: u64, r: u32) -> Rat {
        (**self).local(p, r)
    }
}

/// The constant function `1`.
pub struct One;

impl Multiplicative for One {
    fn local(&self, _: u64, _: u32) -> Rat {
        Rat::ONE
    }
}

/// `beta(p) = -2`, `beta(p^2) = 1`, `beta(p^r) = 0` for `r >= 3`.
pub struct BetaFn;

impl Multiplicative for BetaFn {
    fn local(&self, _: u64, r: u32) -> Rat {
        match r {
            1 => Rat::int(-2),
            2 => Rat::ONE,
            _ => Rat::ZERO,
        }
    }
}

pub struct Psi;

impl Multiplicative for Psi {
    fn local(&self, p: u64, r: u32) -> Rat {
        Rat::int(((p + 1) * p.pow(r - 1)) as i128)
    }
}

/// `sigma` attached to conductor `f`: the `gcd`-`phi` sum per prime power,
/// and `1` below `v_p(f)`.
pub struct SigmaFn<'a> {
    pub f: &'a Factorization,
}

impl Multiplicative for SigmaFn<'_> {
    fn local(&self, p: u64, r: u32) -> Rat {
        Rat::int(sigma_local(p, r, self.f.valuation(p)) as i128)
    }
}

/// `rho` of a character; `1` below `v_p(f)`.
pub struct RhoFn<'a> {
    pub sig: &'a CharSignature,
}

impl Multiplicative for RhoFn<'_> {
    fn local(&self, p: u64, r: u32) -> Rat {
        let t = self.sig.at(p);
        Rat::int(if r < t.alpha { 1 } else { rho_local(p, r, &t) } as i128)
    }
}

/// `rho'` of a character; `1` below `v_p(f)`.
pub struct RhoPrimeFn<'a> {
    pub sig: &'a CharSignature,
}

impl Multiplicative for RhoPrimeFn<'_> {
    fn local(&self, p: u64, r: u32) -> Rat {
        let t = self.sig.at(p);
        Rat::int(if r < t.alpha {
            1
        } else {
            rho_prime_local(p, r, &t)
        } as i128)
    }
}

/// `theta_f(n) = theta(f n) / theta(f)`.
pub struct Shifted<T> {
    theta: T,
    f: Factorization,
}

impl<T: Multiplicative> Shifted<T> {
    pub fn new(theta: T, f: Factorization) -> Result<Self> {
        if theta.eval(&f).is_zero() {
            return Err(Error::ThetaVanishes { f: f.value() });
        }
        Ok(Shifted { theta, f })
    }
}

impl<T: Multiplicative> Multiplicative for Shifted<T> {
    fn local(&self, p: u64, r: u32) -> Rat {
        match self.f.valuation(p) {
            0 => self.theta.local(p, r),
            a => self.theta.local(p, r + a) / self.theta.local(p, a),
        }
    }
}

/// `beta * theta`.
pub struct BetaConvolved<T>(pub T);

impl<T: Multiplicative> Multiplicative for BetaConvolved<T> {
    fn local(&self, p: u64, r: u32) -> Rat {
        let th = |s: u32| if s == 0 { Rat::ONE } else { self.0.local(p, s) };
        match r {
            1 => th(1) - Rat::int(2),
            _ => th(r) - Rat::int(2) * th(r - 1) + th(r - 2),
        }
    }
}

pub fn beta_convolve<T: Multiplicative>(theta: T, n: &Factorization) -> Rat {
    BetaConvolved(theta).eval(n)
}

fn check_divides(f: &Factorization, n: &Factorization) -> Result<Factorization> {
    n.quotient(f).ok_or(Error::NotADivisor {
        divisor: f.value(),
        n: n.value(),
    })
}

/// The partial convolution summed over every `M` with `f | M | N`.
pub fn partial_convolution_literal<T: Multiplicative>(
    theta: T,
    f: &Factorization,
    n: &Factorization,
) -> Result<Rat> {
    let q = check_divides(f, n)?;
    let f_val = f.value();
    let n_val = n.value();
    Ok(q.divisors()
        .into_iter()
        .map(|l| {
            let m = crate::arith::factorize(f_val * l);
            BetaFn.eval(&crate::arith::factorize(n_val / (f_val * l))) * theta.eval(&m)
        })
        .sum())
}

/// The partial convolution in closed form `theta(f') (beta * theta_f')(N/f')`,
/// where `f'` is the least multiple of `f` dividing `N` with
/// `theta(f') != 0`. Zero when every `theta(M)` vanishes.
pub fn partial_convolution<T: Multiplicative>(
    theta: T,
    f: &Factorization,
    n: &Factorization,
) -> Result<Rat> {
    check_divides(f, n)?;
    let mut pairs = Vec::new();
    for (p, r) in n.iter() {
        let alpha = f.valuation(p);
        let delta = (alpha..=r).find(|&d| d == 0 || !theta.local(p, d).is_zero());
        match delta {
            None => return Ok(Rat::ZERO),
            Some(0) => {}
            Some(d) => pairs.push((p, d)),
        }
    }
    let f_prime = Factorization::from_pairs(pairs);
    let rest = n.quotient(&f_prime).expect("f' divides N");
    let value_at_f = theta.eval(&f_prime);
    let shifted = Shifted::new(theta, f_prime)?;
    Ok(value_at_f * beta_convolve(shifted, &rest))
}
