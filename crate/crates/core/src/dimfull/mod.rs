//! `dim S_k(Gamma_0(N), chi)`.
//!
//! The production path evaluates `rho`, `rho'` and `sigma` multiplicatively
//! from the local type of `chi` at each prime. The literal character sums are
//! kept as oracles.

use serde::Serialize;

use crate::arith::{
    c3, c4, congruence_roots, factorize, legendre, CongruenceKind, Factorization, Rat,
};
use crate::characters::{
    CharSignature, CharValue, CubeClass, DirichletCharacter, FourthClass, LocalType,
};
use crate::error::{Error, Result};

/// The five terms of the full-space formula and their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullDimTerms {
    /// `(k - 1)/12 psi(N)`.
    pub main: Rat,
    /// `c3(k) rho(N)`.
    pub elliptic3: Rat,
    /// `c4(k) rho'(N)`.
    pub elliptic4: Rat,
    /// `sigma(N)/2`.
    pub cusp_count: Rat,
    pub constant: Rat,
    pub total: i64,
}

impl FullDimTerms {
    /// `main - elliptic3 - elliptic4 - cusp_count + constant`, exactly.
    pub fn sum(&self) -> Rat {
        self.main - self.elliptic3 - self.elliptic4 - self.cusp_count + self.constant
    }
}

/// The weight-independent ingredients of the formula at one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FullDimParts {
    pub psi: i64,
    pub rho: i64,
    pub rho_prime: i64,
    pub sigma: i64,
    pub trivial: bool,
}

impl FullDimParts {
    /// `12 dim` at weight `k`.
    pub fn twelfths(&self, k: u64) -> i128 {
        let k = k as i128;
        let c3_12 = 4 * (k - 1) - 12 * (k / 3);
        let c4_12 = 3 * (k - 1) - 12 * (k / 4);
        let c0 = (k == 2 && self.trivial) as i128;
        (k - 1) * self.psi as i128
            - c3_12 * self.rho as i128
            - c4_12 * self.rho_prime as i128
            - 6 * self.sigma as i128
            + 12 * c0
    }

    pub fn terms(&self, k: u64) -> FullDimTerms {
        let c0 = (k == 2 && self.trivial) as i128;
        let mut terms = FullDimTerms {
            main: Rat::new((k as i128 - 1) * self.psi as i128, 12),
            elliptic3: c3(k) * Rat::int(self.rho as i128),
            elliptic4: c4(k) * Rat::int(self.rho_prime as i128),
            cusp_count: Rat::new(self.sigma as i128, 2),
            constant: Rat::int(c0),
            total: 0,
        };
        let twelfths = self.twelfths(k);
        debug_assert_eq!(terms.sum(), Rat::from_twelfths(twelfths));
        assert!(
            twelfths % 12 == 0,
            "non-integral dimension {twelfths}/12 at weight {k}"
        );
        terms.total = (twelfths / 12) as i64;
        terms
    }
}

/// `rho(p^r)` for `r >= alpha`.
pub fn rho_local(p: u64, r: u32, t: &LocalType) -> i64 {
    debug_assert!(r >= t.alpha);
    match p {
        2 => 0,
        3 => (r == 1) as i64,
        _ if legendre(-3, p) == -1 => 0,
        _ => match t.cube {
            CubeClass::Primitive => -1,
            _ => 2,
        },
    }
}

/// `rho'(p^r)` for `r >= alpha`.
pub fn rho_prime_local(p: u64, r: u32, t: &LocalType) -> i64 {
    debug_assert!(r >= t.alpha);
    match p {
        2 => (r == 1) as i64,
        _ if p % 4 == 3 => 0,
        _ => match t.fourth {
            FourthClass::MinusOne => -2,
            FourthClass::PlusMinusI => 0,
            _ => 2,
        },
    }
}

/// `sigma(p^r)` with `alpha = v_p(f)`; `1` when `r < alpha`.
pub fn sigma_local(p: u64, r: u32, alpha: u32) -> u64 {
    if r < alpha {
        1
    } else if r < 2 * alpha {
        2 * p.pow(r - alpha)
    } else if r % 2 == 1 {
        2 * p.pow((r - 1) / 2)
    } else {
        (p + 1) * p.pow(r / 2 - 1)
    }
}

pub(crate) fn check_weight(k: u64, parity: i8) -> Result<()> {
    if k < 2 {
        return Err(Error::WeightTooSmall { weight: k });
    }
    let weight_parity = if k % 2 == 0 { 1 } else { -1 };
    if parity != weight_parity {
        return Err(Error::ParityMismatch {
            weight: k,
            chi_parity: parity,
            weight_parity,
        });
    }
    Ok(())
}

pub(crate) fn check_level(level: &Factorization, conductor: u64) -> Result<()> {
    let n = level.value();
    if n % conductor != 0 {
        return Err(Error::ConductorDoesNotDivide {
            conductor,
            level: n,
        });
    }
    Ok(())
}

/// The weight-independent parts at `level` for a character with the given
/// signature. The conductor must divide the level.
pub fn parts(level: &Factorization, sig: &CharSignature) -> FullDimParts {
    let mut out = FullDimParts {
        psi: level.psi() as i64,
        rho: 1,
        rho_prime: 1,
        sigma: 1,
        trivial: sig.is_trivial(),
    };
    for (p, r) in level.iter() {
        let t = sig.at(p);
        out.rho *= rho_local(p, r, &t);
        out.rho_prime *= rho_prime_local(p, r, &t);
        out.sigma *= sigma_local(p, r, t.alpha) as i64;
    }
    out
}

/// `rho(N)` by the local case table.
pub fn rho(level: u64, chi: &DirichletCharacter) -> Result<i64> {
    let n = factorize(level);
    check_level(&n, chi.conductor())?;
    Ok(parts(&n, &chi.signature()).rho)
}

/// `rho'(N)` by the local case table.
pub fn rho_prime(level: u64, chi: &DirichletCharacter) -> Result<i64> {
    let n = factorize(level);
    check_level(&n, chi.conductor())?;
    Ok(parts(&n, &chi.signature()).rho_prime)
}

/// Levels above this are refused by the brute-force oracles.
pub const BRUTE_FORCE_CAP: u64 = 10_000_000;

fn character_sum(level: u64, chi: &DirichletCharacter, kind: CongruenceKind) -> Result<i64> {
    if level > BRUTE_FORCE_CAP {
        return Err(Error::BruteForceCap {
            n: level,
            cap: BRUTE_FORCE_CAP,
        });
    }
    if level % chi.conductor() != 0 {
        return Err(Error::ConductorDoesNotDivide {
            conductor: chi.conductor(),
            level,
        });
    }
    root_character_sum(&congruence_roots(kind, level, BRUTE_FORCE_CAP), chi, kind)
}

/// `sum chi(x)` over a given list of roots of the cube or fourth root
/// congruence, counted exactly by the value class of `chi(x)`.
pub fn root_character_sum(
    roots: &[u64],
    chi: &DirichletCharacter,
    kind: CongruenceKind,
) -> Result<i64> {
    let order = match kind {
        CongruenceKind::CubeRoots => 3,
        CongruenceKind::FourthRoots => 4,
    };
    // counts[j] = number of roots x with chi(x) = e(j/order).
    let mut counts = [0i64; 4];
    for &x in roots {
        let v = match chi.evaluate_primitive(x as i64) {
            CharValue::Root(v) if order % v.order() == 0 => v,
            other => {
                return Err(Error::UnexpectedCharValue {
                    value: format!("{other:?}"),
                    expected: order,
                })
            }
        };
        counts[(v.numerator() * (order / v.order())) as usize] += 1;
    }
    let imaginary_cancels = match kind {
        CongruenceKind::CubeRoots => counts[1] == counts[2],
        CongruenceKind::FourthRoots => counts[1] == counts[3],
    };
    if !imaginary_cancels {
        return Err(Error::UnexpectedCharValue {
            value: format!("non-real sum {counts:?}"),
            expected: order,
        });
    }
    Ok(match kind {
        // 1 + w + w^2 = 0, so a + b w + b w^2 = a - b.
        CongruenceKind::CubeRoots => counts[0] - counts[1],
        CongruenceKind::FourthRoots => counts[0] - counts[2],
    })
}

/// `sum chi(x)` over the roots of `x^2 + x + 1` mod `N`, literally.
pub fn rho_bruteforce(level: u64, chi: &DirichletCharacter) -> Result<i64> {
    character_sum(level, chi, CongruenceKind::CubeRoots)
}

/// `sum chi(x)` over the roots of `x^2 + 1` mod `N`, literally.
pub fn rho_prime_bruteforce(level: u64, chi: &DirichletCharacter) -> Result<i64> {
    character_sum(level, chi, CongruenceKind::FourthRoots)
}

/// `sigma(N)` for conductor `f`, by the local case table.
pub fn sigma_mult(n: u64, f: u64) -> Result<u64> {
    if f == 0 || n % f != 0 {
        return Err(Error::NotADivisor { divisor: f, n });
    }
    let fs = factorize(f);
    Ok(factorize(n)
        .iter()
        .map(|(p, r)| sigma_local(p, r, fs.valuation(p)))
        .product())
}

pub fn c0(k: u64, chi: &DirichletCharacter) -> u64 {
    (k == 2 && chi.is_trivial()) as u64
}

/// `dim S_k(Gamma_0(N), chi)` with its term breakdown. `chi` may be given
/// modulo any multiple of its conductor; only `f | N` is required.
pub fn dim_full(level: u64, k: u64, chi: &DirichletCharacter) -> Result<FullDimTerms> {
    if level == 0 {
        return Err(Error::ZeroModulus);
    }
    dim_full_sig(&factorize(level), k, &chi.signature())
}

/// [`dim_full`] from a precomputed level factorization and signature.
pub fn dim_full_sig(level: &Factorization, k: u64, sig: &CharSignature) -> Result<FullDimTerms> {
    check_weight(k, sig.parity)?;
    check_level(level, sig.conductor)?;
    Ok(parts(level, sig).terms(k))
}

#[cfg(test)]
mod tests;
