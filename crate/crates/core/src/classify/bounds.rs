//! Exact evaluation of the `E(N) < 1/12` conditions.
//!
//! The threshold conditions involve `N^(1/4)`, `N^(1/16)` and `sqrt 6`. Each
//! irrational is bracketed between consecutive multiples of `1/S` using
//! integer roots, and `S` is squared until the bracket decides the sign.
//! The per-level conditions only involve `sqrt N` and are decided by
//! squaring.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use super::{BoundSpec, SpaceKind};
use crate::arith::{factorize, Factorization, RealBound, Rounding};

/// `4.862` and `21.234` as exact thousandths.
const OMEGA_CONST: u64 = 4862;
const NU_CONST: u64 = 21234;

/// `floor(x / S)` bracket of `n^(1/d)`: returns `lo` with
/// `lo <= S n^(1/d) < lo + 1`.
fn root_bracket(n: u64, d: u32, scale: &BigUint) -> BigUint {
    (BigUint::from(n) * scale.pow(d)).nth_root(d)
}

/// Whether the closed-form bound on `E(N)` is below `1/12` at `n`.
pub fn bound_below_twelfth(spec: &BoundSpec, n: u64) -> bool {
    let b = BigUint::from(spec.bound);
    let mut scale = BigUint::from(1u64 << 20);
    for _ in 0..8 {
        let decided = match spec.kind {
            SpaceKind::Full => decide_full(n, &b, &scale),
            SpaceKind::New => decide_new(n, &b, &scale),
        };
        if let Some(v) = decided {
            return v;
        }
        scale = &scale * &scale;
    }
    panic!("bound comparison at N = {n} did not converge");
}

/// `1000 N > 48620 y + 29172 y^3 + 12000 B` with `y = N^(1/4)`, which is
/// `(5/6 c y + c y^3 / 2 + B)/N < 1/12` times `12000 N`.
fn decide_full(n: u64, b: &BigUint, s: &BigUint) -> Option<bool> {
    let lhs = BigUint::from(1000 * n) * s.pow(3);
    let rhs = |y: &BigUint| {
        BigUint::from(10 * OMEGA_CONST) * y * s.pow(2)
            + BigUint::from(6 * OMEGA_CONST) * y.pow(3)
            + BigUint::from(12_000u64) * b * s.pow(3)
    };
    let lo = root_bracket(n, 4, s);
    let hi = &lo + 1u32;
    if lhs > rhs(&hi) {
        Some(true)
    } else if lhs <= rhs(&lo) {
        Some(false)
    } else {
        None
    }
}

/// With `z = N^(1/16)`, `c = 4.862`, `d = 21.234`, the condition is
/// `N > 20 c d z^5 + 4 sqrt6 d z^9 + 12 (B + 1) d z`; scaled by `10^6`.
fn decide_new(n: u64, b: &BigUint, s: &BigUint) -> Option<bool> {
    let lhs = BigUint::from(1_000_000u64) * n * s.pow(10);
    let rhs = |z: &BigUint, r6: &BigUint| {
        BigUint::from(20 * OMEGA_CONST * NU_CONST) * z.pow(5) * s.pow(5)
            + BigUint::from(4000 * NU_CONST) * r6 * z.pow(9)
            + BigUint::from(12_000 * NU_CONST) * (b + 1u32) * z * s.pow(9)
    };
    let z_lo = root_bracket(n, 16, s);
    let r_lo = root_bracket(6, 2, s);
    let (z_hi, r_hi) = (&z_lo + 1u32, &r_lo + 1u32);
    if lhs > rhs(&z_hi, &r_hi) {
        Some(true)
    } else if lhs <= rhs(&z_lo, &r_lo) {
        Some(false)
    } else {
        None
    }
}

/// Least `N*` with the closed-form bound below `1/12` for every `N >= N*`.
/// The bound is strictly decreasing in `N`, so the predicate is monotone.
pub fn threshold(spec: &BoundSpec) -> u64 {
    let mut hi = 1u64;
    while !bound_below_twelfth(spec, hi) {
        hi *= 2;
    }
    let mut lo = hi / 2;
    if lo == 0 || bound_below_twelfth(spec, lo) {
        return if lo == 0 { 1 } else { lo };
    }
    // Invariant: fails at lo, holds at hi.
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound_below_twelfth(spec, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Whether `(k - 1)/12 > E(N)` with the exact `E(N)` of the space kind.
pub fn weight_exceeds(spec: &BoundSpec, n: &Factorization, k: u64) -> bool {
    let nv = BigInt::from(n.value());
    let w = BigInt::from(n.two_pow_omega());
    let b = BigInt::from(spec.bound);
    let km1 = BigInt::from(k - 1);
    match spec.kind {
        SpaceKind::Full => {
            // (k-1) psi - 10 W - 12 B > 6 W sqrt N.
            let l: BigInt = km1 * BigInt::from(n.psi()) - 10 * &w - 12 * &b;
            l.is_positive() && &l * &l > 36 * &w * &w * &nv
        }
        SpaceKind::New => {
            // With nu = a/c: (k-1) N c - 20 a W - 12 (B+1) a > 4 a sqrt(6 N).
            let nu = n.nu();
            let a = BigInt::from(nu.numer());
            let c = BigInt::from(nu.denom());
            let l: BigInt = km1 * &nv * &c - 20 * &a * &w - 12 * (b + 1) * &a;
            l.is_positive() && &l * &l > 96 * &a * &a * &nv
        }
    }
}

/// Smallest `k >= 2` with `(k - 1)/12 > E(N)`: every weight from there on
/// has dimension above the bound, for every character (outside the
/// infinite family for newspaces).
pub fn k_cutoff(n: u64, spec: &BoundSpec) -> u64 {
    k_cutoff_factored(&factorize(n), spec)
}

pub fn k_cutoff_factored(n: &Factorization, spec: &BoundSpec) -> u64 {
    // Start from the floating-point estimate and correct it exactly.
    let est = 12.0 * e_value(n, spec).value + 1.0;
    let mut k = (est.floor() as u64).max(2);
    while k > 2 && weight_exceeds(spec, n, k - 1) {
        k -= 1;
    }
    while !weight_exceeds(spec, n, k) {
        k += 1;
    }
    k
}

/// `E(N)` in floating point, for display and as a starting estimate.
pub fn e_value(n: &Factorization, spec: &BoundSpec) -> RealBound {
    let nf = n.value() as f64;
    let w = n.two_pow_omega() as f64;
    let b = spec.bound as f64;
    let value = match spec.kind {
        SpaceKind::Full => (5.0 / 6.0 * w + 0.5 * w * nf.sqrt() + b) / n.psi() as f64,
        SpaceKind::New => {
            let nu = n.nu();
            let nu = nu.numer() as f64 / nu.denom() as f64;
            5.0 / 3.0 * nu * w / nf + 6f64.sqrt() / 3.0 * nu / nf.sqrt() + (b + 1.0) * nu / nf
        }
    };
    RealBound {
        value,
        rounding: Rounding::Nearest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(b: u64) -> BoundSpec {
        BoundSpec {
            kind: SpaceKind::Full,
            bound: b,
        }
    }

    fn new(b: u64) -> BoundSpec {
        BoundSpec {
            kind: SpaceKind::New,
            bound: b,
        }
    }

    #[test]
    fn thresholds_are_sharp() {
        for (spec, t) in [(full(2), 729_974u64), (new(1), 424_094)] {
            assert!(bound_below_twelfth(&spec, t));
            assert!(!bound_below_twelfth(&spec, t - 1));
        }
        assert!(bound_below_twelfth(&new(67846), 58_260_767));
        assert!(!bound_below_twelfth(&new(67846), 58_260_766));
    }

    #[test]
    fn cutoff_at_level_one() {
        // Largest weight with dim S_k(1) <= 2 is 38.
        let k = k_cutoff(1, &full(2));
        assert!(k > 38);
        assert!(!weight_exceeds(&full(2), &factorize(1), k - 1));
    }

    #[test]
    fn cutoff_is_minimal_and_terminal() {
        for spec in [full(0), full(2), new(1), new(67846)] {
            for n in 1..2000u64 {
                let f = factorize(n);
                let k = k_cutoff_factored(&f, &spec);
                assert!(weight_exceeds(&spec, &f, k));
                assert!(k == 2 || !weight_exceeds(&spec, &f, k - 1));
                assert!(weight_exceeds(&spec, &f, k + 7));
            }
        }
    }

    #[test]
    fn cutoff_two_beyond_threshold() {
        for n in [729_974u64, 800_000, 1_000_003] {
            assert_eq!(k_cutoff(n, &full(2)), 2);
        }
    }
}
