//! Local types of characters mod `p^e` read straight off the Conrey log.
//!
//! For odd `p` the character with log `a` sends `-1` to `(-1)^a`, the
//! primitive cube root `(-1 + u)/2` to a value that is trivial iff `3 | a`,
//! and a square root of `-1` to a value of order `4 / gcd(a, 4)`. So the type
//! depends only on `v_p(a)` and `a mod 12`, and a handful of candidate logs
//! per conductor exponent reach every type without touching the group.

use crate::arith::{conrey_generator, crt_pair, mul_mod};
use crate::characters::{CubeClass, FourthClass, LocalType};

fn valuation(mut a: u64, p: u64) -> u32 {
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

/// Type of the character with log `a` mod `p^e`, `p` odd.
pub fn cyclic_type(p: u64, e: u32, a: u64) -> LocalType {
    let alpha = if a == 0 { 0 } else { e - valuation(a, p) };
    let cube = if alpha >= 1 && p % 3 == 1 {
        if a % 3 == 0 {
            CubeClass::One
        } else {
            CubeClass::Primitive
        }
    } else {
        CubeClass::Inapplicable
    };
    let fourth = if alpha >= 1 && p % 4 == 1 {
        match a % 4 {
            0 => FourthClass::One,
            2 => FourthClass::MinusOne,
            _ => FourthClass::PlusMinusI,
        }
    } else {
        FourthClass::Inapplicable
    };
    LocalType {
        p,
        alpha,
        parity: if a % 2 == 0 { 1 } else { -1 },
        cube,
        fourth,
    }
}

/// Type of the character `(eps, b)` mod `2^e`.
pub fn two_adic_type(e: u32, eps: u8, b: u64) -> LocalType {
    let alpha = match (eps, b) {
        (_, 0) if e < 2 => 0,
        (_, 0) => 2 * eps as u32,
        _ => e - b.trailing_zeros(),
    };
    LocalType {
        p: 2,
        alpha,
        parity: if eps == 0 { 1 } else { -1 },
        cube: CubeClass::Inapplicable,
        fourth: FourthClass::Inapplicable,
    }
}

/// Every local type occurring mod `p^e`, sorted.
pub fn types_mod(p: u64, e: u32) -> Vec<LocalType> {
    let mut out = Vec::new();
    if p == 2 {
        out.push(two_adic_type(e, 0, 0));
        if e >= 2 {
            out.push(two_adic_type(e, 1, 0));
        }
        for alpha in 3..=e {
            let b = 1u64 << (e - alpha);
            out.push(two_adic_type(e, 0, b));
            out.push(two_adic_type(e, 1, b));
        }
    } else {
        out.push(cyclic_type(p, e, 0));
        for alpha in 1..=e {
            let phi_alpha = p.pow(alpha - 1) * (p - 1);
            let scale = p.pow(e - alpha);
            // Residues mod 12 of admissible a' all appear among 1..=36.
            for a1 in (1..phi_alpha.min(37)).filter(|a1| a1 % p != 0) {
                out.push(cyclic_type(p, e, scale * a1));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Conrey label residues mod `p^e` of the characters of type `ty`, ascending.
/// Linear in `phi(p^e)`.
pub fn labels_of_type(p: u64, e: u32, ty: &LocalType) -> Vec<u64> {
    let q = p.pow(e);
    let mut out = Vec::new();
    if q <= 2 {
        out.push(1 % q);
    } else if p == 2 {
        let half = 1u64 << (e - 2);
        let mut x = 1;
        for b in 0..half {
            for eps in 0..2u8 {
                if two_adic_type(e, eps, b) == *ty {
                    out.push(if eps == 0 { x } else { q - x });
                }
            }
            x = mul_mod(x, 5, q);
        }
    } else {
        let g = conrey_generator(p);
        let phi = q / p * (p - 1);
        let mut x = 1;
        for a in 0..phi {
            if cyclic_type(p, e, a) == *ty {
                out.push(x);
            }
            x = mul_mod(x, g, q);
        }
    }
    out.sort_unstable();
    out
}

/// Combine per-prime residue lists into labels mod `N` by CRT, ascending.
pub fn combine_labels(parts: &[(u64, Vec<u64>)]) -> Vec<u64> {
    let mut labels = vec![0u64];
    let mut modulus = 1u64;
    for (q, residues) in parts {
        let mut next = Vec::with_capacity(labels.len() * residues.len());
        for &l in &labels {
            for &r in residues {
                next.push(crt_pair(l, modulus, r, *q));
            }
        }
        labels = next;
        modulus *= q;
    }
    if modulus == 1 {
        return vec![1];
    }
    labels.sort_unstable();
    labels
}
