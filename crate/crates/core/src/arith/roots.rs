//! Roots of `x^2 + x + 1` and `x^2 + 1` modulo `n`.

use super::{crt_pair, factorize, inv_mod, legendre, mul_mod, sqrt_mod_prime_power};

/// Crossover between the literal scan and the CRT construction.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CongruenceKind {
    /// `x^2 + x + 1 = 0`.
    CubeRoots,
    /// `x^2 + 1 = 0`.
    FourthRoots,
}

impl CongruenceKind {
    fn holds(self, x: u64, n: u64) -> bool {
        let x2 = mul_mod(x, x, n);
        match self {
            CongruenceKind::CubeRoots => (x2 + x + 1) % n == 0,
            CongruenceKind::FourthRoots => (x2 + 1) % n == 0,
        }
    }
}

/// Every residue `0 <= x < n` solving the congruence, by scanning.
pub fn congruence_roots_bruteforce(kind: CongruenceKind, n: u64) -> Vec<u64> {
    assert!(n >= 1);
    (0..n).filter(|&x| kind.holds(x, n)).collect()
}

fn local_roots(kind: CongruenceKind, p: u64, r: u32) -> Vec<u64> {
    let q = p.pow(r);
    match kind {
        CongruenceKind::CubeRoots => match p {
            2 => vec![],
            3 => {
                if r == 1 {
                    vec![1]
                } else {
                    vec![]
                }
            }
            _ => {
                if legendre(-3, p) != 1 {
                    return vec![];
                }
                // x = (-1 +- u)/2 with u^2 = -3.
                let u = sqrt_mod_prime_power(-3, p, r).expect("residue");
                let half = inv_mod(2, q).unwrap();
                let a = mul_mod((q - 1 + u) % q, half, q);
                let b = mul_mod((2 * q - 1 - u) % q, half, q);
                vec![a, b]
            }
        },
        CongruenceKind::FourthRoots => match p {
            2 => {
                if r == 1 {
                    vec![1]
                } else {
                    vec![]
                }
            }
            _ => {
                if p % 4 != 1 {
                    return vec![];
                }
                let u = sqrt_mod_prime_power(-1, p, r).expect("residue");
                vec![u, q - u]
            }
        },
    }
}

/// Roots assembled from the prime-power roots by CRT.
pub fn congruence_roots_crt(kind: CongruenceKind, n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut acc = vec![0u64];
    let mut modulus = 1u64;
    for (p, r) in factorize(n).iter() {
        let local = local_roots(kind, p, r);
        if local.is_empty() {
            return vec![];
        }
        let q = p.pow(r);
        acc = acc
            .iter()
            .flat_map(|&a| local.iter().map(move |&b| crt_pair(a, modulus, b, q)))
            .collect();
        modulus *= q;
    }
    acc.sort_unstable();
    acc
}

/// Sorted roots modulo `n`: scanned for `n <= cap`, constructed above it.
pub fn congruence_roots(kind: CongruenceKind, n: u64, cap: u64) -> Vec<u64> {
    if n <= cap {
        congruence_roots_bruteforce(kind, n)
    } else {
        congruence_roots_crt(kind, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CongruenceKind::*;

    #[test]
    fn named_sets() {
        assert_eq!(congruence_roots_bruteforce(CubeRoots, 3), vec![1]);
        assert_eq!(congruence_roots_bruteforce(FourthRoots, 2), vec![1]);
        for r in 1..10 {
            assert!(congruence_roots_bruteforce(CubeRoots, 1 << r).is_empty());
            assert!(congruence_roots_crt(CubeRoots, 1 << r).is_empty());
        }
        assert_eq!(congruence_roots_crt(CubeRoots, 1), vec![0]);
        assert_eq!(congruence_roots_crt(CubeRoots, 7), vec![2, 4]);
    }

    #[test]
    fn crt_agrees_with_scan() {
        for n in 1..=10_000u64 {
            let w = factorize(n).two_pow_omega() as usize;
            for kind in [CubeRoots, FourthRoots] {
                let brute = congruence_roots_bruteforce(kind, n);
                assert!(brute.len() <= w);
                assert_eq!(brute, congruence_roots_crt(kind, n), "{kind:?} mod {n}");
            }
        }
    }

    #[test]
    fn large_modulus_uses_crt() {
        let n = 7 * 13 * 19 * 31 * 37 * 43;
        let roots = congruence_roots(CubeRoots, n, 1000);
        assert_eq!(roots.len(), 64);
        assert!(roots.iter().all(|&x| CubeRoots.holds(x, n)));
    }
}
