use super::*;
use crate::arith::{euler_phi, gcd_phi_sum};

fn chi(n: u64, m: i64) -> DirichletCharacter {
    DirichletCharacter::from_conrey(n, m).unwrap()
}

fn dim(n: u64, k: u64, m: i64) -> i64 {
    dim_full(n, k, &chi(n, m)).unwrap().total
}

#[test]
fn tabulated_levels() {
    assert_eq!(dim(11, 2, 1), 1);
    assert_eq!(dim(22, 2, 1), 2);
    assert_eq!(dim(1, 2, 1), 0);
    // dim S_12(1) = 1 and dim S_k(1) = 0 for k < 12.
    assert_eq!(dim(1, 12, 1), 1);
    assert!((2..12).step_by(2).all(|k| dim(1, k, 1) == 0));
    assert_eq!(dim(37, 2, 1), 2);
    // Genus of X_0(N): 0 for N = 1..10, 12, 13, 16, 18, 25.
    for n in [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25] {
        assert_eq!(dim(n, 2, 1), 0, "genus of X_0({n})");
    }
}

#[test]
fn term_examples() {
    assert_eq!(rho(3, &chi(3, 1)).unwrap(), 1);
    for r in 1..8 {
        for c in DirichletCharacter::enumerate(1 << r, None, None) {
            assert_eq!(rho(1 << r, &c).unwrap(), 0);
        }
    }
    assert_eq!(rho(7, &chi(7, 1)).unwrap(), 2);
    assert_eq!(rho_bruteforce(1, &chi(1, 1)).unwrap(), 1);
    assert_eq!(rho_prime_bruteforce(1, &chi(1, 1)).unwrap(), 1);
    // (-3/5) = -1.
    assert_eq!(rho_bruteforce(5 * 7, &chi(35, 1)).unwrap(), 0);
    assert_eq!(sigma_mult(4, 1).unwrap(), 3);
    for p in [2u64, 3, 5, 101] {
        assert_eq!(sigma_mult(p, 1).unwrap(), 2);
    }
    for f in [1u64, 4, 12, 60, 49, 2310] {
        assert_eq!(sigma_mult(f, f).unwrap(), factorize(f).two_pow_omega());
    }
    assert!(matches!(sigma_mult(9, 2), Err(Error::NotADivisor { .. })));
}

#[test]
fn constant_term() {
    assert_eq!(c0(2, &chi(1, 1)), 1);
    assert_eq!(c0(2, &chi(5, 4)), 0);
    assert_eq!(c0(4, &chi(1, 1)), 0);
}

#[test]
fn invalid_triples() {
    assert!(matches!(
        dim_full(5, 3, &chi(5, 4)),
        Err(Error::ParityMismatch { .. })
    ));
    assert!(matches!(
        dim_full(10, 2, &chi(5, 4)),
        Ok(FullDimTerms { .. })
    ));
    assert!(matches!(
        dim_full(6, 2, &chi(5, 4)),
        Err(Error::ConductorDoesNotDivide { .. })
    ));
    assert!(matches!(
        dim_full(5, 1, &chi(5, 2)),
        Err(Error::WeightTooSmall { .. })
    ));
}

#[test]
fn term_breakdown_sums() {
    let t = dim_full(22, 2, &chi(22, 1)).unwrap();
    assert_eq!(t.sum(), Rat::int(t.total as i128));
    assert_eq!(t.main, Rat::new(36, 12));
    assert_eq!(t.constant, Rat::ONE);
}

/// Every term oracle, on a small range. The acceptance suite runs the full
/// range.
#[test]
fn oracles_agree_small() {
    for n in 1..=600u64 {
        for c in DirichletCharacter::enumerate(n, None, None) {
            assert_eq!(rho(n, &c).unwrap(), rho_bruteforce(n, &c).unwrap(), "{c:?}");
            assert_eq!(
                rho_prime(n, &c).unwrap(),
                rho_prime_bruteforce(n, &c).unwrap(),
                "{c:?}"
            );
        }
        for f in factorize(n).divisors() {
            assert_eq!(sigma_mult(n, f).unwrap(), gcd_phi_sum(n, f).unwrap());
        }
    }
}

#[test]
fn character_modulus_does_not_matter() {
    // chi_5(4, .) induced to modulus 20 gives the same dimensions.
    let small = chi(5, 4);
    let big = DirichletCharacter::enumerate(20, None, Some(5))
        .into_iter()
        .find(|c| c.primitive_label() == 4)
        .unwrap();
    for n in [5u64, 10, 15, 20, 40, 100] {
        for k in [2u64, 4, 6] {
            assert_eq!(
                dim_full(n, k, &small).unwrap(),
                dim_full(n, k, &big).unwrap()
            );
        }
    }
}

#[test]
fn total_character_count_matches_gamma1() {
    // sum over chi of dim S_2(Gamma_0(N), chi) = genus of X_1(N), which is 0
    // exactly for N <= 10 and N = 12.
    for n in [1u64, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12] {
        let total: i64 = DirichletCharacter::enumerate(n, Some(1), None)
            .iter()
            .map(|c| dim_full(n, 2, c).unwrap().total)
            .sum();
        assert_eq!(total, 0, "genus of X_1({n})");
    }
    // X_1(11) and X_1(13) have genus 1 and 2.
    let g = |n: u64| -> i64 {
        DirichletCharacter::enumerate(n, Some(1), None)
            .iter()
            .map(|c| dim_full(n, 2, c).unwrap().total)
            .sum()
    };
    assert_eq!(g(11), 1);
    assert_eq!(g(13), 2);
    assert!(euler_phi(13) == 12);
}
