use super::*;
use crate::arith::{euler_phi, mobius};
use crate::characters::{CubeClass, FourthClass, LocalType};
use crate::dimfull::dim_full;

fn chi(n: u64, m: i64) -> DirichletCharacter {
    DirichletCharacter::from_conrey(n, m).unwrap()
}

fn pp(p: u64, a: u32) -> Factorization {
    if a == 0 {
        Factorization::one()
    } else {
        Factorization::from_pairs(vec![(p, a)])
    }
}

/// A one-prime signature with the given local data.
fn local_sig(p: u64, alpha: u32, cube: CubeClass, fourth: FourthClass) -> CharSignature {
    if alpha == 0 {
        return CharSignature::trivial();
    }
    CharSignature {
        conductor: p.pow(alpha),
        parity: 1,
        locals: vec![LocalType {
            p,
            alpha,
            parity: 1,
            cube,
            fourth,
        }],
    }
}

const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 29, 37];

#[test]
fn tabulated_newspaces() {
    assert_eq!(dim_new_explicit(22, 2, &chi(22, 1)).unwrap().total, 0);
    assert_eq!(dim_new_explicit(11, 2, &chi(11, 1)).unwrap().total, 1);
    assert_eq!(dim_new_explicit(126, 2, &chi(126, 125)).unwrap().total, 0);
    let c4 = DirichletCharacter::enumerate(8, None, Some(4)).remove(0);
    assert_eq!(dim_new_convolution(8, 3, &c4).unwrap(), 0);
    assert_eq!(dim_new_explicit(8, 3, &c4).unwrap().total, 0);
}

#[test]
fn newspace_at_conductor_level_is_full_space() {
    for n in 1..=200u64 {
        for c in DirichletCharacter::enumerate(n, None, Some(n)) {
            for k in 2..=8u64 {
                if (k % 2 == 0) != c.is_even() {
                    continue;
                }
                let full = dim_full(n, k, &c).unwrap().total;
                assert_eq!(dim_new_convolution(n, k, &c).unwrap(), full);
            }
        }
    }
}

#[test]
fn oldspace_example() {
    let t = chi(22, 1);
    assert_eq!(oldspace_reconstruct(22, 2, &t).unwrap(), 2);
    for (m, d) in [(1u64, 0i64), (2, 0), (11, 1), (22, 0)] {
        assert_eq!(dim_new_explicit(m, 2, &chi(m, 1)).unwrap().total, d);
    }
}

#[test]
fn shifted_examples() {
    let n = factorize(360);
    let id = Shifted::new(Psi, Factorization::one()).unwrap();
    assert_eq!(id.eval(&n), Psi.eval(&n));
    for p in PRIMES {
        for a in 1..4 {
            let s = Shifted::new(Psi, pp(p, a)).unwrap();
            for r in 1..6 {
                assert_eq!(s.local(p, r), Rat::int(p.pow(r) as i128));
                let f = pp(p, a + 3);
                let sf = Shifted::new(SigmaFn { f: &f }, f.clone()).unwrap();
                if r < a + 3 {
                    assert_eq!(sf.local(p, r), Rat::int(p.pow(r) as i128));
                }
            }
        }
    }
    let sig = local_sig(5, 1, CubeClass::Inapplicable, FourthClass::PlusMinusI);
    assert!(matches!(
        Shifted::new(RhoPrimeFn { sig: &sig }, pp(5, 1)),
        Err(Error::ThetaVanishes { f: 5 })
    ));
}

#[test]
fn beta_convolved_one_is_mobius() {
    for n in 1..=10_000u64 {
        assert_eq!(
            beta_convolve(One, &factorize(n)),
            Rat::int(mobius(n) as i128)
        );
    }
}

/// Each closed-form table against the generic shift-and-convolve machinery,
/// for every branch at small `(p, r, alpha)`.
#[test]
fn psi_and_mu_tables() {
    for p in PRIMES {
        for a in 0..=4u32 {
            let f = pp(p, a);
            let shifted = Shifted::new(Psi, f.clone()).unwrap();
            let one = Shifted::new(One, f).unwrap();
            for r in 1..=8u32 {
                assert_eq!(tables::psi_f(p, r, a), shifted.local(p, r));
                let conv = BetaConvolved(&shifted).local(p, r);
                assert_eq!(
                    Rat::int(tables::beta_psi_f(p, r, a) as i128),
                    conv,
                    "p={p} r={r} a={a}"
                );
                let mu = BetaConvolved(&one).local(p, r);
                assert_eq!(Rat::int(tables::beta_one_f(r) as i128), mu);
            }
        }
    }
}

#[test]
fn sigma_tables() {
    for p in PRIMES {
        for a in 0..=5u32 {
            if p == 2 && a == 1 {
                continue;
            }
            let f = pp(p, a);
            let shifted = Shifted::new(SigmaFn { f: &f }, f.clone()).unwrap();
            for r in 1..=10u32 {
                assert_eq!(
                    tables::sigma_f(p, r, a),
                    shifted.local(p, r),
                    "p={p} r={r} a={a}"
                );
                let conv = BetaConvolved(&shifted).local(p, r);
                assert_eq!(
                    Rat::int(tables::beta_sigma_f(p, r, a) as i128),
                    conv,
                    "p={p} r={r} a={a}"
                );
            }
        }
    }
    // Named cases.
    for p in [3u64, 5, 7, 11] {
        assert_eq!(tables::beta_sigma_f(p, 1, 1), (p as i64 - 3) / 2);
    }
    for r in [1u32, 3, 5] {
        assert_eq!(tables::beta_sigma_f(7, r, 0), 0);
    }
    assert_eq!(tables::beta_psi_f(7, 1, 1), 5);
}

fn cube_classes(p: u64) -> Vec<CubeClass> {
    if p % 3 == 1 {
        vec![CubeClass::One, CubeClass::Primitive]
    } else {
        vec![CubeClass::Inapplicable]
    }
}

fn fourth_classes(p: u64) -> Vec<FourthClass> {
    if p % 4 == 1 {
        vec![
            FourthClass::One,
            FourthClass::MinusOne,
            FourthClass::PlusMinusI,
        ]
    } else {
        vec![FourthClass::Inapplicable]
    }
}

#[test]
fn rho_tables() {
    let mut checked = 0;
    for p in PRIMES {
        for a in 0..=4u32 {
            for cube in cube_classes(p) {
                let sig = local_sig(p, a, cube, FourthClass::Inapplicable);
                let f = pp(p, a);
                let Ok(shifted) = Shifted::new(RhoFn { sig: &sig }, f) else {
                    continue;
                };
                for r in 1..=6u32 {
                    assert_eq!(
                        Rat::int(tables::rho_f(p, r, a) as i128),
                        shifted.local(p, r)
                    );
                    let conv = BetaConvolved(&shifted).local(p, r);
                    assert_eq!(
                        Rat::int(tables::beta_rho_f(p, r, a) as i128),
                        conv,
                        "p={p} r={r} a={a}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
    assert_eq!(tables::beta_rho_f(3, 3, 0), 1);
}

#[test]
fn rho_prime_tables() {
    let mut checked = 0;
    for p in PRIMES {
        for a in 0..=4u32 {
            for fourth in fourth_classes(p) {
                let sig = local_sig(p, a, CubeClass::Inapplicable, fourth);
                let f = pp(p, a);
                let Ok(shifted) = Shifted::new(RhoPrimeFn { sig: &sig }, f) else {
                    continue;
                };
                for r in 1..=6u32 {
                    assert_eq!(
                        Rat::int(tables::rho_prime_f(p, r, a) as i128),
                        shifted.local(p, r)
                    );
                    let conv = BetaConvolved(&shifted).local(p, r);
                    assert_eq!(
                        Rat::int(tables::beta_rho_prime_f(p, r, a) as i128),
                        conv,
                        "p={p} r={r} a={a}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
    assert_eq!(tables::beta_rho_prime_f(5, 1, 0), 0);
    assert_eq!(tables::beta_rho_prime_f(2, 3, 0), 1);
}

#[test]
fn partial_convolution_examples() {
    let n = factorize(360);
    assert_eq!(partial_convolution(Psi, &n, &n).unwrap(), Psi.eval(&n));
    for m in 1..=1000u64 {
        let n = factorize(m);
        let one = Factorization::one();
        assert_eq!(
            partial_convolution_literal(One, &one, &n).unwrap(),
            Rat::int(mobius(m) as i128)
        );
        assert_eq!(
            partial_convolution(One, &one, &n).unwrap(),
            Rat::int(mobius(m) as i128)
        );
    }
    assert!(matches!(
        partial_convolution(Psi, &factorize(7), &factorize(12)),
        Err(Error::NotADivisor { .. })
    ));
}

#[test]
fn partial_convolution_identity_small() {
    for m in 1..=400u64 {
        let n = factorize(m);
        let mut sigs: Vec<CharSignature> = DirichletCharacter::enumerate(m, None, None)
            .iter()
            .map(|c| c.signature())
            .collect();
        sigs.sort_by_key(|s| format!("{s:?}"));
        sigs.dedup();
        for s in &sigs {
            let f = factorize(s.conductor);
            for theta in [
                &RhoFn { sig: s } as &dyn Multiplicative,
                &RhoPrimeFn { sig: s },
            ] {
                assert_eq!(
                    partial_convolution(theta, &f, &n).unwrap(),
                    partial_convolution_literal(theta, &f, &n).unwrap()
                );
            }
        }
        for d in n.divisors() {
            let f = factorize(d);
            assert_eq!(
                partial_convolution(Psi, &f, &n).unwrap(),
                partial_convolution_literal(Psi, &f, &n).unwrap()
            );
            let sigma = SigmaFn { f: &f };
            assert_eq!(
                partial_convolution(&sigma, &f, &n).unwrap(),
                partial_convolution_literal(&sigma, &f, &n).unwrap()
            );
        }
    }
}

#[test]
fn explicit_matches_convolution_small() {
    for n in 1..=300u64 {
        for c in DirichletCharacter::enumerate(n, None, None) {
            for k in 2..=13u64 {
                if (k % 2 == 0) != c.is_even() {
                    continue;
                }
                let e = dim_new_explicit(n, k, &c).unwrap();
                assert!(e.total >= 0);
                assert_eq!(e.sum(), Rat::int(e.total as i128));
                assert_eq!(
                    e.total,
                    dim_new_convolution(n, k, &c).unwrap(),
                    "{c:?} k={k}"
                );
                assert_eq!(
                    oldspace_reconstruct(n, k, &c).unwrap(),
                    dim_full(n, k, &c).unwrap().total
                );
            }
        }
    }
    assert!(euler_phi(300) > 0);
}
