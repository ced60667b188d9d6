//! Modular arithmetic on `u64` residues: powers, inverses, CRT, Legendre
//! symbols and square roots modulo prime powers.

use num_integer::Integer;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce(a: i64, m: u64) -> u64 {
    (a as i128).rem_euclid(m as i128) as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// Combines `x = r1 (mod m1)` and `x = r2 (mod m2)` for coprime moduli.
pub fn crt_pair(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let inv = inv_mod(m1 % m2, m2).expect("CRT moduli must be coprime");
    let m = m1 as u128 * m2 as u128;
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u128;
    let t = diff * inv as u128 % m2 as u128;
    ((r1 as u128 + m1 as u128 * t) % m) as u64
}

/// Legendre symbol `(a/p)` for an odd prime `p`: `0`, `1` or `-1`.
pub fn legendre(a: i64, p: u64) -> i8 {
    debug_assert!(p > 2);
    let a = reduce(a, p);
    if a == 0 {
        return 0;
    }
    match pow_mod(a, (p - 1) / 2, p) {
        1 => 1,
        x if x == p - 1 => -1,
        _ => unreachable!("{p} is not prime"),
    }
}

/// Square root modulo an odd prime by Tonelli–Shanks. The quadratic
/// non-residue is the smallest candidate `z = 2, 3, ...`, so the output is
/// deterministic.
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if p == 2 || a == 0 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .unwrap();
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// A solution of `x^2 = a (mod p^r)`, or `None` when there is none.
///
/// Odd `p`: Tonelli–Shanks modulo `p`, then quadratic Hensel lifting for
/// units; factors of `p` in `a` are peeled off in pairs. `p = 2` is handled
/// directly from the structure of squares modulo `2^r`.
pub fn sqrt_mod_prime_power(a: i64, p: u64, r: u32) -> Option<u64> {
    assert!(r >= 1);
    let modulus = p.checked_pow(r).expect("prime power overflows u64");
    let a = reduce(a, modulus);
    if a == 0 {
        return Some(0);
    }
    // a = p^v * b with p not dividing b, v < r.
    let mut v = 0u32;
    let mut b = a;
    while b % p == 0 {
        b /= p;
        v += 1;
    }
    if v % 2 == 1 {
        return None;
    }
    let rest = r - v;
    let root = if p == 2 {
        sqrt_unit_mod_two_power(b, rest)?
    } else {
        sqrt_unit_mod_odd_prime_power(b, p, rest)?
    };
    Some(mul_mod(root, p.pow(v / 2), modulus))
}

fn sqrt_unit_mod_odd_prime_power(b: u64, p: u64, r: u32) -> Option<u64> {
    let mut x = sqrt_mod_prime(b % p, p)?;
    let mut k = 1u32;
    // Newton step x <- x - (x^2 - b) / (2x) doubles the precision.
    while k < r {
        k = (2 * k).min(r);
        let m = p.pow(k);
        let bm = b % m;
        let fx = (mul_mod(x, x, m) + m - bm) % m;
        let inv = inv_mod(mul_mod(2, x, m), m).expect("unit");
        x = (x + m - mul_mod(fx, inv, m)) % m;
    }
    Some(x)
}

fn sqrt_unit_mod_two_power(b: u64, r: u32) -> Option<u64> {
    let m = 1u64 << r;
    let b = b % m;
    match r {
        1 => Some(1),
        2 => (b % 4 == 1).then_some(1),
        _ => {
            if b % 8 != 1 {
                return None;
            }
            // Bit-by-bit lift: x^2 = b mod 2^k  ->  mod 2^(k+1).
            let mut x = 1u64;
            for k in 3..r {
                let mk1 = 1u64 << (k + 1);
                if mul_mod(x, x, mk1) != b % mk1 {
                    x += 1 << (k - 1);
                }
            }
            Some(x % m)
        }
    }
}

/// Smallest positive integer that is a primitive root modulo `p^2` for an odd
/// prime `p`; it is then a primitive root modulo every power of `p`.
pub fn conrey_generator(p: u64) -> u64 {
    assert!(p > 2);
    let phi = p - 1;
    let factors: Vec<u64> = super::factorize(phi).primes().collect();
    let p2 = p * p;
    (2..)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, phi / q, p) != 1) && pow_mod(g, phi, p2) != 1)
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_root(a: i64, p: u64, r: u32, x: u64) {
        let m = p.pow(r);
        assert_eq!(mul_mod(x, x, m), reduce(a, m), "a={a} p={p} r={r} x={x}");
    }

    #[test]
    fn named_square_roots() {
        let x = sqrt_mod_prime_power(-3, 7, 1).unwrap();
        check_root(-3, 7, 1, x);
        assert!(x == 2 || x == 5);
        assert_eq!(sqrt_mod_prime_power(-1, 2, 2), None);
        let y = sqrt_mod_prime_power(-1, 5, 2).unwrap();
        assert!(y == 7 || y == 18);
    }

    #[test]
    fn exhaustive_small_prime_powers() {
        for &p in &[2u64, 3, 5, 7, 11, 13, 17] {
            for r in 1..=4u32 {
                let m = p.pow(r);
                for a in 0..m {
                    let brute = (0..m).any(|x| mul_mod(x, x, m) == a);
                    match sqrt_mod_prime_power(a as i64, p, r) {
                        Some(x) => check_root(a as i64, p, r, x),
                        None => assert!(!brute, "missed root of {a} mod {p}^{r}"),
                    }
                }
            }
        }
    }

    #[test]
    fn tonelli_shanks_deep_two_adic_part() {
        // p - 1 = 2^s * q with large s.
        for &p in &[97u64, 193, 257, 65537, 7681] {
            for a in 1..200u64 {
                if legendre(a as i64, p) == 1 {
                    let x = sqrt_mod_prime(a, p).unwrap();
                    assert_eq!(mul_mod(x, x, p), a % p);
                }
            }
        }
    }

    #[test]
    fn generators() {
        assert_eq!(conrey_generator(3), 2);
        assert_eq!(conrey_generator(5), 2);
        assert_eq!(conrey_generator(7), 3);
        // 5 is the least primitive root mod 40487 but not mod 40487^2.
        assert_eq!(conrey_generator(40487), 10);
    }

    #[test]
    fn crt_and_inverse() {
        assert_eq!(crt_pair(2, 3, 1, 4), 5);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(legendre(-3, 7), 1);
        assert_eq!(legendre(-1, 7), -1);
    }
}
