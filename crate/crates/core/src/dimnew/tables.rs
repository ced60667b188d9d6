//! Closed forms at `p^r` (`r >= 1`, `alpha = v_p(f)`) of the shifted functions
//! and their `beta`-convolutions.

use crate::arith::Rat;

/// `(-3/p) = 1`, for `p != 2, 3`; by reciprocity this is `p = 1 mod 3`.
fn splits_cubic(p: u64) -> bool {
    p % 3 == 1
}

/// `(-1/p) = 1`, for odd `p`.
fn splits_quartic(p: u64) -> bool {
    p % 4 == 1
}

pub fn psi_f(p: u64, r: u32, alpha: u32) -> Rat {
    if alpha == 0 {
        Rat::int(((p + 1) * p.pow(r - 1)) as i128)
    } else {
        Rat::int(p.pow(r) as i128)
    }
}

pub fn beta_psi_f(p: u64, r: u32, alpha: u32) -> i64 {
    let p = p as i64;
    match (alpha, r) {
        (0, 1) => p - 1,
        (0, 2) => p * p - p - 1,
        (0, _) => (p.pow(3) - p * p - p + 1) * p.pow(r - 3),
        (_, 1) => p - 2,
        _ => (p - 1) * (p - 1) * p.pow(r - 2),
    }
}

pub fn sigma_f(p: u64, r: u32, alpha: u32) -> Rat {
    let pw = |e: u32| Rat::int(p.pow(e) as i128);
    let plus = Rat::new(p as i128 + 1, p as i128);
    if alpha == 0 {
        if r % 2 == 1 {
            Rat::int(2) * pw((r - 1) / 2)
        } else {
            plus * pw(r / 2)
        }
    } else if r < alpha {
        pw(r)
    } else if (r + alpha) % 2 == 1 {
        pw((r + alpha - 1) / 2)
    } else {
        Rat::new(1, 2) * plus * pw((r + alpha) / 2)
    }
}

pub fn beta_sigma_f(p: u64, r: u32, alpha: u32) -> i64 {
    let q = p as i64;
    let pw = |e: u32| q.pow(e);
    let halve = |x: i64| {
        debug_assert!(x % 2 == 0, "odd numerator at p = {p}");
        x / 2
    };
    if alpha == 0 {
        return match r {
            _ if r % 2 == 1 => 0,
            2 => q - 2,
            _ => (q - 1) * (q - 1) * pw(r / 2 - 2),
        };
    }
    if r == 1 {
        return if alpha == 1 { halve(q - 3) } else { q - 2 };
    }
    if r > alpha && (r + alpha) % 2 == 1 {
        0
    } else if r >= alpha + 2 {
        halve((q - 1) * (q - 1) * pw((r + alpha) / 2 - 2))
    } else if r == alpha {
        halve((q - 1) * (q - 2) * pw(r - 2))
    } else {
        (q - 1) * (q - 1) * pw(r - 2)
    }
}

/// `rho_f(p^r)`, meaningful when `rho(f) != 0`.
pub fn rho_f(p: u64, r: u32, alpha: u32) -> i64 {
    if (p == 3 && r == 1 && alpha == 0) || (p != 3 && alpha >= 1) {
        1
    } else if splits_cubic(p) && alpha == 0 {
        2
    } else {
        0
    }
}

/// The four cases shared by `beta * rho_f` and `beta * rho'_f`: the special
/// prime, `alpha >= 1`, a split prime, and everything else.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Case {
    Special,
    Ramified,
    Split,
    Other,
}

fn beta_case(case: Case, r: u32) -> i64 {
    match (r, case) {
        (1, Case::Special) | (1, Case::Ramified) => -1,
        (1, Case::Split) => 0,
        (1, Case::Other) => -2,
        (2, Case::Special) | (2, Case::Split) => -1,
        (2, Case::Ramified) => 0,
        (2, Case::Other) => 1,
        (3, Case::Special) => 1,
        _ => 0,
    }
}

pub fn beta_rho_f(p: u64, r: u32, alpha: u32) -> i64 {
    let case = if p == 3 && alpha == 0 {
        Case::Special
    } else if p != 3 && alpha >= 1 {
        Case::Ramified
    } else if splits_cubic(p) && alpha == 0 {
        Case::Split
    } else {
        Case::Other
    };
    beta_case(case, r)
}

/// `rho'_f(p^r)`, meaningful when `rho'(f) != 0`.
pub fn rho_prime_f(p: u64, r: u32, alpha: u32) -> i64 {
    if (p == 2 && r == 1 && alpha == 0) || (p != 2 && alpha >= 1) {
        1
    } else if p != 2 && splits_quartic(p) && alpha == 0 {
        2
    } else {
        0
    }
}

pub fn beta_rho_prime_f(p: u64, r: u32, alpha: u32) -> i64 {
    let case = if p == 2 && alpha == 0 {
        Case::Special
    } else if p != 2 && alpha >= 1 {
        Case::Ramified
    } else if p != 2 && splits_quartic(p) && alpha == 0 {
        Case::Split
    } else {
        Case::Other
    };
    beta_case(case, r)
}

/// `(beta * 1_f)(p^r) = mu(p^r)`.
pub fn beta_one_f(r: u32) -> i64 {
    if r == 1 {
        -1
    } else {
        0
    }
}
