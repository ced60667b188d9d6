//! The unit groups `(Z/p^e)^x` with their Conrey generators and discrete logs.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Roots;

use crate::arith::{conrey_generator, crt_pair, factorize, inv_mod, mul_mod, pow_mod};

/// Moduli up to this size get a full discrete-log lookup table.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug)]
pub(crate) enum Shape {
    /// `q <= 2`: the group is trivial.
    Trivial,
    /// Odd `p`: cyclic, generated by the Conrey generator `g`.
    Cyclic {
        g: u64,
        order_factors: Vec<(u64, u32)>,
    },
    /// `2^e`, `e >= 2`: `{+-1} x <5>`, with `<5>` of order `2^(e-2)`.
    TwoAdic,
}

/// `(Z/p^e)^x` together with everything needed to take discrete logs in it.
#[derive(Debug)]
pub struct PrimePowerGroup {
    p: u64,
    e: u32,
    q: u64,
    phi: u64,
    pub(crate) shape: Shape,
    table: Option<Vec<u32>>,
}

/// Exponent coordinates of a unit. `Cyclic(a)` means `g^a`; `TwoAdic` means
/// `(-1)^eps 5^b`. The same coordinates label the characters of the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Log {
    Trivial,
    Cyclic(u64),
    TwoAdic { eps: u8, b: u64 },
}

impl PrimePowerGroup {
    /// Shared instance for `p^e`; built once per process.
    pub fn get(p: u64, e: u32) -> Arc<PrimePowerGroup> {
        static CACHE: OnceLock<RwLock<HashMap<(u64, u32), Arc<PrimePowerGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.read().unwrap().get(&(p, e)) {
            return g.clone();
        }
        let group = Arc::new(PrimePowerGroup::build(p, e));
        cache
            .write()
            .unwrap()
            .entry((p, e))
            .or_insert(group)
            .clone()
    }

    fn build(p: u64, e: u32) -> PrimePowerGroup {
        let q = p.pow(e);
        let phi = if e == 0 { 1 } else { p.pow(e - 1) * (p - 1) };
        let shape = if q <= 2 {
            Shape::Trivial
        } else if p == 2 {
            Shape::TwoAdic
        } else {
            Shape::Cyclic {
                g: conrey_generator(p),
                order_factors: factorize(phi).pairs().to_vec(),
            }
        };
        let mut group = PrimePowerGroup {
            p,
            e,
            q,
            phi,
            shape,
            table: None,
        };
        if q > 2 && q <= TABLE_LIMIT {
            let mut table = vec![u32::MAX; q as usize];
            for (log, x) in group.elements() {
                table[x as usize] = group.pack(log);
            }
            group.table = Some(table);
        }
        group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn order(&self) -> u64 {
        self.phi
    }

    /// Order of `5` in the two-adic case, `2^(e-2)`.
    fn two_adic_order(&self) -> u64 {
        1 << (self.e - 2)
    }

    fn pack(&self, log: Log) -> u32 {
        match log {
            Log::Trivial => 0,
            Log::Cyclic(a) => a as u32,
            Log::TwoAdic { eps, b } => ((eps as u32) << 31) | b as u32,
        }
    }

    fn unpack(&self, v: u32) -> Log {
        match self.shape {
            Shape::Trivial => Log::Trivial,
            Shape::Cyclic { .. } => Log::Cyclic(v as u64),
            Shape::TwoAdic => Log::TwoAdic {
                eps: (v >> 31) as u8,
                b: (v & 0x7fff_ffff) as u64,
            },
        }
    }

    /// Every `(log, element)` pair, in increasing order of the log.
    pub fn elements(&self) -> Vec<(Log, u64)> {
        match &self.shape {
            Shape::Trivial => vec![(Log::Trivial, 1 % self.q.max(2))],
            Shape::Cyclic { g, .. } => {
                let mut out = Vec::with_capacity(self.phi as usize);
                let mut x = 1u64;
                for a in 0..self.phi {
                    out.push((Log::Cyclic(a), x));
                    x = mul_mod(x, *g, self.q);
                }
                out
            }
            Shape::TwoAdic => {
                let mut out = Vec::with_capacity(self.phi as usize);
                for eps in 0..2u8 {
                    let mut x = if eps == 0 { 1 } else { self.q - 1 };
                    for b in 0..self.two_adic_order() {
                        out.push((Log::TwoAdic { eps, b }, x));
                        x = mul_mod(x, 5, self.q);
                    }
                }
                out
            }
        }
    }

    /// Coordinates of the unit `x mod q`.
    pub fn log(&self, x: u64) -> Log {
        let x = x % self.q;
        debug_assert!(
            self.q <= 2 || x % self.p != 0,
            "{x} is not a unit mod {}",
            self.q
        );
        if let Some(table) = &self.table {
            return self.unpack(table[x as usize]);
        }
        match &self.shape {
            Shape::Trivial => Log::Trivial,
            Shape::Cyclic { g, order_factors } => {
                Log::Cyclic(pohlig_hellman(*g, x, self.q, self.phi, order_factors))
            }
            Shape::TwoAdic => {
                let eps = (x % 4 == 3) as u8;
                let y = if eps == 1 { self.q - x } else { x };
                let e2 = self.e - 2;
                let b = pohlig_hellman(5, y, self.q, 1 << e2, &[(2, e2)]);
                Log::TwoAdic { eps, b }
            }
        }
    }

    /// The element with the given coordinates.
    pub fn exp(&self, log: Log) -> u64 {
        match (log, &self.shape) {
            (Log::Trivial, _) => 1 % self.q.max(2),
            (Log::Cyclic(a), Shape::Cyclic { g, .. }) => pow_mod(*g, a, self.q),
            (Log::TwoAdic { eps, b }, Shape::TwoAdic) => {
                let x = pow_mod(5, b, self.q);
                if eps == 1 {
                    self.q - x
                } else {
                    x
                }
            }
            _ => panic!("log {log:?} does not belong to the group mod {}", self.q),
        }
    }

    /// Conrey pairing `chi_q(m, n)` as an exponent `num/den` of `e(.)`.
    pub fn pairing(&self, m: Log, n: Log) -> (u64, u64) {
        match (m, n) {
            (Log::Cyclic(a), Log::Cyclic(b)) => (mul_mod(a, b, self.phi), self.phi),
            (Log::TwoAdic { eps: e1, b: b1 }, Log::TwoAdic { eps: e2, b: b2 }) => {
                let t = self.two_adic_order();
                // eps1 eps2 / 2 + b1 b2 / t over the common denominator 2t.
                let num = (e1 * e2) as u64 * t + 2 * mul_mod(b1, b2, t);
                (num % (2 * t), 2 * t)
            }
            _ => (0, 1),
        }
    }
}

fn pohlig_hellman(g: u64, x: u64, m: u64, order: u64, factors: &[(u64, u32)]) -> u64 {
    let mut acc = (0u64, 1u64);
    for &(q, c) in factors {
        let qc = q.pow(c);
        let cof = order / qc;
        let g1 = pow_mod(g, cof, m);
        let h1 = pow_mod(x, cof, m);
        let gamma = pow_mod(g1, qc / q, m);
        let g1_inv = inv_mod(g1, m).expect("unit");
        let mut digits = 0u64;
        let mut qj = 1u64;
        for _ in 0..c {
            let shifted = mul_mod(h1, pow_mod(g1_inv, digits, m), m);
            let hk = pow_mod(shifted, qc / (qj * q), m);
            let d = baby_giant(gamma, hk, q, m);
            digits += d * qj;
            qj *= q;
        }
        acc = (crt_pair(acc.0, acc.1, digits, qc), acc.1 * qc);
    }
    acc.0
}

/// `d` with `gamma^d = h` in a group of prime order `q`.
fn baby_giant(gamma: u64, h: u64, q: u64, m: u64) -> u64 {
    if q <= 64 {
        let mut y = 1u64;
        for d in 0..q {
            if y == h {
                return d;
            }
            y = mul_mod(y, gamma, m);
        }
        panic!("no discrete log");
    }
    let s = q.sqrt() + 1;
    let mut baby = HashMap::with_capacity(s as usize);
    let mut y = 1u64;
    for j in 0..s {
        baby.entry(y).or_insert(j);
        y = mul_mod(y, gamma, m);
    }
    let giant = inv_mod(pow_mod(gamma, s, m), m).expect("unit");
    let mut z = h;
    for i in 0..=s {
        if let Some(&j) = baby.get(&z) {
            return (i * s + j) % q;
        }
        z = mul_mod(z, giant, m);
    }
    panic!("no discrete log");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logs_invert_exp() {
        for (p, e) in [
            (3, 1),
            (3, 4),
            (5, 3),
            (2, 2),
            (2, 3),
            (2, 7),
            (7, 2),
            (40487, 1),
        ] {
            let g = PrimePowerGroup::get(p, e);
            for (log, x) in g.elements() {
                assert_eq!(g.log(x), log, "mod {}^{}", p, e);
                assert_eq!(g.exp(log), x);
            }
        }
    }

    #[test]
    fn untabulated_logs() {
        // Above the table limit the logs come from Pohlig-Hellman.
        for (p, e) in [(2u64, 20u32), (257, 3), (65537, 1), (1_000_003, 1)] {
            let g = PrimePowerGroup::get(p, e);
            assert!(g.table.is_none());
            for x in [3u64, 7, 11, 12345, g.modulus() - 1] {
                if x % p == 0 {
                    continue;
                }
                assert_eq!(g.exp(g.log(x)), x % g.modulus());
            }
        }
    }
}
