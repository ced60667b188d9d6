//! Dirichlet characters under the Conrey labeling, with exact values.
//!
//! For odd `p` the label `m` of a character mod `p^e` pairs with `n` as
//! `e(a_m a_n / phi(p^e))`, where `a_x` is the log of `x` to the least
//! primitive root mod `p^2`. For `2^e` write `x = (-1)^eps 5^b`; the pairing
//! is `e(eps_m eps_n / 2 + b_m b_n / 2^(e-2))`. Labels mod `N` combine the
//! prime-power labels by CRT.

mod group;

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

pub use group::{Log, PrimePowerGroup};

use crate::arith::{
    crt_pair, factorize, inv_mod, mul_mod, reduce, sqrt_mod_prime_power, Factorization,
};
use crate::error::{Error, Result};

/// `e(numerator / order)`, reduced: `gcd(numerator, order) = 1` and
/// `0 <= numerator < order`, so `1` is `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RootOfUnity {
    numerator: u64,
    order: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity {
        numerator: 0,
        order: 1,
    };

    pub fn new(numerator: u64, denominator: u64) -> Self {
        assert!(denominator > 0);
        let n = numerator % denominator;
        let g = n.gcd(&denominator);
        RootOfUnity {
            numerator: n / g,
            order: denominator / g,
        }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    /// Multiplicative order of the value.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn is_minus_one(&self) -> bool {
        self.order == 2
    }

    pub fn is_pm_i(&self) -> bool {
        self.order == 4
    }

    pub fn is_primitive_cuberoot(&self) -> bool {
        self.order == 3
    }

    pub fn conj(&self) -> Self {
        RootOfUnity::new(self.order - self.numerator, self.order)
    }

    pub fn pow(&self, k: u64) -> Self {
        RootOfUnity::new(
            ((self.numerator as u128 * k as u128) % self.order as u128) as u64,
            self.order,
        )
    }

    /// `(cos, sin)` of the angle. Display only.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let t = std::f64::consts::TAU * self.numerator as f64 / self.order as f64;
        (t.cos(), t.sin())
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, rhs: RootOfUnity) -> RootOfUnity {
        let l = self.order.lcm(&rhs.order);
        let n = self.numerator as u128 * (l / self.order) as u128
            + rhs.numerator as u128 * (l / rhs.order) as u128;
        RootOfUnity::new((n % l as u128) as u64, l)
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.numerator, self.order) {
            (0, 1) => f.write_str("1"),
            (1, 2) => f.write_str("-1"),
            (1, 4) => f.write_str("i"),
            (3, 4) => f.write_str("-i"),
            (n, d) => write!(f, "e({n}/{d})"),
        }
    }
}

/// A character value: zero off the units, otherwise a root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CharValue {
    Zero,
    Root(RootOfUnity),
}

impl CharValue {
    pub fn root(self) -> Option<RootOfUnity> {
        match self {
            CharValue::Zero => None,
            CharValue::Root(r) => Some(r),
        }
    }

    pub fn is_zero(self) -> bool {
        self == CharValue::Zero
    }
}

/// Class of `chi_{p^alpha}((-1 + u)/2)` with `u^2 = -3`, which is a cube root
/// of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CubeClass {
    /// `p` is not `1 mod 3`, or `alpha = 0`.
    Inapplicable,
    One,
    Primitive,
}

/// Class of `chi_{p^alpha}(u')` with `u'^2 = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FourthClass {
    /// `p` is not `1 mod 4`, or `alpha = 0`.
    Inapplicable,
    One,
    MinusOne,
    PlusMinusI,
}

/// Everything the dimension formulas need to know about one local factor of
/// a character: its conductor exponent, parity and the two root classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LocalType {
    pub p: u64,
    pub alpha: u32,
    /// `chi(-1)` of this local factor.
    pub parity: i8,
    pub cube: CubeClass,
    pub fourth: FourthClass,
}

fn conductor_exponent(group: &PrimePowerGroup, log: Log) -> u32 {
    let e = group.exponent();
    match log {
        Log::Trivial => 0,
        Log::Cyclic(0) => 0,
        Log::Cyclic(a) => e - trailing_valuation(a, group.prime()),
        Log::TwoAdic { eps, b: 0 } => 2 * eps as u32,
        Log::TwoAdic { b, .. } => e - b.trailing_zeros(),
    }
}

fn trailing_valuation(mut a: u64, p: u64) -> u32 {
    let mut v = 0;
    while a % p == 0 {
        a /= p;
        v += 1;
    }
    v
}

/// Logs of `-1` and of the roots probed by the local type, precomputed once
/// per group.
struct Probe {
    minus_one: Log,
    cube: Option<Log>,
    fourth: Option<Log>,
}

impl Probe {
    fn new(group: &PrimePowerGroup) -> Probe {
        let p = group.prime();
        let e = group.exponent();
        let q = group.modulus();
        if q <= 2 {
            return Probe {
                minus_one: Log::Trivial,
                cube: None,
                fourth: None,
            };
        }
        // (-1 + u)/2 with u^2 = -3 is a root of x^2 + x + 1.
        let cube = (p % 3 == 1).then(|| {
            let u = sqrt_mod_prime_power(-3, p, e).expect("-3 is a square");
            let x = mul_mod((q - 1 + u) % q, inv_mod(2, q).unwrap(), q);
            group.log(x)
        });
        let fourth = (p % 4 == 1)
            .then(|| group.log(sqrt_mod_prime_power(-1, p, e).expect("-1 is a square")));
        Probe {
            minus_one: group.log(q - 1),
            cube,
            fourth,
        }
    }

    fn classify(&self, group: &PrimePowerGroup, log: Log) -> LocalType {
        let alpha = conductor_exponent(group, log);
        let at = |x: Log| {
            let (num, den) = group.pairing(log, x);
            RootOfUnity::new(num, den)
        };
        let parity = if at(self.minus_one).is_one() { 1 } else { -1 };
        let cube = match self.cube {
            Some(x) if alpha >= 1 => {
                if at(x).is_one() {
                    CubeClass::One
                } else {
                    CubeClass::Primitive
                }
            }
            _ => CubeClass::Inapplicable,
        };
        let fourth = match self.fourth {
            Some(x) if alpha >= 1 => match at(x).order() {
                1 => FourthClass::One,
                2 => FourthClass::MinusOne,
                _ => FourthClass::PlusMinusI,
            },
            _ => FourthClass::Inapplicable,
        };
        LocalType {
            p: group.prime(),
            alpha,
            parity,
            cube,
            fourth,
        }
    }
}

/// The `p`-part `chi_{p^alpha}` of a primitive character: a primitive
/// character mod `p^alpha`, trivial when `alpha = 0`.
#[derive(Clone)]
pub struct LocalCharacter {
    group: Arc<PrimePowerGroup>,
    log: Log,
}

impl LocalCharacter {
    fn primitive_part(group: &PrimePowerGroup, log: Log) -> LocalCharacter {
        let p = group.prime();
        let e = group.exponent();
        let alpha = conductor_exponent(group, log);
        assert!(!(p == 2 && alpha == 1), "no primitive character mod 2");
        let shift = e - alpha;
        let plog = match log {
            _ if alpha == 0 => Log::Trivial,
            Log::Cyclic(a) => Log::Cyclic(a / p.pow(shift)),
            Log::TwoAdic { eps, b } => Log::TwoAdic { eps, b: b >> shift },
            Log::Trivial => Log::Trivial,
        };
        LocalCharacter {
            group: PrimePowerGroup::get(p, alpha),
            log: plog,
        }
    }

    pub fn prime(&self) -> u64 {
        self.group.prime()
    }

    pub fn alpha(&self) -> u32 {
        self.group.exponent()
    }

    /// `p^alpha`.
    pub fn modulus(&self) -> u64 {
        self.group.modulus()
    }

    /// Conrey label of this character mod `p^alpha`.
    pub fn conrey_label(&self) -> u64 {
        self.group.exp(self.log)
    }

    pub fn log(&self) -> Log {
        self.log
    }

    /// Value at a unit `x` (`p` must not divide `x`).
    pub fn evaluate(&self, x: i64) -> RootOfUnity {
        if self.alpha() == 0 {
            return RootOfUnity::ONE;
        }
        let (num, den) = self
            .group
            .pairing(self.log, self.group.log(reduce(x, self.modulus())));
        RootOfUnity::new(num, den)
    }

    pub fn order(&self) -> u64 {
        match self.log {
            Log::Trivial => 1,
            Log::Cyclic(a) => self.group.order() / a.gcd(&self.group.order()),
            Log::TwoAdic { eps, b } => {
                let t = self.group.order() / 2;
                (t / b.gcd(&t)).lcm(&(1 + eps as u64))
            }
        }
    }

    /// `chi_{p^alpha}(-1)`.
    pub fn parity(&self) -> i8 {
        if self.modulus() <= 2 || self.evaluate(-1).is_one() {
            1
        } else {
            -1
        }
    }

    pub fn local_type(&self) -> LocalType {
        Probe::new(&self.group).classify(&self.group, self.log)
    }
}

impl fmt::Debug for LocalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}({}, .)", self.modulus(), self.conrey_label())
    }
}

/// Local data a dimension formula reads off a character: conductor, parity
/// and the local type at each prime of the conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharSignature {
    pub conductor: u64,
    pub parity: i8,
    /// One entry per prime of the conductor, ascending.
    pub locals: Vec<LocalType>,
}

impl CharSignature {
    pub fn trivial() -> Self {
        CharSignature {
            conductor: 1,
            parity: 1,
            locals: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }

    /// Local type at `p`; an `alpha = 0` type when `p` does not divide `f`.
    pub fn at(&self, p: u64) -> LocalType {
        self.locals
            .iter()
            .find(|t| t.p == p)
            .copied()
            .unwrap_or(LocalType {
                p,
                alpha: 0,
                parity: 1,
                cube: CubeClass::Inapplicable,
                fourth: FourthClass::Inapplicable,
            })
    }
}

/// The Conrey character `chi_N(m, .)`. Immutable once built.
#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    label: u64,
    modulus_factors: Factorization,
    conductor: u64,
    parity: i8,
    order: u64,
    /// One component per prime of the modulus, primitive mod `p^alpha`.
    components: Vec<LocalCharacter>,
}

impl DirichletCharacter {
    pub fn from_conrey(modulus: u64, m: i64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let label = if modulus == 1 { 1 } else { reduce(m, modulus) };
        if label.gcd(&modulus) != 1 {
            return Err(Error::NotAUnit { modulus, label: m });
        }
        let factors = factorize(modulus);
        let locals: Vec<(Arc<PrimePowerGroup>, Log)> = factors
            .iter()
            .map(|(p, e)| {
                let g = PrimePowerGroup::get(p, e);
                let log = g.log(label % g.modulus());
                (g, log)
            })
            .collect();
        Ok(Self::assemble(modulus, label, factors, &locals))
    }

    /// Trivial character mod `n`.
    pub fn trivial(modulus: u64) -> Self {
        Self::from_conrey(modulus, 1).expect("1 is a unit")
    }

    fn assemble(
        modulus: u64,
        label: u64,
        modulus_factors: Factorization,
        locals: &[(Arc<PrimePowerGroup>, Log)],
    ) -> Self {
        let components: Vec<LocalCharacter> = locals
            .iter()
            .map(|(g, log)| LocalCharacter::primitive_part(g, *log))
            .collect();
        let conductor = components.iter().map(|c| c.modulus()).product();
        let order = components.iter().fold(1u64, |acc, c| acc.lcm(&c.order()));
        let parity = components.iter().map(|c| c.parity()).product();
        DirichletCharacter {
            modulus,
            label,
            modulus_factors,
            conductor,
            parity,
            order,
            components,
        }
    }

    /// All characters mod `n`, ascending by label, optionally filtered by
    /// parity (`1` even, `-1` odd) and by conductor.
    pub fn enumerate(n: u64, parity: Option<i8>, conductor: Option<u64>) -> Vec<Self> {
        assert!(n >= 1);
        let factors = factorize(n);
        let per_prime: Vec<(Arc<PrimePowerGroup>, Vec<(Log, u64)>)> = factors
            .iter()
            .map(|(p, e)| {
                let g = PrimePowerGroup::get(p, e);
                let elems = g.elements();
                (g, elems)
            })
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; per_prime.len()];
        loop {
            let mut label = 0u64;
            let mut m = 1u64;
            let mut locals = Vec::with_capacity(per_prime.len());
            for (i, (g, elems)) in per_prime.iter().enumerate() {
                let (log, x) = elems[idx[i]];
                label = crt_pair(label, m, x, g.modulus());
                m *= g.modulus();
                locals.push((g.clone(), log));
            }
            let chi = Self::assemble(n, if n == 1 { 1 } else { label }, factors.clone(), &locals);
            if parity.is_none_or(|s| s == chi.parity)
                && conductor.is_none_or(|f| f == chi.conductor)
            {
                out.push(chi);
            }
            // Odometer over the per-prime element lists.
            let mut i = 0;
            loop {
                if i == idx.len() {
                    out.sort_by_key(|c| c.label);
                    return out;
                }
                idx[i] += 1;
                if idx[i] < per_prime[i].1.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self) -> u64 {
        self.label
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `chi(-1)`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == 1
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 1
    }

    pub fn modulus_factors(&self) -> &Factorization {
        &self.modulus_factors
    }

    /// Conrey label of the primitive character mod `f` inducing this one.
    pub fn primitive_label(&self) -> u64 {
        let mut label = 0u64;
        let mut m = 1u64;
        for c in &self.components {
            label = crt_pair(label, m, c.conrey_label() % c.modulus().max(1), c.modulus());
            m *= c.modulus();
        }
        if m == 1 {
            1
        } else {
            label
        }
    }

    /// Components at every prime of the modulus, `alpha = 0` ones included.
    pub fn components(&self) -> &[LocalCharacter] {
        &self.components
    }

    /// `chi_{p^alpha}`; the trivial character when `p` does not divide `f`.
    pub fn local_component(&self, p: u64) -> LocalCharacter {
        self.components
            .iter()
            .find(|c| c.prime() == p)
            .cloned()
            .unwrap_or_else(|| LocalCharacter {
                group: PrimePowerGroup::get(p, 0),
                log: Log::Trivial,
            })
    }

    pub fn evaluate(&self, x: i64) -> CharValue {
        if reduce(x, self.modulus).gcd(&self.modulus) != 1 && self.modulus > 1 {
            return CharValue::Zero;
        }
        self.evaluate_unit(x)
    }

    /// Value of the primitive character mod `f` inducing this one.
    pub fn evaluate_primitive(&self, x: i64) -> CharValue {
        if reduce(x, self.conductor).gcd(&self.conductor) != 1 && self.conductor > 1 {
            return CharValue::Zero;
        }
        self.evaluate_unit(x)
    }

    fn evaluate_unit(&self, x: i64) -> CharValue {
        CharValue::Root(
            self.components
                .iter()
                .filter(|c| c.alpha() > 0)
                .fold(RootOfUnity::ONE, |acc, c| acc * c.evaluate(x)),
        )
    }

    /// `x^` mod `f` with `x^ = x mod p^alpha` and `x^ = 1` modulo the other
    /// prime powers of `f`, so that `chi_{p^alpha}(x) = chi(x^)`.
    pub fn lift_hat(&self, x: i64, p: u64) -> Result<u64> {
        if x.rem_euclid(p as i64) == 0 {
            return Err(Error::PrimeDividesArgument { prime: p, x });
        }
        let mut acc = 0u64;
        let mut m = 1u64;
        for c in self.components.iter().filter(|c| c.alpha() > 0) {
            let q = c.modulus();
            let r = if c.prime() == p { reduce(x, q) } else { 1 };
            acc = crt_pair(acc, m, r, q);
            m *= q;
        }
        Ok(acc % m)
    }

    pub fn signature(&self) -> CharSignature {
        CharSignature {
            conductor: self.conductor,
            parity: self.parity,
            locals: self
                .components
                .iter()
                .filter(|c| c.alpha() > 0)
                .map(|c| c.local_type())
                .collect(),
        }
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\u{3c7}_{}({}, \u{b7})", self.modulus, self.label)
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chi_{}({}, .) [f = {}, parity {}, order {}]",
            self.modulus, self.label, self.conductor, self.parity, self.order
        )
    }
}

/// The local characters mod `p^e` grouped by local type, each type listing
/// its Conrey label residues mod `p^e` in ascending order.
pub fn local_types(p: u64, e: u32) -> Vec<(LocalType, Vec<u64>)> {
    let group = PrimePowerGroup::get(p, e);
    let probe = Probe::new(&group);
    let mut map: std::collections::BTreeMap<LocalType, Vec<u64>> = Default::default();
    for (log, x) in group.elements() {
        map.entry(probe.classify(&group, log)).or_default().push(x);
    }
    map.into_iter()
        .map(|(t, mut xs)| {
            xs.sort_unstable();
            (t, xs)
        })
        .collect()
}
