//! Exhaustive bounded searches over levels, characters and weights.
//!
//! Beyond `threshold(spec)` the explicit error term `E(N)` is below `1/12`,
//! so every space there has dimension above the bound. Below it, each level
//! only needs the weights under [`k_cutoff`]. The search never enumerates
//! characters one by one: the dimension depends on a character only through
//! its local types, so it runs over combinations of local types and expands
//! to Conrey labels only for the rare hits.

mod bounds;
mod equidist;
mod local;
mod sieve;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use bounds::{
    bound_below_twelfth, e_value, k_cutoff, k_cutoff_factored, threshold, weight_exceeds,
};
pub use equidist::{equidistribution_check, ConductorClass, EquidistReport};
pub use local::{combine_labels, cyclic_type, labels_of_type, two_adic_type, types_mod};
pub use sieve::{
    martin_dims, martin_sieve, SieveOptions, SieveResult, CHECKPOINT_ENV, SIEVE_CAPACITY,
};

use crate::arith::{factorize, Factorization};
use crate::characters::{CharSignature, LocalType};
use crate::dimfull::parts;
use crate::dimnew::new_parts;
use crate::error::{Error, Result};

/// Largest level searched without an explicit opt-in.
pub const DEFAULT_CEILING: u64 = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Full,
    New,
}

/// Which space is classified and the dimension bound `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BoundSpec {
    pub kind: SpaceKind,
    pub bound: u64,
}

impl BoundSpec {
    pub fn full(bound: u64) -> Self {
        BoundSpec {
            kind: SpaceKind::Full,
            bound,
        }
    }

    pub fn new_space(bound: u64) -> Self {
        BoundSpec {
            kind: SpaceKind::New,
            bound,
        }
    }
}

/// One space with dimension at most the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Entry {
    #[serde(rename = "N")]
    pub level: u64,
    #[serde(rename = "k")]
    pub weight: u64,
    pub conrey: u64,
    pub dim: i64,
}

impl Entry {
    fn sort_key(&self) -> (i64, u64, u64, u64) {
        (self.dim, self.level, self.weight, self.conrey)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub spec: BoundSpec,
    /// Sorted by `(dim, N, k, conrey)`.
    pub entries: Vec<Entry>,
    pub search_ceiling: u64,
    pub threshold: u64,
    /// Whether the ceiling reached `threshold - 1`, i.e. the list is final.
    pub complete: bool,
    pub k_cutoffs: BTreeMap<u64, u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    /// Largest level to search; defaults to `min(threshold - 1, ceiling)`.
    pub n_max: Option<u64>,
    /// Lift the [`DEFAULT_CEILING`] guard.
    pub full: bool,
    /// Levels per parallel work unit. Does not affect the result.
    pub chunk: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            n_max: None,
            full: false,
            chunk: 1024,
        }
    }
}

/// `2 | f` and `2 || N/f`: the newspace vanishes in every weight.
pub fn is_infinite_family(level: u64, conductor: u64) -> bool {
    debug_assert_eq!(level % conductor, 0);
    let hit = conductor % 2 == 0 && (level / conductor) % 4 == 2;
    // A primitive character mod 2 does not exist.
    debug_assert!(!hit || conductor % 4 == 0);
    hit
}

pub fn classify(spec: BoundSpec, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let threshold = threshold(&spec);
    let last = threshold - 1;
    let requested = match (opts.n_max, opts.full) {
        (Some(n), _) => n,
        (None, true) => last,
        (None, false) => last.min(DEFAULT_CEILING),
    };
    if requested > DEFAULT_CEILING && !opts.full {
        return Err(Error::ResourceGuard {
            requested,
            ceiling: DEFAULT_CEILING,
        });
    }
    let ceiling = requested.min(last);
    let chunk = opts.chunk.max(1);
    let starts: Vec<u64> = (1..=ceiling).step_by(chunk as usize).collect();
    let pieces: Vec<(Vec<Entry>, Vec<(u64, u64)>)> = starts
        .into_par_iter()
        .map(|lo| {
            let hi = (lo + chunk - 1).min(ceiling);
            let mut entries = Vec::new();
            let mut cutoffs = Vec::new();
            for n in lo..=hi {
                let cutoff = search_level(n, &spec, &mut entries);
                cutoffs.push((n, cutoff));
            }
            (entries, cutoffs)
        })
        .collect();
    let mut entries = Vec::new();
    let mut k_cutoffs = BTreeMap::new();
    for (e, c) in pieces {
        entries.extend(e);
        k_cutoffs.extend(c);
    }
    entries.sort_by_key(Entry::sort_key);
    Ok(ClassificationReport {
        spec,
        entries,
        search_ceiling: ceiling,
        threshold,
        complete: ceiling == last,
        k_cutoffs,
    })
}

/// Appends the hits at level `n` and returns its weight cutoff.
fn search_level(n: u64, spec: &BoundSpec, out: &mut Vec<Entry>) -> u64 {
    let level = factorize(n);
    let cutoff = k_cutoff_factored(&level, spec);
    let per_prime: Vec<Vec<LocalType>> = level.iter().map(|(p, e)| types_mod(p, e)).collect();
    let mut idx = vec![0usize; per_prime.len()];
    let mut hits = Vec::new();
    loop {
        let combo: Vec<LocalType> = idx.iter().zip(&per_prime).map(|(&i, ts)| ts[i]).collect();
        let sig = signature_of(&combo);
        hits.clear();
        weights_within_bound(&level, &sig, spec, cutoff, &mut hits);
        if !hits.is_empty() {
            let parts_by_prime: Vec<(u64, Vec<u64>)> = level
                .iter()
                .zip(&combo)
                .map(|((p, e), t)| (p.pow(e), labels_of_type(p, e, t)))
                .collect();
            for conrey in combine_labels(&parts_by_prime) {
                for &(weight, dim) in &hits {
                    out.push(Entry {
                        level: n,
                        weight,
                        conrey,
                        dim,
                    });
                }
            }
        }
        // Odometer over local type choices.
        let mut i = 0;
        loop {
            if i == idx.len() {
                return cutoff;
            }
            idx[i] += 1;
            if idx[i] < per_prime[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

fn signature_of(combo: &[LocalType]) -> CharSignature {
    CharSignature {
        conductor: combo.iter().map(|t| t.p.pow(t.alpha)).product(),
        parity: combo.iter().map(|t| t.parity).product(),
        locals: combo.iter().filter(|t| t.alpha > 0).copied().collect(),
    }
}

fn weights_within_bound(
    level: &Factorization,
    sig: &CharSignature,
    spec: &BoundSpec,
    cutoff: u64,
    hits: &mut Vec<(u64, i64)>,
) {
    let first = if sig.parity == 1 { 2 } else { 3 };
    if first >= cutoff {
        return;
    }
    let twelfths: Box<dyn Fn(u64) -> i128> = match spec.kind {
        SpaceKind::Full => {
            let p = parts(level, sig);
            Box::new(move |k| p.twelfths(k))
        }
        SpaceKind::New => {
            if is_infinite_family(level.value(), sig.conductor) {
                return;
            }
            let p = new_parts(level, sig);
            Box::new(move |k| p.twelfths(k))
        }
    };
    let bound = 12 * spec.bound as i128;
    for k in (first..cutoff).step_by(2) {
        let t = twelfths(k);
        debug_assert!(t % 12 == 0 && t >= 0);
        if t <= bound {
            hits.push((k, (t / 12) as i64));
        }
    }
}
