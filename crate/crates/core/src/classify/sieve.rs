//! Segmented sieve for `dim S_2^new(Gamma_0(N))` over a range of levels.
//!
//! For the trivial character the explicit formula collapses to
//! `12 dim = (beta*psi)(N) - 4 (beta*rho)(N) - 3 (beta*rho')(N) - 6 (beta*sigma)(N) + 12 mu(N)`,
//! all multiplicative. Each segment keeps
//! the unfactored cofactor of every level and multiplies in local factors
//! prime by prime; whatever cofactor survives the primes up to `sqrt` is a
//! single large prime.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{isqrt, SpfSieve};
use crate::dimnew::tables::{beta_one_f, beta_psi_f, beta_rho_f, beta_rho_prime_f, beta_sigma_f};
use crate::error::{Error, Result};

/// Levels beyond this overflow the fixed-width accumulators.
pub const SIEVE_CAPACITY: u64 = 1 << 32;

/// Overrides the checkpoint directory.
pub const CHECKPOINT_ENV: &str = "NEWSPACE_CHECKPOINT_DIR";

const MAGIC: &[u8; 8] = b"NSSIEVE1";

#[derive(Clone, Debug, Serialize)]
pub struct SieveResult {
    pub target: u64,
    pub n_max: u64,
    /// Whether some `N <= n_max` has dimension exactly `target`.
    pub attained: bool,
    /// Bit `m` set iff `m < target` is attained.
    #[serde(skip)]
    pub attained_below: Vec<u64>,
    /// Least value `<= target` not attained.
    pub first_missing: Option<u64>,
    pub attained_count_below: u64,
    pub chunks: u64,
    pub chunks_resumed: u64,
}

impl SieveResult {
    pub fn is_attained(&self, m: u64) -> bool {
        if m == self.target {
            return self.attained;
        }
        m < self.target && self.attained_below[(m / 64) as usize] >> (m % 64) & 1 == 1
    }
}

pub struct SieveOptions<'a> {
    /// Levels per segment; also the checkpoint granularity.
    pub chunk: u64,
    pub checkpoint_dir: Option<PathBuf>,
    /// Called with `(segments done, segments total)`.
    pub progress: Option<&'a (dyn Fn(u64, u64) + Sync)>,
}

impl Default for SieveOptions<'_> {
    fn default() -> Self {
        SieveOptions {
            chunk: 1 << 18,
            checkpoint_dir: None,
            progress: None,
        }
    }
}

fn base_primes(n_max: u64) -> Result<Vec<u32>> {
    Ok(SpfSieve::new(isqrt(n_max) + 1)?.primes().to_vec())
}

/// Dimensions for `N` in `lo..=hi`, saturated to `u32`.
pub fn martin_dims(lo: u64, hi: u64) -> Result<Vec<u32>> {
    check_capacity(hi)?;
    Ok(segment(lo.max(1), hi + 1, &base_primes(hi)?))
}

fn check_capacity(n_max: u64) -> Result<()> {
    if n_max > SIEVE_CAPACITY {
        return Err(Error::SieveCapacity {
            requested: n_max,
            capacity: SIEVE_CAPACITY,
        });
    }
    Ok(())
}

/// Levels in `lo..hi`.
fn segment(lo: u64, hi: u64, primes: &[u32]) -> Vec<u32> {
    let len = (hi - lo) as usize;
    let mut rest: Vec<u64> = (lo..hi).collect();
    // psi, rho, rho', sigma, mu
    let mut acc = vec![[1i64; 5]; len];
    let apply = |a: &mut [i64; 5], p: u64, r: u32| {
        a[0] *= beta_psi_f(p, r, 0);
        a[1] *= beta_rho_f(p, r, 0);
        a[2] *= beta_rho_prime_f(p, r, 0);
        a[3] *= beta_sigma_f(p, r, 0);
        a[4] *= beta_one_f(r);
    };
    for &p in primes {
        let p = p as u64;
        if p * p >= hi {
            break;
        }
        let mut m = lo.div_ceil(p) * p;
        while m < hi {
            let i = (m - lo) as usize;
            let mut r = 0;
            while rest[i] % p == 0 {
                rest[i] /= p;
                r += 1;
            }
            apply(&mut acc[i], p, r);
            m += p;
        }
    }
    rest.iter()
        .zip(acc.iter_mut())
        .map(|(&q, a)| {
            if q > 1 {
                apply(a, q, 1);
            }
            let t = a[0] - 4 * a[1] - 3 * a[2] - 6 * a[3] + 12 * a[4];
            debug_assert!(t >= 0 && t % 12 == 0, "12 dim = {t}");
            u32::try_from(t / 12).unwrap_or(u32::MAX)
        })
        .collect()
}

struct Chunk {
    lo: u64,
    hi: u64,
    /// Values `< target` as bits, then whether `target` itself occurred.
    bits: Vec<u64>,
    hit_target: bool,
}

fn checkpoint_path(dir: &Path, target: u64, lo: u64, hi: u64) -> PathBuf {
    dir.join(format!("t{target}-{lo}-{hi}.bits"))
}

fn load_checkpoint(path: &Path, words: usize) -> Option<(Vec<u64>, bool)> {
    let bytes = fs::read(path).ok()?;
    if bytes.len() != MAGIC.len() + 1 + 8 * words || &bytes[..8] != MAGIC {
        return None;
    }
    let hit = bytes[8] == 1;
    let bits = bytes[9..]
        .chunks_exact(8)
        .map(|w| u64::from_le_bytes(w.try_into().unwrap()))
        .collect();
    Some((bits, hit))
}

fn store_checkpoint(path: &Path, chunk: &Chunk) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
    let mut buf = Vec::with_capacity(9 + 8 * chunk.bits.len());
    buf.extend_from_slice(MAGIC);
    buf.push(chunk.hit_target as u8);
    for w in &chunk.bits {
        buf.extend_from_slice(&w.to_le_bytes());
    }
    f.write_all(&buf).map_err(|e| Error::io(&tmp, e))?;
    f.sync_all().map_err(|e| Error::io(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Sieve every `N <= n_max` and record which dimensions below `target`
/// occur, and whether `target` does.
pub fn martin_sieve(target: u64, n_max: u64, opts: &SieveOptions) -> Result<SieveResult> {
    check_capacity(n_max)?;
    let primes = base_primes(n_max)?;
    let words = target.div_ceil(64) as usize;
    let chunk = opts.chunk.max(1);
    let bounds: Vec<(u64, u64)> = (1..=n_max)
        .step_by(chunk as usize)
        .map(|lo| (lo, (lo + chunk).min(n_max + 1)))
        .collect();
    let total = bounds.len() as u64;
    if let Some(dir) = &opts.checkpoint_dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let done = AtomicU64::new(0);
    let resumed = AtomicU64::new(0);
    let chunks: Vec<Chunk> = bounds
        .into_par_iter()
        .map(|(lo, hi)| {
            let path = opts
                .checkpoint_dir
                .as_deref()
                .map(|d| checkpoint_path(d, target, lo, hi));
            let cached = path.as_deref().and_then(|p| load_checkpoint(p, words));
            let chunk = match cached {
                Some((bits, hit_target)) => {
                    resumed.fetch_add(1, Ordering::Relaxed);
                    Chunk {
                        lo,
                        hi,
                        bits,
                        hit_target,
                    }
                }
                None => {
                    let mut bits = vec![0u64; words];
                    let mut hit_target = false;
                    for d in segment(lo, hi, &primes) {
                        let d = d as u64;
                        if d < target {
                            bits[(d / 64) as usize] |= 1 << (d % 64);
                        } else if d == target {
                            hit_target = true;
                        }
                    }
                    let chunk = Chunk {
                        lo,
                        hi,
                        bits,
                        hit_target,
                    };
                    if let Some(p) = &path {
                        store_checkpoint(p, &chunk)?;
                    }
                    chunk
                }
            };
            let n = done.fetch_add(1, Ordering::Relaxed) + 1;
            if let Some(cb) = opts.progress {
                cb(n, total);
            }
            Ok(chunk)
        })
        .collect::<Result<_>>()?;

    let mut attained_below = vec![0u64; words];
    let mut attained = false;
    for c in &chunks {
        debug_assert!(c.lo < c.hi);
        for (w, b) in attained_below.iter_mut().zip(&c.bits) {
            *w |= b;
        }
        attained |= c.hit_target;
    }
    let first_missing = (0..target)
        .find(|&m| attained_below[(m / 64) as usize] >> (m % 64) & 1 == 0)
        .or((!attained).then_some(target));
    Ok(SieveResult {
        target,
        n_max,
        attained,
        attained_count_below: attained_below.iter().map(|w| w.count_ones() as u64).sum(),
        attained_below,
        first_missing,
        chunks: total,
        chunks_resumed: resumed.into_inner(),
    })
}
