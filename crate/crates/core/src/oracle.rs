//! Exhaustive brute-force verification at small orders.
//!
//! Enumeration index `t` encodes a matrix directly: bit `i*n + j` of `t` is
//! entry `(i, j)`. Parallel scans split the index range into fixed chunks and
//! merge results in chunk order, so every output is identical to a serial
//! scan.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extremal::{extremal_form, gamma};
use crate::matrix01::{Block01, Matrix01, Permutation};
use crate::structure::{decompose, is_k_idempotent, CanonicalDecomposition};

/// Largest order scanned exhaustively by default (65,536 matrices).
pub const DEFAULT_MAX_ORDER: usize = 4;
/// Largest order scanned when the long run is requested (33,554,432 matrices).
pub const LONG_RUN_MAX_ORDER: usize = 5;
/// Strictly upper triangular scans are much smaller: `2^(n(n-1)/2)`.
pub const TRIANGULAR_MAX_ORDER: usize = 5;
pub const TRIANGULAR_LONG_RUN_MAX_ORDER: usize = 7;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanLimits {
    /// Permit the long-running order-5 scan.
    pub allow_order_five: bool,
}

impl ScanLimits {
    pub const LONG_RUN: ScanLimits = ScanLimits {
        allow_order_five: true,
    };

    fn check_full(&self, n: usize) -> Result<()> {
        let limit = if self.allow_order_five {
            LONG_RUN_MAX_ORDER
        } else {
            DEFAULT_MAX_ORDER
        };
        if n > limit {
            return Err(Error::OrderTooLarge {
                n,
                limit,
                hint: if self.allow_order_five {
                    ""
                } else {
                    " (order 5 needs the long-run flag)"
                },
            });
        }
        Ok(())
    }

    fn check_triangular(&self, n: usize) -> Result<()> {
        let limit = if self.allow_order_five {
            TRIANGULAR_LONG_RUN_MAX_ORDER
        } else {
            TRIANGULAR_MAX_ORDER
        };
        if n > limit {
            return Err(Error::OrderTooLarge { n, limit, hint: "" });
        }
        Ok(())
    }
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        Err(Error::InvalidK(k))
    } else {
        Ok(())
    }
}

/// Maps `f` over disjoint index chunks of `0..total` in parallel and returns
/// the per-chunk results in index order.
fn scan_chunks<T, F>(total: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<u64>) -> T + Sync,
{
    let chunks = total.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| f(c * CHUNK..((c + 1) * CHUNK).min(total)))
        .collect()
}

/// Lazily yields every k-idempotent matrix of order `n` in index order.
pub fn k_idempotent_iter(
    n: usize,
    k: u64,
    limits: ScanLimits,
) -> Result<impl Iterator<Item = Matrix01>> {
    check_k(k)?;
    limits.check_full(n)?;
    let total = 1u64 << (n * n);
    Ok((0..total)
        .map(move |t| Matrix01::from_index(n, t))
        .filter(move |a| is_k_idempotent(a, k).expect("k checked")))
}

/// All k-idempotent matrices of order `n`, serial scan in index order.
pub fn enumerate_k_idempotent(n: usize, k: u64, limits: ScanLimits) -> Result<Vec<Matrix01>> {
    Ok(k_idempotent_iter(n, k, limits)?.collect())
}

/// Same output as [`enumerate_k_idempotent`], scanned in parallel.
pub fn par_enumerate_k_idempotent(n: usize, k: u64, limits: ScanLimits) -> Result<Vec<Matrix01>> {
    check_k(k)?;
    limits.check_full(n)?;
    let parts = scan_chunks(1u64 << (n * n), |range| {
        range
            .map(|t| Matrix01::from_index(n, t))
            .filter(|a| is_k_idempotent(a, k).expect("k checked"))
            .collect::<Vec<_>>()
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Outcome of cross-checking the power route against the structural route.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CharacterizationReport {
    pub checked: u64,
    pub members: u64,
    /// Matrices where the routes disagree or the decomposition fails to
    /// reproduce the matrix.
    pub mismatches: Vec<Matrix01>,
}

impl CharacterizationReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks one matrix: `decompose` must succeed exactly when `A^k = A`, and a
/// successful decomposition must be normalized and rebuild `A`.
fn routes_agree(a: &Matrix01, k: u64, member: bool) -> bool {
    match (member, decompose(a, k)) {
        (true, Ok(d)) => d.realize(k).as_ref() == Ok(a) && d.normalized() == d,
        (false, Err(Error::Structure(_))) => true,
        _ => false,
    }
}

/// Runs both routes on every matrix of order `n`.
pub fn verify_characterization(
    n: usize,
    k: u64,
    limits: ScanLimits,
) -> Result<CharacterizationReport> {
    check_k(k)?;
    limits.check_full(n)?;
    let total = 1u64 << (n * n);
    let parts = scan_chunks(total, |range| {
        let mut part = CharacterizationReport::default();
        for t in range {
            let a = Matrix01::from_index(n, t);
            let member = is_k_idempotent(&a, k).expect("k checked");
            part.checked += 1;
            part.members += member as u64;
            if !routes_agree(&a, k, member) {
                part.mismatches.push(a);
            }
        }
        part
    });
    Ok(parts
        .into_iter()
        .fold(CharacterizationReport::default(), |mut acc, p| {
            acc.checked += p.checked;
            acc.members += p.members;
            acc.mismatches.extend(p.mismatches);
            acc
        }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxDensity {
    pub max_nnz: usize,
    /// Every k-idempotent matrix with `max_nnz` ones, in index order.
    pub argmax: Vec<Matrix01>,
    /// `max_nnz = γ(n)` and every argmax decomposes into an extremal shape.
    /// Vacuously true for `n = 0`.
    pub ok: bool,
}

fn max_density_of(n: usize, k: u64, members: impl IntoIterator<Item = Matrix01>) -> MaxDensity {
    let mut max_nnz = 0;
    let mut argmax = Vec::new();
    for a in members {
        let f = a.nnz();
        if f > max_nnz || argmax.is_empty() {
            max_nnz = f;
            argmax.clear();
        }
        if f == max_nnz {
            argmax.push(a);
        }
    }
    let ok = n == 0
        || (gamma(n).ok() == Some(max_nnz as u64)
            && argmax.iter().all(|a| {
                decompose(a, k)
                    .ok()
                    .and_then(|d| extremal_form(&d))
                    .is_some()
            }));
    MaxDensity {
        max_nnz,
        argmax,
        ok,
    }
}

/// Maximum number of ones over all k-idempotent matrices of order `n`.
pub fn max_nnz_census(n: usize, k: u64, limits: ScanLimits) -> Result<MaxDensity> {
    Ok(max_density_of(
        n,
        k,
        par_enumerate_k_idempotent(n, k, limits)?,
    ))
}

/// True iff the zero matrix is the only strictly upper triangular
/// k-idempotent matrix of order `n`.
pub fn upper_triangular_check(n: usize, k: u64, limits: ScanLimits) -> Result<bool> {
    check_k(k)?;
    limits.check_triangular(n)?;
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total = 1u64 << slots.len();
    let failures = scan_chunks(total, |range| {
        range
            .filter(|&t| {
                let a = Matrix01::from_fn(n, |i, j| {
                    j > i
                        && slots
                            .iter()
                            .position(|&p| p == (i, j))
                            .is_some_and(|b| t >> b & 1 == 1)
                });
                !a.is_zero() && is_k_idempotent(&a, k).expect("k checked")
            })
            .count()
    });
    Ok(failures.into_iter().sum::<usize>() == 0)
}

/// Aggregate of every exhaustive check at one `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub k: u64,
    pub total_k_idempotent: u64,
    pub max_nnz: usize,
    /// `None` for `n = 0`.
    pub gamma: Option<u64>,
    pub argmax_count: usize,
    pub characterization_ok: bool,
    pub upper_triangular_ok: bool,
    pub extremal_ok: bool,
    pub mismatches: Vec<Matrix01>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.characterization_ok && self.upper_triangular_ok && self.extremal_ok
    }

    /// `key=value` lines, then each mismatch witness in matrix text format
    /// preceded by a blank line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let gamma = self
            .gamma
            .map_or_else(|| "none".to_string(), |g| g.to_string());
        for (key, value) in [
            ("n", self.n.to_string()),
            ("k", self.k.to_string()),
            ("total_k_idempotent", self.total_k_idempotent.to_string()),
            ("max_nnz", self.max_nnz.to_string()),
            ("gamma", gamma),
            ("argmax_count", self.argmax_count.to_string()),
            ("characterization_ok", self.characterization_ok.to_string()),
            ("upper_triangular_ok", self.upper_triangular_ok.to_string()),
            ("extremal_ok", self.extremal_ok.to_string()),
            ("mismatches", self.mismatches.len().to_string()),
        ] {
            s.push_str(key);
            s.push('=');
            s.push_str(&value);
            s.push('\n');
        }
        for w in &self.mismatches {
            s.push('\n');
            s.push_str(&w.to_text());
        }
        s
    }
}

impl fmt::Display for CensusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// One pass over all matrices of order `n`: both routes, round trips, the
/// density maximum, and the triangular scan.
pub fn census(n: usize, k: u64, limits: ScanLimits) -> Result<CensusReport> {
    check_k(k)?;
    limits.check_full(n)?;
    let total = 1u64 << (n * n);
    let parts = scan_chunks(total, |range| {
        let mut members = Vec::new();
        let mut mismatches = Vec::new();
        for t in range {
            let a = Matrix01::from_index(n, t);
            let member = is_k_idempotent(&a, k).expect("k checked");
            if !routes_agree(&a, k, member) {
                mismatches.push(a.clone());
            }
            if member {
                members.push(a);
            }
        }
        (members, mismatches)
    });
    let mut members = Vec::new();
    let mut mismatches = Vec::new();
    for (m, w) in parts {
        members.extend(m);
        mismatches.extend(w);
    }
    let total_k_idempotent = members.len() as u64;
    let density = max_density_of(n, k, members);
    let triangular_limits = ScanLimits {
        allow_order_five: true,
    };
    Ok(CensusReport {
        n,
        k,
        total_k_idempotent,
        max_nnz: density.max_nnz,
        gamma: gamma(n).ok(),
        argmax_count: density.argmax.len(),
        characterization_ok: mismatches.is_empty(),
        upper_triangular_ok: upper_triangular_check(n, k, triangular_limits)?,
        extremal_ok: density.ok,
        mismatches,
    })
}

/// Random valid decomposition of order `n` for exponent `k`: cycle lengths
/// divide `k - 1`, and `Y` is filled so that `XPᵀY` stays 0-1.
pub fn random_decomposition<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: u64,
) -> CanonicalDecomposition {
    assert!(k >= 2, "k must be at least 2");
    let m = rng.gen_range(0..=n);
    let mut cycle_lengths = Vec::new();
    let mut rest = m;
    while rest > 0 {
        let divisors: Vec<usize> = (1..=rest)
            .filter(|&d| (k - 1).is_multiple_of(d as u64))
            .collect();
        let len = *divisors.choose(rng).expect("1 divides k-1");
        cycle_lengths.push(len);
        rest -= len;
    }
    let r = rng.gen_range(0..=n - m);
    let s = n - m - r;
    let x = Block01::from_fn(r, m, |_, _| rng.gen_bool(0.5));

    // successor of each cycle position
    let mut next = Vec::with_capacity(m);
    let mut offset = 0;
    for &len in &cycle_lengths {
        next.extend((0..len).map(|t| offset + (t + 1) % len));
        offset += len;
    }
    // Z(i,j) = Σ_q X(i, next(q)) Y(q, j); admit Y(q,j) only while every Z(·,j) <= 1
    let mut y_cols = Vec::with_capacity(s);
    for _ in 0..s {
        let mut col = vec![false; m];
        let mut z_col = vec![0u32; r];
        let mut rows: Vec<usize> = (0..m).collect();
        rows.shuffle(rng);
        for q in rows {
            if !rng.gen_bool(0.5) {
                continue;
            }
            let hits: Vec<usize> = (0..r).filter(|&i| x.get(i, next[q])).collect();
            if hits.iter().all(|&i| z_col[i] == 0) {
                hits.iter().for_each(|&i| z_col[i] += 1);
                col[q] = true;
            }
        }
        y_cols.push(col);
    }
    let y = Block01::from_fn(m, s, |q, j| y_cols[j][q]);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    CanonicalDecomposition {
        r,
        cycle_lengths,
        s,
        x,
        y,
        sigma: Permutation::new(order).expect("shuffle is a permutation"),
    }
}

/// Upper-bound check on sampled k-idempotent structures, for orders too large
/// to enumerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleReport {
    pub n: usize,
    pub k: u64,
    pub seed: u64,
    pub samples: usize,
    pub max_nnz: usize,
    pub gamma: u64,
    /// Every sample was k-idempotent and had at most `γ(n)` ones.
    pub bound_ok: bool,
}

pub fn sampled_density_check(n: usize, k: u64, samples: usize, seed: u64) -> Result<SampleReport> {
    check_k(k)?;
    let g = gamma(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_nnz = 0;
    let mut bound_ok = true;
    for _ in 0..samples {
        let a = random_decomposition(&mut rng, n, k).realize(k)?;
        max_nnz = max_nnz.max(a.nnz());
        bound_ok &= is_k_idempotent(&a, k)? && a.nnz() as u64 <= g;
    }
    Ok(SampleReport {
        n,
        k,
        seed,
        samples,
        max_nnz,
        gamma: g,
        bound_ok,
    })
}
