//! Maximum number of ones in a k-idempotent 0-1 matrix of order `n`, and the
//! parameter families of matrices attaining it.
//!
//! In canonical layout an extremal matrix has one of two shapes:
//!
//! - variant A: `r` sources, `X` and `Z` all ones, every column of `Y` holds
//!   exactly one 1;
//! - variant B: `s` sinks, `Y` and `Z` all ones, every row of `X` holds
//!   exactly one 1;
//!
//! where `r` (resp. `s`) is `(n-1)/2` for odd `n` and `n/2` or `n/2 - 1`
//! for even `n`.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::matrix01::{Block01, Matrix01, Permutation};
use crate::structure::{self, compose, is_k_idempotent, CanonicalDecomposition};

/// `(n+1)²/4` for odd `n`, `(n²+2n)/4` for even `n`.
pub fn gamma(n: usize) -> Result<u64> {
    if n < 1 {
        return Err(Error::InvalidOrder(n));
    }
    let n = n as u64;
    Ok(if n % 2 == 1 {
        (n + 1) * (n + 1) / 4
    } else {
        (n * n + 2 * n) / 4
    })
}

/// Admissible source count (variant A) or sink count (variant B) for order `n`.
pub fn extremal_sizes(n: usize) -> Vec<usize> {
    match n {
        0 => Vec::new(),
        _ if n % 2 == 1 => vec![(n - 1) / 2],
        _ => vec![n / 2 - 1, n / 2],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    A,
    B,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::A => "A",
            Variant::B => "B",
        })
    }
}

/// Parameters of a maximum-density matrix. Field order is the listing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtremalParams {
    pub variant: Variant,
    /// `r` for variant A, `s` for variant B.
    pub size: usize,
    /// Cycle lengths, descending.
    pub cycle_lengths: Vec<usize>,
    /// Variant A: `pattern[j]` is the row of the single 1 in column `j` of `Y`.
    /// Variant B: `pattern[i]` is the column of the single 1 in row `i` of `X`.
    pub pattern: Vec<usize>,
}

impl ExtremalParams {
    /// Canonical-layout decomposition (identity `sigma`) for order `n`.
    pub fn to_decomposition(&self, n: usize, k: u64) -> Result<CanonicalDecomposition> {
        if k < 2 {
            return Err(Error::InvalidK(k));
        }
        let invalid = |msg: String| Err(Error::InvalidParams(msg));
        if !extremal_sizes(n).contains(&self.size) {
            return invalid(format!(
                "{} = {} not in {:?} for n = {n}",
                if self.variant == Variant::A { "r" } else { "s" },
                self.size,
                extremal_sizes(n)
            ));
        }
        if let Some(&len) = self
            .cycle_lengths
            .iter()
            .find(|&&len| len == 0 || !(k - 1).is_multiple_of(len as u64))
        {
            return invalid(format!(
                "cycle length {len} does not divide k-1 = {}",
                k - 1
            ));
        }
        let m: usize = self.cycle_lengths.iter().sum();
        let Some(other) = n.checked_sub(self.size + m) else {
            return invalid(format!(
                "size {} plus cycles {m} exceeds n = {n}",
                self.size
            ));
        };
        if self.pattern.len() != other || self.pattern.iter().any(|&p| p >= m) {
            return invalid(format!(
                "pattern {:?} must assign each of {other} lines one position in 0..{m}",
                self.pattern
            ));
        }
        let (r, s, x, y) = match self.variant {
            Variant::A => (
                self.size,
                other,
                Block01::ones(self.size, m),
                Block01::from_fn(m, other, |i, j| self.pattern[j] == i),
            ),
            Variant::B => (
                other,
                self.size,
                Block01::from_fn(other, m, |i, j| self.pattern[i] == j),
                Block01::ones(m, self.size),
            ),
        };
        Ok(CanonicalDecomposition {
            r,
            cycle_lengths: self.cycle_lengths.clone(),
            s,
            x,
            y,
            sigma: Permutation::identity(n),
        })
    }

    /// `variant=A|B` followed by the one-line decomposition serialization.
    pub fn to_line(&self, n: usize, k: u64) -> Result<String> {
        Ok(format!(
            "variant={} {}",
            self.variant,
            self.to_decomposition(n, k)?.to_line(k)
        ))
    }
}

/// Composes the canonical matrix described by `params` and confirms it is
/// k-idempotent with exactly `γ(n)` ones.
pub fn construct_extremal(n: usize, k: u64, params: &ExtremalParams) -> Result<Matrix01> {
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    let target = gamma(n)?;
    let d = params.to_decomposition(n, k)?;
    let a = compose(&d, k)?;
    if !is_k_idempotent(&a, k)? {
        return Err(Error::ValidationFailed(format!(
            "{params:?} is not {k}-idempotent"
        )));
    }
    if a.nnz() as u64 != target {
        return Err(Error::ValidationFailed(format!(
            "{params:?} has {} ones, gamma({n}) = {target}",
            a.nnz()
        )));
    }
    Ok(a)
}

/// k-idempotent with `γ(n)` ones. The empty matrix is never extremal.
pub fn is_extremal(a: &Matrix01, k: u64) -> Result<bool> {
    if !is_k_idempotent(a, k)? || a.n() == 0 {
        return Ok(false);
    }
    Ok(a.nnz() as u64 == gamma(a.n())?)
}

/// Which extremal shape a decomposition has, if any. Checks the block
/// conditions only, not the count of ones.
pub fn extremal_form(d: &CanonicalDecomposition) -> Option<Variant> {
    let n = d.n();
    let z = d.z().ok()?;
    if !z.is_all_ones() {
        return None;
    }
    let sizes = extremal_sizes(n);
    let a =
        sizes.contains(&d.r) && d.x.is_all_ones() && (0..d.y.cols()).all(|j| d.y.col_count(j) == 1);
    let b =
        sizes.contains(&d.s) && d.y.is_all_ones() && (0..d.x.rows()).all(|i| d.x.row_count(i) == 1);
    match (a, b) {
        (true, _) => Some(Variant::A),
        (false, true) => Some(Variant::B),
        _ => None,
    }
}

/// Partitions of `m` into parts dividing `k - 1`, each listed descending,
/// in lexicographic order.
fn cycle_partitions(m: usize, k: u64) -> Vec<Vec<usize>> {
    let parts: Vec<usize> = (1..=m)
        .rev()
        .filter(|&d| (k - 1).is_multiple_of(d as u64))
        .collect();
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(
        rest: usize,
        max: usize,
        parts: &[usize],
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if rest == 0 {
            out.push(current.clone());
            return;
        }
        for &p in parts.iter().filter(|&&p| p <= rest && p <= max) {
            current.push(p);
            go(rest - p, p, parts, current, out);
            current.pop();
        }
    }
    go(m, m, &parts, &mut current, &mut out);
    out.sort();
    out
}

/// All maps `{0..len} -> {0..range}` in lexicographic order.
fn patterns(len: usize, range: usize) -> Vec<Vec<usize>> {
    if len > 0 && range == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut current = vec![0; len];
    loop {
        out.push(current.clone());
        let Some(pos) = (0..len).rev().find(|&i| current[i] + 1 < range) else {
            break;
        };
        current[pos] += 1;
        current[pos + 1..].iter_mut().for_each(|v| *v = 0);
    }
    out
}

/// Every extremal parameter tuple for order `n` and exponent `k` that passes
/// [`construct_extremal`], sorted by `(variant, size, cycle_lengths, pattern)`.
///
/// Within one variant the composed matrices are pairwise distinct; the same
/// labelled matrix may appear once under each variant. A family with no
/// sources and no sinks satisfies both shapes identically and is listed under
/// variant A only.
pub fn extremal_families(n: usize, k: u64) -> Result<Vec<ExtremalParams>> {
    if k < 2 {
        return Err(Error::InvalidK(k));
    }
    gamma(n)?;
    let mut out = Vec::new();
    for variant in [Variant::A, Variant::B] {
        for size in extremal_sizes(n) {
            let rest = n - size;
            for m in 0..=rest {
                for cycles in cycle_partitions(m, k) {
                    if variant == Variant::B && rest == m && size == 0 {
                        continue;
                    }
                    for pattern in patterns(rest - m, m) {
                        let params = ExtremalParams {
                            variant,
                            size,
                            cycle_lengths: cycles.clone(),
                            pattern,
                        };
                        if construct_extremal(n, k, &params).is_ok() {
                            out.push(params);
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Parses a family line produced by [`ExtremalParams::to_line`], returning
/// the variant, the recorded `k` and the decomposition.
pub fn parse_family_line(line: &str) -> Result<(Variant, u64, CanonicalDecomposition)> {
    let mut tokens = line.split_ascii_whitespace();
    let variant = match tokens.next() {
        Some("variant=A") => Variant::A,
        Some("variant=B") => Variant::B,
        other => {
            return Err(parse_err(
                1,
                format!("expected variant=A|B, found {other:?}"),
            ))
        }
    };
    let rest: Vec<(usize, &str)> = tokens.map(|t| (1, t)).collect();
    let (k, d) = structure::parse_fields(&rest)?;
    Ok((variant, k, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(
        variant: Variant,
        size: usize,
        cycles: &[usize],
        pattern: &[usize],
    ) -> ExtremalParams {
        ExtremalParams {
            variant,
            size,
            cycle_lengths: cycles.to_vec(),
            pattern: pattern.to_vec(),
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(3).unwrap(), 4);
        assert_eq!(gamma(4).unwrap(), 6);
        assert_eq!(gamma(5).unwrap(), 9);
        assert_eq!(gamma(1).unwrap(), 1);
        assert_eq!(gamma(0), Err(Error::InvalidOrder(0)));
    }

    #[test]
    fn construct_examples() {
        let a = construct_extremal(3, 2, &params(Variant::A, 1, &[1], &[0])).unwrap();
        assert_eq!(
            a,
            Matrix01::from_rows(&[[0, 1, 1], [0, 1, 1], [0, 0, 0]]).unwrap()
        );
        assert_eq!(a.nnz(), 4);

        let p = params(Variant::A, 2, &[2], &[0]);
        let a = construct_extremal(5, 3, &p).unwrap();
        assert_eq!(a.nnz(), 9);
        let d = p.to_decomposition(5, 3).unwrap();
        assert_eq!(d.x, Block01::ones(2, 2));
        assert_eq!(d.z().unwrap(), Block01::ones(2, 1));

        assert!(matches!(
            construct_extremal(4, 2, &params(Variant::A, 3, &[1], &[])),
            Err(Error::InvalidParams(_))
        ));
        // 2 does not divide 3
        assert!(matches!(
            construct_extremal(2, 4, &params(Variant::A, 0, &[2], &[])),
            Err(Error::InvalidParams(_))
        ));
        // two ones in one column of Y would need a pattern entry per column
        assert!(matches!(
            construct_extremal(3, 2, &params(Variant::A, 1, &[1], &[1])),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn degenerate_corner_fails_validation() {
        // n = 2, r = 1, no cycles, one sink: Z = 0 and the matrix is empty
        assert!(matches!(
            construct_extremal(2, 2, &params(Variant::A, 1, &[], &[])),
            Err(Error::InvalidParams(_)) | Err(Error::ValidationFailed(_))
        ));
    }

    #[test]
    fn is_extremal_examples() {
        let a = Matrix01::from_rows(&[[0, 1, 1], [0, 1, 1], [0, 0, 0]]).unwrap();
        assert!(is_extremal(&a, 2).unwrap());
        assert!(!is_extremal(&Matrix01::identity(3), 2).unwrap());
        assert!(!is_extremal(&Matrix01::zeros(1), 2).unwrap());
        assert_eq!(is_extremal(&a, 1), Err(Error::InvalidK(1)));
    }

    #[test]
    fn family_examples() {
        let f = extremal_families(1, 2).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].cycle_lengths, vec![1]);
        assert_eq!(
            construct_extremal(1, 2, &f[0]).unwrap(),
            Matrix01::identity(1)
        );

        let f = extremal_families(3, 2).unwrap();
        assert!(f.contains(&params(Variant::A, 1, &[1], &[0])));
        assert!(f.contains(&params(Variant::B, 1, &[1], &[0])));

        let f = extremal_families(2, 4).unwrap();
        assert!(f.iter().any(|p| p.cycle_lengths == [1]));
        assert!(f.iter().all(|p| !p.cycle_lengths.contains(&2)));
    }

    #[test]
    fn families_are_sorted_and_distinct_within_variant() {
        for n in 1..=6 {
            for k in 2..=7 {
                let f = extremal_families(n, k).unwrap();
                assert!(f.windows(2).all(|w| w[0] < w[1]));
                for variant in [Variant::A, Variant::B] {
                    let mut mats: Vec<Matrix01> = f
                        .iter()
                        .filter(|p| p.variant == variant)
                        .map(|p| construct_extremal(n, k, p).unwrap())
                        .collect();
                    let before = mats.len();
                    mats.sort();
                    mats.dedup();
                    assert_eq!(mats.len(), before, "n={n} k={k} {variant}");
                }
            }
        }
    }

    #[test]
    fn extremal_form_of_constructed_matrices() {
        for p in extremal_families(5, 3).unwrap() {
            let d = p.to_decomposition(5, 3).unwrap();
            assert!(extremal_form(&d).is_some(), "{p:?}");
        }
        let id = structure::decompose(&Matrix01::identity(3), 2).unwrap();
        assert_eq!(extremal_form(&id), None);
    }

    #[test]
    fn partitions_and_patterns() {
        assert_eq!(
            cycle_partitions(4, 7),
            vec![vec![1, 1, 1, 1], vec![2, 1, 1], vec![2, 2], vec![3, 1]]
        );
        assert_eq!(cycle_partitions(0, 2), vec![Vec::<usize>::new()]);
        assert_eq!(
            patterns(2, 2),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(patterns(0, 0), vec![Vec::<usize>::new()]);
        assert!(patterns(1, 0).is_empty());
    }

    #[test]
    fn family_line_round_trip() {
        let p = params(Variant::B, 1, &[1], &[0]);
        let line = p.to_line(3, 2).unwrap();
        assert_eq!(
            line,
            "variant=B n=3 k=2 r=1 s=1 cycle_lengths=1 sigma=0,1,2 X=1 Y=1"
        );
        let (variant, k, d) = parse_family_line(&line).unwrap();
        assert_eq!((variant, k), (Variant::B, 2));
        assert_eq!(d, p.to_decomposition(3, 2).unwrap());
    }
}
