//! Deciding `A^k = A`, and the canonical block decomposition
//!
//! ```text
//!     [ 0  X  XPᵀY ]
//!     [ 0  P  Y    ]      P = C_{n_1} ⊕ ... ⊕ C_{n_t},  n_i | k - 1
//!     [ 0  0  0    ]
//! ```
//!
//! of a k-idempotent 0-1 matrix, up to permutation similarity.
//!
//! Two independent routes answer the same question: [`is_k_idempotent`]
//! powers the matrix in the saturating semiring, while [`decompose`] certifies
//! the block structure from the digraph without ever forming `A^k`. The
//! oracle module checks that they agree.
//!
//! The decomposition is normalized: sources (vertices with out-arcs only) in
//! ascending original index, then cycles sorted by `(length, smallest vertex)`
//! and each walked from its smallest vertex, then sinks in ascending original
//! index. Isolated vertices count as sinks.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::digraph::{ComponentKind, Digraph};
use crate::error::{parse_err, Error, Result};
use crate::matrix01::{parse_decimal, Block01, ExactMatrix, Matrix01, Permutation, SatValue};

/// Block data of the canonical form. `Z = XPᵀY` is derived, never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalDecomposition {
    pub r: usize,
    pub cycle_lengths: Vec<usize>,
    pub s: usize,
    /// `r × m` source-to-cycle block.
    pub x: Block01,
    /// `m × s` cycle-to-sink block.
    pub y: Block01,
    /// Canonical position `p` holds original vertex `sigma[p]`.
    pub sigma: Permutation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureErrorKind {
    /// `A^k` has an entry of at least 2.
    NotZeroOne,
    /// `A^k` is a 0-1 matrix different from `A`.
    PowerMismatch,
}

impl fmt::Display for StructureErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureErrorKind::NotZeroOne => "NotZeroOne",
            StructureErrorKind::PowerMismatch => "PowerMismatch",
        })
    }
}

/// The structural check that rejected a matrix. Vertices are original indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    NonCycleComponent { vertex: usize },
    CycleLengthNotDividing { vertex: usize, length: usize },
    MixedVertex { vertex: usize },
    PathBetweenCycles { from: usize, to: usize },
    SourceSinkBlock { row: usize, col: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NonCycleComponent { vertex } => {
                write!(f, "strong component of vertex {vertex} is not a cycle")
            }
            Violation::CycleLengthNotDividing { vertex, length } => {
                write!(
                    f,
                    "cycle through vertex {vertex} has length {length} not dividing k-1"
                )
            }
            Violation::MixedVertex { vertex } => {
                write!(f, "acyclic vertex {vertex} has both in-arcs and out-arcs")
            }
            Violation::PathBetweenCycles { from, to } => {
                write!(
                    f,
                    "path from cycle of vertex {from} to cycle of vertex {to}"
                )
            }
            Violation::SourceSinkBlock { row, col } => {
                write!(f, "entry ({row},{col}) differs from XP^TY")
            }
        }
    }
}

/// Rejection of a matrix that is not k-idempotent, with a witness entry of `A^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Error)]
#[error("{kind} at ({row},{col}): {violation}")]
pub struct StructureError {
    pub kind: StructureErrorKind,
    pub row: usize,
    pub col: usize,
    pub violation: Violation,
}

/// An entry where `A^k` and `A` disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerWitness {
    pub kind: StructureErrorKind,
    pub row: usize,
    pub col: usize,
    pub power: SatValue,
    pub entry: bool,
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        Err(Error::InvalidK(k))
    } else {
        Ok(())
    }
}

/// Locates a disagreement between `A^k` and `A`: the first `2+` entry if any,
/// otherwise the first differing entry (row-major).
pub fn power_witness(a: &Matrix01, k: u64) -> Result<Option<PowerWitness>> {
    check_k(k)?;
    let power = a.sat_power(k);
    let hit = match power.first_two_plus() {
        Some((i, j)) => Some((StructureErrorKind::NotZeroOne, i, j)),
        None => power
            .first_difference(a)
            .map(|(i, j)| (StructureErrorKind::PowerMismatch, i, j)),
    };
    Ok(hit.map(|(kind, row, col)| PowerWitness {
        kind,
        row,
        col,
        power: power.get(row, col),
        entry: a.get(row, col),
    }))
}

/// `A^k = A`, decided in the saturating semiring.
pub fn is_k_idempotent(a: &Matrix01, k: u64) -> Result<bool> {
    check_k(k)?;
    Ok(a.sat_power(k).equals_matrix(a))
}

/// Recovers the normalized canonical decomposition of a k-idempotent matrix.
///
/// Acceptance is decided structurally. On rejection the error's witness
/// entry is read off `A^k`.
pub fn decompose(a: &Matrix01, k: u64) -> Result<CanonicalDecomposition> {
    check_k(k)?;
    let outcome = analyze(a).and_then(|d| {
        let mut offset = d.r;
        for &len in &d.cycle_lengths {
            if !(k - 1).is_multiple_of(len as u64) {
                return Err(Violation::CycleLengthNotDividing {
                    vertex: d.sigma.apply(offset),
                    length: len,
                });
            }
            offset += len;
        }
        Ok(d)
    });
    outcome.map_err(|violation| {
        let (kind, row, col) = match power_witness(a, k).expect("k already checked") {
            Some(w) => (w.kind, w.row, w.col),
            // The two routes disagree; report the structural location.
            None => {
                let (row, col) = violation.entry();
                (StructureErrorKind::PowerMismatch, row, col)
            }
        };
        Error::Structure(StructureError {
            kind,
            row,
            col,
            violation,
        })
    })
}

/// `decompose(a, 2)`: every cycle of an idempotent matrix is a loop, so `P = I`.
pub fn idempotent_decompose(a: &Matrix01) -> Result<CanonicalDecomposition> {
    decompose(a, 2)
}

/// The smallest `k >= 2` with `A^k = A`, or `None` if there is none.
///
/// Valid `k` are exactly those with `lcm(n_i) | k - 1`, so the minimum is
/// `lcm + 1`.
pub fn idempotency_index(a: &Matrix01) -> Option<u64> {
    let d = analyze(a).ok()?;
    let lcm = d
        .cycle_lengths
        .iter()
        .fold(1u64, |acc, &len| acc.lcm(&(len as u64)));
    Some(lcm.checked_add(1).expect("idempotency index exceeds u64"))
}

impl Violation {
    fn entry(&self) -> (usize, usize) {
        match *self {
            Violation::NonCycleComponent { vertex }
            | Violation::CycleLengthNotDividing { vertex, .. }
            | Violation::MixedVertex { vertex } => (vertex, vertex),
            Violation::PathBetweenCycles { from, to } => (from, to),
            Violation::SourceSinkBlock { row, col } => (row, col),
        }
    }
}

/// Structural certification with the divisibility condition left out.
fn analyze(a: &Matrix01) -> std::result::Result<CanonicalDecomposition, Violation> {
    let n = a.n();
    let g = Digraph::from_matrix(a);
    let report = g.sccs();

    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for comp in &report.components {
        let v0 = comp.vertices[0];
        match comp.kind {
            ComponentKind::NonCycle => return Err(Violation::NonCycleComponent { vertex: v0 }),
            ComponentKind::TrivialAcyclic => {
                match (
                    g.in_neighbors(v0).is_empty(),
                    g.out_neighbors(v0).is_empty(),
                ) {
                    (false, false) => return Err(Violation::MixedVertex { vertex: v0 }),
                    (true, false) => sources.push(v0),
                    _ => sinks.push(v0),
                }
            }
            ComponentKind::Cycle(len) => {
                // walk the cycle from its smallest vertex
                let mut walk = Vec::with_capacity(len);
                let mut v = v0;
                for _ in 0..len {
                    walk.push(v);
                    v = *g
                        .out_neighbors(v)
                        .iter()
                        .find(|&&w| report.component_of[w] == report.component_of[v0])
                        .expect("cycle vertex has a successor on its cycle");
                }
                cycles.push(walk);
            }
        }
    }
    sources.sort_unstable();
    sinks.sort_unstable();
    cycles.sort_by_key(|c| (c.len(), c[0]));

    // No cycle may reach another one.
    let cycle_vertices: Vec<usize> = cycles.iter().flatten().copied().collect();
    for (ci, cycle) in cycles.iter().enumerate() {
        let others: Vec<usize> = cycles
            .iter()
            .enumerate()
            .filter(|&(cj, _)| cj != ci)
            .flat_map(|(_, c)| c.iter().copied())
            .collect();
        if g.has_path(cycle, &others) {
            let to = others
                .iter()
                .copied()
                .find(|&w| g.has_path(cycle, &[w]))
                .expect("some target is reachable");
            return Err(Violation::PathBetweenCycles { from: cycle[0], to });
        }
    }

    let r = sources.len();
    let s = sinks.len();
    let cycle_lengths: Vec<usize> = cycles.iter().map(Vec::len).collect();
    let x = a.block(&sources, &cycle_vertices);
    let y = a.block(&cycle_vertices, &sinks);
    let order: Vec<usize> = sources
        .iter()
        .chain(&cycle_vertices)
        .chain(&sinks)
        .copied()
        .collect();
    debug_assert_eq!(order.len(), n);
    let d = CanonicalDecomposition {
        r,
        cycle_lengths,
        s,
        x,
        y,
        sigma: Permutation::new(order).expect("components partition the vertices"),
    };

    let z = d.z_exact().expect("block dimensions are consistent");
    for (i, &u) in sources.iter().enumerate() {
        for (j, &v) in sinks.iter().enumerate() {
            if z.get(i, j) != a.get(u, v) as u64 {
                return Err(Violation::SourceSinkBlock { row: u, col: v });
            }
        }
    }
    Ok(d)
}

/// Builds the canonical-layout matrix `[[0, X, XPᵀY], [0, P, Y], [0, 0, 0]]`.
/// The result is k-idempotent.
pub fn compose(d: &CanonicalDecomposition, k: u64) -> Result<Matrix01> {
    check_k(k)?;
    d.check_dimensions()?;
    if let Some(&length) = d
        .cycle_lengths
        .iter()
        .find(|&&len| !(k - 1).is_multiple_of(len as u64))
    {
        return Err(Error::CycleLengthInvalid {
            length,
            k_minus_one: k - 1,
        });
    }
    let z = d.z()?;
    let (r, m) = (d.r, d.m());
    let next = d.cycle_successors();
    Ok(Matrix01::from_fn(d.n(), |i, j| {
        match (i < r, i < r + m, j < r, j < r + m) {
            (_, _, true, _) => false,
            (true, _, false, true) => d.x.get(i, j - r),
            (true, _, false, false) => z.get(i, j - r - m),
            (false, true, false, true) => next[i - r] == j - r,
            (false, true, false, false) => d.y.get(i - r, j - r - m),
            (false, false, _, _) => false,
        }
    }))
}

impl CanonicalDecomposition {
    pub fn m(&self) -> usize {
        self.cycle_lengths.iter().sum()
    }

    pub fn n(&self) -> usize {
        self.r + self.m() + self.s
    }

    pub fn check_dimensions(&self) -> Result<()> {
        let (r, m, s) = (self.r, self.m(), self.s);
        let dim = |what: String| Err(Error::DimensionMismatch(what));
        if self.cycle_lengths.contains(&0) {
            return dim("cycle length 0".into());
        }
        if (self.x.rows(), self.x.cols()) != (r, m) {
            return dim(format!(
                "X is {}x{}, expected {r}x{m}",
                self.x.rows(),
                self.x.cols()
            ));
        }
        if (self.y.rows(), self.y.cols()) != (m, s) {
            return dim(format!(
                "Y is {}x{}, expected {m}x{s}",
                self.y.rows(),
                self.y.cols()
            ));
        }
        if self.sigma.len() != r + m + s {
            return dim(format!(
                "sigma has length {}, expected {}",
                self.sigma.len(),
                r + m + s
            ));
        }
        Ok(())
    }

    /// Within the cycle block, `next[p]` is the successor of position `p`.
    fn cycle_successors(&self) -> Vec<usize> {
        let mut next = Vec::with_capacity(self.m());
        let mut offset = 0;
        for &len in &self.cycle_lengths {
            next.extend((0..len).map(|t| offset + (t + 1) % len));
            offset += len;
        }
        next
    }

    /// `P = C_{n_1} ⊕ ... ⊕ C_{n_t}` of order `m`.
    pub fn cycle_matrix(&self) -> Matrix01 {
        let next = self.cycle_successors();
        Matrix01::from_fn(self.m(), |p, q| next[p] == q)
    }

    /// Exact integer product `XPᵀY`.
    pub fn z_exact(&self) -> Result<ExactMatrix> {
        let pt = {
            let p = self.cycle_matrix();
            ExactMatrix::from_fn(self.m(), self.m(), |i, j| p.get(j, i) as u64)
        };
        self.x
            .to_exact()
            .checked_mul(&pt)?
            .checked_mul(&self.y.to_exact())
    }

    /// `XPᵀY` as a 0-1 block, or `ProductNotZeroOne` at the first entry above 1.
    pub fn z(&self) -> Result<Block01> {
        let z = self.z_exact()?;
        for i in 0..z.rows() {
            for j in 0..z.cols() {
                if z.get(i, j) > 1 {
                    return Err(Error::ProductNotZeroOne {
                        row: i,
                        col: j,
                        value: z.get(i, j),
                    });
                }
            }
        }
        Ok(Block01::from_fn(z.rows(), z.cols(), |i, j| {
            z.get(i, j) == 1
        }))
    }

    /// The matrix in original labelling: `A(σ(p), σ(q)) = H(p, q)`.
    pub fn realize(&self, k: u64) -> Result<Matrix01> {
        compose(self, k)?.permute(&self.sigma.inverse())
    }

    /// The decomposition [`decompose`] would return for [`Self::realize`],
    /// computed by re-indexing the blocks directly.
    pub fn normalized(&self) -> CanonicalDecomposition {
        let (r, m) = (self.r, self.m());
        let sigma = &self.sigma;

        // a source without out-arcs is isolated, hence a sink
        let (mut sources, demoted): (Vec<usize>, Vec<usize>) =
            (0..r).partition(|&i| self.x.row_count(i) > 0);
        sources.sort_by_key(|&p| sigma.apply(p));

        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut offset = r;
        for &len in &self.cycle_lengths {
            let start = (0..len)
                .min_by_key(|&t| sigma.apply(offset + t))
                .expect("cycle length is positive");
            cycles.push((0..len).map(|t| offset + (start + t) % len).collect());
            offset += len;
        }
        cycles.sort_by_key(|c| (c.len(), sigma.apply(c[0])));

        let mut sinks: Vec<usize> = demoted.into_iter().chain(r + m..self.n()).collect();
        sinks.sort_by_key(|&p| sigma.apply(p));

        let cycle_positions: Vec<usize> = cycles.iter().flatten().copied().collect();
        let x = Block01::from_fn(sources.len(), m, |i, j| {
            self.x.get(sources[i], cycle_positions[j] - r)
        });
        let y = Block01::from_fn(m, sinks.len(), |i, j| {
            let q = sinks[j];
            q >= r + m && self.y.get(cycle_positions[i] - r, q - r - m)
        });
        let order = sources
            .iter()
            .chain(&cycle_positions)
            .chain(&sinks)
            .map(|&p| sigma.apply(p))
            .collect();
        CanonicalDecomposition {
            r: sources.len(),
            cycle_lengths: cycles.iter().map(Vec::len).collect(),
            s: sinks.len(),
            x,
            y,
            sigma: Permutation::new(order).expect("re-indexing preserves bijectivity"),
        }
    }

    fn fields(&self, k: u64) -> [String; 8] {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let block = |b: &Block01| {
            if b.rows() == 0 || b.cols() == 0 {
                String::new()
            } else {
                b.row_strings().join(",")
            }
        };
        [
            format!("n={}", self.n()),
            format!("k={k}"),
            format!("r={}", self.r),
            format!("s={}", self.s),
            format!("cycle_lengths={}", join(&self.cycle_lengths)),
            format!("sigma={}", join(self.sigma.as_slice())),
            format!("X={}", block(&self.x)),
            format!("Y={}", block(&self.y)),
        ]
    }

    /// One `key=value` field per line, newline-terminated.
    pub fn to_text(&self, k: u64) -> String {
        let mut s = self.fields(k).join("\n");
        s.push('\n');
        s
    }

    /// All fields on one line separated by spaces, without a newline.
    pub fn to_line(&self, k: u64) -> String {
        self.fields(k).join(" ")
    }

    /// Parses either serialization form. Returns the recorded `k` and the
    /// decomposition; dimensions and `sigma` are validated.
    pub fn parse(text: &str) -> Result<(u64, CanonicalDecomposition)> {
        let tokens: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .flat_map(|(i, line)| line.split_ascii_whitespace().map(move |t| (i + 1, t)))
            .collect();
        parse_fields(&tokens)
    }
}

pub(crate) fn parse_fields(tokens: &[(usize, &str)]) -> Result<(u64, CanonicalDecomposition)> {
    const KEYS: [&str; 8] = ["n", "k", "r", "s", "cycle_lengths", "sigma", "X", "Y"];
    if tokens.len() != KEYS.len() {
        let line = tokens.last().map_or(1, |t| t.0);
        return Err(parse_err(
            line,
            format!("expected {} fields, found {}", KEYS.len(), tokens.len()),
        ));
    }
    let mut values = Vec::with_capacity(KEYS.len());
    for (&(line, token), key) in tokens.iter().zip(KEYS) {
        let value = token
            .strip_prefix(key)
            .and_then(|t| t.strip_prefix('='))
            .ok_or_else(|| parse_err(line, format!("expected field {key:?}, found {token:?}")))?;
        values.push((line, value));
    }
    let number = |idx: usize| {
        let (line, v) = values[idx];
        parse_decimal(v)
            .ok_or_else(|| parse_err(line, format!("{} is not a number: {v:?}", KEYS[idx])))
    };
    let list = |idx: usize| -> Result<Vec<usize>> {
        let (line, v) = values[idx];
        if v.is_empty() {
            return Ok(Vec::new());
        }
        v.split(',')
            .map(|x| {
                parse_decimal(x)
                    .ok_or_else(|| parse_err(line, format!("bad {} entry {x:?}", KEYS[idx])))
            })
            .collect()
    };
    let n = number(0)?;
    let k = number(1)? as u64;
    let r = number(2)?;
    let s = number(3)?;
    let cycle_lengths = list(4)?;
    let sigma = list(5)?;
    if cycle_lengths.contains(&0) {
        return Err(parse_err(values[4].0, "cycle length 0"));
    }
    let m: usize = cycle_lengths.iter().sum();
    if r + m + s != n {
        return Err(parse_err(
            values[0].0,
            format!("n={n} but r+m+s={}", r + m + s),
        ));
    }
    let sigma = Permutation::new(sigma).map_err(|e| parse_err(values[5].0, e.to_string()))?;
    if sigma.len() != n {
        return Err(parse_err(
            values[5].0,
            format!("sigma has length {}, expected {n}", sigma.len()),
        ));
    }
    let block = |idx: usize, rows: usize, cols: usize| -> Result<Block01> {
        let (line, v) = values[idx];
        if rows == 0 || cols == 0 {
            return if v.is_empty() {
                Ok(Block01::zeros(rows, cols))
            } else {
                Err(parse_err(
                    line,
                    format!("{} must be empty for a {rows}x{cols} block", KEYS[idx]),
                ))
            };
        }
        let parts: Vec<&str> = v.split(',').collect();
        Block01::from_row_strings(rows, cols, &parts).map_err(|e| parse_err(line, e.to_string()))
    };
    let x = block(6, r, m)?;
    let y = block(7, m, s)?;
    Ok((
        k,
        CanonicalDecomposition {
            r,
            cycle_lengths,
            s,
            x,
            y,
            sigma,
        },
    ))
}
