//! Brute-force and randomized search for constant-rank subspaces over small
//! prime fields: the low-scale oracle for lower bounds and example values.
//!
//! Subspaces are enumerated in a canonical form (reduced row echelon basis
//! of the flattened matrices, pivot columns in lexicographic order) so each
//! subspace is visited exactly once and runs are reproducible. Results are
//! statements about F_p points only and are reported as such; nothing here
//! is promoted to a characteristic-zero claim.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::PrimeField;
use crate::pencil::certificate::projective_points;
use crate::pencil::linalg::rank_mod_u64;
use crate::pencil::splitting::combinations;
use crate::pencil::MatrixSpace;
use crate::rng::SplitMix64;

pub const DEFAULT_CEILING: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ansatz {
    /// All a x b matrices.
    General,
    /// Skew-symmetric matrices (requires a = b).
    SkewSymmetric,
    /// Matrices supported on the leading `dim` diagonals, the support
    /// pattern of the surjective band.
    BandedPattern,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    Random { trials: u32, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchSpec {
    pub a: usize,
    pub b: usize,
    pub r: usize,
    /// Target subspace dimension (the space lives on P^(dim-1)).
    pub dim: usize,
    pub p: u64,
    pub mode: Mode,
    pub ansatz: Ansatz,
    pub ceiling: u64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("exhaustive enumeration of {count} canonical bases exceeds the ceiling {ceiling}")]
    CeilingExceeded { count: u128, ceiling: u64 },
    #[error("{0} is not a valid prime modulus")]
    BadPrime(u64),
    #[error("subspace dimension must satisfy 1 <= dim <= ambient dimension {ambient}")]
    DimRange { ambient: usize },
    #[error("skew ansatz requires square matrices")]
    SkewNeedsSquare,
    #[error("rank must satisfy 0 < r <= min(a, b)")]
    RankRange,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub spec: SearchSpec,
    pub complete: bool,
    pub candidates_considered: u64,
    pub witnesses: Vec<MatrixSpace>,
    /// Reminder that the result is specific to the finite field.
    pub field_note: String,
}

/// One ambient coordinate of the ansatz: a matrix pattern with +1/-1 cells.
struct Pattern {
    cells: Vec<(usize, usize, i64)>,
}

fn ansatz_patterns(spec: &SearchSpec) -> Result<Vec<Pattern>, SearchError> {
    let (a, b) = (spec.a, spec.b);
    match spec.ansatz {
        Ansatz::General => Ok((0..a * b)
            .map(|idx| Pattern {
                cells: vec![(idx / b, idx % b, 1)],
            })
            .collect()),
        Ansatz::SkewSymmetric => {
            if a != b {
                return Err(SearchError::SkewNeedsSquare);
            }
            let mut out = Vec::new();
            for i in 0..a {
                for j in (i + 1)..a {
                    out.push(Pattern {
                        cells: vec![(i, j, 1), (j, i, -1)],
                    });
                }
            }
            Ok(out)
        }
        Ansatz::BandedPattern => {
            let mut out = Vec::new();
            for i in 0..a {
                for j in 0..b {
                    if j >= i && j - i < spec.dim {
                        out.push(Pattern {
                            cells: vec![(i, j, 1)],
                        });
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Echelon shapes: pivot columns plus the enumeration of free entries.
struct Shape {
    pivots: Vec<usize>,
    /// (row, column) of each free entry, in row-major order.
    free: Vec<(usize, usize)>,
    start: u128,
    count: u128,
}

fn echelon_shapes(ambient: usize, dim: usize, p: u64) -> Vec<Shape> {
    let mut shapes = Vec::new();
    let mut start = 0u128;
    for pivots in combinations(ambient, dim) {
        let mut free = Vec::new();
        for (row, &pc) in pivots.iter().enumerate() {
            for col in (pc + 1)..ambient {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        let count = (p as u128).pow(free.len() as u32);
        shapes.push(Shape {
            pivots,
            free,
            start,
            count,
        });
        start += count;
    }
    shapes
}

fn decode(shapes: &[Shape], ambient: usize, dim: usize, p: u64, index: u128) -> Vec<Vec<u64>> {
    let shape = shapes
        .iter()
        .find(|s| index >= s.start && index < s.start + s.count)
        .expect("index within total count");
    let mut rows = vec![vec![0u64; ambient]; dim];
    for (row, &pc) in shape.pivots.iter().enumerate() {
        rows[row][pc] = 1;
    }
    let mut rest = index - shape.start;
    for &(row, col) in &shape.free {
        rows[row][col] = (rest % p as u128) as u64;
        rest /= p as u128;
    }
    rows
}

/// Reduce a basis to the canonical echelon form; None if dependent mod p.
fn canonical_rref(rows: &[Vec<u64>], field: &PrimeField) -> Option<Vec<Vec<u64>>> {
    let dim = rows.len();
    let ambient = rows[0].len();
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v % field.modulus()).collect())
        .collect();
    let mut pivot_row = 0;
    for col in 0..ambient {
        let Some(src) = (pivot_row..dim).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(pivot_row, src);
        let inv = field.inv(m[pivot_row][col]);
        for v in m[pivot_row].iter_mut() {
            *v = field.mul(*v, inv);
        }
        for i in 0..dim {
            if i != pivot_row && m[i][col] != 0 {
                let factor = m[i][col];
                let pivot = m[pivot_row].clone();
                for (cell, &p) in m[i].iter_mut().zip(&pivot) {
                    *cell = field.sub(*cell, field.mul(factor, p));
                }
            }
        }
        pivot_row += 1;
        if pivot_row == dim {
            return Some(m);
        }
    }
    None
}

struct Checker {
    a: usize,
    b: usize,
    r: usize,
    field: PrimeField,
    /// Flattened coordinates of each ambient pattern.
    pattern_mats: Vec<Vec<u64>>,
    points: Vec<Vec<u64>>,
}

impl Checker {
    fn new(spec: &SearchSpec, patterns: &[Pattern], field: PrimeField) -> Self {
        let pattern_mats = patterns
            .iter()
            .map(|pat| {
                let mut m = vec![0u64; spec.a * spec.b];
                for &(i, j, s) in &pat.cells {
                    m[i * spec.b + j] = field.reduce_i64(s);
                }
                m
            })
            .collect();
        Checker {
            a: spec.a,
            b: spec.b,
            r: spec.r,
            field,
            pattern_mats,
            points: projective_points(field.modulus(), spec.dim - 1),
        }
    }

    fn basis_matrices(&self, rows: &[Vec<u64>]) -> Vec<Vec<u64>> {
        rows.iter()
            .map(|coords| {
                let mut m = vec![0u64; self.a * self.b];
                for (k, &c) in coords.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (cell, &pat) in m.iter_mut().zip(&self.pattern_mats[k]) {
                        *cell = self.field.add(*cell, self.field.mul(c, pat));
                    }
                }
                m
            })
            .collect()
    }

    fn constant_rank(&self, rows: &[Vec<u64>]) -> bool {
        let basis = self.basis_matrices(rows);
        // cheap prefilter: basis elements themselves are points of the space
        for m in &basis {
            let mut buf = m.clone();
            if rank_mod_u64(&mut buf, self.a, self.b, &self.field) != self.r {
                return false;
            }
        }
        for point in &self.points {
            let mut m = vec![0u64; self.a * self.b];
            for (k, &lambda) in point.iter().enumerate() {
                if lambda == 0 {
                    continue;
                }
                for (cell, &bm) in m.iter_mut().zip(&basis[k]) {
                    *cell = self.field.add(*cell, self.field.mul(lambda, bm));
                }
            }
            if rank_mod_u64(&mut m, self.a, self.b, &self.field) != self.r {
                return false;
            }
        }
        true
    }

    fn to_space(&self, rows: &[Vec<u64>], dim: usize) -> MatrixSpace {
        let basis: Vec<Vec<i64>> = self
            .basis_matrices(rows)
            .into_iter()
            .map(|m| m.into_iter().map(|v| v as i64).collect())
            .collect();
        MatrixSpace::new(self.a, self.b, dim - 1, basis)
            .expect("echelon basis lifts to an independent integer basis")
    }
}

fn validate(spec: &SearchSpec) -> Result<(Vec<Pattern>, PrimeField), SearchError> {
    let field = PrimeField::new(spec.p).map_err(|_| SearchError::BadPrime(spec.p))?;
    if spec.r == 0 || spec.r > spec.a.min(spec.b) {
        return Err(SearchError::RankRange);
    }
    let patterns = ansatz_patterns(spec)?;
    if spec.dim == 0 || spec.dim > patterns.len() {
        return Err(SearchError::DimRange {
            ambient: patterns.len(),
        });
    }
    Ok((patterns, field))
}

/// Search for constant-rank subspaces per the spec. Exhaustive mode visits
/// every canonical echelon basis (refusing when the count exceeds the
/// ceiling) and returns the complete list of witnesses; random mode returns
/// the witnesses found in the trial budget.
pub fn search(spec: &SearchSpec) -> Result<SearchReport, SearchError> {
    let (patterns, field) = validate(spec)?;
    let ambient = patterns.len();
    let checker = Checker::new(spec, &patterns, field);
    let field_note = format!(
        "existence over F_{} only; no characteristic-zero claim",
        spec.p
    );
    match spec.mode {
        Mode::Exhaustive => {
            let shapes = echelon_shapes(ambient, spec.dim, spec.p);
            let total: u128 = shapes.iter().map(|s| s.count).sum();
            if total > spec.ceiling as u128 {
                return Err(SearchError::CeilingExceeded {
                    count: total,
                    ceiling: spec.ceiling,
                });
            }
            let mut witnesses: Vec<MatrixSpace> = (0..total as u64)
                .into_par_iter()
                .filter_map(|idx| {
                    let rows = decode(&shapes, ambient, spec.dim, spec.p, idx as u128);
                    checker
                        .constant_rank(&rows)
                        .then(|| checker.to_space(&rows, spec.dim))
                })
                .collect();
            witnesses.sort_by_key(space_key);
            Ok(SearchReport {
                spec: spec.clone(),
                complete: true,
                candidates_considered: total as u64,
                witnesses,
                field_note,
            })
        }
        Mode::Random { trials, seed } => {
            let mut rng = SplitMix64::new(seed);
            let mut seen = std::collections::BTreeSet::new();
            let mut witnesses = Vec::new();
            for _ in 0..trials {
                let rows: Vec<Vec<u64>> = (0..spec.dim)
                    .map(|_| {
                        (0..ambient)
                            .map(|_| rng.next_u64() % spec.p)
                            .collect()
                    })
                    .collect();
                let Some(canon) = canonical_rref(&rows, &checker.field) else {
                    continue;
                };
                if !seen.insert(canon.clone()) {
                    continue;
                }
                if checker.constant_rank(&canon) {
                    witnesses.push(checker.to_space(&canon, spec.dim));
                }
            }
            witnesses.sort_by_key(space_key);
            Ok(SearchReport {
                spec: spec.clone(),
                complete: false,
                candidates_considered: trials as u64,
                witnesses,
                field_note,
            })
        }
    }
}

fn space_key(s: &MatrixSpace) -> Vec<i64> {
    let mut key = Vec::new();
    for k in 0..=s.ambient_dim() {
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                key.push(s.basis_entry(k, i, j));
            }
        }
    }
    key
}

/// Does any witness exist? Early-exit variant of exhaustive search.
fn exists(spec: &SearchSpec) -> Result<bool, SearchError> {
    let (patterns, field) = validate(spec)?;
    let ambient = patterns.len();
    let checker = Checker::new(spec, &patterns, field);
    let shapes = echelon_shapes(ambient, spec.dim, spec.p);
    let total: u128 = shapes.iter().map(|s| s.count).sum();
    if total > spec.ceiling as u128 {
        return Err(SearchError::CeilingExceeded {
            count: total,
            ceiling: spec.ceiling,
        });
    }
    Ok((0..total as u64)
        .into_par_iter()
        .find_first(|&idx| {
            let rows = decode(&shapes, ambient, spec.dim, spec.p, idx as u128);
            checker.constant_rank(&rows)
        })
        .is_some())
}

#[derive(Clone, Debug, Serialize)]
pub struct MaxDimReport {
    pub a: usize,
    pub r: usize,
    pub p: u64,
    /// Largest dimension for which a witness was found.
    pub max_dim: usize,
    /// True when the first empty level was reached exhaustively; false when
    /// the ceiling stopped the general enumeration and larger spaces may
    /// exist.
    pub complete: bool,
}

/// Largest dim for which a constant-rank-r subspace of a x a matrices over
/// F_p exists, climbing level by level. Any subspace of a constant-rank
/// space again has constant rank, so the first exhaustively empty level is
/// conclusive. When the general enumeration at a level exceeds the ceiling,
/// the result is flagged partial and the climb continues on the much
/// smaller skew and banded ansatzes, whose witnesses are still valid lower
/// bounds for the general problem (the skew 3x3 space mod p is found this
/// way).
pub fn max_dim_over_fp(
    a: usize,
    r: usize,
    p: u64,
    ceiling: u64,
) -> Result<MaxDimReport, SearchError> {
    let mut best = 0;
    let mut complete = true;
    for dim in 1..=(a * a) {
        let spec = |ansatz| SearchSpec {
            a,
            b: a,
            r,
            dim,
            p,
            mode: Mode::Exhaustive,
            ansatz,
            ceiling,
        };
        match exists(&spec(Ansatz::General)) {
            Ok(true) => {
                best = dim;
                continue;
            }
            Ok(false) => {
                return Ok(MaxDimReport {
                    a,
                    r,
                    p,
                    max_dim: best,
                    complete,
                })
            }
            Err(SearchError::CeilingExceeded { .. }) => complete = false,
            Err(e) => return Err(e),
        }
        // general level refused: probe the structured ansatzes
        let probe_found = [Ansatz::SkewSymmetric, Ansatz::BandedPattern]
            .into_iter()
            .any(|ansatz| matches!(exists(&spec(ansatz)), Ok(true)));
        if probe_found {
            best = dim;
        } else {
            break;
        }
    }
    Ok(MaxDimReport {
        a,
        r,
        p,
        max_dim: best,
        complete,
    })
}

pub fn report_json(report: &SearchReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("serialization cannot fail");
    s.push('\n');
    s
}
