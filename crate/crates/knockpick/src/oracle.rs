//! Exhaustive ground truth for minimum knock counts on small instances, used
//! to certify the matching-based optimum.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::executor::{solve, SolveError};
use crate::gadgets::enumerate_faces;
use crate::grid::{BlockSet, GridCoord, GridHull};

/// Default occupancy cap for a single search.
pub const DEFAULT_CELL_LIMIT: usize = 12;

/// Largest hull the bitmask state encoding supports.
pub const MAX_HULL_CELLS: usize = 128;

/// Canonical occupancy key: one bit per hull cell, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct StateKey(pub u128);

impl StateKey {
    pub fn of(b: &BlockSet) -> StateKey {
        let hull = b.hull();
        let mut bits = 0u128;
        for c in b.iter() {
            bits |= 1 << hull.index_of(c);
        }
        StateKey(bits)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("hull has {cells} cells; the search state encoding supports at most {MAX_HULL_CELLS}")]
    HullTooLarge { cells: usize },
    #[error("instance has {cells} occupied cells, above the search limit of {limit}")]
    TooManyCells { cells: usize, limit: usize },
}

/// Memoized exhaustive search over one hull. Keeping the oracle alive across
/// instances of the same hull shares the memo table.
#[derive(Debug)]
pub struct Oracle {
    hull: GridHull,
    memo: HashMap<u128, u32>,
}

impl Oracle {
    pub fn new(hull: GridHull) -> Result<Oracle, OracleError> {
        if hull.cell_count() > MAX_HULL_CELLS {
            return Err(OracleError::HullTooLarge {
                cells: hull.cell_count(),
            });
        }
        Ok(Oracle {
            hull,
            memo: HashMap::new(),
        })
    }

    /// Exact minimum number of knocks over all complete feasible executions.
    ///
    /// Cleanup is applied eagerly before every branch: picks cost no knocks
    /// and deletions never revoke pickability, so cleaning first cannot hurt.
    /// Branching is over knockable cells only; the knock direction does not
    /// change the successor state.
    pub fn min_knocks(&mut self, b: &BlockSet, cell_limit: usize) -> Result<usize, OracleError> {
        assert_eq!(
            b.hull(),
            self.hull,
            "instance hull differs from the oracle's"
        );
        if b.len() > cell_limit {
            return Err(OracleError::TooManyCells {
                cells: b.len(),
                limit: cell_limit,
            });
        }
        let (cleaned, _) = b.clean();
        Ok(self.search(&cleaned) as usize)
    }

    fn search(&mut self, b: &BlockSet) -> u32 {
        if b.is_empty() {
            return 0;
        }
        let key = StateKey::of(b).0;
        if let Some(&known) = self.memo.get(&key) {
            return known;
        }
        // a knock kills at most two faces, so ceil(faces / 2) is a floor
        let faces = enumerate_faces(b).len() as u32;
        let lower = faces.div_ceil(2);
        let mut best = u32::MAX;
        let cells: Vec<GridCoord> = b.iter().collect();
        for v in cells {
            if b.knockable_any(v).is_none() {
                continue;
            }
            let (child, _) = b.without(v).clean();
            best = best.min(1 + self.search(&child));
            if best <= lower {
                break;
            }
        }
        // a nonempty instance always has a knockable cell (the lexicographic
        // minimum has a clear upward ray), so some branch was taken
        debug_assert!(best < u32::MAX);
        self.memo.insert(key, best);
        best
    }
}

/// One-shot search with the default cell limit semantics.
pub fn oracle_min_knocks(b: &BlockSet, cell_limit: usize) -> Result<usize, OracleError> {
    Oracle::new(b.hull())?.min_knocks(b, cell_limit)
}

/// How to enumerate instances when certifying a hull.
#[derive(Clone, Copy, Debug)]
pub enum SampleSpec {
    /// Every occupancy subset of the hull.
    Exhaustive,
    /// `count` subsets drawn with a seeded generator; each cell is occupied
    /// independently with probability 1/2.
    Random { count: usize, seed: u64 },
}

/// An instance where the solver and the exhaustive search disagreed.
#[derive(Clone, Debug)]
pub struct Mismatch {
    /// The offending instance, in the textual instance format.
    pub instance: String,
    pub solver_knocks: usize,
    pub oracle_knocks: usize,
}

#[derive(Clone, Debug, Default)]
pub struct CertifyReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CertifyReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("exhaustive certification needs at most {max} hull cells, got {cells}")]
    ExhaustiveTooLarge { cells: usize, max: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

const MAX_EXHAUSTIVE_CELLS: usize = 12;

/// Checks `solve(b).knock_count == oracle_min_knocks(b)` over the enumerated
/// or sampled occupancy subsets of `hull`, collecting any mismatches.
pub fn certify_equivalence(
    hull: GridHull,
    spec: SampleSpec,
) -> Result<CertifyReport, CertifyError> {
    let cells: Vec<GridCoord> = hull.cells().collect();
    let mut oracle = Oracle::new(hull)?;
    let mut report = CertifyReport::default();
    let mut check = |b: &BlockSet, oracle: &mut Oracle| -> Result<(), CertifyError> {
        let solver_knocks = solve(b)?.knock_count();
        let oracle_knocks = oracle.min_knocks(b, cells.len())?;
        report.checked += 1;
        if solver_knocks != oracle_knocks {
            report.mismatches.push(Mismatch {
                instance: b.render(),
                solver_knocks,
                oracle_knocks,
            });
        }
        Ok(())
    };
    match spec {
        SampleSpec::Exhaustive => {
            if cells.len() > MAX_EXHAUSTIVE_CELLS {
                return Err(CertifyError::ExhaustiveTooLarge {
                    cells: cells.len(),
                    max: MAX_EXHAUSTIVE_CELLS,
                });
            }
            for mask in 0u32..(1 << cells.len()) {
                let subset = cells
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| mask & (1 << k) != 0)
                    .map(|(_, &c)| c);
                let b = BlockSet::from_cells(hull, subset).expect("cells are in-hull and unique");
                check(&b, &mut oracle)?;
            }
        }
        SampleSpec::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let subset: Vec<GridCoord> = cells
                    .iter()
                    .copied()
                    .filter(|_| rng.gen_bool(0.5))
                    .collect();
                let b = BlockSet::from_cells(hull, subset).expect("cells are in-hull and unique");
                check(&b, &mut oracle)?;
            }
        }
    }
    Ok(report)
}
