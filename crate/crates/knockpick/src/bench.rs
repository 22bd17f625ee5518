//! Synthetic benchmark harness: full grids and seeded random subgraphs, with
//! CSV output.
//!
//! Instances are generated with ChaCha8 (`rand_chacha`), so rows reproduce
//! across platforms for a fixed seed. Timed sections cover the solver
//! pipeline only (cleanup, faces, matching, execution), not parsing or I/O.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::executor::{solve, validate_plan, SolveError};
use crate::grid::{BlockSet, GridHull};

/// One random-subgraph series: `cells` blocks sampled from a full
/// `rows x cols` grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgraphSpec {
    pub rows: i32,
    pub cols: i32,
    pub cells: usize,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub full_grids: Vec<(i32, i32)>,
    pub subgraphs: Vec<SubgraphSpec>,
    /// Instances per subgraph row (full grids are timed the same number of
    /// times; their knock counts are deterministic).
    pub reps: usize,
    pub seed: u64,
    pub out_path: Option<PathBuf>,
}

impl BenchConfig {
    /// The standard sweep: six full grids and one subgraph series per grid.
    pub fn default_sweep() -> BenchConfig {
        let full_grids = vec![(3, 3), (5, 5), (10, 5), (10, 10), (20, 10), (20, 20)];
        let sizes = [5, 16, 25, 50, 100, 200];
        let subgraphs = full_grids
            .iter()
            .zip(sizes)
            .map(|(&(rows, cols), cells)| SubgraphSpec { rows, cols, cells })
            .collect();
        BenchConfig {
            full_grids,
            subgraphs,
            reps: 20,
            seed: 1,
            out_path: None,
        }
    }
}

/// Aggregated result for one benchmark series.
#[derive(Clone, Debug)]
pub struct BenchRow {
    pub rows: i32,
    pub cols: i32,
    pub cells: usize,
    pub knocks_mean: f64,
    pub t_total_ms_mean: f64,
}

impl BenchRow {
    pub fn grid_label(&self) -> String {
        format!("{}x{}", self.rows, self.cols)
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{:.2},{:.3}",
            self.grid_label(),
            self.cells,
            self.knocks_mean,
            self.t_total_ms_mean
        )
    }
}

pub const CSV_HEADER: &str = "grid,|V|,knocks_mean,t_total_ms_mean";

pub fn csv_string(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("subgraph cell count {cells} exceeds grid capacity {capacity}")]
    CellCountOutOfRange { cells: usize, capacity: usize },
    #[error("repetitions must be at least 1")]
    ZeroReps,
    #[error("plan failed validation on {grid} |V|={cells} rep {rep}")]
    PlanInvalid {
        grid: String,
        cells: usize,
        rep: usize,
    },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("writing benchmark output: {0}")]
    Io(#[from] std::io::Error),
}

/// Uniformly samples `k` occupied cells from the hull, without replacement.
/// Deterministic for a fixed seed.
pub fn random_subgraph(hull: GridHull, k: usize, seed: u64) -> Result<BlockSet, BenchError> {
    let capacity = hull.cell_count();
    if k > capacity {
        return Err(BenchError::CellCountOutOfRange { cells: k, capacity });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen = rand::seq::index::sample(&mut rng, capacity, k);
    let all: Vec<_> = hull.cells().collect();
    let b = BlockSet::from_cells(hull, chosen.iter().map(|idx| all[idx]))
        .expect("sampled indices are unique and in-hull");
    Ok(b)
}

/// Runs every configured series: solves each instance, validates its plan,
/// and averages knock counts and solve times. Writes the CSV when an output
/// path is set.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<Vec<BenchRow>, BenchError> {
    if cfg.reps == 0 {
        return Err(BenchError::ZeroReps);
    }
    for spec in &cfg.subgraphs {
        let capacity = GridHull::new(spec.rows, spec.cols).cell_count();
        if spec.cells > capacity {
            return Err(BenchError::CellCountOutOfRange {
                cells: spec.cells,
                capacity,
            });
        }
    }

    let mut rows = Vec::new();
    // per-instance seeds are drawn from one master stream, in series order
    let mut seeds = ChaCha8Rng::seed_from_u64(cfg.seed);

    for &(m, n) in &cfg.full_grids {
        let b = BlockSet::full(GridHull::new(m, n));
        let mut acc = Accumulator::default();
        for rep in 0..cfg.reps {
            acc.measure(&b, rep)?;
        }
        rows.push(acc.into_row(m, n, b.len()));
    }
    for spec in &cfg.subgraphs {
        let hull = GridHull::new(spec.rows, spec.cols);
        let mut acc = Accumulator::default();
        for rep in 0..cfg.reps {
            let b = random_subgraph(hull, spec.cells, seeds.next_u64())?;
            acc.measure(&b, rep)?;
        }
        rows.push(acc.into_row(spec.rows, spec.cols, spec.cells));
    }

    if let Some(path) = &cfg.out_path {
        fs::write(path, csv_string(&rows))?;
    }
    Ok(rows)
}

#[derive(Default)]
struct Accumulator {
    knocks: usize,
    millis: f64,
    runs: usize,
}

impl Accumulator {
    fn measure(&mut self, b: &BlockSet, rep: usize) -> Result<(), BenchError> {
        let start = Instant::now();
        let plan = solve(b)?;
        let elapsed = start.elapsed();
        if !validate_plan(b, &plan).is_complete() {
            return Err(BenchError::PlanInvalid {
                grid: b.hull().to_string(),
                cells: b.len(),
                rep,
            });
        }
        self.knocks += plan.knock_count();
        self.millis += elapsed.as_secs_f64() * 1e3;
        self.runs += 1;
        Ok(())
    }

    fn into_row(self, rows: i32, cols: i32, cells: usize) -> BenchRow {
        BenchRow {
            rows,
            cols,
            cells,
            knocks_mean: self.knocks as f64 / self.runs as f64,
            t_total_ms_mean: self.millis / self.runs as f64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_the_whole_grid_is_the_full_grid() {
        let hull = GridHull::new(3, 3);
        for seed in [0, 1, 99] {
            let b = random_subgraph(hull, 9, seed).unwrap();
            assert_eq!(b, BlockSet::full(hull));
        }
    }

    #[test]
    fn sampling_zero_cells_is_empty() {
        let b = random_subgraph(GridHull::new(4, 4), 0, 3).unwrap();
        assert!(b.is_empty());
    }

    #[test]
    fn equal_seeds_give_equal_instances() {
        let hull = GridHull::new(5, 5);
        let a = random_subgraph(hull, 16, 42).unwrap();
        let b = random_subgraph(hull, 16, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 16);
        let c = random_subgraph(hull, 16, 43).unwrap();
        assert_ne!(a, c, "different seeds should shuffle the sample");
    }

    #[test]
    fn oversampling_is_rejected() {
        match random_subgraph(GridHull::new(2, 2), 5, 0) {
            Err(BenchError::CellCountOutOfRange {
                cells: 5,
                capacity: 4,
            }) => {}
            other => panic!("expected CellCountOutOfRange, got {other:?}"),
        }
    }

    #[test]
    fn single_rep_full_3x3_row() {
        let cfg = BenchConfig {
            full_grids: vec![(3, 3)],
            subgraphs: vec![],
            reps: 1,
            seed: 0,
            out_path: None,
        };
        let rows = run_benchmark(&cfg).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].grid_label(), "3x3");
        assert_eq!(rows[0].cells, 9);
        assert_eq!(rows[0].knocks_mean, 2.0);
        assert!(rows[0].t_total_ms_mean >= 0.0);
    }

    #[test]
    fn csv_has_header_and_one_line_per_row() {
        let cfg = BenchConfig {
            full_grids: vec![(3, 3), (2, 4)],
            subgraphs: vec![SubgraphSpec {
                rows: 3,
                cols: 3,
                cells: 5,
            }],
            reps: 2,
            seed: 9,
            out_path: None,
        };
        let rows = run_benchmark(&cfg).unwrap();
        let csv = csv_string(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("3x3,9,2.00,"));
        assert!(lines[2].starts_with("2x4,8,2.00,"));
        assert!(lines[3].starts_with("3x3,5,"));
    }

    #[test]
    fn full_grid_sweep_reproduces_the_reference_counts() {
        let cfg = BenchConfig {
            subgraphs: vec![],
            reps: 1,
            ..BenchConfig::default_sweep()
        };
        let rows = run_benchmark(&cfg).unwrap();
        let means: Vec<f64> = rows.iter().map(|r| r.knocks_mean).collect();
        assert_eq!(means, vec![2.0, 8.0, 18.0, 41.0, 86.0, 181.0]);
    }

    #[test]
    fn zero_reps_is_rejected() {
        let cfg = BenchConfig {
            reps: 0,
            ..BenchConfig::default_sweep()
        };
        assert!(matches!(run_benchmark(&cfg), Err(BenchError::ZeroReps)));
    }

    #[test]
    fn benchmark_rows_are_deterministic_per_seed() {
        let cfg = BenchConfig {
            full_grids: vec![],
            subgraphs: vec![SubgraphSpec {
                rows: 4,
                cols: 4,
                cells: 9,
            }],
            reps: 5,
            seed: 77,
            out_path: None,
        };
        let a = run_benchmark(&cfg).unwrap();
        let b = run_benchmark(&cfg).unwrap();
        assert_eq!(a[0].knocks_mean, b[0].knocks_mean);
    }
}
