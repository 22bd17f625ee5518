//! Grid instances: hull bounds, occupancy, adjacency, and the pick/knock
//! feasibility rules, plus exhaustive-pick cleanup.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Bounded `rows x cols` workspace grid. Coordinates inside the hull satisfy
/// `0 <= i < rows` and `0 <= j < cols`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GridHull {
    rows: i32,
    cols: i32,
}

impl GridHull {
    /// Panics if either dimension is smaller than 1.
    pub fn new(rows: i32, cols: i32) -> Self {
        assert!(
            rows >= 1 && cols >= 1,
            "hull dimensions must be at least 1x1"
        );
        GridHull { rows, cols }
    }

    pub fn rows(&self) -> i32 {
        self.rows
    }

    pub fn cols(&self) -> i32 {
        self.cols
    }

    pub fn contains(&self, c: GridCoord) -> bool {
        c.i >= 0 && c.i < self.rows && c.j >= 0 && c.j < self.cols
    }

    pub fn cell_count(&self) -> usize {
        (self.rows as usize) * (self.cols as usize)
    }

    /// All hull cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = GridCoord> + '_ {
        let cols = self.cols;
        (0..self.rows).flat_map(move |i| (0..cols).map(move |j| GridCoord::new(i, j)))
    }

    /// Row-major index of a hull cell.
    pub(crate) fn index_of(&self, c: GridCoord) -> usize {
        debug_assert!(self.contains(c));
        (c.i as usize) * (self.cols as usize) + c.j as usize
    }
}

impl fmt::Display for GridHull {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Cell position, row-major: `i` is the row, `j` is the column. Ordering is
/// lexicographic by `(i, j)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GridCoord {
    pub i: i32,
    pub j: i32,
}

impl GridCoord {
    pub fn new(i: i32, j: i32) -> Self {
        GridCoord { i, j }
    }

    pub fn step(self, d: Direction) -> GridCoord {
        let (di, dj) = d.offset();
        GridCoord::new(self.i + di, self.j + dj)
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

/// One of the four axis-aligned unit directions. Row 0 renders at the top, so
/// `Up` decreases the row index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Direction {
    Up,
    Left,
    Right,
    Down,
}

impl Direction {
    /// All directions, ordered lexicographically by `(di, dj)` offset.
    pub const ALL: [Direction; 4] = [
        Direction::Up,
        Direction::Left,
        Direction::Right,
        Direction::Down,
    ];

    pub fn offset(self) -> (i32, i32) {
        match self {
            Direction::Up => (-1, 0),
            Direction::Left => (0, -1),
            Direction::Right => (0, 1),
            Direction::Down => (1, 0),
        }
    }

    pub fn from_offset(di: i32, dj: i32) -> Option<Direction> {
        match (di, dj) {
            (-1, 0) => Some(Direction::Up),
            (0, -1) => Some(Direction::Left),
            (0, 1) => Some(Direction::Right),
            (1, 0) => Some(Direction::Down),
            _ => None,
        }
    }

    pub fn arrow(self) -> char {
        match self {
            Direction::Up => '^',
            Direction::Left => '<',
            Direction::Right => '>',
            Direction::Down => 'v',
        }
    }
}

/// Error constructing a block set from explicit cells.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum InstanceError {
    #[error("coordinate outside hull: {cell}")]
    OutsideHull { cell: GridCoord },
    #[error("duplicate cell: {cell}")]
    DuplicateCell { cell: GridCoord },
}

/// Error parsing the textual instance format.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line 1: malformed header (expected \"<rows> <cols>\" with both at least 1)")]
    MalformedHeader,
    #[error("line {line}: coordinate outside hull at {cell}")]
    OutsideHull { line: usize, cell: GridCoord },
    #[error("line {line}: invalid character {ch:?} (expected '#' or '.')")]
    BadCharacter { line: usize, ch: char },
    #[error("line {line}: row has {got} cells, expected {expected}")]
    RowWidth {
        line: usize,
        expected: usize,
        got: usize,
    },
    #[error("expected {expected} grid rows, found {got}")]
    MissingRows { expected: usize, got: usize },
    #[error("line {line}: trailing content after grid rows")]
    TrailingContent { line: usize },
}

/// A problem instance: the set of occupied cells inside a hull.
///
/// The object location graph is implicit; adjacency means L1-distance 1
/// between occupied cells. Values are immutable; transforming operations
/// return new sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockSet {
    hull: GridHull,
    occupied: BTreeSet<GridCoord>,
}

impl BlockSet {
    pub fn empty(hull: GridHull) -> Self {
        BlockSet {
            hull,
            occupied: BTreeSet::new(),
        }
    }

    pub fn full(hull: GridHull) -> Self {
        BlockSet {
            hull,
            occupied: hull.cells().collect(),
        }
    }

    pub fn from_cells<I>(hull: GridHull, cells: I) -> Result<Self, InstanceError>
    where
        I: IntoIterator<Item = GridCoord>,
    {
        let mut occupied = BTreeSet::new();
        for cell in cells {
            if !hull.contains(cell) {
                return Err(InstanceError::OutsideHull { cell });
            }
            if !occupied.insert(cell) {
                return Err(InstanceError::DuplicateCell { cell });
            }
        }
        Ok(BlockSet { hull, occupied })
    }

    /// Parses the instance format: a `"<rows> <cols>"` header followed by one
    /// line per row of `'#'` (occupied) and `'.'` (empty) characters.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(ParseError::MalformedHeader)?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(ParseError::MalformedHeader);
        }
        let rows: i32 = dims[0].parse().map_err(|_| ParseError::MalformedHeader)?;
        let cols: i32 = dims[1].parse().map_err(|_| ParseError::MalformedHeader)?;
        if rows < 1 || cols < 1 {
            return Err(ParseError::MalformedHeader);
        }
        let hull = GridHull::new(rows, cols);

        let mut occupied = BTreeSet::new();
        for i in 0..rows {
            let (idx, row) = lines.next().ok_or(ParseError::MissingRows {
                expected: rows as usize,
                got: i as usize,
            })?;
            let line = idx + 1;
            let got = row.chars().count();
            if got != cols as usize {
                // A mark beyond the declared width is an out-of-hull cell;
                // anything else is a plain width mismatch.
                if let Some(j) = row
                    .chars()
                    .enumerate()
                    .position(|(j, ch)| j >= cols as usize && ch == '#')
                {
                    return Err(ParseError::OutsideHull {
                        line,
                        cell: GridCoord::new(i, j as i32),
                    });
                }
                return Err(ParseError::RowWidth {
                    line,
                    expected: cols as usize,
                    got,
                });
            }
            for (j, ch) in row.chars().enumerate() {
                match ch {
                    '#' => {
                        occupied.insert(GridCoord::new(i, j as i32));
                    }
                    '.' => {}
                    _ => return Err(ParseError::BadCharacter { line, ch }),
                }
            }
        }
        for (idx, rest) in lines {
            if rest.trim().is_empty() {
                continue;
            }
            let line = idx + 1;
            if let Some(j) = rest.chars().position(|ch| ch == '#') {
                return Err(ParseError::OutsideHull {
                    line,
                    cell: GridCoord::new(rows, j as i32),
                });
            }
            return Err(ParseError::TrailingContent { line });
        }
        Ok(BlockSet { hull, occupied })
    }

    /// Inverse of [`BlockSet::parse`]; the output round-trips bit-exactly.
    pub fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.hull.rows, self.hull.cols);
        for i in 0..self.hull.rows {
            for j in 0..self.hull.cols {
                out.push(if self.contains(GridCoord::new(i, j)) {
                    '#'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }

    pub fn hull(&self) -> GridHull {
        self.hull
    }

    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    pub fn contains(&self, c: GridCoord) -> bool {
        self.occupied.contains(&c)
    }

    /// Occupied cells in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = GridCoord> + '_ {
        self.occupied.iter().copied()
    }

    /// The set with one occupied cell removed. Panics if `v` is not occupied.
    pub fn without(&self, v: GridCoord) -> BlockSet {
        assert!(self.contains(v), "cell {v} is not occupied");
        let mut next = self.clone();
        next.occupied.remove(&v);
        next
    }

    /// Occupied cells at L1-distance 1 from `v`, in lexicographic order.
    /// Panics if `v` is not occupied.
    pub fn neighbors(&self, v: GridCoord) -> Vec<GridCoord> {
        assert!(self.contains(v), "cell {v} is not occupied");
        Direction::ALL
            .iter()
            .map(|&d| v.step(d))
            .filter(|&u| self.contains(u))
            .collect()
    }

    pub fn degree(&self, v: GridCoord) -> usize {
        self.neighbors(v).len()
    }

    /// A block is pickable when it has at most one neighbor, or exactly two
    /// neighbors on a common row or column through it.
    pub fn is_pickable(&self, v: GridCoord) -> bool {
        let n = self.neighbors(v);
        match n.len() {
            0 | 1 => true,
            2 => (n[0].i == v.i && n[1].i == v.i) || (n[0].j == v.j && n[1].j == v.j),
            _ => false,
        }
    }

    /// A knock at `v` toward `d` is valid when every hull cell along the ray
    /// `v + t*d`, `t >= 1`, is unoccupied. A ray that exits the hull
    /// immediately is vacuously clear.
    pub fn is_knockable(&self, v: GridCoord, d: Direction) -> bool {
        assert!(self.contains(v), "cell {v} is not occupied");
        let mut c = v.step(d);
        while self.hull.contains(c) {
            if self.contains(c) {
                return false;
            }
            c = c.step(d);
        }
        true
    }

    /// First clear knock direction for `v`, if any, in `Direction::ALL` order.
    pub fn knockable_any(&self, v: GridCoord) -> Option<Direction> {
        Direction::ALL
            .into_iter()
            .find(|&d| self.is_knockable(v, d))
    }

    /// Deletes pickable cells until none remains, returning the fixpoint and
    /// the picks in order.
    ///
    /// Candidates are taken lexicographically smallest first. Deleting a cell
    /// never revokes pickability and can only create new candidates among the
    /// deleted cell's neighbors, so maintaining a frontier reproduces exactly
    /// the order of a full rescan after every deletion.
    pub fn clean(&self) -> (BlockSet, Vec<GridCoord>) {
        let mut cur = self.clone();
        let mut picks = Vec::new();
        let mut frontier: BTreeSet<GridCoord> =
            cur.iter().filter(|&v| cur.is_pickable(v)).collect();
        while let Some(&v) = frontier.iter().next() {
            frontier.remove(&v);
            cur.occupied.remove(&v);
            picks.push(v);
            for d in Direction::ALL {
                let u = v.step(d);
                if cur.contains(u) && cur.is_pickable(u) {
                    frontier.insert(u);
                }
            }
        }
        (cur, picks)
    }
}
