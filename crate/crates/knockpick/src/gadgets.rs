//! Unit faces and the three minimal non-pickable gadgets built from them.

use std::collections::BTreeSet;
use std::fmt;

use crate::grid::{BlockSet, GridCoord};

/// A fully occupied 2x2 block, identified by its minimum-corner anchor.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Face {
    pub anchor: GridCoord,
}

impl Face {
    pub fn new(i: i32, j: i32) -> Self {
        Face {
            anchor: GridCoord::new(i, j),
        }
    }

    pub fn cells(&self) -> [GridCoord; 4] {
        let GridCoord { i, j } = self.anchor;
        [
            GridCoord::new(i, j),
            GridCoord::new(i, j + 1),
            GridCoord::new(i + 1, j),
            GridCoord::new(i + 1, j + 1),
        ]
    }

    /// Two faces are adjacent when they share a grid edge, i.e. their anchors
    /// are at L1-distance 1.
    pub fn adjacent_to(&self, other: Face) -> bool {
        let di = (self.anchor.i - other.anchor.i).abs();
        let dj = (self.anchor.j - other.anchor.j).abs();
        di + dj == 1
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.anchor)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GadgetKind {
    /// 2x2, covering one face.
    Square,
    /// 2x3, covering two horizontally adjacent faces.
    Horizontal,
    /// 3x2, covering two vertically adjacent faces.
    Vertical,
}

/// A gadget occurrence, anchored at its lexicographically minimum cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub anchor: GridCoord,
}

impl Gadget {
    pub fn square(i: i32, j: i32) -> Self {
        Gadget {
            kind: GadgetKind::Square,
            anchor: GridCoord::new(i, j),
        }
    }

    pub fn horizontal(i: i32, j: i32) -> Self {
        Gadget {
            kind: GadgetKind::Horizontal,
            anchor: GridCoord::new(i, j),
        }
    }

    pub fn vertical(i: i32, j: i32) -> Self {
        Gadget {
            kind: GadgetKind::Vertical,
            anchor: GridCoord::new(i, j),
        }
    }

    /// The gadget covering exactly the two adjacent faces `a` and `b`, whose
    /// cell set is their union. `None` if the faces are not adjacent.
    pub fn pair(a: Face, b: Face) -> Option<Gadget> {
        let (lo, hi) = if a.anchor <= b.anchor { (a, b) } else { (b, a) };
        let GridCoord { i, j } = lo.anchor;
        if hi.anchor == GridCoord::new(i, j + 1) {
            Some(Gadget::horizontal(i, j))
        } else if hi.anchor == GridCoord::new(i + 1, j) {
            Some(Gadget::vertical(i, j))
        } else {
            None
        }
    }

    /// Member cells in row-major order: 4 for squares, 6 for rectangles.
    pub fn cells(&self) -> Vec<GridCoord> {
        let GridCoord { i, j } = self.anchor;
        let (rows, cols) = match self.kind {
            GadgetKind::Square => (2, 2),
            GadgetKind::Horizontal => (2, 3),
            GadgetKind::Vertical => (3, 2),
        };
        (0..rows)
            .flat_map(|r| (0..cols).map(move |c| GridCoord::new(i + r, j + c)))
            .collect()
    }

    /// The faces this gadget covers, in anchor order.
    pub fn faces(&self) -> Vec<Face> {
        let GridCoord { i, j } = self.anchor;
        match self.kind {
            GadgetKind::Square => vec![Face::new(i, j)],
            GadgetKind::Horizontal => vec![Face::new(i, j), Face::new(i, j + 1)],
            GadgetKind::Vertical => vec![Face::new(i, j), Face::new(i + 1, j)],
        }
    }

    /// Knock candidates: any vertex of a square; the two shared-boundary
    /// vertices (middle column / middle row) of a rectangle.
    pub fn candidates(&self) -> Vec<GridCoord> {
        let GridCoord { i, j } = self.anchor;
        match self.kind {
            GadgetKind::Square => self.cells(),
            GadgetKind::Horizontal => {
                vec![GridCoord::new(i, j + 1), GridCoord::new(i + 1, j + 1)]
            }
            GadgetKind::Vertical => {
                vec![GridCoord::new(i + 1, j), GridCoord::new(i + 1, j + 1)]
            }
        }
    }

    /// True when every member cell is occupied.
    pub fn is_present(&self, b: &BlockSet) -> bool {
        self.cells().into_iter().all(|c| b.contains(c))
    }
}

// Scan order sorts by anchor first so knock selection walks the grid
// top-to-bottom, left-to-right.
impl Ord for Gadget {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.anchor, self.kind).cmp(&(other.anchor, other.kind))
    }
}

impl PartialOrd for Gadget {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Gadget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GadgetKind::Square => "square",
            GadgetKind::Horizontal => "horizontal",
            GadgetKind::Vertical => "vertical",
        };
        write!(f, "{kind} at {}", self.anchor)
    }
}

/// All anchors whose 2x2 block is fully occupied. A full `m x n` grid has
/// `(m-1)(n-1)` faces.
pub fn enumerate_faces(b: &BlockSet) -> BTreeSet<Face> {
    b.iter()
        .map(|c| Face { anchor: c })
        .filter(|f| face_intact(b, *f))
        .collect()
}

/// True when all four cells of the face are occupied.
pub fn face_intact(b: &BlockSet, f: Face) -> bool {
    f.cells().into_iter().all(|c| b.contains(c))
}

/// Test helper: deleting `v` from an isolated gadget instance and cleaning
/// leaves it empty. `b` must be exactly the gadget's cells; `v` must be one
/// of them.
pub fn knock_then_clean_empties(b: &BlockSet, g: &Gadget, v: GridCoord) -> bool {
    let cells = g.cells();
    assert!(
        b.len() == cells.len() && g.is_present(b),
        "instance must be exactly the gadget's cells"
    );
    assert!(cells.contains(&v), "cell {v} is not in the gadget");
    let (cleaned, _) = b.without(v).clean();
    cleaned.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridHull;

    fn gadget_instance(g: &Gadget, rows: i32, cols: i32) -> BlockSet {
        BlockSet::from_cells(GridHull::new(rows, cols), g.cells()).unwrap()
    }

    #[test]
    fn faces_of_full_3x3() {
        let b = BlockSet::full(GridHull::new(3, 3));
        // brute force over every 2x2 window
        let mut expected = BTreeSet::new();
        for i in 0..3 {
            for j in 0..3 {
                let f = Face::new(i, j);
                if f.cells().into_iter().all(|c| b.contains(c)) {
                    expected.insert(f);
                }
            }
        }
        let faces = enumerate_faces(&b);
        assert_eq!(faces, expected);
        assert_eq!(faces.len(), 4);
        assert!(faces.contains(&Face::new(0, 0)));
        assert!(faces.contains(&Face::new(0, 1)));
        assert!(faces.contains(&Face::new(1, 0)));
        assert!(faces.contains(&Face::new(1, 1)));
    }

    #[test]
    fn full_grid_face_counts() {
        for (m, n) in [(2, 2), (3, 5), (4, 4), (20, 20)] {
            let b = BlockSet::full(GridHull::new(m, n));
            let expected = ((m - 1) * (n - 1)) as usize;
            assert_eq!(enumerate_faces(&b).len(), expected);
        }
    }

    #[test]
    fn too_few_cells_means_no_face() {
        let b = BlockSet::from_cells(
            GridHull::new(2, 2),
            [
                GridCoord::new(0, 0),
                GridCoord::new(0, 1),
                GridCoord::new(1, 0),
            ],
        )
        .unwrap();
        assert!(enumerate_faces(&b).is_empty());
    }

    #[test]
    fn gadget_face_lists() {
        assert_eq!(Gadget::square(2, 3).faces(), vec![Face::new(2, 3)]);
        assert_eq!(
            Gadget::horizontal(0, 0).faces(),
            vec![Face::new(0, 0), Face::new(0, 1)]
        );
        assert_eq!(
            Gadget::vertical(1, 0).faces(),
            vec![Face::new(1, 0), Face::new(2, 0)]
        );
    }

    #[test]
    fn gadget_candidates() {
        let sq: BTreeSet<_> = Gadget::square(0, 0).candidates().into_iter().collect();
        assert_eq!(sq.len(), 4);
        assert_eq!(
            Gadget::horizontal(0, 0).candidates(),
            vec![GridCoord::new(0, 1), GridCoord::new(1, 1)]
        );
        assert_eq!(
            Gadget::vertical(0, 0).candidates(),
            vec![GridCoord::new(1, 0), GridCoord::new(1, 1)]
        );
    }

    #[test]
    fn pair_of_adjacent_faces_is_a_gadget() {
        assert_eq!(
            Gadget::pair(Face::new(0, 0), Face::new(0, 1)),
            Some(Gadget::horizontal(0, 0))
        );
        assert_eq!(
            Gadget::pair(Face::new(2, 1), Face::new(1, 1)),
            Some(Gadget::vertical(1, 1))
        );
        assert_eq!(Gadget::pair(Face::new(0, 0), Face::new(1, 1)), None);
    }

    #[test]
    fn pair_union_matches_gadget_cells() {
        // the union of two adjacent faces is exactly the rectangle's cell set
        for (a, b) in [
            (Face::new(1, 2), Face::new(1, 3)),
            (Face::new(1, 2), Face::new(2, 2)),
        ] {
            let g = Gadget::pair(a, b).unwrap();
            let union: BTreeSet<GridCoord> = a.cells().into_iter().chain(b.cells()).collect();
            let cells: BTreeSet<GridCoord> = g.cells().into_iter().collect();
            assert_eq!(union, cells);
            assert_eq!(cells.len(), 6);
        }
    }

    #[test]
    fn isolated_gadgets_have_no_pickable_vertex() {
        for g in [
            Gadget::square(0, 0),
            Gadget::horizontal(0, 0),
            Gadget::vertical(0, 0),
        ] {
            let b = gadget_instance(&g, 3, 3);
            for v in b.iter() {
                assert!(!b.is_pickable(v), "{g}: {v} should not be pickable");
            }
        }
    }

    #[test]
    fn one_knock_on_any_candidate_empties_each_gadget() {
        for g in [
            Gadget::square(1, 1),
            Gadget::horizontal(1, 1),
            Gadget::vertical(1, 1),
        ] {
            let b = gadget_instance(&g, 5, 5);
            for v in g.candidates() {
                assert!(
                    knock_then_clean_empties(&b, &g, v),
                    "{g}: knocking candidate {v} should empty the gadget"
                );
            }
        }
    }

    #[test]
    fn rectangle_corner_knock_leaves_a_face() {
        // deleting a corner of a 2x3 breaks one face; the other face survives
        // cleanup, so the gadget does not empty
        let g = Gadget::horizontal(0, 0);
        let b = gadget_instance(&g, 2, 3);
        assert!(!knock_then_clean_empties(&b, &g, GridCoord::new(0, 0)));
    }

    #[test]
    #[should_panic(expected = "not in the gadget")]
    fn knock_helper_rejects_foreign_cell() {
        let g = Gadget::square(0, 0);
        let b = gadget_instance(&g, 3, 3);
        knock_then_clean_empties(&b, &g, GridCoord::new(2, 2));
    }

    #[test]
    fn gadget_scan_order_is_anchor_first() {
        let mut v = vec![
            Gadget::square(1, 0),
            Gadget::horizontal(0, 2),
            Gadget::vertical(0, 1),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Gadget::vertical(0, 1),
                Gadget::horizontal(0, 2),
                Gadget::square(1, 0),
            ]
        );
    }
}
