//! Face-adjacency graph and the minimum exact face cover, computed as a
//! maximum matching.
//!
//! Every face implicitly carries a weight-0 self-loop (a square gadget), and
//! adjacent faces are joined by weight-1 pair edges (rectangle gadgets), so a
//! perfect matching always exists and maximizing its weight reduces to
//! maximizing the number of pair edges. Unmatched faces become squares
//! afterwards; the cover size is `|faces| - |pairs|`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::blossom;
use crate::gadgets::{enumerate_faces, Face, Gadget};
use crate::grid::BlockSet;

/// Graph on unit faces. Pair edges join faces sharing a grid edge; the
/// self-loop at every vertex is implicit.
#[derive(Clone, Debug)]
pub struct FaceGraph {
    faces: Vec<Face>,
    pair_edges: Vec<(usize, usize)>,
}

impl FaceGraph {
    /// Faces in anchor order.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Pair edges as index pairs `(a, b)` with `a < b`, lexicographically
    /// sorted.
    pub fn pair_edges(&self) -> &[(usize, usize)] {
        &self.pair_edges
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn pair_edge_count(&self) -> usize {
        self.pair_edges.len()
    }
}

/// Builds the face-adjacency graph: one pair edge for every two faces whose
/// anchors are at L1-distance 1. Both faces being present makes the joining
/// rectangle gadget present, since its cell set is exactly their union.
pub fn build_face_graph(faces: &BTreeSet<Face>) -> FaceGraph {
    let ordered: Vec<Face> = faces.iter().copied().collect();
    let index: BTreeMap<Face, usize> = ordered
        .iter()
        .enumerate()
        .map(|(idx, &f)| (f, idx))
        .collect();
    let mut pair_edges = Vec::new();
    for (a, f) in ordered.iter().enumerate() {
        // look right and down only, so each unordered pair appears once
        let right = Face::new(f.anchor.i, f.anchor.j + 1);
        let down = Face::new(f.anchor.i + 1, f.anchor.j);
        for g in [right, down] {
            if let Some(&b) = index.get(&g) {
                pair_edges.push((a, b));
            }
        }
    }
    FaceGraph {
        faces: ordered,
        pair_edges,
    }
}

/// A set of disjoint face pairs drawn from the pair edges. Faces outside all
/// pairs are implicitly matched to their self-loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(Face, Face)>,
}

impl Matching {
    pub fn new(pairs: Vec<(Face, Face)>) -> Self {
        Matching { pairs }
    }

    pub fn pairs(&self) -> &[(Face, Face)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Maximum-cardinality matching over the pair edges, computed with the
/// blossom matcher. Vertices and edges are processed in anchor order, so the
/// result is deterministic.
pub fn max_matching(fg: &FaceGraph) -> Matching {
    let n = fg.face_count();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in fg.pair_edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mate = blossom::maximum_matching(n, &adj);
    let pairs = mate
        .iter()
        .enumerate()
        .filter_map(|(v, m)| m.filter(|&u| v < u).map(|u| (fg.faces[v], fg.faces[u])))
        .collect();
    Matching { pairs }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("matched faces {0} and {1} are not grid-adjacent")]
    NonAdjacentPair(Face, Face),
    #[error("face {0} appears in more than one matched pair")]
    DuplicateFace(Face),
    #[error("matched face {0} is not in the face set")]
    UnknownFace(Face),
}

/// A pairwise face-disjoint gadget family covering every face. Its size is
/// the minimum number of knocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCover {
    gadgets: Vec<Gadget>,
}

impl ExactCover {
    /// Gadgets in scan order (anchor, then kind).
    pub fn gadgets(&self) -> &[Gadget] {
        &self.gadgets
    }

    pub fn len(&self) -> usize {
        self.gadgets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gadgets.is_empty()
    }

    /// Concatenation of every gadget's face list (no dedup, so exactness
    /// checks can see accidental overlaps).
    pub fn covered_faces(&self) -> Vec<Face> {
        self.gadgets.iter().flat_map(|g| g.faces()).collect()
    }
}

/// Turns a matching into the cover it encodes: each pair becomes the
/// rectangle gadget equal to the pair's union, every unmatched face a square.
pub fn matching_to_cover(
    faces: &BTreeSet<Face>,
    matching: &Matching,
) -> Result<ExactCover, CoverError> {
    let mut matched = BTreeSet::new();
    let mut gadgets = Vec::with_capacity(faces.len());
    for &(a, b) in matching.pairs() {
        for f in [a, b] {
            if !faces.contains(&f) {
                return Err(CoverError::UnknownFace(f));
            }
            if !matched.insert(f) {
                return Err(CoverError::DuplicateFace(f));
            }
        }
        let gadget = Gadget::pair(a, b).ok_or(CoverError::NonAdjacentPair(a, b))?;
        gadgets.push(gadget);
    }
    for &f in faces {
        if !matched.contains(&f) {
            gadgets.push(Gadget {
                kind: crate::gadgets::GadgetKind::Square,
                anchor: f.anchor,
            });
        }
    }
    gadgets.sort();
    Ok(ExactCover { gadgets })
}

/// Minimum exact face cover of a cleaned instance:
/// faces -> face graph -> maximum matching -> cover. The cover size is the
/// instance's optimal knock count.
pub fn optimal_cover(b_cleaned: &BlockSet) -> ExactCover {
    let faces = enumerate_faces(b_cleaned);
    let fg = build_face_graph(&faces);
    let matching = max_matching(&fg);
    matching_to_cover(&faces, &matching)
        .expect("a matching drawn from the face graph is always consistent")
}
