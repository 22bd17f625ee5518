//! Executable knock-pick plans: knock selection, plan construction,
//! serialization, and replay validation.
//!
//! A plan removes every block from the grid. Knocked blocks leave the grid on
//! the knock and are retrieved by a pick immediately after, so a plan over
//! `v` blocks with `k` knocks has exactly `v + k` actions.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::gadgets::{face_intact, Gadget};
use crate::grid::{BlockSet, Direction, GridCoord, GridHull};
use crate::matching::optimal_cover;

/// One plan step. A `Pick` either grasps a block on the grid (which must be
/// pickable at that point) or retrieves a previously knocked block, addressed
/// by the cell it was knocked from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Action {
    Pick(GridCoord),
    Knock(GridCoord, Direction),
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Pick(v) => write!(f, "P {} {}", v.i, v.j),
            Action::Knock(v, d) => {
                let (di, dj) = d.offset();
                write!(f, "K {} {} {} {}", v.i, v.j, di, dj)
            }
        }
    }
}

/// An ordered, feasible action sequence that empties its instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    hull: GridHull,
    actions: Vec<Action>,
    knock_count: usize,
}

impl Plan {
    pub fn hull(&self) -> GridHull {
        self.hull
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn knock_count(&self) -> usize {
        self.knock_count
    }

    /// Total cost: one action per block plus one per knock.
    pub fn total_actions(&self) -> usize {
        self.actions.len()
    }

    /// Serializes to the plan file format; round-trips bit-exactly through
    /// [`Plan::parse`].
    pub fn serialize(&self) -> String {
        let mut out = format!(
            "plan v1 {} {} knocks={}\n",
            self.hull.rows(),
            self.hull.cols(),
            self.knock_count
        );
        for action in &self.actions {
            out.push_str(&action.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Plan, PlanParseError> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(PlanParseError::MalformedHeader)?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        let [magic, version, rows, cols, knocks] = tokens[..] else {
            return Err(PlanParseError::MalformedHeader);
        };
        if magic != "plan" || version != "v1" {
            return Err(PlanParseError::MalformedHeader);
        }
        let rows: i32 = rows.parse().map_err(|_| PlanParseError::MalformedHeader)?;
        let cols: i32 = cols.parse().map_err(|_| PlanParseError::MalformedHeader)?;
        let declared: usize = knocks
            .strip_prefix("knocks=")
            .and_then(|k| k.parse().ok())
            .ok_or(PlanParseError::MalformedHeader)?;
        if rows < 1 || cols < 1 {
            return Err(PlanParseError::MalformedHeader);
        }

        let mut actions = Vec::new();
        let mut found = 0;
        for (idx, raw) in lines {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = raw.split_whitespace().collect();
            let action = match fields[..] {
                ["P", i, j] => {
                    let (i, j) = parse_coord(i, j).ok_or(PlanParseError::BadAction { line })?;
                    Action::Pick(GridCoord::new(i, j))
                }
                ["K", i, j, di, dj] => {
                    let (i, j) = parse_coord(i, j).ok_or(PlanParseError::BadAction { line })?;
                    let (di, dj) = parse_coord(di, dj).ok_or(PlanParseError::BadAction { line })?;
                    let dir =
                        Direction::from_offset(di, dj).ok_or(PlanParseError::BadAction { line })?;
                    found += 1;
                    Action::Knock(GridCoord::new(i, j), dir)
                }
                _ => return Err(PlanParseError::BadAction { line }),
            };
            actions.push(action);
        }
        if found != declared {
            return Err(PlanParseError::KnockCountMismatch { declared, found });
        }
        Ok(Plan {
            hull: GridHull::new(rows, cols),
            actions,
            knock_count: found,
        })
    }
}

fn parse_coord(a: &str, b: &str) -> Option<(i32, i32)> {
    Some((a.parse().ok()?, b.parse().ok()?))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlanParseError {
    #[error("line 1: malformed plan header (expected \"plan v1 <rows> <cols> knocks=<k>\")")]
    MalformedHeader,
    #[error("line {line}: malformed action (expected \"P <i> <j>\" or \"K <i> <j> <di> <dj>\")")]
    BadAction { line: usize },
    #[error("header declares {declared} knocks but the plan contains {found}")]
    KnockCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    /// Unreachable for valid inputs: the remaining cover always offers a
    /// clear candidate ray. Seeing this means an upstream invariant broke.
    #[error("no feasible knock among the remaining cover gadgets")]
    NoFeasibleKnock,
}

/// Picks the next knock: the first `(gadget, candidate, direction)` triple in
/// lexicographic scan order whose ray is clear. The gadgets are scanned by
/// (anchor, kind), candidates and directions in their natural order.
pub fn choose_knock(
    cover: &[Gadget],
    b: &BlockSet,
) -> Result<(Gadget, GridCoord, Direction), SolveError> {
    let mut order: Vec<Gadget> = cover.to_vec();
    order.sort();
    for g in order {
        for v in g.candidates() {
            if !b.contains(v) {
                continue;
            }
            for d in Direction::ALL {
                if b.is_knockable(v, d) {
                    return Ok((g, v, d));
                }
            }
        }
    }
    Err(SolveError::NoFeasibleKnock)
}

/// Computes a complete minimum-knock plan: exhaustive initial picking, then
/// one ray-feasible knock on a remaining cover gadget followed by exhaustive
/// picking, until the grid is empty.
pub fn solve(b: &BlockSet) -> Result<Plan, SolveError> {
    let (mut cur, picks) = b.clean();
    let mut actions: Vec<Action> = picks.into_iter().map(Action::Pick).collect();
    let cover = optimal_cover(&cur);
    let mut remaining: Vec<Gadget> = cover.gadgets().to_vec();
    let mut knock_count = 0;
    while !cur.is_empty() {
        let (_, v, d) = choose_knock(&remaining, &cur)?;
        cur = cur.without(v);
        knock_count += 1;
        actions.push(Action::Knock(v, d));
        // the displaced block sits in the cleared ray; grab it right away
        actions.push(Action::Pick(v));
        let (next, picks) = cur.clean();
        cur = next;
        actions.extend(picks.into_iter().map(Action::Pick));
        // a gadget is spent once none of its faces survive; that is exactly
        // the knocked gadget, since covers are face-disjoint
        remaining.retain(|g| g.faces().iter().any(|&f| face_intact(&cur, f)));
    }
    Ok(Plan {
        hull: b.hull(),
        actions,
        knock_count,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationReason {
    CellNotOccupied,
    NotPickable,
    RayBlocked,
}

impl fmt::Display for ViolationReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationReason::CellNotOccupied => "cell not occupied",
            ViolationReason::NotPickable => "not pickable",
            ViolationReason::RayBlocked => "ray blocked",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub action: Action,
    pub reason: ViolationReason,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "action {} ({}): {}",
            self.index, self.action, self.reason
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanVerdict {
    Valid,
    /// Plan header dimensions differ from the instance hull.
    HullMismatch,
    Violation(Violation),
}

/// Outcome of replaying a plan against an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    pub verdict: PlanVerdict,
    /// Whether the replay removed every block (including knocked ones).
    pub emptied: bool,
    /// Knocks successfully replayed.
    pub knocks: usize,
}

impl ValidationReport {
    /// No violation and the instance was fully emptied.
    pub fn is_complete(&self) -> bool {
        matches!(self.verdict, PlanVerdict::Valid) && self.emptied
    }
}

/// Replays `plan` from `b`, checking each action's feasibility predicate
/// before applying it, and reports the first violation if any.
pub fn validate_plan(b: &BlockSet, plan: &Plan) -> ValidationReport {
    if plan.hull() != b.hull() {
        return ValidationReport {
            verdict: PlanVerdict::HullMismatch,
            emptied: false,
            knocks: 0,
        };
    }
    let mut cur = b.clone();
    let mut displaced: BTreeSet<GridCoord> = BTreeSet::new();
    let mut knocks = 0;
    let fail = |index, action, reason, knocks| ValidationReport {
        verdict: PlanVerdict::Violation(Violation {
            index,
            action,
            reason,
        }),
        emptied: false,
        knocks,
    };
    for (index, &action) in plan.actions().iter().enumerate() {
        match action {
            Action::Pick(v) => {
                if cur.contains(v) {
                    if !cur.is_pickable(v) {
                        return fail(index, action, ViolationReason::NotPickable, knocks);
                    }
                    cur = cur.without(v);
                } else if !displaced.remove(&v) {
                    return fail(index, action, ViolationReason::CellNotOccupied, knocks);
                }
            }
            Action::Knock(v, d) => {
                if !cur.contains(v) {
                    return fail(index, action, ViolationReason::CellNotOccupied, knocks);
                }
                if !cur.is_knockable(v, d) {
                    return fail(index, action, ViolationReason::RayBlocked, knocks);
                }
                cur = cur.without(v);
                displaced.insert(v);
                knocks += 1;
            }
        }
    }
    ValidationReport {
        verdict: PlanVerdict::Valid,
        emptied: cur.is_empty() && displaced.is_empty(),
        knocks,
    }
}
