//! Occupancy-grid world model: points, maps, move sets, paths, scenarios.
//!
//! Cells are unit cubes, 1 cell = 1 metre. A map is a dense blocked/free
//! grid in 2 or 3 dimensions with optional default agent and goal
//! entities. Maps are immutable once built; every query here is a pure
//! function of its inputs.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom;
use crate::scalar::Real;

/// Integer cell coordinates. `z` is zero on 2D maps.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Point {
    pub const fn new2(x: i32, y: i32) -> Self {
        Point { x, y, z: 0 }
    }

    pub const fn new3(x: i32, y: i32, z: i32) -> Self {
        Point { x, y, z }
    }

    /// Builds a point from a 2- or 3-element coordinate slice.
    pub fn from_coords(coords: &[i32]) -> Result<Self, GridError> {
        match coords {
            [x, y] => Ok(Point::new2(*x, *y)),
            [x, y, z] => Ok(Point::new3(*x, *y, *z)),
            _ => Err(GridError::BadDims(format!(
                "expected 2 or 3 coordinates, got {}",
                coords.len()
            ))),
        }
    }

    /// Coordinates truncated to `dim` axes.
    pub fn coords(&self, dim: u8) -> Vec<i32> {
        match dim {
            2 => vec![self.x, self.y],
            _ => vec![self.x, self.y, self.z],
        }
    }

    pub fn axis(&self, axis: usize) -> i32 {
        match axis {
            0 => self.x,
            1 => self.y,
            _ => self.z,
        }
    }

    pub fn with_axis(mut self, axis: usize, v: i32) -> Self {
        match axis {
            0 => self.x = v,
            1 => self.y = v,
            _ => self.z = v,
        }
        self
    }

    pub fn add(&self, other: Point) -> Point {
        Point::new3(self.x + other.x, self.y + other.y, self.z + other.z)
    }

    pub fn sub(&self, other: Point) -> Point {
        Point::new3(self.x - other.x, self.y - other.y, self.z - other.z)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.z == 0 {
            write!(f, "({}, {})", self.x, self.y)
        } else {
            write!(f, "({}, {}, {})", self.x, self.y, self.z)
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Dense 2D/3D occupancy grid with optional agent and goal entities.
///
/// Linear cell order is x-fastest: `idx = x + sx * (y + sy * z)`.
#[derive(Clone, PartialEq, Eq)]
pub struct GridMap {
    dim: u8,
    dims: [u32; 3],
    cells: Vec<bool>,
    free_count: usize,
    agent: Option<Point>,
    goal: Option<Point>,
}

impl fmt::Debug for GridMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridMap")
            .field("dims", &self.dims())
            .field("blocked", &(self.cells.len() - self.free_count))
            .field("agent", &self.agent)
            .field("goal", &self.goal)
            .finish()
    }
}

impl GridMap {
    /// Fully free map.
    pub fn empty(dims: &[u32]) -> Result<Self, GridError> {
        let n = check_dims(dims)?;
        Ok(GridMap {
            dim: dims.len() as u8,
            dims: pad_dims(dims),
            cells: vec![false; n],
            free_count: n,
            agent: None,
            goal: None,
        })
    }

    /// Builds a map from a blocked/free vector in linear cell order.
    pub fn from_cells(dims: &[u32], cells: Vec<bool>) -> Result<Self, GridError> {
        let n = check_dims(dims)?;
        if cells.len() != n {
            return Err(GridError::BadDims(format!(
                "cell payload length {} does not match dims product {}",
                cells.len(),
                n
            )));
        }
        let free_count = cells.iter().filter(|b| !**b).count();
        Ok(GridMap {
            dim: dims.len() as u8,
            dims: pad_dims(dims),
            cells,
            free_count,
            agent: None,
            goal: None,
        })
    }

    /// 2 or 3.
    pub fn dim(&self) -> u8 {
        self.dim
    }

    /// Extents, one per axis.
    pub fn dims(&self) -> &[u32] {
        &self.dims[..self.dim as usize]
    }

    pub fn extent(&self, axis: usize) -> u32 {
        self.dims[axis]
    }

    pub fn total_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn free_cells(&self) -> usize {
        self.free_count
    }

    pub fn blocked_cells(&self) -> usize {
        self.cells.len() - self.free_count
    }

    pub fn in_bounds(&self, p: Point) -> bool {
        if self.dim == 2 && p.z != 0 {
            return false;
        }
        (0..self.dim as usize).all(|a| {
            let c = p.axis(a);
            c >= 0 && (c as u32) < self.dims[a]
        })
    }

    pub fn index(&self, p: Point) -> usize {
        debug_assert!(self.in_bounds(p));
        let sx = self.dims[0] as usize;
        let sy = self.dims[1] as usize;
        p.x as usize + sx * (p.y as usize + sy * p.z as usize)
    }

    pub fn point_at(&self, idx: usize) -> Point {
        let sx = self.dims[0] as usize;
        let sy = self.dims[1] as usize;
        let x = (idx % sx) as i32;
        let y = ((idx / sx) % sy) as i32;
        let z = (idx / (sx * sy)) as i32;
        Point::new3(x, y, z)
    }

    /// True when `p` is in bounds and not blocked. Out-of-bounds counts
    /// as blocked so the map border behaves like an obstacle.
    pub fn is_free(&self, p: Point) -> bool {
        self.in_bounds(p) && !self.cells[self.index(p)]
    }

    pub fn is_blocked(&self, p: Point) -> bool {
        !self.is_free(p)
    }

    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    pub fn agent(&self) -> Option<Point> {
        self.agent
    }

    pub fn goal(&self) -> Option<Point> {
        self.goal
    }

    /// Returns a copy with the agent placed on a free cell.
    pub fn with_agent(&self, p: Point) -> Result<Self, GridError> {
        if !self.in_bounds(p) {
            return Err(GridError::OutOfBounds(p));
        }
        if self.is_blocked(p) {
            return Err(GridError::BlockedEntity { name: "agent", point: p });
        }
        let mut m = self.clone();
        m.agent = Some(p);
        Ok(m)
    }

    /// Returns a copy with the goal placed on a free cell.
    pub fn with_goal(&self, p: Point) -> Result<Self, GridError> {
        if !self.in_bounds(p) {
            return Err(GridError::OutOfBounds(p));
        }
        if self.is_blocked(p) {
            return Err(GridError::BlockedEntity { name: "goal", point: p });
        }
        let mut m = self.clone();
        m.goal = Some(p);
        Ok(m)
    }

    pub(crate) fn set_cell(&mut self, p: Point, blocked: bool) {
        let idx = self.index(p);
        if self.cells[idx] != blocked {
            self.cells[idx] = blocked;
            if blocked {
                self.free_count -= 1;
            } else {
                self.free_count += 1;
            }
        }
    }

    /// Free cells in linear order.
    pub fn free_points(&self) -> Vec<Point> {
        (0..self.cells.len())
            .filter(|i| !self.cells[*i])
            .map(|i| self.point_at(i))
            .collect()
    }
}

fn check_dims(dims: &[u32]) -> Result<usize, GridError> {
    if dims.len() != 2 && dims.len() != 3 {
        return Err(GridError::BadDims(format!(
            "expected 2 or 3 axes, got {}",
            dims.len()
        )));
    }
    if dims.iter().any(|&d| d == 0) {
        return Err(GridError::BadDims("zero-length axis".into()));
    }
    let mut n = 1usize;
    for &d in dims {
        n = n
            .checked_mul(d as usize)
            .ok_or_else(|| GridError::BadDims("dims product overflows".into()))?;
    }
    Ok(n)
}

fn pad_dims(dims: &[u32]) -> [u32; 3] {
    let mut out = [1u32; 3];
    out[..dims.len()].copy_from_slice(dims);
    out
}

/// One admissible move: an offset, its cost, and the gate cells that must
/// be free for the move to avoid cutting a blocked corner.
#[derive(Clone, Debug)]
pub struct Move {
    pub offset: Point,
    pub cost: Real,
    gates: Vec<Point>,
}

/// The admissible move offsets for a map dimensionality.
///
/// 2D is 8-connected (cardinals cost 1, diagonals sqrt(2)); 3D is
/// 26-connected with cost sqrt(k) for k changed axes. With the corner
/// rule on, a multi-axis move requires every proper sub-offset cell to
/// be free, so paths cannot squeeze between corner-touching obstacles.
#[derive(Clone, Debug)]
pub struct MoveSet {
    dim: u8,
    corner_rule: bool,
    moves: Vec<Move>,
}

impl MoveSet {
    /// Standard move set for a 2- or 3-axis map, corner rule enabled.
    pub fn for_dim(dim: u8) -> Self {
        Self::with_corner_rule(dim, true)
    }

    pub fn with_corner_rule(dim: u8, corner_rule: bool) -> Self {
        assert!(dim == 2 || dim == 3, "dim must be 2 or 3");
        let range = |d: u8, axis: u8| if axis < d { -1i32..=1 } else { 0..=0 };
        let mut moves = Vec::new();
        for x in range(dim, 0) {
            for y in range(dim, 1) {
                for z in range(dim, 2) {
                    let offset = Point::new3(x, y, z);
                    let axes: Vec<usize> = (0..3).filter(|&a| offset.axis(a) != 0).collect();
                    if axes.is_empty() {
                        continue;
                    }
                    let cost = (axes.len() as Real).sqrt();
                    let gates = proper_suboffsets(offset, &axes);
                    moves.push(Move { offset, cost, gates });
                }
            }
        }
        // Lexicographic by offset for deterministic neighbor order.
        moves.sort_by_key(|m| m.offset);
        MoveSet { dim, corner_rule, moves }
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn corner_rule(&self) -> bool {
        self.corner_rule
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Index of `offset` in the deterministic move order.
    pub fn index_of(&self, offset: Point) -> Option<usize> {
        self.moves.iter().position(|m| m.offset == offset)
    }

    /// True when stepping from `p` by `mv` is admissible on `map`.
    pub fn allows(&self, map: &GridMap, p: Point, mv: &Move) -> bool {
        let q = p.add(mv.offset);
        if !map.is_free(q) {
            return false;
        }
        if self.corner_rule {
            for g in &mv.gates {
                if !map.is_free(p.add(*g)) {
                    return false;
                }
            }
        }
        true
    }
}

fn proper_suboffsets(offset: Point, axes: &[usize]) -> Vec<Point> {
    let k = axes.len();
    if k < 2 {
        return Vec::new();
    }
    let mut subs = Vec::new();
    for mask in 1u32..((1 << k) - 1) {
        let mut s = Point::new3(0, 0, 0);
        for (bit, &axis) in axes.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                s = s.with_axis(axis, offset.axis(axis));
            }
        }
        subs.push(s);
    }
    subs.sort();
    subs
}

/// In-bounds, free, corner-rule-respecting successors of `p` with their
/// move costs, in lexicographic offset order.
pub fn neighbors(map: &GridMap, p: Point, moves: &MoveSet) -> Result<Vec<(Point, Real)>, GridError> {
    if !map.in_bounds(p) {
        return Err(GridError::OutOfBounds(p));
    }
    if map.is_blocked(p) {
        return Err(GridError::BlockedCell(p));
    }
    let mut out = Vec::with_capacity(moves.len());
    for mv in moves.moves() {
        if moves.allows(map, p, mv) {
            out.push((p.add(mv.offset), mv.cost));
        }
    }
    Ok(out)
}

/// True iff the supercover of segment `a`-`b` (every cell the real
/// segment between cell centers touches) contains no blocked cell.
pub fn line_of_sight(map: &GridMap, a: Point, b: Point) -> Result<bool, GridError> {
    for p in [a, b] {
        if !map.in_bounds(p) {
            return Err(GridError::OutOfBounds(p));
        }
    }
    Ok(geom::supercover(a, b).into_iter().all(|c| map.is_free(c)))
}

/// An ordered sequence of free points with its Euclidean length in metres.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    points: Vec<Point>,
    cost: Real,
}

/// Adjacency contract between consecutive path points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// Consecutive points differ by one admissible move.
    GridAdjacent,
    /// Consecutive points pass a line-of-sight check.
    LineOfSight,
}

/// Path validation failure.
#[derive(Debug, Error, PartialEq)]
pub enum PathError {
    #[error("path has no points")]
    Empty,
    #[error("path point {0} is blocked or out of bounds")]
    BadPoint(Point),
    #[error("points {0} and {1} are not connected under {2:?}")]
    Disconnected(Point, Point, Connectivity),
    #[error("stored cost {stored} differs from recomputed {recomputed}")]
    CostMismatch { stored: Real, recomputed: Real },
}

impl Path {
    /// Builds a path, computing the cost as the Euclidean segment sum.
    pub fn from_points(points: Vec<Point>) -> Self {
        let cost = geom::path_length::<Real>(&points);
        Path { points, cost }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn cost(&self) -> Real {
        self.cost
    }

    pub fn start(&self) -> Point {
        self.points[0]
    }

    pub fn end(&self) -> Point {
        *self.points.last().unwrap()
    }

    /// Re-checks every path invariant against the map.
    pub fn validate(
        &self,
        map: &GridMap,
        conn: Connectivity,
        moves: &MoveSet,
    ) -> Result<(), PathError> {
        if self.points.is_empty() {
            return Err(PathError::Empty);
        }
        for &p in &self.points {
            if !map.is_free(p) {
                return Err(PathError::BadPoint(p));
            }
        }
        for w in self.points.windows(2) {
            let (a, b) = (w[0], w[1]);
            let ok = match conn {
                Connectivity::GridAdjacent => {
                    let off = b.sub(a);
                    moves
                        .moves()
                        .iter()
                        .find(|m| m.offset == off)
                        .map(|m| moves.allows(map, a, m))
                        .unwrap_or(false)
                }
                Connectivity::LineOfSight => line_of_sight(map, a, b).unwrap_or(false),
            };
            if !ok {
                return Err(PathError::Disconnected(a, b, conn));
            }
        }
        let recomputed = geom::path_length::<Real>(&self.points);
        if (recomputed - self.cost).abs() > 1e-9 {
            return Err(PathError::CostMismatch { stored: self.cost, recomputed });
        }
        Ok(())
    }
}

/// One planning problem: a shared map, endpoints, and the seed that
/// drives every randomized decision taken while solving it.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub map: Arc<GridMap>,
    pub start: Point,
    pub goal: Point,
    pub seed: u64,
}

impl Scenario {
    pub fn new(map: Arc<GridMap>, start: Point, goal: Point, seed: u64) -> Result<Self, GridError> {
        for (name, p) in [("start", start), ("goal", goal)] {
            if !map.in_bounds(p) {
                return Err(GridError::OutOfBounds(p));
            }
            if map.is_blocked(p) {
                return Err(GridError::BlockedEntity { name, point: p });
            }
        }
        Ok(Scenario { map, start, goal, seed })
    }

    /// Scenario using the map's embedded agent and goal entities.
    pub fn from_entities(map: Arc<GridMap>, seed: u64) -> Result<Self, GridError> {
        let start = map.agent().ok_or(GridError::MissingEntity("agent"))?;
        let goal = map.goal().ok_or(GridError::MissingEntity("goal"))?;
        Scenario::new(map, start, goal, seed)
    }
}

/// True iff the goal is reachable from the start by flood fill over
/// admissible moves.
pub fn is_solvable(s: &Scenario, moves: &MoveSet) -> bool {
    if s.start == s.goal {
        return true;
    }
    let map = &*s.map;
    let mut seen = vec![false; map.total_cells()];
    seen[map.index(s.start)] = true;
    let mut stack = vec![s.start];
    while let Some(p) = stack.pop() {
        let Ok(succ) = neighbors(map, p, moves) else { continue };
        for (q, _) in succ {
            if q == s.goal {
                return true;
            }
            let idx = map.index(q);
            if !seen[idx] {
                seen[idx] = true;
                stack.push(q);
            }
        }
    }
    false
}

/// World-model errors.
#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("point {0} is out of bounds")]
    OutOfBounds(Point),
    #[error("cell {0} is blocked")]
    BlockedCell(Point),
    #[error("{name} placed on blocked cell {point}")]
    BlockedEntity { name: &'static str, point: Point },
    #[error("invalid dims: {0}")]
    BadDims(String),
    #[error("map has no {0} entity")]
    MissingEntity(&'static str),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map_2d(w: u32, h: u32, blocked: &[(i32, i32)]) -> GridMap {
        let mut m = GridMap::empty(&[w, h]).unwrap();
        for &(x, y) in blocked {
            m.set_cell(Point::new2(x, y), true);
        }
        m
    }

    #[test]
    fn neighbors_open_2d_center() {
        let m = map_2d(3, 3, &[]);
        let n = neighbors(&m, Point::new2(1, 1), &MoveSet::for_dim(2)).unwrap();
        assert_eq!(n.len(), 8);
        // Deterministic lexicographic order by offset.
        assert_eq!(n[0].0, Point::new2(0, 0));
        assert!((n[0].1 - (2.0f64).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn neighbors_corner_rule_excludes_cut_diagonal() {
        // Cells north and east of p blocked: NE diagonal must be excluded.
        let m = map_2d(3, 3, &[(1, 2), (2, 1)]);
        let p = Point::new2(1, 1);
        let n = neighbors(&m, p, &MoveSet::for_dim(2)).unwrap();
        assert!(!n.iter().any(|(q, _)| *q == Point::new2(2, 2)));
        // Cardinal moves toward free cells stay.
        assert!(n.iter().any(|(q, _)| *q == Point::new2(0, 1)));
    }

    #[test]
    fn neighbors_open_3d_center() {
        let m = GridMap::empty(&[3, 3, 3]).unwrap();
        let n = neighbors(&m, Point::new3(1, 1, 1), &MoveSet::for_dim(3)).unwrap();
        assert_eq!(n.len(), 26);
    }

    #[test]
    fn neighbors_rejects_bad_origin() {
        let m = map_2d(3, 3, &[(1, 1)]);
        assert_eq!(
            neighbors(&m, Point::new2(1, 1), &MoveSet::for_dim(2)),
            Err(GridError::BlockedCell(Point::new2(1, 1)))
        );
        assert_eq!(
            neighbors(&m, Point::new2(5, 5), &MoveSet::for_dim(2)),
            Err(GridError::OutOfBounds(Point::new2(5, 5)))
        );
    }

    #[test]
    fn corner_rule_never_removes_cardinals() {
        let m = map_2d(3, 3, &[(0, 0), (2, 0), (0, 2), (2, 2)]);
        let n = neighbors(&m, Point::new2(1, 1), &MoveSet::for_dim(2)).unwrap();
        for q in [(1, 0), (0, 1), (2, 1), (1, 2)] {
            assert!(n.iter().any(|(c, _)| *c == Point::new2(q.0, q.1)));
        }
        assert_eq!(n.len(), 4);
    }

    #[test]
    fn los_trivial_cases() {
        let m = map_2d(5, 5, &[]);
        let a = Point::new2(1, 1);
        assert!(line_of_sight(&m, a, a).unwrap());
        assert!(line_of_sight(&m, Point::new2(0, 2), Point::new2(4, 2)).unwrap());
    }

    #[test]
    fn los_blocked_column() {
        let m = map_2d(5, 5, &[(2, 0), (2, 1), (2, 2), (2, 3), (2, 4)]);
        assert!(!line_of_sight(&m, Point::new2(0, 1), Point::new2(4, 3)).unwrap());
    }

    #[test]
    fn los_bounds_error() {
        let m = map_2d(3, 3, &[]);
        assert!(line_of_sight(&m, Point::new2(0, 0), Point::new2(9, 9)).is_err());
    }

    #[test]
    fn solvable_degenerate_and_walled() {
        let m = map_2d(5, 5, &[]);
        let s = Scenario::new(
            Arc::new(m),
            Point::new2(2, 2),
            Point::new2(2, 2),
            0,
        )
        .unwrap();
        assert!(is_solvable(&s, &MoveSet::for_dim(2)));

        let wall: Vec<(i32, i32)> = (0..5).map(|y| (2, y)).collect();
        let m = map_2d(5, 5, &wall);
        let s = Scenario::new(Arc::new(m), Point::new2(0, 2), Point::new2(4, 2), 0).unwrap();
        assert!(!is_solvable(&s, &MoveSet::for_dim(2)));
    }

    #[test]
    fn scenario_validates_endpoints() {
        let m = Arc::new(map_2d(4, 4, &[(1, 1)]));
        assert!(Scenario::new(m.clone(), Point::new2(1, 1), Point::new2(0, 0), 0).is_err());
        assert!(Scenario::new(m, Point::new2(0, 0), Point::new2(8, 0), 0).is_err());
    }

    #[test]
    fn path_cost_and_validation() {
        let m = map_2d(4, 4, &[]);
        let p = Path::from_points(vec![
            Point::new2(0, 0),
            Point::new2(1, 1),
            Point::new2(2, 1),
        ]);
        assert!((p.cost() - (2.0f64).sqrt() - 1.0).abs() < 1e-12);
        p.validate(&m, Connectivity::GridAdjacent, &MoveSet::for_dim(2))
            .unwrap();

        let bad = Path::from_points(vec![Point::new2(0, 0), Point::new2(2, 2)]);
        assert!(matches!(
            bad.validate(&m, Connectivity::GridAdjacent, &MoveSet::for_dim(2)),
            Err(PathError::Disconnected(..))
        ));
        bad.validate(&m, Connectivity::LineOfSight, &MoveSet::for_dim(2))
            .unwrap();
    }

    #[test]
    fn entity_placement_checks() {
        let m = map_2d(4, 4, &[(1, 1)]);
        assert!(m.with_agent(Point::new2(1, 1)).is_err());
        let m = m.with_agent(Point::new2(0, 0)).unwrap();
        assert_eq!(m.agent(), Some(Point::new2(0, 0)));
    }
}
