//! Finite pixel sets and their digital topology.
//!
//! Conventions (used consistently across the crate):
//!
//! * Member sets use 4-connectivity (edge adjacency).
//! * Complements use 8-connectivity (edge or corner adjacency), with
//!   everything outside the grid forming one designated exterior region.
//!   A *hole* is an 8-connected complement component that cannot reach the
//!   exterior; *saturating* a set fills its holes.
//! * A set is *simple* when it is nonempty, 4-connected, and its complement
//!   (exterior included) is 8-connected. Simple sets are the sets whose
//!   indicator functions generate the extreme points of the variation ball.
//! * The *perimeter* counts unit boundary edges (anisotropic, not
//!   Euclidean); with this choice every identity in the crate is exact.
//!
//! One wrinkle deserves a note because it is easy to get wrong. Under the
//! 4/8 convention a simple set may still have a *pinch corner*: two member
//! cells meeting diagonally while both opposite cells are complement, e.g.
//!
//! ```text
//!   . X X        X = member
//!   X o X        o = complement pocket, 8-connected to the
//!   X X X            outside only through the pinched corner
//! ```
//!
//! This set is simple (the pocket escapes diagonally), yet its boundary
//! edges form two edge-disjoint loops sharing the pinch node, so no single
//! *simple* closed curve traces them. [`boundary_cycles`] returns the loops
//! separately (each one simple); [`trace_boundary`] splices them into one
//! closed walk that repeats only pinch nodes, preserving the two identities
//! that matter: walk length = perimeter and walk measure = perp gradient of
//! the indicator. Sets without pinch corners (in particular everything the
//! decomposition pipeline produces, see [`fill_pockets`]) trace to a single
//! simple loop.

use crate::curves::LatticeCurve;
use crate::error::{Error, Result};
use crate::grid::{Cell, CellField, Edge, GridSpec, Node};
use crate::scalar::Scalar;

/// Adjacency notion for component labelling.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Connectivity {
    fn offsets(self) -> &'static [(i64, i64)] {
        match self {
            Connectivity::Four => &[(1, 0), (-1, 0), (0, 1), (0, -1)],
            Connectivity::Eight => &[
                (1, 0),
                (-1, 0),
                (0, 1),
                (0, -1),
                (1, 1),
                (1, -1),
                (-1, 1),
                (-1, -1),
            ],
        }
    }
}

/// A finite set of grid cells.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PixelSet {
    grid: GridSpec,
    cells: Vec<bool>,
}

impl PixelSet {
    pub fn empty(grid: GridSpec) -> Self {
        PixelSet {
            grid,
            cells: vec![false; grid.cell_count()],
        }
    }

    pub fn from_cells(grid: GridSpec, members: impl IntoIterator<Item = Cell>) -> Self {
        let mut set = PixelSet::empty(grid);
        for c in members {
            set.insert(c);
        }
        set
    }

    /// Bit `k` of `mask` is cell `(k mod width, k div width)`; handy for
    /// exhaustive enumeration over small grids.
    pub fn from_bit_mask(grid: GridSpec, mask: u64) -> Self {
        let mut set = PixelSet::empty(grid);
        let w = grid.width as u64;
        for k in 0..(grid.cell_count() as u64) {
            if mask >> k & 1 == 1 {
                set.insert(Cell {
                    x: (k % w) as u32,
                    y: (k / w) as u32,
                });
            }
        }
        set
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    fn index(&self, cell: Cell) -> usize {
        cell.y as usize * self.grid.width as usize + cell.x as usize
    }

    pub fn insert(&mut self, cell: Cell) {
        let idx = self.index(cell);
        self.cells[idx] = true;
    }

    pub fn remove(&mut self, cell: Cell) {
        let idx = self.index(cell);
        self.cells[idx] = false;
    }

    /// Membership with the exterior convention: out-of-grid is never a
    /// member.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.grid.contains_cell(x, y)
            && self.cells[y as usize * self.grid.width as usize + x as usize]
    }

    pub fn contains_cell(&self, cell: Cell) -> bool {
        self.cells[self.index(cell)]
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&b| b)
    }

    pub fn area(&self) -> u64 {
        self.cells.iter().filter(|&&b| b).count() as u64
    }

    /// Member cells in row-major order.
    pub fn members(&self) -> impl Iterator<Item = Cell> + '_ {
        self.grid.cells().filter(move |&c| self.contains_cell(c))
    }

    pub fn is_subset_of(&self, other: &PixelSet) -> bool {
        self.grid == other.grid
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &PixelSet) -> PixelSet {
        assert_eq!(self.grid, other.grid, "sets on different grids");
        PixelSet {
            grid: self.grid,
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(&a, &b)| a || b)
                .collect(),
        }
    }

    /// Indicator function as a cell field.
    pub fn indicator<S: Scalar>(&self) -> CellField<S> {
        let mut f = CellField::zeros(self.grid);
        for c in self.members() {
            f.set(c, S::one());
        }
        f
    }
}

/// Count of unit edges separating a member cell from a non-member cell
/// (exterior counts as non-member).
pub fn perimeter(set: &PixelSet) -> u64 {
    let mut count = 0;
    for c in set.members() {
        let (x, y) = (c.x as i64, c.y as i64);
        for (dx, dy) in Connectivity::Four.offsets() {
            if !set.contains(x + dx, y + dy) {
                count += 1;
            }
        }
    }
    count
}

/// Total variation of a field: the sum over every edge of the absolute
/// difference between the two adjacent cell values (out-of-grid cells read
/// zero, so the outer boundary contributes |f|).
pub fn variation<S: Scalar>(f: &CellField<S>) -> S {
    let mut acc = S::zero();
    for e in f.grid().edges() {
        let (a, b) = edge_sides(f, e);
        acc += (a - b).abs();
    }
    acc
}

/// The two cell values adjacent to an edge, exterior reading zero.
fn edge_sides<S: Scalar>(f: &CellField<S>, e: Edge) -> (S, S) {
    match e {
        Edge::H(i, j) => (
            f.get_or_zero(i as i64, j as i64 - 1),
            f.get_or_zero(i as i64, j as i64),
        ),
        Edge::V(i, j) => (
            f.get_or_zero(i as i64, j as i64),
            f.get_or_zero(i as i64 - 1, j as i64),
        ),
    }
}

/// Perimeter of the superlevel set `{f > t}`, counted directly on the field
/// so that thresholds below zero (where the superlevel set includes the
/// exterior) are handled correctly.
pub fn superlevel_perimeter<S: Scalar>(f: &CellField<S>, t: &S) -> u64 {
    let mut count = 0;
    for e in f.grid().edges() {
        let (a, b) = edge_sides(f, e);
        if (a > *t) != (b > *t) {
            count += 1;
        }
    }
    count
}

/// The cells with `f > t`. Meaningful as a finite set only for `t >= 0`;
/// callers slicing below zero must use [`superlevel_perimeter`].
pub fn strict_superlevel<S: Scalar>(f: &CellField<S>, t: &S) -> PixelSet {
    let mut set = PixelSet::empty(f.grid());
    for c in f.grid().cells() {
        if f.get(c) > t {
            set.insert(c);
        }
    }
    set
}

/// Partition of a set into connected components.
#[derive(Clone, Debug)]
pub struct ComponentDecomposition {
    pub connectivity: Connectivity,
    pub components: Vec<PixelSet>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Connected components under the given adjacency, ordered by their first
/// cell in row-major scan order.
pub fn components(set: &PixelSet, connectivity: Connectivity) -> ComponentDecomposition {
    let grid = set.grid();
    let mut seen = vec![false; grid.cell_count()];
    let mut comps = Vec::new();
    for start in grid.cells() {
        let start_idx = start.y as usize * grid.width as usize + start.x as usize;
        if !set.contains_cell(start) || seen[start_idx] {
            continue;
        }
        let mut comp = PixelSet::empty(grid);
        let mut stack = vec![start];
        seen[start_idx] = true;
        while let Some(c) = stack.pop() {
            comp.insert(c);
            for (dx, dy) in connectivity.offsets() {
                let (nx, ny) = (c.x as i64 + dx, c.y as i64 + dy);
                if set.contains(nx, ny) {
                    let idx = ny as usize * grid.width as usize + nx as usize;
                    if !seen[idx] {
                        seen[idx] = true;
                        stack.push(Cell {
                            x: nx as u32,
                            y: ny as u32,
                        });
                    }
                }
            }
        }
        comps.push(comp);
    }
    ComponentDecomposition {
        connectivity,
        components: comps,
    }
}

/// Empty or one 4-connected piece.
pub fn is_indecomposable(set: &PixelSet) -> bool {
    components(set, Connectivity::Four).len() <= 1
}

/// Complement cells (within the grid) that can reach the exterior through
/// complement cells under the given adjacency. Returned as a flag per cell.
fn complement_exterior_reach(set: &PixelSet, connectivity: Connectivity) -> Vec<bool> {
    let grid = set.grid();
    let w = grid.width as usize;
    let mut reached = vec![false; grid.cell_count()];
    let mut stack = Vec::new();
    // Seed: complement cells on the grid border (adjacent to the exterior
    // under both adjacency notions).
    for c in grid.cells() {
        let border = c.x == 0 || c.y == 0 || c.x == grid.width - 1 || c.y == grid.height - 1;
        if border && !set.contains_cell(c) {
            let idx = c.y as usize * w + c.x as usize;
            if !reached[idx] {
                reached[idx] = true;
                stack.push(c);
            }
        }
    }
    while let Some(c) = stack.pop() {
        for (dx, dy) in connectivity.offsets() {
            let (nx, ny) = (c.x as i64 + dx, c.y as i64 + dy);
            if grid.contains_cell(nx, ny) && !set.contains(nx, ny) {
                let idx = ny as usize * w + nx as usize;
                if !reached[idx] {
                    reached[idx] = true;
                    stack.push(Cell {
                        x: nx as u32,
                        y: ny as u32,
                    });
                }
            }
        }
    }
    reached
}

/// The holes of an indecomposable set: 8-connected complement components
/// that cannot reach the exterior. Each hole is finite by construction.
pub fn holes(set: &PixelSet) -> Result<Vec<PixelSet>> {
    let comps = components(set, Connectivity::Four).len();
    if comps > 1 {
        return Err(Error::NotIndecomposable { components: comps });
    }
    Ok(trapped_complement(set, Connectivity::Eight).components)
}

/// Complement components (under `connectivity`) that cannot reach the
/// exterior.
fn trapped_complement(set: &PixelSet, connectivity: Connectivity) -> ComponentDecomposition {
    let grid = set.grid();
    let reach = complement_exterior_reach(set, connectivity);
    let mut trapped = PixelSet::empty(grid);
    for c in grid.cells() {
        let idx = c.y as usize * grid.width as usize + c.x as usize;
        if !set.contains_cell(c) && !reach[idx] {
            trapped.insert(c);
        }
    }
    components(&trapped, connectivity)
}

/// Label every complement cell with its 4-connected complement region:
/// label 0 is the outside region (all complement cells that reach the
/// exterior), labels 1.. are the enclosed pockets in scan order. Member
/// cells get `usize::MAX`.
fn complement_region_labels(set: &PixelSet) -> Vec<usize> {
    let grid = set.grid();
    let w = grid.width as usize;
    let reach = complement_exterior_reach(set, Connectivity::Four);
    let mut labels = vec![usize::MAX; grid.cell_count()];
    let mut next = 1;
    for start in grid.cells() {
        let start_idx = start.y as usize * w + start.x as usize;
        if set.contains_cell(start) || labels[start_idx] != usize::MAX {
            continue;
        }
        let label = if reach[start_idx] {
            0
        } else {
            next += 1;
            next - 1
        };
        let mut stack = vec![start];
        labels[start_idx] = label;
        while let Some(c) = stack.pop() {
            for (dx, dy) in Connectivity::Four.offsets() {
                let (nx, ny) = (c.x as i64 + dx, c.y as i64 + dy);
                if grid.contains_cell(nx, ny) && !set.contains(nx, ny) {
                    let idx = ny as usize * w + nx as usize;
                    if labels[idx] == usize::MAX {
                        labels[idx] = label;
                        stack.push(Cell {
                            x: nx as u32,
                            y: ny as u32,
                        });
                    }
                }
            }
        }
    }
    labels
}

/// Fill the holes: `E` together with all of [`holes`]. The result is simple
/// (when `E` is nonempty), its perimeter satisfies
/// `P(E) = P(saturate(E)) + sum of P(hole)` exactly, and saturation is
/// idempotent and monotone on nested indecomposable sets.
pub fn saturate(set: &PixelSet) -> Result<PixelSet> {
    let mut out = set.clone();
    for hole in holes(set)? {
        out = out.union(&hole);
    }
    Ok(out)
}

/// Add every complement region that cannot reach the exterior through
/// edge-adjacent complement cells.
///
/// This is a stronger fill than [`saturate`]: it also closes pockets whose
/// only escape is squeezing diagonally through a pinch corner. The result
/// has no pinch corners at all, so its boundary is a single simple loop;
/// the monotone decomposition pipeline relies on this to emit genuinely
/// simple curves. (On pinch-free sets it agrees with [`saturate`].)
pub fn fill_pockets(set: &PixelSet) -> PixelSet {
    let mut out = set.clone();
    for pocket in trapped_complement(set, Connectivity::Four).components {
        out = out.union(&pocket);
    }
    out
}

/// Nonempty, 4-connected, and the complement (with the exterior) is
/// 8-connected; equivalently indecomposable with no holes.
pub fn is_simple(set: &PixelSet) -> bool {
    if set.is_empty() {
        return false;
    }
    if components(set, Connectivity::Four).len() != 1 {
        return false;
    }
    let reach = complement_exterior_reach(set, Connectivity::Eight);
    set.grid().cells().all(|c| {
        let idx = c.y as usize * set.grid().width as usize + c.x as usize;
        set.contains_cell(c) || reach[idx]
    })
}

/// Cells around a node: (ne, nw, sw, se) membership.
fn cells_at_node(set: &PixelSet, n: Node) -> (bool, bool, bool, bool) {
    let (x, y) = (n.x as i64, n.y as i64);
    (
        set.contains(x, y),
        set.contains(x - 1, y),
        set.contains(x - 1, y - 1),
        set.contains(x, y - 1),
    )
}

/// Direction of boundary traversal for an edge, if it is a boundary edge:
/// the direction making the accumulated walk measure equal the perp
/// gradient of the indicator (member side on the walker's right; loops run
/// clockwise around the set).
fn boundary_arc(set: &PixelSet, e: Edge) -> Option<(Node, Node)> {
    match e {
        Edge::H(i, j) => {
            let below = set.contains(i as i64, j as i64 - 1);
            let above = set.contains(i as i64, j as i64);
            match (below, above) {
                (true, false) => Some((e.tail(), e.head())), // east
                (false, true) => Some((e.head(), e.tail())), // west
                _ => None,
            }
        }
        Edge::V(i, j) => {
            let right = set.contains(i as i64, j as i64);
            let left = set.contains(i as i64 - 1, j as i64);
            match (right, left) {
                (true, false) => Some((e.tail(), e.head())), // north
                (false, true) => Some((e.head(), e.tail())), // south
                _ => None,
            }
        }
    }
}

/// The boundary of any pixel set, decomposed into edge-disjoint simple
/// closed loops, each oriented clockwise around the member side (so the
/// summed loop measures equal the perp gradient of the indicator).
///
/// Loops are ordered by their smallest starting edge; the sum of their
/// lengths is the perimeter. Most sets yield familiar pictures: one loop
/// per 4-component plus one per enclosed complement region. At a pinch
/// corner (see module docs) the walk continues along the complement region
/// it has been skirting, so each region keeps one simple contour.
pub fn boundary_cycles(set: &PixelSet) -> Vec<LatticeCurve> {
    let grid = set.grid();
    let labels = complement_region_labels(set);
    let mut arc_of_edge: std::collections::HashMap<Edge, (Node, Node)> =
        std::collections::HashMap::new();
    let mut out_arcs: std::collections::HashMap<Node, Vec<Edge>> =
        std::collections::HashMap::new();
    let mut edge_order = Vec::new();
    for e in grid.edges() {
        if let Some((from, to)) = boundary_arc(set, e) {
            arc_of_edge.insert(e, (from, to));
            out_arcs.entry(from).or_default().push(e);
            edge_order.push(e);
        }
    }

    let mut used: std::collections::HashSet<Edge> = std::collections::HashSet::new();
    let mut cycles = Vec::new();

    for &start_edge in &edge_order {
        if used.contains(&start_edge) {
            continue;
        }
        let (start_node, mut here) = arc_of_edge[&start_edge];
        used.insert(start_edge);
        let mut nodes = vec![start_node, here];
        let mut incoming = step_direction(start_node, here);
        while here != start_node {
            let candidates: Vec<Edge> = out_arcs
                .get(&here)
                .map(|v| v.iter().copied().filter(|e| !used.contains(e)).collect())
                .unwrap_or_default();
            let next_edge = match candidates.len() {
                1 => candidates[0],
                2 => pick_at_pinch(set, &labels, here, incoming, &candidates),
                n => unreachable!("boundary node with {n} unused out-arcs"),
            };
            used.insert(next_edge);
            let (_, to) = arc_of_edge[&next_edge];
            incoming = step_direction(here, to);
            nodes.push(to);
            here = to;
        }
        let cycle = LatticeCurve::closed(nodes).expect("boundary walk closes");
        debug_assert!(cycle.is_simple(), "pinch pairing keeps each loop simple");
        cycles.push(cycle);
    }
    cycles
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Dir {
    East,
    North,
    West,
    South,
}

fn step_direction(from: Node, to: Node) -> Dir {
    let dx = to.x as i64 - from.x as i64;
    let dy = to.y as i64 - from.y as i64;
    match (dx, dy) {
        (1, 0) => Dir::East,
        (0, 1) => Dir::North,
        (-1, 0) => Dir::West,
        (0, -1) => Dir::South,
        _ => unreachable!("non-unit step"),
    }
}

/// At a pinch node (two diagonal member cells) the walk has two unused
/// out-arcs, and no fixed turning rule serves every set: which pairing
/// keeps the loops simple depends on whether the two complement cells at
/// the corner belong to one complement region or two.
///
/// * Two regions (always the case inside a 4-connected set, where one
///   quadrant is a trapped pocket): the strands cross at the corner, so
///   each region keeps its own contour. One loop skirts the pocket, the
///   other skirts the outside.
/// * One region (two lobes of the set touching at the corner, possible
///   only when the set is 4-disconnected): the strands hug their lobes and
///   the corner splits the boundary into one loop per lobe.
///
/// In both cases every loop runs along exactly one complement region, and
/// a loop that revisited a node would have to run along two, so the
/// produced cycles are simple.
fn pick_at_pinch(
    set: &PixelSet,
    labels: &[usize],
    node: Node,
    incoming: Dir,
    candidates: &[Edge],
) -> Edge {
    let width = set.grid().width as usize;
    let label = |x: i64, y: i64| labels[y as usize * width + x as usize];
    let (x, y) = (node.x as i64, node.y as i64);
    let (ne, nw, sw, se) = cells_at_node(set, node);
    // A pinch has all four surrounding cells inside the grid, so the two
    // complement quadrants can be labelled directly.
    let wanted = match (ne && sw && !nw && !se, nw && se && !ne && !sw) {
        (true, false) => {
            let joined = label(x - 1, y) == label(x, y - 1);
            match incoming {
                Dir::East => {
                    if joined {
                        Dir::South
                    } else {
                        Dir::North
                    }
                }
                Dir::West => {
                    if joined {
                        Dir::North
                    } else {
                        Dir::South
                    }
                }
                _ => unreachable!("NE/SW pinch is entered horizontally"),
            }
        }
        (false, true) => {
            let joined = label(x, y) == label(x - 1, y - 1);
            match incoming {
                Dir::South => {
                    if joined {
                        Dir::West
                    } else {
                        Dir::East
                    }
                }
                Dir::North => {
                    if joined {
                        Dir::East
                    } else {
                        Dir::West
                    }
                }
                _ => unreachable!("NW/SE pinch is entered vertically"),
            }
        }
        _ => unreachable!("two out-arcs only occur at pinch corners"),
    };
    for &e in candidates {
        let to = if e.tail() == node { e.head() } else { e.tail() };
        if step_direction(node, to) == wanted {
            return e;
        }
    }
    unreachable!("pinch pairing direction must be among the candidates")
}

/// Trace the boundary of a simple set as one closed clockwise walk.
///
/// For pinch-free sets (everything without the module-doc corner pattern)
/// the result is the unique simple loop around the set. A pinched simple
/// set has no single simple boundary loop; the walk then revisits exactly
/// the pinch nodes. In all cases the walk length equals the perimeter and
/// the walk measure equals the perp gradient of the indicator.
pub fn trace_boundary(set: &PixelSet) -> Result<LatticeCurve> {
    if !is_simple(set) {
        return Err(Error::NotSimple);
    }
    let mut cycles = boundary_cycles(set);
    let mut walk = cycles.remove(0).nodes().to_vec();
    // Splice remaining loops in at a shared node (only pinched sets have
    // more than one loop).
    while !cycles.is_empty() {
        let mut spliced = false;
        for k in 0..cycles.len() {
            let cyc = cycles[k].nodes();
            // Position in the walk where this loop attaches.
            if let Some(i) = walk
                .iter()
                .position(|n| cyc[..cyc.len() - 1].contains(n))
            {
                let pivot = walk[i];
                let j = cyc.iter().position(|&n| n == pivot).unwrap();
                // Rotate the loop to start and end at the pivot, then
                // replace the walk's single pivot visit with the full
                // detour (pivot ... pivot), preserving unit steps.
                let mut rotated: Vec<Node> = Vec::with_capacity(cyc.len());
                rotated.extend_from_slice(&cyc[j..cyc.len() - 1]);
                rotated.extend_from_slice(&cyc[..=j]);
                walk.splice(i..=i, rotated.iter().copied());
                cycles.remove(k);
                spliced = true;
                break;
            }
        }
        assert!(
            spliced,
            "boundary loops of a simple set always share pinch nodes"
        );
    }
    LatticeCurve::closed(walk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::curve_measure;
    use crate::grid::perp_gradient;
    use crate::scalar::Rational;

    fn grid3() -> GridSpec {
        GridSpec::new(3, 3)
    }

    fn cell(x: u32, y: u32) -> Cell {
        Cell { x, y }
    }

    fn ring3(grid: GridSpec) -> PixelSet {
        PixelSet::from_cells(
            grid,
            (0..3)
                .flat_map(|x| (0..3).map(move |y| cell(x, y)))
                .filter(|c| !(c.x == 1 && c.y == 1)),
        )
    }

    /// The smallest simple set with a pinch corner: a C-shape whose pocket
    /// escapes only diagonally (see module docs).
    fn pinched_c(grid: GridSpec) -> PixelSet {
        PixelSet::from_cells(
            grid,
            [
                cell(0, 0),
                cell(1, 0),
                cell(2, 0),
                cell(0, 1),
                cell(2, 1),
                cell(1, 2),
                cell(2, 2),
            ],
        )
    }

    #[test]
    fn perimeter_examples() {
        let single = PixelSet::from_cells(grid3(), [cell(1, 1)]);
        assert_eq!(perimeter(&single), 4);
        let ring = ring3(grid3());
        assert_eq!(perimeter(&ring), 16);
        let two_by_two = PixelSet::from_cells(grid3(), [cell(0, 0), cell(1, 0), cell(0, 1), cell(1, 1)]);
        assert_eq!(perimeter(&two_by_two), 8);
    }

    #[test]
    fn component_counts_respect_connectivity() {
        let diag = PixelSet::from_cells(grid3(), [cell(0, 0), cell(1, 1)]);
        assert_eq!(components(&diag, Connectivity::Four).len(), 2);
        assert_eq!(components(&diag, Connectivity::Eight).len(), 1);
        assert!(!is_indecomposable(&diag));
        assert!(is_indecomposable(&PixelSet::empty(grid3())));
    }

    #[test]
    fn ring_has_center_hole() {
        let ring = ring3(grid3());
        let hs = holes(&ring).unwrap();
        assert_eq!(hs.len(), 1);
        assert_eq!(hs[0].area(), 1);
        assert!(hs[0].contains(1, 1));
        let sat = saturate(&ring).unwrap();
        assert_eq!(sat.area(), 9);
        assert!(is_simple(&sat));
        // Perimeter splits exactly across the fill.
        assert_eq!(perimeter(&ring), perimeter(&sat) + perimeter(&hs[0]));
        // Idempotence.
        assert_eq!(saturate(&sat).unwrap(), sat);
    }

    #[test]
    fn holes_require_indecomposable() {
        let diag = PixelSet::from_cells(grid3(), [cell(0, 0), cell(1, 1)]);
        assert!(matches!(
            holes(&diag),
            Err(Error::NotIndecomposable { components: 2 })
        ));
    }

    #[test]
    fn simple_characterizations_agree_exhaustively_3x3() {
        let grid = grid3();
        for mask in 0u64..512 {
            let set = PixelSet::from_bit_mask(grid, mask);
            let direct = is_simple(&set);
            let via_holes = !set.is_empty()
                && is_indecomposable(&set)
                && holes(&set).map(|h| h.is_empty()).unwrap_or(false);
            assert_eq!(direct, via_holes, "mask {mask}");
        }
    }

    #[test]
    fn single_pixel_boundary() {
        let grid = GridSpec::new(1, 1);
        let set = PixelSet::from_cells(grid, [cell(0, 0)]);
        let curve = trace_boundary(&set).unwrap();
        assert_eq!(curve.len(), 4);
        assert!(curve.is_simple() && curve.is_closed());
        let mu = curve_measure::<Rational>(grid, &curve);
        assert_eq!(mu, perp_gradient(&set.indicator()));
    }

    #[test]
    fn two_cell_block_boundary() {
        let grid = GridSpec::new(2, 1);
        let set = PixelSet::from_cells(grid, [cell(0, 0), cell(1, 0)]);
        let curve = trace_boundary(&set).unwrap();
        assert_eq!(curve.len() as u64, perimeter(&set));
        assert_eq!(curve.len(), 6);
        let mu = curve_measure::<Rational>(grid, &curve);
        assert_eq!(mu, perp_gradient(&set.indicator()));
    }

    #[test]
    fn pinched_set_is_simple_with_two_boundary_loops() {
        let set = pinched_c(grid3());
        assert!(is_simple(&set), "pocket escapes diagonally, so no hole");
        assert!(holes(&set).unwrap().is_empty());

        let cycles = boundary_cycles(&set);
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.is_simple()));
        let mut lengths: Vec<u64> = cycles.iter().map(|c| c.len() as u64).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![4, 12]);

        // The spliced walk keeps the identities but repeats the pinch node.
        let walk = trace_boundary(&set).unwrap();
        assert_eq!(walk.len() as u64, perimeter(&set));
        assert!(!walk.is_simple());
        let mu = curve_measure::<Rational>(set.grid(), &walk);
        assert_eq!(mu, perp_gradient(&set.indicator()));

        // Filling the pocket removes the pinch entirely.
        let filled = fill_pockets(&set);
        assert_eq!(filled.area(), 8);
        let single = trace_boundary(&filled).unwrap();
        assert!(single.is_simple());
        assert_eq!(single.len() as u64, perimeter(&filled));
    }

    #[test]
    fn boundary_loops_cover_components_and_holes() {
        let ring = ring3(grid3());
        let cycles = boundary_cycles(&ring);
        assert_eq!(cycles.len(), 2);
        let total: u64 = cycles.iter().map(|c| c.len() as u64).sum();
        assert_eq!(total, perimeter(&ring));
        // Summed measures still reproduce the perp gradient.
        let mut mu = crate::grid::EdgeFlux::<Rational>::zeros(grid3());
        for c in &cycles {
            mu = mu.add(&curve_measure(grid3(), c));
        }
        assert_eq!(mu, perp_gradient(&ring.indicator()));
    }

    #[test]
    fn filled_interior_recovers_the_set() {
        // trace, then integrate the loop measure back to an indicator.
        for set in [
            PixelSet::from_cells(grid3(), [cell(0, 0), cell(1, 0), cell(1, 1)]),
            saturate(&ring3(grid3())).unwrap(),
        ] {
            let curve = trace_boundary(&set).unwrap();
            let mu = curve_measure::<Rational>(set.grid(), &curve);
            let f = crate::grid::integrate_potential(&mu).unwrap();
            assert_eq!(f, set.indicator());
        }
    }

    #[test]
    fn variation_of_indicator_is_perimeter() {
        for mask in 0u64..512 {
            let set = PixelSet::from_bit_mask(grid3(), mask);
            let f: CellField<Rational> = set.indicator();
            assert_eq!(variation(&f), Rational::from_int(perimeter(&set) as i64));
        }
    }

    #[test]
    fn superlevel_perimeter_handles_negative_thresholds() {
        let grid = GridSpec::new(2, 1);
        let mut f = CellField::<Rational>::zeros(grid);
        f.set(cell(0, 0), Rational::from_int(-2));
        // {f > -1} = everything except cell (0,0): boundary is that cell's 4
        // edges.
        assert_eq!(superlevel_perimeter(&f, &Rational::from_int(-1)), 4);
        // {f > 0} is empty.
        assert_eq!(superlevel_perimeter(&f, &Rational::from_int(0)), 0);
    }
}
