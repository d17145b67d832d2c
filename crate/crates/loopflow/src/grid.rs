//! The staggered grid: cell-valued potentials, edge-valued fluxes, and
//! node-valued divergences.
//!
//! Geometry. A `width x height` grid has unit square cells `(i, j)` with
//! `0 <= i < width`, `0 <= j < height` (x right, y up), lattice nodes
//! `(i, j)` with `0 <= i <= width`, `0 <= j <= height`, and edges between
//! adjacent nodes:
//!
//! * `H(i, j)` runs from node `(i, j)` to node `(i+1, j)`; positive flux
//!   points in `+x`. It separates cell `(i, j-1)` below from `(i, j)` above.
//! * `V(i, j)` runs from node `(i, j)` to node `(i, j+1)`; positive flux
//!   points in `+y`. It separates cell `(i-1, j)` left from `(i, j)` right.
//!
//! Cells outside the grid always read as potential zero ("the exterior").
//!
//! The central identity: [`perp_gradient`] sends a potential `f` to the flux
//! with `H(i,j) = f(i,j-1) - f(i,j)` and `V(i,j) = f(i,j) - f(i-1,j)` (the
//! finite-difference gradient rotated a quarter turn). Its image is exactly
//! the divergence-free fluxes, the map is inverted by
//! [`integrate_potential`], and it is an isometry: the total variation of
//! `f` over cell adjacencies equals the total absolute flux of its image.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarMode};

/// Grid dimensions in cells. Both sides are at least 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GridSpec {
    pub width: u32,
    pub height: u32,
}

impl GridSpec {
    pub fn new(width: u32, height: u32) -> Self {
        assert!(width >= 1 && height >= 1, "grid must have positive size");
        GridSpec { width, height }
    }

    pub fn cell_count(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn contains_cell(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as u64) < self.width as u64 && (y as u64) < self.height as u64
    }

    pub fn contains_node(&self, node: Node) -> bool {
        node.x <= self.width && node.y <= self.height
    }

    /// All cells in row-major order (y outer, x inner).
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        let (w, h) = (self.width, self.height);
        (0..h).flat_map(move |y| (0..w).map(move |x| Cell { x, y }))
    }

    /// All nodes in row-major order.
    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        let (w, h) = (self.width, self.height);
        (0..=h).flat_map(move |y| (0..=w).map(move |x| Node { x, y }))
    }

    /// All edges, horizontal rows first, each row-major.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let (w, h) = (self.width, self.height);
        let hs = (0..=h).flat_map(move |j| (0..w).map(move |i| Edge::H(i, j)));
        let vs = (0..h).flat_map(move |j| (0..=w).map(move |i| Edge::V(i, j)));
        hs.chain(vs)
    }

    pub(crate) fn expect_same(&self, other: &GridSpec) {
        assert_eq!(
            self, other,
            "operands live on different grids ({}x{} vs {}x{})",
            self.width, self.height, other.width, other.height
        );
    }

    pub fn check_same(&self, other: &GridSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GridMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ))
        }
    }
}

/// A unit cell, addressed by its lower-left corner.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub x: u32,
    pub y: u32,
}

/// A lattice node (corner point).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Node {
    pub x: u32,
    pub y: u32,
}

impl Node {
    pub fn new(x: u32, y: u32) -> Self {
        Node { x, y }
    }
}

/// An edge address. `H(i, j)` and `V(i, j)` as described in the module docs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Edge {
    H(u32, u32),
    V(u32, u32),
}

impl Edge {
    /// Tail node of the canonical orientation (+x for H, +y for V).
    pub fn tail(&self) -> Node {
        match *self {
            Edge::H(i, j) | Edge::V(i, j) => Node { x: i, y: j },
        }
    }

    /// Head node of the canonical orientation.
    pub fn head(&self) -> Node {
        match *self {
            Edge::H(i, j) => Node { x: i + 1, y: j },
            Edge::V(i, j) => Node { x: i, y: j + 1 },
        }
    }
}

/// A potential: one scalar per cell, implicitly zero outside the grid.
#[derive(Clone, PartialEq, Debug)]
pub struct CellField<S: Scalar> {
    grid: GridSpec,
    cells: Vec<S>,
}

impl<S: Scalar> CellField<S> {
    pub fn zeros(grid: GridSpec) -> Self {
        CellField {
            grid,
            cells: vec![S::zero(); grid.cell_count()],
        }
    }

    pub fn from_rows(grid: GridSpec, rows: Vec<Vec<S>>) -> Result<Self> {
        if rows.len() != grid.height as usize
            || rows.iter().any(|r| r.len() != grid.width as usize)
        {
            return Err(Error::Parse(format!(
                "cell rows do not match a {}x{} grid",
                grid.width, grid.height
            )));
        }
        Ok(CellField {
            grid,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    fn index(&self, x: u32, y: u32) -> usize {
        debug_assert!(self.grid.contains_cell(x as i64, y as i64));
        y as usize * self.grid.width as usize + x as usize
    }

    pub fn get(&self, cell: Cell) -> &S {
        &self.cells[self.index(cell.x, cell.y)]
    }

    /// Read with the exterior convention: out-of-grid cells are zero.
    pub fn get_or_zero(&self, x: i64, y: i64) -> S {
        if self.grid.contains_cell(x, y) {
            self.cells[y as usize * self.grid.width as usize + x as usize].clone()
        } else {
            S::zero()
        }
    }

    pub fn set(&mut self, cell: Cell, value: S) {
        let idx = self.index(cell.x, cell.y);
        self.cells[idx] = value;
    }

    pub fn add_at(&mut self, cell: Cell, value: S) {
        let idx = self.index(cell.x, cell.y);
        self.cells[idx] += value;
    }

    pub fn values(&self) -> &[S] {
        &self.cells
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|v| v.is_zero())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CellField<T> {
        CellField {
            grid: self.grid,
            cells: self.cells.iter().map(f).collect(),
        }
    }

    /// Pointwise sum; panics on grid mismatch.
    pub fn add(&self, other: &CellField<S>) -> CellField<S> {
        self.grid.expect_same(&other.grid);
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        CellField { grid: self.grid, cells }
    }

    /// Pointwise difference; panics on grid mismatch.
    pub fn sub(&self, other: &CellField<S>) -> CellField<S> {
        self.grid.expect_same(&other.grid);
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        CellField { grid: self.grid, cells }
    }

    pub fn scale(&self, factor: &S) -> CellField<S> {
        self.map(|v| v.clone() * factor.clone())
    }
}

/// A flux: one signed scalar per edge.
#[derive(Clone, PartialEq, Debug)]
pub struct EdgeFlux<S: Scalar> {
    grid: GridSpec,
    h: Vec<S>, // (height+1) rows of width values
    v: Vec<S>, // height rows of (width+1) values
}

impl<S: Scalar> EdgeFlux<S> {
    pub fn zeros(grid: GridSpec) -> Self {
        let w = grid.width as usize;
        let h = grid.height as usize;
        EdgeFlux {
            grid,
            h: vec![S::zero(); w * (h + 1)],
            v: vec![S::zero(); (w + 1) * h],
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    fn h_index(&self, i: u32, j: u32) -> usize {
        debug_assert!(i < self.grid.width && j <= self.grid.height);
        j as usize * self.grid.width as usize + i as usize
    }

    fn v_index(&self, i: u32, j: u32) -> usize {
        debug_assert!(i <= self.grid.width && j < self.grid.height);
        j as usize * (self.grid.width as usize + 1) + i as usize
    }

    pub fn get(&self, edge: Edge) -> &S {
        match edge {
            Edge::H(i, j) => &self.h[self.h_index(i, j)],
            Edge::V(i, j) => &self.v[self.v_index(i, j)],
        }
    }

    pub fn set(&mut self, edge: Edge, value: S) {
        match edge {
            Edge::H(i, j) => {
                let idx = self.h_index(i, j);
                self.h[idx] = value;
            }
            Edge::V(i, j) => {
                let idx = self.v_index(i, j);
                self.v[idx] = value;
            }
        }
    }

    pub fn add_at(&mut self, edge: Edge, value: S) {
        match edge {
            Edge::H(i, j) => {
                let idx = self.h_index(i, j);
                self.h[idx] += value;
            }
            Edge::V(i, j) => {
                let idx = self.v_index(i, j);
                self.v[idx] += value;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().chain(self.v.iter()).all(|q| q.is_zero())
    }

    pub fn support_size(&self) -> usize {
        self.h.iter().chain(self.v.iter()).filter(|q| !q.is_zero()).count()
    }

    /// Pointwise sum; panics on grid mismatch.
    pub fn add(&self, other: &EdgeFlux<S>) -> EdgeFlux<S> {
        self.grid.expect_same(&other.grid);
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    /// Pointwise difference; panics on grid mismatch.
    pub fn sub(&self, other: &EdgeFlux<S>) -> EdgeFlux<S> {
        self.grid.expect_same(&other.grid);
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    fn zip(&self, other: &EdgeFlux<S>, f: impl Fn(&S, &S) -> S) -> EdgeFlux<S> {
        EdgeFlux {
            grid: self.grid,
            h: self.h.iter().zip(&other.h).map(|(a, b)| f(a, b)).collect(),
            v: self.v.iter().zip(&other.v).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Pointwise scaling.
    pub fn scale(&self, factor: &S) -> EdgeFlux<S> {
        EdgeFlux {
            grid: self.grid,
            h: self.h.iter().map(|a| a.clone() * factor.clone()).collect(),
            v: self.v.iter().map(|a| a.clone() * factor.clone()).collect(),
        }
    }

    /// Largest absolute difference against another flux (diagnostic).
    pub fn max_abs_difference(&self, other: &EdgeFlux<S>) -> S {
        self.grid.expect_same(&other.grid);
        let mut worst = S::zero();
        for (a, b) in self.h.iter().zip(&other.h).chain(self.v.iter().zip(&other.v)) {
            let d = (a.clone() - b.clone()).abs();
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    /// Rows of horizontal fluxes, bottom row first (for serialization).
    pub fn h_rows(&self) -> Vec<&[S]> {
        let w = self.grid.width as usize;
        self.h.chunks(w).collect()
    }

    /// Rows of vertical fluxes, bottom row first.
    pub fn v_rows(&self) -> Vec<&[S]> {
        let w = self.grid.width as usize + 1;
        self.v.chunks(w).collect()
    }
}

/// Net outflow per node.
#[derive(Clone, PartialEq, Debug)]
pub struct NodeDivergence<S: Scalar> {
    grid: GridSpec,
    values: Vec<S>, // (width+1) x (height+1), row-major
}

impl<S: Scalar> NodeDivergence<S> {
    pub fn zeros(grid: GridSpec) -> Self {
        let n = (grid.width as usize + 1) * (grid.height as usize + 1);
        NodeDivergence { grid, values: vec![S::zero(); n] }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    fn index(&self, node: Node) -> usize {
        debug_assert!(self.grid.contains_node(node));
        node.y as usize * (self.grid.width as usize + 1) + node.x as usize
    }

    pub fn get(&self, node: Node) -> &S {
        &self.values[self.index(node)]
    }

    pub fn set(&mut self, node: Node, value: S) {
        let idx = self.index(node);
        self.values[idx] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Sum of positive parts (total source strength).
    pub fn positive_mass(&self) -> S {
        let mut acc = S::zero();
        for v in &self.values {
            if v.sign() > 0 {
                acc += v.clone();
            }
        }
        acc
    }
}

/// Net outflow at every node: flux on edges leaving the node minus flux on
/// edges entering it, under the canonical orientations (+x, +y).
///
/// A single unit on `H(0,0)` produces +1 at node (0,0) and -1 at node (1,0).
pub fn divergence<S: Scalar>(mu: &EdgeFlux<S>) -> NodeDivergence<S> {
    let grid = mu.grid();
    let mut div = NodeDivergence::zeros(grid);
    for node in grid.nodes() {
        let (x, y) = (node.x, node.y);
        let mut d = S::zero();
        if x < grid.width {
            d += mu.get(Edge::H(x, y)).clone(); // leaves toward +x
        }
        if y < grid.height {
            d += mu.get(Edge::V(x, y)).clone(); // leaves toward +y
        }
        if x > 0 {
            d -= mu.get(Edge::H(x - 1, y)).clone(); // enters from -x
        }
        if y > 0 {
            d -= mu.get(Edge::V(x, y - 1)).clone(); // enters from -y
        }
        div.set(node, d);
    }
    div
}

/// Total mass of the flux: the sum of absolute values over all edges.
pub fn total_variation<S: Scalar>(mu: &EdgeFlux<S>) -> S {
    let mut acc = S::zero();
    for e in mu.grid().edges() {
        acc += mu.get(e).abs();
    }
    acc
}

/// The quarter-turn gradient: potential differences across each edge,
/// rotated so the result is always divergence-free.
///
/// `H(i,j) = f(i,j-1) - f(i,j)` (cell below minus cell above) and
/// `V(i,j) = f(i,j) - f(i-1,j)` (cell right minus cell left), with
/// out-of-grid cells reading zero. The indicator of a single cell maps to a
/// unit of clockwise circulation around that cell.
pub fn perp_gradient<S: Scalar>(f: &CellField<S>) -> EdgeFlux<S> {
    let grid = f.grid();
    let mut mu = EdgeFlux::zeros(grid);
    for e in grid.edges() {
        let q = match e {
            Edge::H(i, j) => {
                f.get_or_zero(i as i64, j as i64 - 1) - f.get_or_zero(i as i64, j as i64)
            }
            Edge::V(i, j) => {
                f.get_or_zero(i as i64, j as i64) - f.get_or_zero(i as i64 - 1, j as i64)
            }
        };
        mu.set(e, q);
    }
    mu
}

/// Exterior plus all cells, as the dual graph walked by potential
/// integration. `None` is the exterior pseudo-cell (potential 0).
fn cell_id(grid: GridSpec, x: i64, y: i64) -> Option<usize> {
    grid.contains_cell(x, y)
        .then(|| y as usize * grid.width as usize + x as usize)
}

/// Recover the unique potential `f` with `perp_gradient(f) = mu` and `f = 0`
/// outside the grid.
///
/// Fails with [`Error::NotDivergenceFree`] if any node has nonzero net
/// outflow (beyond tolerance in float mode). After the breadth-first sweep
/// every edge equation is re-checked; a discrepancy (possible only through
/// float accumulation) is reported as [`Error::InconsistentCirculation`].
pub fn integrate_potential<S: Scalar>(mu: &EdgeFlux<S>) -> Result<CellField<S>> {
    let grid = mu.grid();

    let div = divergence(mu);
    for node in grid.nodes() {
        let d = div.get(node);
        let clean = match S::MODE {
            ScalarMode::Rational => d.is_zero(),
            ScalarMode::Float => d.approx_zero(),
        };
        if !clean {
            return Err(Error::NotDivergenceFree {
                node,
                residual: d.to_string(),
            });
        }
    }

    // Breadth-first sweep over cells from the exterior. Crossing an edge
    // fixes the neighbor's value from the edge equation:
    //   across H(i,j):  f(i,j) = f(i,j-1) - H(i,j)
    //   across V(i,j):  f(i,j) = f(i-1,j) + V(i,j)
    let mut f = CellField::zeros(grid);
    let mut known = vec![false; grid.cell_count()];
    let mut queue = std::collections::VecDeque::new();

    let learn = |f: &mut CellField<S>,
                     known: &mut Vec<bool>,
                     queue: &mut std::collections::VecDeque<usize>,
                     x: i64,
                     y: i64,
                     value: S| {
        if let Some(id) = cell_id(grid, x, y) {
            if !known[id] {
                known[id] = true;
                f.set(Cell { x: x as u32, y: y as u32 }, value);
                queue.push_back(id);
            }
        }
    };

    // Seed: every cell adjacent to the exterior through one of its edges.
    for i in 0..grid.width {
        // bottom row via H(i, 0): f(i,0) = 0 - H(i,0)
        learn(&mut f, &mut known, &mut queue, i as i64, 0, -mu.get(Edge::H(i, 0)).clone());
        // top row via H(i, height): f(i,h-1) = 0 + H(i,h)
        learn(
            &mut f,
            &mut known,
            &mut queue,
            i as i64,
            grid.height as i64 - 1,
            mu.get(Edge::H(i, grid.height)).clone(),
        );
    }
    for j in 0..grid.height {
        // left column via V(0, j): f(0,j) = 0 + V(0,j)
        learn(&mut f, &mut known, &mut queue, 0, j as i64, mu.get(Edge::V(0, j)).clone());
        // right column via V(width, j): f(w-1,j) = 0 - V(w,j)
        learn(
            &mut f,
            &mut known,
            &mut queue,
            grid.width as i64 - 1,
            j as i64,
            -mu.get(Edge::V(grid.width, j)).clone(),
        );
    }

    while let Some(id) = queue.pop_front() {
        let x = (id % grid.width as usize) as i64;
        let y = (id / grid.width as usize) as i64;
        let here = f.get(Cell { x: x as u32, y: y as u32 }).clone();
        // Neighbor above through H(x, y+1): f(x,y+1) = f(x,y) - H(x,y+1)
        learn(
            &mut f,
            &mut known,
            &mut queue,
            x,
            y + 1,
            here.clone() - mu.get(Edge::H(x as u32, y as u32 + 1)).clone(),
        );
        // Neighbor below through H(x, y): f(x,y-1) = f(x,y) + H(x,y)
        learn(
            &mut f,
            &mut known,
            &mut queue,
            x,
            y - 1,
            here.clone() + mu.get(Edge::H(x as u32, y as u32)).clone(),
        );
        // Neighbor right through V(x+1, y): f(x+1,y) = f(x,y) + V(x+1,y)
        learn(
            &mut f,
            &mut known,
            &mut queue,
            x + 1,
            y,
            here.clone() + mu.get(Edge::V(x as u32 + 1, y as u32)).clone(),
        );
        // Neighbor left through V(x, y): f(x-1,y) = f(x,y) - V(x,y)
        learn(
            &mut f,
            &mut known,
            &mut queue,
            x - 1,
            y,
            here - mu.get(Edge::V(x as u32, y as u32)).clone(),
        );
    }
    debug_assert!(known.iter().all(|&k| k), "cell graph is connected via the exterior");

    // Re-check every edge equation (covers all non-tree adjacencies).
    for e in grid.edges() {
        let (below_left, above_right, cells) = match e {
            Edge::H(i, j) => (
                f.get_or_zero(i as i64, j as i64 - 1),
                f.get_or_zero(i as i64, j as i64),
                (
                    Cell { x: i, y: j.saturating_sub(1) },
                    Cell { x: i, y: j.min(grid.height - 1) },
                ),
            ),
            Edge::V(i, j) => (
                f.get_or_zero(i as i64, j as i64),
                f.get_or_zero(i as i64 - 1, j as i64),
                (
                    Cell { x: i.saturating_sub(1), y: j },
                    Cell { x: i.min(grid.width - 1), y: j },
                ),
            ),
        };
        let implied = below_left - above_right;
        let actual = mu.get(e).clone();
        let ok = match S::MODE {
            ScalarMode::Rational => implied == actual,
            ScalarMode::Float => implied.approx_eq(&actual),
        };
        if !ok {
            return Err(Error::InconsistentCirculation {
                cells,
                discrepancy: (implied - actual).to_string(),
            });
        }
    }

    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn rat(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn field_from_ints(w: u32, h: u32, rows: &[&[i64]]) -> CellField<Rational> {
        // `rows` are written top row first for readability; flip to y-up.
        let grid = GridSpec::new(w, h);
        let mut f = CellField::zeros(grid);
        for (r, row) in rows.iter().enumerate() {
            for (x, &v) in row.iter().enumerate() {
                let y = h as usize - 1 - r;
                f.set(Cell { x: x as u32, y: y as u32 }, rat(v));
            }
        }
        f
    }

    #[test]
    fn single_horizontal_edge_divergence() {
        let grid = GridSpec::new(2, 2);
        let mut mu = EdgeFlux::<Rational>::zeros(grid);
        mu.set(Edge::H(0, 0), rat(1));
        let d = divergence(&mu);
        assert_eq!(*d.get(Node::new(0, 0)), rat(1));
        assert_eq!(*d.get(Node::new(1, 0)), rat(-1));
        for node in grid.nodes() {
            if node != Node::new(0, 0) && node != Node::new(1, 0) {
                assert!(d.get(node).is_zero());
            }
        }
    }

    #[test]
    fn single_cell_indicator_is_clockwise_unit_loop() {
        let f = field_from_ints(1, 1, &[&[1]]);
        let mu = perp_gradient(&f);
        assert_eq!(*mu.get(Edge::V(0, 0)), rat(1)); // left side, up
        assert_eq!(*mu.get(Edge::H(0, 1)), rat(1)); // top, right
        assert_eq!(*mu.get(Edge::V(1, 0)), rat(-1)); // right side, down
        assert_eq!(*mu.get(Edge::H(0, 0)), rat(-1)); // bottom, left
        assert_eq!(total_variation(&mu), rat(4));
        assert!(divergence(&mu).is_zero());
    }

    #[test]
    fn perp_gradient_is_always_divergence_free() {
        let f = field_from_ints(
            4,
            3,
            &[&[0, 2, -1, 3], &[5, -2, 0, 1], &[1, 1, 4, -3]],
        );
        assert!(divergence(&perp_gradient(&f)).is_zero());
    }

    #[test]
    fn integrate_recovers_potential_exactly() {
        let f = field_from_ints(
            5,
            4,
            &[
                &[0, 1, 1, 2, 0],
                &[3, -1, 2, 2, 1],
                &[3, 0, 0, -5, 1],
                &[2, 2, 7, 1, -4],
            ],
        );
        let mu = perp_gradient(&f);
        let g = integrate_potential(&mu).unwrap();
        assert_eq!(f, g);
        assert_eq!(perp_gradient(&g), mu);
    }

    #[test]
    fn integrate_rejects_divergent_flux() {
        let grid = GridSpec::new(2, 2);
        let mut mu = EdgeFlux::<Rational>::zeros(grid);
        mu.set(Edge::H(0, 1), rat(1)); // an interior-ish open segment
        let err = integrate_potential(&mu).unwrap_err();
        match err {
            Error::NotDivergenceFree { node, .. } => assert_eq!(node, Node::new(0, 1)),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn variation_equals_flux_mass() {
        // The isometry on a handful of fields, checked edge-by-edge sums.
        let f = field_from_ints(3, 3, &[&[1, 0, 2], &[0, -1, 0], &[3, 0, 0]]);
        let direct = crate::pixel_sets::variation(&f);
        assert_eq!(direct, total_variation(&perp_gradient(&f)));
    }
}
