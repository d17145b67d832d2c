//! Curves on the lattice and weighted superpositions of them.
//!
//! A [`LatticeCurve`] is a walk along grid edges: a node sequence where
//! consecutive nodes differ by one unit step. Closed curves repeat their
//! first node at the end. A [`CurveSuperposition`] attaches a positive
//! weight to each curve; [`superpose`](CurveSuperposition::superpose)
//! accumulates them into an [`EdgeFlux`], the inverse direction of the
//! decomposition routines.

use crate::error::{Error, Result};
use crate::grid::{Edge, EdgeFlux, GridSpec, Node};
use crate::scalar::Scalar;

/// One unit step between adjacent nodes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    East,
    North,
    West,
    South,
}

impl Step {
    pub fn between(a: Node, b: Node) -> Option<Step> {
        let dx = b.x as i64 - a.x as i64;
        let dy = b.y as i64 - a.y as i64;
        match (dx, dy) {
            (1, 0) => Some(Step::East),
            (0, 1) => Some(Step::North),
            (-1, 0) => Some(Step::West),
            (0, -1) => Some(Step::South),
            _ => None,
        }
    }

    /// The edge this step runs along and the sign of traversal relative to
    /// the edge's canonical orientation (+x for H, +y for V).
    pub fn edge_from(self, a: Node) -> (Edge, i8) {
        match self {
            Step::East => (Edge::H(a.x, a.y), 1),
            Step::West => (Edge::H(a.x - 1, a.y), -1),
            Step::North => (Edge::V(a.x, a.y), 1),
            Step::South => (Edge::V(a.x, a.y - 1), -1),
        }
    }
}

/// A walk along lattice edges, open or closed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeCurve {
    nodes: Vec<Node>,
    closed: bool,
}

impl LatticeCurve {
    /// An open curve from a node sequence (at least one step, unit steps).
    pub fn open(nodes: Vec<Node>) -> Result<Self> {
        Self::validate(&nodes)?;
        if nodes.first() == nodes.last() {
            return Err(Error::InvalidCurve(
                "open curve must not return to its start; use `closed`".into(),
            ));
        }
        Ok(LatticeCurve { nodes, closed: false })
    }

    /// A closed curve; the sequence must end on its first node.
    pub fn closed(nodes: Vec<Node>) -> Result<Self> {
        Self::validate(&nodes)?;
        if nodes.first() != nodes.last() {
            return Err(Error::InvalidCurve(
                "closed curve must end at its starting node".into(),
            ));
        }
        Ok(LatticeCurve { nodes, closed: true })
    }

    fn validate(nodes: &[Node]) -> Result<()> {
        if nodes.len() < 2 {
            return Err(Error::InvalidCurve("curve needs at least one step".into()));
        }
        for pair in nodes.windows(2) {
            if Step::between(pair[0], pair[1]).is_none() {
                return Err(Error::InvalidCurve(format!(
                    "nodes ({}, {}) and ({}, {}) are not one unit step apart",
                    pair[0].x, pair[0].y, pair[1].x, pair[1].y
                )));
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of unit steps.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false // a valid curve always has at least one step
    }

    pub fn start(&self) -> Node {
        self.nodes[0]
    }

    pub fn end(&self) -> Node {
        *self.nodes.last().unwrap()
    }

    /// No node visited twice (for closed curves the obligatory return to the
    /// start does not count).
    pub fn is_simple(&self) -> bool {
        let effective = if self.closed {
            &self.nodes[..self.nodes.len() - 1]
        } else {
            &self.nodes[..]
        };
        let mut seen = std::collections::HashSet::with_capacity(effective.len());
        effective.iter().all(|n| seen.insert(*n))
    }

    /// The same walk in the opposite direction.
    pub fn reversed(&self) -> LatticeCurve {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        LatticeCurve { nodes, closed: self.closed }
    }

    /// Steps paired with the edge traversed and the traversal sign.
    pub fn steps(&self) -> impl Iterator<Item = (Node, Edge, i8)> + '_ {
        self.nodes.windows(2).map(|pair| {
            let step = Step::between(pair[0], pair[1]).expect("validated on construction");
            let (edge, sign) = step.edge_from(pair[0]);
            (pair[0], edge, sign)
        })
    }
}

/// Number of unit steps along the curve.
pub fn curve_length(gamma: &LatticeCurve) -> u64 {
    gamma.len() as u64
}

/// The flux carried by a unit of transport along the curve: +1/-1 per edge
/// traversal, accumulated (back-and-forth traversals cancel).
///
/// For a closed curve the result is divergence-free; for an open curve the
/// divergence is +1 at the start node and -1 at the end node.
pub fn curve_measure<S: Scalar>(grid: GridSpec, gamma: &LatticeCurve) -> EdgeFlux<S> {
    let mut mu = EdgeFlux::zeros(grid);
    for (node, edge, sign) in gamma.steps() {
        assert!(
            grid.contains_node(node) && grid.contains_node(edge.head()),
            "curve leaves the grid at node ({}, {})",
            node.x,
            node.y
        );
        mu.add_at(edge, S::from_int(sign as i64));
    }
    mu
}

/// A weighted curve; the weight is strictly positive.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedCurve<S: Scalar> {
    pub weight: S,
    pub curve: LatticeCurve,
}

/// A finite positive combination of lattice curves on one grid.
#[derive(Clone, PartialEq, Debug)]
pub struct CurveSuperposition<S: Scalar> {
    grid: GridSpec,
    items: Vec<WeightedCurve<S>>,
}

impl<S: Scalar> CurveSuperposition<S> {
    pub fn new(grid: GridSpec) -> Self {
        CurveSuperposition { grid, items: Vec::new() }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Append a weighted curve. Panics on a non-positive weight: weights are
    /// produced by this library's decompositions or validated at parse time.
    pub fn push(&mut self, curve: LatticeCurve, weight: S) {
        assert!(weight.sign() > 0, "curve weights must be positive");
        self.items.push(WeightedCurve { weight, curve });
    }

    /// Build from an existing item list (weights must all be positive).
    pub fn from_items(grid: GridSpec, items: Vec<WeightedCurve<S>>) -> Self {
        assert!(
            items.iter().all(|w| w.weight.sign() > 0),
            "curve weights must be positive"
        );
        CurveSuperposition { grid, items }
    }

    pub fn items(&self) -> &[WeightedCurve<S>] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn extend(&mut self, other: CurveSuperposition<S>) {
        self.grid.check_same(&other.grid).expect("superpositions on one grid");
        self.items.extend(other.items);
    }

    /// Total mass: the weighted sum of curve lengths.
    pub fn total_mass(&self) -> S {
        let mut acc = S::zero();
        for item in &self.items {
            acc += item.weight.clone() * S::from_int(curve_length(&item.curve) as i64);
        }
        acc
    }

    /// Accumulate all weighted curve measures into a single flux.
    pub fn superpose(&self) -> EdgeFlux<S> {
        let mut mu = EdgeFlux::zeros(self.grid);
        for item in &self.items {
            for (_, edge, sign) in item.curve.steps() {
                let contribution = if sign > 0 {
                    item.weight.clone()
                } else {
                    -item.weight.clone()
                };
                mu.add_at(edge, contribution);
            }
        }
        mu
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{divergence, total_variation};
    use crate::scalar::Rational;

    fn n(x: u32, y: u32) -> Node {
        Node::new(x, y)
    }

    #[test]
    fn construction_validates_steps() {
        assert!(LatticeCurve::open(vec![n(0, 0), n(2, 0)]).is_err());
        assert!(LatticeCurve::open(vec![n(0, 0)]).is_err());
        assert!(LatticeCurve::closed(vec![n(0, 0), n(1, 0)]).is_err());
        let square = LatticeCurve::closed(vec![n(0, 0), n(0, 1), n(1, 1), n(1, 0), n(0, 0)]);
        assert!(square.is_ok());
        assert!(square.unwrap().is_simple());
    }

    #[test]
    fn open_curve_measure_has_endpoint_divergence() {
        let grid = GridSpec::new(2, 2);
        let gamma = LatticeCurve::open(vec![n(0, 0), n(1, 0), n(1, 1)]).unwrap();
        let mu = curve_measure::<Rational>(grid, &gamma);
        let d = divergence(&mu);
        assert_eq!(*d.get(n(0, 0)), Rational::from_int(1));
        assert_eq!(*d.get(n(1, 1)), Rational::from_int(-1));
        assert_eq!(total_variation(&mu), Rational::from_int(2));
    }

    #[test]
    fn backtracking_cancels() {
        let grid = GridSpec::new(2, 1);
        let gamma = LatticeCurve::open(vec![n(0, 0), n(1, 0), n(0, 0), n(0, 1)]).unwrap();
        let mu = curve_measure::<Rational>(grid, &gamma);
        // The east-west pair cancels; only the final north step remains.
        assert_eq!(total_variation(&mu), Rational::from_int(1));
        assert!(!gamma.is_simple());
        assert_eq!(curve_length(&gamma), 3);
    }

    #[test]
    fn superpose_accumulates_weights() {
        let grid = GridSpec::new(1, 1);
        let square = LatticeCurve::closed(vec![n(0, 0), n(0, 1), n(1, 1), n(1, 0), n(0, 0)]).unwrap();
        let mut eta = CurveSuperposition::new(grid);
        eta.push(square.clone(), Rational::ratio(1, 2));
        eta.push(square, Rational::ratio(1, 2));
        let mu = eta.superpose();
        assert_eq!(*mu.get(Edge::V(0, 0)), Rational::from_int(1));
        assert_eq!(eta.total_mass(), Rational::from_int(4));
    }

    #[test]
    fn reversal_negates_measure() {
        let grid = GridSpec::new(3, 3);
        let gamma = LatticeCurve::open(vec![n(0, 0), n(1, 0), n(1, 1), n(2, 1)]).unwrap();
        let a = curve_measure::<Rational>(grid, &gamma);
        let b = curve_measure::<Rational>(grid, &gamma.reversed());
        assert!(a.add(&b).is_zero());
    }
}
