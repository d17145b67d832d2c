//! General fluxes: subcurrent tests, cycle/acyclic splitting, and path
//! decompositions.
//!
//! A flux is *acyclic* when its sign-directed support digraph (each edge
//! pointed the way its flux flows) has no directed cycle; on a finite grid
//! this is equivalent to having no nonzero divergence-free subcurrent. Any
//! flux splits into a divergence-free cycle part plus an acyclic part, and
//! the acyclic part strips into simple open paths running from sources to
//! sinks with exact divergence bookkeeping: the weights of paths starting
//! (ending) at a node sum to its positive (negative) divergence.

use crate::coarea::decompose_divfree;
use crate::curves::{CurveSuperposition, LatticeCurve, Step};
use crate::error::{Error, Result};
use crate::grid::{divergence, Edge, EdgeFlux, GridSpec, Node};
use crate::scalar::Scalar;

/// Whether `sigma` is a subcurrent of `mu`: per edge, `sigma(e)` has the
/// same sign as `mu(e)` and no larger magnitude (a factor `g(e)` in
/// `[0, 1]`). Equivalent to the norm identity
/// `tv(mu) = tv(mu - sigma) + tv(sigma)`.
pub fn is_subcurrent<S: Scalar>(sigma: &EdgeFlux<S>, mu: &EdgeFlux<S>) -> Result<bool> {
    mu.grid().check_same(&sigma.grid())?;
    for e in mu.grid().edges() {
        let s = sigma.get(e);
        let m = mu.get(e);
        if m.approx_zero() {
            if !s.approx_zero() {
                return Ok(false);
            }
            continue;
        }
        if s.approx_zero() {
            continue;
        }
        if s.sign() != m.sign() {
            return Ok(false);
        }
        let slack = m.abs() - s.abs();
        if slack.sign() < 0 && !slack.approx_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Position of an edge in the grid enumeration (all horizontal edges in
/// row-major order, then all vertical ones); the deterministic tie-break
/// for edge choices.
fn edge_rank(grid: GridSpec, e: Edge) -> usize {
    let w = grid.width as usize;
    let h = grid.height as usize;
    match e {
        Edge::H(i, j) => j as usize * w + i as usize,
        Edge::V(i, j) => w * (h + 1) + j as usize * (w + 1) + i as usize,
    }
}

/// Arcs leaving `node` in the sign-directed support of `mu`, in edge
/// enumeration order.
fn out_arcs<S: Scalar>(mu: &EdgeFlux<S>, node: Node) -> Vec<(Edge, Node)> {
    let grid = mu.grid();
    let (x, y) = (node.x, node.y);
    let mut arcs = Vec::with_capacity(4);
    if x < grid.width && mu.get(Edge::H(x, y)).sign() > 0 {
        arcs.push((Edge::H(x, y), Node::new(x + 1, y)));
    }
    if x > 0 && mu.get(Edge::H(x - 1, y)).sign() < 0 {
        arcs.push((Edge::H(x - 1, y), Node::new(x - 1, y)));
    }
    if y < grid.height && mu.get(Edge::V(x, y)).sign() > 0 {
        arcs.push((Edge::V(x, y), Node::new(x, y + 1)));
    }
    if y > 0 && mu.get(Edge::V(x, y - 1)).sign() < 0 {
        arcs.push((Edge::V(x, y - 1), Node::new(x, y - 1)));
    }
    arcs.sort_by_key(|&(e, _)| edge_rank(grid, e));
    arcs
}

/// First directed cycle of the sign-directed support in a deterministic
/// depth-first scan, as a closed node list, or `None` when the support is
/// a DAG.
fn find_directed_cycle<S: Scalar>(mu: &EdgeFlux<S>) -> Option<Vec<Node>> {
    let grid = mu.grid();
    let stride = grid.width as usize + 1;
    let idx = |n: Node| n.y as usize * stride + n.x as usize;
    let node_count = stride * (grid.height as usize + 1);
    // 0 = unvisited, 1 = on the current path, 2 = exhausted.
    let mut color = vec![0u8; node_count];
    let mut parent: Vec<Option<Node>> = vec![None; node_count];

    for start in grid.nodes() {
        if color[idx(start)] != 0 {
            continue;
        }
        color[idx(start)] = 1;
        let mut stack: Vec<(Node, usize)> = vec![(start, 0)];
        while let Some(frame) = stack.last_mut() {
            let (u, k) = (frame.0, frame.1);
            let arcs = out_arcs(mu, u);
            if k >= arcs.len() {
                color[idx(u)] = 2;
                stack.pop();
                continue;
            }
            frame.1 += 1;
            let (_, v) = arcs[k];
            match color[idx(v)] {
                0 => {
                    color[idx(v)] = 1;
                    parent[idx(v)] = Some(u);
                    stack.push((v, 0));
                }
                1 => {
                    // Back edge u -> v: walk parents from u up to v.
                    let mut cycle = vec![u];
                    let mut cur = u;
                    while cur != v {
                        cur = parent[idx(cur)].expect("ancestor chain reaches v");
                        cycle.push(cur);
                    }
                    cycle.reverse(); // v ... u
                    cycle.push(v); // close
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

/// Split `mu` into a divergence-free cycle part and an acyclic remainder
/// with `cycle + acyclic = mu`. The cycle part is a subcurrent of `mu`
/// (extraction follows flux signs, so no cancellation); each extraction
/// zeroes at least one edge, bounding the number of extractions by the
/// edge count.
///
/// Cycles are peeled with one incremental depth-first walk. Subtraction
/// never flips a flux sign, so arcs only ever disappear; each node keeps a
/// cursor over its four candidate arcs that advances past permanently
/// unusable ones, and a node whose cursor is exhausted can never lie on a
/// cycle again. After an extraction the walk backtracks only to the
/// deepest surviving prefix instead of restarting the search.
pub fn cycle_acyclic_split<S: Scalar>(mu: &EdgeFlux<S>) -> (EdgeFlux<S>, EdgeFlux<S>) {
    let grid = mu.grid();
    let mut remainder = mu.clone();
    let mut cycle_part = EdgeFlux::zeros(grid);

    let stride = grid.width as usize + 1;
    let node_count = stride * (grid.height as usize + 1);
    let idx = |n: Node| n.y as usize * stride + n.x as usize;
    // Candidate arcs of a node in edge enumeration order (west, east,
    // south, north); `None` when the edge leaves the grid.
    let candidate = |n: Node, k: u8| -> Option<(Edge, i8, Node)> {
        let (x, y) = (n.x, n.y);
        match k {
            0 if x > 0 => Some((Edge::H(x - 1, y), -1, Node::new(x - 1, y))),
            1 if x < grid.width => Some((Edge::H(x, y), 1, Node::new(x + 1, y))),
            2 if y > 0 => Some((Edge::V(x, y - 1), -1, Node::new(x, y - 1))),
            3 if y < grid.height => Some((Edge::V(x, y), 1, Node::new(x, y + 1))),
            _ => None,
        }
    };

    let mut dead = vec![false; node_count];
    let mut cursor = vec![0u8; node_count];
    // Stack slot of each on-walk node, `usize::MAX` otherwise.
    let mut slot = vec![usize::MAX; node_count];
    let mut stack: Vec<Node> = Vec::new();

    for start in grid.nodes() {
        if dead[idx(start)] {
            continue;
        }
        slot[idx(start)] = 0;
        stack.push(start);
        while let Some(&u) = stack.last() {
            // First usable arc out of `u`. Skipped arcs are gone for good:
            // a zeroed edge stays zero and a dead head stays dead.
            let mut arc = None;
            while cursor[idx(u)] < 4 {
                if let Some((e, dir, v)) = candidate(u, cursor[idx(u)]) {
                    if remainder.get(e).sign() == dir && !dead[idx(v)] {
                        arc = Some((e, dir, v));
                        break;
                    }
                }
                cursor[idx(u)] += 1;
            }
            let Some((e, dir, v)) = arc else {
                dead[idx(u)] = true;
                slot[idx(u)] = usize::MAX;
                stack.pop();
                continue;
            };
            if slot[idx(v)] == usize::MAX {
                slot[idx(v)] = stack.len();
                stack.push(v);
                continue;
            }
            // The walk closed a cycle: stack[slot(v)..] plus the arc u->v.
            let base = slot[idx(v)];
            let mut arcs: Vec<(Edge, i8)> = stack[base..stack.len() - 1]
                .iter()
                .map(|&n| {
                    let (e, dir, _) =
                        candidate(n, cursor[idx(n)]).expect("stack arcs are usable");
                    (e, dir)
                })
                .collect();
            arcs.push((e, dir));
            let mut bottleneck: Option<S> = None;
            for (e, _) in &arcs {
                let mag = remainder.get(*e).abs();
                if bottleneck.as_ref().map_or(true, |b| mag < *b) {
                    bottleneck = Some(mag);
                }
            }
            let w = bottleneck.expect("cycles have at least one edge");
            for (e, dir) in &arcs {
                let delta = if *dir > 0 { w.clone() } else { -w.clone() };
                remainder.add_at(*e, -delta.clone());
                cycle_part.add_at(*e, delta);
            }
            // Backtrack to the deepest prefix whose arcs all survived; a
            // broken closing arc needs no backtracking (the cursor of `u`
            // advances past it on the next turn).
            let broken = (0..arcs.len() - 1)
                .find(|&i| remainder.get(arcs[i].0).sign() != arcs[i].1);
            if let Some(i) = broken {
                for n in stack.drain(base + i + 1..) {
                    slot[idx(n)] = usize::MAX;
                }
            }
        }
    }
    (cycle_part, remainder)
}

/// Strip an acyclic flux into weighted simple open paths from sources to
/// sinks. The decomposition is exact: the path measures sum to `mu`,
/// weighted absolute crossings give `|mu|` per edge, and per node the
/// weights of paths starting (ending) there sum to the positive (negative)
/// part of the divergence.
pub fn acyclic_to_paths<S: Scalar>(mu: &EdgeFlux<S>) -> Result<CurveSuperposition<S>> {
    if let Some(cycle) = find_directed_cycle(mu) {
        return Err(Error::NotAcyclic { cycle });
    }
    let grid = mu.grid();
    let mut remainder = mu.clone();
    let mut out = CurveSuperposition::new(grid);

    while !remainder.is_zero() {
        let div = divergence(&remainder);
        // First node (in grid enumeration order) attaining the maximal
        // positive divergence.
        let mut source: Option<Node> = None;
        for n in grid.nodes() {
            if div.get(n).sign() <= 0 {
                continue;
            }
            let better = match source {
                None => true,
                Some(s) => div.get(n) > div.get(s),
            };
            if better {
                source = Some(n);
            }
        }
        let source = source.expect("a nonzero acyclic flux has a source node");

        // Walk sign-consistent edges, largest remaining magnitude first,
        // until a sink (negative residual divergence) is reached.
        let mut nodes = vec![source];
        let mut here = source;
        let mut min_flux: Option<S> = None;
        loop {
            if here != source && div.get(here).sign() < 0 {
                break;
            }
            let arcs = out_arcs(&remainder, here);
            let mut chosen: Option<(Edge, Node)> = None;
            for &(e, next) in &arcs {
                let better = match chosen {
                    None => true,
                    // Strictly larger magnitude wins; arcs arrive in rank
                    // order, so ties keep the earlier edge.
                    Some((cur, _)) => remainder.get(e).abs() > remainder.get(cur).abs(),
                };
                if better {
                    chosen = Some((e, next));
                }
            }
            let (edge, next) = chosen.expect("non-sink nodes on a walk have outgoing flux");
            let mag = remainder.get(edge).abs();
            if min_flux.as_ref().map_or(true, |m| mag < *m) {
                min_flux = Some(mag);
            }
            nodes.push(next);
            here = next;
        }
        let sink = here;
        let mut w = min_flux.expect("path has at least one edge");
        let source_cap = div.get(source).clone();
        if source_cap < w {
            w = source_cap;
        }
        let sink_cap = -div.get(sink).clone();
        if sink_cap < w {
            w = sink_cap;
        }

        for pair in nodes.windows(2) {
            let step = Step::between(pair[0], pair[1]).expect("walk steps are unit");
            let (edge, dir) = step.edge_from(pair[0]);
            let delta = if dir > 0 { w.clone() } else { -w.clone() };
            remainder.add_at(edge, -delta);
        }
        let curve = LatticeCurve::open(nodes)?;
        debug_assert!(curve.is_simple(), "walks in a DAG never revisit nodes");
        out.push(curve, w);
    }
    Ok(out)
}

/// Decompose an arbitrary flux: split off the cycle part, strip the
/// acyclic part into open paths, and slice the cycle part into closed
/// loops via the potential route. Paths come first, then loops. The
/// returned family satisfies the reconstruction, edge-additivity, and
/// divergence-additivity identities exactly in rational mode. Errors can
/// only arise from internal invariant violations, not from any input.
pub fn decompose_general<S: Scalar>(mu: &EdgeFlux<S>) -> Result<CurveSuperposition<S>> {
    let (cycle_part, acyclic_part) = cycle_acyclic_split(mu);
    let mut out = acyclic_to_paths(&acyclic_part)?;
    out.extend(decompose_divfree(&cycle_part)?);
    Ok(out)
}

/// Which test decided an acyclicity query.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AcyclicTest {
    /// All vertical fluxes vanish and horizontal fluxes are non-negative:
    /// every walk moves strictly rightward, so no cycle can close.
    RightwardRule,
    /// Exhaustive directed-cycle search on the support digraph.
    DagSearch,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AcyclicVerdict {
    pub acyclic: bool,
    pub test: AcyclicTest,
}

/// Fast-path acyclicity: first try the rightward-flow sufficient
/// condition, falling back to the exhaustive cycle search. The verdict
/// records which test decided.
pub fn is_acyclic_fast<S: Scalar>(mu: &EdgeFlux<S>) -> AcyclicVerdict {
    let grid = mu.grid();
    let rightward = grid.edges().all(|e| match e {
        Edge::H(_, _) => mu.get(e).sign() >= 0,
        Edge::V(_, _) => mu.get(e).is_zero(),
    });
    if rightward {
        return AcyclicVerdict {
            acyclic: true,
            test: AcyclicTest::RightwardRule,
        };
    }
    AcyclicVerdict {
        acyclic: find_directed_cycle(mu).is_none(),
        test: AcyclicTest::DagSearch,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarea::verify_decomposition;
    use crate::grid::{perp_gradient, total_variation, Cell, CellField};
    use crate::pixel_sets::PixelSet;
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn unit_square_loop(grid: GridSpec) -> EdgeFlux<Rational> {
        perp_gradient(&PixelSet::from_cells(grid, [Cell { x: 0, y: 0 }]).indicator())
    }

    #[test]
    fn subcurrent_examples() {
        let grid = GridSpec::new(2, 2);
        let mu = unit_square_loop(grid);
        let zero = EdgeFlux::<Rational>::zeros(grid);
        assert!(is_subcurrent(&zero, &mu).unwrap());
        assert!(is_subcurrent(&mu, &mu).unwrap());
        let half = mu.scale(&Rational::ratio(1, 2));
        assert!(is_subcurrent(&half, &mu).unwrap());
        let neg = zero.sub(&mu);
        assert!(!is_subcurrent(&neg, &mu).unwrap());
        // Norm identity agrees on both a positive and a negative case.
        assert_eq!(
            total_variation(&mu),
            total_variation(&mu.sub(&half)) + total_variation(&half)
        );
        assert!(
            total_variation(&mu)
                != total_variation(&mu.sub(&neg)) + total_variation(&neg)
        );
    }

    #[test]
    fn subcurrent_grid_mismatch() {
        let a = EdgeFlux::<Rational>::zeros(GridSpec::new(2, 2));
        let b = EdgeFlux::<Rational>::zeros(GridSpec::new(3, 2));
        assert!(matches!(
            is_subcurrent(&a, &b),
            Err(Error::GridMismatch(..))
        ));
    }

    #[test]
    fn split_of_divergence_free_flux_is_all_cycle() {
        let grid = GridSpec::new(3, 3);
        let mut field = CellField::<Rational>::zeros(grid);
        field.set(Cell { x: 0, y: 0 }, r(2));
        field.set(Cell { x: 1, y: 1 }, r(-1));
        let mu = perp_gradient(&field);
        let (cycle, acyclic) = cycle_acyclic_split(&mu);
        assert_eq!(cycle, mu);
        assert!(acyclic.is_zero());
    }

    #[test]
    fn split_of_open_path_is_all_acyclic() {
        let grid = GridSpec::new(2, 2);
        let mut mu = EdgeFlux::<Rational>::zeros(grid);
        mu.set(Edge::H(0, 0), r(1));
        mu.set(Edge::V(1, 0), r(1));
        let (cycle, acyclic) = cycle_acyclic_split(&mu);
        assert!(cycle.is_zero());
        assert_eq!(acyclic, mu);
    }

    #[test]
    fn split_separates_disjoint_loop_and_path() {
        let grid = GridSpec::new(4, 4);
        let loop_flux = unit_square_loop(grid);
        let mut path_flux = EdgeFlux::<Rational>::zeros(grid);
        path_flux.set(Edge::H(2, 3), r(1));
        path_flux.set(Edge::H(3, 3), r(1));
        let mu = loop_flux.add(&path_flux);
        let (cycle, acyclic) = cycle_acyclic_split(&mu);
        assert_eq!(cycle, loop_flux);
        assert_eq!(acyclic, path_flux);
        assert!(is_subcurrent(&cycle, &mu).unwrap());
        assert!(divergence(&cycle).is_zero());
    }

    #[test]
    fn single_edge_becomes_single_path() {
        let grid = GridSpec::new(2, 1);
        let mut mu = EdgeFlux::<Rational>::zeros(grid);
        mu.set(Edge::H(0, 0), r(1));
        let eta = acyclic_to_paths(&mu).unwrap();
        assert_eq!(eta.len(), 1);
        assert_eq!(eta.items()[0].weight, r(1));
        assert!(!eta.items()[0].curve.is_closed());
        assert!(verify_decomposition(&mu, &eta).is_clean());
    }

    #[test]
    fn y_junction_splits_into_two_unit_paths() {
        // Two unit sources at (0,0) and (1,1) merging at (1,0), flowing
        // out along one edge of flux 2.
        let grid = GridSpec::new(2, 2);
        let mut mu = EdgeFlux::<Rational>::zeros(grid);
        mu.set(Edge::H(0, 0), r(1));
        mu.set(Edge::V(1, 0), r(-1));
        mu.set(Edge::H(1, 0), r(2));
        let eta = acyclic_to_paths(&mu).unwrap();
        assert_eq!(eta.len(), 2);
        assert!(eta.items().iter().all(|w| w.weight == r(1)));
        let report = verify_decomposition(&mu, &eta);
        assert!(report.is_clean(), "{report}");
        // Divergence bookkeeping at the junction: no path starts or ends
        // at (1,0), whose divergence is zero.
        for item in eta.items() {
            assert_ne!(item.curve.start(), Node::new(1, 0));
            assert_ne!(item.curve.end(), Node::new(1, 0));
        }
    }

    #[test]
    fn paths_reject_cyclic_input() {
        let grid = GridSpec::new(2, 2);
        let mu = unit_square_loop(grid);
        match acyclic_to_paths(&mu) {
            Err(Error::NotAcyclic { cycle }) => {
                assert!(cycle.len() >= 4);
                assert_eq!(cycle.first(), cycle.last());
            }
            other => panic!("expected NotAcyclic, got {other:?}"),
        }
    }

    #[test]
    fn general_decomposition_of_dipole_is_paths_only() {
        // Unit source at (0,0), unit sink at (2,0), flux split over a low
        // and a high route with weight 1/2 each.
        let grid = GridSpec::new(2, 1);
        let half = Rational::ratio(1, 2);
        let mut mu = EdgeFlux::<Rational>::zeros(grid);
        mu.set(Edge::H(0, 0), half.clone());
        mu.set(Edge::H(1, 0), half.clone());
        mu.set(Edge::V(0, 0), half.clone());
        mu.set(Edge::H(0, 1), half.clone());
        mu.set(Edge::H(1, 1), half.clone());
        mu.set(Edge::V(2, 0), -half.clone());
        let eta = decompose_general(&mu).unwrap();
        assert!(eta.items().iter().all(|w| !w.curve.is_closed()));
        let total: Rational = eta
            .items()
            .iter()
            .map(|w| w.weight.clone())
            .fold(r(0), |a, b| a + b);
        assert_eq!(total, r(1), "path weights account for the unit source");
        assert!(verify_decomposition(&mu, &eta).is_clean());
    }

    #[test]
    fn general_decomposition_handles_mixtures() {
        let grid = GridSpec::new(3, 3);
        let mut mu = unit_square_loop(grid);
        mu.add_at(Edge::H(1, 2), r(3));
        mu.add_at(Edge::H(2, 2), r(3));
        let eta = decompose_general(&mu).unwrap();
        let report = verify_decomposition(&mu, &eta);
        assert!(report.is_clean(), "{report}");
        assert!(eta.items().iter().any(|w| w.curve.is_closed()));
        assert!(eta.items().iter().any(|w| !w.curve.is_closed()));

        let empty = decompose_general(&EdgeFlux::<Rational>::zeros(grid)).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn acyclic_fast_branches() {
        let grid = GridSpec::new(3, 2);
        let mut rightward = EdgeFlux::<Rational>::zeros(grid);
        rightward.set(Edge::H(0, 1), r(2));
        rightward.set(Edge::H(2, 0), r(1));
        let v = is_acyclic_fast(&rightward);
        assert!(v.acyclic);
        assert_eq!(v.test, AcyclicTest::RightwardRule);

        let v = is_acyclic_fast(&unit_square_loop(grid));
        assert!(!v.acyclic);
        assert_eq!(v.test, AcyclicTest::DagSearch);

        // Mixed directions but still a DAG.
        let mut mixed = EdgeFlux::<Rational>::zeros(grid);
        mixed.set(Edge::H(0, 0), r(1));
        mixed.set(Edge::V(1, 0), r(1));
        mixed.set(Edge::H(1, 1), r(-1));
        let v = is_acyclic_fast(&mixed);
        assert!(v.acyclic);
        assert_eq!(v.test, AcyclicTest::DagSearch);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]
        #[test]
        fn split_and_strip_random_fluxes(
            hs in proptest::collection::vec(-2i64..=2, 4 * 5),
            vs in proptest::collection::vec(-2i64..=2, 5 * 4),
        ) {
            let grid = GridSpec::new(4, 4);
            let mut mu = EdgeFlux::<Rational>::zeros(grid);
            let mut k = 0;
            for j in 0..=4u32 {
                for i in 0..4u32 {
                    mu.set(Edge::H(i, j), r(hs[k]));
                    k += 1;
                }
            }
            let mut k = 0;
            for j in 0..4u32 {
                for i in 0..=4u32 {
                    mu.set(Edge::V(i, j), r(vs[k]));
                    k += 1;
                }
            }
            let (cycle, acyclic) = cycle_acyclic_split(&mu);
            proptest::prop_assert_eq!(cycle.add(&acyclic), mu.clone());
            proptest::prop_assert!(divergence(&cycle).is_zero());
            proptest::prop_assert!(is_subcurrent(&cycle, &mu).unwrap());
            proptest::prop_assert!(is_subcurrent(&acyclic, &mu).unwrap());
            proptest::prop_assert!(find_directed_cycle(&acyclic).is_none());
            // Norm identity form of the subcurrent property.
            proptest::prop_assert_eq!(
                total_variation(&mu),
                total_variation(&cycle) + total_variation(&acyclic)
            );

            let eta = acyclic_to_paths(&acyclic).unwrap();
            let report = verify_decomposition(&acyclic, &eta);
            proptest::prop_assert!(report.is_clean(), "{}", report);
            for item in eta.items() {
                proptest::prop_assert!(item.curve.is_simple());
                proptest::prop_assert!(!item.curve.is_closed());
            }

            let everything = decompose_general(&mu).unwrap();
            let report = verify_decomposition(&mu, &everything);
            proptest::prop_assert!(report.is_clean(), "{}", report);
        }
    }
}
