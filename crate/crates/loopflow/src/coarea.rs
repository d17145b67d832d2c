//! From divergence-free fluxes to weighted simple loops via the coarea
//! slicing of a potential.
//!
//! The pipeline is: integrate the flux to a potential, split the potential
//! into monotone constant-sign components, then slice every component at
//! its distinct values. Each plateau contributes the boundary loop of the
//! superlevel set, weighted by the plateau height. Exactness is preserved
//! at every step, so the reconstruction, the per-edge absolute additivity,
//! and the variation bookkeeping all hold with no error term in rational
//! mode.

use std::collections::BTreeMap;

use crate::curves::{CurveSuperposition, LatticeCurve, WeightedCurve};
use crate::error::{Error, Result};
use crate::grid::{divergence, integrate_potential, total_variation, Edge, EdgeFlux, Node};
use crate::monotone::{decompose_monotone, is_monotone, MonotoneComponent};
use crate::pixel_sets::{strict_superlevel, trace_boundary};
use crate::scalar::Scalar;

/// Slice a monotone constant-sign component into weighted boundary loops,
/// one per plateau of its magnitude, in ascending level order.
///
/// Each loop is the boundary trace of the superlevel set that is constant
/// on the plateau `(t_{j-1}, t_j]`, weighted by `t_j - t_{j-1}`. Loops of
/// negative-sign components are emitted orientation-reversed so weights
/// stay positive. The summed loop measures equal `perp_gradient(field)`
/// and the weighted lengths sum to `variation(field)`, both exactly.
pub fn loops_of_monotone<S: Scalar>(m: &MonotoneComponent<S>) -> Result<CurveSuperposition<S>> {
    let constant_sign = m
        .field
        .values()
        .iter()
        .all(|v| v.sign() as i16 * m.sign as i16 >= 0);
    if !constant_sign || m.field.is_zero() || !is_monotone(&m.field) {
        return Err(Error::NotMonotone);
    }
    let magnitude = m.magnitude();
    let levels = crate::monotone::distinct_values_with_zero(&magnitude);
    let mut out = CurveSuperposition::new(m.field.grid());
    for w in levels.windows(2) {
        let set = strict_superlevel(&magnitude, &w[0]);
        let curve = trace_boundary(&set)?;
        let curve = if m.sign == 1 { curve } else { curve.reversed() };
        out.push(curve, w[1].clone() - w[0].clone());
    }
    Ok(out)
}

/// Decompose a divergence-free flux into positively weighted closed loops
/// whose measures sum back to the flux exactly and whose weighted absolute
/// crossings reproduce `|mu|` edge by edge.
pub fn decompose_divfree<S: Scalar>(mu: &EdgeFlux<S>) -> Result<CurveSuperposition<S>> {
    let potential = integrate_potential(mu)?;
    let mut out = CurveSuperposition::new(mu.grid());
    for part in decompose_monotone(&potential)? {
        out.extend(loops_of_monotone(&part)?);
    }
    Ok(out)
}

/// Per-curve bookkeeping carried by a [`VerificationReport`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveFlags {
    pub closed: bool,
    pub simple: bool,
}

/// Outcome of checking a weighted curve family against a flux. All four
/// defects are zero (to scalar tolerance) exactly when the family is a
/// valid decomposition: measures sum to the flux, weighted absolute
/// crossings match `|mu|` per edge, weighted endpoint masses match
/// `|div mu|` per node, and the weighted lengths account for the full
/// total variation.
#[derive(Clone, Debug)]
pub struct VerificationReport<S: Scalar> {
    pub reconstruction_residual: S,
    pub tv_defect: S,
    pub edge_additivity_defect: S,
    pub node_additivity_defect: S,
    pub curve_flags: Vec<CurveFlags>,
}

impl<S: Scalar> VerificationReport<S> {
    /// True when every numeric defect vanishes (exactly in rational mode,
    /// within tolerance in float mode). Curve flags are informational:
    /// path decompositions legitimately contain open curves.
    pub fn is_clean(&self) -> bool {
        self.reconstruction_residual.approx_zero()
            && self.tv_defect.approx_zero()
            && self.edge_additivity_defect.approx_zero()
            && self.node_additivity_defect.approx_zero()
    }

    pub fn all_closed(&self) -> bool {
        self.curve_flags.iter().all(|f| f.closed)
    }

    pub fn all_simple(&self) -> bool {
        self.curve_flags.iter().all(|f| f.simple)
    }
}

impl<S: Scalar> std::fmt::Display for VerificationReport<S> {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(out, "reconstruction residual: {}", self.reconstruction_residual)?;
        writeln!(out, "total-variation defect:  {}", self.tv_defect)?;
        writeln!(out, "edge additivity defect:  {}", self.edge_additivity_defect)?;
        writeln!(out, "node additivity defect:  {}", self.node_additivity_defect)?;
        let closed = self.curve_flags.iter().filter(|f| f.closed).count();
        let simple = self.curve_flags.iter().filter(|f| f.simple).count();
        writeln!(
            out,
            "curves: {} ({} closed, {} simple)",
            self.curve_flags.len(),
            closed,
            simple
        )?;
        write!(out, "verdict: {}", if self.is_clean() { "clean" } else { "DEFECTIVE" })
    }
}

/// Net flux of one curve as a sparse edge map (steps over the same edge in
/// opposite directions cancel).
fn sparse_measure<S: Scalar>(curve: &LatticeCurve) -> BTreeMap<Edge, S> {
    let mut map: BTreeMap<Edge, S> = BTreeMap::new();
    for (_, edge, dir) in curve.steps() {
        let delta = if dir > 0 { S::one() } else { -S::one() };
        let slot = map.entry(edge).or_insert_with(S::zero);
        *slot += delta;
    }
    map.retain(|_, v| !v.is_zero());
    map
}

/// Divergence of a sparse edge measure as a sparse node map.
fn sparse_divergence<S: Scalar>(measure: &BTreeMap<Edge, S>) -> BTreeMap<Node, S> {
    let mut div: BTreeMap<Node, S> = BTreeMap::new();
    for (edge, flux) in measure {
        let tail = div.entry(edge.tail()).or_insert_with(S::zero);
        *tail += flux.clone();
        let head = div.entry(edge.head()).or_insert_with(S::zero);
        *head -= flux.clone();
    }
    div.retain(|_, v| !v.is_zero());
    div
}

/// Check a weighted curve family against a flux, reporting every defect
/// rather than failing. Grids must match (the caller's contract).
pub fn verify_decomposition<S: Scalar>(
    mu: &EdgeFlux<S>,
    eta: &CurveSuperposition<S>,
) -> VerificationReport<S> {
    let grid = mu.grid();
    grid.expect_same(&eta.grid());

    let mut signed_sum = EdgeFlux::<S>::zeros(grid);
    let mut abs_sum = EdgeFlux::<S>::zeros(grid);
    let mut node_sum: BTreeMap<Node, S> = BTreeMap::new();
    let mut weighted_length = S::zero();
    let mut flags = Vec::with_capacity(eta.len());

    for WeightedCurve { curve, weight } in eta.items() {
        flags.push(CurveFlags {
            closed: curve.is_closed(),
            simple: curve.is_simple(),
        });
        weighted_length += weight.clone() * S::from_int(curve.len() as i64);
        let measure = sparse_measure::<S>(curve);
        for (edge, flux) in &measure {
            signed_sum.add_at(*edge, weight.clone() * flux.clone());
            abs_sum.add_at(*edge, weight.clone() * flux.abs());
        }
        for (node, d) in sparse_divergence(&measure) {
            let slot = node_sum.entry(node).or_insert_with(S::zero);
            *slot += weight.clone() * d.abs();
        }
    }

    let reconstruction_residual = signed_sum.max_abs_difference(mu);
    let tv_defect = (total_variation(mu) - weighted_length).abs();

    let mut edge_defect = S::zero();
    for e in grid.edges() {
        let d = (abs_sum.get(e).clone() - mu.get(e).abs()).abs();
        if d > edge_defect {
            edge_defect = d;
        }
    }

    let div_mu = divergence(mu);
    let mut node_defect = S::zero();
    for n in grid.nodes() {
        let expected = div_mu.get(n).abs();
        let got = node_sum.get(&n).cloned().unwrap_or_else(S::zero);
        let d = (got - expected).abs();
        if d > node_defect {
            node_defect = d;
        }
    }

    VerificationReport {
        reconstruction_residual,
        tv_defect,
        edge_additivity_defect: edge_defect,
        node_additivity_defect: node_defect,
        curve_flags: flags,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{perp_gradient, Cell, CellField, GridSpec};
    use crate::pixel_sets::{variation, PixelSet};
    use crate::scalar::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn cell(x: u32, y: u32) -> Cell {
        Cell { x, y }
    }

    #[test]
    fn single_pixel_gives_one_unit_loop() {
        let grid = GridSpec::new(2, 2);
        let field = PixelSet::from_cells(grid, [cell(0, 0)]).indicator::<Rational>();
        let m = MonotoneComponent::new(field.clone(), 1).unwrap();
        let loops = loops_of_monotone(&m).unwrap();
        assert_eq!(loops.len(), 1);
        assert_eq!(loops.items()[0].weight, r(1));
        assert_eq!(loops.items()[0].curve.len(), 4);
        assert_eq!(loops.superpose(), perp_gradient(&field));
    }

    #[test]
    fn two_level_peak_gives_nested_loops() {
        // 3x3 block valued 1 with center raised to 2.
        let grid = GridSpec::new(3, 3);
        let mut field = CellField::<Rational>::zeros(grid);
        for c in grid.cells() {
            field.set(c, r(1));
        }
        field.set(cell(1, 1), r(2));
        let m = MonotoneComponent::new(field.clone(), 1).unwrap();
        let loops = loops_of_monotone(&m).unwrap();
        assert_eq!(loops.len(), 2);
        // Ascending level order: the outer 3x3 boundary first, then the
        // center pixel.
        assert_eq!(loops.items()[0].curve.len(), 12);
        assert_eq!(loops.items()[1].curve.len(), 4);
        assert!(loops.items().iter().all(|w| w.weight == r(1)));
        assert_eq!(loops.superpose(), perp_gradient(&field));
        assert_eq!(loops.total_mass(), variation(&field));
    }

    #[test]
    fn negative_component_reverses_orientation() {
        let grid = GridSpec::new(2, 2);
        let pos = PixelSet::from_cells(grid, [cell(1, 1)]).indicator::<Rational>();
        let neg = pos.scale(&r(-1));
        let m = MonotoneComponent::new(neg.clone(), -1).unwrap();
        let loops = loops_of_monotone(&m).unwrap();
        assert_eq!(loops.len(), 1);
        assert_eq!(loops.items()[0].weight, r(1), "weights stay positive");
        assert_eq!(loops.superpose(), perp_gradient(&neg));
    }

    #[test]
    fn divfree_pipeline_reconstructs_exactly() {
        let grid = GridSpec::new(4, 4);
        let mut field = CellField::<Rational>::zeros(grid);
        // Signed terrain with a hole and a negative patch.
        let rows: [[i64; 4]; 4] = [[0, 2, 2, 0], [0, 2, 0, -1], [1, 2, 2, -1], [0, 0, 0, 0]];
        for (k, row) in rows.iter().enumerate() {
            for (x, &v) in row.iter().enumerate() {
                field.set(cell(x as u32, 3 - k as u32), r(v));
            }
        }
        let mu = perp_gradient(&field);
        let eta = decompose_divfree(&mu).unwrap();
        let report = verify_decomposition(&mu, &eta);
        assert!(report.is_clean(), "defective report:\n{report}");
        assert!(report.all_closed());
        assert!(report.all_simple());
        assert!(eta.items().iter().all(|w| w.weight.sign() > 0));
    }

    #[test]
    fn zero_flux_decomposes_to_nothing() {
        let mu = EdgeFlux::<Rational>::zeros(GridSpec::new(3, 3));
        let eta = decompose_divfree(&mu).unwrap();
        assert!(eta.is_empty());
        assert!(verify_decomposition(&mu, &eta).is_clean());
    }

    #[test]
    fn divergent_flux_is_rejected() {
        let grid = GridSpec::new(2, 2);
        let mut mu = EdgeFlux::<Rational>::zeros(grid);
        mu.set(Edge::H(0, 1), r(1));
        assert!(matches!(
            decompose_divfree(&mu),
            Err(Error::NotDivergenceFree { .. })
        ));
    }

    #[test]
    fn verify_flags_a_doubled_weight() {
        let grid = GridSpec::new(2, 2);
        let field = PixelSet::from_cells(grid, [cell(0, 0)]).indicator::<Rational>();
        let mu = perp_gradient(&field);
        let mut eta = decompose_divfree(&mu).unwrap();
        let bad = CurveSuperposition::from_items(
            grid,
            eta.items()
                .iter()
                .map(|w| WeightedCurve {
                    curve: w.curve.clone(),
                    weight: w.weight.clone() * r(2),
                })
                .collect(),
        );
        eta = bad;
        let report = verify_decomposition(&mu, &eta);
        assert!(!report.is_clean());
        assert!(report.reconstruction_residual.sign() > 0);
    }

    #[test]
    fn non_unique_decompositions_also_verify() {
        // The same square loop twice at half weight.
        let grid = GridSpec::new(2, 2);
        let field = PixelSet::from_cells(grid, [cell(0, 0)]).indicator::<Rational>();
        let mu = perp_gradient(&field);
        let once = decompose_divfree(&mu).unwrap();
        let curve = once.items()[0].curve.clone();
        let mut eta = CurveSuperposition::new(grid);
        eta.push(curve.clone(), Rational::ratio(1, 2));
        eta.push(curve, Rational::ratio(1, 2));
        assert!(verify_decomposition(&mu, &eta).is_clean());
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(32))]
        #[test]
        fn pipeline_identities_on_random_potentials(vals in proptest::collection::vec(-2i64..=3, 25)) {
            let grid = GridSpec::new(5, 5);
            let mut field = CellField::<Rational>::zeros(grid);
            for (k, c) in grid.cells().enumerate() {
                field.set(c, r(vals[k]));
            }
            let mu = perp_gradient(&field);
            let eta = decompose_divfree(&mu).unwrap();
            let report = verify_decomposition(&mu, &eta);
            proptest::prop_assert!(report.is_clean(), "defects:\n{}", report);
            proptest::prop_assert!(report.all_closed());
            proptest::prop_assert!(report.all_simple());
        }
    }
}
