//! Rigidity of upper-half-plane flows: a verifier for the three
//! hypotheses under which a curve-carried measure must vanish, plus the
//! orientation check for lattice decompositions.
//!
//! The measure is an atomic superposition of weighted polylines with real
//! coordinates. The hypotheses: (i) no mass on the closed lower half-plane
//! `{y <= 0}`, (ii) zero distributional divergence (endpoint deltas
//! cancel), (iii) every tangent ascends steeply: `u_y >= c |u|` per
//! segment. Jointly they force the zero measure — a closed polyline
//! violates (iii) on some segment because ascent cannot close up, and a
//! family of strictly ascending open curves cannot cancel its endpoint
//! deltas. The checker reports the first violation in a deterministic
//! item-then-segment scan, or certifies the input zero.
//!
//! Coordinates and weights here are plain `f64`: the geometry is affine
//! and the divergence bookkeeping uses exact coordinate matches, so
//! nothing is gained by threading the scalar abstraction through.

use crate::coarea::verify_decomposition;
use crate::curves::CurveSuperposition;
use crate::error::{Error, Result};
use crate::grid::EdgeFlux;
use crate::scalar::Scalar;

/// A polyline with real coordinates. For closed curves the final segment
/// from the last point back to the first is implicit (do not repeat the
/// first point).
#[derive(Clone, PartialEq, Debug)]
pub struct PolyCurve {
    points: Vec<[f64; 2]>,
    closed: bool,
}

impl PolyCurve {
    pub fn open(points: Vec<[f64; 2]>) -> Result<Self> {
        Self::validate(&points, false)?;
        Ok(PolyCurve { points, closed: false })
    }

    pub fn closed(points: Vec<[f64; 2]>) -> Result<Self> {
        Self::validate(&points, true)?;
        Ok(PolyCurve { points, closed: true })
    }

    fn validate(points: &[[f64; 2]], closed: bool) -> Result<()> {
        if points.len() < 2 {
            return Err(Error::InvalidCurve("poly-curve needs at least 2 points".into()));
        }
        if points.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidCurve("poly-curve coordinates must be finite".into()));
        }
        for pair in points.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidCurve(
                    "consecutive poly-curve points must be distinct".into(),
                ));
            }
        }
        if closed && points.first() == points.last() {
            return Err(Error::InvalidCurve(
                "closed poly-curves close implicitly; do not repeat the first point".into(),
            ));
        }
        Ok(())
    }

    pub fn points(&self) -> &[[f64; 2]] {
        &self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Directed segments, including the implicit closing one.
    pub fn segments(&self) -> Vec<([f64; 2], [f64; 2])> {
        let mut segs: Vec<_> = self.points.windows(2).map(|p| (p[0], p[1])).collect();
        if self.closed {
            segs.push((*self.points.last().unwrap(), self.points[0]));
        }
        segs
    }

    /// Euclidean length over all segments.
    pub fn length(&self) -> f64 {
        self.segments()
            .iter()
            .map(|(p, q)| ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)).sqrt())
            .sum()
    }
}

/// A finite atomic measure: weighted poly-curves and the cone constant.
#[derive(Clone, Debug)]
pub struct RigidityInput {
    pub items: Vec<(f64, PolyCurve)>,
    pub c: f64,
}

impl RigidityInput {
    pub fn new(items: Vec<(f64, PolyCurve)>, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::NonPositiveConstant(format!(
                "cone constant must be positive and finite, got {c}"
            )));
        }
        for (w, _) in &items {
            if !(*w > 0.0) || !w.is_finite() {
                return Err(Error::NonPositiveConstant(format!(
                    "curve weights must be positive and finite, got {w}"
                )));
            }
        }
        Ok(RigidityInput { items, c })
    }

    /// Total mass: the weighted Euclidean length.
    pub fn mass(&self) -> f64 {
        self.items.iter().map(|(w, curve)| w * curve.length()).sum()
    }
}

/// The open cone-truncation region
/// `T = { y : 0 < y_2 < h, |y_1| < r + (h - y_2)/c }` used by the rigidity
/// proof; all inequalities strict.
#[derive(Clone, Copy, Debug)]
pub struct ConeRegion {
    pub r: f64,
    pub h: f64,
    pub c: f64,
}

impl ConeRegion {
    pub fn new(r: f64, h: f64, c: f64) -> Result<Self> {
        if r > 0.0 && h > 0.0 && c > 0.0 {
            Ok(ConeRegion { r, h, c })
        } else {
            Err(Error::NonPositiveConstant(format!(
                "cone region needs positive r, h, c; got r={r}, h={h}, c={c}"
            )))
        }
    }
}

/// Literal membership test for the cone region.
pub fn cone_region_contains(t: &ConeRegion, p: [f64; 2]) -> bool {
    0.0 < p[1] && p[1] < t.h && p[0].abs() < t.r + (t.h - p[1]) / t.c
}

/// The concrete way an input fails the rigidity hypotheses.
#[derive(Clone, PartialEq, Debug)]
pub enum Violation {
    /// Segment carries 1-D mass on `{y <= 0}` (dips below the axis or
    /// runs along it).
    LowerHalfMass { item: usize, segment: usize },
    /// Endpoint deltas do not cancel at this point.
    NonzeroDivergence { point: [f64; 2], residual: f64 },
    /// Segment direction leaves the cone: `u_y < c |u|`.
    ConeCondition { item: usize, segment: usize, ratio: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::LowerHalfMass { item, segment } => {
                write!(out, "lower-half mass on curve {item}, segment {segment}")
            }
            Violation::NonzeroDivergence { point, residual } => write!(
                out,
                "nonzero divergence {residual} at ({}, {})",
                point[0], point[1]
            ),
            Violation::ConeCondition { item, segment, ratio } => write!(
                out,
                "cone condition fails on curve {item}, segment {segment} (ratio {ratio})"
            ),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum RigidityVerdict {
    Zero,
    HypothesisFails(Violation),
}

fn is_descending_or_flat_on_axis(p: [f64; 2], q: [f64; 2]) -> bool {
    // Positive 1-D measure on {y <= 0}: some open sub-interval lies at
    // y <= 0, i.e. an endpoint is strictly below or the segment runs along
    // the axis. A single touch point carries no mass.
    p[1].min(q[1]) < 0.0 || (p[1] == 0.0 && q[1] == 0.0)
}

fn cone_holds(c: f64, p: [f64; 2], q: [f64; 2]) -> bool {
    let u = [q[0] - p[0], q[1] - p[1]];
    // u_y >= c |u|, compared squared to stay exact in the common rational
    // coordinate cases.
    u[1] >= 0.0 && u[1] * u[1] >= c * c * (u[0] * u[0] + u[1] * u[1])
}

fn cone_ratio(p: [f64; 2], q: [f64; 2]) -> f64 {
    let u = [q[0] - p[0], q[1] - p[1]];
    u[1] / (u[0] * u[0] + u[1] * u[1]).sqrt()
}

/// Normalize -0.0 so coordinate keys match numerically equal points.
fn point_key(p: [f64; 2]) -> (u64, u64) {
    ((p[0] + 0.0).to_bits(), (p[1] + 0.0).to_bits())
}

/// Check the three hypotheses in order (lower-half mass, divergence, cone
/// condition), scanning items then segments, and report the first
/// violation. `Zero` means all hypotheses hold — by the theorem the
/// measure must then be the zero measure.
pub fn check_hypotheses(input: &RigidityInput) -> RigidityVerdict {
    // (i) no mass on the closed lower half-plane.
    for (item, (_, curve)) in input.items.iter().enumerate() {
        for (segment, (p, q)) in curve.segments().into_iter().enumerate() {
            if is_descending_or_flat_on_axis(p, q) {
                return RigidityVerdict::HypothesisFails(Violation::LowerHalfMass {
                    item,
                    segment,
                });
            }
        }
    }

    // (ii) endpoint deltas cancel (closed curves contribute none). Exact
    // coordinate and weight arithmetic: matching sources and sinks must
    // coincide bit-for-bit.
    let mut net: std::collections::BTreeMap<(u64, u64), f64> = std::collections::BTreeMap::new();
    for (w, curve) in &input.items {
        if curve.is_closed() {
            continue;
        }
        let start = curve.points()[0];
        let end = *curve.points().last().unwrap();
        *net.entry(point_key(start)).or_insert(0.0) += w;
        *net.entry(point_key(end)).or_insert(0.0) -= w;
    }
    for (_, curve) in &input.items {
        if curve.is_closed() {
            continue;
        }
        for p in [curve.points()[0], *curve.points().last().unwrap()] {
            let residual = net.get(&point_key(p)).copied().unwrap_or(0.0);
            if residual != 0.0 {
                return RigidityVerdict::HypothesisFails(Violation::NonzeroDivergence {
                    point: p,
                    residual,
                });
            }
        }
    }

    // (iii) every segment direction stays inside the cone.
    for (item, (_, curve)) in input.items.iter().enumerate() {
        for (segment, (p, q)) in curve.segments().into_iter().enumerate() {
            if !cone_holds(input.c, p, q) {
                return RigidityVerdict::HypothesisFails(Violation::ConeCondition {
                    item,
                    segment,
                    ratio: cone_ratio(p, q),
                });
            }
        }
    }

    RigidityVerdict::Zero
}

/// The rigidity theorem as an executable check: inputs passing all three
/// hypotheses must carry zero mass. Violations are forwarded; the branch
/// reporting a contradiction on a positive-mass pass is reachable only if
/// the hypothesis checker itself is wrong.
pub fn rigidity_theorem_check(input: &RigidityInput) -> RigidityVerdict {
    match check_hypotheses(input) {
        RigidityVerdict::HypothesisFails(v) => RigidityVerdict::HypothesisFails(v),
        RigidityVerdict::Zero => {
            if input.mass() == 0.0 {
                return RigidityVerdict::Zero;
            }
            // Hypotheses passed with positive mass: the theorem says this
            // cannot happen, so hunt down the contradiction the proof
            // guarantees. A closed curve must contain a non-ascending
            // segment; failing that, strictly ascending open curves leave
            // an uncancelled delta at their lowest endpoint.
            for (item, (_, curve)) in input.items.iter().enumerate() {
                if !curve.is_closed() {
                    continue;
                }
                for (segment, (p, q)) in curve.segments().into_iter().enumerate() {
                    if q[1] <= p[1] {
                        return RigidityVerdict::HypothesisFails(Violation::ConeCondition {
                            item,
                            segment,
                            ratio: cone_ratio(p, q),
                        });
                    }
                }
            }
            let lowest = self::lowest_endpoint(input);
            RigidityVerdict::HypothesisFails(Violation::NonzeroDivergence {
                point: lowest,
                residual: f64::NAN,
            })
        }
    }
}

fn lowest_endpoint(input: &RigidityInput) -> [f64; 2] {
    let mut best = [f64::INFINITY, f64::INFINITY];
    for (_, curve) in &input.items {
        if curve.is_closed() {
            continue;
        }
        for p in [curve.points()[0], *curve.points().last().unwrap()] {
            if (p[1], p[0]) < (best[1], best[0]) {
                best = p;
            }
        }
    }
    best
}

/// Lattice form of the orientation lemma: given a clean decomposition
/// (zero reconstruction residual and zero TV defect), every curve must
/// traverse every edge it uses in the direction of the flux there.
///
/// Fails the precondition check otherwise, since cancellation would make
/// the question ill-posed.
pub fn orientation_check<S: Scalar>(
    mu: &EdgeFlux<S>,
    eta: &CurveSuperposition<S>,
) -> Result<bool> {
    let report = verify_decomposition(mu, eta);
    if !report.reconstruction_residual.approx_zero() || !report.tv_defect.approx_zero() {
        return Err(Error::PreconditionFailed(format!(
            "orientation check needs a clean decomposition (residual {}, tv defect {})",
            report.reconstruction_residual, report.tv_defect
        )));
    }
    for item in eta.items() {
        for (_, edge, dir) in item.curve.steps() {
            if mu.get(edge).sign() != dir {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
