//! The rigidity gate: a weighted family of polygonal curves confined to
//! the closed upper half-plane, with zero endpoint divergence and every
//! tangent inside the upward cone u_d >= c|u|, must be the zero measure.
//! The checker either confirms mass zero or names the violated hypothesis.

use loopflow::rigidity::{cone_region_contains, ConeRegion, PolyCurve, Violation};
use loopflow::{check_hypotheses, rigidity_theorem_check, RigidityInput, RigidityVerdict};

fn main() {
    // The open cone region used by the theorem's geometry.
    let t = ConeRegion::new(1.0, 1.0, 1.0).unwrap();
    assert!(cone_region_contains(&t, [0.0, 0.5]));
    assert!(!cone_region_contains(&t, [0.0, 0.0])); // boundary excluded
    assert!(!cone_region_contains(&t, [1.6, 0.5]));
    println!("cone region: contains (0, 0.5), excludes (0, 0) and (1.6, 0.5)");

    // Empty input: hypotheses hold vacuously, and indeed the mass is zero.
    let empty = RigidityInput::new(vec![], 0.5).unwrap();
    assert_eq!(rigidity_theorem_check(&empty), RigidityVerdict::Zero);
    println!("empty family: verdict zero\n");

    // Anything with positive mass must trip one of the three hypotheses.
    let diamond = PolyCurve::closed(vec![
        [0.0, 1.0],
        [1.0, 2.0],
        [0.0, 3.0],
        [-1.0, 2.0],
    ])
    .unwrap();
    let input = RigidityInput::new(vec![(1.0, diamond)], 0.5).unwrap();
    match check_hypotheses(&input) {
        RigidityVerdict::HypothesisFails(Violation::ConeCondition {
            item,
            segment,
            ratio,
        }) => {
            println!(
                "closed loop above the axis: cone fails on item {item} \
                 segment {segment} (ratio {ratio:.3} < 0.5)"
            );
            // A loop comes back down; some tangent must leave the cone.
            assert!(ratio < 0.5);
        }
        other => panic!("expected a cone violation, got {other:?}"),
    }

    let dipping = PolyCurve::open(vec![[0.0, 1.0], [0.0, -0.25]]).unwrap();
    let input = RigidityInput::new(vec![(2.0, dipping)], 0.5).unwrap();
    match check_hypotheses(&input) {
        RigidityVerdict::HypothesisFails(Violation::LowerHalfMass { item, segment }) => {
            println!("dipping path: lower-half mass on item {item} segment {segment}");
        }
        other => panic!("expected lower-half mass, got {other:?}"),
    }

    let ascending = PolyCurve::open(vec![[0.0, 0.5], [0.25, 1.5], [0.5, 2.5]]).unwrap();
    let input = RigidityInput::new(vec![(1.0, ascending)], 0.5).unwrap();
    match check_hypotheses(&input) {
        RigidityVerdict::HypothesisFails(Violation::NonzeroDivergence { point, residual }) => {
            println!(
                "lone ascending path: endpoint divergence {residual:+} at \
                 ({}, {})",
                point[0], point[1]
            );
            // Its segments do satisfy the cone telescope, so displacement
            // is bounded by rise / c.
            let dx = (2.5f64 - 0.5).abs();
            assert!((0.5f64 - 0.0).abs() <= dx / 0.5);
        }
        other => panic!("expected nonzero divergence, got {other:?}"),
    }

    println!("\nno positive-mass family passes all three hypotheses — that is the theorem");
}
