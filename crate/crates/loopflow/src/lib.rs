//! Exact decomposition of discrete vector measures on the square lattice.
//!
//! A *flux* assigns a signed value to every edge of a finite grid graph.
//! This crate decomposes such fluxes into weighted superpositions of
//! simple closed loops and simple open paths, with every identity checked
//! — and, over the rational backend, holding bit-exactly:
//!
//! * **Streamfunctions.** Divergence-free fluxes are exactly the
//!   perpendicular gradients of cell potentials ([`grid::perp_gradient`],
//!   [`grid::integrate_potential`]), and the potential's variation equals
//!   the flux's total variation.
//! * **Monotone splitting.** Any potential splits into constant-sign
//!   fields with simple superlevel sets ([`monotone::decompose_monotone`])
//!   with exact per-edge variation additivity.
//! * **Loop slicing.** Each monotone piece slices into weighted boundary
//!   loops of its superlevel sets ([`coarea::loops_of_monotone`],
//!   [`coarea::decompose_divfree`]); weighted length accounts for the
//!   entire total variation.
//! * **Paths.** Divergent fluxes split into a cyclic part and an acyclic
//!   part; the acyclic part strips into simple paths whose endpoint
//!   masses reproduce the divergence exactly ([`flow::decompose_general`]).
//! * **Extreme points.** The unit balls of the variation and
//!   length-plus-variation norms have indicator-based extreme points;
//!   [`extremality::certify`] decides membership with re-checkable
//!   witnesses.
//! * **Rigidity.** Steeply ascending upper-half-plane measures with zero
//!   divergence must vanish; [`rigidity::check_hypotheses`] reports the
//!   first violated hypothesis otherwise.
//!
//! Start with the `examples/` directory — each major capability has a
//! runnable walkthrough — or the `loopflow` binary for the JSON file
//! pipeline (`gen`, `decompose`, `verify`, `render`, `rigidity`).

pub mod cli;
pub mod coarea;
pub mod curves;
pub mod error;
pub mod extremality;
pub mod flow;
pub mod generate;
pub mod grid;
pub mod io;
pub mod monotone;
pub mod pixel_sets;
pub mod render;
pub mod rigidity;
pub mod scalar;

pub use coarea::{decompose_divfree, verify_decomposition, VerificationReport};
pub use curves::{CurveSuperposition, LatticeCurve, WeightedCurve};
pub use error::{Error, Result};
pub use extremality::{certify_extreme_bv, certify_extreme_fv, ExtremeCertificate};
pub use flow::{cycle_acyclic_split, decompose_general, is_subcurrent};
pub use grid::{
    divergence, integrate_potential, perp_gradient, total_variation, Cell, CellField, Edge,
    EdgeFlux, GridSpec, Node, NodeDivergence,
};
pub use monotone::{decompose_monotone, is_monotone, MonotoneComponent};
pub use pixel_sets::{is_simple, perimeter, saturate, trace_boundary, variation, PixelSet};
pub use rigidity::{check_hypotheses, rigidity_theorem_check, RigidityInput, RigidityVerdict};
pub use scalar::{Rational, Scalar, ScalarMode, FLOAT_EPS};
