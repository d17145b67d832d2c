//! Decomposition of a cell field into monotone, constant-sign components
//! with exact additivity of variation.
//!
//! A field is *monotone* when every inter-value threshold splits the grid
//! into a 4-connected finite side and an 8-connected exterior side. The
//! decomposition repeatedly peels a *bottom slab* off the positive part
//! (or, when none remains, the negative part) of the remainder:
//!
//! 1. anchor at the smallest positive value `a` and take the largest
//!    4-component `R` of the support,
//! 2. fill the pockets of `R` so every superlevel of the slab is simple,
//! 3. subtract `a` on the filled set.
//!
//! Each step satisfies `variation(r) = variation(r - slab) +
//! variation(slab)` exactly, edge by edge — the slab's boundary edges
//! always separate a cell with value `>= a` from one with value `<= 0`, so
//! the absolute differences split additively. Filling may overshoot the
//! remainder inside pockets; the remainder then goes locally negative and
//! a later negative-sign extraction picks it up.

use crate::error::{Error, Result};
use crate::grid::{CellField, GridSpec};
use crate::pixel_sets::{
    self, components, fill_pockets, strict_superlevel, Connectivity, PixelSet,
};
use crate::scalar::Scalar;

/// One monotone, constant-sign piece of a decomposition. The `field`
/// carries the sign (`sign * field >= 0` everywhere).
#[derive(Clone, Debug)]
pub struct MonotoneComponent<S: Scalar> {
    pub field: CellField<S>,
    pub sign: i8,
}

impl<S: Scalar> MonotoneComponent<S> {
    /// Validates the component invariants: constant sign, monotone, and
    /// nonzero variation.
    pub fn new(field: CellField<S>, sign: i8) -> Result<Self> {
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        let constant_sign = field
            .values()
            .iter()
            .all(|v| v.sign() as i16 * sign as i16 >= 0);
        if !constant_sign || field.is_zero() || !is_monotone(&field) {
            return Err(Error::NotMonotone);
        }
        Ok(MonotoneComponent { field, sign })
    }

    /// The non-negative magnitude `sign * field`.
    pub fn magnitude(&self) -> CellField<S> {
        if self.sign == 1 {
            self.field.clone()
        } else {
            self.field.scale(&-S::one())
        }
    }
}

/// Sorted distinct values of the field together with zero.
pub(crate) fn distinct_values_with_zero<S: Scalar>(f: &CellField<S>) -> Vec<S> {
    let mut vals: Vec<S> = vec![S::zero()];
    for v in f.values() {
        if !vals.contains(v) {
            vals.push(v.clone());
        }
    }
    vals.sort_by(|a, b| a.partial_cmp(b).expect("scalar values are totally ordered"));
    vals
}

/// The finite side of the threshold `t` lying strictly inside a plateau:
/// `{f > lower}` when `lower >= 0`, else the sublevel `{f <= lower}`.
fn finite_side<S: Scalar>(f: &CellField<S>, lower: &S) -> PixelSet {
    if lower.sign() >= 0 {
        strict_superlevel(f, lower)
    } else {
        let mut set = PixelSet::empty(f.grid());
        for c in f.grid().cells() {
            if f.get(c) <= lower {
                set.insert(c);
            }
        }
        set
    }
}

/// Whether every inter-value threshold of `f` splits the grid into a
/// 4-connected finite side and an 8-connected exterior side. Thresholds
/// below zero are judged symmetrically (the sublevel set is then the
/// finite side). Constant-zero fields are vacuously monotone.
pub fn is_monotone<S: Scalar>(f: &CellField<S>) -> bool {
    let vals = distinct_values_with_zero(f);
    vals.windows(2).all(|w| {
        let side = finite_side(f, &w[0]);
        side.is_empty() || pixel_sets::is_simple(&side)
    })
}

/// Assemble the field `w(x) = max { t : x in A_t }` (zero when `x` lies in
/// no level set) from strictly increasing levels with nested supports.
pub fn build_from_superlevels<S: Scalar>(
    grid: GridSpec,
    levels: &[(S, PixelSet)],
) -> Result<CellField<S>> {
    for (i, w) in levels.windows(2).enumerate() {
        if w[1].0 <= w[0].0 {
            return Err(Error::PreconditionFailed(format!(
                "levels must be strictly increasing (violated at index {i})"
            )));
        }
        if !w[1].1.is_subset_of(&w[0].1) {
            return Err(Error::NotNested { pair: (i, i + 1) });
        }
    }
    let mut f = CellField::zeros(grid);
    for (t, set) in levels {
        grid.check_same(&set.grid())?;
        for c in set.members() {
            f.set(c, t.clone());
        }
    }
    Ok(f)
}

fn check_nonnegative<S: Scalar>(f: &CellField<S>) -> Result<()> {
    for c in f.grid().cells() {
        if f.get(c).sign() < 0 {
            return Err(Error::NotNonNegative { cell: c });
        }
    }
    if f.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    Ok(())
}

/// Smallest positive value of `f` and the largest 4-component of the
/// support (ties broken by smallest row-major member cell, which is how
/// [`components`] orders them).
fn bottom_anchor<S: Scalar>(f: &CellField<S>) -> (S, PixelSet) {
    let a = f
        .values()
        .iter()
        .filter(|v| v.sign() > 0)
        .min_by(|x, y| x.partial_cmp(y).expect("ordered"))
        .expect("caller checked f is not identically zero")
        .clone();
    let support = strict_superlevel(f, &S::zero());
    // Components come in row-major discovery order; strict comparison keeps
    // the first (smallest starting cell) among equal areas.
    let mut chosen: Option<PixelSet> = None;
    for c in components(&support, Connectivity::Four).components {
        if chosen.as_ref().map_or(true, |cur| c.area() > cur.area()) {
            chosen = Some(c);
        }
    }
    (a, chosen.expect("support is nonempty"))
}

/// Peel the bottom slab of a non-negative field: `a` times the indicator
/// of the largest support component, where `a` is the smallest positive
/// value. Every superlevel set of the result is 4-connected and the
/// variation splits exactly: `variation(f) = variation(f - g) +
/// variation(g)`.
pub fn extract_indecomposable<S: Scalar>(f: &CellField<S>) -> Result<CellField<S>> {
    check_nonnegative(f)?;
    let (a, r) = bottom_anchor(f);
    let mut g = CellField::zeros(f.grid());
    for c in r.members() {
        g.set(c, a.clone());
    }
    Ok(g)
}

/// Like [`extract_indecomposable`], but with the component's pockets
/// filled so that every superlevel set of the slab is simple (and
/// pinch-free, hence bounded by a single simple loop). The slab may exceed
/// `f` inside pockets; the additivity `variation(f) = variation(f - h) +
/// variation(h)` still holds exactly because slab boundary edges always
/// separate a support cell from a non-positive cell.
pub fn extract_simple<S: Scalar>(f: &CellField<S>) -> Result<CellField<S>> {
    check_nonnegative(f)?;
    let (a, r) = bottom_anchor(f);
    let filled = fill_pockets(&r);
    let mut h = CellField::zeros(f.grid());
    for c in filled.members() {
        h.set(c, a.clone());
    }
    Ok(h)
}

fn positive_part<S: Scalar>(f: &CellField<S>) -> CellField<S> {
    f.map(|v| if v.sign() > 0 { v.clone() } else { S::zero() })
}

fn negative_part<S: Scalar>(f: &CellField<S>) -> CellField<S> {
    f.map(|v| if v.sign() < 0 { -v.clone() } else { S::zero() })
}

/// Iteration cap for [`decompose_monotone`]: distinct values times the
/// worst 4-component count over the finite threshold sides, times two for
/// the signs. Exceeding it indicates a bug, not bad data.
pub fn iteration_cap<S: Scalar>(f: &CellField<S>) -> usize {
    let vals = distinct_values_with_zero(f);
    let mut max_comps = 1usize;
    for w in vals.windows(2) {
        let side = finite_side(f, &w[0]);
        max_comps = max_comps.max(components(&side, Connectivity::Four).len());
    }
    vals.len().max(2) * max_comps * 2
}

/// Split `f` into monotone constant-sign components with
/// `sum_i field_i = f` and exact per-edge variation additivity. Positive
/// mass is exhausted before negative mass at each step; pocket filling may
/// push mass across zero, which later steps of the opposite sign absorb.
pub fn decompose_monotone<S: Scalar>(f: &CellField<S>) -> Result<Vec<MonotoneComponent<S>>> {
    let cap = iteration_cap(f);
    let mut remainder = f.clone();
    let mut parts = Vec::new();
    let mut steps = 0usize;
    while !remainder.is_zero() {
        if steps >= cap {
            return Err(Error::NonTermination { iteration_cap: cap });
        }
        steps += 1;
        let pos = positive_part(&remainder);
        let (slab, sign) = if !pos.is_zero() {
            (extract_simple(&pos)?, 1i8)
        } else {
            (extract_simple(&negative_part(&remainder))?, -1i8)
        };
        let field = if sign == 1 {
            slab
        } else {
            slab.scale(&-S::one())
        };
        remainder = remainder.sub(&field);
        parts.push(MonotoneComponent::new(field, sign)?);
    }
    Ok(parts)
}
