//! Deterministic test-input generators.
//!
//! Every generator is a pure function of `(kind, seed, size)`: the same
//! arguments produce byte-identical documents on every platform (the RNG
//! is ChaCha8, whose stream is fixed by the seed). Values are small
//! integers so both scalar backends represent them exactly.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::grid::{perp_gradient, Cell, CellField, Edge, EdgeFlux, GridSpec};
use crate::scalar::Scalar;

/// The five input families.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenKind {
    /// Unit clockwise loop around one cell: the smallest divergence-free
    /// flux. Ignores the seed.
    Pixel,
    /// Concentric nested loops (the gradient of a pyramid potential):
    /// divergence-free with a deep superlevel structure. Ignores the seed.
    Vortex,
    /// Gradient of a seeded random integer potential: divergence-free.
    RandomPotential,
    /// Unit source and sink joined by two parallel half-weight routes:
    /// divergent, exercises the general (path) decomposition.
    Dipole,
    /// Rows of constant positive horizontal flux: divergent with sources
    /// along the left boundary; acyclic by the rightward rule.
    Shear,
}

impl std::str::FromStr for GenKind {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "pixel" => Ok(GenKind::Pixel),
            "vortex" => Ok(GenKind::Vortex),
            "random-potential" => Ok(GenKind::RandomPotential),
            "dipole" => Ok(GenKind::Dipole),
            "shear" => Ok(GenKind::Shear),
            other => Err(Error::Parse(format!(
                "unknown generator kind {other:?} (expected pixel, vortex, \
                 random-potential, dipole or shear)"
            ))),
        }
    }
}

impl GenKind {
    pub const ALL: [GenKind; 5] = [
        GenKind::Pixel,
        GenKind::Vortex,
        GenKind::RandomPotential,
        GenKind::Dipole,
        GenKind::Shear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::Pixel => "pixel",
            GenKind::Vortex => "vortex",
            GenKind::RandomPotential => "random-potential",
            GenKind::Dipole => "dipole",
            GenKind::Shear => "shear",
        }
    }
}

fn uniform(rng: &mut ChaCha8Rng, n: u64) -> u64 {
    debug_assert!(n > 0);
    rng.next_u64() % n
}

/// Uniform integer in `[lo, hi]`, inclusive.
fn uniform_int(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    lo + uniform(rng, (hi - lo + 1) as u64) as i64
}

/// A seeded random integer potential with values in `[lo, hi]`.
pub fn seeded_field<S: Scalar>(grid: GridSpec, seed: u64, lo: i64, hi: i64) -> CellField<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = CellField::zeros(grid);
    for cell in grid.cells() {
        f.set(cell, S::from_int(uniform_int(&mut rng, lo, hi)));
    }
    f
}

/// Gradient of a seeded random potential: always divergence-free.
pub fn seeded_divfree_flux<S: Scalar>(grid: GridSpec, seed: u64, lo: i64, hi: i64) -> EdgeFlux<S> {
    perp_gradient(&seeded_field(grid, seed, lo, hi))
}

/// A seeded mix of a divergence-free part and a few source/sink walks:
/// integer flux with nonzero divergence (generically).
pub fn seeded_mixed_flux<S: Scalar>(grid: GridSpec, seed: u64) -> EdgeFlux<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mu = perp_gradient(&seeded_field::<S>(grid, seed.wrapping_add(1), -2, 2));
    let walks = 1 + uniform(&mut rng, 3);
    for _ in 0..walks {
        let mut x = uniform(&mut rng, grid.width as u64 + 1) as u32;
        let mut y = uniform(&mut rng, grid.height as u64 + 1) as u32;
        let steps = 1 + uniform(&mut rng, 2 * grid.width.max(grid.height) as u64);
        for _ in 0..steps {
            // Candidate moves that stay inside the node box, with the edge
            // and traversal sign each would add.
            let mut moves: Vec<(u32, u32, Edge, i8)> = Vec::with_capacity(4);
            if x < grid.width {
                moves.push((x + 1, y, Edge::H(x, y), 1));
            }
            if x > 0 {
                moves.push((x - 1, y, Edge::H(x - 1, y), -1));
            }
            if y < grid.height {
                moves.push((x, y + 1, Edge::V(x, y), 1));
            }
            if y > 0 {
                moves.push((x, y - 1, Edge::V(x, y - 1), -1));
            }
            let (nx, ny, edge, dir) = moves[uniform(&mut rng, moves.len() as u64) as usize];
            mu.add_at(edge, S::from_int(dir as i64));
            x = nx;
            y = ny;
        }
    }
    mu
}

fn pixel_flux<S: Scalar>(size: u32) -> EdgeFlux<S> {
    let grid = GridSpec::new(size, size);
    let mut f = CellField::zeros(grid);
    f.set(Cell { x: size / 2, y: size / 2 }, S::one());
    perp_gradient(&f)
}

fn vortex_flux<S: Scalar>(size: u32) -> EdgeFlux<S> {
    let grid = GridSpec::new(size, size);
    let mut f = CellField::zeros(grid);
    for cell in grid.cells() {
        let ring = (cell.x)
            .min(cell.y)
            .min(size - 1 - cell.x)
            .min(size - 1 - cell.y);
        f.set(cell, S::from_int(ring as i64 + 1));
    }
    perp_gradient(&f)
}

fn dipole_flux<S: Scalar>(size: u32) -> EdgeFlux<S> {
    let grid = GridSpec::new(size, size);
    let mut mu = EdgeFlux::zeros(grid);
    let half = S::ratio(1, 2);
    // Route 1: straight along the bottom node row.
    for i in 0..size {
        mu.add_at(Edge::H(i, 0), half.clone());
    }
    // Route 2: up, across the next node row, back down at the far side.
    mu.add_at(Edge::V(0, 0), half.clone());
    for i in 0..size {
        mu.add_at(Edge::H(i, 1), half.clone());
    }
    mu.add_at(Edge::V(size, 0), -half);
    mu
}

fn shear_flux<S: Scalar>(size: u32, seed: u64) -> EdgeFlux<S> {
    let grid = GridSpec::new(size, size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mu = EdgeFlux::zeros(grid);
    for j in 0..=size {
        let rate = S::from_int(uniform_int(&mut rng, 1, 3));
        for i in 0..size {
            mu.set(Edge::H(i, j), rate.clone());
        }
    }
    mu
}

/// Largest size `generate` accepts.
pub const MAX_GEN_SIZE: u32 = 512;

/// Generate one input flux. Deterministic in `(kind, seed, size)`.
pub fn generate<S: Scalar>(kind: GenKind, seed: u64, size: u32) -> Result<EdgeFlux<S>> {
    if size < 1 || size > MAX_GEN_SIZE {
        return Err(Error::Parse(format!(
            "size must be between 1 and {MAX_GEN_SIZE}, got {size}"
        )));
    }
    let grid = GridSpec::new(size, size);
    Ok(match kind {
        GenKind::Pixel => pixel_flux(size),
        GenKind::Vortex => vortex_flux(size),
        GenKind::RandomPotential => seeded_divfree_flux(grid, seed, -3, 3),
        GenKind::Dipole => dipole_flux(size),
        GenKind::Shear => shear_flux(size, seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{is_acyclic_fast, AcyclicTest};
    use crate::grid::{divergence, Node};
    use crate::io::write_edge_flux;
    use crate::scalar::Rational;

    #[test]
    fn generators_are_deterministic() {
        for kind in GenKind::ALL {
            let a = generate::<Rational>(kind, 7, 6).unwrap();
            let b = generate::<Rational>(kind, 7, 6).unwrap();
            assert_eq!(
                write_edge_flux(&a),
                write_edge_flux(&b),
                "{} must be byte-identical per seed",
                kind.name()
            );
        }
        let a = generate::<Rational>(GenKind::RandomPotential, 1, 6).unwrap();
        let b = generate::<Rational>(GenKind::RandomPotential, 2, 6).unwrap();
        assert_ne!(write_edge_flux(&a), write_edge_flux(&b), "seed matters");
    }

    #[test]
    fn pixel_and_vortex_and_potential_are_divergence_free() {
        for kind in [GenKind::Pixel, GenKind::Vortex, GenKind::RandomPotential] {
            let mu = generate::<Rational>(kind, 3, 5).unwrap();
            assert!(divergence(&mu).is_zero(), "{} divergence", kind.name());
            assert!(!mu.is_zero());
        }
    }

    #[test]
    fn dipole_has_unit_source_and_sink() {
        let size = 4;
        let mu = generate::<Rational>(GenKind::Dipole, 0, size).unwrap();
        let div = divergence(&mu);
        for node in GridSpec::new(size, size).nodes() {
            let expected = if node == Node::new(0, 0) {
                Rational::from_int(1)
            } else if node == Node::new(size, 0) {
                Rational::from_int(-1)
            } else {
                Rational::from_int(0)
            };
            assert_eq!(div.get(node), &expected, "divergence at {node:?}");
        }
    }

    #[test]
    fn shear_is_rightward_acyclic_and_divergent() {
        let mu = generate::<Rational>(GenKind::Shear, 11, 4).unwrap();
        assert!(!divergence(&mu).is_zero());
        let verdict = is_acyclic_fast(&mu);
        assert!(verdict.acyclic);
        assert_eq!(verdict.test, AcyclicTest::RightwardRule);
    }

    #[test]
    fn size_bounds_are_enforced() {
        assert!(generate::<Rational>(GenKind::Pixel, 0, 0).is_err());
        assert!(generate::<Rational>(GenKind::Pixel, 0, 513).is_err());
        assert!(generate::<Rational>(GenKind::Pixel, 0, 1).is_ok());
    }

    #[test]
    fn mixed_flux_is_integer_valued() {
        let grid = GridSpec::new(5, 5);
        let mu = seeded_mixed_flux::<Rational>(grid, 42);
        for e in grid.edges() {
            assert!(mu.get(e).is_integer());
        }
    }
}
