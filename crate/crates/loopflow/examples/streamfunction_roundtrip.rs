//! Cell potentials and edge fluxes are two views of the same data: the
//! perp gradient turns a potential into a divergence-free flux, integration
//! inverts it exactly, and the map is an isometry from the variation norm
//! to the total-variation norm.

use loopflow::Scalar;
use loopflow::{
    divergence, integrate_potential, perp_gradient, total_variation, Cell, CellField,
    GridSpec, Rational,
};

fn main() {
    let grid = GridSpec::new(5, 4);
    let mut f = CellField::<Rational>::zeros(grid);
    f.set(Cell { x: 1, y: 1 }, Rational::from_int(2));
    f.set(Cell { x: 2, y: 1 }, Rational::from_int(2));
    f.set(Cell { x: 2, y: 2 }, Rational::ratio(7, 2));
    f.set(Cell { x: 4, y: 0 }, Rational::from_int(-1));

    println!("potential (top row first):");
    for y in (0..grid.height).rev() {
        let row: Vec<String> = (0..grid.width)
            .map(|x| f.get(Cell { x, y }).to_string())
            .collect();
        println!("  [{}]", row.join(", "));
    }

    // Rotate the gradient a quarter turn: flux circulates along the level
    // lines of the potential, so nothing accumulates anywhere.
    let mu = perp_gradient(&f);
    let div = divergence(&mu);
    assert!(div.is_zero(), "perp gradients are divergence-free");
    println!("\nperp gradient: divergence vanishes at all nodes");

    // The two norms agree exactly (no epsilons: this is rational data).
    let variation = loopflow::variation(&f);
    let tv = total_variation(&mu);
    println!("variation(f)       = {variation}");
    println!("total_variation(mu) = {tv}");
    assert_eq!(variation, tv, "the correspondence is an isometry");

    // And it inverts: integrating the flux recovers the potential.
    let back = integrate_potential(&mu).expect("consistent circulation");
    assert_eq!(back, f, "integrate_potential inverts perp_gradient");
    println!("\nintegrate_potential(perp_gradient(f)) == f  (exact)");
}
