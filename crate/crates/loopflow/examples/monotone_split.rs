//! Every signed field splits into monotone constant-sign components whose
//! variations add up exactly — not just globally but edge by edge, so no
//! cancellation hides anywhere.

use loopflow::monotone::iteration_cap;
use loopflow::Scalar;
use loopflow::{
    decompose_monotone, is_monotone, variation, Cell, CellField, GridSpec, Rational,
};

fn main() {
    let grid = GridSpec::new(4, 3);
    // Two positive plateaus of different heights and a negative well.
    let rows_top_first: [[i64; 4]; 3] = [
        [0, 2, 2, 0],
        [1, 2, -1, -1],
        [1, 0, -1, 0],
    ];
    let mut f = CellField::<Rational>::zeros(grid);
    for (k, row) in rows_top_first.iter().enumerate() {
        for (x, &v) in row.iter().enumerate() {
            f.set(
                Cell {
                    x: x as u32,
                    y: grid.height - 1 - k as u32,
                },
                Rational::from_int(v),
            );
        }
    }

    let parts = decompose_monotone(&f).unwrap();
    println!(
        "split into {} monotone components (cap was {}):",
        parts.len(),
        iteration_cap(&f)
    );

    let mut reconstruction = CellField::<Rational>::zeros(grid);
    let mut variation_sum = Rational::from_int(0);
    for (k, part) in parts.iter().enumerate() {
        assert!(is_monotone(&part.field));
        let var = variation(&part.field);
        println!(
            "  component {k}: sign {:+} variation {} support {} cells",
            part.sign,
            var,
            part.field.values().iter().filter(|v| !v.is_zero()).count()
        );
        reconstruction = reconstruction.add(&part.field);
        variation_sum += var;
    }

    assert_eq!(reconstruction, f, "components sum back to the field");
    assert_eq!(
        variation_sum,
        variation(&f),
        "variations add with no cancellation"
    );
    println!(
        "sum of component variations = {} = variation(f)",
        variation(&f)
    );
}
