//! Divergence-free fluxes are exactly the superpositions of simple closed
//! loops: decompose one, verify all four defect measures vanish, and check
//! the coarea bookkeeping that prices each loop by its plateau width.

use loopflow::generate::{generate, GenKind};
use loopflow::pixel_sets::superlevel_perimeter;
use loopflow::Scalar;
use loopflow::{
    decompose_divfree, integrate_potential, total_variation, verify_decomposition,
    EdgeFlux, Rational,
};

fn main() {
    // A deterministic vortex: nested square loops around the center.
    let mu: EdgeFlux<Rational> = generate(GenKind::Vortex, 0, 8).unwrap();

    let eta = decompose_divfree(&mu).unwrap();
    println!("vortex on 8x8 decomposes into {} weighted loops:", eta.len());
    for item in eta.items() {
        println!(
            "  weight {} length {} closed={} simple={}",
            item.weight,
            item.curve.len(),
            item.curve.is_closed(),
            item.curve.is_simple()
        );
        assert!(item.curve.is_closed() && item.curve.is_simple());
    }

    let report = verify_decomposition(&mu, &eta);
    println!("\n{report}");
    assert!(report.is_clean());

    // Coarea accounting: slicing the potential at its distinct values and
    // pricing each slab by (width x perimeter) reproduces the norm.
    let f = integrate_potential(&mu).unwrap();
    let mut values: Vec<Rational> = f.values().to_vec();
    values.push(Rational::from_int(0));
    values.sort();
    values.dedup();
    let mut priced = Rational::from_int(0);
    for pair in values.windows(2) {
        let width = pair[1].clone() - pair[0].clone();
        let perimeter = superlevel_perimeter(&f, &pair[0]);
        priced += width * Rational::from_int(perimeter as i64);
    }
    println!(
        "coarea slices: {} = total variation {}",
        priced,
        total_variation(&mu)
    );
    assert_eq!(priced, total_variation(&mu));
}
