//! Extreme points of the two unit balls. In the variation ball they are
//! the normalized indicators of simple sets; adding the L1 term (the BV
//! ball) relaxes "simple" to "4-connected", so a ring stays extreme there
//! while the variation ball splits it against its hole.

use loopflow::extremality::{bv_norm, fv_norm, SplitKind};
use loopflow::Scalar;
use loopflow::{
    certify_extreme_bv, certify_extreme_fv, variation, Cell, CellField, GridSpec,
    PixelSet, Rational,
};

fn normalized_fv(set: &PixelSet) -> CellField<Rational> {
    let f: CellField<Rational> = set.indicator();
    let v = variation(&f);
    f.scale(&(Rational::from_int(1) / v))
}

fn normalized_bv(set: &PixelSet) -> CellField<Rational> {
    let f: CellField<Rational> = set.indicator();
    let v = bv_norm(&f);
    f.scale(&(Rational::from_int(1) / v))
}

fn main() {
    let grid = GridSpec::new(4, 4);

    // A plain square: extreme in both balls.
    let square = PixelSet::from_cells(
        grid,
        (1..3).flat_map(|x| (1..3).map(move |y| Cell { x, y })),
    );
    let cert = certify_extreme_fv(&normalized_fv(&square)).unwrap();
    assert!(cert.is_extreme());
    let cert = certify_extreme_bv(&normalized_bv(&square)).unwrap();
    assert!(cert.is_extreme());
    println!("square indicator: extreme in both balls");

    // A ring: extreme for BV, split against its hole for the variation
    // ball.
    let ring = PixelSet::from_cells(
        grid,
        (0..3)
            .flat_map(|x| (0..3).map(move |y| Cell { x, y }))
            .filter(|c| !(c.x == 1 && c.y == 1)),
    );
    let cert = certify_extreme_bv(&normalized_bv(&ring)).unwrap();
    assert!(cert.is_extreme());
    let cert = certify_extreme_fv(&normalized_fv(&ring)).unwrap();
    assert!(!cert.is_extreme());
    let witness = cert.witness.expect("non-extremality carries a witness");
    assert_eq!(witness.kind, SplitKind::Hole);
    println!("ring indicator: extreme for BV, hole-split for variation");

    // The witness really is a convex combination of distinct unit vectors.
    let f = normalized_fv(&ring);
    let one = Rational::from_int(1);
    assert_eq!(fv_norm(&witness.phi), one);
    assert_eq!(fv_norm(&witness.psi), one);
    assert!(witness.phi != witness.psi);
    let recombined = witness
        .phi
        .scale(&witness.lambda)
        .add(&witness.psi.scale(&(one.clone() - witness.lambda.clone())));
    assert_eq!(recombined, f);
    println!(
        "  witness: f = {} * phi + {} * psi, both unit norm",
        witness.lambda,
        one - witness.lambda.clone()
    );

    // Two separated cells: the component split defeats both balls.
    let pair = PixelSet::from_cells(grid, [Cell { x: 0, y: 0 }, Cell { x: 3, y: 3 }]);
    let cert = certify_extreme_fv(&normalized_fv(&pair)).unwrap();
    assert!(!cert.is_extreme());
    assert_eq!(cert.witness.unwrap().kind, SplitKind::Component);
    let cert = certify_extreme_bv(&normalized_bv(&pair)).unwrap();
    assert!(!cert.is_extreme());
    println!("two separated cells: component-split in both balls");
}
