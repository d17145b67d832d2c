//! Digital topology on the pixel grid: 4-connected sets, 8-connected
//! complements, holes, and boundary loops — including the pinch corner,
//! where two member cells touch only diagonally and the boundary needs two
//! loops instead of one.

use loopflow::pixel_sets::boundary_cycles;
use loopflow::{
    is_simple, perimeter, saturate, trace_boundary, Cell, GridSpec, PixelSet,
};

fn show(set: &PixelSet, label: &str) {
    println!("{label}:");
    let grid = set.grid();
    for y in (0..grid.height).rev() {
        let row: String = (0..grid.width as i64)
            .map(|x| if set.contains(x, y as i64) { '#' } else { '.' })
            .collect();
        println!("  {row}");
    }
}

fn main() {
    let grid = GridSpec::new(4, 4);

    // A ring: 4-connected, but the middle cell cannot reach the exterior.
    let ring = PixelSet::from_cells(
        grid,
        (0..3).flat_map(|x| (0..3).map(move |y| Cell { x, y })).filter(|c| !(c.x == 1 && c.y == 1)),
    );
    show(&ring, "ring (a set with a hole)");
    assert!(!is_simple(&ring));
    let filled = saturate(&ring).unwrap();
    let hole_perimeter: u64 = perimeter(&ring) - perimeter(&filled);
    println!(
        "  perimeter {} = saturated {} + hole boundary {}",
        perimeter(&ring),
        perimeter(&filled),
        hole_perimeter
    );
    assert_eq!(perimeter(&ring), perimeter(&filled) + hole_perimeter);
    let loops = boundary_cycles(&ring);
    println!("  boundary loops: {} (outer + hole)", loops.len());
    assert_eq!(loops.len(), 2);

    // A pinched C: simple (the pocket escapes diagonally through the
    // corner), yet no single simple loop traces its boundary.
    let pinched = PixelSet::from_cells(
        grid,
        [
            Cell { x: 0, y: 0 },
            Cell { x: 1, y: 0 },
            Cell { x: 2, y: 0 },
            Cell { x: 0, y: 1 },
            Cell { x: 2, y: 1 },
            Cell { x: 0, y: 2 },
            Cell { x: 1, y: 2 },
        ],
    );
    show(&pinched, "\npinched C (simple, with a diagonal pocket)");
    assert!(is_simple(&pinched));
    let loops = boundary_cycles(&pinched);
    println!("  boundary loops:");
    for c in &loops {
        println!(
            "    length {} simple={} closed={}",
            c.len(),
            c.is_simple(),
            c.is_closed()
        );
        assert!(c.is_simple() && c.is_closed());
    }
    // The spliced single walk revisits the pinch node but keeps both
    // boundary identities: length = perimeter, measure = perp gradient.
    let walk = trace_boundary(&pinched).unwrap();
    println!(
        "  spliced walk: length {} = perimeter {} (simple: {})",
        walk.len(),
        perimeter(&pinched),
        walk.is_simple()
    );
    assert_eq!(walk.len() as u64, perimeter(&pinched));
    assert!(!walk.is_simple(), "the walk revisits the pinch node");
}
