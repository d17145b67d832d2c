//! End-to-end artifact flow: generate a flux, decompose it, serialize the
//! curve family (deterministic JSON), and render it to SVG with stroke
//! widths proportional to weights.

use loopflow::generate::{generate, GenKind};
use loopflow::io::{read_curves, write_curves};
use loopflow::render::render_svg;
use loopflow::{decompose_divfree, verify_decomposition, EdgeFlux, Rational};

fn main() {
    let mu: EdgeFlux<Rational> = generate(GenKind::Vortex, 0, 8).unwrap();
    let eta = decompose_divfree(&mu).unwrap();
    assert!(verify_decomposition(&mu, &eta).is_clean());

    // The document round-trips bit-for-bit: keys are ordered, rationals are
    // exact, and re-serializing the parsed value reproduces the bytes.
    let doc = write_curves(&eta);
    let back = read_curves::<Rational>(&doc).unwrap();
    assert_eq!(write_curves(&back), doc);
    println!("curves/1 document: {} bytes, round-trips exactly", doc.len());

    let svg = render_svg(&eta);
    let polylines = svg.matches("<polyline").count();
    println!("svg: {} bytes, {} polylines (one per loop)", svg.len(), polylines);
    assert_eq!(polylines, eta.len());

    let dir = std::env::temp_dir();
    let json_path = dir.join("loopflow_vortex_curves.json");
    let svg_path = dir.join("loopflow_vortex.svg");
    std::fs::write(&json_path, &doc).unwrap();
    std::fs::write(&svg_path, &svg).unwrap();
    println!("wrote {}", json_path.display());
    println!("wrote {}", svg_path.display());
}
