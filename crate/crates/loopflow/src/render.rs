//! SVG rendering of curve superpositions.
//!
//! One `<polyline>` per weighted curve, emitted in superposition order so
//! output is deterministic. Stroke width is proportional to weight, and
//! arrowhead markers show traversal direction. Lattice coordinates have y
//! growing upward, so the y axis is flipped into screen coordinates.

use crate::curves::CurveSuperposition;
use crate::scalar::Scalar;

/// Pixels per lattice unit.
const CELL: f64 = 32.0;
/// Canvas margin in pixels.
const MARGIN: f64 = 24.0;
/// Stroke width of the heaviest curve, in pixels.
const MAX_STROKE: f64 = 6.0;

const CLOSED_COLOR: &str = "#1f6fb4";
const OPEN_COLOR: &str = "#d0452c";

fn fmt(x: f64) -> String {
    // Fixed precision keeps the output platform-independent.
    let s = format!("{x:.3}");
    s.strip_suffix(".000").map(str::to_owned).unwrap_or(s)
}

/// Render the superposition as a standalone SVG document. An empty
/// superposition yields a valid document with no curve elements.
pub fn render_svg<S: Scalar>(eta: &CurveSuperposition<S>) -> String {
    let grid = eta.grid();
    let width = 2.0 * MARGIN + CELL * grid.width as f64;
    let height = 2.0 * MARGIN + CELL * grid.height as f64;
    let to_screen = |x: u32, y: u32| -> (f64, f64) {
        (
            MARGIN + CELL * x as f64,
            MARGIN + CELL * (grid.height - y) as f64,
        )
    };

    let max_weight = eta
        .items()
        .iter()
        .map(|item| item.weight.to_f64())
        .fold(0.0f64, f64::max);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" \
         viewBox=\"0 0 {} {}\">\n",
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    ));
    out.push_str(
        "  <defs>\n    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"8\" refY=\"5\" \
         markerWidth=\"5\" markerHeight=\"5\" orient=\"auto-start-reverse\">\n      \
         <path d=\"M 0 1 L 9 5 L 0 9 z\" fill=\"context-stroke\"/>\n    </marker>\n  </defs>\n",
    );
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        fmt(width),
        fmt(height)
    ));

    // Faint lattice dots for orientation.
    for y in 0..=grid.height {
        for x in 0..=grid.width {
            let (sx, sy) = to_screen(x, y);
            out.push_str(&format!(
                "  <circle cx=\"{}\" cy=\"{}\" r=\"1.5\" fill=\"#c9c9c9\"/>\n",
                fmt(sx),
                fmt(sy)
            ));
        }
    }

    for item in eta.items() {
        let weight = item.weight.to_f64();
        let stroke = if max_weight > 0.0 {
            MAX_STROKE * weight / max_weight
        } else {
            1.0
        };
        let points: Vec<String> = item
            .curve
            .nodes()
            .iter()
            .map(|n| {
                let (sx, sy) = to_screen(n.x, n.y);
                format!("{},{}", fmt(sx), fmt(sy))
            })
            .collect();
        let color = if item.curve.is_closed() {
            CLOSED_COLOR
        } else {
            OPEN_COLOR
        };
        out.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" \
             stroke-width=\"{}\" stroke-linejoin=\"round\" stroke-opacity=\"0.75\" \
             marker-mid=\"url(#arrow)\" marker-end=\"url(#arrow)\"><title>weight {}</title>\
             </polyline>\n",
            points.join(" "),
            fmt(stroke),
            item.weight
        ));
    }

    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarea::decompose_divfree;
    use crate::curves::LatticeCurve;
    use crate::grid::{GridSpec, Node};
    use crate::scalar::Rational;

    #[test]
    fn empty_superposition_is_a_valid_empty_document() {
        let eta = CurveSuperposition::<Rational>::new(GridSpec::new(3, 3));
        let svg = render_svg(&eta);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.contains("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<polyline"));
    }

    #[test]
    fn one_polyline_per_curve_in_order_with_proportional_strokes() {
        let grid = GridSpec::new(3, 3);
        let square = LatticeCurve::closed(vec![
            Node::new(0, 0),
            Node::new(1, 0),
            Node::new(1, 1),
            Node::new(0, 1),
            Node::new(0, 0),
        ])
        .unwrap();
        let path = LatticeCurve::open(vec![Node::new(2, 2), Node::new(3, 2)]).unwrap();
        let mut eta = CurveSuperposition::new(grid);
        eta.push(square, Rational::from_int(2));
        eta.push(path, Rational::from_int(1));
        let svg = render_svg(&eta);
        assert_eq!(svg.matches("<polyline").count(), 2);
        let first = svg.find(CLOSED_COLOR).unwrap();
        let second = svg.find(OPEN_COLOR).unwrap();
        assert!(first < second, "curves render in superposition order");
        assert!(svg.contains("stroke-width=\"6\""), "heaviest gets 6px");
        assert!(svg.contains("stroke-width=\"3\""), "half weight gets 3px");
        assert!(svg.contains("marker id=\"arrow\""));
        // y flip: node (0, 0) sits at the bottom of the canvas.
        assert!(svg.contains(&format!("{},{}", 24, 24.0 + 32.0 * 3.0)));
    }

    #[test]
    fn rendering_is_deterministic() {
        let grid = GridSpec::new(4, 4);
        let eta = decompose_divfree(
            &crate::generate::seeded_divfree_flux::<Rational>(grid, 5, -2, 2),
        )
        .unwrap();
        assert_eq!(render_svg(&eta), render_svg(&eta));
    }
}
