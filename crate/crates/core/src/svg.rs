//! SVG rendering of Newton polygons: index on the x-axis, valuation on the
//! y-axis, dots at the vertices. Purely presentational; pixel coordinates
//! are computed with exact rational arithmetic and rounded to fixed
//! decimals, so the output is still deterministic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::poly::NewtonPolygon;

const WIDTH: i64 = 840;
const HEIGHT: i64 = 480;
const MARGIN: i64 = 60;

/// Round an exact rational to two decimals and format it, without going
/// through floating point.
fn px(q: &BigRational) -> String {
    let scaled = q * BigRational::from_integer(BigInt::from(100));
    let rounded = scaled.round();
    let cents = rounded.numer().clone();
    let sign = if cents.is_negative() { "-" } else { "" };
    let abs = cents.abs();
    let whole = &abs / BigInt::from(100);
    let frac = &abs % BigInt::from(100);
    format!("{sign}{whole}.{frac:02}")
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Render a polygon into a standalone SVG document with a fixed 840x480
/// viewbox.
pub fn polygon_svg(np: &NewtonPolygon, title: &str) -> String {
    let xs: Vec<BigRational> = np.vertices.iter().map(|(i, _)| rat(*i as i64)).collect();
    let ys: Vec<BigRational> = np.vertices.iter().map(|(_, v)| v.clone()).collect();
    let xmax = xs.iter().max().cloned().unwrap_or_else(|| rat(1));
    let ymin = ys.iter().min().cloned().unwrap_or_else(BigRational::zero);
    let ymax = ys.iter().max().cloned().unwrap_or_else(|| rat(1));
    let xspan = if xmax.is_zero() { rat(1) } else { xmax.clone() };
    let yspan = {
        let span = &ymax - &ymin;
        if span.is_zero() {
            rat(1)
        } else {
            span
        }
    };
    let plot_w = rat(WIDTH - 2 * MARGIN);
    let plot_h = rat(HEIGHT - 2 * MARGIN);
    let to_x = |i: &BigRational| rat(MARGIN) + i / &xspan * &plot_w;
    let to_y = |v: &BigRational| rat(HEIGHT - MARGIN) - (v - &ymin) / &yspan * &plot_h;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" width=\"{WIDTH}\" height=\"{HEIGHT}\">\n"
    ));
    out.push_str(&format!(
        "  <title>{}</title>\n",
        title.replace('<', "&lt;").replace('>', "&gt;")
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    // Axes along the plot edges.
    let origin_y = px(&to_y(&ymin));
    out.push_str(&format!(
        "  <line x1=\"{m}\" y1=\"{oy}\" x2=\"{xe}\" y2=\"{oy}\" stroke=\"black\" stroke-width=\"1\"/>\n",
        m = MARGIN,
        oy = origin_y,
        xe = WIDTH - MARGIN
    ));
    out.push_str(&format!(
        "  <line x1=\"{m}\" y1=\"{m}\" x2=\"{m}\" y2=\"{ye}\" stroke=\"black\" stroke-width=\"1\"/>\n",
        m = MARGIN,
        ye = HEIGHT - MARGIN
    ));
    // Axis labels: index range and valuation range.
    out.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\">index</text>\n",
        WIDTH / 2,
        HEIGHT - MARGIN / 4
    ));
    out.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 {x} {y})\">valuation</text>\n",
        MARGIN / 4,
        HEIGHT / 2,
        x = MARGIN / 4,
        y = HEIGHT / 2
    ));
    // Hull polyline.
    if np.vertices.len() >= 2 {
        let pts: Vec<String> = np
            .vertices
            .iter()
            .map(|(i, v)| format!("{},{}", px(&to_x(&rat(*i as i64))), px(&to_y(v))))
            .collect();
        out.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n",
            pts.join(" ")
        ));
    }
    // Vertex dots and coordinate labels.
    for (i, v) in &np.vertices {
        let cx = px(&to_x(&rat(*i as i64)));
        let cy = px(&to_y(v));
        out.push_str(&format!(
            "  <circle cx=\"{cx}\" cy=\"{cy}\" r=\"4\" fill=\"black\"/>\n"
        ));
        out.push_str(&format!(
            "  <text x=\"{cx}\" y=\"{cy}\" dx=\"8\" dy=\"-8\" font-size=\"12\">({i}, {})</text>\n",
            crate::algebra::format_rational(v)
        ));
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_deterministically() {
        let np = NewtonPolygon::from_points(&[
            (0, BigRational::zero()),
            (55, BigRational::new(BigInt::from(1), BigInt::from(3))),
            (60, BigRational::from_integer(BigInt::from(1))),
        ]);
        let a = polygon_svg(&np, "test");
        let b = polygon_svg(&np, "test");
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.contains("(55, 1/3)"));
    }

    #[test]
    fn exact_pixel_rounding() {
        assert_eq!(px(&BigRational::new(1.into(), 3.into())), "0.33");
        assert_eq!(px(&BigRational::new((-1).into(), 3.into())), "-0.33");
        assert_eq!(px(&BigRational::from_integer(7.into())), "7.00");
    }
}
