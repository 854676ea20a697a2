//! Deterministic SVG rendering of walls in the (β, α) upper half-plane.
//!
//! All geometry is computed exactly and converted to fixed 6-decimal pixel
//! coordinates only at the final formatting step, so identical inputs
//! always produce byte-identical documents.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use stabwalls::rational::Rational;
use stabwalls::walls::WallCircle;

/// The visible portion of the upper half-plane and the pixel canvas.
#[derive(Debug, Clone)]
pub struct PlotWindow {
    /// Left edge in β.
    pub beta_min: Rational,
    /// Right edge in β.
    pub beta_max: Rational,
    /// Top edge in α (the bottom edge is α = 0).
    pub alpha_max: Rational,
    /// Canvas width in pixels.
    pub width: u32,
    /// Canvas height in pixels.
    pub height: u32,
}

/// Window validation failure.
#[derive(Debug)]
pub struct InvalidWindow(pub String);

impl PlotWindow {
    /// Validates the invariants β_min < β_max, α_max > 0, positive canvas.
    pub fn new(
        beta_min: Rational,
        beta_max: Rational,
        alpha_max: Rational,
        width: u32,
        height: u32,
    ) -> Result<Self, InvalidWindow> {
        if beta_min >= beta_max {
            return Err(InvalidWindow("beta-min must be < beta-max".into()));
        }
        if alpha_max <= Rational::from_integer(0.into()) {
            return Err(InvalidWindow("alpha-max must be positive".into()));
        }
        if width < 100 || height < 100 {
            return Err(InvalidWindow("canvas must be at least 100x100 pixels".into()));
        }
        Ok(Self { beta_min, beta_max, alpha_max, width, height })
    }
}

/// A labeled point to draw on the picture.
#[derive(Debug, Clone)]
pub struct Marker {
    /// Text placed next to the dot.
    pub label: String,
    /// β-coordinate.
    pub beta: Rational,
    /// α-coordinate.
    pub alpha: Rational,
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("plot coordinate fits in f64")
}

const MARGIN: f64 = 48.0;

struct Frame {
    x0: f64,
    y0: f64,
    sx: f64,
    sy: f64,
    beta_min: f64,
    beta_max: f64,
    alpha_max: f64,
    width: u32,
    height: u32,
}

impl Frame {
    fn of(window: &PlotWindow) -> Frame {
        let beta_min = to_f64(&window.beta_min);
        let beta_max = to_f64(&window.beta_max);
        let alpha_max = to_f64(&window.alpha_max);
        let inner_w = f64::from(window.width) - 2.0 * MARGIN;
        let inner_h = f64::from(window.height) - 2.0 * MARGIN;
        Frame {
            x0: MARGIN,
            y0: f64::from(window.height) - MARGIN,
            sx: inner_w / (beta_max - beta_min),
            sy: inner_h / alpha_max,
            beta_min,
            beta_max,
            alpha_max,
            width: window.width,
            height: window.height,
        }
    }

    fn x(&self, beta: f64) -> f64 {
        self.x0 + (beta - self.beta_min) * self.sx
    }

    fn y(&self, alpha: f64) -> f64 {
        self.y0 - alpha * self.sy
    }
}

/// Renders the walls, axes, and markers. Returns the SVG document and the
/// number of walls that intersect the window; when that count is zero the
/// picture is axes-only.
pub fn render_walls_svg(
    walls: &[WallCircle],
    window: &PlotWindow,
    markers: &[Marker],
) -> (String, usize) {
    let f = Frame::of(window);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        f.width, f.height, f.width, f.height
    );
    let _ = writeln!(svg, "<rect width=\"{}\" height=\"{}\" fill=\"white\"/>", f.width, f.height);

    // Clip region for wall geometry: the window rectangle.
    let _ = writeln!(
        svg,
        "<clipPath id=\"window\"><rect x=\"{:.6}\" y=\"{:.6}\" width=\"{:.6}\" height=\"{:.6}\"/></clipPath>",
        f.x(f.beta_min),
        f.y(f.alpha_max),
        f.x(f.beta_max) - f.x(f.beta_min),
        f.y(0.0) - f.y(f.alpha_max)
    );

    // Axes: the β-axis along α = 0 and the left frame edge.
    let _ = writeln!(
        svg,
        "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"black\" stroke-width=\"1\"/>",
        f.x(f.beta_min),
        f.y(0.0),
        f.x(f.beta_max),
        f.y(0.0)
    );
    let _ = writeln!(
        svg,
        "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"black\" stroke-width=\"1\"/>",
        f.x(f.beta_min),
        f.y(0.0),
        f.x(f.beta_min),
        f.y(f.alpha_max)
    );
    // Corner labels, presentation-only decimals.
    let _ = writeln!(
        svg,
        "<text x=\"{:.6}\" y=\"{:.6}\" font-size=\"12\">beta = {:.6}</text>",
        f.x(f.beta_min),
        f.y(0.0) + 16.0,
        f.beta_min
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.6}\" y=\"{:.6}\" font-size=\"12\" text-anchor=\"end\">beta = {:.6}</text>",
        f.x(f.beta_max),
        f.y(0.0) + 16.0,
        f.beta_max
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.6}\" y=\"{:.6}\" font-size=\"12\">alpha = {:.6}</text>",
        f.x(f.beta_min) + 4.0,
        f.y(f.alpha_max) - 6.0,
        f.alpha_max
    );

    let mut drawn = 0usize;
    let _ = writeln!(svg, "<g clip-path=\"url(#window)\">");
    for wall in walls {
        match wall {
            WallCircle::Semicircle { center, radius_sq } => {
                let c = to_f64(center);
                let r = to_f64(radius_sq).sqrt();
                if c + r <= f.beta_min || c - r >= f.beta_max {
                    continue;
                }
                // Upper semicircle as a single elliptical arc from the left
                // foot to the right foot (sweep = 1 bulges upward in the
                // y-down pixel frame; the exact half-circle never needs the
                // large-arc flag).
                let _ = writeln!(
                    svg,
                    "<path d=\"M {:.6} {:.6} A {:.6} {:.6} 0 0 1 {:.6} {:.6}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>",
                    f.x(c - r),
                    f.y(0.0),
                    r * f.sx,
                    r * f.sy,
                    f.x(c + r),
                    f.y(0.0)
                );
                drawn += 1;
            }
            WallCircle::Vertical { beta0 } => {
                let b = to_f64(beta0);
                if b < f.beta_min || b > f.beta_max {
                    continue;
                }
                let _ = writeln!(
                    svg,
                    "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"steelblue\" stroke-width=\"1.5\"/>",
                    f.x(b),
                    f.y(0.0),
                    f.x(b),
                    f.y(f.alpha_max)
                );
                drawn += 1;
            }
            WallCircle::DegenerateEqual | WallCircle::Empty => {}
        }
    }
    let _ = writeln!(svg, "</g>");

    for m in markers {
        let x = f.x(to_f64(&m.beta));
        let y = f.y(to_f64(&m.alpha));
        let _ = writeln!(svg, "<circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"3\" fill=\"crimson\"/>");
        let _ = writeln!(
            svg,
            "<text x=\"{:.6}\" y=\"{:.6}\" font-size=\"12\">{}</text>",
            x + 5.0,
            y - 5.0,
            escape_text(&m.label)
        );
    }

    svg.push_str("</svg>\n");
    (svg, drawn)
}

fn escape_text(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use stabwalls::rational::ratio;

    fn window() -> PlotWindow {
        PlotWindow::new(ratio(-4, 1), ratio(-1, 1), ratio(2, 1), 640, 480).unwrap()
    }

    #[test]
    fn window_validation() {
        assert!(PlotWindow::new(ratio(1, 1), ratio(-1, 1), ratio(2, 1), 640, 480).is_err());
        assert!(PlotWindow::new(ratio(-1, 1), ratio(1, 1), ratio(0, 1), 640, 480).is_err());
        assert!(PlotWindow::new(ratio(-1, 1), ratio(1, 1), ratio(1, 1), 10, 480).is_err());
    }

    #[test]
    fn first_wall_arc_geometry() {
        let wall = WallCircle::Semicircle { center: ratio(-5, 2), radius_sq: ratio(1, 4) };
        let (svg, drawn) = render_walls_svg(&[wall], &window(), &[]);
        assert_eq!(drawn, 1);
        // Window β ∈ [−4, −1] over 544 inner px → sx = 544/3; α ≤ 2 over
        // 384 inner px → sy = 192. Feet at β = −3, −2; radius 1/2.
        let sx = 544.0 / 3.0;
        let (x_left, x_right) = (48.0 + sx, 48.0 + 2.0 * sx);
        let (rx, ry) = (0.5 * sx, 0.5 * 192.0);
        let expected = format!(
            "M {x_left:.6} 432.000000 A {rx:.6} {ry:.6} 0 0 1 {x_right:.6} 432.000000"
        );
        assert!(svg.contains(&expected), "missing arc {expected:?} in:\n{svg}");
    }

    #[test]
    fn empty_input_draws_axes_only() {
        let (svg, drawn) = render_walls_svg(&[], &window(), &[]);
        assert_eq!(drawn, 0);
        assert!(svg.contains("<line"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn identical_inputs_render_identically() {
        let walls = [
            WallCircle::Semicircle { center: ratio(-7, 2), radius_sq: ratio(25, 4) },
            WallCircle::Semicircle { center: ratio(-5, 2), radius_sq: ratio(1, 4) },
        ];
        let markers = [Marker { label: "(beta0, alpha0)".into(), beta: ratio(-5, 2), alpha: ratio(1, 2) }];
        let (a, n1) = render_walls_svg(&walls, &window(), &markers);
        let (b, n2) = render_walls_svg(&walls, &window(), &markers);
        assert_eq!(a, b);
        assert_eq!((n1, n2), (2, 2));
    }

    #[test]
    fn out_of_window_walls_are_skipped() {
        let far = WallCircle::Semicircle { center: ratio(10, 1), radius_sq: ratio(1, 4) };
        let degenerate = WallCircle::DegenerateEqual;
        let vertical_out = WallCircle::Vertical { beta0: ratio(5, 1) };
        let (svg, drawn) = render_walls_svg(&[far, degenerate, vertical_out], &window(), &[]);
        assert_eq!(drawn, 0);
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn vertical_wall_inside_window() {
        let (svg, drawn) =
            render_walls_svg(&[WallCircle::Vertical { beta0: ratio(-2, 1) }], &window(), &[]);
        assert_eq!(drawn, 1);
        assert!(svg.contains("stroke=\"steelblue\""));
    }

    #[test]
    fn marker_labels_are_escaped() {
        let markers = [Marker { label: "a<b&c".into(), beta: ratio(-2, 1), alpha: ratio(1, 1) }];
        let (svg, _) = render_walls_svg(&[], &window(), &markers);
        assert!(svg.contains("a&lt;b&amp;c"));
    }
}
