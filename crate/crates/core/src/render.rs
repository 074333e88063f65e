//! SVG rendering of planar circle families.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::inversive::{from_inversive, Sphere};
use crate::orbits::OrbitEnumeration;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("SVG rendering needs circles (n = 2), got n = {0}")]
    UnsupportedDimension(usize),
}

/// Palette used for seed orbits when no colors are configured.
pub const DEFAULT_COLORS: [&str; 6] = ["blue", "red", "green", "orange", "purple", "teal"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    /// `[xmin, ymin, xmax, ymax]`; fitted to the circles when absent.
    pub viewport: Option<[f64; 4]>,
    /// Stroke color per seed index, cycled.
    pub colors: Vec<String>,
    pub labels: bool,
    /// Print irrational bends in the radical grammar instead of omitting them.
    pub label_exact: bool,
    /// Circles smaller than this many pixels are skipped.
    pub min_radius_px: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800,
            height: 800,
            viewport: None,
            colors: DEFAULT_COLORS.iter().map(|s| s.to_string()).collect(),
            labels: false,
            label_exact: false,
            min_radius_px: 0.05,
        }
    }
}

struct Shape {
    sphere: Sphere,
    seed: usize,
    bend: String,
    rational: bool,
}

fn fit_viewport(shapes: &[Shape]) -> [f64; 4] {
    let mut bbox: Option<[f64; 4]> = None;
    for s in shapes {
        if let Sphere::Ball { center, radius } = &s.sphere {
            let (x, y, r) = (center[0].to_f64(), center[1].to_f64(), radius.to_f64());
            let b = [x - r, y - r, x + r, y + r];
            bbox = Some(match bbox {
                None => b,
                Some(a) => [a[0].min(b[0]), a[1].min(b[1]), a[2].max(b[2]), a[3].max(b[3])],
            });
        }
    }
    let [x0, y0, x1, y1] = bbox.unwrap_or([-1.0, -1.0, 1.0, 1.0]);
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let half = ((x1 - x0).max(y1 - y0) / 2.0 * 1.1).max(1e-9);
    [cx - half, cy - half, cx + half, cy + half]
}

/// One `<circle>` or `<line>` per sphere of the uncooriented family.
pub fn render_svg(e: &OrbitEnumeration, opts: &RenderOptions) -> Result<String, RenderError> {
    if let Some(s) = e.spheres.first() {
        let n = s.vector.n();
        if n != 2 {
            return Err(RenderError::UnsupportedDimension(n));
        }
    }
    let family = e.uncooriented();
    let shapes: Vec<Shape> = family
        .spheres
        .iter()
        .map(|s| Shape {
            sphere: from_inversive(s.vector.coords()).expect("unit vector"),
            seed: s.seed,
            bend: s.vector.bend().abs().to_string(),
            rational: s.vector.bend().is_rational(),
        })
        .collect();
    let [x0, y0, x1, y1] = opts.viewport.unwrap_or_else(|| fit_viewport(&shapes));
    let (w, h) = (opts.width as f64, opts.height as f64);
    let sx = w / (x1 - x0);
    let sy = h / (y1 - y0);
    let px = |x: f64| (x - x0) * sx;
    let py = |y: f64| (y1 - y) * sy;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let color = |seed: usize| -> &str {
        if opts.colors.is_empty() {
            "black"
        } else {
            &opts.colors[seed % opts.colors.len()]
        }
    };
    let diag = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt();
    for s in &shapes {
        let c = color(s.seed);
        match &s.sphere {
            Sphere::Ball { center, radius } => {
                let (x, y) = (center[0].to_f64(), center[1].to_f64());
                let r = radius.to_f64() * sx;
                if r < opts.min_radius_px {
                    continue;
                }
                let _ = writeln!(
                    out,
                    r#"  <circle cx="{:.4}" cy="{:.4}" r="{:.4}" fill="none" stroke="{c}" stroke-width="1"/>"#,
                    px(x),
                    py(y),
                    r
                );
                if opts.labels && (s.rational || opts.label_exact) {
                    let size = (r * 0.6).clamp(4.0, 24.0);
                    let _ = writeln!(
                        out,
                        r#"  <text x="{:.4}" y="{:.4}" font-size="{:.2}" text-anchor="middle" dominant-baseline="central" fill="{c}">{}</text>"#,
                        px(x),
                        py(y),
                        size,
                        s.bend
                    );
                }
            }
            Sphere::Halfspace { normal, half_offset } => {
                // Boundary line n·x = h/2 through the point n·h/2.
                let (nx, ny) = (normal[0].to_f64(), normal[1].to_f64());
                let t = half_offset.to_f64() / 2.0;
                let (ax, ay) = (nx * t, ny * t);
                let (dx, dy) = (-ny, nx);
                let mx = (x0 + x1) / 2.0;
                let my = (y0 + y1) / 2.0;
                // Project the viewport center onto the line, then extend both ways.
                let s0 = (mx - ax) * dx + (my - ay) * dy;
                let (cx, cy) = (ax + s0 * dx, ay + s0 * dy);
                let _ = writeln!(
                    out,
                    r#"  <line x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="{c}" stroke-width="1"/>"#,
                    px(cx - diag * dx),
                    py(cy - diag * dy),
                    px(cx + diag * dx),
                    py(cy + diag * dy)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::bi6_bug_config;
    use crate::inversive::to_inversive;
    use crate::orbits::enumerate_orbit;
    use crate::radical::rn;

    #[test]
    fn empty_canvas() {
        let svg = render_svg(&OrbitEnumeration::from_spheres(vec![]), &RenderOptions::default()).unwrap();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<circle"));
    }

    #[test]
    fn unit_circle_centered() {
        let v = to_inversive(&Sphere::ball(vec![rn("0"), rn("0")], rn("1"))).unwrap();
        let svg = render_svg(&OrbitEnumeration::from_spheres(vec![v]), &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains(r#"cx="400.0000" cy="400.0000""#));
    }

    #[test]
    fn bug_orbit_two_colors_and_deterministic() {
        let e = enumerate_orbit(&bi6_bug_config(3)).unwrap();
        let opts = RenderOptions {
            labels: true,
            viewport: Some([-3.0, -3.0, 3.0, 3.0]),
            ..RenderOptions::default()
        };
        let a = render_svg(&e, &opts).unwrap();
        assert!(a.contains(r#"stroke="blue""#) && a.contains(r#"stroke="red""#));
        assert_eq!(a, render_svg(&e, &opts).unwrap());
        // Irrational bends stay unlabeled unless asked for.
        assert!(!a.contains("sqrt"));
        let exact = render_svg(&e, &RenderOptions { label_exact: true, ..opts }).unwrap();
        assert!(exact.contains("sqrt"));
    }

    #[test]
    fn rejects_spheres() {
        let v = to_inversive(&Sphere::ball(vec![rn("0"), rn("0"), rn("0")], rn("1"))).unwrap();
        assert_eq!(
            render_svg(&OrbitEnumeration::from_spheres(vec![v]), &RenderOptions::default()),
            Err(RenderError::UnsupportedDimension(3))
        );
    }
}
