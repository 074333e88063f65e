//! SVG picture of the Bi(6) bug, one color per dropped wall.

use kleinian::catalog::bi6_bug_config;
use kleinian::orbits::enumerate_orbit;
use kleinian::render::{render_svg, RenderOptions};

fn main() {
    let out = std::env::args().nth(1).unwrap_or_else(|| "bi6_bug.svg".to_string());
    let e = enumerate_orbit(&bi6_bug_config(5)).unwrap();
    let opts = RenderOptions {
        viewport: Some([-3.0, -3.0, 3.0, 3.0]),
        colors: vec!["blue".into(), "red".into()],
        labels: true,
        ..RenderOptions::default()
    };
    let svg = render_svg(&e, &opts).unwrap();
    std::fs::write(&out, svg).unwrap();
    println!("wrote {} circles to {out}", e.uncooriented().len());
}
