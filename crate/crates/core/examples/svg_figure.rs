// Draws the circle through an equilateral triple of a planar norm as an SVG
// file in the system temp directory.

use petty::cli::figure::{norm_circle, polyline, FigureSpec, Layer};
use petty::norms::NormSpec;
use petty::planar::{circumcircle_equilateral, PlanarConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let norm = NormSpec::lp(1.5, 2)?;
    let a = [0.0, 0.0];
    let b = [1.0, 0.0];
    // c on the unit circle around a, at distance 1 from b
    let unit = |t: f64| {
        let d = [t.cos(), t.sin()];
        let s = norm.eval(&d);
        [d[0] / s, d[1] / s]
    };
    let (mut lo, mut hi) = (0.1, std::f64::consts::PI);
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        let c = unit(m);
        if norm.eval(&[c[0] - 1.0, c[1]]) < 1.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    let c = unit(0.5 * (lo + hi));
    let cc = circumcircle_equilateral(&norm, a, b, c, &PlanarConfig::default())?;

    let circle = norm_circle(&norm, cc.center, cc.radius, 256);
    let mut fig = FigureSpec::around(&circle);
    fig.layers.push(polyline(circle, true, "#1f4e9c", 1.5));
    fig.layers.push(polyline(vec![a, b, c], true, "#999999", 1.0));
    fig.layers.push(Layer::Markers {
        points: vec![a, b, c, cc.center],
        labels: vec!["a".into(), "b".into(), "c".into(), "center".into()],
        fill: "#c0392b".into(),
    });
    let path = std::env::temp_dir().join("petty_circumcircle.svg");
    std::fs::write(&path, fig.render()?)?;
    println!("radius {:.6} (side 1), figure written to {}", cc.radius, path.display());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
