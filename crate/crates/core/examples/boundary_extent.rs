// Extent of a unit ball along a side of an equilateral triangle.
//
// For a triple `a, b, c` with unit sides, `a − c` lies on the unit circle and
// the ball reaches exactly to `c − a`, so the extent from `a − c` along
// `c − a` is 2; likewise from `a − b` along `b − a`.

use petty::norms::{NormBall, NormSpec};
use petty::planar::boundary_extent;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let norm = NormSpec::lp(3.0, 2)?;
    let ball = NormBall::new(&norm)?;
    // an equilateral triple of side 1: rotate a unit vector until ‖u − w‖ = 1
    let unit = |t: f64| {
        let d = [t.cos(), t.sin()];
        let s = norm.eval(&d);
        [d[0] / s, d[1] / s]
    };
    let a = [0.0, 0.0];
    let b = unit(0.0);
    let (mut lo, mut hi) = (0.1, std::f64::consts::PI);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let c = unit(mid);
        if norm.eval(&[c[0] - b[0], c[1] - b[1]]) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = unit(0.5 * (lo + hi));
    println!("triple a = {a:?}, b = {b:?}, c = {c:?}");

    let f = boundary_extent(&ball, [a[0] - c[0], a[1] - c[1]], [c[0] - a[0], c[1] - a[1]])?;
    let g = boundary_extent(&ball, [a[0] - b[0], a[1] - b[1]], [b[0] - a[0], b[1] - a[1]])?;
    println!("f(a - c) = {f:.12}");
    println!("g(a - b) = {g:.12}");
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
