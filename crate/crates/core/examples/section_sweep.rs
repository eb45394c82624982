// The ratio `r(t)` of the triangle homothet inscribed in the planar sections
// of a 3-D unit ball, swept across the planes parallel to the triangle.
// The section through the origin has `r ≥ 1`; near the edges of the family
// the sections shrink and `r` goes to 0, so `r = 1` somewhere in between.

use petty::norms::NormSpec;
use petty::petty3d::{sweep_r, PettyConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let norm = NormSpec::lp(4.0, 3)?;
    // an equilateral triple: 0, e1 and a point of the unit sphere at distance 1 from e1
    let a = [0.0, 0.0, 0.0];
    let b = [1.0, 0.0, 0.0];
    let c = {
        let (mut lo, mut hi) = (0.1f64, std::f64::consts::FRAC_PI_2 * 1.9);
        let at = |t: f64| {
            let d = [t.cos(), t.sin(), 0.3];
            let s = norm.eval(&d);
            [d[0] / s, d[1] / s, d[2] / s]
        };
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            let x = at(m);
            if norm.eval(&[x[0] - 1.0, x[1], x[2]]) < 1.0 {
                lo = m;
            } else {
                hi = m;
            }
        }
        at(0.5 * (lo + hi))
    };
    let cfg = PettyConfig {
        grid_size: 24,
        ..PettyConfig::default()
    };
    let sweep = sweep_r(&norm, &a, &b, &c, &cfg)?;
    println!("non-trivial sections for t in ({:.4}, {:.4})", sweep.t_lo, sweep.t_hi);
    println!("r at the central section = {:.6}", sweep.central_r);
    for s in sweep.samples.iter().step_by(4) {
        println!("t = {:+.4}  r = {:.6}", s.t, s.r);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
