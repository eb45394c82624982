// Places a scaled and translated copy of a triangle with its vertices on the
// boundary of a smooth, strictly convex body. The body here is an off-centre
// ellipse given by a level function; any vertex can ride the boundary
// parametrization and all of them land on the same homothet.

use petty::norms::LevelSetBody;
use petty::planar::{inscribe_homothet_2d_with, InscribeOptions, PlanarConfig, Triangle2D};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let centre = [1.0, -0.5];
    let gauge = |d: [f64; 2]| ((d[0] / 2.0).powi(2) + d[1] * d[1]).sqrt();
    let body = LevelSetBody::new(centre, move |q| gauge([q[0] - centre[0], q[1] - centre[1]]), gauge);
    let tri = Triangle2D::new([0.0, 0.0], [1.0, 0.2], [0.3, 0.9])?;
    let cfg = PlanarConfig::default();
    for anchor in 0..3 {
        let sol = inscribe_homothet_2d_with(&body, &tri, &cfg, &InscribeOptions { anchor, hint: None })?;
        println!(
            "anchor {anchor}: z = [{:.10}, {:.10}], r = {:.10}, residuals {:.1e}",
            sol.z[0],
            sol.z[1],
            sol.r,
            sol.residuals.iter().cloned().fold(0.0, f64::max)
        );
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
