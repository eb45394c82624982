// Circle through an equilateral triple in a hexagonal norm, with radius at
// most the side length.

use petty::norms::NormSpec;
use petty::planar::{circumcircle_equilateral, PlanarConfig};
use petty::rational::int;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = |x: i64, y: i64| vec![int(x), int(y)];
    let hexagon = NormSpec::polytope(vec![v(1, 0), v(1, 1), v(0, 1), v(-1, 0), v(-1, -1), v(0, -1)])?;
    let (a, b, c) = ([0.0, 0.0], [2.0, 0.0], [2.0, 2.0]);
    let cc = circumcircle_equilateral(&hexagon, a, b, c, &PlanarConfig::default())?;
    println!("side p = {}", cc.p);
    println!("center = {:?}, radius = {:.12}", cc.center, cc.radius);
    println!("largest |‖x − center‖ − radius| = {:.3e}", cc.deviation);
    println!("radius / p = {:.6}", cc.radius / cc.p);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
