// Standard equilateral families, checked against their norms.

use petty::equilateral::{generate, verify_equilateral, GeneratorKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let families = [
        (GeneratorKind::EuclideanSimplex, 5),
        (GeneratorKind::LinfCube, 4),
        (GeneratorKind::L1Crosspolytope, 3),
        (GeneratorKind::PettyL1, 5),
    ];
    for (kind, n) in families {
        let set = generate(kind, n)?;
        let cert = verify_equilateral(&set.norm, &set.points, 1e-12)?;
        println!(
            "{kind:?} in dimension {n}: {} points, p = {}, deviation {:.1e}, valid {}",
            set.points.len(),
            cert.p,
            cert.max_deviation,
            cert.valid
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
