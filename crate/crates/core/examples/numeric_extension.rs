// Multistart search for one more point at the common distance. A residual
// near zero means the set extends; a residual far from zero is a numeric
// sign that it is maximal (the exact certificate settles it for ℓ1).

use petty::equilateral::{extend_numeric, generate, ExtendConfig, GeneratorKind};
use petty::norms::NormSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = ExtendConfig::default();

    let petty = generate(GeneratorKind::PettyL1, 4)?;
    let out = extend_numeric(&petty.norm, &petty.points, 2.0, &cfg)?;
    println!("four ℓ1 points in ℝ⁴: {:?}, best residual {:.3}", out.status, out.best_residual);

    let l1 = NormSpec::l1(3);
    let triple = vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.5, 0.5, 0.0]];
    let out = extend_numeric(&l1, &triple, 1.0, &cfg)?;
    println!(
        "three ℓ1 points in ℝ³: {:?} at {:?}, residual {:.1e}",
        out.status, out.best_point, out.best_residual
    );
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
