// Extends an equilateral triple in a 3-D normed space to four points.
//
// A smooth, strictly convex norm is handled directly through the sections of
// its unit ball. A polyhedral norm goes through a sequence of smooth
// approximations that keep the triangle's side directions at norm 1, followed
// by a polish in the original norm.

use petty::norms::NormSpec;
use petty::petty3d::{petty_extend, PettyConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = PettyConfig::default();
    let cases = [
        ("euclidean", NormSpec::euclidean(3), [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 0.75f64.sqrt(), 0.0]]),
        ("max norm", NormSpec::linf(3), [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
        ("l1", NormSpec::l1(3), [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.5, 0.5, 0.0]]),
    ];
    for (name, norm, [a, b, c]) in cases {
        let res = petty_extend(&norm, &a, &b, &c, &cfg)?;
        let worst = res.deviations.iter().cloned().fold(0.0, f64::max);
        println!(
            "{name:>9}: d = [{:.6}, {:.6}, {:.6}]  via {:?}, largest deviation {worst:.2e}",
            res.d[0], res.d[1], res.d[2], res.method
        );
        for level in &res.smoothing {
            if let Some(dev) = level.deviation_original {
                println!("           k = {:>3}: deviation in the original norm {dev:.2e}", level.k);
            }
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
