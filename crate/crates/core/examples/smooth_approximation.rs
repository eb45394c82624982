// Smooth, strictly convex approximations of the ℓ1 norm on ℝ⁴ that keep the
// twelve differences `(a_i − a_j)/2` of the four-point ℓ1 set at norm 1.

use petty::equilateral::petty_l1_points;
use petty::norms::{check_sandwich, chord_convexity_margin, smooth_approx, NormSpec, SmoothingParams};
use petty::rational::vec_to_f64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let base = NormSpec::l1(4);
    let points: Vec<Vec<f64>> = petty_l1_points(4).iter().map(|p| vec_to_f64(p)).collect();
    let mut anchors = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j {
                anchors.push(p.iter().zip(q).map(|(x, y)| (x - y) / 2.0).collect::<Vec<f64>>());
            }
        }
    }
    for k in [2u32, 8, 32] {
        let eps = 1.0 / k as f64;
        let params = SmoothingParams {
            epsilon: eps,
            ..SmoothingParams::default()
        };
        let smooth = smooth_approx(&base, &anchors, &params)?;
        let worst_anchor = anchors.iter().map(|a| (smooth.eval(a) - 1.0).abs()).fold(0.0, f64::max);
        let (lo, hi) = check_sandwich(&base, &smooth, eps, 10_000, 7)
            .map_err(|(x, ratio)| format!("sandwich fails at {x:?} (ratio {ratio})"))?;
        let margin = chord_convexity_margin(&smooth, 500, 0.05, 1);
        println!(
            "ε = 1/{k:<2}: anchors within {worst_anchor:.1e}, N/S in [{lo:.4}, {hi:.4}], chord margin {margin:.2e}"
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
