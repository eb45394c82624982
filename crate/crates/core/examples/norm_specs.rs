// Building norms, evaluating them and moving them through JSON.

use petty::norms::NormSpec;
use petty::rational::frac;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let x = [0.3, -1.2, 0.5];
    let norms = [
        ("l1", NormSpec::l1(3)),
        ("l2", NormSpec::euclidean(3)),
        ("l3.5", NormSpec::lp(3.5, 3)?),
        ("linf", NormSpec::linf(3)),
        ("l1 + l2", NormSpec::l1_plus_l2(3)?),
    ];
    for (name, n) in &norms {
        println!("{name:>8}: ‖x‖ = {:.6}", n.eval(&x));
    }

    // a hexagon given by its vertices; the gauge is exact on rational input
    let hexagon = NormSpec::polytope(vec![
        vec![frac(1, 1), frac(0, 1)],
        vec![frac(1, 1), frac(1, 1)],
        vec![frac(0, 1), frac(1, 1)],
        vec![frac(-1, 1), frac(0, 1)],
        vec![frac(-1, 1), frac(-1, 1)],
        vec![frac(0, 1), frac(-1, 1)],
    ])?;
    let exact = hexagon.eval_exact(&[frac(1, 2), frac(-1, 3)]).expect("polyhedral");
    println!("hexagon gauge of (1/2, -1/3) = {exact}");

    let text = serde_json::to_string(&hexagon)?;
    println!("as JSON: {text}");
    let back: NormSpec = serde_json::from_str(&text)?;
    assert_eq!(back, hexagon);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
