// Exact certificate that every difference `p_i − p_j` of a simplex's vertices
// is a vertex of the hull of all such differences. Each difference comes with
// a rational functional that it maximizes strictly.

use petty::equilateral::{audit_vertex_certificate, diff_polytope_vertex_check, VertexOutcome};
use petty::rational::{format_rational, frac};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let simplex = vec![
        vec![frac(0, 1), frac(0, 1), frac(0, 1)],
        vec![frac(1, 1), frac(0, 1), frac(0, 1)],
        vec![frac(1, 3), frac(2, 1), frac(0, 1)],
        vec![frac(-1, 2), frac(1, 5), frac(3, 2)],
    ];
    let cert = diff_polytope_vertex_check(&simplex)?;
    for r in cert.reports.iter().take(4) {
        if let VertexOutcome::Vertex { functional } = &r.outcome {
            let y: Vec<String> = functional.iter().map(format_rational).collect();
            println!("p{} - p{} is exposed by y = ({})", r.i, r.j, y.join(", "));
        }
    }
    println!("all {} differences are vertices: {}", cert.reports.len(), cert.all_vertices());
    println!("independent audit checked {} reports", audit_vertex_certificate(&cert)?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
