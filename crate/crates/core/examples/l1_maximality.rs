// Exact proof that a four-point equilateral set in (ℝⁿ, ℓ1) has no fifth
// point at the same distance, and a control set that does extend.

use petty::exactcert::{audit_certificate, l1_maximality_check, l1_maximality_general};
use petty::rational::{format_rational, int};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 4..=6 {
        let cert = l1_maximality_check(n, None)?;
        println!(
            "n = {n}: {:?}, {} cells ({} solved, {} pruned), {} LP solves",
            cert.verdict, cert.cell_count, cert.cells_solved, cert.cells_pruned, cert.lp_solves
        );
        let audit = audit_certificate(&cert)?;
        println!("        audit agrees: {:?} after {} reports", audit.verdict, audit.reports_checked);
    }

    // three points of the ℓ1 plane at mutual distance 2 do have a fourth
    let three = vec![vec![int(0), int(0)], vec![int(2), int(0)], vec![int(1), int(1)]];
    let cert = l1_maximality_general(&three, &int(2), None)?;
    println!("control: {:?}", cert.verdict);
    for w in &cert.witnesses {
        let w: Vec<String> = w.iter().map(format_rational).collect();
        println!("  fifth point ({})", w.join(", "));
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
