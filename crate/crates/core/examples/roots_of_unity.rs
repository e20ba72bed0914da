//! The roots of unity of `Q(i, √2, √3)` and where `2 + w + 1/w` sits in `[0, 4]`.

use multiquad::units::{roots_of_unity, rou_boundary_check};

fn main() -> multiquad::Result<()> {
    let report = roots_of_unity(200)?;
    println!("N = {} in {}", report.order_n, report.host_field);
    println!(
        "m ≤ 200 with every unit mod m squaring to 1: {:?}",
        report.admissible_orders
    );
    for (k, w) in report.roots.iter().enumerate() {
        println!("zeta^{k:<2} order {:>2}  {w}", report.order_of(k));
    }
    for r in rou_boundary_check(&report)? {
        if !r.strict {
            println!("{} gives t = {} on the boundary", r.root, r.t_value);
        }
    }
    Ok(())
}
