//! Every unit of `Q(i, √2, √3)` raised to `2N = 48` lands in the real subfield,
//! and its square splits as a root of unity times a real unit.

use multiquad::units::{
    hasse_square_decompose, roots_of_unity, standard_unit_sample, unit_power_in_k,
};

fn main() -> multiquad::Result<()> {
    let report = roots_of_unity(200)?;
    let sample = standard_unit_sample();
    let mut passed = 0;
    for (index, u) in sample.iter().enumerate() {
        let record = unit_power_in_k(u, report.order_n);
        if record.passed() {
            passed += 1;
        }
        let h = hasse_square_decompose(u, &report).expect("every sample unit factors");
        if index % 10 == 0 {
            println!("u = {}\n  u^2 = zeta^{} * ({})", u.u, h.zeta_index, h.w);
        }
    }
    println!(
        "{passed}/{} units have u^{} real and a unit",
        sample.len(),
        2 * report.order_n
    );
    Ok(())
}
