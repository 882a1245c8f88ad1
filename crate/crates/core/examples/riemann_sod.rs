//! Sod shock tube in Lagrangian variables: left (τ=1, u=0, p=1), right (τ=8, u=0, p=0.1).

use wavelab::riemann::{recomposition_error, solve, DEFAULT_TOL};
use wavelab::{GasConstants, PrimitiveState};

fn main() -> wavelab::Result<()> {
    let gas = GasConstants::new(1.4)?;
    let left = PrimitiveState::new(1.0, 0.0, 1.0)?;
    let right = PrimitiveState::new(8.0, 0.0, 0.1)?;
    let sol = solve(&left, &right, &gas, DEFAULT_TOL)?;
    let s = sol.strengths.expect("no vacuum for Sod data");

    println!("B = {:.12}  C = {:.12}  F = {:.12}", s.b, s.c, s.f);
    println!("waves: {:?}", sol.wave_types);
    let (lm, rm) = (sol.left_middle.unwrap(), sol.right_middle.unwrap());
    println!("middle: p = {:.10}, u = {:.10}", lm.p, lm.u);
    println!("        tau_left = {:.10}, tau_right = {:.10}", lm.tau, rm.tau);
    if let Some(speeds) = sol.speeds {
        for (name, sp) in ["backward", "contact", "forward"].iter().zip(speeds) {
            println!("{name:>9}: head {:+.8}  tail {:+.8}", sp.head, sp.tail);
        }
    }
    println!("recomposition error {:e}", recomposition_error(&left, &right, &s, &gas));
    Ok(())
}
