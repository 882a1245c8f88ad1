//! Overtaking interactions re-solved in (τ, u, S) variables.

use wavelab::interaction::{entropy_cross_check, IncomingPair, InteractionKind::*};
use wavelab::{GasConstants, ReferenceConstants};

fn main() -> wavelab::Result<()> {
    let reference = ReferenceConstants::default();
    for gamma in [1.2, 5.0 / 3.0, 3.0] {
        let gas = GasConstants::new(gamma)?;
        println!("gamma = {gamma:.4}");
        for (kind, x, y) in [(IIIa, 2.0, 2.0), (IIIb, 3.0, 0.5), (IIIc, 0.5, 4.0), (IIIa, 400.0, 900.0)] {
            let e = entropy_cross_check(&IncomingPair::new(kind, x, y)?, &gas, &reference)?;
            println!(
                "  {kind:<4} x = {x:<5} y = {y:<5} L = {:.10} C = {:.10} I = {:.10}  rel diff {:.1e}, {} Newton steps",
                e.l, e.c, e.i, e.max_relative_difference, e.iterations
            );
        }
    }
    Ok(())
}
