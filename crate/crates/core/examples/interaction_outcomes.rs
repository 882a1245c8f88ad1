//! One representative pair for every interaction kind, with the predicted pattern.

use wavelab::interaction::{predict, solve_interaction, IncomingPair, InteractionKind::*};
use wavelab::GasConstants;

fn main() -> wavelab::Result<()> {
    let gas = GasConstants::new(1.4)?;
    let pairs = [
        (Ia, 0.2, 3.0),
        (Ia, 0.5, 2.0),
        (Ib, 0.5, 0.25),
        (Ic, 4.0, 0.5),
        (IIa, 0.5, 0.3),
        (IIb, 0.5, 3.0),
        (IIc, 2.0, 0.5),
        (IId, 5.0, 3.0),
        (IIIa, 2.0, 2.0),
        (IIIb, 3.0, 0.1),
        (IIIc, 0.5, 4.0),
    ];
    println!("{:<5} {:>8} {:>8}  {:>12} {:>12} {:>12}  types", "kind", "left", "right", "B", "C", "F");
    for (kind, l, r) in pairs {
        let pair = IncomingPair::new(kind, l, r)?;
        let out = solve_interaction(&pair, &gas, 1e-13)?;
        let p = predict(&pair, &gas);
        match out.strengths {
            Some(s) => println!(
                "{kind:<5} {l:>8} {r:>8}  {:>12.8} {:>12.8} {:>12.8}  {:?}",
                s.b, s.c, s.f, out.types
            ),
            None => println!("{kind:<5} {l:>8} {r:>8}  vacuum"),
        }
        println!("      {} (holds: {})", p.tag, p.agrees_with(&out));
    }
    Ok(())
}
