//! Where the three vacuum-capable interactions start to open a vacuum.

use wavelab::atlas::{group1_vacuum_boundary, iic_fstar, v_vacuum_curve};
use wavelab::interaction::{solve_interaction, IncomingPair, InteractionKind};
use wavelab::GasConstants;

fn show(gas: &GasConstants, kind: InteractionKind, l: f64, r: f64) -> wavelab::Result<()> {
    let out = solve_interaction(&IncomingPair::new(kind, l, r)?, gas, 1e-13)?;
    let detail = match out.strengths {
        Some(s) => format!("B = {:.6e}, F = {:.6e}", s.b, s.f),
        None => format!("vacuum, entropy jump {:?}", out.entropy_jump),
    };
    println!("  {kind:<4} ({l:.6e}, {r:.6e}): {detail}");
    Ok(())
}

fn main() -> wavelab::Result<()> {
    let gas = GasConstants::new(1.4)?;

    let f = 100.0;
    let b = group1_vacuum_boundary(&gas, f)?;
    println!("Ic: f = {f}, boundary b = {b:.6e}");
    for scale in [1.5, 1.0, 0.5] {
        show(&gas, InteractionKind::Ic, f, b * scale)?;
    }

    let c = 0.25;
    let fs = iic_fstar(&gas, c)?;
    println!("IIc: c = {c}, f* = {fs:.6e}");
    for scale in [0.5, 1.0, 2.0] {
        show(&gas, InteractionKind::IIc, fs * scale, c)?;
    }

    let x = 50.0;
    let v = v_vacuum_curve(&gas, x)?;
    println!("IIIb: x = {x}, V(x) = {v:.6e}");
    for scale in [2.0, 1.0, 0.5] {
        show(&gas, InteractionKind::IIIb, x, v * scale)?;
    }
    Ok(())
}
