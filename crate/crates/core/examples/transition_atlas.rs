//! Writes every transition curve for a few γ as CSV under `target/atlas/`.

use std::path::PathBuf;

use wavelab::atlas::{sample_atlas, special_points, GridSpec, Panel};
use wavelab::io::{write_curves, Format};
use wavelab::GasConstants;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let root = PathBuf::from("target/atlas");
    for gamma in [1.4, 5.0 / 3.0, 1.9, 3.0] {
        let gas = GasConstants::new(gamma)?;
        let sp = special_points(&gas);
        println!("gamma = {gamma:.4}: {:?}, y0 = {:.6}, yhat = {:.6e}", sp.regime, sp.y0, sp.yhat);
        for panel in [Panel::GroupI, Panel::GroupII, Panel::GroupIII] {
            let samples = sample_atlas(&gas, panel, &GridSpec::default_for(panel))?;
            let dir = root.join(format!("gamma_{gamma:.4}")).join(panel.to_string());
            let paths = write_curves(&dir, &samples, Format::Csv, &panel.to_string())?;
            for (s, path) in samples.iter().zip(&paths) {
                let worst = s.points.iter().map(|p| p.residual.abs()).fold(0.0, f64::max);
                println!("  {:<40} {:>4} points, max residual {worst:.1e}", path.display(), s.points.len());
            }
        }
    }
    Ok(())
}
