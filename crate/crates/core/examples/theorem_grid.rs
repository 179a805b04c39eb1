//! Chain-element values φ_{m,j}(σ̃₁⋯σ̃_{r−1}) and φ̄_{m,j}(σ̃₁⋯σ̃_{r−1})
//! against their closed forms, one CSV row per (m, j, r). Argument: m_max.

use std::time::Instant;

use omega_scl::report::{chain_grid, grid_csv};

fn main() -> omega_scl::Result<()> {
    let m_max: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    let t = Instant::now();
    let cells = chain_grid(m_max)?;
    print!("{}", grid_csv(&cells)?);
    let bad = cells.iter().filter(|c| !(c.phi_ok && c.barphi_ok)).count();
    eprintln!(
        "{} cells, {bad} off the closed forms, {:.2?}",
        cells.len(),
        t.elapsed()
    );
    Ok(())
}
