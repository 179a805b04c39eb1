//! Closed-form φ̄_{m,j} values on chain elements and the determinant of
//! the value matrix for each m. Argument: m_max.

use omega_scl::quasimorphism::{barphi_matrix, nonsingularity_check};

fn main() {
    let m_max: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(30);
    for m in 4..=m_max {
        let (det, nonsingular) = nonsingularity_check(m);
        println!("m = {m}: det = {det}, nonsingular = {nonsingular}");
        if m <= 6 {
            for row in barphi_matrix(m) {
                let row: Vec<String> = row.iter().map(ToString::to_string).collect();
                println!("  [{}]", row.join(", "));
            }
        }
    }
}
