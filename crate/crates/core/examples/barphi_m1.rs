//! Searches seeded random words for a certified nonzero value of φ̄_{m,1},
//! whose vanishing is an open question. Arguments: samples, seed.

use omega_scl::defect::{barphi_m1_search, SamplerConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let cfg = SamplerConfig {
        samples: args.first().copied().unwrap_or(200) as usize,
        seed: args.get(1).copied().unwrap_or(0),
        ..SamplerConfig::default()
    };
    for m in 4..=8 {
        let r = barphi_m1_search(m, &cfg)?;
        println!("{}", serde_json::to_string(&r)?);
    }
    Ok(())
}
