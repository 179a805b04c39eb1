//! The hermitian cocycle on the d = 2 cover against Meyer's cocycle on the
//! symplectic images, over seeded random pairs. Arguments: samples, seed.

use omega_scl::defect::{meyer_bridge, random_pairs, SamplerConfig};
use omega_scl::words::Group;

fn main() -> omega_scl::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let cfg = SamplerConfig {
        samples: args.first().copied().unwrap_or(200) as usize,
        seed: args.get(1).copied().unwrap_or(0),
        ..SamplerConfig::default()
    };
    for m in (4..=10).step_by(2) {
        let r = meyer_bridge(m, &random_pairs(Group::Sphere { m, d: 2 }, &cfg))?;
        println!(
            "m = {m}: {} pairs, cover action agrees on {}, chain twists agree on {}",
            r.pairs, r.agree_cover, r.agree_curves
        );
        for (x, y, h, c, t) in &r.mismatches {
            println!("  mismatch x = {x}, y = {y}: hermitian {h}, cover {c}, chain {t}");
        }
    }
    Ok(())
}
