//! Empirical defect of φ̄ over the catalogued witnesses and seeded random
//! pairs, as JSON. Arguments: `meyer G` or `omega M J`, then samples and seed.

use std::time::Instant;

use omega_scl::defect::{defect_search_sampled, SamplerConfig};
use omega_scl::quasimorphism::{Context, Quasimorphism};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, default: u64| args.get(i).and_then(|s| s.parse().ok()).unwrap_or(default);
    let (ctx, rest) = match args.first().map(String::as_str) {
        Some("meyer") => (
            Context::Meyer {
                g: num(1, 2) as u32,
            },
            2,
        ),
        _ => (Context::omega(num(1, 6) as u32, num(2, 3) as u32), 3),
    };
    let cfg = SamplerConfig {
        samples: num(rest, 200) as usize,
        seed: num(rest + 1, 0),
        ..SamplerConfig::default()
    };
    let t = Instant::now();
    let qm = Quasimorphism::new(ctx)?;
    let report = defect_search_sampled(&qm, &cfg)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    eprintln!("{ctx}: {:.2?}", t.elapsed());
    Ok(())
}
