//! φ by telescoping from the bootstrapped generator value, and its
//! homogenization φ̄ = φ − lim (1/n) Σ τ(A^k, A) with the certification mode.

use omega_scl::quasimorphism::{Context, Quasimorphism};
use omega_scl::words::MappingClassWord;

fn main() -> omega_scl::Result<()> {
    let cases = [
        (Context::omega(6, 2), "(s1 s2)^6"),
        (Context::omega(4, 1), "s1"),
        (Context::omega(7, 3), "s1 s2 s3 s4 s5 s6"),
        (Context::omega(5, 2), "s1 s2^-1"),
        (Context::Meyer { g: 2 }, "sep1"),
        (Context::Meyer { g: 3 }, "cor"),
    ];
    for (ctx, text) in cases {
        let qm = Quasimorphism::new(ctx)?;
        let w = MappingClassWord::parse(ctx.group(), text)?;
        let (a, ai) = qm.image_pair(&w)?;
        let limit = qm.limit_term(&a, &ai)?;
        let bar = qm.homogenize(&w)?;
        println!(
            "{ctx}: generator value {}, phi({text}) = {}, limit {} ({}), barphi = {} ({})",
            qm.generator_value(),
            qm.phi(&w)?,
            limit.value,
            limit.mode,
            bar.value,
            bar.mode
        );
    }
    Ok(())
}
