//! The Meyer cocycle on Sp(2g; ℤ) and the hermitian cocycle on a cover
//! eigenspace, evaluated on a few fixed pairs, with the Barge–Ghys
//! power-sum form of τ(A^k, A).

use omega_scl::cocycle::{meyer_tau, tau_power_bg};
use omega_scl::quasimorphism::{Context, Quasimorphism};
use omega_scl::symplectic::{symplectic_form, word_to_sp};
use omega_scl::words::MappingClassWord;

fn main() -> omega_scl::Result<()> {
    let cases = [
        (Context::Meyer { g: 1 }, "c2^2", "dp1^2"),
        (Context::Meyer { g: 2 }, "c1 c2", "c2 c3^-1"),
        (Context::omega(6, 2), "s1", "s1"),
        (Context::omega(6, 3), "s1 s2", "s3 s2^-1 s4"),
        (Context::Omega { m: 6, d: 2, j: 1 }, "s1 s2", "s2 s3"),
    ];
    for (ctx, x, y) in cases {
        let qm = Quasimorphism::new(ctx)?;
        let (xw, yw) = (
            MappingClassWord::parse(ctx.group(), x)?,
            MappingClassWord::parse(ctx.group(), y)?,
        );
        println!(
            "{ctx}: tau({x}, {y}) = {}, dim V = {}",
            qm.tau(&xw, &yw)?,
            qm.v_dimension(&xw, &yw)?
        );
    }

    let g = 2;
    let a = word_to_sp(&MappingClassWord::parse(
        Context::Meyer { g }.group(),
        "c1 c2^-1 c3 c4",
    )?)?;
    let j = symplectic_form(g);
    let mut p = a.clone();
    for k in 1..=6 {
        println!(
            "tau(A^{k}, A) = {} = Sign(-J sum(A^i - A^-i)) = {}",
            meyer_tau(&p, &a)?,
            tau_power_bg(&j, &a, k)?
        );
        p = &p * &a;
    }
    Ok(())
}
