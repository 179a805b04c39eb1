//! Bavard lower bounds on scl from φ̄ and its defect bound, and the word
//! identities behind the upper bound on scl(c_1) in the hyperelliptic group.

use omega_scl::defect::{cor_scl_lower, scl_upper_identity_check, twist_scl_lower};

fn main() -> omega_scl::Result<()> {
    let (v, b) = twist_scl_lower()?;
    println!(
        "{}: barphi = {} ({}), scl >= {}",
        b.element,
        v.value,
        v.mode,
        fmt(&b.lower)
    );
    for g in 2..=3 {
        let (v, sphere, b) = cor_scl_lower(g)?;
        println!(
            "{}: barphi = {} ({}), sphere value {}, scl >= {}",
            b.element,
            v.value,
            v.mode,
            sphere.value,
            fmt(&b.lower)
        );
    }
    for g in 1..=4 {
        let r = scl_upper_identity_check(g)?;
        for (name, ok) in &r.identities {
            println!("g = {g}: {name}: {}", if *ok { "holds" } else { "FAILS" });
        }
        println!(
            "g = {g}: coboundary {} (expected {}), {} <= scl(c1) <= {}",
            r.coboundary.value,
            r.expected,
            fmt(&r.bound.lower),
            fmt(&r.bound.upper)
        );
    }
    Ok(())
}

fn fmt(q: &Option<omega_scl::quasimorphism::Q>) -> String {
    q.as_ref().map_or("-".into(), ToString::to_string)
}
