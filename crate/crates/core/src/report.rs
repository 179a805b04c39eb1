//! Named reproduction targets with exact expected values, sampled property
//! suites and the report emitters behind the command-line front end.
//!
//! Every check compares exact rationals (or exact counts). A check passes
//! only when the values agree and the computed value is certified.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cover::chain_word;
use crate::defect::{
    barge_ghys_crosscheck, bavard_bound, boundary_witness_report, cor_scl_lower,
    defect_search_sampled, meyer_bridge, random_pairs, random_word, scl_upper_hyperelliptic,
    scl_upper_identity_check, twist_scl_lower, SamplerConfig,
};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::quasimorphism::{
    closed_form_barphi, closed_form_phi, gap_closed_form, nonsingularity_check, power_sum_tau, q,
    Context, Mode, Quasimorphism, Q,
};
use crate::symplectic::is_symplectic;
use crate::words::{macro_word, relation_catalog, Group, Macro, MappingClassWord};

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// A published closed form or value.
    Published,
    /// An independent computation (brute force, a second model, a count).
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub mode: String,
    pub basis: Basis,
    pub pass: bool,
}

impl Check {
    fn exact(
        name: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
        basis: Basis,
    ) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
            mode: Mode::Exact.to_string(),
            basis,
        }
    }

    fn value(name: impl Into<String>, expected: &Q, actual: &Q, mode: Mode, basis: Basis) -> Self {
        Check {
            name: name.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            mode: mode.to_string(),
            basis,
            pass: expected == actual && mode.is_certified(),
        }
    }

    fn certified(&self) -> bool {
        self.mode != Mode::Unconverged.to_string()
    }
}

/// Severity order: pass < unconverged < fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Unconverged,
    Fail,
}

impl Status {
    /// 0 pass, 1 computational failure, 3 uncertified value.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Unconverged => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Unconverged => "UNCONVERGED",
            Status::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetReport {
    pub id: String,
    pub description: String,
    pub status: Status,
    pub passed: usize,
    pub checks: Vec<Check>,
}

impl TargetReport {
    fn new(target: &ReproductionTarget, checks: Vec<Check>) -> Self {
        let status = checks.iter().fold(Status::Pass, |s, c| {
            let here = match (c.pass, c.certified()) {
                (true, _) => Status::Pass,
                (false, true) => Status::Fail,
                (false, false) => Status::Unconverged,
            };
            s.max(here)
        });
        TargetReport {
            id: target.id.to_string(),
            description: target.description.to_string(),
            status,
            passed: checks.iter().filter(|c| c.pass).count(),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Parameters shared by all targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RunOptions {
    pub m_max: u32,
    pub g_max: u32,
    pub seed: u64,
    /// Random pairs per context for sampled targets.
    pub samples: usize,
    /// Cases per sampled property.
    pub cases: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            m_max: 10,
            g_max: 4,
            seed: 0,
            samples: 200,
            cases: 1000,
        }
    }
}

pub struct ReproductionTarget {
    pub id: &'static str,
    pub description: &'static str,
    run: fn(&RunOptions) -> Result<Vec<Check>>,
}

/// The registry, sorted by id.
pub fn targets() -> Vec<ReproductionTarget> {
    let mut v = vec![
        ReproductionTarget {
            id: "barge-ghys",
            description: "Meyer's tau(A^k, A) against the Barge-Ghys matrix, 100 random A per genus g <= 3, k <= 20",
            run: barge_ghys,
        },
        ReproductionTarget {
            id: "boundary-witness",
            description: "delta barphi_g(c2^2 ... c2g^2, d1+ d1- ... dg+ dg-) = -2g",
            run: boundary_witness,
        },
        ReproductionTarget {
            id: "chain-grid",
            description: "phi and barphi of chain elements s1...s(r-1) against their closed forms",
            run: chain_grid_checks,
        },
        ReproductionTarget {
            id: "defect-guard",
            description: "|delta barphi_{m,j}| <= m - 2 on catalogued and seeded random pairs",
            run: defect_guard,
        },
        ReproductionTarget {
            id: "headline",
            description: "barphi_{6,2}((s1 s2)^6) = -8/5",
            run: headline,
        },
        ReproductionTarget {
            id: "independence",
            description: "the barphi value matrix is nonsingular for 4 <= m <= 30",
            run: independence,
        },
        ReproductionTarget {
            id: "meyer-bridge",
            description: "hermitian tau at (m,2,1) equals Meyer's tau; barphi_g of separating twists",
            run: bridge,
        },
        ReproductionTarget {
            id: "power-sum",
            description: "power sums of tau along chain elements and the phi - barphi gap",
            run: power_sum,
        },
        ReproductionTarget {
            id: "properties",
            description: "seeded cocycle, quasimorphism and representation properties",
            run: properties,
        },
        ReproductionTarget {
            id: "scl-lower",
            description: "Bavard lower bounds: 1/5 for t_s1 in M_2, 1/2 for the cor element, separating twists in H_g",
            run: scl_lower,
        },
        ReproductionTarget {
            id: "scl-upper",
            description: "word identities and coboundary behind scl(c1) <= 1/(2(2g+3+1/g))",
            run: scl_upper,
        },
    ];
    v.sort_by_key(|t| t.id);
    v
}

pub fn target_ids() -> Vec<&'static str> {
    targets().iter().map(|t| t.id).collect()
}

pub fn run_target(id: &str, opts: &RunOptions) -> Result<TargetReport> {
    let all = targets();
    let t = all.iter().find(|t| t.id == id).ok_or_else(|| {
        Error::InvalidInput(format!(
            "unknown target '{id}'; known: {}",
            target_ids().join(", ")
        ))
    })?;
    Ok(TargetReport::new(t, (t.run)(opts)?))
}

/// Runs the named targets ("all" for every one) in parallel; the result is
/// sorted by id.
pub fn run_targets(ids: &[String], opts: &RunOptions) -> Result<Vec<TargetReport>> {
    let mut wanted: Vec<String> = if ids.iter().any(|i| i == "all") {
        target_ids().into_iter().map(String::from).collect()
    } else {
        ids.to_vec()
    };
    wanted.sort();
    wanted.dedup();
    wanted.par_iter().map(|id| run_target(id, opts)).collect()
}

pub fn overall_status(reports: &[TargetReport]) -> Status {
    reports
        .iter()
        .map(|r| r.status)
        .max()
        .unwrap_or(Status::Pass)
}

#[derive(Serialize)]
struct Envelope<'a> {
    options: &'a RunOptions,
    status: Status,
    targets: &'a [TargetReport],
}

/// Pretty JSON for a run; byte-identical for identical options.
pub fn to_json(reports: &[TargetReport], opts: &RunOptions) -> String {
    let env = Envelope {
        options: opts,
        status: overall_status(reports),
        targets: reports,
    };
    serde_json::to_string_pretty(&env).expect("reports serialize")
}

/// One JSON object per check, tagged with its target.
pub fn to_json_lines(reports: &[TargetReport]) -> String {
    #[derive(Serialize)]
    struct Line<'a> {
        target: &'a str,
        #[serde(flatten)]
        check: &'a Check,
    }
    let mut out = String::new();
    for r in reports {
        for c in &r.checks {
            out.push_str(
                &serde_json::to_string(&Line {
                    target: &r.id,
                    check: c,
                })
                .expect("checks serialize"),
            );
            out.push('\n');
        }
    }
    out
}

/// One row of the chain-element grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridCell {
    pub m: u32,
    pub j: u32,
    pub r: u32,
    pub phi: String,
    pub phi_expected: String,
    pub barphi: String,
    pub barphi_expected: String,
    pub mode: String,
    pub phi_ok: bool,
    pub barphi_ok: bool,
}

/// φ_{m,j} and φ̄_{m,j} of σ̃₁⋯σ̃_{r−1} for 4 ≤ m ≤ m_max, all j, 2 ≤ r ≤ m,
/// in (m, j, r) order.
pub fn chain_grid(m_max: u32) -> Result<Vec<GridCell>> {
    let contexts: Vec<(u32, u32)> = (4..=m_max)
        .flat_map(|m| (1..m).map(move |j| (m, j)))
        .collect();
    let rows: Vec<Vec<GridCell>> = contexts
        .par_iter()
        .map(|&(m, j)| {
            let ctx = Context::omega(m, j);
            let qm = Quasimorphism::new(ctx)?;
            (2..=m)
                .map(|r| {
                    let w = chain_word(ctx.group(), r)?;
                    let phi = qm.phi(&w)?;
                    let bar = qm.homogenize(&w)?;
                    let (pe, be) = (closed_form_phi(m, j, r), closed_form_barphi(m, j, r));
                    Ok(GridCell {
                        m,
                        j,
                        r,
                        phi_ok: phi == pe,
                        barphi_ok: bar.value == be && bar.mode.is_certified(),
                        phi: phi.to_string(),
                        phi_expected: pe.to_string(),
                        barphi: bar.value.to_string(),
                        barphi_expected: be.to_string(),
                        mode: bar.mode.to_string(),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// The grid as CSV with a header row.
pub fn grid_csv(cells: &[GridCell]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for c in cells {
        w.serialize(c)
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn chain_grid_checks(opts: &RunOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for c in chain_grid(opts.m_max)? {
        let cell = format!("m={} j={} r={}", c.m, c.j, c.r);
        out.push(Check {
            name: format!("phi {cell}"),
            pass: c.phi_ok,
            expected: c.phi_expected,
            actual: c.phi,
            mode: Mode::Exact.to_string(),
            basis: Basis::Published,
        });
        out.push(Check {
            name: format!("barphi {cell}"),
            pass: c.barphi_ok,
            expected: c.barphi_expected,
            actual: c.barphi,
            mode: c.mode,
            basis: Basis::Published,
        });
    }
    Ok(out)
}

fn headline(_: &RunOptions) -> Result<Vec<Check>> {
    let ctx = Context::omega(6, 2);
    let w = MappingClassWord::parse(ctx.group(), "(s1 s2)^6")?;
    let v = Quasimorphism::new(ctx)?.homogenize(&w)?;
    Ok(vec![Check::value(
        "barphi_{6,2}((s1 s2)^6)",
        &q(-8, 5),
        &v.value,
        v.mode,
        Basis::Published,
    )])
}

/// φ̄_g of t_{s_0} = c_1 is −g/(2g+1); of t_{s_h}, −4h(g−h)/(2g+1).
pub fn separating_twist_value(g: u32, h: u32) -> Q {
    let (g, h) = (g as i64, h as i64);
    if h == 0 {
        q(-g, 2 * g + 1)
    } else {
        q(-4 * h * (g - h), 2 * g + 1)
    }
}

fn bridge(opts: &RunOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in (4..=opts.m_max).step_by(2) {
        let cfg = SamplerConfig {
            samples: opts.samples,
            seed: opts.seed,
            ..SamplerConfig::default()
        };
        let pairs = random_pairs(Group::Sphere { m, d: 2 }, &cfg);
        let r = meyer_bridge(m, &pairs)?;
        let all = format!("{}/{}", r.pairs, r.pairs);
        out.push(Check::exact(
            format!("tau agreement with the cover action, m={m}"),
            &all,
            format!("{}/{}", r.agree_cover, r.pairs),
            Basis::Derived,
        ));
        out.push(Check::exact(
            format!("tau agreement with the chain twists, m={m}"),
            &all,
            format!("{}/{}", r.agree_curves, r.pairs),
            Basis::Derived,
        ));
    }
    for g in 1..=opts.g_max {
        let qm = Quasimorphism::new(Context::Meyer { g })?;
        let group = Group::Hyperelliptic { g };
        for h in 0..g {
            let w = MappingClassWord::new(group, macro_word(group, Macro::Sep(h))?)?;
            let v = qm.homogenize(&w)?;
            out.push(Check::value(
                format!("barphi_{g}(sep{h})"),
                &separating_twist_value(g, h),
                &v.value,
                v.mode,
                Basis::Published,
            ));
        }
    }
    Ok(out)
}

fn boundary_witness(opts: &RunOptions) -> Result<Vec<Check>> {
    (1..=opts.g_max)
        .into_par_iter()
        .map(|g| {
            let r = boundary_witness_report(g)?;
            let name = format!("delta barphi_{g}(c2^2...c{}^2, d1+d1-...d{g}+d{g}-)", 2 * g);
            Ok(Check::value(
                name,
                &q(-2 * g as i64, 1),
                &r.value.value,
                r.value.mode,
                Basis::Published,
            ))
        })
        .collect()
}

fn barge_ghys(opts: &RunOptions) -> Result<Vec<Check>> {
    (1..=opts.g_max.min(3))
        .map(|g| {
            let (checks, bad) = barge_ghys_crosscheck(g, 100, 20, opts.seed)?;
            Ok(Check::exact(
                format!("g={g}: mismatches among {checks} (A, k) pairs"),
                0,
                bad.len(),
                Basis::Derived,
            ))
        })
        .collect()
}

/// Largest m for which the value matrix is checked.
pub const INDEPENDENCE_M_MAX: u32 = 30;

fn independence(_: &RunOptions) -> Result<Vec<Check>> {
    Ok((4..=INDEPENDENCE_M_MAX)
        .into_par_iter()
        .map(|m| {
            let (det, nonzero) = nonsingularity_check(m);
            Check {
                name: format!("det of the barphi value matrix, m={m}"),
                expected: "nonzero".into(),
                actual: det.to_string(),
                mode: Mode::Exact.to_string(),
                basis: Basis::Published,
                pass: nonzero,
            }
        })
        .collect())
}

fn scl_lower(opts: &RunOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    // |φ̄_g(t_{s_h})| / (2 · 2g): 1/(4(2g+1)) for h = 0, h(g−h)/(g(2g+1)) otherwise.
    for g in 1..=opts.g_max {
        let ctx = Context::Meyer { g };
        let qm = Quasimorphism::new(ctx)?;
        for h in 0..=g / 2 {
            let w = MappingClassWord::parse(ctx.group(), &format!("sep{h}"))?;
            let v = qm.homogenize(&w)?;
            let b = bavard_bound(&w.to_string(), &[(v.clone(), ctx.defect_upper_bound())]);
            let expected =
                separating_twist_value(g, h).abs() / Q::from_integer((4 * g as i64).into());
            out.push(Check::value(
                format!("Bavard bound for t_s{h} in H_{g}"),
                &expected,
                &b.lower.unwrap_or_default(),
                v.mode,
                Basis::Published,
            ));
        }
    }
    let (v, b) = twist_scl_lower()?;
    out.push(Check::value(
        "barphi_{6,2} of t_s1 in M_2",
        &q(-8, 5),
        &v.value,
        v.mode,
        Basis::Published,
    ));
    let lower = b.lower.unwrap_or_default();
    out.push(Check::value(
        "Bavard bound for t_s1 in M_2",
        &q(1, 5),
        &lower,
        v.mode,
        Basis::Published,
    ));
    for g in 2..=3 {
        let (v, sphere, b) = cor_scl_lower(g)?;
        out.push(Check::value(
            format!("sphere model agrees on the cor element, g={g}"),
            &v.value,
            &sphere.value,
            v.mode.worst(sphere.mode),
            Basis::Derived,
        ));
        let lower = b.lower.unwrap_or_default();
        out.push(Check::value(
            format!("Bavard bound for the cor element, g={g}"),
            &q(1, 2),
            &lower,
            v.mode,
            Basis::Published,
        ));
    }
    Ok(out)
}

fn scl_upper(opts: &RunOptions) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for g in 1..=opts.g_max {
        let r = scl_upper_identity_check(g)?;
        for (name, ok) in &r.identities {
            out.push(Check::exact(
                format!("g={g}: {name}"),
                true,
                ok,
                Basis::Derived,
            ));
        }
        out.push(Check::value(
            format!("g={g}: coboundary equals (2g+3+1/g) barphi_g(c1)"),
            &r.expected,
            &r.coboundary.value,
            r.coboundary.mode,
            Basis::Derived,
        ));
        let upper = r.bound.upper.clone().unwrap_or_default();
        out.push(Check::exact(
            format!("g={g}: cited upper bound 1/(2(2g+3+1/g))"),
            scl_upper_hyperelliptic(g),
            upper,
            Basis::Published,
        ));
    }
    Ok(out)
}

/// Σ_{k=1}^{rm} τ(A^k, A) for the chain element A = σ̃₁⋯σ̃_{r−1}.
pub fn power_sum_brute_force(qm: &Quasimorphism, r: u32) -> Result<i64> {
    let Context::Omega { m, .. } = qm.context() else {
        return Err(Error::InvalidInput(
            "power sums are taken in the sphere contexts".into(),
        ));
    };
    let (a, ai) = qm.image_pair(&chain_word(qm.context().group(), r)?)?;
    let (mut p, mut pi) = (a.clone(), ai.clone());
    let mut total = 0;
    for _ in 0..r * m {
        total += qm.evaluator().tau_with_inverse(&p, Some(&pi), &a)?;
        p = &p * &a;
        pi = &pi * &ai;
    }
    Ok(total)
}

/// Largest m for the brute-force power sums.
pub const POWER_SUM_M_MAX: u32 = 8;

fn power_sum(opts: &RunOptions) -> Result<Vec<Check>> {
    let contexts: Vec<(u32, u32)> = (4..=opts.m_max.min(POWER_SUM_M_MAX))
        .flat_map(|m| (1..m).map(move |j| (m, j)))
        .collect();
    let rows: Vec<Vec<Check>> = contexts
        .par_iter()
        .map(|&(m, j)| {
            let ctx = Context::omega(m, j);
            let qm = Quasimorphism::new(ctx)?;
            let mut out = Vec::new();
            for r in 2..=m {
                let cell = format!("m={m} j={j} r={r}");
                let brute = power_sum_brute_force(&qm, r)?;
                let formula = power_sum_tau(m, j, r);
                out.push(Check::exact(
                    format!("power sum formula, {cell}"),
                    brute,
                    formula,
                    Basis::Derived,
                ));
                let w = chain_word(ctx.group(), r)?;
                let bar = qm.homogenize(&w)?;
                let gap = qm.phi(&w)? - bar.value;
                let closed = gap_closed_form(m, j, r);
                out.push(Check::value(
                    format!("gap closed form vs phi - barphi, {cell}"),
                    &gap,
                    &closed,
                    bar.mode,
                    Basis::Derived,
                ));
                let averaged = q(formula, (r * m) as i64);
                out.push(Check::exact(
                    format!("gap closed form vs power sum / rm, {cell}"),
                    &averaged,
                    &closed,
                    Basis::Derived,
                ));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

fn defect_guard(opts: &RunOptions) -> Result<Vec<Check>> {
    let mut contexts: Vec<Context> = (1..=opts.g_max.min(3))
        .map(|g| Context::Meyer { g })
        .collect();
    contexts.extend(
        (4..=opts.m_max.min(DEFECT_M_MAX)).flat_map(|m| (1..m).map(move |j| Context::omega(m, j))),
    );
    let cfg = SamplerConfig {
        samples: opts.samples,
        seed: opts.seed,
        ..SamplerConfig::default()
    };
    contexts
        .par_iter()
        .map(|&ctx| {
            let r = defect_search_sampled(&Quasimorphism::new(ctx)?, &cfg)?;
            Ok(Check {
                name: format!(
                    "{ctx}: violations of |delta barphi|, |tau| <= {}",
                    r.upper_bound
                ),
                expected: "0".into(),
                actual: r.violations.len().to_string(),
                mode: format!(
                    "certified {}/{}, max |delta barphi| = {}, max |tau| = {}",
                    r.certified_samples, r.samples, r.max_abs_barphi, r.max_abs_tau
                ),
                basis: Basis::Derived,
                pass: !r.falsified(),
            })
        })
        .collect()
}

/// Largest m for the sampled defect guard.
pub const DEFECT_M_MAX: u32 = 8;

/// Contexts cycled through by the property suites: φ_g for g ≤ 3 and
/// φ_{m,j} for 4 ≤ m ≤ m_max, all j.
pub fn property_contexts(m_max: u32) -> Vec<Context> {
    let mut v: Vec<Context> = (1..=3).map(|g| Context::Meyer { g }).collect();
    v.extend((4..=m_max).flat_map(|m| (1..m).map(move |j| Context::omega(m, j))));
    v
}

const PROPERTY_WORD_LEN: usize = 6;

struct Suite {
    qms: Vec<Quasimorphism>,
    relations: Vec<Vec<(MappingClassWord, MappingClassWord)>>,
}

impl Suite {
    fn new(m_max: u32) -> Result<Self> {
        let qms: Vec<Quasimorphism> = property_contexts(m_max)
            .into_par_iter()
            .map(Quasimorphism::new)
            .collect::<Result<_>>()?;
        let relations = qms
            .iter()
            .map(|qm| {
                Ok(relation_catalog(qm.context().group())?
                    .into_iter()
                    .map(|r| (r.lhs, r.rhs))
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok(Suite { qms, relations })
    }

    /// Runs `case` on `cases` seeded cases, cycling through the contexts.
    /// Returns (failures, first failure).
    fn run<F>(
        &self,
        cases: usize,
        seed: u64,
        stream: u64,
        case: F,
    ) -> Result<(usize, Option<String>)>
    where
        F: Fn(usize, &Quasimorphism, &mut ChaCha8Rng) -> Result<Option<String>> + Sync,
    {
        let outcomes: Vec<Option<String>> = (0..cases)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
                rng.set_stream(stream);
                let k = i % self.qms.len();
                case(k, &self.qms[k], &mut rng)
            })
            .collect::<Result<_>>()?;
        let failures = outcomes.iter().filter(|o| o.is_some()).count();
        Ok((failures, outcomes.into_iter().flatten().next()))
    }
}

fn word(qm: &Quasimorphism, rng: &mut ChaCha8Rng) -> MappingClassWord {
    random_word(qm.context().group(), rng, PROPERTY_WORD_LEN)
}

fn cat(parts: &[&MappingClassWord]) -> Result<MappingClassWord> {
    let mut acc = MappingClassWord::identity(parts[0].group());
    for p in parts {
        acc = acc.concat(p)?;
    }
    Ok(acc)
}

fn fail_if(bad: bool, msg: impl FnOnce() -> String) -> Option<String> {
    bad.then(msg)
}

/// The deck scalar ω^j expected on the lift of the deck word.
fn deck_scalar(qm: &Quasimorphism) -> Option<ExactMatrix> {
    let rep = qm.cover_rep()?;
    Some(ExactMatrix::identity(rep.dim(), rep.level()).scale(rep.lambda()))
}

fn properties(opts: &RunOptions) -> Result<Vec<Check>> {
    let suite = Suite::new(opts.m_max)?;
    let n = opts.cases;
    let mut results: BTreeMap<usize, (&str, usize, Option<String>)> = BTreeMap::new();
    let mut record = |idx: usize, name: &'static str, r: (usize, Option<String>)| {
        results.insert(idx, (name, r.0, r.1));
    };

    record(
        0,
        "cocycle identity tau(x,y) + tau(xy,z) = tau(x,yz) + tau(y,z)",
        suite.run(n, opts.seed, 0, |_, qm, rng| {
            let (x, y, z) = (word(qm, rng), word(qm, rng), word(qm, rng));
            let lhs = qm.tau(&x, &y)? + qm.tau(&x.concat(&y)?, &z)?;
            let rhs = qm.tau(&x, &y.concat(&z)?)? + qm.tau(&y, &z)?;
            Ok(fail_if(lhs != rhs, || {
                format!("{}: x={x} y={y} z={z}", qm.context())
            }))
        })?,
    );

    record(
        1,
        "conjugation invariance tau(xyx^-1, xzx^-1) = tau(y,z)",
        suite.run(n, opts.seed, 1, |_, qm, rng| {
            let (x, y, z) = (word(qm, rng), word(qm, rng), word(qm, rng));
            let lhs = qm.tau(&y.conjugate_by(&x)?, &z.conjugate_by(&x)?)?;
            let rhs = qm.tau(&y, &z)?;
            Ok(fail_if(lhs != rhs, || {
                format!("{}: x={x} y={y} z={z}", qm.context())
            }))
        })?,
    );

    record(
        2,
        "tau(x, x^-1) = 0",
        suite.run(n, opts.seed, 2, |_, qm, rng| {
            let x = word(qm, rng);
            let t = qm.tau(&x, &x.inverse())?;
            Ok(fail_if(t != 0, || {
                format!("{}: x={x} tau={t}", qm.context())
            }))
        })?,
    );

    record(
        3,
        "delta phi = tau",
        suite.run(n, opts.seed, 3, |_, qm, rng| {
            let (x, y) = (word(qm, rng), word(qm, rng));
            let d = qm.coboundary_phi(&x, &y)?;
            let t = qm.tau(&x, &y)?;
            Ok(fail_if(d != Q::from_integer(t.into()), || {
                format!("{}: x={x} y={y}", qm.context())
            }))
        })?,
    );

    record(4, "phi((ab)^3 x) - phi(x b a^3 b^2) = delta phi([b,a], (ab)^3 x) + delta phi([a,b], b a b x b a^2)", suite.run(n, opts.seed, 4, |_, qm, rng| {
        let (a, b, x) = (word(qm, rng), word(qm, rng), word(qm, rng));
        let ab3x = cat(&[&a, &b, &a, &b, &a, &b, &x])?;
        let xba3b2 = cat(&[&x, &b, &a, &a, &a, &b, &b])?;
        let ba = MappingClassWord::commutator(&b, &a)?;
        let ab = MappingClassWord::commutator(&a, &b)?;
        let babxba2 = cat(&[&b, &a, &b, &x, &b, &a, &a])?;
        let lhs = qm.phi(&ab3x)? - qm.phi(&xba3b2)?;
        let rhs = qm.coboundary_phi(&ba, &ab3x)? + qm.coboundary_phi(&ab, &babxba2)?;
        Ok(fail_if(lhs != rhs, || format!("{}: a={a} b={b} x={x}", qm.context())))
    })?);

    record(
        5,
        "phi agrees on relation-equivalent words u lhs v, u rhs v",
        suite.run(n, opts.seed, 5, |k, qm, rng| {
            let rels = &suite.relations[k];
            let (lhs, rhs) = &rels[rng.gen_range(0..rels.len())];
            let (u, v) = (word(qm, rng), word(qm, rng));
            let a = qm.phi(&cat(&[&u, lhs, &v])?)?;
            let b = qm.phi(&cat(&[&u, rhs, &v])?)?;
            Ok(fail_if(a != b, || {
                format!("{}: {lhs} = {rhs}, u={u} v={v}", qm.context())
            }))
        })?,
    );

    record(
        6,
        "images preserve the form",
        suite.run(n, opts.seed, 6, |_, qm, rng| {
            let x = word(qm, rng);
            let a = qm.image(&x)?;
            let ok = match qm.cover_rep() {
                Some(rep) => rep.preserves_form(&a),
                None => is_symplectic(&a),
            };
            Ok(fail_if(!ok, || format!("{}: x={x}", qm.context())))
        })?,
    );

    let sphere = Suite {
        qms: suite
            .qms
            .into_iter()
            .filter(|qm| qm.cover_rep().is_some())
            .collect(),
        relations: Vec::new(),
    };
    record(
        7,
        "lift of s1...s(m-2) s(m-1)^2 s(m-2)...s1 acts by omega^j",
        sphere.run(n, opts.seed, 7, |_, qm, rng| {
            let group = qm.context().group();
            let deck = MappingClassWord::new(group, macro_word(group, Macro::Deck)?)?;
            let u = word(qm, rng);
            let image = qm.image(&deck.conjugate_by(&u)?)?;
            let expected = deck_scalar(qm).expect("sphere contexts carry a cover");
            Ok(fail_if(image != expected, || {
                format!("{}: u={u}", qm.context())
            }))
        })?,
    );

    Ok(results
        .into_values()
        .map(|(name, failures, first)| Check {
            name: name.to_string(),
            expected: format!("0 failures in {n} cases"),
            actual: match first {
                Some(ex) => format!("{failures} failures in {n} cases, e.g. {ex}"),
                None => format!("{failures} failures in {n} cases"),
            },
            mode: Mode::Exact.to_string(),
            basis: Basis::Derived,
            pass: failures == 0,
        })
        .collect())
}

/// Context from command-line style flags: `meyer` with `g`, or `m`, `j`
/// and an optional `d` (default m).
pub fn context_from_flags(
    meyer: bool,
    g: Option<u32>,
    m: Option<u32>,
    d: Option<u32>,
    j: Option<u32>,
) -> Result<Context> {
    let ctx = match (meyer, g, m, j) {
        (_, Some(g), None, None) => Context::Meyer { g },
        (false, None, Some(m), Some(j)) => Context::Omega {
            m,
            d: d.unwrap_or(m),
            j,
        },
        _ => {
            return Err(Error::InvalidInput(
                "give either --meyer -g G or --omega -m M [-d D] -j J".into(),
            ))
        }
    };
    if let Context::Omega { m, d, j } = ctx {
        if j == 0 || j >= d {
            return Err(Error::InvalidInput(format!(
                "need 1 <= j < d, got j={j}, d={d}"
            )));
        }
        if d < 2 || m % d != 0 {
            return Err(Error::InvalidInput(format!(
                "need d | m with d >= 2, got m={m}, d={d}"
            )));
        }
    }
    ctx.group().validate()?;
    Ok(ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_sorted_and_unique() {
        let ids = target_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
        assert!(run_target("nope", &RunOptions::default()).is_err());
    }

    #[test]
    fn small_targets_pass() {
        let opts = RunOptions {
            m_max: 6,
            g_max: 2,
            samples: 20,
            cases: 40,
            seed: 3,
        };
        for id in [
            "headline",
            "boundary-witness",
            "scl-lower",
            "scl-upper",
            "meyer-bridge",
        ] {
            let r = run_target(id, &opts).unwrap();
            assert_eq!(
                r.status,
                Status::Pass,
                "{id}: {:?}",
                r.failures().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let opts = RunOptions {
            m_max: 5,
            g_max: 1,
            samples: 10,
            cases: 20,
            seed: 9,
        };
        let ids = vec!["headline".to_string(), "defect-guard".to_string()];
        let a = to_json(&run_targets(&ids, &opts).unwrap(), &opts);
        let b = to_json(&run_targets(&ids, &opts).unwrap(), &opts);
        assert_eq!(a, b);
        assert!(a.contains("\"basis\": \"published\""));
    }

    #[test]
    fn flags() {
        assert_eq!(
            context_from_flags(true, Some(2), None, None, None).unwrap(),
            Context::Meyer { g: 2 }
        );
        assert_eq!(
            context_from_flags(false, None, Some(6), None, Some(2)).unwrap(),
            Context::omega(6, 2)
        );
        assert!(context_from_flags(false, None, Some(6), Some(4), Some(1)).is_err());
        assert!(context_from_flags(false, None, Some(6), None, Some(6)).is_err());
        assert!(context_from_flags(true, None, None, None, None).is_err());
    }

    #[test]
    fn grid_csv_quotes_modes() {
        let cells = chain_grid(4).unwrap();
        assert_eq!(cells.len(), 9);
        let csv = grid_csv(&cells).unwrap();
        assert!(csv
            .starts_with("m,j,r,phi,phi_expected,barphi,barphi_expected,mode,phi_ok,barphi_ok\n"));
        assert!(csv.contains("\"period(1,1)\""));
    }
}
