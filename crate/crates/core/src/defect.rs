//! Coboundaries of homogenized quasimorphisms, defect witnesses, Bavard
//! bounds for scl, and cross-checks between the real and hermitian pipelines.
//!
//! Defect upper bounds (m − 2, resp. 2g) are inputs; everything computed here
//! is a lower bound or an exact identity.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cocycle::{hermitian_tau, meyer_tau, tau_power_bg};
use crate::cover::{eigenspace_rep, halftwist_action, intersection_form};
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::quasimorphism::{q, Context, Mode, QmValue, Quasimorphism, Q};
use crate::symplectic::{symplectic_form, word_to_sp};
use crate::words::{macro_word, to_sphere, Generator, Group, Letter, Macro, MappingClassWord};

fn ser_q<S: serde::Serializer>(v: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_q<S: serde::Serializer>(v: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Seeded sampler of random word pairs.
#[derive(Clone, Copy, Debug)]
pub struct SamplerConfig {
    pub samples: usize,
    /// Words have 1..=max_len unit letters before free reduction.
    pub max_len: usize,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            samples: 200,
            max_len: 8,
            seed: 0,
        }
    }
}

/// Generators drawn by the sampler: all σ_i, or the chain c_1..c_{2g+1}
/// (which generates 𝓗_g).
pub fn sample_generators(group: Group) -> Vec<Generator> {
    match group {
        Group::Sphere { m, .. } => (1..m).map(Generator::Sigma).collect(),
        Group::Hyperelliptic { g } => (1..=2 * g + 1).map(Generator::Curve).collect(),
    }
}

pub fn random_word(group: Group, rng: &mut impl Rng, max_len: usize) -> MappingClassWord {
    let gens = sample_generators(group);
    let len = rng.gen_range(1..=max_len.max(1));
    let letters = (0..len)
        .map(|_| {
            let g = gens[rng.gen_range(0..gens.len())];
            Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    MappingClassWord::new(group, letters).expect("sampled generators are valid")
}

pub fn random_pairs(
    group: Group,
    cfg: &SamplerConfig,
) -> Vec<(MappingClassWord, MappingClassWord)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    (0..cfg.samples)
        .map(|_| {
            let x = random_word(group, &mut rng, cfg.max_len);
            let y = random_word(group, &mut rng, cfg.max_len);
            (x, y)
        })
        .collect()
}

/// The pair (c_2² c_4² ⋯ c_{2g}², d_1^+ d_1^− ⋯ d_g^+ d_g^−).
pub fn boundary_witness_pair(g: u32) -> Result<(MappingClassWord, MappingClassWord)> {
    let group = Group::Hyperelliptic { g };
    let x = (1..=g)
        .map(|i| Letter::new(Generator::Curve(2 * i), 2))
        .collect();
    let y = (1..=g)
        .flat_map(|i| {
            [
                Letter::new(Generator::DPlus(i), 1),
                Letter::new(Generator::DMinus(i), 1),
            ]
        })
        .collect();
    Ok((
        MappingClassWord::new(group, x)?,
        MappingClassWord::new(group, y)?,
    ))
}

/// Catalogued pairs attaining large coboundaries in a context.
pub fn witness_pairs(ctx: Context) -> Result<Vec<(MappingClassWord, MappingClassWord)>> {
    match ctx {
        Context::Meyer { g } => Ok(vec![boundary_witness_pair(g)?]),
        Context::Omega { m, d, .. } if m % 2 == 0 => {
            let (x, y) = boundary_witness_pair((m - 2) / 2)?;
            Ok(vec![(to_sphere(&x, d)?, to_sphere(&y, d)?)])
        }
        Context::Omega { .. } => Ok(Vec::new()),
    }
}

/// Empirical defect data for one context.
#[derive(Clone, Debug, Serialize)]
pub struct DefectReport {
    pub context: String,
    pub samples: usize,
    pub certified_samples: usize,
    /// Largest certified |δφ̄| seen; a lower bound for D(φ̄).
    #[serde(serialize_with = "ser_q")]
    pub max_abs_barphi: Q,
    pub witness: Option<(String, String)>,
    /// Largest |τ| = |δφ| on the same pairs.
    pub max_abs_tau: i64,
    /// The defect upper bound m − 2 (2g for the Meyer function).
    pub upper_bound: i64,
    /// Certified pairs with |δφ̄| or |τ| above the upper bound.
    pub violations: Vec<(String, String, String)>,
}

impl DefectReport {
    pub fn falsified(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// δφ̄ and τ over the given pairs; the reduction is order independent, with
/// ties broken by the lexicographically smallest witness.
pub fn defect_search(
    qm: &Quasimorphism,
    pairs: &[(MappingClassWord, MappingClassWord)],
) -> Result<DefectReport> {
    let ctx = qm.context();
    let bound = ctx.defect_upper_bound();
    // Pairs whose homogenizations cannot be certified are skipped up front.
    let results: Vec<(Option<QmValue>, i64)> = pairs
        .par_iter()
        .map(|(x, y)| {
            let certifiable =
                qm.homogenizable(x)? && qm.homogenizable(y)? && qm.homogenizable(&x.concat(y)?)?;
            let v = if certifiable {
                Some(qm.coboundary_barphi(x, y)?)
            } else {
                None
            };
            Ok((v, qm.tau(x, y)?))
        })
        .collect::<Result<_>>()?;
    let mut max_abs = Q::zero();
    let mut witness: Option<(String, String)> = None;
    let mut max_tau = 0;
    let mut certified = 0;
    let mut violations = Vec::new();
    for ((x, y), (v, t)) in pairs.iter().zip(&results) {
        max_tau = max_tau.max(t.abs());
        let key = (x.to_string(), y.to_string());
        if t.abs() > bound {
            violations.push((key.0.clone(), key.1.clone(), format!("tau = {t}")));
        }
        let Some(v) = v.as_ref().filter(|v| v.mode.is_certified()) else {
            continue;
        };
        certified += 1;
        let a = v.value.abs();
        if a > Q::from_integer(bound.into()) {
            violations.push((
                key.0.clone(),
                key.1.clone(),
                format!("delta barphi = {}", v.value),
            ));
        }
        let better = match &witness {
            None => true,
            Some(w) => a > max_abs || (a == max_abs && key < *w),
        };
        if better {
            max_abs = a;
            witness = Some(key);
        }
    }
    Ok(DefectReport {
        context: ctx.to_string(),
        samples: pairs.len(),
        certified_samples: certified,
        max_abs_barphi: max_abs,
        witness,
        max_abs_tau: max_tau,
        upper_bound: bound,
        violations,
    })
}

/// Catalogued witnesses plus seeded random pairs.
pub fn defect_search_sampled(qm: &Quasimorphism, cfg: &SamplerConfig) -> Result<DefectReport> {
    let mut pairs = witness_pairs(qm.context())?;
    pairs.extend(random_pairs(qm.context().group(), cfg));
    defect_search(qm, &pairs)
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryWitnessReport {
    pub g: u32,
    pub value: QmValue,
    /// δφ̄(c_{2i}², d_i^+ d_i^−) for i = 1..g; each is −2.
    #[serde(serialize_with = "ser_qs")]
    pub summands: Vec<Q>,
    /// lim avg τ(c_{2i}^{2k}, c_{2i}²); each is 1.
    #[serde(serialize_with = "ser_qs")]
    pub square_limits: Vec<Q>,
    /// Limit terms of c_{2i}² d_i^+ d_i^−; each is 0.
    #[serde(serialize_with = "ser_qs")]
    pub product_limits: Vec<Q>,
}

impl BoundaryWitnessReport {
    pub fn holds(&self) -> bool {
        let two = Q::from_integer(2.into());
        self.value.value == -Q::from_integer((2 * self.g as i64).into())
            && self.value.mode.is_certified()
            && self.summands.iter().all(|s| *s == -two.clone())
            && self
                .square_limits
                .iter()
                .all(|s| *s == Q::from_integer(1.into()))
            && self.product_limits.iter().all(Q::is_zero)
    }
}

/// δφ̄_g(c_2² ⋯ c_{2g}², d_1^+ d_1^− ⋯ d_g^+ d_g^−) and its per-index parts.
pub fn boundary_witness_report(g: u32) -> Result<BoundaryWitnessReport> {
    let ctx = Context::Meyer { g };
    let qm = Quasimorphism::new(ctx)?;
    let (x, y) = boundary_witness_pair(g)?;
    let value = qm.coboundary_barphi(&x, &y)?;
    let group = ctx.group();
    let mut summands = Vec::new();
    let mut square_limits = Vec::new();
    let mut product_limits = Vec::new();
    for i in 1..=g {
        let xi = MappingClassWord::new(group, vec![Letter::new(Generator::Curve(2 * i), 2)])?;
        let yi = MappingClassWord::new(
            group,
            vec![
                Letter::new(Generator::DPlus(i), 1),
                Letter::new(Generator::DMinus(i), 1),
            ],
        )?;
        summands.push(qm.coboundary_barphi(&xi, &yi)?.value);
        let (a, ai) = qm.image_pair(&xi)?;
        square_limits.push(qm.limit_term(&a, &ai)?.value);
        let (b, bi) = qm.image_pair(&xi.concat(&yi)?)?;
        product_limits.push(qm.limit_term(&b, &bi)?.value);
    }
    Ok(BoundaryWitnessReport {
        g,
        value,
        summands,
        square_limits,
        product_limits,
    })
}

/// Lower and upper bounds on scl of one element.
#[derive(Clone, Debug, Serialize)]
pub struct SclBound {
    pub element: String,
    pub quasimorphisms: Vec<String>,
    #[serde(serialize_with = "ser_opt_q")]
    pub lower: Option<Q>,
    #[serde(serialize_with = "ser_opt_q")]
    pub upper: Option<Q>,
}

/// Bavard: scl(x) ≥ |φ̄(x)| / 2D(φ̄) for each certified value with its
/// defect upper bound D.
pub fn bavard_bound(element: &str, values: &[(QmValue, i64)]) -> SclBound {
    let lower = values
        .iter()
        .filter(|(v, d)| v.mode.is_certified() && *d > 0)
        .map(|(v, d)| v.value.abs() / Q::from_integer((2 * d).into()))
        .max();
    SclBound {
        element: element.to_string(),
        quasimorphisms: values.iter().map(|(v, _)| v.context.to_string()).collect(),
        lower,
        upper: None,
    }
}

/// scl of t_{s_1} in 𝓜₂ = 𝓗₂ from φ̄_{6,2} on its image (σ₂σ₁)⁶, D ≤ 4.
pub fn twist_scl_lower() -> Result<(QmValue, SclBound)> {
    let h2 = Group::Hyperelliptic { g: 2 };
    let x = to_sphere(&MappingClassWord::parse(h2, "sep1")?, 6)?;
    let ctx = Context::omega(6, 2);
    let v = Quasimorphism::new(ctx)?.homogenize(&x)?;
    let b = bavard_bound("t_s1 in M_2", &[(v.clone(), ctx.defect_upper_bound())]);
    Ok((v, b))
}

/// scl of the `cor` element of 𝓗_g from φ̄_g (= φ̄_{2g+2, g+1}) with D = 2g.
/// The sphere value through (2g+2, 2g+2, g+1) is returned as a cross-check.
pub fn cor_scl_lower(g: u32) -> Result<(QmValue, QmValue, SclBound)> {
    let group = Group::Hyperelliptic { g };
    let w = MappingClassWord::parse(group, "cor")?;
    let ctx = Context::Meyer { g };
    let v = Quasimorphism::new(ctx)?.homogenize(&w)?;
    let m = 2 * g + 2;
    let sphere = Quasimorphism::new(Context::omega(m, g + 1))?.homogenize(&to_sphere(&w, m)?)?;
    let b = bavard_bound(
        &format!("cor element in H_{g}"),
        &[(v.clone(), ctx.defect_upper_bound())],
    );
    Ok((v, sphere, b))
}

/// 1 / (2(2g + 3 + 1/g)).
pub fn scl_upper_hyperelliptic(g: u32) -> Q {
    let g = g as i64;
    q(g, 2 * (2 * g * g + 3 * g + 1))
}

/// 1 / (2(m + 1 + 2/(m − 2))).
pub fn scl_upper_sphere(m: u32) -> Q {
    let m = m as i64;
    q(m - 2, 2 * ((m + 1) * (m - 2) + 2))
}

#[derive(Clone, Debug, Serialize)]
pub struct SclUpperReport {
    pub g: u32,
    /// Named word identities with their verdicts.
    pub identities: Vec<(String, bool)>,
    /// δφ̄_g(c_{2g+1}² c_{2g−1}⋯c_3 c_1², c_{2g}⋯c_2) = (2g+3+1/g) φ̄_g(c_1).
    pub coboundary: QmValue,
    #[serde(serialize_with = "ser_q")]
    pub expected: Q,
    pub bound: SclBound,
}

impl SclUpperReport {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(|(_, ok)| *ok)
            && self.coboundary.value == self.expected
            && self.coboundary.mode.is_certified()
    }
}

/// Checks the word identities behind the upper bound scl(c_1) ≤ 1/(2(2g+3+1/g))
/// and the coboundary they force, and pairs the bound with the φ̄_g lower bound.
pub fn scl_upper_identity_check(g: u32) -> Result<SclUpperReport> {
    let ctx = Context::Meyer { g };
    let group = ctx.group();
    let qm = Quasimorphism::new(ctx)?;
    let c = |i: u32, e: i64| Letter::new(Generator::Curve(i), e);
    let word = |ls: Vec<Letter>| MappingClassWord::new(group, ls);
    // chain = c_{2g} c_{2g−1} ⋯ c_2, evens = c_{2g} c_{2g−2} ⋯ c_2
    let chain = word((2..=2 * g).rev().map(|k| c(k, 1)).collect())?;
    let evens = word((1..=g).rev().map(|i| c(2 * i, 1)).collect())?;
    // c_{2g+1}^2 c_{2g} c_{2g−1} ⋯ c_2 c_1^2
    let mut long = vec![c(2 * g + 1, 2)];
    long.extend((2..=2 * g).rev().map(|k| c(k, 1)));
    long.push(c(1, 2));
    let long = word(long)?;
    let mut x = vec![c(2 * g + 1, 2)];
    x.extend((2..g + 1).rev().map(|i| c(2 * i - 1, 1)));
    x.push(c(1, 2));
    let x = word(x)?;
    let top = word(vec![c(2 * g + 2, 1)])?;
    let t1 = word(vec![c(1, 1)])?;

    let sp = |w: &MappingClassWord| word_to_sp(w);
    let mut identities = Vec::new();
    // Conjugating ι by c_{2g+1} gives long · c_2 ⋯ c_{2g} = ι, so long agrees
    // with chain^{-1} only up to the central ι and reversal of the chain
    // (a conjugation); neither changes a homogeneous quasimorphism.
    let iota = MappingClassWord::new(group, macro_word(group, Macro::Iota)?)?;
    let reversed = word((2..=2 * g).map(|k| c(k, 1)).collect())?;
    identities.push((
        "c_{2g+1}^2 c_{2g} ... c_2 c_1^2 c_2 ... c_{2g} = iota on homology".to_string(),
        sp(&long.concat(&reversed)?)? == sp(&iota)?,
    ));
    identities.push((
        "(c_{2g} ... c_2)^{2g} = c_{2g+2}^2 on homology".to_string(),
        sp(&chain.pow(2 * g as i64))? == sp(&top.pow(2))?,
    ));
    let bar_top = qm.homogenize(&top)?;
    let bar_xy = qm.homogenize(&x.concat(&evens)?)?;
    let bar_long = qm.homogenize(&long)?;
    let target = -bar_top.value.clone() / Q::from_integer((g as i64).into());
    identities.push((
        "barphi(x y) = barphi(c_{2g+1}^2 c_{2g} ... c_2 c_1^2) = -barphi(c_{2g+2})/g".to_string(),
        bar_xy.value == target && bar_long.value == target,
    ));
    let coboundary = qm.coboundary_barphi(&x, &evens)?;
    let bar_t1 = qm.homogenize(&t1)?;
    let gi = g as i64;
    let expected = q(2 * gi * gi + 3 * gi + 1, gi) * bar_t1.value.clone();
    let mut bound = bavard_bound("c_1", &[(bar_t1, ctx.defect_upper_bound())]);
    bound.upper = Some(scl_upper_hyperelliptic(g));
    Ok(SclUpperReport {
        g,
        identities,
        coboundary,
        expected,
        bound,
    })
}

/// A basis P with P^T E P = J for a nondegenerate skew form E, by
/// symplectic Gram–Schmidt over ℚ.
pub fn symplectic_frame(e: &ExactMatrix) -> Result<ExactMatrix> {
    let n = e.rows();
    if !n.is_multiple_of(2) || !e.is_square() {
        return Err(Error::Dimension("skew form of odd size".into()));
    }
    let form = |u: &[crate::Cyc], v: &[crate::Cyc]| -> crate::Cyc {
        let ev = e.mul_vec(v);
        u.iter()
            .zip(&ev)
            .fold(crate::Cyc::zero(e.level()), |acc, (a, b)| &acc + &(a * b))
    };
    let mut rest: Vec<Vec<crate::Cyc>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| crate::Cyc::from_int(e.level(), i64::from(i == j)))
                .collect()
        })
        .collect();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    while let Some(x) = rest.pop() {
        let Some(pos) = rest.iter().position(|y| !form(&x, y).is_zero()) else {
            return Err(Error::Singular);
        };
        let y0 = rest.remove(pos);
        let s = form(&x, &y0).inv()?;
        let y: Vec<crate::Cyc> = y0.iter().map(|t| t * &s).collect();
        rest = rest
            .into_iter()
            .map(|z| {
                let zy = form(&z, &y);
                let zx = form(&z, &x);
                z.iter()
                    .zip(x.iter().zip(&y))
                    .map(|(zi, (xi, yi))| &(zi - &(&zy * xi)) + &(&zx * yi))
                    .collect()
            })
            .collect();
        xs.push(x);
        ys.push(y);
    }
    xs.extend(ys);
    ExactMatrix::from_columns(&xs)
}

#[derive(Clone, Debug, Serialize)]
pub struct BridgeReport {
    pub m: u32,
    pub pairs: usize,
    /// Hermitian τ at (m, 2, 1) equals Meyer's τ on the transported cover action.
    pub agree_cover: usize,
    /// Hermitian τ equals Meyer's τ on the chain-twist images c_i ↦ σ_i.
    pub agree_curves: usize,
    pub mismatches: Vec<(String, String, i64, i64, i64)>,
}

impl BridgeReport {
    pub fn all_agree(&self) -> bool {
        self.agree_cover == self.pairs && self.agree_curves == self.pairs
    }
}

/// Three evaluations of τ for the d = 2 cover of the (2g+2)-pointed sphere.
pub fn meyer_bridge(
    m: u32,
    pairs: &[(MappingClassWord, MappingClassWord)],
) -> Result<BridgeReport> {
    if !m.is_multiple_of(2) || m < 4 {
        return Err(Error::InvalidInput(format!(
            "the d = 2 bridge needs even m ≥ 4, got {m}"
        )));
    }
    let g = (m - 2) / 2;
    let rep = eigenspace_rep(m, 2, 1)?;
    let e = intersection_form(m, 2)?;
    let p = symplectic_frame(&e)?;
    debug_assert_eq!(p.transpose() * e.clone() * p.clone(), symplectic_form(g));
    let pinv = p.inverse()?;
    let acts: Vec<ExactMatrix> = (1..m)
        .map(|i| halftwist_action(m, 2, i).map(|a| &(&pinv * &a) * &p))
        .collect::<Result<_>>()?;
    let acts_inv: Vec<ExactMatrix> = acts
        .iter()
        .map(ExactMatrix::inverse)
        .collect::<Result<_>>()?;
    let cover_sp = |w: &MappingClassWord| -> ExactMatrix {
        let mut acc = ExactMatrix::identity(2 * g as usize, 1);
        for (gen, s) in w.unit_letters() {
            let Generator::Sigma(i) = gen else {
                unreachable!()
            };
            let mat = if s > 0 {
                &acts[i as usize - 1]
            } else {
                &acts_inv[i as usize - 1]
            };
            acc = &acc * mat;
        }
        acc
    };
    let to_curves = |w: &MappingClassWord| -> Result<MappingClassWord> {
        let letters = w
            .letters()
            .iter()
            .map(|l| match l.gen {
                Generator::Sigma(i) => Letter::new(Generator::Curve(i), l.exp),
                _ => unreachable!(),
            })
            .collect();
        MappingClassWord::new(Group::Hyperelliptic { g }, letters)
    };
    let rows: Vec<(i64, i64, i64)> = pairs
        .par_iter()
        .map(|(x, y)| {
            let h = hermitian_tau(&rep, &rep.image(x)?, &rep.image(y)?)?;
            let c = meyer_tau(&cover_sp(x), &cover_sp(y))?;
            let r = meyer_tau(&word_to_sp(&to_curves(x)?)?, &word_to_sp(&to_curves(y)?)?)?;
            Ok((h, c, r))
        })
        .collect::<Result<_>>()?;
    let mut report = BridgeReport {
        m,
        pairs: pairs.len(),
        agree_cover: 0,
        agree_curves: 0,
        mismatches: Vec::new(),
    };
    for ((x, y), &(h, c, r)) in pairs.iter().zip(&rows) {
        report.agree_cover += usize::from(h == c);
        report.agree_curves += usize::from(h == r);
        if h != c || h != r {
            report
                .mismatches
                .push((x.to_string(), y.to_string(), h, c, r));
        }
    }
    Ok(report)
}

/// meyer_tau(A^k, A) against the Barge–Ghys matrix for k = 1..=k_max on
/// images of random words in 𝓗_g. Returns (checks, mismatching (word, k)).
pub fn barge_ghys_crosscheck(
    g: u32,
    samples: usize,
    k_max: u32,
    seed: u64,
) -> Result<(usize, Vec<(String, u32)>)> {
    let group = Group::Hyperelliptic { g };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<MappingClassWord> = (0..samples)
        .map(|_| random_word(group, &mut rng, 6))
        .collect();
    let j = symplectic_form(g);
    let rows: Vec<Vec<(String, u32)>> = words
        .par_iter()
        .map(|w| {
            let a = word_to_sp(w)?;
            let mut p = a.clone();
            let mut bad = Vec::new();
            for k in 1..=k_max {
                if meyer_tau(&p, &a)? != tau_power_bg(&j, &a, k)? {
                    bad.push((w.to_string(), k));
                }
                p = &p * &a;
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok((
        samples * k_max as usize,
        rows.into_iter().flatten().collect(),
    ))
}

/// Nonzero certified values of φ̄_{m,1} on seeded random words.
#[derive(Clone, Debug, Serialize)]
pub struct TrivialitySearch {
    pub m: u32,
    pub samples: usize,
    pub certified: usize,
    /// (word, φ̄_{m,1}(word)) for every certified nonzero value.
    pub nonzero: Vec<(String, String)>,
}

/// Looks for a word on which φ̄_{m,1} is certifiably nonzero. Whether
/// φ̄_{m,1} vanishes identically is not known; an empty result is evidence,
/// not proof.
pub fn barphi_m1_search(m: u32, cfg: &SamplerConfig) -> Result<TrivialitySearch> {
    let qm = Quasimorphism::new(Context::omega(m, 1))?;
    let group = qm.context().group();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let words: Vec<MappingClassWord> = (0..cfg.samples)
        .map(|_| random_word(group, &mut rng, cfg.max_len))
        .collect();
    let values: Vec<Option<QmValue>> = words
        .par_iter()
        .map(|w| {
            if !qm.homogenizable(w)? {
                return Ok(None);
            }
            Ok(Some(qm.homogenize(w)?).filter(|v| v.mode.is_certified()))
        })
        .collect::<Result<_>>()?;
    let certified = values.iter().flatten().count();
    let nonzero = words
        .iter()
        .zip(&values)
        .filter_map(|(w, v)| {
            v.as_ref()
                .filter(|v| !v.value.is_zero())
                .map(|v| (w.to_string(), v.value.to_string()))
        })
        .collect();
    Ok(TrivialitySearch {
        m,
        samples: cfg.samples,
        certified,
        nonzero,
    })
}

/// Mode of the least certain value in a list.
pub fn combined_mode(values: &[QmValue]) -> Mode {
    values.iter().fold(Mode::Exact, |m, v| m.worst(v.mode))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_witness_small_genus() {
        for g in 1..=2 {
            let r = boundary_witness_report(g).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn bavard_examples() {
        let (v, b) = twist_scl_lower().unwrap();
        assert_eq!(v.value, q(-8, 5));
        assert_eq!(b.lower, Some(q(1, 5)));
        let (v, s, b) = cor_scl_lower(2).unwrap();
        assert_eq!(v.value, q(-4, 1));
        assert_eq!(s.value, v.value);
        assert_eq!(b.lower, Some(q(1, 2)));
    }

    #[test]
    fn upper_bound_identities() {
        assert_eq!(scl_upper_hyperelliptic(1), q(1, 12));
        assert_eq!(scl_upper_hyperelliptic(2), q(1, 15));
        assert_eq!(scl_upper_sphere(4), scl_upper_hyperelliptic(1));
        assert_eq!(scl_upper_sphere(6), scl_upper_hyperelliptic(2));
        for g in 1..=3 {
            let r = scl_upper_identity_check(g).unwrap();
            assert!(r.holds(), "{r:?}");
            assert_eq!(r.coboundary.value, q(-(g as i64) - 1, 1));
        }
        let r = scl_upper_identity_check(1).unwrap();
        assert_eq!(r.bound.lower, r.bound.upper);
    }

    #[test]
    fn bridge_small() {
        let group = Group::Sphere { m: 6, d: 2 };
        let pairs = random_pairs(
            group,
            &SamplerConfig {
                samples: 30,
                max_len: 6,
                seed: 7,
            },
        );
        let r = meyer_bridge(6, &pairs).unwrap();
        assert!(r.all_agree(), "{:?}", r.mismatches);
    }

    #[test]
    fn defect_search_respects_bound() {
        let qm = Quasimorphism::new(Context::omega(6, 3)).unwrap();
        let r = defect_search_sampled(
            &qm,
            &SamplerConfig {
                samples: 20,
                max_len: 5,
                seed: 1,
            },
        )
        .unwrap();
        assert!(!r.falsified());
        assert_eq!(r.max_abs_barphi, q(4, 1));
    }

    #[test]
    fn barphi_m1_search_finds_nothing_on_small_sample() {
        let r = barphi_m1_search(
            6,
            &SamplerConfig {
                samples: 30,
                max_len: 6,
                seed: 3,
            },
        )
        .unwrap();
        assert_eq!(r.certified, 30);
        assert!(r.nonzero.is_empty());
    }
}
