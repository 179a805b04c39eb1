//! Randomized invariants of the exact pipeline. The seeded 10³-case versions
//! of the cocycle and quasimorphism suites live in the `properties` target;
//! these run fewer cases but shrink counterexamples.

use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omega_scl::cocycle::{meyer_tau, tau_power_bg};
use omega_scl::cover::{eigenspace_rep, intersection_form};
use omega_scl::defect::{meyer_bridge, random_word};
use omega_scl::linalg::{signature_hermitian, ExactMatrix};
use omega_scl::quasimorphism::{Context, Quasimorphism, Q};
use omega_scl::report::{property_contexts, run_target, to_json, RunOptions};
use omega_scl::symplectic::{
    curve_class, is_symplectic, symplectic_form, transvection, word_to_sp,
};
use omega_scl::words::{macro_word, relation_catalog, Generator, Group, Macro, MappingClassWord};
use omega_scl::Cyc;

const WORD_LEN: usize = 6;

/// φ_g for g ≤ 3 and φ_{m,j} for m ≤ 8; built once, shared by all tests.
fn qms() -> &'static [Quasimorphism] {
    static QMS: OnceLock<Vec<Quasimorphism>> = OnceLock::new();
    QMS.get_or_init(|| {
        property_contexts(8)
            .into_iter()
            .map(|c| Quasimorphism::new(c).unwrap())
            .collect()
    })
}

fn words(group: Group, seed: u64, n: usize) -> Vec<MappingClassWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| random_word(group, &mut rng, WORD_LEN))
        .collect()
}

/// An index into `qms()` and a word seed.
fn case() -> impl Strategy<Value = (usize, u64)> {
    (0..property_contexts(8).len(), any::<u64>())
}

fn cyc(level: u32, coeffs: &[i64]) -> Cyc {
    coeffs
        .iter()
        .enumerate()
        .fold(Cyc::zero(level), |acc, (k, &c)| {
            acc + Cyc::root_of_unity(level, k as i64).mul_int(c)
        })
}

fn cyc_strategy() -> impl Strategy<Value = Cyc> {
    (
        prop::sample::select(vec![1u32, 3, 4, 5, 7, 8, 12]),
        prop::collection::vec(-5i64..=5, 1..6),
    )
        .prop_map(|(level, c)| cyc(level, &c))
}

/// A hermitian n×n matrix over ℚ(ω_level) with small entries.
fn hermitian(level: u32, n: usize, coeffs: &[i64]) -> ExactMatrix {
    let mut it = coeffs.chunks(3).cycle();
    let mut h = ExactMatrix::zeros(n, n, level);
    for i in 0..n {
        h.set(i, i, Cyc::from_int(level, it.next().unwrap()[0]));
        for j in i + 1..n {
            let v = cyc(level, it.next().unwrap());
            h.set(j, i, v.conj());
            h.set(i, j, v);
        }
    }
    h
}

fn hermitian_strategy() -> impl Strategy<Value = ExactMatrix> {
    (
        prop::sample::select(vec![1u32, 3, 4, 5, 8]),
        1usize..=5,
        prop::collection::vec(-3i64..=3, 45),
    )
        .prop_map(|(level, n, c)| hermitian(level, n, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_nonnegative_and_zero_only_at_zero(x in cyc_strategy()) {
        let s = (&x * &x.conj()).real_sign().unwrap();
        prop_assert!(s == 0 || s == 1);
        prop_assert_eq!(s == 0, x.is_zero());
    }

    #[test]
    fn lifting_preserves_value(x in cyc_strategy(), k in 1u32..=4) {
        let up = x.lift(x.level() * k).unwrap();
        prop_assert_eq!(up.level(), x.level() * k);
        prop_assert_eq!(&up, &x);
        prop_assert_eq!(up.lift(x.level() * k).unwrap(), up);
    }

    #[test]
    fn real_interval_brackets_float_value(x in cyc_strategy(), prec in 8u32..=96) {
        let (lo, hi) = x.real_interval(prec);
        prop_assert!(lo <= hi);
        let re = x.to_complex().0;
        let slack = BigRational::from_float(1e-9 * (1.0 + re.abs())).unwrap();
        let re = BigRational::from_float(re).unwrap();
        prop_assert!(lo - &slack <= re && re <= hi + slack);
    }

    #[test]
    fn hermitian_signature_is_congruence_invariant(h in hermitian_strategy(), p in prop::collection::vec(-2i64..=2, 75)) {
        let n = h.rows();
        let lv = h.level();
        let mut it = p.chunks(3);
        let pm = ExactMatrix::from_fn(n, n, |_, _| cyc(lv, it.next().unwrap()));
        prop_assume!(!pm.det().unwrap().is_zero());
        let moved = &(&pm.conj_transpose() * &h) * &pm;
        prop_assert_eq!(signature_hermitian(&moved).unwrap(), signature_hermitian(&h).unwrap());
    }

    #[test]
    fn inertia_counts_rank_and_kernel(h in hermitian_strategy()) {
        let s = signature_hermitian(&h).unwrap();
        prop_assert_eq!(s.dim(), h.rows());
        prop_assert_eq!(s.pos + s.neg, h.rank());
        prop_assert_eq!(s.null, h.kernel_basis().cols());
    }

    #[test]
    fn inertia_matches_numerical_eigenvalues(h in hermitian_strategy()) {
        let ev = h.approx_eigenvalues().unwrap();
        prop_assume!(ev.iter().all(|z| z.re.abs() > 1e-6));
        let s = signature_hermitian(&h).unwrap();
        prop_assert_eq!(ev.iter().filter(|z| z.re > 0.0).count(), s.pos);
        prop_assert_eq!(ev.iter().filter(|z| z.re < 0.0).count(), s.neg);
    }

    #[test]
    fn cyclotomic_numbers_round_trip_through_json(x in cyc_strategy()) {
        let back: Cyc = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_reduce_print_and_parse_back((i, seed) in case()) {
        let group = qms()[i].context().group();
        for w in words(group, seed, 4) {
            let again = MappingClassWord::new(group, w.letters().to_vec()).unwrap();
            prop_assert_eq!(&again, &w);
            prop_assert_eq!(MappingClassWord::parse(group, &w.to_string()).unwrap(), w.clone());
            let json: MappingClassWord = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
            prop_assert_eq!(json, w.clone());
            prop_assert!(w.concat(&w.inverse()).unwrap().is_empty());
        }
    }

    #[test]
    fn symplectic_images_preserve_j(g in 1u32..=3, seed in any::<u64>()) {
        let group = Group::Hyperelliptic { g };
        let j = symplectic_form(g);
        for w in words(group, seed, 3) {
            let m = word_to_sp(&w).unwrap();
            prop_assert!(is_symplectic(&m));
            prop_assert_eq!(&(&m.transpose() * &j) * &m, j.clone());
        }
    }

    #[test]
    fn transvections_invert_and_conjugate(g in 1u32..=3, i in 1u32..=7, k in -3i64..=3, seed in any::<u64>()) {
        let i = 1 + (i - 1) % (2 * g + 1);
        let group = Group::Hyperelliptic { g };
        let c = curve_class(g, Generator::Curve(i)).unwrap();
        let n = 2 * g as usize;
        prop_assert_eq!(&transvection(&c, k) * &transvection(&c, -k), ExactMatrix::identity(n, 1));
        let f = words(group, seed, 1).remove(0);
        let t = MappingClassWord::from_gens(group, &[Generator::Curve(i)]).unwrap();
        let fm = word_to_sp(&f).unwrap();
        let expect = &(&fm * &transvection(&c, 1)) * &fm.inverse().unwrap();
        prop_assert_eq!(word_to_sp(&t.conjugate_by(&f).unwrap()).unwrap(), expect);
    }

    #[test]
    fn cover_images_preserve_the_gram((i, seed) in case()) {
        let qm = &qms()[i];
        let Some(rep) = qm.cover_rep() else { return Ok(()) };
        for w in words(rep.group(), seed, 3) {
            prop_assert!(rep.preserves_form(&rep.image(&w).unwrap()));
        }
    }

    /// The conjugated sphere-lift word acts on the j-eigenspace by the scalar ω^j.
    #[test]
    fn sphere_lift_acts_by_omega_j((i, seed) in case()) {
        let qm = &qms()[i];
        let Some(rep) = qm.cover_rep() else { return Ok(()) };
        let group = rep.group();
        let deck = MappingClassWord::new(group, macro_word(group, Macro::Deck).unwrap()).unwrap();
        let u = words(group, seed, 1).remove(0);
        let expect = ExactMatrix::identity(rep.dim(), rep.level()).scale(rep.lambda());
        prop_assert_eq!(rep.image(&deck.conjugate_by(&u).unwrap()).unwrap(), expect);
    }

    #[test]
    fn cocycle_identity((i, seed) in case()) {
        let qm = &qms()[i];
        let [x, y, z]: [MappingClassWord; 3] = words(qm.context().group(), seed, 3).try_into().unwrap();
        let lhs = qm.tau(&x, &y).unwrap() + qm.tau(&x.concat(&y).unwrap(), &z).unwrap();
        let rhs = qm.tau(&x, &y.concat(&z).unwrap()).unwrap() + qm.tau(&y, &z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tau_is_conjugation_invariant((i, seed) in case()) {
        let qm = &qms()[i];
        let [x, y, z]: [MappingClassWord; 3] = words(qm.context().group(), seed, 3).try_into().unwrap();
        let moved = qm.tau(&y.conjugate_by(&x).unwrap(), &z.conjugate_by(&x).unwrap()).unwrap();
        prop_assert_eq!(moved, qm.tau(&y, &z).unwrap());
    }

    #[test]
    fn tau_vanishes_on_inverse_pairs_and_is_bounded((i, seed) in case()) {
        let qm = &qms()[i];
        let [x, y]: [MappingClassWord; 2] = words(qm.context().group(), seed, 2).try_into().unwrap();
        prop_assert_eq!(qm.tau(&x, &x.inverse()).unwrap(), 0);
        prop_assert!(qm.tau(&x, &y).unwrap().abs() <= qm.context().defect_upper_bound());
    }

    #[test]
    fn coboundary_of_phi_is_tau((i, seed) in case()) {
        let qm = &qms()[i];
        let [x, y]: [MappingClassWord; 2] = words(qm.context().group(), seed, 2).try_into().unwrap();
        prop_assert_eq!(qm.coboundary_phi(&x, &y).unwrap(), Q::from_integer(qm.tau(&x, &y).unwrap().into()));
    }

    #[test]
    fn phi_is_conjugation_invariant_and_odd((i, seed) in case()) {
        let qm = &qms()[i];
        let [x, y]: [MappingClassWord; 2] = words(qm.context().group(), seed, 2).try_into().unwrap();
        prop_assert_eq!(qm.phi(&y.conjugate_by(&x).unwrap()).unwrap(), qm.phi(&y).unwrap());
        prop_assert_eq!(qm.phi(&x.inverse()).unwrap(), -qm.phi(&x).unwrap());
    }

    /// φ((ab)³x) − φ(xba³b²) = δφ([b,a], (ab)³x) + δφ([a,b], babxba²).
    #[test]
    fn commutator_identity((i, seed) in case()) {
        let qm = &qms()[i];
        let [a, b, x]: [MappingClassWord; 3] = words(qm.context().group(), seed, 3).try_into().unwrap();
        let cat = |parts: &[&MappingClassWord]| {
            parts.iter().fold(MappingClassWord::identity(a.group()), |acc, p| acc.concat(p).unwrap())
        };
        let ab3x = cat(&[&a, &b, &a, &b, &a, &b, &x]);
        let xba3b2 = cat(&[&x, &b, &a, &a, &a, &b, &b]);
        let babxba2 = cat(&[&b, &a, &b, &x, &b, &a, &a]);
        let lhs = qm.phi(&ab3x).unwrap() - qm.phi(&xba3b2).unwrap();
        let rhs = qm.coboundary_phi(&MappingClassWord::commutator(&b, &a).unwrap(), &ab3x).unwrap()
            + qm.coboundary_phi(&MappingClassWord::commutator(&a, &b).unwrap(), &babxba2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_respects_relations((i, seed) in case()) {
        let qm = &qms()[i];
        let group = qm.context().group();
        let [u, v]: [MappingClassWord; 2] = words(group, seed, 2).try_into().unwrap();
        for rel in relation_catalog(group).unwrap() {
            let lhs = qm.phi(&u.concat(&rel.lhs).unwrap().concat(&v).unwrap()).unwrap();
            let rhs = qm.phi(&u.concat(&rel.rhs).unwrap().concat(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", rel.name);
        }
    }

    /// φ_{m,j} = φ_{m,m−j}: the two eigenspaces are complex conjugate.
    #[test]
    fn phi_is_symmetric_in_j(m in 4u32..=8, j in 1u32..=7, seed in any::<u64>()) {
        let j = 1 + (j - 1) % (m - 1);
        let a = &qms()[index_of(Context::omega(m, j))];
        let b = &qms()[index_of(Context::omega(m, m - j))];
        for w in words(a.context().group(), seed, 2) {
            prop_assert_eq!(a.phi(&w).unwrap(), b.phi(&w).unwrap());
        }
    }

    #[test]
    fn barge_ghys_power_signatures(g in 1u32..=3, seed in any::<u64>(), k in 1u32..=20) {
        let a = word_to_sp(&words(Group::Hyperelliptic { g }, seed, 1)[0]).unwrap();
        prop_assert_eq!(meyer_tau(&a.pow(k as i64).unwrap(), &a).unwrap(), tau_power_bg(&symplectic_form(g), &a, k).unwrap());
    }

    #[test]
    fn hermitian_tau_at_d2_is_meyer_tau(half in 2u32..=5, seed in any::<u64>()) {
        let m = 2 * half;
        let group = Group::Sphere { m, d: 2 };
        let [x, y]: [MappingClassWord; 2] = words(group, seed, 2).try_into().unwrap();
        let r = meyer_bridge(m, &[(x, y)]).unwrap();
        prop_assert!(r.all_agree(), "{:?}", r.mismatches);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn homogenization_is_homogeneous((i, seed) in case(), n in 2i64..=3) {
        let qm = &qms()[i];
        let w = words(qm.context().group(), seed, 1).remove(0);
        let one = qm.homogenize(&w).unwrap();
        let many = qm.homogenize(&w.pow(n)).unwrap();
        prop_assume!(one.mode.is_certified() && many.mode.is_certified());
        prop_assert_eq!(many.value, one.value * Q::from_integer(n.into()));
    }

    #[test]
    fn homogenized_coboundary_is_bounded((i, seed) in case()) {
        let qm = &qms()[i];
        let [x, y]: [MappingClassWord; 2] = words(qm.context().group(), seed, 2).try_into().unwrap();
        prop_assume!(qm.homogenizable(&x).unwrap() && qm.homogenizable(&y).unwrap());
        prop_assume!(qm.homogenizable(&x.concat(&y).unwrap()).unwrap());
        let d = qm.coboundary_barphi(&x, &y).unwrap();
        prop_assume!(d.mode.is_certified());
        prop_assert!(d.value.abs() <= Q::from_integer(qm.context().defect_upper_bound().into()));
    }

    #[test]
    fn homogenized_coboundary_vanishes_on_commuting_powers((i, seed) in case(), p in -3i64..=3, q in -3i64..=3) {
        let qm = &qms()[i];
        let w = words(qm.context().group(), seed, 1).remove(0);
        prop_assume!(qm.homogenizable(&w).unwrap());
        let d = qm.coboundary_barphi(&w.pow(p), &w.pow(q)).unwrap();
        prop_assume!(d.mode.is_certified());
        prop_assert_eq!(d.value, Q::from_integer(0.into()));
    }
}

fn index_of(ctx: Context) -> usize {
    qms().iter().position(|q| q.context() == ctx).unwrap()
}

#[test]
fn intersection_forms_are_nondegenerate() {
    for m in 3..=8u32 {
        for d in (2..=m).filter(|d| m % d == 0) {
            let e = intersection_form(m, d).unwrap();
            assert_eq!(e.rank(), ((m - 2) * (d - 1)) as usize, "(m,d)=({m},{d})");
        }
    }
}

/// For d | m the (m, m, mj/d) eigenspace is the (m, d, j) one with the Gram
/// scaled by the positive ratio m/d.
#[test]
fn divisor_covers_match_full_cover() {
    for (m, d) in [(4, 2), (6, 2), (6, 3), (8, 2), (8, 4)] {
        for j in 1..d {
            let small = eigenspace_rep(m, d, j).unwrap();
            let full = eigenspace_rep(m, m, m * j / d).unwrap();
            let lv = small.level().max(full.level());
            for i in 1..m {
                assert_eq!(
                    small.generator(i).lift(lv).unwrap(),
                    full.generator(i).lift(lv).unwrap(),
                    "(m,d,j,i)=({m},{d},{j},{i})"
                );
            }
            let ratio = Cyc::from_frac(lv, m as i64, d as i64);
            assert_eq!(
                small.gram().lift(lv).unwrap().scale(&ratio),
                full.gram().lift(lv).unwrap(),
                "(m,d,j)=({m},{d},{j})"
            );
            let small_q = Quasimorphism::new(Context::Omega { m, d, j }).unwrap();
            let full_q = Quasimorphism::new(Context::Omega {
                m,
                d: m,
                j: m * j / d,
            })
            .unwrap();
            for w in words(Group::Sphere { m, d }, u64::from(m * 31 + d * 7 + j), 20) {
                let wf =
                    MappingClassWord::new(Group::Sphere { m, d: m }, w.letters().to_vec()).unwrap();
                assert_eq!(
                    small_q.tau(&w, &w.pow(2)).unwrap(),
                    full_q.tau(&wf, &wf.pow(2)).unwrap()
                );
            }
        }
    }
}

#[test]
fn reports_are_byte_identical_for_identical_seeds() {
    let opts = RunOptions {
        cases: 50,
        ..RunOptions::default()
    };
    let run = || {
        to_json(
            &[
                run_target("headline", &opts).unwrap(),
                run_target("independence", &opts).unwrap(),
            ],
            &opts,
        )
    };
    assert_eq!(run(), run());
}
