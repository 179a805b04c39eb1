//! The cobounding quasimorphisms φ with δφ = τ, i.e.
//! φ(xy) = φ(x) + φ(y) − τ(x, y), their homogenizations and the closed forms
//! for chain elements σ̃₁⋯σ̃_{r−1}.
//!
//! Generator values are bootstrapped from a torsion relation: a word R of
//! n positive letters whose image has order N gives
//! n·φ(letter) = φ(R) + Σ τ(prefix, next) with φ(R) = (1/N)Σ_{k<N} τ(R^k, R).

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cocycle::{v_dimension, CocycleEvaluator};
use crate::cover::{eigenspace_rep, CoverRep};
use crate::cyclofield::Cyc;
use crate::error::{Error, Result};
use crate::linalg::{signature_hermitian, ExactMatrix};
use crate::symplectic::{curve_class, symplectic_form, transvection};
use crate::words::{expand_boundary_pairs, macro_word, Generator, Group, Macro, MappingClassWord};

pub type Q = BigRational;

pub fn q(p: i64, r: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(r))
}

fn qi(p: i64) -> Q {
    Q::from_integer(BigInt::from(p))
}

/// Which quasimorphism is being evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Context {
    /// Meyer function φ_g on 𝓗_g.
    Meyer { g: u32 },
    /// φ_{m,d,j} on 𝓜₀^m through the d-fold cover; d = m is φ_{m,j}.
    Omega { m: u32, d: u32, j: u32 },
}

impl Context {
    pub fn omega(m: u32, j: u32) -> Self {
        Context::Omega { m, d: m, j }
    }

    pub fn group(&self) -> Group {
        match *self {
            Context::Meyer { g } => Group::Hyperelliptic { g },
            Context::Omega { m, d, .. } => Group::Sphere { m, d },
        }
    }

    /// The defect bound m−2 (with m = 2g+2 for the Meyer function).
    pub fn defect_upper_bound(&self) -> i64 {
        match *self {
            Context::Meyer { g } => 2 * g as i64,
            Context::Omega { m, .. } => m as i64 - 2,
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::Meyer { g } => write!(f, "meyer(g={g})"),
            Context::Omega { m, d, j } => write!(f, "omega(m={m},d={d},j={j})"),
        }
    }
}

/// How the limit term of a homogenization was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// The image has certified finite order (or is the identity).
    Exact,
    /// τ(x^k, x) was seen to repeat with period `period` from `k0` on.
    Period { k0: usize, period: usize },
    /// No pattern within the window; the value is the window average.
    Unconverged,
}

impl Mode {
    /// Least certain of two modes.
    pub fn worst(self, other: Mode) -> Mode {
        match (self, other) {
            (Mode::Unconverged, _) | (_, Mode::Unconverged) => Mode::Unconverged,
            (Mode::Period { .. }, _) => self,
            (_, Mode::Period { .. }) => other,
            _ => Mode::Exact,
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Mode::Unconverged)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Period { k0, period } => write!(f, "period({k0},{period})"),
            Mode::Unconverged => write!(f, "unconverged"),
        }
    }
}

/// A rational value together with its certification mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QmValue {
    pub value: Q,
    pub mode: Mode,
    pub context: Context,
}

impl Serialize for QmValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QmValue", 3)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("mode", &self.mode.to_string())?;
        st.serialize_field("context", &self.context.to_string())?;
        st.end()
    }
}

impl fmt::Display for QmValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.value, self.mode)
    }
}

/// Limit term lim_n (1/n) Σ_{k=1}^{n−1} τ(A^k, A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitTerm {
    pub value: Q,
    pub mode: Mode,
}

/// Spacing of the period checkpoints.
const CHECKPOINT: usize = 16;
const MAX_WINDOW: usize = 1 << 12;
/// Window after which an element with an irrational unit-circle
/// eigenvalue is reported as unconverged.
const IRRATIONAL_WINDOW: usize = 64;
const MAX_ROOT_DENOMINATOR: u64 = 4096;
/// Absolute tolerance on |z| − 1 and on arg z / 2π; loose enough for the
/// error of a defective eigenvalue.
const UNIT_TOLERANCE: f64 = 1e-3;

#[derive(Debug)]
enum Rep {
    Symplectic,
    Cover(CoverRep),
}

/// φ for one context, with its letter matrices and cocycle cache.
#[derive(Debug)]
pub struct Quasimorphism {
    context: Context,
    rep: Rep,
    letters: HashMap<Generator, (ExactMatrix, ExactMatrix)>,
    eval: CocycleEvaluator,
    dim: usize,
    level: u32,
    generator_value: Q,
}

impl Quasimorphism {
    pub fn new(context: Context) -> Result<Self> {
        context.group().validate()?;
        let (rep, letters, form, dim, level) = match context {
            Context::Meyer { g } => {
                let mut letters = HashMap::new();
                let mut gens: Vec<Generator> = (1..=2 * g + 2).map(Generator::Curve).collect();
                gens.extend((1..=g).flat_map(|i| [Generator::DPlus(i), Generator::DMinus(i)]));
                for gen in gens {
                    let c = curve_class(g, gen)?;
                    letters.insert(gen, (transvection(&c, 1), transvection(&c, -1)));
                }
                (
                    Rep::Symplectic,
                    letters,
                    symplectic_form(g),
                    2 * g as usize,
                    1,
                )
            }
            Context::Omega { m, d, j } => {
                let rep = eigenspace_rep(m, d, j)?;
                let letters = (1..m)
                    .map(|i| {
                        let pair = (rep.generator(i).clone(), rep.generator_inv(i).clone());
                        (Generator::Sigma(i), pair)
                    })
                    .collect();
                let form = rep.gram().clone();
                let (dim, level) = (rep.dim(), rep.level());
                (Rep::Cover(rep), letters, form, dim, level)
            }
        };
        let mut qm = Quasimorphism {
            context,
            rep,
            letters,
            eval: CocycleEvaluator::new(form),
            dim,
            level,
            generator_value: Q::zero(),
        };
        qm.generator_value = qm.bootstrap()?;
        Ok(qm)
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn evaluator(&self) -> &CocycleEvaluator {
        &self.eval
    }

    pub fn cover_rep(&self) -> Option<&CoverRep> {
        match &self.rep {
            Rep::Cover(r) => Some(r),
            Rep::Symplectic => None,
        }
    }

    /// φ of a single positive generator; all generators are conjugate.
    pub fn generator_value(&self) -> &Q {
        &self.generator_value
    }

    fn check_group(&self, w: &MappingClassWord) -> Result<()> {
        if w.group() != self.context.group() {
            return Err(Error::InvalidInput(format!(
                "word in {:?} evaluated in context {}",
                w.group(),
                self.context
            )));
        }
        Ok(())
    }

    fn letter(&self, gen: Generator, sign: i64) -> &ExactMatrix {
        let (a, ai) = &self.letters[&gen];
        if sign > 0 {
            a
        } else {
            ai
        }
    }

    pub fn identity(&self) -> ExactMatrix {
        ExactMatrix::identity(self.dim, self.level)
    }

    /// Image of a word and of its inverse.
    pub fn image_pair(&self, w: &MappingClassWord) -> Result<(ExactMatrix, ExactMatrix)> {
        self.check_group(w)?;
        let mut a = self.identity();
        let mut ai = self.identity();
        for (gen, e) in w.unit_letters() {
            a = &a * self.letter(gen, e);
            ai = self.letter(gen, -e) * &ai;
        }
        Ok((a, ai))
    }

    pub fn image(&self, w: &MappingClassWord) -> Result<ExactMatrix> {
        Ok(self.image_pair(w)?.0)
    }

    pub fn tau(&self, x: &MappingClassWord, y: &MappingClassWord) -> Result<i64> {
        let (a, ai) = self.image_pair(x)?;
        let b = self.image(y)?;
        self.eval.tau_with_inverse(&a, Some(&ai), &b)
    }

    /// dim V_{A,B} for the images of x and y.
    pub fn v_dimension(&self, x: &MappingClassWord, y: &MappingClassWord) -> Result<usize> {
        let ai = self.image_pair(x)?.1;
        v_dimension(&ai, &self.image(y)?)
    }

    /// Σ_k τ(g₁⋯g_k, g_{k+1}) over the unit letters.
    fn telescoping_correction(&self, units: &[(Generator, i64)]) -> Result<i64> {
        let mut p = self.identity();
        let mut pi = self.identity();
        let mut total = 0;
        for &(gen, e) in units {
            let x = self.letter(gen, e);
            total += self.eval.tau_with_inverse(&p, Some(&pi), x)?;
            p = &p * x;
            pi = self.letter(gen, -e) * &pi;
        }
        Ok(total)
    }

    /// φ(word) by telescoping; φ(letter^{−1}) = −φ(letter).
    pub fn phi(&self, w: &MappingClassWord) -> Result<Q> {
        self.check_group(w)?;
        let w = expand_boundary_pairs(w)?;
        let units = w.unit_letters();
        let exp_sum: i64 = units.iter().map(|&(_, e)| e).sum();
        let corr = self.telescoping_correction(&units)?;
        Ok(&self.generator_value * qi(exp_sum) - qi(corr))
    }

    /// φ(x) = (1/N) Σ_{k=1}^{N−1} τ(x^k, x) for an image of order dividing N.
    pub fn phi_torsion(&self, w: &MappingClassWord, n: usize) -> Result<Q> {
        let (a, ai) = self.image_pair(w)?;
        self.phi_torsion_matrix(&a, &ai, n)
    }

    fn phi_torsion_matrix(&self, a: &ExactMatrix, ai: &ExactMatrix, n: usize) -> Result<Q> {
        if n == 0 {
            return Err(Error::InvalidInput("order must be positive".into()));
        }
        let mut p = a.clone();
        let mut pi = ai.clone();
        let mut total = 0;
        for _ in 1..n {
            total += self.eval.tau_with_inverse(&p, Some(&pi), a)?;
            p = &p * a;
            pi = &pi * ai;
        }
        if !p.is_identity() {
            return Err(Error::Verification(format!(
                "image does not have order dividing {n}"
            )));
        }
        Ok(q(total, n as i64))
    }

    fn bootstrap(&self) -> Result<Q> {
        let group = self.context.group();
        let (mac, order) = match self.context {
            Context::Meyer { .. } => (Macro::Iota, 2),
            Context::Omega { d, .. } => (Macro::Deck, d as usize),
        };
        let r = MappingClassWord::new(group, macro_word(group, mac)?)?;
        let units = r.unit_letters();
        debug_assert!(units.iter().all(|&(_, e)| e == 1));
        let phi_r = self.phi_torsion(&r, order)?;
        let corr = self.telescoping_correction(&units)?;
        Ok((phi_r + qi(corr)) / qi(units.len() as i64))
    }

    /// lim_n (1/n) Σ_{k=1}^{n−1} τ(A^k, A), so that φ̄(x) = φ(x) − limit.
    ///
    /// The sequence τ(A^k, A) is eventually periodic with period dividing
    /// the lcm N of the orders of the unit-circle eigenvalues when all of
    /// them are roots of unity. Only such periods are accepted, and only
    /// once two consecutive checkpoints agree. An irrational unit-circle
    /// eigenvalue gives a non-periodic sequence and the average over a
    /// short window is reported as unconverged.
    pub fn limit_term(&self, a: &ExactMatrix, ai: &ExactMatrix) -> Result<LimitTerm> {
        if a.is_identity() {
            return Ok(LimitTerm {
                value: Q::zero(),
                mode: Mode::Exact,
            });
        }
        let order = unit_circle_order(a)?;
        let max_window = if order.is_some() {
            MAX_WINDOW
        } else {
            IRRATIONAL_WINDOW
        };
        // s[k] = τ(A^k, A), s[0] = 0
        let mut s: Vec<i64> = vec![0];
        let mut p = a.clone();
        let mut pi = ai.clone();
        // Barge–Ghys: τ(A^k, A) = Sign(−F Σ_{i=1}^k (A^i − A^{−i})).
        let form = self.eval.form();
        let mut sum = ExactMatrix::zeros(a.rows(), a.cols(), a.level());
        let mut window = CHECKPOINT;
        let mut previous: Option<Q> = None;
        loop {
            let k = s.len();
            if p.is_identity() {
                let total: i64 = s.iter().sum();
                return Ok(LimitTerm {
                    value: q(total, k as i64),
                    mode: Mode::Exact,
                });
            }
            sum = &sum + &(&p - &pi);
            s.push(signature_hermitian(&-&(form * &sum))?.signature());
            p = &p * a;
            pi = &pi * ai;
            if s.len() < window {
                continue;
            }
            let found = order
                .and_then(|n| detect_period(&s, n))
                .map(|(k0, period)| {
                    let total: i64 = s[k0..k0 + period].iter().sum();
                    (k0, period, q(total, period as i64))
                });
            match (found, previous.take()) {
                (Some((k0, period, value)), Some(before)) if value == before => {
                    return Ok(LimitTerm {
                        value,
                        mode: Mode::Period { k0, period },
                    });
                }
                (found, _) => previous = found.map(|(_, _, v)| v),
            }
            if window >= max_window {
                let total: i64 = s.iter().sum();
                return Ok(LimitTerm {
                    value: q(total, s.len() as i64),
                    mode: Mode::Unconverged,
                });
            }
            window += CHECKPOINT;
        }
    }

    /// False when the image of w has a unit-circle eigenvalue that is not a
    /// root of unity; its homogenization then cannot be certified.
    pub fn homogenizable(&self, w: &MappingClassWord) -> Result<bool> {
        Ok(unit_circle_order(&self.image(w)?)?.is_some())
    }

    /// φ̄(x) = φ(x) − lim (1/n) Σ τ(x^k, x).
    pub fn homogenize(&self, w: &MappingClassWord) -> Result<QmValue> {
        let phi = self.phi(w)?;
        let (a, ai) = self.image_pair(w)?;
        let lim = self.limit_term(&a, &ai)?;
        Ok(QmValue {
            value: phi - lim.value,
            mode: lim.mode,
            context: self.context,
        })
    }

    /// δφ̄(x, y) = φ̄(x) + φ̄(y) − φ̄(xy) = τ(x, y) − L(x) − L(y) + L(xy);
    /// needs no letter values, so any letters are allowed.
    pub fn coboundary_barphi(&self, x: &MappingClassWord, y: &MappingClassWord) -> Result<QmValue> {
        let (a, ai) = self.image_pair(x)?;
        let (b, bi) = self.image_pair(y)?;
        let ab = &a * &b;
        let abi = &bi * &ai;
        let t = self.eval.tau_with_inverse(&a, Some(&ai), &b)?;
        let la = self.limit_term(&a, &ai)?;
        let lb = self.limit_term(&b, &bi)?;
        let lab = self.limit_term(&ab, &abi)?;
        Ok(QmValue {
            value: qi(t) - la.value - lb.value + lab.value,
            mode: la.mode.worst(lb.mode).worst(lab.mode),
            context: self.context,
        })
    }

    /// δφ(x, y) = φ(x) + φ(y) − φ(xy).
    pub fn coboundary_phi(&self, x: &MappingClassWord, y: &MappingClassWord) -> Result<Q> {
        Ok(self.phi(x)? + self.phi(y)? - self.phi(&x.concat(y)?)?)
    }
}

/// Smallest period P dividing `order`, with P ≤ n/4 and preperiod
/// k0 ∈ [1, n/4], such that s[k] = s[k+P] for every k0 ≤ k < n − P.
fn detect_period(s: &[i64], order: u64) -> Option<(usize, usize)> {
    let n = s.len();
    let bound = n / 4;
    (1..=bound)
        .filter(|&p| order.is_multiple_of(p as u64))
        .find_map(|p| {
            let last_bad = (1..n - p).rev().find(|&k| s[k] != s[k + p]);
            let k0 = last_bad.map_or(1, |k| k + 1);
            (k0 <= bound).then_some((k0, p))
        })
}

fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// lcm of the orders of the eigenvalues of A on the unit circle, each
/// certified by exact evaluation of the characteristic polynomial at a
/// root of unity; None if some unit-circle eigenvalue admits no such
/// certificate. ζ_q can be a root only if [ℚ(ω_{lcm(L,q)}) : ℚ(ω_L)] ≤ n,
/// which bounds the candidate denominators.
fn unit_circle_order(a: &ExactMatrix) -> Result<Option<u64>> {
    let Some(eigs) = a.approx_eigenvalues() else {
        return Ok(None);
    };
    let level = a.level() as u64;
    let n = a.rows() as u64;
    let base = totient(level);
    let denominators: Vec<u64> = (1..=MAX_ROOT_DENOMINATOR)
        .filter(|&q| totient(level.lcm(&q)) <= n * base)
        .collect();
    let charpoly = a.characteristic_polynomial()?;
    let mut verdicts: HashMap<(u64, u64), bool> = HashMap::new();
    let mut is_root = |q: u64, p: u64| -> Result<bool> {
        if let Some(&v) = verdicts.get(&(q, p)) {
            return Ok(v);
        }
        let big = level.lcm(&q);
        let z = Cyc::root_of_unity(big as u32, (p * (big / q)) as i64);
        let mut acc = Cyc::zero(big as u32);
        for c in charpoly.iter().rev() {
            acc = &(&acc * &z) + &c.lift(big as u32)?;
        }
        verdicts.insert((q, p), acc.is_zero());
        Ok(acc.is_zero())
    };
    let mut order = 1u64;
    for z in eigs {
        if (z.norm() - 1.0).abs() > UNIT_TOLERANCE {
            continue;
        }
        let theta = (z.arg() / std::f64::consts::TAU).rem_euclid(1.0);
        let mut certified = None;
        for &q in &denominators {
            let p = (theta * q as f64).round() as u64 % q;
            let gap = (theta - p as f64 / q as f64).abs();
            if gap.min(1.0 - gap) > UNIT_TOLERANCE || p.gcd(&q) != 1 {
                continue;
            }
            if is_root(q, p)? {
                certified = Some(q);
                break;
            }
        }
        match certified {
            Some(q) => order = order.lcm(&q),
            None => return Ok(None),
        }
    }
    Ok(Some(order))
}

/// φ_{m,j}(σ̃₁⋯σ̃_{r−1}) = 2(r−1)j(m−j)/(m(m−1)).
pub fn closed_form_phi(m: u32, j: u32, r: u32) -> Q {
    let (m, j, r) = (m as i64, j as i64, r as i64);
    q(2 * (r - 1) * j * (m - j), m * (m - 1))
}

/// φ̄_{m,j}(σ̃₁⋯σ̃_{r−1}) =
/// −(2/r){jr(m−j)(m−r)/(m²(m−1)) + (rj/m − ⌊rj/m⌋ − 1/2)² − 1/4}.
pub fn closed_form_barphi(m: u32, j: u32, r: u32) -> Q {
    let (m, j, r) = (m as i64, j as i64, r as i64);
    let first = q(j * r * (m - j) * (m - r), m * m * (m - 1));
    let x = q(r * j, m);
    let frac = &x - Q::from_integer(x.floor().to_integer()) - q(1, 2);
    -(q(2, r)) * (first + &frac * &frac - q(1, 4))
}

/// Sign of sin(π·p/q) for q > 0.
fn sin_sign(p: i64, q: i64) -> i64 {
    let t = p.mod_floor(&(2 * q));
    if t == 0 || t == q {
        0
    } else if t < q {
        1
    } else {
        -1
    }
}

/// τ(σ̃^k, σ̃) for σ̃ = σ̃₁⋯σ̃_{r−1} from the eigenvalue angles
/// θ_i = i/r − j/m: Σ_i sign(sin kπθ_i · sin (k+1)πθ_i), where an i with
/// θ_i = 0 contributes +1 when r < m. At r = m that eigenvector is zero and
/// contributes nothing.
pub fn tau_power_closed_form(m: u32, j: u32, r: u32, k: u32) -> i64 {
    let (m, j, r, k) = (m as i64, j as i64, r as i64, k as i64);
    let den = r * m;
    (1..r)
        .map(|i| {
            let num = i * m - j * r;
            if num == 0 {
                i64::from(r < m)
            } else {
                sin_sign(k * num, den) * sin_sign((k + 1) * num, den)
            }
        })
        .sum()
}

/// Σ_{i=1}^{r−1} (rm − 2|mi − rj|), the eigenvalue-angle count of
/// Σ_{k=1}^{rm} τ(σ̃^k, σ̃). Overcounts by m² at r = m; see `power_sum_direct`.
pub fn power_sum_tau(m: u32, j: u32, r: u32) -> i64 {
    let (m, j, r) = (m as i64, j as i64, r as i64);
    (1..r).map(|i| r * m - 2 * (m * i - r * j).abs()).sum()
}

/// Σ_{k=1}^{rm} of `tau_power_closed_form`.
pub fn power_sum_direct(m: u32, j: u32, r: u32) -> i64 {
    (1..=r * m).map(|k| tau_power_closed_form(m, j, r, k)).sum()
}

/// φ − φ̄ on σ̃₁⋯σ̃_{r−1}:
/// (2/r){(rj/m − ⌊rj/m⌋ − 1/2)² + r²j(m−j)/m² − 1/4}.
pub fn gap_closed_form(m: u32, j: u32, r: u32) -> Q {
    let (mi, ji, ri) = (m as i64, j as i64, r as i64);
    let x = q(ri * ji, mi);
    let frac = &x - Q::from_integer(x.floor().to_integer()) - q(1, 2);
    q(2, ri) * (&frac * &frac + q(ri * ri * ji * (mi - ji), mi * mi) - q(1, 4))
}

/// The ([m/2]−1)² matrix with (i, j) entry φ̄_{m,j+1}(σ̃₁⋯σ̃_i), 1-based.
pub fn barphi_matrix(m: u32) -> Vec<Vec<Q>> {
    let n = (m / 2).saturating_sub(1);
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| closed_form_barphi(m, j + 1, i + 1))
                .collect()
        })
        .collect()
}

/// Exact determinant by fraction-free elimination over ℚ.
pub fn rational_det(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let mut a: Vec<Vec<Q>> = rows.to_vec();
    let mut det = qi(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let d = &f * &a[c][k];
                a[r][k] -= d;
            }
        }
    }
    det
}

/// Determinant of `barphi_matrix(m)`; nonzero means the φ̄_{m,j}, 2 ≤ j ≤ m/2,
/// are linearly independent.
pub fn nonsingularity_check(m: u32) -> (Q, bool) {
    let det = rational_det(&barphi_matrix(m));
    let ok = !det.is_zero();
    (det, ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::chain_word;

    fn word(ctx: Context, s: &str) -> MappingClassWord {
        MappingClassWord::parse(ctx.group(), s).unwrap()
    }

    #[test]
    fn bootstrap_values() {
        for g in 1..=4 {
            let qm = Quasimorphism::new(Context::Meyer { g }).unwrap();
            assert_eq!(
                *qm.generator_value(),
                q(g as i64 + 1, 2 * g as i64 + 1),
                "g={g}"
            );
        }
        for m in 4..=7 {
            for j in 1..m {
                let qm = Quasimorphism::new(Context::omega(m, j)).unwrap();
                assert_eq!(
                    *qm.generator_value(),
                    closed_form_phi(m, j, 2),
                    "(m,j)=({m},{j})"
                );
            }
        }
    }

    #[test]
    fn headline_value() {
        let ctx = Context::omega(6, 2);
        let qm = Quasimorphism::new(ctx).unwrap();
        let v = qm.homogenize(&word(ctx, "(s1 s2)^6")).unwrap();
        assert_eq!(v.value, q(-8, 5));
        let c = qm.homogenize(&chain_word(ctx.group(), 3).unwrap()).unwrap();
        assert_eq!(c.value, q(-4, 15));
        assert_eq!(qm.phi(&word(ctx, "s1 s2")).unwrap(), q(16, 15));
    }

    #[test]
    fn meyer_twist_values() {
        for g in 1..=3 {
            let ctx = Context::Meyer { g };
            let qm = Quasimorphism::new(ctx).unwrap();
            let gi = g as i64;
            assert_eq!(
                qm.homogenize(&word(ctx, "sep0")).unwrap().value,
                q(-gi, 2 * gi + 1)
            );
            for h in 1..g {
                let hi = h as i64;
                let v = qm.homogenize(&word(ctx, &format!("sep{h}"))).unwrap();
                assert_eq!(v.value, q(-4 * hi * (gi - hi), 2 * gi + 1), "g={g} h={h}");
                assert_eq!(v.mode, Mode::Exact);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_phi(6, 2, 3), q(16, 15));
        assert_eq!(closed_form_barphi(6, 2, 3), q(-4, 15));
        assert_eq!(power_sum_tau(6, 2, 3), 24);
        assert_eq!(gap_closed_form(6, 2, 3), q(4, 3));
        for m in 4..=12 {
            for j in 1..m {
                assert!(closed_form_barphi(m, j, m).is_zero());
                for r in 2..=m {
                    assert!(closed_form_barphi(m, 1, r).is_zero());
                    let gap = closed_form_phi(m, j, r) - closed_form_barphi(m, j, r);
                    assert_eq!(gap, gap_closed_form(m, j, r));
                    assert_eq!(gap, q(power_sum_tau(m, j, r), (r * m) as i64));
                }
            }
        }
        let m6 = barphi_matrix(6);
        assert_eq!(
            m6,
            vec![vec![q(-2, 15), q(-2, 5)], vec![q(-4, 15), q(-2, 15)]]
        );
        assert_eq!(nonsingularity_check(6).0, q(-4, 45));
    }

    #[test]
    fn unit_circle_orders() {
        let rot = ExactMatrix::from_ints(1, &[vec![0, -1], vec![1, 0]]);
        assert_eq!(unit_circle_order(&rot).unwrap(), Some(4));
        let twist = ExactMatrix::from_ints(1, &[vec![1, 1], vec![0, 1]]);
        assert_eq!(unit_circle_order(&twist).unwrap(), Some(1));
        let anosov = ExactMatrix::from_ints(1, &[vec![2, 1], vec![1, 1]]);
        assert_eq!(unit_circle_order(&anosov).unwrap(), Some(1));
        let f = |p| Cyc::from_frac(1, p, 5);
        let pythagorean = ExactMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => f(-4),
            (1, 0) => f(4),
            _ => f(3),
        });
        assert_eq!(unit_circle_order(&pythagorean).unwrap(), None);
        let qm = Quasimorphism::new(Context::omega(6, 1)).unwrap();
        let s = qm.cover_rep().unwrap().generator(1).clone();
        // eigenvalues 1 and −ω₆ = ω₃²
        assert_eq!(unit_circle_order(&s).unwrap(), Some(3));
    }

    #[test]
    fn period_detection() {
        assert_eq!(detect_period(&[0, 1, 1, 1, 1, 1, 1, 1], 1), Some((1, 1)));
        assert_eq!(
            detect_period(&[0, 3, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2], 2),
            Some((2, 2))
        );
        assert_eq!(
            detect_period(&[0, 3, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2], 3),
            None
        );
        assert_eq!(detect_period(&[0, 1, 2, 3, 4, 5, 6, 7], 1), None);
    }
}
