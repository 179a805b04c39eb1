use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use super::interval;
use super::level::{level, Level};
use crate::error::{Error, Result};

type SVec = SmallVec<[i64; 8]>;
type WVec = SmallVec<[i128; 16]>;

/// Exact element of ℚ(ω_m), ω_m = e^{2πi/m}, stored as its residue modulo
/// Φ_m: `phi(m)` rational coefficients over a common positive denominator.
///
/// Invariants: the denominator is positive and coprime to the content of the
/// numerators; the compact `i64` representation is used exactly when every
/// integer fits, so equal values share a representation.
#[derive(Clone)]
pub struct CyclotomicNumber {
    lv: Arc<Level>,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Small { num: SVec, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

const BOUND: i128 = i64::MAX as i128;

fn fits(x: i128) -> bool {
    (-BOUND..=BOUND).contains(&x)
}

fn fits_big(x: &BigInt) -> bool {
    x.to_i64().is_some_and(|v| v != i64::MIN)
}

impl CyclotomicNumber {
    fn from_i128(lv: Arc<Level>, num: &mut [i128], mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            match num
                .iter()
                .map(|x| x.checked_neg())
                .collect::<Option<WVec>>()
                .zip(den.checked_neg())
            {
                Some((n, d)) => {
                    num.copy_from_slice(&n);
                    den = d;
                }
                None => {
                    let nb = num.iter().map(|&x| BigInt::from(x)).collect();
                    return Self::from_big(lv, nb, BigInt::from(den));
                }
            }
        }
        let mut g = den;
        for &x in num.iter() {
            if g == 1 {
                break;
            }
            if x != 0 {
                g = g.gcd(&x);
            }
        }
        if num.iter().all(|&x| x == 0) {
            g = den;
        }
        if g != 1 {
            for x in num.iter_mut() {
                *x /= g;
            }
            den /= g;
        }
        if fits(den) && num.iter().all(|&x| fits(x)) {
            CyclotomicNumber {
                lv,
                repr: Repr::Small {
                    num: num.iter().map(|&x| x as i64).collect(),
                    den: den as i64,
                },
            }
        } else {
            let nb = num.iter().map(|&x| BigInt::from(x)).collect();
            CyclotomicNumber {
                lv,
                repr: Repr::Big {
                    num: nb,
                    den: BigInt::from(den),
                },
            }
        }
    }

    fn from_big(lv: Arc<Level>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if num.iter().all(|x| x.is_zero()) {
            den = BigInt::one();
        } else {
            let mut g = den.clone();
            for x in num.iter() {
                if g.is_one() {
                    break;
                }
                if !x.is_zero() {
                    g = g.gcd(x);
                }
            }
            if !g.is_one() {
                for x in num.iter_mut() {
                    *x = &*x / &g;
                }
                den = &den / &g;
            }
        }
        if fits_big(&den) && num.iter().all(fits_big) {
            CyclotomicNumber {
                lv,
                repr: Repr::Small {
                    num: num.iter().map(|x| x.to_i64().unwrap()).collect(),
                    den: den.to_i64().unwrap(),
                },
            }
        } else {
            CyclotomicNumber {
                lv,
                repr: Repr::Big { num, den },
            }
        }
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { num, den } => (
                num.iter().map(|&x| BigInt::from(x)).collect(),
                BigInt::from(*den),
            ),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn zero(m: u32) -> Self {
        let lv = level(m);
        let num = SVec::from_elem(0, lv.phi);
        CyclotomicNumber {
            lv,
            repr: Repr::Small { num, den: 1 },
        }
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        let lv = level(m);
        let mut num = vec![0i128; lv.phi];
        num[0] = v as i128;
        Self::from_i128(lv, &mut num, 1)
    }

    pub fn from_frac(m: u32, p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        let lv = level(m);
        let mut num = vec![0i128; lv.phi];
        num[0] = p as i128;
        Self::from_i128(lv, &mut num, q as i128)
    }

    pub fn from_rational(m: u32, r: &BigRational) -> Self {
        let lv = level(m);
        let mut num = vec![BigInt::zero(); lv.phi];
        num[0] = r.numer().clone();
        Self::from_big(lv, num, r.denom().clone())
    }

    /// Σ c_k ω^k for an arbitrary-length coefficient list.
    pub fn from_power_coeffs(m: u32, coeffs: &[BigRational]) -> Self {
        let mut acc = Self::zero(m);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(Self::root_of_unity(m, k as i64) * Self::from_rational(m, c));
            }
        }
        acc
    }

    /// ω_m^k for any integer k.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let lv = level(m);
        let e = k.rem_euclid(m as i64) as usize;
        let mut num: WVec = lv.pow[e].iter().map(|&x| x as i128).collect();
        Self::from_i128(lv, &mut num, 1)
    }

    pub fn level(&self) -> u32 {
        self.lv.m
    }

    /// Degree φ(m) of the field over ℚ.
    pub fn degree(&self) -> usize {
        self.lv.phi
    }

    /// Coefficients of the canonical residue in the power basis 1, ω, …, ω^{φ−1}.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let (num, den) = self.big_parts();
        num.into_iter()
            .map(|n| BigRational::new(n, den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&x| x == 0),
            Repr::Big { .. } => false,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => {
                *den == 1 && num[0] == 1 && num[1..].iter().all(|&x| x == 0)
            }
            Repr::Big { .. } => false,
        }
    }

    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num[1..].iter().all(|x| x.is_zero()),
        }
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if !self.is_rational() {
            return None;
        }
        let (num, den) = self.big_parts();
        Some(BigRational::new(num[0].clone(), den))
    }

    /// Largest bit length among numerators and the denominator.
    pub fn height_bits(&self) -> u64 {
        match &self.repr {
            Repr::Small { num, den } => num
                .iter()
                .chain(std::iter::once(den))
                .map(|x| 64 - x.unsigned_abs().leading_zeros() as u64)
                .max()
                .unwrap_or(0),
            Repr::Big { num, den } => num
                .iter()
                .chain(std::iter::once(den))
                .map(|x| x.bits())
                .max()
                .unwrap_or(0),
        }
    }

    /// Same element viewed in ℚ(ω_M); requires m | M.
    pub fn lift(&self, target: u32) -> Result<Self> {
        let m = self.lv.m;
        if !target.is_multiple_of(m) {
            return Err(Error::InvalidInput(format!(
                "cannot lift level {m} to level {target}"
            )));
        }
        if target == m {
            return Ok(self.clone());
        }
        let step = (target / m) as usize;
        let tl = level(target);
        Ok(self.map_exponents(tl, |k| k * step))
    }

    /// Re-expands Σ c_k x^{f(k)} in the level `tl`.
    fn map_exponents(&self, tl: Arc<Level>, f: impl Fn(usize) -> usize) -> Self {
        let tm = tl.m as usize;
        let tphi = tl.phi;
        if let Repr::Small { num, den } = &self.repr {
            let mut out: WVec = SmallVec::from_elem(0, tphi);
            let mut ok = true;
            'outer: for (k, &c) in num.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let row = &tl.pow[f(k) % tm];
                for (o, &r) in out.iter_mut().zip(row.iter()) {
                    match (c as i128)
                        .checked_mul(r as i128)
                        .and_then(|v| o.checked_add(v))
                    {
                        Some(v) => *o = v,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                return Self::from_i128(tl, &mut out, *den as i128);
            }
        }
        let (num, den) = self.big_parts();
        let mut out = vec![BigInt::zero(); tphi];
        for (k, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(tl.pow[f(k) % tm].iter()) {
                if r != 0 {
                    *o += c * r;
                }
            }
        }
        Self::from_big(tl, out, den)
    }

    /// Galois automorphism ω ↦ ω^u for u coprime to m.
    pub fn galois(&self, u: u32) -> Self {
        let m = self.lv.m as usize;
        let u = u as usize % m.max(1);
        self.map_exponents(self.lv.clone(), move |k| k * u)
    }

    /// Complex conjugation, ω ↦ ω^{m−1}.
    pub fn conj(&self) -> Self {
        let m = self.lv.m;
        if m <= 2 {
            return self.clone();
        }
        self.galois(m - 1)
    }

    pub fn is_real(&self) -> bool {
        self.lv.m <= 2 || self.conj() == *self
    }

    /// Field norm to ℚ.
    pub fn norm(&self) -> BigRational {
        let mut acc = self.clone();
        for &u in self.lv.units.iter().filter(|&&u| u != 1) {
            acc = &acc * &self.galois(u);
        }
        acc.to_rational().expect("norm is rational")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let (num, den) = self.big_parts();
            let mut out = vec![BigInt::zero(); self.lv.phi];
            out[0] = den;
            return Ok(Self::from_big(self.lv.clone(), out, num[0].clone()));
        }
        // a^{-1} = (Π_{u≠1} σ_u(a)) / N(a)
        let mut prod = Self::one(self.lv.m);
        for &u in self.lv.units.iter().filter(|&&u| u != 1) {
            prod = &prod * &self.galois(u);
        }
        let n = (self * &prod)
            .to_rational()
            .expect("product of all conjugates is rational");
        let (num, den) = prod.big_parts();
        let num = num.into_iter().map(|x| x * n.denom()).collect();
        Ok(Self::from_big(self.lv.clone(), num, den * n.numer()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.lv.m);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Floating approximation of the standard embedding.
    pub fn to_complex(&self) -> (f64, f64) {
        let (mut re, mut im) = (0.0, 0.0);
        match &self.repr {
            Repr::Small { num, den } => {
                for (k, &c) in num.iter().enumerate() {
                    re += c as f64 * self.lv.cos[k];
                    im += c as f64 * self.lv.sin[k];
                }
                (re / *den as f64, im / *den as f64)
            }
            Repr::Big { num, den } => {
                let d = big_to_f64(den);
                for (k, c) in num.iter().enumerate() {
                    let c = big_to_f64(c) / d;
                    re += c * self.lv.cos[k];
                    im += c * self.lv.sin[k];
                }
                (re, im)
            }
        }
    }

    /// Rigorous enclosure [lo, hi] of the real part of the embedded value,
    /// with endpoints having denominator dividing 2^prec times the stored one.
    pub fn real_interval(&self, prec: u32) -> (BigRational, BigRational) {
        let (num, den) = self.big_parts();
        let (lo, hi, p) = interval::real_part(&num, self.lv.m, prec);
        let scale = BigInt::one() << p;
        (
            BigRational::new(lo, &scale * &den),
            BigRational::new(hi, scale * den),
        )
    }

    /// Sign of a real element under the embedding ω_m ↦ e^{2πi/m}.
    /// Zero is decided exactly; nonzero values by a float pass with a wide
    /// safety margin, then by interval refinement until 0 is excluded.
    pub fn real_sign(&self) -> Result<i8> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        if self.is_zero() {
            return Ok(0);
        }
        let (num, _) = self.big_parts();
        let (mut val, mut mag) = (0.0f64, 0.0f64);
        let mut finite = true;
        for (k, c) in num.iter().enumerate() {
            let c = big_to_f64(c);
            if !c.is_finite() {
                finite = false;
                break;
            }
            val += c * self.lv.cos[k];
            mag += c.abs();
        }
        if finite && val.abs() > mag * 1e-9 + f64::MIN_POSITIVE {
            return Ok(if val > 0.0 { 1 } else { -1 });
        }
        let mut prec = 64;
        loop {
            let (lo, hi, _) = interval::real_part(&num, self.lv.m, prec);
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
            prec *= 2;
        }
    }

    fn same_level(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.lv.m.lcm(&b.lv.m);
        (a.lift(m).unwrap(), b.lift(m).unwrap())
    }

    fn add_impl(&self, other: &Self, sign: i128) -> Self {
        if self.lv.m != other.lv.m {
            let (a, b) = Self::same_level(self, other);
            return a.add_impl(&b, sign);
        }
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.repr, &other.repr)
        {
            let (da, db) = (*da as i128, *db as i128);
            let g = da.gcd(&db);
            let (fa, fb) = (db / g, da / g);
            let den = da * fa;
            let mut out: WVec = SmallVec::with_capacity(a.len());
            let mut ok = true;
            for (&x, &y) in a.iter().zip(b.iter()) {
                match (x as i128)
                    .checked_mul(fa)
                    .zip((y as i128).checked_mul(fb * sign))
                    .and_then(|(p, q)| p.checked_add(q))
                {
                    Some(v) => out.push(v),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Self::from_i128(self.lv.clone(), &mut out, den);
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let num = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| {
                let t = y * &da;
                if sign > 0 {
                    x * &db + t
                } else {
                    x * &db - t
                }
            })
            .collect();
        Self::from_big(self.lv.clone(), num, da * db)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.lv.m != other.lv.m {
            let (a, b) = Self::same_level(self, other);
            return a.mul_impl(&b);
        }
        let lv = &self.lv;
        let phi = lv.phi;
        let m = lv.m as usize;
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.repr, &other.repr)
        {
            if let Some(mut out) = mul_small(lv, a, b) {
                if let Some(den) = (*da as i128).checked_mul(*db as i128) {
                    return Self::from_i128(lv.clone(), &mut out, den);
                }
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let mut raw = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + k] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = raw[..phi].to_vec();
        for (e, r) in raw.iter().enumerate().skip(phi) {
            if r.is_zero() {
                continue;
            }
            for (o, &t) in out.iter_mut().zip(lv.pow[e % m].iter()) {
                if t != 0 {
                    *o += r * t;
                }
            }
        }
        Self::from_big(lv.clone(), out, da * db)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        if let Repr::Small { num, den } = &self.repr {
            let mut out: WVec = num.iter().map(|&x| x as i128 * k as i128).collect();
            return Self::from_i128(self.lv.clone(), &mut out, *den as i128);
        }
        let (num, den) = self.big_parts();
        Self::from_big(
            self.lv.clone(),
            num.into_iter().map(|x| x * k).collect(),
            den,
        )
    }
}

fn mul_small(lv: &Level, a: &[i64], b: &[i64]) -> Option<WVec> {
    let phi = lv.phi;
    let m = lv.m as usize;
    let mut raw: WVec = SmallVec::from_elem(0, 2 * phi - 1);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (k, &y) in b.iter().enumerate() {
            if y != 0 {
                raw[i + k] = raw[i + k].checked_add((x as i128).checked_mul(y as i128)?)?;
            }
        }
    }
    let mut out: WVec = raw[..phi].iter().copied().collect();
    for e in phi..2 * phi - 1 {
        let r = raw[e];
        if r == 0 {
            continue;
        }
        for (o, &t) in out.iter_mut().zip(lv.pow[e % m].iter()) {
            if t != 0 {
                *o = o.checked_add(r.checked_mul(t as i128)?)?;
            }
        }
    }
    Some(out)
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.lv.m == other.lv.m {
            return self.repr == other.repr;
        }
        let (a, b) = Self::same_level(self, other);
        a.repr == b.repr
    }
}

impl Eq for CyclotomicNumber {}

impl Hash for CyclotomicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lv.m.hash(state);
        match &self.repr {
            Repr::Small { num, den } => {
                num.hash(state);
                den.hash(state);
            }
            Repr::Big { num, den } => {
                num.hash(state);
                den.hash(state);
            }
        }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [level {}]", self, self.lv.m)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.coeffs();
        let mut first = true;
        for (k, c) in cs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, a) = if c.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "w")?;
                    } else {
                        write!(f, "w^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                $body(self, rhs)
            }
        }
        impl $tr<CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                $body(&self, &rhs)
            }
        }
        impl $tr<&CyclotomicNumber> for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                $body(&self, rhs)
            }
        }
        impl $tr<CyclotomicNumber> for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $f(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &CyclotomicNumber, b: &CyclotomicNumber| a
    .add_impl(b, 1));
binop!(Sub, sub, |a: &CyclotomicNumber, b: &CyclotomicNumber| a
    .add_impl(b, -1));
binop!(Mul, mul, |a: &CyclotomicNumber, b: &CyclotomicNumber| a
    .mul_impl(b));
binop!(Div, div, |a: &CyclotomicNumber, b: &CyclotomicNumber| a
    .checked_div(b)
    .expect("division by zero"));

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = self.add_impl(rhs, 1);
    }
}

impl SubAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn sub_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = self.add_impl(rhs, -1);
    }
}

impl MulAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn mul_assign(&mut self, rhs: &CyclotomicNumber) {
        *self = self.mul_impl(rhs);
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        match &self.repr {
            Repr::Small { num, den } => CyclotomicNumber {
                lv: self.lv.clone(),
                repr: Repr::Small {
                    num: num.iter().map(|&x| -x).collect(),
                    den: *den,
                },
            },
            Repr::Big { num, den } => CyclotomicNumber {
                lv: self.lv.clone(),
                repr: Repr::Big {
                    num: num.iter().map(|x| -x).collect(),
                    den: den.clone(),
                },
            },
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

/// Total order on real elements via [`CyclotomicNumber::real_sign`].
pub fn compare_real(a: &CyclotomicNumber, b: &CyclotomicNumber) -> Result<Ordering> {
    Ok(match (a - b).real_sign()? {
        1 => Ordering::Greater,
        -1 => Ordering::Less,
        _ => Ordering::Equal,
    })
}

#[derive(Serialize, Deserialize)]
struct Wire {
    level: u32,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            level: self.lv.m,
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        if w.level == 0 {
            return Err(D::Error::custom("level must be positive"));
        }
        let cs = w
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let lv = level(w.level);
        if cs.len() != lv.phi {
            return Err(D::Error::custom(format!(
                "level {} needs {} coefficients, got {}",
                w.level,
                lv.phi,
                cs.len()
            )));
        }
        Ok(CyclotomicNumber::from_power_coeffs(w.level, &cs))
    }
}
