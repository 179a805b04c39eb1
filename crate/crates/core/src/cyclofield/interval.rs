//! Dyadic interval arithmetic for certifying signs of real cyclotomic
//! numbers. An interval `[lo, hi]` at precision `p` denotes
//! `[lo / 2^p, hi / 2^p]`; every operation rounds outward.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
struct Iv {
    lo: BigInt,
    hi: BigInt,
}

fn floor_shr(x: &BigInt, p: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << p))
}

fn ceil_shr(x: &BigInt, p: u32) -> BigInt {
    -((-x).div_floor(&(BigInt::one() << p)))
}

impl Iv {
    fn exact(x: BigInt) -> Iv {
        Iv {
            lo: x.clone(),
            hi: x,
        }
    }

    fn add(&self, o: &Iv) -> Iv {
        Iv {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    fn sub(&self, o: &Iv) -> Iv {
        Iv {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    fn mul(&self, o: &Iv, p: u32) -> Iv {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap();
        let hi = c.iter().max().unwrap();
        Iv {
            lo: floor_shr(lo, p),
            hi: ceil_shr(hi, p),
        }
    }

    fn scale_int(&self, k: &BigInt) -> Iv {
        if k.is_negative() {
            Iv {
                lo: &self.hi * k,
                hi: &self.lo * k,
            }
        } else {
            Iv {
                lo: &self.lo * k,
                hi: &self.hi * k,
            }
        }
    }

    /// Division by a positive integer.
    fn div_int(&self, n: &BigInt) -> Iv {
        Iv {
            lo: self.lo.div_floor(n),
            hi: -((-&self.hi).div_floor(n)),
        }
    }

    fn widen(&self, r: &BigInt) -> Iv {
        Iv {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }
}

/// Enclosure of arctan(1/n), n ≥ 2, by its alternating series.
fn atan_inv(n: u64, p: u32) -> Iv {
    let one = BigInt::one() << p;
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let mut pow = n.clone();
    let mut acc = Iv::exact(BigInt::zero());
    let mut k: u64 = 0;
    loop {
        let d = &pow * (2 * k + 1);
        let t = Iv {
            lo: one.div_floor(&d),
            hi: -((-&one).div_floor(&d)),
        };
        if t.hi <= BigInt::one() {
            return acc.widen(&t.hi);
        }
        acc = if k.is_multiple_of(2) {
            acc.add(&t)
        } else {
            acc.sub(&t)
        };
        pow = &pow * &n2;
        k += 1;
    }
}

fn pi(p: u32) -> Iv {
    // π = 16 atan(1/5) − 4 atan(1/239)
    atan_inv(5, p)
        .scale_int(&BigInt::from(16))
        .sub(&atan_inv(239, p).scale_int(&BigInt::from(4)))
}

/// Enclosure of cos(x) for x ≥ 0 via the Taylor series with Lagrange remainder.
fn cos_iv(x: &Iv, p: u32) -> Iv {
    let x2 = x.mul(x, p);
    let mut term = Iv::exact(BigInt::one() << p);
    let mut acc = term.clone();
    let mut n: u64 = 1;
    loop {
        term = term
            .mul(&x2, p)
            .div_int(&BigInt::from((2 * n - 1) * (2 * n)));
        if term.hi <= BigInt::one() && term.lo >= -BigInt::one() {
            return acc.widen(&term.hi.abs().max(term.lo.abs()));
        }
        acc = if n % 2 == 1 {
            acc.sub(&term)
        } else {
            acc.add(&term)
        };
        n += 1;
    }
}

/// Enclosure of Σ_k num[k]·cos(2πk/m), returned as (lo, hi, p) meaning
/// [lo/2^p, hi/2^p]. The working precision p exceeds `prec` by guard bits.
pub(crate) fn real_part(num: &[BigInt], m: u32, prec: u32) -> (BigInt, BigInt, u32) {
    let p = prec + 32;
    let pi = pi(p);
    let mut acc = Iv::exact(BigInt::zero());
    for (k, c) in num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cos = if k == 0 {
            Iv::exact(BigInt::one() << p)
        } else {
            // reduce 2πk/m to [0, π] using cos(2π − θ) = cos θ
            let (kk, mm) = (k as u64, m as u64);
            let kk = if 2 * kk > mm { mm - kk } else { kk };
            let theta = pi
                .scale_int(&BigInt::from(2 * kk))
                .div_int(&BigInt::from(mm));
            let theta = if theta.lo.is_negative() {
                Iv {
                    lo: BigInt::zero(),
                    hi: theta.hi,
                }
            } else {
                theta
            };
            cos_iv(&theta, p)
        };
        acc = acc.add(&cos.scale_int(c));
    }
    (acc.lo, acc.hi, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn to_f64(x: &BigInt, p: u32) -> f64 {
        x.to_f64().unwrap() / 2f64.powi(p as i32)
    }

    #[test]
    fn pi_enclosure() {
        let iv = pi(200);
        let (lo, hi) = (to_f64(&iv.lo, 200), to_f64(&iv.hi, 200));
        assert!(lo <= std::f64::consts::PI + 1e-15 && hi >= std::f64::consts::PI - 1e-15);
        assert!(&iv.hi - &iv.lo < BigInt::from(1000));
    }

    #[test]
    fn cos_enclosure_brackets_float() {
        for m in [3u32, 5, 7, 12, 30] {
            for k in 0..m {
                let mut num = vec![BigInt::zero(); k as usize + 1];
                num[k as usize] = BigInt::one();
                let (lo, hi, p) = real_part(&num, m, 80);
                let v = (std::f64::consts::TAU * k as f64 / m as f64).cos();
                assert!(to_f64(&lo, p) <= v + 1e-12 && to_f64(&hi, p) >= v - 1e-12);
                assert!(&hi - &lo < BigInt::one() << 40);
            }
        }
    }
}
