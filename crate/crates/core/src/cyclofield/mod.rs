//! Exact arithmetic in cyclotomic fields ℚ(ω_m).
//!
//! Elements of different levels combine in ℚ(ω_lcm). `real_sign` is exact:
//! zero is detected symbolically and nonzero reals are separated from zero
//! by outward-rounded interval evaluation of the standard embedding.

mod interval;
mod level;
mod number;

pub use level::cyclotomic_polynomial;
pub use number::{compare_real, CyclotomicNumber};

/// Shorthand for [`CyclotomicNumber`].
pub type Cyc = CyclotomicNumber;

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    fn w(m: u32, k: i64) -> Cyc {
        Cyc::root_of_unity(m, k)
    }

    #[test]
    fn roots_of_unity_multiply() {
        for m in [1u32, 2, 3, 4, 5, 6, 8, 12, 15] {
            let one = Cyc::one(m);
            assert_eq!(w(m, 1).pow(m as i64).unwrap(), one);
            for a in -3..10 {
                for b in -3..10 {
                    assert_eq!(w(m, a) * w(m, b), w(m, a + b));
                }
            }
            // Σ_k ω^k = 0 for m > 1
            let s = (0..m as i64).fold(Cyc::zero(m), |acc, k| acc + w(m, k));
            assert_eq!(s.is_zero(), m > 1);
        }
    }

    #[test]
    fn conj_and_inverse() {
        let m = 12;
        let x = w(m, 1) * Cyc::from_frac(m, 3, 2) + w(m, 5) - Cyc::from_int(m, 7);
        assert_eq!(x.conj().conj(), x);
        assert_eq!(w(m, 1).conj(), w(m, -1));
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(Cyc::zero(m).inv().is_err());
        assert!((&x * &x.conj()).is_real());
    }

    #[test]
    fn mixed_levels_lift_to_lcm() {
        let a = w(4, 1);
        let b = w(6, 1);
        let c = &a * &b;
        assert_eq!(c.level(), 12);
        assert_eq!(c, w(12, 5));
        assert_eq!(w(2, 1), Cyc::from_int(12, -1));
        assert_eq!(w(3, 1), w(6, 2));
    }

    #[test]
    fn real_signs() {
        // 2cos(2π/5) − (√5 − 1)/2 = 0 and 2cos(2π/7) ≈ 1.2469
        let c5 = w(5, 1) + w(5, -1);
        assert_eq!(c5.real_sign().unwrap(), 1);
        let c7 = w(7, 1) + w(7, -1) - Cyc::from_frac(7, 1247, 1000);
        assert_eq!(c7.real_sign().unwrap(), -1);
        assert!(w(5, 1).real_sign().is_err());
        assert_eq!(Cyc::zero(9).real_sign().unwrap(), 0);
        // a tiny value forces the interval path
        let big = Cyc::from_int(8, 1i64 << 40);
        let sqrt2 = w(8, 1) + w(8, -1);
        let approx = Cyc::from_frac(8, 1_555_022_410_821, 1_099_511_627_776);
        let d = &sqrt2 * &big - &approx * &big;
        assert_eq!(d.real_sign().unwrap(), -1);
    }

    #[test]
    fn big_fallback_round_trip() {
        let m = 7;
        let x = w(m, 1) + Cyc::from_int(m, 3);
        let big = x.pow(60).unwrap();
        assert!(big.height_bits() > 64);
        let back = &big * &x.pow(-60).unwrap();
        assert!(back.is_one());
    }

    #[test]
    fn serde_round_trip() {
        let x = w(5, 2) * Cyc::from_frac(5, -3, 4) + Cyc::one(5);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"level":5,"coeffs":["1","0","-3/4","0"]}"#);
        let y: Cyc = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<Cyc>(r#"{"level":5,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn norm_of_cyclotomic_units() {
        // N(1 − ω_p) = p for prime p
        for p in [3u32, 5, 7, 11] {
            let n = (Cyc::one(p) - w(p, 1)).norm();
            assert_eq!(n, BigRational::from_integer(p.into()));
        }
        assert!(BigRational::one() == Cyc::one(9).norm());
    }
}
