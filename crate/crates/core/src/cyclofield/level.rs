//! Per-level tables for ℚ(ω_m): reduction of every power x^e (0 ≤ e < m)
//! modulo Φ_m, the unit group and float approximations of the embedding.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_integer::Integer;

#[derive(Debug)]
pub(crate) struct Level {
    pub m: u32,
    pub phi: usize,
    /// `pow[e]` is x^e mod Φ_m as a length-`phi` vector.
    pub pow: Vec<Vec<i64>>,
    /// Residues k in [1, m) coprime to m.
    pub units: Vec<u32>,
    pub cos: Vec<f64>,
    pub sin: Vec<f64>,
}

fn registry() -> &'static RwLock<HashMap<u32, Arc<Level>>> {
    static REG: OnceLock<RwLock<HashMap<u32, Arc<Level>>>> = OnceLock::new();
    REG.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn level(m: u32) -> Arc<Level> {
    assert!(m >= 1, "cyclotomic level must be positive");
    if let Some(l) = registry().read().unwrap().get(&m) {
        return l.clone();
    }
    let built = Arc::new(Level::build(m));
    registry()
        .write()
        .unwrap()
        .entry(m)
        .or_insert(built)
        .clone()
}

/// Coefficients of Φ_m (low degree first).
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    fn rec(m: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = cache.get(&m) {
            return p.clone();
        }
        // x^m - 1 divided by Φ_d for every proper divisor d.
        let mut num = vec![0i64; m as usize + 1];
        num[0] = -1;
        num[m as usize] = 1;
        for d in 1..m {
            if m.is_multiple_of(d) {
                let den = rec(d, cache);
                num = exact_div(&num, &den);
            }
        }
        cache.insert(m, num.clone());
        num
    }
    let mut cache = HashMap::new();
    rec(m, &mut cache)
}

/// Exact division of integer polynomials by a monic divisor.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (k, &dk) in den.iter().enumerate() {
                rem[i + k] -= c * dk;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

impl Level {
    fn build(m: u32) -> Level {
        let poly = cyclotomic_polynomial(m);
        let phi = poly.len() - 1;
        let mut pow: Vec<Vec<i64>> = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..m {
            pow.push(cur.clone());
            // multiply by x, then reduce the x^phi term
            let top = cur[phi - 1];
            for k in (1..phi).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..phi {
                    cur[k] -= top * poly[k];
                }
            }
        }
        let units = (1..m.max(2)).filter(|k| k.gcd(&m) == 1).collect();
        let units = if m == 1 { vec![1] } else { units };
        let tau = std::f64::consts::TAU;
        let cos = (0..phi)
            .map(|k| (tau * k as f64 / m as f64).cos())
            .collect();
        let sin = (0..phi)
            .map(|k| (tau * k as f64 / m as f64).sin())
            .collect();
        Level {
            m,
            phi,
            pow,
            units,
            cos,
            sin,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn power_table_wraps() {
        let l = level(5);
        assert_eq!(l.phi, 4);
        assert_eq!(l.pow[4], vec![-1, -1, -1, -1]);
        assert_eq!(l.units, vec![1, 2, 3, 4]);
    }
}
