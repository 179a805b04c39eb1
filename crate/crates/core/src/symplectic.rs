//! Integral symplectic representation of 𝓗_g on H_1(Σ_g; ℤ).
//!
//! Basis order is (A_1, …, A_g, B_1, …, B_g) with J = [[0, I], [−I, 0]], so
//! A_i·B_i = 1. Twists act by transvections T_c^k(x) = x + k (c^T J x) c.
//! Curve classes: c_1 = B_1, c_{2i} = A_i, c_{2i+1} = B_{i+1} − B_i for
//! 1 ≤ i < g, c_{2g+1} = B_g, c_{2g+2} = A_1 + … + A_g, and d_i^± = B_i.

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::words::{Generator, Group, MappingClassWord};

pub fn symplectic_form(g: u32) -> ExactMatrix {
    let n = 2 * g as usize;
    let h = g as usize;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i < h && j == i + h {
                        1
                    } else if i >= h && j + h == i {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_ints(1, &rows)
}

/// Homology class of a twist curve as an integer vector.
pub fn curve_class(g: u32, gen: Generator) -> Result<Vec<i64>> {
    Group::Hyperelliptic { g }.check_generator(gen)?;
    let h = g as usize;
    let mut v = vec![0i64; 2 * h];
    let a = |i: u32| i as usize - 1;
    let b = |i: u32| h + i as usize - 1;
    match gen {
        Generator::Curve(k) if k == 2 * g + 2 => (1..=g).for_each(|i| v[a(i)] = 1),
        Generator::Curve(k) if k % 2 == 0 => v[a(k / 2)] = 1,
        Generator::Curve(1) => v[b(1)] = 1,
        Generator::Curve(k) if k == 2 * g + 1 => v[b(g)] = 1,
        Generator::Curve(k) => {
            let i = (k - 1) / 2;
            v[b(i + 1)] = 1;
            v[b(i)] = -1;
        }
        Generator::DPlus(i) | Generator::DMinus(i) => v[b(i)] = 1,
        Generator::Sigma(_) => unreachable!(),
    }
    Ok(v)
}

/// T_c^k = I + k c c^T J.
pub fn transvection(c: &[i64], k: i64) -> ExactMatrix {
    let n = c.len();
    let g = n / 2;
    // (c^T J)_j = c_{j-g} for j ≥ g, −c_{j+g} for j < g
    let cj: Vec<i64> = (0..n)
        .map(|j| if j < g { -c[j + g] } else { c[j - g] })
        .collect();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| i64::from(i == j) + k * c[i] * cj[j])
                .collect()
        })
        .collect();
    ExactMatrix::from_ints(1, &rows)
}

/// Image of a word in Sp(2g, ℤ); the matrix of `x y` is ρ(x)ρ(y).
pub fn word_to_sp(word: &MappingClassWord) -> Result<ExactMatrix> {
    let Group::Hyperelliptic { g } = word.group() else {
        return Err(Error::InvalidInput(
            "symplectic images are defined for hyperelliptic words".into(),
        ));
    };
    let mut acc = ExactMatrix::identity(2 * g as usize, 1);
    for l in word.letters() {
        acc = &acc * &transvection(&curve_class(g, l.gen)?, l.exp);
    }
    Ok(acc)
}

pub fn is_symplectic(a: &ExactMatrix) -> bool {
    let n = a.rows();
    if !a.is_square() || !n.is_multiple_of(2) {
        return false;
    }
    let j = symplectic_form(n as u32 / 2);
    a.transpose() * j.clone() * a.clone() == j
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::relation_catalog;

    fn ints(m: &ExactMatrix) -> Vec<Vec<i64>> {
        (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .map(|x| x.to_rational().unwrap().to_integer().try_into().unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn genus_one_anchors() {
        let g = Group::Hyperelliptic { g: 1 };
        let a = word_to_sp(&MappingClassWord::parse(g, "c2^2").unwrap()).unwrap();
        assert_eq!(ints(&a), vec![vec![1, 2], vec![0, 1]]);
        let b = word_to_sp(&MappingClassWord::parse(g, "dp1^2").unwrap()).unwrap();
        assert_eq!(ints(&b), vec![vec![1, 0], vec![-2, 1]]);
    }

    #[test]
    fn relations_hold_in_homology() {
        for g in 1..=4 {
            for rel in relation_catalog(Group::Hyperelliptic { g }).unwrap() {
                let l = word_to_sp(&rel.lhs).unwrap();
                let r = word_to_sp(&rel.rhs).unwrap();
                assert_eq!(l, r, "g = {g}: {}", rel.name);
                assert!(is_symplectic(&l));
            }
            let iota = MappingClassWord::parse(Group::Hyperelliptic { g }, "iota").unwrap();
            let minus = -&ExactMatrix::identity(2 * g as usize, 1);
            assert_eq!(word_to_sp(&iota).unwrap(), minus);
        }
    }

    #[test]
    fn separating_twists_act_trivially() {
        for g in 2..=4 {
            for h in 1..g {
                let w = MappingClassWord::parse(Group::Hyperelliptic { g }, &format!("sep{h}"))
                    .unwrap();
                assert!(word_to_sp(&w).unwrap().is_identity());
            }
        }
    }
}
