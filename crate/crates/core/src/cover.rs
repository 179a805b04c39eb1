//! Homology of the d-fold cyclic cover C of the sphere branched at m points
//! (d | m), and the eigenspace representations of the lifted half-twists.
//!
//! H_1(C; ℤ) is generated by e_l(k) = t^k e_l (1 ≤ l ≤ m−1, k ∈ ℤ/d), lifts of
//! loops through consecutive branch points, subject to Σ_k e_l(k) = 0 and
//! e_{m−1} = −Σ_{l ≤ m−2} Σ_{s=l}^{m−1} t^{s−m+1} e_l. The integral basis is
//! e_l(k) with l ≤ m−2, k ≤ d−2, so rank (m−2)(d−1) = 2g.
//!
//! For λ = e^{2πij/d} the eigenspace V^λ has basis w_l = Σ_k λ^{−k} e_l(k),
//! 1 ≤ l ≤ m−2, and the form v·w is conjugate-linear in v.

use num_integer::Integer;

use crate::cyclofield::Cyc;
use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::words::{Generator, Group, MappingClassWord};

/// Sparse element of the ℤ[t]-module: ((l, k), coefficient), k mod d.
type ModElem = Vec<((u32, u32), i64)>;

fn half_twist_on_generator(d: u32, i: u32, l: u32) -> ModElem {
    let back = d - 1; // t^{-1}
    if l + 1 == i {
        vec![((l, 0), 1), ((i, 0), 1)]
    } else if l == i {
        vec![((i, back), -1)]
    } else if l == i + 1 {
        vec![((i, back), 1), ((l, 0), 1)]
    } else {
        vec![((l, 0), 1)]
    }
}

/// Expands e_{m−1}(k) and e_l(d−1) into the integral basis.
fn reduce(m: u32, d: u32, x: &ModElem) -> Vec<i64> {
    let n = ((m - 2) * (d - 1)) as usize;
    let mut out = vec![0i64; n];
    let mut stack: Vec<((u32, u32), i64)> = x.clone();
    while let Some(((l, k), c)) = stack.pop() {
        if c == 0 {
            continue;
        }
        if l == m - 1 {
            for l2 in 1..=m - 2 {
                for s in l2..=m - 1 {
                    let kk = (k as i64 + s as i64 - (m as i64 - 1)).rem_euclid(d as i64) as u32;
                    stack.push(((l2, kk), -c));
                }
            }
        } else if k == d - 1 {
            for kk in 0..d - 1 {
                stack.push(((l, kk), -c));
            }
        } else {
            out[((l - 1) * (d - 1) + k) as usize] += c;
        }
    }
    out
}

fn shift(x: &ModElem, by: u32, d: u32) -> ModElem {
    x.iter()
        .map(|&((l, k), c)| ((l, (k + by) % d), c))
        .collect()
}

fn check_md(m: u32, d: u32) -> Result<()> {
    Group::Sphere { m, d }.validate()
}

/// Integral matrix of (σ̃_i)_* on the basis e_l(k), l ≤ m−2, k ≤ d−2
/// (basis index (l−1)(d−1)+k); columns are images.
pub fn halftwist_action(m: u32, d: u32, i: u32) -> Result<ExactMatrix> {
    check_md(m, d)?;
    if !(1..m).contains(&i) {
        return Err(Error::InvalidInput(format!(
            "half-twist index {i} out of range"
        )));
    }
    let n = ((m - 2) * (d - 1)) as usize;
    let mut cols = vec![vec![0i64; n]; n];
    for l in 1..=m - 2 {
        let base = half_twist_on_generator(d, i, l);
        for k in 0..d - 1 {
            cols[((l - 1) * (d - 1) + k) as usize] = reduce(m, d, &shift(&base, k, d));
        }
    }
    Ok(ExactMatrix::from_ints(1, &transpose(&cols)))
}

/// Integral matrix of the deck transformation t on the same basis.
pub fn deck_action(m: u32, d: u32) -> Result<ExactMatrix> {
    check_md(m, d)?;
    let n = ((m - 2) * (d - 1)) as usize;
    let mut cols = vec![vec![0i64; n]; n];
    for l in 1..=m - 2 {
        for k in 0..d - 1 {
            cols[((l - 1) * (d - 1) + k) as usize] = reduce(m, d, &vec![((l, k + 1), 1)]);
        }
    }
    Ok(ExactMatrix::from_ints(1, &transpose(&cols)))
}

fn transpose(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cols.len();
    (0..n)
        .map(|i| (0..n).map(|j| cols[j][i]).collect())
        .collect()
}

/// e_l(k)·e_{l'}(k') on the generators, k and k' mod d.
pub fn intersection_number(d: u32, (l, k): (u32, u32), (l2, k2): (u32, u32)) -> i64 {
    let delta = (k2 + d - k) % d;
    let (l, l2) = (l as i64, l2 as i64);
    if delta == 0 {
        if l2 == l + 1 {
            -1
        } else if l2 == l - 1 {
            1
        } else {
            0
        }
    } else if d > 2 && delta == 1 {
        if l2 == l {
            -1
        } else if l2 == l + 1 {
            1
        } else {
            0
        }
    } else if d > 2 && delta == d - 1 {
        if l2 == l {
            1
        } else if l2 == l - 1 {
            -1
        } else {
            0
        }
    } else {
        0
    }
}

/// Intersection form of C on the integral basis.
pub fn intersection_form(m: u32, d: u32) -> Result<ExactMatrix> {
    check_md(m, d)?;
    let idx: Vec<(u32, u32)> = (1..=m - 2)
        .flat_map(|l| (0..d - 1).map(move |k| (l, k)))
        .collect();
    let rows: Vec<Vec<i64>> = idx
        .iter()
        .map(|&a| idx.iter().map(|&b| intersection_number(d, a, b)).collect())
        .collect();
    Ok(ExactMatrix::from_ints(1, &rows))
}

/// Level and exponent with λ = e^{2πij/d} = ω_level^{exp}.
pub fn eigenvalue_level(d: u32, j: u32) -> (u32, i64) {
    let g = d.gcd(&j);
    (d / g, (j / g) as i64)
}

/// Columns: the coordinates of w_1, …, w_{m−2} in the integral basis.
pub fn w_basis_embedding(m: u32, d: u32, j: u32) -> Result<ExactMatrix> {
    check_md(m, d)?;
    let (lv, e) = eigenvalue_level(d, j);
    let lam = |p: i64| Cyc::root_of_unity(lv, e * p);
    let n = ((m - 2) * (d - 1)) as usize;
    let mut out = ExactMatrix::zeros(n, (m - 2) as usize, lv);
    for l in 1..=m - 2 {
        for k in 0..d - 1 {
            // e_l(d−1) = −Σ_{k<d−1} e_l(k) and λ^{−(d−1)} = λ
            out.set(
                ((l - 1) * (d - 1) + k) as usize,
                (l - 1) as usize,
                lam(-(k as i64)) - lam(1),
            );
        }
    }
    Ok(out)
}

/// The d=2 .. d=m eigenspace representation of the lifted half-twists.
#[derive(Clone, Debug)]
pub struct CoverRep {
    pub m: u32,
    pub d: u32,
    pub j: u32,
    level: u32,
    lambda: Cyc,
    gram: ExactMatrix,
    gens: Vec<ExactMatrix>,
    gens_inv: Vec<ExactMatrix>,
}

impl CoverRep {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn lambda(&self) -> &Cyc {
        &self.lambda
    }

    /// Skew-hermitian Gram matrix (w_a·w_b) of the intersection form on V^λ.
    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        (self.m - 2) as usize
    }

    /// Matrix of (σ̃_i)_* in the w-basis.
    pub fn generator(&self, i: u32) -> &ExactMatrix {
        &self.gens[i as usize - 1]
    }

    pub fn generator_inv(&self, i: u32) -> &ExactMatrix {
        &self.gens_inv[i as usize - 1]
    }

    pub fn group(&self) -> Group {
        Group::Sphere {
            m: self.m,
            d: self.d,
        }
    }

    /// Image of a word; the matrix of `x y` is ρ(x)ρ(y).
    pub fn image(&self, word: &MappingClassWord) -> Result<ExactMatrix> {
        if word.group() != self.group() {
            return Err(Error::InvalidInput(format!(
                "word lives in {:?}, representation in {:?}",
                word.group(),
                self.group()
            )));
        }
        let mut acc = ExactMatrix::identity(self.dim(), self.level);
        for l in word.letters() {
            let Generator::Sigma(i) = l.gen else {
                unreachable!("validated by the word");
            };
            let g = if l.exp > 0 {
                &self.gens[i as usize - 1]
            } else {
                &self.gens_inv[i as usize - 1]
            };
            for _ in 0..l.exp.unsigned_abs() {
                acc = &acc * g;
            }
        }
        Ok(acc)
    }

    /// True when A^* G A = G.
    pub fn preserves_form(&self, a: &ExactMatrix) -> bool {
        a.conj_transpose() * self.gram.clone() * a.clone() == self.gram
    }
}

/// Eigenspace representation of π_0 C(t) on V^λ, λ = e^{2πij/d}, for the
/// d-fold cover branched at m points. Matrices are the projections of the
/// integral action: e_l(k) ↦ λ^k w_l, with
/// w_{m−1} = Σ_{l ≤ m−2} (λ + … + λ^l) w_l.
pub fn eigenspace_rep(m: u32, d: u32, j: u32) -> Result<CoverRep> {
    check_md(m, d)?;
    if !(1..d).contains(&j) {
        return Err(Error::InvalidInput(format!(
            "need 1 ≤ j ≤ d−1, got j = {j}"
        )));
    }
    let (lv, e) = eigenvalue_level(d, j);
    let lam = |p: i64| Cyc::root_of_unity(lv, e * p);
    let n = (m - 2) as usize;
    let mut w_last = Vec::with_capacity(n);
    let mut partial = Cyc::zero(lv);
    for l in 1..=n {
        partial += &lam(l as i64);
        w_last.push(partial.clone());
    }
    let dd = Cyc::from_int(lv, d as i64);
    let gram = ExactMatrix::from_fn(n, n, |a, b| {
        if a == b {
            &dd * &(lam(1) - lam(-1))
        } else if b + 1 == a {
            &dd * &(Cyc::one(lv) - lam(1))
        } else if a + 1 == b {
            &dd * &(lam(-1) - Cyc::one(lv))
        } else {
            Cyc::zero(lv)
        }
    });
    let mut gens = Vec::new();
    for i in 1..m {
        let mut cols: Vec<Vec<Cyc>> = Vec::with_capacity(n);
        for l in 1..=m - 2 {
            let mut col = vec![Cyc::zero(lv); n];
            for ((ll, k), c) in half_twist_on_generator(d, i, l) {
                let coef = lam(k as i64).mul_int(c);
                if ll == m - 1 {
                    for (x, wl) in col.iter_mut().zip(&w_last) {
                        *x += &(&coef * wl);
                    }
                } else {
                    col[ll as usize - 1] += &coef;
                }
            }
            cols.push(col);
        }
        gens.push(ExactMatrix::from_columns(&cols)?.lift(lv)?);
    }
    let gens_inv = gens
        .iter()
        .map(ExactMatrix::inverse)
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverRep {
        m,
        d,
        j,
        level: lv,
        lambda: lam(1),
        gram: gram.lift(lv)?,
        gens,
        gens_inv,
    })
}

/// v_i for σ̃ = σ̃_1 ⋯ σ̃_{r−1}: an eigenvector with eigenvalue λ^{−1}ζ_r^i.
/// Returned in w-coordinates at level lcm(level, r).
pub fn eigenvector(rep: &CoverRep, r: u32, i: u32) -> Result<Vec<Cyc>> {
    if !(2..=rep.m).contains(&r) || !(1..r).contains(&i) {
        return Err(Error::InvalidInput(format!(
            "need 2 ≤ r ≤ m, 1 ≤ i < r; got r={r}, i={i}"
        )));
    }
    let n = rep.dim();
    let lv = rep.level.lcm(&r);
    let word = chain_word(rep.group(), r)?;
    let s = rep.image(&word)?.lift(lv)?;
    let lam = rep.lambda.lift(lv)?;
    // w_k in coordinates; w_{m−1} = Σ_{l ≤ m−2} (λ + … + λ^l) w_l
    let w_vec = |k: usize| -> Vec<Cyc> {
        if k <= n {
            (1..=n)
                .map(|a| if a == k { Cyc::one(lv) } else { Cyc::zero(lv) })
                .collect()
        } else {
            let mut acc = Cyc::zero(lv);
            let mut p = Cyc::one(lv);
            (1..=n)
                .map(|_| {
                    p = &p * &lam;
                    acc += &p;
                    acc.clone()
                })
                .collect()
        }
    };
    let w_prev = w_vec(r as usize - 1);
    // w'_r = σ̃ w_{r−1}; σ̃ cycles w_1 → … → w_{r−1} → w'_r → λ^{−r} w_1
    let w_prime = s.mul_vec(&w_prev);
    let coef = |k: u32| -> Result<Cyc> {
        Ok(lam.pow(k as i64 - 1)? * Cyc::root_of_unity(r, -((k as i64 - 1) * i as i64)))
    };
    let mut v = vec![Cyc::zero(lv); n];
    for k in 1..r {
        let c = coef(k)?;
        for (x, y) in v.iter_mut().zip(&w_vec(k as usize)) {
            *x += &(&c * y);
        }
    }
    let c = coef(r)?;
    for (x, y) in v.iter_mut().zip(&w_prime) {
        *x += &(&c * y);
    }
    Ok(v)
}

/// σ̃_1 ⋯ σ̃_{r−1}.
pub fn chain_word(group: Group, r: u32) -> Result<MappingClassWord> {
    let gens: Vec<Generator> = (1..r).map(Generator::Sigma).collect();
    MappingClassWord::from_gens(group, &gens)
}

/// Closed form of v_i·v_i: −r d (z_1 − z_1^{−1})(z_2 − z_2^{−1})(z_1/z_2 − z_2/z_1)
/// with z_1 = e^{πi·i/r}, z_2 = e^{πi·j/d}; equals 8rd·√−1·sin(πi/r)sin(πj/d)sin π(i/r − j/d).
pub fn self_intersection_closed_form(d: u32, j: u32, r: u32, i: u32) -> Cyc {
    let lv = (2 * r).lcm(&(2 * d));
    let z1 = Cyc::root_of_unity(lv, (i * lv / (2 * r)) as i64);
    let z2 = Cyc::root_of_unity(lv, (j * lv / (2 * d)) as i64);
    let inv = |z: &Cyc| z.inv().unwrap();
    let f1 = &z1 - &inv(&z1);
    let f2 = &z2 - &inv(&z2);
    let f3 = &z1 * &inv(&z2) - &z2 * &inv(&z1);
    (f1 * f2 * f3).mul_int(-((r * d) as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::relation_catalog;

    #[test]
    fn intersection_form_is_unimodular_and_skew() {
        for (m, d) in [
            (3, 3),
            (4, 2),
            (4, 4),
            (6, 2),
            (6, 3),
            (6, 6),
            (8, 4),
            (9, 3),
        ] {
            let e = intersection_form(m, d).unwrap();
            assert_eq!(e.transpose(), -&e, "skew (m,d)=({m},{d})");
            assert!(e.det().unwrap().is_one(), "unimodular (m,d)=({m},{d})");
        }
    }

    #[test]
    fn integral_actions_preserve_form_and_commute_with_deck() {
        for (m, d) in [(4, 2), (4, 4), (5, 5), (6, 2), (6, 3), (6, 6)] {
            let e = intersection_form(m, d).unwrap();
            let t = deck_action(m, d).unwrap();
            assert!(t.pow(d as i64).unwrap().is_identity());
            assert_eq!(t.transpose() * e.clone() * t.clone(), e);
            for i in 1..m {
                let a = halftwist_action(m, d, i).unwrap();
                assert_eq!(
                    a.transpose() * e.clone() * a.clone(),
                    e,
                    "(m,d,i)=({m},{d},{i})"
                );
                assert_eq!(&a * &t, &t * &a);
            }
        }
    }

    #[test]
    fn projection_matches_integral_action() {
        for (m, d) in [(4, 4), (5, 5), (6, 3), (6, 6), (6, 2)] {
            let e = intersection_form(m, d).unwrap();
            for j in 1..d {
                let rep = eigenspace_rep(m, d, j).unwrap();
                let w = w_basis_embedding(m, d, j).unwrap();
                let lv = rep.level();
                assert_eq!(
                    w.conj_transpose() * e.lift(lv).unwrap() * w.clone(),
                    *rep.gram(),
                    "gram (m,d,j)=({m},{d},{j})"
                );
                for i in 1..m {
                    let a = halftwist_action(m, d, i).unwrap().lift(lv).unwrap();
                    assert_eq!(
                        &a * &w,
                        &w * rep.generator(i),
                        "(m,d,j,i)=({m},{d},{j},{i})"
                    );
                }
            }
        }
    }

    #[test]
    fn relations_and_gram_preservation() {
        for (m, d) in [
            (4, 2),
            (4, 4),
            (5, 5),
            (6, 2),
            (6, 3),
            (6, 6),
            (7, 7),
            (8, 4),
        ] {
            let group = Group::Sphere { m, d };
            for j in 1..d {
                let rep = eigenspace_rep(m, d, j).unwrap();
                for i in 1..m {
                    assert!(rep.preserves_form(rep.generator(i)));
                }
                for rel in relation_catalog(group).unwrap() {
                    assert_eq!(
                        rep.image(&rel.lhs).unwrap(),
                        rep.image(&rel.rhs).unwrap(),
                        "(m,d,j)=({m},{d},{j}) {}",
                        rel.name
                    );
                }
                let deck = MappingClassWord::parse(group, "deck").unwrap();
                let lam_inv = rep.lambda().inv().unwrap();
                let expect = ExactMatrix::identity(rep.dim(), rep.level()).scale(&lam_inv);
                assert_eq!(rep.image(&deck).unwrap(), expect, "(m,d,j)=({m},{d},{j})");
            }
        }
    }

    #[test]
    fn first_generator_matches_closed_form() {
        let rep = eigenspace_rep(5, 5, 2).unwrap();
        let l = rep.lambda().clone();
        let a = rep.generator(1);
        assert_eq!(*a.get(0, 0), -l.inv().unwrap());
        assert_eq!(*a.get(0, 1), l.inv().unwrap());
        assert!(a.get(1, 1).is_one());
        assert!(a.get(1, 0).is_zero());
    }

    #[test]
    fn eigenvectors_and_self_intersections() {
        for m in 3..=7u32 {
            for j in 1..m {
                let rep = eigenspace_rep(m, m, j).unwrap();
                for r in 2..=m {
                    let lv = rep.level().lcm(&r);
                    let s = rep
                        .image(&chain_word(rep.group(), r).unwrap())
                        .unwrap()
                        .lift(lv)
                        .unwrap();
                    let g = rep.gram().lift(lv).unwrap();
                    for i in 1..r {
                        let v = eigenvector(&rep, r, i).unwrap();
                        let mu = rep.lambda().inv().unwrap() * Cyc::root_of_unity(r, i as i64);
                        let sv = s.mul_vec(&v);
                        for (a, b) in sv.iter().zip(&v) {
                            assert_eq!(*a, &mu * b, "eigen (m,j,r,i)=({m},{j},{r},{i})");
                        }
                        let vv = ExactMatrix::from_columns(std::slice::from_ref(&v)).unwrap();
                        let self_int = (vv.conj_transpose() * g.clone() * vv).get(0, 0).clone();
                        assert_eq!(
                            self_int,
                            self_intersection_closed_form(m, j, r, i),
                            "(m,j,r,i)=({m},{j},{r},{i})"
                        );
                    }
                }
            }
        }
    }
}
