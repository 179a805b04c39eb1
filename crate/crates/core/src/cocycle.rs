//! Meyer's signature cocycle and its hermitian analogue.
//!
//! For a form F (F = J on ℚ^{2g}, or the skew-hermitian Gram G on V^λ) and
//! isometries A, B, let V_{A,B} = ker[A^{−1} − I | B − I] ⊂ V ⊕ V with
//! ⟨(v1, w1), (v2, w2)⟩ = (v1 + w1)^* F (I − B) w2; τ(A, B) is its signature.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::cover::CoverRep;
use crate::error::{Error, Result};
use crate::linalg::{signature_hermitian, ExactMatrix};
use crate::symplectic::symplectic_form;

/// Signature of the form on V_{A,B}, given A^{−1} directly.
fn tau_raw(form: &ExactMatrix, a_inv: &ExactMatrix, b: &ExactMatrix) -> Result<i64> {
    let n = form.rows();
    let id = ExactMatrix::identity(n, b.level());
    let big = (a_inv - &id).hstack(&(b - &id))?;
    let ker = big.kernel_basis();
    let k = ker.cols();
    if k == 0 {
        return Ok(0);
    }
    let top = ExactMatrix::from_fn(n, k, |i, j| ker.get(i, j).clone());
    let bottom = ExactMatrix::from_fn(n, k, |i, j| ker.get(n + i, j).clone());
    let u = &top + &bottom;
    let y = form * &(&id - b) * bottom;
    let h = u.conj_transpose() * y;
    Ok(signature_hermitian(&h)?.signature())
}

/// dim V_{A,B} = dim ker[A^{−1} − I | B − I].
pub fn v_dimension(a_inv: &ExactMatrix, b: &ExactMatrix) -> Result<usize> {
    let id = ExactMatrix::identity(b.rows(), b.level().max(a_inv.level()));
    let a_inv = a_inv.lift(id.level())?;
    let b = b.lift(id.level())?;
    Ok((&a_inv - &id).hstack(&(&b - &id))?.kernel_basis().cols())
}

fn check_isometry(form: &ExactMatrix, a: &ExactMatrix, what: &'static str) -> Result<()> {
    if !a.is_square() || a.rows() != form.rows() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix against a form of size {}",
            a.rows(),
            a.cols(),
            form.rows()
        )));
    }
    if a.conj_transpose() * form.clone() * a.clone() != *form {
        return Err(Error::NotStructured(what));
    }
    Ok(())
}

/// τ(A, B) for isometries of `form`.
pub fn tau_against(form: &ExactMatrix, a: &ExactMatrix, b: &ExactMatrix) -> Result<i64> {
    check_isometry(form, a, "an isometry of the form")?;
    check_isometry(form, b, "an isometry of the form")?;
    tau_raw(form, &a.inverse()?, b)
}

/// Meyer's cocycle on Sp(2g, ℚ).
pub fn meyer_tau(a: &ExactMatrix, b: &ExactMatrix) -> Result<i64> {
    if !a.rows().is_multiple_of(2) {
        return Err(Error::Dimension("odd size is not symplectic".into()));
    }
    let j = symplectic_form(a.rows() as u32 / 2);
    check_isometry(&j, a, "symplectic")?;
    check_isometry(&j, b, "symplectic")?;
    tau_raw(&j, &a.inverse()?, b)
}

/// ω-signature cocycle τ_{m,j} on the eigenspace V^λ of a cover.
pub fn hermitian_tau(rep: &CoverRep, a: &ExactMatrix, b: &ExactMatrix) -> Result<i64> {
    let a = a.lift(rep.level().max(a.level()))?;
    let b = b.lift(rep.level().max(b.level()))?;
    tau_against(rep.gram(), &a, &b)
}

/// Barge–Ghys power formula τ(A^k, A) = Sign(−F Σ_{i=1}^k (A^i − A^{−i})).
pub fn tau_power_bg(form: &ExactMatrix, a: &ExactMatrix, k: u32) -> Result<i64> {
    check_isometry(form, a, "an isometry of the form")?;
    let n = a.rows();
    let ai = a.inverse()?;
    let mut p = ExactMatrix::identity(n, a.level());
    let mut q = p.clone();
    let mut s = ExactMatrix::zeros(n, n, a.level());
    for _ in 0..k {
        p = &p * a;
        q = &q * &ai;
        s = &s + &(&p - &q);
    }
    let h = -&(form * &s);
    Ok(signature_hermitian(&h)?.signature())
}

/// τ against a fixed form with a memo table keyed by the matrix pair.
#[derive(Debug)]
pub struct CocycleEvaluator {
    form: ExactMatrix,
    memo: Mutex<HashMap<(ExactMatrix, ExactMatrix), i64>>,
}

impl CocycleEvaluator {
    pub fn new(form: ExactMatrix) -> Self {
        CocycleEvaluator {
            form,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn form(&self) -> &ExactMatrix {
        &self.form
    }

    /// τ(A, B); the caller guarantees both are isometries.
    pub fn tau(&self, a: &ExactMatrix, b: &ExactMatrix) -> Result<i64> {
        self.tau_with_inverse(a, None, b)
    }

    /// τ(A, B) reusing a known A^{−1}.
    pub fn tau_with_inverse(
        &self,
        a: &ExactMatrix,
        a_inv: Option<&ExactMatrix>,
        b: &ExactMatrix,
    ) -> Result<i64> {
        if a.is_identity() || b.is_identity() {
            return Ok(0);
        }
        let key = (a.clone(), b.clone());
        if let Some(&v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v);
        }
        let v = match a_inv {
            Some(ai) => tau_raw(&self.form, ai, b)?,
            None => tau_raw(&self.form, &a.inverse()?, b)?,
        };
        self.memo.lock().unwrap().insert(key, v);
        Ok(v)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::eigenspace_rep;
    use crate::symplectic::{curve_class, transvection, word_to_sp};
    use crate::words::{Generator, Group, MappingClassWord};

    #[test]
    fn genus_one_values() {
        let t = transvection(&curve_class(1, Generator::Curve(2)).unwrap(), 1);
        assert_eq!(meyer_tau(&t, &t).unwrap(), 1);
        let g = Group::Hyperelliptic { g: 1 };
        let a = word_to_sp(&MappingClassWord::parse(g, "c2^2").unwrap()).unwrap();
        let b = word_to_sp(&MappingClassWord::parse(g, "dp1^2").unwrap()).unwrap();
        assert_eq!(meyer_tau(&a, &b).unwrap(), 0);
        let minus = -&ExactMatrix::identity(2, 1);
        assert_eq!(meyer_tau(&minus, &minus).unwrap(), 0);
        assert_eq!(meyer_tau(&t, &t.inverse().unwrap()).unwrap(), 0);
    }

    #[test]
    fn rejects_non_isometries() {
        let a = ExactMatrix::from_ints(1, &[vec![2, 0], vec![0, 1]]);
        assert!(meyer_tau(&a, &a).is_err());
        let rep = eigenspace_rep(5, 5, 1).unwrap();
        let bad =
            ExactMatrix::identity(3, rep.level()).scale(&crate::Cyc::from_int(rep.level(), 2));
        assert!(hermitian_tau(&rep, &bad, &bad).is_err());
    }

    #[test]
    fn first_half_twist_has_positive_square() {
        for m in 3..=8 {
            for j in 1..m {
                let rep = eigenspace_rep(m, m, j).unwrap();
                let s = rep.generator(1);
                assert_eq!(hermitian_tau(&rep, s, s).unwrap(), 1, "(m,j)=({m},{j})");
            }
        }
    }

    #[test]
    fn barge_ghys_agrees_on_small_cases() {
        let g = Group::Hyperelliptic { g: 2 };
        let j = symplectic_form(2);
        for w in ["c1 c2", "c1 c3^-1 c4", "c2 c3 c4 c5", "c1^2 c2^-1"] {
            let a = word_to_sp(&MappingClassWord::parse(g, w).unwrap()).unwrap();
            let mut p = a.clone();
            for k in 1..=6 {
                assert_eq!(
                    meyer_tau(&p, &a).unwrap(),
                    tau_power_bg(&j, &a, k).unwrap(),
                    "{w} k={k}"
                );
                p = &p * &a;
            }
        }
    }
}
