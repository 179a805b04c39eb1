//! Dense exact matrices over ℚ(ω_m); rational matrices are level 1.
//!
//! All entries of a matrix live at one level (the lcm of the levels it was
//! built from). Shape mismatches in the operator impls panic; the fallible
//! entry points return [`Error::Dimension`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclofield::Cyc;
use crate::error::{Error, Result};

const SCHUR_MAX_ITERATIONS: usize = 10_000;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    level: u32,
    data: Vec<Cyc>,
}

/// (positive, negative, null) inertia of a symmetric or hermitian form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignatureTriple {
    pub pos: usize,
    pub neg: usize,
    pub null: usize,
}

impl SignatureTriple {
    pub fn signature(&self) -> i64 {
        self.pos as i64 - self.neg as i64
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.null
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, level: u32) -> Self {
        ExactMatrix {
            rows,
            cols,
            level,
            data: vec![Cyc::zero(level); rows * cols],
        }
    }

    pub fn identity(n: usize, level: u32) -> Self {
        let mut m = Self::zeros(n, n, level);
        for i in 0..n {
            m.data[i * n + i] = Cyc::one(level);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cyc) -> Self {
        let data: Vec<Cyc> = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::from_data(rows, cols, data)
    }

    fn from_data(rows: usize, cols: usize, data: Vec<Cyc>) -> Self {
        let level = data.iter().fold(1u32, |l, x| l.lcm(&x.level()));
        let data = data
            .into_iter()
            .map(|x| {
                if x.level() == level {
                    x
                } else {
                    x.lift(level).unwrap()
                }
            })
            .collect();
        ExactMatrix {
            rows,
            cols,
            level,
            data,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Cyc>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Self::from_data(r, c, rows.into_iter().flatten().collect()))
    }

    /// Integer matrix at the given level.
    pub fn from_ints(level: u32, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        ExactMatrix {
            rows: r,
            cols: c,
            level,
            data: rows
                .iter()
                .flatten()
                .map(|&v| Cyc::from_int(level, v))
                .collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Cyc>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        if cols.iter().any(|x| x.len() != r) {
            return Err(Error::Dimension("ragged columns".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| cols[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyc) {
        if v.level() == self.level {
            self.data[i * self.cols + j] = v;
        } else if self.level.is_multiple_of(v.level()) {
            self.data[i * self.cols + j] = v.lift(self.level).unwrap();
        } else {
            let l = self.level.lcm(&v.level());
            *self = self.lift(l).unwrap();
            self.data[i * self.cols + j] = v.lift(l).unwrap();
        }
    }

    pub fn column(&self, j: usize) -> Vec<Cyc> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Cyc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Cyc] {
        &self.data
    }

    pub fn lift(&self, level: u32) -> Result<Self> {
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            level,
            data: self
                .data
                .iter()
                .map(|x| x.lift(level))
                .collect::<Result<_>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj(&self) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            level: self.level,
            data: self.data.iter().map(Cyc::conj).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, s: &Cyc) -> Self {
        Self::from_data(
            self.rows,
            self.cols,
            self.data.iter().map(|x| x * s).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyc::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    /// Largest coefficient bit length among the entries.
    pub fn height_bits(&self) -> u64 {
        self.data.iter().map(Cyc::height_bits).max().unwrap_or(0)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let (a, b) = self.common_level(o);
        let mut out = Vec::with_capacity(a.rows * b.cols);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = Cyc::zero(a.level);
                for k in 0..a.cols {
                    let x = a.get(i, k);
                    if x.is_zero() {
                        continue;
                    }
                    let y = b.get(k, j);
                    if y.is_zero() {
                        continue;
                    }
                    acc += &(x * y);
                }
                out.push(acc);
            }
        }
        Ok(ExactMatrix {
            rows: a.rows,
            cols: b.cols,
            level: a.level,
            data: out,
        })
    }

    pub fn mul_vec(&self, v: &[Cyc]) -> Vec<Cyc> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Cyc::zero(self.level), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn common_level(&self, o: &Self) -> (Self, Self) {
        if self.level == o.level {
            return (self.clone(), o.clone());
        }
        let l = self.level.lcm(&o.level);
        (self.lift(l).unwrap(), o.lift(l).unwrap())
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&Cyc, &Cyc) -> Cyc) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension("shape mismatch".into()));
        }
        Ok(Self::from_data(
            self.rows,
            self.cols,
            self.data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        ))
    }

    /// `[self | o]`.
    pub fn hstack(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + o.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                o.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a: Vec<Vec<Cyc>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].height_bits())
            else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv().unwrap();
            for x in a[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let prow = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = a.into_iter().flatten().collect();
        (
            ExactMatrix {
                rows: self.rows,
                cols: self.cols,
                level: self.level,
                data,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, as the columns of a `cols × k` matrix.
    pub fn kernel_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = ExactMatrix::zeros(self.cols, free.len(), self.level);
        for (k, &f) in free.iter().enumerate() {
            basis.data[f * free.len() + k] = Cyc::one(self.level);
            for (i, &p) in pivots.iter().enumerate() {
                let x = r.get(i, f);
                if !x.is_zero() {
                    basis.data[p * free.len() + k] = -x;
                }
            }
        }
        basis
    }

    pub fn det(&self) -> Result<Cyc> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "determinant of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Cyc>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = Cyc::one(self.level);
        for c in 0..n {
            let Some(p) = (c..n)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].height_bits())
            else {
                return Ok(Cyc::zero(self.level));
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det *= &a[c][c];
            let inv = a[c][c].inv()?;
            let prow = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] * &inv;
                for (x, y) in row[c..].iter_mut().zip(&prow[c..]) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n, self.level))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// `self^k`; negative powers invert first.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("power of a non-square matrix".into()));
        }
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.rows, self.level);
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

    pub fn trace(&self) -> Cyc {
        let mut t = Cyc::zero(self.level);
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Coefficients of det(xI − A), low degree first, by Faddeev–LeVerrier.
    pub fn characteristic_polynomial(&self) -> Result<Vec<Cyc>> {
        if !self.is_square() {
            return Err(Error::Dimension(
                "characteristic polynomial of a non-square matrix".into(),
            ));
        }
        let n = self.rows;
        let mut c = vec![Cyc::zero(self.level); n + 1];
        c[n] = Cyc::one(self.level);
        let mut m = Self::zeros(n, n, self.level);
        for k in 1..=n {
            m = &(self * &m) + &Self::identity(n, self.level).scale(&c[n - k + 1]);
            let t = (self * &m).trace();
            c[n - k] = -&t.checked_div(&Cyc::from_int(self.level, k as i64))?;
        }
        Ok(c)
    }

    /// Floating eigenvalues from a complex Schur decomposition; None if the
    /// iteration does not converge.
    pub fn approx_eigenvalues(&self) -> Option<Vec<Complex64>> {
        if !self.is_square() {
            return None;
        }
        let m = DMatrix::from_fn(self.rows, self.cols, |i, j| {
            let (re, im) = self.get(i, j).to_complex();
            Complex64::new(re, im)
        });
        let n = self.rows;
        let schur = |m: DMatrix<Complex64>| {
            Schur::try_new(m, f64::EPSILON, SCHUR_MAX_ITERATIONS)
                .and_then(|s| s.eigenvalues())
                .map(|v| v.iter().copied().collect::<Vec<_>>())
        };
        // Unshifted QR can stall on exactly symmetric input; a fixed
        // unipotent conjugation P A P^{-1} breaks the symmetry.
        schur(m.clone()).or_else(|| {
            let p = DMatrix::from_fn(n, n, |i, j| {
                let v = if i == j {
                    1.0
                } else if j > i {
                    0.5 / (1 + i + 2 * j) as f64
                } else {
                    0.0
                };
                Complex64::new(v, 0.0)
            });
            let pi = p.clone().try_inverse()?;
            schur(p * m * pi)
        })
    }
}

/// Inertia of a hermitian matrix by congruence diagonalization. A nonzero
/// diagonal entry is preferred as pivot; if the active block has zero
/// diagonal but a nonzero entry h_kl, e_k is replaced by e_k + conj(h_kl)e_l,
/// whose norm 2|h_kl|² is positive.
pub fn signature_hermitian(m: &ExactMatrix) -> Result<SignatureTriple> {
    if !m.is_square() {
        return Err(Error::Dimension("signature of a non-square matrix".into()));
    }
    if !m.is_hermitian() {
        return Err(Error::NotStructured("hermitian"));
    }
    Ok(congruence_inertia(m))
}

/// Inertia of a real symmetric matrix.
pub fn signature_symmetric(m: &ExactMatrix) -> Result<SignatureTriple> {
    if !m.is_square() {
        return Err(Error::Dimension("signature of a non-square matrix".into()));
    }
    if !m.is_symmetric() {
        return Err(Error::NotStructured("symmetric"));
    }
    if !m.entries().iter().all(Cyc::is_real) {
        return Err(Error::NotReal);
    }
    Ok(congruence_inertia(m))
}

fn congruence_inertia(m: &ExactMatrix) -> SignatureTriple {
    let n = m.rows();
    let mut h: Vec<Vec<Cyc>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = SignatureTriple::default();
    while !active.is_empty() {
        let diag = active
            .iter()
            .copied()
            .filter(|&k| !h[k][k].is_zero())
            .min_by_key(|&k| h[k][k].height_bits());
        let k = match diag {
            Some(k) => k,
            None => {
                let pair = active.iter().find_map(|&k| {
                    active
                        .iter()
                        .find(|&&l| l != k && !h[k][l].is_zero())
                        .map(|&l| (k, l))
                });
                let Some((k, l)) = pair else {
                    out.null += active.len();
                    break;
                };
                // column k += c·column l, row k += conj(c)·row l, c = conj(h_kl)
                let c = h[k][l].conj();
                let cc = h[k][l].clone();
                for &i in &active {
                    let add = &h[i][l] * &c;
                    h[i][k] += &add;
                }
                for &j in &active {
                    let add = &h[l][j] * &cc;
                    h[k][j] += &add;
                }
                k
            }
        };
        let p = h[k][k].clone();
        match p.real_sign().expect("hermitian diagonal is real") {
            1 => out.pos += 1,
            -1 => out.neg += 1,
            _ => unreachable!("pivot is nonzero"),
        }
        let pinv = p.inv().unwrap();
        active.retain(|&x| x != k);
        let prow = h[k].clone();
        for &i in &active {
            if h[i][k].is_zero() {
                continue;
            }
            let f = &h[i][k] * &pinv;
            for &j in &active {
                if !prow[j].is_zero() {
                    let d = &f * &prow[j];
                    h[i][j] -= &d;
                }
            }
        }
    }
    out
}

macro_rules! matop {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr<&ExactMatrix> for &ExactMatrix {
            type Output = ExactMatrix;
            fn $f(self, rhs: &ExactMatrix) -> ExactMatrix {
                $body(self, rhs)
            }
        }
        impl $tr<ExactMatrix> for ExactMatrix {
            type Output = ExactMatrix;
            fn $f(self, rhs: ExactMatrix) -> ExactMatrix {
                $body(&self, &rhs)
            }
        }
    };
}

matop!(Mul, mul, |a: &ExactMatrix, b: &ExactMatrix| a
    .try_mul(b)
    .expect("dimension mismatch"));
matop!(Add, add, |a: &ExactMatrix, b: &ExactMatrix| a
    .zip_with(b, |x, y| x + y)
    .expect("dimension mismatch"));
matop!(Sub, sub, |a: &ExactMatrix, b: &ExactMatrix| a
    .zip_with(b, |x, y| x - y)
    .expect("dimension mismatch"));

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            level: self.level,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix {}x{} (level {})",
            self.rows, self.cols, self.level
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[Cyc]> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(s)
    }
}
