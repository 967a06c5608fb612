use alloc::vec::Vec;
use core::fmt;

use super::{AlgebraError, Bindings, GaussianRational, LaurentPoly};

/// Dense square matrix of Laurent polynomials, indexed from 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zero(dim: usize) -> Self {
        PolyMatrix { dim, entries: alloc::vec![LaurentPoly::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    /// Builds from rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::NotSquare);
        }
        Ok(PolyMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[i * self.dim + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// `(row, col, entry)` for all nonzero entries, row-major.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &LaurentPoly)> {
        self.entries.iter().enumerate().filter(|(_, p)| !p.is_zero()).map(move |(k, p)| (k / self.dim, k % self.dim, p))
    }

    pub fn checked_mul(&self, o: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.dim != o.dim {
            return Err(AlgebraError::DimensionMismatch(self.dim, o.dim));
        }
        let n = self.dim;
        let mut out = PolyMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let prod = a * b;
                        *out.get_mut(i, j) += &prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.dim != o.dim {
            return Err(AlgebraError::DimensionMismatch(self.dim, o.dim));
        }
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect();
        Ok(PolyMatrix { dim: self.dim, entries })
    }

    pub fn checked_add(&self, o: &PolyMatrix) -> Result<PolyMatrix, AlgebraError> {
        if self.dim != o.dim {
            return Err(AlgebraError::DimensionMismatch(self.dim, o.dim));
        }
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix { dim: self.dim, entries })
    }

    pub fn scale(&self, c: &GaussianRational) -> PolyMatrix {
        PolyMatrix { dim: self.dim, entries: self.entries.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> PolyMatrix {
        PolyMatrix { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map<E>(&self, f: impl Fn(&LaurentPoly) -> Result<LaurentPoly, E>) -> Result<PolyMatrix, E> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(PolyMatrix { dim: self.dim, entries })
    }

    pub fn substitute(&self, b: &Bindings) -> Result<PolyMatrix, AlgebraError> {
        self.try_map(|p| p.substitute(b))
    }

    /// `self − c·Id`.
    pub fn shift_diagonal(&self, c: &LaurentPoly) -> PolyMatrix {
        let mut m = self.clone();
        for i in 0..self.dim {
            *m.get_mut(i, i) -= c;
        }
        m
    }

    /// Determinant by fraction-free elimination; falls back to minor expansion
    /// if an exact division fails.
    pub fn determinant(&self) -> LaurentPoly {
        self.determinant_bareiss().unwrap_or_else(|| self.determinant_by_minors())
    }

    /// Bareiss elimination with row pivoting on the sparsest candidate.
    /// `None` if an intermediate exact division fails.
    pub fn determinant_bareiss(&self) -> Option<LaurentPoly> {
        let n = self.dim;
        if n == 0 {
            return Some(LaurentPoly::one());
        }
        let mut a: Vec<Vec<LaurentPoly>> = (0..n).map(|i| self.entries[i * n..(i + 1) * n].to_vec()).collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            let pivot = (k..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].len());
            let Some(p) = pivot else {
                return Some(LaurentPoly::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = num.exact_div(&prev)?;
                }
                a[i][k] = LaurentPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Some(if negate { -d } else { d })
    }

    /// Laplace expansion along rows with memoised minors over column subsets.
    pub fn determinant_by_minors(&self) -> LaurentPoly {
        let n = self.dim;
        assert!(n < 24, "minor expansion limited to dimension < 24");
        if n == 0 {
            return LaurentPoly::one();
        }
        let full = (1usize << n) - 1;
        let mut memo: Vec<Option<LaurentPoly>> = alloc::vec![None; 1 << n];
        memo[0] = Some(LaurentPoly::one());
        // masks in order of popcount; the minor on columns `mask` uses the last popcount rows
        let mut by_size: Vec<Vec<usize>> = alloc::vec![Vec::new(); n + 1];
        for mask in 1..=full {
            by_size[mask.count_ones() as usize].push(mask);
        }
        for (size, masks) in by_size.iter().enumerate().skip(1) {
            let row = n - size;
            for &mask in masks {
                let mut acc = LaurentPoly::zero();
                let mut pos = 0;
                for j in 0..n {
                    if mask & (1 << j) == 0 {
                        continue;
                    }
                    let a = self.get(row, j);
                    if !a.is_zero() {
                        let sub = memo[mask & !(1 << j)].as_ref().expect("smaller minors computed first");
                        if !sub.is_zero() {
                            let t = a * sub;
                            if pos % 2 == 0 {
                                acc += &t;
                            } else {
                                acc -= &t;
                            }
                        }
                    }
                    pos += 1;
                }
                memo[mask] = Some(acc);
            }
        }
        memo[full].take().expect("full minor")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j, p) in self.nonzero_entries() {
            writeln!(f, "({},{}) {}", i + 1, j + 1, p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Var;

    fn v(x: Var) -> LaurentPoly {
        LaurentPoly::var(x)
    }

    #[test]
    fn two_by_two() {
        let (a, b, c, d) = (v(Var::X(1)), v(Var::X(2)), v(Var::Z(1)), v(Var::Z(2)));
        let m = PolyMatrix::from_rows(alloc::vec![alloc::vec![a.clone(), b.clone()], alloc::vec![c.clone(), d.clone()]]).unwrap();
        let expect = &a * &d - &b * &c;
        assert_eq!(m.determinant(), expect);
        assert_eq!(m.determinant_by_minors(), expect);
    }

    #[test]
    fn identity_det() {
        assert_eq!(PolyMatrix::identity(8).determinant(), LaurentPoly::one());
        assert_eq!(PolyMatrix::identity(8).determinant_by_minors(), LaurentPoly::one());
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let one = LaurentPoly::one;
        let z = LaurentPoly::zero;
        let m = PolyMatrix::from_rows(alloc::vec![
            alloc::vec![z(), one(), z()],
            alloc::vec![one(), z(), z()],
            alloc::vec![z(), z(), v(Var::U)],
        ])
        .unwrap();
        assert_eq!(m.determinant(), -v(Var::U));
    }

    #[test]
    fn dimension_mismatch() {
        let e = PolyMatrix::identity(2).checked_mul(&PolyMatrix::identity(3)).unwrap_err();
        assert_eq!(e, AlgebraError::DimensionMismatch(2, 3));
    }
}
