use std::collections::HashMap;
use std::fmt;

use super::{parse_poly, Poly, PolyError, Rat, VarSet};

/// Dense matrix of polynomials over a common [`VarSet`], row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: VarSet,
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(vars: &VarSet, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            data: vec![Poly::zero(vars); rows * cols],
        }
    }

    pub fn identity(vars: &VarSet, n: usize) -> Self {
        PolyMatrix::scalar(vars, n, &Poly::one(vars))
    }

    pub fn scalar(vars: &VarSet, n: usize, c: &Poly) -> Self {
        let mut m = PolyMatrix::zeros(vars, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(vars: &VarSet, rows: Vec<Vec<Poly>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(PolyError::ShapeMismatch);
            }
            for p in row {
                if p.vars() != vars {
                    return Err(PolyError::VarSetMismatch {
                        left: vars.names().join(","),
                        right: p.vars().names().join(","),
                    });
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            vars: vars.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn parse<R: AsRef<[S]>, S: AsRef<str>>(rows: &[R], vars: &VarSet) -> Result<Self, PolyError> {
        let rows = rows
            .iter()
            .map(|row| row.as_ref().iter().map(|s| parse_poly(s.as_ref(), vars)).collect())
            .collect::<Result<Vec<Vec<Poly>>, _>>()?;
        PolyMatrix::from_rows(vars, rows)
    }

    /// `f(i, j)` for every entry.
    pub fn from_fn(vars: &VarSet, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Poly) -> Self {
        let mut m = PolyMatrix::zeros(vars, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[Poly] {
        &self.data
    }

    pub fn row_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    /// Some(c) when the matrix is `c * I`.
    pub fn scalar_value(&self) -> Option<Poly> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 {
            Poly::zero(&self.vars)
        } else {
            self.get(0, 0).clone()
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let want = if i == j { &c } else { &Poly::zero(&self.vars) };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        let data: Vec<Poly> = self.data.iter().map(f).collect();
        let vars = data.first().map_or(self.vars.clone(), |p| p.vars().clone());
        PolyMatrix {
            vars,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn embed(&self, target: &VarSet) -> Result<PolyMatrix, PolyError> {
        let data = self
            .data
            .iter()
            .map(|p| p.embed(target))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix {
            vars: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Evaluates every entry; the result lives over the unbound variables.
    pub fn evaluate(&self, bindings: &[(&str, Rat)]) -> Result<PolyMatrix, PolyError> {
        let data = self
            .data
            .iter()
            .map(|p| p.evaluate(bindings))
            .collect::<Result<Vec<_>, _>>()?;
        let vars = match data.first() {
            Some(p) => p.vars().clone(),
            None => {
                let names: Vec<&String> = self
                    .vars
                    .names()
                    .iter()
                    .filter(|n| !bindings.iter().any(|(b, _)| b == n))
                    .collect();
                VarSet::new(names.into_iter().cloned())?
            }
        };
        Ok(PolyMatrix {
            vars,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.vars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn try_add(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(PolyError::ShapeMismatch);
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMatrix { data, ..self.clone() })
    }

    pub fn try_sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.try_add(&other.scale(&Poly::int(&self.vars, -1)))
    }

    pub fn try_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::ShapeMismatch);
        }
        self.vars.check(&other.vars)?;
        let mut out = PolyMatrix::zeros(&self.vars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(&self.vars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Poly) -> PolyMatrix {
        PolyMatrix {
            data: self.data.iter().map(|p| p * c).collect(),
            ..self.clone()
        }
    }

    /// `self*other - other*self`.
    pub fn commutator(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn pow(&self, e: u32) -> Result<PolyMatrix, PolyError> {
        if !self.is_square() {
            return Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = PolyMatrix::identity(&self.vars, self.rows);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Determinant by Laplace expansion along rows, memoized on column subsets.
    pub fn det(&self) -> Result<Poly, PolyError> {
        if !self.is_square() {
            return Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        assert!(self.rows <= 63, "matrix too large for subset memoization");
        let full: u64 = if self.rows == 0 { 0 } else { (1u64 << self.rows) - 1 };
        let mut memo = HashMap::new();
        Ok(self.minor_det(0, full, &mut memo))
    }

    fn minor_det(&self, row: usize, cols: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
        if row == self.rows {
            return Poly::one(&self.vars);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Poly::zero(&self.vars);
        let mut sign = 1i64;
        for j in 0..self.cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero() {
                let sub = self.minor_det(row + 1, cols & !(1 << j), memo);
                if !sub.is_zero() {
                    let t = a * &sub;
                    acc = if sign > 0 { &acc + &t } else { &acc - &t };
                }
            }
            sign = -sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// `det(var*I - self)` over this matrix's variables followed by `var`.
    pub fn char_poly(&self, var: &str) -> Result<Poly, PolyError> {
        if !self.is_square() {
            return Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.vars.contains(var) {
            return Err(PolyError::VariableCollision(var.to_string()));
        }
        let ext = self.vars.extend([var])?;
        let t = Poly::var(&ext, var)?;
        let m = self.embed(&ext)?;
        PolyMatrix::scalar(&ext, self.rows, &t).try_sub(&m)?.det()
    }

    /// Block-diagonal assembly.
    pub fn block_diag(vars: &VarSet, blocks: &[PolyMatrix]) -> PolyMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = PolyMatrix::zeros(vars, n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j).clone());
                }
            }
            off += b.rows;
        }
        m
    }
}

/// Rank of a dense rational matrix by Gaussian elimination.
pub fn rank_rat(rows: &[Vec<Rat>]) -> usize {
    use num_traits::Zero;
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][col].recip();
        let pivot = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] * &inv;
            for (a, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *a -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

impl PolyMatrix {
    /// Entries as rationals, when every entry is constant.
    pub fn to_rat_rows(&self) -> Option<Vec<Vec<Rat>>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).as_constant()).collect())
            .collect()
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.row_strings()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_vandermonde() {
        let v = VarSet::new(["a", "b", "c"]).unwrap();
        let m = PolyMatrix::parse(&[["1", "a", "a^2"], ["1", "b", "b^2"], ["1", "c", "c^2"]], &v).unwrap();
        let want = parse_poly("(b-a)*(c-a)*(c-b)", &v).unwrap();
        assert_eq!(m.det().unwrap(), want);
    }

    #[test]
    fn commutator_of_elementary() {
        let v = VarSet::empty();
        let a = PolyMatrix::parse(&[["0", "1"], ["0", "0"]], &v).unwrap();
        let b = PolyMatrix::parse(&[["0", "0"], ["1", "0"]], &v).unwrap();
        let c = a.commutator(&b).unwrap();
        assert_eq!(c, PolyMatrix::parse(&[["1", "0"], ["0", "-1"]], &v).unwrap());
    }
}
