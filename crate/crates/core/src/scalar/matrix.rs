//! Dense matrices over a [`Field`] with exact determinant and rank.

use std::fmt;

use super::field::{Field, FieldElement};
use super::ScalarError;

#[derive(Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    /// Row-major entries; all must lie in one field.
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self, ScalarError> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(ScalarError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| !x.same_field(&data[0])) {
            return Err(ScalarError::FieldMismatch(
                data[0].backend_name().into(),
                bad.backend_name().into(),
            ));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Result<Self, ScalarError> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix, ScalarError> {
        if self.cols != rhs.rows {
            return Err(ScalarError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let zero = self.data[0].zero_like();
        let mut out = vec![zero; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let slot = &mut out[i * rhs.cols + j];
                        *slot = slot.try_add(&a.try_mul(b)?)?;
                    }
                }
            }
        }
        Matrix::new(self.rows, rhs.cols, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Rows and columns reordered: entry `(i, j)` of the result is
    /// `self[row_order[i], col_order[j]]`.
    pub fn permuted(&self, row_order: &[usize], col_order: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(row_order.len() * col_order.len());
        for &r in row_order {
            for &c in col_order {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: row_order.len(),
            cols: col_order.len(),
            data,
        }
    }

    /// `Some(m)` iff the matrix is exactly `m · id`.
    pub fn is_scalar_matrix(&self) -> Option<FieldElement> {
        if !self.is_square() {
            return None;
        }
        let m = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                let ok = if i == j { *x == m } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(m)
    }

    /// Determinant. Exact backends use fraction-free (Bareiss) elimination;
    /// the complex backend uses partial pivoting. The matrix is first split
    /// into the connected components of its nonzero pattern, so permuted
    /// block-diagonal matrices cost no more than their blocks.
    pub fn det(&self) -> Result<FieldElement, ScalarError> {
        if !self.is_square() {
            return Err(ScalarError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let blocks = self.components();
        let mut row_order = Vec::with_capacity(self.rows);
        let mut col_order = Vec::with_capacity(self.cols);
        let mut det = self.data[0].one_like();
        for (rs, cs) in &blocks {
            if rs.len() != cs.len() {
                return Ok(self.data[0].zero_like());
            }
            row_order.extend_from_slice(rs);
            col_order.extend_from_slice(cs);
            let sub = self.permuted(rs, cs);
            let d = if sub.data[0].is_exact() {
                sub.bareiss_det()?
            } else {
                sub.pivoting_det()?
            };
            if d.is_zero() {
                return Ok(d);
            }
            det = det.try_mul(&d)?;
        }
        if permutation_parity(&row_order) != permutation_parity(&col_order) {
            det = det.neg();
        }
        Ok(det)
    }

    /// Groups rows and columns linked by nonzero entries. Empty rows or
    /// columns become their own (non-square) components.
    fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.rows + self.cols;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    let a = find(&mut parent, i);
                    let b = find(&mut parent, self.rows + j);
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> =
            Default::default();
        for v in 0..n {
            let root = find(&mut parent, v);
            let g = groups.entry(root).or_default();
            if v < self.rows {
                g.0.push(v);
            } else {
                g.1.push(v - self.rows);
            }
        }
        groups.into_values().collect()
    }

    fn bareiss_det(&self) -> Result<FieldElement, ScalarError> {
        let n = self.rows;
        let mut a = self.data.clone();
        let mut prev = a[0].one_like();
        let mut negate = false;
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Ok(a[0].zero_like());
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                let aik = a[i * n + k].clone();
                for j in k + 1..n {
                    let t = if aik.is_zero() {
                        &pivot * &a[i * n + j]
                    } else {
                        &(&pivot * &a[i * n + j]) - &(&aik * &a[k * n + j])
                    };
                    a[i * n + j] = t.try_div(&prev)?;
                }
                a[i * n + k] = aik.zero_like();
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    fn pivoting_det(&self) -> Result<FieldElement, ScalarError> {
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = a[0].one_like();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| {
                    let mx = a[x * n + k].modulus().unwrap_or(0.0);
                    let my = a[y * n + k].modulus().unwrap_or(0.0);
                    mx.total_cmp(&my)
                })
                .expect("nonempty range");
            if a[p * n + k].is_zero() {
                return Ok(a[0].zero_like());
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = det.neg();
            }
            let pivot = a[k * n + k].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let f = &a[i * n + k] * &inv;
                for j in k + 1..n {
                    let t = &f * &a[k * n + j];
                    a[i * n + j] = &a[i * n + j] - &t;
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix, ScalarError> {
        if !self.is_square() {
            return Err(ScalarError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let w = 2 * n;
        let one = self.data[0].one_like();
        let zero = self.data[0].zero_like();
        let mut a = Vec::with_capacity(n * w);
        for i in 0..n {
            a.extend_from_slice(&self.data[i * n..(i + 1) * n]);
            for j in 0..n {
                a.push(if i == j { one.clone() } else { zero.clone() });
            }
        }
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| {
                    let mx = a[x * w + k].modulus().unwrap_or(0.0);
                    let my = a[y * w + k].modulus().unwrap_or(0.0);
                    mx.total_cmp(&my)
                })
                .filter(|&p| !a[p * w + k].is_zero())
                .or_else(|| (k..n).find(|&i| !a[i * w + k].is_zero()))
                .ok_or(ScalarError::DivisionByZero)?;
            for j in 0..w {
                a.swap(k * w + j, p * w + j);
            }
            let inv = a[k * w + k].inv()?;
            for j in 0..w {
                a[k * w + j] = &a[k * w + j] * &inv;
            }
            for i in 0..n {
                if i == k || a[i * w + k].is_zero() {
                    continue;
                }
                let f = a[i * w + k].clone();
                for j in 0..w {
                    let t = &f * &a[k * w + j];
                    a[i * w + j] = &a[i * w + j] - &t;
                }
            }
        }
        let data = (0..n)
            .flat_map(|i| a[i * w + n..(i + 1) * w].to_vec())
            .collect();
        Matrix::new(n, n, data)
    }

    /// Rank by row echelon form with field division. Exact for exact
    /// backends; in the complex backend entries below the tolerance of
    /// [`FieldElement::is_negligible`] (relative to the largest entry) count
    /// as zero.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let scale = a.iter().filter_map(|x| x.modulus()).fold(1.0f64, f64::max);
        let zero = |x: &FieldElement| x.is_negligible(scale);
        let mut r = 0;
        for col in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !zero(&a[i * cols + col])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    a.swap(r * cols + j, p * cols + j);
                }
            }
            let inv = a[r * cols + col].inv().expect("nonzero pivot");
            for i in r + 1..rows {
                if zero(&a[i * cols + col]) {
                    continue;
                }
                let f = &a[i * cols + col] * &inv;
                for j in col + 1..cols {
                    if a[r * cols + j].is_zero() {
                        continue;
                    }
                    let t = &f * &a[r * cols + j];
                    a[i * cols + j] = &a[i * cols + j] - &t;
                }
                a[i * cols + col] = f.zero_like();
            }
            r += 1;
        }
        r
    }
}

/// `true` for odd permutations.
fn permutation_parity(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

impl fmt::Display for Matrix {
    /// One row per line, entries separated by tabs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join("\t"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{self}", self.rows, self.cols)
    }
}
