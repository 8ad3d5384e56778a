//! Dense matrices over a finite field and Gaussian elimination.

use crate::field::{FieldElement, FiniteField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[FieldElement]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    /// Keeps only the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (t, &c) in cols.iter().enumerate() {
                out.set(r, t, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|&r| self.row(r).to_vec()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot
    /// columns; their count is the rank.
    pub fn row_reduce(&mut self, field: &FiniteField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(lead, p);
            let inv = field.inv(self.get(lead, c)).expect("nonzero pivot");
            for cc in c..self.cols {
                let v = field.mul(self.get(lead, cc), inv);
                self.set(lead, cc, v);
            }
            for r in 0..self.rows {
                if r == lead {
                    continue;
                }
                let factor = self.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for cc in c..self.cols {
                    let v = field.sub(self.get(r, cc), field.mul(factor, self.get(lead, cc)));
                    self.set(r, cc, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &FiniteField) -> usize {
        self.clone().row_reduce(field).len()
    }

    /// Nonzero rows of the reduced row echelon form.
    pub fn row_space_basis(&self, field: &FiniteField) -> Matrix {
        let mut m = self.clone();
        let rank = m.row_reduce(field).len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        m
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, field: &FiniteField, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![FieldElement::ZERO; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.row(r)) {
                *o = field.add(*o, field.mul(coef, g));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn right_mul(&self, field: &FiniteField, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        self.iter_rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self, field: &FiniteField) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, FieldElement::ONE);
        }
        let pivots = aug.row_reduce(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(aug.select_columns(&cols))
    }
}

/// Solves the square system `a · x = b`; `None` when `a` is singular.
pub fn solve(field: &FiniteField, a: &Matrix, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "solve needs a square matrix");
    assert_eq!(n, b.len());
    let mut aug = Matrix::zeros(n, n + 1);
    for (r, &rhs) in b.iter().enumerate() {
        for c in 0..n {
            aug.set(r, c, a.get(r, c));
        }
        aug.set(r, n, rhs);
    }
    let pivots = aug.row_reduce(field);
    if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some((0..n).map(|r| aug.get(r, n)).collect())
}
