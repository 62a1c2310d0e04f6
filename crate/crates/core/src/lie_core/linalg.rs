//! Dense row-major matrices over a [`Scalar`] and the row-reduction
//! primitives (rank, kernel, linear solve) everything else is built on.

use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<S = f64> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    /// Builds a matrix from row-major data; `None` on a length mismatch.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<S>) -> Option<Self> {
        (data.len() == rows * cols).then_some(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<S>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_major(&self) -> &[S] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(r, k).clone() * other.get(k, c).clone();
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> Mat<f64> {
        self.map(Scalar::to_f64)
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn max_abs<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(Scalar::magnitude).fold(0.0, f64::max)
}

/// Reduced row echelon form with partial pivoting.
///
/// Returns the nonzero reduced rows and their pivot columns. Entries whose
/// magnitude is negligible are treated as zero when picking pivots.
pub fn rref<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..ncols {
        if lead >= m.len() {
            break;
        }
        let best = (lead..m.len())
            .filter(|&r| !m[r][col].is_negligible())
            .max_by(|&a, &b| {
                m[a][col]
                    .magnitude()
                    .partial_cmp(&m[b][col].magnitude())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(p) = best else {
            for row in m.iter_mut().skip(lead) {
                row[col] = S::zero();
            }
            continue;
        };
        m.swap(lead, p);
        let pv = m[lead][col].clone();
        for v in m[lead].iter_mut() {
            *v = v.clone() / pv.clone();
        }
        m[lead][col] = S::one();
        for r in 0..m.len() {
            if r == lead || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..ncols {
                let sub = f.clone() * m[lead][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
            m[r][col] = S::zero();
        }
        pivots.push(col);
        lead += 1;
    }
    m.truncate(lead);
    (m, pivots)
}

pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows.
pub fn kernel<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let (r, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![S::zero(); ncols];
            x[f] = S::one();
            for (row, &pc) in r.iter().zip(&pivots) {
                x[pc] = -row[f].clone();
            }
            x
        })
        .collect()
}

/// One solution of `A x = b`, free variables set to zero; `None` if the
/// system is inconsistent.
pub fn solve<S: Scalar>(rows: &[Vec<S>], rhs: &[S], ncols: usize) -> Option<Vec<S>> {
    let aug: Vec<Vec<S>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let (r, pivots) = rref(&aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![S::zero(); ncols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}
