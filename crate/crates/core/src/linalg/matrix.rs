use std::fmt;

use super::ring::RingSpec;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`RingSpec`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: &RingSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &RingSpec, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn from_fn(ring: &RingSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds from rows; all rows must have length `cols`.
    pub fn from_rows(ring: &RingSpec, rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("expected a {rows}x{cols} matrix")));
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: entries.into_iter().flatten().collect(),
        })
    }

    /// Small integer matrices, mostly for tests and examples.
    pub fn from_i64(ring: &RingSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Self::from_fn(ring, r, c, |i, j| ring.from_i64(rows[i][j]))
    }

    pub fn from_columns(ring: &RingSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        Self::from_fn(ring, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column_vector(ring: &RingSpec, v: Vec<Scalar>) -> Self {
        Matrix {
            ring: ring.clone(),
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    fn same_shape(&self, other: &Matrix, op: &str) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{op}: {} vs {}", self.ring, other.ring)));
        }
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "add")?;
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| self.ring.add(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "sub")?;
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| self.ring.sub(a, b))
                .collect(),
        })
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| self.ring.neg(x))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        self.map(|x| self.ring.mul(c, x))
    }

    fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("mul: {} vs {}", self.ring, other.ring)));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = &self.ring;
        let mut out = Matrix::zeros(ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = ring.add(&out.data[idx], &ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.ring != other.ring {
            return Err(Error::ShapeMismatch("hstack: row counts differ".into()));
        }
        Ok(Self::from_fn(&self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols || self.ring != other.ring {
            return Err(Error::ShapeMismatch("vstack: column counts differ".into()));
        }
        Ok(Self::from_fn(&self.ring, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        }))
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Self::from_fn(&self.ring, rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Self::from_fn(&self.ring, self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    /// Entrywise image in `target` along [`RingSpec::embed`].
    pub fn base_change(&self, target: &RingSpec) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|x| self.ring.embed(x, target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Substitutes `point` (name → base-field value) into a polynomial matrix.
    pub fn evaluate(&self, point: &[(String, Scalar)]) -> Result<Matrix> {
        let base = match self.ring.kind() {
            super::RingKind::Polynomial { base, .. } => base.clone(),
            _ => {
                return Err(Error::UnsupportedRing(format!(
                    "evaluate needs a polynomial ring, got {}",
                    self.ring
                )))
            }
        };
        let values = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                point
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, x)| x.clone())
                    .ok_or_else(|| Error::MissingVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring: base,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| self.ring.evaluate(x, &values)).collect(),
        })
    }

    /// Entrywise constant term, landing in the base ring. Identity on fields.
    pub fn reduce(&self) -> Matrix {
        let target = self
            .ring
            .base()
            .filter(|_| !self.ring.is_field())
            .unwrap_or(&self.ring)
            .clone();
        Matrix {
            data: self.data.iter().map(|x| self.ring.reduce(x)).collect(),
            ring: target,
            rows: self.rows,
            cols: self.cols,
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}[", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| super::text::render(&self.ring, x)).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
