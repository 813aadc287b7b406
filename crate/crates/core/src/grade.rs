//! Z2-graded linear algebra over the rational-function field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{FieldError, RationalFunction, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradeError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A Z2-graded vector space given by the parity of each basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    parity: Vec<u8>,
}

impl GradedSpace {
    pub fn new(parity: Vec<u8>) -> Self {
        assert!(!parity.is_empty(), "graded space must be nonzero");
        assert!(parity.iter().all(|&p| p < 2));
        GradedSpace { parity }
    }

    /// The defining space of gl(1|1): one even then one odd basis vector.
    pub fn gl11() -> Self {
        GradedSpace::new(vec![0, 1])
    }

    /// The one-dimensional even space.
    pub fn trivial() -> Self {
        GradedSpace::new(vec![0])
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parity[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    /// Tensor product with row-major basis order: `(i, k) ↦ i * dim(other) + k`.
    pub fn tensor(&self, other: &GradedSpace) -> GradedSpace {
        let mut parity = Vec::with_capacity(self.dim() * other.dim());
        for &p in &self.parity {
            for &q in &other.parity {
                parity.push((p + q) % 2);
            }
        }
        GradedSpace { parity }
    }
}

fn sign(e: u8) -> bool {
    e % 2 == 1
}

/// A sparse matrix of rational functions between graded spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    rows: GradedSpace,
    cols: GradedSpace,
    entries: BTreeMap<(usize, usize), RationalFunction>,
}

impl GradedMatrix {
    pub fn zero(rows: GradedSpace, cols: GradedSpace) -> Self {
        GradedMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn zero_square(space: &GradedSpace) -> Self {
        Self::zero(space.clone(), space.clone())
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let mut m = Self::zero_square(space);
        for i in 0..space.dim() {
            m.entries.insert((i, i), RationalFunction::one());
        }
        m
    }

    /// Matrix unit `E_ij` on a square space.
    pub fn unit(space: &GradedSpace, i: usize, j: usize) -> Self {
        let mut m = Self::zero_square(space);
        m.set(i, j, RationalFunction::one());
        m
    }

    pub fn from_rows(space: &GradedSpace, rows: Vec<Vec<RationalFunction>>) -> Self {
        assert_eq!(rows.len(), space.dim());
        let mut m = Self::zero_square(space);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), space.dim());
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn diagonal(space: &GradedSpace, diag: Vec<RationalFunction>) -> Self {
        assert_eq!(diag.len(), space.dim());
        let mut m = Self::zero_square(space);
        for (i, x) in diag.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn scalar(space: &GradedSpace, x: RationalFunction) -> Self {
        Self::diagonal(space, vec![x; space.dim()])
    }

    pub fn rows(&self) -> &GradedSpace {
        &self.rows
    }

    pub fn cols(&self) -> &GradedSpace {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.dim()
    }

    pub fn ncols(&self) -> usize {
        self.cols.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> RationalFunction {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&RationalFunction> {
        self.entries.get(&(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, x: RationalFunction) {
        assert!(i < self.nrows() && j < self.ncols(), "index out of range");
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RationalFunction)> {
        self.entries.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.entries.len() == self.nrows()
            && self.entries.iter().all(|(&(i, j), x)| i == j && x.is_one())
    }

    /// The parity of a homogeneous matrix, `None` if it mixes parities.
    /// The zero matrix counts as even.
    pub fn parity(&self) -> Option<u8> {
        let mut out = None;
        for &(i, j) in self.entries.keys() {
            let p = (self.rows.parity(i) + self.cols.parity(j)) % 2;
            match out {
                None => out = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or(0))
    }

    pub fn map<F>(&self, mut f: F) -> Result<GradedMatrix, FieldError>
    where
        F: FnMut(&RationalFunction) -> Result<RationalFunction, FieldError>,
    {
        let mut out = GradedMatrix::zero(self.rows.clone(), self.cols.clone());
        for (&(i, j), x) in &self.entries {
            out.set(i, j, f(x)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, bindings: &[(Var, RationalFunction)]) -> Result<GradedMatrix, FieldError> {
        self.map(|x| x.substitute(bindings))
    }

    pub fn scale(&self, c: &RationalFunction) -> GradedMatrix {
        let mut out = GradedMatrix::zero(self.rows.clone(), self.cols.clone());
        if c.is_zero() {
            return out;
        }
        for (&k, x) in &self.entries {
            let y = x * c;
            out.entries.insert(k, y);
        }
        out
    }

    pub fn checked_add(&self, rhs: &GradedMatrix) -> Result<GradedMatrix, GradeError> {
        if self.nrows() != rhs.nrows() || self.ncols() != rhs.ncols() {
            return Err(GradeError::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let mut out = self.clone();
        for (&(i, j), x) in &rhs.entries {
            let y = &out.get(i, j) + x;
            out.set(i, j, y);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &GradedMatrix) -> Result<GradedMatrix, GradeError> {
        if self.ncols() != rhs.nrows() {
            return Err(GradeError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.nrows(),
                self.ncols(),
                rhs.nrows(),
                rhs.ncols()
            )));
        }
        let mut acc: BTreeMap<(usize, usize), RationalFunction> = BTreeMap::new();
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in rhs.entries.range((k, 0)..(k + 1, 0)) {
                let t = a * b;
                let e = acc.entry((i, j)).or_default();
                *e = &*e + &t;
            }
        }
        acc.retain(|_, x| !x.is_zero());
        Ok(GradedMatrix {
            rows: self.rows.clone(),
            cols: rhs.cols.clone(),
            entries: acc,
        })
    }

    pub fn transpose(&self) -> GradedMatrix {
        GradedMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            entries: self.entries.iter().map(|(&(i, j), x)| ((j, i), x.clone())).collect(),
        }
    }

    /// `(st M)_ij = (-1)^(p(i)+p(j)) M_ji`.
    pub fn super_transpose(&self) -> GradedMatrix {
        let mut out = GradedMatrix::zero(self.cols.clone(), self.rows.clone());
        for (&(i, j), x) in &self.entries {
            let s = self.rows.parity(i) + self.cols.parity(j);
            out.entries.insert((j, i), if sign(s) { -x } else { x.clone() });
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<GradedMatrix, GradeError> {
        let n = self.nrows();
        if n != self.ncols() {
            return Err(GradeError::DimensionMismatch(format!(
                "inverse of {}x{}",
                n,
                self.ncols()
            )));
        }
        let mut a: Vec<Vec<RationalFunction>> =
            (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect();
        let mut b: Vec<Vec<RationalFunction>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { RationalFunction::one() } else { RationalFunction::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(GradeError::Singular)?;
            a.swap(col, pivot);
            b.swap(col, pivot);
            let inv = a[col][col].inv()?;
            for j in 0..n {
                if !a[col][j].is_zero() {
                    a[col][j] = &a[col][j] * &inv;
                }
                if !b[col][j].is_zero() {
                    b[col][j] = &b[col][j] * &inv;
                }
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                    }
                    if !b[col][j].is_zero() {
                        b[r][j] = &b[r][j] - &(&f * &b[col][j]);
                    }
                }
            }
        }
        let mut out = GradedMatrix::zero(self.cols.clone(), self.rows.clone());
        for (i, row) in b.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok(out)
    }

    /// First entry (row-major) where the two matrices differ.
    pub fn first_difference(&self, other: &GradedMatrix) -> Option<(usize, usize)> {
        let d = self - other;
        d.entries.keys().next().copied()
    }

    /// Dense grid of canonical entry strings.
    pub fn render_grid(&self) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

/// Graded Kronecker product, `(A⊗B)_{(ik),(jl)} = (-1)^{p(k)(p(i)+p(j))} A_ij B_kl`.
pub fn graded_kron(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    let rows = a.rows.tensor(&b.rows);
    let cols = a.cols.tensor(&b.cols);
    let (nb, mb) = (b.nrows(), b.ncols());
    let mut out = GradedMatrix::zero(rows, cols);
    for (&(i, j), x) in &a.entries {
        let pij = a.rows.parity(i) + a.cols.parity(j);
        for (&(k, l), y) in &b.entries {
            let t = x * y;
            let t = if sign(b.rows.parity(k) * pij) { -t } else { t };
            out.entries.insert((i * nb + k, j * mb + l), t);
        }
    }
    out
}

/// Ungraded Kronecker product.
pub fn kron(a: &GradedMatrix, b: &GradedMatrix) -> GradedMatrix {
    let rows = a.rows.tensor(&b.rows);
    let cols = a.cols.tensor(&b.cols);
    let (nb, mb) = (b.nrows(), b.ncols());
    let mut out = GradedMatrix::zero(rows, cols);
    for (&(i, j), x) in &a.entries {
        for (&(k, l), y) in &b.entries {
            out.entries.insert((i * nb + k, j * mb + l), x * y);
        }
    }
    out
}

/// The super permutation `x⊗y ↦ (-1)^{p(x)p(y)} y⊗x` on `V⊗V`.
pub fn super_permutation(space: &GradedSpace) -> GradedMatrix {
    let n = space.dim();
    let vv = space.tensor(space);
    let mut out = GradedMatrix::zero_square(&vv);
    for a in 0..n {
        for b in 0..n {
            let s = space.parity(a) * space.parity(b);
            let x = RationalFunction::from_int(if sign(s) { -1 } else { 1 });
            out.set(b * n + a, a * n + b, x);
        }
    }
    out
}

/// The diagonal twist `η_{(ik),(ik)} = (-1)^{p(i)p(k)}` on `V⊗V`.
pub fn eta_twist(space: &GradedSpace) -> GradedMatrix {
    let n = space.dim();
    let vv = space.tensor(space);
    let diag = (0..n * n)
        .map(|ik| {
            let s = space.parity(ik / n) * space.parity(ik % n);
            RationalFunction::from_int(if sign(s) { -1 } else { 1 })
        })
        .collect();
    GradedMatrix::diagonal(&vv, diag)
}

impl Add for &GradedMatrix {
    type Output = GradedMatrix;
    fn add(self, rhs: &GradedMatrix) -> GradedMatrix {
        self.checked_add(rhs).expect("matrix dimensions agree")
    }
}

impl Neg for &GradedMatrix {
    type Output = GradedMatrix;
    fn neg(self) -> GradedMatrix {
        GradedMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self.entries.iter().map(|(&k, x)| (k, -x)).collect(),
        }
    }
}

impl Sub for &GradedMatrix {
    type Output = GradedMatrix;
    fn sub(self, rhs: &GradedMatrix) -> GradedMatrix {
        self + &(-rhs)
    }
}

impl Mul for &GradedMatrix {
    type Output = GradedMatrix;
    fn mul(self, rhs: &GradedMatrix) -> GradedMatrix {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Display for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let grid = self.render_grid();
        let width = grid.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for row in &grid {
            let cells: Vec<String> = row.iter().map(|s| format!("{:>width$}", s)).collect();
            writeln!(f, "[ {} ]", cells.join("  "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> GradedSpace {
        GradedSpace::gl11()
    }

    #[test]
    fn identity_tensor_identity() {
        let i = GradedMatrix::identity(&v());
        assert!(graded_kron(&i, &i).is_identity());
    }

    #[test]
    fn odd_units_pick_up_a_sign() {
        let a = GradedMatrix::unit(&v(), 0, 1);
        let b = GradedMatrix::unit(&v(), 1, 0);
        let k = graded_kron(&a, &b);
        assert_eq!(k.nnz(), 1);
        let (_, _, x) = k.entries().next().unwrap();
        assert_eq!(*x, RationalFunction::from_int(-1));
    }

    #[test]
    fn super_permutation_matches_display() {
        let p = super_permutation(&v());
        let want = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]];
        for (i, row) in want.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(p.get(i, j), RationalFunction::from_int(x));
            }
        }
        assert!((&p * &p).is_identity());
    }

    #[test]
    fn super_permutation_on_basis_vectors() {
        let p = super_permutation(&v());
        // e1⊗e2 is basis index 1, e2⊗e1 is 2, e2⊗e2 is 3
        assert_eq!(p.get(2, 1), RationalFunction::one());
        assert_eq!(p.get(3, 3), RationalFunction::from_int(-1));
    }

    #[test]
    fn eta_entries() {
        let eta = eta_twist(&v());
        assert_eq!(eta.get(3, 3), RationalFunction::from_int(-1));
        assert_eq!(eta.get(1, 1), RationalFunction::one());
        assert!((&eta * &eta).is_identity());
    }

    #[test]
    fn super_transpose_rules() {
        let d = GradedMatrix::diagonal(&v(), vec![Var::U.into(), Var::V.into()]);
        assert_eq!(d.super_transpose(), d);
        let mut m = GradedMatrix::zero_square(&v());
        m.set(0, 1, Var::W.into());
        let st = m.super_transpose();
        assert_eq!(st.nnz(), 1);
        assert_eq!(st.get(1, 0), -RationalFunction::var(Var::W));
        assert_eq!(st.super_transpose(), m);
    }

    #[test]
    fn inverse_round_trip() {
        let (u, h) = (RationalFunction::var(Var::U), RationalFunction::var(Var::H));
        let m = GradedMatrix::from_rows(
            &v(),
            vec![vec![u.clone(), h.clone()], vec![h.clone(), u.clone()]],
        );
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let m = GradedMatrix::unit(&v(), 0, 1);
        assert_eq!(m.inverse(), Err(GradeError::Singular));
    }

    #[test]
    fn parity_of_units() {
        assert_eq!(GradedMatrix::unit(&v(), 0, 1).parity(), Some(1));
        assert_eq!(GradedMatrix::unit(&v(), 1, 1).parity(), Some(0));
        let mixed = &GradedMatrix::unit(&v(), 0, 1) + &GradedMatrix::unit(&v(), 0, 0);
        assert_eq!(mixed.parity(), None);
    }
}
