//! Matrices over group rings and over R.
//!
//! Convention: column `j` lists the coefficients of the image of basis
//! vector `j`, and ring coefficients multiply on the left. So a matrix `M`
//! sends `sum_j r_j e_j` to `sum_i (sum_j r_j M[i][j]) e_i`, and applying
//! `M` and then `N` gives the matrix with entries `sum_i M[i][j] * N[k][i]`
//! (see [`RingMatrix::then`]). Over a noncommutative ring this is not the
//! textbook product `N * M`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::group::{enumerate, GroupElement, GroupHom, GroupId};
use crate::intmat::IntMatrix;
use crate::ring::{OrientationCharacter, RElement, RingElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    group: GroupId,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn zeros(group: GroupId, rows: usize, cols: usize) -> Self {
        RingMatrix { group, rows, cols, entries: vec![RingElement::zero(group); rows * cols] }
    }

    pub fn identity(group: GroupId, n: usize) -> Self {
        let mut m = Self::zeros(group, n, n);
        for i in 0..n {
            m.set(i, i, RingElement::one(group));
        }
        m
    }

    pub fn diagonal(group: GroupId, diag: Vec<RingElement>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(group, n, n);
        for (i, x) in diag.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn from_rows(group: GroupId, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {ncols}", row.len())));
            }
            for x in row {
                if x.group() != group {
                    return Err(Error::ContextMismatch(x.group(), group));
                }
                entries.push(x);
            }
        }
        Ok(RingMatrix { group, rows: nrows, cols: ncols, entries })
    }

    /// A single column, e.g. a chain written in coordinates.
    pub fn from_column(group: GroupId, col: Vec<RingElement>) -> Result<Self> {
        Self::from_rows(group, col.into_iter().map(|x| vec![x]).collect())
    }

    pub fn parse_rows<S: AsRef<str>>(group: GroupId, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| RingElement::parse(group, s.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if parsed.is_empty() {
            return Ok(Self::zeros(group, 0, 0));
        }
        Self::from_rows(group, parsed)
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElement) {
        assert_eq!(x.group(), self.group, "entry from another group ring");
        self.entries[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<RingElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<RingElement>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Image of `sum_j coords[j] e_j`.
    pub fn apply(&self, coords: &[RingElement]) -> Result<Vec<RingElement>> {
        if coords.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", coords.len(), self.cols)));
        }
        let mut out = vec![RingElement::zero(self.group); self.rows];
        for (j, r) in coords.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let e = self.get(i, j);
                if !e.is_zero() {
                    *o = o.try_add(&r.try_mul(e)?)?;
                }
            }
        }
        Ok(out)
    }

    /// The map "`self`, then `next`".
    pub fn then(&self, next: &RingMatrix) -> Result<RingMatrix> {
        if self.group != next.group {
            return Err(Error::ContextMismatch(self.group, next.group));
        }
        if self.rows != next.cols {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, next.rows, next.cols
            )));
        }
        let mut out = RingMatrix::zeros(self.group, next.rows, self.cols);
        for j in 0..self.cols {
            let image = next.apply(&self.column(j))?;
            for (k, x) in image.into_iter().enumerate() {
                out.set(k, j, x);
            }
        }
        Ok(out)
    }

    /// Entrywise involution of the transpose.
    pub fn conjugate_transpose(&self, chi: OrientationCharacter) -> RingMatrix {
        let mut out = RingMatrix::zeros(self.group, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).involute(chi));
            }
        }
        out
    }

    pub fn map(&self, h: &GroupHom) -> Result<RingMatrix> {
        let entries = self.entries.iter().map(|x| x.map(h)).collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix { group: h.target(), rows: self.rows, cols: self.cols, entries })
    }

    pub fn augment(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).augment())
    }

    pub fn to_r(&self) -> RMatrix {
        RMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(RingElement::to_r).collect() }
    }

    /// Integer matrix in the Z-basis `{g * e_j}` with `g` running over the
    /// group in enumeration order; index `j * |G| + idx(g)`.
    pub fn flatten(&self) -> Result<IntMatrix> {
        let basis = FiniteBasis::new(self.group)?;
        let n = basis.len();
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for j in 0..self.cols {
            for (gi, g) in basis.elements.iter().enumerate() {
                for i in 0..self.rows {
                    for (h, c) in self.get(i, j).left_mul_element(g).terms() {
                        out.set(i * n + basis.index(h), j * n + gi, c.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &RingMatrix) -> Result<RingMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("matrix sizes differ".into()));
        }
        let entries =
            self.entries.iter().zip(&other.entries).map(|(x, y)| x.try_add(&-y)).collect::<Result<Vec<_>>>()?;
        Ok(RingMatrix { group: self.group, rows: self.rows, cols: self.cols, entries })
    }

    /// Nonzero entries of `self - other`, formatted as `(i, j): value`.
    pub fn differences(&self, other: &RingMatrix) -> Vec<String> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return vec![format!("shape {}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)];
        }
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != other.get(i, j) {
                    out.push(format!("({i}, {j}): {} vs {}", self.get(i, j), other.get(i, j)));
                }
            }
        }
        out
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Enumeration of a finite group with a reverse index.
pub(crate) struct FiniteBasis {
    pub elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
}

impl FiniteBasis {
    pub fn new(group: GroupId) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::InfiniteGroup(group));
        }
        let elements = enumerate(group, None)?;
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Ok(FiniteBasis { elements, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self, g: &GroupElement) -> usize {
        self.index[g]
    }

    /// Coordinates of a ring element in the group basis.
    pub fn coords(&self, x: &RingElement) -> Vec<BigInt> {
        let mut v = vec![BigInt::default(); self.len()];
        for (g, c) in x.terms() {
            v[self.index(g)] = c.clone();
        }
        v
    }
}

/// Matrix over R = Z[a]/(a^2 - 1); R is commutative, so the usual product applies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RElement>,
}

impl RMatrix {
    pub fn from_rows(rows: Vec<Vec<RElement>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged R-matrix".into()));
        }
        Ok(RMatrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RElement {
        &self.entries[i * self.cols + j]
    }

    pub fn involute_transpose(&self, chi: OrientationCharacter) -> RMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).involute(chi));
            }
        }
        RMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// The 2n x 2m integer matrix in the Z-basis {e_i, a e_i}.
    pub fn expand(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(2 * self.rows, 2 * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let RElement { u, v } = self.get(i, j);
                // e_j -> u e_i + v a e_i ; a e_j -> v e_i + u a e_i
                out.set(2 * i, 2 * j, u.clone());
                out.set(2 * i + 1, 2 * j, v.clone());
                out.set(2 * i, 2 * j + 1, v.clone());
                out.set(2 * i + 1, 2 * j + 1, u.clone());
            }
        }
        out
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            if i > 0 {
                writeln!(f)?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(group: GroupId, rows: &[&[&str]]) -> RingMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        RingMatrix::parse_rows(group, &rows).unwrap()
    }

    #[test]
    fn flatten_regular_representation() {
        let f = m(GroupId::Z2, &[&["a+1"]]).flatten().unwrap();
        assert_eq!(f, IntMatrix::from_i64(&[vec![1, 1], vec![1, 1]]));
        assert!(m(GroupId::S3, &[&["0"]]).flatten().unwrap().is_zero());
        assert!(matches!(m(GroupId::Pi, &[&["a"]]).flatten(), Err(Error::InfiniteGroup(_))));
    }

    #[test]
    fn then_follows_left_module_convention() {
        // d1 d2 = 0 for the presentation complex of S3
        let d1 = m(GroupId::S3, &[&["a-1", "b-1"]]);
        let d2 = m(GroupId::S3, &[&["a+1", "b^2*a+1"], &["0", "a-b-1"]]);
        assert!(d2.then(&d1).unwrap().is_zero());
    }

    #[test]
    fn flatten_is_functorial() {
        let x = m(GroupId::S3, &[&["a+b", "2-b^2*a"], &["b", "a*b-1"]]);
        let y = m(GroupId::S3, &[&["b^2-1", "a"], &["3", "b*a+b"]]);
        let lhs = x.then(&y).unwrap().flatten().unwrap();
        let rhs = y.flatten().unwrap().mul(&x.flatten().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn expand_r_matrix() {
        let r = RMatrix::from_rows(vec![vec![RElement::new(1, 1)]]).unwrap();
        assert_eq!(r.expand(), IntMatrix::from_i64(&[vec![1, 1], vec![1, 1]]));
    }
}
