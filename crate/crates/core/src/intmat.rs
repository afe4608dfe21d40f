//! Dense integer matrices and Smith normal form with optional transforms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::par::{self, Parallelism};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let data = (0..rows).map(|i| (0..cols).map(|j| f(i, j)).collect()).collect();
        IntMatrix { rows, cols, data }
    }

    /// Rows must all have length `cols`; `cols` is given so that 0-row matrices keep a width.
    pub fn from_rows(cols: usize, data: Vec<Vec<BigInt>>) -> Result<Self> {
        if let Some((i, r)) = data.iter().enumerate().find(|(_, r)| r.len() != cols) {
            return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", r.len())));
        }
        Ok(IntMatrix { rows: data.len(), cols, data })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let data = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(cols, data).expect("rectangular literal")
    }

    /// Parse `rows = [[...], ...]` (TOML) or `{"rows": [[...]]}` (JSON). Entries
    /// may be integers or decimal strings.
    pub fn parse_document(text: &str) -> Result<Self> {
        let value: serde_json::Value = match toml::from_str::<toml::Value>(text) {
            Ok(v) => serde_json::to_value(v).map_err(|e| Error::Format(e.to_string()))?,
            Err(toml_err) => serde_json::from_str(text)
                .map_err(|e| Error::Format(format!("neither TOML ({toml_err}) nor JSON ({e})")))?,
        };
        let rows =
            value.get("rows").and_then(|r| r.as_array()).ok_or_else(|| Error::Format("missing `rows` array".into()))?;
        let mut data = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| Error::Format("row is not an array".into()))?;
            let parsed = row
                .iter()
                .map(|x| match x {
                    serde_json::Value::Number(n) => {
                        n.as_i64().map(BigInt::from).ok_or_else(|| Error::Format(format!("not an integer: {n}")))
                    }
                    serde_json::Value::String(s) => {
                        s.trim().parse::<BigInt>().map_err(|_| Error::Format(format!("not an integer: {s:?}")))
                    }
                    other => Err(Error::Format(format!("not an integer: {other}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            data.push(parsed);
        }
        let cols = data.first().map_or(0, Vec::len);
        Self::from_rows(cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn row_vecs(&self) -> &[Vec<BigInt>] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.data[j][i].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        self.mul_par(other, Parallelism::Sequential)
    }

    pub fn mul_par(&self, other: &IntMatrix, par: Parallelism) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let data = par::map(par, &self.data, |row| {
            let mut out = vec![BigInt::zero(); other.cols];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&other.data[k]) {
                    if !y.is_zero() {
                        *o += x * y;
                    }
                }
            }
            out
        });
        IntMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        self.data.iter().map(|row| row.iter().zip(v).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()).collect()
    }

    pub fn select_rows(&self, range: std::ops::Range<usize>) -> IntMatrix {
        IntMatrix { rows: range.len(), cols: self.cols, data: self.data[range].to_vec() }
    }

    pub fn select_cols(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let cols = range.len();
        let data = self.data.iter().map(|r| r[range.clone()].to_vec()).collect();
        IntMatrix { rows: self.rows, cols, data }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.iter().chain(b).cloned().collect()).collect();
        IntMatrix { rows: self.rows, cols: self.cols + other.cols, data }
    }

    pub fn rank(&self) -> usize {
        smith(self, Transforms::NONE, Parallelism::Sequential).rank()
    }

    /// Rank over the prime field F_p.
    pub fn rank_mod(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        let mut m: Vec<Vec<u64>> =
            self.data.iter().map(|r| r.iter().map(|x| x.mod_floor(&pb).to_u64().expect("reduced")).collect()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| m[i][col] != 0) else { continue };
            m.swap(rank, piv);
            let inv = mod_inverse(m[rank][col], p);
            for x in m[rank].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot_row = m[rank].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != rank && row[col] != 0 {
                    let f = row[col];
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p * p - f * y % p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_unimodular(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let s = smith(self, Transforms::NONE, Parallelism::Sequential);
        s.rank() == self.rows && s.diagonal.iter().all(One::is_one)
    }
}

fn mod_inverse(x: u64, p: u64) -> u64 {
    // p is prime and small
    let mut r = 1u64;
    let (mut base, mut e) = (x % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<Vec<String>> = self.data.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let width = strings.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in strings.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Which unimodular transforms to accumulate during [`smith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transforms {
    pub left: bool,
    pub right: bool,
}

impl Transforms {
    pub const NONE: Transforms = Transforms { left: false, right: false };
    pub const LEFT: Transforms = Transforms { left: true, right: false };
    pub const RIGHT: Transforms = Transforms { left: false, right: true };
    pub const BOTH: Transforms = Transforms { left: true, right: true };
}

/// `U * A * V = D` with `D` diagonal, nonzero entries positive and each dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub rows: usize,
    pub cols: usize,
    /// The nonzero diagonal entries, in order.
    pub diagonal: Vec<BigInt>,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn d_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }

    /// Basis of the integer kernel (columns of V past the rank). Needs the right transform.
    pub fn kernel_basis(&self) -> Option<Vec<Vec<BigInt>>> {
        let v = self.v.as_ref()?;
        Some((self.rank()..self.cols).map(|j| v.column(j)).collect())
    }

    /// Check the postconditions against `a`. Transforms that were not
    /// requested are skipped.
    pub fn verify(&self, a: &IntMatrix) -> std::result::Result<(), String> {
        for w in self.diagonal.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(format!("divisibility fails: {} does not divide {}", w[0], w[1]));
            }
        }
        if self.diagonal.iter().any(|d| !d.is_positive()) {
            return Err("nonpositive diagonal entry".into());
        }
        if let (Some(u), Some(ui)) = (&self.u, &self.u_inv) {
            if u.mul(ui) != IntMatrix::identity(self.rows) || ui.mul(u) != IntMatrix::identity(self.rows) {
                return Err("U is not unimodular with the recorded inverse".into());
            }
        }
        if let (Some(v), Some(vi)) = (&self.v, &self.v_inv) {
            if v.mul(vi) != IntMatrix::identity(self.cols) || vi.mul(v) != IntMatrix::identity(self.cols) {
                return Err("V is not unimodular with the recorded inverse".into());
            }
        }
        if let (Some(u), Some(v)) = (&self.u, &self.v) {
            if u.mul(a).mul(v) != self.d_matrix() {
                return Err("U*A*V differs from D".into());
            }
        }
        if let (Some(ui), Some(vi)) = (&self.u_inv, &self.v_inv) {
            if ui.mul(&self.d_matrix()).mul(vi) != *a {
                return Err("U^-1*D*V^-1 differs from A".into());
            }
        }
        Ok(())
    }
}

struct Work {
    d: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    v_inv: Option<Vec<Vec<BigInt>>>,
    par: Parallelism,
}

fn swap_cols(m: &mut [Vec<BigInt>], i: usize, j: usize) {
    for r in m {
        r.swap(i, j);
    }
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.d.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            swap_cols(ui, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.d, i, j);
        if let Some(v) = &mut self.v {
            swap_cols(v, i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap(i, j);
        }
    }

    fn negate_row(&mut self, t: usize) {
        for x in self.d[t].iter_mut() {
            *x = -&*x;
        }
        if let Some(u) = &mut self.u {
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for r in ui.iter_mut() {
                r[t] = -&r[t];
            }
        }
    }

    /// `row_t += row_i`
    fn add_row_to_pivot(&mut self, t: usize, i: usize) {
        let src = self.d[i].clone();
        for (x, y) in self.d[t].iter_mut().zip(&src) {
            *x += y;
        }
        if let Some(u) = &mut self.u {
            let src = u[i].clone();
            for (x, y) in u[t].iter_mut().zip(&src) {
                *x += y;
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for r in ui.iter_mut() {
                let y = r[t].clone();
                r[i] -= y;
            }
        }
    }

    /// `row_i -= q_i * row_t` for every `(i, q_i)`.
    fn eliminate_rows(&mut self, t: usize, qs: &[(usize, BigInt)]) {
        if qs.is_empty() {
            return;
        }
        let par = self.par;
        let apply = |m: &mut Vec<Vec<BigInt>>| {
            let pivot = m[t].clone();
            let mut factor = vec![None; m.len()];
            for (i, q) in qs {
                factor[*i] = Some(q);
            }
            par::for_each_mut(par, m, |i, row| {
                if let Some(q) = factor[i] {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        if !y.is_zero() {
                            *x -= q * y;
                        }
                    }
                }
            });
        };
        apply(&mut self.d);
        if let Some(u) = &mut self.u {
            apply(u);
        }
        if let Some(ui) = &mut self.u_inv {
            // col_t += q_i * col_i
            par::for_each_mut(par, ui, |_, r| {
                let mut acc = BigInt::zero();
                for (i, q) in qs {
                    if !r[*i].is_zero() {
                        acc += q * &r[*i];
                    }
                }
                r[t] += acc;
            });
        }
    }

    /// `col_j -= q_j * col_t` for every `(j, q_j)`.
    fn eliminate_cols(&mut self, t: usize, qs: &[(usize, BigInt)]) {
        if qs.is_empty() {
            return;
        }
        let par = self.par;
        let apply = |m: &mut Vec<Vec<BigInt>>| {
            par::for_each_mut(par, m, |_, r| {
                if r[t].is_zero() {
                    return;
                }
                let y = r[t].clone();
                for (j, q) in qs {
                    r[*j] -= q * &y;
                }
            });
        };
        apply(&mut self.d);
        if let Some(v) = &mut self.v {
            apply(v);
        }
        if let Some(vi) = &mut self.v_inv {
            // row_t += q_j * row_j
            let mut acc = vi[t].clone();
            for (j, q) in qs {
                for (a, y) in acc.iter_mut().zip(&vi[*j]) {
                    if !y.is_zero() {
                        *a += q * y;
                    }
                }
            }
            vi[t] = acc;
        }
    }
}

/// Smith normal form by least-absolute-value pivoting.
pub fn smith(a: &IntMatrix, transforms: Transforms, par: Parallelism) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work {
        d: a.data.clone(),
        u: transforms.left.then(|| IntMatrix::identity(m).data),
        u_inv: transforms.left.then(|| IntMatrix::identity(m).data),
        v: transforms.right.then(|| IntMatrix::identity(n).data),
        v_inv: transforms.right.then(|| IntMatrix::identity(n).data),
        par,
    };
    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&w.d, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.d[t][t].clone();
            let row_qs: Vec<(usize, BigInt)> = (t + 1..m)
                .filter(|&i| !w.d[i][t].is_zero())
                .map(|i| (i, w.d[i][t].div_floor(&p)))
                .filter(|(_, q)| !q.is_zero())
                .collect();
            w.eliminate_rows(t, &row_qs);
            let col_qs: Vec<(usize, BigInt)> = (t + 1..n)
                .filter(|&j| !w.d[t][j].is_zero())
                .map(|j| (j, w.d[t][j].div_floor(&p)))
                .filter(|(_, q)| !q.is_zero())
                .collect();
            w.eliminate_cols(t, &col_qs);

            // Remainders smaller than the pivot become the new pivot.
            let mut best: Option<(bool, usize, BigInt)> = None;
            for i in t + 1..m {
                let x = w.d[i][t].abs();
                if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                    best = Some((true, i, x));
                }
            }
            for j in t + 1..n {
                let x = w.d[t][j].abs();
                if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                    best = Some((false, j, x));
                }
            }
            if let Some((is_row, k, _)) = best {
                if is_row {
                    w.swap_rows(t, k);
                } else {
                    w.swap_cols(t, k);
                }
                continue;
            }
            if p.abs().is_one() {
                break;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.d[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => w.add_row_to_pivot(t, i),
                None => break,
            }
        }
        if w.d[t][t].is_negative() {
            w.negate_row(t);
        }
        diagonal.push(w.d[t][t].clone());
    }
    let wrap = |d: Option<Vec<Vec<BigInt>>>, k: usize| d.map(|data| IntMatrix { rows: k, cols: k, data });
    Smith {
        rows: m,
        cols: n,
        diagonal,
        u: wrap(w.u, m),
        u_inv: wrap(w.u_inv, m),
        v: wrap(w.v, n),
        v_inv: wrap(w.v_inv, n),
    }
}

fn min_abs_entry(d: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in d.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|b| ax < b.2) {
                let one = ax.is_one();
                best = Some((i, j, ax));
                if one {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(m: &IntMatrix) -> Vec<i64> {
        smith(m, Transforms::BOTH, Parallelism::Sequential).diagonal.iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn smith_examples() {
        assert_eq!(diag(&IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]])), vec![2, 4]);
        assert_eq!(diag(&IntMatrix::from_i64(&[vec![3, 0], vec![0, 1]])), vec![1, 3]);
        assert!(diag(&IntMatrix::zeros(3, 2)).is_empty());
        assert_eq!(diag(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]])), vec![1, 6]);
    }

    #[test]
    fn smith_transforms_verify() {
        let a = IntMatrix::from_i64(&[vec![6, 4, 2, 0], vec![3, -1, 7, 5], vec![0, 0, 0, 0], vec![9, 3, 9, 5]]);
        for par in [Parallelism::Sequential, Parallelism::Parallel] {
            let s = smith(&a, Transforms::BOTH, par);
            s.verify(&a).unwrap();
            for k in s.kernel_basis().unwrap() {
                assert!(a.mul_vec(&k).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn rank_mod_two() {
        let a = IntMatrix::from_i64(&[vec![2, 1], vec![0, 1]]);
        assert_eq!(a.rank_mod(2), 1);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.rank_mod(3), 2);
    }

    #[test]
    fn parse_document_formats() {
        let t = IntMatrix::parse_document("rows = [[1, 2], [3, \"4\"]]").unwrap();
        assert_eq!(t, IntMatrix::from_i64(&[vec![1, 2], vec![3, 4]]));
        let j = IntMatrix::parse_document("{\"rows\": [[1, 2], [3, 4]]}").unwrap();
        assert_eq!(t, j);
        assert!(IntMatrix::parse_document("rows = [[1, 2], [3]]").is_err());
    }
}
