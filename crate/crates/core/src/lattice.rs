//! Integer lattices given by generators: incremental sparse echelon form,
//! membership, canonical Hermite form, and left kernels.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer vector: coordinate -> nonzero coefficient.
pub type SparseVec = BTreeMap<usize, BigInt>;

pub fn sparse_from_dense(v: &[BigInt]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse(v: &SparseVec, dim: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); dim];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `v += q * w`
fn axpy(v: &mut SparseVec, q: &BigInt, w: &SparseVec) {
    if q.is_zero() {
        return;
    }
    for (i, x) in w {
        let e = v.entry(*i).or_insert_with(BigInt::zero);
        *e += q * x;
        if e.is_zero() {
            v.remove(i);
        }
    }
}

/// `a * v + b * w`
fn combine(a: &BigInt, v: &SparseVec, b: &BigInt, w: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    axpy(&mut out, a, v);
    axpy(&mut out, b, w);
    out
}

#[derive(Clone, Debug)]
struct Row {
    v: SparseVec,
    aux: SparseVec,
}

/// Row-echelon basis of the lattice spanned by the inserted vectors.
///
/// With tracking, each inserted vector carries a unit vector in an auxiliary
/// coordinate space and all row operations are unimodular, so the auxiliary
/// parts of the vectors that reduce to zero span the integer relations among
/// the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Row>,
    track: bool,
    inserted: usize,
    relations: Vec<SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn with_relations() -> Self {
        Echelon { track: true, ..Echelon::default() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Relations among the inserted vectors, as sparse vectors indexed by insertion order.
    pub fn relations(&self) -> &[SparseVec] {
        &self.relations
    }

    pub fn insert(&mut self, v: SparseVec) {
        let aux = if self.track { SparseVec::from([(self.inserted, BigInt::one())]) } else { SparseVec::new() };
        self.inserted += 1;
        let mut row = Row { v, aux };
        loop {
            let Some((&lead, b)) = row.v.iter().next() else {
                if self.track && !row.aux.is_empty() {
                    self.relations.push(row.aux);
                }
                return;
            };
            let b = b.clone();
            match self.pivots.get_mut(&lead) {
                None => {
                    if b.is_negative() {
                        let m1 = -BigInt::one();
                        row.v = combine(&m1, &row.v, &BigInt::zero(), &SparseVec::new());
                        row.aux = combine(&m1, &row.aux, &BigInt::zero(), &SparseVec::new());
                    }
                    self.pivots.insert(lead, row);
                    return;
                }
                Some(p) => {
                    let a = p.v[&lead].clone();
                    if b.is_multiple_of(&a) {
                        let q = -(&b / &a);
                        axpy(&mut row.v, &q, &p.v);
                        axpy(&mut row.aux, &q, &p.aux);
                    } else {
                        // [s t; -b/g a/g] has determinant one.
                        let e = a.extended_gcd(&b);
                        let (g, s, t) = (e.gcd, e.x, e.y);
                        let new_v = combine(&s, &p.v, &t, &row.v);
                        let new_aux = combine(&s, &p.aux, &t, &row.aux);
                        let (ag, bg) = (&a / &g, -(&b / &g));
                        row.v = combine(&ag, &row.v, &bg, &p.v);
                        row.aux = combine(&ag, &row.aux, &bg, &p.aux);
                        p.v = new_v;
                        p.aux = new_aux;
                    }
                }
            }
        }
    }

    /// Whether `v` lies in the lattice.
    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut v = v.clone();
        while let Some((&lead, b)) = v.iter().next() {
            let Some(p) = self.pivots.get(&lead) else { return false };
            let a = &p.v[&lead];
            if !b.is_multiple_of(a) {
                return false;
            }
            let q = -(b / a);
            axpy(&mut v, &q, &p.v);
        }
        true
    }

    /// Canonical basis (Hermite normal form): leading entries positive and
    /// entries above each pivot reduced into `[0, pivot)`.
    pub fn hermite(&self) -> Vec<SparseVec> {
        let mut rows: Vec<(usize, SparseVec)> = self.pivots.iter().map(|(k, r)| (*k, r.v.clone())).collect();
        for k in 0..rows.len() {
            let (lead, pivot) = (rows[k].0, rows[k].1.clone());
            let a = pivot[&lead].clone();
            for row in rows.iter_mut().take(k) {
                if let Some(x) = row.1.get(&lead) {
                    let q = -x.div_floor(&a);
                    axpy(&mut row.1, &q, &pivot);
                }
            }
        }
        rows.into_iter().map(|(_, v)| v).collect()
    }
}

/// A lattice in `Z^dim` with canonical Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub dim: usize,
    pub basis: Vec<SparseVec>,
}

impl Lattice {
    pub fn span(dim: usize, generators: impl IntoIterator<Item = Vec<BigInt>>) -> Lattice {
        let mut e = Echelon::new();
        for g in generators {
            assert_eq!(g.len(), dim, "generator of the wrong dimension");
            e.insert(sparse_from_dense(&g));
        }
        Lattice { dim, basis: e.hermite() }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_dense(&self) -> Vec<Vec<BigInt>> {
        self.basis.iter().map(|v| dense_from_sparse(v, self.dim)).collect()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut e = Echelon::new();
        for b in &self.basis {
            e.insert(b.clone());
        }
        e.contains(&sparse_from_dense(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hermite_is_canonical() {
        let l1 = Lattice::span(3, [v(&[2, 4, 6]), v(&[0, 3, 3]), v(&[4, 11, 15])]);
        let l2 = Lattice::span(3, [v(&[2, 1, 3]), v(&[0, 3, 3])]);
        assert_eq!(l1, l2);
        assert!(l1.contains(&v(&[2, 4, 6])));
        assert!(!l1.contains(&v(&[1, 0, 0])));
        assert_eq!(Lattice::span(2, [v(&[0, 0])]).rank(), 0);
    }

    #[test]
    fn relations_span_left_kernel() {
        let mut e = Echelon::with_relations();
        let gens = [v(&[2, 0]), v(&[3, 0]), v(&[1, 1]), v(&[0, 5])];
        for g in &gens {
            e.insert(sparse_from_dense(g));
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(e.relations().len(), 2);
        for r in e.relations() {
            let mut sum = vec![BigInt::zero(); 2];
            for (i, c) in r {
                for (s, x) in sum.iter_mut().zip(&gens[*i]) {
                    *s += c * x;
                }
            }
            assert!(sum.iter().all(Zero::is_zero));
        }
        // (3, -2, 0, 0) generates the relations among the first two
        let rel = Lattice::span(4, e.relations().iter().map(|r| dense_from_sparse(r, 4)));
        assert!(rel.contains(&v(&[3, -2, 0, 0])));
    }
}
