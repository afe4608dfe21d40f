//! Integral homology of small finite groups from the normalized bar
//! resolution, induced maps, and H_3 of the amalgam by Mayer-Vietoris.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{enumerate, GroupElement, GroupHom, GroupId};
use crate::homology::{cokernel, AbelianGroupDescriptor, HomologyGroup};
use crate::intmat::IntMatrix;
use crate::par::{self, Parallelism};

const MAX_ORDER: usize = 6;
const MAX_DEGREE: usize = 3;

/// `Z (x)_G B_*` for the normalized bar resolution `B_*` of a finite group.
/// Degree `n` has basis the tuples `[g_1|...|g_n]` of non-identity elements.
#[derive(Clone, Debug)]
pub struct BarComplex {
    pub group: GroupId,
    elements: Vec<GroupElement>,
}

impl BarComplex {
    pub fn new(group: GroupId) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::InfiniteGroup(group));
        }
        let all = enumerate(group, None)?;
        if all.len() > MAX_ORDER {
            return Err(Error::GroupTooLarge(group));
        }
        let elements = all.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(BarComplex { group, elements })
    }

    fn m(&self) -> usize {
        self.elements.len()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.m().pow(n as u32)
    }

    fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.elements.iter().position(|x| x == g)
    }

    fn tuple(&self, mut idx: usize, n: usize) -> Vec<usize> {
        let m = self.m();
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = idx % m;
            idx /= m;
        }
        t
    }

    /// Index of a tuple of element indices, or None if any entry is the identity.
    fn encode(&self, t: &[Option<usize>]) -> Option<usize> {
        t.iter().try_fold(0usize, |acc, x| x.map(|x| acc * self.m() + x))
    }

    /// `d_n : C_n -> C_{n-1}` on column vectors.
    pub fn differential(&self, n: usize, par: Parallelism) -> IntMatrix {
        assert!(n >= 1, "bar differentials start in degree 1");
        let rows = self.rank(n - 1);
        let columns = par::map_range(par, self.rank(n), |col| {
            let t: Vec<usize> = self.tuple(col, n);
            let mut entries: Vec<(usize, i64)> = Vec::new();
            let some: Vec<Option<usize>> = t.iter().map(|&x| Some(x)).collect();
            // g_1 [g_2|...|g_n] becomes [g_2|...|g_n] after Z (x)_G -
            if let Some(i) = self.encode(&some[1..]) {
                entries.push((i, 1));
            }
            for i in 0..n - 1 {
                let prod = &self.elements[t[i]] * &self.elements[t[i + 1]];
                let mut face = some[..i].to_vec();
                face.push(self.index_of(&prod));
                face.extend_from_slice(&some[i + 2..]);
                if let Some(k) = self.encode(&face) {
                    entries.push((k, if (i + 1) % 2 == 0 { 1 } else { -1 }));
                }
            }
            if let Some(k) = self.encode(&some[..n - 1]) {
                entries.push((k, if n.is_multiple_of(2) { 1 } else { -1 }));
            }
            entries
        });
        let mut d = IntMatrix::zeros(rows, columns.len());
        for (j, entries) in columns.into_iter().enumerate() {
            for (i, v) in entries {
                let cur = d.get(i, j) + BigInt::from(v);
                d.set(i, j, cur);
            }
        }
        d
    }

    /// `H_n(G; Z)` with coordinates.
    pub fn homology_group(&self, n: usize, par: Parallelism) -> Result<HomologyGroup> {
        if n > MAX_DEGREE {
            return Err(Error::Shape(format!("bar homology is limited to degrees <= {MAX_DEGREE}")));
        }
        let d_out = (n >= 1).then(|| self.differential(n, par));
        let d_in = self.differential(n + 1, par);
        Ok(HomologyGroup::compute(d_out.as_ref(), Some(&d_in), self.rank(n), par))
    }

    /// Chain map `[g_1|...|g_n] -> [f g_1|...|f g_n]` into `target`.
    pub fn chain_map(&self, f: &GroupHom, target: &BarComplex, n: usize) -> Result<IntMatrix> {
        if f.source() != self.group || f.target() != target.group {
            return Err(Error::ContextMismatch(f.source(), self.group));
        }
        let images =
            self.elements.iter().map(|g| f.apply(g).map(|h| target.index_of(&h))).collect::<Result<Vec<_>>>()?;
        let mut m = IntMatrix::zeros(target.rank(n), self.rank(n));
        for col in 0..self.rank(n) {
            let t: Vec<Option<usize>> = self.tuple(col, n).into_iter().map(|x| images[x]).collect();
            if let Some(row) = target.encode(&t) {
                m.set(row, col, BigInt::from(1));
            }
        }
        Ok(m)
    }
}

pub fn bar_homology(group: GroupId, n: usize, par: Parallelism) -> Result<AbelianGroupDescriptor> {
    Ok(BarComplex::new(group)?.homology_group(n, par)?.descriptor)
}

/// Data of the Mayer-Vietoris computation of H_3 of S3 *_{Z/2} S3.
#[derive(Clone, Debug)]
pub struct MayerVietoris {
    pub h2_amalgamated: AbelianGroupDescriptor,
    pub h3_amalgamated: AbelianGroupDescriptor,
    pub h3_factor: AbelianGroupDescriptor,
    /// Matrix of `H_3(Z/2) -> H_3(S3) + H_3(S3)`, `x -> (i x, -i x)`.
    pub map: IntMatrix,
    pub h3: AbelianGroupDescriptor,
}

/// `H_3(pi) = coker(H_3(Z/2) -> H_3(S3) + H_3(S3))`, using `H_2(Z/2) = 0`
/// for exactness on the right.
pub fn mayer_vietoris_h3(par: Parallelism) -> Result<MayerVietoris> {
    let a = BarComplex::new(GroupId::Z2)?;
    let s = BarComplex::new(GroupId::S3)?;
    let ha = a.homology_group(3, par)?;
    let hs = s.homology_group(3, par)?;
    let h2a = a.homology_group(2, par)?.descriptor;
    let f = a.chain_map(&GroupHom::inclusion_a(), &s, 3)?;
    let induced = ha.induced_map(&f, &hs);
    let k = hs.orders.len();
    let mut map = IntMatrix::zeros(2 * k, induced.cols());
    for i in 0..k {
        for j in 0..induced.cols() {
            let x = induced.get(i, j).clone();
            map.set(k + i, j, if x.is_zero() { x.clone() } else { -x.clone() });
            map.set(i, j, x);
        }
    }
    let orders: Vec<BigInt> = hs.orders.iter().chain(&hs.orders).cloned().collect();
    let h3 = cokernel(&orders, &map);
    Ok(MayerVietoris { h2_amalgamated: h2a, h3_amalgamated: ha.descriptor, h3_factor: hs.descriptor, map, h3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        for g in [GroupId::Z2, GroupId::Z3, GroupId::S3] {
            let bar = BarComplex::new(g).unwrap();
            let d2 = bar.differential(2, Parallelism::Sequential);
            let d3 = bar.differential(3, Parallelism::Sequential);
            assert!(d2.mul(&d3).is_zero());
            assert_eq!(bar_homology(g, 0, Parallelism::Sequential).unwrap(), AbelianGroupDescriptor::free(1));
        }
        let h1 = |g| bar_homology(g, 1, Parallelism::Sequential).unwrap().to_string();
        assert_eq!(h1(GroupId::Z2), "Z/2");
        assert_eq!(h1(GroupId::Z3), "Z/3");
        assert_eq!(h1(GroupId::S3), "Z/2");
        assert!(matches!(BarComplex::new(GroupId::Pi), Err(Error::InfiniteGroup(_))));
    }

    #[test]
    fn h3_of_z2_and_z3() {
        assert_eq!(bar_homology(GroupId::Z2, 3, Parallelism::Sequential).unwrap().to_string(), "Z/2");
        assert_eq!(bar_homology(GroupId::Z3, 3, Parallelism::Parallel).unwrap().to_string(), "Z/3");
        assert_eq!(bar_homology(GroupId::Z3, 2, Parallelism::Parallel).unwrap(), AbelianGroupDescriptor::zero());
    }

    #[test]
    fn amalgam_h3() {
        let mv = mayer_vietoris_h3(Parallelism::Parallel).unwrap();
        assert_eq!(mv.h3_factor.to_string(), "Z/6");
        assert!(mv.h2_amalgamated.is_zero());
        assert_eq!(mv.h3.to_string(), "Z/3 + Z/6");
    }
}
