//! Homology of integer complexes, annihilator lattices in finite group rings
//! and ball-truncated kernel searches in Z[pi].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::IntComplex;
use crate::error::{Error, Result};
use crate::group::{enumerate, GroupElement, GroupId};
use crate::intmat::{smith, IntMatrix, Transforms};
use crate::lattice::{Echelon, Lattice, SparseVec};
use crate::matrix::{FiniteBasis, RingMatrix};
use crate::par::{self, Parallelism};
use crate::ring::RingElement;

/// Finitely generated abelian group `Z^free_rank + Z/t_1 + ... + Z/t_k`,
/// `1 < t_1 | t_2 | ... | t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupDescriptor {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupDescriptor {
    pub fn zero() -> Self {
        AbelianGroupDescriptor { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupDescriptor { free_rank: rank, torsion: Vec::new() }
    }

    /// Canonical form of `Z^free_rank + sum Z/orders[i]`; orders 0 count as free, 1 vanish.
    pub fn from_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let mut free = free_rank;
        let mut finite = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free += 1;
            } else if !o.is_one() {
                finite.push(o);
            }
        }
        let n = finite.len();
        let diag = IntMatrix::from_fn(n, n, |i, j| if i == j { finite[i].clone() } else { BigInt::zero() });
        let torsion = smith(&diag, Transforms::NONE, Parallelism::Sequential).torsion();
        AbelianGroupDescriptor { free_rank: free, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn order_of_torsion(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |a, b| a * b)
    }

    /// Prime-power summands, e.g. `Z/3 + Z/6` gives `[2, 3, 3]`.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for t in &self.torsion {
            let mut n = t.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= n {
                let mut q = BigInt::one();
                while n.is_multiple_of(&p) {
                    n /= &p;
                    q *= &p;
                }
                if !q.is_one() {
                    out.push(q);
                }
                p += 1;
            }
            if !n.is_one() {
                out.push(n);
            }
        }
        out.sort();
        out
    }

    /// Primary decomposition, e.g. `Z + (Z/3)^2 + Z/2`.
    pub fn primary_form(&self) -> String {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let divisors = self.elementary_divisors();
        let mut primes: Vec<BigInt> = Vec::new();
        for d in &divisors {
            if !primes.contains(d) {
                primes.push(d.clone());
            }
        }
        // larger primes first reads naturally for the groups at hand
        primes.sort_by(|a, b| b.cmp(a));
        for q in primes {
            match divisors.iter().filter(|d| **d == q).count() {
                1 => parts.push(format!("Z/{q}")),
                k => parts.push(format!("(Z/{q})^{k}")),
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for AbelianGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for AbelianGroupDescriptor {
    type Err = Error;

    /// Sums of `0`, `Z`, `Z^k`, `Z/n` and `(Z/n)^k` separated by `+`.
    fn from_str(s: &str) -> Result<Self> {
        let mut free = 0usize;
        let mut orders = Vec::new();
        let bad = |part: &str| Error::Format(format!("cannot read abelian group summand {part:?}"));
        for part in s.split('+').map(str::trim) {
            let (base, power) = match part.rsplit_once('^') {
                Some((b, k)) => (b.trim(), k.trim().parse::<usize>().map_err(|_| bad(part))?),
                None => (part, 1),
            };
            let base = base.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(base).trim();
            if base == "0" {
                continue;
            }
            if base == "Z" {
                free += power;
                continue;
            }
            let n = base
                .strip_prefix("Z/")
                .and_then(|n| n.trim().parse::<BigInt>().ok())
                .filter(|n| n.is_positive())
                .ok_or_else(|| bad(part))?;
            orders.extend(std::iter::repeat_n(n, power));
        }
        Ok(AbelianGroupDescriptor::from_orders(free, &orders))
    }
}

/// Homology in every degree of a finite-rank integer complex.
pub fn homology(cx: &IntComplex, par: Parallelism) -> Result<Vec<AbelianGroupDescriptor>> {
    cx.check()?;
    let top = cx.top_degree();
    let smiths: Vec<_> = par::map_range(par, top, |k| smith(cx.differential(k + 1), Transforms::NONE, par));
    let rank = |k: usize| if k == 0 || k > top { 0 } else { smiths[k - 1].rank() };
    Ok((0..=top)
        .map(|k| {
            let free = cx.ranks()[k] - rank(k) - rank(k + 1);
            let torsion = if k < top { smiths[k].torsion() } else { Vec::new() };
            AbelianGroupDescriptor { free_rank: free, torsion }
        })
        .collect())
}

/// Betti numbers over F_p.
pub fn betti_mod(cx: &IntComplex, p: u64) -> Vec<usize> {
    let top = cx.top_degree();
    let ranks: Vec<usize> = (1..=top).map(|k| cx.differential(k).rank_mod(p)).collect();
    let rank = |k: usize| if k == 0 || k > top { 0 } else { ranks[k - 1] };
    (0..=top).map(|k| cx.ranks()[k] - rank(k) - rank(k + 1)).collect()
}

/// `H_k` with explicit coordinates: `ker d_k / im d_{k+1}` for `d_k: Z^n -> Z^m`.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub descriptor: AbelianGroupDescriptor,
    /// Order of each coordinate (0 for free coordinates).
    pub orders: Vec<BigInt>,
    /// Integer map from cycles to coordinates (one row per coordinate).
    coordinate_map: IntMatrix,
    /// A cycle representing each coordinate generator.
    pub generators: Vec<Vec<BigInt>>,
}

impl HomologyGroup {
    /// `d_out: C_k -> C_{k-1}` (None in degree 0), `d_in: C_{k+1} -> C_k`
    /// (None in the top degree), `n = rank C_k`.
    pub fn compute(d_out: Option<&IntMatrix>, d_in: Option<&IntMatrix>, n: usize, par: Parallelism) -> Self {
        let (r, v, v_inv) = match d_out {
            Some(d) => {
                let s = smith(d, Transforms::RIGHT, par);
                (s.rank(), s.v.expect("tracked"), s.v_inv.expect("tracked"))
            }
            None => (0, IntMatrix::identity(n), IntMatrix::identity(n)),
        };
        let kernel_coords = v_inv.select_rows(r..n);
        let kernel_basis = v.select_cols(r..n);
        let relations = match d_in {
            Some(d) => kernel_coords.mul_par(d, par),
            None => IntMatrix::zeros(n - r, 0),
        };
        let s = smith(&relations, Transforms::LEFT, par);
        let p = s.u.expect("tracked");
        let p_inv = s.u_inv.expect("tracked");
        let full_map = p.mul_par(&kernel_coords, par);
        let full_gens = kernel_basis.mul_par(&p_inv, par);
        let mut orders = Vec::new();
        let mut rows = Vec::new();
        let mut generators = Vec::new();
        for i in 0..n - r {
            let order = s.diagonal.get(i).cloned().unwrap_or_else(BigInt::zero);
            if order.is_one() {
                continue;
            }
            rows.push(full_map.row(i).to_vec());
            generators.push(full_gens.column(i));
            orders.push(order);
        }
        let descriptor = AbelianGroupDescriptor::from_orders(0, &orders);
        HomologyGroup {
            descriptor,
            orders,
            coordinate_map: IntMatrix::from_rows(n, rows).expect("rows of width n"),
            generators,
        }
    }

    /// Coordinates of the class of a cycle, reduced modulo the orders.
    pub fn class_of(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        self.coordinate_map
            .mul_vec(cycle)
            .into_iter()
            .zip(&self.orders)
            .map(|(x, o)| if o.is_zero() { x } else { x.mod_floor(o) })
            .collect()
    }

    /// Matrix of the map induced by the chain-level map `f` (acting on column
    /// vectors); column `i` is the class of `f(generator_i)`.
    pub fn induced_map(&self, f: &IntMatrix, target: &HomologyGroup) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.generators.iter().map(|g| target.class_of(&f.mul_vec(g))).collect();
        IntMatrix::from_fn(target.orders.len(), cols.len(), |i, j| cols[j][i].clone())
    }
}

/// Cokernel of `A -> B` on homology where `B` has the given coordinate
/// orders and the map has matrix `m` (column per generator of A).
pub fn cokernel(target_orders: &[BigInt], m: &IntMatrix) -> AbelianGroupDescriptor {
    let n = target_orders.len();
    let rel = IntMatrix::from_fn(n, n, |i, j| if i == j { target_orders[i].clone() } else { BigInt::zero() });
    let pres = rel.hstack(m);
    let s = smith(&pres, Transforms::NONE, Parallelism::Sequential);
    AbelianGroupDescriptor::from_orders(n - s.rank(), &s.diagonal)
}

/// `{h : h x = 0}` in Z[G] for finite G, in the Z-basis of group elements.
pub fn left_annihilator(x: &RingElement) -> Result<Lattice> {
    let m = RingMatrix::from_column(x.group(), vec![x.clone()])?.flatten()?;
    let s = smith(&m, Transforms::RIGHT, Parallelism::Sequential);
    Ok(Lattice::span(m.cols(), s.kernel_basis().expect("tracked")))
}

/// `Z[G] y` for finite G.
pub fn principal_left_ideal(y: &RingElement) -> Result<Lattice> {
    let m = RingMatrix::from_column(y.group(), vec![y.clone()])?.flatten()?;
    Ok(Lattice::span(m.rows(), (0..m.cols()).map(|j| m.column(j))))
}

/// Result of a kernel search truncated to a ball of Z[pi].
#[derive(Clone, Debug)]
pub struct KernelSearch {
    pub max_len: usize,
    pub ball_size: usize,
    /// A Z-basis of `{h supported on ball(L) : h d = 0}`.
    pub kernel: Vec<RingElement>,
    /// Kernel basis elements not found in the claimed ideal within the slack.
    pub unexplained: Vec<RingElement>,
    pub outcome: SearchOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Every kernel element in the ball is accounted for.
    Certified,
    /// Some kernel element has no witness within the slack.
    Inconclusive,
    /// Injectivity was claimed but a nonzero kernel element exists.
    Fail,
}

/// Kernel of `h -> (h d_1, ..., h d_m)` on chains `h` supported on the ball
/// of radius `max_len` in pi. With `claimed = Some(y)` every kernel element
/// must lie in `{p y : p supported on ball(max_len + slack)}`; with `None`
/// the kernel must vanish.
pub fn bounded_kernel_search(
    d: &[RingElement],
    max_len: usize,
    claimed: Option<&RingElement>,
    slack: usize,
    par: Parallelism,
) -> Result<KernelSearch> {
    for x in d.iter().chain(claimed) {
        if x.group() != GroupId::Pi {
            return Err(Error::ContextMismatch(x.group(), GroupId::Pi));
        }
    }
    let ball = enumerate(GroupId::Pi, Some(max_len))?;
    let mut index = CoordinateIndex::default();
    let images = par::map(par, &ball, |g| {
        d.iter().map(|x| RingElement::from_element(g.clone()).try_mul(x).expect("same ring")).collect::<Vec<_>>()
    });
    let mut echelon = Echelon::with_relations();
    for img in &images {
        let mut v = SparseVec::new();
        for (comp, x) in img.iter().enumerate() {
            for (h, c) in x.terms() {
                v.insert(index.get((comp, h.clone())), c.clone());
            }
        }
        echelon.insert(v);
    }
    let kernel: Vec<RingElement> = echelon
        .relations()
        .iter()
        .map(|rel| {
            RingElement::from_terms(GroupId::Pi, rel.iter().map(|(i, c)| (ball[*i].clone(), c.clone())))
                .expect("elements of pi")
        })
        .collect();
    let (unexplained, outcome) = match claimed {
        None => {
            let outcome = if kernel.is_empty() { SearchOutcome::Certified } else { SearchOutcome::Fail };
            (kernel.clone(), outcome)
        }
        Some(y) => {
            let unexplained = unexplained_in_ideal(&kernel, y, max_len + slack, par)?;
            let outcome = if unexplained.is_empty() { SearchOutcome::Certified } else { SearchOutcome::Inconclusive };
            (unexplained, outcome)
        }
    };
    Ok(KernelSearch { max_len, ball_size: ball.len(), kernel, unexplained, outcome })
}

/// Elements of `xs` outside `{p y : p supported on ball(radius)}`.
pub fn unexplained_in_ideal(
    xs: &[RingElement],
    y: &RingElement,
    radius: usize,
    par: Parallelism,
) -> Result<Vec<RingElement>> {
    if xs.is_empty() {
        return Ok(Vec::new());
    }
    let multipliers = enumerate(GroupId::Pi, Some(radius))?;
    let products = par::map(par, &multipliers, |p| RingElement::from_element(p.clone()).try_mul(y).expect("same ring"));
    let mut index = CoordinateIndex::default();
    let mut echelon = Echelon::new();
    for prod in &products {
        echelon.insert(index.sparse(prod));
    }
    Ok(xs
        .iter()
        .filter(|x| {
            // coordinates never seen cannot be in the span
            if x.terms().any(|(g, _)| !index.map.contains_key(&(0, g.clone()))) {
                return true;
            }
            !echelon.contains(&index.sparse_existing(x))
        })
        .cloned()
        .collect())
}

#[derive(Default)]
struct CoordinateIndex {
    map: HashMap<(usize, GroupElement), usize>,
}

impl CoordinateIndex {
    fn get(&mut self, key: (usize, GroupElement)) -> usize {
        let n = self.map.len();
        *self.map.entry(key).or_insert(n)
    }

    fn sparse(&mut self, x: &RingElement) -> SparseVec {
        x.terms().map(|(g, c)| (self.get((0, g.clone())), c.clone())).collect()
    }

    fn sparse_existing(&self, x: &RingElement) -> SparseVec {
        x.terms().map(|(g, c)| (self.map[&(0, g.clone())], c.clone())).collect()
    }
}

/// Integer vector of a finite-group ring element in enumeration order.
pub fn coordinates(x: &RingElement) -> Result<Vec<BigInt>> {
    Ok(FiniteBasis::new(x.group())?.coords(x))
}

/// gcd of the entries (0 for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |a, b| a.gcd(b))
}

pub fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(group: GroupId, s: &str) -> RingElement {
        RingElement::parse(group, s).unwrap()
    }

    #[test]
    fn descriptor_parsing_and_display() {
        let d: AbelianGroupDescriptor = "(Z/3)^2 + Z/2".parse().unwrap();
        assert_eq!(d.to_string(), "Z/3 + Z/6");
        assert_eq!(d.primary_form(), "(Z/3)^2 + Z/2");
        assert_eq!("0".parse::<AbelianGroupDescriptor>().unwrap(), AbelianGroupDescriptor::zero());
        assert_eq!("Z + Z/1".parse::<AbelianGroupDescriptor>().unwrap(), AbelianGroupDescriptor::free(1));
        assert!("Q".parse::<AbelianGroupDescriptor>().is_err());
    }

    #[test]
    fn homology_of_small_complexes() {
        // circle: Z --0--> Z
        let c = IntComplex::new(vec![IntMatrix::from_i64(&[vec![0]])]).unwrap();
        let h = homology(&c, Parallelism::Sequential).unwrap();
        assert_eq!(h, vec![AbelianGroupDescriptor::free(1), AbelianGroupDescriptor::free(1)]);
        // RP^2 cells: d1 = 0, d2 = 2
        let c = IntComplex::new(vec![IntMatrix::from_i64(&[vec![0]]), IntMatrix::from_i64(&[vec![2]])]).unwrap();
        let h = homology(&c, Parallelism::Parallel).unwrap();
        assert_eq!(h[1], "Z/2".parse().unwrap());
        assert_eq!(h[2], AbelianGroupDescriptor::zero());
        assert_eq!(betti_mod(&c, 2), vec![1, 1, 1]);
        let bad = IntComplex::new(vec![IntMatrix::from_i64(&[vec![1]]), IntMatrix::from_i64(&[vec![1]])]).unwrap();
        assert!(matches!(homology(&bad, Parallelism::Sequential), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn homology_coordinates() {
        let d1 = IntMatrix::from_i64(&[vec![0, 0]]);
        let d2 = IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]);
        let h = HomologyGroup::compute(Some(&d1), Some(&d2), 2, Parallelism::Sequential);
        assert_eq!(h.descriptor, "Z/6".parse().unwrap());
        let one = [BigInt::one(), BigInt::one()];
        assert!(h.class_of(&one).iter().any(|x| !x.is_zero()));
        let boundary = [BigInt::from(2), BigInt::from(3)];
        assert!(h.class_of(&boundary).iter().all(Zero::is_zero));
    }

    #[test]
    fn annihilators() {
        let ann = left_annihilator(&r(GroupId::Z2, "a+1")).unwrap();
        assert_eq!(ann, principal_left_ideal(&r(GroupId::Z2, "a-1")).unwrap());
        assert_eq!(left_annihilator(&r(GroupId::S3, "1")).unwrap().rank(), 0);
    }

    #[test]
    fn kernel_search_small() {
        let s = bounded_kernel_search(
            &[r(GroupId::Pi, "a+1")],
            2,
            Some(&r(GroupId::Pi, "a-1")),
            3,
            Parallelism::Sequential,
        )
        .unwrap();
        assert_eq!(s.outcome, SearchOutcome::Certified);
        assert!(!s.kernel.is_empty());
        let s = bounded_kernel_search(&[r(GroupId::Pi, "1")], 2, None, 0, Parallelism::Sequential).unwrap();
        assert_eq!(s.outcome, SearchOutcome::Certified);
        assert!(s.kernel.is_empty());
    }
}
