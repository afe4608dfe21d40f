//! Invariants of finitely presented modules over R = Z[a]/(a^2 - 1):
//! the underlying abelian group and the eigen-multiplicities of `a` on the
//! free quotient and on each p-torsion layer.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::homology::AbelianGroupDescriptor;
use crate::intmat::{smith, IntMatrix, Transforms};
use crate::matrix::RMatrix;
use crate::par::Parallelism;
use crate::ring::RElement;

/// Multiplicities of the eigenvalues `+1` and `-1`. Over F_2 the two
/// coincide; there `plus` is the fixed subspace and `minus` its complement.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Eigen {
    pub plus: usize,
    pub minus: usize,
}

impl fmt::Display for Eigen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "+1:{} -1:{}", self.plus, self.minus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RModuleInvariants {
    pub underlying: AbelianGroupDescriptor,
    pub free: Eigen,
    /// Keyed by prime `p`: action on `{x : p x = 0}`.
    pub torsion: BTreeMap<u64, Eigen>,
}

impl fmt::Display for RModuleInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; free part {}", self.underlying.primary_form(), self.free)?;
        for (p, e) in &self.torsion {
            write!(f, " ; {p}-torsion {e}")?;
        }
        Ok(())
    }
}

/// Invariants of `Coker(M : R^m -> R^n)` (columns of `M` are relations).
pub fn r_module_invariants(m: &RMatrix) -> RModuleInvariants {
    let e = m.expand();
    let n2 = e.rows();
    let s = smith(&e, Transforms::LEFT, Parallelism::Sequential);
    let u = s.u.as_ref().expect("tracked");
    let u_inv = s.u_inv.as_ref().expect("tracked");
    let swap = IntMatrix::from_fn(n2, n2, |i, j| BigInt::from(i32::from(i ^ 1 == j)));
    // a-action in the coordinates y = U x of the quotient
    let act = u.mul(&swap).mul(u_inv);
    let r = s.rank();

    let free_dim = n2 - r;
    let trace: BigInt = (r..n2).map(|i| act.get(i, i).clone()).sum();
    let trace = trace.to_i64().expect("small trace");
    let free =
        Eigen { plus: ((free_dim as i64 + trace) / 2) as usize, minus: ((free_dim as i64 - trace) / 2) as usize };

    let underlying = AbelianGroupDescriptor::from_orders(free_dim, &s.diagonal);
    let mut primes: Vec<u64> = underlying
        .elementary_divisors()
        .iter()
        .map(|q| smallest_prime_factor(q.to_u64().expect("small torsion")))
        .collect();
    primes.sort_unstable();
    primes.dedup();

    let mut torsion = BTreeMap::new();
    for p in primes {
        let pb = BigInt::from(p);
        let layer: Vec<usize> = (0..r).filter(|&i| s.diagonal[i].is_multiple_of(&pb)).collect();
        let dim = layer.len();
        // column c: image of (d_i / p) e_i, written in the basis (d_k / p) e_k mod p
        let b = IntMatrix::from_fn(dim, dim, |row, col| {
            let (k, i) = (layer[row], layer[col]);
            let (di, dk) = (&s.diagonal[i], &s.diagonal[k]);
            let x = (di / &pb * act.get(k, i)).mod_floor(dk);
            (x / (dk / &pb)).mod_floor(&pb)
        });
        let id = IntMatrix::identity(dim);
        let minus_id = IntMatrix::from_fn(dim, dim, |i, j| if i == j { BigInt::from(-1) } else { BigInt::zero() });
        let plus = dim - sub(&b, &id).rank_mod(p);
        let minus = if p == 2 { dim - plus } else { dim - sub(&b, &minus_id).rank_mod(p) };
        torsion.insert(p, Eigen { plus, minus });
    }
    RModuleInvariants { underlying, free, torsion }
}

fn sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j) - b.get(i, j))
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).find(|p| n.is_multiple_of(*p) || p * p > n).map_or(n, |p| if n.is_multiple_of(p) { p } else { n })
}

/// Presentation of a direct sum of cyclic modules `R / (x_1, ..., x_k)`.
pub fn cyclic_sum(ideals: &[Vec<RElement>]) -> RMatrix {
    let cols: usize = ideals.iter().map(Vec::len).sum();
    let mut rows = vec![vec![RElement::zero(); cols]; ideals.len()];
    let mut c = 0;
    for (i, gens) in ideals.iter().enumerate() {
        for g in gens {
            rows[i][c] = g.clone();
            c += 1;
        }
    }
    RMatrix::from_rows(rows).expect("rectangular")
}
