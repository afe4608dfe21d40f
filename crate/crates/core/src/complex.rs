//! Free chain complexes over group rings: Fox-Lyndon complexes of
//! presentations, top-cell attachment, basis changes, conjugate duals, chain
//! maps and push-forwards to Z, R and the index-two subgroup.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{normalize, Generator, GroupElement, GroupHom, GroupId, Word};
use crate::intmat::IntMatrix;
use crate::matrix::{RMatrix, RingMatrix};
use crate::ring::{restrict_scalars, OrientationCharacter, RingElement};

/// A finite presentation over a subset of {a, b, c}, read in `group`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub group: GroupId,
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
}

#[derive(Deserialize)]
struct PresentationDoc {
    #[serde(default)]
    group: Option<String>,
    generators: Vec<String>,
    #[serde(default)]
    relators: Vec<String>,
}

impl Presentation {
    pub fn new(group: GroupId, generators: &[char], relators: &[&str]) -> Result<Self> {
        let generators = generators
            .iter()
            .map(|&c| Generator::from_letter(c).ok_or_else(|| Error::UnknownSymbol(c.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let relators = relators.iter().map(|r| Word::parse(r)).collect::<Result<Vec<_>>>()?;
        Self::from_parts(group, generators, relators)
    }

    fn from_parts(group: GroupId, generators: Vec<Generator>, relators: Vec<Word>) -> Result<Self> {
        let ctx = group.context();
        for g in &generators {
            if !ctx.generators().contains(g) {
                return Err(Error::UnknownSymbol(g.letter().to_string()));
            }
        }
        for r in &relators {
            if let Some(x) = r.generators().find(|x| !generators.contains(x)) {
                return Err(Error::UnknownSymbol(x.letter().to_string()));
            }
            let reduced = normalize(group, r)?;
            if !reduced.is_identity() {
                return Err(Error::InvalidHom(format!("relator {r} is {reduced} in {group}, not 1")));
            }
        }
        Ok(Presentation { group, generators, relators })
    }

    /// `<a, b | a^2, abab^-2>`
    pub fn s3() -> Self {
        Self::new(GroupId::S3, &['a', 'b'], &["a^2", "a*b*a*b^-2"]).expect("valid presentation")
    }

    /// `<a, b, c | a^2, abab^-2, acac^-2>`
    pub fn pi() -> Self {
        Self::new(GroupId::Pi, &['a', 'b', 'c'], &["a^2", "a*b*a*b^-2", "a*c*a*c^-2"]).expect("valid presentation")
    }

    /// TOML or JSON with `generators`, `relators` and optional `group`
    /// (default: the smallest built-in group containing the generators,
    /// or the free group if there are no relators).
    pub fn parse_document(text: &str) -> Result<Self> {
        let doc: PresentationDoc = match toml::from_str(text) {
            Ok(d) => d,
            Err(toml_err) => serde_json::from_str(text)
                .map_err(|e| Error::Format(format!("neither TOML ({toml_err}) nor JSON ({e})")))?,
        };
        let generators = doc
            .generators
            .iter()
            .map(|s| {
                let mut cs = s.trim().chars();
                match (cs.next().and_then(Generator::from_letter), cs.next()) {
                    (Some(g), None) => Ok(g),
                    _ => Err(Error::UnknownSymbol(s.clone())),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let relators = doc.relators.iter().map(|r| Word::parse(r)).collect::<Result<Vec<_>>>()?;
        let group = match doc.group {
            Some(g) => g.parse()?,
            None if relators.is_empty() => GroupId::Free,
            None if generators.contains(&Generator::C) => GroupId::Pi,
            None => GroupId::S3,
        };
        Self::from_parts(group, generators, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.letter().to_string()).collect();
        let rels: Vec<String> = self.relators.iter().map(ToString::to_string).collect();
        write!(f, "<{} | {}> in {}", gens.join(", "), rels.join(", "), self.group)
    }
}

/// Fox derivative of `w` with respect to `x`, read in `Z[group]`.
pub fn fox_derivative(w: &Word, x: Generator, group: GroupId) -> Result<RingElement> {
    let mut out = RingElement::zero(group);
    let mut prefix = GroupElement::identity(group);
    for s in w.syllables() {
        let g = normalize(group, &Word::gen(s.gen))?;
        let g_inv = g.inverse();
        if s.gen == x {
            if s.exp > 0 {
                let mut p = prefix.clone();
                for _ in 0..s.exp {
                    out.add_term(p.clone(), BigInt::one());
                    p = &p * &g;
                }
            } else {
                let mut p = prefix.clone();
                for _ in 0..-s.exp {
                    p = &p * &g_inv;
                    out.add_term(p.clone(), -BigInt::one());
                }
            }
        }
        prefix = prefix.try_mul(&normalize(group, &Word::power(s.gen, s.exp))?)?;
    }
    Ok(out)
}

/// Free complex `C_top -> ... -> C_0` over `Z[group]`.
///
/// `differentials[k - 1]` is `d_k : C_k -> C_{k-1}` in the column convention
/// of [`RingMatrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    group: GroupId,
    ranks: Vec<usize>,
    differentials: Vec<RingMatrix>,
    labels: Vec<Vec<String>>,
}

impl FreeComplex {
    pub fn new(group: GroupId, differentials: Vec<RingMatrix>, labels: Vec<Vec<String>>) -> Result<Self> {
        if differentials.is_empty() {
            return Err(Error::Shape("a complex needs at least one differential".into()));
        }
        let mut ranks = vec![differentials[0].rows()];
        for (k, d) in differentials.iter().enumerate() {
            if d.group() != group {
                return Err(Error::ContextMismatch(d.group(), group));
            }
            if d.rows() != ranks[k] {
                return Err(Error::Shape(format!("d{} has {} rows but C{} has rank {}", k + 1, d.rows(), k, ranks[k])));
            }
            ranks.push(d.cols());
        }
        if labels.len() != ranks.len() || labels.iter().zip(&ranks).any(|(l, r)| l.len() != *r) {
            return Err(Error::Shape("basis labels do not match the ranks".into()));
        }
        Ok(FreeComplex { group, ranks, differentials, labels })
    }

    /// Degrees 0..2 of the Fox-Lyndon complex; 1-cells labelled by generator,
    /// 2-cells `r1, r2, ...`.
    pub fn fox_lyndon(p: &Presentation) -> Result<Self> {
        let group = p.group;
        let d1 = RingMatrix::from_rows(
            group,
            vec![p
                .generators
                .iter()
                .map(|&x| {
                    let g = RingElement::from_element(normalize(group, &Word::gen(x))?);
                    g.try_add(&-RingElement::one(group))
                })
                .collect::<Result<Vec<_>>>()?],
        )?;
        let mut d2 = RingMatrix::zeros(group, p.generators.len(), p.relators.len());
        for (j, r) in p.relators.iter().enumerate() {
            for (i, &x) in p.generators.iter().enumerate() {
                d2.set(i, j, fox_derivative(r, x, group)?);
            }
        }
        let labels = vec![
            vec!["1".to_string()],
            p.generators.iter().map(|g| g.letter().to_string()).collect(),
            (1..=p.relators.len()).map(|j| format!("r{j}")).collect(),
        ];
        FreeComplex::new(group, vec![d1, d2], labels)
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> usize {
        self.differentials.len()
    }

    /// `d_k` for `1 <= k <= top_degree`.
    pub fn differential(&self, k: usize) -> &RingMatrix {
        &self.differentials[k - 1]
    }

    pub fn differentials(&self) -> &[RingMatrix] {
        &self.differentials
    }

    pub fn labels(&self, k: usize) -> &[String] {
        &self.labels[k]
    }

    pub fn all_labels(&self) -> &[Vec<String>] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Result<Self> {
        if labels.len() != self.ranks.len() || labels.iter().zip(&self.ranks).any(|(l, r)| l.len() != *r) {
            return Err(Error::Shape("basis labels do not match the ranks".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Degree and index of a basis label.
    pub fn find_label(&self, label: &str) -> Option<(usize, usize)> {
        self.labels.iter().enumerate().find_map(|(k, ls)| ls.iter().position(|l| l == label).map(|i| (k, i)))
    }

    /// Degrees `k` at which `d_{k-1} d_k` is nonzero, with the offending products.
    pub fn composition_failures(&self) -> Vec<(usize, RingMatrix)> {
        (2..=self.top_degree())
            .filter_map(|k| {
                let c = self.differential(k).then(self.differential(k - 1)).expect("shapes checked");
                (!c.is_zero()).then_some((k, c))
            })
            .collect()
    }

    pub fn check(&self) -> Result<()> {
        match self.composition_failures().first() {
            None => Ok(()),
            Some((k, c)) => Err(Error::NotAComplex(format!("d{}*d{} = {c}", k - 1, k))),
        }
    }

    /// Add one cell in degree `top + 1` with boundary `z`.
    pub fn attach_top_cell(&self, z: &[RingElement], label: &str) -> Result<Self> {
        let top = self.top_degree();
        let col = RingMatrix::from_column(self.group, z.to_vec())?;
        if col.rows() != self.ranks[top] {
            return Err(Error::Shape(format!(
                "boundary has {} coordinates, C{top} has rank {}",
                col.rows(),
                self.ranks[top]
            )));
        }
        let residual = col.then(self.differential(top))?;
        if !residual.is_zero() {
            let res = residual.column(0).iter().map(ToString::to_string).collect::<Vec<_>>();
            return Err(Error::NotACycle { residual: format!("({})", res.join(", ")) });
        }
        let mut differentials = self.differentials.clone();
        differentials.push(col);
        let mut labels = self.labels.clone();
        labels.push(vec![label.to_string()]);
        FreeComplex::new(self.group, differentials, labels)
    }

    pub fn change_basis(&self, bc: &BasisChange) -> Result<Self> {
        if bc.matrices.len() != self.ranks.len() {
            return Err(Error::Shape(format!(
                "basis change covers {} degrees, complex has {}",
                bc.matrices.len(),
                self.ranks.len()
            )));
        }
        for (k, (p, r)) in bc.matrices.iter().zip(&self.ranks).enumerate() {
            if p.rows() != *r || p.group() != self.group {
                return Err(Error::Shape(format!("basis change in degree {k} does not fit")));
            }
        }
        let differentials = (1..=self.top_degree())
            .map(|k| bc.matrices[k].then(self.differential(k))?.then(&bc.inverses[k - 1]))
            .collect::<Result<Vec<_>>>()?;
        FreeComplex::new(self.group, differentials, bc.labels.clone().unwrap_or_else(|| self.labels.clone()))
    }

    /// `C'_k = C_{n-k}` with `d'_k` the involuted transpose of `d_{n+1-k}`.
    pub fn dual_conjugate_transpose(&self, chi: OrientationCharacter) -> Self {
        let n = self.top_degree();
        let differentials = (1..=n).map(|k| self.differential(n + 1 - k).conjugate_transpose(chi)).collect();
        let labels = (0..=n).map(|k| self.labels[n - k].iter().map(|l| dual_label(l)).collect()).collect();
        FreeComplex::new(self.group, differentials, labels).expect("dual of a valid complex")
    }

    /// Hermitian `d_2` and `d_3 = conj-transpose(d_1)`, for three-dimensional complexes.
    pub fn self_duality(&self, chi: OrientationCharacter) -> Result<SelfDuality> {
        if self.top_degree() != 3 {
            return Err(Error::Shape("self-duality needs a complex in degrees 0..3".into()));
        }
        let d2 = self.differential(2);
        let hermitian = d2.differences(&d2.conjugate_transpose(chi));
        let transpose = self.differential(3).differences(&self.differential(1).conjugate_transpose(chi));
        Ok(SelfDuality { hermitian, transpose })
    }

    pub fn map_ring(&self, h: &GroupHom) -> Result<Self> {
        if h.source() != self.group {
            return Err(Error::ContextMismatch(h.source(), self.group));
        }
        let differentials = self.differentials.iter().map(|d| d.map(h)).collect::<Result<Vec<_>>>()?;
        FreeComplex::new(h.target(), differentials, self.labels.clone())
    }

    /// `Z (x) C` along the augmentation.
    pub fn augment(&self) -> IntComplex {
        IntComplex::new(self.differentials.iter().map(RingMatrix::augment).collect())
            .expect("augmentation preserves shapes")
    }

    /// `R (x) C` along pi -> pi/pi'.
    pub fn to_r(&self) -> Vec<RMatrix> {
        self.differentials.iter().map(RingMatrix::to_r).collect()
    }

    /// Integer complex in the Z-basis `{g * e_j}`, for finite groups.
    pub fn flatten(&self) -> Result<IntComplex> {
        IntComplex::new(self.differentials.iter().map(RingMatrix::flatten).collect::<Result<Vec<_>>>()?)
    }

    /// The same complex viewed over Z[pi'] with basis `{e_j, a e_j}`.
    pub fn restrict_to_index_two(&self) -> Result<Self> {
        if self.group != GroupId::Pi {
            return Err(Error::ContextMismatch(self.group, GroupId::Pi));
        }
        let differentials = self
            .differentials
            .iter()
            .map(|d| {
                let mut out = RingMatrix::zeros(GroupId::PiPrime, 2 * d.rows(), 2 * d.cols());
                for i in 0..d.rows() {
                    for j in 0..d.cols() {
                        let block = restrict_scalars(d.get(i, j))?;
                        for (bi, bj) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                            out.set(2 * i + bi, 2 * j + bj, block.get(bi, bj).clone());
                        }
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        let labels =
            self.labels.iter().map(|ls| ls.iter().flat_map(|l| [l.clone(), format!("a*{l}")]).collect()).collect();
        FreeComplex::new(GroupId::PiPrime, differentials, labels)
    }
}

fn dual_label(l: &str) -> String {
    match l.strip_suffix('^') {
        Some(base) => base.to_string(),
        None => format!("{l}^"),
    }
}

impl fmt::Display for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "complex over Z[{}], ranks {:?}", self.group, self.ranks)?;
        for k in 1..=self.top_degree() {
            writeln!(f, "d{k}: [{}] -> [{}]", self.labels[k].join(", "), self.labels[k - 1].join(", "))?;
            writeln!(f, "{}", self.differential(k))?;
        }
        Ok(())
    }
}

/// Outcome of [`FreeComplex::self_duality`]; each list holds the differing entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDuality {
    pub hermitian: Vec<String>,
    pub transpose: Vec<String>,
}

impl SelfDuality {
    pub fn passed(&self) -> bool {
        self.hermitian.is_empty() && self.transpose.is_empty()
    }
}

/// Per-degree change of basis: column `j` of `matrices[k]` is the `j`-th new
/// basis vector of `C_k` in old coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    matrices: Vec<RingMatrix>,
    inverses: Vec<RingMatrix>,
    labels: Option<Vec<Vec<String>>>,
}

impl BasisChange {
    /// Checks that each supplied inverse is a two-sided inverse.
    pub fn new(matrices: Vec<RingMatrix>, inverses: Vec<RingMatrix>) -> Result<Self> {
        if matrices.len() != inverses.len() {
            return Err(Error::Shape("one inverse per degree is required".into()));
        }
        for (k, (p, q)) in matrices.iter().zip(&inverses).enumerate() {
            if p.rows() != p.cols() || q.rows() != p.rows() || q.cols() != p.cols() {
                return Err(Error::NotInvertible { degree: k, detail: "matrices are not square of equal size".into() });
            }
            let id = RingMatrix::identity(p.group(), p.rows());
            for (name, prod) in [("P then P^-1", p.then(q)?), ("P^-1 then P", q.then(p)?)] {
                if prod != id {
                    return Err(Error::NotInvertible {
                        degree: k,
                        detail: format!("{name} is not the identity: {}", prod.differences(&id).join("; ")),
                    });
                }
            }
        }
        Ok(BasisChange { matrices, inverses, labels: None })
    }

    pub fn identity(cx: &FreeComplex) -> Self {
        let m: Vec<RingMatrix> = cx.ranks().iter().map(|&r| RingMatrix::identity(cx.group(), r)).collect();
        BasisChange { matrices: m.clone(), inverses: m, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn degrees(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, k: usize) -> &RingMatrix {
        &self.matrices[k]
    }

    pub fn inverse(&self, k: usize) -> &RingMatrix {
        &self.inverses[k]
    }

    /// Coordinates of a chain of degree `k` in the new basis.
    pub fn to_new_coordinates(&self, k: usize, old: &[RingElement]) -> Result<Vec<RingElement>> {
        self.inverses[k].apply(old)
    }
}

/// Ring-equivariant chain map between free complexes over possibly different
/// groups: `f(r x) = h(r) f(x)`. `matrices[k]` maps degree `k`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub hom: GroupHom,
    pub matrices: Vec<RingMatrix>,
}

impl ChainMap {
    pub fn new(hom: GroupHom, matrices: Vec<RingMatrix>) -> Self {
        ChainMap { hom, matrices }
    }

    /// Degrees in which `f d = d f` fails, up to the shorter of the two complexes.
    pub fn failures(&self, source: &FreeComplex, target: &FreeComplex) -> Result<Vec<usize>> {
        let top = source.top_degree().min(target.top_degree()).min(self.matrices.len().saturating_sub(1));
        let mut bad = Vec::new();
        for k in 1..=top {
            let lhs = source.differential(k).map(&self.hom)?.then(&self.matrices[k - 1])?;
            let rhs = self.matrices[k].then(target.differential(k))?;
            if lhs != rhs {
                bad.push(k);
            }
        }
        Ok(bad)
    }

    /// Image of the chain `sum_j coords[j] x_j` in degree `k`.
    pub fn apply(&self, k: usize, coords: &[RingElement]) -> Result<Vec<RingElement>> {
        let mapped = coords.iter().map(|r| r.map(&self.hom)).collect::<Result<Vec<_>>>()?;
        self.matrices[k].apply(&mapped)
    }
}

/// Integer chain complex; `d[k - 1]` is `d_k` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntComplex {
    ranks: Vec<usize>,
    d: Vec<IntMatrix>,
}

impl IntComplex {
    pub fn new(d: Vec<IntMatrix>) -> Result<Self> {
        let mut ranks = vec![d.first().map_or(0, IntMatrix::rows)];
        for (k, m) in d.iter().enumerate() {
            if m.rows() != ranks[k] {
                return Err(Error::Shape(format!("d{} has {} rows, expected {}", k + 1, m.rows(), ranks[k])));
            }
            ranks.push(m.cols());
        }
        Ok(IntComplex { ranks, d })
    }

    /// A complex with given ranks and differentials where `ranks` fixes the
    /// degree-0 rank even when there are no differentials.
    pub fn with_ranks(ranks: Vec<usize>, d: Vec<IntMatrix>) -> Result<Self> {
        if d.len() + 1 != ranks.len() {
            return Err(Error::Shape("need one differential per positive degree".into()));
        }
        for (k, m) in d.iter().enumerate() {
            if (m.rows(), m.cols()) != (ranks[k], ranks[k + 1]) {
                return Err(Error::Shape(format!("d{} has the wrong shape", k + 1)));
            }
        }
        Ok(IntComplex { ranks, d })
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn top_degree(&self) -> usize {
        self.d.len()
    }

    pub fn differential(&self, k: usize) -> &IntMatrix {
        &self.d[k - 1]
    }

    pub fn check(&self) -> Result<()> {
        for k in 2..=self.top_degree() {
            let c = self.differential(k - 1).mul(self.differential(k));
            if !c.is_zero() {
                return Err(Error::NotAComplex(format!("d{}*d{} is nonzero", k - 1, k)));
            }
        }
        Ok(())
    }
}

/// Zero entries of a RingElement vector of the given length.
pub fn zero_chain(group: GroupId, n: usize) -> Vec<RingElement> {
    vec![RingElement::zero(group); n]
}

/// Whether every coordinate is zero.
pub fn chain_is_zero(v: &[RingElement]) -> bool {
    v.iter().all(RingElement::is_zero)
}

/// Sum of the augmentations of the coordinates.
pub fn chain_augment(v: &[RingElement]) -> BigInt {
    v.iter().map(RingElement::augment).fold(BigInt::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate, Generator::*};

    fn r(group: GroupId, s: &str) -> RingElement {
        RingElement::parse(group, s).unwrap()
    }

    #[test]
    fn fox_examples() {
        let a2 = Word::parse("a^2").unwrap();
        assert_eq!(fox_derivative(&a2, A, GroupId::Pi).unwrap(), r(GroupId::Pi, "a+1"));
        let s = Word::parse("a*b*a*b^-2").unwrap();
        assert_eq!(fox_derivative(&s, B, GroupId::S3).unwrap(), r(GroupId::S3, "a-b-1"));
        assert!(fox_derivative(&s, C, GroupId::Pi).unwrap().is_zero());
        let inv = Word::parse("b^-1").unwrap();
        assert_eq!(fox_derivative(&inv, B, GroupId::Free).unwrap(), -r(GroupId::Free, "b^-1"));
    }

    #[test]
    fn fox_lyndon_s3_matches_display() {
        let k = FreeComplex::fox_lyndon(&Presentation::s3()).unwrap();
        let g = GroupId::S3;
        assert_eq!(k.differential(1), &RingMatrix::parse_rows(g, &[vec!["a-1", "b-1"]]).unwrap());
        let d2 = RingMatrix::parse_rows(g, &[vec!["a+1", "b^2*a+1"], vec!["0", "a-b-1"]]).unwrap();
        assert_eq!(k.differential(2), &d2);
        k.check().unwrap();
    }

    #[test]
    fn no_relators_gives_empty_d2() {
        let p = Presentation::parse_document("generators = [\"a\", \"b\"]").unwrap();
        assert_eq!(p.group, GroupId::Free);
        let k = FreeComplex::fox_lyndon(&p).unwrap();
        assert_eq!(k.ranks(), &[1, 2, 0]);
        assert_eq!(k.differential(1).get(0, 1), &r(GroupId::Free, "b-1"));
    }

    #[test]
    fn attach_rejects_non_cycles() {
        let k = FreeComplex::fox_lyndon(&Presentation::s3()).unwrap();
        let g = GroupId::S3;
        let err = k.attach_top_cell(&[r(g, "1"), r(g, "0")], "g").unwrap_err();
        assert!(matches!(err, Error::NotACycle { .. }));
        let x = k.attach_top_cell(&[r(g, "a-1"), r(g, "-b*a+a+b^2-b")], "g").unwrap();
        assert_eq!(x.ranks(), &[1, 2, 2, 1]);
        x.check().unwrap();
    }

    #[test]
    fn dual_is_an_involution() {
        let k = FreeComplex::fox_lyndon(&Presentation::s3()).unwrap();
        let x = k.attach_top_cell(&[r(GroupId::S3, "a-1"), r(GroupId::S3, "-b*a+a+b^2-b")], "g").unwrap();
        let chi = OrientationCharacter::TRIVIAL;
        let dd = x.dual_conjugate_transpose(chi).dual_conjugate_transpose(chi);
        assert_eq!(dd, x);
        x.dual_conjugate_transpose(chi).check().unwrap();
    }

    #[test]
    fn restriction_doubles_ranks() {
        let l = FreeComplex::fox_lyndon(&Presentation::pi()).unwrap();
        let lr = l.restrict_to_index_two().unwrap();
        assert_eq!(lr.ranks(), &[2, 6, 6]);
        lr.check().unwrap();
    }

    #[test]
    fn identity_basis_change_is_neutral() {
        let k = FreeComplex::fox_lyndon(&Presentation::s3()).unwrap();
        assert_eq!(k.change_basis(&BasisChange::identity(&k)).unwrap(), k);
        let bad = RingMatrix::parse_rows(GroupId::S3, &[vec!["a+1"]]).unwrap();
        let err = BasisChange::new(vec![bad.clone()], vec![bad]).unwrap_err();
        assert!(matches!(err, Error::NotInvertible { degree: 0, .. }));
    }

    #[test]
    fn flattened_k_is_a_complex() {
        let k = FreeComplex::fox_lyndon(&Presentation::s3()).unwrap();
        let f = k.flatten().unwrap();
        assert_eq!(f.ranks(), &[6, 12, 12]);
        f.check().unwrap();
        assert_eq!(enumerate(GroupId::S3, None).unwrap().len(), 6);
    }
}
