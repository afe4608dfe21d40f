//! Machine-readable constants: presentations, displayed matrices, cycles,
//! adapted bases, diagonal tables and expected invariants.
//!
//! The data lives in TOML files under `corpus/`, embedded at build time and
//! replaceable by a directory on disk. Everything is read-only; a mutated
//! copy can be produced for fault injection.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use sha2::{Digest, Sha256};
use toml::{Table, Value};

use crate::complex::{BasisChange, FreeComplex, Presentation};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupId};
use crate::homology::AbelianGroupDescriptor;
use crate::matrix::RingMatrix;
use crate::ring::{RElement, RingElement};
use crate::tensor::{parse_tensor_term, Cell, Chain, DiagonalTable, TensorElement};

pub const FILES: [&str; 8] = [
    "presentations.toml",
    "complexes.toml",
    "cycles.toml",
    "bases.toml",
    "diagonal.toml",
    "lemma.toml",
    "rmodule.toml",
    "expected.toml",
];

const EMBEDDED: [&str; 8] = [
    include_str!("../corpus/presentations.toml"),
    include_str!("../corpus/complexes.toml"),
    include_str!("../corpus/cycles.toml"),
    include_str!("../corpus/bases.toml"),
    include_str!("../corpus/diagonal.toml"),
    include_str!("../corpus/lemma.toml"),
    include_str!("../corpus/rmodule.toml"),
    include_str!("../corpus/expected.toml"),
];

/// Files whose strings are never coefficient data.
const NOT_MUTABLE: [&str; 2] = ["presentations.toml", "expected.toml"];
const STRUCTURAL_KEYS: [&str; 5] = ["group", "complex", "labels", "cell", "w"];

#[derive(Clone, Debug)]
pub struct Corpus {
    docs: BTreeMap<String, Table>,
    texts: Vec<(String, String)>,
    hash: String,
}

impl Corpus {
    pub fn embedded() -> Self {
        let texts = FILES.iter().zip(EMBEDDED).map(|(n, t)| (n.to_string(), t.to_string())).collect();
        Corpus::from_texts(texts).expect("embedded corpus parses")
    }

    /// Loads every corpus file from `dir`.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let texts = FILES
            .iter()
            .map(|name| {
                let text = std::fs::read_to_string(dir.join(name))
                    .map_err(|e| Error::Io(format!("{}: {e}", dir.join(name).display())))?;
                Ok((name.to_string(), text))
            })
            .collect::<Result<Vec<_>>>()?;
        Corpus::from_texts(texts)
    }

    pub fn from_texts(texts: Vec<(String, String)>) -> Result<Self> {
        let mut docs = BTreeMap::new();
        let mut hasher = Sha256::new();
        for (name, text) in &texts {
            let doc: Table = text.parse().map_err(|e| Error::Format(format!("{name}: {e}")))?;
            docs.insert(name.clone(), doc);
            hasher.update(name.as_bytes());
            hasher.update([0]);
            hasher.update(text.as_bytes());
            hasher.update([0]);
        }
        for name in FILES {
            if !docs.contains_key(name) {
                return Err(Error::Format(format!("corpus file {name} is missing")));
            }
        }
        Ok(Corpus { docs, texts, hash: hex::encode(hasher.finalize()) })
    }

    /// SHA-256 of the file names and contents.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn texts(&self) -> &[(String, String)] {
        &self.texts
    }

    fn value(&self, file: &str, path: &[&str]) -> Result<&Value> {
        let missing = || Error::UnknownArtifact(format!("{file}:{}", path.join(".")));
        let mut table = self.docs.get(file).ok_or_else(missing)?;
        let (last, init) = path.split_last().ok_or_else(missing)?;
        for key in init {
            table = table.get(*key).and_then(Value::as_table).ok_or_else(missing)?;
        }
        table.get(*last).ok_or_else(missing)
    }

    fn string(&self, file: &str, path: &[&str]) -> Result<&str> {
        self.value(file, path)?.as_str().ok_or_else(|| format_err(file, path, "a string"))
    }

    fn strings(&self, file: &str, path: &[&str]) -> Result<Vec<&str>> {
        strings_of(self.value(file, path)?).ok_or_else(|| format_err(file, path, "a list of strings"))
    }

    fn string_rows(&self, file: &str, path: &[&str]) -> Result<Vec<Vec<&str>>> {
        let v = self.value(file, path)?;
        v.as_array()
            .and_then(|rows| rows.iter().map(strings_of).collect())
            .ok_or_else(|| format_err(file, path, "a list of string lists"))
    }

    fn group(&self, file: &str, section: &str) -> Result<GroupId> {
        self.string(file, &[section, "group"])?.parse()
    }

    fn element(&self, file: &str, section: &str, key: &str) -> Result<RingElement> {
        RingElement::parse(self.group(file, section)?, self.string(file, &[section, key])?)
    }

    fn elements(&self, file: &str, section: &str, key: &str) -> Result<Vec<RingElement>> {
        let g = self.group(file, section)?;
        self.strings(file, &[section, key])?.into_iter().map(|s| RingElement::parse(g, s)).collect()
    }

    /// `s3` or `pi`.
    pub fn presentation(&self, name: &str) -> Result<Presentation> {
        let file = "presentations.toml";
        let gens: Vec<char> = self
            .strings(file, &[name, "generators"])?
            .iter()
            .map(|s| s.chars().next().filter(|_| s.len() == 1).ok_or_else(|| Error::UnknownSymbol(s.to_string())))
            .collect::<Result<_>>()?;
        let relators = self.strings(file, &[name, "relators"])?;
        Presentation::new(self.group(file, name)?, &gens, &relators)
    }

    /// Displayed `[d1, d2]` of the presentation complex `k` or `l`.
    pub fn displayed_differentials(&self, name: &str) -> Result<Vec<RingMatrix>> {
        let file = "complexes.toml";
        let g = self.group(file, name)?;
        ["d1", "d2"].iter().map(|d| RingMatrix::parse_rows(g, &self.string_rows(file, &[name, d])?)).collect()
    }

    /// `psi` (S3) or `theta`, `xi` (pi).
    pub fn cycle(&self, name: &str) -> Result<Vec<RingElement>> {
        let section = if name == "psi" { "x" } else { "y" };
        self.elements("cycles.toml", section, name)
    }

    /// `beta` or `nu`.
    pub fn named_element(&self, name: &str) -> Result<RingElement> {
        self.element("cycles.toml", "x", name)
    }

    pub fn basis_labels(&self, name: &str) -> Result<Vec<Vec<String>>> {
        Ok(self
            .string_rows("bases.toml", &[name, "labels"])?
            .into_iter()
            .map(|r| r.into_iter().map(String::from).collect())
            .collect())
    }

    /// Adapted basis `x`, `y` or `z`, with its inverse checked.
    pub fn basis(&self, name: &str) -> Result<BasisChange> {
        let file = "bases.toml";
        let g = self.group(file, name)?;
        let read = |key: &str| -> Result<Vec<RingMatrix>> {
            let v = self.value(file, &[name, key])?;
            let degrees = v.as_array().ok_or_else(|| format_err(file, &[name, key], "a list per degree"))?;
            degrees
                .iter()
                .map(|d| {
                    let cols: Vec<Vec<&str>> = d
                        .as_array()
                        .and_then(|c| c.iter().map(strings_of).collect())
                        .ok_or_else(|| format_err(file, &[name, key], "lists of vectors"))?;
                    columns_to_matrix(g, &cols)
                })
                .collect()
        };
        Ok(BasisChange::new(read("vectors")?, read("inverse")?)?.with_labels(self.basis_labels(name)?))
    }

    /// Differentials `[d1, d2, d3]` expected in the adapted basis `name`.
    pub fn expected_differentials(&self, name: &str) -> Result<Vec<RingMatrix>> {
        let file = "bases.toml";
        let g = self.group(file, name)?;
        ["d1", "d2", "d3"]
            .iter()
            .map(|d| RingMatrix::parse_rows(g, &self.string_rows(file, &[name, "expected", d])?))
            .collect()
    }

    /// Name of the adapted basis a diagonal table is written in.
    pub fn diagonal_basis(&self, name: &str) -> Result<&str> {
        self.string("diagonal.toml", &[name, "complex"])
    }

    /// `(cell label, terms)` of the diagonal table `l` or `k`.
    pub fn diagonal_entries(&self, name: &str) -> Result<Vec<(String, Vec<String>)>> {
        let file = "diagonal.toml";
        let cells = self
            .value(file, &[name, "cells"])?
            .as_array()
            .ok_or_else(|| format_err(file, &[name, "cells"], "an array of tables"))?;
        cells
            .iter()
            .map(|c| {
                let cell = c.get("cell").and_then(Value::as_str);
                let terms = c.get("terms").and_then(strings_of);
                match (cell, terms) {
                    (Some(cell), Some(terms)) => Ok((cell.to_string(), terms.into_iter().map(String::from).collect())),
                    _ => Err(format_err(file, &[name, "cells"], "entries with `cell` and `terms`")),
                }
            })
            .collect()
    }

    pub fn diagonal_table(&self, name: &str, cx: &FreeComplex) -> Result<DiagonalTable> {
        DiagonalTable::parse(cx, &self.diagonal_entries(name)?)
    }

    /// Pairs `(x, generator of the left annihilator of x)` in Z[S3].
    pub fn annihilators(&self) -> Result<Vec<(RingElement, RingElement)>> {
        let g = self.group("lemma.toml", "s3")?;
        self.string_rows("lemma.toml", &["s3", "annihilators"])?
            .into_iter()
            .map(|pair| match pair.as_slice() {
                [x, y] => Ok((RingElement::parse(g, x)?, RingElement::parse(g, y)?)),
                _ => Err(format_err("lemma.toml", &["s3", "annihilators"], "pairs")),
            })
            .collect()
    }

    pub fn lifting_coefficients(&self) -> Result<Vec<RingElement>> {
        self.elements("lemma.toml", "s3", "lifting")
    }

    pub fn kernel_generators(&self) -> Result<Vec<RingElement>> {
        self.elements("lemma.toml", "pi", "kernel")
    }

    /// Ideal generators of each cyclic summand of `i_pi`, `j_plus`, `j_minus`.
    pub fn module_reference(&self, name: &str) -> Result<Vec<Vec<RElement>>> {
        self.string_rows("rmodule.toml", &[name, "summands"])?
            .into_iter()
            .map(|s| s.into_iter().map(RElement::parse).collect())
            .collect()
    }

    pub fn expected_homology(&self, name: &str) -> Result<Vec<AbelianGroupDescriptor>> {
        self.strings("expected.toml", &["homology", name])?.into_iter().map(str::parse).collect()
    }

    pub fn expected_descriptor(&self, section: &str, name: &str) -> Result<AbelianGroupDescriptor> {
        self.string("expected.toml", &[section, name])?.parse()
    }

    pub fn expected_betti(&self, name: &str) -> Result<Vec<usize>> {
        let path = ["homology", name];
        let v = self.value("expected.toml", &path)?;
        v.as_array()
            .and_then(|xs| xs.iter().map(|x| x.as_integer().and_then(|n| usize::try_from(n).ok())).collect())
            .ok_or_else(|| format_err("expected.toml", &path, "a list of non-negative integers"))
    }

    /// Named artifact for display.
    pub fn get(&self, name: &str) -> Result<Artifact> {
        let artifact = match name {
            "psi" | "theta" | "xi" => Artifact::Chain(self.cycle(name)?),
            "beta" | "nu" => Artifact::Element(self.named_element(name)?),
            "kernel" => Artifact::Chain(self.kernel_generators()?),
            "lifting" => Artifact::Chain(self.lifting_coefficients()?),
            _ => {
                let (kind, rest) = name.split_once('.').ok_or_else(|| Error::UnknownArtifact(name.into()))?;
                match kind {
                    "presentation" => Artifact::Presentation(self.presentation(rest)?),
                    "complex" => Artifact::Matrices(self.displayed_differentials(rest)?),
                    "basis" => Artifact::Basis(self.basis(rest)?),
                    "expected" => Artifact::Matrices(self.expected_differentials(rest)?),
                    "delta" => Artifact::Diagonal(self.diagonal_entries(rest)?),
                    "module" => Artifact::Module(self.module_reference(rest)?),
                    "homology" => Artifact::Homology(self.expected_homology(rest)?),
                    _ => return Err(Error::UnknownArtifact(name.into())),
                }
            }
        };
        Ok(artifact)
    }

    /// Every single-coefficient fault that can be injected. The sign of a lone
    /// generator of an R-ideal is not a site: `(a + 1, -3) = (a + 1, 3)`.
    pub fn mutation_sites(&self) -> Vec<MutationSite> {
        let mut sites = Vec::new();
        for (file, doc) in &self.docs {
            if NOT_MUTABLE.contains(&file.as_str()) {
                continue;
            }
            let mut path = Vec::new();
            self.walk(file, doc, &mut path, None, &mut sites);
        }
        sites
    }

    fn walk(
        &self,
        file: &str,
        table: &Table,
        path: &mut Vec<Seg>,
        group: Option<GroupId>,
        out: &mut Vec<MutationSite>,
    ) {
        let group = table.get("group").and_then(Value::as_str).and_then(|g| g.parse().ok()).or(group);
        if let Some(basis) = table.get("complex").and_then(Value::as_str) {
            let Ok(cx) = self.label_complex(basis) else { return };
            let Some(cells) = table.get("cells").and_then(Value::as_array) else { return };
            for (i, cell) in cells.iter().enumerate() {
                let Some(terms) = cell.get("terms").and_then(strings_of) else { continue };
                let Ok(value) = sum_terms(&cx, &terms) else { continue };
                let mut p = path.clone();
                p.extend([Seg::Key("cells".into()), Seg::Index(i), Seg::Key("terms".into())]);
                for term in 0..value.len() {
                    out.push(MutationSite {
                        file: file.into(),
                        path: p.clone(),
                        term,
                        kind: SiteKind::Tensor(basis.into()),
                    });
                }
            }
            return;
        }
        for (key, v) in table {
            if STRUCTURAL_KEYS.contains(&key.as_str()) {
                continue;
            }
            path.push(Seg::Key(key.clone()));
            self.walk_value(file, v, path, group, out);
            path.pop();
        }
    }

    fn walk_value(
        &self,
        file: &str,
        v: &Value,
        path: &mut Vec<Seg>,
        group: Option<GroupId>,
        out: &mut Vec<MutationSite>,
    ) {
        match v {
            Value::Table(t) => self.walk(file, t, path, group, out),
            Value::Array(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    path.push(Seg::Index(i));
                    self.walk_value(file, x, path, group, out);
                    path.pop();
                }
            }
            Value::String(s) => match group {
                Some(g) => {
                    if let Ok(x) = RingElement::parse(g, s) {
                        for term in 0..x.support_len() {
                            out.push(MutationSite {
                                file: file.into(),
                                path: path.clone(),
                                term,
                                kind: SiteKind::Ring(g),
                            });
                        }
                    }
                }
                None => {
                    if let Ok(x) = RElement::parse(s) {
                        let nonzero = [!x.u.is_zero(), !x.v.is_zero()];
                        if nonzero == [true, true] {
                            for term in 0..2 {
                                out.push(MutationSite {
                                    file: file.into(),
                                    path: path.clone(),
                                    term,
                                    kind: SiteKind::R,
                                });
                            }
                        }
                    }
                }
            },
            _ => {}
        }
    }

    /// Complex carrying only the labels of an adapted basis, enough to parse chains.
    fn label_complex(&self, basis: &str) -> Result<FreeComplex> {
        let g = self.group("bases.toml", basis)?;
        let labels = self.basis_labels(basis)?;
        let diffs = (1..labels.len()).map(|k| RingMatrix::zeros(g, labels[k - 1].len(), labels[k].len())).collect();
        FreeComplex::new(g, diffs, labels)
    }

    /// Copy of the corpus with the coefficient at `site` negated.
    pub fn mutate(&self, site: &MutationSite) -> Result<Corpus> {
        let mut docs = self.docs.clone();
        let doc = docs.get_mut(&site.file).ok_or_else(|| Error::UnknownArtifact(site.file.clone()))?;
        let slot = locate(doc, &site.path).ok_or_else(|| Error::UnknownArtifact(site.to_string()))?;
        match &site.kind {
            SiteKind::Ring(g) => {
                let s = slot.as_str().ok_or_else(|| Error::Format(site.to_string()))?;
                let x = RingElement::parse(*g, s)?;
                let (h, c) = x.terms().nth(site.term).ok_or_else(|| Error::Format(site.to_string()))?;
                let flipped = RingElement::from_terms(*g, [(h.clone(), -BigInt::from(2) * c)])?;
                *slot = Value::String(x.try_add(&flipped)?.to_string());
            }
            SiteKind::R => {
                let x = RElement::parse(slot.as_str().ok_or_else(|| Error::Format(site.to_string()))?)?;
                let y =
                    if site.term == 0 { RElement::new(-&x.u, x.v.clone()) } else { RElement::new(x.u.clone(), -&x.v) };
                *slot = Value::String(y.to_string());
            }
            SiteKind::Tensor(basis) => {
                let cx = self.label_complex(basis)?;
                let terms = slot.as_array_mut().ok_or_else(|| Error::Format(site.to_string()))?;
                let strs: Vec<&str> = terms.iter().filter_map(Value::as_str).collect();
                let value = sum_terms(&cx, &strs)?;
                let (key, n) = value.terms().nth(site.term).ok_or_else(|| Error::Format(site.to_string()))?;
                let side = |cell: Cell, g: &GroupElement, coeff: BigInt| {
                    let mut c = Chain::zero(&cx, cell.degree);
                    c.coords[cell.index] =
                        RingElement::from_terms(cx.group(), [(g.clone(), coeff)]).expect("same group");
                    c.format(&cx)
                };
                let correction = format!(
                    "{} ⊗ {}",
                    side(key.left, &key.g, -BigInt::from(2) * n),
                    side(key.right, &key.h, BigInt::from(1))
                );
                terms.push(Value::String(correction));
            }
        }
        let texts = self
            .texts
            .iter()
            .map(|(name, text)| {
                let t =
                    if *name == site.file { toml::to_string(&docs[name]).expect("serializable") } else { text.clone() };
                (name.clone(), t)
            })
            .collect();
        Corpus::from_texts(texts)
    }
}

fn sum_terms(cx: &FreeComplex, terms: &[&str]) -> Result<TensorElement> {
    let mut acc = TensorElement::zero(cx.group());
    for t in terms {
        acc.add_assign(&parse_tensor_term(cx, t)?);
    }
    Ok(acc)
}

fn strings_of(v: &Value) -> Option<Vec<&str>> {
    v.as_array()?.iter().map(Value::as_str).collect()
}

fn format_err(file: &str, path: &[&str], what: &str) -> Error {
    Error::Format(format!("{file}:{} should be {what}", path.join(".")))
}

fn columns_to_matrix(g: GroupId, cols: &[Vec<&str>]) -> Result<RingMatrix> {
    let n = cols.first().map_or(0, Vec::len);
    if cols.iter().any(|c| c.len() != n) {
        return Err(Error::Shape("basis vectors of different lengths".into()));
    }
    let rows: Vec<Vec<&str>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    RingMatrix::parse_rows(g, &rows)
}

fn locate<'a>(doc: &'a mut Table, path: &[Seg]) -> Option<&'a mut Value> {
    let (first, rest) = path.split_first()?;
    let Seg::Key(k) = first else { return None };
    let mut v = doc.get_mut(k)?;
    for seg in rest {
        v = match seg {
            Seg::Key(k) => v.as_table_mut()?.get_mut(k)?,
            Seg::Index(i) => v.as_array_mut()?.get_mut(*i)?,
        };
    }
    Some(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Seg {
    Key(String),
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SiteKind {
    Ring(GroupId),
    R,
    /// A coefficient of a diagonal value, written in the named basis.
    Tensor(String),
}

/// One coefficient of the corpus: term `term` of the value at `path`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutationSite {
    pub file: String,
    path: Vec<Seg>,
    pub term: usize,
    pub kind: SiteKind,
}

impl fmt::Display for MutationSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.file)?;
        for (i, seg) in self.path.iter().enumerate() {
            match seg {
                Seg::Key(k) if i == 0 => write!(f, "{k}")?,
                Seg::Key(k) => write!(f, ".{k}")?,
                Seg::Index(n) => write!(f, "[{n}]")?,
            }
        }
        write!(f, " term {}", self.term)
    }
}

#[derive(Clone, Debug)]
pub enum Artifact {
    Element(RingElement),
    Chain(Vec<RingElement>),
    Presentation(Presentation),
    Matrices(Vec<RingMatrix>),
    Basis(BasisChange),
    Diagonal(Vec<(String, Vec<String>)>),
    Module(Vec<Vec<RElement>>),
    Homology(Vec<AbelianGroupDescriptor>),
}

impl fmt::Display for Artifact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Artifact::Element(x) => write!(f, "{x}"),
            Artifact::Chain(xs) => {
                write!(f, "(")?;
                for (i, x) in xs.iter().enumerate() {
                    write!(f, "{}{x}", if i > 0 { ", " } else { "" })?;
                }
                write!(f, ")")
            }
            Artifact::Presentation(p) => write!(f, "{p}"),
            Artifact::Matrices(ms) => {
                for (k, m) in ms.iter().enumerate() {
                    writeln!(f, "d{}:\n{m}", k + 1)?;
                }
                Ok(())
            }
            Artifact::Basis(b) => {
                for k in 0..b.degrees() {
                    writeln!(f, "degree {k}:\n{}", b.matrix(k))?;
                }
                Ok(())
            }
            Artifact::Diagonal(cells) => {
                for (cell, terms) in cells {
                    writeln!(f, "D({cell}) = {}", terms.join(" + "))?;
                }
                Ok(())
            }
            Artifact::Module(summands) => {
                let parts: Vec<String> = summands
                    .iter()
                    .map(|gens| format!("R/({})", gens.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
            Artifact::Homology(hs) => {
                let parts: Vec<String> = hs.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_corpus_loads() {
        let c = Corpus::embedded();
        assert_eq!(c.hash().len(), 64);
        for name in ["psi", "theta", "xi", "beta", "nu", "presentation.s3", "basis.x", "basis.y", "basis.z", "delta.l"]
        {
            c.get(name).unwrap();
        }
        assert!(matches!(c.get("nope"), Err(Error::UnknownArtifact(_))));
        assert_eq!(c.expected_betti("y_betti_f2").unwrap(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn xi_differs_from_theta_in_the_last_entry_only() {
        let c = Corpus::embedded();
        let (t, x) = (c.cycle("theta").unwrap(), c.cycle("xi").unwrap());
        assert_eq!(t[..2], x[..2]);
        assert!(t[2].try_add(&x[2]).unwrap().is_zero());
    }

    #[test]
    fn elements_round_trip() {
        let c = Corpus::embedded();
        for site in c.mutation_sites().iter().filter(|s| s.term == 0) {
            if let SiteKind::Ring(g) = site.kind {
                let doc = &c.docs[&site.file];
                let mut d = doc.clone();
                let s = locate(&mut d, &site.path).unwrap().as_str().unwrap().to_string();
                let x = RingElement::parse(g, &s).unwrap();
                assert_eq!(RingElement::parse(g, &x.to_string()).unwrap(), x, "{site}");
            }
        }
    }

    #[test]
    fn mutation_changes_exactly_one_file() {
        let c = Corpus::embedded();
        let sites = c.mutation_sites();
        assert!(sites.len() > 100);
        for site in [&sites[0], &sites[sites.len() / 2], sites.last().unwrap()] {
            let m = c.mutate(site).unwrap();
            assert_ne!(m.hash(), c.hash());
            let changed: Vec<_> =
                c.texts().iter().zip(m.texts()).filter(|(a, b)| a.1 != b.1).map(|(a, _)| &a.0).collect();
            assert_eq!(changed, vec![&site.file]);
        }
    }
}
