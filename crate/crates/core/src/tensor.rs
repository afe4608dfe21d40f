//! Chains, the tensor square `C (x)_Z C` with diagonal group action, the
//! Koszul boundary, the transposition, and verification of diagonal tables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{ChainMap, FreeComplex};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupId};
use crate::ring::RingElement;

/// A homogeneous chain `sum_j coords[j] x_j` in degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub degree: usize,
    pub coords: Vec<RingElement>,
}

impl Chain {
    pub fn zero(cx: &FreeComplex, degree: usize) -> Self {
        Chain { degree, coords: vec![RingElement::zero(cx.group()); cx.ranks()[degree]] }
    }

    pub fn basis(cx: &FreeComplex, degree: usize, index: usize) -> Self {
        let mut c = Self::zero(cx, degree);
        c.coords[index] = RingElement::one(cx.group());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(RingElement::is_zero)
    }

    pub fn add(&self, other: &Chain) -> Result<Chain> {
        if self.degree != other.degree || self.coords.len() != other.coords.len() {
            return Err(Error::Shape(format!("cannot add chains of degrees {} and {}", self.degree, other.degree)));
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(x, y)| x.try_add(y)).collect::<Result<_>>()?;
        Ok(Chain { degree: self.degree, coords })
    }

    pub fn left_mul(&self, r: &RingElement) -> Result<Chain> {
        let coords = self.coords.iter().map(|x| r.try_mul(x)).collect::<Result<_>>()?;
        Ok(Chain { degree: self.degree, coords })
    }

    pub fn boundary(&self, cx: &FreeComplex) -> Result<Chain> {
        if self.degree == 0 {
            return Err(Error::Shape("degree-0 chains have no boundary".into()));
        }
        Ok(Chain { degree: self.degree - 1, coords: cx.differential(self.degree).apply(&self.coords)? })
    }

    /// Parse a chain written with the basis labels of `cx`.
    ///
    /// ```text
    /// chain := [+|-] term (('+'|'-') term)*
    /// term  := '(' chain ')' | [ring '*'] LABEL | ring
    /// ```
    /// A term without a label is a 0-chain.
    pub fn parse(cx: &FreeComplex, text: &str) -> Result<Chain> {
        let terms = split_top_level(text)?;
        let mut acc: Option<Chain> = None;
        for (negative, pos, body) in terms {
            let mut c = parse_term(cx, body, pos)?;
            if negative {
                c = c.left_mul(&-RingElement::one(cx.group()))?;
            }
            acc = Some(match acc {
                None => c,
                Some(a) => a.add(&c).map_err(|_| Error::syntax(pos, "terms of different degrees"))?,
            });
        }
        acc.ok_or_else(|| Error::syntax(0, "empty chain"))
    }

    pub fn format(&self, cx: &FreeComplex) -> String {
        let mut parts = Vec::new();
        for (j, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let label = &cx.labels(self.degree)[j];
            if self.degree == 0 {
                parts.push(format!("({x})"));
            } else {
                parts.push(format!("({x})*{label}"));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Split at top-level `+`/`-` (outside parentheses, not after `^`).
fn split_top_level(text: &str) -> Result<Vec<(bool, usize, &str)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let mut pending = false;
    let mut prev: Option<char> = None;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::syntax(i, "unbalanced ')'"));
                }
            }
            '+' | '-' if depth == 0 && prev != Some('^') => {
                let body = text[start..i].trim();
                if !body.is_empty() {
                    out.push((negative, start, body));
                } else if pending {
                    return Err(Error::syntax(i, "missing term"));
                }
                pending = true;
                negative = ch == '-';
                start = i + 1;
            }
            _ => {}
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if depth != 0 {
        return Err(Error::syntax(text.len(), "unbalanced '('"));
    }
    let body = text[start..].trim();
    if body.is_empty() {
        return Err(Error::syntax(text.len(), "missing term"));
    }
    out.push((negative, start, body));
    Ok(out)
}

fn parse_term(cx: &FreeComplex, body: &str, pos: usize) -> Result<Chain> {
    let group = cx.group();
    if body.starts_with('(') && matching_paren(body) == Some(body.len() - 1) {
        return Chain::parse(cx, &body[1..body.len() - 1]).map_err(|e| shift(e, pos + 1));
    }
    // label after the last top-level '*', or the whole term
    let mut depth = 0;
    let mut split = None;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => split = Some(i),
            _ => {}
        }
    }
    let (coeff, label) = match split {
        Some(i) => (Some(body[..i].trim()), body[i + 1..].trim()),
        None => (None, body),
    };
    if let Some((degree, index)) = cx.find_label(label) {
        let r = match coeff {
            Some(c) => RingElement::parse(group, c).map_err(|e| shift(e, pos))?,
            None => RingElement::one(group),
        };
        let mut chain = Chain::zero(cx, degree);
        chain.coords[index] = r;
        return Ok(chain);
    }
    let r = RingElement::parse(group, body).map_err(|e| shift(e, pos))?;
    let mut chain = Chain::zero(cx, 0);
    if chain.coords.len() != 1 {
        return Err(Error::syntax(pos, "bare ring elements need a complex with one 0-cell"));
    }
    chain.coords[0] = r;
    Ok(chain)
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + offset, msg },
        other => other,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub degree: usize,
    pub index: usize,
}

/// `n * (g x) (x) (h y)` is stored under key `(x, g, y, h)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorKey {
    pub left: Cell,
    pub g: GroupElement,
    pub right: Cell,
    pub h: GroupElement,
}

/// Element of `C (x)_Z C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    group: GroupId,
    terms: BTreeMap<TensorKey, BigInt>,
}

impl TensorElement {
    pub fn zero(group: GroupId) -> Self {
        TensorElement { group, terms: BTreeMap::new() }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: TensorKey, n: BigInt) {
        if n.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *e += n;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &TensorElement) {
        for (k, n) in &other.terms {
            self.add_term(k.clone(), n.clone());
        }
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        for (k, n) in &other.terms {
            out.add_term(k.clone(), -n);
        }
        out
    }

    pub fn scale(&self, n: &BigInt) -> TensorElement {
        let mut out = TensorElement::zero(self.group);
        for (k, m) in &self.terms {
            out.add_term(k.clone(), m * n);
        }
        out
    }

    /// `x (x) y`, bilinear over Z.
    pub fn tensor(x: &Chain, y: &Chain) -> TensorElement {
        let group = x.coords.first().or(y.coords.first()).map_or(GroupId::Free, RingElement::group);
        let mut out = TensorElement::zero(group);
        for (i, r) in x.coords.iter().enumerate() {
            for (j, s) in y.coords.iter().enumerate() {
                for (g, m) in r.terms() {
                    for (h, n) in s.terms() {
                        out.add_term(
                            TensorKey {
                                left: Cell { degree: x.degree, index: i },
                                g: g.clone(),
                                right: Cell { degree: y.degree, index: j },
                                h: h.clone(),
                            },
                            m * n,
                        );
                    }
                }
            }
        }
        out
    }

    /// Diagonal action `(g (x) g) t`.
    pub fn translate(&self, g: &GroupElement) -> TensorElement {
        let mut out = TensorElement::zero(self.group);
        for (k, n) in &self.terms {
            out.add_term(TensorKey { left: k.left, g: g * &k.g, right: k.right, h: g * &k.h }, n.clone());
        }
        out
    }

    /// Bidegrees `(p, q)` present.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(|k| (k.left.degree, k.right.degree)).collect();
        v.dedup();
        v.sort();
        v.dedup();
        v
    }

    /// `d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy`
    pub fn boundary(&self, cx: &FreeComplex) -> TensorElement {
        let mut out = TensorElement::zero(self.group);
        for (k, n) in &self.terms {
            if k.left.degree > 0 {
                let d = cx.differential(k.left.degree);
                for row in 0..d.rows() {
                    for (g2, m) in d.get(row, k.left.index).left_mul_element(&k.g).terms() {
                        out.add_term(
                            TensorKey {
                                left: Cell { degree: k.left.degree - 1, index: row },
                                g: g2.clone(),
                                right: k.right,
                                h: k.h.clone(),
                            },
                            n * m,
                        );
                    }
                }
            }
            if k.right.degree > 0 {
                let sign = if k.left.degree % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let d = cx.differential(k.right.degree);
                for row in 0..d.rows() {
                    for (h2, m) in d.get(row, k.right.index).left_mul_element(&k.h).terms() {
                        out.add_term(
                            TensorKey {
                                left: k.left,
                                g: k.g.clone(),
                                right: Cell { degree: k.right.degree - 1, index: row },
                                h: h2.clone(),
                            },
                            &sign * n * m,
                        );
                    }
                }
            }
        }
        out
    }

    /// `tau(x (x) y) = (-1)^{pq} y (x) x`
    pub fn transpose_tau(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.group);
        for (k, n) in &self.terms {
            let sign = if (k.left.degree * k.right.degree) % 2 == 0 { n.clone() } else { -n };
            out.add_term(TensorKey { left: k.right, g: k.h.clone(), right: k.left, h: k.g.clone() }, sign);
        }
        out
    }

    /// `(eps (x) 1) t` as a chain: keeps the terms with a 0-cell on the left.
    pub fn counit_left(&self, cx: &FreeComplex, degree: usize) -> Chain {
        let mut c = Chain::zero(cx, degree);
        for (k, n) in &self.terms {
            if k.left.degree == 0 && k.right.degree == degree {
                c.coords[k.right.index].add_term(k.h.clone(), n.clone());
            }
        }
        c
    }

    /// `(1 (x) eps) t` as a chain.
    pub fn counit_right(&self, cx: &FreeComplex, degree: usize) -> Chain {
        let mut c = Chain::zero(cx, degree);
        for (k, n) in &self.terms {
            if k.right.degree == 0 && k.left.degree == degree {
                c.coords[k.left.index].add_term(k.g.clone(), n.clone());
            }
        }
        c
    }

    /// `(f (x) f) t` for a chain map `f` (images read in the target complex).
    pub fn map(&self, f: &ChainMap) -> Result<TensorElement> {
        let mut out = TensorElement::zero(f.hom.target());
        for (k, n) in &self.terms {
            let left = image_of_cell(f, k.left, &k.g)?;
            let right = image_of_cell(f, k.right, &k.h)?;
            out.add_assign(&TensorElement::tensor(&left, &right).scale(n));
        }
        Ok(out)
    }

    pub fn format(&self, cx: &FreeComplex) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (k, n)) in self.terms.iter().enumerate() {
            let negative = n < &BigInt::zero();
            match (i, negative) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let abs = if negative { -n } else { n.clone() };
            if !abs.is_one() {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&format!("{} ⊗ {}", cell_text(cx, k.left, &k.g), cell_text(cx, k.right, &k.h)));
        }
        s
    }
}

fn cell_text(cx: &FreeComplex, cell: Cell, g: &GroupElement) -> String {
    let label = &cx.labels(cell.degree)[cell.index];
    match (cell.degree, g.is_identity()) {
        (0, _) => g.to_string(),
        (_, true) => label.clone(),
        _ => format!("{g}*{label}"),
    }
}

fn image_of_cell(f: &ChainMap, cell: Cell, g: &GroupElement) -> Result<Chain> {
    let m = &f.matrices[cell.degree];
    let hg = RingElement::from_element(f.hom.apply(g)?);
    let coords = (0..m.rows()).map(|i| hg.try_mul(m.get(i, cell.index))).collect::<Result<_>>()?;
    Ok(Chain { degree: cell.degree, coords })
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}[{}]", self.degree, self.index)
    }
}

/// Values of a diagonal approximation on basis cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalTable {
    cells: BTreeMap<Cell, TensorElement>,
}

impl DiagonalTable {
    pub fn new() -> Self {
        DiagonalTable { cells: BTreeMap::new() }
    }

    pub fn insert(&mut self, cell: Cell, value: TensorElement) {
        self.cells.insert(cell, value);
    }

    pub fn get(&self, cell: Cell) -> Option<&TensorElement> {
        self.cells.get(&cell)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Cell, &TensorElement)> {
        self.cells.iter()
    }

    /// Parse `label -> ["[-] left ⊗ right", ...]` entries; `(x)` may stand for `⊗`.
    pub fn parse<S: AsRef<str>>(cx: &FreeComplex, entries: &[(S, Vec<S>)]) -> Result<Self> {
        let mut table = DiagonalTable::new();
        for (label, terms) in entries {
            let label = label.as_ref();
            let (degree, index) =
                cx.find_label(label).ok_or_else(|| Error::Format(format!("unknown cell label {label:?}")))?;
            let mut value = TensorElement::zero(cx.group());
            for t in terms {
                value.add_assign(&parse_tensor_term(cx, t.as_ref())?);
            }
            if let Some((p, q)) = value.bidegrees().into_iter().find(|(p, q)| p + q != degree) {
                return Err(Error::Format(format!("value of {label} has a term in bidegree ({p}, {q})")));
            }
            table.insert(Cell { degree, index }, value);
        }
        Ok(table)
    }

    /// Equivariant extension to a chain: `D(r x) = sum_g r_g (g (x) g) D(x)`.
    /// Degree-0 cells missing from the table use `g -> g (x) g`.
    pub fn apply(&self, cx: &FreeComplex, chain: &Chain) -> Result<TensorElement> {
        let mut out = TensorElement::zero(cx.group());
        for (i, r) in chain.coords.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let cell = Cell { degree: chain.degree, index: i };
            let base = match self.cells.get(&cell) {
                Some(v) => v.clone(),
                None if chain.degree == 0 => {
                    let one = Chain::basis(cx, 0, i);
                    TensorElement::tensor(&one, &one)
                }
                None => return Err(Error::Format(format!("no diagonal value for {}", cx.labels(cell.degree)[i]))),
            };
            for (g, n) in r.terms() {
                out.add_assign(&base.translate(g).scale(n));
            }
        }
        Ok(out)
    }
}

impl Default for DiagonalTable {
    fn default() -> Self {
        Self::new()
    }
}

pub(crate) fn parse_tensor_term(cx: &FreeComplex, text: &str) -> Result<TensorElement> {
    let normalized = text.replace("(x)", "⊗");
    let parts: Vec<&str> = normalized.split('⊗').collect();
    if parts.len() != 2 {
        return Err(Error::Format(format!("tensor term needs exactly one ⊗: {text:?}")));
    }
    let left_text = parts[0].trim();
    let left = Chain::parse(cx, left_text)?;
    let right = Chain::parse(cx, parts[1].trim())?;
    Ok(TensorElement::tensor(&left, &right))
}

/// Cells that failed a diagonal check, with their residual tensors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagonalReport {
    pub checked: usize,
    pub failures: Vec<(String, String)>,
}

impl DiagonalReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, label: String, residual: Option<String>) {
        self.checked += 1;
        if let Some(r) = residual {
            self.failures.push((label, r));
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagonalMode {
    /// `(eps (x) 1) D = id = (1 (x) eps) D` on every tabulated cell.
    Counit,
    /// `d D(x) = D(d x)` for tabulated cells of degree 1 and 2.
    ChainMap,
}

pub fn verify_diagonal(table: &DiagonalTable, cx: &FreeComplex, mode: DiagonalMode) -> Result<DiagonalReport> {
    let mut report = DiagonalReport::default();
    for (cell, value) in table.cells() {
        let label = cx.labels(cell.degree)[cell.index].clone();
        let x = Chain::basis(cx, cell.degree, cell.index);
        match mode {
            DiagonalMode::Counit => {
                let l = value.counit_left(cx, cell.degree);
                let r = value.counit_right(cx, cell.degree);
                let mut bad = Vec::new();
                if l != x {
                    bad.push(format!("(eps⊗1) gives {}", l.format(cx)));
                }
                if r != x {
                    bad.push(format!("(1⊗eps) gives {}", r.format(cx)));
                }
                report.record(label, (!bad.is_empty()).then(|| bad.join("; ")));
            }
            DiagonalMode::ChainMap => {
                if cell.degree == 0 || cell.degree > 2 {
                    continue;
                }
                let lhs = value.boundary(cx);
                let rhs = table.apply(cx, &x.boundary(cx)?)?;
                let res = lhs.sub(&rhs);
                report.record(label, (!res.is_zero()).then(|| res.format(cx)));
            }
        }
    }
    Ok(report)
}

/// `D_L(f x) = (f (x) f) D_K(x)` for every tabulated cell `x` of K.
pub fn verify_embedding(
    table_k: &DiagonalTable,
    cx_k: &FreeComplex,
    table_l: &DiagonalTable,
    cx_l: &FreeComplex,
    f: &ChainMap,
) -> Result<DiagonalReport> {
    let mut report = DiagonalReport::default();
    for (cell, value) in table_k.cells() {
        let label = cx_k.labels(cell.degree)[cell.index].clone();
        let image = f.apply(cell.degree, &Chain::basis(cx_k, cell.degree, cell.index).coords)?;
        let lhs = table_l.apply(cx_l, &Chain { degree: cell.degree, coords: image })?;
        let rhs = value.map(f)?;
        let res = lhs.sub(&rhs);
        report.record(label, (!res.is_zero()).then(|| res.format(cx_l)));
    }
    Ok(report)
}

/// `(r (x) r) D_L(x) = D_K(r x)` for every tabulated cell `x` of L.
pub fn verify_collapse(
    table_l: &DiagonalTable,
    cx_l: &FreeComplex,
    table_k: &DiagonalTable,
    cx_k: &FreeComplex,
    r: &ChainMap,
) -> Result<DiagonalReport> {
    let mut report = DiagonalReport::default();
    for (cell, value) in table_l.cells() {
        let label = cx_l.labels(cell.degree)[cell.index].clone();
        let image = r.apply(cell.degree, &Chain::basis(cx_l, cell.degree, cell.index).coords)?;
        let rhs = table_k.apply(cx_k, &Chain { degree: cell.degree, coords: image })?;
        let lhs = value.map(r)?;
        let res = lhs.sub(&rhs);
        report.record(label, (!res.is_zero()).then(|| format!("{} terms: {}", res.len(), res.format(cx_k))));
    }
    Ok(report)
}
