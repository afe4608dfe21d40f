//! Words, rewriting systems and normal forms for the small groups used here:
//! the symmetric group S3 = <a, b | a^2, abab^-2>, the amalgam
//! pi = S3 *_{Z/2} S3 = <a, b, c | a^2, abab^-2, acac^-2>, the cyclic groups
//! Z/2 = <a> and Z/3 = <b>, the index-two subgroup pi' = <b, c> = Z/3 * Z/3,
//! and the free group on a, b, c.
//!
//! Normal forms are a-prefix-left: every element of pi is `a^e w` with
//! `e` in {0, 1} and `w` an alternating word in the syllables b, b^2, c, c^2.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    A,
    B,
    C,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::A, Generator::B, Generator::C];

    pub fn letter(self) -> char {
        match self {
            Generator::A => 'a',
            Generator::B => 'b',
            Generator::C => 'c',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'a' => Some(Generator::A),
            'b' => Some(Generator::B),
            'c' => Some(Generator::C),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub gen: Generator,
    pub exp: i32,
}

/// A word in the generators, stored as syllables `x^k` with `k != 0`.
///
/// Adjacent syllables may repeat a generator until the word is normalized.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Syllable>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: Generator) -> Self {
        Word(vec![Syllable { gen: g, exp: 1 }])
    }

    pub fn power(g: Generator, exp: i32) -> Self {
        if exp == 0 {
            Word::identity()
        } else {
            Word(vec![Syllable { gen: g, exp }])
        }
    }

    pub fn from_syllables(syllables: impl IntoIterator<Item = Syllable>) -> Self {
        Word(syllables.into_iter().filter(|s| s.exp != 0).collect())
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Formal inverse in the free group.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| Syllable { gen: s.gen, exp: -s.exp }).collect())
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.0.iter().map(|s| s.gen)
    }

    /// Expand into single letters; `None` if some exponent is negative.
    fn letters(&self) -> Option<Vec<Generator>> {
        let mut out = Vec::new();
        for s in &self.0 {
            if s.exp < 0 {
                return None;
            }
            out.extend(std::iter::repeat_n(s.gen, s.exp as usize));
        }
        Some(out)
    }

    fn from_letters(letters: &[Generator]) -> Word {
        let mut out: Vec<Syllable> = Vec::new();
        for &g in letters {
            match out.last_mut() {
                Some(last) if last.gen == g => last.exp += 1,
                _ => out.push(Syllable { gen: g, exp: 1 }),
            }
        }
        Word(out)
    }

    /// Free reduction: merge equal neighbours, drop zero exponents.
    fn freely_reduced(&self) -> Word {
        let mut out: Vec<Syllable> = Vec::new();
        for s in &self.0 {
            match out.last_mut() {
                Some(last) if last.gen == s.gen => {
                    last.exp += s.exp;
                    if last.exp == 0 {
                        out.pop();
                    }
                }
                _ => {
                    if s.exp != 0 {
                        out.push(*s)
                    }
                }
            }
        }
        Word(out)
    }

    fn letter_len(&self) -> usize {
        self.0.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    pub fn parse(text: &str) -> Result<Word> {
        text.parse()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if s.exp == 1 {
                write!(f, "{}", s.gen)?;
            } else {
                write!(f, "{}^{}", s.gen, s.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Grammar: `1` or `x[^k]*x[^k]*...` with `x` in {a, b, c} and `k` a
    /// nonzero integer. Whitespace is ignored.
    fn from_str(text: &str) -> Result<Word> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "1" {
            return Ok(Word::identity());
        }
        if compact.is_empty() {
            return Err(Error::syntax(0, "empty word"));
        }
        let mut syllables = Vec::new();
        let mut pos = 0;
        for part in compact.split('*') {
            let mut chars = part.chars();
            let letter = chars.next().ok_or_else(|| Error::syntax(pos, "empty factor"))?;
            let gen = Generator::from_letter(letter).ok_or_else(|| {
                if letter.is_ascii_alphabetic() {
                    Error::UnknownSymbol(letter.to_string())
                } else {
                    Error::syntax(pos, format!("unexpected '{letter}'"))
                }
            })?;
            let rest: &str = chars.as_str();
            let exp = if rest.is_empty() {
                1
            } else if let Some(k) = rest.strip_prefix('^') {
                k.parse::<i32>().map_err(|_| Error::syntax(pos + 2, format!("bad exponent '{k}'")))?
            } else {
                return Err(Error::syntax(pos + 1, format!("unexpected '{rest}'")));
            };
            if exp == 0 {
                return Err(Error::syntax(pos + 2, "zero exponent"));
            }
            syllables.push(Syllable { gen, exp });
            pos += part.len() + 1;
        }
        Ok(Word(syllables))
    }
}

/// Identifiers for the built-in groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupId {
    S3,
    Pi,
    Z2,
    Z3,
    PiPrime,
    Free,
}

impl GroupId {
    pub fn context(self) -> &'static GroupContext {
        static CONTEXTS: OnceLock<Vec<GroupContext>> = OnceLock::new();
        let all = CONTEXTS.get_or_init(|| {
            [GroupId::S3, GroupId::Pi, GroupId::Z2, GroupId::Z3, GroupId::PiPrime, GroupId::Free]
                .into_iter()
                .map(GroupContext::builtin)
                .collect()
        });
        &all[self as usize]
    }

    pub fn is_finite(self) -> bool {
        matches!(self, GroupId::S3 | GroupId::Z2 | GroupId::Z3)
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupId::S3 => "S3",
            GroupId::Pi => "Pi",
            GroupId::Z2 => "Z2",
            GroupId::Z3 => "Z3",
            GroupId::PiPrime => "PiPrime",
            GroupId::Free => "Free",
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_', '\''], "").as_str() {
            "s3" => Ok(GroupId::S3),
            "pi" => Ok(GroupId::Pi),
            "z2" => Ok(GroupId::Z2),
            "z3" => Ok(GroupId::Z3),
            "piprime" => Ok(GroupId::PiPrime),
            "free" => Ok(GroupId::Free),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Vec<Generator>,
    pub rhs: Vec<Generator>,
}

impl RewriteRule {
    pub fn parse(lhs: &str, rhs: &str) -> Result<Self> {
        let letters = |s: &str| -> Result<Vec<Generator>> {
            s.chars()
                .filter(|c| *c != '1')
                .map(|c| Generator::from_letter(c).ok_or_else(|| Error::UnknownSymbol(c.to_string())))
                .collect()
        };
        Ok(RewriteRule { lhs: letters(lhs)?, rhs: letters(rhs)? })
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |w: &[Generator]| -> String {
            if w.is_empty() {
                "1".into()
            } else {
                w.iter().map(|g| g.letter()).collect()
            }
        };
        write!(f, "{} -> {}", show(&self.lhs), show(&self.rhs))
    }
}

/// A group given by generators, a string-rewriting system and defining relators.
///
/// `orders` gives the order of each generator; it is used to turn negative
/// exponents into positive ones before rewriting. A context without rules
/// is the free group, normalized by free reduction.
#[derive(Clone, Debug)]
pub struct GroupContext {
    name: String,
    id: Option<GroupId>,
    generators: Vec<Generator>,
    orders: BTreeMap<Generator, u32>,
    rules: Vec<RewriteRule>,
    relators: Vec<Word>,
}

impl GroupContext {
    fn builtin(id: GroupId) -> Self {
        use Generator::*;
        let rule = |l: &str, r: &str| RewriteRule::parse(l, r).expect("builtin rule");
        let word = |s: &str| Word::parse(s).expect("builtin relator");
        let (generators, orders, rules, relators): (Vec<Generator>, Vec<(Generator, u32)>, _, _) = match id {
            GroupId::S3 => (
                vec![A, B],
                vec![(A, 2), (B, 3)],
                vec![rule("aa", ""), rule("bbb", ""), rule("ba", "abb")],
                vec![word("a^2"), word("a*b*a*b^-2")],
            ),
            GroupId::Pi => (
                vec![A, B, C],
                vec![(A, 2), (B, 3), (C, 3)],
                vec![rule("aa", ""), rule("bbb", ""), rule("ba", "abb"), rule("ccc", ""), rule("ca", "acc")],
                vec![word("a^2"), word("a*b*a*b^-2"), word("a*c*a*c^-2")],
            ),
            GroupId::Z2 => (vec![A], vec![(A, 2)], vec![rule("aa", "")], vec![word("a^2")]),
            GroupId::Z3 => (vec![B], vec![(B, 3)], vec![rule("bbb", "")], vec![word("b^3")]),
            GroupId::PiPrime => (
                vec![B, C],
                vec![(B, 3), (C, 3)],
                vec![rule("bbb", ""), rule("ccc", "")],
                vec![word("b^3"), word("c^3")],
            ),
            GroupId::Free => (vec![A, B, C], vec![], vec![], vec![]),
        };
        GroupContext {
            name: id.name().to_string(),
            id: Some(id),
            generators,
            orders: orders.into_iter().collect(),
            rules,
            relators,
        }
    }

    /// A user-supplied rewriting system, e.g. to exercise the confluence check.
    pub fn custom(
        name: &str,
        generators: Vec<Generator>,
        orders: Vec<(Generator, u32)>,
        rules: Vec<RewriteRule>,
        relators: Vec<Word>,
    ) -> Self {
        GroupContext {
            name: name.to_string(),
            id: None,
            generators,
            orders: orders.into_iter().collect(),
            rules,
            relators,
        }
    }

    pub fn id(&self) -> Option<GroupId> {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    fn check_symbols(&self, w: &Word) -> Result<()> {
        for g in w.generators() {
            if !self.generators.contains(&g) {
                return Err(Error::UnknownSymbol(format!("{g} (group {})", self.name)));
            }
        }
        Ok(())
    }

    /// Rewrite `w` to its irreducible form.
    pub fn reduce_word(&self, w: &Word) -> Result<Word> {
        self.check_symbols(w)?;
        if self.rules.is_empty() {
            return Ok(w.freely_reduced());
        }
        let mut letters = Vec::with_capacity(w.letter_len());
        for s in w.syllables() {
            let exp = if s.exp < 0 {
                let order = *self.orders.get(&s.gen).ok_or_else(|| {
                    Error::UnknownSymbol(format!("{}^-1 has no positive form in {}", s.gen, self.name))
                })? as i64;
                (s.exp as i64).rem_euclid(order)
            } else {
                s.exp as i64
            };
            letters.extend(std::iter::repeat_n(s.gen, exp as usize));
        }
        Ok(Word::from_letters(&self.rewrite(letters)))
    }

    /// Leftmost reduction to a fixed point.
    fn rewrite(&self, mut letters: Vec<Generator>) -> Vec<Generator> {
        let max_lhs = self.rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        let mut i = 0;
        while i < letters.len() {
            match self.rules.iter().find(|rule| letters[i..].starts_with(&rule.lhs)) {
                Some(rule) => {
                    letters.splice(i..i + rule.lhs.len(), rule.rhs.iter().copied());
                    i = i.saturating_sub(max_lhs);
                }
                None => i += 1,
            }
        }
        letters
    }

    fn reduce_letters(&self, letters: &[Generator]) -> Vec<Generator> {
        self.rewrite(letters.to_vec())
    }

    /// Exhaustive critical-pair test plus a check that every defining relator
    /// rewrites to the empty word.
    pub fn check_confluence(&self) -> ConfluenceReport {
        let mut checked = 0;
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                // proper overlaps: suffix of r1.lhs equals prefix of r2.lhs
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let mut overlap = l1.clone();
                    overlap.extend_from_slice(&l2[k..]);
                    let mut left = r1.rhs.clone();
                    left.extend_from_slice(&l2[k..]);
                    let mut right = l1[..l1.len() - k].to_vec();
                    right.extend_from_slice(&r2.rhs);
                    checked += 1;
                    if let Some(f) = self.join(&overlap, &left, &right, i, j) {
                        return ConfluenceReport { critical_pairs: checked, failure: Some(f) };
                    }
                }
                // inclusions: r2.lhs inside r1.lhs
                if i != j && l2.len() <= l1.len() {
                    for p in 0..=l1.len() - l2.len() {
                        if l1[p..p + l2.len()] != l2[..] {
                            continue;
                        }
                        let mut right = l1[..p].to_vec();
                        right.extend_from_slice(&r2.rhs);
                        right.extend_from_slice(&l1[p + l2.len()..]);
                        checked += 1;
                        if let Some(f) = self.join(l1, &r1.rhs, &right, i, j) {
                            return ConfluenceReport { critical_pairs: checked, failure: Some(f) };
                        }
                    }
                }
            }
        }
        for rel in &self.relators {
            match self.reduce_word(rel) {
                Ok(w) if w.is_identity() => {}
                Ok(w) => {
                    return ConfluenceReport {
                        critical_pairs: checked,
                        failure: Some(ConfluenceFailure::RelatorNotTrivial {
                            relator: rel.to_string(),
                            reduct: w.to_string(),
                        }),
                    }
                }
                Err(e) => {
                    return ConfluenceReport {
                        critical_pairs: checked,
                        failure: Some(ConfluenceFailure::RelatorNotTrivial {
                            relator: rel.to_string(),
                            reduct: e.to_string(),
                        }),
                    }
                }
            }
        }
        ConfluenceReport { critical_pairs: checked, failure: None }
    }

    fn join(
        &self,
        overlap: &[Generator],
        left: &[Generator],
        right: &[Generator],
        i: usize,
        j: usize,
    ) -> Option<ConfluenceFailure> {
        let l = self.reduce_letters(left);
        let r = self.reduce_letters(right);
        (l != r).then(|| ConfluenceFailure::CriticalPair {
            rules: (self.rules[i].to_string(), self.rules[j].to_string()),
            overlap: Word::from_letters(overlap).to_string(),
            left: Word::from_letters(&l).to_string(),
            right: Word::from_letters(&r).to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfluenceFailure {
    CriticalPair { rules: (String, String), overlap: String, left: String, right: String },
    RelatorNotTrivial { relator: String, reduct: String },
}

impl fmt::Display for ConfluenceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfluenceFailure::CriticalPair { rules, overlap, left, right } => write!(
                f,
                "critical pair of [{}] and [{}] on {overlap} does not join: {left} vs {right}",
                rules.0, rules.1
            ),
            ConfluenceFailure::RelatorNotTrivial { relator, reduct } => {
                write!(f, "relator {relator} reduces to {reduct}, not 1")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub critical_pairs: usize,
    pub failure: Option<ConfluenceFailure>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// An element of one of the built-in groups, held in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: GroupId,
    word: Word,
}

impl GroupElement {
    pub fn identity(group: GroupId) -> Self {
        GroupElement { group, word: Word::identity() }
    }

    pub fn generator(group: GroupId, g: Generator) -> Result<Self> {
        normalize(group, &Word::gen(g))
    }

    pub fn parse(group: GroupId, text: &str) -> Result<Self> {
        normalize(group, &Word::parse(text)?)
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_identity()
    }

    /// Word length: number of syllables of the normal form, so `a*b^2*c` has
    /// length 3 and `b` and `b^2` both have length 1.
    pub fn length(&self) -> usize {
        self.word.syllables().len()
    }

    /// Exponent sum of `a` modulo 2; the image in the abelianization of S3 or pi.
    pub fn a_parity(&self) -> u8 {
        let s: i64 = self.word.syllables().iter().filter(|s| s.gen == Generator::A).map(|s| s.exp as i64).sum();
        s.rem_euclid(2) as u8
    }

    pub fn try_mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::ContextMismatch(self.group, other.group));
        }
        normalize(self.group, &self.word.concat(&other.word))
    }

    pub fn inverse(&self) -> GroupElement {
        normalize(self.group, &self.word.inverse()).expect("inverse of a normal form")
    }

    /// Conjugation `x -> a x a` on words in b and c; swaps b <-> b^2, c <-> c^2.
    pub(crate) fn conjugate_by_a(&self) -> GroupElement {
        let a = GroupElement::generator(GroupId::Pi, Generator::A).expect("a in pi");
        let lifted = GroupElement { group: GroupId::Pi, word: self.word.clone() };
        let c = &(&a * &lifted) * &a;
        GroupElement { group: self.group, word: c.word }
    }

    /// Reinterpret an element of pi' as an element of pi and back.
    pub(crate) fn with_group(&self, group: GroupId) -> Result<GroupElement> {
        normalize(group, &self.word)
    }

    fn shortlex_key(&self) -> (usize, usize) {
        (self.length(), self.word.letter_len())
    }
}

impl std::ops::Mul for &GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: &GroupElement) -> GroupElement {
        self.try_mul(rhs).expect("group elements from different groups")
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.group.cmp(&other.group).then_with(|| self.shortlex_key().cmp(&other.shortlex_key())).then_with(|| {
            let l = self.word.letters();
            let r = other.word.letters();
            match (l, r) {
                (Some(l), Some(r)) => l.cmp(&r),
                _ => self.word.0.cmp(&other.word.0),
            }
        })
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

pub fn normalize(group: GroupId, w: &Word) -> Result<GroupElement> {
    let word = group.context().reduce_word(w)?;
    Ok(GroupElement { group, word })
}

/// Elements of `group`, in shortlex order. `None` asks for the whole group
/// and is only allowed for finite groups; `Some(l)` gives the ball of
/// normal forms of length at most `l`.
pub fn enumerate(group: GroupId, max_len: Option<usize>) -> Result<Vec<GroupElement>> {
    if max_len.is_none() && !group.is_finite() {
        return Err(Error::InfiniteEnumeration(group));
    }
    let ctx = group.context();
    let mut steps: Vec<Word> = ctx.generators().iter().map(|&g| Word::gen(g)).collect();
    if group == GroupId::Free {
        steps.extend(ctx.generators().iter().map(|&g| Word::power(g, -1)));
    }
    let within = |x: &GroupElement| max_len.is_none_or(|l| x.length() <= l);
    let start = GroupElement::identity(group);
    let mut seen: HashSet<GroupElement> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for s in &steps {
            let y = normalize(group, &x.word.concat(s))?;
            if within(&y) && seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<GroupElement> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// Homomorphism between built-in groups given on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: GroupId,
    target: GroupId,
    images: BTreeMap<Generator, Word>,
}

impl GroupHom {
    /// Fails unless every source generator has an image and every defining
    /// relator of the source maps to the identity.
    pub fn new(source: GroupId, target: GroupId, images: BTreeMap<Generator, Word>) -> Result<Self> {
        for g in source.context().generators() {
            if !images.contains_key(g) {
                return Err(Error::InvalidHom(format!("no image for generator {g}")));
            }
        }
        for w in images.values() {
            target.context().check_symbols(w)?;
        }
        let h = GroupHom { source, target, images };
        for rel in source.context().relators() {
            let image = normalize(target, &h.substitute(rel))?;
            if !image.is_identity() {
                return Err(Error::InvalidHom(format!("relator {rel} maps to {image}")));
            }
        }
        Ok(h)
    }

    fn from_pairs(source: GroupId, target: GroupId, pairs: &[(Generator, &str)]) -> Self {
        let images = pairs.iter().map(|(g, w)| (*g, Word::parse(w).expect("builtin image"))).collect();
        GroupHom::new(source, target, images).expect("builtin homomorphism")
    }

    pub fn identity(group: GroupId) -> Self {
        let images = group.context().generators().iter().map(|&g| (g, Word::gen(g))).collect();
        GroupHom { source: group, target: group, images }
    }

    /// pi -> S3 collapsing c (onto the copy generated by a, b).
    pub fn retraction_b() -> Self {
        use Generator::*;
        Self::from_pairs(GroupId::Pi, GroupId::S3, &[(A, "a"), (B, "b"), (C, "1")])
    }

    /// pi -> S3 collapsing b and renaming c to b (onto the copy generated by a, c).
    pub fn retraction_c() -> Self {
        use Generator::*;
        Self::from_pairs(GroupId::Pi, GroupId::S3, &[(A, "a"), (B, "1"), (C, "b")])
    }

    pub fn inclusion_b() -> Self {
        use Generator::*;
        Self::from_pairs(GroupId::S3, GroupId::Pi, &[(A, "a"), (B, "b")])
    }

    pub fn inclusion_c() -> Self {
        use Generator::*;
        Self::from_pairs(GroupId::S3, GroupId::Pi, &[(A, "a"), (B, "c")])
    }

    /// pi -> pi/pi' = Z/2.
    pub fn abelianization() -> Self {
        use Generator::*;
        Self::from_pairs(GroupId::Pi, GroupId::Z2, &[(A, "a"), (B, "1"), (C, "1")])
    }

    /// Z/2 = <a> into S3.
    pub fn inclusion_a() -> Self {
        Self::from_pairs(GroupId::Z2, GroupId::S3, &[(Generator::A, "a")])
    }

    pub fn source(&self) -> GroupId {
        self.source
    }

    pub fn target(&self) -> GroupId {
        self.target
    }

    pub fn image_of(&self, g: Generator) -> Option<&Word> {
        self.images.get(&g)
    }

    fn substitute(&self, w: &Word) -> Word {
        let mut out = Word::identity();
        for s in w.syllables() {
            let img = &self.images[&s.gen];
            let piece = if s.exp > 0 { img.clone() } else { img.inverse() };
            for _ in 0..s.exp.unsigned_abs() {
                out = out.concat(&piece);
            }
        }
        out
    }

    /// Image of a free-group word, unreduced.
    pub fn map_word(&self, w: &Word) -> Word {
        self.substitute(w)
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group() != self.source {
            return Err(Error::ContextMismatch(x.group(), self.source));
        }
        normalize(self.target, &self.substitute(x.word()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(g: GroupId, s: &str) -> GroupElement {
        GroupElement::parse(g, s).unwrap()
    }

    /// Permutation model of S3 on {0,1,2}: a = (0 1), b = (0 1 2); words act
    /// left to right as functions composed on the right.
    fn perm(w: &Word) -> [usize; 3] {
        let a = [1, 0, 2];
        let b = [1, 2, 0];
        let mut p = [0, 1, 2];
        for s in w.syllables() {
            let base = if s.gen == Generator::A { a } else { b };
            let k = s.exp.rem_euclid(if s.gen == Generator::A { 2 } else { 3 });
            for _ in 0..k {
                p = [base[p[0]], base[p[1]], base[p[2]]];
            }
        }
        p
    }

    #[test]
    fn normal_forms_match_examples() {
        assert!(el(GroupId::S3, "a*a").is_identity());
        assert!(el(GroupId::S3, "1").is_identity());
        assert_eq!(el(GroupId::S3, "b*a").to_string(), "a*b^2");
        assert_eq!(el(GroupId::Pi, "c*b*a").to_string(), "a*c^2*b^2");
    }

    #[test]
    fn ba_agrees_with_permutations() {
        let lhs = Word::parse("b*a").unwrap();
        let rhs = Word::parse("a*b^2").unwrap();
        assert_eq!(perm(&lhs), perm(&rhs));
    }

    #[test]
    fn multiplication_and_inverses() {
        let a = el(GroupId::S3, "a");
        let b = el(GroupId::S3, "b");
        assert!((&a * &a).is_identity());
        assert_eq!(&(&a * &b) * &a, el(GroupId::S3, "b^2"));
        assert_eq!(a.inverse(), a);
        assert_eq!(b.inverse(), el(GroupId::S3, "b^2"));
        let x = el(GroupId::S3, "b^2*a");
        assert_eq!(x.inverse(), el(GroupId::S3, "a*b"));
        assert!((&x * &el(GroupId::S3, "a*b")).is_identity());
    }

    #[test]
    fn unknown_symbol_and_mismatch() {
        assert!(matches!(GroupElement::parse(GroupId::S3, "c"), Err(Error::UnknownSymbol(_))));
        let x = el(GroupId::S3, "a");
        let y = el(GroupId::Pi, "a");
        assert!(matches!(x.try_mul(&y), Err(Error::ContextMismatch(..))));
    }

    #[test]
    fn finite_enumerations() {
        assert_eq!(enumerate(GroupId::S3, None).unwrap().len(), 6);
        let z2 = enumerate(GroupId::Z2, None).unwrap();
        assert_eq!(z2.iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["1", "a"]);
        assert_eq!(enumerate(GroupId::Z3, None).unwrap().len(), 3);
        assert!(matches!(enumerate(GroupId::Pi, None), Err(Error::InfiniteEnumeration(_))));
    }

    #[test]
    fn cayley_table_matches_permutation_model() {
        let s3 = enumerate(GroupId::S3, None).unwrap();
        let perms: HashSet<[usize; 3]> = s3.iter().map(|x| perm(x.word())).collect();
        assert_eq!(perms.len(), 6);
        for x in &s3 {
            for y in &s3 {
                let xy = x * y;
                assert_eq!(perm(xy.word()), perm(&x.word().concat(y.word())));
                for z in &s3 {
                    assert_eq!(&xy * z, x * &(y * z));
                }
            }
            assert!((x * &x.inverse()).is_identity());
        }
    }

    /// Brute force: every word of up to `n` letters from {a, b, c}, normalized
    /// and deduplicated, filtered by length.
    fn brute_ball(l: usize) -> HashSet<GroupElement> {
        let mut out = HashSet::new();
        let mut frontier = vec![Word::identity()];
        for _ in 0..=3 * l {
            let mut next = Vec::new();
            for w in &frontier {
                let x = normalize(GroupId::Pi, w).unwrap();
                if x.length() <= l {
                    out.insert(x);
                }
                for g in Generator::ALL {
                    next.push(w.concat(&Word::gen(g)));
                }
            }
            frontier = next;
            if frontier.len() > 200_000 {
                break;
            }
        }
        out.retain(|x| x.length() <= l);
        out
    }

    #[test]
    fn pi_ball_counts() {
        // syllable words of length n: 4 * 2^(n-1); doubled by the optional a prefix
        let count = |l: usize| -> usize {
            let s = |n: usize| if n == 0 { 1 } else { 4 << (n - 1) };
            (0..=l).map(s).sum::<usize>() + (0..l).map(s).sum::<usize>()
        };
        for l in 0..=5 {
            assert_eq!(enumerate(GroupId::Pi, Some(l)).unwrap().len(), count(l), "l = {l}");
        }
        let ball: HashSet<_> = enumerate(GroupId::Pi, Some(3)).unwrap().into_iter().collect();
        assert_eq!(ball.len(), 42);
        assert_eq!(ball, brute_ball(3));
    }

    #[test]
    fn pi_normal_form_shape() {
        for x in enumerate(GroupId::Pi, Some(5)).unwrap() {
            let syl = x.word().syllables();
            let body = if syl.first().map(|s| s.gen) == Some(Generator::A) {
                assert_eq!(syl[0].exp, 1);
                &syl[1..]
            } else {
                syl
            };
            for (i, s) in body.iter().enumerate() {
                assert!(s.gen != Generator::A && (s.exp == 1 || s.exp == 2), "{x}");
                if i > 0 {
                    assert_ne!(body[i - 1].gen, s.gen, "{x}");
                }
            }
        }
    }

    #[test]
    fn confluence_reports() {
        for g in [GroupId::S3, GroupId::Pi, GroupId::Z2, GroupId::Z3, GroupId::PiPrime] {
            let r = g.context().check_confluence();
            assert!(r.passed(), "{g}: {:?}", r.failure);
            assert!(r.critical_pairs > 0);
        }
        let broken = GroupContext::custom(
            "broken",
            vec![Generator::A, Generator::B],
            vec![(Generator::A, 2), (Generator::B, 3)],
            vec![RewriteRule::parse("ba", "ab").unwrap()],
            GroupId::S3.context().relators().to_vec(),
        );
        let r = broken.check_confluence();
        assert!(matches!(r.failure, Some(ConfluenceFailure::RelatorNotTrivial { .. })));
    }

    #[test]
    fn non_joining_pair_is_reported() {
        let ctx = GroupContext::custom(
            "pair",
            vec![Generator::A, Generator::B],
            vec![],
            vec![RewriteRule::parse("ab", "b").unwrap(), RewriteRule::parse("bb", "a").unwrap()],
            vec![],
        );
        assert!(matches!(ctx.check_confluence().failure, Some(ConfluenceFailure::CriticalPair { .. })));
    }

    #[test]
    fn homomorphisms() {
        let rb = GroupHom::retraction_b();
        let rc = GroupHom::retraction_c();
        assert_eq!(rb.apply(&el(GroupId::Pi, "c*b*a")).unwrap(), el(GroupId::S3, "a*b^2"));
        assert_eq!(rc.apply(&el(GroupId::Pi, "c*b*a")).unwrap(), el(GroupId::S3, "a*b^2"));
        let ab = GroupHom::abelianization();
        assert_eq!(ab.apply(&el(GroupId::Pi, "a*b^2*c")).unwrap(), el(GroupId::Z2, "a"));
        let id = GroupHom::identity(GroupId::Pi);
        let x = el(GroupId::Pi, "a*b*c^2*b");
        assert_eq!(id.apply(&x).unwrap(), x);
        for x in enumerate(GroupId::S3, None).unwrap() {
            let back = rb.apply(&GroupHom::inclusion_b().apply(&x).unwrap()).unwrap();
            assert_eq!(back, x);
            let back = rc.apply(&GroupHom::inclusion_c().apply(&x).unwrap()).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn invalid_hom_is_rejected() {
        let images = [(Generator::A, Word::parse("b").unwrap())].into_iter().collect();
        assert!(matches!(GroupHom::new(GroupId::Z2, GroupId::S3, images), Err(Error::InvalidHom(_))));
    }

    #[test]
    fn word_text_round_trip() {
        for s in ["1", "a*b^2*c", "b^-2*a"] {
            assert_eq!(Word::parse(s).unwrap().to_string(), s);
        }
        assert!(Word::parse("a**b").is_err());
        assert!(Word::parse("a^0").is_err());
    }
}
