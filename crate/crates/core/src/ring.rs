//! Integral group rings Z[G], the (possibly twisted) involution, augmentation,
//! induced ring maps and the quotient R = Z[a]/(a^2 - 1).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{Generator, GroupElement, GroupHom, GroupId, Word};
use crate::matrix::RingMatrix;

/// A finitely supported integer combination of group elements.
///
/// Keys are normal forms and zero coefficients are never stored, so derived
/// equality is equality in the ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    group: GroupId,
    terms: BTreeMap<GroupElement, BigInt>,
}

impl RingElement {
    pub fn zero(group: GroupId) -> Self {
        RingElement { group, terms: BTreeMap::new() }
    }

    pub fn one(group: GroupId) -> Self {
        Self::from_int(group, 1)
    }

    pub fn from_int(group: GroupId, n: impl Into<BigInt>) -> Self {
        let mut x = Self::zero(group);
        x.add_term(GroupElement::identity(group), n.into());
        x
    }

    pub fn from_element(g: GroupElement) -> Self {
        let mut x = Self::zero(g.group());
        x.add_term(g, BigInt::one());
        x
    }

    pub fn from_terms(group: GroupId, terms: impl IntoIterator<Item = (GroupElement, BigInt)>) -> Result<Self> {
        let mut x = Self::zero(group);
        for (g, c) in terms {
            if g.group() != group {
                return Err(Error::ContextMismatch(g.group(), group));
            }
            x.add_term(g, c);
        }
        Ok(x)
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &GroupElement) -> BigInt {
        self.terms.get(g).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(g, c)| g.is_identity() && c.is_one())
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Largest word length in the support; 0 for the zero element.
    pub fn length(&self) -> usize {
        self.terms.keys().map(GroupElement::length).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, g: GroupElement, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(g.group(), self.group);
        match self.terms.entry(g) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &RingElement) -> Result<()> {
        if self.group != other.group {
            Err(Error::ContextMismatch(self.group, other.group))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_same(other)?;
        let mut out = RingElement::zero(self.group);
        for (g, c) in &self.terms {
            for (h, d) in &other.terms {
                out.add_term(g * h, c * d);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, n: &BigInt) -> RingElement {
        if n.is_zero() {
            return RingElement::zero(self.group);
        }
        RingElement { group: self.group, terms: self.terms.iter().map(|(g, c)| (g.clone(), c * n)).collect() }
    }

    /// `g * self`.
    pub fn left_mul_element(&self, g: &GroupElement) -> RingElement {
        let mut out = RingElement::zero(self.group);
        for (h, c) in &self.terms {
            out.add_term(g * h, c.clone());
        }
        out
    }

    /// Anti-automorphism `g -> w1(g) g^-1`, extended linearly.
    pub fn involute(&self, chi: OrientationCharacter) -> RingElement {
        let mut out = RingElement::zero(self.group);
        for (g, c) in &self.terms {
            let c = if chi.sign_of(g) < 0 { -c } else { c.clone() };
            out.add_term(g.inverse(), c);
        }
        out
    }

    /// Augmentation: the sum of the coefficients.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Ring map induced by a group homomorphism.
    pub fn map(&self, h: &GroupHom) -> Result<RingElement> {
        if self.group != h.source() {
            return Err(Error::ContextMismatch(self.group, h.source()));
        }
        let mut out = RingElement::zero(h.target());
        for (g, c) in &self.terms {
            out.add_term(h.apply(g)?, c.clone());
        }
        Ok(out)
    }

    /// Image in R = Z[pi/pi'] under `a -> a`, `b, c -> 1`.
    pub fn to_r(&self) -> RElement {
        let mut r = RElement::zero();
        for (g, c) in &self.terms {
            if g.a_parity() == 0 {
                r.u += c;
            } else {
                r.v += c;
            }
        }
        r
    }

    pub fn parse(group: GroupId, text: &str) -> Result<RingElement> {
        Parser::new(group, text).parse()
    }
}

impl fmt::Display for RingElement {
    /// Terms in shortlex order with signed integer coefficients, e.g.
    /// `-1 + a + a*b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if g.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{mag}*{g}")?;
            }
        }
        Ok(())
    }
}

macro_rules! ring_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&RingElement> for &RingElement {
            type Output = RingElement;
            /// Panics if the operands live in different group rings.
            fn $method(self, rhs: &RingElement) -> RingElement {
                let f: fn(&RingElement, &RingElement) -> Result<RingElement> = $body;
                f(self, rhs).expect("ring elements from different groups")
            }
        }
        impl $tr<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$method(&rhs)
            }
        }
    };
}

ring_binop!(Add, add, |x, y| x.try_add(y));
ring_binop!(Sub, sub, |x, y| x.try_add(&-y));
ring_binop!(Mul, mul, |x, y| x.try_mul(y));

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { group: self.group, terms: self.terms.iter().map(|(g, c)| (g.clone(), -c)).collect() }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

/// Orientation character, determined by `w = w1(a)`; `b` and `c` lie in the
/// commutator subgroup, so `w1(b) = w1(c) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientationCharacter {
    w: i8,
}

impl OrientationCharacter {
    pub const TRIVIAL: OrientationCharacter = OrientationCharacter { w: 1 };
    pub const TWISTED: OrientationCharacter = OrientationCharacter { w: -1 };

    pub fn new(w: i8) -> Result<Self> {
        match w {
            1 | -1 => Ok(OrientationCharacter { w }),
            _ => Err(Error::Format(format!("orientation character must be +1 or -1, got {w}"))),
        }
    }

    pub fn w(self) -> i8 {
        self.w
    }

    pub fn sign_of(self, g: &GroupElement) -> i8 {
        if g.a_parity() == 1 {
            self.w
        } else {
            1
        }
    }
}

impl fmt::Display for OrientationCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w = {:+}", self.w)
    }
}

/// Element `u + v*a` of R = Z[a]/(a^2 - 1).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RElement {
    pub u: BigInt,
    pub v: BigInt,
}

impl RElement {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        RElement { u: u.into(), v: v.into() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn a() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// `u + v*a -> u + w*v*a`.
    pub fn involute(&self, chi: OrientationCharacter) -> RElement {
        RElement { u: self.u.clone(), v: &self.v * BigInt::from(chi.w()) }
    }

    pub fn augment(&self) -> BigInt {
        &self.u + &self.v
    }

    pub fn parse(text: &str) -> Result<RElement> {
        Ok(RingElement::parse(GroupId::Z2, text)?.to_r())
    }
}

impl Add for &RElement {
    type Output = RElement;
    fn add(self, rhs: &RElement) -> RElement {
        RElement { u: &self.u + &rhs.u, v: &self.v + &rhs.v }
    }
}

impl Sub for &RElement {
    type Output = RElement;
    fn sub(self, rhs: &RElement) -> RElement {
        RElement { u: &self.u - &rhs.u, v: &self.v - &rhs.v }
    }
}

impl Mul for &RElement {
    type Output = RElement;
    fn mul(self, rhs: &RElement) -> RElement {
        RElement { u: &self.u * &rhs.u + &self.v * &rhs.v, v: &self.u * &rhs.v + &self.v * &rhs.u }
    }
}

impl Neg for &RElement {
    type Output = RElement;
    fn neg(self) -> RElement {
        RElement { u: -&self.u, v: -&self.v }
    }
}

impl fmt::Display for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = RingElement::from_terms(
            GroupId::Z2,
            [
                (GroupElement::identity(GroupId::Z2), self.u.clone()),
                (GroupElement::generator(GroupId::Z2, Generator::A).expect("a in Z2"), self.v.clone()),
            ],
        )
        .expect("Z2 terms");
        x.fmt(f)
    }
}

/// Matrix of right multiplication by `x` on Z[pi], viewed as a free left
/// Z[pi']-module with basis {1, a}.
///
/// Writing `x = m0 + m1*a` with `m0, m1` in Z[pi'], the matrix is
/// `[[m0, phi(m1)], [m1, phi(m0)]]` where `phi` is conjugation by `a`.
/// Columns are images of the basis vectors (see [`RingMatrix`]).
pub fn restrict_scalars(x: &RingElement) -> Result<RingMatrix> {
    if x.group() != GroupId::Pi {
        return Err(Error::ContextMismatch(x.group(), GroupId::Pi));
    }
    let mut m0 = RingElement::zero(GroupId::PiPrime);
    let mut m1 = RingElement::zero(GroupId::PiPrime);
    for (g, c) in x.terms() {
        if g.a_parity() == 0 {
            m0.add_term(g.with_group(GroupId::PiPrime)?, c.clone());
        } else {
            // g = a*w = phi(w)*a
            let w = Word::from_syllables(g.word().syllables()[1..].iter().copied());
            let w = crate::group::normalize(GroupId::PiPrime, &w)?;
            m1.add_term(w.conjugate_by_a(), c.clone());
        }
    }
    let phi = |y: &RingElement| -> RingElement {
        let mut out = RingElement::zero(GroupId::PiPrime);
        for (g, c) in y.terms() {
            out.add_term(g.conjugate_by_a(), c.clone());
        }
        out
    };
    let (p0, p1) = (phi(&m0), phi(&m1));
    RingMatrix::from_rows(GroupId::PiPrime, vec![vec![m0, p1], vec![m1, p0]])
}

struct Parser<'a> {
    group: GroupId,
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

/// Grammar (whitespace ignored):
///
/// ```text
/// expr   := [+|-] term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := INT | GEN ['^' ['-'] INT] | '(' expr ')'
/// ```
impl<'a> Parser<'a> {
    fn new(group: GroupId, text: &'a str) -> Self {
        Parser { group, chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(), pos: 0, text }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |(i, _)| *i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::syntax(self.offset(), msg))
    }

    fn parse(mut self) -> Result<RingElement> {
        if self.chars.is_empty() {
            return self.err("empty element");
        }
        let x = self.expr()?;
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected '{c}'"));
        }
        Ok(x)
    }

    fn expr(&mut self) -> Result<RingElement> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        while let Some(op) = self.peek() {
            if op != '+' && op != '-' {
                break;
            }
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RingElement> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc * f;
        }
        Ok(acc)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        Ok(digits.parse().expect("digits"))
    }

    fn factor(&mut self) -> Result<RingElement> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(x)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RingElement::from_int(self.group, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let gen = Generator::from_letter(c).ok_or_else(|| Error::UnknownSymbol(c.to_string()))?;
                self.pos += 1;
                let mut exp = 1i64;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let neg = self.peek() == Some('-');
                    if neg {
                        self.pos += 1;
                    }
                    let k = self.integer()?;
                    let k: i64 = k.try_into().map_err(|_| Error::syntax(self.offset(), "exponent too large"))?;
                    exp = if neg { -k } else { k };
                    if exp == 0 {
                        return self.err("zero exponent");
                    }
                }
                let w = Word::power(gen, exp as i32);
                Ok(RingElement::from_element(crate::group::normalize(self.group, &w)?))
            }
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate;

    fn s3(t: &str) -> RingElement {
        RingElement::parse(GroupId::S3, t).unwrap()
    }

    fn pi(t: &str) -> RingElement {
        RingElement::parse(GroupId::Pi, t).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert!((s3("a+1") * s3("a-1")).is_zero());
        let nu: RingElement = enumerate(GroupId::S3, None)
            .unwrap()
            .into_iter()
            .map(RingElement::from_element)
            .fold(RingElement::zero(GroupId::S3), |a, b| a + b);
        assert_eq!(s3("b^2+b+1") * s3("a+1"), nu);
        assert!((s3("b*a+b+1") * s3("-b^2*a+b*a+b-1")).is_zero());
    }

    #[test]
    fn involution_examples() {
        let t = OrientationCharacter::TRIVIAL;
        assert_eq!(s3("a").involute(t), s3("a"));
        assert_eq!(s3("b^2*a").involute(t), s3("a*b"));
        assert_eq!(s3("a+1").involute(OrientationCharacter::TWISTED), s3("1-a"));
        for e in ["a+1", "b^2*a+a-1"] {
            assert_eq!(s3(e).involute(t), s3(e));
        }
        assert_eq!(pi("c^2*a+a-1").involute(t), pi("c^2*a+a-1"));
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(s3("a+1").augment(), BigInt::from(2));
        assert_eq!(s3("-b^2*a+b*a+b-1").augment(), BigInt::from(0));
        assert_eq!((s3("b^2+b+1") * s3("a+1")).augment(), BigInt::from(6));
    }

    #[test]
    fn induced_maps() {
        let x = pi("c^2*a+a-1");
        assert_eq!(x.map(&GroupHom::retraction_b()).unwrap(), s3("2*a-1"));
        assert_eq!(pi("b^2*a+a-1").to_r(), RElement::new(-1, 2));
        let y = pi("a*b*c - 3*c^2");
        assert_eq!(y.map(&GroupHom::identity(GroupId::Pi)).unwrap(), y);
    }

    #[test]
    fn restriction_examples() {
        let m = restrict_scalars(&pi("a")).unwrap();
        let pp = |t: &str| RingElement::parse(GroupId::PiPrime, t).unwrap();
        assert_eq!(
            m,
            RingMatrix::from_rows(GroupId::PiPrime, vec![vec![pp("0"), pp("1")], vec![pp("1"), pp("0")]]).unwrap()
        );
        let m = restrict_scalars(&pi("b")).unwrap();
        assert_eq!(
            m,
            RingMatrix::from_rows(GroupId::PiPrime, vec![vec![pp("b"), pp("0")], vec![pp("0"), pp("b^2")]]).unwrap()
        );
        assert_eq!(restrict_scalars(&pi("1")).unwrap(), RingMatrix::identity(GroupId::PiPrime, 2));
    }

    #[test]
    fn parse_and_format() {
        let x = s3("b^2*a + a - 1");
        assert_eq!(x.to_string(), "-1 + a + a*b");
        assert!(s3("0").is_zero());
        let y = s3("a - b^2*a");
        assert_eq!(s3(&y.to_string()), y);
        assert_eq!(y.to_string(), "a - a*b");
        assert_eq!(s3("(b - 1)*(b*a - 1)"), s3("a*b - b - a*b^2 + 1"));
        assert_eq!(s3("3*b^-1"), s3("3*b^2"));
        match RingElement::parse(GroupId::S3, "a + * b") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(RingElement::parse(GroupId::S3, "c"), Err(Error::UnknownSymbol(_))));
        assert!(RingElement::parse(GroupId::S3, "(a+1").is_err());
    }

    #[test]
    fn r_arithmetic() {
        let x = RElement::new(2, -1);
        let y = RElement::new(1, 1);
        assert_eq!(&x * &y, RElement::new(1, 1));
        assert_eq!(&RElement::a() * &RElement::a(), RElement::one());
        assert_eq!(RElement::parse("2*a - 1").unwrap(), RElement::new(-1, 2));
        assert_eq!(RElement::new(1, 1).involute(OrientationCharacter::TWISTED), RElement::new(1, -1));
    }

    #[test]
    fn context_mismatch() {
        assert!(matches!(s3("a").try_mul(&pi("a")), Err(Error::ContextMismatch(..))));
    }
}
