//! Noncommutative polynomials over ℚ(i) and their text syntax.
//!
//! ```text
//! poly  := '0' | [sign] term (sign term)*
//! sign  := '+' | '-'
//! term  := coeff gen* | gen+
//! coeff := INT ['/' INT] | 'i' | '(' gaussian ')'
//! gen   := LABEL ['*'] '[' INT ';' INT ',' INT ']' ['@' INT]
//! ```
//!
//! Juxtaposition is the product, `1` is the empty word, `@k` places a letter
//! in tensor leg `k`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::word::{Generator, Label, Word};
use crate::arith::Scalar;
use crate::error::{Error, Result};

/// Finite linear combination of words. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> NcPoly {
        NcPoly::default()
    }

    pub fn one() -> NcPoly {
        NcPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> NcPoly {
        NcPoly::term(c, Word::empty())
    }

    pub fn term(c: Scalar, w: Word) -> NcPoly {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> NcPoly {
        NcPoly::term(Scalar::one(), w)
    }

    pub fn gen(g: Generator) -> NcPoly {
        NcPoly::word(Word::letter(g))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    /// Largest word under deg-lex, with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Largest number of letters in a single tensor leg of any term.
    pub fn leg_degree(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|w| w.slot_segments().into_iter().map(|(_, r)| r.len()))
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    /// Wraps a term map that holds no zero coefficients.
    pub(crate) fn from_terms(terms: BTreeMap<Word, Scalar>) -> NcPoly {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        NcPoly { terms }
    }

    pub fn add_assign_scaled(&mut self, other: &NcPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        let mut out = NcPoly::zero();
        out.add_assign_scaled(self, c);
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> NcPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => NcPoly::zero(),
        }
    }

    /// Antilinear, antimultiplicative involution.
    pub fn star(&self) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.star(), c.conj());
        }
        out
    }

    pub fn pow(&self, n: u32) -> NcPoly {
        (0..n).fold(NcPoly::one(), |acc, _| &acc * self)
    }

    /// Maps every letter through `f` (letter by letter, words re-canonicalized).
    pub fn map_letters(&self, f: impl Fn(Generator) -> Generator) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(
                Word::from_letters(w.letters().iter().map(|&g| f(g)).collect()),
                c.clone(),
            );
        }
        out
    }

    /// Moves every letter into tensor leg `slot`.
    pub fn in_slot(&self, slot: u8) -> NcPoly {
        self.map_letters(|g| g.with_slot(slot))
    }

    /// Generators occurring (as letters, starred or not).
    pub fn letters(&self) -> std::collections::BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|w| w.letters().iter().copied())
            .collect()
    }

    pub fn parse(s: &str) -> Result<NcPoly> {
        Parser::new(s).poly()
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_real() && c.re().is_negative();
            let mag = if negative { -c } else { c.clone() };
            let sign = if negative { "-" } else { "+" };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag} {w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for NcPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for NcPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        NcPoly::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Generator {
    /// Parses a single letter such as `u*[0;1,2]@1`.
    pub fn parse(s: &str) -> Result<Generator> {
        let p = NcPoly::parse(s)?;
        let mut terms = p.terms.into_iter();
        match (terms.next(), terms.next()) {
            (Some((w, c)), None) if c.is_one() && w.len() == 1 => Ok(w.letters()[0]),
            _ => Err(Error::Parse(format!("not a single generator: {s}"))),
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let p = NcPoly::parse(&s).map_err(serde::de::Error::custom)?;
        let mut terms = p.terms.into_iter();
        match (terms.next(), terms.next()) {
            (Some((w, c)), None) if c.is_one() => Ok(w),
            _ => Err(serde::de::Error::custom(format!("not a single word: {s}"))),
        }
    }
}

impl Add<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_assign_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Mul<&NcPoly> for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: NcPoly) -> NcPoly { (&self).$m(&rhs) }
        }
        impl $tr<&NcPoly> for NcPoly {
            type Output = NcPoly;
            fn $m(self, rhs: &NcPoly) -> NcPoly { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for NcPoly {
    fn sum<I: Iterator<Item = NcPoly>>(iter: I) -> NcPoly {
        iter.fold(NcPoly::zero(), |mut acc, p| {
            acc.add_assign_scaled(&p, &Scalar::one());
            acc
        })
    }
}

impl From<Generator> for NcPoly {
    fn from(g: Generator) -> Self {
        NcPoly::gen(g)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.rest().starts_with('-') {
            self.pos += 1;
        }
        while self
            .rest()
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected integer"))
    }

    fn poly(&mut self) -> Result<NcPoly> {
        let mut out = NcPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty polynomial")),
                Some('+') => {
                    self.pos += 1;
                    Scalar::one()
                }
                Some('-') => {
                    self.pos += 1;
                    Scalar::from_int(-1)
                }
                Some(_) if first => Scalar::one(),
                Some(_) => return Err(self.err("expected `+` or `-`")),
            };
            first = false;
            let (c, w) = self.term()?;
            out.add_term(w, &sign * &c);
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Scalar, Word)> {
        let mut coeff = None;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = |p: &mut Self| {
                    while p.rest().starts_with(|c: char| c.is_ascii_digit()) {
                        p.pos += 1;
                    }
                };
                digits(self);
                if self.rest().starts_with('/') {
                    self.pos += 1;
                    digits(self);
                }
                coeff = Some(Scalar::parse(&self.src[start..self.pos])?);
            }
            Some('(') => {
                let start = self.pos;
                let end = self
                    .rest()
                    .find(')')
                    .ok_or_else(|| self.err("unclosed `(`"))?;
                self.pos += end + 1;
                coeff = Some(Scalar::parse(&self.src[start..self.pos])?);
            }
            Some('i') if !self.rest()[1..].trim_start().starts_with(['[', '*']) => {
                let after = &self.rest()[1..];
                if !after.starts_with(|c: char| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                    coeff = Some(Scalar::i());
                }
            }
            _ => {}
        }
        let mut letters = Vec::new();
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            letters.push(self.generator()?);
        }
        if coeff.is_none() && letters.is_empty() {
            return Err(self.err("expected coefficient or generator"));
        }
        Ok((
            coeff.unwrap_or_else(Scalar::one),
            Word::from_letters(letters),
        ))
    }

    fn generator(&mut self) -> Result<Generator> {
        self.skip_ws();
        let start = self.pos;
        while self
            .rest()
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        let label = Label::new(&self.src[start..self.pos]).map_err(|_| self.err("bad label"))?;
        let starred = self.eat('*');
        self.expect('[')?;
        let block = self.int()?;
        self.expect(';')?;
        let row = self.int()?;
        self.expect(',')?;
        let col = self.int()?;
        self.expect(']')?;
        let slot = if self.eat('@') { self.int()? } else { 0 };
        let conv = |x: i64| u16::try_from(x).map_err(|_| self.err("index out of range"));
        let block = i32::try_from(block).map_err(|_| self.err("block out of range"))?;
        let mut g = Generator::new(label, block, conv(row)?, conv(col)?)
            .map_err(|e| self.err(&e.to_string()))?;
        if starred {
            g = g.star();
        }
        if !(0..16).contains(&slot) {
            return Err(self.err("slot out of range"));
        }
        Ok(g.with_slot(slot as u8))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> NcPoly {
        NcPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_basic() {
        let u11 = Generator::entry("u", 0, 1, 1);
        let x = p("u[0;1,1] u*[0;1,1] - 1");
        assert_eq!(x.len(), 2);
        assert_eq!(
            x.coeff(&Word::from_letters(vec![u11, u11.star()])),
            Some(&Scalar::one())
        );
        assert_eq!(x.coeff(&Word::empty()), Some(&Scalar::from_int(-1)));
        assert_eq!(p("0"), NcPoly::zero());
        assert_eq!(p("1"), NcPoly::one());
        assert_eq!(
            p("3/4 u[-1;2,1]"),
            NcPoly::term(
                Scalar::from_ratio(3, 4),
                Word::letter(Generator::entry("u", -1, 2, 1))
            )
        );
        assert_eq!(
            p("i u[0;1,1]").coeff(&Word::letter(u11)),
            Some(&Scalar::i())
        );
        assert_eq!(
            p("(1/2-1i) u[0;1,1]").coeff(&Word::letter(u11)),
            Some(&Scalar::complex((1, 2), (-1, 1)))
        );
        assert_eq!(
            p("u[0;1,1]@2").letters().into_iter().next().unwrap().slot(),
            2
        );
        assert_eq!(p("u[0;1,1] - u[0;1,1]"), NcPoly::zero());
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "u[0;1]",
            "+",
            "u[0;1,1] u",
            "u[0;1,1] 3",
            "x[0;0,1]",
            "2 +",
        ] {
            assert!(NcPoly::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trip_examples() {
        for s in [
            "u[0;1,1] u*[0;1,1] + u[0;1,2] u*[0;1,2] - 1",
            "-1/2 z[0;1,1] + (1+1i) v[-3;2,2]@1 v[0;1,1]@2",
            "i u[0;1,1]",
            "-(2/3i) u[0;1,1]",
        ] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x, "{s} -> {x}");
        }
    }

    #[test]
    fn star_is_antimultiplicative() {
        let a = p("(1+2i) u[0;1,1] u[0;1,2] + 3");
        let b = p("u*[0;2,1] - i");
        assert_eq!((&a * &b).star(), &b.star() * &a.star());
        assert_eq!(a.star().star(), a);
    }

    fn arb_gen() -> impl Strategy<Value = Generator> {
        (0usize..3, -2i32..3, 1u16..3, 1u16..3, any::<bool>(), 0u8..3).prop_map(
            |(l, b, r, c, s, slot)| {
                let g = Generator::entry(["u", "v", "z"][l], b, r, c).with_slot(slot);
                if s {
                    g.star()
                } else {
                    g
                }
            },
        )
    }

    fn arb_poly() -> impl Strategy<Value = NcPoly> {
        proptest::collection::vec(
            (
                -5i64..6,
                1i64..4,
                -3i64..4,
                proptest::collection::vec(arb_gen(), 0..4),
            ),
            0..5,
        )
        .prop_map(|terms| {
            let mut out = NcPoly::zero();
            for (n, d, im, letters) in terms {
                out.add_term(
                    Word::from_letters(letters),
                    Scalar::complex((n, d), (im, 1)),
                );
            }
            out
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(x in arb_poly()) {
            prop_assert_eq!(NcPoly::parse(&x.to_string()).unwrap(), x);
        }

        #[test]
        fn json_round_trip(x in arb_poly()) {
            let j = serde_json::to_string(&x).unwrap();
            prop_assert_eq!(serde_json::from_str::<NcPoly>(&j).unwrap(), x);
        }

        #[test]
        fn star_involution(x in arb_poly(), y in arb_poly()) {
            prop_assert_eq!(x.star().star(), x.clone());
            prop_assert_eq!((&x * &y).star(), &y.star() * &x.star());
        }
    }
}
