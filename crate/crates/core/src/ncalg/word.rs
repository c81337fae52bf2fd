//! Generators and words of the free *-algebra.
//!
//! A [`Generator`] is packed into a `u64` whose integer order is the global
//! generator order: tensor slot, family label, block, row, column, star flag.
//! Comparing two packed values therefore compares generators
//! lexicographically in exactly that field order, which keeps Gröbner runs
//! reproducible without any interning table.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const STAR_BITS: u32 = 1;
const COL_SHIFT: u32 = STAR_BITS;
const ROW_SHIFT: u32 = COL_SHIFT + 8;
const BLOCK_SHIFT: u32 = ROW_SHIFT + 8;
const LABEL_SHIFT: u32 = BLOCK_SHIFT + 16;
const SLOT_SHIFT: u32 = LABEL_SHIFT + 24;
const BLOCK_OFFSET: i64 = 1 << 15;

/// Family label: 1 to 3 ASCII alphanumerics starting with a letter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u32);

impl Label {
    pub fn new(s: &str) -> Result<Label> {
        let bytes = s.as_bytes();
        if bytes.is_empty()
            || bytes.len() > 3
            || !bytes[0].is_ascii_alphabetic()
            || !bytes.iter().all(u8::is_ascii_alphanumeric)
        {
            return Err(Error::InvalidLabel(s.to_string()));
        }
        let mut packed = 0u32;
        for k in 0..3 {
            packed = (packed << 8) | u32::from(*bytes.get(k).unwrap_or(&0));
        }
        Ok(Label(packed))
    }

    pub fn as_string(&self) -> String {
        self.0
            .to_be_bytes()
            .iter()
            .skip(1)
            .filter(|&&b| b != 0)
            .map(|&b| b as char)
            .collect()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_string())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One letter of the free *-algebra: entry `(row, col)` of the generator
/// matrix of family `label` in block `block`, possibly starred, possibly
/// living in tensor leg `slot` (0 = untensored).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(u64);

impl Generator {
    /// Rows and columns are 1-based.
    pub fn new(label: Label, block: i32, row: u16, col: u16) -> Result<Generator> {
        if !(1..=255).contains(&row) || !(1..=255).contains(&col) {
            return Err(Error::IndexRange(format!(
                "row/col ({row},{col}) not in 1..=255"
            )));
        }
        let b = i64::from(block) + BLOCK_OFFSET;
        if !(0..(1 << 16)).contains(&b) {
            return Err(Error::IndexRange(format!("block {block}")));
        }
        Ok(Generator(
            (u64::from(label.0) << LABEL_SHIFT)
                | ((b as u64) << BLOCK_SHIFT)
                | (u64::from(row) << ROW_SHIFT)
                | (u64::from(col) << COL_SHIFT),
        ))
    }

    /// Panicking convenience constructor for literals in code.
    pub fn entry(label: &str, block: i32, row: u16, col: u16) -> Generator {
        Generator::new(Label::new(label).expect("label"), block, row, col).expect("generator")
    }

    pub fn label(self) -> Label {
        Label(((self.0 >> LABEL_SHIFT) & 0xFF_FFFF) as u32)
    }

    pub fn block(self) -> i32 {
        (((self.0 >> BLOCK_SHIFT) & 0xFFFF) as i64 - BLOCK_OFFSET) as i32
    }

    pub fn row(self) -> u16 {
        ((self.0 >> ROW_SHIFT) & 0xFF) as u16
    }

    pub fn col(self) -> u16 {
        ((self.0 >> COL_SHIFT) & 0xFF) as u16
    }

    pub fn is_starred(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn slot(self) -> u8 {
        ((self.0 >> SLOT_SHIFT) & 0xF) as u8
    }

    pub fn star(self) -> Generator {
        Generator(self.0 ^ 1)
    }

    pub fn unstarred(self) -> Generator {
        Generator(self.0 & !1)
    }

    pub fn with_slot(self, slot: u8) -> Generator {
        assert!(slot < 16, "tensor slot out of range");
        Generator((self.0 & !(0xF << SLOT_SHIFT)) | (u64::from(slot) << SLOT_SHIFT))
    }

    /// The same letter with its tensor slot cleared.
    pub fn base(self) -> Generator {
        self.with_slot(0)
    }

    /// Family key `(label, block)`.
    pub fn family(self) -> (Label, i32) {
        (self.label(), self.block())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}[{};{},{}]",
            self.label(),
            if self.is_starred() { "*" } else { "" },
            self.block(),
            self.row(),
            self.col()
        )?;
        if self.slot() > 0 {
            write!(f, "@{}", self.slot())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A word (monomial) in the free algebra. Ordered degree-lexicographically.
///
/// Words containing tensor-slot letters are kept in canonical form: letters
/// stably sorted by slot, which is the normal form modulo cross-slot
/// commutation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letter(g: Generator) -> Word {
        Word(vec![g])
    }

    /// Builds a word, canonicalizing tensor slots.
    pub fn from_letters(mut letters: Vec<Generator>) -> Word {
        canonicalize(&mut letters);
        Word(letters)
    }

    /// Wraps letters already known to be canonical.
    pub(crate) fn from_canonical(letters: Vec<Generator>) -> Word {
        Word(letters)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word::from_letters(v)
    }

    /// `left · self · right` for plain slices.
    pub fn sandwich(left: &[Generator], mid: &[Generator], right: &[Generator]) -> Word {
        let mut v = Vec::with_capacity(left.len() + mid.len() + right.len());
        v.extend_from_slice(left);
        v.extend_from_slice(mid);
        v.extend_from_slice(right);
        Word::from_letters(v)
    }

    /// Reversed word with every letter starred.
    pub fn star(&self) -> Word {
        Word::from_letters(self.0.iter().rev().map(|g| g.star()).collect())
    }

    pub fn max_slot(&self) -> u8 {
        self.0.iter().map(|g| g.slot()).max().unwrap_or(0)
    }

    /// Contiguous ranges of equal slot, in order.
    pub fn slot_segments(&self) -> Vec<(u8, std::ops::Range<usize>)> {
        let mut out: Vec<(u8, std::ops::Range<usize>)> = Vec::new();
        for (k, g) in self.0.iter().enumerate() {
            match out.last_mut() {
                Some((s, r)) if *s == g.slot() => r.end = k + 1,
                _ => out.push((g.slot(), k..k + 1)),
            }
        }
        out
    }
}

fn canonicalize(letters: &mut [Generator]) {
    if letters.windows(2).any(|w| w[0].slot() > w[1].slot()) {
        letters.sort_by_key(|g| g.slot());
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
