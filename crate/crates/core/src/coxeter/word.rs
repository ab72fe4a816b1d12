use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const LETTERS: &[u8] = b"stuvwxyz";

/// A set of generators, stored as a bit mask (rank is at most 32).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenSet(pub u32);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn full(rank: usize) -> GenSet {
        if rank >= 32 {
            GenSet(u32::MAX)
        } else {
            GenSet((1u32 << rank) - 1)
        }
    }

    pub fn singleton(s: usize) -> GenSet {
        GenSet(1 << s)
    }

    pub fn contains(self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn insert(&mut self, s: usize) {
        self.0 |= 1 << s;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, rank: usize) -> GenSet {
        GenSet(!self.0 & GenSet::full(rank).0)
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&s| self.contains(s))
    }

    /// All subsets of `{0..rank}` in increasing mask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = GenSet> {
        (0..=GenSet::full(rank).0).map(GenSet)
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = GenSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&letter(s))?;
        }
        f.write_str("}")
    }
}

fn letter(s: usize) -> String {
    match LETTERS.get(s) {
        Some(&c) => (c as char).to_string(),
        None => format!("g{s}"),
    }
}

/// A finite sequence of generator indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses either a string of letters from `stuvwxyz` (`"stst"`) or a
    /// comma/space separated list of indices (`"0,1,0"`).
    pub fn parse(text: &str, rank: usize) -> Result<Self> {
        let text = text.trim();
        let letters: Vec<u8> = if text.is_empty() {
            Vec::new()
        } else if text.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) {
            text.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u8>().map_err(|_| Error::Parse(format!("bad generator index {t:?}"))))
                .collect::<Result<_>>()?
        } else {
            text.bytes()
                .map(|b| {
                    LETTERS
                        .iter()
                        .position(|&c| c == b)
                        .map(|i| i as u8)
                        .ok_or_else(|| Error::Parse(format!("unknown generator letter {:?}", b as char)))
                })
                .collect::<Result<_>>()?
        };
        if let Some(&bad) = letters.iter().find(|&&s| s as usize >= rank) {
            return Err(Error::InvalidGenerator { index: bad as usize, rank });
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| (s as usize) < LETTERS.len()) {
            for &s in &self.0 {
                write!(f, "{}", LETTERS[s as usize] as char)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl From<Vec<u8>> for Word {
    fn from(letters: Vec<u8>) -> Self {
        Word(letters)
    }
}

/// A group element in normal form: the lexicographically least reduced word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalElement {
    pub(crate) word: Word,
}

impl CanonicalElement {
    pub fn identity() -> Self {
        CanonicalElement::default()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn letters(&self) -> &[u8] {
        &self.word.0
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for CanonicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("1")
        } else {
            self.word.fmt(f)
        }
    }
}
