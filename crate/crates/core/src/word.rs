//! Letters of the semigroup of positive integers and words over them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A letter `ω_i`, identified with the positive integer `i`. Contraction of
/// two letters adds their values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            return Err(Error::InvalidLetter(0));
        }
        Ok(Letter(value))
    }

    pub fn value(self) -> u32 {
        self.0
    }
}

impl Add for Letter {
    type Output = Letter;

    fn add(self, rhs: Letter) -> Letter {
        Letter(self.0 + rhs.0)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite sequence of letters. Words are ordered by length first, then
/// lexicographically on letter values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn from_slice(values: &[u32]) -> Result<Self> {
        values
            .iter()
            .map(|&v| Letter::new(v))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn single(letter: Letter) -> Self {
        Word(vec![letter])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn values(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.0).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of letter values; this is the grading.
    pub fn norm(&self) -> u64 {
        self.0.iter().map(|l| u64::from(l.0)).sum()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// `L_a(w) = a w`.
    pub fn prepend(&self, letter: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(letter);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn prefix(&self, k: usize) -> Word {
        Word(self.0[..k].to_vec())
    }

    pub fn suffix_from(&self, k: usize) -> Word {
        Word(self.0[k..].to_vec())
    }

    /// The word without its last letter.
    pub fn init(&self) -> Word {
        Word(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }

    /// Prefix partial sums `ω̌_k = ω_1 + … + ω_k`, for k = 1..=n.
    pub fn prefix_sums(&self) -> Vec<u64> {
        self.0
            .iter()
            .scan(0u64, |acc, l| {
                *acc += u64::from(l.0);
                Some(*acc)
            })
            .collect()
    }

    /// Input syntax: `1,2,3`, or `-` for the empty word.
    pub fn to_syntax(&self) -> String {
        if self.is_empty() {
            "-".to_string()
        } else {
            self.values()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
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
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l)?;
        }
        write!(f, ")")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|part| {
                let part = part.trim();
                let v: i64 = part
                    .parse()
                    .map_err(|_| Error::Parse(format!("not a letter: {:?}", part)))?;
                if v < 1 || v > i64::from(u32::MAX) {
                    return Err(Error::InvalidLetter(v));
                }
                Ok(Letter(v as u32))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}
