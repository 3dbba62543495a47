//! Finite words over `{1, ..., d}` with eager prefix-sum tables, Parikh
//! vectors, and O(1) window count queries.

use crate::error::{Error, Result};

/// Letters are the integers `1..=d`.
pub type Letter = u8;

/// The alphabet `{1, ..., d}`, `d >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    d: u8,
}

impl Alphabet {
    pub fn new(d: u8) -> Result<Self> {
        if d < 2 {
            return Err(Error::AlphabetTooSmall { d });
        }
        Ok(Alphabet { d })
    }

    /// The standard 3-letter alphabet used by the balance theorems.
    pub fn ternary() -> Self {
        Alphabet { d: 3 }
    }

    pub fn size(&self) -> u8 {
        self.d
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        1..=self.d
    }

    pub fn contains(&self, letter: Letter) -> bool {
        (1..=self.d).contains(&letter)
    }

    pub fn check_letter(&self, letter: Letter) -> Result<()> {
        if self.contains(letter) {
            Ok(())
        } else {
            Err(Error::LetterOutOfAlphabet { letter, d: self.d })
        }
    }
}

/// A finite word with per-letter prefix counts built at construction.
///
/// `prefix[j-1][i]` is the number of occurrences of the letter `j` among the
/// first `i` letters, so any window count is a difference of two table
/// entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
    prefix: Vec<Vec<u32>>,
}

impl FiniteWord {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self> {
        for &c in &letters {
            alphabet.check_letter(c)?;
        }
        Ok(Self::new_unchecked(alphabet, letters))
    }

    /// Letters must already be validated against the alphabet.
    pub(crate) fn new_unchecked(alphabet: Alphabet, letters: Vec<Letter>) -> Self {
        let d = alphabet.size() as usize;
        let mut prefix = vec![vec![0u32; letters.len() + 1]; d];
        for (i, &c) in letters.iter().enumerate() {
            for (j, row) in prefix.iter_mut().enumerate() {
                row[i + 1] = row[i] + u32::from(c as usize == j + 1);
            }
        }
        FiniteWord {
            alphabet,
            letters,
            prefix,
        }
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self::new_unchecked(alphabet, Vec::new())
    }

    /// Parses the compact digit form, e.g. `"12131212"`. Requires `d <= 9`.
    pub fn from_digits(alphabet: Alphabet, s: &str) -> Result<Self> {
        if alphabet.size() > 9 {
            return Err(Error::AlphabetNotDigital { d: alphabet.size() });
        }
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let c = ch.to_digit(10).ok_or(Error::DirectiveSyntax {
                position: 0,
                message: format!("non-digit character {ch:?} in word"),
            })? as Letter;
            alphabet.check_letter(c)?;
            letters.push(c);
        }
        Ok(Self::new_unchecked(alphabet, letters))
    }

    /// The compact digit form; the empty word serializes as `""`.
    pub fn to_digits(&self) -> String {
        self.letters.iter().map(|c| (b'0' + c) as char).collect()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// `|w|_j`, the total occurrence count of `j`.
    pub fn count(&self, j: Letter) -> Result<u32> {
        self.alphabet.check_letter(j)?;
        Ok(self.prefix[(j - 1) as usize][self.len()])
    }

    /// Number of occurrences of `j` in the window `[start, start+len)`.
    pub fn window_count(&self, start: usize, len: usize, j: Letter) -> Result<u32> {
        self.alphabet.check_letter(j)?;
        let end = start.checked_add(len).filter(|&e| e <= self.len()).ok_or(
            Error::WindowOutOfRange {
                start,
                len,
                word_len: self.len(),
            },
        )?;
        let row = &self.prefix[(j - 1) as usize];
        Ok(row[end] - row[start])
    }

    /// The full prefix-count row for `j`; used by the window scanners.
    pub(crate) fn prefix_row(&self, j: Letter) -> &[u32] {
        &self.prefix[(j - 1) as usize]
    }

    pub fn parikh(&self) -> ParikhVector {
        let counts = self
            .prefix
            .iter()
            .map(|row| u64::from(row[self.len()]))
            .collect();
        ParikhVector { counts }
    }

    /// The factor `w[start..start+len]` as a standalone word.
    pub fn factor(&self, start: usize, len: usize) -> Result<FiniteWord> {
        let end = start.checked_add(len).filter(|&e| e <= self.len()).ok_or(
            Error::WindowOutOfRange {
                start,
                len,
                word_len: self.len(),
            },
        )?;
        Ok(Self::new_unchecked(
            self.alphabet,
            self.letters[start..end].to_vec(),
        ))
    }

    pub fn concat(&self, other: &FiniteWord) -> FiniteWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Self::new_unchecked(self.alphabet, letters)
    }
}

impl std::fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_digits())
    }
}

/// The vector of letter occurrence counts `(|w|_1, ..., |w|_d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParikhVector {
    counts: Vec<u64>,
}

impl ParikhVector {
    pub fn zero(alphabet: Alphabet) -> Self {
        ParikhVector {
            counts: vec![0; alphabet.size() as usize],
        }
    }

    pub(crate) fn raw(counts: Vec<u64>) -> Self {
        ParikhVector { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, j: Letter) -> u64 {
        self.counts[(j - 1) as usize]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn add(&self, other: &ParikhVector) -> ParikhVector {
        ParikhVector {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Componentwise difference `self - other` as a signed vector.
    pub fn diff(&self, other: &ParikhVector) -> ParikhDiff {
        ParikhDiff {
            deltas: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| *a as i64 - *b as i64)
                .collect(),
        }
    }
}

/// A difference of two Parikh vectors; the component sum equals `|u| - |v|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParikhDiff {
    deltas: Vec<i64>,
}

impl ParikhDiff {
    pub fn new(deltas: Vec<i64>) -> Self {
        ParikhDiff { deltas }
    }

    pub fn deltas(&self) -> &[i64] {
        &self.deltas
    }

    pub fn delta(&self, j: Letter) -> i64 {
        self.deltas[(j - 1) as usize]
    }

    pub fn sum(&self) -> i64 {
        self.deltas.iter().sum()
    }

    pub fn max_abs(&self) -> i64 {
        self.deltas.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl std::fmt::Display for ParikhDiff {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.deltas.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}
