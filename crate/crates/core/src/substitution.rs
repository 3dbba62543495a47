//! The Arnoux-Rauzy substitutions `sigma_i` and their incidence matrices.

use crate::error::Result;
use crate::word::{Alphabet, FiniteWord, Letter, ParikhVector};

/// Which of the two substitution families to use.
///
/// `Plain` is `sigma_i: i -> i, j -> ji`; `Standard` is the variant
/// `i -> i, j -> ij` whose limit words are the standard (characteristic)
/// Arnoux-Rauzy words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubstitutionKind {
    Plain,
    Standard,
}

impl SubstitutionKind {
    /// The image of a single letter under `sigma_i`, at most two letters.
    pub fn letter_image(self, i: Letter, c: Letter) -> [Option<Letter>; 2] {
        if c == i {
            [Some(i), None]
        } else {
            match self {
                SubstitutionKind::Plain => [Some(c), Some(i)],
                SubstitutionKind::Standard => [Some(i), Some(c)],
            }
        }
    }
}

impl std::fmt::Display for SubstitutionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SubstitutionKind::Plain => f.write_str("plain"),
            SubstitutionKind::Standard => f.write_str("standard"),
        }
    }
}

/// Applies `sigma_i` letterwise to `w`.
pub fn apply_substitution(kind: SubstitutionKind, i: Letter, w: &FiniteWord) -> Result<FiniteWord> {
    let alphabet = w.alphabet();
    alphabet.check_letter(i)?;
    let mut out = Vec::with_capacity(2 * w.len());
    for &c in w.letters() {
        for slot in kind.letter_image(i, c).into_iter().flatten() {
            out.push(slot);
        }
    }
    FiniteWord::new(alphabet, out)
}

/// The abelianization of `sigma_i`: column `j` is the Parikh vector of the
/// image of the letter `j`. Identical for both substitution kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    d: usize,
    /// Row-major `d x d` entries.
    entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn size(&self) -> usize {
        self.d
    }

    pub fn entry(&self, row: usize, col: usize) -> u64 {
        self.entries[row][col]
    }

    pub fn column(&self, col: usize) -> Vec<u64> {
        (0..self.d).map(|r| self.entries[r][col]).collect()
    }

    /// Matrix-vector product on Parikh vectors.
    pub fn apply(&self, v: &ParikhVector) -> ParikhVector {
        let counts: Vec<u64> = (0..self.d)
            .map(|r| {
                (0..self.d)
                    .map(|c| self.entries[r][c] * v.counts()[c])
                    .sum()
            })
            .collect();
        ParikhVector::raw(counts)
    }

    pub fn multiply(&self, other: &IncidenceMatrix) -> IncidenceMatrix {
        let d = self.d;
        let mut entries = vec![vec![0u64; d]; d];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = (0..d).map(|k| self.entries[r][k] * other.entries[k][c]).sum();
            }
        }
        IncidenceMatrix { d, entries }
    }
}

/// The incidence matrix of `sigma_i` over the given alphabet.
pub fn incidence_matrix(
    alphabet: Alphabet,
    i: Letter,
    kind: SubstitutionKind,
) -> Result<IncidenceMatrix> {
    alphabet.check_letter(i)?;
    let d = alphabet.size() as usize;
    let mut entries = vec![vec![0u64; d]; d];
    for j in alphabet.letters() {
        let image = kind.letter_image(i, j);
        for c in image.into_iter().flatten() {
            entries[(c - 1) as usize][(j - 1) as usize] += 1;
        }
    }
    Ok(IncidenceMatrix { d, entries })
}
