//! Prefix generation for the limit words `lim sigma_{i_0} ... sigma_{i_n}(1)`.
//!
//! The generator keeps, for each letter `c`, the image of `c` under the
//! composition built so far, truncated to `2L` letters (prefixes of images
//! only ever depend on prefixes of the previous images, so the truncation is
//! exact). A prefix of the limit word is emitted only once it is provably
//! stable:
//!
//! * plain kind: the argument of the outer composition always starts with
//!   the letter `1`, so the image of `1` under the current composition is a
//!   prefix of every later composition and of the limit;
//! * standard kind: every image `sigma_i(w)` starts with `i`, so the image
//!   of the *next* directive letter under the current composition is a
//!   prefix of the limit.

use crate::directive::DirectiveSequence;
use crate::error::{Error, Result};
use crate::substitution::SubstitutionKind;
use crate::word::{FiniteWord, Letter};

struct ImageTable {
    /// `images[c-1]`: first `cap` letters of the image of `c`.
    images: Vec<Vec<Letter>>,
    cap: usize,
}

impl ImageTable {
    fn identity(d: usize, cap: usize) -> Self {
        ImageTable {
            images: (1..=d).map(|c| vec![c as Letter]).collect(),
            cap,
        }
    }

    fn image(&self, c: Letter) -> &[Letter] {
        &self.images[(c - 1) as usize]
    }

    /// Replaces the table by its composition with `sigma_i` on the right.
    fn compose(&mut self, kind: SubstitutionKind, i: Letter) {
        let idx = (i - 1) as usize;
        let tail = self.images[idx].clone();
        for (k, img) in self.images.iter_mut().enumerate() {
            if k == idx {
                continue;
            }
            match kind {
                SubstitutionKind::Plain => {
                    let room = self.cap.saturating_sub(img.len());
                    img.extend_from_slice(&tail[..room.min(tail.len())]);
                }
                SubstitutionKind::Standard => {
                    let mut new = tail.clone();
                    let room = self.cap.saturating_sub(new.len());
                    new.extend_from_slice(&img[..room.min(img.len())]);
                    *img = new;
                }
            }
        }
    }
}

/// Returns the first `length` letters of the limit word of the directive.
///
/// Fails with a horizon error when a finite directive cannot stabilize that
/// many letters, or when the directive's tail degenerates (a period on a
/// single letter) so that the images stop growing.
pub fn generate_prefix(
    dir: &DirectiveSequence,
    kind: SubstitutionKind,
    length: usize,
) -> Result<FiniteWord> {
    let alphabet = dir.alphabet();
    let d = alphabet.size() as usize;
    if length == 0 {
        return Ok(FiniteWord::empty(alphabet));
    }
    let cap = 2 * length;
    let mut table = ImageTable::identity(d, cap);

    // Longest provably-stable prefix of the limit found so far.
    let mut stable: Vec<Letter> = Vec::new();
    let stall_bound = dir.prefix().len() + dir.period().len() + 1;
    let mut stalled = 0usize;

    let mut m = 0usize;
    loop {
        let Some(i) = dir.letter_at(m) else {
            break;
        };
        let candidate = match kind {
            SubstitutionKind::Plain => table.image(1),
            SubstitutionKind::Standard => table.image(i),
        };
        if candidate.len() > stable.len() {
            debug_assert!(candidate.starts_with(&stable));
            stable = candidate.to_vec();
            stalled = 0;
        } else {
            stalled += 1;
        }
        if stable.len() >= length {
            stable.truncate(length);
            return Ok(FiniteWord::new_unchecked(alphabet, stable));
        }
        if dir.is_eventually_periodic() && stalled > stall_bound {
            return Err(Error::Horizon(format!(
                "directive {dir} stopped producing letters after index {m}; \
                 cannot stabilize {length} letters"
            )));
        }
        table.compose(kind, i);
        m += 1;
    }

    // Finite directive exhausted. For the plain kind the final composition
    // applied to 1 is the full finite word, hence stable by convention.
    if kind == SubstitutionKind::Plain && table.image(1).len() > stable.len() {
        stable = table.image(1).to_vec();
    }
    if stable.len() >= length {
        stable.truncate(length);
        return Ok(FiniteWord::new_unchecked(alphabet, stable));
    }
    Err(Error::Horizon(format!(
        "finite directive {dir} stabilizes only {} letters, need {length}",
        stable.len()
    )))
}
