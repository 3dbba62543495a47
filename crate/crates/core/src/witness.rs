//! Parikh-difference lifts along the directive and the constructive
//! imbalance witness chains for directives starting with the
//! imbalance-forcing pattern, plus an independent brute-force witness scan.
//!
//! A lift takes a pair of factors of the shifted word at level `m+1` to a
//! pair at level `m` by applying `sigma_{i_m}` and prepending or stripping
//! the letter `i_m`: the difference vector keeps all components except at
//! `i_m`, where it becomes `sum(D) + delta` for a chosen
//! `delta in {-2,...,2}`.

use std::collections::BTreeMap;

use crate::analysis::{detect_theorem3_prefix, PatternMatch};
use crate::balance::WitnessPair;
use crate::directive::DirectiveSequence;
use crate::error::{Error, Result};
use crate::generate::generate_prefix;
use crate::substitution::{apply_substitution, SubstitutionKind};
use crate::word::{FiniteWord, Letter, ParikhDiff};

/// Cap on the prefix length searched when verifying that constructed words
/// occur as factors; failure at the cap is a horizon error, never a silent
/// pass.
pub const FACTOR_SEARCH_CAP: usize = 1_000_000;

/// Lifts a pair through `sigma_i` with the given offset:
///
/// * `delta = 0`: `(s(u), s(v))`
/// * `delta = +1`: `(i s(u), s(v))`, `delta = -1`: `(s(u), i s(v))`
/// * `delta = +2`: `(i s(u), s(v) minus trailing i)`, needs `v` nonempty
/// * `delta = -2`: `(s(u) minus trailing i, i s(v))`, needs `u` nonempty
///
/// The component of the difference vector at `i` becomes
/// `|u| - |v| + delta`; all other components are unchanged.
pub fn lift_pair(
    u: &FiniteWord,
    v: &FiniteWord,
    i: Letter,
    delta: i8,
) -> Result<(FiniteWord, FiniteWord)> {
    let alphabet = u.alphabet();
    alphabet.check_letter(i)?;
    if !(-2..=2).contains(&delta) {
        return Err(Error::Precondition(format!(
            "lift offset must be in -2..=2, got {delta}"
        )));
    }
    if delta == 2 && v.is_empty() {
        return Err(Error::Precondition(
            "offset +2 strips a trailing letter from the image of v, but v is empty".into(),
        ));
    }
    if delta == -2 && u.is_empty() {
        return Err(Error::Precondition(
            "offset -2 strips a trailing letter from the image of u, but u is empty".into(),
        ));
    }

    let prepend = |w: &FiniteWord| -> FiniteWord {
        let mut letters = Vec::with_capacity(w.len() + 1);
        letters.push(i);
        letters.extend_from_slice(w.letters());
        FiniteWord::new(alphabet, letters).unwrap()
    };
    let strip = |w: FiniteWord| -> FiniteWord {
        debug_assert_eq!(w.letters().last(), Some(&i));
        let mut letters = w.letters().to_vec();
        letters.pop();
        FiniteWord::new(alphabet, letters).unwrap()
    };

    let su = apply_substitution(SubstitutionKind::Plain, i, u)?;
    let sv = apply_substitution(SubstitutionKind::Plain, i, v)?;
    let pair = match delta {
        0 => (su, sv),
        1 => (prepend(&su), sv),
        -1 => (su, prepend(&sv)),
        2 => (prepend(&su), strip(sv)),
        _ => (strip(su), prepend(&sv)),
    };
    Ok(pair)
}

/// The offset that maps a difference vector to itself under a lift through
/// `sigma_i`: `delta = D_i - sum(D)` when that lies in `-2..=2`.
pub fn stabilizing_delta(diff: &ParikhDiff, i: Letter) -> Option<i8> {
    let delta = diff.delta(i) - diff.sum();
    if (-2..=2).contains(&delta) {
        Some(delta as i8)
    } else {
        None
    }
}

/// One lift of the chain: the pair at `level` was obtained by lifting the
/// previous pair through `sigma_{letter}` with offset `delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftStep {
    pub level: usize,
    pub letter: Letter,
    pub delta: i8,
    pub u: FiniteWord,
    pub v: FiniteWord,
    pub diff: ParikhDiff,
}

/// A complete witness chain from a one-letter seed pair at the deepest
/// level down to level 0, where the final difference vector has a
/// component of absolute value 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessChain {
    pub pattern: PatternMatch,
    pub seed_level: usize,
    pub seed_u: FiniteWord,
    pub seed_v: FiniteWord,
    /// Steps from level `seed_level - 1` down to level 0.
    pub steps: Vec<LiftStep>,
    pub final_diff: ParikhDiff,
    /// Prefix length of the generated word in which both final words were
    /// located as factors.
    pub verified_prefix_len: usize,
}

impl WitnessChain {
    pub fn final_pair(&self) -> (&FiniteWord, &FiniteWord) {
        let last = self.steps.last().expect("chain has at least one step");
        (&last.u, &last.v)
    }
}

/// Searches the next occurrence of `letter` at or after `from`, bounded so
/// that invalid directives fail instead of scanning forever.
fn next_occurrence(dir: &DirectiveSequence, letter: Letter, from: usize) -> Result<usize> {
    let bound = from + dir.prefix().len() + 2 * dir.period().len() + 2;
    let mut m = from;
    loop {
        match dir.letter_at(m) {
            Some(c) if c == letter => return Ok(m),
            Some(_) => m += 1,
            None => {
                return Err(Error::Horizon(format!(
                    "directive {dir} ends before an occurrence of {letter} at or after {from}"
                )))
            }
        }
        if m > bound {
            return Err(Error::Horizon(format!(
                "no occurrence of {letter} within {bound} letters of {dir}"
            )));
        }
    }
}

/// Builds the witness chain for a directive starting with the
/// imbalance-forcing pattern (up to a letter permutation).
///
/// The seed difference vector `(+-1, 0, 0)` is planted past the next
/// `2..2..3..3` (or `3..3..2..2`) anchors after the pattern; the prescribed
/// offsets at the anchor levels and stabilizing offsets everywhere else
/// transport it down to a final vector whose middle component (under the
/// matched permutation) is 3. Both final words are then located as factors
/// of a generated prefix.
pub fn construct_theorem3_witness(dir: &DirectiveSequence) -> Result<WitnessChain> {
    let alphabet = dir.alphabet();
    if alphabet.size() != 3 {
        return Err(Error::NotThreeLetters { d: alphabet.size() });
    }
    dir.check_valid()?;

    let detect_horizon = dir.prefix().len() + 3 * dir.period().len() + 8;
    let pattern = detect_theorem3_prefix(dir, detect_horizon)?.ok_or_else(|| {
        Error::Precondition(format!(
            "directive {dir} does not start with the imbalance-forcing pattern"
        ))
    })?;
    let [a, b, c] = pattern.permutation;
    let perm = move |t: [i64; 3]| -> [i64; 3] {
        let mut out = [0i64; 3];
        out[(a - 1) as usize] = t[0];
        out[(b - 1) as usize] = t[1];
        out[(c - 1) as usize] = t[2];
        out
    };

    // Where the 2..2..3..3 / 3..3..2..2 element starts: at the final pattern
    // letter when it is the `2` of the pattern, right after it otherwise.
    let m_star = if pattern.final_letter == a {
        pattern.matched_len()
    } else {
        pattern.matched_len() - 1
    };

    // Skip the leading run of the fixed letter; the first other letter
    // decides the branch.
    let mut p1 = m_star;
    let skip_bound = m_star + dir.prefix().len() + 2 * dir.period().len() + 2;
    while dir.letter_at(p1) == Some(a) {
        p1 += 1;
        if p1 > skip_bound {
            return Err(Error::Horizon(format!(
                "directive {dir} never leaves the letter {a} after the pattern"
            )));
        }
    }
    let first = dir.letter_at(p1).ok_or_else(|| {
        Error::Horizon(format!("directive {dir} ends before the witness anchors"))
    })?;

    // Anchor positions and the difference-vector targets they must reach,
    // in identity-frame coordinates (permuted below).
    let mut targets: BTreeMap<usize, [i64; 3]> = BTreeMap::new();
    let (seed_u, seed_v);
    if first == b {
        let p2 = next_occurrence(dir, b, p1 + 1)?;
        let p3 = next_occurrence(dir, c, p2 + 1)?;
        let p4 = next_occurrence(dir, c, p3 + 1)?;
        targets.insert(p4, [1, 0, -1]);
        targets.insert(p3, [1, 0, -2]);
        targets.insert(p2, [1, 1, -2]);
        targets.insert(p1, [1, 2, -2]);
        seed_u = FiniteWord::new(alphabet, vec![a])?;
        seed_v = FiniteWord::empty(alphabet);
    } else {
        let p2 = next_occurrence(dir, c, p1 + 1)?;
        let p3 = next_occurrence(dir, b, p2 + 1)?;
        let p4 = next_occurrence(dir, b, p3 + 1)?;
        targets.insert(p4, [-1, 1, 0]);
        targets.insert(p3, [-1, 2, 0]);
        targets.insert(p2, [-1, 2, -1]);
        targets.insert(p1, [-1, 2, -2]);
        seed_u = FiniteWord::empty(alphabet);
        seed_v = FiniteWord::new(alphabet, vec![a])?;
    }
    if pattern.final_letter == a {
        targets.insert(pattern.matched_len() - 1, [1, 2, -2]);
    }
    targets.insert(pattern.second_anchor() + 1, [1, 3, -2]);
    targets.insert(pattern.second_anchor(), [0, 3, -2]);
    targets.insert(pattern.first_anchor(), [-1, 3, -2]);

    let seed_level = *targets.keys().next_back().unwrap() + 1;
    let mut u = seed_u.clone();
    let mut v = seed_v.clone();
    let mut steps = Vec::with_capacity(seed_level);
    for level in (0..seed_level).rev() {
        let letter = dir.letter_at(level).expect("level below scanned anchors");
        let current = u.parikh().diff(&v.parikh());
        let target = match targets.get(&level) {
            Some(t) => ParikhDiff::new(perm(*t).to_vec()),
            None => current.clone(),
        };
        let delta = target.delta(letter) - current.sum();
        if !(-2..=2).contains(&delta) {
            return Err(Error::Precondition(format!(
                "level {level}: offset {delta} out of range lifting {current} to {target}"
            )));
        }
        let (nu, nv) = lift_pair(&u, &v, letter, delta as i8)?;
        u = nu;
        v = nv;
        let diff = u.parikh().diff(&v.parikh());
        debug_assert_eq!(diff, target, "lift missed its target at level {level}");
        steps.push(LiftStep {
            level,
            letter,
            delta: delta as i8,
            u: u.clone(),
            v: v.clone(),
            diff,
        });
    }

    let final_diff = u.parikh().diff(&v.parikh());
    assert!(
        final_diff.max_abs() >= 3,
        "chain ended without an imbalance: {final_diff}"
    );

    let verified_prefix_len = locate_as_factors(dir, &[&u, &v], FACTOR_SEARCH_CAP)?;
    Ok(WitnessChain {
        pattern,
        seed_level,
        seed_u,
        seed_v,
        steps,
        final_diff,
        verified_prefix_len,
    })
}

/// Grows a generated prefix geometrically until every needle occurs as a
/// factor; returns the successful prefix length.
fn locate_as_factors(
    dir: &DirectiveSequence,
    needles: &[&FiniteWord],
    cap: usize,
) -> Result<usize> {
    let longest = needles.iter().map(|w| w.len()).max().unwrap_or(0);
    let mut len = (8 * longest.max(1)).clamp(1024, cap);
    loop {
        let haystack = generate_prefix(dir, SubstitutionKind::Plain, len)?.to_digits();
        if needles
            .iter()
            .all(|w| haystack.contains(&w.to_digits()))
        {
            return Ok(len);
        }
        if len >= cap {
            return Err(Error::Horizon(format!(
                "witness words not found in the first {cap} letters of {dir}"
            )));
        }
        len = (len * 2).min(cap);
    }
}

/// Checks that every intermediate pair of the chain consists of factors of
/// the correspondingly shifted word, by substring search on generated
/// prefixes. Returns the prefix length used per level.
pub fn verify_chain_factors(
    chain: &WitnessChain,
    dir: &DirectiveSequence,
    cap: usize,
) -> Result<Vec<(usize, usize)>> {
    let mut used = Vec::with_capacity(chain.steps.len() + 1);
    let seed_dir = dir.shift(chain.seed_level);
    let len = locate_as_factors(&seed_dir, &[&chain.seed_u, &chain.seed_v], cap)?;
    used.push((chain.seed_level, len));
    for step in &chain.steps {
        let level_dir = dir.shift(step.level);
        let len = locate_as_factors(&level_dir, &[&step.u, &step.v], cap)?;
        used.push((step.level, len));
    }
    Ok(used)
}

/// Independent witness oracle: a direct rolling-count scan over all window
/// lengths up to `max_window`, with no use of the prefix-sum profile. The
/// returned pair is the first violating (length, letter) cell with the
/// smallest witnessing start positions.
pub fn brute_force_witness(w: &FiniteWord, c: u32, max_window: usize) -> Option<WitnessPair> {
    let d = w.alphabet().size() as usize;
    let letters = w.letters();
    for n in 1..=max_window.min(w.len()) {
        let mut counts = vec![0u32; d];
        for &ch in &letters[..n] {
            counts[(ch - 1) as usize] += 1;
        }
        let mut max = counts.clone();
        let mut min = counts.clone();
        let mut max_at = vec![0usize; d];
        let mut min_at = vec![0usize; d];
        for start in 1..=letters.len() - n {
            counts[(letters[start - 1] - 1) as usize] -= 1;
            counts[(letters[start + n - 1] - 1) as usize] += 1;
            for j in 0..d {
                if counts[j] > max[j] {
                    max[j] = counts[j];
                    max_at[j] = start;
                }
                if counts[j] < min[j] {
                    min[j] = counts[j];
                    min_at[j] = start;
                }
            }
        }
        for j in 0..d {
            if max[j] - min[j] > c {
                return Some(WitnessPair {
                    u_start: max_at[j],
                    v_start: min_at[j],
                    len: n,
                    letter: (j + 1) as Letter,
                    diff: (max[j] - min[j]) as i64,
                });
            }
        }
    }
    None
}
