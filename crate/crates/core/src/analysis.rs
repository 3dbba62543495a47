//! Directive-sequence analysis: weak and strong partial quotients, the two
//! balance sufficient-condition checkers, and the imbalance-forcing prefix
//! pattern detector.

use crate::directive::DirectiveSequence;
use crate::error::{Error, Result};
use crate::word::Letter;

/// One run `(j_n, k_n)` of the run-length encoding of the directive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeakQuotient {
    pub letter: Letter,
    pub power: usize,
}

/// First `count` weak partial quotients, i.e. the run-length encoding of
/// the directive letters. Fails when a finite directive has fewer runs, or
/// when a run is infinite (periodic tail on a single letter).
pub fn weak_partial_quotients(
    dir: &DirectiveSequence,
    count: usize,
) -> Result<Vec<WeakQuotient>> {
    let infinite_run = dir.prefix().len() + dir.period().len() + 1;
    let mut out = Vec::with_capacity(count);
    let mut m = 0usize;
    while out.len() < count {
        let Some(letter) = dir.letter_at(m) else {
            return Err(Error::Horizon(format!(
                "finite directive {dir} has only {} runs, need {count}",
                out.len()
            )));
        };
        let mut power = 1usize;
        while dir.letter_at(m + power) == Some(letter) {
            power += 1;
            if dir.is_eventually_periodic() && power > infinite_run {
                return Err(Error::Horizon(format!(
                    "run of letter {letter} starting at index {m} is infinite"
                )));
            }
        }
        out.push(WeakQuotient { letter, power });
        m += power;
    }
    Ok(out)
}

/// Strong partial quotients with their anchor indices: `anchors[0] = 0` and
/// `anchors[l+1]` is the first index at which the letters from `anchors[l]`
/// onward cover the whole alphabet; the quotients are the anchor gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongQuotients {
    pub anchors: Vec<usize>,
    pub quotients: Vec<usize>,
}

pub fn strong_partial_quotients(
    dir: &DirectiveSequence,
    count: usize,
) -> Result<StrongQuotients> {
    let d = dir.alphabet().size() as usize;
    let scan_bound = dir.prefix().len() + 2 * dir.period().len() + d + 1;
    let mut anchors = vec![0usize];
    let mut quotients = Vec::with_capacity(count);
    while quotients.len() < count {
        let start = *anchors.last().unwrap();
        let mut seen = vec![false; d];
        let mut seen_count = 0usize;
        let mut t = start;
        loop {
            let Some(letter) = dir.letter_at(t) else {
                return Err(Error::Horizon(format!(
                    "directive {dir} ends before the alphabet is covered from index {start}"
                )));
            };
            if !seen[(letter - 1) as usize] {
                seen[(letter - 1) as usize] = true;
                seen_count += 1;
                if seen_count == d {
                    break;
                }
            }
            t += 1;
            if t - start > scan_bound {
                return Err(Error::Horizon(format!(
                    "alphabet never covered from index {start}; directive {dir} is not valid"
                )));
            }
        }
        anchors.push(t);
        quotients.push(t - start);
    }
    Ok(StrongQuotients { anchors, quotients })
}

fn require_ternary(dir: &DirectiveSequence) -> Result<()> {
    let d = dir.alphabet().size();
    if d == 3 {
        Ok(())
    } else {
        Err(Error::NotThreeLetters { d })
    }
}

/// The number of letters that decides a locally-checkable condition on an
/// eventually periodic directive: every window of the infinite sequence
/// also occurs with its position below `prefix + 2 * period`.
fn decisive_horizon(dir: &DirectiveSequence, requested: usize) -> usize {
    match dir.horizon() {
        Some(len) => requested.min(len),
        None => dir.prefix().len() + 2 * dir.period().len(),
    }
}

/// Result of the bounded-weak-quotient check: a bound `h` on the run
/// lengths implies the word is `(2h+1)`-balanced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeakBound {
    Bounded { h: usize, balance_bound: usize },
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem1Report {
    pub bound: WeakBound,
    pub horizon: usize,
}

/// Maximum weak partial quotient `h` and the implied balance bound `2h+1`.
/// Exact for eventually periodic directives; horizon-relative for finite
/// ones. A periodic tail on a single letter is reported as unbounded.
pub fn check_theorem1(dir: &DirectiveSequence, horizon: usize) -> Result<Theorem1Report> {
    require_ternary(dir)?;
    if dir.is_eventually_periodic() {
        let period = dir.period();
        if period.iter().all(|&c| c == period[0]) {
            return Ok(Theorem1Report {
                bound: WeakBound::Unbounded,
                horizon: decisive_horizon(dir, horizon),
            });
        }
    }
    let scan = decisive_horizon(dir, horizon);
    let mut h = 0usize;
    let mut run = 0usize;
    let mut prev: Option<Letter> = None;
    for m in 0..scan {
        let Some(letter) = dir.letter_at(m) else {
            break;
        };
        if prev == Some(letter) {
            run += 1;
        } else {
            run = 1;
            prev = Some(letter);
        }
        h = h.max(run);
    }
    Ok(Theorem1Report {
        bound: WeakBound::Bounded {
            h,
            balance_bound: 2 * h + 1,
        },
        horizon: scan,
    })
}

/// Which clause of the local condition a position violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Clause {
    /// `i_{m-1} = i_m != i_{m+1}` but `i_{m+2} in {i_m, i_{m+1}}`
    First,
    /// `i_{m-2} = i_m != i_{m+1} = i_{m-1}` but `i_{m+2} in {i_m, i_{m+1}}`
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClauseViolation {
    pub position: usize,
    pub clause: Clause,
}

/// Report of a condition scan: `pass` is relative to the examined horizon,
/// which for eventually periodic directives covers the prefix plus two
/// periods and therefore decides the condition for every index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub pass: bool,
    pub violations: Vec<ClauseViolation>,
    pub horizon: usize,
}

/// Checks the sufficient condition for 2-balance: at every position where
/// the directive ends a run (`i_{m-1} = i_m != i_{m+1}`) or alternates
/// (`i_{m-2} = i_m != i_{m+1} = i_{m-1}`), the next letter `i_{m+2}` must be
/// the third letter.
///
/// Runs both as a direct clause scan and as a forbidden-factor scan over the
/// words `{1121, 1122, 12121, 12122}` closed under letter permutations; the
/// two routes must agree.
pub fn check_theorem2(dir: &DirectiveSequence, horizon: usize) -> Result<ConditionReport> {
    require_ternary(dir)?;
    let max_m = decisive_horizon(dir, horizon);

    let mut clause_scan = Vec::new();
    for m in 1..=max_m {
        let (Some(at_m), Some(next), Some(next2)) =
            (dir.letter_at(m), dir.letter_at(m + 1), dir.letter_at(m + 2))
        else {
            break;
        };
        let bad_next2 = next2 == at_m || next2 == next;
        if at_m != next && bad_next2 {
            if dir.letter_at(m - 1) == Some(at_m) {
                clause_scan.push(ClauseViolation {
                    position: m,
                    clause: Clause::First,
                });
            } else if m >= 2
                && dir.letter_at(m - 2) == Some(at_m)
                && dir.letter_at(m - 1) == Some(next)
            {
                clause_scan.push(ClauseViolation {
                    position: m,
                    clause: Clause::Second,
                });
            }
        }
    }

    let factor_scan = forbidden_factor_scan(dir, max_m);
    assert_eq!(
        clause_scan, factor_scan,
        "clause scan and forbidden-factor scan disagree on {dir}"
    );

    Ok(ConditionReport {
        pass: clause_scan.is_empty(),
        violations: clause_scan,
        horizon: max_m,
    })
}

/// The forbidden words on two letters and their images under all letter
/// permutations of `{1,2,3}`.
fn forbidden_words() -> Vec<Vec<Letter>> {
    let base: [&[Letter]; 4] = [&[1, 1, 2, 1], &[1, 1, 2, 2], &[1, 2, 1, 2, 1], &[1, 2, 1, 2, 2]];
    let mut out = Vec::new();
    for perm in PERMUTATIONS {
        for word in base {
            out.push(word.iter().map(|&c| perm[(c - 1) as usize]).collect());
        }
    }
    out
}

/// Independent route for `check_theorem2`: occurrences of a forbidden
/// 4-letter word starting at `s` violate the first clause at `m = s + 1`,
/// occurrences of a 5-letter word violate the second clause at `m = s + 2`.
fn forbidden_factor_scan(dir: &DirectiveSequence, max_m: usize) -> Vec<ClauseViolation> {
    let forbidden = forbidden_words();
    let mut found = Vec::new();
    for m in 1..=max_m {
        for word in &forbidden {
            let (start, clause) = match word.len() {
                4 => (m - 1, Clause::First),
                _ if m >= 2 => (m - 2, Clause::Second),
                _ => continue,
            };
            let matches = word
                .iter()
                .enumerate()
                .all(|(k, &c)| dir.letter_at(start + k) == Some(c));
            if matches {
                found.push(ClauseViolation { position: m, clause });
                break;
            }
        }
    }
    found
}

const PERMUTATIONS: [[Letter; 3]; 6] = [
    [1, 2, 3],
    [1, 3, 2],
    [2, 1, 3],
    [2, 3, 1],
    [3, 1, 2],
    [3, 2, 1],
];

/// A witness segmentation of the imbalance-forcing prefix pattern
/// `{1,3}* 1 2* 1 2 {1,2}`, up to a permutation of the letters.
///
/// Under the permutation (given as the images of `1, 2, 3`), the directive
/// starts with `x_len` letters from `{1,3}`, the letter `1`, `y_len` copies
/// of `2`, then `1 2` and a final letter from `{1,2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternMatch {
    pub permutation: [Letter; 3],
    pub x_len: usize,
    pub y_len: usize,
    pub final_letter: Letter,
}

impl PatternMatch {
    /// Total length of the matched prefix.
    pub fn matched_len(&self) -> usize {
        self.x_len + self.y_len + 4
    }

    /// Position of the first mandatory `1`-anchor (after the `{1,3}*` part).
    pub fn first_anchor(&self) -> usize {
        self.x_len
    }

    /// Position of the second mandatory `1`-anchor (after the `2*` part).
    pub fn second_anchor(&self) -> usize {
        self.x_len + self.y_len + 1
    }
}

/// Scans for the imbalance-forcing prefix pattern under each of the six
/// letter permutations, in lexicographic permutation order; within one
/// permutation the witness segmentation minimizes `x_len`, then `y_len`.
pub fn detect_theorem3_prefix(
    dir: &DirectiveSequence,
    horizon: usize,
) -> Result<Option<PatternMatch>> {
    require_ternary(dir)?;
    let get = |m: usize| -> Option<Letter> {
        if m < horizon {
            dir.letter_at(m)
        } else {
            None
        }
    };
    for perm in PERMUTATIONS {
        let [a, b, c] = perm;
        let mut x_len = 0usize;
        loop {
            if get(x_len) == Some(a) {
                // anchor candidate; extend the 2* block
                let mut y_len = 0usize;
                loop {
                    let base = x_len + 1 + y_len;
                    match get(base) {
                        Some(l) if l == a => {
                            if get(base + 1) == Some(b) {
                                if let Some(z) = get(base + 2) {
                                    if z == a || z == b {
                                        return Ok(Some(PatternMatch {
                                            permutation: perm,
                                            x_len,
                                            y_len,
                                            final_letter: z,
                                        }));
                                    }
                                }
                            }
                            break;
                        }
                        Some(l) if l == b => y_len += 1,
                        _ => break,
                    }
                }
            }
            match get(x_len) {
                Some(l) if l == a || l == c => x_len += 1,
                _ => break,
            }
        }
    }
    Ok(None)
}
