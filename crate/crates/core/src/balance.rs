//! Balance profiles over finite prefixes and C-balance verdicts with
//! witnesses, plus the equal-length extraction lemmas.
//!
//! A profile records, per window length `n` and letter `j`, the spread
//! `max - min` of window counts over all windows of length `n` inside the
//! prefix. A violation at level `C` is a pair of equal-length windows whose
//! counts for some letter differ by more than `C`; such a pair is a proof,
//! while the absence of one is only evidence bounded by the scanned prefix
//! and window range.

use crate::error::{Error, Result};
use crate::word::{FiniteWord, Letter};

/// Spread of one `(n, j)` cell together with witnessing window positions
/// (smallest start indices realizing the max and the min).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpreadCell {
    pub spread: u32,
    pub max_start: usize,
    pub min_start: usize,
}

/// Exact window-count spreads for all window lengths `1..=max_window`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceProfile {
    prefix_length: usize,
    max_window: usize,
    d: u8,
    /// `rows[n-1][j-1]`
    rows: Vec<Vec<SpreadCell>>,
}

impl BalanceProfile {
    pub fn prefix_length(&self) -> usize {
        self.prefix_length
    }

    pub fn max_window(&self) -> usize {
        self.max_window
    }

    pub fn alphabet_size(&self) -> u8 {
        self.d
    }

    pub fn cell(&self, n: usize, j: Letter) -> &SpreadCell {
        &self.rows[n - 1][(j - 1) as usize]
    }

    pub fn spread(&self, n: usize, j: Letter) -> u32 {
        self.cell(n, j).spread
    }

    pub fn max_spread(&self) -> u32 {
        self.rows
            .iter()
            .flat_map(|row| row.iter().map(|c| c.spread))
            .max()
            .unwrap_or(0)
    }
}

/// Two located equal-length factors realizing a count difference for one
/// letter: `diff = count(u_window) - count(v_window)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessPair {
    pub u_start: usize,
    pub v_start: usize,
    pub len: usize,
    pub letter: Letter,
    pub diff: i64,
}

/// Outcome of a C-balance scan. `Violation` is a proof; `NoViolationFound`
/// is a semi-decision carrying the scanned scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalanceVerdict {
    Violation(WitnessPair),
    NoViolationFound {
        prefix_length: usize,
        max_window: usize,
    },
}

impl BalanceVerdict {
    pub fn is_violation(&self) -> bool {
        matches!(self, BalanceVerdict::Violation(_))
    }
}

fn scan_row(w: &FiniteWord, n: usize) -> Vec<SpreadCell> {
    let d = w.alphabet().size();
    let last_start = w.len() - n;
    (1..=d)
        .map(|j| {
            let row = w.prefix_row(j);
            let mut max = 0u32;
            let mut min = u32::MAX;
            let mut max_start = 0usize;
            let mut min_start = 0usize;
            for start in 0..=last_start {
                let count = row[start + n] - row[start];
                if count > max {
                    max = count;
                    max_start = start;
                }
                if count < min {
                    min = count;
                    min_start = start;
                }
            }
            SpreadCell {
                spread: max - min,
                max_start,
                min_start,
            }
        })
        .collect()
}

/// Exact spreads over all windows of length `1..=max_window` inside `w`,
/// computed from the prefix-sum tables. Single-threaded.
pub fn balance_profile(w: &FiniteWord, max_window: usize) -> Result<BalanceProfile> {
    balance_profile_threaded(w, max_window, 1)
}

/// Same as [`balance_profile`], partitioning window lengths across up to
/// `threads` workers. The result does not depend on the thread count.
pub fn balance_profile_threaded(
    w: &FiniteWord,
    max_window: usize,
    threads: usize,
) -> Result<BalanceProfile> {
    if max_window < 1 || max_window > w.len() {
        return Err(Error::WindowLengthOutOfRange {
            n: max_window,
            max: w.len(),
        });
    }
    let threads = threads.max(1).min(max_window);
    let rows = if threads == 1 {
        (1..=max_window).map(|n| scan_row(w, n)).collect()
    } else {
        // partition window lengths into disjoint contiguous chunks; every
        // cell is written exactly once
        let mut rows: Vec<Vec<SpreadCell>> = vec![Vec::new(); max_window];
        let chunk = max_window.div_ceil(threads);
        std::thread::scope(|scope| {
            for (t, slot) in rows.chunks_mut(chunk).enumerate() {
                scope.spawn(move || {
                    for (k, row) in slot.iter_mut().enumerate() {
                        *row = scan_row(w, t * chunk + k + 1);
                    }
                });
            }
        });
        rows
    };
    Ok(BalanceProfile {
        prefix_length: w.len(),
        max_window,
        d: w.alphabet().size(),
        rows,
    })
}

/// Scans for a spread exceeding `c` among window lengths `1..=max_window`.
/// The reported witness is the first violating cell in (window length,
/// letter) order, so verdicts are deterministic.
pub fn check_c_balance(w: &FiniteWord, c: u32, max_window: usize) -> Result<BalanceVerdict> {
    check_c_balance_threaded(w, c, max_window, 1)
}

pub fn check_c_balance_threaded(
    w: &FiniteWord,
    c: u32,
    max_window: usize,
    threads: usize,
) -> Result<BalanceVerdict> {
    let profile = balance_profile_threaded(w, max_window, threads)?;
    Ok(verdict_from_profile(&profile, c))
}

pub fn verdict_from_profile(profile: &BalanceProfile, c: u32) -> BalanceVerdict {
    for n in 1..=profile.max_window() {
        for j in 1..=profile.alphabet_size() {
            let cell = profile.cell(n, j);
            if cell.spread > c {
                return BalanceVerdict::Violation(WitnessPair {
                    u_start: cell.max_start,
                    v_start: cell.min_start,
                    len: n,
                    letter: j,
                    diff: cell.spread as i64,
                });
            }
        }
    }
    BalanceVerdict::NoViolationFound {
        prefix_length: profile.prefix_length(),
        max_window: profile.max_window(),
    }
}

/// Equal-length extraction from an imbalance between words of possibly
/// different lengths: requires `|u|_j - |v|_j > C + max(0, |u| - |v|)` and
/// returns factors of `u` and `v` of length `min(|u|, |v|)` whose counts
/// for `j` still differ by more than `C`.
pub fn extract_equal_length_v1(
    u: &FiniteWord,
    v: &FiniteWord,
    j: Letter,
    c: u32,
) -> Result<(FiniteWord, FiniteWord)> {
    u.alphabet().check_letter(j)?;
    let cu = u.count(j)? as i64;
    let cv = v.count(j)? as i64;
    let excess = (u.len() as i64 - v.len() as i64).max(0);
    if cu - cv <= c as i64 + excess {
        return Err(Error::Precondition(format!(
            "need |u|_{j} - |v|_{j} > C + max(0, |u|-|v|): {} - {} <= {} + {}",
            cu, cv, c, excess
        )));
    }
    let m = u.len().min(v.len());
    // Either word shrunk to length m keeps enough of the imbalance; take
    // prefixes for determinism.
    let u_hat = u.factor(0, m)?;
    let v_hat = v.factor(0, m)?;
    debug_assert!(u_hat.count(j)? as i64 - v_hat.count(j)? as i64 > c as i64);
    Ok((u_hat, v_hat))
}

/// Equal-length extraction inside a `sigma_i` image: `u` has no two
/// consecutive letters `j`, so a prefix of `u` of length `|v|` loses at most
/// `ceil((|u|-|v|)/2)` occurrences of `j`. Requires `j != i`, `|u| >= |v|`,
/// and `|u|_j - |v|_j > C + ceil((|u|-|v|)/2)`.
pub fn extract_equal_length_v2(
    u: &FiniteWord,
    v: &FiniteWord,
    j: Letter,
    c: u32,
    i: Letter,
) -> Result<(FiniteWord, FiniteWord)> {
    u.alphabet().check_letter(j)?;
    u.alphabet().check_letter(i)?;
    if j == i {
        return Err(Error::Precondition(format!("need j != i, got j = i = {j}")));
    }
    if u.letters().windows(2).any(|p| p[0] == j && p[1] == j) {
        return Err(Error::Precondition(format!(
            "u contains two consecutive letters {j}, so it is not a factor of a sigma_{i} image"
        )));
    }
    if u.len() < v.len() {
        return Err(Error::Precondition(format!(
            "need |u| >= |v|: {} < {}",
            u.len(),
            v.len()
        )));
    }
    let cu = u.count(j)? as i64;
    let cv = v.count(j)? as i64;
    let half = ((u.len() - v.len()) as i64 + 1) / 2;
    if cu - cv <= c as i64 + half {
        return Err(Error::Precondition(format!(
            "need |u|_{j} - |v|_{j} > C + ceil((|u|-|v|)/2): {} - {} <= {} + {}",
            cu, cv, c, half
        )));
    }
    let u_hat = u.factor(0, v.len())?;
    debug_assert!(u_hat.count(j)? as i64 - cv > c as i64);
    Ok((u_hat, v.clone()))
}
