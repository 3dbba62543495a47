//! Factor complexity and special factors, computed from a suffix automaton
//! so that whole reports over a 100k-letter prefix stay linear-time.
//!
//! A state of the automaton covers the factors of lengths
//! `(link_len, len]` sharing one end-position set; distinct-factor counts
//! per length are interval sums over states, the right extensions of every
//! factor in a state are exactly the state's outgoing transitions, and left
//! specials are right specials of the reversed word.

use crate::directive::DirectiveSequence;
use crate::error::{Error, Result};
use crate::generate::generate_prefix;
use crate::substitution::SubstitutionKind;
use crate::word::{FiniteWord, Letter};

struct Node {
    len: u32,
    link: i32,
    /// End position (0-based) of one occurrence.
    first_end: u32,
    is_clone: bool,
    next: Vec<(Letter, u32)>,
}

struct SuffixAutomaton {
    nodes: Vec<Node>,
    last: usize,
}

impl SuffixAutomaton {
    fn build(letters: &[Letter]) -> Self {
        let mut sam = SuffixAutomaton {
            nodes: vec![Node {
                len: 0,
                link: -1,
                first_end: 0,
                is_clone: false,
                next: Vec::new(),
            }],
            last: 0,
        };
        sam.nodes.reserve(2 * letters.len());
        for (pos, &ch) in letters.iter().enumerate() {
            sam.push(ch, pos as u32);
        }
        sam
    }

    fn transition(&self, s: usize, ch: Letter) -> Option<u32> {
        self.nodes[s]
            .next
            .iter()
            .find(|(c, _)| *c == ch)
            .map(|(_, t)| *t)
    }

    fn set_transition(&mut self, s: usize, ch: Letter, to: u32) {
        match self.nodes[s].next.iter_mut().find(|(c, _)| *c == ch) {
            Some(slot) => slot.1 = to,
            None => self.nodes[s].next.push((ch, to)),
        }
    }

    fn push(&mut self, ch: Letter, pos: u32) {
        let cur = self.nodes.len();
        self.nodes.push(Node {
            len: self.nodes[self.last].len + 1,
            link: 0,
            first_end: pos,
            is_clone: false,
            next: Vec::new(),
        });
        let mut p = self.last as i32;
        while p >= 0 && self.transition(p as usize, ch).is_none() {
            self.set_transition(p as usize, ch, cur as u32);
            p = self.nodes[p as usize].link;
        }
        if p >= 0 {
            let q = self.transition(p as usize, ch).unwrap() as usize;
            if self.nodes[p as usize].len + 1 == self.nodes[q].len {
                self.nodes[cur].link = q as i32;
            } else {
                let clone = self.nodes.len();
                self.nodes.push(Node {
                    len: self.nodes[p as usize].len + 1,
                    link: self.nodes[q].link,
                    first_end: self.nodes[q].first_end,
                    is_clone: true,
                    next: self.nodes[q].next.clone(),
                });
                while p >= 0 && self.transition(p as usize, ch) == Some(q as u32) {
                    self.set_transition(p as usize, ch, clone as u32);
                    p = self.nodes[p as usize].link;
                }
                self.nodes[q].link = clone as i32;
                self.nodes[cur].link = clone as i32;
            }
        }
        self.last = cur;
    }

    /// States ordered by increasing `len`, by counting sort.
    fn order_by_len(&self) -> Vec<u32> {
        let max_len = self.nodes.iter().map(|n| n.len).max().unwrap_or(0) as usize;
        let mut buckets = vec![0usize; max_len + 2];
        for node in &self.nodes {
            buckets[node.len as usize + 1] += 1;
        }
        for k in 1..buckets.len() {
            buckets[k] += buckets[k - 1];
        }
        let mut order = vec![0u32; self.nodes.len()];
        for (s, node) in self.nodes.iter().enumerate() {
            order[buckets[node.len as usize]] = s as u32;
            buckets[node.len as usize] += 1;
        }
        order
    }

    /// Occurrence counts per state: total, and with end position at least
    /// `late_from` (the boundary region).
    fn occurrence_counts(&self, late_from: u32) -> (Vec<u64>, Vec<u64>) {
        let mut total = vec![0u64; self.nodes.len()];
        let mut late = vec![0u64; self.nodes.len()];
        for (s, node) in self.nodes.iter().enumerate() {
            if !node.is_clone && node.len > 0 {
                total[s] = 1;
                if node.first_end >= late_from {
                    late[s] = 1;
                }
            }
        }
        for &s in self.order_by_len().iter().rev() {
            let link = self.nodes[s as usize].link;
            if link > 0 {
                total[link as usize] += total[s as usize];
                late[link as usize] += late[s as usize];
            }
        }
        (total, late)
    }

    /// Number of distinct factors of each length `1..=max_n`.
    fn counts_per_length(&self, max_n: usize) -> Vec<usize> {
        let mut diff = vec![0i64; max_n + 2];
        for (s, node) in self.nodes.iter().enumerate() {
            if s == 0 {
                continue;
            }
            let lo = (self.nodes[node.link as usize].len as usize + 1).min(max_n + 1);
            let hi = (node.len as usize).min(max_n);
            if lo <= hi {
                diff[lo] += 1;
                diff[hi + 1] -= 1;
            }
        }
        let mut counts = Vec::with_capacity(max_n);
        let mut acc = 0i64;
        for n in 1..=max_n {
            acc += diff[n];
            counts.push(acc as usize);
        }
        counts
    }

    /// For each length `1..=max_n`: end positions of one occurrence of every
    /// factor of that length with at least two distinct right extensions.
    fn right_special_ends(&self, max_n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); max_n + 1];
        for (s, node) in self.nodes.iter().enumerate() {
            if s == 0 || node.next.len() < 2 {
                continue;
            }
            let lo = self.nodes[node.link as usize].len as usize + 1;
            let hi = (node.len as usize).min(max_n);
            for slot in out.iter_mut().take(hi + 1).skip(lo) {
                slot.push(node.first_end);
            }
        }
        out
    }

    /// Minimum occurrence count away from the boundary, per length.
    fn min_away_occurrences(&self, max_n: usize, late_from: u32) -> Vec<u64> {
        let (total, late) = self.occurrence_counts(late_from);
        let mut mins = vec![u64::MAX; max_n + 1];
        for (s, node) in self.nodes.iter().enumerate() {
            if s == 0 {
                continue;
            }
            let lo = self.nodes[node.link as usize].len as usize + 1;
            let hi = (node.len as usize).min(max_n);
            let away = total[s].saturating_sub(late[s]);
            for slot in mins.iter_mut().take(hi + 1).skip(lo) {
                *slot = (*slot).min(away);
            }
        }
        mins
    }
}

/// Number of distinct length-`n` factors of `w`.
pub fn factor_count(w: &FiniteWord, n: usize) -> Result<usize> {
    if n < 1 || n > w.len() {
        return Err(Error::WindowLengthOutOfRange { n, max: w.len() });
    }
    let sam = SuffixAutomaton::build(w.letters());
    Ok(sam.counts_per_length(n)[n - 1])
}

/// All left special and right special factors of length `n`, i.e. factors
/// extendable inside `w` by at least two distinct letters on that side.
pub fn special_factors(w: &FiniteWord, n: usize) -> Result<(Vec<FiniteWord>, Vec<FiniteWord>)> {
    if n < 1 || n + 1 > w.len() {
        return Err(Error::WindowLengthOutOfRange {
            n,
            max: w.len().saturating_sub(1),
        });
    }
    let forward = SuffixAutomaton::build(w.letters());
    let reversed: Vec<Letter> = w.letters().iter().rev().copied().collect();
    let backward = SuffixAutomaton::build(&reversed);

    let right = extract_factors(w.letters(), &forward.right_special_ends(n)[n], n, false);
    let left = extract_factors(&reversed, &backward.right_special_ends(n)[n], n, true);
    let to_words = |factors: Vec<Vec<Letter>>| {
        factors
            .into_iter()
            .map(|letters| FiniteWord::new_unchecked(w.alphabet(), letters))
            .collect()
    };
    Ok((to_words(left), to_words(right)))
}

fn extract_factors(
    letters: &[Letter],
    ends: &[u32],
    n: usize,
    reverse: bool,
) -> Vec<Vec<Letter>> {
    let mut out: Vec<Vec<Letter>> = ends
        .iter()
        .map(|&e| {
            let end = e as usize + 1;
            let mut f = letters[end - n..end].to_vec();
            if reverse {
                f.reverse();
            }
            f
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// One row of a factor report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorRow {
    pub n: usize,
    pub count: usize,
    pub left_special: Vec<FiniteWord>,
    pub right_special: Vec<FiniteWord>,
    /// Every factor of this length recurs at least twice away from the end
    /// of the prefix, so the row reflects the infinite word.
    pub conclusive: bool,
}

/// Signature verdict over all scanned lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureStatus {
    Pass,
    /// Some row contradicts the signature even though the scan was
    /// conclusive there (or shows an outright excess).
    Fail { first_bad_n: usize },
    /// Some row falls short of the signature but the prefix cannot decide.
    Inconclusive { first_inconclusive_n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub prefix_length: usize,
    pub max_n: usize,
    pub alphabet_size: u8,
    pub rows: Vec<FactorRow>,
    pub status: SignatureStatus,
}

/// Checks the Arnoux-Rauzy signature on a generated prefix: `(d-1)n + 1`
/// factors of each length `n <= max_n` with exactly one left and one right
/// special factor. Shortfalls on inconclusive rows are reported as
/// inconclusive rather than failures.
pub fn check_ar_signature(
    dir: &DirectiveSequence,
    length: usize,
    max_n: usize,
) -> Result<FactorReport> {
    dir.check_valid()?;
    let w = generate_prefix(dir, SubstitutionKind::Plain, length)?;
    factor_report(&w, max_n)
}

/// The report over an explicit word, for callers that already hold one.
pub fn factor_report(w: &FiniteWord, max_n: usize) -> Result<FactorReport> {
    let d = w.alphabet().size();
    let usable_n = max_n.min(w.len().saturating_sub(1));
    let forward = SuffixAutomaton::build(w.letters());
    let reversed: Vec<Letter> = w.letters().iter().rev().copied().collect();
    let backward = SuffixAutomaton::build(&reversed);

    let counts = forward.counts_per_length(usable_n.max(1));
    let right_ends = forward.right_special_ends(usable_n);
    let left_ends = backward.right_special_ends(usable_n);
    let late_from = w.len().saturating_sub(max_n) as u32;
    let min_away = forward.min_away_occurrences(usable_n, late_from);

    let mut rows = Vec::with_capacity(usable_n);
    let mut first_bad = None;
    let mut first_inconclusive = None;
    for n in 1..=usable_n {
        let count = counts[n - 1];
        let right = extract_factors(w.letters(), &right_ends[n], n, false);
        let left = extract_factors(&reversed, &left_ends[n], n, true);
        let conclusive = min_away[n] >= 2;
        let expected = (d as usize - 1) * n + 1;

        let excess = count > expected || right.len() > 1 || left.len() > 1;
        let shortfall = count < expected || right.is_empty() || left.is_empty();
        if excess || (shortfall && conclusive) {
            first_bad.get_or_insert(n);
        } else if shortfall {
            first_inconclusive.get_or_insert(n);
        }

        let to_words = |factors: Vec<Vec<Letter>>| -> Vec<FiniteWord> {
            factors
                .into_iter()
                .map(|letters| FiniteWord::new_unchecked(w.alphabet(), letters))
                .collect()
        };
        rows.push(FactorRow {
            n,
            count,
            left_special: to_words(left),
            right_special: to_words(right),
            conclusive,
        });
    }
    if usable_n < max_n {
        first_inconclusive.get_or_insert(usable_n + 1);
    }

    let status = match (first_bad, first_inconclusive) {
        (Some(n), _) => SignatureStatus::Fail { first_bad_n: n },
        (None, Some(n)) => SignatureStatus::Inconclusive {
            first_inconclusive_n: n,
        },
        (None, None) => SignatureStatus::Pass,
    };
    Ok(FactorReport {
        prefix_length: w.len(),
        max_n,
        alphabet_size: d,
        rows,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;
    use std::collections::BTreeSet;

    fn word(s: &str) -> FiniteWord {
        FiniteWord::from_digits(Alphabet::ternary(), s).unwrap()
    }

    /// Oracle: factor counting by hash-set enumeration.
    fn naive_factor_set(w: &FiniteWord, n: usize) -> BTreeSet<Vec<u8>> {
        w.letters().windows(n).map(|f| f.to_vec()).collect()
    }

    #[test]
    fn factor_count_examples() {
        assert_eq!(factor_count(&word("1213"), 2).unwrap(), 3);
        assert_eq!(factor_count(&word("111"), 1).unwrap(), 1);
        assert!(factor_count(&word("111"), 4).is_err());
        assert!(factor_count(&word("111"), 0).is_err());
    }

    #[test]
    fn factor_count_matches_naive_enumeration() {
        let words = [
            "121332112321313212331211",
            "111111",
            "123123123123",
            "1",
        ];
        for s in words {
            let w = word(s);
            for n in 1..=w.len() {
                assert_eq!(
                    factor_count(&w, n).unwrap(),
                    naive_factor_set(&w, n).len(),
                    "word {s}, n={n}"
                );
            }
        }
    }

    #[test]
    fn special_factors_example() {
        let (left, right) = special_factors(&word("1213"), 1).unwrap();
        let right: Vec<String> = right.iter().map(|w| w.to_digits()).collect();
        assert_eq!(right, vec!["1"]);
        assert!(left.is_empty());

        let (left, right) = special_factors(&word("111"), 1).unwrap();
        assert!(left.is_empty() && right.is_empty());
    }

    #[test]
    fn special_factors_match_naive_extension_scan() {
        let w = word("12133212312113221331");
        for n in 1..w.len() {
            let (left, right) = special_factors(&w, n).unwrap();
            let mut naive_right = BTreeSet::new();
            let mut naive_left = BTreeSet::new();
            let factors = naive_factor_set(&w, n);
            for f in &factors {
                let rights: BTreeSet<u8> = w
                    .letters()
                    .windows(n + 1)
                    .filter(|win| &win[..n] == f.as_slice())
                    .map(|win| win[n])
                    .collect();
                if rights.len() >= 2 {
                    naive_right.insert(f.clone());
                }
                let lefts: BTreeSet<u8> = w
                    .letters()
                    .windows(n + 1)
                    .filter(|win| &win[1..] == f.as_slice())
                    .map(|win| win[0])
                    .collect();
                if lefts.len() >= 2 {
                    naive_left.insert(f.clone());
                }
            }
            let got_right: BTreeSet<Vec<u8>> =
                right.iter().map(|w| w.letters().to_vec()).collect();
            let got_left: BTreeSet<Vec<u8>> =
                left.iter().map(|w| w.letters().to_vec()).collect();
            assert_eq!(got_right, naive_right, "right specials at n={n}");
            assert_eq!(got_left, naive_left, "left specials at n={n}");
        }
    }

    #[test]
    fn signature_on_generated_prefix() {
        let dir = DirectiveSequence::parse("(123)", Alphabet::ternary()).unwrap();
        let report = check_ar_signature(&dir, 20000, 30).unwrap();
        assert_eq!(report.status, SignatureStatus::Pass);
        for row in &report.rows {
            assert_eq!(row.count, 2 * row.n + 1);
            assert_eq!(row.left_special.len(), 1);
            assert_eq!(row.right_special.len(), 1);
            assert!(row.conclusive);
        }
    }

    #[test]
    fn signature_requires_valid_directive() {
        let dir = DirectiveSequence::parse("(12)", Alphabet::ternary()).unwrap();
        assert!(matches!(
            check_ar_signature(&dir, 1000, 10),
            Err(Error::InvalidDirective { d: 3 })
        ));
    }

    #[test]
    fn short_prefix_reports_inconclusive_not_failure() {
        let dir = DirectiveSequence::parse("(123)", Alphabet::ternary()).unwrap();
        let report = check_ar_signature(&dir, 12, 10).unwrap();
        assert!(
            matches!(report.status, SignatureStatus::Inconclusive { .. }),
            "{:?}",
            report.status
        );
    }

    #[test]
    fn periodic_word_fails_conclusively() {
        // 123123... has p(n) = 3 for every n, far below 2n + 1
        let w = word(&"123".repeat(300));
        let report = factor_report(&w, 10).unwrap();
        assert!(matches!(report.status, SignatureStatus::Fail { .. }));
    }
}
