//! Desubstitution: the unique preimage factor `u'` with
//! `i^delta sigma_i(u') = u i^epsilon`.
//!
//! Works with the plain substitutions only; their images are exactly the
//! words in which every letter other than `i` is immediately followed by
//! `i`, which makes `{i, ji}` a prefix code and the decoding a single
//! left-to-right scan.

use crate::error::{Error, Result};
use crate::word::{FiniteWord, Letter};

/// The preimage factor together with the boundary offsets of the defining
/// identity `i^delta sigma_i(u') = u i^epsilon`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesubResult {
    pub u_prime: FiniteWord,
    /// 1 iff `u` starts with `i`.
    pub delta: u8,
    /// 0 iff `u` ends with `i`.
    pub epsilon: u8,
    /// `epsilon - delta`; satisfies `|u'| = |u|_i + delta_u`.
    pub delta_u: i8,
}

/// Computes the unique `u'` for the factor `u` and the substitution letter
/// `i`. Fails when `u` cannot be a factor of any `sigma_i` image, i.e. when
/// a letter other than `i` is not followed by `i` inside the decodable
/// region.
pub fn desubstitute(u: &FiniteWord, i: Letter) -> Result<DesubResult> {
    let alphabet = u.alphabet();
    alphabet.check_letter(i)?;

    let letters = u.letters();
    let delta: u8 = u8::from(letters.first() == Some(&i));
    let epsilon: u8 = u8::from(letters.last() != Some(&i));

    // Decode u i^epsilon after stripping the leading i^delta: the blocks are
    // "j i" for j != i and a lone "i".
    let mut out = Vec::with_capacity(letters.len());
    let mut pos = delta as usize;
    let end = letters.len();
    while pos < end {
        let c = letters[pos];
        if c == i {
            out.push(i);
            pos += 1;
        } else {
            let followed_by_i = if pos + 1 < end {
                letters[pos + 1] == i
            } else {
                epsilon == 1
            };
            if !followed_by_i {
                return Err(Error::NotAFactor {
                    letter: i,
                    position: pos,
                });
            }
            out.push(c);
            pos += 2;
        }
    }
    if letters.is_empty() {
        // empty u: u i^epsilon = "i" decodes to the single letter i
        out.push(i);
    }

    let delta_u = epsilon as i8 - delta as i8;
    Ok(DesubResult {
        u_prime: FiniteWord::new_unchecked(alphabet, out),
        delta,
        epsilon,
        delta_u,
    })
}

/// Iterated desubstitution `u^(0) = u`, `u^(n+1) = (u^(n))'`, step `n` using
/// `letters[n]`. Returns the whole chain. A failing step is reported with
/// its depth.
pub fn iterate_desubstitution(u: &FiniteWord, letters: &[Letter]) -> Result<Vec<FiniteWord>> {
    let mut chain = Vec::with_capacity(letters.len() + 1);
    chain.push(u.clone());
    for (depth, &i) in letters.iter().enumerate() {
        let step = desubstitute(chain.last().unwrap(), i).map_err(|e| Error::ChainStep {
            depth,
            source: Box::new(e),
        })?;
        chain.push(step.u_prime);
    }
    Ok(chain)
}

/// One named identity relating `u` and `u'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub lhs: i64,
    pub rhs: i64,
}

/// Report over the four preimage identities; failures become entries, not
/// errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreimageReport {
    pub delta: u8,
    pub epsilon: u8,
    pub delta_u: i8,
    pub checks: Vec<IdentityCheck>,
}

impl PreimageReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Checks the length and letter-count identities of the preimage:
/// `|u'| = |u|_i + delta_u`, `|u'|_j = |u|_j` for `j != i`,
/// `|u'|_i = 2|u|_i - |u| + delta_u`, and the shrinking clause.
pub fn verify_preimage_identities(u: &FiniteWord, i: Letter) -> Result<PreimageReport> {
    let res = desubstitute(u, i)?;
    let up = &res.u_prime;
    let count = |w: &FiniteWord, j: Letter| w.count(j).unwrap() as i64;

    let mut checks = Vec::new();
    checks.push(IdentityCheck {
        name: "length",
        holds: up.len() as i64 == count(u, i) + res.delta_u as i64,
        lhs: up.len() as i64,
        rhs: count(u, i) + res.delta_u as i64,
    });
    let others_hold = u
        .alphabet()
        .letters()
        .filter(|&j| j != i)
        .all(|j| count(up, j) == count(u, j));
    checks.push(IdentityCheck {
        name: "other_letter_counts",
        holds: others_hold,
        lhs: others_hold as i64,
        rhs: 1,
    });
    checks.push(IdentityCheck {
        name: "substituted_letter_count",
        holds: count(up, i) == 2 * count(u, i) - u.len() as i64 + res.delta_u as i64,
        lhs: count(up, i),
        rhs: 2 * count(u, i) - u.len() as i64 + res.delta_u as i64,
    });
    let shrinks = if u.len() >= 2 {
        up.len() < u.len()
    } else {
        up.len() <= 1
    };
    checks.push(IdentityCheck {
        name: "length_shrinks",
        holds: shrinks,
        lhs: up.len() as i64,
        rhs: u.len() as i64,
    });

    Ok(PreimageReport {
        delta: res.delta,
        epsilon: res.epsilon,
        delta_u: res.delta_u,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{apply_substitution, SubstitutionKind};
    use crate::word::Alphabet;

    fn word(s: &str) -> FiniteWord {
        FiniteWord::from_digits(Alphabet::ternary(), s).unwrap()
    }

    #[test]
    fn worked_preimage() {
        let res = desubstitute(&word("12131212"), 1).unwrap();
        assert_eq!(res.u_prime.to_digits(), "2322");
        assert_eq!((res.delta, res.epsilon, res.delta_u), (1, 1, 0));
    }

    #[test]
    fn preimage_with_negative_offset() {
        let res = desubstitute(&word("2322"), 2).unwrap();
        assert_eq!(res.u_prime.to_digits(), "32");
        assert_eq!((res.delta, res.epsilon, res.delta_u), (1, 0, -1));
    }

    #[test]
    fn empty_word_preimage_is_the_letter() {
        let res = desubstitute(&word(""), 1).unwrap();
        assert_eq!(res.u_prime.to_digits(), "1");
        assert_eq!((res.delta, res.epsilon, res.delta_u), (0, 1, 1));
    }

    #[test]
    fn single_letter_preimage_is_empty() {
        let res = desubstitute(&word("1"), 1).unwrap();
        assert_eq!(res.u_prime.to_digits(), "");
        assert_eq!((res.delta, res.epsilon, res.delta_u), (1, 0, -1));
    }

    #[test]
    fn not_a_factor_detected() {
        // two consecutive non-i letters
        let err = desubstitute(&word("23"), 1).unwrap_err();
        assert!(matches!(err, Error::NotAFactor { letter: 1, position: 0 }));
        assert!(desubstitute(&word("22"), 1).is_err());
    }

    #[test]
    fn iterated_chain() {
        let chain = iterate_desubstitution(&word("12131212"), &[1, 2, 2]).unwrap();
        let digits: Vec<String> = chain.iter().map(|w| w.to_digits()).collect();
        assert_eq!(digits, vec!["12131212", "2322", "32", "3"]);

        let chain = iterate_desubstitution(&word("3"), &[]).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].to_digits(), "3");

        let chain = iterate_desubstitution(&word("2131"), &[1]).unwrap();
        assert_eq!(chain.last().unwrap().to_digits(), "23");
    }

    #[test]
    fn chain_failure_reports_depth() {
        // first step fine (i=1), second step fails (i=3 on "2322"-like input)
        let err = iterate_desubstitution(&word("12131212"), &[1, 3]).unwrap_err();
        match err {
            Error::ChainStep { depth, .. } => assert_eq!(depth, 1),
            other => panic!("expected ChainStep, got {other:?}"),
        }
    }

    #[test]
    fn identity_report_on_worked_example() {
        let report = verify_preimage_identities(&word("12131212"), 1).unwrap();
        assert!(report.all_hold(), "{report:?}");
        assert_eq!(report.delta_u, 0);
        // |u'| = 4 = |u|_1
        assert_eq!(report.checks[0].lhs, 4);

        let report = verify_preimage_identities(&word("1"), 1).unwrap();
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn round_trip_identity() {
        // i^delta sigma_i(u') = u i^epsilon for decodable u
        for (s, i) in [("12131212", 1u8), ("2322", 2), ("", 1), ("1", 1), ("31", 1)] {
            let u = word(s);
            let res = desubstitute(&u, i).unwrap();
            let img = apply_substitution(SubstitutionKind::Plain, i, &res.u_prime).unwrap();
            let mut lhs: Vec<u8> = Vec::new();
            lhs.extend(std::iter::repeat(i).take(res.delta as usize));
            lhs.extend_from_slice(img.letters());
            let mut rhs: Vec<u8> = u.letters().to_vec();
            rhs.extend(std::iter::repeat(i).take(res.epsilon as usize));
            assert_eq!(lhs, rhs, "u={s} i={i}");
        }
    }
}
