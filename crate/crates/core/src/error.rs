use crate::word::Letter;

/// Errors produced by word construction, generation, and the analyzers.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("letter {letter} outside alphabet 1..={d}")]
    LetterOutOfAlphabet { letter: Letter, d: u8 },

    #[error("alphabet size {d} not supported: need 2 <= d")]
    AlphabetTooSmall { d: u8 },

    #[error("digit serialization requires d <= 9, got d = {d}")]
    AlphabetNotDigital { d: u8 },

    #[error("window [{start}, {start}+{len}) out of range for word of length {word_len}")]
    WindowOutOfRange {
        start: usize,
        len: usize,
        word_len: usize,
    },

    #[error("window length {n} out of range 1..={max} for word of length {max}")]
    WindowLengthOutOfRange { n: usize, max: usize },

    #[error("directive syntax error at byte {position}: {message}")]
    DirectiveSyntax { position: usize, message: String },

    #[error("invalid directive: period must contain every letter 1..={d}")]
    InvalidDirective { d: u8 },

    #[error("directive horizon exhausted: {0}")]
    Horizon(String),

    #[error(
        "not a factor of a sigma_{letter} image: letter at position {position} is not followed by {letter}"
    )]
    NotAFactor { letter: Letter, position: usize },

    #[error("desubstitution chain failed at depth {depth}: {source}")]
    ChainStep {
        depth: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("operation requires a 3-letter alphabet, got d = {d}")]
    NotThreeLetters { d: u8 },
}

pub type Result<T> = std::result::Result<T, Error>;
