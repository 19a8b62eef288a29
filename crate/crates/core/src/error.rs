use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report. Each variant maps to a stable,
/// machine-readable code via [`Error::code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported curve configuration `{0}`")]
    UnsupportedCurve(String),
    #[error("input must not be empty")]
    EmptyInput,
    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),
    #[error("element is not in the prime-order subgroup")]
    WrongSubgroup,
    #[error("polynomial of degree {degree} exceeds the reference string (max degree {max})")]
    DegreeExceedsSrs { degree: usize, max: usize },
    #[error("invalid participation set: {0}")]
    InvalidParticipationSet(String),
    #[error("client {index} is not a member of the participation set")]
    NotAMember { index: usize },
    #[error("{members} participants cannot meet threshold {threshold}")]
    QuorumTooSmall { members: usize, threshold: usize },
    #[error("threshold {t} outside 1..={n}")]
    ThresholdOutOfRange { t: usize, n: usize },
    #[error("client index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("plaintext {0} outside the supported range")]
    PlaintextOutOfRange(i64),
    #[error("expected a vector of length {expected}, got {got}")]
    VectorLength { expected: usize, got: usize },
    #[error("ciphertexts carry different labels")]
    MismatchedLabel,
    #[error("inputs carry different thresholds")]
    MismatchedThreshold,
    #[error("inconsistent decryption inputs: {0}")]
    MismatchedInputs(String),
    #[error("the two diagonal components of the decryption product differ")]
    ComponentMismatch,
    #[error("no discrete log within +/-{bound}")]
    DlogNotFound { bound: u64 },
    #[error("discrete-log bound must be at least 1")]
    InvalidDlogBound,
    #[error("fixed-point overflow: {0}")]
    CodecOverflow(String),
    #[error("a ciphertext for client {index}, label `{label}`, threshold {t} was already accepted")]
    DuplicateCiphertext { index: usize, label: String, t: usize },
    #[error("partial key from client {index} failed the degree check")]
    KeyVerificationFailed { index: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("version mismatch: found {found}, expected {expected}")]
    VersionMismatch { found: u8, expected: u8 },
    #[error("corrupt key material: {0}")]
    CorruptKey(String),
    #[error("config error: {0}")]
    ConfigParse(String),
    #[error("usage error: {0}")]
    Usage(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnsupportedCurve(_) => "unsupported-curve",
            Error::EmptyInput => "empty-input",
            Error::MalformedEncoding(_) => "malformed-encoding",
            Error::WrongSubgroup => "wrong-subgroup",
            Error::DegreeExceedsSrs { .. } => "degree-exceeds-srs",
            Error::InvalidParticipationSet(_) => "invalid-participation-set",
            Error::NotAMember { .. } => "not-a-member",
            Error::QuorumTooSmall { .. } => "quorum-too-small",
            Error::ThresholdOutOfRange { .. } => "threshold-out-of-range",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::PlaintextOutOfRange(_) => "plaintext-out-of-range",
            Error::VectorLength { .. } => "vector-length-mismatch",
            Error::MismatchedLabel => "mismatched-label",
            Error::MismatchedThreshold => "mismatched-threshold",
            Error::MismatchedInputs(_) => "mismatched-inputs",
            Error::ComponentMismatch => "component-mismatch",
            Error::DlogNotFound { .. } => "dlog-not-found",
            Error::InvalidDlogBound => "invalid-dlog-bound",
            Error::CodecOverflow(_) => "codec-overflow",
            Error::DuplicateCiphertext { .. } => "duplicate-ciphertext",
            Error::KeyVerificationFailed { .. } => "key-verification-failed",
            Error::Io(_) => "io-error",
            Error::VersionMismatch { .. } => "version-mismatch",
            Error::CorruptKey(_) => "corrupt-key",
            Error::ConfigParse(_) => "config-parse-error",
            Error::Usage(_) => "usage-error",
        }
    }
}
