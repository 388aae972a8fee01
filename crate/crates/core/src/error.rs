use std::fmt;

/// Errors surfaced by constructors and analysis operations.
///
/// Each variant carries a stable machine-readable code (see [`code`]) so
/// frontends can report failures without string matching on messages.
///
/// [`code`]: HuffmanError::code
#[derive(Debug, Clone, PartialEq)]
pub enum HuffmanError {
    /// Sequence length violates a family's length constraint.
    InvalidLength {
        family: &'static str,
        length: usize,
        requirement: &'static str,
    },
    /// Scale value at which the family degenerates (e.g. s = 0 for the integer family).
    DegenerateScale {
        family: &'static str,
        detail: &'static str,
    },
    /// Scale sits on a pole of the tangent spectrum (|s| = 2).
    PoleSingularity { scale: f64 },
    /// Spectrum inversion did not produce a usable sequence.
    SynthesisFailure { detail: String },
    /// No rotation of the synthesized sequence is delta-correlated.
    RotationFailure { detail: String },
    /// Identity case with inconsistent indices or a degenerate scale.
    InvalidIdentityCase { detail: String },
    /// Correlation shift outside the valid |d| < N window.
    OutOfRangeShift { shift: i64, length: usize },
    /// Operation applied to a correlation profile of the wrong mode.
    WrongMode {
        expected: &'static str,
        got: &'static str,
    },
    /// Input sequence is identically zero.
    DegenerateInput,
    /// z-transform polynomial with unusable coefficients or unreliable roots.
    DegeneratePolynomial { detail: String },
    /// Magnitude series is undefined because the element sum vanishes.
    SeriesUndefined,
    /// Flatness bound is undefined because the element sum vanishes.
    BoundUndefined,
}

impl HuffmanError {
    /// Stable kebab-case error code for machine consumption.
    pub fn code(&self) -> &'static str {
        match self {
            HuffmanError::InvalidLength { .. } => "invalid-length",
            HuffmanError::DegenerateScale { .. } => "degenerate-scale",
            HuffmanError::PoleSingularity { .. } => "pole-singularity",
            HuffmanError::SynthesisFailure { .. } => "synthesis-failure",
            HuffmanError::RotationFailure { .. } => "rotation-failure",
            HuffmanError::InvalidIdentityCase { .. } => "invalid-identity-case",
            HuffmanError::OutOfRangeShift { .. } => "out-of-range-shift",
            HuffmanError::WrongMode { .. } => "wrong-mode",
            HuffmanError::DegenerateInput => "degenerate-input",
            HuffmanError::DegeneratePolynomial { .. } => "degenerate-polynomial",
            HuffmanError::SeriesUndefined => "series-undefined",
            HuffmanError::BoundUndefined => "bound-undefined",
        }
    }
}

impl fmt::Display for HuffmanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HuffmanError::InvalidLength {
                family,
                length,
                requirement,
            } => {
                write!(
                    f,
                    "invalid length {length} for family {family}: requires {requirement}"
                )
            }
            HuffmanError::DegenerateScale { family, detail } => {
                write!(f, "degenerate scale for family {family}: {detail}")
            }
            HuffmanError::PoleSingularity { scale } => {
                write!(f, "scale {scale} sits on a tangent-spectrum pole (|s| = 2)")
            }
            HuffmanError::SynthesisFailure { detail } => {
                write!(f, "spectrum synthesis failed: {detail}")
            }
            HuffmanError::RotationFailure { detail } => {
                write!(f, "rotation search failed: {detail}")
            }
            HuffmanError::InvalidIdentityCase { detail } => {
                write!(f, "invalid identity case: {detail}")
            }
            HuffmanError::OutOfRangeShift { shift, length } => {
                write!(f, "shift {shift} out of range for length {length}")
            }
            HuffmanError::WrongMode { expected, got } => {
                write!(f, "expected {expected} correlation profile, got {got}")
            }
            HuffmanError::DegenerateInput => write!(f, "input sequence is identically zero"),
            HuffmanError::DegeneratePolynomial { detail } => {
                write!(f, "degenerate z-transform polynomial: {detail}")
            }
            HuffmanError::SeriesUndefined => {
                write!(f, "magnitude series undefined: element sum is zero")
            }
            HuffmanError::BoundUndefined => {
                write!(f, "flatness bound undefined: element sum is zero")
            }
        }
    }
}

impl std::error::Error for HuffmanError {}
