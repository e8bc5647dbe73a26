use thiserror::Error;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different base algebras")]
    MixedBase,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative exponent on non-invertible symbol `{0}`")]
    NegativeExponent(String),

    #[error("weights live in different ambient groups")]
    AmbientMismatch,
    #[error("multiplicative weight has a zero component")]
    ZeroComponent,

    #[error("level `{level}` violates relation {relation}: {lhs} != {rhs}")]
    RelationViolation {
        level: String,
        relation: String,
        lhs: String,
        rhs: String,
    },
    #[error("level `{0}` needs an inverse automorphism")]
    MissingInverse(String),
    #[error("invertible level `{0}` carries a nonzero derivation")]
    LaurentWithDelta(String),
    #[error("image of `{generator}` under level `{level}` reaches generator `{offending}` at or above the level")]
    ImageNotBelow {
        level: String,
        generator: String,
        offending: String,
    },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("elements belong to different towers")]
    OwnerMismatch,
    #[error("element {0} is not a monomial unit")]
    NotAUnit(String),
    #[error("tensor products need polynomial bases, got {0}")]
    UnsupportedBase(String),
    #[error("opposite needs a commutative base")]
    NoncommutativeBase,

    #[error("map is missing an image for `{0}`")]
    MissingImage(String),
    #[error("inverse images do not invert the map on `{0}`")]
    InverseMismatch(String),
    #[error("map kinds are incompatible: {0}")]
    KindMismatch(String),
    #[error("image of {0} is not a unit")]
    ImageNotUnit(String),

    #[error("generator `{generator}` is not an eigenvector of map {map}")]
    NotDiagonal { generator: String, map: usize },
    #[error("maps {first} and {second} do not commute on `{generator}`")]
    NotCommuting {
        first: usize,
        second: usize,
        generator: String,
    },
    #[error("element {0} is not homogeneous")]
    NotHomogeneous(String),
    #[error("weight {0} has no admissible monomial representative")]
    NoRepresentative(String),
    #[error("section representative {0} is not a unit")]
    SectionNotUnit(String),
    #[error("constants are not commutative: {0}")]
    NoncommutativeConstants(String),
    #[error("maps must be all derivations or all automorphisms")]
    MixedKinds,

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// True for errors that mean an object failed validation, as opposed to
    /// malformed input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::RelationViolation { .. }
                | Error::MissingInverse(_)
                | Error::LaurentWithDelta(_)
                | Error::ImageNotBelow { .. }
                | Error::DuplicateName(_)
                | Error::MissingImage(_)
                | Error::InverseMismatch(_)
                | Error::ImageNotUnit(_)
                | Error::NotDiagonal { .. }
                | Error::NotCommuting { .. }
        )
    }
}
