use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed datum specification: {0}")]
    MalformedSpec(String),
    #[error("coweight lattice is not compatible with a simply connected derived group: {0}")]
    NotSimplyConnected(String),
    #[error("matrix is not a finite-type Cartan matrix: {0}")]
    NonCartan(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Weyl group too large for enumeration ({0})")]
    WeylGroupTooLarge(String),
    #[error("series is not invertible: valuation is not certified")]
    NotInvertible,
    #[error("element is not regular semisimple: {0}")]
    NotRegularSemisimple(String),
    #[error("valuation not certified at truncation order {0}; retry with a larger truncation")]
    InconclusiveTruncation(i64),
    #[error("coweight is not integral: {0}")]
    NotIntegral(String),
    #[error("coweight is not dominant: {0}")]
    NotDominant(String),
    #[error("coweights lie in different classes of the abelianization lattice")]
    DetClassMismatch,
    #[error("no integral coweight dominates {0}: its central component is fractional")]
    NoIntegralDominator(String),
    #[error("rank {0} is beyond the supported bound for this operation")]
    RankTooLarge(usize),
    #[error("enhanced coweights have different abelianization components")]
    AbelianizationMismatch,
    #[error("nonemptiness criteria disagree: {0}")]
    CriteriaDisagree(String),
    #[error("the fiber is empty: {0}")]
    EmptyFiber(String),
    #[error("twisted discriminant valuation is {0}, not zero")]
    NotZeroTwisted(String),
    #[error("invalid torus element: {0}")]
    InvalidTorusElement(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedSpec(_) => "MalformedSpec",
            Error::NotSimplyConnected(_) => "NotSimplyConnected",
            Error::NonCartan(_) => "NonCartan",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::WeylGroupTooLarge(_) => "WeylGroupTooLarge",
            Error::NotInvertible => "NotInvertible",
            Error::NotRegularSemisimple(_) => "NotRegularSemisimple",
            Error::InconclusiveTruncation(_) => "InconclusiveTruncation",
            Error::NotIntegral(_) => "NotIntegral",
            Error::NotDominant(_) => "NotDominant",
            Error::DetClassMismatch => "DetClassMismatch",
            Error::NoIntegralDominator(_) => "NoIntegralDominator",
            Error::RankTooLarge(_) => "RankTooLarge",
            Error::AbelianizationMismatch => "AbelianizationMismatch",
            Error::CriteriaDisagree(_) => "CriteriaDisagree",
            Error::EmptyFiber(_) => "EmptyFiber",
            Error::NotZeroTwisted(_) => "NotZeroTwisted",
            Error::InvalidTorusElement(_) => "InvalidTorusElement",
            Error::Inconsistent(_) => "Inconsistent",
        }
    }

    /// Input that could not be understood at all, as opposed to a
    /// well-formed question whose mathematical answer is an error.
    pub fn is_malformed_input(&self) -> bool {
        matches!(
            self,
            Error::MalformedSpec(_)
                | Error::DimensionMismatch { .. }
                | Error::InvalidTorusElement(_)
        )
    }
}
