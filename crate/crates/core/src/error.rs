use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("generator {index} is not a permutation of degree {degree}")]
    NotAPermutation { index: usize, degree: usize },
    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("neither factor normalizes the other, so the set product is not a subgroup")]
    ProductNotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("generator images do not define a homomorphism")]
    NotAHomomorphism,
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("image escapes the codomain")]
    ImageEscapesCodomain,
    #[error("listed elements do not generate the domain")]
    DoesNotGenerate,
    #[error("conjugate of the domain is not contained in the codomain")]
    ConjugateEscapes,
    #[error("fusion systems live on different carrier groups")]
    DifferentCarrier,
    #[error("morphism is not in the fusion system")]
    MorphismNotInSystem,
    #[error("map is not a group isomorphism")]
    NotAnIsomorphism,
    #[error("fusion system is not saturated")]
    NotSaturated,
    #[error("no Alperin decomposition found (this is a bug)")]
    DecompositionNotFound,
    #[error("join of central candidates does not centralize the system")]
    CenterJoinFailure,
    #[error("given automorphisms do not form a subgroup of Aut_F(Q)")]
    NotASubgroupOfAut,
    #[error("carrier of the subsystem is not strongly closed")]
    CarrierNotStronglyClosed,
    #[error("subgroup is not strongly closed")]
    NotStronglyClosed,
    #[error("subgroup is not normal in the carrier")]
    NotNormalInP,
    #[error("image of the quotient map is not a fusion system")]
    ImageNotAFusionSystem,
    #[error("Sylow subgroup of the group is not isomorphic to the carrier")]
    SylowMismatch,
    #[error("subsystem is not normal")]
    NotNormalSubsystem,
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
