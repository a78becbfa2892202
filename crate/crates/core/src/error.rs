use thiserror::Error;

/// Errors surfaced by every layer of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree {degree} exceeds the supported bound {bound}")]
    UnsupportedDegree { degree: usize, bound: usize },

    #[error("reduction modulo {modulus} is not squarefree; choose another prime")]
    Separability { modulus: String },

    #[error("defining polynomial is ramified or non-maximal at {modulus}; choose another prime")]
    Ramified { modulus: String },

    #[error("element does not belong to the field of the descriptor: {0}")]
    Domain(String),

    #[error("rank-1 valuation ring has no proper nonzero prime below the maximal ideal")]
    NoProperPrime,

    #[error("valuation has no center on the ring: generator {witness} has negative value")]
    NoCenter { witness: String },

    #[error("element is not integral at the chosen place: {0}")]
    NotIntegral(String),

    #[error("witness polynomial has a non-integral coefficient: {0}")]
    InvalidWitness(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no generator of full degree found after {retries} retries")]
    DegenerateLift { retries: usize },

    #[error("chosen residue factor has multiplicity {multiplicity}; element is not henselian")]
    NotHenselian { multiplicity: usize },

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("stage `{stage}` failed: {source}")]
    Stage {
        stage: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at_stage(self, stage: &str) -> Error {
        Error::Stage {
            stage: stage.to_string(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
