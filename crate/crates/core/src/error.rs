use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("unknown Cartan type label `{0}`")]
    UnknownType(String),

    #[error("Cartan matrix `{0}` is not of finite type")]
    NotFiniteType(String),

    #[error("vector {0:?} is not a root of this root system")]
    NotARoot(Vec<i32>),

    #[error("simple root index {index} out of range for rank {rank}")]
    SimpleIndexOutOfRange { index: usize, rank: usize },

    #[error("root system has {0} positive roots; at most 128 are supported")]
    TooManyRoots(usize),

    #[error("group order exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("malformed word `{0}`")]
    MalformedWord(String),

    #[error("invalid triple: {0}")]
    InvalidTriple(String),

    #[error("length identity violated: {0}")]
    LengthIdentity(String),

    #[error("arithmetic overflow while accumulating {0}")]
    Overflow(&'static str),

    #[error("malformed matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
}
