use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not orthogonal: {0}")]
    NotOrthogonal(String),
    #[error("m1 + m2 must be even, got ({0}, {1})")]
    Parity(i64, i64),
    #[error("the pair (0, 0) does not define a scale")]
    ZeroPair,
    #[error("unknown {what}: {name}")]
    Unknown { what: &'static str, name: String },
    #[error("cannot parse signed permutation {0:?}: {1}")]
    Permutation(String, String),
    #[error("non-manifold surface: {0}")]
    NonManifold(String),
    #[error("face shared by {0} tiles; tiles overlap")]
    Overlap(usize),
    #[error("construction check failed: {0}")]
    Construction(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
