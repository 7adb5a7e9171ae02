use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree {0} is outside the supported range 2..=16")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} is not an irreducible polynomial of degree {n}")]
    ReducibleModulus { n: u32, modulus: u32 },
    #[error("element {0:#x} is not a primitive element")]
    NotPrimitive(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{m} does not divide the field degree {n}")]
    NotASubfield { n: u32, m: u32 },
    #[error("operation requires an even field degree, got {0}")]
    OddDegree(u32),
    #[error("table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("value {value:#x} at index {index} does not fit in {bits} bits")]
    ValueRange { index: usize, value: u32, bits: u32 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("exponent {0} is out of range")]
    Exponent(u64),
    #[error("linear map is not surjective")]
    NotSurjective,
    #[error("linear map is not invertible")]
    NotInvertible,
    #[error("function is not APN")]
    NotApn,
    #[error("function is not quadratic")]
    NotQuadratic,
    #[error("element {0:#x} does not have absolute trace 1")]
    TraceNotOne(u32),
    #[error("every four-point sum of the Boolean function vanishes; supply another function")]
    DegenerateBoolean,
    #[error("invalid coset decomposition: {0}")]
    BadDecomposition(String),
    #[error("field is not the required preset: {0}")]
    WrongPreset(String),
    #[error("size budget exceeded: {0}")]
    Budget(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
