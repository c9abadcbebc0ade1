use thiserror::Error;

/// Errors across the analysis pipeline. Input-shaped problems and cap
/// violations are kept distinct so the CLI can map them to exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("generator is not a bijection on 0..{degree}: {perm:?}")]
    NonBijectiveGenerator { degree: usize, perm: Vec<usize> },

    #[error("closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),

    #[error("table entry {element} out of range for order {order} (row {row})")]
    EntryOutOfRange {
        element: usize,
        order: usize,
        row: usize,
    },

    #[error("identity axiom fails at element {witness}")]
    IdentityAxiom { witness: usize },

    #[error("associativity fails at triple ({i}, {j}, {k})")]
    AssociativityAxiom { i: usize, j: usize, k: usize },

    #[error("element {element} has no two-sided inverse")]
    MissingInverse { element: usize },

    #[error("the listed generators do not generate the group")]
    NotGenerated,

    #[error("member set is not a subgroup: product of {x} and {y} escapes")]
    NotASubgroup { x: usize, y: usize },

    #[error("subgroup is not normal: conjugating {element} by {conjugator} escapes")]
    NotNormal { conjugator: usize, element: usize },

    #[error("map is not a homomorphism at pair ({i}, {j})")]
    NotAHomomorphism { i: usize, j: usize },

    #[error("group is not elementary abelian of exponent {p}")]
    NotElementaryAbelian { p: u32 },

    #[error("group order {order} is not a power of {p}")]
    NotPGroup { order: usize, p: u32 },

    #[error("{what} {order} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("the gamma2 graph is only defined for p = 2 (got p = {p})")]
    GammaTwoRequiresPTwo { p: u32 },

    #[error("{0} is not a prime below 256")]
    BadPrime(u32),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
}

impl Error {
    /// True for errors that are resource caps rather than malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::ClosureCapExceeded { .. } | Error::CapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
