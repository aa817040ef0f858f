use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A ring-spec string (or one of its tokens) could not be accepted.
    #[error("invalid ring spec at `{token}`: {reason}")]
    Spec { token: String, reason: String },

    #[error("element has {found} coordinates, ring has {expected} factors")]
    Arity { expected: usize, found: usize },

    #[error("residue {residue} out of range for modulus {modulus}")]
    Residue { residue: u64, modulus: u64 },

    #[error("element {0} is not a member of the subring")]
    NotMember(String),

    #[error("{what} is {size}, above the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("operation not supported: {0}")]
    Unsupported(&'static str),

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, size: u64, cap: u64) -> Self {
        Error::CapExceeded { what, size, cap }
    }

    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
