use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("depth mismatch: {0} vs {1}")]
    DepthMismatch(u32, u32),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("length out of bounds: {0}")]
    Length(String),
    #[error("not a ghost vector: component {index} fails the congruence")]
    NotGhostVector { index: usize },
    #[error("not divisible at coordinate {coordinate}")]
    NotDivisible { coordinate: usize },
    #[error("not a root of unity: ghost component {coordinate} is not a root of unity")]
    NotRootOfUnity { coordinate: usize },
    #[error("no Teichmüller form: coordinate {coordinate} does not vanish")]
    NoTeichmullerForm { coordinate: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// Machine-readable code used in CLI error objects.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DepthMismatch(..) => "depth_mismatch",
            Error::RingMismatch(_) => "ring_mismatch",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Precision(_) => "precision_exhausted",
            Error::Length(_) => "length_bounds",
            Error::NotGhostVector { .. } => "not_ghost_vector",
            Error::NotDivisible { .. } => "not_divisible",
            Error::NotRootOfUnity { .. } => "not_root_of_unity",
            Error::NoTeichmullerForm { .. } => "no_teichmuller_form",
            Error::Unsupported(_) => "unsupported",
        }
    }
}
