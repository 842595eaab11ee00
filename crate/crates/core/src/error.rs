use thiserror::Error;

/// Errors raised by the eigenbasis, quadrature and spectral-sum routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KgoError {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("H_{n}({xi}) overflows binary64; use hermite_function for the normalized value")]
    HermiteOverflow { n: usize, xi: f64 },

    #[error("quadrature with {requested} nodes exceeds the supported maximum of {max}")]
    RuleTooLarge { requested: usize, max: usize },

    #[error("quadrature rule has {count} nodes but at least {required} are needed for exactness")]
    InsufficientQuadrature { count: usize, required: usize },

    #[error("wrong quadrature family: expected {expected}, found {found}")]
    WrongRule { expected: String, found: String },

    #[error("integrand is not finite at node {index} (x = {node})")]
    NonFinite { index: usize, node: f64 },

    #[error("probe energy squared lies within the pole guard of level n = {n}")]
    PoleProximity1d { n: usize },

    #[error("probe energy squared lies within the pole guard of level (n_r = {n_r}, l = {ell})")]
    PoleProximityRadial { n_r: usize, ell: usize },

    #[error("grid has {len} points; at least 3 are required")]
    GridTooShort { len: usize },

    #[error("Feshbach-Villars components are undefined at zero energy")]
    ZeroEnergy,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown test function '{0}'")]
    UnknownTestFunction(String),
}

impl KgoError {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        KgoError::Domain {
            func,
            detail: detail.into(),
        }
    }

    /// True for pole-guard and quadrature-sufficiency violations, the
    /// errors a caller treats as numeric contract breaches.
    pub fn is_numeric_contract(&self) -> bool {
        matches!(
            self,
            KgoError::PoleProximity1d { .. }
                | KgoError::PoleProximityRadial { .. }
                | KgoError::InsufficientQuadrature { .. }
                | KgoError::WrongRule { .. }
                | KgoError::RuleTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, KgoError>;
