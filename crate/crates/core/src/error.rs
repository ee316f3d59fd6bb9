use thiserror::Error;

/// Malformed text input (ring elements, braid words, angles, numbers).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at position {position} in {input:?}: {message}")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(input: &str, position: usize, message: &str) -> Self {
        ParseError {
            input: input.to_string(),
            position,
            message: message.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no exact quotient exists")]
    NotDivisible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberTheoryError {
    #[error("{0} is not a quadratic residue modulo {1}")]
    NotAResidue(String, String),
    #[error("{0} is not a unit of Z[tau]")]
    NotAUnit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("|u|^2 + tau |v|^2 = {0}, expected 1")]
    NotUnitary(String),
    #[error("no terminal form w^k T^j matches the residual unitary")]
    NoTerminalForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("sampling region degenerate (N = {0}); epsilon too coarse")]
    DegenerateRegion(String),
    #[error("no easy norm equation instance found within {0} trials")]
    TrialLimitExceeded(u64),
    #[error("target matrix is not unitary (deviation {0})")]
    NotUnitary(String),
    #[error("epsilon must lie in (0, 1), got {0}")]
    BadEpsilon(String),
    #[error("compiled circuit misses the target: distance {distance} > {epsilon}")]
    VerificationFailed { distance: String, epsilon: String },
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("depth {requested} exceeds the configured budget of {budget}")]
    BudgetExceeded { requested: usize, budget: usize },
    #[error("malformed database: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
