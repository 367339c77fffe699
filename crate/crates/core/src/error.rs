use thiserror::Error;

/// Errors produced by the math kernel.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum SnlError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vector is not a probability simplex (sum = {sum}, tolerance {tol})")]
    NotASimplex { sum: f64, tol: f64 },

    #[error("probability out of range: {name} = {value}")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error(
        "infeasible some-or-none parameters: I_E = {i_e} exceeds bound {i_e_bound} \
         (equivalently p_cG {p_cg} < {p_cg_bound}, or p_s {p_s} < {p_s_bound})"
    )]
    Infeasible {
        i_e: f64,
        i_e_bound: f64,
        p_cg: f64,
        p_cg_bound: f64,
        p_s: f64,
        p_s_bound: f64,
    },

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("invalid target set: {0}")]
    InvalidTarget(String),

    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),

    #[error("CSV parse error at line {line}: {msg}")]
    CsvParse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, SnlError>;
