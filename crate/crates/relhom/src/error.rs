use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{axiom} fails on basis triple ({i}, {j}, {k})")]
    Axiom {
        axiom: &'static str,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("algebra is not local: radical has codimension {codim}")]
    NotLocal { codim: usize },
    #[error("module axiom fails: {0}")]
    ModuleAxiom(String),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("not a module homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{0} is not semidualizing")]
    NotSemidualizing(String),
    #[error("unsupported query: {0}")]
    Unsupported(String),
    #[error("approximation is not surjective at stage {stage}")]
    ApproximationNotSurjective { stage: usize },
    #[error("lifting equation has no solution: {0}")]
    LiftFailed(String),
    #[error("class membership fails: {0}")]
    Membership(String),
    #[error("undetermined within bound {bound}: {what}")]
    Undetermined { what: String, bound: usize },
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("empty probe list")]
    EmptyProbes,
}

pub type Result<T> = std::result::Result<T, Error>;
