use thiserror::Error;

/// A single axiom violation found while validating a groupoid table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingUnit { object: String },
    NonAssociative { g: String, g2: String, g3: String },
    BadInverse { g: String },
    DomCodMismatch { g: String, detail: String },
    MissingComposite { g2: String, g: String },
    BadTable { detail: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::MissingUnit { object } => write!(f, "MissingUnit({object})"),
            Violation::NonAssociative { g, g2, g3 } => {
                write!(f, "NonAssociative({g}, {g2}, {g3})")
            }
            Violation::BadInverse { g } => write!(f, "BadInverse({g})"),
            Violation::DomCodMismatch { g, detail } => write!(f, "DomCodMismatch({g}: {detail})"),
            Violation::MissingComposite { g2, g } => write!(f, "MissingComposite({g2}, {g})"),
            Violation::BadTable { detail } => write!(f, "BadTable({detail})"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid groupoid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Validation(Vec<Violation>),
    #[error("no such object: {0}")]
    NoSuchObject(String),
    #[error("no such morphism: {0}")]
    NoSuchMorphism(String),
    #[error("no such element: {0}")]
    NoSuchElement(String),
    #[error("not a group action: {0}")]
    BadAction(String),
    #[error("functor source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("groupoid mismatch: {0}")]
    GroupoidMismatch(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("search budget of {budget} nodes exceeded")]
    SearchBudgetExceeded { budget: u64 },
    #[error("bibundle is not invertible: {0}")]
    NotInvertible(String),
    #[error("subset is not invariant: {0}")]
    NotInvariant(String),
    #[error("pieces do not cover the object set: {0}")]
    NotACover(String),
    #[error("glue cocycle condition fails at ({i},{j},{k}) on element {e}")]
    CocycleViolation { i: usize, j: usize, k: usize, e: String },
    #[error("bibundle is not transitive: {0}")]
    NotTransitive(String),
    #[error("bibundle is not principal: {0}")]
    NotPrincipal(String),
    #[error("loop cannot be lifted: {0}")]
    NotLiftable(String),
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("c_{{{i}{i}}}({x}) is not a unit morphism")]
    NotUnit { i: usize, x: String },
    #[error("cocycle condition fails at ({i},{j},{k}) over {x}")]
    CocycleFail { i: usize, j: usize, k: usize, x: String },
    #[error("cocycle domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("cocycles live on different covers: {0}")]
    CoverMismatch(String),
    #[error("action is not free and regular: {0}")]
    NotFreeRegular(String),
    #[error("complex is not connected")]
    NotConnected,
    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),
    #[error("input sequence is not exact: {0}")]
    NotExactInput(String),
    #[error("subcomplexes do not cover the complex: {0}")]
    NotCovering(String),
    #[error("problem size exceeds the hard cap: {0}")]
    CapExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
