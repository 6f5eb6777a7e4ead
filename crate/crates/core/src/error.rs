use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cos/sin of kπ/{d} is not representable in the field of conductor {conductor}")]
    NotRepresentable { d: i64, conductor: u32 },
    #[error("field elements belong to different contexts")]
    ContextMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("point is outside polygon {polygon}")]
    OutsidePolygon { polygon: usize },
    #[error("direction not certified periodic: separatrices did not close within {cap} steps")]
    NotPeriodicDirection { cap: usize },
    #[error("cylinder coordinates are undefined at a singular point")]
    UndefinedCoordinates,
    #[error("cannot build a parabolic twist: {0}")]
    CannotBuildParabolic(String),
    #[error("unsupported surface: {0}")]
    UnsupportedSurface(String),
}

pub type Result<T> = std::result::Result<T, Error>;
