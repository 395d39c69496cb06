use alloc::boxed::Box;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate interval [{birth}, {death}): birth must be strictly less than death")]
    DegenerateInterval {
        birth: Box<Rational>,
        death: Box<Rational>,
    },

    #[error("shift amount must be non-negative, got {0}")]
    NegativeShift(Rational),

    #[error("module `{0}` has no interval summands")]
    EmptyModule(alloc::string::String),

    #[error("{family} position ({row}, {col}) is outside the {rows}x{cols} grid")]
    PositionOutOfBounds {
        family: char,
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("expected a single interval summand, module `{name}` has {count}")]
    NotSingleInterval {
        name: alloc::string::String,
        count: usize,
    },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
