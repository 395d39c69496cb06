//! Interval modules, the shift action, and the hom criteria between
//! intervals.
//!
//! An interval module `[birth, death)` is one-dimensional on its support and
//! zero elsewhere. Shifting by `e >= 0` reindexes `x -> x + e`, which moves
//! the support left by `e`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A finite half-open interval module `[birth, death)` with `birth < death`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalModule {
    birth: Rational,
    death: Rational,
}

impl IntervalModule {
    pub fn new(birth: Rational, death: Rational) -> Result<Self> {
        if birth >= death {
            return Err(Error::DegenerateInterval {
                birth: Box::new(birth),
                death: Box::new(death),
            });
        }
        Ok(IntervalModule { birth, death })
    }

    pub fn birth(&self) -> &Rational {
        &self.birth
    }

    pub fn death(&self) -> &Rational {
        &self.death
    }

    /// Whether `x` lies in the support.
    pub fn contains(&self, x: &Rational) -> bool {
        &self.birth <= x && x < &self.death
    }

    pub fn shift(&self, e: &Rational) -> Result<IntervalModule> {
        shift(self, e)
    }

    pub fn width(&self) -> Rational {
        width(self)
    }

    /// Shift without the sign check; used where `e` is known non-negative
    /// or where a formal negative shift is meaningful to the caller.
    pub(crate) fn translate_left(&self, e: &Rational) -> IntervalModule {
        IntervalModule {
            birth: &self.birth - e,
            death: &self.death - e,
        }
    }
}

impl fmt::Display for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.birth, self.death)
    }
}

impl fmt::Debug for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A named direct sum of interval modules. Summand order fixes the matrix
/// indexing used by the variety presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PersistenceModule {
    pub name: String,
    pub summands: Vec<IntervalModule>,
}

impl PersistenceModule {
    pub fn new(name: impl Into<String>, summands: Vec<IntervalModule>) -> Self {
        PersistenceModule {
            name: name.into(),
            summands,
        }
    }

    pub fn single(name: impl Into<String>, interval: IntervalModule) -> Self {
        PersistenceModule::new(name, alloc::vec![interval])
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The unique summand, or an error naming the module.
    pub fn as_single(&self) -> Result<&IntervalModule> {
        match self.summands.as_slice() {
            [only] => Ok(only),
            _ => Err(Error::NotSingleInterval {
                name: self.name.clone(),
                count: self.summands.len(),
            }),
        }
    }

    pub(crate) fn require_nonempty(&self) -> Result<()> {
        if self.summands.is_empty() {
            Err(Error::EmptyModule(self.name.clone()))
        } else {
            Ok(())
        }
    }
}

/// The set of shifts `x >= 0` admitting a nonzero morphism `src -> dst·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HomWindow {
    Empty,
    /// Half-open `[lo, hi)` with `0 <= lo < hi`.
    Window { lo: Rational, hi: Rational },
}

impl HomWindow {
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            HomWindow::Empty => false,
            HomWindow::Window { lo, hi } => lo <= x && x < hi,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, HomWindow::Empty)
    }

    pub fn lo(&self) -> Option<&Rational> {
        match self {
            HomWindow::Empty => None,
            HomWindow::Window { lo, .. } => Some(lo),
        }
    }

    pub fn hi(&self) -> Option<&Rational> {
        match self {
            HomWindow::Empty => None,
            HomWindow::Window { hi, .. } => Some(hi),
        }
    }

    /// Whether the window meets `[from, ∞)`.
    pub fn reaches(&self, from: &Rational) -> bool {
        match self {
            HomWindow::Empty => false,
            HomWindow::Window { hi, .. } => from < hi,
        }
    }
}

impl fmt::Display for HomWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomWindow::Empty => f.write_str("∅"),
            HomWindow::Window { lo, hi } => write!(f, "[{lo}, {hi})"),
        }
    }
}

/// `I·e`: the support moves left by `e`.
pub fn shift(interval: &IntervalModule, e: &Rational) -> Result<IntervalModule> {
    if e.is_negative() {
        return Err(Error::NegativeShift(e.clone()));
    }
    Ok(interval.translate_left(e))
}

/// Nonzero morphisms `[α,β) -> [γ,δ)` exist exactly when `γ <= α < δ <= β`.
pub fn hom_nonzero(src: &IntervalModule, dst: &IntervalModule) -> bool {
    dst.birth <= src.birth && src.birth < dst.death && dst.death <= src.death
}

/// `{x >= 0 | hom_nonzero(src, dst·x)}`.
///
/// Unfolding the criterion for `dst·x = [γ-x, δ-x)` gives the three bounds
/// `x >= γ-α`, `x >= δ-β` and `x < δ-α`; the result is clamped to `x >= 0`.
pub fn hom_window(src: &IntervalModule, dst: &IntervalModule) -> HomWindow {
    let hi = &dst.death - &src.birth;
    let lo = (&dst.birth - &src.birth)
        .max(&dst.death - &src.death)
        .max(Rational::zero());
    if lo < hi {
        HomWindow::Window { lo, hi }
    } else {
        HomWindow::Empty
    }
}

/// Half the length of the support.
pub fn width(interval: &IntervalModule) -> Rational {
    (&interval.death - &interval.birth).half()
}

/// Whether the structure morphism `I -> I·2e` is nonzero, i.e. `e < width(I)`.
pub fn projection_nonzero(interval: &IntervalModule, e: &Rational) -> bool {
    e < &width(interval)
}
