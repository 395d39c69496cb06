//! Classification of `V^ε` for a pair of intervals and the progression of
//! classes as ε runs over `[0, ∞)`.
//!
//! For single intervals the presentation involves two scalars `k`, `ℓ`:
//! each is forced to zero unless its hom window contains ε, and the only
//! possible constraint is `kℓ = 1`, active when either structure morphism
//! `Π` at `2ε` is nonzero.

use alloc::vec::Vec;
use core::fmt;

use crate::hom::hom_life;
use crate::interval::{hom_window, width, IntervalModule};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarietyClass {
    Empty,
    /// `k = ℓ = 0`.
    Origin,
    /// `ℓ = 0`, `k` free.
    KAxis,
    /// `k = 0`, `ℓ` free.
    LAxis,
    /// `kℓ = 1`.
    Hyperbola,
    /// No constraints.
    Plane,
}

impl VarietyClass {
    pub fn is_axis(self) -> bool {
        matches!(self, VarietyClass::KAxis | VarietyClass::LAxis)
    }

    /// Equality up to axis orientation.
    pub fn same_shape(self, other: VarietyClass) -> bool {
        self == other || (self.is_axis() && other.is_axis())
    }

    /// Exchanges the roles of `k` and `ℓ`.
    pub fn swapped(self) -> VarietyClass {
        match self {
            VarietyClass::KAxis => VarietyClass::LAxis,
            VarietyClass::LAxis => VarietyClass::KAxis,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VarietyClass::Empty => "empty",
            VarietyClass::Origin => "origin",
            VarietyClass::KAxis => "k-axis",
            VarietyClass::LAxis => "l-axis",
            VarietyClass::Hyperbola => "hyperbola",
            VarietyClass::Plane => "plane",
        }
    }

    pub fn from_name(name: &str) -> Option<VarietyClass> {
        [
            VarietyClass::Empty,
            VarietyClass::Origin,
            VarietyClass::KAxis,
            VarietyClass::LAxis,
            VarietyClass::Hyperbola,
            VarietyClass::Plane,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }
}

impl fmt::Display for VarietyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The class of `V^ε(M, N)` for single intervals. `e` must be non-negative.
pub fn classify(m: &IntervalModule, n: &IntervalModule, e: &Rational) -> VarietyClass {
    let k_alive = hom_window(m, n).contains(e);
    let l_alive = hom_window(n, m).contains(e);
    let two_e = e.double();
    let constrained = hom_window(m, m).contains(&two_e) || hom_window(n, n).contains(&two_e);
    match (constrained, k_alive, l_alive) {
        (true, true, true) => VarietyClass::Hyperbola,
        (true, _, _) => VarietyClass::Empty,
        (false, false, false) => VarietyClass::Origin,
        (false, true, false) => VarietyClass::KAxis,
        (false, false, true) => VarietyClass::LAxis,
        (false, true, true) => VarietyClass::Plane,
    }
}

/// Every point where some hom window or structure morphism switches.
fn candidate_points(m: &IntervalModule, n: &IntervalModule) -> Vec<Rational> {
    let mut pts: Vec<Rational> = [hom_window(m, n), hom_window(n, m)]
        .iter()
        .flat_map(|w| w.lo().into_iter().chain(w.hi()).cloned())
        .chain([width(m), width(n)])
        .filter(|x| !x.is_negative() && !x.is_zero())
        .collect();
    pts.sort();
    pts.dedup();
    pts
}

/// The positive values of ε at which [`classify`] changes, in increasing
/// order.
pub fn breakpoints(m: &IntervalModule, n: &IntervalModule) -> Vec<Rational> {
    let mut out = Vec::new();
    let mut prev = Rational::zero();
    for c in candidate_points(m, n) {
        // classify is constant on (prev, c)
        let before = classify(m, n, &prev.midpoint(&c));
        if classify(m, n, &c) != before {
            out.push(c.clone());
        }
        prev = c;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: Rational,
    pub class: VarietyClass,
}

/// Piecewise-constant classes on `[0, ∞)`; segment `i` covers
/// `[start_i, start_{i+1})` and the last one extends to infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Progression {
    pub segments: Vec<Segment>,
    pub breakpoints: Vec<Rational>,
}

impl Progression {
    pub fn class_at(&self, e: &Rational) -> VarietyClass {
        self.segments
            .iter()
            .rev()
            .find(|s| &s.start <= e)
            .map(|s| s.class)
            .unwrap_or(self.segments[0].class)
    }

    /// Classes after the leading empty stretch.
    pub fn nonempty_classes(&self) -> Vec<VarietyClass> {
        self.segments
            .iter()
            .map(|s| s.class)
            .skip_while(|c| *c == VarietyClass::Empty)
            .collect()
    }

    /// Smallest ε with a nonempty variety.
    pub fn onset(&self) -> Option<&Rational> {
        self.segments
            .iter()
            .find(|s| s.class != VarietyClass::Empty)
            .map(|s| &s.start)
    }

    /// End of segment `i`, `None` for the final unbounded one.
    pub fn segment_end(&self, i: usize) -> Option<&Rational> {
        self.segments.get(i + 1).map(|s| &s.start)
    }
}

pub fn progression(m: &IntervalModule, n: &IntervalModule) -> Progression {
    let breakpoints = breakpoints(m, n);
    let mut segments: Vec<Segment> = Vec::with_capacity(breakpoints.len() + 1);
    let starts = core::iter::once(Rational::zero()).chain(breakpoints.iter().cloned());
    for start in starts {
        let class = classify(m, n, &start);
        if segments.last().map(|s| s.class) != Some(class) {
            segments.push(Segment { start, class });
        }
    }
    Progression {
        segments,
        breakpoints,
    }
}

/// The nonempty part of the progression as predicted from `m1` vs `m2`.
///
/// `m1 > m2`: origin, axis, origin. `m1 = m2`: axis, origin. `m1 < m2`:
/// hyperbola, plane, then an axis only if the two homs die at different
/// shifts, then origin. The axis is oriented toward the hom that dies last.
pub fn predicted_progression(m: &IntervalModule, n: &IntervalModule) -> Vec<VarietyClass> {
    use VarietyClass::*;
    let life = hom_life(m, n);
    let axis = if life.sigma_prime > life.tau_prime {
        KAxis
    } else {
        LAxis
    };
    match life.m1.cmp(&life.m2) {
        core::cmp::Ordering::Greater => alloc::vec![Origin, axis, Origin],
        core::cmp::Ordering::Equal => alloc::vec![axis, Origin],
        core::cmp::Ordering::Less => {
            if life.sigma_prime == life.tau_prime {
                alloc::vec![Hyperbola, Plane, Origin]
            } else {
                alloc::vec![Hyperbola, Plane, axis, Origin]
            }
        }
    }
}
