//! Sparse polynomials over the rationals in the interleaving variables.
//!
//! Canonical form: no zero coefficients, variables inside a monomial sorted
//! by `(family, row, col)`, and terms ordered by descending degree and then
//! lexicographically by their variable lists. Because [`Polynomial`] keeps
//! its terms in that order at all times, equality is structural.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Entries of `K`, the components of `Φ: M -> N·ε`.
    K,
    /// Entries of `L`, the components of `Ψ: N -> M·ε`.
    L,
}

/// One scalar of the interleaving matrices, indexed from 1.
///
/// `K(i, j)` parametrizes `Hom(M_j, N_i·ε)` and `L(j, i)` parametrizes
/// `Hom(N_i, M_j·ε)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub family: Family,
    pub row: usize,
    pub col: usize,
}

impl Variable {
    pub fn k(row: usize, col: usize) -> Self {
        Variable {
            family: Family::K,
            row,
            col,
        }
    }

    pub fn l(row: usize, col: usize) -> Self {
        Variable {
            family: Family::L,
            row,
            col,
        }
    }
}

/// Rendered as `k[i][j]` / `l[i][j]`.
impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::K => 'k',
            Family::L => 'l',
        };
        write!(f, "{c}[{}][{}]", self.row, self.col)
    }
}

impl core::str::FromStr for Variable {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let (family, rest) = match s.as_bytes().first() {
            Some(b'k') => (Family::K, &s[1..]),
            Some(b'l') => (Family::L, &s[1..]),
            _ => return Err(()),
        };
        let rest = rest.strip_prefix('[').ok_or(())?;
        let (row, rest) = rest.split_once("][").ok_or(())?;
        let col = rest.strip_suffix(']').ok_or(())?;
        let row: usize = row.parse().map_err(|_| ())?;
        let col: usize = col.parse().map_err(|_| ())?;
        if row == 0 || col == 0 {
            return Err(());
        }
        Ok(Variable { family, row, col })
    }
}

/// A product of variables, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<Variable>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut vars: Vec<Variable>) -> Self {
        vars.sort();
        Monomial(vars)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.0
    }

    pub fn contains(&self, v: &Variable) -> bool {
        self.0.binary_search(v).is_ok()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut vars = self.0.clone();
        vars.extend_from_slice(&other.0);
        Monomial::new(vars)
    }
}

/// Descending degree, then lexicographic on the sorted variable list.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        canonicalize([(Vec::new(), c)])
    }

    pub fn variable(v: Variable) -> Self {
        canonicalize([(alloc::vec![v], Rational::one())])
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// A nonzero constant generates the unit ideal.
    pub fn is_nonzero_constant(&self) -> bool {
        !self.is_zero() && self.degree() == 0
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.variables().iter().copied())
            .collect()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        canonicalize(
            self.raw_terms()
                .chain(other.raw_terms()),
        )
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        canonicalize(
            self.raw_terms()
                .chain(other.raw_terms().map(|(m, c)| (m, -c))),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.push((ma.mul(mb).0, ca * cb));
            }
        }
        canonicalize(out)
    }

    /// Sets every variable in `zeros` to 0.
    pub fn substitute_zero(&self, zeros: &BTreeSet<Variable>) -> Polynomial {
        canonicalize(
            self.raw_terms()
                .filter(|(vars, _)| !vars.iter().any(|v| zeros.contains(v))),
        )
    }

    pub fn evaluate(&self, value: impl Fn(Variable) -> Rational) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.variables()
                    .iter()
                    .fold(c.clone(), |acc, v| acc * value(*v))
            })
            .sum()
    }

    fn raw_terms(&self) -> impl Iterator<Item = (Vec<Variable>, Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (m.0.clone(), c.clone()))
    }
}

/// Merges like terms, drops zero coefficients and sorts.
pub fn canonicalize<I>(terms: I) -> Polynomial
where
    I: IntoIterator<Item = (Vec<Variable>, Rational)>,
{
    let mut merged: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (vars, coeff) in terms {
        let mono = Monomial::new(vars);
        let slot = merged.entry(mono).or_insert_with(Rational::zero);
        *slot = &*slot + &coeff;
    }
    merged.retain(|_, c| !c.is_zero());
    Polynomial { terms: merged }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (mono, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = coeff.abs();
            let unit = magnitude == Rational::one();
            if mono.degree() == 0 {
                write!(f, "{magnitude}")?;
                continue;
            }
            if !unit {
                write!(f, "{magnitude}*")?;
            }
            for (i, v) in mono.variables().iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}
