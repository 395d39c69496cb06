//! The affine variety of ε-interleavings between two direct sums of
//! intervals, given by generators in the entries of `K` and `L`.
//!
//! Variables whose hom space is zero at this ε are *forced*: they appear
//! only as their own degree-1 generator and are substituted by 0 in every
//! product constraint. A constraint `(L·K - Π_M)[p][q]` is emitted only when
//! the corresponding entry can be nonzero, i.e. when `2ε ∈ S(M_q, M_p)`;
//! likewise for `K·L - Π_N`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interval::{hom_window, PersistenceModule};
use crate::oracle::ScalarAssignment;
use crate::poly::{Family, Polynomial, Variable};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StatusHint {
    /// Some generator reduced to a nonzero constant.
    ProvablyEmpty,
    /// A witness was found and verified at the morphism level.
    WitnessFound,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyPresentation {
    pub m_module: PersistenceModule,
    pub n_module: PersistenceModule,
    /// Number of summands of `M`.
    pub m: usize,
    /// Number of summands of `N`.
    pub n: usize,
    pub epsilon: Rational,
    pub forced_zero: BTreeSet<Variable>,
    /// 1-based `(p, q)` with `2ε ∈ S(M_q, M_p)`.
    pub active_m: BTreeSet<(usize, usize)>,
    /// 1-based `(p, q)` with `2ε ∈ S(N_q, N_p)`.
    pub active_n: BTreeSet<(usize, usize)>,
    pub generators: Vec<Polynomial>,
    pub status_hint: StatusHint,
    /// Set once a probe has found a verified witness.
    pub witness: Option<ScalarAssignment>,
}

impl VarietyPresentation {
    /// All `n·m` entries of `K` followed by all `m·n` entries of `L`.
    pub fn variables(&self) -> Vec<Variable> {
        grid_variables(self.m, self.n)
    }

    pub fn free_variables(&self) -> Vec<Variable> {
        self.variables()
            .into_iter()
            .filter(|v| !self.forced_zero.contains(v))
            .collect()
    }

    /// Whether `assignment` is a common zero of every generator.
    pub fn accepts(&self, assignment: &ScalarAssignment) -> bool {
        self.generators
            .iter()
            .all(|g| g.evaluate(|v| assignment.value(v)).is_zero())
    }

    pub fn has_constant_generator(&self) -> bool {
        self.generators.iter().any(Polynomial::is_nonzero_constant)
    }
}

pub(crate) fn grid_variables(m: usize, n: usize) -> Vec<Variable> {
    let ks = (1..=n).flat_map(|i| (1..=m).map(move |j| Variable::k(i, j)));
    let ls = (1..=m).flat_map(|j| (1..=n).map(move |i| Variable::l(j, i)));
    ks.chain(ls).collect()
}

fn product_entry(
    left: Family,
    right: Family,
    row: usize,
    col: usize,
    inner: usize,
) -> Polynomial {
    let var = |family, r, c| Polynomial::variable(Variable { family, row: r, col: c });
    (1..=inner).fold(Polynomial::zero(), |acc, t| {
        acc.add(&var(left, row, t).mul(&var(right, t, col)))
    })
}

struct Grid {
    forced_zero: BTreeSet<Variable>,
    active_m: BTreeSet<(usize, usize)>,
    active_n: BTreeSet<(usize, usize)>,
    /// Unsubstituted `(L·K - Π_M)` constraints followed by `(K·L - Π_N)`.
    constraints: Vec<Polynomial>,
}

fn analyse(m_mod: &PersistenceModule, n_mod: &PersistenceModule, e: &Rational) -> Result<Grid> {
    if e.is_negative() {
        return Err(Error::NegativeShift(e.clone()));
    }
    m_mod.require_nonempty()?;
    n_mod.require_nonempty()?;
    let ms = &m_mod.summands;
    let ns = &n_mod.summands;
    let (m, n) = (ms.len(), ns.len());
    let two_e = e.double();

    let mut forced_zero = BTreeSet::new();
    for (i, ni) in ns.iter().enumerate() {
        for (j, mj) in ms.iter().enumerate() {
            if !hom_window(mj, ni).contains(e) {
                forced_zero.insert(Variable::k(i + 1, j + 1));
            }
            if !hom_window(ni, mj).contains(e) {
                forced_zero.insert(Variable::l(j + 1, i + 1));
            }
        }
    }

    let mut constraints = Vec::new();
    let mut active_m = BTreeSet::new();
    for p in 0..m {
        for q in 0..m {
            if !hom_window(&ms[q], &ms[p]).contains(&two_e) {
                continue;
            }
            active_m.insert((p + 1, q + 1));
            let mut entry = product_entry(Family::L, Family::K, p + 1, q + 1, n);
            if p == q {
                entry = entry.sub(&Polynomial::constant(Rational::one()));
            }
            constraints.push(entry);
        }
    }
    let mut active_n = BTreeSet::new();
    for p in 0..n {
        for q in 0..n {
            if !hom_window(&ns[q], &ns[p]).contains(&two_e) {
                continue;
            }
            active_n.insert((p + 1, q + 1));
            let mut entry = product_entry(Family::K, Family::L, p + 1, q + 1, m);
            if p == q {
                entry = entry.sub(&Polynomial::constant(Rational::one()));
            }
            constraints.push(entry);
        }
    }
    Ok(Grid {
        forced_zero,
        active_m,
        active_n,
        constraints,
    })
}

/// Presentation of `V^ε(M, N)`.
///
/// Generators are the forced variables (sorted), then the active `L·K`
/// entries in row-major order, then the active `K·L` entries in row-major
/// order, each with forced variables set to zero. Entries that vanish
/// identically after substitution are dropped.
pub fn build_variety(
    m_mod: &PersistenceModule,
    n_mod: &PersistenceModule,
    e: &Rational,
) -> Result<VarietyPresentation> {
    let grid = analyse(m_mod, n_mod, e)?;
    let mut generators: Vec<Polynomial> = grid
        .forced_zero
        .iter()
        .map(|v| Polynomial::variable(*v))
        .collect();
    generators.extend(
        grid.constraints
            .iter()
            .map(|c| c.substitute_zero(&grid.forced_zero))
            .filter(|g| !g.is_zero()),
    );
    let status_hint = if generators.iter().any(Polynomial::is_nonzero_constant) {
        StatusHint::ProvablyEmpty
    } else {
        StatusHint::Unknown
    };
    Ok(VarietyPresentation {
        m: m_mod.len(),
        n: n_mod.len(),
        m_module: m_mod.clone(),
        n_module: n_mod.clone(),
        epsilon: e.clone(),
        forced_zero: grid.forced_zero,
        active_m: grid.active_m,
        active_n: grid.active_n,
        generators,
        status_hint,
        witness: None,
    })
}

/// The active matrix constraints before forced variables are substituted,
/// in the same order as in [`build_variety`].
pub fn unreduced_constraints(
    m_mod: &PersistenceModule,
    n_mod: &PersistenceModule,
    e: &Rational,
) -> Result<Vec<Polynomial>> {
    analyse(m_mod, n_mod, e).map(|g| g.constraints)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IntervalModule;
    use crate::poly::canonicalize;
    use crate::rational::q;
    use alloc::string::ToString;
    use alloc::vec;

    fn iv(b: &str, d: &str) -> IntervalModule {
        IntervalModule::new(q(b), q(d)).unwrap()
    }

    fn worked_pair() -> (PersistenceModule, PersistenceModule) {
        (
            PersistenceModule::new("M", vec![iv("1", "4"), iv("1.2", "3.9")]),
            PersistenceModule::new("N", vec![iv("1", "4"), iv("0.9", "4.1")]),
        )
    }

    fn rendered(p: &VarietyPresentation) -> Vec<alloc::string::String> {
        p.generators.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn at_distance_one_variable_is_forced() {
        let (m, n) = worked_pair();
        let p = build_variety(&m, &n, &q("0.2")).unwrap();
        assert_eq!(p.forced_zero.iter().copied().collect::<Vec<_>>(), vec![Variable::l(2, 2)]);
        assert_eq!(p.active_m.len(), 4);
        assert_eq!(p.active_n.len(), 4);
        assert_eq!(
            rendered(&p),
            vec![
                "l[2][2]",
                "k[1][1]*l[1][1] + k[2][1]*l[1][2] - 1",
                "k[1][2]*l[1][1] + k[2][2]*l[1][2]",
                "k[1][1]*l[2][1]",
                "k[1][2]*l[2][1] - 1",
                "k[1][1]*l[1][1] + k[1][2]*l[2][1] - 1",
                "k[1][1]*l[1][2]",
                "k[2][1]*l[1][1] + k[2][2]*l[2][1]",
                "k[2][1]*l[1][2] - 1",
            ]
        );
        assert_eq!(p.status_hint, StatusHint::Unknown);
    }

    #[test]
    fn at_two_fifths_every_entry_is_constrained() {
        let (m, n) = worked_pair();
        let p = build_variety(&m, &n, &q("0.4")).unwrap();
        assert!(p.forced_zero.is_empty());
        assert_eq!(p.generators.len(), 8);
        let one = Polynomial::constant(Rational::one());
        let mut expected = Vec::new();
        for (left, right, inner) in [(Family::L, Family::K, 2), (Family::K, Family::L, 2)] {
            for r in 1..=2 {
                for c in 1..=2 {
                    let mut e = product_entry(left, right, r, c, inner);
                    if r == c {
                        e = e.sub(&one);
                    }
                    expected.push(e);
                }
            }
        }
        assert_eq!(p.generators, expected);
    }

    #[test]
    fn at_three_two_variables_survive() {
        let (m, n) = worked_pair();
        let p = build_variety(&m, &n, &q("3")).unwrap();
        assert_eq!(p.generators.len(), 6);
        assert!(p.generators.iter().all(|g| g.degree() == 1));
        assert!(p.active_m.is_empty() && p.active_n.is_empty());
        assert_eq!(p.free_variables(), vec![Variable::k(2, 1), Variable::l(1, 2)]);
    }

    #[test]
    fn below_distance_the_constraint_collapses_to_a_constant() {
        let m = PersistenceModule::single("M", iv("6", "8"));
        let n = PersistenceModule::single("N", iv("1", "2"));
        let p = build_variety(&m, &n, &q("0.5")).unwrap();
        assert_eq!(rendered(&p), vec!["k[1][1]", "l[1][1]", "-1"]);
        assert_eq!(p.status_hint, StatusHint::ProvablyEmpty);
        let raw = unreduced_constraints(&m, &n, &q("0.5")).unwrap();
        assert_eq!(raw.len(), 1);
        assert_eq!(raw[0].to_string(), "k[1][1]*l[1][1] - 1");
    }

    #[test]
    fn long_after_all_homs_die_only_the_origin_remains() {
        let m = PersistenceModule::single("M", iv("1", "3"));
        let p = build_variety(&m, &m, &q("2")).unwrap();
        assert_eq!(rendered(&p), vec!["k[1][1]", "l[1][1]"]);
    }

    #[test]
    fn single_surviving_constraint_at_one_point_five_five() {
        let (m, n) = worked_pair();
        let p = build_variety(&m, &n, &q("1.55")).unwrap();
        assert!(p.forced_zero.is_empty());
        assert!(p.active_m.is_empty());
        assert_eq!(p.active_n.iter().copied().collect::<Vec<_>>(), vec![(2, 2)]);
        let expected = canonicalize([
            (vec![Variable::k(2, 1), Variable::l(1, 2)], q("1")),
            (vec![Variable::k(2, 2), Variable::l(2, 2)], q("1")),
            (vec![], q("-1")),
        ]);
        assert_eq!(p.generators, vec![expected]);
    }

    #[test]
    fn invalid_inputs() {
        let (m, n) = worked_pair();
        assert!(matches!(build_variety(&m, &n, &q("-1")), Err(Error::NegativeShift(_))));
        let empty = PersistenceModule::new("E", vec![]);
        assert!(matches!(build_variety(&empty, &n, &q("1")), Err(Error::EmptyModule(_))));
    }

    #[test]
    fn diagonal_constraints_carry_minus_one() {
        let (m, n) = worked_pair();
        for e in ["0", "0.2", "0.4", "1", "1.4"] {
            let raw = unreduced_constraints(&m, &n, &q(e)).unwrap();
            let p = build_variety(&m, &n, &q(e)).unwrap();
            let diag: Vec<bool> = p
                .active_m
                .iter()
                .chain(p.active_n.iter())
                .map(|(a, b)| a == b)
                .collect();
            for (c, is_diag) in raw.iter().zip(diag) {
                let expected = if is_diag { q("-1") } else { q("0") };
                assert_eq!(c.constant_term(), expected);
            }
        }
    }
}
