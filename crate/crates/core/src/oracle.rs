//! Definition-level checks that do not go through the symbolic pipeline.
//!
//! [`check_interleaving`] builds `Φ: M -> N·ε` and `Ψ: N -> M·ε` as matrices
//! of interval-module morphisms and compares `Ψε∘Φ` with `Π_M^{M·2ε}` and
//! `Φε∘Ψ` with `Π_N^{N·2ε}` pointwise. Every morphism involved is constant on
//! the pieces cut out by the summand endpoints shifted by `0`, `ε` and `2ε`,
//! so evaluating at those points and at one interior point of each piece
//! decides equality exactly.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::VarietyClass;
use crate::error::{Error, Result};
use crate::interval::{hom_nonzero, shift, IntervalModule, PersistenceModule};
use crate::poly::{Family, Variable};
use crate::rational::Rational;
use crate::variety::{StatusHint, VarietyPresentation};

/// Scalar values for the entries of `K` and `L`; absent positions are zero.
///
/// Positions are 1-based: `k_values[(i, j)]` is `K(i, j)` and
/// `l_values[(j, i)]` is `L(j, i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScalarAssignment {
    pub k_values: BTreeMap<(usize, usize), Rational>,
    pub l_values: BTreeMap<(usize, usize), Rational>,
}

impl ScalarAssignment {
    pub fn new() -> Self {
        ScalarAssignment::default()
    }

    pub fn value(&self, v: Variable) -> Rational {
        let map = match v.family {
            Family::K => &self.k_values,
            Family::L => &self.l_values,
        };
        map.get(&(v.row, v.col)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Stores `value`, dropping explicit zeros so equal assignments compare
    /// equal.
    pub fn set(&mut self, v: Variable, value: Rational) {
        let map = match v.family {
            Family::K => &mut self.k_values,
            Family::L => &mut self.l_values,
        };
        if value.is_zero() {
            map.remove(&(v.row, v.col));
        } else {
            map.insert((v.row, v.col), value);
        }
    }

    pub fn with(mut self, v: Variable, value: Rational) -> Self {
        self.set(v, value);
        self
    }

    fn check_bounds(&self, m: usize, n: usize) -> Result<()> {
        let oob = |family, (row, col): (usize, usize), rows, cols| Error::PositionOutOfBounds {
            family,
            row,
            col,
            rows,
            cols,
        };
        for &(i, j) in self.k_values.keys() {
            if i == 0 || j == 0 || i > n || j > m {
                return Err(oob('K', (i, j), n, m));
            }
        }
        for &(j, i) in self.l_values.keys() {
            if i == 0 || j == 0 || j > m || i > n {
                return Err(oob('L', (j, i), m, n));
            }
        }
        Ok(())
    }
}

/// A morphism between two interval modules: `scalar` on the overlap of the
/// supports when the hom space is nonzero, zero otherwise.
struct IntervalMorphism {
    scalar: Rational,
    src: IntervalModule,
    dst: IntervalModule,
}

impl IntervalMorphism {
    fn new(scalar: Rational, src: IntervalModule, dst: IntervalModule) -> Self {
        let scalar = if hom_nonzero(&src, &dst) {
            scalar
        } else {
            Rational::zero()
        };
        IntervalMorphism { scalar, src, dst }
    }

    fn at(&self, x: &Rational) -> Rational {
        if !self.scalar.is_zero() && self.src.contains(x) && self.dst.contains(x) {
            self.scalar.clone()
        } else {
            Rational::zero()
        }
    }
}

/// `P(x <= x + t)` for a single interval: 1 when both `x` and `x + t` lie in
/// the support.
fn structure_map(p: &IntervalModule, x: &Rational, t: &Rational) -> Rational {
    if p.contains(x) && p.contains(&(x + t)) {
        Rational::one()
    } else {
        Rational::zero()
    }
}

fn critical_points(ms: &[IntervalModule], ns: &[IntervalModule], e: &Rational) -> Vec<Rational> {
    let two_e = e.double();
    let mut pts: Vec<Rational> = ms
        .iter()
        .chain(ns)
        .flat_map(|iv| [iv.birth().clone(), iv.death().clone()])
        .flat_map(|t| [t.clone(), &t - e, &t - &two_e])
        .collect();
    pts.sort();
    pts.dedup();
    let mut out = Vec::with_capacity(2 * pts.len() + 2);
    if let Some(first) = pts.first() {
        out.push(first - Rational::one());
    }
    for w in pts.windows(2) {
        out.push(w[0].clone());
        out.push(w[0].midpoint(&w[1]));
    }
    if let Some(last) = pts.last() {
        out.push(last.clone());
        out.push(last + Rational::one());
    }
    out
}

/// Whether the assignment defines an ε-interleaving between `M` and `N`.
///
/// A nonzero scalar at a position whose hom space is zero is evaluated as the
/// zero morphism; comparing against the presentation's forced variables is
/// left to the caller.
#[allow(clippy::needless_range_loop)]
pub fn check_interleaving(
    m_mod: &PersistenceModule,
    n_mod: &PersistenceModule,
    e: &Rational,
    assignment: &ScalarAssignment,
) -> Result<bool> {
    let ms = &m_mod.summands;
    let ns = &n_mod.summands;
    assignment.check_bounds(ms.len(), ns.len())?;
    let two_e = e.double();

    // phi[i][j]: M_j -> N_i·ε,  psi[j][i]: N_i -> M_j·ε
    let mut phi = Vec::with_capacity(ns.len());
    for (i, ni) in ns.iter().enumerate() {
        let shifted = shift(ni, e)?;
        phi.push(
            ms.iter()
                .enumerate()
                .map(|(j, mj)| {
                    let s = assignment.value(Variable::k(i + 1, j + 1));
                    IntervalMorphism::new(s, mj.clone(), shifted.clone())
                })
                .collect::<Vec<_>>(),
        );
    }
    let mut psi = Vec::with_capacity(ms.len());
    for (j, mj) in ms.iter().enumerate() {
        let shifted = shift(mj, e)?;
        psi.push(
            ns.iter()
                .enumerate()
                .map(|(i, ni)| {
                    let s = assignment.value(Variable::l(j + 1, i + 1));
                    IntervalMorphism::new(s, ni.clone(), shifted.clone())
                })
                .collect::<Vec<_>>(),
        );
    }

    for x in critical_points(ms, ns, e) {
        let xe = &x + e;
        // (Ψε ∘ Φ)(x) = Ψ(x+ε)·Φ(x) against Π_M(x)
        for p in 0..ms.len() {
            for q in 0..ms.len() {
                let composite: Rational = (0..ns.len())
                    .map(|i| psi[p][i].at(&xe) * phi[i][q].at(&x))
                    .sum();
                let target = if p == q {
                    structure_map(&ms[p], &x, &two_e)
                } else {
                    Rational::zero()
                };
                if composite != target {
                    return Ok(false);
                }
            }
        }
        // (Φε ∘ Ψ)(x) = Φ(x+ε)·Ψ(x) against Π_N(x)
        for p in 0..ns.len() {
            for q in 0..ns.len() {
                let composite: Rational = (0..ms.len())
                    .map(|j| phi[p][j].at(&xe) * psi[j][q].at(&x))
                    .sum();
                let target = if p == q {
                    structure_map(&ns[p], &x, &two_e)
                } else {
                    Rational::zero()
                };
                if composite != target {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    WitnessFound(ScalarAssignment),
    NoWitnessInBudget,
}

impl ProbeOutcome {
    pub fn witness(&self) -> Option<&ScalarAssignment> {
        match self {
            ProbeOutcome::WitnessFound(a) => Some(a),
            ProbeOutcome::NoWitnessInBudget => None,
        }
    }
}

fn verified(p: &VarietyPresentation, candidate: &ScalarAssignment) -> bool {
    p.forced_zero.iter().all(|v| candidate.value(*v).is_zero())
        && p.accepts(candidate)
        && check_interleaving(&p.m_module, &p.n_module, &p.epsilon, candidate).unwrap_or(false)
}

/// `K(σ(j), j) = λ_j`, `L(j, σ(j)) = 1/λ_j` for each pair, skipping forced
/// positions.
fn matching_pattern(
    p: &VarietyPresentation,
    pairs: &[(usize, usize)],
    scalars: &[Rational],
) -> ScalarAssignment {
    let mut a = ScalarAssignment::new();
    for (&(j, i), s) in pairs.iter().zip(scalars) {
        let k = Variable::k(i, j);
        let l = Variable::l(j, i);
        if !p.forced_zero.contains(&k) {
            a.set(k, s.clone());
        }
        if !p.forced_zero.contains(&l) {
            a.set(l, s.recip().unwrap_or_else(Rational::zero));
        }
    }
    a
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let mut num: i64 = rng.gen_range(1..=6);
    if rng.gen_bool(0.5) {
        num = -num;
    }
    let den: i64 = rng.gen_range(1..=4);
    Rational::new(num, den).expect("positive denominator")
}

/// Searches for a point of the variety.
///
/// Candidates, in order: all zeros; the identity pairing `M_j <-> N_j` and
/// each single transposition of it with unit scalars; then up to `budget`
/// random candidates (random partial pairings with random reciprocal
/// scalars, occasionally with every free variable randomized). Forced
/// variables are always zero and degree-1 generators are satisfied by
/// construction. Every candidate is checked against the generators and
/// re-verified with [`check_interleaving`] before being returned.
pub fn probe_solutions(p: &VarietyPresentation, budget: usize, seed: u64) -> ProbeOutcome {
    if p.has_constant_generator() {
        return ProbeOutcome::NoWitnessInBudget;
    }
    let zero = ScalarAssignment::new();
    if verified(p, &zero) {
        return ProbeOutcome::WitnessFound(zero);
    }

    let r = p.m.min(p.n);
    let ones = vec![Rational::one(); r];
    let mut perm: Vec<usize> = (1..=p.n).collect();
    let mut structured = Vec::new();
    structured.push(perm.clone());
    for a in 0..p.n {
        for b in a + 1..p.n {
            perm.swap(a, b);
            structured.push(perm.clone());
            perm.swap(a, b);
        }
    }
    for sigma in &structured {
        let pairs: Vec<(usize, usize)> = (1..=r).map(|j| (j, sigma[j - 1])).collect();
        let candidate = matching_pattern(p, &pairs, &ones);
        if verified(p, &candidate) {
            return ProbeOutcome::WitnessFound(candidate);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let free = p.free_variables();
    let mut m_idx: Vec<usize> = (1..=p.m).collect();
    let mut n_idx: Vec<usize> = (1..=p.n).collect();
    for _ in 0..budget {
        let candidate = if rng.gen_ratio(1, 4) {
            let mut a = ScalarAssignment::new();
            for v in &free {
                if rng.gen_bool(0.5) {
                    a.set(*v, random_nonzero(&mut rng));
                }
            }
            a
        } else {
            m_idx.shuffle(&mut rng);
            n_idx.shuffle(&mut rng);
            let size = rng.gen_range(0..=r);
            let pairs: Vec<(usize, usize)> = (0..size).map(|t| (m_idx[t], n_idx[t])).collect();
            let scalars: Vec<Rational> = (0..size).map(|_| random_nonzero(&mut rng)).collect();
            matching_pattern(p, &pairs, &scalars)
        };
        if verified(p, &candidate) {
            return ProbeOutcome::WitnessFound(candidate);
        }
    }
    ProbeOutcome::NoWitnessInBudget
}

/// Runs [`probe_solutions`] and records the outcome on the presentation.
pub fn probe_presentation(
    mut p: VarietyPresentation,
    budget: usize,
    seed: u64,
) -> VarietyPresentation {
    if p.status_hint == StatusHint::ProvablyEmpty {
        return p;
    }
    if let ProbeOutcome::WitnessFound(w) = probe_solutions(&p, budget, seed) {
        p.status_hint = StatusHint::WitnessFound;
        p.witness = Some(w);
    }
    p
}

/// Probe points `(k, ℓ)` for the 1×1 solution-set classification.
pub const PROBE_POINTS: [(i64, i64, i64, i64); 6] = [
    (0, 1, 0, 1),
    (1, 1, 0, 1),
    (0, 1, 1, 1),
    (1, 1, 1, 1),
    (2, 1, 1, 2),
    (-1, 1, -1, 1),
];

/// Classifies `V^ε` for a pair of intervals by testing which probe points are
/// ε-interleavings.
///
/// Whether each scalar is forced to zero is decided here from the hom
/// criterion on shifted intervals; the accepted subset of
/// `{(0,0), (1,0), (0,1), (1,1), (2,1/2), (-1,-1)}` then pins down the class.
pub fn classify_solutions_1x1(
    m: &IntervalModule,
    n: &IntervalModule,
    e: &Rational,
) -> Result<VarietyClass> {
    let k_alive = hom_nonzero(m, &shift(n, e)?);
    let l_alive = hom_nonzero(n, &shift(m, e)?);
    let m_mod = PersistenceModule::single("M", m.clone());
    let n_mod = PersistenceModule::single("N", n.clone());

    let mut accepted = [false; 6];
    for (slot, &(kn, kd, ln, ld)) in accepted.iter_mut().zip(PROBE_POINTS.iter()) {
        let k = Rational::new(kn, kd).expect("nonzero denominator");
        let l = Rational::new(ln, ld).expect("nonzero denominator");
        if (!k.is_zero() && !k_alive) || (!l.is_zero() && !l_alive) {
            continue;
        }
        let a = ScalarAssignment::new()
            .with(Variable::k(1, 1), k)
            .with(Variable::l(1, 1), l);
        *slot = check_interleaving(&m_mod, &n_mod, e, &a)?;
    }

    let class = match accepted {
        [false, false, false, false, false, false] => VarietyClass::Empty,
        [true, false, false, false, false, false] => VarietyClass::Origin,
        [true, true, false, false, false, false] => VarietyClass::KAxis,
        [true, false, true, false, false, false] => VarietyClass::LAxis,
        [false, false, false, true, true, true] => VarietyClass::Hyperbola,
        [true, true, true, true, true, true] => VarietyClass::Plane,
        other => panic!(
            "probe pattern {other:?} for {m} vs {n} at ε = {e} matches no 1x1 variety class"
        ),
    };
    Ok(class)
}
