//! Randomized sweeps that machine-check the classification of interval-pair
//! progressions, the hom birth/death identities, and agreement between the
//! symbolic classifier and the morphism-level oracle.
//!
//! Sample `i` of a sweep with seed `s` is drawn from its own ChaCha stream
//! (`seed = s`, `stream = i`), so any partition of the index range across
//! workers reproduces the same samples.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{predicted_progression, progression, breakpoints, classify, VarietyClass};
use crate::hom::{hom_life, single_hom_survives};
use crate::interval::IntervalModule;
use crate::oracle::classify_solutions_1x1;
use crate::rational::{q, Rational};

/// Largest endpoint numerator drawn by the sampler.
pub const NUMERATOR_MAX: i64 = 400;
/// Endpoint denominators are drawn from `1..=DENOMINATOR_MAX`.
pub const DENOMINATOR_MAX: i64 = 20;

fn endpoint(rng: &mut ChaCha8Rng) -> Rational {
    let u = rng.gen_range(0..=NUMERATOR_MAX);
    let v = rng.gen_range(1..=DENOMINATOR_MAX);
    Rational::new(u, v).expect("positive denominator")
}

/// An interval with endpoints `u/v`, `u ∈ [0, 400]`, `v ∈ [1, 20]`; draws
/// with equal endpoints are rejected.
pub fn sample_interval(rng: &mut ChaCha8Rng) -> IntervalModule {
    loop {
        let (x, y) = (endpoint(rng), endpoint(rng));
        let (b, d) = if x < y { (x, y) } else { (y, x) };
        if let Ok(iv) = IntervalModule::new(b, d) {
            return iv;
        }
    }
}

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn sample_pair(seed: u64, index: u64) -> (IntervalModule, IntervalModule) {
    let mut rng = sample_rng(seed, index);
    let m = sample_interval(&mut rng);
    let n = sample_interval(&mut rng);
    (m, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Trichotomy {
    M1Greater,
    M1Equal,
    M1Less,
}

impl Trichotomy {
    pub fn of(m: &IntervalModule, n: &IntervalModule) -> Trichotomy {
        let life = hom_life(m, n);
        match life.m1.cmp(&life.m2) {
            core::cmp::Ordering::Greater => Trichotomy::M1Greater,
            core::cmp::Ordering::Equal => Trichotomy::M1Equal,
            core::cmp::Ordering::Less => Trichotomy::M1Less,
        }
    }

    fn expects_first(self, class: VarietyClass) -> bool {
        match self {
            Trichotomy::M1Greater => class == VarietyClass::Origin,
            Trichotomy::M1Equal => class.is_axis(),
            Trichotomy::M1Less => class == VarietyClass::Hyperbola,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Trichotomy::M1Greater => "m1>m2",
            Trichotomy::M1Equal => "m1=m2",
            Trichotomy::M1Less => "m1<m2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremViolation {
    SequenceMismatch {
        observed: Vec<VarietyClass>,
        predicted: Vec<VarietyClass>,
    },
    FirstClassMismatch {
        first: Option<VarietyClass>,
        case: Trichotomy,
    },
    OnsetMismatch {
        onset: Option<Rational>,
        distance: Rational,
    },
    OutsideTaxonomy {
        observed: Vec<VarietyClass>,
    },
}

fn same_shapes(a: &[VarietyClass], b: &[VarietyClass]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.same_shape(*y))
}

/// The four nonempty progressions an interval pair can produce, up to axis
/// orientation.
pub fn allowed_progressions() -> [Vec<VarietyClass>; 4] {
    use VarietyClass::*;
    [
        alloc::vec![Origin, KAxis, Origin],
        alloc::vec![KAxis, Origin],
        alloc::vec![Hyperbola, Plane, KAxis, Origin],
        alloc::vec![Hyperbola, Plane, Origin],
    ]
}

/// Compares the computed progression of one pair with the prediction from
/// `m1` vs `m2` and with the closed-form distance.
pub fn check_theorem_pair(m: &IntervalModule, n: &IntervalModule) -> Vec<TheoremViolation> {
    let mut out = Vec::new();
    let prog = progression(m, n);
    let observed = prog.nonempty_classes();
    let predicted = predicted_progression(m, n);
    if !same_shapes(&observed, &predicted) {
        out.push(TheoremViolation::SequenceMismatch {
            observed: observed.clone(),
            predicted,
        });
    }
    let case = Trichotomy::of(m, n);
    let first = observed.first().copied();
    if !first.is_some_and(|c| case.expects_first(c)) {
        out.push(TheoremViolation::FirstClassMismatch { first, case });
    }
    let distance = hom_life(m, n).distance;
    if prog.onset() != Some(&distance) {
        out.push(TheoremViolation::OnsetMismatch {
            onset: prog.onset().cloned(),
            distance,
        });
    }
    if !allowed_progressions().iter().any(|a| same_shapes(a, &observed)) {
        out.push(TheoremViolation::OutsideTaxonomy { observed });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy<V> {
    pub index: u64,
    pub m: IntervalModule,
    pub n: IntervalModule,
    pub violation: V,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TheoremReport {
    pub samples: u64,
    pub m1_greater: u64,
    pub m1_equal: u64,
    pub m1_less: u64,
    /// Pairs with identical intervals (distance 0).
    pub equal_pairs: u64,
    pub disjoint_pairs: u64,
    pub discrepancies: Vec<Discrepancy<TheoremViolation>>,
}

impl TheoremReport {
    pub fn merge(mut self, other: TheoremReport) -> TheoremReport {
        self.samples += other.samples;
        self.m1_greater += other.m1_greater;
        self.m1_equal += other.m1_equal;
        self.m1_less += other.m1_less;
        self.equal_pairs += other.equal_pairs;
        self.disjoint_pairs += other.disjoint_pairs;
        self.discrepancies.extend(other.discrepancies);
        self.discrepancies.sort_by_key(|d| d.index);
        self
    }

    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn verify_theorem_range(seed: u64, indices: Range<u64>) -> TheoremReport {
    let mut report = TheoremReport::default();
    for index in indices {
        let (m, n) = sample_pair(seed, index);
        report.samples += 1;
        match Trichotomy::of(&m, &n) {
            Trichotomy::M1Greater => report.m1_greater += 1,
            Trichotomy::M1Equal => report.m1_equal += 1,
            Trichotomy::M1Less => report.m1_less += 1,
        }
        if m == n {
            report.equal_pairs += 1;
        }
        if m.death() <= n.birth() || n.death() <= m.birth() {
            report.disjoint_pairs += 1;
        }
        for violation in check_theorem_pair(&m, &n) {
            report.discrepancies.push(Discrepancy {
                index,
                m: m.clone(),
                n: n.clone(),
                violation,
            });
        }
    }
    report
}

pub fn verify_theorem(sample_count: u64, seed: u64) -> TheoremReport {
    verify_theorem_range(seed, 0..sample_count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropositionViolation {
    /// `max(σ, τ) != max(|a-c|, |b-d|)`
    LastBirth { observed: Rational, expected: Rational },
    /// `max(σ', τ') != max(|a-d|, |b-c|)`
    LastDeath { observed: Rational, expected: Rational },
    /// `m1 >= m2` but not exactly one hom window reaches `[D, ∞)`.
    SingleSurvivor,
}

pub fn check_proposition_pair(m: &IntervalModule, n: &IntervalModule) -> Vec<PropositionViolation> {
    let (a, b, c, d) = (m.birth(), m.death(), n.birth(), n.death());
    let life = hom_life(m, n);
    let mut out = Vec::new();
    let expected = (a - c).abs().max((b - d).abs());
    if life.last_birth() != expected {
        out.push(PropositionViolation::LastBirth {
            observed: life.last_birth(),
            expected,
        });
    }
    let expected = (a - d).abs().max((b - c).abs());
    if life.last_death() != expected {
        out.push(PropositionViolation::LastDeath {
            observed: life.last_death(),
            expected,
        });
    }
    if life.m1 >= life.m2 && !single_hom_survives(m, n) {
        out.push(PropositionViolation::SingleSurvivor);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PropositionReport {
    pub samples: u64,
    /// Pairs with `m1 >= m2`, where the single-survivor property is checked.
    pub survivor_checks: u64,
    pub discrepancies: Vec<Discrepancy<PropositionViolation>>,
}

impl PropositionReport {
    pub fn merge(mut self, other: PropositionReport) -> PropositionReport {
        self.samples += other.samples;
        self.survivor_checks += other.survivor_checks;
        self.discrepancies.extend(other.discrepancies);
        self.discrepancies.sort_by_key(|d| d.index);
        self
    }

    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn verify_propositions_range(seed: u64, indices: Range<u64>) -> PropositionReport {
    let mut report = PropositionReport::default();
    for index in indices {
        let (m, n) = sample_pair(seed, index);
        report.samples += 1;
        let life = hom_life(&m, &n);
        if life.m1 >= life.m2 {
            report.survivor_checks += 1;
        }
        for violation in check_proposition_pair(&m, &n) {
            report.discrepancies.push(Discrepancy {
                index,
                m: m.clone(),
                n: n.clone(),
                violation,
            });
        }
    }
    report
}

pub fn verify_propositions(sample_count: u64, seed: u64) -> PropositionReport {
    verify_propositions_range(seed, 0..sample_count)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDisagreement {
    pub epsilon: Rational,
    pub symbolic: VarietyClass,
    pub oracle: VarietyClass,
}

/// Every breakpoint plus one interior point of each segment (including the
/// first, and a point past the last breakpoint).
pub fn sample_epsilons(m: &IntervalModule, n: &IntervalModule) -> Vec<Rational> {
    let bps = breakpoints(m, n);
    let mut out = Vec::with_capacity(2 * bps.len() + 2);
    let mut prev = Rational::zero();
    out.push(prev.clone());
    for b in &bps {
        out.push(prev.midpoint(b));
        out.push(b.clone());
        prev = b.clone();
    }
    out.push(&prev + Rational::one());
    out.dedup();
    out
}

/// Compares [`classify`] with the oracle's probe-point classification at
/// every point of [`sample_epsilons`]. Returns the number of points checked.
pub fn check_oracle_pair(
    m: &IntervalModule,
    n: &IntervalModule,
) -> (usize, Vec<OracleDisagreement>) {
    let eps = sample_epsilons(m, n);
    let mut out = Vec::new();
    for e in &eps {
        let symbolic = classify(m, n, e);
        let oracle = classify_solutions_1x1(m, n, e).expect("non-negative epsilon");
        if symbolic != oracle {
            out.push(OracleDisagreement {
                epsilon: e.clone(),
                symbolic,
                oracle,
            });
        }
    }
    (eps.len(), out)
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OracleReport {
    pub pairs: u64,
    pub points: u64,
    pub discrepancies: Vec<Discrepancy<OracleDisagreement>>,
}

impl OracleReport {
    pub fn merge(mut self, other: OracleReport) -> OracleReport {
        self.pairs += other.pairs;
        self.points += other.points;
        self.discrepancies.extend(other.discrepancies);
        self.discrepancies.sort_by_key(|d| d.index);
        self
    }

    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

pub fn verify_oracle_range(seed: u64, indices: Range<u64>) -> OracleReport {
    let mut report = OracleReport::default();
    for index in indices {
        let (m, n) = sample_pair(seed, index);
        let (points, disagreements) = check_oracle_pair(&m, &n);
        report.pairs += 1;
        report.points += points as u64;
        for violation in disagreements {
            report.discrepancies.push(Discrepancy {
                index,
                m: m.clone(),
                n: n.clone(),
                violation,
            });
        }
    }
    report
}

pub fn verify_oracle_agreement(pair_count: u64, seed: u64) -> OracleReport {
    verify_oracle_range(seed, 0..pair_count)
}

/// A hand-worked interval pair with the tick marks and classes of its
/// reference timeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkedExample {
    pub name: &'static str,
    pub m: IntervalModule,
    pub n: IntervalModule,
    pub reference_ticks: Vec<Rational>,
    pub reference_classes: Vec<VarietyClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkedExampleCheck {
    pub example: WorkedExample,
    pub computed_breakpoints: Vec<Rational>,
    pub computed_classes: Vec<VarietyClass>,
    pub ticks_match: bool,
    pub classes_match: bool,
}

impl WorkedExampleCheck {
    /// Human-readable summary of any deviation, `None` when everything agrees.
    pub fn deviation(&self) -> Option<String> {
        use core::fmt::Write;
        if self.ticks_match && self.classes_match {
            return None;
        }
        let mut s = String::new();
        if !self.ticks_match {
            let _ = write!(
                s,
                "reference ticks {:?} differ from computed breakpoints {:?}",
                self.example.reference_ticks, self.computed_breakpoints
            );
        }
        if !self.classes_match {
            if !s.is_empty() {
                s.push_str("; ");
            }
            let _ = write!(
                s,
                "reference classes {:?} differ from computed {:?}",
                self.example.reference_classes, self.computed_classes
            );
        }
        Some(s)
    }
}

fn iv(b: &str, d: &str) -> IntervalModule {
    IntervalModule::new(q(b), q(d)).expect("valid worked example")
}

fn ticks(xs: &[&str]) -> Vec<Rational> {
    xs.iter().map(|x| q(x)).collect()
}

/// The hand-worked interval-pair timelines, with reference ticks as
/// originally drawn (two of them are misdrawn and are kept that way so the
/// deviation stays visible).
pub fn worked_examples() -> Vec<WorkedExample> {
    use VarietyClass::*;
    alloc::vec![
        WorkedExample {
            name: "origin1",
            m: iv("6", "8"),
            n: iv("1", "2"),
            reference_ticks: ticks(&["1", "6", "7"]),
            reference_classes: alloc::vec![Empty, Origin, LAxis, Origin],
        },
        WorkedExample {
            name: "origin1-swapped",
            m: iv("1", "2"),
            n: iv("6", "8"),
            reference_ticks: ticks(&["1", "6", "7"]),
            reference_classes: alloc::vec![Empty, Origin, KAxis, Origin],
        },
        WorkedExample {
            name: "axis1",
            m: iv("1", "3"),
            n: iv("0", "2"),
            reference_ticks: ticks(&["1", "3"]),
            reference_classes: alloc::vec![Empty, LAxis, Origin],
        },
        WorkedExample {
            name: "axis1-swapped",
            m: iv("0", "2"),
            n: iv("1", "3"),
            reference_ticks: ticks(&["1", "3"]),
            reference_classes: alloc::vec![Empty, KAxis, Origin],
        },
        WorkedExample {
            name: "hyperbola1",
            m: iv("1", "2.1"),
            n: iv(".8", "2.2"),
            reference_ticks: ticks(&[".2", ".7", "1.2", "1.3"]),
            reference_classes: alloc::vec![Empty, Hyperbola, Plane, LAxis, Origin],
        },
        WorkedExample {
            name: "hyperbola1-swapped",
            m: iv(".8", "2.2"),
            n: iv("1", "2.1"),
            reference_ticks: ticks(&[".2", "1.1", "1.2", "1.3"]),
            reference_classes: alloc::vec![Empty, Hyperbola, Plane, KAxis, Origin],
        },
        WorkedExample {
            name: "hyperbola2",
            m: iv(".9", "2.1"),
            n: iv("1", "2"),
            reference_ticks: ticks(&[".1", ".5", ".9"]),
            reference_classes: alloc::vec![Empty, Hyperbola, Plane, Origin],
        },
    ]
}

pub fn check_worked_example(example: &WorkedExample) -> WorkedExampleCheck {
    let prog = progression(&example.m, &example.n);
    let computed_classes: Vec<VarietyClass> = prog.segments.iter().map(|s| s.class).collect();
    WorkedExampleCheck {
        ticks_match: prog.breakpoints == example.reference_ticks,
        classes_match: same_shapes(&computed_classes, &example.reference_classes),
        computed_breakpoints: prog.breakpoints,
        computed_classes,
        example: example.clone(),
    }
}

pub fn check_worked_examples() -> Vec<WorkedExampleCheck> {
    worked_examples().iter().map(check_worked_example).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic_and_in_range() {
        for i in 0..200 {
            let (m, n) = sample_pair(42, i);
            assert_eq!((m.clone(), n.clone()), sample_pair(42, i));
            for x in [m.birth(), m.death(), n.birth(), n.death()] {
                assert!(!x.is_negative() && x <= &Rational::from_integer(NUMERATOR_MAX));
            }
        }
        assert_ne!(sample_pair(1, 0), sample_pair(2, 0));
    }

    #[test]
    fn equal_and_disjoint_pairs_pass() {
        let m = iv("1", "3");
        assert!(check_theorem_pair(&m, &m).is_empty());
        assert_eq!(progression(&m, &m).onset(), Some(&Rational::zero()));
        let (a, b) = (iv("0", "1"), iv("5", "9"));
        assert!(check_theorem_pair(&a, &b).is_empty());
        assert_eq!(Trichotomy::of(&a, &b), Trichotomy::M1Greater);
        assert_eq!(progression(&a, &b).nonempty_classes()[0], VarietyClass::Origin);
    }

    #[test]
    fn small_sweeps_are_clean() {
        assert!(verify_theorem(300, 5).passed());
        assert!(verify_propositions(300, 5).passed());
        assert!(verify_oracle_agreement(40, 5).passed());
    }

    #[test]
    fn ranges_merge_to_the_whole() {
        let whole = verify_theorem(60, 9);
        let split = verify_theorem_range(9, 0..25).merge(verify_theorem_range(9, 25..60));
        assert_eq!(whole, split);
    }

    #[test]
    fn worked_example_deviations() {
        let checks = check_worked_examples();
        let deviating: Vec<&str> = checks
            .iter()
            .filter(|c| c.deviation().is_some())
            .map(|c| c.example.name)
            .collect();
        assert_eq!(deviating, ["hyperbola1-swapped", "hyperbola2"]);
        assert!(checks.iter().all(|c| c.classes_match));
        let h2 = checks.iter().find(|c| c.example.name == "hyperbola2").unwrap();
        assert_eq!(h2.computed_breakpoints, ticks(&["1/10", "3/5", "11/10"]));
    }
}
