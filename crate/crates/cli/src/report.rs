//! The `verify` sweeps, run in parallel, and their JSON report.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use interleavings_core::classify::VarietyClass;
use interleavings_core::verify::{
    check_worked_examples, verify_oracle_range, verify_propositions_range, verify_theorem_range,
    Discrepancy, OracleReport, PropositionReport, PropositionViolation, TheoremReport,
    TheoremViolation, WorkedExampleCheck,
};

use crate::format::VERIFY_SCHEMA;

/// Samples per parallel work item. Any value gives the same report.
const CHUNK: u64 = 128;

fn chunks(total: u64) -> Vec<std::ops::Range<u64>> {
    (0..total.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(total))
        .collect()
}

pub fn theorem_sweep(samples: u64, seed: u64) -> TheoremReport {
    chunks(samples)
        .into_par_iter()
        .map(|r| verify_theorem_range(seed, r))
        .reduce(TheoremReport::default, TheoremReport::merge)
}

pub fn proposition_sweep(samples: u64, seed: u64) -> PropositionReport {
    chunks(samples)
        .into_par_iter()
        .map(|r| verify_propositions_range(seed, r))
        .reduce(PropositionReport::default, PropositionReport::merge)
}

pub fn oracle_sweep(pairs: u64, seed: u64) -> OracleReport {
    chunks(pairs)
        .into_par_iter()
        .map(|r| verify_oracle_range(seed, r))
        .reduce(OracleReport::default, OracleReport::merge)
}

/// Keys: `index`, `m`, `n`, `kind`, `detail`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyDoc {
    pub index: u64,
    pub m: String,
    pub n: String,
    pub kind: String,
    pub detail: String,
}

fn classes(cs: &[VarietyClass]) -> String {
    cs.iter().map(|c| c.name()).collect::<Vec<_>>().join(", ")
}

fn discrepancy_doc<V>(d: &Discrepancy<V>, describe: impl Fn(&V) -> (&'static str, String)) -> DiscrepancyDoc {
    let (kind, detail) = describe(&d.violation);
    DiscrepancyDoc {
        index: d.index,
        m: d.m.to_string(),
        n: d.n.to_string(),
        kind: kind.into(),
        detail,
    }
}

fn theorem_violation(v: &TheoremViolation) -> (&'static str, String) {
    match v {
        TheoremViolation::SequenceMismatch { observed, predicted } => (
            "sequence-mismatch",
            format!("observed [{}], predicted [{}]", classes(observed), classes(predicted)),
        ),
        TheoremViolation::FirstClassMismatch { first, case } => (
            "first-class-mismatch",
            format!(
                "first nonempty class {} with {}",
                first.map_or("none", |c| c.name()),
                case.name()
            ),
        ),
        TheoremViolation::OnsetMismatch { onset, distance } => (
            "onset-mismatch",
            format!(
                "first nonempty at {}, distance {distance}",
                onset.as_ref().map_or("never".to_string(), |o| o.to_string())
            ),
        ),
        TheoremViolation::OutsideTaxonomy { observed } => (
            "outside-taxonomy",
            format!("observed [{}]", classes(observed)),
        ),
    }
}

fn proposition_violation(v: &PropositionViolation) -> (&'static str, String) {
    match v {
        PropositionViolation::LastBirth { observed, expected } => (
            "last-birth",
            format!("max(sigma, tau) = {observed}, expected {expected}"),
        ),
        PropositionViolation::LastDeath { observed, expected } => (
            "last-death",
            format!("max(sigma', tau') = {observed}, expected {expected}"),
        ),
        PropositionViolation::SingleSurvivor => (
            "single-survivor",
            "m1 >= m2 but not exactly one hom survives to the distance".into(),
        ),
    }
}

/// Keys: `samples`, `m1_greater`, `m1_equal`, `m1_less`, `equal_pairs`,
/// `disjoint_pairs`, `discrepancies`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremDoc {
    pub samples: u64,
    pub m1_greater: u64,
    pub m1_equal: u64,
    pub m1_less: u64,
    pub equal_pairs: u64,
    pub disjoint_pairs: u64,
    pub discrepancies: Vec<DiscrepancyDoc>,
}

/// Keys: `samples`, `survivor_checks`, `discrepancies`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionDoc {
    pub samples: u64,
    pub survivor_checks: u64,
    pub discrepancies: Vec<DiscrepancyDoc>,
}

/// Keys: `pairs`, `points`, `discrepancies`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub pairs: u64,
    pub points: u64,
    pub discrepancies: Vec<DiscrepancyDoc>,
}

/// Keys: `name`, `m`, `n`, `reference_ticks`, `computed_breakpoints`,
/// `reference_classes`, `computed_classes`, `status` (`"match"` or
/// `"deviation"`), `detail`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkedExampleDoc {
    pub name: String,
    pub m: String,
    pub n: String,
    pub reference_ticks: Vec<String>,
    pub computed_breakpoints: Vec<String>,
    pub reference_classes: Vec<String>,
    pub computed_classes: Vec<String>,
    pub status: String,
    pub detail: Option<String>,
}

impl WorkedExampleDoc {
    fn new(c: &WorkedExampleCheck) -> WorkedExampleDoc {
        let strs = |xs: &[interleavings_core::Rational]| xs.iter().map(|x| x.to_string()).collect();
        let names = |cs: &[VarietyClass]| cs.iter().map(|c| c.name().to_string()).collect();
        let detail = c.deviation();
        WorkedExampleDoc {
            name: c.example.name.into(),
            m: c.example.m.to_string(),
            n: c.example.n.to_string(),
            reference_ticks: strs(&c.example.reference_ticks),
            computed_breakpoints: strs(&c.computed_breakpoints),
            reference_classes: names(&c.example.reference_classes),
            computed_classes: names(&c.computed_classes),
            status: if detail.is_some() { "deviation" } else { "match" }.into(),
            detail,
        }
    }
}

/// Keys: `schema`, `seed`, `passed`, `theorem`, `propositions`, `oracle`,
/// `worked_examples`.
///
/// `passed` covers the three sweeps. Worked examples whose reference ticks
/// disagree with the computed breakpoints are reported with status
/// `"deviation"` and do not affect `passed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub schema: String,
    pub seed: u64,
    pub passed: bool,
    pub theorem: TheoremDoc,
    pub propositions: PropositionDoc,
    pub oracle: OracleDoc,
    pub worked_examples: Vec<WorkedExampleDoc>,
}

pub fn run_verify(samples: u64, oracle_samples: u64, seed: u64) -> VerifyDoc {
    let (theorem, (propositions, oracle)) = rayon::join(
        || theorem_sweep(samples, seed),
        || {
            rayon::join(
                || proposition_sweep(samples, seed),
                || oracle_sweep(oracle_samples, seed),
            )
        },
    );
    let passed = theorem.passed() && propositions.passed() && oracle.passed();
    VerifyDoc {
        schema: VERIFY_SCHEMA.into(),
        seed,
        passed,
        theorem: TheoremDoc {
            samples: theorem.samples,
            m1_greater: theorem.m1_greater,
            m1_equal: theorem.m1_equal,
            m1_less: theorem.m1_less,
            equal_pairs: theorem.equal_pairs,
            disjoint_pairs: theorem.disjoint_pairs,
            discrepancies: theorem
                .discrepancies
                .iter()
                .map(|d| discrepancy_doc(d, theorem_violation))
                .collect(),
        },
        propositions: PropositionDoc {
            samples: propositions.samples,
            survivor_checks: propositions.survivor_checks,
            discrepancies: propositions
                .discrepancies
                .iter()
                .map(|d| discrepancy_doc(d, proposition_violation))
                .collect(),
        },
        oracle: OracleDoc {
            pairs: oracle.pairs,
            points: oracle.points,
            discrepancies: oracle
                .discrepancies
                .iter()
                .map(|d| {
                    discrepancy_doc(d, |v| {
                        (
                            "oracle-disagreement",
                            format!(
                                "at epsilon {}: classify {}, oracle {}",
                                v.epsilon, v.symbolic, v.oracle
                            ),
                        )
                    })
                })
                .collect(),
        },
        worked_examples: check_worked_examples().iter().map(WorkedExampleDoc::new).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use interleavings_core::verify::verify_theorem;

    #[test]
    fn parallel_sweep_matches_sequential() {
        assert_eq!(theorem_sweep(300, 11), verify_theorem(300, 11));
        assert_eq!(chunks(0).len(), 0);
        assert_eq!(chunks(129), vec![0..128, 128..129]);
    }

    #[test]
    fn small_report_passes_and_flags_deviations() {
        let doc = run_verify(200, 20, 3);
        assert!(doc.passed);
        let deviating: Vec<&str> = doc
            .worked_examples
            .iter()
            .filter(|w| w.status == "deviation")
            .map(|w| w.name.as_str())
            .collect();
        assert_eq!(deviating, ["hyperbola1-swapped", "hyperbola2"]);
    }
}
