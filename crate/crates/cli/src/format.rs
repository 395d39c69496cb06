//! JSON documents read and written by the command-line tool.
//!
//! Every top-level document carries a `"schema"` field naming its kind and
//! version. Keys are emitted in struct declaration order, which is the order
//! documented on each type. Every number that is not a count or an index is
//! an exact rational string: an integer (`"3"`) or a reduced fraction
//! (`"39/10"`). On input, finite decimals (`"3.9"`, `".9"`) are also
//! accepted and read exactly.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use interleavings_core::classify::{Progression, VarietyClass};
use interleavings_core::hom::HomLifeSummary;
use interleavings_core::interval::{HomWindow, IntervalModule, PersistenceModule};
use interleavings_core::matching::MatchingResult;
use interleavings_core::oracle::{ProbeOutcome, ScalarAssignment};
use interleavings_core::poly::{canonicalize, Polynomial, Variable};
use interleavings_core::variety::{StatusHint, VarietyPresentation};
use interleavings_core::Rational;

pub const MODULE_SCHEMA: &str = "interleavings.module/1";
pub const WINDOWS_SCHEMA: &str = "interleavings.windows/1";
pub const DISTANCE_SCHEMA: &str = "interleavings.distance/1";
pub const VARIETY_SCHEMA: &str = "interleavings.variety/1";
pub const CLASSIFY_SCHEMA: &str = "interleavings.classify/1";
pub const PROGRESSION_SCHEMA: &str = "interleavings.progression/1";
pub const VERIFY_SCHEMA: &str = "interleavings.verify/1";

/// Index convention recorded in every variety document.
pub const CONVENTION: &str = "k[i][j] scales M_j -> N_i shifted by epsilon; \
l[j][i] scales N_i -> M_j shifted by epsilon; indices are 1-based";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected schema `{expected}`, found `{found}`")]
    Schema { expected: &'static str, found: String },
    #[error("{context}: {source}")]
    Rational {
        context: String,
        source: interleavings_core::rational::ParseRationalError,
    },
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: interleavings_core::Error,
    },
    #[error("invalid variable name `{0}`")]
    Variable(String),
    #[error("{0}")]
    Inconsistent(String),
}

type Result<T> = std::result::Result<T, FormatError>;

fn rational(s: &str, context: impl FnOnce() -> String) -> Result<Rational> {
    s.trim().parse().map_err(|source| FormatError::Rational {
        context: context(),
        source,
    })
}

fn variable(s: &str) -> Result<Variable> {
    s.parse().map_err(|_| FormatError::Variable(s.to_string()))
}

fn check_schema(found: &Option<String>, expected: &'static str) -> Result<()> {
    match found {
        Some(s) if s != expected => Err(FormatError::Schema {
            expected,
            found: s.clone(),
        }),
        _ => Ok(()),
    }
}

/// Pretty-printed with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// modules

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalEntry {
    pub birth: String,
    pub death: String,
}

/// Keys: `schema` (top level only), `name`, `intervals`.
///
/// `schema` may be omitted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub name: String,
    pub intervals: Vec<IntervalEntry>,
}

impl ModuleFile {
    pub fn from_module(module: &PersistenceModule) -> ModuleFile {
        ModuleFile {
            schema: Some(MODULE_SCHEMA.to_string()),
            name: module.name.clone(),
            intervals: module
                .summands
                .iter()
                .map(|iv| IntervalEntry {
                    birth: iv.birth().to_string(),
                    death: iv.death().to_string(),
                })
                .collect(),
        }
    }

    fn nested(module: &PersistenceModule) -> ModuleFile {
        ModuleFile {
            schema: None,
            ..ModuleFile::from_module(module)
        }
    }

    pub fn to_module(&self) -> Result<PersistenceModule> {
        check_schema(&self.schema, MODULE_SCHEMA)?;
        let summands = self
            .intervals
            .iter()
            .enumerate()
            .map(|(idx, e)| {
                let context = || format!("module `{}`, interval {}", self.name, idx + 1);
                let b = rational(&e.birth, context)?;
                let d = rational(&e.death, context)?;
                IntervalModule::new(b, d).map_err(|source| FormatError::Core {
                    context: context(),
                    source,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PersistenceModule::new(self.name.clone(), summands))
    }
}

pub fn parse_module(json: &str) -> Result<PersistenceModule> {
    serde_json::from_str::<ModuleFile>(json)?.to_module()
}

pub fn render_module(module: &PersistenceModule) -> String {
    to_json(&ModuleFile::from_module(module))
}

// ---------------------------------------------------------------------------
// hom windows

/// Keys: `kind` (`"empty"` or `"half-open"`), then `lo`, `hi` for half-open
/// windows `[lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<String>,
}

impl WindowDoc {
    pub fn new(w: &HomWindow) -> WindowDoc {
        match w {
            HomWindow::Empty => WindowDoc {
                kind: "empty".into(),
                lo: None,
                hi: None,
            },
            HomWindow::Window { lo, hi } => WindowDoc {
                kind: "half-open".into(),
                lo: Some(lo.to_string()),
                hi: Some(hi.to_string()),
            },
        }
    }
}

/// Keys: `source`, `target` (1-based summand indices), `window`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEntry {
    pub source: usize,
    pub target: usize,
    pub window: WindowDoc,
}

/// All windows `S(X_source, Y_target)`; keys `from`, `to`, `entries`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowTable {
    pub from: String,
    pub to: String,
    pub entries: Vec<WindowEntry>,
}

/// Keys: `schema`, `tables` (in the order M->N, N->M, M->M, N->N).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowsDoc {
    pub schema: String,
    pub tables: Vec<WindowTable>,
}

fn window_table(x: &PersistenceModule, y: &PersistenceModule) -> WindowTable {
    let mut entries = Vec::new();
    for (s, xs) in x.summands.iter().enumerate() {
        for (t, yt) in y.summands.iter().enumerate() {
            entries.push(WindowEntry {
                source: s + 1,
                target: t + 1,
                window: WindowDoc::new(&interleavings_core::hom_window(xs, yt)),
            });
        }
    }
    WindowTable {
        from: x.name.clone(),
        to: y.name.clone(),
        entries,
    }
}

pub fn windows_doc(m: &PersistenceModule, n: &PersistenceModule) -> WindowsDoc {
    WindowsDoc {
        schema: WINDOWS_SCHEMA.into(),
        tables: vec![
            window_table(m, n),
            window_table(n, m),
            window_table(m, m),
            window_table(n, n),
        ],
    }
}

// ---------------------------------------------------------------------------
// distance

/// Keys: `m`, `n` (1-based summand indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchedPair {
    pub m: usize,
    pub n: usize,
}

/// Keys: `schema`, `method` (`"hom-life"` for single intervals, `"matching"`
/// otherwise), `distance`, then for single intervals `m1`, `m2`, `sigma`,
/// `tau`, `sigma_prime`, `tau_prime`, then `matching`, `unmatched_m`,
/// `unmatched_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceDoc {
    pub schema: String,
    pub method: String,
    pub distance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_prime: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_prime: Option<String>,
    pub matching: Vec<MatchedPair>,
    pub unmatched_m: Vec<usize>,
    pub unmatched_n: Vec<usize>,
}

pub fn distance_doc(life: Option<&HomLifeSummary>, matching: &MatchingResult) -> DistanceDoc {
    let s = |r: &Rational| Some(r.to_string());
    DistanceDoc {
        schema: DISTANCE_SCHEMA.into(),
        method: if life.is_some() { "hom-life" } else { "matching" }.into(),
        distance: life
            .map(|l| &l.distance)
            .unwrap_or(&matching.distance)
            .to_string(),
        m1: life.and_then(|l| s(&l.m1)),
        m2: life.and_then(|l| s(&l.m2)),
        sigma: life.and_then(|l| s(&l.sigma)),
        tau: life.and_then(|l| s(&l.tau)),
        sigma_prime: life.and_then(|l| s(&l.sigma_prime)),
        tau_prime: life.and_then(|l| s(&l.tau_prime)),
        matching: matching
            .matching
            .iter()
            .map(|&(m, n)| MatchedPair { m: m + 1, n: n + 1 })
            .collect(),
        unmatched_m: matching.unmatched_m.iter().map(|i| i + 1).collect(),
        unmatched_n: matching.unmatched_n.iter().map(|i| i + 1).collect(),
    }
}

// ---------------------------------------------------------------------------
// variety presentations

/// Keys: `coefficient`, `monomial` (variable names, empty for the constant
/// term).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub coefficient: String,
    pub monomial: Vec<String>,
}

/// Keys: `text` (display form, informational), `terms` (canonical order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDoc {
    pub text: String,
    pub terms: Vec<TermDoc>,
}

impl PolynomialDoc {
    pub fn new(p: &Polynomial) -> PolynomialDoc {
        PolynomialDoc {
            text: p.to_string(),
            terms: p
                .terms()
                .map(|(m, c)| TermDoc {
                    coefficient: c.to_string(),
                    monomial: m.variables().iter().map(|v| v.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let c = rational(&t.coefficient, || format!("generator `{}`", self.text))?;
                let vars = t
                    .monomial
                    .iter()
                    .map(|v| variable(v))
                    .collect::<Result<Vec<_>>>()?;
                Ok((vars, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(canonicalize(terms))
    }
}

/// Keys: `variable`, `value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueDoc {
    pub variable: String,
    pub value: String,
}

fn assignment_doc(a: &ScalarAssignment) -> Vec<ValueDoc> {
    let k = a.k_values.iter().map(|(&(r, c), v)| (Variable::k(r, c), v));
    let l = a.l_values.iter().map(|(&(r, c), v)| (Variable::l(r, c), v));
    k.chain(l)
        .map(|(var, v)| ValueDoc {
            variable: var.to_string(),
            value: v.to_string(),
        })
        .collect()
}

fn parse_assignment(values: &[ValueDoc]) -> Result<ScalarAssignment> {
    let mut a = ScalarAssignment::new();
    for v in values {
        let var = variable(&v.variable)?;
        a.set(var, rational(&v.value, || format!("witness `{}`", v.variable))?);
    }
    Ok(a)
}

/// Keys: `budget`, `seed`, `outcome` (`"witness-found"` or
/// `"no-witness-in-budget"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeDoc {
    pub budget: usize,
    pub seed: u64,
    pub outcome: String,
}

impl ProbeDoc {
    pub fn new(budget: usize, seed: u64, outcome: &ProbeOutcome) -> ProbeDoc {
        ProbeDoc {
            budget,
            seed,
            outcome: match outcome {
                ProbeOutcome::WitnessFound(_) => "witness-found",
                ProbeOutcome::NoWitnessInBudget => "no-witness-in-budget",
            }
            .into(),
        }
    }
}

/// Keys: `schema`, `convention`, `m_module`, `n_module`, `epsilon`,
/// `variables`, `forced_zero`, `free_variables`, `active_m`, `active_n`
/// (1-based `[p, q]` pairs), `generators`, `status_hint` (`"unknown"`,
/// `"provably-empty"` or `"witness-found"`), `witness`, `probe`.
///
/// `convention`, `variables`, `free_variables` and generator `text` are
/// derived and ignored on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDoc {
    pub schema: String,
    pub convention: String,
    pub m_module: ModuleFile,
    pub n_module: ModuleFile,
    pub epsilon: String,
    pub variables: Vec<String>,
    pub forced_zero: Vec<String>,
    pub free_variables: Vec<String>,
    pub active_m: Vec<[usize; 2]>,
    pub active_n: Vec<[usize; 2]>,
    pub generators: Vec<PolynomialDoc>,
    pub status_hint: String,
    pub witness: Option<Vec<ValueDoc>>,
    pub probe: Option<ProbeDoc>,
}

fn status_name(s: StatusHint) -> &'static str {
    match s {
        StatusHint::ProvablyEmpty => "provably-empty",
        StatusHint::WitnessFound => "witness-found",
        StatusHint::Unknown => "unknown",
    }
}

fn names(vars: impl IntoIterator<Item = Variable>) -> Vec<String> {
    vars.into_iter().map(|v| v.to_string()).collect()
}

impl VarietyDoc {
    pub fn new(p: &VarietyPresentation, probe: Option<ProbeDoc>) -> VarietyDoc {
        VarietyDoc {
            schema: VARIETY_SCHEMA.into(),
            convention: CONVENTION.into(),
            m_module: ModuleFile::nested(&p.m_module),
            n_module: ModuleFile::nested(&p.n_module),
            epsilon: p.epsilon.to_string(),
            variables: names(p.variables()),
            forced_zero: names(p.forced_zero.iter().copied()),
            free_variables: names(p.free_variables()),
            active_m: p.active_m.iter().map(|&(a, b)| [a, b]).collect(),
            active_n: p.active_n.iter().map(|&(a, b)| [a, b]).collect(),
            generators: p.generators.iter().map(PolynomialDoc::new).collect(),
            status_hint: status_name(p.status_hint).into(),
            witness: p.witness.as_ref().map(assignment_doc),
            probe,
        }
    }

    pub fn to_presentation(&self) -> Result<VarietyPresentation> {
        if self.schema != VARIETY_SCHEMA {
            return Err(FormatError::Schema {
                expected: VARIETY_SCHEMA,
                found: self.schema.clone(),
            });
        }
        let m_module = self.m_module.to_module()?;
        let n_module = self.n_module.to_module()?;
        let (m, n) = (m_module.len(), n_module.len());
        let pairs = |xs: &[[usize; 2]], size: usize, what: &str| -> Result<BTreeSet<(usize, usize)>> {
            xs.iter()
                .map(|&[a, b]| {
                    if (1..=size).contains(&a) && (1..=size).contains(&b) {
                        Ok((a, b))
                    } else {
                        Err(FormatError::Inconsistent(format!(
                            "{what} entry [{a}, {b}] outside 1..={size}"
                        )))
                    }
                })
                .collect()
        };
        let status_hint = match self.status_hint.as_str() {
            "provably-empty" => StatusHint::ProvablyEmpty,
            "witness-found" => StatusHint::WitnessFound,
            "unknown" => StatusHint::Unknown,
            other => {
                return Err(FormatError::Inconsistent(format!(
                    "unknown status_hint `{other}`"
                )))
            }
        };
        let p = VarietyPresentation {
            epsilon: rational(&self.epsilon, || "epsilon".into())?,
            forced_zero: self
                .forced_zero
                .iter()
                .map(|v| variable(v))
                .collect::<Result<_>>()?,
            active_m: pairs(&self.active_m, m, "active_m")?,
            active_n: pairs(&self.active_n, n, "active_n")?,
            generators: self
                .generators
                .iter()
                .map(PolynomialDoc::to_polynomial)
                .collect::<Result<_>>()?,
            status_hint,
            witness: self.witness.as_deref().map(parse_assignment).transpose()?,
            m_module,
            n_module,
            m,
            n,
        };
        let grid: BTreeSet<Variable> = p.variables().into_iter().collect();
        let mentioned = p
            .forced_zero
            .iter()
            .copied()
            .chain(p.generators.iter().flat_map(|g| g.variables()));
        for v in mentioned {
            if !grid.contains(&v) {
                return Err(FormatError::Inconsistent(format!(
                    "variable {v} does not fit a {m}x{n} presentation"
                )));
            }
        }
        Ok(p)
    }
}

pub fn render_variety(p: &VarietyPresentation, probe: Option<ProbeDoc>) -> String {
    to_json(&VarietyDoc::new(p, probe))
}

pub fn parse_variety(json: &str) -> Result<VarietyPresentation> {
    serde_json::from_str::<VarietyDoc>(json)?.to_presentation()
}

// ---------------------------------------------------------------------------
// classification and progressions

/// Keys: `schema`, `m`, `n` (interval strings), `epsilon`, `class`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyDoc {
    pub schema: String,
    pub m: String,
    pub n: String,
    pub epsilon: String,
    pub class: String,
}

pub fn classify_doc(m: &IntervalModule, n: &IntervalModule, e: &Rational, c: VarietyClass) -> ClassifyDoc {
    ClassifyDoc {
        schema: CLASSIFY_SCHEMA.into(),
        m: m.to_string(),
        n: n.to_string(),
        epsilon: e.to_string(),
        class: c.name().into(),
    }
}

/// Keys: `start`, `end` (`null` for the unbounded last segment), `class`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentDoc {
    pub start: String,
    pub end: Option<String>,
    pub class: String,
}

/// Keys: `schema`, `m`, `n`, `distance`, `breakpoints`, `segments`,
/// `predicted` (nonempty classes expected from `m1` vs `m2`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionDoc {
    pub schema: String,
    pub m: String,
    pub n: String,
    pub distance: String,
    pub breakpoints: Vec<String>,
    pub segments: Vec<SegmentDoc>,
    pub predicted: Vec<String>,
}

pub fn progression_doc(
    m: &IntervalModule,
    n: &IntervalModule,
    p: &Progression,
    distance: &Rational,
    predicted: &[VarietyClass],
) -> ProgressionDoc {
    ProgressionDoc {
        schema: PROGRESSION_SCHEMA.into(),
        m: m.to_string(),
        n: n.to_string(),
        distance: distance.to_string(),
        breakpoints: p.breakpoints.iter().map(|b| b.to_string()).collect(),
        segments: p
            .segments
            .iter()
            .enumerate()
            .map(|(i, s)| SegmentDoc {
                start: s.start.to_string(),
                end: p.segment_end(i).map(|e| e.to_string()),
                class: s.class.name().into(),
            })
            .collect(),
        predicted: predicted.iter().map(|c| c.name().into()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use interleavings_core::rational::q;
    use interleavings_core::build_variety;

    fn iv(b: &str, d: &str) -> IntervalModule {
        IntervalModule::new(q(b), q(d)).unwrap()
    }

    #[test]
    fn module_decimals_are_exact() {
        let m = parse_module(
            r#"{"name": "M", "intervals": [{"birth": "1", "death": "4"}, {"birth": "1.2", "death": "3.9"}]}"#,
        )
        .unwrap();
        assert_eq!(m.summands[1], iv("6/5", "39/10"));
        let text = render_module(&m);
        assert!(text.contains("\"39/10\""));
        assert_eq!(parse_module(&text).unwrap(), m);
    }

    #[test]
    fn module_errors() {
        assert!(matches!(parse_module("{"), Err(FormatError::Json(_))));
        let degenerate = r#"{"name": "M", "intervals": [{"birth": "2", "death": "2"}]}"#;
        assert!(matches!(parse_module(degenerate), Err(FormatError::Core { .. })));
        let bad = r#"{"name": "M", "intervals": [{"birth": "0.1.2", "death": "2"}]}"#;
        assert!(matches!(parse_module(bad), Err(FormatError::Rational { .. })));
        let schema = r#"{"schema": "other/1", "name": "M", "intervals": []}"#;
        assert!(matches!(parse_module(schema), Err(FormatError::Schema { .. })));
        let extra = r#"{"name": "M", "intervals": [], "colour": 1}"#;
        assert!(parse_module(extra).is_err());
    }

    #[test]
    fn variety_round_trip() {
        let m = PersistenceModule::new("M", vec![iv("1", "4"), iv("1.2", "3.9")]);
        let n = PersistenceModule::new("N", vec![iv("1", "4"), iv("0.9", "4.1")]);
        for e in ["0", "0.2", "0.4", "1.55", "3"] {
            let p = build_variety(&m, &n, &q(e)).unwrap();
            assert_eq!(parse_variety(&render_variety(&p, None)).unwrap(), p);
        }
        let mut p = build_variety(&m, &n, &q("0.4")).unwrap();
        p.status_hint = StatusHint::WitnessFound;
        p.witness = Some(
            ScalarAssignment::new()
                .with(Variable::k(1, 2), q("-3/2"))
                .with(Variable::l(2, 1), q("-2/3")),
        );
        let text = render_variety(&p, Some(ProbeDoc::new(10, 1, &ProbeOutcome::NoWitnessInBudget)));
        assert_eq!(parse_variety(&text).unwrap(), p);
    }

    #[test]
    fn variety_rejects_foreign_variables() {
        let m = PersistenceModule::single("M", iv("0", "1"));
        let p = build_variety(&m, &m, &q("0")).unwrap();
        let text = render_variety(&p, None).replace("k[1][1]", "k[3][1]");
        assert!(matches!(parse_variety(&text), Err(FormatError::Inconsistent(_))));
    }
}
