//! Randomized cross-checks of the tensor engine.
//!
//! Terms come from a seeded generator; every pair is run through each
//! property and failures are shrunk to a small counterexample.

mod generate;
mod properties;
mod shrink;

use serde::Serialize;

pub use generate::{generate, generate_pairs, Generator, GeneratorConfig};
pub use properties::{Check, Property, PROPERTIES};
pub use shrink::{candidates, shrink_pair};

/// Counterexamples kept per property.
const MAX_COUNTEREXAMPLES: usize = 3;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub a: String,
    pub b: String,
    pub message: String,
    pub shrunk_a: String,
    pub shrunk_b: String,
    pub shrunk_message: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyReport {
    pub id: &'static str,
    pub description: &'static str,
    /// Pairs on which the property's hypotheses held.
    pub applicable: usize,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteReport {
    pub config: GeneratorConfig,
    pub pairs: usize,
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn property(&self, id: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "{} pairs (seed {}, depth <= {}, tdeg <= {}, dim <= {})\n",
            self.pairs, self.config.seed, self.config.max_depth, self.config.max_tdeg, self.config.max_dim
        );
        for p in &self.properties {
            let status = if p.failed == 0 { "ok" } else { "FAIL" };
            out.push_str(&format!(
                "{} {status}: {} applicable, {} passed, {} failed - {}\n",
                p.id, p.applicable, p.passed, p.failed, p.description
            ));
            for c in &p.counterexamples {
                out.push_str(&format!(
                    "  counterexample: {} ⊗ {}\n    {}\n  shrunk: {} ⊗ {}\n    {}\n",
                    c.a, c.b, c.message, c.shrunk_a, c.shrunk_b, c.shrunk_message
                ));
            }
        }
        out
    }
}

/// Runs every property on `cfg.count` generated pairs.
pub fn run_suites(cfg: &GeneratorConfig) -> SuiteReport {
    let pairs = generate_pairs(cfg);
    let properties = PROPERTIES
        .iter()
        .map(|prop| {
            let mut report = PropertyReport {
                id: prop.id,
                description: prop.description,
                applicable: 0,
                passed: 0,
                failed: 0,
                counterexamples: Vec::new(),
            };
            for (a, b) in &pairs {
                match prop.check(a, b) {
                    Check::NotApplicable => continue,
                    Check::Pass => report.passed += 1,
                    Check::Fail(message) => {
                        report.failed += 1;
                        if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                            report.counterexamples.push(counterexample(prop, a, b, message));
                        }
                    }
                }
                report.applicable += 1;
            }
            report
        })
        .collect();
    SuiteReport {
        config: *cfg,
        pairs: pairs.len(),
        properties,
    }
}

fn counterexample(
    prop: &Property,
    a: &crate::model::AlgebraExpr,
    b: &crate::model::AlgebraExpr,
    message: String,
) -> Counterexample {
    let fails = |x: &_, y: &_| matches!(prop.check(x, y), Check::Fail(_));
    let (sa, sb) = shrink_pair(a.clone(), b.clone(), fails);
    let shrunk_message = match prop.check(&sa, &sb) {
        Check::Fail(m) => m,
        _ => message.clone(),
    };
    Counterexample {
        a: a.to_string(),
        b: b.to_string(),
        message,
        shrunk_a: sa.to_string(),
        shrunk_b: sb.to_string(),
        shrunk_message,
    }
}
