use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::dim::DimValue;

/// Identifier of a dimension rule. The serialized names are stable and
/// appear in machine-readable output.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum RuleId {
    #[serde(rename = "F1-Sharp")]
    F1Sharp,
    #[serde(rename = "F2-Wadsworth")]
    F2Wadsworth,
    #[serde(rename = "F3-OneAF")]
    F3OneAf,
    #[serde(rename = "F4-Thm1.9")]
    F4PullbackPair,
    #[serde(rename = "F5-Thm3.2")]
    F5Recursive,
    #[serde(rename = "F6-Cor3.3")]
    F6SelfTensor,
    #[serde(rename = "FB-Bounds")]
    FbBounds,
    #[serde(rename = "V1-Thm2.3")]
    V1PullbackPair,
    #[serde(rename = "V2-UpperBound")]
    V2UpperBound,
    #[serde(rename = "V3-AFRing")]
    V3AfRing,
    #[serde(rename = "J1-Thm3.1")]
    J1Criterion,
    #[serde(rename = "D-field")]
    DField,
    #[serde(rename = "D-AF")]
    DAf,
    #[serde(rename = "D-pullback")]
    DPullback,
    #[serde(rename = "D-zero")]
    DZero,
}

impl RuleId {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::F1Sharp => "F1-Sharp",
            RuleId::F2Wadsworth => "F2-Wadsworth",
            RuleId::F3OneAf => "F3-OneAF",
            RuleId::F4PullbackPair => "F4-Thm1.9",
            RuleId::F5Recursive => "F5-Thm3.2",
            RuleId::F6SelfTensor => "F6-Cor3.3",
            RuleId::FbBounds => "FB-Bounds",
            RuleId::V1PullbackPair => "V1-Thm2.3",
            RuleId::V2UpperBound => "V2-UpperBound",
            RuleId::V3AfRing => "V3-AFRing",
            RuleId::J1Criterion => "J1-Thm3.1",
            RuleId::DField => "D-field",
            RuleId::DAf => "D-AF",
            RuleId::DPullback => "D-pullback",
            RuleId::DZero => "D-zero",
        }
    }

    /// Short label used in one-line text reports.
    pub fn summary(self) -> &'static str {
        match self {
            RuleId::F1Sharp => "Sharp",
            RuleId::F2Wadsworth => "Wadsworth",
            RuleId::F3OneAf => "Wadsworth, one AF factor",
            RuleId::F4PullbackPair => "Thm 1.9",
            RuleId::F5Recursive => "Thm 3.2",
            RuleId::F6SelfTensor => "Cor 3.3",
            RuleId::FbBounds => "bounds",
            RuleId::V1PullbackPair => "Thm 2.3",
            RuleId::V2UpperBound => "dim_v upper bound",
            RuleId::V3AfRing => "AF-ring",
            RuleId::J1Criterion => "Thm 3.1",
            RuleId::DField => "D over a field",
            RuleId::DAf => "D over an AF-domain",
            RuleId::DPullback => "D over a pullback",
            RuleId::DZero => "D with s = 0",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HypothesisCheck {
    pub condition: String,
    pub passed: bool,
}

impl HypothesisCheck {
    pub fn new(condition: impl Into<String>, passed: bool) -> Self {
        HypothesisCheck {
            condition: condition.into(),
            passed,
        }
    }
}

/// One node of a derivation: the rule tried, its hypothesis checks, the
/// intermediate arithmetic, and the sub-derivations it relied on.
///
/// Rejected nodes are kept only for explanation; they are the only nodes
/// allowed to carry a failed check.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Trace {
    pub rule_id: RuleId,
    pub applied: bool,
    pub hypothesis_checks: Vec<HypothesisCheck>,
    pub notes: Vec<String>,
    pub children: Vec<Trace>,
    pub value: Option<DimValue>,
}

impl Trace {
    pub fn applied(rule_id: RuleId, checks: Vec<HypothesisCheck>) -> Self {
        Trace {
            rule_id,
            applied: true,
            hypothesis_checks: checks,
            notes: Vec::new(),
            children: Vec::new(),
            value: None,
        }
    }

    pub fn rejected(rule_id: RuleId, checks: Vec<HypothesisCheck>) -> Self {
        Trace {
            applied: false,
            ..Trace::applied(rule_id, checks)
        }
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    pub fn child(mut self, child: Trace) -> Self {
        self.children.push(child);
        self
    }

    pub fn with_value(mut self, value: DimValue) -> Self {
        self.value = Some(value);
        self
    }

    /// Every applied node has only passing checks.
    pub fn is_sound(&self) -> bool {
        (!self.applied || self.hypothesis_checks.iter().all(|c| c.passed))
            && self.children.iter().all(Trace::is_sound)
    }

    /// Rule ids of all applied nodes, depth first.
    pub fn applied_rules(&self) -> Vec<RuleId> {
        let mut out = Vec::new();
        self.collect_applied(&mut out);
        out
    }

    fn collect_applied(&self, out: &mut Vec<RuleId>) {
        if self.applied {
            out.push(self.rule_id);
        }
        for c in &self.children {
            c.collect_applied(out);
        }
    }

    /// Indented multi-line rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0);
        out
    }

    fn render_into(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let _ = write!(out, "{pad}{}", self.rule_id);
        if !self.applied {
            out.push_str(" (rejected)");
        }
        if let Some(v) = self.value {
            let _ = write!(out, " = {v}");
        }
        out.push('\n');
        for c in &self.hypothesis_checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            let _ = writeln!(out, "{pad}  [{mark}] {}", c.condition);
        }
        for n in &self.notes {
            let _ = writeln!(out, "{pad}  - {n}");
        }
        for c in &self.children {
            c.render_into(out, depth + 1);
        }
    }
}
