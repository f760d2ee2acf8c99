//! Dimension of tensor products `A1 ⊗_k A2`.
//!
//! Each quantity is computed by trying a fixed list of rules in order. A
//! rule first checks its hypotheses on the invariants of both factors; the
//! first rule whose hypotheses all pass is authoritative and its
//! [`Trace`] records the checks and the arithmetic. When no closed form
//! applies the engine returns certified bounds instead.

mod compute_d;
mod jaffard;
mod krull;
mod quantities;
mod trace;
mod valuative;

use serde::Serialize;

use crate::dim::{DimValue, TriState};
use crate::invariants::{bundle, InvariantBundle, PullbackData};
use crate::model::AlgebraExpr;

pub use compute_d::compute_d;
pub use jaffard::{jaffard_criterion, tensor_jaffard};
pub use krull::{applicable_rules, evaluate_rule, tensor_krull_dim};
pub use quantities::{alpha_values, lemma18_bounds, raw_theorem19, Alphas, Lemma18Bounds};
pub use trace::{HypothesisCheck, RuleId, Trace};
pub use valuative::{pullback_pair_vdim, tensor_valuative_dim};

/// A certified value together with its derivation.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Evaluation {
    pub value: DimValue,
    pub trace: Trace,
}

impl Evaluation {
    pub fn new(value: DimValue, trace: Trace) -> Self {
        Evaluation { value, trace }
    }

    /// The rule that produced the value.
    pub fn rule(&self) -> RuleId {
        self.trace.rule_id
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Verdict {
    pub value: TriState,
    pub trace: Trace,
}

/// Both factors with their invariants, computed once per dispatch.
pub(crate) struct Pair<'a> {
    pub a: &'a AlgebraExpr,
    pub b: &'a AlgebraExpr,
    pub ia: InvariantBundle,
    pub ib: InvariantBundle,
}

impl<'a> Pair<'a> {
    pub fn new(a: &'a AlgebraExpr, b: &'a AlgebraExpr) -> Self {
        Pair {
            a,
            b,
            ia: bundle(a),
            ib: bundle(b),
        }
    }

    pub fn pullbacks(&self) -> Option<(PullbackData<'a>, PullbackData<'a>)> {
        Some((PullbackData::of(self.a)?, PullbackData::of(self.b)?))
    }

    /// `min(dim_v A1 + tdeg A2, dim_v A2 + tdeg A1)`, an upper bound for
    /// both `dim` and `dim_v` of the tensor product.
    pub fn vdim_upper(&self) -> u32 {
        (self.ia.valuative_dim.hi() + self.ib.tdeg).min(self.ib.valuative_dim.hi() + self.ia.tdeg)
    }

    /// Each factor embeds faithfully flatly, so `dim` is at least the larger
    /// factor dimension.
    pub fn flat_lower(&self) -> u32 {
        self.ia.krull_dim.lo().max(self.ib.krull_dim.lo())
    }
}

/// Hypotheses shared by the pullback-pair closed forms: `Ti` and `Di` are
/// AF-certified and `ht Mi = dim Ti` for both factors.
pub(crate) fn af_pullback_pair_checks(p1: &PullbackData<'_>, p2: &PullbackData<'_>) -> Vec<HypothesisCheck> {
    let mut checks = Vec::with_capacity(6);
    for (i, p) in [(1, p1), (2, p2)] {
        checks.push(HypothesisCheck::new(format!("T{i} is AF-certified"), p.ambient_is_af()));
        checks.push(HypothesisCheck::new(format!("D{i} is AF-certified"), p.subring_is_af()));
        checks.push(HypothesisCheck::new(
            format!("ht M{i} = dim T{i} ({} vs {})", p.height(), p.ambient.krull_dim),
            p.height_is_dim(),
        ));
    }
    checks
}

pub(crate) fn all_pass(checks: &[HypothesisCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}
