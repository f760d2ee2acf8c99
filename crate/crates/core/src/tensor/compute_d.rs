//! Closed forms for `D(s, d, A) = max_p { ht p[s] + min(s, d + tdeg(A/p)) }`.

use crate::dim::DimValue;
use crate::error::{Error, Result};
use crate::invariants::{bundle, check, PullbackData};
use crate::model::AlgebraExpr;

use super::trace::{HypothesisCheck, RuleId, Trace};
use super::Evaluation;

/// Evaluates `D(s, d, A)` on the algebra classes where it has a closed form.
///
/// Fails with [`Error::UnsupportedAlgebraClass`] elsewhere so that callers
/// can fall back to bounds.
pub fn compute_d(s: u32, d: u32, a: &AlgebraExpr) -> Result<Evaluation> {
    check(a)?;
    compute_d_unchecked(s, d, a)
}

pub(crate) fn compute_d_unchecked(s: u32, d: u32, a: &AlgebraExpr) -> Result<Evaluation> {
    if d > s {
        return Err(Error::PreconditionViolated(format!(
            "D(s, d, A) needs 0 <= d <= s, got s = {s}, d = {d}"
        )));
    }
    let b = bundle(a);

    if s == 0 {
        // Δ(0, d, p) = ht p
        let trace = Trace::applied(RuleId::DZero, vec![HypothesisCheck::new("s = 0", true)])
            .note(format!("D(0, {d}, A) = dim A = {}", b.krull_dim))
            .with_value(b.krull_dim);
        return Ok(Evaluation::new(b.krull_dim, trace));
    }

    if b.is_af.is_yes() {
        // For an AF-domain ht p[s] = ht p and tdeg(A/p) = tdeg A - ht p, so
        // Δ(s, d, p) = min(s + ht p, d + tdeg A), maximal at ht p = dim A.
        let value = (b.krull_dim + s).min(DimValue::exact(d + b.tdeg));
        let (rule, check) = if b.is_field {
            (RuleId::DField, "A is a field")
        } else {
            (RuleId::DAf, "A is AF-certified")
        };
        let trace = Trace::applied(rule, vec![HypothesisCheck::new(check, true)])
            .note(format!(
                "min(s + dim A, d + tdeg A) = min({s} + {}, {d} + {}) = {value}",
                b.krull_dim, b.tdeg
            ))
            .with_value(value);
        return Ok(Evaluation::new(value, trace));
    }

    if let Some(p) = PullbackData::of(a) {
        let checks = vec![
            HypothesisCheck::new("T is AF-certified", p.ambient_is_af()),
            HypothesisCheck::new("D is AF-certified", p.subring_is_af()),
            HypothesisCheck::new(
                format!("ht M = dim T ({} vs {})", p.height(), p.ambient.krull_dim),
                p.height_is_dim(),
            ),
        ];
        if checks.iter().all(|c| c.passed) {
            return Ok(pullback_branch(s, d, &p, checks));
        }
    }

    Err(Error::UnsupportedAlgebraClass(format!(
        "no closed form for D({s}, {d}, A) with A = {a}"
    )))
}

/// `A = φ⁻¹(D0)` with `T`, `D0` AF and `ht M = dim T`.
///
/// Primes containing `M` contribute
/// `dim T + min(s, r - s0) + min(s + dim D0, d + s0)`; primes not containing
/// `M` are primes of the AF-domain `T` and contribute `min(s + ht q, d + t)`
/// with `ht q <= dim T - 1` when `M` is the only maximal ideal. Without
/// uniqueness some such `q` may reach `dim T`; since `t = dim T + r` the
/// branch through `M` still dominates, so the value stays exact.
fn pullback_branch(s: u32, d: u32, p: &PullbackData<'_>, mut checks: Vec<HypothesisCheck>) -> Evaluation {
    let dim_t = p.height();
    let gap = p.gap();
    let s0 = p.subring_tdeg();
    let t = p.tdeg();
    let dim_d0 = p.subring.krull_dim;

    let branch_m = (dim_d0 + s).min(DimValue::exact(d + s0)) + (dim_t + s.min(gap));

    let unique = p.unique_maximal();
    let h_star = if unique {
        DimValue::exact(dim_t - 1)
    } else {
        DimValue::interval(dim_t - 1, dim_t).expect("dim T >= 1")
    };
    let branch_out = (h_star + s).min(DimValue::exact(d + t));
    let value = branch_m.max(branch_out);

    checks.push(HypothesisCheck::new("M is the unique maximal ideal of T", unique));
    // The uniqueness check only decides exactness of the off-M branch; the
    // rule itself applies either way.
    let checks: Vec<_> = checks.into_iter().filter(|c| c.passed).collect();
    let mut trace = Trace::applied(RuleId::DPullback, checks)
        .note(format!(
            "branch through M: {dim_t} + min({s}, {gap}) + min({s} + {dim_d0}, {d} + {s0}) = {branch_m}"
        ))
        .note(format!(
            "branch off M: min({s} + {h_star}, {d} + {t}) = {branch_out}"
        ));
    if !unique {
        trace = trace.note("M not unique: off-M heights only bounded by dim T");
    }
    Evaluation::new(value, trace.with_value(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MaximalIdealData;

    #[test]
    fn single_prime_field() {
        let e = compute_d(1, 0, &AlgebraExpr::field(3)).unwrap();
        assert_eq!(e.value, DimValue::exact(1));
        assert_eq!(e.trace.rule_id, RuleId::DField);
    }

    #[test]
    fn d_above_s_is_rejected() {
        assert!(matches!(
            compute_d(1, 2, &AlgebraExpr::field(3)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn zero_s_gives_krull_dim() {
        let a = AlgebraExpr::af(4, 3);
        assert_eq!(compute_d(0, 0, &a).unwrap().value, DimValue::exact(3));
    }

    #[test]
    fn unsupported_class() {
        let t = AlgebraExpr::af_local(3, 1, MaximalIdealData::new(1, 2, true));
        let inner = AlgebraExpr::pullback(t, AlgebraExpr::field(1));
        let outer = AlgebraExpr::pullback(
            AlgebraExpr::af_local(4, 1, MaximalIdealData::new(1, 3, true)),
            inner,
        );
        assert!(matches!(
            compute_d(1, 0, &outer),
            Err(Error::UnsupportedAlgebraClass(_))
        ));
    }

    #[test]
    fn non_unique_maximal_is_dominated_by_branch_through_m() {
        // T with two maximal ideals, M of height dim T = 2, residue tdeg 2.
        let t = AlgebraExpr::af_local(4, 2, MaximalIdealData::new(2, 2, false));
        let r = AlgebraExpr::pullback(t, AlgebraExpr::field(1));
        // through M: 2 + min(3, 1) + min(3 + 0, 0 + 1) = 4
        // off M: min(3 + [1, 2], 0 + 4) = 4
        assert_eq!(compute_d(3, 0, &r).unwrap().value, DimValue::exact(4));
        // through M: 2 + 1 + min(4, 5) = 7; off M: min(4 + [1, 2], 8) = [5, 6]
        assert_eq!(compute_d(4, 4, &r).unwrap().value, DimValue::exact(7));
        // through M: 2 + 1 + min(2, 1) = 4; off M: min(2 + [1, 2], 4) = [3, 4]
        assert_eq!(compute_d(2, 0, &r).unwrap().value, DimValue::exact(4));
    }
}
