//! Bottom-up inference of dimension invariants.
//!
//! Every constructor has a propagation rule. Pullbacks use the standard
//! formulas for `dim` and `dim_v` of a pullback along a maximal ideal, and
//! polynomial extensions use the shift `dim_v A[n] = dim_v A + n` together
//! with the equality case of the lower bound for `dim R[n]` when `R` is a
//! pullback of a locally Jaffard ring with `ht M = dim T`. Anything the
//! formulas do not pin down is reported as an interval.

use serde::Serialize;

use crate::dim::{DimValue, TriState};
use crate::error::{Error, Result};
use crate::model::{validate, AlgebraExpr, MaximalIdealData};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantBundle {
    pub tdeg: u32,
    pub krull_dim: DimValue,
    pub valuative_dim: DimValue,
    pub is_af: TriState,
    pub is_jaffard: TriState,
    pub is_domain: bool,
    pub is_field: bool,
    pub maximal: Option<MaximalIdealData>,
}

/// Validates `expr` and returns its invariants.
pub fn infer(expr: &AlgebraExpr) -> Result<InvariantBundle> {
    check(expr)?;
    Ok(bundle(expr))
}

pub fn tdeg(expr: &AlgebraExpr) -> Result<u32> {
    check(expr)?;
    Ok(tdeg_raw(expr))
}

pub fn krull_dim(expr: &AlgebraExpr) -> Result<DimValue> {
    infer(expr).map(|b| b.krull_dim)
}

pub fn valuative_dim(expr: &AlgebraExpr) -> Result<DimValue> {
    infer(expr).map(|b| b.valuative_dim)
}

pub fn af_status(expr: &AlgebraExpr) -> Result<TriState> {
    infer(expr).map(|b| b.is_af)
}

pub fn jaffard_status(expr: &AlgebraExpr) -> Result<TriState> {
    infer(expr).map(|b| b.is_jaffard)
}

pub fn maximal_data(expr: &AlgebraExpr) -> Result<Option<MaximalIdealData>> {
    check(expr)?;
    Ok(maximal_data_raw(expr))
}

/// Height of `M[n]` in `R[n]` for a pullback `R` whose ambient ring is an
/// AF-domain: `ht M + min(n, tdeg(K:D))`.
pub fn htm_poly(expr: &AlgebraExpr, n: u32) -> Result<u32> {
    check(expr)?;
    let p = PullbackData::of(expr)
        .ok_or_else(|| Error::HypothesisNotMet(format!("{expr} is not a pullback")))?;
    if !p.ambient_is_af() {
        return Err(Error::HypothesisNotMet(
            "the ambient ring T is not AF-certified, so T_M is not known to be locally Jaffard"
                .into(),
        ));
    }
    Ok(p.htm_poly(n))
}

pub(crate) fn check(expr: &AlgebraExpr) -> Result<()> {
    let violations = validate(expr);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(violations))
    }
}

/// The numeric data of a pullback `R = φ⁻¹(D)` with `φ: T → K = T/M`.
#[derive(Clone, Debug)]
pub struct PullbackData<'a> {
    pub ambient_expr: &'a AlgebraExpr,
    pub subring_expr: &'a AlgebraExpr,
    pub ambient: InvariantBundle,
    pub subring: InvariantBundle,
    pub maximal: MaximalIdealData,
}

impl<'a> PullbackData<'a> {
    /// Assumes `expr` is valid; returns `None` for non-pullbacks.
    pub fn of(expr: &'a AlgebraExpr) -> Option<Self> {
        let (ambient_expr, subring_expr) = expr.as_pullback()?;
        let ambient = bundle(ambient_expr);
        let maximal = ambient.maximal?;
        Some(PullbackData {
            ambient_expr,
            subring_expr,
            ambient,
            subring: bundle(subring_expr),
            maximal,
        })
    }

    pub fn height(&self) -> u32 {
        self.maximal.height
    }

    /// `tdeg(K)`.
    pub fn residue_tdeg(&self) -> u32 {
        self.maximal.residue_tdeg
    }

    /// `tdeg(D)`.
    pub fn subring_tdeg(&self) -> u32 {
        self.subring.tdeg
    }

    /// `tdeg(K:D) = tdeg(K) - tdeg(D)`.
    pub fn gap(&self) -> u32 {
        self.residue_tdeg().saturating_sub(self.subring_tdeg())
    }

    /// `tdeg(T) = tdeg(R)`.
    pub fn tdeg(&self) -> u32 {
        self.ambient.tdeg
    }

    pub fn ambient_is_af(&self) -> bool {
        self.ambient.is_af.is_yes()
    }

    pub fn subring_is_af(&self) -> bool {
        self.subring.is_af.is_yes()
    }

    /// `ht M = dim T`.
    pub fn height_is_dim(&self) -> bool {
        self.ambient.krull_dim.as_exact() == Some(self.height())
    }

    pub fn unique_maximal(&self) -> bool {
        self.maximal.unique
    }

    pub fn htm_poly(&self, n: u32) -> u32 {
        self.height() + n.min(self.gap())
    }
}

pub(crate) fn tdeg_raw(expr: &AlgebraExpr) -> u32 {
    match expr {
        AlgebraExpr::BaseK => 0,
        AlgebraExpr::Field { tdeg } | AlgebraExpr::Af { tdeg, .. } => *tdeg,
        AlgebraExpr::Poly { base, vars } => tdeg_raw(base).saturating_add(*vars),
        AlgebraExpr::Pullback { ambient, .. } => tdeg_raw(ambient),
    }
}

fn is_field_raw(expr: &AlgebraExpr) -> bool {
    matches!(
        expr,
        AlgebraExpr::BaseK | AlgebraExpr::Field { .. } | AlgebraExpr::Af { dim: 0, .. }
    )
}

pub(crate) fn maximal_data_raw(expr: &AlgebraExpr) -> Option<MaximalIdealData> {
    match expr {
        AlgebraExpr::Af { maximal, .. } => *maximal,
        AlgebraExpr::Pullback { ambient, subring } => {
            let m = maximal_data_raw(ambient)?;
            if is_field_raw(subring) {
                // R/M ≅ D
                Some(MaximalIdealData::new(m.height, tdeg_raw(subring), m.unique))
            } else {
                // ht p = ht M + ht q
                let q = maximal_data_raw(subring)?;
                Some(MaximalIdealData::new(
                    m.height + q.height,
                    q.residue_tdeg,
                    m.unique && q.unique,
                ))
            }
        }
        AlgebraExpr::BaseK | AlgebraExpr::Field { .. } | AlgebraExpr::Poly { .. } => None,
    }
}

/// Invariants of an already validated term.
pub(crate) fn bundle(expr: &AlgebraExpr) -> InvariantBundle {
    let raw = match expr {
        AlgebraExpr::BaseK | AlgebraExpr::Field { .. } => InvariantBundle {
            tdeg: tdeg_raw(expr),
            krull_dim: DimValue::ZERO,
            valuative_dim: DimValue::ZERO,
            is_af: TriState::Yes,
            is_jaffard: TriState::Yes,
            is_domain: true,
            is_field: true,
            maximal: None,
        },
        AlgebraExpr::Af { tdeg, dim, maximal } => InvariantBundle {
            tdeg: *tdeg,
            krull_dim: DimValue::exact(*dim),
            valuative_dim: DimValue::exact(*dim),
            is_af: TriState::Yes,
            is_jaffard: TriState::Yes,
            is_domain: true,
            is_field: *dim == 0,
            maximal: *maximal,
        },
        AlgebraExpr::Poly { .. } => {
            let (core, vars) = expr.poly_core();
            return poly_bundle(core, vars);
        }
        AlgebraExpr::Pullback { .. } => pullback_bundle(expr),
    };
    settle(raw)
}

fn pullback_bundle(expr: &AlgebraExpr) -> InvariantBundle {
    let p = PullbackData::of(expr).expect("validated pullback has a distinguished maximal ideal");
    let h = p.height();
    let gap = p.gap();

    let krull_dim = p.ambient.krull_dim.max(p.subring.krull_dim + h);

    let vdim_localized = if p.ambient_is_af() {
        DimValue::exact(h)
    } else {
        // dim_v T_M + tdeg(K) <= tdeg T
        let hi = p.ambient.valuative_dim.hi().min(p.tdeg().saturating_sub(p.residue_tdeg()));
        DimValue::interval(h, h.max(hi)).expect("h <= max(h, _)")
    };
    let valuative_dim = p
        .ambient
        .valuative_dim
        .max(p.subring.valuative_dim + vdim_localized + gap);

    // R is AF iff T and D are AF and tdeg(K:D) = 0.
    let is_af = if gap > 0 || p.ambient.is_af == TriState::No || p.subring.is_af == TriState::No {
        TriState::No
    } else if p.ambient_is_af() && p.subring_is_af() {
        TriState::Yes
    } else {
        TriState::Unknown
    };

    InvariantBundle {
        tdeg: p.tdeg(),
        krull_dim,
        valuative_dim,
        is_af,
        is_jaffard: TriState::Unknown,
        is_domain: true,
        is_field: false,
        maximal: maximal_data_raw(expr),
    }
}

/// Invariants of `core[vars]` where `core` is not itself a polynomial ring.
fn poly_bundle(core: &AlgebraExpr, vars: u32) -> InvariantBundle {
    let base = bundle(core);
    if vars == 0 {
        return base;
    }
    let pullback = PullbackData::of(core);
    let valuative_dim = base.valuative_dim + vars;

    let mut is_af = TriState::Unknown;
    if base.is_af.is_yes() {
        is_af = TriState::Yes;
    } else if let Some(p) = &pullback {
        // R[tdeg(K:D)] is AF when T and D are, and AF-ness survives
        // further polynomial extension.
        if p.ambient_is_af() && p.subring_is_af() && vars >= p.gap() {
            is_af = TriState::Yes;
        }
    }

    let certified_jaffard = base.is_af.is_yes() || base.is_jaffard.is_yes();
    let krull_dim = match (base.krull_dim.as_exact(), &pullback) {
        (Some(d), _) if certified_jaffard => DimValue::exact(d + vars),
        (_, Some(p)) if p.ambient_is_af() && p.height_is_dim() => {
            subring_poly_dim(p, vars) + p.htm_poly(vars)
        }
        _ => {
            let mut lo = base.krull_dim.lo() + vars;
            if let Some(p) = &pullback {
                // dim R[n] >= dim D[n] + dim T_M + min(n, tdeg(K:D))
                let bound = subring_poly_dim(p, vars) + (p.height() + vars.min(p.gap()));
                lo = lo.max(bound.lo());
            }
            let hi = valuative_dim.hi();
            debug_assert!(lo <= hi, "lower bound {lo} above dim_v bound {hi} for {core}[{vars}]");
            DimValue::interval(lo.min(hi), hi).expect("clamped")
        }
    };

    settle(InvariantBundle {
        tdeg: base.tdeg + vars,
        krull_dim,
        valuative_dim,
        is_af,
        is_jaffard: TriState::Unknown,
        is_domain: true,
        is_field: false,
        maximal: None,
    })
}

fn subring_poly_dim(p: &PullbackData<'_>, vars: u32) -> DimValue {
    let (core, inner) = p.subring_expr.poly_core();
    poly_bundle(core, inner + vars).krull_dim
}

/// Tightens `dim <= dim_v` and decides the Jaffard status.
fn settle(mut b: InvariantBundle) -> InvariantBundle {
    let k = b.krull_dim;
    let v = b.valuative_dim;
    debug_assert!(k.lo() <= v.hi(), "dim lower bound above dim_v upper bound: {k} vs {v}");
    b.krull_dim = DimValue::interval(k.lo(), k.hi().min(v.hi())).unwrap_or(k);
    b.valuative_dim = DimValue::interval(v.lo().max(k.lo()), v.hi()).unwrap_or(v);

    let (k, v) = (b.krull_dim, b.valuative_dim);
    b.is_jaffard = if b.is_af.is_yes() {
        TriState::Yes
    } else if let (Some(a), Some(c)) = (k.as_exact(), v.as_exact()) {
        TriState::from_bool(a == c)
    } else if k.hi() < v.lo() {
        TriState::No
    } else {
        b.is_jaffard
    };

    if b.is_jaffard.is_yes() {
        if let Some(both) = k.intersect(v) {
            b.krull_dim = both;
            b.valuative_dim = both;
        }
    }
    // AF implies Jaffard.
    if b.is_jaffard == TriState::No && b.is_af == TriState::Unknown {
        b.is_af = TriState::No;
    }
    b
}
