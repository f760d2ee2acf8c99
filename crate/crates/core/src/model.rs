//! The term language for k-algebra constructions and its structural checks.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

/// Data of the distinguished maximal ideal `M` of a domain.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MaximalIdealData {
    pub height: u32,
    /// Transcendence degree of the residue field over k.
    pub residue_tdeg: u32,
    /// `M` is the only maximal ideal.
    pub unique: bool,
}

impl MaximalIdealData {
    pub fn new(height: u32, residue_tdeg: u32, unique: bool) -> Self {
        MaximalIdealData {
            height,
            residue_tdeg,
            unique,
        }
    }
}

/// An immutable description of a k-algebra of finite transcendence degree.
///
/// Subterms are reference counted, so clones are cheap and terms can be
/// shared across threads.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum AlgebraExpr {
    /// The ground field k. Unlike `Field { tdeg: 0 }` this is the unit for
    /// the tensor product.
    BaseK,
    /// An extension field of k.
    Field { tdeg: u32 },
    /// A declared AF-domain, optionally with a distinguished maximal ideal.
    Af {
        tdeg: u32,
        dim: u32,
        maximal: Option<MaximalIdealData>,
    },
    /// `base[X1, ..., Xvars]`.
    Poly { base: Arc<AlgebraExpr>, vars: u32 },
    /// The preimage of `subring` under the residue map of `ambient` at its
    /// distinguished maximal ideal.
    Pullback {
        ambient: Arc<AlgebraExpr>,
        subring: Arc<AlgebraExpr>,
    },
}

impl AlgebraExpr {
    pub fn k() -> Self {
        AlgebraExpr::BaseK
    }

    pub fn field(tdeg: u32) -> Self {
        AlgebraExpr::Field { tdeg }
    }

    pub fn af(tdeg: u32, dim: u32) -> Self {
        AlgebraExpr::Af {
            tdeg,
            dim,
            maximal: None,
        }
    }

    pub fn af_local(tdeg: u32, dim: u32, maximal: MaximalIdealData) -> Self {
        AlgebraExpr::Af {
            tdeg,
            dim,
            maximal: Some(maximal),
        }
    }

    pub fn poly(base: AlgebraExpr, vars: u32) -> Self {
        AlgebraExpr::Poly {
            base: Arc::new(base),
            vars,
        }
    }

    pub fn pullback(ambient: AlgebraExpr, subring: AlgebraExpr) -> Self {
        AlgebraExpr::Pullback {
            ambient: Arc::new(ambient),
            subring: Arc::new(subring),
        }
    }

    pub fn is_base_k(&self) -> bool {
        matches!(self, AlgebraExpr::BaseK)
    }

    /// The ambient ring and subring when this is a pullback.
    pub fn as_pullback(&self) -> Option<(&AlgebraExpr, &AlgebraExpr)> {
        match self {
            AlgebraExpr::Pullback { ambient, subring } => Some((ambient, subring)),
            _ => None,
        }
    }

    /// Number of pullback constructors on the longest root-to-leaf path.
    pub fn pullback_depth(&self) -> u32 {
        match self {
            AlgebraExpr::BaseK | AlgebraExpr::Field { .. } | AlgebraExpr::Af { .. } => 0,
            AlgebraExpr::Poly { base, .. } => base.pullback_depth(),
            AlgebraExpr::Pullback { ambient, subring } => {
                1 + ambient.pullback_depth().max(subring.pullback_depth())
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            AlgebraExpr::BaseK | AlgebraExpr::Field { .. } | AlgebraExpr::Af { .. } => 1,
            AlgebraExpr::Poly { base, .. } => 1 + base.size(),
            AlgebraExpr::Pullback { ambient, subring } => 1 + ambient.size() + subring.size(),
        }
    }

    /// Strips nested polynomial extensions: `(A[m])[n]` is `A[m + n]`.
    pub fn poly_core(&self) -> (&AlgebraExpr, u32) {
        let mut cur = self;
        let mut vars = 0u32;
        while let AlgebraExpr::Poly { base, vars: n } = cur {
            vars = vars.saturating_add(*n);
            cur = base;
        }
        (cur, vars)
    }
}

/// Writes the term in the s-expression surface syntax.
impl fmt::Display for AlgebraExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraExpr::BaseK => f.write_str("(k)"),
            AlgebraExpr::Field { tdeg } => write!(f, "(field {tdeg})"),
            AlgebraExpr::Af {
                tdeg,
                dim,
                maximal,
            } => {
                write!(f, "(af :tdeg {tdeg} :dim {dim}")?;
                if let Some(m) = maximal {
                    write!(f, " :maximal (:ht {} :res-tdeg {}", m.height, m.residue_tdeg)?;
                    if m.unique {
                        f.write_str(" :unique")?;
                    }
                    f.write_str(")")?;
                }
                f.write_str(")")
            }
            AlgebraExpr::Poly { base, vars } => write!(f, "(poly {base} {vars})"),
            AlgebraExpr::Pullback { ambient, subring } => {
                write!(f, "(pullback :T {ambient} :D {subring})")
            }
        }
    }
}

/// One broken structural invariant, located by the path of constructor
/// fields leading to the offending subterm.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub path: Vec<&'static str>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("$")?;
        for step in &self.path {
            write!(f, ".{step}")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// Checks every structural invariant of `expr` recursively.
pub fn validate(expr: &AlgebraExpr) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    walk(expr, &mut path, &mut out);
    out
}

fn walk(expr: &AlgebraExpr, path: &mut Vec<&'static str>, out: &mut Vec<Violation>) {
    let mut report = |path: &Vec<&'static str>, message: String| {
        out.push(Violation {
            path: path.clone(),
            message,
        })
    };
    match expr {
        AlgebraExpr::BaseK | AlgebraExpr::Field { .. } => {}
        AlgebraExpr::Af {
            tdeg,
            dim,
            maximal,
        } => {
            if dim > tdeg {
                report(path, format!("AF-domain with dim {dim} > tdeg {tdeg}"));
            }
            if let Some(m) = maximal {
                if m.height == 0 {
                    report(path, "distinguished maximal ideal has height 0".into());
                }
                if m.height > *dim {
                    report(path, format!("maximal height {} exceeds dim {dim}", m.height));
                }
                if m.height.checked_add(m.residue_tdeg) != Some(*tdeg) {
                    report(
                        path,
                        format!(
                            "AF identity fails: ht M + tdeg(T/M) = {} + {} != tdeg {tdeg}",
                            m.height, m.residue_tdeg
                        ),
                    );
                }
            }
        }
        AlgebraExpr::Poly { base, vars } => {
            if *vars == 0 {
                report(path, "polynomial extension needs at least one variable".into());
            }
            path.push("base");
            walk(base, path, out);
            path.pop();
        }
        AlgebraExpr::Pullback { ambient, subring } => {
            path.push("T");
            walk(ambient, path, out);
            path.pop();
            path.push("D");
            walk(subring, path, out);
            path.pop();
            match crate::invariants::maximal_data_raw(ambient) {
                None => out.push(Violation {
                    path: path.clone(),
                    message: "T exposes no distinguished maximal ideal".into(),
                }),
                Some(m) => {
                    let s = crate::invariants::tdeg_raw(subring);
                    if s > m.residue_tdeg {
                        out.push(Violation {
                            path: path.clone(),
                            message: format!(
                                "tdeg(D) = {s} exceeds tdeg of the residue field {}",
                                m.residue_tdeg
                            ),
                        });
                    }
                }
            }
        }
    }
}
