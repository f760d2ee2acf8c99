//! The worked pullback examples used across integration tests.
#![allow(dead_code)]

use dimcalc_core::{AlgebraExpr, MaximalIdealData};

/// AF-domain of transcendence degree `tdeg` and dimension `dim` with a
/// distinguished maximal ideal of height `ht`, residue tdeg `tdeg - ht`.
pub fn local(tdeg: u32, dim: u32, ht: u32, unique: bool) -> AlgebraExpr {
    AlgebraExpr::af_local(tdeg, dim, MaximalIdealData::new(ht, tdeg - ht, unique))
}

/// `S⁻¹K[X, Y]` with `S` the complement of `(X) ∪ (X - 1, Y)`, glued along
/// `M = (X)` to `k(Y)`: an AF-domain of dimension 2 with `ht M = 1 < dim T`.
pub fn af_pullback_with_short_m() -> AlgebraExpr {
    AlgebraExpr::pullback(local(2, 2, 1, false), AlgebraExpr::field(1))
}

/// `k(X, Y)[Z]_(Z)` glued to `k(X)`: one-dimensional, `dim_v = 2`.
pub fn residue_gap_pullback() -> AlgebraExpr {
    AlgebraExpr::pullback(local(3, 1, 1, true), AlgebraExpr::field(1))
}

/// `k(X)[Y]_(Y)` glued to `k`: a one-dimensional pseudo-valuation domain
/// with `dim_v = 2`.
pub fn pvd() -> AlgebraExpr {
    AlgebraExpr::pullback(local(2, 1, 1, true), AlgebraExpr::k())
}

/// `k(X, Y, Z)[T]_(T)` glued to [`pvd`].
pub fn pvd_tower() -> AlgebraExpr {
    AlgebraExpr::pullback(local(4, 1, 1, true), pvd())
}

pub const SHORT_MAXIMAL_SRC: &str = "\
(def T (af :tdeg 2 :dim 2 :maximal (:ht 1 :res-tdeg 1)))
(def R (pullback :T T :D (field 1)))
(jaffard R)
(tensor-dim R R)
(raw-thm19 R R)
";

pub const MIXED_PAIR_SRC: &str = "\
(def R1 (pullback :T (af :tdeg 3 :dim 1 :maximal (:ht 1 :res-tdeg 2 :unique)) :D (field 1)))
(def R2 (pullback :T (af :tdeg 2 :dim 1 :maximal (:ht 1 :res-tdeg 1 :unique)) :D (k)))
(dim R1)
(vdim R2)
(tensor-dim R1 R2)
(tensor-vdim R1 R2)
(tensor-jaffard R1 R2)
(alphas R1 R2)
";
