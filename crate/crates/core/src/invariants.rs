//! Curve invariants computed from the lattice: the delta invariant, the
//! topological kappa, the Blache correction term, Mumford and Hironaka
//! intersection numbers, plus the duality and Kulikov checks.
//!
//! Rationality of the singularity is decided with Artin's criterion
//! `χ(Z_min) = 1`. The formulas below agree with the analytic invariants
//! only on rational singularities, so the analytic names (`δ`, `A`,
//! Hironaka multiplicity) are refused on other graphs.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::CurveConfig;
use crate::laufer::{fundamental_cycle, minimal_class_cycle};
use crate::lattice::{ClassRep, Cycle, LatticeContext, DEFAULT_CLASS_CAP};
use crate::scalar::{to_integer, Scalar};

/// Everything computed for one curve germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariantReport<T> {
    pub name: String,
    /// `ℓ'_C = Σ a_v E*_v`.
    pub curve_cycle: Cycle<T>,
    pub class: ClassRep<T>,
    /// Number of branches `r = Σ a_v`.
    pub branches: u64,
    /// `χ(-ℓ'_C)`.
    pub chi_neg_curve: T,
    /// `s_{[Z_K + ℓ'_C]}`.
    pub s_term: Cycle<T>,
    /// `χ(s_{[Z_K + ℓ'_C]})`.
    pub chi_s_term: T,
    /// `χ(-ℓ'_C) - χ(s_term)`. This is `δ(C)` only when
    /// `rationality_verified`; otherwise it is just the χ-expression.
    pub delta: T,
    pub blache_a: T,
    pub rationality_verified: bool,
}

/// `Z_min` and `χ(Z_min)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rationality<T> {
    pub zmin: Cycle<T>,
    pub chi_zmin: T,
}

impl<T: Scalar> Rationality<T> {
    pub fn is_rational(&self) -> bool {
        self.chi_zmin == T::one()
    }
}

pub fn rationality<T: Scalar>(ctx: &LatticeContext<T>) -> Result<Rationality<T>> {
    let zmin = fundamental_cycle(ctx)?;
    let chi_zmin = ctx.chi(&zmin);
    Ok(Rationality { zmin, chi_zmin })
}

/// Artin's criterion `χ(Z_min) = 1`.
pub fn is_rational<T: Scalar>(ctx: &LatticeContext<T>) -> Result<bool> {
    Ok(rationality(ctx)?.is_rational())
}

fn require_rational<T: Scalar>(ctx: &LatticeContext<T>) -> Result<()> {
    let r = rationality(ctx)?;
    if r.is_rational() {
        Ok(())
    } else {
        Err(Error::NonRational { chi_zmin: r.chi_zmin.to_big_rational() })
    }
}

/// `ℓ'_C`, determined by `(ℓ'_C, E_v) = -a_v`.
pub fn curve_cycle<T: Scalar>(ctx: &LatticeContext<T>, c: &CurveConfig) -> Result<Cycle<T>> {
    if c.arrows.len() != ctx.len() {
        return Err(Error::DimensionMismatch { expected: ctx.len(), found: c.arrows.len() });
    }
    if c.is_zero() {
        return Err(Error::ZeroCurve(c.name.clone()));
    }
    let a: Vec<T> = c.arrows.iter().map(|&x| T::from_int(x as i64)).collect();
    ctx.dual_combination(&a)
}

/// The χ-expression `χ(-ℓ'_C) - χ(s_{[Z_K+ℓ'_C]})` and its ingredients,
/// with no rationality requirement.
pub fn curve_report<T: Scalar>(ctx: &LatticeContext<T>, c: &CurveConfig) -> Result<CurveInvariantReport<T>> {
    let l = curve_cycle(ctx, c)?;
    let class = ctx.class_of(&l)?;
    let chi_neg_curve = ctx.chi(&-&l);
    let s_class = ctx.class_of(&(ctx.zk() + &l))?;
    let s_term = minimal_class_cycle(ctx, &s_class)?;
    let chi_s_term = ctx.chi(&s_term);
    let delta = chi_neg_curve.clone() - chi_s_term.clone();
    Ok(CurveInvariantReport {
        name: c.name.clone(),
        curve_cycle: l,
        class,
        branches: c.branch_count(),
        chi_neg_curve,
        s_term,
        blache_a: chi_s_term.clone(),
        chi_s_term,
        delta,
        rationality_verified: false,
    })
}

/// Computes the full report. On rational graphs the value is `δ(C)`,
/// cross-checked against `χ(-ℓ'_C) - χ(s_{-h})` and required to be an
/// integer; on other graphs `rationality_verified` is false and `delta`
/// holds only the χ-expression.
pub fn delta<T: Scalar>(ctx: &LatticeContext<T>, c: &CurveConfig) -> Result<CurveInvariantReport<T>> {
    let mut report = curve_report(ctx, c)?;
    if !is_rational(ctx)? {
        return Ok(report);
    }
    let neg = ctx.negate_class(&report.class);
    let chi_dual = ctx.chi(&minimal_class_cycle(ctx, &neg)?);
    if chi_dual != report.chi_s_term {
        return Err(Error::Internal(format!(
            "delta formulas disagree for `{}`: χ(s_[Z_K+h]) = {} but χ(s_-h) = {}",
            c.name, report.chi_s_term, chi_dual
        )));
    }
    if !report.delta.is_integer() {
        return Err(Error::Internal(format!("non-integral delta {} for `{}`", report.delta, c.name)));
    }
    report.rationality_verified = true;
    Ok(report)
}

/// Topological `κ_X(C)`, equal to `δ(C)` on rational singularities.
pub fn kappa_topological<T: Scalar>(ctx: &LatticeContext<T>, c: &CurveConfig) -> Result<T> {
    require_rational(ctx)?;
    Ok(delta(ctx, c)?.delta)
}

/// Blache's correction `A_{X,0}(C) = χ(s_{[Z_K+ℓ'_C]})`.
pub fn blache_a<T: Scalar>(ctx: &LatticeContext<T>, c: &CurveConfig) -> Result<T> {
    require_rational(ctx)?;
    Ok(delta(ctx, c)?.blache_a)
}

/// Mumford's rational intersection number `-(ℓ'_{C₁}, ℓ'_{C₂})`.
///
/// Whether the two curves share components cannot be seen from arrow data;
/// that is the caller's responsibility.
pub fn mumford_pairing<T: Scalar>(ctx: &LatticeContext<T>, c1: &CurveConfig, c2: &CurveConfig) -> Result<T> {
    let l1 = curve_cycle(ctx, c1)?;
    let l2 = curve_cycle(ctx, c2)?;
    Ok(-ctx.pair(&l1, &l2))
}

/// `(C₁, C₂)_X + A(C₁) + A(C₂) - A(C₁ + C₂)`, with `C₁ + C₂` the
/// arrow-wise union.
pub fn hironaka_mult<T: Scalar>(ctx: &LatticeContext<T>, c1: &CurveConfig, c2: &CurveConfig) -> Result<T> {
    require_rational(ctx)?;
    hironaka_expression(ctx, c1, c2)
}

/// The Hironaka combination without the rationality check.
pub fn hironaka_expression<T: Scalar>(ctx: &LatticeContext<T>, c1: &CurveConfig, c2: &CurveConfig) -> Result<T> {
    let mumford = mumford_pairing(ctx, c1, c2)?;
    let a1 = curve_report(ctx, c1)?.blache_a;
    let a2 = curve_report(ctx, c2)?.blache_a;
    let a12 = curve_report(ctx, &c1.union(c2))?.blache_a;
    Ok(mumford + a1 + a2 - a12)
}

/// A class where `χ(s_{-h}) ≠ χ(s_{[Z_K]+h})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityFailure<T> {
    pub class: ClassRep<T>,
    pub chi_s_neg: T,
    pub chi_s_shifted: T,
}

/// Checks `χ(s_{-h}) = χ(s_{[Z_K]+h})` for every `h ∈ H`; returns the
/// classes where it fails, in enumeration order.
pub fn verify_duality<T: Scalar>(ctx: &LatticeContext<T>, cap: usize) -> Result<Vec<DualityFailure<T>>> {
    let kz = ctx.class_of(ctx.zk())?;
    let mut failures = Vec::new();
    for h in ctx.enumerate_classes(cap)? {
        let chi_s_neg = ctx.chi(&minimal_class_cycle(ctx, &ctx.negate_class(&h))?);
        let chi_s_shifted = ctx.chi(&minimal_class_cycle(ctx, &ctx.add_classes(&kz, &h))?);
        if chi_s_neg != chi_s_shifted {
            failures.push(DualityFailure { class: h, chi_s_neg, chi_s_shifted });
        }
    }
    Ok(failures)
}

pub fn verify_duality_default<T: Scalar>(ctx: &LatticeContext<T>) -> Result<Vec<DualityFailure<T>>> {
    verify_duality(ctx, DEFAULT_CLASS_CAP)
}

/// Whether `Z_min` has coefficient 1 wherever it pairs negatively with
/// `E_v` on this resolution, and `r_v = -(Z_min, E_v)`.
pub fn kulikov_check<T: Scalar>(ctx: &LatticeContext<T>) -> Result<(bool, Vec<BigInt>)> {
    let zmin = fundamental_cycle(ctx)?;
    let rv: Vec<BigInt> = ctx
        .pairing_vector(&zmin)
        .iter()
        .map(|p| to_integer(&-p.clone()).expect("integral cycle pairs integrally"))
        .collect();
    let holds = rv
        .iter()
        .zip(zmin.coeffs())
        .all(|(r, z)| r.sign() != num_bigint::Sign::Plus || *z == T::one());
    Ok((holds, rv))
}
