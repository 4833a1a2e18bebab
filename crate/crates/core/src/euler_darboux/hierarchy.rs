//! The operators `∇_j^m = [...[□̃^m, τ̃], ..., τ̃]` (and their hyperbolic
//! counterparts), the restricted generators `∇̄_j^m(u)` and the commutator
//! relations between them.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::exact_arith::GaussRat;
use crate::jet::{jacobi_bracket, CDiffOp, Chart, DiffExpr, Limits};

use super::catalog::catalog_op;
use super::{EdError, EquationModel};

/// Box, scaling and tau recursion operators of one chart.
#[derive(Clone, Debug)]
pub struct OperatorTriple {
    pub chart: Chart,
    pub box_op: CDiffOp,
    pub sigma: CDiffOp,
    pub tau: CDiffOp,
}

impl OperatorTriple {
    /// `□̃, σ̃, τ̃`.
    pub fn elliptic() -> Self {
        OperatorTriple {
            chart: Chart::Elliptic,
            box_op: catalog_op("box_tilde").unwrap(),
            sigma: catalog_op("sigma_tilde").unwrap(),
            tau: catalog_op("tau_tilde").unwrap(),
        }
    }

    /// `□, σ, τ`.
    pub fn hyperbolic() -> Self {
        OperatorTriple {
            chart: Chart::Hyperbolic,
            box_op: catalog_op("box").unwrap(),
            sigma: catalog_op("sigma").unwrap(),
            tau: catalog_op("tau").unwrap(),
        }
    }

    pub fn for_chart(chart: Chart) -> Option<Self> {
        match chart {
            Chart::Elliptic => Some(Self::elliptic()),
            Chart::Hyperbolic => Some(Self::hyperbolic()),
            Chart::Intermediate => None,
        }
    }

    /// Stated sign of the box relation: `+` for the elliptic operators, `-` for
    /// the hyperbolic ones.
    pub fn box_sign(&self) -> i64 {
        match self.chart {
            Chart::Hyperbolic => -1,
            _ => 1,
        }
    }

    /// `[∇_0^m, ..., ∇_{j_max}^m]`.
    pub fn sequence(&self, m: u32, j_max: u32, limits: &Limits) -> Result<Vec<CDiffOp>, EdError> {
        if m == 0 {
            return Err(EdError::BadParameters("m must be at least 1".into()));
        }
        let mut cur = self.box_op.pow(m);
        limits.check_order(cur.order())?;
        limits.check_degree(cur.max_degree())?;
        let mut out = Vec::with_capacity(j_max as usize + 1);
        for _ in 0..j_max {
            let next = cur.commutator(&self.tau);
            limits.check_order(next.order())?;
            limits.check_degree(next.max_degree())?;
            out.push(std::mem::replace(&mut cur, next));
        }
        out.push(cur);
        Ok(out)
    }
}

/// `∇_j^m` of the elliptic triple.
pub fn hierarchy(m: u32, j: u32, limits: &Limits) -> Result<CDiffOp, EdError> {
    Ok(OperatorTriple::elliptic()
        .sequence(m, j, limits)?
        .pop()
        .expect("nonempty"))
}

/// `∇̄_j^m(u)` on the given equation.
pub fn restricted_generator(m: u32, j: u32, eq: &EquationModel) -> Result<DiffExpr, EdError> {
    let triple = OperatorTriple::for_chart(eq.chart()).ok_or_else(|| {
        EdError::BadParameters(format!(
            "no recursion operators for the {} chart",
            eq.chart()
        ))
    })?;
    let op = triple
        .sequence(m, j, &eq.limits())?
        .pop()
        .expect("nonempty");
    eq.restricted_image(&op)
}

/// `Some(c)` when `a = c * b` for a constant `c`.
pub fn proportionality_op(a: &CDiffOp, b: &CDiffOp) -> Option<GaussRat> {
    if a.is_zero() {
        return Some(GaussRat::zero());
    }
    let (mi, bc) = b.terms().next()?;
    let c = a.coeff(*mi)?.checked_div(bc).ok()?.as_constant()?;
    (b.scale(&c) == *a).then_some(c)
}

/// `Some(c)` when `a = c * b` for a constant `c`.
pub fn proportionality_expr(a: &DiffExpr, b: &DiffExpr) -> Option<GaussRat> {
    if a.is_zero() {
        return Some(GaussRat::zero());
    }
    let c = match b.terms().next() {
        Some((mi, bc)) => a.coeff(*mi)?.checked_div(bc).ok()?.as_constant()?,
        None => a.free().checked_div(b.free()).ok()?.as_constant()?,
    };
    (b.scale(&c) == *a).then_some(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationFamily {
    Box,
    Sigma,
    Tau,
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationFamily::Box => "box",
            RelationFamily::Sigma => "sigma",
            RelationFamily::Tau => "tau",
        })
    }
}

/// One identity `[∇_j^m, R] = c ∇_k^m` with `k` fixed by the family.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub family: RelationFamily,
    pub j: u32,
    /// Index of the right-hand generator.
    pub target: u32,
    pub expected: GaussRat,
    /// Constant `c` with `lhs = c * ∇_target`, when one exists.
    pub measured: Option<GaussRat>,
    pub pass: bool,
    /// `lhs - expected * ∇_target`.
    pub residual: CDiffOp,
}

#[derive(Clone, Debug)]
pub struct RelationsReport {
    pub chart: Chart,
    pub m: u32,
    pub checks: Vec<RelationCheck>,
}

impl RelationsReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks the three commutator families for every admissible `j`.
pub fn hierarchy_relations_check(
    triple: &OperatorTriple,
    m: u32,
    limits: &Limits,
) -> Result<RelationsReport, EdError> {
    let seq = triple.sequence(m, 2 * m + 1, limits)?;
    let mut checks = Vec::new();
    let mut check = |family, j: u32, other: &CDiffOp, target: u32, expected: i64| {
        let lhs = seq[j as usize].commutator(other);
        let base = &seq[target as usize];
        let expected = GaussRat::from_int(expected);
        let residual = lhs.sub(&base.scale(&expected));
        checks.push(RelationCheck {
            family,
            j,
            target,
            measured: proportionality_op(&lhs, base),
            pass: residual.is_zero(),
            expected,
            residual,
        });
    };
    let mi = m as i64;
    for j in 1..=2 * m {
        let ji = j as i64;
        check(
            RelationFamily::Box,
            j,
            &triple.box_op,
            j - 1,
            triple.box_sign() * ji * (2 * mi - ji + 1),
        );
    }
    for j in 0..=2 * m {
        check(RelationFamily::Sigma, j, &triple.sigma, j, mi - j as i64);
    }
    for j in 0..=2 * m {
        check(RelationFamily::Tau, j, &triple.tau, j + 1, 1);
    }
    Ok(RelationsReport {
        chart: triple.chart,
        m,
        checks,
    })
}

/// Row of the vanishing table: `∇̄_j^m(u)` and whether it is zero.
#[derive(Clone, Debug)]
pub struct VanishingRow {
    pub j: u32,
    pub generator: DiffExpr,
    pub vanishes: bool,
}

pub fn vanishing_table(
    m: u32,
    j_max: u32,
    eq: &EquationModel,
) -> Result<Vec<VanishingRow>, EdError> {
    let triple = OperatorTriple::for_chart(eq.chart()).ok_or_else(|| {
        EdError::BadParameters(format!(
            "no recursion operators for the {} chart",
            eq.chart()
        ))
    })?;
    triple
        .sequence(m, j_max, &eq.limits())?
        .iter()
        .enumerate()
        .map(|(j, op)| {
            let g = eq.restricted_image(op)?;
            Ok(VanishingRow {
                j: j as u32,
                vanishes: g.is_zero(),
                generator: g,
            })
        })
        .collect()
}

/// `{...{{...{a, b}, ..., b}, c}, ..., c}` with `nb` brackets by `b` followed by
/// `nc` by `c`, restricted after every step.
pub fn nested_bracket(
    eq: &EquationModel,
    a: &DiffExpr,
    b: &DiffExpr,
    nb: u32,
    c: &DiffExpr,
    nc: u32,
) -> Result<DiffExpr, EdError> {
    let mut acc = eq.restrict(a)?;
    for _ in 0..nb {
        acc = eq.restrict(&jacobi_bracket(&acc, b)?)?;
    }
    for _ in 0..nc {
        acc = eq.restrict(&jacobi_bracket(&acc, c)?)?;
    }
    Ok(acc)
}

/// Result of comparing a nested bracket of `ρ0, ρ1, ρ2` with the operator route.
#[derive(Clone, Debug)]
pub struct BracketCrossCheck {
    pub j: u32,
    pub m: u32,
    pub bracket: DiffExpr,
    /// `c` with `bracket = c * ∇̄_m^j(u)`.
    pub ratio: Option<GaussRat>,
}

/// `{...{{...{ρ0, ρ2}...ρ2}, ρ1}...ρ1}` with `j-1` brackets by `ρ2` and `m` by
/// `ρ1`, compared with `∇̄_m^j(u)`. Only proportionality is tested, and the
/// roles of the two indices are exchanged between the two constructions.
pub fn bracket_cross_check(
    eq: &EquationModel,
    j: u32,
    m: u32,
) -> Result<BracketCrossCheck, EdError> {
    if j == 0 || eq.chart() != Chart::Elliptic {
        return Err(EdError::BadParameters(
            "the bracket cross-check needs j >= 1 on the elliptic equation".into(),
        ));
    }
    let rho = |k: u32| super::catalog_expr(&format!("rho{k}"));
    let bracket = nested_bracket(eq, &rho(0)?, &rho(2)?, j - 1, &rho(1)?, m)?;
    let generator = restricted_generator(j, m, eq)?;
    let ratio = if generator.is_zero() {
        None
    } else {
        proportionality_expr(&bracket, &generator)
    };
    Ok(BracketCrossCheck {
        j,
        m,
        bracket,
        ratio,
    })
}
