use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::expr_io::parse_expr;
use crate::jet::{linearization, op_apply, Axis, CDiffOp, Chart, DiffExpr, Limits, MultiIndex};

use super::EdError;

/// A linear equation `F = 0` solved for one second-order jet `u_p`. Jets that
/// do not dominate `p` are the internal coordinates of its prolongation.
pub struct EquationModel {
    name: &'static str,
    f: DiffExpr,
    principal: MultiIndex,
    seed: DiffExpr,
    limits: Limits,
    cache: RwLock<HashMap<MultiIndex, Arc<DiffExpr>>>,
}

impl fmt::Debug for EquationModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EquationModel")
            .field("name", &self.name)
            .field("chart", &self.f.chart())
            .field("principal", &self.principal)
            .finish()
    }
}

/// Outcome of a symmetry test: the restricted linearization applied to the input.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryReport {
    pub input: DiffExpr,
    pub residual: DiffExpr,
    pub verdict: bool,
}

impl EquationModel {
    pub fn new(
        name: &'static str,
        f: DiffExpr,
        principal: MultiIndex,
        limits: Limits,
    ) -> Result<Self, EdError> {
        let a = f
            .coeff(principal)
            .cloned()
            .ok_or_else(|| EdError::NotSolvable(format!("no u{principal} term")))?;
        let mut rest = f.clone();
        rest.add_term(principal, a.neg());
        let inv = a.inv().expect("stored coefficients are nonzero");
        let seed = rest.mul_coeff(&inv.neg());
        if let Some((mi, _)) = seed.terms().find(|(mi, _)| mi.dominates(principal)) {
            return Err(EdError::NotSolvable(format!(
                "u{mi} appears next to u{principal}"
            )));
        }
        Ok(EquationModel {
            name,
            f,
            principal,
            seed,
            limits,
            cache: RwLock::new(HashMap::new()),
        })
    }

    fn builtin(name: &'static str, chart: Chart, f: &str, p: MultiIndex, limits: Limits) -> Self {
        let f = parse_expr(f, chart).expect("built-in equation parses");
        Self::new(name, f, p, limits).expect("built-in equation is solvable")
    }

    /// `(x+y)(u_xx + u_yy) + u_x + u_y = 0`, solved for `u_xx`.
    pub fn elliptic() -> Self {
        Self::elliptic_with(Limits::default())
    }

    pub fn elliptic_with(limits: Limits) -> Self {
        Self::builtin(
            "E_ED",
            Chart::Elliptic,
            super::catalog::F_ED,
            MultiIndex::new(2, 0),
            limits,
        )
    }

    /// `2(xi+eta) u_{xi eta} + u_xi + u_eta = 0`, solved for `u_{xi eta}`.
    pub fn hyperbolic() -> Self {
        Self::hyperbolic_with(Limits::default())
    }

    pub fn hyperbolic_with(limits: Limits) -> Self {
        Self::builtin(
            "Y_ED",
            Chart::Hyperbolic,
            super::catalog::F_Y,
            MultiIndex::new(1, 1),
            limits,
        )
    }

    /// `u_XX + u_YY + u_X/X = 0`, solved for `u_XX`.
    pub fn intermediate() -> Self {
        Self::intermediate_with(Limits::default())
    }

    pub fn intermediate_with(limits: Limits) -> Self {
        Self::builtin(
            "E_int",
            Chart::Intermediate,
            super::catalog::F_INT,
            MultiIndex::new(2, 0),
            limits,
        )
    }

    pub fn for_chart(chart: Chart, limits: Limits) -> Self {
        match chart {
            Chart::Elliptic => Self::elliptic_with(limits),
            Chart::Hyperbolic => Self::hyperbolic_with(limits),
            Chart::Intermediate => Self::intermediate_with(limits),
        }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn chart(&self) -> Chart {
        self.f.chart()
    }

    pub fn defining_function(&self) -> &DiffExpr {
        &self.f
    }

    pub fn principal(&self) -> MultiIndex {
        self.principal
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn linearization(&self) -> CDiffOp {
        linearization(&self.f)
    }

    pub fn is_internal(&self, mi: MultiIndex) -> bool {
        !mi.dominates(self.principal)
    }

    /// `u_mi` restricted to the prolongation, in internal jets.
    pub fn rewrite(&self, mi: MultiIndex) -> Result<Arc<DiffExpr>, EdError> {
        if self.is_internal(mi) {
            return Ok(Arc::new(DiffExpr::jet(self.chart(), mi)));
        }
        self.rewrite_in(mi, &mut Vec::new())
    }

    fn rewrite_in(
        &self,
        mi: MultiIndex,
        stack: &mut Vec<MultiIndex>,
    ) -> Result<Arc<DiffExpr>, EdError> {
        if let Some(r) = self.cache.read().unwrap().get(&mi) {
            return Ok(r.clone());
        }
        self.limits.check_order(mi.order())?;
        if stack.contains(&mi) {
            return Err(EdError::Cycle(mi));
        }
        stack.push(mi);
        let r = if mi == self.principal {
            self.seed.clone()
        } else {
            let axis = if mi.d1 > self.principal.d1 {
                Axis::First
            } else {
                Axis::Second
            };
            let lower = mi
                .lower(axis)
                .expect("non-internal jets dominate the principal one");
            let prev = self.rewrite_in(lower, stack)?;
            self.restrict_in(&prev.total_derivative(axis), stack)?
        };
        stack.pop();
        let r = Arc::new(r);
        Ok(self.cache.write().unwrap().entry(mi).or_insert(r).clone())
    }

    fn restrict_in(&self, e: &DiffExpr, stack: &mut Vec<MultiIndex>) -> Result<DiffExpr, EdError> {
        let mut out = DiffExpr::from_free(e.chart(), e.free().clone());
        for (mi, c) in e.terms() {
            if self.is_internal(*mi) {
                out.add_term(*mi, c.clone());
                continue;
            }
            let r = self.rewrite_in(*mi, stack)?;
            out.add_free(&r.free().mul(c));
            for (rmi, rc) in r.terms() {
                out.add_term(*rmi, rc.mul(c));
            }
        }
        Ok(out)
    }

    /// Rewrites every non-internal jet through the equation and its consequences.
    pub fn restrict(&self, e: &DiffExpr) -> Result<DiffExpr, EdError> {
        self.chart().ensure_same(e.chart())?;
        self.limits.check_order(e.order())?;
        let out = self.restrict_in(e, &mut Vec::new())?;
        self.limits.check_degree(out.max_degree())?;
        Ok(out)
    }

    /// `D_axis` on the prolongation: restrict, differentiate, restrict.
    pub fn internal_total_derivative(&self, e: &DiffExpr, axis: Axis) -> Result<DiffExpr, EdError> {
        let r = self.restrict(e)?;
        self.restrict(&r.total_derivative(axis))
    }

    /// Restricted `ℓ_F(φ)`; `φ` is a symmetry iff it vanishes.
    pub fn is_symmetry(&self, phi: &DiffExpr) -> Result<SymmetryReport, EdError> {
        self.chart().ensure_same(phi.chart())?;
        let applied = op_apply(&self.linearization(), phi)?;
        let residual = self.restrict(&applied)?;
        Ok(SymmetryReport {
            input: phi.clone(),
            verdict: residual.is_zero(),
            residual,
        })
    }

    /// Restricted image of a C-differential operator applied to `u`.
    pub fn restricted_image(&self, op: &CDiffOp) -> Result<DiffExpr, EdError> {
        self.restrict(&op_apply(op, &DiffExpr::u(self.chart()))?)
    }

    /// Number of memoized jet rewrites.
    pub fn cached_rewrites(&self) -> usize {
        self.cache.read().unwrap().len()
    }
}
