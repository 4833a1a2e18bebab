use std::collections::BTreeMap;

use crate::exact_arith::{GaussRat, RatFunc};

use super::{op::op_apply, Axis, CDiffOp, Chart, JetError, MultiIndex};

/// A generating section linear in the jets: `free + sum a_sigma * u_sigma`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiffExpr {
    chart: Chart,
    free: RatFunc,
    terms: BTreeMap<MultiIndex, RatFunc>,
}

impl DiffExpr {
    pub fn zero(chart: Chart) -> Self {
        DiffExpr {
            chart,
            free: RatFunc::zero(chart.vars()),
            terms: BTreeMap::new(),
        }
    }

    /// The dependent variable `u` itself.
    pub fn u(chart: Chart) -> Self {
        Self::jet(chart, MultiIndex::ZERO)
    }

    pub fn jet(chart: Chart, mi: MultiIndex) -> Self {
        let mut e = Self::zero(chart);
        e.add_term(mi, RatFunc::one(chart.vars()));
        e
    }

    pub fn from_free(chart: Chart, free: RatFunc) -> Self {
        assert_eq!(free.vars(), chart.vars(), "free term over wrong variables");
        DiffExpr {
            chart,
            free,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_parts<I>(chart: Chart, free: RatFunc, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, RatFunc)>,
    {
        let mut e = Self::from_free(chart, free);
        for (mi, c) in terms {
            e.add_term(mi, c);
        }
        e
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn free(&self) -> &RatFunc {
        &self.free
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mi: MultiIndex) -> Option<&RatFunc> {
        self.terms.get(&mi)
    }

    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.terms.is_empty()
    }

    pub fn is_jet_free(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest jet order present, 0 for jet-free expressions.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|m| m.order()).max().unwrap_or(0)
    }

    /// Largest coefficient degree (numerator or denominator).
    pub fn max_degree(&self) -> u32 {
        self.terms
            .values()
            .chain(std::iter::once(&self.free))
            .map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, mi: MultiIndex, c: RatFunc) {
        assert_eq!(
            c.vars(),
            self.chart.vars(),
            "coefficient over wrong variables"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mi) {
            Some(slot) => {
                *slot = slot.add(&c);
                if slot.is_zero() {
                    self.terms.remove(&mi);
                }
            }
            None => {
                self.terms.insert(mi, c);
            }
        }
    }

    pub fn add_free(&mut self, c: &RatFunc) {
        self.free = self.free.add(c);
    }

    pub fn checked_add(&self, o: &DiffExpr) -> Result<DiffExpr, JetError> {
        self.chart.ensure_same(o.chart)?;
        let mut out = self.clone();
        out.free = out.free.add(&o.free);
        for (mi, c) in &o.terms {
            out.add_term(*mi, c.clone());
        }
        Ok(out)
    }

    /// Sum; panics on chart mismatch (use `checked_add` for untrusted input).
    pub fn add(&self, o: &DiffExpr) -> DiffExpr {
        self.checked_add(o).expect("expression chart mismatch")
    }

    pub fn neg(&self) -> DiffExpr {
        self.map_coeffs(|c| c.neg())
    }

    pub fn checked_sub(&self, o: &DiffExpr) -> Result<DiffExpr, JetError> {
        self.checked_add(&o.neg())
    }

    pub fn sub(&self, o: &DiffExpr) -> DiffExpr {
        self.add(&o.neg())
    }

    /// Multiplies every coefficient by a jet-free function.
    pub fn mul_coeff(&self, f: &RatFunc) -> DiffExpr {
        self.map_coeffs(|c| c.mul(f))
    }

    pub fn scale(&self, c: &GaussRat) -> DiffExpr {
        self.map_coeffs(|a| a.scale(c))
    }

    /// Applies `f` to the free term and to every jet coefficient, dropping zeros.
    pub fn map_coeffs<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> DiffExpr {
        let mut out = DiffExpr::from_free(self.chart, f(&self.free));
        for (mi, c) in &self.terms {
            out.add_term(*mi, f(c));
        }
        out
    }

    pub fn conj(&self) -> DiffExpr {
        self.map_coeffs(|c| c.conj())
    }

    /// Total derivative along `axis`, by the Leibniz rule.
    pub fn total_derivative(&self, axis: Axis) -> DiffExpr {
        let a = axis.index();
        let mut out = DiffExpr::from_free(self.chart, self.free.partial(a));
        for (mi, c) in &self.terms {
            out.add_term(*mi, c.partial(a));
            out.add_term(mi.bump(axis), c.clone());
        }
        out
    }

    /// `D_sigma` applied `mi.d1` times along the first axis and `mi.d2` along the second.
    pub fn total_derivative_multi(&self, mi: MultiIndex) -> DiffExpr {
        let mut e = self.clone();
        for _ in 0..mi.d1 {
            e = e.total_derivative(Axis::First);
        }
        for _ in 0..mi.d2 {
            e = e.total_derivative(Axis::Second);
        }
        e
    }

    /// Reads the jet coefficients as an operator `sum a_sigma D_sigma`.
    pub fn as_operator(&self) -> Result<CDiffOp, JetError> {
        if !self.free.is_zero() {
            return Err(JetError::FreeTerm);
        }
        Ok(CDiffOp::from_terms(
            self.chart,
            self.terms.iter().map(|(m, c)| (*m, c.clone())),
        ))
    }
}

/// `X_phi(psi) = sum_sigma b_sigma D_sigma(phi)`, `b_sigma` the jet coefficients of `psi`.
pub fn evolutionary_apply(phi: &DiffExpr, psi: &DiffExpr) -> Result<DiffExpr, JetError> {
    phi.chart.ensure_same(psi.chart)?;
    let op = CDiffOp::from_terms(psi.chart, psi.terms.iter().map(|(m, c)| (*m, c.clone())));
    op_apply(&op, phi)
}

/// Jacobi bracket `{phi, psi} = X_phi(psi) - X_psi(phi)`.
pub fn jacobi_bracket(phi: &DiffExpr, psi: &DiffExpr) -> Result<DiffExpr, JetError> {
    let a = evolutionary_apply(phi, psi)?;
    let b = evolutionary_apply(psi, phi)?;
    Ok(a.sub(&b))
}
