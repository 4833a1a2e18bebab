use std::collections::{BTreeMap, HashMap};

use crate::exact_arith::{GaussRat, RatFunc};

use super::{binomial, Axis, Chart, DiffExpr, JetError, MultiIndex};

/// Scalar C-differential operator `sum_sigma a_sigma D_sigma`; the index
/// `(0,0)` is the multiplication operator `a_0 * I`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CDiffOp {
    chart: Chart,
    terms: BTreeMap<MultiIndex, RatFunc>,
}

impl CDiffOp {
    pub fn zero(chart: Chart) -> Self {
        CDiffOp {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(chart: Chart) -> Self {
        Self::d(chart, MultiIndex::ZERO)
    }

    /// The bare total derivative `D_sigma`.
    pub fn d(chart: Chart, mi: MultiIndex) -> Self {
        let mut op = Self::zero(chart);
        op.add_term(mi, RatFunc::one(chart.vars()));
        op
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, RatFunc)>>(chart: Chart, it: I) -> Self {
        let mut op = Self::zero(chart);
        for (mi, c) in it {
            op.add_term(mi, c);
        }
        op
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mi: MultiIndex) -> Option<&RatFunc> {
        self.terms.get(&mi)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> u32 {
        self.terms.keys().map(|m| m.order()).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.values().map(|c| c.degree()).max().unwrap_or(0)
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

    pub fn checked_add(&self, o: &CDiffOp) -> Result<CDiffOp, JetError> {
        self.chart.ensure_same(o.chart)?;
        let mut out = self.clone();
        for (mi, c) in &o.terms {
            out.add_term(*mi, c.clone());
        }
        Ok(out)
    }

    pub fn add(&self, o: &CDiffOp) -> CDiffOp {
        self.checked_add(o).expect("operator chart mismatch")
    }

    pub fn neg(&self) -> CDiffOp {
        self.map_coeffs(|c| c.neg())
    }

    pub fn sub(&self, o: &CDiffOp) -> CDiffOp {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &GaussRat) -> CDiffOp {
        self.map_coeffs(|a| a.scale(c))
    }

    /// Left multiplication by a function: `f * Delta`.
    pub fn mul_coeff(&self, f: &RatFunc) -> CDiffOp {
        self.map_coeffs(|a| a.mul(f))
    }

    pub fn map_coeffs<F: Fn(&RatFunc) -> RatFunc>(&self, f: F) -> CDiffOp {
        CDiffOp::from_terms(self.chart, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn conj(&self) -> CDiffOp {
        self.map_coeffs(|c| c.conj())
    }

    /// `Delta(u)`: the expression with the same coefficients.
    pub fn apply_to_u(&self) -> DiffExpr {
        DiffExpr::from_parts(
            self.chart,
            RatFunc::zero(self.chart.vars()),
            self.terms.iter().map(|(m, c)| (*m, c.clone())),
        )
    }

    /// Composition `self ∘ o`, panicking on chart mismatch.
    pub fn compose(&self, o: &CDiffOp) -> CDiffOp {
        op_compose(self, o).expect("operator chart mismatch")
    }

    pub fn commutator(&self, o: &CDiffOp) -> CDiffOp {
        op_commutator(self, o).expect("operator chart mismatch")
    }

    pub fn pow(&self, n: u32) -> CDiffOp {
        let mut acc = CDiffOp::identity(self.chart);
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }
}

/// All `D_sigma(e)` needed by `indices`, sharing intermediate derivatives.
fn derivative_table<'a, I>(e: &DiffExpr, indices: I) -> HashMap<MultiIndex, DiffExpr>
where
    I: IntoIterator<Item = &'a MultiIndex>,
{
    let mut table: HashMap<MultiIndex, DiffExpr> = HashMap::new();
    table.insert(MultiIndex::ZERO, e.clone());
    for &mi in indices {
        derive_into(&mut table, mi);
    }
    table
}

fn derive_into(table: &mut HashMap<MultiIndex, DiffExpr>, mi: MultiIndex) {
    if table.contains_key(&mi) {
        return;
    }
    let (prev, axis) = match mi.lower(Axis::Second) {
        Some(p) => (p, Axis::Second),
        None => (mi.lower(Axis::First).unwrap(), Axis::First),
    };
    derive_into(table, prev);
    let d = table[&prev].total_derivative(axis);
    table.insert(mi, d);
}

/// `Delta(e) = sum a_sigma D_sigma(e)`.
pub fn op_apply(op: &CDiffOp, e: &DiffExpr) -> Result<DiffExpr, JetError> {
    op.chart.ensure_same(e.chart())?;
    let table = derivative_table(e, op.terms.keys());
    let mut out = DiffExpr::zero(op.chart);
    for (mi, a) in &op.terms {
        out = out.add(&table[mi].mul_coeff(a));
    }
    Ok(out)
}

/// Iterated partial derivatives `∂^rho f` for all `rho <= bound`.
fn partials_of(f: &RatFunc, bound: MultiIndex) -> HashMap<MultiIndex, RatFunc> {
    let mut out = HashMap::new();
    let mut row = f.clone();
    for r1 in 0..=bound.d1 {
        let mut cur = row.clone();
        for r2 in 0..=bound.d2 {
            out.insert(MultiIndex::new(r1, r2), cur.clone());
            if r2 < bound.d2 {
                cur = cur.partial(1);
            }
        }
        if r1 < bound.d1 {
            row = row.partial(0);
        }
    }
    out
}

/// Composition `a ∘ b` expanded to canonical `sum c_rho D_rho` by the Leibniz rule.
pub fn op_compose(a: &CDiffOp, b: &CDiffOp) -> Result<CDiffOp, JetError> {
    a.chart.ensure_same(b.chart)?;
    let bound = a.terms.keys().fold(MultiIndex::ZERO, |acc, m| {
        MultiIndex::new(acc.d1.max(m.d1), acc.d2.max(m.d2))
    });
    let mut out = CDiffOp::zero(a.chart);
    for (tau, bc) in &b.terms {
        let parts = partials_of(bc, bound);
        for (sigma, ac) in &a.terms {
            for r1 in 0..=sigma.d1 {
                for r2 in 0..=sigma.d2 {
                    let db = &parts[&MultiIndex::new(r1, r2)];
                    if db.is_zero() {
                        continue;
                    }
                    let k = binomial(sigma.d1, r1) * binomial(sigma.d2, r2);
                    let c = ac.mul(db).scale(&GaussRat::from_int(k));
                    let idx = MultiIndex::new(sigma.d1 - r1 + tau.d1, sigma.d2 - r2 + tau.d2);
                    out.add_term(idx, c);
                }
            }
        }
    }
    Ok(out)
}

/// `[a, b] = a ∘ b - b ∘ a`.
pub fn op_commutator(a: &CDiffOp, b: &CDiffOp) -> Result<CDiffOp, JetError> {
    Ok(op_compose(a, b)?.sub(&op_compose(b, a)?))
}

/// Universal linearization of a linear expression: its jet coefficients as an operator.
pub fn linearization(f: &DiffExpr) -> CDiffOp {
    CDiffOp::from_terms(f.chart(), f.terms().map(|(m, c)| (*m, c.clone())))
}
