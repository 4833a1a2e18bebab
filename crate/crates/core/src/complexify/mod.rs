//! Complex prolongation: blocks of the jet-space matrix `H` for linear base
//! changes, the pullback `ℋ` of expressions and the transport of operators.

mod blocks;
mod matrix;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use crate::exact_arith::{ArithError, GaussRat, RatFunc};
use crate::jet::{CDiffOp, Chart, DiffExpr, JetError, MultiIndex};

pub use blocks::{
    block_inverse, check_blocks, closed_form_block, closed_form_p, prolong_block, q_formula_block,
    recurrence_blocks, Block, BlockChecks,
};
pub use matrix::CMatrix;

type BlockCache = RwLock<HashMap<u32, Arc<Block>>>;

/// Invertible linear change of base variables, `target = B * source`.
#[derive(Clone, Debug)]
pub struct BaseChange {
    source: Chart,
    target: Chart,
    b: [[GaussRat; 2]; 2],
    b_inv: [[GaussRat; 2]; 2],
    cache: Arc<BlockCache>,
    inv_cache: Arc<BlockCache>,
}

impl PartialEq for BaseChange {
    fn eq(&self, o: &Self) -> bool {
        self.source == o.source && self.target == o.target && self.b == o.b
    }
}

fn g(re: i64, im: i64) -> GaussRat {
    GaussRat::from_int(re) + GaussRat::from_int(im) * GaussRat::i()
}

impl BaseChange {
    pub fn new(source: Chart, target: Chart, b: [[GaussRat; 2]; 2]) -> Result<Self, ArithError> {
        let det = &b[0][0] * &b[1][1] - &b[0][1] * &b[1][0];
        let inv_det = det.inv()?;
        let b_inv = [
            [&b[1][1] * &inv_det, -(&b[0][1] * &inv_det)],
            [-(&b[1][0] * &inv_det), &b[0][0] * &inv_det],
        ];
        Ok(BaseChange {
            source,
            target,
            b,
            b_inv,
            cache: Arc::default(),
            inv_cache: Arc::default(),
        })
    }

    /// `z = x + i y`, `zbar = x - i y` into the `(xi, eta)` chart.
    pub fn canonical_wirtinger() -> Self {
        Self::new(
            Chart::Elliptic,
            Chart::Hyperbolic,
            [[g(1, 0), g(0, 1)], [g(1, 0), g(0, -1)]],
        )
        .unwrap()
    }

    /// `xi = ((x+y) + i(x-y))/2`, `eta = ((x+y) - i(x-y))/2`. Its pullback
    /// carries the hyperbolic Euler-Darboux equation exactly onto the elliptic one.
    pub fn euler_darboux() -> Self {
        let h = GaussRat::from_ratio(1, 2);
        Self::new(
            Chart::Elliptic,
            Chart::Hyperbolic,
            [
                [&h * &g(1, 1), &h * &g(1, -1)],
                [&h * &g(1, -1), &h * &g(1, 1)],
            ],
        )
        .unwrap()
    }

    /// Unscaled composition: `X = x+y`, `Y = x-y`, then `xi = X + iY`, `eta = X - iY`.
    pub fn euler_darboux_literal() -> Self {
        Self::new(
            Chart::Elliptic,
            Chart::Hyperbolic,
            [[g(1, 1), g(1, -1)], [g(1, -1), g(1, 1)]],
        )
        .unwrap()
    }

    /// Real point transformation `X = x + y`, `Y = x - y`.
    pub fn g_transform() -> Self {
        Self::new(
            Chart::Elliptic,
            Chart::Intermediate,
            [[g(1, 0), g(1, 0)], [g(1, 0), g(-1, 0)]],
        )
        .unwrap()
    }

    /// `xi = X + iY`, `eta = X - iY` from the intermediate chart.
    pub fn intermediate_wirtinger() -> Self {
        Self::new(
            Chart::Intermediate,
            Chart::Hyperbolic,
            [[g(1, 0), g(0, 1)], [g(1, 0), g(0, -1)]],
        )
        .unwrap()
    }

    pub fn source(&self) -> Chart {
        self.source
    }

    pub fn target(&self) -> Chart {
        self.target
    }

    pub fn matrix(&self) -> &[[GaussRat; 2]; 2] {
        &self.b
    }

    pub fn inverse_matrix(&self) -> &[[GaussRat; 2]; 2] {
        &self.b_inv
    }

    pub fn is_canonical_wirtinger(&self) -> bool {
        self.source == Chart::Elliptic
            && self.target == Chart::Hyperbolic
            && self.b == Self::canonical_wirtinger().b
    }

    /// The reverse change `source = B^{-1} target`, sharing block caches.
    pub fn inverse(&self) -> BaseChange {
        BaseChange {
            source: self.target,
            target: self.source,
            b: self.b_inv.clone(),
            b_inv: self.b.clone(),
            cache: self.inv_cache.clone(),
            inv_cache: self.cache.clone(),
        }
    }

    /// Composite `other ∘ self` (first `self`, then `other`).
    pub fn then(&self, other: &BaseChange) -> Result<BaseChange, JetError> {
        self.target.ensure_same(other.source)?;
        let m = |a: &[[GaussRat; 2]; 2], b: &[[GaussRat; 2]; 2]| -> [[GaussRat; 2]; 2] {
            let e = |r: usize, c: usize| &a[r][0] * &b[0][c] + &a[r][1] * &b[1][c];
            [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
        };
        Ok(
            BaseChange::new(self.source, other.target, m(&other.b, &self.b))
                .expect("composite of invertible maps"),
        )
    }

    /// `D_{t_a} = sum_b (B^{-1})_{b a} D_{s_b}`.
    fn first_order_rows(&self) -> [[GaussRat; 2]; 2] {
        [
            [self.b_inv[0][0].clone(), self.b_inv[1][0].clone()],
            [self.b_inv[0][1].clone(), self.b_inv[1][1].clone()],
        ]
    }

    pub(crate) fn block(&self, k: u32) -> Arc<Block> {
        if let Some(b) = self.cache.read().unwrap().get(&k) {
            return b.clone();
        }
        let block = Arc::new(blocks::expand_block(&self.first_order_rows(), k));
        self.cache
            .write()
            .unwrap()
            .entry(k)
            .or_insert(block)
            .clone()
    }

    fn pull_coeff(&self, c: &RatFunc) -> RatFunc {
        c.substitute_linear(self.source.vars(), &self.b)
    }

    /// Target jet `u_mi` written in source jets.
    fn pull_jet(&self, mi: MultiIndex) -> Vec<(MultiIndex, GaussRat)> {
        let k = mi.order();
        let block = self.block(k);
        let r = mi.d2 as usize;
        (0..=k as usize)
            .filter_map(|q| {
                let c = block.entry(r, q);
                (!c.is_zero()).then(|| (MultiIndex::new(k - q as u32, q as u32), c.clone()))
            })
            .collect()
    }
}

/// `ℋ`: rewrites a target-chart expression in source-chart variables and jets.
pub fn pullback_expr(map: &BaseChange, e: &DiffExpr) -> Result<DiffExpr, JetError> {
    map.target.ensure_same(e.chart())?;
    let mut out = DiffExpr::from_free(map.source, map.pull_coeff(e.free()));
    for (mi, c) in e.terms() {
        let pc = map.pull_coeff(c);
        for (src, w) in map.pull_jet(*mi) {
            out.add_term(src, pc.scale(&w));
        }
    }
    Ok(out)
}

/// `ℋ^{-1}`: source-chart expression to target chart.
pub fn pushforward_expr(map: &BaseChange, e: &DiffExpr) -> Result<DiffExpr, JetError> {
    pullback_expr(&map.inverse(), e)
}

/// `H^{-1}(Δ) = ℋ ∘ Δ ∘ ℋ^{-1}` for a target-chart operator. Linear base
/// changes have constant Jacobians, so each `D_sigma` transforms like `u_sigma`.
pub fn transport_op(map: &BaseChange, op: &CDiffOp) -> Result<CDiffOp, JetError> {
    map.target.ensure_same(op.chart())?;
    let mut out = CDiffOp::zero(map.source);
    for (mi, c) in op.terms() {
        let pc = map.pull_coeff(c);
        for (src, w) in map.pull_jet(*mi) {
            out.add_term(src, pc.scale(&w));
        }
    }
    Ok(out)
}

/// `H(Δ) = ℋ^{-1} ∘ Δ ∘ ℋ` for a source-chart operator.
pub fn transport_op_back(map: &BaseChange, op: &CDiffOp) -> Result<CDiffOp, JetError> {
    transport_op(&map.inverse(), op)
}

/// Splits `e = re + i*im` with coefficient-real parts.
pub fn split_expr(e: &DiffExpr) -> (DiffExpr, DiffExpr) {
    (e.map_coeffs(|c| c.re_im().0), e.map_coeffs(|c| c.re_im().1))
}

/// Splits `op = re + i*im` with coefficient-real parts.
pub fn split_op(op: &CDiffOp) -> (CDiffOp, CDiffOp) {
    (
        op.map_coeffs(|c| c.re_im().0),
        op.map_coeffs(|c| c.re_im().1),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: Chart = Chart::Hyperbolic;
    const E: Chart = Chart::Elliptic;

    fn hjet(d1: u32, d2: u32) -> DiffExpr {
        DiffExpr::jet(H, MultiIndex::new(d1, d2))
    }
    fn ejet(d1: u32, d2: u32) -> DiffExpr {
        DiffExpr::jet(E, MultiIndex::new(d1, d2))
    }

    #[test]
    fn pullback_of_u_is_u() {
        let map = BaseChange::euler_darboux();
        assert_eq!(
            pullback_expr(&map, &DiffExpr::u(H)).unwrap(),
            DiffExpr::u(E)
        );
    }

    #[test]
    fn pullback_of_box_generator() {
        let map = BaseChange::euler_darboux();
        let phi0 = hjet(1, 0).sub(&hjet(0, 1));
        let rho0 = ejet(0, 1).sub(&ejet(1, 0));
        assert_eq!(
            pullback_expr(&map, &phi0).unwrap(),
            rho0.scale(&GaussRat::i())
        );
    }

    #[test]
    fn pullback_of_base_sum() {
        let map = BaseChange::euler_darboux();
        let s = RatFunc::var(H.vars(), 0).add(&RatFunc::var(H.vars(), 1));
        let e = DiffExpr::from_free(H, s);
        let expected = RatFunc::var(E.vars(), 0).add(&RatFunc::var(E.vars(), 1));
        assert_eq!(
            pullback_expr(&map, &e).unwrap(),
            DiffExpr::from_free(E, expected)
        );
    }

    #[test]
    fn pullback_then_pushforward() {
        let map = BaseChange::euler_darboux();
        let xi = RatFunc::var(H.vars(), 0);
        let e = hjet(2, 1).mul_coeff(&xi.pow(2)).add(&hjet(0, 3));
        let back = pushforward_expr(&map, &pullback_expr(&map, &e).unwrap()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn chart_mismatch() {
        let map = BaseChange::euler_darboux();
        assert!(pullback_expr(&map, &DiffExpr::u(E)).is_err());
        assert!(transport_op(&map, &CDiffOp::identity(E)).is_err());
    }

    #[test]
    fn transport_identity() {
        let map = BaseChange::euler_darboux();
        assert_eq!(
            transport_op(&map, &CDiffOp::identity(H)).unwrap(),
            CDiffOp::identity(E)
        );
    }

    #[test]
    fn literal_composition_matches_two_steps() {
        let lit = BaseChange::g_transform()
            .then(&BaseChange::intermediate_wirtinger())
            .unwrap();
        assert_eq!(lit, BaseChange::euler_darboux_literal());
    }

    #[test]
    fn split_pure_imaginary() {
        let rho0 = ejet(0, 1).sub(&ejet(1, 0));
        let (re, im) = split_expr(&rho0.scale(&GaussRat::i()));
        assert!(re.is_zero());
        assert_eq!(im, rho0);
        let (re, im) = split_expr(&rho0);
        assert_eq!(re, rho0);
        assert!(im.is_zero());
    }
}
