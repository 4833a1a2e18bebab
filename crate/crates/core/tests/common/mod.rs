//! Random generators shared by the property suites and the acceptance target.
#![allow(dead_code)]

use jetcalc::exact_arith::{GaussRat, Mono, Poly2, RatFunc, VarPair};
use jetcalc::jet::{CDiffOp, Chart, DiffExpr, MultiIndex};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn rational() -> impl Strategy<Value = GaussRat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| GaussRat::from_ratio(n, d))
}

pub fn gauss() -> impl Strategy<Value = GaussRat> {
    prop_oneof![
        2 => rational(),
        1 => (rational(), rational()).prop_map(|(a, b)| a + b * GaussRat::i()),
    ]
}

pub fn real_gauss() -> impl Strategy<Value = GaussRat> {
    rational()
}

pub fn mono(max_deg: u32) -> impl Strategy<Value = Mono> {
    (0..=max_deg, 0..=max_deg)
        .prop_filter("degree bound", move |(a, b)| a + b <= max_deg)
        .prop_map(|(a, b)| Mono(a, b))
}

pub fn poly(vars: VarPair, max_deg: u32) -> impl Strategy<Value = Poly2> {
    prop::collection::vec((mono(max_deg), gauss()), 0..4)
        .prop_map(move |ts| Poly2::from_terms(vars, ts))
}

pub fn nonzero_poly(vars: VarPair, max_deg: u32) -> impl Strategy<Value = Poly2> {
    poly(vars, max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

/// Denominators shared between coefficients so that cancellations happen.
fn denominator(vars: VarPair) -> impl Strategy<Value = Poly2> {
    let x = Poly2::var(vars, 0);
    let y = Poly2::var(vars, 1);
    let one = Poly2::one(vars);
    let list = vec![
        one.clone(),
        one.clone(),
        x.add(&y),
        x.sub(&y).add(&one.scale(&GaussRat::from_int(2))),
        x.mul(&x).add(&one),
    ];
    prop::sample::select(list)
}

pub fn ratfunc(vars: VarPair, max_deg: u32) -> BoxedStrategy<RatFunc> {
    (poly(vars, max_deg), denominator(vars))
        .prop_map(|(n, d)| RatFunc::normalize(n, d).expect("nonzero denominator"))
        .boxed()
}

pub fn real_ratfunc(vars: VarPair, max_deg: u32) -> BoxedStrategy<RatFunc> {
    (
        prop::collection::vec((mono(max_deg), rational()), 0..4),
        denominator(vars),
    )
        .prop_map(move |(ts, d)| {
            RatFunc::normalize(Poly2::from_terms(vars, ts), d).expect("nonzero denominator")
        })
        .boxed()
}

pub fn poly_coeff(vars: VarPair, max_deg: u32) -> BoxedStrategy<RatFunc> {
    poly(vars, max_deg).prop_map(RatFunc::from_poly).boxed()
}

pub fn multi_index(max_order: u32) -> impl Strategy<Value = MultiIndex> {
    (0..=max_order, 0..=max_order)
        .prop_filter("order bound", move |(a, b)| a + b <= max_order)
        .prop_map(|(a, b)| MultiIndex::new(a, b))
}

/// Section with coefficients from `coeff`, with or without a free term.
pub fn expr_with(
    chart: Chart,
    max_order: u32,
    coeff: BoxedStrategy<RatFunc>,
    free: bool,
) -> impl Strategy<Value = DiffExpr> {
    let vars = chart.vars();
    let free_s = if free {
        coeff.clone()
    } else {
        Just(RatFunc::zero(vars)).boxed()
    };
    (
        free_s,
        prop::collection::vec((multi_index(max_order), coeff), 0..5),
    )
        .prop_map(move |(f, ts)| DiffExpr::from_parts(chart, f, ts))
}

/// Linear section: no free term, rational coefficients.
pub fn linear_section(
    chart: Chart,
    max_order: u32,
    max_deg: u32,
) -> impl Strategy<Value = DiffExpr> {
    expr_with(chart, max_order, ratfunc(chart.vars(), max_deg), false)
}

/// Linear section with polynomial coefficients.
pub fn poly_section(chart: Chart, max_order: u32, max_deg: u32) -> impl Strategy<Value = DiffExpr> {
    expr_with(chart, max_order, poly_coeff(chart.vars(), max_deg), false)
}

pub fn affine_expr(chart: Chart, max_order: u32, max_deg: u32) -> impl Strategy<Value = DiffExpr> {
    expr_with(chart, max_order, ratfunc(chart.vars(), max_deg), true)
}

/// Section with real coefficients and a real free term.
pub fn real_expr(chart: Chart, max_order: u32, max_deg: u32) -> impl Strategy<Value = DiffExpr> {
    expr_with(chart, max_order, real_ratfunc(chart.vars(), max_deg), true)
}

pub fn operator(chart: Chart, max_order: u32, max_deg: u32) -> impl Strategy<Value = CDiffOp> {
    prop::collection::vec(
        (multi_index(max_order), poly_coeff(chart.vars(), max_deg)),
        0..4,
    )
    .prop_map(move |ts| CDiffOp::from_terms(chart, ts))
}

pub fn any_chart() -> impl Strategy<Value = Chart> {
    prop::sample::select(Chart::ALL.to_vec())
}

/// Deterministic sampler for fixed-size suites.
pub struct Sampler {
    runner: TestRunner,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        let mut bytes = [0u8; 32];
        bytes[..8].copy_from_slice(&seed.to_le_bytes());
        let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &bytes);
        Sampler {
            runner: TestRunner::new_with_rng(Config::default(), rng),
        }
    }

    pub fn draw<S: Strategy>(&mut self, s: &S) -> S::Value {
        s.new_tree(&mut self.runner)
            .expect("strategy generates")
            .current()
    }
}
