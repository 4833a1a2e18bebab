mod common;

use common::*;
use jetcalc::expr_io::{
    expr_to_json, from_json, op_to_json, parse_expr, parse_op, print_expr, print_op, Value,
};
use jetcalc::jet::Chart;
use proptest::prelude::*;

fn chart_and_expr() -> impl Strategy<Value = jetcalc::jet::DiffExpr> {
    any_chart().prop_flat_map(|c| affine_expr(c, 4, 2))
}

fn chart_and_op() -> impl Strategy<Value = jetcalc::jet::CDiffOp> {
    any_chart().prop_flat_map(|c| operator(c, 4, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parse_inverts_print(e in chart_and_expr()) {
        let text = print_expr(&e);
        prop_assert_eq!(parse_expr(&text, e.chart()).unwrap(), e);
    }

    #[test]
    fn parse_op_inverts_print_op(op in chart_and_op()) {
        let text = print_op(&op);
        prop_assert_eq!(parse_op(&text, op.chart()).unwrap(), op);
    }

    #[test]
    fn json_round_trip(e in chart_and_expr(), op in chart_and_op()) {
        match from_json(&expr_to_json(&e)).unwrap() {
            Value::Expr(back) => prop_assert_eq!(back, e),
            Value::Op(_) => prop_assert!(false, "kind changed"),
        }
        match from_json(&op_to_json(&op)).unwrap() {
            Value::Op(back) => prop_assert_eq!(back, op),
            Value::Expr(_) => prop_assert!(false, "kind changed"),
        }
    }

    #[test]
    fn error_spans_point_inside_the_input(text in "[ux0-9\\[\\],+*/^() iy-]{0,24}") {
        if let Err(err) = parse_expr(&text, Chart::Elliptic) {
            prop_assert!(err.span.start <= err.span.end);
            prop_assert!(err.span.end <= text.len());
            prop_assert!(err.span.line >= 1 && err.span.column >= 1);
        }
    }

    #[test]
    fn json_error_spans_point_inside_the_input(e in chart_and_expr(), cut in 0usize..400) {
        let doc = expr_to_json(&e);
        let text: String = doc.chars().take(cut.min(doc.len())).collect();
        if let Err(err) = from_json(&text) {
            prop_assert!(err.span.end <= text.len());
        }
    }
}
