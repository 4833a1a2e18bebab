mod common;

use common::*;
use jetcalc::euler_darboux::{
    catalog_expr, catalog_op, classical, ed_map, theta, theta_prime, EquationModel,
};
use jetcalc::exact_arith::GaussRat;
use jetcalc::jet::{jacobi_bracket, op_apply, op_commutator, Axis, Chart, DiffExpr};
use proptest::prelude::*;

fn model(chart: Chart) -> EquationModel {
    match chart {
        Chart::Elliptic => EquationModel::elliptic(),
        Chart::Hyperbolic => EquationModel::hyperbolic(),
        Chart::Intermediate => EquationModel::intermediate(),
    }
}

fn constants() -> impl Strategy<Value = [GaussRat; 4]> {
    [real_gauss(), real_gauss(), real_gauss(), real_gauss()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn restriction_is_idempotent(e in any_chart().prop_flat_map(|c| affine_expr(c, 4, 2))) {
        let eq = model(e.chart());
        let once = eq.restrict(&e).unwrap();
        prop_assert!(once.terms().all(|(mi, _)| eq.is_internal(*mi)));
        prop_assert_eq!(eq.restrict(&once).unwrap(), once);
    }

    #[test]
    fn restriction_commutes_with_total_derivatives(e in any_chart().prop_flat_map(|c| affine_expr(c, 3, 1))) {
        let eq = model(e.chart());
        let r = eq.restrict(&e).unwrap();
        for axis in Axis::BOTH {
            let direct = eq.restrict(&e.total_derivative(axis)).unwrap();
            prop_assert_eq!(&eq.restrict(&r.total_derivative(axis)).unwrap(), &direct);
            prop_assert_eq!(&eq.internal_total_derivative(&r, axis).unwrap(), &direct);
        }
    }

    #[test]
    fn theta_maps_classical_symmetries(c in constants()) {
        let map = ed_map(false);
        let phi = classical(&c);
        prop_assert!(EquationModel::hyperbolic().is_symmetry(&phi).unwrap().verdict);
        let eta = theta(&map, &phi).unwrap();
        prop_assert!(EquationModel::elliptic().is_symmetry(&eta).unwrap().verdict);
        prop_assert_eq!(theta_prime(&map, &eta).unwrap(), phi);
    }

    #[test]
    fn theta_prime_inverts_theta_on_real_sections(e in real_expr(Chart::Elliptic, 3, 2), h in real_expr(Chart::Hyperbolic, 3, 2)) {
        let map = ed_map(false);
        prop_assert_eq!(theta(&map, &theta_prime(&map, &e).unwrap()).unwrap(), e);
        prop_assert_eq!(theta_prime(&map, &theta(&map, &h).unwrap()).unwrap(), h);
    }
}

fn sections() -> Vec<DiffExpr> {
    let mut v = vec![DiffExpr::u(Chart::Elliptic)];
    v.extend((0..3).map(|k| catalog_expr(&format!("rho{k}")).unwrap()));
    v
}

#[test]
fn recursion_operators_preserve_symmetries() {
    let eq = EquationModel::elliptic();
    for r in ["box_tilde", "sigma_tilde", "tau_tilde"] {
        let op = catalog_op(r).unwrap();
        for phi in sections() {
            let image = op_apply(&op, &phi).unwrap();
            let report = eq.is_symmetry(&image).unwrap();
            assert!(report.verdict, "{r} on {phi:?}: {:?}", report.residual);
        }
    }
}

#[test]
fn hyperbolic_recursion_operators_preserve_symmetries() {
    let eq = EquationModel::hyperbolic();
    let mut phis = vec![DiffExpr::u(Chart::Hyperbolic)];
    phis.extend((0..3).map(|k| catalog_expr(&format!("phi{k}")).unwrap()));
    for r in ["box", "sigma", "tau"] {
        let op = catalog_op(r).unwrap();
        for phi in &phis {
            assert!(
                eq.is_symmetry(&op_apply(&op, phi).unwrap())
                    .unwrap()
                    .verdict,
                "{r}"
            );
        }
    }
}

#[test]
fn brackets_of_generators_are_symmetries() {
    let eq = EquationModel::elliptic();
    let rho: Vec<DiffExpr> = (0..3)
        .map(|k| catalog_expr(&format!("rho{k}")).unwrap())
        .collect();
    for a in &rho {
        for b in &rho {
            let br = eq.restrict(&jacobi_bracket(a, b).unwrap()).unwrap();
            assert!(eq.is_symmetry(&br).unwrap().verdict);
        }
    }
}

#[test]
fn commutator_of_operators_matches_bracket_of_images() {
    for (chart, names) in [
        (Chart::Elliptic, ["box_tilde", "sigma_tilde", "tau_tilde"]),
        (Chart::Hyperbolic, ["box", "sigma", "tau"]),
    ] {
        let eq = model(chart);
        let ops: Vec<_> = names.iter().map(|n| catalog_op(n).unwrap()).collect();
        for d in &ops {
            for n in &ops {
                let lhs = jacobi_bracket(&d.apply_to_u(), &n.apply_to_u()).unwrap();
                let rhs = op_commutator(d, n).unwrap().apply_to_u().neg();
                assert_eq!(
                    eq.restrict(&lhs).unwrap(),
                    eq.restrict(&rhs).unwrap(),
                    "{chart}"
                );
            }
        }
    }
}

#[test]
fn intermediate_model_agrees_with_elliptic_symmetries() {
    // X6 rewritten through X = x + y, Y = x - y is a symmetry of the intermediate form
    let g = jetcalc::complexify::BaseChange::g_transform();
    let x6 = catalog_expr("X6").unwrap();
    let moved = jetcalc::complexify::pushforward_expr(&g, &x6).unwrap();
    assert_eq!(moved.chart(), Chart::Intermediate);
    assert!(
        EquationModel::intermediate()
            .is_symmetry(&moved)
            .unwrap()
            .verdict
    );
}
