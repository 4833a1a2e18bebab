//! The elliptic and hyperbolic Euler-Darboux equations: restriction to
//! internal coordinates, symmetry tests, the isomorphisms between their
//! symmetry algebras, the catalog of known objects and the `∇_j^m` hierarchy.

mod catalog;
mod hierarchy;
mod iso;
mod model;

use thiserror::Error;

use crate::complexify::BaseChange;
use crate::expr_io::ParseError;
use crate::jet::{JetError, MultiIndex};

pub use catalog::{
    catalog, catalog_expr, catalog_op, classical, find, CatalogEntry, CatalogItem, EntryKind,
    CLASSICAL_SYNTAX, ENTRIES,
};
pub use hierarchy::{
    bracket_cross_check, hierarchy, hierarchy_relations_check, nested_bracket,
    proportionality_expr, proportionality_op, restricted_generator, vanishing_table,
    BracketCrossCheck, OperatorTriple, RelationCheck, RelationFamily, RelationsReport,
    VanishingRow,
};
pub use iso::{psi, psi_prime, theta, theta_prime};
pub use model::{EquationModel, SymmetryReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EdError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("`{0}` is not in the catalog")]
    UnknownName(String),
    #[error("`{0}` is not {1}")]
    WrongKind(String, &'static str),
    #[error("{0}")]
    BadParameters(String),
    #[error("cannot solve the equation: {0}")]
    NotSolvable(String),
    #[error("rewriting u{0} refers back to itself")]
    Cycle(MultiIndex),
}

impl EdError {
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            EdError::Jet(JetError::OrderLimit { .. } | JetError::DegreeLimit { .. })
        )
    }
}

/// Base change carrying the hyperbolic equation onto the elliptic one.
/// `literal` selects the unscaled composition `X = x+y, Y = x-y, xi = X+iY`.
pub fn ed_map(literal: bool) -> BaseChange {
    if literal {
        BaseChange::euler_darboux_literal()
    } else {
        BaseChange::euler_darboux()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexify::{pullback_expr, transport_op};
    use crate::exact_arith::{GaussRat, RatFunc};
    use crate::jet::Chart;

    #[test]
    fn ed_map_carries_equation_exactly() {
        let fy = catalog_expr("F_Y").unwrap();
        assert_eq!(
            pullback_expr(&ed_map(false), &fy).unwrap(),
            catalog_expr("F_ED").unwrap()
        );
        let lit = pullback_expr(&ed_map(true), &fy).unwrap();
        assert_eq!(
            proportionality_expr(&lit, &catalog_expr("F_ED").unwrap()),
            Some(GaussRat::from_ratio(1, 2))
        );
    }

    #[test]
    fn intermediate_equation_is_a_multiple() {
        let f = pullback_expr(&BaseChange::g_transform(), &catalog_expr("F_int").unwrap()).unwrap();
        let v = Chart::Elliptic.vars();
        let s = RatFunc::var(v, 0).add(&RatFunc::var(v, 1));
        let scaled = f.mul_coeff(&s.scale(&GaussRat::from_int(2)));
        assert_eq!(scaled, catalog_expr("F_ED").unwrap());
    }

    #[test]
    fn generators_pull_back_to_i_rho_after_restriction() {
        let map = ed_map(false);
        let e = EquationModel::elliptic();
        for k in 0..3 {
            let phi = catalog_expr(&format!("phi{k}")).unwrap();
            let rho = catalog_expr(&format!("rho{k}")).unwrap();
            let h = e.restrict(&pullback_expr(&map, &phi).unwrap()).unwrap();
            assert_eq!(h, rho.scale(&GaussRat::i()), "phi{k}");
        }
    }

    #[test]
    fn transported_recursion_operators() {
        let map = ed_map(false);
        let i = GaussRat::i();
        let t = |n: &str| transport_op(&map, &catalog_op(n).unwrap()).unwrap();
        assert_eq!(t("box"), catalog_op("box_tilde").unwrap().scale(&i));
        assert_eq!(t("tau"), catalog_op("tau_tilde").unwrap().scale(&i));
        assert_eq!(t("sigma"), catalog_op("sigma_tilde").unwrap());
    }

    #[test]
    fn limit_errors_are_flagged() {
        let err = EdError::Jet(JetError::OrderLimit {
            order: 20,
            limit: 16,
        });
        assert!(err.is_limit());
        assert!(!EdError::UnknownName("q".into()).is_limit());
    }
}
