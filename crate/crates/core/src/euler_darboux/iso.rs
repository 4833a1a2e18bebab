//! The isomorphisms `Θ`, `Θ'` on generating sections and `Ψ`, `Ψ'` on
//! recursion operators, built from `ℋ` and its operator transport.

use crate::complexify::{
    pullback_expr, pushforward_expr, split_expr, split_op, transport_op, transport_op_back,
    BaseChange,
};
use crate::jet::{CDiffOp, DiffExpr};

use super::EdError;

/// `re ℋ(φ) + im ℋ(φ)`.
pub fn theta(map: &BaseChange, phi: &DiffExpr) -> Result<DiffExpr, EdError> {
    let (re, im) = split_expr(&pullback_expr(map, phi)?);
    Ok(re.add(&im))
}

/// `re ℋ⁻¹(η) - im ℋ⁻¹(η)`.
pub fn theta_prime(map: &BaseChange, eta: &DiffExpr) -> Result<DiffExpr, EdError> {
    let (re, im) = split_expr(&pushforward_expr(map, eta)?);
    Ok(re.sub(&im))
}

/// `re H⁻¹(R) + im H⁻¹(R)`.
pub fn psi(map: &BaseChange, r: &CDiffOp) -> Result<CDiffOp, EdError> {
    let (re, im) = split_op(&transport_op(map, r)?);
    Ok(re.add(&im))
}

/// `re H(R) - im H(R)`.
pub fn psi_prime(map: &BaseChange, r: &CDiffOp) -> Result<CDiffOp, EdError> {
    let (re, im) = split_op(&transport_op_back(map, r)?);
    Ok(re.sub(&im))
}
