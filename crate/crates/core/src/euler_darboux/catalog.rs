//! Built-in generating sections, recursion operators and defining functions.

use crate::exact_arith::{GaussRat, RatFunc};
use crate::expr_io::{parse_coeff, parse_expr, parse_op};
use crate::jet::{CDiffOp, Chart, DiffExpr, MultiIndex};

use super::EdError;

pub(crate) const F_ED: &str = "(x + y)*u[2,0] + (x + y)*u[0,2] + u[1,0] + u[0,1]";
pub(crate) const F_Y: &str = "2*(xi + eta)*u[1,1] + u[1,0] + u[0,1]";
pub(crate) const F_INT: &str = "u[2,0] + u[0,2] + u[1,0]/X";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    /// Generating section; `Some(chart)` names the equation it is a symmetry of.
    Section(Option<Chart>),
    /// Recursion operator of the equation in the given chart.
    Operator(Chart),
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub chart: Chart,
    pub kind: EntryKind,
    pub text: &'static str,
    pub description: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogItem {
    Expr(DiffExpr),
    Op(CDiffOp),
}

const E: Chart = Chart::Elliptic;
const Y: Chart = Chart::Hyperbolic;
const SYM_E: EntryKind = EntryKind::Section(Some(E));
const SYM_Y: EntryKind = EntryKind::Section(Some(Y));

const fn entry(
    name: &'static str,
    chart: Chart,
    kind: EntryKind,
    text: &'static str,
    description: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        name,
        chart,
        kind,
        text,
        description,
    }
}

pub const ENTRIES: &[CatalogEntry] = &[
    entry("X1", E, SYM_E, "(u[1,0] + u[0,1] + 2*u[1,1]*x + 2*u[1,1]*y)/(x + y)", "second-order symmetry of E_ED"),
    entry(
        "X2",
        E,
        SYM_E,
        "(-y*u[1,0] + 3*x*u[0,1] - 2*u[1,1]*y^2 + 2*u[1,1]*x^2 + 2*u[0,2]*x^2 + 4*u[0,2]*y*x \
         + 2*u[0,2]*y^2 + x*u[1,0] + y*u[0,1])/(x + y)",
        "second-order symmetry of E_ED",
    ),
    entry(
        "X3",
        E,
        SYM_E,
        "(-u[1,0]*y*x - u[0,1]*y^2 + u[0,1]*x^2 - u[0,1]*y*x - 2*y*x^2*u[1,1] - 2*y^2*x*u[1,1] \
         + u[0,2]*x^3 + u[0,2]*x^2*y - u[0,2]*x*y^2 - u[0,2]*y^3)/(x + y)",
        "second-order symmetry of E_ED",
    ),
    entry(
        "X4",
        E,
        SYM_E,
        "(3*x^2*y*u[1,0] + x^3*u[1,0] - 3*y^3*u[0,1] + u*y^2 - u*x^2 + 9*x^2*y*u[0,1] \
         - 3*x*y^2*u[1,0] + 8*u[1,1]*x^3*y + 4*u[0,2]*x^3*y + 4*u[0,2]*y^3*x - 8*u[1,1]*y^3*x \
         + 12*u[0,2]*x^2*y^2 + 2*u[1,1]*x^4 - 2*u[1,1]*y^4 - 2*u[0,2]*x^4 - 2*u[0,2]*y^4 \
         + 3*x*y^2*u[0,1] - x^3*u[0,1] - y^3*u[1,0])/(x + y)",
        "second-order symmetry of E_ED",
    ),
    entry(
        "X5",
        E,
        SYM_E,
        "(u*y^3 + u*x^3 - 12*u[1,1]*x^2*y^3 - 12*u[1,1]*x^3*y^2 - 20*u[0,1]*y^3*x \
         + 12*u[0,1]*x^3*y - 18*u[0,1]*x^2*y^2 + 4*u[1,0]*y^3*x - 12*u[1,0]*x^3*y \
         - 18*u[1,0]*x^2*y^2 - 5*u*x*y^2 - 5*u*x^2*y + u[0,1]*y^4 + 5*u[0,1]*x^4 + u[1,0]*x^4 \
         + 5*u[1,0]*y^4 - 8*u[0,2]*y^4*x - 8*u[0,2]*y^3*x^2 + 8*u[0,2]*y^2*x^3 \
         + 8*u[0,2]*y*x^4 + 2*u[1,1]*y^4*x + 2*u[1,1]*x^4*y + 2*u[1,1]*x^5 + 2*u[1,1]*y^5)/(x + y)",
        "second-order symmetry of E_ED",
    ),
    entry("X6", E, SYM_E, "-u[1,0] + u[0,1]", "classical symmetry of E_ED"),
    entry("X7", E, SYM_E, "u + 2*x*u[1,0] + 2*y*u[0,1]", "classical symmetry of E_ED"),
    entry(
        "X8",
        E,
        SYM_E,
        "u*x - u*y - u[1,0]*y^2 + u[1,0]*x^2 - 2*u[1,0]*y*x + u[0,1]*x^2 - u[0,1]*y^2 + 2*u[0,1]*y*x",
        "classical symmetry of E_ED",
    ),
    entry("X9", E, SYM_E, "u", "classical symmetry of E_ED"),
    entry("rho0", E, SYM_E, "-u[1,0] + u[0,1]", "generator of NSym(E_ED)"),
    entry(
        "rho1",
        E,
        SYM_E,
        "1/2*(x^2 - 2*x*y - y^2)*u[1,0] + 1/2*(x^2 + 2*x*y - y^2)*u[0,1] + 1/2*(x - y)*u",
        "generator of NSym(E_ED)",
    ),
    entry(
        "rho2",
        E,
        SYM_E,
        "(x + y)*u[0,2] + (x - y)*u[1,1] + ((x - y)*u[1,0] + (3*x + y)*u[0,1])/(2*(x + y))",
        "generator of NSym(E_ED)",
    ),
    entry("phi0", Y, SYM_Y, "u[1,0] - u[0,1]", "box applied to u"),
    entry(
        "phi1",
        Y,
        SYM_Y,
        "xi^2*u[1,0] - eta^2*u[0,1] + (xi - eta)/2*u",
        "tau applied to u",
    ),
    entry(
        "phi2",
        Y,
        SYM_Y,
        "xi*u[2,0] - eta*u[0,2] + (xi*u[1,0] - eta*u[0,1])/(xi + eta)",
        "second-order generator of NSym(Y_ED)",
    ),
    entry("box", Y, EntryKind::Operator(Y), "u[1,0] - u[0,1]", "recursion operator D_xi - D_eta"),
    entry(
        "sigma",
        Y,
        EntryKind::Operator(Y),
        "xi*u[1,0] + eta*u[0,1] + u/2",
        "recursion operator xi D_xi + eta D_eta + I/2",
    ),
    entry(
        "tau",
        Y,
        EntryKind::Operator(Y),
        "xi^2*u[1,0] - eta^2*u[0,1] + (xi - eta)/2*u",
        "recursion operator xi^2 D_xi - eta^2 D_eta + (xi - eta)/2 I",
    ),
    entry("box_tilde", E, EntryKind::Operator(E), "-u[1,0] + u[0,1]", "recursion operator -D_x + D_y"),
    entry(
        "sigma_tilde",
        E,
        EntryKind::Operator(E),
        "x*u[1,0] + y*u[0,1] + u/2",
        "recursion operator x D_x + y D_y + I/2",
    ),
    entry(
        "tau_tilde",
        E,
        EntryKind::Operator(E),
        "(1/2*x^2 - x*y - 1/2*y^2)*u[1,0] + (1/2*x^2 + x*y - 1/2*y^2)*u[0,1] + 1/2*(x - y)*u",
        "recursion operator of E_ED",
    ),
    entry("F_ED", E, EntryKind::Section(None), F_ED, "defining function of E_ED"),
    entry("F_Y", Y, EntryKind::Section(None), F_Y, "defining function of Y_ED"),
    entry(
        "F_int",
        Chart::Intermediate,
        EntryKind::Section(None),
        F_INT,
        "defining function of the intermediate equation",
    ),
];

/// Name, chart and summary of the parametric classical family.
pub const CLASSICAL_SYNTAX: &str = "classical(c1,c2,c3,c4)";

impl CatalogEntry {
    pub fn build(&self) -> CatalogItem {
        match self.kind {
            EntryKind::Section(_) => {
                CatalogItem::Expr(parse_expr(self.text, self.chart).expect("built-in text parses"))
            }
            EntryKind::Operator(_) => {
                CatalogItem::Op(parse_op(self.text, self.chart).expect("built-in text parses"))
            }
        }
    }
}

pub fn find(name: &str) -> Option<&'static CatalogEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

/// `(c1 (eta-xi)/2 + c4) u + (-c1 xi^2 + c2 xi - c3) u_xi + (c1 eta^2 + c2 eta + c3) u_eta`.
pub fn classical(c: &[GaussRat; 4]) -> DiffExpr {
    let v = Y.vars();
    let xi = RatFunc::var(v, 0);
    let eta = RatFunc::var(v, 1);
    let k = |z: &GaussRat| RatFunc::constant(v, z.clone());
    let half = GaussRat::from_ratio(1, 2);
    let a0 = eta.sub(&xi).scale(&(&c[0] * &half)).add(&k(&c[3]));
    let a1 = xi
        .pow(2)
        .scale(&-&c[0])
        .add(&xi.scale(&c[1]))
        .sub(&k(&c[2]));
    let a2 = eta
        .pow(2)
        .scale(&c[0])
        .add(&eta.scale(&c[1]))
        .add(&k(&c[2]));
    DiffExpr::from_parts(
        Y,
        RatFunc::zero(v),
        [
            (MultiIndex::ZERO, a0),
            (MultiIndex::new(1, 0), a1),
            (MultiIndex::new(0, 1), a2),
        ],
    )
}

fn classical_from_text(name: &str) -> Result<Option<DiffExpr>, EdError> {
    let Some(inner) = name
        .strip_prefix("classical(")
        .and_then(|s| s.strip_suffix(')'))
    else {
        return Ok(None);
    };
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 4 {
        return Err(EdError::BadParameters(format!(
            "{CLASSICAL_SYNTAX} takes four constants, got {}",
            parts.len()
        )));
    }
    let mut c: [GaussRat; 4] = Default::default();
    for (slot, text) in c.iter_mut().zip(&parts) {
        let f = parse_coeff(text, Y)?;
        *slot = f.as_constant().ok_or_else(|| {
            EdError::BadParameters(format!("`{}` is not a constant", text.trim()))
        })?;
    }
    Ok(Some(classical(&c)))
}

/// Looks up a built-in object; also accepts `classical(c1,c2,c3,c4)`.
pub fn catalog(name: &str) -> Result<CatalogItem, EdError> {
    if let Some(e) = find(name) {
        return Ok(e.build());
    }
    match classical_from_text(name.trim())? {
        Some(e) => Ok(CatalogItem::Expr(e)),
        None => Err(EdError::UnknownName(name.to_string())),
    }
}

pub fn catalog_expr(name: &str) -> Result<DiffExpr, EdError> {
    match catalog(name)? {
        CatalogItem::Expr(e) => Ok(e),
        CatalogItem::Op(_) => Err(EdError::WrongKind(name.to_string(), "an expression")),
    }
}

pub fn catalog_op(name: &str) -> Result<CDiffOp, EdError> {
    match catalog(name)? {
        CatalogItem::Op(o) => Ok(o),
        CatalogItem::Expr(_) => Err(EdError::WrongKind(name.to_string(), "an operator")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euler_darboux::EquationModel;

    #[test]
    fn every_entry_builds() {
        for e in ENTRIES {
            e.build();
        }
    }

    #[test]
    fn simple_entries() {
        assert_eq!(catalog_expr("X9").unwrap(), DiffExpr::u(E));
        assert_eq!(
            catalog_expr("rho0").unwrap(),
            DiffExpr::jet(E, MultiIndex::new(0, 1)).sub(&DiffExpr::jet(E, MultiIndex::new(1, 0)))
        );
        let tau = catalog_op("tau_tilde").unwrap();
        let v = E.vars();
        let (x, y) = (RatFunc::var(v, 0), RatFunc::var(v, 1));
        let h = GaussRat::from_ratio(1, 2);
        let xy = x.mul(&y);
        assert_eq!(
            tau.coeff(MultiIndex::new(1, 0)).unwrap(),
            &x.pow(2).scale(&h).sub(&xy).sub(&y.pow(2).scale(&h))
        );
        assert_eq!(
            tau.coeff(MultiIndex::new(0, 1)).unwrap(),
            &x.pow(2).scale(&h).add(&xy).sub(&y.pow(2).scale(&h))
        );
        assert_eq!(tau.coeff(MultiIndex::ZERO).unwrap(), &x.sub(&y).scale(&h));
    }

    #[test]
    fn unknown_and_wrong_kind() {
        assert!(matches!(catalog("X10"), Err(EdError::UnknownName(_))));
        assert!(catalog_op("X1").is_err());
        assert!(catalog_expr("box").is_err());
        assert!(catalog("classical(1,2)").is_err());
        assert!(catalog("classical(1,2,x,0)").is_err());
    }

    #[test]
    fn classical_members_match_operators() {
        // c1 = -1 gives tau(u); c3 = -1 gives box(u)
        let z = GaussRat::from_int(0);
        let m1 = GaussRat::from_int(-1);
        let tau_u = classical(&[m1.clone(), z.clone(), z.clone(), z.clone()]);
        assert_eq!(tau_u, catalog_expr("phi1").unwrap());
        let box_u = classical(&[z.clone(), z.clone(), m1, z]);
        assert_eq!(box_u, catalog_expr("phi0").unwrap());
        assert_eq!(
            catalog_expr("classical(-1, 0, 0, 0)").unwrap(),
            catalog_expr("phi1").unwrap()
        );
    }

    #[test]
    fn phi_and_rho_are_symmetries() {
        let e = EquationModel::elliptic();
        let y = EquationModel::hyperbolic();
        for n in [
            "rho0", "rho1", "rho2", "X1", "X2", "X3", "X4", "X5", "X6", "X7", "X8", "X9",
        ] {
            assert!(
                e.is_symmetry(&catalog_expr(n).unwrap()).unwrap().verdict,
                "{n}"
            );
        }
        for n in ["phi0", "phi1", "phi2"] {
            assert!(
                y.is_symmetry(&catalog_expr(n).unwrap()).unwrap().verdict,
                "{n}"
            );
        }
    }
}
