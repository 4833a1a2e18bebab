//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use jetcalc::complexify::{
    block_inverse, closed_form_p, prolong_block, pullback_expr, recurrence_blocks, transport_op,
    BaseChange, CMatrix,
};
use jetcalc::euler_darboux::{
    catalog, catalog_expr, catalog_op, classical, ed_map, hierarchy_relations_check, theta,
    theta_prime, vanishing_table, CatalogItem, EquationModel, OperatorTriple, ENTRIES,
};
use jetcalc::exact_arith::GaussRat;
use jetcalc::expr_io::{
    expr_to_json, from_json, op_to_json, parse_expr, parse_op, print_expr, print_op, Value,
};
use jetcalc::jet::{
    evolutionary_apply, jacobi_bracket, op_commutator, Axis, Chart, DiffExpr, Limits,
};
use proptest::prelude::*;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn blocks() -> Outcome {
    let map = BaseChange::canonical_wirtinger();
    let rec = recurrence_blocks(8);
    for k in 1..=8u32 {
        let n = k as usize + 1;
        let p = prolong_block(&map, k);
        let q = block_inverse(&map, k);
        for r in 0..n {
            for s in 0..n {
                let cf = closed_form_p(k, r as u32, s as u32).map_err(fail)?;
                ensure(*p.entry(r, s) == cf, || {
                    format!("k={k}: closed form differs at ({r},{s})")
                })?;
                ensure(*rec[k as usize].entry(r, s) == cf, || {
                    format!("k={k}: recurrence differs at ({r},{s})")
                })?;
                let two_k = GaussRat::from_int(1i64 << k);
                let q_rs = &two_k * &(GaussRat::i_pow((r + s) as i64) * p.entry(r, s));
                ensure(*q.entry(r, s) == q_rs, || {
                    format!("k={k}: q formula fails at ({r},{s})")
                })?;
                ensure(p.entry(r, s).conj() == *p.entry(k as usize - r, s), || {
                    format!("k={k}: conjugation symmetry fails at ({r},{s})")
                })?;
            }
        }
        ensure(p.entries.mul(&q.entries) == CMatrix::identity(n), || {
            format!("k={k}: P Q != I")
        })?;
        ensure(
            p.entries.conj().mul(&q.entries) == CMatrix::antidiagonal(n),
            || format!("k={k}: conj(P) Q != A"),
        )?;
    }
    Ok("k = 1..8: recurrence = closed form, PQ = I, q formula, conjugation, conj(P)Q = A".into())
}

fn symmetry_table() -> Outcome {
    let e = EquationModel::elliptic();
    for k in 1..=9 {
        let name = format!("X{k}");
        let rep = e
            .is_symmetry(&catalog_expr(&name).map_err(fail)?)
            .map_err(fail)?;
        ensure(rep.verdict, || {
            format!("{name} residual {}", print_expr(&rep.residual))
        })?;
    }
    let ux = parse_expr("u[1,0]", Chart::Elliptic).map_err(fail)?;
    let expected = parse_expr("(u[1,0] + u[0,1])/(x + y)", Chart::Elliptic).map_err(fail)?;
    let rep = e.is_symmetry(&ux).map_err(fail)?;
    ensure(rep.residual == expected, || {
        format!("u_x residual {}", print_expr(&rep.residual))
    })?;
    Ok(format!(
        "X1..X9 residual 0; u_x residual {}",
        print_expr(&rep.residual)
    ))
}

fn constants(s: &mut Sampler) -> [GaussRat; 4] {
    s.draw(&[rational(), rational(), rational(), rational()])
}

fn classical_family() -> Outcome {
    let y = EquationModel::hyperbolic();
    let mut s = Sampler::new(3);
    let n = 12;
    for _ in 0..n {
        let c = constants(&mut s);
        let rep = y.is_symmetry(&classical(&c)).map_err(fail)?;
        ensure(rep.verdict, || {
            format!("{c:?}: residual {}", print_expr(&rep.residual))
        })?;
    }
    Ok(format!(
        "{n} random rational samples are symmetries of Y_ED"
    ))
}

fn transforms() -> Outcome {
    let map = ed_map(false);
    let e = EquationModel::elliptic();
    let fy = pullback_expr(&map, &catalog_expr("F_Y").map_err(fail)?).map_err(fail)?;
    ensure(fy == catalog_expr("F_ED").map_err(fail)?, || {
        format!("pullback of F_Y is {}", print_expr(&fy))
    })?;
    let i = GaussRat::i();
    for k in 0..3 {
        let phi = catalog_expr(&format!("phi{k}")).map_err(fail)?;
        let rho = catalog_expr(&format!("rho{k}")).map_err(fail)?;
        let h = e
            .restrict(&pullback_expr(&map, &phi).map_err(fail)?)
            .map_err(fail)?;
        ensure(h == rho.scale(&i), || {
            format!("H(phi{k}) restricts to {}", print_expr(&h))
        })?;
    }
    for (src, dst, c) in [
        ("box", "box_tilde", i.clone()),
        ("tau", "tau_tilde", i.clone()),
        ("sigma", "sigma_tilde", GaussRat::from_int(1)),
    ] {
        let t = transport_op(&map, &catalog_op(src).map_err(fail)?).map_err(fail)?;
        ensure(t == catalog_op(dst).map_err(fail)?.scale(&c), || {
            format!("{src} transports to {}", print_op(&t))
        })?;
    }
    Ok("F_Y -> F_ED; H(phi_k) = i rho_k (restricted); box, tau, sigma transported".into())
}

fn isomorphism() -> Outcome {
    let map = ed_map(false);
    let (e, y) = (EquationModel::elliptic(), EquationModel::hyperbolic());
    let mut set = vec![DiffExpr::u(Chart::Hyperbolic)];
    for k in 0..3 {
        set.push(catalog_expr(&format!("phi{k}")).map_err(fail)?);
    }
    let mut s = Sampler::new(5);
    for _ in 0..5 {
        set.push(classical(&constants(&mut s)));
    }
    let mut verified = 0;
    for phi in &set {
        let there = theta(&map, phi).map_err(fail)?;
        let back = theta_prime(&map, &there).map_err(fail)?;
        ensure(back == *phi, || {
            format!("theta' theta moves {}", print_expr(phi))
        })?;
        let again = theta(&map, &back).map_err(fail)?;
        ensure(again == there, || {
            format!("theta theta' moves {}", print_expr(&there))
        })?;
        if y.is_symmetry(phi).map_err(fail)?.verdict {
            let rep = e.is_symmetry(&there).map_err(fail)?;
            ensure(rep.verdict, || {
                format!("theta({}) is not a symmetry of E_ED", print_expr(phi))
            })?;
            verified += 1;
        }
    }
    let ue = DiffExpr::u(Chart::Elliptic);
    let ue_back = theta(&map, &theta_prime(&map, &ue).map_err(fail)?).map_err(fail)?;
    ensure(ue_back == ue, || "theta theta' moves u on E_ED".into())?;
    Ok(format!(
        "{} sections round-trip both ways; {verified} Y_ED symmetries map to E_ED symmetries",
        set.len()
    ))
}

fn relations() -> Outcome {
    let mut parts = Vec::new();
    for triple in [OperatorTriple::elliptic(), OperatorTriple::hyperbolic()] {
        for m in 1..=2 {
            let rep = hierarchy_relations_check(&triple, m, &Limits::default()).map_err(fail)?;
            if let Some(c) = rep.checks.iter().find(|c| !c.pass) {
                return Err(format!(
                    "{} m={m}: [N_{}, {}] fails",
                    triple.chart, c.j, c.family
                ));
            }
            let boxes: Vec<String> = rep
                .checks
                .iter()
                .filter(|c| c.family.to_string() == "box")
                .map(|c| c.measured.as_ref().map_or("-".into(), |v| v.to_string()))
                .collect();
            parts.push(format!(
                "{} m={m} box coefficients [{}]",
                triple.chart,
                boxes.join(", ")
            ));
        }
    }
    Ok(parts.join("; "))
}

fn vanishing() -> Outcome {
    let e = EquationModel::elliptic();
    for m in 1..=3u32 {
        let rows = vanishing_table(m, 2 * m + 1, &e).map_err(fail)?;
        for row in &rows {
            let should = row.j == 2 * m + 1;
            ensure(row.vanishes == should, || {
                format!("m={m} j={}: vanishes = {}", row.j, row.vanishes)
            })?;
        }
    }
    Ok("m = 1, 2, 3: nonzero for j <= 2m, zero at j = 2m+1".into())
}

fn algebra() -> Outcome {
    let br = |p: &DiffExpr, q: &DiffExpr| jacobi_bracket(p, q).map_err(fail);
    let mut s = Sampler::new(8);
    let section = poly_section(Chart::Elliptic, 3, 2);
    let triples = 100;
    for _ in 0..triples {
        let (a, b, c) = (s.draw(&section), s.draw(&section), s.draw(&section));
        ensure(br(&a, &b)? == br(&b, &a)?.neg(), || {
            "antisymmetry fails".into()
        })?;
        let sum = br(&a, &br(&b, &c)?)?
            .add(&br(&b, &br(&c, &a)?)?)
            .add(&br(&c, &br(&a, &b)?)?);
        ensure(sum.is_zero(), || format!("Jacobi sum {}", print_expr(&sum)))?;
        for axis in Axis::BOTH {
            let lhs = evolutionary_apply(&a, &b.total_derivative(axis)).map_err(fail)?;
            let rhs = evolutionary_apply(&a, &b)
                .map_err(fail)?
                .total_derivative(axis);
            ensure(lhs == rhs, || {
                "evolutionary field does not commute with D".into()
            })?;
        }
    }

    let map = ed_map(false);
    let h = |e: &DiffExpr| pullback_expr(&map, e).map_err(fail);
    let (phi_s, psi_s) = (
        linear_section(Chart::Hyperbolic, 2, 1),
        poly_section(Chart::Hyperbolic, 2, 2),
    );
    let pairs = 50;
    for _ in 0..pairs {
        let (phi, psi) = (s.draw(&phi_s), s.draw(&psi_s));
        ensure(h(&br(&phi, &psi)?)? == br(&h(&phi)?, &h(&psi)?)?, || {
            "H does not commute with the bracket".into()
        })?;
    }

    let e = EquationModel::elliptic();
    let rho: Vec<DiffExpr> = (0..3)
        .map(|k| catalog_expr(&format!("rho{k}")))
        .collect::<Result<_, _>>()
        .map_err(fail)?;
    for a in &rho {
        for b in &rho {
            let r = e.restrict(&br(a, b)?).map_err(fail)?;
            ensure(e.is_symmetry(&r).map_err(fail)?.verdict, || {
                "rho bracket is not a symmetry".into()
            })?;
        }
    }

    let ops: Vec<_> = ["box_tilde", "sigma_tilde", "tau_tilde"]
        .iter()
        .map(|n| catalog_op(n))
        .collect::<Result<_, _>>()
        .map_err(fail)?;
    for d in &ops {
        for n in &ops {
            let lhs = op_commutator(d, n).map_err(fail)?.apply_to_u();
            let rhs = br(&d.apply_to_u(), &n.apply_to_u())?.neg();
            ensure(
                e.restrict(&lhs).map_err(fail)? == e.restrict(&rhs).map_err(fail)?,
                || "[D, N](u) != -{D(u), N(u)}".into(),
            )?;
        }
    }
    Ok(format!(
        "{triples} Jacobi triples, {pairs} H pairs, rho closure, 9 commutator/bracket pairs"
    ))
}

fn round_trip_value(v: &CatalogItem) -> Result<(), String> {
    match v {
        CatalogItem::Expr(e) => {
            ensure(
                parse_expr(&print_expr(e), e.chart()).map_err(fail)? == *e,
                || format!("text round trip moves {}", print_expr(e)),
            )?;
            match from_json(&expr_to_json(e)).map_err(fail)? {
                Value::Expr(back) if back == *e => Ok(()),
                _ => Err(format!("JSON round trip moves {}", print_expr(e))),
            }
        }
        CatalogItem::Op(op) => {
            ensure(
                parse_op(&print_op(op), op.chart()).map_err(fail)? == *op,
                || format!("text round trip moves {}", print_op(op)),
            )?;
            match from_json(&op_to_json(op)).map_err(fail)? {
                Value::Op(back) if back == *op => Ok(()),
                _ => Err(format!("JSON round trip moves {}", print_op(op))),
            }
        }
    }
}

fn round_trips() -> Outcome {
    for entry in ENTRIES {
        round_trip_value(&entry.build()).map_err(|e| format!("{}: {e}", entry.name))?;
    }
    round_trip_value(&catalog("classical(1, -1/2, 3, 2/3)").map_err(fail)?)?;
    let mut s = Sampler::new(9);
    let strategy = any_chart().prop_flat_map(|c| affine_expr(c, 4, 2));
    let n = 120;
    for _ in 0..n {
        round_trip_value(&CatalogItem::Expr(s.draw(&strategy)))?;
    }
    Ok(format!(
        "{} catalog entries and {n} random expressions",
        ENTRIES.len() + 1
    ))
}

type Criterion = (u32, &'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 9] = [
        (1, "block suite", blocks, secs(1)),
        (2, "symmetry table", symmetry_table, secs(5)),
        (3, "classical family", classical_family, secs(5)),
        (4, "transform identities", transforms, secs(5)),
        (5, "theta/psi isomorphism", isomorphism, secs(10)),
        (6, "hierarchy relations", relations, secs(30)),
        (7, "vanishing law", vanishing, secs(300)),
        (8, "algebraic suites", algebra, secs(60)),
        (9, "round trips", round_trips, secs(5)),
    ];
    let mut failed = 0;
    for (n, name, run, budget) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(d) if took > budget => Err(format!("{d}; took {took:.2?}, budget {budget:?}")),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {n} PASS {name} ({took:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL {name} ({took:.2?}): {why}");
            }
        }
    }
    println!("{}/9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
