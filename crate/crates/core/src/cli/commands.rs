use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::complexify::{
    block_inverse, check_blocks, prolong_block, pullback_expr, pushforward_expr, BaseChange,
    CMatrix,
};
use crate::euler_darboux::{
    catalog as lookup, ed_map, hierarchy_relations_check, psi, psi_prime, theta, theta_prime,
    CatalogItem, EdError, EntryKind, EquationModel, OperatorTriple, SymmetryReport,
    CLASSICAL_SYNTAX, ENTRIES,
};
use crate::expr_io::{
    expr_to_json_value, from_json, op_to_json_value, parse_expr, parse_op, print_expr, print_op,
    ParseError, ParseErrorKind, Value,
};
use crate::jet::{jacobi_bracket, CDiffOp, Chart, DiffExpr};

use super::{
    BlocksArgs, BracketArgs, CatalogArgs, CliError, Ctx, HierarchyArgs, MapName, Report,
    TransformArgs, VerifyArgs, EXIT_NEGATIVE, EXIT_OK,
};

fn parse_error(err: ParseError, text: &str) -> CliError {
    CliError::Parse {
        err,
        text: text.to_string(),
    }
}

fn ed_error(e: EdError, text: &str) -> CliError {
    match e {
        EdError::Parse(err) => parse_error(err, text),
        other => other.into(),
    }
}

fn is_catalog_name(s: &str) -> bool {
    let s = s.trim();
    crate::euler_darboux::find(s).is_some() || s.starts_with("classical(")
}

fn catalog_in(name: &str, chart: Chart) -> Result<CatalogItem, CliError> {
    let item = lookup(name.trim()).map_err(|e| ed_error(e, name))?;
    let found = match &item {
        CatalogItem::Expr(e) => e.chart(),
        CatalogItem::Op(o) => o.chart(),
    };
    if found != chart {
        return Err(CliError::Usage(format!(
            "catalog entry `{name}` lives in the {found} chart, expected {chart}"
        )));
    }
    Ok(item)
}

fn expr_from_name(name: &str, chart: Chart) -> Result<DiffExpr, CliError> {
    match catalog_in(name, chart)? {
        CatalogItem::Expr(e) => Ok(e),
        CatalogItem::Op(_) => Err(CliError::Usage(format!(
            "`{name}` is an operator, not a section"
        ))),
    }
}

fn op_from_name(name: &str, chart: Chart) -> Result<CDiffOp, CliError> {
    match catalog_in(name, chart)? {
        CatalogItem::Op(o) => Ok(o),
        CatalogItem::Expr(_) => Err(CliError::Usage(format!(
            "`{name}` is a section, not an operator"
        ))),
    }
}

/// Catalog name if one matches, otherwise section text.
fn expr_or_name(s: &str, chart: Chart) -> Result<DiffExpr, CliError> {
    if is_catalog_name(s) {
        expr_from_name(s, chart)
    } else {
        parse_expr(s, chart).map_err(|e| parse_error(e, s))
    }
}

fn read_file(path: &Path) -> Result<(Value, String), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let v = from_json(&text).map_err(|e| parse_error(e, &text))?;
    Ok((v, text))
}

fn check_chart(v: &Value, chart: Chart, text: &str) -> Result<(), CliError> {
    if v.chart() == chart {
        return Ok(());
    }
    let needle = format!("\"{}\"", v.chart().name());
    let start = text.find(&needle).unwrap_or(0);
    let end = if start == 0 && !text.starts_with(&needle) {
        0
    } else {
        start + needle.len()
    };
    let before = &text[..start];
    let span = crate::expr_io::SourceSpan {
        start,
        end,
        line: before.matches('\n').count() + 1,
        column: before
            .rsplit('\n')
            .next()
            .map(|l| l.chars().count())
            .unwrap_or(0)
            + 1,
    };
    Err(parse_error(
        ParseError::new(
            ParseErrorKind::ChartMismatch,
            span,
            format!("document is in the {} chart, expected {chart}", v.chart()),
        ),
        text,
    ))
}

fn expr_from_file(path: &Path, chart: Chart) -> Result<DiffExpr, CliError> {
    let (v, text) = read_file(path)?;
    check_chart(&v, chart, &text)?;
    match v {
        Value::Expr(e) => Ok(e),
        Value::Op(_) => Err(CliError::Usage(
            "the document holds an operator, not a section".into(),
        )),
    }
}

fn op_from_file(path: &Path, chart: Chart) -> Result<CDiffOp, CliError> {
    let (v, text) = read_file(path)?;
    check_chart(&v, chart, &text)?;
    match v {
        Value::Op(o) => Ok(o),
        Value::Expr(_) => Err(CliError::Usage(
            "the document holds a section, not an operator".into(),
        )),
    }
}

fn model_for(ctx: &Ctx, chart: Chart) -> EquationModel {
    EquationModel::for_chart(chart, ctx.limits)
}

fn verdict_word(v: bool) -> &'static str {
    if v {
        "symmetry"
    } else {
        "not a symmetry"
    }
}

fn code_for(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

pub(crate) fn verify(ctx: &Ctx, a: &VerifyArgs) -> Result<Report, CliError> {
    let chart = a.eq.chart();
    let model = model_for(ctx, chart);
    let items: Vec<(String, DiffExpr)> = if let Some(t) = &a.expr {
        vec![(
            t.clone(),
            parse_expr(t, chart).map_err(|e| parse_error(e, t))?,
        )]
    } else if let Some(p) = &a.file {
        vec![(p.display().to_string(), expr_from_file(p, chart)?)]
    } else if a.all {
        ENTRIES
            .iter()
            .filter(|e| e.kind == EntryKind::Section(Some(chart)))
            .map(|e| Ok((e.name.to_string(), expr_from_name(e.name, chart)?)))
            .collect::<Result<_, CliError>>()?
    } else {
        a.name
            .iter()
            .map(|n| Ok((n.clone(), expr_from_name(n, chart)?)))
            .collect::<Result<_, CliError>>()?
    };
    let check = |(_, e): &(String, DiffExpr)| model.is_symmetry(e);
    let results: Vec<Result<SymmetryReport, EdError>> = if ctx.parallel {
        items.par_iter().map(check).collect()
    } else {
        items.iter().map(check).collect()
    };
    let reports = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().filter(|r| r.verdict).count();
    let mut text = format!("equation: {} ({chart})\n", model.name());
    let mut docs = Vec::new();
    for ((label, _), r) in items.iter().zip(&reports) {
        let _ = write!(
            text,
            "\nlabel: {label}\ninput: {}\nresidual: {}\nverdict: {}\n",
            print_expr(&r.input),
            print_expr(&r.residual),
            verdict_word(r.verdict)
        );
        docs.push(json!({
            "label": label,
            "input": expr_to_json_value(&r.input),
            "input_text": print_expr(&r.input),
            "residual": expr_to_json_value(&r.residual),
            "residual_text": print_expr(&r.residual),
            "verdict": r.verdict,
        }));
    }
    let all = passed == reports.len();
    if reports.len() > 1 {
        let _ = writeln!(text, "\nsummary: {passed}/{} symmetries", reports.len());
    }
    Ok(Report {
        code: code_for(all),
        text,
        json: json!({
            "command": "verify",
            "equation": chart.name(),
            "results": docs,
            "all_pass": all,
        }),
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Which {
    Theta,
    ThetaPrime,
    Psi,
    PsiPrime,
    Pullback,
    Pushforward,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Theta => "theta",
            Which::ThetaPrime => "theta-prime",
            Which::Psi => "psi",
            Which::PsiPrime => "psi-prime",
            Which::Pullback => "pullback",
            Which::Pushforward => "pushforward",
        }
    }

    fn source(self) -> Chart {
        match self {
            Which::Theta | Which::Psi | Which::Pullback => Chart::Hyperbolic,
            _ => Chart::Elliptic,
        }
    }

    fn is_op(self) -> bool {
        matches!(self, Which::Psi | Which::PsiPrime)
    }
}

pub(crate) fn transform(ctx: &Ctx, a: &TransformArgs) -> Result<Report, CliError> {
    let which = [
        (a.theta, Which::Theta),
        (a.theta_prime, Which::ThetaPrime),
        (a.psi, Which::Psi),
        (a.psi_prime, Which::PsiPrime),
        (a.pullback, Which::Pullback),
        (a.pushforward, Which::Pushforward),
    ]
    .into_iter()
    .find_map(|(on, w)| on.then_some(w))
    .expect("clap enforces one map");
    let map = ed_map(a.literal);
    let src = which.source();
    let target = if src == Chart::Hyperbolic {
        Chart::Elliptic
    } else {
        Chart::Hyperbolic
    };
    let label = if a.literal { "literal" } else { "rescaled" };
    if which.is_op() {
        if a.restrict {
            return Err(CliError::Usage(
                "--restrict applies to sections only".into(),
            ));
        }
        let input = if let Some(t) = &a.expr {
            parse_op(t, src).map_err(|e| parse_error(e, t))?
        } else if let Some(n) = &a.name {
            op_from_name(n, src)?
        } else {
            op_from_file(a.file.as_deref().expect("clap enforces one input"), src)?
        };
        let out = if which == Which::Psi {
            psi(&map, &input)?
        } else {
            psi_prime(&map, &input)?
        };
        ctx.limits.check_degree(out.max_degree())?;
        return Ok(Report {
            code: EXIT_OK,
            text: format!(
                "map: {} ({label})\ninput: {}\noutput: {}\n",
                which.name(),
                print_op(&input),
                print_op(&out)
            ),
            json: json!({
                "command": "transform",
                "map": which.name(),
                "literal": a.literal,
                "restricted": false,
                "input": op_to_json_value(&input),
                "output": op_to_json_value(&out),
                "output_text": print_op(&out),
            }),
        });
    }
    let input = if let Some(t) = &a.expr {
        parse_expr(t, src).map_err(|e| parse_error(e, t))?
    } else if let Some(n) = &a.name {
        expr_from_name(n, src)?
    } else {
        expr_from_file(a.file.as_deref().expect("clap enforces one input"), src)?
    };
    ctx.limits.check_order(input.order())?;
    let mut out = match which {
        Which::Theta => theta(&map, &input)?,
        Which::ThetaPrime => theta_prime(&map, &input)?,
        Which::Pullback => pullback_expr(&map, &input)?,
        _ => pushforward_expr(&map, &input)?,
    };
    if a.restrict {
        out = model_for(ctx, target).restrict(&out)?;
    }
    ctx.limits.check_degree(out.max_degree())?;
    Ok(Report {
        code: EXIT_OK,
        text: format!(
            "map: {} ({label})\ninput: {}\noutput: {}\n",
            which.name(),
            print_expr(&input),
            print_expr(&out)
        ),
        json: json!({
            "command": "transform",
            "map": which.name(),
            "literal": a.literal,
            "restricted": a.restrict,
            "input": expr_to_json_value(&input),
            "output": expr_to_json_value(&out),
            "output_text": print_expr(&out),
        }),
    })
}

fn matrix_json(m: &CMatrix) -> Json {
    Json::Array(
        m.rows()
            .map(|r| Json::Array(r.iter().map(|z| Json::String(z.to_string())).collect()))
            .collect(),
    )
}

fn flag(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "ok",
        Some(false) => "FAIL",
        None => "-",
    }
}

pub(crate) fn blocks(ctx: &Ctx, a: &BlocksArgs) -> Result<Report, CliError> {
    ctx.limits.check_order(a.k)?;
    let (map, name) = match a.map {
        MapName::Canonical => (BaseChange::canonical_wirtinger(), "canonical"),
        MapName::Ed => (BaseChange::euler_darboux(), "ed"),
        MapName::EdLiteral => (BaseChange::euler_darboux_literal(), "ed-literal"),
        MapName::G => (BaseChange::g_transform(), "g"),
    };
    let p = prolong_block(&map, a.k);
    let q = block_inverse(&map, a.k);
    let checks = check_blocks(&map, a.k);
    let all = checks.iter().all(|c| c.all_pass());
    let mut text = format!(
        "map: {name} ({} -> {})\nP^({k}):\n{}Q^({k}):\n{}checks:\n",
        map.source(),
        map.target(),
        p.entries,
        q.entries,
        k = a.k
    );
    for c in &checks {
        let _ = writeln!(
            text,
            "  k={} inverse={} reverse-map={} closed-form={} recurrence={} q-formula={} conjugation={} reality={}",
            c.k,
            flag(Some(c.inverse_law)),
            flag(Some(c.inverse_matches_reverse_map)),
            flag(c.closed_form),
            flag(c.recurrence),
            flag(c.q_formula),
            flag(c.conjugation_symmetry),
            flag(Some(c.reality)),
        );
    }
    let _ = writeln!(text, "all checks: {}", if all { "pass" } else { "FAIL" });
    Ok(Report {
        code: code_for(all),
        text,
        json: json!({
            "command": "blocks",
            "map": name,
            "k": a.k,
            "P": matrix_json(&p.entries),
            "Q": matrix_json(&q.entries),
            "checks": serde_json::to_value(&checks).expect("plain struct"),
            "all_pass": all,
        }),
    })
}

pub(crate) fn hierarchy(ctx: &Ctx, a: &HierarchyArgs) -> Result<Report, CliError> {
    let chart = a.eq.chart();
    let triple = OperatorTriple::for_chart(chart)
        .ok_or_else(|| CliError::Usage(format!("no recursion operators in the {chart} chart")))?;
    if a.m == 0 {
        return Err(CliError::Usage("--m must be at least 1".into()));
    }
    let model = model_for(ctx, chart);
    let j_max = a.max_j.unwrap_or(2 * a.m + 1);
    let seq = triple.sequence(a.m, j_max, &ctx.limits)?;
    let image = |op: &CDiffOp| model.restricted_image(op);
    let images: Vec<Result<DiffExpr, EdError>> = if ctx.parallel {
        seq.par_iter().map(image).collect()
    } else {
        seq.iter().map(image).collect()
    };
    let images = images.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut law = true;
    let mut text = format!("equation: {} ({chart}), m = {}\n", model.name(), a.m);
    let mut rows = Vec::new();
    for (j, (op, g)) in seq.iter().zip(&images).enumerate() {
        let expected = j as u32 > 2 * a.m;
        let ok = g.is_zero() == expected;
        law &= ok;
        let _ = write!(
            text,
            "\nj = {j}\n  operator: {}\n  restricted image: {}\n  vanishes: {}{}\n",
            print_op(op),
            print_expr(g),
            if g.is_zero() { "yes" } else { "no" },
            if ok { "" } else { " (UNEXPECTED)" }
        );
        rows.push(json!({
            "j": j,
            "operator": op_to_json_value(op),
            "operator_text": print_op(op),
            "restricted": expr_to_json_value(g),
            "restricted_text": print_expr(g),
            "vanishes": g.is_zero(),
            "expected_vanishing": expected,
        }));
    }
    let _ = writeln!(
        text,
        "\nvanishing law: {}",
        if law { "holds" } else { "FAILS" }
    );
    let mut doc = json!({
        "command": "hierarchy",
        "equation": chart.name(),
        "m": a.m,
        "generators": rows,
        "vanishing_law": law,
    });
    let mut rel_ok = true;
    if a.relations {
        let report = hierarchy_relations_check(&triple, a.m, &ctx.limits)?;
        rel_ok = report.all_pass();
        let _ = writeln!(text, "\nrelations:");
        let mut rels = Vec::new();
        for c in &report.checks {
            let measured = c.measured.as_ref().map(|z| z.to_string());
            let _ = writeln!(
                text,
                "  [N_{j}, {f}] = {e} N_{t}  measured {m}  {s}",
                j = c.j,
                f = c.family,
                e = c.expected,
                t = c.target,
                m = measured.as_deref().unwrap_or("none"),
                s = if c.pass { "ok" } else { "FAIL" },
            );
            if !c.pass {
                let _ = writeln!(text, "    residual: {}", print_op(&c.residual));
            }
            rels.push(json!({
                "family": c.family.to_string(),
                "j": c.j,
                "target": c.target,
                "expected": c.expected.to_string(),
                "measured": measured,
                "pass": c.pass,
                "residual": print_op(&c.residual),
            }));
        }
        let _ = writeln!(
            text,
            "relations: {}",
            if rel_ok { "all pass" } else { "FAIL" }
        );
        doc["relations"] = Json::Array(rels);
        doc["relations_pass"] = rel_ok.into();
    }
    Ok(Report {
        code: code_for(law && rel_ok),
        text,
        json: doc,
    })
}

pub(crate) fn bracket(ctx: &Ctx, a: &BracketArgs) -> Result<Report, CliError> {
    let chart = a.eq.chart();
    let model = model_for(ctx, chart);
    let pa = expr_or_name(&a.a, chart)?;
    let pb = expr_or_name(&a.b, chart)?;
    let raw = jacobi_bracket(&pa, &pb)?;
    let restricted = model.restrict(&raw)?;
    let report = model.is_symmetry(&restricted)?;
    Ok(Report {
        code: code_for(report.verdict),
        text: format!(
            "equation: {} ({chart})\na: {}\nb: {}\nbracket: {}\nresidual: {}\nverdict: {}\n",
            model.name(),
            print_expr(&pa),
            print_expr(&pb),
            print_expr(&restricted),
            print_expr(&report.residual),
            verdict_word(report.verdict)
        ),
        json: json!({
            "command": "bracket",
            "equation": chart.name(),
            "a": expr_to_json_value(&pa),
            "b": expr_to_json_value(&pb),
            "bracket": expr_to_json_value(&restricted),
            "bracket_text": print_expr(&restricted),
            "residual": expr_to_json_value(&report.residual),
            "residual_text": print_expr(&report.residual),
            "verdict": report.verdict,
        }),
    })
}

fn kind_words(k: EntryKind) -> (&'static str, Option<Chart>) {
    match k {
        EntryKind::Section(c) => ("section", c),
        EntryKind::Operator(c) => ("operator", Some(c)),
    }
}

pub(crate) fn catalog(_ctx: &Ctx, a: &CatalogArgs) -> Result<Report, CliError> {
    if let Some(name) = &a.name {
        let item = lookup(name.trim()).map_err(|e| ed_error(e, name))?;
        let (text, doc) = match &item {
            CatalogItem::Expr(e) => (print_expr(e), expr_to_json_value(e)),
            CatalogItem::Op(o) => (print_op(o), op_to_json_value(o)),
        };
        let chart = match &item {
            CatalogItem::Expr(e) => e.chart(),
            CatalogItem::Op(o) => o.chart(),
        };
        return Ok(Report {
            code: EXIT_OK,
            text: format!("{name} ({chart}): {text}\n"),
            json: json!({"command": "catalog", "name": name, "value": doc, "text": text}),
        });
    }
    let mut text = String::new();
    let mut list = Vec::new();
    for e in ENTRIES {
        let (kind, of) = kind_words(e.kind);
        let _ = writeln!(
            text,
            "{:<12} {:<12} {:<9} {}",
            e.name,
            e.chart.name(),
            kind,
            e.description
        );
        list.push(json!({
            "name": e.name,
            "chart": e.chart.name(),
            "kind": kind,
            "symmetry_of": of.map(|c| c.name()),
            "description": e.description,
        }));
    }
    let _ = writeln!(
        text,
        "{:<12} {:<12} {:<9} classical symmetry family of Y_ED with constants c1..c4",
        CLASSICAL_SYNTAX, "hyperbolic", "section"
    );
    list.push(json!({
        "name": CLASSICAL_SYNTAX,
        "chart": "hyperbolic",
        "kind": "section",
        "symmetry_of": "hyperbolic",
        "description": "classical symmetry family of Y_ED with constants c1..c4",
    }));
    Ok(Report {
        code: EXIT_OK,
        text,
        json: json!({"command": "catalog", "entries": list}),
    })
}
