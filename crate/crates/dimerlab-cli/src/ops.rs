//! Every operation as a function from a JSON request to a JSON response.
//! The CLI builds the same request objects from its arguments, so both
//! front ends produce identical payloads.

use dimerlab::analytics::{
    central_edge, edge_probabilities_with, factorize, fit_recurrence, hexagon_moments, inverse_entry_sum,
    moments_of_inertia, roundness_report, sample_matching, transfer_count, ProbabilityBackend,
};
use dimerlab::formulas::{evaluate, verify, FormulaId, Grid};
use dimerlab::graph::{Color, Embedding, PlanarGraph};
use dimerlab::kasteleyn::{build_bipartite, count_matchings_with, default_rule, Limits, SignRule};
use dimerlab::linalg::{carlitz_matrix, gram_det, smith_normal_form, to_integer, IntMatrix, SOFT_LIMIT};
use dimerlab::oracle::{dimer_covering_poly, dimer_tableaux_poly};
use dimerlab::region::{generate, RegionSpec};
use dimerlab::rewrite::{reduce, Strategy};
use dimerlab::vax::{emit_svg, emit_vax, parse_vax, Overlay};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::wire::{factors_to_wire, int_to_wire, rational_from_wire, rational_to_wire, ApiError, ApiResult};

/// Soft limit on nonplanar graphs handed to the exponential oracle.
pub const ORACLE_SOFT_LIMIT: usize = 36;

/// Names accepted by [`dispatch`].
pub const OPERATIONS: &[&str] = &[
    "generate",
    "parse",
    "count",
    "factor",
    "probs",
    "moments",
    "sample",
    "cokernel",
    "kkstar",
    "invsum",
    "verify",
    "recurrence",
    "tableaux",
    "rewrite",
    "svg",
];

/// Runs operation `op` on `req`.
pub fn dispatch(op: &str, req: &Value) -> ApiResult<Value> {
    if !req.is_object() {
        return Err(ApiError::parse("request body must be a JSON object"));
    }
    match op {
        "generate" | "parse" => generate_op(req),
        "count" => count_op(req),
        "factor" => factor_op(req),
        "probs" => probs_op(req),
        "moments" => moments_op(req),
        "sample" => sample_op(req),
        "cokernel" => cokernel_op(req),
        "kkstar" => kkstar_op(req),
        "invsum" => invsum_op(req),
        "verify" => verify_op(req),
        "recurrence" => recurrence_op(req),
        "tableaux" => tableaux_op(req),
        "rewrite" => rewrite_op(req),
        "svg" => svg_op(req),
        _ => Err(ApiError::parse(format!("unknown operation '{op}'"))),
    }
}

// ---------------------------------------------------------------------------
// Request fields

fn field<'a>(req: &'a Value, name: &str) -> Option<&'a Value> {
    req.get(name).filter(|v| !v.is_null())
}

fn str_field<'a>(req: &'a Value, name: &str) -> ApiResult<Option<&'a str>> {
    match field(req, name) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(_) => Err(ApiError::parse(format!("'{name}' must be a string"))),
    }
}

fn required_str<'a>(req: &'a Value, name: &str) -> ApiResult<&'a str> {
    str_field(req, name)?.ok_or_else(|| ApiError::parse(format!("missing field '{name}'")))
}

/// A nonnegative integer given as a JSON number or a decimal string.
fn u64_field(req: &Value, name: &str) -> ApiResult<Option<u64>> {
    let bad = || ApiError::parse(format!("'{name}' must be a nonnegative integer"));
    match field(req, name) {
        None => Ok(None),
        Some(Value::Number(n)) => n.as_u64().map(Some).ok_or_else(bad),
        Some(Value::String(s)) => s.trim().parse().map(Some).map_err(|_| bad()),
        Some(_) => Err(bad()),
    }
}

fn required_u64(req: &Value, name: &str) -> ApiResult<u64> {
    u64_field(req, name)?.ok_or_else(|| ApiError::parse(format!("missing field '{name}'")))
}

fn bool_field(req: &Value, name: &str) -> ApiResult<bool> {
    match field(req, name) {
        None => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(_) => Err(ApiError::parse(format!("'{name}' must be a boolean"))),
    }
}

fn limits(req: &Value) -> ApiResult<Limits> {
    Ok(if bool_field(req, "force")? {
        Limits { matrix: usize::MAX, oracle_vertices: usize::MAX }
    } else {
        Limits { matrix: SOFT_LIMIT, oracle_vertices: ORACLE_SOFT_LIMIT }
    })
}

/// The graph named by `spec` (region text) or `vax` (VAX document).
fn graph(req: &Value) -> ApiResult<(PlanarGraph, String)> {
    match (str_field(req, "spec")?, str_field(req, "vax")?) {
        (Some(_), Some(_)) => Err(ApiError::parse("give either 'spec' or 'vax', not both")),
        (Some(s), None) => {
            let spec: RegionSpec = s.parse()?;
            Ok((generate(&spec)?, spec.to_string()))
        }
        (None, Some(v)) => Ok((parse_vax(v)?, "vax".to_string())),
        (None, None) => Err(ApiError::parse("missing field 'spec' or 'vax'")),
    }
}

/// Refuses graphs beyond the soft limits unless `force` is set.
fn check_size(g: &PlanarGraph, limits: Limits) -> ApiResult<()> {
    if !g.planar {
        if g.vertex_count() > limits.oracle_vertices {
            return Err(ApiError::from(dimerlab::error::Error::Limit(format!(
                "nonplanar graph with {} vertices exceeds the oracle limit {} (use force)",
                g.vertex_count(),
                limits.oracle_vertices
            ))));
        }
        return Ok(());
    }
    let dim = if g.is_bipartite() {
        let (w, b) = g.color_counts();
        w.max(b)
    } else {
        g.vertex_count() / 2
    };
    if dim > limits.matrix {
        return Err(ApiError::from(dimerlab::error::Error::Limit(format!(
            "{dim}x{dim} matrix exceeds the soft limit {} (use force)",
            limits.matrix
        ))));
    }
    Ok(())
}

fn factor_payload(n: &BigInt) -> ApiResult<Value> {
    if n.is_zero() {
        return Ok(json!({ "factors": [], "factorization": "0", "complete": true }));
    }
    let f = factorize(n)?;
    Ok(json!({
        "factors": factors_to_wire(&f),
        "factorization": f.to_string(),
        "complete": f.is_complete(),
    }))
}

fn point(p: &dimerlab::graph::Point) -> Value {
    json!([p.0.to_string(), p.1.to_string()])
}

fn color_name(c: Color) -> &'static str {
    match c {
        Color::White => "white",
        Color::Black => "black",
        Color::Uncolored => "none",
    }
}

fn embedding_name(e: Embedding) -> &'static str {
    match e {
        Embedding::Square => "square",
        Embedding::Triangular => "triangular",
    }
}

fn graph_json(g: &PlanarGraph) -> Value {
    json!({
        "embedding": embedding_name(g.embedding),
        "planar": g.planar,
        "vertices": g.vertices.iter().map(|v| json!({
            "id": v.id, "pos": point(&v.pos), "color": color_name(v.color),
        })).collect::<Vec<_>>(),
        "edges": g.edges.iter().map(|e| json!([e.u, e.v, rational_to_wire(&e.weight)])).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// Operations

fn generate_op(req: &Value) -> ApiResult<Value> {
    let (g, source) = graph(req)?;
    Ok(json!({
        "source": source,
        "vertex_count": g.vertex_count(),
        "edge_count": g.edge_count(),
        "vax": emit_vax(&g).ok(),
        "graph": graph_json(&g),
    }))
}

fn count_op(req: &Value) -> ApiResult<Value> {
    let (g, source) = graph(req)?;
    let limits = limits(req)?;
    check_size(&g, limits)?;
    let c = count_matchings_with(&g, limits)?;
    let mut out = Map::new();
    out.insert("source".into(), json!(source));
    out.insert("count".into(), json!(rational_to_wire(&c)));
    if c.is_integer() {
        if let Value::Object(f) = factor_payload(&c.to_integer())? {
            out.extend(f);
        }
    }
    Ok(Value::Object(out))
}

fn factor_op(req: &Value) -> ApiResult<Value> {
    let text = match field(req, "n") {
        Some(Value::String(s)) => s.trim().to_string(),
        Some(Value::Number(n)) if n.is_u64() || n.is_i64() => n.to_string(),
        _ => return Err(ApiError::parse("'n' must be an integer (as a string for big values)")),
    };
    let n: BigInt = text.parse().map_err(|_| ApiError::parse(format!("'{text}' is not an integer")))?;
    if n.is_zero() {
        return Err(ApiError::domain("cannot factor zero"));
    }
    let mut out = factor_payload(&n)?;
    let r = roundness_report(&n)?;
    out["n"] = json!(n.to_string());
    out["roundness"] = json!({
        "verdict": r.verdict.name(),
        "largest_prime": r.largest_prime.as_ref().map(int_to_wire),
        "log_ratio": format!("{:.6}", r.log_ratio),
        "suspects": r.suspects.iter().map(int_to_wire).collect::<Vec<_>>(),
    });
    Ok(out)
}

fn probs_op(req: &Value) -> ApiResult<Value> {
    let (g, source) = graph(req)?;
    let limits = limits(req)?;
    check_size(&g, limits)?;
    let backend: ProbabilityBackend = str_field(req, "backend")?.unwrap_or("inverse").parse()?;
    let backend = if g.planar { backend } else { ProbabilityBackend::Deletion };
    let p = edge_probabilities_with(&g, backend)?;
    let edges: Vec<Value> = g
        .edges
        .iter()
        .zip(&p)
        .enumerate()
        .map(|(k, (e, p))| json!({ "edge": k, "u": e.u, "v": e.v, "p": rational_to_wire(p) }))
        .collect();
    let central = central_edge(&g).map(|k| json!({ "edge": k, "p": rational_to_wire(&p[k]) }));
    Ok(json!({ "source": source, "probabilities": edges, "central": central }))
}

fn moments_op(req: &Value) -> ApiResult<Value> {
    let (ix, iy, source) = match u64_field(req, "n")? {
        Some(n) => {
            let (ix, iy) = hexagon_moments(n)?;
            (ix, iy, format!("hexagon({n},{n},{n})"))
        }
        None => {
            let (g, source) = graph(req)?;
            check_size(&g, limits(req)?)?;
            let (ix, iy) = moments_of_inertia(&g)?;
            (ix, iy, source)
        }
    };
    Ok(json!({ "source": source, "ix": rational_to_wire(&ix), "iy": rational_to_wire(&iy) }))
}

fn sample_op(req: &Value) -> ApiResult<Value> {
    let (g, source) = graph(req)?;
    check_size(&g, limits(req)?)?;
    let seed = u64_field(req, "seed")?.unwrap_or(0);
    let m = sample_matching(&g, seed)?;
    let pairs: Vec<Value> =
        m.iter().map(|&k| json!([g.vertices[g.edges[k].u].id, g.vertices[g.edges[k].v].id])).collect();
    Ok(json!({ "source": source, "seed": seed, "edges": m, "pairs": pairs }))
}

/// `carlitz(a,b,c)` or a region's natural counting matrix.
fn integer_matrix(req: &Value) -> ApiResult<(IntMatrix, String)> {
    if let Some(s) = str_field(req, "spec")? {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(inner) = t.strip_prefix("carlitz(").and_then(|r| r.strip_suffix(')')) {
            let p: Vec<usize> = inner
                .split(',')
                .map(|x| x.parse().map_err(|_| ApiError::parse(format!("bad carlitz parameter '{x}'"))))
                .collect::<ApiResult<_>>()?;
            if p.len() != 3 {
                return Err(ApiError::parse("carlitz takes three parameters"));
            }
            return Ok((carlitz_matrix(p[0], p[1], p[2]), t));
        }
    }
    let (g, source) = graph(req)?;
    let limits = limits(req)?;
    check_size(&g, limits)?;
    let k = build_bipartite(&g, natural_rule(&g, req)?)?;
    let m = to_integer(&k.matrix).ok_or_else(|| ApiError::domain("the counting matrix has non-integer entries"))?;
    Ok((m, source))
}

/// Lozenge regions use the unsigned matrix, square regions Wilson's signs,
/// anything else a Pfaffian orientation; `rule` overrides.
fn natural_rule(g: &PlanarGraph, req: &Value) -> ApiResult<SignRule> {
    if let Some(r) = str_field(req, "rule")? {
        return Ok(SignRule::parse(r)?);
    }
    Ok(match g.embedding {
        Embedding::Triangular if g.is_bipartite() => SignRule::HoneycombPlain,
        _ => default_rule(g),
    })
}

fn cokernel_op(req: &Value) -> ApiResult<Value> {
    let (m, source) = integer_matrix(req)?;
    if m.rows().max(m.cols()) > limits(req)?.matrix {
        return Err(ApiError::from(dimerlab::error::Error::Limit("matrix exceeds the soft limit (use force)".into())));
    }
    let snf = smith_normal_form(&m);
    Ok(json!({
        "source": source,
        "rows": m.rows(),
        "cols": m.cols(),
        "rank": snf.rank,
        "invariants": snf.nontrivial().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    }))
}

fn kkstar_op(req: &Value) -> ApiResult<Value> {
    let (g, source) = graph(req)?;
    check_size(&g, limits(req)?)?;
    let k = build_bipartite(&g, natural_rule(&g, req)?)?;
    let d = gram_det(&k.matrix)?;
    let mut out =
        json!({ "source": source, "rows": k.matrix.rows(), "cols": k.matrix.cols(), "gram_det": rational_to_wire(&d) });
    if d.is_integer() && !d.is_negative() {
        let n = d.to_integer();
        out["sqrt"] = dimerlab::analytics::exact_sqrt(&n).map_or(Value::Null, |r| json!(r.to_string()));
        if let Value::Object(f) = factor_payload(&n)? {
            out.as_object_mut().expect("object").extend(f);
        }
    }
    Ok(out)
}

fn invsum_op(req: &Value) -> ApiResult<Value> {
    let n = required_u64(req, "n")?;
    let s = inverse_entry_sum(n)?;
    let f = evaluate(FormulaId::InverseSum, &[n as i64])?;
    Ok(json!({ "n": n, "sum": rational_to_wire(&s), "formula": rational_to_wire(&f), "match": s == f }))
}

fn verify_op(req: &Value) -> ApiResult<Value> {
    let id: FormulaId = required_str(req, "formula")?.parse()?;
    let grid: Grid = required_str(req, "grid")?.parse()?;
    let report = verify(id, &grid)?;
    let names = id.params();
    let lines: Vec<Value> = report
        .lines
        .iter()
        .map(|l| {
            let params: Map<String, Value> =
                names.iter().zip(&l.params).map(|(n, v)| (n.to_string(), json!(v))).collect();
            json!({
                "params": params,
                "formula": l.formula.as_ref().map(rational_to_wire),
                "count": l.count.as_ref().map(rational_to_wire),
                "match": l.matches(),
                "error": l.error,
            })
        })
        .collect();
    Ok(json!({
        "formula": id.name(),
        "all_match": report.all_match(),
        "lines": lines,
        "report": report.to_string(),
    }))
}

fn recurrence_op(req: &Value) -> ApiResult<Value> {
    let seq: Vec<BigRational> = match (field(req, "sequence"), u64_field(req, "strip")?) {
        (Some(Value::Array(items)), None) => items
            .iter()
            .map(|v| match v {
                Value::String(s) => rational_from_wire(s),
                Value::Number(n) if n.is_i64() || n.is_u64() => rational_from_wire(&n.to_string()),
                _ => Err(ApiError::parse("sequence terms must be integers or \"p/q\" strings")),
            })
            .collect::<ApiResult<_>>()?,
        (None, Some(a)) => {
            let terms = u64_field(req, "terms")?.unwrap_or(16);
            (1..=terms)
                .map(|b| Ok(BigRational::from_integer(transfer_count(a as usize, b as usize)?)))
                .collect::<Result<_, dimerlab::error::Error>>()?
        }
        _ => return Err(ApiError::parse("give either 'sequence' (array) or 'strip' (+ optional 'terms')")),
    };
    let fit = fit_recurrence(&seq)?;
    Ok(json!({
        "degree": fit.degree,
        "coefficients": fit.coefficients.iter().map(rational_to_wire).collect::<Vec<_>>(),
        "held_out": fit.held_out,
        "terms": seq.len(),
        "recurrence": fit.to_string(),
    }))
}

fn tableaux_op(req: &Value) -> ApiResult<Value> {
    let m = required_u64(req, "m")? as usize;
    let n = required_u64(req, "n")? as usize;
    if m * n > 48 && !bool_field(req, "force")? {
        return Err(ApiError::from(dimerlab::error::Error::Limit(format!(
            "{m}x{n} exceeds the enumeration limit of 48 cells (use force)"
        ))));
    }
    let cover = dimer_covering_poly(m, n)?;
    let tab = dimer_tableaux_poly(m, n)?;
    Ok(json!({
        "m": m,
        "n": n,
        "covering": cover.to_string(),
        "tableaux": tab.to_string(),
        "terms": cover.terms().len(),
        "equal": cover == tab,
    }))
}

fn rewrite_op(req: &Value) -> ApiResult<Value> {
    let (g, source) = graph(req)?;
    let strategy: Strategy = str_field(req, "strategy")?.unwrap_or("all").parse()?;
    let trace = reduce(&g, strategy);
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| json!({ "rule": s.rule, "vertices": s.vertices, "factor": rational_to_wire(&s.factor) }))
        .collect();
    Ok(json!({
        "source": source,
        "steps": steps,
        "factor": rational_to_wire(&trace.factor),
        "remainder_vertices": trace.remainder.vertex_count(),
        "trivial": trace.is_trivial(),
        "truncated": trace.truncated,
        "trace": trace.to_string(),
    }))
}

fn svg_op(req: &Value) -> ApiResult<Value> {
    let (g, source) = graph(req)?;
    let overlay = str_field(req, "overlay")?.unwrap_or("none");
    let svg = match overlay {
        "none" => emit_svg(&g, Overlay::None)?,
        "sample" => {
            check_size(&g, limits(req)?)?;
            let m = sample_matching(&g, u64_field(req, "seed")?.unwrap_or(0))?;
            emit_svg(&g, Overlay::Matching(&m))?
        }
        "probs" => {
            check_size(&g, limits(req)?)?;
            let p = edge_probabilities_with(&g, ProbabilityBackend::Inverse)?;
            emit_svg(&g, Overlay::Probabilities(&p))?
        }
        other => return Err(ApiError::parse(format!("unknown overlay '{other}' (none, sample, probs)"))),
    };
    Ok(json!({ "source": source, "svg": svg }))
}

// ---------------------------------------------------------------------------
// Human-readable rendering for the CLI

fn s(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Plain-text rendering of a response, as printed by the CLI without
/// `--json`.
pub fn render(op: &str, v: &Value) -> String {
    let mut out = String::new();
    let mut line = |l: String| {
        out.push_str(&l);
        out.push('\n');
    };
    match op {
        "generate" | "parse" => match &v["vax"] {
            Value::String(vax) => out.push_str(vax),
            _ => {
                line(format!("{} vertices, {} edges", v["vertex_count"], v["edge_count"]));
                for e in v["graph"]["edges"].as_array().into_iter().flatten() {
                    line(format!("{} {} {}", e[0], e[1], s(&e[2])));
                }
            }
        },
        "count" => {
            line(s(&v["count"]));
            if let Some(f) = v.get("factorization") {
                line(s(f));
            }
        }
        "factor" => {
            line(format!("{} = {}", s(&v["n"]), s(&v["factorization"])));
            let r = &v["roundness"];
            line(format!(
                "{} (largest prime {}, log ratio {})",
                s(&r["verdict"]),
                s(&r["largest_prime"]),
                s(&r["log_ratio"])
            ));
        }
        "probs" => {
            for e in v["probabilities"].as_array().into_iter().flatten() {
                line(format!("{} {} {}", e["u"], e["v"], s(&e["p"])));
            }
            if let Some(c) = v["central"].as_object() {
                line(format!("central edge {}: {}", c["edge"], s(&c["p"])));
            }
        }
        "moments" => line(format!("Ix = {}\nIy = {}", s(&v["ix"]), s(&v["iy"]))),
        "sample" => {
            for p in v["pairs"].as_array().into_iter().flatten() {
                line(format!("{} {}", p[0], p[1]));
            }
        }
        "cokernel" => {
            let inv: Vec<String> = v["invariants"].as_array().into_iter().flatten().map(s).collect();
            line(format!("{}x{} rank {}", v["rows"], v["cols"], v["rank"]));
            line(if inv.is_empty() { "trivial".into() } else { inv.join(" ") });
        }
        "kkstar" => {
            line(s(&v["gram_det"]));
            if let Some(f) = v.get("factorization") {
                line(s(f));
            }
            if let Some(r) = v.get("sqrt").filter(|r| !r.is_null()) {
                line(format!("sqrt = {}", s(r)));
            }
        }
        "invsum" => line(format!(
            "{} (formula {}, {})",
            s(&v["sum"]),
            s(&v["formula"]),
            if v["match"] == true { "match" } else { "MISMATCH" }
        )),
        "verify" => line(s(&v["report"])),
        "recurrence" => line(s(&v["recurrence"])),
        "tableaux" => {
            line(format!("covering: {}", s(&v["covering"])));
            line(format!("tableaux: {}", s(&v["tableaux"])));
            line(if v["equal"] == true { "equal".into() } else { "DIFFERENT".into() });
        }
        "rewrite" => out.push_str(&s(&v["trace"])),
        "svg" => out.push_str(&s(&v["svg"])),
        _ => line(crate::wire::to_line(v)),
    }
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}

/// Parses an integer argument the way `factor` does (used by the CLI to
/// pass big values through as strings).
pub fn integer_arg(text: &str) -> ApiResult<Value> {
    let n: BigInt = text.trim().parse().map_err(|_| ApiError::parse(format!("'{text}' is not an integer")))?;
    Ok(match n.to_u64() {
        Some(v) if v < (1 << 53) => json!(v),
        _ => json!(n.to_string()),
    })
}
