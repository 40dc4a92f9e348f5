use std::io::Write;
use std::str::FromStr;

use ebh_core::bounds::{
    bound_transverse_e2, bound_weaktransverse_en, constants_cn_expr, constants_d_expr, exponents, family_degree,
    family_final_bound, BoundInputs, ExponentEntry, ExponentParams, ExponentTheorem, Family, FamilyBound, Verdict,
};
use ebh_core::foundation::{eval_const, parse_rational, BoundedReal, ConstExpr, Direction, MIN_PRECISION};
use ebh_core::search::{search_rational_points, GammaSpec, SearchOptions};
use ebh_core::subgroups::{census, EndRing, EnumerationLimits};
use ebh_core::Error;
use serde_json::{json, Value};

use crate::args::{BoundArgs, CensusArgs, Cli, Command, ConstantsArgs, ExponentsArgs, FamilyAuditArgs, HwArgs, SearchArgs};
use crate::emit::envelope;
use crate::presets::{curve_source, family_preset};
use crate::{exit, CliError, CliResult};

/// Precision ceiling for retrying indeterminate comparisons.
pub const MAX_PRECISION: u32 = 4096;

/// What a successful command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Enveloped, deterministic report.
    pub report: Value,
    /// Non-deterministic side data (timings) kept out of the report.
    pub metrics: Option<Value>,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(command: &str, report: Value) -> Self {
        Outcome { report: envelope(command, report), metrics: None, exit_code: exit::OK }
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let prec = cli.precision;
    if prec < MIN_PRECISION {
        return Err(Error::Precondition(format!("precision must be at least {MIN_PRECISION} bits, got {prec}")).into());
    }
    match &cli.command {
        Command::Constants(a) => constants(a, prec),
        Command::Bound(a) => bound(a, prec),
        Command::FamilyAudit(a) => family_audit(a, prec),
        Command::Search(a) => search(a, prec),
        Command::Census(a) => census_cmd(a),
        Command::Exponents(a) => exponents_cmd(a),
    }
}

/// Parses sums of terms `q`, `q log r`, `q*log(r)` with q, r fractions.
pub fn parse_hw(s: &str) -> CliResult<ConstExpr> {
    let bad = || Error::Parse(format!("cannot read h_W expression `{s}`"));
    let mut terms = Vec::new();
    for term in s.split('+') {
        let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad().into());
        }
        let expr = match t.split_once("log") {
            None => ConstExpr::rational(parse_rational(&t).map_err(|_| bad())?),
            Some((coef, arg)) => {
                let coef = coef.trim_end_matches('*');
                let coef = if coef.is_empty() { ebh_core::foundation::rat(1, 1) } else { parse_rational(coef).map_err(|_| bad())? };
                let arg = arg.strip_prefix('(').and_then(|a| a.strip_suffix(')')).unwrap_or(arg);
                let arg = parse_rational(arg).map_err(|_| bad())?;
                if arg <= 0 {
                    return Err(Error::Domain(format!("log of nonpositive {arg} in `{s}`")).into());
                }
                ConstExpr::rational(coef) * ConstExpr::log(arg)
            }
        };
        terms.push(expr);
    }
    Ok(terms.into_iter().reduce(|a, b| a + b).expect("at least one term"))
}

/// h_W(E) from the flags, defaulting to the curve y^2 = x^3 - x - 2.
fn resolve_hw(a: &HwArgs) -> CliResult<(ConstExpr, String)> {
    if let Some(s) = &a.hw {
        return Ok((parse_hw(s)?, s.clone()));
    }
    let file = match curve_source(a.curve.as_deref(), a.preset.as_deref())? {
        Some(f) => f,
        None => family_preset(Family::F2),
    };
    let e = file.curve()?;
    Ok((e.weierstrass_height_expr(), format!("weierstrass height of y^2 = x^3 + ({})x + ({})", file.a, file.b)))
}

fn named(v: BoundedReal, expr: &ConstExpr) -> Value {
    let mut j = v.to_json();
    j["expression"] = Value::String(expr.to_string());
    j
}

fn upper(e: &ConstExpr, prec: u32) -> CliResult<Value> {
    Ok(named(eval_const(e, Direction::Upper, prec)?, e))
}

fn constants(a: &ConstantsArgs, prec: u32) -> CliResult<Outcome> {
    let (hw, source) = resolve_hw(&a.hw)?;
    let hw_value = json!({
        "source": source,
        "expression": hw.to_string(),
        "upper": eval_const(&hw, Direction::Upper, prec)?.to_json(),
    });
    let body = if a.d {
        let d = constants_d_expr(&hw);
        json!({
            "family": "D",
            "h_W": hw_value,
            "D1": upper(&d.d1, prec)?,
            "D2": upper(&d.d2, prec)?,
            "D3": upper(&d.d3, prec)?,
            "D2_hw_coefficient": upper(&d.d2_hw_coeff, prec)?,
            "D2_constant": upper(&d.d2_constant, prec)?,
            "D3_hw_coefficient": "9/2",
            "D3_constant": upper(&(ConstExpr::ratio(21, 2) * ConstExpr::log_int(2)), prec)?,
        })
    } else {
        let n = a.c.expect("clap enforces one of --d, --c");
        let c = constants_cn_expr(n, &hw)?;
        json!({
            "family": "C",
            "N": n,
            "h_W": hw_value,
            "C1": upper(&c.c1, prec)?,
            "C2": upper(&c.c2, prec)?,
            "C3": upper(&c.c3, prec)?,
        })
    };
    Ok(Outcome::ok("constants", body))
}

fn bound(a: &BoundArgs, prec: u32) -> CliResult<Outcome> {
    let (hw, _) = resolve_hw(&a.hw)?;
    let h = parse_rational(&a.h_c)?;
    let h = BoundedReal::from_rational(&h, Direction::Upper, prec);
    let report = match a.theorem.as_str() {
        "e2-transverse" => {
            if a.n.is_some_and(|n| n != 2) {
                return Err(Error::Precondition("e2-transverse is the N = 2 bound".into()).into());
            }
            bound_transverse_e2(&h, a.deg_c, &hw, prec)?
        }
        "en-weak-transverse" => {
            let n = a.n.ok_or_else(|| Error::Precondition("en-weak-transverse requires --N".into()))?;
            bound_weaktransverse_en(&BoundInputs::new(n, h, a.deg_c, hw), prec)?
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown bound `{other}`, expected e2-transverse or en-weak-transverse"
            ))
            .into())
        }
    };
    Ok(Outcome::ok("bound", report.to_json()))
}

/// Raises precision until the verdict is decided or the ceiling is hit.
fn decided_family_bound(family: Family, n: u64, prec: u32) -> CliResult<(FamilyBound, u32)> {
    let mut p = prec;
    loop {
        let fb = family_final_bound(family, n, p)?;
        if fb.verdict != Verdict::Indeterminate || p >= MAX_PRECISION {
            return Ok((fb, p));
        }
        p = (2 * p).min(MAX_PRECISION);
    }
}

fn parse_range(s: &str) -> CliResult<(u64, u64)> {
    let bad = || Error::Parse(format!("range `{s}` is not of the form a..b"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
    if lo < 1 || hi < lo {
        return Err(Error::Precondition(format!("range `{s}` must satisfy 1 <= a <= b")).into());
    }
    Ok((lo, hi))
}

fn family_audit(a: &FamilyAuditArgs, prec: u32) -> CliResult<Outcome> {
    let family = Family::from_str(&a.family)?;
    let (lo, hi) = match (&a.n, &a.n_range) {
        (Some(n), _) => (*n, *n),
        (None, Some(r)) => parse_range(r)?,
        (None, None) => return Err(Error::Parse("family-audit needs --n or --n-range".into()).into()),
    };
    let mut entries = Vec::new();
    let mut undecided = false;
    let mut flagged = Vec::new();
    for n in lo..=hi {
        let (fb, used) = decided_family_bound(family, n, prec)?;
        undecided |= fb.verdict == Verdict::Indeterminate;
        if fb.flagged {
            flagged.push(n);
        }
        let mut j = fb.to_json();
        j["degree"] = json!(family_degree(n)?);
        j["precision_bits"] = json!(used);
        entries.push(j);
    }
    let body = if lo == hi {
        entries.pop().expect("one entry")
    } else {
        // one line per n keeps range reports small
        let rows: Vec<Value> = entries
            .iter()
            .map(|e| {
                json!({
                    "n": e["n"],
                    "degree": e["degree"],
                    "genus": e["invariants"]["genus"],
                    "composed_upper": e["composed"]["final_bound"]["value_decimal"],
                    "coefficient_per_cube": e["coefficient_per_cube"]["value_decimal"],
                    "closed_form": e["closed_form"]["value_decimal"],
                    "verdict": e["verdict"],
                    "flagged": e["flagged"],
                    "precision_bits": e["precision_bits"],
                })
            })
            .collect();
        json!({
            "family": family.id(),
            "equation": family.equation(),
            "n_range": [lo, hi],
            "rows": rows,
            "flagged_n": flagged,
        })
    };
    let mut out = Outcome::ok("family-audit", body);
    if undecided {
        out.exit_code = exit::INDETERMINATE;
    }
    Ok(out)
}

fn search(a: &SearchArgs, prec: u32) -> CliResult<Outcome> {
    let family = Family::from_str(&a.family)?;
    if a.shards == 0 {
        return Err(Error::Precondition("shard count must be at least 1".into()).into());
    }
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(Error::Precondition(format!("tolerance must be positive, got {}", a.tol)).into());
    }
    let file = curve_source(a.curve.as_deref(), a.preset.as_deref())?.unwrap_or_else(|| family_preset(family));
    let gamma = GammaSpec::from_curve_file(&file)?;
    let b = parse_rational(&a.height_bound)?;
    let b = BoundedReal::from_rational(&b, Direction::Upper, prec);
    let report = search_rational_points(family, a.n, &gamma, &b, SearchOptions { tol: a.tol, prec, shards: a.shards })?;
    let mut out = Outcome::ok("search", report.to_json());
    out.metrics = Some(report.metrics_json());
    Ok(out)
}

fn census_cmd(a: &CensusArgs) -> CliResult<Outcome> {
    let ring = EndRing::from_str(&a.ring)?;
    let report = census(ring, a.n, a.r, a.max_degree, a.torsion, EnumerationLimits { ceiling: a.ceiling })?;
    Ok(Outcome::ok("census", report.to_json()))
}

fn exponents_cmd(a: &ExponentsArgs) -> CliResult<Outcome> {
    let theorem = ExponentTheorem::from_str(&a.theorem)?;
    let params = ExponentParams { n: a.n, r: a.r, t: a.t, dim: a.dim };
    let entries = exponents(theorem, params)?;
    let body = json!({
        "theorem": theorem.id(),
        "params": {"N": a.n, "r": a.r, "t": a.t, "dim": a.dim},
        "entries": entries.iter().map(ExponentEntry::to_json).collect::<Vec<_>>(),
        "notes": ["implied constants depend on eta and are not effective; only exponents are reported"],
    });
    Ok(Outcome::ok("exponents", body))
}

/// Writes the report to `--out` or stdout, and metrics to their file or stderr.
pub fn emit(cli: &Cli, outcome: &Outcome) -> CliResult<()> {
    let text = crate::emit::canonical_json(&outcome.report);
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    match &cli.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?,
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io)?,
    }
    if let Some(m) = &outcome.metrics {
        let path = match &cli.command {
            Command::Search(s) => s.metrics.as_ref(),
            _ => None,
        };
        let text = crate::emit::canonical_json(m);
        match path {
            Some(p) => std::fs::write(p, &text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display())))?,
            None => std::io::stderr().write_all(text.as_bytes()).map_err(io)?,
        }
    }
    Ok(())
}
