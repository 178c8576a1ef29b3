use std::fmt::Write;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use thiserror::Error;
use thompson_core::cayley::{
    analyze_path, ball, cache, convexity_in, restricted_distance, restricted_geodesic, shifted_pair,
    verify_exit_triples, verify_in_ball_paths, verify_witness, Ball, CayleyError, Check, Limits, PathTrace,
};
use thompson_core::forest::parse_raw;
use thompson_core::metric::{geodesic_word, label_spaces, length_breakdown};
use thompson_core::plmap::compose;
use thompson_core::word::format_word;
use thompson_core::{length, parse_word, to_plmap, DiagramError, Dyadic, ForestDiagram, GroupWord, Letter, WordError};

use crate::render;
use crate::{Command, Global, RenderFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Code {
    Ok = 0,
    Assertion = 1,
    Parse = 2,
    Resource = 3,
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub code: Code,
}

impl Report {
    fn ok(json: Value, text: impl Into<String>) -> Report {
        Report { json, text: text.into(), code: Code::Ok }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("partial result")]
    Partial(Report),
    #[error("{0}")]
    Failed(String),
}

impl std::fmt::Debug for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

impl CliError {
    pub fn code(&self) -> Code {
        match self {
            CliError::Parse(_) => Code::Parse,
            CliError::Partial(_) => Code::Resource,
            CliError::Failed(_) => Code::Assertion,
        }
    }
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<CayleyError> for CliError {
    fn from(e: CayleyError) -> Self {
        match e {
            CayleyError::Exhausted { what, reason, elements, elapsed } => {
                let json = json!({
                    "status": "partial",
                    "what": what,
                    "reason": reason,
                    "elements": elements,
                    "elapsed_seconds": elapsed,
                });
                let text = format!("PARTIAL: {what} stopped ({reason:?}) after {elements} elements in {elapsed:.1}s\n");
                CliError::Partial(Report { json, text, code: Code::Resource })
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

/// A word, or a forest diagram in `top / bottom` text form.
pub fn parse_element(text: &str) -> Result<ForestDiagram, CliError> {
    if text.contains('/') {
        Ok(parse_raw(text)?.canonicalize()?)
    } else {
        Ok(ForestDiagram::from_word(&parse_word(text)?))
    }
}

fn element_json(v: &ForestDiagram) -> Value {
    json!({ "diagram": v.to_string(), "word": format_word(&v.to_word()), "length": length(v) })
}

fn element_text(v: &ForestDiagram) -> String {
    format!("{v}\nword: {}\nlength: {}\n", format_word(&v.to_word()), length(v))
}

fn get_ball(radius: usize, global: &Global, limits: &Limits) -> Result<(Ball, bool), CliError> {
    match &global.cache_dir {
        Some(dir) => Ok(cache::load_or_build(dir, radius, limits)?),
        None => Ok((ball(radius, limits)?, false)),
    }
}

pub fn run(command: &Command, global: &Global, limits: &Limits) -> Result<Report, CliError> {
    match command {
        Command::Len { element } => cmd_len(&parse_element(element)?),
        Command::Normalize { element, raw } => {
            if *raw && element.contains('/') {
                let r = parse_raw(element)?;
                r.validate()?;
                let v = r.clone().canonicalize()?;
                let mut json = element_json(&v);
                json["raw"] = json!(r.to_string());
                Ok(Report::ok(json, format!("raw: {r}\n{}", element_text(&v))))
            } else {
                let v = parse_element(element)?;
                Ok(Report::ok(element_json(&v), element_text(&v)))
            }
        }
        Command::Mul { a, b } => {
            let v = parse_element(a)?.multiply(&parse_element(b)?);
            Ok(Report::ok(element_json(&v), element_text(&v)))
        }
        Command::Inv { element } => {
            let v = parse_element(element)?.inverse();
            Ok(Report::ok(element_json(&v), element_text(&v)))
        }
        Command::Geodesic { element } => {
            let w = geodesic_word(&parse_element(element)?);
            let text = format_word(&w);
            Ok(Report::ok(json!({ "word": text, "length": w.len() }), format!("{text}\n")))
        }
        Command::Ball { radius, list } => cmd_ball(*radius, *list, global, limits),
        Command::Convexity { radius } => cmd_convexity(*radius, global, limits),
        Command::Verify { n, full, examples_only } => cmd_verify(*n, *full, *examples_only, limits),
        Command::AnalyzePath { start, word, radius } => {
            let start = parse_element(start)?;
            let w = parse_word(word)?;
            let radius = radius.unwrap_or_else(|| length(&start).max(length(&start.apply_word(&w))));
            let trace = analyze_path(&start, &w, radius);
            let text = trace_table(&trace);
            Ok(Report::ok(serde_json::to_value(&trace).expect("serializable"), text))
        }
        Command::Restricted { u, v, radius } => {
            let (u, v) = (parse_element(u)?, parse_element(v)?);
            let w = restricted_geodesic(&u, &v, *radius, limits)?;
            let json = json!({
                "radius": radius,
                "distance": w.as_ref().map(GroupWord::len),
                "word": w.as_ref().map(format_word),
            });
            let text = match &w {
                Some(w) => format!("{}\n{}\n", w.len(), format_word(w)),
                None => format!("not connected inside B_{radius}\n"),
            };
            Ok(Report::ok(json, text))
        }
        Command::ShiftedPair { n } => {
            if *n == 0 {
                return Err(CliError::Parse("n must be at least 1".into()));
            }
            let (l, r) = shifted_pair(*n);
            let radius = 2 * n + 2;
            let d = restricted_distance(&l, &r, radius, limits)?;
            let json = json!({
                "n": n,
                "l": l.to_string(),
                "r": r.to_string(),
                "length_l": length(&l),
                "length_r": length(&r),
                "radius": radius,
                "restricted_distance": d,
            });
            let text = format!(
                "l' = {l} (length {})\nr' = {r} (length {})\nin-ball distance in B_{radius}: {}\n",
                length(&l),
                length(&r),
                d.map_or("none".to_string(), |d| d.to_string())
            );
            Ok(Report::ok(json, text))
        }
        Command::Plmap { element } => {
            let m = to_plmap(&parse_element(element)?);
            let shift = |k: i64| match k {
                0 => "t".to_string(),
                k if k > 0 => format!("t + {k}"),
                k => format!("t - {}", -k),
            };
            let mut text = format!("{} for t <= first breakpoint\n", shift(m.k_minus()));
            for (t, y) in m.breakpoints() {
                writeln!(text, "{t} -> {y}").unwrap();
            }
            writeln!(text, "{} for t >= last breakpoint", shift(m.k_plus())).unwrap();
            Ok(Report::ok(serde_json::to_value(&m).expect("serializable"), text))
        }
        Command::PlEval { element, point } => {
            let m = to_plmap(&parse_element(element)?);
            let t: Dyadic = point.parse().map_err(|e: thompson_core::plmap::ParseDyadicError| CliError::Parse(e.to_string()))?;
            let y = m.evaluate(t);
            Ok(Report::ok(json!({ "point": t.to_string(), "value": y.to_string() }), format!("{y}\n")))
        }
        Command::Render { element, format } => {
            let v = parse_element(element)?;
            let text = match format {
                RenderFormat::Ascii => render::ascii(&v),
                RenderFormat::Dot => render::dot(&v),
                RenderFormat::Parens => render::parens(&v),
            };
            Ok(Report::ok(json!({ "diagram": v.to_string(), "drawing": text }), text))
        }
        Command::Sweep { samples, max_len } => cmd_sweep(global.seed, *samples, *max_len),
    }
}

fn cmd_len(v: &ForestDiagram) -> Result<Report, CliError> {
    let b = length_breakdown(v);
    let labels = label_spaces(v);
    let json = json!({
        "l1": b.carets,
        "l0": b.x0_count,
        "total": b.total,
        "top_labels": labels.top_string(),
        "bottom_labels": labels.bottom_string(),
        "weights": labels.weights,
    });
    let weights: Vec<String> = labels.weights.iter().map(u32::to_string).collect();
    let text = format!(
        "total {} = {} carets ({} top, {} bottom) + {}\ntop labels:    {}\nbottom labels: {}\nweights:       {}\n",
        b.total,
        b.carets,
        b.top_carets,
        b.bottom_carets,
        b.x0_count,
        labels.top_string(),
        labels.bottom_string(),
        weights.join(" ")
    );
    Ok(Report::ok(json, text))
}

fn cmd_ball(radius: usize, list: bool, global: &Global, limits: &Limits) -> Result<Report, CliError> {
    let (b, cached) = get_ball(radius, global, limits)?;
    let sizes = b.sphere_sizes();
    let mut json = json!({ "radius": radius, "count": b.len(), "sphere_sizes": sizes, "cached": cached });
    let sizes_text: Vec<String> = sizes.iter().map(usize::to_string).collect();
    let mut text = format!("{}\nsphere sizes: {}\n", b.len(), sizes_text.join(" "));
    if list {
        let elements: Vec<Value> = b.iter().map(|(v, d)| json!({ "diagram": v.to_string(), "depth": d })).collect();
        json["elements"] = Value::Array(elements);
        for (v, d) in b.iter() {
            writeln!(text, "{v}\t{d}").unwrap();
        }
    }
    Ok(Report::ok(json, text))
}

fn cmd_convexity(radius: usize, global: &Global, limits: &Limits) -> Result<Report, CliError> {
    let (b, _) = get_ball(radius, global, limits)?;
    let mut rows = Vec::new();
    let mut text = format!("{:>3}  {:>4}  {:>3}  pair\n", "n", "c(n)", "2n");
    for n in 1..=radius {
        let rep = convexity_in(&b.truncated(n), limits)?;
        writeln!(text, "{:>3}  {:>4}  {:>3}  {} | {}", n, rep.c, 2 * n, rep.pair.0, rep.pair.1).unwrap();
        rows.push(serde_json::to_value(&rep).expect("serializable"));
    }
    Ok(Report::ok(json!({ "rows": rows }), text))
}

fn check_lines(out: &mut String, checks: &[Check]) {
    for c in checks {
        writeln!(out, "  {} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
    }
}

fn cmd_verify(n: usize, full: bool, examples_only: bool, limits: &Limits) -> Result<Report, CliError> {
    if n == 0 {
        return Err(CliError::Parse("n must be at least 1".into()));
    }
    let scope = if examples_only { "examples-only" } else if full { "full" } else { "default" };
    let mut json = json!({ "n": n, "scope": scope });
    let mut text = String::new();
    let mut passed = true;
    let mut complete = true;

    if !examples_only {
        let rep = verify_witness(n, full, limits);
        writeln!(text, "witness pair, n = {n}, radius {}", rep.radius).unwrap();
        writeln!(text, "  l = {}\n  r = {}", rep.l, rep.r).unwrap();
        check_lines(&mut text, &rep.checks);
        writeln!(text, "  restricted search: {}", rep.restricted_status).unwrap();
        passed &= rep.passed;
        complete &= rep.complete || !full;
        json["witness"] = serde_json::to_value(&rep).expect("serializable");
    }

    let explore = if full { Some(limits) } else { None };
    let paths = verify_in_ball_paths(n, explore);
    writeln!(text, "in-ball paths").unwrap();
    for p in &paths.paths {
        let status = if p.passed { "PASS" } else { "FAIL" };
        let why = p.failure.as_deref().map(|f| format!(": {f}")).unwrap_or_default();
        writeln!(text, "  {status} {} ({} steps, max length {}){why}", p.name, p.steps, p.max_length).unwrap();
    }
    writeln!(text, "shifted pair").unwrap();
    check_lines(&mut text, &paths.checks);
    if let Some(d) = paths.prime_pair_restricted_distance {
        writeln!(text, "  in-ball distance (not asserted): {d}").unwrap();
    }
    passed &= paths.passed;
    json["paths"] = serde_json::to_value(&paths).expect("serializable");

    if !examples_only {
        let exits = verify_exit_triples(n);
        writeln!(
            text,
            "three-letter walks from r: {} via h_r, {} leave the ball, {} neither ({} backtracking)",
            exits.through_h_r,
            exits.leaving_ball,
            exits.exceptions.len(),
            exits.backtracking
        )
        .unwrap();
        for e in &exits.exceptions {
            writeln!(text, "  neither: {e}").unwrap();
        }
        writeln!(text, "  {} every path segment passes h_r or leaves", if exits.passed { "PASS" } else { "FAIL" })
            .unwrap();
        passed &= exits.passed;
        json["exits"] = serde_json::to_value(&exits).expect("serializable");
    }

    json["passed"] = json!(passed);
    json["complete"] = json!(complete);
    let code = if !passed {
        Code::Assertion
    } else if !complete {
        Code::Resource
    } else {
        Code::Ok
    };
    let verdict = match code {
        Code::Ok => "PASS",
        Code::Assertion => "FAIL",
        _ => "PARTIAL",
    };
    writeln!(text, "{verdict}").unwrap();
    Ok(Report { json, text, code })
}

fn trace_table(t: &PathTrace) -> String {
    let mut out = format!("{:>4}  {:<6}  {:>6}  {:>4}  {:>8}  {:<5}  element\n", "step", "letter", "length", "foot", "critical", "side");
    for s in &t.steps {
        let mark = if s.jump { " jump" } else if s.in_ball { "" } else { " outside" };
        writeln!(
            out,
            "{:>4}  {:<6}  {:>6}  {:>4}  {:>8}  {:<5}  {}{mark}",
            s.index,
            s.letter.as_deref().unwrap_or("-"),
            s.length,
            s.right_foot,
            s.critical_leaf,
            format!("{:?}", s.side).to_lowercase(),
            s.element,
        )
        .unwrap();
    }
    let opt = |x: Option<usize>| x.map_or("none".to_string(), |i| i.to_string());
    writeln!(out, "h_l: {}  h_r: {}  stays in B_{}: {}", opt(t.h_l), opt(t.h_r), t.radius, t.stays_in_ball).unwrap();
    out
}

fn random_word(rng: &mut StdRng, max_len: usize) -> GroupWord {
    let n = rng.gen_range(0..=max_len);
    (0..n).map(|_| Letter::ALL[rng.gen_range(0..4)]).collect()
}

fn cmd_sweep(seed: u64, samples: usize, max_len: usize) -> Result<Report, CliError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..samples {
        let (wf, wg) = (random_word(&mut rng, max_len), random_word(&mut rng, max_len));
        let (f, g) = (ForestDiagram::from_word(&wf), ForestDiagram::from_word(&wg));
        let fg = f.multiply(&g);
        let mut fail = |what: &str| failures.push(json!({ "sample": i, "check": what, "f": format_word(&wf), "g": format_word(&wg) }));
        if to_plmap(&fg) != compose(&to_plmap(&f), &to_plmap(&g)) {
            fail("homomorphism");
        }
        if fg != ForestDiagram::from_word(&wf.concat(&wg)) {
            fail("product equals concatenation");
        }
        if length(&f) != length(&f.inverse()) {
            fail("inverse symmetry");
        }
        if ForestDiagram::from_word(&f.to_word()) != f {
            fail("word round trip");
        }
        if geodesic_word(&f).len() != length(&f) {
            fail("geodesic length");
        }
        if Letter::ALL.iter().any(|&x| length(&f.apply(x)).abs_diff(length(&f)) != 1) {
            fail("unit steps");
        }
    }
    let passed = failures.is_empty();
    let text = format!(
        "seed {seed}: {samples} samples, {} failures\n{}\n",
        failures.len(),
        if passed { "PASS" } else { "FAIL" }
    );
    let json = json!({ "seed": seed, "samples": samples, "failures": failures, "passed": passed });
    Ok(Report { json, text, code: if passed { Code::Ok } else { Code::Assertion } })
}
