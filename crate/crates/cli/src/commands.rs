//! One function per subcommand. Each fills in a [`Report`]; inputs are
//! echoed in normalized form before any computation can fail.

use apolarity::apolarity::perp_graded;
use apolarity::poly::{parse_poly_infer, BlockDecomposition, Polynomial};
use apolarity::rank::{
    additive_crank, additive_rank, binary_profile, classify, crank_lower_bound, form_rank, monomial_crank,
    rank_lower_bound, FormClass, RankCertificate,
};
use apolarity::verify::{describe_blocks, run_suite, CorpusConfig, Suite};
use serde_json::{json, Value};

use crate::input;
use crate::report::{int, ints, linear_form, strings, Report};
use crate::CliError;

fn parse(report: &mut Report, text: &str) -> Result<Polynomial, CliError> {
    report.input("polynomial", text.trim());
    let f = parse_poly_infer(text)?;
    report.input("polynomial", f.to_string());
    report.output("variables", strings(f.vars()));
    Ok(f)
}

pub fn perp(report: &mut Report, text: &str) -> Result<(), CliError> {
    let f = parse(report, text)?;
    let d = f.form_degree()?;
    let ideal = perp_graded(&f)?;
    let h = ideal.hilbert_function();
    let values = &h.values()[..=d];
    let dims: Vec<usize> = ideal.pieces()[..=d].iter().map(|p| p.dim()).collect();
    report
        .output("degree", int(d))
        .output("hilbert", ints(values))
        .output("perp_dims", ints(&dims))
        .output("total", int(h.total()));
    report.line(format!("F = {f}"));
    report.line(format!("{:>6} {:>10} {:>8}", "degree", "dim perp", "H(e)"));
    for e in 0..=d {
        report.line(format!("{e:>6} {:>10} {:>8}", dims[e], values[e]));
    }
    let joined: Vec<String> = values.iter().map(usize::to_string).collect();
    report.line(format!("H = {}; dim T/F^perp = {}", joined.join(","), h.total()));
    Ok(())
}

pub fn rank(report: &mut Report, text: &str, witness: Option<&str>) -> Result<(), CliError> {
    let f = parse(report, text)?;
    let vars = f.vars().to_vec();
    let t = witness.map(|w| input::witness(w, &vars)).transpose()?;
    if let Some(t) = &t {
        report.input("witness", t.display(&vars));
    }
    let r = form_rank(&f, t.as_ref())?;
    let mut notes = Vec::new();
    report
        .output("class", r.class.to_string())
        .output("rank", r.rank.map_or(Value::Null, int))
        .output("witness", linear_form(&r.witness, &vars))
        .output("bound", int(r.bound))
        .output("witness_computes_rank", r.witness_computes_rank);
    if let Some(p) = &r.profile {
        report.output(
            "binary_profile",
            json!({
                "d1": int(p.d1),
                "d2": int(p.d2),
                "generators": p.generators.iter().map(|g| g.display_dual()).collect::<Vec<_>>(),
                "squarefree_at_d1": p.squarefree_at_d1,
            }),
        );
    }
    report.line(format!("F = {f}"));
    report.line(format!("class: {}", r.class));
    match r.rank {
        Some(k) => {
            report.line(format!("rank: {k}"));
            report.line(format!("witness: {}", r.witness.display(&vars)));
            report.line(format!("lower bound at witness: {}", r.bound));
            if !r.witness_computes_rank {
                notes.push(if t.is_some() {
                    "the given witness does not compute the rank".to_string()
                } else {
                    "no rational linear form computing the rank was found; one may require an algebraic \
                     extension of Q, so the bound shown is at the best rational candidate"
                        .to_string()
                });
            }
        }
        None => {
            report.line(format!("lower bound only: {} at {}", r.bound, r.witness.display(&vars)));
            notes.push("no closed form for this class; the value is a lower bound only".to_string());
        }
    }
    if let Some(p) = &r.profile {
        report.line(format!(
            "perp generators in degrees {} and {}; degree-{} piece: {}",
            p.d1,
            p.d2,
            p.d1,
            p.generators.iter().map(|g| g.display_dual()).collect::<Vec<_>>().join(", ")
        ));
    }
    finish_notes(report, notes);
    Ok(())
}

pub fn crank(report: &mut Report, text: &str, samples: usize) -> Result<(), CliError> {
    let f = parse(report, text)?;
    let vars = f.vars().to_vec();
    report.input("samples", int(samples));
    let sampled = crank_lower_bound(&f, samples, report.seed)?;
    let mut notes = Vec::new();
    let closed = match classify(&f) {
        FormClass::Monomial(e) => match monomial_crank(&e) {
            Ok(k) => Some(k),
            Err(apolarity::Error::AssumptionNotSatisfied(why)) => {
                notes.push(format!("no closed form: {why}"));
                None
            }
            Err(e) => return Err(e.into()),
        },
        FormClass::Binary(pos) => Some(binary_profile(&f.restrict(&pos)?)?.crank),
        FormClass::General => None,
    };
    if let Some(k) = closed {
        if k != sampled.value {
            notes.push(format!("sampled value {} differs from the closed form {k}", sampled.value));
        }
    }
    if !sampled.agreed {
        notes.push("samples disagree; the minimum is reported".to_string());
    }
    let rows: Vec<Value> = sampled
        .samples
        .iter()
        .map(|(l, v)| json!({"form": linear_form(l, &vars), "value": int(*v)}))
        .collect();
    report
        .output("crank", closed.map_or(Value::Null, int))
        .output("sampled_bound", int(sampled.value))
        .output("samples", Value::Array(rows))
        .output("samples_agree", sampled.agreed);
    report.line(format!("F = {f}"));
    match closed {
        Some(k) => report.line(format!("crank: {k}")),
        None => report.line(format!("crank lower bound (sampled): {}", sampled.value)),
    };
    for (l, v) in &sampled.samples {
        report.line(format!("  l = {}: {v}", l.display(&vars)));
    }
    finish_notes(report, notes);
    Ok(())
}

pub fn bound(report: &mut Report, text: &str, witness: Option<&str>) -> Result<(), CliError> {
    let f = parse(report, text)?;
    let vars = f.vars().to_vec();
    let (t, b) = match witness {
        Some(w) => {
            let t = input::witness(w, &vars)?;
            report.input("witness", t.display(&vars));
            let b = rank_lower_bound(&f, &t)?;
            (t, b)
        }
        None => {
            let r = form_rank(&f, None)?;
            (r.witness, r.bound)
        }
    };
    report.output("witness", linear_form(&t, &vars)).output("bound", int(b));
    report.line(format!("F = {f}"));
    report.line(format!("dim T/((F^perp : t) + (t)) at t = {}: {b}", t.display(&vars)));
    Ok(())
}

pub fn additive(report: &mut Report, bd: &BlockDecomposition, cactus: bool, samples: usize) -> Result<(), CliError> {
    report.input("blocks", describe_blocks(bd)).input("cactus", cactus);
    if cactus {
        report.input("samples", int(samples));
    }
    let cert = if cactus {
        additive_crank(bd, samples, report.seed)?
    } else {
        additive_rank(bd)?
    };
    write_certificate(report, &cert, bd);
    Ok(())
}

fn opt_int(v: Option<usize>) -> Value {
    v.map_or(Value::Null, int)
}

fn opt_bool(v: Option<bool>) -> Value {
    v.map_or(Value::Null, Value::Bool)
}

fn write_certificate(report: &mut Report, cert: &RankCertificate, bd: &BlockDecomposition) {
    // The certificate is over the variables that occur in some block.
    let vars: Vec<String> = if cert.blocks.iter().map(|b| b.vars.len()).sum::<usize>() == bd.vars().len() {
        bd.vars().to_vec()
    } else {
        bd.vars()
            .iter()
            .filter(|v| cert.blocks.iter().any(|b| b.vars.contains(v)))
            .cloned()
            .collect()
    };
    let blocks: Vec<Value> = cert
        .blocks
        .iter()
        .map(|b| {
            json!({
                "variables": strings(&b.vars),
                "class": b.class.to_string(),
                "value": int(b.value),
                "witness": b.witness.as_ref().map_or(Value::Null, |t| linear_form(t, &vars)),
            })
        })
        .collect();
    report
        .output("variables", strings(&vars))
        .output("kind", cert.kind.to_string())
        .output("value", int(cert.value))
        .output("upper_bound", int(cert.upper_bound))
        .output("lower_bound", int(cert.lower_bound))
        .output("verdict", cert.verdict.to_string())
        .output("witnesses", Value::Array(cert.witnesses.iter().map(|t| linear_form(t, &vars)).collect()))
        .output("blocks", Value::Array(blocks))
        .output("sum_witness_bound", opt_int(cert.sum_witness_bound))
        .output("intersection_dim", opt_int(cert.intersection_dim))
        .output("colon_contained", opt_bool(cert.colon_contained))
        .output("nonannihilating", opt_bool(cert.nonannihilating))
        .output("samples_agree", opt_bool(cert.samples_agree))
        .output("partial_sums", ints(&cert.partial_sums));

    report.line(format!("blocks: {}", describe_blocks(bd)));
    for (i, b) in cert.blocks.iter().enumerate() {
        let w = b.witness.as_ref().map(|t| format!(", witness {}", t.display(&vars))).unwrap_or_default();
        report.line(format!("  block {} ({}; {}): {}{w}", i + 1, b.vars.join(","), b.class, b.value));
    }
    report.line(format!("{} value: {} [{}]", cert.kind, cert.value, cert.verdict));
    report.line(format!("lower bound {} <= value <= upper bound {}", cert.lower_bound, cert.upper_bound));
    if let Some(s) = cert.sum_witness_bound {
        report.line(format!("bound at the summed witness: {s}"));
    }
    if let Some(k) = cert.intersection_dim {
        report.line(format!("dim T/(J_1 ∩ … ∩ J_m): {k}"));
    }
    if let (Some(c), Some(n)) = (cert.colon_contained, cert.nonannihilating) {
        report.line(format!("colon contained: {c}; witnesses nonannihilating: {n}"));
    }
    if !cert.partial_sums.is_empty() {
        report.line(format!(
            "partial sums: {}",
            cert.partial_sums.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
        ));
    }
    finish_notes(report, cert.notes.clone());
}

pub fn verify(report: &mut Report, suite: &str, count: usize, samples: usize) -> Result<(), CliError> {
    report
        .input("suite", suite)
        .input("count", int(count))
        .input("samples", int(samples));
    let parsed = Suite::parse(suite).ok_or_else(|| {
        CliError::Usage(format!("unknown suite `{suite}`; expected one of {}", Suite::NAMES.join(", ")))
    })?;
    let config = CorpusConfig {
        instances: count,
        seed: report.seed,
        samples,
        ..CorpusConfig::default()
    };
    let reports = run_suite(parsed, &config);
    let passed = reports.iter().filter(|r| r.passed).count();
    let skipped = reports.iter().filter(|r| r.skipped).count();
    let failed = reports.len() - passed - skipped;
    let rows = serde_json::to_value(&reports).expect("reports serialize");
    report
        .output("passed", int(passed))
        .output("failed", int(failed))
        .output("skipped", int(skipped))
        .output("reports", rows);
    for r in &reports {
        report.line(r.to_string());
    }
    report.line(format!("{suite}: {passed} passed, {failed} failed, {skipped} skipped"));
    report.ok = failed == 0;
    Ok(())
}

fn finish_notes(report: &mut Report, notes: Vec<String>) {
    for n in &notes {
        report.line(format!("note: {n}"));
    }
    report.output("notes", strings(&notes));
}
