use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{Check, Outcome, Table};
use super::{Common, FamilyArgs, MethodArg};
use crate::algebra::charpoly::spectral_radius;
use crate::algebra::scalar::parse_scalar;
use crate::algebra::{IntMatrix, Scalar};
use crate::birmap::growth::{classify_growth, estimate_from_degrees, DegreeRecord, GrowthConfig};
use crate::embeddings::cayley::cayley_check;
use crate::embeddings::{
    degree_sequence, findable_roots, orbit_disjointness_check, verify_relations, DegreeMethod, EmbeddingSpec,
};
use crate::error::CliError;
use crate::picard::{self, CaseTag, GramOutcome, JCase};
use crate::sl2z::{classify, parse_word, syllable_form, Mat2};

fn mat_json(m: &Mat2) -> Value {
    json!([[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]])
}

fn int_matrix_json(m: &IntMatrix) -> Value {
    json!(m.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

pub fn mat2_to_int(m: &Mat2) -> IntMatrix {
    let mut out = IntMatrix::zero(2);
    out.set(0, 0, m.a.clone());
    out.set(0, 1, m.b.clone());
    out.set(1, 0, m.c.clone());
    out.set(1, 1, m.d.clone());
    out
}

fn tol_rational(tol: f64) -> Result<BigRational, CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    BigRational::from_float(tol).ok_or_else(|| CliError::Usage(format!("bad --tol {tol}")))
}

/// Family named on the command line, with parameter flags applied.
pub fn build_spec(family: &str, a: &FamilyArgs) -> Result<EmbeddingSpec, CliError> {
    let family = match family {
        "theta_-" => "theta_minus",
        f => f,
    };
    let reject = |flag: &str, given: bool| -> Result<(), CliError> {
        if given {
            Err(CliError::Usage(format!("--{flag} does not apply to {family}")))
        } else {
            Ok(())
        }
    };
    if family != "theta_eps" {
        reject("eps", a.eps.is_some())?;
    }
    if family != "theta_n" {
        reject("n", a.n.is_some())?;
    }
    if family != "theta_P" {
        reject("P", a.p.is_some())?;
    }
    if family != "theta_k" {
        reject("k", a.k.is_some())?;
        reject("mu", a.mu.is_some())?;
    }
    let spec = match family {
        "theta_eps" => match &a.eps {
            Some(e) => EmbeddingSpec::deformation(parse_scalar(e)?)?,
            None => EmbeddingSpec::default_for(family)?,
        },
        "theta_n" => match a.n {
            Some(n) => EmbeddingSpec::weighted(n),
            None => EmbeddingSpec::default_for(family)?,
        },
        "theta_P" => match &a.p {
            Some(p) => EmbeddingSpec::parabolic_from_str(p)?,
            None => EmbeddingSpec::default_for(family)?,
        },
        "theta_k" => {
            let k = a.k.unwrap_or(2);
            let mu = match &a.mu {
                Some(m) => parse_scalar(m)?,
                None => Scalar::from_int(5),
            };
            EmbeddingSpec::hyperbolic(k, mu)?
        }
        f => EmbeddingSpec::default_for(f)?,
    };
    Ok(spec)
}

fn method(m: MethodArg) -> DegreeMethod {
    match m {
        MethodArg::Auto => DegreeMethod::Auto,
        MethodArg::Exact => DegreeMethod::Exact,
        MethodArg::Certified => DegreeMethod::Certified,
    }
}

pub fn cmd_classify(word: &str) -> Result<Outcome, CliError> {
    let w = parse_word(word)?;
    let m = w.matrix();
    let t = classify(&m);
    let syl = syllable_form(&w).syllable_count();
    let mut o = Outcome::new("classify");
    o.payload = json!({
        "word": word,
        "matrix": mat_json(&m),
        "trace": m.trace().to_string(),
        "matrix_type": t,
        "syllables": syl,
    });
    o.line(format!("matrix {m}"));
    o.line(format!("trace {}", m.trace()));
    o.line(format!("type {t}"));
    o.table = Table::new(&["word", "a", "b", "c", "d", "trace", "type"]);
    o.table.push(vec![
        word.into(),
        m.a.to_string(),
        m.b.to_string(),
        m.c.to_string(),
        m.d.to_string(),
        m.trace().to_string(),
        t.to_string(),
    ]);
    Ok(o)
}

fn degree_rows(recs: &[DegreeRecord]) -> Table {
    let mut t = Table::new(&["n", "degree", "d1", "d2", "d3", "d4"]);
    for r in recs {
        let mut row = vec![r.n.to_string(), r.degree.to_string()];
        match &r.quadridegree {
            Some(q) => row.extend(q.iter().map(|x| x.to_string())),
            None => row.extend(std::iter::repeat(String::new()).take(4)),
        }
        t.push(row);
    }
    t
}

pub fn cmd_degrees(family: &str, word: &str, params: &FamilyArgs, m: MethodArg, c: &Common) -> Result<Outcome, CliError> {
    let spec = build_spec(family, params)?;
    let w = parse_word(word)?;
    let n = c.max_iterates.unwrap_or(6);
    if n == 0 {
        return Err(CliError::Usage("--max-iterates must be positive".into()));
    }
    let recs = degree_sequence(&spec, &w, n, method(m), c.cap)?;
    let mut o = Outcome::new("degrees");
    o.payload = json!({
        "spec": spec.to_json(),
        "word": word,
        "method": method(m),
        "records": recs,
    });
    o.line(format!("{spec}, word {word}"));
    for r in &recs {
        match &r.quadridegree {
            Some(q) => o.line(format!("{} {} ({}, {}, {}, {})", r.n, r.degree, q[0], q[1], q[2], q[3])),
            None => o.line(format!("{} {}", r.n, r.degree)),
        }
    }
    o.table = degree_rows(&recs);
    Ok(o)
}

pub fn cmd_lambda(family: &str, word: &str, params: &FamilyArgs, m: MethodArg, c: &Common) -> Result<Outcome, CliError> {
    let spec = build_spec(family, params)?;
    let w = parse_word(word)?;
    let n = c.max_iterates.unwrap_or(12);
    if n < 2 {
        return Err(CliError::Usage("--max-iterates must be at least 2".into()));
    }
    let recs = degree_sequence(&spec, &w, n, method(m), c.cap)?;
    let degs: Vec<BigInt> = recs.iter().map(|r| r.degree.clone()).collect();
    let est = estimate_from_degrees(&degs)?;
    let growth = classify_growth(&degs, &GrowthConfig::default());
    let mat = w.matrix();
    let reference = if matches!(spec, EmbeddingSpec::Standard | EmbeddingSpec::SignTwist) {
        Some(spectral_radius(&mat2_to_int(&mat), &tol_rational(c.tol)?))
    } else {
        None
    };
    let mut o = Outcome::new("lambda");
    o.payload = json!({
        "spec": spec.to_json(),
        "word": word,
        "matrix_type": classify(&mat),
        "estimate": est,
        "growth": growth,
        "matrix_spectral_radius": reference.as_ref().map(|iv| json!({
            "lo": iv.lo.to_string(), "hi": iv.hi.to_string(), "mid": iv.midpoint_f64(),
        })),
    });
    o.line(format!("{spec}, word {word} ({})", classify(&mat)));
    o.line(format!("N = {}: last ratio {} ≈ {}", est.n, est.last_ratio, est.last_ratio_decimal));
    o.line(format!("root estimate {:.9}", est.root));
    o.line(format!("growth {}", growth.class));
    if let Some(iv) = &reference {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        o.line(format!("spectral radius of the matrix in [{:.9}, {:.9}]", f(&iv.lo), f(&iv.hi)));
    }
    o.table = Table::new(&["n", "degree"]);
    for r in &recs {
        o.table.push(vec![r.n.to_string(), r.degree.to_string()]);
    }
    Ok(o)
}

fn orbit_values(spec: &EmbeddingSpec) -> Option<(Vec<Scalar>, bool)> {
    match spec {
        EmbeddingSpec::Parabolic { p } => {
            let mut vals = findable_roots(p.num());
            vals.extend(findable_roots(p.den()));
            let complete = vals.len() == p.num().degree() + p.den().degree();
            Some((vals, complete))
        }
        EmbeddingSpec::Hyperbolic { mu, .. } => Some((vec![mu.clone()], true)),
        _ => None,
    }
}

fn verify_family(spec: &EmbeddingSpec, o: &mut Outcome, depth: usize) -> Result<(), CliError> {
    let r = verify_relations(spec)?;
    let detail = format!(
        "S^4 = 1: {}, (RS)^3 = 1: {}, S^2 central: {}, S^2 != 1: {}",
        r.s_fourth_is_identity, r.rs_cubed_is_identity, r.s_squared_is_central, r.s_squared_is_nontrivial
    );
    o.check(Check::new(format!("relations {spec}"), r.all_pass(), detail));
    let mut payload = json!({ "spec": spec.to_json(), "relations": r });
    if let Some((vals, complete)) = orbit_values(spec) {
        let rep = orbit_disjointness_check(&vals, depth);
        let mut detail = rep.summary();
        if !complete {
            detail.push_str(" (only the roots found exactly were checked)");
        }
        let shown: Vec<String> = vals.iter().map(|v| v.to_string()).collect();
        o.check(Check::new(format!("orbits of {{{}}}", shown.join(", ")), rep.disjoint, detail));
        payload["orbit"] = json!(rep);
        payload["orbit_values"] = json!(shown);
    }
    o.payload = payload;
    Ok(())
}

fn case_check(tag: CaseTag) -> (Check, Value) {
    let r = picard::check_case(tag);
    let mut parts = vec![
        format!("form {:?}", r.form).to_lowercase(),
        match r.fixes_canonical {
            Some(b) => format!("K fixed: {b}"),
            None => "no K".into(),
        },
        match r.order {
            Some(p) => format!("order {p} (declared {})", r.declared_order),
            None => format!("no order <= 12 (declared {})", r.declared_order),
        },
    ];
    if let Some(s) = r.square_matches {
        parts.push(format!("printed square matches: {s}"));
    }
    if let Some(ng) = &r.non_geometric {
        parts.push(format!("flagged non-geometric: {ng}"));
    }
    (Check::new(format!("case {}", r.case), r.passed(), parts.join(", ")), json!(r))
}

fn tags_for(j: JCase) -> [CaseTag; 4] {
    match j {
        JCase::J1 => [CaseTag::Zj1Alpha, CaseTag::Zj1Beta, CaseTag::Zj1RedAlpha, CaseTag::Zj1RedBeta],
        JCase::J23 => [CaseTag::Zj23Alpha, CaseTag::Zj23Beta, CaseTag::Zj23RedAlpha, CaseTag::Zj23RedBeta],
    }
}

fn gram_check(j: JCase) -> (Check, GramOutcome) {
    let g = picard::derive_gram(j);
    let detail = match &g {
        GramOutcome::Solved { .. } => "solved, consistent with every claim".to_string(),
        GramOutcome::Inconsistent { violated } => format!("inconsistent: {}", violated.join("; ")),
        GramOutcome::Underdetermined { free, .. } => format!("{free} free directions remain"),
    };
    (Check::new(format!("gram {}", j.as_str()), g.is_decided(), detail), g)
}

fn verify_j(j: JCase, maxlen: usize, o: &mut Outcome, cases: &mut Vec<Value>, extra: &mut serde_json::Map<String, Value>) {
    for t in tags_for(j) {
        let (c, v) = case_check(t);
        o.check(c);
        cases.push(v);
    }
    let fixed = picard::pair_fixed_subspace(j);
    let want: Vec<BigInt> = [1, 1, -1, -1, -1].iter().map(|&x| BigInt::from(x)).collect();
    let neg: Vec<BigInt> = want.iter().map(|x| -x).collect();
    let ok = fixed.len() == 1 && (fixed[0] == want || fixed[0] == neg);
    let shown: Vec<String> = fixed
        .iter()
        .map(|v| format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    o.check(Check::new(format!("fixed subspace {}", j.as_str()), ok, format!("span{{{}}}", shown.join(", "))));
    let sweep = picard::sweep_inequalities(j, maxlen);
    let detail = match sweep.violations.first() {
        None => format!("{} words up to length {maxlen}, no violation", sweep.words_checked),
        Some(v) => format!(
            "{} of {} words fail; first {} at step {}: {}",
            sweep.violations.len(),
            sweep.words_checked,
            v.letters,
            v.first_violation.as_ref().map_or(0, |x| x.step),
            v.first_violation.as_ref().map_or("", |x| x.inequality.as_str())
        ),
    };
    o.check(Check::new(format!("inequalities {}", j.as_str()), sweep.passed(), detail));
    let (gc, g) = gram_check(j);
    o.check(gc);
    extra.insert(format!("sweep_{}", j.as_str()), json!(sweep));
    extra.insert(format!("gram_{}", j.as_str()), json!(g));
    extra.insert(format!("fixed_subspace_{}", j.as_str()), json!(shown));
}

fn verify_picard(case: &str, maxlen: usize, o: &mut Outcome) -> Result<(), CliError> {
    if maxlen == 0 {
        return Err(CliError::Usage("--maxlen must be positive".into()));
    }
    let mut cases = Vec::new();
    let mut extra = serde_json::Map::new();
    if case == "all" {
        for t in [CaseTag::M6i, CaseTag::M6ii, CaseTag::M4i, CaseTag::M4ii] {
            let (c, v) = case_check(t);
            o.check(c);
            cases.push(v);
        }
        verify_j(JCase::J1, maxlen, o, &mut cases, &mut extra);
        verify_j(JCase::J23, maxlen, o, &mut cases, &mut extra);
    } else if let Ok(j) = case.parse::<JCase>() {
        verify_j(j, maxlen, o, &mut cases, &mut extra);
    } else {
        let (c, v) = case_check(case.parse::<CaseTag>()?);
        o.check(c);
        cases.push(v);
    }
    extra.insert("cases".into(), json!(cases));
    o.payload = Value::Object(extra);
    Ok(())
}

pub fn cmd_verify(target: &str, params: &FamilyArgs, case: &str, maxlen: usize, c: &Common) -> Result<Outcome, CliError> {
    let mut o = Outcome::new("verify");
    match target {
        "picard" => verify_picard(case, maxlen, &mut o)?,
        "cayley" => {
            let r = cayley_check();
            o.check(Check::new("invariant under (1/x, 1/y)", r.invariant_under_involution, ""));
            o.check(Check::new("image on the cubic surface", r.image_on_cubic, ""));
            o.payload = json!({ "cayley": r });
        }
        family => verify_family(&build_spec(family, params)?, &mut o, c.depth)?,
    }
    Ok(o)
}

pub fn cmd_picard_word(
    case: &str,
    word: Option<&str>,
    maxlen: Option<usize>,
    powers: usize,
    spectral: bool,
    c: &Common,
) -> Result<Outcome, CliError> {
    let j: JCase = case.parse()?;
    let mut o = Outcome::new("picard-word");
    match (word, maxlen) {
        (Some(w), _) => {
            let letters = picard::parse_rho_word(w)?;
            let steps = c.max_iterates.unwrap_or(letters.len());
            let m = picard::word_isometry(j, &letters)?;
            let rep = picard::verify_inequalities(j, &letters, steps)?;
            let cert = picard::certify_spectral_radius(j, &letters, powers)?;
            o.line(format!("case {}, word {}", j.as_str(), rep.letters));
            o.line(format!("matrix {m}"));
            o.line(format!("ℓ: {}", rep.ells.join(", ")));
            o.line(format!(
                "spectral radius in [{:.6}, {:.6}], bound {} ≈ {:.6}, method {:?}",
                cert.interval_f64.0, cert.interval_f64.1, cert.bound, cert.bound_f64, cert.method
            ));
            let detail = match &rep.first_violation {
                None => format!("{} steps", rep.steps),
                Some(v) => format!("step {}: {}", v.step, v.inequality),
            };
            o.check(Check::new("inequalities", rep.holds, detail));
            o.check(Check::new(
                "spectral radius bound",
                cert.certified(),
                format!("{:?}", cert.method).to_lowercase(),
            ));
            o.table = Table::new(&["word", "n", "ell"]);
            for (i, l) in rep.ells.iter().enumerate() {
                o.table.push(vec![rep.letters.clone(), (i + 1).to_string(), l.clone()]);
            }
            o.payload = json!({ "case": j.as_str(), "matrix": int_matrix_json(&m), "record": rep, "spectral": cert });
        }
        (None, Some(len)) => {
            if len == 0 {
                return Err(CliError::Usage("--maxlen must be positive".into()));
            }
            let reports = picard::word_reports(j, len);
            let certs: Vec<Option<picard::SpectralCertificate>> = if spectral {
                reports
                    .par_iter()
                    .map(|r| {
                        let w = picard::parse_rho_word(&r.letters).expect("formatted word");
                        picard::certify_spectral_radius(j, &w, powers).ok()
                    })
                    .collect()
            } else {
                vec![None; reports.len()]
            };
            o.table = Table::new(&["word", "n", "ell"]);
            for r in &reports {
                for (i, l) in r.ells.iter().enumerate() {
                    o.table.push(vec![r.letters.clone(), (i + 1).to_string(), l.clone()]);
                }
            }
            let records: Vec<Value> = reports
                .iter()
                .zip(&certs)
                .map(|(r, cert)| json!({ "letters": r.letters, "ells": r.ells, "holds": r.holds,
                    "first_violation": r.first_violation, "spectral": cert }))
                .collect();
            if spectral {
                let bad = certs.iter().filter(|c| !c.as_ref().is_some_and(|c| c.certified())).count();
                o.check(Check::new(
                    "spectral radius bounds",
                    bad == 0,
                    format!("{} of {} words certified", certs.len() - bad, certs.len()),
                ));
            }
            let sweep = picard::summarize_sweep(j, len, reports);
            o.line(format!(
                "case {}: {} words up to length {len}, {} violations",
                j.as_str(),
                sweep.words_checked,
                sweep.violations.len()
            ));
            o.check(Check::new("inequalities", sweep.passed(), format!("{} words", sweep.words_checked)));
            o.payload = json!({ "case": j.as_str(), "max_length": len, "records": records });
        }
        (None, None) => return Err(CliError::Usage("give --word or --maxlen".into())),
    }
    Ok(o)
}

pub fn cmd_gram_derive(case: &str) -> Result<Outcome, CliError> {
    let js = match case {
        "all" => vec![JCase::J1, JCase::J23],
        c => vec![c.parse::<JCase>()?],
    };
    let mut o = Outcome::new("gram-derive");
    let mut results = serde_json::Map::new();
    for j in js {
        let (chk, g) = gram_check(j);
        match &g {
            GramOutcome::Solved { labels, gram } => {
                o.line(format!("{}: solved on ({})", j.as_str(), labels.join(", ")));
                for r in gram {
                    o.line(format!("  [{}]", r.join(", ")));
                }
            }
            GramOutcome::Inconsistent { violated } => {
                o.line(format!("{}: no Gram matrix satisfies all of", j.as_str()));
                for v in violated {
                    o.line(format!("  {v}"));
                }
            }
            GramOutcome::Underdetermined { free, .. } => {
                o.line(format!("{}: {free} directions left free", j.as_str()));
            }
        }
        o.check(chk);
        results.insert(j.as_str().into(), json!(g));
    }
    o.payload = Value::Object(results);
    Ok(o)
}
