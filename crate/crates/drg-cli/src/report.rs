//! Subcommand implementations: report assembly and exit-code mapping.

use crate::output::emit;
use crate::CliError;
use drg_core::imprimitive::{
    self, antip3_analysis, bip3_analysis, bip_antip4_analysis, bipartite_motion_bound,
    imprimitive_motion_composition, ImprimitiveError,
};
use drg_core::motion::{self, ClassifyError, MotionReport, Verdict};
use drg_core::oracle::{self, automorphism, ConcreteGraph};
use drg_core::params::{
    cocktail_party_array, derive_parameters, feasibility_report, hamming_array, johnson_array,
    IntersectionArray,
};
use drg_core::spectrum::{eigen_spectrum, hamming_spectrum, johnson_spectrum, Spectrum};
use drg_core::tradeoff::{expansion_check, spectral_gap_dichotomy, DichotomyError};
use drg_core::{catalog, verify};
use num::BigInt as Int;
use num::{BigRational, ToPrimitive};
use serde_json::{json, Value};

/// Environment variable naming a directory for spectrum memoization.
const SPECTRUM_CACHE_ENV: &str = "DRG_SPECTRUM_CACHE_DIR";

fn big(v: &Int) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn bigs(vs: &[Int]) -> Value {
    Value::Array(vs.iter().map(big).collect())
}

fn array_json(arr: &IntersectionArray) -> Value {
    serde_json::to_value(arr).expect("array serializes")
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

/// Spectrum with optional file memoization keyed by the array.
fn cached_spectrum(arr: &IntersectionArray) -> Result<Spectrum, CliError> {
    let compute = || eigen_spectrum(arr).map_err(|e| CliError::input(format!("spectrum failed: {e}")));
    let Ok(dir) = std::env::var(SPECTRUM_CACHE_ENV) else {
        return compute();
    };
    let key: String = arr
        .to_string()
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    let path = std::path::Path::new(&dir).join(format!("{key}.json"));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(spec) = serde_json::from_str::<Spectrum>(&text) {
            return Ok(spec);
        }
    }
    let spec = compute()?;
    let _ = std::fs::create_dir_all(&dir);
    let _ = std::fs::write(&path, serde_json::to_string(&spec).expect("serializable"));
    Ok(spec)
}

fn classify_error(err: ClassifyError) -> CliError {
    match err {
        ClassifyError::Infeasible(e) => CliError::input(format!("array infeasible: {e}")),
        ClassifyError::Domain(e) => CliError::input(e.to_string()),
        other => CliError::violation(other.to_string()),
    }
}

fn motion_json(report: &MotionReport) -> Value {
    let classifier = report.classifier.as_ref().map(to_value);
    json!({
        "dvals": bigs(&report.dvals),
        "dmin": big(&report.dmin),
        "combinatorial_bound": big(&report.combinatorial_bound),
        "spectral_bound": report.spectral_bound,
        "transfer_holds": report.transfer_holds,
        "ledger": to_value(&report.ledger),
        "classifier": classifier,
    })
}

pub fn analyze(
    id: &str,
    arr: &IntersectionArray,
    delta: &BigRational,
    imprimitive_flag: bool,
    pretty: bool,
) -> Result<(), CliError> {
    let violations = feasibility_report(arr);
    if !violations.is_empty() {
        let listed: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(CliError::input(format!(
            "array infeasible: {}",
            listed.join("; ")
        )));
    }
    let table = derive_parameters(arr).expect("feasibility screened");
    let spec = cached_spectrum(arr)?;
    let det = imprimitive::detect(arr);
    let primitive = !det.is_bipartite && !det.is_antipodal;

    let dichotomy = spectral_gap_dichotomy(arr, Some(delta)).map_err(|e| match e {
        DichotomyError::TheoremViolation(msg) => CliError::violation(msg),
        other => CliError::violation(other.to_string()),
    })?;
    let expansion = expansion_check(arr).map_err(|e| CliError::violation(e.to_string()))?;
    let report = motion::motion_report(arr, primitive).map_err(classify_error)?;

    let mut doc = json!({
        "id": id,
        "array": array_json(arr),
        "parameters": {
            "diameter": arr.diameter(),
            "degree": arr.degree(),
            "n": big(table.n()),
            "kdist": bigs(table.kdist()),
            "a": table.a_slice(),
            "lambda": table.lambda(),
            "mu": table.mu(),
            "q": table.q(),
        },
        "feasible": true,
        "spectrum": to_value(&spec),
        "clique_bound": motion::delsarte_clique_bound(&spec, arr.degree()).ok(),
        "imprimitivity": {
            "is_bipartite": det.is_bipartite,
            "is_antipodal": det.is_antipodal,
            "half_diameter": det.half_diameter,
            "cover_index": det.cover_index,
        },
        "primitive": primitive,
        "dichotomy": to_value(&dichotomy),
        "expansion": to_value(&expansion),
        "motion": motion_json(&report),
    });

    if imprimitive_flag {
        doc["reduction"] = reduction_json(arr, &spec)?;
    }
    emit(&doc, pretty);
    Ok(())
}

fn imprimitive_error(err: ImprimitiveError) -> CliError {
    match err {
        ImprimitiveError::ShapeViolation(msg) => CliError::violation(format!("shape violation: {msg}")),
        ImprimitiveError::Spectrum(e) => CliError::violation(e.to_string()),
        other => CliError::input(other.to_string()),
    }
}

fn reduction_json(arr: &IntersectionArray, spec: &Spectrum) -> Result<Value, CliError> {
    let profile = imprimitive::profile(arr).map_err(imprimitive_error)?;
    let mut doc = to_value(&profile);
    let d = arr.diameter();
    if profile.is_bipartite {
        doc["bipartite_mixing_bound"] =
            json!(bipartite_motion_bound(arr, spec).map_err(imprimitive_error)?);
        if d == 3 {
            doc["bipartite_d3"] = to_value(&bip3_analysis(arr).map_err(imprimitive_error)?);
        }
    }
    if profile.is_antipodal && d == 3 {
        doc["antipodal_d3"] = to_value(&antip3_analysis(arr).map_err(imprimitive_error)?);
    }
    if profile.is_bipartite && profile.is_antipodal && d == 4 {
        doc["bipartite_antipodal_d4"] =
            to_value(&bip_antip4_analysis(arr).map_err(imprimitive_error)?);
    }
    if d >= 3 {
        let classifier_fraction = |a: &IntersectionArray| -> Option<f64> {
            match motion::classify_primitive(a) {
                Ok(rep) => match rep.verdict {
                    Verdict::MotionBound { fraction, .. } => Some(fraction),
                    Verdict::GeometricCandidate { .. } => None,
                },
                Err(_) => None,
            }
        };
        let composition = imprimitive_motion_composition(arr, &classifier_fraction)
            .map_err(imprimitive_error)?;
        doc["composition"] = to_value(&composition);
    }
    Ok(doc)
}

pub fn family(kind: &str, params: &[u64], pretty: bool) -> Result<(), CliError> {
    let (arr, closed): (IntersectionArray, Option<Vec<(i64, Int)>>) = match (kind, params) {
        ("johnson", [m, d]) => {
            let d = *d as usize;
            let arr = johnson_array(*m, d).map_err(|e| CliError::input(e.to_string()))?;
            let closed = johnson_spectrum(*m, d).map_err(|e| CliError::input(e.to_string()))?;
            (arr, Some(closed))
        }
        ("hamming", [d, m]) => {
            let d = *d as usize;
            let arr = hamming_array(d, *m).map_err(|e| CliError::input(e.to_string()))?;
            let closed = hamming_spectrum(d, *m).map_err(|e| CliError::input(e.to_string()))?;
            (arr, Some(closed))
        }
        ("cocktail", [m]) => {
            let arr = cocktail_party_array(*m).map_err(|e| CliError::input(e.to_string()))?;
            (arr, None)
        }
        _ => {
            return Err(CliError::input(format!(
                "usage: family johnson <m> <d> | family hamming <d> <m> | family cocktail <m>; got '{kind}' with {} params",
                params.len()
            )))
        }
    };
    let table = derive_parameters(&arr).map_err(|e| CliError::input(format!("array infeasible: {e}")))?;
    let spec = eigen_spectrum(&arr).map_err(|e| CliError::input(e.to_string()))?;
    let cross_check = closed.as_ref().map(|closed| {
        closed.len() == spec.eigenvalues.len()
            && spec.eigenvalues.iter().zip(closed).all(|(line, (v, m))| {
                (line.value - *v as f64).abs() <= 1e-6 && Int::from(line.multiplicity) == *m
            })
    });
    if cross_check == Some(false) {
        return Err(CliError::violation(
            "closed-form spectrum disagrees with the tridiagonal computation",
        ));
    }
    let doc = json!({
        "family": kind,
        "params": params,
        "array": array_json(&arr),
        "n": big(table.n()),
        "lambda": table.lambda(),
        "mu": table.mu(),
        "spectrum": to_value(&spec),
        "closed_form_spectrum": closed.map(|c| {
            Value::Array(c.iter().map(|(v, m)| json!({"value": v, "multiplicity": big(m)})).collect())
        }),
        "cross_check": cross_check,
    });
    emit(&doc, pretty);
    Ok(())
}

pub fn verify(suite: &str, pretty: bool) -> Result<(), CliError> {
    let checks = match suite {
        "tradeoff" => verify::verify_tradeoff(),
        "sequences" => verify::verify_sequences(),
        "dichotomy" => verify::verify_dichotomy(),
        "oracle" => verify::verify_oracle(),
        "all" => verify::verify_all(),
        other => {
            return Err(CliError::input(format!(
                "unknown suite '{other}' (expected tradeoff, sequences, dichotomy, oracle, all)"
            )))
        }
    };
    let failed = checks.iter().filter(|c| !c.holds).count();
    if pretty {
        emit(&to_value(&checks), true);
        println!("{} checks, {failed} failed", checks.len());
    } else {
        for check in &checks {
            println!("{}", serde_json::to_string(check).expect("serializable"));
        }
        println!(
            "{}",
            json!({"suite": suite, "checks": checks.len(), "failed": failed})
        );
    }
    if failed > 0 {
        return Err(CliError::violation(format!("{failed} checks failed")));
    }
    Ok(())
}

pub struct OracleFlags {
    pub motion: bool,
    pub spectrum: bool,
    pub check_array: bool,
    pub fold: bool,
    pub halve: bool,
}

fn resolve_graph(input: &str) -> Result<ConcreteGraph, CliError> {
    if let Some(entry) = catalog::entry(input) {
        if let Some(build) = entry.builder {
            return Ok(build());
        }
        return Err(CliError::input(format!("catalog entry '{input}' has no concrete builder")));
    }
    if std::path::Path::new(input).exists() {
        let text = std::fs::read_to_string(input)
            .map_err(|e| CliError::input(format!("cannot read {input}: {e}")))?;
        let (n, edges) =
            oracle::parse_edge_list(&text).map_err(|e| CliError::input(e.to_string()))?;
        return ConcreteGraph::from_edges(n, &edges, Some(input.to_string()))
            .map_err(|e| CliError::input(e.to_string()));
    }
    Err(CliError::input(format!(
        "unknown oracle input '{input}': expected a catalog id with a builder or an edge-list file"
    )))
}

fn quotient_json(result: Result<ConcreteGraph, oracle::OracleError>) -> Result<Value, CliError> {
    let g = result.map_err(|e| CliError::input(e.to_string()))?;
    let shape = match oracle::check_distance_regular(&g) {
        Ok(oracle::DrgShape::Array(a)) => json!({"kind": "array", "array": array_json(&a)}),
        Ok(oracle::DrgShape::Complete { n }) => json!({"kind": "complete", "n": n}),
        Err(w) => json!({"kind": "not-distance-regular", "witness": w.to_string()}),
    };
    Ok(json!({"n": g.n(), "shape": shape}))
}

pub fn oracle(
    input: &str,
    flags: &OracleFlags,
    max_n: usize,
    pretty: bool,
) -> Result<(), CliError> {
    let g = resolve_graph(input)?;
    if g.n() > max_n {
        return Err(CliError::size(format!("graph has {} vertices, cap is {max_n}", g.n())));
    }
    let mut doc = json!({
        "name": g.name(),
        "n": g.n(),
        "degree": g.regular_degree().ok(),
        "diameter": g.diameter(),
        "primitive": oracle::is_primitive(&g),
    });
    if flags.check_array {
        doc["distance_regular"] = match oracle::check_distance_regular(&g) {
            Ok(oracle::DrgShape::Array(a)) => json!({"holds": true, "array": array_json(&a)}),
            Ok(oracle::DrgShape::Complete { n }) => {
                json!({"holds": true, "complete": n})
            }
            Err(w) => json!({"holds": false, "witness": w.to_string()}),
        };
    }
    if flags.motion {
        let data = automorphism::automorphisms(&g).map_err(|e| CliError::size(e.to_string()))?;
        let histogram: Vec<Value> = data
            .degree_histogram
            .iter()
            .map(|(deg, count)| json!({"degree": deg, "elements": count}))
            .collect();
        let dist = automorphism::distinguishing_exact(&g);
        doc["automorphisms"] = json!({
            "order": data.order,
            "motion": data.motion,
            "generators": data.generators.len(),
            "degree_histogram": histogram,
        });
        doc["distinguishing"] = json!({
            "dmin": dist.dmin,
            "per_distance": dist.per_distance,
        });
    }
    if flags.spectrum {
        let spec = oracle::adjacency_spectrum(&g).map_err(|e| match e {
            oracle::OracleError::SizeLimitExceeded { .. } => CliError::size(e.to_string()),
            other => CliError::input(other.to_string()),
        })?;
        doc["spectrum"] = to_value(&spec);
    }
    if flags.halve {
        doc["halved"] = quotient_json(oracle::halved_graph(&g))?;
    }
    if flags.fold {
        doc["folded"] = quotient_json(oracle::folded_graph(&g))?;
    }
    emit(&doc, pretty);
    Ok(())
}
