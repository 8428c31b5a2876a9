//! Runnable cross-validation suites over the embedded catalog. Each check
//! is a named pass/fail record, deterministic across runs, designed for
//! machine-readable output (one JSON line per check from the CLI).

use crate::catalog::{catalog, CatalogEntry};
use crate::imprimitive::{
    antip3_analysis, bip3_analysis, bip_antip4_analysis, bipartite_motion_bound, detect,
    halved_array, folded_array, profile, ImprimitiveVerdict, ReducedArray,
};
use crate::motion::{
    classify_primitive, delsarte_clique_bound, distinguishing_numbers, distinguishing_transfer,
    motion_from_distinguishing, primitive_distinguish_bound, spectral_motion_bound,
    structural_inequalities, Verdict,
};
use crate::oracle::{
    self, adjacency_spectrum, automorphism, check_distance_regular, empirical_p, max_clique,
    ConcreteGraph,
};
use crate::params::{derive_parameters, feasibility_report};
use crate::spectrum::{eigen_spectrum, eigenvalue_locality_check};
use crate::tradeoff::{
    be_sequence, closed_form_bounds, default_delta, dichotomy_eta, eps_delta,
    expansion_check, explicit_constants_compatible, fe_sequence, is_compatible,
    spectral_gap_dichotomy, tradeoff_check,
};
use crate::{Int, Rat};
use num::{One, ToPrimitive};
use serde::Serialize;

/// One verification record.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub array_id: String,
    pub check: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl Check {
    fn plain(id: &str, check: impl Into<String>, holds: bool) -> Self {
        Check {
            array_id: id.into(),
            check: check.into(),
            holds,
            lhs: None,
            rhs: None,
        }
    }

    fn with_sides(
        id: &str,
        check: impl Into<String>,
        holds: bool,
        lhs: impl ToString,
        rhs: impl ToString,
    ) -> Self {
        Check {
            array_id: id.into(),
            check: check.into(),
            holds,
            lhs: Some(lhs.to_string()),
            rhs: Some(rhs.to_string()),
        }
    }
}

/// The growth-tradeoff inequality over every catalog array and admissible
/// `(j, s)` pair, in exact rationals.
pub fn verify_tradeoff() -> Vec<Check> {
    let mut out = Vec::new();
    for e in catalog() {
        let d = e.array.diameter();
        for j in 0..=d.saturating_sub(2) {
            if e.array.b(j) <= e.array.c(j + 1) {
                continue;
            }
            for s in 1..=j + 1 {
                match tradeoff_check(&e.array, j, s) {
                    Ok(res) => out.push(Check::with_sides(
                        e.id,
                        format!("tradeoff(j={j},s={s})"),
                        res.holds,
                        &res.lhs,
                        &res.rhs,
                    )),
                    Err(err) => out.push(Check::plain(
                        e.id,
                        format!("tradeoff(j={j},s={s}) [{err}]"),
                        false,
                    )),
                }
            }
        }
    }
    out
}

/// Sequence machinery: exact spot values, closed-form domination up to
/// level 20, and the compatible-epsilon bounds for diameters 3..8.
pub fn verify_sequences() -> Vec<Check> {
    let mut out = Vec::new();
    let delta = default_delta();
    let alpha = fe_sequence(&delta, 22);
    let beta = be_sequence(&delta, &alpha);

    out.push(Check::with_sides(
        "-",
        "alpha_1 = 4/9",
        alpha[1] == Rat::new(Int::from(4), Int::from(9)),
        &alpha[1],
        "4/9",
    ));
    out.push(Check::with_sides(
        "-",
        "alpha_2 = 32/153",
        alpha[2] == Rat::new(Int::from(32), Int::from(153)),
        &alpha[2],
        "32/153",
    ));
    out.push(Check::with_sides(
        "-",
        "beta_2 = 1 - delta",
        beta[0] == Rat::one() - delta.clone(),
        &beta[0],
        "8/9",
    ));

    for j in 1..=20usize {
        let bounds = closed_form_bounds(&delta, j, 3).expect("valid range");
        let alpha_lb = Rat::from_float(bounds.alpha_lb).unwrap();
        let beta_lb = Rat::from_float(bounds.beta_lb).unwrap();
        out.push(Check::with_sides(
            "-",
            format!("fe({j}) >= closed form"),
            alpha[j] >= alpha_lb,
            &alpha[j],
            bounds.alpha_lb,
        ));
        // beta vector index t holds beta_{t+2}.
        out.push(Check::with_sides(
            "-",
            format!("be({}) >= closed form", j + 2),
            beta[j] >= beta_lb,
            &beta[j],
            bounds.beta_lb,
        ));
    }

    for d in 3..=8usize {
        let eps = eps_delta(d, &delta, 1e-9).expect("feasible for these d");
        let lb = closed_form_bounds(&delta, 1, d).unwrap().eps_lb;
        out.push(Check::with_sides(
            "-",
            format!("eps_delta({d}) >= closed form"),
            eps.to_f64().unwrap_or(0.0) >= lb,
            eps.to_f64().unwrap_or(0.0),
            lb,
        ));
        out.push(Check::plain(
            "-",
            format!("explicit epsilon constant compatible (d = {d})"),
            explicit_constants_compatible(d),
        ));
        // Threshold behavior: no true-after-false on an increasing grid.
        let fe = fe_sequence(&delta, d - 2);
        let mut seen_false = false;
        let mut monotone = true;
        for i in 1..=50 {
            let e = 10f64.powf(-80.0 + 1.55 * i as f64);
            let ok = is_compatible(&Rat::from_float(e).unwrap(), &delta, d - 2, &fe, d);
            if ok && seen_false {
                monotone = false;
            }
            if !ok {
                seen_false = true;
            }
        }
        out.push(Check::plain(
            "-",
            format!("compatibility monotone on grid (d = {d})"),
            monotone,
        ));
    }
    out
}

/// Dichotomy and expansion sweeps: no theorem violations across the
/// catalog, plus the explicit constants.
pub fn verify_dichotomy() -> Vec<Check> {
    let mut out = Vec::new();
    let eta3 = dichotomy_eta(3);
    out.push(Check::with_sides(
        "-",
        "eta(3) ~ 0.01461",
        (eta3 - 0.01461).abs() < 1e-4,
        eta3,
        "0.01461",
    ));
    for e in catalog() {
        match spectral_gap_dichotomy(&e.array, None) {
            Ok(verdict) => out.push(Check::plain(
                e.id,
                format!("dichotomy [{:?}]", verdict.branch),
                true,
            )),
            Err(err) => out.push(Check::plain(e.id, format!("dichotomy [{err}]"), false)),
        }
        match expansion_check(&e.array) {
            Ok(rep) => out.push(Check::with_sides(
                e.id,
                format!("expansion (premise_met = {})", rep.premise_met),
                true,
                rep.xi_over_k,
                1.0 - rep.eta,
            )),
            Err(err) => out.push(Check::plain(e.id, format!("expansion [{err}]"), false)),
        }
        // Vacuous-premise locality check at the last index.
        match eigenvalue_locality_check(&e.array, e.array.diameter(), 1.0) {
            Ok(rep) => out.push(Check::with_sides(
                e.id,
                "eigenvalue locality (eps = 1)",
                rep.deviation_ok,
                rep.deviation,
                rep.deviation_bound,
            )),
            Err(err) => out.push(Check::plain(e.id, format!("eigenvalue locality [{err}]"), false)),
        }
    }
    out
}

fn spectra_agree(a: &crate::spectrum::Spectrum, b: &crate::spectrum::Spectrum) -> bool {
    a.eigenvalues.len() == b.eigenvalues.len()
        && a.eigenvalues
            .iter()
            .zip(&b.eigenvalues)
            .all(|(x, y)| (x.value - y.value).abs() <= 1e-6 && x.multiplicity == y.multiplicity)
}

fn motion_checks(e: &CatalogEntry, g: &ConcreteGraph, out: &mut Vec<Check>) {
    let table = derive_parameters(&e.array).expect("catalog arrays are feasible");
    let spec = eigen_spectrum(&e.array).expect("catalog arrays are feasible");
    let aut = automorphism::automorphisms(g).expect("catalog graphs fit the caps");
    let motion = aut.motion as f64;

    let dn = distinguishing_numbers(&table);
    let exact = automorphism::distinguishing_exact(g);
    out.push(Check::with_sides(
        e.id,
        "distinguishing numbers match exhaustive counts",
        exact.per_distance.as_deref().map(|p| {
            p.iter().map(|&x| Int::from(x)).collect::<Vec<_>>() == dn.per_distance
        }) == Some(true),
        format!("{:?}", dn.per_distance),
        format!("{:?}", exact.per_distance),
    ));

    let mut bounds: Vec<(String, f64)> = Vec::new();
    bounds.push((
        "distinguishing minimum".into(),
        motion_from_distinguishing(&dn).to_f64().unwrap(),
    ));
    bounds.push(("mixing".into(), spectral_motion_bound(&table, &spec)));
    let det = detect(&e.array);
    if det.is_bipartite {
        bounds.push((
            "bipartite mixing".into(),
            bipartite_motion_bound(&e.array, &spec).expect("bipartite"),
        ));
    }
    if det.is_bipartite && e.array.diameter() == 3 {
        if let ImprimitiveVerdict::MotionBound { bound, case_bound, .. } =
            bip3_analysis(&e.array).expect("shape holds").verdict
        {
            bounds.push(("bipartite diameter-3".into(), bound));
            bounds.push(("bipartite diameter-3 case".into(), case_bound));
        }
    }
    if det.is_antipodal && e.array.diameter() == 3 {
        if let ImprimitiveVerdict::MotionBound { bound, case_bound, .. } =
            antip3_analysis(&e.array).expect("shape holds").verdict
        {
            bounds.push(("antipodal diameter-3".into(), bound));
            bounds.push(("antipodal diameter-3 case".into(), case_bound));
        }
    }
    if det.is_bipartite && det.is_antipodal && e.array.diameter() == 4 {
        let rep = bip_antip4_analysis(&e.array).expect("shape holds");
        bounds.push(("bipartite antipodal diameter-4".into(), rep.bound));
        bounds.push(("bipartite antipodal floor".into(), 0.15 * rep.n as f64));
    }
    if e.primitive {
        out.push(Check::plain(
            e.id,
            "distinguishing transfer D(j) <= d D(i)",
            distinguishing_transfer(&dn.per_distance, e.array.diameter()),
        ));
        // Best available index for the distinguishing fraction bound.
        let d = e.array.diameter();
        if let Some(j) = (1..d).max_by_key(|&j| e.array.b(j).min(e.array.c(j + 1))) {
            let alpha = Rat::new(
                Int::from(e.array.b(j).min(e.array.c(j + 1))),
                Int::from(e.array.degree()),
            );
            if let Ok(bound) = primitive_distinguish_bound(&table, &alpha, j) {
                bounds.push((format!("distinguishing fraction (j = {j})"), bound.to_f64().unwrap()));
            }
        }
        if d >= 3 {
            match classify_primitive(&e.array) {
                Ok(rep) => {
                    if let Verdict::MotionBound { bound, .. } = rep.verdict {
                        bounds.push(("classifier".into(), bound));
                    }
                }
                Err(err) => out.push(Check::plain(e.id, format!("classifier [{err}]"), false)),
            }
        }
    }
    for (name, bound) in bounds {
        out.push(Check::with_sides(
            e.id,
            format!("motion bound sound: {name}"),
            bound <= motion + 1e-9,
            bound,
            motion,
        ));
    }
}

/// Oracle cross-validation: arrays, tensors, spectra, motion soundness and
/// reduction agreement on every catalog entry with a builder.
pub fn verify_oracle() -> Vec<Check> {
    let mut out = Vec::new();
    for e in catalog() {
        out.push(Check::plain(
            e.id,
            "feasibility report empty",
            feasibility_report(&e.array).is_empty(),
        ));
        let table = derive_parameters(&e.array).expect("catalog arrays are feasible");
        for entry in structural_inequalities(&table) {
            out.push(Check::plain(
                e.id,
                format!("structural: {}", entry.name),
                entry.holds != Some(false),
            ));
        }
        let Some(build) = e.builder else { continue };
        let g = build();

        let extracted = check_distance_regular(&g);
        out.push(Check::plain(
            e.id,
            "extracted array equals catalog array",
            extracted.ok().and_then(|s| s.as_array().cloned()) == Some(e.array.clone()),
        ));

        let emp = empirical_p(&g).expect("catalog graphs are distance-regular");
        let d = e.array.diameter();
        let tensor_ok = (0..=d).all(|s| {
            (0..=d).all(|i| (0..=d).all(|j| &emp.get_int(s, i, j) == table.p().get(s, i, j)))
        });
        out.push(Check::plain(e.id, "intersection numbers match counts", tensor_ok));

        let alg = eigen_spectrum(&e.array).expect("catalog arrays are feasible");
        let num = adjacency_spectrum(&g).expect("catalog graphs are regular");
        out.push(Check::plain(e.id, "tridiagonal spectrum matches adjacency spectrum", spectra_agree(&alg, &num)));

        let clique = max_clique(&g) as f64;
        let delsarte = delsarte_clique_bound(&alg, e.array.degree()).expect("theta_min < 0");
        out.push(Check::with_sides(
            e.id,
            "clique bound dominates exhaustive clique number",
            delsarte + 1e-9 >= clique,
            delsarte,
            clique,
        ));

        motion_checks(&e, &g, &mut out);

        // Reduction agreement between array formulas and concrete quotients.
        let p = profile(&e.array).expect("catalog reductions are integral");
        if p.is_bipartite {
            let formula = halved_array(&e.array).expect("bipartite");
            let concrete = oracle::halved_graph(&g).expect("bipartite");
            let concrete_shape = check_distance_regular(&concrete).expect("halved graph is distance-regular");
            let agree = match (&formula, &concrete_shape) {
                (ReducedArray::Complete { degree }, oracle::DrgShape::Complete { n }) => {
                    *degree as usize + 1 == *n
                }
                (ReducedArray::Drg(a), oracle::DrgShape::Array(b)) => a == b,
                _ => false,
            };
            out.push(Check::plain(e.id, "halved array matches halved graph", agree));
        }
        if p.is_antipodal && e.array.diameter() == 2 {
            // Folding a diameter-2 antipodal graph gives a complete graph on
            // n/r vertices; compare against the concrete quotient.
            let concrete = oracle::folded_graph(&g).expect("antipodal");
            let r = p.cover_index.expect("integral on catalog arrays") as usize;
            out.push(Check::with_sides(
                e.id,
                "diameter-2 fold is complete on n/r vertices",
                concrete.n() * r == g.n()
                    && matches!(
                        check_distance_regular(&concrete),
                        Ok(oracle::DrgShape::Complete { .. })
                    ),
                concrete.n(),
                g.n() / r,
            ));
        }
        if p.is_antipodal && e.array.diameter() >= 3 {
            let (formula, r) = folded_array(&e.array).expect("antipodal");
            let concrete = oracle::folded_graph(&g).expect("antipodal");
            let concrete_shape = check_distance_regular(&concrete).expect("folded graph is distance-regular");
            let agree = match (&formula, &concrete_shape) {
                (ReducedArray::Complete { degree }, oracle::DrgShape::Complete { n }) => {
                    *degree as usize + 1 == *n
                }
                (ReducedArray::Drg(a), oracle::DrgShape::Array(b)) => a == b,
                _ => false,
            };
            out.push(Check::plain(e.id, "folded array matches folded graph", agree));
            out.push(Check::with_sides(
                e.id,
                "cover index",
                r >= 2 && g.n() == concrete.n() * r as usize,
                r,
                g.n() / concrete.n(),
            ));
        }
    }
    out
}

/// Runs every suite.
pub fn verify_all() -> Vec<Check> {
    let mut out = verify_tradeoff();
    out.extend(verify_sequences());
    out.extend(verify_dichotomy());
    out.extend(verify_oracle());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tradeoff_suite_passes() {
        let checks = verify_tradeoff();
        assert!(!checks.is_empty());
        for c in &checks {
            assert!(c.holds, "{} / {} failed: {:?} vs {:?}", c.array_id, c.check, c.lhs, c.rhs);
        }
    }

    #[test]
    fn sequences_suite_passes() {
        for c in verify_sequences() {
            assert!(c.holds, "{} failed: {:?} vs {:?}", c.check, c.lhs, c.rhs);
        }
    }

    #[test]
    fn dichotomy_suite_passes() {
        for c in verify_dichotomy() {
            assert!(c.holds, "{} / {} failed", c.array_id, c.check);
        }
    }
}
