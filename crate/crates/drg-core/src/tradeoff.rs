//! The growth-induced tradeoff inequality and the expansion machinery built
//! on it: forward/backward expansion sequences, compatible epsilon, the
//! three-case analysis, the spectral-gap dichotomy and the dominant-distance
//! expansion check.
//!
//! Sequence arithmetic is exact rational. The only irrational quantity,
//! `eps^{1/(d+1)}`, is evaluated in floats with one-sided rounding so that a
//! `true` compatibility answer is always conservative.

use crate::params::{distance_degrees, IntersectionArray};
use crate::spectrum::{eigen_spectrum, SpectrumError};
use crate::{DomainError, Int, Rat};
use num::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

/// Relative margin for the float side of threshold comparisons.
const FLOAT_MARGIN: f64 = 1e-12;

fn rat_u(x: u64) -> Rat {
    Rat::from_integer(Int::from(x))
}

fn rat_frac(n: u64, d: u64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// The delta used for every explicit constant: 1/9.
pub fn default_delta() -> Rat {
    rat_frac(1, 9)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TradeoffError {
    #[error("premise violated: {0}")]
    PremiseViolated(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Exact evaluation of the tradeoff inequality at `(j, s)`.
#[derive(Debug, Clone)]
pub struct TradeoffOutcome {
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
    /// Growth ratio `C = b_j / c_{j+1}`.
    pub growth_ratio: Rat,
    pub diagnostics: Option<TradeoffDiagnostics>,
}

/// Internal counting bounds from the proof, reported for inspection: lower
/// bounds on the common-neighbor counts (in the auxiliary radius-`j+1`
/// graph) at distances `s` and `j+2-s`, and the upper bound at `j+2`.
#[derive(Debug, Clone)]
pub struct TradeoffDiagnostics {
    pub common_lower_at_s: Rat,
    pub common_lower_at_js: Rat,
    pub common_upper_at_j2: Rat,
}

/// Checks `b_{j+1} (sum_{t<=s} 1/b_{t-1} + sum_{t<=j+2-s} 1/b_{t-1})
/// + c_{j+2} sum_{t<=j+1} 1/b_{t-1} >= 1 - 4/(C-1)` in exact rationals.
///
/// Requires `0 <= j <= d-2`, `1 <= s <= j+1` and `b_j > c_{j+1}`.
pub fn tradeoff_check(
    arr: &IntersectionArray,
    j: usize,
    s: usize,
) -> Result<TradeoffOutcome, TradeoffError> {
    let d = arr.diameter();
    if j + 2 > d {
        return Err(DomainError(format!("need j <= d-2, got j = {j}, d = {d}")).into());
    }
    if s < 1 || s > j + 1 {
        return Err(DomainError(format!("need 1 <= s <= j+1, got s = {s}, j = {j}")).into());
    }
    if arr.b(j) <= arr.c(j + 1) {
        return Err(TradeoffError::PremiseViolated(format!(
            "need b_{j} > c_{}, got b_{j} = {}, c_{} = {}",
            j + 1,
            arr.b(j),
            j + 1,
            arr.c(j + 1)
        )));
    }
    let recip_sum = |upto: usize| -> Rat {
        (1..=upto).map(|t| rat_u(arr.b(t - 1)).recip()).sum()
    };
    let lhs = rat_u(arr.b(j + 1)) * (recip_sum(s) + recip_sum(j + 2 - s))
        + rat_u(arr.c(j + 2)) * recip_sum(j + 1);
    let growth_ratio = rat_frac(arr.b(j), arr.c(j + 1));
    let rhs = Rat::one() - rat_u(4) / (growth_ratio.clone() - Rat::one());
    let holds = lhs >= rhs;

    let diagnostics = distance_degrees(arr).ok().map(|(kdist, _)| {
        let kj1 = Rat::from_integer(kdist[j + 1].clone());
        let lower = |i: usize| -> Rat {
            let sum: Rat = (1..=i).map(|t| rat_frac(arr.b(j + 1), arr.b(t - 1))).sum();
            let boundary = if i == j + 1 { Rat::one() } else { Rat::zero() };
            kj1.clone() * (Rat::one() - sum) - boundary
        };
        let upper = kj1.clone()
            * (rat_u(2) / (growth_ratio.clone() - Rat::one())
                + (1..=j + 1).map(|t| rat_frac(arr.c(j + 2), arr.b(t - 1))).sum::<Rat>());
        TradeoffDiagnostics {
            common_lower_at_s: lower(s),
            common_lower_at_js: lower(j + 2 - s),
            common_upper_at_j2: upper,
        }
    });

    Ok(TradeoffOutcome {
        lhs,
        rhs,
        holds,
        growth_ratio,
        diagnostics,
    })
}

/// Forward-expansion sequence `alpha_0..alpha_len`: `alpha_0 = 1` and
/// `alpha_{j+1} = (1-delta) (sum_{t<=ceil((j+2)/2)} 1/alpha_{t-1}
///                + sum_{t<=floor((j+2)/2)} 1/alpha_{t-1})^{-1}`.
pub fn fe_sequence(delta: &Rat, len: usize) -> Vec<Rat> {
    assert!(
        delta.is_positive() && delta < &Rat::one(),
        "fe_sequence requires 0 < delta < 1"
    );
    let mut alpha = Vec::with_capacity(len + 1);
    alpha.push(Rat::one());
    // Running prefix sums S_m = sum_{t=1}^m 1/alpha_{t-1}.
    let mut prefix: Vec<Rat> = vec![Rat::zero(), Rat::one()];
    for j in 0.. {
        if alpha.len() > len {
            break;
        }
        let hi = (j + 2usize).div_ceil(2);
        let lo = (j + 2) / 2;
        let denom = prefix[hi].clone() + prefix[lo].clone();
        let next = (Rat::one() - delta) / denom;
        prefix.push(prefix.last().unwrap().clone() + next.clone().recip());
        alpha.push(next);
    }
    alpha
}

/// Backward-expansion sequence for a given prefix `alpha_0..alpha_s`: entry
/// `t` of the result is `beta_{t+2} = (1-delta) (sum_{i<=t} 1/alpha_i)^{-1}`.
pub fn be_sequence(delta: &Rat, alpha: &[Rat]) -> Vec<Rat> {
    assert!(!alpha.is_empty() && alpha[0].is_one(), "alpha_0 must be 1");
    let mut out = Vec::with_capacity(alpha.len());
    let mut sum = Rat::zero();
    for a in alpha {
        sum += a.clone().recip();
        out.push((Rat::one() - delta) / sum.clone());
    }
    out
}

/// `beta_{j+2}` from the prefix `alpha_0..alpha_j`.
fn beta_at(delta: &Rat, alpha: &[Rat], j: usize) -> Rat {
    let sum: Rat = alpha[..=j].iter().map(|a| a.clone().recip()).sum();
    (Rat::one() - delta) / sum
}

/// Whether `eps` is compatible at level `j`: both threshold clauses hold,
/// the first in exact rationals, the second with the irrational power
/// evaluated in floats rounded against acceptance.
pub fn is_compatible(eps: &Rat, delta: &Rat, j: usize, alpha: &[Rat], d: usize) -> bool {
    assert!(j + 2 <= d, "compatibility needs j <= d-2");
    assert!(alpha.len() > j, "need alpha_0..alpha_j");
    if !eps.is_positive() {
        return false;
    }
    let aj = &alpha[j];
    if eps >= aj {
        return false;
    }
    // (alpha_j - 5 eps)/(alpha_j - eps) - 2 eps sum_{t=1}^{j+1} 1/alpha_{t-1} > 1 - delta
    let sum: Rat = alpha[..=j].iter().map(|a| a.clone().recip()).sum();
    let clause1 = (aj - eps * rat_u(5)) / (aj - eps) - eps * rat_u(2) * sum;
    if clause1 <= Rat::one() - delta {
        return false;
    }
    // 2 (d+2)^2 eps^{1/(d+1)} <= beta_{j+2} delta
    let beta = beta_at(delta, alpha, j);
    let eps_f = eps.to_f64().unwrap_or(0.0);
    let lhs = 2.0 * ((d + 2) * (d + 2)) as f64 * eps_f.powf(1.0 / (d as f64 + 1.0));
    let rhs = (beta * delta).to_f64().unwrap_or(0.0);
    lhs * (1.0 + FLOAT_MARGIN) <= rhs * (1.0 - FLOAT_MARGIN)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EpsError {
    #[error("no feasible epsilon found down to the probe floor")]
    NoFeasibleEps,
}

/// Approximates `sup {eps | eps is (delta, d)-compatible}` by bisection.
/// The returned value is compatible while `value * (1 + tol)` is not.
pub fn eps_delta(d: usize, delta: &Rat, tol: f64) -> Result<Rat, EpsError> {
    assert!(d >= 2, "eps_delta requires d >= 2");
    let j = d - 2;
    let alpha = fe_sequence(delta, j);
    let compatible = |eps: &Rat| is_compatible(eps, delta, j, &alpha, d);

    // The feasible set is an interval (0, eps_max]: probe downward for a
    // feasible point, keeping the previous (infeasible) probe as the upper
    // bracket.
    let mut hi = Rat::one();
    if compatible(&hi) {
        return Ok(hi);
    }
    let mut lo = None;
    let mut probe = rat_frac(1, 100);
    for _ in 0..170 {
        if compatible(&probe) {
            lo = Some(probe);
            break;
        }
        hi = probe.clone();
        probe *= rat_frac(1, 100);
    }
    let mut lo = lo.ok_or(EpsError::NoFeasibleEps)?;

    let tol_rat = Rat::from_float(tol).expect("tol is finite");
    for _ in 0..200 {
        if (hi.clone() - lo.clone()) <= lo.clone() * tol_rat.clone() {
            break;
        }
        let mid = (lo.clone() + hi.clone()) / rat_u(2);
        if compatible(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    debug_assert!(compatible(&lo));
    debug_assert!(!compatible(&(lo.clone() * (Rat::one() + tol_rat))));
    Ok(lo)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CaseError {
    #[error("premise violated: {0}")]
    PremiseViolated(String),
    #[error("consequent failed verification (would falsify the underlying result): {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Which of the three mutually covering cases holds at level `j`.
#[derive(Debug, Clone, PartialEq)]
pub enum ProofCase {
    /// `b_{j+1} >= eps k` and `c_{j+2} >= eps k`.
    BothLarge,
    /// Zero-weight spectral radius at most `k (1 - (1-delta) beta_{j+2})`.
    SpectralGapCase { beta: Rat, xi: f64, bound: f64 },
    /// `b_{j+1} >= alpha_{j+1} k` and `c_{j+2} <= eps k`.
    ForwardCase { alpha_next: Rat },
}

impl ProofCase {
    pub fn label(&self) -> &'static str {
        match self {
            ProofCase::BothLarge => "both-large",
            ProofCase::SpectralGapCase { .. } => "spectral-gap",
            ProofCase::ForwardCase { .. } => "forward",
        }
    }
}

/// Plays the three-case analysis at level `j`, verifying the consequent of
/// whichever case fires.
///
/// Premises: `c_{j+1} <= eps k`, `b_i >= alpha_i k` for `0 <= i <= j`, and
/// `eps` compatible at level `j`.
pub fn case_analysis(
    arr: &IntersectionArray,
    delta: &Rat,
    j: usize,
    alpha: &[Rat],
    eps: &Rat,
) -> Result<ProofCase, CaseError> {
    let d = arr.diameter();
    if j + 2 > d {
        return Err(CaseError::PremiseViolated(format!("need j <= d-2, got j = {j}, d = {d}")));
    }
    let k = rat_u(arr.degree());
    let eps_k = eps * k.clone();
    if rat_u(arr.c(j + 1)) > eps_k {
        return Err(CaseError::PremiseViolated(format!(
            "need c_{} <= eps k, got c_{} = {}",
            j + 1,
            j + 1,
            arr.c(j + 1)
        )));
    }
    for (i, ai) in alpha.iter().enumerate().take(j + 1) {
        if rat_u(arr.b(i)) < ai * k.clone() {
            return Err(CaseError::PremiseViolated(format!(
                "need b_{i} >= alpha_{i} k, got b_{i} = {}",
                arr.b(i)
            )));
        }
    }
    if !is_compatible(eps, delta, j, alpha, d) {
        return Err(CaseError::PremiseViolated(format!(
            "eps is not compatible at level {j}"
        )));
    }

    let b_next = rat_u(arr.b(j + 1));
    let c_next2 = rat_u(arr.c(j + 2));
    if b_next >= eps_k && c_next2 >= eps_k {
        return Ok(ProofCase::BothLarge);
    }
    if c_next2 <= eps_k {
        // One extra step of the forward recurrence.
        let extended = fe_sequence(delta, j + 1);
        let alpha_next = extended[j + 1].clone();
        if b_next < alpha_next.clone() * k {
            return Err(CaseError::TheoremViolation(format!(
                "forward case: b_{} = {} < alpha_{} k",
                j + 1,
                arr.b(j + 1),
                j + 1
            )));
        }
        return Ok(ProofCase::ForwardCase { alpha_next });
    }
    // Remaining case: b_{j+1} < eps k < c_{j+2}; the spectral bound must hold.
    let beta = beta_at(delta, alpha, j);
    let spec = eigen_spectrum(arr)?;
    let kf = arr.degree() as f64;
    let bound = kf * (1.0 - ((Rat::one() - delta) * beta.clone()).to_f64().unwrap());
    if spec.xi > bound + 1e-9 * kf {
        return Err(CaseError::TheoremViolation(format!(
            "spectral case: xi = {} exceeds k(1 - (1-delta) beta) = {bound}",
            spec.xi
        )));
    }
    Ok(ProofCase::SpectralGapCase { beta, xi: spec.xi, bound })
}

/// Explicit epsilon constant: `200^{-(d+1)} d^{-(d+1)(log2 d + 3)}`.
pub fn dichotomy_epsilon(d: usize) -> f64 {
    let df = d as f64;
    let ln = -((d + 1) as f64) * (200f64.ln() + (df.log2() + 3.0) * df.ln());
    ln.exp()
}

/// Explicit spectral-gap constant: `(1/4) d^{-(1 + log2 d)}`.
pub fn dichotomy_eta(d: usize) -> f64 {
    let df = d as f64;
    0.25 * (-(1.0 + df.log2()) * df.ln()).exp()
}

/// Numerically checks that the explicit epsilon constant is compatible for
/// the given diameter at delta = 1/9 (reported, not assumed).
pub fn explicit_constants_compatible(d: usize) -> bool {
    if d < 2 {
        return false;
    }
    let delta = default_delta();
    let alpha = fe_sequence(&delta, d - 2);
    let eps = Rat::from_float(dichotomy_epsilon(d)).expect("epsilon is finite");
    is_compatible(&eps, &delta, d - 2, &alpha, d)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DichotomyError {
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Case(CaseError),
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseTraceEntry {
    pub level: usize,
    pub case: &'static str,
}

/// Outcome of the spectral-gap dichotomy.
#[derive(Debug, Clone, Serialize)]
pub struct DichotomyVerdict {
    pub branch: DichotomyBranch,
    pub eps: f64,
    pub eta: f64,
    /// Which case fired at each level of the walk (spectral-gap branch only).
    pub case_trace: Vec<CaseTraceEntry>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum DichotomyBranch {
    /// Witness index with `b_i >= eps k` and `c_{i+1} >= eps k`, re-verified
    /// against the exact parameters.
    ExpandingIndex { i: usize, b_i: u64, c_next: u64 },
    /// Verified `xi <= k (1 - eta)`.
    SpectralGap { xi: f64, bound: f64 },
}

/// Either some index expands (`b_i >= eps k` and `c_{i+1} >= eps k`) or the
/// graph is a spectral `eta`-expander, with the explicit constants.
///
/// Indices `1..=d-1` are preferred as witnesses since those feed the motion
/// bound; `i = 0` is reported only when no interior index works.
pub fn spectral_gap_dichotomy(
    arr: &IntersectionArray,
    delta: Option<&Rat>,
) -> Result<DichotomyVerdict, DichotomyError> {
    let d = arr.diameter();
    let default = default_delta();
    let delta = delta.unwrap_or(&default);
    let eps_f = dichotomy_epsilon(d);
    let eta = dichotomy_eta(d);
    let eps = Rat::from_float(eps_f).expect("epsilon is finite");
    let k = rat_u(arr.degree());
    let eps_k = eps.clone() * k;

    let expanding = |i: usize| rat_u(arr.b(i)) >= eps_k && rat_u(arr.c(i + 1)) >= eps_k;
    for i in (1..d).chain([0]) {
        if expanding(i) {
            return Ok(DichotomyVerdict {
                branch: DichotomyBranch::ExpandingIndex {
                    i,
                    b_i: arr.b(i),
                    c_next: arr.c(i + 1),
                },
                eps: eps_f,
                eta,
                case_trace: Vec::new(),
            });
        }
    }

    // No expanding index: walk the levels with c_{j+1} <= eps k and record
    // which case fires, then the spectral bound must hold.
    let split = (0..=d)
        .find(|&i| rat_u(arr.c_ext(i + 1)) > eps_k)
        .expect("c_{d+1} = k > eps k");
    let alpha = fe_sequence(delta, d.saturating_sub(1));
    let mut case_trace = Vec::new();
    for j in 0..split.min(d - 1) {
        let case = case_analysis(arr, delta, j, &alpha[..=j], &eps).map_err(DichotomyError::Case)?;
        case_trace.push(CaseTraceEntry {
            level: j,
            case: case.label(),
        });
    }
    let spec = eigen_spectrum(arr)?;
    let kf = arr.degree() as f64;
    let bound = kf * (1.0 - eta);
    if spec.xi > bound + 1e-9 * kf {
        return Err(DichotomyError::TheoremViolation(format!(
            "no expanding index, yet xi = {} > k(1 - eta) = {bound}",
            spec.xi
        )));
    }
    Ok(DichotomyVerdict {
        branch: DichotomyBranch::SpectralGap { xi: spec.xi, bound },
        eps: eps_f,
        eta,
        case_trace,
    })
}

/// Dominant-distance expansion check with the explicit constants.
#[derive(Debug, Clone, Serialize)]
pub struct ExpansionReport {
    /// Distance class of maximal size.
    pub dominant_t: usize,
    pub epsilon: f64,
    pub eta: f64,
    /// Whether `k_t >= (1 - epsilon) n` holds.
    pub premise_met: bool,
    pub xi_over_k: f64,
    /// `xi <= k (1 - eta)`, asserted when the premise is met.
    pub expander: bool,
}

/// If some distance class holds at least a `(1 - epsilon)` fraction of the
/// vertices, the graph must be a spectral `eta`-expander; `epsilon` is
/// derived from the dichotomy constant via `eps / (1 + eps)`.
pub fn expansion_check(arr: &IntersectionArray) -> Result<ExpansionReport, DichotomyError> {
    let d = arr.diameter();
    let eps = Rat::from_float(dichotomy_epsilon(d)).expect("epsilon is finite");
    let epsilon = eps.clone() / (Rat::one() + eps);
    let eta = dichotomy_eta(d);
    let (kdist, n) = distance_degrees(arr)
        .map_err(|e| DichotomyError::Spectrum(SpectrumError::Infeasible(e)))?;
    let dominant_t = (1..=d)
        .max_by(|&x, &y| kdist[x].cmp(&kdist[y]))
        .expect("d >= 2");
    let premise_met = Rat::from_integer(kdist[dominant_t].clone())
        >= (Rat::one() - epsilon.clone()) * Rat::from_integer(n);
    let spec = eigen_spectrum(arr)?;
    let kf = arr.degree() as f64;
    let expander = spec.xi <= kf * (1.0 - eta) + 1e-9 * kf;
    if premise_met && !expander {
        return Err(DichotomyError::TheoremViolation(format!(
            "dominant distance {dominant_t} but xi/k = {}",
            spec.xi / kf
        )));
    }
    Ok(ExpansionReport {
        dominant_t,
        epsilon: epsilon.to_f64().unwrap(),
        eta,
        premise_met,
        xi_over_k: spec.xi / kf,
        expander,
    })
}

/// Closed-form lower bounds for the sequences, rounded downward.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClosedFormBounds {
    /// Lower bound for `alpha_j`: `(1-delta)^2/2 * j^{-log2 j}`.
    pub alpha_lb: f64,
    /// Lower bound for `beta_{j+2}`: `(1-delta)^3/(2(j+1)) * j^{-log2 j}`.
    pub beta_lb: f64,
    /// Lower bound for the compatible-epsilon supremum:
    /// `(delta/22)^{d+1} d^{-(d+1)(3 + log2 d)}`.
    pub eps_lb: f64,
}

pub fn closed_form_bounds(delta: &Rat, j: usize, d: usize) -> Result<ClosedFormBounds, DomainError> {
    if !delta.is_positive() || delta > &rat_frac(1, 9) {
        return Err(DomainError("closed-form bounds need 0 < delta <= 1/9".into()));
    }
    if j < 1 || d < 3 {
        return Err(DomainError(format!("closed-form bounds need j >= 1, d >= 3, got j = {j}, d = {d}")));
    }
    let down = 1.0 - FLOAT_MARGIN;
    let df = delta.to_f64().unwrap();
    let jf = j as f64;
    let poly = (-jf.log2() * jf.ln()).exp();
    let alpha_lb = (1.0 - df) * (1.0 - df) / 2.0 * poly * down;
    let beta_lb = (1.0 - df).powi(3) / (2.0 * (jf + 1.0)) * poly * down;
    let dd = d as f64;
    let eps_lb = ((df / 22.0).ln() * (d + 1) as f64
        - (d + 1) as f64 * (3.0 + dd.log2()) * dd.ln())
    .exp()
        * down;
    Ok(ClosedFormBounds { alpha_lb, beta_lb, eps_lb })
}
