//! Lower bounds on the motion (minimal degree of the automorphism group) of
//! a primitive distance-regular graph, and the classifier that either emits
//! such a bound or certifies a geometric structure with bounded smallest
//! eigenvalue.
//!
//! Primitivity is an attested input: deciding it from the array alone is out
//! of scope, and the graph oracle decides it exactly for concrete graphs.

use crate::params::{derive_parameters, IntersectionArray, ParamError, ParameterTable};
use crate::spectrum::{eigen_spectrum, Spectrum, SpectrumError};
use crate::tradeoff::{dichotomy_epsilon, dichotomy_eta, spectral_gap_dichotomy, DichotomyBranch, DichotomyError};
use crate::{DomainError, Int, Rat};
use num::{BigUint, One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

fn rat_u(x: u64) -> Rat {
    Rat::from_integer(Int::from(x))
}

/// Distinguishing numbers per distance class: `D(i) = n - sum_t p^i_{t,t}`;
/// a vertex fails to distinguish a pair at distance `i` exactly when it is
/// equidistant from both endpoints.
#[derive(Debug, Clone)]
pub struct DistinguishingNumbers {
    /// `D(1)..D(d)`.
    pub per_distance: Vec<Int>,
    pub dmin: Int,
}

pub fn distinguishing_numbers(table: &ParameterTable) -> DistinguishingNumbers {
    let d = table.diameter();
    let per_distance: Vec<Int> = (1..=d)
        .map(|i| {
            let equidistant: Int = (1..=d).map(|t| table.p().get(i, t, t).clone()).sum();
            table.n().clone() - equidistant
        })
        .collect();
    let dmin = per_distance.iter().min().expect("d >= 2").clone();
    DistinguishingNumbers { per_distance, dmin }
}

/// Every pair distinguished by at least `m` vertices forces every
/// non-identity automorphism to move at least `m` points.
pub fn motion_from_distinguishing(dn: &DistinguishingNumbers) -> Int {
    dn.dmin.clone()
}

/// For primitive graphs `D(j) <= d * D(i)` for all distances; caller attests
/// primitivity.
pub fn distinguishing_transfer(dvals: &[Int], d: usize) -> bool {
    let df = Int::from(d);
    dvals
        .iter()
        .all(|dj| dvals.iter().all(|di| dj <= &(df.clone() * di)))
}

/// Mixing bound `n (k - xi - q) / k`; may be nonpositive (uninformative).
pub fn spectral_motion_bound(table: &ParameterTable, spec: &Spectrum) -> f64 {
    let k = table.degree() as f64;
    let n = table.n().to_f64().expect("n fits in f64");
    n * (k - spec.xi - table.q() as f64) / k
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MotionError {
    #[error("premise violated: {0}")]
    PremiseViolated(String),
    #[error("bound exceeds the exact distinguishing minimum; this would falsify the bound: {0}")]
    TheoremViolation(String),
}

/// Distinguishing bound `alpha n / d` under `b_j >= alpha k` and
/// `c_{j+1} >= alpha k` for some `1 <= j <= d-1`; cross-checked against the
/// exact `D_min` from the tensor.
pub fn primitive_distinguish_bound(
    table: &ParameterTable,
    alpha: &Rat,
    j: usize,
) -> Result<Rat, MotionError> {
    let d = table.diameter();
    if j < 1 || j > d - 1 {
        return Err(MotionError::PremiseViolated(format!(
            "need 1 <= j <= d-1, got j = {j}"
        )));
    }
    let arr = table.array();
    let alpha_k = alpha * rat_u(arr.degree());
    if rat_u(arr.b(j)) < alpha_k || rat_u(arr.c(j + 1)) < alpha_k {
        return Err(MotionError::PremiseViolated(format!(
            "need b_{j} >= alpha k and c_{} >= alpha k; got b_{j} = {}, c_{} = {}",
            j + 1,
            arr.b(j),
            j + 1,
            arr.c(j + 1)
        )));
    }
    let bound = alpha * Rat::from_integer(table.n().clone()) / rat_u(d as u64);
    let dmin = Rat::from_integer(distinguishing_numbers(table).dmin);
    if bound > dmin {
        return Err(MotionError::TheoremViolation(format!(
            "alpha n / d = {bound} > D_min = {dmin}"
        )));
    }
    Ok(bound)
}

/// One evaluated structural inequality. `holds = None` means the premise of
/// the inequality does not apply to this array.
#[derive(Debug, Clone, Serialize)]
pub struct LedgerEntry {
    pub name: &'static str,
    pub holds: Option<bool>,
    pub detail: String,
}

/// Evaluates the structural lambda/mu inequalities. A `Some(false)` on a
/// genuine distance-regular array would falsify the corresponding lemma.
pub fn structural_inequalities(table: &ParameterTable) -> Vec<LedgerEntry> {
    let mut out = Vec::new();
    let d = table.diameter();
    let k = table.degree();
    let (lambda, mu) = (table.lambda(), table.mu());

    let lhs = k as i128 - mu as i128;
    let rhs = 2 * (k as i128 - lambda as i128);
    out.push(LedgerEntry {
        name: "neighborhood-overlap (k - mu <= 2(k - lambda))",
        holds: Some(lhs <= rhs),
        detail: format!("{lhs} <= {rhs}"),
    });

    let a2 = table.a(2);
    out.push(LedgerEntry {
        name: "reverse-overlap (a_2 != 0 => k - lambda <= 2(k - mu))",
        holds: if a2 != 0 {
            Some(k as i128 - lambda as i128 <= 2 * (k as i128 - mu as i128))
        } else {
            None
        },
        detail: format!("a_2 = {a2}"),
    });

    // Sphere-growth bounds with r = (n-1)/k.
    let n = table.n().to_f64().expect("n fits in f64");
    let kf = k as f64;
    let r = (n - 1.0) / kf;
    let root = (r / d as f64).powf(1.0 / (d as f64 - 1.0));
    let tol = 1e-9 * kf;
    let min_lm = lambda.min(mu) as f64;
    let growth_min = if d >= 2 {
        ((r - 1.0) / (d as f64 - 1.0)).min(root)
    } else {
        root
    };
    out.push(LedgerEntry {
        name: "sphere-growth min(lambda,mu) bound",
        holds: Some(min_lm < kf / (1.0 + growth_min) + tol),
        detail: format!("min = {min_lm}, bound = {}", kf / (1.0 + growth_min)),
    });
    let growth_max = ((d as f64 - 1.0) / (r - 1.0)).max((d as f64 / r).powf(1.0 / (d as f64 - 1.0)));
    out.push(LedgerEntry {
        name: "sphere-growth mu bound",
        holds: Some((mu as f64) < kf * growth_max + tol),
        detail: format!("mu = {mu}, bound = {}", kf * growth_max),
    });

    out.push(LedgerEntry {
        name: "diameter-3 min(lambda,mu) <= (d-1)k/d",
        holds: if d >= 3 {
            Some(Int::from(lambda.min(mu)) * Int::from(d) <= Int::from(d as u64 - 1) * Int::from(k))
        } else {
            None
        },
        detail: format!("min = {}, (d-1)k/d = {}", lambda.min(mu), (d as u64 - 1) * k / d as u64),
    });

    out.push(LedgerEntry {
        name: "triangle-free propagation (d >= 3, a_2 = 0 => lambda = 0)",
        holds: if d >= 3 && a2 == 0 { Some(lambda == 0) } else { None },
        detail: format!("a_2 = {a2}, lambda = {lambda}"),
    });

    out
}

/// Clique-geometry criterion on scalar inputs.
#[derive(Debug, Clone, Serialize)]
pub struct MetschOutcome {
    pub applies: bool,
    /// `2 lambda1 - lambda2 > (2m-1)(mu-1) - 1`.
    pub gap_condition: bool,
    /// `k < (m+1)(lambda1+1) - m(m+1)(mu-1)/2` (strict).
    pub degree_condition: bool,
    /// A line is a maximal clique of at least this size.
    pub line_size_threshold: i64,
    pub max_lines_per_vertex: u64,
}

/// Evaluates the clique-geometry conditions: every pair of adjacent vertices
/// has between `lambda1` and `lambda2` common neighbors, non-adjacent pairs
/// at most `mu`; under the two arithmetic conditions every vertex lies on at
/// most `m` lines and every edge on exactly one.
pub fn metsch_lines(lambda1: u64, lambda2: u64, mu: u64, m: u64, k: u64) -> MetschOutcome {
    let (l1, l2, mu, m, k) = (lambda1 as i128, lambda2 as i128, mu as i128, m as i128, k as i128);
    let gap_condition = 2 * l1 - l2 > (2 * m - 1) * (mu - 1) - 1;
    // k < (m+1)(lambda1+1) - m(m+1)(mu-1)/2, kept exact by doubling.
    let degree_condition = 2 * k < 2 * (m + 1) * (l1 + 1) - m * (m + 1) * (mu - 1);
    MetschOutcome {
        applies: l1 <= l2 && gap_condition && degree_condition,
        gap_condition,
        degree_condition,
        line_size_threshold: (l1 + 2 - (m - 1) * (mu - 1)) as i64,
        max_lines_per_vertex: m as u64,
    }
}

/// If `lambda >= m(m+1)mu/2` for the unique `m` with
/// `(m-1)(lambda+1) < k <= m(lambda+1)`, the graph is geometric with
/// smallest eigenvalue `-m`.
pub fn geometricity_check(table: &ParameterTable) -> Option<u64> {
    let k = table.degree();
    let lambda = table.lambda();
    let mu = table.mu();
    let m = k.div_ceil(lambda + 1);
    debug_assert!((m - 1) * (lambda + 1) < k && k <= m * (lambda + 1));
    if 2 * (lambda as u128) >= (m as u128) * (m as u128 + 1) * (mu as u128) {
        Some(m)
    } else {
        None
    }
}

/// Any clique has at most `1 - k/theta_min` vertices.
pub fn delsarte_clique_bound(spec: &Spectrum, k: u64) -> Result<f64, DomainError> {
    let theta_min = spec.theta_min();
    if theta_min >= 0.0 {
        return Err(DomainError(format!(
            "clique bound needs theta_min < 0, got {theta_min}"
        )));
    }
    Ok(1.0 - k as f64 / theta_min)
}

// ---------------------------------------------------------------------------
// Stable floor of 5 d^(1 + log2 d)
// ---------------------------------------------------------------------------

/// Dyadic bit-extraction of `log2(x)` for integer `x >= 2`, returning lower
/// and upper dyadic bounds with `frac_bits` fractional bits. Each squaring
/// is rounded against the bound it feeds, so the bracket is rigorous.
fn log2_bracket(x: u64, prec: u64, frac_bits: u64) -> (Rat, Rat) {
    let int_part = 63 - x.leading_zeros() as u64;
    let one = BigUint::one() << prec;
    let two = &one << 1u32;
    let run = |round_up: bool| -> Rat {
        let mut m = (BigUint::from(x) << prec) >> int_part; // in [1, 2)
        let mut frac = BigUint::zero();
        for _ in 0..frac_bits {
            frac <<= 1u32;
            let sq = &m * &m;
            m = if round_up {
                (&sq + (&one - BigUint::one())) >> prec
            } else {
                sq >> prec
            };
            if m >= two {
                frac += BigUint::one();
                m = if round_up { (&m + BigUint::one()) >> 1u32 } else { m >> 1u32 };
            }
        }
        let num = Int::from((BigUint::from(int_part) << frac_bits) + frac);
        Rat::new(num, Int::one() << usize::try_from(frac_bits).unwrap())
    };
    (run(false), run(true))
}

/// `2^f` for rational `f >= 0`, bracketed by per-step rounded square roots.
fn pow2_bracket(f: &Rat, prec: u64, bits: u64) -> (Rat, Rat) {
    let int_part = f.floor().to_integer().to_biguint().expect("f >= 0");
    let frac = f - Rat::from_integer(Int::from(int_part.clone()));
    let scale = BigUint::one() << prec;
    // Roots of 2: r_i approximates 2^(2^-i) at scale 2^prec.
    let run = |round_up: bool| -> Rat {
        let mut acc = &scale << u32::try_from(int_part.to_u64().expect("small exponent")).unwrap();
        let mut r = &scale << 1u32; // 2^(2^-0) = 2
        let mut rem = frac.clone();
        let half = Rat::new(Int::one(), Int::from(2));
        let mut weight = Rat::one();
        for _ in 0..bits {
            let s = &r * &scale;
            r = s.sqrt(); // floor sqrt
            if round_up {
                r += BigUint::one();
            }
            weight *= half.clone();
            if rem >= weight {
                rem -= weight.clone();
                let prod = &acc * &r;
                acc = if round_up {
                    (&prod + (&scale - BigUint::one())) >> prec
                } else {
                    prod >> prec
                };
            }
        }
        Rat::new(Int::from(acc), Int::one() << usize::try_from(prec).unwrap())
    };
    let lo = run(false);
    // The truncated binary expansion of the fractional part undershoots by
    // at most 2^-bits; compensate on the upper bound.
    let slack = Rat::new(Int::one() << 4, Int::one() << usize::try_from(bits).unwrap());
    let hi = run(true) * (Rat::one() + slack);
    (lo, hi)
}

/// `floor(5 d^(1 + log2 d))`, resolved exactly.
///
/// Near-integer values cannot be trusted to double precision, so the value
/// is bracketed with exact dyadic arithmetic and the precision is widened
/// until both ends of the bracket share a floor. Powers of two take the
/// fully integral path.
pub fn m_d(d: usize) -> u64 {
    assert!(d >= 2, "m_d needs d >= 2");
    let d = d as u64;
    if d.is_power_of_two() {
        let s = d.trailing_zeros() as u64;
        let value = BigUint::from(5u64) << (s * (s + 1));
        return value.to_u64().expect("m_d fits in u64 for supported d");
    }
    let mut prec = 192u64;
    let mut bits = 96u64;
    for _ in 0..6 {
        let (t_lo, t_hi) = log2_bracket(d, prec, bits);
        // exponent u = t + t^2
        let u_lo = t_lo.clone() + t_lo.clone() * t_lo;
        let u_hi = t_hi.clone() + t_hi.clone() * t_hi;
        let (p_lo, _) = pow2_bracket(&u_lo, prec, bits);
        let (_, p_hi) = pow2_bracket(&u_hi, prec, bits);
        let y_lo = (p_lo * rat_u(5)).floor().to_integer();
        let y_hi = (p_hi * rat_u(5)).floor().to_integer();
        if y_lo == y_hi {
            return y_lo.to_u64().expect("m_d fits in u64 for supported d");
        }
        prec *= 2;
        bits += 64;
    }
    panic!("m_d({d}) did not stabilize; value is too close to an integer");
}

// ---------------------------------------------------------------------------
// Classifier
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("array is infeasible: {0}")]
    Infeasible(ParamError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Dichotomy(#[from] DichotomyError),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MotionCase {
    /// Expanding index feeds the distinguishing bound `(eps/d) n`.
    PrimitiveDistinguish,
    /// Large `mu` forces a bounded vertex count relative to `k`.
    MuLarge,
    /// Small `lambda` and `mu` feed the mixing bound.
    Spectral,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    MotionBound {
        /// Fraction of `n` the motion is bounded below by.
        fraction: f64,
        bound: f64,
        case: MotionCase,
    },
    GeometricCandidate {
        /// Certified geometric with smallest eigenvalue `-m`.
        m: u64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifierReport {
    pub verdict: Verdict,
    /// Minimum of the three motion-case constants.
    pub gamma_d: f64,
    pub m_d: u64,
    pub eps: f64,
    pub eta: f64,
    pub eta_at_most_one_seventh: bool,
    /// Outcome of the clique-geometry criterion, regardless of verdict.
    pub geometric_m: Option<u64>,
    pub theta_min: f64,
}

/// Classifies a primitive array of diameter at least 3: either a motion
/// lower bound `gamma n` holds, or the graph is geometric with smallest
/// eigenvalue at least `-m_d`. Primitivity is attested by the caller.
///
/// The geometricity certificate is tested first: when it applies with
/// `m <= m_d` the classifier reports the candidate, otherwise it walks the
/// motion cases (expanding index, large mu, small lambda and mu). The case
/// premises guarantee the walk is exhaustive.
pub fn classify_primitive(arr: &IntersectionArray) -> Result<ClassifierReport, ClassifyError> {
    let d = arr.diameter();
    if d < 3 {
        return Err(DomainError(format!("classifier needs d >= 3, got {d}")).into());
    }
    let table = derive_parameters(arr).map_err(ClassifyError::Infeasible)?;
    let spec = eigen_spectrum(arr)?;
    let eps = dichotomy_epsilon(d);
    let eta = dichotomy_eta(d);
    let md = m_d(d);
    let k = arr.degree() as f64;
    let n = table.n().to_f64().expect("n fits in f64");
    let gamma_d = (eps / d as f64)
        .min((eta.powi(3) / d as f64).powi(d as i32 - 1) / 7.0)
        .min(eta / 10.0);

    let geometric_m = geometricity_check(&table);
    let theta_min = spec.theta_min();
    let report = |verdict: Verdict| ClassifierReport {
        verdict,
        gamma_d,
        m_d: md,
        eps,
        eta,
        eta_at_most_one_seventh: eta <= 1.0 / 7.0,
        geometric_m,
        theta_min,
    };

    if let Some(m) = geometric_m {
        if m <= md {
            if theta_min < -(m as f64) - 1e-6 {
                return Err(ClassifyError::TheoremViolation(format!(
                    "geometric certificate m = {m} but theta_min = {theta_min}"
                )));
            }
            return Ok(report(Verdict::GeometricCandidate { m }));
        }
    }

    let verdict = spectral_gap_dichotomy(arr, None)?;
    if let DichotomyBranch::ExpandingIndex { i, .. } = verdict.branch {
        let fraction = eps / d as f64;
        if i >= 1 {
            // Cross-check against the exact distinguishing minimum.
            let alpha = Rat::from_float(eps).expect("eps is finite");
            primitive_distinguish_bound(&table, &alpha, i)
                .map_err(|e| ClassifyError::TheoremViolation(e.to_string()))?;
        }
        return Ok(report(Verdict::MotionBound {
            fraction,
            bound: fraction * n,
            case: MotionCase::PrimitiveDistinguish,
        }));
    }

    // Spectral-gap branch: xi <= k (1 - eta) is already verified.
    let mu = table.mu() as f64;
    let lambda = table.lambda() as f64;
    if mu > eta.powi(3) * k {
        let fraction = (eta.powi(3) / d as f64).powi(d as i32 - 1) / 7.0;
        return Ok(report(Verdict::MotionBound {
            fraction,
            bound: fraction * n,
            case: MotionCase::MuLarge,
        }));
    }
    if lambda < 0.9 * eta * k {
        // q = max(lambda, mu) <= 9 eta k / 10, so the mixing bound gives
        // at least (eta/10) n; verify against the actual spectrum.
        let mixing = n * (k - spec.xi - table.q() as f64) / k;
        let fraction = eta / 10.0;
        if mixing + 1e-9 * n < fraction * n {
            return Err(ClassifyError::TheoremViolation(format!(
                "mixing bound {mixing} fell below (eta/10) n"
            )));
        }
        return Ok(report(Verdict::MotionBound {
            fraction,
            bound: fraction * n,
            case: MotionCase::Spectral,
        }));
    }
    // lambda >= 0.9 eta k and mu <= eta^3 k force the geometricity
    // criterion, which was already found not to apply (or to exceed m_d).
    Err(ClassifyError::TheoremViolation(
        "case analysis exhausted: large lambda, small mu, yet no geometric certificate".into(),
    ))
}

// ---------------------------------------------------------------------------
// Report assembly
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct MotionReport {
    pub dvals: Vec<Int>,
    pub dmin: Int,
    /// Motion lower bound from the distinguishing minimum.
    pub combinatorial_bound: Int,
    /// Mixing bound `n (k - xi - q)/k`; nonpositive values are
    /// uninformative and reported as-is.
    pub spectral_bound: f64,
    pub transfer_holds: Option<bool>,
    pub ledger: Vec<LedgerEntry>,
    pub classifier: Option<ClassifierReport>,
}

/// Assembles all motion bounds applicable to the array. `primitive` is the
/// caller's attestation; the classifier and the distinguishing-transfer
/// check run only when it is set.
pub fn motion_report(arr: &IntersectionArray, primitive: bool) -> Result<MotionReport, ClassifyError> {
    let table = derive_parameters(arr).map_err(ClassifyError::Infeasible)?;
    let spec = eigen_spectrum(arr)?;
    let dn = distinguishing_numbers(&table);
    let transfer_holds = primitive.then(|| distinguishing_transfer(&dn.per_distance, arr.diameter()));
    let classifier = if primitive && arr.diameter() >= 3 {
        Some(classify_primitive(arr)?)
    } else {
        None
    };
    Ok(MotionReport {
        combinatorial_bound: dn.dmin.clone(),
        dmin: dn.dmin.clone(),
        dvals: dn.per_distance,
        spectral_bound: spectral_motion_bound(&table, &spec),
        transfer_holds,
        ledger: structural_inequalities(&table),
        classifier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{hamming_array, johnson_array, IntersectionArray};

    fn arr(b: &[u64], c: &[u64]) -> IntersectionArray {
        IntersectionArray::new(b.to_vec(), c.to_vec()).unwrap()
    }

    fn table(b: &[u64], c: &[u64]) -> ParameterTable {
        derive_parameters(&arr(b, c)).unwrap()
    }

    #[test]
    fn petersen_distinguishing() {
        let t = table(&[3, 2], &[1, 1]);
        let dn = distinguishing_numbers(&t);
        assert_eq!(dn.per_distance, vec![Int::from(6), Int::from(6)]);
        assert_eq!(dn.dmin, Int::from(6));
        assert_eq!(motion_from_distinguishing(&dn), Int::from(6));
        assert!(distinguishing_transfer(&dn.per_distance, 2));
    }

    #[test]
    fn cocktail_party_distinguishing() {
        let t = table(&[4, 1], &[1, 4]);
        let dn = distinguishing_numbers(&t);
        assert_eq!(dn.dmin, Int::from(2));
    }

    #[test]
    fn distinguishing_at_least_two() {
        for a in [
            arr(&[3, 2], &[1, 1]),
            arr(&[6, 4, 2], &[1, 2, 3]),
            arr(&[5, 2, 1], &[1, 2, 5]),
            johnson_array(8, 3).unwrap(),
        ] {
            let dn = distinguishing_numbers(&derive_parameters(&a).unwrap());
            assert!(dn.per_distance.iter().all(|d| d >= &Int::from(2)));
        }
    }

    #[test]
    fn spectral_bounds_spot_values() {
        let t = table(&[3, 2], &[1, 1]);
        let spec = eigen_spectrum(t.array()).unwrap();
        assert!(spectral_motion_bound(&t, &spec).abs() < 1e-9); // 10(3-2-1)/3 = 0

        let t = table(&[4, 2], &[1, 2]); // H(2,3)
        let spec = eigen_spectrum(t.array()).unwrap();
        assert!(spectral_motion_bound(&t, &spec).abs() < 1e-9); // 9(4-2-2)/4 = 0

        let t = derive_parameters(&johnson_array(30, 3).unwrap()).unwrap();
        let spec = eigen_spectrum(t.array()).unwrap();
        let bound = spectral_motion_bound(&t, &spec);
        assert!(bound <= t.n().to_f64().unwrap());
    }

    #[test]
    fn distinguish_bound_examples() {
        let t = table(&[6, 4, 2], &[1, 2, 3]); // H(3,3)
        let third = Rat::new(Int::one(), Int::from(3));
        let bound = primitive_distinguish_bound(&t, &third, 1).unwrap();
        assert_eq!(bound, Rat::from_integer(Int::from(3))); // 27/9

        let t = table(&[3, 2], &[1, 1]);
        let bound = primitive_distinguish_bound(&t, &third, 1).unwrap();
        assert_eq!(bound, Rat::new(Int::from(10), Int::from(6)));
        assert!(matches!(
            primitive_distinguish_bound(&t, &Rat::one(), 1),
            Err(MotionError::PremiseViolated(_))
        ));
    }

    #[test]
    fn structural_inequalities_hold_on_catalog_arrays() {
        for a in [
            arr(&[3, 2], &[1, 1]),
            arr(&[6, 2], &[1, 4]),
            arr(&[6, 4, 2], &[1, 2, 3]),
            arr(&[3, 2, 1], &[1, 2, 3]),
            arr(&[3, 2, 2], &[1, 1, 3]),
            arr(&[5, 2, 1], &[1, 2, 5]),
            johnson_array(30, 3).unwrap(),
        ] {
            let t = derive_parameters(&a).unwrap();
            for entry in structural_inequalities(&t) {
                assert_ne!(entry.holds, Some(false), "{} failed on {a}: {}", entry.name, entry.detail);
            }
        }
        // Petersen: a_2 = 2 != 0 applies; cube: a_2 = 0 and lambda = 0.
        let pet = structural_inequalities(&table(&[3, 2], &[1, 1]));
        assert_eq!(pet[1].holds, Some(true));
        let cube = structural_inequalities(&table(&[3, 2, 1], &[1, 2, 3]));
        assert_eq!(cube[1].holds, None);
        assert_eq!(cube[5].holds, Some(true));
    }

    #[test]
    fn metsch_spot_values() {
        let out = metsch_lines(28, 28, 4, 3, 81);
        assert!(out.applies);
        assert_eq!(out.line_size_threshold, 24);
        assert_eq!(out.max_lines_per_vertex, 3);

        let out = metsch_lines(0, 0, 2, 3, 10);
        assert!(!out.applies);

        // Strictness of the degree condition: k exactly at the cap fails.
        // (m+1)(l1+1) - m(m+1)(mu-1)/2 = 4*29 - 6*3 = 98.
        let out = metsch_lines(28, 28, 4, 3, 98);
        assert!(!out.degree_condition);
    }

    #[test]
    fn geometricity_examples() {
        assert_eq!(geometricity_check(&derive_parameters(&johnson_array(30, 3).unwrap()).unwrap()), Some(3));
        assert_eq!(geometricity_check(&derive_parameters(&johnson_array(8, 3).unwrap()).unwrap()), None);
        assert_eq!(geometricity_check(&table(&[3, 2], &[1, 1])), None);
    }

    #[test]
    fn delsarte_examples() {
        let spec = eigen_spectrum(&arr(&[3, 2], &[1, 1])).unwrap();
        assert!((delsarte_clique_bound(&spec, 3).unwrap() - 2.5).abs() < 1e-9);
        let spec = eigen_spectrum(&arr(&[6, 2], &[1, 4])).unwrap();
        assert!((delsarte_clique_bound(&spec, 6).unwrap() - 4.0).abs() < 1e-9);
        // Bipartite: theta_min = -k gives exactly 2.
        let spec = eigen_spectrum(&arr(&[3, 2, 1], &[1, 2, 3])).unwrap();
        assert!((delsarte_clique_bound(&spec, 3).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn m_d_values() {
        assert_eq!(m_d(2), 20); // 5 * 2^2
        assert_eq!(m_d(3), 85); // floor(5 * 17.1137...)
        assert_eq!(m_d(4), 320); // 5 * 2^6
        // Cross-check against double precision where the margin is wide.
        for d in [5usize, 6, 7, 9, 10, 15, 20] {
            let df = d as f64;
            let approx = 5.0 * df.powf(1.0 + df.log2());
            let frac = approx.fract();
            assert!(frac > 1e-3 && frac < 1.0 - 1e-3, "test assumes wide margin");
            assert_eq!(m_d(d), approx.floor() as u64, "d = {d}");
        }
    }

    #[test]
    fn classifier_geometric_candidate() {
        let report = classify_primitive(&johnson_array(30, 3).unwrap()).unwrap();
        match report.verdict {
            Verdict::GeometricCandidate { m } => assert_eq!(m, 3),
            ref v => panic!("expected geometric candidate, got {v:?}"),
        }
        assert!((report.theta_min + 3.0).abs() < 1e-6);
        assert_eq!(report.m_d, 85);
        assert!((report.eta - 0.01461).abs() < 1e-4);
        assert!(report.eta_at_most_one_seventh);
    }

    #[test]
    fn classifier_motion_bound_cases() {
        let report = classify_primitive(&hamming_array(3, 3).unwrap()).unwrap();
        match report.verdict {
            Verdict::MotionBound { case, fraction, .. } => {
                assert_eq!(case, MotionCase::PrimitiveDistinguish);
                assert!((fraction - report.eps / 3.0).abs() < 1e-20);
            }
            ref v => panic!("expected motion bound, got {v:?}"),
        }
        assert_eq!(report.geometric_m, None);
    }

    #[test]
    fn classifier_rejects_small_diameter() {
        assert!(classify_primitive(&arr(&[3, 2], &[1, 1])).is_err());
    }

    #[test]
    fn motion_report_assembly() {
        let report = motion_report(&arr(&[3, 2], &[1, 1]), true).unwrap();
        assert_eq!(report.dmin, Int::from(6));
        assert!(report.spectral_bound.abs() < 1e-9);
        assert!(report.classifier.is_none()); // d = 2
        assert_eq!(report.transfer_holds, Some(true));

        let report = motion_report(&johnson_array(8, 3).unwrap(), true).unwrap();
        assert!(report.classifier.is_some());
    }
}
