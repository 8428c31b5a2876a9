//! Intersection arrays and everything derived from them in exact arithmetic.
//!
//! An intersection array `{b_0,...,b_{d-1}; c_1,...,c_d}` determines the whole
//! parameter set of a distance-regular graph: the `a_i`, the distance degrees
//! `k_i`, the vertex count `n` and the full tensor of intersection numbers
//! `p^s_{i,j}`. All of that is integer data, and infeasibility of a candidate
//! array shows up as a failed integrality or sign condition, so this module
//! works in arbitrary-precision integers throughout. Floating point appears
//! only downstream (spectra and bound evaluation).

use crate::{DomainError, Int};
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Structural violations rejected when building an [`IntersectionArray`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrayError {
    #[error("b and c must have equal length, got {b_len} and {c_len}")]
    LengthMismatch { b_len: usize, c_len: usize },
    #[error("diameter must be at least 2, got {0} (complete graphs are rejected)")]
    DiameterTooSmall(usize),
    #[error("c_1 must equal 1, got {0}")]
    FirstCNotOne(u64),
    #[error("b_{0} must be positive")]
    NonPositiveB(usize),
    #[error("c_{0} must be positive")]
    NonPositiveC(usize),
    #[error("b must be non-increasing: b_{i} < b_{j} for i = {i}, j = {j}", i = .0, j = .0 + 1)]
    BIncreases(usize),
    #[error("c must be non-decreasing: c_{i} > c_{j} for i = {i}, j = {j}", i = .0, j = .0 + 1)]
    CDecreases(usize),
}

/// Wire format for arrays: `{"b": [...], "c": [...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

/// The intersection array of a distance-regular graph candidate.
///
/// Construction enforces the structural invariants (equal lengths, `d >= 2`,
/// `c_1 = 1`, positivity, monotonicity of both sequences). Conditions that
/// involve derived quantities (`a_i >= 0`, integral distance degrees, ...)
/// are checked by [`derive_parameters`] and [`feasibility_report`] so that
/// infeasible candidates can still be examined.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawArray", into = "RawArray")]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

impl TryFrom<RawArray> for IntersectionArray {
    type Error = ArrayError;
    fn try_from(raw: RawArray) -> Result<Self, ArrayError> {
        IntersectionArray::new(raw.b, raw.c)
    }
}

impl From<IntersectionArray> for RawArray {
    fn from(arr: IntersectionArray) -> RawArray {
        RawArray { b: arr.b, c: arr.c }
    }
}

impl IntersectionArray {
    /// Validates and wraps `{b_0..b_{d-1}; c_1..c_d}`.
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self, ArrayError> {
        if b.len() != c.len() {
            return Err(ArrayError::LengthMismatch {
                b_len: b.len(),
                c_len: c.len(),
            });
        }
        if b.len() < 2 {
            return Err(ArrayError::DiameterTooSmall(b.len()));
        }
        if c[0] != 1 {
            return Err(ArrayError::FirstCNotOne(c[0]));
        }
        for (i, &bi) in b.iter().enumerate() {
            if bi == 0 {
                return Err(ArrayError::NonPositiveB(i));
            }
        }
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                return Err(ArrayError::NonPositiveC(i + 1));
            }
        }
        for i in 0..b.len() - 1 {
            if b[i + 1] > b[i] {
                return Err(ArrayError::BIncreases(i));
            }
            if c[i + 1] < c[i] {
                return Err(ArrayError::CDecreases(i + 1));
            }
        }
        Ok(IntersectionArray { b, c })
    }

    /// Parses the JSON wire format, naming the first failed invariant.
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| e.to_string())
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    /// Vertex degree `k = b_0`.
    pub fn degree(&self) -> u64 {
        self.b[0]
    }

    /// `b_i` with the convention `b_d = 0`.
    pub fn b(&self, i: usize) -> u64 {
        if i < self.b.len() {
            self.b[i]
        } else {
            0
        }
    }

    /// `c_i` with the convention `c_0 = 0`; defined for `0 <= i <= d`.
    pub fn c(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// `c_i` extended by `c_{d+1} = k`, the convention used by the
    /// eigenvalue-locality and spectral-gap arguments.
    pub fn c_ext(&self, i: usize) -> u64 {
        if i == self.diameter() + 1 {
            self.degree()
        } else {
            self.c(i)
        }
    }

    /// `a_i = k - b_i - c_i`, possibly negative for infeasible candidates.
    pub fn a_signed(&self, i: usize) -> i128 {
        self.degree() as i128 - self.b(i) as i128 - self.c(i) as i128
    }

    pub fn b_slice(&self) -> &[u64] {
        &self.b
    }

    pub fn c_slice(&self) -> &[u64] {
        &self.c
    }
}

impl std::fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        let c: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}; {}}}", b.join(","), c.join(","))
    }
}

/// Derivation failures; each one certifies the array is infeasible.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("k_{i} = k_{j}*b_{j}/c_{i} is not an integer", j = .i - 1)]
    NonIntegralDistanceDegree { i: usize },
    #[error("a_{i} = {value} is negative")]
    NegativeA { i: usize, value: i128 },
    #[error("p^{s}_{{{i},{j}}} is not a nonnegative integer")]
    NonIntegralP { s: usize, i: usize, j: usize },
}

/// Dense tensor of intersection numbers `p^s_{i,j}`, `0 <= s,i,j <= d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionTensor {
    d: usize,
    data: Vec<Int>,
}

impl IntersectionTensor {
    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn get(&self, s: usize, i: usize, j: usize) -> &Int {
        let w = self.d + 1;
        &self.data[(s * w + i) * w + j]
    }
}

/// All parameters of a distance-regular graph derived from its array.
#[derive(Debug, Clone)]
pub struct ParameterTable {
    arr: IntersectionArray,
    a: Vec<u64>,
    kdist: Vec<Int>,
    n: Int,
    lambda: u64,
    mu: u64,
    p: IntersectionTensor,
}

impl ParameterTable {
    pub fn array(&self) -> &IntersectionArray {
        &self.arr
    }

    pub fn diameter(&self) -> usize {
        self.arr.diameter()
    }

    pub fn degree(&self) -> u64 {
        self.arr.degree()
    }

    /// `a_i` for `0 <= i <= d`.
    pub fn a(&self, i: usize) -> u64 {
        self.a[i]
    }

    pub fn a_slice(&self) -> &[u64] {
        &self.a
    }

    /// Distance degrees `k_0..k_d`.
    pub fn kdist(&self) -> &[Int] {
        &self.kdist
    }

    pub fn n(&self) -> &Int {
        &self.n
    }

    /// `lambda = a_1`, common neighbors of an adjacent pair.
    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// `mu = c_2`, common neighbors of a pair at distance 2.
    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// `q = max(lambda, mu)`: in a distance-regular graph pairs at distance
    /// three or more have no common neighbors, so this is the maximum over
    /// all distinct pairs.
    pub fn q(&self) -> u64 {
        self.lambda.max(self.mu)
    }

    pub fn p(&self) -> &IntersectionTensor {
        &self.p
    }
}

/// Distance degrees `k_0..k_d` and their sum `n`, by the exact recurrence
/// `k_{i+1} = k_i b_i / c_{i+1}`.
pub fn distance_degrees(arr: &IntersectionArray) -> Result<(Vec<Int>, Int), ParamError> {
    let d = arr.diameter();
    let mut kdist = Vec::with_capacity(d + 1);
    kdist.push(Int::one());
    for i in 0..d {
        let num = kdist[i].clone() * Int::from(arr.b(i));
        let den = Int::from(arr.c(i + 1));
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(ParamError::NonIntegralDistanceDegree { i: i + 1 });
        }
        kdist.push(q);
    }
    let n: Int = kdist.iter().sum();
    Ok((kdist, n))
}

/// Derives the full parameter table, failing on the first infeasibility.
pub fn derive_parameters(arr: &IntersectionArray) -> Result<ParameterTable, ParamError> {
    let d = arr.diameter();
    let mut a = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let ai = arr.a_signed(i);
        if ai < 0 {
            return Err(ParamError::NegativeA { i, value: ai });
        }
        a.push(ai as u64);
    }
    let (kdist, n) = distance_degrees(arr)?;
    let p = intersection_tensor(arr)?;
    Ok(ParameterTable {
        lambda: a[1],
        mu: arr.c(2),
        arr: arr.clone(),
        a,
        kdist,
        n,
        p,
    })
}

/// Computes the tensor `p^s_{i,j}` of intersection numbers.
///
/// For each fixed `i` the product `A_i A_j` is expanded in the basis
/// `{A_0,...,A_d}` by the three-term recurrence for `A A_j`: with `P_j` the
/// coefficient vector of `A_i A_j`,
/// `P_{j+1} = (L P_j - a_j P_j - b_{j-1} P_{j-1}) / c_{j+1}`,
/// where `L` is left multiplication by `A` acting on coefficients,
/// `(L P)_s = c_s P_{s-1} + a_s P_s + b_s P_{s+1}`. All divisions must be
/// exact and all entries nonnegative, otherwise the array is infeasible.
pub fn intersection_tensor(arr: &IntersectionArray) -> Result<IntersectionTensor, ParamError> {
    let d = arr.diameter();
    let w = d + 1;
    let mut data = vec![Int::zero(); w * w * w];

    let apply_l = |p: &[Int]| -> Vec<Int> {
        (0..w)
            .map(|s| {
                let mut v = Int::zero();
                if s > 0 {
                    v += Int::from(arr.c(s)) * &p[s - 1];
                }
                v += Int::from(arr.a_signed(s)) * &p[s];
                if s + 1 < w {
                    v += Int::from(arr.b(s)) * &p[s + 1];
                }
                v
            })
            .collect()
    };

    for i in 0..=d {
        let mut prev: Vec<Int> = vec![Int::zero(); w];
        let mut cur = prev.clone();
        cur[i] = Int::one();
        for (s, item) in cur.iter().enumerate() {
            data[(s * w + i) * w] = item.clone();
        }
        for j in 0..d {
            let lp = apply_l(&cur);
            let cj1 = Int::from(arr.c(j + 1));
            let aj = Int::from(arr.a_signed(j));
            let bj_prev = if j == 0 { Int::zero() } else { Int::from(arr.b(j - 1)) };
            let mut next = Vec::with_capacity(w);
            for s in 0..w {
                let num = lp[s].clone() - &aj * &cur[s] - &bj_prev * &prev[s];
                let (q, r) = num.div_rem(&cj1);
                if !r.is_zero() || q.is_negative() {
                    return Err(ParamError::NonIntegralP { s, i, j: j + 1 });
                }
                next.push(q);
            }
            for (s, item) in next.iter().enumerate() {
                data[(s * w + i) * w + (j + 1)] = item.clone();
            }
            prev = cur;
            cur = next;
        }
    }

    let tensor = IntersectionTensor { d, data };
    debug_assert!(tensor_is_symmetric(&tensor));
    Ok(tensor)
}

fn tensor_is_symmetric(p: &IntersectionTensor) -> bool {
    let d = p.d;
    (0..=d).all(|s| (0..=d).all(|i| (i..=d).all(|j| p.get(s, i, j) == p.get(s, j, i))))
}

/// Johnson graph J(m, d) array: `b_i = (d-i)(m-d-i)`, `c_{i+1} = (i+1)^2`.
pub fn johnson_array(m: u64, d: usize) -> Result<IntersectionArray, DomainError> {
    if d < 2 {
        return Err(DomainError(format!("johnson requires d >= 2, got {d}")));
    }
    if m < 2 * d as u64 + 1 {
        return Err(DomainError(format!(
            "johnson requires m >= 2d+1, got m = {m}, d = {d}"
        )));
    }
    let b: Vec<u64> = (0..d as u64).map(|i| (d as u64 - i) * (m - d as u64 - i)).collect();
    let c: Vec<u64> = (1..=d as u64).map(|i| i * i).collect();
    Ok(IntersectionArray::new(b, c).expect("closed form satisfies the structural invariants"))
}

/// Hamming graph H(d, m) array: `b_i = (d-i)(m-1)`, `c_{i+1} = i+1`.
pub fn hamming_array(d: usize, m: u64) -> Result<IntersectionArray, DomainError> {
    if d < 2 {
        return Err(DomainError(format!("hamming requires d >= 2, got {d}")));
    }
    if m < 2 {
        return Err(DomainError(format!("hamming requires m >= 2, got {m}")));
    }
    let b: Vec<u64> = (0..d as u64).map(|i| (d as u64 - i) * (m - 1)).collect();
    let c: Vec<u64> = (1..=d as u64).collect();
    Ok(IntersectionArray::new(b, c).expect("closed form satisfies the structural invariants"))
}

/// Cocktail-party graph K_{m x 2} array `{2m-2, 1; 1, 2m-2}`.
pub fn cocktail_party_array(m: u64) -> Result<IntersectionArray, DomainError> {
    if m < 2 {
        return Err(DomainError(format!("cocktail-party requires m >= 2, got {m}")));
    }
    Ok(IntersectionArray::new(vec![2 * m - 2, 1], vec![1, 2 * m - 2])
        .expect("closed form satisfies the structural invariants"))
}

/// A failed feasibility identity. Violations are data, not errors: a report
/// lists every check that failed on the candidate array.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonIntegralDistanceDegree { i: usize },
    NegativeA { i: usize, value: i128 },
    NonIntegralP { s: usize, i: usize, j: usize },
    MultiplicityNotIntegral { eigenvalue: f64, multiplicity: f64 },
    MultiplicitySumMismatch { sum: u64 },
    DegenerateSpectrum,
    SpectralRadiusExceedsDegree { xi: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NonIntegralDistanceDegree { i } => {
                write!(f, "NonIntegralDistanceDegree: k_{i} is not an integer")
            }
            Violation::NegativeA { i, value } => write!(f, "NegativeA: a_{i} = {value} < 0"),
            Violation::NonIntegralP { s, i, j } => {
                write!(f, "NonIntegralP: p^{s}_{{{i},{j}}} not a nonnegative integer")
            }
            Violation::MultiplicityNotIntegral { eigenvalue, multiplicity } => write!(
                f,
                "MultiplicityNotIntegral: m({eigenvalue:.6}) = {multiplicity:.6}"
            ),
            Violation::MultiplicitySumMismatch { sum } => {
                write!(f, "MultiplicitySumMismatch: multiplicities sum to {sum} != n")
            }
            Violation::DegenerateSpectrum => write!(f, "DegenerateSpectrum: eigenvalues collide"),
            Violation::SpectralRadiusExceedsDegree { xi } => {
                write!(f, "SpectralRadiusExceedsDegree: xi = {xi:.6} > k")
            }
        }
    }
}

/// Runs every implemented feasibility check on the array and reports all
/// failures. An empty report means the array passed the identity, sign,
/// integrality and multiplicity checks (it does not certify that a graph
/// with this array exists).
pub fn feasibility_report(arr: &IntersectionArray) -> Vec<Violation> {
    let mut out = Vec::new();
    let d = arr.diameter();
    for i in 0..=d {
        let ai = arr.a_signed(i);
        if ai < 0 {
            out.push(Violation::NegativeA { i, value: ai });
        }
    }
    let degrees = match distance_degrees(arr) {
        Ok(v) => Some(v),
        Err(ParamError::NonIntegralDistanceDegree { i }) => {
            out.push(Violation::NonIntegralDistanceDegree { i });
            None
        }
        Err(_) => unreachable!("distance_degrees only fails on integrality"),
    };
    if let Err(e) = intersection_tensor(arr) {
        match e {
            ParamError::NonIntegralP { s, i, j } => out.push(Violation::NonIntegralP { s, i, j }),
            ParamError::NonIntegralDistanceDegree { i } => {
                out.push(Violation::NonIntegralDistanceDegree { i })
            }
            ParamError::NegativeA { i, value } => out.push(Violation::NegativeA { i, value }),
        }
    }
    if let Some((kdist, n)) = degrees {
        match crate::spectrum::spectrum_from_array_parts(arr, &kdist, &n) {
            Ok(spec) => {
                let total: u64 = spec.eigenvalues.iter().map(|l| l.multiplicity).sum();
                if Int::from(total) != n {
                    out.push(Violation::MultiplicitySumMismatch { sum: total });
                }
                if spec.xi > arr.degree() as f64 * (1.0 + 1e-9) {
                    out.push(Violation::SpectralRadiusExceedsDegree { xi: spec.xi });
                }
            }
            Err(crate::spectrum::SpectrumError::MultiplicityNotIntegral {
                eigenvalue,
                multiplicity,
            }) => out.push(Violation::MultiplicityNotIntegral { eigenvalue, multiplicity }),
            Err(crate::spectrum::SpectrumError::DegenerateSpectrum) => {
                out.push(Violation::DegenerateSpectrum)
            }
            Err(_) => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arr(b: &[u64], c: &[u64]) -> IntersectionArray {
        IntersectionArray::new(b.to_vec(), c.to_vec()).unwrap()
    }

    #[test]
    fn petersen_parameters() {
        let t = derive_parameters(&arr(&[3, 2], &[1, 1])).unwrap();
        let kdist: Vec<Int> = [1u64, 3, 6].iter().map(|&x| Int::from(x)).collect();
        assert_eq!(t.kdist(), &kdist[..]);
        assert_eq!(t.n(), &Int::from(10u64));
        assert_eq!(t.lambda(), 0);
        assert_eq!(t.mu(), 1);
        assert_eq!(t.q(), 1);
    }

    #[test]
    fn johnson_5_2_parameters() {
        let a = johnson_array(5, 2).unwrap();
        assert_eq!(a.b_slice(), &[6, 2]);
        assert_eq!(a.c_slice(), &[1, 4]);
        let t = derive_parameters(&a).unwrap();
        let kdist: Vec<Int> = [1u64, 6, 3].iter().map(|&x| Int::from(x)).collect();
        assert_eq!(t.kdist(), &kdist[..]);
        assert_eq!(t.n(), &Int::from(10u64));
        assert_eq!(t.lambda(), 3);
        assert_eq!(t.mu(), 4);
    }

    #[test]
    fn cube_parameters() {
        let t = derive_parameters(&arr(&[3, 2, 1], &[1, 2, 3])).unwrap();
        let kdist: Vec<Int> = [1u64, 3, 3, 1].iter().map(|&x| Int::from(x)).collect();
        assert_eq!(t.kdist(), &kdist[..]);
        assert_eq!(t.n(), &Int::from(8u64));
        assert_eq!(t.a_slice(), &[0, 0, 0, 0]);
    }

    #[test]
    fn generators_match_closed_forms() {
        assert_eq!(hamming_array(2, 3).unwrap(), arr(&[4, 2], &[1, 2]));
        let cp = cocktail_party_array(3).unwrap();
        assert_eq!(cp, arr(&[4, 1], &[1, 4]));
        assert_eq!(
            derive_parameters(&cp).unwrap().n(),
            &Int::from(6u64)
        );
        assert!(johnson_array(4, 2).is_err());
        assert!(hamming_array(1, 5).is_err());
        assert!(cocktail_party_array(1).is_err());
    }

    #[test]
    fn johnson_hamming_vertex_counts() {
        // n(J(m,d)) = C(m,d), n(H(d,m)) = m^d
        for (m, d) in [(5u64, 2usize), (7, 3), (9, 4), (30, 3)] {
            let t = derive_parameters(&johnson_array(m, d).unwrap()).unwrap();
            assert_eq!(t.n(), &crate::spectrum::binomial(m, d as u64));
        }
        for (d, m) in [(2usize, 3u64), (3, 3), (4, 2), (3, 5)] {
            let t = derive_parameters(&hamming_array(d, m).unwrap()).unwrap();
            assert_eq!(t.n(), &Int::from(m).pow(d as u32));
        }
    }

    #[test]
    fn tensor_boundary_identities() {
        for a in [
            arr(&[3, 2], &[1, 1]),
            arr(&[6, 4, 2], &[1, 2, 3]),
            arr(&[3, 2, 2], &[1, 1, 3]),
            arr(&[5, 2, 1], &[1, 2, 5]),
            johnson_array(8, 3).unwrap(),
        ] {
            let t = derive_parameters(&a).unwrap();
            let d = a.diameter();
            let p = t.p();
            for i in 1..=d {
                assert_eq!(p.get(i - 1, 1, i), &Int::from(a.b(i - 1)));
                assert_eq!(p.get(i, 1, i), &Int::from(t.a(i)));
                if i < d {
                    assert_eq!(p.get(i + 1, 1, i), &Int::from(a.c(i + 1)));
                }
            }
            // p^s_{i,0} = [i == s]
            for s in 0..=d {
                for i in 0..=d {
                    let expect = if i == s { Int::one() } else { Int::zero() };
                    assert_eq!(p.get(s, i, 0), &expect);
                }
            }
            // row sums: sum_t p^s_{i,t} = k_i
            for s in 0..=d {
                for i in 0..=d {
                    let sum: Int = (0..=d).map(|tt| p.get(s, i, tt).clone()).sum();
                    assert_eq!(&sum, &t.kdist()[i], "row sum failed at s={s} i={i}");
                }
            }
        }
    }

    #[test]
    fn petersen_tensor_values() {
        let t = derive_parameters(&arr(&[3, 2], &[1, 1])).unwrap();
        assert_eq!(t.p().get(2, 2, 2), &Int::from(3u64));
        assert_eq!(t.p().get(2, 1, 1), &Int::from(1u64)); // = mu
    }

    #[test]
    fn feasibility_accepts_petersen_rejects_bad_arrays() {
        assert!(feasibility_report(&arr(&[3, 2], &[1, 1])).is_empty());
        let v = feasibility_report(&arr(&[5, 4], &[1, 3]));
        assert!(v.iter().any(|x| matches!(x, Violation::NonIntegralDistanceDegree { i: 2 })));
        // {3,3;1,1}: a_1 = -1, and the multiplicity formula also fails.
        let v = feasibility_report(&arr(&[3, 3], &[1, 1]));
        assert!(v.iter().any(|x| matches!(x, Violation::NegativeA { i: 1, .. })));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::MultiplicityNotIntegral { .. })));
        // Moore graph of degree 4 does not exist: multiplicities break.
        let v = feasibility_report(&arr(&[4, 3], &[1, 1]));
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::MultiplicityNotIntegral { .. })));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        /// Structurally valid arrays: monotone b (non-increasing) and c
        /// (non-decreasing, starting at 1), both positive.
        fn arbitrary_array() -> impl Strategy<Value = IntersectionArray> {
            (2usize..6, 1u64..6, 1u64..5)
                .prop_flat_map(|(d, bstep, cstep)| {
                    (
                        proptest::collection::vec(0..bstep, d),
                        proptest::collection::vec(0..cstep, d - 1),
                    )
                })
                .prop_map(|(bdecs, cincs)| {
                    let mut b = Vec::new();
                    let mut last = 1 + bdecs.iter().sum::<u64>();
                    for dec in bdecs {
                        b.push(last);
                        last -= dec.min(last - 1);
                    }
                    let mut c = vec![1u64];
                    for inc in cincs {
                        c.push(c.last().unwrap() + inc);
                    }
                    IntersectionArray::new(b, c).expect("constructed to satisfy invariants")
                })
        }

        proptest! {
            #[test]
            fn json_round_trips(arr in arbitrary_array()) {
                let text = serde_json::to_string(&arr).unwrap();
                prop_assert_eq!(IntersectionArray::from_json(&text).unwrap(), arr);
            }

            /// Whenever the tensor derivation succeeds, the algebra laws
            /// hold: symmetry, row sums, and the boundary identities.
            #[test]
            fn tensor_laws(arr in arbitrary_array()) {
                let Ok(table) = derive_parameters(&arr) else { return Ok(()) };
                let d = arr.diameter();
                let p = table.p();
                for s in 0..=d {
                    for i in 0..=d {
                        for j in 0..=d {
                            prop_assert_eq!(p.get(s, i, j), p.get(s, j, i));
                        }
                        let sum: Int = (0..=d).map(|t| p.get(s, i, t).clone()).sum();
                        prop_assert_eq!(&sum, &table.kdist()[i]);
                    }
                }
                for i in 1..=d {
                    prop_assert_eq!(p.get(i - 1, 1, i), &Int::from(arr.b(i - 1)));
                    prop_assert_eq!(p.get(i, 1, i), &Int::from(table.a(i)));
                }
            }
        }
    }

    #[test]
    fn json_roundtrip_and_rejection() {
        let a = arr(&[3, 2, 2], &[1, 1, 3]);
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(IntersectionArray::from_json(&text).unwrap(), a);

        let err = IntersectionArray::from_json(r#"{"b": [3, 2], "c": [2, 2]}"#).unwrap_err();
        assert!(err.contains("c_1"), "message should name the invariant: {err}");
        let err = IntersectionArray::from_json(r#"{"b": [3], "c": [1]}"#).unwrap_err();
        assert!(err.contains("diameter"), "{err}");
        let err = IntersectionArray::from_json(r#"{"b": [3, 4], "c": [1, 1]}"#).unwrap_err();
        assert!(err.contains("non-increasing"), "{err}");
    }
}
