//! Eigenvalues of a distance-regular graph from its intersection matrix.
//!
//! The adjacency spectrum of a distance-regular graph equals the spectrum of
//! the tridiagonal `(d+1) x (d+1)` intersection matrix. We compute it from the
//! symmetrized tridiagonal matrix (diagonal `a_i`, off-diagonals
//! `sqrt(b_i c_{i+1})`), which is similar to the intersection matrix and keeps
//! the eigenproblem real and stable. Multiplicities come from the standard
//! formula `m(theta) = n / sum_i k_i u_i(theta)^2` with the `u_i` sequence
//! given by the three-term recurrence.

use crate::params::{distance_degrees, IntersectionArray, ParamError};
use crate::{DomainError, Int};
use itertools::Itertools;
use nalgebra::{Complex, DMatrix};
use num::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative separation below which two computed eigenvalues are considered
/// colliding (scaled by the degree). Numeric error of the symmetric QR is
/// a few ulps of the degree (~1e-15 k), so this keeps three orders of
/// margin while still resolving the O(1) gaps of large-degree arrays.
const SEPARATION_TOL: f64 = 1e-12;
/// Tolerance for rounding a computed multiplicity to an integer.
const MULTIPLICITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("multiplicity of eigenvalue {eigenvalue} is {multiplicity}, not an integer")]
    MultiplicityNotIntegral { eigenvalue: f64, multiplicity: f64 },
    #[error("multiplicity of eigenvalue {eigenvalue} is {multiplicity}, beyond the supported range")]
    MultiplicityOutOfRange { eigenvalue: f64, multiplicity: f64 },
    #[error("two eigenvalues closer than the separation tolerance")]
    DegenerateSpectrum,
    #[error("array is infeasible: {0}")]
    Infeasible(ParamError),
}

/// One distinct eigenvalue with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralLine {
    pub value: f64,
    pub multiplicity: u64,
}

/// Distinct eigenvalues sorted in decreasing order, with the zero-weight
/// spectral radius `xi = max(|theta_1|, |theta_d|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<SpectralLine>,
    pub xi: f64,
}

impl Spectrum {
    pub fn from_lines(eigenvalues: Vec<SpectralLine>) -> Self {
        let xi = eigenvalues
            .iter()
            .skip(1)
            .map(|l| l.value.abs())
            .fold(0.0, f64::max);
        Spectrum { eigenvalues, xi }
    }

    /// Largest eigenvalue (the degree, for a connected regular graph).
    pub fn theta_max(&self) -> f64 {
        self.eigenvalues[0].value
    }

    pub fn theta_min(&self) -> f64 {
        self.eigenvalues.last().expect("spectrum is nonempty").value
    }

    /// `theta_i`, eigenvalues indexed in decreasing order.
    pub fn theta(&self, i: usize) -> f64 {
        self.eigenvalues[i].value
    }

    pub fn n(&self) -> u64 {
        self.eigenvalues.iter().map(|l| l.multiplicity).sum()
    }

    /// Second largest eigenvalue.
    pub fn lambda2(&self) -> f64 {
        self.eigenvalues[1].value
    }
}

/// The tridiagonal intersection matrix: diagonal `a_i`, superdiagonal `b_i`,
/// subdiagonal `c_i`. Every row sums to the degree `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    dim: usize,
    entries: Vec<i64>,
}

impl IntersectionMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.dim)
            .map(|r| self.entries[r * self.dim..(r + 1) * self.dim].to_vec())
            .collect()
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |r, c| self.get(r, c) as f64)
    }
}

/// Builds the intersection matrix of the array.
pub fn intersection_matrix(arr: &IntersectionArray) -> IntersectionMatrix {
    let d = arr.diameter();
    let dim = d + 1;
    let mut entries = vec![0i64; dim * dim];
    for i in 0..=d {
        entries[i * dim + i] = arr.a_signed(i) as i64;
        if i < d {
            entries[i * dim + i + 1] = arr.b(i) as i64;
        }
        if i > 0 {
            entries[i * dim + i - 1] = arr.c(i) as i64;
        }
    }
    let m = IntersectionMatrix { dim, entries };
    debug_assert!((0..dim).all(|r| (0..dim).map(|c| m.get(r, c)).sum::<i64>() == arr.degree() as i64));
    m
}

/// Spectrum of the array via the symmetrized tridiagonal matrix.
pub fn eigen_spectrum(arr: &IntersectionArray) -> Result<Spectrum, SpectrumError> {
    let (kdist, n) = distance_degrees(arr).map_err(SpectrumError::Infeasible)?;
    spectrum_from_array_parts(arr, &kdist, &n)
}

/// Same as [`eigen_spectrum`] but reusing precomputed distance degrees.
/// Works even when some `a_i` is negative, so the feasibility report can
/// evaluate the multiplicity check on such candidates.
pub(crate) fn spectrum_from_array_parts(
    arr: &IntersectionArray,
    kdist: &[Int],
    n: &Int,
) -> Result<Spectrum, SpectrumError> {
    let d = arr.diameter();
    let k = arr.degree() as f64;
    let dim = d + 1;
    let mut sym = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..=d {
        sym[(i, i)] = arr.a_signed(i) as f64;
        if i < d {
            let off = ((arr.b(i) as f64) * (arr.c(i + 1) as f64)).sqrt();
            sym[(i, i + 1)] = off;
            sym[(i + 1, i)] = off;
        }
    }
    let mut thetas: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    thetas.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    for w in thetas.windows(2) {
        if (w[0] - w[1]).abs() < SEPARATION_TOL * k.max(1.0) {
            return Err(SpectrumError::DegenerateSpectrum);
        }
    }

    let nf = n.to_f64().expect("vertex count fits in f64");
    let kf: Vec<f64> = kdist.iter().map(|x| x.to_f64().expect("k_i fits in f64")).collect();
    let mut lines = Vec::with_capacity(dim);
    for &theta in &thetas {
        let u = u_sequence(arr, theta);
        let denom: f64 = (0..=d).map(|i| kf[i] * u[i] * u[i]).sum();
        let m = nf / denom;
        let rounded = m.round();
        if (m - rounded).abs() > MULTIPLICITY_TOL * m.abs().max(1.0) || rounded < 1.0 {
            return Err(SpectrumError::MultiplicityNotIntegral {
                eigenvalue: theta,
                multiplicity: m,
            });
        }
        if rounded > u64::MAX as f64 {
            return Err(SpectrumError::MultiplicityOutOfRange {
                eigenvalue: theta,
                multiplicity: m,
            });
        }
        lines.push(SpectralLine {
            value: theta,
            multiplicity: rounded as u64,
        });
    }
    Ok(Spectrum::from_lines(lines))
}

/// Standard sequence `u_0 = 1`, `u_1 = theta/k`,
/// `u_{i+1} = ((theta - a_i) u_i - c_i u_{i-1}) / b_i`.
fn u_sequence(arr: &IntersectionArray, theta: f64) -> Vec<f64> {
    let d = arr.diameter();
    let k = arr.degree() as f64;
    let mut u = Vec::with_capacity(d + 1);
    u.push(1.0);
    u.push(theta / k);
    for i in 1..d {
        let ai = arr.a_signed(i) as f64;
        let next = ((theta - ai) * u[i] - arr.c(i) as f64 * u[i - 1]) / arr.b(i) as f64;
        u.push(next);
    }
    u
}

/// Perturbation bound on eigenvalues: `2 (n+1)^2 M delta^{1/n}` with
/// `M = max |entry|` over both matrices and
/// `delta = (1/(nM)) sum |A_ij - B_ij|`. Equal matrices give 0.
pub fn ostrowski_bound(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<f64, DomainError> {
    if a.nrows() != a.ncols() || b.nrows() != b.ncols() || a.nrows() != b.nrows() {
        return Err(DomainError(format!(
            "ostrowski_bound requires equal square matrices, got {}x{} and {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let n = a.nrows();
    let diff_sum: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (a[(i, j)] - b[(i, j)]).abs())
        .sum();
    if diff_sum == 0.0 {
        return Ok(0.0);
    }
    let m = a.iter().chain(b.iter()).fold(0.0f64, |acc, &x| acc.max(x.abs()));
    let delta = diff_sum / (n as f64 * m);
    Ok(2.0 * ((n + 1) * (n + 1)) as f64 * m * delta.powf(1.0 / n as f64))
}

/// Roots of the characteristic polynomial of a general square real matrix.
pub fn characteristic_roots(m: &DMatrix<f64>) -> Vec<Complex<f64>> {
    m.clone().complex_eigenvalues().iter().copied().collect()
}

/// Whether some pairing of the two eigenvalue multisets matches every pair
/// within `bound`, checked by exhausting all permutations.
pub fn eigenvalues_match_within(
    a: &[Complex<f64>],
    b: &[Complex<f64>],
    bound: f64,
) -> bool {
    assert_eq!(a.len(), b.len());
    let idx: Vec<usize> = (0..a.len()).collect();
    idx.iter()
        .permutations(a.len())
        .any(|perm| (0..a.len()).all(|i| (a[i] - b[*perm[i]]).norm() <= bound))
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LocalityError {
    #[error("inapplicable: {0}")]
    Inapplicable(String),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
}

/// Check of the eigenvalue-approximation bound against the gap premise.
#[derive(Debug, Clone, Serialize)]
pub struct LocalityReport {
    pub i: usize,
    pub eps: f64,
    pub theta_i: f64,
    pub a_i: i64,
    pub deviation: f64,
    pub deviation_bound: f64,
    pub deviation_ok: bool,
    pub gap: Option<GapCheck>,
}

/// Secondary check: with `alpha = min(b_{i-1}, c_{i+1})/k > 0` (and
/// `c_{d+1} = k`), the zero-weight spectral radius must satisfy
/// `xi <= k (1 - alpha + 2(d+2)^2 eps^{1/(d+1)})`.
#[derive(Debug, Clone, Serialize)]
pub struct GapCheck {
    pub alpha: f64,
    pub xi: f64,
    pub bound: f64,
    pub ok: bool,
}

/// Verifies that when `b_i <= eps k` and `c_i <= eps k`, the eigenvalue
/// `theta_i` lies within `2 (d+2)^2 eps^{1/(d+1)} k` of `a_i`.
pub fn eigenvalue_locality_check(
    arr: &IntersectionArray,
    i: usize,
    eps: f64,
) -> Result<LocalityReport, LocalityError> {
    let d = arr.diameter();
    if i > d {
        return Err(LocalityError::Inapplicable(format!("index {i} exceeds diameter {d}")));
    }
    let k = arr.degree() as f64;
    if arr.b(i) as f64 > eps * k || arr.c(i) as f64 > eps * k {
        return Err(LocalityError::Inapplicable(format!(
            "premise fails: need b_{i} <= eps*k and c_{i} <= eps*k, got b_{i} = {}, c_{i} = {}, eps*k = {}",
            arr.b(i),
            arr.c(i),
            eps * k
        )));
    }
    let spec = eigen_spectrum(arr)?;
    let theta_i = spec.theta(i);
    let a_i = arr.a_signed(i) as i64;
    let deviation = (theta_i - a_i as f64).abs();
    let factor = 2.0 * ((d + 2) * (d + 2)) as f64 * eps.powf(1.0 / (d as f64 + 1.0));
    let deviation_bound = factor * k;
    let gap = if i >= 1 {
        let alpha = (arr.b(i - 1).min(arr.c_ext(i + 1))) as f64 / k;
        if alpha > 0.0 {
            let bound = k * (1.0 - alpha + factor);
            Some(GapCheck {
                alpha,
                xi: spec.xi,
                bound,
                ok: spec.xi <= bound + 1e-9 * k,
            })
        } else {
            None
        }
    } else {
        None
    };
    Ok(LocalityReport {
        i,
        eps,
        theta_i,
        a_i,
        deviation,
        deviation_bound,
        deviation_ok: deviation <= deviation_bound + 1e-9 * k,
        gap,
    })
}

/// Binomial coefficient C(n, k) in exact arithmetic.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let mut acc = Int::one();
    for i in 0..k.min(n - k) {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Closed-form spectrum of J(m, d): eigenvalue `(d-j)(m-d-j) - j` with
/// multiplicity `C(m,j) - C(m,j-1)` for `0 <= j <= d`.
pub fn johnson_spectrum(m: u64, d: usize) -> Result<Vec<(i64, Int)>, DomainError> {
    if d < 2 || m < 2 * d as u64 + 1 {
        return Err(DomainError(format!("johnson spectrum needs d >= 2, m >= 2d+1, got m={m}, d={d}")));
    }
    Ok((0..=d as u64)
        .map(|j| {
            let val = (d as i64 - j as i64) * (m as i64 - d as i64 - j as i64) - j as i64;
            let mult = if j == 0 {
                Int::one()
            } else {
                binomial(m, j) - binomial(m, j - 1)
            };
            (val, mult)
        })
        .collect())
}

/// Closed-form spectrum of H(d, m): eigenvalue `d(m-1) - jm` with
/// multiplicity `C(d,j) (m-1)^j` for `0 <= j <= d`.
pub fn hamming_spectrum(d: usize, m: u64) -> Result<Vec<(i64, Int)>, DomainError> {
    if d < 2 || m < 2 {
        return Err(DomainError(format!("hamming spectrum needs d >= 2, m >= 2, got d={d}, m={m}")));
    }
    Ok((0..=d as u64)
        .map(|j| {
            let val = d as i64 * (m as i64 - 1) - (j * m) as i64;
            let mult = binomial(d as u64, j) * Int::from(m - 1).pow(j as u32);
            (val, mult)
        })
        .collect())
}
