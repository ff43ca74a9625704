//! Separability tests on bipartite states.
//!
//! Every criterion is one-sided: a statistic on the wrong side of its
//! threshold certifies entanglement, anything else is inconclusive. Only the
//! PPT test on 2x2 and 2x3 systems can certify separability. Statistics that
//! land within `tol` of a threshold never produce `Entangled`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, min_singular_value, trace_norm, ComplexMatrix};
use crate::qstate::{
    partial_transpose, realign, validate_density_matrix, DensityMatrix, STATE_TOL,
};

/// Default strictness tolerance for threshold comparisons.
pub const CRITERION_TOL: f64 = 1e-9;

pub const PPT: &str = "ppt";
pub const REALIGNMENT: &str = "realignment";
pub const MIN_SINGULAR: &str = "min_singular";
pub const XSTATE: &str = "xstate_theorem1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Entangled,
    SeparableCertified,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Entangled => "ENTANGLED",
            Verdict::SeparableCertified => "SEPARABLE_CERTIFIED",
            Verdict::Inconclusive => "INCONCLUSIVE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionResult {
    pub name: &'static str,
    /// Named statistics in a fixed, criterion-specific order.
    pub statistics: Vec<(&'static str, f64)>,
    pub threshold: f64,
    pub verdict: Verdict,
}

impl CriterionResult {
    pub fn statistic(&self, key: &str) -> Option<f64> {
        self.statistics
            .iter()
            .find(|(k, _)| *k == key)
            .map(|&(_, v)| v)
    }
}

/// PPT test: the smallest eigenvalue of `ρ^{T_B}`.
pub fn ppt_criterion(rho: &DensityMatrix, tol: f64) -> CriterionResult {
    let pt = partial_transpose(rho);
    let min_eig = hermitian_eigenvalues(&pt, STATE_TOL.max(tol))
        .expect("partial transpose of a Hermitian matrix is Hermitian")
        .min();
    let dims = rho.dims();
    let exact = matches!((dims.d_a(), dims.d_b()), (2, 2) | (2, 3) | (3, 2));
    let verdict = if min_eig < -tol {
        Verdict::Entangled
    } else if exact {
        Verdict::SeparableCertified
    } else {
        Verdict::Inconclusive
    };
    CriterionResult {
        name: PPT,
        statistics: vec![("min_pt_eigenvalue", min_eig)],
        threshold: 0.0,
        verdict,
    }
}

/// Realignment (CCNR) test: `||R(ρ)||_1 > 1` certifies entanglement.
pub fn realignment_criterion(rho: &DensityMatrix, tol: f64) -> CriterionResult {
    let norm = trace_norm(&realign(rho));
    CriterionResult {
        name: REALIGNMENT,
        statistics: vec![("trace_norm", norm)],
        threshold: 1.0,
        verdict: if norm > 1.0 + tol {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        },
    }
}

/// Positions (row, col) allowed to be non-zero in the two-qubit X class.
const XCLASS_SUPPORT: [(usize, usize); 5] = [(0, 0), (0, 3), (2, 2), (3, 0), (3, 3)];

/// Largest modulus among the entries that must vanish in the X class.
pub fn xclass_deviation(m: &ComplexMatrix) -> f64 {
    let mut dev: f64 = 0.0;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !XCLASS_SUPPORT.contains(&(i, j)) {
                dev = dev.max(m.get(i, j).norm());
            }
        }
    }
    dev
}

/// Closed-form eigenvalues of `ρ^{T_B}` for an X-class state, in the order
/// `ρ11, ρ44, ρ33/2 ± ½√(ρ33² + 4|ρ14|²)`.
pub fn xstate_pt_eigenvalues(r11: f64, r33: f64, r44: f64, r14_abs: f64) -> [f64; 4] {
    let root = (r33 * r33 + 4.0 * r14_abs * r14_abs).sqrt();
    [r11, r44, 0.5 * r33 + 0.5 * root, 0.5 * r33 - 0.5 * root]
}

/// State-dependent lower bound on `||R(ρ)||_1` for X-class states:
/// `2√(ρ11 ρ44) + √(-ρ33 (ρ33/2 - ½√(ρ33² + 4|ρ14|²)))`.
pub fn xstate_rhs(r11: f64, r33: f64, r44: f64, r14_abs: f64) -> f64 {
    let inner = -r33 * (0.5 * r33 - 0.5 * (r33 * r33 + 4.0 * r14_abs * r14_abs).sqrt());
    2.0 * (r11 * r44).max(0.0).sqrt() + inner.max(0.0).sqrt()
}

/// Necessary-and-sufficient realignment test for the two-qubit X class
/// (non-zero entries only at (1,1), (1,4), (3,3), (4,1), (4,4)).
///
/// Entangled when `||R(ρ)||_1 >= rhs - tol` and `|ρ14| > tol`. The bound
/// alone also holds for some product X-states with `ρ14 = 0`, so the
/// coherence is required as well; `λ4 < 0` exactly when `ρ14 != 0`.
pub fn xstate_theorem1(rho: &DensityMatrix, tol: f64) -> Result<CriterionResult> {
    let dims = rho.dims();
    if (dims.d_a(), dims.d_b()) != (2, 2) {
        return Err(Error::UnsupportedDims {
            expected: "2x2",
            d_a: dims.d_a(),
            d_b: dims.d_b(),
        });
    }
    let deviation = xclass_deviation(rho.matrix());
    if deviation > tol {
        return Err(Error::NotXClass { deviation });
    }
    let r11 = rho.get(0, 0).re;
    let r33 = rho.get(2, 2).re;
    let r44 = rho.get(3, 3).re;
    let r14 = rho.get(0, 3).norm();

    let lhs = trace_norm(&realign(rho));
    let rhs = xstate_rhs(r11, r33, r44, r14);
    let [l1, l2, l3, l4] = xstate_pt_eigenvalues(r11, r33, r44, r14);
    let verdict = if lhs >= rhs - tol && r14 > tol {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(CriterionResult {
        name: XSTATE,
        statistics: vec![
            ("lhs", lhs),
            ("rhs", rhs),
            ("abs_rho14", r14),
            ("lambda1", l1),
            ("lambda2", l2),
            ("lambda3", l3),
            ("lambda4", l4),
        ],
        threshold: rhs,
        verdict,
    })
}

/// Minimum-singular-value test for `d x d` states: separable states satisfy
/// `s_min(R(ρ)) < 1/d²`, so `s_min >= 1/d²` certifies entanglement.
pub fn min_singular_criterion(rho: &DensityMatrix, tol: f64) -> Result<CriterionResult> {
    let dims = rho.dims();
    let d = dims.square().ok_or(Error::NotSquareDims {
        d_a: dims.d_a(),
        d_b: dims.d_b(),
    })?;
    let threshold = 1.0 / (d * d) as f64;
    let s_min = min_singular_value(&realign(rho));
    Ok(CriterionResult {
        name: MIN_SINGULAR,
        statistics: vec![("s_min", s_min)],
        threshold,
        verdict: if s_min >= threshold + tol {
            Verdict::Entangled
        } else {
            Verdict::Inconclusive
        },
    })
}

/// Identity-mixing weight that makes `(1-p) ρ^{T_B} + p I/d²` positive for
/// every state, given that PT eigenvalues never drop below -1/2.
pub fn spa_mixing_weight(d: usize) -> f64 {
    let d2 = (d * d) as f64;
    d2 / (d2 + 2.0)
}

/// Structural physical approximation of the partial transpose,
/// `(1-p) ρ^{T_B} + p I/d²` with `p = d²/(d²+2)`.
pub fn spa_pt(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let d = dims.square().ok_or(Error::NotSquareDims {
        d_a: dims.d_a(),
        d_b: dims.d_b(),
    })?;
    let p = spa_mixing_weight(d);
    let n = d * d;
    let pt = partial_transpose(rho);
    let mixed = ComplexMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { p / n as f64 } else { 0.0 };
        pt.get(i, j) * (1.0 - p) + Complex64::new(id, 0.0)
    });
    validate_density_matrix(mixed, dims, STATE_TOL)
}

/// The parabola `q(x) = x² + A x + 1` in `x = λ_min` of the SPA-PT state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolaWitness {
    /// `A = 2(1 - 2 d² s_min)`.
    pub a: f64,
    /// `A² - 4`.
    pub discriminant: f64,
    /// `(-A/2, (4 - A²)/4)`.
    pub vertex: (f64, f64),
    pub lambda_min: f64,
    /// `q(lambda_min)`.
    pub q_at_lambda: f64,
    /// `q(lambda_min) < 0`.
    pub inside: bool,
}

pub fn quadratic_witness(s_min: f64, d: usize, lambda_min: f64) -> ParabolaWitness {
    let d2 = (d * d) as f64;
    let a = 2.0 * (1.0 - 2.0 * d2 * s_min);
    let q = lambda_min * lambda_min + a * lambda_min + 1.0;
    ParabolaWitness {
        a,
        discriminant: a * a - 4.0,
        vertex: (-a / 2.0, (4.0 - a * a) / 4.0),
        lambda_min,
        q_at_lambda: q,
        inside: q < 0.0,
    }
}

/// All applicable criteria plus the combined verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub results: Vec<CriterionResult>,
    pub overall: Verdict,
}

impl Evaluation {
    pub fn get(&self, name: &str) -> Option<&CriterionResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

/// Runs ppt, realignment, min_singular (square dims only) and the X-class
/// test (X-class 2x2 states only), in that order.
pub fn evaluate_all(rho: &DensityMatrix, tol: f64) -> Evaluation {
    let mut results = vec![ppt_criterion(rho, tol), realignment_criterion(rho, tol)];
    if let Ok(r) = min_singular_criterion(rho, tol) {
        results.push(r);
    }
    if let Ok(r) = xstate_theorem1(rho, tol) {
        results.push(r);
    }
    let overall = if results.iter().any(|r| r.verdict == Verdict::Entangled) {
        Verdict::Entangled
    } else if results
        .iter()
        .any(|r| r.verdict == Verdict::SeparableCertified)
    {
        Verdict::SeparableCertified
    } else {
        Verdict::Inconclusive
    };
    Evaluation { results, overall }
}
