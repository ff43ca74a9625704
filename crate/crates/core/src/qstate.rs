//! Bipartite density matrices, partial transposition and realignment.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};

/// Default tolerance for state validation (Hermiticity, trace, PSD).
pub const STATE_TOL: f64 = 1e-9;

/// Local dimensions `(d_A, d_B)` of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BipartiteDims {
    d_a: usize,
    d_b: usize,
}

impl BipartiteDims {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a < 2 || d_b < 2 {
            return Err(Error::InvalidDims { d_a, d_b });
        }
        Ok(Self { d_a, d_b })
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    pub fn d_b(&self) -> usize {
        self.d_b
    }

    /// Side length `d_A * d_B` of the joint matrix.
    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }

    /// `Some(d)` when `d_A == d_B == d`.
    pub fn square(&self) -> Option<usize> {
        (self.d_a == self.d_b).then_some(self.d_a)
    }
}

/// Measured deviations of a candidate matrix from the density-matrix
/// invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateDiagnostics {
    pub trace_deviation: f64,
    pub hermiticity_deviation: f64,
    /// `None` when the matrix is too far from Hermitian to diagonalize.
    pub min_eigenvalue: Option<f64>,
}

/// A validated bipartite state: Hermitian, unit trace and PSD.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: BipartiteDims,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.matrix.get(i, j)
    }
}

/// Measures trace, Hermiticity and spectral deviations without judging them.
pub fn diagnose(m: &ComplexMatrix, tol: f64) -> StateDiagnostics {
    let hermiticity_deviation = m.hermiticity_deviation();
    let trace_deviation = (m.trace() - Complex64::new(1.0, 0.0)).norm();
    let min_eigenvalue = hermitian_eigenvalues(m, tol).ok().map(|s| s.min());
    StateDiagnostics {
        trace_deviation,
        hermiticity_deviation,
        min_eigenvalue,
    }
}

/// Wraps `m` as a density matrix on `dims` if it is Hermitian within `tol`,
/// has trace 1 within `tol`, and its smallest eigenvalue is at least
/// `-tol * trace`.
pub fn validate_density_matrix(
    m: ComplexMatrix,
    dims: BipartiteDims,
    tol: f64,
) -> Result<DensityMatrix> {
    let side = dims.total();
    if m.rows() != side || m.cols() != side {
        return Err(Error::DimensionMismatch {
            side: if m.is_square() {
                m.rows()
            } else {
                m.rows().max(m.cols())
            },
            d_a: dims.d_a,
            d_b: dims.d_b,
        });
    }
    let spectrum = hermitian_eigenvalues(&m, tol)?;
    let trace = m.trace();
    let deviation = (trace - Complex64::new(1.0, 0.0)).norm();
    if deviation > tol {
        return Err(Error::TraceNotOne { deviation });
    }
    let min_eigenvalue = spectrum.min();
    if min_eigenvalue < -tol * trace.re {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(DensityMatrix { dims, matrix: m })
}

/// The `d_B x d_B` block at block-row `i`, block-column `j`.
pub fn block(rho: &DensityMatrix, i: usize, j: usize) -> Result<ComplexMatrix> {
    let BipartiteDims { d_a, d_b } = rho.dims;
    if i >= d_a || j >= d_a {
        return Err(Error::IndexOutOfRange { i, j, bound: d_a });
    }
    Ok(ComplexMatrix::from_fn(d_b, d_b, |k, l| {
        rho.matrix.get(i * d_b + k, j * d_b + l)
    }))
}

fn check_side(m: &ComplexMatrix, dims: BipartiteDims) -> Result<()> {
    let side = dims.total();
    if m.rows() != side || m.cols() != side {
        return Err(Error::DimensionMismatch {
            side: m.rows(),
            d_a: dims.d_a,
            d_b: dims.d_b,
        });
    }
    Ok(())
}

/// Partial transpose on B of any `(d_A d_B)`-square matrix: every
/// `d_B x d_B` block is transposed in place.
pub fn partial_transpose_matrix(m: &ComplexMatrix, dims: BipartiteDims) -> Result<ComplexMatrix> {
    check_side(m, dims)?;
    let d_b = dims.d_b;
    Ok(ComplexMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let (i, k) = (r / d_b, r % d_b);
        let (j, l) = (c / d_b, c % d_b);
        m.get(i * d_b + l, j * d_b + k)
    }))
}

/// `ρ^{T_B}`. Hermitian with unit trace, not necessarily PSD.
pub fn partial_transpose(rho: &DensityMatrix) -> ComplexMatrix {
    partial_transpose_matrix(&rho.matrix, rho.dims).expect("validated state has matching dims")
}

/// Realignment of any `(d_A d_B)`-square matrix.
///
/// Row `i * d_A + j` of the `d_A² x d_B²` output is the row-major
/// vectorization of block `(i, j)`, so entry `((i,j),(k,l))` is
/// `m[(i,k),(j,l)]`.
pub fn realign_matrix(m: &ComplexMatrix, dims: BipartiteDims) -> Result<ComplexMatrix> {
    check_side(m, dims)?;
    let BipartiteDims { d_a, d_b } = dims;
    Ok(ComplexMatrix::from_fn(d_a * d_a, d_b * d_b, |r, c| {
        let (i, j) = (r / d_a, r % d_a);
        let (k, l) = (c / d_b, c % d_b);
        m.get(i * d_b + k, j * d_b + l)
    }))
}

/// `R(ρ)`, a `d_A² x d_B²` matrix.
pub fn realign(rho: &DensityMatrix) -> ComplexMatrix {
    realign_matrix(&rho.matrix, rho.dims).expect("validated state has matching dims")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn rho1() -> DensityMatrix {
        let m = ComplexMatrix::from_real_rows(&[
            vec![5.0 / 8.0, 0.0, 0.0, 1.0 / 32.0],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0 / 8.0, 0.0],
            vec![1.0 / 32.0, 0.0, 0.0, 1.0 / 4.0],
        ])
        .unwrap();
        validate_density_matrix(m, BipartiteDims::new(2, 2).unwrap(), STATE_TOL).unwrap()
    }

    fn bell() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = [r(s), r(0.0), r(0.0), r(s)];
        validate_density_matrix(
            ComplexMatrix::outer(&v),
            BipartiteDims::new(2, 2).unwrap(),
            STATE_TOL,
        )
        .unwrap()
    }

    fn dims22() -> BipartiteDims {
        BipartiteDims::new(2, 2).unwrap()
    }

    #[test]
    fn dims_must_be_at_least_two() {
        assert_eq!(
            BipartiteDims::new(1, 3),
            Err(Error::InvalidDims { d_a: 1, d_b: 3 })
        );
        assert_eq!(BipartiteDims::new(3, 2).unwrap().total(), 6);
        assert_eq!(BipartiteDims::new(3, 3).unwrap().square(), Some(3));
        assert_eq!(BipartiteDims::new(2, 3).unwrap().square(), None);
    }

    #[test]
    fn validation_errors_carry_measurements() {
        match validate_density_matrix(
            ComplexMatrix::identity(4).scale(0.9 / 4.0),
            dims22(),
            STATE_TOL,
        ) {
            Err(Error::TraceNotOne { deviation }) => assert!((deviation - 0.1).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let x = ComplexMatrix::from_real_rows(&[
            vec![0.1, 0.0, 0.0, 0.2],
            vec![0.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.8, 0.0],
            vec![0.2, 0.0, 0.0, 0.1],
        ])
        .unwrap();
        match validate_density_matrix(x, dims22(), STATE_TOL) {
            Err(Error::NotPsd { min_eigenvalue }) => assert!((min_eigenvalue + 0.1).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            validate_density_matrix(
                ComplexMatrix::identity(6).scale(1.0 / 6.0),
                dims22(),
                STATE_TOL
            ),
            Err(Error::DimensionMismatch { side: 6, .. })
        ));
        let skew = ComplexMatrix::from_fn(4, 4, |i, j| {
            if i == 0 && j == 1 {
                r(0.3)
            } else if i == j {
                r(0.25)
            } else {
                r(0.0)
            }
        });
        assert!(matches!(
            validate_density_matrix(skew, dims22(), STATE_TOL),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn diagnostics_report_all_three_measures() {
        let d = diagnose(
            &ComplexMatrix::from_diagonal(&[0.5, 0.6, -0.05, 0.0]),
            STATE_TOL,
        );
        assert!((d.trace_deviation - 0.05).abs() < 1e-12);
        assert_eq!(d.hermiticity_deviation, 0.0);
        assert_eq!(d.min_eigenvalue, Some(-0.05));
    }

    #[test]
    fn blocks_of_rho1() {
        let rho = rho1();
        let b00 = block(&rho, 0, 0).unwrap();
        assert_eq!(
            b00,
            ComplexMatrix::from_real_rows(&[vec![5.0 / 8.0, 0.0], vec![0.0, 0.0]]).unwrap()
        );
        let b11 = block(&rho, 1, 1).unwrap();
        assert_eq!(
            b11,
            ComplexMatrix::from_real_rows(&[vec![1.0 / 8.0, 0.0], vec![0.0, 1.0 / 4.0]]).unwrap()
        );
        assert_eq!(
            block(&rho, 2, 0),
            Err(Error::IndexOutOfRange {
                i: 2,
                j: 0,
                bound: 2
            })
        );

        let mixed =
            validate_density_matrix(ComplexMatrix::identity(4).scale(0.25), dims22(), STATE_TOL)
                .unwrap();
        assert_eq!(block(&mixed, 0, 1).unwrap(), ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn partial_transpose_of_rho1_matches_printed_matrix() {
        let expected = ComplexMatrix::from_real_rows(&[
            vec![5.0 / 8.0, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0 / 32.0, 0.0],
            vec![0.0, 1.0 / 32.0, 1.0 / 8.0, 0.0],
            vec![0.0, 0.0, 0.0, 1.0 / 4.0],
        ])
        .unwrap();
        assert_eq!(partial_transpose(&rho1()), expected);
    }

    #[test]
    fn partial_transpose_transposes_each_block() {
        let dims = BipartiteDims::new(2, 3).unwrap();
        let m = ComplexMatrix::from_fn(6, 6, |i, j| Complex64::new(i as f64, j as f64));
        let pt = partial_transpose_matrix(&m, dims).unwrap();
        for bi in 0..2 {
            for bj in 0..2 {
                for k in 0..3 {
                    for l in 0..3 {
                        assert_eq!(
                            pt.get(bi * 3 + k, bj * 3 + l),
                            m.get(bi * 3 + l, bj * 3 + k)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_state_is_fixed_by_partial_transpose() {
        let m = ComplexMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.15, 0.05, 0.2]);
        let rho = validate_density_matrix(m.clone(), BipartiteDims::new(3, 2).unwrap(), STATE_TOL)
            .unwrap();
        assert_eq!(partial_transpose(&rho), m);
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let pt = partial_transpose(&bell());
        let spec = hermitian_eigenvalues(&pt, STATE_TOL).unwrap();
        let expected = [0.5, 0.5, 0.5, -0.5];
        for (a, b) in spec.eigenvalues().iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn realignment_of_rho1_matches_printed_matrix() {
        let expected = ComplexMatrix::from_real_rows(&[
            vec![5.0 / 8.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0 / 32.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0 / 32.0, 0.0],
            vec![1.0 / 8.0, 0.0, 0.0, 1.0 / 4.0],
        ])
        .unwrap();
        assert_eq!(realign(&rho1()), expected);
    }

    #[test]
    fn realignment_of_maximally_mixed_and_bell() {
        let mixed =
            validate_density_matrix(ComplexMatrix::identity(4).scale(0.25), dims22(), STATE_TOL)
                .unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            vec![0.25, 0.0, 0.0, 0.25],
            vec![0.0; 4],
            vec![0.0; 4],
            vec![0.25, 0.0, 0.0, 0.25],
        ])
        .unwrap();
        assert_eq!(realign(&mixed), expected);

        let rb = realign(&bell());
        assert!(rb.max_abs_diff(&ComplexMatrix::identity(4).scale(0.5)) < 1e-15);
    }

    #[test]
    fn realignment_shape_for_unequal_dims() {
        let dims = BipartiteDims::new(2, 3).unwrap();
        let m = ComplexMatrix::identity(6).scale(1.0 / 6.0);
        let rm = realign_matrix(&m, dims).unwrap();
        assert_eq!((rm.rows(), rm.cols()), (4, 9));
        // Row (0,0) is vec of the top-left identity block.
        assert_eq!(rm.get(0, 0), r(1.0 / 6.0));
        assert_eq!(rm.get(0, 4), r(1.0 / 6.0));
        assert_eq!(rm.get(0, 8), r(1.0 / 6.0));
        assert_eq!(rm.get(1, 0), r(0.0));
    }

    #[test]
    fn realignment_involution_on_square_dims() {
        let dims = BipartiteDims::new(3, 3).unwrap();
        let m = ComplexMatrix::from_fn(9, 9, |i, j| {
            Complex64::new((i * 9 + j) as f64, i as f64 - j as f64)
        });
        let twice = realign_matrix(&realign_matrix(&m, dims).unwrap(), dims).unwrap();
        assert_eq!(twice, m);
    }
}
