//! Built-in state families and seeded random ensembles.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::qstate::{validate_density_matrix, BipartiteDims, DensityMatrix, STATE_TOL};

const WEIGHT_SUM_TOL: f64 = 1e-12;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn dims(d_a: usize, d_b: usize) -> Result<BipartiteDims> {
    BipartiteDims::new(d_a, d_b)
}

/// Two-qubit X-class state with non-zero entries at (1,1), (1,4), (3,3),
/// (4,1), (4,4).
pub fn make_xstate(r11: f64, r33: f64, r44: f64, r14: Complex64) -> Result<DensityMatrix> {
    for (name, value) in [("r11", r11), ("r33", r33), ("r44", r44)] {
        if value.is_nan() || value < 0.0 {
            return Err(Error::ParamOutOfRange {
                name,
                value,
                allowed: "must be non-negative",
            });
        }
    }
    if !r14.re.is_finite() || !r14.im.is_finite() {
        return Err(Error::BadParam("r14 must be finite".into()));
    }
    let sum = r11 + r33 + r44;
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::TraceConstraintViolated { sum });
    }
    let coherence = r14.norm_sqr();
    if coherence > r11 * r44 {
        // Smaller eigenvalue of the {|00>, |11>} corner block.
        let min_eigenvalue = 0.5 * ((r11 + r44) - ((r11 - r44).powi(2) + 4.0 * coherence).sqrt());
        return Err(Error::NotPsd { min_eigenvalue });
    }
    let zero = c(0.0);
    #[rustfmt::skip]
    let data = vec![
        c(r11),     zero, zero,   r14,
        zero,       zero, zero,   zero,
        zero,       zero, c(r33), zero,
        r14.conj(), zero, zero,   c(r44),
    ];
    let m = ComplexMatrix::new(4, 4, data)?;
    validate_density_matrix(m, dims(2, 2)?, STATE_TOL)
}

/// X-state `(5/8, 1/8, 1/4, 1/32)`.
pub fn rho1() -> DensityMatrix {
    make_xstate(5.0 / 8.0, 1.0 / 8.0, 1.0 / 4.0, c(1.0 / 32.0)).expect("valid constant state")
}

/// X-state `(7/12, 1/6, 1/4, 1/28)`, the global factor 1/2 already applied.
pub fn rho2() -> DensityMatrix {
    make_xstate(7.0 / 12.0, 1.0 / 6.0, 1.0 / 4.0, c(1.0 / 28.0)).expect("valid constant state")
}

/// 3x3 family with diagonal weights `(2+6f)/24` on `|ii>`, `(1-f)/8` on
/// `|ij>` (i != j), and coherences `(9f-1)/24` between every pair of `|ii>`.
/// Separable for `f <= 1/3`.
pub fn make_horodecki_f(f: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::ParamOutOfRange {
            name: "f",
            value: f,
            allowed: "0 <= f <= 1",
        });
    }
    let diag_same = (2.0 + 6.0 * f) / 24.0;
    let diag_cross = (1.0 - f) / 8.0;
    let coherence = (9.0 * f - 1.0) / 24.0;
    let m = ComplexMatrix::from_fn(9, 9, |r, col| {
        let (i, j) = (r / 3, r % 3);
        let (k, l) = (col / 3, col % 3);
        let value = if r == col {
            if i == j {
                diag_same
            } else {
                diag_cross
            }
        } else if i == j && k == l {
            coherence
        } else {
            0.0
        };
        c(value)
    });
    validate_density_matrix(m, dims(3, 3)?, STATE_TOL)
}

/// `ρ_β = (2/7)|ψ+><ψ+| + (β/7) σ+ + ((5-β)/7) σ-` on 3x3, with
/// `σ+ = (|01><01| + |12><12| + |20><20|)/3` and
/// `σ- = (|10><10| + |21><21| + |02><02|)/3`.
///
/// Separable for `β <= 3`, PPT-entangled for `3 < β <= 4`, NPT above.
pub fn make_horodecki_beta(beta: f64) -> Result<DensityMatrix> {
    if !(2.0..=5.0).contains(&beta) {
        return Err(Error::ParamOutOfRange {
            name: "beta",
            value: beta,
            allowed: "2 <= beta <= 5",
        });
    }
    let psi = max_entangled_vector(3);
    let mut m = ComplexMatrix::outer(&psi).scale(2.0 / 7.0);
    let mut diag = [0.0; 9];
    for i in 0..3 {
        let up = (i + 1) % 3;
        diag[i * 3 + up] += beta / 21.0;
        diag[up * 3 + i] += (5.0 - beta) / 21.0;
    }
    m = &m + &ComplexMatrix::from_diagonal(&diag);
    validate_density_matrix(m, dims(3, 3)?, STATE_TOL)
}

fn max_entangled_vector(d: usize) -> Vec<Complex64> {
    let amp = 1.0 / (d as f64).sqrt();
    (0..d * d)
        .map(|k| if k / d == k % d { c(amp) } else { c(0.0) })
        .collect()
}

/// Projector onto `(1/√d) Σ |ii>`.
pub fn make_max_entangled(d: usize) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::ParamOutOfRange {
            name: "d",
            value: d as f64,
            allowed: "d >= 2",
        });
    }
    validate_density_matrix(
        ComplexMatrix::outer(&max_entangled_vector(d)),
        dims(d, d)?,
        STATE_TOL,
    )
}

fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Uniformly random unit vector in `C^n`.
pub fn random_pure_vector(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-random `n x n` unitary: Gram-Schmidt on the columns of a complex
/// Ginibre matrix.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| complex_gaussian(rng)).collect();
        // Two passes of modified Gram-Schmidt keep the columns orthonormal
        // to working precision.
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, qi) in v.iter_mut().zip(q) {
                    *x -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `ρ = G G† / tr(G G†)` with `G` a `(d_A d_B)`-square complex Ginibre matrix
/// drawn from a ChaCha8 stream seeded by `seed`.
pub fn random_ginibre_state(d_a: usize, d_b: usize, seed: u64) -> Result<DensityMatrix> {
    let dims = dims(d_a, d_b)?;
    let n = dims.total();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = ComplexMatrix::from_fn(n, n, |_, _| complex_gaussian(&mut rng));
    let gg = &g * &g.adjoint();
    let trace = gg.trace().re;
    // Mirror the upper triangle so the result is exactly Hermitian.
    let m = ComplexMatrix::from_fn(n, n, |i, j| {
        let z = if i <= j {
            gg.get(i, j)
        } else {
            gg.get(j, i).conj()
        };
        let z = z / trace;
        if i == j {
            c(z.re)
        } else {
            z
        }
    });
    validate_density_matrix(m, dims, STATE_TOL)
}

/// `Σ_i p_i |a_i><a_i| ⊗ |b_i><b_i|` with Haar-random local pure states and
/// flat-Dirichlet weights (normalized exponential draws).
pub fn random_separable_state(
    d_a: usize,
    d_b: usize,
    k: usize,
    seed: u64,
) -> Result<DensityMatrix> {
    let dims = dims(d_a, d_b)?;
    if k < 1 {
        return Err(Error::ParamOutOfRange {
            name: "k",
            value: k as f64,
            allowed: "k >= 1",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..k)
        .map(|_| rng.sample::<f64, _>(Exp1).max(f64::MIN_POSITIVE))
        .collect();
    let total: f64 = raw.iter().sum();
    let n = dims.total();
    let mut m = ComplexMatrix::zeros(n, n);
    for w in raw {
        let a = random_pure_vector(d_a, &mut rng);
        let b = random_pure_vector(d_b, &mut rng);
        let ab: Vec<Complex64> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x * y))
            .collect();
        m = &m + &ComplexMatrix::outer(&ab).scale(w / total);
    }
    validate_density_matrix(m, dims, STATE_TOL)
}

/// Random valid X-class state: flat-Dirichlet diagonal weights, `|ρ14|`
/// uniform in `[0, √(ρ11 ρ44)]`, uniform phase. One draw in eight is
/// diagonal (`ρ14 = 0`), the only separable members of the class.
pub fn random_xstate(seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w: [f64; 3] = std::array::from_fn(|_| rng.sample::<f64, _>(Exp1));
    let total: f64 = w.iter().sum();
    let (r11, r33) = (w[0] / total, w[1] / total);
    let r44 = 1.0 - r11 - r33;
    let radius = if rng.random_ratio(1, 8) {
        0.0
    } else {
        (r11 * r44).sqrt() * rng.random::<f64>()
    };
    let phase = 2.0 * PI * rng.random::<f64>();
    make_xstate(r11, r33, r44.max(0.0), Complex64::from_polar(radius, phase))
        .expect("sampled inside the PSD region")
}

/// Parameterized descriptor for every built-in family.
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    XState {
        r11: f64,
        r33: f64,
        r44: f64,
        r14: Complex64,
    },
    Rho1,
    Rho2,
    HorodeckiF {
        f: f64,
    },
    HorodeckiBeta {
        beta: f64,
    },
    MaxEntangled {
        d: usize,
    },
    Ginibre {
        d_a: usize,
        d_b: usize,
        seed: u64,
    },
    RandomSeparable {
        d_a: usize,
        d_b: usize,
        k: usize,
        seed: u64,
    },
}

/// CLI names of the families, in declaration order.
pub const FAMILY_NAMES: [&str; 8] = [
    "x-state",
    "rho1",
    "rho2",
    "horodecki-f",
    "horodecki-beta",
    "max-entangled",
    "ginibre",
    "random-separable",
];

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::XState { .. } => "x-state",
            FamilySpec::Rho1 => "rho1",
            FamilySpec::Rho2 => "rho2",
            FamilySpec::HorodeckiF { .. } => "horodecki-f",
            FamilySpec::HorodeckiBeta { .. } => "horodecki-beta",
            FamilySpec::MaxEntangled { .. } => "max-entangled",
            FamilySpec::Ginibre { .. } => "ginibre",
            FamilySpec::RandomSeparable { .. } => "random-separable",
        }
    }

    /// Parameter keys accepted by the family, in canonical order.
    pub fn param_keys(name: &str) -> Result<&'static [&'static str]> {
        Ok(match name {
            "x-state" => &["r11", "r33", "r44", "re14", "im14"],
            "rho1" | "rho2" => &[],
            "horodecki-f" => &["f"],
            "horodecki-beta" => &["beta"],
            "max-entangled" => &["d"],
            "ginibre" => &["da", "db", "seed"],
            "random-separable" => &["da", "db", "k", "seed"],
            other => return Err(Error::UnknownFamily(other.to_string())),
        })
    }

    /// Builds a spec from a family name and `key=value` pairs. `im14`
    /// defaults to 0; every other key is required.
    pub fn from_params(name: &str, params: &[(String, String)]) -> Result<Self> {
        let keys = Self::param_keys(name)?;
        for (k, _) in params {
            if !keys.contains(&k.as_str()) {
                return Err(Error::BadParam(format!(
                    "unknown parameter '{k}' for {name}"
                )));
            }
        }
        let lookup = |key: &str| {
            params
                .iter()
                .rev()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
        };
        let real = |key: &str| -> Result<f64> {
            let raw = lookup(key)
                .ok_or_else(|| Error::BadParam(format!("missing parameter '{key}' for {name}")))?;
            raw.trim()
                .parse::<f64>()
                .map_err(|_| Error::BadParam(format!("parameter '{key}' is not a number: {raw}")))
        };
        let int = |key: &str| -> Result<u64> {
            let raw = lookup(key)
                .ok_or_else(|| Error::BadParam(format!("missing parameter '{key}' for {name}")))?;
            raw.trim().parse::<u64>().map_err(|_| {
                Error::BadParam(format!(
                    "parameter '{key}' is not a non-negative integer: {raw}"
                ))
            })
        };
        Ok(match name {
            "x-state" => FamilySpec::XState {
                r11: real("r11")?,
                r33: real("r33")?,
                r44: real("r44")?,
                r14: Complex64::new(
                    real("re14")?,
                    if lookup("im14").is_some() {
                        real("im14")?
                    } else {
                        0.0
                    },
                ),
            },
            "rho1" => FamilySpec::Rho1,
            "rho2" => FamilySpec::Rho2,
            "horodecki-f" => FamilySpec::HorodeckiF { f: real("f")? },
            "horodecki-beta" => FamilySpec::HorodeckiBeta {
                beta: real("beta")?,
            },
            "max-entangled" => FamilySpec::MaxEntangled {
                d: int("d")? as usize,
            },
            "ginibre" => FamilySpec::Ginibre {
                d_a: int("da")? as usize,
                d_b: int("db")? as usize,
                seed: int("seed")?,
            },
            "random-separable" => FamilySpec::RandomSeparable {
                d_a: int("da")? as usize,
                d_b: int("db")? as usize,
                k: int("k")? as usize,
                seed: int("seed")?,
            },
            _ => unreachable!("param_keys rejected unknown names"),
        })
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        match *self {
            FamilySpec::XState { r11, r33, r44, r14 } => make_xstate(r11, r33, r44, r14),
            FamilySpec::Rho1 => Ok(rho1()),
            FamilySpec::Rho2 => Ok(rho2()),
            FamilySpec::HorodeckiF { f } => make_horodecki_f(f),
            FamilySpec::HorodeckiBeta { beta } => make_horodecki_beta(beta),
            FamilySpec::MaxEntangled { d } => make_max_entangled(d),
            FamilySpec::Ginibre { d_a, d_b, seed } => random_ginibre_state(d_a, d_b, seed),
            FamilySpec::RandomSeparable { d_a, d_b, k, seed } => {
                random_separable_state(d_a, d_b, k, seed)
            }
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::XState { r11, r33, r44, r14 } => write!(
                f,
                "x-state(r11={r11}, r33={r33}, r44={r44}, re14={}, im14={})",
                r14.re, r14.im
            ),
            FamilySpec::Rho1 | FamilySpec::Rho2 => f.write_str(self.name()),
            FamilySpec::HorodeckiF { f: p } => write!(f, "horodecki-f(f={p})"),
            FamilySpec::HorodeckiBeta { beta } => write!(f, "horodecki-beta(beta={beta})"),
            FamilySpec::MaxEntangled { d } => write!(f, "max-entangled(d={d})"),
            FamilySpec::Ginibre { d_a, d_b, seed } => {
                write!(f, "ginibre(da={d_a}, db={d_b}, seed={seed})")
            }
            FamilySpec::RandomSeparable { d_a, d_b, k, seed } => {
                write!(
                    f,
                    "random-separable(da={d_a}, db={d_b}, k={k}, seed={seed})"
                )
            }
        }
    }
}
