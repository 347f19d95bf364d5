//! Bipartite density operators on d⊗d systems: validation, the partial
//! transpose and realignment rearrangements, the named example families, and
//! seeded random generators for the verification suites.
//!
//! Basis convention throughout: |ij⟩ maps to index i·d + j (subsystem A first,
//! row-major).

use std::path::Path;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matcore::{eigvals_hermitian, ComplexMatrix, MatError, HERMITICITY_TOL};
use crate::rng;

const TRACE_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("parameter {name} = {value} outside [{min}, {max}]")]
    ParameterOutOfRange { name: &'static str, value: f64, min: f64, max: f64 },
    #[error("invalid state: {invariant} (residual {residual:e})")]
    InvalidState { invariant: &'static str, residual: f64 },
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("state file i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("state file parse: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("state file: matrix shape does not match d = {d}")]
    ShapeMismatch { d: usize },
}

/// Validated density operator on a d⊗d system.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    d: usize,
    rho: ComplexMatrix,
}

impl BipartiteState {
    /// Validates Hermiticity, unit trace and positive semidefiniteness before
    /// accepting the matrix.
    pub fn new(d: usize, rho: ComplexMatrix) -> Result<Self, StateError> {
        let dim = d * d;
        if !rho.is_square() || rho.n_rows() != dim {
            return Err(StateError::ShapeMismatch { d });
        }
        if !rho.is_finite() {
            return Err(StateError::InvalidState { invariant: "finite entries", residual: f64::NAN });
        }
        let herm = rho.hermiticity_residual();
        if herm > HERMITICITY_TOL {
            return Err(StateError::InvalidState { invariant: "hermitian", residual: herm });
        }
        let tr = rho.trace();
        let tr_resid = (tr - Complex64::new(1.0, 0.0)).norm();
        if tr_resid > TRACE_TOL {
            return Err(StateError::InvalidState { invariant: "trace", residual: tr_resid });
        }
        let lam_min = eigvals_hermitian(&rho, HERMITICITY_TOL)?.min();
        let psd_floor = -1e-10 * dim as f64;
        if lam_min < psd_floor {
            return Err(StateError::InvalidState { invariant: "positive semidefinite", residual: lam_min });
        }
        Ok(Self { d, rho })
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    pub fn total_dim(&self) -> usize {
        self.d * self.d
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn purity(&self) -> f64 {
        self.rho.matmul(&self.rho).trace().re
    }

    pub fn load(path: &Path) -> Result<Self, StateError> {
        let text = std::fs::read_to_string(path)?;
        let file: StateFile = serde_json::from_str(&text)?;
        file.into_state()
    }

    pub fn save(&self, path: &Path) -> Result<(), StateError> {
        let file = StateFile::from_state(self);
        std::fs::write(path, serde_json::to_string_pretty(&file)?)?;
        Ok(())
    }
}

/// On-disk schema: d plus a d²×d² matrix of [re, im] pairs.
#[derive(Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub d: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_state(s: &BipartiteState) -> Self {
        let dim = s.total_dim();
        let matrix = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        let z = s.rho().get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self { d: s.local_dim(), matrix }
    }

    pub fn into_state(self) -> Result<BipartiteState, StateError> {
        let dim = self.d * self.d;
        if self.matrix.len() != dim || self.matrix.iter().any(|row| row.len() != dim) {
            return Err(StateError::ShapeMismatch { d: self.d });
        }
        let rho = ComplexMatrix::from_fn(dim, dim, |i, j| {
            Complex64::new(self.matrix[i][j][0], self.matrix[i][j][1])
        });
        BipartiteState::new(self.d, rho)
    }
}

/// Named example family plus its scalar parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub family: Family,
    pub parameter: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Werner,
    Mems,
    RhoA,
    RhoAlpha,
    MaxEntangled,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::Mems => "mems",
            Family::RhoA => "rho_a",
            Family::RhoAlpha => "rho_alpha",
            Family::MaxEntangled => "max_entangled",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "werner" => Some(Family::Werner),
            "mems" => Some(Family::Mems),
            "rho_a" => Some(Family::RhoA),
            "rho_alpha" => Some(Family::RhoAlpha),
            "max_entangled" => Some(Family::MaxEntangled),
            _ => None,
        }
    }

    pub fn parameter_name(&self) -> &'static str {
        match self {
            Family::Werner => "F",
            Family::Mems => "C",
            Family::RhoA => "a",
            Family::RhoAlpha => "alpha",
            Family::MaxEntangled => "d",
        }
    }

    /// Legal closed parameter interval.
    pub fn parameter_range(&self) -> (f64, f64) {
        match self {
            Family::Werner => (0.0, 1.0),
            Family::Mems => (0.0, 1.0),
            Family::RhoA => (std::f64::consts::FRAC_1_SQRT_2, 1.0),
            Family::RhoAlpha => (2.0, 5.0),
            Family::MaxEntangled => (2.0, 8.0),
        }
    }
}

impl FamilyPoint {
    pub fn construct(&self) -> Result<BipartiteState, StateError> {
        match self.family {
            Family::Werner => werner(self.parameter),
            Family::Mems => mems(self.parameter),
            Family::RhoA => rho_a(self.parameter),
            Family::RhoAlpha => rho_alpha(self.parameter),
            Family::MaxEntangled => max_entangled(self.parameter.round() as usize),
        }
    }
}

/// Set of Kraus operators acting on one subsystem.
#[derive(Debug, Clone)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// Requires at least two operators and completeness Σ K†K = I.
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self, StateError> {
        if operators.len() < 2 {
            return Err(StateError::InvalidState {
                invariant: "kraus set needs at least 2 operators",
                residual: operators.len() as f64,
            });
        }
        let d = operators[0].n_rows();
        let mut sum = ComplexMatrix::zeros(d, d);
        for k in &operators {
            sum = sum.add(&k.adjoint().matmul(k));
        }
        let resid = sum.max_abs_diff(&ComplexMatrix::identity(d));
        if resid > 1e-8 {
            return Err(StateError::InvalidState { invariant: "kraus completeness", residual: resid });
        }
        Ok(Self { operators })
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn count(&self) -> usize {
        self.operators.len()
    }
}

fn ket(dim: usize, amplitudes: &[(usize, Complex64)]) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    for &(i, a) in amplitudes {
        v[i] += a;
    }
    v
}

fn outer(v: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Transpose subsystem B: entry (i·d+j, k·d+l) ← (i·d+l, k·d+j).
pub fn partial_transpose_b(s: &BipartiteState) -> ComplexMatrix {
    let d = s.local_dim();
    ComplexMatrix::from_fn(d * d, d * d, |row, col| {
        let (i, j) = (row / d, row % d);
        let (k, l) = (col / d, col % d);
        s.rho().get(i * d + l, k * d + j)
    })
}

/// Computable-cross-norm rearrangement: entry (i·d+j, k·d+l) ← (i·d+k, j·d+l).
/// Self-inverse as an index permutation.
pub fn realignment(s: &BipartiteState) -> ComplexMatrix {
    realign_matrix(s.rho(), s.local_dim())
}

pub fn realign_matrix(m: &ComplexMatrix, d: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d * d, d * d, |row, col| {
        let (i, j) = (row / d, row % d);
        let (k, l) = (col / d, col % d);
        m.get(i * d + k, j * d + l)
    })
}

/// Two-qubit Werner state F·|ψ⁻⟩⟨ψ⁻| + (1−F)·I/4.
pub fn werner(f: f64) -> Result<BipartiteState, StateError> {
    if !(0.0..=1.0).contains(&f) {
        return Err(StateError::ParameterOutOfRange { name: "F", value: f, min: 0.0, max: 1.0 });
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let singlet = ket(4, &[(1, re(inv_sqrt2)), (2, re(-inv_sqrt2))]);
    let rho = outer(&singlet).scale_re(f).add(&ComplexMatrix::identity(4).scale_re((1.0 - f) / 4.0));
    BipartiteState::new(2, rho)
}

/// Munro MEMS state with h(C) = C/2 for C ≥ 2/3 and 1/3 below.
pub fn mems(c_param: f64) -> Result<BipartiteState, StateError> {
    if !(0.0..=1.0).contains(&c_param) {
        return Err(StateError::ParameterOutOfRange { name: "C", value: c_param, min: 0.0, max: 1.0 });
    }
    let h = if c_param >= 2.0 / 3.0 { c_param / 2.0 } else { 1.0 / 3.0 };
    let mut rho = ComplexMatrix::zeros(4, 4);
    rho.set(0, 0, re(h));
    rho.set(1, 1, re(1.0 - 2.0 * h));
    rho.set(3, 3, re(h));
    rho.set(0, 3, re(c_param / 2.0));
    rho.set(3, 0, re(c_param / 2.0));
    BipartiteState::new(2, rho)
}

/// Two-qutrit ρ_a: mixture of |0i⟩ − a|i0⟩ (i = 1, 2) and the unnormalized
/// Σ|ii⟩, scaled by 1/(5 + 2a²).
pub fn rho_a(a: f64) -> Result<BipartiteState, StateError> {
    let min = std::f64::consts::FRAC_1_SQRT_2;
    if !(min..=1.0).contains(&a) {
        return Err(StateError::ParameterOutOfRange { name: "a", value: a, min, max: 1.0 });
    }
    let d = 3;
    let psi1 = ket(9, &[(1, re(1.0)), (d, re(-a))]); // |01⟩ − a|10⟩
    let psi2 = ket(9, &[(2, re(1.0)), (2 * d, re(-a))]); // |02⟩ − a|20⟩
    let psi3 = ket(9, &[(0, re(1.0)), (4, re(1.0)), (8, re(1.0))]); // |00⟩+|11⟩+|22⟩
    let rho = outer(&psi1)
        .add(&outer(&psi2))
        .add(&outer(&psi3))
        .scale_re(1.0 / (5.0 + 2.0 * a * a));
    BipartiteState::new(3, rho)
}

/// Two-qutrit ρ_α: (2/7)|ψ⁺⟩⟨ψ⁺| + (α/7)σ₊ + ((5−α)/7)σ₋.
pub fn rho_alpha(alpha: f64) -> Result<BipartiteState, StateError> {
    if !(2.0..=5.0).contains(&alpha) {
        return Err(StateError::ParameterOutOfRange { name: "alpha", value: alpha, min: 2.0, max: 5.0 });
    }
    let s = 1.0 / 3f64.sqrt();
    let psi_plus = ket(9, &[(0, re(s)), (4, re(s)), (8, re(s))]);
    let proj = |idx: usize| {
        let mut m = ComplexMatrix::zeros(9, 9);
        m.set(idx, idx, re(1.0));
        m
    };
    // |01⟩, |12⟩, |20⟩ and |10⟩, |21⟩, |02⟩ in the i·3+j basis
    let sigma_plus = proj(1).add(&proj(5)).add(&proj(6)).scale_re(1.0 / 3.0);
    let sigma_minus = proj(3).add(&proj(7)).add(&proj(2)).scale_re(1.0 / 3.0);
    let rho = outer(&psi_plus)
        .scale_re(2.0 / 7.0)
        .add(&sigma_plus.scale_re(alpha / 7.0))
        .add(&sigma_minus.scale_re((5.0 - alpha) / 7.0));
    BipartiteState::new(3, rho)
}

/// Projector onto (1/√d) Σ|ii⟩.
pub fn max_entangled(d: usize) -> Result<BipartiteState, StateError> {
    if !(2..=8).contains(&d) {
        return Err(StateError::ParameterOutOfRange { name: "d", value: d as f64, min: 2.0, max: 8.0 });
    }
    let amp = re(1.0 / (d as f64).sqrt());
    let pairs: Vec<(usize, Complex64)> = (0..d).map(|i| (i * d + i, amp)).collect();
    let psi = ket(d * d, &pairs);
    BipartiteState::new(d, outer(&psi))
}

pub fn max_entangled_vector(d: usize) -> Vec<Complex64> {
    let amp = re(1.0 / (d as f64).sqrt());
    let pairs: Vec<(usize, Complex64)> = (0..d).map(|i| (i * d + i, amp)).collect();
    ket(d * d, pairs.as_slice())
}

fn ginibre(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut g = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            g.set(i, j, rng::complex_normal(rng));
        }
    }
    g
}

/// Induced-measure random state: GG†/tr(GG†) with G a d²×rank Ginibre draw.
pub fn random_density(d: usize, rank: usize, seed: u64) -> BipartiteState {
    assert!(rank >= 1 && rank <= d * d, "rank must be in 1..=d²");
    let mut rng = rng::substream(seed, 0);
    random_density_with(d, rank, &mut rng)
}

pub(crate) fn random_density_with(d: usize, rank: usize, rng: &mut ChaCha8Rng) -> BipartiteState {
    let g = ginibre(d * d, rank, rng);
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    let rho = gg.scale_re(1.0 / tr);
    BipartiteState::new(d, rho).expect("Ginibre construction yields a valid state")
}

fn random_local_density(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ginibre(d, d, rng);
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    gg.scale_re(1.0 / tr)
}

/// Convex mixture of random product states; separable by construction.
pub fn random_separable(d: usize, n_terms: usize, seed: u64) -> BipartiteState {
    assert!(n_terms >= 1);
    let mut rng = rng::substream(seed, 0);
    random_separable_with(d, n_terms, &mut rng)
}

pub(crate) fn random_separable_with(d: usize, n_terms: usize, rng: &mut ChaCha8Rng) -> BipartiteState {
    use rand::Rng;
    let mut weights: Vec<f64> = (0..n_terms).map(|_| rng.gen::<f64>() + 1e-6).collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let dim = d * d;
    let mut rho = ComplexMatrix::zeros(dim, dim);
    for &w in &weights {
        let a = random_local_density(d, rng);
        let b = random_local_density(d, rng);
        rho = rho.add(&a.kron(&b).scale_re(w));
    }
    BipartiteState::new(d, rho).expect("convex mixture of products is a valid state")
}

/// Haar-distributed unitary via modified Gram-Schmidt of a Ginibre matrix.
/// Gram-Schmidt yields a QR factorization whose R has a positive diagonal,
/// which is exactly the phase convention that makes Q Haar.
pub fn random_local_unitary(d: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng::substream(seed, 0);
    random_unitary_with(d, &mut rng)
}

pub(crate) fn random_unitary_with(d: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ginibre(d, d, rng);
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|j| (0..d).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..d {
        for k in 0..j {
            let dot: Complex64 = (0..d).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..d {
                let v = cols[k][i];
                cols[j][i] -= dot * v;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[j] {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(d, d, |i, j| cols[j][i])
}

/// Kraus operators from vertical d×d blocks of the first d columns of a Haar
/// unitary on dimension m·d; completeness holds by construction.
pub fn random_kraus_set(d: usize, m: usize, seed: u64) -> KrausSet {
    assert!(m >= 2);
    let mut rng = rng::substream(seed, 0);
    let u = random_unitary_with(m * d, &mut rng);
    let operators = (0..m)
        .map(|blk| ComplexMatrix::from_fn(d, d, |i, j| u.get(blk * d + i, j)))
        .collect();
    KrausSet::new(operators).expect("unitary slicing yields a complete Kraus set")
}
