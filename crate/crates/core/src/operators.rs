//! Dense ladder-operator matrices on the number basis and checkers for the
//! deformed algebra.
//!
//! Convention: `M[(row, col)] = ⟨row|M|col⟩`. Annihilators therefore live on
//! the first superdiagonal (`a[(n-1, n)] = √n`), creators on the first
//! subdiagonal, and number-like operators on the diagonal.
//!
//! A basis of `dim` levels is the physical bound basis when
//! `dim == num_bound`; the creator then maps the top level to zero. With
//! `dim == num_bound + 1` the extra "ghost" level lets products such as
//! `AA†` act on the top level with the true `f(top+1)` before projection.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use libm::sqrt;
use num_complex::Complex64;

use crate::spectrum::{f_squared, TrapParams};
use crate::{Error, Result, DENSE_LIMIT};

/// Levels over which the algebra checkers work when the bound basis is larger.
pub const CHECK_WINDOW: usize = 256;

/// Levels `n = 0..Q_RELATION_LEVELS` audited by [`q_relation_residual`].
pub const Q_RELATION_LEVELS: usize = 5;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Square complex matrix over a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    entries: Vec<Complex64>,
    label: String,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize, label: impl Into<String>) -> Self {
        Self { dim, entries: vec![ZERO; dim * dim], label: label.into() }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal((0..dim).map(|_| 1.0), "I")
    }

    pub fn from_diagonal(values: impl IntoIterator<Item = f64>, label: impl Into<String>) -> Self {
        let values: Vec<f64> = values.into_iter().collect();
        let mut m = Self::zeros(values.len(), label);
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, Complex64::new(v, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Matrix product. Zero entries of `self` are skipped, which makes
    /// products of band matrices cost `O(dim²)`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d, format!("{}·{}", self.label, other.label));
        for i in 0..d {
            for k in 0..d {
                let lhs = self.entries[i * d + k];
                if lhs == ZERO {
                    continue;
                }
                let row = &other.entries[k * d..(k + 1) * d];
                let dst = &mut out.entries[i * d..(i + 1) * d];
                for (o, r) in dst.iter_mut().zip(row) {
                    if *r != ZERO {
                        *o += lhs * r;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b, "+")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b, "-")
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64, sym: &str) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| op(*a, *b)).collect(),
            label: format!("({}{sym}{})", self.label, other.label),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
            label: format!("{factor}·{}", self.label),
        }
    }

    /// `[self, other] = self·other - other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self)).with_label(format!("[{},{}]", self.label, other.label))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d, format!("{}†", self.label));
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        out
    }

    /// `M·v`.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok(self
            .entries
            .chunks(self.dim.max(1))
            .take(self.dim)
            .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
            .collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn row_max_abs(&self, row: usize) -> f64 {
        self.entries[row * self.dim..(row + 1) * self.dim].iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Leading `size × size` block.
    pub fn block(&self, size: usize) -> Self {
        assert!(size <= self.dim);
        let mut out = Self::zeros(size, self.label.clone());
        for i in 0..size {
            out.entries[i * size..(i + 1) * size].copy_from_slice(&self.entries[i * self.dim..i * self.dim + size]);
        }
        out
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }
}

/// Boson annihilator, creator and number operator on `dim` levels.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonOps {
    pub a: OperatorMatrix,
    pub a_dag: OperatorMatrix,
    pub n_hat: OperatorMatrix,
}

/// `a|n⟩ = √n|n-1⟩`, `a†|n⟩ = √(n+1)|n+1⟩` (zero on the last level), `n̂ = diag(0..dim)`.
pub fn build_boson_ops(dim: usize) -> Result<BosonOps> {
    if dim == 0 {
        return Err(Error::Domain { what: "basis dimension must be at least 1", value: 0.0 });
    }
    let mut a = OperatorMatrix::zeros(dim, "a");
    for n in 1..dim {
        a.set(n - 1, n, Complex64::new(sqrt(n as f64), 0.0));
    }
    let a_dag = a.adjoint().with_label("a†");
    let n_hat = OperatorMatrix::from_diagonal((0..dim).map(|n| n as f64), "n");
    Ok(BosonOps { a, a_dag, n_hat })
}

/// Deformed annihilator and creator on the first `dim` levels.
///
/// `A[(n-1, n)] = f(n)√n`. `dim` may exceed the bound count by one (ghost level).
pub fn deformed_block(params: &TrapParams, dim: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    if dim == 0 || dim > params.num_bound() + 1 {
        return Err(Error::LevelOutOfRange { n: dim, max: params.num_bound() + 1 });
    }
    if dim > DENSE_LIMIT + 1 {
        return Err(Error::TooManyLevels { levels: dim, limit: DENSE_LIMIT + 1 });
    }
    let mut a = OperatorMatrix::zeros(dim, "A");
    for n in 1..dim {
        let amp = sqrt(f_squared(params, n)? * n as f64);
        a.set(n - 1, n, Complex64::new(amp, 0.0));
    }
    let a_dag = a.adjoint().with_label("A†");
    Ok((a, a_dag))
}

/// `A` and `A†` on the physical bound basis (`A†|top⟩ = 0`).
pub fn build_deformed_ops(params: &TrapParams) -> Result<(OperatorMatrix, OperatorMatrix)> {
    if params.num_bound() > DENSE_LIMIT {
        return Err(Error::TooManyLevels { levels: params.num_bound(), limit: DENSE_LIMIT });
    }
    deformed_block(params, params.num_bound())
}

/// `A` and `A†` with one ghost level above the top bound state.
pub fn build_deformed_ops_ghost(params: &TrapParams) -> Result<(OperatorMatrix, OperatorMatrix)> {
    if params.num_bound() > DENSE_LIMIT {
        return Err(Error::TooManyLevels { levels: params.num_bound(), limit: DENSE_LIMIT });
    }
    deformed_block(params, params.num_bound() + 1)
}

/// Residual of an operator identity, split into interior rows and the
/// truncation boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraResidual {
    /// Maximum over `per_index`.
    pub max_abs_residual: f64,
    /// Row residual for every checked interior level.
    pub per_index: Vec<(usize, f64)>,
    /// Always `true`: `per_index` never includes the projected top level.
    pub interior_only: bool,
    /// Residual on the physical top level, present when the check basis
    /// reaches it. Reflects the `A†|top⟩ = 0` projection.
    pub boundary: Option<(usize, f64)>,
    /// Residual of the relations that hold on the full truncated matrix
    /// (`[n̂, A] = -A`, `[n̂, A†] = A†` and their su(2) images).
    pub shift_residual: f64,
}

impl AlgebraResidual {
    fn from_rows(per_index: Vec<(usize, f64)>, boundary: Option<(usize, f64)>, shift_residual: f64) -> Self {
        let max_abs_residual = per_index.iter().map(|&(_, r)| r).fold(0.0, f64::max);
        Self { max_abs_residual, per_index, interior_only: true, boundary, shift_residual }
    }
}

/// Levels the checkers build and which of them are interior.
struct CheckBasis {
    dim: usize,
    interior: usize,
    boundary: Option<usize>,
}

fn check_basis(params: &TrapParams, window: usize) -> CheckBasis {
    let nb = params.num_bound();
    if nb <= window {
        CheckBasis { dim: nb, interior: nb - 1, boundary: Some(nb - 1) }
    } else {
        // one extra genuine bound level makes rows 0..window exact
        CheckBasis { dim: window + 1, interior: window, boundary: None }
    }
}

fn number_op(dim: usize) -> OperatorMatrix {
    OperatorMatrix::from_diagonal((0..dim).map(|n| n as f64), "n")
}

/// Checks `[A, A†] = η - (2n̂+1)/N` on interior levels plus `[n̂, A] = -A`
/// and `[n̂, A†] = A†` on the whole checked block.
pub fn check_deformed_commutator(params: &TrapParams) -> Result<AlgebraResidual> {
    let basis = check_basis(params, CHECK_WINDOW);
    let (a, a_dag) = deformed_block(params, basis.dim)?;
    let n_hat = number_op(basis.dim);
    let target = OperatorMatrix::from_diagonal(
        (0..basis.dim).map(|n| params.eta() - (2 * n + 1) as f64 * params.gamma()),
        "η-(2n+1)/N",
    );
    let defect = a.commutator(&a_dag).sub(&target);
    let per_index = (0..basis.interior).map(|n| (n, defect.row_max_abs(n))).collect();
    let boundary = basis.boundary.map(|top| (top, defect.row_max_abs(top)));
    let shift = n_hat.commutator(&a).add(&a).max_abs().max(n_hat.commutator(&a_dag).sub(&a_dag).max_abs());
    Ok(AlgebraResidual::from_rows(per_index, boundary, shift))
}

/// Row residual of `P·Q - Q·P - target`, relative to the size of the
/// products in that row.
fn relative_commutator_rows(
    p: &OperatorMatrix,
    q: &OperatorMatrix,
    target: &OperatorMatrix,
) -> (OperatorMatrix, Vec<f64>) {
    let pq = p.matmul(q);
    let qp = q.matmul(p);
    let defect = pq.sub(&qp).sub(target);
    let scales =
        (0..p.dim()).map(|n| pq.row_max_abs(n).max(qp.row_max_abs(n)).max(target.row_max_abs(n)).max(1.0)).collect();
    (defect, scales)
}

/// Checks the su(2) image `J₊ = √N A`, `J₋ = √N A†`, `J₀ = s - n̂`.
///
/// `[J₀, J₊] = J₊` and `[J₀, J₋] = -J₋` are checked on the whole block,
/// `[J₊, J₋] = 2J₀` on interior levels. The `J` entries grow like `√(N n)`,
/// so residuals are relative to the magnitude of the products in each row.
pub fn check_su2(params: &TrapParams) -> Result<AlgebraResidual> {
    let basis = check_basis(params, CHECK_WINDOW);
    let (a, a_dag) = deformed_block(params, basis.dim)?;
    let root_n = sqrt(params.n_param());
    let j_plus = a.scale(root_n).with_label("J+");
    let j_minus = a_dag.scale(root_n).with_label("J-");
    let j_zero = OperatorMatrix::from_diagonal((0..basis.dim).map(|n| params.s() - n as f64), "J0");

    let (raise, raise_scale) = relative_commutator_rows(&j_zero, &j_plus, &j_plus);
    let (lower, lower_scale) = relative_commutator_rows(&j_zero, &j_minus, &j_minus.scale(-1.0));
    let shift = (0..basis.dim)
        .map(|n| (raise.row_max_abs(n) / raise_scale[n]).max(lower.row_max_abs(n) / lower_scale[n]))
        .fold(0.0, f64::max);

    let (cross, cross_scale) = relative_commutator_rows(&j_plus, &j_minus, &j_zero.scale(2.0));
    let per_index = (0..basis.interior).map(|n| (n, cross.row_max_abs(n) / cross_scale[n])).collect();
    let boundary = basis.boundary.map(|top| (top, cross.row_max_abs(top) / cross_scale[top]));
    Ok(AlgebraResidual::from_rows(per_index, boundary, shift))
}

/// Residual of `AA† - qA†A = 1`, `q = 1 - 2/N`, on the lowest
/// [`Q_RELATION_LEVELS`] levels. Requires `N > 2`.
///
/// The relation is only approximate: on level `n` the defect is
/// `(η-1)(1+2n/N) - 1/N - 2n²/N²`, so it is `O(1/N)` for low-lying levels.
pub fn q_relation_residual(params: &TrapParams) -> Result<AlgebraResidual> {
    q_relation_residual_levels(params, Q_RELATION_LEVELS)
}

/// [`q_relation_residual`] over the lowest `levels` levels.
pub fn q_relation_residual_levels(params: &TrapParams, levels: usize) -> Result<AlgebraResidual> {
    if !(params.n_param() > 2.0) {
        return Err(Error::Domain { what: "q-deformed relation needs N > 2", value: params.n_param() });
    }
    if levels == 0 {
        return Err(Error::Domain { what: "at least one level must be audited", value: 0.0 });
    }
    let basis = check_basis(params, levels);
    let (a, a_dag) = deformed_block(params, basis.dim)?;
    let defect = a.matmul(&a_dag).sub(&a_dag.matmul(&a).scale(params.q())).sub(&OperatorMatrix::identity(basis.dim));
    let per_index = (0..basis.interior).map(|n| (n, defect.row_max_abs(n))).collect();
    let boundary = basis.boundary.map(|top| (top, defect.row_max_abs(top)));
    Ok(AlgebraResidual::from_rows(per_index, boundary, 0.0))
}

/// `H = ½(A†A + AA†)` on the physical bound basis.
///
/// Diagonal; entries below the top match the bound energies, the top entry
/// lacks the `(top+1) f²(top+1)` term removed by the projection.
pub fn hamiltonian(params: &TrapParams) -> Result<OperatorMatrix> {
    let (a, a_dag) = build_deformed_ops(params)?;
    Ok(half_anticommutator(&a, &a_dag))
}

/// `H` on the lowest `levels` bound levels, built with one extra level so
/// every returned diagonal entry is the true bound energy.
pub fn hamiltonian_block(params: &TrapParams, levels: usize) -> Result<OperatorMatrix> {
    if levels == 0 || levels > params.num_bound() {
        return Err(Error::LevelOutOfRange { n: levels, max: params.num_bound() });
    }
    let (a, a_dag) = deformed_block(params, levels + 1)?;
    Ok(half_anticommutator(&a, &a_dag).block(levels).with_label("H"))
}

/// [`hamiltonian`] evaluated through the ghost level, then projected.
pub fn hamiltonian_ghost(params: &TrapParams) -> Result<OperatorMatrix> {
    if params.num_bound() > DENSE_LIMIT {
        return Err(Error::TooManyLevels { levels: params.num_bound(), limit: DENSE_LIMIT });
    }
    hamiltonian_block(params, params.num_bound())
}

fn half_anticommutator(a: &OperatorMatrix, a_dag: &OperatorMatrix) -> OperatorMatrix {
    a_dag.matmul(a).add(&a.matmul(a_dag)).scale(0.5).with_label("H")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{energy_deformed_form, new_trap};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn boson_ops_small() {
        let ops = build_boson_ops(1).unwrap();
        assert_eq!(ops.a.get(0, 0), ZERO);
        assert_eq!(ops.n_hat.get(0, 0), ZERO);
        let ops = build_boson_ops(3).unwrap();
        assert_eq!(ops.a.get(0, 1), c(1.0));
        assert_eq!(ops.a.get(1, 2), c(sqrt(2.0)));
        assert_eq!(ops.a_dag.get(2, 1), c(sqrt(2.0)));
        assert!(build_boson_ops(0).is_err());
    }

    #[test]
    fn boson_commutator_truncation_defect() {
        let dim = 6;
        let ops = build_boson_ops(dim).unwrap();
        let comm = ops.a.commutator(&ops.a_dag);
        for i in 0..dim {
            for j in 0..dim {
                let expected = match (i == j, i == dim - 1) {
                    (true, true) => -((dim - 1) as f64),
                    (true, false) => 1.0,
                    _ => 0.0,
                };
                assert!((comm.get(i, j) - c(expected)).norm() < 1e-14, "({i},{j})");
            }
        }
    }

    #[test]
    fn deformed_ops_elements() {
        let (a, _) = build_deformed_ops(&new_trap(1.0).unwrap()).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.get(0, 0), ZERO);

        let p = new_trap(10.0).unwrap();
        let (a, a_dag) = build_deformed_ops(&p).unwrap();
        assert!((a.get(0, 1).re - sqrt(sqrt(1.01) - 0.1)).abs() < 1e-15);
        assert!((a.get(0, 1).re - 0.9513083).abs() < 1e-7);
        assert_eq!(a_dag, a.adjoint().with_label("A†"));
        assert!(a.entries().iter().all(|z| z.im == 0.0 && z.re >= 0.0));
    }

    #[test]
    fn harmonic_limit_ladder() {
        // A - a on level n is √n (f(n) - 1) ≈ -n^{3/2}/(2N)
        let p = new_trap(1e8).unwrap();
        let (a, _) = deformed_block(&p, 6).unwrap();
        let boson = build_boson_ops(6).unwrap();
        assert!(a.sub(&boson.a).max_abs() < 1e-7);
        let (a, _) = deformed_block(&p, 10).unwrap();
        let boson = build_boson_ops(10).unwrap();
        assert!(a.sub(&boson.a).max_abs() < 1.5e-7);
    }

    #[test]
    fn ghost_dimension_limits() {
        let p = new_trap(10.0).unwrap();
        assert_eq!(build_deformed_ops_ghost(&p).unwrap().0.dim(), 6);
        assert!(deformed_block(&p, 7).is_err());
        assert!(deformed_block(&p, 0).is_err());
        assert!(build_deformed_ops(&new_trap(1e5).unwrap()).is_err());
    }

    #[test]
    fn commutator_interior_and_boundary() {
        let p = new_trap(10.0).unwrap();
        let r = check_deformed_commutator(&p).unwrap();
        assert_eq!(r.per_index.len(), 4);
        assert!(r.max_abs_residual < 1e-12);
        assert!(r.shift_residual < 1e-14);
        let (top, defect) = r.boundary.unwrap();
        assert_eq!(top, 4);
        // projection removes (top+1) f²(top+1) from the top diagonal entry
        let missing = 5.0 * f_squared(&p, 5).unwrap();
        assert!((defect - missing).abs() < 1e-12);
    }

    #[test]
    fn commutator_single_level() {
        let r = check_deformed_commutator(&new_trap(2.0).unwrap()).unwrap();
        assert!(r.per_index.is_empty());
        assert_eq!(r.max_abs_residual, 0.0);
        assert!(r.interior_only);
    }

    #[test]
    fn commutator_harmonic_limit_is_identity() {
        // [A, A†] - 1 = (η - 1) - (2n+1)/N
        let p = new_trap(1e8).unwrap();
        let (a, a_dag) = deformed_block(&p, 12).unwrap();
        let comm = a.commutator(&a_dag);
        let id = OperatorMatrix::identity(12);
        for n in 0..11 {
            let dev = comm.sub(&id).row_max_abs(n);
            assert!((dev - (2 * n + 1) as f64 * 1e-8).abs() < 1e-14);
            if n <= 4 {
                assert!(dev < 1e-7);
            }
        }
        assert!(check_deformed_commutator(&p).unwrap().boundary.is_none());
    }

    #[test]
    fn su2_identities() {
        for n_param in [2.0 * sqrt(6.0), 10.0, 1e4] {
            let r = check_su2(&new_trap(n_param).unwrap()).unwrap();
            assert!(r.max_abs_residual < 1e-10, "N = {n_param}: {}", r.max_abs_residual);
            assert!(r.shift_residual < 1e-10, "N = {n_param}: {}", r.shift_residual);
        }
        let r = check_su2(&new_trap(2.0 * sqrt(6.0)).unwrap()).unwrap();
        assert_eq!(r.per_index.len(), 1);
        let r = check_su2(&new_trap(1.0).unwrap()).unwrap();
        assert_eq!(r.max_abs_residual, 0.0);
    }

    #[test]
    fn q_relation_scaling() {
        let r6 = q_relation_residual(&new_trap(1e6).unwrap()).unwrap();
        assert!(r6.max_abs_residual < 3e-6);
        let r3 = q_relation_residual(&new_trap(1e3).unwrap()).unwrap();
        assert!(r3.max_abs_residual < 3e-3);
        let r4 = q_relation_residual(&new_trap(1e4).unwrap()).unwrap();
        let ratio = r3.max_abs_residual / r4.max_abs_residual;
        assert!((ratio - 10.0).abs() < 1.0, "ratio {ratio}");
        assert!(q_relation_residual(&new_trap(2.0).unwrap()).is_err());
    }

    #[test]
    fn q_relation_matches_expansion() {
        let p = new_trap(500.0).unwrap();
        let r = q_relation_residual(&p).unwrap();
        let big = p.n_param();
        for &(n, res) in &r.per_index {
            let n = n as f64;
            let expected = p.eta_minus_one() * (1.0 + 2.0 * n / big) - 1.0 / big - 2.0 * n * n / (big * big);
            assert!((res - expected.abs()).abs() < 1e-13);
        }
    }

    #[test]
    fn hamiltonian_diagonal() {
        let p = new_trap(10.0).unwrap();
        let h = hamiltonian(&p).unwrap();
        for n in 0..p.top_level() {
            assert!((h.get(n, n).re - energy_deformed_form(&p, n).unwrap()).abs() < 1e-12);
        }
        let ghost = hamiltonian_ghost(&p).unwrap();
        for n in 0..p.num_bound() {
            assert!((ghost.get(n, n).re - energy_deformed_form(&p, n).unwrap()).abs() < 1e-12);
        }
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                if i != j {
                    assert_eq!(h.get(i, j), ZERO);
                }
            }
        }
    }

    #[test]
    fn hamiltonian_single_level() {
        let p = new_trap(1.5).unwrap();
        assert_eq!(hamiltonian(&p).unwrap().get(0, 0), ZERO);
        let ghost = hamiltonian_ghost(&p).unwrap();
        let half_f2 = 0.5 * f_squared(&p, 1).unwrap();
        assert!((ghost.get(0, 0).re - half_f2).abs() < 1e-15);
        assert!((ghost.get(0, 0).re - energy_deformed_form(&p, 0).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_harmonic_limit() {
        // E_n - (n + ½) = -(n² + n + ½)/N + O(1/N²)
        let h = hamiltonian_block(&new_trap(1e8).unwrap(), 11).unwrap();
        for n in 0..11 {
            let dev = h.get(n, n).re - (n as f64 + 0.5);
            let n_f = n as f64;
            assert!((dev + (n_f * n_f + n_f + 0.5) * 1e-8).abs() < 1e-12, "n = {n}: {dev}");
            if n < 10 {
                assert!(dev.abs() < 1e-6);
            }
        }
    }

    #[test]
    fn apply_checks_dimension() {
        let id = OperatorMatrix::identity(3);
        assert!(id.apply(&[ZERO; 2]).is_err());
        assert_eq!(id.apply(&[c(1.0), c(2.0), c(3.0)]).unwrap(), vec![c(1.0), c(2.0), c(3.0)]);
    }
}
