//! Multi-party pure states over value-labeled bases, density operators,
//! partial trace, entropies, and dephasing.
//!
//! Every degree of freedom ("party") carries an ordered list of real value
//! labels; basis vectors with distinct labels are orthonormal by construction
//! and labels closer than the merge tolerance are identified. Spin parties use
//! the fixed labels {0, 1} with σ_z|s⟩ = (-1)^s |s⟩.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Labels closer than this are treated as the same basis vector.
pub const MERGE_TOLERANCE: f64 = 1e-9;

/// Unit-norm / unit-trace tolerance.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Eigenvalues of a density matrix above this negative floor are clamped to
/// zero; anything lower is a hard numerical failure.
pub const EIGENVALUE_FLOOR: f64 = -1e-9;

/// An ordered list of distinct real value labels for one party.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueBasis {
    labels: Vec<f64>,
    merge_eps: f64,
}

impl ValueBasis {
    fn new(merge_eps: f64) -> Self {
        Self {
            labels: Vec::new(),
            merge_eps,
        }
    }

    /// Index of `label`, inserting it if no stored label lies within the
    /// merge tolerance.
    fn intern(&mut self, label: f64) -> usize {
        match self.index_of(label) {
            Some(i) => i,
            None => {
                self.labels.push(label);
                self.labels.len() - 1
            }
        }
    }

    pub fn index_of(&self, label: f64) -> Option<usize> {
        self.labels
            .iter()
            .position(|&l| (l - label).abs() <= self.merge_eps)
    }

    pub fn labels(&self) -> &[f64] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn merge_eps(&self) -> f64 {
        self.merge_eps
    }
}

/// A named degree of freedom together with its value basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Party {
    name: String,
    basis: ValueBasis,
}

impl Party {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &ValueBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// One term of a superposition: a coefficient and one value label per party.
#[derive(Debug, Clone)]
pub struct Branch {
    pub coefficient: Complex64,
    pub labels: Vec<f64>,
}

impl Branch {
    pub fn new(coefficient: Complex64, labels: Vec<f64>) -> Self {
        Self {
            coefficient,
            labels,
        }
    }
}

/// A normalized pure state over named parties, stored as a dense amplitude
/// tensor in row-major order (first party slowest).
#[derive(Debug, Clone)]
pub struct MultiPartyPureState {
    parties: Vec<Party>,
    amps: Vec<Complex64>,
}

impl MultiPartyPureState {
    /// Builds a state from superposition branches.
    ///
    /// Each party's basis is defined by the distinct labels (within the merge
    /// tolerance) appearing across branches, indexed in order of first
    /// appearance; parties whose labels coincide across all branches end up
    /// with dimension 1. The amplitude tensor is the coefficient sum over
    /// branches, normalized at the end.
    pub fn from_branches(names: &[&str], branches: &[Branch]) -> Result<Self> {
        Self::from_branches_with_eps(names, branches, MERGE_TOLERANCE)
    }

    pub fn from_branches_with_eps(
        names: &[&str],
        branches: &[Branch],
        merge_eps: f64,
    ) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidState("no parties given".into()));
        }
        if branches.is_empty() {
            return Err(Error::InvalidState("no branches given".into()));
        }
        if branches.iter().all(|b| b.coefficient.norm_sqr() == 0.0) {
            return Err(Error::InvalidState("all branch coefficients are zero".into()));
        }
        let mut parties: Vec<Party> = names
            .iter()
            .map(|n| Party {
                name: (*n).to_string(),
                basis: ValueBasis::new(merge_eps),
            })
            .collect();
        let mut indexed: Vec<(Complex64, Vec<usize>)> = Vec::with_capacity(branches.len());
        for branch in branches {
            if branch.labels.len() != names.len() {
                return Err(Error::InvalidState(format!(
                    "branch supplies {} labels for {} parties",
                    branch.labels.len(),
                    names.len()
                )));
            }
            let idx: Vec<usize> = branch
                .labels
                .iter()
                .zip(parties.iter_mut())
                .map(|(&label, party)| party.basis.intern(label))
                .collect();
            indexed.push((branch.coefficient, idx));
        }
        let dims: Vec<usize> = parties.iter().map(Party::dim).collect();
        let total: usize = dims.iter().product();
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        for (coefficient, idx) in indexed {
            amps[flat_index(&dims, &idx)] += coefficient;
        }
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq < 1e-24 {
            return Err(Error::InvalidState(
                "branches cancel to the zero vector".into(),
            ));
        }
        let norm = norm_sq.sqrt();
        for a in &mut amps {
            *a /= norm;
        }
        Ok(Self { parties, amps })
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    pub fn party_index(&self, name: &str) -> Result<usize> {
        self.parties
            .iter()
            .position(|p| p.name == name)
            .ok_or_else(|| Error::UnknownParty(name.to_string()))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.parties.iter().map(Party::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.parties.iter().map(Party::dim).product()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// The projector |ψ⟩⟨ψ| as a density matrix over all parties.
    pub fn projector(&self) -> DensityMatrix {
        let d = self.dim();
        let mut mat = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for j in 0..d {
                mat[i * d + j] = self.amps[i] * self.amps[j].conj();
            }
        }
        DensityMatrix {
            parties: self.parties.clone(),
            dim: d,
            mat,
        }
    }

    /// Traces out every party not listed in `keep` (state order is preserved
    /// regardless of the order of `keep`). Keeping every party returns the
    /// projector onto the state.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = normalize_keep(keep, self.parties.len())?;
        if keep.len() == self.parties.len() {
            return Ok(self.projector());
        }
        let dims = self.dims();
        let (rows, cols, row_dims) = split_strides(&dims, &keep);
        let mut m = vec![Complex64::new(0.0, 0.0); rows * cols];
        for (flat, amp) in self.amps.iter().enumerate() {
            let (r, c) = split_index(&dims, &keep, flat);
            m[r * cols + c] += amp;
        }
        let mut mat = vec![Complex64::new(0.0, 0.0); rows * rows];
        for i in 0..rows {
            for j in 0..=i {
                let mut acc = Complex64::new(0.0, 0.0);
                for b in 0..cols {
                    acc += m[i * cols + b] * m[j * cols + b].conj();
                }
                mat[i * rows + j] = acc;
                mat[j * rows + i] = acc.conj();
            }
        }
        let parties: Vec<Party> = keep.iter().map(|&k| self.parties[k].clone()).collect();
        debug_assert_eq!(row_dims.iter().product::<usize>(), rows);
        DensityMatrix::new(parties, mat)
    }

    pub fn partial_trace_by_name(&self, names: &[&str]) -> Result<DensityMatrix> {
        let keep: Vec<usize> = names
            .iter()
            .map(|n| self.party_index(n))
            .collect::<Result<_>>()?;
        self.partial_trace(&keep)
    }

    /// Linear entropy 1 - Tr ρ² of the reduced state over `keep`, computed
    /// without materializing a validated density matrix (the bipartition
    /// minimization calls this once per bipartition).
    pub fn reduced_linear_entropy(&self, keep: &[usize]) -> Result<f64> {
        let keep = normalize_keep(keep, self.parties.len())?;
        if keep.len() == self.parties.len() {
            return Ok(0.0);
        }
        let dims = self.dims();
        let (rows, cols, _) = split_strides(&dims, &keep);
        let mut m = vec![Complex64::new(0.0, 0.0); rows * cols];
        for (flat, amp) in self.amps.iter().enumerate() {
            let (r, c) = split_index(&dims, &keep, flat);
            m[r * cols + c] += amp;
        }
        let mut purity = 0.0;
        for i in 0..rows {
            for j in 0..=i {
                let mut acc = Complex64::new(0.0, 0.0);
                for b in 0..cols {
                    acc += m[i * cols + b] * m[j * cols + b].conj();
                }
                purity += if i == j {
                    acc.norm_sqr()
                } else {
                    2.0 * acc.norm_sqr()
                };
            }
        }
        Ok((1.0 - purity).max(0.0))
    }
}

fn flat_index(dims: &[usize], idx: &[usize]) -> usize {
    let mut flat = 0;
    for (d, i) in dims.iter().zip(idx) {
        flat = flat * d + i;
    }
    flat
}

fn normalize_keep(keep: &[usize], n: usize) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::InvalidState("empty keep set".into()));
    }
    let mut sorted: Vec<usize> = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() {
        return Err(Error::InvalidState("duplicate party in keep set".into()));
    }
    if let Some(&bad) = sorted.iter().find(|&&k| k >= n) {
        return Err(Error::UnknownParty(format!("party index {bad}")));
    }
    Ok(sorted)
}

/// Row/column dimensions of the amplitude matrix whose rows are the kept
/// parties and whose columns are the traced ones.
fn split_strides(dims: &[usize], keep: &[usize]) -> (usize, usize, Vec<usize>) {
    let mut rows = 1;
    let mut cols = 1;
    let mut row_dims = Vec::with_capacity(keep.len());
    for (i, &d) in dims.iter().enumerate() {
        if keep.binary_search(&i).is_ok() {
            rows *= d;
            row_dims.push(d);
        } else {
            cols *= d;
        }
    }
    (rows, cols, row_dims)
}

fn split_index(dims: &[usize], keep: &[usize], flat: usize) -> (usize, usize) {
    let mut rem = flat;
    let mut digits = vec![0usize; dims.len()];
    for i in (0..dims.len()).rev() {
        digits[i] = rem % dims[i];
        rem /= dims[i];
    }
    let mut r = 0;
    let mut c = 0;
    for (i, &d) in dims.iter().enumerate() {
        if keep.binary_search(&i).is_ok() {
            r = r * d + digits[i];
        } else {
            c = c * d + digits[i];
        }
    }
    (r, c)
}

/// A Hermitian, unit-trace operator over a subset of parties, stored dense in
/// the parties' value bases.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    parties: Vec<Party>,
    dim: usize,
    mat: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity and unit trace (positivity is checked spectrally
    /// where it is consumed; see [`DensityMatrix::eigenvalues`]).
    pub fn new(parties: Vec<Party>, mat: Vec<Complex64>) -> Result<Self> {
        let dim: usize = parties.iter().map(Party::dim).product();
        if mat.len() != dim * dim {
            return Err(Error::InvalidState(format!(
                "matrix has {} entries for dimension {dim}",
                mat.len()
            )));
        }
        if mat.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
            return Err(Error::InvalidState("non-finite matrix entry".into()));
        }
        let mut herm_dev = 0.0f64;
        for i in 0..dim {
            for j in 0..=i {
                herm_dev = herm_dev.max((mat[i * dim + j] - mat[j * dim + i].conj()).norm());
            }
        }
        if herm_dev > NORM_TOLERANCE {
            return Err(Error::Precision {
                context: "density matrix is not Hermitian".into(),
                violation: herm_dev,
                tolerance: NORM_TOLERANCE,
            });
        }
        let trace: Complex64 = (0..dim).map(|i| mat[i * dim + i]).sum();
        if (trace.re - 1.0).abs() > NORM_TOLERANCE || trace.im.abs() > NORM_TOLERANCE {
            return Err(Error::Precision {
                context: "density matrix trace differs from one".into(),
                violation: (trace - Complex64::new(1.0, 0.0)).norm(),
                tolerance: NORM_TOLERANCE,
            });
        }
        Ok(Self { parties, dim, mat })
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    pub fn party_index(&self, name: &str) -> Result<usize> {
        self.parties
            .iter()
            .position(|p| p.name() == name)
            .ok_or_else(|| Error::UnknownParty(name.to_string()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.mat[i * self.dim + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.mat
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entry(i, i)).sum()
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        // Hermitian: Tr ρ² = Σ |ρ_ij|².
        self.mat.iter().map(|e| e.norm_sqr()).sum()
    }

    /// Traces out every party not in `keep` (indices into this matrix's party
    /// list; the kept parties keep their relative order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep = normalize_keep(keep, self.parties.len())?;
        if keep.len() == self.parties.len() {
            return Ok(self.clone());
        }
        let dims: Vec<usize> = self.parties.iter().map(Party::dim).collect();
        let (rows, cols, _) = split_strides(&dims, &keep);
        let mut out = vec![Complex64::new(0.0, 0.0); rows * rows];
        for i in 0..self.dim {
            let (ri, ci) = split_index(&dims, &keep, i);
            for j in 0..self.dim {
                let (rj, cj) = split_index(&dims, &keep, j);
                if ci == cj {
                    out[ri * rows + rj] += self.entry(i, j);
                }
            }
        }
        debug_assert_eq!(cols * rows, self.dim);
        let parties: Vec<Party> = keep.iter().map(|&k| self.parties[k].clone()).collect();
        DensityMatrix::new(parties, out)
    }

    pub fn partial_trace_by_name(&self, names: &[&str]) -> Result<DensityMatrix> {
        let keep: Vec<usize> = names
            .iter()
            .map(|n| self.party_index(n))
            .collect::<Result<_>>()?;
        self.partial_trace(&keep)
    }

    /// Real diagonal in the stored value basis.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.entry(i, i).re).collect()
    }

    /// Eigenvalues of the Hermitian matrix, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat, self.dim)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()
            .first()
            .copied()
            .unwrap_or(0.0)
    }
}

/// Zeroes all off-diagonal entries of `rho` in its stored value basis (the
/// dephasing map of unrevealed measurements). Idempotent and trace-preserving.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    let d = rho.dim();
    let mut mat = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        mat[i * d + i] = Complex64::new(rho.entry(i, i).re, 0.0);
    }
    DensityMatrix {
        parties: rho.parties.clone(),
        dim: d,
        mat,
    }
}

/// Linear entropy 1 - Tr ρ² ∈ [0, 1 - 1/d].
pub fn linear_entropy(rho: &DensityMatrix) -> f64 {
    (1.0 - rho.purity()).max(0.0)
}

/// Von Neumann entropy -Σ λ ln λ with 0 ln 0 = 0.
///
/// Eigenvalues in [-1e-9, 0) are clamped to zero; anything more negative is a
/// numerical failure.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let mut s = 0.0;
    for lambda in rho.eigenvalues() {
        if lambda < EIGENVALUE_FLOOR {
            return Err(Error::NumericalFailure(format!(
                "density matrix eigenvalue {lambda} below {EIGENVALUE_FLOOR}"
            )));
        }
        if lambda > 0.0 {
            s -= lambda * lambda.ln();
        }
    }
    Ok(s)
}

/// Eigenvalues of a Hermitian matrix via the real symmetric embedding
/// [[Re A, -Im A], [Im A, Re A]], whose spectrum is that of A with every
/// multiplicity doubled, followed by cyclic Jacobi sweeps.
pub(crate) fn hermitian_eigenvalues(mat: &[Complex64], n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let m = 2 * n;
    let mut a = vec![0.0f64; m * m];
    for i in 0..n {
        for j in 0..n {
            let e = mat[i * n + j];
            a[i * m + j] = e.re;
            a[i * m + (n + j)] = -e.im;
            a[(n + i) * m + j] = e.im;
            a[(n + i) * m + (n + j)] = e.re;
        }
    }
    jacobi_symmetric_eigenvalues(&mut a, m)
        .into_iter()
        .step_by(2)
        .collect()
}

/// Cyclic Jacobi eigenvalue iteration for a dense symmetric matrix. Returns
/// the eigenvalues in ascending order.
fn jacobi_symmetric_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    let scale = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .fold(0.0f64, |acc, (i, j)| acc.max(a[i * n + j].abs()))
        .max(1.0);
    let tol = 1e-15 * scale;
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off = off.max(a[i * n + j].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    eig
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn two_branch_state(eta: f64, xi: f64, theta: f64) -> MultiPartyPureState {
        // The lab-frame branch pattern over (P0-, Px-, Pz-, S-, P0+, Px+, Pz+, S+).
        let p = 0.75;
        let p0 = 1.25;
        MultiPartyPureState::from_branches(
            &["P0-", "Px-", "Pz-", "S-", "P0+", "Px+", "Pz+", "S+"],
            &[
                Branch::new(c(eta, 0.0), vec![p0, 0.0, p, 0.0, p0, 0.0, -p, 0.0]),
                Branch::new(
                    c(xi, 0.0) * Complex64::from_polar(1.0, theta),
                    vec![p0, 0.0, -p, 1.0, p0, 0.0, p, 1.0],
                ),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_branch_is_a_pure_product() {
        let state = MultiPartyPureState::from_branches(
            &["a", "b"],
            &[Branch::new(c(2.0, 1.0), vec![0.3, -0.7])],
        )
        .unwrap();
        assert_eq!(state.dims(), vec![1, 1]);
        assert_abs_diff_eq!(state.norm_sqr(), 1.0, epsilon = 1e-12);
        let rho = state.partial_trace(&[0]).unwrap();
        assert_abs_diff_eq!(rho.purity(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn pair_branches_collapse_shared_labels() {
        let state = two_branch_state(0.6, 0.8, 0.0);
        assert_eq!(state.dims(), vec![1, 1, 2, 2, 1, 1, 2, 2]);
        assert_abs_diff_eq!(state.norm_sqr(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn identical_branches_merge_to_global_phase() {
        let state = MultiPartyPureState::from_branches(
            &["a", "b"],
            &[
                Branch::new(c(0.5, 0.0), vec![1.0, 2.0]),
                Branch::new(c(0.0, 0.5), vec![1.0 + 1e-12, 2.0]),
            ],
        )
        .unwrap();
        assert_eq!(state.dim(), 1);
        assert_abs_diff_eq!(state.amplitudes()[0].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn cancelling_branches_are_rejected() {
        let err = MultiPartyPureState::from_branches(
            &["a"],
            &[
                Branch::new(c(0.5, 0.0), vec![1.0]),
                Branch::new(c(-0.5, 0.0), vec![1.0]),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvalidState(_)));
    }

    #[test]
    fn construction_error_cases() {
        assert!(MultiPartyPureState::from_branches(&["a"], &[]).is_err());
        assert!(MultiPartyPureState::from_branches(
            &["a", "b"],
            &[Branch::new(c(1.0, 0.0), vec![0.0])]
        )
        .is_err());
        assert!(MultiPartyPureState::from_branches(
            &["a"],
            &[Branch::new(c(0.0, 0.0), vec![0.0])]
        )
        .is_err());
    }

    #[test]
    fn reduced_pair_state_is_the_branch_mixture() {
        let (eta, xi) = (0.6, 0.8);
        let state = two_branch_state(eta, xi, 0.3);
        let rho = state.partial_trace_by_name(&["Pz-"]).unwrap();
        assert_eq!(rho.dim(), 2);
        assert_abs_diff_eq!(rho.entry(0, 0).re, eta * eta, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.entry(1, 1).re, xi * xi, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.entry(0, 1).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sequential_partial_traces_agree() {
        let state = two_branch_state(0.6, 0.8, 1.1);
        let via_pair = state
            .partial_trace_by_name(&["Pz-", "S-"])
            .unwrap()
            .partial_trace_by_name(&["S-"])
            .unwrap();
        let direct = state.partial_trace_by_name(&["S-"]).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(
                    (via_pair.entry(i, j) - direct.entry(i, j)).norm(),
                    0.0,
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn unknown_party_is_reported() {
        let state = two_branch_state(0.6, 0.8, 0.0);
        assert!(matches!(
            state.partial_trace_by_name(&["nope"]),
            Err(Error::UnknownParty(_))
        ));
    }

    #[test]
    fn full_keep_returns_projector() {
        let state = two_branch_state(0.6, 0.8, 0.0);
        let all: Vec<usize> = (0..8).collect();
        let rho = state.partial_trace(&all).unwrap();
        assert_abs_diff_eq!(rho.purity(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(linear_entropy(&rho), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn linear_entropy_reference_values() {
        let state = two_branch_state(0.6, 0.8, 0.0);
        // diag(η², ξ²) has 1 - η⁴ - ξ⁴ = 2η²ξ² = sin²(2φ)/2.
        let rho = state.partial_trace_by_name(&["Pz-"]).unwrap();
        let eta2 = 0.36;
        let xi2 = 0.64;
        assert_abs_diff_eq!(linear_entropy(&rho), 2.0 * eta2 * xi2, epsilon = 1e-12);

        let half = c(0.5, 0.0);
        let mixed = DensityMatrix::new(
            rho.parties().to_vec(),
            vec![half, c(0.0, 0.0), c(0.0, 0.0), half],
        )
        .unwrap();
        assert_abs_diff_eq!(linear_entropy(&mixed), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn von_neumann_reference_values() {
        let state = two_branch_state(0.6, 0.8, 0.0);
        let parties = state.partial_trace_by_name(&["S-"]).unwrap().parties().to_vec();
        let pure = DensityMatrix::new(
            parties.clone(),
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&pure).unwrap(), 0.0, epsilon = 1e-12);

        let half = DensityMatrix::new(
            parties.clone(),
            vec![c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        assert_abs_diff_eq!(
            von_neumann_entropy(&half).unwrap(),
            std::f64::consts::LN_2,
            epsilon = 1e-12
        );

        // diag(1/4, 3/4): -Σ λ ln λ = (1/4)ln4 + (3/4)ln(4/3).
        let skew = DensityMatrix::new(
            parties,
            vec![c(0.25, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.75, 0.0)],
        )
        .unwrap();
        assert_abs_diff_eq!(
            von_neumann_entropy(&skew).unwrap(),
            0.5623351446188083,
            epsilon = 1e-12
        );
    }

    #[test]
    fn dephase_removes_off_diagonals_and_is_idempotent() {
        let state = two_branch_state(0.6, 0.8, 0.0);
        let parties = state.partial_trace_by_name(&["S-"]).unwrap().parties().to_vec();
        let rho = DensityMatrix::new(
            parties,
            vec![c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0)],
        )
        .unwrap();
        let dephased = dephase(&rho);
        assert_abs_diff_eq!(dephased.entry(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(dephased.entry(0, 1).norm(), 0.0, epsilon = 1e-15);
        let twice = dephase(&dephased);
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(
                    (twice.entry(i, j) - dephased.entry(i, j)).norm(),
                    0.0,
                    epsilon = 1e-15
                );
            }
        }
        // A diagonal matrix is a fixed point.
        let diag = dephase(&dephased);
        assert_abs_diff_eq!(
            (0..4).map(|k| (diag.entries()[k] - dephased.entries()[k]).norm()).sum::<f64>(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn hermitian_eigenvalues_reference_spectra() {
        // σ_x: eigenvalues ±1.
        let sx = vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let eig = hermitian_eigenvalues(&sx, 2);
        assert_abs_diff_eq!(eig[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig[1], 1.0, epsilon = 1e-12);

        // [[2, i], [-i, 2]]: eigenvalues 1 and 3.
        let h = vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)];
        let eig = hermitian_eigenvalues(&h, 2);
        assert_abs_diff_eq!(eig[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig[1], 3.0, epsilon = 1e-12);

        // Unitary conjugation of a known diagonal leaves the spectrum fixed.
        let phases = [0.3f64, 1.1, 2.4];
        let d = [0.2f64, 0.3, 0.5];
        let mut u = vec![c(0.0, 0.0); 9];
        // Product of a real rotation and phase column scalings: columns stay
        // orthonormal.
        let (s, co) = 0.7f64.sin_cos();
        let base = [
            [co, -s, 0.0],
            [s * 0.6, co * 0.6, -0.8],
            [s * 0.8, co * 0.8, 0.6],
        ];
        for i in 0..3 {
            for j in 0..3 {
                u[i * 3 + j] = Complex64::from_polar(base[i][j], phases[j]);
            }
        }
        let mut m = vec![c(0.0, 0.0); 9];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = c(0.0, 0.0);
                for (k, dk) in d.iter().enumerate() {
                    acc += u[i * 3 + k] * dk * u[j * 3 + k].conj();
                }
                m[i * 3 + j] = acc;
            }
        }
        let eig = hermitian_eigenvalues(&m, 3);
        for (got, want) in eig.iter().zip([0.2, 0.3, 0.5]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn density_matrix_validation() {
        let state = two_branch_state(0.6, 0.8, 0.0);
        let parties = state.partial_trace_by_name(&["S-"]).unwrap().parties().to_vec();
        // Non-Hermitian.
        assert!(DensityMatrix::new(
            parties.clone(),
            vec![c(0.5, 0.0), c(0.1, 0.0), c(0.3, 0.0), c(0.5, 0.0)],
        )
        .is_err());
        // Wrong trace.
        assert!(DensityMatrix::new(
            parties,
            vec![c(0.9, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)],
        )
        .is_err());
    }
}
