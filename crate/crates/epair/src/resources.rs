//! Quantum-resource quantifiers: bipartition enumeration, generalized
//! concurrence (genuine multipartite entanglement), linear-metric and
//! relative-entropy coherence, the structural separability certificate, and
//! the invariant combination of entanglement and coherence.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{dephase, von_neumann_entropy, DensityMatrix, MultiPartyPureState, Party};
use crate::relativity::DegeneracyFlags;

/// A two-block partition of `n` parties in canonical form: part A contains
/// party 0, both parts are nonempty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bipartition {
    mask: u64,
    n: u8,
}

impl Bipartition {
    /// Party indices in part A (always contains index 0).
    pub fn part_a(&self) -> Vec<usize> {
        (0..self.n as usize)
            .filter(|i| self.mask & (1 << i) != 0)
            .collect()
    }

    /// Party indices in part B.
    pub fn part_b(&self) -> Vec<usize> {
        (0..self.n as usize)
            .filter(|i| self.mask & (1 << i) == 0)
            .collect()
    }

    pub fn parties(&self) -> usize {
        self.n as usize
    }

    /// Unordered part sizes (min, max); n = 8 yields the classes 1|7, 2|6,
    /// 3|5, 4|4.
    pub fn size_class(&self) -> (usize, usize) {
        let a = self.mask.count_ones() as usize;
        let b = self.n as usize - a;
        (a.min(b), a.max(b))
    }

    /// The smaller part as a set of indices (part A on ties).
    pub fn smaller_part(&self) -> Vec<usize> {
        let a = self.part_a();
        let b = self.part_b();
        if a.len() <= b.len() {
            a
        } else {
            b
        }
    }

    /// True if one side of the bipartition is exactly `indices`.
    pub fn separates(&self, indices: &[usize]) -> bool {
        let mut m = 0u64;
        for &i in indices {
            m |= 1 << i;
        }
        let full = (1u64 << self.n) - 1;
        self.mask == m || self.mask == full ^ m
    }

    /// Human-readable form "A|B" using party names.
    pub fn label(&self, parties: &[Party]) -> String {
        let names = |idx: Vec<usize>| {
            idx.iter()
                .map(|&i| parties[i].name().to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{}|{}", names(self.part_a()), names(self.part_b()))
    }
}

/// All 2^(n-1) - 1 canonical bipartitions of `n` parties, in ascending mask
/// order (deterministic).
pub fn enumerate_bipartitions(n: usize) -> Result<Vec<Bipartition>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "bipartitions need at least 2 parties, got {n}"
        )));
    }
    if n > 24 {
        return Err(Error::Domain(format!(
            "bipartition enumeration over {n} parties is not supported"
        )));
    }
    let full = (1u64 << n) - 1;
    let mut out = Vec::with_capacity((1usize << (n - 1)) - 1);
    let mut mask = 1u64;
    while mask < full {
        out.push(Bipartition { mask, n: n as u8 });
        mask += 2; // keep bit 0 set: canonical part A contains party 0
    }
    Ok(out)
}

/// Generalized concurrence of a pure state: the minimum over bipartitions of
/// sqrt(2 L(ρ_part)).
#[derive(Debug, Clone)]
pub struct GmeResult {
    /// min over bipartitions of sqrt(2 L).
    pub value: f64,
    /// First bipartition attaining the minimum, in enumeration order.
    pub argmin: Bipartition,
    /// Linear entropy of every canonical bipartition, in enumeration order.
    pub entropies: Vec<(Bipartition, f64)>,
}

impl GmeResult {
    pub fn entropy_of(&self, b: &Bipartition) -> Option<f64> {
        self.entropies
            .iter()
            .find(|(bp, _)| bp == b)
            .map(|(_, e)| *e)
    }
}

/// Evaluates the generalized concurrence of `state` over all canonical
/// bipartitions. Dimension-1 parties stay in the lattice: a factorized party
/// pins the minimum (and hence the measure) at zero.
pub fn gme(state: &MultiPartyPureState) -> Result<GmeResult> {
    let n = state.parties().len();
    let bipartitions = enumerate_bipartitions(n)?;
    let mut entropies = Vec::with_capacity(bipartitions.len());
    let mut min_entropy = f64::INFINITY;
    let mut argmin = bipartitions[0];
    for bp in bipartitions {
        // For a pure global state both reductions have the same spectrum;
        // evaluate the smaller side.
        let entropy = state.reduced_linear_entropy(&bp.smaller_part())?;
        if entropy < min_entropy {
            min_entropy = entropy;
            argmin = bp;
        }
        entropies.push((bp, entropy));
    }
    Ok(GmeResult {
        value: (2.0 * min_entropy.max(0.0)).sqrt(),
        argmin,
        entropies,
    })
}

/// Linear-metric coherence ‖ρ - ρ_diag‖² = Tr ρ² - Tr ρ_diag², i.e. the sum of
/// squared moduli of the off-diagonal entries in the stored value basis.
pub fn coherence_linear(rho: &DensityMatrix) -> f64 {
    let d = rho.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += rho.entry(i, j).norm_sqr();
            }
        }
    }
    acc
}

/// Relative entropy of coherence S(ρ_diag) - S(ρ) >= 0.
pub fn coherence_relative_entropy(rho: &DensityMatrix) -> Result<f64> {
    let dephased = dephase(rho);
    Ok((von_neumann_entropy(&dephased)? - von_neumann_entropy(rho)?).max(0.0))
}

/// One branch of a product decomposition restricted to some parties: a
/// classical weight and a normalized pure state per party.
#[derive(Debug, Clone)]
pub struct ProductBranch {
    pub weight: f64,
    pub party_states: Vec<Vec<Complex64>>,
}

/// Outcome of the structural separability certificate.
#[derive(Debug, Clone, Copy)]
pub struct SeparabilityCheck {
    pub separable: bool,
    /// Max entrywise deviation between ρ and the reconstructed mixture.
    pub max_deviation: f64,
}

/// Tolerance of the separability reconstruction.
pub const SEPARABILITY_TOLERANCE: f64 = 1e-10;

/// Certifies that `rho` equals the fully separable mixture
/// Σ_k w_k ⊗_i |φ_{k,i}⟩⟨φ_{k,i}| reconstructed from the given branches.
///
/// A reduction of a two-branch state whose traced-out part distinguishes the
/// branches has exactly this form; a pure entangled reduction retains coherent
/// cross terms and fails the comparison.
pub fn separability_structure_check(
    rho: &DensityMatrix,
    branches: &[ProductBranch],
) -> Result<SeparabilityCheck> {
    let dims: Vec<usize> = rho.parties().iter().map(Party::dim).collect();
    let d = rho.dim();
    for branch in branches {
        if branch.party_states.len() != dims.len() {
            return Err(Error::InvalidState(
                "branch does not cover every party of the state".into(),
            ));
        }
        for (states, &dim) in branch.party_states.iter().zip(&dims) {
            if states.len() != dim {
                return Err(Error::InvalidState(format!(
                    "branch party state has dimension {} instead of {dim}",
                    states.len()
                )));
            }
        }
    }
    let mut max_deviation = 0.0f64;
    let mut digits_i = vec![0usize; dims.len()];
    let mut digits_j = vec![0usize; dims.len()];
    for i in 0..d {
        decompose(&dims, i, &mut digits_i);
        for j in 0..d {
            decompose(&dims, j, &mut digits_j);
            let mut acc = Complex64::new(0.0, 0.0);
            for branch in branches {
                let mut term = Complex64::new(branch.weight, 0.0);
                for (k, states) in branch.party_states.iter().enumerate() {
                    term *= states[digits_i[k]] * states[digits_j[k]].conj();
                }
                acc += term;
            }
            max_deviation = max_deviation.max((rho.entry(i, j) - acc).norm());
        }
    }
    Ok(SeparabilityCheck {
        separable: max_deviation <= SEPARABILITY_TOLERANCE,
        max_deviation,
    })
}

fn decompose(dims: &[usize], flat: usize, digits: &mut [usize]) {
    let mut rem = flat;
    for i in (0..dims.len()).rev() {
        digits[i] = rem % dims[i];
        rem /= dims[i];
    }
}

/// The invariant combination (E₄ + E₈) / sqrt(1 - (C₊ + C₋)).
pub fn invariant_combination(e4: f64, e8: f64, c_plus: f64, c_minus: f64) -> Result<f64> {
    for (name, v) in [("e4", e4), ("e8", e8), ("c_plus", c_plus), ("c_minus", c_minus)] {
        if !v.is_finite() {
            return Err(Error::Domain(format!("{name} must be finite, got {v}")));
        }
    }
    let coherence_sum = c_plus + c_minus;
    if coherence_sum >= 1.0 {
        return Err(Error::Domain(format!(
            "coherence sum {coherence_sum} must stay below 1"
        )));
    }
    Ok((e4 + e8) / (1.0 - coherence_sum).sqrt())
}

/// Closed-form predictions attached to a [`ResourceReport`].
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct Predictions {
    /// sin 2φ
    pub e4: f64,
    /// sin 2φ cos Ω
    pub e8: f64,
    /// ½ sin²Ω
    pub spin_coherence: f64,
    /// sin 2φ
    pub invariant: f64,
}

/// Linear entropy of one bipartition of the boosted state, with its closed
/// form when the scenario is nondegenerate.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BipartitionEntropy {
    pub part_a: Vec<String>,
    pub size_class: (usize, usize),
    pub entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<f64>,
}

/// Every quantity the pair scenario produces for one parameter point.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ResourceReport {
    pub phi: f64,
    pub theta: f64,
    pub beta: f64,
    pub beta_v: f64,
    pub alpha: f64,
    pub mass: f64,
    /// Signed Wigner angle extracted from the transform matrix.
    pub omega: f64,
    pub cos_omega: f64,
    /// cos Ω from the closed form of the boost parameters.
    pub cos_omega_closed_form: f64,
    /// Generalized concurrence of the 4-party lab reduction.
    pub e4_lab: f64,
    /// Generalized concurrence of the full 8-party lab state (zero: the
    /// energy and x-momentum parties factorize).
    pub e8_lab: f64,
    /// Largest single-party coherence in the lab frame (zero).
    pub lab_coherence_max: f64,
    /// Generalized concurrence of the 8-party boosted state.
    pub e8_boosted: f64,
    /// σ_z coherence of the boosted electron spin.
    pub coherence_minus: f64,
    /// σ_z coherence of the boosted positron spin.
    pub coherence_plus: f64,
    /// Largest single-party momentum coherence in the boosted frame (zero).
    pub momentum_coherence_max: f64,
    pub invariant_lab: f64,
    /// Boosted-frame invariant (E₄' + E₈')/sqrt(1 - (C₊' + C₋')) with E₄' = 0
    /// by the separability certificate; absent outside the nondegenerate
    /// regime where that certificate applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_boosted: Option<f64>,
    /// The frame-independent invariant value (lab evaluation).
    pub invariant_value: f64,
    pub argmin_bipartition: String,
    pub per_bipartition_entropies: Vec<BipartitionEntropy>,
    pub predictions: Predictions,
    /// Worst deviation from the closed forms; absent when the comparisons are
    /// skipped (degenerate boost).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_deviation: Option<f64>,
    pub degeneracy: DegeneracyFlags,
    pub notes: Vec<String>,
}
