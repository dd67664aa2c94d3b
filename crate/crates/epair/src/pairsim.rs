//! The electron-positron scenario: lab-frame pair state, boosted state with
//! Wigner-rotated spinors and transformed momentum labels, and the full
//! resource report with its closed-form predictions.
//!
//! Party layout (electron kets on the left): P0-, Px-, Pz-, S- for the
//! electron, then P0+, Px+, Pz+, S+ for the positron. P_a holds the a-th
//! momentum component, S the spin; the y momentum component stays uncorrelated
//! under the boosts considered here and is omitted.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::{Branch, MultiPartyPureState, MERGE_TOLERANCE};
use crate::relativity::{
    branch_momenta, wigner_angle, wigner_cos_closed_form, BoostParams, DegeneracyFlags,
    FourVector,
};
use crate::resources::{
    coherence_linear, gme, invariant_combination, BipartitionEntropy, Predictions, ProductBranch,
    ResourceReport,
};

/// Canonical party order of the 8-party pair state.
pub const PARTY_NAMES: [&str; 8] = ["P0-", "Px-", "Pz-", "S-", "P0+", "Px+", "Pz+", "S+"];

/// Parties of the entangled sector once the factorized P0/Px parts are traced
/// out.
pub const REDUCED_PARTY_NAMES: [&str; 4] = ["Pz-", "S-", "Pz+", "S+"];

/// Index of the electron spin in [`PARTY_NAMES`].
pub const SPIN_MINUS: usize = 3;

/// Index of the positron spin in [`PARTY_NAMES`].
pub const SPIN_PLUS: usize = 7;

/// Hard ceiling on closed-form deviations inside a resource report.
pub const REPORT_TOLERANCE: f64 = 1e-8;

/// Superposition angle, relative phase, particle speed and mass of the pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairConfig {
    phi: f64,
    theta: f64,
    beta_v: f64,
    mass: f64,
}

impl PairConfig {
    pub fn new(phi: f64, theta: f64, beta_v: f64, mass: f64) -> Result<Self> {
        if !phi.is_finite() || !(0.0..=std::f64::consts::FRAC_PI_2).contains(&phi) {
            return Err(Error::Domain(format!(
                "phi must lie in [0, pi/2], got {phi}"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::Domain(format!("theta must be finite, got {theta}")));
        }
        if !beta_v.is_finite() || !(0.0..=crate::relativity::BETA_MAX).contains(&beta_v) {
            return Err(Error::Domain(format!(
                "beta_v must lie in [0, 1 - 1e-12], got {beta_v}"
            )));
        }
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::Domain(format!("mass must be positive, got {mass}")));
        }
        Ok(Self {
            phi,
            theta,
            beta_v,
            mass,
        })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn beta_v(&self) -> f64 {
        self.beta_v
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// η = cos φ.
    pub fn eta(&self) -> f64 {
        self.phi.cos()
    }

    /// ξ = sin φ.
    pub fn xi(&self) -> f64 {
        self.phi.sin()
    }

    /// 𝔭 = γ_v m β_v.
    pub fn momentum(&self) -> f64 {
        crate::relativity::gamma(self.beta_v).expect("validated on construction")
            * self.mass
            * self.beta_v
    }

    /// 𝔭₀ = γ_v m.
    pub fn energy(&self) -> f64 {
        crate::relativity::gamma(self.beta_v).expect("validated on construction") * self.mass
    }

    fn branch_coefficients(&self) -> (Complex64, Complex64) {
        (
            Complex64::new(self.eta(), 0.0),
            Complex64::from_polar(self.xi(), self.theta),
        )
    }
}

/// The spinor rotation 𝔇 = exp(-i (Ω/2) n̂·σ⃗) for n̂ = ±ŷ.
#[derive(Debug, Clone, Copy)]
pub struct SpinorRotation {
    entries: [[Complex64; 2]; 2],
}

impl SpinorRotation {
    /// exp(-i (Ω/2) s σ_y) = [[cos Ω/2, -s sin Ω/2], [s sin Ω/2, cos Ω/2]].
    pub fn about_y(omega: f64, axis_sign: i8) -> Self {
        let s = f64::from(axis_sign.signum());
        let (sin_half, cos_half) = (omega / 2.0).sin_cos();
        let r = |v: f64| Complex64::new(v, 0.0);
        Self {
            entries: [
                [r(cos_half), r(-s * sin_half)],
                [r(s * sin_half), r(cos_half)],
            ],
        }
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.entries[0][0] * v[0] + self.entries[0][1] * v[1],
            self.entries[1][0] * v[0] + self.entries[1][1] * v[1],
        ]
    }

    /// Max entrywise deviation of U†U from the identity.
    pub fn unitarity_violation(&self) -> f64 {
        let e = &self.entries;
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let acc = e[0][i].conj() * e[0][j] + e[1][i].conj() * e[1][j];
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }
}

/// The rotated spin states of the momentum branch with sign `s`:
/// u^s = cos(Ω/2)|0⟩ + s sin(Ω/2)|1⟩ and v^s = -s sin(Ω/2)|0⟩ + cos(Ω/2)|1⟩.
pub fn spinor_states(omega: f64, axis_sign: i8) -> ([Complex64; 2], [Complex64; 2]) {
    let rotation = SpinorRotation::about_y(omega, axis_sign);
    let zero = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let one = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    (rotation.apply(zero), rotation.apply(one))
}

/// One physical branch of a pair state: the branch amplitude and the branch's
/// pure state on each party, expressed in that party's stored basis.
#[derive(Debug, Clone)]
pub struct StateBranch {
    pub amplitude: Complex64,
    pub party_states: Vec<Vec<Complex64>>,
}

/// A pair state together with its two-branch decomposition and boost metadata.
#[derive(Debug, Clone)]
pub struct PairState {
    pub state: MultiPartyPureState,
    pub branches: Vec<StateBranch>,
    /// Signed Wigner angle used for the spinors (0 in the lab frame).
    pub omega: f64,
    pub degeneracy: DegeneracyFlags,
}

impl PairState {
    /// The branch decomposition restricted to `keep` (state party indices),
    /// as weighted product branches for the separability certificate.
    pub fn product_branches(&self, keep: &[usize]) -> Vec<ProductBranch> {
        self.branches
            .iter()
            .map(|b| ProductBranch {
                weight: b.amplitude.norm_sqr(),
                party_states: keep.iter().map(|&k| b.party_states[k].clone()).collect(),
            })
            .collect()
    }
}

/// Momentum and spin content of one branch before basis assignment: per party
/// either a momentum label or a spinor.
enum PartyContent {
    Label(f64),
    Spinor([Complex64; 2]),
}

/// Expands physical branches (momentum labels + spinors) into label branches,
/// builds the state, and records the per-branch party states in the resulting
/// bases.
fn assemble(
    names: &[&str],
    physical: &[(Complex64, Vec<PartyContent>)],
    omega: f64,
    degeneracy: DegeneracyFlags,
) -> Result<PairState> {
    let mut label_branches = Vec::new();
    for (amplitude, contents) in physical {
        // Cartesian product over the spinor components; spin parties get the
        // fixed labels {0, 1} in order.
        let mut partial: Vec<(Complex64, Vec<f64>)> = vec![(*amplitude, Vec::new())];
        for content in contents {
            match content {
                PartyContent::Label(l) => {
                    for (_, labels) in &mut partial {
                        labels.push(*l);
                    }
                }
                PartyContent::Spinor(spinor) => {
                    let mut next = Vec::with_capacity(partial.len() * 2);
                    for (coeff, labels) in &partial {
                        for (s, component) in spinor.iter().enumerate() {
                            let mut labels = labels.clone();
                            labels.push(s as f64);
                            next.push((coeff * component, labels));
                        }
                    }
                    partial = next;
                }
            }
        }
        label_branches.extend(
            partial
                .into_iter()
                .map(|(coeff, labels)| Branch::new(coeff, labels)),
        );
    }
    let state = MultiPartyPureState::from_branches(names, &label_branches)?;
    let mut branches = Vec::with_capacity(physical.len());
    for (amplitude, contents) in physical {
        let mut party_states = Vec::with_capacity(contents.len());
        for (party, content) in state.parties().iter().zip(contents) {
            let dim = party.dim();
            let mut vector = vec![Complex64::new(0.0, 0.0); dim];
            match content {
                PartyContent::Label(l) => {
                    let idx = party.basis().index_of(*l).ok_or_else(|| {
                        Error::InvalidState(format!(
                            "label {l} missing from basis of party {}",
                            party.name()
                        ))
                    })?;
                    vector[idx] = Complex64::new(1.0, 0.0);
                }
                PartyContent::Spinor(spinor) => {
                    for (s, component) in spinor.iter().enumerate() {
                        let idx = party.basis().index_of(s as f64).ok_or_else(|| {
                            Error::InvalidState(format!(
                                "spin label {s} missing from party {}",
                                party.name()
                            ))
                        })?;
                        vector[idx] = *component;
                    }
                }
            }
            party_states.push(vector);
        }
        branches.push(StateBranch {
            amplitude: *amplitude,
            party_states,
        });
    }
    Ok(PairState {
        state,
        branches,
        omega,
        degeneracy,
    })
}

fn check_momentum_split(cfg: &PairConfig) -> Result<f64> {
    let p = cfg.momentum();
    if 2.0 * p <= MERGE_TOLERANCE {
        return Err(Error::DegenerateScenario(format!(
            "momentum labels +/-{p} merge; the pair scenario needs beta_v > 0"
        )));
    }
    Ok(p)
}

/// The lab-frame pair state over all eight parties:
/// η |𝔭₀,0,𝔭,0⟩|𝔭₀,0,-𝔭,0⟩ + ξ e^{iθ} |𝔭₀,0,-𝔭,1⟩|𝔭₀,0,𝔭,1⟩.
pub fn lab_state(cfg: &PairConfig) -> Result<PairState> {
    let p = check_momentum_split(cfg)?;
    let p0 = cfg.energy();
    let (eta, xi) = cfg.branch_coefficients();
    let spin = |s: f64| {
        let mut v = [Complex64::new(0.0, 0.0); 2];
        v[s as usize] = Complex64::new(1.0, 0.0);
        PartyContent::Spinor(v)
    };
    let branch1 = vec![
        PartyContent::Label(p0),
        PartyContent::Label(0.0),
        PartyContent::Label(p),
        spin(0.0),
        PartyContent::Label(p0),
        PartyContent::Label(0.0),
        PartyContent::Label(-p),
        spin(0.0),
    ];
    let branch2 = vec![
        PartyContent::Label(p0),
        PartyContent::Label(0.0),
        PartyContent::Label(-p),
        spin(1.0),
        PartyContent::Label(p0),
        PartyContent::Label(0.0),
        PartyContent::Label(p),
        spin(1.0),
    ];
    assemble(
        &PARTY_NAMES,
        &[(eta, branch1), (xi, branch2)],
        0.0,
        DegeneracyFlags::default(),
    )
}

/// The entangled sector of the lab state: the same two branches restricted to
/// Pz-, S-, Pz+, S+ (the traced-out P0/Px parts are shared by both branches,
/// so this reduction of the pair state is pure).
pub fn lab_state_reduced(cfg: &PairConfig) -> Result<PairState> {
    let p = check_momentum_split(cfg)?;
    let (eta, xi) = cfg.branch_coefficients();
    let spin = |s: usize| {
        let mut v = [Complex64::new(0.0, 0.0); 2];
        v[s] = Complex64::new(1.0, 0.0);
        PartyContent::Spinor(v)
    };
    let branch1 = vec![
        PartyContent::Label(p),
        spin(0),
        PartyContent::Label(-p),
        spin(0),
    ];
    let branch2 = vec![
        PartyContent::Label(-p),
        spin(1),
        PartyContent::Label(p),
        spin(1),
    ];
    assemble(
        &REDUCED_PARTY_NAMES,
        &[(eta, branch1), (xi, branch2)],
        0.0,
        DegeneracyFlags::default(),
    )
}

/// The boosted pair state: momentum labels from the boosted branch momenta
/// π^± and spinors u/v rotated by the Wigner angle of the +z branch:
/// η |π⁺,u⁺⟩|π⁻,u⁻⟩ + ξ e^{iθ} |π⁻,v⁻⟩|π⁺,v⁺⟩.
///
/// Boosts with α outside (0, π/2) are allowed; coinciding momentum components
/// merge into lower-dimensional parties and are reported in the degeneracy
/// flags.
pub fn boosted_state(cfg: &PairConfig, bp: &BoostParams) -> Result<PairState> {
    let p = check_momentum_split(cfg)?;
    let p0 = cfg.energy();
    let momenta = branch_momenta(bp, p, cfg.mass())?;
    let lam = bp.transform()?;
    let rotation = wigner_angle(&lam, FourVector::new(p0, 0.0, 0.0, p), cfg.mass())?;
    let omega = rotation.omega;
    let (u_plus, v_plus) = spinor_states(omega, 1);
    let (u_minus, v_minus) = spinor_states(omega, -1);
    let (eta, xi) = cfg.branch_coefficients();
    let momentum = |four: FourVector| {
        [
            PartyContent::Label(four.t),
            PartyContent::Label(four.x),
            PartyContent::Label(four.z),
        ]
    };
    let branch = |mom_e: FourVector, spin_e: [Complex64; 2], mom_p: FourVector, spin_p: [Complex64; 2]| {
        let [e0, ex, ez] = momentum(mom_e);
        let [q0, qx, qz] = momentum(mom_p);
        vec![
            e0,
            ex,
            ez,
            PartyContent::Spinor(spin_e),
            q0,
            qx,
            qz,
            PartyContent::Spinor(spin_p),
        ]
    };
    let branch1 = branch(momenta.plus, u_plus, momenta.minus, u_minus);
    let branch2 = branch(momenta.minus, v_minus, momenta.plus, v_plus);
    assemble(
        &PARTY_NAMES,
        &[(eta, branch1), (xi, branch2)],
        omega,
        momenta.degeneracy,
    )
}

/// True when the boost keeps all eight parties two-dimensional, i.e. the
/// regime in which the closed-form resource table applies.
fn closed_forms_apply(bp: &BoostParams, degeneracy: &DegeneracyFlags) -> bool {
    bp.alpha() > 0.0 && bp.alpha() < std::f64::consts::FRAC_PI_2 && !degeneracy.any()
}

/// Computes every resource of the scenario at one parameter point, together
/// with the closed-form predictions and their deviations.
///
/// In the nondegenerate regime (α strictly inside (0, π/2) and no merged
/// momentum labels) every deviation is compared against the closed forms and
/// a deviation above [`REPORT_TOLERANCE`] is a numerical failure. Outside
/// that regime the comparisons are skipped and noted.
pub fn resource_report(cfg: &PairConfig, bp: &BoostParams) -> Result<ResourceReport> {
    let lab = lab_state(cfg)?;
    let lab4 = lab_state_reduced(cfg)?;
    let boosted = boosted_state(cfg, bp)?;

    let gme_lab8 = gme(&lab.state)?;
    let gme_lab4 = gme(&lab4.state)?;
    let gme_boosted = gme(&boosted.state)?;

    let mut lab_coherence_max = 0.0f64;
    let mut lab_spin = [0.0f64; 2];
    for i in 0..PARTY_NAMES.len() {
        let coherence = coherence_linear(&lab.state.partial_trace(&[i])?);
        lab_coherence_max = lab_coherence_max.max(coherence);
        if i == SPIN_MINUS {
            lab_spin[0] = coherence;
        }
        if i == SPIN_PLUS {
            lab_spin[1] = coherence;
        }
    }

    let coherence_minus = coherence_linear(&boosted.state.partial_trace(&[SPIN_MINUS])?);
    let coherence_plus = coherence_linear(&boosted.state.partial_trace(&[SPIN_PLUS])?);
    let mut momentum_coherence_max = 0.0f64;
    for i in 0..PARTY_NAMES.len() {
        if i == SPIN_MINUS || i == SPIN_PLUS {
            continue;
        }
        momentum_coherence_max =
            momentum_coherence_max.max(coherence_linear(&boosted.state.partial_trace(&[i])?));
    }

    let invariant_lab =
        invariant_combination(gme_lab4.value, gme_lab8.value, lab_spin[1], lab_spin[0])?;

    let sin_2phi = (2.0 * cfg.phi()).sin();
    let cos_omega = boosted.omega.cos();
    let sin_omega = boosted.omega.sin();
    let cos_omega_closed_form = wigner_cos_closed_form(bp);
    let predictions = Predictions {
        e4: sin_2phi,
        e8: sin_2phi * cos_omega,
        spin_coherence: 0.5 * sin_omega * sin_omega,
        invariant: sin_2phi,
    };

    let checked = closed_forms_apply(bp, &boosted.degeneracy);
    let generic_entropy = 0.5 * sin_2phi * sin_2phi;
    let spin_entropy = generic_entropy * cos_omega * cos_omega;
    let spin_pair_entropy = generic_entropy * (1.0 - sin_omega.powi(4));
    let mut table_deviation = 0.0f64;
    let per_bipartition_entropies: Vec<BipartitionEntropy> = gme_boosted
        .entropies
        .iter()
        .map(|(bp_idx, entropy)| {
            let expected = if !checked {
                None
            } else if bp_idx.separates(&[SPIN_MINUS]) || bp_idx.separates(&[SPIN_PLUS]) {
                Some(spin_entropy)
            } else if bp_idx.separates(&[SPIN_MINUS, SPIN_PLUS]) {
                Some(spin_pair_entropy)
            } else {
                Some(generic_entropy)
            };
            if let Some(e) = expected {
                table_deviation = table_deviation.max((entropy - e).abs());
            }
            BipartitionEntropy {
                part_a: bp_idx
                    .part_a()
                    .iter()
                    .map(|&i| PARTY_NAMES[i].to_string())
                    .collect(),
                size_class: bp_idx.size_class(),
                entropy: *entropy,
                expected,
            }
        })
        .collect();

    let mut notes = Vec::new();
    let (invariant_boosted, max_deviation) = if checked {
        // E₄' = 0: every 4-party reduction of the boosted state is a weighted
        // product of the two branches (see the separability certificate).
        let invariant_boosted =
            invariant_combination(0.0, gme_boosted.value, coherence_plus, coherence_minus)?;
        let deviations = [
            (gme_lab4.value - predictions.e4).abs(),
            gme_lab8.value.abs(),
            lab_coherence_max,
            (gme_boosted.value - predictions.e8).abs(),
            (coherence_minus - predictions.spin_coherence).abs(),
            (coherence_plus - predictions.spin_coherence).abs(),
            momentum_coherence_max,
            (invariant_lab - predictions.invariant).abs(),
            (invariant_boosted - predictions.invariant).abs(),
            (cos_omega - cos_omega_closed_form).abs(),
            table_deviation,
        ];
        let max_deviation = deviations.iter().fold(0.0f64, |a, d| a.max(*d));
        if max_deviation > REPORT_TOLERANCE {
            return Err(Error::NumericalFailure(format!(
                "closed-form deviation {max_deviation:.3e} exceeds {REPORT_TOLERANCE:.1e}"
            )));
        }
        (Some(invariant_boosted), Some(max_deviation))
    } else {
        notes.push(
            "degenerate boost (alpha outside (0, pi/2) or merged momentum labels): \
             closed-form comparisons skipped"
                .to_string(),
        );
        (None, None)
    };

    Ok(ResourceReport {
        phi: cfg.phi(),
        theta: cfg.theta(),
        beta: bp.beta(),
        beta_v: bp.beta_v(),
        alpha: bp.alpha(),
        mass: cfg.mass(),
        omega: boosted.omega,
        cos_omega,
        cos_omega_closed_form,
        e4_lab: gme_lab4.value,
        e8_lab: gme_lab8.value,
        lab_coherence_max,
        e8_boosted: gme_boosted.value,
        coherence_minus,
        coherence_plus,
        momentum_coherence_max,
        invariant_lab,
        invariant_boosted,
        invariant_value: invariant_lab,
        argmin_bipartition: gme_boosted.argmin.label(boosted.state.parties()),
        per_bipartition_entropies,
        predictions,
        max_deviation,
        degeneracy: boosted.degeneracy,
        notes,
    })
}
