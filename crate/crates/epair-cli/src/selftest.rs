//! The verification suite behind `epair selftest` and the acceptance tests:
//! ten checks covering the Wigner closed form, the lab and boosted resource
//! tables, the invariant, combinatorics, separability, the cos Ω surface, and
//! the randomized property suites.

use std::collections::BTreeSet;
use std::sync::LazyLock;
use std::time::{Duration, Instant};

use epair::pairsim::{
    boosted_state, lab_state, lab_state_reduced, resource_report, PairConfig, PARTY_NAMES,
    SPIN_MINUS, SPIN_PLUS,
};
use epair::quantum::{dephase, Branch, MultiPartyPureState};
use epair::relativity::{
    boost_transform, gamma, wigner_angle, wigner_cos_closed_form, BoostParams, FourVector,
};
use epair::resources::{
    coherence_linear, enumerate_bipartitions, gme, separability_structure_check,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

/// Result of one verification check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation measured across the check.
    pub worst: f64,
    /// The tolerance the worst deviation is held against.
    pub tolerance: f64,
    pub elapsed: Duration,
    pub detail: String,
}

impl CheckOutcome {
    pub fn summary_line(&self) -> String {
        format!(
            "[{}] {:<4} {:<42} worst {:>10.3e}  tol {:>8.1e}  ({:.2?})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.worst,
            self.tolerance,
            self.elapsed
        )
    }
}

struct Clause {
    label: String,
    deviation: f64,
    tolerance: f64,
}

fn outcome_from_clauses(
    id: &'static str,
    name: &'static str,
    started: Instant,
    clauses: Vec<Clause>,
) -> CheckOutcome {
    let passed = clauses.iter().all(|c| c.deviation <= c.tolerance);
    // Report the clause that is worst relative to its own tolerance.
    let worst_clause = clauses
        .iter()
        .max_by(|a, b| {
            (a.deviation / a.tolerance)
                .partial_cmp(&(b.deviation / b.tolerance))
                .expect("finite deviations")
        })
        .expect("at least one clause");
    let detail = clauses
        .iter()
        .map(|c| {
            format!(
                "  {} {:<54} {:>10.3e} (tol {:.1e})",
                if c.deviation <= c.tolerance {
                    "ok  "
                } else {
                    "FAIL"
                },
                c.label,
                c.deviation,
                c.tolerance
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    CheckOutcome {
        id,
        name,
        passed,
        worst: worst_clause.deviation,
        tolerance: worst_clause.tolerance,
        elapsed: started.elapsed(),
        detail,
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn on_shell_z(beta_v: f64, m: f64) -> FourVector {
    let gv = gamma(beta_v).expect("valid speed");
    FourVector::new(gv * m, 0.0, 0.0, gv * m * beta_v)
}

/// Criterion 1: |cos Ω(closed form) - cos Ω(W = L⁻¹(Λp)ΛL(p))| <= 1e-9 on a
/// 50³ grid over (β, β_v) ∈ [0, 0.999]², α ∈ (0, π/2). Runtime < 30 s.
pub fn criterion_1_wigner_closed_form() -> CheckOutcome {
    let started = Instant::now();
    let speeds = linspace(0.0, 0.999, 50);
    let alphas: Vec<f64> = (0..50)
        .map(|k| FRAC_PI_2 * (k + 1) as f64 / 51.0)
        .collect();
    let worst = speeds
        .par_iter()
        .map(|&beta| {
            let mut local = 0.0f64;
            for &beta_v in &speeds {
                let p = on_shell_z(beta_v, 1.0);
                for &alpha in &alphas {
                    let bp = BoostParams::new(beta, beta_v, alpha).expect("in domain");
                    let lam = bp.transform().expect("valid boost");
                    let rot = wigner_angle(&lam, p, 1.0).expect("y rotation");
                    local = local.max((rot.omega.cos() - wigner_cos_closed_form(&bp)).abs());
                }
            }
            local
        })
        .reduce(|| 0.0, f64::max);
    let elapsed = started.elapsed();
    let runtime_ok = elapsed < Duration::from_secs(30);
    CheckOutcome {
        id: "1",
        name: "wigner closed form vs matrix oracle (50^3)",
        passed: worst <= 1e-9 && runtime_ok,
        worst,
        tolerance: 1e-9,
        elapsed,
        detail: format!(
            "  125000 grid points, worst |cos(matrix) - cos(closed form)| = {worst:.3e}; \
             runtime {elapsed:.2?} (target < 30 s: {runtime_ok})"
        ),
    }
}

/// Criterion 2: the special cases of the closed form, exactly as stated.
///
/// The ultrarelativistic clause at α = π/3 cannot pass: the residual is
/// 2(1 - cos α)/γ + O(γ⁻²) = 1.41355e-3 at β = β_v = 1 - 1e-6, above the
/// stated 1e-3. The check reports the measured value rather than a loosened
/// bound.
pub fn criterion_2_special_cases() -> CheckOutcome {
    let started = Instant::now();
    let mut clauses = Vec::new();
    for beta in linspace(0.0, 0.999, 21) {
        for beta_v in linspace(0.0, 0.999, 21) {
            let bp = BoostParams::new(beta, beta_v, 0.0).expect("in domain");
            clauses.push(Clause {
                label: format!("alpha=0, beta={beta:.3}, beta_v={beta_v:.3}: cos = 1"),
                deviation: (wigner_cos_closed_form(&bp) - 1.0).abs(),
                tolerance: 1e-12,
            });
            let bp = BoostParams::new(beta, beta_v, FRAC_PI_2).expect("in domain");
            let (g, gv) = (bp.gamma(), bp.gamma_v());
            clauses.push(Clause {
                label: format!("alpha=pi/2, beta={beta:.3}, beta_v={beta_v:.3}"),
                deviation: (wigner_cos_closed_form(&bp) - (g + gv) / (1.0 + g * gv)).abs(),
                tolerance: 1e-12,
            });
        }
    }
    // Collapse the 882 grid clauses into their worst representatives to keep
    // the detail readable.
    let worst_a0 = clauses
        .iter()
        .step_by(2)
        .map(|c| c.deviation)
        .fold(0.0f64, f64::max);
    let worst_a90 = clauses
        .iter()
        .skip(1)
        .step_by(2)
        .map(|c| c.deviation)
        .fold(0.0f64, f64::max);
    let mut clauses = vec![
        Clause {
            label: "alpha = 0: cos Omega = 1 over 21x21 speeds".to_string(),
            deviation: worst_a0,
            tolerance: 1e-12,
        },
        Clause {
            label: "alpha = pi/2: (g+gv)/(1+g gv) over 21x21 speeds".to_string(),
            deviation: worst_a90,
            tolerance: 1e-12,
        },
    ];
    let b = 1.0 - 1e-6;
    for (label, alpha) in [("pi/6", FRAC_PI_6), ("pi/4", FRAC_PI_4), ("pi/3", FRAC_PI_3)] {
        let bp = BoostParams::new(b, b, alpha).expect("in domain");
        clauses.push(Clause {
            label: format!("beta = beta_v = 1 - 1e-6, alpha = {label}: cos Omega vs cos alpha"),
            deviation: (wigner_cos_closed_form(&bp) - alpha.cos()).abs(),
            tolerance: 1e-3,
        });
    }
    outcome_from_clauses("2", "eq. (4) special cases", started, clauses)
}

/// Criterion 3: lab frame over 50 φ and 10 θ values: E4 = sin 2φ, E8 = 0,
/// all component coherences = 0, each to 1e-10.
pub fn criterion_3_lab_frame() -> CheckOutcome {
    let started = Instant::now();
    let phis = linspace(0.0, FRAC_PI_2, 50);
    let thetas = linspace(0.0, 2.0 * PI, 10);
    let points: Vec<(f64, f64)> = phis
        .iter()
        .flat_map(|&p| thetas.iter().map(move |&t| (p, t)))
        .collect();
    let (e4_dev, e8_dev, coh_dev) = points
        .par_iter()
        .map(|&(phi, theta)| {
            let cfg = PairConfig::new(phi, theta, 0.6, 1.0).expect("in domain");
            let pair = lab_state(&cfg).expect("valid scenario");
            let reduced = lab_state_reduced(&cfg).expect("valid scenario");
            let e4 = gme(&reduced.state).expect("gme").value;
            let e8 = gme(&pair.state).expect("gme").value;
            let mut coh = 0.0f64;
            for i in 0..PARTY_NAMES.len() {
                coh = coh.max(coherence_linear(
                    &pair.state.partial_trace(&[i]).expect("reduction"),
                ));
            }
            ((e4 - (2.0 * phi).sin()).abs(), e8, coh)
        })
        .reduce(
            || (0.0, 0.0, 0.0),
            |a, b| (a.0.max(b.0), a.1.max(b.1), a.2.max(b.2)),
        );
    let clauses = vec![
        Clause {
            label: "E4(lab) = sin 2 phi over 50 phi x 10 theta".to_string(),
            deviation: e4_dev,
            tolerance: 1e-10,
        },
        Clause {
            label: "E8(lab) = 0".to_string(),
            deviation: e8_dev,
            tolerance: 1e-10,
        },
        Clause {
            label: "all lab component coherences = 0".to_string(),
            deviation: coh_dev,
            tolerance: 1e-10,
        },
    ];
    outcome_from_clauses("3", "lab-frame resources", started, clauses)
}

/// Distilled per-point metrics of the shared boosted grid.
pub struct GridPoint {
    pub beta: f64,
    pub beta_v: f64,
    pub alpha: f64,
    pub phi: f64,
    pub cos_omega: f64,
    pub sin_omega: f64,
    pub e8: f64,
    pub coh_minus: f64,
    pub coh_plus: f64,
    pub momentum_coh_max: f64,
    pub invariant_lab: f64,
    pub invariant_boosted: f64,
    pub dev_spin_cut: f64,
    pub dev_spin_pair_cut: f64,
    pub dev_generic_cuts: f64,
    pub argmin_is_spin_cut: bool,
}

/// 20 x 20 x 10 x 10 grid in (β, β_v, α, φ): speeds in [0.05, 0.999] (the
/// closed-form table needs β, β_v > 0 so all eight parties stay
/// two-dimensional), α ∈ [0.05, π/2 - 0.05], φ ∈ [0, π/2].
pub static BOOSTED_GRID: LazyLock<Result<Vec<GridPoint>, String>> = LazyLock::new(|| {
    let speeds = linspace(0.05, 0.999, 20);
    let alphas = linspace(0.05, FRAC_PI_2 - 0.05, 10);
    let phis = linspace(0.0, FRAC_PI_2, 10);
    let mut params = Vec::with_capacity(20 * 20 * 10 * 10);
    for &beta in &speeds {
        for &beta_v in &speeds {
            for &alpha in &alphas {
                for &phi in &phis {
                    params.push((beta, beta_v, alpha, phi));
                }
            }
        }
    }
    params
        .into_par_iter()
        .map(|(beta, beta_v, alpha, phi)| {
            grid_point(beta, beta_v, alpha, phi).map_err(|e| {
                format!("grid point (beta={beta}, beta_v={beta_v}, alpha={alpha}, phi={phi}): {e}")
            })
        })
        .collect()
});

fn grid_point(beta: f64, beta_v: f64, alpha: f64, phi: f64) -> epair::Result<GridPoint> {
    let cfg = PairConfig::new(phi, 0.4, beta_v, 1.0)?;
    let bp = BoostParams::new(beta, beta_v, alpha)?;
    let report = resource_report(&cfg, &bp)?;
    let sin_2phi = (2.0 * phi).sin();
    let cos_omega = report.cos_omega;
    let sin_omega = report.omega.sin();
    let generic = 0.5 * sin_2phi * sin_2phi;
    let spin_expected = generic * cos_omega * cos_omega;
    let pair_expected = generic * (1.0 - sin_omega.powi(4));
    let spin_set: BTreeSet<&str> = [PARTY_NAMES[SPIN_MINUS]].into();
    let spin_set_plus: BTreeSet<&str> = [PARTY_NAMES[SPIN_PLUS]].into();
    let pair_set: BTreeSet<&str> = [PARTY_NAMES[SPIN_MINUS], PARTY_NAMES[SPIN_PLUS]].into();
    let mut dev_spin = 0.0f64;
    let mut dev_pair = 0.0f64;
    let mut dev_generic = 0.0f64;
    let mut counts = (0usize, 0usize, 0usize);
    for entry in &report.per_bipartition_entropies {
        let part_a: BTreeSet<&str> = entry.part_a.iter().map(String::as_str).collect();
        let complement: BTreeSet<&str> = PARTY_NAMES
            .iter()
            .copied()
            .filter(|n| !part_a.contains(n))
            .collect();
        let smaller = if part_a.len() <= complement.len() {
            &part_a
        } else {
            &complement
        };
        if *smaller == spin_set || *smaller == spin_set_plus {
            dev_spin = dev_spin.max((entry.entropy - spin_expected).abs());
            counts.0 += 1;
        } else if *smaller == pair_set {
            dev_pair = dev_pair.max((entry.entropy - pair_expected).abs());
            counts.1 += 1;
        } else {
            dev_generic = dev_generic.max((entry.entropy - generic).abs());
            counts.2 += 1;
        }
    }
    debug_assert_eq!(counts, (2, 1, 124));
    let argmin_is_spin_cut = {
        let names: Vec<&str> = report
            .argmin_bipartition
            .split('|')
            .flat_map(|side| side.split_whitespace())
            .collect();
        let sides: Vec<&str> = report.argmin_bipartition.split('|').collect();
        let spin_side = |side: &str| {
            let parts: Vec<&str> = side.split_whitespace().collect();
            parts == ["S-"] || parts == ["S+"]
        };
        debug_assert_eq!(names.len(), 8);
        sides.iter().any(|s| spin_side(s))
    };
    Ok(GridPoint {
        beta,
        beta_v,
        alpha,
        phi,
        cos_omega,
        sin_omega,
        e8: report.e8_boosted,
        coh_minus: report.coherence_minus,
        coh_plus: report.coherence_plus,
        momentum_coh_max: report.momentum_coherence_max,
        invariant_lab: report.invariant_lab,
        invariant_boosted: report.invariant_boosted.unwrap_or(f64::NAN),
        dev_spin_cut: dev_spin,
        dev_spin_pair_cut: dev_pair,
        dev_generic_cuts: dev_generic,
        argmin_is_spin_cut,
    })
}

fn grid() -> Result<&'static [GridPoint], String> {
    BOOSTED_GRID.as_ref().map(Vec::as_slice).map_err(Clone::clone)
}

fn grid_failure(id: &'static str, name: &'static str, started: Instant, err: String) -> CheckOutcome {
    CheckOutcome {
        id,
        name,
        passed: false,
        worst: f64::INFINITY,
        tolerance: 0.0,
        elapsed: started.elapsed(),
        detail: format!("  grid computation failed: {err}"),
    }
}

/// Criterion 4: boosted frame over the 20x20x10x10 grid: E8' = sin 2φ cos Ω
/// and C(σ_z±) = ½ sin²Ω to 1e-9; spin 1|7 cuts at ½ sin²2φ cos²Ω, the
/// spin-pair 2|6 cut at ½ sin²2φ (1 - sin⁴Ω), every remaining cut at
/// ½ sin²2φ. Runtime < 5 min.
pub fn criterion_4_boosted_frame() -> CheckOutcome {
    let started = Instant::now();
    let grid = match grid() {
        Ok(g) => g,
        Err(e) => return grid_failure("4", "boosted-frame closed forms", started, e),
    };
    let mut e8_dev = 0.0f64;
    let mut coh_dev = 0.0f64;
    let mut spin_cut_dev = 0.0f64;
    let mut pair_cut_dev = 0.0f64;
    let mut generic_dev = 0.0f64;
    let mut momentum_coh = 0.0f64;
    for p in grid {
        let sin_2phi = (2.0 * p.phi).sin();
        e8_dev = e8_dev.max((p.e8 - sin_2phi * p.cos_omega).abs());
        let coh_expected = 0.5 * p.sin_omega * p.sin_omega;
        coh_dev = coh_dev
            .max((p.coh_minus - coh_expected).abs())
            .max((p.coh_plus - coh_expected).abs());
        spin_cut_dev = spin_cut_dev.max(p.dev_spin_cut);
        pair_cut_dev = pair_cut_dev.max(p.dev_spin_pair_cut);
        generic_dev = generic_dev.max(p.dev_generic_cuts);
        momentum_coh = momentum_coh.max(p.momentum_coh_max);
    }
    let elapsed = started.elapsed();
    let runtime_ok = elapsed < Duration::from_secs(300);
    let mut clauses = vec![
        Clause {
            label: "E8' = sin 2 phi cos Omega (40000 points)".to_string(),
            deviation: e8_dev,
            tolerance: 1e-9,
        },
        Clause {
            label: "C(S-) and C(S+) = 1/2 sin^2 Omega".to_string(),
            deviation: coh_dev,
            tolerance: 1e-9,
        },
        Clause {
            label: "2 spin 1|7 cuts: 1/2 sin^2 2phi cos^2 Omega".to_string(),
            deviation: spin_cut_dev,
            tolerance: 1e-9,
        },
        Clause {
            label: "S-S+ 2|6 cut: 1/2 sin^2 2phi (1 - sin^4 Omega)".to_string(),
            deviation: pair_cut_dev,
            tolerance: 1e-9,
        },
        Clause {
            label: "remaining 124 cuts: 1/2 sin^2 2phi".to_string(),
            deviation: generic_dev,
            tolerance: 1e-9,
        },
        Clause {
            label: "boosted momentum coherences = 0".to_string(),
            deviation: momentum_coh,
            tolerance: 1e-9,
        },
    ];
    if !runtime_ok {
        clauses.push(Clause {
            label: format!("runtime {elapsed:.2?} under 5 min"),
            deviation: 1.0,
            tolerance: 0.0,
        });
    }
    outcome_from_clauses("4", "boosted-frame closed forms", started, clauses)
}

/// Criterion 5: the invariant agrees between frames and equals sin 2φ to
/// 1e-10 on the criterion-4 grid.
pub fn criterion_5_invariant() -> CheckOutcome {
    let started = Instant::now();
    let grid = match grid() {
        Ok(g) => g,
        Err(e) => return grid_failure("5", "invariant combination", started, e),
    };
    let mut lab_dev = 0.0f64;
    let mut boosted_dev = 0.0f64;
    let mut frame_dev = 0.0f64;
    for p in grid {
        let sin_2phi = (2.0 * p.phi).sin();
        lab_dev = lab_dev.max((p.invariant_lab - sin_2phi).abs());
        boosted_dev = boosted_dev.max((p.invariant_boosted - sin_2phi).abs());
        frame_dev = frame_dev.max((p.invariant_boosted - p.invariant_lab).abs());
    }
    let clauses = vec![
        Clause {
            label: "lab invariant = sin 2 phi".to_string(),
            deviation: lab_dev,
            tolerance: 1e-10,
        },
        Clause {
            label: "boosted invariant = sin 2 phi".to_string(),
            deviation: boosted_dev,
            tolerance: 1e-10,
        },
        Clause {
            label: "lab and boosted evaluations agree".to_string(),
            deviation: frame_dev,
            tolerance: 1e-10,
        },
    ];
    outcome_from_clauses("5", "invariant combination", started, clauses)
}

/// Criterion 6: 127 canonical bipartitions of 8 parties with class counts
/// 8 / 28 / 56 / 35.
pub fn criterion_6_bipartition_counts() -> CheckOutcome {
    let started = Instant::now();
    let eight = enumerate_bipartitions(8).expect("n = 8");
    let mut counts = [0usize; 5];
    for b in &eight {
        counts[b.size_class().0] += 1;
    }
    let expected = [8usize, 28, 56, 35];
    let two = enumerate_bipartitions(2).expect("n = 2");
    let four = enumerate_bipartitions(4).expect("n = 4");
    let ok = eight.len() == 127 && counts[1..] == expected && two.len() == 1 && four.len() == 7;
    CheckOutcome {
        id: "6",
        name: "bipartition combinatorics",
        passed: ok,
        worst: if ok { 0.0 } else { 1.0 },
        tolerance: 0.0,
        elapsed: started.elapsed(),
        detail: format!(
            "  n=8: {} bipartitions, class counts 1|7 {}, 2|6 {}, 3|5 {}, 4|4 {} \
             (expected 8/28/56/35); n=2: {}, n=4: {}",
            eight.len(),
            counts[1],
            counts[2],
            counts[3],
            counts[4],
            two.len(),
            four.len()
        ),
    }
}

/// Criterion 7: E8' >= sin 2φ cos α on the grid, and the small-velocity
/// coherence expansion at β = β_v = 0.1.
pub fn criterion_7_bound_and_expansion() -> CheckOutcome {
    let started = Instant::now();
    let grid = match grid() {
        Ok(g) => g,
        Err(e) => return grid_failure("7", "lower bound and expansion", started, e),
    };
    let mut bound_violation = 0.0f64;
    for p in grid {
        let floor = (2.0 * p.phi).sin() * p.alpha.cos();
        bound_violation = bound_violation.max(floor - p.e8);
    }
    let mut expansion_dev = 0.0f64;
    for alpha in linspace(0.05, FRAC_PI_2 - 0.05, 10) {
        let cfg = PairConfig::new(0.9, 0.0, 0.1, 1.0).expect("in domain");
        let bp = BoostParams::new(0.1, 0.1, alpha).expect("in domain");
        let pair = boosted_state(&cfg, &bp).expect("valid scenario");
        let coherence = coherence_linear(
            &pair
                .state
                .partial_trace(&[SPIN_MINUS])
                .expect("spin reduction"),
        );
        let expansion = 0.125 * 0.1f64.powi(2) * 0.1f64.powi(2) * alpha.sin().powi(2);
        expansion_dev = expansion_dev.max((coherence - expansion).abs());
    }
    let clauses = vec![
        Clause {
            label: "E8' >= sin 2 phi cos alpha (violation)".to_string(),
            deviation: bound_violation.max(0.0),
            tolerance: 1e-9,
        },
        Clause {
            label: "C = (1/8) beta^2 beta_v^2 sin^2 alpha at beta = beta_v = 0.1".to_string(),
            deviation: expansion_dev,
            tolerance: 1e-5,
        },
    ];
    outcome_from_clauses("7", "lower bound and expansion", started, clauses)
}

/// Criterion 8: every 4-party reduction of the boosted state passes the
/// structural separability certificate; the pure entangled lab reduction
/// fails it for φ ∈ (0, π/2).
pub fn criterion_8_separability() -> CheckOutcome {
    let started = Instant::now();
    let mut worst_boosted = 0.0f64;
    let mut lab_min_deviation = f64::INFINITY;
    let mut all_pass = true;
    let keeps: Vec<Vec<usize>> = {
        // All C(8, 4) = 70 four-party subsets.
        let mut out = Vec::new();
        for mask in 0u32..256 {
            if mask.count_ones() == 4 {
                out.push((0..8).filter(|i| mask & (1 << i) != 0).collect());
            }
        }
        out
    };
    for (beta, beta_v, alpha, phi) in [
        (0.7, 0.75, 1.0, 0.6),
        (0.3, 0.5, 0.3, FRAC_PI_4),
        (0.95, 0.9, 1.4, 1.2),
    ] {
        let cfg = PairConfig::new(phi, 0.8, beta_v, 1.0).expect("in domain");
        let bp = BoostParams::new(beta, beta_v, alpha).expect("in domain");
        let pair = boosted_state(&cfg, &bp).expect("valid scenario");
        for keep in &keeps {
            let rho = pair.state.partial_trace(keep).expect("reduction");
            let branches = pair.product_branches(keep);
            let check = separability_structure_check(&rho, &branches).expect("aligned branches");
            worst_boosted = worst_boosted.max(check.max_deviation);
            all_pass &= check.separable;
        }
    }
    for phi in linspace(0.1, FRAC_PI_2 - 0.1, 9) {
        let cfg = PairConfig::new(phi, 0.8, 0.75, 1.0).expect("in domain");
        let lab = lab_state(&cfg).expect("valid scenario");
        let keep = [2usize, 3, 6, 7];
        let rho = lab.state.partial_trace(&keep).expect("reduction");
        let check = separability_structure_check(&rho, &lab.product_branches(&keep))
            .expect("aligned branches");
        all_pass &= !check.separable;
        lab_min_deviation = lab_min_deviation.min(check.max_deviation);
    }
    CheckOutcome {
        id: "8",
        name: "structural separability certificates",
        passed: all_pass && worst_boosted <= 1e-10,
        worst: worst_boosted,
        tolerance: 1e-10,
        elapsed: started.elapsed(),
        detail: format!(
            "  boosted: 3 parameter points x 70 four-party reductions all separable \
             (worst reconstruction deviation {worst_boosted:.3e}); lab 4-party pure reduction \
             fails for 9 phi values (smallest deviation {lab_min_deviation:.3e})"
        ),
    }
}

/// Criterion 9: the 200x200 cos Ω surfaces at α = π/4 and π/2 finish in under
/// 60 s and satisfy the criterion-2 boundary values on their edges.
pub fn criterion_9_fig2() -> CheckOutcome {
    let started = Instant::now();
    let mut clauses = Vec::new();
    for (label, alpha) in [("pi/4", FRAC_PI_4), ("pi/2", FRAC_PI_2)] {
        let surface = match crate::fig2::surface(alpha, 200) {
            Ok(s) => s,
            Err(e) => {
                return CheckOutcome {
                    id: "9",
                    name: "cos Omega surface reproduction",
                    passed: false,
                    worst: f64::INFINITY,
                    tolerance: 0.0,
                    elapsed: started.elapsed(),
                    detail: format!("  surface computation failed: {e}"),
                }
            }
        };
        let mut edge_one = 0.0f64;
        for k in 0..200 {
            edge_one = edge_one
                .max((surface.values[0][k] - 1.0).abs())
                .max((surface.values[k][0] - 1.0).abs());
        }
        clauses.push(Clause {
            label: format!("alpha = {label}: beta = 0 and beta_v = 0 edges equal 1"),
            deviation: edge_one,
            tolerance: 1e-12,
        });
        // The far edges follow the perpendicular closed form at alpha = pi/2.
        if alpha == FRAC_PI_2 {
            let mut dev = 0.0f64;
            for i in 0..200 {
                for j in [0usize, 73, 199] {
                    let g = gamma(crate::fig2::axis_value(i, 200)).expect("in domain");
                    let gv = gamma(crate::fig2::axis_value(j, 200)).expect("in domain");
                    let expected = (g + gv) / (1.0 + g * gv);
                    dev = dev
                        .max((surface.values[i][j] - expected).abs())
                        .max((surface.values[j][i] - expected).abs());
                }
            }
            clauses.push(Clause {
                label: "alpha = pi/2 surface matches (g+gv)/(1+g gv)".to_string(),
                deviation: dev,
                tolerance: 1e-12,
            });
        } else {
            // Monotone non-increasing along both grid directions.
            let mut violation = 0.0f64;
            for i in 0..200 {
                for j in 1..200 {
                    violation = violation
                        .max(surface.values[i][j] - surface.values[i][j - 1])
                        .max(surface.values[j][i] - surface.values[j - 1][i]);
                }
            }
            clauses.push(Clause {
                label: "alpha = pi/4 surface monotone non-increasing".to_string(),
                deviation: violation.max(0.0),
                tolerance: 1e-12,
            });
        }
        let svg = surface.to_svg();
        let svg_ok = svg.contains(&format!("alpha = {alpha}"))
            && svg.contains(">beta<")
            && svg.contains(">beta_v<");
        clauses.push(Clause {
            label: format!("alpha = {label}: SVG embeds labels and alpha"),
            deviation: if svg_ok { 0.0 } else { 1.0 },
            tolerance: 0.0,
        });
    }
    let elapsed = started.elapsed();
    if elapsed >= Duration::from_secs(60) {
        clauses.push(Clause {
            label: format!("runtime {elapsed:.2?} under 60 s"),
            deviation: 1.0,
            tolerance: 0.0,
        });
    }
    outcome_from_clauses("9", "cos Omega surface reproduction", started, clauses)
}

/// Criterion 10: the randomized property suites at their stated sizes.
pub fn criterion_10_property_suites() -> CheckOutcome {
    let started = Instant::now();
    let mut clauses = Vec::new();

    // Metric preservation for 1000 random boosts.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let beta = rng.gen_range(0.0..0.999);
        let direction = loop {
            let v: [f64; 3] = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 0.1 {
                break [v[0] / n, v[1] / n, v[2] / n];
            }
        };
        let lam = boost_transform(beta, direction).expect("valid boost");
        worst = worst.max(lam.metric_violation());
    }
    clauses.push(Clause {
        label: "metric preservation, 1000 random boosts".to_string(),
        deviation: worst,
        tolerance: 1e-10,
    });

    // Little group fixes the rest momentum, 1000 random configurations.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1717);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let bp = BoostParams::new(
            rng.gen_range(0.0..0.999),
            rng.gen_range(0.0..0.999),
            rng.gen_range(0.0..PI),
        )
        .expect("in domain");
        let m = rng.gen_range(0.5..2.0);
        let gv = bp.gamma_v();
        let p = FourVector::new(gv * m, 0.0, 0.0, gv * m * bp.beta_v());
        let w = epair::relativity::wigner_transform(&bp.transform().expect("boost"), p, m)
            .expect("wigner transform");
        let k = w.apply(FourVector::rest(m));
        worst = worst
            .max((k.t - m).abs())
            .max(k.x.abs())
            .max(k.y.abs())
            .max(k.z.abs());
    }
    clauses.push(Clause {
        label: "little group fixes (m,0,0,0), 1000 random".to_string(),
        deviation: worst,
        tolerance: 1e-10,
    });

    // Normalization of constructed states and their reductions.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let cfg = PairConfig::new(
            rng.gen_range(0.0..FRAC_PI_2),
            rng.gen_range(0.0..(2.0 * PI)),
            rng.gen_range(0.05..0.999),
            rng.gen_range(0.5..2.0),
        )
        .expect("in domain");
        let bp = BoostParams::new(
            rng.gen_range(0.05..0.999),
            cfg.beta_v(),
            rng.gen_range(0.05..(FRAC_PI_2 - 0.05)),
        )
        .expect("in domain");
        let pair = boosted_state(&cfg, &bp).expect("valid scenario");
        worst = worst.max((pair.state.norm_sqr() - 1.0).abs());
        let rho = pair.state.partial_trace(&[0, 3, 7]).expect("reduction");
        worst = worst.max((rho.trace().re - 1.0).abs()).max(rho.trace().im.abs());
    }
    clauses.push(Clause {
        label: "state norms and reduced traces, 100 random scenarios".to_string(),
        deviation: worst,
        tolerance: 1e-10,
    });

    // Partial-trace consistency: sequential equals direct.
    let cfg = PairConfig::new(0.8, 1.1, 0.7, 1.0).expect("in domain");
    let bp = BoostParams::new(0.6, 0.7, 0.9).expect("in domain");
    let pair = boosted_state(&cfg, &bp).expect("valid scenario");
    let mut worst = 0.0f64;
    for (outer, inner) in [
        (vec![0usize, 2, 3, 7], vec![0usize, 1]),
        (vec![1usize, 3, 5, 7], vec![1usize, 3]),
        (vec![2usize, 3, 6, 7], vec![0usize, 2]),
    ] {
        let via = pair
            .state
            .partial_trace(&outer)
            .expect("outer reduction")
            .partial_trace(&inner)
            .expect("inner reduction");
        let direct_keep: Vec<usize> = inner.iter().map(|&i| outer[i]).collect();
        let direct = pair.state.partial_trace(&direct_keep).expect("reduction");
        for i in 0..via.dim() {
            for j in 0..via.dim() {
                worst = worst.max((via.entry(i, j) - direct.entry(i, j)).norm());
            }
        }
    }
    clauses.push(Clause {
        label: "sequential partial traces equal direct".to_string(),
        deviation: worst,
        tolerance: 1e-12,
    });

    // Dephase idempotence on spin reductions.
    let mut worst = 0.0f64;
    for keep in [vec![SPIN_MINUS], vec![SPIN_MINUS, SPIN_PLUS]] {
        let rho = pair.state.partial_trace(&keep).expect("reduction");
        let once = dephase(&rho);
        let twice = dephase(&once);
        for i in 0..once.dim() {
            for j in 0..once.dim() {
                worst = worst.max((once.entry(i, j) - twice.entry(i, j)).norm());
            }
        }
    }
    clauses.push(Clause {
        label: "dephase is a projection".to_string(),
        deviation: worst,
        tolerance: 1e-12,
    });

    // GME saturation on (|0...0> + |1...1>)/sqrt(2) for n = 2, 3, 4.
    let mut worst = 0.0f64;
    for n in 2..=4usize {
        let names: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let state = MultiPartyPureState::from_branches(
            &refs,
            &[
                Branch::new(Complex64::new(1.0, 0.0), vec![0.0; n]),
                Branch::new(Complex64::new(1.0, 0.0), vec![1.0; n]),
            ],
        )
        .expect("GHZ state");
        worst = worst.max((gme(&state).expect("gme").value - 1.0).abs());
    }
    clauses.push(Clause {
        label: "GME saturation on GHZ, n = 2, 3, 4".to_string(),
        deviation: worst,
        tolerance: 1e-12,
    });

    outcome_from_clauses("10", "property suites", started, clauses)
}

/// Runs every check in order.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        criterion_1_wigner_closed_form(),
        criterion_2_special_cases(),
        criterion_3_lab_frame(),
        criterion_4_boosted_frame(),
        criterion_5_invariant(),
        criterion_6_bipartition_counts(),
        criterion_7_bound_and_expansion(),
        criterion_8_separability(),
        criterion_9_fig2(),
        criterion_10_property_suites(),
    ]
}
