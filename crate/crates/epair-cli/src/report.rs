//! Text and JSON rendering of a resource report.

use std::fmt::Write as _;

use epair::resources::ResourceReport;

use crate::error::{CliError, CliResult};

pub fn to_json(report: &ResourceReport) -> CliResult<String> {
    serde_json::to_string_pretty(report)
        .map_err(|e| CliError::Usage(format!("cannot serialize report: {e}")))
}

pub fn to_text(report: &ResourceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "parameters:  phi={} theta={} beta={} beta_v={} alpha={} mass={}",
        report.phi, report.theta, report.beta, report.beta_v, report.alpha, report.mass
    );
    let _ = writeln!(
        out,
        "wigner:      omega={:.12} cos_omega={:.12} closed_form={:.12} |diff|={:.3e}",
        report.omega,
        report.cos_omega,
        report.cos_omega_closed_form,
        (report.cos_omega - report.cos_omega_closed_form).abs()
    );
    let _ = writeln!(
        out,
        "lab frame:   E4={:.12} E8={:.3e} max_component_coherence={:.3e}",
        report.e4_lab, report.e8_lab, report.lab_coherence_max
    );
    let _ = writeln!(
        out,
        "boosted:     E8={:.12} coh(S-)={:.12} coh(S+)={:.12} max_momentum_coherence={:.3e}",
        report.e8_boosted, report.coherence_minus, report.coherence_plus,
        report.momentum_coherence_max
    );
    match report.invariant_boosted {
        Some(boosted) => {
            let _ = writeln!(
                out,
                "invariant:   lab={:.12} boosted={:.12} prediction=sin(2 phi)={:.12}",
                report.invariant_lab, boosted, report.predictions.invariant
            );
        }
        None => {
            let _ = writeln!(
                out,
                "invariant:   lab={:.12} prediction=sin(2 phi)={:.12} (boosted evaluation skipped)",
                report.invariant_lab, report.predictions.invariant
            );
        }
    }
    let _ = writeln!(
        out,
        "entropies:   {} bipartitions, argmin = {}",
        report.per_bipartition_entropies.len(),
        report.argmin_bipartition
    );
    let _ = writeln!(
        out,
        "degeneracy:  energy_equal={} x_equal={} z_equal={}",
        report.degeneracy.energy_equal, report.degeneracy.x_equal, report.degeneracy.z_equal
    );
    match report.max_deviation {
        Some(dev) => {
            let _ = writeln!(out, "status:      max closed-form deviation {dev:.3e}");
        }
        None => {
            let _ = writeln!(out, "status:      closed-form comparisons skipped");
        }
    }
    for note in &report.notes {
        let _ = writeln!(out, "note:        {note}");
    }
    out
}
