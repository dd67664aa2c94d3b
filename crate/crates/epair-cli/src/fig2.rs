//! The cos Ω surface over (β, β_v) ∈ [0, 0.999]² at fixed α, as CSV and as an
//! SVG heatmap.

use std::fmt::Write as _;

use epair::relativity::{wigner_cos_closed_form, BoostParams};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::svg::{heatmap_svg, HeatmapGrid};
use crate::sweep::fmt_f64;

/// Upper edge of the plotted velocity range.
pub const BETA_RANGE: f64 = 0.999;

/// The surface values: `values[i][j]` = cos Ω at (β_i, β_v_j), both axes
/// linearly spaced over [0, 0.999].
pub struct Surface {
    pub alpha: f64,
    pub grid: usize,
    pub values: Vec<Vec<f64>>,
}

pub fn axis_value(index: usize, grid: usize) -> f64 {
    BETA_RANGE * index as f64 / (grid - 1) as f64
}

/// Evaluates the closed-form surface on a grid x grid lattice.
pub fn surface(alpha: f64, grid: usize) -> CliResult<Surface> {
    if grid < 2 {
        return Err(CliError::Usage(format!(
            "grid must be at least 2, got {grid}"
        )));
    }
    if !alpha.is_finite() || !(0.0..=std::f64::consts::PI).contains(&alpha) {
        return Err(CliError::Usage(format!(
            "alpha must lie in [0, pi], got {alpha}"
        )));
    }
    let values: Vec<Vec<f64>> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let beta = axis_value(i, grid);
            (0..grid)
                .map(|j| {
                    let beta_v = axis_value(j, grid);
                    let bp = BoostParams::new(beta, beta_v, alpha)
                        .expect("grid values stay inside the domain");
                    wigner_cos_closed_form(&bp)
                })
                .collect()
        })
        .collect();
    Ok(Surface {
        alpha,
        grid,
        values,
    })
}

impl Surface {
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.grid * self.grid * 48);
        out.push_str("beta,beta_v,cos_omega\n");
        for (i, column) in self.values.iter().enumerate() {
            for (j, &v) in column.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    fmt_f64(axis_value(i, self.grid)),
                    fmt_f64(axis_value(j, self.grid)),
                    fmt_f64(v)
                );
            }
        }
        out
    }

    pub fn to_svg(&self) -> String {
        heatmap_svg(&HeatmapGrid {
            values: &self.values,
            x_label: "beta",
            y_label: "beta_v",
            x_max: BETA_RANGE,
            y_max: BETA_RANGE,
            scale: (0.0, 1.0),
            title: &format!("cos Omega, alpha = {}", self.alpha),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn rejects_bad_inputs() {
        assert!(surface(FRAC_PI_4, 1).is_err());
        assert!(surface(-0.1, 8).is_err());
    }

    #[test]
    fn zero_velocity_edges_are_one() {
        for alpha in [FRAC_PI_4, FRAC_PI_2] {
            let s = surface(alpha, 16).unwrap();
            for k in 0..16 {
                assert!((s.values[0][k] - 1.0).abs() <= 1e-12, "beta = 0 row");
                assert!((s.values[k][0] - 1.0).abs() <= 1e-12, "beta_v = 0 column");
            }
        }
    }

    #[test]
    fn perpendicular_surface_matches_known_form() {
        let s = surface(FRAC_PI_2, 12).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let g = 1.0 / (1.0 - axis_value(i, 12).powi(2)).sqrt();
                let gv = 1.0 / (1.0 - axis_value(j, 12).powi(2)).sqrt();
                let expected = (g + gv) / (1.0 + g * gv);
                assert!((s.values[i][j] - expected).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn surface_is_monotone_non_increasing_along_grid_lines() {
        let s = surface(FRAC_PI_4, 40).unwrap();
        for i in 0..40 {
            for j in 1..40 {
                assert!(s.values[i][j] <= s.values[i][j - 1] + 1e-12);
                assert!(s.values[j][i] <= s.values[j - 1][i] + 1e-12);
            }
        }
    }

    #[test]
    fn csv_layout() {
        let s = surface(FRAC_PI_4, 3).unwrap();
        let csv = s.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "beta,beta_v,cos_omega");
        assert_eq!(lines.len(), 10);
        assert!(lines[1].starts_with("0.0000000000000000e0,0.0000000000000000e0,"));
    }
}
