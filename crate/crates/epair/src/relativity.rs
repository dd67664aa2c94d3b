//! Special-relativity kinematics: pure boosts, standard boosts from the rest
//! frame, Wigner-rotation extraction, and the boosted momentum labels of the
//! two superposition branches.
//!
//! Conventions: natural units (c = 1), four-vector components ordered
//! (t, x, y, z), metric signature (+, -, -, -). All boosts are active: a boost
//! of speed β along n̂ maps the rest vector (m, 0, 0, 0) to (γm, γmβ n̂).

use nalgebra::Matrix4;

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Velocities are capped strictly below 1 so Lorentz factors stay finite.
pub const BETA_MAX: f64 = 1.0 - 1e-12;

/// Absolute tolerance under which two momentum components are considered equal.
pub const MERGE_TOLERANCE: f64 = 1e-9;

/// Relative tolerance for the mass-shell precondition t² - |p|² = m².
pub const ON_SHELL_TOLERANCE: f64 = 1e-9;

/// Tolerance for the y-rotation block structure of a Wigner transform.
pub const STRUCTURE_TOLERANCE: f64 = 1e-9;

const METRIC_DIAG: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Lorentz factor γ = (1 - β²)^{-1/2}.
pub fn gamma(beta: f64) -> Result<f64> {
    if !beta.is_finite() || !(0.0..1.0).contains(&beta) {
        return Err(Error::Domain(format!(
            "speed must satisfy 0 <= beta < 1, got {beta}"
        )));
    }
    // (1 - β)(1 + β) avoids cancellation near β = 1.
    Ok(1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt())
}

/// A real energy-momentum four-vector in natural units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    /// The rest-frame momentum k = (m, 0, 0, 0).
    pub fn rest(m: f64) -> Self {
        Self::new(m, 0.0, 0.0, 0.0)
    }

    pub fn spatial_norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Minkowski norm t² - x² - y² - z².
    pub fn minkowski_norm_sq(&self) -> f64 {
        self.t * self.t - self.spatial_norm_sq()
    }

    /// Relative violation of the mass-shell condition t² - |p|² = m².
    pub fn on_shell_violation(&self, m: f64) -> f64 {
        (self.minkowski_norm_sq() - m * m).abs() / self.t.powi(2).max(1.0)
    }

    pub fn components(&self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }
}

/// A proper orthochronous Lorentz transformation (rows/cols ordered t, x, y, z).
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzTransform {
    entries: Matrix4<f64>,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        Self {
            entries: Matrix4::identity(),
        }
    }

    /// Validates Λᵀ g Λ = g, det Λ = +1 and Λ₀₀ >= 1.
    ///
    /// The metric tolerance scales with the square of the largest entry: a
    /// boost stored in f64 cannot satisfy the identity better than ~ε·γ², so a
    /// fixed cutoff would reject legitimate extreme-rapidity inputs.
    pub fn from_matrix(entries: Matrix4<f64>) -> Result<Self> {
        let scale = entries.iter().fold(0.0f64, |m, e| m.max(e.abs()));
        Self::from_matrix_conditioned(entries, scale)
    }

    /// Like [`Self::from_matrix`] but with the metric tolerance driven by the
    /// magnitude of the intermediates that produced the matrix. A Wigner
    /// transform has entries of order one, yet its accuracy is limited by the
    /// f64 rounding of the boost factors it came from (~ε·γ'²).
    fn from_matrix_conditioned(entries: Matrix4<f64>, scale: f64) -> Result<Self> {
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::Domain("non-finite transform entry".into()));
        }
        let tol = (64.0 * f64::EPSILON * scale * scale).max(1e-10);
        let violation = metric_violation(&entries);
        if violation > tol {
            return Err(Error::Precision {
                context: "matrix does not preserve the Minkowski metric".into(),
                violation,
                tolerance: tol,
            });
        }
        let det = entries.determinant();
        let tol_det = tol.max(1e-9);
        if (det - 1.0).abs() > tol_det || entries[(0, 0)] < 1.0 - tol_det {
            return Err(Error::Domain(format!(
                "transform is not proper orthochronous (det {det}, entry00 {})",
                entries[(0, 0)]
            )));
        }
        Ok(Self { entries })
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.entries
    }

    /// Max entrywise deviation of Λᵀ g Λ from g.
    pub fn metric_violation(&self) -> f64 {
        metric_violation(&self.entries)
    }

    pub fn apply(&self, v: FourVector) -> FourVector {
        let c = v.components();
        let mut out = [0.0; 4];
        for (row, slot) in out.iter_mut().enumerate() {
            *slot = (0..4).map(|col| self.entries[(row, col)] * c[col]).sum();
        }
        FourVector::new(out[0], out[1], out[2], out[3])
    }

    /// Matrix product self · other (other acts first).
    pub fn compose(&self, other: &LorentzTransform) -> Result<LorentzTransform> {
        LorentzTransform::from_matrix(self.entries * other.entries)
    }
}

fn metric_violation(m: &Matrix4<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = 0.0;
            for (k, g) in METRIC_DIAG.iter().enumerate() {
                acc += m[(k, i)] * g * m[(k, j)];
            }
            let target = if i == j { METRIC_DIAG[i] } else { 0.0 };
            worst = worst.max((acc - target).abs());
        }
    }
    worst
}

/// The pure boost with velocity `beta * direction`.
pub fn boost_transform(beta: f64, direction: [f64; 3]) -> Result<LorentzTransform> {
    let g = gamma(beta)?;
    let norm = (direction[0].powi(2) + direction[1].powi(2) + direction[2].powi(2)).sqrt();
    if !norm.is_finite() || (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "boost direction must be a unit vector, |direction| = {norm}"
        )));
    }
    let mut m = Matrix4::identity();
    m[(0, 0)] = g;
    for i in 0..3 {
        m[(0, i + 1)] = g * beta * direction[i];
        m[(i + 1, 0)] = g * beta * direction[i];
        for j in 0..3 {
            m[(i + 1, j + 1)] =
                if i == j { 1.0 } else { 0.0 } + (g - 1.0) * direction[i] * direction[j];
        }
    }
    LorentzTransform::from_matrix(m)
}

/// The standard boost L(p): the pure boost carrying the rest momentum
/// (m, 0, 0, 0) to p.
pub fn standard_boost(p: FourVector, m: f64) -> Result<LorentzTransform> {
    check_on_shell(p, m)?;
    LorentzTransform::from_matrix(standard_boost_matrix(p, m))
}

fn check_on_shell(p: FourVector, m: f64) -> Result<()> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    if !(p.t > 0.0) {
        return Err(Error::Domain(format!(
            "energy component must be positive, got {}",
            p.t
        )));
    }
    let violation = p.on_shell_violation(m);
    if violation > ON_SHELL_TOLERANCE {
        return Err(Error::Precision {
            context: format!(
                "momentum ({}, {}, {}, {}) is off shell",
                p.t, p.x, p.y, p.z
            ),
            violation,
            tolerance: ON_SHELL_TOLERANCE,
        });
    }
    Ok(())
}

/// L(p) written without Lorentz factors: L₀₀ = t/m, L₀ᵢ = pᵢ/m and spatial
/// block δᵢⱼ + pᵢpⱼ/(m(t+m)); the first column maps (m,0,0,0) to p exactly.
fn standard_boost_matrix(p: FourVector, m: f64) -> Matrix4<f64> {
    let sp = [p.x, p.y, p.z];
    let mut out = Matrix4::identity();
    out[(0, 0)] = p.t / m;
    for i in 0..3 {
        out[(0, i + 1)] = sp[i] / m;
        out[(i + 1, 0)] = sp[i] / m;
        for j in 0..3 {
            out[(i + 1, j + 1)] =
                if i == j { 1.0 } else { 0.0 } + sp[i] * sp[j] / (m * (p.t + m));
        }
    }
    out
}

type Mat4Dd = [[Dd; 4]; 4];

fn dd_from_matrix(m: &Matrix4<f64>) -> Mat4Dd {
    let mut out = [[Dd::ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = Dd::from_f64(m[(i, j)]);
        }
    }
    out
}

fn dd_mul(a: &Mat4Dd, b: &Mat4Dd) -> Mat4Dd {
    let mut out = [[Dd::ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let mut acc = Dd::ZERO;
            for (k, b_row) in b.iter().enumerate() {
                acc = acc.add(a[i][k].mul(b_row[j]));
            }
            *slot = acc;
        }
    }
    out
}

fn dd_apply(m: &Mat4Dd, v: &[Dd; 4]) -> [Dd; 4] {
    let mut out = [Dd::ZERO; 4];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = Dd::ZERO;
        for k in 0..4 {
            acc = acc.add(m[i][k].mul(v[k]));
        }
        *slot = acc;
    }
    out
}

/// Standard boost in double-double arithmetic; `sign = -1` negates the spatial
/// components, producing the inverse boost L(p)^{-1} = L(t, -p⃗).
fn dd_standard_boost(p: &[Dd; 4], m: f64, sign: f64) -> Mat4Dd {
    let m_dd = Dd::from_f64(m);
    let s = Dd::from_f64(sign);
    let sp = [p[1].mul(s), p[2].mul(s), p[3].mul(s)];
    let denom = m_dd.mul(p[0].add(m_dd));
    let mut out = [[Dd::ZERO; 4]; 4];
    out[0][0] = p[0].div(m_dd);
    for i in 0..3 {
        out[0][i + 1] = sp[i].div(m_dd);
        out[i + 1][0] = sp[i].div(m_dd);
        for j in 0..3 {
            let base = if i == j { Dd::from_f64(1.0) } else { Dd::ZERO };
            out[i + 1][j + 1] = base.add(sp[i].mul(sp[j]).div(denom));
        }
    }
    out
}

/// The Wigner transform W(Λ, p) = L⁻¹(Λp) Λ L(p).
///
/// The three-factor product is evaluated in double-double arithmetic: the
/// intermediates grow like γ²γ_v² while W itself is a rotation with entries of
/// order one, and the cancellation would otherwise dominate the extracted
/// angle at high rapidity.
pub fn wigner_transform(
    lam: &LorentzTransform,
    p: FourVector,
    m: f64,
) -> Result<LorentzTransform> {
    check_on_shell(p, m)?;
    let lam_dd = dd_from_matrix(&lam.entries);
    let p_dd = [
        Dd::from_f64(p.t),
        Dd::from_f64(p.x),
        Dd::from_f64(p.y),
        Dd::from_f64(p.z),
    ];
    let q = dd_apply(&lam_dd, &p_dd);
    if q[0].value() <= 0.0 {
        return Err(Error::Domain(
            "transformed momentum has non-positive energy".into(),
        ));
    }
    let l_p = dd_standard_boost(&p_dd, m, 1.0);
    let l_q_inv = dd_standard_boost(&q, m, -1.0);
    let w = dd_mul(&l_q_inv, &dd_mul(&lam_dd, &l_p));
    let mut out = Matrix4::identity();
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = w[i][j].value();
        }
    }
    LorentzTransform::from_matrix_conditioned(out, q[0].value() / m)
}

/// A rotation about ±ŷ extracted from a Wigner transform.
///
/// `omega` is the signed angle of the rotation about +ŷ read off the (x, z)
/// block; `axis_sign` re-expresses the same rotation as |omega| about
/// `axis_sign`·ŷ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerRotation {
    pub omega: f64,
    pub axis_sign: i8,
}

impl WignerRotation {
    pub fn cos(&self) -> f64 {
        self.omega.cos()
    }

    pub fn sin(&self) -> f64 {
        self.omega.sin()
    }
}

/// Rotation about +ŷ by `omega` in the four-vector representation:
/// x' = cos(ω) x + sin(ω) z, z' = -sin(ω) x + cos(ω) z.
pub fn y_rotation_matrix(omega: f64) -> Matrix4<f64> {
    let (s, c) = omega.sin_cos();
    let mut m = Matrix4::identity();
    m[(1, 1)] = c;
    m[(1, 3)] = s;
    m[(3, 1)] = -s;
    m[(3, 3)] = c;
    m
}

/// Extracts the signed rotation angle of W(Λ, p) about the y axis.
///
/// Errors with [`Error::Structure`] if the t or y row/column of the transform
/// deviates from the trivial form, or if the extracted angle does not
/// reproduce the transform entrywise.
pub fn wigner_angle(lam: &LorentzTransform, p: FourVector, m: f64) -> Result<WignerRotation> {
    let w = wigner_transform(lam, p, m)?;
    let fixed = [(0usize, [1.0, 0.0, 0.0, 0.0]), (2usize, [0.0, 0.0, 1.0, 0.0])];
    for (k, expected) in fixed {
        for j in 0..4 {
            let row_dev = (w.entry(k, j) - expected[j]).abs();
            let col_dev = (w.entry(j, k) - expected[j]).abs();
            if row_dev > STRUCTURE_TOLERANCE || col_dev > STRUCTURE_TOLERANCE {
                return Err(Error::Structure(format!(
                    "Wigner transform is not a rotation about y: row/column {k} deviates by {:.3e}",
                    row_dev.max(col_dev)
                )));
            }
        }
    }
    let omega = w.entry(1, 3).atan2(w.entry(1, 1));
    let rebuilt = y_rotation_matrix(omega);
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst.max((w.entry(i, j) - rebuilt[(i, j)]).abs());
        }
    }
    if worst > STRUCTURE_TOLERANCE {
        return Err(Error::Structure(format!(
            "angle {omega} does not reproduce the transform (deviation {worst:.3e})"
        )));
    }
    Ok(WignerRotation {
        omega,
        axis_sign: if omega < 0.0 { -1 } else { 1 },
    })
}

/// Boost speed, particle speed and boost direction angle for the pair scenario.
///
/// The boost direction is β̂ = ẑ cos α - x̂ sin α with α ∈ [0, π] measured from
/// +z towards -x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParams {
    beta: f64,
    beta_v: f64,
    alpha: f64,
}

impl BoostParams {
    pub fn new(beta: f64, beta_v: f64, alpha: f64) -> Result<Self> {
        for (name, value) in [("beta", beta), ("beta_v", beta_v)] {
            if !value.is_finite() || !(0.0..=BETA_MAX).contains(&value) {
                return Err(Error::Domain(format!(
                    "{name} must lie in [0, 1 - 1e-12], got {value}"
                )));
            }
        }
        if !alpha.is_finite() || !(0.0..=std::f64::consts::PI).contains(&alpha) {
            return Err(Error::Domain(format!(
                "alpha must lie in [0, pi], got {alpha}"
            )));
        }
        Ok(Self {
            beta,
            beta_v,
            alpha,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn beta_v(&self) -> f64 {
        self.beta_v
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        gamma(self.beta).expect("validated on construction")
    }

    pub fn gamma_v(&self) -> f64 {
        gamma(self.beta_v).expect("validated on construction")
    }

    /// β̂ = ẑ cos α - x̂ sin α.
    pub fn direction(&self) -> [f64; 3] {
        [-self.alpha.sin(), 0.0, self.alpha.cos()]
    }

    /// The boost transform of these parameters.
    pub fn transform(&self) -> Result<LorentzTransform> {
        boost_transform(self.beta, self.direction())
    }
}

/// cos Ω as a closed form of the boost parameters:
///
/// cos Ω = [γ + γ_v + ββ_v γγ_v cos α + (γ-1)(γ_v-1) cos²α]
///         / [1 + γγ_v + ββ_v γγ_v cos α]
pub fn wigner_cos_closed_form(bp: &BoostParams) -> f64 {
    let g = bp.gamma();
    let gv = bp.gamma_v();
    let c = bp.alpha.cos();
    // (1 - γ - γ_v + γγ_v) = (γ - 1)(γ_v - 1)
    let numerator = g + gv + bp.beta * bp.beta_v * g * gv * c + (g - 1.0) * (gv - 1.0) * c * c;
    let denominator = 1.0 + g * gv + bp.beta * bp.beta_v * g * gv * c;
    numerator / denominator
}

/// Which components of the two boosted branch momenta coincide.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct DegeneracyFlags {
    /// π₀⁺ = π₀⁻ within the merge tolerance.
    pub energy_equal: bool,
    /// π_x⁺ = π_x⁻ within the merge tolerance.
    pub x_equal: bool,
    /// π_z⁺ = π_z⁻ within the merge tolerance (never for a valid scenario).
    pub z_equal: bool,
}

impl DegeneracyFlags {
    pub fn any(&self) -> bool {
        self.energy_equal || self.x_equal || self.z_equal
    }
}

/// The boosted momenta π^± = Λ (𝔭₀, 0, 0, ±𝔭) of the two branches.
#[derive(Debug, Clone, Copy)]
pub struct BranchMomenta {
    pub plus: FourVector,
    pub minus: FourVector,
    pub degeneracy: DegeneracyFlags,
}

/// Applies the boost of `bp` to the two branch momenta (𝔭₀, 0, 0, ±p_mag).
///
/// `p_mag` must be consistent with `bp.beta_v()`: p_mag = γ_v m β_v.
pub fn branch_momenta(bp: &BoostParams, p_mag: f64, m: f64) -> Result<BranchMomenta> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::Domain(format!("mass must be positive, got {m}")));
    }
    let expected = bp.gamma_v() * m * bp.beta_v();
    if !p_mag.is_finite() || (p_mag - expected).abs() > 1e-9 * expected.max(1.0) {
        return Err(Error::Domain(format!(
            "momentum magnitude {p_mag} inconsistent with beta_v = {} (expected {expected})",
            bp.beta_v
        )));
    }
    let p0 = (m * m + p_mag * p_mag).sqrt();
    let lam = bp.transform()?;
    let plus = lam.apply(FourVector::new(p0, 0.0, 0.0, p_mag));
    let minus = lam.apply(FourVector::new(p0, 0.0, 0.0, -p_mag));
    let degeneracy = DegeneracyFlags {
        energy_equal: (plus.t - minus.t).abs() <= MERGE_TOLERANCE,
        x_equal: (plus.x - minus.x).abs() <= MERGE_TOLERANCE,
        z_equal: (plus.z - minus.z).abs() <= MERGE_TOLERANCE,
    };
    Ok(BranchMomenta {
        plus,
        minus,
        degeneracy,
    })
}
