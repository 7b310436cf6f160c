use serde::Serialize;

use super::data::{validate_rebuilding, RebuildingData};
use super::norm::operator_norm;
use super::RebuildingError;

/// Relative slack in `lhs ≤ rhs`, so that the least passing `κ` computed by
/// division still passes after multiplying back.
const SLACK: f64 = 1e-12;

fn at_most(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + SLACK * rhs.abs()
}

/// One side-by-side inequality `lhs ≤ rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub quantity: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeQuality {
    pub degree: usize,
    /// `|Y'_j| ≤ κ T⁻¹ |Y_j|`.
    pub cells: BoundCheck,
    /// `log‖·‖ ≤ κ(1 + log T)` for `g_j`, `h_j`, and for `j ≥ 1` also `ρ_{j-1}` and `∂'_j`.
    pub norms: Vec<BoundCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QualityReport {
    pub log: &'static str,
    pub t: f64,
    pub kappa: f64,
    pub per_degree: Vec<DegreeQuality>,
    pub overall: bool,
}

/// `(name, log‖map‖)` for every map entering degree `j`'s norm bound.
fn log_norms(d: &RebuildingData, j: usize) -> Vec<(String, f64)> {
    let mut out =
        vec![(format!("g_{j}"), operator_norm(&d.g[j]).ln()), (format!("h_{j}"), operator_norm(&d.h[j]).ln())];
    if j >= 1 {
        out.push((format!("rho_{}", j - 1), operator_norm(&d.rho[j - 1]).ln()));
        out.push((format!("d'_{j}"), operator_norm(d.y_prime.boundary(j)).ln()));
    }
    out
}

fn require_valid(d: &RebuildingData) -> Result<(), RebuildingError> {
    let v = validate_rebuilding(d)?;
    if let Some(first) = v.failures().first() {
        return Err(RebuildingError::Unvalidated(format!("{} fails in degree {}", first.identity, first.degree)));
    }
    Ok(())
}

/// Evaluate both bound families for every degree `j ≤ alpha`. Logs are natural;
/// the log of a zero norm is `-∞`, which satisfies every bound.
pub fn quality_check(d: &RebuildingData, t: f64, kappa: f64) -> Result<QualityReport, RebuildingError> {
    if !(t >= 1.0 && kappa >= 1.0) {
        return Err(RebuildingError::BadParameter);
    }
    require_valid(d)?;
    let norm_bound = kappa * (1.0 + t.ln());
    let per_degree: Vec<DegreeQuality> = (0..=d.alpha)
        .map(|j| {
            let lhs = d.y_prime.cell_counts[j] as f64;
            let rhs = kappa / t * d.y.cell_counts[j] as f64;
            let cells = BoundCheck { quantity: format!("|Y'_{j}|"), lhs, rhs, ok: at_most(lhs, rhs) };
            let norms = log_norms(d, j)
                .into_iter()
                .map(|(name, l)| BoundCheck {
                    quantity: format!("log ||{name}||"),
                    lhs: l,
                    rhs: norm_bound,
                    ok: at_most(l, norm_bound),
                })
                .collect();
            DegreeQuality { degree: j, cells, norms }
        })
        .collect();
    let overall = per_degree.iter().all(|q| q.cells.ok && q.norms.iter().all(|n| n.ok));
    Ok(QualityReport { log: "natural", t, kappa, per_degree, overall })
}

/// Least `κ ≥ 1` passing [`quality_check`] at this `T`; `∞` when some `Y_j`
/// is empty while `Y'_j` is not.
pub fn minimal_kappa(d: &RebuildingData, t: f64) -> Result<f64, RebuildingError> {
    if t.is_nan() || t < 1.0 {
        return Err(RebuildingError::BadParameter);
    }
    require_valid(d)?;
    let mut kappa: f64 = 1.0;
    for j in 0..=d.alpha {
        let (cp, c) = (d.y_prime.cell_counts[j], d.y.cell_counts[j]);
        if cp > 0 {
            if c == 0 {
                return Ok(f64::INFINITY);
            }
            kappa = kappa.max(cp as f64 * t / c as f64);
        }
        for (_, l) in log_norms(d, j) {
            kappa = kappa.max(l / (1.0 + t.ln()));
        }
    }
    Ok(kappa)
}
