use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::RebuildingError;
use crate::homology::IntegerMatrix;

/// Cellular chain complex up to degree `alpha`: `boundaries[j-1]` is `∂_j`,
/// a `cell_counts[j-1] × cell_counts[j]` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwChainData {
    pub cell_counts: Vec<usize>,
    pub boundaries: Vec<IntegerMatrix>,
}

impl CwChainData {
    pub fn alpha(&self) -> usize {
        self.cell_counts.len().saturating_sub(1)
    }

    /// `∂_j` for `1 ≤ j ≤ alpha`.
    pub fn boundary(&self, j: usize) -> &IntegerMatrix {
        &self.boundaries[j - 1]
    }

    fn check(&self, alpha: usize, name: &str) -> Result<(), RebuildingError> {
        if self.cell_counts.len() != alpha + 1 || self.boundaries.len() != alpha {
            return Err(RebuildingError::Shape(format!(
                "{name} needs {} cell counts and {alpha} boundary matrices",
                alpha + 1
            )));
        }
        for j in 1..=alpha {
            let want = (self.cell_counts[j - 1], self.cell_counts[j]);
            if self.boundary(j).shape() != want {
                return Err(RebuildingError::Shape(format!(
                    "{name} ∂_{j} is {:?}, expected {want:?}",
                    self.boundary(j).shape()
                )));
            }
        }
        Ok(())
    }
}

/// Chain data of a rebuilding of `y` by the (smaller) complex `y_prime`.
///
/// `g[j]: C_j(Y) → C_j(Y')`, `h[j]: C_j(Y') → C_j(Y)` for `j ≤ alpha`, and
/// `rho[j]: C_j(Y) → C_{j+1}(Y)` for `j < alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RebuildingData {
    pub alpha: usize,
    pub y: CwChainData,
    pub y_prime: CwChainData,
    pub g: Vec<IntegerMatrix>,
    pub h: Vec<IntegerMatrix>,
    pub rho: Vec<IntegerMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub degree: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<IdentityCheck>,
    pub passes: bool,
}

impl ValidationReport {
    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

impl RebuildingData {
    /// `Y' = Y`, `g = h = id`, `ρ = 0`.
    pub fn identity(y: CwChainData) -> Self {
        let alpha = y.alpha();
        let id: Vec<IntegerMatrix> = y.cell_counts.iter().map(|&n| IntegerMatrix::identity(n)).collect();
        let rho = (0..alpha).map(|j| IntegerMatrix::zeros(y.cell_counts[j + 1], y.cell_counts[j])).collect();
        RebuildingData { alpha, y_prime: y.clone(), y, g: id.clone(), h: id, rho }
    }

    /// The circle with `n` vertices and edges `e_k = [v_k, v_{k+1}]`, rebuilt by
    /// the one-vertex circle: `g` collapses everything onto the base cell,
    /// `h` goes once around, and `ρ_0(v_k) = e_0 + … + e_{k-1}`.
    pub fn subdivided_circle(n: usize) -> Self {
        assert!(n >= 1, "need at least one vertex");
        let mut d1 = IntegerMatrix::zeros(n, n);
        for k in 0..n {
            d1.add_to((k + 1) % n, k, 1);
            d1.add_to(k, k, -1);
        }
        let ones_row = IntegerMatrix::from_rows(n, &[vec![1i64; n]]).expect("one row");
        let mut base = IntegerMatrix::zeros(n, 1);
        base.set(0, 0, BigInt::from(1));
        let ones_col = ones_row.transpose();
        let mut rho0 = IntegerMatrix::zeros(n, n);
        for k in 0..n {
            for e in 0..k {
                rho0.set(e, k, BigInt::from(1));
            }
        }
        RebuildingData {
            alpha: 1,
            y: CwChainData { cell_counts: vec![n, n], boundaries: vec![d1] },
            y_prime: CwChainData { cell_counts: vec![1, 1], boundaries: vec![IntegerMatrix::zeros(1, 1)] },
            g: vec![ones_row.clone(), ones_row],
            h: vec![base, ones_col],
            rho: vec![rho0],
        }
    }

    pub(crate) fn check_shapes(&self) -> Result<(), RebuildingError> {
        let a = self.alpha;
        self.y.check(a, "Y")?;
        self.y_prime.check(a, "Y'")?;
        if self.g.len() != a + 1 || self.h.len() != a + 1 || self.rho.len() != a {
            return Err(RebuildingError::Shape(format!("need {} g and h maps and {a} rho maps", a + 1)));
        }
        let (c, cp) = (&self.y.cell_counts, &self.y_prime.cell_counts);
        for j in 0..=a {
            if self.g[j].shape() != (cp[j], c[j]) {
                return Err(RebuildingError::Shape(format!("g_{j} must be {} x {}", cp[j], c[j])));
            }
            if self.h[j].shape() != (c[j], cp[j]) {
                return Err(RebuildingError::Shape(format!("h_{j} must be {} x {}", c[j], cp[j])));
            }
        }
        for j in 0..a {
            if self.rho[j].shape() != (c[j + 1], c[j]) {
                return Err(RebuildingError::Shape(format!("rho_{j} must be {} x {}", c[j + 1], c[j])));
            }
        }
        Ok(())
    }
}

/// Check every chain-map and homotopy identity by exact integer arithmetic.
pub fn validate_rebuilding(d: &RebuildingData) -> Result<ValidationReport, RebuildingError> {
    d.check_shapes()?;
    let a = d.alpha;
    let mut checks = Vec::new();
    let mut push = |identity: &str, degree: usize, holds: bool| {
        checks.push(IdentityCheck { identity: identity.to_string(), degree, holds })
    };
    for j in 1..a {
        push("∂_j ∂_{j+1} = 0 in Y", j, (d.y.boundary(j) * d.y.boundary(j + 1)).is_zero());
        push("∂'_j ∂'_{j+1} = 0 in Y'", j, (d.y_prime.boundary(j) * d.y_prime.boundary(j + 1)).is_zero());
    }
    for j in 1..=a {
        push("∂'_j g_j = g_{j-1} ∂_j", j, d.y_prime.boundary(j) * &d.g[j] == &d.g[j - 1] * d.y.boundary(j));
        push("∂_j h_j = h_{j-1} ∂'_j", j, d.y.boundary(j) * &d.h[j] == &d.h[j - 1] * d.y_prime.boundary(j));
    }
    for j in 0..a {
        let lhs = IntegerMatrix::identity(d.y.cell_counts[j]).checked_sub(&(&d.h[j] * &d.g[j])).expect("square");
        let mut rhs = d.y.boundary(j + 1) * &d.rho[j];
        if j > 0 {
            rhs = rhs.checked_add(&(&d.rho[j - 1] * d.y.boundary(j))).expect("same shape");
        }
        push("id - h_j g_j = ∂_{j+1} ρ_j + ρ_{j-1} ∂_j", j, lhs == rhs);
    }
    let passes = checks.iter().all(|c| c.holds);
    Ok(ValidationReport { checks, passes })
}
