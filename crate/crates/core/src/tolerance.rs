/// Numerical tolerances shared by every computation in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Consecutive eigenvalues closer than this are merged into one group.
    pub eps_group: f64,
    /// Residual threshold for identities, symmetry and orthonormality checks.
    pub eps_resid: f64,
    /// Vectors whose residual norm falls below this are dropped as dependent.
    pub eps_rank: f64,
    /// Angular threshold (radians) for the singular-vector classification.
    pub eps_angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_group: 1e-7,
            eps_resid: 1e-9,
            eps_rank: 1e-10,
            eps_angle: 1e-7,
        }
    }
}
