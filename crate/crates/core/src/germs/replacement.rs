use crate::groups::Subgroup;
use crate::ratlin::Subspace;

use super::{build_germ, GermError, MapGerm};

/// Comparison of a germ with its companion `eta ∘ f`, `eta theta eta^-1`.
#[derive(Clone, Debug)]
pub struct ReplacementReport {
    pub eta: usize,
    pub companion: MapGerm,
    pub kernel: Subspace,
    pub companion_kernel: Subspace,
    pub n: Subgroup,
    pub companion_n: Subgroup,
}

impl ReplacementReport {
    pub fn kernels_equal(&self) -> bool {
        self.kernel == self.companion_kernel
    }

    pub fn n_equal(&self) -> bool {
        self.n == self.companion_n
    }

    pub fn passed(&self) -> bool {
        self.kernels_equal() && self.n_equal()
    }
}

/// Builds the companion germ for target element `eta` and compares kernels
/// at the base point and the kernels of the two homomorphisms.
pub fn lift_replacement_invariance(germ: &MapGerm, eta: usize) -> Result<ReplacementReport, GermError> {
    let eta_m = germ.target().group().element(eta).clone();
    let lift = germ.lift().apply_output(&eta_m);
    let theta = germ.theta().conjugated_by(eta);
    let companion = build_germ(germ.source(), germ.target(), lift, theta, Some(germ.base_point().to_vec()))?;
    Ok(ReplacementReport {
        eta,
        kernel: germ.kernel_at(germ.base_point())?,
        companion_kernel: companion.kernel_at(companion.base_point())?,
        n: germ.theta().kernel(),
        companion_n: companion.theta().kernel(),
        companion,
    })
}
