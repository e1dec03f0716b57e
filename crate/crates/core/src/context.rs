use std::sync::OnceLock;

use crate::error::Result;
use crate::lie::{CartanDecomposition, GrassmannParameter, TangentVector};
use crate::roots::{restricted_root_decomposition, RootSystemData};
use crate::structures::QuaternionBasis;
use crate::tolerance::Tolerances;

/// Immutable model of SU(2,m)/S(U₂U_m) at the base point: the Cartan
/// decomposition, the quaternionic basis and the tolerances, with the root
/// decomposition computed on first use.
///
/// The context is `Send + Sync` and may be shared between threads.
#[derive(Debug)]
pub struct Grassmannian {
    param: GrassmannParameter,
    tol: Tolerances,
    cartan: CartanDecomposition,
    quaternions: QuaternionBasis,
    roots: OnceLock<Result<RootSystemData>>,
}

impl Grassmannian {
    pub fn new(m: usize, tol: Tolerances) -> Result<Self> {
        let param = GrassmannParameter::new(m)?;
        Ok(Self {
            param,
            tol,
            cartan: CartanDecomposition::new(param, tol.eps_rank),
            quaternions: QuaternionBasis::canonical(),
            roots: OnceLock::new(),
        })
    }

    pub fn with_defaults(m: usize) -> Result<Self> {
        Self::new(m, Tolerances::default())
    }

    pub fn m(&self) -> usize {
        self.param.m()
    }

    /// Real dimension `4m` of the tangent space.
    pub fn dim(&self) -> usize {
        self.param.dim_p()
    }

    pub fn param(&self) -> GrassmannParameter {
        self.param
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn cartan(&self) -> &CartanDecomposition {
        &self.cartan
    }

    pub fn quaternions(&self) -> &QuaternionBasis {
        &self.quaternions
    }

    pub fn roots(&self) -> Result<&RootSystemData> {
        self.roots
            .get_or_init(|| restricted_root_decomposition(self.param, &self.cartan, &self.tol))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Vector with the given coordinates in the canonical orthonormal basis.
    pub fn vector(&self, coords: &[f64]) -> TangentVector {
        TangentVector::from_coords(self.m(), coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shares_across_threads() {
        let g = std::sync::Arc::new(Grassmannian::with_defaults(3).unwrap());
        let handles: Vec<_> = (0..2)
            .map(|_| {
                let g = g.clone();
                std::thread::spawn(move || g.roots().unwrap().k0_dim)
            })
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), 2);
        }
        assert!(Grassmannian::with_defaults(1).is_err());
    }
}
