//! Dense complex linear algebra sized for the small operators of the model:
//! a cyclic Jacobi eigensolver for Hermitian matrices, eigenvalue grouping,
//! orthonormalization and subspace comparison.

mod eigen;
mod matrix;
mod spectral;
mod subspace;
mod vector;

pub use eigen::{hermitian_eig, symmetric_eig, HermitianEigen, SymmetricEigen};
pub use matrix::{ComplexMatrix, RealMatrix, C64};
pub use spectral::{group_eigenvalues, simultaneous_eig, EigenGroup, JointGroup, SpectralTable};
pub use subspace::{
    complement_in, max_principal_angle, operator_matrix, orthonormalize, project_onto, projection_residual,
    restrict_operator,
};
pub use vector::{dot, norm, VectorSpace};
