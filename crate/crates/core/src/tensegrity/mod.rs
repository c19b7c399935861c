//! The A4-symmetric tensegrity: group, representation, stress matrix and
//! realized framework.

pub mod framework;
pub mod group;
pub mod stress;

pub use framework::{realize, realize_at, Edge, EdgeKind, Framework, GeometryRecord};
pub use group::{Perm, RepMatrix, A4};
pub use stress::{null_vector, p0_polynomial, stress_matrix, StressMatrix};

/// Group, representation and stress matrix, built and verified once.
#[derive(Clone, Debug)]
pub struct Construction {
    pub group: A4,
    pub omega: StressMatrix,
}

impl Construction {
    pub fn new() -> crate::Result<Self> {
        Ok(Self {
            group: A4::build()?,
            omega: stress_matrix()?,
        })
    }

    pub fn realize<S: crate::scalar::Scalar>(&self, x: S) -> crate::Result<Framework<S>> {
        realize(&self.group, &self.omega, x)
    }

    pub fn realize_at<S: crate::scalar::Scalar>(
        &self,
        pt: crate::spectral::StressPoint<S>,
    ) -> crate::Result<Framework<S>> {
        realize_at(&self.group, &self.omega, pt)
    }
}
