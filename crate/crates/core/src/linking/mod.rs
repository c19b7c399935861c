//! Strut-disk intersection parameters, linking numbers of the strut
//! triangles and the sign-persistence certificate.

pub mod certificate;
pub mod crossing;
pub mod formulas;
pub mod params;

pub use certificate::{persistence_certificate, remark_check, CertificateReport, RemarkReport};
pub use crossing::{linking_matrix, triangle_pair_linking, LinkingMatrix, DEFAULT_MARGIN};
pub use formulas::{derive_intersection_formulas, IntersectionFormulas};
pub use params::{intersection_params_at, Crossing, IntersectionParams};
