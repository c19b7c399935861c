//! Exact reconstruction of an A4-symmetric tensegrity: the stress matrix and
//! its spectral cubic, realizations in 3-space, the strut-triangle linking
//! certificate, the elliptic arithmetic of the spectral curve and the
//! trajectory curve of the strut-disk intersection point.

pub mod elliptic;
pub mod error;
pub mod exact;
pub mod linking;
pub mod par;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod tensegrity;
pub mod trajectory;
pub mod verify;

pub use error::{Error, Result};
