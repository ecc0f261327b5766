pub mod error;
pub mod grasseq;
pub mod grobner;
pub mod higgsfield;
pub mod par;
pub mod polyring;
pub mod rank2;
pub mod spectral;
pub mod structure;
pub mod systems;

pub use error::{Error, Result};
