pub mod error;
pub mod examples;
pub mod lattice;
pub mod laws;
pub mod linalg;
pub mod props;
pub mod reduction;
pub mod ring;
pub mod term;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// How a scan covers its case space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}
