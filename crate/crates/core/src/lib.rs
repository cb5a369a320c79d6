//! Coarse-structure analysis of decay matrices from quantum spin systems.

pub mod coarse;
pub mod decay;
pub mod error;
pub mod io;
pub mod regress;
pub mod sites;
pub mod spin;
pub mod synthetic;
pub mod util;

pub use error::{Error, Result};
pub use sites::SiteSet;
