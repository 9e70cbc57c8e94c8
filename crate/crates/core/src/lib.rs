pub mod coxeter;
pub mod error;
pub mod multiplicity;
pub mod rational;
pub mod root_datum;
pub mod root_system;
pub mod series;
pub mod springer;
pub mod strata;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;
pub use root_datum::{CoweightQ, RootDatum, WeightQ};
pub use root_system::{RootSystem, WeylElement};
pub use series::{LaurentSeries, Valuation};
pub use torus::{GammaInvariants, TorusElement, ValuationProfile};
