//! Exact scalars and truncated series.

mod ppoly;
mod pratfunc;
mod rational;
mod scalar;
mod series;

pub use ppoly::PPoly;
pub use pratfunc::{prat_normalize, PRatFunc};
pub use rational::Rational;
pub use scalar::Scalar;
pub use series::{series_recip_shifted, BiSeries};
