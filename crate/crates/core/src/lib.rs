//! Consistent, objective and strong objective parameter estimators evaluated
//! on deterministic equidistributed samples.
//!
//! Samples are built by pushing a Weyl sequence `{n·α}` through a quantile
//! function ([`distributions::sample_via_weyl`]), which makes every experiment
//! bit-reproducible without a random number generator. On top of that:
//!
//! * [`estimators`]: the sign-count estimator of a useful signal, point
//!   estimates of a CDF value and their tail-limit (objective) versions, the
//!   strong objective fractional-mean estimator.
//! * [`density`]: the Gaussian-kernel density estimate and three estimators of
//!   a standard deviation.
//! * [`coin`]: Bernoulli sequences in `{0,1}^N`, Cesàro estimation, and a
//!   classifier for when objective estimates exist.
//! * [`harness`]: experiment configs, built-in table reproductions, CSV and
//!   markdown reports, and the acceptance checks.

pub mod coin;
pub mod density;
pub mod distributions;
mod error;
pub mod estimators;
pub mod harness;
pub mod normal;
pub mod rng;
pub mod summation;
pub mod weyl;

pub use distributions::{DistributionKind, DistributionSpec, SampleWindow};
pub use error::{Error, Result};
pub use weyl::IrrationalId;
