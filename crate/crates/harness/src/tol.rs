//! Every tolerance the checkers use, pinned in one place.

/// Relative slack on suites whose constants are explicit. A case is a
/// violation when lhs/rhs > 1 + this.
pub const SLACK_EXPLICIT: f64 = 1e-9;

/// Relative slack where a quadrature oracle sits on one side.
pub const SLACK_QUADRATURE: f64 = 1e-6;

/// Two-route identity agreement (closed form vs layer cake and friends).
pub const TOL_IDENTITY: f64 = 1e-9;

/// Series-vs-moments agreement in the exponential-integral checks.
pub const TOL_SERIES: f64 = 1e-9;

/// Truncation rule for the tail series: stop once a term drops below
/// this fraction of the partial sum.
pub const SERIES_TERM_CUTOFF: f64 = 1e-15;
pub const SERIES_TERM_CAP: usize = 512;

/// Estimated-constant suites pass on boundedness: the fitted slope of the
/// q-normalized ratio must stay inside this band.
pub const IMPLICIT_SLOPE_LIMIT: f64 = 0.1;

/// Allowed spread of an estimated constant across reruns with fresh seeds.
pub const SEED_SPREAD_LIMIT: f64 = 0.10;

/// Unbounded-exemplar growth experiment: fitted log-log slope band.
pub const GROWTH_SLOPE_LO: f64 = 0.85;
pub const GROWTH_SLOPE_HI: f64 = 1.15;

/// Bounded contrast family must show essentially flat growth.
pub const CONTRAST_SLOPE_LIMIT: f64 = 0.1;

/// A grid counts as degenerate (constant, or zero) when its oscillation
/// norm falls below this times its sup. Exact zero is wrong here: averaging
/// over cell counts that are not powers of two rounds by an ulp.
pub const VACUITY_RELATIVE: f64 = 1e-13;

/// Default exponent grid for growth scans; geometric so the log-log fit
/// gets evenly spaced abscissae.
pub const DEFAULT_Q_GRID: [f64; 5] = [4.0, 8.0, 16.0, 32.0, 64.0];
