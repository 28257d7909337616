//! Every tolerance used anywhere in the crate, pinned in one place.
//!
//! Each constant records the value *and* the reason it is safe. Nothing in
//! the library or the test suites is allowed to invent an ad-hoc epsilon;
//! if a comparison needs slack it must come from here.

/// Default gap for deciding that a float difference is an integer when
/// partitioning parameters into congruence classes. Parameters produced by
/// unit shifts differ by exact integers up to one or two ulps, while
/// accidental near-integers in user data are vanishingly unlikely at 1e-9.
pub const INTEGER_GAP: f64 = 1e-9;

/// Float mixture weights must sum to 1 within this slack. Summing a few
/// dozen weights each rounded once keeps the error below 1e-14; 1e-12
/// leaves two orders of headroom.
pub const WEIGHT_SUM: f64 = 1e-12;

/// Two float atoms closer than this in the sup norm are treated as the same
/// support point when mixtures are combined or expanded.
pub const ATOM_MERGE: f64 = 1e-9;

/// A point given by all of its simplex coordinates must satisfy
/// |sum - 1| <= this at construction.
pub const SIMPLEX_SUM: f64 = 1e-12;

/// Equality verdict from the closed-form L2 path: distance at most
/// `L2_EQUALITY_REL * ||m_G||_2`. The closed forms are accurate to roughly
/// 1e-13 relative, so 1e-10 gives three orders of margin while remaining
/// far below any honest nonzero distance.
pub const L2_EQUALITY_REL: f64 = 1e-10;

/// Eigenvalues at most `RANK_REL * lambda_max` count as numerically zero
/// when a Gram matrix is probed for null vectors.
pub const RANK_REL: f64 = 1e-10;

/// Monte Carlo refutation threshold: the maximal normalized discrepancy
/// must exceed `MC_SIGMA * std_err + MC_FLOOR` before a pair is declared
/// unequal. Sampling alone never certifies equality.
pub const MC_SIGMA: f64 = 10.0;
pub const MC_FLOOR: f64 = 1e-8;

/// Float atom totals are "on a common slice" when the spread of the totals
/// is at most this, relative to the largest total.
pub const TOTAL_MATCH_REL: f64 = 1e-12;

/// Exponents are mapped back to lattice points during coefficient
/// extraction when each coordinate is within this of an integer.
pub const LATTICE_SNAP: f64 = 1e-9;

/// Pairwise projections onto a candidate separating direction must differ
/// by more than this, relative to their magnitudes, in float mode.
pub const SEPARATION_REL: f64 = 1e-12;

/// A squared L2 norm that comes out negative by at most this (relative to
/// the accumulated term magnitude) is clamped to zero; anything more
/// negative would indicate a genuine inconsistency upstream.
pub const NEGATIVE_CLAMP_REL: f64 = 1e-12;
