//! Twist-height census of the curves with a 7-isogeny, brute-force oracles,
//! the counting functions `N^tw(X)`, `N(X)` and the Möbius sieve identities.

mod brute;
mod count;
mod enumerate;
mod record;
mod sieve;

pub use brute::{brute_c_bound, enumerate_brute, enumerate_brute_with, BRUTE_GUARD};
pub use count::{
    count_from_records, count_rational, count_rational_brute, count_twist, rational_count,
    CountReport, RATIONAL_BRUTE_GUARD,
};
pub use enumerate::{census_table_bound, enumerate_census, enumerate_census_with};
pub use record::{compare_records, j_invariants_distinct, make_record, CurveRecord, Discrepancy};
pub use sieve::{
    defect_sieve_bound, m_de, m_e, m_sieve_identity, twist_sieve_bound, twist_sieve_identity,
    M_GUARD,
};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// `x` as `f64` (nearest, or infinity beyond range).
pub(crate) fn to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
