//! Rigorous high-precision evaluation: enclosures, reference constants,
//! truncated sums with certified tails, and catalog verification.

mod constants;
mod hpfloat;
mod partial;
mod sum;
mod verify;

pub use constants::{base_value, ref_pi, ref_zeta3, target_value};
pub use hpfloat::{fmt_decimal, HPFloat};
pub use partial::{check_glaisher_partial, check_guillera_partial, glaisher_partial_failure, guillera_partial_failure};
pub use sum::{sum_series, sum_series_with, Truncation};
pub use verify::{
    check_identity8, compare, digits_agreement, identity8_lhs_spec, identity8_rhs_spec, sum_decay_to, sum_geometric_to, verify_entry, EvalReport,
    Identity8Report, Status,
};
