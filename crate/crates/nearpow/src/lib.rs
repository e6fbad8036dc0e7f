//! Certified arithmetic for the fractional parts of powers of real algebraic numbers.
//!
//! Given a primitive integer polynomial defining a real algebraic number
//! `alpha > 1`, this crate isolates all conjugate roots with certified
//! enclosures, classifies `alpha` (Pisot / Salem-like / quadratic Pisot unit /
//! pure power of a rational), computes the effective Liouville constant
//! `C(alpha)`, and evaluates the distance `||alpha^n||` from each power to its
//! nearest integer as a certified interval, together with the lower and upper
//! bounds that the classification implies.
//!
//! Everything numeric is interval arithmetic over arbitrary-precision dyadic
//! numbers with outward rounding; a comparison is only ever reported once it
//! is certified, and precision escalates automatically (up to a hard cap)
//! until it is.




pub mod dyadic;
pub mod error;

pub mod interval;


pub use dyadic::Dyadic;
pub use error::Error;

/// Hard ceiling on working precision, in bits. Exceeding it is an error,
/// never a silently degraded answer.
pub const ESCALATION_CAP_BITS: u32 = 1 << 20;
