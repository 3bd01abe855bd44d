use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

/// Largest magnitude accepted for integer edge weights.
///
/// Potential sums stay well inside `i64` as long as inputs fit in 32 bits,
/// which gives the arithmetic twice the bit headroom of the weights.
pub const MAX_INT_WEIGHT_MAGNITUDE: u64 = 1 << 31;

/// Edge-weight arithmetic. The default concrete type is `i64` with exact
/// comparisons; `f64` is supported with a configurable slack tolerance.
pub trait Weight:
    Copy
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;

    /// Sentinel strictly greater than any reachable potential sum.
    /// Never used as an operand of `+`/`-`, only compared against.
    const INF: Self;

    fn is_finite_weight(self) -> bool;

    fn magnitude(self) -> Self;

    /// Whether the value is small enough that all derived potential sums
    /// remain representable.
    fn within_headroom(self) -> bool;

    /// Tolerance used for `d = 0` slack tests when none is supplied:
    /// exact for integers, `1e-9 * max|w|` for reals.
    fn default_tolerance(max_abs: Self) -> Self;

    /// `self * n`, for scaling tolerances by a term count.
    fn times(self, n: usize) -> Self;

    /// Textual form that survives a round-trip through the graph text
    /// format without changing mode (reals always keep a `.`).
    fn format_token(self) -> String;
}

impl Weight for i64 {
    const ZERO: Self = 0;
    const INF: Self = i64::MAX;

    fn is_finite_weight(self) -> bool {
        true
    }

    fn magnitude(self) -> Self {
        self.abs()
    }

    fn within_headroom(self) -> bool {
        self.unsigned_abs() <= MAX_INT_WEIGHT_MAGNITUDE
    }

    fn default_tolerance(_max_abs: Self) -> Self {
        0
    }

    fn times(self, n: usize) -> Self {
        self * n as i64
    }

    fn format_token(self) -> String {
        self.to_string()
    }
}

impl Weight for f64 {
    const ZERO: Self = 0.0;
    const INF: Self = f64::INFINITY;

    fn is_finite_weight(self) -> bool {
        self.is_finite()
    }

    fn magnitude(self) -> Self {
        self.abs()
    }

    fn within_headroom(self) -> bool {
        true
    }

    fn default_tolerance(max_abs: Self) -> Self {
        1e-9 * max_abs
    }

    fn times(self, n: usize) -> Self {
        self * n as f64
    }

    fn format_token(self) -> String {
        // Debug formatting keeps a trailing `.0` on round values.
        format!("{self:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_headroom_bound() {
        assert!(Weight::within_headroom(1i64 << 31));
        assert!(!Weight::within_headroom((1i64 << 31) + 1));
        assert!(Weight::within_headroom(-(1i64 << 31)));
    }

    #[test]
    fn real_tokens_keep_mode() {
        assert_eq!(5.0f64.format_token(), "5.0");
        assert_eq!(5i64.format_token(), "5");
    }

    #[test]
    fn default_tolerances() {
        assert_eq!(<i64 as Weight>::default_tolerance(1000), 0);
        let t = <f64 as Weight>::default_tolerance(1000.0);
        assert!(t > 0.0 && t < 1e-5);
    }
}
