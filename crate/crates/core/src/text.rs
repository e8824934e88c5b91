//! Shared rendering of linear combinations.

use crate::scalar::{format, Scalar};
use num_traits::{One, Signed, Zero};

/// Joins `(coefficient, monomial)` pairs into `3*p_1 + e - a*b`. An empty
/// monomial stands for the constant `1`. With `compact` the separators carry
/// no spaces, as used inside parentheses.
pub fn join_terms(items: &[(Scalar, String)], compact: bool) -> String {
    let mut out = String::new();
    for (c, m) in items {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(match (neg, compact) {
                (true, true) => "-",
                (false, true) => "+",
                (true, false) => " - ",
                (false, false) => " + ",
            });
        }
        if m.is_empty() {
            out.push_str(&format(&mag));
        } else if mag.is_one() {
            out.push_str(m);
        } else {
            out.push_str(&format(&mag));
            out.push('*');
            out.push_str(m);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
