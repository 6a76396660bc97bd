//! Rounding and formatting of floating-point values to a fixed number of
//! significant digits.
//!
//! Reported quantities (entropies, probabilities, optimizer outputs) are
//! rounded to 12 significant digits before serialization so that repeated
//! runs produce byte-identical files and so that sub-epsilon noise never
//! leaks into output artifacts.

use serde::Serializer;

/// Round `x` to 12 significant digits.
///
/// Implemented by formatting with 11 fractional digits in scientific
/// notation and parsing back; this is exact for the round-trip because 12
/// decimal digits are well within f64's 15–17 digit precision.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("round-trip of finite f64")
}

/// Format `x` with 12 significant digits, using the shortest decimal
/// representation of the rounded value (e.g. `0.0910907256604`, `2.5e-13`).
pub fn fmt_sig12(x: f64) -> String {
    format!("{}", round_sig12(x))
}

/// Serde adapter: serialize an `f64` rounded to 12 significant digits.
///
/// Use with `#[serde(serialize_with = "crate::numfmt::ser_sig12")]`.
pub fn ser_sig12<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig12(*x))
}

/// Serde adapter: serialize a fixed-size array of `f64`s, each rounded to
/// 12 significant digits.
pub fn ser_sig12_arr<S: Serializer, const N: usize>(
    xs: &[f64; N],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(N))?;
    for x in xs {
        seq.serialize_element(&round_sig12(*x))?;
    }
    seq.end()
}

/// Serde adapter: serialize a slice of `f64`s, each rounded to 12
/// significant digits.
pub fn ser_sig12_slice<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&round_sig12(*x))?;
    }
    seq.end()
}

/// Serde adapter: like [`ser_sig12_slice`] for an optional vector.
pub fn ser_sig12_opt_vec<S: Serializer>(
    xs: &Option<Vec<f64>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match xs {
        Some(v) => ser_sig12_slice(v, s),
        None => s.serialize_none(),
    }
}
