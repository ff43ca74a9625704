//! Number formatting shared by reports and CSV output.

/// Rounds `x` to `digits` significant digits and prints the shortest decimal
/// string that round-trips the rounded value. Magnitudes below `1e-4` or
/// from `1e16` up switch to exponent form. Negative zero prints as `0`.
pub fn sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("scientific formatting parses back");
    if rounded == 0.0 {
        return "0".to_string();
    }
    let magnitude = rounded.abs();
    if !(1e-4..1e16).contains(&magnitude) {
        return format!("{rounded:e}");
    }
    format!("{rounded}")
}

/// Twelve significant digits, used for CSV and machine-readable output.
pub fn csv_number(x: f64) -> String {
    sig(x, 12)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(sig(0.9463834764831844, 6), "0.946383");
        assert_eq!(sig(11.0 / 27.0, 12), "0.407407407407");
        assert_eq!(sig(3.0000000000000004, 12), "3");
        assert_eq!(sig(-0.0, 6), "0");
        assert_eq!(sig(-1e-20, 6), "-1e-20");
        assert_eq!(sig(-2.7755575615628914e-17, 12), "-2.77555756156e-17");
        assert_eq!(sig(0.000142704578926, 6), "0.000142705");
        assert_eq!(sig(2.5e16, 6), "2.5e16");
        assert_eq!(sig(1.0 / 3.0, 6), "0.333333");
        assert_eq!(sig(f64::NAN, 6), "NaN");
    }
}
