/// `v` in scientific notation with `digits` significant digits.
pub fn sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        // avoid "-0e0"
        return format!("{:.*e}", digits - 1, 0.0);
    }
    format!("{:.*e}", digits - 1, v)
}

/// Rounds to `digits` significant digits, for JSON reports.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if !v.is_finite() {
        return v;
    }
    sig(v, digits).parse().unwrap_or(v)
}

/// Evenly spaced points xmin, xmin + step, … up to xmax (inclusive within
/// half a step).
pub fn steps(xmin: f64, xmax: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0) || xmax < xmin {
        return Vec::new();
    }
    let count = ((xmax - xmin) / step + 0.5).floor() as usize + 1;
    (0..count).map(|i| xmin + i as f64 * step).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_digits() {
        assert_eq!(sig(1.0 / 3.0, 4), "3.333e-1");
        assert_eq!(sig(-0.0, 3), "0.00e0");
        assert_eq!(steps(-5.0, 2.0, 0.1).len(), 71);
        assert_eq!(round_sig(0.123456789, 3), 0.123);
    }
}
