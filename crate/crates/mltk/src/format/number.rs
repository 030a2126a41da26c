/// Shortest text that parses back to exactly `v`. Integral values print
/// without a fractional part; very large or small magnitudes use exponent
/// notation when that is shorter.
pub fn format_number(v: f64) -> String {
    if v.is_finite() && v == v.trunc() && v.abs() < 1e15 {
        return format!("{}", v as i64);
    }
    let plain = format!("{v}");
    let exp = format!("{v:e}");
    if exp.len() < plain.len() {
        exp
    } else {
        plain
    }
}
