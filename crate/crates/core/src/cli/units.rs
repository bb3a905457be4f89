//! Flag grammar for physical values.
//!
//! Frequencies: `2pi*10MHz` is an ordinary frequency converted to rad/s;
//! without the `2pi*` prefix the number is already angular, so `10MHz` means
//! 1e7 rad/s and a bare number is rad/s. Lengths take `m`, `mm`, `um`/`µm`
//! or `nm`; times take `s`, `ms`, `us`/`µs` or `ns`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

fn split_number(text: &str) -> (&str, &str) {
    let end = text
        .char_indices()
        .find(|&(i, c)| {
            !(c.is_ascii_digit()
                || c == '.'
                || c == '+'
                || c == '-'
                || ((c == 'e' || c == 'E')
                    && text[i + 1..]
                        .chars()
                        .next()
                        .is_some_and(|n| n.is_ascii_digit() || n == '-' || n == '+')))
        })
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    (&text[..end], text[end..].trim())
}

fn number(name: &'static str, text: &str) -> Result<f64> {
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::invalid(name, format!("`{text}` is not a number")))
}

fn with_suffix(name: &'static str, text: &str, table: &[(&str, f64)]) -> Result<f64> {
    let (num, suffix) = split_number(text.trim());
    let value = number(name, num)?;
    let scale = table
        .iter()
        .find(|(s, _)| *s == suffix)
        .map(|&(_, f)| f)
        .ok_or_else(|| {
            let known: Vec<&str> = table
                .iter()
                .map(|(s, _)| *s)
                .filter(|s| !s.is_empty())
                .collect();
            Error::invalid(
                name,
                format!(
                    "unknown unit `{suffix}` in `{text}` (use {})",
                    known.join(", ")
                ),
            )
        })?;
    Ok(value * scale)
}

/// Frequency in rad/s.
pub fn parse_frequency(text: &str) -> Result<f64> {
    let t = text.trim();
    let lower = t.to_ascii_lowercase();
    let (two_pi, rest) = ["2pi*", "2*pi*", "2π*"]
        .iter()
        .find(|p| lower.starts_with(*p))
        // ASCII lowercasing keeps byte offsets, so the prefix length carries over.
        .map(|p| (true, &t[p.len()..]))
        .unwrap_or((false, t));
    let table = [
        ("", 1.0),
        ("rad/s", 1.0),
        ("Hz", 1.0),
        ("kHz", 1e3),
        ("MHz", 1e6),
        ("GHz", 1e9),
        ("THz", 1e12),
    ];
    let v = with_suffix("frequency", rest, &table)?;
    Ok(if two_pi { 2.0 * PI * v } else { v })
}

/// Length in m.
pub fn parse_length(text: &str) -> Result<f64> {
    let table = [
        ("", 1.0),
        ("m", 1.0),
        ("mm", 1e-3),
        ("um", 1e-6),
        ("µm", 1e-6),
        ("μm", 1e-6),
        ("nm", 1e-9),
    ];
    with_suffix("length", text, &table)
}

/// Time in s.
pub fn parse_time(text: &str) -> Result<f64> {
    let table = [
        ("", 1.0),
        ("s", 1.0),
        ("ms", 1e-3),
        ("us", 1e-6),
        ("µs", 1e-6),
        ("μs", 1e-6),
        ("ns", 1e-9),
    ];
    with_suffix("time", text, &table)
}

pub fn parse_plain(name: &'static str, text: &str) -> Result<f64> {
    number(name, text.trim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn frequency_grammar() {
        assert_relative_eq!(
            parse_frequency("2pi*10MHz").unwrap(),
            2.0 * PI * 1e7,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            parse_frequency("2*PI*100GHz").unwrap(),
            2.0 * PI * 1e11,
            max_relative = 1e-15
        );
        assert_eq!(parse_frequency("10MHz").unwrap(), 1e7);
        assert_eq!(parse_frequency("6.2832e7").unwrap(), 6.2832e7);
        assert_eq!(parse_frequency("1.5e3 rad/s").unwrap(), 1500.0);
        assert!(parse_frequency("10 furlongs").is_err());
        assert!(parse_frequency("fast").is_err());
    }

    #[test]
    fn length_and_time_grammar() {
        assert_relative_eq!(parse_length("50um").unwrap(), 50e-6, max_relative = 1e-15);
        assert_relative_eq!(
            parse_length("103 µm").unwrap(),
            103e-6,
            max_relative = 1e-15
        );
        assert_relative_eq!(parse_length("10mm").unwrap(), 1e-2, max_relative = 1e-15);
        assert_eq!(parse_length("2e-4").unwrap(), 2e-4);
        assert_relative_eq!(parse_time("12.5ms").unwrap(), 12.5e-3, max_relative = 1e-15);
        assert!(parse_length("3 parsecs").is_err());
    }
}
