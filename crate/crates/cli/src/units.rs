/// Parses a frequency in Hz. Accepts plain or scientific notation and an
/// optional `k`, `M`, `G` or `T` multiplier, optionally followed by `Hz`.
pub fn parse_frequency(s: &str) -> Result<f64, String> {
    let trimmed = s.trim();
    let body = trimmed
        .strip_suffix("Hz")
        .or_else(|| trimmed.strip_suffix("hz"))
        .unwrap_or(trimmed);
    let (number, scale) = match body.chars().last() {
        Some('k') | Some('K') => (&body[..body.len() - 1], 1e3),
        Some('M') => (&body[..body.len() - 1], 1e6),
        Some('G') | Some('g') => (&body[..body.len() - 1], 1e9),
        Some('T') | Some('t') => (&body[..body.len() - 1], 1e12),
        _ => (body, 1.0),
    };
    let value: f64 = number
        .parse()
        .map_err(|_| format!("invalid frequency `{s}`"))?;
    let hz = value * scale;
    if hz.is_finite() && hz > 0.0 {
        Ok(hz)
    } else {
        Err(format!("frequency must be positive, got `{s}`"))
    }
}
