use num_complex::Complex64;

/// Parses `1.5`, `-2i`, `3-0.5i`, `1e-3+2e-1i`.
pub fn parse_complex(src: &str) -> Result<Complex64, String> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("invalid complex number '{src}'");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?))
}

/// Parses `X,Y` with complex coordinates.
pub fn parse_point(src: &str) -> Result<[Complex64; 2], String> {
    let (x, y) = src
        .split_once(',')
        .ok_or_else(|| format!("expected a point 'X,Y', got '{src}'"))?;
    Ok([parse_complex(x)?, parse_complex(y)?])
}
