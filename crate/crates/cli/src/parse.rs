//! Argument value parsers: complex literals `a+bi`, inclusive ranges `A..B`.

use ancrc_core::C64;

/// Parses `a`, `bi`, `a+bi`, `a-bi` (no spaces). `i` alone means `1i`.
pub fn complex(s: &str) -> Result<C64, String> {
    let bad = || format!("cannot parse complex number {s:?} (expected a+bi)");
    let s = s.trim();
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| C64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(C64::new(re, imag(&body[k..])?))
        }
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

/// `A..B` (inclusive), `A..=B` or a single `A`.
pub fn n_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("cannot parse range {s:?} (expected A..B)");
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("range {s:?} must satisfy 1 <= A <= B"));
    }
    Ok((lo, hi))
}

/// `x` formatted like C's `%.{digits}g`.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    // rounding can push the mantissa to the next decade
    let s = format!("{:.*e}", digits - 1, x);
    let exp = s.rsplit_once('e').and_then(|(_, e)| e.parse::<i32>().ok()).unwrap_or(exp);
    if exp < -4 || exp >= digits as i32 {
        let (m, e) = s.split_once('e').expect("exponent form");
        let m = trim_zeros(m);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, e.trim_start_matches('-').parse::<i32>().unwrap_or(0))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `re+imi` with six significant digits per part.
pub fn complex_sig(z: C64) -> String {
    let im = sig(z.im.abs(), 6);
    let sign = if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) { '-' } else { '+' };
    format!("{}{sign}{im}i", sig(z.re, 6))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(complex("1.3-0.4i").unwrap(), C64::new(1.3, -0.4));
        assert_eq!(complex("-2+i").unwrap(), C64::new(-2.0, 1.0));
        assert_eq!(complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(complex("-3i").unwrap(), C64::new(0.0, -3.0));
        assert_eq!(complex("1e-3+2E+1i").unwrap(), C64::new(1e-3, 20.0));
        assert!(complex("1 + 2i").is_err());
        assert!(complex("abc").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(n_range("1..4").unwrap(), (1, 4));
        assert_eq!(n_range("2..=3").unwrap(), (2, 3));
        assert_eq!(n_range("3").unwrap(), (3, 3));
        assert!(n_range("0..2").is_err());
        assert!(n_range("3..2").is_err());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig(1.0, 6), "1");
        assert_eq!(sig(1.23456789, 6), "1.23457");
        assert_eq!(sig(-0.000123456789, 6), "-0.000123457");
        assert_eq!(sig(1.234567e-7, 6), "1.23457e-07");
        assert_eq!(sig(9.9999999, 6), "10");
        assert_eq!(sig(123456789.0, 6), "1.23457e+08");
        assert_eq!(complex_sig(C64::new(0.5, -2.0)), "0.5-2i");
    }
}
