//! Parsing of flag values: rationals, parity lists, series.

use braces_core::series::{preset, Convention, Preset, TruncatedSeries};
use braces_core::{ParityVector, Scalar};
use num_rational::BigRational;

/// `"p/q"` or an integer.
pub fn parse_rational(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| format!("malformed rational {s:?}"))?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| format!("malformed rational {s:?}"))?;
            if d == 0.into() {
                return Err(format!("zero denominator in {s:?}"));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(s.parse().map_err(|_| format!("malformed rational {s:?}"))?),
    };
    Ok(parsed)
}

/// Comma-separated list of rationals.
pub fn parse_rationals(s: &str) -> Result<Vec<Scalar>, String> {
    s.split(',').map(parse_rational).collect()
}

/// Comma-separated 0/1 list, which must have length `n`; absent means all even.
pub fn parse_parities(s: Option<&str>, n: usize) -> Result<ParityVector, String> {
    let Some(s) = s else {
        return Ok(ParityVector::even(n));
    };
    let values = s
        .split(',')
        .map(|p| match p.trim() {
            "0" => Ok(0),
            "1" => Ok(1),
            other => Err(format!("parity must be 0 or 1, got {other:?}")),
        })
        .collect::<Result<Vec<u8>, _>>()?;
    if values.len() != n {
        return Err(format!("{} parities given for n = {n}", values.len()));
    }
    ParityVector::new(values).map_err(|e| e.to_string())
}

/// A series from either a preset name or an explicit coefficient list, in
/// the declared convention. Explicit lists are zero-padded or truncated to
/// `order` when it is given.
pub fn series(
    preset_name: Option<&str>,
    coeffs: Option<&str>,
    order: Option<usize>,
    convention: Convention,
    default_order: usize,
) -> Result<TruncatedSeries, String> {
    match (preset_name, coeffs) {
        (Some(_), Some(_)) => Err("give either a preset or coefficients, not both".into()),
        (None, None) => Err("a series is required (a preset or coefficients)".into()),
        (Some(name), None) => {
            let p: Preset = name.parse().map_err(|e: braces_core::Error| e.to_string())?;
            let order = order.unwrap_or(default_order);
            if order == 0 {
                return Err("order must be at least 1".into());
            }
            preset(p, order, convention).map_err(|e| e.to_string())
        }
        (None, Some(list)) => {
            let mut values = parse_rationals(list)?;
            if let Some(order) = order {
                if order == 0 {
                    return Err("order must be at least 1".into());
                }
                values.resize(order, Scalar::from_integer(0.into()));
            }
            TruncatedSeries::new(values, convention).map_err(|e| e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use braces_core::graded::ratio;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), ratio(3, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.5").is_err());
        assert_eq!(parse_rationals("1, 1/2,0").unwrap().len(), 3);
    }

    #[test]
    fn parities() {
        assert_eq!(parse_parities(Some("0,1"), 2).unwrap().as_slice(), &[0, 1]);
        assert_eq!(parse_parities(None, 3).unwrap(), ParityVector::even(3));
        assert!(parse_parities(Some("0,1"), 3).is_err());
        assert!(parse_parities(Some("0,2"), 2).is_err());
    }

    #[test]
    fn series_inputs() {
        let s = series(None, Some("0"), Some(4), Convention::Factorial, 8).unwrap();
        assert_eq!(s.order(), 4);
        let p = series(Some("exp-minus-one"), None, None, Convention::Factorial, 5).unwrap();
        assert_eq!(p.order(), 5);
        assert!(series(Some("nope"), None, None, Convention::Plain, 5).is_err());
        assert!(series(None, None, None, Convention::Plain, 5).is_err());
        assert!(series(Some("geometric"), Some("1"), None, Convention::Plain, 5).is_err());
    }
}
