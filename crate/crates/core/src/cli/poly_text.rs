//! Polynomial text grammar: integer coefficients, `^` powers, implicit or
//! explicit `*`, e.g. `x^4 + 38x^2 + 361` or `2*x^3 - x + 5`. Ascending
//! coefficient arrays like `[361, 0, 38, 0, 1]` are also accepted. The
//! canonical printed form (descending powers) round-trips through the
//! parser.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::PolyZ;

/// Canonical text form (descending powers).
pub fn poly_to_text(p: &PolyZ) -> String {
    p.to_string()
}

pub fn poly_from_text(input: &str) -> Result<PolyZ, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    if s.starts_with('[') {
        let coeffs: Vec<i64> =
            serde_json::from_str(s).map_err(|e| format!("bad coefficient array: {}", e))?;
        return Ok(PolyZ::from_i64(&coeffs));
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms: Vec<(BigInt, usize)> = vec![];
    let bytes = compact.as_bytes();
    let mut i = 0usize;
    while i < bytes.len() {
        // sign
        let mut sign = 1i64;
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err("dangling sign".into());
        }
        // coefficient digits
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: BigInt = if start == i {
            BigInt::from(1)
        } else {
            compact[start..i].parse().map_err(|e| format!("bad integer: {}", e))?
        };
        let coeff = coeff * BigInt::from(sign);
        // optional explicit multiplication
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        // variable part
        let mut exp = 0usize;
        if i < bytes.len() && (bytes[i] == b'x' || bytes[i] == b'X') {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let estart = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if estart == i {
                    return Err("missing exponent after ^".into());
                }
                exp = compact[estart..i].parse().map_err(|e| format!("bad exponent: {}", e))?;
            }
        } else if start == i {
            return Err(format!("unexpected character at position {}", i));
        }
        terms.push((coeff, exp));
        // next char must be a sign (start of the next term) or end
        if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            return Err(format!("unexpected character '{}' at position {}", compact[i..].chars().next().unwrap(), i));
        }
    }
    let deg = terms.iter().map(|(_, e)| *e).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (c, e) in terms {
        coeffs[e] += c;
    }
    Ok(PolyZ::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn parse_fixtures() {
        assert_eq!(poly_from_text("x^4+38x^2+361").unwrap(), PolyZ::from_i64(&[361, 0, 38, 0, 1]));
        assert_eq!(poly_from_text("x^2 + 3x + 5").unwrap(), PolyZ::from_i64(&[5, 3, 1]));
        assert_eq!(poly_from_text("2*x^3 - x + 5").unwrap(), PolyZ::from_i64(&[5, -1, 0, 2]));
        assert_eq!(poly_from_text("-x").unwrap(), PolyZ::from_i64(&[0, -1]));
        assert_eq!(poly_from_text("7").unwrap(), PolyZ::from_i64(&[7]));
        assert_eq!(poly_from_text("[5, 3, 1]").unwrap(), PolyZ::from_i64(&[5, 3, 1]));
        assert_eq!(poly_from_text("x - x").unwrap(), PolyZ::zero());
        assert!(poly_from_text("x^").is_err());
        assert!(poly_from_text("3y").is_err());
        assert!(poly_from_text("").is_err());
    }

    #[test]
    fn print_fixtures() {
        assert_eq!(poly_to_text(&PolyZ::from_i64(&[361, 0, 38, 0, 1])), "x^4 + 38x^2 + 361");
        assert_eq!(poly_to_text(&PolyZ::from_i64(&[25, -5, 2, -1, 1])), "x^4 - x^3 + 2x^2 - 5x + 25");
        assert_eq!(poly_to_text(&PolyZ::from_i64(&[-1, 1])), "x - 1");
        assert_eq!(poly_to_text(&PolyZ::zero()), "0");
        assert_eq!(poly_to_text(&PolyZ::from_i64(&[0, -1])), "-x");
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(500))]
        #[test]
        fn round_trip(coeffs in proptest::collection::vec(-999i64..=999, 1..10)) {
            let p = PolyZ::from_i64(&coeffs);
            let printed = poly_to_text(&p);
            let parsed = poly_from_text(&printed).unwrap();
            proptest::prop_assert_eq!(parsed, p);
        }
    }

    #[test]
    fn round_trip_seeded_spot() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let deg = rng.gen_range(0..9usize);
            let c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-999..=999)).collect();
            let p = PolyZ::from_i64(&c);
            assert_eq!(poly_from_text(&poly_to_text(&p)).unwrap(), p);
        }
    }
}
