//! Small shared pieces of the plain-text term grammars used for multivectors,
//! polynomials and polynomial forms.

use num::{BigInt, BigRational, Zero};

use crate::error::ParseError;

/// Splits a sum into signed terms at top-level `+`/`-`.
///
/// Whitespace is removed first. Returns `(negative, term)` pairs.
pub(crate) fn split_terms(input: &str) -> Result<Vec<(bool, String)>, ParseError> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(ParseError::new("empty expression"));
    }
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negative = false;
    for c in compact.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ParseError::new("unbalanced ')'"));
                }
                current.push(c);
            }
            '+' | '-' if depth == 0 => {
                if current.is_empty() {
                    // leading sign, or a sign directly after another one
                    if !terms.is_empty() || negative {
                        return Err(ParseError::new(format!("dangling '{c}'")));
                    }
                    negative ^= c == '-';
                } else {
                    terms.push((negative, std::mem::take(&mut current)));
                    negative = c == '-';
                }
            }
            _ => current.push(c),
        }
    }
    if depth != 0 {
        return Err(ParseError::new("unbalanced '('"));
    }
    if current.is_empty() {
        return Err(ParseError::new("expression ends with a sign"));
    }
    terms.push((negative, current));
    Ok(terms)
}

/// Splits a product at top-level `*`.
pub(crate) fn split_factors(term: &str) -> Result<Vec<&str>, ParseError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in term.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&term[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&term[start..]);
    if out.iter().any(|f| f.is_empty()) {
        return Err(ParseError::new(format!("empty factor in '{term}'")));
    }
    Ok(out)
}

/// Parses `7`, `-3`, or `3/2` as an exact rational.
pub(crate) fn parse_rational(token: &str) -> Option<BigRational> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let is_int = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

/// Formats a coefficient in front of a non-scalar factor: `""` for 1,
/// otherwise `"c*"`. Sign handling is left to the caller.
pub(crate) fn coefficient_prefix(abs: &BigRational) -> String {
    if abs == &BigRational::from_integer(1.into()) {
        String::new()
    } else {
        format!("{abs}*")
    }
}
