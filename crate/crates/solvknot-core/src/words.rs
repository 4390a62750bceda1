//! A tiny parser for group words such as `"x^2 y^-1 z"`.
//!
//! Grammar: a word is a sequence of letters, each a single ASCII alphabetic
//! character optionally followed by `^` and a signed integer exponent.
//! Whitespace between letters is optional; `*` is also accepted as a
//! separator.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unexpected character '{0}' at byte {1}")]
    Unexpected(char, usize),
    #[error("expected integer exponent at byte {0}")]
    MissingExponent(usize),
    #[error("exponent out of range at byte {0}")]
    ExponentRange(usize),
}

/// Parse a word into `(letter, exponent)` pairs, in order.
pub fn parse_word(s: &str) -> Result<Vec<(char, i64)>, WordError> {
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0usize;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() || c == '*' {
            i += 1;
            continue;
        }
        if !c.is_ascii_alphabetic() {
            return Err(WordError::Unexpected(c, i));
        }
        let letter = c;
        i += 1;
        let mut exp: i64 = 1;
        if i < bytes.len() && bytes[i] == '^' {
            i += 1;
            let start = i;
            let mut digits = String::new();
            if i < bytes.len() && (bytes[i] == '-' || bytes[i] == '+') {
                digits.push(bytes[i]);
                i += 1;
            }
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                digits.push(bytes[i]);
                i += 1;
            }
            if digits.is_empty() || digits == "-" || digits == "+" {
                return Err(WordError::MissingExponent(start));
            }
            exp = digits
                .parse()
                .map_err(|_| WordError::ExponentRange(start))?;
        }
        out.push((letter, exp));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_words() {
        assert_eq!(
            parse_word("x^2 y^-1 z").unwrap(),
            vec![('x', 2), ('y', -1), ('z', 1)]
        );
        assert_eq!(parse_word("xyz").unwrap(), vec![('x', 1), ('y', 1), ('z', 1)]);
        assert_eq!(parse_word("a^+3*b").unwrap(), vec![('a', 3), ('b', 1)]);
        assert_eq!(parse_word("").unwrap(), vec![]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_word("x^").is_err());
        assert!(parse_word("2x").is_err());
        assert!(parse_word("x^-").is_err());
    }
}
