use super::parser::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Number,
    /// A number with an `i` suffix, e.g. `2.5i`.
    Imaginary,
    Identifier,
    Operator,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    pub position: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token<'_>>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let start = pos;
        let kind = match c {
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                pos += 1;
                TokenKind::Operator
            }
            b'(' => {
                pos += 1;
                TokenKind::LParen
            }
            b')' => {
                pos += 1;
                TokenKind::RParen
            }
            b',' => {
                pos += 1;
                TokenKind::Comma
            }
            b'0'..=b'9' | b'.' => {
                pos = scan_number(bytes, pos)
                    .ok_or_else(|| ParseError::new("malformed number", start, Some("number")))?;
                let ident_follows = |p: usize| {
                    bytes
                        .get(p)
                        .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
                };
                if bytes.get(pos) == Some(&b'i') && !ident_follows(pos + 1) {
                    pos += 1;
                    TokenKind::Imaginary
                } else {
                    TokenKind::Number
                }
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                    pos += 1;
                }
                TokenKind::Identifier
            }
            _ => {
                let ch = src[pos..].chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    format!("unexpected character '{ch}'"),
                    pos,
                    Some("operand or operator"),
                ));
            }
        };
        out.push(Token {
            kind,
            text: &src[start..pos],
            position: start,
        });
    }
    Ok(out)
}

/// digits [. digits] [(e|E) [+-] digits], or a leading-dot fraction.
fn scan_number(b: &[u8], mut pos: usize) -> Option<usize> {
    let digits = |p: &mut usize| {
        let s = *p;
        while *p < b.len() && b[*p].is_ascii_digit() {
            *p += 1;
        }
        *p - s
    };
    let mut n = digits(&mut pos);
    if pos < b.len() && b[pos] == b'.' {
        pos += 1;
        n += digits(&mut pos);
    }
    if n == 0 {
        return None;
    }
    if pos < b.len() && (b[pos] == b'e' || b[pos] == b'E') {
        let mut p = pos + 1;
        if p < b.len() && (b[p] == b'+' || b[p] == b'-') {
            p += 1;
        }
        if digits(&mut p) > 0 {
            pos = p;
        }
    }
    Some(pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_strictly_increase() {
        let toks = tokenize("exp(-conj(z) * z) + 2.5e-3i").unwrap();
        assert!(toks.windows(2).all(|w| w[0].position < w[1].position));
        assert_eq!(toks.last().unwrap().kind, TokenKind::Imaginary);
        assert_eq!(toks.last().unwrap().text, "2.5e-3i");
    }

    #[test]
    fn number_then_identifier_is_not_imaginary() {
        let toks = tokenize("2im").unwrap();
        assert_eq!(toks[0].kind, TokenKind::Number);
        assert_eq!(toks[1].text, "im");
    }

    #[test]
    fn bad_character_position() {
        let err = tokenize("z + $").unwrap_err();
        assert_eq!(err.position, 4);
    }
}
