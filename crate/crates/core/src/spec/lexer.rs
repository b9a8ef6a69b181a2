use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Int(i64),
    Semi,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    DotDot,
    Not,
    And,
    Or,
    Arrow,
    DArrow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            other => {
                let s = match other {
                    Tok::Semi => ";",
                    Tok::Comma => ",",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::DotDot => "..",
                    Tok::Not => "!",
                    Tok::And => "&",
                    Tok::Or => "|",
                    Tok::Arrow => "->",
                    Tok::DArrow => "<->",
                    Tok::Eq => "=",
                    Tok::Ne => "!=",
                    Tok::Lt => "<",
                    Tok::Le => "<=",
                    Tok::Gt => ">",
                    Tok::Ge => ">=",
                    Tok::Plus => "+",
                    Tok::Minus => "-",
                    Tok::Ident(_) | Tok::Int(_) => unreachable!(),
                };
                format!("`{s}`")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: u32,
    pub col: u32,
    /// Byte range in the source.
    pub start: usize,
    pub end: usize,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let (mut i, mut line, mut line_start) = (0usize, 1u32, 0usize);
    while i < bytes.len() {
        let c = bytes[i];
        let col = (i - line_start) as u32 + 1;
        if c == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'/' && bytes.get(i + 1) == Some(&b'/') {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let v = src[start..i].parse::<i64>().map_err(|_| ParseError::Syntax {
                line,
                col,
                message: "integer literal out of range".into(),
            })?;
            Tok::Int(v)
        } else {
            let two = bytes.get(i + 1).copied();
            let three = bytes.get(i + 2).copied();
            let (tok, len) = match (c, two, three) {
                (b'<', Some(b'-'), Some(b'>')) => (Tok::DArrow, 3),
                (b'-', Some(b'>'), _) => (Tok::Arrow, 2),
                (b'!', Some(b'='), _) => (Tok::Ne, 2),
                (b'<', Some(b'='), _) => (Tok::Le, 2),
                (b'>', Some(b'='), _) => (Tok::Ge, 2),
                (b'.', Some(b'.'), _) => (Tok::DotDot, 2),
                (b';', ..) => (Tok::Semi, 1),
                (b',', ..) => (Tok::Comma, 1),
                (b'(', ..) => (Tok::LParen, 1),
                (b')', ..) => (Tok::RParen, 1),
                (b'{', ..) => (Tok::LBrace, 1),
                (b'}', ..) => (Tok::RBrace, 1),
                (b'!', ..) => (Tok::Not, 1),
                (b'&', ..) => (Tok::And, 1),
                (b'|', ..) => (Tok::Or, 1),
                (b'=', ..) => (Tok::Eq, 1),
                (b'<', ..) => (Tok::Lt, 1),
                (b'>', ..) => (Tok::Gt, 1),
                (b'+', ..) => (Tok::Plus, 1),
                (b'-', ..) => (Tok::Minus, 1),
                _ => {
                    let ch = src[i..].chars().next().unwrap_or('?');
                    return Err(ParseError::Syntax {
                        line,
                        col,
                        message: format!("unexpected character `{ch}`"),
                    });
                }
            };
            i += len;
            tok
        };
        out.push(Token { tok, line, col, start, end: i });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operators_and_comments() {
        let toks = tokenize("a <-> b -> !c // trailing\r\nnext(f)!=1..3").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("a".into()),
                Tok::DArrow,
                Tok::Ident("b".into()),
                Tok::Arrow,
                Tok::Not,
                Tok::Ident("c".into()),
                Tok::Ident("next".into()),
                Tok::LParen,
                Tok::Ident("f".into()),
                Tok::RParen,
                Tok::Ne,
                Tok::Int(1),
                Tok::DotDot,
                Tok::Int(3),
            ]
        );
    }

    #[test]
    fn positions_count_lines() {
        let toks = tokenize("x\n  y").unwrap();
        assert_eq!((toks[1].line, toks[1].col), (2, 3));
    }

    #[test]
    fn rejects_stray_character() {
        assert!(matches!(tokenize("a # b"), Err(ParseError::Syntax { line: 1, col: 3, .. })));
    }
}
