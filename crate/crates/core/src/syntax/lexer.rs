use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at column {column}: {message}")]
    Unexpected { column: usize, message: String },
    #[error("unknown agent `{name}` at column {column}")]
    UnknownAgent { name: String, column: usize },
    #[error("metavariable `${name}` at column {column} {message}")]
    Metavariable { name: String, column: usize, message: String },
    #[error("invalid name `{name}`")]
    InvalidName { name: String },
    #[error("the agent universe must be nonempty")]
    EmptyUniverse,
}

impl SyntaxError {
    /// 1-based column of the error, when it has one.
    pub fn column(&self) -> Option<usize> {
        match self {
            SyntaxError::Unexpected { column, .. }
            | SyntaxError::UnknownAgent { column, .. }
            | SyntaxError::Metavariable { column, .. } => Some(*column),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Lower(String),
    Upper(String),
    Meta(String),
    Zero,
    Knows,
    True,
    False,
    Sig,
    Recv,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DoubleArrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    At,
    Colon,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) => format!("`{s}`"),
            Tok::Meta(s) => format!("`${s}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::Zero => "0",
            Tok::Knows => "knows",
            Tok::True => "true",
            Tok::False => "false",
            Tok::Sig => "sig",
            Tok::Recv => "recv",
            Tok::Tilde => "~",
            Tok::Amp => "&",
            Tok::Bar => "|",
            Tok::Arrow => "->",
            Tok::DoubleArrow => "<->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::At => "@",
            Tok::Colon => ":",
            _ => "",
        }
    }
}

/// A token with its 1-based starting column.
#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let ident_end = |start: usize| {
            let mut j = start;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                j += 1;
            }
            j
        };
        let (tok, len) = match c {
            'a'..='z' => {
                // Lowercase names stop at an uppercase letter, so `[m]aP` reads as `[m]a P`.
                let mut end = i;
                while end < chars.len() && matches!(chars[end], 'a'..='z' | '0'..='9' | '_') {
                    end += 1;
                }
                let word: String = chars[i..end].iter().collect();
                let tok = match word.as_str() {
                    "knows" => Tok::Knows,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "sig" => Tok::Sig,
                    "recv" => Tok::Recv,
                    _ => Tok::Lower(word),
                };
                (tok, end - i)
            }
            'A'..='Z' => {
                let end = ident_end(i);
                (Tok::Upper(chars[i..end].iter().collect()), end - i)
            }
            '$' => {
                let end = ident_end(i + 1);
                if end == i + 1 {
                    return Err(SyntaxError::Unexpected {
                        column,
                        message: "expected a metavariable name after `$`".into(),
                    });
                }
                (Tok::Meta(chars[i + 1..end].iter().collect()), end - i)
            }
            '0' if ident_end(i) == i + 1 => (Tok::Zero, 1),
            '~' => (Tok::Tilde, 1),
            '&' => (Tok::Amp, 1),
            '|' => (Tok::Bar, 1),
            '(' => (Tok::LParen, 1),
            ')' => (Tok::RParen, 1),
            '[' => (Tok::LBracket, 1),
            ']' => (Tok::RBracket, 1),
            ',' => (Tok::Comma, 1),
            '@' => (Tok::At, 1),
            ':' => (Tok::Colon, 1),
            '-' if chars.get(i + 1) == Some(&'>') => (Tok::Arrow, 2),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => (Tok::DoubleArrow, 3),
            other => {
                return Err(SyntaxError::Unexpected {
                    column,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Spanned { tok, column });
        i += len;
    }
    out.push(Spanned { tok: Tok::Eof, column: chars.len() + 1 });
    Ok(out)
}
