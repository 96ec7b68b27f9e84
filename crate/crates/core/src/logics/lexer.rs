use std::fmt;

use super::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Lower(String),
    Upper(String),
    /// `$prop`, `$true`, ...
    Dollar(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Comma,
    Colon,
    Bang,
    Question,
    Tilde,
    Bar,
    Amp,
    Implies,
    Iff,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Lower(s) | Tok::Upper(s) => write!(f, "`{s}`"),
            Tok::Dollar(s) => write!(f, "`${s}`"),
            Tok::Eof => f.write_str("end of input"),
            t => write!(f, "`{}`", t.text()),
        }
    }
}

impl Tok {
    pub(crate) fn text(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Lt => "<",
            Tok::Gt => ">",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Bang => "!",
            Tok::Question => "?",
            Tok::Tilde => "~",
            Tok::Bar => "|",
            Tok::Amp => "&",
            Tok::Implies => "=>",
            Tok::Iff => "<=>",
            Tok::Lower(_) | Tok::Upper(_) | Tok::Dollar(_) | Tok::Eof => "",
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `text` into tokens. Positions are 1-based and shifted by
/// `(line, col)`, the position of the first character of `text`.
pub(crate) fn tokenize(text: &str, line: usize, col: usize) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut ln, mut cl) = (line, col);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_ln, start_cl) = (ln, cl);
        if c == '\n' {
            i += 1;
            ln += 1;
            cl = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            cl += 1;
            continue;
        }
        let (tok, len) = if c.is_ascii_alphabetic() || c == '$' {
            let begin = if c == '$' { i + 1 } else { i };
            let mut j = begin;
            while j < chars.len() && ident_char(chars[j]) {
                j += 1;
            }
            let word: String = chars[begin..j].iter().collect();
            let tok = if c == '$' {
                if word.is_empty() {
                    return Err(ParseError::unexpected(start_ln, start_cl, &["identifier after `$`"], "`$`"));
                }
                Tok::Dollar(word)
            } else if c.is_ascii_uppercase() {
                Tok::Upper(word)
            } else {
                Tok::Lower(word)
            };
            (tok, j - i)
        } else if c.is_ascii_digit() {
            // Index names such as `1` are allowed in box brackets.
            let mut j = i;
            while j < chars.len() && ident_char(chars[j]) {
                j += 1;
            }
            (Tok::Lower(chars[i..j].iter().collect()), j - i)
        } else {
            let next = chars.get(i + 1).copied();
            let next2 = chars.get(i + 2).copied();
            match (c, next, next2) {
                ('<', Some('='), Some('>')) => (Tok::Iff, 3),
                ('=', Some('>'), _) => (Tok::Implies, 2),
                ('(', ..) => (Tok::LParen, 1),
                (')', ..) => (Tok::RParen, 1),
                ('[', ..) => (Tok::LBracket, 1),
                (']', ..) => (Tok::RBracket, 1),
                ('<', ..) => (Tok::Lt, 1),
                ('>', ..) => (Tok::Gt, 1),
                (',', ..) => (Tok::Comma, 1),
                (':', ..) => (Tok::Colon, 1),
                ('!', ..) => (Tok::Bang, 1),
                ('?', ..) => (Tok::Question, 1),
                ('~', ..) => (Tok::Tilde, 1),
                ('|', ..) => (Tok::Bar, 1),
                ('&', ..) => (Tok::Amp, 1),
                _ => {
                    return Err(ParseError::unexpected(
                        start_ln,
                        start_cl,
                        &["formula"],
                        &format!("`{c}`"),
                    ))
                }
            }
        };
        out.push(Spanned { tok, line: start_ln, col: start_cl });
        i += len;
        cl += len;
    }
    out.push(Spanned { tok: Tok::Eof, line: ln, col: cl });
    Ok(out)
}
