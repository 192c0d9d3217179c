use crate::model::SourceSpan;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(String),
    Arrow,
    Minus,
    Underscore,
    ExtChoice,
    IntChoice,
    Section,
    Root,
    Eq,
    Colon,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Dot,
    Question,
    Bang,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::Arrow => "`->`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Underscore => "`_`".into(),
            Tok::ExtChoice => "`[]`".into(),
            Tok::IntChoice => "`|~|`".into(),
            Tok::Section => "`§`".into(),
            Tok::Root => "`√`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Colon => "`:`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Question => "`?`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub span: SourceSpan,
    pub found: char,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = SourceSpan { line, column: col, length: 1 };
        let (tok, len) = if c.is_alphabetic() && c != '§' && c != '√' {
            let mut j = i;
            while j < chars.len()
                && (chars[j].is_alphanumeric() || chars[j] == '_')
                && chars[j] != '§'
                && chars[j] != '√'
            {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            (Tok::Number(chars[i..j].iter().collect()), j - i)
        } else {
            let next = chars.get(i + 1).copied();
            match c {
                '-' if next == Some('>') => (Tok::Arrow, 2),
                '-' => (Tok::Minus, 1),
                '_' => (Tok::Underscore, 1),
                '[' if next == Some(']') => (Tok::ExtChoice, 2),
                '|' if next == Some('~') && chars.get(i + 2) == Some(&'|') => (Tok::IntChoice, 3),
                '~' => (Tok::IntChoice, 1),
                '□' => (Tok::ExtChoice, 1),
                '⊓' => (Tok::IntChoice, 1),
                '§' => (Tok::Section, 1),
                '√' => (Tok::Root, 1),
                '→' => (Tok::Arrow, 1),
                '=' => (Tok::Eq, 1),
                ':' => (Tok::Colon, 1),
                '(' => (Tok::LParen, 1),
                ')' => (Tok::RParen, 1),
                '{' => (Tok::LBrace, 1),
                '}' => (Tok::RBrace, 1),
                '.' => (Tok::Dot, 1),
                '?' => (Tok::Question, 1),
                '!' => (Tok::Bang, 1),
                other => return Err(LexError { span: start, found: other }),
            }
        };
        out.push(Token { tok, span: SourceSpan { length: len as u32, ..start } });
        i += len;
        col += len as u32;
    }
    out.push(Token { tok: Tok::Eof, span: SourceSpan { line, column: col, length: 0 } });
    Ok(out)
}
