use super::{ParseError, SourceSpan};

#[derive(Clone, Copy, Debug)]
pub(super) struct Mark {
    pos: usize,
    line: usize,
    column: usize,
}

/// Scannerless cursor: every token reader skips whitespace and comments first.
pub(super) struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

fn is_ident_char(ch: char) -> bool {
    ch.is_alphanumeric() || ch == '_'
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        Cursor {
            text,
            pos: 0,
            line: 1,
            column: 1,
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.rest().chars().next()?;
        self.pos += ch.len_utf8();
        if ch == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(ch)
    }

    pub fn skip_trivia(&mut self) {
        while let Some(ch) = self.rest().chars().next() {
            if ch == '#' {
                while self.rest().chars().next().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if ch.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    pub fn mark(&mut self) -> Mark {
        self.skip_trivia();
        Mark {
            pos: self.pos,
            line: self.line,
            column: self.column,
        }
    }

    /// From `start` to the end of the last consumed token.
    pub fn span_from(&self, start: Mark) -> SourceSpan {
        let consumed = &self.text[start.pos..self.pos];
        let trimmed = consumed.trim_end();
        let length = trimmed.lines().next().unwrap_or("").chars().count();
        SourceSpan {
            line: start.line,
            column: start.column,
            length: length.max(1),
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.pos == self.text.len()
    }

    pub fn peek_is(&mut self, token: &str) -> bool {
        self.skip_trivia();
        self.rest().starts_with(token)
    }

    pub fn peek_digit(&mut self) -> bool {
        self.skip_trivia();
        self.rest().starts_with(|c: char| c.is_ascii_digit())
    }

    pub fn peek_ident(&mut self) -> bool {
        self.skip_trivia();
        self.rest().starts_with(|c: char| c.is_alphabetic() || c == '_')
    }

    /// Whether the next identifier is exactly one of `words`.
    pub fn peek_keyword(&mut self, words: &[&str]) -> bool {
        self.skip_trivia();
        let word: String = self.rest().chars().take_while(|&c| is_ident_char(c)).collect();
        words.contains(&word.as_str())
    }

    /// Consume `token` if it comes next.
    pub fn eat(&mut self, token: &str) -> bool {
        if self.peek_is(token) {
            for _ in token.chars() {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    /// Like [`Cursor::eat`], but the token must not run on into a longer word.
    pub fn keyword(&mut self, word: &str) -> bool {
        if !self.peek_is(word) {
            return false;
        }
        if self.rest()[word.len()..]
            .chars()
            .next()
            .is_some_and(is_ident_char)
        {
            return false;
        }
        self.eat(word)
    }

    pub fn expect(&mut self, token: &str, what: &str) -> Result<SourceSpan, ParseError> {
        let start = self.mark();
        if self.eat(token) {
            Ok(self.span_from(start))
        } else {
            Err(self.error(what))
        }
    }

    pub fn expect_end(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    /// An identifier `[A-Za-z_][A-Za-z0-9_]*`.
    pub fn ident(&mut self) -> Option<(String, SourceSpan)> {
        let start = self.mark();
        let first = self.rest().chars().next()?;
        if !(first.is_alphabetic() || first == '_') {
            return None;
        }
        let mut name = String::new();
        while let Some(ch) = self.rest().chars().next().filter(|&c| is_ident_char(c)) {
            name.push(ch);
            self.bump();
        }
        Some((name, self.span_from(start)))
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(ch) = self.rest().chars().next().filter(char::is_ascii_digit) {
            s.push(ch);
            self.bump();
        }
        s
    }

    pub fn uint(&mut self) -> Result<(u64, SourceSpan), ParseError> {
        let start = self.mark();
        let s = self.digits();
        if s.is_empty() {
            return Err(self.error("a nonnegative integer"));
        }
        let span = self.span_from(start);
        s.parse().map(|v| (v, span)).map_err(|_| ParseError {
            span,
            expected: "an integer that fits in 64 bits".into(),
            found: s,
        })
    }

    pub fn int(&mut self) -> Result<(i64, SourceSpan), ParseError> {
        let start = self.mark();
        let negative = self.eat("-");
        if negative {
            // no whitespace between the sign and the digits
            if !self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                return Err(self.error("digits after `-`"));
            }
        }
        let s = self.digits();
        if s.is_empty() {
            return Err(self.error("an integer"));
        }
        let span = self.span_from(start);
        let text = if negative { format!("-{s}") } else { s };
        text.parse().map(|v| (v, span)).map_err(|_| ParseError {
            span,
            expected: "an integer that fits in 64 bits".into(),
            found: text,
        })
    }

    /// Raw text up to (not including) the first of `stops`, trimmed.
    pub fn until(&mut self, stops: &[char]) -> (String, SourceSpan) {
        let start = self.mark();
        while self
            .rest()
            .chars()
            .next()
            .is_some_and(|c| !stops.contains(&c) && c != '#' && c != '\n')
        {
            self.bump();
        }
        (
            self.text[start.pos..self.pos].trim_end().to_string(),
            self.span_from(start),
        )
    }

    /// An error at the next token, quoting it as found.
    pub fn error(&mut self, expected: &str) -> ParseError {
        self.skip_trivia();
        let rest = self.rest();
        let Some(first) = rest.chars().next() else {
            return ParseError {
                span: self.last_char_span(),
                expected: expected.into(),
                found: "end of input".into(),
            };
        };
        let found: String = if is_ident_char(first) {
            rest.chars().take_while(|&c| is_ident_char(c)).collect()
        } else {
            first.to_string()
        };
        ParseError {
            span: SourceSpan {
                line: self.line,
                column: self.column,
                length: found.chars().count(),
            },
            expected: expected.into(),
            found: format!("`{found}`"),
        }
    }

    /// Span of the last non-whitespace character, for errors at end of input.
    fn last_char_span(&self) -> SourceSpan {
        let body = self.text.trim_end();
        if body.is_empty() {
            return SourceSpan {
                line: 1,
                column: 1,
                length: 1,
            };
        }
        let line = body.matches('\n').count() + 1;
        let column = body.rsplit('\n').next().unwrap_or("").chars().count();
        SourceSpan {
            line,
            column,
            length: 1,
        }
    }
}
