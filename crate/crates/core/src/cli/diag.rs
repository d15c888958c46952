use std::fmt;

/// A location in an input file; columns are 1-based and half-open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSpan {
    pub file: String,
    pub line: usize,
    pub columns: (usize, usize),
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.columns.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticCode {
    MissingHeader,
    DuplicateHeader,
    UnknownDirective,
    Syntax,
    DuplicateObject,
    DuplicateArrow,
    ReservedId,
    UnknownObject,
    UnknownArrow,
    IllTypedComposition,
    ConflictingComposite,
    InvalidMap,
    CategoryLaw,
    CategoryMismatch,
    WrongCoverTarget,
    InvalidWitness,
    Resource,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::MissingHeader => "missing-header",
            DiagnosticCode::DuplicateHeader => "duplicate-header",
            DiagnosticCode::UnknownDirective => "unknown-directive",
            DiagnosticCode::Syntax => "syntax",
            DiagnosticCode::DuplicateObject => "duplicate-object",
            DiagnosticCode::DuplicateArrow => "duplicate-arrow",
            DiagnosticCode::ReservedId => "reserved-id",
            DiagnosticCode::UnknownObject => "unknown-object",
            DiagnosticCode::UnknownArrow => "unknown-arrow",
            DiagnosticCode::IllTypedComposition => "ill-typed-composition",
            DiagnosticCode::ConflictingComposite => "conflicting-composite",
            DiagnosticCode::InvalidMap => "invalid-map",
            DiagnosticCode::CategoryLaw => "category-law",
            DiagnosticCode::CategoryMismatch => "category-mismatch",
            DiagnosticCode::WrongCoverTarget => "wrong-cover-target",
            DiagnosticCode::InvalidWitness => "invalid-witness",
            DiagnosticCode::Resource => "resource",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub span: SourceSpan,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: error[{}]: {}", self.span, self.code.as_str(), self.message)
    }
}

/// Every problem found in one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl Diagnostics {
    pub fn codes(&self) -> Vec<DiagnosticCode> {
        self.0.iter().map(|d| d.code).collect()
    }
}

impl std::error::Error for Diagnostics {}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A whitespace-delimited word with its columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Token<'a> {
    pub text: &'a str,
    pub start: usize,
    pub end: usize,
}

/// One significant line of input with comments removed.
pub(crate) struct Line<'a> {
    pub number: usize,
    pub text: &'a str,
    pub tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    /// The raw text from column `col` (1-based) on.
    pub fn rest(&self, col: usize) -> &str {
        &self.text[col - 1..]
    }
}

pub(crate) fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let text = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        }
        .trim_end();
        let mut tokens = Vec::new();
        let mut start = None;
        for (k, ch) in text.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(k),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &text[s..k],
                        start: s + 1,
                        end: k + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push(Token {
                text: &text[s..],
                start: s + 1,
                end: text.len() + 1,
            });
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                text,
                tokens,
            });
        }
    }
    out
}

/// Splits on commas outside square brackets, returning trimmed items with
/// their 1-based columns, given the column at which `text` starts.
pub(crate) fn split_items<'a>(text: &'a str, offset: usize) -> Vec<Token<'a>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut from = 0;
    let push = |a: usize, b: usize, out: &mut Vec<Token<'a>>| {
        let piece = &text[a..b];
        let lead = piece.len() - piece.trim_start().len();
        let item = piece.trim();
        if !item.is_empty() {
            out.push(Token {
                text: item,
                start: offset + a + lead,
                end: offset + a + lead + item.len(),
            });
        }
    };
    for (k, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                push(from, k, &mut out);
                from = k + 1;
            }
            _ => {}
        }
    }
    push(from, text.len(), &mut out);
    out
}

/// Diagnostic builder bound to one file.
pub(crate) struct Reporter {
    file: String,
    pub found: Vec<Diagnostic>,
}

impl Reporter {
    pub fn new(file: &str) -> Self {
        Reporter {
            file: file.to_string(),
            found: Vec::new(),
        }
    }

    pub fn span(&self, line: usize, start: usize, end: usize) -> SourceSpan {
        SourceSpan {
            file: self.file.clone(),
            line,
            columns: (start, end),
        }
    }

    pub fn at(&mut self, code: DiagnosticCode, line: usize, tok: &Token<'_>, message: impl Into<String>) {
        let span = self.span(line, tok.start, tok.end);
        self.found.push(Diagnostic {
            code,
            span,
            message: message.into(),
        });
    }

    pub fn at_line(&mut self, code: DiagnosticCode, line: &Line<'_>, message: impl Into<String>) {
        let span = self.span(line.number, 1, line.text.len() + 1);
        self.found.push(Diagnostic {
            code,
            span,
            message: message.into(),
        });
    }

    pub fn at_start(&mut self, code: DiagnosticCode, message: impl Into<String>) {
        let span = self.span(1, 1, 1);
        self.found.push(Diagnostic {
            code,
            span,
            message: message.into(),
        });
    }

    pub fn finish<T>(self, value: Option<T>) -> Result<T, Diagnostics> {
        match value {
            Some(v) if self.found.is_empty() => Ok(v),
            _ => Err(Diagnostics(self.found)),
        }
    }
}
