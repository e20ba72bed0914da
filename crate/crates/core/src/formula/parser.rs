use super::ast::{Formula, Term};
use super::ParseError;

/// Integer literals expand to sums of ones; anything beyond this is surely a
/// typo rather than a formula anyone wants to evaluate.
const MAX_LITERAL: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
    Eq,
    Neq,
    Not,
    And,
    Or,
    Implies,
    Exists,
    Forall,
    In,
    Dot,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("literal `{n}`"),
            Tok::End => "end of input".to_string(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Neq => "`!=`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::In => "`in`".into(),
            Tok::Dot => "`.`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (start_line, start_col) = (line, column);
        let err = |message: String| ParseError {
            line: start_line,
            column: start_col,
            message,
        };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        // `#` starts a comment running to end of line
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                column += 1;
            }
            continue;
        }
        let mut len = 1;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i + len < chars.len()
                && (chars[i + len].is_ascii_alphanumeric()
                    || chars[i + len] == '_'
                    || chars[i + len] == '\'')
            {
                len += 1;
            }
            let word: String = chars[i..i + len].iter().collect();
            match word.as_str() {
                "exists" => Tok::Exists,
                "forall" => Tok::Forall,
                "in" => Tok::In,
                _ => Tok::Ident(word),
            }
        } else if c.is_ascii_digit() {
            while i + len < chars.len() && chars[i + len].is_ascii_digit() {
                len += 1;
            }
            let digits: String = chars[i..i + len].iter().collect();
            let n = digits
                .parse::<u64>()
                .ok()
                .filter(|&n| n <= MAX_LITERAL)
                .ok_or_else(|| err(format!("integer literal {digits} exceeds {MAX_LITERAL}")))?;
            Tok::Int(n)
        } else {
            let next = chars.get(i + 1).copied();
            match (c, next) {
                ('-', Some('>')) | ('=', Some('>')) => {
                    len = 2;
                    Tok::Implies
                }
                ('!', Some('=')) | ('/', Some('=')) => {
                    len = 2;
                    Tok::Neq
                }
                ('&', Some('&')) | ('|', Some('|')) => {
                    len = 2;
                    if c == '&' {
                        Tok::And
                    } else {
                        Tok::Or
                    }
                }
                ('(', _) => Tok::LParen,
                (')', _) => Tok::RParen,
                ('+', _) => Tok::Plus,
                ('-', _) | ('−', _) => Tok::Minus,
                ('*', _) | ('·', _) | ('⋅', _) => Tok::Star,
                ('^', _) => Tok::Caret,
                ('=', _) => Tok::Eq,
                ('≠', _) => Tok::Neq,
                ('~', _) | ('!', _) | ('¬', _) => Tok::Not,
                ('&', _) | ('∧', _) => Tok::And,
                ('|', _) | ('∨', _) => Tok::Or,
                ('→', _) | ('⇒', _) => Tok::Implies,
                ('∃', _) => Tok::Exists,
                ('∀', _) => Tok::Forall,
                ('∈', _) => Tok::In,
                ('.', _) | (':', _) => Tok::Dot,
                _ => return Err(err(format!("unexpected character `{c}`"))),
            }
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
        i += len;
        column += len;
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn error_here(&self, expected: &str) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            message: format!("expected {expected}, found {}", here.tok.describe()),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(&tok.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(name)
            }
            _ => Err(self.error_here(what)),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Exists | Tok::Forall => {
                let universal = self.bump() == Tok::Forall;
                let var = self.ident("a bound variable")?;
                self.expect(Tok::In)?;
                let domain = self.ident("a domain name")?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if universal {
                    Formula::forall(&var, &domain, body)
                } else {
                    Formula::exists(&var, &domain, body)
                })
            }
            _ => self.primary(),
        }
    }

    // `(` opens either a term or a formula; try the atom first and fall
    // back, reporting whichever attempt got further.
    fn primary(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos;
        let atom_err = match self.atom() {
            Ok(f) => return Ok(f),
            Err(e) => (self.pos, e),
        };
        if self.toks[start].tok != Tok::LParen {
            return Err(atom_err.1);
        }
        self.pos = start;
        self.bump();
        let inner = self
            .formula()
            .and_then(|f| self.expect(Tok::RParen).map(|_| f));
        match inner {
            Ok(f) => Ok(f),
            Err(e) => {
                let here = self.pos;
                Err(if here >= atom_err.0 { e } else { atom_err.1 })
            }
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.term()?;
        match self.peek() {
            Tok::Eq => {
                self.bump();
                Ok(Formula::eq(lhs, self.term()?))
            }
            Tok::Neq => {
                self.bump();
                Ok(Formula::not(Formula::eq(lhs, self.term()?)))
            }
            _ => Err(self.error_here("`=` or `!=`")),
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Term::add(acc, self.product()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = Term::sub(acc, self.product()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Term::mul(acc, self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Term::Neg(Box::new(self.factor()?)));
        }
        let base = match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Term::numeral(n)
            }
            Tok::Ident(name) => {
                self.bump();
                Term::Var(name)
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                t
            }
            _ => return Err(self.error_here("a term")),
        };
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = match self.peek() {
            Tok::Int(e) if *e <= 64 => *e,
            _ => return Err(self.error_here("an exponent between 0 and 64")),
        };
        self.bump();
        Ok(match e {
            0 => Term::One,
            _ => (1..e).fold(base.clone(), |acc, _| Term::mul(acc, base.clone())),
        })
    }
}

/// Parse one formula. `x^k` is accepted as shorthand for a `k`-fold product
/// and `a != b` for `~(a = b)`; neither survives in the tree.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let f = parser.formula()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error_here("end of input"));
    }
    Ok(f)
}

/// Parse a standalone term.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut parser = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let t = parser.term()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error_here("end of input"));
    }
    Ok(t)
}
