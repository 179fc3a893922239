//! Recursive-descent parser for polynomial expressions in `z1..zn`, `zbar1..zbarn`.
//!
//! ```text
//! sum     := neg (('+' | '-') neg)*
//! neg     := '-' neg | product
//! product := power ('*' power)*
//! power   := atom ('^' INT)?
//! atom    := literal | 'i' | var | func '(' sum ')' | '(' sum ')'
//! literal := INT ('/' INT)? 'i'?          3, 3/2, 2i, 3/2i
//! func    := 'Re' | 'Im' | 'abs2' | 'conj'
//! ```
//!
//! Precedence is `^` > `*` > unary `-` > binary `+`/`-`. The sugar functions
//! expand to `Re(e) = (e + conj e)/2`, `Im(e) = (e - conj e)/(2i)` and
//! `abs2(e) = e * conj e`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::poly::{GaussianRational, Poly};

const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at column {column}")]
pub struct ParseError {
    pub message: String,
    /// 1-based character column of the offending token.
    pub column: usize,
}

impl ParseError {
    fn new(message: impl Into<String>, column: usize) -> Self {
        Self { message: message.into(), column }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int {
        digits: String,
        imag: bool,
    },
    /// Something numeric that is not an integer, e.g. `2.5`.
    BadNumber(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let column = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, column });
            k += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let mut bad = false;
            if k < chars.len() && chars[k] == '.' {
                bad = true;
                k += 1;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
            }
            let digits: String = chars[start..k].iter().collect();
            let mut imag = false;
            if k < chars.len() && chars[k] == 'i' && !chars.get(k + 1).is_some_and(|c| c.is_alphanumeric() || *c == '_')
            {
                imag = true;
                k += 1;
            } else if k < chars.len() && (chars[k].is_alphabetic() || chars[k] == '_') {
                let end = (k..chars.len()).find(|&j| !chars[j].is_alphanumeric()).unwrap_or(chars.len());
                let text: String = chars[start..end].iter().collect();
                return Err(ParseError::new(format!("malformed literal `{text}`"), column));
            }
            let tok = if bad { Tok::BadNumber(digits) } else { Tok::Int { digits, imag } };
            out.push(Token { tok, column });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..k].iter().collect()), column });
            continue;
        }
        return Err(ParseError::new(format!("unexpected character `{c}`"), column));
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    n: usize,
    end_column: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn bump(&mut self) -> Option<&Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        match self.toks.get(self.pos) {
            None => ParseError::new(format!("unexpected end of input, expected {wanted}"), self.end_column),
            Some(t) => ParseError::new(format!("unexpected token, expected {wanted}"), t.column),
        }
    }

    fn sum(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.neg()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.neg()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.neg()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn neg(&mut self) -> Result<Poly, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(-self.neg()?);
        }
        self.product()
    }

    fn product(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let column = self.column();
        let exp = match self.bump().map(|t| t.tok.clone()) {
            Some(Tok::Int { digits, imag: false }) => digits,
            _ => return Err(ParseError::new("non-integer exponent", column)),
        };
        if self.peek() == Some(&Tok::Slash) {
            return Err(ParseError::new("non-integer exponent", column));
        }
        let exp = exp
            .parse::<u32>()
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::new(format!("exponent exceeds {MAX_EXPONENT}"), column))?;
        Ok(base.pow(exp))
    }

    fn literal(&mut self, digits: &str, imag: bool, column: usize) -> Result<Poly, ParseError> {
        let num: BigInt = digits.parse().map_err(|_| ParseError::new("malformed literal", column))?;
        let mut value = BigRational::from_integer(num);
        let mut imag = imag;
        if self.peek() == Some(&Tok::Slash) {
            if imag {
                return Err(ParseError::new("malformed literal: imaginary numerator", column));
            }
            self.pos += 1;
            let den_col = self.column();
            let (den, den_imag) = match self.bump().map(|t| t.tok.clone()) {
                Some(Tok::Int { digits, imag }) => (digits, imag),
                _ => return Err(ParseError::new("malformed literal: expected integer denominator", den_col)),
            };
            let den: BigInt = den.parse().map_err(|_| ParseError::new("malformed literal", den_col))?;
            if den.is_zero() {
                return Err(ParseError::new("malformed literal: zero denominator", den_col));
            }
            value /= BigRational::from_integer(den);
            imag = den_imag;
        }
        let c =
            if imag { GaussianRational::new(BigRational::zero(), value) } else { GaussianRational::from_real(value) };
        Ok(Poly::constant(self.n, c))
    }

    fn variable(&self, name: &str, column: usize) -> Result<Option<Poly>, ParseError> {
        let (holo, digits) = if let Some(d) = name.strip_prefix("zbar") {
            (false, d)
        } else if let Some(d) = name.strip_prefix('z') {
            (true, d)
        } else {
            return Ok(None);
        };
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Ok(None);
        }
        let index = digits.parse::<usize>().unwrap_or(usize::MAX);
        if index == 0 || index > self.n {
            return Err(ParseError::new("index exceeds ambient dimension", column));
        }
        Ok(Some(if holo { Poly::z(self.n, index) } else { Poly::zbar(self.n, index) }))
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let Some(token) = self.toks.get(self.pos).cloned() else {
            return Err(self.unexpected("an operand"));
        };
        let column = token.column;
        match token.tok {
            Tok::Int { digits, imag } => {
                self.pos += 1;
                self.literal(&digits, imag, column)
            }
            Tok::BadNumber(text) => Err(ParseError::new(format!("malformed literal `{text}`"), column)),
            Tok::LParen => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.pos += 1;
                if name == "i" {
                    return Ok(Poly::constant(self.n, GaussianRational::i()));
                }
                if let Some(v) = self.variable(&name, column)? {
                    return Ok(v);
                }
                let apply: fn(Poly) -> Poly = match name.as_str() {
                    "conj" => |e| e.conjugate(),
                    "Re" => |e| e.real_part(),
                    "Im" => |e| e.imag_part(),
                    "abs2" => |e| {
                        let c = e.conjugate();
                        &e * &c
                    },
                    _ => return Err(ParseError::new(format!("unknown identifier `{name}`"), column)),
                };
                self.expect(Tok::LParen, "`(` after function name")?;
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(apply(inner))
            }
            _ => Err(self.unexpected("an operand")),
        }
    }
}

/// Parse `src` as a polynomial in ambient dimension `n`.
pub fn parse_expression(src: &str, n: usize) -> Result<Poly, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, pos: 0, n, end_column: src.chars().count() + 1 };
    let out = p.sum()?;
    if p.pos < toks.len() {
        return Err(p.unexpected("an operator or end of input"));
    }
    Ok(out)
}

/// Parse a complex literal such as `1/2-3*i` (as used for points).
pub fn parse_complex(src: &str) -> Result<GaussianRational, ParseError> {
    let p = parse_expression(src, 0)?;
    if !p.is_constant() {
        return Err(ParseError::new("expected a constant", 1));
    }
    let value = p.terms().next().map(|(_, c)| c.clone());
    Ok(value.unwrap_or_else(|| GaussianRational::from_int(0)))
}
