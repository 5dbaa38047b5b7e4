//! Parser and evaluator for complex-valued function expressions in the
//! variable `z`.
//!
//! Supported syntax: float literals (`1.5`, `2e-3`), imaginary literals
//! (`5i`, `2.5im`), the imaginary unit `i`/`im`, the variable `z`, unary
//! minus, `+ - * / ^` with standard precedence (`^` binds tightest and is
//! right-associative), parentheses, and calls of `exp log sqrt sin cos tan
//! sinh cosh tanh coth abs`. Implicit multiplication is not supported.

use num_complex::Complex64;

/// Parse failure with the byte offset where it happened.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Coth,
    Abs,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "coth" => Func::Coth,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn apply(self, z: Complex64) -> Complex64 {
        // log and sqrt take their branch cut on the negative real axis with
        // values from above; a -0.0 imaginary part must not flip the side
        let upper = |z: Complex64| {
            if z.im == 0.0 {
                Complex64::new(z.re, 0.0)
            } else {
                z
            }
        };
        match self {
            Func::Exp => z.exp(),
            Func::Log => upper(z).ln(),
            Func::Sqrt => upper(z).sqrt(),
            Func::Sin => z.sin(),
            Func::Cos => z.cos(),
            Func::Tan => z.tan(),
            Func::Sinh => z.sinh(),
            Func::Cosh => z.cosh(),
            Func::Tanh => z.tanh(),
            Func::Coth => {
                let t = z.tanh();
                1.0 / t
            }
            Func::Abs => Complex64::new(z.norm(), 0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Const(Complex64),
    Var,
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// A parsed expression in the variable `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    root: Node,
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ParseError> {
        let tokens = lex(text)?;
        let mut p = Parser { tokens, pos: 0, len: text.len() };
        let root = p.parse_bp(0, 0)?;
        if let Some(tok) = p.peek() {
            return Err(ParseError { offset: tok.offset, message: format!("unexpected `{}`", tok.kind.show()) });
        }
        Ok(Expr { root })
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        eval_node(&self.root, z)
    }
}

fn eval_node(node: &Node, z: Complex64) -> Complex64 {
    match node {
        Node::Const(c) => *c,
        Node::Var => z,
        Node::Neg(inner) => -eval_node(inner, z),
        Node::Bin(op, a, b) => {
            let a = eval_node(a, z);
            let b = eval_node(b, z);
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => a / b,
                BinOp::Pow => a.powc(b),
            }
        }
        Node::Call(f, arg) => f.apply(eval_node(arg, z)),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Number(f64, bool), // value, imaginary
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl TokenKind {
    fn show(&self) -> String {
        match self {
            TokenKind::Number(v, im) => format!("{v}{}", if *im { "i" } else { "" }),
            TokenKind::Ident(s) => s.clone(),
            TokenKind::Plus => "+".into(),
            TokenKind::Minus => "-".into(),
            TokenKind::Star => "*".into(),
            TokenKind::Slash => "/".into(),
            TokenKind::Caret => "^".into(),
            TokenKind::LParen => "(".into(),
            TokenKind::RParen => ")".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let offset = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'+' => {
                out.push(Token { kind: TokenKind::Plus, offset });
                i += 1;
            }
            b'-' => {
                out.push(Token { kind: TokenKind::Minus, offset });
                i += 1;
            }
            b'*' => {
                out.push(Token { kind: TokenKind::Star, offset });
                i += 1;
            }
            b'/' => {
                out.push(Token { kind: TokenKind::Slash, offset });
                i += 1;
            }
            b'^' => {
                out.push(Token { kind: TokenKind::Caret, offset });
                i += 1;
            }
            b'(' => {
                out.push(Token { kind: TokenKind::LParen, offset });
                i += 1;
            }
            b')' => {
                out.push(Token { kind: TokenKind::RParen, offset });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let lit = &text[start..i];
                let value: f64 = lit.parse().map_err(|_| ParseError {
                    offset: start,
                    message: format!("bad number literal `{lit}`"),
                })?;
                // an `i`/`im` suffix makes this an imaginary literal
                let imaginary = match imaginary_suffix(bytes, i) {
                    Some(skip) => {
                        i += skip;
                        true
                    }
                    None => false,
                };
                out.push(Token { kind: TokenKind::Number(value, imaginary), offset: start });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token { kind: TokenKind::Ident(text[start..i].to_string()), offset: start });
            }
            _ => {
                return Err(ParseError { offset, message: format!("unexpected byte 0x{b:02x}") });
            }
        }
    }
    Ok(out)
}

/// Length of an `i`/`im` suffix at position `i`, if the following byte does
/// not continue an identifier.
fn imaginary_suffix(bytes: &[u8], i: usize) -> Option<usize> {
    let ends_ident = |k: usize| k >= bytes.len() || !(bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_');
    if i < bytes.len() && bytes[i] == b'i' {
        if i + 1 < bytes.len() && bytes[i + 1] == b'm' && ends_ident(i + 2) {
            return Some(2);
        }
        if ends_ident(i + 1) {
            return Some(1);
        }
    }
    None
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    len: usize,
}

const MAX_DEPTH: usize = 256;

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_offset(&self) -> usize {
        self.len
    }

    fn parse_bp(&mut self, min_bp: u8, depth: usize) -> Result<Node, ParseError> {
        if depth > MAX_DEPTH {
            return Err(ParseError {
                offset: self.peek().map_or(self.end_offset(), |t| t.offset),
                message: "expression is nested too deeply".into(),
            });
        }
        let Some(tok) = self.next() else {
            return Err(ParseError { offset: self.end_offset(), message: "unexpected end of input".into() });
        };
        let mut lhs = match tok.kind {
            TokenKind::Number(v, true) => Node::Const(Complex64::new(0.0, v)),
            TokenKind::Number(v, false) => Node::Const(Complex64::new(v, 0.0)),
            TokenKind::Ident(name) => match name.as_str() {
                "z" => Node::Var,
                "i" | "im" => Node::Const(Complex64::i()),
                other => {
                    if let Some(f) = Func::from_name(other) {
                        match self.next() {
                            Some(Token { kind: TokenKind::LParen, .. }) => {
                                let arg = self.parse_bp(0, depth + 1)?;
                                match self.next() {
                                    Some(Token { kind: TokenKind::RParen, .. }) => {
                                        Node::Call(f, Box::new(arg))
                                    }
                                    got => {
                                        return Err(ParseError {
                                            offset: got.map_or(self.end_offset(), |t| t.offset),
                                            message: "expected `)`".into(),
                                        })
                                    }
                                }
                            }
                            got => {
                                return Err(ParseError {
                                    offset: got.map_or(self.end_offset(), |t| t.offset),
                                    message: format!("expected `(` after `{other}`"),
                                })
                            }
                        }
                    } else {
                        return Err(ParseError {
                            offset: tok.offset,
                            message: format!("unknown identifier `{other}`"),
                        });
                    }
                }
            },
            TokenKind::Minus => Node::Neg(Box::new(self.parse_bp(5, depth + 1)?)),
            TokenKind::LParen => {
                let inner = self.parse_bp(0, depth + 1)?;
                match self.next() {
                    Some(Token { kind: TokenKind::RParen, .. }) => inner,
                    got => {
                        return Err(ParseError {
                            offset: got.map_or(self.end_offset(), |t| t.offset),
                            message: "expected `)`".into(),
                        })
                    }
                }
            }
            other => {
                return Err(ParseError {
                    offset: tok.offset,
                    message: format!("unexpected `{}`", other.show()),
                })
            }
        };

        loop {
            let Some(tok) = self.peek() else { break };
            let (op, l_bp, r_bp) = match tok.kind {
                TokenKind::Plus => (BinOp::Add, 1, 2),
                TokenKind::Minus => (BinOp::Sub, 1, 2),
                TokenKind::Star => (BinOp::Mul, 3, 4),
                TokenKind::Slash => (BinOp::Div, 3, 4),
                TokenKind::Caret => (BinOp::Pow, 7, 6),
                _ => break,
            };
            if l_bp < min_bp {
                break;
            }
            self.next();
            let rhs = self.parse_bp(r_bp, depth + 1)?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }
}
