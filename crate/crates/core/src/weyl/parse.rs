//! Text form of operators.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := 't' | 'd' | 'D' | rational | '(' expr ')'
//! ```
//! `t` is λ, `d` is ∂ and `D` is `t*d`. Negative exponents are accepted on `t` only.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{WeylError, WeylOp};
use crate::rational::Rational;

const MAX_EXPONENT: i64 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    T,
    Del,
    Euler,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, WeylError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|c| c.1).collect();
                out.push((Tok::Num(s.parse().expect("digits")), pos));
                continue;
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            't' => Tok::T,
            'd' => Tok::Del,
            'D' => Tok::Euler,
            other => {
                return Err(WeylError::Syntax {
                    pos,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((tok, pos));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, WeylError> {
        Err(WeylError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<WeylOp, WeylError> {
        let mut negate = false;
        match self.peek() {
            Tok::Minus => {
                self.bump();
                negate = true;
            }
            Tok::Plus => {
                self.bump();
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeylOp, WeylError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        if *self.peek() == Tok::Slash {
            return Err(WeylError::DivisionOutsideLiteral { pos: self.pos() });
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WeylOp, WeylError> {
        let is_t = *self.peek() == Tok::T;
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let Tok::Num(n) = self.bump() else {
            return Err(WeylError::Syntax {
                pos,
                msg: "expected an integer exponent".into(),
            });
        };
        let k = n
            .to_i64()
            .filter(|k| *k <= MAX_EXPONENT)
            .ok_or_else(|| WeylError::Syntax {
                pos,
                msg: format!("exponent larger than {MAX_EXPONENT}"),
            })?;
        if neg {
            if !is_t {
                return Err(WeylError::NegativeExponent { pos });
            }
            return Ok(WeylOp::lambda_pow(-k));
        }
        Ok(base.pow(k as usize))
    }

    fn atom(&mut self) -> Result<WeylOp, WeylError> {
        let pos = self.pos();
        match self.bump() {
            Tok::T => Ok(WeylOp::lambda()),
            Tok::Del => Ok(WeylOp::del()),
            Tok::Euler => Ok(WeylOp::euler()),
            Tok::Num(n) => {
                if *self.peek() != Tok::Slash {
                    return Ok(WeylOp::constant(Rational::from_integer(n)));
                }
                self.bump();
                let dpos = self.pos();
                match self.bump() {
                    Tok::Num(d) if !d.is_zero() => Ok(WeylOp::constant(Rational::new(n, d))),
                    _ => Err(WeylError::Syntax {
                        pos: dpos,
                        msg: "expected a positive integer denominator".into(),
                    }),
                }
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if self.bump() != Tok::RParen {
                    return Err(WeylError::Syntax {
                        pos: self.toks[self.at.saturating_sub(1)].1,
                        msg: "expected ')'".into(),
                    });
                }
                Ok(inner)
            }
            Tok::Slash => Err(WeylError::DivisionOutsideLiteral { pos }),
            Tok::End => Err(WeylError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(WeylError::Syntax {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

pub fn parse_op(text: &str) -> Result<WeylOp, WeylError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let op = p.expr()?;
    match p.peek() {
        Tok::End => Ok(op),
        Tok::Slash => Err(WeylError::DivisionOutsideLiteral { pos: p.pos() }),
        _ => p.err("trailing input"),
    }
}

fn monomial_text(c: &Rational, j: i64, k: usize) -> String {
    let mut parts = Vec::new();
    if !c.is_one() || (j == 0 && k == 0) {
        parts.push(c.to_string());
    }
    match j {
        0 => {}
        1 => parts.push("t".into()),
        _ => parts.push(format!("t^{j}")),
    }
    match k {
        0 => {}
        1 => parts.push("d".into()),
        _ => parts.push(format!("d^{k}")),
    }
    parts.join("*")
}

/// Descending ∂-degree, then descending λ-degree.
impl fmt::Display for WeylOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, p) in self.coeffs().iter().enumerate().rev() {
            for (j, c) in p.terms().rev() {
                let neg = c.is_negative();
                if first {
                    if neg {
                        f.write_str("-")?;
                    }
                } else {
                    f.write_str(if neg { " - " } else { " + " })?;
                }
                first = false;
                f.write_str(&monomial_text(&c.abs(), j, k))?;
            }
        }
        Ok(())
    }
}
