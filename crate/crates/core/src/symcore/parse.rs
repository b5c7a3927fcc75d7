//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (("+"|"-") term)*
//! term   := "-"? factor ("*" factor)*
//! factor := base ("^" nat)?
//! base   := rational | "i" | var | "(" expr ")" | fn "(" expr ")"
//! fn     := "log" | "abs2" | "Im" | "Re" | "conj"
//! var    := "z" nat | "u"
//! rational := int ("/" nat)?
//! ```

use num_bigint::BigInt;

use super::{Expr, SymError, Var, VarTable};
use crate::scalar::{Gauss, Rat};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SymError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|(_, c)| *c).collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_alphanumeric() {
                k += 1;
            }
            let s: String = chars[start..k].iter().map(|(_, c)| *c).collect();
            out.push((Tok::Ident(s), pos));
        } else {
            return Err(SymError::Syntax { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a mut VarTable,
}

impl Parser<'_> {
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

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, SymError> {
        Err(SymError::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), SymError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.syntax(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, SymError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t, self.vars);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t, self.vars);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SymError> {
        let negate = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f, self.vars);
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn factor(&mut self) -> Result<Expr, SymError> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = match self.bump() {
                Tok::Int(k) => u32::try_from(k).ok(),
                _ => None,
            };
            match e {
                Some(e) => Ok(base.pow(e, self.vars)),
                None => self.syntax("expected a natural exponent after `^`"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr, SymError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(p) => {
                let mut r = Rat::from_integer(p);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Int(q) if q != BigInt::from(0) => r /= Rat::from_integer(q),
                        _ => return self.syntax("expected a positive denominator after `/`"),
                    }
                }
                Ok(Expr::constant(Gauss::real(r)))
            }
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(name, pos),
            _ => Err(SymError::Syntax { pos, msg: "expected a number, variable, function or `(`".into() }),
        }
    }

    fn ident(&mut self, name: String, pos: usize) -> Result<Expr, SymError> {
        match name.as_str() {
            "i" => return Ok(Expr::i()),
            "u" => return Ok(Expr::var(Var::U, self.vars)),
            "log" | "abs2" | "Im" | "Re" | "conj" => {
                self.expect(Tok::LParen, "`(` after function name")?;
                let arg_pos = self.pos();
                let arg = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                return self.apply(&name, arg, arg_pos);
            }
            _ => {}
        }
        if let Some(digits) = name.strip_prefix('z') {
            if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) && !digits.starts_with('0') {
                if let Ok(j) = digits.parse::<usize>() {
                    if self.vars.contains(Var::Z(j)) {
                        return Ok(Expr::var(Var::Z(j), self.vars));
                    }
                }
            }
        }
        Err(SymError::UnknownVariable { name, pos })
    }

    fn apply(&mut self, name: &str, arg: Expr, pos: usize) -> Result<Expr, SymError> {
        let vars = &*self.vars;
        Ok(match name {
            "conj" => arg.bar(vars),
            "abs2" => arg.mul(&arg.bar(vars), vars),
            "Re" => arg.add(&arg.bar(vars), vars).scale(&Gauss::real(crate::scalar::ratio(1, 2))),
            "Im" => arg
                .sub(&arg.bar(vars), vars)
                .scale(&Gauss::new(crate::scalar::rat(0), crate::scalar::ratio(-1, 2))),
            "log" => {
                if !arg.is_polynomial() {
                    return Err(SymError::LogArgument {
                        arg: arg.display(vars),
                        reason: "must be a polynomial".into(),
                    });
                }
                let _ = pos;
                let m = self.vars.intern_log(arg.numerator().clone())?;
                Expr::log_symbol(m, self.vars)
            }
            _ => unreachable!("function names are matched by the caller"),
        })
    }
}

/// Parses `text` into a canonical expression. New log arguments are
/// registered in `vars`.
pub fn parse_expr(text: &str, vars: &mut VarTable) -> Result<Expr, SymError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, vars };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("unexpected trailing input");
    }
    Ok(e)
}
