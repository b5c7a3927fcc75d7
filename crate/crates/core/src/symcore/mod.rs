//! Symbolic expressions over Gaussian rationals.
//!
//! The roster of a [`VarTable`] with CR dimension `n` is
//! `z_1..z_{n+1}, w_1..w_{n+1}, u`, where `w_j` stands for the conjugate of
//! `z_j` and `u` for the real part of `z_{n+1}` on a rigid hypersurface.
//! Every `log(Q)` met by the parser becomes a formal symbol `L_m` whose only
//! rule is `dL_m = dQ_m / Q_m`.

mod expr;
mod parse;
pub mod poly;

use std::fmt;

use thiserror::Error;

pub use expr::Expr;
pub use parse::parse_expr;
pub use poly::{Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("log argument {arg} is not bar-invariant")]
    LogNotBarInvariant { arg: String },
    #[error("invalid log argument {arg}: {reason}")]
    LogArgument { arg: String, reason: String },
    #[error("substitution for {var} would change the log argument {arg}")]
    SubstitutionTouchesLog { var: String, arg: String },
    #[error("expression has a denominator and cannot be written in the input grammar")]
    NotPolynomial,
    #[error("cannot evaluate exactly at the origin: {0}")]
    NotEvaluable(String),
}

/// A roster variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `z_j`, 1-based.
    Z(usize),
    /// `w_j`, the formal conjugate of `z_j`, 1-based.
    W(usize),
    /// The real coordinate `u`.
    U,
}

impl Var {
    pub fn conj(self) -> Var {
        match self {
            Var::Z(j) => Var::W(j),
            Var::W(j) => Var::Z(j),
            Var::U => Var::U,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(j) => write!(f, "z{j}"),
            Var::W(j) => write!(f, "w{j}"),
            Var::U => write!(f, "u"),
        }
    }
}

/// Variable roster for CR dimension `n` plus the table of log symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    n: usize,
    logs: Vec<Poly>,
}

impl VarTable {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "CR dimension must be positive");
        VarTable { n, logs: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of roster variables, `2n + 3`.
    pub fn roster_len(&self) -> usize {
        2 * self.n + 3
    }

    pub fn index(&self, v: Var) -> usize {
        match v {
            Var::Z(j) => {
                debug_assert!(j >= 1 && j <= self.n + 1);
                j - 1
            }
            Var::W(j) => {
                debug_assert!(j >= 1 && j <= self.n + 1);
                self.n + j
            }
            Var::U => 2 * self.n + 2,
        }
    }

    pub fn contains(&self, v: Var) -> bool {
        match v {
            Var::Z(j) | Var::W(j) => j >= 1 && j <= self.n + 1,
            Var::U => true,
        }
    }

    /// Roster variable at `index`, or `None` for log symbols.
    pub fn var_at(&self, index: usize) -> Option<Var> {
        let n = self.n;
        if index <= n {
            Some(Var::Z(index + 1))
        } else if index <= 2 * n + 1 {
            Some(Var::W(index - n))
        } else if index == 2 * n + 2 {
            Some(Var::U)
        } else {
            None
        }
    }

    /// Variable index of the log symbol `L_m` (0-based `m`).
    pub fn log_index(&self, m: usize) -> usize {
        self.roster_len() + m
    }

    /// Which log symbol sits at a variable index.
    pub fn log_at(&self, index: usize) -> Option<usize> {
        index.checked_sub(self.roster_len()).filter(|m| *m < self.logs.len())
    }

    pub fn logs(&self) -> &[Poly] {
        &self.logs
    }

    pub fn log_arg(&self, m: usize) -> &Poly {
        &self.logs[m]
    }

    /// The bar involution on variable indices: `z_j <-> w_j`, everything else fixed.
    pub fn conj_index(&self, index: usize) -> usize {
        match self.var_at(index) {
            Some(v) => self.index(v.conj()),
            None => index,
        }
    }

    /// Returns the symbol for `log(q)`, allocating one if `q` is new.
    pub fn intern_log(&mut self, q: Poly) -> Result<usize, SymError> {
        if let Some(m) = self.logs.iter().position(|p| *p == q) {
            return Ok(m);
        }
        let text = || self.poly_text(&q);
        let zw_end = 2 * self.n + 2;
        if q.var_span() > zw_end {
            return Err(SymError::LogArgument { arg: text(), reason: "must be a polynomial in z and conj(z) only".into() });
        }
        if q.is_constant() {
            return Err(SymError::LogArgument { arg: text(), reason: "must be non-constant".into() });
        }
        let bar = q.permute_conj(|i| self.conj_index(i));
        if bar != q {
            return Err(SymError::LogNotBarInvariant { arg: text() });
        }
        self.logs.push(q);
        Ok(self.logs.len() - 1)
    }

    pub(crate) fn poly_text(&self, p: &Poly) -> String {
        expr::poly_to_text(p, self)
    }
}
