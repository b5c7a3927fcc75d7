//! Rigid real hypersurfaces `Im(z_{n+1}) = phi(z, conj z)` in `C^{n+1}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fields::HoloVectorField;
use crate::linalg::hermitian_signature;
use crate::scalar::{Gauss, Rat};
use crate::symcore::{parse_expr, Expr, Poly, SymError, Var, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("CR dimension n = {n} is out of range for {family} (need n >= {min})")]
    NOutOfRange { family: Family, n: usize, min: usize },
    #[error("sign list has length {got}, expected {expected}")]
    EpsLength { expected: usize, got: usize },
    #[error("invalid sign list `{0}`: use only `+` and `-`")]
    BadSigns(String),
    #[error("potential is not real: bar(phi) != phi")]
    NotReal,
    #[error("potential does not vanish at the origin")]
    NotNormalized,
    #[error("log argument {0} does not equal 1 at the origin")]
    LogNotNormalized(String),
    #[error("potential depends on {0}; only rigid hypersurfaces are supported")]
    NotRigid(String),
    #[error("unsupported log term in the potential: {0}")]
    UnsupportedLogTerm(String),
    #[error("Levi form is degenerate at the origin: signature {0}")]
    DegenerateLevi(LeviSignature),
    #[error("field has dimension {got}, model has n = {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("model file: {0}")]
    File(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `Im w = Im(z_1 conj z_2) + |z_1|^4 + sum eps_k |z_k|^2`, `n^2 + 4` symmetries.
    IndefiniteSubmax,
    /// `Im w = log(1 + |z_1|^2) + sum |z_k|^2`, `n^2 + 3` symmetries.
    DefiniteSubmax,
    /// The quadric `Im w = sum eps_k |z_k|^2`.
    FlatQuadric,
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::IndefiniteSubmax => "indefinite",
            Family::DefiniteSubmax => "definite",
            Family::FlatQuadric => "flat",
            Family::Custom => "custom",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "indefinite" | "indefinite-submax" => Ok(Family::IndefiniteSubmax),
            "definite" | "definite-submax" => Ok(Family::DefiniteSubmax),
            "flat" | "flat-quadric" => Ok(Family::FlatQuadric),
            other => Err(format!("unknown family `{other}` (expected indefinite, definite or flat)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Parses a sign list such as `"++-"`.
pub fn parse_signs(s: &str) -> Result<Vec<Sign>, ModelError> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            _ => Err(ModelError::BadSigns(s.to_string())),
        })
        .collect()
}

pub fn signs_text(eps: &[Sign]) -> String {
    eps.iter().map(|s| if *s == Sign::Plus { '+' } else { '-' }).collect()
}

/// Signature of the Levi form at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LeviSignature {
    pub pos: usize,
    pub neg: usize,
    pub null: usize,
}

impl LeviSignature {
    pub fn is_definite(&self) -> bool {
        self.null == 0 && (self.pos == 0 || self.neg == 0)
    }

    /// The normalized index `k = min(pos, neg)`.
    pub fn index(&self) -> usize {
        self.pos.min(self.neg)
    }
}

impl fmt::Display for LeviSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.neg, self.null)
    }
}

/// `phi = polyPart + sum_m c_m log(Q_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphPotential {
    pub n: usize,
    pub poly_part: Poly,
    /// `(c_m, m)`: coefficient and log-symbol index in the model's table.
    pub log_terms: Vec<(Rat, usize)>,
}

impl GraphPotential {
    /// Splits an expression into polynomial and log parts, checking the
    /// potential invariants (reality, rigidity, normalization).
    pub fn from_expr(phi: &Expr, vars: &VarTable) -> Result<Self, ModelError> {
        let n = vars.n();
        if !phi.is_polynomial() {
            return Err(ModelError::UnsupportedLogTerm(phi.display(vars)));
        }
        let mut poly_part = Poly::zero();
        let mut logs: BTreeMap<usize, Rat> = BTreeMap::new();
        for (mono, c) in phi.numerator().terms() {
            let log_vars: Vec<(usize, u16)> = mono.support().filter(|(i, _)| vars.log_at(*i).is_some()).collect();
            if log_vars.is_empty() {
                poly_part.add_term(mono.clone(), c);
                continue;
            }
            let single = log_vars.len() == 1 && log_vars[0].1 == 1 && mono.degree() == 1;
            if !single || !c.is_real() {
                return Err(ModelError::UnsupportedLogTerm(Expr::from_poly(Poly::term(c.clone(), mono.clone())).display(vars)));
            }
            logs.insert(vars.log_at(log_vars[0].0).expect("log var"), c.re.clone());
        }
        for v in [Var::Z(n + 1), Var::W(n + 1), Var::U] {
            if poly_part.involves(vars.index(v)) {
                let name = match v {
                    Var::Z(j) => format!("z{j}"),
                    Var::W(j) => format!("conj(z{j})"),
                    Var::U => "u".into(),
                };
                return Err(ModelError::NotRigid(name));
            }
        }
        if !phi.bar(vars).sub(phi, vars).is_zero() {
            return Err(ModelError::NotReal);
        }
        if !poly_part.at_origin().is_zero() {
            return Err(ModelError::NotNormalized);
        }
        for m in logs.keys() {
            if !vars.log_arg(*m).at_origin().is_one() {
                return Err(ModelError::LogNotNormalized(vars.poly_text(vars.log_arg(*m))));
            }
        }
        Ok(GraphPotential { n, poly_part, log_terms: logs.into_iter().map(|(m, c)| (c, m)).collect() })
    }

    pub fn to_expr(&self, vars: &VarTable) -> Expr {
        let mut e = Expr::from_poly(self.poly_part.clone());
        for (c, m) in &self.log_terms {
            e = e.add(&Expr::log_symbol(*m, vars).scale(&Gauss::real(c.clone())), vars);
        }
        e
    }
}

/// Signature of the Hermitian matrix `d^2 phi / dz_j d conj(z_k)` at the origin.
pub fn levi_signature_of(phi: &Expr, vars: &VarTable) -> Result<LeviSignature, ModelError> {
    let n = vars.n();
    let mut h = vec![vec![Gauss::zero(); n]; n];
    for j in 1..=n {
        let dz = phi.diff(Var::Z(j), vars);
        for k in 1..=n {
            h[j - 1][k - 1] = dz.diff(Var::W(k), vars).eval_at_origin(vars)?;
        }
    }
    let (pos, neg, null) = hermitian_signature(&h);
    Ok(LeviSignature { pos, neg, null })
}

/// A rigid hypersurface together with its variable table.
#[derive(Debug, Clone)]
pub struct HypersurfaceModel {
    vars: VarTable,
    potential: GraphPotential,
    phi: Expr,
    family: Family,
    eps: Vec<Sign>,
    phi_z: Vec<Expr>,
    signature: LeviSignature,
}

fn signed_abs2(k: usize, s: Sign) -> String {
    match s {
        Sign::Plus => format!(" + abs2(z{k})"),
        Sign::Minus => format!(" - abs2(z{k})"),
    }
}

impl HypersurfaceModel {
    /// One of the built-in families.
    pub fn builtin(family: Family, n: usize, eps: &[Sign]) -> Result<Self, ModelError> {
        let check_eps = |expected: usize| {
            if eps.len() == expected {
                Ok(())
            } else {
                Err(ModelError::EpsLength { expected, got: eps.len() })
            }
        };
        let text = match family {
            Family::IndefiniteSubmax => {
                if n < 2 {
                    return Err(ModelError::NOutOfRange { family, n, min: 2 });
                }
                check_eps(n - 2)?;
                let mut t = "Im(z1*conj(z2)) + abs2(z1)^2".to_string();
                for (k, s) in (3..=n).zip(eps) {
                    t.push_str(&signed_abs2(k, *s));
                }
                t
            }
            Family::DefiniteSubmax => {
                if n < 2 {
                    return Err(ModelError::NOutOfRange { family, n, min: 2 });
                }
                check_eps(0)?;
                let mut t = "log(1 + abs2(z1))".to_string();
                for k in 2..=n {
                    t.push_str(&signed_abs2(k, Sign::Plus));
                }
                t
            }
            Family::FlatQuadric => {
                if n < 1 {
                    return Err(ModelError::NOutOfRange { family, n, min: 1 });
                }
                check_eps(n)?;
                let mut t = "0".to_string();
                for (k, s) in (1..=n).zip(eps) {
                    t.push_str(&signed_abs2(k, *s));
                }
                t
            }
            Family::Custom => return Err(ModelError::File("custom models are built from a potential".into())),
        };
        let mut vars = VarTable::new(n);
        let phi = parse_expr(&text, &mut vars)?;
        Self::assemble(vars, &phi, family, eps.to_vec())
    }

    /// A model from a potential in the expression grammar (variables `z1..zn`).
    pub fn custom(n: usize, potential: &str) -> Result<Self, ModelError> {
        if n < 1 {
            return Err(ModelError::NOutOfRange { family: Family::Custom, n, min: 1 });
        }
        let mut vars = VarTable::new(n);
        let phi = parse_expr(potential, &mut vars)?;
        Self::assemble(vars, &phi, Family::Custom, Vec::new())
    }

    /// Reads the two-line model file format: `n = <int>` and `potential = <expr>`.
    pub fn from_model_file(text: &str) -> Result<Self, ModelError> {
        let mut n = None;
        let mut potential = None;
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ModelError::File(format!("expected `key = value`, got `{line}`")))?;
            match key.trim() {
                "n" => {
                    n = Some(value.trim().parse::<usize>().map_err(|_| ModelError::File(format!("bad n `{}`", value.trim())))?)
                }
                "potential" => potential = Some(value.trim().to_string()),
                other => return Err(ModelError::File(format!("unknown key `{other}`"))),
            }
        }
        let n = n.ok_or_else(|| ModelError::File("missing `n = ...` line".into()))?;
        let potential = potential.ok_or_else(|| ModelError::File("missing `potential = ...` line".into()))?;
        Self::custom(n, &potential)
    }

    fn assemble(vars: VarTable, phi: &Expr, family: Family, eps: Vec<Sign>) -> Result<Self, ModelError> {
        let potential = GraphPotential::from_expr(phi, &vars)?;
        let signature = levi_signature_of(phi, &vars)?;
        if signature.null > 0 {
            return Err(ModelError::DegenerateLevi(signature));
        }
        let n = vars.n();
        let phi_z = (1..=n).map(|j| phi.diff(Var::Z(j), &vars)).collect();
        Ok(HypersurfaceModel { vars, potential, phi: phi.clone(), family, eps, phi_z, signature })
    }

    pub fn n(&self) -> usize {
        self.vars.n()
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn eps(&self) -> &[Sign] {
        &self.eps
    }

    pub fn potential(&self) -> &GraphPotential {
        &self.potential
    }

    /// `phi` with log terms as symbols.
    pub fn phi(&self) -> &Expr {
        &self.phi
    }

    pub fn potential_text(&self) -> String {
        self.phi.to_text(&self.vars).expect("potentials are polynomial in the log symbols")
    }

    /// Defining function `F = (z_{n+1} - w_{n+1})/(2i) - phi`.
    pub fn defining_function(&self) -> Expr {
        let n = self.n();
        let vt = &self.vars;
        let im = Expr::var(Var::Z(n + 1), vt)
            .sub(&Expr::var(Var::W(n + 1), vt), vt)
            .scale(&half_over_i());
        im.sub(&self.phi, vt)
    }

    pub fn levi_signature(&self) -> LeviSignature {
        self.signature
    }

    /// `V F` restricted to the hypersurface; the tangency residual is this
    /// plus its conjugate.
    pub fn holomorphic_action(&self, v: &HoloVectorField) -> Result<Expr, ModelError> {
        let n = self.n();
        if v.n() != n {
            return Err(ModelError::DimensionMismatch { expected: n, got: v.n() });
        }
        let vt = &self.vars;
        let mut e = Expr::zero();
        for (j, a) in v.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let fz = if j < n { self.phi_z[j].neg() } else { Expr::constant(half_over_i()) };
            e = e.add(&fz.mul_poly(a, vt), vt);
        }
        self.restrict(&e)
    }

    /// `(V + conj V) F` restricted to the hypersurface. `V` is an
    /// infinitesimal symmetry exactly when the result is zero.
    pub fn tangency_residual(&self, v: &HoloVectorField) -> Result<Expr, ModelError> {
        let a = self.holomorphic_action(v)?;
        Ok(a.add(&a.bar(&self.vars), &self.vars))
    }

    /// Imposes `z_{n+1} = u + i phi`, `w_{n+1} = u - i phi`.
    pub fn restrict(&self, e: &Expr) -> Result<Expr, ModelError> {
        let n = self.n();
        let vt = &self.vars;
        let u = Expr::var(Var::U, vt);
        let i_phi = self.phi.scale(&Gauss::i());
        let mut bindings = BTreeMap::new();
        bindings.insert(Var::Z(n + 1), u.add(&i_phi, vt));
        bindings.insert(Var::W(n + 1), u.sub(&i_phi, vt));
        Ok(e.substitute(&bindings, vt)?)
    }
}

/// `1/(2i) = -i/2`.
fn half_over_i() -> Gauss {
    Gauss::new(Rat::zero(), crate::scalar::ratio(-1, 2))
}
