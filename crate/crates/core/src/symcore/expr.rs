use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::{SymError, Var, VarTable};
use crate::scalar::{fmt_rat, Gauss};

/// A canonical expression `num / prod_m Q_m^{den_m}`.
///
/// The numerator is a polynomial in the roster variables and the log symbols;
/// the denominator is a product of log arguments (the only denominators the
/// calculus here can create). No `Q_m` with positive exponent divides the
/// numerator, and zero has an empty denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Expr {
    num: Poly,
    den: Vec<u32>,
}

fn trim(den: &mut Vec<u32>) {
    while den.last() == Some(&0) {
        den.pop();
    }
}

fn q_power(vars: &VarTable, exps: &[u32]) -> Poly {
    let mut acc = Poly::one();
    for (m, e) in exps.iter().enumerate() {
        if *e > 0 {
            acc = acc.mul(&vars.log_arg(m).pow(*e));
        }
    }
    acc
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::from_poly(Poly::one())
    }

    pub fn constant(c: Gauss) -> Self {
        Expr::from_poly(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(Gauss::int(n))
    }

    pub fn i() -> Self {
        Expr::constant(Gauss::i())
    }

    pub fn from_poly(num: Poly) -> Self {
        Expr { num, den: Vec::new() }
    }

    pub fn var(v: Var, vars: &VarTable) -> Self {
        Expr::from_poly(Poly::var(vars.index(v)))
    }

    /// The log symbol `L_m`.
    pub fn log_symbol(m: usize, vars: &VarTable) -> Self {
        Expr::from_poly(Poly::var(vars.log_index(m)))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    /// Exponents of the log arguments in the denominator.
    pub fn denominator(&self) -> &[u32] {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Builds `num / prod Q_m^den_m` and brings it to canonical form.
    pub fn from_parts(num: Poly, den: Vec<u32>, vars: &VarTable) -> Self {
        let mut e = Expr { num, den };
        e.canonicalize(vars);
        e
    }

    fn canonicalize(&mut self, vars: &VarTable) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for m in 0..self.den.len() {
            while self.den[m] > 0 {
                match self.num.div_exact(vars.log_arg(m)) {
                    Some(q) => {
                        self.num = q;
                        self.den[m] -= 1;
                    }
                    None => break,
                }
            }
        }
        trim(&mut self.den);
    }

    pub fn neg(&self) -> Expr {
        Expr { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Gauss) -> Expr {
        if c.is_zero() {
            return Expr::zero();
        }
        Expr { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn add(&self, o: &Expr, vars: &VarTable) -> Expr {
        if self.den == o.den {
            let mut e = Expr { num: self.num.add(&o.num), den: self.den.clone() };
            if !e.den.is_empty() {
                e.canonicalize(vars);
            }
            return e;
        }
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let len = self.den.len().max(o.den.len());
        let at = |d: &[u32], m: usize| d.get(m).copied().unwrap_or(0);
        let common: Vec<u32> = (0..len).map(|m| at(&self.den, m).max(at(&o.den, m))).collect();
        let lift = |e: &Expr| {
            let extra: Vec<u32> = (0..len).map(|m| common[m] - at(&e.den, m)).collect();
            e.num.mul(&q_power(vars, &extra))
        };
        Expr::from_parts(lift(self).add(&lift(o)), common, vars)
    }

    pub fn sub(&self, o: &Expr, vars: &VarTable) -> Expr {
        self.add(&o.neg(), vars)
    }

    pub fn mul(&self, o: &Expr, vars: &VarTable) -> Expr {
        let num = self.num.mul(&o.num);
        if self.den.is_empty() && o.den.is_empty() {
            return Expr::from_poly(num);
        }
        let len = self.den.len().max(o.den.len());
        let den = (0..len)
            .map(|m| self.den.get(m).copied().unwrap_or(0) + o.den.get(m).copied().unwrap_or(0))
            .collect();
        Expr::from_parts(num, den, vars)
    }

    pub fn mul_poly(&self, p: &Poly, vars: &VarTable) -> Expr {
        Expr::from_parts(self.num.mul(p), self.den.clone(), vars)
    }

    pub fn pow(&self, e: u32, vars: &VarTable) -> Expr {
        let num = self.num.pow(e);
        let den = self.den.iter().map(|d| d * e).collect();
        Expr::from_parts(num, den, vars)
    }

    /// Complex conjugation: swaps `z_j` and `w_j`, conjugates scalars, fixes
    /// `u` and every log symbol.
    pub fn bar(&self, vars: &VarTable) -> Expr {
        // log arguments are bar-invariant, so the denominator is unchanged
        Expr { num: self.num.permute_conj(|i| vars.conj_index(i)), den: self.den.clone() }
    }

    /// Partial derivative in a roster variable, with `dL_m/dv = (dQ_m/dv)/Q_m`.
    pub fn diff(&self, v: Var, vars: &VarTable) -> Expr {
        let vi = vars.index(v);
        let mut out = Expr::from_parts(self.num.diff(vi), self.den.clone(), vars);
        for m in 0..vars.logs().len() {
            let dq = vars.log_arg(m).diff(vi);
            if dq.is_zero() {
                continue;
            }
            let e = self.den.get(m).copied().unwrap_or(0);
            // d(N/Q^e) picks up (dN/dL_m - e N) dQ / Q^{e+1}
            let mut factor = self.num.diff(vars.log_index(m));
            if e > 0 {
                factor = factor.sub(&self.num.scale(&Gauss::int(e as i64)));
            }
            if factor.is_zero() {
                continue;
            }
            let mut den = self.den.clone();
            if den.len() <= m {
                den.resize(m + 1, 0);
            }
            den[m] += 1;
            out = out.add(&Expr::from_parts(factor.mul(&dq), den, vars), vars);
        }
        out
    }

    /// Simultaneous substitution of roster variables.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Expr>, vars: &VarTable) -> Result<Expr, SymError> {
        let bound: BTreeMap<usize, &Expr> = bindings.iter().map(|(v, e)| (vars.index(*v), e)).collect();
        for m in 0..vars.logs().len() {
            let used = self.num.involves(vars.log_index(m)) || self.den.get(m).copied().unwrap_or(0) > 0;
            if !used {
                continue;
            }
            for v in bindings.keys() {
                if vars.log_arg(m).involves(vars.index(*v)) {
                    return Err(SymError::SubstitutionTouchesLog {
                        var: v.to_string(),
                        arg: vars.poly_text(vars.log_arg(m)),
                    });
                }
            }
        }
        // group terms by the exponents of bound variables
        let mut groups: BTreeMap<Vec<(usize, u16)>, Poly> = BTreeMap::new();
        for (m, c) in self.num.terms() {
            let mut rest = m.clone();
            let mut key = Vec::new();
            for (idx, _) in m.support() {
                if bound.contains_key(&idx) {
                    let (r, e) = rest.without(idx);
                    rest = r;
                    key.push((idx, e));
                }
            }
            groups.entry(key).or_default().add_term(rest, c);
        }
        let mut powers: HashMap<(usize, u16), Expr> = HashMap::new();
        let mut acc = Expr::zero();
        for (key, rest) in groups {
            let mut term = Expr::from_poly(rest);
            for (idx, e) in key {
                let p = powers.entry((idx, e)).or_insert_with(|| bound[&idx].pow(e as u32, vars));
                term = term.mul(p, vars);
            }
            acc = acc.add(&term, vars);
        }
        if self.den.is_empty() {
            Ok(acc)
        } else {
            Ok(acc.mul(&Expr { num: Poly::one(), den: self.den.clone() }, vars))
        }
    }

    /// Exact value at the origin. Log symbols vanish there when `Q_m(0) = 1`.
    pub fn eval_at_origin(&self, vars: &VarTable) -> Result<Gauss, SymError> {
        let mut value = Gauss::zero();
        for (m, c) in self.num.terms() {
            if m.is_one() {
                value += c;
                continue;
            }
            let only_logs = m.support().all(|(i, _)| vars.log_at(i).is_some());
            if !only_logs {
                continue;
            }
            for (i, _) in m.support() {
                let lm = vars.log_at(i).expect("checked");
                if !vars.log_arg(lm).at_origin().is_one() {
                    return Err(SymError::NotEvaluable(format!(
                        "log({}) at the origin is not rational",
                        vars.poly_text(vars.log_arg(lm))
                    )));
                }
            }
        }
        let d = q_power(vars, &self.den).at_origin();
        if d.is_zero() {
            return Err(SymError::NotEvaluable("denominator vanishes at the origin".into()));
        }
        Ok(&value / &d)
    }

    /// Numerator after rewriting over the denominator `prod Q_m^{den[m]}`,
    /// or `None` if that is not a multiple of the own denominator.
    pub fn numerator_over(&self, den: &[u32], vars: &VarTable) -> Option<Poly> {
        let mut extra = vec![0; den.len()];
        for (m, e) in self.den.iter().enumerate() {
            let target = den.get(m).copied().unwrap_or(0);
            if target < *e {
                return None;
            }
        }
        for (m, t) in den.iter().enumerate() {
            extra[m] = t - self.den.get(m).copied().unwrap_or(0);
        }
        Some(self.num.mul(&q_power(vars, &extra)))
    }

    /// Text in the input grammar; fails when there is a denominator.
    pub fn to_text(&self, vars: &VarTable) -> Result<String, SymError> {
        if !self.den.is_empty() {
            return Err(SymError::NotPolynomial);
        }
        Ok(poly_to_text(&self.num, vars))
    }

    /// Human-readable form, including denominators.
    pub fn display(&self, vars: &VarTable) -> String {
        let num = poly_to_text(&self.num, vars);
        if self.den.is_empty() {
            return num;
        }
        let mut den = String::new();
        for (m, e) in self.den.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            if !den.is_empty() {
                den.push('*');
            }
            let _ = write!(den, "({})", poly_to_text(vars.log_arg(m), vars));
            if *e > 1 {
                let _ = write!(den, "^{e}");
            }
        }
        format!("({num})/{den}")
    }
}

fn var_text(index: usize, vars: &VarTable) -> String {
    match vars.var_at(index) {
        Some(Var::Z(j)) => format!("z{j}"),
        Some(Var::W(j)) => format!("conj(z{j})"),
        Some(Var::U) => "u".to_string(),
        None => match vars.log_at(index) {
            Some(m) => format!("log({})", poly_to_text(vars.log_arg(m), vars)),
            None => format!("L{}", index - vars.roster_len()),
        },
    }
}

/// Splits a coefficient into a sign and an unsigned body.
fn coeff_parts(c: &Gauss, has_monomial: bool) -> (bool, String) {
    let unit_body = |r: &crate::scalar::Rat| if has_monomial && r.is_one() { String::new() } else { fmt_rat(r) };
    if c.im.is_zero() {
        (c.re.is_negative(), unit_body(&c.re.abs()))
    } else if c.re.is_zero() {
        let a = c.im.abs();
        let body = if a.is_one() { "i".to_string() } else { format!("{}*i", fmt_rat(&a)) };
        (c.im.is_negative(), body)
    } else {
        (false, c.to_string())
    }
}

pub(crate) fn poly_to_text(p: &Poly, vars: &VarTable) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let (negative, body) = coeff_parts(c, !m.is_one());
        let mut factors: Vec<String> = Vec::new();
        if !body.is_empty() {
            factors.push(body);
        }
        for (i, e) in m.support() {
            let v = var_text(i, vars);
            factors.push(if e > 1 { format!("{v}^{e}") } else { v });
        }
        let term = factors.join("*");
        match (k, negative) {
            (0, false) => out.push_str(&term),
            (0, true) => {
                out.push('-');
                out.push_str(&term);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&term);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&term);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn table() -> VarTable {
        VarTable::new(2)
    }

    #[test]
    fn bar_of_i_z1() {
        let vt = table();
        let e = Expr::var(Var::Z(1), &vt).scale(&Gauss::i());
        let expected = Expr::var(Var::W(1), &vt).scale(&Gauss::from_ints(0, -1));
        assert_eq!(e.bar(&vt), expected);
        assert_eq!(e.bar(&vt).bar(&vt), e);
    }

    #[test]
    fn log_derivative_and_cancellation() {
        let mut vt = table();
        let z1 = Expr::var(Var::Z(1), &vt);
        let w1 = Expr::var(Var::W(1), &vt);
        let q = Expr::one().add(&z1.mul(&w1, &vt), &vt);
        let m = vt.intern_log(q.numerator().clone()).unwrap();
        let l = Expr::log_symbol(m, &vt);
        let d = l.diff(Var::Z(1), &vt);
        assert_eq!(d.numerator(), w1.numerator());
        assert_eq!(d.denominator(), &[1]);
        // (w1/Q) * Q cancels back to w1
        assert_eq!(d.mul(&q, &vt), w1);
        assert!(l.bar(&vt) == l);
        assert!(l.diff(Var::U, &vt).is_zero());
    }

    #[test]
    fn substitution_imaginary_part() {
        let vt = table();
        let z3 = Expr::var(Var::Z(3), &vt);
        let w3 = Expr::var(Var::W(3), &vt);
        let t = Expr::var(Var::Z(1), &vt).add(&Expr::var(Var::W(1), &vt), &vt);
        let im = z3.sub(&w3, &vt).scale(&Gauss::new(ratio(0, 1), ratio(-1, 2)));
        let u = Expr::var(Var::U, &vt);
        let mut b = BTreeMap::new();
        b.insert(Var::Z(3), u.add(&t.scale(&Gauss::i()), &vt));
        b.insert(Var::W(3), u.sub(&t.scale(&Gauss::i()), &vt));
        assert_eq!(im.substitute(&b, &vt).unwrap(), t);
    }

    #[test]
    fn text_of_polynomial() {
        let vt = table();
        let e = Expr::var(Var::Z(1), &vt)
            .mul(&Expr::var(Var::W(2), &vt), &vt)
            .scale(&Gauss::new(ratio(0, 1), ratio(-1, 2)))
            .add(&Expr::int(3), &vt);
        assert_eq!(e.to_text(&vt).unwrap(), "-1/2*i*z1*conj(z2) + 3");
    }
}
