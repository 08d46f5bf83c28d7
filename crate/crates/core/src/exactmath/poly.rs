use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector aligned with the owning polynomial's variable list.
/// Ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Monomial(Vec<u32>);

impl Monomial {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact coefficients.
///
/// Only variables that occur in some term are kept, in first-seen order.
#[derive(Clone, Debug)]
pub struct Polynomial<S> {
    variables: Vec<String>,
    terms: BTreeMap<Monomial, S>,
}

pub type Assignment<S> = BTreeMap<String, S>;

impl<S: Scalar> Polynomial<S> {
    pub fn zero() -> Self {
        Self {
            variables: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial(Vec::new()), c);
        }
        p
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(S::one(), &[(name, 1)])
    }

    /// `c · Π name^exp`
    pub fn monomial(c: S, powers: &[(&str, u32)]) -> Self {
        let mut variables: Vec<String> = Vec::new();
        let mut exps: Vec<u32> = Vec::new();
        for &(name, e) in powers {
            match variables.iter().position(|v| v == name) {
                Some(i) => exps[i] += e,
                None => {
                    variables.push(name.to_string());
                    exps.push(e);
                }
            }
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        Self { variables, terms }.normalized()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        let Some(i) = self.index_of(var) else {
            return 0;
        };
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    /// The polynomial multiplying `var^power`.
    pub fn coefficient_in(&self, var: &str, power: u32) -> Self {
        let Some(i) = self.index_of(var) else {
            return if power == 0 { self.clone() } else { Self::zero() };
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.0[i] == power {
                let mut exps = m.0.clone();
                exps[i] = 0;
                terms.insert(Monomial(exps), c.clone());
            }
        }
        Self {
            variables: self.variables.clone(),
            terms,
        }
        .normalized()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            variables: self.variables.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Exact evaluation; every variable occurring in a term must be bound.
    pub fn eval(&self, assignment: &Assignment<S>) -> Result<S> {
        let values = self
            .variables
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .cloned()
                    .ok_or_else(|| Error::MissingVariable(v.clone()))
            })
            .collect::<Result<Vec<S>>>()?;
        let mut total = S::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in values.iter().zip(&m.0) {
                for _ in 0..e {
                    term = term * x.clone();
                }
            }
            total = total + term;
        }
        Ok(total)
    }

    /// Replaces the bound variables by their values, leaving the rest symbolic.
    pub fn substitute(&self, bindings: &Assignment<S>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut powers: Vec<(&str, u32)> = Vec::new();
            for (name, &e) in self.variables.iter().zip(&m.0) {
                if e == 0 {
                    continue;
                }
                match bindings.get(name) {
                    Some(x) => {
                        for _ in 0..e {
                            coeff = coeff * x.clone();
                        }
                    }
                    None => powers.push((name, e)),
                }
            }
            out = &out + &Self::monomial(coeff, &powers);
        }
        out
    }

    /// Root of the polynomial viewed as `a·var + b` after substituting
    /// `bindings`. Fails instead of guessing when that view is not available.
    pub fn solve_affine(&self, var: &str, bindings: &Assignment<S>) -> Result<S> {
        let reduced = self.substitute(bindings);
        let degree = reduced.degree_in(var);
        if degree > 1 {
            return Err(Error::NotAffine {
                var: var.to_string(),
                degree,
            });
        }
        let leftovers: Vec<String> = reduced
            .variables
            .iter()
            .filter(|v| v.as_str() != var)
            .cloned()
            .collect();
        if !leftovers.is_empty() {
            return Err(Error::UnresolvedVariables(leftovers));
        }
        let lead = reduced
            .coefficient_in(var, 1)
            .as_constant()
            .unwrap_or_else(S::zero);
        if lead.is_zero() {
            return Err(Error::DegenerateCoefficient {
                var: var.to_string(),
            });
        }
        let constant = reduced
            .coefficient_in(var, 0)
            .as_constant()
            .unwrap_or_else(S::zero);
        Ok(-constant / lead)
    }

    fn index_of(&self, var: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == var)
    }

    /// Re-expresses the exponents over `vars`, which must contain every
    /// variable of `self`.
    fn aligned(&self, vars: &[String]) -> BTreeMap<Monomial, S> {
        let map: Vec<usize> = self
            .variables
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("variable missing"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0; vars.len()];
                for (src, &dst) in map.iter().enumerate() {
                    exps[dst] = m.0[src];
                }
                (Monomial(exps), c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &Self) -> Vec<String> {
        let mut vars = self.variables.clone();
        for v in &other.variables {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    /// Drops zero coefficients and unused variables.
    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let used: Vec<bool> = (0..self.variables.len())
            .map(|i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let variables = self
            .variables
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(m, c)| {
                let exps = m
                    .0
                    .iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(&e, _)| e)
                    .collect();
                (Monomial(exps), c)
            })
            .collect();
        Self { variables, terms }
    }
}

impl<S: Scalar> PartialEq for Polynomial<S> {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl<S: Scalar> Eq for Polynomial<S> {}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn add(self, other: &Polynomial<S>) -> Polynomial<S> {
        let variables = self.union_vars(other);
        let mut terms = self.aligned(&variables);
        for (m, c) in other.aligned(&variables) {
            let slot = terms.entry(m).or_insert_with(S::zero);
            *slot = slot.clone() + c;
        }
        Polynomial { variables, terms }.normalized()
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn sub(self, other: &Polynomial<S>) -> Polynomial<S> {
        self + &(-other)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, other: &Polynomial<S>) -> Polynomial<S> {
        let variables = self.union_vars(other);
        let lhs = self.aligned(&variables);
        let rhs = other.aligned(&variables);
        let mut terms: BTreeMap<Monomial, S> = BTreeMap::new();
        for (ma, ca) in &lhs {
            for (mb, cb) in &rhs {
                let exps = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                let slot = terms.entry(Monomial(exps)).or_insert_with(S::zero);
                *slot = slot.clone() + ca.clone() * cb.clone();
            }
        }
        Polynomial { variables, terms }.normalized()
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl<S: Scalar> $trait for Polynomial<S> {
            type Output = Polynomial<S>;

            fn $method(self, other: Polynomial<S>) -> Polynomial<S> {
                (&self).$method(&other)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest monomial first; signs are folded into the separators
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = *c < S::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = self
                .variables
                .iter()
                .zip(&m.0)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
