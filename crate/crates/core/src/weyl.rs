//! Polynomial differential operators in variables `q1..qk` with a formal
//! central parameter `l` (lambda).
//!
//! Operators are kept normal ordered: every stored term is
//! `c * l^d * q^a * ∂^b` with all multiplications by coordinates to the left
//! of all derivatives. Reordering uses the Leibniz relation
//! `∂^m q^n = Σ_j C(m,j) C(n,j) j! q^(n-j) ∂^(m-j)` one variable at a time.
//! The lambda exponent is signed: quantizations of algebras of nilpotency
//! class three or higher carry `l^-1` corrections, so the parameter lives in
//! Laurent polynomials. Specializing lambda to zero is therefore only legal
//! when no negative exponent is present.
//!
//! The textual rendering is `3/2*l^1*q1^2*d1^1`: factors with exponent zero
//! are omitted, terms are ordered by lambda exponent, then the q multidegree
//! lexicographically, then the ∂ multidegree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("operator acts on {left} variables, operand on {right}")]
    VariableMismatch { left: usize, right: usize },
    #[error("cannot specialize lambda to zero: term carries lambda^{exponent}")]
    ZeroLambdaWithNegativeExponent { exponent: i64 },
}

/// Normal-ordered monomial key. The derived `Ord` is exactly the canonical
/// term order used for display and serialization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylTerm {
    /// Signed exponent of the central parameter.
    pub lambda: i64,
    /// Multidegree in `q1..qk`.
    pub q: Vec<u32>,
    /// Multidegree in `∂1..∂k`.
    pub d: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WeylOperatorRepr", try_from = "WeylOperatorRepr")]
pub struct WeylOperator {
    vars: usize,
    terms: BTreeMap<WeylTerm, Rational>,
}

/// Serialization mirror: JSON carries the terms as a list of
/// `(term, coefficient)` pairs in canonical term order.
#[derive(Serialize, Deserialize)]
struct WeylOperatorRepr {
    vars: usize,
    terms: Vec<(WeylTerm, Rational)>,
}

impl From<WeylOperator> for WeylOperatorRepr {
    fn from(op: WeylOperator) -> Self {
        WeylOperatorRepr { vars: op.vars, terms: op.terms.into_iter().collect() }
    }
}

impl TryFrom<WeylOperatorRepr> for WeylOperator {
    type Error = String;

    fn try_from(r: WeylOperatorRepr) -> Result<Self, Self::Error> {
        let mut op = WeylOperator::zero(r.vars);
        for (term, c) in r.terms {
            if term.q.len() != r.vars || term.d.len() != r.vars {
                return Err(format!("term multidegrees must have length {}", r.vars));
            }
            op.add_term(term.lambda, term.q, term.d, c);
        }
        Ok(op)
    }
}

impl WeylOperator {
    pub fn zero(vars: usize) -> Self {
        WeylOperator { vars, terms: BTreeMap::new() }
    }

    pub fn scalar(vars: usize, c: Rational) -> Self {
        let mut op = Self::zero(vars);
        op.add_term(0, vec![0; vars], vec![0; vars], c);
        op
    }

    /// The central parameter `l^exp`.
    pub fn lambda_power(vars: usize, exp: i64) -> Self {
        let mut op = Self::zero(vars);
        op.add_term(exp, vec![0; vars], vec![0; vars], Rational::one());
        op
    }

    /// Multiplication by the coordinate `q_{i+1}`.
    pub fn position(vars: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut q = vec![0; vars];
        q[i] = 1;
        let mut op = Self::zero(vars);
        op.add_term(0, q, vec![0; vars], Rational::one());
        op
    }

    /// The derivative `∂_{i+1}`.
    pub fn derivative(vars: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut d = vec![0; vars];
        d[i] = 1;
        let mut op = Self::zero(vars);
        op.add_term(0, vec![0; vars], d, Rational::one());
        op
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WeylTerm, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Adds `c * l^lambda * q^a * ∂^b`, merging and dropping zeros.
    pub fn add_term(&mut self, lambda: i64, q: Vec<u32>, d: Vec<u32>, c: Rational) {
        assert_eq!(q.len(), self.vars, "q multidegree length");
        assert_eq!(d.len(), self.vars, "∂ multidegree length");
        if c.is_zero() {
            return;
        }
        let key = WeylTerm { lambda, q, d };
        let entry = self.terms.entry(key.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_vars(other.vars)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.lambda, t.q.clone(), t.d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, WeylError> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for (t, c) in &self.terms {
            out.terms.insert(t.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        let mut out = Self::zero(self.vars);
        for (t, v) in &self.terms {
            out.terms.insert(t.clone(), v * c);
        }
        out
    }

    /// Composition `self ∘ other`, reordered to normal form.
    pub fn multiply(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_vars(other.vars)?;
        let k = self.vars;
        let mut out = Self::zero(k);
        for (s, cs) in &self.terms {
            for (t, ct) in &other.terms {
                // (q^a1 ∂^b1)(q^a2 ∂^b2): push ∂^b1 through q^a2 one
                // variable at a time; variables commute with each other.
                let coeff = cs * ct;
                let lambda = s.lambda + t.lambda;
                let mut partials: Vec<(Vec<u32>, Vec<u32>, Rational)> =
                    vec![(Vec::with_capacity(k), Vec::with_capacity(k), coeff)];
                for i in 0..k {
                    let m = s.d[i]; // derivative order passing through
                    let n = t.q[i]; // coordinate power being passed
                    let mut next = Vec::new();
                    for (q_acc, d_acc, c_acc) in partials {
                        for j in 0..=m.min(n) {
                            let mut c = c_acc.clone();
                            // C(m,j) * C(n,j) * j!
                            c *= &falling_product(m, j);
                            c *= &falling_product(n, j);
                            c *= &inverse_factorial(j);
                            let mut q_next = q_acc.clone();
                            let mut d_next = d_acc.clone();
                            // Coordinates collect on the left, surviving
                            // derivatives on the right.
                            q_next.push(s.q[i] + (n - j));
                            d_next.push((m - j) + t.d[i]);
                            next.push((q_next, d_next, c));
                        }
                    }
                    partials = next;
                }
                for (q, d, c) in partials {
                    out.add_term(lambda, q, d, c);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self, WeylError> {
        self.multiply(other)?.sub(&other.multiply(self)?)
    }

    /// Applies the operator to a polynomial, specializing lambda.
    /// Fails if `lambda = 0` meets a term with a negative lambda exponent.
    pub fn apply(&self, p: &Polynomial, lambda: &Rational) -> Result<Polynomial, WeylError> {
        self.check_vars(p.vars)?;
        let mut out = Polynomial::zero(self.vars);
        for (t, c) in &self.terms {
            let lam = lambda.pow(t.lambda).map_err(|_| {
                WeylError::ZeroLambdaWithNegativeExponent { exponent: t.lambda }
            })?;
            let scale = c * &lam;
            for (mono, pc) in &p.terms {
                // ∂^d annihilates monomials with any exponent below d.
                let mut coeff = &scale * pc;
                let mut result = Vec::with_capacity(self.vars);
                let mut alive = true;
                for ((&m, &d), &q) in mono.iter().zip(&t.d).zip(&t.q) {
                    if m < d {
                        alive = false;
                        break;
                    }
                    coeff *= &falling_product(m, d);
                    result.push(m - d + q);
                }
                if alive && !coeff.is_zero() {
                    out.add_term(result, coeff);
                }
            }
        }
        Ok(out)
    }

    /// Total degree in the coordinates, or None for the zero operator.
    pub fn q_degree(&self) -> Option<u32> {
        self.terms.keys().map(|t| t.q.iter().sum()).max()
    }

    /// Terms with no derivative factor, i.e. the result of applying the
    /// operator to the constant 1, kept with formal lambda.
    pub fn multiplication_part(&self) -> Self {
        let mut out = Self::zero(self.vars);
        for (t, c) in &self.terms {
            if t.d.iter().all(|&b| b == 0) {
                out.terms.insert(t.clone(), c.clone());
            }
        }
        out
    }

    /// Lowest lambda exponent appearing, or None for the zero operator.
    pub fn min_lambda(&self) -> Option<i64> {
        self.terms.keys().map(|t| t.lambda).min()
    }

    fn check_vars(&self, other: usize) -> Result<(), WeylError> {
        if self.vars != other {
            Err(WeylError::VariableMismatch { left: self.vars, right: other })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if t.lambda != 0 {
                factors.push(format!("l^{}", t.lambda));
            }
            for (i, &a) in t.q.iter().enumerate() {
                if a > 0 {
                    factors.push(format!("q{}^{}", i + 1, a));
                }
            }
            for (i, &b) in t.d.iter().enumerate() {
                if b > 0 {
                    factors.push(format!("d{}^{}", i + 1, b));
                }
            }
            let mag = c.abs();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeylOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylOperator({self})")
    }
}

/// Polynomial in `q1..qk` over the rationals, sparse on multidegrees.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn monomial(vars: usize, exponents: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(exponents, c);
        p
    }

    pub fn variable(vars: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(vars, e, Rational::one())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Rational) {
        assert_eq!(exponents.len(), self.vars, "monomial length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents.clone()).or_default();
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        let mut out = Self::zero(self.vars);
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| format!("q{}^{}", i + 1, a))
                .collect();
            let mag = c.abs();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Falling factorial n(n-1)...(n-j+1) as a rational.
fn falling_product(n: u32, j: u32) -> Rational {
    let mut acc = Rational::one();
    for step in 0..j {
        acc *= &Rational::from_integer(i64::from(n - step));
    }
    acc
}

/// 1/j! as a rational.
fn inverse_factorial(j: u32) -> Rational {
    let mut acc = Rational::one();
    for step in 1..=j {
        acc *= &Rational::from_integer(i64::from(step));
    }
    acc.recip()
}
