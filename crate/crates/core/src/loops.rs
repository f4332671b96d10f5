//! Loop algebras with central extensions, over Laurent polynomials in `z`.
//!
//! An element is a finite sum `Σ_n x_n ⊗ z^n` with coefficients in a fixed
//! finite-dimensional algebra, plus a rational multiple of a central
//! generator `K`. The bracket is
//!
//! ```text
//!   [x ⊗ z^m, y ⊗ z^n] = [x, y] ⊗ z^{m+n} + m δ_{m+n,0} form(x, y) K,
//! ```
//!
//! with a caller-supplied symmetric invariant bilinear form feeding the
//! residue 2-cocycle; the form is verified before use, since symmetry and
//! invariance are exactly what make the extended bracket antisymmetric and
//! Jacobi. After quantization the same Laurent shape carries normal-ordered
//! operator coefficients, and the bracket becomes the operator commutator
//! termwise — quantizing then bracketing agrees with bracketing (under the
//! zero form) then quantizing.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::LieAlgebra;
use crate::matrix::RationalMatrix;
use crate::orbit::QuantizedRepresentation;
use crate::rational::Rational;
use crate::weyl::WeylOperator;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("loop elements live over different spaces: dimensions {left} and {right}")]
    AlgebraMismatch { left: usize, right: usize },
    #[error("bilinear form is unusable for the cocycle: {0}")]
    FormNotInvariant(FormDefect),
}

/// How a candidate bilinear form failed verification.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormDefect {
    #[error("form(e{0}, e{1}) differs from form(e{1}, e{0})", pair.0 + 1, pair.1 + 1)]
    NotSymmetric { pair: (usize, usize) },
    #[error(
        "form([e{0}, e{1}], e{2}) differs from form(e{0}, [e{1}, e{2}])",
        triple.0 + 1, triple.1 + 1, triple.2 + 1
    )]
    NotInvariant { triple: (usize, usize, usize) },
}

/// A Laurent element of the (centrally extended) loop algebra over a
/// `dim`-dimensional coefficient space: finitely many terms `x_n ⊗ z^n`
/// plus `central · K`. Zero coefficient vectors are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "AlgebraLoopRepr", try_from = "AlgebraLoopRepr")]
pub struct AlgebraLoop {
    dim: usize,
    terms: BTreeMap<i64, Vec<Rational>>,
    central: Rational,
}

#[derive(Serialize, Deserialize)]
struct AlgebraLoopRepr {
    dim: usize,
    terms: Vec<(i64, Vec<Rational>)>,
    central: Rational,
}

impl From<AlgebraLoop> for AlgebraLoopRepr {
    fn from(a: AlgebraLoop) -> Self {
        AlgebraLoopRepr { dim: a.dim, terms: a.terms.into_iter().collect(), central: a.central }
    }
}

impl TryFrom<AlgebraLoopRepr> for AlgebraLoop {
    type Error = String;

    fn try_from(r: AlgebraLoopRepr) -> Result<Self, Self::Error> {
        let mut out = AlgebraLoop::zero(r.dim);
        out.central = r.central;
        for (n, v) in r.terms {
            if v.len() != r.dim {
                return Err(format!("term z^{n} has {} coefficients, expected {}", v.len(), r.dim));
            }
            out.add_term(n, &v);
        }
        Ok(out)
    }
}

impl AlgebraLoop {
    pub fn zero(dim: usize) -> Self {
        AlgebraLoop { dim, terms: BTreeMap::new(), central: Rational::zero() }
    }

    /// The single term `x ⊗ z^exponent`.
    ///
    /// # Panics
    ///
    /// Panics if the vector length differs from `dim`.
    pub fn single(dim: usize, exponent: i64, x: &[Rational]) -> Self {
        let mut out = Self::zero(dim);
        out.add_term(exponent, x);
        out
    }

    /// Adds `x ⊗ z^exponent` into this element.
    ///
    /// # Panics
    ///
    /// Panics if the vector length differs from `dim`.
    pub fn add_term(&mut self, exponent: i64, x: &[Rational]) {
        assert_eq!(x.len(), self.dim, "coefficient vector length");
        let entry = self
            .terms
            .entry(exponent)
            .or_insert_with(|| vec![Rational::zero(); self.dim]);
        for (slot, v) in entry.iter_mut().zip(x) {
            *slot += v;
        }
        if entry.iter().all(Rational::is_zero) {
            self.terms.remove(&exponent);
        }
    }

    pub fn with_central(mut self, central: Rational) -> Self {
        self.central = central;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn central(&self) -> &Rational {
        &self.central
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &[Rational])> {
        self.terms.iter().map(|(&n, v)| (n, v.as_slice()))
    }

    pub fn coefficient(&self, exponent: i64) -> Vec<Rational> {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(|| vec![Rational::zero(); self.dim])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    pub fn add(&self, other: &AlgebraLoop) -> Result<AlgebraLoop, LoopError> {
        if self.dim != other.dim {
            return Err(LoopError::AlgebraMismatch { left: self.dim, right: other.dim });
        }
        let mut out = self.clone();
        for (n, v) in other.terms() {
            out.add_term(n, v);
        }
        out.central = &out.central + &other.central;
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> AlgebraLoop {
        if factor.is_zero() {
            return Self::zero(self.dim);
        }
        let terms = self
            .terms
            .iter()
            .map(|(&n, v)| (n, v.iter().map(|c| c * factor).collect()))
            .collect();
        AlgebraLoop { dim: self.dim, terms, central: &self.central * factor }
    }

    /// Human-readable rendering with the algebra's basis labels, e.g.
    /// `(X + 2*Y)(x)z^-1 + 3/2*K`.
    pub fn describe(&self, g: &LieAlgebra) -> String {
        assert_eq!(g.dim(), self.dim, "algebra dimension");
        let mut pieces: Vec<String> = self
            .terms()
            .map(|(n, v)| format!("({})(x)z^{n}", g.label_vector(v)))
            .collect();
        if !self.central.is_zero() {
            pieces.push(format!("{}*K", self.central));
        }
        if pieces.is_empty() {
            "0".to_owned()
        } else {
            pieces.join(" + ")
        }
    }
}

/// Verifies that `form` is a symmetric invariant bilinear form on `g`:
/// `form(x, y) = form(y, x)` and `form([x,y], z) = form(x, [y,z])` on all
/// basis pairs and triples.
///
/// # Panics
///
/// Panics if the matrix is not `dim × dim`.
pub fn verify_invariant_form(g: &LieAlgebra, form: &RationalMatrix) -> Result<(), LoopError> {
    let n = g.dim();
    assert_eq!((form.rows(), form.cols()), (n, n), "form must be square of the algebra dimension");
    for i in 0..n {
        for j in i + 1..n {
            if form.get(i, j) != form.get(j, i) {
                return Err(LoopError::FormNotInvariant(FormDefect::NotSymmetric {
                    pair: (i, j),
                }));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                // form([e_i, e_j], e_k) vs form(e_i, [e_j, e_k]).
                let mut lhs = Rational::zero();
                for (m, c) in g.bracket_basis(i, j) {
                    lhs += &(&c * &form.get(m, k));
                }
                let mut rhs = Rational::zero();
                for (m, c) in g.bracket_basis(j, k) {
                    rhs += &(&c * &form.get(i, m));
                }
                if lhs != rhs {
                    return Err(LoopError::FormNotInvariant(FormDefect::NotInvariant {
                        triple: (i, j, k),
                    }));
                }
            }
        }
    }
    Ok(())
}

fn form_value(form: &RationalMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    let mut out = Rational::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            out += &(&(xi * yj) * &form.get(i, j));
        }
    }
    out
}

/// Bracket in the centrally extended loop algebra:
/// `[x ⊗ z^m, y ⊗ z^n] = [x,y] ⊗ z^{m+n} + m δ_{m+n,0} form(x,y) K`,
/// extended bilinearly. The central generator itself brackets to zero, so
/// the inputs' central components are ignored. The form is verified first.
pub fn loop_bracket(
    g: &LieAlgebra,
    a: &AlgebraLoop,
    b: &AlgebraLoop,
    form: &RationalMatrix,
) -> Result<AlgebraLoop, LoopError> {
    if a.dim != g.dim() || b.dim != g.dim() {
        return Err(LoopError::AlgebraMismatch {
            left: a.dim.min(b.dim).min(g.dim()),
            right: a.dim.max(b.dim).max(g.dim()),
        });
    }
    verify_invariant_form(g, form)?;
    let mut out = AlgebraLoop::zero(g.dim());
    let mut central = Rational::zero();
    for (m, x) in a.terms() {
        for (n, y) in b.terms() {
            let bracket = g.bracket(x, y).expect("term vectors have the algebra dimension");
            out.add_term(m + n, &bracket);
            if m + n == 0 {
                central += &(&Rational::from_integer(m) * &form_value(form, x, y));
            }
        }
    }
    Ok(out.with_central(central))
}

/// A Laurent element with normal-ordered operator coefficients: the image
/// of an [`AlgebraLoop`] under a quantization. All coefficients act on the
/// same number of variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "OperatorLoopRepr", try_from = "OperatorLoopRepr")]
pub struct OperatorLoop {
    vars: usize,
    terms: BTreeMap<i64, WeylOperator>,
    central: Rational,
}

#[derive(Serialize, Deserialize)]
struct OperatorLoopRepr {
    vars: usize,
    terms: Vec<(i64, WeylOperator)>,
    central: Rational,
}

impl From<OperatorLoop> for OperatorLoopRepr {
    fn from(a: OperatorLoop) -> Self {
        OperatorLoopRepr { vars: a.vars, terms: a.terms.into_iter().collect(), central: a.central }
    }
}

impl TryFrom<OperatorLoopRepr> for OperatorLoop {
    type Error = String;

    fn try_from(r: OperatorLoopRepr) -> Result<Self, Self::Error> {
        let mut out = OperatorLoop::zero(r.vars);
        out.central = r.central;
        for (n, op) in r.terms {
            if op.vars() != r.vars {
                return Err(format!(
                    "term z^{n} acts on {} variables, expected {}",
                    op.vars(),
                    r.vars
                ));
            }
            out.add_term(n, &op);
        }
        Ok(out)
    }
}

impl OperatorLoop {
    pub fn zero(vars: usize) -> Self {
        OperatorLoop { vars, terms: BTreeMap::new(), central: Rational::zero() }
    }

    /// Adds `op ⊗ z^exponent` into this element.
    ///
    /// # Panics
    ///
    /// Panics if the operator's variable count differs from `vars`.
    pub fn add_term(&mut self, exponent: i64, op: &WeylOperator) {
        assert_eq!(op.vars(), self.vars, "operator variable count");
        let entry = self
            .terms
            .entry(exponent)
            .or_insert_with(|| WeylOperator::zero(self.vars));
        *entry = entry.add(op).expect("variable counts match");
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn with_central(mut self, central: Rational) -> Self {
        self.central = central;
        self
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn central(&self) -> &Rational {
        &self.central
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &WeylOperator)> {
        self.terms.iter().map(|(&n, op)| (n, op))
    }

    pub fn coefficient(&self, exponent: i64) -> WeylOperator {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(|| WeylOperator::zero(self.vars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }
}

impl fmt::Display for OperatorLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, op) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({op})(x)z^{n}")?;
            first = false;
        }
        if !self.central.is_zero() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{}*K", self.central)?;
        }
        Ok(())
    }
}

/// Maps an [`AlgebraLoop`] through a quantization, replacing each
/// coefficient vector `x` by the operator `ρ(x)` while keeping the Laurent
/// exponents and the central component.
pub fn quantize_loop(
    rep: &QuantizedRepresentation,
    a: &AlgebraLoop,
) -> Result<OperatorLoop, LoopError> {
    if a.dim != rep.operators.len() {
        return Err(LoopError::AlgebraMismatch { left: a.dim, right: rep.operators.len() });
    }
    let mut out = OperatorLoop::zero(rep.variables);
    for (n, x) in a.terms() {
        let mut op = WeylOperator::zero(rep.variables);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                op = op.add(&rep.operators[i].scale(c)).expect("uniform variable count");
            }
        }
        out.add_term(n, &op);
    }
    Ok(out.with_central(a.central.clone()))
}

/// Bracket of two operator loops: the operator commutator termwise,
/// `[P ⊗ z^m, Q ⊗ z^n] = (PQ - QP) ⊗ z^{m+n}`, with no cocycle (the
/// operator side carries the central information inside the operators
/// themselves) and central components ignored as central.
pub fn operator_loop_bracket(
    a: &OperatorLoop,
    b: &OperatorLoop,
) -> Result<OperatorLoop, LoopError> {
    if a.vars != b.vars {
        return Err(LoopError::AlgebraMismatch { left: a.vars, right: b.vars });
    }
    let mut out = OperatorLoop::zero(a.vars);
    for (m, p) in a.terms() {
        for (n, q) in b.terms() {
            let commutator = p.commutator(q).expect("variable counts match");
            out.add_term(m + n, &commutator);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{catalog, Functional};
    use crate::orbit::{quantize_nilpotent, vergne_polarization};
    use crate::rational::rat;
    use proptest::prelude::*;

    fn basis(n: usize, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[i] = Rational::one();
        v
    }

    fn quantized_heisenberg() -> QuantizedRepresentation {
        let h3 = catalog::heisenberg(3);
        let f = Functional::dual_basis(3, 2);
        let p = vergne_polarization(&h3, &f, None).unwrap();
        quantize_nilpotent(&h3, &f, &p).unwrap()
    }

    #[test]
    fn heisenberg_loop_bracket_lands_on_the_center() {
        let h3 = catalog::heisenberg(3);
        let a = AlgebraLoop::single(3, 1, &basis(3, 0));
        let b = AlgebraLoop::single(3, -1, &basis(3, 1));
        let zero_form = RationalMatrix::zero(3, 3);
        let bracket = loop_bracket(&h3, &a, &b, &zero_form).unwrap();
        assert_eq!(bracket, AlgebraLoop::single(3, 0, &basis(3, 2)));
        assert!(bracket.central().is_zero());
        assert_eq!(bracket.describe(&h3), "(Z)(x)z^0");
    }

    #[test]
    fn bracket_with_self_vanishes() {
        let ab = catalog::abelian(2);
        let mut a = AlgebraLoop::single(2, 2, &basis(2, 0));
        a.add_term(-2, &basis(2, 0));
        a.add_term(-1, &[rat(1, 2), rat(-3, 1)]);
        let form = RationalMatrix::identity(2);
        let bracket = loop_bracket(&ab, &a, &a, &form).unwrap();
        assert!(bracket.is_zero());
    }

    #[test]
    fn abelian_residue_cocycle() {
        let ab = catalog::abelian(2);
        let form = RationalMatrix::identity(2);
        let a = AlgebraLoop::single(2, 2, &basis(2, 0));
        let b = AlgebraLoop::single(2, -2, &basis(2, 0));
        let bracket = loop_bracket(&ab, &a, &b, &form).unwrap();
        assert_eq!(*bracket.central(), rat(2, 1));
        assert_eq!(bracket.terms().count(), 0);
        // Exponents that do not cancel give nothing at all.
        let c = AlgebraLoop::single(2, -1, &basis(2, 0));
        assert!(loop_bracket(&ab, &a, &c, &form).unwrap().is_zero());
        // Orthogonal directions see no cocycle either.
        let d = AlgebraLoop::single(2, -2, &basis(2, 1));
        assert!(loop_bracket(&ab, &a, &d, &form).unwrap().is_zero());
    }

    #[test]
    fn form_verification_rejects_bad_forms() {
        let h3 = catalog::heisenberg(3);
        // The identity form is not invariant on a Heisenberg algebra:
        // form([X,Y], Z) = 1 but form(X, [Y,Z]) = 0.
        let err = verify_invariant_form(&h3, &RationalMatrix::identity(3)).unwrap_err();
        assert_eq!(
            err,
            LoopError::FormNotInvariant(FormDefect::NotInvariant { triple: (0, 1, 2) })
        );
        // Asymmetric forms are rejected even when invariance is vacuous.
        let ab = catalog::abelian(2);
        let mut skew = RationalMatrix::zero(2, 2);
        skew.set(0, 1, rat(1, 1));
        let err = verify_invariant_form(&ab, &skew).unwrap_err();
        assert_eq!(err, LoopError::FormNotInvariant(FormDefect::NotSymmetric { pair: (0, 1) }));
        // And the bracket refuses to use them.
        let a = AlgebraLoop::single(2, 1, &basis(2, 0));
        assert!(matches!(
            loop_bracket(&ab, &a, &a, &skew),
            Err(LoopError::FormNotInvariant(_))
        ));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let h3 = catalog::heisenberg(3);
        let a = AlgebraLoop::single(3, 0, &basis(3, 0));
        let b = AlgebraLoop::single(2, 0, &basis(2, 0));
        assert_eq!(
            loop_bracket(&h3, &a, &b, &RationalMatrix::zero(3, 3)),
            Err(LoopError::AlgebraMismatch { left: 2, right: 3 })
        );
        let rep = quantized_heisenberg();
        assert_eq!(
            quantize_loop(&rep, &b),
            Err(LoopError::AlgebraMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn quantized_heisenberg_loops_bracket_to_lambda() {
        let rep = quantized_heisenberg();
        let a = quantize_loop(&rep, &AlgebraLoop::single(3, 1, &basis(3, 0))).unwrap();
        let b = quantize_loop(&rep, &AlgebraLoop::single(3, -1, &basis(3, 1))).unwrap();
        let bracket = operator_loop_bracket(&a, &b).unwrap();
        let terms: Vec<_> = bracket.terms().collect();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0, 0);
        assert_eq!(*terms[0].1, WeylOperator::lambda_power(1, 1));
    }

    #[test]
    fn single_term_constant_loops_reduce_to_commutators() {
        let rep = quantized_heisenberg();
        let a = quantize_loop(&rep, &AlgebraLoop::single(3, 0, &basis(3, 0))).unwrap();
        let b = quantize_loop(&rep, &AlgebraLoop::single(3, 0, &basis(3, 1))).unwrap();
        let bracket = operator_loop_bracket(&a, &b).unwrap();
        let direct = rep.operators[0].commutator(&rep.operators[1]).unwrap();
        assert_eq!(bracket.coefficient(0), direct);
    }

    #[test]
    fn quantize_and_bracket_commute_on_heisenberg5() {
        let h5 = catalog::heisenberg(5);
        let f = Functional::dual_basis(5, 4);
        let p = vergne_polarization(&h5, &f, None).unwrap();
        let rep = quantize_nilpotent(&h5, &f, &p).unwrap();
        let zero_form = RationalMatrix::zero(5, 5);

        let mut a = AlgebraLoop::single(5, 1, &basis(5, 0));
        a.add_term(2, &basis(5, 3));
        let mut b = AlgebraLoop::single(5, -1, &basis(5, 2));
        b.add_term(0, &basis(5, 1));

        let bracket_first =
            quantize_loop(&rep, &loop_bracket(&h5, &a, &b, &zero_form).unwrap()).unwrap();
        let quantize_first = operator_loop_bracket(
            &quantize_loop(&rep, &a).unwrap(),
            &quantize_loop(&rep, &b).unwrap(),
        )
        .unwrap();
        assert_eq!(bracket_first, quantize_first);
        assert!(!bracket_first.is_zero());
    }

    #[test]
    fn serde_round_trips() {
        let mut a = AlgebraLoop::single(2, -1, &[rat(1, 2), rat(0, 1)]);
        a.add_term(3, &[rat(0, 1), rat(-2, 1)]);
        let a = a.with_central(rat(5, 3));
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"dim":2,"terms":[[-1,["1/2","0"]],[3,["0","-2"]]],"central":"5/3"}"#
        );
        let back: AlgebraLoop = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);

        let rep = quantized_heisenberg();
        let q = quantize_loop(&rep, &AlgebraLoop::single(3, 1, &basis(3, 0))).unwrap();
        let back: OperatorLoop = serde_json::from_str(&serde_json::to_string(&q).unwrap()).unwrap();
        assert_eq!(back, q);
    }

    /// Strategy: loops over a fixed small algebra with exponents in
    /// [-2, 2] and small rational coefficients.
    fn small_loop(dim: usize) -> impl Strategy<Value = AlgebraLoop> {
        let coeff = (-3i64..=3, 1i64..=2).prop_map(|(n, d)| rat(n, d));
        let term = (-2i64..=2, proptest::collection::vec(coeff, dim));
        proptest::collection::vec(term, 0..3).prop_map(move |terms| {
            let mut out = AlgebraLoop::zero(dim);
            for (exponent, v) in terms {
                out.add_term(exponent, &v);
            }
            out
        })
    }

    proptest! {
        #[test]
        fn bracket_is_antisymmetric(a in small_loop(3), b in small_loop(3)) {
            let h3 = catalog::heisenberg(3);
            let zero_form = RationalMatrix::zero(3, 3);
            let ab = loop_bracket(&h3, &a, &b, &zero_form).unwrap();
            let ba = loop_bracket(&h3, &b, &a, &zero_form).unwrap();
            prop_assert!(ab.add(&ba).unwrap().is_zero());
        }

        #[test]
        fn cocycle_bracket_is_antisymmetric(a in small_loop(2), b in small_loop(2)) {
            let alg = catalog::abelian(2);
            let form = RationalMatrix::identity(2);
            let ab = loop_bracket(&alg, &a, &b, &form).unwrap();
            let ba = loop_bracket(&alg, &b, &a, &form).unwrap();
            prop_assert!(ab.add(&ba).unwrap().is_zero());
        }

        #[test]
        fn bracket_satisfies_jacobi(
            a in small_loop(3),
            b in small_loop(3),
            c in small_loop(3),
        ) {
            let h3 = catalog::heisenberg(3);
            let zero_form = RationalMatrix::zero(3, 3);
            let bracket = |x: &AlgebraLoop, y: &AlgebraLoop| {
                loop_bracket(&h3, x, y, &zero_form).unwrap()
            };
            let total = bracket(&bracket(&a, &b), &c)
                .add(&bracket(&bracket(&b, &c), &a))
                .unwrap()
                .add(&bracket(&bracket(&c, &a), &b))
                .unwrap();
            prop_assert!(total.is_zero());
        }

        #[test]
        fn cocycle_bracket_satisfies_jacobi(
            a in small_loop(2),
            b in small_loop(2),
            c in small_loop(2),
        ) {
            let alg = catalog::abelian(2);
            let form = RationalMatrix::identity(2);
            let bracket = |x: &AlgebraLoop, y: &AlgebraLoop| {
                loop_bracket(&alg, x, y, &form).unwrap()
            };
            let total = bracket(&bracket(&a, &b), &c)
                .add(&bracket(&bracket(&b, &c), &a))
                .unwrap()
                .add(&bracket(&bracket(&c, &a), &b))
                .unwrap();
            prop_assert!(total.is_zero());
        }
    }
}
