//! Finite-dimensional Lie algebras over the rationals, presented by
//! structure constants on a chosen basis.
//!
//! Brackets are stored only for index pairs `i < j`; antisymmetry is
//! structural rather than data. The JSON document format mirrors that:
//!
//! ```json
//! {
//!   "dim": 3,
//!   "basis": ["X", "Y", "Z"],
//!   "brackets": [
//!     { "i": 0, "j": 1, "terms": [{ "k": 2, "coeff": "1" }] }
//!   ]
//! }
//! ```
//!
//! Omitted pairs bracket to zero. Construction verifies the Jacobi identity
//! eagerly unless the deferred constructor is used, which exists so that a
//! caller can load a questionable algebra and then ask for the report.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::RationalMatrix;
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("dimension mismatch: expected vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis label count {labels} does not match dim {dim}")]
    LabelCountMismatch { labels: usize, dim: usize },
    #[error("bracket index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket pair ({i}, {j}) must satisfy i < j; lower triangle is implied by antisymmetry")]
    NotUpperPair { i: usize, j: usize },
    #[error("duplicate bracket entry for pair ({i}, {j})")]
    DuplicatePair { i: usize, j: usize },
    #[error("Jacobi identity fails first at triple ({}, {}, {})", .0.triple.0, .0.triple.1, .0.triple.2)]
    JacobiFailed(JacobiFailure),
    #[error("span is not closed under the bracket: [row {i}, row {j}] leaves the span")]
    NotClosed { i: usize, j: usize },
    #[error("subspace is not contained in the claimed parent space")]
    NotContained,
    #[error("subspace is not an ideal: bracket with basis vector {basis_index} leaves it")]
    NotIdeal { basis_index: usize },
}

/// Report from the Jacobi check: either a pass or the first failing triple
/// together with the residual of the cyclic sum, as a coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<JacobiFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub residual: Vec<Rational>,
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraDoc", into = "AlgebraDoc")]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// `(i, j) -> [(k, c)]` with `i < j`, sorted by `k`, no zero coefficients.
    brackets: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraDoc {
    dim: usize,
    basis: Vec<String>,
    brackets: Vec<BracketDoc>,
}

#[derive(Serialize, Deserialize)]
struct BracketDoc {
    i: usize,
    j: usize,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    k: usize,
    coeff: Rational,
}

impl TryFrom<AlgebraDoc> for LieAlgebra {
    type Error = LieError;

    fn try_from(doc: AlgebraDoc) -> Result<Self, LieError> {
        if doc.basis.len() != doc.dim {
            return Err(LieError::LabelCountMismatch { labels: doc.basis.len(), dim: doc.dim });
        }
        let brackets = doc
            .brackets
            .into_iter()
            .map(|b| ((b.i, b.j), b.terms.into_iter().map(|t| (t.k, t.coeff)).collect()))
            .collect();
        // Deferred here: JSON loading feeds the report path; callers that
        // need a verified algebra go through `verified`.
        LieAlgebra::new_deferred(doc.basis, brackets)
    }
}

impl From<LieAlgebra> for AlgebraDoc {
    fn from(g: LieAlgebra) -> AlgebraDoc {
        AlgebraDoc {
            dim: g.labels.len(),
            basis: g.labels,
            brackets: g
                .brackets
                .into_iter()
                .map(|((i, j), terms)| BracketDoc {
                    i,
                    j,
                    terms: terms.into_iter().map(|(k, coeff)| TermDoc { k, coeff }).collect(),
                })
                .collect(),
        }
    }
}

pub type BracketTable = BTreeMap<(usize, usize), Vec<(usize, Rational)>>;

impl LieAlgebra {
    /// Constructs and verifies the Jacobi identity, rejecting the table on
    /// the first failing triple.
    pub fn verified(labels: Vec<String>, brackets: BracketTable) -> Result<Self, LieError> {
        let g = Self::new_deferred(labels, brackets)?;
        let report = g.check_jacobi();
        match report.failure {
            None => Ok(g),
            Some(f) => Err(LieError::JacobiFailed(f)),
        }
    }

    /// Constructs without the Jacobi check; indices and table shape are
    /// still validated. Exists for the explicit-report flow.
    pub fn new_deferred(labels: Vec<String>, brackets: BracketTable) -> Result<Self, LieError> {
        let dim = labels.len();
        let mut clean: BracketTable = BTreeMap::new();
        for ((i, j), terms) in brackets {
            if i >= j {
                return Err(LieError::NotUpperPair { i, j });
            }
            for &index in [i, j].iter() {
                if index >= dim {
                    return Err(LieError::IndexOutOfRange { index, dim });
                }
            }
            let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, c) in terms {
                if k >= dim {
                    return Err(LieError::IndexOutOfRange { index: k, dim });
                }
                *merged.entry(k).or_default() += &c;
            }
            let terms: Vec<(usize, Rational)> =
                merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if clean.insert((i, j), terms).is_some() {
                return Err(LieError::DuplicatePair { i, j });
            }
        }
        clean.retain(|_, terms| !terms.is_empty());
        Ok(LieAlgebra { labels, brackets: clean })
    }

    pub fn from_json(json: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(json)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra serialization cannot fail")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Structure constants of `[e_i, e_j]` for any index pair, with the sign
    /// implied by antisymmetry; empty when `i == j` or the pair is silent.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        if i == j {
            return Vec::new();
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.brackets.get(&key) {
            None => Vec::new(),
            Some(terms) if !flip => terms.clone(),
            Some(terms) => terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, LieError> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(LieError::DimensionMismatch { expected: n, got: v.len() });
            }
        }
        let mut out = vec![Rational::zero(); n];
        for (&(i, j), terms) in &self.brackets {
            let coeff = &x[i] * &y[j] - &x[j] * &y[i];
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in terms {
                out[*k] += &(&coeff * c);
            }
        }
        Ok(out)
    }

    /// Checks the Jacobi identity over all triples `i < j < k`, reporting the
    /// first failure instead of erroring: a broken table is data to inspect.
    pub fn check_jacobi(&self) -> JacobiReport {
        let n = self.dim();
        let basis = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (basis(i), basis(j), basis(k));
                    let mut residual = self
                        .bracket(&self.bracket(&ei, &ej).unwrap(), &ek)
                        .unwrap();
                    let t2 = self.bracket(&self.bracket(&ej, &ek).unwrap(), &ei).unwrap();
                    let t3 = self.bracket(&self.bracket(&ek, &ei).unwrap(), &ej).unwrap();
                    for idx in 0..n {
                        residual[idx] += &t2[idx];
                        residual[idx] += &t3[idx];
                    }
                    if residual.iter().any(|c| !c.is_zero()) {
                        return JacobiReport {
                            pass: false,
                            failure: Some(JacobiFailure { triple: (i, j, k), residual }),
                        };
                    }
                }
            }
        }
        JacobiReport { pass: true, failure: None }
    }

    /// Renders a coordinate vector against the basis labels, e.g. `X - 2*Z`.
    pub fn label_vector(&self, v: &[Rational]) -> String {
        let mut out = String::new();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_one() {
                    let _ = write!(out, "{}", self.labels[i]);
                } else if (-c).is_one() {
                    let _ = write!(out, "-{}", self.labels[i]);
                } else {
                    let _ = write!(out, "{}*{}", c, self.labels[i]);
                }
            } else if c.is_negative() {
                let a = c.abs();
                if a.is_one() {
                    let _ = write!(out, " - {}", self.labels[i]);
                } else {
                    let _ = write!(out, " - {}*{}", a, self.labels[i]);
                }
            } else if c.is_one() {
                let _ = write!(out, " + {}", self.labels[i]);
            } else {
                let _ = write!(out, " + {}*{}", c, self.labels[i]);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Span of all `[x, y]` with `x` ranging over basis vectors of `a` and
    /// `y` over basis vectors of `b`.
    fn bracket_span(&self, a: &Subalgebra, b: &Subalgebra) -> Subalgebra {
        let mut products = Vec::new();
        for x in a.basis_rows() {
            for y in b.basis_rows() {
                products.push(self.bracket(&x, &y).unwrap());
            }
        }
        Subalgebra::candidate(self.dim(), &products)
    }

    /// Lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ ...`, listed until it
    /// stabilizes; the stable term appears once (it is `0` iff nilpotent).
    pub fn lower_central_series(&self) -> Vec<Subalgebra> {
        let mut series = vec![Subalgebra::full(self)];
        loop {
            let next = self.bracket_span(&series[0], series.last().unwrap());
            if next.dim() == series.last().unwrap().dim() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Derived series `g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ ...`, until stable.
    pub fn derived_series(&self) -> Vec<Subalgebra> {
        let mut series = vec![Subalgebra::full(self)];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_span(last, last);
            if next.dim() == last.dim() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().dim() == 0
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().dim() == 0
    }

    /// Nilpotency class: length of the lower central series minus one, when
    /// the algebra is nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        if series.last().unwrap().dim() == 0 {
            Some(series.len() - 1)
        } else {
            None
        }
    }

    /// Center `{x : [x, e_j] = 0 for all j}` via one kernel computation.
    pub fn center(&self) -> Subalgebra {
        let n = self.dim();
        // Row (j*n + k), column i: coefficient of e_k in [e_i, e_j].
        let mut m = RationalMatrix::zero(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    m.set(j * n + k, i, c);
                }
            }
        }
        Subalgebra::candidate(n, &m.kernel_basis())
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra[{}]", self.labels.join(", "))
    }
}

/// Linear functional on an algebra, as coordinates against the dual basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Functional(pub Vec<Rational>);

impl Functional {
    pub fn zero(dim: usize) -> Self {
        Functional(vec![Rational::zero(); dim])
    }

    /// Dual basis vector `e_i^*`.
    pub fn dual_basis(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim);
        f.0[i] = Rational::one();
        f
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        assert_eq!(v.len(), self.0.len(), "functional/vector length mismatch");
        let mut acc = Rational::zero();
        for (c, x) in self.0.iter().zip(v) {
            acc += &(c * x);
        }
        acc
    }

    /// Parses a comma-separated list of rationals, e.g. `0,0,1`.
    pub fn parse_csv(s: &str, expected_dim: usize) -> Result<Self, String> {
        let coords: Result<Vec<Rational>, _> =
            s.split(',').map(|tok| tok.trim().parse::<Rational>()).collect();
        let coords = coords.map_err(|e| e.to_string())?;
        if coords.len() != expected_dim {
            return Err(format!(
                "functional has {} coordinates but the algebra has dimension {}",
                coords.len(),
                expected_dim
            ));
        }
        Ok(Functional(coords))
    }
}

/// Subspace of an algebra in reduced row echelon form. Closure under the
/// bracket is verified by [`Subalgebra::new`]; [`Subalgebra::candidate`]
/// skips it so that failing candidates can still be handed to report-style
/// checks (which treat closure as a reportable condition, not a type error).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subalgebra {
    basis: RationalMatrix,
}

impl Subalgebra {
    /// Echelonizes the span and verifies bracket closure.
    pub fn new(g: &LieAlgebra, vectors: &[Vec<Rational>]) -> Result<Self, LieError> {
        let sub = Self::candidate(g.dim(), vectors);
        sub.verify_closed(g)?;
        Ok(sub)
    }

    /// Echelonized span without the closure check.
    pub fn candidate(dim: usize, vectors: &[Vec<Rational>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), dim, "vector length mismatch");
        }
        let m = RationalMatrix::from_rows(vectors.to_vec());
        Subalgebra { basis: prune_zero_rows(&m.rref()) }
    }

    pub fn full(g: &LieAlgebra) -> Self {
        Subalgebra { basis: RationalMatrix::identity(g.dim()) }
    }

    pub fn zero(dim: usize) -> Self {
        Subalgebra { basis: RationalMatrix::zero(0, dim) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis_matrix(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.basis.rows()).map(|r| self.basis.row(r)).collect()
    }

    /// Pivot columns of the echelon basis, ascending.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let (_, pivots) = self.basis.rref_with_pivots();
        pivots
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.basis.row_space_contains(v)
    }

    pub fn contains_subspace(&self, other: &Subalgebra) -> bool {
        other.basis_rows().iter().all(|v| self.contains(v))
    }

    pub fn verify_closed(&self, g: &LieAlgebra) -> Result<(), LieError> {
        let rows = self.basis_rows();
        for (i, x) in rows.iter().enumerate() {
            for (j, y) in rows.iter().enumerate().skip(i + 1) {
                let b = g.bracket(x, y).unwrap();
                if !self.contains(&b) {
                    return Err(LieError::NotClosed { i, j });
                }
            }
        }
        Ok(())
    }

    /// Verifies `[g, self] ⊆ self`.
    pub fn verify_ideal(&self, g: &LieAlgebra) -> Result<(), LieError> {
        let n = g.dim();
        for i in 0..n {
            let mut ei = vec![Rational::zero(); n];
            ei[i] = Rational::one();
            for row in self.basis_rows() {
                let b = g.bracket(&ei, &row).unwrap();
                if !self.contains(&b) {
                    return Err(LieError::NotIdeal { basis_index: i });
                }
            }
        }
        Ok(())
    }

    /// Sum of subspaces.
    pub fn sum(&self, other: &Subalgebra) -> Subalgebra {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subalgebra::candidate(self.ambient_dim(), &rows)
    }

    /// Intersection of subspaces, computed from the kernel of `[Aᵀ | -Bᵀ]`.
    pub fn intersect(&self, other: &Subalgebra) -> Subalgebra {
        let n = self.ambient_dim();
        assert_eq!(n, other.ambient_dim());
        let a = self.dim();
        let b = other.dim();
        let mut m = RationalMatrix::zero(n, a + b);
        for (r, c, v) in self.basis.iter() {
            m.set(c, r, v.clone());
        }
        for (r, c, v) in other.basis.iter() {
            m.set(c, a + r, -v);
        }
        let mut vectors = Vec::new();
        for w in m.kernel_basis() {
            // x = Σ w_r * (row r of self).
            let mut x = vec![Rational::zero(); n];
            for (r, row) in self.basis_rows().iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    x[j] += &(&w[r] * v);
                }
            }
            vectors.push(x);
        }
        Subalgebra::candidate(n, &vectors)
    }

    /// Coordinates of `v` against this basis, or None if `v` lies outside.
    pub fn coordinates_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim());
        // Echelon rows make this a direct read-off followed by a residue check.
        let pivots = self.pivot_columns();
        let coords: Vec<Rational> = pivots.iter().map(|&c| v[c].clone()).collect();
        let mut residue = v.to_vec();
        for (r, row) in self.basis_rows().iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let delta = &coords[r] * x;
                residue[j] -= &delta;
            }
        }
        if residue.iter().all(Rational::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn describe(&self, g: &LieAlgebra) -> Vec<String> {
        self.basis_rows().iter().map(|v| g.label_vector(v)).collect()
    }
}

fn prune_zero_rows(m: &RationalMatrix) -> RationalMatrix {
    let rows: Vec<Vec<Rational>> = (0..m.rows())
        .map(|r| m.row(r))
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect();
    if rows.is_empty() {
        RationalMatrix::zero(0, m.cols())
    } else {
        RationalMatrix::from_rows(rows)
    }
}

/// Quotient of a subalgebra `p` by an ideal `n ⊆ p` of it. Returns the
/// quotient presented on the non-pivot coordinates, the projection matrix
/// from `p`-coordinates to quotient coordinates, and a section: one ambient
/// vector per quotient basis element.
pub fn quotient_by_ideal(
    g: &LieAlgebra,
    p: &Subalgebra,
    n: &Subalgebra,
    labels: Vec<String>,
) -> Result<(LieAlgebra, RationalMatrix, Vec<Vec<Rational>>), LieError> {
    if !p.contains_subspace(n) {
        return Err(LieError::NotContained);
    }
    let p_rows = p.basis_rows();
    let d = p_rows.len();
    // n in p-coordinates.
    let n_in_p: Vec<Vec<Rational>> = n
        .basis_rows()
        .iter()
        .map(|v| p.coordinates_of(v).ok_or(LieError::NotContained))
        .collect::<Result<_, _>>()?;
    let n_mat = if n_in_p.is_empty() {
        RationalMatrix::zero(0, d)
    } else {
        RationalMatrix::from_rows(n_in_p).rref()
    };
    let (n_rref, n_pivots) = n_mat.rref_with_pivots();
    let free: Vec<usize> = (0..d).filter(|c| !n_pivots.contains(c)).collect();
    let q_dim = free.len();
    assert_eq!(labels.len(), q_dim, "quotient label count");

    // Projection: p-coordinates -> quotient coordinates. Reducing modulo the
    // pivot rows of n sends coordinate c to its expansion on free columns.
    let mut projection = RationalMatrix::zero(q_dim, d);
    for (slot, &f) in free.iter().enumerate() {
        projection.set(slot, f, Rational::one());
    }
    for (row, &pc) in n_pivots.iter().enumerate() {
        for (slot, &f) in free.iter().enumerate() {
            let v = n_rref.get(row, f);
            if !v.is_zero() {
                projection.set(slot, pc, -v);
            }
        }
    }

    // Section: ambient representative for each quotient basis vector.
    let section: Vec<Vec<Rational>> = free.iter().map(|&f| p_rows[f].clone()).collect();

    // Induced bracket on representatives, projected back down.
    let project = |v: &[Rational]| -> Result<Vec<Rational>, LieError> {
        let in_p = p.coordinates_of(v).ok_or(LieError::NotClosed { i: 0, j: 0 })?;
        Ok(projection.mul_vec(&in_p).unwrap())
    };
    let mut table: BracketTable = BTreeMap::new();
    for i in 0..q_dim {
        for j in i + 1..q_dim {
            let b = g.bracket(&section[i], &section[j]).unwrap();
            let coords = project(&b)?;
            let terms: Vec<(usize, Rational)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !terms.is_empty() {
                table.insert((i, j), terms);
            }
        }
    }
    let quotient = LieAlgebra::verified(labels, table)?;
    Ok((quotient, projection, section))
}

/// Built-in algebra catalog used by tests and resolvable by name on the
/// command line.
pub mod catalog {
    use super::*;
    use crate::rational::rat;

    /// Abelian algebra of dimension `n`, basis `e1..en`.
    pub fn abelian(n: usize) -> LieAlgebra {
        let labels = (1..=n).map(|i| format!("e{i}")).collect();
        LieAlgebra::verified(labels, BTreeMap::new()).unwrap()
    }

    /// Heisenberg algebra of odd dimension `2n+1`: `[X_i, Y_i] = Z`, center
    /// spanned by `Z`. Dimension 3 uses the unnumbered labels `X, Y, Z`.
    pub fn heisenberg(dim: usize) -> LieAlgebra {
        assert!(dim >= 3 && dim % 2 == 1, "Heisenberg dimension must be odd and >= 3");
        let n = dim / 2;
        let mut labels: Vec<String> = Vec::with_capacity(dim);
        if n == 1 {
            labels.extend(["X".into(), "Y".into(), "Z".into()]);
        } else {
            labels.extend((1..=n).map(|i| format!("X{i}")));
            labels.extend((1..=n).map(|i| format!("Y{i}")));
            labels.push("Z".into());
        }
        let mut table: BracketTable = BTreeMap::new();
        for i in 0..n {
            table.insert((i, n + i), vec![(2 * n, rat(1, 1))]);
        }
        LieAlgebra::verified(labels, table).unwrap()
    }

    /// Filiform nilpotent algebra of dimension 4 and class 3:
    /// `[e1,e2] = e3`, `[e1,e3] = e4`.
    pub fn filiform4() -> LieAlgebra {
        let labels = vec!["e1".into(), "e2".into(), "e3".into(), "e4".into()];
        let mut table: BracketTable = BTreeMap::new();
        table.insert((0, 1), vec![(2, rat(1, 1))]);
        table.insert((0, 2), vec![(3, rat(1, 1))]);
        LieAlgebra::verified(labels, table).unwrap()
    }

    /// Oscillator (diamond) algebra: solvable, not nilpotent.
    /// `[T,X] = Y`, `[T,Y] = -X`, `[X,Y] = Z`.
    pub fn oscillator() -> LieAlgebra {
        let labels = vec!["T".into(), "X".into(), "Y".into(), "Z".into()];
        let mut table: BracketTable = BTreeMap::new();
        table.insert((0, 1), vec![(2, rat(1, 1))]);
        table.insert((0, 2), vec![(1, rat(-1, 1))]);
        table.insert((1, 2), vec![(3, rat(1, 1))]);
        LieAlgebra::verified(labels, table).unwrap()
    }

    /// Split simple algebra sl2: `[E,F] = H`, `[H,E] = 2E`, `[H,F] = -2F`.
    pub fn sl2() -> LieAlgebra {
        let labels = vec!["E".into(), "F".into(), "H".into()];
        let mut table: BracketTable = BTreeMap::new();
        table.insert((0, 1), vec![(2, rat(1, 1))]);
        table.insert((0, 2), vec![(0, rat(-2, 1))]);
        table.insert((1, 2), vec![(1, rat(2, 1))]);
        LieAlgebra::verified(labels, table).unwrap()
    }

    /// Resolves `abelian<n>`, `heisenberg<2n+1>`, `filiform4`, `oscillator`,
    /// or `sl2`.
    pub fn by_name(name: &str) -> Option<LieAlgebra> {
        match name {
            "filiform4" => return Some(filiform4()),
            "oscillator" => return Some(oscillator()),
            "sl2" => return Some(sl2()),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("abelian") {
            let n: usize = rest.parse().ok()?;
            if (1..=64).contains(&n) {
                return Some(abelian(n));
            }
        }
        if let Some(rest) = name.strip_prefix("heisenberg") {
            let d: usize = rest.parse().ok()?;
            if d >= 3 && d % 2 == 1 && d <= 65 {
                return Some(heisenberg(d));
            }
        }
        None
    }

    /// Names accepted by [`by_name`], for error messages.
    pub const NAME_PATTERNS: &[&str] =
        &["abelian<n>", "heisenberg<2n+1>", "filiform4", "oscillator", "sl2"];
}
