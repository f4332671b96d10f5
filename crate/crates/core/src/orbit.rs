//! Coadjoint-orbit machinery over the rationals: stabilizers of linear
//! functionals, Vergne polarizations for nilpotent algebras, verification of
//! the polarization conditions, quantization of a polarized functional into
//! polynomial differential operators, and the Heisenberg-quotient reduction
//! for solvable algebras.
//!
//! # Quantization model
//!
//! Fix a nilpotent algebra `g`, a functional `F`, and a polarization `p`
//! (a subalgebra with `F([p, p]) = 0` of dimension
//! `(dim g + dim g_F) / 2`). Because `F` kills `[p, p]`, the assignment
//! `x ↦ λ·F(x)` extends to an algebra character `χ` of the enveloping
//! algebra of `p`, with `λ` a formal central parameter. The representation
//! space is the co-induced module `Hom_{U(p)}(U(g), Q_χ)`: by the
//! Poincaré–Birkhoff–Witt theorem a functional `φ` in it is determined by
//! its values on ordered monomials `u^a` in a complement basis of `p`, and
//! we identify `φ` with the polynomial
//!
//! ```text
//!   f(q) = Σ_a  φ(u^a) / (a! λ^{|a|}) · q^a,
//! ```
//!
//! on which `g` acts by `(x·φ)(u) = φ(u·x)`. The `a! λ^{|a|}` rescaling is
//! what makes the three-dimensional Heisenberg algebra at `F = Z*` come out
//! as the classic table `X ↦ λ ∂/∂q`, `Y ↦ q`, `Z ↦ λ`. For algebras of
//! nilpotency class three or more the operators pick up negative powers of
//! `λ`, which is why [`crate::weyl::WeylOperator`] carries a signed lambda
//! exponent.
//!
//! The complement basis is a Malcev basis adapted to both `p` and the lower
//! central series. Adaptedness is what bounds the computation: straightening
//! a word `u^b · x` into PBW order can only reach the monomial `u^a` when
//! `|b| ≤ |a| + class`, because every bracket insertion strictly increases
//! the depth of the one letter that is out of order. Each operator is
//! reconstructed from its action on `1` and on the coordinates, then checked
//! against the module action on all monomials up to degree `class + 2`, and
//! the whole map is checked to be a Lie homomorphism as an exact identity of
//! normal-ordered operators. Those two checks are theorems, not input
//! validation, so their failure is a panic rather than an error variant.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{quotient_by_ideal, Functional, LieAlgebra, Subalgebra};
use crate::matrix::RationalMatrix;
use crate::rational::Rational;
use crate::weyl::WeylOperator;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("algebra is not solvable")]
    NotSolvable,
    #[error("flag is not a full ideal chain: step {step} {detail}")]
    FlagNotIdealChain { step: usize, detail: String },
    #[error("subspace fails the polarization conditions: {0}")]
    PolarizationInvalid(PolarizationReport),
    #[error("functional vanishes on the polarization; the reduction has nothing to quotient by")]
    FunctionalVanishesOnPolarization,
    #[error("quotient is not a Heisenberg algebra: {0}")]
    QuotientNotHeisenberg(NotHeisenbergReason),
}

/// Why a structural Heisenberg check failed.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotHeisenbergReason {
    #[error("dimension {dim} is even")]
    EvenDimension { dim: usize },
    #[error("center has dimension {dim}, not 1")]
    CenterDimension { dim: usize },
    #[error("bracket of basis pair ({i}, {j}) falls outside the center")]
    BracketOutsideCenter { i: usize, j: usize },
    #[error("induced alternating form is degenerate")]
    DegenerateForm,
}

/// The three polarization conditions, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolarizationCondition {
    /// (a) the subspace is closed under the bracket.
    Subalgebra,
    /// (b) the functional kills all brackets of the subspace.
    Isotropy,
    /// (c) `2 dim p = dim g + dim g_F`.
    Dimension,
}

impl fmt::Display for PolarizationCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolarizationCondition::Subalgebra => write!(f, "subalgebra"),
            PolarizationCondition::Isotropy => write!(f, "isotropy"),
            PolarizationCondition::Dimension => write!(f, "dimension"),
        }
    }
}

/// Outcome of [`check_polarization`]: all three conditions are evaluated so
/// a failing candidate still yields a full diagnosis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationReport {
    pub subalgebra: bool,
    pub isotropic: bool,
    pub dimension: bool,
    pub pass: bool,
    /// First failing condition in the order (a), (b), (c).
    pub first_failure: Option<PolarizationCondition>,
    pub dim_algebra: usize,
    pub dim_polarization: usize,
    pub dim_stabilizer: usize,
}

impl fmt::Display for PolarizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = |ok: bool| if ok { "ok" } else { "FAIL" };
        write!(
            f,
            "subalgebra {}, isotropy {}, dimension {} (dim p = {}, dim g = {}, dim stabilizer = {})",
            status(self.subalgebra),
            status(self.isotropic),
            status(self.dimension),
            self.dim_polarization,
            self.dim_algebra,
            self.dim_stabilizer,
        )
    }
}

/// Stabilizer `g_F = {x : F([x, ·]) = 0}`, the kernel of the alternating
/// matrix `B_F[i][j] = F([e_i, e_j])`.
///
/// For a genuine Lie algebra the stabilizer is automatically a subalgebra:
/// `F([[x,y],z]) = F([x,[y,z]]) - F([y,[x,z]])` vanishes whenever `x` and
/// `y` stabilize `F`.
///
/// # Panics
///
/// Panics if the functional length does not match the algebra dimension.
pub fn stabilizer(g: &LieAlgebra, f: &Functional) -> Subalgebra {
    assert_eq!(f.dim(), g.dim(), "functional/algebra dimension mismatch");
    restricted_stabilizer(g, f, &Subalgebra::full(g))
}

/// Stabilizer of `F` restricted to a subspace: `{x ∈ s : F([x, s]) = 0}`.
fn restricted_stabilizer(g: &LieAlgebra, f: &Functional, s: &Subalgebra) -> Subalgebra {
    let rows = s.basis_rows();
    let d = rows.len();
    let mut b = RationalMatrix::zero(d, d);
    for (i, x) in rows.iter().enumerate() {
        for (j, y) in rows.iter().enumerate().skip(i + 1) {
            let v = f.eval(&g.bracket(x, y).expect("rows live in the ambient algebra"));
            if !v.is_zero() {
                b.set(i, j, v.clone());
                b.set(j, i, -v);
            }
        }
    }
    let mut vectors = Vec::new();
    for c in b.kernel_basis() {
        let mut x = vec![Rational::zero(); g.dim()];
        for (s_idx, row) in rows.iter().enumerate() {
            for (col, v) in row.iter().enumerate() {
                x[col] += &(&c[s_idx] * v);
            }
        }
        vectors.push(x);
    }
    Subalgebra::candidate(g.dim(), &vectors)
}

/// The default full ideal chain `0 = g_0 ⊂ g_1 ⊂ … ⊂ g_n = g`: the lower
/// central series refined one dimension at a time. Within each gap
/// `C^{j+1} ⊂ C^j` the echelon basis rows of `C^j` are inserted at
/// descending pivot order; every intermediate space is an ideal because
/// `[g, C^j] = C^{j+1}` already sits below the gap.
pub fn default_ideal_flag(g: &LieAlgebra) -> Result<Vec<Subalgebra>, OrbitError> {
    if !g.is_nilpotent() {
        return Err(OrbitError::NotNilpotent);
    }
    let n = g.dim();
    let mut chain = g.lower_central_series();
    chain.reverse(); // ascending: 0 = C^{class+1}, …, C^1 = g
    let mut flag = vec![chain[0].clone()];
    for window in chain.windows(2) {
        let top = &window[1];
        let mut rows = top.basis_rows();
        rows.reverse(); // descending pivot order
        for row in rows {
            let current = flag.last().expect("flag starts nonempty");
            if !current.contains(&row) {
                flag.push(current.sum(&Subalgebra::candidate(n, &[row])));
            }
        }
    }
    Ok(flag)
}

fn validate_flag(g: &LieAlgebra, flag: &[Subalgebra]) -> Result<(), OrbitError> {
    let n = g.dim();
    if flag.len() != n + 1 {
        return Err(OrbitError::FlagNotIdealChain {
            step: flag.len(),
            detail: format!("chain has {} subspaces, expected {}", flag.len(), n + 1),
        });
    }
    for (i, s) in flag.iter().enumerate() {
        if s.ambient_dim() != n {
            return Err(OrbitError::FlagNotIdealChain {
                step: i,
                detail: format!("lives in dimension {}, expected {}", s.ambient_dim(), n),
            });
        }
        if s.dim() != i {
            return Err(OrbitError::FlagNotIdealChain {
                step: i,
                detail: format!("has dimension {}, expected {}", s.dim(), i),
            });
        }
        if i > 0 && !s.contains_subspace(&flag[i - 1]) {
            return Err(OrbitError::FlagNotIdealChain {
                step: i,
                detail: "does not contain the previous step".into(),
            });
        }
        if s.verify_ideal(g).is_err() {
            return Err(OrbitError::FlagNotIdealChain {
                step: i,
                detail: "is not an ideal of the ambient algebra".into(),
            });
        }
    }
    Ok(())
}

/// Vergne polarization `p = Σ_i stab(F|_{g_i})` along a full ideal chain.
/// With the default chain this is deterministic; any valid chain yields a
/// polarization when the algebra is nilpotent.
pub fn vergne_polarization(
    g: &LieAlgebra,
    f: &Functional,
    flag: Option<&[Subalgebra]>,
) -> Result<Subalgebra, OrbitError> {
    assert_eq!(f.dim(), g.dim(), "functional/algebra dimension mismatch");
    if !g.is_nilpotent() {
        return Err(OrbitError::NotNilpotent);
    }
    let default;
    let chain = match flag {
        Some(steps) => {
            validate_flag(g, steps)?;
            steps
        }
        None => {
            default = default_ideal_flag(g)?;
            &default
        }
    };
    let mut p = Subalgebra::zero(g.dim());
    for step in chain.iter().skip(1) {
        p = p.sum(&restricted_stabilizer(g, f, step));
    }
    let p = Subalgebra::new(g, &p.basis_rows())
        .expect("sum of chain stabilizers of a nilpotent algebra is closed");
    let report = check_polarization(g, f, &p);
    assert!(report.pass, "chain-stabilizer sum must be a polarization, got: {report}");
    Ok(p)
}

/// Checks the polarization conditions for `p` at `F`: (a) subalgebra,
/// (b) `F([p, p]) = 0`, (c) `2 dim p = dim g + dim g_F`. Every condition is
/// evaluated; `first_failure` reports the earliest failing one.
pub fn check_polarization(g: &LieAlgebra, f: &Functional, p: &Subalgebra) -> PolarizationReport {
    assert_eq!(f.dim(), g.dim(), "functional/algebra dimension mismatch");
    assert_eq!(p.ambient_dim(), g.dim(), "subspace/algebra dimension mismatch");
    let subalgebra = p.verify_closed(g).is_ok();
    let rows = p.basis_rows();
    let mut isotropic = true;
    'outer: for (i, x) in rows.iter().enumerate() {
        for y in rows.iter().skip(i + 1) {
            let b = g.bracket(x, y).expect("rows live in the ambient algebra");
            if !f.eval(&b).is_zero() {
                isotropic = false;
                break 'outer;
            }
        }
    }
    let dim_stabilizer = stabilizer(g, f).dim();
    let dimension = 2 * p.dim() == g.dim() + dim_stabilizer;
    let checks = [
        (subalgebra, PolarizationCondition::Subalgebra),
        (isotropic, PolarizationCondition::Isotropy),
        (dimension, PolarizationCondition::Dimension),
    ];
    let first_failure = checks.iter().find(|(ok, _)| !ok).map(|&(_, c)| c);
    PolarizationReport {
        subalgebra,
        isotropic,
        dimension,
        pass: first_failure.is_none(),
        first_failure,
        dim_algebra: g.dim(),
        dim_polarization: p.dim(),
        dim_stabilizer,
    }
}

/// Result of [`quantize_nilpotent`]: one normal-ordered operator per basis
/// element of the algebra, acting on polynomials in `variables` coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantizedRepresentation {
    /// `operators[i]` is the image of basis element `e_i`.
    pub operators: Vec<WeylOperator>,
    /// Number of coordinates, `dim g - dim p`, half the orbit dimension.
    pub variables: usize,
    /// Ambient vectors whose dual coordinates are `q1..qk`, in order.
    pub complement: Vec<Vec<Rational>>,
}

/// One failing bracket pair from [`verify_homomorphism`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismFailure {
    pub pair: (usize, usize),
    /// `[ρ(e_i), ρ(e_j)]` as computed.
    pub commutator: WeylOperator,
    /// `ρ([e_i, e_j])` as demanded by the structure constants.
    pub expected: WeylOperator,
}

/// Outcome of checking `[ρ(e_i), ρ(e_j)] = ρ([e_i, e_j])` over all pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismReport {
    pub pass: bool,
    pub failures: Vec<HomomorphismFailure>,
}

/// Checks the defining property of a representation pair by pair, as exact
/// identities of normal-ordered operators.
///
/// # Panics
///
/// Panics if the operator count differs from the algebra dimension or the
/// operators disagree on their variable count.
pub fn verify_homomorphism(g: &LieAlgebra, operators: &[WeylOperator]) -> HomomorphismReport {
    let n = g.dim();
    assert_eq!(operators.len(), n, "one operator per basis element");
    let vars = operators.first().map_or(0, WeylOperator::vars);
    let mut failures = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let commutator = operators[i]
                .commutator(&operators[j])
                .expect("operators share a variable count");
            let mut expected = WeylOperator::zero(vars);
            for (k, c) in g.bracket_basis(i, j) {
                expected = expected
                    .add(&operators[k].scale(&c))
                    .expect("operators share a variable count");
            }
            if commutator != expected {
                failures.push(HomomorphismFailure { pair: (i, j), commutator, expected });
            }
        }
    }
    HomomorphismReport { pass: failures.is_empty(), failures }
}

/// Letter-indexed bracket table: `table[i][j]` is the expansion of
/// `[letter_i, letter_j]` in the adapted basis.
type LetterTable = Vec<Vec<Vec<(usize, Rational)>>>;

/// PBW frame for one quantization: an ordered basis of the algebra whose
/// first `r` letters span the polarization and whose remaining `k` letters
/// span a complement, both adapted to the lower central series so that
/// bracketing strictly increases letter depth.
struct AdaptedFrame {
    /// Ambient coordinates -> letter coordinates.
    to_letters: RationalMatrix,
    table: LetterTable,
    /// `λ F` on each letter; only the first `r` entries are ever used.
    f_values: Vec<Rational>,
    r: usize,
    k: usize,
    class: usize,
    /// Ambient vectors of the complement letters, in coordinate order.
    complement: Vec<Vec<Rational>>,
}

fn adapted_frame(g: &LieAlgebra, f: &Functional, p: &Subalgebra) -> AdaptedFrame {
    let n = g.dim();
    let lcs = g.lower_central_series();
    let class = lcs.len() - 1;
    // Walk the central series from the deepest slot up, keeping for each
    // slot first the rows coming from p, then echelon completions of the
    // slot. The invariant is that after finishing slot j the running span
    // is exactly C^j.
    let mut current = Subalgebra::zero(n);
    let mut p_letters: Vec<Vec<Rational>> = Vec::new();
    let mut u_letters: Vec<(usize, usize, Vec<Rational>)> = Vec::new(); // (pivot, slot, vector)
    for j in (1..=class).rev() {
        let slot = &lcs[j - 1];
        for row in p.intersect(slot).basis_rows() {
            if !current.contains(&row) {
                current = current.sum(&Subalgebra::candidate(n, std::slice::from_ref(&row)));
                p_letters.push(row);
            }
        }
        for row in slot.basis_rows() {
            if !current.contains(&row) {
                let pivot = row
                    .iter()
                    .position(|v| !v.is_zero())
                    .expect("echelon rows are nonzero");
                current = current.sum(&Subalgebra::candidate(n, std::slice::from_ref(&row)));
                u_letters.push((pivot, j, row));
            }
        }
    }
    assert_eq!(p_letters.len(), p.dim(), "polarization letters span the polarization");
    assert_eq!(p_letters.len() + u_letters.len(), n, "letters form a basis");
    u_letters.sort_by_key(|&(pivot, slot, _)| (pivot, slot));
    let complement: Vec<Vec<Rational>> = u_letters.into_iter().map(|(_, _, v)| v).collect();

    let r = p_letters.len();
    let k = complement.len();
    let mut letters = p_letters;
    letters.extend(complement.iter().cloned());
    let basis = RationalMatrix::from_rows(letters.clone());
    let to_letters = basis
        .transpose()
        .inverse()
        .expect("adapted letters form a basis of the algebra");
    let f_values: Vec<Rational> = letters.iter().map(|v| f.eval(v)).collect();
    let mut table: LetterTable = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let ambient = g.bracket(&letters[i], &letters[j]).expect("letters are vectors");
            let coords = to_letters.mul_vec(&ambient).expect("square change of basis");
            table[i][j] = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
    }
    AdaptedFrame { to_letters, table, f_values, r, k, class, complement }
}

/// Straightens a word of letters into PBW order (non-decreasing letter
/// indices), rewriting each adjacent inversion `…ab…` with `a > b` as
/// `…ba… + …[a,b]…` until only sorted words remain.
fn straighten(table: &LetterTable, word: Vec<usize>) -> BTreeMap<Vec<usize>, Rational> {
    let mut out: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    let mut work = vec![(word, Rational::one())];
    while let Some((w, c)) = work.pop() {
        match w.windows(2).position(|pair| pair[0] > pair[1]) {
            None => {
                let entry = out.entry(w.clone()).or_default();
                *entry += &c;
                if entry.is_zero() {
                    out.remove(&w);
                }
            }
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                work.push((swapped, c.clone()));
                for (m, coeff) in &table[a][b] {
                    let mut shorter = Vec::with_capacity(w.len() - 1);
                    shorter.extend_from_slice(&w[..i]);
                    shorter.push(*m);
                    shorter.extend_from_slice(&w[i + 2..]);
                    work.push((shorter, &c * coeff));
                }
            }
        }
    }
    out
}

fn factorial(n: u32) -> Rational {
    let mut acc = Rational::one();
    for step in 2..=n {
        acc *= &Rational::from_integer(i64::from(step));
    }
    acc
}

fn multi_factorial(a: &[u32]) -> Rational {
    let mut acc = Rational::one();
    for &e in a {
        acc *= &factorial(e);
    }
    acc
}

/// All length-`k` multi-indices with the given total, lexicographically.
fn multi_indices(k: usize, total: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in multi_indices(k - 1, total - first) {
            let mut v = Vec::with_capacity(k);
            v.push(first);
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Image of the monomial `q^target` under the module action of the letter
/// vector `x`, as a multiplication operator (no derivative factors).
///
/// The coefficient of `q^b` in the image reads off `φ(u^b · x)` for the
/// functional dual to `q^target`; adaptedness of the letters bounds the
/// degrees `b` that can contribute by `|target| + class`.
fn action_on_monomial(frame: &AdaptedFrame, x: &[Rational], target: &[u32]) -> WeylOperator {
    let (r, k) = (frame.r, frame.k);
    let target_weight: u32 = target.iter().sum();
    let target_factorial = multi_factorial(target);
    let mut out = WeylOperator::zero(k);
    for total in 0..=(target_weight as usize + frame.class) {
        for b in multi_indices(k, total as u32) {
            let mut base: Vec<usize> = Vec::with_capacity(total);
            for (j, &e) in b.iter().enumerate() {
                base.extend(std::iter::repeat_n(r + j, e as usize));
            }
            // φ(u^b · x) accumulated by the lambda exponent contributed by
            // the character on the polarization prefix.
            let mut values: BTreeMap<i64, Rational> = BTreeMap::new();
            for (letter, cx) in x.iter().enumerate() {
                if cx.is_zero() {
                    continue;
                }
                let mut word = base.clone();
                word.push(letter);
                for (sorted, coeff) in straighten(&frame.table, word) {
                    let split = sorted.iter().position(|&l| l >= r).unwrap_or(sorted.len());
                    let (prefix, suffix) = sorted.split_at(split);
                    let mut suffix_degree = vec![0u32; k];
                    for &l in suffix {
                        suffix_degree[l - r] += 1;
                    }
                    if suffix_degree != target {
                        continue;
                    }
                    let mut value = &coeff * cx;
                    for &l in prefix {
                        value *= &frame.f_values[l];
                        if value.is_zero() {
                            break;
                        }
                    }
                    if value.is_zero() {
                        continue;
                    }
                    let entry = values.entry(prefix.len() as i64).or_default();
                    *entry += &value;
                }
            }
            let b_factorial = multi_factorial(&b);
            for (chi_lambda, v) in values {
                if v.is_zero() {
                    continue;
                }
                let coeff = v * &target_factorial * &b_factorial.recip();
                let exponent = chi_lambda + i64::from(target_weight) - total as i64;
                out.add_term(exponent, b.clone(), vec![0; k], coeff);
            }
        }
    }
    out
}

/// Multiplication operator for the monomial `q^a`.
fn monomial_operator(k: usize, a: &[u32]) -> WeylOperator {
    let mut op = WeylOperator::zero(k);
    op.add_term(0, a.to_vec(), vec![0; k], Rational::one());
    op
}

/// Reconstructs the module action of `x` as a first-order operator
/// `Σ_j P_j(q) ∂_j + P_0(q)` from its values on `1` and on each coordinate.
fn first_order_operator(frame: &AdaptedFrame, x: &[Rational]) -> WeylOperator {
    let k = frame.k;
    let p0 = action_on_monomial(frame, x, &vec![0; k]);
    let mut op = p0.clone();
    for j in 0..k {
        let mut unit = vec![0u32; k];
        unit[j] = 1;
        let on_qj = action_on_monomial(frame, x, &unit);
        let pj = on_qj
            .sub(&p0.multiply(&WeylOperator::position(k, j)).expect("same variables"))
            .expect("same variables");
        op = op
            .add(&pj.multiply(&WeylOperator::derivative(k, j)).expect("same variables"))
            .expect("same variables");
    }
    op
}

/// Confirms that the reconstructed operator reproduces the module action on
/// every monomial through degree `class + 2`. This is a theorem for adapted
/// frames, so disagreement is a bug, not bad input.
fn verify_module_action(frame: &AdaptedFrame, x: &[Rational], op: &WeylOperator) {
    let k = frame.k;
    for total in 0..=(frame.class + 2) as u32 {
        for a in multi_indices(k, total) {
            let via_operator = op
                .multiply(&monomial_operator(k, &a))
                .expect("same variables")
                .multiplication_part();
            let via_module = action_on_monomial(frame, x, &a);
            assert!(
                via_operator == via_module,
                "module action is not first order at degree {total}: {via_operator} vs {via_module}",
            );
        }
    }
}

/// Quantizes a nilpotent algebra at `F` along a polarization `p`: returns
/// `ρ` with `[ρ(x), ρ(y)] = ρ([x, y])` exactly, acting on polynomials in
/// `dim g - dim p` coordinates, with `ρ(x) = λ F(x)` on the polarization
/// directions (in particular central elements go to multiples of `λ`).
///
/// # Panics
///
/// Panics if the functional length does not match the algebra dimension, or
/// if an internal consistency check fails (which would be a bug: for a
/// verified polarization the construction is a theorem).
pub fn quantize_nilpotent(
    g: &LieAlgebra,
    f: &Functional,
    p: &Subalgebra,
) -> Result<QuantizedRepresentation, OrbitError> {
    assert_eq!(f.dim(), g.dim(), "functional/algebra dimension mismatch");
    assert_eq!(p.ambient_dim(), g.dim(), "subspace/algebra dimension mismatch");
    if !g.is_nilpotent() {
        return Err(OrbitError::NotNilpotent);
    }
    let report = check_polarization(g, f, p);
    if !report.pass {
        return Err(OrbitError::PolarizationInvalid(report));
    }
    let frame = adapted_frame(g, f, p);
    let n = g.dim();
    let mut operators = Vec::with_capacity(n);
    for i in 0..n {
        let x: Vec<Rational> = (0..n).map(|row| frame.to_letters.get(row, i)).collect();
        let op = first_order_operator(&frame, &x);
        verify_module_action(&frame, &x, &op);
        operators.push(op);
    }
    let hom = verify_homomorphism(g, &operators);
    assert!(
        hom.pass,
        "quantization of a verified polarization must be a homomorphism; first failure at pair {:?}",
        hom.failures.first().map(|f| f.pair),
    );
    Ok(QuantizedRepresentation {
        operators,
        variables: frame.k,
        complement: frame.complement,
    })
}

/// Structural identification of a Heisenberg algebra `h_{2m+1}`: dimension
/// `2m+1`, one-dimensional center, all brackets central, and the induced
/// alternating form on the complement of the center nondegenerate. The
/// one-dimensional abelian algebra is the degenerate member `m = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergWitness {
    /// Number of symplectic pairs: the dimension is `2m + 1`.
    pub m: usize,
    /// Generator of the center, in the algebra's coordinates.
    pub center: Vec<Rational>,
    /// Alternating form on the non-center standard coordinates: entry
    /// `(s, t)` is the center coefficient of the bracket of those basis
    /// vectors.
    pub form: RationalMatrix,
}

/// Checks the structural Heisenberg conditions and returns the witness data.
pub fn heisenberg_witness(g: &LieAlgebra) -> Result<HeisenbergWitness, NotHeisenbergReason> {
    let n = g.dim();
    if n.is_multiple_of(2) {
        return Err(NotHeisenbergReason::EvenDimension { dim: n });
    }
    let center = g.center();
    if center.dim() != 1 {
        return Err(NotHeisenbergReason::CenterDimension { dim: center.dim() });
    }
    // Every bracket must be a multiple of the central generator.
    for i in 0..n {
        for j in i + 1..n {
            let terms = g.bracket_basis(i, j);
            if terms.is_empty() {
                continue;
            }
            let mut v = vec![Rational::zero(); n];
            for (k, c) in terms {
                v[k] = c;
            }
            if center.coordinates_of(&v).is_none() {
                return Err(NotHeisenbergReason::BracketOutsideCenter { i, j });
            }
        }
    }
    let pivot = center.pivot_columns()[0];
    let complement: Vec<usize> = (0..n).filter(|&c| c != pivot).collect();
    let mut form = RationalMatrix::zero(n - 1, n - 1);
    for (s, &cs) in complement.iter().enumerate() {
        for (t, &ct) in complement.iter().enumerate().skip(s + 1) {
            let mut v = vec![Rational::zero(); n];
            for (k, c) in g.bracket_basis(cs, ct) {
                v[k] = c;
            }
            let coords = center.coordinates_of(&v).expect("checked above");
            if !coords[0].is_zero() {
                form.set(s, t, coords[0].clone());
                form.set(t, s, -&coords[0]);
            }
        }
    }
    if form.rank() != n - 1 {
        return Err(NotHeisenbergReason::DegenerateForm);
    }
    Ok(HeisenbergWitness {
        m: (n - 1) / 2,
        center: center.basis_rows().remove(0),
        form,
    })
}

/// Result of [`heisenberg_reduction`]: the quotient of the polarization by
/// the kernel of the functional, its Heisenberg identification, and the
/// quantized operators pulled back to the polarization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergReduction {
    pub quotient: LieAlgebra,
    pub witness: HeisenbergWitness,
    /// Polarization coordinates -> quotient coordinates.
    pub projection: RationalMatrix,
    /// One operator per echelon basis row of the polarization.
    pub operators: Vec<WeylOperator>,
    pub variables: usize,
}

/// Reduction step for solvable algebras: quotient the polarization `p` by
/// `ker(F|_p)` — an ideal of `p` precisely because `F` kills `[p, p]` —
/// verify the quotient is a Heisenberg algebra, quantize it at the induced
/// functional, and pull the operators back to `p`.
///
/// For a genuine polarization with `F|_p ≠ 0` the quotient is the
/// one-dimensional degenerate member of the Heisenberg family, so each
/// basis row of `p` maps to the scalar operator `λ F(row)`.
pub fn heisenberg_reduction(
    g: &LieAlgebra,
    f: &Functional,
    p: &Subalgebra,
) -> Result<HeisenbergReduction, OrbitError> {
    assert_eq!(f.dim(), g.dim(), "functional/algebra dimension mismatch");
    assert_eq!(p.ambient_dim(), g.dim(), "subspace/algebra dimension mismatch");
    if !g.is_solvable() {
        return Err(OrbitError::NotSolvable);
    }
    let report = check_polarization(g, f, p);
    if !report.pass {
        return Err(OrbitError::PolarizationInvalid(report));
    }
    let rows = p.basis_rows();
    let f_on_rows: Vec<Rational> = rows.iter().map(|row| f.eval(row)).collect();
    if f_on_rows.iter().all(Rational::is_zero) {
        return Err(OrbitError::FunctionalVanishesOnPolarization);
    }
    // ker(F|_p) in ambient coordinates.
    let d = p.dim();
    let mut f_row = RationalMatrix::zero(1, d);
    for (s, v) in f_on_rows.iter().enumerate() {
        f_row.set(0, s, v.clone());
    }
    let kernel_vectors: Vec<Vec<Rational>> = f_row
        .kernel_basis()
        .into_iter()
        .map(|c| {
            let mut x = vec![Rational::zero(); g.dim()];
            for (s, row) in rows.iter().enumerate() {
                for (col, v) in row.iter().enumerate() {
                    x[col] += &(&c[s] * v);
                }
            }
            x
        })
        .collect();
    let kernel = Subalgebra::candidate(g.dim(), &kernel_vectors);
    let q_dim = d - kernel.dim();
    let labels: Vec<String> = (1..=q_dim).map(|i| format!("u{i}")).collect();
    let (quotient, projection, section) = quotient_by_ideal(g, p, &kernel, labels)
        .expect("kernel of the functional is an ideal of an isotropic subalgebra");
    let witness = heisenberg_witness(&quotient).map_err(OrbitError::QuotientNotHeisenberg)?;
    // Induced functional on the quotient; well defined because F kills the
    // kernel by construction.
    let f_bar = Functional(section.iter().map(|s| f.eval(s)).collect());
    let p_bar = vergne_polarization(&quotient, &f_bar, None)
        .expect("a Heisenberg quotient is nilpotent");
    let rep = quantize_nilpotent(&quotient, &f_bar, &p_bar)
        .expect("the quotient polarization was just verified");
    let operators: Vec<WeylOperator> = (0..d)
        .map(|s| {
            let mut unit = vec![Rational::zero(); d];
            unit[s] = Rational::one();
            let coords = projection.mul_vec(&unit).expect("projection has p-many columns");
            let mut op = WeylOperator::zero(rep.variables);
            for (t, c) in coords.iter().enumerate() {
                op = op.add(&rep.operators[t].scale(c)).expect("same variables");
            }
            op
        })
        .collect();
    Ok(HeisenbergReduction {
        quotient,
        witness,
        projection,
        operators,
        variables: rep.variables,
    })
}
