//! Verma modules for the Virasoro algebra over exact rationals.
//!
//! A module `V_{c,h}` is spanned by vectors `L_{-k1} L_{-k2} … L_{-km} |h>`
//! with `k1 >= k2 >= … >= km > 0`, one for each integer partition; the level
//! of a vector is the partition weight and `L_0` acts on level `l` as
//! `h + l`. Modes act through the commutation rule
//!
//! ```text
//!   [L_m, L_n] = (m - n) L_{m+n} + (c/12) m (m^2 - 1) δ_{m+n,0},
//! ```
//!
//! moving raising modes rightward until they annihilate `|h>`. On top of the
//! action sit the contravariant (Shapovalov) form with `L_n† = L_{-n}` and
//! `<h|h> = 1`, its determinant, singular vectors, and the graded dimensions
//! of the irreducible quotient by the form's radical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::matrix::RationalMatrix;
use crate::partitions::{partitions_of, Partition};
use crate::rational::Rational;

/// A highest-weight module determined by central charge and highest weight.
/// Every rational pair is admissible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VermaModule {
    pub c: Rational,
    pub h: Rational,
}

impl VermaModule {
    pub fn new(c: Rational, h: Rational) -> Self {
        VermaModule { c, h }
    }

    /// The highest-weight vector `|h>`: the empty partition at level 0.
    pub fn highest_weight_vector(&self) -> VermaVector {
        self.basis_vector(&Partition::empty())
    }

    /// The basis vector for one partition, with coefficient 1.
    pub fn basis_vector(&self, partition: &Partition) -> VermaVector {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(partition.clone(), Rational::one());
        VermaVector { module: self.clone(), level: partition.weight(), coeffs }
    }

    /// The zero vector at a given level.
    pub fn zero_vector(&self, level: u32) -> VermaVector {
        VermaVector { module: self.clone(), level, coeffs: BTreeMap::new() }
    }

    /// All basis vectors at a level, in canonical partition order.
    pub fn basis(&self, level: u32) -> Vec<VermaVector> {
        partitions_of(level).iter().map(|p| self.basis_vector(p)).collect()
    }

    /// Central term `(c/12) m (m^2 - 1)` of the bracket `[L_m, L_{-m}]`.
    fn central_term(&self, m: i64) -> Rational {
        let factor = Rational::from_integer(m * (m * m - 1));
        &(&self.c * &factor) * &Rational::new(1, 12)
    }
}

/// An element of a Verma module: a level together with a sparse rational
/// combination of the partition basis at that level. Zero coefficients are
/// never stored; the zero vector has an empty map.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "VermaVectorRepr", try_from = "VermaVectorRepr")]
pub struct VermaVector {
    module: VermaModule,
    level: u32,
    coeffs: BTreeMap<Partition, Rational>,
}

/// Zero vectors compare equal regardless of their recorded level, since the
/// zero vector belongs to every graded piece.
impl PartialEq for VermaVector {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module
            && self.coeffs == other.coeffs
            && (self.is_zero() || self.level == other.level)
    }
}

impl Eq for VermaVector {}

/// Serialization mirror: JSON carries the coefficients as a list of
/// `(partition, coefficient)` pairs in canonical order.
#[derive(Serialize, Deserialize)]
struct VermaVectorRepr {
    module: VermaModule,
    level: u32,
    coeffs: Vec<(Partition, Rational)>,
}

impl From<VermaVector> for VermaVectorRepr {
    fn from(v: VermaVector) -> Self {
        VermaVectorRepr {
            module: v.module,
            level: v.level,
            coeffs: v.coeffs.into_iter().collect(),
        }
    }
}

impl TryFrom<VermaVectorRepr> for VermaVector {
    type Error = String;

    fn try_from(r: VermaVectorRepr) -> Result<Self, Self::Error> {
        let mut coeffs = BTreeMap::new();
        for (p, c) in r.coeffs {
            if p.weight() != r.level {
                return Err(format!("partition {p} does not have weight {}", r.level));
            }
            if c.is_zero() {
                continue;
            }
            if coeffs.insert(p, c).is_some() {
                return Err("duplicate partition".into());
            }
        }
        Ok(VermaVector { module: r.module, level: r.level, coeffs })
    }
}

impl VermaVector {
    pub fn module(&self) -> &VermaModule {
        &self.module
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients in canonical partition order.
    pub fn coeffs(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coeffs.iter()
    }

    /// Coefficient of one basis partition (zero when absent).
    pub fn coefficient(&self, p: &Partition) -> Rational {
        self.coeffs.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sum of two vectors of the same module. The zero vector belongs to
    /// every graded piece, so adding it adopts the other side's level;
    /// otherwise the levels must agree.
    ///
    /// # Panics
    ///
    /// Panics on a module mismatch or on adding nonzero vectors of
    /// different levels.
    pub fn add(&self, other: &VermaVector) -> VermaVector {
        assert_eq!(self.module, other.module, "vectors from different modules");
        if self.level != other.level {
            if self.is_zero() {
                return other.clone();
            }
            if other.is_zero() {
                return self.clone();
            }
        }
        assert_eq!(self.level, other.level, "vectors at different levels");
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_to(p, c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> VermaVector {
        if factor.is_zero() {
            return self.module.zero_vector(self.level);
        }
        let coeffs = self.coeffs.iter().map(|(p, c)| (p.clone(), c * factor)).collect();
        VermaVector { module: self.module.clone(), level: self.level, coeffs }
    }

    /// Rescales so the canonically first partition in the support has
    /// coefficient 1. The zero vector is returned unchanged.
    pub fn normalized(&self) -> VermaVector {
        match self.coeffs.values().next() {
            None => self.clone(),
            Some(first) => self.scale(&first.recip()),
        }
    }

    fn add_to(&mut self, partition: &Partition, value: Rational) {
        if value.is_zero() {
            return;
        }
        debug_assert_eq!(partition.weight(), self.level);
        let entry = self.coeffs.entry(partition.clone()).or_default();
        *entry += &value;
        if entry.is_zero() {
            self.coeffs.remove(partition);
        }
    }
}

/// Applies the mode `L_m` to a vector. Negative `m` lowers (level grows by
/// `-m`), positive `m` raises (level shrinks by `m`, giving zero past the
/// top), and `L_0` multiplies by `h + level`.
pub fn act(m: i64, v: &VermaVector) -> VermaVector {
    let result_level = (i64::from(v.level) - m).max(0) as u32;
    let mut out = v.module.zero_vector(result_level);
    for (p, coeff) in &v.coeffs {
        let image = act_on_basis(&v.module, m, p);
        debug_assert!(image.is_zero() || image.level == result_level);
        for (q, c) in &image.coeffs {
            out.add_to(q, c * coeff);
        }
    }
    out
}

/// `L_m` on a single basis partition, by commuting `L_m` past the leading
/// (largest-mode) lowering operator and recursing on the shorter tail.
fn act_on_basis(module: &VermaModule, m: i64, p: &Partition) -> VermaVector {
    if m == 0 {
        let eigenvalue = &module.h + &Rational::from_integer(i64::from(p.weight()));
        return module.basis_vector(p).scale(&eigenvalue);
    }
    if m < 0 {
        return lower((-m) as u32, &module.basis_vector(p));
    }
    let Some((k, rest)) = p.split_first() else {
        // L_m |h> = 0 for m > 0.
        return module.zero_vector(0);
    };
    let rest_vector = module.basis_vector(&rest);
    // L_m L_{-k} w = L_{-k} L_m w + (m + k) L_{m-k} w
    //               + δ_{m,k} (c/12) m (m^2 - 1) w.
    let tail = act_on_basis(module, m, &rest);
    let mut out = lower(k, &tail);
    let cross = act(m - i64::from(k), &rest_vector)
        .scale(&Rational::from_integer(m + i64::from(k)));
    out = out.add(&cross);
    if m == i64::from(k) {
        out = out.add(&rest_vector.scale(&module.central_term(m)));
    }
    out
}

/// Applies the lowering operator `L_{-k}` (`k > 0`), straightening the
/// result into the nonincreasing PBW order.
fn lower(k: u32, v: &VermaVector) -> VermaVector {
    assert!(k > 0, "lowering mode must be positive");
    let mut out = v.module.zero_vector(v.level + k);
    for (p, coeff) in &v.coeffs {
        let image = lower_basis(&v.module, k, p);
        for (q, c) in &image.coeffs {
            out.add_to(q, c * coeff);
        }
    }
    out
}

fn lower_basis(module: &VermaModule, k: u32, p: &Partition) -> VermaVector {
    match p.split_first() {
        // Already ordered: L_{-k} slots in front when k dominates.
        None => module.basis_vector(&Partition::new(vec![k])),
        Some((top, _)) if k >= top => module.basis_vector(&p.with_part(k)),
        Some((top, rest)) => {
            // L_{-k} L_{-top} w = L_{-top} L_{-k} w + (top - k) L_{-(k+top)} w.
            let shifted = lower(top, &lower_basis(module, k, &rest));
            let merged = lower_basis(module, k + top, &rest)
                .scale(&Rational::from_integer(i64::from(top) - i64::from(k)));
            shifted.add(&merged)
        }
    }
}

/// Matrix of the contravariant form on one level, rows and columns indexed
/// by the partitions of that level in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub level: u32,
    pub partitions: Vec<Partition>,
    pub matrix: RationalMatrix,
}

/// Contravariant (Shapovalov) form at a level: entry `(μ, ν)` is the
/// coefficient of `|h>` in `L_{μ_m} … L_{μ_1} L_{-ν_1} … L_{-ν_m'} |h>`,
/// the adjoint word of `μ` (largest mode applied first) acting on the basis
/// vector of `ν`. Every entry is computed independently, so the symmetry of
/// the result is a genuine consequence of the commutation rule rather than
/// a constraint imposed by construction.
pub fn gram_matrix(module: &VermaModule, level: u32) -> GramMatrix {
    let partitions = partitions_of(level);
    let n = partitions.len();
    let mut matrix = RationalMatrix::zero(n, n);
    let empty = Partition::empty();
    for (i, mu) in partitions.iter().enumerate() {
        for (j, nu) in partitions.iter().enumerate() {
            let mut v = module.basis_vector(nu);
            for &part in mu.parts() {
                v = act(i64::from(part), &v);
            }
            debug_assert_eq!(v.level(), 0);
            let entry = v.coefficient(&empty);
            if !entry.is_zero() {
                matrix.set(i, j, entry);
            }
        }
    }
    GramMatrix { level, partitions, matrix }
}

/// Determinant of the level's contravariant form.
pub fn kac_determinant(module: &VermaModule, level: u32) -> Rational {
    gram_matrix(module, level)
        .matrix
        .determinant()
        .expect("gram matrix is square")
}

/// Basis of the singular vectors at a level: the joint kernel of `L_1` and
/// `L_2`, which generate all raising modes. Each returned vector is
/// normalized so its canonically first partition has coefficient 1.
pub fn singular_vectors(module: &VermaModule, level: u32) -> Vec<VermaVector> {
    assert!(level >= 1, "level 0 has no singular vectors to find");
    let partitions = partitions_of(level);
    let n = partitions.len();
    let lower_one = partitions_of(level - 1);
    let lower_two = if level >= 2 { partitions_of(level - 2) } else { Vec::new() };
    let mut constraints = RationalMatrix::zero(lower_one.len() + lower_two.len(), n);
    for (j, p) in partitions.iter().enumerate() {
        let under_l1 = act(1, &module.basis_vector(p));
        for (r, target) in lower_one.iter().enumerate() {
            let c = under_l1.coefficient(target);
            if !c.is_zero() {
                constraints.set(r, j, c);
            }
        }
        let under_l2 = act(2, &module.basis_vector(p));
        for (r, target) in lower_two.iter().enumerate() {
            let c = under_l2.coefficient(target);
            if !c.is_zero() {
                constraints.set(lower_one.len() + r, j, c);
            }
        }
    }
    constraints
        .kernel_basis()
        .into_iter()
        .map(|solution| {
            let mut v = module.zero_vector(level);
            for (j, c) in solution.into_iter().enumerate() {
                v.add_to(&partitions[j], c);
            }
            v.normalized()
        })
        .collect()
}

/// Graded dimensions of the irreducible quotient of the module by the
/// radical of the contravariant form: the rank of the Gram matrix at each
/// level from 0 through `max_level`.
pub fn irreducible_graded_dims(module: &VermaModule, max_level: u32) -> Vec<usize> {
    (0..=max_level).map(|l| gram_matrix(module, l).matrix.rank()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn module(c: (i64, i64), h: (i64, i64)) -> VermaModule {
        VermaModule::new(rat(c.0, c.1), rat(h.0, h.1))
    }

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn zero_mode_is_diagonal_with_eigenvalue_h_plus_level() {
        let m = module((7, 1), (7, 3));
        let v = m.basis_vector(&part(&[2, 1]));
        let image = act(0, &v);
        assert_eq!(image, v.scale(&rat(16, 3))); // 7/3 + 3
    }

    #[test]
    fn raising_one_step_gives_two_h() {
        let m = module((1, 2), (5, 7));
        let image = act(1, &m.basis_vector(&part(&[1])));
        assert_eq!(image, m.highest_weight_vector().scale(&rat(10, 7)));
    }

    #[test]
    fn raising_two_steps_picks_up_the_central_term() {
        let m = module((1, 2), (1, 16));
        let image = act(2, &m.basis_vector(&part(&[2])));
        // 4h + c/2 = 1/4 + 1/4.
        assert_eq!(image, m.highest_weight_vector().scale(&rat(1, 2)));
    }

    #[test]
    fn raising_past_the_top_gives_zero() {
        let m = module((1, 1), (3, 1));
        assert!(act(1, &m.highest_weight_vector()).is_zero());
        assert!(act(2, &m.basis_vector(&part(&[1]))).is_zero());
        assert!(act(3, &m.basis_vector(&part(&[1, 1]))).is_zero());
    }

    #[test]
    fn lowering_straightens_into_partition_order() {
        let m = module((0, 1), (0, 1));
        // L_{-1} L_{-3} L_{-2} |h> = L_{-3}L_{-2}L_{-1} + L_{-3}L_{-3}
        //                            + 2 L_{-4}L_{-2}, by hand.
        let image = act(-1, &m.basis_vector(&part(&[3, 2])));
        assert_eq!(image.level(), 6);
        assert_eq!(image.coefficient(&part(&[3, 2, 1])), rat(1, 1));
        assert_eq!(image.coefficient(&part(&[3, 3])), rat(1, 1));
        assert_eq!(image.coefficient(&part(&[4, 2])), rat(2, 1));
        assert_eq!(image.coeffs().count(), 3);
    }

    #[test]
    fn virasoro_relation_holds_on_low_levels() {
        let m = module((1, 2), (1, 16));
        for level in 0..=4u32 {
            for p in partitions_of(level) {
                let v = m.basis_vector(&p);
                for mode_m in -3i64..=3 {
                    for mode_n in -3i64..=3 {
                        let lhs = act(mode_m, &act(mode_n, &v))
                            .add(&act(mode_n, &act(mode_m, &v)).scale(&rat(-1, 1)));
                        let mut rhs = act(mode_m + mode_n, &v)
                            .scale(&Rational::from_integer(mode_m - mode_n));
                        if mode_m + mode_n == 0 {
                            rhs = rhs.add(&v.scale(&m.central_term(mode_m)));
                        }
                        assert_eq!(lhs, rhs, "[L_{mode_m}, L_{mode_n}] on {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn gram_matrix_level_two_matches_the_closed_form() {
        // Basis ([2], [1,1]): [[4h + c/2, 6h], [6h, 4h(2h+1)]].
        for (c, h) in [((7, 1), (5, 1)), ((1, 2), (1, 16)), ((-13, 7), (3, 5))] {
            let m = module(c, h);
            let gram = gram_matrix(&m, 2);
            assert_eq!(gram.partitions, vec![part(&[2]), part(&[1, 1])]);
            let four_h = &m.h * &rat(4, 1);
            let six_h = &m.h * &rat(6, 1);
            assert_eq!(gram.matrix.get(0, 0), &four_h + &(&m.c * &rat(1, 2)));
            assert_eq!(gram.matrix.get(0, 1), six_h.clone());
            assert_eq!(gram.matrix.get(1, 0), six_h);
            let expected = &four_h * &(&(&m.h * &rat(2, 1)) + &rat(1, 1));
            assert_eq!(gram.matrix.get(1, 1), expected);
        }
    }

    #[test]
    fn kac_determinant_examples() {
        assert_eq!(kac_determinant(&module((1, 2), (1, 2)), 2), rat(0, 1));
        assert_eq!(kac_determinant(&module((1, 2), (1, 16)), 2), rat(0, 1));
        assert_eq!(kac_determinant(&module((7, 1), (5, 1)), 2), rat(4270, 1));
        let m = module((3, 4), (11, 9));
        assert_eq!(kac_determinant(&m, 1), &m.h * &rat(2, 1));
        assert_eq!(kac_determinant(&m, 0), rat(1, 1));
    }

    #[test]
    fn ising_singular_vector_at_level_two() {
        let m = module((1, 2), (1, 16));
        let found = singular_vectors(&m, 2);
        assert_eq!(found.len(), 1);
        let v = &found[0];
        assert_eq!(v.coefficient(&part(&[2])), rat(1, 1));
        assert_eq!(v.coefficient(&part(&[1, 1])), rat(-4, 3));
        // Annihilated by L_3 as well (cross-check of the L_1, L_2
        // generation assumption), and in the Gram kernel.
        assert!(act(3, v).is_zero());
        let gram = gram_matrix(&m, 2);
        let coords: Vec<Rational> = gram.partitions.iter().map(|p| v.coefficient(p)).collect();
        let product = gram.matrix.mul_vec(&coords).unwrap();
        assert!(product.iter().all(Rational::is_zero));
    }

    #[test]
    fn generic_module_has_no_singular_vectors_at_level_two() {
        assert!(singular_vectors(&module((7, 1), (5, 1)), 2).is_empty());
    }

    #[test]
    fn vacuum_module_has_level_one_singular_vector() {
        let m = module((17, 5), (0, 1));
        let found = singular_vectors(&m, 1);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].coefficient(&part(&[1])), rat(1, 1));
        assert!(act(3, &found[0]).is_zero());
    }

    #[test]
    fn irreducible_dimensions_examples() {
        assert_eq!(irreducible_graded_dims(&module((7, 1), (5, 1)), 5), [1, 1, 2, 3, 5, 7]);
        assert_eq!(irreducible_graded_dims(&module((1, 2), (0, 1)), 2), [1, 0, 1]);
    }

    #[test]
    fn vector_serde_round_trip() {
        let m = module((1, 2), (1, 16));
        let v = singular_vectors(&m, 2).remove(0);
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(
            json,
            r#"{"module":{"c":"1/2","h":"1/16"},"level":2,"coeffs":[[[2],"1"],[[1,1],"-4/3"]]}"#
        );
        let back: VermaVector = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<VermaVector>(
            r#"{"module":{"c":"1","h":"0"},"level":2,"coeffs":[[[1],"1"]]}"#
        )
        .is_err());
    }
}
