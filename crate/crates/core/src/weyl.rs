//! Signed-permutation model of the Weyl groups W(B_n) = W(C_n) and W(D_n).
//!
//! Only what the dimension formula needs is here: reflections, involutions
//! attached to rook placements, images of positive roots, and the statistics
//! `l(σ) = |Φ_σ|`, `s(σ) = |Supp σ|` and the short-root correction `d(σ)`.
//! Elements are never stored as matrices.

use crate::roots::{Family, Root, RootSystem};

/// An element of the hyperoctahedral group acting on ±{1..n}, stored by the
/// images of 1..n; σ(−i) = −σ(i) is implied.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: Vec<i64>,
}

/// A root together with the sign of its image: `negative` means the vector
/// is the negative of `root`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedRoot {
    pub root: Root,
    pub negative: bool,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            images: (1..=n as i64).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// σ(i) for i in ±{1..n}.
    pub fn image(&self, i: i64) -> i64 {
        if i > 0 {
            self.images[(i - 1) as usize]
        } else {
            -self.images[(-i - 1) as usize]
        }
    }

    /// The reflection r_β: swaps i↔j for ε_i−ε_j, sends i↦−j, j↦−i for
    /// ε_i+ε_j, and flips the sign of i for ε_i.
    pub fn reflection(n: usize, beta: Root) -> Self {
        let mut r = Self::identity(n);
        match beta {
            Root::Diff(i, j) => {
                r.images[i - 1] = j as i64;
                r.images[j - 1] = i as i64;
            }
            Root::Sum(i, j) => {
                r.images[i - 1] = -(j as i64);
                r.images[j - 1] = -(i as i64);
            }
            Root::Short(i) => {
                r.images[i - 1] = -(i as i64);
            }
        }
        r
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        SignedPermutation {
            images: (1..=self.n() as i64).map(|i| self.image(other.image(i))).collect(),
        }
    }

    /// Product of the commuting reflections attached to a rook placement.
    /// The result squares to the identity; in family D it flips an even
    /// number of signs.
    pub fn from_support(n: usize, support: &[Root]) -> Self {
        let sigma = support
            .iter()
            .fold(Self::identity(n), |acc, &b| acc.compose(&Self::reflection(n, b)));
        debug_assert!(sigma.is_involution());
        sigma
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self) == Self::identity(self.n())
    }

    /// Number of indices with σ(i) = −i-free sign change, i.e. |σ(i)| ≠ i or
    /// σ(i) < 0 counted as sign flips: #{i : σ maps ε_i to a negative axis}.
    pub fn sign_flips(&self) -> usize {
        self.images.iter().filter(|&&v| v < 0).count()
    }

    /// Image of a positive root as a signed root. The sign is decided by the
    /// lowest-indexed nonzero coordinate of the image vector.
    pub fn apply(&self, alpha: Root, family: Family) -> SignedRoot {
        let mut parts: Vec<(usize, i64)> = Vec::with_capacity(2);
        match alpha {
            Root::Diff(i, j) => {
                let a = self.image(i as i64);
                let b = -self.image(j as i64);
                parts.push((a.unsigned_abs() as usize, a.signum()));
                parts.push((b.unsigned_abs() as usize, b.signum()));
            }
            Root::Sum(i, j) => {
                let a = self.image(i as i64);
                let b = self.image(j as i64);
                parts.push((a.unsigned_abs() as usize, a.signum()));
                parts.push((b.unsigned_abs() as usize, b.signum()));
            }
            Root::Short(i) => {
                let a = self.image(i as i64);
                parts.push((a.unsigned_abs() as usize, a.signum()));
            }
        }
        parts.sort();
        let negative = parts[0].1 < 0;
        if negative {
            for p in &mut parts {
                p.1 = -p.1;
            }
        }
        let root = Root::from_coeffs(&parts, family, self.n())
            .expect("image of a root under a signed permutation is a root");
        SignedRoot { root, negative }
    }
}

/// Length, support size, short-root correction and the inversion set of an
/// involution attached to a rook placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionStats {
    /// l(σ) = |Φ_σ|, the Coxeter length.
    pub length: usize,
    /// s(σ) = |Supp σ| = |D|.
    pub support_size: usize,
    /// d(σ): in family B with ε_i ∈ D, the number of β ∈ D with col(β) > i
    /// and row(β) < 0; otherwise 0.
    pub d_stat: usize,
    /// Φ_σ in canonical order.
    pub inversion_set: Vec<Root>,
}

impl InvolutionStats {
    /// l(σ) − s(σ) − 2 d(σ), the orbit dimension of the placement.
    pub fn dim(&self) -> i64 {
        self.length as i64 - self.support_size as i64 - 2 * self.d_stat as i64
    }
}

/// Φ_σ = {α ∈ Φ⁺ | σ(α) < 0}, by exhaustive scan in canonical order.
pub fn inversion_set(system: &RootSystem, sigma: &SignedPermutation) -> Vec<Root> {
    system
        .positive_roots()
        .iter()
        .copied()
        .filter(|&a| sigma.apply(a, system.family()).negative)
        .collect()
}

/// Statistics of the involution with support `support` (a valid rook
/// placement sorted by ascending column).
pub fn involution_stats(system: &RootSystem, support: &[Root]) -> InvolutionStats {
    let sigma = SignedPermutation::from_support(system.rank(), support);
    if system.family() == Family::D {
        debug_assert!(sigma.sign_flips() % 2 == 0);
    }
    let inversion_set = inversion_set(system, &sigma);
    let d_stat = d_statistic(system.family(), support);
    InvolutionStats {
        length: inversion_set.len(),
        support_size: support.len(),
        d_stat,
        inversion_set,
    }
}

/// The d statistic of a placement: 0 unless the family is B and the
/// placement contains a short root ε_i, in which case it counts the roots
/// of the placement below the diagonal (row < 0) strictly right of column i.
pub fn d_statistic(family: Family, support: &[Root]) -> usize {
    if family != Family::B {
        return 0;
    }
    match support.iter().find_map(|r| match r {
        Root::Short(i) => Some(*i),
        _ => None,
    }) {
        None => 0,
        Some(i) => support
            .iter()
            .filter(|b| b.col() > i && b.row() < 0)
            .count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::Family;

    fn b(n: usize) -> RootSystem {
        RootSystem::new(Family::B, n).unwrap()
    }

    #[test]
    fn reflections() {
        let r = SignedPermutation::reflection(2, Root::Diff(1, 2));
        assert_eq!(r.image(1), 2);
        assert_eq!(r.image(2), 1);
        assert_eq!(r.sign_flips(), 0);

        let r = SignedPermutation::reflection(2, Root::Short(1));
        assert_eq!(r.image(1), -1);
        assert_eq!(r.image(2), 2);

        let p = SignedPermutation::reflection(2, Root::Sum(1, 2));
        let m = SignedPermutation::reflection(2, Root::Diff(1, 2));
        assert_eq!(p.compose(&m), m.compose(&p), "orthogonal roots commute");
        for beta in [Root::Diff(1, 2), Root::Sum(1, 2), Root::Short(1)] {
            let r = SignedPermutation::reflection(2, beta);
            assert!(r.is_involution());
            // a reflection negates its own root
            let img = r.apply(beta, Family::B);
            assert_eq!(img.root, beta);
            assert!(img.negative);
        }
    }

    #[test]
    fn involution_from_placement_examples() {
        let sigma = SignedPermutation::from_support(2, &[Root::Short(1)]);
        assert_eq!(sigma.image(1), -1);
        assert_eq!(sigma.image(2), 2);

        // Supp(σ) = {ε₁, ε₂+ε₆, ε₃+ε₅} in B₆
        let sigma = SignedPermutation::from_support(
            6,
            &[Root::Short(1), Root::Sum(2, 6), Root::Sum(3, 5)],
        );
        let expect = [-1, -6, -5, 4, -3, -2];
        for (i, &v) in expect.iter().enumerate() {
            assert_eq!(sigma.image(i as i64 + 1), v);
        }
        assert!(sigma.is_involution());
    }

    #[test]
    fn apply_sign_rule() {
        let r1 = SignedPermutation::reflection(2, Root::Short(1));
        let img = r1.apply(Root::Sum(1, 2), Family::B);
        assert_eq!(img.root, Root::Diff(1, 2));
        assert!(img.negative, "−ε₁+ε₂ is negative by the lowest-index rule");

        let id = SignedPermutation::identity(4);
        for &a in b(4).positive_roots() {
            let img = id.apply(a, Family::B);
            assert_eq!(img.root, a);
            assert!(!img.negative);
        }
    }

    #[test]
    fn stats_b6_short_plus_two_sums() {
        let sys = b(6);
        let d = [Root::Short(1), Root::Sum(2, 6), Root::Sum(3, 5)];
        let st = involution_stats(&sys, &d);
        assert_eq!(st.length, 25);
        assert_eq!(st.support_size, 3);
        assert_eq!(st.d_stat, 2);
        assert_eq!(st.dim(), 18);

        // the inversion set written out: C₁ plus the listed tail
        let mut expected: Vec<Root> = sys.column(1);
        expected.extend([
            Root::Diff(2, 4),
            Root::Short(2),
            Root::Sum(2, 3),
            Root::Sum(2, 5),
            Root::Sum(2, 6),
            Root::Diff(3, 4),
            Root::Short(3),
            Root::Sum(3, 5),
            Root::Sum(3, 6),
            Root::Sum(4, 5),
            Root::Sum(4, 6),
            Root::Short(5),
            Root::Sum(5, 6),
            Root::Short(6),
        ]);
        expected.sort_by_key(|r| sys.root_index(*r).unwrap());
        assert_eq!(st.inversion_set, expected);
    }

    #[test]
    fn stats_b6_short_sum_diff() {
        let st = involution_stats(
            &b(6),
            &[Root::Short(1), Root::Sum(2, 5), Root::Diff(3, 6)],
        );
        assert_eq!((st.length, st.support_size, st.d_stat), (25, 3, 1));
        assert_eq!(st.dim(), 20);
    }

    #[test]
    fn stats_small() {
        let st = involution_stats(&b(2), &[Root::Diff(1, 2)]);
        assert_eq!((st.length, st.support_size, st.d_stat), (1, 1, 0));
        assert_eq!(st.inversion_set, vec![Root::Diff(1, 2)]);

        let st = involution_stats(&b(2), &[Root::Short(1)]);
        assert_eq!((st.length, st.support_size, st.d_stat), (3, 1, 0));
        assert_eq!(st.dim(), 2);
    }
}
