//! Exact class-function arithmetic over Q(ζ_p): the additive field character
//! θ, orbit characters, the one-dimensional character φ_f on exp(p),
//! induction along a subgroup and inner products.
//!
//! Values live in the power basis 1, ζ, …, ζ^{p−2} with big-rational
//! coefficients, reduced eagerly by 1 + ζ + … + ζ^{p−1} = 0, so character
//! identities are bit-level equalities. Groups at desk scale are dense
//! element lists keyed by the matrix serialization.

use crate::algebra::{self, GroupElement};
use crate::coadjoint::{CoadjointSpace, LinearForm, Orbit};
use crate::field::PrimeField;
use crate::roots::{Root, RootSystem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Default ceiling for dense group enumeration.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("group of order {order} exceeds the cap of {cap} elements")]
    CapExceeded { order: u128, cap: usize },
    #[error("the given group is not a subgroup of the target")]
    NotSubgroup,
    #[error("φ_f is not multiplicative on exp(p); the polarization is broken")]
    NotMultiplicative,
    #[error("class functions live on different groups")]
    DomainMismatch,
}

/// An element of Q(ζ_p) in the power basis 1, ζ, …, ζ^{p−2}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    p: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(p: u64) -> Self {
        Cyclotomic {
            p,
            coeffs: vec![BigRational::zero(); (p - 1) as usize],
        }
    }

    pub fn one(p: u64) -> Self {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u64, r: BigRational) -> Self {
        let mut c = Self::zero(p);
        c.coeffs[0] = r;
        c
    }

    pub fn from_integer(p: u64, n: i64) -> Self {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    /// ζ_p^a, reduced into the power basis.
    pub fn root_of_unity(p: u64, a: u64) -> Self {
        let a = (a % p) as usize;
        let mut c = Self::zero(p);
        if a == (p - 1) as usize {
            // ζ^{p−1} = −1 − ζ − … − ζ^{p−2}
            for k in &mut c.coeffs {
                *k = -BigRational::one();
            }
        } else {
            c.coeffs[a] = BigRational::one();
        }
        c
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Reduce a length-p exponent vector by the vanishing sum relation.
    fn reduce(p: u64, exps: Vec<BigRational>) -> Self {
        debug_assert_eq!(exps.len(), p as usize);
        let last = exps[(p - 1) as usize].clone();
        let coeffs = exps[..(p - 1) as usize].iter().map(|c| c - &last).collect();
        Cyclotomic { p, coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p);
        Cyclotomic {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p);
        Cyclotomic {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.p, rhs.p);
        let p = self.p as usize;
        let mut exps = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    exps[(i + j) % p] += a * b;
                }
            }
        }
        Self::reduce(self.p, exps)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            p: self.p,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    pub fn div_nat(&self, n: u64) -> Self {
        self.scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
    }

    /// Complex conjugation ζ^k ↦ ζ^{p−k}.
    pub fn conj(&self) -> Self {
        let p = self.p as usize;
        let mut exps = vec![BigRational::zero(); p];
        for (k, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                exps[(p - k) % p] += a;
            }
        }
        Self::reduce(self.p, exps)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// θ(a) = ζ_p^a, the fixed nontrivial additive character of F_p.
pub fn theta(p: u64, a: u64) -> Cyclotomic {
    Cyclotomic::root_of_unity(p, a)
}

/// A finite unipotent group materialized as an element list: the ordered
/// product of the root subgroups X_α over a root subset, enumerated
/// lexicographically in the subgroup coordinates.
#[derive(Debug)]
pub struct FiniteGroup {
    field: PrimeField,
    system: RootSystem,
    roots: Vec<Root>,
    elements: Vec<GroupElement>,
    index: HashMap<Vec<u64>, usize>,
}

impl FiniteGroup {
    /// Enumerate ∏_{α ∈ roots} X_α. The first root varies slowest, so the
    /// identity is always element 0.
    pub fn from_root_subset(
        field: PrimeField,
        system: &RootSystem,
        roots: &[Root],
        cap: usize,
    ) -> Result<Arc<Self>, CharacterError> {
        let order = (field.p() as u128).pow(roots.len() as u32);
        if order > cap as u128 {
            return Err(CharacterError::CapExceeded { order, cap });
        }
        let grid = algebra::MirrorGrid::of_system(system);
        let mut elements = vec![GroupElement::identity(field, grid)];
        for &alpha in roots {
            let subgroup: Vec<GroupElement> = (0..field.p())
                .map(|t| algebra::x_alpha(field, system, alpha, t))
                .collect();
            let mut next = Vec::with_capacity(elements.len() * subgroup.len());
            for e in &elements {
                for x in &subgroup {
                    next.push(e.mul(x));
                }
            }
            elements = next;
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.key().to_vec(), i))
            .collect();
        Ok(Arc::new(FiniteGroup {
            field,
            system: system.clone(),
            roots: roots.to_vec(),
            elements,
            index,
        }))
    }

    /// The full group U of the system.
    pub fn full(
        field: PrimeField,
        system: &RootSystem,
        cap: usize,
    ) -> Result<Arc<Self>, CharacterError> {
        Self::from_root_subset(field, system, system.positive_roots(), cap)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn identity(&self) -> &GroupElement {
        &self.elements[0]
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g.key())
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g.key()).copied()
    }

    pub fn same_domain(&self, other: &FiniteGroup) -> bool {
        self.field == other.field && self.system == other.system && self.roots == other.roots
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.order() <= other.order()
            && other.order() % self.order() == 0
            && self.elements.iter().all(|e| other.contains(e))
    }
}

/// A class function on a materialized group, stored as a dense value table.
#[derive(Debug, Clone)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn from_fn(group: Arc<FiniteGroup>, f: impl Fn(&GroupElement) -> Cyclotomic) -> Self {
        let values = group.elements().iter().map(f).collect();
        ClassFunction { group, values }
    }

    pub fn trivial(group: Arc<FiniteGroup>) -> Self {
        let p = group.field().p();
        Self::from_fn(group, |_| Cyclotomic::one(p))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value_at_index(&self, i: usize) -> &Cyclotomic {
        &self.values[i]
    }

    pub fn value(&self, g: &GroupElement) -> Option<&Cyclotomic> {
        self.group.index_of(g).map(|i| &self.values[i])
    }

    /// χ(1), the degree of the character.
    pub fn degree(&self) -> &Cyclotomic {
        &self.values[0]
    }

    /// Spot check that the function is constant on conjugacy classes: for
    /// `samples` seeded pairs (g, h), value(hgh⁻¹) = value(g).
    pub fn check_class_invariance(&self, samples: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.group.order();
        (0..samples).all(|_| {
            let g = &self.group.elements()[rng.gen_range(0..n)];
            let h = &self.group.elements()[rng.gen_range(0..n)];
            let conj = h.mul(g).mul(&h.inverse());
            self.value(&conj) == self.value(g)
        })
    }
}

/// Value of the orbit character at one element:
/// χ(g) = q^{−½ dim Ω} Σ_{f ∈ Ω} θ(f(ln g)).
pub fn orbit_character_value(
    space: &CoadjointSpace,
    orbit: &Orbit,
    g: &GroupElement,
) -> Cyclotomic {
    let p = space.field().p();
    let x = algebra::ln(g);
    let coords: Vec<u64> = space.support().iter().map(|&a| x.root_coeff(a)).collect();
    let mut counts = vec![0u64; p as usize];
    for f in orbit.elements() {
        let mut dot = 0u64;
        for (c, v) in f.coeffs().iter().zip(&coords) {
            dot = space.field().add(dot, space.field().mul(*c, *v));
        }
        counts[dot as usize] += 1;
    }
    let mut sum = Cyclotomic::zero(p);
    for (v, &cnt) in counts.iter().enumerate() {
        if cnt != 0 {
            let term = Cyclotomic::root_of_unity(p, v as u64)
                .scale(&BigRational::from_integer(BigInt::from(cnt)));
            sum = sum.add(&term);
        }
    }
    let degree = space.field().p().pow(orbit.dimension() / 2);
    sum.div_nat(degree)
}

/// The orbit character as a dense class function on the group.
pub fn chi_from_orbit(
    group: Arc<FiniteGroup>,
    space: &CoadjointSpace,
    orbit: &Orbit,
) -> ClassFunction {
    ClassFunction::from_fn(group, |g| orbit_character_value(space, orbit, g))
}

/// φ_f(h) = θ(f(ln h)) on exp(p). Multiplicativity, which encodes the
/// isotropy of the polarization, is asserted on seeded random pairs.
pub fn phi_f(
    subgroup: Arc<FiniteGroup>,
    space: &CoadjointSpace,
    f: &LinearForm,
) -> Result<ClassFunction, CharacterError> {
    let p = space.field().p();
    let phi = ClassFunction::from_fn(subgroup.clone(), |h| {
        theta(p, space.evaluate(f, &algebra::ln(h)))
    });
    let mut rng = ChaCha8Rng::seed_from_u64(0x600D_5EED);
    let n = subgroup.order();
    let samples = 1000.min(n * n);
    for _ in 0..samples {
        let g = &subgroup.elements()[rng.gen_range(0..n)];
        let h = &subgroup.elements()[rng.gen_range(0..n)];
        let lhs = phi.value(g).unwrap().mul(phi.value(h).unwrap());
        let rhs = phi
            .value(&g.mul(h))
            .ok_or(CharacterError::NotMultiplicative)?;
        if &lhs != rhs {
            return Err(CharacterError::NotMultiplicative);
        }
    }
    Ok(phi)
}

/// Left transversal of G/H with canonical-minimum representatives: walk the
/// group in enumeration order and start a new coset at each unseen element.
pub fn left_transversal(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupElement> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::with_capacity(g.order() / h.order());
    for (i, r) in g.elements().iter().enumerate() {
        if seen[i] {
            continue;
        }
        reps.push(r.clone());
        for hh in h.elements() {
            let rh = r.mul(hh);
            let j = g.index_of(&rh).expect("coset stays inside the group");
            seen[j] = true;
        }
    }
    reps
}

/// Induction along H ≤ G with an explicit transversal:
/// (Ind φ)(g) = Σ_{r ∈ R, r⁻¹gr ∈ H} φ(r⁻¹gr).
pub fn induce_with_transversal(
    phi: &ClassFunction,
    g: &Arc<FiniteGroup>,
    transversal: &[GroupElement],
) -> ClassFunction {
    let p = g.field().p();
    let prepared: Vec<(GroupElement, GroupElement)> = transversal
        .iter()
        .map(|r| (r.clone(), r.inverse()))
        .collect();
    ClassFunction::from_fn(g.clone(), |x| {
        let mut acc = Cyclotomic::zero(p);
        for (r, r_inv) in &prepared {
            let conj = r_inv.mul(x).mul(r);
            if let Some(v) = phi.value(&conj) {
                acc = acc.add(v);
            }
        }
        acc
    })
}

/// Induction along H ≤ G with the canonical transversal.
pub fn induce(phi: &ClassFunction, g: &Arc<FiniteGroup>) -> Result<ClassFunction, CharacterError> {
    if !phi.group().is_subgroup_of(g) {
        return Err(CharacterError::NotSubgroup);
    }
    let transversal = left_transversal(g, phi.group());
    Ok(induce_with_transversal(phi, g, &transversal))
}

/// ⟨χ₁, χ₂⟩ = |G|⁻¹ Σ_g χ₁(g) conj(χ₂(g)), exact in Q(ζ_p).
pub fn inner_product(a: &ClassFunction, b: &ClassFunction) -> Result<Cyclotomic, CharacterError> {
    if !a.group().same_domain(b.group()) {
        return Err(CharacterError::DomainMismatch);
    }
    let p = a.group().field().p();
    let mut acc = Cyclotomic::zero(p);
    for (x, y) in a.values().iter().zip(b.values()) {
        acc = acc.add(&x.mul(&y.conj()));
    }
    Ok(acc.div_nat(a.group().order() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coadjoint::DEFAULT_ORBIT_CAP;
    use crate::placement::RookPlacement;
    use crate::roots::Family;

    fn setup_b2() -> (PrimeField, RootSystem, CoadjointSpace, Arc<FiniteGroup>) {
        let field = PrimeField::new(5).unwrap();
        let sys = RootSystem::new(Family::B, 2).unwrap();
        let space = CoadjointSpace::full(field, &sys);
        let group = FiniteGroup::full(field, &sys, DEFAULT_GROUP_CAP).unwrap();
        (field, sys, space, group)
    }

    #[test]
    fn theta_is_an_additive_character() {
        assert!(theta(5, 0).is_one());
        assert!(!theta(5, 1).is_one());
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(theta(5, a).mul(&theta(5, b)), theta(5, (a + b) % 5));
            }
        }
    }

    #[test]
    fn cyclotomic_arithmetic() {
        let p = 7;
        // ζ^p = 1
        let mut acc = Cyclotomic::one(p);
        for _ in 0..p {
            acc = acc.mul(&Cyclotomic::root_of_unity(p, 1));
        }
        assert!(acc.is_one());
        // vanishing sum of all p-th roots of unity
        let mut sum = Cyclotomic::zero(p);
        for k in 0..p {
            sum = sum.add(&Cyclotomic::root_of_unity(p, k));
        }
        assert!(sum.is_zero());
        // conjugation is multiplicative and an involution
        for a in 0..p {
            for b in 0..p {
                let x = Cyclotomic::root_of_unity(p, a).add(&Cyclotomic::from_integer(p, 2));
                let y = Cyclotomic::root_of_unity(p, b).sub(&Cyclotomic::one(p));
                assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
                assert_eq!(x.conj().conj(), x);
            }
        }
        // |θ(a)|² = 1
        for a in 0..p {
            let t = theta(p, a);
            assert!(t.mul(&t.conj()).is_one());
        }
    }

    #[test]
    fn group_enumeration() {
        let (_, sys, _, group) = setup_b2();
        assert_eq!(group.order(), 625);
        assert!(group.elements()[0].is_identity());
        // spot check closure
        let a = &group.elements()[17];
        let b = &group.elements()[433];
        assert!(group.contains(&a.mul(b)));
        assert!(group.contains(&a.inverse()));
        // subgroup from the first column
        let u1 =
            FiniteGroup::from_root_subset(group.field(), &sys, &sys.column(1), DEFAULT_GROUP_CAP)
                .unwrap();
        assert_eq!(u1.order(), 125);
        assert!(u1.is_subgroup_of(&group));
        assert!(!group.is_subgroup_of(&u1));
    }

    #[test]
    fn single_point_orbit_gives_linear_character() {
        let (_, _sys, space, group) = setup_b2();
        let f = space.canonical_form(&[Root::Diff(1, 2)], &[1]).unwrap();
        let orbit = space.orbit_of_form(&f, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(orbit.size(), 1);
        let chi = chi_from_orbit(group.clone(), &space, &orbit);
        assert!(chi.degree().is_one());
        for g in group.elements().iter().step_by(31) {
            let coeff = algebra::ln(g).root_coeff(Root::Diff(1, 2));
            assert_eq!(chi.value(g).unwrap(), &theta(5, coeff));
        }
    }

    #[test]
    fn orbit_character_degree_and_norm() {
        let (_, _sys, space, group) = setup_b2();
        let f = space.canonical_form(&[Root::Short(1)], &[1]).unwrap();
        let orbit = space.orbit_of_form(&f, DEFAULT_ORBIT_CAP).unwrap();
        let chi = chi_from_orbit(group.clone(), &space, &orbit);
        // χ(1) = q^{½ dim Ω} = √|Ω|
        assert_eq!(chi.degree(), &Cyclotomic::from_integer(5, 5));
        // ⟨χ, χ⟩ = 1 on the full 625-element group
        assert!(inner_product(&chi, &chi).unwrap().is_one());
        assert!(chi.check_class_invariance(200, 9));
    }

    #[test]
    fn distinct_orbits_give_orthogonal_characters() {
        let (_, _sys, space, group) = setup_b2();
        let f1 = space.canonical_form(&[Root::Short(1)], &[1]).unwrap();
        let f2 = space.canonical_form(&[Root::Sum(1, 2)], &[1]).unwrap();
        let o1 = space.orbit_of_form(&f1, DEFAULT_ORBIT_CAP).unwrap();
        let o2 = space.orbit_of_form(&f2, DEFAULT_ORBIT_CAP).unwrap();
        let chi1 = chi_from_orbit(group.clone(), &space, &o1);
        let chi2 = chi_from_orbit(group.clone(), &space, &o2);
        assert!(inner_product(&chi1, &chi2).unwrap().is_zero());
    }

    #[test]
    fn phi_f_is_multiplicative_on_the_polarization() {
        let (field, sys, space, group) = setup_b2();
        let placement = RookPlacement::new(&sys, &[Root::Short(1)]).unwrap();
        let pol = placement.polarization_roots().unwrap();
        let p_group = FiniteGroup::from_root_subset(field, &sys, &pol, DEFAULT_GROUP_CAP).unwrap();
        let f = space.canonical_form(placement.roots(), &[1]).unwrap();
        let phi = phi_f(p_group, &space, &f).unwrap();
        assert!(phi.degree().is_one());

        // the zero form gives the trivial character on the whole group
        let phi0 = phi_f(group.clone(), &space, &space.zero_form()).unwrap();
        assert!(phi0.values().iter().all(|v| v.is_one()));
    }

    #[test]
    fn induction_identity_when_h_equals_g() {
        let (_, _sys, space, group) = setup_b2();
        let phi = phi_f(group.clone(), &space, &space.zero_form()).unwrap();
        let ind = induce(&phi, &group).unwrap();
        for (a, b) in ind.values().iter().zip(phi.values()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn induced_degree_formula() {
        let (field, sys, space, group) = setup_b2();
        let placement = RookPlacement::new(&sys, &[Root::Short(1)]).unwrap();
        let pol = placement.polarization_roots().unwrap();
        let h = FiniteGroup::from_root_subset(field, &sys, &pol, DEFAULT_GROUP_CAP).unwrap();
        let f = space.canonical_form(placement.roots(), &[1]).unwrap();
        let phi = phi_f(h.clone(), &space, &f).unwrap();
        let ind = induce(&phi, &group).unwrap();
        let index = group.order() / h.order();
        assert_eq!(ind.degree(), &Cyclotomic::from_integer(5, index as i64));
    }

    #[test]
    fn orbit_method_identity_single_case() {
        // Ind_{exp p}^U φ_f equals the orbit character pointwise
        let (field, sys, space, group) = setup_b2();
        let placement = RookPlacement::new(&sys, &[Root::Short(1)]).unwrap();
        let pol = placement.polarization_roots().unwrap();
        let h = FiniteGroup::from_root_subset(field, &sys, &pol, DEFAULT_GROUP_CAP).unwrap();
        let f = space.canonical_form(placement.roots(), &[2]).unwrap();
        let orbit = space.orbit_of_form(&f, DEFAULT_ORBIT_CAP).unwrap();
        let chi = chi_from_orbit(group.clone(), &space, &orbit);
        let phi = phi_f(h, &space, &f).unwrap();
        let ind = induce(&phi, &group).unwrap();
        for (a, b) in ind.values().iter().zip(chi.values()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn induction_is_transversal_independent() {
        let (field, sys, space, group) = setup_b2();
        let placement = RookPlacement::new(&sys, &[Root::Sum(1, 2)]).unwrap();
        let pol = placement.polarization_roots().unwrap();
        let h = FiniteGroup::from_root_subset(field, &sys, &pol, DEFAULT_GROUP_CAP).unwrap();
        let f = space.canonical_form(placement.roots(), &[3]).unwrap();
        let phi = phi_f(h.clone(), &space, &f).unwrap();
        let canonical = left_transversal(&group, &h);
        let baseline = induce_with_transversal(&phi, &group, &canonical);
        // shift every representative by a pseudorandom element of H
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let shifted: Vec<GroupElement> = canonical
            .iter()
            .map(|r| r.mul(&h.elements()[rng.gen_range(0..h.order())]))
            .collect();
        let other = induce_with_transversal(&phi, &group, &shifted);
        for (a, b) in baseline.values().iter().zip(other.values()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn inner_product_domain_mismatch() {
        let (field, sys, _space, group) = setup_b2();
        let u1 =
            FiniteGroup::from_root_subset(field, &sys, &sys.column(1), DEFAULT_GROUP_CAP).unwrap();
        let a = ClassFunction::trivial(group);
        let b = ClassFunction::trivial(u1);
        assert_eq!(inner_product(&a, &b), Err(CharacterError::DomainMismatch));
        assert!(inner_product(&a, &a).unwrap().is_one());
    }

    #[test]
    fn group_cap() {
        let field = PrimeField::new(5).unwrap();
        let sys = RootSystem::new(Family::B, 2).unwrap();
        assert!(matches!(
            FiniteGroup::full(field, &sys, 100),
            Err(CharacterError::CapExceeded { order: 625, cap: 100 })
        ));
    }
}
