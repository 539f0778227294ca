//! The semidirect decomposition U = U₁ ⋊ V, the character ψ of the abelian
//! first-column subgroup, its centralizer V′ = V₁ ⋊ Ũ, the rank-reduction
//! relabelling π and the verification of the little-group decomposition
//!
//!   χ = Ind_{U₁⋊V′}^{U} ((ψ∘π_{U₁}) · (χ̃∘π_{Ũ}))
//!
//! where χ is the orbit character of f_{D,ξ} and χ̃ the orbit character of
//! the reduced placement π(D ∖ C₁) with coefficients ξ̃.
//!
//! The reduced character is evaluated intrinsically: Ũ = exp(ũ) sits inside
//! the big matrix group, its orbit lives in the coefficient space of Φ₂⁺,
//! and the relabelling π is a literal submatrix compression, so no transport
//! to the small model is needed for the verification itself.

use crate::algebra::{self, GroupElement};
use crate::characters::{theta, CharacterError, ClassFunction, Cyclotomic, FiniteGroup};
use crate::coadjoint::{CoadjointError, CoadjointSpace, LinearForm};
use crate::field::PrimeField;
use crate::placement::RookPlacement;
use crate::roots::{Family, Root, RootSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MackeyError {
    #[error(transparent)]
    Coadjoint(#[from] CoadjointError),
    #[error(transparent)]
    Character(#[from] CharacterError),
}

/// The split U = U₁ ⋊ V along the first column.
#[derive(Debug, Clone)]
pub struct SemidirectSplit {
    field: PrimeField,
    system: RootSystem,
    u1_roots: Vec<Root>,
    v_roots: Vec<Root>,
}

impl SemidirectSplit {
    pub fn new(field: PrimeField, system: &RootSystem) -> Self {
        let u1_roots = system.column(1);
        let v_roots = system
            .positive_roots()
            .iter()
            .copied()
            .filter(|r| r.col() != 1)
            .collect();
        SemidirectSplit {
            field,
            system: system.clone(),
            u1_roots,
            v_roots,
        }
    }

    pub fn u1_roots(&self) -> &[Root] {
        &self.u1_roots
    }

    pub fn v_roots(&self) -> &[Root] {
        &self.v_roots
    }

    /// Unique factorization g = a·b with a ∈ U₁, b ∈ V. Elements of V have
    /// an empty first matrix column, so the U₁-coordinates are read off the
    /// first column of g directly; then b = a⁻¹g.
    pub fn factor(&self, g: &GroupElement) -> (GroupElement, GroupElement) {
        let grid = g.grid();
        let mut z = algebra::FqMatrix::zero(self.field, grid);
        for &gamma in &self.u1_roots {
            let c = g.matrix().get(gamma.row(), 1);
            if c != 0 {
                z.set(gamma.row(), 1, c);
                z.set(-1, -gamma.row(), self.field.neg(c));
            }
        }
        let a = algebra::exp(&z).expect("exp needs p >= m");
        let b = a.inverse().mul(g);
        debug_assert!({
            let ln_b = algebra::ln(&b);
            self.u1_roots.iter().all(|&r| ln_b.root_coeff(r) == 0)
        });
        (a, b)
    }

    pub fn project_u1(&self, g: &GroupElement) -> GroupElement {
        self.factor(g).0
    }

    /// π_V is a group homomorphism; π_{U₁} in general is not.
    pub fn project_v(&self, g: &GroupElement) -> GroupElement {
        self.factor(g).1
    }
}

/// A positive linear grading of the root lattice: additive under root sums
/// and strictly positive on Φ⁺. Peeling coordinates in ascending grade makes
/// the leading coordinate of the abelian block readable off ln.
fn grade(root: Root, n: usize) -> i64 {
    let lambda = |k: usize| 2 * (n as i64 - k as i64) + 1;
    let (i, j) = root.indices();
    let mut g = lambda(i) * root.coeff(i);
    if let Some(j) = j {
        g += lambda(j) * root.coeff(j);
    }
    g
}

/// Factor g = a·b where a lies in the abelian group generated by `a_roots`
/// and b in the subgroup generated by the bracket-closed set `b_roots`.
/// Coordinates of a are peeled in ascending grade; the remainder must end up
/// supported on `b_roots`.
pub fn factor_abelian_normal(
    field: PrimeField,
    system: &RootSystem,
    g: &GroupElement,
    a_roots: &[Root],
    b_roots: &[Root],
) -> (GroupElement, GroupElement) {
    let n = system.rank();
    let mut order: Vec<Root> = a_roots.to_vec();
    order.sort_by_key(|&r| (grade(r, n), system.root_index(r)));
    let mut a = GroupElement::identity(field, g.grid());
    let mut rest = g.clone();
    for &gamma in &order {
        let t = algebra::ln(&rest).root_coeff(gamma);
        if t != 0 {
            let x = algebra::x_alpha(field, system, gamma, t);
            a = a.mul(&x);
            rest = x.inverse().mul(&rest);
        }
    }
    let ln_rest = algebra::ln(&rest);
    debug_assert!(
        system
            .positive_roots()
            .iter()
            .all(|&r| b_roots.contains(&r) || ln_rest.root_coeff(r) == 0),
        "factor remainder leaks outside the complement subgroup"
    );
    (a, rest)
}

/// Combinatorial data of one little-group step: Φ₁⁺, Φ₂⁺, the abelian layer
/// V₁, the reduced system Φ̃ and the index relabelling π.
#[derive(Debug, Clone)]
pub struct LittleGroupData {
    beta1: Option<Root>,
    phi1: Vec<Root>,
    phi2: Vec<Root>,
    v1: Vec<Root>,
    reduced_family: Family,
    reduced_rank: usize,
    index_map: BTreeMap<usize, usize>,
}

impl LittleGroupData {
    pub fn beta1(&self) -> Option<Root> {
        self.beta1
    }

    /// Φ₁⁺: the root set of V′ = V^ψ.
    pub fn phi1(&self) -> &[Root] {
        &self.phi1
    }

    /// Φ₂⁺: the root set of Ũ.
    pub fn phi2(&self) -> &[Root] {
        &self.phi2
    }

    /// Φ₁⁺ ∖ Φ₂⁺: the root set of the abelian layer V₁.
    pub fn v1(&self) -> &[Root] {
        &self.v1
    }

    pub fn reduced_family(&self) -> Family {
        self.reduced_family
    }

    pub fn reduced_rank(&self) -> usize {
        self.reduced_rank
    }

    /// Whether the reduction can be iterated further; below rank 2 the case
    /// table stops being meaningful and characters are computed directly
    /// from their tiny orbits.
    pub fn reduced_rank_ok(&self) -> bool {
        self.reduced_rank >= 2
    }

    /// The reduced root system Φ̃, degenerate ranks included.
    pub fn reduced_system(&self) -> RootSystem {
        RootSystem::reduced(self.reduced_family, self.reduced_rank)
    }

    /// The relabelling π: Φ₂⁺ → Φ̃⁺ induced by renumbering the surviving
    /// coordinate indices.
    pub fn pi(&self, root: Root) -> Root {
        let map = |k: usize| {
            *self
                .index_map
                .get(&k)
                .expect("root index survives the reduction")
        };
        match root {
            Root::Diff(i, j) => Root::Diff(map(i), map(j)),
            Root::Sum(i, j) => Root::Sum(map(i), map(j)),
            Root::Short(i) => Root::Short(map(i)),
        }
    }

    /// D̃ = π(D ∖ C₁), sorted by ascending column in Φ̃.
    pub fn reduced_placement(&self, placement: &RookPlacement) -> Vec<Root> {
        let mut out: Vec<Root> = placement
            .roots()
            .iter()
            .copied()
            .filter(|r| r.col() != 1)
            .map(|r| self.pi(r))
            .collect();
        out.sort_by_key(|r| r.col());
        out
    }

    /// D ∩ Φ₂⁺ = D ∖ C₁: the support of the involution σ₂.
    pub fn support_in_phi2(&self, placement: &RookPlacement) -> Vec<Root> {
        placement
            .roots()
            .iter()
            .copied()
            .filter(|r| r.col() != 1)
            .collect()
    }
}

/// The five-case table giving Φ₁⁺, Φ₂⁺, V₁ and Φ̃ from the position of β₁.
/// The empty placement follows the col(β₁) > 1 branch with ψ ≡ 1.
pub fn little_group_formula(system: &RootSystem, placement: &RookPlacement) -> LittleGroupData {
    let beta1 = placement.roots().first().copied();
    let n = system.rank();
    let positive = system.positive_roots();
    let col1: HashSet<Root> = system.column(1).into_iter().collect();

    let (phi1, phi2, reduced_family, reduced_rank, removed_index): (
        Vec<Root>,
        Vec<Root>,
        Family,
        usize,
        Option<usize>,
    ) = match beta1 {
        Some(b1) if b1.col() == 1 => {
            let s_minus: HashSet<Root> = system
                .singular_minus(b1)
                .expect("β₁ is positive")
                .into_iter()
                .collect();
            let phi1: Vec<Root> = positive
                .iter()
                .copied()
                .filter(|r| !col1.contains(r) && !s_minus.contains(r))
                .collect();
            match b1 {
                Root::Short(_) => {
                    // Φ₂⁺ = Φ₁⁺ = Φ⁺ ∖ (C₁ ∪ R₀); Φ̃ = D_{n−1}
                    (phi1.clone(), phi1, Family::D, n - 1, None)
                }
                Root::Diff(_, i) | Root::Sum(_, i) => {
                    let mirror = match b1 {
                        Root::Diff(a, b) => Root::Sum(a, b),
                        Root::Sum(a, b) => Root::Diff(a, b),
                        Root::Short(_) => unreachable!(),
                    };
                    let other_minus: HashSet<Root> = system
                        .singular_minus(mirror)
                        .expect("mirror root is positive")
                        .into_iter()
                        .collect();
                    let phi2: Vec<Root> = phi1
                        .iter()
                        .copied()
                        .filter(|r| !other_minus.contains(r))
                        .collect();
                    (phi1, phi2, system.family(), n - 2, Some(i))
                }
            }
        }
        _ => {
            // col(β₁) > 1 or empty placement: Φ₁⁺ = Φ₂⁺ = Φ⁺ ∖ C₁
            let phi1: Vec<Root> = positive
                .iter()
                .copied()
                .filter(|r| !col1.contains(r))
                .collect();
            (phi1.clone(), phi1, system.family(), n - 1, None)
        }
    };

    let phi2_set: HashSet<Root> = phi2.iter().copied().collect();
    let v1: Vec<Root> = phi1
        .iter()
        .copied()
        .filter(|r| !phi2_set.contains(r))
        .collect();

    // surviving coordinate indices, renumbered 1..ñ
    let mut survivors: Vec<usize> = (2..=n).filter(|&k| Some(k) != removed_index).collect();
    survivors.sort_unstable();
    let index_map: BTreeMap<usize, usize> = survivors
        .into_iter()
        .enumerate()
        .map(|(new, old)| (old, new + 1))
        .collect();
    debug_assert_eq!(index_map.len(), reduced_rank);

    LittleGroupData {
        beta1,
        phi1,
        phi2,
        v1,
        reduced_family,
        reduced_rank,
        index_map,
    }
}

/// ψ(x) = θ(f(ln x)) on U₁; equals θ(ξ_{β₁} x_{i,1}) when col(β₁) = 1 with
/// i = row(β₁), and is the constant 1 when col(β₁) > 1 or D is empty.
pub fn psi_value(space: &CoadjointSpace, f: &LinearForm, x: &GroupElement) -> Cyclotomic {
    theta(space.field().p(), space.evaluate(f, &algebra::ln(x)))
}

/// ψ as a dense class function on the materialized U₁.
pub fn psi_character(
    field: PrimeField,
    placement: &RookPlacement,
    xi: &[u64],
    cap: usize,
) -> Result<ClassFunction, MackeyError> {
    let system = placement.system();
    let space = CoadjointSpace::full(field, system);
    let f = space.canonical_form(placement.roots(), xi)?;
    let u1 = FiniteGroup::from_root_subset(field, system, &system.column(1), cap)?;
    Ok(ClassFunction::from_fn(u1, |x| psi_value(&space, &f, x)))
}

/// Exhaustive centralizer {b ∈ V | ψ(b a b⁻¹) = ψ(a) for all a ∈ U₁}.
pub fn centralizer_brute(
    field: PrimeField,
    placement: &RookPlacement,
    xi: &[u64],
    cap: usize,
) -> Result<Vec<GroupElement>, MackeyError> {
    let system = placement.system();
    let split = SemidirectSplit::new(field, system);
    let space = CoadjointSpace::full(field, system);
    let f = space.canonical_form(placement.roots(), xi)?;
    let v = FiniteGroup::from_root_subset(field, system, split.v_roots(), cap)?;
    let u1 = FiniteGroup::from_root_subset(field, system, split.u1_roots(), cap)?;
    let mut out = Vec::new();
    for b in v.elements() {
        let b_inv = b.inverse();
        let fixes = u1.elements().iter().all(|a| {
            let conj = b.mul(a).mul(&b_inv);
            psi_value(&space, &f, &conj) == psi_value(&space, &f, a)
        });
        if fixes {
            out.push(b.clone());
        }
    }
    Ok(out)
}

/// Compare the brute-force centralizer with the formula subgroup V′.
pub fn centralizer_matches_formula(
    field: PrimeField,
    placement: &RookPlacement,
    xi: &[u64],
    cap: usize,
) -> Result<bool, MackeyError> {
    let system = placement.system();
    let brute = centralizer_brute(field, placement, xi, cap)?;
    let lg = little_group_formula(system, placement);
    let v_prime = FiniteGroup::from_root_subset(field, system, lg.phi1(), cap)?;
    if brute.len() != v_prime.order() {
        return Ok(false);
    }
    Ok(brute.iter().all(|b| v_prime.contains(b)))
}

/// How many elements the decomposition identity is checked on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every element of U.
    Full,
    /// `count` seeded pseudorandom elements.
    Sampled { count: usize, seed: u64 },
}

/// One level of the rank-reduction chain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainEntry {
    pub family: String,
    pub rank: usize,
    pub beta1: Option<String>,
}

/// Outcome of the decomposition check for one placement and ξ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MackeyReport {
    pub placement: Vec<String>,
    pub xi: Vec<u64>,
    pub mode: String,
    pub checked: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<String>,
    pub reduced_chain: Vec<ChainEntry>,
    pub ok: bool,
}

/// The full reduction chain down to an empty placement or rank below 2.
pub fn reduction_chain(system: &RootSystem, placement: &RookPlacement) -> Vec<ChainEntry> {
    let mut chain = Vec::new();
    let mut sys = system.clone();
    let mut roots = placement.roots().to_vec();
    loop {
        chain.push(ChainEntry {
            family: sys.family().to_string(),
            rank: sys.rank(),
            beta1: roots.first().map(|r| r.to_string()),
        });
        if roots.is_empty() || sys.rank() < 2 {
            break;
        }
        let current = RookPlacement::new(&sys, &roots).expect("chain placements stay valid");
        let lg = little_group_formula(&sys, &current);
        let reduced = lg.reduced_system();
        roots = lg.reduced_placement(&current);
        sys = reduced;
    }
    chain
}

/// Verify the decomposition χ = Ind_{U₁⋊V′}^U((ψ∘π_{U₁})·(χ̃∘π_{Ũ})) against
/// the orbit character, pointwise on all of U or on seeded samples.
pub fn mackey_verify(
    field: PrimeField,
    placement: &RookPlacement,
    xi: &[u64],
    mode: VerifyMode,
    orbit_cap: usize,
) -> Result<MackeyReport, MackeyError> {
    let system = placement.system();
    let space = CoadjointSpace::full(field, system);
    let f = space.canonical_form(placement.roots(), xi)?;
    let orbit = space.orbit_of_form(&f, orbit_cap)?;

    let lg = little_group_formula(system, placement);
    let split = SemidirectSplit::new(field, system);
    let col1 = system.column(1);
    let h_roots: HashSet<Root> = col1.iter().chain(lg.phi1()).copied().collect();
    let s_minus: Vec<Root> = system
        .positive_roots()
        .iter()
        .copied()
        .filter(|r| !h_roots.contains(r))
        .collect();

    // reduced orbit in the coefficient space of Φ₂⁺, evaluated intrinsically
    let reduced_space = CoadjointSpace::restricted(field, system, lg.phi2().to_vec());
    let (d_tail, xi_tail): (Vec<Root>, Vec<u64>) = placement
        .roots()
        .iter()
        .copied()
        .zip(xi.iter().copied())
        .filter(|(r, _)| r.col() != 1)
        .unzip();
    let f_reduced = reduced_space.canonical_form(&d_tail, &xi_tail)?;
    let reduced_orbit =
        reduced_space.orbit(&f_reduced, &reduced_space.support_generators(), orbit_cap)?;

    // transversal of U/(U₁⋊V′): the coordinate block of S⁻(β₁)
    let transversal = coordinate_products(field, system, &s_minus);
    let prepared: Vec<(GroupElement, GroupElement)> = transversal
        .iter()
        .map(|r| (r.clone(), r.inverse()))
        .collect();

    let rhs_value = |g: &GroupElement| -> Cyclotomic {
        let mut acc = Cyclotomic::zero(field.p());
        for (r, r_inv) in &prepared {
            let h = r_inv.mul(g).mul(r);
            let ln_h = algebra::ln(&h);
            if s_minus.iter().any(|&d| ln_h.root_coeff(d) != 0) {
                continue; // h ∉ U₁⋊V′
            }
            let (a, v_prime) = split.factor(&h);
            let (_, u_tilde) =
                factor_abelian_normal(field, system, &v_prime, lg.v1(), lg.phi2());
            let psi = psi_value(&space, &f, &a);
            let chi_tilde =
                crate::characters::orbit_character_value(&reduced_space, &reduced_orbit, &u_tilde);
            acc = acc.add(&psi.mul(&chi_tilde));
        }
        acc
    };

    let mut checked = 0usize;
    let mut mismatches = 0usize;
    let mut first_mismatch = None;
    let mut check = |g: &GroupElement| {
        checked += 1;
        let lhs = crate::characters::orbit_character_value(&space, &orbit, g);
        let rhs = rhs_value(g);
        if lhs != rhs {
            mismatches += 1;
            if first_mismatch.is_none() {
                first_mismatch = Some(format!(
                    "ln coords {:?}: lhs {} != rhs {}",
                    system
                        .positive_roots()
                        .iter()
                        .map(|&r| algebra::ln(g).root_coeff(r))
                        .collect::<Vec<_>>(),
                    lhs,
                    rhs
                ));
            }
        }
    };

    let roots = system.positive_roots();
    match mode {
        VerifyMode::Full => {
            let mut coords = vec![0u64; roots.len()];
            loop {
                let g = element_from_coords(field, system, roots, &coords);
                check(&g);
                if !increment(&mut coords, field.p()) {
                    break;
                }
            }
        }
        VerifyMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let coords: Vec<u64> =
                    (0..roots.len()).map(|_| rng.gen_range(0..field.p())).collect();
                let g = element_from_coords(field, system, roots, &coords);
                check(&g);
            }
        }
    }

    Ok(MackeyReport {
        placement: placement.roots().iter().map(|r| r.to_string()).collect(),
        xi: xi.to_vec(),
        mode: match mode {
            VerifyMode::Full => "full".to_string(),
            VerifyMode::Sampled { count, seed } => format!("sampled({count},{seed})"),
        },
        checked,
        mismatches,
        first_mismatch,
        reduced_chain: reduction_chain(system, placement),
        ok: mismatches == 0,
    })
}

/// All products ∏ x_δ(t_δ) over the given roots, lexicographic in t.
fn coordinate_products(
    field: PrimeField,
    system: &RootSystem,
    roots: &[Root],
) -> Vec<GroupElement> {
    let grid = algebra::MirrorGrid::of_system(system);
    let mut out = vec![GroupElement::identity(field, grid)];
    for &delta in roots {
        let mut next = Vec::with_capacity(out.len() * field.p() as usize);
        for e in &out {
            for t in 0..field.p() {
                next.push(e.mul(&algebra::x_alpha(field, system, delta, t)));
            }
        }
        out = next;
    }
    out
}

fn element_from_coords(
    field: PrimeField,
    system: &RootSystem,
    roots: &[Root],
    coords: &[u64],
) -> GroupElement {
    let grid = algebra::MirrorGrid::of_system(system);
    let mut g = GroupElement::identity(field, grid);
    for (&r, &t) in roots.iter().zip(coords) {
        if t != 0 {
            g = g.mul(&algebra::x_alpha(field, system, r, t));
        }
    }
    g
}

fn increment(coords: &mut [u64], p: u64) -> bool {
    for c in coords.iter_mut().rev() {
        *c += 1;
        if *c < p {
            return true;
        }
        *c = 0;
    }
    false
}

/// Degree bookkeeping of the decomposition:
/// ½ dim Ω = ½ dim Ω̃ + |S⁻(β₁)|, i.e. deg χ = deg χ̃ · [U : U₁⋊V′].
pub fn degree_bookkeeping_holds(
    field: PrimeField,
    placement: &RookPlacement,
    xi: &[u64],
    orbit_cap: usize,
) -> Result<bool, MackeyError> {
    let system = placement.system();
    let space = CoadjointSpace::full(field, system);
    let f = space.canonical_form(placement.roots(), xi)?;
    let orbit = space.orbit_of_form(&f, orbit_cap)?;
    let lg = little_group_formula(system, placement);
    let reduced_space = CoadjointSpace::restricted(field, system, lg.phi2().to_vec());
    let (d_tail, xi_tail): (Vec<Root>, Vec<u64>) = placement
        .roots()
        .iter()
        .copied()
        .zip(xi.iter().copied())
        .filter(|(r, _)| r.col() != 1)
        .unzip();
    let f_reduced = reduced_space.canonical_form(&d_tail, &xi_tail)?;
    let reduced_orbit =
        reduced_space.orbit(&f_reduced, &reduced_space.support_generators(), orbit_cap)?;
    let s_minus_count = system.positive_roots().len() - system.column(1).len() - lg.phi1().len();
    Ok(orbit.dimension() / 2 == reduced_orbit.dimension() / 2 + s_minus_count as u32)
}
