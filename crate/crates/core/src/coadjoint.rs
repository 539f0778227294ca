//! Linear forms on u, the canonical form of a rook placement, the coadjoint
//! action and brute-force orbit enumeration.
//!
//! The dual space u* is identified with u^t through ⟨A, B⟩ = ½ tr(AB), so a
//! form is a coefficient vector over a set of positive roots and the action
//! is `g.f = pr(g F g⁻¹)` with F the matrix of f. Orbit states are the
//! coefficient vectors themselves; no matrix is stored per state.

use crate::algebra::{self, FqMatrix, GroupElement, MirrorGrid};
use crate::field::PrimeField;
use crate::placement::RookPlacement;
use crate::roots::{Root, RootSystem};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

/// Default ceiling on the number of orbit states.
pub const DEFAULT_ORBIT_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoadjointError {
    #[error("coefficient for {0} must be nonzero")]
    ZeroCoefficient(Root),
    #[error("orbit exceeded the cap of {0} states")]
    CapExceeded(usize),
    #[error("orbit size {size} is not a power of q = {q}")]
    NonPowerCardinality { size: usize, q: u64 },
    #[error("orbit dimension {0} is odd")]
    OddDimension(u32),
    #[error("placement has {placement} roots but xi has {xi} entries")]
    XiLengthMismatch { placement: usize, xi: usize },
}

/// A linear form as a coefficient vector over the support of its space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<u64>,
}

impl LinearForm {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// A coadjoint state space: the span of {e_α* : α ∈ support} together with
/// the field and the ambient system. The support is the full positive system
/// for ordinary orbits and a root subset for the reduced groups of the
/// little-group machinery.
#[derive(Debug, Clone)]
pub struct CoadjointSpace {
    field: PrimeField,
    system: RootSystem,
    support: Vec<Root>,
}

/// A fully enumerated coadjoint orbit.
#[derive(Debug, Clone)]
pub struct Orbit {
    base: LinearForm,
    elements: Vec<LinearForm>,
    dimension: u32,
}

impl Orbit {
    pub fn base_point(&self) -> &LinearForm {
        &self.base
    }

    /// Orbit elements in breadth-first discovery order.
    pub fn elements(&self) -> &[LinearForm] {
        &self.elements
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// log_q of the cardinality; always even.
    pub fn dimension(&self) -> u32 {
        self.dimension
    }
}

impl CoadjointSpace {
    /// The full dual space of u(Φ).
    pub fn full(field: PrimeField, system: &RootSystem) -> Self {
        CoadjointSpace {
            field,
            system: system.clone(),
            support: system.positive_roots().to_vec(),
        }
    }

    /// The dual of a root-subset subalgebra; `support` must be listed in
    /// canonical order.
    pub fn restricted(field: PrimeField, system: &RootSystem, support: Vec<Root>) -> Self {
        debug_assert!(support.iter().all(|r| system.contains(*r)));
        CoadjointSpace {
            field,
            system: system.clone(),
            support,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn support(&self) -> &[Root] {
        &self.support
    }

    pub fn zero_form(&self) -> LinearForm {
        LinearForm {
            coeffs: vec![0; self.support.len()],
        }
    }

    pub fn form_from_coeffs(&self, coeffs: Vec<u64>) -> LinearForm {
        assert_eq!(coeffs.len(), self.support.len());
        LinearForm {
            coeffs: coeffs.into_iter().map(|c| c % self.field.p()).collect(),
        }
    }

    /// The canonical form f_{D,ξ} = Σ ξ_β e_β*. Every coefficient must be
    /// nonzero and the placement roots must lie in the support.
    pub fn canonical_form(
        &self,
        placement_roots: &[Root],
        xi: &[u64],
    ) -> Result<LinearForm, CoadjointError> {
        if placement_roots.len() != xi.len() {
            return Err(CoadjointError::XiLengthMismatch {
                placement: placement_roots.len(),
                xi: xi.len(),
            });
        }
        let mut coeffs = vec![0; self.support.len()];
        for (&beta, &x) in placement_roots.iter().zip(xi) {
            if x % self.field.p() == 0 {
                return Err(CoadjointError::ZeroCoefficient(beta));
            }
            let pos = self
                .support
                .iter()
                .position(|&r| r == beta)
                .expect("placement root lies in the support");
            coeffs[pos] = x % self.field.p();
        }
        Ok(LinearForm { coeffs })
    }

    /// Coefficient of e_α* in the form.
    pub fn coeff(&self, f: &LinearForm, alpha: Root) -> u64 {
        self.support
            .iter()
            .position(|&r| r == alpha)
            .map(|i| f.coeffs[i])
            .unwrap_or(0)
    }

    /// Matrix of the form: Σ c_α e_α^t, upper triangular. The transposed
    /// basis vector e_α^t has +1 at (col, row) and −1 at (−row, −col).
    pub fn materialize(&self, f: &LinearForm) -> FqMatrix {
        let grid = MirrorGrid::of_system(&self.system);
        let mut acc = FqMatrix::zero(self.field, grid);
        for (&alpha, &c) in self.support.iter().zip(&f.coeffs) {
            if c != 0 {
                let (r, col) = (alpha.row(), alpha.col() as i64);
                acc.set(col, r, c);
                acc.set(-r, -col, self.field.neg(c));
            }
        }
        acc
    }

    /// f(x) for x in the span of the support basis vectors.
    pub fn evaluate(&self, f: &LinearForm, x: &FqMatrix) -> u64 {
        let mut acc = 0u64;
        for (&alpha, &c) in self.support.iter().zip(&f.coeffs) {
            if c != 0 {
                acc = self.field.add(acc, self.field.mul(c, x.root_coeff(alpha)));
            }
        }
        acc
    }

    /// Coadjoint action g.f = pr(g F g⁻¹), realized by conjugating the
    /// materialized form and reading coefficients back through the pairing.
    pub fn coadjoint_act(&self, g: &GroupElement, f: &LinearForm) -> LinearForm {
        self.act_prepared(g, &g.inverse(), f)
    }

    fn act_prepared(&self, g: &GroupElement, g_inv: &GroupElement, f: &LinearForm) -> LinearForm {
        let conj = g.matrix().matmul(&self.materialize(f)).matmul(g_inv.matrix());
        LinearForm {
            coeffs: self.support.iter().map(|&a| conj.pairing_coeff(a)).collect(),
        }
    }

    /// One-parameter generators x_δ(t), δ simple, t ≠ 0; enough to generate
    /// U when the support is the full positive system.
    pub fn simple_generators(&self) -> Vec<GroupElement> {
        self.generators_for(&self.system.simple_roots())
    }

    /// Generators from all support roots; used for the reduced subgroups,
    /// where the relabelled simple roots are a subset of these.
    pub fn support_generators(&self) -> Vec<GroupElement> {
        self.generators_for(&self.support.clone())
    }

    fn generators_for(&self, roots: &[Root]) -> Vec<GroupElement> {
        let mut gens = Vec::new();
        for &r in roots {
            for t in self.field.nonzero() {
                gens.push(algebra::x_alpha(self.field, &self.system, r, t));
            }
        }
        gens
    }

    /// Breadth-first closure of {f} under the generators. The orbit size
    /// must be an even power of q.
    pub fn orbit(
        &self,
        f: &LinearForm,
        generators: &[GroupElement],
        cap: usize,
    ) -> Result<Orbit, CoadjointError> {
        let prepared: Vec<(GroupElement, GroupElement)> = generators
            .iter()
            .map(|g| (g.clone(), g.inverse()))
            .collect();
        let mut visited: HashSet<Vec<u64>> = HashSet::new();
        let mut elements: Vec<LinearForm> = Vec::new();
        let mut queue: VecDeque<LinearForm> = VecDeque::new();
        visited.insert(f.coeffs.clone());
        elements.push(f.clone());
        queue.push_back(f.clone());
        while let Some(state) = queue.pop_front() {
            for (g, g_inv) in &prepared {
                let next = self.act_prepared(g, g_inv, &state);
                if !visited.contains(&next.coeffs) {
                    if elements.len() >= cap {
                        return Err(CoadjointError::CapExceeded(cap));
                    }
                    visited.insert(next.coeffs.clone());
                    elements.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let dimension = exact_log(elements.len(), self.field.p())
            .ok_or(CoadjointError::NonPowerCardinality {
                size: elements.len(),
                q: self.field.p(),
            })?;
        if dimension % 2 != 0 {
            return Err(CoadjointError::OddDimension(dimension));
        }
        Ok(Orbit {
            base: f.clone(),
            elements,
            dimension,
        })
    }

    /// Orbit of f under the full group U.
    pub fn orbit_of_form(&self, f: &LinearForm, cap: usize) -> Result<Orbit, CoadjointError> {
        self.orbit(f, &self.simple_generators(), cap)
    }
}

fn exact_log(size: usize, q: u64) -> Option<u32> {
    let mut s = size as u64;
    let mut k = 0;
    while s > 1 {
        if s % q != 0 {
            return None;
        }
        s /= q;
        k += 1;
    }
    if size == 0 {
        None
    } else {
        Some(k)
    }
}

/// Result of checking one placement-and-coefficients pair: the BFS orbit
/// dimension against both combinatorial formulas.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitReport {
    pub family: String,
    pub rank: usize,
    pub p: u64,
    pub placement: Vec<String>,
    pub xi: Vec<u64>,
    pub orbit_size: usize,
    pub dim_bfs: u32,
    pub dim_diagram: usize,
    pub dim_weyl: i64,
    pub ok: bool,
}

/// Enumerate the orbit of f_{D,ξ} and compare log_q |Ω| with the diagram
/// and Weyl dimension formulas.
pub fn orbit_dimension_check(
    field: PrimeField,
    placement: &RookPlacement,
    xi: &[u64],
    cap: usize,
) -> Result<OrbitReport, CoadjointError> {
    let system = placement.system();
    let space = CoadjointSpace::full(field, system);
    let f = space.canonical_form(placement.roots(), xi)?;
    let orbit = space.orbit_of_form(&f, cap)?;
    let dim_diagram = placement
        .dim_via_diagram()
        .expect("valid placements mark cleanly");
    let dim_weyl = placement.dim_via_weyl();
    let ok = u64::from(orbit.dimension()) == dim_diagram as u64
        && dim_weyl >= 0
        && dim_weyl as u64 == u64::from(orbit.dimension());
    Ok(OrbitReport {
        family: system.family().to_string(),
        rank: system.rank(),
        p: field.p(),
        placement: placement.roots().iter().map(|r| r.to_string()).collect(),
        xi: xi.to_vec(),
        orbit_size: orbit.size(),
        dim_bfs: orbit.dimension(),
        dim_diagram,
        dim_weyl,
        ok,
    })
}
