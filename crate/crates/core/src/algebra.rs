//! Matrix model of the nilpotent algebra u and its unipotent group U = exp(u)
//! over a prime field.
//!
//! Rows and columns of the m×m grid are labelled 1, …, n, 0, −n, …, −1
//! (no 0 in family D) and ordered by the mirror order. Elements of u are
//! strictly lower triangular in that order and skew-symmetric with respect
//! to the antidiagonal: entry(a, b) = −entry(−b, −a). The basis vector of a
//! positive root α sits at the matrix position (row(α), col(α)) with a −1 at
//! the mirrored position.
//!
//! Matrices are stored densely; m ≤ 13 at desk scale makes that the right
//! call. exp and ln are the truncated series, exact because of nilpotency,
//! and need p ≥ m so the factorials stay invertible.

use crate::field::{FieldError, PrimeField};
use crate::roots::{Family, Root, RootSystem};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("BCH defect does not lie in the bracket span of the subalgebra")]
    NotInBracketSpan,
}

/// The mirror-labelled index grid of the matrix model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MirrorGrid {
    family: Family,
    rank: usize,
}

impl MirrorGrid {
    pub fn new(family: Family, rank: usize) -> Self {
        MirrorGrid { family, rank }
    }

    pub fn of_system(system: &RootSystem) -> Self {
        MirrorGrid::new(system.family(), system.rank())
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Matrix size m: 2n+1 for B, 2n for D.
    pub fn size(self) -> usize {
        match self.family {
            Family::B => 2 * self.rank + 1,
            Family::D => 2 * self.rank,
        }
    }

    /// Offset of a label in the mirror order.
    pub fn offset(self, label: i64) -> usize {
        let n = self.rank as i64;
        debug_assert!(label.abs() <= n && (label != 0 || self.family == Family::B));
        if label > 0 {
            (label - 1) as usize
        } else if label == 0 {
            self.rank
        } else {
            (self.size() as i64 + label) as usize
        }
    }

    /// Label at an offset.
    pub fn label(self, offset: usize) -> i64 {
        let n = self.rank;
        if offset < n {
            (offset + 1) as i64
        } else if self.family == Family::B && offset == n {
            0
        } else {
            offset as i64 - self.size() as i64
        }
    }

    /// All labels in mirror order.
    pub fn labels(self) -> Vec<i64> {
        (0..self.size()).map(|o| self.label(o)).collect()
    }
}

/// A dense m×m matrix over F_p on the mirror grid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    field: PrimeField,
    grid: MirrorGrid,
    data: Vec<u64>,
}

impl FqMatrix {
    pub fn zero(field: PrimeField, grid: MirrorGrid) -> Self {
        FqMatrix {
            field,
            grid,
            data: vec![0; grid.size() * grid.size()],
        }
    }

    pub fn identity(field: PrimeField, grid: MirrorGrid) -> Self {
        let mut m = Self::zero(field, grid);
        for i in 0..grid.size() {
            m.data[i * grid.size() + i] = 1;
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn grid(&self) -> MirrorGrid {
        self.grid
    }

    pub fn size(&self) -> usize {
        self.grid.size()
    }

    pub fn get_off(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.size() + c]
    }

    pub fn set_off(&mut self, r: usize, c: usize, v: u64) {
        let m = self.size();
        self.data[r * m + c] = v % self.field.p();
    }

    /// Entry by mirror labels.
    pub fn get(&self, row: i64, col: i64) -> u64 {
        self.get_off(self.grid.offset(row), self.grid.offset(col))
    }

    pub fn set(&mut self, row: i64, col: i64, v: u64) {
        self.set_off(self.grid.offset(row), self.grid.offset(col), v);
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |f, a, b| f.sub(a, b))
    }

    fn zip(&self, rhs: &Self, op: impl Fn(&PrimeField, u64, u64) -> u64) -> Self {
        assert_eq!(self.grid, rhs.grid);
        assert_eq!(self.field, rhs.field);
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&rhs.data) {
            *a = op(&self.field, *a, b);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for a in &mut out.data {
            *a = self.field.neg(*a);
        }
        out
    }

    pub fn scale(&self, t: u64) -> Self {
        let mut out = self.clone();
        for a in &mut out.data {
            *a = self.field.mul(*a, t % self.field.p());
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.grid, rhs.grid);
        let m = self.size();
        let p = self.field.p();
        let mut out = Self::zero(self.field, self.grid);
        for i in 0..m {
            for k in 0..m {
                let a = self.data[i * m + k];
                if a == 0 {
                    continue;
                }
                for j in 0..m {
                    let b = rhs.data[k * m + j];
                    if b != 0 {
                        let cell = &mut out.data[i * m + j];
                        *cell = (*cell + a * b) % p;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let m = self.size();
        let mut out = Self::zero(self.field, self.grid);
        for i in 0..m {
            for j in 0..m {
                out.data[j * m + i] = self.data[i * m + j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Strictly lower triangular in the mirror order.
    pub fn is_strictly_lower(&self) -> bool {
        let m = self.size();
        (0..m).all(|i| (i..m).all(|j| self.get_off(i, j) == 0))
    }

    /// Membership in u: strictly lower triangular and skew-symmetric about
    /// the antidiagonal, entry(a, b) = −entry(−b, −a).
    pub fn is_in_u(&self) -> bool {
        if !self.is_strictly_lower() {
            return false;
        }
        for a in self.grid.labels() {
            for b in self.grid.labels() {
                if self.get(a, b) != self.field.neg(self.get(-b, -a)) {
                    return false;
                }
            }
        }
        true
    }

    /// Coefficient of e_α in an element of u: the entry at (row(α), col(α)).
    pub fn root_coeff(&self, alpha: Root) -> u64 {
        self.get(alpha.row(), alpha.col() as i64)
    }

    /// The e_α*-coordinate of the projection of an arbitrary matrix onto u*,
    /// i.e. ⟨M, e_α⟩ = ½ tr(M e_α).
    pub fn pairing_coeff(&self, alpha: Root) -> u64 {
        let f = &self.field;
        let (r, c) = (alpha.row(), alpha.col() as i64);
        // e_α = e_{(r,c)} − e_{(−c,−r)}; tr(M e_{(a,b)}) = M[b, a]
        let t = f.sub(self.get(c, r), self.get(-r, -c));
        f.mul(t, f.inv(2))
    }
}

/// The basis matrix e_α: two entries, +1 at (row(α), col(α)) and −1 at the
/// antidiagonal mirror.
pub fn root_matrix(field: PrimeField, system: &RootSystem, alpha: Root) -> FqMatrix {
    let grid = MirrorGrid::of_system(system);
    let mut m = FqMatrix::zero(field, grid);
    let (r, c) = (alpha.row(), alpha.col() as i64);
    m.set(r, c, 1);
    m.set(-c, -r, field.neg(1));
    m
}

/// Commutator [x, y] = xy − yx.
pub fn bracket(x: &FqMatrix, y: &FqMatrix) -> FqMatrix {
    x.matmul(y).sub(&y.matmul(x))
}

/// An element of U = exp(u): unipotent, strictly lower triangular below the
/// identity in the mirror order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    mat: FqMatrix,
}

impl GroupElement {
    pub fn identity(field: PrimeField, grid: MirrorGrid) -> Self {
        GroupElement {
            mat: FqMatrix::identity(field, grid),
        }
    }

    pub fn matrix(&self) -> &FqMatrix {
        &self.mat
    }

    pub fn field(&self) -> PrimeField {
        self.mat.field
    }

    pub fn grid(&self) -> MirrorGrid {
        self.mat.grid
    }

    pub fn is_identity(&self) -> bool {
        let m = self.mat.size();
        (0..m).all(|i| {
            (0..m).all(|j| self.mat.get_off(i, j) == u64::from(i == j))
        })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        GroupElement {
            mat: self.mat.matmul(&rhs.mat),
        }
    }

    /// Inverse via the Neumann series of the nilpotent part.
    pub fn inverse(&self) -> Self {
        let field = self.mat.field;
        let grid = self.mat.grid;
        let one = FqMatrix::identity(field, grid);
        let y = self.mat.sub(&one);
        let mut acc = one.clone();
        let mut pow = one;
        let mut sign_neg = false;
        for _ in 1..grid.size().max(1) {
            pow = pow.matmul(&y);
            sign_neg = !sign_neg;
            if pow.is_zero() {
                break;
            }
            acc = if sign_neg { acc.sub(&pow) } else { acc.add(&pow) };
        }
        GroupElement { mat: acc }
    }

    pub fn conjugate(&self, m: &FqMatrix) -> FqMatrix {
        self.mat.matmul(m).matmul(&self.inverse().mat)
    }

    /// Dense entry vector; the hash key used by orbit and group sets.
    pub fn key(&self) -> &[u64] {
        &self.mat.data
    }
}

/// exp(x) = Σ_{k<m} x^k / k!, exact by nilpotency. Needs p ≥ m.
pub fn exp(x: &FqMatrix) -> Result<GroupElement, AlgebraError> {
    let field = x.field;
    field.check_matrix_size(x.size())?;
    debug_assert!(x.is_strictly_lower(), "exp input must be nilpotent");
    let mut acc = FqMatrix::identity(field, x.grid);
    let mut term = FqMatrix::identity(field, x.grid);
    let mut kfac_inv = 1u64;
    for k in 1..x.size() as u64 {
        term = term.matmul(x);
        if term.is_zero() {
            break;
        }
        kfac_inv = field.mul(kfac_inv, field.inv(k % field.p()));
        acc = acc.add(&term.scale(kfac_inv));
    }
    Ok(GroupElement { mat: acc })
}

/// ln(g) = Σ_{k<m} (−1)^{k+1} (g−1)^k / k, mutually inverse with exp.
pub fn ln(g: &GroupElement) -> FqMatrix {
    let field = g.mat.field;
    let one = FqMatrix::identity(field, g.mat.grid);
    let y = g.mat.sub(&one);
    let mut acc = FqMatrix::zero(field, g.mat.grid);
    let mut pow = one;
    for k in 1..g.mat.size() as u64 {
        pow = pow.matmul(&y);
        if pow.is_zero() {
            break;
        }
        let mut coeff = field.inv(k % field.p());
        if k % 2 == 0 {
            coeff = field.neg(coeff);
        }
        acc = acc.add(&pow.scale(coeff));
    }
    acc
}

/// Root subgroup element x_α(t) = exp(t e_α): 1 + t e_α for long roots, with
/// the quadratic correction −(t²/2) e_{−i,i} for a short root ε_i.
pub fn x_alpha(field: PrimeField, system: &RootSystem, alpha: Root, t: u64) -> GroupElement {
    let grid = MirrorGrid::of_system(system);
    let mut m = FqMatrix::identity(field, grid);
    let t = t % field.p();
    let (r, c) = (alpha.row(), alpha.col() as i64);
    m.set(r, c, t);
    m.set(-c, -r, field.neg(t));
    if let Root::Short(i) = alpha {
        let corr = field.neg(field.mul(field.mul(t, t), field.inv(2)));
        m.set(-(i as i64), i as i64, corr);
    }
    GroupElement { mat: m }
}

/// ⟨A, B⟩ = ½ tr(AB).
pub fn trace_pairing(a: &FqMatrix, b: &FqMatrix) -> u64 {
    assert_eq!(a.grid, b.grid);
    let f = a.field;
    let m = a.size();
    let mut tr = 0u64;
    for i in 0..m {
        for j in 0..m {
            tr = f.add(tr, f.mul(a.get_off(i, j), b.get_off(j, i)));
        }
    }
    f.mul(tr, f.inv(2))
}

/// Row-echelon span membership test over F_p on flattened matrices.
pub fn in_span(vectors: &[FqMatrix], target: &FqMatrix) -> bool {
    let field = target.field;
    let dim = target.data.len();
    let mut echelon: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let reduce = |v: &mut Vec<u64>, echelon: &[Vec<u64>], pivots: &[usize]| {
        for (row, &pc) in echelon.iter().zip(pivots) {
            if v[pc] != 0 {
                let c = v[pc];
                for k in 0..dim {
                    v[k] = field.sub(v[k], field.mul(c, row[k]));
                }
            }
        }
    };
    for m in vectors {
        let mut v = m.data.clone();
        reduce(&mut v, &echelon, &pivots);
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = field.inv(v[pc]);
            for x in &mut v {
                *x = field.mul(*x, inv);
            }
            echelon.push(v);
            pivots.push(pc);
        }
    }
    let mut v = target.data.clone();
    reduce(&mut v, &echelon, &pivots);
    v.iter().all(|&x| x == 0)
}

/// τ(u, v) = ln(exp(u)exp(v)) − u − v, with the assertion that it lies in
/// the bracket span [a, a] of the given subalgebra basis.
pub fn bch_defect(
    subalgebra: &[FqMatrix],
    u: &FqMatrix,
    v: &FqMatrix,
) -> Result<FqMatrix, AlgebraError> {
    let prod = exp(u)?.mul(&exp(v)?);
    let tau = ln(&prod).sub(u).sub(v);
    let mut brackets = Vec::new();
    for (i, a) in subalgebra.iter().enumerate() {
        for b in &subalgebra[i + 1..] {
            brackets.push(bracket(a, b));
        }
    }
    if in_span(&brackets, &tau) {
        Ok(tau)
    } else {
        Err(AlgebraError::NotInBracketSpan)
    }
}

/// The element of u with the given coefficients over a list of roots.
pub fn from_coeffs(
    field: PrimeField,
    system: &RootSystem,
    roots: &[Root],
    coeffs: &[u64],
) -> FqMatrix {
    assert_eq!(roots.len(), coeffs.len());
    let mut acc = FqMatrix::zero(field, MirrorGrid::of_system(system));
    for (&r, &c) in roots.iter().zip(coeffs) {
        acc = acc.add(&root_matrix(field, system, r).scale(c));
    }
    acc
}
