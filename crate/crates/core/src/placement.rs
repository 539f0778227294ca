//! Orthogonal rook placements, the battleship marking procedure, the
//! polarization root set and both dimension formulas.
//!
//! A rook placement is a set of pairwise-orthogonal positive roots with at
//! most one root per row and per column of the staircase. The battleship
//! walks the placement in ascending-column order and marks every positive
//! root with one of ⊗, +, −, •; the roots not marked − span the
//! polarization, and #+ = #− equals the orbit dimension.

use crate::roots::{Family, Root, RootSystem};
use crate::weyl::{self, InvolutionStats};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

/// Validation and marking errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlacementError {
    #[error("root {0} does not belong to the system")]
    RootNotInSystem(Root),
    #[error("duplicate root {0}")]
    DuplicateRoot(Root),
    #[error("roots {0} and {1} are not orthogonal")]
    NonOrthogonal(Root, Root),
    #[error("row clash in row {0}")]
    RowClash(i64),
    #[error("column clash in column {0}")]
    ColClash(usize),
    #[error("battleship mark conflict at {0}")]
    MarkConflict(Root),
    #[error("root {0} is not plus-marked")]
    NotPlusMarked(Root),
}

/// A validated orthogonal rook placement, sorted by ascending column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RookPlacement {
    system: RootSystem,
    roots: Vec<Root>,
}

/// The four battleship symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mark {
    #[serde(rename = "x")]
    Cross,
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = ".")]
    Dot,
}

impl Mark {
    pub fn symbol(self) -> char {
        match self {
            Mark::Cross => 'x',
            Mark::Plus => '+',
            Mark::Minus => '-',
            Mark::Dot => '.',
        }
    }
}

/// A total marking Φ⁺ → {⊗, +, −, •} produced by the battleship.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BattleshipDiagram {
    placement: RookPlacement,
    marks: Vec<Mark>,
}

/// One diagram cell in the JSON rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramCell {
    pub root: Root,
    pub col: usize,
    pub row: i64,
    pub mark: Mark,
}

/// The JSON form of a rendered diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub family: Family,
    pub rank: usize,
    pub placement: Vec<String>,
    pub marks: Vec<DiagramCell>,
    pub dim_diagram: usize,
    pub dim_weyl: i64,
    pub l: usize,
    pub s: usize,
    pub d: usize,
}

impl RookPlacement {
    /// Validate a set of roots as an orthogonal rook placement. The result
    /// is sorted by ascending column; the empty set is legal.
    pub fn new(system: &RootSystem, roots: &[Root]) -> Result<Self, PlacementError> {
        let mut sorted: Vec<Root> = Vec::with_capacity(roots.len());
        for &r in roots {
            if !system.contains(r) {
                return Err(PlacementError::RootNotInSystem(r));
            }
            if sorted.contains(&r) {
                return Err(PlacementError::DuplicateRoot(r));
            }
            sorted.push(r);
        }
        for (k, &a) in sorted.iter().enumerate() {
            for &b in &sorted[k + 1..] {
                if a.dot(b) != 0 {
                    return Err(PlacementError::NonOrthogonal(a, b));
                }
                if a.row() == b.row() {
                    return Err(PlacementError::RowClash(a.row()));
                }
                if a.col() == b.col() {
                    return Err(PlacementError::ColClash(a.col()));
                }
            }
        }
        sorted.sort_by_key(|r| r.col());
        Ok(RookPlacement {
            system: system.clone(),
            roots: sorted,
        })
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    /// Roots β₁, …, β_t with col(β₁) < … < col(β_t).
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Placement as a comma-separated token list.
    pub fn tokens(&self) -> String {
        self.roots
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Run the battleship procedure.
    pub fn battleship(&self) -> Result<BattleshipDiagram, PlacementError> {
        let sys = &self.system;
        let n_roots = sys.positive_roots().len();
        let mut marks: Vec<Option<Mark>> = vec![None; n_roots];
        let idx = |r: Root| sys.root_index(r).expect("root in system");
        for &b in &self.roots {
            marks[idx(b)] = Some(Mark::Cross);
        }
        // steps in ascending column; within a step the pairs come sorted by
        // ≺′ on the minus member, which keeps runs reproducible
        for &beta in &self.roots {
            let pairs = sys.singular_pairs(beta).expect("β positive");
            for (gamma, delta) in pairs {
                let (gi, di) = (idx(gamma), idx(delta));
                if marks[gi] == Some(Mark::Minus) || marks[di] == Some(Mark::Minus) {
                    continue;
                }
                match marks[gi] {
                    None | Some(Mark::Plus) => marks[gi] = Some(Mark::Plus),
                    _ => return Err(PlacementError::MarkConflict(gamma)),
                }
                match marks[di] {
                    None => marks[di] = Some(Mark::Minus),
                    _ => return Err(PlacementError::MarkConflict(delta)),
                }
            }
        }
        let marks = marks.into_iter().map(|m| m.unwrap_or(Mark::Dot)).collect();
        Ok(BattleshipDiagram {
            placement: self.clone(),
            marks,
        })
    }

    /// P = {α ∈ Φ⁺ | F(α) ≠ −}, in canonical order.
    pub fn polarization_roots(&self) -> Result<Vec<Root>, PlacementError> {
        let diagram = self.battleship()?;
        Ok(self
            .system
            .positive_roots()
            .iter()
            .copied()
            .filter(|&r| diagram.mark(r) != Mark::Minus)
            .collect())
    }

    /// Orbit dimension as the number of pluses and minuses in the diagram.
    pub fn dim_via_diagram(&self) -> Result<usize, PlacementError> {
        let d = self.battleship()?;
        Ok(d.plus_count() + d.minus_count())
    }

    /// Orbit dimension as l(σ) − s(σ) − 2d(σ).
    pub fn dim_via_weyl(&self) -> i64 {
        self.involution_stats().dim()
    }

    /// Length statistics of the attached involution.
    pub fn involution_stats(&self) -> InvolutionStats {
        weyl::involution_stats(&self.system, &self.roots)
    }

    /// For a plus-marked γ, the unique δ ∈ Φ⁺ with γ + δ ∈ D; found by
    /// exhaustive scan, with the uniqueness assertion of the scan kept.
    pub fn plus_partner(&self, gamma: Root) -> Result<Root, PlacementError> {
        let diagram = self.battleship()?;
        if diagram.mark(gamma) != Mark::Plus {
            return Err(PlacementError::NotPlusMarked(gamma));
        }
        let n = self.system.rank();
        let family = self.system.family();
        let mut found: Vec<Root> = Vec::new();
        for &delta in self.system.positive_roots() {
            let pairs: Vec<(usize, i64)> = (1..=n)
                .map(|k| (k, gamma.coeff(k) + delta.coeff(k)))
                .collect();
            if let Some(sum) = Root::from_coeffs(&pairs, family, n) {
                if self.roots.contains(&sum) {
                    found.push(delta);
                }
            }
        }
        assert_eq!(
            found.len(),
            1,
            "plus-marked root {gamma} must have exactly one partner, found {found:?}"
        );
        Ok(found[0])
    }
}

impl BattleshipDiagram {
    pub fn placement(&self) -> &RookPlacement {
        &self.placement
    }

    pub fn system(&self) -> &RootSystem {
        self.placement.system()
    }

    pub fn mark(&self, root: Root) -> Mark {
        self.marks[self.system().root_index(root).expect("root in system")]
    }

    /// Marks in canonical root order.
    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn count(&self, m: Mark) -> usize {
        self.marks.iter().filter(|&&x| x == m).count()
    }

    pub fn plus_count(&self) -> usize {
        self.count(Mark::Plus)
    }

    pub fn minus_count(&self) -> usize {
        self.count(Mark::Minus)
    }

    /// Text rendering of the staircase: rows labelled 1..n, 0, −n..−1 (no 0
    /// row in family D), columns 1..n, marks drawn as `x + - .` and a `0` on
    /// each antidiagonal boundary cell.
    pub fn render_text(&self) -> String {
        let sys = self.system();
        let n = sys.rank();
        let mut out = String::new();
        write!(out, "    ").unwrap();
        for j in 1..=n {
            write!(out, "{:>3}", j).unwrap();
        }
        out.push('\n');
        let mut row_labels: Vec<i64> = (1..=n as i64).collect();
        if sys.family() == Family::B {
            row_labels.push(0);
        }
        row_labels.extend((1..=n as i64).rev().map(|v| -v));
        for a in row_labels {
            let mut line = format!("{:>4}", a);
            let cells: i64 = match a {
                0 => n as i64,
                a if a > 0 => a - 1,
                a => -a - 1,
            };
            for j in 1..=cells {
                let root = if a > 0 {
                    Root::Diff(j as usize, a as usize)
                } else if a == 0 {
                    Root::Short(j as usize)
                } else {
                    Root::Sum(j as usize, (-a) as usize)
                };
                write!(line, "{:>3}", self.mark(root).symbol()).unwrap();
            }
            if a < 0 {
                write!(line, "{:>3}", '0').unwrap();
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    /// JSON rendering with the full mark list, both dimensions and the
    /// involution statistics.
    pub fn to_json_value(&self) -> DiagramJson {
        let sys = self.system();
        let stats = self.placement.involution_stats();
        DiagramJson {
            family: sys.family(),
            rank: sys.rank(),
            placement: self.placement.roots().iter().map(|r| r.to_string()).collect(),
            marks: sys
                .positive_roots()
                .iter()
                .map(|&r| DiagramCell {
                    root: r,
                    col: r.col(),
                    row: r.row(),
                    mark: self.mark(r),
                })
                .collect(),
            dim_diagram: self.plus_count() + self.minus_count(),
            dim_weyl: stats.dim(),
            l: stats.length,
            s: stats.support_size,
            d: stats.d_stat,
        }
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("diagram serializes")
    }
}

/// Rebuild the mark map from a JSON rendering; used to round-trip diagrams.
pub fn marks_from_json(json: &str) -> Result<BTreeMap<Root, Mark>, serde_json::Error> {
    let parsed: DiagramJson = serde_json::from_str(json)?;
    Ok(parsed.marks.into_iter().map(|c| (c.root, c.mark)).collect())
}

/// All valid rook placements of the system, ordered by size and then
/// lexicographically over the canonical root order. The first placement is
/// always the empty one.
pub fn enumerate_placements(system: &RootSystem) -> Vec<RookPlacement> {
    let roots = system.positive_roots();
    let mut out: Vec<Vec<Root>> = Vec::new();
    let mut stack: Vec<Root> = Vec::new();

    fn compatible(chosen: &[Root], cand: Root) -> bool {
        chosen.iter().all(|&c| {
            c.dot(cand) == 0 && c.row() != cand.row() && c.col() != cand.col()
        })
    }

    fn extend(
        roots: &[Root],
        from: usize,
        stack: &mut Vec<Root>,
        out: &mut Vec<Vec<Root>>,
    ) {
        out.push(stack.clone());
        for k in from..roots.len() {
            if compatible(stack, roots[k]) {
                stack.push(roots[k]);
                extend(roots, k + 1, stack, out);
                stack.pop();
            }
        }
    }

    extend(roots, 0, &mut stack, &mut out);
    out.sort_by_key(|v| v.len()); // stable: lex order kept within a size class
    out.into_iter()
        .map(|v| RookPlacement::new(system, &v).expect("enumeration emits valid placements"))
        .collect()
}

/// Coefficient assignments ξ: D → F_p^× in lexicographic order. The empty
/// placement yields the single empty assignment.
pub fn xi_assignments(placement_len: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..placement_len {
        let mut next = Vec::new();
        for prefix in &out {
            for v in 1..p {
                let mut w = prefix.clone();
                w.push(v);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::parse_root_list;

    fn b(n: usize) -> RootSystem {
        RootSystem::new(Family::B, n).unwrap()
    }

    fn d(n: usize) -> RootSystem {
        RootSystem::new(Family::D, n).unwrap()
    }

    fn place(sys: &RootSystem, tokens: &str) -> RookPlacement {
        RookPlacement::new(sys, &parse_root_list(tokens).unwrap()).unwrap()
    }

    #[test]
    fn validation_errors() {
        let sys = b(2);
        assert_eq!(
            RookPlacement::new(&sys, &[Root::Diff(1, 2), Root::Sum(1, 2)]),
            Err(PlacementError::ColClash(1))
        );
        assert_eq!(
            RookPlacement::new(&sys, &[Root::Short(1), Root::Short(2)]),
            Err(PlacementError::RowClash(0))
        );
        assert_eq!(
            RookPlacement::new(&sys, &[Root::Diff(1, 2), Root::Short(2)]),
            Err(PlacementError::NonOrthogonal(Root::Diff(1, 2), Root::Short(2)))
        );
        assert_eq!(
            RookPlacement::new(&sys, &[Root::Diff(1, 3)]),
            Err(PlacementError::RootNotInSystem(Root::Diff(1, 3)))
        );
        assert_eq!(
            RookPlacement::new(&sys, &[Root::Short(1), Root::Short(1)]),
            Err(PlacementError::DuplicateRoot(Root::Short(1)))
        );
    }

    #[test]
    fn validation_sorts_by_column() {
        let sys = b(6);
        let p = RookPlacement::new(
            &sys,
            &[Root::Sum(3, 5), Root::Short(1), Root::Sum(2, 6)],
        )
        .unwrap();
        assert_eq!(
            p.roots(),
            &[Root::Short(1), Root::Sum(2, 6), Root::Sum(3, 5)]
        );
    }

    #[test]
    fn battleship_b2_short() {
        let sys = b(2);
        let diag = place(&sys, "e1").battleship().unwrap();
        assert_eq!(diag.mark(Root::Short(1)), Mark::Cross);
        assert_eq!(diag.mark(Root::Diff(1, 2)), Mark::Plus);
        assert_eq!(diag.mark(Root::Short(2)), Mark::Minus);
        assert_eq!(diag.mark(Root::Sum(1, 2)), Mark::Dot);
    }

    #[test]
    fn battleship_empty_is_all_dots() {
        for sys in [b(3), d(4)] {
            let diag = place(&sys, "").battleship().unwrap();
            assert!(diag.marks().iter().all(|&m| m == Mark::Dot));
            assert_eq!(place(&sys, "").dim_via_diagram().unwrap(), 0);
        }
    }

    #[test]
    fn battleship_example_3_1_counts() {
        let diag = place(&b(6), "e1, e2+e5, e3-e6").battleship().unwrap();
        assert_eq!(diag.count(Mark::Cross), 3);
        assert_eq!(diag.plus_count(), 10);
        assert_eq!(diag.minus_count(), 10);
        assert_eq!(diag.count(Mark::Dot), 13);
    }

    #[test]
    fn dims_on_paper_examples() {
        assert_eq!(place(&b(6), "e1, e2+e6, e3+e5").dim_via_diagram().unwrap(), 18);
        assert_eq!(place(&b(6), "e1, e2+e6, e3+e5").dim_via_weyl(), 18);
        assert_eq!(place(&b(6), "e1, e2+e5, e3-e6").dim_via_diagram().unwrap(), 20);
        assert_eq!(place(&b(6), "e1, e2+e5, e3-e6").dim_via_weyl(), 20);
        assert_eq!(place(&b(2), "e1-e2").dim_via_diagram().unwrap(), 0);
        assert_eq!(place(&b(2), "e1").dim_via_weyl(), 2);
    }

    #[test]
    fn polarization_roots_examples() {
        let p = place(&b(2), "e1").polarization_roots().unwrap();
        assert_eq!(p, vec![Root::Diff(1, 2), Root::Short(1), Root::Sum(1, 2)]);

        let sys = b(3);
        let all = place(&sys, "").polarization_roots().unwrap();
        assert_eq!(all, sys.positive_roots().to_vec());

        let p = place(&b(6), "e1, e2+e5, e3-e6").polarization_roots().unwrap();
        assert_eq!(p.len(), 26);
    }

    #[test]
    fn plus_partner_examples() {
        assert_eq!(
            place(&b(2), "e1").plus_partner(Root::Diff(1, 2)).unwrap(),
            Root::Short(2)
        );
        assert_eq!(
            place(&b(2), "e1+e2").plus_partner(Root::Short(1)).unwrap(),
            Root::Short(2)
        );
        assert_eq!(
            place(&b(6), "e1, e2+e5, e3-e6")
                .plus_partner(Root::Diff(2, 3))
                .unwrap(),
            Root::Sum(3, 5)
        );
        assert_eq!(
            place(&b(2), "e1").plus_partner(Root::Sum(1, 2)),
            Err(PlacementError::NotPlusMarked(Root::Sum(1, 2)))
        );
    }

    #[test]
    fn enumerate_b2() {
        let sys = b(2);
        let all = enumerate_placements(&sys);
        let got: Vec<Vec<Root>> = all.iter().map(|p| p.roots().to_vec()).collect();
        assert_eq!(
            got,
            vec![
                vec![],
                vec![Root::Diff(1, 2)],
                vec![Root::Short(1)],
                vec![Root::Sum(1, 2)],
                vec![Root::Short(2)],
            ]
        );
    }

    #[test]
    fn enumerate_matches_subset_oracle() {
        // brute force over all subsets for small systems
        for sys in [b(3), d(3), d(2)] {
            let roots = sys.positive_roots();
            let mut count = 0usize;
            for mask in 0..(1u32 << roots.len()) {
                let subset: Vec<Root> = (0..roots.len())
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| roots[k])
                    .collect();
                if RookPlacement::new(&sys, &subset).is_ok() {
                    count += 1;
                }
            }
            assert_eq!(enumerate_placements(&sys).len(), count);
        }
    }

    #[test]
    fn render_text_b2() {
        let text = place(&b(2), "e1").battleship().unwrap().render_text();
        let expected =
            "      1  2\n   1\n   2  +\n   0  x  -\n  -2  .  0\n  -1  0\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn render_json_round_trip() {
        for tokens in ["", "e1", "e1, e2+e5, e3-e6"] {
            let diag = place(&b(6), tokens).battleship().unwrap();
            let json = diag.render_json();
            let marks = marks_from_json(&json).unwrap();
            for &r in diag.system().positive_roots() {
                assert_eq!(marks[&r], diag.mark(r));
            }
        }
    }

    #[test]
    fn xi_assignment_counts() {
        assert_eq!(xi_assignments(0, 5), vec![Vec::<u64>::new()]);
        assert_eq!(xi_assignments(2, 5).len(), 16);
    }
}
