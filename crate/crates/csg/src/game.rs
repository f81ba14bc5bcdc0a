//! Complete simple games as a type composition plus the matrix of
//! shift-minimal winning vectors, the canonical representation: validation,
//! winning/losing semantics, and derivation of maximal and shift-maximal
//! losing vectors.

use std::fmt;

use thiserror::Error;

use crate::vector::{CoalitionVector, TypeComposition, VectorGrid};

/// Grid sizes up to this get a precomputed winning table at construction.
pub const DEFAULT_MEMO_THRESHOLD: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("the matrix of shift-minimal winning vectors is empty")]
    EmptyMatrix,
    #[error("row {row} violates the class-size bounds")]
    BoundViolation { row: usize },
    #[error("rows {row_a} and {row_b} are comparable in the shift order")]
    NotIncomparable { row_a: usize, row_b: usize },
    #[error("no row separates class {class} from class {}", class + 1)]
    ClassSeparationFailure { class: usize },
    #[error("row {row} is not lexicographically above row {}", row + 1)]
    RowOrderViolation { row: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PredicateError {
    #[error("the zero vector is winning")]
    ZeroWinning,
    #[error("the full vector is losing")]
    FullLosing,
    #[error("predicate is not up-closed in the shift order: {lower} is winning but {upper} is losing")]
    NotUpClosed {
        lower: CoalitionVector,
        upper: CoalitionVector,
    },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

/// A complete simple game `(n̂, 𝒮)`. Immutable after validation; the
/// winning table, when present, is prebuilt, so games are safe to share
/// across threads.
#[derive(Clone)]
pub struct CompleteSimpleGame {
    composition: TypeComposition,
    smw: Vec<CoalitionVector>,
    grid: VectorGrid,
    table: Option<Vec<bool>>,
}

impl PartialEq for CompleteSimpleGame {
    fn eq(&self, other: &Self) -> bool {
        self.composition == other.composition && self.smw == other.smw
    }
}

impl Eq for CompleteSimpleGame {}

impl std::hash::Hash for CompleteSimpleGame {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.composition.hash(state);
        self.smw.hash(state);
    }
}

impl fmt::Debug for CompleteSimpleGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : ", self.composition)?;
        for (i, row) in self.smw.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{row}")?;
        }
        Ok(())
    }
}

impl CompleteSimpleGame {
    /// Checks the four characterization conditions in order (bounds,
    /// pairwise incomparability, class separation, row order) and reports
    /// the first violation. Row and class indices in errors are 1-based.
    pub fn validate(
        composition: TypeComposition,
        smw: Vec<CoalitionVector>,
    ) -> Result<Self, ValidationError> {
        Self::validate_with_threshold(composition, smw, DEFAULT_MEMO_THRESHOLD)
    }

    pub fn validate_with_threshold(
        composition: TypeComposition,
        smw: Vec<CoalitionVector>,
        memo_threshold: usize,
    ) -> Result<Self, ValidationError> {
        check_conditions(&composition, &smw)?;
        Ok(Self::from_validated(composition, smw, memo_threshold))
    }

    /// Construction for callers that guarantee the conditions hold
    /// (the enumerator maintains them incrementally).
    pub(crate) fn from_validated(
        composition: TypeComposition,
        smw: Vec<CoalitionVector>,
        memo_threshold: usize,
    ) -> Self {
        let grid = VectorGrid::new(&composition);
        let table = if grid.len() <= memo_threshold {
            Some(winning_table(&grid, &composition, &smw))
        } else {
            None
        };
        Self {
            composition,
            smw,
            grid,
            table,
        }
    }

    pub fn composition(&self) -> &TypeComposition {
        &self.composition
    }

    /// The rows of `𝒮`, lexicographically descending.
    pub fn smw_rows(&self) -> &[CoalitionVector] {
        &self.smw
    }

    pub fn grid(&self) -> &VectorGrid {
        &self.grid
    }

    /// True iff some shift-minimal winning row is `⪯ s`.
    /// `s` must be bound by the composition.
    pub fn is_winning(&self, s: &CoalitionVector) -> bool {
        assert!(
            self.composition.contains(s),
            "{s} is not bound by composition {}",
            self.composition
        );
        match &self.table {
            Some(t) => t[self.grid.index(s)],
            None => self.smw.iter().any(|row| row.shift_leq(s)),
        }
    }

    fn is_winning_idx(&self, idx: usize) -> bool {
        match &self.table {
            Some(t) => t[idx],
            None => {
                let v = self.grid.vector(idx);
                self.smw.iter().any(|row| row.shift_leq(&v))
            }
        }
    }

    /// All losing vectors whose every feasible unit increment is winning
    /// (the classic double loop over the whole grid; exponential in the
    /// agent count, intended for desk scale). Rows sorted lexicographically
    /// descending.
    pub fn maximal_losing(&self) -> Vec<CoalitionVector> {
        let parts = self.composition.parts();
        let mut out = Vec::new();
        for idx in 0..self.grid.len() {
            if self.is_winning_idx(idx) {
                continue;
            }
            let v = self.grid.vector(idx);
            let maximal = (0..parts.len()).all(|i| {
                if v.get(i) >= parts[i] {
                    return true;
                }
                let mut up = v.entries().to_vec();
                up[i] += 1;
                self.is_winning(&CoalitionVector::new(up))
            });
            if maximal {
                out.push(v);
            }
        }
        sort_lex_descending(&mut out);
        out
    }

    /// All shift-maximal losing vectors: losing, with every strictly
    /// shift-larger vector winning. A vector qualifies iff every feasible
    /// cover move (one unit added below capacity, or one unit moved from a
    /// class to a stronger one) lands on a winning vector. Rows sorted
    /// lexicographically descending.
    pub fn shift_maximal_losing(&self) -> Vec<CoalitionVector> {
        let mut out = Vec::new();
        for idx in 0..self.grid.len() {
            if self.is_winning_idx(idx) {
                continue;
            }
            let v = self.grid.vector(idx);
            if self.up_covers_all_winning(&v) {
                out.push(v);
            }
        }
        sort_lex_descending(&mut out);
        out
    }

    fn up_covers_all_winning(&self, v: &CoalitionVector) -> bool {
        let parts = self.composition.parts();
        let t = parts.len();
        let mut scratch = v.entries().to_vec();
        for i in 0..t {
            if v.get(i) < parts[i] {
                scratch[i] += 1;
                let winning = self.is_winning(&CoalitionVector::new(scratch.clone()));
                scratch[i] -= 1;
                if !winning {
                    return false;
                }
                // moving a unit here from any weaker class j > i
                for j in i + 1..t {
                    if v.get(j) == 0 {
                        continue;
                    }
                    scratch[i] += 1;
                    scratch[j] -= 1;
                    let winning = self.is_winning(&CoalitionVector::new(scratch.clone()));
                    scratch[i] -= 1;
                    scratch[j] += 1;
                    if !winning {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn sort_lex_descending(rows: &mut [CoalitionVector]) {
    rows.sort_by(|a, b| b.lex_cmp(a));
}

fn check_conditions(
    composition: &TypeComposition,
    smw: &[CoalitionVector],
) -> Result<(), ValidationError> {
    if smw.is_empty() {
        return Err(ValidationError::EmptyMatrix);
    }
    // (i) bounds
    for (i, row) in smw.iter().enumerate() {
        if !composition.contains(row) {
            return Err(ValidationError::BoundViolation { row: i + 1 });
        }
    }
    // (ii) pairwise incomparability
    for i in 0..smw.len() {
        for j in i + 1..smw.len() {
            if !smw[i].incomparable(&smw[j]) {
                return Err(ValidationError::NotIncomparable {
                    row_a: i + 1,
                    row_b: j + 1,
                });
            }
        }
    }
    // (iii) class separation
    let t = composition.class_count();
    if t == 1 {
        if smw[0].get(0) == 0 {
            return Err(ValidationError::ClassSeparationFailure { class: 1 });
        }
    } else {
        for j in 0..t - 1 {
            let separated = smw
                .iter()
                .any(|row| row.get(j) > 0 && row.get(j + 1) < composition.parts()[j + 1]);
            if !separated {
                return Err(ValidationError::ClassSeparationFailure { class: j + 1 });
            }
        }
    }
    // (iv) strictly descending lexicographic row order
    for i in 0..smw.len() - 1 {
        if smw[i].lex_cmp(&smw[i + 1]) != std::cmp::Ordering::Greater {
            return Err(ValidationError::RowOrderViolation { row: i + 1 });
        }
    }
    Ok(())
}

fn winning_table(
    grid: &VectorGrid,
    composition: &TypeComposition,
    smw: &[CoalitionVector],
) -> Vec<bool> {
    let _ = composition;
    let mut table = vec![false; grid.len()];
    for (idx, slot) in table.iter_mut().enumerate() {
        let v = grid.vector(idx);
        *slot = smw.iter().any(|row| row.shift_leq(&v));
    }
    table
}

/// Recovers the canonical game from a winning predicate over the grid of a
/// composition. The predicate must be up-closed in the shift order, false
/// on the zero vector, and true on the full vector; this is checked
/// exhaustively over the grid.
pub fn smw_from_winning_predicate<F>(
    composition: &TypeComposition,
    mut winning: F,
) -> Result<CompleteSimpleGame, PredicateError>
where
    F: FnMut(&CoalitionVector) -> bool,
{
    let grid = VectorGrid::new(composition);
    let table: Vec<bool> = (0..grid.len()).map(|i| winning(&grid.vector(i))).collect();
    if table[grid.index(&composition.zero_vector())] {
        return Err(PredicateError::ZeroWinning);
    }
    if !table[grid.index(&composition.full_vector())] {
        return Err(PredicateError::FullLosing);
    }
    let parts = composition.parts();
    let t = parts.len();
    // up-closure via cover moves
    for idx in 0..grid.len() {
        if !table[idx] {
            continue;
        }
        let v = grid.vector(idx);
        let mut scratch = v.entries().to_vec();
        for i in 0..t {
            if v.get(i) < parts[i] {
                scratch[i] += 1;
                let up = CoalitionVector::new(scratch.clone());
                if !table[grid.index(&up)] {
                    return Err(PredicateError::NotUpClosed {
                        lower: v.clone(),
                        upper: up,
                    });
                }
                scratch[i] -= 1;
                for j in i + 1..t {
                    if v.get(j) == 0 {
                        continue;
                    }
                    scratch[i] += 1;
                    scratch[j] -= 1;
                    let up = CoalitionVector::new(scratch.clone());
                    if !table[grid.index(&up)] {
                        return Err(PredicateError::NotUpClosed {
                            lower: v.clone(),
                            upper: up,
                        });
                    }
                    scratch[i] -= 1;
                    scratch[j] += 1;
                }
            }
        }
    }
    // shift-minimal winning rows: winning vectors whose every feasible
    // down move (remove a unit, or move one to a weaker class) is losing
    let mut rows = Vec::new();
    for idx in 0..grid.len() {
        if !table[idx] {
            continue;
        }
        let v = grid.vector(idx);
        let mut scratch = v.entries().to_vec();
        let mut minimal = true;
        'outer: for i in 0..t {
            if v.get(i) == 0 {
                continue;
            }
            scratch[i] -= 1;
            let down_winning = table[grid.index(&CoalitionVector::new(scratch.clone()))];
            scratch[i] += 1;
            if down_winning {
                minimal = false;
                break;
            }
            for j in i + 1..t {
                if v.get(j) >= parts[j] {
                    continue;
                }
                scratch[i] -= 1;
                scratch[j] += 1;
                let down_winning = table[grid.index(&CoalitionVector::new(scratch.clone()))];
                scratch[i] += 1;
                scratch[j] -= 1;
                if down_winning {
                    minimal = false;
                    break 'outer;
                }
            }
        }
        if minimal {
            rows.push(v);
        }
    }
    sort_lex_descending(&mut rows);
    Ok(CompleteSimpleGame::validate(composition.clone(), rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u32]) -> TypeComposition {
        TypeComposition::new(parts.to_vec()).unwrap()
    }

    fn v(entries: &[u32]) -> CoalitionVector {
        CoalitionVector::new(entries.to_vec())
    }

    fn game(parts: &[u32], rows: &[&[u32]]) -> CompleteSimpleGame {
        CompleteSimpleGame::validate(comp(parts), rows.iter().map(|r| v(r)).collect()).unwrap()
    }

    /// The weighted game with representation [2;2,2,1,1,0].
    fn example_weighted() -> CompleteSimpleGame {
        game(&[2, 2, 1], &[&[1, 0, 0], &[0, 2, 0]])
    }

    /// The smallest non-weighted complete simple game, (2,4).
    fn example_nonweighted() -> CompleteSimpleGame {
        game(&[2, 4], &[&[2, 0], &[0, 4]])
    }

    #[test]
    fn validates_known_games() {
        example_weighted();
        example_nonweighted();
    }

    #[test]
    fn validation_reports_first_violation() {
        assert_eq!(
            CompleteSimpleGame::validate(comp(&[1, 3]), vec![v(&[0, 2])]).unwrap_err(),
            ValidationError::ClassSeparationFailure { class: 1 }
        );
        assert_eq!(
            CompleteSimpleGame::validate(comp(&[2, 4]), vec![v(&[0, 4]), v(&[2, 0])]).unwrap_err(),
            ValidationError::RowOrderViolation { row: 1 }
        );
        assert_eq!(
            CompleteSimpleGame::validate(comp(&[2, 4]), vec![v(&[2, 5])]).unwrap_err(),
            ValidationError::BoundViolation { row: 1 }
        );
        assert_eq!(
            CompleteSimpleGame::validate(comp(&[2, 4]), vec![v(&[2, 2]), v(&[1, 2])]).unwrap_err(),
            ValidationError::NotIncomparable { row_a: 1, row_b: 2 }
        );
        assert_eq!(
            CompleteSimpleGame::validate(comp(&[3]), vec![]).unwrap_err(),
            ValidationError::EmptyMatrix
        );
    }

    #[test]
    fn winning_semantics() {
        let g = example_weighted();
        assert!(g.is_winning(&v(&[1, 1, 0])));
        assert!(!g.is_winning(&v(&[0, 0, 0])));
        assert!(g.is_winning(&v(&[2, 2, 1])));
        assert!(!g.is_winning(&v(&[0, 1, 1])));
    }

    #[test]
    fn winning_agrees_with_and_without_table() {
        let comp_ = comp(&[2, 4]);
        let rows = vec![v(&[2, 0]), v(&[0, 4])];
        let with = CompleteSimpleGame::validate(comp_.clone(), rows.clone()).unwrap();
        let without = CompleteSimpleGame::validate_with_threshold(comp_.clone(), rows, 0).unwrap();
        let grid = VectorGrid::new(&comp_);
        for s in grid.iter() {
            assert_eq!(with.is_winning(&s), without.is_winning(&s));
        }
    }

    #[test]
    fn maximal_losing_of_small_games() {
        // losing vectors with every feasible unit increment winning
        assert_eq!(
            example_nonweighted().maximal_losing(),
            vec![v(&[1, 2]), v(&[0, 3])]
        );
        let g = game(&[3, 4], &[&[2, 2]]);
        assert_eq!(
            g.maximal_losing(),
            vec![v(&[3, 0]), v(&[2, 1]), v(&[1, 4])]
        );
        // unanimity: the only winning vector is the full one
        let u = game(&[2, 3, 1], &[&[2, 3, 1]]);
        assert_eq!(
            u.maximal_losing(),
            vec![v(&[2, 3, 0]), v(&[2, 2, 1]), v(&[1, 3, 1])]
        );
    }

    #[test]
    fn shift_maximal_losing_of_small_games() {
        assert_eq!(example_nonweighted().shift_maximal_losing(), vec![v(&[1, 2])]);
        assert_eq!(example_weighted().shift_maximal_losing(), vec![v(&[0, 1, 1])]);
        let g = game(&[3, 4], &[&[2, 2]]);
        assert_eq!(g.shift_maximal_losing(), vec![v(&[3, 0]), v(&[1, 4])]);
    }

    #[test]
    fn sml_is_subset_of_maximal_losing() {
        for g in [
            example_weighted(),
            example_nonweighted(),
            game(&[3, 4], &[&[2, 2]]),
            game(&[1, 1, 5], &[&[1, 0, 2], &[0, 1, 3]]),
        ] {
            let ml = g.maximal_losing();
            for row in g.shift_maximal_losing() {
                assert!(ml.contains(&row), "{row} missing from maximal losing");
            }
        }
    }

    /// Exhaustive cross-check of the cover-move computation against the
    /// definition (every strictly shift-larger vector is winning).
    #[test]
    fn sml_matches_bruteforce_definition() {
        for g in [
            example_weighted(),
            example_nonweighted(),
            game(&[3, 4], &[&[2, 2]]),
            game(&[1, 1], &[&[1, 1]]),
            game(&[2, 2, 2], &[&[2, 0, 0], &[1, 2, 0], &[0, 2, 2]]),
        ] {
            let grid = g.grid().clone();
            let mut brute: Vec<CoalitionVector> = grid
                .iter()
                .filter(|a| !g.is_winning(a))
                .filter(|a| {
                    grid.iter()
                        .filter(|b| b != a && a.shift_leq(b))
                        .all(|b| g.is_winning(&b))
                })
                .collect();
            sort_lex_descending(&mut brute);
            assert_eq!(g.shift_maximal_losing(), brute, "game {g:?}");
        }
    }

    #[test]
    fn unanimity_sml_strictly_inside_maximal_losing() {
        let u = game(&[1, 1], &[&[1, 1]]);
        assert_eq!(u.maximal_losing(), vec![v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(u.shift_maximal_losing(), vec![v(&[1, 0])]);
    }

    #[test]
    fn predicate_round_trip_recovers_rows() {
        for g in [
            example_weighted(),
            example_nonweighted(),
            game(&[3, 4], &[&[2, 2]]),
        ] {
            let back = smw_from_winning_predicate(g.composition(), |s| g.is_winning(s)).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn predicate_requires_up_closure() {
        let c = comp(&[2, 2]);
        // "exactly two agents of class 1" is not up-closed
        let err = smw_from_winning_predicate(&c, |s| s.get(0) == 2 && s.get(1) == 0).unwrap_err();
        assert!(matches!(err, PredicateError::NotUpClosed { .. }));
        let err = smw_from_winning_predicate(&c, |_| true).unwrap_err();
        assert_eq!(err, PredicateError::ZeroWinning);
        let err = smw_from_winning_predicate(&c, |_| false).unwrap_err();
        assert_eq!(err, PredicateError::FullLosing);
    }

    #[test]
    fn predicate_unanimity() {
        let c = comp(&[2, 3]);
        let full = c.full_vector();
        let g = smw_from_winning_predicate(&c, |s| *s == full).unwrap();
        assert_eq!(g.smw_rows(), &[v(&[2, 3])]);
    }

    #[test]
    fn merged_classes_are_rejected() {
        // "any 2 of the 4 agents" over (2,2) really has one type, not two
        let c = comp(&[2, 2]);
        let err = smw_from_winning_predicate(&c, |s| s.sum() >= 2).unwrap_err();
        assert_eq!(
            err,
            PredicateError::Validation(ValidationError::ClassSeparationFailure { class: 1 })
        );
    }
}
