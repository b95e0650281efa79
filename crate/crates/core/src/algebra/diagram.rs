//! Rectangular grids of algebras: coarsenings along rows, restrictions
//! (followed by coarsening) down columns.

use super::{check_commutes, Algebra, AlgebraError, Coset, Hom};

#[derive(Clone, Debug)]
pub struct Grid {
    nodes: Vec<Vec<Algebra>>,
    horizontal: Vec<Vec<Hom>>,
    vertical: Vec<Vec<Hom>>,
}

/// The unit square with top-left corner at `(row, col)` and its two paths
/// to the bottom-right corner.
#[derive(Clone, Debug)]
pub struct Square {
    pub row: usize,
    pub col: usize,
    pub right_then_down: Hom,
    pub down_then_right: Hom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareOutcome {
    pub row: usize,
    pub col: usize,
    pub commutes: bool,
    pub samples: usize,
}

impl Grid {
    /// Rows share a carrier within themselves and get finer filters left to
    /// right; each lower row's carrier is a member of every filter above it,
    /// and the restricted upper filter is contained in the lower one. Every
    /// edge is built (and therefore checked) here.
    pub fn new(nodes: Vec<Vec<Algebra>>) -> Result<Grid, AlgebraError> {
        let width = nodes.first().map_or(0, Vec::len);
        if width == 0 || nodes.iter().any(|row| row.len() != width) {
            return Err(AlgebraError::MalformedGrid);
        }
        let horizontal = nodes
            .iter()
            .map(|row| {
                row.windows(2)
                    .map(|w| Hom::coarsen(&w[0], &w[1]))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let vertical = nodes
            .windows(2)
            .map(|rows| {
                rows[0]
                    .iter()
                    .zip(&rows[1])
                    .map(|(upper, lower)| Hom::between(upper, lower))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Grid {
            nodes,
            horizontal,
            vertical,
        })
    }

    pub fn rows(&self) -> usize {
        self.nodes.len()
    }

    pub fn cols(&self) -> usize {
        self.nodes[0].len()
    }

    pub fn node(&self, row: usize, col: usize) -> &Algebra {
        &self.nodes[row][col]
    }

    pub fn squares(&self) -> Result<Vec<Square>, AlgebraError> {
        let mut out = Vec::new();
        for row in 0..self.rows().saturating_sub(1) {
            for col in 0..self.cols().saturating_sub(1) {
                let right_then_down =
                    self.horizontal[row][col].compose(&self.vertical[row][col + 1])?;
                let down_then_right =
                    self.vertical[row][col].compose(&self.horizontal[row + 1][col])?;
                out.push(Square {
                    row,
                    col,
                    right_then_down,
                    down_then_right,
                });
            }
        }
        Ok(out)
    }

    /// Checks every unit square on the samples `sampler` draws from its
    /// top-left algebra.
    pub fn check(
        &self,
        mut sampler: impl FnMut(usize, &Square) -> Vec<Coset>,
    ) -> Result<Vec<SquareOutcome>, AlgebraError> {
        self.squares()?
            .iter()
            .enumerate()
            .map(|(index, square)| {
                let samples = sampler(index, square);
                let commutes =
                    check_commutes(&square.right_then_down, &square.down_then_right, &samples)?;
                Ok(SquareOutcome {
                    row: square.row,
                    col: square.col,
                    commutes,
                    samples: samples.len(),
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use std::slice;

    use super::*;
    use crate::element::Element;
    use crate::epset::EpSet;
    use crate::filter::Filter;

    fn ap(r: u64, p: u64) -> EpSet {
        EpSet::ap(r, p).unwrap()
    }

    fn gen(carrier: &EpSet, sets: &[EpSet]) -> Algebra {
        Algebra::new(Filter::generated(carrier, sets.to_vec()).unwrap())
    }

    #[test]
    fn frechet_column_grid() {
        // Γ = ℕ, Λ = ℕ ∖ {0, 1}: the Fréchet column is allowed
        let gamma = EpSet::naturals();
        let lambda = EpSet::from(2);
        let grid = Grid::new(vec![
            vec![
                Algebra::frechet(&gamma).unwrap(),
                gen(&gamma, &[ap(0, 2)]),
                gen(&gamma, &[ap(0, 6)]),
            ],
            vec![
                Algebra::frechet(&lambda).unwrap(),
                gen(&lambda, &[ap(0, 2).intersect(&lambda)]),
                gen(&lambda, &[ap(0, 6).intersect(&lambda)]),
            ],
        ])
        .unwrap();
        let outcomes = grid
            .check(|_, sq| {
                let a = sq.right_then_down.source();
                vec![
                    a.coset(Element::identity(a.carrier()).unwrap()).unwrap(),
                    a.coset(Element::indicator(&ap(1, 3), a.carrier()).unwrap())
                        .unwrap(),
                ]
            })
            .unwrap();
        assert_eq!(outcomes.len(), 2);
        assert!(outcomes.iter().all(|o| o.commutes));
    }

    #[test]
    fn rejects_bad_grids() {
        let nat = EpSet::naturals();
        let even = ap(0, 2);
        // the Fréchet filter on ℕ does not contain Even: no restriction edge
        let err = Grid::new(vec![
            vec![Algebra::frechet(&nat).unwrap()],
            vec![Algebra::frechet(&even).unwrap()],
        ]);
        assert!(err.is_err());
        // K on Even must contain G|Even = core AP(0,4)
        let err = Grid::new(vec![
            vec![gen(&nat, slice::from_ref(&even)), gen(&nat, &[ap(0, 4)])],
            vec![Algebra::frechet(&even).unwrap(), gen(&even, &[ap(2, 4)])],
        ]);
        assert!(matches!(err, Err(AlgebraError::NotSubfilter { .. })));
        assert!(matches!(
            Grid::new(vec![]),
            Err(AlgebraError::MalformedGrid)
        ));
    }
}
