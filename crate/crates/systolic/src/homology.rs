//! First integer homology via Smith normal form of the boundary matrices.
//! Plain integer row/column reduction with overflow and size watchdogs;
//! enough for desk-scale complexes.

use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Rows or columns beyond this bound abort with a capacity error.
pub const MAX_BOUNDARY_DIM: usize = 5000;

#[derive(Debug, Clone, Serialize)]
pub struct HomologyReport {
    /// True iff rank 0 and no torsion.
    pub trivial: bool,
    pub rank: usize,
    /// Non-unit invariant factors of the second boundary map.
    pub torsion: Vec<u64>,
}

struct IntMat {
    rows: usize,
    cols: usize,
    a: Vec<i64>,
}

impl IntMat {
    fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: i64) -> Result<()> {
        for c in 0..self.cols {
            let s = self.get(source, c);
            let t = self.get(target, c);
            let v = factor
                .checked_mul(s)
                .and_then(|x| t.checked_add(x))
                .ok_or_else(overflow)?;
            self.set(target, c, v);
        }
        Ok(())
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, factor: i64) -> Result<()> {
        for r in 0..self.rows {
            let s = self.get(r, source);
            let t = self.get(r, target);
            let v = factor
                .checked_mul(s)
                .and_then(|x| t.checked_add(x))
                .ok_or_else(overflow)?;
            self.set(r, target, v);
        }
        Ok(())
    }
}

fn overflow() -> Error {
    Error::Capacity {
        what: "integer entry during Smith reduction".into(),
        bound: i64::MAX as usize,
        actual: usize::MAX,
    }
}

/// Diagonalizes the matrix and returns its non-zero invariant factors, each
/// dividing the next.
fn smith_invariant_factors(mut m: IntMat) -> Result<Vec<u64>> {
    let mut factors = Vec::new();
    let limit = m.rows.min(m.cols);
    let mut k = 0;
    while k < limit {
        // smallest non-zero entry of the trailing submatrix as pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..m.rows {
            for j in k..m.cols {
                let v = m.get(i, j).abs();
                if v != 0 && pivot.is_none_or(|(pi, pj)| v < m.get(pi, pj).abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        m.swap_rows(k, pi);
        m.swap_cols(k, pj);

        loop {
            let mut dirty = false;
            for i in k + 1..m.rows {
                let v = m.get(i, k);
                if v != 0 {
                    let q = v.div_euclid(m.get(k, k));
                    m.add_row_multiple(i, k, -q)?;
                    if m.get(i, k) != 0 {
                        // remainder becomes the new, smaller pivot
                        m.swap_rows(k, i);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..m.cols {
                let v = m.get(k, j);
                if v != 0 {
                    let q = v.div_euclid(m.get(k, k));
                    m.add_col_multiple(j, k, -q)?;
                    if m.get(k, j) != 0 {
                        m.swap_cols(k, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the rest by the pivot
            let p = m.get(k, k);
            let culprit = (k + 1..m.rows)
                .flat_map(|i| (k + 1..m.cols).map(move |j| (i, j)))
                .find(|&(i, j)| m.get(i, j) % p != 0);
            match culprit {
                Some((i, _)) => {
                    m.add_row_multiple(k, i, 1)?;
                }
                None => break,
            }
        }
        factors.push(m.get(k, k).unsigned_abs());
        k += 1;
    }
    Ok(factors)
}

/// Boundary matrix from d-faces to (d-1)-faces over the canonical bases.
fn boundary_matrix(k: &Complex, d: usize) -> Result<IntMat> {
    let rows: Vec<&Simplex> = k.faces_of_dim(d - 1).collect();
    let cols: Vec<&Simplex> = k.faces_of_dim(d).collect();
    if rows.len() > MAX_BOUNDARY_DIM || cols.len() > MAX_BOUNDARY_DIM {
        return Err(Error::Capacity {
            what: format!("boundary matrix in dimension {d}"),
            bound: MAX_BOUNDARY_DIM,
            actual: rows.len().max(cols.len()),
        });
    }
    let row_index: std::collections::HashMap<&Simplex, usize> =
        rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut m = IntMat::zero(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (drop, face) in s.facets().iter().enumerate() {
            // facets() removes vertex `drop` counted from the smallest
            let sign = if drop % 2 == 0 { 1 } else { -1 };
            let i = row_index[face];
            m.set(i, j, sign);
        }
    }
    Ok(m)
}

/// Rank and torsion of H1 over the integers.
pub fn first_homology(k: &Complex) -> Result<HomologyReport> {
    let edges = k.faces_of_dim(1).count();
    if edges == 0 {
        return Ok(HomologyReport {
            trivial: true,
            rank: 0,
            torsion: Vec::new(),
        });
    }
    let rank_d1 = smith_invariant_factors(boundary_matrix(k, 1)?)?.len();
    let d2_factors = smith_invariant_factors(boundary_matrix(k, 2)?)?;
    let rank_d2 = d2_factors.len();
    let rank = edges - rank_d1 - rank_d2;
    let torsion: Vec<u64> = d2_factors.into_iter().filter(|f| *f > 1).collect();
    Ok(HomologyReport {
        trivial: rank == 0 && torsion.is_empty(),
        rank,
        torsion,
    })
}
