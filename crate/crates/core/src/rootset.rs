use num_traits::Signed;

use crate::arith::{is_zero_vec, proportional, rank_of_vectors, Int, Matrix, Vector};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// An ordered finite list of wall vectors: each spacelike and
/// crystallographic, no two proportional.
///
/// Non-obtuseness is checked separately by [`RootSet::check_non_obtuse`],
/// since some acceptable-set computations deliberately mix walls from
/// adjacent chambers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    roots: Vec<Vector>,
}

impl RootSet {
    pub fn new(l: &Lattice, roots: Vec<Vector>) -> Result<Self> {
        for r in &roots {
            if r.len() != l.rank() {
                return Err(Error::DimensionMismatch { expected: l.rank(), got: r.len() });
            }
            if is_zero_vec(r) {
                return Err(Error::ZeroVector);
            }
            if !l.is_crystallographic(r)? {
                return Err(Error::NotCrystallographic(r.clone()));
            }
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if proportional(&roots[i], &roots[j]) {
                    return Err(Error::Proportional(i, j));
                }
            }
        }
        Ok(RootSet { roots })
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn gram(&self, l: &Lattice) -> Matrix<Int> {
        gram_of(l, &self.roots)
    }

    pub fn norms(&self, l: &Lattice) -> Vec<Int> {
        self.roots.iter().map(|r| l.norm(r)).collect()
    }

    pub fn spans(&self, l: &Lattice) -> bool {
        rank_of_vectors(&self.roots) == l.rank()
    }

    /// First pair `(i, j)` with `S(r_i, r_j) > 0`, as an error.
    pub fn check_non_obtuse(&self, l: &Lattice) -> Result<()> {
        for i in 0..self.roots.len() {
            for j in i + 1..self.roots.len() {
                let v = l.form(&self.roots[i], &self.roots[j]);
                if v.is_positive() {
                    return Err(Error::Obtuse { i, j, value: v });
                }
            }
        }
        Ok(())
    }

    pub fn into_roots(self) -> Vec<Vector> {
        self.roots
    }
}

pub fn gram_of(l: &Lattice, vs: &[Vector]) -> Matrix<Int> {
    Matrix::from_fn(vs.len(), vs.len(), |i, j| l.form(&vs[i], &vs[j]))
}

/// Connectedness of the graph on indices with an edge wherever the Gram
/// entry is nonzero.
pub fn gram_graph_connected(gram: &Matrix<Int>, idx: &[usize]) -> bool {
    use num_traits::Zero;
    if idx.is_empty() {
        return true;
    }
    let mut seen = vec![false; idx.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(a) = stack.pop() {
        for b in 0..idx.len() {
            if !seen[b] && !gram[(idx[a], idx[b])].is_zero() {
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    seen.into_iter().all(|s| s)
}
