//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; there is no
//! floating point anywhere in the crate. Matrices are small and dense, so the
//! algorithms favour clarity over asymptotics.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;
/// Integer coordinates in the fixed lattice basis.
pub type Vector = Vec<Int>;
/// Rational coordinates in the fixed lattice basis.
pub type RatVector = Vec<Rat>;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_from_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn ivec(xs: &[i64]) -> Vector {
    xs.iter().map(|&x| Int::from(x)).collect()
}

pub fn rvec(xs: &[i64]) -> RatVector {
    xs.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

pub fn to_rat(v: &[Int]) -> RatVector {
    v.iter().map(rat_from_int).collect()
}

/// Returns the integer vector if every coordinate is integral.
pub fn to_int_exact(v: &[Rat]) -> Option<Vector> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn to_i64(x: &Int) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
}

pub fn dot<T: Clone + Num>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn is_zero_vec<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Nonnegative gcd of all coordinates (0 for the zero vector).
pub fn vec_gcd(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[Int]) -> bool {
    vec_gcd(v).is_one()
}

/// Divides out the gcd of the coordinates, keeping the direction.
pub fn primitive_part(v: &[Int]) -> Vector {
    let g = vec_gcd(v);
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// The primitive integer vector positively proportional to `v`.
pub fn primitive_from_rat(v: &[Rat]) -> Vector {
    let l = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vector = v.iter().map(|x| (x * rat_from_int(&l)).to_integer()).collect();
    primitive_part(&scaled)
}

pub fn scale_vec(k: &Int, v: &[Int]) -> Vector {
    v.iter().map(|x| k * x).collect()
}

pub fn add_vec<T: Clone + Num>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub_vec<T: Clone + Num>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn neg_vec(v: &[Int]) -> Vector {
    v.iter().map(|x| -x).collect()
}

/// True when `a` and `b` span the same line.
pub fn proportional(a: &[Int], b: &[Int]) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if let Some(bad) = cols.iter().find(|col| col.len() != r) {
            return Err(Error::DimensionMismatch { expected: r, got: bad.len() });
        }
        Ok(Matrix::from_fn(r, c, |i, j| cols[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Principal submatrix on the given index set.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<T: Clone + Num> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self[(i, k)].clone() * other[(k, j)].clone()
            })
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - other[(i, j)].clone())
    }

    pub fn scale(&self, k: &T) -> Matrix<T> {
        self.map(|x| x.clone() * k.clone())
    }

    pub fn pow(&self, e: u32) -> Matrix<T> {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.rows)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix<Int> {
    Matrix::from_rows(rows.iter().map(|r| ivec(r)).collect()).expect("ragged matrix literal")
}

pub fn to_rat_matrix(m: &Matrix<Int>) -> Matrix<Rat> {
    m.map(rat_from_int)
}

/// Integer matrix if every entry is integral.
pub fn to_int_matrix(m: &Matrix<Rat>) -> Option<Matrix<Int>> {
    if m.data.iter().all(|x| x.is_integer()) {
        Some(m.map(|x| x.to_integer()))
    } else {
        None
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix<Rat>) -> (Matrix<Rat>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..a.cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..a.rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = a[(i, c)].clone();
                for j in c..a.cols {
                    let t = &f * &a[(r, j)];
                    a[(i, j)] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix<Rat>) -> usize {
    rref(m).1.len()
}

pub fn rank_of_vectors(vs: &[Vector]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let m = Matrix::from_rows(vs.iter().map(|v| to_rat(v)).collect()).expect("ragged vectors");
    rank(&m)
}

/// Basis of the right null space `{x : m x = 0}`.
pub fn kernel(m: &Matrix<Rat>) -> Vec<RatVector> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); m.cols];
            x[f] = Rat::one();
            for (k, &p) in pivots.iter().enumerate() {
                x[p] = -r[(k, f)].clone();
            }
            x
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    Unique(RatVector),
    /// A particular solution plus a nonzero kernel basis.
    Many(RatVector, Vec<RatVector>),
    Inconsistent,
}

/// Solves `a x = b` exactly.
pub fn solve(a: &Matrix<Rat>, b: &[Rat]) -> Solution {
    assert_eq!(a.rows, b.len());
    let aug = Matrix::from_fn(a.rows, a.cols + 1, |i, j| {
        if j < a.cols {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&a.cols) {
        return Solution::Inconsistent;
    }
    let mut x = vec![Rat::zero(); a.cols];
    for (k, &p) in pivots.iter().enumerate() {
        x[p] = r[(k, a.cols)].clone();
    }
    let ker = kernel(a);
    if ker.is_empty() {
        Solution::Unique(x)
    } else {
        Solution::Many(x, ker)
    }
}

pub fn inverse(m: &Matrix<Rat>) -> Option<Matrix<Rat>> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows;
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else if j - n == i {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
}

pub fn determinant(m: &Matrix<Rat>) -> Rat {
    assert!(m.is_square());
    let mut a = m.clone();
    let n = a.rows;
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[(i, c)].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let piv = a[(c, c)].clone();
        det *= &piv;
        for i in c + 1..n {
            if !a[(i, c)].is_zero() {
                let f = &a[(i, c)] / &piv;
                for j in c..n {
                    let t = &f * &a[(c, j)];
                    a[(i, j)] -= t;
                }
            }
        }
    }
    det
}

pub fn determinant_int(m: &Matrix<Int>) -> Int {
    determinant(&to_rat_matrix(m)).to_integer()
}

/// Counts `(positive, negative, zero)` squares of a symmetric matrix by
/// congruence diagonalization. A zero diagonal with a nonzero off-diagonal
/// entry `(i, j)` is repaired by the basis change `e_i <- e_i + e_j`.
pub fn inertia(m: &Matrix<Rat>) -> (usize, usize, usize) {
    assert!(m.is_symmetric(), "inertia requires a symmetric matrix");
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..a.rows).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[(i, i)].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().copied().find_map(|i| {
                    active.iter().copied().find(|&j| j != i && !a[(i, j)].is_zero()).map(|j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                // row_i += row_j, col_i += col_j
                for &k in &active {
                    let v = a[(j, k)].clone();
                    a[(i, k)] += v;
                }
                for &k in &active {
                    let v = a[(k, j)].clone();
                    a[(k, i)] += v;
                }
                i
            }
        };
        let d = a[(p, p)].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if a[(i, p)].is_zero() {
                continue;
            }
            let f = &a[(i, p)] / &d;
            for &j in &active {
                let t = &f * &a[(p, j)];
                a[(i, j)] -= t;
            }
        }
    }
    let zero = m.rows - pos - neg;
    (pos, neg, zero)
}

/// Diagonal of the Smith normal form, as nonnegative integers
/// (`min(rows, cols)` entries, zeros last).
pub fn smith_divisors(m: &Matrix<Int>) -> Vec<Int> {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let n = r.min(c);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if !a[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (0..n).map(|k| a[(k, k)].abs()).collect();
            };
            a.swap_rows(t, bi);
            for i in 0..r {
                a.data.swap(i * c + t, i * c + bj);
            }
            let piv = a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..r {
                let q = a[(i, t)].div_floor(&piv);
                if !q.is_zero() {
                    for j in t..c {
                        let v = &q * &a[(t, j)];
                        a[(i, j)] -= v;
                    }
                }
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..c {
                let q = a[(t, j)].div_floor(&piv);
                if !q.is_zero() {
                    for i in t..r {
                        let v = &q * &a[(i, t)];
                        a[(i, j)] -= v;
                    }
                }
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    for j in t..c {
                        let v = a[(i, j)].clone();
                        a[(t, j)] += v;
                    }
                }
                None => break,
            }
        }
    }
    (0..n).map(|k| a[(k, k)].abs()).collect()
}

/// Lower-triangular column Hermite form `H = B U` of a nonsingular square
/// integer matrix (`U` unimodular), with positive diagonal.
pub fn column_hermite(b: &Matrix<Int>) -> Result<Matrix<Int>> {
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows, cols: b.cols });
    }
    let n = b.rows;
    let mut a = b.clone();
    for i in 0..n {
        for j in i + 1..n {
            if a[(i, j)].is_zero() {
                continue;
            }
            let (x, y) = (a[(i, i)].clone(), a[(i, j)].clone());
            let eg = x.extended_gcd(&y);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let (u, v) = (-(&y / &g), &x / &g);
            for k in 0..n {
                let ci = a[(k, i)].clone();
                let cj = a[(k, j)].clone();
                a[(k, i)] = &s * &ci + &t * &cj;
                a[(k, j)] = &u * &ci + &v * &cj;
            }
        }
        if a[(i, i)].is_zero() {
            return Err(Error::Degenerate);
        }
        if a[(i, i)].is_negative() {
            for k in 0..n {
                a[(k, i)] = -a[(k, i)].clone();
            }
        }
        let d = a[(i, i)].clone();
        for j in 0..i {
            let q = a[(i, j)].div_floor(&d);
            if !q.is_zero() {
                for k in 0..n {
                    let v = &q * &a[(k, i)];
                    a[(k, j)] -= v;
                }
            }
        }
    }
    Ok(a)
}

/// Canonical representative of `x` modulo the column span of a lower
/// triangular Hermite form.
pub fn reduce_mod_hermite(h: &Matrix<Int>, x: &[Int]) -> Vector {
    let mut y = x.to_vec();
    for i in 0..h.rows {
        let q = y[i].div_floor(&h[(i, i)]);
        if !q.is_zero() {
            for k in i..h.rows {
                let v = &q * &h[(k, i)];
                y[k] -= v;
            }
        }
    }
    y
}

/// `floor(sqrt(q))` for a nonnegative rational.
pub fn floor_sqrt(q: &Rat) -> Int {
    if !q.is_positive() {
        return Int::zero();
    }
    let prod = q.numer() * q.denom();
    prod.sqrt() / q.denom()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_example_gram() {
        let g = int_matrix(&[&[2, -2, -2], &[-2, 2, -2], &[-2, -2, 2]]);
        assert_eq!(smith_divisors(&g), ivec(&[2, 4, 4]));
        assert_eq!(determinant_int(&g), int(-32));
    }

    #[test]
    fn smith_handles_rectangular_and_singular() {
        let m = int_matrix(&[&[2, 4, 4], &[-6, 6, 12]]);
        // 2x3: gcd of entries 2, gcd of 2-minors 36 / ... → (2, 6)
        assert_eq!(smith_divisors(&m), ivec(&[2, 6]));
        let z = int_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(smith_divisors(&z), ivec(&[1, 0]));
    }

    #[test]
    fn inertia_with_zero_diagonal() {
        let u = to_rat_matrix(&int_matrix(&[&[0, -1], &[-1, 0]]));
        assert_eq!(inertia(&u), (1, 1, 0));
        let g = to_rat_matrix(&int_matrix(&[&[2, -2, -2], &[-2, 2, -2], &[-2, -2, 2]]));
        assert_eq!(inertia(&g), (2, 1, 0));
        let d = to_rat_matrix(&int_matrix(&[&[0, 0], &[0, 0]]));
        assert_eq!(inertia(&d), (0, 0, 2));
        let s = to_rat_matrix(&int_matrix(&[&[2, -2], &[-2, 2]]));
        assert_eq!(inertia(&s), (1, 0, 1));
    }

    #[test]
    fn kernel_and_solve() {
        let m = to_rat_matrix(&int_matrix(&[&[1, 1, 0], &[0, 1, 1]]));
        let k = kernel(&m);
        assert_eq!(k, vec![rvec(&[1, -1, 1])]);
        match solve(&m, &rvec(&[2, 2])) {
            Solution::Many(x, ker) => {
                assert_eq!(m.mul_vec(&x), rvec(&[2, 2]));
                assert_eq!(ker.len(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let sing = to_rat_matrix(&int_matrix(&[&[1, 1], &[1, 1]]));
        assert_eq!(solve(&sing, &rvec(&[1, 2])), Solution::Inconsistent);
    }

    #[test]
    fn hermite_reduction_is_canonical() {
        let b = int_matrix(&[&[2, 1], &[0, 3]]);
        let h = column_hermite(&b).unwrap();
        assert_eq!(determinant_int(&h).abs(), int(6));
        let x = ivec(&[5, 7]);
        let y = add_vec(&x, &b.mul_vec(&ivec(&[3, -2])));
        assert_eq!(reduce_mod_hermite(&h, &x), reduce_mod_hermite(&h, &y));
    }

    #[test]
    fn primitive_helpers() {
        assert_eq!(primitive_from_rat(&[rat(1, 2), rat(1, 3), rat(0, 1)]), ivec(&[3, 2, 0]));
        assert_eq!(primitive_part(&ivec(&[-4, 6])), ivec(&[-2, 3]));
        assert!(proportional(&ivec(&[2, 4]), &ivec(&[-1, -2])));
        assert_eq!(floor_sqrt(&rat(17, 2)), int(2));
        assert_eq!(floor_sqrt(&rat(9, 1)), int(3));
    }
}
