//! Integral symmetric bilinear forms: invariants, reflections and the
//! crystallographic condition.

use std::path::Path;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;

use crate::arith::{
    determinant_int, inertia, inverse, is_primitive, is_zero_vec, rat_from_int, smith_divisors,
    to_int_matrix, to_rat_matrix, vec_gcd, Int, Matrix, Rat, Vector,
};
use crate::error::{Error, Result};

/// A free Z-module with a fixed basis and the Gram matrix of a nondegenerate
/// integral symmetric bilinear form `S` on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: Matrix<Int>,
    name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvariants {
    /// `(positive squares, negative squares)`.
    pub signature: (usize, usize),
    pub even: bool,
    pub determinant: Int,
    /// Invariant factors of the Gram matrix; the discriminant group is
    /// `⊕ Z/d_i`.
    pub smith_divisors: Vec<Int>,
    /// Exponent of the discriminant group (largest Smith divisor).
    pub exponent: Int,
}

/// An integral matrix acting on lattice coordinates (columns are images of
/// basis vectors).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Isometry(pub Matrix<Int>);

impl Isometry {
    pub fn identity(n: usize) -> Self {
        Isometry(Matrix::identity(n))
    }

    pub fn matrix(&self) -> &Matrix<Int> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn apply(&self, x: &[Int]) -> Vector {
        self.0.mul_vec(x)
    }

    pub fn apply_rat(&self, x: &[Rat]) -> Vec<Rat> {
        to_rat_matrix(&self.0).mul_vec(x)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry(self.0.mul(&other.0))
    }

    pub fn inverse(&self) -> Option<Isometry> {
        inverse(&to_rat_matrix(&self.0)).and_then(|m| to_int_matrix(&m)).map(Isometry)
    }

    /// `self^t` for any integer `t`; `None` if a negative power is requested
    /// of a matrix without integral inverse.
    pub fn power(&self, t: i64) -> Option<Isometry> {
        let base = if t < 0 { self.inverse()? } else { self.clone() };
        Some(Isometry(base.0.pow(t.unsigned_abs() as u32)))
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }
}

#[derive(Debug, Deserialize)]
struct LatticeFile {
    #[serde(default)]
    name: Option<String>,
    gram: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(gram: Matrix<Int>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if gram.rows() == 0 {
            return Err(Error::Invalid("empty Gram matrix".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if determinant_int(&gram).is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { gram, name: None })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect();
        Lattice::new(Matrix::from_rows(rows)?)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &Matrix<Int> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// Parses `{"name": string, "gram": [[int, ...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: LatticeFile =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("lattice JSON: {e}")))?;
        let rows = file.gram.into_iter().map(|r| r.into_iter().map(Int::from).collect()).collect();
        let lattice = Lattice::new(Matrix::from_rows(rows)?)?;
        Ok(match file.name {
            Some(n) => lattice.with_name(n),
            None => lattice,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        Lattice::from_json(&text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name.clone().unwrap_or_default(),
            "gram": self.gram.to_rows().iter()
                .map(|r| r.iter().map(crate::report::int_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: len });
        }
        Ok(())
    }

    /// `xᵀ G y` over the rationals.
    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Result<Rat> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        Ok(self.form_rat(x, y))
    }

    /// `xᵀ G y` over the integers.
    pub fn pair_int(&self, x: &[Int], y: &[Int]) -> Result<Int> {
        self.check_dim(x.len())?;
        self.check_dim(y.len())?;
        Ok(self.form(x, y))
    }

    pub(crate) fn form(&self, x: &[Int], y: &[Int]) -> Int {
        let n = self.rank();
        let mut acc = Int::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Int::zero();
            for j in 0..n {
                if !y[j].is_zero() {
                    row += &self.gram[(i, j)] * &y[j];
                }
            }
            acc += &x[i] * row;
        }
        acc
    }

    pub(crate) fn form_rat(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let n = self.rank();
        let mut acc = Rat::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Rat::zero();
            for j in 0..n {
                if !y[j].is_zero() {
                    row += &y[j] * rat_from_int(&self.gram[(i, j)]);
                }
            }
            acc += &x[i] * row;
        }
        acc
    }

    /// `S(x, x)`.
    pub fn norm(&self, x: &[Int]) -> Int {
        self.form(x, x)
    }

    /// `(S(x, e_1), ..., S(x, e_n))`, i.e. `G x`.
    pub fn pairings_with_basis(&self, x: &[Int]) -> Vector {
        self.gram.mul_vec(x)
    }

    pub fn invariants(&self) -> LatticeInvariants {
        let (pos, neg, zero) = inertia(&to_rat_matrix(&self.gram));
        debug_assert_eq!(zero, 0, "constructor rejects degenerate forms");
        let even = (0..self.rank()).all(|i| self.gram[(i, i)].is_even());
        let smith = smith_divisors(&self.gram);
        let exponent = smith.iter().max().cloned().unwrap_or_else(Int::one);
        LatticeInvariants {
            signature: (pos, neg),
            even,
            determinant: determinant_int(&self.gram),
            smith_divisors: smith,
            exponent,
        }
    }

    /// True when the signature is `(rank - 1, 1)`.
    pub fn is_hyperbolic(&self) -> bool {
        let (pos, neg, _) = inertia(&to_rat_matrix(&self.gram));
        neg == 1 && pos + 1 == self.rank()
    }

    /// Largest `a` with `d / a ∈ M*`: the gcd of the pairings of `d` with
    /// the basis. The caller supplies a primitive `d`.
    pub fn a_delta(&self, d: &[Int]) -> Result<Int> {
        self.check_dim(d.len())?;
        if is_zero_vec(d) {
            return Err(Error::ZeroVector);
        }
        if !is_primitive(d) {
            return Err(Error::NotPrimitive(d.to_vec()));
        }
        Ok(vec_gcd(&self.pairings_with_basis(d)))
    }

    fn positive_norm(&self, d: &[Int]) -> Result<Int> {
        self.check_dim(d.len())?;
        let n = self.norm(d);
        if !n.is_positive() {
            return Err(Error::NonPositiveNorm { vector: d.to_vec(), norm: n });
        }
        Ok(n)
    }

    /// `S(d, d)` divides `2 S(e_i, d)` for every basis vector.
    pub fn is_crystallographic(&self, d: &[Int]) -> Result<bool> {
        let n = self.positive_norm(d)?;
        Ok(self.pairings_with_basis(d).iter().all(|p| (p * Int::from(2)).is_multiple_of(&n)))
    }

    /// Matrix of `x ↦ x − (2 S(x, d) / S(d, d)) d`.
    pub fn reflection(&self, d: &[Int]) -> Result<Isometry> {
        let n = self.positive_norm(d)?;
        let pairings = self.pairings_with_basis(d);
        if !pairings.iter().all(|p| (p * Int::from(2)).is_multiple_of(&n)) {
            return Err(Error::NotCrystallographic(d.to_vec()));
        }
        let coeff: Vec<Int> = pairings.iter().map(|p| p * Int::from(2) / &n).collect();
        let r = self.rank();
        Ok(Isometry(Matrix::from_fn(r, r, |i, j| {
            let id = if i == j { Int::one() } else { Int::zero() };
            id - &d[i] * &coeff[j]
        })))
    }

    /// `s_d(x)` for a rational point, without requiring crystallographic `d`.
    pub fn reflect_rat(&self, d: &[Int], x: &[Rat]) -> Vec<Rat> {
        let dr: Vec<Rat> = d.iter().map(rat_from_int).collect();
        let c = self.form_rat(x, &dr) * Rat::from_integer(Int::from(2))
            / rat_from_int(&self.norm(d));
        x.iter().zip(&dr).map(|(xi, di)| xi - &c * di).collect()
    }

    /// `gᵀ G g = G` and `det g = ±1`.
    pub fn is_isometry(&self, g: &Isometry) -> Result<bool> {
        let m = g.matrix();
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        self.check_dim(m.rows())?;
        let preserved = m.transpose().mul(&self.gram).mul(m) == self.gram;
        Ok(preserved && determinant_int(m).abs().is_one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ivec, rat, rvec};
    use crate::fixtures;

    #[test]
    fn pair_examples() {
        let l = fixtures::ex134();
        assert_eq!(l.pair(&rvec(&[0, 1, 1]), &rvec(&[1, 0, 0])).unwrap(), rat(-4, 1));
        assert_eq!(l.pair(&rvec(&[0, 0, 0]), &rvec(&[5, 1, 2])).unwrap(), rat(0, 1));
        assert_eq!(l.pair(&rvec(&[4, 2, 0]), &rvec(&[4, 2, 0])).unwrap(), rat(8, 1));
        assert!(matches!(
            l.pair(&rvec(&[1, 0]), &rvec(&[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invariants_of_fixtures() {
        let u = fixtures::u();
        let inv = u.invariants();
        assert_eq!(inv.signature, (1, 1));
        assert!(inv.even);
        assert_eq!(inv.determinant, int(-1));
        assert_eq!(inv.smith_divisors, ivec(&[1, 1]));
        assert_eq!(inv.exponent, int(1));

        let inv = fixtures::ex134().invariants();
        assert_eq!(inv.signature, (2, 1));
        assert!(inv.even);
        assert_eq!(inv.determinant, int(-32));
        assert_eq!(inv.smith_divisors, ivec(&[2, 4, 4]));
        assert_eq!(inv.exponent, int(4));

        let one = Lattice::from_rows(&[&[1]]).unwrap().invariants();
        assert_eq!(one.signature, (1, 0));
        assert!(!one.even);
    }

    #[test]
    fn rejects_bad_grams() {
        assert_eq!(Lattice::from_rows(&[&[1, 1], &[1, 1]]), Err(Error::Degenerate));
        assert_eq!(Lattice::from_rows(&[&[1, 2], &[0, 1]]), Err(Error::NotSymmetric));
    }

    #[test]
    fn a_delta_examples() {
        let l = fixtures::ex134();
        assert_eq!(l.a_delta(&ivec(&[1, 0, 0])).unwrap(), int(2));
        assert_eq!(l.a_delta(&ivec(&[4, 2, 0])), Err(Error::NotPrimitive(ivec(&[4, 2, 0]))));
        // the primitive direction of f01 pairs as (2, -2, -6)
        assert_eq!(l.a_delta(&ivec(&[2, 1, 0])).unwrap(), int(2));
        assert_eq!(l.a_delta(&ivec(&[0, 0, 0])), Err(Error::ZeroVector));
        let u = fixtures::u();
        assert_eq!(u.a_delta(&ivec(&[1, -1])).unwrap(), int(1));
    }

    #[test]
    fn reflection_examples() {
        let l = fixtures::ex134();
        let d1 = ivec(&[1, 0, 0]);
        let s1 = l.reflection(&d1).unwrap();
        assert_eq!(s1.apply(&d1), ivec(&[-1, 0, 0]));
        assert_eq!(s1.apply(&ivec(&[0, 1, 0])), ivec(&[2, 1, 0]));
        let s3 = l.reflection(&ivec(&[0, 0, 1])).unwrap();
        assert_eq!(s3.apply(&ivec(&[0, 1, 1])), ivec(&[0, 1, 1]));
        assert!(l.is_isometry(&s1).unwrap());
        assert!(s1.compose(&s1).is_identity());
        assert!(matches!(l.reflection(&ivec(&[1, 1, 0])), Err(Error::NonPositiveNorm { .. })));
    }

    #[test]
    fn crystallographic_examples() {
        let l = fixtures::ex134();
        assert!(l.is_crystallographic(&ivec(&[1, 0, 0])).unwrap());
        assert!(l.is_crystallographic(&ivec(&[4, 2, 0])).unwrap());
        // δ1 + δ2 + 2δ3: norm 2 + 2 + 8 - 4 - 8 - 8 = -8 < 0, so not a wall
        assert!(matches!(
            l.is_crystallographic(&ivec(&[1, 1, 2])),
            Err(Error::NonPositiveNorm { .. })
        ));
        // (1, -1, 0): norm 8, pairings (4, -4, 0), 8 | 8 → reflective
        assert!(l.is_crystallographic(&ivec(&[1, -1, 0])).unwrap());
        // (2, -1, 0): norm 18, pairings (6, -6, -2)
        assert!(!l.is_crystallographic(&ivec(&[2, -1, 0])).unwrap());
    }

    #[test]
    fn isometry_examples() {
        let l = fixtures::ex134();
        assert!(l.is_isometry(&Isometry::identity(3)).unwrap());
        let phi = Isometry(crate::arith::int_matrix(&[&[1, 0, 0], &[2, -1, 2], &[6, -2, 3]]));
        assert!(l.is_isometry(&phi).unwrap());
        let s2 = l.reflection(&ivec(&[0, 1, 0])).unwrap();
        let s3 = l.reflection(&ivec(&[0, 0, 1])).unwrap();
        assert_eq!(s3.compose(&s2), phi);
        let not = Isometry(crate::arith::int_matrix(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(!l.is_isometry(&not).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let l = Lattice::from_json(r#"{"name": "u", "gram": [[0, -1], [-1, 0]]}"#).unwrap();
        assert_eq!(l.name(), Some("u"));
        assert_eq!(Lattice::from_json(&l.to_json().to_string()).unwrap(), l);
        assert!(Lattice::from_json("{\"gram\": 3}").is_err());
    }
}
