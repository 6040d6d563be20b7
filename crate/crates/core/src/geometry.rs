//! Light-cone classification, squared hyperbolic distances, mirror pairs and
//! the horospherical invariants of walls around a cusp.
//!
//! Everything is kept in squared or rational form so that no square root of
//! a norm is ever taken.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{is_zero_vec, to_rat, Int, Rat, Vector};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VectorClass {
    /// `S(x,x) < 0`, same half-cone as the orientation vector.
    TimelikeInside,
    /// `S(x,x) < 0`, opposite half-cone.
    TimelikeOutside,
    /// Nonzero isotropic on the boundary of the oriented half-cone.
    LightlikeBoundary,
    /// Nonzero isotropic on the boundary of the opposite half-cone.
    LightlikeOpposite,
    Spacelike,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MirrorRelation {
    Intersecting,
    ParallelAtInfinity,
    Ultraparallel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoroInvariants {
    /// `−1 / S(c, d)`, only for walls normalized to norm 2.
    pub theta: Option<Rat>,
    /// `S(c, d)² / S(d, d)`.
    pub r_squared: Rat,
}

pub fn classify_vector(l: &Lattice, x: &[Rat], orient: &[Rat]) -> Result<VectorClass> {
    let oo = l.pair(orient, orient)?;
    if !oo.is_negative() {
        return Err(Error::NotTimelike(oo.to_string()));
    }
    let xx = l.pair(x, x)?;
    if is_zero_vec(x) {
        return Err(Error::ZeroVector);
    }
    let xo = l.pair(x, orient)?;
    Ok(if xx.is_positive() {
        VectorClass::Spacelike
    } else if xx.is_negative() {
        if xo.is_negative() {
            VectorClass::TimelikeInside
        } else {
            VectorClass::TimelikeOutside
        }
    } else if xo.is_negative() {
        VectorClass::LightlikeBoundary
    } else {
        VectorClass::LightlikeOpposite
    })
}

/// `cosh² ρ(x, y) = S(x,y)² / (S(x,x) S(y,y))` for timelike points of one
/// half-cone.
pub fn cosh2(l: &Lattice, x: &[Rat], y: &[Rat]) -> Result<Rat> {
    let xx = l.pair(x, x)?;
    let yy = l.pair(y, y)?;
    for n in [&xx, &yy] {
        if !n.is_negative() {
            return Err(Error::NotTimelike(n.to_string()));
        }
    }
    let xy = l.pair(x, y)?;
    if !xy.is_negative() {
        return Err(Error::Invalid("points lie in opposite half-cones".into()));
    }
    Ok(&xy * &xy / (xx * yy))
}

fn check_wall(l: &Lattice, d: &[Int]) -> Result<Int> {
    let n = l.pair_int(d, d)?;
    if !n.is_positive() {
        return Err(Error::NonPositiveNorm { vector: d.to_vec(), norm: n });
    }
    Ok(n)
}

/// Sign of the determinant of the 2×2 Gram matrix of two walls.
pub fn classify_mirrors(l: &Lattice, d1: &[Int], d2: &[Int]) -> Result<MirrorRelation> {
    let n1 = check_wall(l, d1)?;
    let n2 = check_wall(l, d2)?;
    let p = l.form(d1, d2);
    let det = n1 * n2 - &p * &p;
    Ok(if det.is_positive() {
        MirrorRelation::Intersecting
    } else if det.is_zero() {
        MirrorRelation::ParallelAtInfinity
    } else {
        MirrorRelation::Ultraparallel
    })
}

/// Squared horospherical radius of the wall `d` seen from the cusp `c`, and
/// the angle `θ` when `d` has norm 2.
pub fn horo_invariants(l: &Lattice, c: &[Int], d: &[Int]) -> Result<HoroInvariants> {
    let cc = l.pair_int(c, c)?;
    if is_zero_vec(c) {
        return Err(Error::ZeroVector);
    }
    if !cc.is_zero() {
        return Err(Error::NotIsotropic(cc.to_string()));
    }
    let dd = check_wall(l, d)?;
    let cd = l.form(c, d);
    if cd.is_zero() {
        return Err(Error::MirrorThroughCusp(d.to_vec()));
    }
    if cd.is_positive() {
        return Err(Error::Invalid(format!("S(c, d) = {cd} > 0: wall faces away from the cusp")));
    }
    let r_squared = Rat::new(&cd * &cd, dd.clone());
    let theta = (dd == Int::from(2)).then(|| Rat::new(Int::from(-1), cd));
    Ok(HoroInvariants { theta, r_squared })
}

/// `4 (θ₁ + θ₁₂)(θ₂ + θ₁₂) / (θ₁ θ₂) − 2`: the value of `−S(δ₁, δ₂)` for two
/// norm-2 walls with angles `θ₁, θ₂` whose minimal common touching wall has
/// angle `θ₁₂`.
pub fn theta_identity_check(t1: &Rat, t2: &Rat, t12: &Rat) -> Result<Rat> {
    if !t1.is_positive() || !t2.is_positive() {
        return Err(Error::OutOfRange(format!("angles must be positive, got {t1}, {t2}")));
    }
    if t12.is_negative() {
        return Err(Error::OutOfRange(format!("θ₁₂ must be nonnegative, got {t12}")));
    }
    let four = Rat::from_integer(Int::from(4));
    let two = Rat::from_integer(Int::from(2));
    Ok(four * (t1 + t12) * (t2 + t12) / (t1 * t2) - two)
}

/// Convenience for integer points.
pub fn classify_int_vector(l: &Lattice, x: &Vector, orient: &Vector) -> Result<VectorClass> {
    classify_vector(l, &to_rat(x), &to_rat(orient))
}
