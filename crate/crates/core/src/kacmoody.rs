//! Lorentzian Kac–Moody root systems attached to a chamber.
//!
//! Everything is graded by simple-root coordinates: a positive root is a
//! tuple of nonnegative integers over the simple roots and its height is the
//! coordinate sum. The Weyl group is explored through inversion exponents
//! `E(w) = ρ − w(ρ)`, computed from the Cartan matrix alone: `s_j` extends
//! `w` on the left exactly when `(A E)_j ≤ 0`, and then
//! `E(s_j w) = E(w) + (1 − (A E)_j) α_j`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{inertia, rat_from_int, to_rat, to_rat_matrix, Int, Matrix, Rat, RatVector, Vector};
use crate::cones::{dual_extreme_rays, q_plus_membership};
use crate::error::{Error, Result};
use crate::lattice::{Isometry, Lattice};
use crate::rootset::{gram_graph_connected, RootSet};
use crate::weylstruct::{lattice_weyl_vector, WeylData};

/// A tuple of simple-root coefficients.
pub type Grade = Vec<i64>;

pub fn height(g: &[i64]) -> i64 {
    g.iter().sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedCartanMatrix {
    pub a: Matrix<Int>,
    /// Diagonal of `D`: `2 / S(α_i, α_i)`.
    pub d: Vec<Rat>,
    pub b: Matrix<Int>,
    pub lorentzian: bool,
}

impl GeneralizedCartanMatrix {
    pub fn size(&self) -> usize {
        self.a.rows()
    }

    fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[(i, j)].to_i64().expect("Cartan entries fit in i64")
    }

    /// `(A g)_i`, the pairing of `g` with the coroot of `α_i`.
    pub fn coroot_pairing(&self, g: &[i64], i: usize) -> i64 {
        (0..self.size()).map(|j| self.entry(i, j) * g[j]).sum()
    }

    /// `s_i(g) = g − (A g)_i α_i`.
    pub fn reflect(&self, g: &[i64], i: usize) -> Grade {
        let mut out = g.to_vec();
        out[i] -= self.coroot_pairing(g, i);
        out
    }
}

/// Builds the Cartan matrix `a_ij = 2 S(α_i, α_j) / S(α_i, α_i)`.
///
/// A Gram matrix with one negative square is flagged Lorentzian; positive
/// semidefinite ones (finite or affine type) are returned unflagged; two or
/// more negative squares are rejected.
pub fn cartan(l: &Lattice, p: &RootSet) -> Result<GeneralizedCartanMatrix> {
    if p.is_empty() {
        return Err(Error::EmptyRootSet);
    }
    p.check_non_obtuse(l)?;
    let b = p.gram(l);
    let n = p.len();
    if !gram_graph_connected(&b, &(0..n).collect::<Vec<_>>()) {
        return Err(Error::Disconnected);
    }
    let d: Vec<Rat> = (0..n).map(|i| Rat::new(Int::from(2), b[(i, i)].clone())).collect();
    let a = Matrix::from_fn(n, n, |i, j| {
        let v = &d[i] * rat_from_int(&b[(i, j)]);
        assert!(v.is_integer(), "crystallographic roots give integral Cartan entries");
        v.to_integer()
    });
    let (_, neg, _) = inertia(&to_rat_matrix(&b));
    if neg > 1 {
        return Err(Error::WrongSignature(format!("Gram matrix has {neg} negative squares")));
    }
    Ok(GeneralizedCartanMatrix { a, d, b, lorentzian: neg == 1 })
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub lattice: Lattice,
    pub simple_roots: RootSet,
    pub cartan: GeneralizedCartanMatrix,
    pub weyl_data: Option<WeylData>,
}

impl RootDatum {
    pub fn new(lattice: Lattice, simple_roots: RootSet) -> Result<Self> {
        let cartan = cartan(&lattice, &simple_roots)?;
        let weyl_data = match lattice_weyl_vector(&lattice, &simple_roots) {
            Ok(w) => Some(w),
            Err(Error::NotSpanning { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(RootDatum { lattice, simple_roots, cartan, weyl_data })
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn rho(&self) -> Option<&RatVector> {
        self.weyl_data.as_ref().and_then(|w| w.rho.as_ref())
    }

    /// The lattice vector `Σ g_i α_i`.
    pub fn to_lattice(&self, g: &[i64]) -> Vector {
        let mut x = vec![Int::zero(); self.lattice.rank()];
        for (a, &c) in self.simple_roots.roots().iter().zip(g) {
            if c != 0 {
                for (xi, ai) in x.iter_mut().zip(a) {
                    *xi += ai * c;
                }
            }
        }
        x
    }

    fn unit(&self, i: usize) -> Grade {
        let mut g = vec![0; self.rank()];
        g[i] = 1;
        g
    }

    fn support_connected(&self, g: &[i64]) -> bool {
        let idx: Vec<usize> = (0..g.len()).filter(|&i| g[i] != 0).collect();
        gram_graph_connected(&self.cartan.b, &idx)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub grade: Grade,
    pub vector: Vector,
    pub height: i64,
}

/// Positive real roots of height at most `n`, by height then grade.
pub fn real_roots(datum: &RootDatum, n: i64) -> Vec<RealRoot> {
    let mut seen: BTreeSet<Grade> = BTreeSet::new();
    let mut frontier: Vec<Grade> = (0..datum.rank()).map(|i| datum.unit(i)).filter(|_| n >= 1).collect();
    seen.extend(frontier.iter().cloned());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for i in 0..datum.rank() {
                let r = datum.cartan.reflect(g, i);
                if r.iter().all(|&c| c >= 0) && height(&r) <= n && seen.insert(r.clone()) {
                    next.push(r);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<RealRoot> = seen
        .into_iter()
        .map(|g| RealRoot { vector: datum.to_lattice(&g), height: height(&g), grade: g })
        .collect();
    out.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| a.grade.cmp(&b.grade)));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    /// `w = s_{word[0]} s_{word[1]} ⋯`, reduced.
    pub word: Vec<usize>,
    pub matrix: Isometry,
    /// `ρ − w(ρ)` in simple-root coordinates: the sum of the positive roots
    /// that `w⁻¹` makes negative.
    pub exponent: Grade,
    pub sign: i8,
}

/// All Weyl group elements whose exponent has height at most `n`, ordered
/// by exponent height and then exponent.
pub fn weyl_elements(datum: &RootDatum, n: i64) -> Result<Vec<WeylElement>> {
    let r = datum.rank();
    let refl: Vec<Isometry> = datum
        .simple_roots
        .roots()
        .iter()
        .map(|a| datum.lattice.reflection(a))
        .collect::<Result<_>>()?;
    let cap = n.max(0) as usize;
    let mut buckets: Vec<BTreeMap<Grade, WeylElement>> = vec![BTreeMap::new(); cap + 1];
    let id = WeylElement {
        word: Vec::new(),
        matrix: Isometry::identity(datum.lattice.rank()),
        exponent: vec![0; r],
        sign: 1,
    };
    if n < 0 {
        return Ok(Vec::new());
    }
    buckets[0].insert(id.exponent.clone(), id);
    let mut out = Vec::new();
    for h in 0..=cap {
        let level = std::mem::take(&mut buckets[h]);
        for (e, w) in level {
            for j in 0..r {
                let p = datum.cartan.coroot_pairing(&e, j);
                if p > 0 {
                    continue;
                }
                let step = 1 - p;
                let nh = h as i64 + step;
                if nh > n {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] += step;
                buckets[nh as usize].entry(e2.clone()).or_insert_with(|| {
                    let mut word = vec![j];
                    word.extend(&w.word);
                    WeylElement { word, matrix: refl[j].compose(&w.matrix), exponent: e2, sign: -w.sign }
                });
            }
            out.push(w);
        }
    }
    Ok(out)
}

/// A truncated formal series in `e^{−α}`, keyed by simple-root grades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    pub rank: usize,
    pub truncation: i64,
    terms: BTreeMap<Grade, Int>,
}

impl GradedSeries {
    pub fn zero(rank: usize, truncation: i64) -> Self {
        GradedSeries { rank, truncation, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, truncation: i64) -> Self {
        let mut s = Self::zero(rank, truncation);
        s.add(&vec![0; rank], &Int::one());
        s
    }

    pub fn coeff(&self, g: &[i64]) -> Int {
        self.terms.get(g).cloned().unwrap_or_else(Int::zero)
    }

    pub fn add(&mut self, g: &[i64], c: &Int) {
        if height(g) > self.truncation || c.is_zero() {
            return;
        }
        let e = self.terms.entry(g.to_vec()).or_insert_with(Int::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(g);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Grade, &Int)> {
        self.terms.iter()
    }

    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        let mut out = Self::zero(self.rank, self.truncation.min(other.truncation));
        for (a, x) in &self.terms {
            let ha = height(a);
            for (b, y) in &other.terms {
                if ha + height(b) > out.truncation {
                    continue;
                }
                let g: Grade = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add(&g, &(x * y));
            }
        }
        out
    }

    /// Multiplies by `(1 − e^{−β})^m`, `m` of either sign.
    pub fn mul_factor(&mut self, beta: &[i64], m: i64) {
        let hb = height(beta);
        assert!(hb > 0);
        let mut factor = Self::one(self.rank, self.truncation);
        let unit = if m >= 0 { -Int::one() } else { Int::one() };
        if m >= 0 {
            factor.add(beta, &unit);
        } else {
            let mut k = 1;
            while k * hb <= self.truncation {
                let g: Grade = beta.iter().map(|b| b * k).collect();
                factor.add(&g, &unit);
                k += 1;
            }
        }
        for _ in 0..m.abs() {
            *self = self.mul(&factor);
        }
    }
}

/// `Σ_w sign(w) e^{−E(w)}` truncated at height `n`.
pub fn sum_side(datum: &RootDatum, n: i64) -> Result<GradedSeries> {
    let mut s = GradedSeries::zero(datum.rank(), n);
    for w in weyl_elements(datum, n)? {
        s.add(&w.exponent, &Int::from(w.sign));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable {
    pub truncation: i64,
    /// Every real root and every imaginary candidate, with its multiplicity.
    pub mults: BTreeMap<Grade, Int>,
    pub real: BTreeSet<Grade>,
    pub imaginary: BTreeSet<Grade>,
    pub residual_zero: bool,
}

impl MultiplicityTable {
    pub fn mult(&self, g: &[i64]) -> Int {
        self.mults.get(g).cloned().unwrap_or_else(Int::zero)
    }
}

/// `W(K)` up to height `n`: grades in the fundamental chamber with
/// connected support, moved upward by simple reflections.
pub fn imaginary_candidates(datum: &RootDatum, n: i64) -> BTreeSet<Grade> {
    let r = datum.rank();
    let mut out = BTreeSet::new();
    let mut stack: Vec<Grade> = Vec::new();
    for g in grades_up_to(r, n) {
        if (0..r).all(|i| datum.cartan.coroot_pairing(&g, i) <= 0) && datum.support_connected(&g) {
            out.insert(g.clone());
            stack.push(g);
        }
    }
    while let Some(g) = stack.pop() {
        for i in 0..r {
            let s = datum.cartan.reflect(&g, i);
            if height(&s) <= n && s.iter().all(|&c| c >= 0) && out.insert(s.clone()) {
                stack.push(s);
            }
        }
    }
    out
}

/// Nonzero grades of height `1..=n`, by height then lexicographically.
pub fn grades_up_to(rank: usize, n: i64) -> Vec<Grade> {
    fn rec(rank: usize, left: i64, cur: &mut Grade, out: &mut Vec<Grade>) {
        if cur.len() == rank - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for c in 0..=left {
            cur.push(c);
            rec(rank, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if rank == 0 {
        return out;
    }
    for h in 1..=n {
        rec(rank, h, &mut Vec::with_capacity(rank), &mut out);
    }
    out
}

/// Solves `∏ (1 − e^{−α})^{mult α} = Σ_w sign(w) e^{−E(w)}` for the
/// multiplicities, one height at a time.
pub fn solve_multiplicities(datum: &RootDatum, n: i64) -> Result<MultiplicityTable> {
    let r = datum.rank();
    let sum = sum_side(datum, n)?;
    let real: BTreeSet<Grade> = real_roots(datum, n).into_iter().map(|x| x.grade).collect();
    let imaginary = imaginary_candidates(datum, n);
    let mut product = GradedSeries::one(r, n);
    let mut mults = BTreeMap::new();
    let grades = grades_up_to(r, n);
    let mut start = 0;
    while start < grades.len() {
        let h = height(&grades[start]);
        let end = grades[start..].iter().position(|g| height(g) != h).map_or(grades.len(), |k| start + k);
        let mut level = Vec::new();
        for g in &grades[start..end] {
            let m = product.coeff(g) - sum.coeff(g);
            if real.contains(g) {
                if !m.is_one() {
                    return Err(Error::IdentityMismatch {
                        component: g.clone(),
                        detail: format!("real root would need multiplicity {m}"),
                    });
                }
            } else if !imaginary.contains(g) && !m.is_zero() {
                return Err(Error::IdentityMismatch {
                    component: g.clone(),
                    detail: format!("non-root would need multiplicity {m}"),
                });
            }
            if real.contains(g) || imaginary.contains(g) {
                mults.insert(g.clone(), m.clone());
            }
            if !m.is_zero() {
                level.push((g.clone(), m));
            }
        }
        for (g, m) in level {
            let m = m.to_i64().ok_or_else(|| Error::Overflow(format!("multiplicity {m}")))?;
            product.mul_factor(&g, m);
        }
        start = end;
    }
    let residual_zero = product == sum;
    Ok(MultiplicityTable { truncation: n, mults, real, imaginary, residual_zero })
}

/// Pairs `(β, s_i β)` inside the truncation whose multiplicities differ.
pub fn w_invariance_violations(datum: &RootDatum, table: &MultiplicityTable) -> Vec<(Grade, Grade)> {
    let mut out = Vec::new();
    for (g, m) in &table.mults {
        for i in 0..datum.rank() {
            let s = datum.cartan.reflect(g, i);
            if s.iter().all(|&c| c >= 0) && height(&s) <= table.truncation && *g != s
                && table.mult(&s) != *m {
                    out.push((g.clone(), s));
                }
        }
    }
    out
}

/// Each simple reflection maps `{(E(w), sign)}` onto itself with signs
/// flipped, wherever the image stays inside the truncation; and the
/// exponents agree with `ρ − w(ρ)` computed from the matrices.
pub fn anti_invariance_check(datum: &RootDatum, n: i64) -> Result<bool> {
    let elements = weyl_elements(datum, n)?;
    anti_invariance_of(datum, &elements, n)
}

/// [`anti_invariance_check`] on a caller-supplied element list.
pub fn anti_invariance_of(datum: &RootDatum, elements: &[WeylElement], n: i64) -> Result<bool> {
    let rho = datum.rho().ok_or(Error::MissingWeylVector)?.clone();
    let signs: BTreeMap<&Grade, i8> = elements.iter().map(|w| (&w.exponent, w.sign)).collect();
    if signs.len() != elements.len() {
        return Ok(false);
    }
    for w in elements {
        let moved = w.matrix.apply_rat(&rho);
        let expect: RatVector = to_rat(&datum.to_lattice(&w.exponent));
        let diff: RatVector = rho.iter().zip(&moved).map(|(a, b)| a - b).collect();
        // lattice ρ is the negative of the abstract one
        let neg: RatVector = diff.iter().map(|x| -x).collect();
        if neg != expect {
            return Ok(false);
        }
        for i in 0..datum.rank() {
            let p = datum.cartan.coroot_pairing(&w.exponent, i);
            let mut e2 = w.exponent.clone();
            e2[i] += 1 - p;
            if height(&e2) > n {
                continue;
            }
            if signs.get(&e2) != Some(&-w.sign) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Smallest `n ≤ n_max` with `n x` in `W(K)`.
///
/// `x` is oriented towards the chamber, reflected into it, and then
/// `n x` is tested for being a nonnegative integral combination of the
/// simple roots with connected support. `closed` also admits isotropic
/// `x`.
pub fn imaginary_membership(datum: &RootDatum, x: &[Int], n_max: u64, closed: bool) -> Result<Option<u64>> {
    let l = &datum.lattice;
    if x.len() != l.rank() {
        return Err(Error::DimensionMismatch { expected: l.rank(), got: x.len() });
    }
    let xx = l.norm(x);
    if xx.is_positive() || (!closed && xx.is_zero()) {
        return Err(Error::NotTimelike(format!("S(x,x) = {xx}")));
    }
    if x.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let p = datum.simple_roots.roots();
    let cone = dual_extreme_rays(l, p)?;
    let h = cone.rays.iter().fold(vec![Int::zero(); l.rank()], |acc, r| {
        acc.iter().zip(r).map(|(a, b)| a + b).collect::<Vector>()
    });
    let mut y: Vector = x.to_vec();
    if l.form(&y, &h).is_positive() {
        y = y.iter().map(|c| -c).collect();
    }
    let refl: Vec<Isometry> = p.iter().map(|a| l.reflection(a)).collect::<Result<_>>()?;
    let mut steps = 0usize;
    while let Some(i) = (0..p.len()).find(|&i| l.form(&y, &p[i]).is_positive()) {
        y = refl[i].apply(&y);
        steps += 1;
        if steps > 100_000 {
            return Ok(None);
        }
    }
    for n in 1..=n_max {
        let ny: Vector = y.iter().map(|c| c * Int::from(n)).collect();
        if let Some(coeffs) = q_plus_membership(l, p, &ny, 100_000) {
            let g: Vec<i64> = coeffs.iter().map(|c| if c.is_zero() { 0 } else { 1 }).collect();
            if datum.support_connected(&g) {
                return Ok(Some(n));
            }
        }
    }
    Ok(None)
}

/// `S ⊕ U(k)` with `U(k)` spanned by `e₁, e₂`, `S(e₁,e₂) = −k`.
pub fn extended_lattice(l: &Lattice, k: u64) -> Result<Lattice> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be positive".into()));
    }
    let n = l.rank();
    let k = Int::from(k);
    let g = Matrix::from_fn(n + 2, n + 2, |i, j| {
        if i < n && j < n {
            l.gram()[(i, j)].clone()
        } else if (i, j) == (n, n + 1) || (i, j) == (n + 1, n) {
            -k.clone()
        } else {
            Int::zero()
        }
    });
    Lattice::new(g)
}

/// `ω = z ⊕ (S(z,z)/2) e₁ ⊕ (1/k) e₂`, isotropic with `S′(ω, e₁) = −1`.
pub fn cusp_embedding(l: &Lattice, k: u64, z: &[Rat]) -> Result<RatVector> {
    if z.len() != l.rank() {
        return Err(Error::DimensionMismatch { expected: l.rank(), got: z.len() });
    }
    let ext = extended_lattice(l, k)?;
    let mut w = z.to_vec();
    w.push(l.form_rat(z, z) / Rat::from_integer(Int::from(2)));
    w.push(Rat::new(Int::one(), Int::from(k)));
    let mut e1 = vec![Rat::zero(); l.rank() + 2];
    e1[l.rank()] = Rat::one();
    let norm = ext.form_rat(&w, &w);
    let pair = ext.form_rat(&w, &e1);
    if !norm.is_zero() || pair != -Rat::one() {
        return Err(Error::Invalid(format!("embedding check failed: S'(w,w) = {norm}, S'(w,e1) = {pair}")));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, int_matrix, ivec, rat};
    use crate::fixtures;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn triangle() -> RootDatum {
        let l = fixtures::ex134();
        let p = RootSet::new(&l, vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])]).unwrap();
        RootDatum::new(l, p).unwrap()
    }

    #[test]
    fn cartan_examples() {
        let t = triangle();
        assert_eq!(t.cartan.a, int_matrix(&[&[2, -2, -2], &[-2, 2, -2], &[-2, -2, 2]]));
        assert_eq!(t.cartan.d, vec![rat(1, 1); 3]);
        assert!(t.cartan.lorentzian);
        let l = fixtures::ex134();
        let p = RootSet::new(&l, vec![ivec(&[4, 2, 0]), ivec(&[4, 0, 2]), ivec(&[1, 2, 6])]).unwrap();
        let c = cartan(&l, &p).unwrap();
        assert_eq!(c.a[(0, 1)], int(-2));
        assert_eq!(c.d[0], rat(1, 4));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(rat_from_int(&c.a[(i, j)]), &c.d[i] * rat_from_int(&c.b[(i, j)]));
            }
        }
    }

    #[test]
    fn orthogonal_and_disconnected() {
        let l = fixtures::u_a1a1();
        let p = RootSet::new(&l, vec![ivec(&[0, 0, 1, 0]), ivec(&[0, 0, 0, 1])]).unwrap();
        assert_eq!(cartan(&l, &p), Err(Error::Disconnected));
        let g = p.gram(&l);
        assert!(g[(0, 1)].is_zero() && g[(1, 0)].is_zero());
    }

    #[test]
    fn real_root_examples() {
        let t = triangle();
        let r1: Vec<Grade> = real_roots(&t, 1).into_iter().map(|r| r.grade).collect();
        assert_eq!(r1, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        let r3 = real_roots(&t, 3);
        assert!(r3.iter().any(|r| r.grade == vec![2, 1, 0] && r.height == 3));
    }

    /// Orbit of the simple roots under all words of length < n.
    fn real_roots_by_words(t: &RootDatum, n: i64) -> BTreeSet<Grade> {
        let l = &t.lattice;
        let refl: Vec<Isometry> = t.simple_roots.roots().iter().map(|a| l.reflection(a).unwrap()).collect();
        let mut mats = vec![Isometry::identity(3)];
        let mut all = mats.clone();
        for _ in 1..n {
            mats = mats.iter().flat_map(|m| refl.iter().map(move |r| r.compose(m))).collect();
            all.extend(mats.iter().cloned());
        }
        let mut out = BTreeSet::new();
        for m in &all {
            for a in t.simple_roots.roots() {
                // simple roots are the basis, so coordinates are grades
                let v: Grade = m.apply(a).iter().map(|c| c.to_i64().unwrap()).collect();
                if v.iter().all(|&c| c >= 0) && height(&v) <= n {
                    out.insert(v);
                }
            }
        }
        out
    }

    #[test]
    fn real_roots_match_word_orbits() {
        let t = triangle();
        for n in 1..=6 {
            let got: BTreeSet<Grade> = real_roots(&t, n).into_iter().map(|r| r.grade).collect();
            assert_eq!(got, real_roots_by_words(&t, n), "height {n}");
        }
        for r in real_roots(&t, 8) {
            assert_eq!(t.lattice.norm(&r.vector), int(2));
        }
    }

    #[test]
    fn weyl_element_examples() {
        let t = triangle();
        let ws = weyl_elements(&t, 4).unwrap();
        assert_eq!(ws[0].exponent, vec![0, 0, 0]);
        assert_eq!(ws[0].sign, 1);
        assert_eq!(ws.iter().filter(|w| height(&w.exponent) == 0).count(), 1);
        let s0 = ws.iter().find(|w| w.word == vec![0]).unwrap();
        assert_eq!((s0.exponent.clone(), s0.sign), (vec![1, 0, 0], -1));
        // s_1 s_0: α_1 + s_1(α_0) = (0,1,0) + (1,2,0)
        let s10 = ws.iter().find(|w| w.word == vec![1, 0]).unwrap();
        assert_eq!((s10.exponent.clone(), s10.sign), (vec![1, 3, 0], 1));
    }

    #[test]
    fn weyl_elements_prefix_and_matrices() {
        let t = triangle();
        let refl: Vec<Isometry> =
            t.simple_roots.roots().iter().map(|a| t.lattice.reflection(a).unwrap()).collect();
        let big = weyl_elements(&t, 5).unwrap();
        for n in 0..5 {
            let small = weyl_elements(&t, n).unwrap();
            assert_eq!(small[..], big[..small.len()]);
        }
        for w in &big {
            let m = w.word.iter().fold(Isometry::identity(3), |acc, &i| acc.compose(&refl[i]));
            assert_eq!(m, w.matrix);
            let det = crate::arith::determinant_int(w.matrix.matrix());
            assert_eq!(det, int(w.sign as i64));
            assert_eq!(w.sign as i64, if w.word.len() % 2 == 0 { 1 } else { -1 });
            assert!(w.exponent.iter().all(|&c| c >= 0));
        }
    }

    /// Σ det(w) e^{w(ρ) − ρ} by brute force over matrix words.
    fn sum_side_by_words(t: &RootDatum, n: i64, max_len: usize) -> GradedSeries {
        let rho = t.rho().unwrap().clone();
        let refl: Vec<Isometry> =
            t.simple_roots.roots().iter().map(|a| t.lattice.reflection(a).unwrap()).collect();
        let mut seen = std::collections::HashSet::new();
        let mut layer = vec![Isometry::identity(3)];
        seen.insert(layer[0].clone());
        let mut s = GradedSeries::zero(3, n);
        for _ in 0..=max_len {
            let mut next = Vec::new();
            for m in &layer {
                let e: Grade = m.apply_rat(&rho).iter().zip(&rho).map(|(a, b)| (a - b).to_integer().to_i64().unwrap()).collect();
                if height(&e) <= n {
                    s.add(&e, &crate::arith::determinant_int(m.matrix()));
                }
                for r in &refl {
                    let x = r.compose(m);
                    if seen.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
            layer = next;
        }
        s
    }

    #[test]
    fn sum_side_examples() {
        let t = triangle();
        let s = sum_side(&t, 3).unwrap();
        assert_eq!(s.coeff(&[0, 0, 0]), int(1));
        for i in 0..3 {
            let mut g = vec![0; 3];
            g[i] = 1;
            assert_eq!(s.coeff(&g), int(-1));
        }
        assert_eq!(s, sum_side_by_words(&t, 3, 6));
        assert_eq!(sum_side(&t, 6).unwrap(), sum_side_by_words(&t, 6, 8));
    }

    fn expand(table: &MultiplicityTable, rank: usize) -> GradedSeries {
        let n = table.truncation;
        let mut p = GradedSeries::one(rank, n);
        for (g, m) in &table.mults {
            let m = m.to_i64().unwrap();
            // geometric series / binomial expansion done term by term
            let hb = height(g);
            let mut f = GradedSeries::one(rank, n);
            if m > 0 {
                let mut binom = Int::one();
                for k in 1..=m {
                    if k * hb > n {
                        break;
                    }
                    binom = binom * Int::from(m - k + 1) / Int::from(k);
                    let sign = if k % 2 == 0 { Int::one() } else { -Int::one() };
                    let e: Grade = g.iter().map(|c| c * k).collect();
                    f.add(&e, &(sign * &binom));
                }
                p = p.mul(&f);
            } else if m < 0 {
                for _ in 0..-m {
                    let mut geo = GradedSeries::one(rank, n);
                    let mut k = 1;
                    while k * hb <= n {
                        geo.add(&g.iter().map(|c| c * k).collect::<Grade>(), &Int::one());
                        k += 1;
                    }
                    p = p.mul(&geo);
                }
            }
        }
        p
    }

    #[test]
    fn triangle_multiplicities() {
        let t = triangle();
        let table = solve_multiplicities(&t, 6).unwrap();
        assert!(table.residual_zero);
        for g in &table.real {
            assert_eq!(table.mult(g), int(1));
        }
        assert_eq!(table.mult(&[1, 1, 0]), int(1));
        assert_eq!(table.mult(&[2, 2, 0]), int(1));
        assert_eq!(expand(&table, 3), sum_side(&t, 6).unwrap());
        assert!(w_invariance_violations(&t, &table).is_empty());
    }

    #[test]
    fn anti_invariance() {
        let t = triangle();
        assert_eq!(t.rho(), Some(&vec![rat(1, 2), rat(1, 2), rat(1, 2)]));
        assert!(anti_invariance_check(&t, 4).unwrap());
        let mut ws = weyl_elements(&t, 4).unwrap();
        let k = ws.iter().position(|w| w.word == vec![0]).unwrap();
        ws[k].sign = -ws[k].sign;
        assert!(!anti_invariance_of(&t, &ws, 4).unwrap());
        // rank-one piece: s_0 swaps the identity and s_0
        let pair: Vec<WeylElement> = weyl_elements(&t, 1).unwrap();
        assert!(anti_invariance_of(&t, &pair, 1).unwrap());
    }

    #[test]
    fn imaginary_membership_examples() {
        let t = triangle();
        assert_eq!(imaginary_membership(&t, &ivec(&[1, 1, 1]), 5, false).unwrap(), Some(1));
        assert!(imaginary_membership(&t, &ivec(&[0, 1, 1]), 5, false).is_err());
        assert_eq!(imaginary_membership(&t, &ivec(&[0, 1, 1]), 5, true).unwrap(), Some(1));
        assert_eq!(imaginary_membership(&t, &ivec(&[-1, -1, -1]), 5, false).unwrap(), Some(1));
        assert!(imaginary_membership(&t, &ivec(&[1, 0, 0]), 5, true).is_err());
    }

    #[test]
    fn random_timelike_vectors_are_imaginary() {
        let t = triangle();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut done = 0;
        while done < 50 {
            let x: Vector = (0..3).map(|_| Int::from(rng.gen_range(-9i64..=9))).collect();
            if !t.lattice.norm(&x).is_negative() {
                continue;
            }
            assert!(imaginary_membership(&t, &x, 4, false).unwrap().is_some(), "{x:?}");
            done += 1;
        }
    }

    #[test]
    fn cusp_embedding_examples() {
        let l = fixtures::ex134();
        let w = cusp_embedding(&l, 3, &[rat(0, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(w, vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 3)]);
        let w = cusp_embedding(&l, 1, &[rat(1, 1), rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(w[3], rat(-3, 1));
        assert!(cusp_embedding(&l, 0, &[rat(0, 1), rat(0, 1), rat(0, 1)]).is_err());
    }

    proptest! {
        #[test]
        fn cusp_embedding_is_isotropic(
            nums in prop::collection::vec(-50i64..=50, 3),
            dens in prop::collection::vec(1i64..=20, 3),
            k in 1u64..=5,
        ) {
            let l = fixtures::ex134();
            let z: Vec<Rat> = nums.iter().zip(&dens).map(|(&a, &b)| rat(a, b)).collect();
            let w = cusp_embedding(&l, k, &z).unwrap();
            let ext = extended_lattice(&l, k).unwrap();
            prop_assert!(ext.form_rat(&w, &w).is_zero());
        }
    }
}
