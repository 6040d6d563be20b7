//! Weyl vectors, twisting coefficients, chamber symmetries, cusps and the
//! one-parameter family of parabolic root sets on the ideal triangle lattice.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    inverse, is_zero_vec, kernel, primitive_from_rat, primitive_part, rank_of_vectors, rat_from_int,
    solve, to_int_matrix, to_rat, to_rat_matrix, Int, Matrix, Rat, RatVector, Solution, Vector,
};
use crate::cones::is_arithmetic_type;
use crate::error::{Error, Result};
use crate::geometry::{classify_mirrors, MirrorRelation};
use crate::lattice::{Isometry, Lattice};
use crate::vinberg::{enumerate_ellipsoid, majorant};

pub use crate::rootset::RootSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylKind {
    /// `S(ρ,ρ) < 0`
    EllipticType,
    /// `S(ρ,ρ) = 0`
    ParabolicType,
    /// `S(ρ,ρ) > 0`
    HyperbolicType,
    /// No vector solves the system.
    Absent,
}

impl WeylKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WeylKind::EllipticType => "elliptic-type",
            WeylKind::ParabolicType => "parabolic-type",
            WeylKind::HyperbolicType => "hyperbolic-type",
            WeylKind::Absent => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylData {
    pub rho: Option<RatVector>,
    pub rho_norm: Option<Rat>,
    pub kind: WeylKind,
}

fn half_norm_target(l: &Lattice, a: &[Int]) -> Rat {
    -Rat::new(l.norm(a), Int::from(2))
}

/// Solves `S(ρ, α) = −S(α, α)/2` over `α ∈ P`. A spanning but inconsistent
/// system yields `kind = Absent`; a non-spanning one is an error.
pub fn lattice_weyl_vector(l: &Lattice, p: &RootSet) -> Result<WeylData> {
    if p.is_empty() {
        return Err(Error::EmptyRootSet);
    }
    let r = rank_of_vectors(p.roots());
    if r < l.rank() {
        return Err(Error::NotSpanning { rank: r, dim: l.rank() });
    }
    let rows: Vec<RatVector> = p.roots().iter().map(|a| to_rat(&l.pairings_with_basis(a))).collect();
    let a = Matrix::from_rows(rows)?;
    let b: RatVector = p.roots().iter().map(|x| half_norm_target(l, x)).collect();
    match solve(&a, &b) {
        Solution::Unique(rho) => {
            let n = l.form_rat(&rho, &rho);
            let kind = if n.is_negative() {
                WeylKind::EllipticType
            } else if n.is_zero() {
                WeylKind::ParabolicType
            } else {
                WeylKind::HyperbolicType
            };
            Ok(WeylData { rho: Some(rho), rho_norm: Some(n), kind })
        }
        Solution::Inconsistent => Ok(WeylData { rho: None, rho_norm: None, kind: WeylKind::Absent }),
        Solution::Many(..) => unreachable!("spanning system has trivial kernel"),
    }
}

/// `0 ≤ −S(ρ, α) ≤ C` for every `α ∈ P`.
pub fn generalized_weyl_check(l: &Lattice, p: &[Vector], rho: &[Rat], c: &Rat) -> Result<bool> {
    if is_zero_vec(rho) {
        return Err(Error::ZeroVector);
    }
    for a in p {
        if a.len() != l.rank() {
            return Err(Error::DimensionMismatch { expected: l.rank(), got: a.len() });
        }
    }
    Ok(p.iter().all(|a| {
        let v = -l.form_rat(rho, &to_rat(a));
        !v.is_negative() && &v <= c
    }))
}

/// All `λ ≥ 1` with `λ S(d,d) | 2 a(d)`.
pub fn admissible_twists(l: &Lattice, d: &[Int]) -> Result<Vec<Int>> {
    let a = l.a_delta(d)?;
    if !l.is_crystallographic(d)? {
        return Err(Error::NotCrystallographic(d.to_vec()));
    }
    let n = l.norm(d);
    let q = (&a * Int::from(2)) / &n;
    let mut out = Vec::new();
    let mut lam = Int::one();
    while lam <= q {
        if q.is_multiple_of(&lam) {
            out.push(lam.clone());
        }
        lam += 1;
    }
    Ok(out)
}

/// Whether `S(λd, λd)` divides `4 a(S)²`.
pub fn twisted_norm_divides(l: &Lattice, d: &[Int], lambda: &Int) -> bool {
    let a = l.invariants().exponent;
    let n = l.norm(d) * lambda * lambda;
    !n.is_zero() && (Int::from(4) * &a * &a).is_multiple_of(&n)
}

/// `x ∈ M*` and `S(α, α) | 2 S(x, α)` for every `α ∈ P`.
pub fn m_star_p_membership(l: &Lattice, p: &[Vector], x: &[Rat]) -> bool {
    let n = l.rank();
    let integral = (0..n).all(|i| {
        let mut e = vec![Int::zero(); n];
        e[i] = Int::one();
        l.form_rat(x, &to_rat(&e)).is_integer()
    });
    integral
        && p.iter().all(|a| {
            let v = l.form_rat(x, &to_rat(a)) * Rat::from_integer(Int::from(2));
            v.is_integer() && v.to_integer().is_multiple_of(&l.norm(a))
        })
}

/// `{α : 0 < S(α,α) ≤ bound, α crystallographic, S(ρ,α) = −S(α,α)/2}`.
///
/// For timelike `ρ` the set is finite. For isotropic `ρ` it is usually an
/// infinite orbit, so a coordinate `window` (max-norm of `α`) is required.
pub fn candidate_roots_for_weyl_vector(
    l: &Lattice,
    rho: &[Rat],
    norm_bound: u64,
    window: Option<u64>,
) -> Result<Vec<Vector>> {
    if rho.len() != l.rank() {
        return Err(Error::DimensionMismatch { expected: l.rank(), got: rho.len() });
    }
    if is_zero_vec(rho) {
        return Err(Error::ZeroVector);
    }
    let rr = l.form_rat(rho, rho);
    if rr.is_positive() {
        return Err(Error::NotTimelike(format!("S(rho,rho) = {rr}")));
    }
    let mut out = BTreeSet::new();
    if norm_bound == 0 {
        return Ok(Vec::new());
    }
    let bound = Int::from(norm_bound);
    let mut keep = |x: &[Int]| {
        let d = l.norm(x);
        if d.is_positive() && d <= bound && l.form_rat(rho, &to_rat(x)) == half_norm_target(l, x)
            && l.is_crystallographic(x).unwrap_or(false) {
                out.insert(x.to_vec());
            }
    };
    if rr.is_negative() && window.is_none() {
        let den = rho.iter().fold(Int::one(), |acc, q| acc.lcm(q.denom()));
        let h: Vector = rho.iter().map(|q| (q * rat_from_int(&den)).to_integer()).collect();
        let hh = l.norm(&h);
        let q = majorant(l, &h, &hh);
        // |S(h,α)| = den·d/2 on the candidates
        let b = rat_from_int(&bound);
        let m = &b * rat_from_int(&den) / Rat::from_integer(Int::from(2));
        let f_bound = &b + Rat::from_integer(Int::from(2)) * &m * &m / rat_from_int(&hh.abs());
        enumerate_ellipsoid(&q, &f_bound, |x| keep(x));
    } else {
        let w = window.ok_or_else(|| {
            Error::Invalid("an isotropic Weyl vector needs a coordinate window".into())
        })? as i64;
        let n = l.rank();
        let mut x = vec![-w; n];
        'outer: loop {
            let v: Vector = x.iter().map(|&c| Int::from(c)).collect();
            keep(&v);
            for k in 0..n {
                x[k] += 1;
                if x[k] <= w {
                    continue 'outer;
                }
                x[k] = -w;
            }
            break;
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(usize),
    InfiniteCandidate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    pub generators: Vec<Isometry>,
    pub order: GroupOrder,
    /// Every element, identity first, when the order is finite.
    pub elements: Vec<Isometry>,
    /// `permutations[i][a] = b` when `elements[i]` sends root `a` to root `b`.
    pub permutations: Vec<Vec<usize>>,
}

impl SymmetryGroup {
    /// A group known only through generators (for example a translation of
    /// a parabolic family).
    pub fn from_generators(l: &Lattice, generators: Vec<Isometry>) -> Result<Self> {
        for g in &generators {
            if !l.is_isometry(g)? {
                return Err(Error::Invalid("generator is not a lattice isometry".into()));
            }
        }
        Ok(SymmetryGroup {
            generators,
            order: GroupOrder::InfiniteCandidate,
            elements: Vec::new(),
            permutations: Vec::new(),
        })
    }
}

fn independent_subset(vs: &[Vector]) -> Vec<usize> {
    let mut idx = Vec::new();
    let mut chosen: Vec<Vector> = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        chosen.push(v.clone());
        if rank_of_vectors(&chosen) == chosen.len() {
            idx.push(i);
        } else {
            chosen.pop();
        }
    }
    idx
}

/// Gram-preserving permutations of `P` that come from integral isometries.
pub fn symmetry_group(l: &Lattice, p: &RootSet) -> Result<SymmetryGroup> {
    let roots = p.roots();
    let r = rank_of_vectors(roots);
    if r < l.rank() {
        return Err(Error::NotSpanning { rank: r, dim: l.rank() });
    }
    let gram = p.gram(l);
    let basis = independent_subset(roots);
    let cols: Vec<RatVector> = basis.iter().map(|&i| to_rat(&roots[i])).collect();
    let b_inv = inverse(&Matrix::from_columns(&cols)?).expect("independent basis");

    let n = roots.len();
    let mut perms = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    permute(&gram, &mut cur, &mut used, &mut perms);

    let mut elements = Vec::new();
    let mut permutations = Vec::new();
    for sigma in perms {
        let imgs: Vec<RatVector> = basis.iter().map(|&i| to_rat(&roots[sigma[i]])).collect();
        let g = Matrix::from_columns(&imgs)?.mul(&b_inv);
        let Some(g) = to_int_matrix(&g) else { continue };
        let g = Isometry(g);
        if (0..n).all(|i| g.apply(&roots[i]) == roots[sigma[i]]) && l.is_isometry(&g)? {
            elements.push(g);
            permutations.push(sigma);
        }
    }

    let mut generators = Vec::new();
    let mut gen_perms: Vec<Vec<usize>> = Vec::new();
    let mut reached: BTreeSet<Vec<usize>> = BTreeSet::new();
    reached.insert((0..n).collect());
    for (g, s) in elements.iter().zip(&permutations) {
        if reached.contains(s) {
            continue;
        }
        generators.push(g.clone());
        gen_perms.push(s.clone());
        reached = perm_closure(&gen_perms, n);
    }
    Ok(SymmetryGroup { generators, order: GroupOrder::Finite(elements.len()), elements, permutations })
}

fn permute(gram: &Matrix<Int>, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
    let n = used.len();
    let i = cur.len();
    if i == n {
        out.push(cur.clone());
        return;
    }
    for c in 0..n {
        if used[c] || gram[(c, c)] != gram[(i, i)] {
            continue;
        }
        if (0..i).any(|j| gram[(cur[j], c)] != gram[(j, i)]) {
            continue;
        }
        used[c] = true;
        cur.push(c);
        permute(gram, cur, used, out);
        cur.pop();
        used[c] = false;
    }
}

fn perm_closure(gens: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Common fixed vectors of `gens`, then a primitive isotropic one in that
/// space when it has dimension at most 2.
pub fn fixed_isotropic(l: &Lattice, gens: &[Isometry]) -> Result<Option<Vector>> {
    let n = l.rank();
    let mut rows: Vec<RatVector> = Vec::new();
    for g in gens {
        if !l.is_isometry(g)? {
            return Err(Error::Invalid("generator is not a lattice isometry".into()));
        }
        let d = to_rat_matrix(&g.matrix().sub(&Matrix::identity(n)));
        rows.extend(d.to_rows());
    }
    let fixed: Vec<Vector> = if rows.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect()
    } else {
        kernel(&Matrix::from_rows(rows)?).iter().map(|v| primitive_from_rat(v)).collect()
    };
    match fixed.len() {
        0 => Ok(None),
        1 => Ok(l.norm(&fixed[0]).is_zero().then(|| normalize_sign(fixed[0].clone()))),
        2 => Ok(isotropic_in_plane(l, &fixed[0], &fixed[1])),
        k => Err(Error::IndeterminateFixedSpace(k)),
    }
}

fn normalize_sign(v: Vector) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.iter().map(|x| -x).collect(),
        _ => v,
    }
}

fn isotropic_in_plane(l: &Lattice, u: &[Int], v: &[Int]) -> Option<Vector> {
    let a = l.norm(u);
    let b = l.form(u, v);
    let c = l.norm(v);
    // Q(s, t) = a s² + 2 b s t + c t²
    let mut coeffs: Vec<(Int, Int)> = Vec::new();
    if a.is_zero() {
        coeffs.push((Int::one(), Int::zero()));
        coeffs.push((c.clone(), -Int::from(2) * &b));
    } else {
        let disc = &b * &b - &a * &c;
        if !disc.is_negative() {
            let s = disc.sqrt();
            if &s * &s == disc {
                coeffs.push((-&b + &s, a.clone()));
                coeffs.push((-&b - &s, a.clone()));
            }
        }
    }
    coeffs
        .into_iter()
        .map(|(s, t)| u.iter().zip(v).map(|(x, y)| &s * x + &t * y).collect::<Vector>())
        .filter(|x| !is_zero_vec(x))
        .map(|x| normalize_sign(primitive_part(&x)))
        .min()
}

/// `s_{d_b} ∘ s_{d_a}` for walls whose mirrors meet at infinity.
pub fn parabolic_translation(l: &Lattice, d_a: &[Int], d_b: &[Int]) -> Result<Isometry> {
    if classify_mirrors(l, d_a, d_b)? != MirrorRelation::ParallelAtInfinity {
        return Err(Error::NotParallel);
    }
    Ok(l.reflection(d_b)?.compose(&l.reflection(d_a)?))
}

/// `g ≠ I` and `(g − I)ⁿ = 0`.
pub fn is_unipotent(g: &Isometry) -> bool {
    let n = g.dim();
    let d = g.matrix().sub(&Matrix::identity(n));
    !d.is_zero() && d.pow(n as u32).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PkSample {
    pub k: i64,
    pub roots: RootSet,
    /// The translation exponent `t` each root came from.
    pub shifts: Vec<i64>,
    pub rho: RatVector,
    pub cusp: Vector,
}

/// A finite window of the family: `φᵗ(e0)` for `t ≢ 0 (mod k)` and
/// `φᵗ(f01), φᵗ(f02)` for `t ≡ 0`, `|t| ≤ window`. Checks that the sample
/// is crystallographic, pairwise non-obtuse, and that the Weyl vector of the
/// seeds works for every element.
pub fn build_pk_sample(
    l: &Lattice,
    phi: &Isometry,
    e0: &[Int],
    f01: &[Int],
    f02: &[Int],
    k: i64,
    window: i64,
) -> Result<PkSample> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("k must be at least 2, got {k}")));
    }
    if window < 0 {
        return Err(Error::OutOfRange(format!("window must be nonnegative, got {window}")));
    }
    if !l.is_isometry(phi)? || !is_unipotent(phi) {
        return Err(Error::Invalid("translation must be a unipotent lattice isometry".into()));
    }
    let cusp = fixed_isotropic(l, std::slice::from_ref(phi))?
        .ok_or_else(|| Error::Invalid("translation fixes no isotropic vector".into()))?;
    let seeds = RootSet::new(l, vec![e0.to_vec(), f01.to_vec(), f02.to_vec()])?;
    let rho = lattice_weyl_vector(l, &seeds)?.rho.ok_or(Error::MissingWeylVector)?;

    let mut roots = Vec::new();
    let mut shifts = Vec::new();
    for t in -window..=window {
        let g = phi.power(t).expect("unipotent isometries are invertible");
        let seeds: Vec<&[Int]> = if t.rem_euclid(k) != 0 { vec![e0] } else { vec![f01, f02] };
        for s in seeds {
            roots.push(g.apply(s));
            shifts.push(t);
        }
    }
    let roots = RootSet::new(l, roots)?;
    roots.check_non_obtuse(l)?;
    for a in roots.roots() {
        if l.form_rat(&rho, &to_rat(a)) != half_norm_target(l, a) {
            return Err(Error::MissingWeylVector);
        }
    }
    Ok(PkSample { k, roots, shifts, rho, cusp })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChamberClass {
    Elliptic,
    /// Necessary conditions for a parabolic chamber hold; finite index of
    /// the symmetry group is not certified.
    ParabolicCandidate { cusp: Vector },
    Indefinite,
}

impl ChamberClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChamberClass::Elliptic => "elliptic",
            ChamberClass::ParabolicCandidate { .. } => "parabolic-candidate",
            ChamberClass::Indefinite => "indefinite",
        }
    }
}

pub fn classify_chamber(l: &Lattice, p: &RootSet, sym: &SymmetryGroup) -> Result<ChamberClass> {
    if !p.is_empty() && is_arithmetic_type(l, p.roots())?.finite_volume {
        return Ok(ChamberClass::Elliptic);
    }
    for g in &sym.generators {
        if !is_unipotent(g) {
            continue;
        }
        let Some(c) = fixed_isotropic(l, std::slice::from_ref(g)).ok().flatten() else { continue };
        for cand in [c.clone(), c.iter().map(|x| -x).collect()] {
            if p.roots().iter().all(|a| !l.form(&cand, a).is_positive()) {
                return Ok(ChamberClass::ParabolicCandidate { cusp: cand });
            }
        }
    }
    Ok(ChamberClass::Indefinite)
}
