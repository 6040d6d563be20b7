//! Vinberg's algorithm.
//!
//! Candidate roots are processed in order of increasing height relative to a
//! controller `h` inside the chamber. Heights are compared through the exact
//! key `S(h,δ)² / S(δ,δ)` so no square roots are taken. Candidates of a given
//! norm are found by enumerating lattice points of the positive definite
//! majorant `F(x) = S(x,x) + 2 S(x,h)² / |S(h,h)|` (a Fincke–Pohst search
//! over an exact rational Cholesky decomposition) and filtering on norm and
//! pairing with `h`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    column_hermite, floor_sqrt, is_primitive, rank_of_vectors, rat_from_int, reduce_mod_hermite,
    Int, Matrix, Rat, Vector,
};
use crate::cones::is_arithmetic_type;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::rootset::{gram_graph_connected, gram_of};

/// Exact stand-in for the squared height `4 S(h,δ)² / S(δ,δ)`.
#[derive(Clone, Debug)]
pub struct HeightKey {
    pub numerator: Int,
    pub denominator: Int,
}

impl HeightKey {
    pub fn new(numerator: Int, denominator: Int) -> Self {
        assert!(!numerator.is_negative() && denominator.is_positive());
        HeightKey { numerator, denominator }
    }

    pub fn from_ints(numerator: i64, denominator: i64) -> Self {
        HeightKey::new(Int::from(numerator), Int::from(denominator))
    }

    pub fn of(l: &Lattice, h: &[Int], d: &[Int]) -> Self {
        let p = l.form(h, d);
        HeightKey::new(&p * &p, l.norm(d))
    }

    pub fn value(&self) -> Rat {
        Rat::new(self.numerator.clone(), self.denominator.clone())
    }
}

impl PartialEq for HeightKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeightKey {}

impl PartialOrd for HeightKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeightKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.numerator * &other.denominator).cmp(&(&other.numerator * &self.denominator))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    hermite: Matrix<Int>,
    allowed: BTreeSet<Vector>,
}

/// Which roots the reflection group is generated by: primitive roots of the
/// listed norms, optionally restricted to residues modulo a sublattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFilter {
    norms: BTreeSet<Int>,
    congruence: Option<Congruence>,
}

impl RootFilter {
    pub fn new(norms: impl IntoIterator<Item = i64>) -> Result<Self> {
        let norms: BTreeSet<Int> = norms.into_iter().map(Int::from).collect();
        if norms.is_empty() {
            return Err(Error::Invalid("norm set must be nonempty".into()));
        }
        if let Some(bad) = norms.iter().find(|n| !n.is_positive()) {
            return Err(Error::Invalid(format!("root norms must be positive, got {bad}")));
        }
        Ok(RootFilter { norms, congruence: None })
    }

    /// Restricts to roots whose class modulo the sublattice spanned by the
    /// columns of `basis` is one of `residues`.
    pub fn with_congruence(mut self, basis: &Matrix<Int>, residues: &[Vector]) -> Result<Self> {
        let hermite = column_hermite(basis)?;
        let allowed = residues.iter().map(|r| reduce_mod_hermite(&hermite, r)).collect();
        self.congruence = Some(Congruence { hermite, allowed });
        Ok(self)
    }

    pub fn norms(&self) -> impl Iterator<Item = &Int> {
        self.norms.iter()
    }

    fn admits_residue(&self, x: &[Int]) -> bool {
        match &self.congruence {
            None => true,
            Some(c) => c.allowed.contains(&reduce_mod_hermite(&c.hermite, x)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnumeration {
    /// Roots with `S(h,δ) < 0` in height order (ties lexicographic).
    pub roots: Vec<(Vector, HeightKey)>,
    /// Roots orthogonal to the controller.
    pub on_mirror: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct Limits {
    pub max_key: HeightKey,
    pub max_roots: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_key: HeightKey::from_ints(4096, 1), max_roots: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberReport {
    pub accepted: Vec<Vector>,
    pub keys: Vec<HeightKey>,
    /// The accepted walls bound a finite-volume polyhedron.
    pub terminated: bool,
    /// A budget ran out before termination.
    pub exhausted: bool,
    pub gram: Matrix<Int>,
}

fn check_controller(l: &Lattice, h: &[Int]) -> Result<Int> {
    if h.len() != l.rank() {
        return Err(Error::DimensionMismatch { expected: l.rank(), got: h.len() });
    }
    let hh = l.norm(h);
    if !hh.is_negative() {
        return Err(Error::NotTimelike(hh.to_string()));
    }
    Ok(hh)
}

/// Calls `visit` on every integer point with `F(x) ≤ bound`, where `F` is
/// the positive definite form with Gram matrix `q`.
pub fn enumerate_ellipsoid(q: &Matrix<Rat>, bound: &Rat, mut visit: impl FnMut(&[Int])) {
    let n = q.rows();
    // q[i][i] on the diagonal, q[i][j] (j > i) the Cholesky multipliers
    let mut c = q.clone();
    for i in 0..n {
        for j in i + 1..n {
            let v = c[(i, j)].clone();
            c[(j, i)] = v;
            c[(i, j)] = &c[(i, j)] / &c[(i, i)];
        }
        for k in i + 1..n {
            for m in k..n {
                let v = &c[(k, i)] * &c[(i, m)];
                c[(k, m)] -= v;
            }
        }
    }
    for i in 0..n {
        assert!(c[(i, i)].is_positive(), "majorant is not positive definite");
    }
    let mut x = vec![Int::zero(); n];
    descend(&c, n, bound.clone(), &mut x, &mut visit);
}

fn descend(c: &Matrix<Rat>, level: usize, budget: Rat, x: &mut Vec<Int>, visit: &mut impl FnMut(&[Int])) {
    if level == 0 {
        visit(x);
        return;
    }
    let i = level - 1;
    let n = c.rows();
    let mut center = Rat::zero();
    for j in i + 1..n {
        center -= &c[(i, j)] * rat_from_int(&x[j]);
    }
    let span = floor_sqrt(&(&budget / &c[(i, i)])) + Int::one();
    let lo = center.floor().to_integer() - &span;
    let hi = center.ceil().to_integer() + &span;
    let mut v = lo;
    while v <= hi {
        let diff = rat_from_int(&v) - &center;
        let used = &c[(i, i)] * &diff * &diff;
        if used <= budget {
            x[i] = v.clone();
            descend(c, i, &budget - used, x, visit);
        }
        v += 1;
    }
    x[i] = Int::zero();
}

pub(crate) fn majorant(l: &Lattice, h: &[Int], hh: &Int) -> Matrix<Rat> {
    let gh = l.pairings_with_basis(h);
    let abs = rat_from_int(&hh.abs());
    let two = Rat::from_integer(Int::from(2));
    Matrix::from_fn(l.rank(), l.rank(), |i, j| {
        rat_from_int(&l.gram()[(i, j)]) + &two * rat_from_int(&(&gh[i] * &gh[j])) / &abs
    })
}

/// All admissible roots with `0 < key ≤ max_key` (plus those on the
/// controller's mirror, reported apart).
pub fn enumerate_roots(
    l: &Lattice,
    h: &[Int],
    filter: &RootFilter,
    max_key: &HeightKey,
) -> Result<RootEnumeration> {
    enumerate_window(l, h, filter, None, max_key)
}

fn enumerate_window(
    l: &Lattice,
    h: &[Int],
    filter: &RootFilter,
    min_key: Option<&HeightKey>,
    max_key: &HeightKey,
) -> Result<RootEnumeration> {
    let hh = check_controller(l, h)?;
    let q = majorant(l, h, &hh);
    let abs = rat_from_int(&hh.abs());
    let two = Rat::from_integer(Int::from(2));
    let mut roots = Vec::new();
    let mut on_mirror = Vec::new();
    for d in filter.norms() {
        let dr = rat_from_int(d);
        // F(δ) = d + 2 m² / |h²| with m² ≤ key·d
        let bound = &dr + &two * max_key.value() * &dr / &abs;
        enumerate_ellipsoid(&q, &bound, |x| {
            if &l.norm(x) != d || !is_primitive(x) || !filter.admits_residue(x) {
                return;
            }
            let m = l.form(h, x);
            if m.is_positive() {
                return;
            }
            if !l.is_crystallographic(x).unwrap_or(false) {
                return;
            }
            if m.is_zero() {
                on_mirror.push(x.to_vec());
                return;
            }
            let key = HeightKey::new(&m * &m, d.clone());
            if &key > max_key || min_key.is_some_and(|lo| &key <= lo) {
                return;
            }
            roots.push((x.to_vec(), key));
        });
    }
    roots.sort_by(|(a, ka), (b, kb)| ka.cmp(kb).then_with(|| a.cmp(b)));
    on_mirror.sort();
    Ok(RootEnumeration { roots, on_mirror })
}

/// Runs Vinberg's algorithm until the accepted walls bound a finite-volume
/// polyhedron or a limit is hit.
pub fn run(l: &Lattice, h: &[Int], filter: &RootFilter, limits: &Limits) -> Result<ChamberReport> {
    check_controller(l, h)?;
    let mirror = enumerate_window(l, h, filter, None, &HeightKey::from_ints(0, 1))?;
    if let Some(r) = mirror.on_mirror.into_iter().next() {
        return Err(Error::ControllerOnMirror(r));
    }
    let mut accepted: Vec<Vector> = Vec::new();
    let mut keys: Vec<HeightKey> = Vec::new();
    let finish = |accepted: Vec<Vector>, keys, terminated, exhausted| {
        let gram = gram_of(l, &accepted);
        Ok(ChamberReport { accepted, keys, terminated, exhausted, gram })
    };
    if limits.max_roots == 0 {
        return finish(accepted, keys, false, true);
    }
    let mut lo: Option<HeightKey> = None;
    let mut hi = HeightKey::from_ints(1, 1).min(limits.max_key.clone());
    loop {
        let shell = enumerate_window(l, h, filter, lo.as_ref(), &hi)?;
        for (delta, key) in shell.roots {
            if accepted.iter().any(|a| l.form(a, &delta).is_positive()) {
                continue;
            }
            accepted.push(delta);
            keys.push(key);
            if accepted.len() >= l.rank() && is_arithmetic_type(l, &accepted)?.finite_volume {
                return finish(accepted, keys, true, false);
            }
            if accepted.len() >= limits.max_roots {
                return finish(accepted, keys, false, true);
            }
        }
        if hi >= limits.max_key {
            return finish(accepted, keys, false, true);
        }
        let doubled = HeightKey::new(&hi.numerator * Int::from(2), hi.denominator.clone());
        lo = Some(hi);
        hi = doubled.min(limits.max_key.clone());
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramBoundReport {
    pub violations: Vec<(usize, usize)>,
    /// Indices of `rank` roots that are linearly independent, have a
    /// connected Gram graph and satisfy the bound pairwise.
    pub spanning_connected_subset: Option<Vec<usize>>,
}

/// Pairs `(i, j)`, `i < j`, violating
/// `−2 ≤ −2 S_ij / √(S_ii S_jj) < 62` (or `≤ 62` when not strict), decided
/// through squared comparisons.
pub fn gram_bound_violations(gram: &Matrix<Int>, strict: bool) -> Vec<(usize, usize)> {
    let n = gram.rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if !pair_within_bound(gram, i, j, strict) {
                out.push((i, j));
            }
        }
    }
    out
}

fn pair_within_bound(gram: &Matrix<Int>, i: usize, j: usize, strict: bool) -> bool {
    let s = &gram[(i, j)];
    let nn = &gram[(i, i)] * &gram[(j, j)];
    let sq = s * s;
    // lower: S_ij ≤ √(S_ii S_jj)
    if s.is_positive() && sq > nn {
        return false;
    }
    // upper: −2 S_ij / √(S_ii S_jj) < 62  ⇔  4 S_ij² < 62² S_ii S_jj for S_ij < 0
    if s.is_negative() {
        let lhs = Int::from(4) * &sq;
        let rhs = Int::from(62 * 62) * &nn;
        if (strict && lhs >= rhs) || (!strict && lhs > rhs) {
            return false;
        }
    }
    true
}

pub fn gram_bound_check(l: &Lattice, p: &[Vector], strict: bool) -> Result<GramBoundReport> {
    for r in p {
        let n = l.pair_int(r, r)?;
        if !n.is_positive() {
            return Err(Error::NonPositiveNorm { vector: r.clone(), norm: n });
        }
    }
    let gram = gram_of(l, p);
    let violations = gram_bound_violations(&gram, strict);
    let spanning_connected_subset = subsets(p.len(), l.rank()).into_iter().find(|idx| {
        let vs: Vec<Vector> = idx.iter().map(|&i| p[i].clone()).collect();
        rank_of_vectors(&vs) == l.rank()
            && gram_graph_connected(&gram, idx)
            && idx.iter().all(|&i| idx.iter().all(|&j| pair_within_bound(&gram, i, j, strict)))
    });
    Ok(GramBoundReport { violations, spanning_connected_subset })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `S(c,δ)² / S(δ,δ)` for each wall not through the cusp `c`: the squared
/// horospherical radii of a (possibly infinite) chamber's known prefix.
pub fn r_squared_multiset(l: &Lattice, c: &[Int], walls: &[Vector]) -> Vec<Rat> {
    let mut out: Vec<Rat> = walls
        .iter()
        .filter_map(|d| {
            let p = l.form(c, d);
            (!p.is_zero()).then(|| Rat::new(&p * &p, l.norm(d)))
        })
        .collect();
    out.sort();
    out
}

/// Parses a height key bound such as `"144/8"` or `"20"`.
pub fn parse_key(text: &str) -> Result<HeightKey> {
    let bad = || Error::Invalid(format!("bad height key {text:?}"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (text.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if n < 0 || d <= 0 {
        return Err(bad());
    }
    Ok(HeightKey::from_ints(n, d))
}

impl std::fmt::Display for HeightKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

/// Convenience for small keys in reports.
pub fn key_as_f64(k: &HeightKey) -> f64 {
    k.value().to_f64().unwrap_or(f64::NAN)
}
