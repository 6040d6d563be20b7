//! Polyhedral cones cut out by walls `S(x, α) ≤ 0`.
//!
//! Extreme rays are computed with the double description method over the
//! integers: rays are kept as primitive integer vectors throughout, new rays
//! are positive integer combinations of adjacent pairs, and adjacency is
//! decided by the rank of the common tight inequalities.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{
    dot, primitive_part, rank, rank_of_vectors, scale_vec, solve, sub_vec, to_int_exact,
    to_rat, to_rat_matrix, Int, Matrix, Rat, Solution, Vector,
};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Generator description of `{x : S(x, α) ≤ 0 for every wall α}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub walls: Vec<Vector>,
    /// Primitive, pairwise non-proportional, lexicographically sorted.
    pub rays: Vec<Vector>,
    /// Basis of the largest linear subspace contained in the cone.
    pub lineality: Vec<Vector>,
}

impl Cone {
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Whether `x` satisfies every wall inequality.
    pub fn contains(&self, l: &Lattice, x: &[Int]) -> bool {
        self.walls.iter().all(|a| !l.form(x, a).is_positive())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithmeticTypeReport {
    pub arithmetic: bool,
    pub finite_volume: bool,
    /// A spacelike vector of the dual cone when the test fails (if one was
    /// found among small combinations of generators).
    pub witness: Option<Vector>,
    pub cone: Cone,
}

/// Extreme rays and lineality of `{x ∈ Qⁿ : a·x ≤ 0 for all rows a}`.
pub fn extreme_rays(rows: &[Vector], dim: usize) -> (Vec<Vector>, Vec<Vector>) {
    let mut lineality: Vec<Vector> = (0..dim)
        .map(|i| (0..dim).map(|j| Int::from((i == j) as i64)).collect())
        .collect();
    let mut rays: Vec<Vector> = Vec::new();
    let mut processed: Vec<&Vector> = Vec::new();

    for a in rows {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let l0 = lineality.remove(pos);
            let v0 = dot(a, &l0);
            let s0 = Int::from(v0.signum());
            let abs0 = v0.abs();
            // project the remaining generators onto a·x = 0 along l0
            let project = |x: &Vector| {
                let ax = dot(a, x);
                let y = sub_vec(&scale_vec(&abs0, x), &scale_vec(&(&s0 * ax), &l0));
                primitive_part(&y)
            };
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(scale_vec(&-s0, &l0));
        } else {
            let values: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
            let mut next: Vec<Vector> = Vec::new();
            let (mut plus, mut minus) = (Vec::new(), Vec::new());
            for (i, v) in values.iter().enumerate() {
                if v.is_positive() {
                    plus.push(i);
                } else {
                    if v.is_negative() {
                        minus.push(i);
                    }
                    next.push(rays[i].clone());
                }
            }
            let need = dim - lineality.len();
            for &p in &plus {
                for &q in &minus {
                    if adjacent(&processed, &rays[p], &rays[q], need) {
                        let comb = sub_vec(
                            &scale_vec(&values[p], &rays[q]),
                            &scale_vec(&values[q], &rays[p]),
                        );
                        next.push(primitive_part(&comb));
                    }
                }
            }
            rays = next;
        }
        processed.push(a);
    }
    let rays: BTreeSet<Vector> = rays.into_iter().filter(|r| !r.iter().all(Zero::is_zero)).collect();
    (rays.into_iter().collect(), lineality)
}

/// `p` and `q` span a 2-face: the inequalities tight at both have rank
/// `dim − lineality − 2`.
fn adjacent(processed: &[&Vector], p: &Vector, q: &Vector, pointed_dim: usize) -> bool {
    if pointed_dim < 2 {
        return false;
    }
    let target = pointed_dim - 2;
    let common: Vec<Vector> = processed
        .iter()
        .filter(|a| dot(a, p).is_zero() && dot(a, q).is_zero())
        .map(|a| (*a).clone())
        .collect();
    if common.len() < target {
        return false;
    }
    rank_of_vectors(&common) == target
}

/// Generators of the dual cone `{x : S(x, α) ≤ 0 ∀ α ∈ P}`.
pub fn dual_extreme_rays(l: &Lattice, p: &[Vector]) -> Result<Cone> {
    if p.is_empty() {
        return Err(Error::EmptyRootSet);
    }
    for a in p {
        if a.len() != l.rank() {
            return Err(Error::DimensionMismatch { expected: l.rank(), got: a.len() });
        }
    }
    let rows: Vec<Vector> = p.iter().map(|a| l.pairings_with_basis(a)).collect();
    let (rays, lineality) = extreme_rays(&rows, l.rank());
    Ok(Cone { walls: p.to_vec(), rays, lineality })
}

/// The dual cone lies in the closed future light cone: it is pointed, every
/// extreme ray has `S(r, r) ≤ 0`, and the rays pair nonpositively.
pub fn is_arithmetic_type(l: &Lattice, p: &[Vector]) -> Result<ArithmeticTypeReport> {
    let cone = dual_extreme_rays(l, p)?;
    let rays_ok = cone.rays.iter().all(|r| !l.norm(r).is_positive());
    let same_half = cone
        .rays
        .iter()
        .enumerate()
        .all(|(i, r)| cone.rays[i + 1..].iter().all(|s| !l.form(r, s).is_positive()));
    let arithmetic = cone.is_pointed() && !cone.rays.is_empty() && rays_ok && same_half;
    let witness = if arithmetic { None } else { find_spacelike(l, &cone) };
    Ok(ArithmeticTypeReport { arithmetic, finite_volume: arithmetic, witness, cone })
}

fn find_spacelike(l: &Lattice, cone: &Cone) -> Option<Vector> {
    let mut gens: Vec<Vector> = cone.rays.clone();
    for v in &cone.lineality {
        gens.push(v.clone());
        gens.push(v.iter().map(|x| -x).collect());
    }
    let spacelike = |v: &Vector| l.norm(v).is_positive();
    if let Some(v) = gens.iter().find(|v| spacelike(v)) {
        return Some(v.clone());
    }
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            for a in 1..=6i64 {
                for b in 1..=6i64 {
                    let v: Vector = gens[i]
                        .iter()
                        .zip(&gens[j])
                        .map(|(x, y)| x * a + y * b)
                        .collect();
                    if spacelike(&v) {
                        return Some(primitive_part(&v));
                    }
                }
            }
        }
    }
    None
}

/// All tuples of `m` nonnegative integers with sum in `1..=max_total`,
/// ordered by total and then in decreasing lexicographic order.
pub fn coefficient_tuples(m: usize, max_total: usize) -> Vec<Vec<i64>> {
    fn rec(m: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == m - 1 {
            cur.push(left as i64);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a as i64);
            rec(m, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    for total in 1..=max_total {
        rec(m, total, &mut Vec::with_capacity(m), &mut out);
    }
    out
}

pub(crate) fn combine(p: &[Vector], coeffs: &[i64]) -> Vector {
    let n = p.first().map_or(0, Vec::len);
    let mut x = vec![Int::zero(); n];
    for (a, c) in p.iter().zip(coeffs) {
        if *c != 0 {
            for (xi, ai) in x.iter_mut().zip(a) {
                *xi += ai * c;
            }
        }
    }
    x
}

/// Coefficient tuples `a` (height `Σ a ≤ max_height`) whose combination
/// `x = Σ a(α) α` is nonzero and satisfies `S(x, α) ≤ 0` for every `α ∈ P`.
pub fn k_element_coefficients(l: &Lattice, p: &[Vector], max_height: usize) -> Vec<Vec<i64>> {
    coefficient_tuples(p.len(), max_height)
        .into_iter()
        .filter(|a| {
            let x = combine(p, a);
            !x.iter().all(Zero::is_zero) && p.iter().all(|al| !l.form(&x, al).is_positive())
        })
        .collect()
}

/// The elements of `K = Q₊ ∩ Q₊*` of height at most `max_height`, as lattice
/// vectors (deduplicated, in order of first appearance).
pub fn k_elements(l: &Lattice, p: &[Vector], max_height: usize) -> Vec<Vector> {
    let mut seen = BTreeSet::new();
    k_element_coefficients(l, p, max_height)
        .into_iter()
        .map(|a| combine(p, &a))
        .filter(|x| seen.insert(x.clone()))
        .collect()
}

/// Nonnegative integers `a(α)` with `Σ a(α) α = x`, if any.
///
/// Independent `P` is solved directly. Otherwise the search fixes the
/// coefficients of the roots outside a basis subset, bounded through a dual
/// interior point `h` (`Σ a(α) |S(α,h)| = −S(x,h)`), and solves for the rest.
/// `max_nodes` caps that search; `None` is returned when it runs out.
pub fn q_plus_membership(
    l: &Lattice,
    p: &[Vector],
    x: &[Int],
    max_nodes: usize,
) -> Option<Vec<Int>> {
    if p.is_empty() {
        return x.iter().all(Zero::is_zero).then(Vec::new);
    }
    let basis = independent_subset(p);
    let rest: Vec<usize> = (0..p.len()).filter(|i| !basis.contains(i)).collect();
    let basis_mat = Matrix::from_columns(
        &basis.iter().map(|&i| p[i].clone()).collect::<Vec<_>>(),
    )
    .ok()?;
    let solve_basis = |target: &[Int]| -> Option<Vec<Int>> {
        match solve(&to_rat_matrix(&basis_mat), &to_rat(target)) {
            Solution::Unique(c) => {
                let c = to_int_exact(&c)?;
                c.iter().all(|v| !v.is_negative()).then_some(c)
            }
            _ => None,
        }
    };
    let assemble = |free: &[Int], fixed: Vec<Int>| {
        let mut out = vec![Int::zero(); p.len()];
        for (k, &i) in basis.iter().enumerate() {
            out[i] = fixed[k].clone();
        }
        for (k, &i) in rest.iter().enumerate() {
            out[i] = free[k].clone();
        }
        out
    };
    if rest.is_empty() {
        return solve_basis(x).map(|c| assemble(&[], c));
    }
    let cone = dual_extreme_rays(l, p).ok()?;
    if !cone.is_pointed() || cone.rays.is_empty() {
        return None;
    }
    let h = cone.rays.iter().fold(vec![Int::zero(); l.rank()], |acc, r| {
        acc.iter().zip(r).map(|(a, b)| a + b).collect()
    });
    let weights: Vec<Int> = p.iter().map(|a| -l.form(a, &h)).collect();
    if weights.iter().any(|w| !w.is_positive()) {
        return None;
    }
    let budget = -l.form(x, &h);
    if budget.is_negative() {
        return None;
    }
    let mut nodes = 0usize;
    let mut free = Vec::with_capacity(rest.len());
    dfs(
        p, &rest, &weights, x.to_vec(), budget, &mut free, &mut nodes, max_nodes, &solve_basis,
    )
    .map(|(free, fixed)| assemble(&free, fixed))
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    p: &[Vector],
    rest: &[usize],
    weights: &[Int],
    remaining: Vector,
    budget: Int,
    free: &mut Vec<Int>,
    nodes: &mut usize,
    max_nodes: usize,
    solve_basis: &dyn Fn(&[Int]) -> Option<Vec<Int>>,
) -> Option<(Vec<Int>, Vec<Int>)> {
    *nodes += 1;
    if *nodes > max_nodes {
        return None;
    }
    let k = free.len();
    if k == rest.len() {
        return solve_basis(&remaining).map(|c| (free.clone(), c));
    }
    let i = rest[k];
    let top = budget.div_floor(&weights[i]);
    let mut a = Int::zero();
    while a <= top {
        let next: Vector = remaining.iter().zip(&p[i]).map(|(r, v)| r - &a * v).collect();
        free.push(a.clone());
        let nb = &budget - &a * &weights[i];
        if let Some(found) =
            dfs(p, rest, weights, next, nb, free, nodes, max_nodes, solve_basis)
        {
            return Some(found);
        }
        free.pop();
        if *nodes > max_nodes {
            return None;
        }
        a += 1;
    }
    None
}

/// Greedy maximal linearly independent subset, by index.
fn independent_subset(p: &[Vector]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..p.len() {
        let mut trial: Vec<Vector> = chosen.iter().map(|&j| p[j].clone()).collect();
        trial.push(p[i].clone());
        let m = Matrix::from_rows(trial.iter().map(|v| to_rat(v)).collect()).expect("rows");
        if rank(&m) == trial.len() {
            chosen.push(i);
        }
    }
    chosen
}

/// Whether a rational point lies in the closed dual cone.
pub fn dual_contains_rat(l: &Lattice, p: &[Vector], x: &[Rat]) -> bool {
    p.iter().all(|a| !l.form_rat(x, &to_rat(a)).is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ivec, kernel, primitive_from_rat};
    use crate::fixtures;
    use proptest::prelude::*;

    fn triangle() -> Vec<Vector> {
        vec![ivec(&[1, 0, 0]), ivec(&[0, 1, 0]), ivec(&[0, 0, 1])]
    }

    /// Independent oracle: every (dim−1)-subset of rows with a 1-dimensional
    /// kernel gives a candidate direction; keep the feasible signs.
    fn brute_force_rays(rows: &[Vector], dim: usize) -> BTreeSet<Vector> {
        let mut out = BTreeSet::new();
        let idx: Vec<usize> = (0..rows.len()).collect();
        for subset in subsets(&idx, dim - 1) {
            let m = Matrix::from_rows(subset.iter().map(|&i| to_rat(&rows[i])).collect()).unwrap();
            let k = kernel(&m);
            if k.len() != 1 {
                continue;
            }
            let v = primitive_from_rat(&k[0]);
            for cand in [v.clone(), v.iter().map(|x| -x).collect::<Vector>()] {
                if rows.iter().all(|a| !dot(a, &cand).is_positive()) {
                    out.insert(cand);
                }
            }
        }
        out
    }

    fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if items.len() < k {
            return vec![];
        }
        let mut out = subsets(&items[1..], k - 1);
        for s in &mut out {
            s.insert(0, items[0]);
        }
        out.extend(subsets(&items[1..], k));
        out
    }

    #[test]
    fn triangle_dual_rays() {
        let l = fixtures::ex134();
        let cone = dual_extreme_rays(&l, &triangle()).unwrap();
        assert_eq!(cone.rays, vec![ivec(&[0, 1, 1]), ivec(&[1, 0, 1]), ivec(&[1, 1, 0])]);
        assert!(cone.lineality.is_empty());
        assert!(cone.rays.iter().all(|r| l.norm(r) == int(0)));
    }

    #[test]
    fn single_wall_in_rank_two() {
        let l = fixtures::u();
        let cone = dual_extreme_rays(&l, &[ivec(&[1, -1])]).unwrap();
        assert_eq!(cone.rays.len(), 1);
        assert_eq!(cone.lineality.len(), 1);
        let r = &cone.rays[0];
        assert!(l.form(r, &ivec(&[1, -1])).is_negative());
        assert!(l.form(&cone.lineality[0], &ivec(&[1, -1])).is_zero());
    }

    #[test]
    fn simplicial_cone_from_positive_definite_block() {
        // U ⊕ A1 ⊕ A1: walls e3, e4 and e1 − e2 are mutually orthogonal and
        // positive; adding e2 makes the system full rank.
        let l = fixtures::u_a1a1();
        let p = vec![ivec(&[0, 0, 1, 0]), ivec(&[0, 0, 0, 1]), ivec(&[1, -1, 0, 0]), ivec(&[0, 1, 0, 0])];
        let cone = dual_extreme_rays(&l, &p).unwrap();
        // rays are the columns of −(G P)^{-1} cleared to primitive vectors
        let rows: Vec<Vector> = p.iter().map(|a| l.pairings_with_basis(a)).collect();
        let m = to_rat_matrix(&Matrix::from_rows(rows).unwrap());
        let inv = crate::arith::inverse(&m).unwrap();
        let mut expect: Vec<Vector> = (0..4)
            .map(|j| primitive_from_rat(&inv.col(j).iter().map(|x| -x.clone()).collect::<Vec<_>>()))
            .collect();
        expect.sort();
        assert_eq!(cone.rays, expect);
    }

    #[test]
    fn arithmetic_type_examples() {
        let l = fixtures::ex134();
        let rep = is_arithmetic_type(&l, &triangle()).unwrap();
        assert!(rep.arithmetic && rep.finite_volume);
        assert!(rep.witness.is_none());
        let half = is_arithmetic_type(&l, &[ivec(&[1, 0, 0])]).unwrap();
        assert!(!half.arithmetic);
        let w = half.witness.expect("spacelike witness");
        assert!(l.norm(&w).is_positive());
        assert!(half.cone.contains(&l, &w));
        assert_eq!(is_arithmetic_type(&l, &[]).unwrap_err(), Error::EmptyRootSet);
    }

    #[test]
    fn membership_examples() {
        let l = fixtures::ex134();
        let p = triangle();
        assert_eq!(q_plus_membership(&l, &p, &ivec(&[0, 1, 0]), 100), Some(ivec(&[0, 1, 0])));
        assert_eq!(q_plus_membership(&l, &p, &ivec(&[0, 1, 1]), 100), Some(ivec(&[0, 1, 1])));
        assert_eq!(q_plus_membership(&l, &p, &ivec(&[1, 1, 1]), 100), Some(ivec(&[1, 1, 1])));
        assert_eq!(q_plus_membership(&l, &p, &ivec(&[1, -1, 1]), 100), None);
        // dependent set: add (1,1,0) = δ1 + δ2; not a wall, but membership is
        // pure cone arithmetic
        let mut q = p.clone();
        q.push(ivec(&[1, 1, 1]));
        let c = q_plus_membership(&l, &q, &ivec(&[2, 2, 3]), 10_000).unwrap();
        assert_eq!(combine(&q, &c.iter().map(|v| v.try_into().unwrap()).collect::<Vec<i64>>()), ivec(&[2, 2, 3]));
        assert!(c.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn k_elements_examples() {
        let l = fixtures::ex134();
        let p = triangle();
        let k2 = k_elements(&l, &p, 2);
        for v in [[1, 1, 0], [1, 0, 1], [0, 1, 1]] {
            assert!(k2.contains(&ivec(&v)));
        }
        for v in &p {
            assert!(!k2.contains(v));
        }
        assert!(k_elements(&l, &p, 0).is_empty());
        let k6 = k_elements(&l, &p, 6);
        assert!(k6.iter().all(|x| !l.norm(x).is_positive()));
    }

    #[test]
    fn coefficient_tuple_counts() {
        // C(N + m, m) − 1 tuples of total 1..=N
        assert_eq!(coefficient_tuples(3, 6).len(), 83);
        assert_eq!(coefficient_tuples(2, 3).len(), 9);
        assert_eq!(coefficient_tuples(3, 1), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    fn pointed_generators(dim: usize) -> impl Strategy<Value = Vec<Vector>> {
        prop::collection::vec(prop::collection::vec(-4i64..=4, dim - 1), dim..dim + 3).prop_map(
            move |vs| {
                vs.into_iter()
                    .map(|mut v| {
                        v.insert(0, 3);
                        ivec(&v)
                    })
                    .collect()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn double_description_matches_brute_force(dim in 2usize..=4, seed in pointed_generators(4)) {
            let rows: Vec<Vector> = seed.iter().map(|v| v[..dim].to_vec()).collect();
            prop_assume!(rank_of_vectors(&rows) == dim);
            let (rays, lin) = extreme_rays(&rows, dim);
            prop_assert!(lin.is_empty());
            let oracle = brute_force_rays(&rows, dim);
            prop_assert_eq!(rays.iter().cloned().collect::<BTreeSet<_>>(), oracle);
            // soundness: each ray satisfies all inequalities and is tight on dim−1 independent ones
            for r in &rays {
                prop_assert!(rows.iter().all(|a| !dot(a, r).is_positive()));
                let tight: Vec<Vector> = rows.iter().filter(|a| dot(a, r).is_zero()).cloned().collect();
                prop_assert_eq!(rank_of_vectors(&tight), dim - 1);
            }
        }

        #[test]
        fn duality_round_trip(dim in 2usize..=4, seed in pointed_generators(4)) {
            // the cone generated by `gens` lies in x₀ > 0
            let gens: Vec<Vector> = seed.iter().map(|v| primitive_part(&v[..dim])).collect();
            prop_assume!(rank_of_vectors(&gens) == dim);
            let (facets, lin) = extreme_rays(&gens, dim);
            prop_assert!(lin.is_empty());
            let (back, lin2) = extreme_rays(&facets, dim);
            prop_assert!(lin2.is_empty());
            // the double dual is generated by the irredundant generators
            let gen_set: BTreeSet<Vector> = gens.iter().cloned().collect();
            for r in &back {
                prop_assert!(gen_set.contains(r));
            }
            for g in &gens {
                prop_assert!(facets.iter().all(|f| !dot(f, g).is_positive()));
            }
            let (again, _) = extreme_rays(&back, dim);
            prop_assert_eq!(again, facets);
        }
    }
}
