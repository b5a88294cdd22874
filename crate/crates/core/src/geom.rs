//! Exact rational convex geometry at small dimension: point-in-hull and
//! point-in-cone tests via Caratheodory decompositions over independent
//! subsets, hull vertex extraction, rational Gaussian elimination, and
//! Fourier-Motzkin feasibility with witness reconstruction.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

fn to_rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Rank of a rational matrix (rows as vectors).
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &pivot;
                for j in c..ncols {
                    let t = &factor * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Solve `A x = b` when the columns of `A` are linearly independent; returns
/// the unique solution if the system is consistent, `None` otherwise.
pub fn solve_independent(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..nrows {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] / &pivot;
                for j in c..=ncols {
                    let t = &factor * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if pivots.len() < ncols {
        return None; // columns dependent; caller filters these out
    }
    // consistency: rows below r must have zero rhs
    for row in m.iter().skip(r) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = &m[i][ncols] / &m[i][c];
    }
    Some(x)
}

/// Basis of the rational null space of `m` (rows are constraint vectors).
pub fn rational_kernel(rows: &[Vec<Rat>], nvars: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..nvars {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for j in 0..nvars {
            m[r][j] = &m[r][j] / &pivot;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..nvars {
                    let t = &factor * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..nvars).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![Rat::zero(); nvars];
        v[fc] = Rat::one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[i][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Is `p` in the rational cone generated by `gens`? Returns a nonnegative
/// rational combination over some linearly independent subset on success.
pub fn point_in_cone(p: &[i64], gens: &[Vec<i64>]) -> Option<Vec<(usize, Rat)>> {
    if p.iter().all(|&x| x == 0) {
        return Some(vec![]);
    }
    let n = p.len();
    let b = to_rat_vec(p);
    let max_size = n.min(gens.len());
    for size in 1..=max_size {
        for subset in (0..gens.len()).combinations(size) {
            let cols: Vec<Vec<Rat>> = subset.iter().map(|&i| to_rat_vec(&gens[i])).collect();
            if rank(&cols) < size {
                continue;
            }
            // columns of the system are the chosen generators
            let a: Vec<Vec<Rat>> = (0..n)
                .map(|row| subset.iter().map(|&i| rat(gens[i][row])).collect())
                .collect();
            if let Some(t) = solve_independent(&a, &b) {
                if t.iter().all(|x| !x.is_negative()) {
                    return Some(subset.into_iter().zip(t).collect());
                }
            }
        }
    }
    None
}

/// Is `p` in the convex hull of `pts`? Caratheodory over affinely
/// independent subsets of size at most `dim + 1`.
pub fn point_in_hull(p: &[i64], pts: &[Vec<i64>]) -> bool {
    let n = p.len();
    if pts.iter().any(|q| q[..] == *p) {
        return true;
    }
    let max_size = (n + 1).min(pts.len());
    for size in 1..=max_size {
        for subset in (0..pts.len()).combinations(size) {
            // affine independence: rank of differences equals size - 1
            if size > 1 {
                let diffs: Vec<Vec<Rat>> = subset[1..]
                    .iter()
                    .map(|&i| {
                        (0..n)
                            .map(|j| rat(pts[i][j]) - rat(pts[subset[0]][j]))
                            .collect()
                    })
                    .collect();
                if rank(&diffs) < size - 1 {
                    continue;
                }
            }
            // barycentric system: sum lambda_i = 1, sum lambda_i v_i = p
            let mut a: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
            a.push(vec![Rat::one(); size]);
            for row in 0..n {
                a.push(subset.iter().map(|&i| rat(pts[i][row])).collect());
            }
            let mut b = vec![Rat::one()];
            b.extend(to_rat_vec(p));
            if let Some(lambda) = solve_independent(&a, &b) {
                if lambda.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// Vertex subset of the convex hull of `pts` (assumed distinct).
pub fn hull_vertices(pts: &[Vec<i64>]) -> Vec<Vec<i64>> {
    pts.iter()
        .enumerate()
        .filter(|(i, p)| {
            let others: Vec<Vec<i64>> = pts
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            others.is_empty() || !point_in_hull(p, &others)
        })
        .map(|(_, p)| p.clone())
        .collect()
}

/// A linear inequality `a . x >= c`.
pub type Constraint = (Vec<Rat>, Rat);

/// Fourier-Motzkin feasibility for a system of inequalities over `nvars`
/// rational variables; returns a witness point when feasible.
pub fn fm_feasible(constraints: &[Constraint], nvars: usize) -> Option<Vec<Rat>> {
    if nvars == 0 {
        return if constraints.iter().all(|(_, c)| !c.is_positive()) {
            Some(vec![])
        } else {
            None
        };
    }
    let v = nvars - 1;
    let mut pos: Vec<&Constraint> = Vec::new();
    let mut neg: Vec<&Constraint> = Vec::new();
    let mut zero: Vec<Constraint> = Vec::new();
    for con in constraints {
        let a = &con.0[v];
        if a.is_zero() {
            zero.push((con.0[..v].to_vec(), con.1.clone()));
        } else if a.is_positive() {
            pos.push(con);
        } else {
            neg.push(con);
        }
    }
    // pair each lower bound with each upper bound
    let mut reduced = zero;
    for (ap, cp) in pos.iter().map(|c| (&c.0, &c.1)) {
        for (an, cn) in neg.iter().map(|c| (&c.0, &c.1)) {
            // (cp - rp)/ap[v] <= (cn - rn)/an[v] with an[v] < 0:
            // multiply out with positive factors ap[v] and -an[v]
            let fp = &ap[v];
            let fn_abs = -an[v].clone();
            let mut coeff = vec![Rat::zero(); v];
            for j in 0..v {
                coeff[j] = &ap[j] * &fn_abs + &an[j] * fp;
            }
            let c = &fn_abs * cp + fp * cn;
            reduced.push((coeff, c));
        }
    }
    let partial = fm_feasible(&reduced, v)?;
    // reconstruct a value for variable v from its bounds
    let eval_rest = |a: &[Rat]| -> Rat {
        a[..v]
            .iter()
            .zip(&partial)
            .map(|(ai, xi)| ai * xi)
            .fold(Rat::zero(), |acc, t| acc + t)
    };
    let mut lo: Option<Rat> = None;
    for (a, c) in pos.iter().map(|c| (&c.0, &c.1)) {
        let bound = (c - eval_rest(a)) / &a[v];
        if lo.as_ref().is_none_or(|l| bound > *l) {
            lo = Some(bound);
        }
    }
    let mut hi: Option<Rat> = None;
    for (a, c) in neg.iter().map(|c| (&c.0, &c.1)) {
        let bound = (c - eval_rest(a)) / &a[v];
        if hi.as_ref().is_none_or(|h| bound < *h) {
            hi = Some(bound);
        }
    }
    let x_v = match (lo, hi) {
        (Some(l), _) => l,
        (None, Some(h)) => h,
        (None, None) => Rat::zero(),
    };
    let mut witness = partial;
    witness.push(x_v);
    Some(witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_membership_quadrant() {
        let gens = vec![vec![1, 0], vec![0, 1]];
        assert!(point_in_cone(&[3, 5], &gens).is_some());
        assert!(point_in_cone(&[-1, 2], &gens).is_none());
        assert!(point_in_cone(&[0, 0], &gens).is_some());
    }

    #[test]
    fn cone_membership_needs_combination() {
        // (1,1) is in cone{(2,1),(1,2)}
        let gens = vec![vec![2, 1], vec![1, 2]];
        let combo = point_in_cone(&[1, 1], &gens).unwrap();
        assert_eq!(combo.len(), 2);
        assert!(point_in_cone(&[1, -1], &gens).is_none());
    }

    #[test]
    fn hull_membership_triangle() {
        let pts = vec![vec![0, 0], vec![4, 0], vec![0, 4]];
        assert!(point_in_hull(&[1, 1], &pts));
        assert!(point_in_hull(&[2, 2], &pts));
        assert!(!point_in_hull(&[3, 3], &pts));
    }

    #[test]
    fn hull_vertices_drop_interior() {
        let pts = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![1, 1], vec![2, 2]];
        let mut vs = hull_vertices(&pts);
        vs.sort();
        assert_eq!(vs, vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]);
    }

    #[test]
    fn fm_feasibility() {
        // x >= 1, -x >= -3 (x <= 3)
        let cons = vec![
            (vec![rat(1)], rat(1)),
            (vec![rat(-1)], rat(-3)),
        ];
        let w = fm_feasible(&cons, 1).unwrap();
        assert!(w[0] >= rat(1) && w[0] <= rat(3));
        // infeasible: x >= 2, x <= 1
        let cons = vec![
            (vec![rat(1)], rat(2)),
            (vec![rat(-1)], rat(-1)),
        ];
        assert!(fm_feasible(&cons, 1).is_none());
    }

    #[test]
    fn fm_two_vars_witness() {
        // x + y >= 2, x - y >= 0, -x >= -5
        let cons = vec![
            (vec![rat(1), rat(1)], rat(2)),
            (vec![rat(1), rat(-1)], rat(0)),
            (vec![rat(-1), rat(0)], rat(-5)),
        ];
        let w = fm_feasible(&cons, 2).unwrap();
        assert!(&w[0] + &w[1] >= rat(2));
        assert!(&w[0] - &w[1] >= rat(0));
        assert!(w[0] <= rat(5));
    }
}
