//! Slow, direct reference computations for cross-checking `strata-core`.
//!
//! Nothing here uses canonical labeling, partition refinement, spanning
//! trees or closed forms from the core crate. Graph identity is decided by
//! minimizing over every vertex permutation, automorphisms are counted over
//! every (vertex permutation, edge permutation, edge flip) triple, and
//! weightings are found by trying every residue on every half-edge.

pub mod algebra;
pub mod dr;
pub mod graphs;
pub mod rewrite;

pub use strata_core::Rational;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Value at `0` of the polynomial through the points, by Lagrange's formula.
pub fn lagrange_at_zero(points: &[(i64, Rational)]) -> Rational {
    let mut total = Rational::from_integer(0.into());
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut term = yi.clone();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                term *= Rational::new((*xj).into(), (xj - xi).into());
            }
        }
        total += term;
    }
    total
}
