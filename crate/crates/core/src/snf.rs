//! Smith and Hermite normal forms over the integers, with unimodular
//! transforms tracked on both sides.
//!
//! `U * G * V = S` with `S` diagonal and `d_1 | d_2 | …`; the inverses of
//! `U` and `V` are maintained alongside so callers can pull diagonal data
//! back to the original basis without re-inverting anything.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Int, IntMat};

#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub s: IntMat,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl SmithDecomposition {
    /// Diagonal of `S`, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }

    /// Diagonal entries different from 1 (the invariant factors of the
    /// cokernel, zeros included for rank deficiency).
    pub fn invariant_factors(&self) -> Vec<Int> {
        self.diagonal().into_iter().filter(|d| !d.is_one()).collect()
    }

    /// Consistency check: `U G V = S` and the tracked inverses invert.
    pub fn verify(&self, g: &IntMat) -> bool {
        self.u.mul(g).mul(&self.v) == self.s
            && self.u.mul(&self.u_inv).is_identity()
            && self.v.mul(&self.v_inv).is_identity()
    }
}

/// Working state: every elementary operation is mirrored into the
/// transforms so `s == u * g * v` stays true throughout.
struct Work {
    s: IntMat,
    u: IntMat,
    u_inv: IntMat,
    v: IntMat,
    v_inv: IntMat,
}

impl Work {
    fn new(g: &IntMat) -> Self {
        Work {
            s: g.clone(),
            u: IntMat::identity(g.rows()),
            u_inv: IntMat::identity(g.rows()),
            v: IntMat::identity(g.cols()),
            v_inv: IntMat::identity(g.cols()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    /// row[a] += q * row[b]
    fn row_addmul(&mut self, a: usize, b: usize, q: &Int) {
        self.s.row_addmul(a, b, q);
        self.u.row_addmul(a, b, q);
        let nq = -q.clone();
        self.u_inv.col_addmul(b, a, &nq);
    }

    /// col[a] += q * col[b]
    fn col_addmul(&mut self, a: usize, b: usize, q: &Int) {
        self.s.col_addmul(a, b, q);
        self.v.col_addmul(a, b, q);
        let nq = -q.clone();
        self.v_inv.row_addmul(b, a, &nq);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Smallest nonzero entry (by absolute value) of `s[t.., t..]`.
fn find_pivot(s: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if s[(i, j)].is_zero() {
                continue;
            }
            let a = s[(i, j)].abs();
            match &best {
                Some((_, _, cur)) if *cur <= a => {}
                _ => best = Some((i, j, a)),
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(g: &IntMat) -> SmithDecomposition {
    let (n, m) = (g.rows(), g.cols());
    let mut w = Work::new(g);
    let rank_cap = n.min(m);
    let mut t = 0;
    while t < rank_cap {
        let Some((pi, pj)) = find_pivot(&w.s, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            // clear column t below the pivot; truncated quotients leave
            // remainders strictly smaller than the pivot
            let mut dirty = false;
            for i in t + 1..n {
                if w.s[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&w.s[(i, t)] / &w.s[(t, t)]);
                if !q.is_zero() {
                    w.row_addmul(i, t, &q);
                }
                if !w.s[(i, t)].is_zero() {
                    w.swap_rows(t, i);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // clear row t to the right of the pivot
            for j in t + 1..m {
                if w.s[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&w.s[(t, j)] / &w.s[(t, t)]);
                if !q.is_zero() {
                    w.col_addmul(j, t, &q);
                }
                if !w.s[(t, j)].is_zero() {
                    w.swap_cols(t, j);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining block for the chain d1|d2|…;
            // fold an offending row into row t and repeat
            let piv = w.s[(t, t)].clone();
            let offender = (t + 1..n).find(|&i| {
                (t + 1..m).any(|j| !(&w.s[(i, j)] % &piv).is_zero())
            });
            match offender {
                Some(i) => w.row_addmul(t, i, &Int::one()),
                None => break,
            }
        }
        if w.s[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition {
        s: w.s,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Canonical basis of the lattice spanned by the rows of `m` over Z:
/// row-style Hermite normal form with positive pivots and reduced entries
/// above each pivot; zero rows dropped.
pub fn row_hermite_basis(m: &IntMat) -> IntMat {
    let mut a = m.clone();
    let (n, c) = (a.rows(), a.cols());
    let mut pivot_row = 0;
    for col in 0..c {
        if pivot_row >= n {
            break;
        }
        loop {
            let nz: Vec<usize> = (pivot_row..n)
                .filter(|&i| !a[(i, col)].is_zero())
                .collect();
            let Some(&best) = nz.iter().min_by_key(|&&i| a[(i, col)].abs()) else {
                break;
            };
            a.swap_rows(pivot_row, best);
            if nz.len() == 1 {
                break;
            }
            for i in pivot_row + 1..n {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let q = -(&a[(i, col)] / &a[(pivot_row, col)]);
                if !q.is_zero() {
                    a.row_addmul(i, pivot_row, &q);
                }
            }
        }
        if a[(pivot_row, col)].is_zero() {
            continue;
        }
        if a[(pivot_row, col)].is_negative() {
            a.negate_row(pivot_row);
        }
        for i in 0..pivot_row {
            let q = -a[(i, col)].div_floor(&a[(pivot_row, col)]);
            if !q.is_zero() {
                a.row_addmul(i, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    let rows = (0..pivot_row).map(|i| a.row(i).to_vec()).collect();
    IntMat::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;
    use crate::mat::Mat;

    #[test]
    fn smith_small_known() {
        // invariant factors checked by hand via gcds of k×k minors
        let g = Mat::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let d = smith_normal_form(&g);
        assert!(d.verify(&g));
        assert_eq!(d.diagonal(), vec![int(2), int(2), int(156)]);
    }

    #[test]
    fn smith_divisibility_chain() {
        let g = Mat::from_i64_rows(&[&[6, 0], &[0, 4]]);
        let d = smith_normal_form(&g);
        assert!(d.verify(&g));
        assert_eq!(d.diagonal(), vec![int(2), int(12)]);
    }

    #[test]
    fn smith_singular() {
        let g = Mat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let d = smith_normal_form(&g);
        assert!(d.verify(&g));
        assert_eq!(d.diagonal(), vec![int(1), int(0)]);
    }

    #[test]
    fn hermite_basis_of_redundant_rows() {
        let m = Mat::from_i64_rows(&[&[2, 0], &[0, 3], &[2, 3], &[4, 6]]);
        let b = row_hermite_basis(&m);
        assert_eq!(b.rows(), 2);
        // lattice is Z^2 ∩ span: pivots 2 and 3 reduce to... gcd row ops
        // give the full lattice generated by (2,0) and (0,3)
        assert_eq!(b, Mat::from_i64_rows(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn hermite_reduces_above() {
        let m = Mat::from_i64_rows(&[&[1, 5], &[0, 3]]);
        let b = row_hermite_basis(&m);
        assert_eq!(b, Mat::from_i64_rows(&[&[1, 2], &[0, 3]]));
    }
}
