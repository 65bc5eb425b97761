//! Solutions of a² − k(k+1)·b² = 1 and the classification of (−2)-classes
//! inside the rank-2 sublattice spanned by L and a node class: every such
//! class is a non-negative integer combination of Aₜ and A′ₜ.

use num_integer::Integer;
use num_traits::{One, Signed};

use crate::nikulin::a_prime;
use crate::ns::{self_intersection, KummerContext, NsClass};
use crate::report::VerificationReport;
use crate::{int, rat, Int, Rat};

/// One solution of a² − N·b² = 1 with N = k(k+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub a: Int,
    pub b: Int,
    pub n: i64,
}

impl PellSolution {
    /// Exact check of a² − N·b² = 1.
    pub fn verify(&self) -> bool {
        &self.a * &self.a - int(self.n) * &self.b * &self.b == Int::one()
    }
}

/// Exact perfect-square test via integer square root.
pub fn is_perfect_square(n: &Int) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// The fundamental (minimal b ≥ 1) solution (2k+1, 2). Minimality is
/// verified directly: b = 1 would require k(k+1) + 1 = k² + k + 1 to be a
/// perfect square, and it is strictly between k² and (k+1)².
pub fn pell_fundamental(ctx: &KummerContext) -> PellSolution {
    let k = ctx.k();
    let n = ctx.m_square();
    let b1_square = int(n + 1);
    assert!(
        !is_perfect_square(&b1_square),
        "k^2+k+1 must not be a square"
    );
    // the bracketing that proves it for every k: k² < k²+k+1 < (k+1)²
    assert!(int(k * k) < b1_square && b1_square < int((k + 1) * (k + 1)));
    let sol = PellSolution {
        a: int(2 * k + 1),
        b: int(2),
        n,
    };
    assert!(sol.verify(), "(2k+1)^2 - 4k(k+1) = 1");
    sol
}

/// The first `m_max` positive solutions, generated by
/// aₘ₊₁ = (2k+1)aₘ + 2N·bₘ, bₘ₊₁ = 2aₘ + (2k+1)bₘ from the fundamental
/// solution; each verified exactly.
pub fn pell_solutions(ctx: &KummerContext, m_max: usize) -> Vec<PellSolution> {
    assert!(m_max >= 1, "m_max must be at least 1");
    let k = ctx.k();
    let n = ctx.m_square();
    let mut out = Vec::with_capacity(m_max);
    let mut cur = pell_fundamental(ctx);
    for _ in 0..m_max {
        assert!(cur.verify(), "recurrence must stay on the Pell conic");
        let next = PellSolution {
            a: int(2 * k + 1) * &cur.a + int(2 * n) * &cur.b,
            b: int(2) * &cur.a + int(2 * k + 1) * &cur.b,
            n,
        };
        out.push(cur);
        cur = next;
    }
    out
}

/// Verify that every (−2)-class uL − vAₜ of the rank-2 sublattice
/// ZL + ZAₜ (with u > 0) decomposes as a non-negative integer combination
/// of Aₜ and A′ₜ: the Pell solution (aₘ, bₘ) yields
/// bₘL − aₘAₜ = uₘA′ₜ + vₘAₜ with uₘ = bₘ/2 and vₘ = (2k+1)bₘ/2 − aₘ,
/// both natural numbers. Hence the only (−2)-classes supporting effective
/// curves in that sublattice are Aₜ and A′ₜ.
pub fn neg2_in_rank2(ctx: &KummerContext, t: usize, m_max: usize) -> VerificationReport {
    let k = ctx.k();
    let mut report = VerificationReport::new(k, Some(t));
    let at = NsClass::node(t);
    let ap = a_prime(ctx, t);
    for (m, sol) in pell_solutions(ctx, m_max).iter().enumerate() {
        let m = m + 1;
        report.check_bool(
            &format!("pell_identity_m{m}"),
            "a_m^2 - k(k+1) b_m^2 = 1",
            sol.verify(),
        );
        report.check_bool(
            &format!("b_even_m{m}"),
            "b_m is even, so u_m = b_m/2 is an integer",
            sol.b.is_even(),
        );
        let u = Rat::from_integer(sol.b.clone()) / rat(2);
        let v = rat(2 * k + 1) * &u - Rat::from_integer(sol.a.clone());
        report.check_bool(
            &format!("coefficients_natural_m{m}"),
            "u_m = b_m/2 and v_m = (2k+1)b_m/2 - a_m are non-negative integers",
            u.is_integer() && v.is_integer() && !u.is_negative() && !v.is_negative(),
        );
        // the full 17-coordinate class identity b_m L − a_m A_t = u A' + v A
        let gamma = NsClass::l()
            .scaled(&Rat::from_integer(sol.b.clone()))
            .add(&at.scaled(&Rat::from_integer(sol.a.clone())).neg());
        let decomposed = ap.scaled(&u).add(&at.scaled(&v));
        report.check(
            &format!("decomposition_m{m}"),
            "b_m L - a_m A_t = u_m A_t' + v_m A_t as lattice classes, with square -2",
            format!("{gamma} (square -2)"),
            format!(
                "{decomposed} (square {})",
                self_intersection(&decomposed, ctx)
            ),
        );
        report.check(
            &format!("values_m{m}"),
            "the solution and its decomposition coefficients",
            format!("(a, b, u, v) = ({}, {}, {u}, {v})", sol.a, sol.b),
            format!("(a, b, u, v) = ({}, {}, {u}, {v})", sol.a, sol.b),
        );
    }
    report
}
