//! Gram lattices and their finite invariants: discriminant groups,
//! finite quadratic forms, isometry tests, and unimodular gluing.
//!
//! Everything here is exact: signatures come from rational congruence
//! diagonalization, discriminant data from Smith normal form, and glued
//! lattices from Hermite bases of rational row spans.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashSet};

use crate::snf::{row_hermite_basis, smith_normal_form};
use crate::{rat, Error, Int, IntMat, Rat, RatMat, Result, DEFAULT_GROUP_CAP};

/// `x` reduced into `[0, m)` modulo `m·Z`.
pub(crate) fn reduce_mod(x: &Rat, m: i64) -> Rat {
    let m = rat(m);
    let q = (x / &m).floor();
    x - m * q
}

/// Nondegenerate symmetric integer bilinear form with cached invariants.
#[derive(Clone, Debug)]
pub struct GramLattice {
    gram: IntMat,
    det: Int,
    signature: (usize, usize),
}

impl GramLattice {
    pub fn new(gram: IntMat) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::InvalidInput("gram matrix not symmetric".into()));
        }
        let det = gram.bareiss_det();
        if det.is_zero() {
            return Err(Error::DegenerateLattice);
        }
        let signature = gram.to_rat().symmetric_signature()?;
        Ok(GramLattice {
            gram,
            det,
            signature,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMat::from_i64_rows(rows))
    }

    /// The hyperbolic plane scaled by 2: gram [[0,2],[2,0]].
    pub fn u2() -> Self {
        Self::from_i64_rows(&[&[0, 2], &[2, 0]]).expect("U(2) is nondegenerate")
    }

    /// Rank-1 lattice ⟨n⟩.
    pub fn rank1(n: &Int) -> Result<Self> {
        Self::new(IntMat::new(1, 1, vec![n.clone()]))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.gram.direct_sum(&other.gram))
            .expect("direct sum of nondegenerate lattices is nondegenerate")
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> &Int {
        &self.det
    }

    /// (n_plus, n_minus), computed exactly at construction.
    pub fn signature(&self) -> (usize, usize) {
        self.signature
    }

    /// Even ⟺ every diagonal entry (hence every square) is in 2Z.
    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn inner(&self, x: &[Int], y: &[Int]) -> Int {
        let mut acc = Int::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * &self.gram[(i, j)] * yj;
            }
        }
        acc
    }

    pub fn inner_rat(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * Rat::from_integer(self.gram[(i, j)].clone()) * yj;
            }
        }
        acc
    }

    /// q(x) = x·x mod 2Z, represented in [0, 2). Meaningful for dual
    /// vectors of an even lattice (lift-independent there).
    pub fn q_value(&self, x: &[Rat]) -> Rat {
        reduce_mod(&self.inner_rat(x, x), 2)
    }

    /// b(x, y) = x·y mod Z, represented in [0, 1).
    pub fn b_value(&self, x: &[Rat], y: &[Rat]) -> Rat {
        reduce_mod(&self.inner_rat(x, y), 1)
    }
}

/// Transport data tying abstract coordinates back to the source lattice.
#[derive(Clone, Debug)]
struct Transport {
    gram: IntMat,
    u: IntMat,
    /// SNF diagonal position of each retained generator, in generator order.
    positions: Vec<usize>,
}

/// Finite abelian group L∨/L in invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Invariant factors > 1 in divisibility order d₁ | d₂ | ….
    pub invariant_factors: Vec<Int>,
    /// Dual-lattice lifts of the canonical generators, entries in [0, 1);
    /// empty for groups built abstractly from a factor list.
    pub generator_lifts: Vec<Vec<Rat>>,
    transport: Option<Transport>,
}

impl DiscriminantGroup {
    /// Abstract group from a list of cyclic orders (no lattice attached).
    pub fn from_orders(orders: &[Int]) -> Self {
        DiscriminantGroup {
            invariant_factors: invariant_factors_of_cyclic_product(orders),
            generator_lifts: Vec::new(),
            transport: None,
        }
    }

    pub fn num_generators(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> Int {
        self.invariant_factors
            .iter()
            .fold(Int::one(), |acc, d| acc * d)
    }

    pub fn is_two_elementary(&self) -> bool {
        let two = Int::from(2);
        !self.invariant_factors.is_empty()
            && self.invariant_factors.iter().all(|d| *d == two)
    }

    /// Coordinates (mod invariant factors) of a dual-lattice vector given in
    /// lattice-basis coordinates.
    pub fn coords(&self, lift: &[Rat]) -> Result<Vec<Int>> {
        let tr = self.transport.as_ref().ok_or_else(|| {
            Error::InvalidInput("abstract group carries no lattice transport".into())
        })?;
        let gl = tr.gram.to_rat().mul_vec(lift);
        if !gl.iter().all(|x| x.is_integer()) {
            return Err(Error::InvalidInput(
                "vector is not in the dual lattice".into(),
            ));
        }
        let w: Vec<Int> = gl.iter().map(|x| x.to_integer()).collect();
        let uw = tr.u.mul_vec(&w);
        Ok(tr
            .positions
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&p, d)| uw[p].mod_floor(d))
            .collect())
    }

    pub fn reduce(&self, c: &[Int]) -> Vec<Int> {
        c.iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| x.mod_floor(d))
            .collect()
    }

    pub fn add(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        self.reduce(
            &a.iter()
                .zip(b)
                .map(|(x, y)| x + y)
                .collect::<Vec<_>>(),
        )
    }

    pub fn element_order(&self, c: &[Int]) -> Int {
        let mut ord = Int::one();
        for (x, d) in c.iter().zip(&self.invariant_factors) {
            let g = x.mod_floor(d).gcd(d);
            ord = ord.lcm(&(d / g));
        }
        ord
    }

    /// Dual-lattice lift of the element with the given coordinates,
    /// reduced entrywise into [0, 1).
    pub fn element_lift(&self, c: &[Int]) -> Result<Vec<Rat>> {
        if self.generator_lifts.is_empty() && !c.is_empty() {
            return Err(Error::InvalidInput(
                "abstract group has no generator lifts".into(),
            ));
        }
        let n = self
            .generator_lifts
            .first()
            .map_or(0, |g| g.len());
        let mut acc = vec![Rat::zero(); n];
        for (ci, g) in c.iter().zip(&self.generator_lifts) {
            let cr = Rat::from_integer(ci.clone());
            for (a, gi) in acc.iter_mut().zip(g) {
                *a += &cr * gi;
            }
        }
        Ok(acc.iter().map(|x| reduce_mod(x, 1)).collect())
    }

    /// All coordinate tuples in lexicographic order (last index fastest).
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Vec<Int>>> {
        let order = self.order();
        if order > Int::from(cap) {
            return Err(Error::GroupTooLarge {
                order: order.to_string(),
                cap,
            });
        }
        let factors: Vec<u64> = self
            .invariant_factors
            .iter()
            .map(|d| d.to_u64().expect("factor fits in u64 under cap"))
            .collect();
        let total = order.to_u64().unwrap_or(0);
        let r = factors.len();
        let mut out = Vec::with_capacity(total as usize);
        let mut c = vec![0u64; r];
        loop {
            out.push(c.iter().map(|&x| Int::from(x)).collect());
            let mut i = r;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                c[i] += 1;
                if c[i] < factors[i] {
                    break;
                }
                c[i] = 0;
            }
        }
    }
}

/// Free-function form of [`DiscriminantGroup::is_two_elementary`].
pub fn is_two_elementary(g: &DiscriminantGroup) -> bool {
    g.is_two_elementary()
}

/// Invariant factors of a product of cyclic groups ⊕ Z/orderᵢ, computed by
/// merging prime-power components (largest exponents first).
pub fn invariant_factors_of_cyclic_product(orders: &[Int]) -> Vec<Int> {
    let mut by_prime: BTreeMap<Int, Vec<u32>> = BTreeMap::new();
    for o in orders {
        let mut m = o.abs();
        assert!(m > Int::zero(), "cyclic order must be nonzero");
        let mut p = Int::from(2);
        while &p * &p <= m {
            if (&m % &p).is_zero() {
                let mut e = 0u32;
                while (&m % &p).is_zero() {
                    m /= &p;
                    e += 1;
                }
                by_prime.entry(p.clone()).or_default().push(e);
            }
            p += Int::one();
        }
        if m > Int::one() {
            by_prime.entry(m).or_default().push(1);
        }
    }
    let depth = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![Int::one(); depth];
    for (p, mut es) in by_prime {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, e) in es.iter().enumerate() {
            factors[slot] *= p.pow(*e);
        }
    }
    factors.reverse();
    factors.retain(|f| !f.is_one());
    factors
}

pub fn discriminant_group(l: &GramLattice) -> Result<DiscriminantGroup> {
    let n = l.rank();
    let dec = smith_normal_form(l.gram());
    let diag = dec.diagonal();
    let ginv = l
        .gram()
        .to_rat()
        .inverse()
        .ok_or(Error::DegenerateLattice)?;
    let lift_cols = ginv.mul(&dec.u_inv.to_rat());
    let mut gens: Vec<(Int, Vec<Rat>, usize)> = Vec::new();
    for i in 0..n {
        if diag[i].is_one() {
            continue;
        }
        let lift: Vec<Rat> = (0..n)
            .map(|r| reduce_mod(&lift_cols[(r, i)], 1))
            .collect();
        gens.push((diag[i].clone(), lift, i));
    }
    // canonical generator order: divisibility order, lifts lexicographic
    // within runs of equal factors
    gens.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let invariant_factors: Vec<Int> = gens.iter().map(|g| g.0.clone()).collect();
    let generator_lifts: Vec<Vec<Rat>> = gens.iter().map(|g| g.1.clone()).collect();
    let positions: Vec<usize> = gens.iter().map(|g| g.2).collect();
    Ok(DiscriminantGroup {
        invariant_factors,
        generator_lifts,
        transport: Some(Transport {
            gram: l.gram().clone(),
            u: dec.u,
            positions,
        }),
    })
}

/// Discriminant quadratic form of an even lattice: q on L∨/L valued in
/// Q/2Z, with the pairing b valued in Q/Z, both tabulated through the
/// canonical generator lifts.
#[derive(Clone, Debug)]
pub struct FiniteQuadraticForm {
    pub group: DiscriminantGroup,
    /// Raw pairing lifts ĝᵢ·ĝⱼ (unreduced); q and b reduce these mod 2Z/Z.
    pair: RatMat,
}

pub fn disc_form(l: &GramLattice) -> Result<FiniteQuadraticForm> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    let group = discriminant_group(l)?;
    let r = group.num_generators();
    let mut pair = RatMat::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            pair[(i, j)] =
                l.inner_rat(&group.generator_lifts[i], &group.generator_lifts[j]);
        }
    }
    Ok(FiniteQuadraticForm { group, pair })
}

impl FiniteQuadraticForm {
    /// q of the element with the given coordinates, in [0, 2).
    pub fn q(&self, c: &[Int]) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..c.len() {
            if c[i].is_zero() {
                continue;
            }
            for j in 0..c.len() {
                acc += Rat::from_integer(&c[i] * &c[j]) * &self.pair[(i, j)];
            }
        }
        reduce_mod(&acc, 2)
    }

    /// b of two elements, in [0, 1).
    pub fn b(&self, c1: &[Int], c2: &[Int]) -> Rat {
        let mut acc = Rat::zero();
        for (i, x) in c1.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in c2.iter().enumerate() {
                acc += Rat::from_integer(x * y) * &self.pair[(i, j)];
            }
        }
        reduce_mod(&acc, 1)
    }

    pub fn q_gen(&self, i: usize) -> Rat {
        reduce_mod(&self.pair[(i, i)], 2)
    }

    pub fn b_gen(&self, i: usize, j: usize) -> Rat {
        reduce_mod(&self.pair[(i, j)], 1)
    }

    /// Multiset of q-values over the whole group.
    pub fn histogram(&self, cap: u64) -> Result<BTreeMap<Rat, u64>> {
        let mut hist = BTreeMap::new();
        for c in self.group.enumerate(cap)? {
            *hist.entry(self.q(&c)).or_insert(0) += 1;
        }
        Ok(hist)
    }
}

/// Histogram under the default group-size cap.
pub fn form_histogram(f: &FiniteQuadraticForm) -> Result<BTreeMap<Rat, u64>> {
    f.histogram(DEFAULT_GROUP_CAP)
}

/// True iff Mᵀ·gram·M = gram.
pub fn is_isometry(l: &GramLattice, m: &IntMat) -> Result<bool> {
    if m.rows() != l.rank() || m.cols() != l.rank() {
        return Err(Error::DimensionMismatch(format!(
            "isometry candidate is {}x{}, lattice rank {}",
            m.rows(),
            m.cols(),
            l.rank()
        )));
    }
    Ok(m.transpose().mul(l.gram()).mul(m) == *l.gram())
}

/// Anti-isometry data for gluing: the image of each canonical generator of
/// the first lattice's discriminant group, as a dual-lattice lift of the
/// second lattice.
#[derive(Clone, Debug)]
pub struct GlueMap {
    pub targets: Vec<Vec<Rat>>,
}

/// A glued overlattice together with the basis expressing it inside
/// (L₁ ⊕ L₂) ⊗ Q (one basis vector per row).
#[derive(Clone, Debug)]
pub struct Gluing {
    pub glued: GramLattice,
    pub basis: RatMat,
}

/// Order of the subgroup generated by the given coordinate tuples.
pub(crate) fn subgroup_order(g: &DiscriminantGroup, gens: &[Vec<Int>], cap: u64) -> Result<u64> {
    let mut seen: HashSet<Vec<Int>> = HashSet::new();
    let zero = vec![Int::zero(); g.num_generators()];
    let mut stack = vec![zero.clone()];
    seen.insert(zero);
    while let Some(x) = stack.pop() {
        for gen in gens {
            let y = g.add(&x, gen);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > cap {
                    return Err(Error::GroupTooLarge {
                        order: format!("> {cap}"),
                        cap,
                    });
                }
                stack.push(y);
            }
        }
    }
    Ok(seen.len() as u64)
}

/// Primitive overlattice of L₁ ⊕ L₂ glued along the anti-isometry that
/// sends the canonical generators of D(L₁) to `phi.targets` in D(L₂).
pub fn glue(l1: &GramLattice, l2: &GramLattice, phi: &GlueMap) -> Result<Gluing> {
    let f1 = disc_form(l1)?;
    let f2 = disc_form(l2)?;
    if f1.group.order() != f2.group.order() {
        return Err(Error::GluingCondition(format!(
            "discriminant groups have orders {} and {}",
            f1.group.order(),
            f2.group.order()
        )));
    }
    let r = f1.group.num_generators();
    if phi.targets.len() != r {
        return Err(Error::GluingCondition(format!(
            "expected {} generator images, got {}",
            r,
            phi.targets.len()
        )));
    }
    let mut images: Vec<Vec<Int>> = Vec::with_capacity(r);
    for (i, t) in phi.targets.iter().enumerate() {
        if t.len() != l2.rank() {
            return Err(Error::GluingCondition(format!(
                "generator image {i} has wrong length"
            )));
        }
        let c = f2.group.coords(t).map_err(|_| {
            Error::GluingCondition(format!("generator image {i} is not in the dual lattice"))
        })?;
        let d = &f1.group.invariant_factors[i];
        if !(d % f2.group.element_order(&c)).is_zero() {
            return Err(Error::GluingCondition(format!(
                "generator image {i} has order not dividing {d}"
            )));
        }
        images.push(c);
    }
    if Int::from(subgroup_order(&f2.group, &images, DEFAULT_GROUP_CAP)?) != f2.group.order() {
        return Err(Error::GluingCondition(
            "generator images do not generate the second discriminant group".into(),
        ));
    }
    for i in 0..r {
        let q1 = l1.q_value(&f1.group.generator_lifts[i]);
        let q2 = l2.q_value(&phi.targets[i]);
        if !reduce_mod(&(q1 + q2), 2).is_zero() {
            return Err(Error::GluingCondition(format!(
                "q value at generator {i} is not negated"
            )));
        }
        for j in 0..i {
            let b1 = l1.b_value(
                &f1.group.generator_lifts[i],
                &f1.group.generator_lifts[j],
            );
            let b2 = l2.b_value(&phi.targets[i], &phi.targets[j]);
            if !reduce_mod(&(b1 + b2), 1).is_zero() {
                return Err(Error::GluingCondition(format!(
                    "pairing at generators {i},{j} is not negated"
                )));
            }
        }
    }
    // row span over Z of: L1 ⊕ L2 plus the glue vectors (ĝᵢ | tᵢ)
    let (n1, n2) = (l1.rank(), l2.rank());
    let n = n1 + n2;
    let mut rows = RatMat::zeros(n + r, n);
    for i in 0..n {
        rows[(i, i)] = Rat::one();
    }
    for i in 0..r {
        for (j, x) in f1.group.generator_lifts[i].iter().enumerate() {
            rows[(n + i, j)] = x.clone();
        }
        for (j, x) in phi.targets[i].iter().enumerate() {
            rows[(n + i, n1 + j)] = x.clone();
        }
    }
    let delta = rows.denom_lcm();
    let scaled = rows
        .map(|x| x * Rat::from_integer(delta.clone()))
        .to_int()?;
    let hnf = row_hermite_basis(&scaled);
    if hnf.rows() != n {
        return Err(Error::GluingCondition(
            "glued span does not have full rank".into(),
        ));
    }
    let basis = hnf.to_rat().map(|x| x / Rat::from_integer(delta.clone()));
    let amb = l1.gram().direct_sum(l2.gram()).to_rat();
    let gram = basis.mul(&amb).mul(&basis.transpose());
    let gram = gram.to_int().map_err(|_| {
        Error::GluingCondition("glued pairing is not integral".into())
    })?;
    Ok(Gluing {
        glued: GramLattice::new(gram)?,
        basis,
    })
}

/// Backtracking search for a generator-matching (anti-)isometry witness
/// between two finite quadratic forms: for each canonical generator gᵢ of
/// `src`, coordinates in `dst` of an image with matching (or negated)
/// q-values and pairings, the whole tuple generating `dst`. Deterministic:
/// elements are scanned in lexicographic coordinate order. `None` means the
/// exhaustive search found no witness.
pub fn form_witness_search(
    src: &FiniteQuadraticForm,
    dst: &FiniteQuadraticForm,
    anti: bool,
    cap: u64,
) -> Result<Option<Vec<Vec<Int>>>> {
    if src.group.order() != dst.group.order()
        || src.group.invariant_factors != dst.group.invariant_factors
    {
        return Ok(None);
    }
    let elems = dst.group.enumerate(cap)?;
    let r = src.group.num_generators();
    let sign = if anti { -1 } else { 1 };
    let orders: Vec<Int> = elems.iter().map(|e| dst.group.element_order(e)).collect();
    let qs: Vec<Rat> = elems.iter().map(|e| dst.q(e)).collect();
    // fill positions with the largest invariant factors first: their q/order
    // constraints prune hardest
    let mut fill_order: Vec<usize> = (0..r).collect();
    fill_order.sort_by(|&a, &b| {
        src.group.invariant_factors[b]
            .cmp(&src.group.invariant_factors[a])
            .then(a.cmp(&b))
    });
    let mut chosen: Vec<Option<usize>> = vec![None; r];

    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        depth: usize,
        fill_order: &[usize],
        chosen: &mut Vec<Option<usize>>,
        src: &FiniteQuadraticForm,
        dst: &FiniteQuadraticForm,
        elems: &[Vec<Int>],
        orders: &[Int],
        qs: &[Rat],
        sign: i64,
        cap: u64,
    ) -> Result<bool> {
        let r = fill_order.len();
        if depth == r {
            let gens: Vec<Vec<Int>> = chosen
                .iter()
                .map(|c| elems[c.unwrap()].clone())
                .collect();
            let sub = subgroup_order(&dst.group, &gens, cap)?;
            return Ok(Int::from(sub) == dst.group.order());
        }
        let pos = fill_order[depth];
        let want_d = &src.group.invariant_factors[pos];
        let want_q = reduce_mod(&(Rat::from_integer(Int::from(sign)) * src.q_gen(pos)), 2);
        'cand: for (ei, e) in elems.iter().enumerate() {
            // exact order required: the product of generator orders must
            // reach the group order for the tuple to generate
            if orders[ei] != *want_d || qs[ei] != want_q {
                continue;
            }
            for &ppos in &fill_order[..depth] {
                let pe = &elems[chosen[ppos].unwrap()];
                let want_b = reduce_mod(
                    &(Rat::from_integer(Int::from(sign)) * src.b_gen(pos, ppos)),
                    1,
                );
                if dst.b(e, pe) != want_b {
                    continue 'cand;
                }
            }
            chosen[pos] = Some(ei);
            if backtrack(
                depth + 1,
                fill_order,
                chosen,
                src,
                dst,
                elems,
                orders,
                qs,
                sign,
                cap,
            )? {
                return Ok(true);
            }
            chosen[pos] = None;
        }
        Ok(false)
    }

    if backtrack(
        0,
        &fill_order,
        &mut chosen,
        src,
        dst,
        &elems,
        &orders,
        &qs,
        sign,
        cap,
    )? {
        Ok(Some(
            chosen
                .into_iter()
                .map(|c| elems[c.unwrap()].clone())
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

/// GlueMap whose targets are the lifts of the given coordinate tuples in
/// `dst`'s group.
pub fn glue_map_from_coords(
    dst: &FiniteQuadraticForm,
    images: &[Vec<Int>],
) -> Result<GlueMap> {
    let targets = images
        .iter()
        .map(|c| dst.group.element_lift(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(GlueMap { targets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat_frac};

    fn lat(rows: &[&[i64]]) -> GramLattice {
        GramLattice::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn u2_discriminant() {
        let l = GramLattice::u2();
        assert_eq!(l.signature(), (1, 1));
        let g = discriminant_group(&l).unwrap();
        assert_eq!(g.invariant_factors, vec![int(2), int(2)]);
        assert_eq!(g.order(), int(4));
        for lift in &g.generator_lifts {
            let gl = l.gram().to_rat().mul_vec(lift);
            assert!(gl.iter().all(|x| x.is_integer()), "lift in dual lattice");
        }
    }

    #[test]
    fn u2_form_values() {
        let f = disc_form(&GramLattice::u2()).unwrap();
        assert!(f.q_gen(0).is_zero());
        assert!(f.q_gen(1).is_zero());
        assert_eq!(f.b_gen(0, 1), rat_frac(1, 2));
        // q vanishes on 0, g1, g2 but q(g1+g2) = 1: histogram {0:3, 1:1}
        let h = form_histogram(&f).unwrap();
        assert_eq!(h.get(&rat_frac(0, 1)), Some(&3));
        assert_eq!(h.get(&rat_frac(1, 1)), Some(&1));
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn cyclic_4_histogram() {
        let f = disc_form(&lat(&[&[4]])).unwrap();
        let h = form_histogram(&f).unwrap();
        assert_eq!(h.get(&rat_frac(0, 1)), Some(&1));
        assert_eq!(h.get(&rat_frac(1, 4)), Some(&2));
        assert_eq!(h.get(&rat_frac(1, 1)), Some(&1));
    }

    #[test]
    fn minus_two_q() {
        let f = disc_form(&lat(&[&[-2]])).unwrap();
        assert_eq!(f.q_gen(0), rat_frac(3, 2));
    }

    #[test]
    fn odd_lattice_rejected() {
        assert_eq!(disc_form(&lat(&[&[1]])).unwrap_err(), Error::OddLattice);
    }

    #[test]
    fn degenerate_rejected() {
        assert_eq!(
            GramLattice::from_i64_rows(&[&[1, 1], &[1, 1]]).unwrap_err(),
            Error::DegenerateLattice
        );
    }

    #[test]
    fn isometry_checks() {
        let l = GramLattice::u2();
        assert!(is_isometry(&l, &IntMat::identity(2)).unwrap());
        let swap = IntMat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert!(is_isometry(&l, &swap).unwrap());
        let neg_one = IntMat::from_i64_rows(&[&[-1, 0], &[0, 1]]);
        assert!(!is_isometry(&l, &neg_one).unwrap());
        assert!(is_isometry(&l, &IntMat::identity(3)).is_err());
    }

    #[test]
    fn glue_rank1_pair() {
        let l1 = lat(&[&[2]]);
        let l2 = lat(&[&[-2]]);
        let f1 = disc_form(&l1).unwrap();
        let phi = GlueMap {
            targets: f1.group.generator_lifts.clone(),
        };
        let glued = glue(&l1, &l2, &phi).unwrap().glued;
        assert_eq!(glued.rank(), 2);
        assert_eq!(*glued.det(), int(-1));
        // index² = |det1|·|det2| / |det glued| = 4
        assert_eq!(
            (l1.det() * l2.det()).abs() / glued.det().abs(),
            int(4)
        );
    }

    #[test]
    fn glue_wrong_sign_fails() {
        let l1 = lat(&[&[2]]);
        let l2 = lat(&[&[2]]);
        let f1 = disc_form(&l1).unwrap();
        let phi = GlueMap {
            targets: f1.group.generator_lifts.clone(),
        };
        match glue(&l1, &l2, &phi) {
            Err(Error::GluingCondition(_)) => {}
            other => panic!("expected gluing condition failure, got {other:?}"),
        }
    }

    #[test]
    fn glue_u2_with_negated_u2() {
        let l1 = GramLattice::u2();
        let l2 = lat(&[&[0, -2], &[-2, 0]]);
        let f1 = disc_form(&l1).unwrap();
        let f2 = disc_form(&l2).unwrap();
        let witness = form_witness_search(&f1, &f2, true, 1 << 12)
            .unwrap()
            .expect("anti-isometry of u-forms exists");
        let phi = glue_map_from_coords(&f2, &witness).unwrap();
        let glued = glue(&l1, &l2, &phi).unwrap().glued;
        assert_eq!(glued.rank(), 4);
        assert_eq!(glued.det().abs(), int(1));
        assert!(glued.is_even());
    }

    #[test]
    fn witness_respects_group_shape() {
        // (Z/2)² and Z/4 have equal order but different shapes: no witness
        let f1 = disc_form(&GramLattice::u2()).unwrap();
        let f2 = disc_form(&lat(&[&[4]])).unwrap();
        assert!(form_witness_search(&f1, &f2, false, 1 << 12)
            .unwrap()
            .is_none());
    }

    #[test]
    fn invariant_factor_merge() {
        let orders: Vec<Int> = [6, 2, 4, 4, 4, 4, 4, 4, 4]
            .iter()
            .map(|&x| int(x))
            .collect();
        let fs = invariant_factors_of_cyclic_product(&orders);
        let expect: Vec<Int> = [2, 2, 4, 4, 4, 4, 4, 4, 12]
            .iter()
            .map(|&x| int(x))
            .collect();
        assert_eq!(fs, expect);
    }

    #[test]
    fn two_elementary() {
        let g = DiscriminantGroup::from_orders(&[int(2), int(2), int(2)]);
        assert!(is_two_elementary(&g));
        let h = DiscriminantGroup::from_orders(&[int(2), int(4)]);
        assert!(!is_two_elementary(&h));
    }

    #[test]
    fn det_equals_factor_product() {
        let l = lat(&[&[2, 1, 0], &[1, 4, 1], &[0, 1, 6]]);
        let g = discriminant_group(&l).unwrap();
        assert_eq!(g.order(), l.det().abs());
    }
}
