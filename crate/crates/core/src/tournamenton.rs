//! Step (block-constant) tournamentons over an exact coefficient ring, with
//! the constructions `W_T`, `U_z` and two-block blends, and exact densities.
//!
//! A step tournamenton is a block matrix of values together with positive
//! block weights summing to 1; complementarity `W(x,y) + W(y,x) = 1` must
//! hold for every ordered block pair, which pins diagonal entries to 1/2.
//! Values live either in the rationals or in polynomials over them (the
//! symbolic variable of `U_z`), so one density routine serves both.

use crate::catalog::Catalog;
use crate::density::{DensityVector, LinComb};
use crate::exact::{rat, Poly, Rat};
use crate::flags::Flag;
use crate::tournament::Tournament;
use crate::ParseError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("block weights must be positive and sum to 1")]
    BadWeights,
    #[error("values at block pair ({0},{1}) do not sum to 1")]
    NotComplementary(usize, usize),
    #[error("value matrix must be square of the weight count")]
    BadShape,
    #[error("blend parameter must lie strictly between 0 and 1")]
    BlendRange,
}

/// Coefficient ring for step-tournamenton values: exact rationals or
/// univariate polynomials over them.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn mul_rat(&self, r: &Rat) -> Self;
}

impl Coeff for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        self * r
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn from_rat(r: &Rat) -> Self {
        Poly::constant(r.clone())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        self.scale(r)
    }
}

/// Per-block out-degrees of a step tournamenton. The weighted mean of the
/// out-degrees is always exactly 1/2.
#[derive(Clone, PartialEq, Debug)]
pub struct RegularityReport<R: Coeff> {
    pub is_regular: bool,
    pub out_degrees: Vec<R>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct StepTournamenton<R: Coeff> {
    weights: Vec<Rat>,
    values: Vec<Vec<R>>,
}

impl<R: Coeff> StepTournamenton<R> {
    pub fn new(weights: Vec<Rat>, values: Vec<Vec<R>>) -> Result<Self, StepError> {
        let k = weights.len();
        if k == 0 || weights.iter().any(|w| !w.is_positive()) {
            return Err(StepError::BadWeights);
        }
        if weights.iter().sum::<Rat>() != Rat::one() {
            return Err(StepError::BadWeights);
        }
        if values.len() != k || values.iter().any(|row| row.len() != k) {
            return Err(StepError::BadShape);
        }
        for i in 0..k {
            for j in i..k {
                if values[i][j].add(&values[j][i]) != R::one() {
                    return Err(StepError::NotComplementary(i, j));
                }
            }
        }
        Ok(StepTournamenton { weights, values })
    }

    /// The quasirandom limit: a single block of value 1/2.
    pub fn constant_half() -> Self {
        StepTournamenton {
            weights: vec![Rat::one()],
            values: vec![vec![R::from_rat(&rat(1, 2))]],
        }
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn value(&self, i: usize, j: usize) -> &R {
        &self.values[i][j]
    }

    /// Exact density `t(D, W)`: the sum over block assignments of the product
    /// of arc values, weighted by block measures. Assignments are extended one
    /// vertex at a time so that zero partial products prune the subtree.
    pub fn t(&self, d: &Tournament) -> R {
        assert!(d.n() <= 7, "densities are specified for patterns up to 7 vertices");
        let mut acc = R::zero();
        let mut assignment = Vec::with_capacity(d.n());
        self.t_rec(d, &mut assignment, &R::one(), &mut acc);
        acc
    }

    fn t_rec(&self, d: &Tournament, assignment: &mut Vec<usize>, partial: &R, acc: &mut R) {
        let depth = assignment.len();
        if depth == d.n() {
            *acc = acc.add(partial);
            return;
        }
        for block in 0..self.k() {
            let mut p = partial.mul_rat(&self.weights[block]);
            for (v, &bv) in assignment.iter().enumerate() {
                let val = if d.has_arc(depth, v) {
                    &self.values[block][bv]
                } else {
                    &self.values[bv][block]
                };
                p = p.mul(val);
                if p.is_zero() {
                    break;
                }
            }
            if p.is_zero() {
                continue;
            }
            assignment.push(block);
            self.t_rec(d, assignment, &p, acc);
            assignment.pop();
        }
    }

    pub fn t_lincomb(&self, h: &LinComb) -> R {
        let mut acc = R::zero();
        for (c, t) in h.terms() {
            acc = acc.add(&self.t(t).mul_rat(c));
        }
        acc
    }

    /// Rooted density `t_r(F, W)` with the root variables pinned to the given
    /// blocks: the product over all arcs of `F`, with non-root vertices
    /// integrated (summed over blocks with weights).
    pub fn rooted(&self, f: &Flag, root_blocks: &[usize]) -> R {
        assert_eq!(root_blocks.len(), f.roots(), "one block per root");
        assert!(root_blocks.iter().all(|&b| b < self.k()));
        let body = f.body();
        let mut root_part = R::one();
        for i in 0..f.roots() {
            for j in i + 1..f.roots() {
                let val = if body.has_arc(i, j) {
                    &self.values[root_blocks[i]][root_blocks[j]]
                } else {
                    &self.values[root_blocks[j]][root_blocks[i]]
                };
                root_part = root_part.mul(val);
            }
        }
        let mut acc = R::zero();
        let mut assignment = root_blocks.to_vec();
        self.rooted_rec(body, f.roots(), &mut assignment, &root_part, &mut acc);
        acc
    }

    fn rooted_rec(&self, d: &Tournament, r: usize, assignment: &mut Vec<usize>, partial: &R, acc: &mut R) {
        let depth = assignment.len();
        if depth == d.n() {
            *acc = acc.add(partial);
            return;
        }
        for block in 0..self.k() {
            let mut p = partial.mul_rat(&self.weights[block]);
            for (v, &bv) in assignment.iter().enumerate() {
                let val = if d.has_arc(depth, v) {
                    &self.values[block][bv]
                } else {
                    &self.values[bv][block]
                };
                p = p.mul(val);
                if p.is_zero() {
                    break;
                }
            }
            if p.is_zero() {
                continue;
            }
            assignment.push(block);
            self.rooted_rec(d, r, assignment, &p, acc);
            assignment.pop();
        }
    }

    /// Per-block out-degrees `d⁺(i) = Σ_j w_j · W(i,j)`.
    pub fn degrees(&self) -> RegularityReport<R> {
        let half = R::from_rat(&rat(1, 2));
        let out_degrees: Vec<R> = (0..self.k())
            .map(|i| {
                let mut d = R::zero();
                for j in 0..self.k() {
                    d = d.add(&self.values[i][j].mul_rat(&self.weights[j]));
                }
                d
            })
            .collect();
        let is_regular = out_degrees.iter().all(|d| d == &half);
        RegularityReport { is_regular, out_degrees }
    }

    pub fn is_regular(&self) -> bool {
        self.degrees().is_regular
    }
}

impl StepTournamenton<Rat> {
    /// The paper's `W_T`: equal-measure blocks, value 1 along arcs, 0 against
    /// them, 1/2 on the diagonal.
    pub fn from_tournament(t: &Tournament) -> Self {
        let n = t.n();
        let w = rat(1, n as i64);
        let values = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            rat(1, 2)
                        } else if t.has_arc(i, j) {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        StepTournamenton { weights: vec![w; n], values }
    }

    /// Two-block blend: `W1` scaled into total measure `z`, `W0` into `1−z`,
    /// all cross-blocks valued 1/2. Preserves regularity of both arguments.
    pub fn blend(w0: &Self, w1: &Self, z: &Rat) -> Result<Self, StepError> {
        if !(z.is_positive() && z < &Rat::one()) {
            return Err(StepError::BlendRange);
        }
        let k1 = w1.k();
        let k = k1 + w0.k();
        let mut weights = Vec::with_capacity(k);
        weights.extend(w1.weights.iter().map(|w| w * z));
        weights.extend(w0.weights.iter().map(|w| w * (Rat::one() - z)));
        let values = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match (i < k1, j < k1) {
                        (true, true) => w1.values[i][j].clone(),
                        (false, false) => w0.values[i - k1][j - k1].clone(),
                        _ => rat(1, 2),
                    })
                    .collect()
            })
            .collect();
        StepTournamenton::new(weights, values)
    }

    /// Induced-density vector `d(J, W) = (m!/aut(J))·t(J, W)` over the
    /// `m`-vertex classes.
    pub fn induced_densities(&self, m: usize) -> DensityVector {
        let fact: u64 = (1..=m as u64).product();
        DensityVector::from_fn(m, |j| {
            self.t(j) * Rat::from_integer(BigInt::from(fact / j.automorphism_count()))
        })
    }
}

/// The paper's `U_z` on three equal blocks, with the blend parameter kept
/// symbolic: 1/2 on the diagonal, `1/2 + z` along the 3-cycle, `1/2 − z`
/// against it.
pub fn u_blend() -> StepTournamenton<Poly> {
    let half = Poly::constant(rat(1, 2));
    let fwd = &half + &Poly::var();
    let bwd = &half - &Poly::var();
    let values = vec![
        vec![half.clone(), fwd.clone(), bwd.clone()],
        vec![bwd.clone(), half.clone(), fwd.clone()],
        vec![fwd, bwd, half],
    ];
    StepTournamenton::new(vec![rat(1, 3); 3], values).unwrap()
}

impl StepTournamenton<Poly> {
    /// Evaluates every value polynomial at `z`.
    pub fn specialize(&self, z: &Rat) -> Result<StepTournamenton<Rat>, StepError> {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|p| p.eval(z)).collect())
            .collect();
        StepTournamenton::new(self.weights.clone(), values)
    }
}

/// Parses the tournamenton expressions accepted on the command line:
/// `half`, `wt:<tournament>`, `uz@p/q`, `blend(<W1>,<W0>,p/q)`.
pub fn parse_tournamenton(s: &str, catalog: &Catalog) -> Result<StepTournamenton<Rat>, ParseError> {
    let s = s.trim();
    if s == "half" {
        return Ok(StepTournamenton::constant_half());
    }
    if let Some(enc) = s.strip_prefix("wt:") {
        let t = catalog.lookup(enc.trim())?;
        return Ok(StepTournamenton::from_tournament(&t));
    }
    if let Some(zs) = s.strip_prefix("uz@") {
        let z = crate::exact::parse_rat(zs)?;
        return u_blend()
            .specialize(&z)
            .map_err(|e| ParseError::new(format!("uz@{zs}: {e}")));
    }
    if let Some(inner) = s.strip_prefix("blend(").and_then(|r| r.strip_suffix(')')) {
        let parts = split_top_level(inner);
        if parts.len() != 3 {
            return Err(ParseError::new(format!("blend needs 3 arguments, got {}", parts.len())));
        }
        let w1 = parse_tournamenton(parts[0], catalog)?;
        let w0 = parse_tournamenton(parts[1], catalog)?;
        let z = crate::exact::parse_rat(parts[2])?;
        return StepTournamenton::blend(&w0, &w1, &z)
            .map_err(|e| ParseError::new(format!("blend: {e}")));
    }
    Err(ParseError::new(format!("unknown tournamenton expression {s:?}")))
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Seeded random step tournamentons for property tests: block count uniform
/// in 1..=5, weights a uniform composition with denominator at most 16,
/// off-diagonal values `p/q` with `q ≤ 16` and the complement enforced.
pub mod random {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    pub fn random_step(seed: u64) -> StepTournamenton<Rat> {
        random_step_with(&mut ChaCha12Rng::seed_from_u64(seed))
    }

    pub fn random_step_with<R: Rng + ?Sized>(rng: &mut R) -> StepTournamenton<Rat> {
        let k = rng.gen_range(1..=5);
        let weights = random_weights(k, rng);
        let mut values = vec![vec![Rat::zero(); k]; k];
        for i in 0..k {
            values[i][i] = rat(1, 2);
            for j in i + 1..k {
                let q = rng.gen_range(1..=16i64);
                let p = rng.gen_range(0..=q);
                values[i][j] = rat(p, q);
                values[j][i] = Rat::one() - &values[i][j];
            }
        }
        StepTournamenton::new(weights, values).expect("generator keeps the invariants")
    }

    /// Uniform composition of a random denominator `q ≤ 16` into `k` positive
    /// parts (exchangeable across blocks, so the simplex sample is symmetric).
    fn random_weights<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<Rat> {
        let q = rng.gen_range(k as i64..=16.max(k as i64));
        let mut cuts: Vec<i64> = (1..q).collect();
        cuts.shuffle(rng);
        let mut chosen: Vec<i64> = cuts.into_iter().take(k - 1).collect();
        chosen.sort_unstable();
        chosen.insert(0, 0);
        chosen.push(q);
        chosen.windows(2).map(|w| rat(w[1] - w[0], q)).collect()
    }

    /// Seeded random *regular* step tournamentons: circulant constructions
    /// on an odd number of equal blocks, `U_z` specializations, and blends
    /// of regular pieces — all of which have constant out-degree 1/2.
    pub fn random_regular_step(seed: u64) -> StepTournamenton<Rat> {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        random_regular_with(&mut rng, 2)
    }

    fn random_regular_with<R: Rng + ?Sized>(rng: &mut R, depth: usize) -> StepTournamenton<Rat> {
        match rng.gen_range(0..if depth > 0 { 4 } else { 3 }) {
            0 => StepTournamenton::constant_half(),
            1 => {
                let z = rat(rng.gen_range(0..=8), 16);
                u_blend().specialize(&z).unwrap()
            }
            2 => random_circulant(rng),
            _ => {
                let w0 = random_regular_with(rng, depth - 1);
                let w1 = random_regular_with(rng, depth - 1);
                let z = rat(rng.gen_range(1..16), 16);
                StepTournamenton::blend(&w0, &w1, &z).unwrap()
            }
        }
    }

    /// `k` odd equal blocks; value at offset `d` is `1/2 + c_d`, at `−d` is
    /// `1/2 − c_d`. Every row sums to `k/2`, so the construction is regular.
    fn random_circulant<R: Rng + ?Sized>(rng: &mut R) -> StepTournamenton<Rat> {
        let k = *[3usize, 5, 7].choose(rng).unwrap();
        let offsets: Vec<Rat> = (0..k / 2)
            .map(|_| {
                let q = rng.gen_range(2..=16i64);
                rat(rng.gen_range(-(q / 2)..=q / 2), q)
            })
            .collect();
        let mut values = vec![vec![Rat::zero(); k]; k];
        for i in 0..k {
            values[i][i] = rat(1, 2);
            for d in 1..=k / 2 {
                let j = (i + d) % k;
                values[i][j] = rat(1, 2) + &offsets[d - 1];
                values[j][i] = rat(1, 2) - &offsets[d - 1];
            }
        }
        StepTournamenton::new(vec![rat(1, k as i64); k], values).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::{t_half, t_single};

    #[test]
    fn constant_half_matches_t_half_on_all_small_patterns() {
        let w = StepTournamenton::<Rat>::constant_half();
        for n in 1..=5 {
            for t in Tournament::enumerate(n).unwrap() {
                assert_eq!(w.t(&t), t_half(&LinComb::single(t)));
            }
        }
        assert!(w.is_regular());
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(StepTournamenton::new(vec![rat(1, 2)], vec![vec![rat(1, 2)]]).is_err());
        assert!(StepTournamenton::new(vec![rat(1, 1)], vec![vec![rat(1, 3)]]).is_err());
        assert!(StepTournamenton::new(
            vec![rat(1, 2), rat(1, 2)],
            vec![vec![rat(1, 2), rat(2, 3)], vec![rat(2, 3), rat(1, 2)]],
        )
        .is_err());
        assert!(StepTournamenton::new(
            vec![rat(1, 2), rat(1, 2)],
            vec![
                vec![rat(1, 2), rat(2, 3)],
                vec![rat(1, 3), rat(1, 2)],
            ],
        )
        .is_ok());
    }

    #[test]
    fn w_t_examples() {
        let c3 = Tournament::cycle3();
        let w = StepTournamenton::from_tournament(&c3);
        assert!(w.is_regular());
        assert_eq!(w.t(&c3), rat(1, 8), "regular W has t(C3,W) = 1/8");
        let wtt5 = StepTournamenton::from_tournament(&Tournament::transitive(5));
        assert!(!wtt5.is_regular());
        assert!(wtt5.t(&c3) < rat(1, 8));
    }

    #[test]
    fn w_t_degrees_for_tt3() {
        let w = StepTournamenton::from_tournament(&Tournament::transitive(3));
        let report = w.degrees();
        assert!(!report.is_regular);
        assert_eq!(report.out_degrees, vec![rat(5, 6), rat(1, 2), rat(1, 6)]);
        // weighted mean of out-degrees is 1/2 by antisymmetry
        let mean: Rat = report
            .out_degrees
            .iter()
            .zip(w.weights())
            .map(|(d, w)| d * w)
            .sum();
        assert_eq!(mean, rat(1, 2));
    }

    #[test]
    fn u_blend_specializations() {
        let uz = u_blend();
        let at0 = uz.specialize(&rat(0, 1)).unwrap();
        for n in 1..=5 {
            for t in Tournament::enumerate(n).unwrap() {
                assert_eq!(at0.t(&t), t_half(&LinComb::single(t)));
            }
        }
        let at_half = uz.specialize(&rat(1, 2)).unwrap();
        let wc3 = StepTournamenton::from_tournament(&Tournament::cycle3());
        assert_eq!(at_half, wc3);
        // symbolic degrees: every block out-degree is the constant 1/2
        let report = uz.degrees();
        assert!(report.is_regular);
        for d in &report.out_degrees {
            assert_eq!(d, &Poly::constant(rat(1, 2)));
        }
    }

    #[test]
    fn blend_examples() {
        let half = StepTournamenton::<Rat>::constant_half();
        let b = StepTournamenton::blend(&half, &half, &rat(1, 3)).unwrap();
        for n in 1..=4 {
            for t in Tournament::enumerate(n).unwrap() {
                assert_eq!(b.t(&t), t_half(&LinComb::single(t)));
            }
        }
        assert!(StepTournamenton::blend(&half, &half, &rat(0, 1)).is_err());
        assert!(StepTournamenton::blend(&half, &half, &rat(1, 1)).is_err());
        assert!(StepTournamenton::blend(&half, &half, &rat(3, 2)).is_err());

        // blends of regular pieces stay regular
        let wc3 = StepTournamenton::from_tournament(&Tournament::cycle3());
        let b = StepTournamenton::blend(&wc3, &half, &rat(2, 7)).unwrap();
        assert!(b.is_regular());
    }

    #[test]
    fn blend_density_interpolates_as_a_polynomial() {
        // t(H, blend(W0,W1,z)) is a polynomial of degree ≤ v(H) in z that
        // tends to t(H,W0) at z→0 and t(H,W1) at z→1. Fit it from v(H)+1
        // evaluations and check the endpoints.
        let w0 = StepTournamenton::from_tournament(&Tournament::cycle3());
        let w1 = StepTournamenton::<Rat>::constant_half();
        let h = Tournament::transitive(3);
        let deg = h.n();
        let points: Vec<(Rat, Rat)> = (1..=deg as i64 + 1)
            .map(|i| {
                let z = rat(i, deg as i64 + 2);
                let b = StepTournamenton::blend(&w0, &w1, &z).unwrap();
                (z, b.t(&h))
            })
            .collect();
        // Lagrange evaluation at z = 0 and z = 1 from the fitted points
        let eval_at = |x: &Rat| -> Rat {
            let mut acc = Rat::zero();
            for (i, (xi, yi)) in points.iter().enumerate() {
                let mut term = yi.clone();
                for (j, (xj, _)) in points.iter().enumerate() {
                    if i != j {
                        term = term * (x - xj) / (xi - xj);
                    }
                }
                acc += term;
            }
            acc
        };
        assert_eq!(eval_at(&rat(0, 1)), w0.t(&h));
        assert_eq!(eval_at(&rat(1, 1)), w1.t(&h));
    }

    #[test]
    fn random_generators_keep_invariants() {
        for seed in 0..30 {
            let w = random::random_step(seed);
            assert!(w.k() >= 1 && w.k() <= 5);
            let wr = random::random_regular_step(seed);
            assert!(wr.is_regular(), "seed {seed}");
        }
    }

    #[test]
    fn rooted_density_examples() {
        let w = StepTournamenton::<Rat>::constant_half();
        let f = Flag::new(Tournament::transitive(3), 2).unwrap();
        assert_eq!(w.rooted(&f, &[0, 0]), rat(1, 8));
        // root-only flag: just the product of root arc values
        let root_only = Flag::new(Tournament::cycle3(), 3).unwrap();
        let wc3 = StepTournamenton::from_tournament(&Tournament::cycle3());
        assert_eq!(wc3.rooted(&root_only, &[0, 1, 2]), rat(1, 1));
        assert_eq!(wc3.rooted(&root_only, &[0, 2, 1]), rat(0, 1));
        assert_eq!(wc3.rooted(&root_only, &[0, 0, 0]), rat(1, 8));
    }

    #[test]
    fn parser_round_trips() {
        let cat = crate::catalog();
        let w = parse_tournamenton("wt:C3", cat).unwrap();
        assert_eq!(w, StepTournamenton::from_tournament(&Tournament::cycle3()));
        let u = parse_tournamenton("uz@1/3", cat).unwrap();
        assert_eq!(u, u_blend().specialize(&rat(1, 3)).unwrap());
        let b = parse_tournamenton("blend(wt:C3,half,1/4)", cat).unwrap();
        assert_eq!(
            b,
            StepTournamenton::blend(
                &StepTournamenton::constant_half(),
                &StepTournamenton::from_tournament(&Tournament::cycle3()),
                &rat(1, 4)
            )
            .unwrap()
        );
        assert!(parse_tournamenton("woof", cat).is_err());
        assert!(parse_tournamenton("blend(half,half)", cat).is_err());
    }
}
