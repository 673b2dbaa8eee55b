//! Exact homomorphism counts and densities between finite tournaments.
//!
//! Since tournaments carry no loops, every homomorphism between tournaments is
//! injective; counting is done by exhaustive assignment with arc-compatibility
//! pruning, which is instant at pattern sizes up to 7 and hosts up to 9.

use crate::catalog::Catalog;
use crate::exact::{fmt_rat, Rat};
use crate::tournament::Tournament;
use crate::ParseError;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Formal linear combination of tournaments with rational coefficients.
/// Terms are canonicalized and merged on construction; zero terms drop out.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb {
    terms: Vec<(Rat, Tournament)>,
}

impl LinComb {
    pub fn new(terms: Vec<(Rat, Tournament)>) -> Self {
        let mut merged: BTreeMap<Tournament, Rat> = BTreeMap::new();
        for (c, t) in terms {
            *merged.entry(t.canonical()).or_insert_with(Rat::zero) += c;
        }
        LinComb {
            terms: merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (c, t)).collect(),
        }
    }

    pub fn single(t: Tournament) -> Self {
        LinComb::new(vec![(Rat::one(), t)])
    }

    pub fn terms(&self) -> &[(Rat, Tournament)] {
        &self.terms
    }

    pub fn negated(&self) -> Self {
        LinComb {
            terms: self.terms.iter().map(|(c, t)| (-c, *t)).collect(),
        }
    }

    /// Largest vertex count among the terms (0 for the empty combination).
    pub fn max_order(&self) -> usize {
        self.terms.iter().map(|(_, t)| t.n()).max().unwrap_or(0)
    }

    /// `p/q*<name-or-encoding> [+|- ...]`, e.g. `8*C3 + 256*H10`.
    pub fn parse(s: &str, catalog: &Catalog) -> Result<Self, ParseError> {
        let mut terms = Vec::new();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Ok(LinComb::new(terms));
        }
        let mut sign = Rat::one();
        loop {
            // a '+'/'-' past the first character separates terms; a leading
            // '-' belongs to the coefficient
            let end = rest
                .char_indices()
                .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
                .map(|(i, _)| i)
                .unwrap_or(rest.len());
            let term = rest[..end].trim();
            let (coeff, name) = match term.split_once('*') {
                Some((c, n)) => (crate::exact::parse_rat(c)?, n.trim()),
                None => match term.strip_prefix('-') {
                    Some(n) => (-Rat::one(), n.trim()),
                    None => (Rat::one(), term),
                },
            };
            if name.is_empty() {
                return Err(ParseError::new("empty term in linear combination"));
            }
            let t = catalog.lookup(name)?;
            terms.push((&sign * coeff, t));
            if end == rest.len() {
                break;
            }
            let sep = rest[end..].chars().next().unwrap();
            sign = if sep == '-' { -Rat::one() } else { Rat::one() };
            rest = rest[end + 1..].trim_start();
            if rest.is_empty() {
                return Err(ParseError::new("dangling sign in linear combination"));
            }
        }
        Ok(LinComb::new(terms))
    }

    pub fn render(&self, catalog: &Catalog) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(c, t)| {
                let name = catalog.name_of(t).unwrap_or_else(|| t.encode());
                format!("{}*{}", fmt_rat(c), name)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl From<Tournament> for LinComb {
    fn from(t: Tournament) -> Self {
        LinComb::single(t)
    }
}

fn hom_count_rec(
    h: &Tournament,
    t: &Tournament,
    img: &mut Vec<usize>,
    injective: bool,
    used: &mut u32,
) -> u64 {
    let depth = img.len();
    if depth == h.n() {
        return 1;
    }
    let mut total = 0;
    'cand: for x in 0..t.n() {
        if injective && *used >> x & 1 == 1 {
            continue;
        }
        for (v, &vx) in img.iter().enumerate() {
            if x == vx {
                continue 'cand; // no loops, so a repeated image kills every arc pair
            }
            let need = h.has_arc(depth, v);
            if t.has_arc(x, vx) != need {
                continue 'cand;
            }
        }
        img.push(x);
        *used |= 1 << x;
        total += hom_count_rec(h, t, img, injective, used);
        img.pop();
        *used &= !(1 << x);
    }
    total
}

/// Number of arc-preserving maps `V(H) → V(T)`.
pub fn hom_count(h: &Tournament, t: &Tournament) -> u64 {
    assert!(h.n() <= 7 && t.n() <= 9, "hom_count is specified for v(H) ≤ 7, v(T) ≤ 9");
    hom_count_rec(h, t, &mut Vec::with_capacity(h.n()), false, &mut 0)
}

/// Number of injective arc-preserving maps. For tournaments this coincides
/// with [`hom_count`]; kept separate because it is the oracle the injective
/// density is defined through.
pub fn injective_hom_count(h: &Tournament, t: &Tournament) -> u64 {
    if h.n() > t.n() {
        return 0;
    }
    hom_count_rec(h, t, &mut Vec::with_capacity(h.n()), true, &mut 0)
}

/// Homomorphism density `t(H,T) = hom(H,T) / v(T)^{v(H)}` of a single pattern.
pub fn t_single(h: &Tournament, t: &Tournament) -> Rat {
    let hom = BigInt::from(hom_count(h, t));
    let denom = BigInt::from(t.n()).pow(h.n() as u32);
    Rat::new(hom, denom)
}

/// Homomorphism density of a linear combination.
pub fn t_density(h: &LinComb, t: &Tournament) -> Rat {
    h.terms().iter().map(|(c, ht)| c * t_single(ht, t)).sum()
}

fn falling_factorial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
    }
    acc
}

/// Injective homomorphism density; zero when the pattern is larger than the
/// host.
pub fn t_inj(h: &Tournament, j: &Tournament) -> Rat {
    if h.n() > j.n() {
        return Rat::zero();
    }
    assert!(j.n() <= 8, "t_inj is specified for v(J) ≤ 8");
    Rat::new(
        BigInt::from(injective_hom_count(h, j)),
        falling_factorial(j.n(), h.n()),
    )
}

pub fn t_inj_lincomb(h: &LinComb, j: &Tournament) -> Rat {
    h.terms().iter().map(|(c, ht)| c * t_inj(ht, j)).sum()
}

/// Density of `H` in the quasirandom limit: `Σ αᵢ (1/2)^C(v(Hᵢ),2)`.
pub fn t_half(h: &LinComb) -> Rat {
    h.terms()
        .iter()
        .map(|(c, t)| {
            let pairs = t.n() * (t.n() - 1) / 2;
            c * Rat::new(BigInt::one(), BigInt::from(2u32).pow(pairs as u32))
        })
        .sum()
}

/// The finite degree-count identity
/// `v(v-1)² = 2·hom(C3,T) + 6·hom(TT3,T) + 2·hom(TT2,T)`.
pub fn degree_identity_check(t: &Tournament) -> bool {
    let v = t.n() as u64;
    let lhs = v * (v - 1) * (v - 1);
    let rhs = 2 * hom_count(&Tournament::cycle3(), t)
        + 6 * hom_count(&Tournament::transitive(3), t)
        + 2 * hom_count(&Tournament::transitive(2), t);
    lhs == rhs
}

/// Map from canonical `m`-vertex classes to exact rationals. Keys are always
/// exactly the classes of [`Tournament::enumerate`]`(m)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DensityVector {
    m: usize,
    values: BTreeMap<Tournament, Rat>,
}

impl DensityVector {
    pub fn zeros(m: usize) -> Self {
        let values = Tournament::enumerate(m)
            .expect("density vector order out of range")
            .into_iter()
            .map(|t| (t, Rat::zero()))
            .collect();
        DensityVector { m, values }
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(&Tournament) -> Rat) -> Self {
        let mut dv = DensityVector::zeros(m);
        for (t, v) in dv.values.iter_mut() {
            *v = f(t);
        }
        dv
    }

    /// Induced-density vector of a finite tournament: `d(J,T)` is the
    /// probability that a uniformly random injective map lands on a copy
    /// of `J`, i.e. `(m!/aut(J))·t_inj(J,T)`.
    pub fn induced_of_tournament(m: usize, t: &Tournament) -> Self {
        assert!(m <= t.n());
        let fact: u64 = (1..=m as u64).product();
        DensityVector::from_fn(m, |j| {
            Rat::from_integer(BigInt::from(fact / j.automorphism_count())) * t_inj(j, t)
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, t: &Tournament) -> &Rat {
        self.values
            .get(&t.canonical())
            .expect("tournament order does not match this density vector")
    }

    pub fn add_assign(&mut self, t: &Tournament, v: &Rat) {
        let entry = self
            .values
            .get_mut(&t.canonical())
            .expect("tournament order does not match this density vector");
        *entry += v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tournament, &Rat)> {
        self.values.iter()
    }

    pub fn sum(&self) -> Rat {
        self.values.values().sum()
    }

    pub fn min(&self) -> Option<(&Tournament, &Rat)> {
        self.values.iter().min_by(|a, b| a.1.cmp(b.1))
    }
}
