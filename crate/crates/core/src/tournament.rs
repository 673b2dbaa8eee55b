//! Finite tournaments on up to 16 vertices as dense arc bitmasks, with
//! canonical forms, isomorphism-free enumeration and automorphism counting.
//!
//! The text encoding is `t<n>:<bits>` where `<bits>` run row-major over the
//! vertex pairs `(i,j)` with `i < j` (0-based internally, 1-based in docs) and
//! bit `'1'` means the arc `i → j`. Canonical representatives maximize this
//! bit string over all relabelings, so the transitive tournament — all arcs
//! pointing from smaller to larger label — is `t3:111`, and the canonical
//! 3-cycle is `t3:101`. Sorting "by canonical encoding" everywhere in this
//! crate means the order in which `'1'` sorts before `'0'`, i.e. `t3:111`
//! precedes `t3:101`.

use crate::ParseError;
use rand::Rng;
use std::fmt;
use thiserror::Error;

pub const MAX_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TournamentError {
    #[error("vertex count {0} out of range 1..={MAX_VERTICES}")]
    BadOrder(usize),
    #[error("pair ({0},{1}) must have exactly one orientation")]
    BadArcs(usize, usize),
    #[error("enumeration order {0} out of range 1..=7")]
    EnumerationRange(usize),
}

/// A labeled tournament. Values are cheap to copy; two values compare equal
/// iff they are equal as labeled tournaments (use [`Tournament::canonical`]
/// for isomorphism).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: u8,
    bits: u128, // bit k = 1 iff arc i→j for the k-th pair (i<j), row-major
}

fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

impl Tournament {
    fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n());
        let n = self.n();
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    /// Builds from an explicit arc list; every unordered pair must appear
    /// exactly once.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self, TournamentError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(TournamentError::BadOrder(n));
        }
        let mut seen = vec![false; pair_count(n)];
        let mut t = Tournament { n: n as u8, bits: 0 };
        for &(u, v) in arcs {
            if u == v || u >= n || v >= n {
                return Err(TournamentError::BadArcs(u, v));
            }
            let (i, j) = (u.min(v), u.max(v));
            let k = t.pair_index(i, j);
            if seen[k] {
                return Err(TournamentError::BadArcs(u, v));
            }
            seen[k] = true;
            if u < v {
                t.bits |= 1 << k;
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(t)
        } else {
            let k = seen.iter().position(|&s| !s).unwrap();
            Err(TournamentError::BadArcs(k, k))
        }
    }

    /// The single vertex.
    pub fn single() -> Self {
        Tournament { n: 1, bits: 0 }
    }

    /// Transitive tournament `TT_k`: all arcs from smaller to larger label.
    pub fn transitive(k: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&k));
        let bits = if k < 2 { 0 } else { (1u128 << pair_count(k)) - 1 };
        Tournament { n: k as u8, bits }
    }

    /// The cyclic triangle `C3` in its canonical labeling.
    pub fn cycle3() -> Self {
        Tournament::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        debug_assert!(u != v && u < self.n() && v < self.n());
        if u < v {
            self.bits >> self.pair_index(u, v) & 1 == 1
        } else {
            self.bits >> self.pair_index(v, u) & 1 == 0
        }
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(pair_count(self.n()));
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.has_arc(i, j) {
                    out.push((i, j));
                } else {
                    out.push((j, i));
                }
            }
        }
        out
    }

    pub fn out_degree(&self, v: usize) -> usize {
        (0..self.n()).filter(|&u| u != v && self.has_arc(v, u)).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.n() - 1 - self.out_degree(v)
    }

    /// Out-degrees sorted ascending; an isomorphism invariant.
    pub fn score_sequence(&self) -> Vec<usize> {
        let mut s: Vec<usize> = (0..self.n()).map(|v| self.out_degree(v)).collect();
        s.sort_unstable();
        s
    }

    /// All arcs reversed. An involution.
    pub fn reverse(&self) -> Self {
        let mask = if self.n() < 2 { 0 } else { (1u128 << pair_count(self.n())) - 1 };
        Tournament { n: self.n, bits: !self.bits & mask }
    }

    /// Relabels by `perm`, where `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n());
        let mut t = Tournament { n: self.n, bits: 0 };
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                let (u, v) = (perm[i], perm[j]);
                let (a, b, fwd) = if u < v { (u, v, true) } else { (v, u, false) };
                if self.has_arc(i, j) == fwd {
                    t.bits |= 1 << t.pair_index(a, b);
                }
            }
        }
        t
    }

    /// True iff every out-degree equals `(n-1)/2` (forces odd `n`).
    pub fn is_regular(&self) -> bool {
        let n = self.n();
        n % 2 == 1 && (0..n).all(|v| self.out_degree(v) == (n - 1) / 2)
    }

    /// Key under which the canonical representative is minimal and ascending
    /// order equals "sorted by canonical encoding" (with `'1'` before `'0'`).
    fn sort_key(&self) -> u128 {
        let np = pair_count(self.n());
        let mut key = 0u128;
        for k in 0..np {
            if self.bits >> k & 1 == 0 {
                key |= 1 << (np - 1 - k);
            }
        }
        key
    }

    /// Canonical representative of the isomorphism class: the relabeling
    /// maximizing the encoding bit string.
    ///
    /// The maximal string's first row must read `1…10…0`, so only relabelings
    /// placing a maximum-out-degree vertex first, followed by its
    /// out-neighbourhood and then its in-neighbourhood, need to be tried.
    pub fn canonical(&self) -> Self {
        let n = self.n();
        if n <= 1 {
            return *self;
        }
        let dmax = (0..n).map(|v| self.out_degree(v)).max().unwrap();
        let mut best_key = u128::MAX;
        let mut best = *self;
        let mut perm = vec![0usize; n]; // old -> new
        for first in (0..n).filter(|&v| self.out_degree(v) == dmax) {
            let outs: Vec<usize> = (0..n).filter(|&u| u != first && self.has_arc(first, u)).collect();
            let ins: Vec<usize> = (0..n).filter(|&u| u != first && self.has_arc(u, first)).collect();
            perm[first] = 0;
            permute_positions(&outs, 1, &mut perm, &mut |perm| {
                permute_positions(&ins, 1 + outs.len(), &mut perm.to_vec(), &mut |perm| {
                    let cand = self.relabel(perm);
                    let key = cand.sort_key();
                    if key < best_key {
                        best_key = key;
                        best = cand;
                    }
                });
            });
        }
        best
    }

    /// The canonical encoding string; equal strings iff isomorphic.
    pub fn canonical_form(&self) -> String {
        self.canonical().encode()
    }

    /// Number of arc-preserving permutations.
    pub fn automorphism_count(&self) -> u64 {
        let n = self.n();
        let mut count = 0u64;
        let all: Vec<usize> = (0..n).collect();
        let mut perm = vec![0usize; n];
        permute_positions(&all, 0, &mut perm, &mut |perm| {
            if self.relabel(perm) == *self {
                count += 1;
            }
        });
        count
    }

    /// `t<n>:<bits>`.
    pub fn encode(&self) -> String {
        let np = pair_count(self.n());
        let bits: String = (0..np)
            .map(|k| if self.bits >> k & 1 == 1 { '1' } else { '0' })
            .collect();
        format!("t{}:{}", self.n(), bits)
    }

    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let rest = s
            .strip_prefix('t')
            .ok_or_else(|| ParseError::new(format!("tournament encoding must start with 't': {s:?}")))?;
        let (n_str, bits_str) = rest
            .split_once(':')
            .ok_or_else(|| ParseError::new(format!("missing ':' in {s:?}")))?;
        let n: usize = n_str
            .parse()
            .map_err(|_| ParseError::new(format!("bad vertex count in {s:?}")))?;
        if n == 0 || n > MAX_VERTICES {
            return Err(ParseError::new(format!("vertex count {n} out of range 1..={MAX_VERTICES}")));
        }
        if bits_str.len() != pair_count(n) {
            return Err(ParseError::new(format!(
                "expected {} bits for {} vertices, got {}",
                pair_count(n),
                n,
                bits_str.len()
            )));
        }
        let mut bits = 0u128;
        for (k, c) in bits_str.chars().enumerate() {
            match c {
                '1' => bits |= 1 << k,
                '0' => {}
                _ => return Err(ParseError::new(format!("bad bit {c:?} in {s:?}"))),
            }
        }
        Ok(Tournament { n: n as u8, bits })
    }

    /// Uniformly random labeled tournament (each pair oriented by a fair
    /// coin), for property tests and sampling support.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        assert!((1..=MAX_VERTICES).contains(&n));
        let np = pair_count(n);
        let mut bits = 0u128;
        for k in 0..np {
            if rng.gen::<bool>() {
                bits |= 1 << k;
            }
        }
        Tournament { n: n as u8, bits }
    }

    /// All isomorphism classes on `n` vertices, canonical representatives
    /// sorted by canonical encoding. Classes are grown by attaching one new
    /// vertex to each smaller class in every possible orientation pattern;
    /// deleting the last vertex of any `n`-tournament lands in the smaller
    /// list, so the extension sweep is exhaustive.
    pub fn enumerate(n: usize) -> Result<Vec<Tournament>, TournamentError> {
        if !(1..=7).contains(&n) {
            return Err(TournamentError::EnumerationRange(n));
        }
        let mut classes = vec![Tournament::single()];
        for k in 2..=n {
            let mut next = std::collections::BTreeSet::new();
            for base in &classes {
                for mask in 0u32..(1 << (k - 1)) {
                    let mut arcs = base.arcs();
                    for v in 0..k - 1 {
                        if mask >> v & 1 == 1 {
                            arcs.push((v, k - 1));
                        } else {
                            arcs.push((k - 1, v));
                        }
                    }
                    let t = Tournament::new(k, &arcs).unwrap();
                    next.insert(t.canonical());
                }
            }
            classes = next.into_iter().collect();
        }
        Ok(classes)
    }
}

/// Calls `f` for every way of assigning the `items` to consecutive positions
/// starting at `start` in `perm` (Heap-style recursion).
fn permute_positions(
    items: &[usize],
    start: usize,
    perm: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    fn rec(
        items: &mut Vec<usize>,
        k: usize,
        start: usize,
        perm: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if k == items.len() {
            f(perm);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            perm[items[k]] = start + k;
            rec(items, k + 1, start, perm, f);
            items.swap(k, i);
        }
    }
    let mut items = items.to_vec();
    rec(&mut items, 0, start, perm, f);
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tournament({})", self.encode())
    }
}

impl fmt::Display for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encode())
    }
}

impl PartialOrd for Tournament {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tournament {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.sort_key()).cmp(&(other.n, other.sort_key()))
    }
}
