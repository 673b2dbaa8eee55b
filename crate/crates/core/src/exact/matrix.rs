//! Symmetric rational matrices with an exact positive-semidefiniteness
//! decision and exact kernel bases.

use super::Rat;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("entry ({i},{j}) does not equal entry ({j},{i})")]
pub struct AsymmetricError {
    pub i: usize,
    pub j: usize,
}

/// Symmetric matrix over the rationals. Symmetry is checked at construction,
/// so every value of this type is symmetric by invariant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<Rat>, // row-major, full storage
}

/// Result of the exact PSD decision.
///
/// On success the witness is the pivot sequence of a symmetric elimination
/// (index and strictly positive pivot value, in elimination order); on failure
/// it is a rational vector `v` with `vᵀMv < 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdOutcome {
    Psd { pivots: Vec<(usize, Rat)> },
    NotPsd { witness: Vec<Rat> },
}

impl PsdOutcome {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdOutcome::Psd { .. })
    }
}

impl SymMatrix {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self, AsymmetricError> {
        let order = rows.len();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), order, "matrix must be square");
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(AsymmetricError { i, j });
                }
            }
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(SymMatrix { order, entries })
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = vec![Rat::zero(); order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                entries[i * order + j] = v.clone();
                entries[j * order + i] = v;
            }
        }
        SymMatrix { order, entries }
    }

    pub fn identity(order: usize) -> Self {
        SymMatrix::from_fn(order, |i, j| {
            if i == j {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
    }

    /// Integer matrix times a rational scalar, the form certificate matrices
    /// are printed in.
    pub fn from_scaled_ints(rows: &[Vec<i64>], scale: &Rat) -> Result<Self, AsymmetricError> {
        let as_rat: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x.into()) * scale).collect())
            .collect();
        SymMatrix::new(as_rat)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<Rat>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn scaled(&self, s: &Rat) -> SymMatrix {
        SymMatrix {
            order: self.order,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Replaces entries `(i,j)` and `(j,i)` by `v`, keeping symmetry.
    pub fn with_entry(&self, i: usize, j: usize, v: Rat) -> SymMatrix {
        let mut m = self.clone();
        m.entries[i * self.order + j] = v.clone();
        m.entries[j * self.order + i] = v;
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.order);
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn quadratic_form(&self, v: &[Rat]) -> Rat {
        self.mul_vec(v)
            .iter()
            .zip(v)
            .map(|(mv, vi)| mv * vi)
            .sum()
    }

    /// Exact PSD decision by symmetric Gaussian elimination on the Schur
    /// complement, always pivoting on a strictly positive diagonal entry.
    ///
    /// The matrix is PSD iff elimination consumes everything without ever
    /// exposing a negative diagonal entry or a zero diagonal entry whose row
    /// is nonzero (either of which pins down an indefinite 2×2 principal
    /// block of the current complement). In the failing cases a witness
    /// vector for the original matrix is recovered by undoing the recorded
    /// row operations.
    pub fn psd_check(&self) -> PsdOutcome {
        let n = self.order;
        let mut s = self.rows();
        let mut active: Vec<bool> = vec![true; n];
        let mut pivots: Vec<(usize, Rat)> = Vec::new();
        // (pivot index, factors (row, f)) per elimination step
        let mut steps: Vec<(usize, Vec<(usize, Rat)>)> = Vec::new();

        let pull_back = |mut v: Vec<Rat>, steps: &[(usize, Vec<(usize, Rat)>)]| -> Vec<Rat> {
            // Each step acted as S' = L S Lᵀ with L = I − Σ f_i e_i e_pᵀ, so a
            // witness v' for S' pulls back to Lᵀ v', i.e. v_p −= Σ f_i v_i.
            for (p, factors) in steps.iter().rev() {
                let adj: Rat = factors.iter().map(|(i, f)| f * &v[*i]).sum();
                v[*p] -= adj;
            }
            v
        };

        loop {
            let act: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
            if act.is_empty() {
                return PsdOutcome::Psd { pivots };
            }
            // Negative diagonal: e_i is a witness for the complement.
            if let Some(&i) = act.iter().find(|&&i| s[i][i].is_negative()) {
                let mut v = vec![Rat::zero(); n];
                v[i] = Rat::one();
                let w = pull_back(v, &steps);
                debug_assert!(self.quadratic_form(&w).is_negative());
                return PsdOutcome::NotPsd { witness: w };
            }
            // Zero diagonal with a nonzero row: the 2×2 block [[0,c],[c,d]]
            // has determinant −c² < 0, so the complement is indefinite.
            for &i in &act {
                if !s[i][i].is_zero() {
                    continue;
                }
                if let Some(&j) = act.iter().find(|&&j| j != i && !s[i][j].is_zero()) {
                    let c = s[i][j].clone();
                    let d = s[j][j].clone();
                    // v = a e_i + e_j with a = −(d+1)/(2c) gives vᵀSv = −1.
                    let a = -(d + Rat::one()) / (Rat::from_integer(2.into()) * c);
                    let mut v = vec![Rat::zero(); n];
                    v[i] = a;
                    v[j] = Rat::one();
                    let w = pull_back(v, &steps);
                    debug_assert!(self.quadratic_form(&w).is_negative());
                    return PsdOutcome::NotPsd { witness: w };
                }
            }
            // Pivot on the first strictly positive diagonal entry.
            let Some(&p) = act.iter().find(|&&i| s[i][i].is_positive()) else {
                // All active diagonals are zero with zero rows: complement is 0.
                return PsdOutcome::Psd { pivots };
            };
            let d = s[p][p].clone();
            let mut factors = Vec::new();
            for &i in &act {
                if i == p || s[i][p].is_zero() {
                    continue;
                }
                let f = &s[i][p] / &d;
                for &j in &act {
                    if j == p {
                        continue;
                    }
                    let delta = &f * &s[p][j];
                    s[i][j] -= delta;
                }
                s[i][p] = Rat::zero();
                factors.push((i, f));
            }
            for &j in &act {
                s[p][j] = Rat::zero();
            }
            pivots.push((p, d));
            steps.push((p, factors));
            active[p] = false;
        }
    }

    /// Exact basis of the null space (empty iff nonsingular). Vectors are the
    /// standard free-column basis of the reduced row echelon form, so the
    /// result is deterministic.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let mut a = self.rows();
        let n = self.order;
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(pr) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, pr);
            let pv = a[r][c].clone();
            for x in a[r].iter_mut() {
                *x /= &pv;
            }
            for i in 0..n {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..n {
                        let delta = &f * &a[r][j];
                        a[i][j] -= delta;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == n {
                break;
            }
        }
        let mut basis = Vec::new();
        for fc in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![Rat::zero(); n];
            v[fc] = Rat::one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            basis.push(v);
        }
        basis
    }
}

fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let (m, n) = (a.len(), a[0].len());
    let mut rank = 0;
    for c in 0..n {
        let Some(pr) = (rank..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let pv = a[rank][c].clone();
        for x in a[rank].iter_mut() {
            *x /= &pv;
        }
        for i in 0..m {
            if i != rank && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..n {
                    let delta = &f * &a[rank][j];
                    a[i][j] -= delta;
                }
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Mutual-containment test: the two families of vectors span the same
/// subspace. Empty families both span the zero space.
pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    if a.is_empty() || b.is_empty() {
        return a.is_empty() && b.is_empty();
    }
    if a[0].len() != b[0].len() {
        return false;
    }
    let ra = rank(a);
    let rb = rank(b);
    let mut all: Vec<Vec<Rat>> = a.to_vec();
    all.extend(b.iter().cloned());
    ra == rb && rank(&all) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use rand::{Rng, SeedableRng};

    fn m(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_psd_with_empty_kernel() {
        let id = SymMatrix::identity(3);
        assert!(id.psd_check().is_psd());
        assert!(id.kernel_basis().is_empty());
    }

    #[test]
    fn antidiagonal_is_not_psd_with_valid_witness() {
        let a = m(&[&[0, 1], &[1, 0]]);
        match a.psd_check() {
            PsdOutcome::NotPsd { witness } => {
                assert!(a.quadratic_form(&witness) < rat(0, 1));
            }
            PsdOutcome::Psd { .. } => panic!("[[0,1],[1,0]] is indefinite"),
        }
        // (1,-1) itself is a witness too
        assert_eq!(a.quadratic_form(&[rat_int(1), rat_int(-1)]), rat_int(-2));
    }

    #[test]
    fn negative_after_elimination_yields_witness() {
        // PSD fails only once the Schur complement turns negative.
        let a = m(&[&[1, 2], &[2, 1]]);
        match a.psd_check() {
            PsdOutcome::NotPsd { witness } => {
                assert!(a.quadratic_form(&witness) < rat(0, 1));
            }
            _ => panic!("indefinite"),
        }
    }

    #[test]
    fn singular_psd_matrix() {
        // all-ones 3x3: PSD of rank 1, kernel dimension 2
        let a = m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert!(a.psd_check().is_psd());
        let ker = a.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.mul_vec(v).iter().all(|x| x == &rat(0, 1)));
        }
    }

    #[test]
    fn zero_diag_nonzero_row_rejected() {
        let a = m(&[&[0, 1], &[1, 5]]);
        match a.psd_check() {
            PsdOutcome::NotPsd { witness } => {
                assert!(a.quadratic_form(&witness) < rat(0, 1));
            }
            _ => panic!("det = -1 < 0"),
        }
    }

    #[test]
    fn psd_pivot_sequence_reported() {
        let a = m(&[&[4, 2], &[2, 2]]);
        match a.psd_check() {
            PsdOutcome::Psd { pivots } => {
                assert_eq!(pivots, vec![(0, rat_int(4)), (1, rat_int(1))]);
            }
            _ => panic!("PSD"),
        }
    }

    #[test]
    fn random_gram_matrices_are_psd_and_spot_checked() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let k = rng.gen_range(1..=n);
            // B is n x k; G = B Bᵀ is PSD with rank ≤ k.
            let b: Vec<Vec<Rat>> = (0..n)
                .map(|_| (0..k).map(|_| rat(rng.gen_range(-4..=4), 1)).collect())
                .collect();
            let g = SymMatrix::from_fn(n, |i, j| {
                (0..k).map(|t| &b[i][t] * &b[j][t]).sum()
            });
            assert!(g.psd_check().is_psd());
            for v in g.kernel_basis() {
                assert!(g.mul_vec(&v).iter().all(num_traits::Zero::is_zero));
            }
            for _ in 0..20 {
                let v: Vec<Rat> =
                    (0..n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
                assert!(g.quadratic_form(&v) >= rat(0, 1));
            }
        }
    }

    #[test]
    fn random_indefinite_matrices_get_witnesses() {
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(8);
        let mut seen_not_psd = 0;
        for _ in 0..40 {
            let n = rng.gen_range(2..=5);
            let a = SymMatrix::from_fn(n, |_, _| rat(rng.gen_range(-5..=5), 1));
            if let PsdOutcome::NotPsd { witness } = a.psd_check() {
                seen_not_psd += 1;
                assert!(a.quadratic_form(&witness) < rat(0, 1));
            }
        }
        assert!(seen_not_psd > 10, "random symmetric matrices are rarely PSD");
    }

    #[test]
    fn span_comparison() {
        let e1 = vec![rat_int(1), rat_int(0)];
        let e2 = vec![rat_int(0), rat_int(1)];
        let d = vec![rat_int(1), rat_int(1)];
        assert!(same_span(
            &[e1.clone(), e2.clone()],
            &[d.clone(), vec![rat_int(1), rat_int(-1)]]
        ));
        assert!(!same_span(&[e1.clone()], &[e2.clone()]));
        assert!(!same_span(&[e1, e2], &[d]));
        assert!(same_span(&[], &[]));
    }
}
