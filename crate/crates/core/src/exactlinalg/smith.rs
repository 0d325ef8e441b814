use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `u * a * v == d` with `u`, `v` unimodular and `d` diagonal with a
/// divisibility chain. The inverses of `u` and `v` are tracked alongside.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn diag(&self, i: usize) -> BigInt {
        if i < self.rank {
            self.d.get(i, i).clone()
        } else {
            BigInt::zero()
        }
    }
}

/// Smallest |entry| in the trailing submatrix, ties by (row, col).
fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = BigInt::zero();
    for r in t..d.rows() {
        for c in t..d.cols() {
            let x = d.get(r, c);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.is_none() || ax < best_abs {
                best_abs = ax;
                best = Some((r, c));
                if best_abs.is_one() {
                    return best;
                }
            }
        }
    }
    best
}

struct Tracker {
    d: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Tracker {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    // row[dst] += k row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    // col[dst] += k col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.d.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_row(&mut self, r: usize) {
        self.d.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }
}

/// Smith normal form with a deterministic pivot rule: the nonzero entry of
/// smallest absolute value in the remaining block, ties broken by (row, col).
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut tr = Tracker {
        d: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pr, pc)) = find_pivot(&tr.d, t) else {
            break;
        };
        tr.swap_rows(t, pr);
        tr.swap_cols(t, pc);
        loop {
            let p = tr.d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let x = tr.d.get(i, t);
                if x.is_zero() {
                    continue;
                }
                let q = x / &p;
                if !q.is_zero() {
                    tr.add_row(i, t, &-q);
                }
                if !tr.d.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let x = tr.d.get(t, j);
                if x.is_zero() {
                    continue;
                }
                let q = x / &p;
                if !q.is_zero() {
                    tr.add_col(j, t, &-q);
                }
                if !tr.d.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot appeared: re-pivot.
                let (pr, pc) = find_pivot(&tr.d, t).expect("nonzero block");
                tr.swap_rows(t, pr);
                tr.swap_cols(t, pc);
                continue;
            }
            // Row and column are clear; enforce divisibility on the rest.
            let mut offender = None;
            'search: for i in t + 1..m {
                for j in t + 1..n {
                    if !tr.d.get(i, j).is_multiple_of(&p) {
                        offender = Some(i);
                        break 'search;
                    }
                }
            }
            match offender {
                Some(i) => tr.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if tr.d.get(t, t).is_negative() {
            tr.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition {
        u: tr.u,
        d: tr.d,
        v: tr.v,
        u_inv: tr.u_inv,
        v_inv: tr.v_inv,
        rank: t,
    }
}

/// A matrix together with its Smith decomposition, reusable across right-hand sides.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    rows: usize,
    cols: usize,
    snf: SmithDecomposition,
}

impl LinearSolver {
    pub fn new(a: &IntMatrix) -> Self {
        LinearSolver {
            rows: a.rows(),
            cols: a.cols(),
            snf: smith_normal_form(a),
        }
    }

    pub fn snf(&self) -> &SmithDecomposition {
        &self.snf
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Integer solution of `a x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let c = self.snf.u.mul_vec(b);
        let r = self.snf.rank;
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            if i < r {
                let (q, rem) = ci.div_rem(self.snf.d.get(i, i));
                if !rem.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.snf.v.mul_vec(&y)))
    }

    /// Solution of `a x ≡ b (mod p)` for prime `p`, entries reduced into `[0, p)`.
    pub fn solve_mod(&self, b: &[BigInt], p: u64) -> Result<Option<Vec<BigInt>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let pb = BigInt::from(p);
        let c: Vec<BigInt> = self
            .snf
            .u
            .mul_vec(b)
            .into_iter()
            .map(|x| x.mod_floor(&pb))
            .collect();
        let r = self.snf.rank;
        let mut y = vec![BigInt::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            let di = if i < r {
                self.snf.d.get(i, i).mod_floor(&pb)
            } else {
                BigInt::zero()
            };
            if di.is_zero() {
                if !ci.is_zero() {
                    return Ok(None);
                }
            } else {
                let inv = mod_inverse(&di, &pb).expect("p prime");
                y[i] = (ci * inv).mod_floor(&pb);
            }
        }
        Ok(Some(
            self.snf
                .v
                .mul_vec(&y)
                .into_iter()
                .map(|x| x.mod_floor(&pb))
                .collect(),
        ))
    }
}

/// Inverse of `a` modulo `m` when it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Integer solution of `a x = b`, or `None` when no integer solution exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    LinearSolver::new(a).solve(b)
}

/// Columns form a saturated lattice basis of `{x : a x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let idx: Vec<usize> = (snf.rank..a.cols()).collect();
    snf.v.select_columns(&idx)
}

/// `coker a ≅ Z^free ⊕ ⊕ Z/t_i` with `t_i | t_{i+1}` and every `t_i > 1`.
pub fn cokernel_invariants(a: &IntMatrix) -> (usize, Vec<BigInt>) {
    let snf = smith_normal_form(a);
    let free = a.rows() - snf.rank;
    let torsion = snf.diagonal().into_iter().filter(|d| !d.is_one()).collect();
    (free, torsion)
}

/// A basis (as columns) of the lattice spanned by the columns of `a`.
pub fn column_span_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    // a v = u^{-1} d, so the first `rank` columns of u^{-1} d span the image.
    let mut cols = Vec::with_capacity(snf.rank);
    for i in 0..snf.rank {
        let di = snf.d.get(i, i);
        cols.push(
            snf.u_inv
                .column(i)
                .into_iter()
                .map(|x| x * di)
                .collect::<Vec<_>>(),
        );
    }
    IntMatrix::from_columns(a.rows(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::matrix::bigvec;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(&(&s.u * a) * &s.v, s.d);
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn snf_small_examples() {
        let s = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diagonal(), bigvec(&[2, 4]));
        let s = check(&IntMatrix::identity(4));
        assert_eq!(s.d, IntMatrix::identity(4));
        let s = check(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn snf_is_deterministic() {
        let a = IntMatrix::from_rows(&[vec![3, -5, 7], vec![0, 6, -4], vec![9, 1, 2]]);
        let s1 = smith_normal_form(&a);
        let s2 = smith_normal_form(&a);
        assert_eq!(s1.u, s2.u);
        assert_eq!(s1.v, s2.v);
    }

    #[test]
    fn solve_examples() {
        let id = IntMatrix::identity(2);
        assert_eq!(
            solve(&id, &bigvec(&[7, -2])).unwrap(),
            Some(bigvec(&[7, -2]))
        );
        let two = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve(&two, &bigvec(&[3])).unwrap(), None);
        let a = IntMatrix::from_rows(&[vec![2, 3]]);
        let x = solve(&a, &bigvec(&[1])).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x), bigvec(&[1]));
        assert!(solve(&a, &bigvec(&[1, 2])).is_err());
    }

    #[test]
    fn solve_matches_extended_euclid() {
        // 2·(−1) + 3·1 = 1 is the extended-Euclid certificate; the solver's
        // particular solution must differ from it by a kernel vector (3,−2)t.
        let a = IntMatrix::from_rows(&[vec![2, 3]]);
        let x = solve(&a, &bigvec(&[1])).unwrap().unwrap();
        let dx0 = &x[0] - BigInt::from(-1);
        let dx1 = &x[1] - BigInt::from(1);
        assert_eq!(&dx0 * BigInt::from(-2), &dx1 * BigInt::from(3));
        assert_eq!(x, bigvec(&[-1, 1]));
    }

    #[test]
    fn kernel_examples() {
        let a = IntMatrix::from_rows(&[vec![1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        assert!(solve(&k, &bigvec(&[1, -1, 0])).unwrap().is_some());
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        assert_eq!(kernel_basis(&IntMatrix::zeros(2, 2)).cols(), 2);
    }

    #[test]
    fn cokernel_examples() {
        let (f, t) = cokernel_invariants(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!((f, t), (0, bigvec(&[2, 4])));
        let (f, t) = cokernel_invariants(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!((f, t), (1, vec![]));
        let (f, t) = cokernel_invariants(&IntMatrix::diagonal(&[1, 3]));
        assert_eq!((f, t), (0, bigvec(&[3])));
    }

    #[test]
    fn mod_p_solve() {
        let a = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = LinearSolver::new(&a);
        // mod 3: 2x ≡ 1, 3y ≡ 0
        let x = s.solve_mod(&bigvec(&[1, 0]), 3).unwrap().unwrap();
        assert_eq!(x[0], BigInt::from(2));
        assert!(s.solve_mod(&bigvec(&[0, 1]), 3).unwrap().is_none());
    }

    #[test]
    fn span_basis() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 6], vec![0, 0, 0]]);
        let b = column_span_basis(&a);
        assert_eq!(b.cols(), 1);
        assert!(solve(&b, &bigvec(&[4, 0])).unwrap().is_some());
        assert!(solve(&b, &bigvec(&[1, 0])).unwrap().is_none());
    }
}
