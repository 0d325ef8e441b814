use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::intcomplex::IntComplex;
use crate::error::{Error, Result};
use crate::exactlinalg::LinearSolver;
use crate::groupalg::{FiniteGroup, GroupHom, Subgroup, ZGMatrix};

/// A bounded window `[lo, hi]` of a chain complex of finitely generated free
/// `ZG`-modules, with `d_n : C_n → C_{n−1}` stored for `n ∈ (lo, hi]`.
///
/// A closed end means the complex is genuinely zero past it; an open end
/// means the window was truncated and nothing is known beyond it.
pub struct ZGComplexWindow {
    group: Arc<FiniteGroup>,
    lo: i64,
    hi: i64,
    lower_closed: bool,
    upper_closed: bool,
    ranks: Vec<usize>,
    diffs: Vec<ZGMatrix>,
    solvers: Vec<OnceLock<LinearSolver>>,
    dual_solvers: Vec<OnceLock<LinearSolver>>,
}

impl Clone for ZGComplexWindow {
    fn clone(&self) -> Self {
        Self::assemble(
            self.group.clone(),
            self.lo,
            self.ranks.clone(),
            self.diffs.clone(),
            self.lower_closed,
            self.upper_closed,
        )
    }
}

impl std::fmt::Debug for ZGComplexWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ZGComplexWindow({}, {}{}, {}{}, ranks {:?})",
            self.group.name(),
            if self.lower_closed { "[" } else { "(" },
            self.lo,
            self.hi,
            if self.upper_closed { "]" } else { ")" },
            self.ranks
        )
    }
}

/// Per-degree outcome of an exactness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeExactness {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub degrees: Vec<DegreeExactness>,
    pub pass: bool,
}

impl ZGComplexWindow {
    /// `ranks[i]` is the rank in degree `lo + i`; `diffs[i]` is `d_{lo+i+1}`.
    /// Rejects shape mismatches and `d ∘ d ≠ 0`.
    pub fn new(
        group: Arc<FiniteGroup>,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<ZGMatrix>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::DimensionMismatch(
                "complex window needs at least one degree".into(),
            ));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} differentials for {} degrees",
                diffs.len(),
                ranks.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if **d.group() != *group {
                return Err(Error::DimensionMismatch(
                    "differential over a different group".into(),
                ));
            }
            if d.cols() != ranks[i + 1] || d.rows() != ranks[i] {
                return Err(Error::DimensionMismatch(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    lo + i as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        for i in 1..diffs.len() {
            let dd = ZGMatrix::compose(&diffs[i - 1], &diffs[i])?;
            if !dd.is_zero() {
                return Err(Error::NotAComplex(lo + i as i64 + 1));
            }
        }
        Ok(Self::assemble(
            group,
            lo,
            ranks,
            diffs,
            lower_closed,
            upper_closed,
        ))
    }

    fn assemble(
        group: Arc<FiniteGroup>,
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<ZGMatrix>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Self {
        let hi = lo + ranks.len() as i64 - 1;
        let k = diffs.len();
        ZGComplexWindow {
            group,
            lo,
            hi,
            lower_closed,
            upper_closed,
            ranks,
            diffs,
            solvers: (0..k).map(|_| OnceLock::new()).collect(),
            dual_solvers: (0..k).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    /// Rank in degree `n`; `Some(0)` past a closed end, `None` past an open one.
    pub fn rank(&self, n: i64) -> Option<usize> {
        if n < self.lo {
            return self.lower_closed.then_some(0);
        }
        if n > self.hi {
            return self.upper_closed.then_some(0);
        }
        Some(self.ranks[(n - self.lo) as usize])
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Stored differential `d_n` for `n ∈ (lo, hi]`.
    pub fn diff(&self, n: i64) -> Option<&ZGMatrix> {
        if n > self.lo && n <= self.hi {
            Some(&self.diffs[(n - self.lo - 1) as usize])
        } else {
            None
        }
    }

    /// `d_n`, including the zero maps past closed ends.
    pub fn diff_or_zero(&self, n: i64) -> Option<ZGMatrix> {
        if let Some(d) = self.diff(n) {
            return Some(d.clone());
        }
        let src = self.rank(n)?;
        let dst = self.rank(n - 1)?;
        Some(ZGMatrix::zeros(self.group.clone(), dst, src))
    }

    /// Cached solver for `realize(d_n)`.
    pub fn solver(&self, n: i64) -> Option<&LinearSolver> {
        let d = self.diff(n)?;
        let i = (n - self.lo - 1) as usize;
        Some(self.solvers[i].get_or_init(|| LinearSolver::new(&d.realize())))
    }

    /// Cached solver for `realize(dual(d_n))`.
    pub fn dual_solver(&self, n: i64) -> Option<&LinearSolver> {
        let d = self.diff(n)?;
        let i = (n - self.lo - 1) as usize;
        Some(self.dual_solvers[i].get_or_init(|| LinearSolver::new(&d.dual().realize())))
    }

    /// `Z ⊗_ZG C`: ranks kept, each entry replaced by its augmentation.
    pub fn coinvariants(&self) -> IntComplex {
        IntComplex::new_unchecked(
            self.lo,
            self.ranks.clone(),
            self.diffs.iter().map(ZGMatrix::augment).collect(),
            self.lower_closed,
            self.upper_closed,
        )
    }

    /// The underlying complex of free abelian groups.
    pub fn realize(&self) -> IntComplex {
        let n = self.group.order();
        IntComplex::new_unchecked(
            self.lo,
            self.ranks.iter().map(|r| r * n).collect(),
            self.diffs.iter().map(ZGMatrix::realize).collect(),
            self.lower_closed,
            self.upper_closed,
        )
    }

    /// Reports `ker d_n / im d_{n+1}` over `Z` (forgetting `G`) for each `n`
    /// in `range`, which must lie where both differentials are known.
    pub fn verify_exactness(
        &self,
        range: std::ops::RangeInclusive<i64>,
    ) -> Result<ExactnessReport> {
        let order = self.group.order();
        let mut degrees = Vec::new();
        for n in range {
            let dim = self
                .rank(n)
                .ok_or_else(|| Error::WindowInsufficient(format!("degree {n} outside window")))?
                * order;
            let out_rank = match self.solver(n) {
                Some(s) => s.snf().rank(),
                None if n == self.lo && self.lower_closed => 0,
                None if self.rank(n) == Some(0) => 0,
                None => return Err(Error::WindowInsufficient(format!("d_{n} unknown"))),
            };
            let (in_rank, torsion) = match self.solver(n + 1) {
                Some(s) => {
                    let snf = s.snf();
                    (
                        snf.rank(),
                        snf.diagonal()
                            .into_iter()
                            .filter(|d| !d.is_one())
                            .collect::<Vec<_>>(),
                    )
                }
                None if n == self.hi && self.upper_closed => (0, vec![]),
                None if self.rank(n) == Some(0) => (0, vec![]),
                None => return Err(Error::WindowInsufficient(format!("d_{} unknown", n + 1))),
            };
            degrees.push(DegreeExactness {
                degree: n,
                free_rank: dim - out_rank - in_rank,
                torsion: torsion.iter().map(BigInt::to_string).collect(),
            });
        }
        let pass = degrees
            .iter()
            .all(|d| d.free_rank == 0 && d.torsion.is_empty());
        Ok(ExactnessReport { degrees, pass })
    }

    /// `C[k]_n = C_{n−k}` with differential `(−1)^k d`.
    pub fn shifted(&self, k: i64) -> ZGComplexWindow {
        let sign = if k.rem_euclid(2) == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        Self::assemble(
            self.group.clone(),
            self.lo + k,
            self.ranks.clone(),
            self.diffs.iter().map(|d| d.scale(&sign)).collect(),
            self.lower_closed,
            self.upper_closed,
        )
    }

    /// Degreewise direct sum over the common window; generators of `self`
    /// come first in each degree.
    pub fn direct_sum(&self, other: &ZGComplexWindow) -> Result<ZGComplexWindow> {
        if *self.group != *other.group {
            return Err(Error::DimensionMismatch(
                "direct sum over different groups".into(),
            ));
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi.max(other.hi);
        let mut ranks = Vec::new();
        let mut first = None;
        for n in lo..=hi {
            match (self.rank(n), other.rank(n)) {
                (Some(a), Some(b)) => {
                    first.get_or_insert(n);
                    ranks.push((n, a, b));
                }
                _ if first.is_none() => continue,
                _ => break,
            }
        }
        let Some(start) = first else {
            return Err(Error::WindowInsufficient(
                "direct sum has an empty window".into(),
            ));
        };
        let mut diffs = Vec::new();
        for w in ranks.windows(2) {
            let (n, a, b) = w[1];
            let (_, a0, b0) = w[0];
            let mut d = ZGMatrix::zeros(self.group.clone(), a0 + b0, a + b);
            if a > 0 && a0 > 0 {
                d.put_block(0, 0, &self.diff_or_zero(n).expect("known ranks"));
            }
            if b > 0 && b0 > 0 {
                d.put_block(a0, a, &other.diff_or_zero(n).expect("known ranks"));
            }
            diffs.push(d);
        }
        let end = ranks.last().expect("nonempty").0;
        let lower_closed = self.lower_closed && other.lower_closed && start == lo;
        let upper_closed = self.upper_closed && other.upper_closed && end == hi;
        ZGComplexWindow::new(
            self.group.clone(),
            start,
            ranks.iter().map(|&(_, a, b)| a + b).collect(),
            diffs,
            lower_closed,
            upper_closed,
        )
    }

    /// Extension of scalars along `γ : G → G'` (`ZG' ⊗_ZG C`).
    pub fn push_forward(&self, hom: &GroupHom) -> Result<ZGComplexWindow> {
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.push_forward(hom))
            .collect::<Result<Vec<_>>>()?;
        ZGComplexWindow::new(
            hom.target.clone(),
            self.lo,
            self.ranks.clone(),
            diffs,
            self.lower_closed,
            self.upper_closed,
        )
    }

    /// Restriction of scalars to a subgroup; ranks grow by the index.
    pub fn restrict(&self, sub: &Subgroup) -> Result<ZGComplexWindow> {
        let idx = sub.index();
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.restrict(sub))
            .collect::<Result<Vec<_>>>()?;
        ZGComplexWindow::new(
            sub.group.clone(),
            self.lo,
            self.ranks.iter().map(|r| r * idx).collect(),
            diffs,
            self.lower_closed,
            self.upper_closed,
        )
    }

    /// Truncates to `[lo, hi]` (open at any cut end).
    pub fn truncate(&self, lo: i64, hi: i64) -> Result<ZGComplexWindow> {
        if lo < self.lo || hi > self.hi || lo > hi {
            return Err(Error::WindowInsufficient(format!(
                "[{lo}, {hi}] not inside [{}, {}]",
                self.lo, self.hi
            )));
        }
        let a = (lo - self.lo) as usize;
        let b = (hi - self.lo) as usize;
        Ok(Self::assemble(
            self.group.clone(),
            lo,
            self.ranks[a..=b].to_vec(),
            self.diffs[a..b].to_vec(),
            self.lower_closed && lo == self.lo,
            self.upper_closed && hi == self.hi,
        ))
    }

    /// Coinvariant chain `Σ c_i [e_i]` in degree `n` is a cycle of the
    /// realized complex iff this returns true (used by tests).
    pub fn is_coinvariant_cycle(&self, n: i64, chain: &[BigInt]) -> bool {
        match self.diff(n) {
            Some(d) => d.augment().mul_vec(chain).iter().all(Zero::is_zero),
            None => self.lower_closed && n == self.lo,
        }
    }
}
