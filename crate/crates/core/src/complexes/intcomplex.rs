use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlinalg::{Coeff, IntMatrix, Subquotient};

/// A window of a chain complex of free abelian groups, laid out like
/// [`super::ZGComplexWindow`].
#[derive(Clone, Debug)]
pub struct IntComplex {
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
    lower_closed: bool,
    upper_closed: bool,
}

/// Invariant-factor summary of a homology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl GroupSummary {
    pub fn of(sq: &Subquotient) -> Self {
        GroupSummary {
            free_rank: sq.free_rank(),
            torsion: sq.torsion().iter().map(BigInt::to_string).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `0`, `Z`, `Z/2 ⊕ Z/4`, `Z^2 ⊕ Z/3`, ...
    pub fn pretty(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

impl IntComplex {
    pub fn new(
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<IntMatrix>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(Error::DimensionMismatch(
                "differential count must be one less than degree count".into(),
            ));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "d_{} has the wrong shape",
                    lo + i as i64 + 1
                )));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].checked_mul(&diffs[i])?.is_zero() {
                return Err(Error::NotAComplex(lo + i as i64 + 1));
            }
        }
        Ok(Self::new_unchecked(
            lo,
            ranks,
            diffs,
            lower_closed,
            upper_closed,
        ))
    }

    pub(crate) fn new_unchecked(
        lo: i64,
        ranks: Vec<usize>,
        diffs: Vec<IntMatrix>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Self {
        IntComplex {
            lo,
            ranks,
            diffs,
            lower_closed,
            upper_closed,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, n: i64) -> Option<usize> {
        if n < self.lo {
            return self.lower_closed.then_some(0);
        }
        if n > self.hi() {
            return self.upper_closed.then_some(0);
        }
        Some(self.ranks[(n - self.lo) as usize])
    }

    pub fn diff(&self, n: i64) -> Option<&IntMatrix> {
        if n > self.lo && n <= self.hi() {
            Some(&self.diffs[(n - self.lo - 1) as usize])
        } else {
            None
        }
    }

    /// `d_n`, including zero maps past closed ends.
    pub fn diff_or_zero(&self, n: i64) -> Option<IntMatrix> {
        if let Some(d) = self.diff(n) {
            return Some(d.clone());
        }
        Some(IntMatrix::zeros(self.rank(n - 1)?, self.rank(n)?))
    }

    /// `H_n` with the given coefficients, as `ker d_n / im d_{n+1}` on the
    /// integer chains (mod-`p` homology is presented over `Z` as well).
    pub fn homology(&self, n: i64, coeff: Coeff) -> Result<Subquotient> {
        let out = self.diff_or_zero(n).ok_or_else(|| {
            Error::WindowInsufficient(format!("outgoing differential at degree {n} unknown"))
        })?;
        let inc = self.diff_or_zero(n + 1).ok_or_else(|| {
            Error::WindowInsufficient(format!("incoming differential at degree {n} unknown"))
        })?;
        Subquotient::of(&out, &inc, coeff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_homology() {
        // Z --0--> Z, closed both ends.
        let c = IntComplex::new(0, vec![1, 1], vec![IntMatrix::zeros(1, 1)], true, true).unwrap();
        assert_eq!(
            GroupSummary::of(&c.homology(0, Coeff::Integers).unwrap()).pretty(),
            "Z"
        );
        assert_eq!(
            GroupSummary::of(&c.homology(1, Coeff::Integers).unwrap()).pretty(),
            "Z"
        );
        assert!(c.homology(2, Coeff::Integers).unwrap().is_trivial());
    }

    #[test]
    fn rp2_cellular() {
        // Z <-0- Z <-2- Z
        let c = IntComplex::new(
            0,
            vec![1, 1, 1],
            vec![IntMatrix::zeros(1, 1), IntMatrix::from_rows(&[vec![2]])],
            true,
            true,
        )
        .unwrap();
        assert_eq!(
            GroupSummary::of(&c.homology(1, Coeff::Integers).unwrap()).pretty(),
            "Z/2"
        );
        assert!(c.homology(2, Coeff::Integers).unwrap().is_trivial());
        let h2 = c.homology(2, Coeff::Mod(2)).unwrap();
        assert_eq!(h2.invariant_factors(), &[BigInt::from(2)]);
        let h1 = c.homology(1, Coeff::Mod(3)).unwrap();
        assert!(h1.is_trivial());
    }

    #[test]
    fn open_window_refuses() {
        let c = IntComplex::new(0, vec![1, 1], vec![IntMatrix::zeros(1, 1)], false, false).unwrap();
        assert!(c.homology(0, Coeff::Integers).is_err());
        assert!(c.homology(1, Coeff::Integers).is_err());
    }

    #[test]
    fn rejects_non_complex() {
        let one = IntMatrix::from_rows(&[vec![1]]);
        assert!(matches!(
            IntComplex::new(0, vec![1, 1, 1], vec![one.clone(), one], true, true),
            Err(Error::NotAComplex(2))
        ));
    }
}
