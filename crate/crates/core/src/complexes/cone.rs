use std::sync::Arc;

use num_bigint::BigInt;

use super::chainmap::ChainMapWindow;
use super::window::ZGComplexWindow;
use crate::error::{Error, Result};
use crate::exactlinalg::{Coeff, IntMatrix, Subquotient};
use crate::groupalg::ZGMatrix;

/// Mapping cone of `f : A → B`, `cone_n = A_{n−1} ⊕ B_n` with
/// `d(a, b) = (−da, f(a) + db)`. The `A` part comes first in each degree.
#[derive(Clone, Debug)]
pub struct ConeWithBoundary {
    pub cone: Arc<ZGComplexWindow>,
    pub map: ChainMapWindow,
}

/// Builds the cone over the longest run of degrees where both complexes
/// and the map are known.
pub fn cone_with_boundary(f: &ChainMapWindow) -> Result<ConeWithBoundary> {
    if f.shift() != 0 {
        return Err(Error::ShiftNonzero(f.shift()));
    }
    let src = f.source();
    let dst = f.target();
    let group = src.group().clone();
    let defined = |n: i64| -> bool {
        match (src.rank(n - 1), dst.rank(n)) {
            (Some(a), Some(_)) => a == 0 || f.component(n - 1).is_some(),
            _ => false,
        }
    };
    let natural_lo = (src.lo() + 1).min(dst.lo());
    let natural_hi = (src.hi() + 1).max(dst.hi());
    let mut best: Option<(i64, i64)> = None;
    let mut n = natural_lo;
    while n <= natural_hi {
        if defined(n) {
            let start = n;
            while n < natural_hi && defined(n + 1) {
                n += 1;
            }
            if best.is_none_or(|(a, b)| n - start > b - a) {
                best = Some((start, n));
            }
        }
        n += 1;
    }
    let Some((lo, hi)) = best else {
        return Err(Error::WindowInsufficient(
            "mapping cone has an empty window".into(),
        ));
    };
    let split = |n: i64| {
        (
            src.rank(n - 1).expect("defined"),
            dst.rank(n).expect("defined"),
        )
    };
    let ranks: Vec<usize> = (lo..=hi)
        .map(|n| {
            let (a, b) = split(n);
            a + b
        })
        .collect();
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let (a, b) = split(n);
        let (a0, b0) = split(n - 1);
        let mut d = ZGMatrix::zeros(group.clone(), a0 + b0, a + b);
        if a > 0 {
            if a0 > 0 {
                let da = src.diff_or_zero(n - 1).ok_or_else(|| {
                    Error::WindowInsufficient(format!("source d_{} unknown", n - 1))
                })?;
                d.put_block(0, 0, &da.neg());
            }
            if b0 > 0 {
                d.put_block(a0, 0, f.component(n - 1).expect("defined"));
            }
        }
        if b > 0 && b0 > 0 {
            let db = dst
                .diff_or_zero(n)
                .ok_or_else(|| Error::WindowInsufficient(format!("target d_{n} unknown")))?;
            d.put_block(a0, a, &db);
        }
        diffs.push(d);
    }
    let lower_closed = src.lower_closed() && dst.lower_closed() && lo <= natural_lo;
    let upper_closed = src.upper_closed() && dst.upper_closed() && hi >= natural_hi;
    let cone = ZGComplexWindow::new(group, lo, ranks, diffs, lower_closed, upper_closed)?;
    Ok(ConeWithBoundary {
        cone: Arc::new(cone),
        map: f.clone(),
    })
}

impl ConeWithBoundary {
    fn source_rank(&self, n: i64) -> Result<usize> {
        self.map
            .source()
            .rank(n - 1)
            .ok_or_else(|| Error::WindowInsufficient(format!("degree {n} outside the cone")))
    }

    /// `(a, b) ↦ a` on coinvariant chains of degree `n`.
    pub fn boundary_chain(&self, n: i64, chain: &[BigInt]) -> Result<Vec<BigInt>> {
        let a = self.source_rank(n)?;
        if chain.len() != self.cone.rank(n).unwrap_or(usize::MAX) {
            return Err(Error::DimensionMismatch("cone chain length".into()));
        }
        Ok(chain[..a].to_vec())
    }

    /// `b ↦ (0, b)` on coinvariant chains of degree `n`.
    pub fn include_target(&self, n: i64, chain: &[BigInt]) -> Result<Vec<BigInt>> {
        let a = self.source_rank(n)?;
        let mut out = vec![BigInt::from(0); a];
        out.extend_from_slice(chain);
        Ok(out)
    }

    /// Connecting map `H_n(cone) → H_{n−1}(A)` in generator coordinates.
    pub fn boundary(&self, n: i64, coeff: Coeff) -> Result<(Subquotient, Subquotient, IntMatrix)> {
        let hc = self.cone.coinvariants().homology(n, coeff)?;
        let ha = self.map.source().coinvariants().homology(n - 1, coeff)?;
        let mut cols = Vec::new();
        for i in 0..hc.num_generators() {
            let a = self.boundary_chain(n, &hc.generator(i))?;
            cols.push(ha.coordinates(&a)?);
        }
        let m = IntMatrix::from_columns(ha.num_generators(), &cols);
        Ok((hc, ha, m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::{FiniteGroup, GroupRingElement};
    use std::collections::BTreeMap;

    fn periodic(m: usize, top: i64) -> Arc<ZGComplexWindow> {
        let g = Arc::new(FiniteGroup::cyclic(m).unwrap());
        let t = GroupRingElement::from_terms(g.clone(), &[(1, 1), (0, -1)]);
        let n = GroupRingElement::norm(g.clone());
        let diffs = (1..=top)
            .map(|k| {
                ZGMatrix::from_entries(
                    g.clone(),
                    1,
                    1,
                    vec![if k % 2 == 1 { t.clone() } else { n.clone() }],
                )
                .unwrap()
            })
            .collect();
        Arc::new(ZGComplexWindow::new(g, 0, vec![1; top as usize + 1], diffs, true, true).unwrap())
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = periodic(3, 5);
        let id = ChainMapWindow::identity(c.clone(), 0, 5).unwrap();
        let cone = cone_with_boundary(&id).unwrap();
        let h = cone.cone.coinvariants();
        for n in cone.cone.lo()..=cone.cone.hi() {
            assert!(
                h.homology(n, Coeff::Integers).unwrap().is_trivial(),
                "degree {n}"
            );
        }
    }

    #[test]
    fn cone_of_zero_splits() {
        let c = periodic(2, 3);
        let z = ChainMapWindow::zero(c.clone(), c.clone(), 0, 0, 3).unwrap();
        let cone = cone_with_boundary(&z).unwrap();
        let h = cone.cone.coinvariants();
        // H_n(cone) = H_n(C) ⊕ H_{n−1}(C)
        let h4 = h.homology(4, Coeff::Integers).unwrap();
        assert_eq!(h4.free_rank(), 1);
        // The connecting map of the triangle is f_* = 0, so the cone's
        // projection onto the shifted source is onto.
        let (_, ha, b) = cone.boundary(2, Coeff::Integers).unwrap();
        assert_eq!(ha.torsion(), vec![BigInt::from(2)]);
        assert!(b.entries().iter().any(|x| x % 2 != BigInt::from(0)));
        let (_, _, b) = cone.boundary(4, Coeff::Integers).unwrap();
        assert_eq!(b.rows(), 1);
    }

    #[test]
    fn nonzero_shift_rejected() {
        let c = periodic(2, 3);
        let mut comps = BTreeMap::new();
        comps.insert(0, ZGMatrix::zeros(c.group().clone(), 1, 1));
        let f = ChainMapWindow::new(c.clone(), c, 1, comps, None).unwrap();
        assert!(matches!(
            cone_with_boundary(&f),
            Err(Error::ShiftNonzero(1))
        ));
    }
}
