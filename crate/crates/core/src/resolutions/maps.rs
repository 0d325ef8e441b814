use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::Resolution;
use crate::complexes::{lift_chain_map, ChainMapWindow, ZGComplexWindow};
use crate::error::{Error, Result};
use crate::exactlinalg::{Coeff, IntMatrix, Subquotient};
use crate::groupalg::{GroupHom, Subgroup};

/// Chain map from a bounded-below free complex augmented by `src_aug` into
/// a resolution, lifted from the augmentation-compatible degree-0 seed
/// through degree `to`.
pub fn comparison_map(
    src: Arc<ZGComplexWindow>,
    src_aug: &[BigInt],
    dst: &Resolution,
    to: i64,
) -> Result<ChainMapWindow> {
    if src.lo() != 0 || !src.lower_closed() {
        return Err(Error::DimensionMismatch(
            "comparison source must start in degree 0".into(),
        ));
    }
    let mut seed = BTreeMap::new();
    seed.insert(0, Resolution::augmentation_seed(src_aug, dst)?);
    lift_chain_map(src, dst.complex().clone(), 0, seed, 0, to, None)
}

/// `Bγ` at chain level: the source resolution is pushed forward along `γ`
/// (`ZG' ⊗_ZG P`, which has the same coinvariants as `P`) and compared
/// with the target resolution.
pub fn induced_map(
    hom: &GroupHom,
    src: &Resolution,
    dst: &Resolution,
    to: i64,
) -> Result<ChainMapWindow> {
    if **src.group() != *hom.source || **dst.group() != *hom.target {
        return Err(Error::InvalidHom(
            "resolutions do not match the homomorphism".into(),
        ));
    }
    let pushed = Arc::new(src.complex().push_forward(hom)?);
    comparison_map(pushed, src.augmentation(), dst, to)
}

/// Chain-level transfer `H_*(BG) → H_*(BH)` for `H ⊆ G`.
#[derive(Clone, Debug)]
pub struct TransferMap {
    pub index: usize,
    pub restricted: Arc<ZGComplexWindow>,
    pub comparison: ChainMapWindow,
}

/// Restricts `P_G` to `H`, sends `[e_j]` to the sum of its `[G:H]`
/// coset generators, and compares with `P_H`.
pub fn transfer_map(
    sub: &Subgroup,
    r_g: &Resolution,
    r_h: &Resolution,
    to: i64,
) -> Result<TransferMap> {
    if **r_g.group() != *sub.ambient || **r_h.group() != *sub.group {
        return Err(Error::NotSubgroup(
            "resolutions do not match the subgroup".into(),
        ));
    }
    let index = sub.index();
    let restricted = Arc::new(r_g.complex().restrict(sub)?);
    let aug: Vec<BigInt> = r_g
        .augmentation()
        .iter()
        .flat_map(|e| std::iter::repeat_n(e.clone(), index))
        .collect();
    let comparison = comparison_map(restricted.clone(), &aug, r_h, to)?;
    Ok(TransferMap {
        index,
        restricted,
        comparison,
    })
}

impl TransferMap {
    /// Transfer of a coinvariant chain of `P_G` in degree `n`.
    pub fn apply_chain(&self, n: i64, chain: &[BigInt]) -> Result<Vec<BigInt>> {
        let mut spread = Vec::with_capacity(chain.len() * self.index);
        for c in chain {
            spread.extend(std::iter::repeat_n(c.clone(), self.index));
        }
        self.comparison.apply_coinvariant(n, &spread)
    }

    /// Matrix of the transfer on `H_n` in generator coordinates.
    pub fn on_homology(
        &self,
        n: usize,
        r_g: &Resolution,
        r_h: &Resolution,
        coeff: Coeff,
    ) -> Result<(Subquotient, Subquotient, IntMatrix)> {
        let hg = r_g.homology(n, coeff)?;
        let hh = r_h.homology(n, coeff)?;
        let mut cols = Vec::new();
        for i in 0..hg.num_generators() {
            let img = self.apply_chain(n as i64, &hg.generator(i))?;
            cols.push(hh.coordinates(&img)?);
        }
        let m = IntMatrix::from_columns(hh.num_generators(), &cols);
        Ok((hg, hh, m))
    }
}

/// Matrix of a chain map of resolutions on `H_n` in generator coordinates.
pub fn homology_matrix(
    map: &ChainMapWindow,
    n: usize,
    src: &Resolution,
    dst: &Resolution,
    coeff: Coeff,
) -> Result<IntMatrix> {
    let hs = src.homology(n, coeff)?;
    let hd = dst.homology(n, coeff)?;
    map.on_homology(n as i64, &hs, &hd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::FiniteGroup;
    use crate::resolutions::{generic_resolution, standard_resolution};
    use num_integer::Integer;

    fn cyc(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    fn entry(m: &IntMatrix) -> BigInt {
        assert_eq!((m.rows(), m.cols()), (1, 1));
        m.get(0, 0).clone()
    }

    #[test]
    fn surjection_on_first_homology() {
        let (g4, g2) = (cyc(4), cyc(2));
        let hom = GroupHom::cyclic_projection(g4.clone(), g2.clone()).unwrap();
        let (r4, r2) = (
            standard_resolution(g4, 6).unwrap(),
            standard_resolution(g2, 6).unwrap(),
        );
        let f = induced_map(&hom, &r4, &r2, 5).unwrap();
        let m = homology_matrix(&f, 1, &r4, &r2, Coeff::Integers).unwrap();
        assert!(entry(&m).is_odd());
        let m3 = homology_matrix(&f, 3, &r4, &r2, Coeff::Integers).unwrap();
        assert!(entry(&m3).is_even());
    }

    #[test]
    fn six_onto_three_in_degree_three() {
        let (g6, g3) = (cyc(6), cyc(3));
        let hom = GroupHom::cyclic_projection(g6.clone(), g3.clone()).unwrap();
        let (r6, r3) = (
            standard_resolution(g6, 6).unwrap(),
            standard_resolution(g3, 6).unwrap(),
        );
        let f = induced_map(&hom, &r6, &r3, 5).unwrap();
        let m = homology_matrix(&f, 3, &r6, &r3, Coeff::Integers).unwrap();
        assert_eq!(entry(&m).mod_floor(&BigInt::from(3)), BigInt::from(2));
    }

    #[test]
    fn periodic_and_generic_are_comparable() {
        let g = cyc(4);
        let (a, b) = (
            standard_resolution(g.clone(), 6).unwrap(),
            generic_resolution(g.clone(), 6).unwrap(),
        );
        let f = comparison_map(a.complex().clone(), a.augmentation(), &b, 5).unwrap();
        let h = comparison_map(b.complex().clone(), b.augmentation(), &a, 5).unwrap();
        for n in 1..5 {
            let fm = homology_matrix(&f, n, &a, &b, Coeff::Integers).unwrap();
            let hm = homology_matrix(&h, n, &b, &a, Coeff::Integers).unwrap();
            let round = hm.checked_mul(&fm).unwrap();
            let ha = a.homology(n, Coeff::Integers).unwrap();
            for j in 0..round.cols() {
                let col = ha.reduce(&round.column(j));
                let mut e = vec![BigInt::from(0); round.rows()];
                e[j] = BigInt::from(1);
                assert_eq!(col, ha.reduce(&e), "degree {n}");
            }
        }
    }

    #[test]
    fn transfer_degree_zero_and_one() {
        let g4 = cyc(4);
        let g2 = cyc(2);
        let sub = Subgroup::new(g4.clone(), &[0, 2]).unwrap();
        assert_eq!(*sub.group, *g2);
        let (r4, r2) = (
            standard_resolution(g4, 6).unwrap(),
            standard_resolution(sub.group.clone(), 6).unwrap(),
        );
        let t = transfer_map(&sub, &r4, &r2, 5).unwrap();
        let (_, _, m0) = t.on_homology(0, &r4, &r2, Coeff::Integers).unwrap();
        assert_eq!(entry(&m0), BigInt::from(2));
        let (_, _, m1) = t.on_homology(1, &r4, &r2, Coeff::Integers).unwrap();
        assert!(entry(&m1).is_odd());
    }
}
