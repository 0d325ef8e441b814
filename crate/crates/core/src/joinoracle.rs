//! Geometric cross-check for cyclic groups. Free `Z/m`-spheres give lens
//! space chain models; the join of two of them is modelled as the mapping
//! cone of `(i, −j) : W → S ⊕ S'`, where `W = S ⊗ S'` with the diagonal
//! action models `(S × S')/G`. Pushing the top class of the cone into a
//! resolution gives the join product in `H_*(BZ/m)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complexes::{
    cone_with_boundary, tensor_diagonal, ChainMapWindow, ConeWithBoundary, TensorComplex,
    ZGComplexWindow,
};
use crate::error::{Error, Result};
use crate::exactlinalg::{Coeff, Subquotient};
use crate::groupalg::{FiniteGroup, Structure, ZGMatrix};
use crate::resolutions::{comparison_map, periodic_resolution, periodic_window, Resolution};

/// Free `Z/m`-sphere `S^{2k+1}`: rank 1 in degrees `0..=2k+1`, closed at both ends.
#[derive(Clone, Debug)]
pub struct SphereModel {
    pub m: usize,
    pub k: usize,
    pub complex: Arc<ZGComplexWindow>,
}

impl SphereModel {
    pub fn top_degree(&self) -> i64 {
        2 * self.k as i64 + 1
    }
}

pub fn lens_complex(group: Arc<FiniteGroup>, k: usize) -> Result<SphereModel> {
    let m = group.order();
    if m < 2 || !matches!(group.structure(), Structure::Cyclic(_)) {
        return Err(Error::InvalidTable(
            "lens models need a nontrivial cyclic group".into(),
        ));
    }
    let complex = periodic_window(group, 2 * k as i64 + 1, true)?;
    Ok(SphereModel {
        m,
        k,
        complex: Arc::new(complex),
    })
}

/// `(S^{2k+1} × S^{2l+1})/G` with its two projections and fundamental cycle.
#[derive(Clone, Debug)]
pub struct PullbackModel {
    pub left: SphereModel,
    pub right: SphereModel,
    pub tensor: TensorComplex,
    /// `id ⊗ ε' : W → S`
    pub to_left: ChainMapWindow,
    /// `ε ⊗ id : W → S'`
    pub to_right: ChainMapWindow,
    /// Coinvariant chain in the top degree: the top cells summed over the group.
    pub fundamental: Vec<BigInt>,
}

impl PullbackModel {
    pub fn top_degree(&self) -> i64 {
        self.left.top_degree() + self.right.top_degree()
    }
}

pub fn pullback_model(group: Arc<FiniteGroup>, k: usize, l: usize) -> Result<PullbackModel> {
    let left = lens_complex(group.clone(), k)?;
    let right = lens_complex(group.clone(), l)?;
    let tensor = tensor_diagonal(left.complex.clone(), right.complex.clone())?;
    let w = tensor.complex.clone();
    let m = group.order();
    let id = group.identity();
    let one = BigInt::one();

    let mut left_comps = BTreeMap::new();
    let mut right_comps = BTreeMap::new();
    for n in w.lo()..=w.hi() {
        let rw = w.rank(n).expect("inside");
        let mut a = ZGMatrix::zeros(group.clone(), left.complex.rank(n).unwrap_or(0), rw);
        if n <= left.top_degree() {
            for h in 0..m {
                let col = tensor.generator_index(n, 0, 0, 0, h).expect("block (n, 0)");
                a.add_term(0, col, id, &one);
            }
        }
        let mut b = ZGMatrix::zeros(group.clone(), right.complex.rank(n).unwrap_or(0), rw);
        if n <= right.top_degree() {
            for h in 0..m {
                let col = tensor.generator_index(0, n, 0, 0, h).expect("block (0, n)");
                b.add_term(0, col, h, &one);
            }
        }
        left_comps.insert(n, a);
        right_comps.insert(n, b);
    }
    let to_left = ChainMapWindow::new(w.clone(), left.complex.clone(), 0, left_comps, None)?;
    let to_right = ChainMapWindow::new(w.clone(), right.complex.clone(), 0, right_comps, None)?;

    let top = left.top_degree() + right.top_degree();
    let mut fundamental = vec![BigInt::zero(); w.rank(top).expect("top degree")];
    for h in 0..m {
        let idx = tensor
            .generator_index(left.top_degree(), right.top_degree(), 0, 0, h)
            .expect("top block");
        fundamental[idx] = one.clone();
    }
    Ok(PullbackModel {
        left,
        right,
        tensor,
        to_left,
        to_right,
        fundamental,
    })
}

/// The join model: cone of `(i, −j) : W → S ⊕ S'` and its boundary map.
#[derive(Clone, Debug)]
pub struct JoinModel {
    pub pullback: PullbackModel,
    pub cone: ConeWithBoundary,
}

impl JoinModel {
    /// `2(k+l)+3`
    pub fn top_degree(&self) -> i64 {
        self.pullback.top_degree() + 1
    }

    /// Augmentation on `cone_0 = S_0 ⊕ S'_0`.
    pub fn augmentation(&self) -> Vec<BigInt> {
        vec![BigInt::one(); self.cone.cone.rank(0).unwrap_or(0)]
    }
}

pub fn join_cone_model(group: Arc<FiniteGroup>, k: usize, l: usize) -> Result<JoinModel> {
    let pullback = pullback_model(group.clone(), k, l)?;
    let s = &pullback.left.complex;
    let t = &pullback.right.complex;
    let sum = Arc::new(s.direct_sum(t)?);
    let w = pullback.tensor.complex.clone();
    let mut comps = BTreeMap::new();
    for n in w.lo()..=w.hi() {
        let i = pullback.to_left.component(n).expect("all degrees");
        let j = pullback.to_right.component(n).expect("all degrees");
        let mut f = ZGMatrix::zeros(
            group.clone(),
            i.rows() + j.rows(),
            w.rank(n).expect("inside"),
        );
        f.put_block(0, 0, i);
        f.put_block(i.rows(), 0, &j.neg());
        comps.insert(n, f);
    }
    let map = ChainMapWindow::new(w, sum, 0, comps, None)?;
    let cone = cone_with_boundary(&map)?;
    Ok(JoinModel { pullback, cone })
}

/// Result of the boundary check `∂[top] = ±[W]`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryCheck {
    pub m: usize,
    pub k: usize,
    pub l: usize,
    /// Coordinate of the fundamental cycle in `H_top(W)`.
    pub fundamental: String,
    /// Coordinate of `∂` of the cone's top generator.
    pub boundary: String,
    pub pass: bool,
}

pub fn check_boundary_relation(
    group: Arc<FiniteGroup>,
    k: usize,
    l: usize,
) -> Result<BoundaryCheck> {
    let model = join_cone_model(group.clone(), k, l)?;
    let top = model.top_degree();
    let (hc, hw, b) = model.cone.boundary(top, Coeff::Integers)?;
    let fund = hw.coordinates(&model.pullback.fundamental)?;
    let pass = hc.free_rank() == 1
        && hc.num_generators() == 1
        && hw.num_generators() == 1
        && hw.free_rank() == 1
        && fund[0].abs().is_one()
        && (b.get(0, 0) == &fund[0] || b.get(0, 0) == &-fund[0].clone());
    Ok(BoundaryCheck {
        m: group.order(),
        k,
        l,
        fundamental: fund.first().map(BigInt::to_string).unwrap_or_default(),
        boundary: if b.rows() > 0 && b.cols() > 0 {
            b.get(0, 0).to_string()
        } else {
            "none".into()
        },
        pass,
    })
}

/// The cone's top class, oriented so that its boundary is `+[W]`, as a
/// coinvariant chain.
pub fn oriented_top_class(model: &JoinModel) -> Result<Vec<BigInt>> {
    let top = model.top_degree();
    let (hc, hw, _) = model.cone.boundary(top, Coeff::Integers)?;
    if hc.num_generators() != 1 {
        return Err(Error::NotACycle("join cone has no single top class".into()));
    }
    let z = hc.generator(0);
    let dz = model.cone.boundary_chain(top, &z)?;
    let c = hw.coordinates(&dz)?;
    let f = hw.coordinates(&model.pullback.fundamental)?;
    if c == f {
        Ok(z)
    } else if c.iter().zip(&f).all(|(a, b)| a == &-b.clone()) {
        Ok(z.into_iter().map(|x| -x).collect())
    } else {
        Err(Error::NotACycle(
            "cone boundary is not ± the fundamental class".into(),
        ))
    }
}

/// Image of a closed model's coinvariant cycle in `H_n(BG)` coordinates,
/// through the comparison map into `R`.
pub fn pushforward_to_bg(
    model: Arc<ZGComplexWindow>,
    augmentation: &[BigInt],
    resolution: &Resolution,
    degree: i64,
    chain: &[BigInt],
) -> Result<Vec<BigInt>> {
    let f = comparison_map(model, augmentation, resolution, degree)?;
    f.apply_coinvariant(degree, chain)
}

/// `a_{2k+1}`: the lens model's top cell pushed into `R`, as a chain.
pub fn lens_generator_chain(resolution: &Resolution, k: usize) -> Result<Vec<BigInt>> {
    let s = lens_complex(resolution.group().clone(), k)?;
    pushforward_to_bg(
        s.complex.clone(),
        &[BigInt::one()],
        resolution,
        s.top_degree(),
        &[BigInt::one()],
    )
}

/// Coefficient `c` with `x = c·a` in a cyclic group `H` generated by `a`,
/// as the representative of least absolute value (ties go positive).
pub fn cyclic_ratio(h: &Subquotient, x: &[BigInt], a: &[BigInt]) -> Result<BigInt> {
    if h.num_generators() != 1 {
        return Err(Error::DimensionMismatch(
            "expected a cyclic homology group".into(),
        ));
    }
    let order = h.invariant_factors()[0].clone();
    let xc = h.coordinates(x)?[0].clone();
    let ac = h.coordinates(a)?[0].clone();
    if order.is_zero() {
        if ac.abs().is_one() {
            return Ok(xc * ac);
        }
        return Err(Error::NotACycle("reference class does not generate".into()));
    }
    let inv = crate::exactlinalg::mod_inverse(&ac, &order)
        .ok_or_else(|| Error::NotACycle("reference class does not generate".into()))?;
    Ok(symmetric((xc * inv).mod_floor(&order), &order))
}

pub(crate) fn symmetric(c: BigInt, m: &BigInt) -> BigInt {
    let c = c.mod_floor(m);
    if &c * 2 > *m {
        c - m
    } else {
        c
    }
}

/// Join product data for one grid point.
#[derive(Clone, Debug, Serialize)]
pub struct JoinProduct {
    pub m: usize,
    pub k: usize,
    pub l: usize,
    pub degree: i64,
    /// `q_*[join] = c·a_{2(k+l)+3}`
    pub coefficient: String,
    pub boundary_ok: bool,
}

/// `c` with `q_*[S * S'] = c·a_{2(k+l)+3}`, using `resolution` (or the
/// periodic one of depth `2(k+l)+4` when none is given).
pub fn join_product(
    group: Arc<FiniteGroup>,
    k: usize,
    l: usize,
    resolution: Option<&Resolution>,
) -> Result<(BigInt, JoinProduct)> {
    let model = join_cone_model(group.clone(), k, l)?;
    let top = model.top_degree();
    let owned;
    let r = match resolution {
        Some(r) => r,
        None => {
            owned = periodic_resolution(group.clone(), top as usize + 1)?;
            &owned
        }
    };
    let z = oriented_top_class(&model)?;
    let image = pushforward_to_bg(model.cone.cone.clone(), &model.augmentation(), r, top, &z)?;
    let h = r.homology(top as usize, Coeff::Integers)?;
    let a = lens_generator_chain(r, k + l + 1)?;
    let c = cyclic_ratio(&h, &image, &a)?;
    let check = check_boundary_relation(group.clone(), k, l)?;
    Ok((
        c.clone(),
        JoinProduct {
            m: group.order(),
            k,
            l,
            degree: top,
            coefficient: c.to_string(),
            boundary_ok: check.pass,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::GroupSummary;

    fn cyc(m: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(m).unwrap())
    }

    #[test]
    fn lens_homology() {
        let s = lens_complex(cyc(2), 1).unwrap();
        let c = s.complex.coinvariants();
        let h: Vec<String> = (0..=3)
            .map(|n| GroupSummary::of(&c.homology(n, Coeff::Integers).unwrap()).pretty())
            .collect();
        assert_eq!(h, ["Z", "Z/2", "0", "Z"]);
        let s = lens_complex(cyc(5), 0).unwrap();
        let c = s.complex.coinvariants();
        assert_eq!(
            GroupSummary::of(&c.homology(1, Coeff::Integers).unwrap()).pretty(),
            "Z"
        );
        assert!(
            lens_complex(cyc(3), 2)
                .unwrap()
                .complex
                .verify_exactness(1..=4)
                .unwrap()
                .pass
        );
    }

    #[test]
    fn torus_model() {
        let p = pullback_model(cyc(2), 0, 0).unwrap();
        let c = p.tensor.complex.coinvariants();
        let h2 = c.homology(2, Coeff::Integers).unwrap();
        assert_eq!(h2.free_rank(), 1);
        assert!(h2.contains(&p.fundamental).unwrap());
        assert!(h2.coordinates(&p.fundamental).unwrap()[0].abs().is_one());
    }

    #[test]
    fn rp3_as_join() {
        let j = join_cone_model(cyc(2), 0, 0).unwrap();
        let c = j.cone.cone.coinvariants();
        let h: Vec<String> = (0..=3)
            .map(|n| GroupSummary::of(&c.homology(n, Coeff::Integers).unwrap()).pretty())
            .collect();
        assert_eq!(h, ["Z", "Z/2", "0", "Z"]);
        assert!(check_boundary_relation(cyc(2), 0, 0).unwrap().pass);
    }

    #[test]
    fn join_cone_matches_lens_below_top() {
        let j = join_cone_model(cyc(3), 1, 0).unwrap();
        let c = j.cone.cone.coinvariants();
        let lens = lens_complex(cyc(3), 2).unwrap().complex.coinvariants();
        for n in 0..=5 {
            let a = GroupSummary::of(&c.homology(n, Coeff::Integers).unwrap());
            let b = GroupSummary::of(&lens.homology(n, Coeff::Integers).unwrap());
            assert_eq!(a, b, "degree {n}");
        }
    }

    #[test]
    fn join_products_are_units() {
        for (m, k, l) in [(2, 0, 0), (3, 0, 1), (5, 1, 1)] {
            let (c, rep) = join_product(cyc(m), k, l, None).unwrap();
            assert!(c.abs().is_one(), "{m},{k},{l}: {c}");
            assert!(rep.boundary_ok);
        }
    }

    #[test]
    fn lens_generator_in_periodic_resolution_is_the_cell() {
        let r = periodic_resolution(cyc(4), 8).unwrap();
        assert_eq!(lens_generator_chain(&r, 2).unwrap(), vec![BigInt::one()]);
    }
}
