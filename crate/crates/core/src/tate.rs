//! Tate cohomology of a complete resolution with trivial coefficients, cup
//! products by composing degree-shift chain maps, and the identification
//! `H_k(BG) ≅ Ĥ^{−k−1}(G)` for `k ≥ 1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::complexes::{lift_chain_map, ChainMapWindow, GroupSummary};
use crate::error::{Error, Result};
use crate::exactlinalg::{Coeff, IntMatrix, Subquotient};
use crate::groupalg::ZGMatrix;
use crate::resolutions::CompleteResolution;

/// `Ĥ^n(G; coeff)` with basis cocycles.
#[derive(Clone, Debug)]
pub struct TateGroup {
    pub degree: i64,
    pub coeff: Coeff,
    pub group: Subquotient,
}

impl TateGroup {
    pub fn summary(&self) -> GroupSummary {
        GroupSummary::of(&self.group)
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        self.group.invariant_factors()
    }

    /// Basis cocycle `i` (values on the generators of `X_n`).
    pub fn basis_cocycle(&self, i: usize) -> Vec<BigInt> {
        self.group.generator(i)
    }

    pub fn rank(&self) -> usize {
        self.group.num_generators()
    }

    pub fn coordinates(&self, cocycle: &[BigInt]) -> Result<Vec<BigInt>> {
        self.group.coordinates(cocycle)
    }
}

/// Serializable view of a Tate group.
#[derive(Clone, Debug, Serialize)]
pub struct TateSummary {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<String>,
}

impl From<&TateGroup> for TateSummary {
    fn from(t: &TateGroup) -> Self {
        let s = t.summary();
        TateSummary {
            degree: t.degree,
            free_rank: s.free_rank,
            torsion: s.torsion,
        }
    }
}

/// Coboundary `δ^n = ε(d_{n+1})^T` on cochains `Hom_ZG(X_n, Z) ≅ Z^{rank X_n}`.
fn coboundary(x: &CompleteResolution, n: i64) -> Result<IntMatrix> {
    let d = x.complex.diff(n + 1).ok_or_else(|| {
        Error::WindowInsufficient(format!("d_{} outside the complete resolution", n + 1))
    })?;
    Ok(d.augment().transpose())
}

pub fn tate_group(x: &CompleteResolution, n: i64, coeff: Coeff) -> Result<TateGroup> {
    let (lo, hi) = x.tate_range();
    if n < lo || n > hi {
        return Err(Error::WindowInsufficient(format!(
            "Ĥ^{n} needs the window to cover [{}, {}]",
            n - 1,
            n + 1
        )));
    }
    let outgoing = coboundary(x, n)?;
    let incoming = coboundary(x, n - 1)?;
    Ok(TateGroup {
        degree: n,
        coeff,
        group: Subquotient::of(&outgoing, &incoming, coeff)?,
    })
}

/// A cocycle `X_n → coeff`, given by its values on the generators of `X_n`.
#[derive(Clone, Debug)]
pub struct TateClass {
    pub complete: Arc<CompleteResolution>,
    pub degree: i64,
    pub coeff: Coeff,
    pub cocycle: Vec<BigInt>,
}

fn reduce(v: Vec<BigInt>, coeff: Coeff) -> Vec<BigInt> {
    match coeff {
        Coeff::Integers => v,
        Coeff::Mod(p) => {
            let p = BigInt::from(p);
            v.into_iter().map(|x| x.mod_floor(&p)).collect()
        }
    }
}

impl TateClass {
    /// Checks the cocycle condition exactly (modulo `p` for `Z/p`).
    pub fn new(
        complete: Arc<CompleteResolution>,
        degree: i64,
        coeff: Coeff,
        cocycle: Vec<BigInt>,
    ) -> Result<Self> {
        let rank = complete.complex.rank(degree).ok_or_else(|| {
            Error::WindowInsufficient(format!("degree {degree} outside the complete resolution"))
        })?;
        if cocycle.len() != rank {
            return Err(Error::DimensionMismatch(format!(
                "cochain of length {} on rank {rank}",
                cocycle.len()
            )));
        }
        let delta = coboundary(&complete, degree)?;
        let image = reduce(delta.mul_vec(&cocycle), coeff);
        if image.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle(format!(
                "cochain in degree {degree} is not a cocycle"
            )));
        }
        Ok(TateClass {
            complete,
            degree,
            coeff,
            cocycle: reduce(cocycle, coeff),
        })
    }

    /// `i`-th basis class of `Ĥ^n`.
    pub fn basis(complete: Arc<CompleteResolution>, group: &TateGroup, i: usize) -> Result<Self> {
        Self::new(complete, group.degree, group.coeff, group.basis_cocycle(i))
    }

    /// `1 ∈ Ĥ^0`: the augmentation as a cocycle on `X_0`.
    pub fn unit(complete: Arc<CompleteResolution>, coeff: Coeff) -> Result<Self> {
        let eps = complete.resolution.augmentation().to_vec();
        Self::new(complete, 0, coeff, eps)
    }

    pub fn add(&self, other: &TateClass) -> Result<TateClass> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(
                "adding classes of different degrees".into(),
            ));
        }
        let sum = self
            .cocycle
            .iter()
            .zip(&other.cocycle)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TateClass {
            cocycle: reduce(sum, self.coeff),
            ..self.clone()
        })
    }

    pub fn scale(&self, k: &BigInt) -> TateClass {
        TateClass {
            cocycle: reduce(self.cocycle.iter().map(|a| a * k).collect(), self.coeff),
            ..self.clone()
        }
    }

    /// Adds the coboundary of a cochain `c` on `X_{n−1}`.
    pub fn add_coboundary(&self, c: &[BigInt]) -> Result<TateClass> {
        let delta = coboundary(&self.complete, self.degree - 1)?;
        if c.len() != delta.cols() {
            return Err(Error::DimensionMismatch("cochain length".into()));
        }
        let b = delta.mul_vec(c);
        let sum = self.cocycle.iter().zip(&b).map(|(a, b)| a + b).collect();
        Ok(TateClass {
            cocycle: reduce(sum, self.coeff),
            ..self.clone()
        })
    }

    fn check_compatible(&self, other: &TateClass) -> Result<()> {
        if !Arc::ptr_eq(&self.complete, &other.complete) {
            return Err(Error::DimensionMismatch(
                "classes on different complete resolutions".into(),
            ));
        }
        if self.coeff != other.coeff {
            return Err(Error::CoeffMismatch(format!(
                "{} vs {}",
                self.coeff, other.coeff
            )));
        }
        Ok(())
    }

    /// Coordinates in the basis of `group` (which must be `Ĥ^{degree}`).
    pub fn coordinates(&self, group: &TateGroup) -> Result<Vec<BigInt>> {
        if group.degree != self.degree || group.coeff != self.coeff {
            return Err(Error::DimensionMismatch(
                "Tate group of another degree or coefficient ring".into(),
            ));
        }
        group.coordinates(&self.cocycle)
    }
}

/// A chain map `v̂ : X → X` of shift `−q` with `ε ∘ v̂_q = v`, defined on
/// source degrees between `q` and `to`. For `Z/p` the squares commute
/// modulo `p`.
pub fn cocycle_to_chain_map(v: &TateClass, to: i64) -> Result<ChainMapWindow> {
    let x = &v.complete;
    let q = v.degree;
    let group = x.resolution.group().clone();
    let r0 = x.complex.rank(0).expect("degree 0 is in every window");
    let rq = v.cocycle.len();
    let x0 = x
        .resolution
        .unit_generator()
        .ok_or_else(|| Error::DimensionMismatch("augmentation has no unit generator".into()))?;
    let mut seed_map = ZGMatrix::zeros(group.clone(), r0, rq);
    for (j, c) in v.cocycle.iter().enumerate() {
        seed_map.add_term(x0, j, group.identity(), c);
    }
    let mut seed = BTreeMap::new();
    seed.insert(q, seed_map);
    let (from, to) = if to >= q { (q, to) } else { (to, q) };
    lift_chain_map(
        x.complex.clone(),
        x.complex.clone(),
        -q,
        seed,
        from,
        to,
        v.coeff.modulus(),
    )
}

/// `u ∪ v = u ∘ v̂_{p+q}` in `Ĥ^{p+q}`.
pub fn cup(u: &TateClass, v: &TateClass) -> Result<TateClass> {
    u.check_compatible(v)?;
    let total = u.degree + v.degree;
    let (lo, hi) = u.complete.tate_range();
    if total < lo || total > hi {
        return Err(Error::WindowInsufficient(format!(
            "cup lands in degree {total}, window covers [{lo}, {hi}]"
        )));
    }
    let vhat = cocycle_to_chain_map(v, total)?;
    cup_with_lift(u, v, &vhat)
}

/// Cup product reusing a lift `v̂` of `v` that covers source degree
/// `deg u + deg v`.
pub fn cup_with_lift(u: &TateClass, v: &TateClass, vhat: &ChainMapWindow) -> Result<TateClass> {
    let total = u.degree + v.degree;
    let m = vhat.component(total).ok_or_else(|| {
        Error::WindowInsufficient(format!("lift of v does not reach degree {total}"))
    })?;
    let w = m.augment().transpose().mul_vec(&u.cocycle);
    TateClass::new(u.complete.clone(), total, u.coeff, w)
}

/// Explicit isomorphism `H_k(BG; R) ≅ Ĥ^{−k−1}(G; R)` through the dual-basis
/// identification `Hom_ZG(P_k^*, R) ≅ R ⊗_ZG P_k`: a coinvariant chain of
/// `P_k` is read as a cochain on `X_{−k−1}` with the same coordinates.
#[derive(Clone, Debug)]
pub struct HomologyTateIso {
    pub k: usize,
    pub homology: Subquotient,
    pub tate: TateGroup,
    /// Columns: images of the homology generators in Tate coordinates.
    pub forward: IntMatrix,
    /// Columns: images of the Tate generators in homology coordinates.
    pub backward: IntMatrix,
}

pub fn homology_tate_iso(
    x: &CompleteResolution,
    k: usize,
    coeff: Coeff,
) -> Result<HomologyTateIso> {
    if k == 0 {
        return Err(Error::DegreeOutOfRange(
            "H_0 has no negative Tate counterpart".into(),
        ));
    }
    let homology = x.resolution.homology(k, coeff)?;
    let tate = tate_group(x, -(k as i64) - 1, coeff)?;
    let mut fwd = Vec::new();
    for i in 0..homology.num_generators() {
        fwd.push(tate.coordinates(&homology.generator(i))?);
    }
    let mut bwd = Vec::new();
    for i in 0..tate.rank() {
        bwd.push(homology.coordinates(&tate.basis_cocycle(i))?);
    }
    Ok(HomologyTateIso {
        k,
        forward: IntMatrix::from_columns(tate.rank(), &fwd),
        backward: IntMatrix::from_columns(homology.num_generators(), &bwd),
        homology,
        tate,
    })
}
