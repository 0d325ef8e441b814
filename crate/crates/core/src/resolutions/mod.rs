//! Free resolutions of the trivial module, complete resolutions, and the
//! chain maps induced by homomorphisms and subgroup inclusions.

mod builtin;
mod complete;
mod generic;
mod maps;

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complexes::{ExactnessReport, IntComplex, TensorComplex, ZGComplexWindow};
use crate::error::{Error, Result};
use crate::exactlinalg::{Coeff, Subquotient};
use crate::groupalg::{FiniteGroup, Structure, ZGMatrix};

pub(crate) use builtin::periodic_window;
pub use builtin::{periodic_resolution, quaternion_resolution};
pub use complete::{complete_resolution, CompleteResolution};
pub use generic::{generic_resolution, MATRIX_CAP};
pub use maps::{comparison_map, homology_matrix, induced_map, transfer_map, TransferMap};

pub const DEFAULT_DEPTH: usize = 14;

/// Which construction produced a resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolutionKind {
    Periodic,
    Quaternion,
    Product,
    Generic,
    Restricted,
}

/// Free `ZG`-resolution `P_D → … → P_0 → Z` on the window `[0, D]`.
#[derive(Debug)]
pub struct Resolution {
    complex: Arc<ZGComplexWindow>,
    augmentation: Vec<BigInt>,
    kind: ResolutionKind,
    factors: Option<(Arc<Resolution>, Arc<Resolution>, Arc<TensorComplex>)>,
    coinvariants: OnceLock<IntComplex>,
}

impl Resolution {
    /// `augmentation[i] = ε(e_i)` on the generators of `P_0`.
    pub fn new(
        complex: Arc<ZGComplexWindow>,
        augmentation: Vec<BigInt>,
        kind: ResolutionKind,
    ) -> Result<Self> {
        if complex.lo() != 0 || !complex.lower_closed() {
            return Err(Error::DimensionMismatch(
                "a resolution starts in degree 0".into(),
            ));
        }
        if complex.hi() < 2 {
            return Err(Error::DepthTooSmall(complex.hi().max(0) as usize));
        }
        if augmentation.len() != complex.rank(0).unwrap_or(0) {
            return Err(Error::DimensionMismatch(
                "augmentation length differs from rank of P_0".into(),
            ));
        }
        if let Some(d1) = complex.diff(1) {
            let eps = d1.augment();
            for j in 0..eps.cols() {
                let s: BigInt = (0..eps.rows())
                    .map(|i| eps.get(i, j) * &augmentation[i])
                    .sum();
                if !s.is_zero() {
                    return Err(Error::NotAComplex(1));
                }
            }
        }
        Ok(Resolution {
            complex,
            augmentation,
            kind,
            factors: None,
            coinvariants: OnceLock::new(),
        })
    }

    pub(crate) fn with_factors(
        mut self,
        a: Arc<Resolution>,
        b: Arc<Resolution>,
        t: Arc<TensorComplex>,
    ) -> Self {
        self.factors = Some((a, b, t));
        self
    }

    pub fn complex(&self) -> &Arc<ZGComplexWindow> {
        &self.complex
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.complex.group()
    }

    pub fn depth(&self) -> usize {
        self.complex.hi() as usize
    }

    pub fn augmentation(&self) -> &[BigInt] {
        &self.augmentation
    }

    pub fn kind(&self) -> ResolutionKind {
        self.kind
    }

    /// Factor resolutions and the tensor layout, for product resolutions.
    pub fn factors(&self) -> Option<&(Arc<Resolution>, Arc<Resolution>, Arc<TensorComplex>)> {
        self.factors.as_ref()
    }

    /// Index of a degree-0 generator with `ε = 1`.
    pub fn unit_generator(&self) -> Option<usize> {
        self.augmentation.iter().position(One::is_one)
    }

    pub fn coinvariants(&self) -> &IntComplex {
        self.coinvariants
            .get_or_init(|| self.complex.coinvariants())
    }

    /// `H_k(BG; coeff)` from the coinvariants; needs `k < D`.
    pub fn homology(&self, k: usize, coeff: Coeff) -> Result<Subquotient> {
        if k >= self.depth() {
            return Err(Error::WindowInsufficient(format!(
                "H_{k} needs depth at least {}, resolution has {}",
                k + 1,
                self.depth()
            )));
        }
        self.coinvariants().homology(k as i64, coeff)
    }

    /// Exactness in degrees `1..D−1` plus `H_0 ≅ Z` through `ε`.
    pub fn verify(&self) -> Result<ExactnessReport> {
        let mut report = self.complex.verify_exactness(1..=self.complex.hi() - 1)?;
        // coker(d_1) → Z via ε: ε must be onto and kill exactly im d_1.
        let d1 = self.complex.diff(1).expect("depth ≥ 2").realize();
        let n = self.group().order();
        let eps_row: Vec<BigInt> = self
            .augmentation
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.clone(), n))
            .collect();
        let eps = crate::exactlinalg::IntMatrix::new(1, eps_row.len(), eps_row)?;
        let h0 = Subquotient::integral(&eps, &d1)?;
        let onto = self
            .augmentation
            .iter()
            .fold(BigInt::zero(), |g, e| num_integer::Integer::gcd(&g, e))
            .is_one();
        if !(h0.is_trivial() && onto) {
            report.pass = false;
        }
        Ok(report)
    }

    /// Degree-0 component of a comparison map `P_0 → target P'_0` that is
    /// compatible with augmentations: `e_j ↦ ε(e_j)·x0` with `ε'(x0) = 1`.
    pub fn augmentation_seed(source_aug: &[BigInt], target: &Resolution) -> Result<ZGMatrix> {
        let x0 = target.unit_generator().ok_or_else(|| {
            Error::DimensionMismatch("target augmentation has no unit generator".into())
        })?;
        let g = target.group().clone();
        let id = g.identity();
        let mut m = ZGMatrix::zeros(g, target.augmentation.len(), source_aug.len());
        for (j, e) in source_aug.iter().enumerate() {
            m.add_term(x0, j, id, e);
        }
        Ok(m)
    }
}

/// Dispatches on the group structure: cyclic groups get the periodic
/// resolution, direct products the tensor of factor resolutions, `Q8` its
/// period-4 resolution, everything else the generic builder.
pub fn standard_resolution(group: Arc<FiniteGroup>, depth: usize) -> Result<Arc<Resolution>> {
    if depth < 2 {
        return Err(Error::DepthTooSmall(depth));
    }
    match group.structure() {
        Structure::Cyclic(n) if *n >= 2 => Ok(Arc::new(periodic_resolution(group.clone(), depth)?)),
        Structure::Quaternion => Ok(Arc::new(quaternion_resolution(group.clone(), depth)?)),
        Structure::Product(a, b) => {
            let ra = standard_resolution(a.clone(), depth)?;
            let rb = standard_resolution(b.clone(), depth)?;
            Ok(Arc::new(product_resolution(ra, rb)?))
        }
        _ => Ok(Arc::new(generic_resolution(group.clone(), depth)?)),
    }
}

/// `P ⊗ Q` over `G × H`.
pub fn product_resolution(a: Arc<Resolution>, b: Arc<Resolution>) -> Result<Resolution> {
    let t = Arc::new(crate::complexes::tensor_product_group(
        a.complex.clone(),
        b.complex.clone(),
    )?);
    let mut aug = Vec::new();
    for x in &a.augmentation {
        for y in &b.augmentation {
            aug.push(x * y);
        }
    }
    Ok(Resolution::new(t.complex.clone(), aug, ResolutionKind::Product)?.with_factors(a, b, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::GroupSummary;
    use crate::groupalg::build_group;

    fn summary(r: &Resolution, k: usize) -> String {
        GroupSummary::of(&r.homology(k, Coeff::Integers).unwrap()).pretty()
    }

    #[test]
    fn cyclic_three() {
        let r = standard_resolution(Arc::new(build_group("cyclic:3").unwrap()), 6).unwrap();
        assert!(r.complex().ranks().iter().all(|&x| x == 1));
        let h: Vec<String> = (0..5).map(|k| summary(&r, k)).collect();
        assert_eq!(h, ["Z", "Z/3", "0", "Z/3", "0"]);
        assert!(r.verify().unwrap().pass);
    }

    #[test]
    fn klein_four() {
        let r = standard_resolution(
            Arc::new(build_group("product:cyclic:2,cyclic:2").unwrap()),
            6,
        )
        .unwrap();
        for n in 0..=6 {
            assert_eq!(r.complex().rank(n), Some(n as usize + 1));
        }
        assert!(r.verify().unwrap().pass);
        assert_eq!(summary(&r, 1), "Z/2 ⊕ Z/2");
        assert_eq!(summary(&r, 2), "Z/2");
        assert_eq!(summary(&r, 3), "Z/2 ⊕ Z/2 ⊕ Z/2");
        let h2 = r.homology(2, Coeff::Mod(2)).unwrap();
        assert_eq!(h2.num_generators(), 3);
    }

    #[test]
    fn quaternion() {
        let r = standard_resolution(Arc::new(build_group("q8").unwrap()), 8).unwrap();
        assert!(r.verify().unwrap().pass);
        assert_eq!(summary(&r, 1), "Z/2 ⊕ Z/2");
        assert_eq!(summary(&r, 2), "0");
        assert_eq!(summary(&r, 3), "Z/8");
        assert_eq!(summary(&r, 7), "Z/8");
    }

    #[test]
    fn depth_too_small() {
        let g = Arc::new(build_group("cyclic:2").unwrap());
        assert!(matches!(
            standard_resolution(g, 1),
            Err(Error::DepthTooSmall(1))
        ));
    }

    #[test]
    fn mod_p_homology_of_z2() {
        let r = standard_resolution(Arc::new(build_group("cyclic:2").unwrap()), 6).unwrap();
        for k in 0..5 {
            assert_eq!(r.homology(k, Coeff::Mod(2)).unwrap().num_generators(), 1);
        }
        assert!(r.homology(1, Coeff::Mod(3)).unwrap().is_trivial());
    }
}
