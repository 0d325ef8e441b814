use std::sync::Arc;

use num_bigint::BigInt;

use super::Resolution;
use crate::complexes::ZGComplexWindow;
use crate::error::Result;
use crate::groupalg::{GroupRingElement, ZGMatrix};

/// `X_n = P_n` for `n ≥ 0`, `X_{−n} = P_{n−1}^*` for `n ≥ 1`, spliced by
/// `d_0(e_j) = Σ_i ε_i ε_j N e_i^*`, with `d_{−k} = (−1)^k dual(d_k)`.
#[derive(Debug)]
pub struct CompleteResolution {
    pub complex: Arc<ZGComplexWindow>,
    pub resolution: Arc<Resolution>,
}

pub fn complete_resolution(resolution: Arc<Resolution>) -> Result<CompleteResolution> {
    let p = resolution.complex();
    let depth = resolution.depth() as i64;
    let group = resolution.group().clone();
    let r0 = p.rank(0).expect("resolution starts at 0");

    let mut ranks = Vec::new();
    for n in -depth..=depth {
        ranks.push(if n >= 0 { p.rank(n) } else { p.rank(-n - 1) }.expect("inside the window"));
    }
    let mut diffs = Vec::new();
    for n in -depth + 1..=depth {
        let d = if n >= 1 {
            p.diff(n).expect("inside the window").clone()
        } else if n == 0 {
            let norm = GroupRingElement::norm(group.clone());
            let mut d0 = ZGMatrix::zeros(group.clone(), r0, r0);
            let eps = resolution.augmentation();
            for i in 0..r0 {
                for j in 0..r0 {
                    let c = &eps[i] * &eps[j];
                    d0.set_entry(i, j, &norm.scale(&c));
                }
            }
            d0
        } else {
            let k = -n;
            let sign = if k % 2 == 0 {
                BigInt::from(1)
            } else {
                BigInt::from(-1)
            };
            p.diff(k).expect("inside the window").dual().scale(&sign)
        };
        diffs.push(d);
    }
    let complex = ZGComplexWindow::new(group, -depth, ranks, diffs, false, false)?;
    Ok(CompleteResolution {
        complex: Arc::new(complex),
        resolution,
    })
}

impl CompleteResolution {
    pub fn depth(&self) -> usize {
        self.resolution.depth()
    }

    /// Tate degrees `n` with both `d_n` and `d_{n+1}` available.
    pub fn tate_range(&self) -> (i64, i64) {
        let d = self.depth() as i64;
        (-d + 1, d - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::FiniteGroup;
    use crate::resolutions::standard_resolution;

    #[test]
    fn interior_exactness() {
        for spec in ["cyclic:2", "cyclic:4", "q8", "product:cyclic:2,cyclic:2"] {
            let g = Arc::new(crate::groupalg::build_group(spec).unwrap());
            let x = complete_resolution(standard_resolution(g, 6).unwrap()).unwrap();
            let rep = x.complex.verify_exactness(-5..=5).unwrap();
            assert!(rep.pass, "{spec}: {rep:?}");
        }
    }

    #[test]
    fn window_shape() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let x = complete_resolution(standard_resolution(g, 4).unwrap()).unwrap();
        assert_eq!((x.complex.lo(), x.complex.hi()), (-4, 4));
        assert_eq!(x.tate_range(), (-3, 3));
    }
}
