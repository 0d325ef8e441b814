use std::sync::Arc;

use num_bigint::BigInt;

use super::{Resolution, ResolutionKind};
use crate::complexes::ZGComplexWindow;
use crate::error::{Error, Result};
use crate::groupalg::{FiniteGroup, GroupRingElement, Structure, ZGMatrix};

/// `… --N--> ZG --(g−1)--> ZG --N--> ZG --(g−1)--> ZG` for `Z/m` with
/// generator `g` = element `1`.
pub fn periodic_resolution(group: Arc<FiniteGroup>, depth: usize) -> Result<Resolution> {
    let m = match group.structure() {
        Structure::Cyclic(m) if *m >= 2 => *m,
        _ => {
            return Err(Error::InvalidTable(format!(
                "{} is not a nontrivial cyclic group",
                group.name()
            )))
        }
    };
    debug_assert_eq!(group.order(), m);
    let complex = periodic_window(group, depth as i64, false)?;
    Resolution::new(
        Arc::new(complex),
        vec![BigInt::from(1)],
        ResolutionKind::Periodic,
    )
}

/// Rank-1 periodic complex on `[0, top]`, closed at `0`.
pub(crate) fn periodic_window(
    group: Arc<FiniteGroup>,
    top: i64,
    upper_closed: bool,
) -> Result<ZGComplexWindow> {
    let t = GroupRingElement::from_terms(group.clone(), &[(1, 1), (group.identity(), -1)]);
    let n = GroupRingElement::norm(group.clone());
    let diffs = (1..=top)
        .map(|k| {
            ZGMatrix::from_entries(
                group.clone(),
                1,
                1,
                vec![if k % 2 == 1 { t.clone() } else { n.clone() }],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    ZGComplexWindow::new(
        group,
        0,
        vec![1; top as usize + 1],
        diffs,
        true,
        upper_closed,
    )
}

/// Period-4 resolution of `Q8 = ⟨x, y⟩` (`x = i`, `y = j`), ranks `1, 2, 2, 1`:
///
/// ```text
/// d1 = [x−1  y−1]
/// d2 = [[1+xy, y−1], [x−1, 1+yx]]
/// d3 = [[1−y], [1−x]]
/// d4 = [N]
/// ```
pub fn quaternion_resolution(group: Arc<FiniteGroup>, depth: usize) -> Result<Resolution> {
    if !matches!(group.structure(), Structure::Quaternion) {
        return Err(Error::InvalidTable(format!(
            "{} is not the quaternion group",
            group.name()
        )));
    }
    let g = group.clone();
    let (one, x, y) = (g.identity(), 1usize, 2usize);
    let xy = g.mul(x, y);
    let yx = g.mul(y, x);
    let el = |terms: &[(usize, i64)]| GroupRingElement::from_terms(g.clone(), terms);
    let d1 = ZGMatrix::from_entries(
        g.clone(),
        1,
        2,
        vec![el(&[(x, 1), (one, -1)]), el(&[(y, 1), (one, -1)])],
    )?;
    let d2 = ZGMatrix::from_entries(
        g.clone(),
        2,
        2,
        vec![
            el(&[(one, 1), (xy, 1)]),
            el(&[(y, 1), (one, -1)]),
            el(&[(x, 1), (one, -1)]),
            el(&[(one, 1), (yx, 1)]),
        ],
    )?;
    let d3 = ZGMatrix::from_entries(
        g.clone(),
        2,
        1,
        vec![el(&[(one, 1), (y, -1)]), el(&[(one, 1), (x, -1)])],
    )?;
    let d4 = ZGMatrix::from_entries(g.clone(), 1, 1, vec![GroupRingElement::norm(g.clone())])?;
    let cycle = [d1, d2, d3, d4];
    let ranks: Vec<usize> = (0..=depth).map(|n| [1usize, 2, 2, 1][n % 4]).collect();
    let diffs: Vec<ZGMatrix> = (1..=depth).map(|n| cycle[(n - 1) % 4].clone()).collect();
    let complex = ZGComplexWindow::new(group, 0, ranks, diffs, true, false)?;
    Resolution::new(
        Arc::new(complex),
        vec![BigInt::from(1)],
        ResolutionKind::Quaternion,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quaternion_ranks_repeat() {
        let r = quaternion_resolution(Arc::new(FiniteGroup::quaternion()), 9).unwrap();
        assert_eq!(r.complex().ranks(), &[1, 2, 2, 1, 1, 2, 2, 1, 1, 2]);
        assert!(r.complex().verify_exactness(1..=8).unwrap().pass);
    }

    #[test]
    fn periodic_coinvariants_alternate() {
        let r = periodic_resolution(Arc::new(FiniteGroup::cyclic(5).unwrap()), 5).unwrap();
        let c = r.coinvariants();
        for n in 1..=5 {
            let expected = if n % 2 == 1 { 0 } else { 5 };
            assert_eq!(c.diff(n).unwrap().get(0, 0), &BigInt::from(expected));
        }
        assert!(r.complex().verify_exactness(1..=4).unwrap().pass);
    }
}
