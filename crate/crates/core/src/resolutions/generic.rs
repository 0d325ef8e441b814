use std::sync::Arc;

use num_bigint::BigInt;

use super::{Resolution, ResolutionKind};
use crate::complexes::ZGComplexWindow;
use crate::error::{Error, Result};
use crate::exactlinalg::{kernel_basis, IntMatrix, LinearSolver};
use crate::groupalg::{FiniteGroup, ZGMatrix};

/// Largest `rank·|G|` the generic builder will realize.
pub const MATRIX_CAP: usize = 2000;

/// Kernel-lattice resolution: the `Z`-basis of `ker d_n` becomes the set of
/// `ZG`-generators of `P_{n+1}`, after greedily dropping generators that are
/// already in the `ZG`-span of the others.
pub fn generic_resolution(group: Arc<FiniteGroup>, depth: usize) -> Result<Resolution> {
    if depth < 2 {
        return Err(Error::DepthTooSmall(depth));
    }
    let order = group.order();
    let mut ranks = vec![1usize];
    let mut diffs: Vec<ZGMatrix> = Vec::new();
    // ε on P_0 = ZG is the all-ones row.
    let mut current = IntMatrix::new(1, order, vec![BigInt::from(1); order])?;
    for n in 1..=depth {
        let prev_rank = ranks[n - 1];
        let kernel = kernel_basis(&current);
        let images: Vec<Vec<BigInt>> = kernel.columns();
        let images = prune(&group, prev_rank, images)?;
        if images.len() * order > MATRIX_CAP {
            return Err(Error::ResourceCap(format!(
                "generic resolution of {} reaches rank {} in degree {n}",
                group.name(),
                images.len()
            )));
        }
        let d = ZGMatrix::from_generator_images(group.clone(), prev_rank, &images)?;
        current = d.realize();
        ranks.push(images.len());
        diffs.push(d);
    }
    let complex = ZGComplexWindow::new(group, 0, ranks, diffs, true, false)?;
    Resolution::new(
        Arc::new(complex),
        vec![BigInt::from(1)],
        ResolutionKind::Generic,
    )
}

/// Drops generators (last first) whose image lies in the `ZG`-span of the
/// images that remain.
fn prune(
    group: &Arc<FiniteGroup>,
    rows: usize,
    mut images: Vec<Vec<BigInt>>,
) -> Result<Vec<Vec<BigInt>>> {
    let mut j = images.len();
    while j > 0 {
        j -= 1;
        if images.len() == 1 {
            break;
        }
        let others: Vec<Vec<BigInt>> = images
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != j)
            .map(|(_, v)| v.clone())
            .collect();
        let span = ZGMatrix::from_generator_images(group.clone(), rows, &others)?.realize();
        if LinearSolver::new(&span).solve(&images[j])?.is_some() {
            images.remove(j);
        }
    }
    if images
        .iter()
        .all(|v| v.iter().all(|x| x == &BigInt::from(0)))
    {
        images.clear();
    }
    Ok(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::GroupSummary;
    use crate::exactlinalg::Coeff;

    fn s3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup::from_table("S3", table).unwrap()
    }

    #[test]
    fn symmetric_group_three() {
        let r = generic_resolution(Arc::new(s3()), 4).unwrap();
        assert!(r.verify().unwrap().pass);
        let h1 = GroupSummary::of(&r.homology(1, Coeff::Integers).unwrap()).pretty();
        let h3 = GroupSummary::of(&r.homology(3, Coeff::Integers).unwrap()).pretty();
        assert_eq!(h1, "Z/2");
        assert_eq!(h3, "Z/6");
    }

    #[test]
    fn cyclic_four_matches_periodic() {
        let r = generic_resolution(Arc::new(FiniteGroup::cyclic(4).unwrap()), 6).unwrap();
        assert!(r.verify().unwrap().pass);
        for k in 0..5 {
            let h = GroupSummary::of(&r.homology(k, Coeff::Integers).unwrap()).pretty();
            let expected = match k {
                0 => "Z",
                k if k % 2 == 1 => "Z/4",
                _ => "0",
            };
            assert_eq!(h, expected, "degree {k}");
        }
    }

    #[test]
    fn trivial_group() {
        let r = generic_resolution(Arc::new(FiniteGroup::trivial()), 3).unwrap();
        assert_eq!(r.complex().ranks(), &[1, 0, 0, 0]);
    }
}
