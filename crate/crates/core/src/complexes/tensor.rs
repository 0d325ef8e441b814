use std::sync::Arc;

use num_bigint::BigInt;

use super::window::ZGComplexWindow;
use crate::error::{Error, Result};
use crate::groupalg::{FiniteGroup, ZGMatrix};

/// How the group acts on a tensor product of two complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorMode {
    /// `C` over `G`, `D` over `H`; the product is over `G × H`.
    ProductGroup,
    /// `C`, `D` over the same `G`, acting diagonally on `C ⊗_Z D`.
    Diagonal,
}

/// `C ⊗ D` with `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`, plus the block layout.
///
/// Degree `n` is the direct sum of blocks `(p, n−p)` in ascending `p`. In
/// product mode generator `a_i ⊗ b_j` of a block sits at `i·rank_q + j`;
/// in diagonal mode the free generators are `a_i ⊗ h·b_j` at
/// `(i·rank_q + j)·|G| + h`.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: Arc<ZGComplexWindow>,
    pub left: Arc<ZGComplexWindow>,
    pub right: Arc<ZGComplexWindow>,
    pub mode: TensorMode,
    blocks: Vec<Vec<(i64, usize)>>,
}

impl TensorComplex {
    /// Offset of block `(p, n−p)` in degree `n`.
    pub fn block_offset(&self, n: i64, p: i64) -> Option<usize> {
        let lo = self.complex.lo();
        if n < lo || n > self.complex.hi() {
            return None;
        }
        self.blocks[(n - lo) as usize]
            .iter()
            .find(|(q, _)| *q == p)
            .map(|&(_, off)| off)
    }

    /// Index of `a_i ⊗ b_j` (product mode) or `a_i ⊗ h·b_j` (diagonal mode).
    pub fn generator_index(&self, p: i64, q: i64, i: usize, j: usize, h: usize) -> Option<usize> {
        let off = self.block_offset(p + q, p)?;
        let rq = self.right.rank(q)?;
        Some(match self.mode {
            TensorMode::ProductGroup => off + i * rq + j,
            TensorMode::Diagonal => off + (i * rq + j) * self.left.group().order() + h,
        })
    }
}

fn block_layout(
    left: &ZGComplexWindow,
    right: &ZGComplexWindow,
    n: i64,
    per: usize,
) -> Vec<(i64, usize, usize, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for p in left.lo()..=n - right.lo() {
        let (Some(rp), Some(rq)) = (left.rank(p), right.rank(n - p)) else {
            continue;
        };
        if p > left.hi() || n - p > right.hi() {
            continue;
        }
        out.push((p, off, rp, rq));
        off += rp * rq * per;
    }
    out
}

fn tensor_bounds(left: &ZGComplexWindow, right: &ZGComplexWindow) -> Result<(i64, i64, bool)> {
    if !left.lower_closed() || !right.lower_closed() {
        return Err(Error::WindowInsufficient(
            "tensor factors must be bounded below".into(),
        ));
    }
    let lo = left.lo() + right.lo();
    let mut hi = i64::MAX;
    if !left.upper_closed() {
        hi = hi.min(left.hi() + right.lo());
    }
    if !right.upper_closed() {
        hi = hi.min(right.hi() + left.lo());
    }
    let closed = hi == i64::MAX;
    if closed {
        hi = left.hi() + right.hi();
    }
    Ok((lo, hi, closed))
}

fn sign(p: i64) -> BigInt {
    if p.rem_euclid(2) == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

/// `C ⊗ D` over `G × H` (element `(g, h)` at index `g·|H| + h`).
pub fn tensor_product_group(
    left: Arc<ZGComplexWindow>,
    right: Arc<ZGComplexWindow>,
) -> Result<TensorComplex> {
    let (lo, hi, closed) = tensor_bounds(&left, &right)?;
    let gl = left.group().clone();
    let gr = right.group().clone();
    let group = Arc::new(FiniteGroup::product(gl.clone(), gr.clone())?);
    let nh = gr.order();
    let embed_left = |g: usize| g * nh + gr.identity();
    let embed_right = |h: usize| gl.identity() * nh + h;

    let layouts: Vec<_> = (lo..=hi)
        .map(|n| block_layout(&left, &right, n, 1))
        .collect();
    let ranks: Vec<usize> = layouts
        .iter()
        .map(|l| l.iter().map(|&(_, _, a, b)| a * b).sum())
        .collect();
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let src = &layouts[(n - lo) as usize];
        let dst = &layouts[(n - lo - 1) as usize];
        let mut d = ZGMatrix::zeros(
            group.clone(),
            ranks[(n - lo - 1) as usize],
            ranks[(n - lo) as usize],
        );
        for &(p, off, rp, rq) in src {
            let q = n - p;
            if let Some(&(_, doff, _, drq)) = dst.iter().find(|b| b.0 == p - 1) {
                let dl = left.diff_or_zero(p).expect("known block");
                for i in 0..rp {
                    for i2 in 0..dl.rows() {
                        for (g, c) in dl.entry_coeffs(i2, i).iter().enumerate() {
                            if c.sign() == num_bigint::Sign::NoSign {
                                continue;
                            }
                            for j in 0..rq {
                                d.add_term(doff + i2 * drq + j, off + i * rq + j, embed_left(g), c);
                            }
                        }
                    }
                }
            }
            if let Some(&(_, doff, _, drq)) = dst.iter().find(|b| b.0 == p) {
                let dr = right.diff_or_zero(q).expect("known block");
                let s = sign(p);
                for j in 0..rq {
                    for j2 in 0..dr.rows() {
                        for (h, c) in dr.entry_coeffs(j2, j).iter().enumerate() {
                            if c.sign() == num_bigint::Sign::NoSign {
                                continue;
                            }
                            let c = c * &s;
                            for i in 0..rp {
                                d.add_term(
                                    doff + i * drq + j2,
                                    off + i * rq + j,
                                    embed_right(h),
                                    &c,
                                );
                            }
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    let complex = ZGComplexWindow::new(group, lo, ranks, diffs, true, closed)?;
    Ok(TensorComplex {
        complex: Arc::new(complex),
        left,
        right,
        mode: TensorMode::ProductGroup,
        blocks: layouts
            .into_iter()
            .map(|l| l.into_iter().map(|(p, off, _, _)| (p, off)).collect())
            .collect(),
    })
}

/// `C ⊗_Z D` over `G` with the diagonal action.
pub fn tensor_diagonal(
    left: Arc<ZGComplexWindow>,
    right: Arc<ZGComplexWindow>,
) -> Result<TensorComplex> {
    if **left.group() != **right.group() {
        return Err(Error::DimensionMismatch(
            "diagonal tensor needs complexes over one group".into(),
        ));
    }
    let (lo, hi, closed) = tensor_bounds(&left, &right)?;
    let group = left.group().clone();
    let ng = group.order();
    let layouts: Vec<_> = (lo..=hi)
        .map(|n| block_layout(&left, &right, n, ng))
        .collect();
    let ranks: Vec<usize> = layouts
        .iter()
        .map(|l| l.iter().map(|&(_, _, a, b)| a * b * ng).sum())
        .collect();
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let src = &layouts[(n - lo) as usize];
        let dst = &layouts[(n - lo - 1) as usize];
        let mut d = ZGMatrix::zeros(
            group.clone(),
            ranks[(n - lo - 1) as usize],
            ranks[(n - lo) as usize],
        );
        for &(p, off, rp, rq) in src {
            let q = n - p;
            // d(e_i) ⊗ h f_j: the term c·g e_{i'} ⊗ h f_j is g·(e_{i'} ⊗ g⁻¹h f_j).
            if let Some(&(_, doff, _, drq)) = dst.iter().find(|b| b.0 == p - 1) {
                let dl = left.diff_or_zero(p).expect("known block");
                for i in 0..rp {
                    for i2 in 0..dl.rows() {
                        for (g, c) in dl.entry_coeffs(i2, i).iter().enumerate() {
                            if c.sign() == num_bigint::Sign::NoSign {
                                continue;
                            }
                            let ginv = group.inv(g);
                            for j in 0..rq {
                                for h in 0..ng {
                                    let row = doff + (i2 * drq + j) * ng + group.mul(ginv, h);
                                    let col = off + (i * rq + j) * ng + h;
                                    d.add_term(row, col, g, c);
                                }
                            }
                        }
                    }
                }
            }
            // (−1)^p e_i ⊗ h d(f_j): the term c·e_i ⊗ h g f_{j'} is a generator.
            if let Some(&(_, doff, _, drq)) = dst.iter().find(|b| b.0 == p) {
                let dr = right.diff_or_zero(q).expect("known block");
                let s = sign(p);
                let id = group.identity();
                for j in 0..rq {
                    for j2 in 0..dr.rows() {
                        for (g, c) in dr.entry_coeffs(j2, j).iter().enumerate() {
                            if c.sign() == num_bigint::Sign::NoSign {
                                continue;
                            }
                            let c = c * &s;
                            for i in 0..rp {
                                for h in 0..ng {
                                    let row = doff + (i * drq + j2) * ng + group.mul(h, g);
                                    let col = off + (i * rq + j) * ng + h;
                                    d.add_term(row, col, id, &c);
                                }
                            }
                        }
                    }
                }
            }
        }
        diffs.push(d);
    }
    let complex = ZGComplexWindow::new(group, lo, ranks, diffs, true, closed)?;
    Ok(TensorComplex {
        complex: Arc::new(complex),
        left,
        right,
        mode: TensorMode::Diagonal,
        blocks: layouts
            .into_iter()
            .map(|l| l.into_iter().map(|(p, off, _, _)| (p, off)).collect())
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::Coeff;
    use crate::groupalg::GroupRingElement;

    fn periodic(g: Arc<FiniteGroup>, top: i64, closed: bool) -> Arc<ZGComplexWindow> {
        let t = GroupRingElement::from_terms(g.clone(), &[(1 % g.order(), 1), (0, -1)]);
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
        Arc::new(
            ZGComplexWindow::new(g, 0, vec![1; top as usize + 1], diffs, true, closed).unwrap(),
        )
    }

    #[test]
    fn product_of_two_z2_resolutions() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let t = tensor_product_group(periodic(g.clone(), 7, false), periodic(g, 7, false)).unwrap();
        let c = &t.complex;
        assert_eq!((c.lo(), c.hi()), (0, 7));
        for n in 0..=7 {
            assert_eq!(c.rank(n), Some(n as usize + 1));
        }
        assert!(c.verify_exactness(1..=6).unwrap().pass);
        let d1 = c.coinvariants().diff(1).unwrap().clone();
        assert!(d1.is_zero());
        let d2 = c.coinvariants().diff(2).unwrap().clone();
        for x in d2.entries() {
            assert!([-2, 0, 2].iter().any(|v| *x == BigInt::from(*v)));
        }
        let h2 = c.coinvariants().homology(2, Coeff::Integers).unwrap();
        assert_eq!(h2.torsion(), vec![BigInt::from(2)]);
        assert_eq!(h2.free_rank(), 0);
    }

    #[test]
    fn unit_complex_is_neutral() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let c = periodic(g, 4, false);
        let triv = Arc::new(FiniteGroup::trivial());
        let unit = Arc::new(ZGComplexWindow::new(triv, 0, vec![1], vec![], true, true).unwrap());
        let t = tensor_product_group(c.clone(), unit).unwrap();
        assert_eq!(t.complex.ranks(), c.ranks());
        for n in 1..=4 {
            assert_eq!(
                t.complex.diff(n).unwrap().realize(),
                c.diff(n).unwrap().realize()
            );
        }
    }

    #[test]
    fn diagonal_tensor_of_circles_is_a_torus() {
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let s = periodic(g, 1, true);
        let t = tensor_diagonal(s.clone(), s).unwrap();
        let c = t.complex.coinvariants();
        assert_eq!(c.homology(2, Coeff::Integers).unwrap().free_rank(), 1);
        assert_eq!(c.homology(1, Coeff::Integers).unwrap().free_rank(), 2);
        assert_eq!(c.homology(0, Coeff::Integers).unwrap().free_rank(), 1);
    }
}
