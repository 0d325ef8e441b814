use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::group::{FiniteGroup, GroupHom, Subgroup};
use crate::error::{Error, Result};
use crate::exactlinalg::IntMatrix;

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of the integral group ring `ZG`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| format!("{c}·g{g}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl GroupRingElement {
    pub fn new(group: Arc<FiniteGroup>, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        Ok(GroupRingElement { group, coeffs })
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GroupRingElement {
            group,
            coeffs: vec![BigInt::zero(); n],
        }
    }

    pub fn basis(group: Arc<FiniteGroup>, g: usize) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[g] = BigInt::from(1);
        e
    }

    pub fn one(group: Arc<FiniteGroup>) -> Self {
        let id = group.identity();
        Self::basis(group, id)
    }

    /// The norm element `N = Σ_g g`.
    pub fn norm(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        GroupRingElement {
            group,
            coeffs: vec![BigInt::from(1); n],
        }
    }

    /// `Σ c·g` from `(g, c)` pairs.
    pub fn from_terms(group: Arc<FiniteGroup>, terms: &[(usize, i64)]) -> Self {
        let mut e = Self::zero(group);
        for &(g, c) in terms {
            e.coeffs[g] += c;
        }
        e
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Augmentation: the sum of the coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// The antipode `g ↦ g^{-1}`.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(self.group.clone());
        for (g, c) in self.coeffs.iter().enumerate() {
            out.coeffs[self.group.inv(g)] = c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            same_group(&self.group, &other.group),
            "group ring elements over different groups"
        );
        let mut out = Self::zero(self.group.clone());
        mul_into(&self.group, &self.coeffs, &other.coeffs, &mut out.coeffs);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        GroupRingElement {
            group: self.group.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        GroupRingElement {
            group: self.group.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
}

/// `out += a · b` in `ZG`.
fn mul_into(group: &FiniteGroup, a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
    for (g, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (h, cb) in b.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            out[group.mul(g, h)] += ca * cb;
        }
    }
}

/// A homomorphism `ZG^cols → ZG^rows` of free left `ZG`-modules.
///
/// Column `j` lists the image of the `j`-th basis vector:
/// `f(e_j) = Σ_i m_ij · e_i`, so `f(Σ_j r_j e_j) = Σ_i (Σ_j r_j m_ij) e_i`.
/// Composition therefore multiplies entries with the earlier map on the left,
/// see [`ZGMatrix::compose`].
#[derive(Clone, PartialEq, Eq)]
pub struct ZGMatrix {
    group: Arc<FiniteGroup>,
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for ZGMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ZGMatrix {}x{} over {}",
            self.rows,
            self.cols,
            self.group.name()
        )?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                writeln!(f, "  [{i},{j}] {:?}", self.entry(i, j))?;
            }
        }
        Ok(())
    }
}

impl ZGMatrix {
    pub fn zeros(group: Arc<FiniteGroup>, rows: usize, cols: usize) -> Self {
        let n = group.order();
        ZGMatrix {
            group,
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols * n],
        }
    }

    pub fn identity(group: Arc<FiniteGroup>, n: usize) -> Self {
        let id = group.identity();
        let mut m = Self::zeros(group, n, n);
        for i in 0..n {
            m.add_term(i, i, id, &BigInt::from(1));
        }
        m
    }

    /// Row-major entries.
    pub fn from_entries(
        group: Arc<FiniteGroup>,
        rows: usize,
        cols: usize,
        entries: Vec<GroupRingElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut m = Self::zeros(group.clone(), rows, cols);
        for (k, e) in entries.into_iter().enumerate() {
            if !same_group(&e.group, &group) {
                return Err(Error::DimensionMismatch(
                    "entry over a different group".into(),
                ));
            }
            m.set_entry(k / cols, k % cols, &e);
        }
        Ok(m)
    }

    /// Inverse of [`ZGMatrix::image_of_generator`].
    pub fn from_generator_images(
        group: Arc<FiniteGroup>,
        rows: usize,
        images: &[Vec<BigInt>],
    ) -> Result<Self> {
        let n = group.order();
        let cols = images.len();
        let mut m = Self::zeros(group, rows, cols);
        for (j, img) in images.iter().enumerate() {
            if img.len() != rows * n {
                return Err(Error::DimensionMismatch(
                    "generator image has the wrong length".into(),
                ));
            }
            for i in 0..rows {
                let off = m.offset(i, j);
                m.data[off..off + n].clone_from_slice(&img[i * n..(i + 1) * n]);
            }
        }
        Ok(m)
    }

    #[inline]
    fn offset(&self, i: usize, j: usize) -> usize {
        (i * self.cols + j) * self.group.order()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Rank of the target module.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Rank of the source module.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry_coeffs(&self, i: usize, j: usize) -> &[BigInt] {
        let off = self.offset(i, j);
        &self.data[off..off + self.group.order()]
    }

    pub fn entry(&self, i: usize, j: usize) -> GroupRingElement {
        GroupRingElement {
            group: self.group.clone(),
            coeffs: self.entry_coeffs(i, j).to_vec(),
        }
    }

    pub fn set_entry(&mut self, i: usize, j: usize, e: &GroupRingElement) {
        let off = self.offset(i, j);
        let n = self.group.order();
        self.data[off..off + n].clone_from_slice(&e.coeffs);
    }

    /// `m_ij += c · g`
    pub fn add_term(&mut self, i: usize, j: usize, g: usize, c: &BigInt) {
        let off = self.offset(i, j);
        self.data[off + g] += c;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &ZGMatrix) -> Result<()> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::DimensionMismatch(
                "matrices over different groups".into(),
            ));
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ZGMatrix) -> Result<ZGMatrix> {
        self.check_same(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ZGMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &ZGMatrix) -> Result<ZGMatrix> {
        self.check_same(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ZGMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn neg(&self) -> ZGMatrix {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> ZGMatrix {
        ZGMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> ZGMatrix {
        let pb = BigInt::from(p);
        ZGMatrix {
            group: self.group.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mod_floor(&pb)).collect(),
        }
    }

    /// `after ∘ before`: entry `(k, j)` is `Σ_i before_ij · after_ki`.
    pub fn compose(after: &ZGMatrix, before: &ZGMatrix) -> Result<ZGMatrix> {
        if !same_group(&after.group, &before.group) {
            return Err(Error::DimensionMismatch(
                "composing maps over different groups".into(),
            ));
        }
        if after.cols != before.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                after.rows, after.cols, before.rows, before.cols
            )));
        }
        let g = after.group.clone();
        let n = g.order();
        let mut out = ZGMatrix::zeros(g.clone(), after.rows, before.cols);
        let mut acc = vec![BigInt::zero(); n];
        for k in 0..after.rows {
            for j in 0..before.cols {
                acc.iter_mut().for_each(|x| x.set_zero());
                for i in 0..after.cols {
                    mul_into(
                        &g,
                        before.entry_coeffs(i, j),
                        after.entry_coeffs(k, i),
                        &mut acc,
                    );
                }
                let off = out.offset(k, j);
                out.data[off..off + n].clone_from_slice(&acc);
            }
        }
        Ok(out)
    }

    /// Integer matrix of the map on the `Z`-basis `{g·e_j}` (index `j·|G| + g`).
    /// Realisation is multiplicative: `realize(A ∘ B) = realize(A) · realize(B)`.
    pub fn realize(&self) -> IntMatrix {
        let n = self.group.order();
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let m = self.entry_coeffs(i, j);
                for (h, c) in m.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for g in 0..n {
                        *out.get_mut(i * n + self.group.mul(g, h), j * n + g) += c;
                    }
                }
            }
        }
        out
    }

    /// `f(e_j)` in `Z`-coordinates (index `i·|G| + h`).
    pub fn image_of_generator(&self, j: usize) -> Vec<BigInt> {
        let n = self.group.order();
        let mut v = Vec::with_capacity(self.rows * n);
        for i in 0..self.rows {
            v.extend_from_slice(self.entry_coeffs(i, j));
        }
        v
    }

    /// `Hom_ZG(−, ZG)` dual: transpose with the antipode applied entrywise.
    pub fn dual(&self) -> ZGMatrix {
        let mut out = ZGMatrix::zeros(self.group.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let off = out.offset(j, i);
                for (g, c) in self.entry_coeffs(i, j).iter().enumerate() {
                    out.data[off + self.group.inv(g)] = c.clone();
                }
            }
        }
        out
    }

    /// The induced map on coinvariants `Z ⊗_ZG −`: entrywise augmentation.
    pub fn augment(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.entry_coeffs(i, j).iter().sum());
            }
        }
        out
    }

    /// Extension of scalars along `γ`: every group element `g` becomes `γ(g)`.
    pub fn push_forward(&self, hom: &GroupHom) -> Result<ZGMatrix> {
        if !same_group(&self.group, &hom.source) {
            return Err(Error::InvalidHom(
                "matrix is not over the source group".into(),
            ));
        }
        let mut out = ZGMatrix::zeros(hom.target.clone(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for (g, c) in self.entry_coeffs(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.add_term(i, j, hom.apply(g), c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Restriction of scalars to a subgroup `H`. A free generator `e_j` of
    /// `ZG` splits into the `ZH`-generators `t_r e_j`, where `t_r` runs over
    /// right coset representatives (inverses of [`FiniteGroup::coset_reps`]);
    /// generator `(j, r)` gets index `j·[G:H] + r`.
    pub fn restrict(&self, sub: &Subgroup) -> Result<ZGMatrix> {
        if !same_group(&self.group, &sub.ambient) {
            return Err(Error::NotSubgroup(
                "matrix is not over the ambient group".into(),
            ));
        }
        let split = RightCosetSplit::new(sub)?;
        let idx = split.reps.len();
        let g = &self.group;
        let mut out = ZGMatrix::zeros(sub.group.clone(), self.rows * idx, self.cols * idx);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let m = self.entry_coeffs(i, j);
                for (r, &t) in split.reps.iter().enumerate() {
                    for (x, c) in m.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let (h, r2) = split.decompose[g.mul(t, x)];
                        out.add_term(i * idx + r2, j * idx + r, h, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Copies `block` into this matrix at the given offsets.
    pub fn put_block(&mut self, row_off: usize, col_off: usize, block: &ZGMatrix) {
        assert!(same_group(&self.group, &block.group));
        assert!(row_off + block.rows <= self.rows && col_off + block.cols <= self.cols);
        let n = self.group.order();
        for i in 0..block.rows {
            for j in 0..block.cols {
                let src = block.offset(i, j);
                let dst = self.offset(row_off + i, col_off + j);
                self.data[dst..dst + n].clone_from_slice(&block.data[src..src + n]);
            }
        }
    }
}

/// `g = h · t_r` with `h ∈ H` and `t_r` a right coset representative.
pub(crate) struct RightCosetSplit {
    pub reps: Vec<usize>,
    /// ambient element ↦ (subgroup index of h, r)
    pub decompose: Vec<(usize, usize)>,
}

impl RightCosetSplit {
    pub fn new(sub: &Subgroup) -> Result<Self> {
        let g = &sub.ambient;
        let left = g.coset_reps(sub.elements())?;
        let reps: Vec<usize> = left.iter().map(|&x| g.inv(x)).collect();
        let mut decompose = vec![(usize::MAX, usize::MAX); g.order()];
        for (r, &t) in reps.iter().enumerate() {
            for (hi, &h) in sub.elements().iter().enumerate() {
                decompose[g.mul(h, t)] = (hi, r);
            }
        }
        debug_assert!(decompose.iter().all(|&(a, _)| a != usize::MAX));
        Ok(RightCosetSplit { reps, decompose })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn realize_examples() {
        let g = z(2);
        let e = GroupRingElement::from_terms(g.clone(), &[(0, 1), (1, 1)]);
        let m = ZGMatrix::from_entries(g.clone(), 1, 1, vec![e]).unwrap();
        assert_eq!(m.realize(), IntMatrix::from_rows(&[vec![1, 1], vec![1, 1]]));
        let g3 = z(3);
        let n = ZGMatrix::from_entries(g3.clone(), 1, 1, vec![GroupRingElement::norm(g3.clone())])
            .unwrap();
        assert_eq!(
            n.realize(),
            IntMatrix::from_rows(&[vec![1; 3], vec![1; 3], vec![1; 3]])
        );
        assert_eq!(ZGMatrix::identity(g3, 2).realize(), IntMatrix::identity(6));
    }

    #[test]
    fn dual_examples() {
        let g = z(3);
        let m =
            ZGMatrix::from_entries(g.clone(), 1, 1, vec![GroupRingElement::basis(g.clone(), 1)])
                .unwrap();
        assert_eq!(m.dual().entry(0, 0), GroupRingElement::basis(g.clone(), 2));
        let one = |k: i64| GroupRingElement::from_terms(g.clone(), &[(0, k)]);
        let s = ZGMatrix::from_entries(g.clone(), 2, 1, vec![one(3), one(-1)]).unwrap();
        let t = s.dual();
        assert_eq!((t.rows(), t.cols()), (1, 2));
        assert_eq!(t.augment(), s.augment().transpose());
        assert_eq!(t.dual(), s);
    }

    #[test]
    fn restriction_to_whole_group_is_identity() {
        let g = z(4);
        let sub = Subgroup::new(g.clone(), &[0, 1, 2, 3]).unwrap();
        let e = GroupRingElement::from_terms(g.clone(), &[(1, 1), (0, -1)]);
        let m = ZGMatrix::from_entries(g.clone(), 1, 1, vec![e]).unwrap();
        assert_eq!(m.restrict(&sub).unwrap().realize(), m.realize());
    }

    #[test]
    fn restriction_realizes_the_same_map() {
        // Restriction only regroups the Z-basis: realizations agree up to a
        // permutation of basis vectors, so ranks and the number of nonzero
        // entries must match.
        let g = z(4);
        let sub = Subgroup::new(g.clone(), &[0, 2]).unwrap();
        let e = GroupRingElement::from_terms(g.clone(), &[(1, 1), (0, -1)]);
        let m = ZGMatrix::from_entries(g.clone(), 1, 1, vec![e]).unwrap();
        let r = m.restrict(&sub).unwrap();
        assert_eq!((r.rows(), r.cols()), (2, 2));
        let a = m.realize();
        let b = r.realize();
        let nnz = |x: &IntMatrix| x.entries().iter().filter(|v| !v.is_zero()).count();
        assert_eq!(nnz(&a), nnz(&b));
        assert_eq!(
            crate::exactlinalg::cokernel_invariants(&a),
            crate::exactlinalg::cokernel_invariants(&b)
        );
    }
}
