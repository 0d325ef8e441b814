use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::window::ZGComplexWindow;
use crate::error::{Error, Result};
use crate::exactlinalg::{IntMatrix, Subquotient};
use crate::groupalg::ZGMatrix;

/// A chain map `f_n : src_n → dst_{n+s}` on a contiguous range of source
/// degrees. Squares commute strictly: `d ∘ f_n = f_{n−1} ∘ d`, or modulo
/// `p` when a modulus is attached.
#[derive(Clone, Debug)]
pub struct ChainMapWindow {
    source: Arc<ZGComplexWindow>,
    target: Arc<ZGComplexWindow>,
    shift: i64,
    components: BTreeMap<i64, ZGMatrix>,
    modulus: Option<u64>,
}

impl ChainMapWindow {
    /// Checks shapes and commutation on every adjacent pair of components.
    pub fn new(
        source: Arc<ZGComplexWindow>,
        target: Arc<ZGComplexWindow>,
        shift: i64,
        components: BTreeMap<i64, ZGMatrix>,
        modulus: Option<u64>,
    ) -> Result<Self> {
        if **source.group() != **target.group() {
            return Err(Error::DimensionMismatch(
                "chain map between complexes over different groups".into(),
            ));
        }
        let mut prev: Option<i64> = None;
        for (&n, f) in &components {
            if let Some(p) = prev {
                if n != p + 1 {
                    return Err(Error::DimensionMismatch(
                        "chain map components must be contiguous".into(),
                    ));
                }
            }
            prev = Some(n);
            let (Some(r), Some(t)) = (source.rank(n), target.rank(n + shift)) else {
                return Err(Error::WindowInsufficient(format!(
                    "component at degree {n} outside the windows"
                )));
            };
            if f.cols() != r || f.rows() != t {
                return Err(Error::DimensionMismatch(format!(
                    "component f_{n} is {}x{}, expected {t}x{r}",
                    f.rows(),
                    f.cols()
                )));
            }
        }
        let map = ChainMapWindow {
            source,
            target,
            shift,
            components,
            modulus,
        };
        map.check_commutes()?;
        Ok(map)
    }

    /// The zero map on `[from, to]`.
    pub fn zero(
        source: Arc<ZGComplexWindow>,
        target: Arc<ZGComplexWindow>,
        shift: i64,
        from: i64,
        to: i64,
    ) -> Result<Self> {
        let mut components = BTreeMap::new();
        for n in from..=to {
            let (Some(r), Some(t)) = (source.rank(n), target.rank(n + shift)) else {
                return Err(Error::WindowInsufficient(format!(
                    "degree {n} outside the windows"
                )));
            };
            components.insert(n, ZGMatrix::zeros(source.group().clone(), t, r));
        }
        Self::new(source, target, shift, components, None)
    }

    /// Identity on `[from, to]`.
    pub fn identity(complex: Arc<ZGComplexWindow>, from: i64, to: i64) -> Result<Self> {
        let mut components = BTreeMap::new();
        for n in from..=to {
            let r = complex.rank(n).ok_or_else(|| {
                Error::WindowInsufficient(format!("degree {n} outside the window"))
            })?;
            components.insert(n, ZGMatrix::identity(complex.group().clone(), r));
        }
        Self::new(complex.clone(), complex, 0, components, None)
    }

    pub fn source(&self) -> &Arc<ZGComplexWindow> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ZGComplexWindow> {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn component(&self, n: i64) -> Option<&ZGMatrix> {
        self.components.get(&n)
    }

    pub fn components(&self) -> &BTreeMap<i64, ZGMatrix> {
        &self.components
    }

    /// Lowest and highest source degrees with a component.
    pub fn range(&self) -> Option<(i64, i64)> {
        Some((
            *self.components.keys().next()?,
            *self.components.keys().next_back()?,
        ))
    }

    fn vanishes(&self, m: &ZGMatrix) -> bool {
        match self.modulus {
            None => m.is_zero(),
            Some(p) => m.reduce_mod(p).is_zero(),
        }
    }

    /// Commutation at degree `n` (needs `f_n` and `f_{n−1}`).
    fn square(&self, n: i64) -> Result<bool> {
        let (Some(f), Some(f_prev)) = (self.components.get(&n), self.components.get(&(n - 1)))
        else {
            return Ok(true);
        };
        let d_dst = self.target.diff_or_zero(n + self.shift).ok_or_else(|| {
            Error::WindowInsufficient(format!("target d_{} unknown", n + self.shift))
        })?;
        let d_src = self
            .source
            .diff_or_zero(n)
            .ok_or_else(|| Error::WindowInsufficient(format!("source d_{n} unknown")))?;
        let lhs = ZGMatrix::compose(&d_dst, f)?;
        let rhs = ZGMatrix::compose(f_prev, &d_src)?;
        Ok(self.vanishes(&lhs.sub(&rhs)?))
    }

    /// Fails with `UnsolvableLift` at the first square that does not commute.
    pub fn check_commutes(&self) -> Result<()> {
        for &n in self.components.keys() {
            if !self.square(n)? {
                return Err(Error::UnsolvableLift {
                    degree: n,
                    detail: "components do not commute with the differentials".into(),
                });
            }
        }
        Ok(())
    }

    fn solve(
        &self,
        solver: &crate::exactlinalg::LinearSolver,
        b: &[BigInt],
    ) -> Result<Option<Vec<BigInt>>> {
        match self.modulus {
            None => solver.solve(b),
            Some(p) => solver.solve_mod(b, p),
        }
    }

    /// Extends upward through degree `to` by solving
    /// `d^dst ∘ f_n = f_{n−1} ∘ d^src` one generator at a time.
    pub fn extend_up(&mut self, to: i64) -> Result<()> {
        let group = self.source.group().clone();
        loop {
            let Some((_, top)) = self.range() else {
                return Err(Error::WindowInsufficient(
                    "cannot extend an empty chain map".into(),
                ));
            };
            let n = top + 1;
            if n > to {
                return Ok(());
            }
            let t = n + self.shift;
            let (Some(r), Some(tr)) = (self.source.rank(n), self.target.rank(t)) else {
                return Err(Error::WindowInsufficient(format!(
                    "degree {n} (target {t}) outside the windows"
                )));
            };
            let below = self.target.rank(t - 1).unwrap_or(usize::MAX);
            let f_n =
                if r == 0 || tr == 0 || below == 0 {
                    // Nothing to solve; `square` below still checks consistency.
                    ZGMatrix::zeros(group.clone(), tr, r)
                } else {
                    let d_src = self.source.diff_or_zero(n).ok_or_else(|| {
                        Error::WindowInsufficient(format!("source d_{n} unknown"))
                    })?;
                    let rhs = ZGMatrix::compose(&self.components[&(n - 1)], &d_src)?;
                    let solver = self.target.solver(t).ok_or_else(|| {
                        Error::WindowInsufficient(format!("target d_{t} unknown"))
                    })?;
                    let mut images = Vec::with_capacity(r);
                    for j in 0..r {
                        let b = rhs.image_of_generator(j);
                        match self.solve(solver, &b)? {
                            Some(x) => images.push(x),
                            None => {
                                return Err(Error::UnsolvableLift {
                                    degree: n,
                                    detail: format!(
                                        "no preimage for generator {j} (target degree {t})"
                                    ),
                                })
                            }
                        }
                    }
                    ZGMatrix::from_generator_images(group.clone(), tr, &images)?
                };
            self.components.insert(n, f_n);
            if !self.square(n)? {
                return Err(Error::UnsolvableLift {
                    degree: n,
                    detail: "lifted square does not commute".into(),
                });
            }
        }
    }

    /// Extends downward through degree `to` by solving the dual system
    /// `dual(d^src) ∘ dual(f_n) = dual(d^dst ∘ f_{n+1})`.
    pub fn extend_down(&mut self, to: i64) -> Result<()> {
        let group = self.source.group().clone();
        loop {
            let Some((bottom, _)) = self.range() else {
                return Err(Error::WindowInsufficient(
                    "cannot extend an empty chain map".into(),
                ));
            };
            let n = bottom - 1;
            if n < to {
                return Ok(());
            }
            let t = n + self.shift;
            let (Some(r), Some(tr)) = (self.source.rank(n), self.target.rank(t)) else {
                return Err(Error::WindowInsufficient(format!(
                    "degree {n} (target {t}) outside the windows"
                )));
            };
            let above = self.source.rank(n + 1).unwrap_or(usize::MAX);
            let f_n = if r == 0 || tr == 0 || above == 0 {
                ZGMatrix::zeros(group.clone(), tr, r)
            } else {
                let d_dst = self.target.diff_or_zero(t + 1).ok_or_else(|| {
                    Error::WindowInsufficient(format!("target d_{} unknown", t + 1))
                })?;
                let rhs = ZGMatrix::compose(&d_dst, &self.components[&(n + 1)])?.dual();
                let solver = self.source.dual_solver(n + 1).ok_or_else(|| {
                    Error::WindowInsufficient(format!("source d_{} unknown", n + 1))
                })?;
                let mut images = Vec::with_capacity(tr);
                for k in 0..tr {
                    let b = rhs.image_of_generator(k);
                    match self.solve(solver, &b)? {
                        Some(y) => images.push(y),
                        None => {
                            return Err(Error::UnsolvableLift {
                                degree: n,
                                detail: format!(
                                    "dual system has no solution for target generator {k}"
                                ),
                            })
                        }
                    }
                }
                ZGMatrix::from_generator_images(group.clone(), r, &images)?.dual()
            };
            self.components.insert(n, f_n);
            if !self.square(n + 1)? {
                return Err(Error::UnsolvableLift {
                    degree: n,
                    detail: "lifted square does not commute".into(),
                });
            }
        }
    }

    /// `after ∘ before` on the degrees where both are defined.
    pub fn compose(after: &ChainMapWindow, before: &ChainMapWindow) -> Result<ChainMapWindow> {
        let modulus = match (after.modulus, before.modulus) {
            (Some(p), Some(q)) if p != q => {
                return Err(Error::CoeffMismatch(format!(
                    "composing maps mod {p} and mod {q}"
                )))
            }
            (a, b) => a.or(b),
        };
        let mut components = BTreeMap::new();
        for (&n, f) in &before.components {
            if let Some(g) = after.components.get(&(n + before.shift)) {
                components.insert(n, ZGMatrix::compose(g, f)?);
            }
        }
        ChainMapWindow::new(
            before.source.clone(),
            after.target.clone(),
            before.shift + after.shift,
            components,
            modulus,
        )
    }

    /// Component on coinvariants.
    pub fn coinvariant_component(&self, n: i64) -> Option<IntMatrix> {
        self.components.get(&n).map(ZGMatrix::augment)
    }

    /// Matrix of the induced map `H_n(src) → H_{n+s}(dst)` in the generator
    /// coordinates of the two subquotients (one column per source generator).
    pub fn on_homology(&self, n: i64, src: &Subquotient, dst: &Subquotient) -> Result<IntMatrix> {
        let f = self
            .coinvariant_component(n)
            .ok_or_else(|| Error::WindowInsufficient(format!("no component at degree {n}")))?;
        let mut cols = Vec::with_capacity(src.num_generators());
        for i in 0..src.num_generators() {
            cols.push(dst.coordinates(&f.mul_vec(&src.generator(i)))?);
        }
        Ok(IntMatrix::from_columns(dst.num_generators(), &cols))
    }

    /// Image of one coinvariant chain, as a coinvariant chain.
    pub fn apply_coinvariant(&self, n: i64, chain: &[BigInt]) -> Result<Vec<BigInt>> {
        let f = self
            .coinvariant_component(n)
            .ok_or_else(|| Error::WindowInsufficient(format!("no component at degree {n}")))?;
        if chain.len() != f.cols() {
            return Err(Error::DimensionMismatch("chain length".into()));
        }
        Ok(f.mul_vec(chain))
    }
}

/// Extends `seed` to a chain map on source degrees `from..=to`, lifting
/// upward and then downward from the seeded range.
pub fn lift_chain_map(
    src: Arc<ZGComplexWindow>,
    dst: Arc<ZGComplexWindow>,
    shift: i64,
    seed: BTreeMap<i64, ZGMatrix>,
    from: i64,
    to: i64,
    modulus: Option<u64>,
) -> Result<ChainMapWindow> {
    let mut map = ChainMapWindow::new(src, dst, shift, seed, modulus)?;
    if map.range().is_none() {
        return Err(Error::WindowInsufficient("empty seed".into()));
    }
    map.extend_up(to)?;
    map.extend_down(from)?;
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::{FiniteGroup, GroupRingElement};

    fn periodic(m: usize, top: i64) -> Arc<ZGComplexWindow> {
        let g = Arc::new(FiniteGroup::cyclic(m).unwrap());
        let t = GroupRingElement::from_terms(g.clone(), &[(1, 1), (0, -1)]);
        let n = GroupRingElement::norm(g.clone());
        let diffs = (1..=top)
            .map(|k| {
                let e = if k % 2 == 1 { t.clone() } else { n.clone() };
                ZGMatrix::from_entries(g.clone(), 1, 1, vec![e]).unwrap()
            })
            .collect();
        Arc::new(ZGComplexWindow::new(g, 0, vec![1; top as usize + 1], diffs, true, false).unwrap())
    }

    #[test]
    fn identity_seed_lifts_to_identity_like_map() {
        let c = periodic(3, 6);
        let mut seed = BTreeMap::new();
        seed.insert(0, ZGMatrix::identity(c.group().clone(), 1));
        let f = lift_chain_map(c.clone(), c.clone(), 0, seed, 0, 5, None).unwrap();
        for n in 0..=5 {
            let a = f.coinvariant_component(n).unwrap();
            assert_eq!(a.get(0, 0), &BigInt::from(1), "degree {n}");
        }
    }

    #[test]
    fn zero_seed_lifts_to_zero() {
        let c = periodic(2, 5);
        let mut seed = BTreeMap::new();
        seed.insert(0, ZGMatrix::zeros(c.group().clone(), 1, 1));
        let f = lift_chain_map(c.clone(), c, 0, seed, 0, 4, None).unwrap();
        assert!(f.components().values().all(ZGMatrix::is_zero));
    }

    #[test]
    fn rejects_non_commuting_components() {
        let c = periodic(2, 3);
        let mut comps = BTreeMap::new();
        comps.insert(0, ZGMatrix::identity(c.group().clone(), 1));
        comps.insert(1, ZGMatrix::zeros(c.group().clone(), 1, 1));
        assert!(ChainMapWindow::new(c.clone(), c, 0, comps, None).is_err());
    }

    #[test]
    fn unsolvable_lift_is_reported() {
        // Seed that is not compatible with exactness: multiplication by a
        // non-cycle cannot be lifted from an open window into a complex that
        // is not exact.
        let g = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let zero = ZGMatrix::zeros(g.clone(), 1, 1);
        let dead = Arc::new(
            ZGComplexWindow::new(g.clone(), 0, vec![1, 1], vec![zero], true, false).unwrap(),
        );
        let c = periodic(2, 3);
        let mut seed = BTreeMap::new();
        seed.insert(0, ZGMatrix::identity(g, 1));
        let err = lift_chain_map(c, dead, 0, seed, 0, 1, None).unwrap_err();
        assert!(matches!(err, Error::UnsolvableLift { degree: 1, .. }));
    }
}
