//! Products on `H_*(BG)`: the primary product (transfer along the diagonal
//! of the cross product), the secondary product computed as a negative Tate
//! cup product, and checks of their naturality properties.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::complexes::ChainMapWindow;
use crate::error::{Error, Result};
use crate::exactlinalg::{Coeff, Subquotient};
use crate::groupalg::{FiniteGroup, GroupHom, Structure, Subgroup};
use crate::joinoracle::{lens_generator_chain, symmetric};
use crate::resolutions::{
    complete_resolution, induced_map, product_resolution, standard_resolution, transfer_map,
    CompleteResolution, Resolution, ResolutionKind, TransferMap,
};
use crate::tate::{cocycle_to_chain_map, cup_with_lift, tate_group, TateClass, TateGroup};

/// Which basis class coordinates refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisTag {
    Snf,
    Lens,
}

/// A class in `H_k(BG; coeff)`, with coordinates in the generator basis of
/// the engine's homology presentation, reduced modulo invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub degree: usize,
    pub coeff: Coeff,
    pub coords: Vec<BigInt>,
    pub factors: Vec<BigInt>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> HomologyClass {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> HomologyClass {
        let coords = self.coords.iter().map(|c| c * k).collect();
        HomologyClass {
            coords: reduce(&self.factors, coords),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &HomologyClass) -> Result<HomologyClass> {
        if self.degree != other.degree || self.coeff != other.coeff || self.factors != other.factors
        {
            return Err(Error::DimensionMismatch(
                "adding classes from different groups".into(),
            ));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HomologyClass {
            coords: reduce(&self.factors, coords),
            ..self.clone()
        })
    }

    /// Additive order, `None` for infinite order.
    pub fn order(&self) -> Option<BigInt> {
        let mut order = BigInt::one();
        for (c, d) in self.coords.iter().zip(&self.factors) {
            if c.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            order = order.lcm(&(d / c.gcd(d)));
        }
        Some(order)
    }

    /// `+1` if equal, `−1` if negatives, `0` if both vanish, `None` otherwise.
    pub fn sign_relative_to(&self, other: &HomologyClass) -> Option<i8> {
        if self.is_zero() && other.is_zero() {
            return Some(0);
        }
        if self == other {
            return Some(1);
        }
        if *self == other.neg() {
            return Some(-1);
        }
        None
    }
}

fn reduce(factors: &[BigInt], coords: Vec<BigInt>) -> Vec<BigInt> {
    coords
        .into_iter()
        .zip(factors)
        .map(|(c, d)| if d.is_zero() { c } else { c.mod_floor(d) })
        .collect()
}

/// Serializable form of a class.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassView {
    pub degree: usize,
    pub coeff: String,
    pub basis: BasisTag,
    pub coords: Vec<String>,
    pub factors: Vec<String>,
}

/// Cached lift of a cocycle, keyed by degree, coefficients, cocycle and
/// direction (`true` for downward).
type LiftKey = (i64, Coeff, Vec<BigInt>, bool);

/// Cached diagonal transfer for the primary product.
type DiagonalTransfer = Arc<(Arc<Resolution>, TransferMap)>;

/// Computation context for one group and one resolution. Caches homology
/// presentations, Tate groups, cocycle lifts, and lens generators.
pub struct BgEngine {
    resolution: Arc<Resolution>,
    complete: Mutex<Option<Arc<CompleteResolution>>>,
    homology: Mutex<HashMap<(usize, Coeff), Arc<Subquotient>>>,
    tate: Mutex<HashMap<(i64, Coeff), Arc<TateGroup>>>,
    lifts: Mutex<HashMap<LiftKey, Arc<ChainMapWindow>>>,
    lens: Mutex<HashMap<usize, Vec<BigInt>>>,
    diagonal: Mutex<HashMap<usize, DiagonalTransfer>>,
}

impl std::fmt::Debug for BgEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BgEngine({}, depth {})",
            self.group().name(),
            self.depth()
        )
    }
}

impl BgEngine {
    pub fn new(group: Arc<FiniteGroup>, depth: usize) -> Result<Self> {
        Ok(Self::from_resolution(standard_resolution(group, depth)?))
    }

    pub fn from_resolution(resolution: Arc<Resolution>) -> Self {
        BgEngine {
            resolution,
            complete: Mutex::new(None),
            homology: Mutex::new(HashMap::new()),
            tate: Mutex::new(HashMap::new()),
            lifts: Mutex::new(HashMap::new()),
            lens: Mutex::new(HashMap::new()),
            diagonal: Mutex::new(HashMap::new()),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.resolution.group()
    }

    pub fn resolution(&self) -> &Arc<Resolution> {
        &self.resolution
    }

    pub fn depth(&self) -> usize {
        self.resolution.depth()
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self.group().structure(), Structure::Cyclic(m) if *m >= 2)
    }

    /// Engines on the two factor resolutions of a product resolution.
    pub fn factor_engines(&self) -> Option<(BgEngine, BgEngine)> {
        let (a, b, _) = self.resolution.factors()?;
        Some((
            BgEngine::from_resolution(a.clone()),
            BgEngine::from_resolution(b.clone()),
        ))
    }

    pub fn complete(&self) -> Result<Arc<CompleteResolution>> {
        let mut slot = self.complete.lock().expect("poisoned");
        if let Some(x) = slot.as_ref() {
            return Ok(x.clone());
        }
        let x = Arc::new(complete_resolution(self.resolution.clone())?);
        *slot = Some(x.clone());
        Ok(x)
    }

    pub fn homology(&self, k: usize, coeff: Coeff) -> Result<Arc<Subquotient>> {
        if let Some(h) = self.homology.lock().expect("poisoned").get(&(k, coeff)) {
            return Ok(h.clone());
        }
        let h = Arc::new(self.resolution.homology(k, coeff)?);
        self.homology
            .lock()
            .expect("poisoned")
            .insert((k, coeff), h.clone());
        Ok(h)
    }

    pub fn tate(&self, n: i64, coeff: Coeff) -> Result<Arc<TateGroup>> {
        if let Some(t) = self.tate.lock().expect("poisoned").get(&(n, coeff)) {
            return Ok(t.clone());
        }
        let x = self.complete()?;
        let t = Arc::new(tate_group(&x, n, coeff)?);
        self.tate
            .lock()
            .expect("poisoned")
            .insert((n, coeff), t.clone());
        Ok(t)
    }

    pub fn class(&self, k: usize, coeff: Coeff, coords: Vec<BigInt>) -> Result<HomologyClass> {
        let h = self.homology(k, coeff)?;
        if coords.len() != h.num_generators() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for a group with {} generators",
                coords.len(),
                h.num_generators()
            )));
        }
        let factors = h.invariant_factors().to_vec();
        Ok(HomologyClass {
            degree: k,
            coeff,
            coords: reduce(&factors, coords),
            factors,
        })
    }

    /// Class of a coinvariant cycle of `P_k`.
    pub fn class_from_chain(
        &self,
        k: usize,
        coeff: Coeff,
        chain: &[BigInt],
    ) -> Result<HomologyClass> {
        let h = self.homology(k, coeff)?;
        let coords = h.coordinates(chain)?;
        Ok(HomologyClass {
            degree: k,
            coeff,
            coords,
            factors: h.invariant_factors().to_vec(),
        })
    }

    pub fn representative(&self, c: &HomologyClass) -> Result<Vec<BigInt>> {
        let h = self.homology(c.degree, c.coeff)?;
        if h.num_generators() != c.coords.len() {
            return Err(Error::DimensionMismatch(
                "class does not belong to this engine".into(),
            ));
        }
        Ok(h.representative(&c.coords))
    }

    /// The generator classes of `H_k`.
    pub fn basis(&self, k: usize, coeff: Coeff) -> Result<Vec<HomologyClass>> {
        let h = self.homology(k, coeff)?;
        let n = h.num_generators();
        (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                self.class(k, coeff, e)
            })
            .collect()
    }

    /// `ι ∈ H_0`: the class of a degree-0 generator with `ε = 1`.
    pub fn unit(&self, coeff: Coeff) -> Result<HomologyClass> {
        let x0 = self
            .resolution
            .unit_generator()
            .ok_or_else(|| Error::DimensionMismatch("augmentation has no unit generator".into()))?;
        let mut chain = vec![BigInt::zero(); self.resolution.augmentation().len()];
        chain[x0] = BigInt::one();
        self.class_from_chain(0, coeff, &chain)
    }

    /// Image under `Z → Z/p`.
    pub fn reduce_mod(&self, c: &HomologyClass, p: u64) -> Result<HomologyClass> {
        if c.coeff != Coeff::Integers {
            return Err(Error::CoeffMismatch(
                "only integral classes can be reduced".into(),
            ));
        }
        let chain = self.representative(c)?;
        self.class_from_chain(c.degree, Coeff::Mod(p), &chain)
    }

    fn lens_chain(&self, k: usize) -> Result<Vec<BigInt>> {
        if !self.is_cyclic() || k.is_multiple_of(2) {
            return Err(Error::DegreeOutOfRange(format!(
                "lens generators exist in odd degrees of cyclic groups, not H_{k}"
            )));
        }
        if let Some(c) = self.lens.lock().expect("poisoned").get(&k) {
            return Ok(c.clone());
        }
        let chain = lens_generator_chain(&self.resolution, (k - 1) / 2)?;
        self.lens.lock().expect("poisoned").insert(k, chain.clone());
        Ok(chain)
    }

    /// `a_k` for a cyclic group and odd `k`.
    pub fn lens_generator(&self, k: usize, coeff: Coeff) -> Result<HomologyClass> {
        let chain = self.lens_chain(k)?;
        self.class_from_chain(k, coeff, &chain)
    }

    /// `c` with `x = c·a_k` (least absolute representative), for cyclic groups
    /// in odd degrees.
    pub fn lens_coefficient(&self, x: &HomologyClass) -> Result<BigInt> {
        let a = self.lens_generator(x.degree, x.coeff)?;
        if a.coords.len() != 1 || x.coords.len() != 1 {
            return Err(Error::DimensionMismatch(
                "lens coordinates need a cyclic homology group".into(),
            ));
        }
        let m = &a.factors[0];
        let inv = crate::exactlinalg::mod_inverse(&a.coords[0], m)
            .ok_or_else(|| Error::NotACycle("lens class does not generate".into()))?;
        Ok(symmetric((&x.coords[0] * inv).mod_floor(m), m))
    }

    /// Class given by its lens coordinate.
    pub fn lens_class(&self, k: usize, coeff: Coeff, c: &BigInt) -> Result<HomologyClass> {
        Ok(self.lens_generator(k, coeff)?.scale(c))
    }

    pub fn view(&self, c: &HomologyClass) -> ClassView {
        let lens = if self.is_cyclic() && c.degree % 2 == 1 {
            self.lens_coefficient(c).ok()
        } else {
            None
        };
        match lens {
            Some(l) => ClassView {
                degree: c.degree,
                coeff: c.coeff.to_string(),
                basis: BasisTag::Lens,
                coords: vec![l.to_string()],
                factors: c.factors.iter().map(BigInt::to_string).collect(),
            },
            None => ClassView {
                degree: c.degree,
                coeff: c.coeff.to_string(),
                basis: BasisTag::Snf,
                coords: c.coords.iter().map(BigInt::to_string).collect(),
                factors: c.factors.iter().map(BigInt::to_string).collect(),
            },
        }
    }

    /// `Φ(c) ∈ Ĥ^{−k−1}` for `k ≥ 1`.
    pub fn to_tate(&self, c: &HomologyClass) -> Result<TateClass> {
        if c.degree == 0 {
            return Err(Error::DegreeOutOfRange(
                "H_0 has no negative Tate counterpart".into(),
            ));
        }
        let chain = self.representative(c)?;
        TateClass::new(self.complete()?, -(c.degree as i64) - 1, c.coeff, chain)
    }

    /// `Φ^{-1}` for a class in degree `≤ −2`.
    pub fn from_tate(&self, t: &TateClass) -> Result<HomologyClass> {
        if t.degree > -2 {
            return Err(Error::DegreeOutOfRange(format!(
                "Ĥ^{} is not a shifted homology group",
                t.degree
            )));
        }
        self.class_from_chain((-t.degree - 1) as usize, t.coeff, &t.cocycle)
    }

    /// `v̂` lifted as far as the window allows in the direction of `to`.
    fn lift(&self, v: &TateClass, to: i64) -> Result<Arc<ChainMapWindow>> {
        let down = to < v.degree;
        let key = (v.degree, v.coeff, v.cocycle.clone(), down);
        if let Some(f) = self.lifts.lock().expect("poisoned").get(&key) {
            if f.component(to).is_some() {
                return Ok(f.clone());
            }
        }
        let (lo, hi) = self.complete()?.tate_range();
        let target = if down {
            lo + v.degree.max(0)
        } else {
            hi + v.degree.min(0)
        };
        let target = if down { target.min(to) } else { target.max(to) };
        let f = Arc::new(cocycle_to_chain_map(v, target)?);
        self.lifts.lock().expect("poisoned").insert(key, f.clone());
        Ok(f)
    }

    /// Tate cup product, reusing cached lifts of `v`.
    pub fn cup(&self, u: &TateClass, v: &TateClass) -> Result<TateClass> {
        let total = u.degree + v.degree;
        let (lo, hi) = self.complete()?.tate_range();
        if total < lo || total > hi {
            return Err(Error::WindowInsufficient(format!(
                "cup lands in Ĥ^{total}, window covers [{lo}, {hi}]"
            )));
        }
        let f = self.lift(v, total)?;
        cup_with_lift(u, v, &f)
    }

    /// Secondary product `a ∗ b = Φ^{-1}(Φa ∪ Φb)` in degree `k+l+1`.
    pub fn kreck(&self, a: &HomologyClass, b: &HomologyClass) -> Result<HomologyClass> {
        if a.degree == 0 || b.degree == 0 {
            return Err(Error::DegreeOutOfRange(format!(
                "secondary product needs k, l ≥ 1, got ({}, {})",
                a.degree, b.degree
            )));
        }
        if a.coeff != b.coeff {
            return Err(Error::CoeffMismatch(format!("{} vs {}", a.coeff, b.coeff)));
        }
        let need = a.degree + b.degree + 3;
        if self.depth() < need {
            return Err(Error::WindowInsufficient(format!(
                "H_{} ∗ H_{} needs depth {need}, engine has {}",
                a.degree,
                b.degree,
                self.depth()
            )));
        }
        let u = self.to_tate(a)?;
        let v = self.to_tate(b)?;
        let w = self.cup(&u, &v)?;
        self.from_tate(&w)
    }

    fn diagonal_transfer(&self, degree: usize) -> Result<DiagonalTransfer> {
        let depth = degree.max(2);
        if let Some((_, t)) = self
            .diagonal
            .lock()
            .expect("poisoned")
            .iter()
            .find(|(d, _)| **d >= depth)
        {
            return Ok(t.clone());
        }
        let small = Arc::new(Resolution::new(
            Arc::new(self.resolution.complex().truncate(0, depth as i64)?),
            self.resolution.augmentation().to_vec(),
            ResolutionKind::Restricted,
        )?);
        let square = Arc::new(product_resolution(small.clone(), small)?);
        let g = self.group();
        let n = g.order();
        let diag: Vec<usize> = (0..n).map(|x| x * n + x).collect();
        let sub = Subgroup::new(square.group().clone(), &diag)?;
        let tr = transfer_map(&sub, &square, &self.resolution, depth as i64)?;
        let out = Arc::new((square, tr));
        self.diagonal
            .lock()
            .expect("poisoned")
            .insert(depth, out.clone());
        Ok(out)
    }

    /// Primary product: the cross product `a × b ∈ H_{k+l}(B(G×G))`
    /// transferred to the diagonal `ΔG ≅ G`.
    pub fn primary_mu(&self, a: &HomologyClass, b: &HomologyClass) -> Result<HomologyClass> {
        if a.coeff != b.coeff {
            return Err(Error::CoeffMismatch(format!("{} vs {}", a.coeff, b.coeff)));
        }
        let total = a.degree + b.degree;
        if total + 1 > self.depth() {
            return Err(Error::WindowInsufficient(format!(
                "H_{total} needs depth {}",
                total + 1
            )));
        }
        let data = self.diagonal_transfer(total)?;
        let (square, tr) = (&data.0, &data.1);
        let (_, _, layout) = square.factors().expect("product resolution");
        let za = self.representative(a)?;
        let zb = self.representative(b)?;
        let mut chain = vec![BigInt::zero(); square.complex().rank(total as i64).expect("inside")];
        for (i, x) in za.iter().enumerate() {
            for (j, y) in zb.iter().enumerate() {
                let idx = layout
                    .generator_index(a.degree as i64, b.degree as i64, i, j, 0)
                    .expect("block inside window");
                chain[idx] = x * y;
            }
        }
        let image = tr.apply_chain(total as i64, &chain)?;
        self.class_from_chain(total, a.coeff, &image)
    }

    /// Cross product of classes from the two factor engines (which must sit
    /// on this engine's factor resolutions).
    pub fn cross(
        &self,
        left: &BgEngine,
        a: &HomologyClass,
        right: &BgEngine,
        b: &HomologyClass,
    ) -> Result<HomologyClass> {
        let (ra, rb, layout) = self.resolution.factors().ok_or_else(|| {
            Error::DimensionMismatch("cross products need a product resolution".into())
        })?;
        if !Arc::ptr_eq(ra, left.resolution()) || !Arc::ptr_eq(rb, right.resolution()) {
            return Err(Error::DimensionMismatch(
                "factor engines do not match this resolution".into(),
            ));
        }
        if a.coeff != b.coeff {
            return Err(Error::CoeffMismatch(format!("{} vs {}", a.coeff, b.coeff)));
        }
        let total = a.degree + b.degree;
        let za = left.representative(a)?;
        let zb = right.representative(b)?;
        let mut chain =
            vec![BigInt::zero(); self.resolution.complex().rank(total as i64).unwrap_or(0)];
        for (i, x) in za.iter().enumerate() {
            for (j, y) in zb.iter().enumerate() {
                let idx = layout
                    .generator_index(a.degree as i64, b.degree as i64, i, j, 0)
                    .ok_or_else(|| {
                        Error::WindowInsufficient(format!("H_{total} outside the window"))
                    })?;
                chain[idx] = x * y;
            }
        }
        self.class_from_chain(total, a.coeff, &chain)
    }
}

/// One entry of a product table.
#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub k: usize,
    pub i: usize,
    pub l: usize,
    pub j: usize,
    pub product: ClassView,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductTable {
    pub group: String,
    pub coeff: String,
    pub kmax: usize,
    pub lmax: usize,
    pub entries: Vec<TableEntry>,
}

/// `a ∗ b` for all generator pairs with `1 ≤ k ≤ kmax`, `1 ≤ l ≤ lmax`.
pub fn product_table(
    engine: &BgEngine,
    kmax: usize,
    lmax: usize,
    coeff: Coeff,
) -> Result<ProductTable> {
    let mut entries = Vec::new();
    for k in 1..=kmax {
        let bk = engine.basis(k, coeff)?;
        for l in 1..=lmax {
            let bl = engine.basis(l, coeff)?;
            for (i, a) in bk.iter().enumerate() {
                for (j, b) in bl.iter().enumerate() {
                    let p = engine.kreck(a, b)?;
                    entries.push(TableEntry {
                        k,
                        i,
                        l,
                        j,
                        product: engine.view(&p),
                    });
                }
            }
        }
    }
    Ok(ProductTable {
        group: engine.group().name().to_string(),
        coeff: coeff.to_string(),
        kmax,
        lmax,
        entries,
    })
}

/// Image of a class under a chain map of resolutions.
pub fn push_class(
    map: &ChainMapWindow,
    src: &BgEngine,
    dst: &BgEngine,
    c: &HomologyClass,
) -> Result<HomologyClass> {
    let chain = src.representative(c)?;
    let image = map.apply_coinvariant(c.degree as i64, &chain)?;
    dst.class_from_chain(c.degree, c.coeff, &image)
}

/// Transfer of a class along `H ⊆ G`.
pub fn transfer_class(
    tr: &TransferMap,
    src: &BgEngine,
    dst: &BgEngine,
    c: &HomologyClass,
) -> Result<HomologyClass> {
    let chain = src.representative(c)?;
    let image = tr.apply_chain(c.degree as i64, &chain)?;
    dst.class_from_chain(c.degree, c.coeff, &image)
}

/// One basis pair in a naturality check.
#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub k: usize,
    pub i: usize,
    pub l: usize,
    pub j: usize,
    pub lhs: ClassView,
    pub rhs: ClassView,
    /// `1`, `−1`, `0` (both vanish) or absent when the sides differ.
    pub sign: Option<i8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NaturalityReport {
    pub source: String,
    pub target: String,
    pub factor: usize,
    pub pairs: Vec<PairCheck>,
    pub global_sign: Option<i8>,
    pub pass: bool,
}

fn consistent_sign(pairs: &[PairCheck]) -> (Option<i8>, bool) {
    let mut sign = None;
    for p in pairs {
        match p.sign {
            None => return (None, false),
            Some(0) => {}
            Some(s) => match sign {
                None => sign = Some(s),
                Some(t) if t != s => return (None, false),
                _ => {}
            },
        }
    }
    (sign, true)
}

/// `Bγ_*(α ∗ β) = n·(Bγ_*α ∗ Bγ_*β)` with `n = |ker γ|`, for all generator
/// pairs with `1 ≤ k, l ≤ kmax`. Passes when a single sign works for every
/// pair.
pub fn check_covering_naturality(
    hom: &GroupHom,
    src: &BgEngine,
    dst: &BgEngine,
    kmax: usize,
) -> Result<NaturalityReport> {
    if !hom.is_surjective() {
        return Err(Error::InvalidHom(
            "covering naturality needs a surjection".into(),
        ));
    }
    let n = hom.kernel().len();
    let top = (2 * kmax + 1) as i64;
    let map = induced_map(hom, src.resolution(), dst.resolution(), top)?;
    let mut pairs = Vec::new();
    for k in 1..=kmax {
        for l in 1..=kmax {
            for (i, a) in src.basis(k, Coeff::Integers)?.iter().enumerate() {
                for (j, b) in src.basis(l, Coeff::Integers)?.iter().enumerate() {
                    let lhs = push_class(&map, src, dst, &src.kreck(a, b)?)?;
                    let pa = push_class(&map, src, dst, a)?;
                    let pb = push_class(&map, src, dst, b)?;
                    let rhs = dst.kreck(&pa, &pb)?.scale(&BigInt::from(n));
                    let sign = lhs.sign_relative_to(&rhs);
                    pairs.push(PairCheck {
                        k,
                        i,
                        l,
                        j,
                        lhs: dst.view(&lhs),
                        rhs: dst.view(&rhs),
                        sign,
                    });
                }
            }
        }
    }
    let (global_sign, pass) = consistent_sign(&pairs);
    Ok(NaturalityReport {
        source: src.group().name().to_string(),
        target: dst.group().name().to_string(),
        factor: n,
        pairs,
        global_sign,
        pass,
    })
}

/// `tr(α ∗ β) = ±tr(α) ∗ tr(β)` for `H ⊆ G`, per generator pair.
pub fn check_transfer_compatibility(
    sub: &Subgroup,
    g: &BgEngine,
    h: &BgEngine,
    kmax: usize,
) -> Result<NaturalityReport> {
    let top = (2 * kmax + 1) as i64;
    let tr = transfer_map(sub, g.resolution(), h.resolution(), top)?;
    let mut pairs = Vec::new();
    for k in 1..=kmax {
        for l in 1..=kmax {
            for (i, a) in g.basis(k, Coeff::Integers)?.iter().enumerate() {
                for (j, b) in g.basis(l, Coeff::Integers)?.iter().enumerate() {
                    let lhs = transfer_class(&tr, g, h, &g.kreck(a, b)?)?;
                    let ta = transfer_class(&tr, g, h, a)?;
                    let tb = transfer_class(&tr, g, h, b)?;
                    let rhs = h.kreck(&ta, &tb)?;
                    let sign = lhs.sign_relative_to(&rhs);
                    pairs.push(PairCheck {
                        k,
                        i,
                        l,
                        j,
                        lhs: h.view(&lhs),
                        rhs: h.view(&rhs),
                        sign,
                    });
                }
            }
        }
    }
    let pass = pairs.iter().all(|p| p.sign.is_some());
    let (global_sign, _) = consistent_sign(&pairs);
    Ok(NaturalityReport {
        source: g.group().name().to_string(),
        target: h.group().name().to_string(),
        factor: sub.index(),
        pairs,
        global_sign,
        pass,
    })
}

/// Whether a class is `±` a generator of maximal order in a cyclic group.
pub fn is_unit_multiple(c: &BigInt) -> bool {
    c.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalg::build_group;

    fn engine(spec: &str, depth: usize) -> BgEngine {
        BgEngine::new(Arc::new(build_group(spec).unwrap()), depth).unwrap()
    }

    #[test]
    fn z2_first_products() {
        let e = engine("cyclic:2", 8);
        let a1 = e.lens_generator(1, Coeff::Integers).unwrap();
        let p = e.kreck(&a1, &a1).unwrap();
        assert_eq!(p.degree, 3);
        assert!(e.lens_coefficient(&p).unwrap().abs().is_one());
    }

    #[test]
    fn z3_one_three() {
        let e = engine("cyclic:3", 10);
        let a1 = e.lens_generator(1, Coeff::Integers).unwrap();
        let a3 = e.lens_generator(3, Coeff::Integers).unwrap();
        let p = e.kreck(&a1, &a3).unwrap();
        assert!(e.lens_coefficient(&p).unwrap().abs().is_one());
    }

    #[test]
    fn degree_zero_rejected() {
        let e = engine("cyclic:2", 6);
        let u = e.unit(Coeff::Integers).unwrap();
        let a1 = e.lens_generator(1, Coeff::Integers).unwrap();
        assert!(matches!(e.kreck(&u, &a1), Err(Error::DegreeOutOfRange(_))));
    }

    #[test]
    fn quaternion_top_product_has_order_eight() {
        let e = engine("q8", 10);
        let b3 = e.basis(3, Coeff::Integers).unwrap();
        let p = e.kreck(&b3[0], &b3[0]).unwrap();
        assert_eq!(p.degree, 7);
        assert_eq!(p.order(), Some(BigInt::from(8)));
    }

    #[test]
    fn primary_product_in_degree_zero() {
        let e = engine("cyclic:4", 4);
        let u = e.unit(Coeff::Integers).unwrap();
        let p = e.primary_mu(&u, &u).unwrap();
        assert_eq!(p, u.scale(&BigInt::from(4)));
        let a1 = e.basis(1, Coeff::Integers).unwrap().remove(0);
        assert!(e.primary_mu(&a1, &u).unwrap().is_zero());
    }

    #[test]
    fn cross_products() {
        let e = engine("product:cyclic:2,cyclic:2", 6);
        let (l, r) = e.factor_engines().unwrap();
        let (il, ir) = (
            l.unit(Coeff::Integers).unwrap(),
            r.unit(Coeff::Integers).unwrap(),
        );
        assert_eq!(
            e.cross(&l, &il, &r, &ir).unwrap(),
            e.unit(Coeff::Integers).unwrap()
        );
        let (a, b) = (
            l.basis(1, Coeff::Integers).unwrap().remove(0),
            r.basis(1, Coeff::Integers).unwrap().remove(0),
        );
        let x = e.cross(&l, &a, &r, &b).unwrap();
        assert_eq!(x.degree, 2);
        assert!(!x.is_zero());
    }

    #[test]
    fn reduction_mod_two() {
        let e = engine("cyclic:4", 8);
        let a1 = e.basis(1, Coeff::Integers).unwrap().remove(0);
        let lhs = e.reduce_mod(&e.kreck(&a1, &a1).unwrap(), 2).unwrap();
        let r = e.reduce_mod(&a1, 2).unwrap();
        let rhs = e.kreck(&r, &r).unwrap();
        assert_eq!(lhs, rhs);
    }
}
