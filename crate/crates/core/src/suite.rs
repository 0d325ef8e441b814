//! Verification suites: the twelve paper items and a set of structural
//! property checks. Each item reports its check count, and every failure
//! carries its inputs and both computed sides.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactlinalg::Coeff;
use crate::groupalg::{build_group, FiniteGroup, GroupHom, Subgroup};
use crate::joinoracle::{check_boundary_relation, join_product, lens_complex};
use crate::products::{
    check_covering_naturality, check_transfer_compatibility, push_class, BgEngine, HomologyClass,
};
use crate::resolutions::{comparison_map, generic_resolution, DEFAULT_DEPTH};
use crate::tate::TateClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemStatus {
    Pass,
    Fail,
    ResourceCap,
}

#[derive(Clone, Debug, Serialize)]
pub struct ItemReport {
    pub id: String,
    pub title: String,
    pub status: ItemStatus,
    pub checks: usize,
    pub failures: Vec<Value>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ItemReport {
    pub fn passed(&self) -> bool {
        self.status == ItemStatus::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub depth: usize,
    pub items: Vec<ItemReport>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn resource_capped(&self) -> bool {
        self.items
            .iter()
            .any(|i| i.status == ItemStatus::ResourceCap)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Window depth for items that use the default depth.
    pub depth: usize,
    pub timings: bool,
    /// Restrict to these item ids.
    pub only: Option<Vec<String>>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            depth: DEFAULT_DEPTH,
            timings: false,
            only: None,
        }
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<Value>,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

type ItemFn = fn(&SuiteOptions, &mut Tally) -> Result<()>;

const PAPER_ITEMS: &[(&str, &str, ItemFn)] = &[
    ("1", "cyclic product law", item_cyclic_law),
    (
        "2",
        "Tate route agrees with the join oracle",
        item_oracle_agreement,
    ),
    ("3", "primary product vanishing", item_primary_vanishing),
    ("4", "cross-product vanishing", item_cross_vanishing),
    ("5", "Benson-Carlson vanishing", item_benson_carlson),
    ("6", "periodic nontriviality for Q8", item_quaternion),
    ("7", "covering naturality", item_covering),
    ("8", "transfer compatibility", item_transfer),
    ("9", "Mayer-Vietoris boundary relation", item_boundary),
    ("10", "Tate ring properties", item_tate_properties),
    (
        "11",
        "resolution independence",
        item_resolution_independence,
    ),
    ("12", "coefficient naturality", item_coefficient_naturality),
];

const PROPERTY_ITEMS: &[(&str, &str, ItemFn)] = &[
    ("P1", "resolutions are exact", prop_resolutions),
    ("P2", "complete resolutions are exact", prop_complete),
    ("P3", "grading and bilinearity", prop_bilinear),
    ("P4", "maximal order in cyclic groups", prop_cyclic_order),
    ("P5", "associativity up to sign", prop_associative),
    ("P6", "primary product in degree zero", prop_primary_unit),
    ("P7", "lens model homology", prop_lens_models),
    ("P8", "join products are units", prop_join_units),
];

pub fn suite_items(name: &str) -> Option<Vec<(&'static str, &'static str)>> {
    table(name).map(|t| t.iter().map(|(id, title, _)| (*id, *title)).collect())
}

fn table(name: &str) -> Option<&'static [(&'static str, &'static str, ItemFn)]> {
    match name {
        "paper" => Some(PAPER_ITEMS),
        "properties" => Some(PROPERTY_ITEMS),
        _ => None,
    }
}

/// Runs one item of a suite.
pub fn run_item(suite: &str, id: &str, options: &SuiteOptions) -> Result<ItemReport> {
    let items = table(suite).ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("unknown suite `{suite}`"),
    })?;
    let (id, title, f) = items
        .iter()
        .find(|(i, _, _)| *i == id)
        .ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("suite `{suite}` has no item `{id}`"),
        })?;
    Ok(execute(id, title, *f, options))
}

fn execute(id: &str, title: &str, f: ItemFn, options: &SuiteOptions) -> ItemReport {
    let start = Instant::now();
    let mut tally = Tally::default();
    let outcome = f(options, &mut tally);
    let status = match outcome {
        Ok(()) if tally.failures.is_empty() => ItemStatus::Pass,
        Ok(()) => ItemStatus::Fail,
        Err(Error::ResourceCap(msg)) => {
            tally.note(format!("resource cap: {msg}"));
            ItemStatus::ResourceCap
        }
        Err(e) => {
            tally.failures.push(json!({ "error": e.to_string() }));
            ItemStatus::Fail
        }
    };
    ItemReport {
        id: id.to_string(),
        title: title.to_string(),
        status,
        checks: tally.checks,
        failures: tally.failures,
        notes: tally.notes,
        elapsed_ms: options.timings.then(|| start.elapsed().as_millis() as u64),
    }
}

/// Runs a whole suite; items run concurrently and are reported in order.
pub fn run_suite(name: &str, options: &SuiteOptions) -> Result<SuiteReport> {
    let items = table(name).ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("unknown suite `{name}`"),
    })?;
    let selected: Vec<_> = items
        .iter()
        .filter(|(id, _, _)| {
            options
                .only
                .as_ref()
                .is_none_or(|o| o.iter().any(|x| x == id))
        })
        .collect();
    let reports: Vec<ItemReport> = std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|(id, title, f)| s.spawn(move || execute(id, title, *f, options)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite item panicked"))
            .collect()
    });
    let pass = reports.iter().all(ItemReport::passed);
    Ok(SuiteReport {
        suite: name.to_string(),
        depth: options.depth,
        items: reports,
        pass,
    })
}

fn group(spec: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(build_group(spec)?))
}

fn cyclic(m: usize) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(FiniteGroup::cyclic(m)?))
}

fn engine(spec: &str, depth: usize) -> Result<BgEngine> {
    BgEngine::new(group(spec)?, depth)
}

fn coords(c: &HomologyClass) -> Vec<String> {
    c.coords.iter().map(BigInt::to_string).collect()
}

fn class_json(e: &BgEngine, c: &HomologyClass) -> Value {
    serde_json::to_value(e.view(c)).expect("serializable")
}

fn odd_pairs(max_total: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in [1, 3, 5] {
        for l in [1, 3, 5] {
            if k + l < max_total {
                out.push((k, l));
            }
        }
    }
    out
}

const CYCLIC_ORDERS: [usize; 6] = [2, 3, 4, 5, 6, 8];

fn item_cyclic_law(o: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for m in CYCLIC_ORDERS {
        let e = BgEngine::new(cyclic(m)?, o.depth)?;
        for (k, l) in odd_pairs(11) {
            let a = e.lens_generator(k, Coeff::Integers)?;
            let b = e.lens_generator(l, Coeff::Integers)?;
            let c = e.lens_coefficient(&e.kreck(&a, &b)?)?;
            t.check(c.abs().is_one(), || {
                json!({ "m": m, "k": k, "l": l, "lhs": format!("{c}·a_{}", k + l + 1), "rhs": format!("±a_{}", k + l + 1) })
            });
        }
    }
    Ok(())
}

fn item_oracle_agreement(o: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for m in CYCLIC_ORDERS {
        let g = cyclic(m)?;
        let e = BgEngine::new(g.clone(), o.depth)?;
        let mut sign: Option<BigInt> = None;
        for (k, l) in odd_pairs(11) {
            let a = e.lens_generator(k, Coeff::Integers)?;
            let b = e.lens_generator(l, Coeff::Integers)?;
            let tate = e.lens_coefficient(&e.kreck(&a, &b)?)?;
            let (join, _) =
                join_product(g.clone(), (k - 1) / 2, (l - 1) / 2, Some(e.resolution()))?;
            let ratio = &tate * &join;
            let unit = tate.abs().is_one() && join.abs().is_one();
            let consistent = sign.as_ref().is_none_or(|s| *s == ratio);
            t.check(unit && consistent, || {
                json!({ "m": m, "k": k, "l": l, "tate": tate.to_string(), "join": join.to_string(),
                        "group_sign": sign.as_ref().map(BigInt::to_string) })
            });
            sign.get_or_insert(ratio);
        }
        if let Some(s) = sign {
            t.note(format!("Z/{m}: Tate/join sign {s}"));
        }
    }
    Ok(())
}

fn item_primary_vanishing(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for spec in [
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "product:cyclic:2,cyclic:2",
    ] {
        let e = engine(spec, 7)?;
        let n = BigInt::from(e.group().order());
        let unit = e.unit(Coeff::Integers)?;
        let basis = |k: usize| -> Result<Vec<HomologyClass>> {
            if k == 0 {
                Ok(vec![unit.clone()])
            } else {
                e.basis(k, Coeff::Integers)
            }
        };
        // largest totals first so the diagonal transfer is built once
        for total in (1..=6).rev() {
            for k in 0..=total {
                let l = total - k;
                for a in basis(k)? {
                    for b in basis(l)? {
                        let p = e.primary_mu(&a, &b)?;
                        t.check(p.is_zero(), || {
                            json!({ "group": spec, "k": k, "l": l, "a": coords(&a), "b": coords(&b),
                                    "lhs": class_json(&e, &p), "rhs": "0" })
                        });
                    }
                }
            }
        }
        let p = e.primary_mu(&unit, &unit)?;
        let expected = unit.scale(&n);
        t.check(
            p == expected,
            || json!({ "group": spec, "lhs": coords(&p), "rhs": coords(&expected) }),
        );
    }
    Ok(())
}

fn item_cross_vanishing(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    const TOP: usize = 8;
    for spec in ["product:cyclic:2,cyclic:2", "product:cyclic:2,cyclic:4"] {
        let e = engine(spec, TOP + 2)?;
        let (left, right) = e.factor_engines().expect("product group");
        let mut cross = Vec::new();
        for i in 1..TOP {
            for j in 1..TOP - i {
                for a in left.basis(i, Coeff::Integers)? {
                    for b in right.basis(j, Coeff::Integers)? {
                        cross.push((i, j, e.cross(&left, &a, &right, &b)?));
                    }
                }
            }
        }
        for (i, j, x) in &cross {
            for (p, q, y) in &cross {
                if x.degree + y.degree + 1 > TOP {
                    continue;
                }
                let z = e.kreck(x, y)?;
                t.check(z.is_zero(), || {
                    json!({ "group": spec, "left": [i, j, coords(x)], "right": [p, q, coords(y)],
                            "lhs": class_json(&e, &z), "rhs": "0" })
                });
            }
        }
    }
    Ok(())
}

fn item_benson_carlson(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    let e = engine("product:cyclic:2,cyclic:2", 12)?;
    let x = e.complete()?;
    let f2 = Coeff::Mod(2);
    for p in 2..=8i64 {
        let gp = e.tate(-p, f2)?;
        for q in 2..=(10 - p) {
            let gq = e.tate(-q, f2)?;
            let target = e.tate(-p - q, f2)?;
            for i in 0..gp.rank() {
                let u = TateClass::basis(x.clone(), &gp, i)?;
                for j in 0..gq.rank() {
                    let v = TateClass::basis(x.clone(), &gq, j)?;
                    let w = e.cup(&u, &v)?;
                    let c = w.coordinates(&target)?;
                    t.check(c.iter().all(Zero::is_zero), || {
                        json!({ "p": p, "q": q, "i": i, "j": j,
                                "lhs": c.iter().map(BigInt::to_string).collect::<Vec<_>>(), "rhs": "0" })
                    });
                }
            }
        }
    }
    Ok(())
}

fn item_quaternion(o: &SuiteOptions, t: &mut Tally) -> Result<()> {
    let e = engine("q8", o.depth.max(10))?;
    let h3 = e.basis(3, Coeff::Integers)?;
    t.check(
        h3.len() == 1 && h3[0].factors == [BigInt::from(8)],
        || json!({ "H_3": h3.iter().map(coords).collect::<Vec<_>>() }),
    );
    let p = e.kreck(&h3[0], &h3[0])?;
    let order = p.order();
    t.check(p.degree == 7 && p.factors == [BigInt::from(8)] && order == Some(BigInt::from(8)), || {
        json!({ "lhs": class_json(&e, &p), "order": order.map(|x| x.to_string()), "rhs": "order 8 in Z/8" })
    });
    Ok(())
}

fn item_covering(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for (m, n) in [(4, 2), (6, 3), (9, 3)] {
        let (gm, gn) = (cyclic(m)?, cyclic(n)?);
        let hom = GroupHom::cyclic_projection(gm.clone(), gn.clone())?;
        let src = BgEngine::new(gm, 10)?;
        let dst = BgEngine::new(gn, 10)?;
        let report = check_covering_naturality(&hom, &src, &dst, 3)?;
        t.checks += report.pairs.len();
        if !report.pass {
            t.failures
                .push(json!({ "covering": format!("Z/{m} -> Z/{n}"), "report": report }));
        } else {
            t.note(format!(
                "Z/{m} -> Z/{n}: global sign {:?}",
                report.global_sign
            ));
        }
    }
    Ok(())
}

fn item_transfer(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for (spec, elements) in [
        ("cyclic:4", [0usize, 2]),
        ("product:cyclic:2,cyclic:2", [0, 2]),
    ] {
        let g = group(spec)?;
        let sub = Subgroup::new(g.clone(), &elements)?;
        let eg = BgEngine::new(g, 10)?;
        let eh = BgEngine::new(cyclic(2)?, 10)?;
        let report = check_transfer_compatibility(&sub, &eg, &eh, 3)?;
        t.checks += report.pairs.len();
        if !report.pass {
            t.failures
                .push(json!({ "inclusion": format!("Z/2 in {spec}"), "report": report }));
        }
    }
    Ok(())
}

fn item_boundary(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for m in [2, 3, 5] {
        for k in 0..=1 {
            for l in 0..=1 {
                let r = check_boundary_relation(cyclic(m)?, k, l)?;
                t.check(r.pass, || serde_json::to_value(&r).expect("serializable"));
            }
        }
    }
    Ok(())
}

/// Tate ring checks on one group: `Ĥ^0`, `Ĥ^{-1}`, unit, graded
/// commutativity, associativity, duality and coboundary invariance.
fn tate_properties(spec: &str, t: &mut Tally) -> Result<()> {
    const DEPTH: usize = 10;
    let e = engine(spec, DEPTH)?;
    let x = e.complete()?;
    let z = Coeff::Integers;
    let order = BigInt::from(e.group().order());
    let h0 = e.tate(0, z)?;
    t.check(
        h0.invariant_factors() == [order.clone()] && h0.group.free_rank() == 0,
        || json!({ "group": spec, "lhs": h0.summary().pretty(), "rhs": format!("Z/{order}") }),
    );
    let hm1 = e.tate(-1, z)?;
    t.check(
        hm1.rank() == 0,
        || json!({ "group": spec, "lhs": hm1.summary().pretty(), "rhs": "0" }),
    );

    let basis = |n: i64| -> Result<Vec<TateClass>> {
        let g = e.tate(n, z)?;
        (0..g.rank())
            .map(|i| TateClass::basis(x.clone(), &g, i))
            .collect()
    };
    let same = |a: &TateClass, b: &TateClass| -> Result<bool> {
        let g = e.tate(a.degree, z)?;
        Ok(a.coordinates(&g)? == b.coordinates(&g)?)
    };
    let show = |a: &TateClass| -> Value {
        match e.tate(a.degree, z).and_then(|g| a.coordinates(&g)) {
            Ok(c) => {
                json!({ "degree": a.degree, "coords": c.iter().map(BigInt::to_string).collect::<Vec<_>>() })
            }
            Err(err) => json!({ "degree": a.degree, "error": err.to_string() }),
        }
    };

    let one = TateClass::unit(x.clone(), z)?;
    for n in -6..=6 {
        for u in basis(n)? {
            let left = e.cup(&one, &u)?;
            let right = e.cup(&u, &one)?;
            t.check(same(&left, &u)? && same(&right, &u)?, || {
                json!({ "group": spec, "law": "unit", "u": show(&u), "1u": show(&left), "u1": show(&right) })
            });
        }
    }

    for p in -4..=4i64 {
        for q in -4..=4i64 {
            for u in basis(p)? {
                for v in basis(q)? {
                    let uv = e.cup(&u, &v)?;
                    let vu = e.cup(&v, &u)?;
                    let signed = if (p * q) % 2 == 0 {
                        vu.clone()
                    } else {
                        vu.scale(&BigInt::from(-1))
                    };
                    t.check(same(&uv, &signed)?, || {
                        json!({ "group": spec, "law": "graded commutativity", "p": p, "q": q,
                                "uv": show(&uv), "vu": show(&vu) })
                    });
                }
            }
        }
    }

    let lim = DEPTH as i64 - 1;
    for p in -3..=3i64 {
        for q in -3..=3i64 {
            for r in -3..=3i64 {
                if (p + q).abs() > lim || (q + r).abs() > lim || (p + q + r).abs() > lim {
                    continue;
                }
                for u in basis(p)? {
                    for v in basis(q)? {
                        let uv = e.cup(&u, &v)?;
                        for w in basis(r)? {
                            let lhs = e.cup(&uv, &w)?;
                            let rhs = e.cup(&u, &e.cup(&v, &w)?)?;
                            t.check(same(&lhs, &rhs)?, || {
                                json!({ "group": spec, "law": "associativity", "degrees": [p, q, r],
                                        "lhs": show(&lhs), "rhs": show(&rhs) })
                            });
                        }
                    }
                }
            }
        }
    }

    for n in 0..=6i64 {
        let (a, b) = (e.tate(-n, z)?, e.tate(n, z)?);
        let perfect = pairing_is_perfect(&e, &a, &b, &h0)?;
        t.check(perfect, || {
            json!({ "group": spec, "law": "duality", "n": n, "lhs": a.summary().pretty(), "rhs": b.summary().pretty() })
        });
    }

    for p in -3..=3i64 {
        let dim = x.complex.rank(p - 1).unwrap_or(0);
        let c: Vec<BigInt> = (0..dim).map(|i| BigInt::from((i % 3) as i64 - 1)).collect();
        for u in basis(p)? {
            let shifted = u.add_coboundary(&c)?;
            for q in -3..=3i64 {
                for v in basis(q)? {
                    let lhs = e.cup(&shifted, &v)?;
                    let rhs = e.cup(&u, &v)?;
                    let dim_q = x.complex.rank(q - 1).unwrap_or(0);
                    let cq: Vec<BigInt> =
                        (0..dim_q).map(|i| BigInt::from((i % 2) as i64)).collect();
                    let rhs2 = e.cup(&u, &v.add_coboundary(&cq)?)?;
                    t.check(same(&lhs, &rhs)? && same(&rhs2, &rhs)?, || {
                        json!({ "group": spec, "law": "coboundary invariance", "p": p, "q": q,
                                "shifted": show(&lhs), "plain": show(&rhs) })
                    });
                }
            }
        }
    }
    Ok(())
}

/// `Ĥ^{-n} × Ĥ^n → Ĥ^0 ≅ Z/|G|` is perfect: equal finite orders and no
/// nonzero element of `Ĥ^{-n}` pairs trivially with everything.
fn pairing_is_perfect(
    e: &BgEngine,
    a: &crate::tate::TateGroup,
    b: &crate::tate::TateGroup,
    h0: &crate::tate::TateGroup,
) -> Result<bool> {
    let size = |g: &crate::tate::TateGroup| -> Option<BigInt> {
        (g.group.free_rank() == 0).then(|| g.invariant_factors().iter().product())
    };
    match (size(a), size(b)) {
        (Some(x), Some(y)) if x == y => {}
        _ => return Ok(false),
    }
    let x = e.complete()?;
    let ua: Vec<TateClass> = (0..a.rank())
        .map(|i| TateClass::basis(x.clone(), a, i))
        .collect::<Result<_>>()?;
    let ub: Vec<TateClass> = (0..b.rank())
        .map(|j| TateClass::basis(x.clone(), b, j))
        .collect::<Result<_>>()?;
    let modulus = h0.invariant_factors()[0].clone();
    let mut pairing = vec![vec![BigInt::zero(); ub.len()]; ua.len()];
    for (i, u) in ua.iter().enumerate() {
        for (j, v) in ub.iter().enumerate() {
            pairing[i][j] = e.cup(u, v)?.coordinates(h0)?[0].clone();
        }
    }
    // enumerate Ĥ^{-n}; orders are small in every group checked here
    let orders: Vec<u64> = a
        .invariant_factors()
        .iter()
        .map(|d| d.try_into().unwrap_or(u64::MAX))
        .collect();
    let total: u64 = orders.iter().product();
    if total > 1 << 20 {
        return Err(Error::ResourceCap(format!(
            "pairing enumeration over {total} elements"
        )));
    }
    let mut digits = vec![0u64; orders.len()];
    for _ in 1..total {
        for (d, o) in digits.iter_mut().zip(&orders) {
            *d += 1;
            if *d < *o {
                break;
            }
            *d = 0;
        }
        let trivial = (0..ub.len()).all(|j| {
            let s: BigInt = digits
                .iter()
                .zip(&pairing)
                .map(|(c, row)| BigInt::from(*c) * &row[j])
                .sum();
            (s % &modulus).is_zero()
        });
        if trivial {
            return Ok(false);
        }
    }
    Ok(true)
}

fn item_tate_properties(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for spec in [
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "product:cyclic:2,cyclic:2",
        "q8",
    ] {
        tate_properties(spec, t)?;
    }
    Ok(())
}

fn item_resolution_independence(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    const DEPTH: usize = 9;
    for m in [2, 3] {
        let g = cyclic(m)?;
        let periodic = BgEngine::new(g.clone(), DEPTH)?;
        let generic = BgEngine::from_resolution(Arc::new(generic_resolution(g, DEPTH)?));
        let f = comparison_map(
            generic.resolution().complex().clone(),
            generic.resolution().augmentation(),
            periodic.resolution(),
            7,
        )?;
        let mut sign: Option<i8> = None;
        for k in 1..=3 {
            for l in 1..=3 {
                for a in generic.basis(k, Coeff::Integers)? {
                    for b in generic.basis(l, Coeff::Integers)? {
                        let lhs = push_class(&f, &generic, &periodic, &generic.kreck(&a, &b)?)?;
                        let fa = push_class(&f, &generic, &periodic, &a)?;
                        let fb = push_class(&f, &generic, &periodic, &b)?;
                        let rhs = periodic.kreck(&fa, &fb)?;
                        let s = lhs.sign_relative_to(&rhs);
                        let ok = match (s, sign) {
                            (None, _) => false,
                            (Some(0), _) | (_, None) => true,
                            (Some(x), Some(y)) => x == y,
                        };
                        t.check(ok, || {
                            json!({ "m": m, "k": k, "l": l, "lhs": class_json(&periodic, &lhs),
                                    "rhs": class_json(&periodic, &rhs), "global_sign": sign })
                        });
                        if let Some(x @ (1 | -1)) = s {
                            sign.get_or_insert(x);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn item_coefficient_naturality(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for spec in ["cyclic:4", "product:cyclic:2,cyclic:2"] {
        let e = engine(spec, 6)?;
        for k in 1..=2 {
            for l in 1..=(3 - k) {
                for a in e.basis(k, Coeff::Integers)? {
                    for b in e.basis(l, Coeff::Integers)? {
                        let lhs = e.reduce_mod(&e.kreck(&a, &b)?, 2)?;
                        let rhs = e.kreck(&e.reduce_mod(&a, 2)?, &e.reduce_mod(&b, 2)?)?;
                        t.check(lhs == rhs, || {
                            json!({ "group": spec, "k": k, "l": l, "a": coords(&a), "b": coords(&b),
                                    "lhs": coords(&lhs), "rhs": coords(&rhs) })
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

const PROPERTY_GROUPS: [&str; 7] = [
    "cyclic:2",
    "cyclic:3",
    "cyclic:5",
    "cyclic:8",
    "q8",
    "product:cyclic:2,cyclic:2",
    "product:cyclic:2,cyclic:4",
];

fn prop_resolutions(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for spec in PROPERTY_GROUPS {
        let e = engine(spec, 8)?;
        let r = e.resolution().verify()?;
        t.check(r.pass, || json!({ "group": spec, "report": r }));
    }
    let g = cyclic(6)?;
    let r = generic_resolution(g, 6)?.verify()?;
    t.check(
        r.pass,
        || json!({ "group": "cyclic:6 (generic)", "report": r }),
    );
    Ok(())
}

fn prop_complete(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for spec in PROPERTY_GROUPS {
        let e = engine(spec, 8)?;
        let x = e.complete()?;
        let r = x.complex.verify_exactness(-6..=6)?;
        t.check(r.pass, || json!({ "group": spec, "report": r }));
    }
    Ok(())
}

fn prop_bilinear(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for spec in ["cyclic:4", "product:cyclic:2,cyclic:2", "q8"] {
        let e = engine(spec, 10)?;
        for k in 1..=3 {
            for l in 1..=3 {
                let bk = e.basis(k, Coeff::Integers)?;
                let bl = e.basis(l, Coeff::Integers)?;
                for a in &bk {
                    for a2 in &bk {
                        for b in &bl {
                            let sum = e.kreck(&a.add(a2)?, b)?;
                            let split = e.kreck(a, b)?.add(&e.kreck(a2, b)?)?;
                            t.check(sum == split && sum.degree == k + l + 1, || {
                                json!({ "group": spec, "k": k, "l": l, "lhs": coords(&sum), "rhs": coords(&split) })
                            });
                            let sum = e.kreck(b, &a.add(a2)?)?;
                            let split = e.kreck(b, a)?.add(&e.kreck(b, a2)?)?;
                            t.check(sum == split, || {
                                json!({ "group": spec, "k": l, "l": k, "lhs": coords(&sum), "rhs": coords(&split) })
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn prop_cyclic_order(o: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for m in 2..=8 {
        let e = BgEngine::new(cyclic(m)?, o.depth)?;
        for (k, l) in odd_pairs(11) {
            let a = e.basis(k, Coeff::Integers)?.remove(0);
            let b = e.basis(l, Coeff::Integers)?.remove(0);
            let p = e.kreck(&a, &b)?;
            t.check(p.order() == Some(BigInt::from(m)), || {
                json!({ "m": m, "k": k, "l": l, "lhs": coords(&p), "order": p.order().map(|x| x.to_string()) })
            });
        }
    }
    Ok(())
}

fn prop_associative(o: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for spec in ["cyclic:2", "cyclic:3", "cyclic:4", "q8"] {
        let e = engine(spec, o.depth)?;
        let d = e.depth();
        for k in 1..d {
            for l in 1..d {
                for r in 1..d {
                    if k + l + r + 4 > d {
                        continue;
                    }
                    for a in e.basis(k, Coeff::Integers)? {
                        for b in e.basis(l, Coeff::Integers)? {
                            for c in e.basis(r, Coeff::Integers)? {
                                let lhs = e.kreck(&e.kreck(&a, &b)?, &c)?;
                                let rhs = e.kreck(&a, &e.kreck(&b, &c)?)?;
                                t.check(lhs.sign_relative_to(&rhs).is_some(), || {
                                    json!({ "group": spec, "degrees": [k, l, r], "lhs": coords(&lhs), "rhs": coords(&rhs) })
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn prop_primary_unit(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for spec in ["cyclic:2", "cyclic:3", "q8", "product:cyclic:2,cyclic:2"] {
        let e = engine(spec, 3)?;
        let n = BigInt::from(e.group().order());
        let unit = e.unit(Coeff::Integers)?;
        let once = e.primary_mu(&unit, &unit)?;
        let left = e.primary_mu(&once, &unit)?;
        let right = e.primary_mu(&unit, &once)?;
        let expected = unit.scale(&(&n * &n));
        t.check(once == unit.scale(&n) && left == expected && right == expected, || {
            json!({ "group": spec, "once": coords(&once), "left": coords(&left), "right": coords(&right) })
        });
    }
    Ok(())
}

fn prop_lens_models(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for m in [2, 3, 5] {
        for k in 0..=3 {
            let model = lens_complex(cyclic(m)?, k)?;
            let cx = model.complex.coinvariants();
            let top = 2 * k + 1;
            for n in 0..=top {
                let h =
                    crate::complexes::GroupSummary::of(&cx.homology(n as i64, Coeff::Integers)?);
                let expected = if n == 0 || n == top {
                    "Z".to_string()
                } else if n % 2 == 1 {
                    format!("Z/{m}")
                } else {
                    "0".to_string()
                };
                t.check(
                    h.pretty() == expected,
                    || json!({ "m": m, "k": k, "degree": n, "lhs": h.pretty(), "rhs": expected }),
                );
            }
        }
    }
    Ok(())
}

fn prop_join_units(_: &SuiteOptions, t: &mut Tally) -> Result<()> {
    for m in [2, 3, 4, 5] {
        for k in 0..=1 {
            for l in 0..=1 {
                let (c, _) = join_product(cyclic(m)?, k, l, None)?;
                t.check(
                    c.abs().is_one(),
                    || json!({ "m": m, "k": k, "l": l, "coefficient": c.to_string() }),
                );
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nonsense", &SuiteOptions::default()).is_err());
        assert!(suite_items("paper").unwrap().len() == 12);
    }

    #[test]
    fn boundary_item_passes() {
        let r = run_item("paper", "9", &SuiteOptions::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checks, 12);
        assert!(r.elapsed_ms.is_none());
    }
}
