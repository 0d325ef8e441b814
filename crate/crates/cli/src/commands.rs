use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde_json::{json, Value};

use bgprod_core::complexes::GroupSummary;
use bgprod_core::exactlinalg::{Coeff, IntMatrix};
use bgprod_core::groupalg::{build_group, FiniteGroup, GroupHom, Structure, Subgroup};
use bgprod_core::joinoracle::join_product;
use bgprod_core::products::{
    check_covering_naturality, check_transfer_compatibility, product_table, BasisTag, BgEngine,
    ClassView, HomologyClass, NaturalityReport,
};
use bgprod_core::resolutions::transfer_map;
use bgprod_core::suite::{run_suite, suite_items, SuiteOptions};
use bgprod_core::{Error, Result};

use crate::config::Settings;
use crate::report::Report;
use crate::Command;

pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub exit: u8,
}

impl Outcome {
    fn ok(report: Report, text: String) -> Self {
        Outcome {
            report,
            text,
            exit: 0,
        }
    }
}

pub fn run(command: &Command, settings: &Settings) -> Result<Outcome> {
    let start = Instant::now();
    let echo = serde_json::to_value(command).expect("serializable");
    let mut outcome = match command {
        Command::Homology {
            group,
            min_degree,
            max_degree,
            coeff,
        } => homology(
            echo,
            group,
            *min_degree,
            *max_degree,
            settings.coeff(coeff)?,
            settings,
        ),
        Command::Tate {
            group,
            from,
            to,
            coeff,
        } => tate(echo, group, *from, *to, settings.coeff(coeff)?, settings),
        Command::Product {
            group,
            k,
            l,
            i,
            j,
            coeff,
            primary,
        } => product(
            echo,
            group,
            (*k, *i),
            (*l, *j),
            settings.coeff(coeff)?,
            *primary,
            settings,
        ),
        Command::Table {
            group,
            kmax,
            lmax,
            coeff,
        } => table(echo, group, *kmax, *lmax, settings.coeff(coeff)?, settings),
        Command::Join { m, k, l } => join(echo, *m, *k, *l, settings),
        Command::Verify { suite, item } => verify(echo, suite, item, settings),
        Command::Transfer {
            group,
            subgroup,
            as_group,
            max_degree,
            kmax,
        } => transfer(
            echo,
            group,
            subgroup,
            as_group.as_deref(),
            *max_degree,
            *kmax,
            settings,
        ),
        Command::Covering {
            source,
            target,
            map,
            kmax,
        } => covering(echo, source, target, map.as_deref(), *kmax, settings),
    }?;
    outcome.report.timings = Some(json!({ "elapsed_ms": start.elapsed().as_millis() as u64 }));
    if settings.timings {
        let _ = write!(
            outcome.text,
            "\nelapsed: {} ms",
            start.elapsed().as_millis()
        );
    }
    Ok(outcome)
}

fn group(spec: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(build_group(spec)?))
}

fn indices(list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(|s| {
            s.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("`{s}` is not an element index"),
            })
        })
        .collect()
}

fn summary_json(degree: i64, s: &GroupSummary) -> Value {
    json!({ "degree": degree, "free_rank": s.free_rank, "torsion": s.torsion })
}

fn view_text(v: &ClassView) -> String {
    let basis = match v.basis {
        BasisTag::Snf => "snf",
        BasisTag::Lens => "lens",
    };
    format!("{basis}[{}] in H_{}", v.coords.join(", "), v.degree)
}

fn homology(
    echo: Value,
    spec: &str,
    lo: usize,
    hi: usize,
    coeff: Coeff,
    s: &Settings,
) -> Result<Outcome> {
    if lo > hi {
        return Err(Error::DegreeOutOfRange(format!(
            "empty degree range {lo}..{hi}"
        )));
    }
    let g = group(spec)?;
    let e = BgEngine::new(g.clone(), s.depth_for(hi + 1)?)?;
    let mut rows = Vec::new();
    let mut text = format!("H_*(BG; {coeff}) for G = {}\n", g.name());
    for n in lo..=hi {
        let sum = GroupSummary::of(&*e.homology(n, coeff)?);
        let _ = writeln!(text, "  H_{n} = {}", sum.pretty());
        rows.push(summary_json(n as i64, &sum));
    }
    let result = json!({ "coeff": coeff.to_string(), "depth": e.depth(), "homology": rows });
    Ok(Outcome::ok(
        Report::new(echo, result).with_group(&g),
        text.trim_end().to_string(),
    ))
}

fn tate(
    echo: Value,
    spec: &str,
    from: i64,
    to: i64,
    coeff: Coeff,
    s: &Settings,
) -> Result<Outcome> {
    if from > to {
        return Err(Error::DegreeOutOfRange(format!(
            "empty degree range {from}..{to}"
        )));
    }
    let g = group(spec)?;
    let need = from.abs().max(to.abs()) as usize + 1;
    let e = BgEngine::new(g.clone(), s.depth_for(need)?)?;
    let mut rows = Vec::new();
    let mut text = format!("Ĥ^*(G; {coeff}) for G = {}\n", g.name());
    for n in from..=to {
        let sum = e.tate(n, coeff)?.summary();
        let _ = writeln!(text, "  Ĥ^{n} = {}", sum.pretty());
        rows.push(summary_json(n, &sum));
    }
    let result = json!({ "coeff": coeff.to_string(), "depth": e.depth(), "tate": rows });
    Ok(Outcome::ok(
        Report::new(echo, result).with_group(&g),
        text.trim_end().to_string(),
    ))
}

/// Generator `i` of `H_k`: the lens generator in odd degrees of cyclic
/// groups, `ι` in degree 0, an SNF generator otherwise.
fn generator(e: &BgEngine, k: usize, i: usize, coeff: Coeff) -> Result<HomologyClass> {
    if k == 0 && i == 0 {
        return e.unit(coeff);
    }
    if e.is_cyclic() && k % 2 == 1 && i == 0 {
        return e.lens_generator(k, coeff);
    }
    let mut basis = e.basis(k, coeff)?;
    if i >= basis.len() {
        return Err(Error::DimensionMismatch(format!(
            "H_{k} has {} generators, index {i} requested",
            basis.len()
        )));
    }
    Ok(basis.swap_remove(i))
}

fn product(
    echo: Value,
    spec: &str,
    (k, i): (usize, usize),
    (l, j): (usize, usize),
    coeff: Coeff,
    primary: bool,
    s: &Settings,
) -> Result<Outcome> {
    let g = group(spec)?;
    let need = if primary { k + l + 1 } else { k + l + 3 };
    let e = BgEngine::new(g.clone(), s.depth_for(need)?)?;
    if !primary && (k == 0 || l == 0) {
        return Err(Error::DegreeOutOfRange(format!(
            "secondary product needs k, l ≥ 1, got ({k}, {l})"
        )));
    }
    let a = generator(&e, k, i, coeff)?;
    let b = generator(&e, l, j, coeff)?;
    let p = if primary {
        e.primary_mu(&a, &b)?
    } else {
        e.kreck(&a, &b)?
    };
    let (va, vb, vp) = (e.view(&a), e.view(&b), e.view(&p));
    let symbol = if primary { "μ" } else { "∗" };
    let text = format!(
        "{}\n  a = {}\n  b = {}\n  a {symbol} b = {}",
        g.name(),
        view_text(&va),
        view_text(&vb),
        view_text(&vp)
    );
    let result = json!({
        "kind": if primary { "primary" } else { "secondary" },
        "coeff": coeff.to_string(),
        "depth": e.depth(),
        "a": va, "b": vb, "product": vp,
    });
    Ok(Outcome::ok(Report::new(echo, result).with_group(&g), text))
}

fn table(
    echo: Value,
    spec: &str,
    kmax: usize,
    lmax: usize,
    coeff: Coeff,
    s: &Settings,
) -> Result<Outcome> {
    let g = group(spec)?;
    let e = BgEngine::new(g.clone(), s.depth_for(kmax + lmax + 3)?)?;
    let t = product_table(&e, kmax, lmax, coeff)?;
    let mut text = format!("secondary products on {} over {coeff}\n", g.name());
    for entry in &t.entries {
        let _ = writeln!(
            text,
            "  g{}_{} ∗ g{}_{} = {}",
            entry.k,
            entry.i,
            entry.l,
            entry.j,
            view_text(&entry.product)
        );
    }
    if t.entries.is_empty() {
        text.push_str("  (no generator pairs)\n");
    }
    let result = json!({ "depth": e.depth(), "table": t });
    Ok(Outcome::ok(
        Report::new(echo, result).with_group(&g),
        text.trim_end().to_string(),
    ))
}

fn join(echo: Value, m: usize, k: usize, l: usize, s: &Settings) -> Result<Outcome> {
    let g = Arc::new(FiniteGroup::cyclic(m)?);
    let e = BgEngine::new(g.clone(), s.depth_for(2 * (k + l) + 5)?)?;
    let (c, jp) = join_product(g.clone(), k, l, Some(e.resolution()))?;
    let a = e.lens_generator(2 * k + 1, Coeff::Integers)?;
    let b = e.lens_generator(2 * l + 1, Coeff::Integers)?;
    let tate = e.lens_coefficient(&e.kreck(&a, &b)?)?;
    let top = 2 * (k + l) + 3;
    let text = format!(
        "Z/{m}: q_*[S^{} * S^{}] = {c}·a_{top}\n  boundary relation: {}\n  Tate route: a_{} ∗ a_{} = {tate}·a_{top}",
        2 * k + 1,
        2 * l + 1,
        if jp.boundary_ok { "holds" } else { "FAILS" },
        2 * k + 1,
        2 * l + 1,
    );
    let result = json!({ "join": jp, "tate_coefficient": tate.to_string(), "depth": e.depth() });
    let exit = if jp.boundary_ok { 0 } else { 1 };
    Ok(Outcome {
        report: Report::new(echo, result).with_group(&g),
        text,
        exit,
    })
}

fn verify(echo: Value, suite: &str, items: &[String], s: &Settings) -> Result<Outcome> {
    let known = suite_items(suite).ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("unknown suite `{suite}`"),
    })?;
    if let Some(bad) = items.iter().find(|x| !known.iter().any(|(id, _)| id == x)) {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("suite `{suite}` has no item `{bad}`"),
        });
    }
    let options = SuiteOptions {
        depth: s.depth.unwrap_or(bgprod_core::resolutions::DEFAULT_DEPTH),
        timings: s.timings,
        only: (!items.is_empty()).then(|| items.to_vec()),
    };
    let report = run_suite(suite, &options)?;
    let mut text = format!("suite {suite} (depth {})\n", report.depth);
    for item in &report.items {
        let status = match item.status {
            bgprod_core::suite::ItemStatus::Pass => "PASS",
            bgprod_core::suite::ItemStatus::Fail => "FAIL",
            bgprod_core::suite::ItemStatus::ResourceCap => "CAP ",
        };
        let _ = write!(
            text,
            "  {status} {:>3}  {} ({} checks)",
            item.id, item.title, item.checks
        );
        if let Some(ms) = item.elapsed_ms {
            let _ = write!(text, " {ms} ms");
        }
        text.push('\n');
        for f in &item.failures {
            let _ = writeln!(text, "        {f}");
        }
    }
    let exit = if report.resource_capped() {
        3
    } else if report.pass {
        0
    } else {
        1
    };
    let result = serde_json::to_value(&report).expect("serializable");
    Ok(Outcome {
        report: Report::new(echo, result),
        text: text.trim_end().to_string(),
        exit,
    })
}

fn matrix_json(m: &IntMatrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    json!(rows)
}

fn naturality_text(r: &NaturalityReport) -> String {
    let mut text = String::new();
    for p in &r.pairs {
        let sign = match p.sign {
            Some(1) => "equal",
            Some(-1) => "opposite",
            Some(_) => "both zero",
            None => "DIFFER",
        };
        let _ = writeln!(
            text,
            "  (k={}, i={}) (l={}, j={}): lhs {} rhs {} [{sign}]",
            p.k,
            p.i,
            p.l,
            p.j,
            p.lhs.coords.join(","),
            p.rhs.coords.join(",")
        );
    }
    let _ = write!(text, "  {}", if r.pass { "PASS" } else { "FAIL" });
    text
}

fn transfer(
    echo: Value,
    spec: &str,
    elements: &str,
    as_group: Option<&str>,
    max_degree: usize,
    kmax: Option<usize>,
    s: &Settings,
) -> Result<Outcome> {
    let g = group(spec)?;
    let sub = Subgroup::new(g.clone(), &indices(elements)?)?;
    let h = match as_group {
        Some(spec) => {
            let h = group(spec)?;
            if *h != *sub.group {
                return Err(Error::NotSubgroup(format!(
                    "the subgroup does not have the multiplication table of {}",
                    h.name()
                )));
            }
            h
        }
        None => sub.group.clone(),
    };
    let sub = Subgroup {
        group: h.clone(),
        ..sub
    };
    let need = (max_degree + 1).max(kmax.map_or(0, |k| 2 * k + 4));
    let depth = s.depth_for(need)?;
    let eg = BgEngine::new(g.clone(), depth)?;
    let eh = BgEngine::new(h.clone(), depth)?;
    let tr = transfer_map(&sub, eg.resolution(), eh.resolution(), max_degree as i64)?;
    let mut rows = Vec::new();
    let mut text = format!(
        "transfer {} → {} (index {})\n",
        g.name(),
        h.name(),
        sub.index()
    );
    for n in 0..=max_degree {
        let (hg, hh, m) = tr.on_homology(n, eg.resolution(), eh.resolution(), Coeff::Integers)?;
        let (sg, sh) = (GroupSummary::of(&hg), GroupSummary::of(&hh));
        let _ = writeln!(
            text,
            "  H_{n}: {} → {}  matrix {}",
            sg.pretty(),
            sh.pretty(),
            matrix_json(&m)
        );
        rows.push(json!({
            "degree": n,
            "source": summary_json(n as i64, &sg),
            "target": summary_json(n as i64, &sh),
            "matrix": matrix_json(&m),
        }));
    }
    let mut exit = 0;
    let mut result = json!({ "depth": depth, "index": sub.index(), "homology": rows });
    if let Some(kmax) = kmax {
        let r = check_transfer_compatibility(&sub, &eg, &eh, kmax)?;
        text.push_str(&naturality_text(&r));
        if !r.pass {
            exit = 1;
        }
        result["compatibility"] = serde_json::to_value(&r).expect("serializable");
    }
    Ok(Outcome {
        report: Report::new(echo, result).with_group(&g).with_group(&h),
        text: text.trim_end().to_string(),
        exit,
    })
}

fn covering(
    echo: Value,
    source: &str,
    target: &str,
    map: Option<&str>,
    kmax: usize,
    s: &Settings,
) -> Result<Outcome> {
    let (gs, gt) = (group(source)?, group(target)?);
    let hom = match map {
        Some(list) => GroupHom::new(gs.clone(), gt.clone(), indices(list)?)?,
        None => match (gs.structure(), gt.structure()) {
            (Structure::Cyclic(_), Structure::Cyclic(_)) => {
                GroupHom::cyclic_projection(gs.clone(), gt.clone())?
            }
            _ => {
                return Err(Error::InvalidHom(
                    "--map is required unless both groups are cyclic".into(),
                ))
            }
        },
    };
    let depth = s.depth_for(2 * kmax + 4)?;
    let src = BgEngine::new(gs.clone(), depth)?;
    let dst = BgEngine::new(gt.clone(), depth)?;
    let r = check_covering_naturality(&hom, &src, &dst, kmax)?;
    let text = format!(
        "covering {} → {} (kernel order {})\n{}",
        gs.name(),
        gt.name(),
        r.factor,
        naturality_text(&r)
    );
    let exit = if r.pass { 0 } else { 1 };
    let result = json!({ "depth": depth, "naturality": r });
    Ok(Outcome {
        report: Report::new(echo, result).with_group(&gs).with_group(&gt),
        text,
        exit,
    })
}
