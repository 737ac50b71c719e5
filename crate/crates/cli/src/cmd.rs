use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use latticeforge_core::bmn::build_bmn;
use latticeforge_core::cambrian::{build_cambrian, CambrianSpec};
use latticeforge_core::dot::to_dot;
use latticeforge_core::embedding::{
    generator_embedding_search_with_budget, irredundant_generators, si_embedding_scan,
    DEFAULT_SEARCH_BUDGET,
};
use latticeforge_core::identities::{
    by_name, gazpacho, holds_with_budget, GazpachoIndex, Identity, Verdict, DEFAULT_BUDGET,
};
use latticeforge_core::json::{
    lattice_to_json, measure_from_json, measure_to_json, read_lattice, write_lattice,
};
use latticeforge_core::lattice::DependencyMode;
use latticeforge_core::measures::{
    bm1_measure, bm2_measure, canonical_measure, hom_properties, measure_to_hom,
};
use latticeforge_core::reproduce::{self, Options};
use latticeforge_core::weak_order::build_permutohedron;
use latticeforge_core::{FiniteLattice, LatticeMap};
use serde_json::json;

use crate::{
    BuildArgs, CheckArgs, EmbedArgs, EmbedScanArgs, Kind, MeasureArgs, MeasureKind, ReproduceArgs,
};

fn verdict_code(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<FiniteLattice> {
    read_lattice(path).with_context(|| format!("reading {}", path.display()))
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("{kind} needs --{flag}"))
}

/// An element by name, falling back to a numeric id.
fn element(l: &FiniteLattice, s: &str) -> Result<usize> {
    if let Some(x) = l.id_of_name(s) {
        return Ok(x);
    }
    let x: usize = s.parse().map_err(|_| anyhow!("no element named {s:?}"))?;
    if x >= l.len() {
        bail!("element id {x} out of range");
    }
    Ok(x)
}

pub fn build(a: BuildArgs) -> Result<ExitCode> {
    let l = match a.kind {
        Kind::Permutohedron => build_permutohedron(need(a.n, "n", "permutohedron")?)?,
        Kind::Tamari => build_cambrian(&CambrianSpec::tamari(need(a.n, "n", "tamari")?))?,
        Kind::Cambrian => build_cambrian(&CambrianSpec::new(need(a.n, "n", "cambrian")?, &a.u)?)?,
        Kind::Bmn => {
            let b = build_bmn(need(a.m, "m", "bmn")?, need(a.n, "n", "bmn")?)?;
            Arc::unwrap_or_clone(b.lattice)
        }
        Kind::Double => {
            let l = load(&need(a.lattice, "lattice", "double")?)?;
            let lo = element(&l, &need(a.a, "a", "double")?)?;
            let hi = match &a.b {
                Some(b) => element(&l, b)?,
                None => lo,
            };
            l.double_interval(lo, hi)?.0
        }
        Kind::Product => {
            let l = load(&need(a.lattice, "lattice", "product")?)?;
            l.product(&load(&need(a.other, "other", "product")?)?)?
        }
        Kind::Dual => load(&need(a.lattice, "lattice", "dual")?)?.dual()?,
    };
    match &a.out {
        Some(p) => write_lattice(p, &l)?,
        None => println!("{}", lattice_to_json(&l)),
    }
    eprintln!("{} elements", l.len());
    Ok(ExitCode::SUCCESS)
}

pub fn analyze(path: &Path, as_json: bool) -> Result<ExitCode> {
    let l = load(path)?;
    let si = l.len() > 1 && l.is_subdirectly_irreducible()?;
    let report = json!({
        "size": l.len(),
        "join_irreducibles": l.join_irreducibles().len(),
        "meet_irreducibles": l.meet_irreducibles().len(),
        "bounded": l.is_bounded(),
        "semidistributive": l.is_semidistributive(),
        "subdirectly_irreducible": si,
        "d_edges": l.join_dependency(DependencyMode::Arrows).len(),
    });
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for (k, v) in report.as_object().expect("object") {
            println!("{k}: {v}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn identity(a: &CheckArgs) -> Result<Identity> {
    if let Some(g) = &a.gzp {
        return Ok(gazpacho(&GazpachoIndex::parse(g)?)?);
    }
    let name = a.identity.as_deref().expect("clap requires one of the two");
    let path = Path::new(name);
    if path.exists() {
        return Ok(Identity::from_json(&std::fs::read_to_string(path)?)?);
    }
    Ok(by_name(name)?)
}

pub fn check(a: CheckArgs) -> Result<ExitCode> {
    let l = load(&a.lattice)?;
    let id = identity(&a)?;
    let verdict = holds_with_budget(&l, &id, a.parallel, a.budget.unwrap_or(DEFAULT_BUDGET))?;
    match &verdict {
        Verdict::Holds => println!("{}: Holds", id.name),
        Verdict::Fails(ce) => {
            let names: Vec<&str> = ce.assignment.iter().map(|&x| l.name(x)).collect();
            println!("{}: Fails", id.name);
            println!("  assignment: [{}]", names.join(", "));
            println!("  lhs = {}, rhs = {}", l.name(ce.lhs), l.name(ce.rhs));
        }
    }
    Ok(verdict_code(verdict.holds() != a.expect_fail))
}

pub fn dot(path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let l = load(path)?;
    let title = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("lattice");
    emit(out, &to_dot(&l, title)?)?;
    Ok(ExitCode::SUCCESS)
}

fn generators(k: &FiniteLattice, names: &[String]) -> Result<Vec<usize>> {
    if names.is_empty() {
        return Ok(irredundant_generators(k));
    }
    names.iter().map(|s| element(k, s)).collect()
}

/// `n=6,u=4,5`
fn parse_cambrian(s: &str) -> Result<CambrianSpec> {
    let mut n = None;
    let mut u = Vec::new();
    let mut in_u = false;
    for part in s.split(',') {
        let part = part.trim();
        if let Some(v) = part.strip_prefix("n=") {
            n = Some(v.parse()?);
            in_u = false;
        } else if let Some(v) = part.strip_prefix("u=") {
            in_u = true;
            if !v.is_empty() {
                u.push(v.parse()?);
            }
        } else if in_u {
            u.push(part.parse()?);
        } else {
            bail!("cannot parse {s:?}; expected e.g. n=6,u=4,5");
        }
    }
    Ok(CambrianSpec::new(
        n.ok_or_else(|| anyhow!("missing n= in {s:?}"))?,
        &u,
    )?)
}

fn report_map(map: &LatticeMap, out: Option<&Path>) -> Result<()> {
    let s = &map.source;
    let t = &map.target;
    for x in s.elements() {
        println!("  {} -> {}", s.name(x), t.name(map.image(x)));
    }
    if let Some(p) = out {
        std::fs::write(
            p,
            serde_json::to_string_pretty(&json!({ "images": map.images }))?,
        )?;
    }
    Ok(())
}

pub fn embed(a: EmbedArgs) -> Result<ExitCode> {
    let k = Arc::new(load(&a.source)?);
    let (l, label) = match (&a.target, &a.target_cambrian) {
        (Some(p), _) => (load(p)?, p.display().to_string()),
        (None, Some(s)) => {
            let spec = parse_cambrian(s)?;
            (build_cambrian(&spec)?, spec.to_string())
        }
        (None, None) => unreachable!("clap requires a target"),
    };
    let gens = generators(&k, &a.gens)?;
    let found = generator_embedding_search_with_budget(
        &k,
        &Arc::new(l),
        &gens,
        a.budget.unwrap_or(DEFAULT_SEARCH_BUDGET),
    )?;
    match &found {
        Some(map) => {
            println!("embedding into {label}:");
            report_map(map, a.out.as_deref())?;
        }
        None => println!("no embedding into {label}"),
    }
    Ok(verdict_code(found.is_some() != a.expect_fail))
}

pub fn embed_scan(a: EmbedScanArgs) -> Result<ExitCode> {
    let k = Arc::new(load(&a.source)?);
    let gens = generators(&k, &a.gens)?;
    for n in 1..=a.max_n {
        match si_embedding_scan(&k, &gens, n)? {
            Some((spec, map)) => {
                println!("n = {n}: embeds into {spec}");
                report_map(&map, None)?;
                return Ok(verdict_code(!a.expect_fail));
            }
            None => println!("n = {n}: no embedding into any A_U({n}), hence none into P({n})"),
        }
    }
    Ok(verdict_code(a.expect_fail))
}

pub fn measure(a: MeasureArgs) -> Result<ExitCode> {
    let mu = match a.kind {
        MeasureKind::Bm1 => bm1_measure(need(a.m, "m", "bm1")?)?,
        MeasureKind::Bm2 => bm2_measure(need(a.m, "m", "bm2")?)?,
        MeasureKind::Canonical => {
            let spec = CambrianSpec::new(need(a.n, "n", "canonical")?, &a.u)?;
            canonical_measure(&spec, Arc::new(build_cambrian(&spec)?))?
        }
    };
    emit(a.out.as_deref(), &(measure_to_json(&mu) + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

pub fn measure_analyze(path: &Path, out: Option<&Path>) -> Result<ExitCode> {
    let mu = measure_from_json(&std::fs::read_to_string(path)?)?;
    println!("chain: {}", mu.labels().join(" < "));
    println!(
        "target: {} elements, mapping into {}",
        mu.target().len(),
        mu.spec()
    );
    if let Some((x, y, z)) = mu.polarity_violation() {
        let lab = |k: usize| mu.labels()[k - 1].as_str();
        println!(
            "polarized: false (triple {} < {} < {})",
            lab(x),
            lab(y),
            lab(z)
        );
        return Ok(ExitCode::from(1));
    }
    println!("polarized: true");
    let phi = measure_to_hom(&mu)?;
    let props = hom_properties(&mu, &phi)?;
    println!("zero_empty: {}", props.zero_empty);
    println!("injective: {}", props.injective);
    println!("lattice_hom: {}", props.lattice_hom);
    if let Some(p) = out {
        std::fs::write(
            p,
            serde_json::to_string_pretty(&json!({ "images": phi.images }))?,
        )?;
    }
    Ok(verdict_code(props.injective && props.lattice_hom))
}

pub fn reproduce(a: ReproduceArgs) -> Result<ExitCode> {
    let known = reproduce::claim_ids();
    let only: Vec<&str> = a
        .only
        .iter()
        .map(|s| {
            known
                .iter()
                .copied()
                .find(|k| k.eq_ignore_ascii_case(s))
                .ok_or_else(|| anyhow!("unknown claim {s}"))
        })
        .collect::<Result<_>>()?;
    let opts = Options {
        parallel: true,
        corrupt_splitting: a.corrupt_splitting,
    };
    let report = reproduce::run(&opts, &only);
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        for c in &report.claims {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            println!(
                "[{tag}] {:<4} {:>8.2}s  {}  ({})",
                c.id, c.seconds, c.claim, c.detail
            );
        }
        let passed = report.claims.iter().filter(|c| c.passed).count();
        println!("{passed} of {} claims pass", report.claims.len());
    }
    Ok(verdict_code(report.passed))
}
