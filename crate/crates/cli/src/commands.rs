use std::path::Path;

use gradlab::coset::{farber_prefix_check, ChainSpec, CosetError};
use gradlab::group::{Presentation, Word};
use gradlab::homology::{estimate_trend, gradient_series, InvariantKind};
use gradlab::io::GroupSpec;
use gradlab::qnormal::ChainCertificateFile;
use gradlab::raag::{analyze_raag, artin_chain_commuting, ArtinGraph};
use gradlab::rebuilding::{minimal_kappa, quality_check, validate_rebuilding, RebuildingData};
use num_rational::Ratio;
use serde_json::json;

use crate::error::CliError;
use crate::output::{read_json, Run};
use crate::Globals;

fn load_chain(
    g: &Globals,
    group: &Path,
    chain: &str,
) -> Result<(Presentation, gradlab::coset::SubgroupChain), CliError> {
    let spec: GroupSpec = read_json(group)?;
    let p = spec.presentation();
    let chain_spec: ChainSpec = chain.parse()?;
    let built = chain_spec.build(&p, g.budget)?;
    Ok((p, built))
}

pub fn homology(
    g: &Globals,
    group: &Path,
    chain: &str,
    primes: &[u64],
    invariants: &[String],
    l2_reference: Option<f64>,
) -> Result<(), CliError> {
    let (_, ch) = load_chain(g, group, chain)?;
    let kinds: Vec<InvariantKind> = if invariants.is_empty() {
        std::iter::once(InvariantKind::BettiQ)
            .chain(primes.iter().map(|&p| InvariantKind::BettiFp(p)))
            .chain(std::iter::once(InvariantKind::LogTorsion))
            .collect()
    } else {
        invariants.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let mut run = Run::new(&g.out, "homology")?;
    run.input(group);
    run.param("chain", chain);
    run.param("primes", primes);
    run.param("budget", g.budget);
    run.param("l2_reference", l2_reference);
    for kind in kinds {
        let s = gradient_series(&ch, kind, primes, l2_reference)?;
        let trend = estimate_trend(&s).ok();
        let rows: Vec<Vec<String>> = s
            .points
            .iter()
            .map(|p| {
                vec![
                    p.level.to_string(),
                    p.index.to_string(),
                    p.value.to_string(),
                    p.ratio.to_string(),
                    p.exact_ratio.clone().unwrap_or_default(),
                ]
            })
            .collect();
        let shown: Vec<String> =
            s.points.iter().map(|p| p.exact_ratio.clone().unwrap_or_else(|| format!("{:.6}", p.ratio))).collect();
        println!("{kind}: {}", shown.join(" "));
        run.write_json(&format!("gradient_{kind}.json"), &json!({ "series": s, "trend": trend }))?;
        run.write_csv(&format!("gradient_{kind}.csv"), &["level", "index", "value", "ratio", "exact_ratio"], &rows)?;
    }
    run.finish()
}

pub fn raag_analyze(g: &Globals, path: &Path) -> Result<(), CliError> {
    let graph: ArtinGraph = read_json(path)?;
    let names = graph.presentation();
    let render = |ws: &[Word]| ws.iter().map(|w| names.render(w)).collect::<Vec<_>>();
    let mut run = Run::new(&g.out, "raag analyze")?;
    run.input(path);
    let report = if graph.is_right_angled() {
        let a = analyze_raag(graph.base())?;
        let cert_path = match &a.certificate {
            Some(c) => {
                let file = ChainCertificateFile { group: GroupSpec::Raag(graph.base().clone()), chain: c.clone() };
                run.write_json("chain_certificate.json", &file)?;
                Some("chain_certificate.json")
            }
            None => None,
        };
        let cone = a.inner_amenability.cone_vertex;
        json!({
            "inner_amenable": a.inner_amenability.inner_amenable,
            "cone_vertex": cone.map(|v| names.generator_names()[v as usize - 1].clone()),
            "cone_vertex_index": cone,
            "centrality_verified": a.inner_amenability.centrality_verified,
            "chain_commuting": a.chain_commuting.is_some(),
            "sequence": a.chain_commuting.as_ref().map(|s| render(&s.sequence)),
            "commuting_proofs": a.chain_commuting.as_ref().map(|s| &s.proofs),
            "chain_status": a.chain_status,
            "chain_certificate_path": cert_path,
        })
    } else {
        let s = artin_chain_commuting(&graph);
        json!({
            "inner_amenable": null,
            "cone_vertex": null,
            "chain_commuting": s.is_some(),
            "sequence": s.as_ref().map(|s| render(&s.sequence)),
            "commuting_proofs": s.as_ref().map(|s| &s.proofs),
            "orders": s.as_ref().map(|s| &s.orders),
            "chain_status": null,
            "chain_certificate_path": null,
        })
    };
    println!(
        "inner_amenable: {}  chain_commuting: {}  chain_status: {}",
        report["inner_amenable"], report["chain_commuting"], report["chain_status"]
    );
    run.write_json("raag_report.json", &report)?;
    run.finish()
}

/// `3`, `1/10` or `0.25`, exactly.
fn parse_eps(text: &str) -> Result<Ratio<u64>, CliError> {
    let bad = || CliError::Input(format!("cannot parse eps {text:?}"));
    let text = text.trim();
    let r = if let Some((p, q)) = text.split_once('/') {
        let (p, q): (u64, u64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
        if q == 0 {
            return Err(bad());
        }
        Ratio::new(p, q)
    } else if let Some((int, frac)) = text.split_once('.') {
        let scale = 10u64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        Ratio::new(int * scale + frac, scale)
    } else {
        Ratio::from_integer(text.parse().map_err(|_| bad())?)
    };
    if r > Ratio::from_integer(1) {
        return Err(CliError::Input("eps must lie in [0, 1]".into()));
    }
    Ok(r)
}

pub fn farber(g: &Globals, group: &Path, chain: &str, gammas: &str, eps: &str) -> Result<(), CliError> {
    let (p, ch) = load_chain(g, group, chain)?;
    let eps_r = parse_eps(eps)?;
    let words = gammas.split(';').map(|t| p.parse_word(t)).collect::<Result<Vec<_>, _>>()?;
    let report = farber_prefix_check(&ch, &words, eps_r).map_err(|e| match e {
        CosetError::Malformed(m) => CliError::Input(m),
        other => other.into(),
    })?;
    let mut run = Run::new(&g.out, "farber")?;
    run.input(group);
    run.param("chain", chain);
    run.param("gammas", gammas);
    run.param("eps", eps);
    run.param("budget", g.budget);
    let mut rows = Vec::new();
    for s in &report.series {
        for (level, v) in s.values.iter().enumerate() {
            rows.push(vec![
                p.render(&s.gamma),
                (level + 1).to_string(),
                v.index.to_string(),
                v.fixed.to_string(),
                (*v.value.numer() as f64 / *v.value.denom() as f64).to_string(),
                format!("{}/{}", v.value.numer(), v.value.denom()),
            ]);
        }
        let tail = match s.tail_start {
            Some(k) => format!("within eps from level {}", k + 1),
            None => "not within eps at the last level".to_string(),
        };
        println!("{}: {} ({tail})", p.render(&s.gamma), if s.passes { "PASS" } else { "FAIL" });
    }
    run.write_json("farber.json", &report)?;
    run.write_csv("farber.csv", &["gamma", "level", "index", "fixed", "value", "exact"], &rows)?;
    run.finish()
}

pub fn rebuild_check(g: &Globals, path: &Path, t: f64, kappa: Option<f64>) -> Result<(), CliError> {
    let d: RebuildingData = read_json(path)?;
    let mut run = Run::new(&g.out, "rebuild check")?;
    run.input(path);
    run.param("T", t);
    run.param("kappa", kappa);
    let validation = validate_rebuilding(&d)?;
    if !validation.passes {
        run.write_json("rebuild_report.json", &json!({ "validation": validation }))?;
        run.finish()?;
        let first = validation.failures()[0];
        return Err(CliError::Verification(format!("{} fails in degree {}", first.identity, first.degree)));
    }
    let min = minimal_kappa(&d, t)?;
    let used = kappa.unwrap_or(min);
    let quality = if used.is_finite() { Some(quality_check(&d, t, used)?) } else { None };
    println!("validation: PASS  minimal_kappa: {min}");
    let overall = quality.as_ref().is_some_and(|q| q.overall);
    if let Some(q) = &quality {
        println!("quality (T = {t}, kappa = {used}): {}", if q.overall { "PASS" } else { "FAIL" });
    }
    run.write_json(
        "rebuild_report.json",
        &json!({ "validation": validation, "minimal_kappa": min, "quality": quality }),
    )?;
    run.finish()?;
    if !overall {
        return Err(CliError::Verification(format!("quality ({t}, {used}) not attained")));
    }
    Ok(())
}
