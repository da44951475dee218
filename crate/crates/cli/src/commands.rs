//! One function per subcommand. Each returns the rendered output and the
//! exit code; errors map to exit 2 in [`crate::run`].

use gpspec_core::energy::{energy, energy_bounds, is_complementary_equienergetic, semiprimitive_energy};
use gpspec_core::family::{find_equienergetic_family, hits};
use gpspec_core::lift::{LiftState3, LiftState4};
use gpspec_core::oracle::charsum::char_sum_spectrum;
use gpspec_core::oracle::code::weight_eigenvalue_check;
use gpspec_core::oracle::dense::dense_spectrum;
use gpspec_core::oracle::graph::build_graph_with_cap;
use gpspec_core::spectra::{self, complement_spectrum, in_scope_specs, sum_from_gp};
use gpspec_core::{CaseTag, CharSumOptions, DenseOptions, Error, GraphSpec, Rational, Spectrum, Variant};

use crate::config::{Caps, Command, Format, RunConfig};
use crate::dto::{
    to_json, CheckDoc, EnergyDoc, EnergyOnlyDoc, FamilyDoc, GraphDoc, LiftDoc, SpectrumDoc, VerifyDoc, WitnessDoc,
};
use crate::error::{CliError, CliResult, EXIT_MISMATCH, EXIT_OK};
use crate::render::{align, Csv};
use crate::tables::{self, csv_header, csv_record, lift_params, lift_rows};

/// Lifts with `p^e` above this are not re-solved directly under `--verify`.
const DIRECT_SOLVE_LIMIT: u64 = 1_000_000_000_000;

pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

pub fn dispatch(cfg: &RunConfig) -> CliResult<Output> {
    match cfg.command {
        Command::Spectrum => cmd_spectrum(cfg),
        Command::Energy => cmd_energy(cfg),
        Command::Equienergetic => cmd_equienergetic(cfg),
        Command::Lift => cmd_lift(cfg),
        Command::Family => cmd_family(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Tables => cmd_tables(cfg),
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Input(format!("missing {flag}")))
}

pub fn apply_variant(gp: Spectrum, variant: Variant) -> gpspec_core::Result<Spectrum> {
    match variant {
        Variant::Gp => Ok(gp),
        Variant::GpSum => sum_from_gp(&gp),
        Variant::GpComplement => complement_spectrum(&gp),
        Variant::GpSumComplement => complement_spectrum(&sum_from_gp(&gp)?),
    }
}

/// The graph named by the flags and its closed-form spectrum. `lifted` is
/// set when the spectrum came from the lifting recursion.
struct Resolved {
    graph: GraphSpec,
    spectrum: Spectrum,
    lifted: bool,
}

fn resolve(cfg: &RunConfig) -> CliResult<Resolved> {
    let (k, p) = (need(cfg.k, "-k")?, need(cfg.p, "-p")?);
    let Some(ell) = cfg.lift else {
        let graph = GraphSpec::new(k, p, need(cfg.m, "-m or --lift")?, cfg.variant);
        return Ok(Resolved { spectrum: spectra::spectrum(&graph)?, graph, lifted: false });
    };
    let (gp, m) = match k {
        3 => {
            let mut st = LiftState3::new(p, cfg.t, cfg.s.unwrap_or(0))?;
            if ell < st.ell {
                return Err(Error::BadInput("level 0 needs a positive offset -s".into()).into());
            }
            while st.ell < ell {
                st.advance();
            }
            st.check_invariants()?;
            (st.spectrum()?, 3 * st.cube_root_exponent())
        }
        _ => {
            lift_params(k, p, cfg.t, cfg.s)?;
            if ell == 0 {
                return Err(Error::BadInput("the k = 4 lift starts at level 1".into()).into());
            }
            let mut st = LiftState4::new(p)?;
            while st.ell < ell {
                st.advance();
            }
            st.check_invariants()?;
            (st.spectrum()?, 4 * ell)
        }
    };
    let graph = GraphSpec::new(k, p, m, cfg.variant);
    Ok(Resolved { spectrum: apply_variant(gp, cfg.variant)?, graph, lifted: true })
}

struct Check {
    graph: GraphSpec,
    oracle: &'static str,
    result: Result<bool, String>,
}

impl Check {
    fn agrees(&self) -> bool {
        matches!(self.result, Ok(true))
    }

    fn doc(&self) -> CheckDoc {
        let (status, detail) = match &self.result {
            Ok(true) => ("agree", String::new()),
            Ok(false) => ("mismatch", String::new()),
            Err(e) => ("error", e.clone()),
        };
        CheckDoc { graph: GraphDoc::from(&self.graph), oracle: self.oracle.into(), status: status.into(), detail }
    }
}

fn compare(oracle: gpspec_core::Result<Spectrum>, closed: &Spectrum) -> Result<bool, String> {
    oracle.map(|s| s == *closed).map_err(|e| e.to_string())
}

/// Every oracle that fits under the caps, run against `closed`.
fn oracle_checks(g: &GraphSpec, closed: &Spectrum, caps: &Caps, lifted: bool) -> Vec<Check> {
    let mut out = Vec::new();
    let q = g.p.checked_pow(g.m);
    let fits = |cap: u64| q.is_some_and(|q| q <= cap);
    let char_opts = CharSumOptions { cap: caps.character, ..CharSumOptions::default() };
    let is_gp = g.variant == Variant::Gp;
    if lifted {
        let root = g.p.checked_pow(g.m / g.k);
        if root.is_some_and(|r| r <= DIRECT_SOLVE_LIMIT) {
            out.push(Check { graph: *g, oracle: "direct closed form", result: compare(spectra::spectrum(g), closed) });
        }
    }
    if is_gp && fits(caps.character) {
        out.push(Check { graph: *g, oracle: "character sums", result: compare(char_sum_spectrum(g, &char_opts), closed) });
    }
    if fits(caps.dense) {
        let dense = build_graph_with_cap(g, caps.dense).and_then(|d| {
            let opts = DenseOptions { cap: caps.dense as usize, ..DenseOptions::default() };
            dense_spectrum(&d, &opts)?.integral().ok_or(Error::NonIntegral { residual: f64::NAN })
        });
        out.push(Check { graph: *g, oracle: "dense eigenvalues", result: compare(dense, closed) });
    }
    if is_gp && fits(caps.codeword) && fits(caps.character) {
        let r = weight_eigenvalue_check(g.k, g.p, g.m, caps.codeword, &char_opts).map_err(|e| e.to_string());
        out.push(Check { graph: *g, oracle: "code weights", result: r });
    }
    out
}

fn spectrum_rows(s: &Spectrum) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["eigenvalue".to_string(), "multiplicity".to_string()]];
    rows.extend(s.entries.iter().map(|(v, m)| vec![v.to_string(), m.to_string()]));
    rows
}

fn check_lines(checks: &[Check]) -> String {
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            let d = c.doc();
            let mut r = vec!["check".to_string(), c.oracle.to_string(), d.status];
            if !d.detail.is_empty() {
                r.push(d.detail);
            }
            r
        })
        .collect();
    align(&rows, 2, &[])
}

fn verify_if_asked(cfg: &RunConfig, r: &Resolved) -> CliResult<Vec<Check>> {
    if !cfg.verify {
        return Ok(Vec::new());
    }
    let checks = oracle_checks(&r.graph, &r.spectrum, &cfg.caps, r.lifted);
    if checks.is_empty() {
        return Err(CliError::Input(format!(
            "no oracle applies to q = {}^{} under the current caps",
            r.graph.p, r.graph.m
        )));
    }
    Ok(checks)
}

fn exit_for(checks: &[Check]) -> i32 {
    if checks.iter().all(Check::agrees) {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn csv_check_comments(checks: &[Check]) -> String {
    checks.iter().map(|c| format!("# verify {}: {}\n", c.oracle, c.doc().status)).collect()
}

fn cmd_spectrum(cfg: &RunConfig) -> CliResult<Output> {
    let r = resolve(cfg)?;
    let checks = verify_if_asked(cfg, &r)?;
    let text = match cfg.format {
        Format::Json => {
            let mut doc = SpectrumDoc::new(Some(&r.graph), &r.spectrum);
            doc.verify = checks.iter().map(Check::doc).collect();
            to_json(&doc)
        }
        Format::Csv => {
            let mut csv = Csv::new();
            csv.record(["value", "multiplicity"])?;
            for (v, m) in &r.spectrum.entries {
                csv.record([v.to_string(), m.to_string()])?;
            }
            csv.finish()? + &csv_check_comments(&checks)
        }
        Format::Pretty => {
            let s = &r.spectrum;
            let mut t = format!(
                "{}\n  order {}, principal {}, loops {}, energy {}\n",
                r.graph,
                s.order,
                s.principal,
                s.loops,
                energy(s)
            );
            t += &align(&spectrum_rows(s), 2, &[0, 1]);
            t += &check_lines(&checks);
            t
        }
    };
    Ok(Output { text, code: exit_for(&checks) })
}

fn rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn cmd_energy(cfg: &RunConfig) -> CliResult<Output> {
    let r = resolve(cfg)?;
    let checks = verify_if_asked(cfg, &r)?;
    let g = &r.graph;
    let mut doc = EnergyOnlyDoc {
        graph: GraphDoc::from(g),
        energy: energy(&r.spectrum).to_string(),
        lower_bound: None,
        upper_bound: None,
        closed_form: None,
    };
    // Γ and Γ⁺ share their energy, so both get the bounds and the formula.
    if matches!(g.variant, Variant::Gp | Variant::GpSum) {
        match g.case() {
            CaseTag::K3CaseA | CaseTag::K4CaseA if !r.lifted => {
                let (lo, hi) = energy_bounds(g.k, g.p, g.m)?;
                doc.lower_bound = Some(rational(&lo));
                doc.upper_bound = Some(rational(&hi));
            }
            CaseTag::K3CaseB | CaseTag::K4CaseB => {
                doc.closed_form = Some(semiprimitive_energy(g.k, g.p, g.m)?.to_string());
            }
            _ => {}
        }
    }
    let fields: Vec<(&str, &Option<String>)> = vec![
        ("lower_bound", &doc.lower_bound),
        ("upper_bound", &doc.upper_bound),
        ("closed_form", &doc.closed_form),
    ];
    let text = match cfg.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut csv = Csv::new();
            csv.record(["quantity", "value"])?;
            csv.record(["energy", doc.energy.as_str()])?;
            for (name, v) in &fields {
                if let Some(v) = v {
                    csv.record([*name, v.as_str()])?;
                }
            }
            csv.finish()? + &csv_check_comments(&checks)
        }
        Format::Pretty => {
            let mut rows = vec![vec!["energy".to_string(), doc.energy.clone()]];
            for (name, v) in &fields {
                if let Some(v) = v {
                    rows.push(vec![name.replace('_', " "), v.clone()]);
                }
            }
            format!("{g}\n") + &align(&rows, 2, &[]) + &check_lines(&checks)
        }
    };
    Ok(Output { text, code: exit_for(&checks) })
}

fn cmd_equienergetic(cfg: &RunConfig) -> CliResult<Output> {
    let r = resolve(cfg)?;
    let checks = verify_if_asked(cfg, &r)?;
    let report = is_complementary_equienergetic(&r.spectrum)?;
    let doc = EnergyDoc::new(Some(&r.graph), &report);
    let text = match cfg.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut csv = Csv::new();
            csv.record(["energy", "complement_energy", "positive_nonprincipal_count", "equienergetic", "criterion_agrees"])?;
            csv.record([
                doc.energy.clone(),
                doc.complement_energy.clone(),
                doc.positive_nonprincipal_count.to_string(),
                doc.equienergetic.to_string(),
                doc.criterion_agrees.to_string(),
            ])?;
            csv.finish()? + &csv_check_comments(&checks)
        }
        Format::Pretty => {
            let rows = vec![
                vec!["energy".to_string(), doc.energy.clone()],
                vec!["complement energy".into(), doc.complement_energy.clone()],
                vec!["positive non-principal".into(), doc.positive_nonprincipal_count.to_string()],
                vec!["equienergetic".into(), doc.equienergetic.to_string()],
                vec!["sign criterion".into(), if report.criterion_agrees { "agrees" } else { "disagrees" }.into()],
            ];
            format!("{}\n", r.graph) + &align(&rows, 2, &[]) + &check_lines(&checks)
        }
    };
    Ok(Output { text, code: exit_for(&checks) })
}

fn lift_table(k: u32, rows: &[tables::LiftRow], format: Format, notes: &[&str]) -> CliResult<String> {
    Ok(match format {
        Format::Csv => {
            let mut csv = Csv::new();
            csv.record(csv_header(k))?;
            for r in rows {
                csv.record(csv_record(r))?;
            }
            notes.iter().map(|n| format!("# {n}\n")).collect::<String>() + &csv.finish()?
        }
        _ => {
            let mut out: Vec<Vec<String>> = vec![csv_header(k)];
            out.extend(rows.iter().map(csv_record));
            let right: Vec<usize> = (0..out[0].len()).filter(|&i| i != 3).collect();
            notes.iter().map(|n| format!("  {n}\n")).collect::<String>() + &align(&out, 2, &right)
        }
    })
}

fn cmd_lift(cfg: &RunConfig) -> CliResult<Output> {
    let (k, p, last) = (need(cfg.k, "-k")?, need(cfg.p, "-p")?, need(cfg.lift, "--lift")?);
    let (t, s) = lift_params(k, p, cfg.t, cfg.s)?;
    let rows = lift_rows(k, p, cfg.t, cfg.s, last)?;
    let text = match cfg.format {
        Format::Json => to_json(&LiftDoc { k, p, t, s, rows: rows.iter().map(|r| r.doc()).collect() }),
        f => {
            let head = format!("k = {k}, p = {p}, t = {t}, s = {s}");
            match f {
                Format::Csv => lift_table(k, &rows, f, &[&head])?,
                _ => format!("{head}\n") + &lift_table(k, &rows, f, &[])?,
            }
        }
    };
    Ok(Output::ok(text))
}

fn cmd_family(cfg: &RunConfig) -> CliResult<Output> {
    let (k, p) = (need(cfg.k, "-k")?, need(cfg.p, "-p")?);
    let (_, s) = lift_params(k, p, cfg.t, cfg.s)?;
    let ell_max = cfg.caps.ell_max;
    let ws = find_equienergetic_family(p, k, if k == 3 { cfg.t } else { None }, s, ell_max)?;
    let doc = FamilyDoc { p, k, ell_max, hits: hits(&ws), witnesses: ws.iter().map(WitnessDoc::from).collect() };
    let header = ["ell", "x", "y", "equienergetic", "interval_hit", "q_digits"];
    let row = |w: &WitnessDoc| {
        vec![
            w.ell.to_string(),
            w.x.clone(),
            w.y.clone(),
            w.equienergetic.to_string(),
            w.interval_hit.to_string(),
            w.q_digits.to_string(),
        ]
    };
    let text = match cfg.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut csv = Csv::new();
            csv.record(header)?;
            for w in &doc.witnesses {
                csv.record(row(w))?;
            }
            csv.finish()?
        }
        Format::Pretty => {
            let hit_list: Vec<String> = doc.hits.iter().map(u32::to_string).collect();
            let mut t = format!(
                "k = {k}, p = {p}, levels 1..={ell_max}\nequienergetic at: {}\n",
                if hit_list.is_empty() { "none".to_string() } else { hit_list.join(", ") }
            );
            if !doc.witnesses.is_empty() {
                let mut rows = vec![header.iter().map(|h| h.to_string()).collect::<Vec<_>>()];
                rows.extend(doc.witnesses.iter().map(row));
                t += &align(&rows, 2, &[0, 1, 2, 5]);
            }
            t
        }
    };
    Ok(Output::ok(text))
}

fn cmd_verify(cfg: &RunConfig) -> CliResult<Output> {
    let single = match (cfg.k, cfg.p, cfg.m) {
        (Some(k), Some(p), Some(m)) => {
            GraphSpec::gp(k, p, m).require_in_scope()?;
            Some(GraphSpec::gp(k, p, m))
        }
        _ => None,
    };
    let specs = match single {
        Some(g) => vec![g],
        None => in_scope_specs(need(cfg.max_q, "--max-q")?),
    };
    let mut checks = Vec::new();
    for g in specs {
        for variant in Variant::ALL {
            let v = g.with_variant(variant);
            let closed = match spectra::spectrum(&v) {
                Err(Error::HasLoops(_)) => continue,
                r => r?,
            };
            checks.extend(oracle_checks(&v, &closed, &cfg.caps, false));
        }
    }
    if checks.is_empty() {
        return Err(CliError::Input("no oracle applies under the current caps".into()));
    }
    let doc = VerifyDoc {
        mismatches: checks.iter().filter(|c| !c.agrees()).count(),
        checks: checks.iter().map(Check::doc).collect(),
    };
    let text = match cfg.format {
        Format::Json => to_json(&doc),
        Format::Csv => {
            let mut csv = Csv::new();
            csv.record(["k", "p", "m", "variant", "oracle", "status", "detail"])?;
            for c in &doc.checks {
                let g = &c.graph;
                csv.record([
                    g.k.to_string(),
                    g.p.to_string(),
                    g.m.to_string(),
                    g.variant.clone(),
                    c.oracle.clone(),
                    c.status.clone(),
                    c.detail.clone(),
                ])?;
            }
            csv.finish()?
        }
        Format::Pretty => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    let d = c.doc();
                    vec![c.graph.to_string(), d.oracle, d.status, d.detail]
                })
                .collect();
            align(&rows, 0, &[]) + &format!("{} checks, {} mismatches\n", doc.checks.len(), doc.mismatches)
        }
    };
    Ok(Output { text, code: exit_for(&checks) })
}

fn cmd_tables(cfg: &RunConfig) -> CliResult<Output> {
    let ids: Vec<u8> = match cfg.table {
        Some(id) => vec![id],
        None => vec![1, 2, 3],
    };
    let all = ids.into_iter().map(tables::table).collect::<CliResult<Vec<_>>>()?;
    let text = match cfg.format {
        Format::Json => to_json(&all.iter().map(|t| t.doc()).collect::<Vec<_>>()),
        f => {
            let mut parts = Vec::new();
            for t in &all {
                let title = format!("table {}: {}", t.id, t.title);
                let mut notes = vec![title.as_str()];
                notes.extend(t.notes.iter().copied());
                parts.push(lift_table(t.k, &t.rows, f, &notes)?);
            }
            parts.join("\n")
        }
    };
    Ok(Output::ok(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps() -> Caps {
        Caps { dense: 1500, character: 300_000, codeword: 10_000, ell_max: 10 }
    }

    #[test]
    fn wrong_spectrum_is_a_mismatch() {
        let g = GraphSpec::gp(3, 7, 3);
        let right = spectra::spectrum(&g).unwrap();
        let checks = oracle_checks(&g, &right, &caps(), false);
        assert_eq!(checks.len(), 3);
        assert_eq!(exit_for(&checks), EXIT_OK);
        let wrong = spectra::spectrum(&g.with_variant(Variant::GpComplement)).unwrap();
        let checks = oracle_checks(&g, &wrong, &caps(), false);
        assert!(checks.iter().filter(|c| c.oracle != "code weights").all(|c| c.result == Ok(false)));
        assert_eq!(exit_for(&checks), EXIT_MISMATCH);
        assert_eq!(checks[0].doc().status, "mismatch");
    }

    #[test]
    fn lifted_graphs_are_checked_directly() {
        let cfg = RunConfig {
            command: Command::Spectrum,
            k: Some(3),
            p: Some(7),
            m: None,
            t: None,
            s: Some(1),
            lift: Some(1),
            variant: Variant::GpSum,
            verify: true,
            max_q: None,
            table: None,
            format: Format::Json,
            caps: caps(),
            cache: None,
        };
        let r = resolve(&cfg).unwrap();
        assert_eq!((r.graph.m, r.lifted), (12, true));
        let checks = verify_if_asked(&cfg, &r).unwrap();
        assert_eq!(checks.iter().map(|c| c.oracle).collect::<Vec<_>>(), ["direct closed form"]);
        assert!(checks[0].agrees());
    }
}
