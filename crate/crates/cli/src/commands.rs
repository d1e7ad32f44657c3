use std::fmt::Write as _;
use std::io::Read as _;

use anyhow::Context;
use bgg_core::abstractcx::{
    abstract_suite, check_homotopy, complex_from_json, harmonic_homotopy, InstanceShape,
};
use bgg_core::bggcore::{
    bgg_suite, check_cochain, check_f_iso, diagram_from_json, homotopy_check_twisted,
    twisted_from_json, BuiltinDiagram, DiagramSpec,
};
use bgg_core::derham::{exterior_d, homotopy_check_derham, koszul_poincare};
use bgg_core::forms::{polyform_from_json, polyform_to_json};
use bgg_core::report::{CheckReport, SuiteReport};
use bgg_core::verify::{
    dims_csv, verify_enriched_complex, verify_polynomial_complex, SequenceName, SequenceReport,
};
use rayon::prelude::*;

use crate::output::{emit, suites_csv, suites_text, to_json};
use crate::{Failure, Format, OperatorName, OutputOpts, Target, VerifyOpts};

/// Name accepted by `verify polyseq` for the enriched elasticity complex.
const ENRICHED: &str = "enriched-elast";

/// A builtin name, or a path to a diagram JSON file.
fn load_diagram(s: &str) -> anyhow::Result<DiagramSpec> {
    if let Ok(which) = s.parse::<BuiltinDiagram>() {
        return Ok(DiagramSpec::builtin(which));
    }
    let text = std::fs::read_to_string(s)
        .with_context(|| format!("`{s}` is neither a builtin diagram nor a readable file"))?;
    Ok(diagram_from_json(&text)?)
}

fn read_input(path: Option<&str>) -> anyhow::Result<String> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {p}")),
    }
}

fn finish_suites(suites: &[SuiteReport], opts: &OutputOpts) -> Result<(), Failure> {
    let content = match opts.format {
        Format::Text => suites_text(suites),
        Format::Json => to_json(&suites)?,
        Format::Csv => suites_csv(suites)?,
    };
    emit(opts, &content)?;
    match suites.iter().flat_map(|s| s.first_failure()).next() {
        Some(c) => {
            eprintln!(
                "identity failed: {} ({})",
                c.identity,
                c.counterexample.as_deref().unwrap_or("")
            );
            Err(Failure::Identity)
        }
        None => Ok(()),
    }
}

fn sequences_text(reports: &[SequenceReport]) -> String {
    let mut s = String::new();
    for r in reports {
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        let show = |v: &[Option<usize>]| {
            v.iter()
                .map(|x| x.map_or("?".to_string(), |x| x.to_string()))
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(
            s,
            "{verdict} {} r={}: dims ({}) ranks ({}) cohomology ({}) chi={} expected H0={}",
            r.name,
            r.r,
            r.dims
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
            show(&r.ranks),
            show(&r.cohomology),
            r.euler_characteristic,
            r.expected_h0
        )
        .unwrap();
    }
    s
}

fn sequence_reports(name: SequenceName, r: u32, rmax: u32) -> anyhow::Result<Vec<SequenceReport>> {
    (r..=rmax)
        .into_par_iter()
        .map(|r| Ok(verify_polynomial_complex(name, r, false)?))
        .collect()
}

fn emit_sequences(reports: &[SequenceReport], opts: &OutputOpts) -> anyhow::Result<()> {
    let content = match opts.format {
        Format::Text => sequences_text(reports),
        Format::Json => to_json(&reports)?,
        Format::Csv => dims_csv(reports),
    };
    emit(opts, &content)
}

fn verify_polyseq(opts: &VerifyOpts) -> Result<(), Failure> {
    let name = opts
        .name
        .as_deref()
        .ok_or_else(|| anyhow::anyhow!("verify polyseq needs --name"))?;
    let r = opts.r.unwrap_or(opts.rmax);
    if name == ENRICHED {
        let report = verify_enriched_complex(r)?;
        let content = match opts.out.format {
            Format::Json => to_json(&report)?,
            Format::Text | Format::Csv => format!(
                "{} {ENRICHED} r={}: dims {:?} ranks {:?} cohomology {:?} D-closed={} P-closed={} homotopy={}\nunenriched counterexample: {}\n",
                if report.passed { "PASS" } else { "FAIL" },
                report.r,
                report.dims,
                report.ranks,
                report.cohomology,
                report.d_closed,
                report.p_closed,
                report.homotopy,
                report.unenriched_counterexample.as_deref().unwrap_or("none"),
            ),
        };
        emit(&opts.out, &content)?;
        return if report.passed {
            Ok(())
        } else {
            Err(Failure::Identity)
        };
    }
    let name: SequenceName = name.parse()?;
    let reports = sequence_reports(name, r, r)?;
    emit_sequences(&reports, &opts.out)?;
    if reports.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Identity)
    }
}

pub fn verify(target: Target, opts: &VerifyOpts) -> Result<(), Failure> {
    let suite = match target {
        Target::Derham => {
            if !(1..=3).contains(&opts.n) {
                return Err(anyhow::anyhow!("--n must be 1, 2 or 3").into());
            }
            let checks = (0..=opts.n)
                .into_par_iter()
                .map(|k| homotopy_check_derham(opts.n, k, opts.rmax))
                .collect();
            SuiteReport::new(format!("derham n={}", opts.n), checks)
        }
        Target::Twisted => {
            let spec = load_diagram(&opts.diagram)?;
            let mut checks = vec![
                homotopy_check_twisted(&spec, opts.rmax),
                check_f_iso(&spec, opts.rmax),
            ];
            checks.extend(check_cochain(&spec, opts.rmax).into_iter().take(1));
            SuiteReport::new(format!("twisted {}", spec.name()), checks)
        }
        Target::Bgg => bgg_suite(&load_diagram(&opts.diagram)?, opts.rmax),
        Target::Abstract => match &opts.complex {
            Some(path) => {
                let c = complex_from_json(&read_input(Some(path))?)?;
                let h = harmonic_homotopy(&c, None)?;
                let mut checks: Vec<CheckReport> = check_homotopy(&c, &h)?.into();
                let mut dims = CheckReport::new(format!(
                    "cohomology {:?} has χ = {}",
                    c.cohomology_dims(),
                    c.euler_characteristic()
                ));
                dims.record(true, String::new);
                checks.push(dims);
                SuiteReport::new("abstract (input complex)", checks)
            }
            None => abstract_suite(opts.seed, opts.count, InstanceShape::default()),
        },
        Target::Polyseq => return verify_polyseq(opts),
    };
    finish_suites(&[suite], &opts.out)
}

pub fn apply(
    operator: OperatorName,
    diagram: &str,
    input: Option<&str>,
    opts: &OutputOpts,
) -> Result<(), Failure> {
    if opts.format == Format::Csv {
        return Err(anyhow::anyhow!("apply writes json or text").into());
    }
    let text = read_input(input)?;
    let content = match operator {
        OperatorName::D | OperatorName::Koszul => {
            let u = polyform_from_json(&text)?;
            let out = match operator {
                OperatorName::D => exterior_d(&u),
                _ => koszul_poincare(&u)?,
            };
            match opts.format {
                Format::Json => polyform_to_json(&out),
                _ => out.to_string(),
            }
        }
        _ => {
            let spec = load_diagram(diagram)?;
            let u = twisted_from_json(&text)?;
            u.check_against(&spec)?;
            let out = match operator {
                OperatorName::TwistedD => spec.twisted_d(&u)?,
                OperatorName::TwistedP => spec.twisted_poincare(&u)?,
                OperatorName::BggD => spec.bgg_d(&u)?,
                OperatorName::BggP => spec.bgg_poincare(&u)?,
                OperatorName::A => spec.a_map(&u)?,
                OperatorName::B => spec.b_map(&u)?,
                OperatorName::F => spec.f_iso(&u, false)?,
                OperatorName::FInv => spec.f_iso(&u, true)?,
                OperatorName::Project => spec.proj_upsilon(&u)?,
                OperatorName::D | OperatorName::Koszul => unreachable!(),
            };
            match opts.format {
                Format::Json => out.to_json(),
                _ => out.to_string(),
            }
        }
    };
    emit(opts, &format!("{content}\n"))?;
    Ok(())
}

pub fn dims(name: &str, r: u32, rmax: u32, opts: &OutputOpts) -> Result<(), Failure> {
    if rmax < r {
        return Err(anyhow::anyhow!("--rmax {rmax} is below --r {r}").into());
    }
    let name: SequenceName = name.parse()?;
    emit_sequences(&sequence_reports(name, r, rmax)?, opts)?;
    Ok(())
}
