use serde::Serialize;

use gosset_core::coxplane::{
    edges, exponent_projection, project_spectrum, reindex_edges, render_csv, render_svg,
    root_functionals, EdgeMode, FigureSpec, PlanePoint,
};
use gosset_core::kostant::{
    build_a, char_poly, e8_families, golden_pairs, radii_report, rational_eigenvalue, GoldenPair,
    RadiiReport, GOLDEN,
};
use gosset_core::rootsystem::Family;
use gosset_core::verify::{pipeline, standard_sweep, verify_sweep, TypeReport, VerifyOptions};
use gosset_core::{build_root_system, highest_root, killing_gram, Error, LieType, Result};

use crate::table::Table;
use crate::{Cli, Command, Edges, Format, Outcome, EXIT_FAIL};

/// Note attached wherever the quartic families are shown.
pub const FAMILY_NOTE: &str =
    "family: quartic factor F1 or F2 of det(xI - cA); read as the two types of Gosset circles (interpretation)";

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Radii { lie_type } => radii(cli, *lie_type),
        Command::Verify { lie_type, all } => {
            let types = if *all {
                standard_sweep()
            } else {
                lie_type.iter().copied().collect()
            };
            verify(cli, &types)
        }
        Command::Project {
            lie_type,
            edges,
            exponent,
            palette,
        } => project(cli, *lie_type, *edges, *exponent, palette),
        Command::Charpoly { lie_type } => charpoly(cli, *lie_type),
        Command::Masses { lie_type } => masses(cli, *lie_type),
    }
}

fn ok(body: String) -> Outcome {
    Outcome { body, code: 0 }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

/// Integers as integers, everything else in scientific notation.
fn num(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        sci(v)
    }
}

fn fixed(v: f64) -> String {
    format!("{v:.12}")
}

fn is_e8(t: LieType) -> bool {
    t.family() == Family::E && t.rank() == 8
}

fn report_for(t: LieType) -> Result<(RadiiReport, Vec<Option<String>>)> {
    let rs = build_root_system(t);
    let hr = highest_root(&rs);
    let op = build_a(&rs, &hr, &killing_gram(&rs))?;
    let report = radii_report(&op, hr.coxeter_number)?;
    let cp = char_poly(&op)?;
    let exact = report
        .operator_eigenvalues
        .iter()
        .map(|&v| rational_eigenvalue(&cp.operator_coefficients, v).map(|q| q.to_string()))
        .collect();
    Ok((report, exact))
}

fn family_names(report: &RadiiReport) -> Result<Option<Vec<&'static str>>> {
    if !is_e8(report.lie_type) {
        return Ok(None);
    }
    Ok(Some(
        e8_families(report)?
            .iter()
            .map(|&f| if f { "F1" } else { "F2" })
            .collect(),
    ))
}

#[derive(Serialize)]
struct RadiusRow {
    index: usize,
    exact: Option<String>,
    operator_eigenvalue: f64,
    eigenvalue: f64,
    radius: f64,
    normalized: f64,
    integer_part: i64,
    family: Option<&'static str>,
}

#[derive(Serialize)]
struct RadiiJson {
    lie_type: LieType,
    coxeter_number: i64,
    rows: Vec<RadiusRow>,
    family_note: Option<&'static str>,
}

fn radii(cli: &Cli, t: LieType) -> Result<Outcome> {
    let (report, exact) = report_for(t)?;
    let families = family_names(&report)?;
    let rows: Vec<RadiusRow> = (0..report.radii.len())
        .map(|i| RadiusRow {
            index: i,
            exact: exact[i].clone(),
            operator_eigenvalue: report.operator_eigenvalues[i],
            eigenvalue: report.eigenvalues[i],
            radius: report.radii[i],
            normalized: report.normalized[i],
            integer_part: report.integer_parts[i],
            family: families.as_ref().map(|f| f[i]),
        })
        .collect();
    let body = match cli.format {
        Format::Json => json(&RadiiJson {
            lie_type: t,
            coxeter_number: report.coxeter_number,
            rows,
            family_note: families.as_ref().map(|_| FAMILY_NOTE),
        }),
        Format::Text | Format::Csv => {
            let mut table = Table::new(&[
                "index",
                "exact_eigenvalue_a",
                "eigenvalue_a",
                "eigenvalue_2a_over_h",
                "radius",
                "normalized",
                "integer_part",
                "family",
            ]);
            for r in &rows {
                table.push(vec![
                    r.index.to_string(),
                    r.exact.clone().unwrap_or_else(|| "irrational".into()),
                    fixed(r.operator_eigenvalue),
                    fixed(r.eigenvalue),
                    fixed(r.radius),
                    fixed(r.normalized),
                    r.integer_part.to_string(),
                    r.family.unwrap_or("-").to_string(),
                ]);
            }
            if cli.format == Format::Csv {
                table.csv()
            } else {
                let mut s = format!("{t}  h = {}\n", report.coxeter_number);
                s.push_str(&table.text());
                if families.is_some() {
                    s.push_str(&format!("{FAMILY_NOTE}\n"));
                }
                s
            }
        }
    };
    Ok(ok(body))
}

#[derive(Serialize)]
struct VerifyJson {
    tolerance: f64,
    passed: bool,
    types: Vec<VerifyEntry>,
}

#[derive(Serialize)]
struct VerifyEntry {
    lie_type: LieType,
    passed: bool,
    error: Option<String>,
    max_discrepancy: Option<f64>,
    kostant_eigenvalues: Vec<f64>,
    oracle_eigenvalues: Vec<f64>,
    checks: Vec<gosset_core::verify::Check>,
}

fn verify(cli: &Cli, types: &[LieType]) -> Result<Outcome> {
    let opts = VerifyOptions {
        tolerance: cli.tolerance,
        seed: cli.seed,
    };
    let results = verify_sweep(types, &opts);
    let mut all_passed = true;
    let mut entries = Vec::new();
    for (t, r) in types.iter().zip(results) {
        let entry = match r {
            Ok(TypeReport {
                passed,
                max_discrepancy,
                kostant_eigenvalues,
                oracle_eigenvalues,
                checks,
                elapsed_ms,
                ..
            }) => {
                eprintln!("{t}: {elapsed_ms:.1} ms");
                for c in checks.iter().filter(|c| !c.passed) {
                    eprintln!("FAIL {t}: {} = {:e} (bound {:e})", c.name, c.value, c.bound);
                }
                VerifyEntry {
                    lie_type: *t,
                    passed,
                    error: None,
                    max_discrepancy: Some(max_discrepancy),
                    kostant_eigenvalues,
                    oracle_eigenvalues,
                    checks,
                }
            }
            Err(e) => {
                eprintln!("FAIL {t}: {e}");
                VerifyEntry {
                    lie_type: *t,
                    passed: false,
                    error: Some(e.to_string()),
                    max_discrepancy: None,
                    kostant_eigenvalues: Vec::new(),
                    oracle_eigenvalues: Vec::new(),
                    checks: Vec::new(),
                }
            }
        };
        all_passed &= entry.passed;
        entries.push(entry);
    }
    let verdict = |p: bool| if p { "pass" } else { "FAIL" };
    let body = match cli.format {
        Format::Json => json(&VerifyJson {
            tolerance: cli.tolerance,
            passed: all_passed,
            types: entries,
        }),
        Format::Csv => {
            let mut table = Table::new(&["lie_type", "check", "passed", "value", "bound"]);
            for e in &entries {
                if let Some(err) = &e.error {
                    table.push(vec![
                        e.lie_type.to_string(),
                        "error".into(),
                        "false".into(),
                        err.replace(',', ";"),
                        String::new(),
                    ]);
                }
                for c in &e.checks {
                    table.push(vec![
                        e.lie_type.to_string(),
                        c.name.to_string(),
                        c.passed.to_string(),
                        format!("{:e}", c.value),
                        format!("{:e}", c.bound),
                    ]);
                }
            }
            table.csv()
        }
        Format::Text => {
            let mut s = format!("tolerance {}\n", sci(cli.tolerance));
            for e in &entries {
                let disc = e.max_discrepancy.map_or_else(|| "-".into(), sci);
                s.push_str(&format!(
                    "\n{}  {}  max_discrepancy {disc}\n",
                    e.lie_type,
                    verdict(e.passed)
                ));
                if let Some(err) = &e.error {
                    s.push_str(&format!("  error: {err}\n"));
                }
                let mut table = Table::new(&["  check", "result", "value", "bound"]);
                for c in &e.checks {
                    table.push(vec![
                        format!("  {}", c.name),
                        verdict(c.passed).into(),
                        num(c.value),
                        num(c.bound),
                    ]);
                }
                if !e.checks.is_empty() {
                    s.push_str(&table.text());
                }
            }
            s.push_str(&format!(
                "\n{} of {} types passed\n",
                entries.iter().filter(|e| e.passed).count(),
                entries.len()
            ));
            s
        }
    };
    Ok(Outcome {
        body,
        code: if all_passed { 0 } else { EXIT_FAIL },
    })
}

#[derive(Serialize)]
struct PointJson {
    x: f64,
    y: f64,
    radius: f64,
    class_index: usize,
    re_nu: f64,
    im_nu: f64,
}

#[derive(Serialize)]
struct ProjectJson {
    lie_type: LieType,
    coxeter_number: i64,
    exponent: u32,
    radii: Vec<f64>,
    ring_families: Option<Vec<&'static str>>,
    family_note: Option<&'static str>,
    points: Vec<PointJson>,
    edges: Vec<(usize, usize)>,
}

fn project(
    cli: &Cli,
    t: LieType,
    edge_mode: Edges,
    exponent: u32,
    palette: &[String],
) -> Result<Outcome> {
    let p = pipeline(t, cli.seed)?;
    let h = p.spectrum.coxeter_number;
    let need_functionals = edge_mode == Edges::Polytope || exponent != 1;
    let rf = if need_functionals {
        Some(root_functionals(
            &p.structure,
            &p.cyclic,
            &p.spectrum,
            cli.seed,
        )?)
    } else {
        None
    };
    let points: Vec<PlanePoint> = match &rf {
        Some(rf) if exponent != 1 => exponent_projection(&p.structure, rf, h, exponent)?,
        _ => project_spectrum(&p.spectrum, h),
    };
    let mut fig = FigureSpec::new(points);
    if let Some(rf) = &rf {
        let mode = match edge_mode {
            Edges::None => EdgeMode::None,
            Edges::Polytope => EdgeMode::Polytope,
        };
        fig.edges = reindex_edges(&fig.points, &edges(&rf.gram, mode));
        fig.edges.sort_unstable();
    }
    if !palette.is_empty() {
        fig.canvas.palette = palette.to_vec();
    }
    let families = family_names(&p.radii)?;
    if let Some(f) = &families {
        fig.ring_labels = f.iter().map(|s| s.to_string()).collect();
        fig.description = Some(format!(
            "{t} Coxeter plane, exponent {exponent}; ring {FAMILY_NOTE}"
        ));
    } else {
        fig.description = Some(format!("{t} Coxeter plane, exponent {exponent}"));
    }
    let body = match cli.format {
        Format::Text => render_svg(&fig),
        Format::Csv => render_csv(&fig.points, &fig.radii),
        Format::Json => json(&ProjectJson {
            lie_type: t,
            coxeter_number: h,
            exponent,
            radii: fig.radii.clone(),
            ring_families: families,
            family_note: fig.ring_labels.first().map(|_| FAMILY_NOTE),
            points: fig
                .points
                .iter()
                .map(|q| PointJson {
                    x: q.x,
                    y: q.y,
                    radius: fig.radii[q.orbit_class],
                    class_index: q.orbit_class,
                    re_nu: q.source_eig.re,
                    im_nu: q.source_eig.im,
                })
                .collect(),
            edges: fig.edges.clone(),
        }),
    };
    Ok(ok(body))
}

#[derive(Serialize)]
struct CharpolyJson {
    lie_type: LieType,
    operator_coefficients: Vec<String>,
    scale_c: String,
    coefficients: Vec<String>,
    factors: Vec<Vec<String>>,
    factorization_verified: bool,
}

fn charpoly(cli: &Cli, t: LieType) -> Result<Outcome> {
    let rs = build_root_system(t);
    let hr = highest_root(&rs);
    let op = build_a(&rs, &hr, &killing_gram(&rs))?;
    let cp = char_poly(&op)?;
    fn strs<T: ToString>(v: &[T]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }
    let body = match cli.format {
        Format::Json => json(&CharpolyJson {
            lie_type: t,
            operator_coefficients: cp
                .operator_coefficients
                .iter()
                .map(|c| c.to_string())
                .collect(),
            scale_c: cp.scale_c.to_string(),
            coefficients: strs(cp.coefficients.coeffs()),
            factors: cp.factors.iter().map(|f| strs(f.coeffs())).collect(),
            factorization_verified: !cp.factors.is_empty(),
        }),
        Format::Csv => {
            let mut table = Table::new(&["polynomial", "power", "coefficient"]);
            let mut rows = |name: &str, coeffs: Vec<String>| {
                let d = coeffs.len() - 1;
                for (i, c) in coeffs.into_iter().enumerate() {
                    table.push(vec![name.to_string(), (d - i).to_string(), c]);
                }
            };
            rows(
                "det(xI-A)",
                cp.operator_coefficients
                    .iter()
                    .map(|c| c.to_string())
                    .collect(),
            );
            rows("det(xI-cA)", strs(cp.coefficients.coeffs()));
            for (k, f) in cp.factors.iter().enumerate() {
                rows(&format!("F{}", k + 1), strs(f.coeffs()));
            }
            table.csv()
        }
        Format::Text => {
            let mut s = format!("{t}\n");
            let rational: Vec<String> = cp
                .operator_coefficients
                .iter()
                .map(|c| c.to_string())
                .collect();
            s.push_str(&format!(
                "det(xI - A) coefficients, highest first: {}\n",
                rational.join(", ")
            ));
            s.push_str(&format!("c = {}\n", cp.scale_c));
            s.push_str(&format!("det(xI - cA) = {}\n", cp.coefficients));
            for (k, f) in cp.factors.iter().enumerate() {
                s.push_str(&format!("F{} = {f}\n", k + 1));
            }
            if !cp.factors.is_empty() {
                s.push_str("F1 * F2 = det(xI - cA): verified exactly\n");
            }
            s
        }
    };
    Ok(ok(body))
}

#[derive(Serialize)]
struct MassesJson {
    lie_type: LieType,
    tolerance: f64,
    radii: Vec<f64>,
    normalized: Vec<f64>,
    integer_parts: Vec<i64>,
    families: Vec<&'static str>,
    family_note: &'static str,
    smallest_ratio: f64,
    smallest_ratio_residual: f64,
    pairs: Vec<GoldenPair>,
}

fn masses(cli: &Cli, t: LieType) -> Result<Outcome> {
    if !is_e8(t) {
        return Err(Error::Unsupported(format!(
            "masses is defined for E8 only, not {t}"
        )));
    }
    let (report, _) = report_for(t)?;
    let families = family_names(&report)?.unwrap_or_default();
    let pairs = golden_pairs(&report, cli.tolerance)?;
    let smallest_ratio = report.radii[1] / report.radii[0];
    let smallest_ratio_residual = (smallest_ratio - GOLDEN).abs();
    let passed =
        smallest_ratio_residual < cli.tolerance && pairs.iter().all(|p| p.residual < cli.tolerance);
    let body = match cli.format {
        Format::Json => json(&MassesJson {
            lie_type: t,
            tolerance: cli.tolerance,
            radii: report.radii.clone(),
            normalized: report.normalized.clone(),
            integer_parts: report.integer_parts.clone(),
            families,
            family_note: FAMILY_NOTE,
            smallest_ratio,
            smallest_ratio_residual,
            pairs,
        }),
        Format::Csv | Format::Text => {
            let mut table = Table::new(&[
                "index",
                "radius",
                "normalized",
                "integer_part",
                "family",
                "partner",
                "relation",
                "ratio",
                "residual",
            ]);
            for i in 0..report.radii.len() {
                let pair = pairs.iter().find(|p| p.f1_index == i);
                table.push(vec![
                    i.to_string(),
                    fixed(report.radii[i]),
                    fixed(report.normalized[i]),
                    report.integer_parts[i].to_string(),
                    families[i].to_string(),
                    pair.map_or("-".into(), |p| p.f2_label.to_string()),
                    pair.map_or("-".into(), |p| p.relation.symbol().to_string()),
                    pair.map_or("-".into(), |p| fixed(p.ratio)),
                    pair.map_or("-".into(), |p| sci(p.residual)),
                ]);
            }
            if cli.format == Format::Csv {
                table.csv()
            } else {
                let mut s = format!("{t}  R = {}\n", fixed(GOLDEN));
                s.push_str(&table.text());
                s.push_str(&format!(
                    "r1/r0 = {}  residual {}\n{FAMILY_NOTE}\n",
                    fixed(smallest_ratio),
                    sci(smallest_ratio_residual)
                ));
                s
            }
        }
    };
    Ok(Outcome {
        body,
        code: if passed { 0 } else { EXIT_FAIL },
    })
}
